//! Nearest point of a simplicial cone, in fundamental-weight coordinates.
//!
//! With `b_i = <y, r_i>` for the cone's simple walls `r_i` and Gram matrix `A` of the
//! walls, the projection is `x = y + sum c_i r_i` with coordinates `p = b + A c`, subject
//! to `c >= 0`, `p >= 0` and `c_i p_i = 0`. `A` positive definite makes this unique.

use crate::rational::*;
use num_traits::{Signed, Zero};

/// Multipliers `c` and coordinates `p` of the projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub coords: Vec8,
    pub multipliers: Vec8,
}

fn coords_of(b: &Vec8, a: &Mat8, c: &Vec8) -> Vec8 {
    add(b, &mat_vec(a, c))
}

/// `c_S = -A_SS^{-1} b_S` on the active set `s`, zero elsewhere.
fn face_solution(b: &Vec8, a: &Mat8, s: &[usize]) -> Option<Vec8> {
    let m: Vec<Vec<Q>> = s.iter().map(|&i| s.iter().map(|&k| a[i][k]).collect()).collect();
    let rhs: Vec<Q> = s.iter().map(|&i| -b[i]).collect();
    let z = solve_dyn(&m, &rhs)?;
    let mut c = zero8();
    for (&i, v) in s.iter().zip(z) {
        c[i] = v;
    }
    Some(c)
}

/// Active-set (Lawson-Hanson) solver with exact arithmetic.
pub fn project(b: &Vec8, a: &Mat8) -> Projection {
    let mut c = zero8();
    let mut passive = [false; 8];
    for _ in 0..256 {
        let p = coords_of(b, a, &c);
        let entering = (0..8)
            .filter(|&i| !passive[i] && p[i].is_negative())
            .min_by(|&i, &k| p[i].cmp(&p[k]).then(i.cmp(&k)));
        let Some(t) = entering else {
            return Projection { coords: p, multipliers: c };
        };
        passive[t] = true;
        loop {
            let s: Vec<usize> = (0..8).filter(|&i| passive[i]).collect();
            let z = face_solution(b, a, &s).expect("principal minors of a Gram matrix are nonsingular");
            if s.iter().all(|&i| z[i].is_positive()) {
                c = z;
                break;
            }
            let step = s
                .iter()
                .filter(|&&i| !z[i].is_positive())
                .map(|&i| {
                    let den = c[i] - z[i];
                    if den.is_zero() {
                        Q::zero()
                    } else {
                        c[i] / den
                    }
                })
                .min()
                .expect("some coordinate blocks the step");
            c = add(&c, &scale(&sub(&z, &c), step));
            for &i in &s {
                if !c[i].is_positive() {
                    c[i] = Q::zero();
                    passive[i] = false;
                }
            }
        }
    }
    project_exhaustive(b, a)
}

/// Tries every active set; used as a fallback and for cross-checks.
pub fn project_exhaustive(b: &Vec8, a: &Mat8) -> Projection {
    for mask in 0u32..256 {
        let s: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
        let Some(c) = face_solution(b, a, &s) else { continue };
        if !all_nonneg(&c) {
            continue;
        }
        let p = coords_of(b, a, &c);
        if all_nonneg(&p) {
            return Projection { coords: p, multipliers: c };
        }
    }
    unreachable!("a positive definite LCP always has a solution")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CARTAN_G;
    use proptest::prelude::*;

    fn cartan() -> Mat8 {
        mat_from_ints(&CARTAN_G)
    }

    #[test]
    fn inside_is_fixed() {
        let b = vec_from_ints([1, 0, 3, 2, 0, 0, 1, 5]);
        let p = project(&b, &cartan());
        assert_eq!(p.coords, b);
        assert_eq!(p.multipliers, zero8());
    }

    #[test]
    fn minus_rho_goes_to_apex() {
        let b = vec_from_ints([-1; 8]);
        let p = project(&b, &cartan());
        assert_eq!(p.coords, zero8());
    }

    proptest! {
        #[test]
        fn active_set_matches_exhaustive(v in proptest::array::uniform8(-40i64..40), d in 1i64..6) {
            let b: Vec8 = v.map(|x| qr(x, d));
            let a = cartan();
            let p = project(&b, &a);
            prop_assert_eq!(&p, &project_exhaustive(&b, &a));
            prop_assert!(all_nonneg(&p.coords) && all_nonneg(&p.multipliers));
            for i in 0..8 {
                prop_assert!((p.coords[i] * p.multipliers[i]).is_zero());
            }
        }
    }
}
