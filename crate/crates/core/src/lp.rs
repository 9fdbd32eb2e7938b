//! Exact feasibility of "some convex combination of the points dominates the target"
//! by a revised simplex method with Bland's rule.
//!
//! Phase formulation: minimise `z` subject to `sum l_j p_j + z 1 - s = t`, `sum l_j = 1`,
//! all variables nonnegative. The optimum is zero iff the target is dominated; otherwise
//! the optimal duals give a nonnegative separating functional.
//!
//! Arithmetic runs on `Ratio<i128>` with overflow checks and restarts on big rationals
//! when a check fails.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use std::fmt::Debug;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullLp {
    /// Convex weights (point index, weight) whose combination dominates the target.
    Inside { weights: Vec<(usize, BigRational)> },
    /// `f >= 0` with `f.p_j <= threshold < f.t` for every point.
    Outside {
        functional: Vec<BigRational>,
        threshold: BigRational,
    },
}

trait Field: Clone + Ord + Debug + Sized {
    fn from_i64(x: i64) -> Self;
    fn f_zero() -> Self;
    fn f_one() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn nil(&self) -> bool;
    fn pos(&self) -> bool;
    fn neg(&self) -> bool;
    fn big(&self) -> BigRational;
}

type Small = Ratio<i128>;

impl Field for Small {
    fn from_i64(x: i64) -> Self {
        Ratio::from_integer(x as i128)
    }
    fn f_zero() -> Self {
        Zero::zero()
    }
    fn f_one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Field for BigRational {
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn f_zero() -> Self {
        Zero::zero()
    }
    fn f_one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn big(&self) -> BigRational {
        self.clone()
    }
}

struct Problem<'a> {
    points: &'a [Vec<i64>],
    target: &'a [i64],
}

impl Problem<'_> {
    fn dim(&self) -> usize {
        self.target.len()
    }

    fn cols(&self) -> usize {
        self.points.len() + self.dim() + 1
    }

    fn z_col(&self) -> usize {
        self.cols() - 1
    }

    /// Column entry at row `r` (rows `0..n` are coordinates, row `n` the convexity row).
    fn entry(&self, col: usize, r: usize) -> i64 {
        let n = self.dim();
        let m = self.points.len();
        if col < m {
            if r < n {
                self.points[col][r]
            } else {
                1
            }
        } else if col < m + n {
            if r == col - m {
                -1
            } else {
                0
            }
        } else if r < n {
            1
        } else {
            0
        }
    }

    fn rhs(&self, r: usize) -> i64 {
        if r < self.dim() {
            self.target[r]
        } else {
            1
        }
    }
}

fn invert<F: Field>(m: Vec<Vec<F>>) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { F::f_one() } else { F::f_zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].nil()).expect("starting basis is nonsingular");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.div(&p)?;
        }
        for r in 0..n {
            if r != col && !a[r][col].nil() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = a[col][c].mul(&f)?;
                    a[r][c] = a[r][c].sub(&t)?;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `None` signals arithmetic overflow.
fn run<F: Field>(pr: &Problem) -> Option<HullLp> {
    let n = pr.dim();
    let rows = n + 1;
    let m = pr.points.len();
    let zc = pr.z_col();

    // start from the point needing the smallest uniform shift
    let shift = |j: usize| (0..n).map(|i| pr.target[i] - pr.points[j][i]).max().unwrap_or(0);
    let j0 = (0..m).min_by_key(|&j| (shift(j), j)).expect("at least one point");
    if shift(j0) <= 0 {
        return Some(HullLp::Inside {
            weights: vec![(j0, <BigRational as One>::one())],
        });
    }
    let tight = (0..n)
        .find(|&i| pr.target[i] - pr.points[j0][i] == shift(j0))
        .expect("max is attained");
    let mut basis: Vec<usize> = vec![j0, zc];
    basis.extend((0..n).filter(|&i| i != tight).map(|i| m + i));

    let bmat: Vec<Vec<F>> = (0..rows)
        .map(|r| basis.iter().map(|&c| F::from_i64(pr.entry(c, r))).collect())
        .collect();
    let mut binv = invert(bmat)?;
    let rhs: Vec<F> = (0..rows).map(|r| F::from_i64(pr.rhs(r))).collect();
    let mut xb: Vec<F> = Vec::with_capacity(rows);
    for row in &binv {
        let mut s = F::f_zero();
        for (a, b) in row.iter().zip(&rhs) {
            s = s.add(&a.mul(b)?)?;
        }
        xb.push(s);
    }

    loop {
        let zpos = basis.iter().position(|&c| c == zc);
        let zpos = match zpos {
            Some(p) if !xb[p].nil() => p,
            _ => {
                let mut weights: Vec<(usize, BigRational)> = basis
                    .iter()
                    .zip(&xb)
                    .filter(|(&c, v)| c < m && !v.nil())
                    .map(|(&c, v)| (c, v.big()))
                    .collect();
                weights.sort_by_key(|w| w.0);
                return Some(HullLp::Inside { weights });
            }
        };
        // duals: cost vector is e_z, so y is the z row of B^{-1}
        let y = binv[zpos].clone();
        let mut entering = None;
        for col in 0..pr.cols() {
            if basis.contains(&col) {
                continue;
            }
            let mut ya = F::f_zero();
            for (r, yr) in y.iter().enumerate() {
                let e = pr.entry(col, r);
                if e != 0 {
                    ya = ya.add(&yr.mul(&F::from_i64(e))?)?;
                }
            }
            let cost = if col == zc { F::f_one() } else { F::f_zero() };
            if cost.sub(&ya)?.neg() {
                entering = Some(col);
                break;
            }
        }
        let Some(e) = entering else {
            let functional: Vec<BigRational> = y[..n].iter().map(F::big).collect();
            let threshold = -y[n].big();
            return Some(HullLp::Outside { functional, threshold });
        };
        let col: Vec<F> = (0..rows).map(|r| F::from_i64(pr.entry(e, r))).collect();
        let mut u: Vec<F> = Vec::with_capacity(rows);
        for row in &binv {
            let mut s = F::f_zero();
            for (a, b) in row.iter().zip(&col) {
                if !b.nil() {
                    s = s.add(&a.mul(b)?)?;
                }
            }
            u.push(s);
        }
        let mut leave: Option<(usize, F)> = None;
        for r in 0..rows {
            if !u[r].pos() {
                continue;
            }
            let ratio = xb[r].div(&u[r])?;
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let (r, _) = leave.expect("objective is bounded below by zero");
        let pivot = u[r].clone();
        for x in binv[r].iter_mut() {
            *x = x.div(&pivot)?;
        }
        xb[r] = xb[r].div(&pivot)?;
        for i in 0..rows {
            if i == r || u[i].nil() {
                continue;
            }
            let f = u[i].clone();
            for c in 0..rows {
                let t = binv[r][c].mul(&f)?;
                binv[i][c] = binv[i][c].sub(&t)?;
            }
            let t = xb[r].mul(&f)?;
            xb[i] = xb[i].sub(&t)?;
        }
        basis[r] = e;
    }
}

/// Decides whether a convex combination of `points` dominates `target` coordinatewise.
pub fn dominated_by_hull(points: &[Vec<i64>], target: &[i64]) -> HullLp {
    assert!(!points.is_empty(), "empty point set");
    assert!(points.iter().all(|p| p.len() == target.len()), "dimension mismatch");
    let pr = Problem { points, target };
    run::<Small>(&pr).unwrap_or_else(|| run::<BigRational>(&pr).expect("big rationals do not overflow"))
}

/// Exact check of a certificate returned by [`dominated_by_hull`].
pub fn verify(points: &[Vec<i64>], target: &[i64], result: &HullLp) -> bool {
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    match result {
        HullLp::Inside { weights } => {
            let total: BigRational = weights.iter().map(|w| w.1.clone()).sum();
            if total != <BigRational as One>::one() || weights.iter().any(|w| Signed::is_negative(&w.1) || w.0 >= points.len()) {
                return false;
            }
            (0..target.len()).all(|i| {
                let s: BigRational = weights.iter().map(|(j, l)| l * big(points[*j][i])).sum();
                s >= big(target[i])
            })
        }
        HullLp::Outside { functional, threshold } => {
            if functional.len() != target.len() || functional.iter().any(|f| Signed::is_negative(f)) {
                return false;
            }
            let eval = |v: &[i64]| -> BigRational { functional.iter().zip(v).map(|(f, &x)| f * big(x)).sum() };
            points.iter().all(|p| eval(p) <= *threshold) && eval(target) > *threshold
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts() -> Vec<Vec<i64>> {
        vec![vec![4, 0], vec![0, 4], vec![1, 1]]
    }

    #[test]
    fn midpoint_needs_two_points() {
        let r = dominated_by_hull(&pts(), &[2, 2]);
        assert!(matches!(r, HullLp::Inside { ref weights } if weights.len() == 2));
        assert!(verify(&pts(), &[2, 2], &r));
    }

    #[test]
    fn separated_beyond_segment() {
        let r = dominated_by_hull(&pts(), &[3, 3]);
        assert!(matches!(r, HullLp::Outside { .. }));
        assert!(verify(&pts(), &[3, 3], &r));
    }

    #[test]
    fn single_point_shortcut() {
        let r = dominated_by_hull(&pts(), &[1, 0]);
        assert_eq!(r, HullLp::Inside { weights: vec![(0, <BigRational as One>::one())] });
    }

    #[test]
    fn big_rational_path_agrees() {
        let p: Vec<Vec<i64>> = vec![vec![7, 1, 3], vec![2, 9, 1], vec![1, 2, 8], vec![5, 5, 0]];
        for t in [[4, 4, 3], [3, 3, 3], [5, 5, 5], [6, 2, 2]] {
            let pr = Problem { points: &p, target: &t };
            let small = run::<Small>(&pr).unwrap();
            let big = run::<BigRational>(&pr).unwrap();
            assert_eq!(small, big);
            assert!(verify(&p, &t, &small));
        }
    }
}
