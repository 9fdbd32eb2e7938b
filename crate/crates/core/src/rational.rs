//! Exact rationals and the 8-dimensional linear algebra used throughout.

use crate::error::{Error, Result};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

pub type Q = Rational64;
pub type Vec8 = [Q; 8];
pub type Mat8 = [[Q; 8]; 8];

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn zero8() -> Vec8 {
    [Q::zero(); 8]
}

pub fn vec_from_ints(v: [i64; 8]) -> Vec8 {
    v.map(q)
}

/// Parses `p`, `p/q` or a plain decimal integer with surrounding whitespace.
pub fn parse_q(s: &str) -> Result<Q> {
    s.trim()
        .parse::<Q>()
        .map_err(|_| Error::BadRational(s.to_string()))
}

/// Comma separated list of exactly 8 rationals.
pub fn parse_vec8(s: &str) -> Result<Vec8> {
    let parts: Vec<Q> = s.split(',').map(parse_q).collect::<Result<_>>()?;
    <[Q; 8]>::try_from(parts.as_slice()).map_err(|_| Error::Arity(parts.len()))
}

pub fn format_q(x: &Q) -> String {
    x.to_string()
}

pub fn format_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

/// Decimal rendering for human-facing reports only.
pub fn approx(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn dot(a: &Vec8, b: &Vec8) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &Vec8, b: &Vec8) -> Vec8 {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn sub(a: &Vec8, b: &Vec8) -> Vec8 {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn scale(a: &Vec8, s: Q) -> Vec8 {
    a.map(|x| x * s)
}

pub fn identity() -> Mat8 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() }))
}

pub fn mat_vec(m: &Mat8, v: &Vec8) -> Vec8 {
    std::array::from_fn(|i| dot(&m[i], v))
}

pub fn mat_mul(a: &Mat8, b: &Mat8) -> Mat8 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..8).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn transpose(m: &Mat8) -> Mat8 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

pub fn mat_from_ints(m: &[[i64; 8]; 8]) -> Mat8 {
    m.map(|r| r.map(q))
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &Mat8) -> Option<Mat8> {
    let rows: Vec<Vec<Q>> = m.iter().map(|r| r.to_vec()).collect();
    let inv = inverse_dyn(&rows)?;
    Some(std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j])))
}

pub fn inverse_dyn(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let t = a[col][c] * f;
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves the square system `m x = b`; `None` when singular.
pub fn solve_dyn(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let inv = inverse_dyn(m)?;
    Some(
        inv.iter()
            .map(|r| r.iter().zip(b).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

pub fn is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn all_nonneg(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// Integer vector when every entry is integral.
pub fn to_ints(v: &Vec8) -> Option<[i64; 8]> {
    is_integral(v).then(|| v.map(|x| x.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q(" 5/2 ").unwrap(), qr(5, 2));
        assert_eq!(parse_q("-3").unwrap(), q(-3));
        assert!(parse_q("x").is_err());
        assert_eq!(format_q(&qr(4, 2)), "2");
        assert_eq!(format_q(&qr(-1, 2)), "-1/2");
        assert!(matches!(parse_vec8("1,2"), Err(Error::Arity(2))));
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat_from_ints(&[
            [2, 1, 0, 0, 0, 0, 0, 0],
            [1, 2, 1, 0, 0, 0, 0, 0],
            [0, 1, 2, 1, 0, 0, 0, 0],
            [0, 0, 1, 2, 1, 0, 0, 0],
            [0, 0, 0, 1, 2, 1, 0, 0],
            [0, 0, 0, 0, 1, 2, 1, 0],
            [0, 0, 0, 0, 0, 1, 2, 1],
            [0, 0, 0, 0, 0, 0, 1, 2],
        ]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity());
        let mut sing = m;
        sing[7] = sing[6];
        assert!(inverse(&sing).is_none());
    }
}
