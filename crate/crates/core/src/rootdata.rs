//! The E8 root datum with compact subsystem E7 + A1 and its four coordinate systems.
//!
//! Euclidean coordinates are canonical. `SimpleG` expands in the simple roots of g,
//! `Zeta` in the fundamental weights of g (coordinates `<x, alpha_i>`), `Omega` in the
//! fundamental weights of k (coordinates `<x, gamma_i>`).

use crate::error::{Error, Result};
use crate::rational::*;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

pub const RANK: usize = 8;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Euclidean,
    SimpleG,
    Zeta,
    Omega,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::Euclidean, Basis::SimpleG, Basis::Zeta, Basis::Omega];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::Euclidean => "euclidean",
            Basis::SimpleG => "simple",
            Basis::Zeta => "zeta",
            Basis::Omega => "omega",
        };
        f.write_str(s)
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "e" => Ok(Basis::Euclidean),
            "simple" | "simpleg" | "alpha" => Ok(Basis::SimpleG),
            "zeta" => Ok(Basis::Zeta),
            "omega" | "varpi" => Ok(Basis::Omega),
            _ => Err(Error::Data {
                locus: "basis".into(),
                msg: format!("unknown basis {s:?}"),
            }),
        }
    }
}

/// A point of the dual Cartan subalgebra in a tagged basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec8,
    basis: Basis,
}

impl Weight {
    pub fn new(coords: Vec8, basis: Basis) -> Self {
        Weight { coords, basis }
    }

    pub fn from_ints(v: [i64; 8], basis: Basis) -> Self {
        Weight::new(vec_from_ints(v), basis)
    }

    pub fn zero(basis: Basis) -> Self {
        Weight::new(zero8(), basis)
    }

    pub fn coords(&self) -> &Vec8 {
        &self.coords
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn to(&self, target: Basis) -> Weight {
        convert(self, target)
    }

    pub fn euclid(&self) -> Vec8 {
        *self.to(Basis::Euclidean).coords()
    }

    pub fn inner(&self, other: &Weight) -> Q {
        inner(self, other)
    }

    pub fn norm_sq(&self) -> Q {
        inner(self, self)
    }

    /// Sum with `other`, expressed in the basis of `self`.
    pub fn plus(&self, other: &Weight) -> Weight {
        Weight::new(add(&self.coords, other.to(self.basis).coords()), self.basis)
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        Weight::new(sub(&self.coords, other.to(self.basis).coords()), self.basis)
    }

    pub fn scaled(&self, s: Q) -> Weight {
        Weight::new(scale(&self.coords, s), self.basis)
    }

    pub fn is_integral(&self) -> bool {
        is_integral(&self.coords)
    }

    pub fn strings(&self) -> Vec<String> {
        format_vec(&self.coords)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.strings().join(","), self.basis)
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.strings().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple roots of g.
    pub simple: [i64; 8],
    pub euclid: Vec8,
}

impl Root {
    pub fn is_compact(&self) -> bool {
        self.simple[7] % 2 == 0
    }

    pub fn weight(&self) -> Weight {
        Weight::new(self.euclid, Basis::Euclidean)
    }
}

pub const CARTAN_G: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

pub struct RootDatum {
    pub g_simple: [Vec8; 8],
    pub k_simple: [Vec8; 8],
    pub positive_roots: Vec<Root>,
    pub positive_k: Vec<Root>,
    pub noncompact: Vec<Root>,
    pub beta: Weight,
    pub rho: Weight,
    pub rho_c: Weight,
    pub cartan_g: [[i64; 8]; 8],
    pub cartan_k: [[i64; 8]; 8],
    to_euclid: [Mat8; 4],
    from_euclid: [Mat8; 4],
    gram: [Mat8; 4],
}

impl RootDatum {
    pub fn gram(&self, b: Basis) -> &Mat8 {
        &self.gram[b.slot()]
    }

    /// Matrix whose columns are the basis vectors of `b` in Euclidean coordinates.
    pub fn basis_matrix(&self, b: Basis) -> &Mat8 {
        &self.to_euclid[b.slot()]
    }

    pub fn root_count(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn dim_k(&self) -> usize {
        2 * self.positive_k.len() + RANK
    }

    pub fn dim_p(&self) -> usize {
        2 * self.noncompact.len()
    }

    /// Index of `v` among the positive roots, or of `-v`, with the sign.
    pub fn find_root(&self, v: &Vec8) -> Option<(usize, bool)> {
        let neg = v.map(|x| -x);
        self.positive_roots.iter().enumerate().find_map(|(i, r)| {
            if &r.euclid == v {
                Some((i, true))
            } else if r.euclid == neg {
                Some((i, false))
            } else {
                None
            }
        })
    }

    pub fn is_positive_root(&self, v: &Vec8) -> bool {
        matches!(self.find_root(v), Some((_, true)))
    }
}

fn simple_roots_euclid() -> [Vec8; 8] {
    let h = qr(1, 2);
    let mut a = [zero8(); 8];
    a[0] = [h, -h, -h, -h, -h, -h, -h, h];
    a[1][0] = q(1);
    a[1][1] = q(1);
    for i in 2..8 {
        a[i][i - 1] = q(1);
        a[i][i - 2] = q(-1);
    }
    a
}

fn all_roots(cartan: &[[i64; 8]; 8]) -> Vec<[i64; 8]> {
    let mut seen: HashSet<[i64; 8]> = HashSet::new();
    let mut stack: Vec<[i64; 8]> = (0..8)
        .map(|i| {
            let mut e = [0; 8];
            e[i] = 1;
            e
        })
        .collect();
    while let Some(r) = stack.pop() {
        if !seen.insert(r) {
            continue;
        }
        for i in 0..8 {
            let pairing: i64 = (0..8).map(|k| r[k] * cartan[k][i]).sum();
            let mut s = r;
            s[i] -= pairing;
            if !seen.contains(&s) {
                stack.push(s);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

fn gram_of(cols: &Mat8) -> Mat8 {
    mat_mul(&transpose(cols), cols)
}

pub fn build_e8_datum() -> RootDatum {
    let alpha = simple_roots_euclid();
    let combine = |c: &[i64; 8]| -> Vec8 {
        let mut v = zero8();
        for (k, &ck) in c.iter().enumerate() {
            v = add(&v, &scale(&alpha[k], q(ck)));
        }
        v
    };
    let coeffs = all_roots(&CARTAN_G);
    assert_eq!(coeffs.len(), 240, "E8 must have 240 roots");
    let mut positive_roots: Vec<Root> = coeffs
        .iter()
        .filter(|c| c.iter().all(|&x| x >= 0))
        .map(|c| Root {
            simple: *c,
            euclid: combine(c),
        })
        .collect();
    positive_roots.sort_by_key(|r| (r.simple.iter().sum::<i64>(), r.simple));
    for r in &positive_roots {
        assert_eq!(dot(&r.euclid, &r.euclid), q(2));
    }

    let beta_c = [2, 3, 4, 6, 5, 4, 3, 1];
    let beta = combine(&beta_c);
    let mut k_simple = alpha;
    k_simple[7] = add(&beta, &alpha[7]);

    let mut cartan_k = [[0i64; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            cartan_k[i][j] = dot(&k_simple[i], &k_simple[j]).to_integer();
        }
    }
    let positive_k: Vec<Root> = positive_roots.iter().filter(|r| r.is_compact()).cloned().collect();
    let noncompact: Vec<Root> = positive_roots.iter().filter(|r| !r.is_compact()).cloned().collect();

    let simple_cols = transpose(&alpha);
    let k_cols = transpose(&k_simple);
    let inv_cg = inverse(&mat_from_ints(&CARTAN_G)).expect("Cartan matrix of g is invertible");
    let inv_ck = inverse(&mat_from_ints(&cartan_k)).expect("Cartan matrix of k is invertible");
    // columns of A^{-1}-weighted simple roots give the fundamental weights
    let zeta_cols = mat_mul(&simple_cols, &inv_cg);
    let omega_cols = mat_mul(&k_cols, &inv_ck);
    let to_euclid = [identity(), simple_cols, zeta_cols, omega_cols];
    let from_euclid = to_euclid.map(|m| inverse(&m).expect("basis matrices are invertible"));
    let gram = to_euclid.map(|m| gram_of(&m));

    let half = |rs: &[Root]| -> Vec8 {
        let s = rs.iter().fold(zero8(), |acc, r| add(&acc, &r.euclid));
        scale(&s, qr(1, 2))
    };
    let rho = Weight::new(half(&positive_roots), Basis::Euclidean);
    let rho_c = Weight::new(half(&positive_k), Basis::Euclidean);

    let datum = RootDatum {
        g_simple: alpha,
        k_simple,
        positive_roots,
        positive_k,
        noncompact,
        beta: Weight::new(beta, Basis::Euclidean),
        rho,
        rho_c,
        cartan_g: CARTAN_G,
        cartan_k,
        to_euclid,
        from_euclid,
        gram,
    };
    check_datum(&datum);
    datum
}

fn check_datum(d: &RootDatum) {
    assert_eq!(d.positive_roots.len(), 120);
    assert_eq!(d.positive_k.len(), 64);
    assert_eq!(d.noncompact.len(), 56);
    let highest = d.positive_roots.last().expect("roots present");
    assert_eq!(highest.euclid, d.k_simple[7], "gamma_8 is the highest root");
    let unit = |i: usize| {
        let mut e = [0i64; 8];
        e[i] = 1;
        e
    };
    for i in 0..8 {
        let r = d.positive_roots.iter().find(|r| r.simple == unit(i)).expect("simple root");
        assert_eq!(r.is_compact(), i != 7, "alpha_8 is the only noncompact simple root");
    }
    for i in 0..7 {
        assert_eq!(d.k_simple[i], d.g_simple[i]);
    }
}

static DATUM: Lazy<RootDatum> = Lazy::new(build_e8_datum);

/// The shared immutable datum.
pub fn datum() -> &'static RootDatum {
    &DATUM
}

pub fn convert(x: &Weight, target: Basis) -> Weight {
    if x.basis == target {
        return x.clone();
    }
    let d = datum();
    let e = mat_vec(&d.to_euclid[x.basis.slot()], &x.coords);
    Weight::new(mat_vec(&d.from_euclid[target.slot()], &e), target)
}

pub fn inner(x: &Weight, y: &Weight) -> Q {
    let d = datum();
    let yb = y.to(x.basis);
    let g = &d.gram[x.basis.slot()];
    let gy = mat_vec(g, yb.coords());
    dot(&x.coords, &gy)
}

/// `2<x, rho_check>`; coroots are identified with roots since every root has length 2.
pub fn twice_rho_check_pairing(x: &Weight) -> Q {
    q(2) * inner(x, &datum().rho)
}

/// Group-level condition on nonnegative omega coordinates: b+e+g+h even.
pub fn k_type_parity(c: &[i64; 8]) -> bool {
    (c[1] + c[4] + c[6] + c[7]) % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn omega(v: [i64; 8]) -> Weight {
        Weight::from_ints(v, Basis::Omega)
    }

    #[test]
    fn counts() {
        let d = datum();
        assert_eq!(d.root_count(), 240);
        assert_eq!(d.positive_roots.len(), 120);
        assert_eq!(d.positive_k.len(), 64);
        assert_eq!(d.noncompact.len(), 56);
        assert_eq!(d.dim_k(), 136);
        assert_eq!(d.dim_p(), 112);
        assert_eq!(d.dim_p() as i64 - d.dim_k() as i64, -24);
    }

    #[test]
    fn beta_and_rho_c() {
        let d = datum();
        assert_eq!(d.beta.to(Basis::Omega), omega([0, 0, 0, 0, 0, 0, 1, 1]));
        assert_eq!(d.rho_c.to(Basis::Omega), omega([1; 8]));
        assert_eq!(d.rho.to(Basis::Zeta), Weight::from_ints([1; 8], Basis::Zeta));
        assert_eq!(d.positive_roots.last().unwrap().euclid, d.k_simple[7]);
        assert_eq!(d.beta.to(Basis::SimpleG), Weight::from_ints([2, 3, 4, 6, 5, 4, 3, 1], Basis::SimpleG));
    }

    #[test]
    fn norms() {
        let d = datum();
        assert_eq!(d.rho.norm_sq(), q(620));
        assert_eq!(d.rho_c.norm_sq(), q(200));
        for a in &d.g_simple {
            assert_eq!(dot(a, a), q(2));
        }
    }

    #[test]
    fn rho_c_norm_from_strange_formula() {
        // h_dual * dim / 12 for E7 and A1 with roots of length 2
        let e7 = qr(18 * 133, 12);
        let a1 = qr(2 * 3, 12);
        let d = datum();
        let g = d.gram(Basis::Omega);
        let total: Q = g.iter().flat_map(|r| r.iter()).copied().sum();
        assert_eq!(total, e7 + a1);
        assert_eq!(total, q(200));
    }

    #[test]
    fn gram_matrices_invert_cartans() {
        let d = datum();
        let inv_g = inverse(&mat_from_ints(&d.cartan_g)).unwrap();
        let inv_k = inverse(&mat_from_ints(&d.cartan_k)).unwrap();
        assert_eq!(d.gram(Basis::Zeta), &inv_g);
        assert_eq!(d.gram(Basis::Omega), &inv_k);
        assert_eq!(d.gram(Basis::SimpleG), &mat_from_ints(&d.cartan_g));
        // E7 block plus an isolated A1 node
        for i in 0..7 {
            assert_eq!(d.cartan_k[i][7], 0);
        }
        assert_eq!(d.cartan_k[7][7], 2);
    }

    #[test]
    fn compact_roots_are_e7_plus_a1() {
        let d = datum();
        let to_k = |v: &Vec8| {
            // gamma-coefficients of v
            Weight::new(*v, Basis::Euclidean).to(Basis::Omega)
        };
        let mut k_roots = 0;
        for r in &d.positive_roots {
            let c = to_k(&r.euclid);
            let gcoef = mat_vec(&inverse(&mat_from_ints(&d.cartan_k)).unwrap(), c.coords());
            let in_e7 = is_integral(&gcoef) && gcoef[7].is_zero();
            let is_a1 = r.euclid == d.k_simple[7];
            assert_eq!(in_e7 || is_a1, r.is_compact());
            if in_e7 || is_a1 {
                k_roots += 2;
            }
        }
        assert_eq!(k_roots, 128);
    }

    #[test]
    fn conversion_examples() {
        let z = Weight::from_ints([1, 0, 0, 0, 0, 0, 0, 0], Basis::Zeta);
        assert_eq!(z.to(Basis::Omega), omega([1, 0, 0, 0, 0, 0, 0, 2]));
        let general = Weight::from_ints([1, 2, 3, 4, 5, 6, 7, 8], Basis::Zeta);
        assert_eq!(general.to(Basis::Omega), omega([1, 2, 3, 4, 5, 6, 7, 130]));
    }

    #[test]
    fn atlas_highest_weight_to_omega() {
        // atlas K-type coordinates y relate to omega by [y1..y7, 2y1+3y2+4y3+6y4+5y5+4y6+3y7+2y8]
        let y = [0i64, 0, 0, 0, 0, 0, 0, 4];
        let w = [2, 3, 4, 6, 5, 4, 3, 2];
        let last: i64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
        let mut o = y;
        o[7] = last;
        assert_eq!(o, [0, 0, 0, 0, 0, 0, 0, 8]);
        // the same map is conversion from zeta restricted to the first seven labels
        let as_zeta = Weight::from_ints(y, Basis::Zeta).to(Basis::Omega);
        assert_eq!(as_zeta, omega(o));
    }

    #[test]
    fn pairings() {
        let z = |v| Weight::from_ints(v, Basis::Zeta);
        assert_eq!(twice_rho_check_pairing(&z([1, 1, 1, 0, 1, 1, 1, 1])), q(970));
        assert_eq!(twice_rho_check_pairing(&z([1, 1, 1, 0, 1, 0, 1, 1])), q(802));
        assert_eq!(twice_rho_check_pairing(&datum().rho), q(1240));
    }

    #[test]
    fn parity() {
        assert!(k_type_parity(&[0, 0, 0, 0, 0, 0, 0, 8]));
        assert!(!k_type_parity(&[0, 1, 0, 0, 0, 0, 0, 0]));
        assert!(k_type_parity(&[0, 0, 0, 0, 0, 0, 1, 1]));
    }

    #[test]
    fn basis_parse() {
        assert_eq!("omega".parse::<Basis>().unwrap(), Basis::Omega);
        assert_eq!("Zeta".parse::<Basis>().unwrap(), Basis::Zeta);
        assert!("foo".parse::<Basis>().is_err());
    }
}
