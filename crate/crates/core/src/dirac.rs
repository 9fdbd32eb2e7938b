//! Spin norm, lambda norm, the Dirac inequality gap and HP-integrality.

use crate::cone;
use crate::error::{Error, Result};
use crate::rational::*;
use crate::rootdata::{datum, k_type_parity, Basis, Weight};
use crate::weyl::{dominantize_k_ints, w_one, WeylElement};
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Highest weight of a k-type: nonnegative integer omega coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 8]", into = "[i64; 8]")]
pub struct KType([i64; 8]);

impl KType {
    pub fn new(coords: [i64; 8]) -> Result<Self> {
        if coords.iter().any(|&c| c < 0) {
            return Err(Error::NotKType(format!("{coords:?} is not dominant")));
        }
        Ok(KType(coords))
    }

    pub fn zero() -> Self {
        KType([0; 8])
    }

    pub fn from_weight(w: &Weight) -> Result<Self> {
        let o = w.to(Basis::Omega);
        let ints = to_ints(o.coords()).ok_or_else(|| Error::NotKType(format!("{o} is not integral")))?;
        KType::new(ints)
    }

    pub fn coords(&self) -> &[i64; 8] {
        &self.0
    }

    /// b+e+g+h even: a representation of the linear group rather than its cover.
    pub fn is_group_level(&self) -> bool {
        k_type_parity(&self.0)
    }

    pub fn weight(&self) -> Weight {
        Weight::from_ints(self.0, Basis::Omega)
    }

    /// `self + n beta`, beta being [0,0,0,0,0,0,1,1].
    pub fn plus_beta(&self, n: i64) -> KType {
        let mut c = self.0;
        c[6] += n;
        c[7] += n;
        KType::new(c).expect("adding beta keeps dominance for n >= 0")
    }

    /// `2<mu, rho>`.
    pub fn height(&self) -> i64 {
        let rho = &HOT.rho_pair2;
        self.0.iter().zip(rho).map(|(a, b)| a * b).sum::<i64>() / 2
    }
}

impl TryFrom<[i64; 8]> for KType {
    type Error = Error;
    fn try_from(v: [i64; 8]) -> Result<Self> {
        KType::new(v)
    }
}

impl From<KType> for [i64; 8] {
    fn from(k: KType) -> Self {
        k.0
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Infinitesimal character, zeta coordinates, dominant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfChar(Vec8);

impl InfChar {
    pub fn new(coords: Vec8) -> Result<Self> {
        if !all_nonneg(&coords) {
            return Err(Error::Data {
                locus: "infinitesimal character".into(),
                msg: format!("{:?} is not dominant", format_vec(&coords)),
            });
        }
        Ok(InfChar(coords))
    }

    pub fn from_ints(v: [i64; 8]) -> Result<Self> {
        InfChar::new(vec_from_ints(v))
    }

    pub fn coords(&self) -> &Vec8 {
        &self.0
    }

    pub fn weight(&self) -> Weight {
        Weight::new(self.0, Basis::Zeta)
    }

    pub fn ints(&self) -> Option<[i64; 8]> {
        to_ints(&self.0)
    }
}

impl Serialize for InfChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        format_vec(&self.0).serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinNormResult {
    #[serde(serialize_with = "ser_q")]
    pub spin_norm_sq: Q,
    pub minimizing_j: BTreeSet<usize>,
    pub gammas: BTreeSet<Weight>,
}

pub(crate) fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(x))
}

/// Integer tables derived from W^1, shared by the hot loops.
struct Hot {
    rho: Vec<[i64; 8]>,
    rho_n: Vec<[i64; 8]>,
    /// `2<omega_k, w^(j) alpha_i>` at `[j][i][k]`.
    walls2: Vec<[[i64; 8]; 8]>,
    /// simple-root coefficients of `(w^(j))^{-1} gamma_i` at `[j][i]`.
    pullbacks: Vec<[[i64; 8]; 8]>,
    /// twice the omega Gram matrix.
    gram2_omega: [[i64; 8]; 8],
    /// `2<omega_k, rho>`.
    rho_pair2: [i64; 8],
    cartan_g: Mat8,
}

fn twice_int(x: Q) -> i64 {
    let t = x * q(2);
    assert!(t.is_integer(), "expected a half-integer, got {x}");
    t.to_integer()
}

static HOT: Lazy<Hot> = Lazy::new(|| {
    let d = datum();
    let w1 = w_one();
    let om = d.basis_matrix(Basis::Omega);
    let omega_vec = |k: usize| -> Vec8 { std::array::from_fn(|r| om[r][k]) };
    let omegas: Vec<Vec8> = (0..8).map(omega_vec).collect();
    let walls2 = w1
        .iter()
        .map(|c| {
            std::array::from_fn(|i| {
                let r = c.element.apply_euclid(&d.g_simple[i]);
                std::array::from_fn(|k| twice_int(dot(&omegas[k], &r)))
            })
        })
        .collect();
    let pullbacks = w1
        .iter()
        .map(|c| {
            let inv = c.element.inverse();
            std::array::from_fn(|i| {
                let r = Weight::new(inv.apply_euclid(&d.k_simple[i]), Basis::Euclidean).to(Basis::SimpleG);
                to_ints(r.coords()).expect("roots have integer coefficients")
            })
        })
        .collect();
    let g = d.gram(Basis::Omega);
    let rho_e = d.rho.euclid();
    Hot {
        rho: w1.iter().map(|c| c.rho).collect(),
        rho_n: w1.iter().map(|c| c.rho_n).collect(),
        walls2,
        pullbacks,
        gram2_omega: std::array::from_fn(|i| std::array::from_fn(|k| twice_int(g[i][k]))),
        rho_pair2: std::array::from_fn(|k| twice_int(q(2) * dot(&omegas[k], &rho_e))),
        cartan_g: mat_from_ints(&d.cartan_g),
    }
});

fn norm2_shifted(c: &[i64; 8]) -> i64 {
    // twice ||c + rho_c||^2, rho_c = [1,...,1]
    let g = &HOT.gram2_omega;
    let v: [i64; 8] = c.map(|x| x + 1);
    (0..8).map(|i| v[i] * (0..8).map(|k| g[i][k] * v[k]).sum::<i64>()).sum()
}

/// Twice the squared spin norm, integer valued.
pub fn spin_norm_sq2(mu: &[i64; 8]) -> i64 {
    HOT.rho_n
        .iter()
        .map(|rn| {
            let mut c: [i64; 8] = std::array::from_fn(|i| mu[i] - rn[i]);
            dominantize_k_ints(&mut c);
            norm2_shifted(&c)
        })
        .min()
        .expect("W^1 is non-empty")
}

pub fn spin_norm_sq(mu: &KType) -> Q {
    qr(spin_norm_sq2(mu.coords()), 2)
}

pub fn spin_norm(mu: &KType) -> SpinNormResult {
    let per_j: Vec<([i64; 8], i64)> = HOT
        .rho_n
        .iter()
        .map(|rn| {
            let mut c: [i64; 8] = std::array::from_fn(|i| mu.0[i] - rn[i]);
            dominantize_k_ints(&mut c);
            (c, norm2_shifted(&c))
        })
        .collect();
    let best = per_j.iter().map(|p| p.1).min().expect("W^1 is non-empty");
    let minimizing_j = (0..per_j.len()).filter(|&j| per_j[j].1 == best).collect();
    let gammas = per_j
        .iter()
        .filter(|p| p.1 == best)
        .map(|p| Weight::from_ints(p.0, Basis::Omega))
        .collect();
    SpinNormResult {
        spin_norm_sq: qr(best, 2),
        minimizing_j,
        gammas,
    }
}

fn check_index(j: usize) -> Result<()> {
    if j < w_one().len() {
        Ok(())
    } else {
        Err(Error::Index(j))
    }
}

/// Nearest point of the closed chamber `w^(j) C_g` to `y`, in the basis of `y`.
pub fn project_to_chamber(y: &Weight, j: usize) -> Result<Weight> {
    check_index(j)?;
    let w = &w_one()[j].element;
    let local = w.inverse().apply(y).to(Basis::Zeta);
    let p = cone::project(local.coords(), &HOT.cartan_g);
    Ok(w.apply(&Weight::new(p.coords, Basis::Zeta)).to(y.basis()))
}

/// Chambers `w^(j) C_g` containing the omega-coordinate point `x`.
pub fn chambers_containing(x: &[i64; 8]) -> Vec<usize> {
    HOT.walls2
        .iter()
        .enumerate()
        .filter(|(_, walls)| {
            walls
                .iter()
                .all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0)
        })
        .map(|(j, _)| j)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaParams {
    /// zeta coordinates.
    pub lambda_a: Weight,
    pub js: Vec<usize>,
    #[serde(serialize_with = "ser_q")]
    pub norm_sq: Q,
}

/// Projection of `y` (omega coordinates, integral) onto chamber `j`, returned as the
/// chamber-local zeta coordinates.
fn project_local(y: &[i64; 8], j: usize) -> Vec8 {
    let walls = &HOT.walls2[j];
    let b: Vec8 = std::array::from_fn(|i| qr(walls[i].iter().zip(y).map(|(a, b)| a * b).sum(), 2));
    cone::project(&b, &HOT.cartan_g).coords
}

pub fn lambda_params(mu: &KType) -> LambdaParams {
    let x: [i64; 8] = mu.0.map(|c| c + 2);
    let js = chambers_containing(&x);
    assert!(!js.is_empty(), "mu + 2 rho_c is k-dominant, so some chamber holds it");
    let mut lambda: Option<Vec8> = None;
    for &j in &js {
        let y: [i64; 8] = std::array::from_fn(|i| x[i] - HOT.rho[j][i]);
        let local = Weight::new(project_local(&y, j), Basis::Zeta);
        let e = w_one()[j].element.apply_euclid(&local.euclid());
        match &lambda {
            None => lambda = Some(e),
            Some(prev) => assert_eq!(prev, &e, "lambda_a depends on the chamber for {mu}"),
        }
    }
    let lambda_a = Weight::new(lambda.expect("js non-empty"), Basis::Euclidean).to(Basis::Zeta);
    let norm_sq = lambda_a.norm_sq();
    LambdaParams { lambda_a, js, norm_sq }
}

pub fn lambda_norm_sq(mu: &KType) -> Q {
    lambda_params(mu).norm_sq
}

pub fn norm_sq_infchar(l: &InfChar) -> Q {
    l.weight().norm_sq()
}

pub fn dirac_gap(mu: &KType, l: &InfChar) -> Q {
    spin_norm_sq(mu) - norm_sq_infchar(l)
}

/// Which four-term condition to use alongside the pair sums.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HpRule {
    /// `a+d+f+h > 0`: the exact condition equivalent to the zero-witness test.
    Exact,
    /// `d+f+h > 0` as printed in the source list.
    Printed,
}

const HP_PAIRS: [[usize; 2]; 7] = [[0, 2], [1, 3], [2, 3], [3, 4], [4, 5], [5, 6], [6, 7]];
const HP_QUADS: [[usize; 4]; 6] = [
    [0, 1, 4, 6],
    [0, 1, 4, 7],
    [0, 1, 5, 7],
    [1, 2, 4, 6],
    [1, 2, 4, 7],
    [1, 2, 5, 7],
];

/// The 14 support conditions: each index set must carry a positive coordinate.
pub fn hp_conditions(rule: HpRule) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = HP_PAIRS.iter().map(|p| p.to_vec()).collect();
    out.push(match rule {
        HpRule::Exact => vec![0, 3, 5, 7],
        HpRule::Printed => vec![3, 5, 7],
    });
    out.extend(HP_QUADS.iter().map(|p| p.to_vec()));
    out
}

pub fn hp_integral_with(l: &InfChar, rule: HpRule) -> bool {
    let Some(v) = l.ints() else { return false };
    hp_ints(&v, rule)
}

pub(crate) fn hp_ints(v: &[i64; 8], rule: HpRule) -> bool {
    if v.iter().any(|&x| x < 0) {
        return false;
    }
    let pairs = HP_PAIRS.iter().all(|s| s.iter().any(|&i| v[i] > 0));
    let quads = HP_QUADS.iter().all(|s| s.iter().any(|&i| v[i] > 0));
    let extra = match rule {
        HpRule::Exact => v[0] + v[3] + v[5] + v[7] > 0,
        HpRule::Printed => v[3] + v[5] + v[7] > 0,
    };
    pairs && quads && extra
}

pub fn hp_integral(l: &InfChar) -> bool {
    hp_integral_with(l, HpRule::Exact)
}

/// Every `w^(j) Lambda` has a vanishing omega coordinate.
pub fn hp_zero_witness(l: &InfChar) -> bool {
    HOT.pullbacks.iter().all(|rows| {
        rows.iter()
            .any(|r| r.iter().zip(l.coords()).map(|(&a, b)| b * q(a)).sum::<Q>().is_zero())
    })
}

/// The element `w^(j)`.
pub fn coset_element(j: usize) -> Result<&'static WeylElement> {
    check_index(j)?;
    Ok(&w_one()[j].element)
}

/// Sign-free helper exposed for tests: is `y` inside chamber `j`.
pub fn in_chamber(y: &Weight, j: usize) -> Result<bool> {
    let w = coset_element(j)?;
    let local = w.inverse().apply(y).to(Basis::Zeta);
    Ok(local.coords().iter().all(|c| !c.is_negative()))
}
