//! The Certs and Omega sets behind the sharpened Helgason-Johnson bound, and checks on
//! the shipped list of zero-one infinitesimal characters.

use crate::data;
use crate::dirac::{hp_ints, lambda_params, spin_norm_sq, HpRule, InfChar, KType};
use crate::error::Result;
use crate::pencil::enumerate_usmall;
use crate::rational::*;
use crate::rootdata::{datum, Basis};
use rayon::prelude::*;
use serde::Serialize;

/// Constants quoted from the source analysis, not derived here.
pub mod constants {
    use crate::rational::{q, qr, Q};

    /// Largest `A_j` over the 120 cosets; bounds `spin^2 - lambda^2` for u-large K-types.
    pub const MAX_A_J: i64 = 212;
    /// `|rho|^2`, the classical bound on `|nu|^2`.
    pub const HJ_CLASSICAL_SQ: i64 = 620;
    pub fn hj_sharp_sq() -> Q {
        qr(723, 2)
    }
    /// Lower end of the excluded window, also the Certs gap threshold.
    pub fn hj_final_sq() -> Q {
        qr(425, 2)
    }
    /// `|nu|^2` of the three exceptional representations.
    pub fn exceptional_nu_sq() -> [Q; 3] {
        [qr(443, 2), q(246), qr(723, 2)]
    }
    pub const FS_SCATTERED: usize = 211;
    pub const STRINGS: usize = 3766;
    /// String counts `N_0..N_7`.
    pub const STRING_COUNTS: [usize; 8] = [120, 224, 322, 469, 628, 736, 731, 536];
    /// `N(S)` for the eight 7-subsets feeding `N_7`.
    pub const N7_PARTS: [usize; 8] = [177, 31, 21, 12, 1, 17, 115, 162];
    pub const USMALL_COUNT: usize = 294660;
    pub const CERTS_COUNT: usize = 249;
    pub const OMEGA_COUNT: usize = 919;
    pub const PHI1_COUNT: usize = 51;
    pub const CERTS_LAMBDA_SQ_RANGE: (i64, i64) = (14, 178);
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertsEntry {
    pub mu: KType,
    #[serde(serialize_with = "ser_q")]
    pub spin_sq: Q,
    #[serde(serialize_with = "ser_q")]
    pub lambda_sq: Q,
    #[serde(serialize_with = "ser_q")]
    pub gap: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertsReport {
    pub usmall_count: usize,
    pub entries: Vec<CertsEntry>,
}

impl CertsReport {
    pub fn lambda_sq_range(&self) -> Option<(Q, Q)> {
        let min = self.entries.iter().map(|e| e.lambda_sq).min()?;
        let max = self.entries.iter().map(|e| e.lambda_sq).max()?;
        Some((min, max))
    }
}

/// Members of `usmall` whose spin/lambda gap reaches the threshold, in input order.
pub fn certs_from(usmall: &[KType]) -> Vec<CertsEntry> {
    let threshold = constants::hj_final_sq();
    let mut out: Vec<CertsEntry> = usmall
        .par_iter()
        .filter_map(|mu| {
            let spin_sq = spin_norm_sq(mu);
            let lambda_sq = lambda_params(mu).norm_sq;
            let gap = spin_sq - lambda_sq;
            (gap >= threshold).then_some(CertsEntry {
                mu: *mu,
                spin_sq,
                lambda_sq,
                gap,
            })
        })
        .collect();
    out.sort_by_key(|e| e.mu);
    out
}

pub fn compute_certs() -> CertsReport {
    let e = enumerate_usmall();
    CertsReport {
        usmall_count: e.members.len(),
        entries: certs_from(&e.members),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaEntry {
    pub lambda_char: InfChar,
    #[serde(serialize_with = "ser_q")]
    pub norm_sq: Q,
}

/// Window for `|Lambda|^2`: `14 + 425/2` to `178 + 723/2`.
pub fn omega_window() -> (Q, Q) {
    let (lo, hi) = constants::CERTS_LAMBDA_SQ_RANGE;
    (q(lo) + constants::hj_final_sq(), q(hi) + constants::hj_sharp_sq())
}

fn zeta_gram() -> [[i64; 8]; 8] {
    datum().gram(Basis::Zeta).map(|r| r.map(|x| x.to_integer()))
}

/// Nonnegative integer zeta vectors with norm in `[lo, hi]` accepted by `keep`,
/// lexicographic. All Gram entries are positive, so partial norms only grow.
pub fn zeta_vectors_in_window<F>(lo: Q, hi: Q, keep: F) -> Vec<([i64; 8], i64)>
where
    F: Fn(&[i64; 8]) -> bool + Sync,
{
    let g = zeta_gram();
    assert!(g.iter().flatten().all(|&x| x > 0));
    let hi_i = hi.floor().to_integer();
    fn rec<F: Fn(&[i64; 8]) -> bool>(
        i: usize,
        cur: &mut [i64; 8],
        norm: i64,
        g: &[[i64; 8]; 8],
        bounds: (Q, i64),
        keep: &F,
        out: &mut Vec<([i64; 8], i64)>,
    ) {
        if i == 8 {
            if q(norm) >= bounds.0 && keep(cur) {
                out.push((*cur, norm));
            }
            return;
        }
        let mut x = 0;
        let mut n = norm;
        loop {
            cur[i] = x;
            rec(i + 1, cur, n, g, bounds, keep, out);
            // norm change from x to x+1 in coordinate i
            let cross: i64 = (0..i).map(|k| g[i][k] * cur[k]).sum::<i64>() * 2;
            let next = n + cross + g[i][i] * (2 * x + 1);
            if next > bounds.1 {
                break;
            }
            n = next;
            x += 1;
        }
        cur[i] = 0;
    }
    let first_max = (0..).take_while(|&x: &i64| g[0][0] * x * x <= hi_i).last().unwrap_or(0);
    let mut parts: Vec<(i64, Vec<([i64; 8], i64)>)> = (0..=first_max)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            let mut cur = [0i64; 8];
            cur[0] = a;
            let norm = g[0][0] * a * a;
            rec(1, &mut cur, norm, &g, (lo, hi_i), &keep, &mut out);
            (a, out)
        })
        .collect();
    parts.sort_by_key(|p| p.0);
    parts.into_iter().flat_map(|p| p.1).collect()
}

pub fn compute_omega_with(rule: HpRule) -> Vec<OmegaEntry> {
    let (lo, hi) = omega_window();
    zeta_vectors_in_window(lo, hi, |v| hp_ints(v, rule))
        .into_iter()
        .map(|(v, n)| OmegaEntry {
            lambda_char: InfChar::from_ints(v).expect("nonnegative"),
            norm_sq: q(n),
        })
        .collect()
}

pub fn compute_omega() -> Vec<OmegaEntry> {
    compute_omega_with(HpRule::Exact)
}

/// Omega sizes under alternative readings of the HP conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaDiagnostics {
    pub exact_rule: usize,
    pub printed_rule: usize,
    pub without_four_term_a_d_f_h: usize,
}

pub fn omega_diagnostics() -> OmegaDiagnostics {
    let (lo, hi) = omega_window();
    let all = zeta_vectors_in_window(lo, hi, |_| true);
    let exact = all.iter().filter(|(v, _)| hp_ints(v, HpRule::Exact)).count();
    let printed = all.iter().filter(|(v, _)| hp_ints(v, HpRule::Printed)).count();
    let relaxed = all.iter().filter(|(v, _)| hp_ints_without_a(v)).count();
    OmegaDiagnostics {
        exact_rule: exact,
        printed_rule: printed,
        without_four_term_a_d_f_h: relaxed,
    }
}

/// All conditions except the four-term one on a, d, f, h.
fn hp_ints_without_a(v: &[i64; 8]) -> bool {
    crate::dirac::hp_conditions(HpRule::Exact)
        .iter()
        .filter(|s| s.as_slice() != [0, 3, 5, 7])
        .all(|s| s.iter().any(|&i| v[i] > 0))
}

/// Zero-one zeta vectors passing `rule` with at least one zero coordinate.
pub fn hp_01_vectors(rule: HpRule) -> Vec<[i64; 8]> {
    (0u32..256)
        .map(|m| std::array::from_fn(|i| (m >> (7 - i) & 1) as i64))
        .filter(|v: &[i64; 8]| v.contains(&0) && hp_ints(v, rule))
        .collect()
}

pub fn hp_count_01() -> usize {
    hp_01_vectors(HpRule::Exact).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phi1Failure {
    pub vector: InfChar,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phi1Report {
    pub count: usize,
    pub failures: Vec<Phi1Failure>,
    pub hp_01_count: usize,
    /// HP-integral zero-one vectors with a zero that the list omits.
    pub not_listed: Vec<InfChar>,
}

pub fn validate_phi1(list: &[InfChar]) -> Phi1Report {
    let failures = list
        .iter()
        .filter_map(|l| {
            let mut reasons = Vec::new();
            if !crate::dirac::hp_integral(l) {
                reasons.push("not HP-integral".to_string());
            }
            let min = l.coords().iter().min().copied();
            let max = l.coords().iter().max().copied();
            if min != Some(q(0)) {
                reasons.push("minimum coordinate is not 0".to_string());
            }
            if max != Some(q(1)) {
                reasons.push("maximum coordinate is not 1".to_string());
            }
            (!reasons.is_empty()).then(|| Phi1Failure { vector: *l, reasons })
        })
        .collect();
    let hp = hp_01_vectors(HpRule::Exact);
    let not_listed = hp
        .iter()
        .map(|v| InfChar::from_ints(*v).expect("nonnegative"))
        .filter(|v| !list.contains(v))
        .collect();
    Phi1Report {
        count: list.len(),
        failures,
        hp_01_count: hp.len(),
        not_listed,
    }
}

pub fn load_phi1() -> Result<Vec<InfChar>> {
    data::load_phi1(None)
}
