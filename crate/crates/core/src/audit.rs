//! Acceptance criteria 1 to 9 as runnable checks.

use crate::dirac::{
    chambers_containing, coset_element, hp_conditions, hp_integral, hp_zero_witness, norm_sq_infchar,
    project_to_chamber, HpRule, InfChar, KType,
};
use crate::hjsearch::{self, constants};
use crate::pencil::{self, membership, verify_membership, Membership};
use crate::rational::*;
use crate::rootdata::{datum, twice_rho_check_pairing, Basis, Weight};
use crate::tables::{self, pairing_evidence};
use crate::weyl::{dominantize_g, dominantize_k, w_one};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use std::time::Instant;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Quick,
    Full,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub measured: String,
    pub expected: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditManifest {
    pub tier: Tier,
    pub criteria: Vec<CriterionResult>,
}

impl AuditManifest {
    /// No criterion failed; skipped ones do not count against the tier.
    pub fn ok(&self) -> bool {
        self.criteria.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, id: u8) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.id == id)
    }
}

pub const TITLES: [&str; 9] = [
    "W1 enumeration",
    "pencil of the trivial K-type",
    "norms and height pairings",
    "u-small count",
    "Certs",
    "Omega",
    "table validation",
    "cancellation evidence",
    "property suites",
];

pub struct Outcome {
    pub pass: bool,
    pub measured: String,
    pub expected: String,
}

fn outcome(pass: bool, measured: impl Into<String>, expected: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        measured: measured.into(),
        expected: expected.into(),
    }
}

fn timed(id: u8, f: impl FnOnce() -> Outcome) -> CriterionResult {
    let t = Instant::now();
    let o = f();
    CriterionResult {
        id,
        title: TITLES[id as usize - 1],
        status: if o.pass { Status::Pass } else { Status::Fail },
        measured: o.measured,
        expected: o.expected,
        elapsed_ms: t.elapsed().as_millis(),
    }
}

fn skipped(id: u8) -> CriterionResult {
    CriterionResult {
        id,
        title: TITLES[id as usize - 1],
        status: Status::Skipped,
        measured: "full tier only".into(),
        expected: String::new(),
        elapsed_ms: 0,
    }
}

pub fn run(tier: Tier) -> AuditManifest {
    let mut criteria = vec![timed(1, criterion_1), timed(2, criterion_2), timed(3, criterion_3)];
    if tier == Tier::Full {
        let t = Instant::now();
        let members = pencil::enumerate_usmall().members;
        let enum_ms = t.elapsed().as_millis();
        let mut c4 = timed(4, || criterion_4(&members));
        c4.elapsed_ms += enum_ms;
        criteria.push(c4);
        criteria.push(timed(5, || criterion_5(&members)));
        criteria.push(timed(6, criterion_6));
    } else {
        criteria.extend([skipped(4), skipped(5), skipped(6)]);
    }
    criteria.push(timed(7, criterion_7));
    criteria.push(timed(8, criterion_8));
    criteria.push(timed(9, criterion_9));
    AuditManifest { tier, criteria }
}

fn k(v: [i64; 8]) -> KType {
    KType::new(v).expect("dominant literal")
}

pub fn criterion_1() -> Outcome {
    let w1 = w_one();
    let distinct: HashSet<[i64; 8]> = w1.iter().map(|c| c.rho).collect();
    let dominant = w1.iter().all(|c| c.rho.iter().all(|&x| x > 0));
    let lam = Weight::from_ints([1, 2, 3, 4, 5, 6, 7, 8], Basis::Zeta);
    let images: Vec<[i64; 8]> = w1
        .iter()
        .map(|c| to_ints(c.element.apply(&lam).to(Basis::Omega).coords()).expect("integral"))
        .collect();
    let (a, b, c, d, e, f, g, h) = (1, 2, 3, 4, 5, 6, 7, 8);
    let first = [a, b, c, d, e, f, g, 2 * a + 3 * b + 4 * c + 6 * d + 5 * e + 4 * f + 3 * g + 2 * h];
    let last = [f, b, e, d, c, a, b + c + 2 * d + 2 * e + 2 * f + 2 * g + h, h];
    let pass = w1.len() == 120
        && distinct.len() == 120
        && dominant
        && images.first() == Some(&first)
        && images.contains(&last);
    outcome(
        pass,
        format!(
            "{} reps, {} distinct rho^(j), k-dominant {dominant}, first image {:?}, pattern {:?} present {}",
            w1.len(),
            distinct.len(),
            images[0],
            last,
            images.contains(&last)
        ),
        "120 distinct k-dominant; first [1,2,3,4,5,6,7,130]".to_string(),
    )
}

pub const TRIVIAL_PENCIL: [i64; 18] = [620, 564, 512, 464, 420, 380, 348, 320, 296, 276, 260, 300, 344, 392, 444, 500, 560, 624];

pub fn criterion_2() -> Outcome {
    let r = pencil::mp(&KType::zero(), 2);
    let got: Vec<Q> = r.entries.iter().map(|e| e.spin_norm_sq).collect();
    let want: Vec<Q> = TRIVIAL_PENCIL.iter().map(|&x| q(x)).collect();
    let zero = KType::zero();
    let boundary = pencil::usmall(&zero.plus_beta(15)) && !pencil::usmall(&zero.plus_beta(16));
    let argmin: Vec<i64> = r.argmin_n.iter().copied().collect();
    let pass = got == want && boundary && r.mp_sq == q(260) && argmin == [10];
    outcome(
        pass,
        format!(
            "values {:?}, 15b small/16b large {boundary}, MP^2 {} at {:?}",
            got.iter().map(format_q).collect::<Vec<_>>(),
            r.mp_sq,
            argmin
        ),
        format!("values {TRIVIAL_PENCIL:?}, boundary 15b/16b, MP^2 260 at [10]"),
    )
}

pub fn criterion_3() -> Outcome {
    let d = datum();
    let rho = d.rho.norm_sq();
    let l1 = InfChar::from_ints([1, 1, 1, 0, 1, 1, 1, 1]).expect("literal");
    let l2 = InfChar::from_ints([1, 1, 1, 0, 1, 0, 1, 1]).expect("literal");
    let n1 = norm_sq_infchar(&l1);
    let p1 = twice_rho_check_pairing(&l1.weight());
    let p2 = twice_rho_check_pairing(&l2.weight());
    outcome(
        rho == q(620) && n1 == q(380) && p1 == q(970) && p2 == q(802),
        format!("|rho|^2 {rho}, |Lambda|^2 {n1}, pairings {p1} {p2}"),
        "620, 380, 970 802",
    )
}

pub fn criterion_4(members: &[KType]) -> Outcome {
    let n = members.len();
    outcome(n == constants::USMALL_COUNT, n.to_string(), constants::USMALL_COUNT.to_string())
}

pub const CERTS_NAMED: [[i64; 8]; 4] = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 6, 18],
];

pub fn criterion_5(members: &[KType]) -> Outcome {
    let certs = hjsearch::certs_from(members);
    let present = CERTS_NAMED.iter().all(|m| certs.iter().any(|e| e.mu == k(*m)));
    let lo = certs.iter().map(|e| e.lambda_sq).min();
    let hi = certs.iter().map(|e| e.lambda_sq).max();
    let (want_lo, want_hi) = constants::CERTS_LAMBDA_SQ_RANGE;
    let range_ok = lo == Some(q(want_lo)) && hi == Some(q(want_hi));
    let fmt = |x: Option<Q>| x.map_or("-".to_string(), |v| v.to_string());
    outcome(
        certs.len() == constants::CERTS_COUNT && present && range_ok,
        format!("count {}, named members present {present}, lambda^2 range {}..{}", certs.len(), fmt(lo), fmt(hi)),
        format!("count {}, named members present, range {want_lo}..{want_hi}", constants::CERTS_COUNT),
    )
}

pub fn criterion_6() -> Outcome {
    let omega = hjsearch::compute_omega();
    let (lo, hi) = hjsearch::omega_window();
    let members_ok = omega
        .iter()
        .all(|e| hp_integral(&e.lambda_char) && e.norm_sq >= lo && e.norm_sq <= hi && norm_sq_infchar(&e.lambda_char) == e.norm_sq);
    outcome(
        omega.len() == constants::OMEGA_COUNT && members_ok,
        format!("count {}, members HP-integral in window {members_ok}", omega.len()),
        format!("count {}, window [{lo}, {hi}]", constants::OMEGA_COUNT),
    )
}

pub fn criterion_7() -> Outcome {
    let rows = match tables::load_tables(None) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string(), "211 rows"),
    };
    let phi1 = match hjsearch::load_phi1() {
        Ok(p) => p,
        Err(e) => return outcome(false, e.to_string(), "51 entries"),
    };
    let rep = tables::validate_tables(&rows, &phi1);
    let s = &rep.summary;
    let regular: Vec<String> = s.regular_captions.iter().map(|c| format!("[{}]", format_vec(c.coords()).join(","))).collect();
    outcome(
        rep.ok() && s.rows == constants::FS_SCATTERED && s.cancellation_rows == 15 && phi1.len() == constants::PHI1_COUNT,
        format!(
            "{}/{} rows pass, cancellation {}/{}, captions {} with {} outside Phi1, regular captions {:?}",
            s.passed,
            s.rows,
            s.cancellation_rows_with_shared_gamma,
            s.cancellation_rows,
            s.captions,
            s.captions_outside_phi1.len(),
            regular
        ),
        "211/211, 15/15, every caption with a zero coordinate in Phi1",
    )
}

pub fn criterion_8() -> Outcome {
    let base = k([0, 0, 0, 0, 0, 0, 0, 8]);
    let top = Weight::from_ints([0, 0, 0, 0, 0, 0, 0, 18], Basis::Omega);
    let first = pairing_evidence(&base.plus_beta(1), &base.plus_beta(10)).contains(&top);
    let minimal = (1..=5)
        .filter(|&n| !pairing_evidence(&base.plus_beta(n), &base.plus_beta(11 - n)).is_empty())
        .count();
    let zero = Weight::zero(Basis::Omega);
    let rho_c_pairs = [
        ([1, 0, 3, 0, 0, 0, 1, 11], [0, 0, 4, 0, 0, 0, 0, 10]),
        ([1, 3, 0, 0, 0, 0, 4, 5], [0, 3, 1, 0, 0, 0, 3, 4]),
    ];
    let trivial = rho_c_pairs
        .iter()
        .filter(|(a, b)| pairing_evidence(&k(*a), &k(*b)).contains(&zero))
        .count();
    outcome(
        first && minimal == 5 && trivial == 2,
        format!("b <-> 10b share [0,...,0,18] {first}, dichotomy pairs sharing {minimal}/5, rho_c pairs sharing 0 {trivial}/2"),
        "true, 5/5, 2/2",
    )
}

/// Nearest point of the chamber with walls `walls` to `y`, all Euclidean: the closest
/// feasible orthogonal projection onto the 256 faces.
pub fn nearest_in_chamber_by_faces(y: &Vec8, walls: &[Vec8; 8]) -> Vec8 {
    let mut best: Option<(Q, Vec8)> = None;
    for mask in 0u32..256 {
        let s: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
        let m: Vec<Vec<Q>> = s.iter().map(|&i| s.iter().map(|&k| dot(&walls[i], &walls[k])).collect()).collect();
        let rhs: Vec<Q> = s.iter().map(|&i| dot(&walls[i], y)).collect();
        let Some(c) = solve_dyn(&m, &rhs) else { continue };
        let mut x = *y;
        for (&i, ci) in s.iter().zip(&c) {
            x = sub(&x, &scale(&walls[i], *ci));
        }
        if walls.iter().any(|w| dot(w, &x).is_negative()) {
            continue;
        }
        let dist = dot(&sub(&x, y), &sub(&x, y));
        if best.as_ref().map_or(true, |(b, _)| dist < *b) {
            best = Some((dist, x));
        }
    }
    best.expect("the apex is always feasible").1
}

fn chamber_walls(j: usize) -> [Vec8; 8] {
    let w = coset_element(j).expect("index in range");
    let d = datum();
    std::array::from_fn(|i| w.apply_euclid(&d.g_simple[i]))
}

/// Projection results agree with the face oracle and satisfy KKT; returns failures.
pub fn projection_suite(rng: &mut ChaCha8Rng, trials: usize) -> usize {
    let mut bad = 0;
    for _ in 0..trials {
        let j = rng.gen_range(0..w_one().len());
        let y: Vec8 = std::array::from_fn(|_| qr(rng.gen_range(-30..30), rng.gen_range(1..5)));
        let y = Weight::new(y, Basis::Zeta);
        let walls = chamber_walls(j);
        let got = project_to_chamber(&y, j).expect("index in range").euclid();
        let want = nearest_in_chamber_by_faces(&y.euclid(), &walls);
        let r = sub(&y.euclid(), &got);
        let primal = walls.iter().all(|w| !dot(w, &got).is_negative());
        // y - x lies in the normal cone: a nonpositive combination of the active walls
        let active: Vec<usize> = (0..8).filter(|&i| dot(&walls[i], &got).is_zero()).collect();
        let m: Vec<Vec<Q>> = active.iter().map(|&i| active.iter().map(|&k| dot(&walls[i], &walls[k])).collect()).collect();
        let rhs: Vec<Q> = active.iter().map(|&i| dot(&walls[i], &r)).collect();
        let dual = match solve_dyn(&m, &rhs) {
            Some(c) => {
                let mut back = zero8();
                for (&i, ci) in active.iter().zip(&c) {
                    back = add(&back, &scale(&walls[i], *ci));
                }
                c.iter().all(|x| !x.is_positive()) && back == r
            }
            None => false,
        };
        if got != want || !primal || !dual {
            bad += 1;
        }
    }
    bad
}

/// K-types `mu` in a small box with `mu + 2 rho_c` on a chamber wall. Returns the number
/// of wall cases and the number where the chamber choice changes the projection.
pub fn wall_suite(limit: usize) -> (usize, usize) {
    let mut cases = 0;
    let mut bad = 0;
    let d = datum();
    for m in 0u32..6561 {
        if cases >= limit {
            break;
        }
        let c: [i64; 8] = std::array::from_fn(|i| (m / 3u32.pow(i as u32) % 3) as i64);
        let Ok(mu) = KType::new(c) else { continue };
        let x = c.map(|v| v + 2);
        let js = chambers_containing(&x);
        if js.len() < 2 {
            continue;
        }
        cases += 1;
        let two_rc = d.rho_c.scaled(q(2));
        let base = mu.weight().plus(&two_rc);
        let images: Vec<Vec8> = js
            .iter()
            .map(|&j| {
                let y = base.minus(&w_one()[j].rho_weight());
                project_to_chamber(&y, j).expect("index in range").euclid()
            })
            .collect();
        let lambda = crate::dirac::lambda_params(&mu).lambda_a.euclid();
        if images.iter().any(|e| *e != images[0]) || lambda != images[0] {
            bad += 1;
        }
    }
    (cases, bad)
}

pub fn dominance_suite(rng: &mut ChaCha8Rng, trials: usize) -> usize {
    let mut bad = 0;
    for _ in 0..trials {
        let x = Weight::new(std::array::from_fn(|_| qr(rng.gen_range(-20..20), rng.gen_range(1..3))), Basis::Omega);
        let (dk, wk) = dominantize_k(&x);
        let (dg, wg) = dominantize_g(&x);
        let ok = wk.apply(&x) == dk
            && dominantize_k(&dk).0 == dk
            && wg.apply(&x) == dg
            && dominantize_g(&dg).0 == dg
            && dk.coords().iter().all(|c| !c.is_negative())
            && dg.to(Basis::Zeta).coords().iter().all(|c| !c.is_negative());
        if !ok {
            bad += 1;
        }
    }
    bad
}

/// For every HP condition, the vector vanishing on it and equal to 1 elsewhere has a
/// zero witness. Returns failures.
pub fn hp_witness_suite() -> usize {
    hp_conditions(HpRule::Exact)
        .iter()
        .filter(|s| {
            let v: [i64; 8] = std::array::from_fn(|i| i64::from(!s.contains(&i)));
            let l = InfChar::from_ints(v).expect("integral");
            hp_integral(&l) || !hp_zero_witness(&l)
        })
        .count()
}

/// Membership certificates for random dominant points; returns (inside, outside, failures).
pub fn certificate_suite(rng: &mut ChaCha8Rng, trials: usize) -> (usize, usize, usize) {
    let (mut inside, mut outside, mut bad) = (0, 0, 0);
    let mut done = 0;
    while done < trials {
        let c: [i64; 8] = std::array::from_fn(|i| rng.gen_range(0..=[4, 3, 3, 2, 3, 4, 8, 24][i]));
        if !crate::rootdata::k_type_parity(&c) {
            continue;
        }
        done += 1;
        let mu = k(c);
        let m = membership(&mu);
        if !verify_membership(&mu, &m) {
            bad += 1;
        }
        match m {
            Membership::Separated { .. } | Membership::CoweightBound(_) => outside += 1,
            _ => inside += 1,
        }
    }
    (inside, outside, bad)
}

pub fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let proj = projection_suite(&mut rng, 200);
    let (walls, wall_bad) = wall_suite(50);
    let dom = dominance_suite(&mut rng, 200);
    let hp = hp_witness_suite();
    let (inside, outside, cert) = certificate_suite(&mut rng, 100);
    outcome(
        proj == 0 && walls > 0 && wall_bad == 0 && dom == 0 && hp == 0 && cert == 0 && inside > 0 && outside > 0,
        format!(
            "projection failures {proj}/200, wall cases {walls} with {wall_bad} failures, dominance failures {dom}/200, \
             HP witness failures {hp}/14, certificate failures {cert}/100 ({inside} inside, {outside} outside)"
        ),
        "zero failures everywhere",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_oracle_on_the_dominant_chamber() {
        let d = datum();
        let walls: [Vec8; 8] = d.g_simple;
        let rho = d.rho.euclid();
        assert_eq!(nearest_in_chamber_by_faces(&rho, &walls), rho);
        let minus = scale(&rho, q(-1));
        assert_eq!(nearest_in_chamber_by_faces(&minus, &walls), zero8());
    }

    #[test]
    fn witness_suite_is_clean() {
        assert_eq!(hp_witness_suite(), 0);
    }

    #[test]
    fn quick_tier_skips_the_enumerations() {
        let m = run(Tier::Quick);
        assert_eq!(m.criteria.len(), 9);
        let ids: Vec<u8> = m.criteria.iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=9).collect::<Vec<u8>>());
        for id in [4, 5, 6] {
            assert_eq!(m.get(id).unwrap().status, Status::Skipped);
        }
        assert!(m.ok());
    }
}
