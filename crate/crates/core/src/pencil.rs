//! The u-small hull, its exact membership test, enumeration of u-small K-types,
//! Vogan pencils and MP(mu).
//!
//! A k-dominant `mu` lies in the W(k)-saturated hull of the points `2 w rho_n^(j)` iff
//! some convex combination `y` of the dominant vertices `v_j = dom_k(2 rho_n^(j))`
//! satisfies `y - mu` in the nonnegative span of the k-simple roots. In coweight
//! coordinates `f(x) = A_k^{-1} x` that is coordinatewise domination `f(y) >= f(mu)`.

use crate::dirac::{spin_norm_sq, KType};
use crate::lp::{dominated_by_hull, HullLp};
use crate::rational::*;
use crate::rootdata::{datum, k_type_parity};
use crate::weyl::w_one;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};

pub struct USmallHull {
    /// `v_j` in omega coordinates, indexed by coset.
    pub vertices: Vec<[i64; 8]>,
    /// Valid upper bounds on each omega coordinate of a dominant hull point.
    pub coord_bounds: [i64; 8],
    /// `2 A_k^{-1} v_j`.
    coweights: Vec<[i64; 8]>,
    /// Vertices not dominated by another vertex; enough for the LP.
    extreme: Vec<usize>,
    /// `max_j 2 A_k^{-1} v_j` per coordinate.
    box2: [i64; 8],
    /// `2 A_k^{-1}`, nonnegative integer.
    inv2: [[i64; 8]; 8],
}

fn apply_int(m: &[[i64; 8]; 8], v: &[i64; 8]) -> [i64; 8] {
    std::array::from_fn(|i| (0..8).map(|k| m[i][k] * v[k]).sum())
}

fn dominates(a: &[i64; 8], b: &[i64; 8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

static HULL: Lazy<USmallHull> = Lazy::new(build_hull);

pub fn hull() -> &'static USmallHull {
    &HULL
}

fn build_hull() -> USmallHull {
    let d = datum();
    let inv = inverse(&mat_from_ints(&d.cartan_k)).expect("Cartan matrix invertible");
    let inv2: [[i64; 8]; 8] = std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let x = inv[i][k] * q(2);
            assert!(x.is_integer() && !x.is_negative());
            x.to_integer()
        })
    });
    let vertices: Vec<[i64; 8]> = w_one().iter().map(|c| c.vertex).collect();
    let coweights: Vec<[i64; 8]> = vertices.iter().map(|v| apply_int(&inv2, v)).collect();
    let box2: [i64; 8] = std::array::from_fn(|i| coweights.iter().map(|c| c[i]).max().unwrap_or(0));
    // mu_i <= box2_k / inv2[k][i] for every k since the other terms are nonnegative
    let coord_bounds: [i64; 8] = std::array::from_fn(|i| {
        (0..8)
            .filter(|&k| inv2[k][i] > 0)
            .map(|k| box2[k] / inv2[k][i])
            .min()
            .expect("inverse Cartan columns are nonzero")
    });
    let mut extreme: Vec<usize> = Vec::new();
    for (j, c) in coweights.iter().enumerate() {
        let covered = coweights
            .iter()
            .enumerate()
            .any(|(i, o)| i != j && dominates(o, c) && (o != c || i < j));
        if !covered {
            extreme.push(j);
        }
    }
    USmallHull {
        vertices,
        coord_bounds,
        coweights,
        extreme,
        box2,
        inv2,
    }
}

/// How membership of a K-type was decided. Every variant is an exact certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Dominated by the single vertex `v_j`.
    Vertex(usize),
    /// Dominated by this convex combination of vertices.
    Combination(Vec<(usize, BigRational)>),
    /// The `i`-th fundamental coweight exceeds its maximum over the vertices.
    CoweightBound(usize),
    /// A nonnegative combination of coweights separating the point from the hull.
    Separated {
        functional: Vec<BigRational>,
        threshold: BigRational,
    },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Vertex(_) | Membership::Combination(_))
    }
}

/// Integer form of a separating functional on doubled coweight coordinates.
#[derive(Clone, Debug)]
struct Cut {
    f: [i128; 8],
    threshold: i128,
    original: (Vec<BigRational>, BigRational),
}

impl Cut {
    fn from_lp(functional: Vec<BigRational>, threshold: BigRational, h: &USmallHull) -> Option<Cut> {
        let lcm = functional.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let f: Vec<i128> = functional.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer().to_i128()).collect::<Option<_>>()?;
        let f: [i128; 8] = f.try_into().ok()?;
        let threshold_int = h
            .extreme
            .iter()
            .map(|&j| (0..8).map(|i| f[i] * h.coweights[j][i] as i128).sum::<i128>())
            .max()?;
        Some(Cut {
            f,
            threshold: threshold_int,
            original: (functional, threshold),
        })
    }

    fn separates(&self, t: &[i64; 8]) -> bool {
        (0..8).map(|i| self.f[i] * t[i] as i128).sum::<i128>() > self.threshold
    }
}

/// Membership tester with a cache of separating cuts found so far.
#[derive(Default)]
pub struct Classifier {
    cuts: Vec<Cut>,
    pub stats: ClassifierStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassifierStats {
    pub by_coweight_bound: u64,
    pub by_vertex: u64,
    pub by_cut: u64,
    pub lp_inside: u64,
    pub lp_outside: u64,
}

impl ClassifierStats {
    fn merge(&mut self, o: &ClassifierStats) {
        self.by_coweight_bound += o.by_coweight_bound;
        self.by_vertex += o.by_vertex;
        self.by_cut += o.by_cut;
        self.lp_inside += o.lp_inside;
        self.lp_outside += o.lp_outside;
    }
}

impl Classifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classify(&mut self, mu: &KType) -> Membership {
        let h = hull();
        let t = apply_int(&h.inv2, mu.coords());
        if let Some(i) = (0..8).find(|&i| t[i] > h.box2[i]) {
            self.stats.by_coweight_bound += 1;
            return Membership::CoweightBound(i);
        }
        if let Some(j) = h.coweights.iter().position(|c| dominates(c, &t)) {
            self.stats.by_vertex += 1;
            return Membership::Vertex(j);
        }
        if let Some(c) = self.cuts.iter().find(|c| c.separates(&t)) {
            self.stats.by_cut += 1;
            return Membership::Separated {
                functional: c.original.0.clone(),
                threshold: c.original.1.clone(),
            };
        }
        let points: Vec<Vec<i64>> = h.extreme.iter().map(|&j| h.coweights[j].to_vec()).collect();
        match dominated_by_hull(&points, &t) {
            HullLp::Inside { weights } => {
                self.stats.lp_inside += 1;
                Membership::Combination(weights.into_iter().map(|(i, w)| (h.extreme[i], w)).collect())
            }
            HullLp::Outside { functional, threshold } => {
                self.stats.lp_outside += 1;
                // the LP ran on doubled coordinates; halve the threshold for undoubled ones
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let undoubled = threshold * half;
                if let Some(cut) = Cut::from_lp(functional.clone(), undoubled.clone(), h) {
                    self.cuts.push(cut);
                }
                Membership::Separated {
                    functional,
                    threshold: undoubled,
                }
            }
        }
    }

    pub fn cut_count(&self) -> usize {
        self.cuts.len()
    }
}

pub fn membership(mu: &KType) -> Membership {
    Classifier::new().classify(mu)
}

pub fn usmall(mu: &KType) -> bool {
    membership(mu).is_inside()
}

/// Exact check of a membership certificate straight from the vertex list; the functional
/// acts on coweight coordinates `A_k^{-1} x`.
pub fn verify_membership(mu: &KType, m: &Membership) -> bool {
    let h = hull();
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let two = big(2);
    // twice the coweight coordinates keeps everything integral
    let t = apply_int(&h.inv2, mu.coords());
    match m {
        Membership::Vertex(j) => dominates(&apply_int(&h.inv2, &h.vertices[*j]), &t),
        Membership::Combination(ws) => {
            let total: BigRational = ws.iter().map(|w| w.1.clone()).sum();
            if !total.is_one() || ws.iter().any(|w| w.1.is_negative()) {
                return false;
            }
            (0..8).all(|i| {
                let s: BigRational = ws.iter().map(|(j, l)| l * big(apply_int(&h.inv2, &h.vertices[*j])[i])).sum();
                s >= big(t[i])
            })
        }
        Membership::CoweightBound(i) => h.vertices.iter().all(|v| apply_int(&h.inv2, v)[*i] < t[*i]),
        Membership::Separated { functional, threshold } => {
            if functional.len() != 8 || functional.iter().any(|f| f.is_negative()) {
                return false;
            }
            let eval = |v: &[i64; 8]| -> BigRational { functional.iter().zip(v).map(|(f, &x)| f * big(x)).sum::<BigRational>() / &two };
            h.vertices.iter().all(|v| eval(&apply_int(&h.inv2, v)) <= *threshold) && eval(&t) > *threshold
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UsmallEnumeration {
    pub members: Vec<KType>,
    /// Dominant integer points inside the coweight box.
    pub box_points: u64,
    /// Box points passing the parity condition.
    pub candidates: u64,
    pub stats: ClassifierStats,
    pub cuts: usize,
}

fn box_points_with_prefix(prefix: &[i64], h: &USmallHull, out: &mut Vec<[i64; 8]>) {
    let mut cur = [0i64; 8];
    let mut acc = [0i64; 8];
    for (i, &x) in prefix.iter().enumerate() {
        cur[i] = x;
        for k in 0..8 {
            acc[k] += h.inv2[k][i] * x;
        }
    }
    fn rec(i: usize, cur: &mut [i64; 8], acc: [i64; 8], h: &USmallHull, out: &mut Vec<[i64; 8]>) {
        if i == 8 {
            out.push(*cur);
            return;
        }
        let mut a = acc;
        let mut x = 0;
        loop {
            if (0..8).any(|k| a[k] > h.box2[k]) {
                break;
            }
            cur[i] = x;
            rec(i + 1, cur, a, h, out);
            x += 1;
            for (k, ak) in a.iter_mut().enumerate() {
                *ak += h.inv2[k][i];
            }
        }
        cur[i] = 0;
    }
    if (0..8).all(|k| acc[k] <= h.box2[k]) {
        rec(prefix.len(), &mut cur, acc, h, out);
    }
}

/// All u-small K-types in lexicographic order.
pub fn enumerate_usmall() -> UsmallEnumeration {
    let h = hull();
    let prefixes: Vec<Vec<i64>> = (0..=h.coord_bounds[0])
        .flat_map(|a| (0..=h.coord_bounds[1]).map(move |b| vec![a, b]))
        .collect();
    let parts: Vec<(Vec<KType>, u64, u64, ClassifierStats, usize)> = prefixes
        .par_iter()
        .map(|p| {
            let mut pts = Vec::new();
            box_points_with_prefix(p, h, &mut pts);
            let total = pts.len() as u64;
            let mut cls = Classifier::new();
            let mut members = Vec::new();
            let mut cand = 0;
            for c in pts.into_iter().filter(k_type_parity) {
                cand += 1;
                let mu = KType::new(c).expect("box points are dominant");
                if cls.classify(&mu).is_inside() {
                    members.push(mu);
                }
            }
            (members, total, cand, cls.stats, cls.cut_count())
        })
        .collect();
    let mut out = UsmallEnumeration {
        members: Vec::new(),
        box_points: 0,
        candidates: 0,
        stats: ClassifierStats::default(),
        cuts: 0,
    };
    for (m, t, c, s, k) in parts {
        out.members.extend(m);
        out.box_points += t;
        out.candidates += c;
        out.stats.merge(&s);
        out.cuts += k;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilEntry {
    pub n: i64,
    #[serde(serialize_with = "crate::dirac::ser_q")]
    pub spin_norm_sq: Q,
    pub usmall: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub mu: KType,
    pub entries: Vec<PencilEntry>,
    #[serde(serialize_with = "crate::dirac::ser_q")]
    pub mp_sq: Q,
    pub argmin_n: BTreeSet<i64>,
    /// Non-increasing then non-decreasing over the entries entering MP.
    pub unimodal: bool,
}

pub fn is_unimodal(values: &[Q]) -> bool {
    let mut i = 1;
    while i < values.len() && values[i] <= values[i - 1] {
        i += 1;
    }
    while i < values.len() && values[i] >= values[i - 1] {
        i += 1;
    }
    i >= values.len()
}

pub fn mp(mu: &KType, guard: usize) -> PencilReport {
    let mut cls = Classifier::new();
    let mut entries = Vec::new();
    // last n of the u-small run starting at n = 0
    let mut segment_end: Option<i64> = None;
    let guard = guard as i64;
    for n in 0.. {
        let m = mu.plus_beta(n);
        let small = cls.classify(&m).is_inside();
        if small && n == segment_end.map_or(0, |e| e + 1) {
            segment_end = Some(n);
        }
        if n > segment_end.map_or(guard, |e| e + guard) {
            break;
        }
        entries.push(PencilEntry {
            n,
            spin_norm_sq: spin_norm_sq(&m),
            usmall: small,
        });
    }
    let used: Vec<&PencilEntry> = if entries[0].usmall {
        entries.iter().filter(|e| e.usmall).collect()
    } else {
        vec![&entries[0]]
    };
    let mp_sq = used.iter().map(|e| e.spin_norm_sq).min().expect("pencil starts at mu");
    let argmin_n = used.iter().filter(|e| e.spin_norm_sq == mp_sq).map(|e| e.n).collect();
    let values: Vec<Q> = used.iter().map(|e| e.spin_norm_sq).collect();
    PencilReport {
        mu: *mu,
        entries,
        mp_sq,
        argmin_n,
        unimodal: is_unimodal(&values),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodalityReport {
    pub max_height: i64,
    pub pencils_scanned: usize,
    pub violations: Vec<PencilViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilViolation {
    pub base: KType,
    pub spin_norm_sq: Vec<String>,
}

/// Checks the u-small segment of every pencil whose base (a u-small `mu` with `mu - beta`
/// not u-small) has height at most `max_height`. Tails of a unimodal sequence are unimodal,
/// so bases cover every pencil start.
pub fn unimodality_scan(members: &[KType], max_height: i64) -> UnimodalityReport {
    let set: HashSet<KType> = members.iter().copied().collect();
    let bases: Vec<KType> = members
        .iter()
        .filter(|m| m.height() <= max_height)
        .filter(|m| {
            let c = m.coords();
            c[6] == 0 || c[7] == 0 || !set.contains(&KType::new([c[0], c[1], c[2], c[3], c[4], c[5], c[6] - 1, c[7] - 1]).expect("nonneg"))
        })
        .copied()
        .collect();
    let mut violations: Vec<PencilViolation> = bases
        .par_iter()
        .filter_map(|b| {
            let mut values = Vec::new();
            let mut n = 0;
            while set.contains(&b.plus_beta(n)) {
                values.push(spin_norm_sq(&b.plus_beta(n)));
                n += 1;
            }
            (!is_unimodal(&values)).then(|| PencilViolation {
                base: *b,
                spin_norm_sq: values.iter().map(format_q).collect(),
            })
        })
        .collect();
    violations.sort_by_key(|v| v.base);
    UnimodalityReport {
        max_height,
        pencils_scanned: bases.len(),
        violations,
    }
}

/// Spin norms of every listed K-type, keyed by K-type.
pub fn spin_table(members: &[KType]) -> HashMap<KType, Q> {
    members.par_iter().map(|m| (*m, spin_norm_sq(m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: [i64; 8]) -> KType {
        KType::new(v).unwrap()
    }

    #[test]
    fn hull_shape() {
        let h = hull();
        assert_eq!(h.vertices.len(), 120);
        let distinct: HashSet<_> = h.vertices.iter().collect();
        assert_eq!(distinct.len(), 120);
        assert_eq!(h.box2, [48, 84, 96, 144, 120, 80, 60, 56]);
        for v in &h.vertices {
            for i in 0..8 {
                assert!(v[i] <= h.coord_bounds[i]);
            }
            assert!(usmall(&k(*v)));
        }
    }

    #[test]
    fn beta_multiples() {
        assert!(usmall(&KType::zero()));
        assert!(usmall(&KType::zero().plus_beta(15)));
        assert!(!usmall(&KType::zero().plus_beta(16)));
    }

    #[test]
    fn certificates_verify() {
        for v in [[0, 0, 0, 0, 0, 0, 15, 15], [0, 0, 0, 0, 0, 0, 16, 16], [0, 0, 0, 0, 0, 0, 6, 18], [3, 1, 0, 2, 0, 1, 5, 9], [9, 9, 9, 9, 9, 9, 9, 9]] {
            let mu = k(v);
            let m = membership(&mu);
            assert!(verify_membership(&mu, &m), "{mu} {m:?}");
        }
    }

    #[test]
    fn pencil_from_zero() {
        let r = mp(&KType::zero(), 2);
        let expected = [620, 564, 512, 464, 420, 380, 348, 320, 296, 276, 260, 300, 344, 392, 444, 500, 560, 624];
        let got: Vec<Q> = r.entries.iter().map(|e| e.spin_norm_sq).collect();
        assert_eq!(got, expected.map(q).to_vec());
        assert_eq!(r.entries.iter().filter(|e| e.usmall).count(), 16);
        assert_eq!(r.mp_sq, q(260));
        assert_eq!(r.argmin_n, BTreeSet::from([10]));
        assert!(r.unimodal);
        let no_guard = mp(&KType::zero(), 0);
        assert_eq!(no_guard.entries.len(), 16);
    }

    #[test]
    fn u_large_pencil() {
        let mu = KType::zero().plus_beta(16);
        let r = mp(&mu, 2);
        assert_eq!(r.mp_sq, spin_norm_sq(&mu));
        assert_eq!(r.argmin_n, BTreeSet::from([0]));
    }

    #[test]
    fn minimal_rep_pencil() {
        let r = mp(&k([0, 0, 0, 0, 0, 0, 0, 8]), 2);
        assert!(r.unimodal);
        assert_eq!(r.mp_sq, q(380));
    }

    #[test]
    fn unimodal_helper() {
        assert!(is_unimodal(&[q(3), q(2), q(2), q(5)]));
        assert!(!is_unimodal(&[q(3), q(4), q(2)]));
        assert!(is_unimodal(&[]));
    }
}
