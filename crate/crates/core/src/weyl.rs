//! Weyl group elements, dominantization, and the 120 minimal coset representatives W^1.

use crate::rational::*;
use crate::rootdata::{datum, Basis, Weight};
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

/// Which simple system the word letters refer to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Flavor {
    G,
    K,
}

/// A Weyl group element as a word in simple reflections (letters 1..=8) and its
/// Euclidean matrix. Equality compares matrices only.
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<u8>,
    matrix: Mat8,
    flavor: Flavor,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

fn simple_root(flavor: Flavor, letter: u8) -> &'static Vec8 {
    let d = datum();
    let i = letter as usize - 1;
    match flavor {
        Flavor::G => &d.g_simple[i],
        Flavor::K => &d.k_simple[i],
    }
}

/// Matrix of the reflection in a root of length 2.
pub fn reflection_matrix(r: &Vec8) -> Mat8 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let id = if i == j { q(1) } else { Q::zero() };
            id - r[i] * r[j]
        })
    })
}

impl WeylElement {
    pub fn identity(flavor: Flavor) -> Self {
        WeylElement {
            word: Vec::new(),
            matrix: identity(),
            flavor,
        }
    }

    pub fn reflection(flavor: Flavor, letter: u8) -> Self {
        assert!((1..=8).contains(&letter), "simple reflection index {letter}");
        WeylElement {
            word: vec![letter],
            matrix: reflection_matrix(simple_root(flavor, letter)),
            flavor,
        }
    }

    /// `s_{w_1} s_{w_2} ... s_{w_m}`.
    pub fn from_word(flavor: Flavor, word: &[u8]) -> Self {
        word.iter().fold(WeylElement::identity(flavor), |acc, &l| {
            acc.compose(&WeylElement::reflection(flavor, l))
        })
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn matrix(&self) -> &Mat8 {
        &self.matrix
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity()
    }

    /// `self * other`; letters keep the flavor of `self` when flavors agree.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        if self.flavor == other.flavor {
            word.extend_from_slice(&other.word);
        } else {
            word.clear();
        }
        WeylElement {
            word,
            matrix: mat_mul(&self.matrix, &other.matrix),
            flavor: self.flavor,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut word = self.word.clone();
        word.reverse();
        WeylElement {
            word,
            matrix: transpose(&self.matrix),
            flavor: self.flavor,
        }
    }

    pub fn apply_euclid(&self, v: &Vec8) -> Vec8 {
        mat_vec(&self.matrix, v)
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        let e = Weight::new(self.apply_euclid(&x.euclid()), Basis::Euclidean);
        e.to(x.basis())
    }
}

pub fn apply(w: &WeylElement, x: &Weight) -> Weight {
    w.apply(x)
}

/// Reflects coordinates in a fundamental-weight basis until they are nonnegative.
/// Returns the letters in application order.
fn dominantize_coords(c: &mut Vec8, cartan: &[[i64; 8]; 8]) -> Vec<u8> {
    let mut applied = Vec::new();
    while let Some(i) = (0..8).find(|&i| c[i].is_negative()) {
        let ci = c[i];
        for j in 0..8 {
            c[j] -= ci * q(cartan[i][j]);
        }
        applied.push(i as u8 + 1);
    }
    applied
}

fn dominantize(x: &Weight, flavor: Flavor) -> (Weight, WeylElement) {
    let d = datum();
    let (basis, cartan) = match flavor {
        Flavor::G => (Basis::Zeta, &d.cartan_g),
        Flavor::K => (Basis::Omega, &d.cartan_k),
    };
    let mut c = *x.to(basis).coords();
    let mut letters = dominantize_coords(&mut c, cartan);
    letters.reverse();
    let w = WeylElement::from_word(flavor, &letters);
    (Weight::new(c, basis).to(x.basis()), w)
}

/// The k-dominant point of the W(k)-orbit of `x`, with `dom = w x`.
pub fn dominantize_k(x: &Weight) -> (Weight, WeylElement) {
    dominantize(x, Flavor::K)
}

/// The g-dominant point of the W(g)-orbit of `x`, with `dom = w x`.
pub fn dominantize_g(x: &Weight) -> (Weight, WeylElement) {
    dominantize(x, Flavor::G)
}

/// Integer omega-coordinate dominantization used in the hot loops.
pub fn dominantize_k_ints(c: &mut [i64; 8]) {
    let ck = &datum().cartan_k;
    while let Some(i) = (0..8).find(|&i| c[i] < 0) {
        let ci = c[i];
        for j in 0..8 {
            c[j] -= ci * ck[i][j];
        }
    }
}

pub fn conjugate_under_wg(x: &Weight, y: &Weight) -> bool {
    let a = dominantize_g(x).0.to(Basis::Zeta);
    let b = dominantize_g(y).0.to(Basis::Zeta);
    a == b
}

/// A minimal-length coset representative with its cached weights (omega coordinates).
#[derive(Clone, Debug)]
pub struct CosetRep {
    pub index: usize,
    pub element: WeylElement,
    pub rho: [i64; 8],
    pub rho_n: [i64; 8],
    /// `dom_k(2 rho_n)`.
    pub vertex: [i64; 8],
}

impl CosetRep {
    pub fn rho_weight(&self) -> Weight {
        Weight::from_ints(self.rho, Basis::Omega)
    }

    pub fn rho_n_weight(&self) -> Weight {
        Weight::from_ints(self.rho_n, Basis::Omega)
    }

    pub fn vertex_weight(&self) -> Weight {
        Weight::from_ints(self.vertex, Basis::Omega)
    }

    pub fn length(&self) -> usize {
        self.element.word().len()
    }
}

/// `w^{-1} gamma_i` is a positive g-root for all eight k-simple roots.
pub fn in_w1(w: &WeylElement) -> bool {
    let d = datum();
    let inv = w.inverse();
    d.k_simple.iter().all(|g| d.is_positive_root(&inv.apply_euclid(g)))
}

pub fn enumerate_w1() -> Vec<CosetRep> {
    let d = datum();
    let rho = d.rho.euclid();
    let mut seen: HashSet<Vec8> = HashSet::new();
    let id = WeylElement::identity(Flavor::G);
    seen.insert(rho);
    let mut all = vec![id.clone()];
    let mut level = vec![id];
    while !level.is_empty() {
        // smallest word per new element at the next length
        let mut next: BTreeMap<Vec<u8>, WeylElement> = BTreeMap::new();
        let mut best: BTreeMap<Vec8, Vec<u8>> = BTreeMap::new();
        for w in &level {
            for l in 1..=8u8 {
                let cand = w.compose(&WeylElement::reflection(Flavor::G, l));
                let key = cand.apply_euclid(&rho);
                if seen.contains(&key) || !in_w1(&cand) {
                    continue;
                }
                match best.get(&key) {
                    Some(prev) if prev <= &cand.word => {}
                    _ => {
                        if let Some(prev) = best.insert(key, cand.word.clone()) {
                            next.remove(&prev);
                        }
                        next.insert(cand.word.clone(), cand);
                    }
                }
            }
        }
        seen.extend(best.into_keys());
        level = next.into_values().collect();
        all.extend(level.iter().cloned());
    }
    assert_eq!(all.len(), 120, "W^1 must have 120 elements");

    let rho_c = d.rho_c.to(Basis::Omega);
    all.into_iter()
        .enumerate()
        .map(|(index, element)| {
            let rho_j = Weight::new(element.apply_euclid(&rho), Basis::Euclidean).to(Basis::Omega);
            let rho_n = rho_j.minus(&rho_c);
            // noncompact roots that are positive for w(Delta^+)
            let inv = element.inverse();
            let half_sum = d.noncompact.iter().fold(zero8(), |acc, r| {
                if d.is_positive_root(&inv.apply_euclid(&r.euclid)) {
                    add(&acc, &r.euclid)
                } else {
                    sub(&acc, &r.euclid)
                }
            });
            let half_sum = Weight::new(scale(&half_sum, qr(1, 2)), Basis::Euclidean).to(Basis::Omega);
            assert_eq!(half_sum, rho_n, "rho_n two ways at j={index}");
            let rho_i = to_ints(rho_j.coords()).expect("rho^(j) integral in omega");
            let rho_n_i = to_ints(rho_n.coords()).expect("rho_n^(j) integral in omega");
            let mut vertex = rho_n_i.map(|x| 2 * x);
            dominantize_k_ints(&mut vertex);
            CosetRep {
                index,
                element,
                rho: rho_i,
                rho_n: rho_n_i,
                vertex,
            }
        })
        .collect()
}

static W_ONE: Lazy<Vec<CosetRep>> = Lazy::new(enumerate_w1);

/// Shared canonical W^1 list.
pub fn w_one() -> &'static [CosetRep] {
    &W_ONE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Weight;

    fn omega(v: [i64; 8]) -> Weight {
        Weight::from_ints(v, Basis::Omega)
    }

    #[test]
    fn reflections_are_involutions() {
        for l in 1..=8 {
            for f in [Flavor::G, Flavor::K] {
                let s = WeylElement::reflection(f, l);
                assert!(s.compose(&s).is_identity());
            }
        }
    }

    #[test]
    fn reflect_beta_in_alpha8() {
        let d = datum();
        let s8 = WeylElement::reflection(Flavor::G, 8);
        let alpha8 = Weight::new(d.g_simple[7], Basis::Euclidean);
        let pairing = d.beta.inner(&alpha8);
        let expected = d.beta.minus(&alpha8.scaled(pairing));
        assert_eq!(s8.apply(&d.beta), expected);
        assert_eq!(s8.apply(&d.beta).euclid(), d.k_simple[7]);
    }

    #[test]
    fn identity_fixes_rho() {
        let d = datum();
        assert_eq!(WeylElement::identity(Flavor::G).apply(&d.rho), d.rho);
    }

    #[test]
    fn longest_k_element_is_minus_one() {
        let rc = datum().rho_c.to(Basis::Omega);
        let neg = rc.scaled(q(-1));
        let (dom, w) = dominantize_k(&neg);
        assert_eq!(dom, rc);
        assert_eq!(w.matrix(), &std::array::from_fn(|i| std::array::from_fn(|j| if i == j { q(-1) } else { q(0) })));
        assert_eq!(w.word().len(), 64);
    }

    #[test]
    fn already_dominant() {
        let x = omega([1, 0, 2, 0, 0, 3, 0, 1]);
        let (dom, w) = dominantize_k(&x);
        assert_eq!(dom, x);
        assert!(w.is_identity());
        let (dom, w) = dominantize_g(&datum().rho);
        assert_eq!(dom, datum().rho);
        assert!(w.is_identity());
    }

    #[test]
    fn dominantize_reports_its_element() {
        let x = omega([3, -5, 2, 1, -1, 0, 4, -7]);
        let (dom, w) = dominantize_k(&x);
        assert_eq!(w.apply(&x), dom);
        assert!(dom.coords().iter().all(|c| !c.is_negative()));
        let (dom_g, wg) = dominantize_g(&x);
        assert_eq!(wg.apply(&x), dom_g);
        assert!(dom_g.to(Basis::Zeta).coords().iter().all(|c| !c.is_negative()));
    }

    #[test]
    fn w1_basic() {
        let w1 = w_one();
        assert_eq!(w1.len(), 120);
        assert!(w1[0].element.is_identity());
        let d = datum();
        assert_eq!(w1[0].rho_n_weight(), d.rho.minus(&d.rho_c).to(Basis::Omega));
        assert_eq!(w1[0].rho_n, [0, 0, 0, 0, 0, 0, 0, 28]);
        let distinct: HashSet<[i64; 8]> = w1.iter().map(|c| c.rho).collect();
        assert_eq!(distinct.len(), 120);
        for c in w1 {
            assert!(c.rho.iter().all(|&x| x > 0));
            assert!(in_w1(&c.element));
            let (dom, winv) = dominantize_g(&c.rho_weight());
            assert_eq!(dom.to(Basis::Zeta), d.rho.to(Basis::Zeta));
            assert_eq!(winv.compose(&c.element), WeylElement::identity(Flavor::G));
            assert_eq!(c.element.apply(&d.rho).to(Basis::Omega), c.rho_weight());
        }
        for pair in w1[1..].windows(2) {
            let (a, b) = (pair[0].element.word(), pair[1].element.word());
            assert!((a.len(), a) < (b.len(), b));
        }
    }

    #[test]
    fn chamber_and_dual_cone_criteria_agree() {
        for c in w_one() {
            let k_dominant = c.rho.iter().all(|&x| x > 0);
            assert_eq!(k_dominant, in_w1(&c.element));
        }
    }

    #[test]
    fn symbolic_patterns() {
        let lam = Weight::from_ints([1, 2, 3, 4, 5, 6, 7, 8], Basis::Zeta);
        let images: Vec<Weight> = w_one().iter().map(|c| c.element.apply(&lam).to(Basis::Omega)).collect();
        assert_eq!(images[0], omega([1, 2, 3, 4, 5, 6, 7, 130]));
        let (a, b, c, d, e, f, g, h) = (1, 2, 3, 4, 5, 6, 7, 8);
        let target = omega([f, b, e, d, c, a, b + c + 2 * d + 2 * e + 2 * f + 2 * g + h, h]);
        assert!(images.contains(&target));
    }

    #[test]
    fn kostant_factorization_of_random_words() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = datum();
        let reps = w_one();
        for _ in 0..1000 {
            let len = rng.gen_range(0..60);
            let word: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=8)).collect();
            let w = WeylElement::from_word(Flavor::G, &word);
            let (dom, wk) = dominantize_k(&w.apply(&d.rho.to(Basis::Omega)));
            let hits: Vec<&CosetRep> = reps.iter().filter(|r| r.rho_weight() == dom).collect();
            assert_eq!(hits.len(), 1, "{word:?}");
            assert_eq!(wk.compose(&w), hits[0].element);
        }
    }

    fn arb_omega() -> impl proptest::strategy::Strategy<Value = Weight> {
        use proptest::prelude::*;
        proptest::array::uniform8(-12i64..12).prop_map(omega)
    }

    proptest::proptest! {
        #[test]
        fn dominantize_k_is_idempotent_and_invariant(x in arb_omega(), word in proptest::collection::vec(1u8..=8, 0..20)) {
            let (dom, w) = dominantize_k(&x);
            proptest::prop_assert_eq!(w.apply(&x), dom.clone());
            proptest::prop_assert_eq!(dominantize_k(&dom).0, dom.clone());
            let y = WeylElement::from_word(Flavor::K, &word).apply(&x);
            proptest::prop_assert_eq!(dominantize_k(&y).0, dom);
        }

        #[test]
        fn dominantize_g_is_idempotent_and_invariant(x in arb_omega(), word in proptest::collection::vec(1u8..=8, 0..20)) {
            let (dom, w) = dominantize_g(&x);
            proptest::prop_assert_eq!(w.apply(&x), dom.clone());
            proptest::prop_assert_eq!(dominantize_g(&dom).0, dom.clone());
            let y = WeylElement::from_word(Flavor::G, &word).apply(&x);
            proptest::prop_assert!(conjugate_under_wg(&x, &y));
        }

        #[test]
        fn integer_dominantization_matches(x in proptest::array::uniform8(-12i64..12)) {
            let mut c = x;
            dominantize_k_ints(&mut c);
            proptest::prop_assert_eq!(omega(c), dominantize_k(&omega(x)).0);
        }
    }
}
