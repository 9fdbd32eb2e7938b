use eix::dirac::{hp_integral, in_chamber, lambda_params, norm_sq_infchar, spin_norm, spin_norm_sq2, InfChar, KType};
use eix::hjsearch::{compute_omega, omega_window};
use eix::pencil::{membership, verify_membership};
use eix::rational::q;
use eix::rootdata::{datum, Basis};
use eix::weyl::{dominantize_k, w_one};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use std::collections::HashSet;

fn dominant() -> impl Strategy<Value = KType> {
    proptest::array::uniform8(0i64..9).prop_map(|c| KType::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn spin_norm_integer_form_agrees(mu in dominant()) {
        let r = spin_norm(&mu);
        prop_assert_eq!(q(spin_norm_sq2(mu.coords())), r.spin_norm_sq * q(2));
        prop_assert!(!r.minimizing_j.is_empty());
    }

    #[test]
    fn contributed_gammas_are_k_dominant_minimizers(mu in dominant()) {
        let r = spin_norm(&mu);
        let rho_c = &datum().rho_c;
        for g in &r.gammas {
            prop_assert_eq!(&dominantize_k(g).0, g);
            prop_assert_eq!(g.plus(rho_c).norm_sq(), r.spin_norm_sq);
        }
        for &j in &r.minimizing_j {
            let shifted = mu.weight().minus(&w_one()[j].rho_n_weight());
            prop_assert!(r.gammas.contains(&dominantize_k(&shifted).0.to(Basis::Omega)));
        }
    }

    #[test]
    fn lambda_a_lies_in_its_chambers(mu in dominant()) {
        let p = lambda_params(&mu);
        for &j in &p.js {
            prop_assert!(in_chamber(&p.lambda_a, j).unwrap());
        }
        prop_assert_eq!(p.lambda_a.norm_sq(), p.norm_sq);
    }

    #[test]
    fn membership_certificates_verify(mu in dominant()) {
        let m = membership(&mu);
        prop_assert!(verify_membership(&mu, &m));
    }
}

#[test]
fn omega_is_complete_under_sampling() {
    let omega: HashSet<InfChar> = compute_omega().into_iter().map(|e| e.lambda_char).collect();
    let (lo, hi) = omega_window();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut sampled = 0;
    while sampled < 10_000 {
        let v: [i64; 8] = std::array::from_fn(|_| rng.gen_range(0..6));
        let l = InfChar::from_ints(v).unwrap();
        if !hp_integral(&l) || omega.contains(&l) {
            continue;
        }
        sampled += 1;
        let n = norm_sq_infchar(&l);
        assert!(n < lo || n > hi, "{v:?} has norm {n} inside the window");
    }
}
