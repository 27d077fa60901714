mod common;

use proptest::prelude::*;

use common::*;
use surfrank_core::exactalg::{discriminant, rational_mod_p, squarefree_part, UniPoly};
use surfrank_core::factor::{factor_over_fp, factor_over_q, is_square_poly};

fn good_prime(f: &UniPoly, p: u64) -> bool {
    let disc = discriminant(f).unwrap();
    f.coeffs().iter().all(|c| rational_mod_p(c, p).is_some())
        && rational_mod_p(f.leading().unwrap(), p).is_some_and(|r| r != 0)
        && rational_mod_p(&disc, p).is_some_and(|r| r != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn factors_multiply_back(a in nonzero_poly_up_to(4), b in nonzero_poly_up_to(3)) {
        let f = &(&a * &b) * &a;
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        prop_assert!(fac.factors.iter().all(|(g, m)| g.is_monic() && g.deg() >= 1 && *m >= 1));
    }

    #[test]
    fn splitting_mod_p_only_refines(a in int_poly_up_to(6, 9), pi in 0usize..8) {
        prop_assume!(a.deg() >= 1);
        let f = squarefree_part(&a).unwrap();
        prop_assume!(f.deg() >= 2);
        let p = [3u64, 5, 7, 11, 13, 17, 19, 23][pi];
        prop_assume!(good_prime(&f, p));
        let over_q = factor_over_q(&f).unwrap().big_omega() as usize;
        let fp = factor_over_fp(&f, p).unwrap();
        let over_p: usize = fp.factors.iter().map(|(_, m)| *m as usize).sum();
        prop_assert!(over_p >= over_q);
    }

    #[test]
    fn factorization_of_products_merges(a in nonzero_poly_up_to(3), b in nonzero_poly_up_to(3)) {
        let fa = factor_over_q(&a).unwrap();
        let fb = factor_over_q(&b).unwrap();
        let fab = factor_over_q(&(&a * &b)).unwrap();
        prop_assert_eq!(fab.content.clone(), &fa.content * &fb.content);
        let mut merged: Vec<(UniPoly, u32)> = Vec::new();
        for (g, m) in fa.factors.iter().chain(&fb.factors) {
            match merged.iter_mut().find(|(h, _)| h == g) {
                Some(e) => e.1 += m,
                None => merged.push((g.clone(), *m)),
            }
        }
        prop_assert_eq!(merged.len(), fab.factors.len());
        for (g, m) in &merged {
            prop_assert!(fab.factors.contains(&(g.clone(), *m)));
        }
    }

    #[test]
    fn squares_are_detected(a in nonzero_poly_up_to(4), c in nonzero_rational()) {
        let sq = (&a * &a).scale(&(&c * &c));
        prop_assert_eq!(is_square_poly(&sq), 1);
    }
}
