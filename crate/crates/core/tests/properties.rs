//! Structural invariants as property tests. Random objects come from the
//! library generators driven by a proptest-chosen seed, so shrinking acts on
//! the seed and the size bounds.

use comodcontra::coalg::{check_algebra, check_coalgebra, check_module, dual_algebra, Coalgebra, Side};
use comodcontra::comod::{check_comodule, cofree_right, cotensor};
use comodcontra::contramod::{adjunction_check, check_contramodule, contramodule_as_module};
use comodcontra::corr::{phi_psi_unit_counit, Object};
use comodcontra::exactlin::{Field, VecSpace};
use comodcontra::gen;
use comodcontra::group::FiniteGroup;
use comodcontra::protower::{artin_rees_number, contratensor_comparison, dense_subring_hom_check, lphi_iwasawa, TModule};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

/// `dim Hom_{k[t]}(⊕ k[t]/t^a, ⊕ k[t]/t^b) = Σ min(a, b)`, which is also the dimension of the tensor product.
fn min_pairs(a: &[usize], b: &[usize]) -> usize {
    a.iter().flat_map(|x| b.iter().map(move |y| (*x).min(*y))).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(seed: u64, p in prime(), r in 1usize..6, c in 1usize..6) {
        let m = gen::matrix(Field::fp(p), r, c, &mut rng(seed));
        let k = m.nullspace();
        prop_assert_eq!(m.rank() + k.cols(), c);
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(seed: u64, p in prime(), n in 1usize..6) {
        let m = gen::matrix(Field::fp(p), n, n, &mut rng(seed));
        match m.inverse() {
            Some(i) => prop_assert!(i.mul(&m).is_identity() && m.mul(&i).is_identity()),
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn group_coalgebras_and_generated_objects_satisfy_the_axioms(seed: u64) {
        let mut r = rng(seed);
        let (_, c) = gen::group_coalgebra(8, &[2, 3], &mut r);
        prop_assert!(check_coalgebra(&c).is_ok());
        prop_assert!(check_algebra(&dual_algebra(&c).unwrap()).is_ok());
        for side in [Side::Left, Side::Right] {
            let m = gen::comodule(&c, side, 4, &mut r);
            prop_assert!(check_comodule(&m).is_ok());
            prop_assert!(check_module(&m.as_module().unwrap()).is_ok());
        }
        let q = gen::contramodule(&c, 4, &mut r);
        prop_assert!(check_contramodule(&q).is_ok());
        prop_assert!(check_module(&contramodule_as_module(&q).unwrap()).is_ok());
    }

    #[test]
    fn coalgebra_checker_agrees_with_dual_algebra(seed: u64, i in 0usize..64, j in 0usize..64) {
        let mut r = rng(seed);
        let (_, c) = gen::group_coalgebra(6, &[2, 3], &mut r);
        let mut d = c.comult().matrix.clone();
        d.add_int_at(i % d.rows(), j % d.cols(), 1);
        let x = Coalgebra::new("m", c.space().clone(), d, c.counit().matrix.clone()).unwrap();
        let dual = dual_algebra(&x).map(|a| check_algebra(&a).is_ok()).unwrap_or(false);
        prop_assert_eq!(check_coalgebra(&x).is_ok(), dual);
    }

    #[test]
    fn contratensor_hom_adjunction(seed: u64, w in 1usize..4) {
        let mut r = rng(seed);
        let (_, c) = gen::group_coalgebra(6, &[2, 3], &mut r);
        let n = gen::comodule(&c, Side::Right, 3, &mut r);
        let p = gen::contramodule(&c, 3, &mut r);
        let rep = adjunction_check(&n, &p, &VecSpace::named(c.field(), "v", w)).unwrap();
        prop_assert!(rep.is_ok(), "{:?}", rep);
        let rep = rep.unwrap();
        prop_assert_eq!(rep.lhs_dim, rep.rhs_dim);
    }

    #[test]
    fn cotensor_with_the_coalgebra_is_the_identity(seed: u64) {
        let mut r = rng(seed);
        let (_, c) = gen::group_coalgebra(6, &[2, 3], &mut r);
        let m = gen::comodule(&c, Side::Left, 3, &mut r);
        let cr = cofree_right(&c, &VecSpace::named(c.field(), "k", 1)).unwrap();
        let (sp, _) = cotensor(&cr, &m).unwrap();
        prop_assert_eq!(sp.dim(), m.dim());
    }

    #[test]
    fn coprime_correspondence_unit_and_counit(seed: u64, n in 1usize..8, p in prime()) {
        prop_assume!(n as u64 % p != 0);
        let c = Coalgebra::group_function(&FiniteGroup::cyclic(n), Field::fp(p));
        let mut r = rng(seed);
        let m = gen::comodule(&c, Side::Left, 3, &mut r);
        prop_assert!(phi_psi_unit_counit(&Object::Comodule(m)).unwrap().is_ok());
        let q = gen::contramodule(&c, 3, &mut r);
        prop_assert!(phi_psi_unit_counit(&Object::Contramodule(q)).unwrap().is_ok());
    }

    #[test]
    fn hom_and_tensor_dimensions_over_truncations(p in prime(), a in prop::collection::vec(1usize..5, 1..4), b in prop::collection::vec(1usize..5, 1..4)) {
        let (ma, mb) = (TModule::jordan(p, &a), TModule::jordan(p, &b));
        prop_assert_eq!(ma.hom_basis(&mb).len(), min_pairs(&a, &b));
        let h = dense_subring_hom_check(&ma, &mb).unwrap();
        prop_assert!(h.passes());
        prop_assert_eq!(h.dim_polynomial, min_pairs(&a, &b));
        let t = contratensor_comparison(&ma, &mb).unwrap();
        prop_assert!(t.passes());
        prop_assert_eq!(t.dim_module_tensor, min_pairs(&a, &b));
    }

    #[test]
    fn jordan_type_is_recovered(p in prime(), a in prop::collection::vec(1usize..6, 0..4)) {
        let mut want = a.clone();
        want.sort();
        let mut got = TModule::jordan(p, &a).jordan_type();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn finite_length_iwasawa_complex_is_two_term(seed: u64) {
        let pm = gen::pcmodule(2, 2, 2, true, 3, &mut rng(seed));
        let l = lphi_iwasawa(&pm, 4).unwrap();
        prop_assert_eq!(l.euler_characteristic, 0);
        prop_assert!(l.support().iter().all(|d| (-1..=0).contains(d)));
    }

    #[test]
    fn artin_rees_certificates_hold(seed: u64) {
        let mut r = rng(seed);
        let m = gen::pcmodule(2, 2, 2, false, 3, &mut r);
        let sub = vec![(0..m.generators()).map(|_| gen::poly(2, 2, &mut r)).collect()];
        let ar = artin_rees_number(&m, &sub, 6).unwrap();
        prop_assert!(ar.m <= ar.bound);
        prop_assert!(ar.certificates.iter().all(|c| c.lhs.same_span(&c.rhs)));
    }
}

