use std::collections::BTreeMap;

use comodcontra::coalg::{check_coalgebra, Side};
use comodcontra::comod::check_comodule;
use comodcontra::contramod::check_contramodule;
use comodcontra::exactlin::{Field, Matrix};
use comodcontra::gen;
use comodcontra::protower::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::brute_artin_rees;

fn zp(p: u64, depth: usize) -> GroupTower {
    builtin_tower(TowerKind::Zp, p, depth, Twist::Identity).unwrap()
}

fn cyclic(p: u64, e: usize) -> PCModule {
    PCModule::from_invariants(p, 0, &[e])
}

fn free(p: u64, s: usize) -> PCModule {
    PCModule::from_invariants(p, s, &[])
}

// ---- towers and levels ----

#[test]
fn zp_tower_levels_are_cyclic_of_prime_power_order() {
    let t = zp(2, 3);
    let orders: Vec<usize> = t.levels.iter().map(|g| g.order()).collect();
    assert_eq!(orders, vec![1, 2, 4, 8]);
    assert!(check_tower(&t).is_ok());
    for n in 1..=3 {
        assert!(check_inclusion(&t, n).unwrap().is_ok(), "level {n}");
        assert!(check_coalgebra(&level_coalgebra(&t, n).unwrap()).is_ok());
    }
}

#[test]
fn twisted_towers_pass_the_tower_checks() {
    let inv = builtin_tower(TowerKind::Zp, 3, 2, Twist::Inversion).unwrap();
    assert!(check_tower(&inv).is_ok());
    let swap = builtin_tower(TowerKind::Zp2, 2, 2, Twist::Swap).unwrap();
    assert_eq!(swap.levels[2].order(), 16);
    assert!(check_tower(&swap).is_ok());
    assert!(builtin_tower(TowerKind::Zp, 2, 3, Twist::Swap).is_err());
}

#[test]
fn oversized_levels_are_refused() {
    assert!(builtin_tower(TowerKind::Zp, 2, 7, Twist::Identity).is_err());
    assert!(builtin_tower(TowerKind::Zp2, 3, 2, Twist::Identity).is_err());
}

#[test]
fn inclusion_transposes_to_the_group_algebra_surjection() {
    // The dual of δ_h ↦ Σ_{s(g)=h} δ_g is g ↦ s(g), an algebra map k[Z/8] → k[Z/4].
    let t = zp(2, 3);
    let f = t.field();
    let incl = level_inclusion(&t, 2, 3).unwrap();
    let proj = incl.transpose();
    for g in 0..8 {
        let col = proj.col(g);
        assert_eq!(col.nnz(), 1);
        assert!(!col.is_zero_at(t.surjections[2][g], 0));
    }
    let lo = iwasawa_truncation(&t, 2).unwrap().algebra;
    let hi = iwasawa_truncation(&t, 3).unwrap().algebra;
    for a in 0..8 {
        for b in 0..8 {
            let ea = Matrix::from_fn(f, 8, 1, |i, _| i64::from(i == a));
            let eb = Matrix::from_fn(f, 8, 1, |i, _| i64::from(i == b));
            let lhs = proj.mul(&hi.mult.matrix.mul(&ea.kron(&eb)));
            let rhs = lo.mult.matrix.mul(&proj.mul(&ea).kron(&proj.mul(&eb)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn level_structures_satisfy_their_axioms() {
    let t = zp(3, 2);
    for m in [TModule::jordan(3, &[1, 3]), TModule::jordan(3, &[9]), TModule::jordan(3, &[2, 2, 5])] {
        let c = level_contramodule(&t, 2, &m).unwrap();
        assert!(check_contramodule(&c).is_ok());
        assert_eq!(contramodule_to_tmodule(&t, 2, &c).unwrap(), m);
        for side in [Side::Left, Side::Right] {
            assert!(check_comodule(&level_comodule(&t, 2, &m, side).unwrap()).is_ok());
        }
    }
    assert!(level_contramodule(&t, 1, &TModule::jordan(3, &[4])).is_err());
}

#[test]
fn level_regular_module_is_cyclic_of_full_length() {
    let t = zp(2, 3);
    for n in 0..=3 {
        let c = level_regular(&t, n).unwrap();
        assert_eq!(c.jordan_type(), vec![1 << n]);
    }
}

// ---- Smith form ----

#[test]
fn smith_of_a_single_power() {
    let s = smith_form(&cyclic(2, 3));
    assert_eq!(s.summary(), SmithSummary { free_rank: 0, exponents: vec![3] });
}

#[test]
fn smith_of_a_two_by_two_agrees_with_truncation_ranks() {
    // [[t, 1], [0, t]]: the oracle is the Jordan type of M / t^8 M from ranks of t^j.
    let m = PCModule::from_coefficients(2, &[vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]).unwrap();
    let s = smith_form(&m);
    assert!(verify_smith(&m, &s));
    let oracle = TModule::truncate(&m, 8).module.jordan_type();
    assert_eq!(s.exponents, oracle);
    assert_eq!(s.free_rank, 0);
}

#[test]
fn smith_counts_free_rank() {
    let m = PCModule::from_coefficients(3, &[vec![vec![0, 0, 1]], vec![vec![]], vec![vec![0, 2]]]).unwrap();
    let s = smith_form(&m);
    assert!(verify_smith(&m, &s));
    assert_eq!(s.free_rank, 2);
    assert_eq!(s.exponents, vec![1]);
}

#[test]
fn smith_agrees_with_truncation_on_random_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let p = [2, 3][rng.random_range(0..2)];
        let m = gen::pcmodule(p, 3, 3, false, 6, &mut rng);
        let s = smith_form(&m);
        assert!(verify_smith(&m, &s), "{m:?}");
        // Past the largest exponent, M/t^L M = (R/t^L)^a ⊕ torsion.
        let l = s.max_exponent() + 2;
        let mut want = s.exponents.clone();
        want.extend(std::iter::repeat_n(l, s.free_rank));
        assert_eq!(TModule::truncate(&m, l).module.jordan_type(), want, "{m:?}");
    }
}

// ---- finite-length modules ----

#[test]
fn jordan_type_survives_a_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let m = gen::tmodule(3, 7, 4, &mut rng);
        let j = TModule::jordan(3, &m.jordan_type());
        let iso = j.find_iso(&m, 1).expect("same Jordan type");
        assert!(j.is_morphism(&m, &iso));
    }
}

#[test]
fn from_presentation_refuses_free_parts() {
    assert!(TModule::from_presentation(&free(2, 1)).is_err());
    assert_eq!(TModule::from_presentation(&cyclic(2, 3)).unwrap().jordan_type(), vec![3]);
}

// ---- Hom over dense subrings ----

/// Counts all `t`-commuting matrices over `F_2` by enumeration.
fn brute_hom_count(p: &TModule, q: &TModule) -> usize {
    let f = Field::fp(2);
    let n = p.dim() * q.dim();
    (0u64..1 << n)
        .filter(|bits| {
            let x = Matrix::from_fn(f, q.dim(), p.dim(), |r, c| ((bits >> (r * p.dim() + c)) & 1) as i64);
            p.is_morphism(q, &x)
        })
        .count()
}

#[test]
fn dense_subring_homs_on_the_basic_examples() {
    let r2 = TModule::jordan(2, &[2]);
    let h = dense_subring_hom_check(&r2, &r2).unwrap();
    assert!(h.passes());
    assert_eq!((h.dim_polynomial, h.dim_laurent, h.dim_contra), (2, 2, 2));

    let h = dense_subring_hom_check(&TModule::jordan(2, &[1]), &TModule::jordan(2, &[3])).unwrap();
    assert!(h.passes());
    assert_eq!(h.dim_contra, 1);

    let h = dense_subring_hom_check(&TModule::zero(2), &r2).unwrap();
    assert!(h.passes());
    assert_eq!(h.dim_contra, 0);
}

#[test]
fn dense_subring_hom_dims_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..12 {
        let a = gen::tmodule(2, 3, 3, &mut rng);
        let b = gen::tmodule(2, 4, 4, &mut rng);
        let h = dense_subring_hom_check(&a, &b).unwrap();
        assert!(h.passes());
        assert_eq!(1usize << h.dim_polynomial, brute_hom_count(&a, &b));
    }
}

// ---- contratensor ----

#[test]
fn contratensor_with_the_residue_field_is_coinvariants() {
    let n = TModule::jordan(2, &[3, 1]);
    let c = contratensor_comparison(&n, &TModule::jordan(2, &[1])).unwrap();
    assert!(c.passes());
    assert_eq!(c.dim_contratensor, n.top_dim());
    assert_eq!(c.dim_module_tensor, c.dim_next_level);
}

#[test]
fn contratensor_with_zero_is_zero() {
    let c = contratensor_comparison(&TModule::zero(3), &TModule::jordan(3, &[2])).unwrap();
    assert!(c.passes());
    assert_eq!(c.dim_contratensor, 0);
}

#[test]
fn contratensor_of_truncated_free_modules() {
    // R/t^a ⊗ R/t^b = R/t^{min(a,b)}.
    for (a, b) in [(2, 4), (4, 3), (1, 1)] {
        let c = contratensor_comparison(&TModule::jordan(2, &[a]), &TModule::jordan(2, &[b])).unwrap();
        assert!(c.passes());
        assert_eq!(c.dim_contratensor, a.min(b));
    }
}

// ---- Nakayama ----

#[test]
fn nakayama_on_cyclic_and_free_modules() {
    for m in [free(2, 1), cyclic(2, 4), free(3, 2).direct_sum(&cyclic(3, 1))] {
        let r = nakayama_check(&m).unwrap();
        assert!(r.passes() && r.agrees_with_smith(), "{m:?}");
    }
    assert!(nakayama_check(&PCModule::from_coefficients(2, &[vec![vec![1]]]).unwrap()).is_err());
}

#[test]
fn nakayama_agrees_with_smith_on_random_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let m = gen::pcmodule(3, 3, 2, false, 6, &mut rng);
        if m.is_zero() {
            continue;
        }
        let r = nakayama_check(&m).unwrap();
        assert!(r.passes() && r.agrees_with_smith(), "{m:?}");
    }
}

// ---- Artin–Rees ----

fn sub(p: u64, gens: &[Vec<Vec<i64>>]) -> SubmoduleGens {
    gens.iter().map(|g| g.iter().map(|c| Poly::new(p, c)).collect()).collect()
}

#[test]
fn artin_rees_for_t_squared_in_r() {
    let ar = artin_rees_number(&free(2, 1), &sub(2, &[vec![vec![0, 0, 1]]]), 10).unwrap();
    assert_eq!(ar.m, 2);
    assert_eq!(ar.certificates.len(), 11);
    assert!(ar.certificates.iter().all(|c| c.lhs.same_span(&c.rhs)));
}

#[test]
fn artin_rees_for_the_whole_module_is_zero() {
    let ar = artin_rees_number(&free(3, 2), &sub(3, &[vec![vec![1], vec![]], vec![vec![], vec![1]]]), 6).unwrap();
    assert_eq!(ar.m, 0);
}

#[test]
fn artin_rees_matches_a_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA5);
    let mut compared = 0;
    for _ in 0..30 {
        let m = gen::pcmodule(2, 2, 2, false, 4, &mut rng);
        let k = rng.random_range(1..=2);
        let gens: SubmoduleGens = (0..k).map(|_| (0..m.generators()).map(|_| gen::poly(2, 2, &mut rng)).collect()).collect();
        let Some(want) = brute_artin_rees(&m, &gens, 8) else { continue };
        let got = artin_rees_number(&m, &gens, 8).unwrap();
        assert_eq!(got.m, want, "{m:?} {gens:?}");
        compared += 1;
    }
    assert!(compared >= 20);
}

// ---- injective extension ----

#[test]
fn extension_from_t_r_mod_t3_into_level_two() {
    // M = R/t^3, N = tM, f : N → C_2 sends t to the socle-adjacent element t·δ.
    let tower = zp(2, 4);
    let m = cyclic(2, 3);
    let n = sub(2, &[vec![vec![0, 1]]]);
    let c2 = level_regular(&tower, 2).unwrap();
    // A vector of C_2 killed by t^2, so that f is well defined on N ≅ R/t^2.
    let target = c2.t().pow(2).nullspace().col(0);
    let e = injective_extension(&tower, 2, &m, &n, &target).unwrap();
    assert!(e.restricts && e.t_linear);
    assert!(tower.modulus(e.target_level) as usize >= e.truncation);
}

#[test]
fn extension_refuses_ill_defined_maps() {
    // N = tM ≅ R/t^2; a generator image not killed by t^2 does not define a map.
    let tower = zp(2, 4);
    let c2 = level_regular(&tower, 2).unwrap();
    let f = c2.field();
    let t2 = c2.t().pow(2);
    let bad = (0..4).map(|i| Matrix::from_fn(f, 4, 1, |r, _| i64::from(r == i))).find(|v| !t2.mul(v).is_zero()).unwrap();
    let err = injective_extension(&tower, 2, &cyclic(2, 3), &sub(2, &[vec![vec![0, 1]]]), &bad);
    assert!(matches!(err, Err(comodcontra::Error::Precondition(_))));
}

#[test]
fn extensions_exist_for_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let tower = zp(2, 5);
    let c1 = level_regular(&tower, 1).unwrap();
    let f = c1.field();
    let mut nonzero = 0;
    for _ in 0..20 {
        let m = gen::pcmodule(2, 2, 2, false, 3, &mut rng);
        let gens: SubmoduleGens = vec![(0..m.generators()).map(|_| gen::poly(2, 2, &mut rng)).collect()];
        let v = gen::matrix(f, c1.dim(), 1, &mut rng);
        // Multiplying by powers of t eventually kills any annihilator obstruction.
        for j in 0..=2 {
            let fv = c1.t().pow(j).mul(&v);
            match injective_extension(&tower, 1, &m, &gens, &fv) {
                Ok(e) => {
                    assert!(e.restricts && e.t_linear, "{m:?} {gens:?}");
                    nonzero += usize::from(!fv.is_zero());
                    break;
                }
                Err(comodcontra::Error::Precondition(_)) => continue,
                Err(other) => panic!("{other:?}"),
            }
        }
    }
    assert!(nonzero >= 5);
}

// ---- flatness ----

#[test]
fn flatness_of_r_mod_t2_with_three_variables() {
    let r = flatness_comparison(&cyclic(2, 2), 3, 4, &ShortExact::standard(2)).unwrap();
    assert!(r.passes());
    for l in &r.levels {
        assert_eq!(l.dim_tensor, 3 * l.n.min(2));
    }
}

#[test]
fn flatness_on_random_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..8 {
        let m = gen::pcmodule(3, 2, 2, false, 4, &mut rng);
        assert!(flatness_comparison(&m, 2, 4, &ShortExact::standard(3)).unwrap().passes(), "{m:?}");
    }
}

// ---- graded ring ----

#[test]
fn graded_ring_of_cyclic_levels() {
    let t = zp(2, 2);
    let r1 = graded_ring_check(&t, 1).unwrap();
    assert!(r1.passes());
    assert_eq!(r1.hilbert, vec![1, 1]);
    let r2 = graded_ring_check(&t, 2).unwrap();
    assert!(r2.passes());
    assert_eq!(r2.hilbert, vec![1, 1, 1, 1]);
}

#[test]
fn graded_ring_of_the_square_tower() {
    let t = builtin_tower(TowerKind::Zp2, 2, 2, Twist::Identity).unwrap();
    let r = graded_ring_check(&t, 1).unwrap();
    assert!(r.passes());
    assert_eq!(r.generators, 2);
    assert_eq!(r.hilbert, vec![1, 2, 1]);
    assert!(graded_ring_check(&t, 2).unwrap().passes());
}

// ---- derived functors ----

fn types(pairs: &[(i32, &[usize])]) -> BTreeMap<i32, Vec<usize>> {
    pairs.iter().map(|(i, t)| (*i, t.to_vec())).collect()
}

#[test]
fn rpsi_of_the_residue_field_sits_in_degree_one() {
    let r = rpsi_module(&TModule::jordan(2, &[1]), 5).unwrap();
    assert_eq!(r.complex.homology_types(), types(&[(1, &[1])]));
}

#[test]
fn rpsi_of_finite_length_modules_is_a_shift() {
    for blocks in [vec![3], vec![1, 2], vec![4, 4]] {
        let m = TModule::jordan(2, &blocks);
        let r = rpsi_module(&m, 5).unwrap();
        assert_eq!(r.complex.homology_types(), types(&[(1, &blocks)]));
    }
    assert!(rpsi_module(&TModule::zero(3), 3).unwrap().complex.homology_types().is_empty());
}

#[test]
fn lphi_of_finite_length_modules_sits_in_degree_minus_one() {
    let l = lphi_iwasawa(&cyclic(2, 1), 5).unwrap();
    assert_eq!(l.homology, types(&[(-1, &[1])]));
    assert_eq!(l.euler_characteristic, 0);
    for e in 1..=4 {
        let l = lphi_iwasawa(&cyclic(2, e), 5).unwrap();
        assert_eq!(l.homology, types(&[(-1, &[e])]));
        assert_eq!(l.support(), vec![-1]);
    }
}

#[test]
fn lphi_of_the_free_module_is_divisible_in_degree_zero() {
    let l = lphi_iwasawa(&free(3, 1), 3).unwrap();
    assert_eq!(l.divisible_rank, 1);
    assert_eq!(l.euler_characteristic, 1);
    assert!(l.homology.is_empty());
    assert_eq!(l.support(), vec![0]);
}

#[test]
fn lphi_routes_agree_on_finite_length_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..10 {
        let pm = gen::pcmodule(2, 2, 2, true, 4, &mut rng);
        let smith = lphi_iwasawa(&pm, 5).unwrap();
        let m = TModule::from_presentation(&pm).unwrap();
        let cone = lphi_iwasawa_complex(&LevelComplex::concentrated(&m, 0), 5).unwrap();
        assert_eq!(smith.homology, cone.complex.homology_types(), "{pm:?}");
    }
}

#[test]
fn round_trips_return_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let pm = gen::pcmodule(2, 2, 2, true, 4, &mut rng);
        let rt = round_trip_contra(&pm, 5).unwrap();
        assert!(rt.holds(), "{pm:?}: {rt:?}");
        let m = gen::tmodule(2, 5, 4, &mut rng);
        let rt = round_trip_comod(&m, 5).unwrap();
        assert!(rt.holds(), "{m:?}: {rt:?}");
    }
}

#[test]
fn level_complexes_convert_to_decorated_complexes() {
    let m = TModule::jordan(3, &[2, 1]);
    let x = LevelComplex::concentrated(&m, 2);
    let c = x.to_complex().unwrap();
    let back = LevelComplex::from_complex(&c).unwrap();
    assert_eq!(back.homology_types(), x.homology_types());
}
