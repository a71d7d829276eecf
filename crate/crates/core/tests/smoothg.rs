use std::collections::BTreeMap;

use comodcontra::coalg::{check_coalgebra, Coalgebra, Side};
use comodcontra::comod::check_comodule;
use comodcontra::contramod::check_contramodule;
use comodcontra::error::Error;
use comodcontra::exactlin::{Field, Matrix};
use comodcontra::group::FiniteGroup;
use comodcontra::protower::{builtin_tower, GroupTower, TModule, TowerKind, Twist};
use comodcontra::smoothg::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tower(p: u64, depth: usize, twist: Twist) -> GroupTower {
    builtin_tower(TowerKind::Zp, p, depth, twist).unwrap()
}

fn descriptor(p: u64, depth: usize, twist: Twist, w: usize) -> GDescriptor {
    build_g(&tower(p, depth, twist), w).unwrap()
}

fn sandbox(g: &FiniteGroup, h: &[usize], p: u64) -> Sandbox {
    finite_sandbox(g, h, Field::fp(p)).unwrap()
}

/// Elements of the cyclic subgroup generated by the first element of order `k`.
fn cyclic_subgroup(g: &FiniteGroup, k: usize) -> Vec<usize> {
    let x = (0..g.order()).find(|&x| g.element_order(x) == k).unwrap();
    g.generated_subgroup(&[x])
}

/// `m(Σ v_ab δ_a ⊗ δ_b)` summed over a transversal of maximal representatives.
fn semimult_max_transversal(g: &FiniteGroup, h: &[usize], v: &Matrix) -> Matrix {
    let n = g.order();
    let f = v.field();
    let rep = |a: usize| h.iter().map(|&y| g.mul(a, y)).max().unwrap();
    let mut out = Matrix::zeros(f, n, v.cols());
    for c in 0..v.cols() {
        for a in (0..n).filter(|&a| rep(a) == a) {
            for b in 0..n {
                let x = v.get(a * n + b, c);
                out.add_at(g.mul(a, b), c, &x);
            }
        }
    }
    out
}

// ---- conventions ----

#[test]
fn rep_conversions_satisfy_the_module_axioms() {
    let g = FiniteGroup::symmetric(3);
    let f = Field::fp(3);
    let c = Coalgebra::group_function(&g, f);
    for (i, r) in rep_family(&g, f, 6, 11).iter().enumerate() {
        assert!(r.check(&g).is_ok(), "rep {i}");
        assert!(check_comodule(&r.comodule(&g, &c)).is_ok(), "left comodule {i}");
        assert!(check_comodule(&r.right_comodule(&g, &c)).is_ok(), "right comodule {i}");
        let pc = r.contramodule(&g, &c);
        assert!(check_contramodule(&pc).is_ok(), "contramodule {i}");
        assert_eq!(contramodule_rep(&g, &pc), *r);
        assert_eq!(comodule_rep(&g, &r.comodule(&g, &c)), *r);
    }
}

// ---- semialgebras ----

#[test]
fn trivial_semialgebra_passes() {
    let g = FiniteGroup::dihedral(4);
    let c = Coalgebra::group_function(&g, Field::fp(2));
    assert!(check_coalgebra(&c).is_ok());
    assert!(check_semialgebra(&Semialgebra::trivial(&c)).is_ok());
}

#[test]
fn sandbox_with_whole_group_has_identity_semiunit() {
    let g = FiniteGroup::symmetric(3);
    let all: Vec<usize> = (0..g.order()).collect();
    let sb = sandbox(&g, &all, 2);
    assert!(check_semialgebra(&sb.semialgebra).is_ok());
    assert!(sb.semialgebra.semiunit.is_identity());
}

#[test]
fn z4_over_z2_sandbox() {
    let g = FiniteGroup::cyclic(4);
    let h = cyclic_subgroup(&g, 2);
    let sb = sandbox(&g, &h, 2);
    assert_eq!(sb.semialgebra.dim(), 4);
    assert_eq!(sb.semialgebra.coalgebra.dim(), 2);
    assert!(check_semialgebra(&sb.semialgebra).is_ok());
}

#[test]
fn sandboxes_pass_and_cotensor_has_orbit_dimension() {
    let cases = [
        (FiniteGroup::symmetric(3), 3, 2),
        (FiniteGroup::symmetric(3), 2, 3),
        (FiniteGroup::dihedral(4), 4, 2),
        (FiniteGroup::quaternion8(), 4, 3),
        (FiniteGroup::alternating4(), 3, 2),
    ];
    for (g, k, p) in cases {
        let h = cyclic_subgroup(&g, k);
        let sb = sandbox(&g, &h, p);
        let s = &sb.semialgebra;
        assert!(check_semialgebra(s).is_ok(), "{} ⊃ Z/{k} over F_{p}", g.name);
        // H acts freely on G × G by (a, b) ↦ (ah, h⁻¹b).
        assert_eq!(s.cotensor.cols(), g.order() * g.order() / h.len());
        assert_eq!(s.semimult.mul(&Matrix::identity(s.field(), s.cotensor.cols())), s.semimult);
        let oracle = semimult_max_transversal(&g, &h, &s.cotensor);
        assert_eq!(s.semimult, oracle, "transversal independence for {}", g.name);
    }
}

#[test]
fn semimult_mutations_are_detected() {
    for (g, k, p) in [(FiniteGroup::cyclic(4), 2, 2), (FiniteGroup::symmetric(3), 3, 2)] {
        let h = cyclic_subgroup(&g, k);
        let report = semimult_mutations(&sandbox(&g, &h, p).semialgebra);
        assert!(report.mutations > 0);
        assert_eq!(report.detected, report.mutations, "{}", g.name);
    }
}

// ---- Ψ_G and Φ_G on finite groups ----

#[test]
fn psi_g_is_evaluation_at_identity() {
    let g = FiniteGroup::symmetric(3);
    let sb = sandbox(&g, &cyclic_subgroup(&g, 3), 2);
    let n = g.order();
    let e = g.identity();
    for m in rep_family(&g, Field::fp(2), 5, 3) {
        let psi = sandbox_psi_g(&sb, &m);
        assert_eq!(psi.rep.dim, m.dim);
        let rows: Vec<usize> = (0..m.dim).map(|r| r * n + e).collect();
        let ev = psi.basis.select_rows(&rows);
        assert!(ev.inverse().is_some());
        for x in 0..n {
            assert_eq!(ev.mul(&psi.rep.action[x]), m.action[x].mul(&ev));
        }
    }
}

#[test]
fn phi_g_is_inclusion_at_identity() {
    let g = FiniteGroup::dihedral(4);
    let sb = sandbox(&g, &cyclic_subgroup(&g, 2), 3);
    let e = g.identity();
    for p in rep_family(&g, Field::fp(3), 5, 4) {
        let phi = sandbox_phi_g(&sb, &p);
        assert_eq!(phi.rep.dim, p.dim);
        let cols: Vec<usize> = (0..p.dim).map(|s| e * p.dim + s).collect();
        let inc = phi.projection.select_cols(&cols);
        assert!(inc.inverse().is_some());
        for x in 0..g.order() {
            assert_eq!(inc.mul(&p.action[x]), phi.rep.action[x].mul(&inc));
        }
    }
}

#[test]
fn restriction_diagrams_commute() {
    for (g, k, p) in [(FiniteGroup::symmetric(3), 3, 2), (FiniteGroup::symmetric(3), 2, 2), (FiniteGroup::dihedral(4), 2, 3)] {
        let sb = sandbox(&g, &cyclic_subgroup(&g, k), p);
        for m in rep_family(&g, Field::fp(p), 4, 9) {
            assert!(psi_restriction_check(&sb, &m).unwrap().is_ok(), "Ψ on {}", g.name);
            assert!(phi_restriction_check(&sb, &m).unwrap().is_ok(), "Φ on {}", g.name);
        }
    }
}

#[test]
fn sandbox_adjunction_holds() {
    let g = FiniteGroup::cyclic(4);
    let sb = sandbox(&g, &cyclic_subgroup(&g, 2), 2);
    let fam = rep_family(&g, Field::fp(2), 4, 5);
    for p in &fam {
        for m in &fam {
            let adj = sandbox_adjunction(&sb, p, m).unwrap();
            assert_eq!(adj.lhs_dim, adj.rhs_dim);
            // Hom_G(P, M) computed directly.
            assert_eq!(adj.lhs_dim, p.hom(m).len());
        }
    }
}

#[test]
fn sandbox_equivalence_coprime_and_not() {
    let g = FiniteGroup::symmetric(3);
    let h = cyclic_subgroup(&g, 3);
    let coprime = sandbox_equivalence(&sandbox(&g, &h, 2), &rep_family(&g, Field::fp(2), 8, 1)).unwrap();
    assert!(coprime.coprime);
    assert!(coprime.passes(), "{:?}", coprime.failures);
    assert_eq!(coprime.unit_isos, 8);
    let modular = sandbox_equivalence(&sandbox(&g, &h, 3), &rep_family(&g, Field::fp(3), 8, 1)).unwrap();
    assert!(!modular.coprime);
    assert!(modular.passes(), "{:?}", modular.failures);
}

// ---- contratensor over G ----

#[test]
fn inverse_orientation_matches_tensor_product() {
    for (g, p) in [(FiniteGroup::cyclic(4), 2), (FiniteGroup::symmetric(3), 3), (FiniteGroup::dihedral(4), 3)] {
        let fam = rep_family(&g, Field::fp(p), 4, 2);
        for n in &fam {
            for q in &fam {
                let r = contratensor_g_comparison(&g, n, q, Orientation::Inverse);
                assert!(r.passes(), "{} {:?}", g.name, r);
            }
        }
    }
}

#[test]
fn literal_orientation_breaks_on_elements_of_order_four() {
    let g = FiniteGroup::cyclic(4);
    let reg = GRep::regular(&g, Field::fp(2));
    let r = contratensor_g_comparison(&g, &reg, &reg, Orientation::Literal);
    assert!(!r.passes());
    // In exponent 2 the two orientations coincide.
    let v = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let reg = GRep::regular(&v, Field::fp(2));
    assert!(contratensor_g_comparison(&v, &reg, &reg, Orientation::Literal).passes());
}

// ---- G = Z_p ⋊ Z ----

#[test]
fn descriptor_relation_and_commutativity() {
    let d = descriptor(2, 3, Twist::Identity, 2);
    assert!(d.relation_holds);
    assert!(!d.nonabelian);
    let d = descriptor(3, 2, Twist::Inversion, 2);
    assert!(d.relation_holds);
    assert!(d.nonabelian);
    let (g, _) = d.finite_model(1).unwrap();
    assert_eq!(g.order(), 6);
    assert!(!g.is_abelian());
    assert_eq!(Window::symmetric(2).product(&Window::symmetric(1)), Window::symmetric(3));
}

#[test]
fn finite_models_are_sandboxes() {
    for twist in [Twist::Identity, Twist::Inversion] {
        let d = descriptor(3, 2, twist, 1);
        for n in 1..=2 {
            assert!(check_semialgebra(&d.sandbox(n).unwrap().semialgebra).is_ok(), "{twist:?} level {n}");
        }
    }
}

#[test]
fn t_algebra_windows_are_twisted_modules() {
    for twist in [Twist::Identity, Twist::Inversion] {
        let d = descriptor(3, 2, twist, 1);
        for n in 1..=2 {
            assert!(TAlgebra::new(&d, n).check().unwrap().is_ok());
        }
    }
    let d = descriptor(3, 2, Twist::Inversion, 1);
    let t = GContramodule::t_window(&d, 2).unwrap();
    // Inversion does not commute with 1 + t, so γ = 1 on the same base is rejected.
    let bad = Matrix::identity(d.field(), t.base.dim());
    assert!(check_twisted(&d, &t.base, &bad, t.shape).unwrap().is_err());
}

#[test]
fn psi_of_s_window_is_t_window_and_back() {
    for (p, twist) in [(2, Twist::Identity), (3, Twist::Identity), (3, Twist::Inversion)] {
        let d = descriptor(p, 2, twist, 1);
        for n in 1..=2 {
            let s = SmoothGModule::s_window(&d, n).unwrap();
            let t = GContramodule::t_window(&d, n).unwrap();
            let psi = psi_g(&d, &s, 4).unwrap();
            assert!(t_gamma_iso((&psi.base, &psi.gamma), (&t.base, &t.gamma)).is_some(), "Ψ p={p} {twist:?} n={n}");
            let phi = phi_g(&d, &t, 4).unwrap();
            assert!(t_gamma_iso((&phi.base, &phi.gamma), (&s.base, &s.gamma)).is_some(), "Φ p={p} {twist:?} n={n}");
        }
    }
}

#[test]
fn underived_functors_vanish_on_the_trivial_object() {
    let d = descriptor(2, 3, Twist::Identity, 1);
    assert_eq!(phi_g(&d, &GContramodule::trivial(2), 4).unwrap().base.dim(), 0);
    assert_eq!(psi_g(&d, &SmoothGModule::trivial(2), 4).unwrap().base.dim(), 0);
}

#[test]
fn flags_of_windows_and_trivial_objects() {
    let d = descriptor(3, 2, Twist::Inversion, 1);
    let s = weakly_compact_flags(&d, &GObject::Smooth(SmoothGModule::s_window(&d, 2).unwrap())).unwrap();
    assert!(s.weakly_compactly_injective && s.semiprojective);
    let t = weakly_compact_flags(&d, &GObject::Contra(GContramodule::t_window(&d, 2).unwrap())).unwrap();
    assert!(t.weakly_compactly_projective && t.semiinjective);
    let k = weakly_compact_flags(&d, &GObject::Smooth(SmoothGModule::trivial(3))).unwrap();
    assert!(!k.weakly_compactly_injective && !k.semiprojective);
    let k = weakly_compact_flags(&d, &GObject::Contra(GContramodule::trivial(3))).unwrap();
    assert!(!k.weakly_compactly_projective && !k.semiinjective);
}

#[test]
fn underived_equivalence_on_flagged_objects() {
    let d = descriptor(3, 2, Twist::Inversion, 1);
    let s = GObject::Smooth(SmoothGModule::s_window(&d, 2).unwrap());
    assert!(underived_equivalence_check(&d, &s, 4).unwrap().is_ok());
    let t = GObject::Contra(GContramodule::t_window(&d, 2).unwrap());
    assert!(underived_equivalence_check(&d, &t, 4).unwrap().is_ok());
    let k = GObject::Smooth(SmoothGModule::trivial(3));
    assert!(matches!(underived_equivalence_check(&d, &k, 4), Err(Error::Precondition(_))));
}

#[test]
fn ext_and_tor_vanish_on_windows() {
    let d = descriptor(2, 3, Twist::Identity, 1);
    let objs = [
        GObject::Smooth(SmoothGModule::s_window(&d, 2).unwrap()),
        GObject::Contra(GContramodule::t_window(&d, 2).unwrap()),
        GObject::Contra(GContramodule::free_untwisted(&d, 2, 2).unwrap()),
    ];
    for o in &objs {
        let table = ext_tor_vanishing(&d, o, 3).unwrap();
        assert_eq!(table.values.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(table.vanishes(), "{}: {:?}", table.functor, table.trace);
        assert!(!table.trace.is_empty());
    }
}

// ---- derived functors ----

#[test]
fn derived_functors_of_the_trivial_object() {
    let d = descriptor(2, 4, Twist::Identity, 2);
    let l = derived_phi_g(&d, &GContramodule::trivial(2), 2, 4).unwrap();
    assert_eq!(l.homology.types(), BTreeMap::from([(-1, vec![1])]));
    assert_eq!(l.koszul_agrees, Some(true));
    assert!(l.holds());
    let r = derived_psi_g(&d, &SmoothGModule::trivial(2), 2, 4).unwrap();
    assert_eq!(r.homology.types(), BTreeMap::from([(1, vec![1])]));
    assert!(r.holds());
    let k = koszul_phi(&d, &GContramodule::trivial(2), 2, 4).unwrap();
    assert!(k.iso(&l.homology));
}

#[test]
fn derived_round_trip_on_seeded_finite_length_objects() {
    let d = descriptor(2, 4, Twist::Identity, 2);
    let f = d.field();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..12 {
        let parts: Vec<usize> = (0..rng.random_range(1..=2)).map(|_| rng.random_range(1..=3)).collect();
        let base = TModule::jordan(2, &parts);
        let gamma = find_invertible(&base.hom_basis(&base), f, rng.random()).unwrap();
        let obj = if i % 2 == 0 {
            GObject::Contra(GContramodule::new(&d, base, gamma, Shape::FiniteLength).unwrap())
        } else {
            GObject::Smooth(SmoothGModule::new(&d, base, gamma, Shape::FiniteLength).unwrap())
        };
        let out = derived_equivalence_g(&d, &obj, 2, 4).unwrap();
        assert!(out.holds(), "object {i}: {:?}", out.homology.types());
    }
}

#[test]
fn derived_functors_reject_twists() {
    let d = descriptor(3, 2, Twist::Inversion, 1);
    assert!(matches!(derived_phi_g(&d, &GContramodule::trivial(3), 2, 2), Err(Error::Unsupported(_))));
}

#[test]
fn contratensor_over_g_on_windows() {
    for twist in [Twist::Identity, Twist::Inversion] {
        let d = descriptor(3, 2, twist, 1);
        let s = SmoothGModule::s_window(&d, 1).unwrap();
        let t = GContramodule::t_window(&d, 1).unwrap();
        let r = contratensor_gt_comparison(&d, &s, &t, Orientation::Inverse).unwrap();
        assert!(r.passes(), "{twist:?} {r:?}");
        let r = contratensor_gt_comparison(&d, &SmoothGModule::trivial(3), &GContramodule::trivial(3), Orientation::Inverse).unwrap();
        assert!(r.passes());
        assert_eq!(r.tensor_dim, 1);
    }
}

#[test]
fn side_conventions_round_trip_through_coefficients() {
    let g = FiniteGroup::cyclic(3);
    let c = Coalgebra::group_function(&g, Field::fp(2));
    let reg = GRep::regular(&g, Field::fp(2));
    let right = reg.right_comodule(&g, &c);
    assert_eq!(right.side(), Side::Right);
}

#[test]
fn level_freeness_agrees_with_comodule_injectivity() {
    use comodcontra::comod::is_injective;
    use comodcontra::protower::level_comodule;
    let d = descriptor(2, 2, Twist::Identity, 1);
    for parts in [vec![1], vec![2], vec![4], vec![4, 4], vec![4, 2], vec![2, 2, 1]] {
        let m = TModule::jordan(2, &parts);
        for level in 2..=2 {
            let c = level_comodule(&d.tower, level, &m, Side::Left).unwrap();
            assert_eq!(level_free(&d, &m, level), is_injective(&c).unwrap(), "{parts:?} at level {level}");
        }
    }
}
