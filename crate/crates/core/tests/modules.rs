use comodcontra::coalg::{
    check_module, cosemisimple_decomposition, group_function_coalgebra, Coalgebra, Semisimplicity, Side,
};
use comodcontra::comod::{
    check_comodule, cofree, cofree_right, comodule_hom, cotensor, injective_coresolution, Comodule,
};
use comodcontra::contramod::{
    adjunction_check, check_contramodule, contra_from_dual, contra_hom, contramodule_as_module, contratensor,
    free_contra, is_projective, module_hom_via_dual, projective_resolution, Contramodule,
};
use comodcontra::corr::{
    derived_phi, derived_psi, homological_dimension, phi, phi_psi_unit_counit, psi, HomologicalDimension, Object,
};
use comodcontra::exactlin::{Field, LinMap, Matrix, VecSpace};
use comodcontra::gen;
use comodcontra::group::FiniteGroup;
use comodcontra::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kg(n: usize, p: u64) -> Coalgebra {
    group_function_coalgebra(&FiniteGroup::cyclic(n), Field::fp(p))
}

fn arrow() -> Coalgebra {
    Coalgebra::path_coalgebra(Field::fp(2), 2, &[(0, 1)]).unwrap()
}

fn space(c: &Coalgebra, d: usize) -> VecSpace {
    VecSpace::named(c.field(), "v", d)
}

/// Left simple comodules of a cosemisimple coalgebra with their endomorphism dimensions.
fn simples(c: &Coalgebra) -> Vec<(Comodule, usize)> {
    match cosemisimple_decomposition(c).unwrap() {
        Semisimplicity::Semisimple(irr) => irr.into_iter().map(|i| (i.comodule, i.endomorphism_dim)).collect(),
        other => panic!("{other:?}"),
    }
}

/// Over a cocommutative coalgebra the same coefficients define a right comodule.
fn to_right(m: &Comodule) -> Comodule {
    Comodule::from_coefficients(m.coalgebra(), m.space().clone(), Side::Right, &m.coefficients())
}

#[test]
fn cofree_hom_matches_linear_hom() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for c in [kg(2, 2), kg(3, 2), arrow()] {
        for _ in 0..10 {
            let m = gen::comodule(&c, Side::Left, 5, &mut rng);
            for d in 1..3 {
                let cof = cofree(&c, &space(&c, d)).unwrap();
                assert!(check_comodule(&cof).is_ok());
                assert_eq!(cof.dim(), c.dim() * d);
                assert_eq!(comodule_hom(&m, &cof).unwrap().1.len(), m.dim() * d);
            }
        }
    }
}

#[test]
fn comodule_hom_examples() {
    let c = kg(2, 2);
    let reg = Comodule::regular(&c, Side::Left);
    assert_eq!(comodule_hom(&reg, &reg).unwrap().1.len(), 2);
    let k = Comodule::trivial(&c, &VecSpace::ground(c.field()), Side::Left).unwrap();
    assert_eq!(comodule_hom(&k, &reg).unwrap().1.len(), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = gen::comodule(&c, Side::Left, 4, &mut rng);
    let homs = comodule_hom(&m, &m).unwrap().1;
    let id = Matrix::identity(c.field(), m.dim());
    let cols: Vec<Matrix> = homs.iter().map(comodule_hom_vec).collect();
    let sys = Matrix::from_columns(c.field(), m.dim() * m.dim(), &cols);
    assert!(sys.solve(&comodule_hom_vec(&LinMap::from_parts(m.space(), m.space(), id))).is_some());
}

fn comodule_hom_vec(f: &LinMap) -> Matrix {
    comodcontra::exactlin::hom_vec(f)
}

#[test]
fn cotensor_with_regular_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in [kg(2, 2), kg(3, 2), arrow()] {
        for _ in 0..8 {
            let m = gen::comodule(&c, Side::Left, 5, &mut rng);
            let (s, incl) = cotensor(&Comodule::regular(&c, Side::Right), &m).unwrap();
            assert_eq!(s.dim(), m.dim());
            // ν_M lands in C □ M and is injective, hence an isomorphism onto it.
            let nu = LinMap::from_parts(m.space(), &incl.codomain, m.coaction().matrix.clone());
            assert!(comodcontra::exactlin::factor_through_injection(&nu, &incl).unwrap().is_iso());
            let n = gen::comodule(&c, Side::Right, 5, &mut rng);
            assert_eq!(cotensor(&n, &Comodule::regular(&c, Side::Left)).unwrap().0.dim(), n.dim());
        }
    }
}

#[test]
fn cotensor_over_cosemisimple_matches_isotypic_formula() {
    let c = kg(3, 2);
    let irr = simples(&c);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        // Multiplicities of each simple in N (right) and M (left).
        let mn: Vec<usize> = irr.iter().map(|_| rand::Rng::random_range(&mut rng, 0..3)).collect();
        let mm: Vec<usize> = irr.iter().map(|_| rand::Rng::random_range(&mut rng, 0..3)).collect();
        let mut n = Comodule::zero(&c, Side::Right);
        let mut m = Comodule::zero(&c, Side::Left);
        for (k, (s, _)) in irr.iter().enumerate() {
            for _ in 0..mn[k] {
                n = n.direct_sum(&to_right(s)).unwrap();
            }
            for _ in 0..mm[k] {
                m = m.direct_sum(s).unwrap();
            }
        }
        // dim N_α · dim M_α / dim I_α.
        let formula: usize = irr.iter().enumerate().map(|(k, (s, _))| mn[k] * mm[k] * s.dim()).sum();
        assert_eq!(cotensor(&n, &m).unwrap().0.dim(), formula);
    }
}

#[test]
fn coresolution_examples() {
    let c = kg(2, 2);
    let cof = cofree(&c, &space(&c, 3)).unwrap();
    assert_eq!(injective_coresolution(&cof, 4).unwrap().length, 0);
    let k = Comodule::trivial(&c, &VecSpace::ground(c.field()), Side::Left).unwrap();
    match injective_coresolution(&k, 5) {
        Err(Error::CapExceeded { cap: 5, last_dim }) => assert_eq!(last_dim, 1),
        other => panic!("{other:?}"),
    }
    let a = arrow();
    let lengths: Vec<usize> = comodcontra::corr::simple_comodules(&a)
        .unwrap()
        .iter()
        .map(|s| injective_coresolution(s, 4).unwrap().length)
        .collect();
    assert_eq!(lengths.iter().max(), Some(&1));
    assert!(lengths.contains(&0));
}

#[test]
fn coresolutions_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = arrow();
    for _ in 0..20 {
        let m = gen::comodule(&c, Side::Left, 6, &mut rng);
        let r = injective_coresolution(&m, 3).unwrap();
        assert!(r.length <= 1);
        // Rank bookkeeping: alternating sum of term dimensions equals dim M.
        let alt: i64 = r.terms.iter().enumerate().map(|(i, t)| if i % 2 == 0 { t.dim() as i64 } else { -(t.dim() as i64) }).sum();
        assert_eq!(alt, m.dim() as i64);
        assert!(r.augmentation.is_injective());
        for i in 1..=r.length as i32 {
            assert_eq!(comodcontra::homcx::homology(&r.complex, i).dim(), 0);
        }
    }
}

#[test]
fn cofree_is_injective_against_monomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for c in [kg(2, 2), arrow()] {
        let j = cofree(&c, &space(&c, 2)).unwrap();
        for _ in 0..10 {
            let big = gen::comodule(&c, Side::Left, 6, &mut rng);
            let b = comodcontra::comod::simple_subcomodule_basis(&big).unwrap();
            let (small, incl) = big.subcomodule(&b).unwrap();
            let (_, from_big) = comodule_hom(&big, &j).unwrap();
            let (_, from_small) = comodule_hom(&small, &j).unwrap();
            let restricted: Vec<Matrix> =
                from_big.iter().map(|h| comodule_hom_vec(&h.then_after(&incl))).collect();
            let r = Matrix::from_columns(c.field(), small.dim() * j.dim(), &restricted).rank();
            assert_eq!(r, from_small.len());
        }
    }
}

#[test]
fn contramodule_examples() {
    let c = kg(2, 2);
    let k = VecSpace::ground(c.field());
    let free = free_contra(&c, &k).unwrap();
    assert!(check_contramodule(&free).is_ok());
    assert_eq!(free_contra(&c, &space(&c, 3)).unwrap().dim(), 6);
    // Dual of the trivial right comodule is the trivial contramodule.
    let v = space(&c, 2);
    let triv = Comodule::trivial(&c, &k, Side::Right).unwrap();
    let d = contra_from_dual(&triv, &v).unwrap();
    assert_eq!(d.contraaction().matrix, Contramodule::trivial(&c, &v).unwrap().contraaction().matrix);
    // Free rank one is the regular module.
    let m = contramodule_as_module(&free).unwrap();
    assert!(check_module(&m).is_ok());
    let alg = comodcontra::coalg::dual_algebra(&c).unwrap();
    assert_eq!(m.action.matrix, alg.mult.matrix);
    // Trivial contramodule: φ acts by φ(γ(1)).
    let t = contramodule_as_module(&Contramodule::trivial(&c, &k).unwrap()).unwrap();
    let gamma = c.coaugmentation().unwrap();
    assert_eq!(t.action.matrix, gamma.matrix.transpose());
}

#[test]
fn free_contramodule_homs_match_linear_homs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in [kg(2, 2), kg(3, 2), arrow()] {
        for _ in 0..8 {
            let q = gen::contramodule(&c, 5, &mut rng);
            for d in 1..3 {
                let free = free_contra(&c, &space(&c, d)).unwrap();
                assert_eq!(contra_hom(&free, &q).unwrap().1.len(), d * q.dim());
            }
            let ok = contra_hom(&q, &q).unwrap().1;
            assert!(!ok.is_empty());
        }
    }
}

#[test]
fn contratensor_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for c in [kg(2, 2), arrow()] {
        for _ in 0..8 {
            let n = gen::comodule(&c, Side::Right, 4, &mut rng);
            let v = space(&c, 2);
            let (t, _) = contratensor(&n, &free_contra(&c, &v).unwrap()).unwrap();
            assert_eq!(t.dim(), n.dim() * 2);
            let p = gen::contramodule(&c, 4, &mut rng);
            assert_eq!(contratensor(&Comodule::zero(&c, Side::Right), &p).unwrap().0.dim(), 0);
        }
    }
    let g = Coalgebra::ground(Field::fp(3));
    let p = free_contra(&g, &space(&g, 3)).unwrap();
    assert_eq!(contratensor(&Comodule::regular(&g, Side::Right), &p).unwrap().0.dim(), 3);
}

#[test]
fn adjunction_examples() {
    let c = kg(2, 2);
    let v = space(&c, 2);
    let n = cofree_right(&c, &space(&c, 1)).unwrap();
    let r = adjunction_check(&n, &free_contra(&c, &space(&c, 2)).unwrap(), &v).unwrap().unwrap();
    assert_eq!((r.lhs_dim, r.rhs_dim), (n.dim() * 2 * 2, n.dim() * 2 * 2));
    let reg = Comodule::regular(&c, Side::Right);
    assert!(adjunction_check(&reg, &free_contra(&c, &VecSpace::ground(c.field())).unwrap(), &v).unwrap().is_ok());
    let g = Coalgebra::ground(Field::fp(5));
    let n = cofree_right(&g, &space(&g, 2)).unwrap();
    let p = free_contra(&g, &space(&g, 3)).unwrap();
    let r = adjunction_check(&n, &p, &space(&g, 2)).unwrap().unwrap();
    assert_eq!(r.lhs_dim, 2 * 3 * 2);
}

#[test]
fn contra_hom_agrees_with_module_homs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for c in [kg(2, 2), kg(3, 2), arrow(), kg(2, 3)] {
        for _ in 0..10 {
            let p = gen::contramodule(&c, 4, &mut rng);
            let q = gen::contramodule(&c, 4, &mut rng);
            assert_eq!(contra_hom(&p, &q).unwrap().1.len(), module_hom_via_dual(&p, &q).unwrap().len());
        }
    }
}

#[test]
fn cosemisimple_contra_hom_is_schur_count() {
    let c = kg(3, 2);
    let irr = simples(&c);
    let k = VecSpace::ground(c.field());
    let duals: Vec<Contramodule> = irr.iter().map(|(s, _)| contra_from_dual(&to_right(s), &k).unwrap()).collect();
    for (a, pa) in duals.iter().enumerate() {
        for (b, pb) in duals.iter().enumerate() {
            let expect = if a == b { irr[a].1 } else { 0 };
            assert_eq!(contra_hom(pa, pb).unwrap().1.len(), expect);
        }
    }
}

#[test]
fn exhaustive_small_contraactions() {
    // Every π on a 2-dimensional space over k(Z/2)/F_2: the axioms hold iff
    // the induced action is an associative unital module.
    let c = kg(2, 2);
    let f = c.field();
    let v = space(&c, 2);
    let mut passes = 0;
    for bits in 0u32..(1 << 8) {
        let pi = Matrix::from_fn(f, 2, 4, |i, j| ((bits >> (i * 4 + j)) & 1) as i64);
        let p = Contramodule::new(&c, v.clone(), pi).unwrap();
        let axioms = check_contramodule(&p).is_ok();
        let module = check_module(&contramodule_as_module(&p).unwrap()).is_ok();
        assert_eq!(axioms, module, "π bits {bits:08b}");
        passes += axioms as usize;
    }
    assert!(passes > 0);
}

#[test]
fn free_contramodules_are_projective() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for c in [kg(2, 2), arrow()] {
        let fr = free_contra(&c, &space(&c, 1)).unwrap();
        assert!(is_projective(&fr).unwrap());
        for _ in 0..8 {
            let q = gen::contramodule(&c, 5, &mut rng);
            let sub = comodcontra::contramod::generated_subcontramodule(&q, &gen::matrix(c.field(), q.dim(), 1, &mut rng));
            let (s, _) = q.subcontramodule(&sub).unwrap();
            let (quo, _) = q.quotient(&sub).unwrap();
            let h = |x: &Contramodule| contra_hom(&fr, x).unwrap().1.len();
            assert_eq!(h(&q), h(&s) + h(&quo));
        }
    }
}

#[test]
fn psi_phi_examples() {
    let c = kg(2, 2);
    let reg = Comodule::regular(&c, Side::Left);
    assert!(phi_psi_unit_counit(&Object::Comodule(reg)).unwrap().is_ok());
    let cof = cofree(&c, &space(&c, 3)).unwrap();
    assert!(phi_psi_unit_counit(&Object::Comodule(cof)).unwrap().is_ok());
    let free = free_contra(&c, &VecSpace::ground(c.field())).unwrap();
    assert!(phi_psi_unit_counit(&Object::Contramodule(free)).unwrap().is_ok());
    let k = Comodule::trivial(&c, &VecSpace::ground(c.field()), Side::Left).unwrap();
    assert!(matches!(phi_psi_unit_counit(&Object::Comodule(k)), Err(Error::Precondition(_))));
    // Over the ground field both functors are the identity on spaces.
    let g = Coalgebra::ground(Field::fp(3));
    let m = cofree(&g, &space(&g, 2)).unwrap();
    assert_eq!(psi(&m).unwrap().dim(), 2);
    assert_eq!(phi(&free_contra(&g, &space(&g, 2)).unwrap()).unwrap().dim(), 2);
}

#[test]
fn derived_functor_examples() {
    let c = kg(2, 2);
    let free = free_contra(&c, &space(&c, 2)).unwrap();
    let lp = derived_phi(&free, 3).unwrap();
    assert_eq!(lp.support(), Some((0, 0)));
    let triv = Contramodule::trivial(&c, &VecSpace::ground(c.field())).unwrap();
    assert!(matches!(projective_resolution(&triv, 4), Err(Error::CapExceeded { cap: 4, .. })));
    assert!(matches!(derived_phi(&triv, 4), Err(Error::CapExceeded { .. })));
    let a = arrow();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let p = gen::contramodule(&a, 5, &mut rng);
        let x = derived_phi(&p, 3).unwrap();
        assert!(x.degrees().iter().all(|&d| (-1..=0).contains(&d)));
        let m = gen::comodule(&a, Side::Left, 5, &mut rng);
        let y = derived_psi(&m, 3).unwrap();
        assert!(y.degrees().iter().all(|&d| (0..=1).contains(&d)));
    }
}

#[test]
fn homological_dimensions() {
    assert_eq!(homological_dimension(&kg(3, 2), 3).unwrap(), HomologicalDimension::Exactly(0));
    assert_eq!(homological_dimension(&arrow(), 3).unwrap(), HomologicalDimension::Exactly(1));
    assert_eq!(homological_dimension(&kg(2, 2), 3).unwrap(), HomologicalDimension::AtLeast(3));
    let a3 = Coalgebra::path_coalgebra(Field::fp(3), 3, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(homological_dimension(&a3, 4).unwrap(), HomologicalDimension::Exactly(1));
}
