use comodcontra::coalg::{
    check_algebra, check_coalgebra, cogenerator_space, cosemisimple_decomposition, dual_algebra,
    group_function_coalgebra, is_coalgebra_morphism, is_conilpotent, Coalgebra, Semisimplicity,
};
use comodcontra::exactlin::{Field, LinMap, Matrix};
use comodcontra::group::{small_groups, FiniteGroup};
use comodcontra::Error;

fn kg(g: &FiniteGroup, p: u64) -> Coalgebra {
    group_function_coalgebra(g, Field::fp(p))
}

/// Minimal generator count of a finite abelian p-group, computed from its
/// table: `dim_{F_p}(G / G^p)` via the size of the p-th power subgroup.
fn minimal_generators(g: &FiniteGroup, p: usize) -> usize {
    let pth: Vec<usize> = (0..g.order())
        .map(|a| (1..p).fold(a, |x, _| g.mul(x, a)))
        .collect();
    let sub = g.generated_subgroup(&pth);
    let mut quotient = g.order() / sub.len();
    let mut d = 0;
    while quotient > 1 {
        quotient /= p;
        d += 1;
    }
    d
}

#[test]
fn group_coalgebra_of_z2_over_f3_passes() {
    assert!(check_coalgebra(&kg(&FiniteGroup::cyclic(2), 3)).is_ok());
}

#[test]
fn flipped_comultiplication_entry_names_coassociativity() {
    let c = kg(&FiniteGroup::cyclic(2), 3);
    let mut d = c.comult().matrix.clone();
    // Δ(δ0) gains a δ1 ⊗ δ0 term.
    d.add_int_at(2, 0, 1);
    let bad = Coalgebra::new("bad", c.space().clone(), d, c.counit().matrix.clone()).unwrap();
    let w = check_coalgebra(&bad).unwrap_err();
    assert_eq!(w.axiom, "coassociativity");
}

#[test]
fn dual_of_z2_functions_is_group_algebra() {
    let f = Field::fp(3);
    let g = FiniteGroup::cyclic(2);
    let a = dual_algebra(&kg(&g, 3)).unwrap();
    assert!(check_algebra(&a).is_ok());
    // Group algebra k[Z/2] built directly: e_a e_b = e_{a+b}.
    let mut m = Matrix::zeros(f, 2, 4);
    for x in 0..2 {
        for y in 0..2 {
            m.set_int(g.mul(x, y), x * 2 + y, 1);
        }
    }
    assert_eq!(a.mult.matrix, m);
    assert_eq!(a.unit.matrix, Matrix::from_rows(f, &[vec![1], vec![0]]));
}

#[test]
fn dual_of_inclusion_is_algebra_surjection() {
    // k(Z/2) ⊂ k(Z/4): functions constant on cosets of {0, 2}.
    let f = Field::fp(2);
    let c4 = kg(&FiniteGroup::cyclic(4), 2);
    let c2 = kg(&FiniteGroup::cyclic(2), 2);
    let incl = Matrix::from_rows(f, &[vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]]);
    let i = LinMap::from_parts(c2.space(), c4.space(), incl.clone());
    assert!(is_coalgebra_morphism(&c2, &c4, &i).is_ok());
    let a4 = dual_algebra(&c4).unwrap();
    let a2 = dual_algebra(&c2).unwrap();
    let s = incl.transpose();
    assert_eq!(s.rank(), 2);
    assert_eq!(s.mul(&a4.mult.matrix), a2.mult.matrix.mul(&s.kron(&s)));
    assert_eq!(s.mul(&a4.unit.matrix), a2.unit.matrix);
}

#[test]
fn group_coalgebra_examples() {
    let trivial = kg(&FiniteGroup::cyclic(1), 5);
    assert_eq!(trivial.dim(), 1);
    let z2 = kg(&FiniteGroup::cyclic(2), 2);
    assert!(z2.coaugmentation().is_some());
    assert_eq!(is_conilpotent(&z2).unwrap().dims.len(), 2);
    let z3 = kg(&FiniteGroup::cyclic(3), 2);
    assert!(z3.coaugmentation().is_none());
    assert!(!is_conilpotent(&z3).unwrap().conilpotent);
}

#[test]
fn filtration_of_cyclic_p_group_has_length_p() {
    for p in [2u64, 3, 5, 7] {
        let c = kg(&FiniteGroup::cyclic(p as usize), p);
        let r = is_conilpotent(&c).unwrap();
        assert!(r.conilpotent);
        assert_eq!(r.dims, (1..=p as usize).collect::<Vec<_>>());
    }
}

#[test]
fn cogenerators_count_generators() {
    assert_eq!(cogenerator_space(&kg(&FiniteGroup::cyclic(4), 2)).unwrap().0.dim(), 1);
    let v4 = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    assert_eq!(cogenerator_space(&kg(&v4, 2)).unwrap().0.dim(), 2);
    assert_eq!(cogenerator_space(&kg(&FiniteGroup::cyclic(3), 2)).unwrap_err(), Error::NotConilpotent);
}

#[test]
fn abelian_p_groups_up_to_16() {
    for p in [2usize, 3] {
        for g in small_groups(16) {
            let n = g.order();
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            if m != 1 || !g.is_abelian() {
                continue;
            }
            let c = kg(&g, p as u64);
            assert!(is_conilpotent(&c).unwrap().conilpotent, "{}", g.name);
            assert_eq!(cogenerator_space(&c).unwrap().0.dim(), minimal_generators(&g, p), "{}", g.name);
        }
    }
}

#[test]
fn cosemisimple_examples() {
    match cosemisimple_decomposition(&kg(&FiniteGroup::cyclic(3), 2)).unwrap() {
        Semisimplicity::Semisimple(irr) => {
            let mut dims: Vec<usize> = irr.iter().map(|i| i.dim).collect();
            dims.sort();
            assert_eq!(dims, vec![1, 2]);
        }
        other => panic!("{other:?}"),
    }
    match cosemisimple_decomposition(&kg(&FiniteGroup::cyclic(2), 2)).unwrap() {
        Semisimplicity::NotSemisimple(w) => assert_eq!(w.ambient.dim(), 2),
        other => panic!("{other:?}"),
    }
    match cosemisimple_decomposition(&Coalgebra::ground(Field::fp(2))).unwrap() {
        Semisimplicity::Semisimple(irr) => assert_eq!((irr.len(), irr[0].dim), (1, 1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn coprime_orders_are_cosemisimple() {
    for g in small_groups(12) {
        for p in [2u64, 3, 5, 7] {
            if g.order() as u64 % p == 0 {
                continue;
            }
            let r = cosemisimple_decomposition(&kg(&g, p)).unwrap();
            let Semisimplicity::Semisimple(irr) = r else { panic!("{} over F_{p}", g.name) };
            // Each simple I with endomorphism field E occurs dim I / dim E times in C.
            let total: usize = irr.iter().map(|i| i.dim * i.multiplicity).sum();
            assert_eq!(total, g.order(), "{} over F_{p}", g.name);
        }
    }
}

#[test]
fn single_entry_mutations_of_z2_over_f3() {
    // Oracle by hand: changing the δ1⊗δ1 coefficient of Δ(δ0) or Δ(δ1) changes
    // only x² in the dual algebra k⟨1, x⟩, giving k[x]/(x² - c x - a), which is
    // still associative and unital. Every other single-entry change breaks coassociativity.
    let c = kg(&FiniteGroup::cyclic(2), 3);
    for row in 0..4 {
        for col in 0..2 {
            for v in [1, 2] {
                let mut d = c.comult().matrix.clone();
                d.add_int_at(row, col, v);
                let m = Coalgebra::new("m", c.space().clone(), d, c.counit().matrix.clone()).unwrap();
                match check_coalgebra(&m) {
                    Ok(()) => assert_eq!(row, 3, "entry ({row},{col}) += {v} went undetected"),
                    Err(w) => {
                        assert_ne!(row, 3);
                        assert_eq!(w.axiom, "coassociativity");
                    }
                }
            }
        }
    }
}
