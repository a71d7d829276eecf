//! The finite semialgebra k(G) ⊗ over k(H) for S_3 ⊃ Z/3: Ψ_G, Φ_G, their
//! adjunction on a family of representations, and the equivalence check.

use comodcontra::exactlin::Field;
use comodcontra::group::FiniteGroup;
use comodcontra::smoothg::{finite_sandbox, rep_family, sandbox_adjunction, sandbox_equivalence};

fn main() {
    let g = FiniteGroup::symmetric(3);
    let sb = finite_sandbox(&g, &[0, 2, 5], Field::fp(2)).unwrap();
    println!("semialgebra dim {}", sb.semialgebra.dim());

    let fam = rep_family(&g, Field::fp(2), 4, 7);
    for (i, p) in fam.iter().enumerate() {
        for (j, m) in fam.iter().enumerate() {
            match sandbox_adjunction(&sb, p, m) {
                Ok(a) => println!("Hom(Φ P{i}, M{j}) = {} = Hom(P{i}, Ψ M{j})", a.lhs_dim),
                Err(e) => println!("P{i}, M{j}: {e}"),
            }
        }
    }
    let eq = sandbox_equivalence(&sb, &fam).unwrap();
    println!("unit isos {}, counit isos {}, failures {:?}", eq.unit_isos, eq.counit_isos, eq.failures);
}
