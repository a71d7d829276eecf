//! Axiom checks on group and path coalgebras, and the witness a broken
//! comultiplication produces.

use comodcontra::coalg::{check_algebra, check_coalgebra, dual_algebra, Coalgebra};
use comodcontra::exactlin::Field;
use comodcontra::group::FiniteGroup;

fn main() {
    let s3 = Coalgebra::group_function(&FiniteGroup::symmetric(3), Field::fp(2));
    println!("k(S_3) over F_2, dim {}: {:?}", s3.dim(), check_coalgebra(&s3));

    let path = Coalgebra::path_coalgebra(Field::fp(3), 3, &[(0, 1), (1, 2)]).unwrap();
    println!("path coalgebra of 0 → 1 → 2, dim {}: {:?}", path.dim(), check_coalgebra(&path));

    let mut delta = s3.comult().matrix.clone();
    delta.add_int_at(1, 0, 1);
    let broken = Coalgebra::new("broken", s3.space().clone(), delta, s3.counit().matrix.clone()).unwrap();
    match check_coalgebra(&broken) {
        Ok(()) => println!("mutant is still a coalgebra"),
        Err(w) => println!("mutant rejected: {w}"),
    }
    let dual = dual_algebra(&broken).map(|a| check_algebra(&a).is_ok());
    println!("dual algebra of the mutant is an algebra: {dual:?}");
}
