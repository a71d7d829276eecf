//! Comodules, contramodules, the contratensor product and its Hom adjunction.

use comodcontra::coalg::{Coalgebra, Side};
use comodcontra::comod::check_comodule;
use comodcontra::contramod::{adjunction_check, check_contramodule, contratensor};
use comodcontra::exactlin::{Field, VecSpace};
use comodcontra::gen;
use comodcontra::group::FiniteGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = Coalgebra::group_function(&FiniteGroup::cyclic(4), Field::fp(2));
    let n = gen::comodule(&c, Side::Right, 3, &mut rng);
    let p = gen::contramodule(&c, 3, &mut rng);
    println!("right comodule N, dim {}: {:?}", n.dim(), check_comodule(&n));
    println!("contramodule P, dim {}: {:?}", p.dim(), check_contramodule(&p));

    let (space, _) = contratensor(&n, &p).unwrap();
    println!("N ⊙ P has dim {}", space.dim());

    let v = VecSpace::named(c.field(), "v", 2);
    match adjunction_check(&n, &p, &v).unwrap() {
        Ok(rep) => println!("Hom(N ⊙ P, V) ≅ Hom(P, Hom(N, V)): {} = {}", rep.lhs_dim, rep.rhs_dim),
        Err(w) => println!("adjunction fails: {w}"),
    }
}
