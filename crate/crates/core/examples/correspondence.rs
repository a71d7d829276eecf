//! Φ and Ψ between comodules and contramodules over k(G). When |G| is
//! invertible in k every object qualifies; otherwise unit and counit apply only
//! to projectives and injectives, and the homological dimension is infinite.

use comodcontra::coalg::{Coalgebra, Side};
use comodcontra::corr::{homological_dimension, phi, phi_psi_unit_counit, psi, Object};
use comodcontra::exactlin::Field;
use comodcontra::gen;
use comodcontra::group::FiniteGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (n, p) in [(3, 2), (2, 2)] {
        let c = Coalgebra::group_function(&FiniteGroup::cyclic(n), Field::fp(p));
        let m = gen::comodule(&c, Side::Left, 3, &mut rng);
        let q = psi(&m).unwrap();
        let back = phi(&q).unwrap();
        println!("Z/{n} over F_{p}: dim M = {}, dim Ψ M = {}, dim Φ Ψ M = {}", m.dim(), q.dim(), back.dim());
        // Off the coprime case the counit is only defined on injective comodules.
        println!("  counit on M: {:?}", phi_psi_unit_counit(&Object::Comodule(m)));
        let hd = homological_dimension(&c, 3).unwrap();
        println!("  homological dimension: {hd:?}");
    }
}
