//! Derived functors over the path coalgebra of • → •, where comodules have
//! injective dimension one, and the round trips through the derived categories.

use comodcontra::coalg::{Coalgebra, Side};
use comodcontra::corr::{comodule_complex, contramodule_complex, derived_phi, derived_psi, round_trip_comod, round_trip_contra};
use comodcontra::exactlin::Field;
use comodcontra::gen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let c = Coalgebra::path_coalgebra(Field::fp(2), 2, &[(0, 1)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = gen::comodule(&c, Side::Left, 3, &mut rng);
    let p = gen::contramodule(&c, 3, &mut rng);

    println!("RΨ M homology: {:?}", derived_psi(&m, 3).unwrap().homology_table());
    println!("LΦ P homology: {:?}", derived_phi(&p, 3).unwrap().homology_table());

    let x = round_trip_comod(&comodule_complex(&m).unwrap(), &c, 3).unwrap();
    let y = round_trip_contra(&contramodule_complex(&p).unwrap(), &c, 3).unwrap();
    println!("LΦ RΨ M ≃ M: {}", x.holds());
    println!("RΨ LΦ P ≃ P: {}", y.holds());
}
