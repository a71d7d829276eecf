//! G = Z_2 × Z as a semidirect product over the tower Z_2: derived functors
//! of the trivial module, a derived round trip, and Ext/Tor vanishing for the
//! window shadow of S.

use comodcontra::protower::{builtin_tower, TowerKind, Twist};
use comodcontra::smoothg::{
    build_g, derived_equivalence_g, derived_phi_g, derived_psi_g, ext_tor_vanishing, GContramodule, GObject, SmoothGModule,
};

fn main() {
    let tower = builtin_tower(TowerKind::Zp, 2, 4, Twist::Identity).unwrap();
    let d = build_g(&tower, 2).unwrap();

    let l = derived_phi_g(&d, &GContramodule::trivial(2), 2, 4).unwrap();
    let r = derived_psi_g(&d, &SmoothGModule::trivial(2), 2, 4).unwrap();
    println!("LΦ_G(k): {:?}", l.homology.types());
    println!("RΨ_G(k): {:?}", r.homology.types());

    let rt = derived_equivalence_g(&d, &GObject::Contra(GContramodule::trivial(2)), 2, 4).unwrap();
    println!("round trip on k holds: {}", rt.holds());

    let s = SmoothGModule::s_window(&d, 2).unwrap();
    let v = ext_tor_vanishing(&d, &GObject::Smooth(s), 3).unwrap();
    println!("{} on the S window: {:?}", v.functor, v.values);
    for line in &v.trace {
        println!("  {line}");
    }
}
