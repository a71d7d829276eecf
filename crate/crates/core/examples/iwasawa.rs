//! Computations over k[[t]] for the tower Z_2: the two-term complex of a
//! finitely presented module, RΨ of a finite-length module, an Artin–Rees
//! number and the flatness comparison for R[[X]].

use comodcontra::protower::{
    artin_rees_number, flatness_comparison, lphi_iwasawa, rpsi_module, PCModule, Poly, ShortExact, TModule,
};

fn main() {
    let m = PCModule::from_invariants(2, 1, &[1, 3]);
    let l = lphi_iwasawa(&m, 5).unwrap();
    println!("LΦ(R ⊕ R/t ⊕ R/t³): torsion homology {:?}, divisible rank {}", l.homology, l.divisible_rank);

    let r = rpsi_module(&TModule::jordan(2, &[2]), 5).unwrap();
    println!("RΨ(k[t]/t²): {:?}", r.complex.homology_types());

    let free = PCModule::from_invariants(2, 1, &[]);
    let ar = artin_rees_number(&free, &vec![vec![Poly::new(2, &[0, 0, 1])]], 6).unwrap();
    println!("Artin–Rees number of t²R ⊂ R: {} ({} certificates)", ar.m, ar.certificates.len());

    let fl = flatness_comparison(&PCModule::from_invariants(2, 0, &[2]), 3, 6, &ShortExact::standard(2)).unwrap();
    println!("R[[X]] flatness comparison on R/t² with |X| = 3: {}", fl.passes());
}
