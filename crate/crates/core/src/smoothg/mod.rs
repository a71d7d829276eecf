//! Smooth modules and contramodules over locally profinite groups `G` with a
//! compact open subgroup `H`: a finite sandbox where `G` itself is finite and
//! every axiom is a matrix identity, and the family `G = Z_p ⋊_φ Z` computed
//! through level shadows of the cyclic tower.

mod sandbox;
mod semidirect;

pub use sandbox::{
    check_semialgebra, comodule_rep, contramodule_rep, contratensor_g_comparison, cotensor_kernel, find_invertible,
    finite_sandbox, generators, phi_g as sandbox_phi_g, phi_restriction_check, psi_g as sandbox_psi_g,
    psi_restriction_check, rep_family, sandbox_adjunction, sandbox_counit, sandbox_equivalence, sandbox_unit,
    semimult_mutations, subgroup_list, ContratensorGReport, GRep, MutationReport, Orientation, PhiG, PsiG,
    Sandbox, SandboxAdjunction, SandboxEquivalence, Semialgebra,
};
pub use semidirect::{
    build_g, check_twisted, contratensor_gt_comparison, derived_equivalence_g, derived_phi_g, derived_psi_g, ext_tor_vanishing, koszul_phi, level_free,
    phi_g, psi_g, t_gamma_iso, underived_equivalence_check, weakly_compact_flags, window_level, DerivedG,
    ExtTorTable, GContramodule, GDescriptor, GHomology, GObject, Shape, SmoothGModule, TAlgebra, WeakFlags, Window,
};
