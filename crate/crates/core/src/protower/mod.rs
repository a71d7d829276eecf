//! Pro-p towers `Z/p ← Z/p^2 ← …` (and their squares), the Iwasawa algebra
//! `k[[t]]`, `t = γ − 1`, as the dual of `C = k(Z_p) = colim C_n`, and
//! executable versions of the statements relating discrete modules,
//! contramodules and modules over dense subrings.
//!
//! Finite-length modules are [`TModule`]s (a nilpotent operator); finitely
//! presented ones are [`PCModule`]s, classified by [`smith_form`]. A
//! finite-length module lives at level `n` once `t^{p^n}` kills it, and then
//! is a comodule and a contramodule over `C_n` with `g ↦ (1 + t)^g`.

mod checks;
mod iwasawa;
mod poly;
mod smith;
mod tmodule;
mod tower;

pub use checks::{
    artin_rees_number, contratensor_comparison, dense_subring_hom_check, flatness_comparison, graded_ring_check,
    injective_extension, nakayama_check, ArtinRees, ArtinReesCertificate, ContratensorComparison, Extension,
    FlatLevel, FlatnessReport, GradedRingReport, HomComparison, NakayamaReport, ShortExact, SubmoduleGens, TorCheck,
};
pub use iwasawa::{
    lphi_iwasawa, lphi_iwasawa_complex, round_trip_comod, round_trip_contra, rpsi_iwasawa, rpsi_module,
    IwasawaRoundTrip, LPhi, LevelComplex, RPsi,
};
pub(crate) use iwasawa::{homology_colimit, lphi_with, rpsi_with, Operator};
pub use poly::{Local, Poly};
pub use smith::{smith_form, verify_smith, PCModule, SmithForm, SmithSummary};
pub(crate) use tmodule::{intertwiners, quotient_projection, unvec, vec_of};
pub use tmodule::{TModule, Truncation};
pub use tower::{
    builtin_tower, check_inclusion, check_tower, contramodule_to_tmodule, ind_coalgebra_level, iwasawa_truncation,
    level_coalgebra, level_comodule, level_contramodule, level_inclusion, level_regular, GroupTower,
    IwasawaTruncation, TowerKind, Twist, MAX_LEVEL_ORDER,
};
