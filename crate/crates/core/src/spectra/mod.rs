//! The asymptotic layer: congruence and equivalence deciders, restriction
//! witnesses, triangular certificates, sandwich reports and law harnesses.

pub mod laws;
pub mod monomial;
pub mod report;
pub mod triangular;
pub mod witness;

pub use laws::{spectral_point_check, strassen_axiom_check, LawCheckOptions, LawReport, SpectralPoint};
pub use monomial::{apply_congruence, is_congruent, is_equivalent, Congruence, MonomialTransform};
pub use report::{asymptotic_report, AsymptoticSandwich, ReportOptions};
pub use triangular::{triangular_certificate, TriangularCertificate};
pub use witness::{compose_witness_product, compose_witness_sum, Restriction, RestrictionWitness};
