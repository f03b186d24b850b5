//! The second fundamental form on odd higher Schiffer variations at the
//! Weierstrass point `p = (0,0)`, as far as the vanishing threshold of each
//! quadric licenses it.

pub mod asymptotic;
pub mod cup;
pub mod functional;
pub mod pairing;
pub mod rho;

pub use asymptotic::{asymptotic_classify, random_directions, AsymptoticCertificate, Classifier, Verdict};
pub use cup::{cup_rank, CupRank};
pub use functional::{
    diag_functional_on_ak0, hyperplane_ak0, lambda_closed_form, witness_functional, Functional,
};
pub use pairing::{derivative_sum, vanishing_threshold, DerivativePairing, Threshold};
pub use rho::{isotropy_items, mu2_at_p_from_x_chart, rho_pair, RhoValue};
