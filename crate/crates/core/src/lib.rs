//! Higher Gaussian maps of the canonical bundle on hyperelliptic curves,
//! computed in exact rational arithmetic, together with threshold evaluations
//! of the second fundamental form on higher Schiffer variations at a
//! Weierstrass point.

pub mod curve;
pub mod error;
pub mod gaussian;
pub mod exact;
pub mod schiffer;
pub mod verify;

pub use curve::{new_curve, Curve};
pub use error::{Error, Result};
