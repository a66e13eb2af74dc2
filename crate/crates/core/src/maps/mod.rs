//! Rational self-maps of projective space and polynomial maps of affine space.

mod affine;
mod projective;

pub use affine::AffinePolyMap;
pub use projective::{ProjectiveMap, ProjectivePoint, Restriction, MAX_SAMPLE_ATTEMPTS};
