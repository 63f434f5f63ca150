//! Poisson Fourier modes on `Ω = {(z,w) ∈ Ĉ² : zw ≠ 1}`: exact basis changes,
//! inner-product quadrature, complex spherical and zonal harmonics, and the
//! Möbius group of `Ω`.

pub mod basischange;
pub mod error;
pub mod exact;
pub mod hypergeom;
pub mod jacobi;
pub mod moebius;
pub mod numeric;
pub mod pfm;
pub mod quadrature;
pub mod sampling;
pub mod scalar;
pub mod sphere;
pub mod zonal;

pub use error::{Error, Result};
pub use exact::{GaussianRational, SqrtPiScaled};
pub use moebius::{Family, MoebiusMap, SphereMoebius};
pub use num::BigRational;
pub use pfm::{ExtendedComplex, ExtendedComplex64, OmegaPoint, OmegaPoint64, PFMIndex};
pub use quadrature::{CoefficientTable, SphereQuadrature};
pub use scalar::Real;
pub use sphere::{SpherePointC, TrivariatePoly};
pub use zonal::ZonalEvaluator;

pub type MoebiusMap64 = MoebiusMap<f64>;
pub type SphereQuadrature64 = SphereQuadrature<f64>;
pub type CoefficientTable64 = CoefficientTable<f64>;
pub type SpherePointC64 = SpherePointC<f64>;
pub type ZonalEvaluator64 = ZonalEvaluator<f64>;
