//! Pleijel constants for separable planar domains.
//!
//! The crate stacks four layers:
//!
//! * [`special`] — real-order Bessel functions J_nu, Y_nu with
//!   derivatives, and the zeros j_{nu,k}, j'_{nu,k};
//! * [`crossprod`] — the cross-product J_nu(rz) Y_nu(z) - J_nu(z) Y_nu(rz),
//!   its zeros a_{nu,k}(r), radius scans for spectral degeneracies, and the
//!   finite-k annulus surrogate;
//! * [`spectra`] — eigenvalue enumeration with multiplicities and
//!   nodal-domain counts for orthotopes, the disk, circular sectors,
//!   annuli and annular sectors, plus Weyl-law comparison and empirical
//!   Pleijel ratio traces;
//! * [`pleijel`] — the closed-form constants gamma(N) and rho(N), the
//!   transcendental equation tan(theta) - theta = pi x, and the disk value
//!   8 sup_x { x cos^2(theta(x)) }.
//!
//! All operations are pure functions; zero tables are memoized behind
//! thread-safe caches that are observationally transparent.

pub mod crossprod;
pub mod error;
pub(crate) mod gamma;
pub mod pleijel;
pub(crate) mod search;
pub mod special;
pub mod spectra;

pub use crossprod::{AnnulusRadius, AnnulusSurrogate, CrossZero, SurrogateRow};
pub use error::{Error, Result};
pub use pleijel::{EstimateMethod, PleijelEstimate, ThetaSolution};
pub use special::{BesselPair, Order, ZeroIndex};
pub use spectra::{
    BoundaryCondition, DomainSpec, EigenRecord, Mode, ModeEntry, NearDegeneracyReport,
    RatioTrace, TraceRow,
};
