//! Exact arithmetic over rings of ternions (upper triangular 2x2 matrices
//! over GF(q)) and the free left modules `R^(n+1)` built from them.
//!
//! The crate classifies vectors and cyclic submodules of `R^(n+1)` up to the
//! action of `GL_{n+1}(R)`, enumerates the non-unimodular free cyclic
//! submodules, reads the lines and points of `PG(n, q)` off their
//! intersections with `(rad R)^(n+1)`, and checks the closed-form orbit and
//! incidence counts against exhaustive enumeration.
//!
//! ```
//! use ternion_core::{FiniteField, FreeModule, VectorOrbit};
//!
//! let module = FreeModule::new(FiniteField::new(2, 1)?, 2)?;
//! let x = "0,1,1;0,0,1;0,0,0".parse()?;
//! assert_eq!(module.classify_vector(&x), VectorOrbit::Case4);
//! assert_eq!(module.enumerate_nfcs()?.len(), 21);
//! # Ok::<(), ternion_core::Error>(())
//! ```

pub mod census;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod modvec;
pub mod pgbridge;
mod scan;
pub mod submod;
pub mod ternion;

pub use census::{IncidenceCensus, OrbitCensus};
pub use error::{Error, Result};
pub use gf::{FiniteField, Fq};
pub use modvec::{FreeModule, Reduction, TMatrix, TVector, VectorOrbit};
pub use pgbridge::{PgSubspace, RadVector, Theorem1Report};
pub use submod::{CyclicSubmodule, SubmoduleOrbit};
pub use ternion::{LeftIdealClass, RightIdealClass, Ternion, TernionRing};

/// Default bound on the number of vectors a full-space scan may visit.
pub const DEFAULT_FULL_SPACE_BOUND: u64 = 1 << 24;

/// Limits on exhaustive enumeration.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `q^(3(n+1))` for scans over all of `R^(n+1)`.
    pub full_space: u64,
    /// Largest `q^(2(n+1))` for scans over `I1^(n+1)`.
    pub i1_space: u64,
    /// Largest `q` for brute-force ideal enumeration.
    pub ideal_max_q: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            full_space: DEFAULT_FULL_SPACE_BOUND,
            i1_space: DEFAULT_FULL_SPACE_BOUND,
            ideal_max_q: ternion::DEFAULT_IDEAL_ENUMERATION_MAX_Q,
        }
    }
}

impl Bounds {
    /// The same bound for both vector scans.
    pub fn with_vector_bound(bound: u64) -> Self {
        Bounds {
            full_space: bound,
            i1_space: bound,
            ..Bounds::default()
        }
    }
}
