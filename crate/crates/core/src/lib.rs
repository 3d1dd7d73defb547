//! Exact combinatorics of the rank-4 matroid `M(H4)` on the 60 sign-classes
//! of the H4 root system (the vertex pairs of the 600-cell).
//!
//! Everything is computed over the golden field `Q(τ)`, `τ² = τ + 1`, with
//! arbitrary exact rational coefficients - no floating point enters any
//! decision. The crate provides:
//!
//! - [`gfield`]: arithmetic, sign determination and the conjugation
//!   automorphism of `Q(τ)`;
//! - [`roots`]: the 60 canonical root columns, inner products and lookups;
//! - [`matroid`]: the rank oracle, the full flat census (lines of sizes
//!   2/3/5, planes Π3/Π5/Π6/Π15), orthoframes, the point-orthoplane
//!   bijection, basis counting and the orthoframe-only reconstruction;
//! - [`group`]: permutations of the ground set, deterministic
//!   Schreier-Sims stabilizer chains, orbits, block systems and
//!   multiplication-table isomorphism;
//! - [`autos`]: reflection permutations, the geometric subgroup of order
//!   7,200, the full automorphism group of order 14,400, stabilizer
//!   structure, transitivity, primitivity, the point-plane duality graph
//!   and the non-geometric coset witness;
//! - [`project`]: a deterministic SVG picture of an affine projection;
//! - [`verify`]: the end-to-end claim checker behind `verify-all`.
//!
//! Scalar-generic core: all field and linear algebra is generic over the
//! rational coefficient type through [`gfield::GoldenScalar`]. The concrete
//! aliases below fix the default (64-bit rationals, ample for these
//! coordinates) and a big-integer fallback used for cross-checks.

pub mod autos;
pub mod bits;
pub mod gfield;
pub mod group;
pub mod matroid;
pub mod project;
pub mod roots;
pub mod verify;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

pub use gfield::{GoldenNumber, GoldenScalar};
pub use roots::{PointTable, RootPoint};

/// Default golden-field element: coefficients are 64-bit rationals.
pub type Golden = GoldenNumber<Rational64>;
/// Arbitrary-precision variant, used to cross-check the 64-bit kernel.
pub type GoldenBig = GoldenNumber<BigRational>;
/// Rational scalar backing [`Golden`].
pub type Rat = Rational64;
/// Rational scalar backing [`GoldenBig`].
pub type BigRat = BigRational;

/// Convenience constructor for the big-rational scalar.
pub fn bigrat(n: i64, d: i64) -> BigRat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
pub(crate) mod testworld {
    //! One shared build of the full pipeline for unit tests.
    use std::sync::OnceLock;

    use crate::autos::{aut_group, geometric_group, AutGroup};
    use crate::group::PermGroup;
    use crate::matroid::{
        enumerate_flats, enumerate_orthoframes, scan_bases, BasisScan, Flats, OrthoData,
    };
    use crate::roots::PointTable;
    use crate::Rat;

    pub struct World {
        pub table: PointTable<Rat>,
        pub flats: Flats,
        pub ortho: OrthoData,
        pub scan: BasisScan,
        pub aut: AutGroup,
        pub geo: PermGroup,
    }

    static WORLD: OnceLock<World> = OnceLock::new();

    pub fn world() -> &'static World {
        WORLD.get_or_init(|| {
            let table = PointTable::load_h4().unwrap();
            let flats = enumerate_flats(&table).unwrap();
            let ortho = enumerate_orthoframes(&table, &flats).unwrap();
            let scan = scan_bases(&table, &flats, &ortho).unwrap();
            let aut = aut_group(&flats, &scan).unwrap();
            let geo = geometric_group(&table).unwrap();
            World { table, flats, ortho, scan, aut, geo }
        })
    }
}

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("cannot canonicalize the zero vector")]
    ZeroVector,
    #[error("point id {0} out of range 0..60")]
    PointOutOfRange(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("root table inconsistent: {0}")]
    RootTable(String),
    #[error("flat classification failed: {0}")]
    Classification(String),
    #[error("orthoframe data inconsistent: {0}")]
    Ortho(String),
    #[error("reconstruction diverged: {0}")]
    Reconstruction(String),
    #[error("automorphism certification failed: {0}")]
    Certification(String),
    #[error("group structure check failed: {0}")]
    GroupStructure(String),
    #[error("projection invalid: {0}")]
    Projection(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
