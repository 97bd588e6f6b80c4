//! Exact arithmetic for time–frequency shift operators and a numerical
//! laboratory built around it.
//!
//! The crate has three layers:
//!
//! * an exact algebraic core — the twisted group ring ℂ*𝒢ₙ over generic
//!   coordinate scalars (rationals, ℚ(√2), or floats), the symplectic
//!   commutation solver, twisted (skew) polynomial decompositions and the
//!   support-shrinking reduction certificate;
//! * the metaplectic reduction that embeds a discrete subgroup of 𝒢ₙ into
//!   𝒢₂ₙ, conjugates it into a lattice containing 1×ℤ²ⁿ, and evaluates
//!   the tracial state by cube characteristic functions;
//! * a closed-form Gaussian packet calculus with an independent quadrature
//!   oracle, used to certify linear independence of time–frequency
//!   translates through Gram matrix smallest-eigenvalue reports.

pub mod algebra;
pub mod error;
pub mod gaussian;
pub mod group;
pub mod independence;
pub mod linalg;
pub mod metaplectic;
pub mod phase;
pub mod quad;
pub mod quadrature;
pub mod reduce;
pub mod scalar;
pub mod subgroup;
pub mod symplectic;
pub mod twisted_poly;

pub use algebra::{AlgebraElement, PhasedCoeff, CHOP_THRESHOLD};
pub use error::{Error, Result};
pub use gaussian::{GaussianPacket, PacketSum};
pub use independence::{certify, certify_window, density_sweep, gram_matrix, CosetWindow, GramReport, SweepRow, Verdict};
pub use group::GroupElement;
pub use metaplectic::{build_h, choose_b, complete_basis, cube_trace, embed_algebra, embed_double, CubeTraceData, MetaplecticFactor, MetaplecticPipeline, TransitionFactors};
pub use phase::Phase;
pub use quad::Quad;
pub use quadrature::{gauss_legendre, quadrature_inner_product, QuadratureGrid};
pub use reduce::{reduce_to_unit, ReduceCertificate, ReduceMove};
pub use scalar::{Rat, Scalar, FLOAT_TOL};
pub use subgroup::{DiscreteSubgroup, MemberWitness};
pub use twisted_poly::{decompose, SubgroupSplitting, TwistedPoly};

/// Exact-rational instantiations (the default working mode).
pub type RatElement = GroupElement<Rat>;
pub type RatAlgebra = AlgebraElement<Rat>;
pub type RatSubgroup = DiscreteSubgroup<Rat>;

/// ℚ(√2) instantiations used by the metaplectic layer.
pub type QuadElement = GroupElement<Quad>;
pub type QuadAlgebra = AlgebraElement<Quad>;
pub type QuadSubgroup = DiscreteSubgroup<Quad>;

/// Float instantiations for ingesting irrational data.
pub type FloatElement = GroupElement<f64>;
pub type FloatAlgebra = AlgebraElement<f64>;
pub type FloatSubgroup = DiscreteSubgroup<f64>;
