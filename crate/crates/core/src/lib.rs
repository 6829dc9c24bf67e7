//! Exact Steinberg algebras of boundary-path groupoids of finite graphs
//! without sinks.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalars`]: exact coefficient rings with conjugation and kindness.
//! - [`graph`]: graphs, finite paths and eventually periodic boundary points.
//! - [`bisect`]: the inverse semigroup of basic bisections `Z(α, β, F)`.
//! - [`steinberg`]: the convolution algebra, normal forms, gradings and
//!   homomorphisms induced by representations of the bisection semigroup.
//! - [`leavitt`]: the Leavitt algebra `L_n` as a word-rewriting system and its
//!   isomorphism onto the algebra of the Cuntz groupoid.
//! - [`tensor`]: tensor products and the algebra of the product groupoid.
//! - [`invariants`]: projections, diagonal preservation, effectiveness and
//!   the Bowen–Franks decision procedure for tensor products of Cuntz groupoids.
//! - [`syntax`]: parsers and printers for the textual grammars.
//! - [`verify`]: seeded random generators and property suites.

pub mod bisect;
pub mod graph;
pub mod invariants;
pub mod leavitt;
pub mod scalars;
pub mod steinberg;
pub mod syntax;
pub mod tensor;
pub mod verify;

pub use bisect::BasicBisection;
pub use graph::{BoundaryPoint, Graph, GroupoidPoint, Path};
pub use leavitt::LeavittElement;
pub use scalars::{Scalar, ScalarRing};
pub use steinberg::AlgebraElement;
pub use tensor::{ProductAlgebraElement, ProductBisection, TensorElement};
