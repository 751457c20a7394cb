//! Entanglement of pure multipartite states through the Segre variety.
//!
//! A pure state on `m` subsystems of dimensions `N_1, ..., N_m` is a complex
//! coefficient tensor. It is fully separable exactly when the tensor lies on
//! the Segre variety, which is cut out by the 2x2 minors of every mode
//! unfolding. This crate enumerates those minors numerically and
//! symbolically, builds the minor-based concurrence and its multipartite
//! generalization, and checks every bipartite factorization with a
//! singular-value rank test.
//!
//! All user-facing indices (subsystems, basis labels, variable names) are
//! 1-based. Storage is row-major with the last subsystem varying fastest.
//!
//! ```
//! use segre::{measures, tensor::{named_state, NamedState}, MeasureConfig};
//!
//! let bell = named_state(&NamedState::Bell(1)).unwrap();
//! let c = measures::concurrence_bipartite(&bell, &MeasureConfig::default()).unwrap();
//! assert!((c.value - 1.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod ideal;
pub mod linalg;
pub mod measures;
pub mod minors;
pub mod separability;
pub mod state_file;
pub mod tensor;

pub use error::{Error, Result};
pub use ideal::{IdealGenerators, IdealLabel, RenderFormat, SymbolicGenerator};
pub use measures::{Convention, MeasureConfig, MeasureResult};
pub use minors::{MinorId, MinorValue, SegreCheck};
pub use separability::{CutReport, PartitionSpec, SeparabilityReport};
pub use tensor::{Matricization, NamedState, NormPolicy, PureStateTensor, RandomKind, Shape};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

/// Default absolute tolerance for minor moduli and second singular values.
pub const DEFAULT_EPS: f64 = 1e-9;
