//! Exact finite field Hartley transforms over the Gaussian integers GI(p).
//!
//! * [`field`]: arithmetic in GI(p) for primes `p ≡ 3 (mod 4)`.
//! * [`trig`]: sin, cos and cas for a kernel ζ of order N.
//! * [`transform`]: the dense reference transform and its inverse.
//! * [`plan`]: layered fast plans, their cost model and the builtin plans.
//! * [`decompose`]: automatic plan derivation by column pairing.
//! * [`report`]: complexity tables.
//!
//! ```
//! use ffht::{builtin_plan, count_ops, forward, FieldCtx, KernelSpec};
//!
//! let spec = KernelSpec::parse(7, "2+2j").unwrap();
//! let ctx = spec.ctx();
//! let v: Vec<_> = (1..=8).map(|a| ctx.real(a)).collect();
//!
//! let plan = builtin_plan("n8_p7").unwrap();
//! assert_eq!(plan.apply(&v).unwrap(), forward(&spec.cas_table(), &v).unwrap());
//!
//! let cost = count_ops(&plan).unwrap();
//! assert_eq!((cost.total_mults(), cost.total_adds()), (2, 22));
//! # let _ = FieldCtx::new(7);
//! ```

pub mod cli;
pub mod decompose;
pub mod error;
pub mod field;
pub mod matrix;
pub mod plan;
pub mod report;
pub mod transform;
pub mod trig;

pub use decompose::{
    apply_pairing, derive, derive_plan, Derivation, DeriveOptions, PairingStep, Strategy,
};
pub use error::{Error, Result};
pub use field::{FieldCtx, GaussInt, KernelSearch};
pub use matrix::Matrix;
pub use plan::{
    audit, builtin_plan, count_ops, count_ops_with, parse_plan, serialize_plan, CostMode, FastPlan,
    Layer, Node, OpCount, PostMatrix, ValidationReport, BUILTIN_NAMES,
};
pub use report::{complexity_report, emit_report, ReportFormat, ReportRow, Source};
pub use transform::{build_matrix, forward, inverse, TransformMatrix};
pub use trig::{CasTable, KernelSpec};
