//! Exact analysis of divide-and-conquer recurrences and weighted digital
//! sums.
//!
//! The crate computes the same quantities two ways and checks them against
//! each other:
//!
//! * exact integer/rational recurrences for digital sums, their running
//!   averages, the ECDF-k divide-and-conquer cost, and bottom-up mergesort
//!   ([`digital`]);
//! * closed forms assembled by summing residues of Dirichlet-series kernels
//!   along vertical pole lines, producing period-one Fourier coefficients
//!   and exact polylogarithmic terms ([`closed`], [`residue`], [`dgf`],
//!   [`special`]).

pub mod closed;
pub mod dgf;
pub mod digital;
pub mod figures;
pub mod laurent;
pub mod poly;
pub mod residue;
pub mod special;
pub mod verify;

mod dd;
mod error;

pub use closed::{ClosedFormExpr, CoeffKind, FourierSeries1, Scale, Term};
pub use digital::{Bits, ExactInt, ExactRatio};
pub use error::{Error, Result};
pub use laurent::{CVal, LaurentSeries, LnPoly};
pub use poly::{PolyQ, RatFunc2s};
pub use residue::{DenomShape, KernelSpec, LineSum, ResidueTerm};
pub use special::{MathConstants, StieltjesTable};
