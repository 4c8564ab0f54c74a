//! Mutual information leaked by integer mixing schemes `Y = α₀X + Σ αᵢZᵢ` over
//! i.i.d. Bernoulli bits, together with lower bounds, a relaxation certificate,
//! optimizers over schemes and a fast recursion for binary tails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod fastmix;
pub mod numeric;
pub mod optimizers;
pub mod relaxation;
pub mod schemes;

pub use entropy::{BitsValue, IntegerPmf, MixingScheme, ModelParams};
pub use error::{Error, Result};
