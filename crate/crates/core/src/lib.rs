// Negated comparisons are used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blaschke;
pub mod cli;
pub mod error;
pub mod io;
pub mod modelspace;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod sampling;
pub mod split;
pub mod symbols;
pub mod tto;
pub mod verify;
