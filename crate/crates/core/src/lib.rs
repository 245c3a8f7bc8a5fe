//! Exact symbolic toolkit for Gelfand-Tsetlin modules of `gl(n)` with
//! singular parameters.

pub mod cli;
pub mod divdiff;
pub mod error;
pub mod exactalg;
pub mod gtmodule;
pub mod singular;
pub mod symcomb;
