//! Numeric and exact evaluation of q-series: q-Pochhammer symbols, theta
//! functions, unilateral and bilateral basic hypergeometric series, the
//! generalized Zwegers mu-function, and the identities connecting them.
#![no_std]

extern crate alloc;

pub mod error;
pub mod qcore;
pub mod series;
pub mod mu;
pub mod elliptic;
pub mod identities;
pub mod fps;

pub use error::{QError, Result};
pub use qcore::{QContext, C64};
pub mod catalog;
