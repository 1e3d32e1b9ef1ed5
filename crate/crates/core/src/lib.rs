//! Exact-arithmetic workbench for compact Lie algebras, homogeneous spaces
//! `G/S` with toral isotropy, and geodesic orbit metrics on them.

#![allow(clippy::needless_range_loop)]

pub mod chevalley;
pub mod config;
pub mod error;
pub mod flagstruct;
pub mod gometric;
pub mod homspace;
pub mod lemmalab;
pub mod linalg;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
pub use rational::Q;
