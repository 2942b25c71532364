//! Exact noncommutative linear algebra: symmetric determinants, symmetric
//! adjoints, commutator parts and the left/right Cayley-Hamilton identities
//! with matrix coefficients, over any ring implementing [`ring::Ring`].
//!
//! ```
//! use ncch::freealg::FreeAlgebra;
//! use ncch::matrix::{sdet, RingMatrix};
//! use ncch::exprparse::format_element;
//!
//! let f = FreeAlgebra::new(["a", "b", "c", "d"]).unwrap();
//! let g = f.generators();
//! let a = RingMatrix::from_rows(vec![vec![g[0].clone(), g[1].clone()],
//!                                    vec![g[2].clone(), g[3].clone()]]).unwrap();
//! let lambda = sdet(&f, &a).unwrap();
//! assert_eq!(format_element(&f, &lambda), "a*d - b*c - c*b + d*a");
//! ```

pub mod error;
pub mod exprparse;
pub mod freealg;
pub mod grassmann;
pub mod matrix;
pub mod perm;
pub mod ring;
pub mod theorems;
pub mod tpoly;

pub use error::{Error, Result};
