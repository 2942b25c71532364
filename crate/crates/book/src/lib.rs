//! Compiles the guide in `book/src` so that every Rust snippet runs as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/rings.md")]
pub mod rings {}

#[doc = include_str!("../../../book/src/symmetric-determinant.md")]
pub mod symmetric_determinant {}

#[doc = include_str!("../../../book/src/characteristic-polynomial.md")]
pub mod characteristic_polynomial {}

#[doc = include_str!("../../../book/src/text-format.md")]
pub mod text_format {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
