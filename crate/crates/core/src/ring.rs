//! The ring interface shared by every scalar algebra, exact rationals, and the
//! commutator calculus (left-normed brackets, Engel words and the Leibniz-type
//! expansion of `[r1 r2 ... rs, x1, ..., xm]`).
//!
//! Rings are *context objects*: a [`Ring`] value knows how to build and combine
//! its elements, while elements are plain data in canonical form. This lets a
//! matrix ring or a polynomial ring wrap any other ring without the elements
//! having to carry their ambient structure around.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Builds `num / den` as an exact rational.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `k` as a rational.
pub fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// A unital associative algebra over the rationals.
///
/// Equality of elements is structural equality of canonical forms, so every
/// implementation must keep its elements canonical.
pub trait Ring: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, k: i64) -> Self::Elem {
        self.scale(&self.one(), &int(k))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.scale(&self.one(), q)
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for x in items {
            self.add_assign(&mut acc, x);
        }
        acc
    }

    /// Ordered product `x1 * x2 * ... * xk`; the empty product is `1`.
    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.one();
        for x in items {
            acc = self.mul(&acc, x);
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

impl<R: Ring + ?Sized> Ring for &R {
    type Elem = R::Elem;

    fn zero(&self) -> Self::Elem {
        (**self).zero()
    }
    fn one(&self) -> Self::Elem {
        (**self).one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (**self).neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).mul(a, b)
    }
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        (**self).scale(a, q)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        (**self).is_zero(a)
    }
    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        (**self).add_assign(acc, b)
    }
}

/// A Grassmann-like Z2-grading `R = R0 + R1`: even elements are central and
/// odd elements square to zero.
pub trait GradedRing: Ring {
    fn even_part(&self, a: &Self::Elem) -> Self::Elem;
    fn odd_part(&self, a: &Self::Elem) -> Self::Elem;

    fn split(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        (self.even_part(a), self.odd_part(a))
    }
}

impl<R: GradedRing + ?Sized> GradedRing for &R {
    fn even_part(&self, a: &Self::Elem) -> Self::Elem {
        (**self).even_part(a)
    }
    fn odd_part(&self, a: &Self::Elem) -> Self::Elem {
        (**self).odd_part(a)
    }
}

/// The field of rational numbers viewed as a (commutative) ring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn scale(&self, a: &Rational, q: &Rational) -> Rational {
        a * q
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, acc: &mut Rational, b: &Rational) {
        *acc += b;
    }
}

/// Every rational is even; the odd component is always zero.
impl GradedRing for Rationals {
    fn even_part(&self, a: &Rational) -> Rational {
        a.clone()
    }
    fn odd_part(&self, _a: &Rational) -> Rational {
        Rational::zero()
    }
}

/// `[x, y] = xy - yx`.
pub fn commutator<R: Ring>(ring: &R, x: &R::Elem, y: &R::Elem) -> R::Elem {
    ring.sub(&ring.mul(x, y), &ring.mul(y, x))
}

/// A left-normed commutator word `[head, tail_1, ..., tail_m]`, bracketed
/// from the left: `[[...[[head, tail_1], tail_2], ...], tail_m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorWord<E> {
    pub head: E,
    pub tail: Vec<E>,
}

impl<E: Clone> CommutatorWord<E> {
    pub fn new(head: E, tail: Vec<E>) -> Self {
        Self { head, tail }
    }

    /// Total number of entries, head included.
    pub fn len(&self) -> usize {
        1 + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn evaluate<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        self.tail
            .iter()
            .fold(self.head.clone(), |acc, x| commutator(ring, &acc, x))
    }
}

/// `[x1, x2, ..., xm]` with `[x1] = x1`.
pub fn left_normed<R: Ring>(ring: &R, xs: &[R::Elem]) -> Result<R::Elem> {
    let (head, tail) = xs.split_first().ok_or(Error::EmptyCommutator)?;
    Ok(CommutatorWord::new(head.clone(), tail.to_vec()).evaluate(ring))
}

/// The Engel word `[x, y, ..., y]` with `y` repeated `k` times.
pub fn engel<R: Ring>(ring: &R, x: &R::Elem, y: &R::Elem, k: usize) -> Result<R::Elem> {
    if k == 0 {
        return Err(Error::ZeroEngelIndex);
    }
    Ok(CommutatorWord::new(x.clone(), vec![y.clone(); k]).evaluate(ring))
}

/// Right-hand side of the Leibniz-type expansion
///
/// ```text
/// [r1 r2 ... rs, x1, ..., xm] = sum over (H1, ..., Hs) of [r1, H1] [r2, H2] ... [rs, Hs]
/// ```
///
/// where `(H1, ..., Hs)` ranges over ordered tuples of pairwise disjoint,
/// possibly empty subsets covering `{1, ..., m}`, and `[r, H]` is the
/// left-normed commutator of `r` with the `x`'s indexed by `H` in increasing
/// order (`[r, {}] = r`).
///
/// The tuples are enumerated as the `s^m` assignments of indices to blocks.
pub fn leibniz_expand<R: Ring>(ring: &R, rs: &[R::Elem], xs: &[R::Elem]) -> Result<R::Elem> {
    let s = rs.len();
    if s == 0 {
        return Err(Error::NoFactors);
    }
    let m = xs.len();
    let total = s.pow(m as u32);
    let mut acc = ring.zero();
    let mut blocks: Vec<Vec<R::Elem>> = vec![Vec::with_capacity(m); s];
    for code in 0..total {
        blocks.iter_mut().for_each(Vec::clear);
        let mut c = code;
        for x in xs {
            blocks[c % s].push(x.clone());
            c /= s;
        }
        let mut term = ring.one();
        for (r, block) in rs.iter().zip(&blocks) {
            let bracket = CommutatorWord::new(r.clone(), block.clone()).evaluate(ring);
            term = ring.mul(&term, &bracket);
            if ring.is_zero(&term) {
                break;
            }
        }
        ring.add_assign(&mut acc, &term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = rat(6, -4);
        assert_eq!(*q.numer(), BigInt::from(-3));
        assert_eq!(*q.denom(), BigInt::from(2));
    }

    #[test]
    fn commutator_diagonal_vanishes() {
        let q = rat(7, 3);
        assert!(Rationals.is_zero(&commutator(&Rationals, &q, &q)));
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert_eq!(left_normed(&Rationals, &[]), Err(Error::EmptyCommutator));
        assert_eq!(engel(&Rationals, &int(1), &int(2), 0), Err(Error::ZeroEngelIndex));
        assert_eq!(leibniz_expand(&Rationals, &[], &[int(1)]), Err(Error::NoFactors));
    }

    #[test]
    fn left_normed_base_case() {
        assert_eq!(left_normed(&Rationals, &[int(5)]).unwrap(), int(5));
    }

    proptest! {
        #[test]
        fn rational_add_sub_round_trip(a in any::<i64>(), b in 1..i64::MAX, c in any::<i64>(), d in 1..i64::MAX) {
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
