//! Square matrices over an arbitrary [`Ring`], and matrix rings `M_n(R)` as
//! rings in their own right (so matrices can be nested).

mod rational;
mod symmetric;

pub use rational::{adj, classical_char_poly, det, inverse};
pub use symmetric::{commutator_parts, conjugate, sadj, sadj_minor, sdet, sdet_with, CommutatorParts, SdetFormula};

use std::ops::Index;

use crate::error::{Error, Result};
use crate::ring::{GradedRing, Rational, Ring};

/// An `n x n` matrix stored row-major. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E> RingMatrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.entries[i * self.n + j] = value;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn map<F, T>(&self, f: F) -> RingMatrix<T>
    where
        F: FnMut(&E) -> T,
    {
        RingMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// The `(n-1) x (n-1)` matrix obtained by deleting `row` and `col`.
    pub fn minor(&self, row: usize, col: usize) -> Result<Self>
    where
        E: Clone,
    {
        if row >= self.n || col >= self.n {
            return Err(Error::IndexOutOfRange { row, col, n: self.n });
        }
        let m = self.n - 1;
        Ok(Self::from_fn(m, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self.get(si, sj).clone()
        }))
    }
}

impl<E> Index<(usize, usize)> for RingMatrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        self.get(i, j)
    }
}

pub fn zero_matrix<R: Ring>(ring: &R, n: usize) -> RingMatrix<R::Elem> {
    RingMatrix::from_fn(n, |_, _| ring.zero())
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> RingMatrix<R::Elem> {
    scalar_matrix(ring, n, &ring.one())
}

/// `lambda * I_n`.
pub fn scalar_matrix<R: Ring>(ring: &R, n: usize, lambda: &R::Elem) -> RingMatrix<R::Elem> {
    RingMatrix::from_fn(n, |i, j| if i == j { lambda.clone() } else { ring.zero() })
}

/// The matrix unit `E_{i,j}` (0-based).
pub fn matrix_unit<R: Ring>(ring: &R, n: usize, i: usize, j: usize) -> RingMatrix<R::Elem> {
    RingMatrix::from_fn(n, |r, c| if (r, c) == (i, j) { ring.one() } else { ring.zero() })
}

fn check_same<E, F>(a: &RingMatrix<E>, b: &RingMatrix<F>) {
    assert_eq!(a.n, b.n, "matrix dimension mismatch");
}

pub fn mat_add<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, b: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    check_same(a, b);
    RingMatrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| ring.add(x, y)).collect(),
    }
}

pub fn mat_sub<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, b: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    check_same(a, b);
    RingMatrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| ring.sub(x, y)).collect(),
    }
}

pub fn mat_neg<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    a.map(|x| ring.neg(x))
}

pub fn mat_mul<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, b: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    check_same(a, b);
    let n = a.n;
    RingMatrix::from_fn(n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..n {
            let x = a.get(i, k);
            let y = b.get(k, j);
            if ring.is_zero(x) || ring.is_zero(y) {
                continue;
            }
            ring.add_assign(&mut acc, &ring.mul(x, y));
        }
        acc
    })
}

pub fn mat_scale<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, q: &Rational) -> RingMatrix<R::Elem> {
    a.map(|x| ring.scale(x, q))
}

/// `lambda * A`, multiplying every entry from the left.
pub fn left_mul_scalar<R: Ring>(ring: &R, lambda: &R::Elem, a: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    a.map(|x| ring.mul(lambda, x))
}

/// `A * lambda`, multiplying every entry from the right.
pub fn right_mul_scalar<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, lambda: &R::Elem) -> RingMatrix<R::Elem> {
    a.map(|x| ring.mul(x, lambda))
}

pub fn mat_pow<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, k: usize) -> RingMatrix<R::Elem> {
    let mut acc = identity(ring, a.n);
    for _ in 0..k {
        acc = mat_mul(ring, &acc, a);
    }
    acc
}

pub fn trace<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> R::Elem {
    let mut acc = ring.zero();
    for i in 0..a.n {
        ring.add_assign(&mut acc, a.get(i, i));
    }
    acc
}

pub fn is_zero_matrix<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> bool {
    a.entries.iter().all(|x| ring.is_zero(x))
}

/// Entrywise even component `A_0`.
pub fn even_matrix<R: GradedRing>(ring: &R, a: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    a.map(|x| ring.even_part(x))
}

/// Entrywise odd component `A_1`.
pub fn odd_matrix<R: GradedRing>(ring: &R, a: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    a.map(|x| ring.odd_part(x))
}

/// The full matrix ring `M_n(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRing<R> {
    base: R,
    n: usize,
}

impl<R: Ring> MatrixRing<R> {
    pub fn new(base: R, n: usize) -> Self {
        Self { base, n }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unit(&self, i: usize, j: usize) -> RingMatrix<R::Elem> {
        matrix_unit(&self.base, self.n, i, j)
    }
}

/// `M_n(base)` as a ring.
pub fn matrix_ring_embed<R: Ring>(n: usize, base: R) -> MatrixRing<R> {
    MatrixRing::new(base, n)
}

impl<R: Ring> Ring for MatrixRing<R> {
    type Elem = RingMatrix<R::Elem>;

    fn zero(&self) -> Self::Elem {
        zero_matrix(&self.base, self.n)
    }
    fn one(&self) -> Self::Elem {
        identity(&self.base, self.n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_add(&self.base, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        mat_neg(&self.base, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_mul(&self.base, a, b)
    }
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        mat_scale(&self.base, a, q)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        is_zero_matrix(&self.base, a)
    }
}
