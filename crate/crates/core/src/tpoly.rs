//! Polynomials in one central indeterminate `t`, the characteristic matrix
//! `t I - A`, the symmetric characteristic polynomial and the matrix
//! coefficients `C(i)`, `D(i)` of the left and right Cayley-Hamilton
//! identities.
//!
//! [`PolyRing`] is itself a [`Ring`], so the symmetric determinant and adjoint
//! kernels run unchanged on `M_n(R[t])`; the matrix coefficients are then read
//! off through `M_n(R[t]) = M_n(R)[t]`.

use crate::error::{Error, Result};
use crate::matrix::{
    commutator_parts, identity, is_zero_matrix, mat_add, mat_mul, mat_pow, mat_sub, odd_matrix, scalar_matrix, sdet,
    zero_matrix, RingMatrix,
};
use crate::ring::{GradedRing, Rational, Ring};

/// Dense coefficient list `c_0, c_1, ..., c_d` without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPoly<E> {
    coeffs: Vec<E>,
}

impl<E> TPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `R[t]` for a base ring `R`, `t` commuting with everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> TPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> TPoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> TPoly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); k];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn t(&self) -> TPoly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, p: &TPoly<R::Elem>, i: usize) -> R::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// First `count` coefficients, zero-padded.
    pub fn padded(&self, p: &TPoly<R::Elem>, count: usize) -> Vec<R::Elem> {
        (0..count).map(|i| self.coeff(p, i)).collect()
    }

    /// Substitutes a rational value for `t`.
    pub fn eval(&self, p: &TPoly<R::Elem>, t: &Rational) -> R::Elem {
        let mut acc = self.base.zero();
        for c in p.coeffs.iter().rev() {
            acc = self.base.add(&self.base.scale(&acc, t), c);
        }
        acc
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = TPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TPoly { coeffs: Vec::new() }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let len = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(coeffs)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TPoly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !self.base.is_zero(y) {
                    self.base.add_assign(&mut coeffs[i + j], &self.base.mul(x, y));
                }
            }
        }
        self.from_coeffs(coeffs)
    }
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.from_coeffs(a.coeffs.iter().map(|c| self.base.scale(c, q)).collect())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

/// Coefficientwise grading `(R0[t], R1[t])`.
impl<R: GradedRing> GradedRing for PolyRing<R> {
    fn even_part(&self, a: &Self::Elem) -> Self::Elem {
        self.from_coeffs(a.coeffs.iter().map(|c| self.base.even_part(c)).collect())
    }
    fn odd_part(&self, a: &Self::Elem) -> Self::Elem {
        self.from_coeffs(a.coeffs.iter().map(|c| self.base.odd_part(c)).collect())
    }
}

/// `(p0, p1)`: the even and odd components of `p`, coefficient by coefficient.
pub fn graded_split_poly<R: GradedRing>(ring: &PolyRing<R>, p: &TPoly<R::Elem>) -> (TPoly<R::Elem>, TPoly<R::Elem>) {
    (ring.even_part(p), ring.odd_part(p))
}

/// `t I_n - A` as a matrix over `R[t]`.
pub fn char_matrix<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> RingMatrix<TPoly<R::Elem>> {
    let pr = PolyRing::new(ring);
    RingMatrix::from_fn(a.n(), |i, j| {
        let c = pr.constant(ring.neg(a.get(i, j)));
        if i == j {
            pr.add(&pr.t(), &c)
        } else {
            c
        }
    })
}

/// Substitutes a rational value for `t` in every entry.
pub fn eval_matrix<R: Ring>(ring: &R, m: &RingMatrix<TPoly<R::Elem>>, t: &Rational) -> RingMatrix<R::Elem> {
    let pr = PolyRing::new(ring);
    m.map(|p| pr.eval(p, t))
}

/// `p(t) = sdet(t I_n - A)`.
pub fn sym_char_poly<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> Result<TPoly<R::Elem>> {
    sdet(&PolyRing::new(ring), &char_matrix(ring, a))
}

/// Splits a matrix over `R[t]` into its first `count` matrix coefficients.
pub fn matrix_coefficients<R: Ring>(
    ring: &R,
    m: &RingMatrix<TPoly<R::Elem>>,
    count: usize,
) -> Vec<RingMatrix<R::Elem>> {
    let pr = PolyRing::new(ring);
    (0..count).map(|i| m.map(|p| pr.coeff(p, i))).collect()
}

/// Inverse of [`matrix_coefficients`]: `sum_i M_i t^i`.
pub fn assemble_matrix_poly<R: Ring>(ring: &R, n: usize, coeffs: &[RingMatrix<R::Elem>]) -> RingMatrix<TPoly<R::Elem>> {
    let pr = PolyRing::new(ring);
    RingMatrix::from_fn(n, |i, j| {
        pr.from_coeffs(coeffs.iter().map(|m| m.get(i, j).clone()).collect())
    })
}

/// Coefficient data of the symmetric characteristic polynomial and of the
/// commutator parts `C(t)`, `D(t)` of `t I_n - A`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyData<E> {
    pub n: usize,
    /// `mu_0, ..., mu_n`, with `mu_n = n!`.
    pub mu: Vec<E>,
    /// `C(0), ..., C(n)`.
    pub c: Vec<RingMatrix<E>>,
    /// `D(0), ..., D(n)`.
    pub d: Vec<RingMatrix<E>>,
}

impl<E: Clone> CharPolyData<E> {
    /// `mu_i`, zero outside `0..=n`.
    pub fn mu_at<R: Ring<Elem = E>>(&self, ring: &R, i: isize) -> E {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.mu.get(i))
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }

    /// `C(i)`, with `C(-1) = C(n+1) = 0`.
    pub fn c_at<R: Ring<Elem = E>>(&self, ring: &R, i: isize) -> RingMatrix<E> {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.c.get(i))
            .cloned()
            .unwrap_or_else(|| zero_matrix(ring, self.n))
    }

    /// `D(i)`, with `D(-1) = D(n+1) = 0`.
    pub fn d_at<R: Ring<Elem = E>>(&self, ring: &R, i: isize) -> RingMatrix<E> {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.d.get(i))
            .cloned()
            .unwrap_or_else(|| zero_matrix(ring, self.n))
    }
}

/// Computes `p(t)`, `C(t)`, `D(t)` over `R[t]` and extracts `mu_i`, `C(i)`, `D(i)`.
pub fn poly_commutator_parts<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> Result<CharPolyData<R::Elem>> {
    let n = a.n();
    let pr = PolyRing::new(ring);
    let parts = commutator_parts(&pr, &char_matrix(ring, a))?;
    debug_assert!(parts
        .c
        .entries()
        .iter()
        .chain(parts.d.entries())
        .all(|p| p.coeffs.len() <= n + 1));
    Ok(CharPolyData {
        n,
        mu: pr.padded(&parts.lambda, n + 1),
        c: matrix_coefficients(ring, &parts.c, n + 1),
        d: matrix_coefficients(ring, &parts.d, n + 1),
    })
}

fn check_dims<E>(a: &RingMatrix<E>, data: &CharPolyData<E>) -> Result<()> {
    if a.n() != data.n {
        return Err(Error::DimensionMismatch {
            expected: data.n,
            found: a.n(),
        });
    }
    Ok(())
}

/// `sum_{i=0}^{n} (mu_i I_n + C(i)) A^i`; zero by the left Cayley-Hamilton identity.
pub fn ch_left_eval<R: Ring>(
    ring: &R,
    a: &RingMatrix<R::Elem>,
    data: &CharPolyData<R::Elem>,
) -> Result<RingMatrix<R::Elem>> {
    check_dims(a, data)?;
    let n = a.n();
    let mut acc = zero_matrix(ring, n);
    let mut power = identity(ring, n);
    for i in 0..=n {
        let coeff = mat_add(ring, &scalar_matrix(ring, n, &data.mu[i]), &data.c[i]);
        acc = mat_add(ring, &acc, &mat_mul(ring, &coeff, &power));
        power = mat_mul(ring, &power, a);
    }
    Ok(acc)
}

/// `sum_{i=0}^{n} A^i (mu_i I_n + D(i))`; zero by the right Cayley-Hamilton identity.
pub fn ch_right_eval<R: Ring>(
    ring: &R,
    a: &RingMatrix<R::Elem>,
    data: &CharPolyData<R::Elem>,
) -> Result<RingMatrix<R::Elem>> {
    check_dims(a, data)?;
    let n = a.n();
    let mut acc = zero_matrix(ring, n);
    for i in 0..=n {
        let coeff = mat_add(ring, &scalar_matrix(ring, n, &data.mu[i]), &data.d[i]);
        acc = mat_add(ring, &acc, &mat_mul(ring, &mat_pow(ring, a, i), &coeff));
    }
    Ok(acc)
}

/// `C(i) - D(i) - A C(i+1) + D(i+1) A`, the coefficient of `t^(i+1)` in
/// `(t I - A) C(t) - D(t) (t I - A)`, for `-1 <= i <= n`.
pub fn telescoped_coefficient<R: Ring>(
    ring: &R,
    a: &RingMatrix<R::Elem>,
    data: &CharPolyData<R::Elem>,
    i: isize,
) -> RingMatrix<R::Elem> {
    let lhs = mat_sub(ring, &data.c_at(ring, i), &data.d_at(ring, i));
    let ac = mat_mul(ring, a, &data.c_at(ring, i + 1));
    let da = mat_mul(ring, &data.d_at(ring, i + 1), a);
    mat_add(ring, &mat_sub(ring, &lhs, &ac), &da)
}

/// `-2 mu_{i+1}^{(1)} A_1`, the graded right-hand side of the telescoped
/// coefficient identity, from an independently computed `p(t)`.
pub fn graded_coefficient_rhs<R: GradedRing>(
    ring: &R,
    a: &RingMatrix<R::Elem>,
    p: &TPoly<R::Elem>,
    i: isize,
) -> RingMatrix<R::Elem> {
    let pr = PolyRing::new(ring);
    let (_, p1) = graded_split_poly(&pr, p);
    let n = a.n();
    // mu_n^{(1)} and mu_{n+1}^{(1)} are zero by convention
    let mu1 = match usize::try_from(i + 1) {
        Ok(k) if k < n => pr.coeff(&p1, k),
        _ => ring.zero(),
    };
    let a1 = odd_matrix(ring, a);
    let minus_two = crate::ring::int(-2);
    a1.map(|x| ring.scale(&ring.mul(&mu1, x), &minus_two))
}

/// `true` iff all matrices in `ms` are zero.
pub fn all_zero<R: Ring>(ring: &R, ms: &[RingMatrix<R::Elem>]) -> bool {
    ms.iter().all(|m| is_zero_matrix(ring, m))
}
