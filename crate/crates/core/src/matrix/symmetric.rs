//! Symmetric determinant, symmetric adjoint and the commutator parts.
//!
//! Products inside each permutation term are always taken in increasing
//! position order `t = 1..n`; over a noncommutative ring that order is part
//! of the definition.

use num_traits::Zero;
use rayon::prelude::*;

use super::{mat_mul, mat_scale, mat_sub, scalar_matrix, RingMatrix};
use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::ring::{int, Rational, Ring};

/// Which of the two equivalent double sums evaluates `sdet`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SdetFormula {
    /// `sum over tau, rho of sgn(rho) a[tau(1), rho(tau(1))] ... a[tau(n), rho(tau(n))]`
    TauRho,
    /// `sum over alpha, beta of sgn(alpha) sgn(beta) a[alpha(1), beta(1)] ... a[alpha(n), beta(n)]`
    #[default]
    AlphaBeta,
}

/// Pair counts above this are summed in parallel.
const PARALLEL_THRESHOLD: usize = 2000;

type Signed = Vec<(Permutation, i32)>;

fn signed_perms(n: usize) -> Result<Signed> {
    if n == 0 {
        return Ok(vec![(Permutation::identity(0), 1)]);
    }
    perm::signed(n)
}

/// `sum sgn(alpha) sgn(beta) prod_{t != skip} a[alpha(t), beta(t)]`
fn alpha_beta_sum<R: Ring>(
    ring: &R,
    a: &RingMatrix<R::Elem>,
    alphas: &[&(Permutation, i32)],
    betas: &[&(Permutation, i32)],
    skip: Option<usize>,
) -> R::Elem {
    let n = a.n();
    let row = |(alpha, sa): &(Permutation, i32)| {
        let mut acc = ring.zero();
        for (beta, sb) in betas.iter().map(|p| (&p.0, p.1)) {
            let mut term = ring.one();
            for t in (0..n).filter(|&t| Some(t) != skip) {
                term = ring.mul(&term, a.get(alpha.apply(t), beta.apply(t)));
                if ring.is_zero(&term) {
                    break;
                }
            }
            if ring.is_zero(&term) {
                continue;
            }
            if sa * sb < 0 {
                term = ring.neg(&term);
            }
            ring.add_assign(&mut acc, &term);
        }
        acc
    };
    if alphas.len() * betas.len() > PARALLEL_THRESHOLD {
        let partial: Vec<R::Elem> = alphas.par_iter().map(|p| row(p)).collect();
        ring.sum(&partial)
    } else {
        ring.sum(&alphas.iter().map(|p| row(p)).collect::<Vec<_>>())
    }
}

fn tau_rho_sum<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, perms: &Signed) -> R::Elem {
    let n = a.n();
    let mut acc = ring.zero();
    for (tau, _) in perms {
        for (rho, s) in perms {
            let mut term = ring.one();
            for t in 0..n {
                let i = tau.apply(t);
                term = ring.mul(&term, a.get(i, rho.apply(i)));
                if ring.is_zero(&term) {
                    break;
                }
            }
            if ring.is_zero(&term) {
                continue;
            }
            if *s < 0 {
                term = ring.neg(&term);
            }
            ring.add_assign(&mut acc, &term);
        }
    }
    acc
}

/// The symmetric determinant, via the default (alpha, beta) double sum.
pub fn sdet<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> Result<R::Elem> {
    sdet_with(ring, a, SdetFormula::AlphaBeta)
}

pub fn sdet_with<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, formula: SdetFormula) -> Result<R::Elem> {
    let perms = signed_perms(a.n())?;
    Ok(match formula {
        SdetFormula::AlphaBeta => {
            let all: Vec<_> = perms.iter().collect();
            alpha_beta_sum(ring, a, &all, &all, None)
        }
        SdetFormula::TauRho => tau_rho_sum(ring, a, &perms),
    })
}

/// The symmetric adjoint `A*`: entry `(r, s)` sums over `alpha(s) = s`,
/// `beta(s) = r`, omitting position `s` from each product.
pub fn sadj<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> Result<RingMatrix<R::Elem>> {
    let n = a.n();
    let perms = signed_perms(n)?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for s in 0..n {
            let alphas: Vec<_> = perms.iter().filter(|(p, _)| p.apply(s) == s).collect();
            let betas: Vec<_> = perms.iter().filter(|(p, _)| p.apply(s) == r).collect();
            row.push(alpha_beta_sum(ring, a, &alphas, &betas, Some(s)));
        }
        rows.push(row);
    }
    RingMatrix::from_rows(rows)
}

/// `(-1)^(r+s) sdet(A_{s,r})`, where `A_{s,r}` drops row `s` and column `r`.
pub fn sadj_minor<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, r: usize, s: usize) -> Result<R::Elem> {
    let m = a.minor(s, r)?;
    let d = sdet_with(ring, &m, SdetFormula::AlphaBeta)?;
    Ok(if (r + s).is_multiple_of(2) { d } else { ring.neg(&d) })
}

/// Left and right commutator parts of a matrix together with `lambda = sdet(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorParts<E> {
    /// `n A* A - lambda I`
    pub c: RingMatrix<E>,
    /// `n A A* - lambda I`
    pub d: RingMatrix<E>,
    pub lambda: E,
    /// The symmetric adjoint used to build `c` and `d`.
    pub adjoint: RingMatrix<E>,
}

pub fn commutator_parts<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> Result<CommutatorParts<R::Elem>> {
    let n = a.n();
    let adjoint = sadj(ring, a)?;
    let lambda = sdet(ring, a)?;
    let nn = int(n as i64);
    let li = scalar_matrix(ring, n, &lambda);
    let c = mat_sub(ring, &mat_scale(ring, &mat_mul(ring, &adjoint, a), &nn), &li);
    let d = mat_sub(ring, &mat_scale(ring, &mat_mul(ring, a, &adjoint), &nn), &li);
    Ok(CommutatorParts { c, d, lambda, adjoint })
}

/// `P A P^{-1}` for an invertible rational matrix `P`.
pub fn conjugate<R: Ring>(ring: &R, p: &RingMatrix<Rational>, a: &RingMatrix<R::Elem>) -> Result<RingMatrix<R::Elem>> {
    let n = a.n();
    if p.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.n(),
        });
    }
    let p_inv = super::inverse(p)?;
    Ok(RingMatrix::from_fn(n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..n {
            for l in 0..n {
                let coeff = p.get(i, k) * p_inv.get(l, j);
                if coeff.is_zero() {
                    continue;
                }
                ring.add_assign(&mut acc, &ring.scale(a.get(k, l), &coeff));
            }
        }
        acc
    }))
}
