//! The symmetric group `S_n`: enumeration in lexicographic order and signs.
//!
//! Symmetric determinants sum over `(n!)^2` permutation pairs, so the
//! dimension is capped (6 by default). The cap can be raised, never lowered,
//! through the `NCCH_MAX_N` environment variable.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: usize = 6;

/// Largest matrix dimension accepted by the permutation-sum kernels.
pub fn max_dimension() -> usize {
    std::env::var("NCCH_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_MAX_N, |v| v.max(DEFAULT_MAX_N))
}

pub fn check_dimension(n: usize) -> Result<()> {
    let cap = max_dimension();
    if n > cap {
        Err(Error::DimensionCap { n, cap })
    } else {
        Ok(())
    }
}

/// A permutation of `{0, ..., n-1}`; `images[i]` is the image of `i`.
///
/// Displayed 1-based in one-line notation, e.g. `(2 1 3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0, ..., n-1}`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i, j);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// Parity sign, `(-1)^(n - number of cycles)`.
    pub fn sign(&self) -> i32 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Advances to the next permutation in lexicographic order.
    fn advance(&mut self) -> bool {
        let v = &mut self.images;
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

/// All `n!` permutations of degree `n`, in lexicographic order of their
/// image arrays (identity first).
pub fn enumerate(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    check_dimension(n)?;
    let mut out = Vec::with_capacity((1..=n).product());
    let mut p = Permutation::identity(n);
    loop {
        out.push(p.clone());
        if !p.advance() {
            break;
        }
    }
    Ok(out)
}

/// `enumerate(n)` paired with each permutation's sign.
pub fn signed(n: usize) -> Result<Vec<(Permutation, i32)>> {
    Ok(enumerate(n)?
        .into_iter()
        .map(|p| {
            let s = p.sign();
            (p, s)
        })
        .collect())
}
