//! The free associative algebra `Q<x_1, ..., x_g>` over the rationals.
//!
//! Elements are finite maps from words to nonzero rational coefficients.
//! Words are ordered by length and then lexicographically by generator id,
//! generator ids being assigned in declaration order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Rational, Ring};

pub type GenId = u32;

/// A monomial of the free algebra; the empty word is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<GenId>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word rotated left by `k` letters.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        let len = v.len();
        if len > 0 {
            v.rotate_left(k % len);
        }
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The least rotation of `w`: the canonical representative of its cyclic class.
pub fn cyclic_class_key(w: &Word) -> Word {
    (0..w.len().max(1)).map(|k| w.rotate(k)).min().unwrap_or_default()
}

/// An element of the free algebra, in canonical form (no zero coefficients).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), Rational::one())
    }

    pub fn monomial(word: Word, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, w: Word, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn letters(&self) -> impl Iterator<Item = GenId> + '_ {
        self.terms.keys().flat_map(|w| w.0.iter().copied())
    }

    fn product(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

/// `true` iff `p` lies in the Q-span of the commutators `uv - vu` of words.
///
/// Over Q this holds exactly when, for every cyclic class of words, the
/// coefficients of the words in that class sum to zero.
pub fn is_commutator_sum(p: &NcPoly) -> bool {
    let mut classes: HashMap<Word, Rational> = HashMap::new();
    for (w, c) in p.terms() {
        *classes.entry(cyclic_class_key(w)).or_insert_with(Rational::zero) += c;
    }
    classes.values().all(Zero::is_zero)
}

/// The free algebra on a fixed, ordered table of named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAlgebra {
    names: Arc<[String]>,
}

impl FreeAlgebra {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// The generators `a, b, c, d` for `n = 2`, and `a11, a12, ..., ann`
    /// otherwise, one per entry of an `n x n` matrix in row-major order.
    pub fn matrix_entries(n: usize) -> Self {
        let names: Vec<String> = if n == 2 {
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).flat_map(|i| (1..=n).map(move |j| format!("a{i}{j}"))).collect()
        };
        Self { names: names.into() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name).map(|i| i as GenId)
    }

    pub fn name(&self, id: GenId) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }

    pub fn generator(&self, id: GenId) -> Result<NcPoly> {
        if (id as usize) < self.names.len() {
            Ok(NcPoly::monomial(Word(vec![id]), Rational::one()))
        } else {
            Err(Error::UnknownGenerator(id))
        }
    }

    pub fn generators(&self) -> Vec<NcPoly> {
        (0..self.names.len() as GenId)
            .map(|i| NcPoly::monomial(Word(vec![i]), Rational::one()))
            .collect()
    }

    pub fn word(&self, letters: &[GenId]) -> Result<NcPoly> {
        let p = NcPoly::monomial(Word(letters.to_vec()), Rational::one());
        self.check(&p)?;
        Ok(p)
    }

    /// Fails if `p` mentions a generator this algebra does not declare.
    pub fn check(&self, p: &NcPoly) -> Result<()> {
        match p.letters().find(|&g| g as usize >= self.names.len()) {
            Some(g) => Err(Error::UnknownGenerator(g)),
            None => Ok(()),
        }
    }

    /// Product by word concatenation, rejecting foreign generators.
    pub fn nc_mul(&self, p: &NcPoly, q: &NcPoly) -> Result<NcPoly> {
        self.check(p)?;
        self.check(q)?;
        Ok(p.product(q))
    }

    /// Image of `p` under the unital homomorphism into `target` that sends
    /// each generator to its assigned value.
    pub fn substitute<T: Ring>(&self, p: &NcPoly, target: &T, assignment: &HashMap<GenId, T::Elem>) -> Result<T::Elem> {
        let mut acc = target.zero();
        for (w, c) in p.terms() {
            let mut term = target.one();
            for g in w.letters() {
                let image = assignment.get(g).ok_or_else(|| {
                    Error::MissingAssignment(self.name(*g).map_or_else(|| format!("#{g}"), str::to_string))
                })?;
                term = target.mul(&term, image);
            }
            target.add_assign(&mut acc, &target.scale(&term, c));
        }
        Ok(acc)
    }
}

impl Ring for FreeAlgebra {
    type Elem = NcPoly;

    fn zero(&self) -> NcPoly {
        NcPoly::zero()
    }
    fn one(&self) -> NcPoly {
        NcPoly::one()
    }
    fn add(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }
    fn add_assign(&self, acc: &mut NcPoly, b: &NcPoly) {
        for (w, c) in b.terms() {
            acc.add_term(w.clone(), c);
        }
    }
    fn neg(&self, a: &NcPoly) -> NcPoly {
        NcPoly {
            terms: a.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
    fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        a.product(b)
    }
    fn scale(&self, a: &NcPoly, q: &Rational) -> NcPoly {
        if q.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: a.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect(),
        }
    }
    fn is_zero(&self, a: &NcPoly) -> bool {
        a.is_zero()
    }
}
