//! The exterior algebra `E(k) = Q<v_1, ..., v_k | v_i v_j + v_j v_i = 0>` of
//! finite rank `k <= 64`, with its even/odd grading.
//!
//! A blade (square-free sorted monomial) is stored as a bitmask, bit `i - 1`
//! standing for `v_i`. Blades are ordered by length and then by their index
//! lists lexicographically, which is also the printing order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::{int, GradedRing, Rational, Ring};

pub const MAX_RANK: u32 = 64;

/// Range of the nonzero integer coefficients drawn by [`Grassmann::random_element`].
pub const RANDOM_COEFF_BOUND: i64 = 3;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Blade(u64);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    /// Builds a blade from strictly increasing 1-based indices.
    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        let mut last = 0;
        for &i in indices {
            if i <= last || i > MAX_RANK {
                return Err(Error::InvalidBlade);
            }
            bits |= 1 << (i - 1);
            last = i;
        }
        Ok(Blade(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Strictly increasing 1-based generator indices.
    pub fn indices(self) -> Vec<u32> {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_even(self) -> bool {
        self.len().is_multiple_of(2)
    }

    /// Highest generator index present (0 for the unit).
    pub fn top(self) -> u32 {
        64 - self.0.leading_zeros()
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the lowest differing index belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Product of two blades: `None` when they share a generator, otherwise the
/// sign of the merging shuffle together with the merged blade.
pub fn blade_mul(a: Blade, b: Blade) -> Option<(i8, Blade)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a.0 >> j).count_ones();
        rest &= rest - 1;
    }
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, Blade(a.0 | b.0)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannElem {
    rank: u32,
    terms: BTreeMap<Blade, Rational>,
}

impl GrassmannElem {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: Blade) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, b: Blade, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
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

    fn filtered(&self, even: bool) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.is_even() == even)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    fn product(&self, other: &Self) -> Self {
        let mut out = Self {
            rank: self.rank,
            terms: BTreeMap::new(),
        };
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((sign, blade)) = blade_mul(*a, *b) {
                    let c = x * y;
                    out.add_term(blade, &if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }
}

/// The exterior algebra of a fixed rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grassmann {
    rank: u32,
}

impl Grassmann {
    pub fn new(rank: u32) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        Ok(Self { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `v_index`, 1-based.
    pub fn generator(&self, index: u32) -> Result<GrassmannElem> {
        if index == 0 || index > self.rank {
            return Err(Error::GeneratorOutOfRank { index, rank: self.rank });
        }
        self.blade(&[index])
    }

    /// The monomial `v_i1 v_i2 ... v_ir` for strictly increasing indices.
    pub fn blade(&self, indices: &[u32]) -> Result<GrassmannElem> {
        let b = Blade::from_indices(indices)?;
        self.term(b, Rational::one())
    }

    pub fn term(&self, b: Blade, c: Rational) -> Result<GrassmannElem> {
        if b.top() > self.rank {
            return Err(Error::GeneratorOutOfRank {
                index: b.top(),
                rank: self.rank,
            });
        }
        let mut e = self.zero();
        e.add_term(b, &c);
        Ok(e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, Rational)>>(&self, terms: I) -> Result<GrassmannElem> {
        let mut e = self.zero();
        for (b, c) in terms {
            if b.top() > self.rank {
                return Err(Error::GeneratorOutOfRank {
                    index: b.top(),
                    rank: self.rank,
                });
            }
            e.add_term(b, &c);
        }
        Ok(e)
    }

    pub fn g_mul(&self, g: &GrassmannElem, h: &GrassmannElem) -> Result<GrassmannElem> {
        for x in [g, h] {
            if x.rank != self.rank {
                return Err(Error::RankMismatch(self.rank, x.rank));
            }
        }
        Ok(g.product(h))
    }

    /// `(even, odd)` components by blade-length parity.
    pub fn grading_split(&self, g: &GrassmannElem) -> (GrassmannElem, GrassmannElem) {
        (g.filtered(true), g.filtered(false))
    }

    /// Membership in `[E, E]`, which is spanned by the even blades of length
    /// at least two (`[r1, s1] = 2 r1 s1` for odd `r1, s1`).
    pub fn is_commutator_sum(&self, g: &GrassmannElem) -> bool {
        g.terms().all(|(b, _)| b.is_even() && !b.is_empty())
    }

    /// A random element with `terms` drawn terms: blades uniform among those of
    /// length at most `max_blade_len`, coefficients uniform in `[-3, 3] \ {0}`.
    /// Repeated blades are summed.
    pub fn random_element<G: Rng + ?Sized>(
        &self,
        max_blade_len: u32,
        terms: usize,
        rng: &mut G,
    ) -> Result<GrassmannElem> {
        if max_blade_len > self.rank {
            return Err(Error::GeneratorOutOfRank {
                index: max_blade_len,
                rank: self.rank,
            });
        }
        let counts: Vec<u128> = (0..=max_blade_len).map(|l| binomial(self.rank, l)).collect();
        let total: u128 = counts.iter().sum();
        let mut e = self.zero();
        for _ in 0..terms {
            let mut pick = rng.gen_range(0..total);
            let mut len = 0;
            while pick >= counts[len as usize] {
                pick -= counts[len as usize];
                len += 1;
            }
            let bits = sample(rng, self.rank as usize, len as usize)
                .into_iter()
                .fold(0u64, |acc, i| acc | 1 << i);
            let mut c = rng.gen_range(-RANDOM_COEFF_BOUND..RANDOM_COEFF_BOUND);
            if c >= 0 {
                c += 1;
            }
            e.add_term(Blade(bits), &int(c));
        }
        Ok(e)
    }

    pub fn random_element_seeded(&self, max_blade_len: u32, terms: usize, seed: u64) -> Result<GrassmannElem> {
        self.random_element(max_blade_len, terms, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl Ring for Grassmann {
    type Elem = GrassmannElem;

    fn zero(&self) -> GrassmannElem {
        GrassmannElem {
            rank: self.rank,
            terms: BTreeMap::new(),
        }
    }
    fn one(&self) -> GrassmannElem {
        let mut e = self.zero();
        e.add_term(Blade::UNIT, &Rational::one());
        e
    }
    fn add(&self, a: &GrassmannElem, b: &GrassmannElem) -> GrassmannElem {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }
    fn add_assign(&self, acc: &mut GrassmannElem, b: &GrassmannElem) {
        for (blade, c) in &b.terms {
            acc.add_term(*blade, c);
        }
    }
    fn neg(&self, a: &GrassmannElem) -> GrassmannElem {
        GrassmannElem {
            rank: a.rank,
            terms: a.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }
    fn mul(&self, a: &GrassmannElem, b: &GrassmannElem) -> GrassmannElem {
        debug_assert_eq!(a.rank, b.rank);
        a.product(b)
    }
    fn scale(&self, a: &GrassmannElem, q: &Rational) -> GrassmannElem {
        if q.is_zero() {
            return self.zero();
        }
        GrassmannElem {
            rank: a.rank,
            terms: a.terms.iter().map(|(b, c)| (*b, c * q)).collect(),
        }
    }
    fn is_zero(&self, a: &GrassmannElem) -> bool {
        a.is_zero()
    }
}

impl GradedRing for Grassmann {
    fn even_part(&self, a: &GrassmannElem) -> GrassmannElem {
        a.filtered(true)
    }
    fn odd_part(&self, a: &GrassmannElem) -> GrassmannElem {
        a.filtered(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{commutator, left_normed};
    use proptest::prelude::*;

    fn blade(ix: &[u32]) -> Blade {
        Blade::from_indices(ix).unwrap()
    }

    #[test]
    fn blade_products() {
        assert_eq!(blade_mul(blade(&[2]), blade(&[1])), Some((-1, blade(&[1, 2]))));
        assert_eq!(blade_mul(blade(&[1]), blade(&[1])), None);
        assert_eq!(
            blade_mul(blade(&[1, 2]), blade(&[3, 4])),
            Some((1, blade(&[1, 2, 3, 4])))
        );
        assert_eq!(
            blade_mul(blade(&[2, 4]), blade(&[1, 3])),
            Some((-1, blade(&[1, 2, 3, 4])))
        );
    }

    #[test]
    fn blade_order_is_length_then_lex() {
        let mut v = vec![
            blade(&[2, 3]),
            blade(&[4]),
            blade(&[1, 4]),
            Blade::UNIT,
            blade(&[1, 2]),
            blade(&[1]),
        ];
        v.sort();
        let idx: Vec<Vec<u32>> = v.into_iter().map(Blade::indices).collect();
        assert_eq!(idx, vec![vec![], vec![1], vec![4], vec![1, 2], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn invalid_blades_are_rejected() {
        assert_eq!(Blade::from_indices(&[2, 1]), Err(Error::InvalidBlade));
        assert_eq!(Blade::from_indices(&[0]), Err(Error::InvalidBlade));
        let e = Grassmann::new(4).unwrap();
        assert!(e.generator(5).is_err());
        assert!(Grassmann::new(65).is_err());
    }

    #[test]
    fn commutator_of_generators_doubles() {
        let e = Grassmann::new(2).unwrap();
        let (v1, v2) = (e.generator(1).unwrap(), e.generator(2).unwrap());
        assert_eq!(commutator(&e, &v1, &v2), e.scale(&e.blade(&[1, 2]).unwrap(), &int(2)));
    }

    #[test]
    fn chain_with_two_commutators() {
        let e = Grassmann::new(4).unwrap();
        let v: Vec<_> = (1..=4).map(|i| e.generator(i).unwrap()).collect();
        let lhs = e
            .g_mul(&commutator(&e, &v[0], &v[1]), &commutator(&e, &v[2], &v[3]))
            .unwrap();
        assert_eq!(lhs, e.scale(&e.blade(&[1, 2, 3, 4]).unwrap(), &int(4)));
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let e2 = Grassmann::new(2).unwrap();
        let e3 = Grassmann::new(3).unwrap();
        assert_eq!(e2.g_mul(&e2.one(), &e3.one()), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn grading_split_examples() {
        let e = Grassmann::new(2).unwrap();
        let v1 = e.generator(1).unwrap();
        let v12 = e.blade(&[1, 2]).unwrap();
        assert_eq!(e.grading_split(&e.add(&v1, &v12)), (v12, v1));
        assert_eq!(e.grading_split(&e.one()), (e.one(), e.zero()));
        assert_eq!(e.grading_split(&e.zero()), (e.zero(), e.zero()));
    }

    #[test]
    fn random_elements_are_reproducible() {
        let e = Grassmann::new(4).unwrap();
        let a = e.random_element_seeded(2, 3, 17).unwrap();
        assert_eq!(a, e.random_element_seeded(2, 3, 17).unwrap());
        assert!(a
            .terms()
            .all(|(b, c)| b.len() <= 2 && c.numer().magnitude() <= &3u32.into()));
        assert!(e.random_element_seeded(2, 0, 17).unwrap().is_zero());
        let odd = e.odd_part(&a);
        assert!(e.g_mul(&odd, &odd).unwrap().is_zero());
    }

    fn elem(rank: u32) -> impl Strategy<Value = GrassmannElem> {
        (any::<u64>(), 0usize..5).prop_map(move |(seed, terms)| {
            Grassmann::new(rank)
                .unwrap()
                .random_element_seeded(3, terms, seed)
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn grading_contract(g in elem(8), h in elem(8), f in elem(8)) {
            let e = Grassmann::new(8).unwrap();
            let g0 = e.even_part(&g);
            let g1 = e.odd_part(&g);
            prop_assert_eq!(e.add(&g0, &g1), g.clone());
            prop_assert_eq!(e.mul(&g0, &h), e.mul(&h, &g0));
            prop_assert!(e.mul(&g1, &g1).is_zero());
            let h1 = e.odd_part(&h);
            prop_assert!(e.add(&e.mul(&g1, &h1), &e.mul(&h1, &g1)).is_zero());
            prop_assert!(left_normed(&e, &[g, h, f]).unwrap().is_zero());
        }

        #[test]
        fn associativity_and_distributivity(g in elem(6), h in elem(6), f in elem(6)) {
            let e = Grassmann::new(6).unwrap();
            prop_assert_eq!(e.mul(&e.mul(&g, &h), &f), e.mul(&g, &e.mul(&h, &f)));
            prop_assert_eq!(e.mul(&g, &e.add(&h, &f)), e.add(&e.mul(&g, &h), &e.mul(&g, &f)));
            prop_assert_eq!(e.mul(&e.one(), &g), g);
        }
    }
}
