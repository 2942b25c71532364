//! Mechanical verification of the identities satisfied by symmetric
//! determinants, adjoints and commutator parts.
//!
//! Every check builds instances (one fully symbolic matrix over the free
//! algebra, or seeded random matrices over a Grassmann algebra or the
//! rationals), evaluates both sides of an identity through separate code
//! paths and compares them exactly. A failing check records the first
//! counterexample as a replayable source document.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::exprparse::{format_element, format_matrix_inline, format_source, parse_matrix, RingDecl, TextRing};
use crate::freealg::{is_commutator_sum, FreeAlgebra, NcPoly, Word};
use crate::grassmann::Grassmann;
use crate::matrix::{
    self, commutator_parts, conjugate, is_zero_matrix, mat_add, mat_mul, mat_pow, mat_sub, matrix_ring_embed,
    odd_matrix, sadj, sadj_minor, sdet, sdet_with, trace, RingMatrix, SdetFormula,
};
use crate::perm;
use crate::ring::{commutator, engel, int, left_normed, leibniz_expand, GradedRing, Rational, Rationals, Ring};
use crate::tpoly::{
    ch_left_eval, ch_right_eval, graded_coefficient_rhs, poly_commutator_parts, sym_char_poly, telescoped_coefficient,
};

pub const REPORT_SCHEMA: u32 = 1;

/// Which scalar ring instances are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    /// One distinct free generator per matrix entry.
    Free,
    /// Random elements of the rank-`k` Grassmann algebra.
    Grassmann(u32),
    /// Random small integers.
    Rational,
    /// Upper triangular 2x2 rational matrices.
    U2,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Free => write!(f, "free"),
            RingKind::Grassmann(k) => write!(f, "grassmann:{k}"),
            RingKind::Rational => write!(f, "rational"),
            RingKind::U2 => write!(f, "u2"),
        }
    }
}

impl FromStr for RingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "free" => Ok(RingKind::Free),
            "rational" => Ok(RingKind::Rational),
            "u2" => Ok(RingKind::U2),
            _ => s
                .strip_prefix("grassmann:")
                .and_then(|k| k.parse().ok())
                .map(RingKind::Grassmann)
                .ok_or_else(|| format!("unknown ring `{s}` (expected free, grassmann:K, rational or u2)")),
        }
    }
}

/// Deliberate corruption of a kernel, used to test that checks can fail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Adds one to every symmetric determinant seen by `trace_sdet`.
    CorruptSdet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub ring: RingKind,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Longest blade of random Grassmann entries.
    pub max_blade_len: u32,
    /// Terms drawn per random entry.
    pub terms_per_entry: usize,
    /// Longest word of random free-algebra elements; also the largest `s`
    /// and `m` tried by the Leibniz check.
    pub max_word_len: usize,
    /// Exponent `d` tried by the `power_probe` check.
    pub probe_power: usize,
    pub fault: Fault,
}

impl CheckConfig {
    pub fn new(ring: RingKind, n: usize) -> Self {
        Self {
            ring,
            n,
            trials: 20,
            seed: 0,
            max_blade_len: 2,
            terms_per_entry: 3,
            max_word_len: 3,
            probe_power: 2,
            fault: Fault::None,
        }
    }

    /// Grassmann instances of rank `2n`.
    pub fn grassmann(n: usize) -> Self {
        Self::new(RingKind::Grassmann(2 * n as u32), n)
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.n == 0 {
            return Err("n must be at least 1".into());
        }
        perm::check_dimension(self.n).map_err(|e| e.to_string())?;
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if let RingKind::Grassmann(k) = self.ring {
            Grassmann::new(k).map_err(|e| e.to_string())?;
            if self.max_blade_len > k {
                return Err(format!("max blade length {} exceeds rank {k}", self.max_blade_len));
            }
        }
        if self.probe_power == 0 {
            return Err("probe power must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not run (invalid configuration or unsupported ring).
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// 0-based index of the failing trial.
    pub trial: usize,
    /// Source document of the failing instance, replayable with `ncch compute`.
    pub instance: String,
    pub detail: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub check: String,
    pub status: Status,
    pub ring: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ring={} n={} trials={} seed={} ({} ms)",
            self.status, self.check, self.ring, self.n, self.trials, self.seed, self.millis
        )?;
        if let Some(e) = &self.error {
            write!(f, "\n  error: {e}")?;
        }
        if let Some(cx) = &self.counterexample {
            write!(f, "\n  trial {}: {}", cx.trial, cx.detail)?;
            write!(f, "\n  lhs: {}\n  rhs: {}", cx.lhs, cx.rhs)?;
            write!(f, "\n  instance:")?;
            for line in cx.instance.lines() {
                write!(f, "\n    {line}")?;
            }
        }
        Ok(())
    }
}

/// Short alternative names accepted by [`Check::from_name`].
pub const ALIASES: [(&str, Check); 8] = [
    ("thm22", Check::EngelProduct),
    ("thm23", Check::AcDa),
    ("thm23_engel2", Check::AcDaSquare),
    ("thm24_probe", Check::PowerProbe),
    ("thm25", Check::AcDaGraded),
    ("thm31", Check::Coefficients),
    ("thm31_corollary", Check::CoefficientSquares),
    ("u2_remark", Check::UpperTriangular),
];

/// The verification checks, in registration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    TraceSdet,
    SdetFormulas,
    CommutatorParts,
    AcDa,
    AcDaSquare,
    AcDaGraded,
    EngelProduct,
    Leibniz,
    Conjugation,
    ChLeft,
    ChRight,
    Coefficients,
    CoefficientSquares,
    UpperTriangular,
    GrassmannChain,
    PowerProbe,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::TraceSdet,
        Check::SdetFormulas,
        Check::CommutatorParts,
        Check::AcDa,
        Check::AcDaSquare,
        Check::AcDaGraded,
        Check::EngelProduct,
        Check::Leibniz,
        Check::Conjugation,
        Check::ChLeft,
        Check::ChRight,
        Check::Coefficients,
        Check::CoefficientSquares,
        Check::UpperTriangular,
        Check::GrassmannChain,
        Check::PowerProbe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::TraceSdet => "trace_sdet",
            Check::SdetFormulas => "sdet_formulas",
            Check::CommutatorParts => "commutator_parts",
            Check::AcDa => "ac_minus_da",
            Check::AcDaSquare => "ac_minus_da_square",
            Check::AcDaGraded => "ac_minus_da_graded",
            Check::EngelProduct => "engel_product",
            Check::Leibniz => "leibniz",
            Check::Conjugation => "conjugation",
            Check::ChLeft => "ch_left",
            Check::ChRight => "ch_right",
            Check::Coefficients => "coefficient_identity",
            Check::CoefficientSquares => "coefficient_square",
            Check::UpperTriangular => "upper_triangular",
            Check::GrassmannChain => "grassmann_chain",
            Check::PowerProbe => "power_probe",
        }
    }

    /// Looks up a check by its name or by one of its short aliases.
    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .or_else(|| ALIASES.iter().find(|(a, _)| *a == name).map(|(_, c)| *c))
    }

    /// Whether `--check all` includes this check (all but the power probe).
    pub fn in_all(self) -> bool {
        self != Check::PowerProbe
    }

    /// Checks whose instances ignore the configured ring.
    pub fn ring_independent(self) -> bool {
        matches!(self, Check::Leibniz | Check::UpperTriangular | Check::GrassmannChain)
    }

    pub fn supports(self, ring: RingKind) -> bool {
        if self.ring_independent() {
            return true;
        }
        match self {
            Check::AcDaSquare
            | Check::AcDaGraded
            | Check::Coefficients
            | Check::CoefficientSquares
            | Check::EngelProduct => {
                matches!(ring, RingKind::Grassmann(_) | RingKind::Rational)
            }
            _ => !matches!(ring, RingKind::U2),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A scalar ring that verification instances can be drawn from.
pub trait CheckRing: TextRing {
    fn decl(&self) -> RingDecl;

    /// Symbolic instances are universal, so one trial suffices.
    fn is_symbolic(&self) -> bool {
        false
    }

    fn instance_matrix<G: Rng>(
        &self,
        n: usize,
        cfg: &CheckConfig,
        rng: &mut G,
    ) -> crate::Result<RingMatrix<Self::Elem>>;

    fn random_elem<G: Rng>(&self, cfg: &CheckConfig, rng: &mut G) -> crate::Result<Self::Elem>;

    /// Membership in the additive span of commutators `[u, v]`.
    fn in_commutator_span(&self, e: &Self::Elem) -> bool;
}

fn nonzero_coeff<G: Rng>(rng: &mut G, bound: i64) -> i64 {
    let c = rng.gen_range(-bound..bound);
    if c >= 0 {
        c + 1
    } else {
        c
    }
}

impl CheckRing for FreeAlgebra {
    fn decl(&self) -> RingDecl {
        RingDecl::Free(self.names().to_vec())
    }

    fn is_symbolic(&self) -> bool {
        true
    }

    fn instance_matrix<G: Rng>(&self, n: usize, _cfg: &CheckConfig, _rng: &mut G) -> crate::Result<RingMatrix<NcPoly>> {
        if self.num_generators() < n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: self.num_generators(),
            });
        }
        let g = self.generators();
        Ok(RingMatrix::from_fn(n, |i, j| g[i * n + j].clone()))
    }

    fn random_elem<G: Rng>(&self, cfg: &CheckConfig, rng: &mut G) -> crate::Result<NcPoly> {
        let gens = self.num_generators() as u32;
        Ok(NcPoly::from_terms((0..cfg.terms_per_entry).map(|_| {
            let len = rng.gen_range(0..=cfg.max_word_len);
            let w = Word::new((0..len).map(|_| rng.gen_range(0..gens)).collect());
            (w, int(nonzero_coeff(rng, 3)))
        })))
    }

    fn in_commutator_span(&self, e: &NcPoly) -> bool {
        is_commutator_sum(e)
    }
}

impl CheckRing for Grassmann {
    fn decl(&self) -> RingDecl {
        RingDecl::Grassmann(self.rank())
    }

    fn instance_matrix<G: Rng>(
        &self,
        n: usize,
        cfg: &CheckConfig,
        rng: &mut G,
    ) -> crate::Result<RingMatrix<Self::Elem>> {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let row: crate::Result<Vec<_>> = (0..n).map(|_| self.random_elem(cfg, rng)).collect();
            rows.push(row?);
        }
        RingMatrix::from_rows(rows)
    }

    fn random_elem<G: Rng>(&self, cfg: &CheckConfig, rng: &mut G) -> crate::Result<Self::Elem> {
        self.random_element(cfg.max_blade_len, cfg.terms_per_entry, rng)
    }

    fn in_commutator_span(&self, e: &Self::Elem) -> bool {
        self.is_commutator_sum(e)
    }
}

/// Bound on the random integer entries of rational instances.
const RATIONAL_ENTRY_BOUND: i64 = 5;

impl CheckRing for Rationals {
    fn decl(&self) -> RingDecl {
        RingDecl::Rational
    }

    fn instance_matrix<G: Rng>(&self, n: usize, cfg: &CheckConfig, rng: &mut G) -> crate::Result<RingMatrix<Rational>> {
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push(self.random_elem(cfg, rng)?);
        }
        Ok(RingMatrix::from_fn(n, |i, j| entries[i * n + j].clone()))
    }

    fn random_elem<G: Rng>(&self, _cfg: &CheckConfig, rng: &mut G) -> crate::Result<Rational> {
        Ok(int(rng.gen_range(-RATIONAL_ENTRY_BOUND..=RATIONAL_ENTRY_BOUND)))
    }

    fn in_commutator_span(&self, e: &Rational) -> bool {
        e.is_zero()
    }
}

/// A failed comparison inside one trial.
#[derive(Debug, Clone)]
struct Mismatch {
    detail: String,
    lhs: String,
    rhs: String,
}

type TrialResult = crate::Result<Option<Mismatch>>;

fn compare_elems<R: TextRing>(ring: &R, detail: &str, lhs: &R::Elem, rhs: &R::Elem) -> Option<Mismatch> {
    (lhs != rhs).then(|| Mismatch {
        detail: detail.to_string(),
        lhs: format_element(ring, lhs),
        rhs: format_element(ring, rhs),
    })
}

fn compare_mats<R: TextRing>(
    ring: &R,
    detail: &str,
    lhs: &RingMatrix<R::Elem>,
    rhs: &RingMatrix<R::Elem>,
) -> Option<Mismatch> {
    (lhs != rhs).then(|| Mismatch {
        detail: detail.to_string(),
        lhs: format_matrix_inline(ring, lhs),
        rhs: format_matrix_inline(ring, rhs),
    })
}

fn expect_zero_mat<R: TextRing>(ring: &R, detail: &str, m: &RingMatrix<R::Elem>) -> Option<Mismatch> {
    (!is_zero_matrix(ring, m)).then(|| Mismatch {
        detail: detail.to_string(),
        lhs: format_matrix_inline(ring, m),
        rhs: "0".into(),
    })
}

/// Every product `m[i][j] * m[k][l]` (ordered pairs, repeats included) must vanish.
fn pairwise_products_vanish<R: TextRing>(ring: &R, what: &str, m: &RingMatrix<R::Elem>) -> Option<Mismatch> {
    let n = m.n();
    for p in 0..n * n {
        for q in 0..n * n {
            let x = m.get(p / n, p % n);
            let y = m.get(q / n, q % n);
            let prod = ring.mul(x, y);
            if !ring.is_zero(&prod) {
                return Some(Mismatch {
                    detail: format!(
                        "{what}: entry ({},{}) times entry ({},{}) is nonzero",
                        p / n + 1,
                        p % n + 1,
                        q / n + 1,
                        q % n + 1
                    ),
                    lhs: format_element(ring, &prod),
                    rhs: "0".into(),
                });
            }
        }
    }
    None
}

/// `[[lambda, a_ij]]`, the entrywise commutator with a scalar.
fn bracket_with<R: Ring>(ring: &R, lambda: &R::Elem, a: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    a.map(|x| commutator(ring, lambda, x))
}

fn first<I: IntoIterator<Item = Option<Mismatch>>>(items: I) -> Option<Mismatch> {
    items.into_iter().flatten().next()
}

struct Trials {
    run: usize,
    counterexample: Option<Counterexample>,
}

/// A property of a single matrix instance over any ring.
trait MatrixProperty {
    /// Whether trials draw randomness beyond the instance matrix itself.
    const EXTRA_RANDOMNESS: bool = false;

    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        rng: &mut ChaCha8Rng,
        cfg: &CheckConfig,
    ) -> TrialResult;
}

/// A property that needs a GL-graded ring.
trait GradedProperty {
    fn check<R: CheckRing + GradedRing>(&self, ring: &R, a: &RingMatrix<R::Elem>, cfg: &CheckConfig) -> TrialResult;
}

fn drive<R, F>(ring: &R, cfg: &CheckConfig, extra: bool, mut body: F) -> crate::Result<Trials>
where
    R: CheckRing,
    F: FnMut(&R, &RingMatrix<R::Elem>, &mut ChaCha8Rng) -> TrialResult,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = if ring.is_symbolic() && !extra { 1 } else { cfg.trials };
    for t in 0..trials {
        let a = ring.instance_matrix(cfg.n, cfg, &mut rng)?;
        if let Some(m) = body(ring, &a, &mut rng)? {
            return Ok(Trials {
                run: t + 1,
                counterexample: Some(Counterexample {
                    trial: t,
                    instance: format_source(&ring.decl(), ring, &a),
                    detail: m.detail,
                    lhs: m.lhs,
                    rhs: m.rhs,
                }),
            });
        }
    }
    Ok(Trials {
        run: trials,
        counterexample: None,
    })
}

fn unsupported(check: Check, ring: RingKind) -> String {
    format!("check {check} does not support ring {ring}")
}

fn run_property<P: MatrixProperty>(check: Check, p: &P, cfg: &CheckConfig) -> Result<Trials, String> {
    let body = |cfg: &CheckConfig| -> crate::Result<Trials> {
        match cfg.ring {
            RingKind::Free => {
                let f = FreeAlgebra::matrix_entries(cfg.n);
                drive(&f, cfg, P::EXTRA_RANDOMNESS, |r, a, rng| p.check(r, a, rng, cfg))
            }
            RingKind::Grassmann(k) => {
                let e = Grassmann::new(k)?;
                drive(&e, cfg, P::EXTRA_RANDOMNESS, |r, a, rng| p.check(r, a, rng, cfg))
            }
            RingKind::Rational => drive(&Rationals, cfg, P::EXTRA_RANDOMNESS, |r, a, rng| {
                p.check(r, a, rng, cfg)
            }),
            RingKind::U2 => unreachable!(),
        }
    };
    if !check.supports(cfg.ring) {
        return Err(unsupported(check, cfg.ring));
    }
    body(cfg).map_err(|e| e.to_string())
}

fn run_graded<P: GradedProperty>(check: Check, p: &P, cfg: &CheckConfig) -> Result<Trials, String> {
    if !check.supports(cfg.ring) {
        return Err(unsupported(check, cfg.ring));
    }
    let res = match cfg.ring {
        RingKind::Grassmann(k) => Grassmann::new(k).and_then(|e| drive(&e, cfg, false, |r, a, _| p.check(r, a, cfg))),
        RingKind::Rational => drive(&Rationals, cfg, false, |r, a, _| p.check(r, a, cfg)),
        _ => unreachable!(),
    };
    res.map_err(|e| e.to_string())
}

struct TraceSdet;

impl MatrixProperty for TraceSdet {
    // tr(A A*) and tr(A* A) use the constrained adjoint sums; sdet uses the full double sum
    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        _: &mut ChaCha8Rng,
        cfg: &CheckConfig,
    ) -> TrialResult {
        let adj = sadj(ring, a)?;
        let mut lambda = sdet(ring, a)?;
        if cfg.fault == Fault::CorruptSdet {
            lambda = ring.add(&lambda, &ring.one());
        }
        let left = trace(ring, &mat_mul(ring, a, &adj));
        let right = trace(ring, &mat_mul(ring, &adj, a));
        Ok(first([
            compare_elems(ring, "tr(A A*) = sdet(A)", &left, &lambda),
            compare_elems(ring, "tr(A* A) = sdet(A)", &right, &lambda),
        ]))
    }
}

struct SdetFormulas;

impl MatrixProperty for SdetFormulas {
    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        _: &mut ChaCha8Rng,
        _: &CheckConfig,
    ) -> TrialResult {
        let ab = sdet_with(ring, a, SdetFormula::AlphaBeta)?;
        let tr = sdet_with(ring, a, SdetFormula::TauRho)?;
        if let Some(m) = compare_elems(ring, "sdet: tau-rho sum = alpha-beta sum", &tr, &ab) {
            return Ok(Some(m));
        }
        let adj = sadj(ring, a)?;
        for r in 0..a.n() {
            for s in 0..a.n() {
                let minor = sadj_minor(ring, a, r, s)?;
                let detail = format!("A*({},{}) = (-1)^(r+s) sdet(A_(s,r))", r + 1, s + 1);
                if let Some(m) = compare_elems(ring, &detail, adj.get(r, s), &minor) {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    }
}

/// The commutator parts of the generic 2x2 matrix `[[a, b], [c, d]]`.
pub const GENERIC_2X2_C: &str = "-[a,d] + [c,b], 2*[d,b]; 2*[a,c], [a,d] - [c,b]";
pub const GENERIC_2X2_D: &str = "[a,d] + [c,b], 2*[b,a]; 2*[c,d], -[a,d] - [c,b]";
pub const GENERIC_2X2_SADJ: &str = "d, -b; -c, a";

struct CommutatorPartsProp;

impl CommutatorPartsProp {
    fn membership<R: CheckRing>(ring: &R, what: &str, m: &RingMatrix<R::Elem>) -> Option<Mismatch> {
        for (k, e) in m.entries().iter().enumerate() {
            if !ring.in_commutator_span(e) {
                return Some(Mismatch {
                    detail: format!(
                        "{what} entry ({},{}) is not a sum of commutators",
                        k / m.n() + 1,
                        k % m.n() + 1
                    ),
                    lhs: format_element(ring, e),
                    rhs: "[R,R]".into(),
                });
            }
        }
        let t = trace(ring, m);
        compare_elems(ring, &format!("tr({what}) = 0"), &t, &ring.zero())
    }
}

impl MatrixProperty for CommutatorPartsProp {
    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        _: &mut ChaCha8Rng,
        _: &CheckConfig,
    ) -> TrialResult {
        let parts = commutator_parts(ring, a)?;
        if let Some(m) = first([
            Self::membership(ring, "C", &parts.c),
            Self::membership(ring, "D", &parts.d),
        ]) {
            return Ok(Some(m));
        }
        if ring.is_symbolic()
            && a.n() == 2
            && ring.decl() == RingDecl::Free(vec!["a".into(), "b".into(), "c".into(), "d".into()])
        {
            let expected_c = parse_matrix(ring, GENERIC_2X2_C)?;
            let expected_d = parse_matrix(ring, GENERIC_2X2_D)?;
            let expected_adj = parse_matrix(ring, GENERIC_2X2_SADJ)?;
            if let Some(m) = first([
                compare_mats(
                    ring,
                    "A* matches the displayed 2x2 adjoint",
                    &parts.adjoint,
                    &expected_adj,
                ),
                compare_mats(ring, "C matches the displayed 2x2 matrix", &parts.c, &expected_c),
                compare_mats(ring, "D matches the displayed 2x2 matrix", &parts.d, &expected_d),
            ]) {
                return Ok(Some(m));
            }
        }
        let data = poly_commutator_parts(ring, a)?;
        for (i, (c, d)) in data.c.iter().zip(&data.d).enumerate() {
            if let Some(m) = first([
                Self::membership(ring, &format!("C({i})"), c),
                Self::membership(ring, &format!("D({i})"), d),
            ]) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

struct AcDa;

impl MatrixProperty for AcDa {
    // lambda for the right-hand side comes from the tau-rho sum, not from commutator_parts
    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        _: &mut ChaCha8Rng,
        _: &CheckConfig,
    ) -> TrialResult {
        let parts = commutator_parts(ring, a)?;
        let lhs = mat_sub(ring, &mat_mul(ring, a, &parts.c), &mat_mul(ring, &parts.d, a));
        let lambda = sdet_with(ring, a, SdetFormula::TauRho)?;
        Ok(compare_mats(
            ring,
            "AC - DA = [[lambda, a_ij]]",
            &lhs,
            &bracket_with(ring, &lambda, a),
        ))
    }
}

fn ac_minus_da<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> crate::Result<RingMatrix<R::Elem>> {
    let parts = commutator_parts(ring, a)?;
    Ok(mat_sub(ring, &mat_mul(ring, a, &parts.c), &mat_mul(ring, &parts.d, a)))
}

struct AcDaSquare;

impl GradedProperty for AcDaSquare {
    fn check<R: CheckRing + GradedRing>(&self, ring: &R, a: &RingMatrix<R::Elem>, _: &CheckConfig) -> TrialResult {
        let m = ac_minus_da(ring, a)?;
        Ok(first([
            pairwise_products_vanish(ring, "AC - DA", &m),
            expect_zero_mat(ring, "(AC - DA)^2 = 0", &mat_mul(ring, &m, &m)),
        ]))
    }
}

struct AcDaGraded;

impl GradedProperty for AcDaGraded {
    fn check<R: CheckRing + GradedRing>(&self, ring: &R, a: &RingMatrix<R::Elem>, _: &CheckConfig) -> TrialResult {
        let lhs = ac_minus_da(ring, a)?;
        let lambda = sdet_with(ring, a, SdetFormula::TauRho)?;
        let lambda1 = ring.odd_part(&lambda);
        let rhs = odd_matrix(ring, a).map(|x| ring.scale(&ring.mul(&lambda1, x), &int(2)));
        Ok(compare_mats(ring, "AC - DA = 2 lambda_1 A_1", &lhs, &rhs))
    }
}

struct Conjugation;

fn random_invertible<G: Rng>(n: usize, rng: &mut G) -> RingMatrix<Rational> {
    loop {
        let p = RingMatrix::from_fn(n, |_, _| int(rng.gen_range(-3..=3)));
        if !matrix::det(&p).is_zero() {
            return p;
        }
    }
}

impl MatrixProperty for Conjugation {
    const EXTRA_RANDOMNESS: bool = true;

    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        rng: &mut ChaCha8Rng,
        _: &CheckConfig,
    ) -> TrialResult {
        let p = random_invertible(a.n(), rng);
        let conj = conjugate(ring, &p, a)?;
        let lhs_adj = sadj(ring, &conj)?;
        let rhs_adj = conjugate(ring, &p, &sadj(ring, a)?)?;
        let lhs_det = sdet(ring, &conj)?;
        let rhs_det = sdet(ring, a)?;
        let with_p = |m: Option<Mismatch>| {
            m.map(|mut m| {
                m.detail = format!("{} with P = [{}]", m.detail, format_matrix_inline(&Rationals, &p));
                m
            })
        };
        Ok(with_p(first([
            compare_mats(ring, "(P A P^-1)* = P A* P^-1", &lhs_adj, &rhs_adj),
            compare_elems(ring, "sdet(P A P^-1) = sdet(A)", &lhs_det, &rhs_det),
        ])))
    }
}

struct ChEval {
    left: bool,
}

impl MatrixProperty for ChEval {
    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        _: &mut ChaCha8Rng,
        _: &CheckConfig,
    ) -> TrialResult {
        let data = poly_commutator_parts(ring, a)?;
        if self.left {
            Ok(expect_zero_mat(
                ring,
                "sum (mu_i I + C(i)) A^i = 0",
                &ch_left_eval(ring, a, &data)?,
            ))
        } else {
            Ok(expect_zero_mat(
                ring,
                "sum A^i (mu_i I + D(i)) = 0",
                &ch_right_eval(ring, a, &data)?,
            ))
        }
    }
}

struct Coefficients;

impl GradedProperty for Coefficients {
    // C(i), D(i) come from the commutator parts of tI - A; the right-hand side
    // from a separately computed p(t)
    fn check<R: CheckRing + GradedRing>(&self, ring: &R, a: &RingMatrix<R::Elem>, _: &CheckConfig) -> TrialResult {
        let data = poly_commutator_parts(ring, a)?;
        let p = sym_char_poly(ring, a)?;
        let n = a.n() as isize;
        for i in -1..=n {
            let lhs = telescoped_coefficient(ring, a, &data, i);
            let rhs = graded_coefficient_rhs(ring, a, &p, i);
            let detail = format!("C(i) - D(i) - A C(i+1) + D(i+1) A = -2 mu_(i+1)^(1) A_1 at i = {i}");
            if let Some(m) = compare_mats(ring, &detail, &lhs, &rhs) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

struct CoefficientSquares;

impl GradedProperty for CoefficientSquares {
    fn check<R: CheckRing + GradedRing>(&self, ring: &R, a: &RingMatrix<R::Elem>, _: &CheckConfig) -> TrialResult {
        let data = poly_commutator_parts(ring, a)?;
        for i in -1..=a.n() as isize {
            let m = telescoped_coefficient(ring, a, &data, i);
            let what = format!("M({i}) = C(i) - D(i) - A C(i+1) + D(i+1) A");
            if let Some(x) = first([
                pairwise_products_vanish(ring, &what, &m),
                expect_zero_mat(ring, &format!("{what}: M({i})^2 = 0"), &mat_mul(ring, &m, &m)),
            ]) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

struct PowerProbe;

impl MatrixProperty for PowerProbe {
    fn check<R: CheckRing>(
        &self,
        ring: &R,
        a: &RingMatrix<R::Elem>,
        _: &mut ChaCha8Rng,
        cfg: &CheckConfig,
    ) -> TrialResult {
        let m = ac_minus_da(ring, a)?;
        let d = cfg.probe_power;
        Ok(expect_zero_mat(
            ring,
            &format!("(AC - DA)^{d} = 0"),
            &mat_pow(ring, &m, d),
        ))
    }
}

fn elem_mismatch_instance<R: TextRing>(ring: &R, named: &[(&str, &R::Elem)]) -> String {
    named
        .iter()
        .map(|(n, e)| format!("{n} = {}", format_element(ring, e)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn graded_ring_for_elements(cfg: &CheckConfig) -> crate::Result<Grassmann> {
    match cfg.ring {
        RingKind::Grassmann(k) => Grassmann::new(k),
        _ => Grassmann::new(6),
    }
}

/// `[y1, x] [y2, x] = 0` and `[r1 r2, x, x] = 2 [r1, x] [r2, x]` for random
/// Grassmann elements.
fn engel_product(cfg: &CheckConfig) -> Result<Trials, String> {
    let run = || -> crate::Result<Trials> {
        let e = graded_ring_for_elements(cfg)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for t in 0..cfg.trials {
            let mut draw = || e.random_elem(cfg, &mut rng);
            let (x, y1, y2, r1, r2) = (draw()?, draw()?, draw()?, draw()?, draw()?);
            let identity_lhs = e.mul(&commutator(&e, &y1, &x), &commutator(&e, &y2, &x));
            let step_lhs = engel(&e, &e.mul(&r1, &r2), &x, 2)?;
            let step_rhs = e.scale(&e.mul(&commutator(&e, &r1, &x), &commutator(&e, &r2, &x)), &int(2));
            let found = first([
                compare_elems(&e, "[y1, x] [y2, x] = 0", &identity_lhs, &e.zero()),
                compare_elems(&e, "[r1 r2, x, x] = 2 [r1, x] [r2, x]", &step_lhs, &step_rhs),
            ]);
            if let Some(m) = found {
                let instance =
                    elem_mismatch_instance(&e, &[("x", &x), ("y1", &y1), ("y2", &y2), ("r1", &r1), ("r2", &r2)]);
                return Ok(Trials {
                    run: t + 1,
                    counterexample: Some(Counterexample {
                        trial: t,
                        instance: format!("ring grassmann {}\n{instance}\n", e.rank()),
                        detail: m.detail,
                        lhs: m.lhs,
                        rhs: m.rhs,
                    }),
                });
            }
        }
        Ok(Trials {
            run: cfg.trials,
            counterexample: None,
        })
    };
    run().map_err(|e| e.to_string())
}

/// `[r1 ... rs, x1, ..., xm]` against the block expansion, as polynomial
/// identities in distinct free generators, for `1 <= s, 0 <= m` up to
/// `max_word_len`.
fn leibniz(cfg: &CheckConfig) -> Result<Trials, String> {
    let top = cfg.max_word_len.max(1);
    let names: Vec<String> = (1..=top)
        .map(|i| format!("r{i}"))
        .chain((1..=top).map(|i| format!("x{i}")))
        .collect();
    let f = FreeAlgebra::new(names).map_err(|e| e.to_string())?;
    let g = f.generators();
    let (rs, xs) = g.split_at(top);
    let mut run = 0;
    for s in 1..=top {
        for m in 0..=top {
            run += 1;
            let product = f.product(&rs[..s]);
            let mut word = vec![product];
            word.extend_from_slice(&xs[..m]);
            let lhs = left_normed(&f, &word).map_err(|e| e.to_string())?;
            let rhs = leibniz_expand(&f, &rs[..s], &xs[..m]).map_err(|e| e.to_string())?;
            if let Some(mm) = compare_elems(&f, &format!("s = {s}, m = {m}"), &lhs, &rhs) {
                return Ok(Trials {
                    run,
                    counterexample: Some(Counterexample {
                        trial: run - 1,
                        instance: format!("ring {}\n", f.decl()),
                        detail: mm.detail,
                        lhs: mm.lhs,
                        rhs: mm.rhs,
                    }),
                });
            }
        }
    }
    Ok(Trials {
        run,
        counterexample: None,
    })
}

/// Upper triangular 2x2 matrices: commutator products vanish, yet
/// `[E12, E11, ..., E11]` never does.
fn upper_triangular(cfg: &CheckConfig) -> Result<Trials, String> {
    let u2 = matrix_ring_embed(2, Rationals);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let upper = |rng: &mut ChaCha8Rng| {
        let mut m = u2.zero();
        for (i, j) in [(0, 0), (0, 1), (1, 1)] {
            m.set(i, j, int(rng.gen_range(-5..=5)));
        }
        m
    };
    let fail = |trial: usize, instance: String, m: Mismatch| Trials {
        run: trial + 1,
        counterexample: Some(Counterexample {
            trial,
            instance,
            detail: m.detail,
            lhs: m.lhs,
            rhs: m.rhs,
        }),
    };
    for t in 0..cfg.trials {
        let (x, y, z, w) = (upper(&mut rng), upper(&mut rng), upper(&mut rng), upper(&mut rng));
        let prod = u2.mul(&commutator(&u2, &x, &y), &commutator(&u2, &z, &w));
        if let Some(m) = expect_zero_mat(&Rationals, "[X, Y] [Z, W] = 0 in U2", &prod) {
            let instance = [("X", &x), ("Y", &y), ("Z", &z), ("W", &w)]
                .iter()
                .map(|(n, m)| format!("{n} = {}", format_matrix_inline(&Rationals, m)))
                .collect::<Vec<_>>()
                .join("\n");
            return Ok(fail(t, instance, m));
        }
    }
    let e12 = u2.unit(0, 1);
    let e11 = u2.unit(0, 0);
    for k in 1..=5 {
        let word = engel(&u2, &e12, &e11, k).map_err(|e| e.to_string())?;
        let expected = u2.scale(&e12, &int(if k % 2 == 0 { 1 } else { -1 }));
        let detail = format!("[E12, E11 x {k}] = (-1)^{k} E12 != 0");
        if u2.is_zero(&word) || word != expected {
            let m = Mismatch {
                detail,
                lhs: format_matrix_inline(&Rationals, &word),
                rhs: format_matrix_inline(&Rationals, &expected),
            };
            return Ok(fail(cfg.trials + k - 1, "E12 = 0, 1; 0, 0\nE11 = 1, 0; 0, 0".into(), m));
        }
    }
    Ok(Trials {
        run: cfg.trials + 5,
        counterexample: None,
    })
}

/// `[v1, v2] [v3, v4] ... [v_{2d-1}, v_{2d}] = 2^d v1 ... v_{2d} != 0` in rank `2d`, `d <= 4`.
fn grassmann_chain(_cfg: &CheckConfig) -> Result<Trials, String> {
    for d in 1..=4u32 {
        let e = Grassmann::new(2 * d).map_err(|e| e.to_string())?;
        let v: Vec<_> = (1..=2 * d).map(|i| e.generator(i).unwrap()).collect();
        let factors: Vec<_> = v.chunks(2).map(|p| commutator(&e, &p[0], &p[1])).collect();
        let lhs = e.product(&factors);
        let indices: Vec<u32> = (1..=2 * d).collect();
        let rhs = e.scale(&e.blade(&indices).unwrap(), &int(1 << d));
        if lhs != rhs || e.is_zero(&lhs) {
            return Ok(Trials {
                run: d as usize,
                counterexample: Some(Counterexample {
                    trial: d as usize - 1,
                    instance: format!("ring grassmann {}\n", 2 * d),
                    detail: format!("commutator chain with d = {d}"),
                    lhs: format_element(&e, &lhs),
                    rhs: format_element(&e, &rhs),
                }),
            });
        }
    }
    Ok(Trials {
        run: 4,
        counterexample: None,
    })
}

fn dispatch(check: Check, cfg: &CheckConfig) -> Result<Trials, String> {
    cfg.validate()?;
    match check {
        Check::TraceSdet => run_property(check, &TraceSdet, cfg),
        Check::SdetFormulas => run_property(check, &SdetFormulas, cfg),
        Check::CommutatorParts => run_property(check, &CommutatorPartsProp, cfg),
        Check::AcDa => run_property(check, &AcDa, cfg),
        Check::AcDaSquare => run_graded(check, &AcDaSquare, cfg),
        Check::AcDaGraded => run_graded(check, &AcDaGraded, cfg),
        Check::EngelProduct => {
            if !check.supports(cfg.ring) {
                return Err(unsupported(check, cfg.ring));
            }
            engel_product(cfg)
        }
        Check::Leibniz => leibniz(cfg),
        Check::Conjugation => run_property(check, &Conjugation, cfg),
        Check::ChLeft => run_property(check, &ChEval { left: true }, cfg),
        Check::ChRight => run_property(check, &ChEval { left: false }, cfg),
        Check::Coefficients => run_graded(check, &Coefficients, cfg),
        Check::CoefficientSquares => run_graded(check, &CoefficientSquares, cfg),
        Check::UpperTriangular => upper_triangular(cfg),
        Check::GrassmannChain => grassmann_chain(cfg),
        Check::PowerProbe => run_property(check, &PowerProbe, cfg),
    }
}

/// Runs one check. Errors are captured in the report, never raised.
pub fn run_check(check: Check, cfg: &CheckConfig) -> VerificationReport {
    let start = Instant::now();
    let outcome = dispatch(check, cfg);
    let millis = start.elapsed().as_millis() as u64;
    let (status, trials, counterexample, error) = match outcome {
        Ok(Trials {
            run,
            counterexample: None,
        }) => (Status::Pass, run, None, None),
        Ok(Trials {
            run,
            counterexample: Some(cx),
        }) => (Status::Fail, run, Some(cx), None),
        Err(e) => (Status::Error, 0, None, Some(e)),
    };
    VerificationReport {
        schema: REPORT_SCHEMA,
        check: check.name().to_string(),
        status,
        ring: if check.ring_independent() {
            "any".to_string()
        } else {
            cfg.ring.to_string()
        },
        n: cfg.n,
        trials,
        seed: cfg.seed,
        counterexample,
        error,
        millis,
    }
}

pub fn check_trace_sdet(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::TraceSdet, cfg)
}

pub fn check_commutator_parts(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::CommutatorParts, cfg)
}

pub fn check_ac_minus_da(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::AcDa, cfg)
}

pub fn check_ac_minus_da_square(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::AcDaSquare, cfg)
}

pub fn check_ac_minus_da_graded(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::AcDaGraded, cfg)
}

pub fn check_engel_product(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::EngelProduct, cfg)
}

pub fn check_leibniz(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::Leibniz, cfg)
}

pub fn check_conjugation(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::Conjugation, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub fn check_ch(cfg: &CheckConfig, side: Side) -> VerificationReport {
    run_check(
        if side == Side::Left {
            Check::ChLeft
        } else {
            Check::ChRight
        },
        cfg,
    )
}

pub fn check_coefficient_identity(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::Coefficients, cfg)
}

pub fn check_coefficient_square(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::CoefficientSquares, cfg)
}

pub fn check_upper_triangular(cfg: &CheckConfig) -> VerificationReport {
    run_check(Check::UpperTriangular, cfg)
}

/// Runs the given checks concurrently; reports come back in input order.
pub fn run_suite(items: &[(Check, CheckConfig)]) -> Vec<VerificationReport> {
    items.par_iter().map(|(c, cfg)| run_check(*c, cfg)).collect()
}

/// Every check that `--check all` includes for one ring and dimension.
pub fn suite_for(cfg: &CheckConfig) -> Vec<(Check, CheckConfig)> {
    Check::ALL
        .into_iter()
        .filter(|c| c.in_all() && c.supports(cfg.ring))
        .map(|c| (c, cfg.clone()))
        .collect()
}

/// The default suite: each check on the rings and sizes where it says the
/// most, at modest trial counts.
pub fn default_suite(seed: u64) -> Vec<(Check, CheckConfig)> {
    let free = |n| CheckConfig::new(RingKind::Free, n).with_seed(seed);
    let grass = |k, n, trials| {
        CheckConfig::new(RingKind::Grassmann(k), n)
            .with_trials(trials)
            .with_seed(seed)
    };
    let rational = |n, trials| {
        CheckConfig::new(RingKind::Rational, n)
            .with_trials(trials)
            .with_seed(seed)
    };
    let mut suite = vec![
        (Check::TraceSdet, free(2)),
        (Check::TraceSdet, free(3)),
        (Check::TraceSdet, grass(6, 3, 10)),
        (Check::TraceSdet, rational(4, 10)),
        (Check::SdetFormulas, free(3)),
        (Check::SdetFormulas, grass(8, 4, 3)),
        (Check::CommutatorParts, free(2)),
        (Check::CommutatorParts, free(3)),
        (Check::CommutatorParts, rational(3, 10)),
        (Check::AcDa, free(2)),
        (Check::AcDa, free(3)),
        (Check::AcDa, grass(6, 3, 10)),
        (Check::AcDaSquare, grass(4, 2, 20)),
        (Check::AcDaSquare, grass(6, 3, 10)),
        (Check::AcDaGraded, grass(6, 2, 20)),
        (Check::AcDaGraded, grass(8, 3, 10)),
        (Check::EngelProduct, grass(6, 1, 50)),
        (Check::Leibniz, free(1)),
        (Check::Conjugation, free(2).with_trials(10)),
        (Check::Conjugation, grass(6, 3, 10)),
        (Check::ChLeft, free(2)),
        (Check::ChRight, free(2)),
        (Check::ChLeft, rational(3, 10)),
        (Check::ChRight, grass(6, 3, 10)),
        (Check::Coefficients, grass(6, 2, 20)),
        (Check::Coefficients, grass(6, 3, 10)),
        (Check::CoefficientSquares, grass(6, 2, 20)),
        (Check::CoefficientSquares, grass(8, 3, 10)),
        (Check::UpperTriangular, rational(2, 20)),
        (Check::GrassmannChain, free(1)),
    ];
    suite.sort_by_key(|(c, _)| *c);
    suite
}

/// Counts reports by status.
pub fn summarize(reports: &[VerificationReport]) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for r in reports {
        let key = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// Whether `C + sdet(A) I = n A* A` and `D + sdet(A) I = n A A*`.
pub fn reconstructs<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>) -> crate::Result<bool> {
    let parts = commutator_parts(ring, a)?;
    let n = int(a.n() as i64);
    let li = matrix::scalar_matrix(ring, a.n(), &parts.lambda);
    let left = matrix::mat_scale(ring, &mat_mul(ring, &parts.adjoint, a), &n);
    let right = matrix::mat_scale(ring, &mat_mul(ring, a, &parts.adjoint), &n);
    Ok(mat_add(ring, &parts.c, &li) == left && mat_add(ring, &parts.d, &li) == right)
}
