//! Arithmetic in the free nilpotent Lie algebra `F / F^(N+1)` on `d`
//! generators, with coordinates in the Hall basis.
//!
//! # Normalization
//!
//! A bracket of two basic commutators `[u, v]` is rewritten onto the basis:
//!
//! * `[u, u] = 0`, and `[u, v] = -[v, u]` when `u < v`;
//! * anything of total length `> N` is zero (truncation, not an error);
//! * if `u > v` and `[u, v]` satisfies the Hall rule it is a basis element;
//! * otherwise `u = [s, t]` with `v < t`, and the Jacobi identity gives
//!   `[[s, t], v] = [[s, v], t] + [s, [t, v]]`.
//!
//! Termination: order bracket problems `{a, b}` by the pair
//! `(len(a) + len(b), -min(a, b))` lexicographically. In the Jacobi step the
//! inner problems `[s, v]` and `[t, v]` have strictly smaller total length.
//! The outer problems `[b, t]` (with `b` in the support of `[s, v]`) and
//! `[s, b']` (with `b'` in the support of `[t, v]`) keep the total length, but
//! their smaller factor is strictly larger than `v`: `t > v`, `s > t`, and
//! both `b` and `b'` are longer than `v`, hence larger. The smaller factor
//! ranges over a finite set, so the measure is well founded.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hall::{BasicCommutator, HallBasis, Node, DEFAULT_CEILING};
use crate::linalg::{Rational, SparseVec};

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a [`TruncatedFreeAlgebra`]: a rational combination of Hall
/// basis elements indexed by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLieElement {
    algebra: u64,
    coeffs: SparseVec,
}

impl FreeLieElement {
    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> SparseVec {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coefficient(&self, rank: usize) -> Rational {
        self.coeffs
            .get(rank)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(FreeLieElement {
            algebra: self.algebra,
            coeffs: self.coeffs.add(&other.coeffs),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(FreeLieElement {
            algebra: self.algebra,
            coeffs: self.coeffs.sub(&other.coeffs),
        })
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        FreeLieElement {
            algebra: self.algebra,
            coeffs: self.coeffs.scaled(factor),
        }
    }
}

/// `F / F^(N+1)` with a lazily filled, memoized bracket table.
///
/// The table is behind a lock; entries are computed outside the lock and
/// inserted afterwards, so concurrent readers see either nothing or a fully
/// normalized entry. Racing writers compute identical values.
pub struct TruncatedFreeAlgebra {
    id: u64,
    basis: HallBasis,
    memo: RwLock<HashMap<(u32, u32), Arc<SparseVec>>>,
    zero: Arc<SparseVec>,
}

impl fmt::Debug for TruncatedFreeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedFreeAlgebra")
            .field("generators", &self.basis.generators())
            .field("max_length", &self.basis.max_length())
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl TruncatedFreeAlgebra {
    pub fn new(d: usize, max_length: usize) -> Result<Self> {
        Self::with_ceiling(d, max_length, DEFAULT_CEILING)
    }

    pub fn with_ceiling(d: usize, max_length: usize, ceiling: usize) -> Result<Self> {
        let basis = HallBasis::generate_with_ceiling(d, max_length, ceiling)?;
        Ok(Self::from_basis(basis))
    }

    pub fn from_basis(basis: HallBasis) -> Self {
        TruncatedFreeAlgebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            basis,
            memo: RwLock::new(HashMap::new()),
            zero: Arc::new(SparseVec::new()),
        }
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn generators(&self) -> usize {
        self.basis.generators()
    }

    pub fn max_length(&self) -> usize {
        self.basis.max_length()
    }

    /// Number of Hall basis elements (the coordinate dimension).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> FreeLieElement {
        self.wrap(SparseVec::new())
    }

    /// Zero-based generator `x_(i+1)`.
    pub fn generator(&self, i: usize) -> Result<FreeLieElement> {
        if i >= self.generators() {
            return Err(Error::InvalidArgument(format!(
                "generator index {i} out of range for {} generators",
                self.generators()
            )));
        }
        Ok(self.wrap(SparseVec::unit(i)))
    }

    pub fn basis_element(&self, rank: usize) -> Result<FreeLieElement> {
        if rank >= self.dim() {
            return Err(Error::InvalidArgument(format!("rank {rank} out of range")));
        }
        Ok(self.wrap(SparseVec::unit(rank)))
    }

    /// Wraps a coordinate vector, checking that its indices are valid ranks.
    pub fn element(&self, coeffs: SparseVec) -> Result<FreeLieElement> {
        if coeffs.support_bound() > self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coeffs.support_bound(),
            });
        }
        Ok(self.wrap(coeffs))
    }

    fn wrap(&self, coeffs: SparseVec) -> FreeLieElement {
        FreeLieElement {
            algebra: self.id,
            coeffs,
        }
    }

    fn check(&self, e: &FreeLieElement) -> Result<()> {
        if e.algebra != self.id {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    fn length(&self, rank: usize) -> usize {
        self.basis.get(rank).length()
    }

    /// Hall-basis expansion of `[u, v]` for basic commutators `u`, `v`.
    pub fn normalize_bracket(&self, u: &BasicCommutator, v: &BasicCommutator) -> FreeLieElement {
        self.wrap(self.bracket_ranks(u.rank(), v.rank()))
    }

    /// Hall-basis expansion of `[e_u, e_v]` by rank.
    pub fn bracket_ranks(&self, u: usize, v: usize) -> SparseVec {
        match u.cmp(&v) {
            std::cmp::Ordering::Equal => SparseVec::new(),
            std::cmp::Ordering::Greater => self.ordered(u, v).as_ref().clone(),
            std::cmp::Ordering::Less => self.ordered(v, u).negated(),
        }
    }

    /// `[e_u, e_v]` for `u > v`.
    fn ordered(&self, u: usize, v: usize) -> Arc<SparseVec> {
        debug_assert!(u > v);
        if self.length(u) + self.length(v) > self.max_length() {
            return self.zero.clone();
        }
        let key = (u as u32, v as u32);
        if let Some(hit) = self.memo.read().expect("memo lock poisoned").get(&key) {
            return hit.clone();
        }
        let value = Arc::new(self.compute_ordered(u, v));
        self.memo
            .write()
            .expect("memo lock poisoned")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    fn compute_ordered(&self, u: usize, v: usize) -> SparseVec {
        let basic = |u, v| {
            SparseVec::unit(
                self.basis
                    .rank_of_pair(u, v)
                    .expect("Hall pair within the length bound is basic"),
            )
        };
        match self.basis.get(u).node() {
            Node::Generator(_) => basic(u, v),
            Node::Pair(_, t) if v >= t => basic(u, v),
            Node::Pair(s, t) => {
                // [[s, t], v] = [[s, v], t] + [s, [t, v]]
                let mut terms: Vec<(usize, Rational)> = Vec::new();
                let sv = self.ordered(s, v);
                for (b, c) in sv.iter() {
                    self.push_signed(&mut terms, b, t, c);
                }
                let tv = self.ordered(t, v);
                for (b, c) in tv.iter() {
                    self.push_signed(&mut terms, s, b, c);
                }
                SparseVec::from_entries(terms)
            }
        }
    }

    /// Appends `coef * [e_a, e_b]` to `terms`.
    fn push_signed(&self, terms: &mut Vec<(usize, Rational)>, a: usize, b: usize, coef: &Rational) {
        let (hi, lo, negate) = match a.cmp(&b) {
            std::cmp::Ordering::Equal => return,
            std::cmp::Ordering::Greater => (a, b, false),
            std::cmp::Ordering::Less => (b, a, true),
        };
        let product = self.ordered(hi, lo);
        for (k, c) in product.iter() {
            let term = coef * c;
            terms.push((k, if negate { -term } else { term }));
        }
    }

    /// Bilinear bracket on raw coordinate vectors.
    pub fn bracket_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let n = self.max_length();
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        for (i, ca) in a.iter() {
            let li = self.length(i);
            for (j, cb) in b.iter() {
                if li + self.length(j) > n {
                    // b is sorted by rank, hence by length.
                    break;
                }
                if i == j {
                    continue;
                }
                let coef = ca * cb;
                self.push_signed(&mut terms, i, j, &coef);
            }
        }
        SparseVec::from_entries(terms)
    }

    pub fn bracket(&self, a: &FreeLieElement, b: &FreeLieElement) -> Result<FreeLieElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.bracket_vec(&a.coeffs, &b.coeffs)))
    }

    /// `[x_(w0), x_(w1), ..., x_(wk)]`, left-normed, zero-based generator indices.
    pub fn left_normed(&self, word: &[usize]) -> Result<FreeLieElement> {
        let (&first, rest) = word
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("left-normed word must be nonempty".into()))?;
        let mut acc = self.generator(first)?.coeffs;
        for &g in rest {
            if g >= self.generators() {
                return Err(Error::InvalidArgument(format!(
                    "generator index {g} out of range"
                )));
            }
            acc = self.bracket_vec(&acc, &SparseVec::unit(g));
        }
        Ok(self.wrap(acc))
    }

    /// Dimension of `F^c / F^(c+i)`: the number of basic commutators of
    /// lengths `c, ..., c+i-1`.
    pub fn graded_dimension(&self, c: usize, i: usize) -> Result<usize> {
        if c == 0 || (i > 0 && c + i - 1 > self.max_length()) {
            return Err(Error::WindowOutOfRange {
                start: c,
                end: c + i,
                max_length: self.max_length(),
            });
        }
        let mut total = 0;
        for t in c..c + i {
            total += crate::hall::witt_usize(self.generators(), t)?;
        }
        Ok(total)
    }

    /// Component of `e` of commutator length exactly `t`.
    pub fn homogeneous_component(&self, e: &FreeLieElement, t: usize) -> FreeLieElement {
        let range = self.basis.stratum(t);
        self.wrap(SparseVec::from_entries(
            e.coeffs
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, c)| (i, c.clone())),
        ))
    }

    /// Parses a bracket expression such as `[x2,x3,x1,x2]` (left-normed) or
    /// `[x1,x2,[x2,x3]]`, with 1-based generator names.
    pub fn parse(&self, text: &str) -> Result<FreeLieElement> {
        let expr = BracketExpr::parse(text)?;
        self.evaluate(&expr)
    }

    pub fn evaluate(&self, expr: &BracketExpr) -> Result<FreeLieElement> {
        match expr {
            BracketExpr::Generator(i) => self.generator(*i),
            BracketExpr::Bracket(a, b) => {
                let a = self.evaluate(a)?;
                let b = self.evaluate(b)?;
                self.bracket(&a, &b)
            }
        }
    }

    /// Renders an element as a signed sum of left-normed commutators.
    pub fn render(&self, e: &FreeLieElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (rank, c)) in e.coeffs.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&self.basis.render(rank));
        }
        out
    }

    /// Number of memoized bracket entries.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }

    /// Snapshot of the memo table, `(u, v) -> [e_u, e_v]` with `u > v`.
    pub fn memo_entries(&self) -> Vec<((usize, usize), SparseVec)> {
        let mut out: Vec<_> = self
            .memo
            .read()
            .expect("memo lock poisoned")
            .iter()
            .map(|(&(u, v), e)| ((u as usize, v as usize), e.as_ref().clone()))
            .collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

/// A bracket expression over generators, before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    /// Zero-based generator index.
    Generator(usize),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn bracket(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let expr = Self::parse_at(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input in `{text}`")));
        }
        Ok(expr)
    }

    fn parse_at(chars: &[char], pos: &mut usize) -> Result<Self> {
        match chars.get(*pos) {
            Some('x') => {
                *pos += 1;
                let start = *pos;
                while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                    *pos += 1;
                }
                let digits: String = chars[start..*pos].iter().collect();
                let index: usize = digits.parse().map_err(|_| {
                    Error::Parse(format!("bad generator name near position {start}"))
                })?;
                if index == 0 {
                    return Err(Error::Parse("generators are numbered from x1".into()));
                }
                Ok(BracketExpr::Generator(index - 1))
            }
            Some('[') => {
                *pos += 1;
                let mut acc = Self::parse_at(chars, pos)?;
                let mut count = 1;
                while chars.get(*pos) == Some(&',') {
                    *pos += 1;
                    let next = Self::parse_at(chars, pos)?;
                    acc = BracketExpr::bracket(acc, next);
                    count += 1;
                }
                if chars.get(*pos) != Some(&']') {
                    return Err(Error::Parse(format!("expected `]` at position {}", *pos)));
                }
                if count < 2 {
                    return Err(Error::Parse("a bracket needs at least two entries".into()));
                }
                *pos += 1;
                Ok(acc)
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} at position {}",
                other, *pos
            ))),
        }
    }
}
