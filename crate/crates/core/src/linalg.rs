//! Exact rational linear algebra over a fixed finite coordinate basis.
//!
//! Vectors are sparse (sorted `(index, coefficient)` pairs, no stored
//! zeros). A [`Subspace`] is kept in fully reduced row-echelon form with
//! respect to a [`ColumnOrder`]: the column that comes first in the order is
//! eliminated first. With the natural order and coordinates sorted by
//! commutator length, the rows whose pivot lies at or past a given column
//! span the intersection with the corresponding coordinate tail.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Displays as `p/q`, or `p` when `q = 1`.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad_rational(s))?;
            let q: BigInt = q.trim().parse().map_err(|_| bad_rational(s))?;
            if q.is_zero() {
                return Err(bad_rational(s));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(s.parse().map_err(|_| bad_rational(s))?),
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> Error {
    Error::Parse(format!("`{s}` is not a rational number"))
}

/// Sparse vector with strictly increasing indices and nonzero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, Rational::one())],
        }
    }

    /// Builds a vector from arbitrary pairs, summing duplicates and dropping zeros.
    pub fn from_entries<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut raw: Vec<(usize, Rational)> = pairs.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, rat(c)))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    /// Largest stored index plus one (zero for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, c) in &mut self.entries {
            *c *= factor;
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVec {
        let mut out = self.clone();
        out.scale(factor);
        out
    }

    pub fn negated(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &SparseVec) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut left = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut right = other.entries.iter().peekable();
        loop {
            match (left.peek(), right.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => merged.push(left.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, c) = right.next().unwrap();
                    merged.push((*j, factor * c));
                }
                (Some(_), Some(_)) => {
                    let (i, a) = left.next().unwrap();
                    let (_, b) = right.next().unwrap();
                    let s = a + factor * b;
                    if !s.is_zero() {
                        merged.push((i, s));
                    }
                }
                (Some(_), None) => merged.push(left.next().unwrap()),
                (None, Some(_)) => {
                    let (j, c) = right.next().unwrap();
                    merged.push((*j, factor * c));
                }
                (None, None) => break,
            }
        }
        self.entries = merged;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i + offset, c.clone()))
                .collect(),
        }
    }

    /// Keeps only entries whose index lies in `range`, re-indexed from its start.
    pub fn window(&self, range: std::ops::Range<usize>) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, c)| (i - range.start, c.clone()))
                .collect(),
        }
    }

    fn remap(&self, map: &[usize]) -> SparseVec {
        let mut entries: Vec<(usize, Rational)> = self
            .entries
            .iter()
            .map(|(i, c)| (map[*i], c.clone()))
            .collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// Elimination priority over coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum ColumnOrder {
    /// Column `0` first, then `1`, ...
    #[default]
    Natural,
    Custom {
        /// `column_at[p]` is the column eliminated at position `p`.
        column_at: Arc<Vec<usize>>,
        position_of: Arc<Vec<usize>>,
    },
}

impl ColumnOrder {
    /// Builds an order from the sequence of columns, first-eliminated first.
    pub fn custom(column_at: Vec<usize>) -> Result<Self> {
        let n = column_at.len();
        let mut position_of = vec![usize::MAX; n];
        for (p, &c) in column_at.iter().enumerate() {
            if c >= n || position_of[c] != usize::MAX {
                return Err(Error::InvalidArgument(
                    "column order is not a permutation".into(),
                ));
            }
            position_of[c] = p;
        }
        Ok(ColumnOrder::Custom {
            column_at: Arc::new(column_at),
            position_of: Arc::new(position_of),
        })
    }

    /// Highest column first.
    pub fn reversed(dim: usize) -> Self {
        Self::custom((0..dim).rev().collect()).expect("reversal is a permutation")
    }

    fn check(&self, ambient: usize) -> Result<()> {
        match self {
            ColumnOrder::Natural => Ok(()),
            ColumnOrder::Custom { column_at, .. } if column_at.len() == ambient => Ok(()),
            ColumnOrder::Custom { column_at, .. } => Err(Error::DimensionMismatch {
                expected: ambient,
                found: column_at.len(),
            }),
        }
    }

    fn to_position(&self, v: SparseVec) -> SparseVec {
        match self {
            ColumnOrder::Natural => v,
            ColumnOrder::Custom { position_of, .. } => v.remap(position_of),
        }
    }

    fn to_column(&self, v: &SparseVec) -> SparseVec {
        match self {
            ColumnOrder::Natural => v.clone(),
            ColumnOrder::Custom { column_at, .. } => v.remap(column_at),
        }
    }

    fn column(&self, position: usize) -> usize {
        match self {
            ColumnOrder::Natural => position,
            ColumnOrder::Custom { column_at, .. } => column_at[position],
        }
    }
}

fn check_vector(v: &SparseVec, ambient: usize) -> Result<()> {
    if v.support_bound() > ambient {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            found: v.support_bound(),
        });
    }
    Ok(())
}

/// Incremental reduced row-echelon form. Rows are stored in position
/// coordinates (see [`ColumnOrder`]); each pivot entry is `1` and is the only
/// nonzero entry in its column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    order: ColumnOrder,
    rows: Vec<SparseVec>,
    row_of_pivot: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self::with_order(ambient, ColumnOrder::Natural).expect("natural order always fits")
    }

    pub fn with_order(ambient: usize, order: ColumnOrder) -> Result<Self> {
        order.check(ambient)?;
        Ok(Echelon {
            ambient,
            order,
            rows: Vec::new(),
            row_of_pivot: vec![NO_ROW; ambient],
        })
    }

    pub fn from_subspace(space: &Subspace) -> Self {
        let mut row_of_pivot = vec![NO_ROW; space.ambient];
        for (k, r) in space.rows.iter().enumerate() {
            row_of_pivot[r.leading().expect("rows are nonzero").0] = k as u32;
        }
        Echelon {
            ambient: space.ambient,
            order: space.order.clone(),
            rows: space.rows.clone(),
            row_of_pivot,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    fn reduce_position(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<(u32, Rational)> = v
            .iter()
            .filter_map(|(p, c)| {
                let r = self.row_of_pivot[p];
                (r != NO_ROW).then(|| (r, c.clone()))
            })
            .collect();
        for (r, c) in hits {
            v.add_scaled(&-c, &self.rows[r as usize]);
        }
        v
    }

    /// Remainder of `v` (natural coordinates) after elimination, in natural
    /// coordinates. Zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        check_vector(v, self.ambient)?;
        let r = self.reduce_position(self.order.to_position(v.clone()));
        Ok(self.order.to_column(&r))
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        check_vector(v, self.ambient)?;
        Ok(self
            .reduce_position(self.order.to_position(v.clone()))
            .is_zero())
    }

    /// Adds `v` (natural coordinates) to the span. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> Result<bool> {
        check_vector(&v, self.ambient)?;
        let v = self.order.to_position(v);
        Ok(self.insert_position(v))
    }

    fn insert_position(&mut self, v: SparseVec) -> bool {
        if self.is_full() {
            return false;
        }
        let mut r = self.reduce_position(v);
        let (pivot, lead) = match r.leading() {
            None => return false,
            Some((p, c)) => (p, c.clone()),
        };
        if !lead.is_one() {
            r.scale(&lead.recip());
        }
        for row in &mut self.rows {
            if let Some(c) = row.get(pivot) {
                let c = -c.clone();
                row.add_scaled(&c, &r);
            }
        }
        self.row_of_pivot[pivot] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    pub fn finish(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().map(|(p, _)| p));
        Subspace {
            ambient: self.ambient,
            order: self.order,
            rows,
        }
    }
}

/// A subspace of `Q^ambient` in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    order: ColumnOrder,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            order: ColumnOrder::Natural,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            order: ColumnOrder::Natural,
            rows: (0..ambient).map(SparseVec::unit).collect(),
        }
    }

    /// Span of the coordinate vectors `e_i` for `i` in `columns`.
    pub fn coordinate(ambient: usize, columns: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::span(columns.into_iter().map(SparseVec::unit), ambient)
    }

    /// Span under the natural column order.
    pub fn span<I>(vectors: I, ambient: usize) -> Result<Self>
    where
        I: IntoIterator<Item = SparseVec>,
    {
        Self::span_with_order(vectors, ambient, ColumnOrder::Natural)
    }

    pub fn span_with_order<I>(vectors: I, ambient: usize, order: ColumnOrder) -> Result<Self>
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let mut ech = Echelon::with_order(ambient, order)?;
        for v in vectors {
            ech.insert(v)?;
        }
        Ok(ech.finish())
    }

    /// Span of dense vectors; every vector must have length `ambient`.
    pub fn span_dense(vectors: &[Vec<Rational>], ambient: usize) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        Self::span(vectors.iter().map(|v| SparseVec::from_dense(v)), ambient)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn order(&self) -> &ColumnOrder {
        &self.order
    }

    /// Echelon basis in natural coordinates, ordered by pivot position.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.iter().map(|r| self.order.to_column(r)).collect()
    }

    /// Pivot columns (natural indices), in pivot-position order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| self.order.column(r.leading().expect("rows are nonzero").0))
            .collect()
    }

    /// Columns that are not pivots, in increasing natural order. Their
    /// coordinate vectors span a complement of the subspace.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for c in self.pivots() {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        Echelon::from_subspace(self).contains(v)
    }

    /// Remainder of `v` modulo the subspace, supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        Echelon::from_subspace(self).reduce(v)
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_subspace(self)
    }

    /// Re-echelonizes under another column order.
    pub fn with_order(&self, order: ColumnOrder) -> Result<Subspace> {
        if order == self.order {
            return Ok(self.clone());
        }
        Self::span_with_order(self.basis(), self.ambient, order)
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        let ech = other.echelon();
        for v in self.basis() {
            if !ech.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `A + B`, echelonized under `A`'s order.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut ech = self.echelon();
        for v in other.basis() {
            ech.insert(v)?;
        }
        Ok(ech.finish())
    }

    /// `A ∩ B` by the Zassenhaus construction, echelonized under `A`'s order.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let n = self.ambient;
        let mut ech = Echelon::new(2 * n);
        for a in self.basis() {
            let doubled = a.add(&a.shifted(n));
            ech.insert(doubled)?;
        }
        for b in other.basis() {
            ech.insert(b)?;
        }
        let meet: Vec<SparseVec> = ech
            .finish()
            .rows
            .into_iter()
            .filter(|r| r.leading().is_some_and(|(p, _)| p >= n))
            .map(|r| r.window(n..2 * n))
            .collect();
        Self::span_with_order(meet, n, self.order.clone())
    }

    /// Intersection with the span of coordinates `>= k`.
    ///
    /// When the order eliminates every column `< k` before any column
    /// `>= k`, this is read directly off the echelon rows; otherwise it falls
    /// back to [`Subspace::intersect`].
    pub fn coordinate_tail_intersection(&self, k: usize) -> Result<Subspace> {
        if k > self.ambient {
            return Err(Error::InvalidArgument(format!(
                "column {k} is out of range for ambient dimension {}",
                self.ambient
            )));
        }
        let head_first = match &self.order {
            ColumnOrder::Natural => true,
            ColumnOrder::Custom { column_at, .. } => column_at[..k].iter().all(|&c| c < k),
        };
        if !head_first {
            let tail = Subspace::coordinate(self.ambient, k..self.ambient)?;
            return self.intersect(&tail);
        }
        let rows = self
            .rows
            .iter()
            .filter(|r| r.leading().is_some_and(|(p, _)| p >= k))
            .cloned()
            .collect();
        Ok(Subspace {
            ambient: self.ambient,
            order: self.order.clone(),
            rows,
        })
    }

    /// Kernel of the linear map sending `e_i` to `images[i]` in `Q^target`.
    pub fn kernel(images: &[SparseVec], target: usize) -> Result<Subspace> {
        let domain = images.len();
        let mut ech = Echelon::new(target + domain);
        for (i, img) in images.iter().enumerate() {
            check_vector(img, target)?;
            let mut v = img.clone();
            v.add_scaled(&Rational::one(), &SparseVec::unit(target + i));
            ech.insert(v)?;
        }
        let kernel: Vec<SparseVec> = ech
            .finish()
            .rows
            .into_iter()
            .filter(|r| r.leading().is_some_and(|(p, _)| p >= target))
            .map(|r| r.window(target..target + domain))
            .collect();
        Self::span(kernel, domain)
    }
}

/// `dim A - dim B` for `B ⊆ A`.
pub fn quotient_dimension(a: &Subspace, b: &Subspace) -> Result<usize> {
    if !b.is_subspace_of(a)? {
        return Err(Error::InvalidArgument(
            "quotient requires the second subspace to lie in the first".into(),
        ));
    }
    Ok(a.dim() - b.dim())
}
