//! Finite-dimensional nilpotent Lie algebras given by rational structure
//! constants.
//!
//! Basis indices are zero-based in the API (`e_0 .. e_(n-1)`); textual and
//! JSON forms use the 1-based names `x1 .. xn`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseVec, Subspace};

/// Summary of the lower central series and related invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// `dim L^1, dim L^2, ...`, ending with the first zero term.
    pub lcs_dims: Vec<usize>,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// Nilpotency class: the last index `i` with `L^i != 0`.
    pub class: usize,
}

/// A validated nilpotent Lie algebra.
#[derive(Clone, Debug)]
pub struct NilpotentAlgebra {
    dim: usize,
    // table[i * dim + j] = [e_i, e_j]
    table: Vec<SparseVec>,
    name: Option<String>,
    // L^1, L^2, ..., L^(k+1) = 0
    lcs: Vec<Subspace>,
    center: Subspace,
}

impl PartialEq for NilpotentAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table
    }
}

impl NilpotentAlgebra {
    /// Builds and validates an algebra from `[e_i, e_j]` for `i < j`.
    /// Omitted pairs are zero.
    pub fn from_structure_constants<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), SparseVec)>,
    {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "an algebra needs dimension at least 1".into(),
            ));
        }
        let mut table = vec![SparseVec::new(); dim * dim];
        for ((i, j), v) in brackets {
            if i >= j || j >= dim {
                return Err(Error::InvalidArgument(format!(
                    "bracket index pair ({}, {}) must satisfy 1 <= i < j <= {dim}",
                    i + 1,
                    j + 1
                )));
            }
            if v.support_bound() > dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.support_bound(),
                });
            }
            table[j * dim + i] = v.negated();
            table[i * dim + j] = v;
        }
        Self::from_table(dim, table)
    }

    fn from_table(dim: usize, table: Vec<SparseVec>) -> Result<Self> {
        check_jacobi(dim, &table)?;
        let lcs = lower_central_series(dim, &table)?;
        let center = center_of(dim, &table)?;
        Ok(NilpotentAlgebra {
            dim,
            table,
            name: None,
            lcs,
            center,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Display name, falling back to `L(n)`.
    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("L(dim {})", self.dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        bracket_in(self.dim, &self.table, x, y)
    }

    /// Nonzero structure constants `[e_i, e_j]` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(move |(i, j)| ((i, j), &self.table[i * n + j]))
            .filter(|(_, v)| !v.is_zero())
    }

    pub fn is_abelian(&self) -> bool {
        self.derived_dim() == 0
    }

    /// `L^i` for `i >= 1`; zero past the class.
    pub fn lcs_term(&self, i: usize) -> Subspace {
        assert!(i >= 1, "lower central series is indexed from 1");
        self.lcs
            .get(i - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim))
    }

    pub fn derived(&self) -> Subspace {
        self.lcs_term(2)
    }

    pub fn derived_dim(&self) -> usize {
        self.lcs.get(1).map_or(0, Subspace::dim)
    }

    pub fn center(&self) -> &Subspace {
        &self.center
    }

    pub fn class(&self) -> usize {
        self.lcs.len() - 1
    }

    pub fn series(&self) -> Series {
        Series {
            lcs_dims: self.lcs.iter().map(Subspace::dim).collect(),
            center_dim: self.center.dim(),
            derived_dim: self.derived_dim(),
            class: self.class(),
        }
    }

    /// Block-diagonal direct sum; the basis of `other` follows that of `self`.
    pub fn direct_sum(&self, other: &NilpotentAlgebra) -> NilpotentAlgebra {
        let n = self.dim + other.dim;
        let mut table = vec![SparseVec::new(); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                table[i * n + j] = self.table[i * self.dim + j].clone();
            }
        }
        let off = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                table[(i + off) * n + (j + off)] = other.table[i * other.dim + j].shifted(off);
            }
        }
        let lcs_len = self.lcs.len().max(other.lcs.len());
        let lcs = (0..lcs_len)
            .map(|t| {
                let a = self.lcs.get(t).map(Subspace::basis).unwrap_or_default();
                let b = other.lcs.get(t).map(Subspace::basis).unwrap_or_default();
                Subspace::span(a.into_iter().chain(b.iter().map(|v| v.shifted(off))), n)
                    .expect("block vectors fit")
            })
            .collect();
        let center = Subspace::span(
            self.center
                .basis()
                .into_iter()
                .chain(other.center.basis().iter().map(|v| v.shifted(off))),
            n,
        )
        .expect("block vectors fit");
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        NilpotentAlgebra {
            dim: n,
            table,
            name,
            lcs,
            center,
        }
    }

    /// Checks that `b` spans a one-dimensional central ideal, and, when
    /// `inside_derived` is set, that it lies in `L^2`.
    pub fn check_central_line(&self, b: &SparseVec, inside_derived: bool) -> Result<()> {
        if b.is_zero() {
            return Err(Error::NotOneDimensional(0));
        }
        if b.support_bound() > self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: b.support_bound(),
            });
        }
        if !self.center.contains(b)? {
            return Err(Error::NotCentral);
        }
        if inside_derived && !self.derived().contains(b)? {
            return Err(Error::NotInDerived);
        }
        Ok(())
    }

    /// `L / span{b}` for a central `b`.
    ///
    /// The complement basis keeps every `e_i` except the pivot (first nonzero
    /// coordinate) of `b`, in the original order.
    pub fn central_quotient(
        &self,
        b: &SparseVec,
        inside_derived: bool,
    ) -> Result<NilpotentAlgebra> {
        self.check_central_line(b, inside_derived)?;
        if self.dim == 1 {
            return Err(Error::InvalidArgument(
                "quotient of a one-dimensional algebra is zero".into(),
            ));
        }
        let (pivot, lead) = b.leading().expect("nonzero");
        let b_hat = b.scaled(&lead.recip());
        let project = |v: &SparseVec| -> SparseVec {
            let mut w = v.clone();
            if let Some(c) = v.get(pivot) {
                w.add_scaled(&-c.clone(), &b_hat);
            }
            SparseVec::from_entries(
                w.into_entries()
                    .into_iter()
                    .map(|(i, c)| (if i > pivot { i - 1 } else { i }, c)),
            )
        };
        let keep: Vec<usize> = (0..self.dim).filter(|&i| i != pivot).collect();
        let mut brackets = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (bb, &j) in keep.iter().enumerate().skip(a + 1) {
                let v = project(self.bracket_basis(i, j));
                if !v.is_zero() {
                    brackets.push(((a, bb), v));
                }
            }
        }
        Self::from_structure_constants(self.dim - 1, brackets)
    }

    /// Structure constants keyed by zero-based `(i, j)`, `i < j`.
    pub fn bracket_map(&self) -> BTreeMap<(usize, usize), SparseVec> {
        self.structure_constants()
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }
}

impl fmt::Display for NilpotentAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (dim {})", self.label(), self.dim)?;
        let mut any = false;
        for ((i, j), v) in self.structure_constants() {
            any = true;
            write!(f, "  [x{}, x{}] = ", i + 1, j + 1)?;
            for (t, (k, c)) in v.iter().enumerate() {
                let neg = c < &Rational::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                match (t, neg) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "x{}", k + 1)?;
            }
            writeln!(f)?;
        }
        if !any {
            writeln!(f, "  (abelian)")?;
        }
        Ok(())
    }
}

pub(crate) fn bracket_in(
    dim: usize,
    table: &[SparseVec],
    x: &SparseVec,
    y: &SparseVec,
) -> SparseVec {
    let mut terms = Vec::new();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            if i == j {
                continue;
            }
            let coef = a * b;
            for (k, c) in table[i * dim + j].iter() {
                terms.push((k, &coef * c));
            }
        }
    }
    SparseVec::from_entries(terms)
}

fn check_jacobi(dim: usize, table: &[SparseVec]) -> Result<()> {
    let e = |i: usize| SparseVec::unit(i);
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let mut s = bracket_in(dim, table, &table[i * dim + j], &e(k));
                s.add_scaled(
                    &Rational::one(),
                    &bracket_in(dim, table, &table[j * dim + k], &e(i)),
                );
                s.add_scaled(
                    &Rational::one(),
                    &bracket_in(dim, table, &table[k * dim + i], &e(j)),
                );
                if !s.is_zero() {
                    return Err(Error::JacobiViolation(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    Ok(())
}

/// `L^1 ⊇ L^2 ⊇ ... ⊇ L^(k+1) = 0`.
fn lower_central_series(dim: usize, table: &[SparseVec]) -> Result<Vec<Subspace>> {
    let mut terms = vec![Subspace::full(dim)];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_zero() {
            return Ok(terms);
        }
        let next = Subspace::span(
            last.basis().iter().flat_map(|v| {
                (0..dim).map(move |j| bracket_in(dim, table, v, &SparseVec::unit(j)))
            }),
            dim,
        )?;
        if next.dim() == last.dim() {
            return Err(Error::NotNilpotent {
                stable_dim: next.dim(),
            });
        }
        terms.push(next);
    }
}

/// Kernel of `x -> ([x, e_0], ..., [x, e_(n-1)])`.
pub(crate) fn center_of(dim: usize, table: &[SparseVec]) -> Result<Subspace> {
    let images: Vec<SparseVec> = (0..dim)
        .map(|i| {
            SparseVec::from_entries((0..dim).flat_map(|j| {
                table[i * dim + j]
                    .iter()
                    .map(move |(k, c)| (j * dim + k, c.clone()))
            }))
        })
        .collect();
    Subspace::kernel(&images, dim * dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn heisenberg_one() -> NilpotentAlgebra {
        NilpotentAlgebra::from_structure_constants(3, [((0, 1), SparseVec::unit(2))]).unwrap()
    }

    #[test]
    fn abelian_has_class_one() {
        let a = NilpotentAlgebra::from_structure_constants(3, []).unwrap();
        assert!(a.is_abelian());
        assert_eq!(a.class(), 1);
        assert_eq!(a.series().center_dim, 3);
        assert_eq!(a.series().lcs_dims, vec![3, 0]);
    }

    #[test]
    fn heisenberg_series() {
        let h = heisenberg_one();
        assert_eq!(h.class(), 2);
        assert_eq!(
            h.series(),
            Series {
                lcs_dims: vec![3, 1, 0],
                center_dim: 1,
                derived_dim: 1,
                class: 2
            }
        );
        assert_eq!(h.center(), &h.derived());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let err = NilpotentAlgebra::from_structure_constants(2, [((0, 1), SparseVec::unit(0))])
            .unwrap_err();
        assert_eq!(err, Error::NotNilpotent { stable_dim: 1 });
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // The Jacobi sum on (x1, x2, x3) is 2*x1.
        let err = NilpotentAlgebra::from_structure_constants(
            3,
            [
                ((0, 1), SparseVec::unit(1)),
                ((0, 2), SparseVec::from_integers(&[0, 1, 1])),
                ((1, 2), SparseVec::unit(0)),
            ],
        )
        .unwrap_err();
        assert_eq!(err, Error::JacobiViolation(1, 2, 3));
    }

    #[test]
    fn bad_indices_are_rejected() {
        assert!(
            NilpotentAlgebra::from_structure_constants(3, [((1, 0), SparseVec::unit(2))]).is_err()
        );
        assert!(
            NilpotentAlgebra::from_structure_constants(3, [((0, 3), SparseVec::unit(2))]).is_err()
        );
        assert!(
            NilpotentAlgebra::from_structure_constants(3, [((0, 1), SparseVec::unit(3))]).is_err()
        );
        assert!(NilpotentAlgebra::from_structure_constants(0, []).is_err());
    }

    #[test]
    fn direct_sum_blocks() {
        let h = heisenberg_one();
        let a = NilpotentAlgebra::from_structure_constants(1, []).unwrap();
        let s = h.direct_sum(&a);
        assert_eq!(s.dim(), 4);
        assert_eq!(s.class(), 2);
        assert_eq!(s.derived_dim(), 1);
        assert_eq!(s.series().center_dim, 2);
        // Cached series agree with a fresh validation of the same table.
        let fresh = NilpotentAlgebra::from_structure_constants(4, s.bracket_map()).unwrap();
        assert_eq!(fresh.series(), s.series());
    }

    #[test]
    fn central_quotients() {
        let h = heisenberg_one();
        let q = h.central_quotient(&SparseVec::unit(2), true).unwrap();
        assert!(q.is_abelian());
        assert_eq!(q.dim(), 2);
        assert_eq!(
            h.central_quotient(&SparseVec::unit(0), false).unwrap_err(),
            Error::NotCentral
        );
        let a = NilpotentAlgebra::from_structure_constants(1, []).unwrap();
        let s = h.direct_sum(&a);
        assert_eq!(
            s.central_quotient(&SparseVec::unit(3), true).unwrap_err(),
            Error::NotInDerived
        );
        assert_eq!(s.central_quotient(&SparseVec::unit(3), false).unwrap(), h);
    }

    #[test]
    fn quotient_by_scaled_combination() {
        // Quotient of H(1)+A(1) by the central line x3 + 2*x4.
        let h = heisenberg_one();
        let a = NilpotentAlgebra::from_structure_constants(1, []).unwrap();
        let s = h.direct_sum(&a);
        let b = SparseVec::from_entries([(2, rat(1)), (3, rat(2))]);
        let q = s.central_quotient(&b, false).unwrap();
        // x3 is dropped; x3 = -2*x4 in the quotient, so [x1, x2] = -2 x4'.
        assert_eq!(
            q.bracket_basis(0, 1),
            &SparseVec::from_entries([(2, rat(-2))])
        );
        assert_eq!(q.class(), 2);
    }
}
