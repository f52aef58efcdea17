//! c-nilpotent multipliers `M^(c)(L) = (R ∩ F^(c+1)) / [R, F, ..., F]`,
//! the invariant `s2`, the dimension bounds, and the classification table.
//!
//! # Truncation
//!
//! For `L` of class `k`, `R` contains `F^(k+1)`, so `[R, F, ..., F]` (with `c`
//! copies of `F`) contains `F^(k+1+c)`. Both the numerator and the
//! denominator therefore contain `F^(k+c+1)` and the quotient is unchanged
//! when computed in `F / F^(k+c+1)`. That is the truncation `N = k + c` used
//! throughout.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::freelie::TruncatedFreeAlgebra;
use crate::hall::DEFAULT_CEILING;
use crate::linalg::{Echelon, SparseVec, Subspace};
use crate::presentation::FreePresentation;

/// `[W, F]` for an ideal `W` of `F`.
///
/// Because `W` is an ideal, `[w, [x_a, x_b]] = [[w, x_a], x_b] - [[w, x_b], x_a]`
/// lies in the span of brackets with generators, and by induction so does
/// `[w, f]` for every `f`. Bracketing the basis of `W` with the generators
/// is therefore enough.
pub fn commutator_with_free(free: &TruncatedFreeAlgebra, ideal: &Subspace) -> Result<Subspace> {
    let mut ech = Echelon::new(free.dim());
    for w in ideal.basis() {
        for i in 0..free.generators() {
            if ech.is_full() {
                break;
            }
            ech.insert(free.bracket_vec(&w, &SparseVec::unit(i)))?;
        }
    }
    Ok(ech.finish())
}

/// The pieces of one multiplier computation.
#[derive(Debug, Clone)]
pub struct MultiplierComputation {
    level: usize,
    /// `R ∩ F^(c+1)`.
    ideal_tail: Subspace,
    /// `[R, F, ..., F]` with `c` copies of `F`.
    commutator: Subspace,
    dim: usize,
}

impl MultiplierComputation {
    /// Computes `M^(c)` from a validated presentation whose truncation is at
    /// least `class + c`.
    pub fn new(presentation: &FreePresentation, c: usize) -> Result<Self> {
        let free = presentation.free();
        let class = presentation.target().class();
        if c == 0 || free.max_length() < class + c {
            return Err(Error::InvalidArgument(format!(
                "level {c} needs truncation >= {}, presentation has {}",
                class + c,
                free.max_length()
            )));
        }
        let ideal = presentation.ideal();
        let ideal_tail = ideal.coordinate_tail_intersection(free.basis().length_start(c + 1))?;
        let mut commutator = ideal.clone();
        for _ in 0..c {
            commutator = commutator_with_free(free, &commutator)?;
        }
        if !commutator.is_subspace_of(&ideal_tail)? {
            return Err(Error::Internal(
                "[R, F, ..., F] is not contained in R ∩ F^(c+1)".into(),
            ));
        }
        Ok(MultiplierComputation {
            level: c,
            dim: ideal_tail.dim() - commutator.dim(),
            ideal_tail,
            commutator,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ideal_tail(&self) -> &Subspace {
        &self.ideal_tail
    }

    pub fn commutator(&self) -> &Subspace {
        &self.commutator
    }

    /// `dim M^(c)(L)`.
    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Classification verdicts keyed by `s2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// `s2 = 0`: `H(1) ⊕ A(n-3)`.
    HeisenbergOne,
    /// `s2 = 3`: `H(k) ⊕ A(n-2k-1)` with `k >= 2`.
    HeisenbergHigher,
    /// `s2 = 5`: `L4_3` or `L5_8`.
    L43OrL58,
    /// `s2 = 6`: `L5_5`.
    L55,
    /// `s2 >= 7`.
    BeyondTable,
}

impl Verdict {
    /// Maps `s2` to a verdict; `1`, `2`, `4` cannot occur.
    pub fn from_s2(s2: i64) -> Result<Verdict> {
        match s2 {
            0 => Ok(Verdict::HeisenbergOne),
            3 => Ok(Verdict::HeisenbergHigher),
            5 => Ok(Verdict::L43OrL58),
            6 => Ok(Verdict::L55),
            v if v >= 7 => Ok(Verdict::BeyondTable),
            v => Err(Error::ImpossibleValue(v)),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::HeisenbergOne => "H(1)+A(n-3)",
            Verdict::HeisenbergHigher => "H(k)+A(n-2k-1), k>=2",
            Verdict::L43OrL58 => "L4_3 or L5_8",
            Verdict::L55 => "L5_5",
            Verdict::BeyondTable => "beyond classification table",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `n(n-1)(n-2)/3 + 3`, the value of `dim M^(2)` at `s2 = 0`.
pub fn s2_reference(n: usize) -> i64 {
    let n = n as i64;
    n * (n - 1) * (n - 2) / 3 + 3
}

/// Upper bounds for `dim M^(2)(L)` in terms of `n = dim L` and `m = dim L^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub n: usize,
    pub m: usize,
    pub dim_multiplier: usize,
    /// `(n-m)((n+2m-2)(n-m-1) + 3(m-1))/3 + 3`.
    pub bound: i64,
    pub slack: i64,
    /// `n(n-1)(n-2)/3 + 1`, applicable when `m = 2`.
    pub derived_two_bound: Option<i64>,
    /// `n(n-1)(n-2)/3 - 2`, applicable when `m >= 3`.
    pub derived_three_bound: Option<i64>,
    /// `n(n-1)(n-2)/3 - 2`, applicable when `m >= 2`.
    pub derived_two_or_more_bound: Option<i64>,
}

impl BoundCheck {
    pub fn from_dims(n: usize, m: usize, dim_multiplier: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Abelian);
        }
        let (ni, mi) = (n as i64, m as i64);
        let numerator = (ni - mi) * ((ni + 2 * mi - 2) * (ni - mi - 1) + 3 * (mi - 1));
        debug_assert_eq!(numerator % 3, 0);
        let bound = numerator / 3 + 3;
        let cubic = ni * (ni - 1) * (ni - 2) / 3;
        Ok(BoundCheck {
            n,
            m,
            dim_multiplier,
            bound,
            slack: bound - dim_multiplier as i64,
            derived_two_bound: (m == 2).then_some(cubic + 1),
            derived_three_bound: (m >= 3).then_some(cubic - 2),
            derived_two_or_more_bound: (m >= 2).then_some(cubic - 2),
        })
    }

    /// Whether every applicable bound holds.
    pub fn all_hold(&self) -> bool {
        let d = self.dim_multiplier as i64;
        self.slack >= 0
            && [
                self.derived_two_bound,
                self.derived_three_bound,
                self.derived_two_or_more_bound,
            ]
            .iter()
            .flatten()
            .all(|&b| d <= b)
    }
}

/// Entry point carrying the basis-size ceiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Analyzer {
    pub ceiling: usize,
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer {
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl Analyzer {
    pub fn new(ceiling: usize) -> Self {
        Analyzer { ceiling }
    }

    pub fn presentation(&self, algebra: &NilpotentAlgebra, c: usize) -> Result<FreePresentation> {
        FreePresentation::full_basis_with_ceiling(algebra, c, self.ceiling)
    }

    pub fn computation(
        &self,
        algebra: &NilpotentAlgebra,
        c: usize,
    ) -> Result<MultiplierComputation> {
        MultiplierComputation::new(&self.presentation(algebra, c)?, c)
    }

    /// `dim M^(c)(L)`.
    pub fn multiplier_dim(&self, algebra: &NilpotentAlgebra, c: usize) -> Result<usize> {
        Ok(self.computation(algebra, c)?.dim())
    }

    /// `s2(L) = n(n-1)(n-2)/3 + 3 - dim M^(2)(L)` for non-abelian `L`.
    pub fn s2(&self, algebra: &NilpotentAlgebra) -> Result<i64> {
        if algebra.is_abelian() {
            return Err(Error::Abelian);
        }
        let dim = self.multiplier_dim(algebra, 2)?;
        s2_from_dim(algebra.dim(), dim)
    }

    pub fn bound_check(&self, algebra: &NilpotentAlgebra) -> Result<BoundCheck> {
        if algebra.is_abelian() {
            return Err(Error::Abelian);
        }
        let dim = self.multiplier_dim(algebra, 2)?;
        checked_bounds(algebra.dim(), algebra.derived_dim(), dim)
    }

    pub fn classify(&self, algebra: &NilpotentAlgebra) -> Result<Classification> {
        let s2 = self.s2(algebra)?;
        Ok(Classification {
            s2,
            verdict: Verdict::from_s2(s2)?,
        })
    }
}

pub(crate) fn s2_from_dim(n: usize, dim: usize) -> Result<i64> {
    let s2 = s2_reference(n) - dim as i64;
    if s2 < 0 {
        return Err(Error::Internal(format!(
            "dim M^(2) = {dim} exceeds the maximum {} for n = {n}",
            s2_reference(n)
        )));
    }
    Ok(s2)
}

pub(crate) fn checked_bounds(n: usize, m: usize, dim: usize) -> Result<BoundCheck> {
    let check = BoundCheck::from_dims(n, m, dim)?;
    if !check.all_hold() {
        return Err(Error::Internal(format!(
            "dimension bound violated: {check:?}"
        )));
    }
    Ok(check)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub s2: i64,
    pub verdict: Verdict,
}

pub fn multiplier_dim(algebra: &NilpotentAlgebra, c: usize) -> Result<usize> {
    Analyzer::default().multiplier_dim(algebra, c)
}

pub fn s2(algebra: &NilpotentAlgebra) -> Result<i64> {
    Analyzer::default().s2(algebra)
}

pub fn bound_check(algebra: &NilpotentAlgebra) -> Result<BoundCheck> {
    Analyzer::default().bound_check(algebra)
}

pub fn classify(algebra: &NilpotentAlgebra) -> Result<Classification> {
    Analyzer::default().classify(algebra)
}
