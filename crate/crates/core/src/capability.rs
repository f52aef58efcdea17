//! 2-capability through the cover `E = F / [R, F, F]`.
//!
//! With `π: E -> L` induced by the presentation, the image `π(Z_2(E))` is the
//! 2-epicenter of `L`, and `L` is 2-capable exactly when it vanishes. A line
//! `B` lies in the 2-epicenter iff `M^(2)(L) -> M^(2)(L/B)` is injective,
//! which [`monomorphism_check`] tests directly on the free algebra.

use crate::algebra::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec, Subspace};
use crate::multiplier::{commutator_with_free, Analyzer, MultiplierComputation};
use crate::presentation::{evaluate_basis, ideal_closure, FreePresentation};

/// `F / W` written in the non-pivot coordinates of `W`.
#[derive(Debug, Clone)]
pub struct CoverAlgebra {
    /// Hall ranks of the surviving coordinates.
    ranks: Vec<usize>,
    table: Vec<SparseVec>,
    /// Image of each coordinate in the target algebra.
    projection: Vec<SparseVec>,
    target_dim: usize,
}

impl CoverAlgebra {
    /// Builds `F / W` for an ideal `W` contained in the presentation ideal.
    pub fn new(presentation: &FreePresentation, w: &Subspace) -> Result<Self> {
        let free = presentation.free();
        let ranks = w.non_pivots();
        let mut index = vec![None; free.dim()];
        for (i, &r) in ranks.iter().enumerate() {
            index[r] = Some(i);
        }
        let to_cover = |v: &SparseVec| -> Result<SparseVec> {
            let reduced = w.reduce(v)?;
            reduced
                .into_entries()
                .into_iter()
                .map(|(r, c)| {
                    index[r]
                        .map(|i| (i, c))
                        .ok_or_else(|| Error::Internal("reduction left a pivot coordinate".into()))
                })
                .collect::<Result<Vec<_>>>()
                .map(SparseVec::from_entries)
        };
        let d = ranks.len();
        let mut table = vec![SparseVec::new(); d * d];
        for a in 0..d {
            for b in a + 1..d {
                let v = to_cover(&free.bracket_ranks(ranks[a], ranks[b]))?;
                table[b * d + a] = v.negated();
                table[a * d + b] = v;
            }
        }
        let evaluation = evaluate_basis(free, presentation.target(), presentation.images());
        let projection = ranks.iter().map(|&r| evaluation[r].clone()).collect();
        Ok(CoverAlgebra {
            ranks,
            table,
            projection,
            target_dim: presentation.target().dim(),
        })
    }

    pub fn dim(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[a * self.dim() + b]
    }

    /// `{x : [x, E] ⊆ S}` for a subspace `S` of the cover.
    pub fn centralizer_mod(&self, s: &Subspace) -> Result<Subspace> {
        let d = self.dim();
        let images = (0..d)
            .map(|a| {
                let mut entries = Vec::new();
                for b in 0..d {
                    let v = s.reduce(self.bracket_basis(a, b))?;
                    entries.extend(v.into_entries().into_iter().map(|(i, c)| (b * d + i, c)));
                }
                Ok(SparseVec::from_entries(entries))
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::kernel(&images, d * d)
    }

    pub fn center(&self) -> Result<Subspace> {
        self.centralizer_mod(&Subspace::zero(self.dim()))
    }

    /// `Z_2(E) = {x : [x, E] ⊆ Z(E)}`.
    pub fn second_center(&self) -> Result<Subspace> {
        self.centralizer_mod(&self.center()?)
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(c, &self.projection[i]);
        }
        out
    }

    pub fn project_subspace(&self, s: &Subspace) -> Result<Subspace> {
        Subspace::span(s.basis().iter().map(|v| self.project(v)), self.target_dim)
    }
}

#[derive(Debug, Clone)]
pub struct Capability {
    /// `π(Z_2(E))`, the 2-epicenter.
    pub epicenter: Subspace,
    pub cover_dim: usize,
}

impl Capability {
    pub fn capable(&self) -> bool {
        self.epicenter.is_zero()
    }

    /// A nonzero element of the 2-epicenter when `L` is not 2-capable.
    pub fn witness(&self) -> Option<SparseVec> {
        self.epicenter.basis().into_iter().next()
    }
}

/// Outcome of comparing `M^(2)(L)` with `M^(2)(L/B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomorphism {
    pub injective: bool,
    pub dim_multiplier: usize,
    pub dim_quotient_multiplier: usize,
    /// Dimension of the kernel of `M^(2)(L) -> M^(2)(L/B)`.
    pub kernel_dim: usize,
}

impl Analyzer {
    pub fn capability(&self, algebra: &NilpotentAlgebra) -> Result<Capability> {
        self.capability_with(&self.presentation(algebra, 2)?)
    }

    /// Same as [`Analyzer::capability`] for a caller-supplied presentation.
    pub fn capability_with(&self, presentation: &FreePresentation) -> Result<Capability> {
        let computation = MultiplierComputation::new(presentation, 2)?;
        let cover = CoverAlgebra::new(presentation, computation.commutator())?;
        let epicenter = cover.project_subspace(&cover.second_center()?)?;
        if !epicenter.is_subspace_of(&second_center(presentation.target())?)? {
            return Err(Error::Internal("epicenter escapes Z_2(L)".into()));
        }
        Ok(Capability {
            epicenter,
            cover_dim: cover.dim(),
        })
    }

    pub fn two_capable(&self, algebra: &NilpotentAlgebra) -> Result<bool> {
        Ok(self.capability(algebra)?.capable())
    }

    /// Injectivity of `M^(2)(L) -> M^(2)(L/B)` for `B = span{b}`, with `B`
    /// central and inside `L^2`.
    pub fn monomorphism_check(
        &self,
        algebra: &NilpotentAlgebra,
        b: &SparseVec,
    ) -> Result<Monomorphism> {
        algebra.check_central_line(b, true)?;
        let presentation = self.presentation(algebra, 2)?;
        let free = presentation.free();
        let computation = MultiplierComputation::new(&presentation, 2)?;
        // Generators are the basis of L, so the preimage of b is b itself.
        let enlarged = ideal_closure(
            free,
            Echelon::from_subspace(presentation.ideal()),
            vec![b.clone()],
            None,
        )?;
        let enlarged_tail = enlarged.coordinate_tail_intersection(free.basis().length_start(3))?;
        let mut w = enlarged;
        for _ in 0..2 {
            w = commutator_with_free(free, &w)?;
        }
        let meet = computation.ideal_tail().intersect(&w)?;
        let kernel_dim = meet.dim() - computation.commutator().dim();
        Ok(Monomorphism {
            injective: kernel_dim == 0,
            dim_multiplier: computation.dim(),
            dim_quotient_multiplier: enlarged_tail.dim() - w.dim(),
            kernel_dim,
        })
    }

    /// `dim M^(2)(L/B) + (n-m)^2 - dim(L^3 ∩ B) - dim M^(2)(L)`, which is
    /// never negative.
    pub fn quotient_deficiency(&self, algebra: &NilpotentAlgebra, b: &SparseVec) -> Result<i64> {
        algebra.check_central_line(b, true)?;
        let quotient = algebra.central_quotient(b, true)?;
        let n = algebra.dim() as i64;
        let m = algebra.derived_dim() as i64;
        let meet = if algebra.lcs_term(3).contains(b)? {
            1
        } else {
            0
        };
        let value = self.multiplier_dim(&quotient, 2)? as i64 + (n - m) * (n - m)
            - meet
            - self.multiplier_dim(algebra, 2)? as i64;
        if value < 0 {
            return Err(Error::Internal(format!(
                "negative quotient deficiency {value}"
            )));
        }
        Ok(value)
    }
}

/// `Z_2(L)`.
fn second_center(algebra: &NilpotentAlgebra) -> Result<Subspace> {
    let n = algebra.dim();
    let center = algebra.center();
    let images = (0..n)
        .map(|a| {
            let mut entries = Vec::new();
            for b in 0..n {
                let v = center.reduce(algebra.bracket_basis(a, b))?;
                entries.extend(v.into_entries().into_iter().map(|(i, c)| (b * n + i, c)));
            }
            Ok(SparseVec::from_entries(entries))
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::kernel(&images, n * n)
}

pub fn two_capable(algebra: &NilpotentAlgebra) -> Result<bool> {
    Analyzer::default().two_capable(algebra)
}

pub fn capability(algebra: &NilpotentAlgebra) -> Result<Capability> {
    Analyzer::default().capability(algebra)
}

pub fn monomorphism_check(algebra: &NilpotentAlgebra, b: &SparseVec) -> Result<Monomorphism> {
    Analyzer::default().monomorphism_check(algebra, b)
}

pub fn quotient_deficiency(algebra: &NilpotentAlgebra, b: &SparseVec) -> Result<i64> {
    Analyzer::default().quotient_deficiency(algebra, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn heisenberg_one_is_capable() {
        let c = capability(&catalog::heisenberg(1).unwrap()).unwrap();
        assert!(c.capable());
        assert_eq!(c.witness(), None);
    }

    #[test]
    fn heisenberg_two_is_not() {
        let h = catalog::heisenberg(2).unwrap();
        let c = capability(&h).unwrap();
        assert!(!c.capable());
        assert_eq!(c.witness(), Some(SparseVec::unit(4)));
        assert!(
            monomorphism_check(&h, &SparseVec::unit(4))
                .unwrap()
                .injective
        );
    }

    #[test]
    fn monomorphism_examples() {
        let l43 = catalog::l4_3();
        let m = monomorphism_check(&l43, &SparseVec::unit(3)).unwrap();
        assert_eq!(
            m,
            Monomorphism {
                injective: false,
                dim_multiplier: 6,
                dim_quotient_multiplier: 5,
                kernel_dim: m.kernel_dim,
            }
        );
        assert!(m.kernel_dim > 0);
        let h1 = catalog::heisenberg(1).unwrap();
        let m = monomorphism_check(&h1, &SparseVec::unit(2)).unwrap();
        assert!(!m.injective);
        assert_eq!(m.dim_quotient_multiplier, 2);
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(
            quotient_deficiency(&catalog::l4_3(), &SparseVec::unit(3)).unwrap(),
            2
        );
        assert_eq!(
            quotient_deficiency(&catalog::heisenberg(1).unwrap(), &SparseVec::unit(2)).unwrap(),
            1
        );
        let s = catalog::catalog("H(1)+A(1)").unwrap();
        assert_eq!(
            quotient_deficiency(&s, &SparseVec::unit(3)).unwrap_err(),
            Error::NotInDerived
        );
        assert_eq!(
            monomorphism_check(&s, &SparseVec::unit(0)).unwrap_err(),
            Error::NotCentral
        );
    }
}
