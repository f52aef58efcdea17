//! Free presentations `L ≅ F / R`, computed modulo `F^(N+1)`.
//!
//! A presentation is given by generator images in `L` and relators in the
//! truncated free algebra. It is validated on construction: every relator
//! maps to zero, the generators generate `L`, and the ideal closure of the
//! relators has codimension `dim L`. Together these say the closure is the
//! whole kernel of `F / F^(N+1) -> L`.

use std::sync::Arc;

use crate::algebra::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::freelie::{FreeLieElement, TruncatedFreeAlgebra};
use crate::hall::{Node, DEFAULT_CEILING};
use crate::linalg::{Echelon, SparseVec, Subspace};

#[derive(Debug, Clone)]
pub struct FreePresentation {
    target: NilpotentAlgebra,
    free: Arc<TruncatedFreeAlgebra>,
    images: Vec<SparseVec>,
    relators: Vec<FreeLieElement>,
    includes_tail: bool,
    level: usize,
    ideal: Subspace,
}

impl FreePresentation {
    /// One generator per basis element of `L`, with relators
    /// `[x_i, x_j] - sum_k c_ij^k x_k` for all `i < j`, truncated at
    /// `N = class(L) + c`.
    pub fn full_basis(target: &NilpotentAlgebra, c: usize) -> Result<Self> {
        Self::full_basis_with_ceiling(target, c, DEFAULT_CEILING)
    }

    pub fn full_basis_with_ceiling(
        target: &NilpotentAlgebra,
        c: usize,
        ceiling: usize,
    ) -> Result<Self> {
        let n = target.dim();
        let free = Arc::new(Self::free_algebra_for(target, n, c, ceiling)?);
        let mut relators = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let commutator = free.bracket_vec(&SparseVec::unit(i), &SparseVec::unit(j));
                // Generators occupy ranks 0..n, so L-coordinates are free coordinates.
                relators.push(free.element(commutator.sub(target.bracket_basis(i, j)))?);
            }
        }
        let images = (0..n).map(SparseVec::unit).collect();
        Self::from_relators(target, free, c, images, relators, false).map_err(|e| match e {
            Error::CeilingExceeded { .. } => e,
            other => Error::InvalidPresentation(format!("full-basis presentation failed: {other}")),
        })
    }

    /// The truncated free algebra on `generators` generators suitable for
    /// computing the level-`c` multiplier of `target`.
    pub fn free_algebra_for(
        target: &NilpotentAlgebra,
        generators: usize,
        c: usize,
        ceiling: usize,
    ) -> Result<TruncatedFreeAlgebra> {
        if c == 0 {
            return Err(Error::InvalidArgument(
                "multiplier level must be at least 1".into(),
            ));
        }
        TruncatedFreeAlgebra::with_ceiling(generators, target.class() + c, ceiling)
    }

    /// A user-supplied presentation. `images[i]` is the image of generator
    /// `x_(i+1)` in `target`. With `includes_tail`, `R` also contains
    /// `F^(class + 1)`, as in presentations written `<relators> + F^(k+1)`.
    pub fn from_relators(
        target: &NilpotentAlgebra,
        free: Arc<TruncatedFreeAlgebra>,
        c: usize,
        images: Vec<SparseVec>,
        relators: Vec<FreeLieElement>,
        includes_tail: bool,
    ) -> Result<Self> {
        let n = target.dim();
        let k = target.class();
        if c == 0 {
            return Err(Error::InvalidArgument(
                "multiplier level must be at least 1".into(),
            ));
        }
        if free.max_length() < k + c {
            return Err(Error::InvalidPresentation(format!(
                "truncation at length {} is below class + c = {}",
                free.max_length(),
                k + c
            )));
        }
        if images.len() != free.generators() {
            return Err(Error::InvalidPresentation(format!(
                "{} generator images for {} generators",
                images.len(),
                free.generators()
            )));
        }
        if let Some(bad) = images.iter().find(|v| v.support_bound() > n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.support_bound(),
            });
        }
        let evaluation = evaluate_basis(&free, target, &images);
        for (idx, r) in relators.iter().enumerate() {
            let value = evaluate(&evaluation, r.coeffs());
            if !value.is_zero() {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} does not vanish in the target",
                    idx + 1
                )));
            }
        }
        let image_span = Subspace::span(evaluation.iter().cloned(), n)?;
        if image_span.dim() != n {
            return Err(Error::InvalidPresentation(format!(
                "generators span a subalgebra of dimension {} < {n}",
                image_span.dim()
            )));
        }

        let tail_start = includes_tail.then(|| free.basis().length_start(k + 1));
        let ideal = ideal_closure(
            &free,
            Echelon::new(free.dim()),
            relators.iter().map(|r| r.coeffs().clone()).collect(),
            tail_start,
        )?;
        if ideal.dim() + n != free.dim() {
            return Err(Error::InvalidPresentation(format!(
                "relator ideal has codimension {} but the target has dimension {n}",
                free.dim() - ideal.dim()
            )));
        }

        Ok(FreePresentation {
            target: target.clone(),
            free,
            images,
            relators,
            includes_tail,
            level: c,
            ideal,
        })
    }

    /// Presentation whose relators are a basis of the kernel of
    /// `F / F^(N+1) -> L` for the given generator images.
    pub fn from_kernel(
        target: &NilpotentAlgebra,
        free: Arc<TruncatedFreeAlgebra>,
        c: usize,
        images: Vec<SparseVec>,
    ) -> Result<Self> {
        if images.len() != free.generators() {
            return Err(Error::InvalidPresentation(format!(
                "{} generator images for {} generators",
                images.len(),
                free.generators()
            )));
        }
        let evaluation = evaluate_basis(&free, target, &images);
        let kernel = Subspace::kernel(&evaluation, target.dim())?;
        let relators = kernel
            .basis()
            .into_iter()
            .map(|v| free.element(v))
            .collect::<Result<Vec<_>>>()?;
        Self::from_relators(target, free, c, images, relators, false)
    }

    pub fn target(&self) -> &NilpotentAlgebra {
        &self.target
    }

    pub fn free(&self) -> &Arc<TruncatedFreeAlgebra> {
        &self.free
    }

    pub fn generators(&self) -> usize {
        self.free.generators()
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn relators(&self) -> &[FreeLieElement] {
        &self.relators
    }

    pub fn includes_tail(&self) -> bool {
        self.includes_tail
    }

    /// The multiplier level `c` the truncation was chosen for.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Truncation length `N`.
    pub fn truncation(&self) -> usize {
        self.free.max_length()
    }

    /// The relator ideal `R / F^(N+1)` in reduced echelon form (natural
    /// order, so coordinates of shorter commutators are eliminated first).
    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Images in `L` of every Hall basis element.
    pub fn evaluation(&self) -> Vec<SparseVec> {
        evaluate_basis(&self.free, &self.target, &self.images)
    }
}

/// Images of all Hall basis elements under the homomorphism fixed by the
/// generator images.
pub(crate) fn evaluate_basis(
    free: &TruncatedFreeAlgebra,
    target: &NilpotentAlgebra,
    images: &[SparseVec],
) -> Vec<SparseVec> {
    let basis = free.basis();
    let mut out: Vec<SparseVec> = Vec::with_capacity(basis.len());
    for c in basis.elements() {
        let v = match c.node() {
            Node::Generator(i) => images[i].clone(),
            Node::Pair(u, w) => target.bracket(&out[u], &out[w]),
        };
        out.push(v);
    }
    out
}

pub(crate) fn evaluate(evaluation: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, c) in v.iter() {
        acc.add_scaled(c, &evaluation[i]);
    }
    acc
}

/// Smallest ideal containing the span in `start` (assumed already an ideal)
/// and the `seeds`, plus all coordinates from `tail_start` on when given.
///
/// An ideal of `F` is spanned by left-normed brackets `[r, x_i1, ..., x_ij]`,
/// so it suffices to bracket with generators. Each new independent vector is
/// bracketed exactly once; a round that adds nothing ends the closure, and
/// after `N` rounds every further bracket has length `> N`.
pub(crate) fn ideal_closure(
    free: &TruncatedFreeAlgebra,
    mut start: Echelon,
    seeds: Vec<SparseVec>,
    tail_start: Option<usize>,
) -> Result<Subspace> {
    if let Some(t) = tail_start {
        for rank in t..free.dim() {
            start.insert(SparseVec::unit(rank))?;
        }
    }
    let mut frontier = Vec::new();
    for s in seeds {
        if start.insert(s.clone())? {
            frontier.push(s);
        }
    }
    let g = free.generators();
    let mut rounds = 0;
    while !frontier.is_empty() {
        if rounds == free.max_length() {
            return Err(Error::Internal(
                "ideal closure did not stabilize within the truncation length".into(),
            ));
        }
        rounds += 1;
        let mut next = Vec::new();
        for v in &frontier {
            for i in 0..g {
                if start.is_full() {
                    break;
                }
                let w = free.bracket_vec(v, &SparseVec::unit(i));
                if !w.is_zero() && start.insert(w.clone())? {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(start.finish())
}
