//! Named algebras: `A(n)`, `H(k)`, `L4_3`, `L5_5`, `L5_8`, and direct sums
//! written as `L4_3+A(1)` (left-associative, whitespace-insensitive).

use crate::algebra::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

/// Abelian algebra of dimension `n`.
pub fn abelian(n: usize) -> Result<NilpotentAlgebra> {
    Ok(NilpotentAlgebra::from_structure_constants(n, [])?.with_name(format!("A({n})")))
}

/// Heisenberg algebra of dimension `2k + 1`: `[x(2i-1), x(2i)] = x(2k+1)`.
pub fn heisenberg(k: usize) -> Result<NilpotentAlgebra> {
    if k == 0 {
        return Err(Error::InvalidArgument("H(k) requires k >= 1".into()));
    }
    let z = 2 * k;
    let brackets = (0..k).map(|i| ((2 * i, 2 * i + 1), SparseVec::unit(z)));
    Ok(
        NilpotentAlgebra::from_structure_constants(2 * k + 1, brackets)?
            .with_name(format!("H({k})")),
    )
}

/// Builds an algebra from 1-based `(i, j, k)` triples meaning `[xi, xj] = xk`.
fn from_triples(dim: usize, triples: &[(usize, usize, usize)], name: &str) -> NilpotentAlgebra {
    NilpotentAlgebra::from_structure_constants(
        dim,
        triples
            .iter()
            .map(|&(i, j, k)| ((i - 1, j - 1), SparseVec::unit(k - 1))),
    )
    .expect("catalog entries are valid")
    .with_name(name)
}

/// `[x1, x2] = x3, [x1, x3] = x4`.
pub fn l4_3() -> NilpotentAlgebra {
    from_triples(4, &[(1, 2, 3), (1, 3, 4)], "L4_3")
}

/// `[x1, x2] = x4, [x1, x3] = x5`.
pub fn l5_8() -> NilpotentAlgebra {
    from_triples(5, &[(1, 2, 4), (1, 3, 5)], "L5_8")
}

/// `[x1, x2] = x3, [x1, x3] = x5, [x2, x4] = x5`.
pub fn l5_5() -> NilpotentAlgebra {
    from_triples(5, &[(1, 2, 3), (1, 3, 5), (2, 4, 5)], "L5_5")
}

/// Resolves a catalog name or a `+`-separated sum of names.
pub fn catalog(expr: &str) -> Result<NilpotentAlgebra> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::UnknownAlgebra(expr.to_string()));
    }
    let mut acc: Option<NilpotentAlgebra> = None;
    for term in compact.split(['+', '⊕']) {
        let summand = match single(term)? {
            Some(a) => a,
            // A(0) is the zero algebra: the identity for direct sums.
            None => continue,
        };
        acc = Some(match acc {
            None => summand,
            Some(a) => a.direct_sum(&summand),
        });
    }
    acc.ok_or_else(|| Error::UnknownAlgebra(expr.to_string()))
}

fn single(term: &str) -> Result<Option<NilpotentAlgebra>> {
    let unknown = || Error::UnknownAlgebra(term.to_string());
    match term {
        "L4_3" => return Ok(Some(l4_3())),
        "L5_5" => return Ok(Some(l5_5())),
        "L5_8" => return Ok(Some(l5_8())),
        _ => {}
    }
    let (head, rest) = term.split_at(term.find('(').ok_or_else(unknown)?);
    let arg = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(unknown)?;
    let value: usize = arg.parse().map_err(|_| unknown())?;
    match head {
        "A" if value == 0 => Ok(None),
        "A" => abelian(value).map(Some),
        "H" => heisenberg(value).map(Some),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_entries() {
        let l43 = catalog("L4_3").unwrap();
        assert_eq!((l43.dim(), l43.class(), l43.derived_dim()), (4, 3, 2));
        assert_eq!(l43.series().lcs_dims, vec![4, 2, 1, 0]);
        assert_eq!(l43.series().center_dim, 1);

        let l58 = catalog("L5_8").unwrap();
        assert_eq!((l58.dim(), l58.class(), l58.derived_dim()), (5, 2, 2));

        let l55 = catalog("L5_5").unwrap();
        assert_eq!((l55.dim(), l55.class(), l55.derived_dim()), (5, 3, 2));

        let h2 = catalog("H(2)").unwrap();
        assert_eq!((h2.dim(), h2.class(), h2.derived_dim()), (5, 2, 1));
        assert_eq!(h2.center().dim(), 1);
    }

    #[test]
    fn heisenberg_family() {
        for k in 1..=4 {
            let h = heisenberg(k).unwrap();
            assert_eq!(h.dim(), 2 * k + 1);
            assert_eq!(h.series().lcs_dims, vec![2 * k + 1, 1, 0]);
            assert_eq!(h.center(), &h.derived());
        }
        assert!(heisenberg(0).is_err());
    }

    #[test]
    fn sums() {
        let s = catalog(" L4_3 + A(1) ").unwrap();
        assert_eq!((s.dim(), s.class(), s.derived_dim()), (5, 3, 2));
        assert_eq!(s.name(), Some("L4_3+A(1)"));
        let a = catalog("A(2)+A(3)").unwrap();
        assert_eq!(a, abelian(5).unwrap());
        assert_eq!(catalog("H(1)+A(0)").unwrap(), heisenberg(1).unwrap());
        assert_eq!(catalog("H(1)⊕A(1)").unwrap().dim(), 4);
    }

    #[test]
    fn unknown_names() {
        for bad in ["", "L6_22", "A(x)", "B(2)", "A(0)", "H(0)", "A(2)+", "H2"] {
            assert!(catalog(bad).is_err(), "{bad:?} should be rejected");
        }
    }
}
