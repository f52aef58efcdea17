//! Basic commutators (a Hall set) on `d` generators and the Witt counting
//! formula.
//!
//! Generators `x1 < x2 < ... < xd` are the basic commutators of length one.
//! A bracket `[u, v]` of total length `t` is basic when `u > v` and, if `u`
//! is itself `[s, w]`, then `v >= w`. Every commutator of length `t` follows
//! all commutators of shorter length. Within one length the order is
//! lexicographic on the component ranks `(rank(u), rank(v))`; other tie-breaks
//! give different Hall sets but the same dimensions everywhere downstream.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of basis elements a single basis may hold.
pub const DEFAULT_CEILING: usize = 200_000;

/// Möbius function.
pub fn mobius(m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::InvalidArgument("mobius(0) is undefined".into()));
    }
    let mut rest = m;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Number of basic commutators of length `n` on `d` generators,
/// `(1/n) * sum_{m | n} mu(m) d^(n/m)`.
pub fn witt(d: u64, n: u64) -> Result<BigUint> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "witt requires d >= 1 and n >= 1, got d = {d}, n = {n}"
        )));
    }
    let base = BigInt::from(d);
    let mut total = BigInt::zero();
    for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
        let mu = mobius(m)?;
        if mu == 0 {
            continue;
        }
        let exp = u32::try_from(n / m)
            .map_err(|_| Error::InvalidArgument(format!("length {n} is too large")))?;
        let term = num_traits::pow(base.clone(), exp as usize);
        if mu > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let (quot, rem) = total.div_rem(&BigInt::from(n));
    debug_assert!(rem.is_zero() && !quot.is_negative());
    Ok(quot.abs().to_biguint().expect("non-negative"))
}

/// Witt number as a machine integer, when it fits.
pub fn witt_usize(d: usize, n: usize) -> Result<usize> {
    witt(d as u64, n as u64)?
        .to_usize()
        .ok_or_else(|| Error::InvalidArgument(format!("witt({d}, {n}) overflows usize")))
}

/// Shape of a basic commutator: a generator, or a bracket of two earlier
/// basic commutators referenced by rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    /// Zero-based generator index (`x1` is `Generator(0)`).
    Generator(usize),
    /// `[left, right]` with `left > right` in the basis order.
    Pair(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasicCommutator {
    node: Node,
    length: usize,
    rank: usize,
}

impl BasicCommutator {
    pub fn node(&self) -> Node {
        self.node
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Position in the total order of the basis.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_generator(&self) -> bool {
        matches!(self.node, Node::Generator(_))
    }
}

/// The ordered Hall basis of the free nilpotent Lie algebra `F / F^(N+1)`
/// on `d` generators.
#[derive(Debug, Clone)]
pub struct HallBasis {
    generators: usize,
    max_length: usize,
    elements: Vec<BasicCommutator>,
    lookup: HashMap<(usize, usize), usize>,
    // length_starts[t] is the rank of the first element of length t; one
    // sentinel entry past max_length.
    length_starts: Vec<usize>,
}

impl HallBasis {
    /// Generates the basis with the default size ceiling.
    pub fn generate(d: usize, max_length: usize) -> Result<Self> {
        Self::generate_with_ceiling(d, max_length, DEFAULT_CEILING)
    }

    pub fn generate_with_ceiling(d: usize, max_length: usize, ceiling: usize) -> Result<Self> {
        if d == 0 || max_length == 0 {
            return Err(Error::InvalidArgument(format!(
                "a Hall basis needs d >= 1 and N >= 1, got d = {d}, N = {max_length}"
            )));
        }
        let mut requested = BigUint::zero();
        for n in 1..=max_length {
            requested += witt(d as u64, n as u64)?;
        }
        if requested > BigUint::from(ceiling) {
            return Err(Error::CeilingExceeded {
                requested: requested.to_u128().unwrap_or(u128::MAX),
                ceiling,
            });
        }

        let mut elements: Vec<BasicCommutator> = (0..d)
            .map(|i| BasicCommutator {
                node: Node::Generator(i),
                length: 1,
                rank: i,
            })
            .collect();
        let mut lookup = HashMap::new();
        let mut length_starts = vec![0, 0, d];

        for t in 2..=max_length {
            let mut stratum: Vec<(usize, usize)> = Vec::new();
            for left_len in 1..t {
                let right_len = t - left_len;
                // `left > right` in rank forces `left_len >= right_len`.
                if left_len < right_len {
                    continue;
                }
                let lefts = length_starts[left_len]..length_starts[left_len + 1];
                for (u, left) in elements.iter().enumerate().take(lefts.end).skip(lefts.start) {
                    let min_right = match left.node {
                        Node::Generator(_) => 0,
                        Node::Pair(_, w) => w,
                    };
                    let lo = length_starts[right_len].max(min_right);
                    let hi = length_starts[right_len + 1].min(u);
                    stratum.extend((lo..hi).map(|v| (u, v)));
                }
            }
            stratum.sort_unstable();
            let start = elements.len();
            for (offset, &(u, v)) in stratum.iter().enumerate() {
                let rank = start + offset;
                elements.push(BasicCommutator {
                    node: Node::Pair(u, v),
                    length: t,
                    rank,
                });
                lookup.insert((u, v), rank);
            }
            length_starts.push(elements.len());
        }

        Ok(HallBasis {
            generators: d,
            max_length,
            elements,
            lookup,
            length_starts,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasicCommutator] {
        &self.elements
    }

    pub fn get(&self, rank: usize) -> &BasicCommutator {
        &self.elements[rank]
    }

    /// Rank of the basic commutator `[left, right]`, if it is basic and
    /// within the length bound.
    pub fn rank_of_pair(&self, left: usize, right: usize) -> Option<usize> {
        self.lookup.get(&(left, right)).copied()
    }

    /// First rank of length `t` (the total size when `t > max_length`).
    pub fn length_start(&self, t: usize) -> usize {
        if t == 0 {
            0
        } else if t > self.max_length {
            self.elements.len()
        } else {
            self.length_starts[t]
        }
    }

    /// Ranks of the elements of length exactly `t`.
    pub fn stratum(&self, t: usize) -> std::ops::Range<usize> {
        self.length_start(t)..self.length_start(t + 1)
    }

    /// Per-length counts for lengths `1..=max_length`.
    pub fn counts(&self) -> Vec<usize> {
        (1..=self.max_length)
            .map(|t| self.stratum(t).len())
            .collect()
    }

    /// Left-normed rendering, e.g. `[x2,x1,x1]` or `[x3,x2,[x2,x1]]`.
    pub fn render(&self, rank: usize) -> String {
        let mut out = String::new();
        self.render_into(rank, &mut out);
        out
    }

    fn render_into(&self, rank: usize, out: &mut String) {
        match self.elements[rank].node {
            Node::Generator(i) => {
                out.push('x');
                out.push_str(&(i + 1).to_string());
            }
            Node::Pair(..) => {
                let mut rights = Vec::new();
                let mut cur = rank;
                while let Node::Pair(l, r) = self.elements[cur].node {
                    rights.push(r);
                    cur = l;
                }
                out.push('[');
                self.render_into(cur, out);
                for &r in rights.iter().rev() {
                    out.push(',');
                    self.render_into(r, out);
                }
                out.push(']');
            }
        }
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.elements {
            writeln!(f, "{:>6}  {:>2}  {}", c.rank, c.length, self.render(c.rank))?;
        }
        Ok(())
    }
}

/// Sum of the Möbius function over the divisors of `n`.
pub fn mobius_divisor_sum(n: u64) -> Result<i64> {
    let mut s = 0i64;
    for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
        s += mobius(m)? as i64;
    }
    Ok(s)
}
