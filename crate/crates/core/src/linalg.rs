//! Exact homology ranks of small chain complexes with `{0, ±1}` boundary
//! entries.
//!
//! Ranks are computed by sparse column reduction (lowest-row pivots) from
//! the top dimension down. A cell that became a pivot row of `∂_{k+1}` has a
//! zero reduced column in `∂_k` and is skipped without work.
//!
//! Over the rationals the reduction is fraction-free: columns stay primitive
//! integer vectors in `i64` with checked arithmetic, and the whole
//! complex is recomputed with big integers if any entry overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// `0` selects the rationals; anything else must be a prime below `2^32`.
    pub fn from_characteristic(c: u64) -> Result<Field> {
        if c == 0 {
            return Ok(Field::Rational);
        }
        if c > u32::MAX as u64 || !is_prime(c) {
            return Err(Error::InvalidCharacteristic(c));
        }
        Ok(Field::Prime(c))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A sparse column: `(row, value)` pairs sorted by row, no zero values.
pub type SparseColumn<E> = Vec<(u32, E)>;

/// A finite chain complex `C_top -> ... -> C_1 -> C_0`.
///
/// `boundaries[k][c]` is the column of `∂_k` for the `c`-th cell of
/// dimension `k`, indexing cells of dimension `k - 1`. `boundaries[0]` is
/// ignored.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    pub cells: Vec<usize>,
    pub boundaries: Vec<Vec<SparseColumn<i8>>>,
}

impl ChainComplex {
    pub fn top_dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    /// Betti numbers `dim H_k` for `k = 0..=top`.
    pub fn homology(&self, field: Field) -> Vec<u64> {
        let ranks = boundary_ranks(self, field);
        (0..self.cells.len())
            .map(|k| {
                let out = ranks[k];
                let inc = ranks.get(k + 1).copied().unwrap_or(0);
                (self.cells[k] as u64)
                    .checked_sub(out + inc)
                    .expect("rank exceeds cell count")
            })
            .collect()
    }
}

/// `rank ∂_k` for `k = 0..=top` (`rank ∂_0 = 0`).
pub fn boundary_ranks(cx: &ChainComplex, field: Field) -> Vec<u64> {
    match field {
        Field::Prime(p) => reduce(cx, &PrimeField(p)).expect("prime field never overflows"),
        Field::Rational => match reduce(cx, &SmallInts) {
            Some(r) => r,
            None => reduce(cx, &BigInts).expect("big integers never overflow"),
        },
    }
}

trait Coefficients {
    type E: Clone;
    fn lift(&self, v: i8) -> Self::E;
    fn is_zero(&self, e: &Self::E) -> bool;
    /// Combine `target` with `pivot` to cancel their shared lowest row.
    fn eliminate(
        &self,
        target: &SparseColumn<Self::E>,
        pivot: &SparseColumn<Self::E>,
    ) -> Option<SparseColumn<Self::E>>;
}

fn reduce<C: Coefficients>(cx: &ChainComplex, coeffs: &C) -> Option<Vec<u64>> {
    let top = cx.top_dim();
    let mut ranks = vec![0u64; cx.cells.len()];
    // rows of dimension k that are pivots of the reduced ∂_{k+1}
    let mut cleared: Vec<bool> = Vec::new();
    for k in (1..=top).rev() {
        let cols = &cx.boundaries[k];
        debug_assert_eq!(cols.len(), cx.cells[k]);
        let mut pivot_of_row: HashMap<u32, SparseColumn<C::E>> = HashMap::new();
        let mut rank = 0u64;
        for (c, col) in cols.iter().enumerate() {
            if cleared.get(c).copied().unwrap_or(false) || col.is_empty() {
                continue;
            }
            let mut cur: SparseColumn<C::E> = col
                .iter()
                .map(|&(r, v)| (r, coeffs.lift(v)))
                .filter(|(_, v)| !coeffs.is_zero(v))
                .collect();
            while let Some(&(low, _)) = cur.last() {
                match pivot_of_row.get(&low) {
                    Some(p) => cur = coeffs.eliminate(&cur, p)?,
                    None => break,
                }
            }
            if let Some(&(low, _)) = cur.last() {
                pivot_of_row.insert(low, cur);
                rank += 1;
            }
        }
        ranks[k] = rank;
        let mut next = vec![false; cx.cells[k - 1]];
        for &row in pivot_of_row.keys() {
            next[row as usize] = true;
        }
        cleared = next;
    }
    Some(ranks)
}

fn merge<E: Clone>(
    a: &SparseColumn<E>,
    b: &SparseColumn<E>,
    mut combine: impl FnMut(Option<&E>, Option<&E>) -> Option<Option<E>>,
) -> Option<SparseColumn<E>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (row, x, y) = match (a.get(i), b.get(j)) {
            (Some((ra, va)), Some((rb, vb))) if ra == rb => {
                i += 1;
                j += 1;
                (*ra, Some(va), Some(vb))
            }
            (Some((ra, va)), Some((rb, _))) if ra < rb => {
                i += 1;
                (*ra, Some(va), None)
            }
            (Some((ra, va)), None) => {
                i += 1;
                (*ra, Some(va), None)
            }
            (_, Some((rb, vb))) => {
                j += 1;
                (*rb, None, Some(vb))
            }
            (None, None) => unreachable!(),
        };
        if let Some(v) = combine(x, y)? {
            out.push((row, v));
        }
    }
    Some(out)
}

struct PrimeField(u64);

impl PrimeField {
    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2)
        let p = self.0;
        let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

impl Coefficients for PrimeField {
    type E = u64;

    fn lift(&self, v: i8) -> u64 {
        (v as i64).rem_euclid(self.0 as i64) as u64
    }

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn eliminate(&self, target: &SparseColumn<u64>, pivot: &SparseColumn<u64>) -> Option<SparseColumn<u64>> {
        let p = self.0;
        let t = target.last()?.1;
        let q = pivot.last()?.1;
        // target - (t / q) * pivot
        let factor = t * self.inv(q) % p;
        merge(target, pivot, |x, y| {
            let x = x.copied().unwrap_or(0);
            let y = y.copied().unwrap_or(0);
            let v = (x + p - factor * y % p) % p;
            Some((v != 0).then_some(v))
        })
    }
}

struct SmallInts;

impl Coefficients for SmallInts {
    type E = i64;

    fn lift(&self, v: i8) -> i64 {
        v as i64
    }

    fn is_zero(&self, e: &i64) -> bool {
        *e == 0
    }

    fn eliminate(&self, target: &SparseColumn<i64>, pivot: &SparseColumn<i64>) -> Option<SparseColumn<i64>> {
        let t = target.last()?.1;
        let q = pivot.last()?.1;
        let g = t.gcd(&q);
        let (a, b) = (q / g, t / g);
        // a * target - b * pivot
        let mut out = merge(target, pivot, |x, y| {
            let x = x.copied().unwrap_or(0);
            let y = y.copied().unwrap_or(0);
            let v = a.checked_mul(x)?.checked_sub(b.checked_mul(y)?)?;
            Some((v != 0).then_some(v))
        })?;
        let content = out.iter().fold(0i64, |acc, (_, v)| acc.gcd(v));
        if content > 1 {
            for (_, v) in out.iter_mut() {
                *v /= content;
            }
        }
        Some(out)
    }
}

struct BigInts;

impl Coefficients for BigInts {
    type E = BigInt;

    fn lift(&self, v: i8) -> BigInt {
        BigInt::from(v)
    }

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn eliminate(&self, target: &SparseColumn<BigInt>, pivot: &SparseColumn<BigInt>) -> Option<SparseColumn<BigInt>> {
        let t = &target.last()?.1;
        let q = &pivot.last()?.1;
        let g = t.gcd(q);
        let (a, b) = (q / &g, t / &g);
        let zero = BigInt::zero();
        let mut out = merge(target, pivot, |x, y| {
            let v = &a * x.unwrap_or(&zero) - &b * y.unwrap_or(&zero);
            Some((!v.is_zero()).then_some(v))
        })?;
        let content = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if !content.is_zero() && !content.abs().is_one() {
            for (_, v) in out.iter_mut() {
                *v = &*v / &content;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simplicial chain complex of a simplex on `v` vertices, without the
    /// empty face: acyclic except `H_0 = 1`.
    fn simplex(v: u32) -> ChainComplex {
        let full = 1u32 << v;
        let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); v as usize];
        for mask in 1..full {
            by_dim[mask.count_ones() as usize - 1].push(mask);
        }
        let index: Vec<HashMap<u32, u32>> = by_dim
            .iter()
            .map(|cells| cells.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect())
            .collect();
        let mut boundaries = vec![Vec::new()];
        for k in 1..by_dim.len() {
            let cols = by_dim[k]
                .iter()
                .map(|&m| {
                    let mut col: Vec<(u32, i8)> = (0..v)
                        .filter(|j| m & (1 << j) != 0)
                        .map(|j| {
                            let sign = if (m & ((1 << j) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                            (index[k - 1][&(m ^ (1 << j))], sign)
                        })
                        .collect();
                    col.sort();
                    col
                })
                .collect();
            boundaries.push(cols);
        }
        ChainComplex {
            cells: by_dim.iter().map(Vec::len).collect(),
            boundaries,
        }
    }

    #[test]
    fn simplex_is_acyclic() {
        for v in 1..=7 {
            let cx = simplex(v);
            let mut expect = vec![0u64; v as usize];
            expect[0] = 1;
            assert_eq!(cx.homology(Field::Rational), expect);
            assert_eq!(cx.homology(Field::Prime(2)), expect);
            assert_eq!(cx.homology(Field::Prime(32003)), expect);
        }
    }

    #[test]
    fn circle_has_one_loop() {
        // boundary of a triangle: 3 vertices, 3 edges
        let cx = ChainComplex {
            cells: vec![3, 3],
            boundaries: vec![
                vec![],
                vec![vec![(0, -1), (1, 1)], vec![(1, -1), (2, 1)], vec![(0, -1), (2, 1)]],
            ],
        };
        assert_eq!(cx.homology(Field::Rational), vec![1, 1]);
    }

    #[test]
    fn torsion_depends_on_characteristic() {
        // projective plane cell structure: ∂_2 = 2, ∂_1 = 0
        let cx = ChainComplex {
            cells: vec![1, 1, 1],
            boundaries: vec![vec![], vec![vec![]], vec![vec![(0, 2)]]],
        };
        assert_eq!(cx.homology(Field::Rational), vec![1, 0, 0]);
        assert_eq!(cx.homology(Field::Prime(3)), vec![1, 0, 0]);
        assert_eq!(cx.homology(Field::Prime(2)), vec![1, 1, 1]);
    }

    #[test]
    fn characteristic_validation() {
        assert_eq!(Field::from_characteristic(0), Ok(Field::Rational));
        assert_eq!(Field::from_characteristic(7), Ok(Field::Prime(7)));
        assert!(Field::from_characteristic(1).is_err());
        assert!(Field::from_characteristic(9).is_err());
    }
}
