//! The Taylor complex of a monomial ideal as a subset lattice of `G(I)`.
//!
//! Subsets of the generators are bitmasks. The lcm of every subset is
//! memoized bottom-up: `lcm(T) = lcm(T \ {min T}) ∨ u_{min T}`.
//!
//! The complex resolves `S/I`: the subset `T` sits in homological degree
//! `|T|`, and `∂ e_T = Σ_k (-1)^(k-1) (lcm T / lcm(T \ j_k)) e_{T \ j_k}` where
//! `j_k` is the k-th smallest element of `T`. Tensoring with `K` keeps only
//! the terms with `lcm(T \ j_k) = lcm T`, which is the scalarized
//! differential.

use std::collections::HashMap;

use serde::Serialize;

use crate::binomial::binom_u64;
use crate::error::{Error, Result};
use crate::ideal::{Limits, MonomialIdeal};
use crate::monomial::Monomial;

/// Generator counts above this never fit a `u32` subset mask.
pub const HARD_MAX_GENS: usize = 24;

#[derive(Clone, Debug)]
pub struct TaylorComplex {
    n: usize,
    gens: Vec<Monomial>,
    lcms: Vec<u32>,
    degrees: Vec<u32>,
}

/// Sign of removing generator `j` from `mask`: `(-1)^(position - 1)`.
pub fn removal_sign(mask: u32, j: usize) -> i8 {
    if (mask & ((1u32 << j) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn taylor_complex(ideal: &MonomialIdeal, limits: &Limits) -> Result<TaylorComplex> {
    TaylorComplex::new(ideal, limits)
}

impl TaylorComplex {
    pub fn new(ideal: &MonomialIdeal, limits: &Limits) -> Result<Self> {
        let s = ideal.num_gens();
        limits.check_gens(s)?;
        if s > HARD_MAX_GENS {
            return Err(Error::GeneratorCap {
                s,
                cap: HARD_MAX_GENS,
            });
        }
        let n = ideal.n();
        let gens = ideal.gens().to_vec();
        let count = 1usize << s;
        let mut lcms = vec![0u32; count * n];
        let mut degrees = vec![0u32; count];
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let g = gens[low].exponents();
            let mut deg = 0;
            for k in 0..n {
                let v = lcms[rest * n + k].max(g[k]);
                lcms[mask * n + k] = v;
                deg += v;
            }
            degrees[mask] = deg;
        }
        Ok(TaylorComplex {
            n,
            gens,
            lcms,
            degrees,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_subsets(&self) -> usize {
        1 << self.s()
    }

    pub fn lcm_exponents(&self, mask: u32) -> &[u32] {
        let m = mask as usize;
        &self.lcms[m * self.n..(m + 1) * self.n]
    }

    pub fn lcm(&self, mask: u32) -> Monomial {
        Monomial::new(self.lcm_exponents(mask).to_vec())
    }

    pub fn lcm_degree(&self, mask: u32) -> u32 {
        self.degrees[mask as usize]
    }

    /// Rank of the free module in homological degree `i` of the
    /// resolution of `S/I`.
    pub fn rank(&self, i: usize) -> u64 {
        binom_u64(self.s() as i64, i as i64)
    }

    /// Rank of the Taylor module bounding `β_i(I)`: `C(s, i + 1)`.
    pub fn ideal_rank(&self, i: usize) -> u64 {
        self.rank(i + 1)
    }

    /// Coefficient of `e_{T \ j}` in the scalarized differential of `e_T`.
    pub fn scalar_diff(&self, mask: u32, j: usize) -> i8 {
        let bit = 1u32 << j;
        if mask & bit == 0 || self.lcm_exponents(mask) != self.lcm_exponents(mask ^ bit) {
            return 0;
        }
        removal_sign(mask, j)
    }

    /// Nonzero terms `(face, coefficient)` of the scalarized differential.
    pub fn scalar_boundary(&self, mask: u32) -> Vec<(u32, i8)> {
        (0..self.s())
            .filter_map(|j| {
                let c = self.scalar_diff(mask, j);
                (c != 0).then(|| (mask ^ (1 << j), c))
            })
            .collect()
    }

    /// Full Taylor differential `(face, sign, lcm T / lcm face)`.
    pub fn boundary(&self, mask: u32) -> Vec<(u32, i8, Monomial)> {
        (0..self.s())
            .filter(|&j| mask & (1 << j) != 0)
            .map(|j| {
                let face = mask ^ (1 << j);
                let quotient = self
                    .lcm(mask)
                    .checked_div(&self.lcm(face))
                    .expect("lcm of a face divides lcm of the subset");
                (face, removal_sign(mask, j), quotient)
            })
            .collect()
    }

    /// Fröberg's criterion: minimal iff no generator can be dropped from a
    /// subset without changing its lcm.
    pub fn is_minimal(&self) -> bool {
        (1..self.num_subsets() as u32).all(|mask| {
            (0..self.s()).all(|j| {
                let bit = 1u32 << j;
                mask & bit == 0 || self.lcm_exponents(mask) != self.lcm_exponents(mask ^ bit)
            })
        })
    }

    /// Nonempty subsets grouped by lcm, sorted by multidegree.
    pub fn strands(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut groups: HashMap<&[u32], Vec<u32>> = HashMap::new();
        for mask in 1..self.num_subsets() as u32 {
            groups.entry(self.lcm_exponents(mask)).or_default().push(mask);
        }
        let mut out: Vec<(Vec<u32>, Vec<u32>)> =
            groups.into_iter().map(|(k, v)| (k.to_vec(), v)).collect();
        out.sort();
        out
    }
}

pub fn is_taylor_minimal(ideal: &MonomialIdeal, limits: &Limits) -> Result<bool> {
    Ok(TaylorComplex::new(ideal, limits)?.is_minimal())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub i: usize,
    pub binom: u64,
    pub beta: u64,
    pub equal: bool,
}

/// Comparison of a Betti vector against the Taylor ranks `C(s, i + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaylorBoundReport {
    pub s: usize,
    pub bounds: Vec<BoundRow>,
    pub taylor_minimal: bool,
    pub prefix_property_holds: bool,
    pub upper_bound_holds: bool,
    /// `β_{s-1} ≠ 0` implies a minimal Taylor resolution.
    pub top_nonzero_implies_minimal: bool,
    /// Equality in every index iff the Taylor resolution is minimal.
    pub equality_iff_minimal: bool,
}

impl TaylorBoundReport {
    pub fn all_hold(&self) -> bool {
        self.prefix_property_holds
            && self.upper_bound_holds
            && self.top_nonzero_implies_minimal
            && self.equality_iff_minimal
    }
}

pub fn taylor_bound_report(
    ideal: &MonomialIdeal,
    betti: &[u64],
    limits: &Limits,
) -> Result<TaylorBoundReport> {
    let tc = TaylorComplex::new(ideal, limits)?;
    let s = tc.s();
    if betti.is_empty() || betti.len() > s {
        return Err(Error::LengthMismatch {
            expected: s,
            found: betti.len(),
        });
    }
    let bounds: Vec<BoundRow> = (0..s)
        .map(|i| {
            let beta = betti.get(i).copied().unwrap_or(0);
            let binom = tc.ideal_rank(i);
            BoundRow {
                i,
                binom,
                beta,
                equal: beta == binom,
            }
        })
        .collect();
    let taylor_minimal = tc.is_minimal();
    let upper_bound_holds = bounds.iter().all(|r| r.beta <= r.binom);
    let prefix_property_holds = bounds
        .iter()
        .all(|r| !r.equal || bounds[..r.i].iter().all(|q| q.equal));
    let top_nonzero_implies_minimal = bounds[s - 1].beta == 0 || taylor_minimal;
    let equality_iff_minimal = bounds.iter().all(|r| r.equal) == taylor_minimal;
    Ok(TaylorBoundReport {
        s,
        bounds,
        taylor_minimal,
        prefix_property_holds,
        upper_bound_holds,
        top_nonzero_implies_minimal,
        equality_iff_minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ideal;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn tc(text: &str) -> TaylorComplex {
        TaylorComplex::new(&parse_ideal(text).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn coprime_pair_has_zero_scalar_differential() {
        let t = tc("n=2; x1^2, x2^2");
        assert_eq!(t.lcm(0b01).exponents(), &[2, 0]);
        assert_eq!(t.lcm(0b10).exponents(), &[0, 2]);
        assert_eq!(t.lcm(0b11).exponents(), &[2, 2]);
        for mask in 0..4 {
            assert!(t.scalar_boundary(mask).is_empty());
        }
        assert!(t.is_minimal());
    }

    #[test]
    fn middle_generator_is_redundant_in_the_full_subset() {
        // canonical order: x1^2, x1*x2, x2^2
        let t = tc("n=2; x1^2, x1*x2, x2^2");
        assert_eq!(t.lcm(0b111), t.lcm(0b101));
        assert_eq!(t.lcm(0b111).exponents(), &[2, 2]);
        // x1*x2 is the second element of {1,2,3}: sign -1
        assert_eq!(t.scalar_diff(0b111, 1), -1);
        assert_eq!(t.scalar_diff(0b111, 0), 0);
        assert_eq!(t.scalar_diff(0b111, 2), 0);
        assert!(!t.is_minimal());
    }

    #[test]
    fn principal_ideal_has_two_subsets() {
        let t = tc("n=2; x1*x2");
        assert_eq!(t.num_subsets(), 2);
        assert!(t.scalar_boundary(1).is_empty());
        assert!(t.is_minimal());
    }

    #[test]
    fn minimality_examples() {
        assert!(tc("n=3; x1, x2^2, x2*x3^2").is_minimal());
        assert!(!tc("n=2; x1^2, x1*x2, x2^2").is_minimal());
    }

    #[test]
    fn generator_cap_is_enforced() {
        let i = parse_ideal("n=3; x1^2, x2^2, x3^2").unwrap();
        let limits = Limits {
            max_gens: 2,
            ..Limits::default()
        };
        assert_eq!(
            TaylorComplex::new(&i, &limits).unwrap_err(),
            Error::GeneratorCap { s: 3, cap: 2 }
        );
    }

    #[test]
    fn bound_report_examples() {
        let limits = Limits::default();
        let i = parse_ideal("n=2; x1^2, x1*x2, x2^2").unwrap();
        let r = taylor_bound_report(&i, &[3, 2], &limits).unwrap();
        let eq: Vec<bool> = r.bounds.iter().map(|b| b.equal).collect();
        assert_eq!(eq, vec![true, false, false]);
        assert!(r.all_hold());
        let j = parse_ideal("n=3; x1, x2^2, x2*x3^2").unwrap();
        let r = taylor_bound_report(&j, &[3, 3, 1], &limits).unwrap();
        assert!(r.bounds.iter().all(|b| b.equal));
        assert!(r.taylor_minimal && r.all_hold());
        assert!(taylor_bound_report(&j, &[3, 3, 1, 0], &limits).is_err());
    }

    fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u32..3, n), 1..7)
                .prop_filter_map("unit", move |rows| MonomialIdeal::from_exponents(n, &rows).ok())
        })
    }

    type Chain = BTreeMap<u32, BTreeMap<Vec<u32>, i64>>;

    fn add_term(acc: &mut Chain, face: u32, coeff: i64, mono: &Monomial) {
        let e = acc.entry(face).or_default().entry(mono.exponents().to_vec()).or_insert(0);
        *e += coeff;
    }

    proptest! {
        #[test]
        fn differentials_square_to_zero(i in ideal_strategy()) {
            let t = TaylorComplex::new(&i, &Limits::default()).unwrap();
            for mask in 1..t.num_subsets() as u32 {
                // full differential over S
                let mut acc: Chain = BTreeMap::new();
                for (face, sign, q) in t.boundary(mask) {
                    for (face2, sign2, q2) in t.boundary(face) {
                        add_term(&mut acc, face2, (sign * sign2) as i64, &q.checked_mul(&q2).unwrap());
                    }
                }
                for terms in acc.values() {
                    prop_assert!(terms.values().all(|&c| c == 0));
                }
                // scalarized differential
                let mut scalar: BTreeMap<u32, i64> = BTreeMap::new();
                for (face, c) in t.scalar_boundary(mask) {
                    for (face2, c2) in t.scalar_boundary(face) {
                        *scalar.entry(face2).or_insert(0) += (c * c2) as i64;
                    }
                }
                prop_assert!(scalar.values().all(|&c| c == 0));
            }
        }

        #[test]
        fn memoized_lcms_match_direct_fold(i in ideal_strategy()) {
            let t = TaylorComplex::new(&i, &Limits::default()).unwrap();
            for mask in 1..t.num_subsets() as u32 {
                let direct = (0..t.s())
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| t.gens()[j].clone())
                    .reduce(|a, b| a.lcm(&b))
                    .unwrap();
                prop_assert_eq!(t.lcm(mask), direct);
            }
        }
    }
}
