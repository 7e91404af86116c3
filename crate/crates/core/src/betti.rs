//! Graded and multigraded Betti numbers from the homology of the
//! scalarized Taylor complex.
//!
//! `K ⊗ Taylor(S/I)` splits into strands, one per lcm multidegree `b`. The
//! strand at `b` has a basis of the subsets `T` with `lcm T = b`, and
//! `β_{i,b}(I) = dim H_{i+1}` of that strand.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::ideal::{Limits, MonomialIdeal};
use crate::linalg::{ChainComplex, Field};
use crate::taylor::{removal_sign, TaylorComplex};

/// Betti numbers of an ideal, indexed so that `β_0(I) = |G(I)|`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub field_char: u64,
    pub total: Vec<u64>,
    /// `(i, j) -> β_{i,j}(I)` with `j` the internal degree.
    pub graded: BTreeMap<(usize, u32), u64>,
    /// `(i, b) -> β_{i,b}(I)`; empty for tables built from closed formulas.
    pub multigraded: BTreeMap<(usize, Vec<u32>), u64>,
}

impl BettiTable {
    /// Assemble marginals from a graded table.
    pub fn from_graded(field_char: u64, graded: BTreeMap<(usize, u32), u64>) -> Self {
        let graded: BTreeMap<_, _> = graded.into_iter().filter(|(_, v)| *v > 0).collect();
        let len = graded.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut total = vec![0u64; len];
        for (&(i, _), &v) in &graded {
            total[i] += v;
        }
        BettiTable {
            field_char,
            total,
            graded,
            multigraded: BTreeMap::new(),
        }
    }

    pub fn projdim_quotient(&self) -> usize {
        self.total.len()
    }

    /// `β_i(I)`, zero past the end.
    pub fn beta(&self, i: usize) -> u64 {
        self.total.get(i).copied().unwrap_or(0)
    }

    pub fn graded_entry(&self, i: usize, j: u32) -> u64 {
        self.graded.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            char: self.field_char,
            method: None,
            total: self.total.clone(),
            graded: self
                .graded
                .iter()
                .map(|(&(i, j), &v)| GradedEntry { i, j, v })
                .collect(),
            multigraded: self
                .multigraded
                .iter()
                .map(|((i, deg), &v)| MultigradedEntry {
                    i: *i,
                    deg: deg.clone(),
                    v,
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct GradedEntry {
    pub i: usize,
    pub j: u32,
    pub v: u64,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct MultigradedEntry {
    pub i: usize,
    pub deg: Vec<u32>,
    pub v: u64,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct BettiJson {
    pub char: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    pub total: Vec<u64>,
    pub graded: Vec<GradedEntry>,
    pub multigraded: Vec<MultigradedEntry>,
}

/// Strands with at least this many cells are spread over the thread pool.
const PARALLEL_STRANDS: usize = 256;

pub fn multigraded_betti(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<BettiTable> {
    let tc = TaylorComplex::new(ideal, limits)?;
    let strands = tc.strands();
    let homology = |(b, masks): &(Vec<u32>, Vec<u32>)| strand_homology(&tc, b, masks, field);
    let per_strand: Vec<Vec<u64>> = if tc.num_subsets() >= PARALLEL_STRANDS {
        strands.par_iter().map(homology).collect()
    } else {
        strands.iter().map(homology).collect()
    };
    let mut multigraded = BTreeMap::new();
    let mut graded = BTreeMap::new();
    for ((b, _), h) in strands.iter().zip(per_strand) {
        let deg: u32 = b.iter().sum();
        // H_k of the S/I strand is β_{k-1}(I); H_0 only lives at b = 0
        for (k, &v) in h.iter().enumerate().skip(1) {
            if v > 0 {
                multigraded.insert((k - 1, b.clone()), v);
                *graded.entry((k - 1, deg)).or_insert(0) += v;
            }
        }
    }
    let mut table = BettiTable::from_graded(field.characteristic(), graded);
    table.multigraded = multigraded;
    Ok(table)
}

/// Homology ranks of the strand at multidegree `b`, indexed by `|T|`.
fn strand_homology(tc: &TaylorComplex, b: &[u32], masks: &[u32], field: Field) -> Vec<u64> {
    // A generator strictly below b in every coordinate of supp(b) cones off
    // the strand, which is then acyclic.
    let cone = tc.gens().iter().any(|g| {
        g.exponents()
            .iter()
            .zip(b)
            .all(|(&ge, &be)| if be == 0 { ge == 0 } else { ge < be })
    });
    if cone {
        return Vec::new();
    }
    let top = masks.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for &m in masks {
        by_dim[m.count_ones() as usize].push(m);
    }
    let index: Vec<HashMap<u32, u32>> = by_dim
        .iter()
        .map(|cells| {
            cells
                .iter()
                .enumerate()
                .map(|(i, &m)| (m, i as u32))
                .collect()
        })
        .collect();
    let mut boundaries = vec![Vec::new()];
    for k in 1..=top {
        let cols = by_dim[k]
            .iter()
            .map(|&mask| {
                let mut col: Vec<(u32, i8)> = (0..tc.s())
                    .filter(|&j| mask & (1 << j) != 0)
                    .filter_map(|j| {
                        let face = mask ^ (1 << j);
                        index[k - 1]
                            .get(&face)
                            .map(|&row| (row, removal_sign(mask, j)))
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        boundaries.push(cols);
    }
    let cx = ChainComplex {
        cells: by_dim.iter().map(Vec::len).collect(),
        boundaries,
    };
    cx.homology(field)
}

/// Betti table over the rationals.
pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    multigraded_betti(ideal, Field::Rational, &Limits::default())
}

pub fn total_betti(ideal: &MonomialIdeal) -> Result<Vec<u64>> {
    Ok(betti_table(ideal)?.total)
}

/// `p = projdim S/I = 1 + max{i : β_i(I) ≠ 0}`.
pub fn projdim_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(betti_table(ideal)?.projdim_quotient())
}
