//! Hilbert functions of monomial ideals, Macaulay's growth bound,
//! lexification and the lexsegment / Gotzmann tests.
//!
//! All Hilbert data comes from the signed histogram of subset lcm degrees:
//! with `c_e = Σ_{T ≠ ∅, deg lcm T = e} (-1)^{|T|+1}` one has
//! `dim I_d = Σ_e c_e C(n-1+d-e, n-1)` and `H_{S/I}(t) = (1 - Σ_e c_e t^e) / (1-t)^n`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::betti::multigraded_betti;
use crate::binomial::binomial;
use crate::ek::ek_graded_betti;
use crate::error::{Error, Result};
use crate::ideal::{minimal_generators, Limits, MonomialIdeal};
use crate::linalg::Field;
use crate::monomial::{LexLayer, Monomial};

/// Number of monomials of degree `d` in `n` variables.
pub fn layer_size(n: usize, d: u32) -> u128 {
    binomial(n as i64 - 1 + d as i64, n as i64 - 1)
}

/// Precomputed inclusion–exclusion data for one ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    n: usize,
    /// `hist[e] = c_e`.
    hist: Vec<i64>,
}

impl HilbertData {
    /// Stable ideals read `c_e` off their Eliahou–Kervaire table, which has
    /// no generator cap; everything else goes through inclusion–exclusion.
    pub fn new(ideal: &MonomialIdeal, limits: &Limits) -> Result<Self> {
        if ideal.is_stable() {
            Self::from_stable(ideal)
        } else {
            Self::by_inclusion_exclusion(ideal, limits)
        }
    }

    /// `c_e = Σ_i (-1)^i β_{i,e}(I)` from the Eliahou–Kervaire table.
    pub fn from_stable(ideal: &MonomialIdeal) -> Result<Self> {
        let table = ek_graded_betti(ideal)?;
        let top = table.graded.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut hist = vec![0i64; top as usize + 1];
        for (&(i, j), &v) in &table.graded {
            let v = v as i64;
            hist[j as usize] += if i % 2 == 0 { v } else { -v };
        }
        Ok(Self::trimmed(ideal.n(), hist))
    }

    pub fn by_inclusion_exclusion(ideal: &MonomialIdeal, limits: &Limits) -> Result<Self> {
        limits.check_gens(ideal.num_gens())?;
        let n = ideal.n();
        let gens = ideal.gens();
        let top: u32 = gens.iter().map(Monomial::degree).sum();
        let mut hist = vec![0i64; top as usize + 1];
        // depth-first over subsets, carrying the running lcm
        fn walk(gens: &[Monomial], start: usize, lcm: &[u32], odd: bool, hist: &mut [i64]) {
            for k in start..gens.len() {
                let next: Vec<u32> = lcm
                    .iter()
                    .zip(gens[k].exponents())
                    .map(|(&a, &b)| a.max(b))
                    .collect();
                let deg: u32 = next.iter().sum();
                // |T| odd contributes +1
                hist[deg as usize] += if odd { -1 } else { 1 };
                walk(gens, k + 1, &next, !odd, hist);
            }
        }
        walk(gens, 0, &vec![0; n], false, &mut hist);
        Ok(Self::trimmed(n, hist))
    }

    fn trimmed(n: usize, mut hist: Vec<i64>) -> Self {
        while hist.len() > 1 && hist.last() == Some(&0) {
            hist.pop();
        }
        HilbertData { n, hist }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim_K I_d`.
    pub fn ideal_dim(&self, d: u32) -> u128 {
        let n = self.n as i64;
        let total: i128 = self
            .hist
            .iter()
            .enumerate()
            .filter(|&(e, &c)| c != 0 && e as u32 <= d)
            .map(|(e, &c)| c as i128 * binomial(n - 1 + d as i64 - e as i64, n - 1) as i128)
            .sum();
        debug_assert!(total >= 0);
        total as u128
    }

    /// `dim_K (S/I)_d`.
    pub fn quotient_dim(&self, d: u32) -> u128 {
        layer_size(self.n, d) - self.ideal_dim(d)
    }

    /// Coefficients of `h(t)` with `H_{S/I}(t) = h(t) / (1-t)^n`.
    pub fn numerator(&self) -> Vec<i64> {
        let mut h: Vec<i64> = self.hist.iter().map(|&c| -c).collect();
        h[0] += 1;
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        h
    }
}

/// `dim_K I_d` by inclusion–exclusion.
pub fn hilbert_function(ideal: &MonomialIdeal, d: u32) -> Result<u128> {
    Ok(HilbertData::new(ideal, &Limits::default())?.ideal_dim(d))
}

/// Quotient dimensions `dim (S/I)_d` for `d = 0..=max_degree`, obtained by
/// expanding `h(t) / (1-t)^n` as a power series.
pub fn quotient_dims_from_series(numerator: &[i64], n: usize, max_degree: u32) -> Vec<i128> {
    let len = max_degree as usize + 1;
    let mut series: Vec<i128> = (0..len)
        .map(|d| numerator.get(d).copied().unwrap_or(0) as i128)
        .collect();
    // each factor 1/(1-t) is a running sum
    for _ in 0..n {
        for d in 1..len {
            series[d] += series[d - 1];
        }
    }
    series
}

/// The `d`-th Macaulay representation `a = C(k_d, d) + C(k_{d-1}, d-1) + ...`
/// with `k_d > k_{d-1} > ... >= j >= 1`, as `(k_i, i)` pairs.
pub fn macaulay_representation(a: u128, d: u32) -> Result<Vec<(u128, u32)>> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "Macaulay representation needs d >= 1".into(),
        ));
    }
    let mut rest = a;
    let mut out = Vec::new();
    for i in (1..=d).rev() {
        if rest == 0 {
            break;
        }
        let k = if i == 1 { rest } else { largest_k(rest, i) };
        rest -= binom_exact(k, i).expect("chosen binomial fits");
        out.push((k, i));
    }
    Ok(out)
}

/// `a^{<d>}`, the largest possible `dim (S/I)_{d+1}` given `dim (S/I)_d = a`.
pub fn macaulay_growth_bound(a: u128, d: u32) -> Result<u128> {
    let rep = macaulay_representation(a, d)?;
    rep.iter()
        .map(|&(k, i)| binom_exact(k + 1, i + 1))
        .try_fold(0u128, |acc, b| acc.checked_add(b?))
        .ok_or(Error::InvalidParameter(format!(
            "growth bound of {a} in degree {d} exceeds 128 bits"
        )))
}

/// `C(k, i)` without intermediate overflow, `None` if the value itself overflows.
fn binom_exact(k: u128, i: u32) -> Option<u128> {
    let i = i as u128;
    if i > k {
        return Some(0);
    }
    let i = i.min(k - i);
    let mut c: u128 = 1;
    for j in 0..i {
        // c * (k - j) / (j + 1), dividing out the common factor first
        let g = c.gcd(&(j + 1));
        let q = (k - j) / ((j + 1) / g);
        c = (c / g).checked_mul(q)?;
    }
    Some(c)
}

/// Largest `k` with `C(k, i) <= a`, for `a >= 1` and `i >= 2`.
fn largest_k(a: u128, i: u32) -> u128 {
    let fits = |k: u128| binom_exact(k, i).is_some_and(|b| b <= a);
    let mut lo = i as u128;
    let mut hi = lo + 1;
    while fits(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Number of monomials of degree `deg u` that are lex-greater than `u`.
pub fn lex_rank(u: &Monomial) -> u128 {
    let e = u.exponents();
    let n = e.len();
    let mut rest = u.degree();
    let mut rank = 0u128;
    for (k, &ek) in e.iter().enumerate().take(n.saturating_sub(1)) {
        let m = (n - k - 1) as i64;
        if rest > ek {
            // hockey stick: Σ_{t < rest - ek} C(t + m - 1, m - 1)
            rank += binomial((rest - ek - 1) as i64 + m, m);
        }
        rest -= ek;
    }
    rank
}

/// The monomial of degree `d` in `n` variables with exactly `r` lex-greater
/// monomials of the same degree.
pub fn lex_unrank(n: usize, d: u32, mut r: u128) -> Monomial {
    assert!(n >= 1 && r < layer_size(n, d), "rank {r} out of range");
    let mut exps = vec![0u32; n];
    let mut rest = d;
    for k in 0..n - 1 {
        let m = (n - k - 1) as i64;
        // monomials whose k-th exponent exceeds e: C(rest - e - 1 + m, m)
        let above = |e: u32| if e >= rest { 0 } else { binomial((rest - e - 1) as i64 + m, m) };
        // smallest e with above(e) <= r
        let (mut lo, mut hi) = (0u32, rest);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if above(mid) <= r {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        r -= above(lo);
        exps[k] = lo;
        rest -= lo;
    }
    exps[n - 1] = rest;
    Monomial::new(exps)
}

/// A lexification together with the degree at which the stop rule fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexification {
    pub ideal: MonomialIdeal,
    pub stop_degree: u32,
}

/// `I^lex`, built degree by degree until quotient growth becomes maximal at
/// some degree `>= ` the largest generator degree.
pub fn lexify_with_stop(ideal: &MonomialIdeal, limits: &Limits) -> Result<Lexification> {
    let hd = HilbertData::new(ideal, limits)?;
    let n = ideal.n();
    let dmax = ideal.max_degree();
    // rank arithmetic first, so hopeless cases fail before materializing
    let mut plan: Vec<(u32, u128, u128)> = Vec::new();
    let mut total: u128 = 0;
    let mut prev_last: Option<Monomial> = None;
    let mut d = ideal.min_degree();
    loop {
        if d > limits.lex_degree_cap {
            return Err(Error::StopRuleNotReached {
                cap: limits.lex_degree_cap,
            });
        }
        let len = hd.ideal_dim(d);
        // S_1 times a lex segment ending at u is the lex segment ending at u*xn
        let from_below = match &prev_last {
            Some(u) => lex_rank(&u.mul_var(n)?) + 1,
            None => 0,
        };
        debug_assert!(len >= from_below);
        if len > from_below {
            total += len - from_below;
            if total > limits.lex_max_gens as u128 {
                return Err(Error::GeneratorCap {
                    s: usize::try_from(total).unwrap_or(usize::MAX),
                    cap: limits.lex_max_gens,
                });
            }
            plan.push((d, from_below, len));
        }
        prev_last = (len > 0).then(|| lex_unrank(n, d, len - 1));
        // Macaulay: growth from d is maximal exactly when the lex segment
        // in degree d + 1 is S_1 times the one in degree d
        let next_from_below = match &prev_last {
            Some(u) => lex_rank(&u.mul_var(n)?) + 1,
            None => 0,
        };
        let maximal = hd.ideal_dim(d + 1) == next_from_below;
        debug_assert!(
            d > 32 || maximal == (hd.quotient_dim(d + 1) == macaulay_growth_bound(hd.quotient_dim(d), d)?)
        );
        if d >= dmax && maximal {
            break;
        }
        d += 1;
    }
    let mut gens = Vec::with_capacity(total as usize);
    for (deg, from_below, len) in plan {
        let start = lex_unrank(n, deg, from_below);
        gens.extend(LexLayer::starting_at(start).take((len - from_below) as usize));
    }
    Ok(Lexification {
        ideal: minimal_generators(gens)?,
        stop_degree: d,
    })
}

pub fn lexify(ideal: &MonomialIdeal, limits: &Limits) -> Result<MonomialIdeal> {
    Ok(lexify_with_stop(ideal, limits)?.ideal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LexClass {
    NotLexsegment,
    Lexsegment,
    UniversalLexsegment,
}

impl LexClass {
    pub fn is_lexsegment(self) -> bool {
        self != LexClass::NotLexsegment
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LexClass::NotLexsegment => "not_lexsegment",
            LexClass::Lexsegment => "lexsegment",
            LexClass::UniversalLexsegment => "universal_lexsegment",
        }
    }
}

impl std::fmt::Display for LexClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether every `I_d` is a lex-initial segment.
///
/// Walking up the generator degrees, if `I_{d-1}` is a segment ending at `w`
/// then `S_1 I_{d-1}` is the segment ending at `w*xn`, so `I_d` is a segment
/// exactly when the degree-`d` generators occupy the next lex positions.
pub fn is_lexsegment(ideal: &MonomialIdeal) -> bool {
    let n = ideal.n();
    let gens = ideal.gens();
    let mut last: Option<Monomial> = None;
    let mut d = ideal.min_degree();
    let mut k = 0;
    while k < gens.len() {
        let from_below = last.as_ref().map_or(0, |w| lex_rank(w) + 1);
        let mut ranks = Vec::new();
        while k < gens.len() && gens[k].degree() == d {
            ranks.push(lex_rank(&gens[k]));
            k += 1;
        }
        // canonical order is lex-descending within a degree, so ranks ascend
        let contiguous = ranks
            .iter()
            .enumerate()
            .all(|(j, &r)| r == from_below + j as u128);
        if !contiguous {
            return false;
        }
        last = match ranks.last() {
            Some(&r) => Some(lex_unrank(n, d, r)),
            None => last,
        };
        last = last.map(|w| w.mul_var(n).expect("exponent fits"));
        d += 1;
    }
    true
}

pub fn lexsegment_class(ideal: &MonomialIdeal) -> LexClass {
    if !is_lexsegment(ideal) {
        LexClass::NotLexsegment
    } else if ideal.num_gens() <= ideal.n() {
        LexClass::UniversalLexsegment
    } else {
        LexClass::Lexsegment
    }
}

/// `β_{ij}(I) = β_{ij}(I^lex)` for all `i, j`, over the rationals.
///
/// Stable tables (always the case for `I^lex`) come from the
/// Eliahou–Kervaire formula, everything else from Taylor homology.
pub fn is_gotzmann(ideal: &MonomialIdeal, limits: &Limits) -> Result<bool> {
    let lex = lexify(ideal, limits)?;
    let degrees = |i: &MonomialIdeal| i.gens().iter().map(Monomial::degree).collect::<Vec<_>>();
    if degrees(ideal) != degrees(&lex) {
        return Ok(false);
    }
    let mine = if ideal.is_stable() {
        ek_graded_betti(ideal)?
    } else {
        multigraded_betti(ideal, Field::Rational, limits)?
    };
    let theirs = ek_graded_betti(&lex)?;
    Ok(mine.graded == theirs.graded)
}

/// Brute-force `dim_K I_d` by enumerating the degree-`d` layer.
pub fn count_ideal_monomials(ideal: &MonomialIdeal, d: u32) -> u128 {
    LexLayer::new(ideal.n(), d)
        .filter(|v| ideal.contains(v))
        .count() as u128
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    pub n: usize,
    /// `d -> dim_K I_d`.
    pub dims: BTreeMap<u32, u128>,
    pub numerator: Vec<i64>,
}

impl HilbertProfile {
    pub fn quotient_dim(&self, d: u32) -> Option<u128> {
        self.dims.get(&d).map(|&v| layer_size(self.n, d) - v)
    }

    pub fn to_json(&self) -> HilbertJson {
        HilbertJson {
            n: self.n,
            dims: self
                .dims
                .iter()
                .map(|(&d, &ideal_dim)| DimEntry { d, ideal_dim })
                .collect(),
            numerator: self.numerator.clone(),
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct DimEntry {
    pub d: u32,
    pub ideal_dim: u128,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct HilbertJson {
    pub n: usize,
    pub dims: Vec<DimEntry>,
    pub numerator: Vec<i64>,
}

/// Dimensions for `d = 0..=max_degree` plus the series numerator.
pub fn hilbert_profile(ideal: &MonomialIdeal, max_degree: u32, limits: &Limits) -> Result<HilbertProfile> {
    let hd = HilbertData::new(ideal, limits)?;
    Ok(HilbertProfile {
        n: ideal.n(),
        dims: (0..=max_degree).map(|d| (d, hd.ideal_dim(d))).collect(),
        numerator: hd.numerator(),
    })
}

/// Probe bound used when none is given: the lexification stop degree plus `n`.
pub fn default_probe_degree(ideal: &MonomialIdeal, limits: &Limits) -> Result<u32> {
    Ok(lexify_with_stop(ideal, limits)?.stop_degree + ideal.n() as u32)
}
