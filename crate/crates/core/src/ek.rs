//! Closed-form Betti numbers of stable ideals (Eliahou–Kervaire).
//!
//! For stable `I`, `β_{q, q + deg u}` receives `C(m(u) - 1, q)` from every
//! generator `u`. Summing over degrees gives the total Betti numbers; grouping
//! generators by `m(u)` gives `β_i = Σ_{j=i}^{p-1} m_{j+1}(I) C(j, i)`.

use std::collections::BTreeMap;

use crate::betti::{BettiJson, BettiTable};
use crate::binomial::binom_u64;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

fn require_stable(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_stable() {
        Ok(())
    } else {
        Err(Error::NotStable)
    }
}

pub fn ek_total_betti(ideal: &MonomialIdeal) -> Result<Vec<u64>> {
    require_stable(ideal)?;
    let ms = ideal.max_indices();
    let len = ms.iter().copied().max().unwrap_or(0);
    Ok((0..len)
        .map(|q| {
            ms.iter()
                .map(|&m| binom_u64(m as i64 - 1, q as i64))
                .sum()
        })
        .collect())
}

pub fn ek_graded_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    require_stable(ideal)?;
    let mut graded = BTreeMap::new();
    for u in ideal.gens() {
        let m = u.max_index()?;
        for q in 0..m {
            let v = binom_u64(m as i64 - 1, q as i64);
            *graded.entry((q, u.degree() + q as u32)).or_insert(0) += v;
        }
    }
    Ok(BettiTable::from_graded(0, graded))
}

/// The same Betti numbers summed by `m`-statistics instead of generators.
pub fn ek_via_m_counts(ideal: &MonomialIdeal) -> Result<Vec<u64>> {
    require_stable(ideal)?;
    let counts = ideal.m_counts();
    // p = projdim S/I is the largest m with m_p(I) > 0
    let p = counts.iter().rposition(|&c| c > 0).map_or(0, |i| i + 1);
    Ok((0..p)
        .map(|i| {
            (i..p)
                .map(|j| counts[j] as u64 * binom_u64(j as i64, i as i64))
                .sum()
        })
        .collect())
}

/// `ek_graded_betti` in the Betti JSON layout, tagged with its method.
pub fn ek_json(ideal: &MonomialIdeal) -> Result<BettiJson> {
    let mut json = ek_graded_betti(ideal)?.to_json();
    json.method = Some("eliahou-kervaire");
    Ok(json)
}
