//! Grade, complete intersections and the Brun–Römer lower bound.

use serde::Serialize;

use crate::betti::total_betti;
use crate::binomial::binom_u64;
use crate::error::Result;
use crate::ideal::MonomialIdeal;

/// `grade I = height I`: the fewest variables meeting every generator's
/// support. Searches variable sets by increasing size.
pub fn grade(ideal: &MonomialIdeal) -> usize {
    let n = ideal.n();
    let supports: Vec<u64> = ideal
        .gens()
        .iter()
        .map(|g| g.support().fold(0u64, |m, j| m | 1 << (j - 1)))
        .collect();
    assert!(n < 64, "grade search supports fewer than 64 variables");
    for k in 1..=n {
        // Gosper's hack walks the k-subsets of {0..n-1} in increasing order
        let mut set: u64 = (1 << k) - 1;
        while set < 1 << n {
            if supports.iter().all(|&s| s & set != 0) {
                return k;
            }
            let c = set & set.wrapping_neg();
            let r = set + c;
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    // every generator has nonempty support, so the full set always covers
    unreachable!("the full variable set covers every generator")
}

/// Monomial complete intersections are exactly those with pairwise coprime
/// minimal generators.
pub fn is_complete_intersection(ideal: &MonomialIdeal) -> bool {
    ideal.is_complete_intersection()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundRow {
    pub i: usize,
    pub bound: u64,
    pub beta: u64,
    pub holds: bool,
}

/// `β_i(I) >= C(p, i + 1)` for `i < p = projdim S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrunRomerReport {
    pub p: usize,
    pub rows: Vec<LowerBoundRow>,
    pub holds: bool,
}

/// Check a total Betti vector; `p` is read off as its length.
pub fn brun_romer_report(betti: &[u64]) -> BrunRomerReport {
    let p = betti.len();
    let rows: Vec<LowerBoundRow> = betti
        .iter()
        .enumerate()
        .map(|(i, &beta)| {
            let bound = binom_u64(p as i64, i as i64 + 1);
            LowerBoundRow {
                i,
                bound,
                beta,
                holds: beta >= bound,
            }
        })
        .collect();
    let holds = rows.iter().all(|r| r.holds);
    BrunRomerReport { p, rows, holds }
}

pub fn check_brun_romer(ideal: &MonomialIdeal) -> Result<BrunRomerReport> {
    Ok(brun_romer_report(&total_betti(ideal)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::projdim_quotient;
    use crate::format::parse_ideal;
    use proptest::prelude::*;

    fn ideal(text: &str) -> MonomialIdeal {
        parse_ideal(text).unwrap()
    }

    #[test]
    fn grade_examples() {
        assert_eq!(grade(&ideal("n=2; x1^2, x1*x2, x2^2")), 2);
        assert_eq!(grade(&ideal("n=3; x1*x2, x1*x3")), 1);
        assert_eq!(grade(&ideal("n=3; x1^4")), 1);
        assert_eq!(grade(&ideal("n=4; x1*x2, x3*x4, x1*x3")), 2);
    }

    #[test]
    fn complete_intersection_examples() {
        assert!(is_complete_intersection(&ideal("n=2; x1^2, x2^3")));
        assert!(!is_complete_intersection(&ideal("n=2; x1^2, x1*x2")));
        assert!(is_complete_intersection(&ideal("n=4; x1*x2, x3*x4")));
    }

    #[test]
    fn brun_romer_examples() {
        let r = check_brun_romer(&ideal("n=2; x1^2, x1*x2, x2^2")).unwrap();
        assert_eq!(r.p, 2);
        assert!(r.holds);
        assert_eq!(r.rows.iter().map(|x| x.bound).collect::<Vec<_>>(), vec![2, 1]);
        let r = check_brun_romer(&ideal("n=2; x1*x2")).unwrap();
        assert!(r.holds && r.rows[0].beta == r.rows[0].bound);
        let r = check_brun_romer(&ideal("n=3; x1, x2, x3")).unwrap();
        assert!(r.rows.iter().all(|x| x.beta == x.bound));
        assert!(!brun_romer_report(&[2, 0, 1]).holds);
    }

    fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u32..3, n), 1..7)
                .prop_filter_map("unit", move |rows| MonomialIdeal::from_exponents(n, &rows).ok())
        })
    }

    proptest! {
        #[test]
        fn grade_is_a_minimum_cover(i in ideal_strategy()) {
            let g = grade(&i);
            let n = i.n();
            let covers = |set: u32| i.gens().iter().all(|u| u.support().any(|j| set & (1 << (j - 1)) != 0));
            let best = (0u32..1 << n).filter(|&m| covers(m)).map(u32::count_ones).min().unwrap();
            prop_assert_eq!(g, best as usize);
        }

        #[test]
        fn grade_is_at_most_projdim(i in ideal_strategy()) {
            prop_assert!(grade(&i) <= projdim_quotient(&i).unwrap());
            prop_assert!(check_brun_romer(&i).unwrap().holds);
        }
    }
}
