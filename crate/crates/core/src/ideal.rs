//! Monomial ideals represented by their minimal generating set `G(I)`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Size limits shared by the combinatorial algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest generator count accepted by subset-lattice algorithms.
    pub max_gens: usize,
    /// Hard degree cap for the lexification stop rule.
    pub lex_degree_cap: u32,
    /// Largest lexification, in minimal generators, that will be built.
    pub lex_max_gens: usize,
}

pub const DEFAULT_MAX_GENS: usize = 16;
pub const DEFAULT_LEX_DEGREE_CAP: u32 = 64;
pub const DEFAULT_LEX_MAX_GENS: usize = 200_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_gens: DEFAULT_MAX_GENS,
            lex_degree_cap: DEFAULT_LEX_DEGREE_CAP,
            lex_max_gens: DEFAULT_LEX_MAX_GENS,
        }
    }
}

impl Limits {
    pub fn check_gens(&self, s: usize) -> Result<()> {
        if s > self.max_gens {
            Err(Error::GeneratorCap {
                s,
                cap: self.max_gens,
            })
        } else {
            Ok(())
        }
    }
}

/// A proper, nonzero monomial ideal of `K[x1, ..., xn]`.
///
/// Generators are pairwise indivisible and kept in canonical order:
/// ascending degree, lex-largest first within a degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.lex_cmp(a))
}

/// The divisibility-minimal subset of `monomials`.
pub fn minimal_generators<I>(monomials: I) -> Result<MonomialIdeal>
where
    I: IntoIterator<Item = Monomial>,
{
    let mut all: Vec<Monomial> = monomials.into_iter().collect();
    let n = all.first().ok_or(Error::EmptyGenerators)?.n();
    for u in &all {
        if u.n() != n {
            return Err(Error::VariableMismatch {
                expected: n,
                found: u.n(),
            });
        }
        if u.is_one() {
            return Err(Error::UnitGenerator);
        }
    }
    all.sort_by(canonical_cmp);
    all.dedup();
    let mut gens: Vec<Monomial> = Vec::with_capacity(all.len());
    for u in all {
        // anything dividing u has degree <= deg u and was seen already
        if !gens.iter().any(|g| g.divides(&u)) {
            gens.push(u);
        }
    }
    Ok(MonomialIdeal { n, gens })
}

/// Which exchange closure a monomial ideal satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityClass {
    None,
    Stable,
    StronglyStable,
}

impl StabilityClass {
    pub fn is_stable(self) -> bool {
        self != StabilityClass::None
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityClass::None => "none",
            StabilityClass::Stable => "stable",
            StabilityClass::StronglyStable => "strongly_stable",
        })
    }
}

impl MonomialIdeal {
    pub fn new<I>(monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        minimal_generators(monomials)
    }

    /// Build from exponent rows.
    pub fn from_exponents(n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        for r in rows {
            if r.len() != n {
                return Err(Error::VariableMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        minimal_generators(rows.iter().cloned().map(Monomial::new))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// `s = |G(I)|`.
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).min().unwrap_or(0)
    }

    /// Whether `I` lies in the square of the maximal ideal.
    pub fn in_m_squared(&self) -> bool {
        self.gens.iter().all(|g| g.degree() >= 2)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// Membership with a variable-count check.
    pub fn membership(&self, u: &Monomial) -> Result<bool> {
        if u.n() != self.n {
            return Err(Error::VariableMismatch {
                expected: self.n,
                found: u.n(),
            });
        }
        Ok(self.contains(u))
    }

    /// `m(u)` for every generator, in generator order.
    pub fn max_indices(&self) -> Vec<usize> {
        self.gens
            .iter()
            .map(|g| g.max_index().expect("generators are nonunit"))
            .collect()
    }

    pub fn max_m(&self) -> usize {
        self.max_indices().into_iter().max().unwrap_or(0)
    }

    /// `(m_1(I), ..., m_n(I))`.
    pub fn m_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for m in self.max_indices() {
            counts[m - 1] += 1;
        }
        counts
    }

    pub fn is_stable(&self) -> bool {
        self.gens.iter().all(|u| {
            let m = u.max_index().expect("generators are nonunit");
            (1..m).all(|i| self.contains(&u.exchange(m, i).expect("x_m divides u")))
        })
    }

    pub fn is_strongly_stable(&self) -> bool {
        self.gens.iter().all(|u| {
            u.support().all(|j| {
                (1..j).all(|i| self.contains(&u.exchange(j, i).expect("x_j divides u")))
            })
        })
    }

    pub fn stability_class(&self) -> StabilityClass {
        if self.is_strongly_stable() {
            StabilityClass::StronglyStable
        } else if self.is_stable() {
            StabilityClass::Stable
        } else {
            StabilityClass::None
        }
    }

    /// Generator supports are pairwise disjoint.
    pub fn is_complete_intersection(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.is_coprime(b)))
    }

    /// Relabel variables: `x_i` becomes `x_{perm[i-1]}` (`perm` is 1-based).
    pub fn permute_variables(&self, perm: &[usize]) -> Result<MonomialIdeal> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n || seen[p - 1] {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation of 1..={}",
                    self.n
                )));
            }
            seen[p - 1] = true;
        }
        minimal_generators(self.gens.iter().map(|g| {
            let mut e = vec![0; self.n];
            for (i, &p) in perm.iter().enumerate() {
                e[p - 1] = g.exponents()[i];
            }
            Monomial::new(e)
        }))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::render_ideal(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    /// Monomial-level definition of (strong) stability, checked on every
    /// monomial of `I` up to `bound` in each exponent.
    fn stable_by_enumeration(i: &MonomialIdeal, strong: bool, bound: u32) -> bool {
        let n = i.n();
        let mut exps = vec![0u32; n];
        loop {
            let u = Monomial::new(exps.clone());
            if !u.is_one() && i.contains(&u) {
                let m = u.max_index().unwrap();
                let sources: Vec<usize> = if strong { u.support().collect() } else { vec![m] };
                for j in sources {
                    for t in 1..j {
                        if !i.contains(&u.exchange(j, t).unwrap()) {
                            return false;
                        }
                    }
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return true;
                }
                exps[k] += 1;
                if exps[k] <= bound {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn minimal_generators_examples() {
        let g = ideal(2, &[&[1, 0], &[1, 1], &[0, 2]]);
        assert_eq!(g, ideal(2, &[&[1, 0], &[0, 2]]));
        assert_eq!(g.num_gens(), 2);
        assert_eq!(ideal(1, &[&[2]]).gens(), &[Monomial::new(vec![2])]);
        let h = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(h.gens(), &[Monomial::new(vec![1, 1, 0]), Monomial::new(vec![0, 1, 1])]);
    }

    #[test]
    fn minimal_generators_errors() {
        assert_eq!(minimal_generators(Vec::new()), Err(Error::EmptyGenerators));
        assert_eq!(
            minimal_generators(vec![Monomial::new(vec![1]), Monomial::new(vec![1, 0])]),
            Err(Error::VariableMismatch { expected: 1, found: 2 })
        );
        assert_eq!(
            minimal_generators(vec![Monomial::new(vec![1, 0]), Monomial::one(2)]),
            Err(Error::UnitGenerator)
        );
    }

    #[test]
    fn membership_examples() {
        let i = ideal(2, &[&[1, 1]]);
        assert!(i.membership(&Monomial::new(vec![2, 1])).unwrap());
        assert!(!i.membership(&Monomial::new(vec![3, 0])).unwrap());
        let j = ideal(2, &[&[1, 0], &[0, 2]]);
        assert!(!j.membership(&Monomial::new(vec![0, 1])).unwrap());
        assert!(j.membership(&Monomial::new(vec![0, 1, 0])).is_err());
    }

    #[test]
    fn stability_examples() {
        assert_eq!(
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]).stability_class(),
            StabilityClass::StronglyStable
        );
        assert_eq!(ideal(2, &[&[1, 1]]).stability_class(), StabilityClass::None);
        assert_eq!(
            ideal(3, &[&[1, 0, 0], &[0, 1, 2]]).stability_class(),
            StabilityClass::None
        );
        let s = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert!(s.is_strongly_stable());
        // x2*x3 -> x1*x3 fails, but moves out of x3 succeed
        let t = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[0, 1, 1]]);
        assert_eq!(t.stability_class(), StabilityClass::Stable);
    }

    #[test]
    fn m_counts_examples() {
        assert_eq!(ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]).m_counts(), vec![1, 2]);
        assert_eq!(ideal(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 1, 2]]).m_counts(), vec![1, 1, 1]);
        assert_eq!(ideal(2, &[&[1, 1]]).m_counts(), vec![0, 1]);
    }

    #[test]
    fn complete_intersection_examples() {
        assert!(ideal(2, &[&[2, 0], &[0, 3]]).is_complete_intersection());
        assert!(!ideal(2, &[&[2, 0], &[1, 1]]).is_complete_intersection());
        assert!(ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]).is_complete_intersection());
    }

    fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..4).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u32..3, n), 1..5).prop_filter_map(
                "unit",
                move |rows| MonomialIdeal::from_exponents(n, &rows).ok(),
            )
        })
    }

    proptest! {
        #[test]
        fn minimalization_is_idempotent_and_order_free(i in small_ideal()) {
            let again = minimal_generators(i.gens().iter().rev().cloned()).unwrap();
            prop_assert_eq!(&again, &i);
            for a in i.gens() {
                for b in i.gens() {
                    prop_assert!(a == b || !a.divides(b));
                }
            }
        }

        #[test]
        fn generator_level_stability_matches_definition(i in small_ideal()) {
            let bound = 4;
            prop_assert_eq!(i.is_stable(), stable_by_enumeration(&i, false, bound));
            prop_assert_eq!(i.is_strongly_stable(), stable_by_enumeration(&i, true, bound));
            if i.is_strongly_stable() {
                prop_assert!(i.is_stable());
            }
        }

        #[test]
        fn stable_ideals_have_descending_max_index(i in small_ideal()) {
            if i.is_stable() {
                for u in i.gens() {
                    let m = u.max_index().unwrap();
                    if m >= 2 {
                        let found = i.gens().iter().any(|w| {
                            w.max_index().unwrap() == m - 1 && w.degree() <= u.degree()
                        });
                        prop_assert!(found);
                    }
                }
                prop_assert!(i.max_m() <= i.num_gens());
            }
        }
    }
}
