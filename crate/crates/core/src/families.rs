//! Constructors, enumerators and samplers for the ideal families the suite
//! runs on.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hilbert::{lexsegment_class, LexClass};
use crate::ideal::{minimal_generators, MonomialIdeal};
use crate::monomial::{monomials_of_degree, Monomial};

/// The ideal `(x1y1, ..., x_{s-1}y_{s-1}, y1...yi)` for `2 <= i < s - 2`.
///
/// Variables are flattened to `z1..z_{2(s-1)}` with `x_k = z_k` and
/// `y_k = z_{s-1+k}`.
pub fn remark_family(s: usize, i: usize) -> Result<MonomialIdeal> {
    if !(2 <= i && i + 2 < s) {
        return Err(Error::InvalidParameter(format!(
            "remark family needs 2 <= i < s - 2, got s = {s}, i = {i}"
        )));
    }
    let k = s - 1;
    let n = 2 * k;
    let mut gens = Vec::with_capacity(s);
    for j in 0..k {
        let mut e = vec![0; n];
        e[j] = 1;
        e[k + j] = 1;
        gens.push(Monomial::new(e));
    }
    let mut e = vec![0; n];
    for v in e[k..k + i].iter_mut() {
        *v = 1;
    }
    gens.push(Monomial::new(e));
    let ideal = minimal_generators(gens)?;
    debug_assert_eq!(ideal.num_gens(), s);
    Ok(ideal)
}

/// All valid `(s, i)` pairs of the remark family for the given `s` values.
pub fn remark_parameters(sizes: &[usize]) -> Vec<(usize, usize)> {
    sizes
        .iter()
        .flat_map(|&s| (2..s.saturating_sub(2)).map(move |i| (s, i)))
        .collect()
}

/// The universal lexsegment ideal with generator degrees `d_1 <= ... <= d_s`:
/// `w_1 = x1^{d_1}`, `w_{k+1} = (w_k / x_k) * x_{k+1}^{d_{k+1} - d_k + 1}`.
pub fn universal_lex_family(degrees: &[u32], n: usize) -> Result<MonomialIdeal> {
    let s = degrees.len();
    if s == 0 || s > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= s <= n, got s = {s}, n = {n}"
        )));
    }
    if degrees[0] == 0 || degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "degrees must be positive and nondecreasing: {degrees:?}"
        )));
    }
    let mut e = vec![0u32; n];
    e[0] = degrees[0];
    let mut ws = vec![Monomial::new(e.clone())];
    for k in 1..s {
        e[k - 1] -= 1;
        e[k] += degrees[k] - degrees[k - 1] + 1;
        ws.push(Monomial::new(e.clone()));
    }
    let ideal = minimal_generators(ws)?;
    let ms_ok = ideal.max_indices() == (1..=s).collect::<Vec<_>>();
    if ideal.num_gens() != s || !ms_ok || lexsegment_class(&ideal) != LexClass::UniversalLexsegment {
        return Err(Error::Internal(format!(
            "universal lexsegment construction failed for degrees {degrees:?} in {n} variables"
        )));
    }
    Ok(ideal)
}

/// Every monomial reachable from `u` by moves `x_j -> x_i`, `i < j`.
fn borel_orbit(u: &Monomial, seen: &mut HashSet<Monomial>) {
    let mut stack = vec![u.clone()];
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for j in v.support().collect::<Vec<_>>() {
            // elementary moves suffice
            if j > 1 {
                stack.push(v.exchange(j, j - 1).expect("x_j divides v"));
            }
        }
    }
}

/// The smallest strongly stable ideal containing `monomials`.
pub fn borel_closure<I>(monomials: I) -> Result<MonomialIdeal>
where
    I: IntoIterator<Item = Monomial>,
{
    let mut seen = HashSet::new();
    for u in monomials {
        borel_orbit(&u, &mut seen);
    }
    minimal_generators(seen)
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.random_range(0..n)] += 1;
    }
    Monomial::new(e)
}

/// `count` strongly stable ideals in `n` variables: Borel closures of one
/// to three random monomials of degree `1..=maxdeg`, capped at `max_gens`
/// generators (larger closures are redrawn).
pub fn sample_strongly_stable(n: usize, maxdeg: u32, count: usize, seed: u64, max_gens: usize) -> Vec<MonomialIdeal> {
    assert!(n >= 1 && maxdeg >= 1 && max_gens >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.random_range(1..=3);
        let seeds: Vec<Monomial> = (0..k)
            .map(|_| {
                let d = rng.random_range(1..=maxdeg);
                random_monomial(&mut rng, n, d)
            })
            .collect();
        let ideal = borel_closure(seeds).expect("nonunit seeds");
        if ideal.num_gens() <= max_gens {
            out.push(ideal);
        }
    }
    out
}

/// Borel-closed subsets of `layer` (given lex-largest first) that contain
/// `required`, by deciding each monomial in order.
fn borel_sets(layer: &[Monomial], required: &HashSet<Monomial>) -> Vec<Vec<Monomial>> {
    fn go(
        layer: &[Monomial],
        k: usize,
        required: &HashSet<Monomial>,
        chosen: &mut HashSet<Monomial>,
        out: &mut Vec<Vec<Monomial>>,
    ) {
        if k == layer.len() {
            let mut set: Vec<Monomial> = chosen.iter().cloned().collect();
            set.sort_by(|a, b| b.lex_cmp(a));
            out.push(set);
            return;
        }
        let u = &layer[k];
        // the elementary parents x_{j-1} u / x_j are lex-larger, so already decided
        let allowed = u
            .support()
            .filter(|&j| j > 1)
            .all(|j| chosen.contains(&u.exchange(j, j - 1).expect("x_j divides u")));
        let forced = required.contains(u);
        if forced && !allowed {
            return;
        }
        if allowed {
            chosen.insert(u.clone());
            go(layer, k + 1, required, chosen, out);
            chosen.remove(u);
        }
        if !forced {
            go(layer, k + 1, required, chosen, out);
        }
    }
    let mut out = Vec::new();
    go(layer, 0, required, &mut HashSet::new(), &mut out);
    out
}

/// All strongly stable ideals of `K[x1..xn]` generated in degrees
/// `<= maxdeg` with at most `max_gens` minimal generators, in a fixed order.
pub fn enumerate_strongly_stable(n: usize, maxdeg: u32, max_gens: usize) -> Vec<MonomialIdeal> {
    let layers: Vec<Vec<Monomial>> = (0..=maxdeg).map(|d| monomials_of_degree(n, d)).collect();
    let mut out = Vec::new();
    // (component in the current degree, generators so far)
    let mut frontier: Vec<(Vec<Monomial>, Vec<Monomial>)> = vec![(Vec::new(), Vec::new())];
    for d in 1..=maxdeg as usize {
        let mut next = Vec::new();
        for (component, gens) in frontier {
            let shadow: HashSet<Monomial> = component
                .iter()
                .flat_map(|u| (1..=n).map(move |i| u.mul_var(i).expect("small exponents")))
                .collect();
            for set in borel_sets(&layers[d], &shadow) {
                let mut g = gens.clone();
                g.extend(set.iter().filter(|u| !shadow.contains(*u)).cloned());
                if g.len() > max_gens {
                    continue;
                }
                next.push((set, g));
            }
        }
        frontier = next;
    }
    let mut seen = BTreeSet::new();
    for (_, gens) in frontier {
        if gens.is_empty() {
            continue;
        }
        let ideal = minimal_generators(gens).expect("nonempty");
        let key = crate::format::render_ideal(&ideal);
        if seen.insert(key) {
            out.push(ideal);
        }
    }
    out
}

/// Random degree sequences `d_1 <= ... <= d_s` with `s <= n <= max_n` and
/// `d_s <= max_deg`, paired with their `n`.
pub fn sample_degree_sequences(count: usize, max_n: usize, max_deg: u32, seed: u64) -> Vec<(Vec<u32>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_n);
            let s = rng.random_range(1..=n);
            let mut ds: Vec<u32> = (0..s).map(|_| rng.random_range(1..=max_deg)).collect();
            ds.sort_unstable();
            (ds, n)
        })
        .collect()
}

/// Random monomial ideals with up to `max_gens` generators of degree
/// `1..=maxdeg` in `2..=max_n` variables.
pub fn sample_random_ideals(count: usize, max_n: usize, maxdeg: u32, max_gens: usize, seed: u64) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_n.max(2));
            let k = rng.random_range(1..=max_gens);
            let gens: Vec<Monomial> = (0..k)
                .map(|_| {
                    let d = rng.random_range(1..=maxdeg);
                    random_monomial(&mut rng, n, d)
                })
                .collect();
            minimal_generators(gens).expect("nonunit")
        })
        .collect()
}

/// Random principal ideals.
pub fn sample_principal(count: usize, max_n: usize, maxdeg: u32, seed: u64) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_n);
            let d = rng.random_range(1..=maxdeg);
            minimal_generators([random_monomial(&mut rng, n, d)]).expect("nonunit")
        })
        .collect()
}

/// Strongly stable ideals with their variables shuffled. Relabelling keeps
/// Betti tables and `Gin`, so these are componentwise linear but usually
/// not Borel-fixed.
pub fn sample_permuted_strongly_stable(
    n: usize,
    maxdeg: u32,
    count: usize,
    seed: u64,
    max_gens: usize,
) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    sample_strongly_stable(n, maxdeg, count, seed, max_gens)
        .into_iter()
        .map(|i| {
            let mut perm: Vec<usize> = (1..=n).collect();
            perm.shuffle(&mut rng);
            i.permute_variables(&perm).expect("valid permutation")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ideal;

    fn ideal(text: &str) -> MonomialIdeal {
        parse_ideal(text).unwrap()
    }

    #[test]
    fn remark_family_examples() {
        assert_eq!(
            remark_family(5, 2).unwrap(),
            ideal("n=8; x1*x5, x2*x6, x3*x7, x4*x8, x5*x6")
        );
        let i = remark_family(6, 3).unwrap();
        assert_eq!((i.num_gens(), i.n()), (6, 10));
        assert!(remark_family(5, 3).is_err());
        assert!(remark_family(5, 1).is_err());
        assert_eq!(remark_parameters(&[5, 6, 7]), vec![(5, 2), (6, 2), (6, 3), (7, 2), (7, 3), (7, 4)]);
    }

    #[test]
    fn universal_lex_examples() {
        assert_eq!(universal_lex_family(&[1, 2, 3], 3).unwrap(), ideal("n=3; x1, x2^2, x2*x3^2"));
        assert_eq!(universal_lex_family(&[2, 2], 2).unwrap(), ideal("n=2; x1^2, x1*x2"));
        assert_eq!(universal_lex_family(&[1, 1, 1], 3).unwrap(), ideal("n=3; x1, x2, x3"));
        assert!(universal_lex_family(&[1, 2, 3], 2).is_err());
        assert!(universal_lex_family(&[2, 1], 3).is_err());
    }

    #[test]
    fn universal_lex_over_many_sequences() {
        for (ds, n) in sample_degree_sequences(300, 6, 6, 1) {
            let i = universal_lex_family(&ds, n).unwrap();
            let degs: Vec<u32> = i.gens().iter().map(Monomial::degree).collect();
            assert_eq!(degs, ds);
        }
    }

    #[test]
    fn borel_closure_examples() {
        let x = |e: &[u32]| Monomial::new(e.to_vec());
        assert_eq!(
            borel_closure([x(&[0, 1, 1])]).unwrap(),
            ideal("n=3; x1^2, x1*x2, x1*x3, x2^2, x2*x3")
        );
        assert_eq!(borel_closure([x(&[2, 0])]).unwrap(), ideal("n=2; x1^2"));
        assert_eq!(borel_closure([x(&[0, 2])]).unwrap(), ideal("n=2; x1^2, x1*x2, x2^2"));
    }

    #[test]
    fn samples_are_strongly_stable_and_deterministic() {
        let a = sample_strongly_stable(4, 4, 50, 9, 12);
        assert_eq!(a, sample_strongly_stable(4, 4, 50, 9, 12));
        assert!(a.iter().all(|i| i.is_strongly_stable() && i.num_gens() <= 12));
        let p = sample_permuted_strongly_stable(3, 3, 20, 9, 12);
        assert_eq!(p.len(), 20);
    }

    /// Brute force over every set of monomials of degree `<= D`.
    #[test]
    fn enumeration_matches_subset_search() {
        for (n, maxdeg) in [(2, 3), (2, 4), (3, 2)] {
            let listed = enumerate_strongly_stable(n, maxdeg, 64);
            let names: BTreeSet<String> = listed.iter().map(crate::format::render_ideal).collect();
            assert_eq!(names.len(), listed.len());

            let all: Vec<Monomial> = (1..=maxdeg).flat_map(|d| monomials_of_degree(n, d)).collect();
            let mut found = BTreeSet::new();
            for mask in 1u32..1 << all.len() {
                let pick = all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, u)| u.clone());
                let i = minimal_generators(pick).unwrap();
                if i.is_strongly_stable() {
                    found.insert(crate::format::render_ideal(&i));
                }
            }
            assert_eq!(found, names, "n = {n}, D = {maxdeg}");
        }
    }

    #[test]
    fn exhaustive_counts_are_stable() {
        let all = enumerate_strongly_stable(3, 4, 16);
        assert!(all.iter().all(|i| i.num_gens() <= 16));
        assert!(all.len() > 100);
    }
}
