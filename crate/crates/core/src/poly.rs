//! Polynomials over `Q` and Buchberger's algorithm.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::{minimal_generators, MonomialIdeal};
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial with exact rational coefficients. Terms are kept sorted
/// from the largest monomial down in the polynomial's own order, with no
/// zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    pub fn zero(n: usize, order: MonomialOrder) -> Self {
        Polynomial {
            n,
            order,
            terms: Vec::new(),
        }
    }

    /// Collects like terms and drops zeros.
    pub fn new<I>(n: usize, order: MonomialOrder, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut terms: Vec<(Monomial, BigRational)> = terms.into_iter().collect();
        for (u, _) in &terms {
            if u.n() != n {
                return Err(Error::VariableMismatch {
                    expected: n,
                    found: u.n(),
                });
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
        for (u, c) in terms {
            match merged.last_mut() {
                Some((v, acc)) if *v == u => *acc += c,
                _ => merged.push((u, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial {
            n,
            order,
            terms: merged,
        })
    }

    /// Integer-coefficient constructor, mainly for tests and bindings.
    pub fn from_integer_terms(n: usize, order: MonomialOrder, terms: &[(Vec<u32>, i64)]) -> Result<Self> {
        Self::new(
            n,
            order,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.clone()), BigRational::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn from_monomial(u: Monomial, order: MonomialOrder) -> Self {
        Polynomial {
            n: u.n(),
            order,
            terms: vec![(u, BigRational::one())],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(u, _)| u)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// The same polynomial with terms re-sorted for `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            n: self.n,
            order,
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.order);
        }
        Polynomial {
            n: self.n,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(u, a)| (u.clone(), a * c))
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// `c * u * self`. Multiplying by a monomial keeps the term order.
    pub fn mul_term(&self, u: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.order);
        }
        Polynomial {
            n: self.n,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(v, a)| (v.checked_mul(u).expect("exponent overflow"), a * c))
                .collect(),
        }
    }

    /// `self + sign * other`, merging the two sorted term lists.
    fn combine(&self, other: &Polynomial, negate: bool) -> Self {
        debug_assert_eq!(self.n, other.n);
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let signed = |c: &BigRational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), signed(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(u, c)| (u.clone(), signed(c))));
        Polynomial {
            n: self.n,
            order: ord,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        self.combine(other, true)
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        let mut acc = Self::zero(self.n, self.order);
        for (u, c) in &other.terms {
            acc = acc.add(&self.mul_term(u, c));
        }
        acc
    }

    /// Substitute `x_i ↦ images[i-1]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: images.len(),
            });
        }
        let m = images.first().map_or(self.n, Polynomial::n);
        // powers[i][k] = images[i]^k, grown on demand
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::from_monomial(Monomial::one(m), self.order), p.with_order(self.order)])
            .collect();
        let mut acc = Self::zero(m, self.order);
        for (u, c) in &self.terms {
            let mut term = Polynomial::new(m, self.order, [(Monomial::one(m), c.clone())])?;
            for (i, &e) in u.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(&powers[i][1]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (u, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if u.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{u}")?;
            } else {
                write!(f, "{abs}*{u}")?;
            }
        }
        Ok(())
    }
}

/// Full normal form of `f` modulo `basis` (every term reduced).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, BigRational)> = Vec::new();
    while let Some((lm, lc)) = p.terms.first().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|v| v.divides(&lm)));
        match divisor {
            Some(g) => {
                let q = lm.checked_div(g.leading_monomial().expect("nonzero")).expect("divides");
                let c = lc / g.leading_coefficient().expect("nonzero");
                p = p.sub(&g.mul_term(&q, &c));
            }
            None => {
                rest.push(p.terms.remove(0));
            }
        }
    }
    Polynomial {
        n: f.n,
        order: f.order,
        terms: rest,
    }
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (Some(a), Some(b)) = (f.leading_monomial(), g.leading_monomial()) else {
        return Polynomial::zero(f.n, f.order);
    };
    let l = a.lcm(b);
    let fa = f.mul_term(
        &l.checked_div(a).expect("lcm"),
        &f.leading_coefficient().expect("nonzero").recip(),
    );
    let gb = g.mul_term(
        &l.checked_div(b).expect("lcm"),
        &g.leading_coefficient().expect("nonzero").recip(),
    );
    fa.sub(&gb)
}

fn validate(gens: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let n = gens.first().ok_or(Error::EmptyGenerators)?.n();
    gens.iter()
        .map(|g| {
            if g.n() != n {
                Err(Error::VariableMismatch {
                    expected: n,
                    found: g.n(),
                })
            } else if g.is_zero() {
                Err(Error::ZeroPolynomial)
            } else {
                Ok(g.with_order(order).monic())
            }
        })
        .collect()
}

/// The reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// leading monomial, largest first.
pub fn buchberger_reduced(gens: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let mut basis = validate(gens, order)?;
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let pair_lcm = |b: &[Polynomial], (i, j): (usize, usize)| {
        b[i].leading_monomial()
            .expect("nonzero")
            .lcm(b[j].leading_monomial().expect("nonzero"))
    };
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let pick = (0..pairs.len())
            .min_by(|&a, &b| order.cmp(&pair_lcm(&basis, pairs[a]), &pair_lcm(&basis, pairs[b])))
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pick);
        let li = basis[i].leading_monomial().expect("nonzero");
        let lj = basis[j].leading_monomial().expect("nonzero");
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let pending = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().expect("nonzero").divides(&l)
                && !pending(i, k)
                && !pending(j, k)
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|a| (a, k)));
        }
    }
    Ok(reduce_basis(basis))
}

/// Minimalize, inter-reduce and normalize a Gröbner basis.
fn reduce_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            let lh = h.leading_monomial().expect("nonzero");
            // among equal leading monomials keep the first
            m != k && lh.divides(lg) && (lh != lg || m < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != k)
                .map(|(_, h)| h.clone())
                .collect();
            let g = &minimal[k];
            let head = Polynomial {
                n: g.n,
                order: g.order,
                terms: g.terms[..1].to_vec(),
            };
            let tail = Polynomial {
                n: g.n,
                order: g.order,
                terms: g.terms[1..].to_vec(),
            };
            head.add(&normal_form(&tail, &others)).monic()
        })
        .collect();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| {
        a.order
            .cmp(b.leading_monomial().expect("nonzero"), a.leading_monomial().expect("nonzero"))
    });
    reduced
}

/// Minimal generators of the leading-term ideal.
pub fn initial_ideal(gens: &[Polynomial], order: MonomialOrder) -> Result<MonomialIdeal> {
    let gb = buchberger_reduced(gens, order)?;
    if gb.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one)) {
        return Err(Error::UnitGenerator);
    }
    minimal_generators(gb.iter().map(|g| g.leading_monomial().expect("nonzero").clone()))
}

/// Whether `basis` is a Gröbner basis: all S-polynomials reduce to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    (0..basis.len()).all(|j| (0..j).all(|i| normal_form(&s_polynomial(&basis[i], &basis[j]), basis).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const REVLEX: MonomialOrder = MonomialOrder::DegRevLex;

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        let t: Vec<(Vec<u32>, i64)> = terms.iter().map(|(e, c)| (e.to_vec(), *c)).collect();
        Polynomial::from_integer_terms(n, REVLEX, &t).unwrap()
    }

    fn mono_ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        MonomialIdeal::from_exponents(n, &rows).unwrap()
    }

    #[test]
    fn monomials_are_already_a_basis() {
        let gens = [poly(2, &[(&[2, 0], 1)]), poly(2, &[(&[0, 2], 1)])];
        let gb = buchberger_reduced(&gens, REVLEX).unwrap();
        assert_eq!(gb, gens.to_vec());
        assert_eq!(initial_ideal(&gens, REVLEX).unwrap(), mono_ideal(2, &[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn single_binomial() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let gb = buchberger_reduced(&[f.clone()], REVLEX).unwrap();
        assert_eq!(gb, vec![f]);
        assert_eq!(gb[0].leading_monomial().unwrap().exponents(), &[1, 0]);
        assert_eq!(initial_ideal(&gb, REVLEX).unwrap(), mono_ideal(2, &[&[1, 0]]));
    }

    #[test]
    fn quadric_pair() {
        // S(x1^2 + x2^2, x1*x2) = x2^3
        let gens = [poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]), poly(2, &[(&[1, 1], 1)])];
        let gb = buchberger_reduced(&gens, REVLEX).unwrap();
        assert!(is_groebner_basis(&gb));
        assert_eq!(gb.len(), 3);
        assert_eq!(
            initial_ideal(&gens, REVLEX).unwrap(),
            mono_ideal(2, &[&[2, 0], &[1, 1], &[0, 3]])
        );
        for g in &gens {
            assert!(normal_form(g, &gb).is_zero());
        }
    }

    #[test]
    fn dense_quadric_leads_with_x1_squared() {
        let f = poly(2, &[(&[2, 0], 3), (&[1, 1], -7), (&[0, 2], 5)]);
        assert_eq!(initial_ideal(&[f], REVLEX).unwrap(), mono_ideal(2, &[&[2, 0]]));
    }

    #[test]
    fn rejects_zero_and_empty_input() {
        assert_eq!(
            buchberger_reduced(&[Polynomial::zero(2, REVLEX)], REVLEX),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(buchberger_reduced(&[], REVLEX), Err(Error::EmptyGenerators));
    }

    #[test]
    fn substitution_expands_powers() {
        // x1^2 under x1 -> x1 + x2
        let f = poly(2, &[(&[2, 0], 1)]);
        let images = [poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]), poly(2, &[(&[0, 1], 1)])];
        let g = f.substitute(&images).unwrap();
        assert_eq!(g, poly(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert_eq!(g.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    /// Initial monomials of `I_d` by row reduction of the spanning set
    /// `{u * g}`, columns ordered largest monomial first.
    fn initial_space(gens: &[Polynomial], d: u32, order: MonomialOrder) -> Vec<Monomial> {
        let n = gens[0].n();
        let mut cols = crate::monomial::monomials_of_degree(n, d);
        cols.sort_by(|a, b| order.cmp(b, a));
        let index = |u: &Monomial| cols.iter().position(|v| v == u).unwrap();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for g in gens {
            let e = g.leading_monomial().unwrap().degree();
            if e > d {
                continue;
            }
            for u in crate::monomial::monomials_of_degree(n, d - e) {
                let mut row = vec![BigRational::zero(); cols.len()];
                for (v, c) in g.mul_term(&u, &BigRational::one()).terms() {
                    row[index(v)] = c.clone();
                }
                rows.push(row);
            }
        }
        let mut leads = Vec::new();
        let mut r = 0;
        for c in 0..cols.len() {
            let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r][c].clone();
            for k in 0..rows.len() {
                if k != r && !rows[k][c].is_zero() {
                    let f = &rows[k][c] / &pivot;
                    let pr = rows[r].clone();
                    for (x, y) in rows[k].iter_mut().zip(pr) {
                        *x -= &f * y;
                    }
                }
            }
            leads.push(cols[c].clone());
            r += 1;
        }
        leads
    }

    fn homogeneous(n: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
        let layer = crate::monomial::monomials_of_degree(n, deg);
        proptest::collection::vec(-3i64..=3, layer.len()).prop_map(move |cs| {
            let t = layer.iter().cloned().zip(cs.into_iter().map(|c| BigRational::from_integer(c.into())));
            Polynomial::new(n, REVLEX, t).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn initial_ideal_matches_linear_algebra(
            f in homogeneous(3, 2),
            g in homogeneous(3, 2),
            h in homogeneous(3, 3),
            lex in any::<bool>(),
        ) {
            let order = if lex { MonomialOrder::DegLex } else { REVLEX };
            let gens: Vec<Polynomial> = [f, g, h].into_iter().filter(|p| !p.is_zero()).map(|p| p.with_order(order)).collect();
            prop_assume!(!gens.is_empty());
            let gb = buchberger_reduced(&gens, order).unwrap();
            prop_assert!(is_groebner_basis(&gb));
            for p in &gens {
                prop_assert!(normal_form(p, &gb).is_zero());
            }
            let init = initial_ideal(&gens, order).unwrap();
            for d in 2..=5 {
                let mut expect = initial_space(&gens, d, order);
                let mut got: Vec<Monomial> = crate::monomial::monomials_of_degree(3, d)
                    .into_iter()
                    .filter(|u| init.contains(u))
                    .collect();
                expect.sort_by(|a, b| a.lex_cmp(b));
                got.sort_by(|a, b| a.lex_cmp(b));
                prop_assert_eq!(got, expect);
            }
        }

        #[test]
        fn reduced_basis_is_canonical(f in homogeneous(2, 2), g in homogeneous(2, 3)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let a = buchberger_reduced(&[f.clone(), g.clone()], REVLEX).unwrap();
            let b = buchberger_reduced(&[g.clone(), f.add(&g)], REVLEX).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
