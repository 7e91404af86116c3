//! Exponent-vector monomials in `K[x1, ..., xn]` and the monomial orders
//! used throughout the crate. Variables are ordered `x1 > x2 > ... > xn`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial `x1^a1 * ... * xn^an`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable index {i} out of range 1..={n}");
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i`, 1-based.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial { exps })
    }

    /// Multiply by `x_i` (1-based).
    pub fn mul_var(&self, i: usize) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        exps[i - 1] = exps[i - 1].checked_add(1).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { exps })
    }

    /// Divide by `x_i` (1-based), `None` if `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        exps[i - 1] = exps[i - 1].checked_sub(1)?;
        Some(Monomial { exps })
    }

    /// The exchange `x_to * u / x_from`, if `x_from` divides `u`.
    pub fn exchange(&self, from: usize, to: usize) -> Option<Monomial> {
        let mut m = self.div_var(from)?;
        m.exps[to - 1] += 1;
        Some(m)
    }

    /// `m(u)`: the largest 1-based index `j` with `x_j | u`.
    pub fn max_index(&self) -> Result<usize> {
        self.exps
            .iter()
            .rposition(|&e| e > 0)
            .map(|p| p + 1)
            .ok_or(Error::UnitMonomial)
    }

    /// 1-based indices of the variables dividing `u`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
    }

    /// Pure lexicographic comparison with `x1 > ... > xn`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Degree reverse lexicographic comparison.
    pub fn revlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn deglex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A global monomial order on `K[x1, ..., xn]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.lex_cmp(b),
            MonomialOrder::DegLex => a.deglex_cmp(b),
            MonomialOrder::DegRevLex => a.revlex_cmp(b),
        }
    }
}

/// Degree-`d` monomials in `n` variables, lex-largest first, generated
/// lazily.
#[derive(Clone, Debug)]
pub struct LexLayer {
    next: Option<Vec<u32>>,
}

impl LexLayer {
    pub fn new(n: usize, d: u32) -> Self {
        let next = if n == 0 {
            (d == 0).then(Vec::new)
        } else {
            let mut e = vec![0; n];
            e[0] = d;
            Some(e)
        };
        LexLayer { next }
    }

    /// The tail of a degree layer, beginning at `u` and descending.
    pub fn starting_at(u: Monomial) -> Self {
        LexLayer {
            next: Some(u.into_exponents()),
        }
    }
}

impl Iterator for LexLayer {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let cur = self.next.take()?;
        let n = cur.len();
        // successor: move one unit from the rightmost movable slot to the
        // slot after it, collecting everything to its right there
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| cur[i] > 0) {
                let mut succ = cur.clone();
                let tail: u32 = succ[i + 1..].iter().sum();
                succ[i] -= 1;
                for v in succ[i + 1..].iter_mut() {
                    *v = 0;
                }
                succ[i + 1] = tail + 1;
                self.next = Some(succ);
            }
        }
        Some(Monomial::new(cur))
    }
}

/// All monomials of degree `d` in `n` variables, lex-largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    LexLayer::new(n, d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn max_index_examples() {
        assert_eq!(m(&[0, 1, 2]).max_index().unwrap(), 3);
        assert_eq!(m(&[2]).max_index().unwrap(), 1);
        assert_eq!(m(&[1, 0, 0, 1]).max_index().unwrap(), 4);
        assert_eq!(m(&[0, 0]).max_index(), Err(Error::UnitMonomial));
    }

    #[test]
    fn revlex_breaks_ties_on_last_variable() {
        // x1*x3 < x2^2 in degrevlex, but x1*x3 > x2^2 in lex
        let a = m(&[1, 0, 1]);
        let b = m(&[0, 2, 0]);
        assert_eq!(a.revlex_cmp(&b), Ordering::Less);
        assert_eq!(a.lex_cmp(&b), Ordering::Greater);
        assert_eq!(m(&[2, 0]).revlex_cmp(&m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn degree_layer_is_lex_descending() {
        let layer = monomials_of_degree(3, 2);
        assert_eq!(layer.len(), 6);
        assert_eq!(layer[0], m(&[2, 0, 0]));
        assert_eq!(layer[5], m(&[0, 0, 2]));
        for w in layer.windows(2) {
            assert_eq!(w[0].lex_cmp(&w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn layer_sizes_are_binomial() {
        for n in 1..5 {
            for d in 0..6 {
                let layer = monomials_of_degree(n, d);
                assert_eq!(
                    layer.len() as u128,
                    crate::binomial::binomial((n as i64) - 1 + d as i64, n as i64 - 1)
                );
                assert!(layer.iter().all(|u| u.degree() == d));
                for w in layer.windows(2) {
                    assert_eq!(w[0].lex_cmp(&w[1]), Ordering::Greater);
                }
            }
        }
    }

    #[test]
    fn display_uses_text_grammar() {
        assert_eq!(m(&[2, 1, 0]).to_string(), "x1^2*x2");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }

    fn mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, n).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn lcm_is_a_join(a in mono(4), b in mono(4), c in mono(4)) {
            prop_assert_eq!(a.lcm(&b), b.lcm(&a));
            prop_assert_eq!(a.lcm(&b).lcm(&c), a.lcm(&b.lcm(&c)));
            prop_assert_eq!(a.lcm(&a), a.clone());
            prop_assert!(a.divides(&a.lcm(&b)));
            prop_assert!(b.divides(&a.lcm(&b)));
            prop_assert!(a.gcd(&b).divides(&a));
        }

        #[test]
        fn orders_are_total_and_multiplicative(a in mono(3), b in mono(3), c in mono(3)) {
            for ord in [MonomialOrder::Lex, MonomialOrder::DegLex, MonomialOrder::DegRevLex] {
                let ab = ord.cmp(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                let ac = a.checked_mul(&c).unwrap();
                let bc = b.checked_mul(&c).unwrap();
                prop_assert_eq!(ord.cmp(&ac, &bc), ab);
            }
        }
    }
}
