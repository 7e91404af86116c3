//! Generic initial ideals in degree reverse lexicographic order, over `Q`.
//!
//! Genericity cannot be certified, so a result is only called confident
//! when independent random coordinate changes agree, the common answer is
//! strongly stable, and it has the same Hilbert series as the input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::multigraded_betti;
use crate::ek::ek_graded_betti;
use crate::error::{Error, Result};
use crate::format::IdealJson;
use crate::hilbert::HilbertData;
use crate::ideal::{Limits, MonomialIdeal};
use crate::linalg::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{initial_ideal, Polynomial};

pub const DEFAULT_TRIALS: usize = 3;
pub const DEFAULT_ENTRY_BOUND: i64 = 1000;
pub const DEFAULT_RESAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GinConfig {
    pub trials: usize,
    pub seed: u64,
    /// Matrix entries are uniform in `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
    /// Singular draws are resampled at most this many times per trial.
    pub max_resamples: usize,
    pub field_char: u64,
}

impl Default for GinConfig {
    fn default() -> Self {
        GinConfig {
            trials: DEFAULT_TRIALS,
            seed: 0,
            entry_bound: DEFAULT_ENTRY_BOUND,
            max_resamples: DEFAULT_RESAMPLES,
            field_char: 0,
        }
    }
}

impl GinConfig {
    pub fn with_seed(seed: u64) -> Self {
        GinConfig {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinResult {
    pub gin: MonomialIdeal,
    pub trials: usize,
    pub agreement: bool,
    pub borel_fixed: bool,
    pub hilbert_match: bool,
    pub seed: u64,
    /// One initial ideal per trial, in trial order.
    pub trial_gins: Vec<MonomialIdeal>,
}

impl GinResult {
    pub fn confident(&self) -> bool {
        self.agreement && self.borel_fixed && self.hilbert_match
    }

    /// Short diagnostic for non-confident results.
    pub fn diagnosis(&self) -> String {
        let mut why = Vec::new();
        if !self.agreement {
            why.push("trials disagree");
        }
        if !self.borel_fixed {
            why.push("result is not strongly stable");
        }
        if !self.hilbert_match {
            why.push("Hilbert series changed");
        }
        if why.is_empty() {
            "confident".into()
        } else {
            why.join(", ")
        }
    }

    pub fn to_json(&self) -> GinJson {
        GinJson {
            gin: IdealJson::from(&self.gin),
            trials: self.trials,
            agreement: self.agreement,
            borel_fixed: self.borel_fixed,
            hilbert_match: self.hilbert_match,
            confident: self.confident(),
            seed: self.seed,
            trial_gins: (!self.agreement).then(|| self.trial_gins.iter().map(IdealJson::from).collect()),
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct GinJson {
    pub gin: IdealJson,
    pub trials: usize,
    pub agreement: bool,
    pub borel_fixed: bool,
    pub hilbert_match: bool,
    pub confident: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial_gins: Option<Vec<IdealJson>>,
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// A random invertible integer matrix for one trial.
pub fn random_change(n: usize, rng: &mut ChaCha8Rng, config: &GinConfig) -> Result<Vec<Vec<i64>>> {
    let b = config.entry_bound;
    for _ in 0..=config.max_resamples {
        let g: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-b..=b)).collect())
            .collect();
        if !determinant(&g).is_zero() {
            return Ok(g);
        }
    }
    Err(Error::SingularChange {
        attempts: config.max_resamples + 1,
    })
}

/// Apply `x_i ↦ Σ_j g[i][j] x_j` to every generator.
pub fn change_coordinates(gens: &[Polynomial], g: &[Vec<i64>], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let n = g.len();
    let images: Vec<Polynomial> = g
        .iter()
        .map(|row| {
            Polynomial::new(
                n,
                order,
                row.iter()
                    .enumerate()
                    .map(|(j, &c)| (Monomial::var(n, j + 1), BigRational::from_integer(c.into()))),
            )
        })
        .collect::<Result<_>>()?;
    gens.iter().map(|f| f.substitute(&images)).collect()
}

fn require_char_zero(config: &GinConfig) -> Result<()> {
    if config.field_char != 0 {
        return Err(Error::Unsupported(format!(
            "generic initial ideals are only computed in characteristic 0, not {}",
            config.field_char
        )));
    }
    Ok(())
}

fn run_trials(gens: &[Polynomial], config: &GinConfig) -> Result<Vec<MonomialIdeal>> {
    let n = gens.first().ok_or(Error::EmptyGenerators)?.n();
    let order = MonomialOrder::DegRevLex;
    (0..config.trials.max(1))
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(t as u64));
            let g = random_change(n, &mut rng, config)?;
            initial_ideal(&change_coordinates(gens, &g, order)?, order)
        })
        .collect()
}

fn assemble(trial_gins: Vec<MonomialIdeal>, reference: &HilbertData, limits: &Limits, config: &GinConfig) -> Result<GinResult> {
    let gin = trial_gins[0].clone();
    let agreement = trial_gins.iter().all(|j| *j == gin);
    let borel_fixed = gin.is_strongly_stable();
    let hilbert_match = match HilbertData::new(&gin, limits) {
        Ok(h) => h.numerator() == reference.numerator(),
        Err(Error::GeneratorCap { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(GinResult {
        gin,
        trials: trial_gins.len(),
        agreement,
        borel_fixed,
        hilbert_match,
        seed: config.seed,
        trial_gins,
    })
}

/// `Gin(I)` for a monomial ideal.
pub fn gin_revlex(ideal: &MonomialIdeal, config: &GinConfig, limits: &Limits) -> Result<GinResult> {
    require_char_zero(config)?;
    let reference = HilbertData::new(ideal, limits)?;
    let gens: Vec<Polynomial> = ideal
        .gens()
        .iter()
        .map(|u| Polynomial::from_monomial(u.clone(), MonomialOrder::DegRevLex))
        .collect();
    assemble(run_trials(&gens, config)?, &reference, limits, config)
}

/// `Gin(I)` for an ideal given by homogeneous polynomial generators.
pub fn gin_revlex_polynomials(gens: &[Polynomial], config: &GinConfig, limits: &Limits) -> Result<GinResult> {
    require_char_zero(config)?;
    if gens.iter().any(|f| !f.is_homogeneous()) {
        return Err(Error::Unsupported("generic initial ideals need homogeneous generators".into()));
    }
    // any initial ideal carries the Hilbert series of I
    let at_identity = initial_ideal(gens, MonomialOrder::DegRevLex)?;
    let reference = HilbertData::new(&at_identity, limits)?;
    assemble(run_trials(gens, config)?, &reference, limits, config)
}

/// `β_{ij}(I) = β_{ij}(Gin(I))` for all `i, j`.
///
/// A non-confident Gin is an error rather than a guess.
pub fn is_componentwise_linear(ideal: &MonomialIdeal, config: &GinConfig, limits: &Limits) -> Result<bool> {
    let gin = gin_revlex(ideal, config, limits)?;
    if !gin.confident() {
        return Err(Error::GinNotConfident(gin.diagnosis()));
    }
    same_graded_betti(ideal, &gin.gin, limits)
}

/// Compare the graded table of `ideal` (Taylor homology) against that of a
/// strongly stable `gin` (Eliahou–Kervaire).
pub fn same_graded_betti(ideal: &MonomialIdeal, gin: &MonomialIdeal, limits: &Limits) -> Result<bool> {
    if ideal.num_gens() != gin.num_gens() {
        return Ok(false);
    }
    let mine = multigraded_betti(ideal, Field::Rational, limits)?;
    let theirs = ek_graded_betti(gin)?;
    Ok(mine.graded == theirs.graded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ideal;

    fn ideal(text: &str) -> MonomialIdeal {
        parse_ideal(text).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
        assert_eq!(determinant(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]), BigInt::from(-3));
    }

    #[test]
    fn gin_of_two_squares() {
        for seed in 0..3 {
            let r = gin_revlex(&ideal("n=2; x1^2, x2^2"), &GinConfig::with_seed(seed), &lim()).unwrap();
            assert!(r.confident(), "{}", r.diagnosis());
            assert_eq!(r.gin, ideal("n=2; x1^2, x1*x2, x2^3"));
        }
    }

    #[test]
    fn gin_of_principal_and_borel_ideals() {
        let r = gin_revlex(&ideal("n=2; x1*x2"), &GinConfig::default(), &lim()).unwrap();
        assert!(r.confident());
        assert_eq!(r.gin, ideal("n=2; x1^2"));
        let i = ideal("n=2; x1^2, x1*x2, x2^2");
        let r = gin_revlex(&i, &GinConfig::default(), &lim()).unwrap();
        assert!(r.confident());
        assert_eq!(r.gin, i);
    }

    #[test]
    fn componentwise_linear_examples() {
        let c = GinConfig::default();
        assert!(is_componentwise_linear(&ideal("n=2; x1*x2"), &c, &lim()).unwrap());
        assert!(!is_componentwise_linear(&ideal("n=2; x1^2, x2^2"), &c, &lim()).unwrap());
        assert!(is_componentwise_linear(&ideal("n=3; x1^2, x1*x2, x1*x3, x2^2, x2*x3"), &c, &lim()).unwrap());
    }

    #[test]
    fn positive_characteristic_is_rejected() {
        let c = GinConfig {
            field_char: 3,
            ..GinConfig::default()
        };
        assert!(matches!(gin_revlex(&ideal("n=2; x1*x2"), &c, &lim()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn singular_draws_are_bounded() {
        let c = GinConfig {
            entry_bound: 0,
            max_resamples: 2,
            ..GinConfig::default()
        };
        assert_eq!(
            gin_revlex(&ideal("n=2; x1*x2"), &c, &lim()),
            Err(Error::SingularChange { attempts: 3 })
        );
    }

    #[test]
    fn polynomial_input() {
        // (x1^2 + x2^2, x1*x2) has the Gin of a complete intersection of quadrics
        let f = Polynomial::from_integer_terms(2, MonomialOrder::DegRevLex, &[(vec![2, 0], 1), (vec![0, 2], 1)]).unwrap();
        let g = Polynomial::from_integer_terms(2, MonomialOrder::DegRevLex, &[(vec![1, 1], 1)]).unwrap();
        let r = gin_revlex_polynomials(&[f, g], &GinConfig::default(), &lim()).unwrap();
        assert!(r.confident());
        assert_eq!(r.gin, ideal("n=2; x1^2, x1*x2, x2^3"));
    }

    #[test]
    fn json_layout() {
        let r = gin_revlex(&ideal("n=2; x1*x2"), &GinConfig::with_seed(7), &lim()).unwrap();
        let text = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"gin":{"n":2,"gens":[[2,0]]},"trials":3,"agreement":true,"borel_fixed":true,"hilbert_match":true,"confident":true,"seed":7}"#
        );
    }
}
