//! Structured checks of each statement on a single ideal.
//!
//! A verdict records its hypotheses and the conditions it evaluated. When a
//! hypothesis fails the statement is vacuous and both readings hold. The
//! literal reading takes the statement word for word; the restricted
//! reading follows the scope its proof actually covers. They differ in two
//! places: condition (b) of thm-1.5 (on `G(I)` versus `G(Gin(I))`) and part
//! (a) of thm-2.2 (whether `g = 1` is included).

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::betti::{multigraded_betti, BettiTable};
use crate::binomial::binom_u64;
use crate::error::{Error, Result};
use crate::format::IdealJson;
use crate::gin::{gin_revlex, same_graded_betti, GinConfig, GinResult};
use crate::hilbert::{is_gotzmann, lexify, lexsegment_class, LexClass};
use crate::ideal::{Limits, MonomialIdeal};
use crate::invariants::{brun_romer_report, grade};
use crate::linalg::Field;
use crate::monomial::Monomial;
use crate::taylor::{is_taylor_minimal, taylor_bound_report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Thm15,
    Thm17,
    Thm22,
    Cor23,
    Lem21,
    Rem16,
    Lem12,
    Lem14,
}

impl Statement {
    pub const ALL: [Statement; 8] = [
        Statement::Thm15,
        Statement::Thm17,
        Statement::Thm22,
        Statement::Cor23,
        Statement::Lem21,
        Statement::Rem16,
        Statement::Lem12,
        Statement::Lem14,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::Thm15 => "thm-1.5",
            Statement::Thm17 => "thm-1.7",
            Statement::Thm22 => "thm-2.2",
            Statement::Cor23 => "cor-2.3",
            Statement::Lem21 => "lem-2.1",
            Statement::Rem16 => "rem-1.6",
            Statement::Lem12 => "lem-1.2",
            Statement::Lem14 => "lem-1.4",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statement::ALL
            .into_iter()
            .find(|st| st.id() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown statement {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub statement: &'static str,
    pub hypotheses: BTreeMap<String, bool>,
    pub conditions: BTreeMap<String, bool>,
    pub literal: bool,
    pub restricted: bool,
    pub witness: Option<Value>,
}

impl Verdict {
    fn new(statement: Statement) -> Self {
        Verdict {
            statement: statement.id(),
            hypotheses: BTreeMap::new(),
            conditions: BTreeMap::new(),
            literal: true,
            restricted: true,
            witness: None,
        }
    }

    fn hyp(&mut self, name: &str, v: bool) -> bool {
        self.hypotheses.insert(name.to_string(), v);
        v
    }

    fn cond(&mut self, name: &str, v: bool) -> bool {
        self.conditions.insert(name.to_string(), v);
        v
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.values().all(|&v| v)
    }

    /// Literal and restricted readings disagree.
    pub fn diverges(&self) -> bool {
        self.literal != self.restricted
    }
}

/// Shared settings for verdict evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerdictContext {
    pub gin: GinConfig,
    pub limits: Limits,
    /// Take `Gin(I) = I` for strongly stable `I` instead of sampling
    /// coordinate changes. In characteristic 0 a generic matrix factors
    /// as lower unipotent times upper triangular, and a Borel-fixed ideal
    /// has every such change act trivially on its revlex initial ideal.
    pub trust_borel_fixed: bool,
}

impl Default for VerdictContext {
    fn default() -> Self {
        VerdictContext {
            gin: GinConfig::default(),
            limits: Limits::default(),
            trust_borel_fixed: false,
        }
    }
}

/// Lazily computed invariants of one ideal, shared across verdicts.
pub struct Analysis<'a> {
    ideal: &'a MonomialIdeal,
    ctx: VerdictContext,
    betti: OnceCell<Result<BettiTable>>,
    gin: OnceCell<Result<GinResult>>,
    cl: OnceCell<Result<bool>>,
    taylor_minimal: OnceCell<Result<bool>>,
    gotzmann: OnceCell<Result<bool>>,
}

impl<'a> Analysis<'a> {
    pub fn new(ideal: &'a MonomialIdeal, ctx: VerdictContext) -> Self {
        Analysis {
            ideal,
            ctx,
            betti: OnceCell::new(),
            gin: OnceCell::new(),
            cl: OnceCell::new(),
            taylor_minimal: OnceCell::new(),
            gotzmann: OnceCell::new(),
        }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        self.ideal
    }

    pub fn betti(&self) -> Result<&BettiTable> {
        self.betti
            .get_or_init(|| {
                let field = Field::from_characteristic(self.ctx.gin.field_char)?;
                multigraded_betti(self.ideal, field, &self.ctx.limits)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn gin(&self) -> Result<&GinResult> {
        self.gin
            .get_or_init(|| {
                if self.ctx.trust_borel_fixed && self.ideal.is_strongly_stable() {
                    Ok(GinResult {
                        gin: self.ideal.clone(),
                        trials: 0,
                        agreement: true,
                        borel_fixed: true,
                        hilbert_match: true,
                        seed: self.ctx.gin.seed,
                        trial_gins: Vec::new(),
                    })
                } else {
                    gin_revlex(self.ideal, &self.ctx.gin, &self.ctx.limits)
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The Gin result if some verdict already needed it.
    pub fn computed_gin(&self) -> Option<&GinResult> {
        self.gin.get().and_then(|r| r.as_ref().ok())
    }

    /// The confident Gin, or `GinNotConfident`.
    pub fn confident_gin(&self) -> Result<&MonomialIdeal> {
        let g = self.gin()?;
        if g.confident() {
            Ok(&g.gin)
        } else {
            Err(Error::GinNotConfident(g.diagnosis()))
        }
    }

    pub fn componentwise_linear(&self) -> Result<bool> {
        self.cl
            .get_or_init(|| {
                let gin = self.confident_gin()?;
                if gin == self.ideal {
                    return Ok(true);
                }
                same_graded_betti(self.ideal, gin, &self.ctx.limits)
            })
            .clone()
    }

    pub fn taylor_minimal(&self) -> Result<bool> {
        self.taylor_minimal
            .get_or_init(|| is_taylor_minimal(self.ideal, &self.ctx.limits))
            .clone()
    }

    pub fn gotzmann(&self) -> Result<bool> {
        self.gotzmann
            .get_or_init(|| is_gotzmann(self.ideal, &self.ctx.limits))
            .clone()
    }

    pub fn verdict(&self, statement: Statement) -> Result<Verdict> {
        match statement {
            Statement::Thm15 => verdict_minimal_taylor(self),
            Statement::Thm17 => verdict_generalization(self),
            Statement::Thm22 => verdict_lower_bound(self),
            Statement::Cor23 => verdict_corollary_g(self),
            Statement::Lem21 => verdict_lemma_less(self),
            Statement::Rem16 => verdict_bounds(self),
            Statement::Lem12 => verdict_gin_gotzmann(self),
            Statement::Lem14 => verdict_stable_gotzmann(self),
        }
    }
}

fn ideal_json(i: &MonomialIdeal) -> Value {
    serde_json::to_value(IdealJson::from(i)).expect("ideal JSON")
}

fn max_m_equals_s(i: &MonomialIdeal) -> bool {
    i.max_m() == i.num_gens()
}

/// Minimal Taylor resolution versus `max m(u) = |G|` versus Gotzmann with
/// `|G| <= n`, for componentwise linear `I`.
pub fn verdict_minimal_taylor(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Thm15);
    let cl = v.hyp("componentwise_linear", an.componentwise_linear()?);
    let gin = an.confident_gin()?;
    let a = v.cond("a", an.taylor_minimal()?);
    let b = v.cond("b", max_m_equals_s(i));
    let b_gin = v.cond("b_on_gin", max_m_equals_s(gin));
    let few = i.num_gens() <= i.n();
    let c = v.cond("c", few && an.gotzmann()?);
    if cl {
        v.restricted = a == c && c == b_gin;
        v.literal = v.restricted && a == b;
    }
    if !v.literal || !v.restricted {
        v.witness = Some(json!({
            "ideal": ideal_json(i),
            "gin": ideal_json(gin),
            "max_m": i.max_m(),
            "max_m_gin": gin.max_m(),
            "s": i.num_gens(),
            "n": i.n(),
        }));
    }
    Ok(v)
}

/// One Taylor equality for `Gin(I)` at some `1 <= i < s` forces Gotzmann
/// and equality everywhere.
pub fn verdict_generalization(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Thm17);
    let cl = v.hyp("componentwise_linear", an.componentwise_linear()?);
    let gin = an.confident_gin()?;
    let s = gin.num_gens();
    let gin_betti = crate::ek::ek_total_betti(gin)?;
    let beta = |t: &[u64], k: usize| t.get(k).copied().unwrap_or(0);
    let hits: Vec<usize> = (1..s)
        .filter(|&k| beta(&gin_betti, k) == binom_u64(s as i64, k as i64 + 1))
        .collect();
    let hyp = v.hyp("gin_reaches_taylor_bound", !hits.is_empty());
    if cl && hyp {
        let mine = &an.betti()?.total;
        let gz = v.cond("gotzmann", an.gotzmann()?);
        let misses: Vec<usize> = (0..s)
            .filter(|&k| beta(mine, k) != binom_u64(s as i64, k as i64 + 1))
            .collect();
        let eq = v.cond("all_taylor_equalities", misses.is_empty());
        v.literal = gz && eq;
        v.restricted = v.literal;
        if !v.literal {
            v.witness = Some(json!({
                "ideal": ideal_json(i),
                "gin_equalities": hits,
                "unequal_indices": misses,
                "betti": mine,
            }));
        }
    }
    Ok(v)
}

/// If `β_i(I) = C(p, i+1)` then (a) `i >= g` and (b) equality for all
/// `j >= i`, for componentwise linear `I ⊂ m²`.
pub fn verdict_lower_bound(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Thm22);
    let m2 = v.hyp("in_m_squared", i.in_m_squared());
    // non-confident Gin is recorded rather than raised here
    let (confident, cl) = match an.componentwise_linear() {
        Ok(cl) => (true, cl),
        Err(Error::GinNotConfident(_)) => (false, false),
        Err(e) => return Err(e),
    };
    v.hyp("gin_confident", confident);
    v.hyp("componentwise_linear", cl);
    let beta = &an.betti()?.total;
    let p = beta.len();
    let g = grade(i);
    let eq: Vec<usize> = (0..p)
        .filter(|&k| beta[k] == binom_u64(p as i64, k as i64 + 1))
        .collect();
    let a_literal = eq.iter().all(|&k| k >= g);
    let a_restricted = g < 2 || a_literal;
    let b = eq
        .iter()
        .all(|&k| (k..p).all(|j| beta[j] == binom_u64(p as i64, j as i64 + 1)));
    v.cond("a_literal", a_literal);
    v.cond("a_restricted", a_restricted);
    v.cond("b", b);
    if m2 && cl {
        v.literal = a_literal && b;
        v.restricted = a_restricted && b;
    }
    if !eq.is_empty() && !(a_literal && b) {
        v.witness = Some(json!({
            "ideal": ideal_json(i),
            "grade": g,
            "p": p,
            "betti": beta,
            "equality_indices": eq,
        }));
    }
    Ok(v)
}

/// Componentwise linear `I ⊂ m²` with minimal Taylor resolution has grade
/// 1; universal lexsegments of that kind are divisible by `x1`.
pub fn verdict_corollary_g(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Cor23);
    let m2 = v.hyp("in_m_squared", i.in_m_squared());
    let tm = v.hyp("taylor_minimal", an.taylor_minimal()?);
    if !(m2 && tm) {
        return Ok(v);
    }
    let cl = v.hyp("componentwise_linear", an.componentwise_linear()?);
    if !cl {
        return Ok(v);
    }
    let g = grade(i);
    let g1 = v.cond("grade_one", g == 1);
    let ulex = v.cond("universal_lexsegment", lexsegment_class(i) == LexClass::UniversalLexsegment);
    let x1 = Monomial::var(i.n(), 1);
    let div = v.cond("x1_divides_generators", i.gens().iter().all(|u| x1.divides(u)));
    v.literal = g1 && (!ulex || div);
    v.restricted = v.literal;
    if !v.literal {
        v.witness = Some(json!({ "ideal": ideal_json(i), "grade": g }));
    }
    Ok(v)
}

/// A stable complete intersection inside `m²` is `(x1^d)`, `d >= 2`.
pub fn verdict_lemma_less(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Lem21);
    let stable = v.hyp("stable", i.is_stable());
    let m2 = v.hyp("in_m_squared", i.in_m_squared());
    let ci = v.cond("complete_intersection", i.is_complete_intersection());
    if stable && m2 && ci {
        let g = &i.gens()[0];
        let pure = i.num_gens() == 1 && g.exp(1) == g.degree() && g.degree() >= 2;
        v.cond("pure_power_of_x1", pure);
        v.literal = pure;
        v.restricted = pure;
        if !pure {
            v.witness = Some(json!({ "ideal": ideal_json(i) }));
        }
    }
    Ok(v)
}

/// Taylor upper bound with its equality case and prefix property, and the
/// Brun–Römer lower bound. These hold for every monomial ideal.
pub fn verdict_bounds(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Rem16);
    let beta = &an.betti()?.total;
    let report = taylor_bound_report(i, beta, &an.ctx.limits)?;
    let br = brun_romer_report(beta);
    let checks = [
        v.cond("upper_bound", report.upper_bound_holds),
        v.cond("prefix_property", report.prefix_property_holds),
        v.cond("top_nonzero_implies_minimal", report.top_nonzero_implies_minimal),
        v.cond("equality_iff_minimal", report.equality_iff_minimal),
        v.cond("brun_romer", br.holds),
        v.cond("grade_at_most_projdim", grade(i) <= beta.len()),
    ];
    v.literal = checks.iter().all(|&c| c);
    v.restricted = v.literal;
    if !v.literal {
        v.witness = Some(json!({
            "ideal": ideal_json(i),
            "taylor": report,
            "brun_romer": br,
        }));
    }
    Ok(v)
}

/// For componentwise linear `I`: Gotzmann iff `Gin(I)` is, and
/// `I^lex = Gin(I)^lex`.
pub fn verdict_gin_gotzmann(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Lem12);
    let cl = v.hyp("componentwise_linear", an.componentwise_linear()?);
    if !cl {
        return Ok(v);
    }
    let gin = an.confident_gin()?;
    let limits = an.ctx.limits;
    let same_lex = v.cond("same_lexification", lexify(i, &limits)? == lexify(gin, &limits)?);
    let equiv = v.cond("gotzmann_iff_gin_gotzmann", an.gotzmann()? == is_gotzmann(gin, &limits)?);
    v.literal = same_lex && equiv;
    v.restricted = v.literal;
    if !v.literal {
        v.witness = Some(json!({ "ideal": ideal_json(i), "gin": ideal_json(gin) }));
    }
    Ok(v)
}

/// Stable `I` with `max m(u) = |G(I)|` is Gotzmann with `|G(I)| <= n`.
pub fn verdict_stable_gotzmann(an: &Analysis) -> Result<Verdict> {
    let i = an.ideal();
    let mut v = Verdict::new(Statement::Lem14);
    let stable = v.hyp("stable", i.is_stable());
    let hyp = v.hyp("max_m_equals_s", max_m_equals_s(i));
    if stable && hyp {
        let few = v.cond("s_at_most_n", i.num_gens() <= i.n());
        let gz = v.cond("gotzmann", an.gotzmann()?);
        v.literal = few && gz;
        v.restricted = v.literal;
        if !v.literal {
            v.witness = Some(json!({ "ideal": ideal_json(i) }));
        }
    }
    Ok(v)
}

/// Evaluate `statements` on one ideal, sharing intermediate results.
pub fn verdicts(ideal: &MonomialIdeal, statements: &[Statement], ctx: VerdictContext) -> Result<Vec<Verdict>> {
    let an = Analysis::new(ideal, ctx);
    statements.iter().map(|&s| an.verdict(s)).collect()
}

pub fn verdict(ideal: &MonomialIdeal, statement: Statement, ctx: VerdictContext) -> Result<Verdict> {
    Analysis::new(ideal, ctx).verdict(statement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ideal;

    fn run(text: &str, s: Statement) -> Verdict {
        verdict(&parse_ideal(text).unwrap(), s, VerdictContext::default()).unwrap()
    }

    #[test]
    fn statement_ids_round_trip() {
        for s in Statement::ALL {
            assert_eq!(s.id().parse::<Statement>().unwrap(), s);
        }
        assert!("thm-9.9".parse::<Statement>().is_err());
    }

    #[test]
    fn minimal_taylor_examples() {
        let v = run("n=3; x1, x2^2, x2*x3^2", Statement::Thm15);
        assert!(v.conditions["a"] && v.conditions["b"] && v.conditions["c"]);
        assert!(v.literal && v.restricted);

        let v = run("n=2; x1*x2", Statement::Thm15);
        assert!(v.conditions["a"] && !v.conditions["b"] && v.conditions["b_on_gin"] && v.conditions["c"]);
        assert!(!v.literal && v.restricted);
        assert!(v.witness.is_some());

        let v = run("n=2; x1^2, x1*x2, x2^2", Statement::Thm15);
        assert!(!v.conditions["a"] && !v.conditions["b"] && !v.conditions["c"]);
        assert!(v.literal && v.restricted);
    }

    #[test]
    fn out_of_hypothesis_is_vacuous() {
        let v = run("n=2; x1^2, x2^2", Statement::Thm15);
        assert!(!v.hypotheses["componentwise_linear"]);
        assert!(v.literal && v.restricted);
    }

    #[test]
    fn generalization_examples() {
        let v = run("n=3; x1, x2^2, x2*x3^2", Statement::Thm17);
        assert!(v.hypotheses["gin_reaches_taylor_bound"]);
        assert!(v.conditions["gotzmann"] && v.conditions["all_taylor_equalities"]);
        let v = run("n=2; x1*x2", Statement::Thm17);
        assert!(!v.hypotheses["gin_reaches_taylor_bound"]);
        assert!(v.conditions.is_empty());
    }

    #[test]
    fn lower_bound_examples() {
        let v = run("n=2; x1^2, x1*x2", Statement::Thm22);
        assert!(!v.conditions["a_literal"] && v.conditions["a_restricted"] && v.conditions["b"]);
        assert!(!v.literal && v.restricted);
        let w = v.witness.unwrap();
        assert_eq!(w["grade"], 1);
        assert_eq!(w["equality_indices"], json!([0, 1]));

        let v = run("n=2; x1^2, x1*x2, x2^2", Statement::Thm22);
        assert!(v.literal && v.restricted && v.witness.is_none());

        let v = run("n=3; x1^2, x1*x2, x1*x3, x2^2, x2*x3", Statement::Thm22);
        assert!(v.restricted);
    }

    #[test]
    fn corollary_and_lemma_examples() {
        let v = run("n=2; x1^2, x1*x2", Statement::Cor23);
        assert!(v.conditions["grade_one"] && v.conditions["universal_lexsegment"] && v.conditions["x1_divides_generators"]);
        let v = run("n=2; x1, x2^2", Statement::Cor23);
        assert!(!v.hypotheses["in_m_squared"] && v.conditions.is_empty());

        let v = run("n=2; x1^3", Statement::Lem21);
        assert!(v.conditions["pure_power_of_x1"]);
        let v = run("n=2; x1^2, x2^2", Statement::Lem21);
        assert!(!v.hypotheses["stable"] && v.restricted);
        let v = run("n=2; x1^2, x1*x2, x2^2", Statement::Lem21);
        assert!(!v.conditions["complete_intersection"] && v.literal);
    }

    #[test]
    fn bound_verdict_holds_on_remark_style_ideal() {
        let v = run("n=8; x1*x5, x2*x6, x3*x7, x4*x8, x5*x6", Statement::Rem16);
        assert!(v.literal, "{v:?}");
    }

    #[test]
    fn json_shape() {
        let v = run("n=2; x1*x2", Statement::Thm15);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with(r#"{"statement":"thm-1.5","hypotheses":{"componentwise_linear":true},"conditions":{"a":true,"b":false,"b_on_gin":true,"c":true},"literal":false,"restricted":true,"witness":{"#));
        let v = run("n=2; x1^3", Statement::Lem21);
        assert!(serde_json::to_string(&v).unwrap().ends_with(r#""witness":null}"#));
    }
}
