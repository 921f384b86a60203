//! KMS and ground states of the crossed products: quasi-invariant
//! measures, traces, exact state evaluation and the defining identities.

mod trace;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::crossed::CPElement;
use crate::error::{Error, Result};
use crate::groups::{fixed_structure, stabilizer_transposition, GammaTable, Table, VnTable};
use crate::scalar::{parse_rational, pow, rat, Rational, Scalar};
use crate::words::{check_alphabet, BasicSet, BoundaryPoint, SimpleFunction, Space, Word};

pub use trace::{check_trace_property, thoma_eval, trace_eval, StabilizerTrace, TraceSpec};

/// Default truncation depth for black-box stabilizer traces.
pub const DEFAULT_DEPTH: usize = 16;

/// A KMS or ground state of one of the crossed products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateSpec {
    /// The unique KMS state of `C(∂O_n) ⋊ V_n`, at `t = 1/n`.
    VnKms { n: u8 },
    /// `β > log n`: an atomic measure on the finite words and a trace on
    /// the stabilizer of the root. `t = None` keeps `t` symbolic.
    GammaSupercritical {
        n: u8,
        trace: TraceSpec,
        t: Option<Rational>,
        depth: usize,
    },
    /// `β = log n`: the boundary measure and a trace on the finitary
    /// permutations.
    GammaCritical { n: u8, trace: TraceSpec },
    /// `β = ∞`: evaluation at the root and a state on its stabilizer.
    GammaGround { n: u8, state: TraceSpec },
}

impl StateSpec {
    pub fn vn_kms(n: u8) -> Result<Self> {
        check_alphabet(n)?;
        Ok(StateSpec::VnKms { n })
    }

    /// Rejects `t` outside `(0, 1/n)`: at `t = 1/n` the point masses
    /// `(1 − nt) t^{|μ|}` vanish and the measure is no longer normalized.
    pub fn supercritical(n: u8, trace: TraceSpec, t: Option<Rational>, depth: usize) -> Result<Self> {
        check_alphabet(n)?;
        if let Some(t) = &t {
            check_supercritical_t(n, t)?;
        }
        Ok(StateSpec::GammaSupercritical { n, trace, t, depth })
    }

    pub fn critical(n: u8, trace: TraceSpec) -> Result<Self> {
        check_alphabet(n)?;
        Ok(StateSpec::GammaCritical { n, trace })
    }

    pub fn ground(n: u8, state: TraceSpec) -> Result<Self> {
        check_alphabet(n)?;
        Ok(StateSpec::GammaGround { n, state })
    }

    pub fn n(&self) -> u8 {
        match self {
            StateSpec::VnKms { n }
            | StateSpec::GammaSupercritical { n, .. }
            | StateSpec::GammaCritical { n, .. }
            | StateSpec::GammaGround { n, .. } => *n,
        }
    }

    /// The value substituted for `t`, if any.
    pub fn fixed_t(&self) -> Option<Rational> {
        match self {
            StateSpec::VnKms { n } | StateSpec::GammaCritical { n, .. } => Some(rat(1, *n as i64)),
            StateSpec::GammaSupercritical { t, .. } => t.clone(),
            StateSpec::GammaGround { .. } => None,
        }
    }

    fn validate(&self) -> Result<()> {
        check_alphabet(self.n())?;
        if let StateSpec::GammaSupercritical { n, t: Some(t), .. } = self {
            check_supercritical_t(*n, t)?;
        }
        Ok(())
    }

    /// `vn-kms:n=2`, `gamma-sup:n=2,t=1/3,trace=canonical,L=16`,
    /// `gamma-crit:n=2,trace=sign`, `gamma-ground:n=2,state=canonical`.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut n = None;
        let mut trace = None;
        let mut t = None;
        let mut depth = DEFAULT_DEPTH;
        for field in split_top_level(rest) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| spec_err(s, "'key=value' fields"))?;
            let value = value.trim();
            match key.trim() {
                "n" => n = Some(value.parse::<u8>().map_err(|_| spec_err(s, "an alphabet size"))?),
                "trace" | "state" => trace = Some(TraceSpec::parse(value)?),
                "t" => {
                    t = match value {
                        "t" | "symbolic" => None,
                        v => Some(parse_rational(v)?),
                    }
                }
                "L" => depth = value.parse().map_err(|_| spec_err(s, "a truncation depth"))?,
                _ => return Err(spec_err(s, "one of n, t, trace, state, L")),
            }
        }
        let n = n.ok_or_else(|| spec_err(s, "'n=' field"))?;
        let trace = trace.unwrap_or(TraceSpec::Canonical);
        match kind {
            "vn-kms" => Self::vn_kms(n),
            "gamma-sup" => Self::supercritical(n, trace, t, depth),
            "gamma-crit" => Self::critical(n, trace),
            "gamma-ground" => Self::ground(n, trace),
            _ => Err(spec_err(s, "one of vn-kms, gamma-sup, gamma-crit, gamma-ground")),
        }
    }
}

fn check_supercritical_t(n: u8, t: &Rational) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::domain(format!("supercritical states need t > 0, got {t}")));
    }
    if n_rat(n) * t >= Rational::one() {
        return Err(Error::domain(format!(
            "supercritical states need t < 1/{n}: at t = {t} the point masses (1 - {n}t)t^|μ| \
             do not sum to 1 (Kraft normalization fails)"
        )));
    }
    Ok(())
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.retain(|f| !f.trim().is_empty());
    out
}

fn spec_err(found: &str, expected: &str) -> Error {
    Error::Parse {
        pos: 0,
        expected: expected.to_string(),
        found: format!("'{found}'"),
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::VnKms { n } => write!(f, "vn-kms:n={n}"),
            StateSpec::GammaSupercritical { n, trace, t, depth } => {
                let t = t.as_ref().map_or("t".to_string(), ToString::to_string);
                write!(f, "gamma-sup:n={n},t={t},trace={trace},L={depth}")
            }
            StateSpec::GammaCritical { n, trace } => write!(f, "gamma-crit:n={n},trace={trace}"),
            StateSpec::GammaGround { n, state } => write!(f, "gamma-ground:n={n},state={state}"),
        }
    }
}

/// A state value with a rigorous truncation bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalResult {
    #[serde(serialize_with = "as_string")]
    pub value: Scalar,
    #[serde(serialize_with = "as_string")]
    pub error_bound: Rational,
    pub exact: bool,
}

fn as_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl EvalResult {
    pub fn exact(value: Scalar) -> Self {
        EvalResult {
            value,
            error_bound: Rational::zero(),
            exact: true,
        }
    }

    fn zero() -> Self {
        Self::exact(Scalar::zero())
    }

    fn add(&mut self, other: EvalResult) {
        self.value += &other.value;
        self.error_bound += other.error_bound;
        self.exact = self.error_bound.is_zero();
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain fields serialize")
    }
}

impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} ± {}", self.value, self.error_bound)
        }
    }
}

fn substitute(value: &Scalar, t: &Option<Rational>) -> Result<Scalar> {
    match t {
        Some(t) => value.substitute(t),
        None => Ok(value.clone()),
    }
}

fn n_rat(n: u8) -> Rational {
    Rational::from_integer(n.into())
}

/// `1 − nt` as a Laurent polynomial.
fn point_weight(n: u8) -> Scalar {
    Scalar::one() - Scalar::monomial(n_rat(n), 1)
}

fn boundary_measure(f: &SimpleFunction) -> Result<Scalar> {
    let n = f.n();
    let mut acc = Scalar::zero();
    for (set, c) in f.terms() {
        if let BasicSet::Cyl(w) | BasicSet::CylInf(w) = set {
            acc += &c.scale(&pow(&rat(1, n as i64), w.len() as i32));
        }
    }
    acc.substitute(&rat(1, n as i64))
}

fn atomic_measure(f: &SimpleFunction) -> Scalar {
    let n = f.n();
    let weight = point_weight(n);
    let mut acc = Scalar::zero();
    for (set, c) in f.terms() {
        let k = set.word().len() as i32;
        match set {
            BasicSet::Cyl(_) => acc += &c.shift(k),
            BasicSet::Point(_) => acc += &(&c.shift(k) * &weight),
            BasicSet::CylInf(_) => {}
        }
    }
    acc
}

/// The measure underlying a state, integrated against `f`.
pub fn measure_eval(spec: &StateSpec, f: &SimpleFunction) -> Result<EvalResult> {
    spec.validate()?;
    let want = match spec {
        StateSpec::VnKms { .. } => Space::Boundary,
        _ => Space::Path,
    };
    if f.space() != want || f.n() != spec.n() {
        return Err(Error::mode(format!(
            "{spec} integrates functions on {want:?}/{}, got {:?}/{}",
            spec.n(),
            f.space(),
            f.n()
        )));
    }
    let value = match spec {
        StateSpec::VnKms { .. } | StateSpec::GammaCritical { .. } => boundary_measure(f)?,
        StateSpec::GammaSupercritical { t, .. } => substitute(&atomic_measure(f), t)?,
        StateSpec::GammaGround { .. } => f.eval(&root())?,
    };
    Ok(EvalResult::exact(value))
}

fn root() -> BoundaryPoint {
    BoundaryPoint::finite(Word::empty())
}

/// Groups whose crossed products carry states.
pub trait StateGroup: Table {
    fn eval_term(spec: &StateSpec, f: &SimpleFunction, g: &Self) -> Result<EvalResult>;
}

impl StateGroup for VnTable {
    fn eval_term(spec: &StateSpec, f: &SimpleFunction, g: &Self) -> Result<EvalResult> {
        match spec {
            StateSpec::VnKms { .. } if g.is_identity() => measure_eval(spec, f),
            StateSpec::VnKms { .. } => Ok(EvalResult::zero()),
            _ => Err(Error::mode(format!("{spec} is a state on the Γ_n crossed product"))),
        }
    }
}

impl StateGroup for GammaTable {
    fn eval_term(spec: &StateSpec, f: &SimpleFunction, g: &Self) -> Result<EvalResult> {
        match spec {
            StateSpec::VnKms { .. } => Err(Error::mode(format!("{spec} is a state on the V_n crossed product"))),
            StateSpec::GammaSupercritical { n, trace, t, depth } => {
                supercritical_term(*n, trace, t, *depth, f, g)
            }
            StateSpec::GammaCritical { .. } => {
                if g.kernel_permutation().is_none() {
                    return Ok(EvalResult::zero());
                }
                let m = measure_eval(spec, f)?.value;
                Ok(EvalResult::exact(&m * &trace_eval(critical_trace(spec), g)?))
            }
            StateSpec::GammaGround { state, .. } => {
                let at_root = f.eval(&root())?;
                if at_root.is_zero() || !g.act_word(&Word::empty()).is_empty() {
                    return Ok(EvalResult::zero());
                }
                Ok(EvalResult::exact(&at_root * &StabilizerTrace::eval(state, g)?))
            }
        }
    }
}

fn critical_trace(spec: &StateSpec) -> &TraceSpec {
    match spec {
        StateSpec::GammaCritical { trace, .. } => trace,
        _ => unreachable!("only called for critical states"),
    }
}

/// `ψ(x)`.
pub fn eval_state<G: StateGroup>(spec: &StateSpec, x: &CPElement<G>) -> Result<EvalResult> {
    spec.validate()?;
    if x.n() != spec.n() {
        return Err(Error::mode(format!("{spec} evaluated on an element over {}", x.n())));
    }
    let mut acc = EvalResult::zero();
    for (g, f) in x.terms() {
        acc.add(G::eval_term(spec, f, g)?);
    }
    Ok(acc)
}

/// `ψ(f λ_g) = Σ_{μ fixed by g} (1 − nt) t^{|μ|} f(μ) τ(g_μ^{-1} g g_μ)`.
fn supercritical_term(
    n: u8,
    trace: &dyn StabilizerTrace,
    t: &Option<Rational>,
    depth: usize,
    f: &SimpleFunction,
    g: &GammaTable,
) -> Result<EvalResult> {
    let fixed = fixed_structure(g);
    let weight = point_weight(n);
    let conj = |mu: &Word| -> Result<Scalar> {
        if mu.is_empty() {
            return trace.eval(g);
        }
        let gm = stabilizer_transposition(mu, n)?;
        trace.eval(&gm.compose(g).compose(&gm))
    };
    if trace.conjugation_invariant() {
        let Some(mu0) = fixed.identity_cylinders.first().or(fixed.fixed_singletons.first()) else {
            return Ok(EvalResult::zero());
        };
        let tau = conj(mu0)?;
        if tau.is_zero() {
            return Ok(EvalResult::zero());
        }
        let mut sets: Vec<BasicSet> = fixed.identity_cylinders.iter().cloned().map(BasicSet::Cyl).collect();
        sets.extend(fixed.fixed_singletons.iter().cloned().map(BasicSet::Point));
        let on_fix = f.mul(&SimpleFunction::indicator_of(Space::Path, n, &sets)?)?;
        let value = &atomic_measure(&on_fix) * &tau;
        return Ok(EvalResult::exact(substitute(&value, t)?));
    }
    let mut acc = Scalar::zero();
    for mu in &fixed.fixed_singletons {
        let c = f.eval(&BoundaryPoint::finite(mu.clone()))?;
        if !c.is_zero() {
            acc += &(&(&c.shift(mu.len() as i32) * &weight) * &conj(mu)?);
        }
    }
    if fixed.identity_cylinders.is_empty() {
        return Ok(EvalResult::exact(substitute(&acc, t)?));
    }
    let t = t.as_ref().ok_or_else(|| {
        Error::domain("needs rational t: a black-box trace on an element with identity cylinders is summed numerically")
    })?;
    let mut value = acc.substitute(t)?;
    for eta in &fixed.identity_cylinders {
        for extra in 0..=depth.saturating_sub(eta.len()) {
            for tail in Word::all_of_length(n, extra) {
                let mu = eta.concat(&tail);
                let c = f.eval(&BoundaryPoint::finite(mu.clone()))?;
                if !c.is_zero() {
                    value += &(&(&c.shift(mu.len() as i32) * &weight) * &conj(&mu)?).substitute(t)?;
                }
            }
        }
    }
    let nt = n_rat(n) * t;
    let error_bound = f.sup_norm_at(t)? * pow(&nt, depth as i32 + 1);
    Ok(EvalResult {
        value,
        exact: error_bound.is_zero(),
        error_bound,
    })
}

/// Evaluate a supercritical state whose stabilizer trace is a black box.
/// The trace property is sampled first.
pub fn eval_supercritical_with(
    n: u8,
    trace: &dyn StabilizerTrace,
    t: Option<Rational>,
    depth: usize,
    x: &CPElement<GammaTable>,
) -> Result<EvalResult> {
    if let Some(t) = &t {
        check_supercritical_t(n, t)?;
    }
    if x.n() != n {
        return Err(Error::mode(format!("element over {} for a state over {n}", x.n())));
    }
    check_trace_property(trace, n, 4)?;
    let mut acc = EvalResult::zero();
    for (g, f) in x.terms() {
        acc.add(supercritical_term(n, trace, &t, depth, f, g)?);
    }
    Ok(acc)
}

/// Both sides of `ψ(ab) = ψ(b γ_{iβ}(a))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KmsReport {
    pub holds: bool,
    pub lhs: EvalResult,
    pub rhs: EvalResult,
}

/// `(ab, b γ_{iβ}(a))` with `t` left symbolic.
pub fn kms_products<G: Table>(a: &CPElement<G>, b: &CPElement<G>) -> Result<(CPElement<G>, CPElement<G>)> {
    Ok((a.mul(b)?, b.mul(&a.gauge_scale()?)?))
}

pub fn check_kms_condition<G: StateGroup>(spec: &StateSpec, a: &CPElement<G>, b: &CPElement<G>) -> Result<KmsReport> {
    if let StateSpec::GammaGround { .. } = spec {
        return Err(Error::input("ground states are checked with check_ground_condition"));
    }
    let (ab, b_gamma_a) = kms_products(a, b)?;
    let lhs = eval_state(spec, &ab)?;
    let rhs = eval_state(spec, &b_gamma_a)?;
    let holds = if lhs.exact && rhs.exact {
        lhs.value == rhs.value
    } else {
        let diff = (&lhs.value - &rhs.value)
            .as_constant()
            .ok_or_else(|| Error::domain("truncated values must be rational"))?;
        diff.abs() <= &lhs.error_bound + &rhs.error_bound
    };
    Ok(KmsReport { holds, lhs, rhs })
}

/// The outcome of the ground-state test on a homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundReport {
    pub holds: bool,
    pub degree: Option<i32>,
    #[serde(serialize_with = "as_string")]
    pub value: Scalar,
}

/// For `a` homogeneous of degree `k < 0`, `ψ(b a) = 0`; degrees `k ≥ 0`
/// pass vacuously.
pub fn check_ground_condition(
    spec: &StateSpec,
    a: &CPElement<GammaTable>,
    b: &CPElement<GammaTable>,
) -> Result<GroundReport> {
    if !matches!(spec, StateSpec::GammaGround { .. }) {
        return Err(Error::input("check_ground_condition needs a ground state"));
    }
    let degree = a.homogeneous_degree()?;
    let value = eval_state(spec, &b.mul(a)?)?.value;
    let holds = match degree {
        Some(k) if k < 0 => value.is_zero(),
        _ => true,
    };
    Ok(GroundReport { holds, degree, value })
}

/// `τ(g^{-1} h g) = τ(h)` for `h` a finitary permutation.
pub fn check_trace_invariance(trace: &TraceSpec, g: &GammaTable, h: &GammaTable) -> Result<bool> {
    if h.kernel_permutation().is_none() {
        return Err(Error::domain(format!("{h} is not a finitary permutation")));
    }
    let conj = g.inverse().compose(h).compose(g);
    Ok(trace_eval(trace, &conj)? == trace_eval(trace, h)?)
}

#[cfg(test)]
mod tests;
