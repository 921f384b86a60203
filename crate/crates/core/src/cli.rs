//! The `tkms` command line: parse elements, run one operation per verb and
//! print text or a JSON document.

use std::collections::BTreeMap;
use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::identities::{flip_identity, transposition_identity};
use crate::algebra::{matrix_check, AlgebraElement, AlgebraMatrix, AlgebraMode, Phi};
use crate::crossed::{GammaElement, VnElement};
use crate::error::{Error, Result};
use crate::groups::{
    abelianize_gamma, classify_normal_closure, factor_commuting, fixed_structure, sign_vn, FinitePermutation,
    GammaTable, VnTable,
};
use crate::kms::{
    check_ground_condition, check_kms_condition, check_trace_invariance, eval_state, StateSpec, TraceSpec,
};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::suites;
use crate::words::{BoundaryPoint, SimpleFunction, Word};

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "tkms", version, about = "Exact workbench for Higman-Thompson groups and KMS states")]
pub struct Cli {
    /// Alphabet size when it cannot be read off a table.
    #[arg(long, global = true)]
    pub n: Option<u8>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation depth for supercritical states.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Substitute a rational value for `t`.
    #[arg(long, global = true)]
    pub t: Option<String>,
    /// Trace used by the state verbs, e.g. `sign` or `thoma[a=1/2,1/2;b=]`.
    #[arg(long, global = true)]
    pub trace: Option<String>,
    /// State descriptor; replaces the leading state argument.
    #[arg(long, global = true)]
    pub state: Option<String>,
    /// Algebra for `T`/`S` expressions.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Toeplitz,
    Cuntz,
    Infinite,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the canonical form of each element.
    Normalize { items: Vec<String> },
    /// Compose two tables or permutations (`g ∘ h`).
    Compose { g: String, h: String },
    /// Invert each table or permutation.
    Inv { items: Vec<String> },
    /// Apply a table to a boundary point.
    Act { g: String, point: String },
    /// Project Γ_n tables to V_n.
    Pi { items: Vec<String> },
    /// Lift V_n tables to Γ_n.
    Lift { items: Vec<String> },
    /// The sign homomorphism on V_n.
    Sign { items: Vec<String> },
    /// The abelianization of Γ_n.
    Ab { items: Vec<String> },
    /// Classify the normal closure in Γ_n.
    Classify { items: Vec<String> },
    /// Split `g = c k` with `c` commuting with the permutation `h`.
    Factor { h: String, g: String },
    /// Identity cylinders and fixed singletons.
    Fixed { items: Vec<String> },
    /// The cocycle `|dst| − |src|` at a point.
    Cocycle { g: String, point: String },
    /// Normalize an algebra expression and evaluate its algebra-level state.
    AlgEval {
        items: Vec<String>,
        /// Functional to evaluate; defaults to the mode's own.
        #[arg(long, value_enum)]
        phi: Option<PhiArg>,
    },
    /// Equality in the algebra.
    AlgEqual { a: String, b: String },
    /// Whether `a* a = a a* = 1`.
    Unitary { items: Vec<String> },
    /// Apply an element to a Fock basis vector.
    Fock { a: String, word: String },
    /// Check `A·B·C = expected`; a single argument `flip` or
    /// `transposition` selects a built-in identity.
    MatrixCheck { matrices: Vec<String> },
    /// Multiply two crossed-product elements.
    CpMul { x: String, y: String },
    /// The conditional expectation of a crossed-product element.
    CpExpect {
        items: Vec<String>,
        /// Expect onto the finitary permutations instead of the functions.
        #[arg(long)]
        permutations: bool,
    },
    /// Homogeneous components of an algebra or crossed-product element.
    Grade { items: Vec<String> },
    /// Evaluate a state.
    KmsEval { args: Vec<String> },
    /// Check `ψ(ab) = ψ(b γ(a))`.
    KmsCheck { args: Vec<String> },
    /// Check `ψ(b a) = 0` for `a` homogeneous of negative degree.
    GroundCheck { args: Vec<String> },
    /// Check `τ(g^{-1} h g) = τ(h)`.
    TraceCheck { args: Vec<String> },
    /// Run the acceptance suites (all, or the listed ids).
    Selftest { ids: Vec<u8> },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiArg {
    Toeplitz,
    Cuntz,
    Ground,
}

/// The JSON envelope for every output.
#[derive(Serialize, Debug)]
pub struct Document {
    pub version: u32,
    pub n: u8,
    pub mode: String,
    pub payload: Value,
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A parsed element of any kind.
#[derive(Clone, Debug)]
pub enum Element {
    Gamma(GammaTable),
    Vn(VnTable),
    Perm(FinitePermutation),
    Function(SimpleFunction),
    Algebra(AlgebraElement),
    CpGamma(GammaElement),
    CpVn(VnElement),
}

impl Element {
    pub fn n(&self) -> u8 {
        match self {
            Element::Gamma(g) => g.n(),
            Element::Vn(g) => g.n(),
            Element::Perm(p) => p.n(),
            Element::Function(f) => f.n(),
            Element::Algebra(a) => a.mode().n(),
            Element::CpGamma(x) => x.n(),
            Element::CpVn(x) => x.n(),
        }
    }

    pub fn kind(&self) -> String {
        match self {
            Element::Gamma(_) => "gamma".into(),
            Element::Vn(_) => "vn".into(),
            Element::Perm(_) => "permutation".into(),
            Element::Function(f) => match f.space() {
                crate::words::Space::Path => "function:path".into(),
                crate::words::Space::Boundary => "function:boundary".into(),
            },
            Element::Algebra(a) => a.mode().to_string(),
            Element::CpGamma(_) => "cp:gamma".into(),
            Element::CpVn(_) => "cp:vn".into(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Gamma(g) => g.fmt(f),
            Element::Vn(g) => g.fmt(f),
            Element::Perm(p) => p.fmt(f),
            Element::Function(x) => x.fmt(f),
            Element::Algebra(a) => a.fmt(f),
            Element::CpGamma(x) => x.fmt(f),
            Element::CpVn(x) => x.fmt(f),
        }
    }
}

/// The alphabet announced by a `G<d>[` or `V<d>[` table head.
fn table_alphabet(src: &str) -> Option<u8> {
    let b = src.as_bytes();
    (0..b.len().saturating_sub(2)).find_map(|i| {
        let head = (b[i] == b'G' || b[i] == b'V') && (i == 0 || !b[i - 1].is_ascii_alphabetic());
        (head && b[i + 1].is_ascii_digit() && b[i + 2] == b'[').then(|| b[i + 1] - b'0')
    })
}

fn mode_for(src: &str, n: u8, mode: Option<ModeArg>) -> AlgebraMode {
    match mode {
        Some(ModeArg::Toeplitz) => AlgebraMode::Toeplitz(n),
        Some(ModeArg::Cuntz) => AlgebraMode::Cuntz(n),
        Some(ModeArg::Infinite) => AlgebraMode::InfiniteCuntz(n),
        None if src.contains('S') => AlgebraMode::Cuntz(n),
        None => AlgebraMode::Toeplitz(n),
    }
}

/// Parse any element, telling kinds apart by their syntax: tables start
/// with `G<d>[`/`V<d>[`, crossed-product elements contain `L[`, algebra
/// expressions use `T`, `S` or `E`, and permutations are cycle lists.
pub fn parse_element(src: &str, n: Option<u8>, mode: Option<ModeArg>) -> Result<Element> {
    let s = src.trim();
    let head = table_alphabet(s);
    let n = head.or(n).unwrap_or(2);
    if s.contains("L[") {
        return if s.contains("L[V") {
            Ok(Element::CpVn(VnElement::parse(s, n)?))
        } else {
            Ok(Element::CpGamma(GammaElement::parse(s, n)?))
        };
    }
    if s.starts_with('G') && head.is_some() {
        return Ok(Element::Gamma(GammaTable::parse(s)?));
    }
    if s.starts_with('V') && head.is_some() {
        return Ok(Element::Vn(VnTable::parse(s)?));
    }
    if s.contains(['T', 'S', 'E']) {
        return Ok(Element::Algebra(AlgebraElement::parse(s, mode_for(s, n, mode))?));
    }
    if s == "id" || (s.starts_with('(') && !s.contains(['Z', 'P', 't'])) {
        return Ok(Element::Perm(FinitePermutation::parse(s, n)?));
    }
    Ok(Element::Function(SimpleFunction::parse(s, None, n)?))
}

/// Expand `@file` into its expressions (one per line, `#` comments).
fn expand(arg: &str) -> Result<Vec<String>> {
    let Some(path) = arg.strip_prefix('@') else {
        return Ok(vec![arg.to_string()]);
    };
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{path}: {e}")))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn expand_all(items: &[String]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for i in items {
        out.extend(expand(i)?);
    }
    if out.is_empty() {
        return Err(Error::input("no input expressions"));
    }
    Ok(out)
}

fn single(arg: &str) -> Result<String> {
    let mut v = expand(arg)?;
    match v.len() {
        1 => Ok(v.remove(0)),
        k => Err(Error::input(format!("{arg} holds {k} expressions, expected one"))),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
}

/// One line of text and its JSON payload.
struct Out {
    /// Set when a verification verb ran but found a failure.
    failed: bool,
    n: u8,
    mode: String,
    text: String,
    payload: Value,
}

impl Out {
    fn new(n: u8, mode: impl Into<String>, text: impl Into<String>, payload: Value) -> Self {
        Out {
            failed: false,
            n,
            mode: mode.into(),
            text: text.into(),
            payload,
        }
    }
}

impl Ctx<'_> {
    fn elem(&self, src: &str) -> Result<Element> {
        parse_element(&single(src)?, self.cli.n, self.cli.mode)
    }

    fn parsed(&self, src: &str) -> Result<Element> {
        parse_element(src, self.cli.n, self.cli.mode)
    }

    fn t(&self) -> Result<Option<Rational>> {
        self.cli.t.as_deref().map(parse_rational).transpose()
    }

    fn gamma(&self, src: &str) -> Result<GammaTable> {
        match self.parsed(src)? {
            Element::Gamma(g) => Ok(g),
            Element::Perm(p) => Ok(p.to_gamma()),
            other => Err(Error::mode(format!("expected a Γ_n table, got {}", other.kind()))),
        }
    }

    fn vn(&self, src: &str) -> Result<VnTable> {
        match self.parsed(src)? {
            Element::Vn(g) => Ok(g),
            other => Err(Error::mode(format!("expected a V_n table, got {}", other.kind()))),
        }
    }

    fn algebra(&self, src: &str) -> Result<AlgebraElement> {
        self.algebra_in(src, None)
    }

    /// Scalars such as `1` read as functions; here they become algebra
    /// scalars, in `mode` when given.
    fn algebra_in(&self, src: &str, mode: Option<AlgebraMode>) -> Result<AlgebraElement> {
        match self.parsed(src)? {
            Element::Function(_) if !src.contains(['Z', 'P']) => {
                let n = self.cli.n.unwrap_or(2);
                AlgebraElement::parse(src, mode.unwrap_or_else(|| mode_for(src, n, self.cli.mode)))
            }
            Element::Algebra(a) => Ok(a),
            Element::Gamma(g) => Ok(AlgebraElement::from_gamma(&g)),
            Element::Perm(p) => Ok(AlgebraElement::from_gamma(&p.to_gamma())),
            Element::Vn(g) => Ok(AlgebraElement::from_vn(&g)),
            other => Err(Error::mode(format!("expected an algebra element, got {}", other.kind()))),
        }
    }

    fn state(&self, args: &[String], arity: usize) -> Result<(StateSpec, Vec<String>)> {
        let (spec, rest) = match &self.cli.state {
            Some(s) => (s.clone(), args.to_vec()),
            None => {
                let (first, rest) = args.split_first().ok_or_else(|| Error::input("missing state descriptor"))?;
                (first.clone(), rest.to_vec())
            }
        };
        if rest.len() != arity {
            return Err(Error::input(format!("expected {arity} element argument(s) after the state")));
        }
        let mut spec = StateSpec::parse(&spec)?;
        let trace = self.cli.trace.as_deref().map(TraceSpec::parse).transpose()?;
        let t = self.t()?;
        spec = match spec {
            StateSpec::GammaSupercritical { n, trace: tr, t: t0, depth } => StateSpec::supercritical(
                n,
                trace.unwrap_or(tr),
                t.or(t0),
                self.cli.depth.unwrap_or(depth),
            )?,
            StateSpec::GammaCritical { n, trace: tr } => StateSpec::critical(n, trace.unwrap_or(tr))?,
            StateSpec::GammaGround { n, state } => StateSpec::ground(n, trace.unwrap_or(state))?,
            other => other,
        };
        let rest = rest.iter().map(|a| single(a)).collect::<Result<Vec<_>>>()?;
        Ok((spec, rest))
    }

    fn each(&self, items: &[String], f: impl Fn(&Self, &str) -> Result<Out>) -> Result<Vec<Out>> {
        expand_all(items)?.iter().map(|s| f(self, s)).collect()
    }
}

fn phi_name(p: Phi) -> &'static str {
    match p {
        Phi::ToeplitzKms => "toeplitz",
        Phi::CuntzKms => "cuntz",
        Phi::Ground => "ground",
    }
}

fn scalar_text(s: &Scalar) -> String {
    s.to_string()
}

fn run_command(ctx: &Ctx) -> Result<Vec<Out>> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Normalize { items } => ctx.each(items, |c, s| {
            let e = c.parsed(s)?;
            Ok(Out::new(e.n(), e.kind(), e.to_string(), json!(e.to_string())))
        }),
        Command::Compose { g, h } => {
            let (a, b) = (ctx.elem(g)?, ctx.elem(h)?);
            let out = match (&a, &b) {
                (Element::Gamma(x), Element::Gamma(y)) => Element::Gamma(x.compose(y)),
                (Element::Vn(x), Element::Vn(y)) => Element::Vn(x.compose(y)),
                (Element::Perm(x), Element::Perm(y)) => Element::Perm(x.compose(y)),
                (Element::Gamma(x), Element::Perm(y)) => Element::Gamma(x.compose(&y.to_gamma())),
                (Element::Perm(x), Element::Gamma(y)) => Element::Gamma(x.to_gamma().compose(y)),
                _ => return Err(Error::mode(format!("cannot compose {} with {}", a.kind(), b.kind()))),
            };
            if out.n() != a.n() || a.n() != b.n() {
                return Err(Error::mode("alphabets differ"));
            }
            Ok(vec![Out::new(out.n(), out.kind(), out.to_string(), json!(out.to_string()))])
        }
        Command::Inv { items } => ctx.each(items, |c, s| {
            let e = match c.parsed(s)? {
                Element::Gamma(g) => Element::Gamma(g.inverse()),
                Element::Vn(g) => Element::Vn(g.inverse()),
                Element::Perm(p) => Element::Perm(p.inverse()),
                other => return Err(Error::mode(format!("cannot invert {}", other.kind()))),
            };
            Ok(Out::new(e.n(), e.kind(), e.to_string(), json!(e.to_string())))
        }),
        Command::Act { g, point } => {
            let x: BoundaryPoint = single(point)?.parse()?;
            let (n, kind, y) = match ctx.elem(g)? {
                Element::Gamma(g) => (g.n(), "gamma", g.act(&x)?),
                Element::Vn(g) => (g.n(), "vn", g.act(&x)?),
                Element::Perm(p) => match &x {
                    BoundaryPoint::Finite(w) => (p.n(), "permutation", BoundaryPoint::finite(p.apply(w))),
                    _ => (p.n(), "permutation", p.to_gamma().act(&x)?),
                },
                other => return Err(Error::mode(format!("{} does not act on points", other.kind()))),
            };
            Ok(vec![Out::new(n, kind, y.to_string(), json!(y.to_string()))])
        }
        Command::Pi { items } => ctx.each(items, |c, s| {
            let v = c.gamma(s)?.pi_project();
            Ok(Out::new(v.n(), "vn", v.to_string(), json!(v.to_string())))
        }),
        Command::Lift { items } => ctx.each(items, |c, s| {
            let v = c.vn(s)?;
            let g = v.lift();
            let k = v.fredholm_count();
            Ok(Out::new(
                v.n(),
                "gamma",
                format!("{g} (missing words: {k})"),
                json!({"lift": g.to_string(), "fredholm_count": k}),
            ))
        }),
        Command::Sign { items } => ctx.each(items, |c, s| {
            let (n, v) = match c.parsed(s)? {
                Element::Vn(v) => (v.n(), sign_vn(&v)),
                Element::Gamma(g) => (g.n(), sign_vn(&g.alpha_embed()?)),
                other => return Err(Error::mode(format!("sign is defined on V_n, got {}", other.kind()))),
            };
            Ok(Out::new(n, "vn", v.to_string(), json!(v)))
        }),
        Command::Ab { items } => ctx.each(items, |c, s| {
            let g = c.gamma(s)?;
            let v = abelianize_gamma(&g)?;
            Ok(Out::new(g.n(), "gamma", v.to_string(), json!(v)))
        }),
        Command::Classify { items } => ctx.each(items, |c, s| {
            let g = c.gamma(s)?;
            let v = classify_normal_closure(&g)?.to_string();
            Ok(Out::new(g.n(), "gamma", v.clone(), json!(v)))
        }),
        Command::Factor { h, g } => {
            let h = match ctx.elem(h)? {
                Element::Perm(p) => p,
                Element::Gamma(t) => t
                    .kernel_permutation()
                    .ok_or_else(|| Error::domain(format!("{t} is not a finitary permutation")))?,
                other => return Err(Error::mode(format!("expected a permutation, got {}", other.kind()))),
            };
            let g = ctx.gamma(&single(g)?)?;
            let (c, k) = factor_commuting(&h, &g)?;
            Ok(vec![Out::new(
                g.n(),
                "gamma",
                format!("c = {c}\nk = {k}"),
                json!({"c": c.to_string(), "k": k.to_string()}),
            )])
        }
        Command::Fixed { items } => ctx.each(items, |c, s| {
            let g = c.gamma(s)?;
            let fx = fixed_structure(&g);
            let cyl: Vec<String> = fx.identity_cylinders.iter().map(ToString::to_string).collect();
            let pts: Vec<String> = fx.fixed_singletons.iter().map(ToString::to_string).collect();
            Ok(Out::new(
                g.n(),
                "gamma",
                format!("identity cylinders: [{}]; fixed singletons: [{}]", cyl.join(", "), pts.join(", ")),
                json!({"identity_cylinders": cyl, "fixed_singletons": pts}),
            ))
        }),
        Command::Cocycle { g, point } => {
            let x: BoundaryPoint = single(point)?.parse()?;
            let (n, k) = match ctx.elem(g)? {
                Element::Gamma(g) => (g.n(), g.cocycle_degree(&x)?),
                Element::Vn(g) => (g.n(), g.cocycle_degree(&x)?),
                other => return Err(Error::mode(format!("no cocycle on {}", other.kind()))),
            };
            Ok(vec![Out::new(n, "cocycle", k.to_string(), json!(k))])
        }
        Command::AlgEval { items, phi } => {
            let t = ctx.t()?;
            ctx.each(items, |c, s| {
                let a = c.algebra(s)?;
                let which = match (phi, a.mode()) {
                    (Some(PhiArg::Toeplitz), _) => Phi::ToeplitzKms,
                    (Some(PhiArg::Cuntz), _) => Phi::CuntzKms,
                    (Some(PhiArg::Ground), _) => Phi::Ground,
                    (None, AlgebraMode::Toeplitz(_)) => Phi::ToeplitzKms,
                    (None, AlgebraMode::Cuntz(_)) => Phi::CuntzKms,
                    (None, AlgebraMode::InfiniteCuntz(_)) => Phi::Ground,
                };
                let mut v = a.phi(which)?;
                if let Some(t) = &t {
                    v = v.substitute(t)?;
                }
                Ok(Out::new(
                    a.mode().n(),
                    a.mode().to_string(),
                    format!("{a}\nphi[{}] = {v}", phi_name(which)),
                    json!({"element": a.to_string(), "phi": phi_name(which), "value": scalar_text(&v)}),
                ))
            })
        }
        Command::AlgEqual { a, b } => {
            let x = ctx.algebra(&single(a)?)?;
            let y = ctx.algebra_in(&single(b)?, Some(x.mode()))?;
            let eq = x.equals(&y)?;
            Ok(vec![Out::new(x.mode().n(), x.mode().to_string(), eq.to_string(), json!(eq))])
        }
        Command::Unitary { items } => ctx.each(items, |c, s| {
            let a = c.algebra(s)?;
            let u = a.is_unitary()?;
            Ok(Out::new(a.mode().n(), a.mode().to_string(), u.to_string(), json!(u)))
        }),
        Command::Fock { a, word } => {
            let x = ctx.algebra(&single(a)?)?;
            let w: Word = single(word)?.parse()?;
            let image = x.fock_apply(&w)?;
            let terms: BTreeMap<String, String> = image.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
            let text = if image.is_empty() {
                "0".to_string()
            } else {
                image
                    .iter()
                    .map(|(k, v)| if v.is_one() { format!("δ_{k}") } else { format!("({v})·δ_{k}") })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            Ok(vec![Out::new(x.mode().n(), x.mode().to_string(), text, json!(terms))])
        }
        Command::MatrixCheck { matrices } => {
            let n = cli.n.unwrap_or(2);
            let [a, b, c, e] = match matrices.as_slice() {
                [name] if name == "flip" => flip_identity(n)?,
                [name] if name == "transposition" => transposition_identity(n)?,
                [a, b, c, e] => {
                    let mode = match cli.mode {
                        Some(ModeArg::Cuntz) => AlgebraMode::Cuntz(n),
                        Some(ModeArg::Infinite) => AlgebraMode::InfiniteCuntz(n),
                        _ => AlgebraMode::Toeplitz(n),
                    };
                    let load = |s: &String| -> Result<AlgebraMatrix> {
                        let text = match s.strip_prefix('@') {
                            Some(p) => std::fs::read_to_string(p).map_err(|e| Error::input(format!("{p}: {e}")))?,
                            None => s.clone(),
                        };
                        AlgebraMatrix::from_json(mode, &text)
                    };
                    [load(a)?, load(b)?, load(c)?, load(e)?]
                }
                _ => return Err(Error::input("matrix-check takes `flip`, `transposition` or four matrices")),
            };
            let ok = matrix_check(&a, &b, &c, &e)?;
            Ok(vec![Out::new(n, "matrix", ok.to_string(), json!(ok))])
        }
        Command::CpMul { x, y } => {
            let out = match (ctx.elem(x)?, ctx.elem(y)?) {
                (Element::CpGamma(a), Element::CpGamma(b)) => Element::CpGamma(a.mul(&b)?),
                (Element::CpVn(a), Element::CpVn(b)) => Element::CpVn(a.mul(&b)?),
                (a, b) => return Err(Error::mode(format!("cannot multiply {} by {}", a.kind(), b.kind()))),
            };
            Ok(vec![Out::new(out.n(), out.kind(), out.to_string(), json!(out.to_string()))])
        }
        Command::CpExpect { items, permutations } => ctx.each(items, |c, s| {
            let out = match (c.parsed(s)?, permutations) {
                (Element::CpGamma(x), true) => Element::CpGamma(x.expectation_to_permutations()),
                (Element::CpGamma(x), false) => Element::CpGamma(x.expectation()),
                (Element::CpVn(x), false) => Element::CpVn(x.expectation()),
                (other, _) => return Err(Error::mode(format!("no such expectation on {}", other.kind()))),
            };
            Ok(Out::new(out.n(), out.kind(), out.to_string(), json!(out.to_string())))
        }),
        Command::Grade { items } => ctx.each(items, |c, s| {
            let e = c.parsed(s)?;
            let parts: BTreeMap<i32, String> = match &e {
                Element::Algebra(a) => a.grade_decompose().into_iter().map(|(k, v)| (k, v.to_string())).collect(),
                Element::CpGamma(x) => x.homogeneous_decompose()?.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
                Element::CpVn(x) => x.homogeneous_decompose()?.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
                other => return Err(Error::mode(format!("no grading on {}", other.kind()))),
            };
            let text = parts.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n");
            let payload: BTreeMap<String, String> = parts.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            Ok(Out::new(e.n(), e.kind(), text, json!(payload)))
        }),
        Command::KmsEval { args } => {
            let (spec, rest) = ctx.state(args, 1)?;
            let r = match ctx.parsed(&rest[0])? {
                Element::CpGamma(x) => eval_state(&spec, &x)?,
                Element::CpVn(x) => eval_state(&spec, &x)?,
                Element::Function(f) => eval_state(&spec, &GammaElement::function(f)?)?,
                other => return Err(Error::mode(format!("states act on crossed-product elements, got {}", other.kind()))),
            };
            Ok(vec![Out::new(spec.n(), spec.to_string(), r.to_string(), r.to_json())])
        }
        Command::KmsCheck { args } => {
            let (spec, rest) = ctx.state(args, 2)?;
            let r = match (ctx.parsed(&rest[0])?, ctx.parsed(&rest[1])?) {
                (Element::CpGamma(a), Element::CpGamma(b)) => check_kms_condition(&spec, &a, &b)?,
                (Element::CpVn(a), Element::CpVn(b)) => check_kms_condition(&spec, &a, &b)?,
                (a, b) => return Err(Error::mode(format!("cannot pair {} with {}", a.kind(), b.kind()))),
            };
            let text = format!("{} (ψ(ab) = {}, ψ(bγ(a)) = {})", r.holds, r.lhs, r.rhs);
            let payload = serde_json::to_value(&r).expect("plain fields serialize");
            Ok(vec![Out::new(spec.n(), spec.to_string(), text, payload)])
        }
        Command::GroundCheck { args } => {
            let (spec, rest) = ctx.state(args, 2)?;
            let r = match (ctx.parsed(&rest[0])?, ctx.parsed(&rest[1])?) {
                (Element::CpGamma(a), Element::CpGamma(b)) => check_ground_condition(&spec, &a, &b)?,
                (a, b) => return Err(Error::mode(format!("cannot pair {} with {}", a.kind(), b.kind()))),
            };
            let degree = r.degree.map_or("none".to_string(), |k| k.to_string());
            let text = format!("{} (degree {degree}, ψ(ba) = {})", r.holds, r.value);
            let payload = serde_json::to_value(&r).expect("plain fields serialize");
            Ok(vec![Out::new(spec.n(), spec.to_string(), text, payload)])
        }
        Command::TraceCheck { args } => {
            let (trace, rest) = match &cli.trace {
                Some(t) => (t.clone(), args.as_slice()),
                None => {
                    let (first, rest) = args.split_first().ok_or_else(|| Error::input("missing trace"))?;
                    (first.clone(), rest)
                }
            };
            let [g, h] = rest else {
                return Err(Error::input("trace-check takes a trace, g and h"));
            };
            let trace = TraceSpec::parse(&trace)?;
            let (g, h) = (ctx.gamma(&single(g)?)?, ctx.gamma(&single(h)?)?);
            let ok = check_trace_invariance(&trace, &g, &h)?;
            Ok(vec![Out::new(g.n(), trace.to_string(), ok.to_string(), json!(ok))])
        }
        Command::Selftest { ids } => {
            let ids: Vec<u8> = if ids.is_empty() { (1..=13).collect() } else { ids.clone() };
            let results = ids
                .iter()
                .map(|&id| suites::run(id, cli.seed))
                .collect::<Result<Vec<_>>>()?;
            let passed = results.iter().filter(|r| r.passed).count();
            let mut text: Vec<String> = results.iter().map(ToString::to_string).collect();
            text.push(format!("{passed} passed, {} failed", results.len() - passed));
            let payload = json!({"passed": passed, "failed": results.len() - passed, "results": results});
            let mut out = Out::new(2, "selftest", text.join("\n"), payload);
            out.failed = passed != results.len();
            Ok(vec![out])
        }
    }
}

fn render(outs: Vec<Out>, json_out: bool) -> String {
    if !json_out {
        let mut s = outs.into_iter().map(|o| o.text).collect::<Vec<_>>().join("\n");
        s.push('\n');
        return s;
    }
    let docs: Vec<Document> = outs
        .into_iter()
        .map(|o| Document {
            version: DOCUMENT_VERSION,
            n: o.n,
            mode: o.mode,
            payload: o.payload,
        })
        .collect();
    let value = if docs.len() == 1 {
        serde_json::to_value(&docs[0])
    } else {
        serde_json::to_value(&docs)
    }
    .expect("documents serialize");
    format!("{}\n", serde_json::to_string_pretty(&value).expect("values serialize"))
}

/// Run one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run_command(&Ctx { cli: &cli }) {
        Ok(outs) => Outcome {
            code: i32::from(outs.iter().any(|o| o.failed)),
            stdout: render(outs, cli.json),
            stderr: String::new(),
        },
        Err(e) => {
            let code = if e.is_parse() { 2 } else { 1 };
            let stderr = if cli.json {
                format!("{}\n", json!({"error": e.to_string(), "exit_code": code}))
            } else {
                format!("error: {e}\n")
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("tkms").chain(args.iter().copied()))
    }

    #[test]
    fn documented_examples() {
        let out = cli(&["classify", "G2[Z(1)->Z(2),Z(2)->Z(1); e->e]"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "Gamma\n"));
        assert_eq!(cli(&["sign", "V3[1->2,2->1,3->3]"]).stdout, "1\n");
        let out = cli(&["--json", "kms-eval", "gamma-crit:n=2,trace=canonical", "1*L[G2[identity]]"]);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["payload"]["value"], "1");
        assert_eq!(doc["payload"]["exact"], true);
        assert_eq!(doc["version"], 1);
        assert_eq!(cli(&["normalize", "V2[e->e]"]).stdout, "V2[e->e]\n");
    }

    #[test]
    fn exit_codes() {
        let out = cli(&["normalize", "G2[Z(1)->Z(1); e->e]"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("Kraft sum 1/2"), "{}", out.stderr);
        assert_eq!(cli(&["normalize", "G2[Z(1)->"]).code, 2);
        assert_eq!(cli(&["frobnicate"]).code, 2);
        assert_eq!(cli(&["ab", "V2[e->e]"]).code, 1);
    }

    #[test]
    fn element_kinds() {
        for (src, kind) in [
            ("G2[identity]", "gamma"),
            ("V3[e->e]", "vn"),
            ("(e 1)(11 12)", "permutation"),
            ("Z(1) + 3*P(e)", "function:path"),
            ("Zinf(1)", "function:boundary"),
            ("T[1]T*[2]", "toeplitz:2"),
            ("S[1]", "cuntz:2"),
            ("Z(1) * L[G2[identity]]", "cp:gamma"),
            ("L[V2[1->2, 2->1]]", "cp:vn"),
        ] {
            assert_eq!(parse_element(src, None, None).unwrap().kind(), kind, "{src}");
        }
    }
}
