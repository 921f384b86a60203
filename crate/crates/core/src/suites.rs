//! The thirteen acceptance criteria as runnable suites, shared by the
//! `selftest` verb and the `acceptance` test target.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::identities::{flip_identity, transposition_identity};
use crate::algebra::{matrix_check, monomial_degree, monomial_mul, phi_monomial, AlgebraElement, Monomial, Phi};
use crate::crossed::{CPElement, GammaElement, VnElement};
use crate::error::{Error, Result};
use crate::groups::{
    abelianize_gamma, classify_normal_closure, commutator, conjugate, factor_commuting, noncommuting_transposition,
    random_element, random_permutation, random_vn, sign_vn, Closure, FinitePermutation, GammaTable, VnTable,
};
use crate::kms::{
    check_ground_condition, check_trace_invariance, eval_state, kms_products, StateGroup, StateSpec, TraceSpec,
};
use crate::scalar::{pow, rat, Rational, Scalar};
use crate::words::{BasicSet, SimpleFunction, Space, Word};

/// The outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.millis,
            self.detail
        )
    }
}

pub const SUITE_NAMES: [&str; 13] = [
    "algebra-level KMS on E_n",
    "KMS state of O_n",
    "matrix identities",
    "exact sequence",
    "abelianization",
    "normal-closure classifier",
    "commuting factorization",
    "non-commuting transposition",
    "crossed-product KMS",
    "supercritical closed forms",
    "ground states",
    "trace invariance",
    "Fock consistency",
];

type Outcome = Result<(bool, String)>;

/// Run criterion `id` (1 to 13). Randomized suites derive their samples
/// from `seed`.
pub fn run(id: u8, seed: u64) -> Result<SuiteResult> {
    let name = *SUITE_NAMES
        .get(usize::from(id).wrapping_sub(1))
        .ok_or_else(|| Error::input(format!("no acceptance criterion {id}")))?;
    let start = Instant::now();
    let outcome = match id {
        1 => algebra_kms(Phi::ToeplitzKms),
        2 => algebra_kms(Phi::CuntzKms),
        3 => matrix_identities(),
        4 => exact_sequence(seed),
        5 => abelianization(seed),
        6 => classifier(seed),
        7 => commuting_factorization(seed),
        8 => noncommuting(seed),
        9 => crossed_kms(),
        10 => supercritical_closed_forms(),
        11 => ground_states(),
        12 => trace_invariance(seed),
        _ => fock_consistency(seed),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Ok(SuiteResult {
        id,
        name,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    (1..=13).map(|id| run(id, seed).expect("ids are in range")).collect()
}

fn verdict(failures: Vec<String>, checked: usize, what: &str) -> Outcome {
    if failures.is_empty() {
        Ok((true, format!("{checked} {what}")))
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        Ok((false, format!("{} of {checked} {what} failed; first: {}", failures.len(), shown.join("; "))))
    }
}

fn monomials(n: u8, max_len: usize) -> Vec<Monomial> {
    let words = Word::all_up_to(n, max_len);
    let mut out = Vec::with_capacity(words.len() * words.len());
    for mu in &words {
        for nu in &words {
            out.push((mu.clone(), nu.clone()));
        }
    }
    out
}

/// `φ(ab) = t^k φ(ba)` for all monomials `a` (degree `k`) and `b` with
/// words of length at most 3; `t = 1/n` in Cuntz mode.
fn algebra_kms(which: Phi) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in [2u8, 3] {
        let ms = monomials(n, 3);
        let scale = |k: i32| match which {
            Phi::CuntzKms => Scalar::constant(pow(&rat(1, n.into()), k)),
            _ => Scalar::t_pow(k),
        };
        let phi = |m: Option<Monomial>| m.map_or_else(Scalar::zero, |m| phi_monomial(&m, which, n));
        for a in &ms {
            let s = scale(monomial_degree(a));
            for b in &ms {
                checked += 1;
                let lhs = phi(monomial_mul(a, b));
                let rhs = &s * &phi(monomial_mul(b, a));
                if lhs != rhs {
                    failures.push(format!("n={n} a={a:?} b={b:?}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    verdict(failures, checked, "monomial pairs")
}

fn matrix_identities() -> Outcome {
    let mut failures = Vec::new();
    for n in [2u8, 3] {
        let [a, b, c, e] = flip_identity(n)?;
        if !matrix_check(&a, &b, &c, &e)? {
            failures.push(format!("3x3 flip identity, n={n}"));
        }
        let [a, b, c, e] = transposition_identity(n)?;
        if !matrix_check(&a, &b, &c, &e)? {
            failures.push(format!("2x2 transposition identity, n={n}"));
        }
    }
    verdict(failures, 4, "identities")
}

fn exact_sequence(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in [2u8, 3] {
        for i in 0..500 {
            let s = seed.wrapping_mul(1000).wrapping_add(i);
            let g = random_element(n, 3, 2 * s)?;
            let h = random_element(n, 3, 2 * s + 1)?;
            checked += 1;
            let (pg, ph) = (g.pi_project(), h.pi_project());
            if g.compose(&h).pi_project() != pg.compose(&ph) {
                failures.push(format!("π(gh) ≠ π(g)π(h) for {g}, {h}"));
            }
            if pg.is_identity() != g.kernel_permutation().is_some() {
                failures.push(format!("kernel detection disagrees on {g}"));
            }
            if pg.lift().pi_project() != pg {
                failures.push(format!("π(lift(π(g))) ≠ π(g) for {g}"));
            }
        }
    }
    verdict(failures, checked, "random elements")
}

fn abelianization(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in [2u8, 3] {
        for i in 0..500 {
            let s = seed.wrapping_mul(1000).wrapping_add(i);
            let g = random_element(n, 3, 2 * s)?;
            let h = random_element(n, 3, 2 * s + 1)?;
            checked += 1;
            if abelianize_gamma(&g.compose(&h))? != (abelianize_gamma(&g)? ^ abelianize_gamma(&h)?) {
                failures.push(format!("not a homomorphism on {g}, {h}"));
            }
            if i < 200 && abelianize_gamma(&commutator(&g, &h))? != 0 {
                failures.push(format!("nonzero on the commutator of {g}, {h}"));
            }
            if i < 200 {
                let p = random_permutation(n, 3, s)?;
                let expected = if n % 2 == 0 { p.parity() } else { 0 };
                if abelianize_gamma(&p.to_gamma())? != expected {
                    failures.push(format!("n={n}: wrong value on the permutation {p}"));
                }
            }
        }
    }
    for n in [3u8, 5] {
        let rows = (1..=n)
            .map(|a| {
                let b = match a {
                    1 => 2,
                    2 => 1,
                    x => x,
                };
                (Word::letter(a), Word::letter(b))
            })
            .collect();
        let g0 = VnTable::new(n, rows)?;
        checked += 1;
        if sign_vn(&g0) != 1 {
            failures.push(format!("sign of {g0} is not 1"));
        }
    }
    verdict(failures, checked, "cases")
}

fn u0(n: u8) -> Result<GammaTable> {
    let cyl = (1..=n)
        .map(|a| {
            let b = match a {
                1 => 2,
                2 => 1,
                x => x,
            };
            (Word::letter(a), Word::letter(b))
        })
        .collect();
    GammaTable::from_rows(n, cyl, vec![(Word::empty(), Word::empty())])
}

fn classifier(seed: u64) -> Outcome {
    let n = 2;
    let perm = |s: &str| -> Result<GammaTable> { Ok(FinitePermutation::parse(s, n)?.to_gamma()) };
    let mut comm = None;
    for s in 0..1000u64 {
        let g = random_element(n, 3, 2 * s)?;
        let h = random_element(n, 3, 2 * s + 1)?;
        if g.kernel_permutation().is_some() || h.kernel_permutation().is_some() {
            continue;
        }
        let c = commutator(&g, &h);
        if c.kernel_permutation().is_none() {
            comm = Some(c);
            break;
        }
    }
    let comm = comm.ok_or_else(|| Error::domain("no commutator outside the kernel found"))?;
    let pool = [
        (GammaTable::identity(n), Closure::Trivial),
        (perm("(e 1 2)")?, Closure::SPrime),
        (perm("(e 1)")?, Closure::S),
        (u0(n)?, Closure::Gamma),
        (comm, Closure::GammaPrime),
    ];
    let mut failures = Vec::new();
    let mut checked = 0;
    for (g, want) in &pool {
        let got = classify_normal_closure(g)?;
        checked += 1;
        if got != *want {
            failures.push(format!("{g}: {got}, expected {want}"));
        }
        for i in 0..100 {
            let k = random_element(n, 3, seed.wrapping_mul(1000).wrapping_add(i))?;
            checked += 1;
            if classify_normal_closure(&conjugate(g, &k))? != got {
                failures.push(format!("class of {g} changes under conjugation by {k}"));
            }
        }
    }
    verdict(failures, checked, "classifications")
}

fn commuting_factorization(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    for i in 0..200u64 {
        let s = seed.wrapping_mul(1000).wrapping_add(i);
        let n = if i % 2 == 0 { 2 } else { 3 };
        let depth = 1 + (i % 4) as usize;
        let h = random_permutation(n, depth, s)?;
        let g = random_element(n, depth, s)?;
        let (c, k) = factor_commuting(&h, &g)?;
        let hg = h.to_gamma();
        if c.compose(&hg) != hg.compose(&c) {
            failures.push(format!("c does not commute with h = {h} (g = {g})"));
        }
        if c.compose(&k.to_gamma()) != g {
            failures.push(format!("c k ≠ g for h = {h}, g = {g}"));
        }
    }
    verdict(failures, 200, "pairs")
}

fn noncommuting(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut i = 0u64;
    while checked < 100 {
        let g = random_element(2 + (i % 2) as u8, 3, seed.wrapping_mul(1000).wrapping_add(i))?;
        i += 1;
        if g.is_identity() {
            continue;
        }
        checked += 1;
        match noncommuting_transposition(&g, 5) {
            Some(p) => {
                let tg = p.to_gamma();
                if p.support_depth().is_none_or(|d| d > 5) || tg.compose(&g) == g.compose(&tg) {
                    failures.push(format!("{p} does not witness {g}"));
                }
            }
            None => failures.push(format!("no transposition found for {g}")),
        }
    }
    verdict(failures, checked, "elements")
}

/// Identity, a flip of the first two cylinders, two permutations and six
/// fixed pseudorandom elements.
pub fn gamma_pool(n: u8) -> Result<Vec<GammaTable>> {
    let mut pool = vec![
        GammaTable::identity(n),
        u0(n)?,
        FinitePermutation::parse("(e 1)", n)?.to_gamma(),
        FinitePermutation::parse("(1 2 11)", n)?.to_gamma(),
    ];
    for s in 0..6 {
        pool.push(random_element(n, 2, 7919 + s)?);
    }
    Ok(pool)
}

pub fn vn_pool(n: u8) -> Result<Vec<VnTable>> {
    let mut pool = vec![VnTable::identity(n), u0(n)?.pi_project()];
    for s in 0..8 {
        pool.push(random_vn(n, 2, 7919 + s)?);
    }
    Ok(pool)
}

/// `{1_{Z(μ)} λ_g, 1_{{μ}} λ_g : |μ| ≤ 2}` over the pool.
pub fn gamma_spanning_set(n: u8) -> Result<Vec<GammaElement>> {
    let mut out = Vec::new();
    for g in gamma_pool(n)? {
        for mu in Word::all_up_to(n, 2) {
            for set in [BasicSet::Cyl(mu.clone()), BasicSet::Point(mu.clone())] {
                out.push(CPElement::term(SimpleFunction::indicator(Space::Path, n, set)?, g.clone())?);
            }
        }
    }
    Ok(out)
}

/// `{1_{Z^∞(μ)} λ_g : |μ| ≤ 2}` over the pool.
pub fn vn_spanning_set(n: u8) -> Result<Vec<VnElement>> {
    let mut out = Vec::new();
    for g in vn_pool(n)? {
        for mu in Word::all_up_to(n, 2) {
            let f = SimpleFunction::indicator(Space::Boundary, n, BasicSet::CylInf(mu))?;
            out.push(CPElement::term(f, g.clone())?);
        }
    }
    Ok(out)
}

/// Count the pairs of `set` on which some state violates the KMS identity.
fn kms_suite<G: StateGroup>(set: &[CPElement<G>], specs: &[StateSpec], failures: &mut Vec<String>) -> Result<usize> {
    let mut checked = 0;
    for a in set {
        let gamma_a = a.gauge_scale()?;
        for b in set {
            let ab = a.mul(b)?;
            let rhs_el = b.mul(&gamma_a)?;
            for spec in specs {
                checked += 1;
                let lhs = eval_state(spec, &ab)?;
                let rhs = eval_state(spec, &rhs_el)?;
                if lhs != rhs {
                    failures.push(format!("{spec}: a = {a}, b = {b}: {} vs {}", lhs.value, rhs.value));
                }
            }
        }
    }
    Ok(checked)
}

/// `m'(f)` for the Bernoulli measure with letter weights `p`.
fn bernoulli(f: &SimpleFunction, p: &[Rational]) -> Result<Scalar> {
    let t = rat(1, p.len() as i64);
    let mut acc = Rational::zero();
    for (set, c) in f.terms() {
        if let BasicSet::CylInf(w) = set {
            let mass: Rational = w.letters().iter().map(|&a| p[usize::from(a) - 1].clone()).product();
            acc += c.eval(&t)? * mass;
        }
    }
    Ok(Scalar::constant(acc))
}

/// A pair on which `m' ∘ E` violates the KMS identity at `t = 1/n`.
fn uniqueness_witness(set: &[VnElement], p: &[Rational]) -> Result<Option<String>> {
    let psi = |x: &VnElement| -> Result<Scalar> {
        match x.coefficient(&VnTable::identity(x.n())) {
            Some(f) => bernoulli(f, p),
            None => Ok(Scalar::zero()),
        }
    };
    let t = rat(1, p.len() as i64);
    for a in set {
        for b in set {
            let (ab, bga) = kms_products(a, b)?;
            let (l, r) = (psi(&ab)?, psi(&bga.substitute(&t)?)?);
            if l != r {
                return Ok(Some(format!("a = {a}, b = {b}: {l} vs {r}")));
            }
        }
    }
    Ok(None)
}

fn crossed_kms() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in [2u8, 3] {
        checked += kms_suite(&vn_spanning_set(n)?, &[StateSpec::vn_kms(n)?], &mut failures)?;
    }
    let mut specs = TraceSpec::builtin()
        .into_iter()
        .map(|tr| StateSpec::critical(2, tr))
        .collect::<Result<Vec<_>>>()?;
    specs.push(StateSpec::supercritical(2, TraceSpec::Canonical, None, crate::kms::DEFAULT_DEPTH)?);
    checked += kms_suite(&gamma_spanning_set(2)?, &specs, &mut failures)?;
    let set = vn_spanning_set(2)?;
    let mut witnesses = 0;
    for p in [[rat(1, 3), rat(2, 3)], [rat(1, 4), rat(3, 4)]] {
        match uniqueness_witness(&set, &p)? {
            Some(_) => witnesses += 1,
            None => failures.push(format!("no KMS violation found for the Bernoulli measure {p:?}")),
        }
    }
    let (ok, detail) = verdict(failures, checked, "state/pair checks")?;
    Ok((ok, format!("{detail}; {witnesses} uniqueness witnesses")))
}

fn supercritical_closed_forms() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let depth = 16;
    for (n, t) in [(2u8, rat(1, 3)), (3, rat(1, 4))] {
        let symbolic = StateSpec::supercritical(n, TraceSpec::Canonical, None, depth)?;
        let nt = Rational::from_integer(n.into()) * &t;
        let weight = Scalar::one() - Scalar::monomial(Rational::from_integer(n.into()), 1);
        let bound = pow(&nt, depth as i32 + 1);
        for mu in Word::all_up_to(n, 6) {
            let k = mu.len() as i32;
            let point = GammaElement::function(SimpleFunction::indicator(Space::Path, n, BasicSet::Point(mu.clone()))?)?;
            let cyl = GammaElement::function(SimpleFunction::indicator(Space::Path, n, BasicSet::Cyl(mu.clone()))?)?;
            checked += 2;
            let vp = eval_state(&symbolic, &point)?.value;
            if vp != &weight * &Scalar::t_pow(k) {
                failures.push(format!("ψ(1_{{{mu}}}) = {vp}"));
            }
            let vc = eval_state(&symbolic, &cyl)?.value;
            if vc != Scalar::t_pow(k) {
                failures.push(format!("ψ(1_Z({mu})) = {vc}"));
            }
            // Point masses below μ up to the truncation depth.
            let mut oracle = Rational::zero();
            for len in mu.len()..=depth {
                let count = pow(&Rational::from_integer(n.into()), (len - mu.len()) as i32);
                oracle += count * (Rational::one() - &nt) * pow(&t, len as i32);
            }
            let closed = vc.eval(&t)?;
            let gap = &closed - &oracle;
            if gap < Rational::zero() || gap > bound {
                failures.push(format!("n={n} μ={mu}: truncated sum {oracle} vs closed form {closed}"));
            }
        }
    }
    verdict(failures, checked, "closed forms")
}

fn ground_states() -> Outcome {
    let n = 2;
    let mut failures = Vec::new();
    let mut checked = 0;
    let set = gamma_spanning_set(n)?;
    for state in TraceSpec::builtin() {
        let spec = StateSpec::ground(n, state.clone())?;
        for x in &set {
            let (g, f) = x.terms().next().expect("spanning elements are single terms");
            let at_root = f.terms().iter().any(|(s, _)| s.word().is_empty());
            let fixes_root = g.act_word(&Word::empty()).is_empty();
            let phi = match g.kernel_permutation() {
                Some(p) => Scalar::constant(state.character(&p.cycle_type())),
                None => Scalar::zero(),
            };
            let expected = if at_root && fixes_root { phi } else { Scalar::zero() };
            checked += 1;
            let got = eval_state(&spec, x)?.value;
            if got != expected {
                failures.push(format!("{spec} on {x}: {got}, expected {expected}"));
            }
        }
    }
    let spec = StateSpec::ground(n, TraceSpec::Canonical)?;
    let mut negative = 0;
    for x in set.iter().cloned().chain(gamma_pool(n)?.into_iter().map(CPElement::unitary)) {
        for (k, part) in x.homogeneous_decompose()? {
            if k >= 0 {
                continue;
            }
            negative += 1;
            for b in &set {
                checked += 1;
                if !check_ground_condition(&spec, &part, b)?.holds {
                    failures.push(format!("ψ(b a) ≠ 0 for a = {part}, b = {b}"));
                }
            }
        }
    }
    // The vacuum functional f λ_g ↦ f_e(v_0) is not KMS at any finite β.
    let mut witness = None;
    'search: for a in &set {
        for b in &set {
            let (ab, bga) = kms_products(a, b)?;
            let diff = eval_state(&spec, &ab)?.value - eval_state(&spec, &bga)?.value;
            let candidates = [rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 10)];
            if candidates.iter().all(|t| diff.eval(t).is_ok_and(|v| !v.is_zero())) {
                witness = Some(format!("a = {a}, b = {b}, ψ(ab) − ψ(bγ(a)) = {diff}"));
                break 'search;
            }
        }
    }
    checked += 1;
    if witness.is_none() {
        failures.push("no KMS violation found for the vacuum functional".into());
    }
    for (n, t) in [(2u8, rat(1, 2)), (2, rat(1, 1)), (3, rat(1, 3)), (2, Rational::zero())] {
        checked += 1;
        if StateSpec::supercritical(n, TraceSpec::Canonical, Some(t.clone()), 16).is_ok() {
            failures.push(format!("supercritical state accepted at n={n}, t={t}"));
        }
    }
    let (ok, detail) = verdict(failures, checked, "checks")?;
    Ok((ok, format!("{detail}; {negative} negative-degree parts; witness: {}", witness.unwrap_or_default())))
}

fn trace_invariance(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..200u64 {
        let s = seed.wrapping_mul(1000).wrapping_add(i);
        let n = if i % 2 == 0 { 2 } else { 3 };
        let g = random_element(n, 3, s)?;
        let h = random_permutation(n, 3, s)?.to_gamma();
        for trace in TraceSpec::builtin() {
            checked += 1;
            if !check_trace_invariance(&trace, &g, &h)? {
                failures.push(format!("{trace}: g = {g}, h = {h}"));
            }
        }
    }
    verdict(failures, checked, "trace/pair checks")
}

fn fock_consistency(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..100u64 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let g = random_element(n, 3, seed.wrapping_mul(1000).wrapping_add(i))?;
        let x = AlgebraElement::from_gamma(&g);
        for w in Word::all_up_to(n, 5) {
            checked += 1;
            let image = x.fock_apply(&w)?;
            let ok = image.len() == 1 && image.get(&g.act_word(&w)).is_some_and(Scalar::is_one);
            if !ok {
                failures.push(format!("{g} on δ_{w}"));
            }
        }
    }
    verdict(failures, checked, "basis vectors")
}
