use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groups::{random_element, stabilizer_transposition, GammaTable};
use crate::scalar::{parse_rational, Rational, Scalar};

/// A trace on the finitary permutations (or on the stabilizer of the
/// root, by extension).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TraceSpec {
    /// `τ(λ_g) = [g = e]`.
    Canonical,
    /// The extreme character with Thoma parameters `α`, `β`.
    Thoma { alpha: Vec<Rational>, beta: Vec<Rational> },
}

impl TraceSpec {
    pub fn thoma(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if v.iter().any(Signed::is_negative) {
                return Err(Error::input(format!("Thoma {name} parameters must be nonnegative")));
            }
            if v.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::input(format!("Thoma {name} parameters must be decreasing")));
            }
        }
        let total: Rational = alpha.iter().chain(&beta).cloned().sum();
        if total > Rational::one() {
            return Err(Error::input(format!("Thoma parameters sum to {total} > 1")));
        }
        Ok(TraceSpec::Thoma { alpha, beta })
    }

    /// The sign character `Thoma([], [1])`.
    pub fn sign() -> Self {
        TraceSpec::Thoma {
            alpha: vec![],
            beta: vec![Rational::one()],
        }
    }

    /// The trivial character `Thoma([1], [])`.
    pub fn trivial() -> Self {
        TraceSpec::Thoma {
            alpha: vec![Rational::one()],
            beta: vec![],
        }
    }

    /// The traces exercised by the verification suites.
    pub fn builtin() -> Vec<TraceSpec> {
        let half = crate::scalar::rat(1, 2);
        vec![
            TraceSpec::Canonical,
            TraceSpec::sign(),
            TraceSpec::trivial(),
            TraceSpec::Thoma {
                alpha: vec![half.clone(), half],
                beta: vec![],
            },
        ]
    }

    /// `canonical`, `sign`, `trivial` or `thoma[a=1/2,1/2;b=]`.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        match s {
            "canonical" => return Ok(TraceSpec::Canonical),
            "sign" => return Ok(TraceSpec::sign()),
            "trivial" => return Ok(TraceSpec::trivial()),
            _ => {}
        }
        let inner = s
            .strip_prefix("thoma[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| parse_err(s, "'canonical', 'sign', 'trivial' or 'thoma[a=..;b=..]'"))?;
        let (a, b) = inner
            .split_once(';')
            .ok_or_else(|| parse_err(s, "';' between the alpha and beta lists"))?;
        let list = |part: &str, key: &str| -> Result<Vec<Rational>> {
            let body = part
                .trim()
                .strip_prefix(key)
                .and_then(|r| r.trim_start().strip_prefix('='))
                .ok_or_else(|| parse_err(s, &format!("'{key}='")))?;
            body.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(parse_rational)
                .collect()
        };
        TraceSpec::thoma(list(a, "a")?, list(b, "b")?)
    }

    /// The character value on a permutation with the given nontrivial
    /// cycle lengths.
    pub fn character(&self, cycle_type: &[usize]) -> Rational {
        match self {
            TraceSpec::Canonical => {
                if cycle_type.is_empty() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            TraceSpec::Thoma { alpha, beta } => thoma_value(alpha, beta, cycle_type),
        }
    }
}

fn parse_err(found: &str, expected: &str) -> Error {
    Error::Parse {
        pos: 0,
        expected: expected.to_string(),
        found: format!("'{found}'"),
    }
}

fn power_sum(v: &[Rational], k: usize) -> Rational {
    v.iter().map(|x| crate::scalar::pow(x, k as i32)).sum()
}

fn thoma_value(alpha: &[Rational], beta: &[Rational], cycle_type: &[usize]) -> Rational {
    cycle_type
        .iter()
        .filter(|&&k| k >= 2)
        .map(|&k| {
            let b = power_sum(beta, k);
            power_sum(alpha, k) + if k % 2 == 0 { -b } else { b }
        })
        .product()
}

/// `∏_k (Σ α_i^k + (−1)^{k+1} Σ β_i^k)` over the cycles of length `k ≥ 2`.
pub fn thoma_eval(trace: &TraceSpec, cycle_type: &[usize]) -> Result<Scalar> {
    match trace {
        TraceSpec::Thoma { alpha, beta } => {
            TraceSpec::thoma(alpha.clone(), beta.clone())?;
            Ok(Scalar::constant(thoma_value(alpha, beta, cycle_type)))
        }
        TraceSpec::Canonical => Err(Error::input("thoma_eval needs Thoma parameters")),
    }
}

/// The trace of `λ_g`. Thoma characters live on the finitary
/// permutations, so `g` must lie in the kernel of `π`.
pub fn trace_eval(trace: &TraceSpec, g: &GammaTable) -> Result<Scalar> {
    match trace {
        TraceSpec::Canonical => Ok(indicator(g.is_identity())),
        TraceSpec::Thoma { .. } => {
            let p = g
                .kernel_permutation()
                .ok_or_else(|| Error::domain(format!("{g} is not a finitary permutation")))?;
            Ok(Scalar::constant(trace.character(&p.cycle_type())))
        }
    }
}

fn indicator(b: bool) -> Scalar {
    if b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// A trace on the stabilizer of the root, treated as a black box.
pub trait StabilizerTrace {
    /// `τ(λ_g)` for `g` fixing the root.
    fn eval(&self, g: &GammaTable) -> Result<Scalar>;

    /// Whether `τ(λ_{k^{-1} g k}) = τ(λ_g)` for every `k` in `Γ_n` with both
    /// sides in the stabilizer. Invariant traces admit closed forms.
    fn conjugation_invariant(&self) -> bool {
        false
    }
}

/// Built-in traces extend to the stabilizer by zero off the finitary
/// permutations. Cycle types are preserved under conjugation by `Γ_n`, so
/// the extension is invariant.
impl StabilizerTrace for TraceSpec {
    fn eval(&self, g: &GammaTable) -> Result<Scalar> {
        Ok(match g.kernel_permutation() {
            Some(p) => Scalar::constant(self.character(&p.cycle_type())),
            None => Scalar::zero(),
        })
    }

    fn conjugation_invariant(&self) -> bool {
        true
    }
}

/// A random element of the stabilizer of the root.
pub(crate) fn random_stabilizer(n: u8, depth: usize, seed: u64) -> Result<GammaTable> {
    let g = random_element(n, depth, seed)?;
    let image = g.act_word(&crate::words::Word::empty());
    if image.is_empty() {
        return Ok(g);
    }
    Ok(stabilizer_transposition(&image, n)?.compose(&g))
}

/// Sample `τ(gh) = τ(hg)` on random stabilizer elements.
pub fn check_trace_property(trace: &dyn StabilizerTrace, n: u8, samples: u64) -> Result<()> {
    for seed in 0..samples {
        let g = random_stabilizer(n, 3, 2 * seed)?;
        let h = random_stabilizer(n, 3, 2 * seed + 1)?;
        if trace.eval(&g.compose(&h))? != trace.eval(&h.compose(&g))? {
            return Err(Error::domain(format!(
                "functional is not tracial: τ(gh) ≠ τ(hg) for g = {g}, h = {h}"
            )));
        }
    }
    Ok(())
}

impl fmt::Display for TraceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceSpec::Canonical => f.write_str("canonical"),
            TraceSpec::Thoma { alpha, beta } => {
                let join = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                write!(f, "thoma[a={};b={}]", join(alpha), join(beta))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FinitePermutation;
    use crate::scalar::rat;

    #[test]
    fn thoma_examples() {
        let empty = TraceSpec::thoma(vec![], vec![]).unwrap();
        assert!(thoma_eval(&empty, &[2]).unwrap().is_zero());
        assert!(thoma_eval(&empty, &[]).unwrap().is_one());
        assert_eq!(thoma_eval(&TraceSpec::sign(), &[2]).unwrap(), Scalar::int(-1));
        let half = TraceSpec::thoma(vec![rat(1, 2), rat(1, 2)], vec![]).unwrap();
        assert_eq!(thoma_eval(&half, &[2]).unwrap(), Scalar::constant(rat(1, 2)));
        assert!(thoma_eval(&TraceSpec::trivial(), &[2, 3, 3]).unwrap().is_one());
        assert_eq!(thoma_eval(&TraceSpec::sign(), &[3]).unwrap(), Scalar::one());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(TraceSpec::thoma(vec![rat(1, 3), rat(1, 2)], vec![]).is_err());
        assert!(TraceSpec::thoma(vec![rat(3, 4)], vec![rat(1, 2)]).is_err());
        assert!(TraceSpec::thoma(vec![rat(-1, 4)], vec![]).is_err());
    }

    #[test]
    fn trace_on_tables() {
        let u0 = GammaTable::parse("G2[Z(1)->Z(2), Z(2)->Z(1); e->e]").unwrap();
        assert!(trace_eval(&TraceSpec::Canonical, &u0).unwrap().is_zero());
        assert!(trace_eval(&TraceSpec::Canonical, &GammaTable::identity(2)).unwrap().is_one());
        let tr = FinitePermutation::parse("(e 1)", 2).unwrap().to_gamma();
        assert_eq!(trace_eval(&TraceSpec::sign(), &tr).unwrap(), Scalar::int(-1));
        assert!(trace_eval(&TraceSpec::sign(), &u0).is_err());
    }

    #[test]
    fn parse_print() {
        for t in TraceSpec::builtin() {
            assert_eq!(TraceSpec::parse(&t.to_string()).unwrap(), t);
        }
        assert_eq!(TraceSpec::parse("thoma[a=1/2,1/2;b=]").unwrap().to_string(), "thoma[a=1/2,1/2;b=]");
        assert!(TraceSpec::parse("thoma[a=1/2]").is_err());
    }

    #[test]
    fn builtins_are_tracial() {
        for t in TraceSpec::builtin() {
            check_trace_property(&t, 2, 10).unwrap();
        }
    }
}
