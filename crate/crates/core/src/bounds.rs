//! Lower bounds on `min_α I(X; α₀X + Z_α)`.
//!
//! The geometric bound replaces the mixture noise by a geometric variable `G` with
//! success probability `β = (1−p)^K`; no integer scheme leaks less than `I(X; X + G)`.
//! The trivial bound only uses that the two extreme outcomes of `Y` reveal `X`.

use crate::entropy::{h2, BitsValue, ModelParams};
use crate::error::{domain, Result};
use crate::numeric::{split_entropy, NeumaierSum};

/// Default stopping tail mass for the truncated geometric sum.
pub const DEFAULT_TAIL_TOL: f64 = 1e-15;

/// Geometric noise `Pr(G = i) = β(1−β)^i`, `i = 0, 1, …`, with `β = (1−p)^K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricNoise {
    beta: f64,
    truncation_tail: f64,
}

impl GeometricNoise {
    pub fn new(params: &ModelParams, truncation_tail: f64) -> Result<Self> {
        params.require_noise()?;
        if !(truncation_tail > 0.0) {
            return domain("truncation tail must be positive");
        }
        Ok(Self {
            beta: (1.0 - params.p()).powi(params.k() as i32),
            truncation_tail,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }

    /// `Pr(G = i)`.
    pub fn prob(&self, i: u64) -> f64 {
        self.beta * ((i as f64) * (-self.beta).ln_1p()).exp()
    }

    /// `Pr(G ≥ i) = (1−β)^i`.
    pub fn tail(&self, i: u64) -> f64 {
        ((i as f64) * (-self.beta).ln_1p()).exp()
    }

    /// Number of leading atoms needed before the remaining mass drops below the
    /// truncation tail.
    pub fn support_len(&self) -> u64 {
        if self.beta >= 1.0 {
            return 1;
        }
        let n = (self.truncation_tail.ln() / (-self.beta).ln_1p()).ceil();
        (n.max(1.0)) as u64
    }

    /// Leading atoms `(i, Pr(G = i))` up to the truncation point.
    pub fn atoms(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        (0..self.support_len()).map(move |i| (i, self.prob(i)))
    }
}

/// Closed form of `I(X; X + G)`:
///
/// `H(p) + (1−p)(1−β)·log2((1−p)(1−β) / (1 − (1−p)^{K+1})) + p·log2(p / (1 − (1−p)^{K+1}))`.
pub fn geometric_bound_closed_form(params: &ModelParams) -> Result<BitsValue> {
    params.require_noise()?;
    let (p, k) = (params.p(), params.k());
    if p == 0.0 {
        return Ok(BitsValue(0.0));
    }
    let q = 1.0 - p;
    let beta = q.powi(k as i32);
    let stay = q * (1.0 - beta);
    let total = 1.0 - q.powi(k as i32 + 1);
    let neg_cond = if stay > 0.0 {
        stay * (stay / total).log2()
    } else {
        0.0
    } + p * (p / total).log2();
    let hp = h2(p);
    Ok(BitsValue((hp + neg_cond).clamp(0.0, hp)))
}

/// A truncated series together with a bound on what the truncation discarded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSum {
    pub value: BitsValue,
    /// Upper bound on `|exact − value|`.
    pub error_bound: f64,
    /// Number of outcomes summed.
    pub terms: u64,
}

/// `I(X; X + G)` by summing outcome contributions `y = 0, 1, 2, …` until the
/// geometric tail mass falls below `tail_tol`.
///
/// Each outcome contributes at most its probability to `H(X | Y)`, so the discarded
/// part is bounded by `Pr(Y > last) ≤ Pr(G ≥ last)`.
pub fn geometric_bound_direct(params: &ModelParams, tail_tol: f64) -> Result<TruncatedSum> {
    let g = GeometricNoise::new(params, tail_tol)?;
    let p = params.p();
    if p == 0.0 {
        return Ok(TruncatedSum {
            value: BitsValue(0.0),
            error_bound: 0.0,
            terms: 1,
        });
    }
    let q = 1.0 - p;
    let n = g.support_len();
    let log_ratio = (-g.beta()).ln_1p();
    let mut acc = NeumaierSum::new();
    let mut prev = 0.0;
    for y in 0..=n {
        let cur = if y < n {
            g.beta() * (y as f64 * log_ratio).exp()
        } else {
            0.0
        };
        acc.add(split_entropy(q * cur, p * prev));
        prev = cur;
    }
    let error_bound = g.tail(n);
    let hp = h2(p);
    Ok(TruncatedSum {
        value: BitsValue((hp - acc.value()).clamp(0.0, hp)),
        error_bound,
        terms: n + 1,
    })
}

/// `H(p) − 1 + p^{K+1} + (1−p)^{K+1}`; negative (vacuous) for small `p`.
pub fn trivial_lower_bound(params: &ModelParams) -> Result<BitsValue> {
    params.require_noise()?;
    let (p, k) = (params.p(), params.k() as i32);
    Ok(BitsValue(
        h2(p) - 1.0 + p.powi(k + 1) + (1.0 - p).powi(k + 1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, k: usize) -> ModelParams {
        ModelParams::new(p, k).unwrap()
    }

    #[test]
    fn zero_p_bounds_vanish() {
        for k in [1, 5, 40] {
            assert_eq!(
                geometric_bound_closed_form(&params(0.0, k))
                    .unwrap()
                    .value(),
                0.0
            );
            assert_eq!(
                geometric_bound_direct(&params(0.0, k), 1e-15)
                    .unwrap()
                    .value
                    .value(),
                0.0
            );
            assert_eq!(trivial_lower_bound(&params(0.0, k)).unwrap().value(), 0.0);
        }
    }

    #[test]
    fn closed_form_at_half_k5() {
        let pr = params(0.5, 5);
        let v = geometric_bound_closed_form(&pr).unwrap().value();
        let d = geometric_bound_direct(&pr, DEFAULT_TAIL_TOL).unwrap();
        assert!((v - d.value.value()).abs() < 1e-9);
        assert!(v <= 0.03125);
        assert!(v > 0.0);
    }

    #[test]
    fn closed_and_direct_agree() {
        let pr = params(0.3, 4);
        let v = geometric_bound_closed_form(&pr).unwrap().value();
        let d = geometric_bound_direct(&pr, DEFAULT_TAIL_TOL).unwrap();
        assert!((v - d.value.value()).abs() < 1e-9);
        assert!(d.error_bound < DEFAULT_TAIL_TOL);
    }

    #[test]
    fn direct_sum_converges_when_halving_tolerance() {
        let pr = params(0.5, 1);
        let coarse = geometric_bound_direct(&pr, 1e-15).unwrap();
        let fine = geometric_bound_direct(&pr, 5e-16).unwrap();
        assert!(coarse.terms >= 50 && coarse.terms <= 60, "{}", coarse.terms);
        assert!((coarse.value.value() - fine.value.value()).abs() <= coarse.error_bound);
        let closed = geometric_bound_closed_form(&pr).unwrap().value();
        assert!((coarse.value.value() - closed).abs() < 1e-12);
    }

    #[test]
    fn trivial_bound_examples() {
        assert!((trivial_lower_bound(&params(0.5, 5)).unwrap().value() - 0.03125).abs() < 1e-15);
        assert!((trivial_lower_bound(&params(0.5, 1)).unwrap().value() - 0.5).abs() < 1e-15);
        assert!(trivial_lower_bound(&params(0.01, 10)).unwrap().value() < 0.0);
    }

    #[test]
    fn geometric_noise_atoms_sum_to_one_minus_tail() {
        let g = GeometricNoise::new(&params(0.25, 15), 1e-12).unwrap();
        let mass: f64 = g.atoms().map(|(_, m)| m).sum();
        let n = g.support_len();
        assert!((mass + g.tail(n) - 1.0).abs() < 1e-12);
        assert!(g.tail(n) < 1e-12);
        assert!((g.prob(0) - 0.75f64.powi(15)).abs() < 1e-16);
    }

    #[test]
    fn invalid_tail_tolerance() {
        assert!(geometric_bound_direct(&params(0.3, 2), 0.0).is_err());
    }
}
