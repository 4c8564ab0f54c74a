//! Named mixing schemes and their closed-form evaluators.
//!
//! Every scheme fixes `α₀ = 1`:
//!
//! | scheme  | noise coefficients                         |
//! |---------|--------------------------------------------|
//! | uniform | `1, 1, …, 1`                               |
//! | binary  | `1, 2, 4, …, 2^(K−1)`                      |
//! | linear  | `1, 2, 3, …, K`                            |
//! | BLU     | `U` ones, then `1…L`, then `1, 2, …, 2^(K−U−L−1)` |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::entropy::{h2, mutual_information, BitsValue, MixingScheme, ModelParams};
use crate::error::{domain, usage, Error, Result};
use crate::fastmix::{core_binary_mi, CorePmf};
use crate::numeric::sum_descending;

/// Block sizes of a binary-linear-uniform scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BluParams {
    k: usize,
    u: usize,
    l: usize,
}

impl BluParams {
    pub fn new(k: usize, u: usize, l: usize) -> Result<Self> {
        if k == 0 {
            return domain("K must be at least 1");
        }
        if u + l > k {
            return domain(format!("U + L = {} exceeds K = {k}", u + l));
        }
        Ok(Self { k, u, l })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Size of the uniform block.
    pub fn u(&self) -> usize {
        self.u
    }

    /// Size of the linear block.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Size of the trailing binary block.
    pub fn binary_len(&self) -> usize {
        self.k - self.u - self.l
    }
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return domain("K must be at least 1");
    }
    Ok(())
}

pub fn uniform_scheme(k: usize) -> Result<MixingScheme> {
    require_k(k)?;
    Ok(MixingScheme::from_vec_unchecked(vec![1; k + 1]))
}

pub fn binary_scheme(k: usize) -> Result<MixingScheme> {
    require_k(k)?;
    if k > 64 {
        return domain("binary coefficients overflow u64 beyond K = 64");
    }
    let alpha = std::iter::once(1)
        .chain((0..k).map(|i| 1u64 << i))
        .collect();
    Ok(MixingScheme::from_vec_unchecked(alpha))
}

pub fn linear_scheme(k: usize) -> Result<MixingScheme> {
    require_k(k)?;
    let alpha = std::iter::once(1).chain(1..=k as u64).collect();
    Ok(MixingScheme::from_vec_unchecked(alpha))
}

pub fn blu_scheme(blu: &BluParams) -> Result<MixingScheme> {
    if blu.binary_len() > 64 {
        return domain("binary block longer than 64 overflows u64");
    }
    let mut alpha = Vec::with_capacity(blu.k + 1);
    alpha.push(1);
    alpha.extend(std::iter::repeat_n(1, blu.u));
    alpha.extend(1..=blu.l as u64);
    alpha.extend((0..blu.binary_len()).map(|i| 1u64 << i));
    Ok(MixingScheme::from_vec_unchecked(alpha))
}

/// Binomial coefficient as an exact big integer.
fn binomial(n: usize, r: usize) -> BigUint {
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Natural log of a big integer that may not fit an `f64`.
fn ln_big(x: &BigUint) -> f64 {
    if let Some(v) = x.to_f64().filter(|v| v.is_finite()) {
        return v.ln();
    }
    let shift = x.bits().saturating_sub(60);
    let head = (x >> shift).to_f64().unwrap_or(f64::MAX);
    head.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `I(X; X + Σ Zᵢ)` in O(K):
/// `H(p) − Σ_{i=1}^{K} (1−p)^{K+1−i}·p^i·C(K+1, i)·H(i/(K+1))`.
pub fn uniform_mi_closed_form(params: &ModelParams) -> Result<BitsValue> {
    params.require_noise()?;
    let (p, k) = (params.p(), params.k());
    if p == 0.0 {
        return Ok(BitsValue(0.0));
    }
    let n = k + 1;
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let terms = (1..=k)
        .map(|i| {
            let c = binomial(n, i);
            let weight = match c.to_f64().filter(|v| v.is_finite()) {
                Some(cf) => cf * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32),
                None => (ln_big(&c) + i as f64 * lp + (n - i) as f64 * lq).exp(),
            };
            weight * h2(i as f64 / n as f64)
        })
        .collect();
    let hp = h2(p);
    Ok(BitsValue((hp - sum_descending(terms)).clamp(0.0, hp)))
}

/// `I(X; X + Σ 2^{i−1} Zᵢ)` in O(K):
/// `H(p) − Σ_{i=1}^{K} (p^i(1−p) + p(1−p)^i)·H(p^i(1−p) / (p^i(1−p) + p(1−p)^i))`.
pub fn binary_mi_closed_form(params: &ModelParams) -> Result<BitsValue> {
    params.require_noise()?;
    let (p, k) = (params.p(), params.k());
    if p == 0.0 {
        return Ok(BitsValue(0.0));
    }
    let q = 1.0 - p;
    let terms = (1..=k as i32)
        .map(|i| {
            let high = p.powi(i) * q;
            let low = p * q.powi(i);
            let mass = high + low;
            mass * h2(high / mass)
        })
        .collect();
    let hp = h2(p);
    Ok(BitsValue((hp - sum_descending(terms)).clamp(0.0, hp)))
}

/// Scheme identifiers understood by [`scheme_mi`] and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeName {
    Uniform,
    Binary,
    Linear,
    /// Binary-linear-uniform with explicit block sizes.
    Blu {
        u: usize,
        l: usize,
    },
}

impl SchemeName {
    pub fn scheme(&self, k: usize) -> Result<MixingScheme> {
        match *self {
            SchemeName::Uniform => uniform_scheme(k),
            SchemeName::Binary => binary_scheme(k),
            SchemeName::Linear => linear_scheme(k),
            SchemeName::Blu { u, l } => blu_scheme(&BluParams::new(k, u, l)?),
        }
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeName::Uniform => f.write_str("uniform"),
            SchemeName::Binary => f.write_str("binary"),
            SchemeName::Linear => f.write_str("linear"),
            SchemeName::Blu { u, l } => write!(f, "blu(U={u},L={l})"),
        }
    }
}

/// Evaluation route for [`scheme_mi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// O(K) closed form (uniform and binary only).
    Closed,
    /// Explicit convolution of the noise pmf.
    Direct,
    /// Edge/center entropy recursion over a bounded core plus a binary block.
    Recursion,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "direct" => Ok(Method::Direct),
            "recursion" => Ok(Method::Recursion),
            other => usage(format!(
                "unknown method '{other}' (closed|direct|recursion)"
            )),
        }
    }
}

/// Mutual information of a named scheme through the selected evaluator.
pub fn scheme_mi(name: SchemeName, params: &ModelParams, method: Method) -> Result<BitsValue> {
    params.require_noise()?;
    let k = params.k();
    match method {
        Method::Closed => match name {
            SchemeName::Uniform => uniform_mi_closed_form(params),
            SchemeName::Binary => binary_mi_closed_form(params),
            other => usage(format!("no closed form for the {other} scheme")),
        },
        Method::Direct => mutual_information(&name.scheme(k)?, params),
        Method::Recursion => {
            let blu = match name {
                SchemeName::Uniform => BluParams::new(k, k, 0)?,
                SchemeName::Binary => BluParams::new(k, 0, 0)?,
                SchemeName::Linear => BluParams::new(k, 0, k)?,
                SchemeName::Blu { u, l } => BluParams::new(k, u, l)?,
            };
            blu_mi_recursion(&blu, params.p())
        }
    }
}

/// BLU mutual information via the generalized recursion: the uniform and linear
/// blocks form the core, the binary block is stepped.
pub(crate) fn blu_mi_recursion(blu: &BluParams, p: f64) -> Result<BitsValue> {
    let core = CorePmf::uniform_linear(blu.u(), blu.l(), p)?;
    core_binary_mi(&core, blu.binary_len(), p)
}
