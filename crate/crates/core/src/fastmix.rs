//! Streaming entropy recursion for schemes whose tail is a binary block.
//!
//! Let `W_N = C + Σ_{j=1}^{N} 2^{j−1}·B_j` where `C` is a core noise with support
//! `0..=w` and `T_N = X + W_N`, so `T_N` has support `0..=S_N` with `S_N = w + 2^N`.
//! Adding the next binary coefficient `s = 2^N` splits the support of `T_{N+1}`
//! into three regions:
//!
//! * `t < s` is reached only with `B_{N+1} = 0` and carries the posteriors of `T_N`;
//! * `t > S_N` is reached only with `B_{N+1} = 1`, again with the posteriors of `T_N`;
//! * the center `s ≤ t ≤ s + w` mixes both branches.
//!
//! Writing `E_lo`/`E_hi` for the entropy contributions of the lowest and highest
//! `w + 1` outcomes of `T_N`,
//!
//! ```text
//! H(X | T_{N+1}) = H(X | T_N) − (1−p)·E_hi − p·E_lo + center
//! ```
//!
//! Once `2^N > w` the edges of `T_{N+1}` are scaled copies of those of `T_N`
//! (`E_lo ← (1−p)·E_lo`, `E_hi ← p·E_hi`), and the center only needs the lowest
//! and highest `w + 1` atoms of `W_N`. Each step therefore costs O(w) time and the
//! whole evaluation keeps O(w) numbers alive.
//!
//! With the uniform core `C = Σ_{i=1}^{M} Zᵢ` (width `M`) this evaluates the
//! uniform-plus-binary family in O(NM + M²); other cores (uniform + linear blocks)
//! serve the binary-linear-uniform schemes. Everything here uses the `{0, 1}`
//! convention; the `±1` presentation maps to it through `y ↦ 2y − S`, which leaves
//! the mutual information unchanged.

use crate::entropy::{h2, BitsValue, IntegerPmf};
use crate::error::{domain, Error, Result};
use crate::numeric::{split_entropy, NeumaierSum};

/// Dense pmf of the core noise on `0..=width`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorePmf {
    weights: Vec<f64>,
}

impl CorePmf {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return domain("core pmf needs at least one atom");
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return domain("core pmf has a negative or NaN weight");
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return domain(format!("core pmf sums to {total}, expected 1"));
        }
        Ok(Self { weights })
    }

    /// Core from a sparse pmf supported on non-negative integers.
    pub fn from_pmf(pmf: &IntegerPmf) -> Result<Self> {
        let lo = pmf
            .min_support()
            .ok_or_else(|| Error::Domain("empty pmf".into()))?;
        if lo < 0 {
            return domain("core support must be non-negative");
        }
        let hi = pmf.max_support().unwrap_or(0) as usize;
        let mut weights = vec![0.0; hi + 1];
        for (y, m) in pmf.iter() {
            weights[y as usize] = m;
        }
        Self::new(weights)
    }

    /// Unit mass at zero: an empty core.
    pub fn point_mass() -> Self {
        Self { weights: vec![1.0] }
    }

    /// Pmf of `Σ_{i=1}^{m} Zᵢ`.
    pub fn uniform(m: usize, p: f64) -> Result<Self> {
        Self::uniform_linear(m, 0, p)
    }

    /// Pmf of `Σ_{i=1}^{u} Zᵢ + Σ_{j=1}^{l} j·Z_{u+j}`.
    pub fn uniform_linear(u: usize, l: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("p must lie in [0, 1], got {p}"));
        }
        let mut weights = vec![1.0];
        for shift in std::iter::repeat_n(1, u).chain(1..=l) {
            weights = mix_dense(&weights, shift, p);
        }
        Ok(Self { weights })
    }

    /// Largest support value.
    pub fn width(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Dense two-point convolution `(1−p)·v + p·(v shifted by s)`.
fn mix_dense(v: &[f64], shift: usize, p: f64) -> Vec<f64> {
    let q = 1.0 - p;
    let mut out = vec![0.0; v.len() + shift];
    for (i, &m) in v.iter().enumerate() {
        out[i] += q * m;
        out[i + shift] += p * m;
    }
    out
}

fn ceil_log2(x: u64) -> usize {
    if x <= 1 {
        0
    } else {
        (u64::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Binary steps that must be bootstrapped by explicit convolution before the
/// edge windows separate: `ceil(log2(2w + 2))`.
pub fn bootstrap_threshold(width: usize) -> usize {
    ceil_log2(2 * width as u64 + 2)
}

/// Scaled value `exp(log_scale)·x`, with a zero scale short-circuiting NaNs.
#[inline]
fn rescale(log_scale: f64, reference: f64) -> f64 {
    if log_scale == f64::NEG_INFINITY {
        0.0
    } else {
        (log_scale - reference).exp()
    }
}

/// State of the recursion after `n` binary coefficients.
///
/// The low-side quantities (`noise_low`, `edge_low`) share the running scale
/// `exp(low_log_scale)` and the high-side ones share `exp(high_log_scale)`, so the
/// stored numbers never underflow however many steps are taken.
#[derive(Debug, Clone)]
pub struct RecursionState {
    width: usize,
    n: usize,
    p: f64,
    noise_low: Vec<f64>,
    noise_high: Vec<f64>,
    low_log_scale: f64,
    high_log_scale: f64,
    edge_low: f64,
    edge_high: f64,
    cond_entropy: NeumaierSum,
}

impl RecursionState {
    /// Builds the state at `n` binary steps by explicit convolution.
    pub fn bootstrap(core: &CorePmf, n: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("p must lie in [0, 1], got {p}"));
        }
        if n >= 63 {
            return domain("bootstrap depth too large for explicit convolution");
        }
        let w = core.width();
        let mut noise = core.weights.clone();
        for j in 0..n {
            noise = mix_dense(&noise, 1 << j, p);
        }
        let q = 1.0 - p;
        // Entropy contribution of each outcome t of T = X + W, t = 0..=len.
        let contrib = |t: usize| {
            let a = noise.get(t).map_or(0.0, |&m| q * m);
            let b = if t == 0 { 0.0 } else { p * noise[t - 1] };
            split_entropy(a, b)
        };
        let s_t = noise.len(); // max support of T
        let mut cond_entropy = NeumaierSum::new();
        cond_entropy.extend((0..=s_t).map(contrib));
        let edge_low = (0..=w).map(contrib).sum();
        let edge_high = (s_t - w..=s_t).map(contrib).sum();
        Ok(Self {
            width: w,
            n,
            p,
            noise_low: noise[..=w].to_vec(),
            noise_high: noise[noise.len() - 1 - w..].to_vec(),
            low_log_scale: 0.0,
            high_log_scale: 0.0,
            edge_low,
            edge_high,
            cond_entropy,
        })
    }

    /// Core width `w` (the uniform block size `M` for uniform cores).
    pub fn width(&self) -> usize {
        self.width
    }

    /// Binary coefficients absorbed so far.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `H(X | T_n)` in bits.
    pub fn conditional_entropy(&self) -> f64 {
        self.cond_entropy.value()
    }

    /// Entropy contribution of the lowest `w + 1` outcomes of `T_n`.
    pub fn edge_low(&self) -> f64 {
        self.edge_low * rescale(self.low_log_scale, 0.0)
    }

    /// Entropy contribution of the highest `w + 1` outcomes of `T_n`.
    pub fn edge_high(&self) -> f64 {
        self.edge_high * rescale(self.high_log_scale, 0.0)
    }

    /// Lowest `w + 1` atoms of the noise pmf `W_n`.
    pub fn noise_low(&self) -> Vec<f64> {
        let s = rescale(self.low_log_scale, 0.0);
        self.noise_low.iter().map(|x| x * s).collect()
    }

    /// Highest `w + 1` atoms of the noise pmf `W_n`.
    pub fn noise_high(&self) -> Vec<f64> {
        let s = rescale(self.high_log_scale, 0.0);
        self.noise_high.iter().map(|x| x * s).collect()
    }

    /// Largest support value of `T_n`, `w + 2^n`, when it fits in a `u128`.
    pub fn support_radius(&self) -> Option<u128> {
        1u128
            .checked_shl(self.n as u32)
            .and_then(|s| s.checked_add(self.width as u128))
    }

    /// Mutual information `H(p) − H(X | T_n)`.
    pub fn mutual_information(&self) -> BitsValue {
        let hp = h2(self.p);
        BitsValue((hp - self.conditional_entropy()).clamp(0.0, hp))
    }
}

/// Advances the recursion by one binary coefficient `2^n`.
///
/// Requires `n ≥ ceil(log2(2w + 2))`; shallower states must come from
/// [`RecursionState::bootstrap`].
pub fn recursion_step(mut state: RecursionState) -> Result<RecursionState> {
    let w = state.width;
    if state.n < bootstrap_threshold(w) {
        return Err(Error::Internal(format!(
            "recursion step from n = {} needs n ≥ {} for width {w}; bootstrap deeper",
            state.n,
            bootstrap_threshold(w)
        )));
    }
    let p = state.p;
    let q = 1.0 - p;

    state.cond_entropy.add(-q * state.edge_high());
    state.cond_entropy.add(-p * state.edge_low());

    // Center atoms of W_{n+1} at t = s−1 ..= s+w, index k = t − (s−1):
    // (1−p)·high[k] from the stay branch plus p·low[k−1] from the shifted branch.
    let high_term = state.high_log_scale + q.ln();
    let low_term = state.low_log_scale + p.ln();
    let reference = high_term.max(low_term);
    if reference > f64::NEG_INFINITY {
        let hs = rescale(high_term, reference);
        let ls = rescale(low_term, reference);
        let center_noise = |k: usize| {
            let stay = if k <= w {
                hs * state.noise_high[k]
            } else {
                0.0
            };
            let moved = if k >= 1 {
                ls * state.noise_low[k - 1]
            } else {
                0.0
            };
            stay + moved
        };
        let mut prev = center_noise(0);
        let mut center = 0.0;
        for k in 1..=w + 1 {
            let cur = center_noise(k);
            center += split_entropy(q * cur, p * prev);
            prev = cur;
        }
        state.cond_entropy.add(center * reference.exp());
    }

    state.low_log_scale += q.ln();
    state.high_log_scale += p.ln();
    state.n += 1;
    Ok(state)
}

/// Work counters reported alongside a recursion result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecursionStats {
    /// Binary coefficients absorbed by explicit convolution.
    pub bootstrap_steps: usize,
    /// Binary coefficients absorbed by [`recursion_step`].
    pub recursion_steps: usize,
    /// Largest number of pmf entries alive at once.
    pub peak_atoms: usize,
}

/// `I(X; X + C + Σ_{j=1}^{N} 2^{j−1}·Z_j)` for a core noise `C`.
pub fn core_binary_mi(core: &CorePmf, n: usize, p: f64) -> Result<BitsValue> {
    core_binary_mi_with_stats(core, n, p).map(|(mi, _)| mi)
}

pub fn core_binary_mi_with_stats(
    core: &CorePmf,
    n: usize,
    p: f64,
) -> Result<(BitsValue, RecursionStats)> {
    let n1 = n.min(bootstrap_threshold(core.width()));
    let mut state = RecursionState::bootstrap(core, n1, p)?;
    let peak_atoms = core.width() + (1usize << n1);
    while state.n < n {
        state = recursion_step(state)?;
    }
    let stats = RecursionStats {
        bootstrap_steps: n1,
        recursion_steps: n - n1,
        peak_atoms,
    };
    Ok((state.mutual_information(), stats))
}

/// `I(X; X + Σ_{i=1}^{M} Zᵢ + Σ_{j=1}^{N} 2^{j−1}·Z_{M+j})` in O(NM + M²) time and O(M) space.
pub fn uniform_binary_mi(m: usize, n: usize, p: f64) -> Result<BitsValue> {
    uniform_binary_mi_with_stats(m, n, p).map(|(mi, _)| mi)
}

pub fn uniform_binary_mi_with_stats(
    m: usize,
    n: usize,
    p: f64,
) -> Result<(BitsValue, RecursionStats)> {
    if m == 0 {
        return domain("uniform block size M must be at least 1");
    }
    core_binary_mi_with_stats(&CorePmf::uniform(m, p)?, n, p)
}
