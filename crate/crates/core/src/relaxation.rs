//! The support-constrained relaxation behind the geometric bound.
//!
//! Noise pmfs are written `q = (q₀, …, q_{n+1})` with `q₀ = (1−p)^K` fixed. The objective
//! `Σ_{j=1}^{n+1} g_j(q)` equals `−H(X | X + Q)` in bits, so every value returned here
//! is in those negative-entropy units; add `H(p)` to read it as a bound on mutual
//! information (see [`perturbation_bound_mi`]).
//!
//! The perturbed problem (`q_{n+1} = β(1−β)^{n+1}`, mass `1 − (1−β)^{n+2}`) is solved by
//! the truncated geometric pmf, and its multipliers give a lower bound on the
//! unperturbed optimum `V_n*`.

use crate::entropy::{h2, BitsValue, ModelParams};
use crate::error::{domain, Error, Result};
use crate::numeric::{split_entropy, NeumaierSum, ZERO_PROB};

/// A pmf on `0..=n+1` for one of the truncated problems.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationInstance {
    pub params: ModelParams,
    pub n: usize,
    /// Mass pinned at `q_{n+1}`; zero for the unperturbed problem.
    pub epsilon: f64,
    pub q: Vec<f64>,
}

impl RelaxationInstance {
    pub fn objective(&self) -> Result<f64> {
        relaxed_objective(&self.q, &self.params)
    }

    pub fn total_mass(&self) -> f64 {
        let mut acc = NeumaierSum::new();
        acc.extend(self.q.iter().copied());
        acc.value()
    }
}

/// Lagrange multipliers and stationarity residuals of the perturbed problem.
#[derive(Debug, Clone, PartialEq)]
pub struct KKTCertificate {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    /// Gradient of the Lagrangian at the candidate, for `q₀ … q_{n+1}`.
    pub stationarity_residuals: Vec<f64>,
    pub max_residual: f64,
}

/// `β = (1−p)^K` and `r = 1 − β`.
fn beta_ratio(params: &ModelParams) -> Result<(f64, f64)> {
    params.require_noise()?;
    let beta = (1.0 - params.p()).powi(params.k() as i32);
    Ok((beta, 1.0 - beta))
}

/// `Σ_{j=1}^{len−1} g_j(q)` for a nonnegative sequence `q`.
pub fn relaxed_objective(q: &[f64], params: &ModelParams) -> Result<f64> {
    if let Some(bad) = q.iter().find(|&&x| !(x >= 0.0)) {
        return domain(format!("relaxation entries must be nonnegative, got {bad}"));
    }
    let p = params.p();
    let mut acc = NeumaierSum::new();
    for j in 1..q.len() {
        acc.add(-split_entropy((1.0 - p) * q[j], p * q[j - 1]));
    }
    Ok(acc.value())
}

/// `q_i = β(1−β)^i` for `i = 0..=n+1`.
pub fn kkt_candidate(params: &ModelParams, n: usize) -> Result<RelaxationInstance> {
    let (beta, r) = beta_ratio(params)?;
    let q: Vec<f64> = (0..n + 2).map(|i| beta * r.powi(i as i32)).collect();
    let epsilon = q[n + 1];
    Ok(RelaxationInstance {
        params: *params,
        n,
        epsilon,
        q,
    })
}

fn multipliers(p: f64, r: f64) -> (f64, f64, f64) {
    let d = (1.0 - p) * r + p;
    let stay = if r > 0.0 {
        (1.0 - p) * ((1.0 - p) * r / d).log2()
    } else {
        0.0
    };
    let jump = p * (p / d).log2();
    (-jump - stay, stay, jump)
}

fn log_share(x: f64, other: f64) -> f64 {
    (x / (x + other)).log2()
}

/// Partial derivatives of the objective at `q`, coordinates `0..len`.
fn objective_gradient(q: &[f64], p: f64, out: &mut [f64]) {
    let last = q.len() - 1;
    for j in 0..=last {
        let mut g = 0.0;
        if j < last {
            g += p * log_share(p * q[j], (1.0 - p) * q[j + 1]);
        }
        if j > 0 {
            g += (1.0 - p) * log_share((1.0 - p) * q[j], p * q[j - 1]);
        }
        out[j] = g;
    }
}

/// Multipliers and residuals at the truncated geometric candidate.
pub fn kkt_certificate(params: &ModelParams, n: usize) -> Result<KKTCertificate> {
    let p = params.p();
    if p <= 0.0 {
        return domain("the KKT certificate needs p > 0");
    }
    let cand = kkt_candidate(params, n)?;
    let (_, r) = beta_ratio(params)?;
    let (v1, v2, v3) = multipliers(p, r);
    let mut grad = vec![0.0; n + 2];
    objective_gradient(&cand.q, p, &mut grad);
    let residuals: Vec<f64> = grad
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut v = g + v1;
            if j == 0 {
                v += v2;
            }
            if j == n + 1 {
                v += v3;
            }
            v
        })
        .collect();
    let max_residual = residuals.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(KKTCertificate {
        v1,
        v2,
        v3,
        stationarity_residuals: residuals,
        max_residual,
    })
}

/// Value of the perturbed problem at its solution, `U_n*`.
pub fn perturbed_optimum(params: &ModelParams, n: usize) -> Result<f64> {
    kkt_candidate(params, n)?.objective()
}

/// Lower bound on the optimum of the perturbed problem with `q_{n+1} = ε` instead of the
/// geometric value.
pub fn perturbation_bound_eps(params: &ModelParams, n: usize, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return domain("epsilon must be positive");
    }
    let cert = kkt_certificate(params, n)?;
    let (beta, r) = beta_ratio(params)?;
    let u = perturbed_optimum(params, n)?;
    let rn1 = r.powi(n as i32 + 1);
    Ok(u - cert.v1 * rn1 * r - cert.v3 * (epsilon - beta * rn1))
}

/// Lower bound on `V_n*`, the optimum of the unperturbed truncated problem:
/// `U_n* − v₁(1−β)^{n+2} + v₃β(1−β)^{n+1}`.
pub fn perturbation_bound(params: &ModelParams, n: usize) -> Result<f64> {
    let cert = kkt_certificate(params, n)?;
    let (beta, r) = beta_ratio(params)?;
    let u = perturbed_optimum(params, n)?;
    let rn1 = r.powi(n as i32 + 1);
    Ok(u - cert.v1 * rn1 * r + cert.v3 * beta * rn1)
}

/// [`perturbation_bound`] shifted by `H(p)`, i.e. read as a bound on mutual information.
pub fn perturbation_bound_mi(params: &ModelParams, n: usize) -> Result<BitsValue> {
    Ok(BitsValue(h2(params.p()) + perturbation_bound(params, n)?))
}

/// `lim U_n* = (1−p)(1−β)·log2((1−p)(1−β)/D) + p·log2(p/D)` with `D = (1−p)(1−β) + p`.
///
/// The correction terms of [`perturbation_bound`] cancel the truncation loss of `U_n*`
/// exactly, so the bound equals this limit for every `n`.
pub fn perturbation_limit(params: &ModelParams) -> Result<f64> {
    let (_, r) = beta_ratio(params)?;
    let p = params.p();
    if p <= 0.0 {
        return domain("the perturbation bound needs p > 0");
    }
    let (_, stay, jump) = multipliers(p, r);
    Ok(stay * r + jump)
}

/// Approximate minimizer of the unperturbed truncated problem.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationSolution {
    /// Full pmf `q₀ … q_{n+1}` with `q₀ = β` and `q_{n+1} = 0`.
    pub q: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    /// Sup-norm of the projected-gradient step at the returned point.
    pub residual: f64,
}

const MAX_ITERATIONS: usize = 1_000;
const ARMIJO: f64 = 1e-4;

/// The truncated geometric pmf renormalized to the unperturbed constraints.
pub fn renormalized_candidate(params: &ModelParams, n: usize) -> Result<Vec<f64>> {
    let cand = kkt_candidate(params, n)?;
    let beta = cand.q[0];
    let mut q = cand.q;
    q[n + 1] = 0.0;
    let inner: f64 = q[1..=n].iter().sum();
    if inner > 0.0 {
        let scale = (1.0 - beta) / inner;
        q[1..=n].iter_mut().for_each(|x| *x *= scale);
    }
    Ok(q)
}

/// Euclidean projection onto `{x : x_i ≥ floor, Σ x_i = mass}`.
fn project(v: &[f64], mass: f64, floor: f64, out: &mut [f64]) {
    let target = mass - floor * v.len() as f64;
    let mut u: Vec<f64> = v.iter().map(|x| x - floor).collect();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, ui) in u.iter().enumerate() {
        cum += ui;
        let t = (cum - target) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    for (o, x) in out.iter_mut().zip(v) {
        *o = (x - floor - theta).max(0.0) + floor;
    }
}

/// Solves the tridiagonal system with diagonal `d`, off-diagonal `e` (`e[i]` couples `i`
/// and `i+1`) for each right-hand side. `None` if a pivot is not positive.
fn solve_tridiagonal(d: &[f64], e: &[f64], rhs: &[&[f64]]) -> Option<Vec<Vec<f64>>> {
    let n = d.len();
    let mut c = vec![0.0; n];
    let mut piv = vec![0.0; n];
    for i in 0..n {
        piv[i] = d[i] - if i > 0 { e[i - 1] * c[i - 1] } else { 0.0 };
        if !(piv[i] > 0.0) {
            return None;
        }
        if i + 1 < n {
            c[i] = e[i] / piv[i];
        }
    }
    let solve = |r: &[f64]| {
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[i] = (r[i] - if i > 0 { e[i - 1] * y[i - 1] } else { 0.0 }) / piv[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            y[i] -= c[i] * y[i + 1];
        }
        y
    };
    Some(rhs.iter().map(|r| solve(r)).collect())
}

/// Hessian of the objective restricted to `q₁ … q_n`, as (diagonal, off-diagonal).
fn objective_hessian(q: &[f64], n: usize, p: f64) -> (Vec<f64>, Vec<f64>) {
    let inv_ln2 = std::f64::consts::LOG2_E;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    // g_j couples q_j (weight 1−p) with q_{j−1} (weight p); g_{n+1} vanishes since q_{n+1} = 0.
    for j in 1..=n {
        let a = (1.0 - p) * q[j];
        let b = p * q[j - 1];
        let s = a + b;
        diag[j - 1] += (1.0 - p) * (1.0 - p) * b / (a * s) * inv_ln2;
        if j >= 2 {
            diag[j - 2] += p * p * a / (b * s) * inv_ln2;
            off[j - 2] -= p * (1.0 - p) / s * inv_ln2;
        }
    }
    (diag, off)
}

/// Minimizes the objective over `q₁ … q_n` with `q₀ = β`, `q_{n+1} = 0` and total mass 1,
/// started from [`renormalized_candidate`].
///
/// The objective is a chain sum, so its Hessian is tridiagonal and each damped Newton
/// step on the mass hyperplane costs `O(n)`. Stops once the projected-gradient step
/// `‖P(x − ∇f) − x‖∞` is below `tol`.
pub fn numeric_relaxation_solve(
    params: &ModelParams,
    n: usize,
    tol: f64,
) -> Result<RelaxationSolution> {
    if n < 1 {
        return domain("the relaxation solver needs n ≥ 1");
    }
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let p = params.p();
    let mut q = renormalized_candidate(params, n)?;
    let mass = 1.0 - q[0];
    let f = |q: &[f64]| -> f64 {
        let mut acc = NeumaierSum::new();
        for j in 1..q.len() {
            acc.add(-split_entropy((1.0 - p) * q[j], p * q[j - 1]));
        }
        acc.value()
    };
    if n == 1 || p == 0.0 || mass <= ZERO_PROB {
        return Ok(RelaxationSolution {
            objective: f(&q),
            q,
            iterations: 0,
            residual: 0.0,
        });
    }

    let mut full_grad = vec![0.0; n + 2];
    let mut scratch = vec![0.0; n];
    let mut residual_of = |q: &[f64], full: &mut [f64]| -> f64 {
        objective_gradient(q, p, full);
        let moved: Vec<f64> = (1..=n).map(|j| q[j] - full[j]).collect();
        project(&moved, mass, 0.0, &mut scratch);
        (1..=n).fold(0.0f64, |m, j| m.max((scratch[j - 1] - q[j]).abs()))
    };

    let mut fx = f(&q);
    let mut residual = residual_of(&q, &mut full_grad);
    let mut trial = q.clone();
    let ones = vec![1.0; n];
    for it in 0..MAX_ITERATIONS {
        if residual < tol {
            return Ok(RelaxationSolution {
                q,
                objective: fx,
                iterations: it,
                residual,
            });
        }
        let grad = &full_grad[1..=n];
        let (diag, off) = objective_hessian(&q, n, p);
        let dir: Vec<f64> = match solve_tridiagonal(&diag, &off, &[grad, &ones]) {
            Some(sol) => {
                let mu = sol[0].iter().sum::<f64>() / sol[1].iter().sum::<f64>();
                sol[0]
                    .iter()
                    .zip(&sol[1])
                    .map(|(a, b)| mu * b - a)
                    .collect()
            }
            None => {
                let mean = grad.iter().sum::<f64>() / n as f64;
                grad.iter().map(|g| mean - g).collect()
            }
        };
        // Along the Newton direction the slope is −dᵀHd; forming it from the gradient
        // instead would cancel against the large common offset of the gradient entries.
        let decrement: f64 = (0..n)
            .map(|i| {
                let mut hd = diag[i] * dir[i];
                if i > 0 {
                    hd += off[i - 1] * dir[i - 1];
                }
                if i + 1 < n {
                    hd += off[i] * dir[i + 1];
                }
                dir[i] * hd
            })
            .sum();
        if !(decrement > 0.0) {
            break;
        }
        let slope = -decrement;
        let mut t: f64 = 1.0;
        for (d, x) in dir.iter().zip(&q[1..=n]) {
            if *d < 0.0 {
                t = t.min(-0.99 * x / d);
            }
        }
        // Below this decrement the objective cannot resolve the step, and the iterate is
        // already inside the region of quadratic convergence.
        let resolvable = decrement > 1e3 * f64::EPSILON * fx.abs().max(1.0);
        let mut accepted = !resolvable;
        if resolvable {
            for _ in 0..80 {
                for j in 1..=n {
                    trial[j] = q[j] + t * dir[j - 1];
                }
                let ft = f(&trial);
                if ft <= fx + ARMIJO * t * slope {
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
        } else {
            for j in 1..=n {
                trial[j] = q[j] + t * dir[j - 1];
            }
        }
        if !accepted {
            break;
        }
        fx = f(&trial);
        q.copy_from_slice(&trial);
        residual = residual_of(&q, &mut full_grad);
    }
    if residual < tol {
        return Ok(RelaxationSolution {
            q,
            objective: fx,
            iterations: MAX_ITERATIONS,
            residual,
        });
    }
    Err(Error::Convergence {
        iterations: MAX_ITERATIONS,
        residual,
        objective: fx,
    })
}
