//! Searches over integer mixing schemes.
//!
//! All searches work on canonical vectors: `α₀ = 1`, `α₁ = 1`, and each later
//! coefficient at most `1 + Σ_{i=1}^{j−1} αᵢ`. Beyond that cap the shifted copy of the
//! noise support no longer overlaps the old one, so larger values cannot lower the
//! mutual information. Brute force additionally sorts the tail, which loses nothing
//! because the objective is symmetric in the noise coefficients.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::entropy::{
    conditional_entropy_atoms, h2, mix_shift_atoms, mutual_information, BitsValue, MixingScheme,
    ModelParams, DEFAULT_SUPPORT_GUARD,
};
use crate::error::{usage, Error, Result};
use crate::schemes::{blu_mi_recursion, blu_scheme, BluParams};

/// Two objective values closer than this are treated as a tie.
pub const TIE_TOL: f64 = 1e-13;

/// Largest `K` accepted by [`brute_force_optimal`] unless the caller raises it.
pub const DEFAULT_MAX_K_GUARD: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub scheme: MixingScheme,
    pub mi: BitsValue,
    /// Candidate vectors whose mutual information was evaluated.
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BLUSearchResult {
    pub l_star: usize,
    pub u_star: usize,
    pub mi: BitsValue,
    pub scheme: MixingScheme,
}

/// How [`blu_search_with`] evaluates each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BluEvaluator {
    #[default]
    Recursion,
    Direct,
}

type Atoms = Vec<(i64, f64)>;

fn check_atoms(atoms: &Atoms) -> Result<()> {
    if atoms.len() > DEFAULT_SUPPORT_GUARD {
        return Err(Error::Resource {
            atoms: atoms.len(),
            guard: DEFAULT_SUPPORT_GUARD,
        });
    }
    Ok(())
}

/// Greedy coefficient choice: each `αⱼ` minimizes the mutual information of the partial
/// vector, smallest value on ties. The returned tail is sorted; the order in which the
/// coefficients were chosen does not affect the objective.
pub fn greedy_search(params: &ModelParams) -> Result<SearchResult> {
    params.require_noise()?;
    let p = params.p();
    let hp = h2(p);
    let mut alpha = vec![1u64, 1];
    let mut atoms = mix_shift_atoms(&[(0, 1.0)], 1, p);
    let mut prefix: u64 = 1;
    let mut nodes = 1u64;

    for _ in 2..=params.k() {
        let cap = 1 + prefix;
        // Each candidate is scored by the conditional entropy it leaves; the best
        // choice has the largest value and, among ties, the smallest coefficient.
        let scores: Vec<f64> = (1..=cap)
            .into_par_iter()
            .map(|a| conditional_entropy_atoms(&mix_shift_atoms(&atoms, a as i64, p), 1, p))
            .collect();
        nodes += cap;
        let mut best = 0usize;
        for (i, &s) in scores.iter().enumerate().skip(1) {
            if s > scores[best] + TIE_TOL {
                best = i;
            }
        }
        let a = best as u64 + 1;
        atoms = mix_shift_atoms(&atoms, a as i64, p);
        check_atoms(&atoms)?;
        alpha.push(a);
        prefix += a;
    }

    let hc = conditional_entropy_atoms(&atoms, 1, p);
    alpha[1..].sort_unstable();
    Ok(SearchResult {
        scheme: MixingScheme::from_vec_unchecked(alpha),
        mi: BitsValue((hp - hc).clamp(0.0, hp)),
        nodes_explored: nodes,
    })
}

/// Best leaf of one subtree: tail coefficients and the conditional entropy they leave.
#[derive(Debug, Clone)]
struct Leaf {
    tail: Vec<u64>,
    cond: f64,
}

/// `true` if `cand` should replace `best`: strictly lower mutual information, or a tie
/// with a lexicographically smaller vector.
fn better(cand: &Leaf, best: &Leaf) -> bool {
    if cand.cond > best.cond + TIE_TOL {
        return true;
    }
    if cand.cond < best.cond - TIE_TOL {
        return false;
    }
    cand.tail.cmp(&best.tail) == Ordering::Less
}

struct Dfs<'a> {
    p: f64,
    k: usize,
    tail: Vec<u64>,
    /// `levels[d]` holds the noise pmf after `d` coefficients.
    levels: &'a mut Vec<Atoms>,
    best: Option<Leaf>,
    nodes: u64,
}

impl Dfs<'_> {
    fn run(&mut self, last: u64, prefix: u64) {
        let depth = self.tail.len();
        if depth == self.k {
            self.nodes += 1;
            let cond = conditional_entropy_atoms(&self.levels[depth], 1, self.p);
            let leaf = Leaf {
                tail: self.tail.clone(),
                cond,
            };
            if self.best.as_ref().is_none_or(|b| better(&leaf, b)) {
                self.best = Some(leaf);
            }
            return;
        }
        for a in last..=prefix + 1 {
            let next = mix_shift_atoms(&self.levels[depth], a as i64, self.p);
            if self.levels.len() <= depth + 1 {
                self.levels.push(next);
            } else {
                self.levels[depth + 1] = next;
            }
            self.tail.push(a);
            self.run(a, prefix + a);
            self.tail.pop();
        }
    }
}

/// Canonical prefixes at the given depth, in lexicographic order.
fn prefixes(depth: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![1u64]];
    for _ in 1..depth {
        let mut next = Vec::new();
        for v in &out {
            let last = *v.last().unwrap();
            let sum: u64 = v.iter().sum();
            for a in last..=sum + 1 {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Exhaustive minimum over canonical vectors with a sorted tail. Ties go to the
/// lexicographically smallest vector.
pub fn brute_force_optimal(params: &ModelParams, max_k_guard: usize) -> Result<SearchResult> {
    params.require_noise()?;
    let k = params.k();
    if k > max_k_guard {
        return usage(format!(
            "brute force is limited to K ≤ {max_k_guard}, got K = {k}; use greedy or blu instead"
        ));
    }
    let p = params.p();
    let split = k.min(4);
    let roots = prefixes(split);
    let results: Vec<(Option<Leaf>, u64)> = roots
        .par_iter()
        .map(|root| {
            let mut levels = vec![vec![(0i64, 1.0)]];
            for &a in root {
                let next = mix_shift_atoms(levels.last().unwrap(), a as i64, p);
                levels.push(next);
            }
            let mut dfs = Dfs {
                p,
                k,
                tail: root.clone(),
                levels: &mut levels,
                best: None,
                nodes: 0,
            };
            let last = *root.last().unwrap();
            let sum = root.iter().sum();
            dfs.run(last, sum);
            (dfs.best, dfs.nodes)
        })
        .collect();

    let mut best: Option<Leaf> = None;
    let mut nodes = 0;
    for (leaf, n) in results {
        nodes += n;
        if let Some(leaf) = leaf {
            if best.as_ref().is_none_or(|b| better(&leaf, b)) {
                best = Some(leaf);
            }
        }
    }
    let best = best.ok_or_else(|| Error::Internal("empty search space".into()))?;
    let hp = h2(p);
    let mut alpha = vec![1u64];
    alpha.extend(best.tail);
    Ok(SearchResult {
        scheme: MixingScheme::from_vec_unchecked(alpha),
        mi: BitsValue((hp - best.cond).clamp(0.0, hp)),
        nodes_explored: nodes,
    })
}

/// Number of canonical sorted vectors of length `K`, the leaf count of [`brute_force_optimal`].
pub fn canonical_count(k: usize) -> u64 {
    fn go(rem: usize, last: u64, sum: u64) -> u64 {
        if rem == 0 {
            return 1;
        }
        (last..=sum + 1).map(|a| go(rem - 1, a, sum + a)).sum()
    }
    if k == 0 {
        return 1;
    }
    go(k - 1, 1, 1)
}

/// Calls `visit` on every canonical sorted vector `[1, 1, …]` of length `K + 1`.
pub fn for_each_canonical(k: usize, mut visit: impl FnMut(&[u64])) {
    fn go(alpha: &mut Vec<u64>, k: usize, sum: u64, visit: &mut dyn FnMut(&[u64])) {
        if alpha.len() == k + 1 {
            visit(alpha);
            return;
        }
        let last = *alpha.last().unwrap();
        let lo = if alpha.len() == 1 { 1 } else { last };
        for a in lo..=sum + 1 {
            alpha.push(a);
            go(alpha, k, sum + a, visit);
            alpha.pop();
        }
    }
    let mut alpha = vec![1u64];
    go(&mut alpha, k, 0, &mut visit);
}

/// Best binary-linear-uniform scheme over all `U + L ≤ K`, evaluated with the recursion.
pub fn blu_search(params: &ModelParams) -> Result<BLUSearchResult> {
    blu_search_with(params, BluEvaluator::Recursion)
}

/// [`blu_search`] with an explicit evaluator. Ties go to smaller `U`, then smaller `L`.
pub fn blu_search_with(params: &ModelParams, evaluator: BluEvaluator) -> Result<BLUSearchResult> {
    params.require_noise()?;
    let k = params.k();
    let grid: Vec<(usize, usize)> = (0..=k)
        .flat_map(|u| (0..=k - u).map(move |l| (u, l)))
        .collect();
    let values: Vec<Result<BitsValue>> = grid
        .par_iter()
        .map(|&(u, l)| {
            let blu = BluParams::new(k, u, l)?;
            match evaluator {
                BluEvaluator::Recursion => blu_mi_recursion(&blu, params.p()),
                BluEvaluator::Direct => mutual_information(&blu_scheme(&blu)?, params),
            }
        })
        .collect();

    let mut best: Option<(usize, usize, f64)> = None;
    for (&(u, l), v) in grid.iter().zip(values) {
        let v = v?.value();
        if best.is_none_or(|(_, _, b)| v < b - TIE_TOL) {
            best = Some((u, l, v));
        }
    }
    let (u, l, mi) = best.ok_or_else(|| Error::Internal("empty BLU grid".into()))?;
    Ok(BLUSearchResult {
        l_star: l,
        u_star: u,
        mi: BitsValue(mi),
        scheme: blu_scheme(&BluParams::new(k, u, l)?)?,
    })
}
