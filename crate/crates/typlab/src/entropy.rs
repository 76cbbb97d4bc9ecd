//! Entropy functionals, type counting, and large-deviation rate functions.
//!
//! The central objects are the Shannon entropy `h(μ)`, the Kullback–Leibler
//! divergence `I(μ|p)` (the Sanov rate function for empirical measures), the
//! exact multinomial count `N(μ)` of a type class together with its
//! probability `W`, and the energy-constrained entropy `s_C(u|p)` with its
//! free-energy Fenchel dual. Rate-function sign conventions follow the
//! large-deviation usage: `I` is convex and non-negative with minimum 0 at
//! `μ = p`; the Boltzmann entropy `s_B(μ|p) = −I(μ|p)` is concave and
//! non-positive.

use num_bigint::BigUint;
use num_traits::One;

use crate::prob::{check_same_alphabet, Alphabet, DiscreteDistribution, LogBase, SymbolString};
use crate::{Error, Result};

/// Shannon entropy `−Σ μ(a) log μ(a)` with `0·log 0 := 0`.
pub fn shannon_entropy(mu: &DiscreteDistribution, base: LogBase) -> f64 {
    mu.weights()
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * base.log(w))
        .sum()
}

/// Kullback–Leibler divergence `Σ μ(a) log(μ(a)/p(a))`.
///
/// Conventions: `0·log(0/x) = 0`; the result is `+inf` when `μ` is not
/// absolutely continuous with respect to `p`.
pub fn kl_divergence(
    mu: &DiscreteDistribution,
    p: &DiscreteDistribution,
    base: LogBase,
) -> Result<f64> {
    check_same_alphabet(mu, p)?;
    let mut total = 0.0;
    for (&m, &q) in mu.weights().iter().zip(p.weights()) {
        if m == 0.0 {
            continue;
        }
        if q == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += m * base.log(m / q);
    }
    // Tiny negative values can appear from rounding when mu == p.
    Ok(total.max(0.0))
}

/// `ln n!` — exact summation below 1024, Stirling series above.
///
/// The two branches agree to ~1e-13 relative where they meet; the crossover
/// against the exact big-integer path is covered by a test at N = 2000.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n < 1024 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    let x2 = x * x;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x * x2 * x2)
}

/// Natural log of a positive big integer, via its top 64 bits.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        let v: u64 = n.iter_u64_digits().next().unwrap_or(0);
        return (v as f64).ln();
    }
    let top = n >> (bits - 64);
    let v: u64 = top.iter_u64_digits().next().unwrap();
    (v as f64).ln() + (bits - 64) as f64 * std::f64::consts::LN_2
}

/// An integer type vector `μ'` with `Σ μ'(a) = N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeVector {
    alphabet: Alphabet,
    counts: Vec<u64>,
    n: u64,
}

impl TypeVector {
    pub fn new(alphabet: Alphabet, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != alphabet.size() {
            return Err(Error::AlphabetMismatch(format!(
                "{} counts for alphabet of size {}",
                counts.len(),
                alphabet.size()
            )));
        }
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(TypeVector {
            alphabet,
            counts,
            n,
        })
    }

    /// The type of a concrete string.
    pub fn of_string(sigma: &SymbolString) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut counts = vec![0u64; sigma.alphabet().size()];
        for &s in sigma.symbols() {
            counts[s as usize] += 1;
        }
        Ok(TypeVector {
            alphabet: sigma.alphabet().clone(),
            counts,
            n: sigma.len() as u64,
        })
    }

    /// Nearest type in `Prob_N(A)` to a target measure (largest-remainder
    /// rounding, so the counts always sum to `N` exactly).
    pub fn nearest(mu: &DiscreteDistribution, n: u64) -> Self {
        let scaled: Vec<f64> = mu.weights().iter().map(|&w| w * n as f64).collect();
        let mut counts: Vec<u64> = scaled.iter().map(|&x| x.floor() as u64).collect();
        let mut short = n - counts.iter().sum::<u64>();
        let mut rema: Vec<(usize, f64)> = scaled
            .iter()
            .enumerate()
            .map(|(i, &x)| (i, x - x.floor()))
            .collect();
        rema.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        let mut k = 0;
        while short > 0 {
            counts[rema[k % rema.len()].0] += 1;
            short -= 1;
            k += 1;
        }
        TypeVector {
            alphabet: mu.alphabet().clone(),
            counts,
            n,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn induced_measure(&self) -> DiscreteDistribution {
        let w: Vec<f64> = self.counts.iter().map(|&c| c as f64).collect();
        DiscreteDistribution::new(self.alphabet.clone(), &w).unwrap()
    }
}

/// Output of [`boltzmann_counting`]. Logs are in nats.
#[derive(Debug, Clone)]
pub struct BoltzmannCounting {
    /// `N(μ) = N! / Π μ'(a)!` — exact for `N ≤ 2000`, `None` beyond.
    pub exact_count: Option<BigUint>,
    /// `ln N(μ)`.
    pub ln_count: f64,
    /// `ln W^N_p(μ) = ln N(μ) + Σ μ'(a) ln p(a)`; `-inf` if `μ` is not
    /// absolutely continuous w.r.t. `p`.
    pub ln_w: f64,
    /// `(1/N) ln W`.
    pub finite_rate: f64,
    /// `s_B(μ|p) = −I(μ|p)`, the `N → ∞` limit of `finite_rate`.
    pub limit_rate: f64,
}

impl BoltzmannCounting {
    /// `W` as a probability; underflows to 0 for large `N`, use `ln_w` there.
    pub fn w_prob(&self) -> f64 {
        self.ln_w.exp()
    }
}

/// Size and probability of the type class of `μ'` under the Bernoulli
/// measure of `p`.
pub fn boltzmann_counting(tv: &TypeVector, p: &DiscreteDistribution) -> Result<BoltzmannCounting> {
    check_same_alphabet(&tv.induced_measure(), p)?;
    let n = tv.n();
    let exact_count = if n <= 2000 {
        let mut num = factorial_big(n);
        for &c in tv.counts() {
            num /= factorial_big(c);
        }
        Some(num)
    } else {
        None
    };
    let ln_count = match &exact_count {
        Some(c) => ln_biguint(c),
        None => {
            ln_factorial(n) - tv.counts().iter().map(|&c| ln_factorial(c)).sum::<f64>()
        }
    };
    let mut ln_w = ln_count;
    for (&c, &w) in tv.counts().iter().zip(p.weights()) {
        if c == 0 {
            continue;
        }
        if w == 0.0 {
            ln_w = f64::NEG_INFINITY;
            break;
        }
        ln_w += c as f64 * w.ln();
    }
    let mu = tv.induced_measure();
    let limit_rate = -kl_divergence(&mu, p, LogBase::E)?;
    Ok(BoltzmannCounting {
        exact_count,
        ln_count,
        ln_w,
        finite_rate: ln_w / n as f64,
        limit_rate,
    })
}

fn factorial_big(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Infimum of the Sanov rate function over a finite grid of measures.
#[derive(Debug, Clone)]
pub struct SanovRate {
    /// `I(Γ|p) = inf_{μ ∈ Γ} I(μ|p)`.
    pub rate: f64,
    /// Index of the minimizer in the grid (first index on ties).
    pub argmin: usize,
}

pub fn sanov_rate(
    gamma: &[DiscreteDistribution],
    p: &DiscreteDistribution,
    base: LogBase,
) -> Result<SanovRate> {
    if gamma.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut best = f64::INFINITY;
    let mut argmin = 0;
    for (i, mu) in gamma.iter().enumerate() {
        let r = kl_divergence(mu, p, base)?;
        if r < best {
            best = r;
            argmin = i;
        }
    }
    Ok(SanovRate { rate: best, argmin })
}

/// All measures in `Prob_m(A)` (barycentric grid with denominator `m`).
pub fn simplex_grid(alphabet: &Alphabet, m: u64) -> Vec<DiscreteDistribution> {
    let q = alphabet.size();
    let mut out = Vec::new();
    let mut counts = vec![0u64; q];
    fill_compositions(&mut counts, 0, m, alphabet, &mut out);
    out
}

fn fill_compositions(
    counts: &mut Vec<u64>,
    idx: usize,
    remaining: u64,
    alphabet: &Alphabet,
    out: &mut Vec<DiscreteDistribution>,
) {
    if idx == counts.len() - 1 {
        counts[idx] = remaining;
        let w: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        out.push(DiscreteDistribution::new(alphabet.clone(), &w).unwrap());
        return;
    }
    for c in 0..=remaining {
        counts[idx] = c;
        fill_compositions(counts, idx + 1, remaining - c, alphabet, out);
    }
}

/// Log-partition form of the free energy: `f(β|p) = ln Σ_a p(a) e^{−β·a}`.
///
/// With this form `f(0|p) = 0` for every `p`, and the entropy
/// `s_C(u|p)` is recovered as `inf_β { βu + f(β|p) }`.
pub fn free_energy(p: &DiscreteDistribution, energy_levels: &[f64], beta: f64) -> f64 {
    // log-sum-exp for safety at large |beta|.
    let exps: Vec<f64> = energy_levels.iter().map(|&a| -beta * a).collect();
    let m = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = p
        .weights()
        .iter()
        .zip(&exps)
        .map(|(&w, &e)| w * (e - m).exp())
        .sum();
    m + s.ln()
}

/// One point of the Cramér profile (all values in nats).
#[derive(Debug, Clone)]
pub struct CramerPoint {
    pub u: f64,
    /// `s_C(u|p)` from the primal constrained maximization over the simplex.
    pub s_c: f64,
    /// The same quantity from the 1-D Fenchel dual `inf_β {βu + f(β|p)}`.
    pub s_c_dual: f64,
    pub duality_gap: f64,
    /// Minimizing `β` of the dual.
    pub beta: f64,
    /// Gibbs measure at that `β` (the dual witness).
    pub gibbs_witness: Vec<f64>,
    /// Maximizer found by the primal route.
    pub primal_witness: Vec<f64>,
}

/// Energy-constrained entropy `s_C(u|p) = sup { s_B(μ|p) : Σ μ(a)·a = u }`,
/// computed twice: by direct concave maximization over the constrained
/// simplex, and independently through the free-energy transform.
pub fn cramer_profile(
    u: f64,
    p: &DiscreteDistribution,
    energy_levels: &[f64],
) -> Result<CramerPoint> {
    let q = p.size();
    if energy_levels.len() != q {
        return Err(Error::AlphabetMismatch("energy levels".into()));
    }
    if !p.is_strictly_positive() {
        return Err(Error::InvalidDistribution(
            "cramer_profile needs strictly positive p".into(),
        ));
    }
    let lo = energy_levels.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = energy_levels
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    if u < lo || u > hi {
        return Err(Error::OutOfRange(format!("u = {u} outside [{lo}, {hi}]")));
    }

    // Hull boundary: the feasible set degenerates to the sub-simplex of
    // extreme-energy symbols; the maximum of s_B there is ln Σ p(a).
    let hull_tol = 1e-12 * (1.0 + hi.abs() + lo.abs());
    if u - lo < hull_tol || hi - u < hull_tol {
        let target = if u - lo < hull_tol { lo } else { hi };
        let mass: f64 = p
            .weights()
            .iter()
            .zip(energy_levels)
            .filter(|(_, &a)| (a - target).abs() < hull_tol)
            .map(|(&w, _)| w)
            .sum();
        let witness: Vec<f64> = energy_levels
            .iter()
            .zip(p.weights())
            .map(|(&a, &w)| {
                if (a - target).abs() < hull_tol {
                    w / mass
                } else {
                    0.0
                }
            })
            .collect();
        let s = mass.ln();
        let (beta, dual, gibbs) = dual_minimize(u, p, energy_levels);
        return Ok(CramerPoint {
            u,
            s_c: s,
            s_c_dual: dual,
            duality_gap: (s - dual).abs(),
            beta,
            gibbs_witness: gibbs,
            primal_witness: witness,
        });
    }

    let primal_witness = primal_maximize(u, p, energy_levels)?;
    let mu = DiscreteDistribution::new(p.alphabet().clone(), &primal_witness)?;
    let s_c = -kl_divergence(&mu, p, LogBase::E)?;
    let (beta, s_c_dual, gibbs_witness) = dual_minimize(u, p, energy_levels);
    Ok(CramerPoint {
        u,
        s_c,
        s_c_dual,
        duality_gap: (s_c - s_c_dual).abs(),
        beta,
        gibbs_witness,
        primal_witness: primal_witness.to_vec(),
    })
}

/// Golden-section search for `inf_β { βu + f(β|p) }` on `[-50, 50]`.
fn dual_minimize(u: f64, p: &DiscreteDistribution, levels: &[f64]) -> (f64, f64, Vec<f64>) {
    let obj = |beta: f64| beta * u + free_energy(p, levels, beta);
    let (mut a, mut b) = (-50.0f64, 50.0f64);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (obj(c), obj(d));
    while (b - a) > 1e-10 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = obj(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = obj(d);
        }
    }
    let beta = 0.5 * (a + b);
    let f = free_energy(p, levels, beta);
    let z: f64 = p
        .weights()
        .iter()
        .zip(levels)
        .map(|(&w, &e)| w * (-beta * e - f).exp())
        .sum();
    let gibbs: Vec<f64> = p
        .weights()
        .iter()
        .zip(levels)
        .map(|(&w, &e)| w * (-beta * e - f).exp() / z)
        .collect();
    (beta, obj(beta), gibbs)
}

/// Primal route: maximize `−Σ μ ln(μ/p)` over `{μ ≥ 0, Σμ = 1, Σμ·a = u}`
/// with a projected Newton method on a null-space parametrization of the
/// two linear constraints. Never touches the Gibbs form, so it stays an
/// independent check of the dual.
fn primal_maximize(u: f64, p: &DiscreteDistribution, levels: &[f64]) -> Result<Vec<f64>> {
    let q = p.size();
    let w = p.weights();

    // Interior feasible start: mix the flat measure toward the extreme
    // vertex on the side of u.
    let abar: f64 = levels.iter().sum::<f64>() / q as f64;
    let mut mu: Vec<f64> = vec![1.0 / q as f64; q];
    if (u - abar).abs() > 1e-15 {
        let k = if u > abar {
            argmax(levels)
        } else {
            argmin(levels)
        };
        let t = (u - abar) / (levels[k] - abar);
        if !(0.0..1.0).contains(&t) {
            return Err(Error::OutOfRange(format!("u = {u} not interior")));
        }
        for (i, m) in mu.iter_mut().enumerate() {
            *m = (1.0 - t) * (1.0 / q as f64) + if i == k { t } else { 0.0 };
        }
    }
    if q == 2 {
        // The constraints pin mu exactly.
        let m1 = (u - levels[0]) / (levels[1] - levels[0]);
        return Ok(vec![1.0 - m1, m1]);
    }

    // Null-space basis of [1ᵀ; aᵀ]: one vector per free column.
    let jstar = (0..q)
        .filter(|&j| j != 0)
        .max_by(|&a, &b| {
            (levels[a] - levels[0])
                .abs()
                .partial_cmp(&(levels[b] - levels[0]).abs())
                .unwrap()
        })
        .unwrap();
    if (levels[jstar] - levels[0]).abs() < 1e-14 {
        return Err(Error::OutOfRange("all energy levels equal".into()));
    }
    let free: Vec<usize> = (0..q).filter(|&j| j != 0 && j != jstar).collect();
    let dim = free.len();
    let mut basis = vec![vec![0.0f64; q]; dim];
    for (v, &j) in basis.iter_mut().zip(&free) {
        v[j] = 1.0;
        v[jstar] = -(levels[j] - levels[0]) / (levels[jstar] - levels[0]);
        v[0] = -1.0 - v[jstar];
    }

    let grad = |mu: &[f64]| -> Vec<f64> {
        mu.iter()
            .zip(w)
            .map(|(&m, &pw)| -((m / pw).ln() + 1.0))
            .collect()
    };
    let value = |mu: &[f64]| -> f64 {
        -mu.iter()
            .zip(w)
            .filter(|(&m, _)| m > 0.0)
            .map(|(&m, &pw)| m * (m / pw).ln())
            .sum::<f64>()
    };

    let mut fcur = value(&mu);
    for _ in 0..200 {
        let g = grad(&mu);
        // Reduced gradient and (negated) reduced Hessian  Zᵀ diag(1/μ) Z.
        let gy: Vec<f64> = basis.iter().map(|z| dot(z, &g)).collect();
        let mut h = vec![vec![0.0f64; dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let mut s = 0.0;
                for k in 0..q {
                    s += basis[i][k] * basis[j][k] / mu[k];
                }
                h[i][j] = s;
                h[j][i] = s;
            }
        }
        let step = solve_spd(&mut h, &gy);
        let gnorm = gy.iter().map(|x| x * x).sum::<f64>().sqrt();
        if gnorm < 1e-13 {
            break;
        }
        // Backtracking line search staying strictly inside the simplex.
        let mut tau = 1.0f64;
        loop {
            let trial: Vec<f64> = (0..q)
                .map(|k| {
                    mu[k] + tau * basis.iter().zip(&step).map(|(z, &s)| s * z[k]).sum::<f64>()
                })
                .collect();
            if trial.iter().all(|&m| m > 1e-300) {
                let ftrial = value(&trial);
                if ftrial >= fcur - 1e-15 {
                    mu = trial;
                    fcur = ftrial;
                    break;
                }
            }
            tau *= 0.5;
            if tau < 1e-18 {
                break;
            }
        }
        if tau < 1e-18 {
            break;
        }
    }
    Ok(mu)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn argmax(xs: &[f64]) -> usize {
    xs.iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0
}

fn argmin(xs: &[f64]) -> usize {
    xs.iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0
}

/// Solve `H x = b` for symmetric positive definite `H` (tiny systems only).
fn solve_spd(h: &mut [Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut x = b.to_vec();
    // Gaussian elimination with partial pivoting; n <= q-2 <= 6 here.
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = h[i].clone();
            row.push(x[i]);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        let d = m[col][col];
        if d.abs() < 1e-300 {
            continue;
        }
        for r in (col + 1)..n {
            let f = m[r][col] / d;
            for c in col..=n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    for row in (0..n).rev() {
        let mut s = m[row][n];
        for c in (row + 1)..n {
            s -= m[row][c] * x[c];
        }
        x[row] = if m[row][row].abs() > 1e-300 {
            s / m[row][row]
        } else {
            0.0
        };
    }
    x
}

/// Hoeffding-optimal hypothesis test: accept `H0: μ = μ0` iff
/// `I(L_N(σ)|μ0) < η` (strict).
#[derive(Debug, Clone)]
pub struct HoeffdingReport {
    pub statistic: f64,
    pub accept: bool,
}

pub fn hoeffding_test(
    sigma: &SymbolString,
    mu0: &DiscreteDistribution,
    eta: f64,
    base: LogBase,
) -> Result<HoeffdingReport> {
    if eta <= 0.0 {
        return Err(Error::OutOfRange(format!("eta = {eta}")));
    }
    let l = crate::prob::empirical_measure(sigma)?;
    let statistic = kl_divergence(&l, mu0, base)?;
    Ok(HoeffdingReport {
        statistic,
        accept: statistic < eta,
    })
}

/// A rate-function profile over a grid, ready for CSV dumping.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RateProfile {
    pub entries: Vec<RateEntry>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct RateEntry {
    /// Grid identifier: a measure id or an energy value.
    pub id: String,
    pub rate: f64,
    pub witness: Vec<f64>,
}

impl RateProfile {
    /// Sanov profile: `I(μ|p)` over a grid of measures.
    pub fn sanov(
        grid: &[DiscreteDistribution],
        p: &DiscreteDistribution,
        base: LogBase,
    ) -> Result<Self> {
        let entries = grid
            .iter()
            .enumerate()
            .map(|(i, mu)| {
                Ok(RateEntry {
                    id: i.to_string(),
                    rate: kl_divergence(mu, p, base)?,
                    witness: mu.weights().to_vec(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RateProfile { entries })
    }

    /// Cramér profile: `−s_C(u|p)` over a u-grid (rates are non-negative).
    pub fn cramer(
        u_grid: &[f64],
        p: &DiscreteDistribution,
        energy_levels: &[f64],
    ) -> Result<Self> {
        let entries = u_grid
            .iter()
            .map(|&u| {
                let pt = cramer_profile(u, p, energy_levels)?;
                Ok(RateEntry {
                    id: format!("{u}"),
                    rate: -pt.s_c,
                    witness: pt.gibbs_witness,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RateProfile { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::sample_string;
    use crate::rng::RngStream;

    fn dist(ws: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::new(Alphabet::of_size(ws.len()).unwrap(), ws).unwrap()
    }

    fn flat(q: usize) -> DiscreteDistribution {
        DiscreteDistribution::flat(Alphabet::of_size(q).unwrap())
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&flat(2), LogBase::Two), 1.0);
        let delta = DiscreteDistribution::point_mass(Alphabet::binary(), 1).unwrap();
        assert_eq!(shannon_entropy(&delta, LogBase::Two), 0.0);
        let h = shannon_entropy(&dist(&[0.25, 0.75]), LogBase::Two);
        assert!((h - 0.811278).abs() < 1e-6, "h = {h}");
    }

    #[test]
    fn kl_examples() {
        let mu = dist(&[0.3, 0.7]);
        assert_eq!(kl_divergence(&mu, &mu, LogBase::E).unwrap(), 0.0);
        let delta = DiscreteDistribution::point_mass(Alphabet::binary(), 0).unwrap();
        let d = kl_divergence(&delta, &flat(2), LogBase::E).unwrap();
        assert!((d - std::f64::consts::LN_2).abs() < 1e-12);
        // Not absolutely continuous -> +inf.
        let d = kl_divergence(&flat(2), &delta, LogBase::E).unwrap();
        assert_eq!(d, f64::INFINITY);
    }

    #[test]
    fn kl_flat_prior_identity() {
        // I(mu|f) + h(mu) == log q.
        let mut rng = RngStream::new(17, 0);
        for q in 2..=6usize {
            for _ in 0..20 {
                let w: Vec<f64> = (0..q).map(|_| rng.next_f64() + 1e-3).collect();
                let mu = DiscreteDistribution::new(Alphabet::of_size(q).unwrap(), &w).unwrap();
                let lhs = kl_divergence(&mu, &flat(q), LogBase::E).unwrap()
                    + shannon_entropy(&mu, LogBase::E);
                assert!((lhs - (q as f64).ln()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn gibbs_inequality_and_convexity() {
        let mut rng = RngStream::new(23, 0);
        for _ in 0..50 {
            let q = 2 + (rng.below(5) as usize);
            let draw = |rng: &mut RngStream| {
                let w: Vec<f64> = (0..q).map(|_| rng.next_f64() + 1e-6).collect();
                DiscreteDistribution::new(Alphabet::of_size(q).unwrap(), &w).unwrap()
            };
            let p = draw(&mut rng);
            let m1 = draw(&mut rng);
            let m2 = draw(&mut rng);
            let i1 = kl_divergence(&m1, &p, LogBase::E).unwrap();
            let i2 = kl_divergence(&m2, &p, LogBase::E).unwrap();
            assert!(i1 >= 0.0 && i2 >= 0.0);
            let lam = rng.next_f64();
            let mix: Vec<f64> = m1
                .weights()
                .iter()
                .zip(m2.weights())
                .map(|(&a, &b)| lam * a + (1.0 - lam) * b)
                .collect();
            let mmix = DiscreteDistribution::new(p.alphabet().clone(), &mix).unwrap();
            let imix = kl_divergence(&mmix, &p, LogBase::E).unwrap();
            assert!(imix <= lam * i1 + (1.0 - lam) * i2 + 1e-12);
        }
    }

    #[test]
    fn boltzmann_small_case_enumeration() {
        // N=4, q=2, counts (2,2), p flat: N(mu)=6 and W = 6/16, checked
        // against brute-force enumeration of all 16 strings.
        let tv = TypeVector::new(Alphabet::binary(), vec![2, 2]).unwrap();
        let b = boltzmann_counting(&tv, &flat(2)).unwrap();
        assert_eq!(b.exact_count.as_ref().unwrap(), &BigUint::from(6u32));
        assert!((b.w_prob() - 0.375).abs() < 1e-12);

        let mut brute = 0u32;
        for bits in 0..16u32 {
            if bits.count_ones() == 2 {
                brute += 1;
            }
        }
        assert_eq!(brute, 6);
    }

    #[test]
    fn boltzmann_degenerate_type() {
        let tv = TypeVector::new(Alphabet::binary(), vec![10, 0]).unwrap();
        let b = boltzmann_counting(&tv, &flat(2)).unwrap();
        assert_eq!(b.exact_count.as_ref().unwrap(), &BigUint::one());
        // limit rate at mu = p is zero.
        let tv = TypeVector::new(Alphabet::binary(), vec![5, 5]).unwrap();
        let b = boltzmann_counting(&tv, &flat(2)).unwrap();
        assert!(b.limit_rate.abs() < 1e-12);
    }

    #[test]
    fn boltzmann_not_absolutely_continuous() {
        let tv = TypeVector::new(Alphabet::binary(), vec![5, 5]).unwrap();
        let delta = DiscreteDistribution::point_mass(Alphabet::binary(), 0).unwrap();
        let b = boltzmann_counting(&tv, &delta).unwrap();
        assert_eq!(b.ln_w, f64::NEG_INFINITY);
        assert_eq!(b.limit_rate, f64::NEG_INFINITY);
    }

    #[test]
    fn ln_factorial_matches_exact_bigint_at_crossover() {
        // Both code paths for ln N(mu) must agree where they switch over.
        for n in [1000u64, 1024, 1500, 2000] {
            let exact = ln_biguint(&factorial_big(n));
            let series = ln_factorial(n);
            assert!(
                (exact - series).abs() / exact < 1e-12,
                "n={n}: {exact} vs {series}"
            );
        }
    }

    #[test]
    fn stirling_rate_convergence() {
        // |finite_rate - limit_rate| <= C log(N+1)/N with a modest C.
        let p = dist(&[0.4, 0.35, 0.25]);
        let mu = dist(&[0.2, 0.3, 0.5]);
        for n in [100u64, 1000, 10000] {
            let tv = TypeVector::nearest(&mu, n);
            let b = boltzmann_counting(&tv, &p).unwrap();
            let gap = (b.finite_rate - b.limit_rate).abs();
            let bound = 2.0 * 3.0 * ((n + 1) as f64).ln() / n as f64;
            assert!(gap <= bound, "N={n}: gap {gap} > {bound}");
        }
    }

    #[test]
    fn sanov_grid_examples() {
        let p = flat(2);
        let grid = simplex_grid(p.alphabet(), 10);
        assert_eq!(grid.len(), 11);
        // Gamma containing p has rate 0 at p.
        let r = sanov_rate(&grid, &p, LogBase::E).unwrap();
        assert!(r.rate.abs() < 1e-12);
        assert_eq!(grid[r.argmin].weights(), &[0.5, 0.5]);
        // Gamma = {delta_0} -> ln 2.
        let delta = DiscreteDistribution::point_mass(Alphabet::binary(), 0).unwrap();
        let r = sanov_rate(std::slice::from_ref(&delta), &p, LogBase::E).unwrap();
        assert!((r.rate - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(matches!(
            sanov_rate(&[], &p, LogBase::E),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn sanov_constrained_set_rate() {
        // Gamma = {mu : mu(1) >= 0.8} against the fair coin: the continuum
        // infimum is at mu(1) = 0.8.
        let p = flat(2);
        let grid: Vec<DiscreteDistribution> = simplex_grid(p.alphabet(), 1000)
            .into_iter()
            .filter(|m| m.weight(1) >= 0.8)
            .collect();
        let r = sanov_rate(&grid, &p, LogBase::E).unwrap();
        assert!((r.rate - 0.192745).abs() < 1e-5, "rate {}", r.rate);
    }

    #[test]
    fn free_energy_at_zero_beta_vanishes() {
        let p = dist(&[0.2, 0.5, 0.3]);
        assert!(free_energy(&p, &[0.0, 1.0, 2.0], 0.0).abs() < 1e-15);
        let p2 = dist(&[0.9, 0.1]);
        assert!(free_energy(&p2, &[0.3, 1.7], 0.0).abs() < 1e-15);
    }

    #[test]
    fn cramer_profile_binary_flat() {
        let p = flat(2);
        let levels = [0.0, 1.0];
        // Mean energy has zero rate.
        let pt = cramer_profile(0.5, &p, &levels).unwrap();
        assert!(pt.s_c.abs() < 1e-10, "s_c {}", pt.s_c);
        // u = 0.8: s_C = h((0.2, 0.8)) - ln 2 in nats.
        let pt = cramer_profile(0.8, &p, &levels).unwrap();
        let expect = shannon_entropy(&dist(&[0.2, 0.8]), LogBase::E) - std::f64::consts::LN_2;
        assert!((pt.s_c - expect).abs() < 1e-9, "{} vs {expect}", pt.s_c);
        assert!((expect + 0.192745).abs() < 1e-6);
        assert!(pt.duality_gap <= 1e-6);
    }

    #[test]
    fn cramer_out_of_hull_rejected() {
        let p = flat(2);
        assert!(matches!(
            cramer_profile(1.5, &p, &[0.0, 1.0]),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn cramer_duality_gap_small_on_random_instances() {
        let mut rng = RngStream::new(99, 0);
        for inst in 0..6 {
            let q = 2 + (inst % 4);
            let w: Vec<f64> = (0..q).map(|_| rng.next_f64() + 0.05).collect();
            let p = DiscreteDistribution::new(Alphabet::of_size(q).unwrap(), &w).unwrap();
            let levels: Vec<f64> = (0..q).map(|_| 2.0 * rng.next_f64()).collect();
            let lo = levels.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = levels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            for k in 1..10 {
                let u = lo + (hi - lo) * (0.05 + 0.9 * k as f64 / 10.0);
                let pt = cramer_profile(u, &p, &levels).unwrap();
                assert!(
                    pt.duality_gap <= 1e-6,
                    "q={q} u={u}: gap {}",
                    pt.duality_gap
                );
            }
        }
    }

    #[test]
    fn hoeffding_examples() {
        let f = flat(2);
        let s = sample_string(&f, 1000, &mut RngStream::new(4, 0));
        let l = crate::prob::empirical_measure(&s).unwrap();
        let r = hoeffding_test(&s, &l, 0.1, LogBase::E).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(r.accept);

        let ones = SymbolString::new(Alphabet::binary(), vec![1; 200]).unwrap();
        let r = hoeffding_test(&ones, &f, 0.1, LogBase::E).unwrap();
        assert!((r.statistic - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(!r.accept);

        // Statistic exactly at threshold is rejected (strict inequality).
        let r = hoeffding_test(&ones, &f, std::f64::consts::LN_2, LogBase::E).unwrap();
        assert!(!r.accept);
    }

    #[test]
    fn nearest_type_sums_to_n() {
        let mu = dist(&[0.21, 0.33, 0.46]);
        for n in [7u64, 100, 999] {
            let tv = TypeVector::nearest(&mu, n);
            assert_eq!(tv.counts().iter().sum::<u64>(), n);
        }
    }

    #[test]
    fn rate_profile_zero_at_target() {
        let p = dist(&[0.3, 0.7]);
        let grid = simplex_grid(p.alphabet(), 10);
        let prof = RateProfile::sanov(&grid, &p, LogBase::E).unwrap();
        // The minimum over the grid sits at the grid point closest to p.
        let (imin, _) = prof
            .entries
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.rate.partial_cmp(&b.1.rate).unwrap())
            .unwrap();
        let closest = grid
            .iter()
            .enumerate()
            .min_by(|a, b| {
                a.1.total_variation(&p)
                    .unwrap()
                    .partial_cmp(&b.1.total_variation(&p).unwrap())
                    .unwrap()
            })
            .unwrap()
            .0;
        assert_eq!(imin, closest);
        assert!(prof.entries.iter().all(|e| e.rate >= 0.0));
    }
}
