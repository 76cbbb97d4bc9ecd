//! Symbolic dynamics: coarse-grained orbits, block entropy, entropy rate,
//! per-orbit information (SMB) and complexity (Brudno) rates, Birkhoff
//! averages, and first return times.
//!
//! A system is a measure-preserving map together with a finite partition.
//! Coarse-graining sends a state to the symbol sequence of partition cells
//! its orbit visits; all the entropy machinery then runs on that sequence.
//! Built-in systems ship exact cylinder oracles where a closed form exists
//! (Bernoulli products, dyadic Lebesgue cylinders, rotation arc lengths),
//! which is what makes the desk-scale checks exact rather than sampled.

use std::cell::RefCell;
use std::rc::Rc;

use crate::prob::{Alphabet, DiscreteDistribution, LogBase, SymbolString};
use crate::rng::RngStream;
use crate::{Error, Result};

/// A dynamical system with a finite partition.
pub trait SymbolicSystem {
    type State: Clone;

    fn alphabet(&self) -> &Alphabet;

    /// Draw an initial state from the invariant measure.
    fn sample_state(&self, rng: &mut RngStream) -> Self::State;

    fn step(&self, state: &Self::State) -> Self::State;

    /// Partition cell index of the state.
    fn cell(&self, state: &Self::State) -> usize;

    /// Exact `log₂ P(X_w)` of the length-`n` cylinder word traced by the
    /// orbit of `state`, when the system has an exact oracle.
    fn orbit_cylinder_log2_mass(&self, state: &Self::State, n: usize) -> Option<f64>;

    /// Exact nonempty cylinder masses at depth `n` (sparse list), when the
    /// system has an exact oracle.
    fn cylinder_masses(&self, n: usize) -> Option<Vec<(Vec<u8>, f64)>>;
}

/// The coarse-grained orbit `ξ_N(x)`: cell of `T^n x` for `n = 0..N-1`.
pub fn coarse_grain<S: SymbolicSystem>(system: &S, state: &S::State, n: usize) -> SymbolString {
    let mut symbols = Vec::with_capacity(n);
    let mut x = state.clone();
    for k in 0..n {
        symbols.push(system.cell(&x) as u8);
        if k + 1 < n {
            x = system.step(&x);
        }
    }
    SymbolString::new(system.alphabet().clone(), symbols).expect("cell returned valid symbol")
}

/// Block-entropy evaluation mode.
pub enum BlockEntropyMode {
    /// Exact summation over the cylinder oracle; needs `q^N ≤ 2^24`.
    Exact,
    /// Plug-in estimate from sampled orbits. The naive estimator is biased
    /// low; the bias is reported, not corrected.
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BlockEntropyReport {
    pub n: usize,
    /// `H(π^N)` in bits.
    pub bits: f64,
    pub nonempty_cells: usize,
    /// Set in Monte Carlo mode: the estimator is plug-in, biased low by up
    /// to `(cells − 1) / (2 samples ln 2)`.
    pub plugin_bias_bound: Option<f64>,
}

/// `H(π^N) = −Σ_w P(X_w) log₂ P(X_w)` over nonempty cells.
pub fn block_entropy<S: SymbolicSystem>(
    system: &S,
    n: usize,
    mode: BlockEntropyMode,
) -> Result<BlockEntropyReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0".into()));
    }
    match mode {
        BlockEntropyMode::Exact => {
            let q = system.alphabet().size() as f64;
            if q.ln() * n as f64 > 24.0 * std::f64::consts::LN_2 {
                return Err(Error::TooLargeForExact(format!("q^N at N = {n}")));
            }
            let masses = system.cylinder_masses(n).ok_or(Error::OracleUnavailable)?;
            let total: f64 = masses.iter().map(|(_, m)| m).sum();
            debug_assert!((total - 1.0).abs() < 1e-9, "cylinder masses sum to {total}");
            let mut bits = 0.0;
            let mut nonempty = 0;
            for (_, m) in &masses {
                if *m > 0.0 {
                    bits -= m * m.log2();
                    nonempty += 1;
                }
            }
            Ok(BlockEntropyReport {
                n,
                bits,
                nonempty_cells: nonempty,
                plugin_bias_bound: None,
            })
        }
        BlockEntropyMode::MonteCarlo { samples, seed } => {
            let mut counts: std::collections::HashMap<Vec<u8>, u64> =
                std::collections::HashMap::new();
            for k in 0..samples {
                let mut rng = RngStream::new(seed, k as u64);
                let x = system.sample_state(&mut rng);
                let w = coarse_grain(system, &x, n);
                *counts.entry(w.symbols().to_vec()).or_insert(0) += 1;
            }
            let mut bits = 0.0;
            for &c in counts.values() {
                let p = c as f64 / samples as f64;
                bits -= p * p.log2();
            }
            let cells = counts.len();
            Ok(BlockEntropyReport {
                n,
                bits,
                nonempty_cells: cells,
                plugin_bias_bound: Some(
                    (cells.saturating_sub(1)) as f64
                        / (2.0 * samples as f64 * std::f64::consts::LN_2),
                ),
            })
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EntropyRateReport {
    /// Slope estimate `H(π^{N_max}) − H(π^{N_max−1})` in bits.
    pub estimate: f64,
    /// `(N, H(π^N), H(π^N)/N)` for `N = 1..N_max`.
    pub curve: Vec<(usize, f64, f64)>,
    /// Subadditivity `H(π^{M+N}) ≤ H(π^M) + H(π^N)` verified on the curve.
    pub subadditive_ok: bool,
}

/// Entropy-rate estimate from exact block entropies.
pub fn entropy_rate<S: SymbolicSystem>(system: &S, n_max: usize) -> Result<EntropyRateReport> {
    if n_max < 4 {
        return Err(Error::OutOfRange("n_max < 4".into()));
    }
    let mut h = Vec::with_capacity(n_max + 1);
    h.push(0.0);
    for n in 1..=n_max {
        h.push(block_entropy(system, n, BlockEntropyMode::Exact)?.bits);
    }
    let mut subadditive_ok = true;
    for m in 1..=n_max {
        for n in 1..=n_max {
            if m + n <= n_max && h[m + n] > h[m] + h[n] + 1e-9 {
                subadditive_ok = false;
            }
        }
    }
    let curve = (1..=n_max)
        .map(|n| (n, h[n], h[n] / n as f64))
        .collect();
    Ok(EntropyRateReport {
        estimate: h[n_max] - h[n_max - 1],
        curve,
        subadditive_ok,
    })
}

/// Per-orbit information rate `−(1/N) log₂ P(π^N(x))`; `+inf` on a
/// zero-mass cylinder (reported, not thrown).
pub fn smb_estimate<S: SymbolicSystem>(system: &S, state: &S::State, n: usize) -> Result<f64> {
    let lp = system
        .orbit_cylinder_log2_mass(state, n)
        .ok_or(Error::OracleUnavailable)?;
    Ok(-lp / n as f64)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BirkhoffReport {
    pub n: usize,
    pub average: f64,
    /// Running average at doubling checkpoints.
    pub curve: Vec<(usize, f64)>,
}

/// Birkhoff average `(1/N) Σ f(T^n x)`.
pub fn birkhoff<S: SymbolicSystem>(
    system: &S,
    state: &S::State,
    n: usize,
    observable: impl Fn(&S::State) -> f64,
) -> Result<BirkhoffReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0".into()));
    }
    let mut x = state.clone();
    let mut sum = 0.0;
    let mut curve = Vec::new();
    let mut checkpoint = 64usize;
    for k in 0..n {
        sum += observable(&x);
        if k + 1 == checkpoint && k + 1 < n {
            curve.push((k + 1, sum / (k + 1) as f64));
            checkpoint *= 2;
        }
        if k + 1 < n {
            x = system.step(&x);
        }
    }
    curve.push((n, sum / n as f64));
    Ok(BirkhoffReport {
        n,
        average: sum / n as f64,
        curve,
    })
}

/// Visit frequency of a partition cell along the orbit.
pub fn visit_frequency<S: SymbolicSystem>(
    system: &S,
    state: &S::State,
    n: usize,
    cell: usize,
) -> Result<f64> {
    birkhoff(system, state, n, |x| (system.cell(x) == cell) as u8 as f64).map(|r| r.average)
}

/// LZ78 complexity rate of the coarse-grained orbit, `C(ξ_N(x))/N`.
pub fn brudno_rate<S: SymbolicSystem>(system: &S, state: &S::State, n: usize) -> Result<f64> {
    if n < 64 {
        return Err(Error::TooShort { needed: 64, got: n });
    }
    let w = coarse_grain(system, state, n);
    Ok(crate::randomness::lz78_complexity(&w)?.bits_per_symbol)
}

/// Least `n ∈ [1, horizon]` with `T^n x` in the target set.
pub fn first_return_time<S: SymbolicSystem>(
    system: &S,
    state: &S::State,
    target: impl Fn(&S::State) -> bool,
    horizon: usize,
) -> Result<Option<usize>> {
    if horizon < 1 {
        return Err(Error::OutOfRange("horizon < 1".into()));
    }
    let mut x = state.clone();
    for n in 1..=horizon {
        x = system.step(&x);
        if target(&x) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Shared lazy symbol tape (used by the shift-type systems).
// ---------------------------------------------------------------------------

enum TapeSource {
    Random { dist: DiscreteDistribution, rng: RngStream },
    Periodic(Vec<u8>),
}

struct Tape {
    source: TapeSource,
    buf: Vec<u8>,
}

impl Tape {
    fn at(&mut self, i: usize) -> u8 {
        while self.buf.len() <= i {
            let next = match &mut self.source {
                TapeSource::Random { dist, rng } => {
                    let u = rng.next_f64();
                    let mut acc = 0.0;
                    let mut a = dist.size() as u8 - 1;
                    for (k, &w) in dist.weights().iter().enumerate() {
                        acc += w;
                        if u < acc {
                            a = k as u8;
                            break;
                        }
                    }
                    a
                }
                TapeSource::Periodic(p) => p[self.buf.len() % p.len()],
            };
            self.buf.push(next);
        }
        self.buf[i]
    }
}

/// A point of a shift space: a shared lazy tape plus an offset.
#[derive(Clone)]
pub struct TapeState {
    tape: Rc<RefCell<Tape>>,
    pos: usize,
}

impl TapeState {
    pub fn symbol_at(&self, offset: usize) -> u8 {
        self.tape.borrow_mut().at(self.pos + offset)
    }
}

// ---------------------------------------------------------------------------
// Built-in systems.
// ---------------------------------------------------------------------------

/// The Bernoulli shift on `A^ω` with i.i.d. measure `p` and the
/// first-symbol partition.
pub struct BernoulliShift {
    p: DiscreteDistribution,
}

impl BernoulliShift {
    pub fn new(p: DiscreteDistribution) -> Self {
        BernoulliShift { p }
    }

    /// State whose tape repeats `pattern` forever (for non-typical orbits).
    pub fn periodic_state(&self, pattern: Vec<u8>) -> TapeState {
        TapeState {
            tape: Rc::new(RefCell::new(Tape {
                source: TapeSource::Periodic(pattern),
                buf: Vec::new(),
            })),
            pos: 0,
        }
    }
}

impl SymbolicSystem for BernoulliShift {
    type State = TapeState;

    fn alphabet(&self) -> &Alphabet {
        self.p.alphabet()
    }

    fn sample_state(&self, rng: &mut RngStream) -> TapeState {
        let sub = RngStream::new(rng.next_u64(), rng.next_u64());
        TapeState {
            tape: Rc::new(RefCell::new(Tape {
                source: TapeSource::Random {
                    dist: self.p.clone(),
                    rng: sub,
                },
                buf: Vec::new(),
            })),
            pos: 0,
        }
    }

    fn step(&self, state: &TapeState) -> TapeState {
        TapeState {
            tape: Rc::clone(&state.tape),
            pos: state.pos + 1,
        }
    }

    fn cell(&self, state: &TapeState) -> usize {
        state.symbol_at(0) as usize
    }

    fn orbit_cylinder_log2_mass(&self, state: &TapeState, n: usize) -> Option<f64> {
        let mut lp = 0.0;
        for k in 0..n {
            let w = self.p.weight(state.symbol_at(k) as usize);
            if w == 0.0 {
                return Some(f64::NEG_INFINITY);
            }
            lp += w.log2();
        }
        Some(lp)
    }

    fn cylinder_masses(&self, n: usize) -> Option<Vec<(Vec<u8>, f64)>> {
        let q = self.p.size();
        let mut out = Vec::new();
        let mut word = vec![0u8; n];
        loop {
            let mass: f64 = word.iter().map(|&s| self.p.weight(s as usize)).product();
            if mass > 0.0 {
                out.push((word.clone(), mass));
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return Some(out);
                }
                k -= 1;
                word[k] += 1;
                if (word[k] as usize) < q {
                    break;
                }
                word[k] = 0;
            }
            if word.iter().all(|&s| s == 0) {
                return Some(out);
            }
        }
    }
}

/// The doubling map `x ↦ 2x mod 1` with the partition `[0,½), [½,1)`.
///
/// Floating-point orbits die after ~53 iterations, so the state is exact:
/// either a rational `num/den` or a lazily drawn binary digit tape (a
/// Lebesgue-random point given by its binary expansion, which the map
/// shifts by construction).
pub struct DoublingMap;

#[derive(Clone)]
pub enum DoublingState {
    Rational { num: u64, den: u64 },
    Digits(TapeState),
}

impl DoublingMap {
    /// Exact rational initial point `num/den ∈ [0,1)`.
    pub fn rational_state(num: u64, den: u64) -> Result<DoublingState> {
        if den == 0 || num >= den {
            return Err(Error::OutOfRange(format!("{num}/{den}")));
        }
        Ok(DoublingState::Rational { num, den })
    }
}

impl SymbolicSystem for DoublingMap {
    type State = DoublingState;

    fn alphabet(&self) -> &Alphabet {
        static BIN: std::sync::OnceLock<Alphabet> = std::sync::OnceLock::new();
        BIN.get_or_init(Alphabet::binary)
    }

    fn sample_state(&self, rng: &mut RngStream) -> DoublingState {
        let sub = RngStream::new(rng.next_u64(), rng.next_u64());
        DoublingState::Digits(TapeState {
            tape: Rc::new(RefCell::new(Tape {
                source: TapeSource::Random {
                    dist: DiscreteDistribution::flat(Alphabet::binary()),
                    rng: sub,
                },
                buf: Vec::new(),
            })),
            pos: 0,
        })
    }

    fn step(&self, state: &DoublingState) -> DoublingState {
        match state {
            DoublingState::Rational { num, den } => DoublingState::Rational {
                num: (num * 2) % den,
                den: *den,
            },
            DoublingState::Digits(t) => DoublingState::Digits(TapeState {
                tape: Rc::clone(&t.tape),
                pos: t.pos + 1,
            }),
        }
    }

    fn cell(&self, state: &DoublingState) -> usize {
        match state {
            DoublingState::Rational { num, den } => (num * 2 >= *den) as usize,
            DoublingState::Digits(t) => t.symbol_at(0) as usize,
        }
    }

    fn orbit_cylinder_log2_mass(&self, _state: &DoublingState, n: usize) -> Option<f64> {
        // Every binary cylinder has Lebesgue mass 2^{-n}.
        Some(-(n as f64))
    }

    fn cylinder_masses(&self, n: usize) -> Option<Vec<(Vec<u8>, f64)>> {
        let mass = (-(n as f64)).exp2();
        let mut out = Vec::with_capacity(1 << n);
        for w in 0..(1u64 << n) {
            let word: Vec<u8> = (0..n).map(|i| ((w >> (n - 1 - i)) & 1) as u8).collect();
            out.push((word, mass));
        }
        Some(out)
    }
}

/// Circle rotation `x ↦ x + α mod 1` with the partition `[0,½), [½,1)` —
/// the zero-entropy contrast system.
pub struct Rotation {
    alpha: f64,
}

#[derive(Clone)]
pub struct RotationState {
    x0: f64,
    n: u64,
}

impl Rotation {
    pub fn new(alpha: f64) -> Self {
        Rotation {
            alpha: alpha.rem_euclid(1.0),
        }
    }

    pub fn state(x0: f64) -> RotationState {
        RotationState {
            x0: x0.rem_euclid(1.0),
            n: 0,
        }
    }

    /// Current position; computed from the step count in one rounding.
    pub fn position(&self, s: &RotationState) -> f64 {
        (s.x0 + s.n as f64 * self.alpha).rem_euclid(1.0)
    }
}

impl SymbolicSystem for Rotation {
    type State = RotationState;

    fn alphabet(&self) -> &Alphabet {
        static BIN: std::sync::OnceLock<Alphabet> = std::sync::OnceLock::new();
        BIN.get_or_init(Alphabet::binary)
    }

    fn sample_state(&self, rng: &mut RngStream) -> RotationState {
        RotationState {
            x0: rng.next_f64(),
            n: 0,
        }
    }

    fn step(&self, state: &RotationState) -> RotationState {
        RotationState {
            x0: state.x0,
            n: state.n + 1,
        }
    }

    fn cell(&self, state: &RotationState) -> usize {
        (self.position(state) >= 0.5) as usize
    }

    fn orbit_cylinder_log2_mass(&self, state: &RotationState, n: usize) -> Option<f64> {
        // The cylinder through x is the arc cut out by the tightest of the
        // N half-circle conditions; track slack on both sides of x.
        let mut left = f64::INFINITY;
        let mut right = f64::INFINITY;
        for k in 0..n {
            let y = (self.x0_at(state, k)).rem_euclid(1.0);
            let c = if y >= 0.5 { 0.5 } else { 0.0 };
            left = left.min(y - c);
            right = right.min(c + 0.5 - y);
        }
        let len = (left + right).max(f64::MIN_POSITIVE);
        Some(len.log2())
    }

    fn cylinder_masses(&self, n: usize) -> Option<Vec<(Vec<u8>, f64)>> {
        // Breakpoints of the level-n coding partition: preimages of 0 and ½.
        let mut pts: Vec<f64> = (0..n)
            .flat_map(|k| {
                let shift = k as f64 * self.alpha;
                [(-shift).rem_euclid(1.0), (0.5 - shift).rem_euclid(1.0)]
            })
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let mut map: std::collections::HashMap<Vec<u8>, f64> = std::collections::HashMap::new();
        let m = pts.len();
        for i in 0..m {
            let lo = pts[i];
            let hi = if i + 1 < m { pts[i + 1] } else { pts[0] + 1.0 };
            if hi - lo <= 0.0 {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            let word: Vec<u8> = (0..n)
                .map(|k| ((mid + k as f64 * self.alpha).rem_euclid(1.0) >= 0.5) as u8)
                .collect();
            *map.entry(word).or_insert(0.0) += hi - lo;
        }
        let mut out: Vec<(Vec<u8>, f64)> = map.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Some(out)
    }
}

impl Rotation {
    fn x0_at(&self, state: &RotationState, k: usize) -> f64 {
        state.x0 + (state.n + k as u64) as f64 * self.alpha
    }
}

/// The baker's map on `[0,1)²` with the left/right partition, represented
/// exactly on digit tapes: forward digits are the first coordinate's binary
/// expansion, consumed digits pile onto the second coordinate. The map is
/// invertible and nothing is lost in coarse-graining — the bilateral code
/// reconstructs the point.
pub struct BakersMap;

#[derive(Clone)]
pub struct BakerState {
    u_tape: TapeState,
    /// Digits of the second coordinate at the current time, most recent
    /// first; grows as the map consumes u-digits.
    v_digits: Vec<u8>,
}

impl BakerState {
    /// Approximate coordinates from the first 53 digits.
    pub fn point(&self) -> (f64, f64) {
        let u = digits_to_unit(
            (0..53).map(|k| self.u_tape.symbol_at(k)),
        );
        let v = digits_to_unit(self.v_digits.iter().copied().take(53));
        (u, v)
    }

    /// Backward symbols `v_1 v_2 ...` (most recent first).
    pub fn backward_symbols(&self, n: usize) -> Vec<u8> {
        self.v_digits.iter().copied().take(n).collect()
    }
}

fn digits_to_unit(digits: impl Iterator<Item = u8>) -> f64 {
    let mut x = 0.0;
    let mut w = 0.5;
    for d in digits {
        x += w * d as f64;
        w *= 0.5;
    }
    x
}

impl SymbolicSystem for BakersMap {
    type State = BakerState;

    fn alphabet(&self) -> &Alphabet {
        static BIN: std::sync::OnceLock<Alphabet> = std::sync::OnceLock::new();
        BIN.get_or_init(Alphabet::binary)
    }

    fn sample_state(&self, rng: &mut RngStream) -> BakerState {
        let sub = RngStream::new(rng.next_u64(), rng.next_u64());
        BakerState {
            u_tape: TapeState {
                tape: Rc::new(RefCell::new(Tape {
                    source: TapeSource::Random {
                        dist: DiscreteDistribution::flat(Alphabet::binary()),
                        rng: sub,
                    },
                    buf: Vec::new(),
                })),
                pos: 0,
            },
            v_digits: Vec::new(),
        }
    }

    fn step(&self, state: &BakerState) -> BakerState {
        let first = state.u_tape.symbol_at(0);
        let mut v = Vec::with_capacity(state.v_digits.len() + 1);
        v.push(first);
        v.extend_from_slice(&state.v_digits);
        BakerState {
            u_tape: TapeState {
                tape: Rc::clone(&state.u_tape.tape),
                pos: state.u_tape.pos + 1,
            },
            v_digits: v,
        }
    }

    fn cell(&self, state: &BakerState) -> usize {
        state.u_tape.symbol_at(0) as usize
    }

    fn orbit_cylinder_log2_mass(&self, _state: &BakerState, n: usize) -> Option<f64> {
        Some(-(n as f64))
    }

    fn cylinder_masses(&self, n: usize) -> Option<Vec<(Vec<u8>, f64)>> {
        DoublingMap.cylinder_masses(n)
    }
}

// ---------------------------------------------------------------------------
// Name-keyed registry (type-erased facade for the CLI).
// ---------------------------------------------------------------------------

/// Object-safe view of a system: enough surface to run the standard
/// experiments without exposing the state type.
pub trait DynSystem: Send + Sync {
    fn name(&self) -> String;
    fn coarse_grain_sampled(&self, seed: u64, stream: u64, n: usize) -> SymbolString;
    fn block_entropy_exact(&self, n: usize) -> Result<f64>;
    fn entropy_rate(&self, n_max: usize) -> Result<EntropyRateReport>;
    fn smb_sampled(&self, seed: u64, stream: u64, n: usize) -> Result<f64>;
    fn brudno_sampled(&self, seed: u64, stream: u64, n: usize) -> Result<f64>;
    /// Known entropy rate in bits, when there is a closed form.
    fn entropy_rate_target(&self) -> Option<f64>;
}

struct Registered<S: SymbolicSystem> {
    name: String,
    system: S,
    target: Option<f64>,
}

impl<S: SymbolicSystem + Send + Sync> DynSystem for Registered<S> {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn coarse_grain_sampled(&self, seed: u64, stream: u64, n: usize) -> SymbolString {
        let mut rng = RngStream::new(seed, stream);
        let x = self.system.sample_state(&mut rng);
        coarse_grain(&self.system, &x, n)
    }
    fn block_entropy_exact(&self, n: usize) -> Result<f64> {
        block_entropy(&self.system, n, BlockEntropyMode::Exact).map(|r| r.bits)
    }
    fn entropy_rate(&self, n_max: usize) -> Result<EntropyRateReport> {
        entropy_rate(&self.system, n_max)
    }
    fn smb_sampled(&self, seed: u64, stream: u64, n: usize) -> Result<f64> {
        let mut rng = RngStream::new(seed, stream);
        let x = self.system.sample_state(&mut rng);
        smb_estimate(&self.system, &x, n)
    }
    fn brudno_sampled(&self, seed: u64, stream: u64, n: usize) -> Result<f64> {
        let mut rng = RngStream::new(seed, stream);
        let x = self.system.sample_state(&mut rng);
        brudno_rate(&self.system, &x, n)
    }
    fn entropy_rate_target(&self) -> Option<f64> {
        self.target
    }
}

/// Construct a registered system by name. Recognized names: `bernoulli`
/// (parameter: probability of symbol 1), `doubling`, `rotation`
/// (parameter: angle α), `baker`.
pub fn make_system(name: &str, param: Option<f64>) -> Result<Box<dyn DynSystem>> {
    match name {
        "bernoulli" => {
            let p1 = param.unwrap_or(0.5);
            let p = DiscreteDistribution::bernoulli(p1)?;
            let target = crate::entropy::shannon_entropy(&p, LogBase::Two);
            Ok(Box::new(Registered {
                name: format!("bernoulli({p1})"),
                system: BernoulliShift::new(p),
                target: Some(target),
            }))
        }
        "doubling" => Ok(Box::new(Registered {
            name: "doubling".into(),
            system: DoublingMap,
            target: Some(1.0),
        })),
        "rotation" => {
            let alpha = param.unwrap_or(std::f64::consts::SQRT_2 - 1.0);
            Ok(Box::new(Registered {
                name: format!("rotation({alpha})"),
                system: Rotation::new(alpha),
                target: Some(0.0),
            }))
        }
        "baker" => Ok(Box::new(Registered {
            name: "baker".into(),
            system: BakersMap,
            target: Some(1.0),
        })),
        other => Err(Error::OutOfRange(format!("unknown system {other:?}"))),
    }
}

/// Names accepted by [`make_system`].
pub fn system_names() -> &'static [&'static str] {
    &["bernoulli", "doubling", "rotation", "baker"]
}
