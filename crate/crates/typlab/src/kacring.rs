//! The Kac ring model: an exactly solvable caricature of macroscopic
//! relaxation.
//!
//! `2N+1` spins sit on a ring with fixed scatterers between sites. Each
//! step every spin moves one site to the right and flips iff it passes a
//! scatterer. The microdynamics is reversible and periodic with period
//! `2(2N+1)`, yet the macroscopic spin-up density relaxes geometrically to
//! `1/2` — for typical scatterer configurations — following the closed-form
//! macrodynamics `Φ(m̄,s̄) = ((1−2s̄)(m̄−½)+½, s̄)`.
//!
//! Scatterers are static across time steps (the standard convention; the
//! transported-scatterer reading of the update rule would make the
//! dynamics 2-periodic and kill the relaxation, so it is rejected as a
//! typo). Rings are bit-packed, 64 sites per word, which makes the
//! `10⁵`-site typicality experiment a few million word operations.

use rayon::prelude::*;

use crate::prob::LogBase;
use crate::rng::RngStream;
use crate::{Error, Result};

/// A ring of bits, packed LSB-first into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRing {
    words: Vec<u64>,
    len: usize,
}

impl BitRing {
    pub fn zeros(len: usize) -> Self {
        BitRing {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut r = BitRing::zeros(len);
        for w in &mut r.words {
            *w = u64::MAX;
        }
        r.mask_tail();
        r
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut r = BitRing::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                r.set(i, true);
            }
        }
        r
    }

    pub fn random(len: usize, p_one: f64, rng: &mut RngStream) -> Self {
        let mut r = BitRing::zeros(len);
        for i in 0..len {
            if rng.bernoulli(p_one) {
                r.set(i, true);
            }
        }
        r
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn xor(&self, other: &BitRing) -> BitRing {
        debug_assert_eq!(self.len, other.len);
        BitRing {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
            len: self.len,
        }
    }

    pub fn not(&self) -> BitRing {
        let mut out = BitRing {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        out.mask_tail();
        out
    }

    /// Cyclic shift toward higher indices: `out[(i+1) mod len] = in[i]`.
    pub fn rotate_up(&self) -> BitRing {
        let mut out = BitRing::zeros(self.len);
        let top = self.get(self.len - 1);
        let mut carry = 0u64;
        for (o, &w) in out.words.iter_mut().zip(&self.words) {
            *o = (w << 1) | carry;
            carry = w >> 63;
        }
        out.mask_tail();
        out.set(0, top);
        out
    }

    /// Cyclic shift toward lower indices: `out[i] = in[(i+1) mod len]`.
    pub fn rotate_down(&self) -> BitRing {
        let mut out = BitRing::zeros(self.len);
        let bottom = self.get(0);
        let mut carry = 0u64;
        for (o, &w) in out.words.iter_mut().zip(&self.words).rev() {
            *o = (w >> 1) | (carry << 63);
            carry = w & 1;
        }
        out.mask_tail();
        out.set(self.len - 1, bottom);
        out
    }
}

/// Spins plus scatterers on an odd ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KacMicrostate {
    pub spins: BitRing,
    pub scatterers: BitRing,
}

impl KacMicrostate {
    pub fn new(spins: BitRing, scatterers: BitRing) -> Result<Self> {
        let n = spins.len();
        if n != scatterers.len() {
            return Err(Error::OutOfRange("ring length mismatch".into()));
        }
        if n < 3 || n % 2 == 0 {
            return Err(Error::OutOfRange(format!(
                "ring size {n} must be odd and at least 3"
            )));
        }
        Ok(KacMicrostate { spins, scatterers })
    }

    pub fn ring_size(&self) -> usize {
        self.spins.len()
    }
}

/// Macroscopic densities `(m̄, s̄)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KacMacrostate {
    pub m: f64,
    pub s: f64,
}

/// Densities of up-spins and scatterers.
pub fn macro_of_micro(state: &KacMicrostate) -> KacMacrostate {
    let r = state.ring_size() as f64;
    KacMacrostate {
        m: state.spins.count_ones() as f64 / r,
        s: state.scatterers.count_ones() as f64 / r,
    }
}

/// One micro step: every spin moves one site up and flips where it passed
/// a scatterer: `x'_{n+1} = x_n ⊕ y_n`, scatterers unchanged.
pub fn micro_step(state: &KacMicrostate) -> KacMicrostate {
    KacMicrostate {
        spins: state.spins.xor(&state.scatterers).rotate_up(),
        scatterers: state.scatterers.clone(),
    }
}

/// Inverse step: spins move one site down, flipping on the scatterer they
/// pass: `x_n = x'_{n+1} ⊕ y_n`.
pub fn inverse_step(state: &KacMicrostate) -> KacMicrostate {
    KacMicrostate {
        spins: state.spins.rotate_down().xor(&state.scatterers),
        scatterers: state.scatterers.clone(),
    }
}

/// Time reversal `τ(x,y)_n = (x_{−n}, y_{−n−1})`; an involution satisfying
/// `τ∘T = T^{−1}∘τ`, and the macrodynamics is blind to it.
pub fn time_reverse(state: &KacMicrostate) -> KacMicrostate {
    let r = state.ring_size();
    let mut spins = BitRing::zeros(r);
    let mut scat = BitRing::zeros(r);
    for n in 0..r {
        spins.set(n, state.spins.get((r - n) % r));
        scat.set(n, state.scatterers.get(r - 1 - n));
    }
    KacMicrostate {
        spins,
        scatterers: scat,
    }
}

/// One step of the macrodynamics: `Φ(m̄,s̄) = ((1−2s̄)(m̄−½)+½, s̄)`.
pub fn macro_step(m: f64, s: f64) -> KacMacrostate {
    KacMacrostate {
        m: (1.0 - 2.0 * s) * (m - 0.5) + 0.5,
        s,
    }
}

/// `Φ^t` in closed form: `(1−2s̄)^t (m̄−½) + ½`.
pub fn macro_evolve(m: f64, s: f64, t: u32) -> KacMacrostate {
    KacMacrostate {
        m: (1.0 - 2.0 * s).powi(t as i32) * (m - 0.5) + 0.5,
        s,
    }
}

/// The mean-field collision count against the actual one.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct StosszahlResidual {
    /// `(1−s̄)·#_{x=1} + s̄·#_{x=0}` from the current state.
    pub predicted_up: f64,
    /// `#_{x=1}` after one micro step.
    pub actual_up: f64,
    pub residual: f64,
}

pub fn stosszahl_residual(state: &KacMicrostate) -> StosszahlResidual {
    let r = state.ring_size() as f64;
    let ups = state.spins.count_ones() as f64;
    let s_bar = state.scatterers.count_ones() as f64 / r;
    let predicted = (1.0 - s_bar) * ups + s_bar * (r - ups);
    let actual = micro_step(state).spins.count_ones() as f64;
    StosszahlResidual {
        predicted_up: predicted,
        actual_up: actual,
        residual: actual - predicted,
    }
}

/// Draw i.i.d. `Bernoulli(m̄)` spins and `Bernoulli(s̄)` scatterers.
pub fn sample_microstate(
    m: f64,
    s: f64,
    ring_size: usize,
    rng: &mut RngStream,
) -> Result<KacMicrostate> {
    if !(0.0..=1.0).contains(&m) || !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!("(m, s) = ({m}, {s})")));
    }
    let spins = BitRing::random(ring_size, m, rng);
    let scatterers = BitRing::random(ring_size, s, rng);
    KacMicrostate::new(spins, scatterers)
}

/// Fine- and coarse-grained entropies of the product macrostate.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct KacEntropies {
    /// `h(m̄) + h(s̄)` per site.
    pub fine: f64,
    /// `fine − 2 log 2` (the flat-prior offset), same base.
    pub coarse: f64,
}

pub fn entropies(m: f64, s: f64, base: LogBase) -> Result<KacEntropies> {
    if !(0.0..=1.0).contains(&m) || !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!("(m, s) = ({m}, {s})")));
    }
    let h = |p: f64| -> f64 {
        let mut acc = 0.0;
        for w in [p, 1.0 - p] {
            if w > 0.0 {
                acc -= w * base.log(w);
            }
        }
        acc
    };
    let fine = h(m) + h(s);
    Ok(KacEntropies {
        fine,
        coarse: fine - 2.0 * base.log(2.0),
    })
}

/// Per-time-step statistics across trials.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TypicalityRow {
    pub t: u32,
    /// Closed-form macro prediction for `m̄` at this `t`.
    pub m_pred: f64,
    pub m_mean: f64,
    pub m_std: f64,
    /// Largest `|m^(N)(t) − prediction|` over the trials.
    pub m_max_abs_dev: f64,
    pub resid_mean: f64,
    pub resid_std: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TypicalityReport {
    pub ring_size: usize,
    pub m0: f64,
    pub s: f64,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<TypicalityRow>,
    /// `max_t |mean m^(N)(t) − m_pred(t)|`.
    pub max_mean_dev: f64,
    /// `max_t` of the per-trial worst deviation.
    pub max_trial_dev: f64,
}

/// Sample microstates at `(m̄, s̄)`, iterate the microdynamics, and compare
/// the observed spin density to the macro prediction — the finite-N
/// typicality experiment. Trials run in parallel on stream-separated RNGs.
pub fn typicality_experiment(
    m0: f64,
    s: f64,
    ring_size: usize,
    t_max: u32,
    trials: usize,
    seed: u64,
) -> Result<TypicalityReport> {
    if trials == 0 {
        return Err(Error::OutOfRange("trials = 0".into()));
    }
    // Validate ring size once up front.
    KacMicrostate::new(BitRing::zeros(ring_size), BitRing::zeros(ring_size))?;
    let steps = t_max as usize + 1;
    let per_trial: Vec<(Vec<f64>, Vec<f64>)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = RngStream::new(seed, k as u64);
            let mut state = sample_microstate(m0, s, ring_size, &mut rng).unwrap();
            let r = ring_size as f64;
            let mut ms = Vec::with_capacity(steps);
            let mut resids = Vec::with_capacity(steps);
            for _ in 0..steps {
                ms.push(state.spins.count_ones() as f64 / r);
                let sz = stosszahl_residual(&state);
                resids.push(sz.residual / r);
                state = micro_step(&state);
            }
            (ms, resids)
        })
        .collect();

    let mut rows = Vec::with_capacity(steps);
    let mut max_mean_dev = 0.0f64;
    let mut max_trial_dev = 0.0f64;
    for t in 0..steps {
        let pred = macro_evolve(m0, s, t as u32).m;
        let ms: Vec<f64> = per_trial.iter().map(|(m, _)| m[t]).collect();
        let rs: Vec<f64> = per_trial.iter().map(|(_, r)| r[t]).collect();
        let mean = ms.iter().sum::<f64>() / trials as f64;
        let var = ms.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / trials as f64;
        let rmean = rs.iter().sum::<f64>() / trials as f64;
        let rvar = rs.iter().map(|x| (x - rmean) * (x - rmean)).sum::<f64>() / trials as f64;
        let trial_dev = ms
            .iter()
            .map(|x| (x - pred).abs())
            .fold(0.0f64, f64::max);
        max_mean_dev = max_mean_dev.max((mean - pred).abs());
        max_trial_dev = max_trial_dev.max(trial_dev);
        rows.push(TypicalityRow {
            t: t as u32,
            m_pred: pred,
            m_mean: mean,
            m_std: var.sqrt(),
            m_max_abs_dev: trial_dev,
            resid_mean: rmean,
            resid_std: rvar.sqrt(),
        });
    }
    Ok(TypicalityReport {
        ring_size,
        m0,
        s,
        trials,
        seed,
        rows,
        max_mean_dev,
        max_trial_dev,
    })
}

/// Enumerate all microstates of a small ring (spins × scatterers).
pub fn all_microstates(ring_size: usize) -> impl Iterator<Item = KacMicrostate> {
    let total = 1u64 << ring_size;
    (0..total).flat_map(move |xs| {
        (0..total).map(move |ys| {
            let spins = BitRing::from_bits(
                &(0..ring_size).map(|i| ((xs >> i) & 1) as u8).collect::<Vec<_>>(),
            );
            let scat = BitRing::from_bits(
                &(0..ring_size).map(|i| ((ys >> i) & 1) as u8).collect::<Vec<_>>(),
            );
            KacMicrostate::new(spins, scat).unwrap()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(x: &[u8], y: &[u8]) -> KacMicrostate {
        KacMicrostate::new(BitRing::from_bits(x), BitRing::from_bits(y)).unwrap()
    }

    #[test]
    fn macro_of_micro_hand_count() {
        let s = state(&[1, 0, 0, 1, 1], &[0, 1, 0, 0, 1]);
        let m = macro_of_micro(&s);
        assert_eq!(m.m, 0.6);
        assert_eq!(m.s, 0.4);

        let all_up = KacMicrostate::new(BitRing::ones(5), BitRing::zeros(5)).unwrap();
        let m = macro_of_micro(&all_up);
        assert_eq!((m.m, m.s), (1.0, 0.0));
    }

    #[test]
    fn micro_step_hand_simulation() {
        let s = state(&[1, 0, 0, 1, 1], &[0, 1, 0, 0, 1]);
        let next = micro_step(&s);
        let bits: Vec<u8> = (0..5).map(|i| next.spins.get(i) as u8).collect();
        assert_eq!(bits, vec![0, 1, 1, 0, 1]);
        assert_eq!(next.scatterers, s.scatterers);
    }

    #[test]
    fn no_scatterers_is_pure_rotation() {
        let s = state(&[1, 1, 0, 0, 0], &[0, 0, 0, 0, 0]);
        let next = micro_step(&s);
        let bits: Vec<u8> = (0..5).map(|i| next.spins.get(i) as u8).collect();
        assert_eq!(bits, vec![0, 1, 1, 0, 0]);
    }

    #[test]
    fn all_scatterers_rotate_and_flip() {
        let s = state(&[1, 1, 0, 0, 0], &[1, 1, 1, 1, 1]);
        let next = micro_step(&s);
        let bits: Vec<u8> = (0..5).map(|i| next.spins.get(i) as u8).collect();
        assert_eq!(bits, vec![1, 0, 0, 1, 1]);
    }

    #[test]
    fn inverse_step_inverts() {
        let mut rng = RngStream::new(1, 0);
        for _ in 0..20 {
            let s = sample_microstate(0.4, 0.6, 21, &mut rng).unwrap();
            assert_eq!(inverse_step(&micro_step(&s)), s);
            assert_eq!(micro_step(&inverse_step(&s)), s);
        }
    }

    #[test]
    fn time_reverse_is_involution() {
        let mut rng = RngStream::new(2, 0);
        for _ in 0..20 {
            let s = sample_microstate(0.3, 0.5, 21, &mut rng).unwrap();
            assert_eq!(time_reverse(&time_reverse(&s)), s);
            // Densities are permutation invariant.
            let a = macro_of_micro(&s);
            let b = macro_of_micro(&time_reverse(&s));
            assert_eq!((a.m, a.s), (b.m, b.s));
        }
    }

    #[test]
    fn reversal_conjugacy_on_random_states() {
        // τ ∘ T == T⁻¹ ∘ τ (exhaustive version runs in the acceptance
        // suite at ring 9).
        let mut rng = RngStream::new(3, 0);
        for _ in 0..50 {
            let s = sample_microstate(0.5, 0.5, 9, &mut rng).unwrap();
            assert_eq!(time_reverse(&micro_step(&s)), inverse_step(&time_reverse(&s)));
        }
    }

    #[test]
    fn recurrence_after_two_revolutions_small() {
        for ring in [3usize, 5] {
            for s in all_microstates(ring) {
                let mut x = s.clone();
                for _ in 0..(2 * ring) {
                    x = micro_step(&x);
                }
                assert_eq!(x, s);
            }
        }
    }

    #[test]
    fn one_revolution_flips_iff_odd_scatterers() {
        let mut rng = RngStream::new(4, 0);
        for _ in 0..20 {
            let s = sample_microstate(0.5, 0.3, 33, &mut rng).unwrap();
            let mut x = s.clone();
            for _ in 0..33 {
                x = micro_step(&x);
            }
            let odd = s.scatterers.count_ones() % 2 == 1;
            let expect = if odd { s.spins.not() } else { s.spins.clone() };
            assert_eq!(x.spins, expect);
        }
    }

    #[test]
    fn scatterer_density_invariant() {
        let mut rng = RngStream::new(5, 0);
        let s = sample_microstate(0.7, 0.2, 1001, &mut rng).unwrap();
        let mut x = s.clone();
        for _ in 0..10 {
            x = micro_step(&x);
            assert_eq!(x.scatterers, s.scatterers);
        }
    }

    #[test]
    fn macro_step_fixed_points_and_equilibration() {
        // No scatterers: identity on m.
        let r = macro_step(0.77, 0.0);
        assert_eq!((r.m, r.s), (0.77, 0.0));
        // s = 1/2 equilibrates in one step.
        let r = macro_step(0.9, 0.5);
        assert_eq!((r.m, r.s), (0.5, 0.5));
        // Fixed points: m = 1/2 or s = 0.
        for (m, s) in [(0.5, 0.31), (0.42, 0.0)] {
            let r = macro_step(m, s);
            assert!((r.m - m).abs() < 1e-15);
        }
        // Closed form.
        let r = macro_evolve(0.9, 0.2, 3);
        assert!((r.m - (0.5 + 0.4 * 0.6f64.powi(3))).abs() < 1e-15);
        // macro_evolve(·,·,1) == macro_step.
        let a = macro_evolve(0.83, 0.27, 1);
        let b = macro_step(0.83, 0.27);
        assert_eq!((a.m, a.s), (b.m, b.s));
    }

    #[test]
    fn stosszahl_hand_computation() {
        let s = state(&[1, 0, 0, 1, 1], &[0, 1, 0, 0, 1]);
        let r = stosszahl_residual(&s);
        assert!((r.predicted_up - 2.6).abs() < 1e-12);
        assert_eq!(r.actual_up, 3.0);
        assert!((r.residual - 0.4).abs() < 1e-12);
    }

    #[test]
    fn stosszahl_exact_without_scatterers() {
        let s = state(&[1, 0, 1, 0, 0], &[0, 0, 0, 0, 0]);
        assert_eq!(stosszahl_residual(&s).residual, 0.0);
    }

    #[test]
    fn sampling_determinism_and_macro_band() {
        let mut a = RngStream::new(6, 0);
        let mut b = RngStream::new(6, 0);
        let s1 = sample_microstate(0.9, 0.2, 1001, &mut a).unwrap();
        let s2 = sample_microstate(0.9, 0.2, 1001, &mut b).unwrap();
        assert_eq!(s1, s2);

        let all_up = sample_microstate(1.0, 0.0, 11, &mut a).unwrap();
        assert_eq!(all_up.spins, BitRing::ones(11));
        assert_eq!(all_up.scatterers, BitRing::zeros(11));

        let mut rng = RngStream::new(7, 0);
        let s = sample_microstate(0.5, 0.5, 100_001, &mut rng).unwrap();
        let m = macro_of_micro(&s);
        // 5-sigma binomial band.
        assert!((m.m - 0.5).abs() <= 0.008);
        assert!((m.s - 0.5).abs() <= 0.008);
    }

    #[test]
    fn entropies_examples() {
        let e = entropies(0.5, 0.5, LogBase::Two).unwrap();
        assert_eq!(e.fine, 2.0);
        assert_eq!(e.coarse, 0.0);
        let e = entropies(1.0, 0.0, LogBase::Two).unwrap();
        assert_eq!(e.fine, 0.0);
        assert_eq!(e.coarse, -2.0);
        let e = entropies(1.0, 0.0, LogBase::E).unwrap();
        assert!((e.coarse + 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn fine_entropy_nondecreasing_along_relaxation() {
        let mut prev = f64::NEG_INFINITY;
        for t in 0..=20 {
            let m = macro_evolve(0.9, 0.2, t).m;
            let e = entropies(m, 0.2, LogBase::Two).unwrap();
            assert!(e.fine >= prev - 1e-12);
            prev = e.fine;
        }
    }

    #[test]
    fn typicality_no_scatterers_is_exact() {
        let rep = typicality_experiment(0.8, 0.0, 101, 10, 5, 9).unwrap();
        for row in &rep.rows {
            assert_eq!(row.m_mean, rep.rows[0].m_mean);
            assert!((row.m_pred - 0.5 - 0.3).abs() < 1e-12);
        }
        assert_eq!(rep.max_trial_dev, rep.rows[0].m_max_abs_dev);
    }

    #[test]
    fn typicality_small_ring_tracks_prediction() {
        let rep = typicality_experiment(0.9, 0.2, 10_001, 10, 20, 12).unwrap();
        assert!(rep.max_mean_dev <= 0.02, "mean dev {}", rep.max_mean_dev);
        assert_eq!(rep.rows.len(), 11);
    }

    #[test]
    fn reversal_run_returns_to_reversed_initial_state() {
        // Evolve t steps, reverse, evolve t steps: lands on τ(initial).
        let mut rng = RngStream::new(8, 0);
        let s0 = sample_microstate(0.6, 0.4, 101, &mut rng).unwrap();
        let t = 17;
        let mut x = s0.clone();
        for _ in 0..t {
            x = micro_step(&x);
        }
        x = time_reverse(&x);
        for _ in 0..t {
            x = micro_step(&x);
        }
        assert_eq!(x, time_reverse(&s0));
    }

    #[test]
    fn deviation_scaling_with_ring_size() {
        // std of m(t) scales like 1/sqrt(ring): the ratio between rings
        // 1e3+1 and 1e5+1 should sit within a factor [5, 20] of 10.
        let small = typicality_experiment(0.9, 0.2, 1001, 5, 40, 13).unwrap();
        let large = typicality_experiment(0.9, 0.2, 100_001, 5, 40, 13).unwrap();
        let s_small = small.rows.last().unwrap().m_std;
        let s_large = large.rows.last().unwrap().m_std;
        let ratio = s_small / s_large;
        assert!((5.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_even_or_tiny_rings() {
        let mut rng = RngStream::new(1, 1);
        assert!(sample_microstate(0.5, 0.5, 100_000, &mut rng).is_err());
        assert!(sample_microstate(0.5, 0.5, 1, &mut rng).is_err());
    }
}
