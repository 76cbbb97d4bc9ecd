//! Finite-alphabet probability primitives.
//!
//! The whole crate works over a finite alphabet `A = {a_0, ..., a_{q-1}}`
//! with symbols stored as dense indices `0..q`; labels are cosmetic. A
//! [`DiscreteDistribution`] is a normalized weight vector on the alphabet,
//! a [`SymbolString`] is a finite word, and a [`SymbolStream`] is a
//! prefix-extendable sequence of which only a finite prefix is ever
//! materialized.

use crate::rng::RngStream;
use crate::{Error, Result};

/// Logarithm base used by entropy and information quantities.
///
/// Base 2 yields bits, base e yields nats. Keeping the base explicit avoids
/// silent unit mismatches between coding-theoretic and large-deviation
/// formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Two,
    E,
}

impl LogBase {
    #[inline]
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    /// log of `x` in this base, with the convention that converting from
    /// nats multiplies by `1/ln 2`.
    #[inline]
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Two => nats / std::f64::consts::LN_2,
            LogBase::E => nats,
        }
    }
}

/// A finite ordered alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    /// Alphabet of size `q` with numeric labels `"0".."q-1"`.
    pub fn of_size(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange(format!("alphabet size {q} < 2")));
        }
        if q > 256 {
            return Err(Error::OutOfRange(format!(
                "alphabet size {q} > 256 (symbols are stored as u8)"
            )));
        }
        Ok(Alphabet {
            labels: (0..q).map(|i| i.to_string()).collect(),
        })
    }

    pub fn with_labels(labels: &[&str]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in labels {
            if !seen.insert(*l) {
                return Err(Error::OutOfRange(format!("duplicate label {l:?}")));
            }
        }
        if labels.len() < 2 || labels.len() > 256 {
            return Err(Error::OutOfRange(format!(
                "alphabet size {} out of 2..=256",
                labels.len()
            )));
        }
        Ok(Alphabet {
            labels: labels.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn binary() -> Self {
        Alphabet::of_size(2).unwrap()
    }
}

/// A probability vector on a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    alphabet: Alphabet,
    weights: Vec<f64>,
    /// Factor the raw weights were divided by during construction.
    normalization: f64,
}

impl DiscreteDistribution {
    /// Normalize `raw_weights` into a distribution.
    ///
    /// Rejects negative weights and the all-zero vector; the normalization
    /// factor is kept as a diagnostic.
    pub fn new(alphabet: Alphabet, raw_weights: &[f64]) -> Result<Self> {
        if raw_weights.len() != alphabet.size() {
            return Err(Error::InvalidDistribution(format!(
                "{} weights for alphabet of size {}",
                raw_weights.len(),
                alphabet.size()
            )));
        }
        for (i, &w) in raw_weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "weight {w} at index {i}"
                )));
            }
        }
        let total: f64 = raw_weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("all weights are zero".into()));
        }
        Ok(DiscreteDistribution {
            alphabet,
            weights: raw_weights.iter().map(|w| w / total).collect(),
            normalization: total,
        })
    }

    /// The flat prior: every symbol gets `1/q`.
    pub fn flat(alphabet: Alphabet) -> Self {
        let q = alphabet.size();
        DiscreteDistribution {
            alphabet,
            weights: vec![1.0 / q as f64; q],
            normalization: 1.0,
        }
    }

    /// Point mass at symbol `a`.
    pub fn point_mass(alphabet: Alphabet, a: usize) -> Result<Self> {
        if a >= alphabet.size() {
            return Err(Error::OutOfRange(format!("symbol {a}")));
        }
        let mut w = vec![0.0; alphabet.size()];
        w[a] = 1.0;
        Ok(DiscreteDistribution {
            alphabet,
            weights: w,
            normalization: 1.0,
        })
    }

    /// Bernoulli distribution on the binary alphabet: `P(1) = p_one`.
    pub fn bernoulli(p_one: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_one) {
            return Err(Error::InvalidDistribution(format!("p = {p_one}")));
        }
        DiscreteDistribution::new(Alphabet::binary(), &[1.0 - p_one, p_one])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn weight(&self, a: usize) -> f64 {
        self.weights[a]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(|&w| w > 0.0)
    }

    /// Total-variation distance `(1/2) Σ |p(a) − q(a)|`.
    pub fn total_variation(&self, other: &DiscreteDistribution) -> Result<f64> {
        check_same_alphabet(self, other)?;
        Ok(self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / 2.0)
    }

    /// Check the distribution invariants (weights in `[0,1]` summing to 1
    /// within `1e-12`).
    pub fn check_invariants(&self) -> bool {
        let sum: f64 = self.weights.iter().sum();
        (sum - 1.0).abs() <= 1e-12 && self.weights.iter().all(|&w| (0.0..=1.0).contains(&w))
    }
}

pub(crate) fn check_same_alphabet(
    a: &DiscreteDistribution,
    b: &DiscreteDistribution,
) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "sizes {} vs {}",
            a.size(),
            b.size()
        )));
    }
    Ok(())
}

/// A finite string over an alphabet, stored as dense symbol indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolString {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl SymbolString {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        let q = alphabet.size();
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= q) {
            return Err(Error::OutOfRange(format!("symbol {s} for alphabet {q}")));
        }
        Ok(SymbolString { alphabet, symbols })
    }

    /// Parse a binary string like `"01101"`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let symbols = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::OutOfRange(format!("bit char {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(SymbolString {
            alphabet: Alphabet::binary(),
            symbols,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn prefix(&self, n: usize) -> SymbolString {
        SymbolString {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[..n.min(self.symbols.len())].to_vec(),
        }
    }

    /// `self` followed by `tail`.
    pub fn concat(&self, tail: &SymbolString) -> Result<SymbolString> {
        if self.alphabet != tail.alphabet {
            return Err(Error::AlphabetMismatch("concat".into()));
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&tail.symbols);
        Ok(SymbolString {
            alphabet: self.alphabet.clone(),
            symbols,
        })
    }
}

/// Draw an i.i.d. string of length `n` from `dist`.
///
/// Sampling inverts the cumulative weights against a 53-bit uniform draw,
/// so the output depends only on the `RngStream` state, not on any external
/// distribution code.
pub fn sample_string(dist: &DiscreteDistribution, n: usize, rng: &mut RngStream) -> SymbolString {
    let mut cum = Vec::with_capacity(dist.size());
    let mut acc = 0.0;
    for &w in dist.weights() {
        acc += w;
        cum.push(acc);
    }
    let symbols = (0..n)
        .map(|_| {
            let u = rng.next_f64();
            // Linear scan; q is small everywhere in this crate.
            let mut a = 0u8;
            for (i, &c) in cum.iter().enumerate() {
                if u < c {
                    a = i as u8;
                    break;
                }
                a = i as u8;
            }
            a
        })
        .collect();
    SymbolString {
        alphabet: dist.alphabet().clone(),
        symbols,
    }
}

/// The empirical measure `L_N(σ)`: symbol frequencies `k_a / N`.
pub fn empirical_measure(sigma: &SymbolString) -> Result<DiscreteDistribution> {
    if sigma.is_empty() {
        return Err(Error::EmptyInput);
    }
    let q = sigma.alphabet().size();
    let mut counts = vec![0.0f64; q];
    for &s in sigma.symbols() {
        counts[s as usize] += 1.0;
    }
    DiscreteDistribution::new(sigma.alphabet().clone(), &counts)
}

/// Log-probability of the cylinder `[σ]` under the Bernoulli measure of
/// `dist`: `Σ_n log p(σ_n)` in the requested base.
///
/// Returns `-inf` when some symbol has zero probability; that is a value,
/// not an error.
pub fn string_log_prob(dist: &DiscreteDistribution, sigma: &SymbolString, base: LogBase) -> f64 {
    let logs: Vec<f64> = dist.weights().iter().map(|&w| base.log(w)).collect();
    sigma
        .symbols()
        .iter()
        .map(|&s| logs[s as usize])
        .sum::<f64>()
}

/// How a [`SymbolStream`] produces its symbols.
enum StreamSource {
    /// I.i.d. draws from a distribution.
    Iid {
        dist: DiscreteDistribution,
        rng: RngStream,
    },
    /// Eventually-periodic pattern (used for structured contrast inputs).
    Periodic(Vec<u8>),
    /// Binary expansion of `num/den` in lowest terms, `0 <= num < den`.
    BinaryExpansion { num: u64, den: u64 },
}

/// A prefix-extendable symbol sequence.
///
/// The materialized prefix is append-only: `prefix(n)` for growing `n`
/// always extends earlier prefixes.
pub struct SymbolStream {
    alphabet: Alphabet,
    source: StreamSource,
    prefix: Vec<u8>,
}

impl SymbolStream {
    pub fn iid(dist: DiscreteDistribution, rng: RngStream) -> Self {
        SymbolStream {
            alphabet: dist.alphabet().clone(),
            source: StreamSource::Iid { dist, rng },
            prefix: Vec::new(),
        }
    }

    pub fn periodic(alphabet: Alphabet, pattern: Vec<u8>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptyInput);
        }
        let q = alphabet.size();
        if pattern.iter().any(|&s| s as usize >= q) {
            return Err(Error::OutOfRange("pattern symbol".into()));
        }
        Ok(SymbolStream {
            alphabet,
            source: StreamSource::Periodic(pattern),
            prefix: Vec::new(),
        })
    }

    /// Binary digits of the rational `num/den` in `[0,1)`.
    pub fn binary_expansion(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den {
            return Err(Error::OutOfRange(format!("{num}/{den}")));
        }
        Ok(SymbolStream {
            alphabet: Alphabet::binary(),
            source: StreamSource::BinaryExpansion { num, den },
            prefix: Vec::new(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn extend_to(&mut self, n: usize) {
        while self.prefix.len() < n {
            let k = self.prefix.len();
            let next = match &mut self.source {
                StreamSource::Iid { dist, rng } => {
                    let u = rng.next_f64();
                    let mut acc = 0.0;
                    let mut a = dist.size() as u8 - 1;
                    for (i, &w) in dist.weights().iter().enumerate() {
                        acc += w;
                        if u < acc {
                            a = i as u8;
                            break;
                        }
                    }
                    a
                }
                StreamSource::Periodic(pattern) => pattern[k % pattern.len()],
                StreamSource::BinaryExpansion { num, den } => {
                    let doubled = *num * 2;
                    let bit = (doubled >= *den) as u8;
                    *num = doubled % *den;
                    bit
                }
            };
            self.prefix.push(next);
        }
    }

    /// The prefix `s_{|n}` as a string.
    pub fn prefix(&mut self, n: usize) -> SymbolString {
        self.extend_to(n);
        SymbolString {
            alphabet: self.alphabet.clone(),
            symbols: self.prefix[..n].to_vec(),
        }
    }

    /// Symbol `s_k`.
    pub fn symbol(&mut self, k: usize) -> u8 {
        self.extend_to(k + 1);
        self.prefix[k]
    }
}
