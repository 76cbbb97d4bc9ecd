//! Prefix codes, the noiseless-coding bounds, and AEP typical sets.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::prob::{DiscreteDistribution, LogBase, SymbolString};
use crate::rng::RngStream;
use crate::{Error, Result};

/// A binary codeword of up to 64 bits, most significant bit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codeword {
    bits: u64,
    len: u8,
}

impl Codeword {
    pub fn new(bits: u64, len: u8) -> Result<Self> {
        if len == 0 || len > 64 {
            return Err(Error::InvalidCode(format!("codeword length {len}")));
        }
        Ok(Codeword { bits, len })
    }

    /// Parse from a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidCode("empty codeword".into()));
        }
        if s.len() > 64 {
            return Err(Error::InvalidCode(format!("codeword length {}", s.len())));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(Error::InvalidCode(format!("char {other:?}"))),
                };
        }
        Ok(Codeword {
            bits,
            len: s.len() as u8,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, i: usize) -> u8 {
        ((self.bits >> (self.len as usize - 1 - i)) & 1) as u8
    }

    /// `self` is a proper or improper prefix of `other`.
    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        self.len <= other.len && (other.bits >> (other.len - self.len)) == self.bits
    }
}

impl std::fmt::Display for Codeword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

/// A symbol-to-binary-codeword map.
#[derive(Debug, Clone)]
pub struct PrefixCode {
    codewords: Vec<Codeword>,
}

impl PrefixCode {
    pub fn new(codewords: Vec<Codeword>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::InvalidCode("no codewords".into()));
        }
        Ok(PrefixCode { codewords })
    }

    pub fn codeword(&self, symbol: usize) -> Codeword {
        self.codewords[symbol]
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn encode(&self, sigma: &SymbolString) -> Result<Vec<u8>> {
        if sigma.alphabet().size() > self.codewords.len() {
            return Err(Error::InvalidCode("alphabet larger than code".into()));
        }
        let mut out = Vec::new();
        for &s in sigma.symbols() {
            let cw = self.codewords[s as usize];
            for i in 0..cw.len() {
                out.push(cw.bit(i));
            }
        }
        Ok(out)
    }

    /// Decode a bit stream produced by `encode`. Requires the code to be
    /// prefix-free and the stream to end on a codeword boundary.
    pub fn decode(
        &self,
        bits: &[u8],
        alphabet: &crate::prob::Alphabet,
    ) -> Result<SymbolString> {
        let check = validate_code(self)?;
        if !check.prefix_free {
            return Err(Error::InvalidCode("not prefix-free".into()));
        }
        let mut out = Vec::new();
        let mut pos = 0;
        'outer: while pos < bits.len() {
            for (sym, cw) in self.codewords.iter().enumerate() {
                let l = cw.len();
                if pos + l <= bits.len() && (0..l).all(|i| bits[pos + i] == cw.bit(i)) {
                    out.push(sym as u8);
                    pos += l;
                    continue 'outer;
                }
            }
            return Err(Error::InvalidCode(format!("undecodable at bit {pos}")));
        }
        SymbolString::new(alphabet.clone(), out)
    }
}

/// Result of [`validate_code`]: prefix-freeness plus the exact Kraft sum
/// `Σ 2^{−ℓ(C(a))}` as `numerator / 2^{log2_denominator}`.
#[derive(Debug, Clone)]
pub struct CodeCheck {
    pub prefix_free: bool,
    pub kraft_numerator: u128,
    pub kraft_log2_denominator: u32,
}

impl CodeCheck {
    pub fn kraft_sum(&self) -> f64 {
        self.kraft_numerator as f64 / (self.kraft_log2_denominator as f64).exp2()
    }

    pub fn kraft_at_most_one(&self) -> bool {
        self.kraft_numerator <= 1u128 << self.kraft_log2_denominator
    }
}

pub fn validate_code(code: &PrefixCode) -> Result<CodeCheck> {
    let cws = code.codewords();
    if cws.is_empty() {
        return Err(Error::InvalidCode("no codewords".into()));
    }
    let lmax = cws.iter().map(|c| c.len()).max().unwrap() as u32;
    if lmax > 120 {
        return Err(Error::InvalidCode(format!("codeword length {lmax}")));
    }
    let mut numerator: u128 = 0;
    for c in cws {
        numerator += 1u128 << (lmax - c.len() as u32);
    }
    let mut prefix_free = true;
    'search: for (i, a) in cws.iter().enumerate() {
        for (j, b) in cws.iter().enumerate() {
            if i != j && (a.is_prefix_of(b) || a == b) {
                prefix_free = false;
                break 'search;
            }
        }
    }
    Ok(CodeCheck {
        prefix_free,
        kraft_numerator: numerator,
        kraft_log2_denominator: lmax,
    })
}

/// Code construction method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeMethod {
    /// Lengths `⌈−log₂ p(a)⌉`, realized canonically (sorted by length, then
    /// symbol index). Satisfies `L ≤ h₂(p) + 1`.
    Shannon,
    /// Minimum expected length, by Huffman merging. Ties in the merge queue
    /// are broken toward the smaller minimum symbol index so the output is
    /// deterministic.
    Optimal,
}

pub fn build_code(p: &DiscreteDistribution, method: CodeMethod) -> Result<PrefixCode> {
    if let Some(a) = p.weights().iter().position(|&w| w == 0.0) {
        return Err(Error::ZeroProbabilitySymbol(a));
    }
    match method {
        CodeMethod::Shannon => shannon_code(p),
        CodeMethod::Optimal => huffman_code(p),
    }
}

fn shannon_code(p: &DiscreteDistribution) -> Result<PrefixCode> {
    let lengths: Vec<u8> = p
        .weights()
        .iter()
        .map(|&w| ((-w.log2()).ceil() as u8).max(1))
        .collect();
    canonical_from_lengths(&lengths)
}

/// Canonical code: assign codewords in (length, symbol index) order.
fn canonical_from_lengths(lengths: &[u8]) -> Result<PrefixCode> {
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));
    let mut codewords = vec![Codeword { bits: 0, len: 1 }; lengths.len()];
    let mut next: u64 = 0;
    let mut prev_len: u8 = 0;
    for &sym in &order {
        let l = lengths[sym];
        if prev_len > 0 {
            next = (next + 1) << (l - prev_len);
        }
        codewords[sym] = Codeword { bits: next, len: l };
        prev_len = l;
    }
    let code = PrefixCode::new(codewords)?;
    let check = validate_code(&code)?;
    if !check.prefix_free || !check.kraft_at_most_one() {
        return Err(Error::InvalidCode(
            "length profile violates the Kraft inequality".into(),
        ));
    }
    Ok(code)
}

fn huffman_code(p: &DiscreteDistribution) -> Result<PrefixCode> {
    let q = p.size();
    if q == 1 {
        return Err(Error::InvalidCode("degenerate alphabet".into()));
    }
    // Nodes: (probability, min symbol index in subtree, node id).
    #[derive(Debug)]
    enum Node {
        Leaf(usize),
        Join(usize, usize),
    }
    let mut nodes: Vec<Node> = (0..q).map(Node::Leaf).collect();
    let mut heap: Vec<(f64, usize, usize)> = p
        .weights()
        .iter()
        .enumerate()
        .map(|(i, &w)| (w, i, i))
        .collect();
    while heap.len() > 1 {
        heap.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap()
                .then(a.1.cmp(&b.1))
                .reverse()
        });
        let (wa, ia, na) = heap.pop().unwrap();
        let (wb, ib, nb) = heap.pop().unwrap();
        let id = nodes.len();
        nodes.push(Node::Join(na, nb));
        heap.push((wa + wb, ia.min(ib), id));
    }
    let root = heap[0].2;
    let mut codewords = vec![Codeword { bits: 0, len: 1 }; q];
    let mut stack = vec![(root, 0u64, 0u8)];
    while let Some((n, bits, len)) = stack.pop() {
        match nodes[n] {
            Node::Leaf(sym) => {
                codewords[sym] = Codeword {
                    bits,
                    len: len.max(1),
                };
            }
            Node::Join(a, b) => {
                stack.push((a, bits << 1, len + 1));
                stack.push((b, (bits << 1) | 1, len + 1));
            }
        }
    }
    let code = PrefixCode::new(codewords)?;
    debug_assert!(validate_code(&code)?.prefix_free);
    Ok(code)
}

/// Expected codeword length `L(C,p) = Σ p(a) ℓ(C(a))`.
pub fn expected_length(code: &PrefixCode, p: &DiscreteDistribution) -> Result<f64> {
    if code.size() < p.size() {
        return Err(Error::InvalidCode(format!(
            "code covers {} symbols, alphabet has {}",
            code.size(),
            p.size()
        )));
    }
    let l: f64 = p
        .weights()
        .iter()
        .enumerate()
        .map(|(a, &w)| w * code.codeword(a).len() as f64)
        .sum();
    debug_assert!(
        l + 1e-9 >= crate::entropy::shannon_entropy(p, LogBase::Two),
        "prefix-code length below entropy"
    );
    Ok(l)
}

/// Per-symbol length of the concatenated word code `C^N`. For a memoryless
/// source this equals `L(C,p)` exactly; for small word spaces the identity
/// is re-derived by enumeration before being reported.
pub fn per_symbol_length(code: &PrefixCode, p: &DiscreteDistribution, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0".into()));
    }
    let l = expected_length(code, p)?;
    let q = p.size();
    if (q as f64).powi(n as i32) <= 65536.0 {
        let mut total = 0.0;
        let mut word = vec![0usize; n];
        loop {
            let mut prob = 1.0;
            let mut len = 0usize;
            for &s in &word {
                prob *= p.weight(s);
                len += code.codeword(s).len();
            }
            total += prob * len as f64;
            // Odometer increment over A^N.
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                word[k] += 1;
                if word[k] < q {
                    break;
                }
                word[k] = 0;
            }
            if word.iter().all(|&s| s == 0) {
                break;
            }
        }
        let per_symbol = total / n as f64;
        debug_assert!((per_symbol - l).abs() < 1e-9);
    }
    Ok(l)
}

/// How to evaluate the probability mass of a typical set.
pub enum TypicalSetMode {
    /// Exact summation over type classes; requires `q^N ≤ 2^30`.
    Exact,
    /// Monte Carlo membership frequency over this many sampled strings.
    MonteCarlo { samples: u64, seed: u64 },
}

/// The weak-AEP typical set: strings whose probability lies within
/// `[2^{−N(h₂+ε)}, 2^{−N(h₂−ε)}]`.
#[derive(Debug, Clone)]
pub struct TypicalSet {
    pub n: usize,
    pub epsilon: f64,
    pub h2: f64,
    log2_lo: f64,
    log2_hi: f64,
    p: DiscreteDistribution,
    /// Exact total probability of the set (exact mode only).
    pub probability: Option<f64>,
    /// Exact number of member strings (exact mode only).
    pub cardinality: Option<u64>,
    /// Monte Carlo estimate and a 3-sigma half-width (MC mode only).
    pub mc_probability: Option<(f64, f64)>,
}

impl TypicalSet {
    pub fn contains(&self, sigma: &SymbolString) -> bool {
        let lp = crate::prob::string_log_prob(&self.p, sigma, LogBase::Two);
        lp >= self.log2_lo - 1e-12 && lp <= self.log2_hi + 1e-12
    }
}

pub fn typical_set(
    p: &DiscreteDistribution,
    n: usize,
    epsilon: f64,
    mode: TypicalSetMode,
) -> Result<TypicalSet> {
    if epsilon <= 0.0 {
        return Err(Error::OutOfRange(format!("epsilon = {epsilon}")));
    }
    let h2 = crate::entropy::shannon_entropy(p, LogBase::Two);
    let log2_lo = -(n as f64) * (h2 + epsilon);
    let log2_hi = -(n as f64) * (h2 - epsilon);
    let mut set = TypicalSet {
        n,
        epsilon,
        h2,
        log2_lo,
        log2_hi,
        p: p.clone(),
        probability: None,
        cardinality: None,
        mc_probability: None,
    };
    match mode {
        TypicalSetMode::Exact => {
            let q = p.size();
            if (q as f64).ln() * n as f64 > 30.0 * std::f64::consts::LN_2 {
                return Err(Error::TooLargeForExact(format!("q^N = {q}^{n}")));
            }
            // Membership depends on the string only through its type, so
            // the exact mass is a sum of N(mu) * P(sigma) over type classes.
            let mut prob = 0.0f64;
            let mut card = 0u64;
            let log2p: Vec<f64> = p.weights().iter().map(|&w| w.log2()).collect();
            let mut counts = vec![0u64; q];
            sum_over_types(
                &mut counts,
                0,
                n as u64,
                &mut |counts: &[u64]| {
                    let lp: f64 = counts
                        .iter()
                        .zip(&log2p)
                        .map(|(&c, &l)| if c == 0 { 0.0 } else { c as f64 * l })
                        .sum();
                    if lp >= log2_lo - 1e-12 && lp <= log2_hi + 1e-12 {
                        let mut cnt = BigUint::one();
                        // multinomial(n; counts)
                        let mut acc = BigUint::one();
                        for k in 2..=(n as u64) {
                            acc *= k;
                        }
                        cnt *= acc;
                        for &c in counts {
                            let mut f = BigUint::one();
                            for k in 2..=c {
                                f *= k;
                            }
                            cnt /= f;
                        }
                        let m = cnt.to_u64().unwrap();
                        card += m;
                        prob += m as f64 * lp.exp2();
                    }
                },
            );
            set.probability = Some(prob);
            set.cardinality = Some(card);
        }
        TypicalSetMode::MonteCarlo { samples, seed } => {
            let mut rng = RngStream::new(seed, 0);
            let mut hits = 0u64;
            for _ in 0..samples {
                let s = crate::prob::sample_string(p, n, &mut rng);
                if set.contains(&s) {
                    hits += 1;
                }
            }
            let phat = hits as f64 / samples as f64;
            let half = 3.0 * (phat * (1.0 - phat) / samples as f64).sqrt();
            set.mc_probability = Some((phat, half));
        }
    }
    Ok(set)
}

fn sum_over_types(
    counts: &mut Vec<u64>,
    idx: usize,
    remaining: u64,
    f: &mut impl FnMut(&[u64]),
) {
    if idx == counts.len() - 1 {
        counts[idx] = remaining;
        f(counts);
        return;
    }
    for c in 0..=remaining {
        counts[idx] = c;
        sum_over_types(counts, idx + 1, remaining - c, f);
    }
}

/// Minimum expected length over *all* prefix codes with codeword lengths in
/// `1..=max_len`, by exhaustive search over length profiles. Exponential in
/// `q`; meant as an oracle for `q ≤ 4`.
pub fn exhaustive_optimal_length(p: &DiscreteDistribution, max_len: u8) -> f64 {
    let q = p.size();
    let mut sorted_p: Vec<f64> = p.weights().to_vec();
    sorted_p.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut best = f64::INFINITY;
    let mut lengths = vec![1u8; q];
    loop {
        // Kraft feasibility.
        let kraft: f64 = lengths.iter().map(|&l| (-(l as f64)).exp2()).sum();
        if kraft <= 1.0 + 1e-12 {
            // Best assignment pairs large probabilities with short lengths.
            let mut ls: Vec<u8> = lengths.clone();
            ls.sort_unstable();
            let val: f64 = sorted_p
                .iter()
                .zip(&ls)
                .map(|(&w, &l)| w * l as f64)
                .sum();
            best = best.min(val);
        }
        // Odometer over length vectors.
        let mut k = q;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            lengths[k] += 1;
            if lengths[k] <= max_len {
                break;
            }
            lengths[k] = 1;
        }
        if lengths.iter().all(|&l| l == 1) {
            return best;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::shannon_entropy;
    use crate::prob::{sample_string, Alphabet};

    fn dist(ws: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::new(Alphabet::of_size(ws.len()).unwrap(), ws).unwrap()
    }

    fn code_of(strs: &[&str]) -> PrefixCode {
        PrefixCode::new(strs.iter().map(|s| Codeword::parse(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn validate_complete_binary_code() {
        let c = code_of(&["0", "10", "11"]);
        let check = validate_code(&c).unwrap();
        assert!(check.prefix_free);
        assert_eq!(check.kraft_sum(), 1.0);
    }

    #[test]
    fn validate_catches_prefix_violation() {
        let c = code_of(&["0", "01"]);
        assert!(!validate_code(&c).unwrap().prefix_free);
    }

    #[test]
    fn validate_kraft_overflow_case() {
        // {00, 01, 10, 11, 110}: kraft = 4/4 + 1/8 = 1.125 and 11 < 110.
        let c = code_of(&["00", "01", "10", "11", "110"]);
        let check = validate_code(&c).unwrap();
        assert!(!check.prefix_free);
        assert!((check.kraft_sum() - 1.125).abs() < 1e-15);
        assert!(!check.kraft_at_most_one());
    }

    #[test]
    fn huffman_dyadic_equality_case() {
        let p = dist(&[0.5, 0.25, 0.25]);
        let c = build_code(&p, CodeMethod::Optimal).unwrap();
        let l = expected_length(&c, &p).unwrap();
        assert_eq!(l, 1.5);
        assert_eq!(l, shannon_entropy(&p, LogBase::Two));
        // Exhaustive search over all prefix codes with lengths <= 3 agrees.
        assert_eq!(exhaustive_optimal_length(&p, 3), 1.5);
    }

    #[test]
    fn shannon_code_lengths() {
        let p = dist(&[0.9, 0.1]);
        let c = build_code(&p, CodeMethod::Shannon).unwrap();
        assert_eq!(c.codeword(0).len(), 1);
        assert_eq!(c.codeword(1).len(), 4);
        let l = expected_length(&c, &p).unwrap();
        assert!((l - 1.3).abs() < 1e-12);
        let h = shannon_entropy(&p, LogBase::Two);
        assert!(h <= l && l <= h + 1.0);
    }

    #[test]
    fn flat_dyadic_code_is_fixed_length() {
        let p = DiscreteDistribution::flat(Alphabet::of_size(8).unwrap());
        for method in [CodeMethod::Shannon, CodeMethod::Optimal] {
            let c = build_code(&p, method).unwrap();
            assert!(c.codewords().iter().all(|cw| cw.len() == 3));
            assert_eq!(per_symbol_length(&c, &p, 5).unwrap(), 3.0);
        }
    }

    #[test]
    fn zero_probability_symbol_rejected() {
        let p = DiscreteDistribution::new(Alphabet::of_size(3).unwrap(), &[1.0, 1.0, 0.0]);
        // Construction keeps the zero weight after normalization.
        let p = p.unwrap();
        assert!(matches!(
            build_code(&p, CodeMethod::Optimal),
            Err(Error::ZeroProbabilitySymbol(2))
        ));
    }

    #[test]
    fn sandwich_on_random_distributions() {
        let mut rng = RngStream::new(5, 0);
        for _ in 0..200 {
            let q = 2 + rng.below(7) as usize;
            let w: Vec<f64> = (0..q).map(|_| rng.next_f64() + 1e-3).collect();
            let p = DiscreteDistribution::new(Alphabet::of_size(q).unwrap(), &w).unwrap();
            let h = shannon_entropy(&p, LogBase::Two);
            let lopt =
                expected_length(&build_code(&p, CodeMethod::Optimal).unwrap(), &p).unwrap();
            let lsh =
                expected_length(&build_code(&p, CodeMethod::Shannon).unwrap(), &p).unwrap();
            assert!(h <= lopt + 1e-12, "h={h} lopt={lopt}");
            assert!(lopt <= lsh + 1e-12);
            assert!(lsh <= h + 1.0 + 1e-12);
        }
    }

    #[test]
    fn huffman_matches_exhaustive_for_small_alphabets() {
        let mut rng = RngStream::new(6, 0);
        for _ in 0..100 {
            let q = 2 + rng.below(3) as usize;
            let w: Vec<f64> = (0..q).map(|_| rng.next_f64() + 1e-3).collect();
            let p = DiscreteDistribution::new(Alphabet::of_size(q).unwrap(), &w).unwrap();
            let lopt =
                expected_length(&build_code(&p, CodeMethod::Optimal).unwrap(), &p).unwrap();
            let brute = exhaustive_optimal_length(&p, q as u8);
            assert!((lopt - brute).abs() < 1e-12, "q={q}: {lopt} vs {brute}");
        }
    }

    #[test]
    fn encode_decode_round_trip() {
        let p = dist(&[0.6, 0.25, 0.1, 0.05]);
        let code = build_code(&p, CodeMethod::Optimal).unwrap();
        let s = sample_string(&p, 10_000, &mut RngStream::new(8, 0));
        let bits = code.encode(&s).unwrap();
        let back = code.decode(&bits, p.alphabet()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn typical_set_flat_is_everything() {
        let p = DiscreteDistribution::flat(Alphabet::binary());
        let ts = typical_set(&p, 12, 0.05, TypicalSetMode::Exact).unwrap();
        assert_eq!(ts.probability.unwrap(), 1.0);
        assert_eq!(ts.cardinality.unwrap(), 1 << 12);
    }

    #[test]
    fn typical_set_exact_matches_enumeration() {
        // Exhaustive string enumeration oracle at N = 10 and N = 20.
        let p = dist(&[0.9, 0.1]);
        let h = shannon_entropy(&p, LogBase::Two);
        let brute = |n: u32| -> f64 {
            let mut total = 0.0;
            for word in 0..(1u64 << n) {
                let ones = word.count_ones() as f64;
                let prob = 0.9f64.powf(n as f64 - ones) * 0.1f64.powf(ones);
                let lp = prob.log2();
                if lp >= -(n as f64) * (h + 0.1) - 1e-12 && lp <= -(n as f64) * (h - 0.1) + 1e-12
                {
                    total += prob;
                }
            }
            total
        };
        let t10 = typical_set(&p, 10, 0.1, TypicalSetMode::Exact).unwrap();
        let t20 = typical_set(&p, 20, 0.1, TypicalSetMode::Exact).unwrap();
        assert!((t10.probability.unwrap() - brute(10)).abs() < 1e-12);
        assert!((t20.probability.unwrap() - brute(20)).abs() < 1e-12);
        // At this epsilon the band holds a single type class up to N ≈ 30
        // and its mass still shrinks (0.387 at N=10, 0.285 at N=20); the
        // AEP growth toward 1 shows once several types fit the band.
        assert!((t10.probability.unwrap() - 0.38742).abs() < 1e-4);
        assert!((t20.probability.unwrap() - 0.28518).abs() < 1e-4);
        let t100 = typical_set(
            &p,
            100,
            0.1,
            TypicalSetMode::MonteCarlo {
                samples: 20_000,
                seed: 5,
            },
        )
        .unwrap();
        let (phat, half) = t100.mc_probability.unwrap();
        assert!(phat - half > t10.probability.unwrap(), "p100 = {phat} ± {half}");
    }

    #[test]
    fn typical_set_huge_epsilon_has_probability_one() {
        let p = dist(&[0.7, 0.3]);
        let ts = typical_set(&p, 16, 100.0, TypicalSetMode::Exact).unwrap();
        assert!((ts.probability.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn typical_set_guard() {
        let p = DiscreteDistribution::flat(Alphabet::of_size(4).unwrap());
        assert!(matches!(
            typical_set(&p, 20, 0.1, TypicalSetMode::Exact),
            Err(Error::TooLargeForExact(_))
        ));
        let ts = typical_set(
            &p,
            20,
            0.1,
            TypicalSetMode::MonteCarlo {
                samples: 2000,
                seed: 3,
            },
        )
        .unwrap();
        assert!(ts.mc_probability.is_some());
    }

    #[test]
    fn per_symbol_length_equals_single_symbol_length() {
        let p = dist(&[0.5, 0.25, 0.25]);
        let c = build_code(&p, CodeMethod::Optimal).unwrap();
        for n in [1usize, 3, 7] {
            assert!((per_symbol_length(&c, &p, n).unwrap() - 1.5).abs() < 1e-12);
        }
    }
}
