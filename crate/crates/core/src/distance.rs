//! Column distances and free distance of systematic rate `(n-1)/n` codes.
//!
//! Codewords are sequences of `n`-bit frames; bit `i < n-1` of a frame is
//! information stream `i` and bit `n-1` is the parity bit. The parity bit
//! at time `t` is `sum_i sum_(a in L_i) u_(t-a, i)`, which is what the
//! systematic check `[x_1, ..., x_(n-1), 1]` forces.

use std::fmt;

use crate::csoc::{is_csoc, parity_supports};
use crate::error::{Error, Result};
use crate::gf2poly::{Gf2Poly, PolyMatrix};

/// A finite codeword starting at time 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    n: usize,
    frames: Vec<u64>,
}

impl Codeword {
    pub fn new(n: usize, mut frames: Vec<u64>) -> Self {
        while frames.last() == Some(&0) {
            frames.pop();
        }
        Self { n, frames }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn frames(&self) -> &[u64] {
        &self.frames
    }

    pub fn weight(&self) -> u32 {
        self.frames.iter().map(|f| f.count_ones()).sum()
    }

    /// Sorted `(time, position)` pairs of the nonzero bits.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, &f) in self.frames.iter().enumerate() {
            for b in 0..self.n {
                if f >> b & 1 == 1 {
                    out.push((t, b));
                }
            }
        }
        out
    }

    /// Nonzero frames as `(time, bits)`.
    pub fn nonzero_frames(&self) -> Vec<(usize, Vec<u8>)> {
        self.frames
            .iter()
            .enumerate()
            .filter(|(_, &f)| f != 0)
            .map(|(t, &f)| (t, (0..self.n).map(|b| (f >> b & 1) as u8).collect()))
            .collect()
    }

    /// Stream `k` as a polynomial in `D`.
    pub fn stream(&self, k: usize) -> Gf2Poly {
        Gf2Poly::from_exponents(
            self.frames
                .iter()
                .enumerate()
                .filter(|(_, &f)| f >> k & 1 == 1)
                .map(|(t, _)| t as i64),
        )
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero_frames()
            .into_iter()
            .map(|(t, bits)| {
                let s: String = bits
                    .iter()
                    .map(|b| if *b == 1 { '1' } else { '0' })
                    .collect();
                format!("t={t}:{s}")
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword{self}")
    }
}

/// True iff the codeword is nonzero with a nonzero first frame and every
/// syndrome polynomial `sum_k h_(i,k)(D) c_k(D)` vanishes.
pub fn verify_codeword(h: &PolyMatrix, c: &Codeword) -> bool {
    if c.n != h.cols() || c.frames.first().is_none_or(|&f| f == 0) {
        return false;
    }
    let streams: Vec<Gf2Poly> = (0..c.n).map(|k| c.stream(k)).collect();
    (0..h.rows()).all(|i| {
        streams
            .iter()
            .enumerate()
            .fold(Gf2Poly::zero(), |acc, (k, s)| &acc + &(h.get(i, k) * s))
            .is_zero()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Exhaustive bounded-weight search.
    ExactSearch,
    /// `w + 1` for a CSOC, with an explicit weight-`(w+1)` witness.
    CsocCertificate,
    /// Explicit codeword only; proves `d_free <= weight`.
    UpperBound,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::ExactSearch => "EXACT_SEARCH",
            Method::CsocCertificate => "CSOC_CERTIFICATE",
            Method::UpperBound => "UPPER_BOUND",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceCertificate {
    pub d_free: u32,
    pub method: Method,
    pub witness: Codeword,
    /// Weight bound covered by exhaustive search, when one ran.
    pub search_budget: Option<u32>,
    /// Whether an exact search confirmed the certificate; `None` when the
    /// search was skipped by the size guard.
    pub exact_agrees: Option<bool>,
}

/// Systematic code with per-lag stream masks: bit `i` of `lag_masks[a]` is
/// set when `D^a` appears in `x_i`.
struct SystematicCode {
    n: usize,
    info_bits: usize,
    mu: usize,
    lag_masks: Vec<u64>,
}

impl SystematicCode {
    fn new(x: &PolyMatrix) -> Result<Self> {
        let supports = parity_supports(x)?;
        let info_bits = supports.len();
        if x.cols() > 64 {
            return Err(Error::Dimension(format!("{} columns exceed 64", x.cols())));
        }
        let mu = supports
            .iter()
            .filter_map(|s| s.largest())
            .max()
            .unwrap_or(0) as usize;
        let mut lag_masks = vec![0u64; mu + 1];
        for (i, s) in supports.iter().enumerate() {
            for &a in s.elements() {
                lag_masks[a as usize] |= 1 << i;
            }
        }
        Ok(Self {
            n: x.cols(),
            info_bits,
            mu,
            lag_masks,
        })
    }

    /// Parity bit at the last time of `info`.
    fn parity(&self, info: &[u64]) -> u32 {
        let t = info.len() - 1;
        let ones: u32 = self
            .lag_masks
            .iter()
            .enumerate()
            .take(t + 1)
            .map(|(a, m)| (info[t - a] & m).count_ones())
            .sum();
        ones & 1
    }

    fn codeword(&self, info: &[u64]) -> Codeword {
        let frames = (0..info.len())
            .map(|t| info[t] | (u64::from(self.parity(&info[..=t])) << (self.n - 1)))
            .collect();
        Codeword::new(self.n, frames)
    }
}

/// Branch and bound over information frames `u_0..u_j` with `u_0 != 0`.
struct ColumnSearch<'a> {
    code: &'a SystematicCode,
    window: usize,
    best: u32,
    info: Vec<u64>,
}

impl ColumnSearch<'_> {
    fn run(&mut self, weight: u32) {
        let t = self.info.len();
        if t == self.window {
            self.best = self.best.min(weight);
            return;
        }
        let first = u64::from(t == 0);
        for u in first..(1u64 << self.code.info_bits) {
            self.info.push(u);
            let w = weight + u.count_ones() + self.code.parity(&self.info);
            if w < self.best {
                self.run(w);
            }
            self.info.pop();
        }
    }
}

/// Exhaustive-enumeration window limit used by the reference oracle.
pub const ORACLE_WINDOW_BITS: usize = 24;

/// Window limit for [`column_distance`] (information bits in the window).
pub const COLUMN_WINDOW_BITS: usize = 64;

/// `d_c^(j)`: minimum weight of `c_0..c_j` over truncated codewords with
/// `c_0 != 0`, for a systematic `1 x n` check.
pub fn column_distance(h: &PolyMatrix, j: usize) -> Result<u32> {
    let code = SystematicCode::new(h)?;
    let bits = (j + 1) * code.info_bits;
    if bits > COLUMN_WINDOW_BITS {
        return Err(Error::WindowTooLarge {
            bits,
            limit: COLUMN_WINDOW_BITS,
        });
    }
    if code.info_bits == 0 {
        return Err(Error::NotSystematic);
    }
    // an impulse on any stream bounds the search from above
    let upper = (0..code.info_bits)
        .map(|i| {
            let taps = code
                .lag_masks
                .iter()
                .take(j + 1)
                .filter(|m| *m >> i & 1 == 1)
                .count();
            1 + taps as u32
        })
        .min()
        .unwrap_or(u32::MAX);
    let mut search = ColumnSearch {
        code: &code,
        window: j + 1,
        best: upper + 1,
        info: Vec::with_capacity(j + 1),
    };
    search.run(0);
    Ok(search.best)
}

/// Codeword of weight `w + 1` from a single information impulse on the
/// lightest stream (lowest index on ties).
pub fn dfree_upper(x: &PolyMatrix) -> Result<DistanceCertificate> {
    let code = SystematicCode::new(x)?;
    let supports = parity_supports(x)?;
    let (stream, _) = supports
        .iter()
        .enumerate()
        .min_by_key(|(i, s)| (s.weight(), *i))
        .ok_or(Error::NotSystematic)?;
    let len = supports[stream].largest().map_or(1, |m| m as usize + 1);
    let mut info = vec![0u64; len];
    info[0] = 1 << stream;
    let witness = code.codeword(&info);
    Ok(DistanceCertificate {
        d_free: witness.weight(),
        method: Method::UpperBound,
        witness,
        search_budget: None,
        exact_agrees: None,
    })
}

/// Size guards for [`dfree_exact_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_budget: u32,
    pub max_memory: u32,
    /// Frames explored per path; `None` means `budget * (mu + 1)`.
    pub horizon: Option<usize>,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self {
            max_budget: 6,
            max_memory: 12,
            horizon: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactDistance {
    Found(DistanceCertificate),
    /// No codeword of weight at most this budget exists.
    ExceedsBudget(u32),
}

impl ExactDistance {
    pub fn distance(&self) -> Option<u32> {
        match self {
            ExactDistance::Found(c) => Some(c.d_free),
            ExactDistance::ExceedsBudget(_) => None,
        }
    }
}

impl fmt::Display for ExactDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactDistance::Found(c) => write!(f, "{}", c.d_free),
            ExactDistance::ExceedsBudget(b) => write!(f, ">{b}"),
        }
    }
}

/// Weight, support and codeword of the best path so far.
type Best = (u32, Vec<(usize, usize)>, Codeword);

/// Depth-first search over codeword prefixes; a path closes when the last
/// `mu` information frames are zero.
struct FreeSearch<'a> {
    code: &'a SystematicCode,
    budget: u32,
    horizon: usize,
    info: Vec<u64>,
    best: Option<Best>,
}

impl FreeSearch<'_> {
    fn bound(&self) -> u32 {
        self.best
            .as_ref()
            .map_or(self.budget, |b| b.0.min(self.budget))
    }

    fn closed(&self) -> bool {
        let t = self.info.len() - 1;
        let start = t + 1 - self.code.mu.min(t + 1);
        start >= 1 && self.info[start..].iter().all(|&u| u == 0)
    }

    fn offer(&mut self, weight: u32) {
        let cw = self.code.codeword(&self.info);
        let support = cw.support();
        let better = match &self.best {
            None => true,
            Some((w, s, _)) => weight < *w || (weight == *w && support < *s),
        };
        if better {
            self.best = Some((weight, support, cw));
        }
    }

    fn run(&mut self, weight: u32) {
        let t = self.info.len();
        if t >= self.horizon {
            return;
        }
        let first = u64::from(t == 0);
        for u in first..(1u64 << self.code.info_bits) {
            self.info.push(u);
            let w = weight + u.count_ones() + self.code.parity(&self.info);
            // equal weight stays in play for the tie-break
            if w <= self.bound() {
                if self.closed() {
                    self.offer(w);
                } else {
                    self.run(w);
                }
            }
            self.info.pop();
        }
    }
}

/// Exact free distance if it is at most `budget`, with default guards.
pub fn dfree_exact(x: &PolyMatrix, budget: u32) -> Result<ExactDistance> {
    dfree_exact_with(x, budget, &ExactLimits::default())
}

pub fn dfree_exact_with(
    x: &PolyMatrix,
    budget: u32,
    limits: &ExactLimits,
) -> Result<ExactDistance> {
    let code = SystematicCode::new(x)?;
    if budget > limits.max_budget {
        return Err(Error::SearchGuard(format!(
            "budget {budget} exceeds {}",
            limits.max_budget
        )));
    }
    if code.mu as u32 > limits.max_memory {
        return Err(Error::SearchGuard(format!(
            "memory {} exceeds {}",
            code.mu, limits.max_memory
        )));
    }
    if code.info_bits == 0 {
        return Err(Error::NotSystematic);
    }
    let horizon = limits
        .horizon
        .unwrap_or(budget as usize * (code.mu + 1))
        .max(1);
    let mut search = FreeSearch {
        code: &code,
        budget,
        horizon,
        info: Vec::new(),
        best: None,
    };
    search.run(0);
    Ok(match search.best {
        Some((d, _, witness)) => ExactDistance::Found(DistanceCertificate {
            d_free: d,
            method: Method::ExactSearch,
            witness,
            search_budget: Some(budget),
            exact_agrees: Some(true),
        }),
        None => ExactDistance::ExceedsBudget(budget),
    })
}

/// `d_free = w + 1` for a CSOC, backed by the impulse witness and, when the
/// guards allow, confirmed by exact search.
pub fn certify_dfree(x: &PolyMatrix) -> Result<DistanceCertificate> {
    if !is_csoc(x)?.csoc {
        return Err(Error::NotCsoc);
    }
    let upper = dfree_upper(x)?;
    let certified = upper.d_free;
    let limits = ExactLimits::default();
    let mu = x.max_degree().finite().unwrap_or(0);
    let exact_agrees = if certified <= limits.max_budget && mu <= i64::from(limits.max_memory) {
        match dfree_exact_with(x, certified, &limits)? {
            ExactDistance::Found(c) if c.d_free == certified => Some(true),
            ExactDistance::Found(c) => {
                return Err(Error::CertificateContradicted {
                    found: c.d_free,
                    certified,
                })
            }
            ExactDistance::ExceedsBudget(_) => {
                return Err(Error::SearchGuard(format!(
                    "exact search missed the weight-{certified} witness"
                )))
            }
        }
    } else {
        None
    };
    Ok(DistanceCertificate {
        d_free: certified,
        method: Method::CsocCertificate,
        witness: upper.witness,
        search_budget: exact_agrees.map(|_| certified),
        exact_agrees,
    })
}
