//! Rhythmic sequences as exact rational durations.
//!
//! Mirrors the pitch-class machinery on the rhythm side: a [`RhythmSeq`]
//! is a non-empty sequence of positive rational durations (whole note =
//! 1/1). Arithmetic stays exact; floats appear only when a metric value
//! is finally evaluated.

use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::metric::{Metric, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RhythmError {
    #[error("unknown duration symbol {0:?}")]
    UnknownDuration(String),
    #[error("duration must be positive")]
    NonPositiveDuration,
    #[error("rhythm sequence must be non-empty")]
    EmptySequence,
    #[error("sequences have lengths {0} and {1} where equal length is required")]
    LengthMismatch(usize, usize),
    #[error("malformed duration text {0:?}")]
    BadDurationText(String),
}

type Result<T> = std::result::Result<T, RhythmError>;

/// The common note-value symbols and their exact durations.
pub const DURATION_SYMBOLS: [(&str, (i64, i64)); 17] = [
    ("w", (1, 1)),
    ("h", (1, 2)),
    ("q", (1, 4)),
    ("e", (1, 8)),
    ("s", (1, 16)),
    ("t", (1, 32)),
    ("wd", (3, 2)),
    ("hd", (3, 4)),
    ("qd", (3, 8)),
    ("ed", (3, 16)),
    ("sd", (3, 32)),
    ("qt", (1, 6)),
    ("et", (1, 12)),
    ("st", (1, 24)),
    ("qq", (1, 5)),
    ("eq", (1, 10)),
    ("sq", (1, 20)),
];

/// A positive exact duration in whole-note units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Duration(Rational);

impl Duration {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(RhythmError::BadDurationText(format!("{numer}/{denom}")));
        }
        Self::from_rational(Rational::new(numer, denom))
    }

    pub fn from_rational(value: Rational) -> Result<Self> {
        if value <= Rational::zero() {
            return Err(RhythmError::NonPositiveDuration);
        }
        Ok(Duration(value))
    }

    /// Looks up one of the 17 note-value symbols.
    pub fn from_symbol(symbol: &str) -> Result<Self> {
        DURATION_SYMBOLS
            .iter()
            .find(|(s, _)| *s == symbol)
            .map(|&(_, (n, d))| Duration(Rational::new(n, d)))
            .ok_or_else(|| RhythmError::UnknownDuration(symbol.to_string()))
    }

    /// The symbol for this duration, when it has one.
    pub fn symbol(&self) -> Option<&'static str> {
        DURATION_SYMBOLS
            .iter()
            .find(|&&(_, (n, d))| self.0 == Rational::new(n, d))
            .map(|&(s, _)| s)
    }

    /// Parses either a symbol (`"q"`) or a fraction (`"1/4"`, `"2"`).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Ok(d) = Duration::from_symbol(t) {
            return Ok(d);
        }
        let parse_int =
            |s: &str| s.trim().parse::<i64>().map_err(|_| RhythmError::BadDurationText(t.into()));
        match t.split_once('/') {
            Some((n, d)) => Duration::new(parse_int(n)?, parse_int(d)?),
            None => Duration::new(parse_int(t)?, 1),
        }
    }

    pub fn value(&self) -> Rational {
        self.0
    }
}

impl fmt::Display for Duration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom() == &1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Non-empty sequence of durations; order is significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RhythmSeq {
    durations: Vec<Duration>,
}

impl RhythmSeq {
    pub fn new(durations: Vec<Duration>) -> Result<Self> {
        if durations.is_empty() {
            return Err(RhythmError::EmptySequence);
        }
        Ok(RhythmSeq { durations })
    }

    /// Builds a sequence from note-value symbols.
    pub fn from_symbols(symbols: &[&str]) -> Result<Self> {
        let durations =
            symbols.iter().map(|s| Duration::from_symbol(s)).collect::<Result<Vec<_>>>()?;
        RhythmSeq::new(durations)
    }

    /// Parses the bracketed textual form, e.g. `[1/4,1/8,1/8]`; symbols
    /// are accepted per element.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| RhythmError::BadDurationText(text.to_string()))?;
        let durations =
            inner.split(',').map(Duration::parse).collect::<Result<Vec<_>>>()?;
        RhythmSeq::new(durations)
    }

    pub fn durations(&self) -> &[Duration] {
        &self.durations
    }

    pub fn len(&self) -> usize {
        self.durations.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Augmentation: every duration increased by `t` whole-note units.
    /// A zero shift is the identity.
    pub fn augment(&self, t: Rational) -> Result<RhythmSeq> {
        let durations = self
            .durations
            .iter()
            .map(|d| Duration::from_rational(d.0 + t))
            .collect::<Result<Vec<_>>>()?;
        Ok(RhythmSeq { durations })
    }

    /// Diminution: every duration decreased by `t` whole-note units; all
    /// results must stay positive.
    pub fn diminish(&self, t: Rational) -> Result<RhythmSeq> {
        let durations = self
            .durations
            .iter()
            .map(|d| Duration::from_rational(d.0 - t))
            .collect::<Result<Vec<_>>>()?;
        Ok(RhythmSeq { durations })
    }

    pub fn retrograde(&self) -> RhythmSeq {
        RhythmSeq { durations: self.durations.iter().rev().copied().collect() }
    }

    /// True when the sequence equals its own retrograde.
    pub fn is_non_retrogradable(&self) -> bool {
        self.durations.iter().eq(self.durations.iter().rev())
    }

    /// Divides every duration by the rational gcd of the sequence,
    /// yielding the smallest integer-ratio form.
    pub fn prime_form(&self) -> RhythmSeq {
        let g = self
            .durations
            .iter()
            .map(|d| d.0)
            .reduce(|a, b| {
                Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
            })
            .expect("non-empty");
        let durations = self.durations.iter().map(|d| Duration(d.0 / g)).collect();
        RhythmSeq { durations }
    }

    /// The lexicographically least cyclic rotation.
    pub fn normal_order(&self) -> RhythmSeq {
        let n = self.durations.len();
        let best = (0..n)
            .map(|k| {
                (0..n).map(|i| self.durations[(k + i) % n]).collect::<Vec<_>>()
            })
            .min()
            .expect("non-empty");
        RhythmSeq { durations: best }
    }

    /// Inter-onset interval content: onsets are the running sums of the
    /// durations, and for every onset pair the interval is matched exactly
    /// against the reference list (defaults to 1/8 .. 9/8).
    pub fn duration_vector(&self, lseq: Option<&[Duration]>) -> DurationVector {
        let default = default_refs();
        let refs: &[Duration] = lseq.unwrap_or(&default);
        let mut onsets = Vec::with_capacity(self.durations.len());
        let mut acc = Rational::zero();
        for d in &self.durations {
            onsets.push(acc);
            acc += d.0;
        }
        let mut counts = vec![0u32; refs.len()];
        for (i, &a) in onsets.iter().enumerate() {
            for &b in &onsets[i + 1..] {
                let interval = b - a;
                for (slot, r) in counts.iter_mut().zip(refs.iter()) {
                    if interval == r.0 {
                        *slot += 1;
                    }
                }
            }
        }
        DurationVector { counts }
    }
}

impl fmt::Display for RhythmSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.durations.iter().join(","))
    }
}

/// The default reference durations 1/8, 2/8, ..., 9/8.
pub fn default_refs() -> Vec<Duration> {
    (1..=9).map(|n| Duration(Rational::new(n, 8))).collect()
}

/// Parses a list of note-value symbols into a rhythm sequence.
pub fn parse_durations(symbols: &[&str]) -> Result<RhythmSeq> {
    RhythmSeq::from_symbols(symbols)
}

/// Histogram of inter-onset intervals against a reference duration list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DurationVector {
    counts: Vec<u32>,
}

impl DurationVector {
    pub fn from_counts(counts: Vec<u32>) -> Self {
        DurationVector { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

impl fmt::Display for DurationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.counts.iter().join(","))
    }
}

/// Minimal metric distance between equal-length duration sequences over
/// all cyclic rotations of `b`. Differences are kept rational; the float
/// conversion happens only at the final norm.
pub fn rhythm_distance(a: &RhythmSeq, b: &RhythmSeq, metric: Metric) -> Result<f64> {
    if a.len() != b.len() {
        return Err(RhythmError::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    let key = (0..n)
        .map(|k| {
            metric.key_ratio(
                (0..n).map(|i| b.durations[(i + k) % n].0 - a.durations[i].0),
            )
        })
        .min()
        .expect("non-empty");
    debug_assert!(!key.is_negative());
    Ok(metric.value_from_key_ratio(key))
}
