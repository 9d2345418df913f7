//! Pitch-class sets in arbitrary equal temperaments.
//!
//! A [`PcSet`] is an ordered multiset of pitch classes modulo `tet`. The
//! module provides the canonical orderings (normal order, normal-0 order,
//! prime form), the serial group operations (T/I/M, Boulez multiplication),
//! interval content, the two operator families `O(...)` (position-free
//! distance operators) and `R(...)` (positional voice-leading operators),
//! and the minimal voice-leading metrics, including the non-bijective
//! extension by pitch duplication.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use thiserror::Error;

use crate::metric::Metric;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PitchError {
    #[error("pitch class set must be non-empty")]
    EmptySet,
    #[error("temperament must have at least one pitch class")]
    InvalidTemperament,
    #[error("operator dimension {got} does not fit cardinality {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sets live in different temperaments ({0} vs {1})")]
    TemperamentMismatch(u32, u32),
    #[error("cardinalities {0} and {1} differ where equal cardinality is required")]
    CardinalityMismatch(usize, usize),
    #[error("cardinalities are equal; non-bijective distance needs different cardinalities")]
    EqualCardinalities,
    #[error("set is not a major or minor triad in 12-TET")]
    NotATriad,
    #[error("multiplier {0} is not invertible modulo {1}")]
    NotInvertibleMultiplier(i64, u32),
    #[error("tone row must contain every pitch class exactly once")]
    NotARow,
    #[error("malformed pitch class set text {0:?}")]
    BadPitchText(String),
    #[error("malformed operator text {0:?}")]
    BadOperatorText(String),
}

type Result<T> = std::result::Result<T, PitchError>;

/// Ordered multiset of pitch classes modulo a temperament cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PcSet {
    pitches: Vec<u32>,
    tet: u32,
}

impl PcSet {
    /// Builds a pitch-class set with the default construction flags:
    /// duplicates removed and pitches sorted ascending. Input pitches are
    /// reduced modulo `tet`.
    pub fn new(pitches: &[i64], tet: u32) -> Result<Self> {
        Self::with_flags(pitches, tet, true, true)
    }

    /// Builds a pitch-class set with explicit uniqueness/ordering flags.
    /// `unique` removes duplicate pitch classes, `ordered` sorts ascending.
    pub fn with_flags(pitches: &[i64], tet: u32, unique: bool, ordered: bool) -> Result<Self> {
        if tet == 0 {
            return Err(PitchError::InvalidTemperament);
        }
        let mut reduced: Vec<u32> =
            pitches.iter().map(|&p| p.rem_euclid(tet as i64) as u32).collect();
        if unique {
            let mut seen = BTreeSet::new();
            reduced.retain(|&p| seen.insert(p));
        }
        if ordered {
            reduced.sort_unstable();
        }
        if reduced.is_empty() {
            return Err(PitchError::EmptySet);
        }
        Ok(PcSet { pitches: reduced, tet })
    }

    fn from_raw(pitches: Vec<u32>, tet: u32) -> Self {
        PcSet { pitches, tet }
    }

    pub fn pitches(&self) -> &[u32] {
        &self.pitches
    }

    pub fn tet(&self) -> u32 {
        self.tet
    }

    pub fn cardinality(&self) -> usize {
        self.pitches.len()
    }

    /// Transposition by `t` steps modulo the temperament.
    pub fn transpose(&self, t: i64) -> PcSet {
        let tet = self.tet as i64;
        let mut mapped: Vec<u32> =
            self.pitches.iter().map(|&p| (p as i64 + t).rem_euclid(tet) as u32).collect();
        mapped.sort_unstable();
        PcSet::from_raw(mapped, self.tet)
    }

    /// Inversion `p -> -p (mod tet)`.
    pub fn invert(&self) -> PcSet {
        self.invert_pivot(0)
    }

    /// Inversion about a pivot pitch: `p -> 2*pivot - p (mod tet)`.
    pub fn invert_pivot(&self, pivot: i64) -> PcSet {
        let tet = self.tet as i64;
        let mut mapped: Vec<u32> =
            self.pitches.iter().map(|&p| (2 * pivot - p as i64).rem_euclid(tet) as u32).collect();
        mapped.sort_unstable();
        PcSet::from_raw(mapped, self.tet)
    }

    /// Multiplication by a scalar modulo the temperament. Colliding pitch
    /// classes are merged, matching the default uniqueness flag.
    pub fn multiply(&self, t: i64) -> PcSet {
        let tet = self.tet as i64;
        let mapped: BTreeSet<u32> =
            self.pitches.iter().map(|&p| (p as i64 * t).rem_euclid(tet) as u32).collect();
        PcSet::from_raw(mapped.into_iter().collect(), self.tet)
    }

    /// Boulez pitch multiplication: the interval structure of `self`,
    /// anchored at its first pitch, transposed onto every pitch of `b`;
    /// union of the images, deduplicated and sorted.
    pub fn multiply_boulez(&self, b: &PcSet) -> Result<PcSet> {
        if self.tet != b.tet {
            return Err(PitchError::TemperamentMismatch(self.tet, b.tet));
        }
        let tet = self.tet as i64;
        let anchor = self.pitches[0] as i64;
        let product: BTreeSet<u32> = self
            .pitches
            .iter()
            .cartesian_product(b.pitches.iter())
            .map(|(&a, &p)| (a as i64 - anchor + p as i64).rem_euclid(tet) as u32)
            .collect();
        Ok(PcSet::from_raw(product.into_iter().collect(), self.tet))
    }

    /// Most compact ascending rotation. Rotations are compared packed to
    /// the left: minimal outer span first, then the spans of shorter
    /// prefixes moving inward, with a final tie resolved by the lowest
    /// starting pitch class.
    pub fn normal_order(&self) -> PcSet {
        let tet = self.tet as i64;
        let mut sorted = self.pitches.clone();
        sorted.sort_unstable();
        let n = sorted.len();
        let mut best: Option<(Vec<i64>, i64, usize)> = None;
        for k in 0..n {
            let rot: Vec<i64> = (0..n)
                .map(|i| {
                    let wrapped = k + i >= n;
                    sorted[(k + i) % n] as i64 + if wrapped { tet } else { 0 }
                })
                .collect();
            // Prefix spans compared outward-in.
            let key: Vec<i64> = (1..n).rev().map(|i| rot[i] - rot[0]).collect();
            let cand = (key, rot[0], k);
            match &best {
                Some(b) if (&cand.0, cand.1) >= (&b.0, b.1) => {}
                _ => best = Some(cand),
            }
        }
        let k = best.expect("non-empty set").2;
        let pitches = (0..n).map(|i| sorted[(k + i) % n]).collect();
        PcSet::from_raw(pitches, self.tet)
    }

    /// Normal order transposed so the first pitch is 0.
    pub fn normal0_order(&self) -> PcSet {
        let no = self.normal_order();
        let tet = no.tet as i64;
        let root = no.pitches[0] as i64;
        let pitches =
            no.pitches.iter().map(|&p| (p as i64 - root).rem_euclid(tet) as u32).collect();
        PcSet::from_raw(pitches, no.tet)
    }

    /// The more compact of the normal-0 orders of the set and of its
    /// inverse, under the same packed-left comparison as `normal_order`.
    pub fn prime_form(&self) -> PcSet {
        let a = self.normal0_order();
        let b = self.invert().normal0_order();
        // Both candidates are rooted at 0, so packed-left comparison
        // reduces to the reversed pitch vector.
        let key = |s: &PcSet| s.pitches.iter().rev().copied().collect::<Vec<_>>();
        if key(&a) <= key(&b) {
            a
        } else {
            b
        }
    }

    /// Total interval content: counts of interval classes 1..=tet/2 over
    /// all unordered pitch pairs.
    pub fn interval_vector(&self) -> IntervalVector {
        let tet = self.tet;
        let mut counts = vec![0u32; (tet / 2) as usize];
        for (i, &a) in self.pitches.iter().enumerate() {
            for &b in &self.pitches[i + 1..] {
                let d = (a as i64 - b as i64).unsigned_abs() as u32;
                let ic = d.min(tet - d);
                if ic > 0 {
                    counts[(ic - 1) as usize] += 1;
                }
            }
        }
        IntervalVector { counts }
    }

    /// Linear interval sequence of the normal order: successive upward
    /// steps modulo the temperament, length `cardinality - 1`.
    pub fn lis_vector(&self) -> Vec<u32> {
        let no = self.normal_order();
        let tet = no.tet as i64;
        no.pitches
            .windows(2)
            .map(|w| (w[1] as i64 - w[0] as i64).rem_euclid(tet) as u32)
            .collect()
    }

    /// Applies a distance operator `O(...)`: every signed assignment of
    /// the named magnitudes to every permutation of the set, results
    /// normal-ordered and deduplicated. The input set appears in the
    /// output only when the operator leaves it unchanged (the zero
    /// operator).
    pub fn apply_distance_op(&self, op: &OperatorName) -> Result<Vec<PcSet>> {
        let mags = match op {
            OperatorName::Distance(m) => m,
            OperatorName::VoiceLeading(_) => {
                return Err(PitchError::BadOperatorText(op.to_string()))
            }
        };
        let n = self.cardinality();
        if mags.len() > n {
            return Err(PitchError::DimensionMismatch { expected: n, got: mags.len() });
        }
        let tet = self.tet as i64;
        let mut padded = vec![0i64; n];
        for (slot, &m) in padded.iter_mut().zip(mags.iter()) {
            *slot = m as i64;
        }
        let nonzero = mags.len();
        let self_key = self.normal_order().pitches;
        let mut images: BTreeSet<Vec<u32>> = BTreeSet::new();
        let perms: BTreeSet<Vec<u32>> =
            self.pitches.iter().copied().permutations(n).collect();
        for perm in &perms {
            for signs in 0..(1u32 << nonzero) {
                let shifted: Vec<i64> = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| {
                        let sign = if i < nonzero && signs & (1 << i) != 0 { -1 } else { 1 };
                        (p as i64 + sign * padded[i]).rem_euclid(tet)
                    })
                    .collect();
                let image = PcSet::new(&shifted, self.tet)?.normal_order();
                images.insert(image.pitches);
            }
        }
        if !op.is_zero() {
            images.remove(&self_key);
        }
        Ok(images.into_iter().map(|p| PcSet::from_raw(p, self.tet)).collect())
    }

    /// Applies a voice-leading operator `R(...)` componentwise to the
    /// normal order and re-normalizes.
    pub fn apply_vl_op(&self, op: &OperatorName) -> Result<PcSet> {
        let comps = match op {
            OperatorName::VoiceLeading(c) => c,
            OperatorName::Distance(_) => {
                return Err(PitchError::BadOperatorText(op.to_string()))
            }
        };
        let n = self.cardinality();
        if comps.len() != n {
            return Err(PitchError::DimensionMismatch { expected: n, got: comps.len() });
        }
        let tet = self.tet as i64;
        let no = self.normal_order();
        let moved: Vec<i64> = no
            .pitches
            .iter()
            .zip(comps.iter())
            .map(|(&p, &c)| (p as i64 + c as i64).rem_euclid(tet))
            .collect();
        Ok(PcSet::with_flags(&moved, self.tet, false, false)?.normal_order())
    }

    /// Neo-Riemannian P/L/R image of a major or minor triad, returned in
    /// normal order.
    pub fn nro(&self, op: NroOp) -> Result<PcSet> {
        if self.tet != 12 {
            return Err(PitchError::NotATriad);
        }
        let no = self.normal_order();
        if no.cardinality() != 3 {
            return Err(PitchError::NotATriad);
        }
        let lis = no.lis_vector();
        let root = no.pitches[0] as i64;
        let (root, major) = match (lis[0], lis[1]) {
            (4, 3) => (root, true),
            (3, 4) => (root, false),
            _ => return Err(PitchError::NotATriad),
        };
        let (new_root, new_major) = match (op, major) {
            (NroOp::P, true) => (root, false),
            (NroOp::P, false) => (root, true),
            (NroOp::L, true) => (root + 4, false),
            (NroOp::L, false) => (root + 8, true),
            (NroOp::R, true) => (root + 9, false),
            (NroOp::R, false) => (root + 3, true),
        };
        let third = if new_major { 4 } else { 3 };
        let triad = PcSet::new(&[new_root, new_root + third, new_root + 7], 12)?;
        Ok(triad.normal_order())
    }
}

impl fmt::Display for PcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.pitches.iter().join(","))
    }
}

/// Parses the bracketed textual form, e.g. `[0,4,7]`, with default
/// construction flags.
pub fn parse_pcset(text: &str, tet: u32) -> Result<PcSet> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| PitchError::BadPitchText(text.to_string()))?;
    let pitches: Vec<i64> = inner
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| PitchError::BadPitchText(text.to_string()))?;
    PcSet::new(&pitches, tet)
}

/// Interval-class histogram of a pitch-class set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalVector {
    counts: Vec<u32>,
}

impl IntervalVector {
    pub fn from_counts(counts: Vec<u32>) -> Self {
        IntervalVector { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.counts.iter().join(","))
    }
}

/// Distance between interval vectors under the chosen norm.
pub fn iv_distance(a: &IntervalVector, b: &IntervalVector, metric: Metric) -> Result<f64> {
    if a.counts.len() != b.counts.len() {
        return Err(PitchError::CardinalityMismatch(a.counts.len(), b.counts.len()));
    }
    let key = metric
        .key_i64(a.counts.iter().zip(b.counts.iter()).map(|(&x, &y)| x as i64 - y as i64));
    Ok(metric.value_from_key_i64(key))
}

/// The minimizing assignment between two equal-length normal-order pitch
/// tuples: cyclic rotations of `y` against fixed `x`, each optionally with
/// a single component raised or lowered by one octave.
fn min_vl_assignment(x: &[u32], y: &[u32], tet: u32, metric: Metric) -> (i64, Vec<i32>) {
    let n = x.len();
    let tet = tet as i64;
    let mut best: Option<(i64, Vec<i32>)> = None;
    for k in 0..n {
        let base: Vec<i64> =
            (0..n).map(|i| y[(i + k) % n] as i64 - x[i] as i64).collect();
        // shift index n means "no octave shift"
        for j in 0..=n {
            for sign in [1i64, -1] {
                if j == n && sign < 0 {
                    continue;
                }
                let comps: Vec<i64> = base
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| if i == j { d + sign * tet } else { d })
                    .collect();
                let key = metric.key_i64(comps.iter().copied());
                if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                    best = Some((key, comps.iter().map(|&c| c as i32).collect()));
                }
            }
        }
    }
    best.expect("non-empty tuples")
}

/// Minimal voice-leading distance between equal-cardinality sets:
/// minimum over all cyclic permutations of `b` and all single-component
/// octave shifts of the metric distance to normal-ordered `a`.
pub fn vl_distance(a: &PcSet, b: &PcSet, metric: Metric) -> Result<f64> {
    let (key, _) = vl_assignment(a, b, metric)?;
    Ok(metric.value_from_key_i64(key))
}

fn vl_assignment(a: &PcSet, b: &PcSet, metric: Metric) -> Result<(i64, Vec<i32>)> {
    if a.tet != b.tet {
        return Err(PitchError::TemperamentMismatch(a.tet, b.tet));
    }
    if a.cardinality() != b.cardinality() {
        return Err(PitchError::CardinalityMismatch(a.cardinality(), b.cardinality()));
    }
    let x = a.normal_order();
    let y = b.normal_order();
    Ok(min_vl_assignment(&x.pitches, &y.pitches, a.tet, metric))
}

/// Minimal distance between sets of different cardinality: pitches of the
/// smaller set are duplicated up to the larger cardinality and the best
/// multiset is reported alongside the distance. Duplication index tuples
/// are enumerated in lexicographic order and the first minimizer wins.
pub fn nonbij_distance(a: &PcSet, b: &PcSet, metric: Metric) -> Result<(f64, PcSet)> {
    if a.tet != b.tet {
        return Err(PitchError::TemperamentMismatch(a.tet, b.tet));
    }
    if a.cardinality() == b.cardinality() {
        return Err(PitchError::EqualCardinalities);
    }
    let (small, large) = if a.cardinality() < b.cardinality() { (a, b) } else { (b, a) };
    let missing = large.cardinality() - small.cardinality();
    let mut best: Option<(i64, PcSet)> = None;
    for dup in (0..small.cardinality()).combinations_with_replacement(missing) {
        let mut pitches: Vec<i64> = small.pitches.iter().map(|&p| p as i64).collect();
        pitches.extend(dup.iter().map(|&i| small.pitches[i] as i64));
        let multiset = PcSet::with_flags(&pitches, small.tet, false, true)?;
        let (key, _) = vl_assignment(&multiset, large, metric)?;
        if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best = Some((key, multiset));
        }
    }
    let (key, multiset) = best.expect("at least one duplication");
    Ok((metric.value_from_key_i64(key), multiset))
}

/// Voice-leading operator name connecting `a` to `b`, components
/// positioned by the normal order of `a` (of its duplicated multiset for
/// non-bijective pairs).
pub fn ops_name_vl(a: &PcSet, b: &PcSet, metric: Metric) -> Result<OperatorName> {
    let comps = if a.cardinality() == b.cardinality() {
        vl_assignment(a, b, metric)?.1
    } else if a.cardinality() < b.cardinality() {
        let (_, expanded) = nonbij_distance(a, b, metric)?;
        vl_assignment(&expanded, b, metric)?.1
    } else {
        let (_, expanded) = nonbij_distance(a, b, metric)?;
        vl_assignment(a, &expanded, metric)?.1
    };
    Ok(OperatorName::VoiceLeading(comps))
}

/// Distance operator name connecting `a` to `b`: unsigned magnitudes of
/// the minimal voice-leading components.
pub fn ops_name_distance(a: &PcSet, b: &PcSet, metric: Metric) -> Result<OperatorName> {
    match ops_name_vl(a, b, metric)? {
        OperatorName::VoiceLeading(comps) => {
            Ok(OperatorName::distance(comps.iter().map(|&c| c.unsigned_abs())))
        }
        OperatorName::Distance(_) => unreachable!(),
    }
}

/// Name of a distance operator `O(...)` or voice-leading operator
/// `R(...)`. Distance names are position-free: magnitudes are kept sorted
/// descending with zeros dropped, and the identity renders as `O(0)`.
/// Voice-leading names keep the full signed component list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OperatorName {
    Distance(Vec<u32>),
    VoiceLeading(Vec<i32>),
}

impl OperatorName {
    /// Canonical distance operator from raw magnitudes.
    pub fn distance<I>(magnitudes: I) -> Self
    where
        I: IntoIterator<Item = u32>,
    {
        let mut mags: Vec<u32> = magnitudes.into_iter().filter(|&m| m != 0).collect();
        mags.sort_unstable_by(|a, b| b.cmp(a));
        OperatorName::Distance(mags)
    }

    pub fn voice_leading(components: Vec<i32>) -> Self {
        OperatorName::VoiceLeading(components)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            OperatorName::Distance(m) => m.is_empty(),
            OperatorName::VoiceLeading(c) => c.iter().all(|&x| x == 0),
        }
    }

    /// Upper bound on the voice-leading distance realized by this
    /// operator under the Euclidean norm.
    pub fn euclidean_bound(&self) -> f64 {
        let sum: i64 = match self {
            OperatorName::Distance(m) => m.iter().map(|&x| (x as i64) * (x as i64)).sum(),
            OperatorName::VoiceLeading(c) => c.iter().map(|&x| (x as i64) * (x as i64)).sum(),
        };
        (sum as f64).sqrt()
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorName::Distance(mags) => {
                if mags.is_empty() {
                    write!(f, "O(0)")
                } else {
                    write!(f, "O({})", mags.iter().join(","))
                }
            }
            OperatorName::VoiceLeading(comps) => write!(f, "R({})", comps.iter().join(",")),
        }
    }
}

/// Parses `O(...)` and `R(...)` operator names.
pub fn parse_operator(text: &str) -> Result<OperatorName> {
    let t = text.trim();
    let bad = || PitchError::BadOperatorText(text.to_string());
    let (kind, rest) = t.split_at_checked(1).ok_or_else(bad)?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let values: Vec<i64> = inner
        .split(',')
        .map(|v| v.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    match kind {
        "O" => Ok(OperatorName::distance(values.iter().map(|&v| v.unsigned_abs() as u32))),
        "R" => Ok(OperatorName::VoiceLeading(values.iter().map(|&v| v as i32).collect())),
        _ => Err(bad()),
    }
}

/// Neo-Riemannian operator selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NroOp {
    P,
    L,
    R,
}

/// A tone row: every pitch class of the temperament exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToneRow {
    pitches: Vec<u32>,
    tet: u32,
}

impl ToneRow {
    pub fn new(pitches: &[i64], tet: u32) -> Result<Self> {
        if tet == 0 {
            return Err(PitchError::InvalidTemperament);
        }
        let reduced: Vec<u32> =
            pitches.iter().map(|&p| p.rem_euclid(tet as i64) as u32).collect();
        let distinct: BTreeSet<u32> = reduced.iter().copied().collect();
        if reduced.len() != tet as usize || distinct.len() != tet as usize {
            return Err(PitchError::NotARow);
        }
        Ok(ToneRow { pitches: reduced, tet })
    }

    pub fn pitches(&self) -> &[u32] {
        &self.pitches
    }

    pub fn tet(&self) -> u32 {
        self.tet
    }

    /// Transposition by `t` steps.
    pub fn t(&self, t: i64) -> ToneRow {
        let tet = self.tet as i64;
        let pitches =
            self.pitches.iter().map(|&p| (p as i64 + t).rem_euclid(tet) as u32).collect();
        ToneRow { pitches, tet: self.tet }
    }

    /// Inversion.
    pub fn i(&self) -> ToneRow {
        let tet = self.tet as i64;
        let pitches =
            self.pitches.iter().map(|&p| (-(p as i64)).rem_euclid(tet) as u32).collect();
        ToneRow { pitches, tet: self.tet }
    }

    /// Retrograde followed by transposition by `t` steps.
    pub fn r(&self, t: i64) -> ToneRow {
        let tet = self.tet as i64;
        let pitches = self
            .pitches
            .iter()
            .rev()
            .map(|&p| (p as i64 + t).rem_euclid(tet) as u32)
            .collect();
        ToneRow { pitches, tet: self.tet }
    }

    /// Multiplication by `t`; requires `gcd(t, tet) = 1` so the result is
    /// again a row.
    pub fn m(&self, t: i64) -> Result<ToneRow> {
        let tet = self.tet as i64;
        if t.rem_euclid(tet).gcd(&tet) != 1 {
            return Err(PitchError::NotInvertibleMultiplier(t, self.tet));
        }
        let pitches =
            self.pitches.iter().map(|&p| (p as i64 * t).rem_euclid(tet) as u32).collect();
        Ok(ToneRow { pitches, tet: self.tet })
    }
}

impl fmt::Display for ToneRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.pitches.iter().join(","))
    }
}
