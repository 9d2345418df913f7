//! Exhaustive dictionaries of pitch-class-set and rhythm spaces.
//!
//! A [`Catalog`] holds one row per equivalence class, with the element and
//! its feature vector rendered in the shared textual forms. Pitch
//! catalogs enumerate all subsets of a given cardinality and deduplicate
//! by prime form or transposition class; rhythm catalogs enumerate the
//! distinct orderings of a duration multiset (or of compositions of a
//! number of reference units) and deduplicate by rotation. Z-related
//! classes (same feature vector, different canonical form) carry a `Z`
//! suffix, non-retrogradable rhythm classes an `N` suffix.

use std::collections::BTreeMap;
use std::path::Path;

use itertools::Itertools;
use thiserror::Error;

use crate::metric::Rational;
use crate::pitch::{parse_pcset, PcSet, PitchError};
use crate::rhythm::{Duration, RhythmError, RhythmSeq};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cardinality {nc} out of range for temperament {tet}")]
    BadCardinality { nc: usize, tet: u32 },
    #[error("universe pitches must be distinct and within the temperament")]
    BadUniverse,
    #[error(transparent)]
    Pitch(#[from] PitchError),
    #[error(transparent)]
    Rhythm(#[from] RhythmError),
    #[error("catalog file has unexpected header {0:?}")]
    BadHeader(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, CatalogError>;

/// Which space a catalog enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    Pcs,
    Rhythm,
}

/// Canonical form used to deduplicate pitch-class sets. `Normal` and
/// `Normal0` both enumerate transposition classes and display the
/// 0-rooted representative; `Prime` also folds inversion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrderMode {
    #[default]
    Prime,
    Normal,
    Normal0,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub name: String,
    pub element: String,
    pub features: String,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub kind: CatalogKind,
    pub tet: u32,
    pub rows: Vec<CatalogRow>,
}

impl Catalog {
    /// Writes the catalog as CSV with header `name,element,features`.
    pub fn write_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["name", "element", "features"])?;
        for row in &self.rows {
            w.write_record([&row.name, &row.element, &row.features])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a catalog back from its CSV form.
    pub fn read_csv<P: AsRef<Path>>(path: P, kind: CatalogKind, tet: u32) -> Result<Catalog> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
        let header = r.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["name", "element", "features"] {
            return Err(CatalogError::BadHeader(format!("{header:?}")));
        }
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record?;
            rows.push(CatalogRow {
                name: record.get(0).unwrap_or_default().to_string(),
                element: record.get(1).unwrap_or_default().to_string(),
                features: record.get(2).unwrap_or_default().to_string(),
            });
        }
        Ok(Catalog { kind, tet, rows })
    }

    /// Parses the element of a pitch catalog row.
    pub fn pcset(&self, index: usize) -> Result<PcSet> {
        Ok(parse_pcset(&self.rows[index].element, self.tet)?)
    }

    /// Parses the element of a rhythm catalog row.
    pub fn rhythm(&self, index: usize) -> Result<RhythmSeq> {
        Ok(RhythmSeq::parse(&self.rows[index].element)?)
    }

    /// Parses a feature vector as integers.
    pub fn feature_vector(&self, index: usize) -> Result<Vec<i64>> {
        let text = &self.rows[index].features;
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PitchError::BadPitchText(text.clone()))?;
        let counts = inner
            .split(',')
            .map(|v| v.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| PitchError::BadPitchText(text.clone()))?;
        Ok(counts)
    }

    /// Looks a row up by name or by element text.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| r.name == label)
            .or_else(|| self.rows.iter().position(|r| r.element == label))
    }
}

/// Dictionary of all pitch-class sets of cardinality `nc` in a `tet`-note
/// temperament, deduplicated per `mode`. When `universe` is given (the
/// pitches of a tone row), only subsets of those pitches are enumerated.
/// Returns the catalog and the list of Z-related row names.
pub fn pcs_dictionary(
    nc: usize,
    tet: u32,
    mode: OrderMode,
    universe: Option<&[u32]>,
) -> Result<(Catalog, Vec<String>)> {
    let pool: Vec<u32> = match universe {
        Some(u) => {
            let distinct: std::collections::BTreeSet<u32> = u.iter().copied().collect();
            if distinct.len() != u.len() || u.iter().any(|&p| p >= tet) {
                return Err(CatalogError::BadUniverse);
            }
            u.to_vec()
        }
        None => (0..tet).collect(),
    };
    if nc == 0 || nc > pool.len() {
        return Err(CatalogError::BadCardinality { nc, tet });
    }
    let mut classes: BTreeMap<Vec<u32>, String> = BTreeMap::new();
    for subset in pool.iter().copied().combinations(nc) {
        let pitches: Vec<i64> = subset.iter().map(|&p| p as i64).collect();
        let set = PcSet::new(&pitches, tet)?;
        let canon = match mode {
            OrderMode::Prime => set.prime_form(),
            OrderMode::Normal | OrderMode::Normal0 => set.normal0_order(),
        };
        classes
            .entry(canon.pitches().to_vec())
            .or_insert_with(|| canon.interval_vector().to_string());
    }
    let entries: Vec<(String, String)> = classes
        .into_iter()
        .map(|(pitches, features)| {
            let element = format!("[{}]", pitches.iter().join(","));
            (element, features)
        })
        .collect();
    finish_catalog(CatalogKind::Pcs, tet, nc, entries, &[])
}

/// Dictionary of the distinct orderings of a duration-symbol multiset,
/// deduplicated by rotation. `nc` must equal the number of symbols.
pub fn rhythm_dictionary(nc: usize, symbols: &[&str]) -> Result<(Catalog, Vec<String>)> {
    if nc != symbols.len() || nc == 0 {
        return Err(CatalogError::BadCardinality { nc, tet: 0 });
    }
    let durations: Vec<Duration> =
        symbols.iter().map(|s| Duration::from_symbol(s)).collect::<std::result::Result<_, _>>()?;
    let cells: std::collections::BTreeSet<Vec<Duration>> = durations
        .iter()
        .copied()
        .permutations(nc)
        .map(|p| RhythmSeq::new(p).expect("non-empty").normal_order().durations().to_vec())
        .collect();
    rhythm_catalog(nc, cells)
}

/// Dictionary of all compositions of `n` into `nc` positive parts, each
/// part rendered as a multiple of the reference duration, deduplicated by
/// rotation.
pub fn rhythm_p_dictionary(
    n: u32,
    nc: usize,
    reference: Duration,
) -> Result<(Catalog, Vec<String>)> {
    if nc == 0 || (n as usize) < nc {
        return Err(CatalogError::BadCardinality { nc, tet: 0 });
    }
    let mut cells: std::collections::BTreeSet<Vec<Duration>> = Default::default();
    for parts in compositions(n, nc) {
        let durations: Vec<Duration> = parts
            .iter()
            .map(|&k| {
                Duration::from_rational(reference.value() * Rational::from_integer(k as i64))
            })
            .collect::<std::result::Result<_, _>>()?;
        let canon = RhythmSeq::new(durations)?.normal_order();
        cells.insert(canon.durations().to_vec());
    }
    rhythm_catalog(nc, cells)
}

/// All ordered ways of writing `n` as a sum of `nc` positive integers.
pub fn compositions(n: u32, nc: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 1..=(remaining - slots as u32 + 1) {
            prefix.push(k);
            rec(remaining - k, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nc >= 1 && n >= nc as u32 {
        rec(n, nc, &mut Vec::new(), &mut out);
    }
    out
}

fn rhythm_catalog(
    nc: usize,
    cells: std::collections::BTreeSet<Vec<Duration>>,
) -> Result<(Catalog, Vec<String>)> {
    let mut entries = Vec::new();
    let mut flags = Vec::new();
    for durations in cells {
        let class_is_non_retro = (0..durations.len()).any(|k| {
            let rot: Vec<Duration> =
                (0..durations.len()).map(|i| durations[(k + i) % durations.len()]).collect();
            RhythmSeq::new(rot).expect("non-empty").is_non_retrogradable()
        });
        let seq = RhythmSeq::new(durations)?;
        entries.push((seq.to_string(), seq.duration_vector(None).to_string()));
        flags.push(class_is_non_retro);
    }
    finish_catalog(CatalogKind::Rhythm, 0, nc, entries, &flags)
}

/// Shared naming and Z-relation detection. `entries` are (element,
/// features) pairs already in canonical order; `non_retro` flags align
/// with entries for rhythm catalogs.
fn finish_catalog(
    kind: CatalogKind,
    tet: u32,
    nc: usize,
    entries: Vec<(String, String)>,
    non_retro: &[bool],
) -> Result<(Catalog, Vec<String>)> {
    let mut feature_groups: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, features) in &entries {
        *feature_groups.entry(features.as_str()).or_default() += 1;
    }
    let mut rows = Vec::with_capacity(entries.len());
    let mut zrel = Vec::new();
    for (i, (element, features)) in entries.iter().enumerate() {
        let z = feature_groups[features.as_str()] > 1;
        let mut name = format!("{nc}-{}", i + 1);
        if z {
            name.push('Z');
        }
        if non_retro.get(i).copied().unwrap_or(false) {
            name.push('N');
        }
        if z {
            zrel.push(name.clone());
        }
        rows.push(CatalogRow { name, element: element.clone(), features: features.clone() });
    }
    Ok((Catalog { kind, tet, rows }, zrel))
}
