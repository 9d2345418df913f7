//! Norm selection shared by the pitch, rhythm and network modules.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::ToPrimitive;

pub type Rational = Ratio<i64>;

/// Norm used when comparing feature vectors or voice-leading displacements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Metric {
    #[default]
    Euclidean,
    Taxicab,
    Chebyshev,
}

impl Metric {
    /// Exact comparison key over integer displacement vectors. For the
    /// Euclidean norm this is the sum of squares, so minimizers can be
    /// selected without any floating point.
    pub(crate) fn key_i64<I>(self, diffs: I) -> i64
    where
        I: IntoIterator<Item = i64>,
    {
        match self {
            Metric::Euclidean => diffs.into_iter().map(|d| d * d).sum(),
            Metric::Taxicab => diffs.into_iter().map(|d| d.abs()).sum(),
            Metric::Chebyshev => diffs.into_iter().map(|d| d.abs()).max().unwrap_or(0),
        }
    }

    pub(crate) fn value_from_key_i64(self, key: i64) -> f64 {
        match self {
            Metric::Euclidean => (key as f64).sqrt(),
            Metric::Taxicab | Metric::Chebyshev => key as f64,
        }
    }

    /// Exact comparison key over rational displacement vectors.
    pub(crate) fn key_ratio<I>(self, diffs: I) -> Rational
    where
        I: IntoIterator<Item = Rational>,
    {
        match self {
            Metric::Euclidean => diffs.into_iter().map(|d| d * d).sum(),
            Metric::Taxicab => {
                diffs.into_iter().map(|d| if d < Rational::from_integer(0) { -d } else { d }).sum()
            }
            Metric::Chebyshev => diffs
                .into_iter()
                .map(|d| if d < Rational::from_integer(0) { -d } else { d })
                .max()
                .unwrap_or_else(|| Rational::from_integer(0)),
        }
    }

    pub(crate) fn value_from_key_ratio(self, key: Rational) -> f64 {
        let v = key.to_f64().unwrap_or(f64::NAN);
        match self {
            Metric::Euclidean => v.sqrt(),
            Metric::Taxicab | Metric::Chebyshev => v,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Metric::Euclidean => "euclidean",
            Metric::Taxicab => "taxicab",
            Metric::Chebyshev => "chebyshev",
        };
        f.write_str(name)
    }
}

/// Error for unrecognized metric names.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown metric {0:?} (expected euclidean, taxicab or chebyshev)")]
pub struct UnknownMetric(pub String);

impl FromStr for Metric {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" => Ok(Metric::Euclidean),
            "taxicab" => Ok(Metric::Taxicab),
            "chebyshev" => Ok(Metric::Chebyshev),
            _ => Err(UnknownMetric(s.to_string())),
        }
    }
}
