//! Data sonification: two-column series input, scale-constrained pitch
//! mapping, and Standard MIDI File output (format 0, single track).

use std::fmt;
use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::Rational;
use crate::rhythm::{Duration, RhythmError};

#[derive(Debug, Error)]
pub enum SonifyError {
    #[error("data series is empty")]
    EmptySeries,
    #[error("non-numeric field on line {0}")]
    ParseError(usize),
    #[error("unknown scale {0:?}")]
    UnknownScale(String),
    #[error("MIDI note {0} outside 0..=127")]
    NoteRange(i64),
    #[error("velocity {0} outside 1..=127")]
    BadVelocity(i64),
    #[error("octave count must be at least 1")]
    NoOctaves,
    #[error(transparent)]
    Rhythm(#[from] RhythmError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, SonifyError>;

/// Two equal-length columns of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct DataSeries {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Parses whitespace- or comma-delimited two-column numeric text. Blank
/// lines and `#` comments are ignored; extra columns are tolerated.
pub fn parse_series(text: &str) -> Result<DataSeries> {
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() < 2 {
            return Err(SonifyError::ParseError(lineno + 1));
        }
        let parse = |s: &str| s.parse::<f64>().map_err(|_| SonifyError::ParseError(lineno + 1));
        x.push(parse(fields[0])?);
        y.push(parse(fields[1])?);
    }
    if x.is_empty() {
        return Err(SonifyError::EmptySeries);
    }
    Ok(DataSeries { x, y })
}

/// Reads a data series from a text file.
pub fn read_series<P: AsRef<Path>>(path: P) -> Result<DataSeries> {
    parse_series(&std::fs::read_to_string(path)?)
}

/// A named scale as semitone offsets within one octave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleMap {
    pub name: String,
    pub degrees: Vec<u8>,
}

impl ScaleMap {
    pub fn nnote(&self) -> usize {
        self.degrees.len()
    }
}

/// Built-in scale definitions for MIDI mapping.
pub fn scale_map(name: &str) -> Result<ScaleMap> {
    let degrees: Vec<u8> = match name {
        "chromatic" => (0..12).collect(),
        "major" => vec![0, 2, 4, 5, 7, 9, 11],
        "natural_minor" => vec![0, 2, 3, 5, 7, 8, 10],
        "pentatonic" => vec![0, 2, 4, 7, 9],
        "wholetone" => vec![0, 2, 4, 6, 8, 10],
        _ => return Err(SonifyError::UnknownScale(name.to_string())),
    };
    Ok(ScaleMap { name: name.to_string(), degrees })
}

/// One scored event: one or more simultaneous notes held for a duration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoteEvent {
    pub notes: Vec<u8>,
    pub duration: String,
    pub velocity: u8,
}

impl NoteEvent {
    pub fn new(notes: Vec<u8>, duration: Duration, velocity: u8) -> Result<Self> {
        for &n in &notes {
            if n > 127 {
                return Err(SonifyError::NoteRange(n as i64));
            }
        }
        if velocity == 0 || velocity > 127 {
            return Err(SonifyError::BadVelocity(velocity as i64));
        }
        Ok(NoteEvent { notes, duration: duration.to_string(), velocity })
    }

    pub fn duration_value(&self) -> Result<Duration> {
        Ok(Duration::parse(&self.duration)?)
    }
}

/// An ordered event list ready for MIDI emission.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScoreEvents {
    pub events: Vec<NoteEvent>,
}

impl fmt::Display for ScoreEvents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

pub const DEFAULT_VELOCITY: u8 = 80;

/// Maps a data series onto a scale: y values are min-max normalized to
/// integer scale indices in `[0, nnote * octaves)` and converted to MIDI
/// notes from `base_note` upward. A constant series maps to index 0.
/// Every event is a quarter note at the default velocity.
pub fn midi_map(
    series: &DataSeries,
    scale: &ScaleMap,
    base_note: u8,
    octaves: u32,
) -> Result<ScoreEvents> {
    if series.y.is_empty() {
        return Err(SonifyError::EmptySeries);
    }
    if octaves == 0 {
        return Err(SonifyError::NoOctaves);
    }
    let nnote = scale.nnote();
    let span = nnote as u32 * octaves;
    let ymin = series.y.iter().copied().fold(f64::INFINITY, f64::min);
    let ymax = series.y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = ymax - ymin;
    let quarter = Duration::new(1, 4).expect("positive");
    let mut events = Vec::with_capacity(series.y.len());
    for &v in &series.y {
        let idx = if range == 0.0 {
            0u32
        } else {
            (((v - ymin) / range) * (span - 1) as f64).round() as u32
        };
        let note =
            base_note as i64 + 12 * (idx as usize / nnote) as i64 + scale.degrees[idx as usize % nnote] as i64;
        if !(0..=127).contains(&note) {
            return Err(SonifyError::NoteRange(note));
        }
        events.push(NoteEvent::new(vec![note as u8], quarter, DEFAULT_VELOCITY)?);
    }
    Ok(ScoreEvents { events })
}

fn push_varint(buf: &mut Vec<u8>, value: u32) {
    debug_assert!(value < 1 << 28);
    for shift in [21u32, 14, 7] {
        if value >> shift != 0 {
            buf.push(((value >> shift) & 0x7f | 0x80) as u8);
        }
    }
    buf.push((value & 0x7f) as u8);
}

/// Serializes the event list as a format-0 Standard MIDI File: one tempo
/// meta event, then note-on/note-off pairs with delta times of
/// `duration * 4 * ticks_per_quarter` (durations in whole-note units).
pub fn midi_bytes(events: &ScoreEvents, ticks_per_quarter: u16, tempo_bpm: u32) -> Result<Vec<u8>> {
    let mut track: Vec<u8> = Vec::new();
    // set tempo (microseconds per quarter note)
    let uspq = 60_000_000u32 / tempo_bpm.max(1);
    track.extend([0x00, 0xff, 0x51, 0x03]);
    track.extend(&uspq.to_be_bytes()[1..]);
    for event in &events.events {
        let duration = event.duration_value()?;
        let ticks_exact: Rational =
            duration.value() * Ratio::from_integer(4 * ticks_per_quarter as i64);
        let ticks = ticks_exact.round().to_integer().max(0) as u32;
        for &note in &event.notes {
            push_varint(&mut track, 0);
            track.extend([0x90, note, event.velocity]);
        }
        let mut remaining = ticks;
        for &note in &event.notes {
            push_varint(&mut track, remaining);
            remaining = 0;
            track.extend([0x80, note, 0x40]);
        }
    }
    track.extend([0x00, 0xff, 0x2f, 0x00]); // end of track

    let mut out = Vec::with_capacity(track.len() + 22);
    out.extend(b"MThd");
    out.extend(6u32.to_be_bytes());
    out.extend(0u16.to_be_bytes()); // format 0
    out.extend(1u16.to_be_bytes()); // one track
    out.extend(ticks_per_quarter.to_be_bytes());
    out.extend(b"MTrk");
    out.extend((track.len() as u32).to_be_bytes());
    out.extend(track);
    Ok(out)
}

/// Writes the event list to a `.mid` file.
pub fn write_midi<P: AsRef<Path>>(
    events: &ScoreEvents,
    path: P,
    ticks_per_quarter: u16,
    tempo_bpm: u32,
) -> Result<()> {
    let bytes = midi_bytes(events, ticks_per_quarter, tempo_bpm)?;
    std::fs::write(path, bytes)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_parsing() {
        let s = parse_series("0 1\n1 2\n").unwrap();
        assert_eq!(s.x, vec![0.0, 1.0]);
        assert_eq!(s.y, vec![1.0, 2.0]);
        let c = parse_series("0,1\n1,2\n").unwrap();
        assert_eq!(c, s);
        let commented = parse_series("# header\n\n0 1\n1 2\n").unwrap();
        assert_eq!(commented, s);
        assert!(matches!(parse_series(""), Err(SonifyError::EmptySeries)));
        assert!(matches!(parse_series("0 a\n"), Err(SonifyError::ParseError(1))));
        assert!(matches!(parse_series("0 1\n2\n"), Err(SonifyError::ParseError(2))));
    }

    #[test]
    fn scales() {
        assert_eq!(scale_map("major").unwrap().nnote(), 7);
        assert_eq!(scale_map("chromatic").unwrap().nnote(), 12);
        assert_eq!(scale_map("natural_minor").unwrap().nnote(), 7);
        assert_eq!(scale_map("pentatonic").unwrap().nnote(), 5);
        assert_eq!(scale_map("wholetone").unwrap().nnote(), 6);
        assert!(matches!(scale_map("unknown"), Err(SonifyError::UnknownScale(_))));
    }

    #[test]
    fn midi_map_normalization() {
        let series = DataSeries { x: vec![0.0, 1.0], y: vec![0.0, 1.0] };
        let chromatic = scale_map("chromatic").unwrap();
        let events = midi_map(&series, &chromatic, 60, 1).unwrap();
        let notes: Vec<u8> = events.events.iter().map(|e| e.notes[0]).collect();
        assert_eq!(notes, vec![60, 71]);

        let constant = DataSeries { x: vec![0.0, 1.0], y: vec![5.0, 5.0] };
        let events = midi_map(&constant, &chromatic, 60, 2).unwrap();
        assert!(events.events.iter().all(|e| e.notes[0] == 60));
    }

    #[test]
    fn midi_map_is_monotone() {
        let series = DataSeries {
            x: (0..20).map(|i| i as f64).collect(),
            y: vec![
                3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0, 5.0, 8.0, 9.0, 7.0, 9.0,
                3.0, 2.0, 3.0, 8.0, 4.0,
            ],
        };
        let scale = scale_map("major").unwrap();
        let events = midi_map(&series, &scale, 48, 3).unwrap();
        for i in 0..series.y.len() {
            for j in 0..series.y.len() {
                if series.y[i] <= series.y[j] {
                    assert!(events.events[i].notes[0] <= events.events[j].notes[0]);
                }
            }
        }
        let lo = 48u8;
        let hi = 48 + 12 * 3;
        assert!(events.events.iter().all(|e| (lo..=hi).contains(&e.notes[0])));
    }

    #[test]
    fn midi_header_and_deltas() {
        let quarter = Duration::new(1, 4).unwrap();
        let events = ScoreEvents {
            events: vec![NoteEvent::new(vec![60], quarter, 80).unwrap()],
        };
        let bytes = midi_bytes(&events, 480, 120).unwrap();
        assert_eq!(&bytes[..4], &[0x4d, 0x54, 0x68, 0x64]);
        assert_eq!(&bytes[4..8], &[0, 0, 0, 6]);
        assert_eq!(&bytes[8..10], &[0, 0]); // format 0
        assert_eq!(&bytes[10..12], &[0, 1]); // single track
        assert_eq!(&bytes[12..14], &480u16.to_be_bytes());
        // note-off delta of a quarter note at 480 tpq is 480 = 0x83 0x60
        let idx = bytes.windows(3).position(|w| w == [0x90, 60, 80]).unwrap();
        assert_eq!(&bytes[idx + 3..idx + 5], &[0x83, 0x60]);
    }

    #[test]
    fn event_validation() {
        let q = Duration::new(1, 4).unwrap();
        assert!(matches!(
            NoteEvent::new(vec![200], q, 80),
            Err(SonifyError::NoteRange(200))
        ));
        assert!(matches!(NoteEvent::new(vec![60], q, 0), Err(SonifyError::BadVelocity(0))));
    }

    #[test]
    fn varint_encoding() {
        let mut buf = Vec::new();
        push_varint(&mut buf, 0);
        assert_eq!(buf, [0x00]);
        buf.clear();
        push_varint(&mut buf, 0x7f);
        assert_eq!(buf, [0x7f]);
        buf.clear();
        push_varint(&mut buf, 0x80);
        assert_eq!(buf, [0x81, 0x00]);
        buf.clear();
        push_varint(&mut buf, 100_000);
        assert_eq!(buf, [0x86, 0x8d, 0x20]);
    }
}
