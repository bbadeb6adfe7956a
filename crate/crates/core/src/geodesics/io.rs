//! Spectrum CSV: `word,trace,norm,length,primitive,multiplicity`, 15
//! significant digits, sorted by norm. Leading `#` lines carry the group
//! name, word-length cutoff and completeness radius.

use std::io::{Read, Write};
use std::path::Path;

use super::spectrum::{class_order, GeodesicClass, LengthSpectrum};
use super::word::Word;
use crate::error::{Error, Result};

pub const HEADER: [&str; 6] = ["word", "trace", "norm", "length", "primitive", "multiplicity"];

fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn write_spectrum<W: Write>(spectrum: &LengthSpectrum, mut out: W) -> Result<()> {
    let io = |e| Error::io("<spectrum stream>", e);
    writeln!(out, "# group={}", spectrum.group_name).map_err(io)?;
    writeln!(out, "# max_word_length={}", spectrum.max_word_length).map_err(io)?;
    writeln!(out, "# completeness_radius={}", sig15(spectrum.completeness_radius)).map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Parse(format!("csv: {e}"));
    w.write_record(HEADER).map_err(csv_err)?;
    for c in &spectrum.classes {
        w.write_record([
            c.word.to_string(),
            sig15(c.trace),
            sig15(c.norm),
            sig15(c.length),
            c.primitive.to_string(),
            c.multiplicity.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

pub fn save_spectrum(spectrum: &LengthSpectrum, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_spectrum(spectrum, std::io::BufWriter::new(f))
}

pub fn load_spectrum(path: impl AsRef<Path>) -> Result<LengthSpectrum> {
    let path = path.as_ref();
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let fallback = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_spectrum(f, &fallback)
}

/// Reads a spectrum CSV. Rows out of order are re-sorted with a warning.
pub fn read_spectrum<R: Read>(mut input: R, fallback_name: &str) -> Result<LengthSpectrum> {
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .map_err(|e| Error::io("<spectrum stream>", e))?;

    let mut group_name = fallback_name.to_string();
    let mut max_word_length = 0usize;
    let mut radius: Option<f64> = None;
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        let Some((key, value)) = line.trim_start_matches('#').trim().split_once('=') else {
            continue;
        };
        match key.trim() {
            "group" => group_name = value.trim().to_string(),
            "max_word_length" => max_word_length = value.trim().parse().unwrap_or(0),
            "completeness_radius" => radius = value.trim().parse().ok(),
            _ => {}
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse(format!("spectrum header: {e}")))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(Error::Parse(format!(
            "spectrum header must be {}, found {}",
            HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut classes = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("spectrum: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        classes.push(parse_row(&record, line)?);
    }
    if classes.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    if classes.windows(2).any(|w| class_order(&w[0], &w[1]).is_gt()) {
        log::warn!("spectrum rows are not sorted by norm; re-sorting");
    }
    let radius = radius.unwrap_or_else(|| classes.iter().map(|c| c.length).fold(0.0, f64::max));
    LengthSpectrum::new(classes, max_word_length, group_name, radius)
}

fn parse_row(record: &csv::StringRecord, line: u64) -> Result<GeodesicClass> {
    let bad = |reason: String| Error::MalformedRow { line, reason };
    if record.len() != HEADER.len() {
        return Err(bad(format!("expected {} fields, found {}", HEADER.len(), record.len())));
    }
    let num = |i: usize| -> Result<f64> {
        record[i]
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| bad(format!("{} {:?} is not a finite number", HEADER[i], &record[i])))
    };
    let word: Word = record[0].parse().map_err(|e| bad(format!("{e}")))?;
    let (trace, norm, length) = (num(1)?, num(2)?, num(3)?);
    if !(norm > 1.0) {
        return Err(bad(format!("norm {norm} must exceed 1")));
    }
    if !(length > 0.0) {
        return Err(bad(format!("length {length} must be positive")));
    }
    if !(trace > 2.0) {
        return Err(bad(format!("trace {trace} is not hyperbolic")));
    }
    let primitive = record[4]
        .trim()
        .parse::<bool>()
        .map_err(|_| bad(format!("primitive {:?} is not a boolean", &record[4])))?;
    let multiplicity = record[5]
        .trim()
        .parse::<u32>()
        .ok()
        .filter(|&m| m >= 1)
        .ok_or_else(|| bad(format!("multiplicity {:?} must be a positive integer", &record[5])))?;
    Ok(GeodesicClass {
        word,
        trace,
        norm,
        length,
        primitive,
        multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::{build_spectrum, GroupPresentation};

    fn to_string(s: &LengthSpectrum) -> String {
        let mut buf = Vec::new();
        write_spectrum(s, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn round_trip_is_stable_at_stored_precision() {
        let s = build_spectrum(&GroupPresentation::bolza(), 5).unwrap();
        let text = to_string(&s);
        let back = read_spectrum(text.as_bytes(), "x").unwrap();
        assert_eq!(back.group_name, "bolza");
        assert_eq!(back.max_word_length, 5);
        assert_eq!(back.classes.len(), s.classes.len());
        for (a, b) in s.classes.iter().zip(&back.classes) {
            assert_eq!(a.word, b.word);
            assert_eq!(a.primitive, b.primitive);
            assert_eq!(a.multiplicity, b.multiplicity);
            for (x, y) in [(a.trace, b.trace), (a.norm, b.norm), (a.length, b.length)] {
                assert!((x - y).abs() <= 1e-14 * x.abs());
            }
        }
        assert_eq!(to_string(&back), text);
    }

    const HEAD: &str = "word,trace,norm,length,primitive,multiplicity\n";

    #[test]
    fn rejects_norm_not_above_one() {
        let text = format!("{HEAD}a,4.8,1.0,0.0,true,2\n");
        let err = read_spectrum(text.as_bytes(), "x").unwrap_err();
        assert!(matches!(err, Error::MalformedRow { .. }), "{err}");
    }

    #[test]
    fn resorts_unsorted_rows() {
        let text = format!(
            "{HEAD}b,6.0,33.970562748477,3.52549,true,2\na,4.82842712474619,21.2671,3.05714,true,2\n"
        );
        let s = read_spectrum(text.as_bytes(), "x").unwrap();
        assert_eq!(s.classes[0].word.to_string(), "a");
        assert_eq!(s.min_norm, s.classes[0].norm);
    }

    #[test]
    fn header_only_is_empty() {
        assert!(matches!(read_spectrum(HEAD.as_bytes(), "x"), Err(Error::EmptySpectrum)));
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(matches!(read_spectrum("a,b\n1,2\n".as_bytes(), "x"), Err(Error::Parse(_))));
    }
}
