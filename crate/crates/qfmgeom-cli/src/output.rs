//! Deterministic writers: CSV with 12-significant-digit floats and P2 ASCII
//! PGM heatmaps.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Floats print with 12 significant digits in scientific notation, so equal
/// configs produce byte-identical files on every platform.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.11e}")
    }
}

/// Square matrix CSV: header row of point labels, one labelled row per point.
pub fn write_matrix_csv(path: &Path, labels: &[String], matrix: &[Vec<f64>]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "point")?;
    for label in labels {
        write!(w, ",{label}")?;
    }
    writeln!(w)?;
    for (i, row) in matrix.iter().enumerate() {
        write!(w, "{}", labels[i])?;
        for value in row {
            write!(w, ",{}", fmt_float(*value))?;
        }
        writeln!(w)?;
    }
    w.flush()
}

/// Generic CSV: explicit header and rows of already-formatted cells.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()
}

/// Grayscale heatmap as ASCII PGM (P2): `v = round(255 * d / max d)`, so the
/// largest entry maps to 255 and zeros (the diagonal) to 0. Non-finite
/// entries render as 0.
pub fn write_pgm(path: &Path, matrix: &[Vec<f64>]) -> std::io::Result<()> {
    let height = matrix.len();
    let width = matrix.first().map_or(0, Vec::len);
    let max = matrix
        .iter()
        .flatten()
        .copied()
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "P2")?;
    writeln!(w, "{width} {height}")?;
    writeln!(w, "255")?;
    for row in matrix {
        let pixels: Vec<String> = row
            .iter()
            .map(|v| {
                let value = if !v.is_finite() || max == 0.0 {
                    0u32
                } else {
                    (255.0 * v / max).round() as u32
                };
                value.to_string()
            })
            .collect();
        writeln!(w, "{}", pixels.join(" "))?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(0.5), "5.00000000000e-1");
        assert_eq!(fmt_float(f64::NAN), "nan");
        let parsed: f64 = fmt_float(1.0 / 3.0).parse().unwrap();
        assert!((parsed - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn pgm_scaling() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.pgm");
        write_pgm(&path, &[vec![0.0, 2.0], vec![1.0, f64::NAN]]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "P2");
        assert_eq!(lines[1], "2 2");
        assert_eq!(lines[2], "255");
        assert_eq!(lines[3], "0 255");
        assert_eq!(lines[4], "128 0");
    }
}
