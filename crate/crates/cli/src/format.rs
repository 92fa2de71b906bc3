use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// `v` to 15 significant digits, fixed notation for moderate magnitudes.
pub fn sig15(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..15).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (14 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::unreadable(path, e))?;
    w.write_record(header).map_err(|e| CliError::unreadable(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| CliError::unreadable(path, e))?;
    }
    w.flush().map_err(CliError::io(path))
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(CliError::io(path))
}

/// Writes every file or none: on failure the ones already written are
/// removed.
pub fn write_all(files: &[(PathBuf, String)]) -> CliResult<()> {
    for (i, (path, contents)) in files.iter().enumerate() {
        if let Err(e) = fs::write(path, contents) {
            for (done, _) in &files[..i] {
                let _ = fs::remove_file(done);
            }
            return Err(CliError::Io { path: path.clone(), source: e });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(4.0), "4");
        assert_eq!(sig15(65536.0), "65536");
        assert_eq!(sig15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(sig15(std::f64::consts::E), "2.71828182845905");
        assert_eq!(sig15(-1.5e-9), "-1.5e-9");
        assert_eq!(sig15(6.02214076e23), "6.02214076e23");
        assert_eq!(sig15(f64::INFINITY), "inf");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 1.7976931348623157e308] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
        }
    }
}
