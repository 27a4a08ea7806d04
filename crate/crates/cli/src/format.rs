//! Deterministic numeric formatting and file writing.
//!
//! All numeric CSV fields use fixed notation with 12 significant digits, a
//! `.` decimal separator, and no locale dependence, so re-runs are
//! byte-identical.

use std::io::Write;
use std::path::Path;

/// Formats a finite double in fixed notation with 12 significant digits.
///
/// Implemented by rounding once via scientific formatting and then placing
/// the decimal point, which avoids double rounding and float-log pitfalls.
pub fn fmt_sig12(v: f64) -> String {
    debug_assert!(v.is_finite(), "CSV values must be finite, got {v}");
    if !v.is_finite() {
        return format!("{v}");
    }
    // 11 digits after the point = 12 significant digits
    let sci = format!("{:.11e}", v);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific notation");
    let exponent: i32 = exponent.parse().expect("decimal exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);

    let mut out = String::new();
    if negative && digits.bytes().any(|b| b != b'0') {
        out.push('-');
    }
    if exponent < 0 {
        out.push_str("0.");
        for _ in 0..(-exponent - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    } else {
        let int_len = exponent as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            for _ in 0..(int_len - digits.len()) {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    out
}

/// Writes lines joined by `\n` (with a trailing newline) to `path`.
pub fn write_lines<I, S>(path: &Path, lines: I) -> anyhow::Result<()>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let file = std::fs::File::create(path)
        .map_err(|e| anyhow::anyhow!("cannot create {}: {e}", path.display()))?;
    let mut writer = std::io::BufWriter::new(file);
    for line in lines {
        writer.write_all(line.as_ref().as_bytes())?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}
