pub mod fit;
pub mod fuzz;
pub mod measure;
pub mod pipeline;
pub mod simulate;
pub mod spectrum;

use crate::format::fmt_sig12;
use trihelix::spectral::{FourierModel, Spectrum};

/// `k,b,d` lines for a fitted model; the `k = 0` row carries the offset.
pub(crate) fn coefficients_lines(model: &FourierModel) -> Vec<String> {
    let mut lines = vec!["k,b,d".to_string()];
    lines.push(format!("0,{},{}", fmt_sig12(model.offset), fmt_sig12(0.0)));
    for (idx, &(b, d)) in model.harmonics.iter().enumerate() {
        lines.push(format!("{},{},{}", idx + 1, fmt_sig12(b), fmt_sig12(d)));
    }
    lines
}

/// `k,V,V_normalized` lines; the normalized column is empty when the total
/// power is zero.
pub(crate) fn spectrum_lines(spectrum: &Spectrum) -> Vec<String> {
    let mut lines = vec!["k,V,V_normalized".to_string()];
    for (idx, &power) in spectrum.powers.iter().enumerate() {
        let normalized = spectrum
            .normalized
            .as_ref()
            .map(|n| fmt_sig12(n[idx]))
            .unwrap_or_default();
        lines.push(format!("{},{},{normalized}", idx + 1, fmt_sig12(power)));
    }
    lines
}

/// Writes a JSON document with a trailing newline.
pub(crate) fn write_json<T: serde::Serialize>(
    path: &std::path::Path,
    value: &T,
) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))
}
