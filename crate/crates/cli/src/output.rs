//! CSV tables, SVG plots and atomic file writes.

use std::io::Write;
use std::path::Path;

use qcapulse::analysis::SweepResult;
use qcapulse::ComplexMatrix;

use crate::CliError;

/// Seventeen significant digits, enough to reproduce every double exactly.
pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("writing to memory cannot fail")
}

/// One line per row; each entry contributes its real and imaginary part.
pub fn unitary_csv(m: &ComplexMatrix) -> Vec<u8> {
    let mut w = csv_writer();
    for i in 0..m.dim() {
        let row = (0..m.dim()).flat_map(|j| [number(m[(i, j)].re), number(m[(i, j)].im)]);
        w.write_record(row).expect("in-memory csv");
    }
    finish(w)
}

pub const SWEEP_HEADER: [&str; 4] = ["gamma", "error_norm", "bound_simplified", "bound_raw"];

pub fn sweep_csv(r: &SweepResult) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record(SWEEP_HEADER).expect("in-memory csv");
    for k in 0..r.len() {
        let row = [r.gamma_values[k], r.error_norms[k], r.bound_values[k], r.raw_bound_values[k]];
        w.write_record(row.map(number)).expect("in-memory csv");
    }
    finish(w)
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

/// Error norm and both bounds against gamma on a logarithmic y axis.
/// Non-positive values cannot be drawn on that axis and are left out.
pub fn sweep_svg(r: &SweepResult) -> String {
    let series: [(&str, &str, &[f64]); 3] = [
        ("error norm", "#1f77b4", &r.error_norms),
        ("bound (simplified)", "#d62728", &r.bound_values),
        ("bound (raw)", "#2ca02c", &r.raw_bound_values),
    ];
    let positive = series.iter().flat_map(|s| s.2.iter().copied()).filter(|v| *v > 0.0 && v.is_finite());
    let (lo, hi) = positive.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (dec_lo, dec_hi) = if lo.is_finite() {
        let a = lo.log10().floor();
        let b = hi.log10().ceil();
        (a, if b > a { b } else { a + 1.0 })
    } else {
        (-1.0, 0.0)
    };
    let (g_lo, g_hi) = match (r.gamma_values.first(), r.gamma_values.last()) {
        (Some(a), Some(b)) if b > a => (*a, *b),
        (Some(a), _) => (*a - 1.0, *a + 1.0),
        _ => (0.0, 1.0),
    };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |g: f64| LEFT + (g - g_lo) / (g_hi - g_lo) * plot_w;
    let py = |v: f64| TOP + (dec_hi - v.log10()) / (dec_hi - dec_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    let mut d = dec_lo;
    while d <= dec_hi {
        let y = py(10f64.powf(d));
        svg.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>\n<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">1e{d}</text>\n",
            LEFT + plot_w,
            LEFT - 6.0,
            y + 4.0
        ));
        d += 1.0;
    }
    for k in 0..=4 {
        let g = g_lo + (g_hi - g_lo) * k as f64 / 4.0;
        let x = px(g);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{g:.4}</text>\n",
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">\u{3b3}/E\u{2080}</text>\n",
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">norm</text>\n",
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    ));
    for (k, (label, color, values)) in series.iter().enumerate() {
        let points: Vec<String> = r
            .gamma_values
            .iter()
            .zip(values.iter())
            .filter(|(_, v)| **v > 0.0 && v.is_finite())
            .map(|(g, v)| format!("{:.2},{:.2}", px(*g), py(*v)))
            .collect();
        if !points.is_empty() {
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                points.join(" ")
            ));
        }
        let ly = TOP + 10.0 + 18.0 * k as f64;
        let lx = LEFT + plot_w + 12.0;
        svg.push_str(&format!(
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n<text x=\"{:.2}\" y=\"{:.2}\">{label}</text>\n",
            lx + 20.0,
            lx + 26.0,
            ly + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
