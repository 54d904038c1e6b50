//! Artifact writers: versioned JSON reports, CSV tables, optional SVG plots.
//!
//! Artifacts are deterministic for a fixed config and seed: JSON maps are
//! key-sorted, floats are written through the standard formatter, and every
//! report embeds the config echo and the seed it ran with.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

/// Assemble the versioned report envelope.
pub fn envelope(command: &str, config: Value, seed: u64, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(1));
    map.insert("command".into(), json!(command));
    map.insert("config".into(), config);
    map.insert("seed".into(), json!(seed));
    map.insert("result".into(), body);
    Value::Object(map)
}

pub fn write_json(path: Option<&Path>, value: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// CSV with a fixed column order; every quantitative row carries its error
/// estimate column.
pub fn write_csv(path: Option<&Path>, header: &[&str], rows: &[Vec<f64>]) -> std::io::Result<()> {
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.17e}")).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            std::io::stdout().flush()
        }
    }
}

/// Minimal SVG polyline plot of (x, y) rows; a display of the same data
/// written to CSV, not an interface.
pub fn write_svg_plot(path: &Path, title: &str, points: &[(f64, f64)]) -> std::io::Result<()> {
    let (w, h, pad) = (640.0, 400.0, 46.0);
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    if !(xmax > xmin) {
        xmax = xmin + 1.0;
    }
    if !(ymax > ymin) {
        ymax = ymin + 1.0;
    }
    let sx = |x: f64| pad + (x - xmin) / (xmax - xmin) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - ymin) / (ymax - ymin) * (h - 2.0 * pad);
    let mut path_data = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        path_data.push_str(if i == 0 { "M" } else { "L" });
        path_data.push_str(&format!("{:.2},{:.2} ", sx(x), sy(y)));
    }
    let zero_line = if ymin < 0.0 && ymax > 0.0 {
        format!(
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-dasharray="4"/>"##,
            pad,
            sy(0.0),
            w - pad,
            sy(0.0)
        )
    } else {
        String::new()
    };
    let svg = format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">
<rect width="100%" height="100%" fill="white"/>
<text x="{tx}" y="24" font-family="monospace" font-size="14">{title}</text>
{zero_line}
<path d="{path_data}" fill="none" stroke="#1f6feb" stroke-width="1.5"/>
<text x="{pad}" y="{hb}" font-family="monospace" font-size="11">x: [{xmin:.4}, {xmax:.4}]  y: [{ymin:.4e}, {ymax:.4e}]</text>
</svg>
"##,
        tx = pad,
        hb = h - 12.0,
    );
    std::fs::write(path, svg)
}
