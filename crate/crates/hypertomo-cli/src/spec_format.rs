//! Body-spec document format and the tabulated g-profile CSV.
//!
//! A body spec is a JSON tree with a `type` discriminator per node:
//!   lq_ball, complex_ellipsoid, two_ellipse, euclidean_ball, phase_test,
//!   dilate, tent, cotent, perturbed (g referenced by file path).
//! Unknown fields are rejected with the path to the offending node.

use std::path::Path;
use std::sync::Arc;

use hypertomo::bodies::{BodySpec, ZonalProfile, DEFAULT_BLEND_WIDTH};
use serde_json::Value;

#[derive(Debug)]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        path: path.to_string(),
        message: message.into(),
    })
}

fn get_f64(map: &serde_json::Map<String, Value>, key: &str, path: &str) -> Result<f64, ParseError> {
    match map.get(key) {
        Some(Value::Number(x)) => x
            .as_f64()
            .ok_or(())
            .or_else(|_| err(&format!("{path}.{key}"), "not representable as f64")),
        Some(_) => err(&format!("{path}.{key}"), "expected a number"),
        None => err(path, format!("missing field `{key}`")),
    }
}

fn get_usize(map: &serde_json::Map<String, Value>, key: &str, path: &str) -> Result<usize, ParseError> {
    match map.get(key) {
        Some(Value::Number(x)) => match x.as_u64() {
            Some(v) => Ok(v as usize),
            None => err(&format!("{path}.{key}"), "expected a non-negative integer"),
        },
        Some(_) => err(&format!("{path}.{key}"), "expected an integer"),
        None => err(path, format!("missing field `{key}`")),
    }
}

fn check_fields(
    map: &serde_json::Map<String, Value>,
    allowed: &[&str],
    path: &str,
) -> Result<(), ParseError> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return err(&format!("{path}.{key}"), "unknown field");
        }
    }
    Ok(())
}

/// Parse a body-spec document. Parameter ranges are validated after parsing.
pub fn parse_body_spec(doc: &Value) -> Result<BodySpec, ParseError> {
    let spec = parse_node(doc, "$")?;
    if let Err(e) = spec.validate() {
        return err("$", format!("validation failed: {e}"));
    }
    Ok(spec)
}

fn parse_node(v: &Value, path: &str) -> Result<BodySpec, ParseError> {
    let map = match v {
        Value::Object(m) => m,
        _ => return err(path, "expected an object"),
    };
    let ty = match map.get("type") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return err(&format!("{path}.type"), "expected a string"),
        None => return err(path, "missing field `type`"),
    };
    match ty {
        "lq_ball" => {
            check_fields(map, &["type", "n", "q"], path)?;
            Ok(BodySpec::LqBall {
                n: get_usize(map, "n", path)?,
                q: get_f64(map, "q", path)?,
            })
        }
        "complex_ellipsoid" => {
            check_fields(map, &["type", "axes"], path)?;
            let axes = match map.get("axes") {
                Some(Value::Array(a)) => a
                    .iter()
                    .enumerate()
                    .map(|(i, x)| match x {
                        Value::Number(n) => n.as_f64().ok_or(()).or_else(|_| {
                            err(&format!("{path}.axes[{i}]"), "not representable as f64")
                        }),
                        _ => err(&format!("{path}.axes[{i}]"), "expected a number"),
                    })
                    .collect::<Result<Vec<f64>, _>>()?,
                Some(_) => return err(&format!("{path}.axes"), "expected an array"),
                None => return err(path, "missing field `axes`"),
            };
            Ok(BodySpec::ComplexEllipsoid { axes })
        }
        "two_ellipse" => {
            check_fields(map, &["type", "n", "s", "b", "blend_width"], path)?;
            let blend_width = if map.contains_key("blend_width") {
                get_f64(map, "blend_width", path)?
            } else {
                DEFAULT_BLEND_WIDTH
            };
            Ok(BodySpec::TwoEllipseBody {
                n: get_usize(map, "n", path)?,
                s: get_f64(map, "s", path)?,
                b: get_f64(map, "b", path)?,
                blend_width,
            })
        }
        "euclidean_ball" => {
            check_fields(map, &["type", "n", "radius"], path)?;
            Ok(BodySpec::EuclideanBall {
                n: get_usize(map, "n", path)?,
                radius: get_f64(map, "radius", path)?,
            })
        }
        "phase_test" => {
            check_fields(map, &["type", "n", "delta"], path)?;
            Ok(BodySpec::PhaseTestBody {
                n: get_usize(map, "n", path)?,
                delta: get_f64(map, "delta", path)?,
            })
        }
        "dilate" => {
            check_fields(map, &["type", "alpha", "base"], path)?;
            let base = map
                .get("base")
                .ok_or(())
                .or_else(|_| err(path, "missing field `base`"))?;
            Ok(BodySpec::Dilate {
                alpha: get_f64(map, "alpha", path)?,
                base: Box::new(parse_node(base, &format!("{path}.base"))?),
            })
        }
        "tent" | "cotent" => {
            check_fields(map, &["type", "base"], path)?;
            let base = map
                .get("base")
                .ok_or(())
                .or_else(|_| err(path, "missing field `base`"))?;
            let inner = Box::new(parse_node(base, &format!("{path}.base"))?);
            Ok(if ty == "tent" {
                BodySpec::Tent { base: inner }
            } else {
                BodySpec::Cotent { base: inner }
            })
        }
        "perturbed" => {
            check_fields(map, &["type", "base", "g", "epsilon", "l"], path)?;
            let base = map
                .get("base")
                .ok_or(())
                .or_else(|_| err(path, "missing field `base`"))?;
            let g_path = match map.get("g") {
                Some(Value::String(s)) => s.clone(),
                Some(_) => return err(&format!("{path}.g"), "expected a file path string"),
                None => return err(path, "missing field `g`"),
            };
            let g = read_g_profile(Path::new(&g_path))
                .map_err(|e| ParseError {
                    path: format!("{path}.g"),
                    message: format!("failed to load profile {g_path}: {e}"),
                })?;
            Ok(BodySpec::Perturbed {
                base: Box::new(parse_node(base, &format!("{path}.base"))?),
                g: Arc::new(g),
                epsilon: get_f64(map, "epsilon", path)?,
                codim: get_usize(map, "l", path)?,
            })
        }
        other => err(&format!("{path}.type"), format!("unknown body type `{other}`")),
    }
}

/// Write a tabulated zonal profile: comment headers carry the axis, data
/// rows carry the reduced coordinate and the value.
pub fn write_g_profile(path: &Path, g: &ZonalProfile) -> std::io::Result<()> {
    use std::io::Write;
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "# hypertomo zonal profile v1")?;
    let axis: Vec<String> = g.axis().iter().map(|x| format!("{x:.17e}")).collect();
    writeln!(out, "# axis={}", axis.join(","))?;
    writeln!(out, "a,value")?;
    let (xs, ys) = g.table();
    for (x, y) in xs.iter().zip(ys) {
        writeln!(out, "{x:.17e},{y:.17e}")?;
    }
    Ok(())
}

pub fn read_g_profile(path: &Path) -> std::io::Result<ZonalProfile> {
    let text = std::fs::read_to_string(path)?;
    let mut axis: Option<Vec<f64>> = None;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line == "a,value" {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# axis=") {
            axis = Some(
                rest.split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<Vec<f64>, _>>()
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?,
            );
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(',');
        let (a, v) = (parts.next(), parts.next());
        match (a, v) {
            (Some(a), Some(v)) => {
                xs.push(a.trim().parse::<f64>().map_err(|e| {
                    std::io::Error::new(std::io::ErrorKind::InvalidData, e)
                })?);
                ys.push(v.trim().parse::<f64>().map_err(|e| {
                    std::io::Error::new(std::io::ErrorKind::InvalidData, e)
                })?);
            }
            _ => {
                return Err(std::io::Error::new(
                    std::io::ErrorKind::InvalidData,
                    format!("malformed row: {line}"),
                ))
            }
        }
    }
    let axis = axis.ok_or_else(|| {
        std::io::Error::new(std::io::ErrorKind::InvalidData, "missing `# axis=` header")
    })?;
    if xs.len() < 4 {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            "profile table needs at least 4 rows",
        ));
    }
    Ok(ZonalProfile::new(axis, xs, ys))
}
