//! TSPLIB95 reader for symmetric TSP instances.
//!
//! Supported: `EUC_2D`, `ATT`, `GEO` and `EXPLICIT` weights; explicit
//! matrices in `FULL_MATRIX`, `LOWER_DIAG_ROW`, `LOWER_ROW`, `UPPER_ROW` and
//! `UPPER_DIAG_ROW` layouts. Distances follow the TSPLIB95 integer rules.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeightKind {
    #[serde(rename = "EUC_2D")]
    Euc2d,
    Att,
    Geo,
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    pub name: String,
    pub n: usize,
    pub weight_kind: WeightKind,
    pub coords: Option<Vec<(f64, f64)>>,
    pub explicit_weights: Option<Matrix<i64>>,
    pub known_optimum: Option<i64>,
}

impl TspInstance {
    /// TSPLIB distance between nodes `i` and `j` (0-based).
    pub fn distance(&self, i: usize, j: usize) -> i64 {
        if let Some(m) = &self.explicit_weights {
            return m.get(i, j);
        }
        let c = self
            .coords
            .as_ref()
            .expect("coordinate instance has coords");
        match self.weight_kind {
            WeightKind::Euc2d => euc_2d(c[i], c[j]),
            WeightKind::Att => att(c[i], c[j]),
            WeightKind::Geo => geo(c[i], c[j]),
            WeightKind::Explicit => unreachable!("explicit instance without matrix"),
        }
    }

    /// Full integer distance matrix.
    pub fn matrix(&self) -> Matrix<i64> {
        match &self.explicit_weights {
            Some(m) => m.clone(),
            None => Matrix::from_fn(self.n, |i, j| if i == j { 0 } else { self.distance(i, j) }),
        }
    }
}

/// Checked form of [`TspInstance::distance`].
pub fn tsplib_distance(inst: &TspInstance, i: usize, j: usize) -> Result<i64> {
    if i >= inst.n || j >= inst.n {
        return Err(Error::InvalidInput(format!(
            "node index ({i}, {j}) out of range for {} with n={}",
            inst.name, inst.n
        )));
    }
    Ok(inst.distance(i, j))
}

/// Nearest integer, halves rounded away from zero.
fn nint(x: f64) -> i64 {
    x.round() as i64
}

fn euc_2d(a: (f64, f64), b: (f64, f64)) -> i64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    nint((dx * dx + dy * dy).sqrt())
}

fn att(a: (f64, f64), b: (f64, f64)) -> i64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    let r = ((dx * dx + dy * dy) / 10.0).sqrt();
    let t = nint(r);
    if (t as f64) < r {
        t + 1
    } else {
        t
    }
}

// TSPLIB's truncated PI; the published GEO distances depend on it.
#[allow(clippy::approx_constant)]
const GEO_PI: f64 = 3.141592;
const GEO_RRR: f64 = 6378.388;

/// DDD.MM coordinate to radians: integer part is degrees, fraction is minutes.
fn geo_radians(x: f64) -> f64 {
    let deg = x.trunc();
    let min = x - deg;
    GEO_PI * (deg + 5.0 * min / 3.0) / 180.0
}

fn geo(a: (f64, f64), b: (f64, f64)) -> i64 {
    let (lat_a, lon_a) = (geo_radians(a.0), geo_radians(a.1));
    let (lat_b, lon_b) = (geo_radians(b.0), geo_radians(b.1));
    let q1 = (lon_a - lon_b).cos();
    let q2 = (lat_a - lat_b).cos();
    let q3 = (lat_a + lat_b).cos();
    (GEO_RRR * (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).acos() + 1.0) as i64
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    FullMatrix,
    LowerDiagRow,
    LowerRow,
    UpperRow,
    UpperDiagRow,
}

impl Layout {
    fn parse(value: &str, line: usize) -> Result<Self> {
        Ok(match value {
            "FULL_MATRIX" => Layout::FullMatrix,
            "LOWER_DIAG_ROW" => Layout::LowerDiagRow,
            "LOWER_ROW" => Layout::LowerRow,
            "UPPER_ROW" => Layout::UpperRow,
            "UPPER_DIAG_ROW" => Layout::UpperDiagRow,
            other => {
                return Err(Error::Unsupported(format!(
                    "EDGE_WEIGHT_FORMAT: {other} (line {line})"
                )))
            }
        })
    }

    /// `(row, col)` cells in file order.
    fn cells(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..n {
            let cols = match self {
                Layout::FullMatrix => 0..n,
                Layout::LowerDiagRow => 0..i + 1,
                Layout::LowerRow => 0..i,
                Layout::UpperRow => i + 1..n,
                Layout::UpperDiagRow => i..n,
            };
            out.extend(cols.map(|j| (i, j)));
        }
        out
    }
}

#[derive(Default)]
struct Header {
    name: Option<String>,
    dimension: Option<usize>,
    weight_kind: Option<WeightKind>,
    layout: Option<Layout>,
}

fn is_keyword_line(line: &str) -> bool {
    line.trim_start()
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic())
}

/// Parses a TSPLIB95 `.tsp` document.
pub fn parse_tsplib(mut source: impl Read) -> Result<TspInstance> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let lines: Vec<&str> = text.lines().collect();

    let mut header = Header::default();
    let mut coords: Option<Vec<(f64, f64)>> = None;
    let mut weights: Option<Vec<(usize, i64)>> = None;
    let mut at = 0;

    while at < lines.len() {
        let lineno = at + 1;
        let raw = lines[at].trim();
        at += 1;
        if raw.is_empty() {
            continue;
        }
        let (key, value) = match raw.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (raw, ""),
        };
        match key {
            "EOF" => break,
            "NAME" => header.name = Some(value.to_string()),
            "COMMENT" => {}
            "TYPE" => {
                if value != "TSP" {
                    return Err(Error::Unsupported(format!("TYPE: {value} (line {lineno})")));
                }
            }
            "DIMENSION" => {
                let n = value.parse::<usize>().map_err(|_| {
                    Error::parse(
                        lineno,
                        format!("DIMENSION must be a positive integer, got {value:?}"),
                    )
                })?;
                if n == 0 {
                    return Err(Error::parse(lineno, "DIMENSION must be positive"));
                }
                header.dimension = Some(n);
            }
            "EDGE_WEIGHT_TYPE" => {
                header.weight_kind = Some(match value {
                    "EUC_2D" => WeightKind::Euc2d,
                    "ATT" => WeightKind::Att,
                    "GEO" => WeightKind::Geo,
                    "EXPLICIT" => WeightKind::Explicit,
                    other => {
                        return Err(Error::Unsupported(format!(
                            "EDGE_WEIGHT_TYPE: {other} (line {lineno})"
                        )))
                    }
                })
            }
            "EDGE_WEIGHT_FORMAT" => header.layout = Some(Layout::parse(value, lineno)?),
            "NODE_COORD_TYPE" if value == "TWOD_COORDS" => {}
            "DISPLAY_DATA_TYPE" => {}
            "NODE_COORD_SECTION" | "EDGE_WEIGHT_SECTION" | "DISPLAY_DATA_SECTION" => {
                let body_start = at;
                let mut tokens: Vec<(usize, &str)> = Vec::new();
                while at < lines.len() && !is_keyword_line(lines[at]) {
                    tokens.extend(lines[at].split_whitespace().map(|t| (at + 1, t)));
                    at += 1;
                }
                let n = header.dimension.ok_or_else(|| {
                    Error::parse(lineno, format!("{key} appears before DIMENSION"))
                })?;
                match key {
                    "NODE_COORD_SECTION" => {
                        coords = Some(parse_coords(&tokens, n, body_start + 1)?);
                    }
                    "EDGE_WEIGHT_SECTION" => {
                        weights = Some(
                            tokens
                                .iter()
                                .map(|&(l, t)| {
                                    let v = t.parse::<f64>().map_err(|_| {
                                        Error::parse(l, format!("malformed edge weight {t:?}"))
                                    })?;
                                    if v.fract() != 0.0 {
                                        return Err(Error::parse(
                                            l,
                                            format!("edge weight {t} is not an integer"),
                                        ));
                                    }
                                    Ok((l, v as i64))
                                })
                                .collect::<Result<_>>()?,
                        );
                    }
                    _ => {}
                }
            }
            other => {
                return Err(Error::Unsupported(format!("{other} (line {lineno})")));
            }
        }
    }

    let n = header
        .dimension
        .ok_or_else(|| Error::parse(None, "missing DIMENSION"))?;
    let weight_kind = header
        .weight_kind
        .ok_or_else(|| Error::parse(None, "missing EDGE_WEIGHT_TYPE"))?;
    let name = header.name.unwrap_or_default();

    let (coords, explicit_weights) = match weight_kind {
        WeightKind::Explicit => {
            let layout = header
                .layout
                .ok_or_else(|| Error::parse(None, "EXPLICIT weights need EDGE_WEIGHT_FORMAT"))?;
            let values =
                weights.ok_or_else(|| Error::parse(None, "missing EDGE_WEIGHT_SECTION"))?;
            (None, Some(expand(layout, n, &values)?))
        }
        _ => {
            let coords = coords.ok_or_else(|| Error::parse(None, "missing NODE_COORD_SECTION"))?;
            (Some(coords), None)
        }
    };

    Ok(TspInstance {
        name,
        n,
        weight_kind,
        coords,
        explicit_weights,
        known_optimum: None,
    })
}

fn parse_coords(tokens: &[(usize, &str)], n: usize, first_line: usize) -> Result<Vec<(f64, f64)>> {
    if tokens.len() != 3 * n {
        return Err(Error::parse(
            first_line,
            format!(
                "dimension mismatch: NODE_COORD_SECTION has {} values, expected {} for {n} nodes",
                tokens.len(),
                3 * n
            ),
        ));
    }
    let mut coords = vec![None; n];
    for rec in tokens.chunks(3) {
        let line = rec[0].0;
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| Error::parse(line, format!("malformed coordinate value {t:?}")))
        };
        let id = rec[0]
            .1
            .parse::<usize>()
            .ok()
            .filter(|&id| (1..=n).contains(&id))
            .ok_or_else(|| Error::parse(line, format!("invalid node id {:?}", rec[0].1)))?;
        if coords[id - 1].is_some() {
            return Err(Error::parse(line, format!("duplicate node id {id}")));
        }
        coords[id - 1] = Some((num(rec[1].1)?, num(rec[2].1)?));
    }
    Ok(coords
        .into_iter()
        .map(|c| c.expect("all ids seen"))
        .collect())
}

fn expand(layout: Layout, n: usize, values: &[(usize, i64)]) -> Result<Matrix<i64>> {
    let cells = layout.cells(n);
    if values.len() != cells.len() {
        return Err(Error::parse(
            values.first().map(|v| v.0),
            format!(
                "dimension mismatch: EDGE_WEIGHT_SECTION has {} values, expected {} for {n} nodes",
                values.len(),
                cells.len()
            ),
        ));
    }
    let mut m = Matrix::zeros(n);
    let mut filled = vec![false; n * n];
    for (&(i, j), &(line, w)) in cells.iter().zip(values) {
        if i == j {
            if w != 0 {
                return Err(Error::parse(
                    line,
                    format!("nonzero diagonal entry at ({i}, {i})"),
                ));
            }
            continue;
        }
        if w < 0 {
            return Err(Error::parse(line, format!("negative weight at ({i}, {j})")));
        }
        if filled[j * n + i] && m.get(j, i) != w {
            return Err(Error::parse(
                line,
                format!("asymmetric weights at ({j}, {i}): {} vs {w}", m.get(j, i)),
            ));
        }
        m.set(i, j, w);
        m.set(j, i, w);
        filled[i * n + j] = true;
    }
    Ok(m)
}
