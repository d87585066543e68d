//! Instance generators, point/matrix file formats, and the JSON run report.
//!
//! Points CSV: one point per row, comma-separated decimals, optionally
//! preceded by a single non-numeric header row.
//!
//! Matrix: the first line holds `n`, followed by `n` rows of `n`
//! whitespace-separated values.

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{MetricInstance, MetricKind};
use crate::radii::RadiusAssignment;
use crate::solver::{Algorithm, RadiiMode, SolveOutcome, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    UniformBox,
    GaussianBlobs,
    Line,
    DuplicateHeavy,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform_box" => Ok(GeneratorKind::UniformBox),
            "gaussian_blobs" => Ok(GeneratorKind::GaussianBlobs),
            "line" => Ok(GeneratorKind::Line),
            "duplicate_heavy" => Ok(GeneratorKind::DuplicateHeavy),
            other => Err(Error::InvalidGenerator(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    /// Edge length of the sampling box.
    pub side: f64,
    pub blobs: usize,
    pub sigma: f64,
    /// Copies of each location for `duplicate_heavy`.
    pub multiplicity: usize,
    /// Explicit 1-D positions for `line`; overrides `n`.
    pub coords: Option<Vec<f64>>,
    pub metric: MetricKind,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, dim: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            dim,
            seed,
            side: 100.0,
            blobs: 5,
            sigma: 1.0,
            multiplicity: 3,
            coords: None,
            metric: MetricKind::Euclidean,
        }
    }

    /// A 1-D instance at the given positions.
    pub fn line(coords: &[f64]) -> Self {
        let mut spec = Self::new(GeneratorKind::Line, coords.len(), 1, 0);
        spec.coords = Some(coords.to_vec());
        spec
    }

    /// Parses `kind[:key=value,...]`, e.g. `uniform_box:n=600,dim=2,seed=3`
    /// or `line:coords=0;1;2;10`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut spec = Self::new(kind.trim().parse()?, 100, 2, 0);
        let bad = |key: &str, value: &str| {
            Error::InvalidGenerator(format!("bad value `{value}` for `{key}`"))
        };
        for pair in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidGenerator(format!("expected key=value, got `{pair}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" => spec.n = value.parse().map_err(|_| bad(key, value))?,
                "dim" => spec.dim = value.parse().map_err(|_| bad(key, value))?,
                "seed" => spec.seed = value.parse().map_err(|_| bad(key, value))?,
                "side" => spec.side = value.parse().map_err(|_| bad(key, value))?,
                "blobs" => spec.blobs = value.parse().map_err(|_| bad(key, value))?,
                "sigma" => spec.sigma = value.parse().map_err(|_| bad(key, value))?,
                "multiplicity" => spec.multiplicity = value.parse().map_err(|_| bad(key, value))?,
                "metric" => spec.metric = value.parse().map_err(|_| bad(key, value))?,
                "coords" => {
                    let xs = value
                        .split(';')
                        .map(|v| v.trim().parse::<f64>().map_err(|_| bad(key, v)))
                        .collect::<Result<Vec<_>>>()?;
                    spec.n = xs.len();
                    spec.dim = 1;
                    spec.coords = Some(xs);
                }
                other => {
                    return Err(Error::InvalidGenerator(format!("unknown key `{other}`")));
                }
            }
        }
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidGenerator(msg.to_string()));
        if self.n == 0 {
            return fail("n must be >= 1");
        }
        if self.dim == 0 {
            return fail("dim must be >= 1");
        }
        if !(self.side > 0.0 && self.side.is_finite()) {
            return fail("side must be positive and finite");
        }
        match self.kind {
            GeneratorKind::GaussianBlobs if self.blobs == 0 => fail("blobs must be >= 1"),
            GeneratorKind::GaussianBlobs if !(self.sigma >= 0.0 && self.sigma.is_finite()) => {
                fail("sigma must be non-negative and finite")
            }
            GeneratorKind::DuplicateHeavy if self.multiplicity == 0 => {
                fail("multiplicity must be >= 1")
            }
            GeneratorKind::Line => match &self.coords {
                Some(c) if c.len() != self.n => fail("coords length must equal n"),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

/// Builds an instance; deterministic per spec (including seed).
pub fn generate(spec: &GeneratorSpec) -> Result<MetricInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, dim, side) = (spec.n, spec.dim, spec.side);
    let uniform_point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..dim).map(|_| rng.random::<f64>() * side).collect()
    };
    let coords: Vec<f64> = match spec.kind {
        GeneratorKind::UniformBox => (0..n).flat_map(|_| uniform_point(&mut rng)).collect(),
        GeneratorKind::GaussianBlobs => {
            let centers: Vec<Vec<f64>> = (0..spec.blobs).map(|_| uniform_point(&mut rng)).collect();
            let noise = Normal::new(0.0, spec.sigma)
                .map_err(|e| Error::InvalidGenerator(e.to_string()))?;
            (0..n)
                .flat_map(|_| {
                    let c = &centers[rng.random_range(0..centers.len())];
                    c.iter().map(|&x| x + noise.sample(&mut rng)).collect::<Vec<_>>()
                })
                .collect()
        }
        GeneratorKind::Line => {
            let xs: Vec<f64> = match &spec.coords {
                Some(c) => c.clone(),
                None => (0..n).map(|_| rng.random::<f64>() * side).collect(),
            };
            xs.iter()
                .flat_map(|&x| std::iter::once(x).chain(std::iter::repeat_n(0.0, dim - 1)))
                .collect()
        }
        GeneratorKind::DuplicateHeavy => {
            let distinct = n.div_ceil(spec.multiplicity);
            let sites: Vec<Vec<f64>> = (0..distinct).map(|_| uniform_point(&mut rng)).collect();
            (0..n)
                .flat_map(|i| sites[i / spec.multiplicity].clone())
                .collect()
        }
    };
    MetricInstance::from_flat(coords, dim, spec.metric)
}

fn parse_error(path: &str, line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        col,
        msg: msg.into(),
    }
}

fn parse_finite(field: &str, path: &str, line: usize, col: usize) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| parse_error(path, line, col, format!("`{}` is not a number", field.trim())))?;
    if !v.is_finite() {
        return Err(parse_error(path, line, col, format!("non-finite value `{}`", field.trim())));
    }
    Ok(v)
}

/// Parses points CSV text. `source` names the input in error messages.
pub fn parse_points_csv(text: &str, source: &str, metric: MetricKind) -> Result<MetricInstance> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut dim = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if rows.is_empty()
            && dim.is_none()
            && fields.iter().any(|f| f.trim().parse::<f64>().is_err())
        {
            // header row
            dim = Some(fields.len());
            continue;
        }
        let expected = *dim.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(parse_error(
                source,
                line,
                fields.len().min(expected) + 1,
                format!("expected {expected} fields, found {}", fields.len()),
            ));
        }
        let row = fields
            .iter()
            .enumerate()
            .map(|(c, f)| parse_finite(f, source, line, c + 1))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_error(source, 1, 1, "no points"));
    }
    MetricInstance::from_points(&rows, metric)
}

pub fn load_points_csv(path: impl AsRef<Path>, metric: MetricKind) -> Result<MetricInstance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_points_csv(&text, &path.display().to_string(), metric)
}

/// Parses matrix text. Structural violations report the offending line and
/// column (1-based; line 1 is the header).
pub fn parse_matrix(text: &str, source: &str) -> Result<MetricInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(source, 1, 1, "missing size header"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| parse_error(source, header_line, 1, "size header must be an integer"))?;
    if n == 0 {
        return Err(parse_error(source, header_line, 1, "size must be >= 1"));
    }
    let mut rows = Vec::with_capacity(n);
    let mut line_of_row = Vec::with_capacity(n);
    for (line, raw) in lines.by_ref() {
        if rows.len() == n {
            return Err(parse_error(source, line, 1, format!("more than {n} rows")));
        }
        let row = raw
            .split_whitespace()
            .enumerate()
            .map(|(c, f)| parse_finite(f, source, line, c + 1))
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != n {
            return Err(parse_error(
                source,
                line,
                row.len().min(n) + 1,
                format!("expected {n} values, found {}", row.len()),
            ));
        }
        rows.push(row);
        line_of_row.push(line);
    }
    if rows.len() != n {
        return Err(parse_error(
            source,
            line_of_row.last().map_or(header_line, |l| l + 1),
            1,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    MetricInstance::from_matrix(&rows).map_err(|e| match e {
        Error::NonzeroDiagonal { index, value } => parse_error(
            source,
            line_of_row[index],
            index + 1,
            format!("diagonal entry is {value}, expected 0"),
        ),
        Error::Asymmetric { i, j, a, b } => parse_error(
            source,
            line_of_row[j],
            i + 1,
            format!("entry ({j},{i}) = {b} differs from ({i},{j}) = {a}"),
        ),
        Error::NegativeDistance { row, col, value } => parse_error(
            source,
            line_of_row[row],
            col + 1,
            format!("negative distance {value}"),
        ),
        other => other,
    })
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<MetricInstance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text, &path.display().to_string())
}

/// Points CSV for a coordinate instance (no header). Values use the
/// shortest round-tripping representation.
pub fn points_to_csv(inst: &MetricInstance) -> Option<String> {
    inst.dim()?;
    let mut out = String::new();
    for i in 0..inst.len() {
        let row = inst.point(i)?;
        let fields: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", fields.join(","));
    }
    Some(out)
}

/// Matrix text for any instance.
pub fn matrix_to_text(inst: &MetricInstance) -> String {
    let n = inst.len();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| inst.dist(i, j).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// (De)serializes `f64` values that may be infinite: finite values as JSON
/// numbers, infinities as the strings `"inf"` / `"-inf"`.
pub mod json_f64 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    fn to_repr(v: f64) -> Repr {
        if v == f64::INFINITY {
            Repr::Str("inf".into())
        } else if v == f64::NEG_INFINITY {
            Repr::Str("-inf".into())
        } else {
            Repr::Num(v)
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Repr::Str(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
            Repr::Str(s) => Err(E::custom(format!("invalid float `{s}`"))),
        }
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        to_repr(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            v.map(to_repr).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Option::<Repr>::deserialize(d)?.map(from_repr).transpose()
        }
    }
}

/// Machine-readable summary of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub k: usize,
    pub alpha: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    pub centers: Vec<usize>,
    pub cost: Option<f64>,
    #[serde(with = "json_f64::option")]
    pub max_fairness_ratio: Option<f64>,
    pub radii_mode: Option<RadiiMode>,
    pub exact_radius_computations: usize,
    pub fail: bool,
    /// `None` when the run cannot tell (sampling failure, plain k-center).
    pub feasible: Option<bool>,
    pub delegated: bool,
    pub wall_ms: f64,
}

impl RunReport {
    /// Builds a report. `exact_radii`, when given, is used to fill
    /// `max_fairness_ratio` if the solution does not already carry ratios.
    pub fn from_outcome(
        inst: &MetricInstance,
        outcome: &SolveOutcome,
        exact_radii: Option<&RadiusAssignment>,
        wall_ms: f64,
    ) -> Result<Self> {
        let info = outcome.info();
        let mut report = RunReport {
            algorithm: info.algorithm,
            n: inst.len(),
            k: info.k,
            alpha: info.alpha,
            epsilon: info.epsilon,
            delta: info.delta,
            seed: info.seed,
            centers: Vec::new(),
            cost: None,
            max_fairness_ratio: None,
            radii_mode: info.radii_mode,
            exact_radius_computations: info.exact_radius_computations,
            fail: outcome.is_fail(),
            feasible: None,
            delegated: info.delegated,
            wall_ms,
        };
        match outcome {
            SolveOutcome::Solved(solution) => {
                report.fill_solution(inst, solution, exact_radii)?;
                report.feasible = match info.algorithm {
                    Algorithm::Gonzalez => None,
                    _ => Some(true),
                };
            }
            SolveOutcome::NoFeasible(_) => report.feasible = Some(false),
            SolveOutcome::Fail(_) => {}
        }
        Ok(report)
    }

    fn fill_solution(
        &mut self,
        inst: &MetricInstance,
        solution: &Solution,
        exact_radii: Option<&RadiusAssignment>,
    ) -> Result<()> {
        self.centers = solution.centers.clone();
        self.cost = Some(solution.cost);
        self.max_fairness_ratio = match (solution.max_fairness_ratio(), exact_radii) {
            (Some(r), _) => Some(r),
            (None, Some(radii)) => solution.clone().with_fairness(inst, radii)?.max_fairness_ratio(),
            (None, None) => None,
        };
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn write_report(report: &RunReport, path: impl AsRef<Path>) -> Result<()> {
    let mut text = report.to_json()?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_report(path: impl AsRef<Path>) -> Result<RunReport> {
    RunReport::from_json(&std::fs::read_to_string(path)?)
}
