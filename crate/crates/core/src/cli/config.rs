//! Surface definition files (TOML, `schema = 1`).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ambient::AmbientMetric;
use crate::error::Error;
use crate::exprjet::Immersion;
use crate::sections::DirectionKind;
use crate::surface::{Backend, Pins, Surface};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendChoice {
    Jet,
    Fd,
    Both,
}

impl BackendChoice {
    pub fn backends(self) -> &'static [Backend] {
        match self {
            BackendChoice::Jet => &[Backend::Jet],
            BackendChoice::Fd => &[Backend::Fd],
            BackendChoice::Both => &[Backend::Jet, Backend::Fd],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Inner-product relations of the moving frame.
    Frame,
    /// Structural identities of the induced package.
    Identities,
    Planar(DirectionKind),
    /// Theorem residual verdicts match the planarity verdict.
    Equivalence(DirectionKind),
    /// Jet section derivatives match the traced curve.
    Agreement(DirectionKind),
    /// `ξ → αξ` covariance.
    Gauge,
    /// Classification expectations and implications.
    Classify,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Frame,
        Check::Identities,
        Check::Planar(DirectionKind::Degenerate),
        Check::Planar(DirectionKind::Nondegenerate),
        Check::Equivalence(DirectionKind::Degenerate),
        Check::Equivalence(DirectionKind::Nondegenerate),
        Check::Agreement(DirectionKind::Degenerate),
        Check::Agreement(DirectionKind::Nondegenerate),
        Check::Gauge,
        Check::Classify,
    ];

    pub fn parse(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.to_string() == name)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Frame => f.write_str("frame"),
            Check::Identities => f.write_str("identities"),
            Check::Planar(k) => write!(f, "planar_{}", k.name()),
            Check::Equivalence(k) => write!(f, "equivalence_{}", k.name()),
            Check::Agreement(k) => write!(f, "agreement_{}", k.name()),
            Check::Gauge => f.write_str("gauge"),
            Check::Classify => f.write_str("classify"),
        }
    }
}

/// Expected classification verdicts; unset entries are not checked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub totally_geodesic: Option<bool>,
    pub totally_umbilical: Option<bool>,
    pub minimal: Option<bool>,
    pub irrotational: Option<bool>,
    pub screen_conformal: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub jet: f64,
    pub fd: f64,
}

impl Tolerances {
    pub fn for_backend(&self, b: Backend) -> f64 {
        match b {
            Backend::Jet => self.jet,
            Backend::Fd => self.fd,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceConfig {
    pub name: String,
    pub description: Option<String>,
    pub surface: Surface,
    pub grid: [usize; 2],
    /// Extra sample points beyond the grid.
    pub points: Vec<[f64; 2]>,
    pub checks: Vec<Check>,
    pub tol: Tolerances,
    pub backend: BackendChoice,
    pub expect: Expectations,
}

impl SurfaceConfig {
    pub fn sample(&self) -> Vec<[f64; 2]> {
        let mut out = self.surface.immersion.grid(self.grid);
        out.extend(&self.points);
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    schema: u32,
    name: String,
    description: Option<String>,
    signature: Vec<i8>,
    immersion: RawImmersion,
    #[serde(default)]
    pins: RawPins,
    #[serde(default)]
    sample: RawSample,
    checks: Option<Vec<String>>,
    #[serde(default)]
    tolerance: RawTolerance,
    backend: Option<BackendChoice>,
    #[serde(default)]
    expect: Expectations,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImmersion {
    form: String,
    coordinates: Option<Vec<String>>,
    free: Option<[usize; 2]>,
    equations: Option<BTreeMap<String, String>>,
    domain: [[f64; 2]; 2],
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawPins {
    xi: Option<Vec<String>>,
    v: Option<Vec<String>>,
    u: Option<Vec<String>>,
    n: Option<Vec<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSample {
    grid: Option<[usize; 2]>,
    points: Option<Vec<[f64; 2]>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawTolerance {
    jet: Option<f64>,
    fd: Option<f64>,
}

fn invalid(field: &str, msg: impl fmt::Display) -> Error {
    Error::Config(format!("{field}: {msg}"))
}

fn four<'a>(field: &str, v: &'a [String]) -> Result<[&'a str; 4], Error> {
    match v {
        [a, b, c, d] => Ok([a, b, c, d]),
        _ => Err(invalid(field, format!("expected 4 components, found {}", v.len()))),
    }
}

fn as_refs(t: &Option<[String; 4]>) -> Option<[&str; 4]> {
    t.as_ref().map(|a| [a[0].as_str(), a[1].as_str(), a[2].as_str(), a[3].as_str()])
}

fn immersion(raw: &RawImmersion) -> Result<Immersion, Error> {
    let [[a, b], [c, d]] = raw.domain;
    if !(a < b && c < d) || [a, b, c, d].iter().any(|x| !x.is_finite()) {
        return Err(invalid("immersion.domain", "each interval must be finite and increasing"));
    }
    match raw.form.as_str() {
        "parametric" => {
            let coords = raw.coordinates.as_ref().ok_or_else(|| invalid("immersion.coordinates", "required for parametric form"))?;
            Immersion::parametric(four("immersion.coordinates", coords)?, raw.domain)
        }
        "graph" => {
            let free = raw.free.ok_or_else(|| invalid("immersion.free", "required for graph form"))?;
            let eqs = raw.equations.as_ref().ok_or_else(|| invalid("immersion.equations", "required for graph form"))?;
            let mut dependent = Vec::new();
            for (key, text) in eqs {
                let k = key
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|k| (1..=4).contains(k) && !free.contains(k))
                    .ok_or_else(|| invalid("immersion.equations", format!("`{key}` is not a dependent coordinate")))?;
                dependent.push((k, text.as_str()));
            }
            let dependent: [(usize, &str); 2] =
                dependent.try_into().map_err(|_| invalid("immersion.equations", "expected exactly two equations"))?;
            Immersion::graph(free, dependent, raw.domain)
        }
        other => Err(invalid("immersion.form", format!("unknown form `{other}` (parametric or graph)"))),
    }
}

impl SurfaceConfig {
    pub fn from_toml(text: &str, origin: &str) -> Result<Self, Error> {
        let raw: Raw = toml::from_str(text).map_err(|e| Error::Config(format!("{origin}: {e}")))?;
        if raw.schema != SCHEMA {
            return Err(invalid("schema", format!("unsupported version {} (expected {SCHEMA})", raw.schema)));
        }
        let signs: [i8; 4] = raw.signature.as_slice().try_into().map_err(|_| invalid("signature", "expected 4 signs"))?;
        let metric = AmbientMetric::new(signs).map_err(|e| invalid("signature", e))?;
        let m = immersion(&raw.immersion)?;

        let pin = |field: &str, v: &Option<Vec<String>>| -> Result<Option<[String; 4]>, Error> {
            v.as_ref().map(|v| four(field, v).map(|a| a.map(String::from))).transpose()
        };
        let texts = [
            pin("pins.xi", &raw.pins.xi)?,
            pin("pins.v", &raw.pins.v)?,
            pin("pins.u", &raw.pins.u)?,
            pin("pins.n", &raw.pins.n)?,
        ];
        let pins = Pins::parse(&m, as_refs(&texts[0]), as_refs(&texts[1]), as_refs(&texts[2]), as_refs(&texts[3]))?;

        let grid = raw.sample.grid.unwrap_or([5, 5]);
        let points = raw.sample.points.unwrap_or_default();
        if grid.contains(&0) && points.is_empty() {
            return Err(invalid("sample", "no sample points"));
        }
        let checks = match raw.checks {
            None => Check::ALL.to_vec(),
            Some(names) => {
                let mut out = Vec::new();
                for n in names {
                    let c = Check::parse(&n).ok_or_else(|| invalid("checks", format!("unknown check `{n}`")))?;
                    if out.contains(&c) {
                        return Err(invalid("checks", format!("`{n}` listed twice")));
                    }
                    out.push(c);
                }
                out
            }
        };
        let tol = Tolerances {
            jet: raw.tolerance.jet.unwrap_or(Backend::Jet.default_tol()),
            fd: raw.tolerance.fd.unwrap_or(Backend::Fd.default_tol()),
        };
        if !(tol.jet > 0.0 && tol.fd > 0.0) {
            return Err(invalid("tolerance", "must be positive"));
        }
        Ok(SurfaceConfig {
            surface: Surface::new(raw.name.clone(), m, metric).with_pins(pins),
            name: raw.name,
            description: raw.description,
            grid,
            points,
            checks,
            tol,
            backend: raw.backend.unwrap_or(BackendChoice::Both),
            expect: raw.expect,
        })
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<SurfaceConfig, Error> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    SurfaceConfig::from_toml(&text, &path.display().to_string())
}
