//! A surface together with its ambient metric, optional frame pins and the
//! choice of derivative backend.

use serde::{Deserialize, Serialize};

use crate::ambient::{AmbientMetric, Vec4};
use crate::error::Error;
use crate::exprjet::{immersion_jet, parse_with, Expr, Immersion, ImmersionJet, Jet};
use crate::fd::{expr_jets_fd, immersion_jet_fd};
use crate::frame::{frame_field, FrameField, MovingFrame, PinFields};

/// Where derivatives come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Exact truncated-Taylor propagation.
    Jet,
    /// Central differences with Richardson extrapolation.
    Fd,
}

impl Backend {
    /// Default tolerance for verdicts computed on this backend.
    pub fn default_tol(self) -> f64 {
        match self {
            Backend::Jet => 1e-8,
            Backend::Fd => 1e-4,
        }
    }

    /// Magnitude (relative to the matching power of the direction length)
    /// below which computed vectors are treated as numerically zero.
    pub fn chop(self) -> f64 {
        match self {
            Backend::Jet => 1e-11,
            Backend::Fd => 1e-6,
        }
    }
}

/// Frame vectors supplied as coordinate expressions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Pins {
    pub xi: Option<[Expr; 4]>,
    pub v: Option<[Expr; 4]>,
    pub u: Option<[Expr; 4]>,
    pub n: Option<[Expr; 4]>,
}

impl Pins {
    /// Parse pins using the identifiers of `m`.
    pub fn parse(m: &Immersion, xi: Option<[&str; 4]>, v: Option<[&str; 4]>, u: Option<[&str; 4]>, n: Option<[&str; 4]>) -> Result<Self, Error> {
        let vars = m.variables();
        let one = |t: Option<[&str; 4]>| -> Result<Option<[Expr; 4]>, Error> {
            t.map(|texts| {
                let mut out = Vec::with_capacity(4);
                for text in texts {
                    out.push(parse_with(text, &vars)?);
                }
                Ok(out.try_into().expect("four components"))
            })
            .transpose()
        };
        Ok(Pins {
            xi: one(xi)?,
            v: one(v)?,
            u: one(u)?,
            n: one(n)?,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_none() && self.v.is_none() && self.u.is_none() && self.n.is_none()
    }

    pub fn fields(&self, p: [f64; 2], backend: Backend) -> Result<PinFields<Jet>, Error> {
        let one = |e: &Option<[Expr; 4]>| -> Result<Option<Vec4<Jet>>, Error> {
            e.as_ref()
                .map(|exprs| match backend {
                    Backend::Jet => {
                        let params = [Jet::variable(0, p[0]), Jet::variable(1, p[1])];
                        let mut out = [Jet::constant(0.0); 4];
                        for (o, e) in out.iter_mut().zip(exprs) {
                            *o = e.eval(&params).map_err(|source| Error::Domain { point: p, source })?;
                        }
                        Ok(Vec4(out))
                    }
                    Backend::Fd => expr_jets_fd(exprs, p),
                })
                .transpose()
        };
        Ok(PinFields {
            xi: one(&self.xi)?,
            v: one(&self.v)?,
            u: one(&self.u)?,
            n: one(&self.n)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub name: String,
    pub immersion: Immersion,
    pub metric: AmbientMetric,
    pub pins: Pins,
}

impl Surface {
    pub fn new(name: impl Into<String>, immersion: Immersion, metric: AmbientMetric) -> Self {
        Surface {
            name: name.into(),
            immersion,
            metric,
            pins: Pins::default(),
        }
    }

    pub fn with_pins(mut self, pins: Pins) -> Self {
        self.pins = pins;
        self
    }

    pub fn without_pins(&self) -> Self {
        Surface {
            pins: Pins::default(),
            ..self.clone()
        }
    }

    pub fn jet(&self, p: [f64; 2], backend: Backend) -> Result<ImmersionJet, Error> {
        match backend {
            Backend::Jet => immersion_jet(&self.immersion, p),
            Backend::Fd => immersion_jet_fd(&self.immersion, p),
        }
    }

    pub fn frame_field(&self, p: [f64; 2], backend: Backend) -> Result<FrameField<Jet>, Error> {
        let jet = self.jet(p, backend)?;
        let pins = self.pins.fields(p, backend)?;
        frame_field(&jet.tangent_fields(), &self.metric, &pins)
    }

    pub fn frame(&self, p: [f64; 2]) -> Result<MovingFrame, Error> {
        Ok(self.frame_field(p, Backend::Jet)?.value())
    }
}
