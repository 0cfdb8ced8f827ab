use crate::ambient::{Vec4, relative_wedge2_residual};
use crate::error::Error;

use super::expr::{DomainError, Expr};
use super::jet::{Jet, Scalar, MAX_ORDER};
use super::parse::{parse_with, Variables};

/// Value and partial derivatives up to order three of a scalar function of
/// `(u1, u2)`. Mixed partials are stored once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub value: f64,
    /// `[f_1, f_2]`
    pub first: [f64; 2],
    /// `[f_11, f_12, f_22]`
    pub second: [f64; 3],
    /// `[f_111, f_112, f_122, f_222]`
    pub third: [f64; 4],
}

impl From<&Jet> for Jet3 {
    fn from(j: &Jet) -> Self {
        let p = j.partials();
        Jet3 {
            value: p[0],
            first: [p[1], p[2]],
            second: [p[3], p[4], p[5]],
            third: [p[6], p[7], p[8], p[9]],
        }
    }
}

impl Jet3 {
    pub fn to_jet(&self) -> Jet {
        Jet::from_partials(
            [
                self.value,
                self.first[0],
                self.first[1],
                self.second[0],
                self.second[1],
                self.second[2],
                self.third[0],
                self.third[1],
                self.third[2],
                self.third[3],
            ],
            MAX_ORDER,
        )
    }
}

/// Order-3 jet of `e` at `p`.
pub fn jet3(e: &Expr, p: [f64; 2]) -> Result<Jet3, DomainError> {
    let params = [Jet::variable(0, p[0]), Jet::variable(1, p[1])];
    let j = e.eval(&params)?;
    if !j.is_finite() {
        return Err(DomainError {
            node: e.to_string(),
            arg: j.value(),
        });
    }
    Ok(Jet3::from(&j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImmersionForm {
    Parametric,
    /// Two ambient coordinates (1-based) serve as the parameters.
    Graph { free: [usize; 2] },
}

/// A surface `(u1, u2) ↦ R^4` given by closed-form coordinate expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct Immersion {
    coords: [Expr; 4],
    form: ImmersionForm,
    domain: [[f64; 2]; 2],
}

impl Immersion {
    /// Four coordinate expressions in `u1`, `u2`.
    pub fn parametric(exprs: [&str; 4], domain: [[f64; 2]; 2]) -> Result<Self, Error> {
        let vars = Variables::parametric();
        let mut coords = Vec::with_capacity(4);
        for text in exprs {
            coords.push(parse_with(text, &vars)?);
        }
        Ok(Immersion {
            coords: coords.try_into().expect("four coordinates"),
            form: ImmersionForm::Parametric,
            domain,
        })
    }

    /// Graph over the coordinates `free` (1-based, ascending order not
    /// required); `dependent` gives the remaining two coordinates as
    /// `(coordinate, expression)`. The domain box refers to the free
    /// coordinates in the order given.
    pub fn graph(free: [usize; 2], dependent: [(usize, &str); 2], domain: [[f64; 2]; 2]) -> Result<Self, Error> {
        let mut slots: [Option<Expr>; 4] = Default::default();
        for (k, &c) in free.iter().enumerate() {
            check_coordinate(c)?;
            slots[c - 1] = Some(Expr::Param {
                index: k,
                name: format!("x{c}"),
            });
        }
        let vars = Variables::graph(free);
        for (c, text) in dependent {
            check_coordinate(c)?;
            if slots[c - 1].is_some() {
                return Err(Error::Config(format!("coordinate x{c} given twice")));
            }
            slots[c - 1] = Some(parse_with(text, &vars)?);
        }
        let coords = slots.map(|s| s.expect("all coordinates assigned"));
        Ok(Immersion {
            coords,
            form: ImmersionForm::Graph { free },
            domain,
        })
    }

    pub fn coords(&self) -> &[Expr; 4] {
        &self.coords
    }

    pub fn form(&self) -> ImmersionForm {
        self.form
    }

    /// Identifiers accepted in expressions attached to this surface (pins).
    pub fn variables(&self) -> Variables {
        match self.form {
            ImmersionForm::Parametric => Variables::parametric(),
            ImmersionForm::Graph { free } => Variables::graph(free),
        }
    }

    pub fn domain(&self) -> [[f64; 2]; 2] {
        self.domain
    }

    pub fn with_domain(mut self, domain: [[f64; 2]; 2]) -> Self {
        self.domain = domain;
        self
    }

    pub fn eval<S: Scalar>(&self, p: [f64; 2], params: &[S; 2]) -> Result<Vec4<S>, Error> {
        let mut out: [S; 4] = std::array::from_fn(|_| S::zero());
        for (i, e) in self.coords.iter().enumerate() {
            out[i] = e.eval(params).map_err(|source| Error::Domain { point: p, source })?;
        }
        Ok(Vec4(out))
    }

    /// Ambient position of the parameter point.
    pub fn point(&self, p: [f64; 2]) -> Result<Vec4, Error> {
        self.eval(p, &p)
    }

    /// Parameter points of an `n1 × n2` grid spanning the domain box.
    pub fn grid(&self, n: [usize; 2]) -> Vec<[f64; 2]> {
        let axis = |k: usize, m: usize| -> Vec<f64> {
            let [lo, hi] = self.domain[k];
            if m <= 1 {
                return vec![0.5 * (lo + hi)];
            }
            (0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64).collect()
        };
        let (a, b) = (axis(0, n[0]), axis(1, n[1]));
        a.iter().flat_map(|&x| b.iter().map(move |&y| [x, y])).collect()
    }
}

fn check_coordinate(c: usize) -> Result<(), Error> {
    if (1..=4).contains(&c) {
        Ok(())
    } else {
        Err(Error::Config(format!("coordinate index {c} outside 1..=4")))
    }
}

/// Coordinate-wise order-3 jets of an immersion at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmersionJet {
    pub point: [f64; 2],
    pub coords: Vec4<Jet>,
}

/// Relative threshold on `|X_1 ∧ X_2| / (|X_1||X_2|)` below which the map
/// is not an immersion.
pub const RANK_TOL: f64 = 1e-10;

impl ImmersionJet {
    /// Wrap precomputed coordinate jets, checking the rank condition.
    pub fn new(point: [f64; 2], coords: Vec4<Jet>) -> Result<Self, Error> {
        let j = ImmersionJet { point, coords };
        let [x1, x2] = j.tangents();
        if relative_wedge2_residual(&x1, &x2) < RANK_TOL {
            return Err(Error::NotAnImmersion { point });
        }
        Ok(j)
    }

    /// Coordinate tangent fields `X_i = ∂X/∂u^i` as jets (one order lower).
    pub fn tangent_fields(&self) -> [Vec4<Jet>; 2] {
        std::array::from_fn(|i| self.coords.map(|c| c.partial(i).expect("immersion jets carry order 3")))
    }

    pub fn tangents(&self) -> [Vec4; 2] {
        self.tangent_fields().map(|t| t.value())
    }

    pub fn jet3(&self, coordinate: usize) -> Jet3 {
        Jet3::from(&self.coords[coordinate])
    }
}

/// Per-coordinate jets by exact truncated-Taylor propagation.
pub fn immersion_jet(m: &Immersion, p: [f64; 2]) -> Result<ImmersionJet, Error> {
    let params = [Jet::variable(0, p[0]), Jet::variable(1, p[1])];
    let coords = m.eval(p, &params)?;
    for (e, j) in m.coords.iter().zip(coords.0.iter()) {
        if !j.is_finite() {
            return Err(Error::Domain {
                point: p,
                source: DomainError {
                    node: e.to_string(),
                    arg: j.value(),
                },
            });
        }
    }
    ImmersionJet::new(p, coords)
}
