//! Closed-form expressions in the two surface parameters.

use std::fmt;

use super::jet::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Log,
    Exp,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Log => "log",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }

    pub(crate) fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sqrt" => Func::Sqrt,
            "log" | "ln" => Func::Log,
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }
}

/// Expression tree. Parameters are referred to by index (0 or 1) and carry
/// the identifier they were parsed from so the tree prints back faithfully.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Param { index: usize, name: String },
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Evaluation failure: the offending node (printed) and its argument value.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("domain error in `{node}`: argument {arg} is outside the function domain")]
pub struct DomainError {
    pub node: String,
    pub arg: f64,
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    /// Evaluate on any scalar type, given the two parameter values.
    pub fn eval<S: Scalar>(&self, params: &[S; 2]) -> Result<S, DomainError> {
        let out = match self {
            Expr::Const(c) => S::constant(*c),
            Expr::Param { index, .. } => params[*index].clone(),
            Expr::Neg(e) => -e.eval(params)?,
            Expr::Binary(op, l, r) => {
                let a = l.eval(params)?;
                match op {
                    BinOp::Add => a + r.eval(params)?,
                    BinOp::Sub => a - r.eval(params)?,
                    BinOp::Mul => a * r.eval(params)?,
                    BinOp::Div => {
                        let b = r.eval(params)?;
                        if b.value() == 0.0 {
                            return Err(self.domain_error(b.value()));
                        }
                        a / b
                    }
                    BinOp::Pow => self.eval_pow(a, r, params)?,
                }
            }
            Expr::Call(f, arg) => {
                let a = arg.eval(params)?;
                let x = a.value();
                match f {
                    Func::Sqrt if x < 0.0 => return Err(self.domain_error(x)),
                    Func::Log if x <= 0.0 => return Err(self.domain_error(x)),
                    _ => {}
                }
                match f {
                    Func::Sqrt => a.sqrt(),
                    Func::Log => a.ln(),
                    Func::Exp => a.exp(),
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                }
            }
        };
        if !out.value().is_finite() {
            return Err(self.domain_error(out.value()));
        }
        Ok(out)
    }

    fn eval_pow<S: Scalar>(&self, base: S, exponent: &Expr, params: &[S; 2]) -> Result<S, DomainError> {
        if let Some(p) = exponent.constant_value() {
            if p.fract() == 0.0 && p.abs() <= 64.0 {
                if p < 0.0 && base.value() == 0.0 {
                    return Err(self.domain_error(base.value()));
                }
                return Ok(base.powi(p as i32));
            }
            if base.value() <= 0.0 {
                return Err(self.domain_error(base.value()));
            }
            return Ok(base.powf(p));
        }
        if base.value() <= 0.0 {
            return Err(self.domain_error(base.value()));
        }
        let e = exponent.eval(params)?;
        Ok((base.ln() * e).exp())
    }

    fn domain_error(&self, arg: f64) -> DomainError {
        DomainError {
            node: self.to_string(),
            arg,
        }
    }

    /// Value of a parameter-free subtree.
    pub fn constant_value(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            Expr::Param { .. } => None,
            Expr::Neg(e) => e.constant_value().map(|v| -v),
            _ => {
                if self.uses_params() {
                    None
                } else {
                    self.eval::<f64>(&[0.0, 0.0]).ok()
                }
            }
        }
    }

    pub fn uses_params(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Param { .. } => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.uses_params(),
            Expr::Binary(_, l, r) => l.uses_params() || r.uses_params(),
        }
    }
}

/// Canonical text: binary operations are fully parenthesized, so printing
/// then parsing reproduces the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if *c == std::f64::consts::PI {
                    write!(f, "pi")
                } else if *c < 0.0 {
                    write!(f, "({c:?})")
                } else {
                    write!(f, "{c:?}")
                }
            }
            Expr::Param { name, .. } => write!(f, "{name}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}
