//! Recursive-descent parser for surface expressions.
//!
//! Precedence, tightest first: `^` (right-associative), unary minus,
//! `*` `/`, `+` `-` (both left-associative). Function calls take a single
//! parenthesized argument.

use super::expr::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at column {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier `{name}` at column {position}")]
    UnknownIdentifier { position: usize, name: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::UnknownIdentifier { position, .. } => *position,
        }
    }
}

/// Maps identifiers to parameter slots.
#[derive(Debug, Clone)]
pub struct Variables {
    names: Vec<(String, usize)>,
}

impl Variables {
    /// `u1`, `u2`.
    pub fn parametric() -> Self {
        Variables {
            names: vec![("u1".into(), 0), ("u2".into(), 1)],
        }
    }

    /// Graph form: the two free ambient coordinates (1-based) become the
    /// parameters, named `x<k>`.
    pub fn graph(free: [usize; 2]) -> Self {
        Variables {
            names: vec![(format!("x{}", free[0]), 0), (format!("x{}", free[1]), 1)],
        }
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().find(|(n, _)| n == name).map(|&(_, i)| i)
    }
}

/// Parse `text` with parametric identifiers `u1`, `u2`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with(text, &Variables::parametric())
}

pub fn parse_with(text: &str, vars: &Variables) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
        end: text.chars().count() + 1,
    };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Syntax {
            position: t.column,
            message: format!("unexpected {}", t.kind.describe()),
        });
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Num(n) => format!("number {n}"),
            Kind::Ident(s) => format!("identifier `{s}`"),
            Kind::Op(c) => format!("operator `{c}`"),
            Kind::LParen => "`(`".into(),
            Kind::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    /// 1-based column.
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let value = lit.parse::<f64>().map_err(|_| ParseError::Syntax {
                position: column,
                message: format!("malformed number `{lit}`"),
            })?;
            out.push(Token {
                kind: Kind::Num(value),
                column,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                kind: Kind::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else {
            let kind = match c {
                '+' | '-' | '*' | '/' | '^' => Kind::Op(c),
                '(' => Kind::LParen,
                ')' => Kind::RParen,
                _ => {
                    return Err(ParseError::Syntax {
                        position: column,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push(Token { kind, column });
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a Variables,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek_op(&self) -> Option<char> {
        match self.peek() {
            Some(Token { kind: Kind::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn expect_rparen(&mut self, open_column: usize) -> Result<(), ParseError> {
        match self.next() {
            Some(Token { kind: Kind::RParen, .. }) => Ok(()),
            Some(t) => Err(ParseError::Syntax {
                position: t.column,
                message: format!("expected `)` to close `(` at column {open_column}, found {}", t.kind.describe()),
            }),
            None => Err(ParseError::Syntax {
                position: self.end,
                message: format!("unbalanced parenthesis: `(` at column {open_column} is never closed"),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.next() else {
            return Err(ParseError::Syntax {
                position: self.end,
                message: "unexpected end of input".into(),
            });
        };
        match tok.kind {
            Kind::Num(v) => Ok(Expr::Const(v)),
            Kind::LParen => {
                let e = self.expr()?;
                self.expect_rparen(tok.column)?;
                Ok(e)
            }
            Kind::Ident(name) => {
                if let Some(index) = self.vars.lookup(&name) {
                    return Ok(Expr::Param { index, name });
                }
                if name == "pi" {
                    return Ok(Expr::Const(std::f64::consts::PI));
                }
                if let Some(func) = Func::lookup(&name) {
                    match self.next() {
                        Some(Token { kind: Kind::LParen, column }) => {
                            let arg = self.expr()?;
                            self.expect_rparen(column)?;
                            return Ok(Expr::Call(func, Box::new(arg)));
                        }
                        _ => {
                            return Err(ParseError::Syntax {
                                position: tok.column,
                                message: format!("function `{name}` must be followed by `(`"),
                            })
                        }
                    }
                }
                Err(ParseError::UnknownIdentifier {
                    position: tok.column,
                    name,
                })
            }
            other => Err(ParseError::Syntax {
                position: tok.column,
                message: format!("unexpected {}", other.describe()),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str, index: usize) -> Box<Expr> {
        Box::new(Expr::Param {
            index,
            name: name.into(),
        })
    }

    #[test]
    fn precedence_mul_over_add() {
        let e = parse_with("x1 + x2 * x2", &Variables::graph([1, 2])).unwrap();
        assert_eq!(
            e,
            Expr::Binary(
                BinOp::Add,
                p("x1", 0),
                Box::new(Expr::Binary(BinOp::Mul, p("x2", 1), p("x2", 1)))
            )
        );
    }

    #[test]
    fn ex1_third_coordinate() {
        let e = parse_with("(x1 + x2)/sqrt(2)", &Variables::graph([1, 2])).unwrap();
        assert_eq!(
            e,
            Expr::Binary(
                BinOp::Div,
                Box::new(Expr::Binary(BinOp::Add, p("x1", 0), p("x2", 1))),
                Box::new(Expr::Call(Func::Sqrt, Box::new(Expr::Const(2.0))))
            )
        );
        let v = e.eval::<f64>(&[1.0, 1.0]).unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn unbalanced_parenthesis() {
        let err = parse_with("log(1 + (x1-x2)^2", &Variables::graph([1, 2])).unwrap_err();
        match err {
            ParseError::Syntax { message, .. } => assert!(message.contains("unbalanced")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_reports_position() {
        let err = parse("u1 + x3").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownIdentifier {
                position: 6,
                name: "x3".into()
            }
        );
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        let e = parse("-u1^2").unwrap();
        assert_eq!(e.eval::<f64>(&[3.0, 0.0]).unwrap(), -9.0);
        let e = parse("2^3^2").unwrap();
        assert_eq!(e.eval::<f64>(&[0.0, 0.0]).unwrap(), 512.0);
        let e = parse("8 / 2 / 2 - 1 - 1").unwrap();
        assert_eq!(e.eval::<f64>(&[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn scientific_literals_and_trailing_garbage() {
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Const(1.5e-3));
        assert!(parse("u1 u2").is_err());
        assert!(parse("").is_err());
        assert!(parse("sin u1").is_err());
    }

    #[test]
    fn domain_errors_name_the_node() {
        let e = parse("log(u1 - 1)").unwrap();
        let err = e.eval::<f64>(&[0.5, 0.0]).unwrap_err();
        assert!(err.node.starts_with("log("));
        let e = parse("1/(u1-u2)").unwrap();
        assert!(e.eval::<f64>(&[1.0, 1.0]).is_err());
    }
}
