use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{BinaryOp, Expr, UnaryOp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

/// Variable lookup used by [`Expr::eval`].
pub trait Bindings {
    fn lookup(&self, name: &str) -> Option<f64>;
}

impl Bindings for [(&str, f64)] {
    fn lookup(&self, name: &str) -> Option<f64> {
        self.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

impl<const N: usize> Bindings for [(&str, f64); N] {
    fn lookup(&self, name: &str) -> Option<f64> {
        self.as_slice().lookup(name)
    }
}

impl Bindings for HashMap<String, f64> {
    fn lookup(&self, name: &str) -> Option<f64> {
        self.get(name).copied()
    }
}

impl Bindings for BTreeMap<String, f64> {
    fn lookup(&self, name: &str) -> Option<f64> {
        self.get(name).copied()
    }
}

fn finite(v: f64, what: &str) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::Domain(format!("{what} is not finite")))
    }
}

pub(crate) fn apply_unary(op: UnaryOp, x: f64) -> Result<f64, EvalError> {
    let v = match op {
        UnaryOp::Neg => -x,
        UnaryOp::Sin => x.sin(),
        UnaryOp::Cos => x.cos(),
        UnaryOp::Tan => x.tan(),
        UnaryOp::Exp => x.exp(),
        UnaryOp::Ln => {
            if x <= 0.0 {
                return Err(EvalError::Domain(format!("ln of non-positive value {x}")));
            }
            x.ln()
        }
        UnaryOp::Sqrt => {
            if x < 0.0 {
                return Err(EvalError::Domain(format!("sqrt of negative value {x}")));
            }
            x.sqrt()
        }
        UnaryOp::Abs => x.abs(),
    };
    finite(v, op.function_name().unwrap_or("negation"))
}

pub(crate) fn apply_binary(op: BinaryOp, x: f64, y: f64) -> Result<f64, EvalError> {
    let v = match op {
        BinaryOp::Add => x + y,
        BinaryOp::Sub => x - y,
        BinaryOp::Mul => x * y,
        BinaryOp::Div => {
            if y == 0.0 {
                return Err(EvalError::Domain("division by zero".into()));
            }
            x / y
        }
        BinaryOp::Pow => {
            if x < 0.0 && y.fract() != 0.0 {
                return Err(EvalError::Domain(format!(
                    "negative base {x} with non-integer exponent {y}"
                )));
            }
            if x == 0.0 && y < 0.0 {
                return Err(EvalError::Domain("zero raised to a negative power".into()));
            }
            if y.fract() == 0.0 && y.abs() <= 64.0 {
                x.powi(y as i32)
            } else {
                x.powf(y)
            }
        }
    };
    finite(v, "result")
}

impl Expr {
    /// Evaluates the tree. Every intermediate value must be finite.
    pub fn eval<B: Bindings + ?Sized>(&self, bindings: &B) -> Result<f64, EvalError> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var(name) => bindings
                .lookup(name)
                .ok_or_else(|| EvalError::UnboundVariable(name.to_string())),
            Expr::Unary(op, a) => apply_unary(*op, a.eval(bindings)?),
            Expr::Binary(op, a, b) => apply_binary(*op, a.eval(bindings)?, b.eval(bindings)?),
        }
    }
}
