//! Scalar expression language used to describe surfaces and curves.
//!
//! Expressions are parsed from text, evaluated against named bindings, and
//! differentiated symbolically. Trees are immutable and share subtrees through
//! [`Arc`], so cloning is cheap and evaluation can run from many threads.
//!
//! ```
//! use darboux::expr::{parse, Expr};
//!
//! let e = parse("u^2*v", &["u", "v"]).unwrap();
//! assert_eq!(e.eval(&[("u", 3.0), ("v", 2.0)]).unwrap(), 18.0);
//! let du = e.derivative("u", 1);
//! assert_eq!(du.eval(&[("u", 3.0), ("v", 2.0)]).unwrap(), 12.0);
//! ```

mod diff;
mod eval;
mod lexer;
mod parser;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use eval::{Bindings, EvalError};
pub use parser::{parse, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl UnaryOp {
    /// Function-call name, `None` for prefix negation.
    pub fn function_name(self) -> Option<&'static str> {
        match self {
            UnaryOp::Neg => None,
            UnaryOp::Sin => Some("sin"),
            UnaryOp::Cos => Some("cos"),
            UnaryOp::Tan => Some("tan"),
            UnaryOp::Exp => Some("exp"),
            UnaryOp::Ln => Some("ln"),
            UnaryOp::Sqrt => Some("sqrt"),
            UnaryOp::Abs => Some("abs"),
        }
    }

    pub fn from_function_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "tan" => UnaryOp::Tan,
            "exp" => UnaryOp::Exp,
            "ln" => UnaryOp::Ln,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

/// Expression tree node.
///
/// Structural equality (`==`) compares trees node by node; it does not try to
/// decide mathematical equivalence.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Arc<str>),
    Unary(UnaryOp, Arc<Expr>),
    Binary(BinaryOp, Arc<Expr>, Arc<Expr>),
}

// The smart constructors fold constants, which the operator traits would hide.
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn constant(value: f64) -> Expr {
        Expr::Const(value)
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(Arc::from(name))
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn is_const(&self, value: f64) -> bool {
        matches!(self, Expr::Const(c) if *c == value)
    }

    /// Negation with constant folding and `--x -> x`.
    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Unary(UnaryOp::Neg, inner) => (*inner).clone(),
            other => Expr::Unary(UnaryOp::Neg, Arc::new(other)),
        }
    }

    /// Applies a unary operator, folding constants when the result is finite.
    pub fn unary(op: UnaryOp, a: Expr) -> Expr {
        if op == UnaryOp::Neg {
            return Expr::neg(a);
        }
        if let Expr::Const(c) = a {
            if let Ok(v) = eval::apply_unary(op, c) {
                return Expr::Const(v);
            }
        }
        Expr::Unary(op, Arc::new(a))
    }

    /// Applies a binary operator with constant folding and the 0/1 identities.
    pub fn binary(op: BinaryOp, a: Expr, b: Expr) -> Expr {
        if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
            if let Ok(v) = eval::apply_binary(op, *x, *y) {
                return Expr::Const(v);
            }
        }
        match op {
            BinaryOp::Add => {
                if a.is_const(0.0) {
                    return b;
                }
                if b.is_const(0.0) {
                    return a;
                }
            }
            BinaryOp::Sub => {
                if b.is_const(0.0) {
                    return a;
                }
                if a.is_const(0.0) {
                    return Expr::neg(b);
                }
            }
            BinaryOp::Mul => {
                if a.is_const(0.0) || b.is_const(0.0) {
                    return Expr::Const(0.0);
                }
                if a.is_const(1.0) {
                    return b;
                }
                if b.is_const(1.0) {
                    return a;
                }
                if a.is_const(-1.0) {
                    return Expr::neg(b);
                }
                if b.is_const(-1.0) {
                    return Expr::neg(a);
                }
            }
            BinaryOp::Div => {
                if b.is_const(1.0) {
                    return a;
                }
                if a.is_const(0.0) {
                    return Expr::Const(0.0);
                }
            }
            BinaryOp::Pow => {
                if b.is_const(1.0) {
                    return a;
                }
                if b.is_const(0.0) {
                    return Expr::Const(1.0);
                }
            }
        }
        Expr::Binary(op, Arc::new(a), Arc::new(b))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::binary(BinaryOp::Add, a, b)
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::binary(BinaryOp::Sub, a, b)
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::binary(BinaryOp::Mul, a, b)
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::binary(BinaryOp::Div, a, b)
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::binary(BinaryOp::Pow, a, b)
    }

    /// Free variables, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(name) => {
                out.insert(name.to_string());
            }
            Expr::Unary(_, a) => a.collect_vars(out),
            Expr::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn depends_on(&self, var: &str) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(name) => &**name == var,
            Expr::Unary(_, a) => a.depends_on(var),
            Expr::Binary(_, a, b) => a.depends_on(var) || b.depends_on(var),
        }
    }

    /// Replaces variables by expressions, re-simplifying on the way up.
    pub fn substitute(&self, replacements: &[(&str, &Expr)]) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(name) => replacements
                .iter()
                .find(|(n, _)| *n == &**name)
                .map(|(_, e)| (*e).clone())
                .unwrap_or_else(|| self.clone()),
            Expr::Unary(op, a) => Expr::unary(*op, a.substitute(replacements)),
            Expr::Binary(op, a, b) => Expr::binary(*op, a.substitute(replacements), b.substitute(replacements)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Unary(_, a) => 1 + a.size(),
            Expr::Binary(_, a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_fold_identities() {
        let x = Expr::var("x");
        assert_eq!(Expr::add(Expr::constant(0.0), x.clone()), x);
        assert_eq!(Expr::mul(x.clone(), Expr::constant(1.0)), x);
        assert_eq!(Expr::mul(x.clone(), Expr::constant(0.0)), Expr::constant(0.0));
        assert_eq!(Expr::pow(x.clone(), Expr::constant(1.0)), x);
        assert_eq!(Expr::neg(Expr::neg(x.clone())), x);
        assert_eq!(Expr::add(Expr::constant(2.0), Expr::constant(3.0)), Expr::constant(5.0));
    }

    #[test]
    fn folding_skips_non_finite_results() {
        let e = Expr::div(Expr::constant(1.0), Expr::constant(0.0));
        assert!(matches!(e, Expr::Binary(BinaryOp::Div, _, _)));
    }

    #[test]
    fn substitute_composes() {
        let e = parse("sin(u)*v", &["u", "v"]).unwrap();
        let t = Expr::var("t");
        let two_t = Expr::mul(Expr::constant(2.0), t.clone());
        let composed = e.substitute(&[("u", &t), ("v", &two_t)]);
        assert_eq!(composed.variables().into_iter().collect::<Vec<_>>(), ["t"]);
        let v = composed.eval(&[("t", 0.5)]).unwrap();
        assert!((v - 0.5f64.sin() * 1.0).abs() < 1e-15);
    }
}
