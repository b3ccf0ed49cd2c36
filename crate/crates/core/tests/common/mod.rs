//! Strategies and checks shared by the property tests and the acceptance run.
#![allow(dead_code)]

use darboux::expr::{parse, BinaryOp, Expr, UnaryOp};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Smooth expressions in `x` that stay finite on `[-1, 1]`: every division,
/// log and root is guarded by construction.
pub fn smooth_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        3 => Just(Expr::var("x")),
        1 => (0.1f64..3.0).prop_map(Expr::constant),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        let c = |v: f64| Expr::constant(v);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), inner.clone())
                .prop_map(move |(a, b)| Expr::div(a, Expr::add(c(2.0), Expr::unary(UnaryOp::Sin, b)))),
            inner.clone().prop_map(|a| Expr::unary(UnaryOp::Sin, a)),
            inner.clone().prop_map(|a| Expr::unary(UnaryOp::Cos, a)),
            inner
                .clone()
                .prop_map(|a| Expr::unary(UnaryOp::Exp, Expr::unary(UnaryOp::Sin, a))),
            inner
                .clone()
                .prop_map(move |a| Expr::unary(UnaryOp::Sqrt, Expr::add(c(1.0), Expr::mul(a.clone(), a)))),
            inner
                .clone()
                .prop_map(move |a| Expr::unary(UnaryOp::Ln, Expr::add(c(2.0), Expr::unary(UnaryOp::Cos, a)))),
            (inner, 2u8..4).prop_map(move |(a, n)| Expr::pow(a, c(n as f64))),
        ]
    })
}

/// Arbitrary trees in `u` and `v` over every operator, built node by node
/// without simplification. Constants are non-negative because the parser
/// reads `-c` as a negation node.
pub fn raw_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::var("u")),
        Just(Expr::var("v")),
        (0.0f64..1e6).prop_map(Expr::Const),
        prop_oneof![Just(1e-20), Just(2.5e300), Just(std::f64::consts::PI), Just(0.5)].prop_map(Expr::Const),
    ];
    let unary = [
        UnaryOp::Neg,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Tan,
        UnaryOp::Exp,
        UnaryOp::Ln,
        UnaryOp::Sqrt,
        UnaryOp::Abs,
    ];
    let binary = [
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Pow,
    ];
    leaf.prop_recursive(5, 48, 2, move |inner| {
        prop_oneof![
            (prop::sample::select(unary.to_vec()), inner.clone()).prop_map(|(op, a)| Expr::Unary(op, a.into())),
            (prop::sample::select(binary.to_vec()), inner.clone(), inner).prop_map(|(op, a, b)| Expr::Binary(
                op,
                a.into(),
                b.into()
            )),
        ]
    })
}

/// Sixth-order central difference.
pub fn central_difference(e: &Expr, x: f64, h: f64) -> f64 {
    let f = |k: f64| e.eval(&[("x", x + k * h)]).unwrap_or(f64::NAN);
    (-f(-3.0) + 9.0 * f(-2.0) - 45.0 * f(-1.0) + 45.0 * f(1.0) - 9.0 * f(2.0) + f(3.0)) / (60.0 * h)
}

pub const DERIVATIVE_REL_TOL: f64 = 1e-7;

/// Largest relative gap between the symbolic derivative and finite
/// differences at a few points of `[-1, 1]`.
pub fn derivative_gap(e: &Expr) -> f64 {
    let d = e.derivative("x", 1);
    [-0.9, -0.35, 0.0, 0.4, 0.85]
        .iter()
        .map(|&x| {
            let exact = d.eval(&[("x", x)]).unwrap_or(f64::NAN);
            let fd = central_difference(e, x, 1e-3);
            (exact - fd).abs() / exact.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Rejects expressions whose values are too large for a meaningful
/// finite-difference comparison.
pub fn tame(e: &Expr) -> bool {
    (-100..=100).all(|i| {
        let x = i as f64 / 100.0;
        e.eval(&[("x", x)]).is_ok_and(|y| y.is_finite() && y.abs() < 1e6)
    })
}

pub fn check_derivative(e: &Expr) -> Result<(), TestCaseError> {
    if !tame(e) {
        return Err(TestCaseError::reject("values too large"));
    }
    let gap = derivative_gap(e);
    if gap < DERIVATIVE_REL_TOL {
        Ok(())
    } else {
        Err(TestCaseError::fail(format!("{e}: relative gap {gap:e}")))
    }
}

pub fn check_round_trip(e: &Expr) -> Result<(), TestCaseError> {
    let printed = e.to_string();
    match parse(&printed, &["u", "v"]) {
        Ok(back) if back == *e => Ok(()),
        Ok(back) => Err(TestCaseError::fail(format!("{printed} re-parsed as {back}"))),
        Err(err) => Err(TestCaseError::fail(format!("{printed}: {err}"))),
    }
}
