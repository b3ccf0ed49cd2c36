use std::f64::consts::PI;
use std::fmt::{self, Write};

use super::{BinaryOp, Expr, UnaryOp};

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_POWER: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        // negative constants carry their own parentheses
        Expr::Const(_) | Expr::Var(_) => PREC_ATOM,
        Expr::Unary(UnaryOp::Neg, _) => PREC_UNARY,
        Expr::Unary(_, _) => PREC_ATOM,
        Expr::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => PREC_SUM,
        Expr::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => PREC_PRODUCT,
        Expr::Binary(BinaryOp::Pow, _, _) => PREC_POWER,
    }
}

fn write_number<W: Write>(out: &mut W, c: f64) -> fmt::Result {
    let mag = c.abs();
    if mag == PI {
        out.write_str("pi")
    } else if mag == 0.0 || (1e-4..1e15).contains(&mag) {
        write!(out, "{mag}")
    } else {
        write!(out, "{mag:e}")
    }
}

fn write_child<W: Write>(out: &mut W, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        out.write_char('(')?;
        write_expr(out, e)?;
        out.write_char(')')
    } else {
        write_expr(out, e)
    }
}

/// Prints with the minimum parentheses needed to re-parse the same tree.
pub(crate) fn write_expr<W: Write>(out: &mut W, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(c) => {
            if c.is_sign_negative() {
                out.write_str("(-")?;
                write_number(out, *c)?;
                out.write_char(')')
            } else {
                write_number(out, *c)
            }
        }
        Expr::Var(name) => out.write_str(name),
        Expr::Unary(UnaryOp::Neg, a) => {
            out.write_char('-')?;
            write_child(out, a, precedence(a) < PREC_UNARY)
        }
        Expr::Unary(op, a) => {
            out.write_str(op.function_name().unwrap_or("?"))?;
            write_child(out, a, true)
        }
        Expr::Binary(BinaryOp::Pow, a, b) => {
            write_child(out, a, precedence(a) < PREC_ATOM)?;
            out.write_char('^')?;
            write_child(out, b, precedence(b) < PREC_UNARY)
        }
        Expr::Binary(op, a, b) => {
            let prec = precedence(e);
            write_child(out, a, precedence(a) < prec)?;
            out.write_char(op.symbol())?;
            // equal precedence on the right must be parenthesized so that
            // `a-(b-c)` and `a+(b+c)` keep their shape
            write_child(out, b, precedence(b) <= prec)
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Expr};

    fn roundtrip(s: &str) {
        let e = parse(s, &["u", "v"]).unwrap();
        let printed = e.to_string();
        let again = parse(&printed, &["u", "v"]).unwrap();
        assert_eq!(e, again, "{s} -> {printed}");
    }

    #[test]
    fn minimal_parentheses() {
        let e = parse("(u+v)*(u-v)", &["u", "v"]).unwrap();
        assert_eq!(e.to_string(), "(u+v)*(u-v)");
        let e = parse("u-(v-u)", &["u", "v"]).unwrap();
        assert_eq!(e.to_string(), "u-(v-u)");
        let e = parse("(u^v)^2", &["u", "v"]).unwrap();
        assert_eq!(e.to_string(), "(u^v)^2");
        let e = parse("-u^2", &["u"]).unwrap();
        assert_eq!(e.to_string(), "-u^2");
    }

    #[test]
    fn roundtrips() {
        for s in [
            "sin(u)*cos(v)",
            "u-(v-u)",
            "u+(v+u)",
            "u/(v*u)",
            "2^3^u",
            "(2^3)^u",
            "-(u+v)",
            "--u",
            "u*-v",
            "2^-u",
            "(-u)^2",
            "1e-20*u + 1.5e300",
            "pi*u",
            "sqrt(abs(u))/ln(exp(v))",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn negative_constants_print_in_parentheses() {
        let e = Expr::mul(Expr::constant(-2.0), Expr::var("u"));
        assert_eq!(e.to_string(), "(-2)*u");
        let back = parse(&e.to_string(), &["u"]).unwrap();
        assert_eq!(back.eval(&[("u", 3.0)]).unwrap(), -6.0);
    }
}
