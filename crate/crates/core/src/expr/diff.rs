use super::{BinaryOp, Expr, UnaryOp};

impl Expr {
    /// `order`-th partial derivative with respect to `var`.
    ///
    /// Each step differentiates the previous result and simplifies only
    /// through the folding constructors, so the output is correct but not
    /// canonical.
    ///
    /// # Panics
    /// If `order` is zero.
    pub fn derivative(&self, var: &str, order: usize) -> Expr {
        assert!(order >= 1, "derivative order must be positive");
        let mut e = self.d(var);
        for _ in 1..order {
            e = e.d(var);
        }
        e
    }

    fn d(&self, var: &str) -> Expr {
        match self {
            Expr::Const(_) => Expr::constant(0.0),
            Expr::Var(name) => Expr::constant(if &**name == var { 1.0 } else { 0.0 }),
            Expr::Unary(op, a) => {
                let a = (**a).clone();
                let da = a.d(var);
                if da.as_const() == Some(0.0) {
                    return Expr::constant(0.0);
                }
                match op {
                    UnaryOp::Neg => Expr::neg(da),
                    UnaryOp::Sin => Expr::mul(Expr::unary(UnaryOp::Cos, a), da),
                    UnaryOp::Cos => Expr::neg(Expr::mul(Expr::unary(UnaryOp::Sin, a), da)),
                    UnaryOp::Tan => Expr::div(da, Expr::pow(Expr::unary(UnaryOp::Cos, a), Expr::constant(2.0))),
                    UnaryOp::Exp => Expr::mul(Expr::unary(UnaryOp::Exp, a), da),
                    UnaryOp::Ln => Expr::div(da, a),
                    UnaryOp::Sqrt => Expr::div(da, Expr::mul(Expr::constant(2.0), Expr::unary(UnaryOp::Sqrt, a))),
                    // d|f| = f/|f| f', undefined at f = 0
                    UnaryOp::Abs => Expr::mul(Expr::div(a.clone(), Expr::unary(UnaryOp::Abs, a)), da),
                }
            }
            Expr::Binary(op, a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                match op {
                    BinaryOp::Add => Expr::add(a.d(var), b.d(var)),
                    BinaryOp::Sub => Expr::sub(a.d(var), b.d(var)),
                    BinaryOp::Mul => {
                        let (da, db) = (a.d(var), b.d(var));
                        Expr::add(Expr::mul(da, b), Expr::mul(a, db))
                    }
                    BinaryOp::Div => {
                        let (da, db) = (a.d(var), b.d(var));
                        if db.as_const() == Some(0.0) {
                            return Expr::div(da, b);
                        }
                        Expr::div(
                            Expr::sub(Expr::mul(da, b.clone()), Expr::mul(a, db)),
                            Expr::pow(b, Expr::constant(2.0)),
                        )
                    }
                    BinaryOp::Pow => pow_derivative(a, b, var),
                }
            }
        }
    }
}

fn pow_derivative(base: Expr, exponent: Expr, var: &str) -> Expr {
    let base_varies = base.depends_on(var);
    let exp_varies = exponent.depends_on(var);
    match (base_varies, exp_varies) {
        (false, false) => Expr::constant(0.0),
        (true, false) => {
            // n f^(n-1) f'
            let lowered = match exponent.as_const() {
                Some(n) => Expr::constant(n - 1.0),
                None => Expr::sub(exponent.clone(), Expr::constant(1.0)),
            };
            Expr::mul(Expr::mul(exponent, Expr::pow(base.clone(), lowered)), base.d(var))
        }
        (false, true) => {
            // a^g ln(a) g'
            let dg = exponent.d(var);
            Expr::mul(
                Expr::mul(Expr::pow(base.clone(), exponent), Expr::unary(UnaryOp::Ln, base)),
                dg,
            )
        }
        (true, true) => {
            // f^g (g' ln f + g f'/f)
            let (df, dg) = (base.d(var), exponent.d(var));
            let inner = Expr::add(
                Expr::mul(dg, Expr::unary(UnaryOp::Ln, base.clone())),
                Expr::div(Expr::mul(exponent.clone(), df), base.clone()),
            );
            Expr::mul(Expr::pow(base, exponent), inner)
        }
    }
}
