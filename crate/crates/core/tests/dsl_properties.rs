mod common;

use darboux::expr::parse;
use proptest::prelude::*;

use common::{check_derivative, check_round_trip, raw_tree, smooth_expr};

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn derivative_matches_finite_differences(e in smooth_expr()) {
        check_derivative(&e)?;
    }

    #[test]
    fn printed_trees_parse_back_identically(e in raw_tree()) {
        check_round_trip(&e)?;
    }

    #[test]
    fn higher_orders_compose(e in smooth_expr(), x in -1.0f64..1.0) {
        let direct = e.derivative("x", 2).eval(&[("x", x)]).unwrap();
        let nested = e.derivative("x", 1).derivative("x", 1).eval(&[("x", x)]).unwrap();
        prop_assert!((direct - nested).abs() <= 1e-9 * direct.abs().max(1.0));
    }

    #[test]
    fn printing_is_idempotent(e in raw_tree()) {
        let once = e.to_string();
        let twice = parse(&once, &["u", "v"]).unwrap().to_string();
        prop_assert_eq!(once, twice);
    }
}
