use std::f64::consts::PI;

use darboux::frame::{gram_deviation, SurfaceCurve};
use darboux::smarandache::{construct, evaluate, rate_radical, ClosedFormContext, Quantity, SmarandacheKind};
use darboux::surface::Surface;
use darboux::Vec3;
use proptest::prelude::*;

fn torus() -> impl Strategy<Value = Surface> {
    (1.5f64..4.0, 0.2f64..1.2).prop_map(|(big, small)| Surface::torus(big, small).unwrap())
}

/// A line in the (u, v) parameter plane of a torus, long enough to bend.
fn torus_curve() -> impl Strategy<Value = SurfaceCurve> {
    (torus(), 0.3f64..2.0, -2.0f64..2.0, -1.0f64..1.0, -1.0f64..1.0).prop_map(|(s, a, c, b, d)| {
        let u = format!("{a}*t+{b}");
        let v = format!("{c}*t+({d})");
        SurfaceCurve::from_strings(s, &u, &v, 0.0, 2.0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn unit_normal_is_orthogonal_to_the_partials(s in torus(), u in -PI..PI, v in -PI..PI) {
        let n = s.unit_normal(u, v).unwrap();
        let (ru, rv) = s.partials(u, v).unwrap();
        prop_assert!((n.norm() - 1.0).abs() < 1e-12);
        prop_assert!(n.dot(ru).abs() < 1e-12 * ru.norm().max(1.0));
        prop_assert!(n.dot(rv).abs() < 1e-12 * rv.norm().max(1.0));
        let flipped = s.clone().with_flip(true).unit_normal(u, v).unwrap();
        prop_assert!((flipped + n).max_abs() < 1e-15);
    }

    #[test]
    fn sphere_points_have_unit_radius(u in 0.01f64..PI - 0.01, v in 0.0f64..2.0 * PI) {
        let s = Surface::sphere();
        let p = s.position(u, v).unwrap();
        prop_assert!((p.norm() - 1.0).abs() < 1e-14);
        // the outward normal is the position itself
        prop_assert!((s.unit_normal(u, v).unwrap() - p).max_abs() < 1e-12);
    }

    #[test]
    fn darboux_frame_is_orthonormal_and_consistent(c in torus_curve(), f in 0.0f64..1.0) {
        let s = f * c.total_length();
        prop_assert!(gram_deviation(c.darboux_frame(s).unwrap()) < 1e-12);
        prop_assert!(c.darboux_residual(s).unwrap() < 1e-8);
        let x = c.sample(s).unwrap();
        let k2 = x.k_g * x.k_g + x.k_n * x.k_n;
        prop_assert!((x.kappa * x.kappa - k2).abs() < 1e-9 * k2.max(1.0));
    }

    #[test]
    fn smarandache_curves_stay_on_the_unit_sphere(c in torus_curve(), f in 0.0f64..1.0) {
        let s = f * c.total_length();
        for kind in SmarandacheKind::ALL {
            let beta = construct(kind, &c).unwrap();
            prop_assert!((beta.beta(s).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn printed_rate_and_tangent_match_the_curve(c in torus_curve(), f in 0.0f64..1.0) {
        let s = f * c.total_length();
        let inv = c.invariant_derivatives(s).unwrap().into();
        let frame = c.darboux_frame(s).unwrap();
        let ctx = ClosedFormContext { phi_star: 0.0, dphi_star_ds_star: 0.0 };
        for kind in SmarandacheKind::ALL {
            let curve = construct(kind, &c).unwrap();
            let d = curve.jets(s).unwrap().derivatives();
            let speed = d[1].norm();
            prop_assert!((rate_radical(kind, &inv) - speed).abs() < 1e-9);
            if speed > 1e-6 {
                let t = evaluate(kind, Quantity::Tangent, &inv, &ctx).unwrap().vector().unwrap();
                let t = Vec3::combine(t, frame);
                let u = d[1] / speed;
                prop_assert!((t - u).max_abs().min((t + u).max_abs()) < 1e-8);
            }
        }
    }
}
