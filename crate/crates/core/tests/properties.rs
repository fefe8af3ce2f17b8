use arrowfocal::algebra::{focal_triple, implicitize, RationalFunction};
use arrowfocal::expr::{parse, Constant, Expr, Func};
use arrowfocal::focal::{
    duality_map, inverse_duality_map, linear_focus, AxesConfig, FocalFunction, LinearParams, PlanePoint,
    ProjectivePoint,
};
use arrowfocal::poly::{rational_frac, rational_int, Poly1, Rational, Ring};
use arrowfocal::render::{build_scene, scene_from_json, scene_to_json, RenderConfig, Viewport};
use arrowfocal::transforms::{compose_linear_foci, transform_implicit, TransformTag};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Var),
        (0i64..20).prop_map(Expr::num),
        (0i64..99, prop::sample::select(vec![4i64, 10, 100])).prop_map(|(n, d)| Expr::ratio(n, d)),
        Just(Expr::Const(Constant::Pi)),
        Just(Expr::Const(Constant::E)),
    ]
}

fn any_expr() -> impl Strategy<Value = Expr> {
    let funcs = [Func::Sin, Func::Cos, Func::Tan, Func::Exp, Func::Ln, Func::Sqrt];
    leaf().prop_recursive(5, 40, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Pow(Box::new(a), Box::new(b))),
            (0..funcs.len(), inner).prop_map(move |(i, a)| Expr::apply(funcs[i], a)),
        ]
    })
}

/// Smooth everywhere: sums and products of powers of x, sin, cos and exp of
/// small polynomials.
fn smooth_expr() -> impl Strategy<Value = Expr> {
    let base = prop_oneof![
        Just(Expr::Var),
        (-5i64..5).prop_map(Expr::num),
    ];
    base.prop_recursive(4, 20, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), 0i64..4).prop_map(|(a, n)| a.powi(n)),
            inner.clone().prop_map(|a| Expr::apply(Func::Sin, a)),
            inner.clone().prop_map(|a| Expr::apply(Func::Cos, a)),
            inner.prop_map(|a| Expr::apply(Func::Exp, Expr::apply(Func::Sin, a))),
        ]
    })
}

fn int_poly(max_degree: usize) -> impl Strategy<Value = Poly1> {
    prop::collection::vec(-6i64..=6, 1..=max_degree + 1).prop_map(|c| Poly1::from_ints(&c))
}

fn rational_function() -> impl Strategy<Value = RationalFunction> {
    (int_poly(3), int_poly(2))
        .prop_filter_map("nonzero, nonlinear", |(p, q)| {
            RationalFunction::new(p, q).filter(|f| !f.is_linear())
        })
}

fn poly_expr(p: &Poly1) -> Expr {
    p.coeffs()
        .iter()
        .enumerate()
        .fold(Expr::num(0), |acc, (i, c)| acc + Expr::Num(c.clone()) * Expr::Var.powi(i as i64))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_expressions_reparse(e in any_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn reparsed_trees_are_fixed_points(e in any_expr(), n in -9i64..9, d in 1i64..9) {
        // Negative and non-decimal literals print in a form the parser reads
        // back as an operator applied to a literal.
        let e = e + Expr::ratio(n, d);
        let once = parse(&e.to_string()).unwrap();
        prop_assert_eq!(parse(&once.to_string()).unwrap(), once);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn derivative_matches_central_difference(e in smooth_expr(), t in -2.0f64..2.0) {
        let d = e.differentiate();
        let h = 1e-5;
        let (Ok(up), Ok(down), Ok(exact)) = (e.eval(t + h), e.eval(t - h), d.eval(t)) else {
            return Ok(());
        };
        let numeric = (up - down) / (2.0 * h);
        let scale = up.abs().max(down.abs()).max(1.0);
        prop_assume!(scale < 1e6);
        prop_assert!((numeric - exact).abs() <= 1e-4 * scale, "{} at {}: {} vs {}", e, t, numeric, exact);
    }

    #[test]
    fn rational_expressions_are_recognized(p in int_poly(4), q in int_poly(3), t in -3.0f64..3.0) {
        prop_assume!(!q.is_zero());
        let e = poly_expr(&p) / poly_expr(&q);
        let f = e.to_rational_function().unwrap();
        let qt = q.eval_f64(t);
        prop_assume!(qt.abs() > 1e-3);
        let expected = p.eval_f64(t) / qt;
        prop_assert!(close(f.eval(t).unwrap(), expected, 1e-9));
    }

    #[test]
    fn dual_point_maps_to_focal_point(e in smooth_expr(), t in -3.0f64..3.0) {
        let f = FocalFunction::new(e);
        let cfg = AxesConfig::default();
        let (Ok(dual), Ok(focal)) = (f.dual_point(t), f.focal_point(t, cfg)) else {
            return Ok(());
        };
        prop_assert!(duality_map(dual).relative_cross(&focal) <= 1e-9);
        let back = inverse_duality_map(duality_map(dual));
        prop_assert!(back.relative_cross(&dual) <= 1e-12);
    }

    #[test]
    fn linear_functions_have_one_focus(a in -5i64..5, b in -5i64..5, s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let f = FocalFunction::parse(&format!("{a}*x + ({b})")).unwrap();
        let cfg = AxesConfig::default();
        let p = f.focal_point(s, cfg).unwrap();
        let q = f.focal_point(t, cfg).unwrap();
        let expected = linear_focus(LinearParams { a: a as f64, b: b as f64 }, cfg);
        prop_assert!(p.relative_cross(&q) <= 1e-12);
        prop_assert!(p.relative_cross(&expected) <= 1e-12);
    }

    #[test]
    fn doubling_delta_doubles_x(e in smooth_expr(), t in -3.0f64..3.0) {
        let f = FocalFunction::new(e);
        let one = f.focal_point(t, AxesConfig::new(1.0).unwrap()).ok().and_then(|p| p.affine());
        let two = f.focal_point(t, AxesConfig::new(2.0).unwrap()).ok().and_then(|p| p.affine());
        if let (Some(p), Some(q)) = (one, two) {
            prop_assert!(close(q.x, 2.0 * p.x, 1e-12) && close(q.y, p.y, 1e-12));
        }
    }

    #[test]
    fn focal_points_lie_on_the_implicit_curve(f in rational_function(), num in -40i64..40, den in 1i64..12) {
        let triple = focal_triple(&f);
        let g = implicitize(&triple).unwrap();
        if let Some((x, y)) = triple.point_exact(&rational_frac(num, den)) {
            prop_assert!(Ring::is_zero(&g.eval(&x, &y)), "{} misses ({}, {})", g, x, y);
        }
    }

    #[test]
    fn transformed_curves_contain_transformed_focal_points(
        f in rational_function(),
        tag in 0usize..4,
        (cn, cd) in (-4i64..=4, 1i64..=3),
        num in -30i64..30,
    ) {
        prop_assume!(cn != 0);
        let kind = TransformTag::ALL[tag].with(rational_frac(cn, cd)).unwrap();
        let g = implicitize(&focal_triple(&f)).unwrap();
        let h = transform_implicit(&g, &kind).unwrap();
        let base = poly_expr(f.p()) / poly_expr(f.q());
        let image = kind.apply_to_expr(&base).to_rational_function().unwrap();
        if let Some((x, y)) = focal_triple(&image).point_exact(&rational_frac(num, 7)) {
            prop_assert!(Ring::is_zero(&h.eval(&x, &y)), "{} {}: {} misses ({}, {})", kind.tag(), kind.parameter(), h, x, y);
        }
    }

    #[test]
    fn transform_parameters_compose(
        g in rational_function(),
        (n1, d1) in (-4i64..=4, 1i64..=3),
        (n2, d2) in (-4i64..=4, 1i64..=3),
    ) {
        prop_assume!(n1 != 0 && n2 != 0);
        let (c1, c2) = (rational_frac(n1, d1), rational_frac(n2, d2));
        let base = implicitize(&focal_triple(&g)).unwrap();
        let twice = |tag: TransformTag, a: &Rational, b: &Rational| {
            let once = transform_implicit(&base, &tag.with(a.clone()).unwrap()).unwrap();
            transform_implicit(&once, &tag.with(b.clone()).unwrap()).unwrap()
        };
        let add = TransformTag::AddConstant.with(&c1 + &c2).unwrap();
        prop_assert_eq!(twice(TransformTag::AddConstant, &c1, &c2), transform_implicit(&base, &add).unwrap());
        let scale = TransformTag::ScaleInput.with(&c1 * &c2).unwrap();
        prop_assert_eq!(twice(TransformTag::ScaleInput, &c1, &c2), transform_implicit(&base, &scale).unwrap());
    }

    #[test]
    fn composite_focus_is_collinear(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, d in -5.0f64..5.0) {
        let comp = compose_linear_foci(a, b, c, d, AxesConfig::default());
        prop_assert!(comp.is_collinear());
        let affine = (comp.ff.affine(), comp.fg.affine(), comp.interpolated(), comp.fgf.affine());
        if let (Some(ff), Some(fg), Some(p), Some(q)) = affine {
            prop_assert!(p.distance(&q) <= 1e-12 * (1.0 + ff.norm() + fg.norm()), "{:?} vs {:?}", p, q);
        }
    }

    #[test]
    fn clipped_segments_stay_inside(ax in -10.0f64..10.0, ay in -10.0f64..10.0, bx in -10.0f64..10.0, by in -10.0f64..10.0) {
        let v = Viewport::new(-1.0, 2.0, -1.5, 0.5);
        let (a, b) = (PlanePoint::new(ax, ay), PlanePoint::new(bx, by));
        if let Some((p, q)) = v.clip_segment(a, b) {
            for r in [p, q] {
                prop_assert!(r.x >= -1.0 - 1e-12 && r.x <= 2.0 + 1e-12);
                prop_assert!(r.y >= -1.5 - 1e-12 && r.y <= 0.5 + 1e-12);
                // On the original segment.
                let cross = (b.x - a.x) * (r.y - a.y) - (b.y - a.y) * (r.x - a.x);
                prop_assert!(cross.abs() <= 1e-9 * (1.0 + a.distance(&b).powi(2)));
            }
        } else {
            prop_assert!(!v.contains(a) && !v.contains(b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn scenes_round_trip_through_json(count in 2usize..60, k in 1i64..4, probe in -2.0f64..2.0) {
        let f = parse(&format!("x^{k}/3 + sin(x)")).unwrap();
        let cfg = RenderConfig {
            arrow_count: count,
            focal_sample_count: 101,
            probe: Some(probe),
            ..RenderConfig::default()
        };
        let scene = build_scene(&f, &cfg, None).unwrap();
        prop_assert_eq!(scene.arrows.len(), count);
        prop_assert_eq!(scene_from_json(&scene_to_json(&scene)).unwrap(), scene.clone());
        let v = scene.viewport;
        let slack = 1e-9 * (v.width() + v.height());
        let padded = Viewport::new(v.xmin - slack, v.xmax + slack, v.ymin - slack, v.ymax + slack);
        for p in scene.focal_branches.iter().flatten() {
            prop_assert!(padded.contains(PlanePoint::new(p[0], p[1])));
        }
    }
}

#[test]
fn projective_points_compare_up_to_scale() {
    let p = ProjectivePoint::new(1.0, 2.0, 3.0);
    let q = ProjectivePoint::new(-2.0, -4.0, -6.0);
    assert!(p.relative_cross(&q) < 1e-15);
    assert_eq!(rational_int(3), rational_frac(6, 2));
}
