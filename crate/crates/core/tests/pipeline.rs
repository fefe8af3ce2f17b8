use std::f64::consts::PI;

use arrowfocal::algebra::{classify_conic, focal_triple, implicitize, ConicClass};
use arrowfocal::expr::parse;
use arrowfocal::focal::{AxesConfig, FocalFunction, PlanePoint};
use arrowfocal::poly::{rational_int, Poly2};
use arrowfocal::render::{build_scene, scene_to_json, scene_to_svg, RenderConfig};
use arrowfocal::selftest;
use arrowfocal::transforms::{transform_implicit, TransformTag};

fn implicit_of(text: &str) -> Poly2 {
    let rf = parse(text).unwrap().to_rational_function().unwrap();
    implicitize(&focal_triple(&rf)).unwrap()
}

#[test]
fn text_to_classified_conic() {
    let cases = [
        ("x^2", "(x-1)^2 + 4*x*y", ConicClass::Hyperbola),
        ("1/(4x)", "x^2 + y^2 - x", ConicClass::Circle),
        ("x + 1/x", "y^2 - 4*x", ConicClass::Parabola),
    ];
    for (f, eq, class) in cases {
        let g = implicit_of(f);
        assert_eq!(g.to_string(), eq, "{f}");
        assert_eq!(classify_conic(&g).unwrap(), class, "{f}");
        assert_eq!(Poly2::from_json(&g.to_json()).unwrap(), g);
    }
}

#[test]
fn shifted_parabola_law_matches_direct_elimination() {
    // f(x) = g(x + 1) with g = x^2.
    let kind = TransformTag::ShiftInput.with(rational_int(-1)).unwrap();
    let law = transform_implicit(&implicit_of("x^2"), &kind).unwrap();
    assert_eq!(law, implicit_of("(x+1)^2"));
    let scaled = TransformTag::ScaleInput.with(rational_int(2)).unwrap();
    assert_eq!(transform_implicit(&implicit_of("x^2"), &scaled).unwrap(), implicit_of("4x^2"));
}

fn on_curve(g: &Poly2, p: [f64; 2]) -> bool {
    g.scaled_residual(p[0], p[1]) <= 1e-6
}

#[test]
fn rendered_branches_stay_on_the_focal_curve() {
    for f in ["x^2", "1/(4x)", "x + 1/x", "x^3 - x"] {
        let g = implicit_of(f);
        let scene = build_scene(&parse(f).unwrap(), &RenderConfig::default(), None).unwrap();
        assert!(!scene.focal_branches.is_empty(), "{f}");
        for p in scene.focal_branches.iter().flatten() {
            assert!(on_curve(&g, *p), "{f}: {p:?}");
        }
    }
}

#[test]
fn branches_never_cross_infinity() {
    // f' = 1 at t = 1/2 for x^2; the focal point escapes to infinity there.
    let f = FocalFunction::parse("x^2").unwrap();
    let scene = build_scene(f.expr(), &RenderConfig::default(), None).unwrap();
    assert_eq!(scene.focal_branches.len(), 2);
    // One branch comes from t < 1/2 (x > 0 side near the origin), the other
    // from t > 1/2 (x < 0); no polyline contains points of both signs of 1 - 2t.
    for branch in &scene.focal_branches {
        let sides: Vec<bool> = branch.iter().map(|p| p[0] > 0.0).collect();
        assert!(sides.iter().all(|&s| s == sides[0]));
    }
    let v: serde_json::Value = serde_json::from_str(&scene_to_json(&scene)).unwrap();
    assert_eq!(v["focal_branches"].as_array().unwrap().len(), 2);
}

#[test]
fn sine_scene_meets_at_the_inflection_cusp() {
    let cfg = RenderConfig {
        focal_range: Some((0.0, 2.0 * PI)),
        ..RenderConfig::default()
    };
    let scene = build_scene(&parse("sin x").unwrap(), &cfg, None).unwrap();
    assert_eq!(scene.cusps.len(), 1);
    let cusp = PlanePoint::new(scene.cusps[0][0], scene.cusps[0][1]);
    assert!(cusp.distance(&PlanePoint::new(0.5, PI / 2.0)) < 1e-9);
    let touching = scene
        .focal_branches
        .iter()
        .filter(|b| {
            [b[0], b[b.len() - 1]]
                .iter()
                .any(|p| PlanePoint::new(p[0], p[1]).distance(&cusp) < 1e-9)
        })
        .count();
    assert_eq!(touching, 2);
}

#[test]
fn composition_scene_layout() {
    let f = parse("2x - 2").unwrap();
    let g = parse("2x + 3").unwrap();
    let scene = build_scene(&f, &RenderConfig::default(), Some(&g)).unwrap();
    assert_eq!(scene.axes, vec![0.0, 1.0, 2.0]);
    assert_eq!(scene.foci.len(), 3);
    assert!(!scene.guides.is_empty());
    let svg = scene_to_svg(&scene);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let focus_marks = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("focus"))
        .count();
    assert_eq!(focus_marks, 3);
}

#[test]
fn probe_reads_the_derivative() {
    let probe = FocalFunction::parse("x^2").unwrap().probe(-1.0, AxesConfig::default()).unwrap();
    assert!((probe.fprime + 2.0).abs() < 1e-12);
    let focus = probe.affine.unwrap();
    assert!(focus.distance(&PlanePoint::new(1.0 / 3.0, -1.0 / 3.0)) < 1e-12);
}

#[test]
fn selftest_criteria_are_addressable() {
    let names = selftest::criterion_names();
    assert_eq!(names.len(), 11);
    let report = selftest::run_criterion("exact implicit equations").unwrap();
    assert!(report.passed, "{report}");
}
