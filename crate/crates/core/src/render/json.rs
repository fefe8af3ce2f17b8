use super::Scene;

/// Compact JSON with full-precision numbers; field order is fixed.
pub fn scene_to_json(s: &Scene) -> String {
    serde_json::to_string(s).expect("scenes contain only finite numbers")
}

pub fn scene_from_json(text: &str) -> Result<Scene, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::super::{build_scene, RenderConfig};
    use super::*;
    use crate::expr::parse;

    #[test]
    fn round_trip() {
        let cfg = RenderConfig {
            probe: Some(0.3),
            ..RenderConfig::default()
        };
        let s = build_scene(&parse("x^2").unwrap(), &cfg, None).unwrap();
        let text = scene_to_json(&s);
        assert_eq!(scene_from_json(&text).unwrap(), s);
        assert_eq!(text, scene_to_json(&scene_from_json(&text).unwrap()));
    }

    #[test]
    fn schema_keys() {
        let cfg = RenderConfig {
            probe: Some(-1.0),
            ..RenderConfig::default()
        };
        let s = build_scene(&parse("x^2").unwrap(), &cfg, None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&scene_to_json(&s)).unwrap();
        for key in [
            "delta",
            "axes",
            "arrows",
            "focal_branches",
            "cusps",
            "probe",
            "foci",
            "implicit",
            "viewport",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let probe = &v["probe"];
        assert!(probe["x0"].is_number() && probe["fprime"].is_number());
        assert_eq!(probe["focus"].as_array().unwrap().len(), 2);
        assert!(v["arrows"][0]["from"].is_array() && v["arrows"][0]["to"].is_array());
        assert_eq!(v["focal_branches"].as_array().unwrap().len(), 2);
        for k in ["xmin", "xmax", "ymin", "ymax"] {
            assert!(v["viewport"][k].is_number());
        }

        let plain = build_scene(&parse("x^2").unwrap(), &RenderConfig::default(), None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&scene_to_json(&plain)).unwrap();
        assert!(v["probe"].is_null());
        let id = build_scene(&parse("x").unwrap(), &RenderConfig { probe: Some(1.0), ..RenderConfig::default() }, None)
            .unwrap();
        let v: serde_json::Value = serde_json::from_str(&scene_to_json(&id)).unwrap();
        assert!(v["probe"]["focus"].is_null());
    }
}
