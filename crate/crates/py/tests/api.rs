//! The binding layer without an interpreter.

use gtbv_py::api;

#[test]
fn surfaces_by_name_and_json() {
    let json = api::surface_json("torus").unwrap();
    assert_eq!(api::surface_json(&json).unwrap(), json);
    let info: serde_json::Value = serde_json::from_str(&api::surface_info("pants").unwrap()).unwrap();
    assert_eq!(info["info"]["boundary_components"], 3);
    assert!(api::surface("no-such-surface").is_err());
}

#[test]
fn loop_operations() {
    assert_eq!(api::bracket("torus", "a", "b", 1, true).unwrap(), "1 · (a b)");
    assert_eq!(api::bracket("torus", "a", "H[0,1]", 1, true).unwrap(), "1 · (a)");
    assert_eq!(api::cobracket("torus", "a b a' b'", 1).unwrap(), "0");
    let d = api::cobracket("genus2", "a b a' b' c", 1).unwrap();
    assert_eq!(api::bv_delta_wedge("genus2", "∧(a b a' b' c)", "1", 1).unwrap(), d);
    assert!(api::bracket("torus", "a c", "b", 1, true).is_err());
}

#[test]
fn functions_and_suites() {
    let g = api::group("gl", 2).unwrap();
    assert_eq!(api::evaluate("torus", "tr(a b)", g, 3).unwrap(), api::evaluate("torus", "tr(b a)", g, 3).unwrap());
    assert_eq!(api::quasi_bv("torus", "2", api::group("q", 1).unwrap(), 3).unwrap(), "0");
    assert!(api::quasi_bv("torus", "tr(a)", g, 3).is_err());
    let (ok, report) = api::verify("GT_AXIOMS", Some(1), 5, &["torus".into()], &[], false).unwrap();
    assert!(ok);
    assert!(report.contains("\"suite\":\"GT_AXIOMS\""));
    assert_eq!(api::suites().len(), 12);
}
