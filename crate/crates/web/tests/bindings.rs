use dmkit_web::{content, dm_check, mu};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

const RUSH_G: &str = r#"{"ring": {"vars": ["u", "v"]}, "terms": [
    {"a": "u", "j": 0},
    {"a": "v", "j": 1, "unit": "geom"}]}"#;

#[test]
fn content_of_text_and_documents() {
    let v = parse(&content("u + v*X", "", ""));
    assert_eq!(v["content"], serde_json::json!(["u", "v"]));
    assert_eq!(v["is_unit"], false);
    let v = parse(&content(RUSH_G, "", ""));
    assert_eq!(v["content"].as_array().unwrap().len(), 2);
    assert!(parse(&content("1 + u*X", "", ""))["is_unit"].as_bool().unwrap());
}

#[test]
fn dm_check_on_known_pairs() {
    let out = dm_check("v + X", RUSH_G, 0, 0, "", "");
    let v = parse(&out);
    assert_eq!(v["verdict"], "verified", "{out}");
    let v = parse(&dm_check("u + v*X", "v + u*X", 1, 0, "", ""));
    assert_eq!(v["verdict"], "refuted");
    let v = parse(&dm_check("u + v*X", "v + u*X", 2, 0, "", "Fp:101"));
    assert_eq!(v["verdict"], "verified");
}

#[test]
fn mu_at_points() {
    let v = parse(&mu("u, v, u + v", "", "", ""));
    assert_eq!(v["mu"], 2);
    let v = parse(&mu("u, v", "1, 1", "", ""));
    assert_eq!(v["mu"], 1);
}

#[test]
fn errors_come_back_as_json() {
    let v = parse(&content("u +* v", "", ""));
    assert!(v["error"].as_str().unwrap().contains("1:4"));
    assert!(parse(&mu("u", "1, 2", "", ""))["error"].is_string());
    assert!(parse(&dm_check("{", "u", 1, 0, "", ""))["error"].is_string());
    assert!(parse(&content("u", "", "Z"))["error"].is_string());
}
