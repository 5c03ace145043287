use ktrans_web::{expand_json, poly_json, skew_json};

#[test]
fn expand_worked_element() {
    let v: serde_json::Value = serde_json::from_str(&expand_json("C", "-3,4,-1,5,2").unwrap()).unwrap();
    assert_eq!(v["basis"], "GQ");
    assert_eq!(v["terms"][0]["coeff"], 2);
    assert!(v["text"].as_str().unwrap().starts_with("2*GQ[4,2,1]"));
    assert!(expand_json("A", "2,1").is_err());
    assert!(expand_json("B", "1,1").is_err());
}

#[test]
fn skew_and_polynomials() {
    let v: serde_json::Value = serde_json::from_str(&skew_json("GP", "outer=[5,3,1] inner=[2]").unwrap()).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 7);
    assert!(skew_json("GP", "outer=[2] inner=[3]").is_err());
    let p: serde_json::Value = serde_json::from_str(&poly_json("GQ", "[1]", 1, 2).unwrap()).unwrap();
    assert_eq!(p["poly"], "2*z1 + b*z1^2");
    assert!(poly_json("GP", "[1]", 9, 2).is_err());
}
