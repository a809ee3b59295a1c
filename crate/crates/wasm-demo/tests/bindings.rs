use gflow_wasm_demo::{gen_text, lp2_text, solve_text};
use serde_json::Value;

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn generated_instances_solve_and_check() {
    for kind in ["uncap", "std"] {
        let inst = gen_text(kind, 5, 12, 3, 4).unwrap();
        for algorithm in ["weak", "strong"] {
            let out = parse(&solve_text(&inst, algorithm).unwrap());
            assert_eq!(out["checked"], true, "{out}");
        }
    }
    let out = parse(&lp2_text(&gen_text("lp2", 4, 6, 3, 4).unwrap()).unwrap());
    assert_eq!(out["checked"], true, "{out}");
}

#[test]
fn trace_has_delta_and_psi() {
    let inst = gen_text("uncap", 5, 12, 7, 4).unwrap();
    let out = parse(&solve_text(&inst, "weak").unwrap());
    let trace = out["trace"].as_array().unwrap();
    assert!(!trace.is_empty());
    assert!(trace.iter().all(|p| p["psi"].is_i64() && p["log2_delta"].is_f64()));
}

#[test]
fn errors_come_back_as_messages() {
    assert!(solve_text("problem uncap\nnodes 1\n", "weak").unwrap_err().contains("sink"));
    assert!(solve_text("", "fast").is_err());
    assert!(gen_text("other", 3, 3, 0, 4).is_err());
}
