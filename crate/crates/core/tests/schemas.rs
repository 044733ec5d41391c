//! Every JSON document the CLI writes validates against docs/schemas.

mod common;

use common::{run_cli, schema_dir};
use serde_json::Value;

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).expect("schema file exists");
    serde_json::from_str(&text).expect("schema is JSON")
}

fn check(schema_name: &str, doc: &str) {
    let complex = load("complex.schema.json");
    let validator = jsonschema::options()
        .with_resource(
            "json-schema:///complex.schema.json",
            jsonschema::Resource::from_contents(complex).unwrap(),
        )
        .build(&load(schema_name))
        .expect("schema compiles");
    let instance: Value = serde_json::from_str(doc).expect("output is JSON");
    let errors: Vec<String> = validator
        .iter_errors(&instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

#[test]
fn schur_basis_output() {
    for t in ["1", "4"] {
        check("schur_basis.schema.json", &run_cli(&["schur", "--t", t]).0);
    }
}

#[test]
fn twirl_outputs() {
    check(
        "twirl_result.schema.json",
        &run_cli(&["twirl", "--preset", "ghz4", "--verify"]).0,
    );
    check(
        "twirl_result.schema.json",
        &run_cli(&["twirl", "--preset", "zero4"]).0,
    );
    check(
        "twirl_result.schema.json",
        &run_cli(&[
            "twirl",
            "--preset",
            "mixed",
            "--t",
            "3",
            "--channel",
            "mc-haar",
            "--samples",
            "200",
        ])
        .0,
    );
    check(
        "twirl_result.schema.json",
        &run_cli(&[
            "twirl",
            "--preset",
            "zero4",
            "--channel",
            "noncompact",
            "--convention",
            "raw",
        ])
        .0,
    );
}

#[test]
fn beta_output() {
    check(
        "beta.schema.json",
        &run_cli(&["beta", "--t", "2", "--samples", "2000"]).0,
    );
    check(
        "beta.schema.json",
        &run_cli(&["beta", "--convention", "raw"]).0,
    );
}

#[test]
fn sizes_output() {
    check("sizes.schema.json", &run_cli(&["sizes"]).0);
}

#[test]
fn verify_report_output() {
    use unitary_averaging::verify::{run_suite, VerifyConfig};
    let cfg = VerifyConfig {
        samples: 200,
        states: 1,
        ..VerifyConfig::default()
    };
    check(
        "verify_report.schema.json",
        &serde_json::to_string(&run_suite(&cfg)).unwrap(),
    );
}

#[test]
fn state_file_format() {
    let rho = unitary_averaging::channels::states::ghz_state(2);
    check("state.schema.json", &rho.to_file_json().unwrap());
}

#[test]
fn schemas_reject_malformed_documents() {
    let validator = jsonschema::validator_for(&load("sizes.schema.json")).unwrap();
    assert!(!validator.is_valid(&serde_json::json!([{ "d": 2 }])));
}
