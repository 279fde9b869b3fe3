//! Generating a labeled corpus from the theorem stream, writing it to disk
//! and validating it under both matrices.

use hxlab::dataset::{
    generate_dataset_file, load_dataset, manifest_path, parse_dataset, validate_dataset,
    validate_dataset_file, GenerationParams, REFERENCE_TSV,
};
use hxlab::{matrix_t, matrix_tprime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("hxlab-dataset-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("corpus.tsv");

    let params = GenerationParams {
        per_class: 2000,
        ..GenerationParams::default()
    };
    let manifest = generate_dataset_file(&path, params)?;
    assert!(manifest.complete);
    print!("{}", std::fs::read_to_string(manifest_path(&path))?);
    for row in load_dataset(&path)?.iter().take(6) {
        println!("  {row}");
    }

    let (t, tp) = (matrix_t(), matrix_tprime());
    for (name, report) in ["T", "Tprime"]
        .iter()
        .zip(validate_dataset_file(&path, &[&t, &tp])?)
    {
        println!(
            "policy {name}: {} rows, {} violations",
            report.rows,
            report.violations.len()
        );
        assert!(report.passed());
    }

    let table = parse_dataset(REFERENCE_TSV)?;
    let report = validate_dataset(&table, &tp)?;
    println!(
        "reference table under Tprime: {} rows, {} violations",
        report.rows,
        report.violations.len()
    );

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
