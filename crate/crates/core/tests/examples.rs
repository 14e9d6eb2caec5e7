macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(quantum_integers, "quantum_integers.rs");
example!(theta_values, "theta_values.rs");
example!(level_table, "level_table.rs");
example!(reduce_web, "reduce_web.rs");
example!(clasp_expansion, "clasp_expansion.rs");
example!(theta_oracle, "theta_oracle.rs");
example!(randomized_reduction, "randomized_reduction.rs");
example!(nonvanishing, "nonvanishing.rs");

#[test]
fn examples_run() {
    quantum_integers::run_example().unwrap();
    theta_values::run_example().unwrap();
    level_table::run_example().unwrap();
    reduce_web::run_example().unwrap();
    clasp_expansion::run_example().unwrap();
    theta_oracle::run_example().unwrap();
    randomized_reduction::run_example().unwrap();
    nonvanishing::run_example().unwrap();
}
