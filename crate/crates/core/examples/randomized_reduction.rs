// Reduce the same web along random rewrite orders and compare.

use c2_theta::webcalc::{close_with, expand_clasp_single, trace_pairs, ReduceOptions, Reducer};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ws = close_with(&expand_clasp_single(3)?, &trace_pairs(3))?;
    let want = Reducer::default().reduce_closed(&ws)?;
    for seed in 0..5 {
        let mut r = Reducer::new(ReduceOptions {
            log: true,
            ..ReduceOptions::randomized(seed)
        });
        let v = r.reduce_closed(&ws)?;
        assert_eq!(v, want);
        let decreasing = r.log.iter().all(|s| s.after.iter().all(|a| *a < s.before));
        println!(
            "seed {seed}: {} rewrites, measure decreasing: {decreasing}",
            r.log.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
