// Expand clasps into webs and check them by closing up.

use num_traits::Signed;

use c2_theta::netforms::clasp_trace;
use c2_theta::webcalc::{
    annihilation_witness, close_with, expand_clasp_double, expand_clasp_double_corrected,
    expand_clasp_single, last_pair_witness, reduce_closed, trace_pairs,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=4 {
        let p = expand_clasp_single(n)?;
        let tr = reduce_closed(&close_with(&p, &trace_pairs(n))?)?;
        println!(
            "P_{n}: {} webs, trace -> {} at q = 1",
            p.len(),
            tr.limit_q1()?
        );
        assert_eq!(tr.limit_q1()?.abs(), clasp_trace(n as u32).limit_q1()?);
        if n > 1 {
            assert!(annihilation_witness(n)?.is_zero());
        }
    }

    for n in 1..=3 {
        let p = expand_clasp_double_corrected(n)?;
        let tr = reduce_closed(&close_with(&p, &trace_pairs(n))?)?;
        let killed = n < 2 || last_pair_witness(&p, n)?.is_zero();
        println!(
            "double P_{n}: {} webs, trace -> {} at q = 1, kills turnbacks: {killed}",
            p.len(),
            tr.limit_q1()?
        );
    }

    let drawn = expand_clasp_double(2)?;
    println!(
        "double P_2 with the drawn coefficients: trace -> {}, kills turnbacks: {}",
        reduce_closed(&close_with(&drawn, &trace_pairs(2))?)?.limit_q1()?,
        last_pair_witness(&drawn, 2)?.is_zero()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
