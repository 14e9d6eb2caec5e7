// Certify theta values nonzero at a root of unity, and look at the sign
// of the sine form of one expansion coefficient.

use c2_theta::netforms::{check_nonvanishing, theorem9_sine_expression, LevelContext, TriLabel};
use c2_theta::qscalar::RootContext;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (a, b, c) in [(0, 0, 0), (1, 1, 2), (2, 2, 2), (3, 3, 2)] {
        let t = TriLabel::new(a, b, c);
        // smallest allowed root, then one with a+b+c <= 2k and every label at most k
        let small = LevelContext::smallest_above(2 * t.sum() as u64 + 4);
        let roomy = LevelContext::new(a.max(b).max(c).max(t.sum().div_ceil(2)));
        for level in [small, roomy] {
            let ctx = RootContext::from_env(level.order_n())?;
            match check_nonvanishing(t, &ctx) {
                Ok(r) => println!(
                    "theta{t} at N = {}: |value| >= {:.6}",
                    ctx.order_n, r.margin
                ),
                Err(e) => println!("theta{t} at N = {}: {e}", ctx.order_n),
            }
        }
    }
    let ctx = RootContext::new(40, 128)?;
    let s = theorem9_sine_expression(2, 1, 1, &ctx)?;
    println!("sine form of A_2 (m = n = 1) at N = 40 has sign {}", s.sign);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
