// Exact arithmetic with quantum integers, `q -> 1` limits and certified
// evaluation at a root of unity.

use c2_theta::qscalar::{q, QScalar, RootContext};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let loop_value = -(q(2) * q(6) / q(3));
    println!("single loop = {loop_value}");
    println!("  at q = 1: {}", loop_value.limit_q1()?);

    let x = q(5) * q(4) / (q(2) * q(10));
    println!("[5][4]/([2][10]) = {x}");

    // q = exp(2 pi i / 24)
    let ctx = RootContext::new(24, 128)?;
    let v = ctx.eval(&x)?.to_value();
    println!(
        "  at N = 24: {} + {}i, error <= {:e}",
        v.re, v.im, v.error_bound
    );

    let zero = ctx.eval(&q(12))?;
    println!("[12] at N = 24 contains zero: {}", zero.contains_zero());

    let json = serde_json::to_string(&x)?;
    let back: QScalar = serde_json::from_str(&json)?;
    assert_eq!(back, x);
    println!("json: {json}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
