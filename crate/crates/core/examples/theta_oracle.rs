// Brute-force theta values by web reduction, compared with the closed form.

use c2_theta::netforms::{diagram_sign, theta, tri_to_net, TriLabel};
use c2_theta::qscalar::QScalar;
use c2_theta::webcalc::{theta_oracle_with, ReduceOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (a, b, c) in [(1, 1, 0), (1, 1, 2), (2, 2, 2), (3, 2, 1), (2, 0, 2)] {
        let t = TriLabel::new(a, b, c);
        let (w, stats) = theta_oracle_with(a, b, c, &ReduceOptions::default())?;
        let f = theta(t).value * QScalar::from_int(diagram_sign(t));
        println!(
            "theta{t}: outer bundle {}, web value -> {} at q = 1, {} rewrites, agrees: {}",
            tri_to_net(t)?.p,
            w.limit_q1()?,
            stats.steps,
            w == f
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
