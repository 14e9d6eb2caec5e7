// Theta values from the closed-form recursion, with clasp traces and the
// ladder cross-check.

use c2_theta::netforms::{clasp_trace, net_closed, net_ladder, theta, tri_to_net, TriLabel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for p in 0..=5 {
        println!("tr P_{p} -> {} at q = 1", clasp_trace(p).limit_q1()?);
    }
    for (a, b, c) in [(1, 1, 2), (2, 2, 2), (3, 2, 1), (1, 1, 1)] {
        let t = TriLabel::new(a, b, c);
        let v = theta(t);
        match v.inadmissible {
            Some(why) => println!("theta{t} = 0 ({why})"),
            None => {
                let s = tri_to_net(t)?;
                assert_eq!(net_closed(s.m, s.n, s.p), net_ladder(s.m, s.n, s.p));
                println!(
                    "theta{t} = Net({},{},{}) -> {} at q = 1",
                    s.m,
                    s.n,
                    s.p,
                    v.value.limit_q1()?
                );
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
