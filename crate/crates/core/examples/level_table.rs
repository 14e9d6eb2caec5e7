// Admissibility, negligibility and certified nonvanishing at level 3.

use c2_theta::cli::table_rows;
use c2_theta::netforms::LevelContext;
use c2_theta::qscalar::RootContext;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let level = LevelContext::new(3);
    let root = RootContext::from_env(level.order_n())?;
    println!("k = {}, N = {}", level.k, level.order_n());
    println!(" a  b  c  generic  level  nonzero");
    for r in table_rows(8, level, &root)
        .iter()
        .filter(|r| r.admissible_generic)
    {
        println!(
            "{:2} {:2} {:2}  {:7}  {:5}  {}",
            r.a, r.b, r.c, r.admissible_generic, r.admissible_level, r.nonzero_certified
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
