// Runs the built-in acceptance checks and prints one line per criterion.
//
// ```text
// cargo run --example acceptance_report
// ```

use dualspin::validation::{validate_all, ValidationContext};

pub fn run_example() -> dualspin::Result<()> {
    let report = validate_all(&ValidationContext::default());
    println!("{report}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
