// Two-orbit open-loop response to a one-volt, one-second motor pulse on
// the e = 0.2, i = 30° orbit. Writes trajectory.csv and summary.toml to
// the directory given as the first argument (default: the temp dir).
//
// ```text
// cargo run --example open_loop_impulse -- out/
// ```

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use dualspin::cli::output::{write_trajectory_csv, Summary};
use dualspin::sim::{run_coupled, Scenario};

pub fn run_example() -> dualspin::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("dualspin-open-loop"));
    std::fs::create_dir_all(&dir)?;

    let scenario = Scenario::reference(0.2, 30.0);
    let trajectory = run_coupled(&scenario)?;
    write_trajectory_csv(BufWriter::new(File::create(dir.join("trajectory.csv"))?), &trajectory)?;
    let summary = Summary::new(&scenario, &trajectory, 4).to_toml()?;
    std::fs::write(dir.join("summary.toml"), &summary)?;

    print!("{summary}");
    println!("wrote {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
