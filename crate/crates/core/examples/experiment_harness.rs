//! Driving a full run from a config string, as the command-line tool does.

use infocent::harness::{run as run_config, series_csv, RunConfig};
use infocent::Result;

pub fn run() -> Result<String> {
    let cfg = RunConfig::parse(
        "generate = ws 60 4 0.1\n\
         random_targets = 4\n\
         k = 3\n\
         algo = exact, approx, top-cent, oracle\n\
         seed = 3\n",
    )?;
    let (report, timing) = run_config(&cfg)?;
    println!("{} nodes, {} edges, deviations: {:?}", report.graph.n, report.graph.m, report.deviations);
    println!("mean seconds per target: {:?}", timing.mean_seconds);
    let csv = series_csv(&report);
    print!("{csv}");
    Ok(csv)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
