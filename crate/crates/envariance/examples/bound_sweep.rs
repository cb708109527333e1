//! A small randomized campaign certifying that the distance between a
//! channel's action on either side of a purification never exceeds the
//! purity ceiling 2 sqrt(1 - |1 - Q^2 + Q^4/4|).

use envariance::verify::{run_suite, CampaignConfig, OutputFormat, Suite};

fn main() -> envariance::Result<()> {
    let config = CampaignConfig::new(Suite::BoundSweep, 2, 5, 400, 42, 1e-9, OutputFormat::Csv)?;
    let report = run_suite(&config)?;
    println!("{}", report.summary);

    let mut tightest = &report.bound_records[0];
    for record in &report.bound_records {
        if record.margin_ab < tightest.margin_ab {
            tightest = record;
        }
    }
    println!();
    println!("tightest trial:");
    println!("  n = {}, channel = {}", tightest.n, tightest.channel_kind);
    println!("  Q        = {:.6}", tightest.q);
    println!("  D_alpha  = {:.6}", tightest.d_alpha);
    println!("  D_global = {:.6}", tightest.d_alphabeta);
    println!("  ceiling  = {:.6}", tightest.bound);
    println!("  margin   = {:.3e}", tightest.margin_ab);
    println!("  replay seed: {}", tightest.seed);

    let saturated = report
        .bound_records
        .iter()
        .filter(|r| r.bound > 1e-6 && r.margin_ab / r.bound < 0.2)
        .count();
    println!();
    println!(
        "{saturated} of {} trials came within 20% of the ceiling",
        report.bound_records.len()
    );
    Ok(())
}
