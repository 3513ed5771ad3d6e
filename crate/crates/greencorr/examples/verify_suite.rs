//! Runs one verification suite and prints its text report.
//!
//! cargo run --example verify_suite -- blocks 3

use greencorr::verify::{run_suite, SuiteConfig};

fn main() -> greencorr::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "idem".into());
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let r = run_suite(&name, &SuiteConfig { seed, ..SuiteConfig::default() })?;
    print!("{}", r.to_text());
    std::process::exit(r.exit_code());
}
