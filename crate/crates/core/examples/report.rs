//! Running verification suites from code and writing the JSON report.

use torusq::report::VerificationReport;
use torusq::suites::{run_suite, Suite, SuiteConfig};
use torusq::Result;

fn main() -> Result<()> {
    let config = SuiteConfig::symmetric(2, 1.0)?;
    let mut checks = Vec::new();
    for suite in [Suite::Weyl, Suite::Dft] {
        checks.extend(run_suite(suite, &config)?);
    }
    let report = VerificationReport::new(&config.geometry, checks);
    print!("{}", report.render_table());
    println!("{}", report.to_json());
    Ok(())
}
