//! Every named verification suite on one configuration.
//!
//! cargo run --example verification_suites

use aomega::suite::{run_suite, SessionConfig, SUITES};

fn main() -> aomega::Result<()> {
    let config = SessionConfig {
        p: 2,
        depth: 2,
        dim: 2,
        bound: 2,
        instances: 40,
        seed: 42,
        ..SessionConfig::default()
    };
    for name in SUITES {
        let r = run_suite(name, &config)?;
        println!("{name}: {}", if r.passed { "pass" } else { "FAIL" });
        for c in &r.checks {
            println!(
                "  {:<5} {:>8}  {}",
                if c.passed { "ok" } else { "FAIL" },
                c.cases,
                c.name
            );
        }
    }
    Ok(())
}
