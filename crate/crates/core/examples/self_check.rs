//! Runs the normalization and constant audit and lists any published
//! values that the formulas contradict.
//!
//! cargo run --example self_check

use basn::audit::run_audit;

fn main() -> basn::Result<()> {
    let r = run_audit()?;
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
    println!("{} checks, {} failed", r.checks.len(), failed.len());
    for c in failed {
        println!("  FAIL {} (error {:.3e})", c.name, c.error);
    }
    for f in &r.findings {
        println!("\n{}\n  printed:  {}\n  computed: {}\n  {}", f.topic, f.printed, f.computed, f.note);
    }
    Ok(())
}
