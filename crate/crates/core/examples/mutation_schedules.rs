//! Mutation-rate curves for the built-in schedules.
//!
//! ```text
//! cargo run --example mutation_schedules -- [g_max]
//! ```

use neoseg::harness::{comparison_schedules, emit_schedule_curves};
use neoseg::schedule::MutationSchedule;

fn main() -> neoseg::Result<()> {
    let g_max: usize = std::env::args().nth(1).map(|a| a.parse().expect("g_max")).unwrap_or(200);

    let mut curves = comparison_schedules(531, 3000);
    curves.push(("C".into(), MutationSchedule::constant()));
    print!("{}", emit_schedule_curves(&curves, g_max)?);

    for (name, s) in &curves {
        eprintln!("{name:>10}: rate(0) = {:.6}, rate(2999) = {:.3e}", s.rate(0)?, s.rate(2999)?);
    }
    Ok(())
}
