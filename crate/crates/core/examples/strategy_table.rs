//! Strategy × seed comparison on the synthetic six-colour image.
//!
//! ```text
//! cargo run --release --example strategy_table -- [generations] [strategies]
//! ```
//!
//! `strategies` is a comma list from C,LD,QD,LDN,QDN,LDNR,QDNR (default: all).

use std::time::Instant;

use neoseg::harness::{self, config, Grouping};

fn main() -> neoseg::Result<()> {
    let mut args = std::env::args().skip(1);
    let generations: usize = args.next().map(|a| a.parse().expect("generations")).unwrap_or(1500);
    let strategies: Vec<String> = args
        .next()
        .map(|s| s.split(',').map(str::to_string).collect())
        .unwrap_or_default();
    let wanted: Vec<&str> = strategies.iter().map(String::as_str).collect();

    let text = config::table2_spec_text(generations, &wanted, &config::TABLE2_SEEDS);
    let spec = harness::parse_config(&text)?;
    let start = Instant::now();
    let out = harness::execute(&spec)?;
    eprintln!(
        "{} runs of {generations} generations on {} cubes in {:.1?}",
        out.runs.len(),
        out.runs[0].result.cube_count,
        start.elapsed()
    );

    let table = harness::aggregate_strategies(&out.summaries, Grouping::Strategy)?;
    print!("{}", table.to_csv());
    if let (Some(c), Some(ld)) = (table.mean_of("C"), table.mean_of("LD")) {
        eprintln!("LD / C = {:.3}", ld / c);
    }
    if let (Some(ld), Some(ldn)) = (table.mean_of("LD"), table.mean_of("LD/N")) {
        eprintln!("LD/N / LD = {:.3}", ldn / ld);
    }
    Ok(())
}
