//! Measures how much knowledge a strategy encodes: per-criterion Fisher
//! information from its switch pattern, and what that knowledge costs.
//!
//! Run with `cargo run --example fisher_information`.

use ahp_thermo::fisher::{
    cost_of_information, discrete_fisher, shannon_entropy, strategy_fisher, DiscreteFisher,
};
use ahp_thermo::strategy::PureStrategy;

fn main() -> ahp_thermo::Result<()> {
    // Two orderings of the same holdings: four steps on each criterion.
    // Grouping minimizes toggles; interleaving doubles them.
    let grouped = PureStrategy::new(vec![0, 0, 0, 0, 1, 1, 1, 1], 2)?;
    let interleaved = PureStrategy::new(vec![0, 1, 0, 1, 0, 1, 0, 1], 2)?;

    for (label, s) in [("grouped", &grouped), ("interleaved", &interleaved)] {
        let report = strategy_fisher(s, 2)?;
        println!(
            "{label}: per criterion {:?}, total {} (switches {})",
            report.per_criterion,
            report.total,
            s.switch_count()
        );
    }

    // A constant strategy carries no information and costs nothing.
    let constant = PureStrategy::new(vec![1, 1, 1], 3)?;
    let idle = strategy_fisher(&constant, 3)?;
    println!("constant: total {}", idle.total);

    // Under a flat fee the information has a literal price: fee per
    // switch, and the total Fisher information counts each switch twice.
    let busy = strategy_fisher(&interleaved, 2)?;
    let price = cost_of_information(&busy, 0.5)?;
    println!("interleaved at fee 0.5: cost {price}");

    // The same quotient (diff^2 / sum) works for any discretized density.
    // A delta spike diverges; smoothing it restores a finite value.
    let spike = [1.0, 0.0, 0.0];
    match discrete_fisher(&spike, 1.0)? {
        DiscreteFisher::Finite(v) => println!("spike fisher: {v}"),
        DiscreteFisher::Divergent => println!("spike fisher: divergent"),
    }
    let smooth = [0.5, 0.3, 0.2];
    if let DiscreteFisher::Finite(v) = discrete_fisher(&smooth, 1.0)? {
        println!("smooth fisher: {v:.6}");
    }
    println!("smooth entropy: {:.6}", shannon_entropy(&smooth, 1.0)?);
    Ok(())
}
