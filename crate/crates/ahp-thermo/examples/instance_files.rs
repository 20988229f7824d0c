//! Generates a random market instance, round-trips it through the JSON
//! document format, and dispatches it to the solvers.
//!
//! Run with `cargo run --example instance_files`.

use ahp_thermo::ensemble::observables;
use ahp_thermo::instance::{generate_instance, InstanceDocument};
use ahp_thermo::market::decompose;
use ahp_thermo::report::to_json_pretty;
use ahp_thermo::tropical::clairvoyant;

fn main() -> ahp_thermo::Result<()> {
    // Same seed, same instance: generation is fully deterministic.
    let doc = generate_instance(3, 4, 42, 0.1, 1.0)?;

    let text = to_json_pretty(&doc)?;
    println!("generated instance (seed 42):\n{text}\n");

    // Floats are printed with 17 significant digits, so parsing the text
    // back yields the identical document.
    let parsed = InstanceDocument::from_json(&text)?;
    parsed.validate()?;
    assert_eq!(parsed, doc);
    println!("round trip through JSON is lossless\n");

    // The document carries judgments whose commissions price the costs,
    // so the two blocks tell one consistent story.
    let u = parsed.judgment_matrix()?;
    let costs = parsed.resolve_costs()?;
    let d = decompose(&u);
    let mut worst = 0.0f64;
    for nu in 0..u.n() {
        for mu in 0..u.n() {
            worst = worst.max((costs.get(nu, mu) + d.commission(nu, mu)).abs());
        }
    }
    println!("costs vs judgment commissions: max gap {worst:.2e}");

    let h = parsed.return_series()?;
    let plan = clairvoyant(&h, &costs)?;
    println!(
        "clairvoyant profit {:.6} via {:?}",
        plan.max_profit,
        plan.strategy.choices()
    );
    let obs = observables(-1.0, &h, &costs)?;
    println!("expected profit at beta -1: {:.6}", obs.expected_profit);
    Ok(())
}
