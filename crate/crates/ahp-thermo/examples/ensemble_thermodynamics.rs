//! Treats the strategy space as a Gibbs ensemble: exact partition function
//! by transfer matrices, mean profit, fluctuations, and entropy.
//!
//! Run with `cargo run --example ensemble_thermodynamics`.

use ahp_thermo::ensemble::{
    brute_force_partition, gibbs_weight, observables, partition_function, transfer_matrix,
};
use ahp_thermo::market::{CostMatrix, ReturnSeries};
use ahp_thermo::strategy::PureStrategy;

fn main() -> ahp_thermo::Result<()> {
    let h = ReturnSeries::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]])?;
    let c = CostMatrix::uniform(2, 0.5);

    // One matrix per step; entries weight "arrive at mu having held nu".
    let m0 = transfer_matrix(0, -1.0, &h, &c)?;
    println!("transfer matrix at step 0, beta = -1:");
    for nu in 0..2 {
        let row: Vec<String> = (0..2)
            .map(|mu| format!("{:12.6}", m0.entry(nu, mu)))
            .collect();
        println!("  [{}]", row.join(", "));
    }

    // Negative beta rewards profit, so ln Z grows toward the optimum.
    let log_z = partition_function(-1.0, &h, &c)?;
    let brute = brute_force_partition(-1.0, &h, &c)?;
    println!("\nln Z(-1) transfer matrices: {log_z:.15}");
    println!("ln Z(-1) full enumeration:  {brute:.15}");

    let obs = observables(-1.0, &h, &c)?;
    println!("\nobservables at beta = -1:");
    println!("  expected profit: {:.12}", obs.expected_profit);
    println!("  variance:        {:.12}", obs.variance);
    println!("  entropy:         {:.12}", obs.entropy);
    println!("  temperature:     {:.12}", obs.temperature);
    if let Some(residual) = obs.identity_residual() {
        println!("  T ln Z - (E - T S) residual: {residual:.2e}");
    }

    // Strategy weights sum to one; the optimum dominates at beta = -1.
    let mut total = 0.0;
    for choices in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let s = PureStrategy::new(choices.to_vec(), 2)?;
        let w = gibbs_weight(&s, -1.0, &h, &c)?;
        total += w;
        println!("  weight of {choices:?}: {w:.12}");
    }
    println!("  sum of weights: {total:.12}");

    // beta = 0 forgets the profits: every strategy equally likely, so the
    // expected profit is the plain average and entropy is k ln N.
    let flat = observables(0.0, &h, &c)?;
    println!("\nobservables at beta = 0:");
    println!("  expected profit: {:.12}", flat.expected_profit);
    println!(
        "  entropy:         {:.12} (k ln N = {:.12})",
        flat.entropy,
        2.0 * 2.0f64.ln()
    );
    println!("  temperature:     {}", flat.temperature);
    Ok(())
}
