//! Finds the best possible strategy with perfect foresight using max-plus
//! matrix products, and shows the frozen ensemble agreeing with it.
//!
//! Run with `cargo run --example clairvoyant_strategy`.

use ahp_thermo::ensemble::observables;
use ahp_thermo::market::{CostMatrix, ReturnSeries};
use ahp_thermo::strategy::profit;
use ahp_thermo::tropical::{clairvoyant, max_profit, tropical_product, TropicalMatrix};

fn main() -> ahp_thermo::Result<()> {
    let h = ReturnSeries::from_rows(&[
        vec![0.9, -0.3, 0.4, 0.1],
        vec![0.2, 0.8, -0.5, 0.6],
        vec![-0.1, 0.2, 0.7, -0.2],
    ])?;
    let c = CostMatrix::from_rows(&[
        vec![0.0, 0.25, 0.4],
        vec![0.3, 0.0, 0.2],
        vec![0.35, 0.15, 0.0],
    ])?;

    // In the max-plus semiring "sum over paths" degenerates to "best
    // path", so chaining the step matrices scores a perfect forecaster.
    let steps: Vec<TropicalMatrix> = (0..h.steps())
        .map(|t| TropicalMatrix::from_step(&h, &c, t))
        .collect::<ahp_thermo::Result<_>>()?;
    let mut product = steps[0].clone();
    for step in &steps[1..] {
        product = tropical_product(&product, step)?;
    }
    println!("step-product diagonal (profit of the best tour closing on each criterion):");
    for nu in 0..h.n() {
        println!("  close on {nu}: {:.6}", product.get(nu, nu));
    }

    let best = max_profit(&h, &c)?;
    println!("clairvoyant profit: {best:.6}");

    // The Viterbi sweep recovers a strategy attaining that value.
    let plan = clairvoyant(&h, &c)?;
    println!("attaining strategy: {:?}", plan.strategy.choices());
    let realized = profit(&plan.strategy, &h, &c)?;
    println!("realized profit:    {realized:.6}");
    assert_eq!(plan.max_profit, best);

    // As beta -> -inf the Gibbs ensemble freezes onto the same number:
    // -T ln Z is the free energy, and its ground state is the optimum.
    for beta in [-1.0, -5.0, -20.0, -50.0] {
        let obs = observables(beta, &h, &c)?;
        let free_energy = -obs.log_z / beta;
        println!("beta {beta:6.1}: -T ln Z = {free_energy:.9}");
    }
    Ok(())
}
