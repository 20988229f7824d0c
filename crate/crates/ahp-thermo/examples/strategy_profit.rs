//! Scores switching strategies on a two-criterion market and checks the
//! occupation-number profit against its spin form.
//!
//! Run with `cargo run --example strategy_profit`.

use ahp_thermo::market::{CostMatrix, ReturnSeries};
use ahp_thermo::strategy::{profit, spin_profit, spins, PureStrategy};

fn main() -> ahp_thermo::Result<()> {
    // Log returns per criterion and step, and a flat switching fee.
    let h = ReturnSeries::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]])?;
    let c = CostMatrix::uniform(2, 0.5);

    println!("criterion 0 returns: {:?}", h.rows()[0]);
    println!("criterion 1 returns: {:?}", h.rows()[1]);
    println!("switch fee: 0.5 (both directions)\n");

    // All 2^2 pure strategies over the periodic two-step horizon. The
    // closing step wraps around, so (0,1) pays the fee twice.
    for choices in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let s = PureStrategy::new(choices.to_vec(), 2)?;
        let direct = profit(&s, &h, &c)?;
        let via_spins = spin_profit(&s, &h, &c)?;
        println!(
            "strategy {:?}: profit {:5.2}, spin form {:5.2}, switches {}",
            choices,
            direct,
            via_spins,
            s.switch_count()
        );
        assert!((direct - via_spins).abs() < 1e-12);
    }

    // The spin field is the +-1/2 encoding of the same occupation table.
    let s = PureStrategy::new(vec![0, 1, 1, 0], 2)?;
    let sigma = spins(&s, 2)?;
    println!("\nspins for strategy [0, 1, 1, 0]:");
    for mu in 0..2 {
        let row: Vec<f64> = (0..4).map(|t| sigma.get(mu, t)).collect();
        println!("  criterion {mu}: {row:?}");
    }
    println!("ring switches: {}", s.switch_count());
    Ok(())
}
