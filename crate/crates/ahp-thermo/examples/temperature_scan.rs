//! Sweeps the ensemble across temperatures and tabulates the equation of
//! state, including the dE/dS = T check along the curve.
//!
//! Run with `cargo run --example temperature_scan`.

use ahp_thermo::ensemble::temperature_scan;
use ahp_thermo::market::{CostMatrix, ReturnSeries};

fn main() -> ahp_thermo::Result<()> {
    let h = ReturnSeries::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]])?;
    let c = CostMatrix::uniform(2, 0.5);

    // Inclusive grid through beta = 0, where the ensemble is flattest.
    let points = 11;
    let (from, to) = (-2.0, 2.0);
    let grid: Vec<f64> = (0..points)
        .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
        .collect();
    let rows = temperature_scan(&grid, &h, &c)?;

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>12} {:>12}",
        "beta", "ln Z", "E", "Var", "S", "T", "dE/dS"
    );
    for (i, obs) in rows.iter().enumerate() {
        // Centered differences need both neighbors and a moving entropy.
        let de_ds = if i > 0 && i + 1 < rows.len() {
            let ds = rows[i + 1].entropy - rows[i - 1].entropy;
            if ds == 0.0 {
                None
            } else {
                Some((rows[i + 1].expected_profit - rows[i - 1].expected_profit) / ds)
            }
        } else {
            None
        };
        let t = if obs.temperature.is_finite() {
            format!("{:12.4}", obs.temperature)
        } else {
            format!("{:>12}", "inf")
        };
        let slope = de_ds.map_or_else(|| format!("{:>12}", "-"), |v| format!("{v:12.4}"));
        println!(
            "{:6.1} {:10.4} {:10.4} {:10.4} {:10.4} {} {}",
            obs.beta, obs.log_z, obs.expected_profit, obs.variance, obs.entropy, t, slope
        );
    }

    // Away from beta = 0 the slope tracks the temperature: heat flowing
    // into the strategy ensemble raises expected profit at rate T.
    Ok(())
}
