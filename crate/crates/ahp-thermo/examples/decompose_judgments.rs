//! Splits a pairwise judgment matrix into an antisymmetric skew and a
//! symmetric commission, then prices the commissions as switching costs.
//!
//! Run with `cargo run --example decompose_judgments`.

use ahp_thermo::market::{
    commission_from_bid_ask, cost_matrix, decompose, priority_vector, transitivity_deviation,
    JudgmentMatrix,
};

fn print_matrix(label: &str, rows: &[Vec<f64>]) {
    println!("{label}:");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:10.6}")).collect();
        println!("  [{}]", cells.join(", "));
    }
}

fn main() -> ahp_thermo::Result<()> {
    // An analyst compares three criteria. The matrix is not reciprocal:
    // u[0][1] * u[1][0] = 4 * 0.28 != 1, so some judgment is "lost in
    // the spread" exactly like crossing a bid/ask pair.
    let u = JudgmentMatrix::from_rows(&[
        vec![1.0, 4.0, 0.5],
        vec![0.28, 1.0, 3.0],
        vec![2.0, 0.31, 1.0],
    ])?;

    let d = decompose(&u);
    print_matrix("judgments u", &u.rows());
    print_matrix("skew a (antisymmetric)", &d.skew_rows());
    print_matrix(
        "commission eps (symmetric, negative on true spreads)",
        &d.commission_rows(),
    );

    // exp(a + eps) rebuilds u entry for entry
    let rebuilt = d.reconstruct();
    let worst = u
        .rows()
        .iter()
        .flatten()
        .zip(rebuilt.rows().iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    println!("reconstruction error: {worst:.2e}");

    // Negated commissions double as the switching-cost matrix of the
    // profit model: a wide spread makes hopping between those two
    // criteria expensive.
    let costs = cost_matrix(&d);
    print_matrix("switching costs c = -eps", &costs.rows());

    let weights = priority_vector(&u);
    println!("priority vector (geometric means): {weights:?}");

    // A consistent matrix satisfies u[v][r] * u[r][m] = u[v][m] for every
    // triple; the log residuals locate the inconsistent ones.
    println!("triple deviations ln(u[v][r] * u[r][m] / u[v][m]):");
    for nu in 0..3 {
        for rho in 0..3 {
            for mu in 0..3 {
                let dev = transitivity_deviation(&u, nu, rho, mu)?;
                if dev.abs() > 1e-9 {
                    println!("  ({nu}, {rho}, {mu}) -> {dev:+.6}");
                }
            }
        }
    }

    // Single pair shortcut: a trader quoted bid 1.05 / ask 1.07.
    let eps = commission_from_bid_ask(1.05, 1.07)?;
    println!("bid 1.05 / ask 1.07 commission: {eps:.12}");
    Ok(())
}
