//! Acceptance suite: one verdict line per criterion.
//!
//! Each test prints `PASS:`/`FAIL:` for its criterion before asserting, so a
//! `--nocapture` run reads as a checklist.

use ahp_thermo::ensemble::{brute_force_partition, observables, partition_function};
use ahp_thermo::fisher::{cost_of_information, strategy_fisher};
use ahp_thermo::market::{decompose, CostMatrix, JudgmentMatrix, ReturnSeries};
use ahp_thermo::strategy::{profit, spin_profit, PureStrategy};
use ahp_thermo::tropical::{clairvoyant, max_profit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;

fn verdict(criterion: u32, description: &str, pass: bool) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("{tag}: criterion {criterion} - {description}");
    assert!(pass, "criterion {criterion} failed: {description}");
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn random_instance(rng: &mut ChaCha8Rng) -> (ReturnSeries, CostMatrix) {
    let n = rng.random_range(1..=4usize);
    let k = rng.random_range(1..=6usize);
    let h_rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..k).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    let mut c_rows = vec![vec![0.0; n]; n];
    for (mu, row) in c_rows.iter_mut().enumerate() {
        for (nu, cell) in row.iter_mut().enumerate() {
            if mu != nu {
                *cell = rng.random_range(-0.5..0.5);
            }
        }
    }
    (
        ReturnSeries::from_rows(&h_rows).unwrap(),
        CostMatrix::from_rows(&c_rows).unwrap(),
    )
}

fn all_strategies(n: usize, k: usize) -> Vec<PureStrategy> {
    (0..n.pow(k as u32))
        .map(|index| {
            let mut choices = vec![0usize; k];
            let mut rest = index;
            for choice in choices.iter_mut() {
                *choice = rest % n;
                rest /= n;
            }
            PureStrategy::new(choices, n).unwrap()
        })
        .collect()
}

fn reference_instance() -> (ReturnSeries, CostMatrix) {
    let h = ReturnSeries::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
    let c = CostMatrix::uniform(2, 0.5);
    (h, c)
}

const BETA_GRID: [f64; 7] = [-5.0, -1.0, -0.1, 0.0, 0.1, 1.0, 5.0];

#[test]
fn criterion_01_partition_function_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (h, c) = random_instance(&mut rng);
        for &beta in &BETA_GRID {
            let fast = partition_function(beta, &h, &c).unwrap();
            let slow = brute_force_partition(beta, &h, &c).unwrap();
            worst = worst.max(relative_gap(fast, slow));
        }
    }
    verdict(
        1,
        &format!("transfer-matrix ln Z matches brute force within 1e-10 on 200 random instances (worst gap {worst:.2e})"),
        worst <= 1e-10,
    );
}

#[test]
fn criterion_02_tropical_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut pass = true;
    for _ in 0..200 {
        let (h, c) = random_instance(&mut rng);
        let fast = max_profit(&h, &c).unwrap();
        let slow = all_strategies(h.n(), h.steps())
            .iter()
            .map(|s| profit(s, &h, &c).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        let best = clairvoyant(&h, &c).unwrap();
        let realized = profit(&best.strategy, &h, &c).unwrap();
        pass &= (fast - slow).abs() <= 1e-12;
        pass &= best.max_profit == fast;
        pass &= (realized - best.max_profit).abs() <= 1e-12;
    }
    verdict(
        2,
        "max_profit equals the brute-force maximum within 1e-12 and the reconstructed strategy attains it",
        pass,
    );
}

#[test]
fn criterion_03_reference_instance() {
    let (h, c) = reference_instance();
    let mut pass = true;
    let expected = [
        (vec![0, 0], 3.0),
        (vec![0, 1], 4.0),
        (vec![1, 0], 4.0),
        (vec![1, 1], 7.0),
    ];
    for (choices, value) in expected {
        let s = PureStrategy::new(choices, 2).unwrap();
        pass &= profit(&s, &h, &c).unwrap() == value;
    }
    let best = clairvoyant(&h, &c).unwrap();
    pass &= best.max_profit == 7.0 && best.strategy.choices() == [1, 1];
    let z = partition_function(-1.0, &h, &c).unwrap().exp();
    let z_expected = 3.0f64.exp() + 2.0 * 4.0f64.exp() + 7.0f64.exp();
    pass &= relative_gap(z, z_expected) <= 1e-12;
    let w = ahp_thermo::ensemble::gibbs_weight(
        &PureStrategy::new(vec![1, 1], 2).unwrap(),
        -1.0,
        &h,
        &c,
    )
    .unwrap();
    pass &= (w - 0.8945).abs() <= 1e-3;
    verdict(
        3,
        "reference instance reproduces profits {3,4,4,7}, optimum 7 at (2,2), Z(-1) and the 0.8945 weight",
        pass,
    );
}

#[test]
fn criterion_04_thermodynamic_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (h, c) = random_instance(&mut rng);
        for &beta in &BETA_GRID {
            if beta == 0.0 {
                continue;
            }
            let obs = observables(beta, &h, &c).unwrap();
            worst = worst.max(obs.identity_residual().unwrap());
        }
    }
    verdict(
        4,
        &format!("T ln Z + E(H) - T S stays within 1e-9 relative for all tested beta (worst {worst:.2e})"),
        worst <= 1e-9,
    );
}

#[test]
fn criterion_05_temperature_law() {
    let (h, c) = reference_instance();
    let spacing = 1e-3;
    let lo = observables(-1.0 - spacing / 2.0, &h, &c).unwrap();
    let hi = observables(-1.0 + spacing / 2.0, &h, &c).unwrap();
    let slope = (hi.expected_profit - lo.expected_profit) / (hi.entropy - lo.entropy);
    let err = (slope - (-1.0)).abs();
    verdict(
        5,
        &format!("finite-difference dE/dS at spacing 1e-3 around beta=-1 matches 1/beta within 1e-3 (err {err:.2e})"),
        err <= 1e-3,
    );
}

#[test]
fn criterion_06_zero_temperature_limit() {
    let (h, c) = reference_instance();
    let log_z = partition_function(-50.0, &h, &c).unwrap();
    let probe = log_z / 50.0; // −T ln Z at β = −50
    verdict(
        6,
        &format!(
            "-T ln Z at beta=-50 lands within 0.01 of the clairvoyant profit 7 (got {probe:.6})"
        ),
        (probe - 7.0).abs() <= 0.01,
    );
}

#[test]
fn criterion_07_spin_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (h, c) = random_instance(&mut rng);
        let choices = (0..h.steps()).map(|_| rng.random_range(0..h.n())).collect();
        let s = PureStrategy::new(choices, h.n()).unwrap();
        let direct = profit(&s, &h, &c).unwrap();
        let spin = spin_profit(&s, &h, &c).unwrap();
        worst = worst.max((direct - spin).abs());
    }
    verdict(
        7,
        &format!("spin_profit equals profit within 1e-12 on 1000 random pairs (worst {worst:.2e})"),
        worst <= 1e-12,
    );
}

#[test]
fn criterion_08_decomposition_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let mut pass = true;
    for _ in 0..100 {
        let n = rng.random_range(1..=5usize);
        let mut rows = vec![vec![1.0; n]; n];
        for (nu, row) in rows.iter_mut().enumerate() {
            for (mu, cell) in row.iter_mut().enumerate() {
                if nu != mu {
                    *cell = rng.random_range(-2.0..2.0f64).exp();
                }
            }
        }
        let u = JudgmentMatrix::from_rows(&rows).unwrap();
        let d = decompose(&u);
        let back = d.reconstruct();
        for nu in 0..n {
            for mu in 0..n {
                pass &= relative_gap(back.get(nu, mu), u.get(nu, mu)) <= 1e-12;
            }
        }
    }
    // reciprocal pairs built from small integers whose product is exactly 1
    for s in 1..=9u32 {
        let v = s as f64;
        let u = JudgmentMatrix::from_rows(&[vec![1.0, v], vec![1.0 / v, 1.0]]).unwrap();
        let d = decompose(&u);
        pass &= d.commission(0, 1) == 0.0 && d.commission(1, 0) == 0.0;
    }
    verdict(
        8,
        "exp(skew + commission) reproduces 100 random matrices within 1e-12 and reciprocal matrices give exactly zero commission",
        pass,
    );
}

#[test]
fn criterion_09_fisher_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let mut pass = true;
    for _ in 0..200 {
        let n = rng.random_range(1..=4usize);
        let k = rng.random_range(1..=7usize);
        let choices: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        let s = PureStrategy::new(choices, n).unwrap();
        let report = strategy_fisher(&s, n).unwrap();
        let total: f64 = report.per_criterion.iter().sum();
        pass &= report.total == total;
        pass &= report.total % 2.0 == 0.0;
        let flat = rng.random_range(0.0..1.0);
        let c = CostMatrix::uniform(n, flat);
        let zero_h_rows = vec![vec![0.0; k]; n];
        let h = ReturnSeries::from_rows(&zero_h_rows).unwrap();
        let cost_term = -profit(&s, &h, &c).unwrap();
        let priced = cost_of_information(&report, flat).unwrap();
        pass &= (priced - cost_term).abs() <= 1e-12;
    }
    let constant = PureStrategy::new(vec![1, 1, 1], 3).unwrap();
    pass &= strategy_fisher(&constant, 3).unwrap().total == 0.0;
    let cycle = PureStrategy::new(vec![0, 1, 2], 3).unwrap();
    pass &= strategy_fisher(&cycle, 3).unwrap().total == 6.0;
    verdict(
        9,
        "Fisher totals are additive and even, constant strategies give 0, the cycle gives 6, and uniform costs are repriced exactly",
        pass,
    );
}

#[test]
fn criterion_10_entropy_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut pass = true;
    for _ in 0..200 {
        let (h, c) = random_instance(&mut rng);
        let k = h.steps() as f64;
        let n = h.n() as f64;
        for &beta in &BETA_GRID {
            let obs = observables(beta, &h, &c).unwrap();
            pass &= obs.entropy >= 0.0;
            pass &= obs.entropy <= k * n.ln() + 1e-9;
            pass &= obs.entropy <= n * k * 2.0f64.ln() + 1e-9;
            if beta == 0.0 {
                pass &= (obs.entropy - k * n.ln()).abs() <= 1e-10;
            }
        }
    }
    verdict(
        10,
        "entropy stays in [0, k ln N] (and under Nk ln 2) with S(0) = k ln N within 1e-10",
        pass,
    );
}

#[test]
fn criterion_11_cli_round_trip() {
    let bin = env!("CARGO_BIN_EXE_ahp-thermo");
    let dir = tempfile::tempdir().unwrap();
    let mut pass = true;

    for (n, k, seed) in [(1usize, 1usize, 3u64), (2, 2, 7), (3, 4, 11), (4, 3, 13)] {
        let args = [
            "generate".to_string(),
            "--n".into(),
            n.to_string(),
            "--k".into(),
            k.to_string(),
            "--seed".into(),
            seed.to_string(),
        ];
        let first = Command::new(bin).args(&args).output().unwrap();
        let second = Command::new(bin).args(&args).output().unwrap();
        pass &= first.status.code() == Some(0);
        pass &= first.stdout == second.stdout;

        let instance = dir.path().join(format!("inst_{n}_{k}_{seed}.json"));
        std::fs::write(&instance, &first.stdout).unwrap();
        let input = instance.to_str().unwrap();

        let constant = vec!["1"; k].join(",");
        let alternating: Vec<String> = (0..k).map(|t| ((t % n) + 1).to_string()).collect();
        let runs: Vec<Vec<String>> = vec![
            vec!["decompose".into(), "--input".into(), input.into()],
            vec![
                "profit".into(),
                "--input".into(),
                input.into(),
                "--strategy".into(),
                constant.clone(),
            ],
            vec![
                "profit".into(),
                "--input".into(),
                input.into(),
                "--strategy".into(),
                alternating.join(","),
            ],
            vec![
                "ensemble".into(),
                "--input".into(),
                input.into(),
                "--beta".into(),
                "-1".into(),
                "--brute-force".into(),
            ],
            vec!["optimize".into(), "--input".into(), input.into()],
            vec![
                "fisher".into(),
                "--input".into(),
                input.into(),
                "--strategy".into(),
                constant,
            ],
            vec![
                "scan".into(),
                "--input".into(),
                input.into(),
                "--beta-from".into(),
                "-1".into(),
                "--beta-to".into(),
                "1".into(),
                "--points".into(),
                "5".into(),
            ],
            vec![
                "scan".into(),
                "--input".into(),
                input.into(),
                "--beta-from".into(),
                "-2".into(),
                "--beta-to".into(),
                "-0.5".into(),
                "--points".into(),
                "4".into(),
                "--format".into(),
                "csv".into(),
            ],
        ];
        for run in runs {
            let out = Command::new(bin).args(&run).output().unwrap();
            if out.status.code() != Some(0) {
                eprintln!(
                    "subcommand {:?} exited {:?}: {}",
                    run,
                    out.status.code(),
                    String::from_utf8_lossy(&out.stderr)
                );
                pass = false;
            }
        }
    }
    verdict(
        11,
        "generate is byte-identical per seed and its instances pass through every subcommand with exit 0",
        pass,
    );
}
