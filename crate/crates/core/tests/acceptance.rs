//! Acceptance run: one line per criterion, PASS or FAIL, with the tolerance
//! and time budget it was held to. Exits non-zero if any criterion fails.
//!
//! Tolerances are written out here rather than taken from
//! `Tolerances::default()`, so that changing a library default cannot
//! silently change what this target accepts.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gt_hypergeo::hypergeo::QuadratureSpec;
use gt_hypergeo::verify::{run_one, Suite, Tolerances, VerifyConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: Suite,
    budget: Option<Duration>,
    held_to: &'static str,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: [Criterion; 14] = [
    Criterion {
        id: 1,
        title: "interlacing unitary, 1000 pairs per N in 2..8",
        suite: Suite::Unitary,
        budget: secs(10),
        held_to: "‖uuᵀ−I‖∞ < 1e-12, submatrix < 1e-11",
    },
    Criterion {
        id: 2,
        title: "Macdonald eigenrelations, N ≤ 3, |λ| ≤ 5, 5 random (q,t)",
        suite: Suite::Macdonald,
        budget: secs(60),
        held_to: "exact",
    },
    Criterion {
        id: 3,
        title: "symmetry identity, parts ≤ 3, N ≤ 3, k ≤ 2, q ∈ {2, 3/2}",
        suite: Suite::Symmetry,
        budget: secs(60),
        held_to: "exact",
    },
    Criterion {
        id: 4,
        title: "Z_k identities, rational and trigonometric, N ≤ 3, k ≤ 3, l ≤ 4",
        suite: Suite::Zk,
        budget: secs(120),
        held_to: "exact",
    },
    Criterion {
        id: 5,
        title: "k = 1 arbitrary-coupling identity, 4 couplings, N ≤ 4, l ≤ 4",
        suite: Suite::Kappa,
        budget: None,
        held_to: "exact",
    },
    Criterion {
        id: 6,
        title: "Res_k rank change, p1 p2 p3 e2, (N−1)k ≤ 6, 5 polynomials",
        suite: Suite::Resk,
        budget: None,
        held_to: "exact",
    },
    Criterion {
        id: 7,
        title: "Harish-Chandra at k = 1: quadrature N ≤ 4, Monte Carlo 1e5",
        suite: Suite::Hc,
        budget: None,
        held_to: "relative < 1e-8; |z| ≤ 3",
    },
    Criterion {
        id: 8,
        title: "Bessel normalization B_k(λ,0) = 1, N ≤ 4, k ≤ 3, 3 λ",
        suite: Suite::Bessel,
        budget: None,
        held_to: "< 1e-8",
    },
    Criterion {
        id: 9,
        title: "eigenfunction residuals, both flavors, k ∈ {1,2}",
        suite: Suite::Eigen,
        budget: None,
        held_to: "relative < 1e-5 (N=2), 1e-4 (N=3)",
    },
    Criterion {
        id: 10,
        title: "matrix element, 100 interlacing points, N ≤ 4, k ≤ 3",
        suite: Suite::MatrixElement,
        budget: None,
        held_to: "|a−b|/(1+|a|) < 1e-10",
    },
    Criterion {
        id: 11,
        title: "ψ_k and Ψ_k reductions, Monte Carlo 1e5, N ≤ 3, k ≤ 3",
        suite: Suite::Psi,
        budget: secs(300),
        held_to: "|z| ≤ 3",
    },
    Criterion {
        id: 12,
        title: "quasi-classical limit, N = 2, k ∈ {1,2}, m = 25..200",
        suite: Suite::Limits,
        budget: secs(120),
        held_to: "decreasing, final < 2%; operator residual decreasing",
    },
    Criterion {
        id: 13,
        title: "adjunction with bump functions, N = 2, k ∈ {1,2}, p1 p2",
        suite: Suite::Adjoint,
        budget: None,
        held_to: "< 1e-5 (rational), 1e-4 (trigonometric)",
    },
    Criterion {
        id: 14,
        title: "leading-term asymptotics, N = 2, c = 20 → 40",
        suite: Suite::Leading,
        budget: None,
        held_to: "decreasing, < 1e-3 at k = 1",
    },
];

fn pinned_config() -> VerifyConfig {
    VerifyConfig {
        n: None,
        n_max: None,
        k: None,
        l_max: 4,
        trials: None,
        samples: 100_000,
        seed: 2024,
        spec: QuadratureSpec::default(),
        tol: Tolerances {
            unitarity: 1e-12,
            submatrix: 1e-11,
            harish_chandra: 1e-8,
            bessel_at_zero: 1e-8,
            eigen_two: 1e-5,
            eigen_three: 1e-4,
            matrix_element: 1e-10,
            sigmas: 3.0,
            limit_final: 0.02,
            adjoint_rational: 1e-5,
            adjoint_trig: 1e-4,
            leading: 1e-3,
        },
    }
}

fn main() -> ExitCode {
    let cfg = pinned_config();
    let mut failed = Vec::new();
    println!("acceptance: {} criteria", CRITERIA.len());
    for c in &CRITERIA {
        let start = Instant::now();
        let report = run_one(c.suite, &cfg);
        let elapsed = start.elapsed();
        let in_budget = c.budget.map_or(true, |b| elapsed <= b);
        let budget = c.budget.map_or(String::new(), |b| format!(" ≤ {} s", b.as_secs()));
        match report {
            Ok(report) => {
                let pass = report.pass() && in_budget;
                println!(
                    "[{}] {:>2}. {} | {} | {}/{} checks | {:.1} s{budget}",
                    if pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.title,
                    c.held_to,
                    report.passed(),
                    report.checks.len(),
                    elapsed.as_secs_f64()
                );
                for check in report.checks.iter().filter(|k| !k.pass) {
                    println!("         {} {}: {}", report.suite, check.label, check.detail);
                }
                if !in_budget {
                    println!("         over the time budget");
                }
                if !pass {
                    failed.push(c.id);
                }
            }
            Err(e) => {
                println!("[FAIL] {:>2}. {} | could not run: {e}", c.id, c.title);
                failed.push(c.id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
