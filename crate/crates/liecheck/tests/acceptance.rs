//! Acceptance gate: each test prints one pass/fail line and pins the
//! runtime budget it must respect.  Budgets are generous on purpose —
//! they are regression tripwires, not benchmarks.

use liecheck::algebra::{build_algebra, Algebra};
use liecheck::forms::{build_form, Functional};
use liecheck::fp::{inv_m, mul_m, red_i64, Prime};
use liecheck::rep::{baby_verma, freeness_test, nullcone_enumerate, theorem11_check};
use liecheck::report::{Report, Status};
use liecheck::roots::RootKind;
use liecheck::scenario::{default_params, run_scenario, Params};
use std::process::Command;
use std::time::{Duration, Instant};

/// Prints the criterion verdict even when an assertion unwinds.
struct Gate {
    name: &'static str,
    start: Instant,
    budget: Option<Duration>,
    armed: bool,
}

impl Gate {
    fn open(name: &'static str, budget_secs: Option<u64>) -> Gate {
        Gate {
            name,
            start: Instant::now(),
            budget: budget_secs.map(Duration::from_secs),
            armed: true,
        }
    }

    fn close(mut self, detail: String) {
        let elapsed = self.start.elapsed();
        if let Some(b) = self.budget {
            assert!(
                elapsed <= b,
                "{} exceeded its budget: {elapsed:?} > {b:?}",
                self.name
            );
        }
        self.armed = false;
        println!(
            "acceptance {}: pass ({detail}; {:.2}s)",
            self.name,
            elapsed.as_secs_f64()
        );
    }
}

impl Drop for Gate {
    fn drop(&mut self) {
        if self.armed {
            println!(
                "acceptance {}: fail (after {:.2}s)",
                self.name,
                self.start.elapsed().as_secs_f64()
            );
        }
    }
}

fn alg(kind: RootKind, rank: usize, p: u64) -> Algebra {
    build_algebra(kind, rank, Prime::new(p).unwrap()).unwrap()
}

fn scenario(name: &str, f: impl FnOnce(&mut Params)) -> Report {
    let mut params = default_params(name).unwrap();
    f(&mut params);
    run_scenario(name, &params).unwrap()
}

#[test]
fn criterion_01_algebra_axioms() {
    let gate = Gate::open("criterion 01 (algebra axioms)", Some(180));
    let systems = [
        (RootKind::A, 2),
        (RootKind::A, 3),
        (RootKind::B, 3),
        (RootKind::C, 2),
        (RootKind::C, 3),
        (RootKind::C, 4),
        (RootKind::D, 4),
        (RootKind::G, 2),
        (RootKind::F, 4),
    ];
    let mut runs = 0usize;
    for (kind, rank) in systems {
        for p in [2u64, 3, 5, 7] {
            let r = scenario("axioms", |q| {
                q.kind = kind;
                q.rank = rank;
                q.p = p;
            });
            assert_eq!(
                r.status,
                Status::Pass,
                "axioms failed for {}{rank} at p = {p}: {:?}",
                kind.as_char(),
                r.witnesses
            );
            runs += 1;
        }
    }
    gate.close(format!("{runs} (type, rank, p) configurations"));
}

#[test]
fn criterion_02_cone_spans() {
    let gate = Gate::open("criterion 02 (cone spans the algebra)", Some(120));
    let mut runs = 0usize;
    for (kind, rank) in [
        (RootKind::C, 2),
        (RootKind::C, 3),
        (RootKind::A, 2),
        (RootKind::G, 2),
    ] {
        for p in [2u64, 3, 5] {
            let r = scenario("span", |q| {
                q.kind = kind;
                q.rank = rank;
                q.p = p;
            });
            assert_eq!(r.status, Status::Pass);
            assert_eq!(
                r.counts["spanning_rank"], r.counts["dim"],
                "cone fails to span {}{rank} at p = {p}",
                kind.as_char()
            );
            runs += 1;
        }
    }
    gate.close(format!("{runs} spanning ranks equal the dimension"));
}

#[test]
fn criterion_03_biadditive_vanishing_on_cone() {
    let gate = Gate::open("criterion 03 (b_f vanishes on cone pairs)", Some(300));
    let mut checked = 0u64;
    for (rank, p) in [(2usize, 3u64), (2, 5), (2, 7), (3, 3)] {
        let r = scenario("kraft-wallach", |q| {
            q.rank = rank;
            q.p = p;
        });
        assert_eq!(r.status, Status::Pass, "C{rank} at p = {p}");
        assert_eq!(r.counts["nonzero_values"], 0);
        // Scalar covariance of b reduces the exhaustive claim to the
        // canonical representatives actually enumerated.
        checked += r.counts["representatives"] * r.counts["pairs_per_functional"];
    }
    gate.close(format!("{checked} (functional, pair) evaluations all zero"));
}

#[test]
fn criterion_04_nonzero_b_for_outside_functionals() {
    let gate = Gate::open("criterion 04 (witnesses off the cone)", Some(180));
    let mut detail = Vec::new();
    for (kind, rank) in [(RootKind::C, 2), (RootKind::A, 2), (RootKind::G, 2)] {
        let r = scenario("lemma32", |q| {
            q.kind = kind;
            q.rank = rank;
            q.p = 5;
            q.samples = 200;
            q.seed = 2024;
        });
        assert_ne!(
            r.status,
            Status::Fail,
            "no witness after escalation for {}{rank}",
            kind.as_char()
        );
        detail.push(format!(
            "{}{rank}:{}",
            kind.as_char(),
            match r.status {
                Status::Escalate => "escalated",
                _ => "direct",
            }
        ));
    }
    gate.close(format!("200 functionals each [{}]", detail.join(", ")));
}

#[test]
fn criterion_05_three_term_display() {
    let gate = Gate::open("criterion 05 (three-term unipotent display)", None);
    let p = 5u64;
    let inv2 = inv_m(2, p).unwrap();
    let mut checked = 0usize;
    for rank in [2usize, 3] {
        let a = alg(RootKind::C, rank, p);
        let rs = a.rs();
        let theta = rs.highest_root();
        let gamma = rs.c_gamma().unwrap();
        let beta = rs.c_beta().unwrap();
        let minus_beta = rs.neg(beta);
        let lowest_short = rs.c_minus_two_eps2().unwrap();
        let n1 = red_i64(a.sc().n(gamma, theta), p);
        let n2 = red_i64(a.sc().n(gamma, minus_beta), p);
        assert_ne!(n1, 0);
        assert_ne!(n2, 0);
        for t in 0..p {
            let got = a.adexp(gamma, t, &a.e(theta));
            let quad = mul_m(
                inv2,
                mul_m(n1, mul_m(n2, mul_m(t, t, p), p), p),
                p,
            );
            let want = a
                .e(theta)
                .add(&a.e(minus_beta).scale(mul_m(t, n1, p)))
                .add(&a.e(lowest_short).scale(quad));
            assert_eq!(got, want, "C{rank}, t = {t}");
            checked += 1;
        }
    }
    gate.close(format!(
        "{checked} evaluations match the exact quadratic coefficients"
    ));
}

#[test]
fn criterion_06_grading_suite() {
    let gate = Gate::open("criterion 06 (grading and support clearing)", Some(120));
    // Five-part grading shape, including ranks where only the edge
    // dimensions are pinned.
    for rank in [2usize, 3, 4] {
        let r = scenario("grading", |q| q.rank = rank);
        assert_eq!(r.status, Status::Pass, "grading C{rank}");
        assert_eq!(r.counts["dim_-1"], 2 * rank as u64 - 2);
        if rank == 2 {
            assert_eq!(r.counts["dim_0"], 4);
            assert_eq!(r.counts["dim_2"], 1);
        }
    }
    // Centre of the nilradical: one line, spanned by the lowest root
    // vector, away from characteristic two.
    for rank in [2usize, 3] {
        for p in [3u64, 5] {
            let r = scenario("centre-u", |q| {
                q.rank = rank;
                q.p = p;
            });
            assert_eq!(r.status, Status::Pass);
            assert_eq!(r.counts["centre_dim"], 1);
        }
    }
    // Support clearing and the scaled limit on seeded inputs.
    let mut cleared = 0u64;
    for rank in [2usize, 3] {
        for p in [3u64, 5] {
            let r = scenario("clear-support", |q| {
                q.rank = rank;
                q.p = p;
                q.samples = 50;
                q.seed = 2024;
            });
            assert_eq!(r.status, Status::Pass, "clear-support C{rank} p{p}");
            assert_eq!(r.counts["samples"], 50);
            cleared += 50;
            let r = scenario("limit", |q| {
                q.rank = rank;
                q.p = p;
                q.samples = 50;
                q.seed = 2024;
            });
            assert_eq!(r.status, Status::Pass, "limit C{rank} p{p}");
            assert_eq!(r.counts["limits_at_degree_3"], 50);
        }
    }
    gate.close(format!(
        "gradings, nilradical centres, {cleared} clearings with limits"
    ));
}

#[test]
fn criterion_07_heisenberg_freeness() {
    let gate = Gate::open("criterion 07 (freeness on the rank-2 module)", None);
    let a = alg(RootKind::C, 2, 3);
    let rs = a.rs();
    let chi = build_form(&a).functional(&a.e(rs.highest_root()));
    let m = baby_verma(&a, &chi, &[0, 0]).unwrap();
    assert_eq!(m.dim(), 81);
    let f_top = m.matrix_of(&a.e(rs.neg(rs.highest_root())));
    let id = liecheck::fp::FpMatrix::identity(a.p(), m.dim());
    assert_eq!(f_top.pow(3).unwrap(), id, "lowest root vector must be cyclic");
    let e_gamma = a.e(rs.c_gamma().unwrap());
    assert!(freeness_test(&a, &m, &e_gamma).unwrap());
    let sq_rank = m.matrix_of(&e_gamma).pow(2).unwrap().rank();
    assert_eq!(sq_rank, 27);
    gate.close(
        "dim 81 module: cube of the lowest root action is the identity, \
         e_γ acts freely with square rank 27"
            .to_string(),
    );
}

#[test]
fn criterion_08_support_variety_inclusion() {
    let gate = Gate::open("criterion 08 (support points in the nullcone)", Some(600));
    // Rank-one modules, both characters, exhaustively.
    let mut small = 0usize;
    for p in [3u64, 5] {
        let a = alg(RootKind::A, 1, p);
        let nc = nullcone_enumerate(&a, 1_000_000).unwrap();
        assert!(nc.exhaustive);
        for charged in [false, true] {
            let mut cov = vec![0u64; a.dim()];
            if charged {
                cov[a.e_index(1)] = 1;
            }
            let chi = Functional::from_covector(a.p(), cov);
            let m = baby_verma(&a, &chi, &[0]).unwrap();
            let res = theorem11_check(&a, &m, &nc).unwrap();
            assert!(res.pass, "A1 p {p} charged {charged}: {:?}", res.counterexamples);
            small += res.candidates;
        }
    }
    // The rank-two module over all 59049 field points.
    let a = alg(RootKind::C, 2, 3);
    let nc = nullcone_enumerate(&a, 100_000).unwrap();
    assert!(nc.exhaustive);
    assert_eq!(3u64.pow(10), 59049);
    let chi = build_form(&a).functional(&a.e(a.rs().highest_root()));
    let m = baby_verma(&a, &chi, &[0, 0]).unwrap();
    let res = theorem11_check(&a, &m, &nc).unwrap();
    assert!(res.pass, "{:?}", res.counterexamples);
    assert!(res.support_points > 0, "the scan must actually see support points");
    gate.close(format!(
        "rank-one scans ({small} candidates) and a 59049-point rank-two scan \
         ({} nullcone candidates, {} support points)",
        res.candidates, res.support_points
    ));
}

#[test]
fn criterion_09_char_two_suite() {
    let gate = Gate::open("criterion 09 (characteristic-two identities)", Some(180));
    let mut pairs = 0u64;
    for rank in [2usize, 3] {
        let r = scenario("p2-suite", |q| q.rank = rank);
        assert_eq!(r.status, Status::Pass, "p2-suite C{rank}");
        assert_eq!(r.counts["extraspecial_checks"], 2);
        assert!(
            r.notes.iter().any(|n| n.contains("exhaustively")),
            "the nullcone side must be exhaustive at p = 2"
        );
        pairs += r.counts["pair_checks"];
    }
    gate.close(format!(
        "squares vanish, {pairs} commutator pairs obey the power identity, \
         extraspecial brackets survive"
    ));
}

#[test]
fn criterion_10_deterministic_reports() {
    let gate = Gate::open("criterion 10 (byte-identical reruns)", Some(300));
    let bin = env!("CARGO_BIN_EXE_liecheck");
    let run = |extra: &[&str]| -> Vec<String> {
        let mut cmd = Command::new(bin);
        cmd.args(["run-all", "--seed", "12345"]);
        cmd.args(extra);
        let out = cmd.output().expect("binary runs");
        assert!(out.status.success(), "suite run failed: {out:?}");
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .map(liecheck::report::strip_timing)
            .collect()
    };
    let first = run(&[]);
    let second = run(&[]);
    assert_eq!(first, second, "reruns with one thread differ");
    let threaded = run(&["--jobs", "2"]);
    assert_eq!(first, threaded, "thread count changed the reports");
    assert_eq!(first.len(), 16);
    gate.close("three full-suite runs agree line for line".to_string());
}
