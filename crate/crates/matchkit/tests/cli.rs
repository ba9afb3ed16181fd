//! End-to-end tests of the binary: every exit-code path, and the
//! reduce → solve → lift round trip against direct solving.

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matchkit"))
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

const FIGURE_LEFT_EWPM_K2: &str = "p ewpm 4 4 2\ne 1 2 0\ne 2 3 1\ne 3 4 0\ne 4 1 1\n";
const K4_EWPM_K11: &str =
    "p ewpm 4 6 11\ne 1 2 1\ne 3 4 2\ne 1 3 3\ne 2 4 4\ne 1 4 5\ne 2 3 6\n";
const TRIANGLE_ECS_K3: &str = "p ecs 3 3 3\ne 1 2 1\ne 2 3 1\ne 1 3 1\n";

#[test]
fn solve_yes_no_unknown_codes() {
    let dir = TempDir::new().unwrap();
    let yes = write(&dir, "yes.inst", FIGURE_LEFT_EWPM_K2);
    let out = run(&["solve", yes.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("s yes\nw 2\n"), "got: {text}");

    let no = write(&dir, "no.inst", &FIGURE_LEFT_EWPM_K2.replace(" 2\n", " 1\n"));
    let out = run(&["solve", no.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s no\n");

    // K4's weight ladder is 3, 7, 11; budget 2 stops before 11.
    let deep = write(&dir, "deep.inst", K4_EWPM_K11);
    let out = run(&["solve", deep.to_str().unwrap(), "--budget", "2"]);
    assert_eq!(code(&out), 2);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s unknown\n");
    let out = run(&["solve", deep.to_str().unwrap(), "--budget", "3"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn parse_and_usage_errors_exit_64() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.inst", "p nonsense 1 0 0\n");
    assert_eq!(code(&run(&["solve", bad.to_str().unwrap()])), 64);
    assert_eq!(code(&run(&["solve", "/nonexistent/x.inst"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    let sol = dir.path().join("out.sol");
    let good = write(&dir, "good.inst", FIGURE_LEFT_EWPM_K2);
    assert_eq!(
        code(&run(&[
            "reduce",
            good.to_str().unwrap(),
            "--to",
            "soc",
            "-o",
            sol.to_str().unwrap(),
            "--context",
            dir.path().join("c.ctx").to_str().unwrap(),
        ])),
        64,
        "EWPM to SOC is not a supported pairing"
    );
}

#[test]
fn oracle_cross_check_agrees_on_suite() {
    let dir = TempDir::new().unwrap();
    for seed in 0..12u64 {
        for kind in ["ewpm", "bcpm", "spm", "ecs", "soc"] {
            let inst = dir.path().join(format!("{kind}_{seed}.inst"));
            // Cycle kinds get smaller graphs and positive weights so the
            // gadget-side rank ladder stays shallow.
            let (n, p, lo, hi) = if matches!(kind, "ecs" | "soc") {
                ("4", "0.4", "1", "3")
            } else {
                ("6", "0.5", "0", "6")
            };
            let gen = run(&[
                "gen",
                "--random",
                n,
                p,
                lo,
                hi,
                kind,
                &seed.to_string(),
                "-o",
                inst.to_str().unwrap(),
            ]);
            assert_eq!(code(&gen), 0);
            let out = run(&["solve", inst.to_str().unwrap(), "--oracle", "--budget", "16"]);
            assert_ne!(code(&out), 70, "oracle disagreement for {kind} seed {seed}");
            assert!(code(&out) <= 2, "unexpected failure for {kind} seed {seed}");
        }
    }
}

#[test]
fn forcing_the_bipartite_bound_on_general_graphs_trips_the_oracle() {
    // The prism witness needs forced sets of size 2 to reach its second
    // weight; claiming bipartiteness caps the sweep at singletons, so the
    // solver wrongly answers no and the oracle catches it.
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("w.spm");
    assert_eq!(
        code(&run(&[
            "gen",
            "--tightness",
            "2",
            "--side",
            "general",
            "-o",
            inst.to_str().unwrap(),
        ])),
        0
    );
    let honest = run(&["solve", inst.to_str().unwrap(), "--oracle"]);
    assert_eq!(code(&honest), 0);
    let tricked = run(&[
        "solve",
        inst.to_str().unwrap(),
        "--oracle",
        "--bipartite-bound",
        "on",
    ]);
    assert_eq!(code(&tricked), 70);
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "fig.inst", FIGURE_LEFT_EWPM_K2);
    let good = write(&dir, "good.sol", "s yes\nw 2\nm 2 3\nm 1 4\n");
    assert_eq!(
        code(&run(&[
            "verify",
            inst.to_str().unwrap(),
            "--solution",
            good.to_str().unwrap()
        ])),
        0
    );
    let tampered = write(&dir, "bad.sol", "s yes\nw 0\nm 2 3\nm 1 4\n");
    assert_eq!(
        code(&run(&[
            "verify",
            inst.to_str().unwrap(),
            "--solution",
            tampered.to_str().unwrap()
        ])),
        71
    );
    let not_perfect = write(&dir, "short.sol", "s yes\nw 0\nm 1 2\n");
    assert_eq!(
        code(&run(&[
            "verify",
            inst.to_str().unwrap(),
            "--solution",
            not_perfect.to_str().unwrap()
        ])),
        71
    );
    let no = write(&dir, "no.sol", "s no\n");
    assert_eq!(
        code(&run(&[
            "verify",
            inst.to_str().unwrap(),
            "--solution",
            no.to_str().unwrap()
        ])),
        0
    );
}

#[test]
fn lift_verification_gate() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "fig.inst", FIGURE_LEFT_EWPM_K2);
    let reduced = dir.path().join("fig.ecs");
    let ctx = dir.path().join("fig.ctx");
    assert_eq!(
        code(&run(&[
            "reduce",
            inst.to_str().unwrap(),
            "--to",
            "ecs",
            "-o",
            reduced.to_str().unwrap(),
            "--context",
            ctx.to_str().unwrap(),
        ])),
        0
    );
    let sol = dir.path().join("fig.sol");
    assert_eq!(
        code(&run(&["solve", reduced.to_str().unwrap(), "-o", sol.to_str().unwrap()])),
        0
    );
    let lifted = dir.path().join("fig.lifted");
    assert_eq!(
        code(&run(&[
            "lift",
            "--context",
            ctx.to_str().unwrap(),
            "--solution",
            sol.to_str().unwrap(),
            "--instance",
            inst.to_str().unwrap(),
            "-o",
            lifted.to_str().unwrap(),
        ])),
        0
    );
    assert_eq!(
        std::fs::read_to_string(&lifted).unwrap(),
        "s yes\nw 2\nm 2 3\nm 1 4\n"
    );
    // Tamper with the declared weight: the lift must refuse.
    let sol_text = std::fs::read_to_string(&sol).unwrap();
    let tampered = write(&dir, "tampered.sol", &sol_text.replace("w 2", "w 0"));
    assert_eq!(
        code(&run(&[
            "lift",
            "--context",
            ctx.to_str().unwrap(),
            "--solution",
            tampered.to_str().unwrap(),
            "--instance",
            inst.to_str().unwrap(),
            "-o",
            dir.path().join("x.sol").to_str().unwrap(),
        ])),
        71
    );
}

#[test]
fn reduce_writes_resolved_shortcut() {
    let dir = TempDir::new().unwrap();
    // Parity already matches at the minimum: resolved yes.
    let inst = write(&dir, "fig.bcpm", "p bcpm 4 4 4\ne 1 2 0\ne 2 3 1\ne 3 4 0\ne 4 1 1\n");
    let out = dir.path().join("out.soc");
    let ctx = dir.path().join("out.ctx");
    assert_eq!(
        code(&run(&[
            "reduce",
            inst.to_str().unwrap(),
            "--to",
            "soc",
            "-o",
            out.to_str().unwrap(),
            "--context",
            ctx.to_str().unwrap(),
        ])),
        0
    );
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("c resolved yes\n"), "got: {text}");
    assert!(std::fs::read_to_string(&ctx).unwrap().contains("resolved yes"));
}

#[test]
fn oracle_command_codes() {
    let dir = TempDir::new().unwrap();
    let yes = write(&dir, "tri3.ecs", TRIANGLE_ECS_K3);
    assert_eq!(code(&run(&["oracle", yes.to_str().unwrap()])), 0);
    let no = write(&dir, "tri2.ecs", &TRIANGLE_ECS_K3.replace("3 3 3", "3 3 2"));
    let out = run(&["oracle", no.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s no\n");
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.inst");
    let b = dir.path().join("b.inst");
    for path in [&a, &b] {
        assert_eq!(
            code(&run(&[
                "gen", "--random", "6", "0.5", "0", "8", "ewpm", "1", "-o",
                path.to_str().unwrap()
            ])),
            0
        );
    }
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
    assert_eq!(code(&run(&["gen", "-o", a.to_str().unwrap()])), 64);
}

#[test]
fn reduce_solve_lift_matches_direct_solve() {
    let dir = TempDir::new().unwrap();
    let cases: Vec<(String, String)> = (0..10u64)
        .flat_map(|seed| {
            [("ewpm", "ecs"), ("bcpm", "soc"), ("ecs", "ewpm"), ("soc", "bcpm")]
                .into_iter()
                .map(move |(from, to)| (format!("{from} {seed}"), to.to_string()))
        })
        .collect();
    for (case, to) in cases {
        let mut parts = case.split(' ');
        let kind = parts.next().unwrap();
        let seed = parts.next().unwrap();
        let inst = dir.path().join(format!("{kind}_{seed}.inst"));
        // Cycle-kind sources stay tiny: their reduced instances live on
        // widget graphs several times larger.
        let (n, p) = if matches!(kind, "ecs" | "soc") {
            ("4", "0.4")
        } else {
            ("6", "0.5")
        };
        assert_eq!(
            code(&run(&[
                "gen",
                "--random",
                n,
                p,
                "1",
                "3",
                kind,
                seed,
                "-o",
                inst.to_str().unwrap()
            ])),
            0
        );
        let direct = run(&["solve", inst.to_str().unwrap(), "--budget", "16"]);
        let direct_code = code(&direct);
        assert!(direct_code <= 1, "direct solve failed for {kind} seed {seed}");

        let reduced = dir.path().join(format!("{kind}_{seed}.red"));
        let ctx = dir.path().join(format!("{kind}_{seed}.ctx"));
        assert_eq!(
            code(&run(&[
                "reduce",
                inst.to_str().unwrap(),
                "--to",
                &to,
                "-o",
                reduced.to_str().unwrap(),
                "--context",
                ctx.to_str().unwrap(),
            ])),
            0
        );
        let red_text = std::fs::read_to_string(&reduced).unwrap();
        if let Some(rest) = red_text.strip_prefix("c resolved ") {
            let resolved_yes = rest.starts_with("yes");
            assert_eq!(
                direct_code == 0,
                resolved_yes,
                "resolved shortcut mismatch for {kind} seed {seed}"
            );
            continue;
        }
        let red_sol = dir.path().join(format!("{kind}_{seed}.redsol"));
        let red_out = run(&[
            "solve",
            reduced.to_str().unwrap(),
            "--budget",
            "16",
            "-o",
            red_sol.to_str().unwrap(),
        ]);
        assert!(code(&red_out) <= 1, "reduced solve failed for {kind} seed {seed}");
        assert_eq!(
            code(&red_out) == 0,
            direct_code == 0,
            "status mismatch for {kind} seed {seed}"
        );
        if code(&red_out) == 0 {
            let lifted = dir.path().join(format!("{kind}_{seed}.lifted"));
            assert_eq!(
                code(&run(&[
                    "lift",
                    "--context",
                    ctx.to_str().unwrap(),
                    "--solution",
                    red_sol.to_str().unwrap(),
                    "--instance",
                    inst.to_str().unwrap(),
                    "-o",
                    lifted.to_str().unwrap(),
                ])),
                0,
                "lift failed for {kind} seed {seed}"
            );
            assert_eq!(
                code(&run(&[
                    "verify",
                    inst.to_str().unwrap(),
                    "--solution",
                    lifted.to_str().unwrap()
                ])),
                0,
                "lifted solution does not verify for {kind} seed {seed}"
            );
        }
    }
}
