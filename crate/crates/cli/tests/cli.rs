use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn psrt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psrt")).args(args).output().unwrap()
}

fn psrt_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psrt")).current_dir(dir).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn generate_sort_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let gen =
        psrt_in(dir.path(), &["generate", "--family", "runs", "-n", "1000", "--seed", "7", "-R", "50", "-o", "in.txt"]);
    assert_eq!(code(&gen), 0, "{}", String::from_utf8_lossy(&gen.stderr));
    let text = std::fs::read_to_string(dir.path().join("in.txt")).unwrap();
    assert!(text.starts_with("PSRT v1 runs n=1000 seed=7 R=50 run_percent=60 direction=ascending\n"));
    assert_eq!(text.lines().count(), 1001);

    for algo in ["persiansort", "m1", "m2", "timsort", "insertion"] {
        let sort =
            psrt_in(dir.path(), &["sort", "--algo", algo, "-i", "in.txt", "-o", "out.txt", "--verify", "--stats"]);
        assert_eq!(code(&sort), 0, "{algo}");
        let err = String::from_utf8_lossy(&sort.stderr);
        assert!(err.contains("verify: ok") && err.contains("comparisons="), "{err}");
        let check = psrt_in(dir.path(), &["verify", "in.txt", "out.txt"]);
        assert_eq!(code(&check), 0);
        assert_eq!(String::from_utf8_lossy(&check.stdout).trim(), "ok");
    }
}

#[test]
fn binary_datasets_and_duplicate_keys() {
    let dir = TempDir::new().unwrap();
    let args = [
        "generate",
        "--family",
        "k-nearly",
        "-n",
        "500",
        "-k",
        "20",
        "--int-keys",
        "5",
        "--format",
        "binary",
        "-o",
        "in.bin",
    ];
    assert_eq!(code(&psrt_in(dir.path(), &args)), 0);
    let bytes = std::fs::read(dir.path().join("in.bin")).unwrap();
    assert_eq!(&bytes[..5], b"PSRT1");
    assert_eq!(bytes.len(), 13 + 8 * 500);

    let sort = psrt_in(
        dir.path(),
        &["sort", "--wp", "4", "--hybrid-threshold", "8", "-i", "in.bin", "-o", "out.bin", "--verify"],
    );
    assert_eq!(code(&sort), 0);
    assert_eq!(&std::fs::read(dir.path().join("out.bin")).unwrap()[..5], b"PSRT1");
    assert_eq!(code(&psrt_in(dir.path(), &["verify", "in.bin", "out.bin"])), 0);
}

#[test]
fn verify_rejects_bad_outputs() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    std::fs::write(p.join("in.txt"), "PSRT v1 external n=3\n3\n1\n2\n").unwrap();
    std::fs::write(p.join("unsorted.txt"), "PSRT v1 external n=3\n1\n3\n2\n").unwrap();
    std::fs::write(p.join("foreign.txt"), "PSRT v1 external n=3\n1\n2\n4\n").unwrap();
    std::fs::write(p.join("short.txt"), "PSRT v1 external n=2\n1\n2\n").unwrap();
    std::fs::write(p.join("good.txt"), "PSRT v1 external n=3\n1\n2\n3\n").unwrap();

    let unsorted = psrt_in(p, &["verify", "in.txt", "unsorted.txt"]);
    assert_eq!(code(&unsorted), 2);
    assert!(String::from_utf8_lossy(&unsorted.stdout).contains("not_sorted"));
    for bad in ["foreign.txt", "short.txt"] {
        let out = psrt_in(p, &["verify", "in.txt", bad]);
        assert_eq!(code(&out), 2, "{bad}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("not_permutation"));
    }
    assert_eq!(code(&psrt_in(p, &["verify", "in.txt", "good.txt"])), 0);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&psrt(&[])), 1);
    assert_eq!(code(&psrt(&["bench", "--experiment", "nope"])), 1);
    assert_eq!(code(&psrt(&["bench", "--experiment", "prefix_sweep", "--format", "xml"])), 1);
    assert_eq!(code(&psrt(&["bench", "--experiment", "prefix_sweep", "--algos", "insertion"])), 1);
    assert_eq!(code(&psrt(&["bench", "--experiment", "random_sweep", "--rel-tol", "0"])), 1);
    assert_eq!(code(&psrt(&["sort", "--wp", "3", "-i", "missing.txt"])), 1);
    assert_eq!(code(&psrt(&["sort", "-i", "/definitely/missing.txt"])), 1);
    assert_eq!(code(&psrt(&["generate", "--family", "runs", "-n", "10"])), 1);
    assert_eq!(code(&psrt(&["--help"])), 0);
    assert_eq!(code(&psrt(&["--version"])), 0);
}

#[test]
fn strict_flags_capped_rows() {
    let args = ["bench", "--experiment", "random_sweep", "--sizes", "500", "--max-trials", "5", "--rel-tol", "1e-9"];
    let lax = psrt(&args);
    assert_eq!(code(&lax), 0);
    assert!(String::from_utf8_lossy(&lax.stderr).contains("stopped at --max-trials"));
    let strict = psrt(&[&args[..], &["--strict"]].concat());
    assert_eq!(code(&strict), 3);
}

#[test]
fn bench_csv_layout() {
    let out = psrt(&[
        "bench",
        "--experiment",
        "prefix_sweep",
        "--sizes",
        "3000",
        "--grid",
        "65,99",
        "--algos",
        "m2,persiansort",
    ]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "experiment,algorithm,n,param,metric,mean,trials,rel_err,ratio_vs_m2");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("prefix_sweep,m2,3000,pp=65,comparisons,"));
    assert!(lines[1].ends_with(",1"));
    assert!(lines[4].starts_with("prefix_sweep,persiansort,3000,pp=99,comparisons,"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = [
        "bench",
        "--experiment",
        "runs_sweep",
        "--sizes",
        "5000",
        "--grid",
        "30,300",
        "--metric",
        "moves",
        "--seed",
        "3",
    ];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_psrt")).env("PSRT_THREADS", threads).args(args).output().unwrap()
    };
    let one = run("1");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, run("4").stdout);
}

#[test]
fn markdown_report() {
    let out = psrt(&[
        "bench",
        "--experiment",
        "k_nearly_sweep",
        "--sizes",
        "5000",
        "--grid",
        "10,200",
        "--format",
        "markdown",
    ]);
    assert_eq!(code(&out), 0);
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.starts_with("### k_nearly_sweep (comparisons)\n"));
    assert!(md.contains("| n | k | T-M1 | T-M2 | T-TIMS | T-INS | T-PER |"), "{md}");
    assert!(md.contains("| 5000 | 200 |"));
}
