use std::process::{Command, Output};

fn hookdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hookdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dist_json_for_n19() {
    let o = hookdist(&["dist", "--n", "19", "--t", "2", "--flavor", "multiple"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"n":19,"t":2,"flavor":"multiple","total":"490","counts":[[2,"5"],[8,"185"],[9,"300"]]}"#
    );
}

#[test]
fn dist_csv_for_n19() {
    let o = hookdist(&["dist", "--n", "19", "--t", "2", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,count,probability");
    assert_eq!(lines.len(), 4);
    let p: f64 = lines[3].split(',').nth(2).unwrap().parse().unwrap();
    assert!(lines[3].starts_with("9,300,"));
    assert!((p - 300.0 / 490.0).abs() < 1e-15);
}

#[test]
fn float_ring_matches_exact_probabilities() {
    let e = stdout(&hookdist(&["dist", "--n", "60", "--t", "3", "--format", "csv"]));
    let f = stdout(&hookdist(&["dist", "--n", "60", "--t", "3", "--format", "csv", "--ring", "float"]));
    let prob = |s: &str| -> Vec<(usize, f64)> {
        s.lines()
            .skip(1)
            .map(|l| {
                let v: Vec<&str> = l.split(',').collect();
                (v[0].parse().unwrap(), v[2].parse().unwrap())
            })
            .collect()
    };
    let (pe, pf) = (prob(&e), prob(&f));
    assert_eq!(pe.len(), pf.len());
    for ((me, a), (mf, b)) in pe.iter().zip(&pf) {
        assert_eq!(me, mf);
        assert!((a - b).abs() <= 1e-12);
    }
}

#[test]
fn empty_partition_is_a_point_mass() {
    let o = hookdist(&["dist", "--n", "0", "--t", "3", "--flavor", "equal"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""total":"1","counts":[[0,"1"]]"#));
}

#[test]
fn empty_grid_writes_header_only() {
    let path = std::env::temp_dir().join("hookdist-cli-empty-grid.csv");
    let o = hookdist(&["table", "--n", "30", "--t", "2", "--x", "", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "x,k,D,limit,ratio\n");
}

#[test]
fn domain_errors_exit_with_two() {
    assert_eq!(hookdist(&["dist", "--n", "10", "--t", "0"]).status.code(), Some(2));
    let o = hookdist(&["asym", "--prop", "2", "--n", "100", "--t", "1", "--alphaT", "-10"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(hookdist(&["table", "--n", "100", "--t", "3", "--x", "a"]).status.code(), Some(2));
}

#[test]
fn work_ceiling_exits_with_three() {
    let o = hookdist(&["dist", "--n", "1000", "--t", "1", "--work-ceiling", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_hookdist"))
            .args(["dist", "--n", "400", "--t", "2", "--flavor", "multiple"])
            .env("HOOKDIST_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("7"));
}

#[test]
fn bad_thread_count_is_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_hookdist"))
        .args(["dist", "--n", "5", "--t", "2"])
        .env("HOOKDIST_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_identities_passes() {
    let o = hookdist(&["verify", "--suite", "identities", "--order", "8"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn asym_reports_ratio_near_one() {
    let o = hookdist(&["asym", "--prop", "1", "--n", "400", "--t", "2", "--T", "0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let ratio: f64 = text
        .lines()
        .find(|l| l.starts_with("ratio"))
        .unwrap()
        .split_whitespace()
        .last()
        .unwrap()
        .parse()
        .unwrap();
    assert!((ratio - 1.0).abs() < 0.05);
}
