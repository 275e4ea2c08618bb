use std::path::Path;
use std::process::{Command, Output};

fn minhyp(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minhyp")).args(args).current_dir(cwd).output().expect("spawn minhyp")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

type Polyline = Vec<(f64, f64)>;

fn polylines(svg: &str, label: &str) -> Vec<Polyline> {
    let tag = format!(r#"data-label="{label}""#);
    svg.lines()
        .filter(|l| l.starts_with("<polyline") && l.contains(&tag))
        .map(|l| {
            let start = l.find(r#"points=""#).unwrap() + 8;
            let end = start + l[start..].find('"').unwrap();
            l[start..end]
                .split_whitespace()
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect()
        })
        .collect()
}

fn segments_cross(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> bool {
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let d1 = cross(r, s, p);
    let d2 = cross(r, s, q);
    let d3 = cross(p, q, r);
    let d4 = cross(p, q, s);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn crossings(a: &[Polyline], b: &[Polyline]) -> usize {
    let mut count = 0;
    for la in a {
        for lb in b {
            for sa in la.windows(2) {
                for sb in lb.windows(2) {
                    if segments_cross(sa[0], sa[1], sb[0], sb[1]) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn profile_writes_tables_and_figure() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["profile", "--n", "2", "--a", "0.5,1,2", "--format", "csv", "--out", "figs"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let figs = dir.path().join("figs");
    for name in ["catenoid_n2_a0.5.csv", "catenoid_n2_a1.csv", "catenoid_n2_a2.csv", "catenoid_n2.svg"] {
        assert!(figs.join(name).is_file(), "missing {name}");
    }
    let csv = std::fs::read_to_string(figs.join("catenoid_n2_a1.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("t,"), "{header}");
    assert!(csv.lines().count() > 100);
}

#[test]
fn neighbouring_catenaries_cross_twice() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["profile", "--n", "2", "--a", "0.5,1", "--out", "figs"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(dir.path().join("figs/catenoid_n2.svg")).unwrap();
    let small = polylines(&svg, "a = 0.5");
    let large = polylines(&svg, "a = 1");
    assert!(!small.is_empty() && !large.is_empty());
    assert_eq!(crossings(&small, &large), 2);
}

#[test]
fn translation_profiles_are_tagged_by_regime() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["profile", "--family", "translation", "--n", "3", "--d", "0.5,1,2", "--out", "figs"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let figs = dir.path().join("figs");
    for name in ["translation_n3_d0.5_graph_entire.csv", "translation_n3_d1_graph_half.csv", "translation_n3_d2_bigraph.csv", "translation_n3.svg"] {
        assert!(figs.join(name).is_file(), "missing {name}");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["one", "two"] {
        let o = minhyp(&["profile", "--n", "3", "--a", "0.5,2", "--format", "json", "--out", out], dir.path());
        assert_eq!(code(&o), 0);
    }
    for name in ["catenoid_n3_a0.5.json", "catenoid_n3_a2.json", "catenoid_n3.svg"] {
        let a = std::fs::read(dir.path().join("one").join(name)).unwrap();
        let b = std::fs::read(dir.path().join("two").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
    let h1 = minhyp(&["heights", "--n", "2"], dir.path());
    let h2 = minhyp(&["heights", "--n", "2"], dir.path());
    assert_eq!(h1.stdout, h2.stdout);
}

#[test]
fn json_documents_carry_a_schema_version() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["heights", "--n", "3", "--a", "1", "--d", "2", "--format", "json"], dir.path());
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "heights");
    assert_eq!(doc["n"], 3);
    assert!(doc["results"].as_array().is_some_and(|r| r.len() == 2));
}

#[test]
fn heights_are_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["heights", "--n", "2", "--format", "json"], dir.path());
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in doc["results"].as_array().unwrap() {
        assert_eq!(row["ordered"], true, "{row}");
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [vec!["profile", "--n", "1"], vec!["heights", "--a", "-1"], vec!["frobnicate"], vec!["stability", "--mesh", "2"]] {
        let o = minhyp(&args, dir.path());
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(code(&minhyp(&["--help"], dir.path())), 0);
}

#[test]
fn numeric_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["envelope", "--a", "4", "--out", "figs"], dir.path());
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn stability_certifies_index_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["stability", "--n", "2", "--a", "1", "--format", "json"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["results"][0]["verdict"], "index=1");
}

#[test]
fn check_passes_and_detects_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    let o = minhyp(&["check", "--out", "report.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["results"]["failed"], 0);

    let o = minhyp(&["check", "--perturb", "1e-3", "--out", "perturbed.json"], dir.path());
    assert_ne!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));
}
