use std::path::Path;
use std::process::{Command, Output};

use permqm::dynamics::{dominant_evolution, prob_step_float};
use permqm::exactnum::BigRational;
use permqm::perm::Permutation;
use permqm::repstate::{NaturalVector, Representation};
use permqm::rng::stream;
use permqm::spectrum::{base_energy, spectrum_of};
use permqm_cli::output::{read_comments, read_csv_file, BaseRow, DominanceRow, LevelRow, TraceRow};

fn permqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permqm"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dominate_row_matches_library() {
    let o = permqm(&[
        "dominate", "--n", "3", "--trials", "1", "--seed", "42", "--cmax", "9",
    ]);
    assert!(o.status.success());
    let rows: Vec<DominanceRow> = permqm_cli::output::read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 1);
    let row = &rows[0];

    let mut rng = stream(42, 0);
    let n = NaturalVector::random(3, 9, &mut rng).unwrap();
    let m = NaturalVector::random(3, 9, &mut rng).unwrap();
    let d = dominant_evolution(&n, &m, Representation::Standard).unwrap();
    let baseline = Permutation::random(3, &mut rng).unwrap();
    assert_eq!(row.n_vec, n.to_string());
    assert_eq!(row.m_vec, m.to_string());
    assert_eq!(row.orientation, d.orientation.to_string());
    assert_eq!(
        format!("{}/{}", row.prob_num, row.prob_den),
        format!("{}/{}", d.probability.numer(), d.probability.denom())
    );
    assert_eq!(
        row.baseline_float,
        prob_step_float(&baseline, &n, &m, Representation::Standard).unwrap()
    );
    assert_eq!(row.max_cycle, d.dominant.max_cycle_length());
    assert_eq!(
        row.base_energy,
        base_energy(&d.dominant).map_or("none".into(), |b| b.to_string())
    );

    let again = permqm(&[
        "dominate", "--n", "3", "--trials", "1", "--seed", "42", "--cmax", "9",
    ]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn dominate_json_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let o = permqm(&[
        "dominate",
        "--n",
        "6",
        "--trials",
        "5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("median dominant probability"));
    let rows: Vec<DominanceRow> = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(
        rows.iter().map(|r| r.trial).collect::<Vec<_>>(),
        vec![0, 1, 2, 3, 4]
    );
}

fn comment<'a>(comments: &'a [(String, String)], key: &str) -> &'a str {
    &comments.iter().find(|(k, _)| k == key).unwrap().1
}

#[test]
fn four_traces_with_plot() {
    let dir = tempfile::tempdir().unwrap();
    let o = permqm(&[
        "trace",
        "--n",
        "100",
        "--seed",
        "3",
        "--plot",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let mut labels = Vec::new();
    for pair in 0..4 {
        let path = dir.path().join(format!("trace_{pair}.csv"));
        let rows: Vec<TraceRow> = read_csv_file(&path).unwrap();
        let comments = read_comments(&path).unwrap();
        assert_eq!(comment(&comments, "N"), "100");
        assert_eq!(comment(&comments, "seed"), "3");
        assert_eq!(comment(&comments, "representation"), "standard");
        let label = comment(&comments, "base energy").to_string();
        let k: usize = label.strip_prefix("1/").unwrap().parse().unwrap();
        assert!((2..=100).contains(&k));

        let p: Permutation = comment(&comments, "permutation").parse().unwrap();
        assert_eq!(comment(&comments, "cycle type"), p.cycle_type().to_string());
        let t_max = permqm::dynamics::default_t_max(&p, 400);
        assert_eq!(rows.len() as u64, t_max + 1);
        assert_eq!(
            rows.iter().map(|r| r.t).collect::<Vec<_>>(),
            (0..=t_max).collect::<Vec<_>>()
        );

        let mut rng = stream(3, pair);
        let n = NaturalVector::random(100, 1_000_000, &mut rng).unwrap();
        let m = NaturalVector::random(100, 1_000_000, &mut rng).unwrap();
        let p0 = Representation::Standard.probability(&n, &m).unwrap();
        assert_eq!(rows[0].prob_num, p0.numer().to_string());
        assert_eq!(rows[0].prob_den, p0.denom().to_string());
        let d = dominant_evolution(&n, &m, Representation::Standard).unwrap();
        assert_eq!(
            BigRational::new(
                rows[1].prob_num.parse().unwrap(),
                rows[1].prob_den.parse().unwrap()
            ),
            d.probability
        );
        labels.push(label);
    }

    let svg = std::fs::read_to_string(dir.path().join("trace.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let polylines = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .count();
    let peak_labels: Vec<&str> = doc
        .descendants()
        .filter(|n| n.has_tag_name("text") && n.attribute("class") == Some("peak-label"))
        .filter_map(|n| n.text())
        .collect();
    assert_eq!(polylines, 4);
    assert_eq!(
        peak_labels,
        labels.iter().map(String::as_str).collect::<Vec<_>>()
    );
}

#[test]
fn trace_with_fixed_window_in_natural_representation() {
    let dir = tempfile::tempdir().unwrap();
    let o = permqm(&[
        "trace",
        "--n",
        "8",
        "--pairs",
        "2",
        "--tmax",
        "25",
        "--rep",
        "nat",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    for pair in 0..2 {
        let path = dir.path().join(format!("trace_{pair}.csv"));
        let rows: Vec<TraceRow> = read_csv_file(&path).unwrap();
        assert_eq!(rows.len(), 26);
        assert_eq!(
            comment(&read_comments(&path).unwrap(), "representation"),
            "natural"
        );
        let order: u64 = comment(&read_comments(&path).unwrap(), "permutation")
            .parse::<Permutation>()
            .unwrap()
            .order()
            .try_into()
            .unwrap();
        for t in 0..rows.len() {
            if let Some(later) = rows.get(t + order as usize) {
                assert_eq!(later.prob_num, rows[t].prob_num);
                assert_eq!(later.prob_den, rows[t].prob_den);
            }
        }
    }
    assert!(!dir.path().join("trace.svg").exists());
}

#[test]
fn spectrum_reports() {
    let o = permqm(&["spectrum", "--perm", "2 1 3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("cycle type: 2^1 1^1"));
    assert!(text.contains("spectrum: 0(x2) 1/2(x1)"));
    assert!(text.contains("base energy: 1/2"));

    let o = permqm(&["spectrum", "--perm", "1 2 3 4"]);
    assert!(stdout(&o).contains("base energy: none"));

    let o = permqm(&["spectrum", "--n", "12", "--seed", "5", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p = Permutation::random(12, &mut stream(5, 0)).unwrap();
    assert_eq!(report["permutation"], p.to_string());
    let levels: Vec<(String, usize)> = serde_json::from_value(report["spectrum"].clone()).unwrap();
    let expected: Vec<(String, usize)> = spectrum_of(&p)
        .levels()
        .iter()
        .map(|(e, k)| (e.to_string(), *k))
        .collect();
    assert_eq!(levels, expected);
}

fn mc_files(dir: &Path, workers: &str) -> Vec<Vec<u8>> {
    let o = permqm(&[
        "mc",
        "--n",
        "30",
        "--trials",
        "200",
        "--seed",
        "11",
        "--workers",
        workers,
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    ["dominance.csv", "energy_levels.csv", "base_energies.csv"]
        .iter()
        .map(|f| std::fs::read(dir.join(f)).unwrap())
        .collect()
}

#[test]
fn mc_outputs_round_trip_and_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(mc_files(a.path(), "1"), mc_files(b.path(), "3"));

    let rows: Vec<DominanceRow> = read_csv_file(&a.path().join("dominance.csv")).unwrap();
    assert_eq!(rows.len(), 200);
    let levels: Vec<LevelRow> = read_csv_file(&a.path().join("energy_levels.csv")).unwrap();
    assert_eq!(levels.iter().map(|r| r.count).sum::<u64>(), 200 * 30);
    let bases: Vec<BaseRow> = read_csv_file(&a.path().join("base_energies.csv")).unwrap();
    let identity_rows = rows.iter().filter(|r| r.base_energy == "none").count() as u64;
    assert_eq!(
        bases.iter().map(|r| r.count).sum::<u64>() + identity_rows,
        200
    );
    for r in &rows {
        if r.base_energy != "none" {
            assert_eq!(r.base_energy, format!("1/{}", r.max_cycle));
        }
    }

    // Rewriting parsed rows reproduces the file byte for byte.
    let mut buf = Vec::new();
    permqm_cli::output::write_rows(&mut buf, &rows, &[], permqm_cli::config::Format::Csv).unwrap();
    assert_eq!(buf, std::fs::read(a.path().join("dominance.csv")).unwrap());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "n = 5\ntrials = 4\nseed = 8\nrep = nat\n").unwrap();
    let o = permqm(&[
        "dominate",
        "--config",
        cfg.to_str().unwrap(),
        "--trials",
        "2",
    ]);
    assert!(o.status.success());
    let rows: Vec<DominanceRow> = permqm_cli::output::read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].n_vec.split(' ').count(), 5);
    assert!(rows.iter().all(|r| r.orientation == "identical"));
}

#[test]
fn exit_codes() {
    assert_eq!(permqm(&["mc", "--n", "1"]).status.code(), Some(2));
    assert_eq!(
        permqm(&["dominate", "--rep", "both"]).status.code(),
        Some(2)
    );
    assert_eq!(permqm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        permqm(&["spectrum", "--perm", "1 1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        permqm(&["spectrum", "--config", "/nonexistent/x.cfg"])
            .status
            .code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let inside = blocker.join("out");
    assert_eq!(
        permqm(&[
            "mc",
            "--n",
            "4",
            "--trials",
            "2",
            "--out",
            inside.to_str().unwrap()
        ])
        .status
        .code(),
        Some(3)
    );
}
