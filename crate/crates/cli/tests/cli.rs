use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn metcalfe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metcalfe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn theory_golden_lines() {
    let cases: [(&[&str], &str); 4] = [
        (&["--lambda", "const", "--i", "0.5", "--s", "0.5", "--d", "0.5"], "Omega(n^2) law=Metcalfe\n"),
        (&["--i", "0", "--s", "3", "--d", "3"], "Omega(n) law=Sarnoff\n"),
        (&["--i", "0", "--s", "1", "--d", "3"], "Omega(n^{3/2} * log(n)^{-1/2}) law=Other\n"),
        (&["--lambda", "linear", "--i", "0.5", "--s", "1", "--d", "0.5"], "Omega(n^3) law=Cube\n"),
    ];
    for (args, want) in cases {
        let mut full = vec!["theory"];
        full.extend_from_slice(args);
        let o = metcalfe(&full);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(stdout(&o), want);
    }
}

#[test]
fn theory_json() {
    let o = metcalfe(&["theory", "--json", "--i", "0", "--s", "2", "--d", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["law"], "Odlyzko");
    assert_eq!(v["order"], "Omega(n * log(n))");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["theory", "--s", "-1"],
        vec!["gen", "--n", "16", "--s", "-0.5"],
        vec!["simulate", "--n-grid", ""],
        vec!["simulate", "--n-grid", " , "],
        vec!["scaling", "--n-grid", "64"],
        vec!["scaling", "--n-grid", "64,128"],
        vec!["bogus"],
        vec!["geo", "x.csv", "--grid", "0"],
    ] {
        let o = metcalfe(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn gen_writes_nodes_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("net.json");
    let o = metcalfe(&["gen", "--n", "16", "--seed", "3", "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let doc = metcalfe_core::io::NetworkDocument::from_json(&text).unwrap();
    assert_eq!(doc.n, 16);
    assert_eq!(doc.nodes.len(), 16);
    assert_eq!(doc.sessions.len(), 16);
    assert_eq!(doc.to_json(), text);
    let (net, sessions) = doc.into_parts().unwrap();
    assert_eq!(net.len(), 16);
    assert_eq!(sessions.len(), 16);
    assert!(dir.path().join("net.json.manifest.json").exists());

    // same invocation, same bytes
    let again = dir.path().join("again.json");
    assert!(metcalfe(&["gen", "--n", "16", "--seed", "3", "--out", p(&again)]).status.success());
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

fn without_wall_time(csv: &str) -> Vec<String> {
    csv.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
}

#[test]
fn simulate_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path| {
        vec!["simulate", "--n-grid", "32:128:2", "--replicates", "2", "--seed", "11", "--out"]
            .into_iter()
            .map(String::from)
            .chain([out.to_str().unwrap().to_string()])
            .collect::<Vec<_>>()
    };
    let run = |out: &Path| {
        let v = args(out);
        let o = metcalfe(&v.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(o.status.success(), "{}", stderr(&o));
    };
    run(&a);
    run(&b);
    let ta = fs::read_to_string(&a).unwrap();
    assert_eq!(ta.lines().next().unwrap(), "n,seed,total_load,emst_sum,psi_const,psi_large,sum_r,wall_time");
    assert_eq!(ta.lines().count(), 1 + 3 * 2);
    assert_eq!(without_wall_time(&ta), without_wall_time(&fs::read_to_string(&b).unwrap()));

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "simulate");
    assert_eq!(manifest["seed"], 11);
    assert_eq!(manifest["config"]["n-grid"], "32,64,128");

    let samples = metcalfe_core::io::read_samples_csv(ta.as_bytes()).unwrap();
    assert!(samples.iter().all(|s| s.total_load > 0.0));
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        let o = metcalfe(&["--threads", threads, "simulate", "--n-grid", "64,128", "--replicates", "2", "--seed", "4"]);
        assert!(o.status.success(), "{}", stderr(&o));
        without_wall_time(&stdout(&o))
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# theory run\ni = 0\ns = 3\nd = 3\nlambda = linear\n").unwrap();
    let o = metcalfe(&["--config", p(&cfg), "theory"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "Omega(n^2) law=Metcalfe\n");
    let o = metcalfe(&["--config", p(&cfg), "theory", "--lambda", "const"]);
    assert_eq!(stdout(&o), "Omega(n) law=Sarnoff\n");

    fs::write(&cfg, "not a pair\n").unwrap();
    assert_eq!(metcalfe(&["--config", p(&cfg), "theory"]).status.code(), Some(2));
}

#[test]
fn scaling_flags_injected_theory_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("sq.csv");
    let rows: String = [256, 512, 1024, 2048, 4096].iter().map(|n| format!("{n},{}\n", 7 * n * n)).collect();
    fs::write(&series, format!("n,value\n{rows}")).unwrap();

    let o = metcalfe(&["scaling", "--from", p(&series), "--theory", "1,0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let line = stdout(&o);
    assert!(line.contains("FAIL"), "{line}");
    assert!(line.contains("slope=+1.0000"), "{line}");

    let o = metcalfe(&["scaling", "--from", p(&series), "--theory", "2,0"]);
    assert!(stdout(&o).contains("PASS"), "{}", stdout(&o));
    assert!(stdout(&o).contains("slope=+0.0000") || stdout(&o).contains("slope=-0.0000"));
}

#[test]
fn scaling_simulated_regime_passes() {
    let o = metcalfe(&["scaling", "--preset", "sarnoff", "--n-grid", "256:1024:2", "--replicates", "2", "--seed", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("Sarnoff lambda=const i=0 s=3 d=3 theory=Omega(n) slope="), "{out}");
    assert!(out.trim_end().ends_with("PASS"), "{out}");
}

#[test]
fn fit_ranks_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("series.csv");
    let rows: String = (1..=16).map(|k| 10 * k).map(|n| format!("{n},{}\n", 0.094 * (n * n) as f64 + 74.65)).collect();
    fs::write(&input, format!("n,value\n{rows}")).unwrap();
    let o = metcalfe(&["fit", p(&input)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "law,a,b,c,d,r2,adj_r2");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("Metcalfe,"), "{out}");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert!((fields[1].parse::<f64>().unwrap() - 0.094).abs() < 1e-9);
    assert!((fields[3].parse::<f64>().unwrap() - 74.65).abs() < 1e-6);
    assert_eq!(fields[4], "");
    let sarnoff = lines.iter().find(|l| l.starts_with("Sarnoff,")).unwrap();
    assert!(sarnoff.split(',').nth(3).unwrap().is_empty());

    let out_file = dir.path().join("fit.csv");
    assert!(metcalfe(&["fit", p(&input), "--out", p(&out_file)]).status.success());
    assert_eq!(fs::read_to_string(&out_file).unwrap(), out);
    assert!(dir.path().join("fit.csv.manifest.json").exists());
}

#[test]
fn fit_data_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "n,value\n1,2\n2,x\n").unwrap();
    let o = metcalfe(&["fit", p(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "n,value\n").unwrap();
    let o = metcalfe(&["fit", p(&empty)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("underdetermined fit"), "{}", stderr(&o));

    let o = metcalfe(&["fit", p(&dir.path().join("missing.csv"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("missing.csv"));
}

#[test]
fn geo_lattice_and_concentration() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("lattice.csv");
    let rows: String = (0..10).flat_map(|x| (0..10).map(move |y| format!("{x},{y}\n"))).collect();
    fs::write(&lattice, format!("x,y\n{rows}")).unwrap();
    let o = metcalfe(&["geo", p(&lattice), "--grid", "10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("cv=0.000000"), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: consistent with uniform (g=0)"));

    let o = metcalfe(&["geo", "--json", p(&lattice), "--grid", "10", "--bounds", "0,1000,0,1000"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["uniform"], false);
    assert!((v["summary"]["coefficient_of_variation"].as_f64().unwrap() - 99f64.sqrt()).abs() < 1e-9);

    let sparse = dir.path().join("sparse.csv");
    fs::write(&sparse, "lat,lon\n45.0,9.1\n45.5,9.3\n").unwrap();
    let o = metcalfe(&["geo", p(&sparse), "--grid", "4"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).contains("coordinates=latlon"));

    let garbage = dir.path().join("garbage.csv");
    fs::write(&garbage, "x,y\n1,2\nfoo,3\n").unwrap();
    assert_eq!(metcalfe(&["geo", p(&garbage)]).status.code(), Some(3));
}
