mod support;

use optima_core::planner::Plan;
use support::*;

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

#[test]
fn plan_file_is_deterministic_and_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let region = repo_path("data/regions/sample12.json");
    let mut docs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("plan{run}.json"));
        let o = optima(&[
            "plan",
            region.to_str().unwrap(),
            "--trucks",
            "2",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("warehouses: "));
        assert!(stdout(&o).contains("truck 1: "));
        docs.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
    let plan = Plan::from_json_str(&docs[0]).unwrap();
    assert_eq!(plan.to_json_pretty(), docs[0]);
    assert_eq!(plan.clusters.len(), 2);
}

#[test]
fn plan_usage_and_domain_errors() {
    let region = repo_path("data/regions/sample12.json");
    let region = region.to_str().unwrap();
    assert_eq!(
        optima(&["plan", region, "--trucks", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(optima(&["plan", region]).status.code(), Some(2));
    assert_eq!(
        optima(&["plan", region, "--trucks", "1", "--solver", "ortools"])
            .status
            .code(),
        Some(2)
    );

    let o = optima(&["plan", "/no/such/region.json", "--trucks", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("/no/such/region.json"),
        "{}",
        stderr(&o)
    );

    let o = optima(&["plan", region, "--trucks", "99"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("k_trucks"), "{}", stderr(&o));
}

#[test]
fn plan_to_stdout() {
    let region = repo_path("data/regions/sample12.json");
    let o = optima(&[
        "plan",
        region.to_str().unwrap(),
        "--trucks",
        "1",
        "--solver",
        "two_approx",
    ]);
    assert!(o.status.success());
    let plan = Plan::from_json_str(&stdout(&o)).unwrap();
    assert_eq!(plan.clusters.len(), 1);
}

#[test]
fn solve_tsp_gr17() {
    let gr17 = repo_path("data/tsplib/gr17.tsp");
    let o = optima(&[
        "solve-tsp",
        gr17.to_str().unwrap(),
        "--solver",
        "local_search",
        "--optimum",
        "2085",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let cost: i64 = field(&out, "cost").parse().unwrap();
    assert!((2085..=2085 * 103 / 100).contains(&cost), "{cost}");
    let tour: Vec<usize> = field(&out, "tour")
        .split(' ')
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(tour[0], 1);
    let mut sorted = tour.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (1..=17).collect::<Vec<_>>());

    let o = optima(&[
        "solve-tsp",
        gr17.to_str().unwrap(),
        "--solver",
        "two_approx",
        "--start",
        "5",
    ]);
    let out = stdout(&o);
    let cost: i64 = field(&out, "cost").parse().unwrap();
    assert!((2085..=4170).contains(&cost), "{cost}");
    assert!(field(&out, "tour").starts_with("5 "));
}

#[test]
fn solve_tsp_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("man.tsp");
    std::fs::write(
        &bad,
        "NAME: man\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: MAN_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n",
    )
    .unwrap();
    let o = optima(&["solve-tsp", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("MAN_2D"), "{}", stderr(&o));

    let gr17 = repo_path("data/tsplib/gr17.tsp");
    assert_eq!(
        optima(&["solve-tsp", gr17.to_str().unwrap(), "--start", "18"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        optima(&["solve-tsp", gr17.to_str().unwrap(), "--start", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bench_rows_and_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("instances");
    std::fs::create_dir(&inst).unwrap();
    for name in ["gr17.tsp", "toy5.tsp"] {
        std::fs::copy(repo_path(&format!("data/tsplib/{name}")), inst.join(name)).unwrap();
    }
    let csv_path = dir.path().join("report.csv");
    let o = optima(&[
        "bench",
        inst.to_str().unwrap(),
        "--optima-file",
        repo_path("data/tsplib/optima.json").to_str().unwrap(),
        "--reps",
        "3",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("gr17"));

    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let header: Vec<String> = reader
        .headers()
        .unwrap()
        .iter()
        .map(str::to_string)
        .collect();
    assert_eq!(
        header,
        [
            "name",
            "n",
            "optimal",
            "solver",
            "cost",
            "gap_pct",
            "runtime_s"
        ]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        let gap: f64 = r[5].parse().unwrap();
        assert!(gap >= 0.0, "{r:?}");
    }

    // A broken file is reported while the others still run.
    std::fs::write(inst.join("broken.tsp"), "NAME: broken\nTYPE: ATSP\nEOF\n").unwrap();
    let o = optima(&[
        "bench",
        inst.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"), "{}", stdout(&o));
    assert_eq!(
        csv::Reader::from_path(&csv_path).unwrap().records().count(),
        4
    );
}

#[test]
fn serve_healthz_data_dir_and_busy_port() {
    let dir = tempfile::tempdir().unwrap();
    let server = Server::start(dir.path());
    let (status, body) = server.request("GET", "/healthz", None);
    assert_eq!(status, 200);
    assert_eq!(body, r#"{"status":"ok"}"#);

    let region = std::fs::read_to_string(repo_path("data/regions/sample12.json")).unwrap();
    let (status, _) = server.request("POST", "/regions", Some(&region));
    assert_eq!(status, 201);
    assert_eq!(
        std::fs::read_dir(dir.path().join("regions"))
            .unwrap()
            .count(),
        1
    );

    let other = tempfile::tempdir().unwrap();
    let err = Server::try_start(other.path(), &server.addr)
        .err()
        .expect("port is busy");
    assert_eq!(err.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&err.stderr).contains("cannot bind"));
}

#[cfg(unix)]
#[test]
fn serve_stops_cleanly_on_interrupt() {
    let dir = tempfile::tempdir().unwrap();
    let server = Server::start(dir.path());
    assert_eq!(server.request("GET", "/healthz", None).0, 200);
    assert!(server.interrupt().success());
}
