use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clutterlab"))
}

fn run(dir: &Path, args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = bin()
        .args(args)
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(bytes) = stdin {
        pipe.write_all(bytes).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn gen_grid_writes_the_twelve_vertex_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["gen", "grid", "3", "4", "-o", "g.json"], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("g.json")).unwrap()).unwrap();
    assert_eq!(v["n"], 12);
    // 3 rows of 3 horizontal edges, 4 columns of 2 vertical ones.
    assert_eq!(v["edges"].as_array().unwrap().len(), 17);
}

#[test]
fn certify_co_grid_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "grid", "3", "4", "--complement", "-o", "g.json"], None)), 0);
    let o = run(dir.path(), &["certify", "-i", "g.json", "-r", "2", "--target", "complement", "--emit", "cert.json"], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(dir.path(), &["verify-cert", "-i", "g.json", "-r", "2", "--cert", "cert.json"], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn plain_grid_complement_clutter_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "grid", "3", "4", "-o", "g.json"], None)), 0);
    let o = run(dir.path(), &["certify", "-i", "g.json", "-r", "2", "--target", "complement"], None);
    assert_eq!(code(&o), 1);
    assert!(dir.path().join("witness.json").exists());
}

#[test]
fn gen_certify_verify_pipelines() {
    let cases: &[(&[&str], &str, &str)] = &[
        (&["grid", "2", "3", "--complement"], "2", "complement"),
        (&["cycle", "6", "--complement"], "3", "complement"),
        (&["path", "6", "--complement"], "2", "complement"),
        (&["complete", "6"], "2", "complement"),
        (&["complete", "6"], "3", "connected"),
        (&["multipartite", "2", "2", "2"], "2", "complement"),
        (&["gamma", "1", "2", "2"], "2", "complement"),
        (&["partially-split", "3", "2", "1"], "2", "complement"),
        (&["tree", "8", "3", "--seed", "4", "--complement"], "3", "complement"),
        (&["block", "9", "--seed", "2"], "2", "connected"),
        (&["cycle", "7"], "2", "connected"),
        (&["cactus", "C4", "--seed", "1"], "2", "complement"),
        (&["cactus", "P3", "--seed", "2"], "3", "complement"),
        (&["free", "3", "3", "--c5"], "2", "complement"),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (gen, r, target) in cases {
        let mut args = vec!["gen"];
        args.extend_from_slice(gen);
        let g = run(dir.path(), &args, None);
        assert_eq!(code(&g), 0, "{gen:?}");
        let c = run(dir.path(), &["certify", "-i", "-", "-r", r, "--target", target], Some(&g.stdout));
        assert_eq!(code(&c), 0, "{gen:?}: {}", String::from_utf8_lossy(&c.stderr));
        std::fs::write(dir.path().join("g.json"), &g.stdout).unwrap();
        let v = run(dir.path(), &["verify-cert", "-i", "g.json", "-r", r, "--target", target, "--cert", "-"], Some(&c.stdout));
        assert_eq!(code(&v), 0, "{gen:?}: {}", String::from_utf8_lossy(&v.stderr));
    }
}

#[test]
fn corrupted_certificate_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "complete", "5", "-o", "g.json"], None)), 0);
    let c = run(dir.path(), &["certify", "-i", "g.json", "-r", "2", "--target", "connected"], None);
    assert_eq!(code(&c), 0);
    let mut cert: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    cert["steps"].as_array_mut().unwrap().truncate(1);
    let bytes = serde_json::to_vec(&cert).unwrap();
    let v = run(dir.path(), &["verify-cert", "-i", "g.json", "-r", "2", "--target", "connected", "--cert", "-", "--witness", "w.json"], Some(&bytes));
    assert_eq!(code(&v), 1);
    assert!(dir.path().join("w.json").exists());

    cert["source_hash"] = serde_json::Value::String("00".repeat(32));
    let bytes = serde_json::to_vec(&cert).unwrap();
    let v = run(dir.path(), &["verify-cert", "-i", "g.json", "-r", "2", "--target", "connected", "--cert", "-"], Some(&bytes));
    assert_eq!(code(&v), 1);
}

#[test]
fn regularity_jump_graph_report() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "jump", "-o", "j.json"], None)), 0);
    let o = run(dir.path(), &["reg", "--graph", "j.json", "-r", "2"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "reg=5 linear=false field=gf2");
    let o = run(dir.path(), &["reg", "--graph", "j.json", "-r", "1"], None);
    assert_eq!(stdout(&o).trim(), "reg=3 linear=false field=gf2");
}

#[test]
fn betti_csv_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "cycle", "5", "--complement", "-o", "g.json"], None)), 0);
    assert_eq!(code(&run(dir.path(), &["ideal", "--graph", "g.json", "-r", "1", "-o", "i.json"], None)), 0);
    let csv = stdout(&run(dir.path(), &["betti", "--ideal", "i.json", "--field", "gf2"], None));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "i,j,rank");
    assert_eq!(*lines.last().unwrap(), "reg=3 linear=false field=gf2");
    let rows: Vec<(u64, u64, u64)> = lines[1..lines.len() - 1]
        .iter()
        .map(|l| {
            let f: Vec<u64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1], f[2])
        })
        .collect();
    // Edge ideal of C_5: 5 quadrics, then 5 linear syzygies.
    assert!(rows.contains(&(0, 2, 5)));
    assert!(rows.contains(&(1, 3, 5)));
    let json = run(dir.path(), &["betti", "--ideal", "i.json", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(v.to_string().contains('5'));
}

#[test]
fn ideal_exchange_checks() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "path", "6", "--complement", "-o", "g.json"], None)), 0);
    let o = run(dir.path(), &["ideal", "--graph", "g.json", "-r", "2", "--power", "2", "--check", "weakly-polymatroidal", "--order", "0,1,2,3,4,5"], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "weakly-polymatroidal=true");
    let o = run(dir.path(), &["ideal", "--graph", "g.json", "-r", "2", "--check", "linear-quotients"], None);
    assert!(stdout(&o).starts_with("linear-quotients=true order="));
}

#[test]
fn verify_writes_json_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "--check", "T4.13", "--max-n", "3", "--max-r", "4", "--json", "out.json"], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("theorem,instance,outcome,runtime_ms"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("out.json")).unwrap()).unwrap();
    let verdicts = v.as_array().unwrap();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|x| x["theorem"] == "T4.13" && x["outcome"] == "pass"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["verify", "--check", "T4.13", "--all"], None)), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "--check", "T9.9"], None)), 2);
    assert_eq!(code(&run(dir.path(), &["certify", "-i", "missing.json", "-r", "2"], None)), 2);
    assert_eq!(code(&run(dir.path(), &["certify", "--budget", "ten", "-i", "-"], Some(b"{}"))), 2);
    assert_eq!(code(&run(dir.path(), &["gen", "grid", "1", "0"], None)), 2);
    let o = bin().args(["gen", "path", "3"]).env("CLUTTERLAB_THREADS", "0").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn strict_budget_exhaustion_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "grid", "3", "3", "-o", "g.json"], None)), 0);
    let args = ["certify", "-i", "g.json", "-r", "2", "--budget", "3"];
    let lax = run(dir.path(), &args, None);
    assert_eq!(code(&lax), 0);
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(code(&run(dir.path(), &strict, None)), 3);
}

#[test]
fn single_thread_output_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--check", "T6.5", "--format", "json"];
    let strip = |o: &Output| -> Vec<serde_json::Value> {
        let mut v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
        for x in &mut v {
            x.as_object_mut().unwrap().remove("runtime_ms");
        }
        v
    };
    let many = bin().args(args).current_dir(dir.path()).output().unwrap();
    let one = bin().args(args).current_dir(dir.path()).env("CLUTTERLAB_THREADS", "1").output().unwrap();
    assert_eq!(code(&many), 0);
    assert_eq!(strip(&many), strip(&one));
}

#[test]
fn emitted_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(dir.path(), &["gen", "cactus", "C5", "--seed", "3"], None);
    std::fs::write(dir.path().join("g.json"), &g.stdout).unwrap();
    let again = run(dir.path(), &["gen", "cactus", "C5", "--seed", "3"], None);
    assert_eq!(g.stdout, again.stdout);

    let c = run(dir.path(), &["clutter", "-i", "g.json", "-r", "2"], None);
    std::fs::write(dir.path().join("c.json"), &c.stdout).unwrap();
    let c2 = run(dir.path(), &["clutter", "--clutter", "c.json"], None);
    assert_eq!(c.stdout, c2.stdout);

    let i = run(dir.path(), &["ideal", "--graph", "g.json", "-r", "2"], None);
    std::fs::write(dir.path().join("i.json"), &i.stdout).unwrap();
    let i2 = run(dir.path(), &["ideal", "--ideal", "i.json"], None);
    assert_eq!(i.stdout, i2.stdout);

    let cert = run(dir.path(), &["certify", "--clutter", "c.json"], None);
    assert_eq!(code(&cert), 0, "{}", String::from_utf8_lossy(&cert.stderr));
    let v: serde_json::Value = serde_json::from_slice(&cert.stdout).unwrap();
    assert_eq!(v["source_hash"].as_str().unwrap().len(), 64);
}
