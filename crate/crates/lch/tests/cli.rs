use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use lch::fixtures::FIXTURES;
use lch::json::{from_json, to_json, MorphismDoc, SquareDoc};
use lch::text::{parse_dga, print_dga};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut full = vec!["lch"];
    full.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lch::cli::run(full, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmpdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lch-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn binary_pipeline_counts_trefoil_augmentations() {
    let exe = env!("CARGO_BIN_EXE_lch");
    let first = Command::new(exe).args(["knot", "dga", &fixture("trefoil.front"), "--t1"]).output().unwrap();
    assert!(first.status.success());
    let mut second = Command::new(exe)
        .args(["aug", "count", "-", "--field", "F2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    second.stdin.take().unwrap().write_all(&first.stdout).unwrap();
    let out = second.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "5\n");
}

#[test]
fn thread_variable_must_be_positive() {
    let exe = env!("CARGO_BIN_EXE_lch");
    let dga = fixture("example_l.dga");
    for (v, code) in [("0", 2), ("many", 2), ("3", 0)] {
        let s = Command::new(exe).args(["dga", "check", &dga]).env("LCH_THREADS", v).status().unwrap();
        assert_eq!(s.code(), Some(code), "LCH_THREADS={v}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"], "").0, 0);
    assert_eq!(run(&["--version"], "").0, 0);
    assert_eq!(run(&["no-such-command"], "").0, 2);
    assert_eq!(run(&["dga", "check", "/nonexistent/file.dga"], "").0, 2);

    let (code, _, err) = run(&["dga", "check", "-"], "ring F2\ngen x 0\nd x = ?\n");
    assert_eq!(code, 2);
    assert!(err.contains("<stdin>:3:") || err.contains("-:3:"), "{err}");

    let bad = "ring F2\ngen y 1\ngen z 2\nd y = 1\nd z = y\n";
    let (code, out, _) = run(&["dga", "check", "-"], bad);
    assert_eq!(code, 1);
    assert!(out.contains("d^2 = 0: false"));

    let (code, _, err) = run(&["--max-nodes", "1", "aug", "count", &fixture("trefoil.front"), "--t1"], "");
    assert_eq!(code, 3, "{err}");

    let (code, _, err) = run(&["aug", "count", &fixture("trefoil.front")], "");
    assert_eq!(code, 2);
    assert!(err.contains("--t1"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["--json", "poincare", "FILE"],
        vec!["--json", "split", "FILE", "--at", "2", "--t1"],
        vec!["--json", "aug", "good", "FILE", "--field", "F4"],
    ] {
        let f = fixture("trefoil.front");
        let args: Vec<&str> = args.iter().map(|a| if *a == "FILE" { f.as_str() } else { a }).collect();
        let (c1, o1, _) = run(&args, "");
        let (c2, o2, _) = run(&args, "");
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(o1, o2);
        let v: serde_json::Value = serde_json::from_str(&o1).unwrap();
        assert_eq!(v["schema"], "lch.report/1");
        assert_eq!(v["provenance"]["inputs"][0], f.as_str());
    }
}

#[test]
fn printed_dgas_round_trip() {
    let mut texts: Vec<String> = Vec::new();
    for f in FIXTURES.iter().filter(|f| f.file.ends_with(".dga")) {
        texts.push(print_dga(&parse_dga(f.text, f.file).unwrap()));
    }
    for k in lch::fixtures::KNOTS {
        let (code, out, _) = run(&["knot", "dga", &fixture(&format!("{k}.front"))], "");
        assert_eq!(code, 0);
        texts.push(out);
    }
    for t in texts {
        let again = print_dga(&parse_dga(&t, "printed").unwrap());
        assert_eq!(again, t);
    }
}

#[test]
fn split_report_feeds_later_commands() {
    let dir = tmpdir("split");
    let (code, doc, _) = run(&["split", &fixture("trefoil.front"), "--at", "2", "--t1"], "");
    assert_eq!(code, 0);
    let bare = write(&dir, "bare.json", &doc);
    let (_, report, _) = run(&["--json", "split", &fixture("trefoil.front"), "--at", "2", "--t1"], "");
    let wrapped = write(&dir, "wrapped.json", &report);
    for sq in [&bare, &wrapped] {
        assert_eq!(run(&["mv", sq, "--all"], "").0, 0);
        assert_eq!(run(&["char-pushout", sq], "").0, 0);
    }
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["same_as_diagram"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mediate_recovers_identity_and_rejects_disagreement() {
    let dir = tmpdir("mediate");
    let (_, doc, _) = run(&["split", &fixture("trefoil.front"), "--at", "2", "--t1"], "");
    let sq = from_json::<SquareDoc>(&doc).unwrap().to_square().unwrap();
    let sqp = write(&dir, "sq.json", &doc);
    let h1 = write(&dir, "h1.json", &to_json(&MorphismDoc::from_morphism(&sq.i1)));
    let h2 = write(&dir, "h2.json", &to_json(&MorphismDoc::from_morphism(&sq.i2)));
    let (code, out, err) = run(&["mediate", &sqp, "--h1", &h1, "--h2", &h2], "");
    assert_eq!(code, 0, "{err}");
    let h = from_json::<MorphismDoc>(&out).unwrap().to_morphism().unwrap();
    for (i, x) in h.images.iter().enumerate() {
        assert_eq!(h.target.format_element(x), h.target.name(i as u32));
    }

    // Zero on A2 disagrees with h1 on the shared generators.
    let mut bad = MorphismDoc::from_morphism(&sq.i2);
    for v in bad.map.images.values_mut() {
        *v = "0".into();
    }
    let h2b = write(&dir, "h2b.json", &to_json(&bad));
    let (code, _, err) = run(&["mediate", &sqp, "--h1", &h1, "--h2", &h2b], "");
    assert_eq!(code, 1, "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn connect_sum_checks() {
    let (code, out, _) = run(&["csum-check", &fixture("trefoil.front"), &fixture("unknot.front")], "");
    assert_eq!(code, 0);
    assert!(out.contains("bijection with pairs: true"));
    assert!(out.lines().filter(|l| l.contains("P1 =")).all(|l| l.ends_with("minus_t_n")));

    let (l, s) = (fixture("example_l.dga"), fixture("sphere3.dga"));
    let (code, out, _) = run(&["csum-check", &l, &s, "--dim", "3"], "");
    assert_eq!(code, 0);
    assert!(out.contains("plus_t_nm1"));

    let c = fixture("example_l_sphere.corrections");
    let (code, out, _) = run(&["csum-abstract", &l, &s, "--dim", "3", "--corrections", &c], "");
    assert_eq!(code, 0);
    assert!(out.contains("d a = x + z + h"));
    assert_eq!(run(&["csum-abstract", &l, &s, "--dim", "1"], "").0, 2);
}

#[test]
fn fixtures_subcommands() {
    let (code, out, _) = run(&["fixtures", "list"], "");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), FIXTURES.len());
    let (code, out, _) = run(&["fixtures", "show", "trefoil"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("front") || out.contains("\nfront"));
    let (code, out, _) = run(&["fixtures", "run", "--only", "3"], "");
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("[PASS]") && out.contains(" 3 unknot"), "{out}");
    assert_eq!(run(&["fixtures", "run", "--only", "99"], "").0, 2);

    let dir = tmpdir("write");
    assert_eq!(run(&["fixtures", "write", dir.to_str().unwrap()], "").0, 0);
    for f in FIXTURES {
        assert_eq!(std::fs::read_to_string(dir.join(f.file)).unwrap(), f.text);
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn char_normal_forms() {
    let (code, out, _) = run(&["char-nf", &fixture("unknot.front"), "--expr", "t*t + 1", "--bound", "4"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("0\n"), "{out}");
    let (code, _, _) = run(&["char-nf", &fixture("unknot.front"), "--expr", "t*t*t*t*t", "--bound", "2"], "");
    assert_eq!(code, 2);
}

#[test]
fn square_fixtures_match_regenerated_splits() {
    for k in ["unknot", "trefoil"] {
        let (code, out, _) = run(&["split", &fixture(&format!("{k}.front")), "--t1"], "");
        assert_eq!(code, 0);
        let shipped = fixture(&format!("dipped_{k}.square.json"));
        assert_eq!(out, std::fs::read_to_string(&shipped).unwrap(), "{k}");
        let (code, out, _) = run(&["mv", &shipped], "");
        assert_eq!(code, 0);
        let degrees: Vec<&str> = out.lines().filter(|l| l.trim_start().starts_with("degree")).collect();
        assert!(!degrees.is_empty() && degrees.iter().all(|l| l.ends_with("exact: true")), "{out}");
    }
}
