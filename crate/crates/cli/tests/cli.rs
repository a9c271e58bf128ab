use std::io::Write;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn alpharep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alpharep"))
        .args(args)
        .env_remove("ALPHAREP_WORKERS")
        .output()
        .expect("spawn alpharep")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = alpharep(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

struct TempDoc(std::path::PathBuf);

impl TempDoc {
    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempDoc {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn temp_doc(text: &str) -> TempDoc {
    static N: AtomicUsize = AtomicUsize::new(0);
    let path = std::env::temp_dir().join(format!(
        "alpharep-cli-{}-{}.json",
        std::process::id(),
        N.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    TempDoc(path)
}

#[test]
fn prism_chromatic_both_methods() {
    let prism = data("prism.json");
    for method in ["alpha", "whitney"] {
        let v = json(&["--json", "chi", &prism, "--method", method]);
        assert_eq!(v["value"], "4", "{method}");
    }
    let v = json(&["--json", "chi", &prism, "--field", "5"]);
    assert_eq!(v["value"], "384");
    assert_eq!(v["field"], "5");
}

#[test]
fn restricted_and_cross_checked_searches_agree() {
    let prism = data("prism.json");
    let full = stdout(&alpharep(&["--json", "chi", &prism]));
    assert_eq!(stdout(&alpharep(&["--json", "chi", &prism, "--restricted"])), full);
    assert_eq!(stdout(&alpharep(&["--json", "chi", &prism, "--cross-check"])), full);
}

#[test]
fn u24_flows() {
    let u24 = data("u24.json");
    for method in ["direct", "alpha3"] {
        assert_eq!(json(&["--json", "flow", &u24, "--method", method])["value"], "8", "{method}");
    }
    let o = alpharep(&["flow", &u24, "--method", "alpha3", "--cross-check"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("flow(5) = 8"));
}

#[test]
fn non_unimodular_representation_warns() {
    let o = alpharep(&["chi", &data("u24.json"), "--field", "5"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = alpharep(&["chi", &data("prism.json")]);
    assert!(o.stderr.is_empty());
}

#[test]
fn tait_methods() {
    for file in ["prism.json", "prism_faces.json"] {
        for method in ["direct", "heawood", "alpha"] {
            assert_eq!(json(&["--json", "tait", &data(file), "--method", method])["value"], "6");
        }
    }
    assert_eq!(json(&["--json", "tait", &data("q3.json")])["value"], "24");
    assert_eq!(json(&["--json", "tait", &data("k4.json")])["value"], "6");
}

#[test]
fn self_loop_is_inapplicable() {
    let doc = temp_doc(r#"{"field": 3, "vertices": 2, "edges": [[1, 2], [2, 2]]}"#);
    assert_eq!(alpharep(&["chi", doc.path()]).status.code(), Some(2));
    // a coloop blocks the contraction form
    let doc = temp_doc(r#"{"field": 3, "vertices": 2, "edges": [[1, 2]]}"#);
    assert_eq!(alpharep(&["flow", doc.path(), "--method", "alpha2"]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_one() {
    let prism = data("prism.json");
    assert_eq!(alpharep(&["chi", &prism, "--field", "4"]).status.code(), Some(1));
    assert_eq!(alpharep(&["chi", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(alpharep(&["chi", &prism, "--method", "nope"]).status.code(), Some(1));
    let doc = temp_doc(r#"{"vertices": 3, "edges": [[1, 2], [2, 3]]}"#);
    assert_eq!(alpharep(&["chi", doc.path()]).status.code(), Some(1));
    let doc = temp_doc(r#"{"field": 3, "rows": [[1, 0], [1]]}"#);
    assert_eq!(alpharep(&["chi", doc.path()]).status.code(), Some(1));
    assert_eq!(alpharep(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_exceeded_exits_two() {
    let prism = data("prism.json");
    assert_eq!(alpharep(&["chi", &prism, "--budget", "100"]).status.code(), Some(2));
    assert_eq!(alpharep(&["tait", &prism, "--budget", "10"]).status.code(), Some(2));
}

#[test]
fn non_cubic_tait_is_inapplicable() {
    let doc = temp_doc(r#"{"vertices": 4, "edges": [[1, 2], [2, 3], [3, 4], [1, 4]], "faces": [[1, 2, 3, 4], [1, 2, 3, 4]]}"#);
    assert_eq!(alpharep(&["tait", doc.path()]).status.code(), Some(2));
}

#[test]
fn workers_flag_and_env_give_identical_output() {
    let prism = data("prism.json");
    let base = stdout(&alpharep(&["--json", "tait", &prism, "--workers", "1"]));
    let o = Command::new(env!("CARGO_BIN_EXE_alpharep"))
        .args(["--json", "tait", &prism])
        .env("ALPHAREP_WORKERS", "7")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), base);
}

#[test]
fn selftest_quick_passes() {
    let o = alpharep(&["--json", "selftest"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}
