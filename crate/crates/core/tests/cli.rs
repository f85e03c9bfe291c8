use std::process::{Command, Output};

fn cmlattice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmlattice"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn cmlattice")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_split_fixture() {
    let o = cmlattice(&["check", "fixtures/g6-split.toml"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("chi0: [3π0 - ρ0 - 2ιρ0]"), "{s}");
    assert!(s.contains("weil_type.chi0 ="));
}

#[test]
fn example_ordinary_curve() {
    let o = cmlattice(&["example", "ell-ordinary"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P(A₀)=L(A₀); no exotic Tate classes"));
}

#[test]
fn atlas_c6() {
    let o = cmlattice(&["atlas", "C6", "HQ"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("atlas.classes = 2"), "{s}");
    assert!(s.contains("diagram: exact, commutes"));
}

#[test]
fn atlas_rejects_bad_subgroup() {
    let o = cmlattice(&["atlas", "C6", "{t}"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cmlattice(&["atlas", "C7", "trivial"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_exit_two() {
    let o = cmlattice(&["check", "fixtures/no-such-file.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-file"));
    let o = cmlattice(&["example", "no-such-fixture"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cmlattice(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn one_bad_file_among_good_ones() {
    let o = cmlattice(&["check", "fixtures/ell-ss.toml", "Cargo.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("scenario ell-ss"));
}

#[test]
fn selftest_passes() {
    let o = cmlattice(&["selftest"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.ends_with("selftest passed\n"));
}

#[test]
fn reports_are_deterministic() {
    for name in cmlattice::fixtures::names() {
        let a = stdout(&cmlattice(&["example", name]));
        let b = stdout(&cmlattice(&["example", name]));
        assert_eq!(a, b, "{name}");
        let path = format!("fixtures/{name}.toml");
        assert_eq!(stdout(&cmlattice(&["check", &path])), a, "{name}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(cmlattice(&["--help"]).status.code(), Some(0));
    assert_eq!(cmlattice(&["--version"]).status.code(), Some(0));
}

// Regenerate with `CMLATTICE_BLESS=1 cargo test --test cli golden`.
#[test]
fn golden_reports() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("CMLATTICE_BLESS").is_some();
    for name in cmlattice::fixtures::names() {
        let got = stdout(&cmlattice(&["example", name]));
        let path = dir.join(format!("{name}.txt"));
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap();
        assert_eq!(got, want, "{name} differs from {}", path.display());
    }
}
