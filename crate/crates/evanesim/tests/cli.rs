//! End-to-end tests of the `evanesim` binary: command grammar, file formats,
//! exit codes, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn evanesim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evanesim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name))
        .unwrap_or_else(|e| panic!("missing {name}: {e}"))
}

#[test]
fn timing_and_gh_smoke_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = evanesim(
        &["ftir", "--outputs", "timing,gh", "--out", "run"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let timing = read(&dir.path().join("run"), "ftir_timing.csv");
    let mut lines = timing.lines();
    assert!(lines.next().unwrap().starts_with("# evanesim v"));
    let header = lines.find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "d[m],tau_t[s],tau_r[s],ratio[-]");
    let row: Vec<f64> = timing
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    // saturation-scale delay and order-one universal ratio at the defaults
    assert!(row[1] > 10e-12 && row[1] < 1e-9, "tau_t = {}", row[1]);
    assert!(row[3] > 1.0 / 3.0 && row[3] < 3.0, "ratio = {}", row[3]);

    let gh = read(&dir.path().join("run"), "ftir_gh.csv");
    assert!(gh.lines().any(|l| l.starts_with("angle[rad],D[m]")));
}

#[test]
fn pulse_output_carries_three_signals_and_arrivals() {
    let dir = tempfile::tempdir().unwrap();
    let out = evanesim(
        &["ftir", "--outputs", "pulse", "--gap", "32.8mm", "--out", "run"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let pulse = read(&dir.path().join("run"), "ftir_pulse.csv");
    let header = pulse.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(
        header,
        "t[s],incident[-],reflected[-],transmitted[-],env_incident[-],env_reflected[-],env_transmitted[-]"
    );
    for estimator in ["peak", "centroid", "half_max_front"] {
        for signal in ["incident", "reflected", "transmitted"] {
            let key = format!("# arrival_{estimator}_{signal}[s]");
            assert!(pulse.lines().any(|l| l.starts_with(&key)), "missing {key}");
        }
    }
    assert!(pulse.lines().filter(|l| !l.starts_with('#')).count() > 1000);
}

#[test]
fn sweep_rows_follow_the_axis() {
    let dir = tempfile::tempdir().unwrap();
    let out = evanesim(
        &[
            "ftir",
            "--sweep",
            "gap:1mm:60mm:16",
            "--outputs",
            "timing",
            "--out",
            "run",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let timing = read(&dir.path().join("run"), "ftir_timing.csv");
    let rows: Vec<&str> = timing
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("gap["))
        .collect();
    assert_eq!(rows.len(), 16);
    let gaps: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn identical_runs_are_byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args_base = [
        "waveguide",
        "--sweep",
        "length:1mm:80mm:12",
        "--outputs",
        "timing,hartman",
    ];
    let mut one = args_base.to_vec();
    one.extend(["--workers", "1", "--out", "one"]);
    let mut four = args_base.to_vec();
    four.extend(["--workers", "4", "--out", "four"]);
    assert!(evanesim(&one, dir.path()).status.success());
    assert!(evanesim(&four, dir.path()).status.success());
    for table in ["timing", "hartman"] {
        let a = read(&dir.path().join("one"), &format!("waveguide_{table}.csv"));
        let b = read(&dir.path().join("four"), &format!("waveguide_{table}.csv"));
        // only the output directory may differ in the config echo
        let strip = |text: &str| {
            text.lines()
                .filter(|l| !l.starts_with("# config"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(&a), strip(&b), "{table} differs across worker counts");
    }
}

#[test]
fn json_format_emits_one_parseable_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = evanesim(
        &[
            "quantum",
            "--energy",
            "0.5",
            "--height",
            "1",
            "--length",
            "6",
            "--outputs",
            "timing,hartman",
            "--format",
            "json",
            "--out",
            "run",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = read(&dir.path().join("run"), "quantum.json");
    let bundle = evanesim::cli::emit::parse_bundle(&text).unwrap();
    assert_eq!(bundle.tables.len(), 2);
    assert_eq!(bundle.tables[0].columns[1].header(), "tau_t[nat]");
}

#[test]
fn config_file_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.json"),
        r#"{"scenario": {"acoustic": {"f0": "1kHz", "periods": 8}},
            "outputs": ["hartman"], "out": "from_config"}"#,
    )
    .unwrap();
    let out = evanesim(&["config", "run.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let hartman = read(&dir.path().join("from_config"), "acoustic_hartman.csv");
    let ratio_line = hartman
        .lines()
        .find(|l| l.starts_with("# universal_ratio"))
        .unwrap();
    let ratio: f64 = ratio_line.split(" = ").nth(1).unwrap().parse().unwrap();
    assert!(ratio > 1.0 / 3.0 && ratio < 3.0, "ratio = {ratio}");
}

#[test]
fn exit_code_2_for_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    // unknown key in a config document
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"scenario": {"ftir": {"polarisation_mode": "TM"}}, "outputs": ["timing"]}"#,
    )
    .unwrap();
    let out = evanesim(&["config", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("polarisation_mode"), "stderr: {stderr}");

    // malformed flag value
    let out = evanesim(&["ftir", "--gap", "32.8GHz"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_3_for_numeric_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    // below the critical angle there is no Goos-Hänchen shift to report
    let out = evanesim(&["ftir", "--angle", "30deg", "--outputs", "gh"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    // pulse timing is not defined for the natural-units scenario
    let out = evanesim(&["quantum", "--outputs", "pulse"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_code_4_for_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = evanesim(
        &["ftir", "--outputs", "timing", "--out", "/proc/evanesim-cannot-write"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn workers_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_evanesim"))
        .args([
            "ftir",
            "--sweep",
            "gap:1mm:30mm:8",
            "--outputs",
            "timing",
            "--out",
            "env_run",
        ])
        .env("EVANESIM_WORKERS", "2")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("env_run/ftir_timing.csv").exists());
}
