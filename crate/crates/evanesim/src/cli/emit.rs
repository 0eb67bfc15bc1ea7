//! Serialization of result bundles: plot-ready CSV (one file per table) or a
//! single JSON document mirroring the bundle. Re-running an identical config
//! produces byte-identical files: floats are printed with 17 significant
//! digits, the decimal separator is always `.`, and nothing time- or
//! machine-dependent enters the output.

use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::config::OutputFormat;
use super::run::{format_float, ResultBundle, Table, Value};

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl EmitError {
    pub fn exit_code(&self) -> i32 {
        4
    }
}

fn render_value(value: &Value) -> String {
    match value {
        Value::Float(v) => format_float(*v),
        Value::Int(v) => v.to_string(),
        Value::Text(v) => v.clone(),
    }
}

/// Render one table as CSV text.
pub fn render_csv(bundle: &ResultBundle, table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&format!("# evanesim v{}\n", bundle.provenance.version));
    out.push_str(&format!(
        "# convention={}\n",
        bundle.provenance.convention_hash
    ));
    out.push_str(&format!(
        "# config={}\n",
        serde_json::to_string(&bundle.config).expect("config serializes")
    ));
    for (key, value) in &table.notes {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    let header: Vec<String> = table.columns.iter().map(|c| c.header()).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(render_value).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Render the whole bundle as a JSON document.
pub fn render_json(bundle: &ResultBundle) -> Result<String, EmitError> {
    let mut text = serde_json::to_string_pretty(bundle)?;
    text.push('\n');
    Ok(text)
}

/// Parse a JSON document back into a bundle (the emit round trip).
pub fn parse_bundle(text: &str) -> Result<ResultBundle, serde_json::Error> {
    serde_json::from_str(text)
}

/// Write the bundle under `dir` in the bundle's format and return the paths
/// written: `<scenario>_<table>.csv` per table, or a single `<scenario>.json`.
pub fn emit(bundle: &ResultBundle, dir: &Path) -> Result<Vec<PathBuf>, EmitError> {
    std::fs::create_dir_all(dir).map_err(|source| EmitError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let scenario = bundle.config.scenario.name();
    let mut written = Vec::new();
    match bundle.config.format {
        OutputFormat::Csv => {
            for table in &bundle.tables {
                let path = dir.join(format!("{scenario}_{}.csv", table.name));
                write_atomic(&path, render_csv(bundle, table).as_bytes())?;
                written.push(path);
            }
        }
        OutputFormat::Json => {
            let path = dir.join(format!("{scenario}.json"));
            write_atomic(&path, render_json(bundle)?.as_bytes())?;
            written.push(path);
        }
    }
    Ok(written)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), EmitError> {
    let io_err = |source| EmitError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(bytes).map_err(io_err)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::parse_config;
    use crate::cli::run::run;

    fn sample_bundle(format: &str) -> ResultBundle {
        let config = parse_config(&format!(
            r#"{{"scenario": {{"ftir": {{}}}}, "outputs": ["timing"], "format": "{format}"}}"#
        ))
        .unwrap();
        run(&config).unwrap()
    }

    #[test]
    fn csv_header_and_units() {
        let bundle = sample_bundle("csv");
        let text = render_csv(&bundle, &bundle.tables[0]);
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            format!("# evanesim v{}", env!("CARGO_PKG_VERSION"))
        );
        let header = lines
            .find(|l| !l.starts_with('#'))
            .expect("has a header row");
        assert_eq!(header, "d[m],tau_t[s],tau_r[s],ratio[-]");
        // one data row with 17-significant-digit scientific floats
        let data = text.lines().last().unwrap();
        assert_eq!(data.split(',').count(), 4);
        assert!(!data.contains(';'), "separator is always a comma");
        for cell in data.split(',') {
            assert!(cell.contains('.'), "decimal point is always `.`: {cell}");
            let _: f64 = cell.parse().expect("parseable float");
        }
    }

    #[test]
    fn json_round_trip() {
        let bundle = sample_bundle("json");
        let text = render_json(&bundle).unwrap();
        let reparsed = parse_bundle(&text).unwrap();
        assert_eq!(bundle, reparsed);
    }

    #[test]
    fn emit_writes_named_files() {
        let bundle = sample_bundle("csv");
        let dir = tempfile::tempdir().unwrap();
        let paths = emit(&bundle, dir.path()).unwrap();
        assert_eq!(paths.len(), 1);
        assert!(paths[0].ends_with("ftir_timing.csv"));
        assert!(paths[0].exists());
    }

    #[test]
    fn rerun_is_byte_identical() {
        let a = sample_bundle("csv");
        let b = sample_bundle("csv");
        assert_eq!(
            render_csv(&a, &a.tables[0]),
            render_csv(&b, &b.tables[0])
        );
    }

    #[test]
    fn unwritable_path_is_an_io_error() {
        let bundle = sample_bundle("csv");
        let err = emit(&bundle, Path::new("/proc/evanesim-no-such-dir")).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }
}
