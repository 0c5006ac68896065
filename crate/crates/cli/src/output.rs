//! Output plumbing: stdout or file, JSON or CSV.

use riex_core::error::Error;
use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn write_out(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Error::ConfigError(format!("writing stdout: {e}")))
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::ConfigError(format!("writing {}: {e}", path.display()))),
    }
}

pub fn json_string<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Parse a comma-separated list of floats.
pub fn parse_floats(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| Error::ConfigError(format!("bad number '{tok}'")))
        })
        .collect()
}

/// Parse a fixed-length float list.
pub fn parse_floats_n(text: &str, n: usize) -> Result<Vec<f64>, Error> {
    let v = parse_floats(text)?;
    if v.len() != n {
        return Err(Error::ConfigError(format!(
            "expected {n} comma-separated values, got {}",
            v.len()
        )));
    }
    Ok(v)
}
