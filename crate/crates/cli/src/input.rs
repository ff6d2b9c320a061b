//! Channel and initial-distribution files.
//!
//! Two formats are accepted: plain CSV with one row per input symbol and no
//! header, or JSON of the form `{"matrix": [[...], ...]}`. The format is
//! picked from the first non-blank character.

use std::fs;
use std::path::{Path, PathBuf};

use alphacap::{validate, Channel64, InitSpec, JointDistribution64, ValidateOptions};
use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Deserialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    /// Channel matrix p(y|x), CSV or JSON.
    #[arg(long, value_name = "PATH")]
    pub channel: PathBuf,

    /// Clamp tiny negative entries and rescale rows instead of rejecting them.
    #[arg(long)]
    pub renormalize: bool,
}

/// A validated channel together with the SHA-256 of the file it came from.
pub struct LoadedChannel {
    pub channel: Channel64,
    pub digest: String,
}

impl ChannelArgs {
    pub fn load(&self) -> Result<LoadedChannel> {
        let bytes = read(&self.channel)?;
        let matrix =
            parse_matrix(&bytes).with_context(|| format!("parsing {}", self.channel.display()))?;
        let opts = ValidateOptions {
            renormalize: self.renormalize,
            ..ValidateOptions::default()
        };
        let channel = validate(&matrix, opts)
            .with_context(|| format!("invalid channel {}", self.channel.display()))?;
        Ok(LoadedChannel {
            channel,
            digest: hex::encode(Sha256::digest(&bytes)),
        })
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    matrix: Vec<Vec<f64>>,
}

pub fn parse_matrix(bytes: &[u8]) -> Result<Vec<Vec<f64>>> {
    let text = std::str::from_utf8(bytes).context("file is not UTF-8")?;
    if text.trim_start().starts_with('{') {
        let m: MatrixFile = serde_json::from_str(text)?;
        return Ok(m.matrix);
    }
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|field| {
                let field = field.trim();
                field
                    .parse::<f64>()
                    .with_context(|| format!("line {}: `{field}` is not a number", i + 1))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        bail!("no rows found");
    }
    Ok(rows)
}

/// Parses `--init`: one of the named starts, or a path to a joint
/// distribution on `X × Y` in either channel format.
pub fn parse_init(spec: Option<&str>, default: InitSpec<f64>) -> Result<InitSpec<f64>> {
    match spec {
        None => Ok(default),
        Some("uniform-x") => Ok(InitSpec::UniformX),
        Some("uniform-xy") => Ok(InitSpec::UniformXY),
        Some("product") => Ok(InitSpec::ProductUniformXChannel),
        Some(path) => {
            let bytes = read(Path::new(path))?;
            let matrix = parse_matrix(&bytes).with_context(|| format!("parsing {path}"))?;
            let joint = JointDistribution64::new(matrix)
                .with_context(|| format!("invalid joint distribution {path}"))?;
            Ok(InitSpec::Custom(joint))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let csv = parse_matrix(b"0.5, 0.5\n\n0.25,0.75\n").unwrap();
        let json = parse_matrix(br#" {"matrix": [[0.5, 0.5], [0.25, 0.75]]}"#).unwrap();
        assert_eq!(csv, json);
    }

    #[test]
    fn decimal_parsing_is_exact() {
        let m = parse_matrix(b"0.259,0.463,0.278").unwrap();
        assert_eq!(m[0], vec![0.259, 0.463, 0.278]);
    }

    #[test]
    fn bad_field_names_line() {
        let err = parse_matrix(b"0.5,0.5\n0.5,abc\n").unwrap_err();
        assert!(format!("{err:#}").contains("line 2"));
    }

    #[test]
    fn empty_file_rejected() {
        assert!(parse_matrix(b"\n  \n").is_err());
    }

    #[test]
    fn named_inits() {
        let d = InitSpec::UniformX;
        assert_eq!(parse_init(None, d.clone()).unwrap(), InitSpec::UniformX);
        assert_eq!(
            parse_init(Some("product"), d.clone()).unwrap(),
            InitSpec::ProductUniformXChannel
        );
        assert!(parse_init(Some("/nonexistent/init.csv"), d).is_err());
    }
}
