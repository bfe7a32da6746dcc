//! Optional `key = value` defaults file.
//!
//! Entries become `--key value` arguments placed right after the subcommand,
//! so anything given explicitly on the command line overrides them.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::CliError;

const SUBCOMMANDS: [&str; 4] = ["fredholm", "release", "verify", "lcurve"];

/// Parses a config file body into flag/value pairs.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(CliError::Usage(format!("config line {}: bad key `{key}`", lineno + 1)));
        }
        if key == "config" {
            return Err(CliError::Usage("config files cannot include other config files".into()));
        }
        out.push((key, value.to_string()));
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Result<Option<(usize, usize, OsString)>, CliError> {
    for (i, a) in args.iter().enumerate() {
        let Some(s) = a.to_str() else { continue };
        if s == "--config" {
            let path = args
                .get(i + 1)
                .ok_or_else(|| CliError::Usage("--config needs a path".into()))?;
            return Ok(Some((i, 2, path.clone())));
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Ok(Some((i, 1, p.into())));
        }
    }
    Ok(None)
}

/// Expands `--config FILE` in place. The returned argument list is the
/// effective command line, with the config flag itself removed.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some((at, width, path)) = config_path(&args)? else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let entries = parse_config(&text)?;
    let mut args = args;
    args.drain(at..at + width);
    let Some(sub) = args
        .iter()
        .position(|a| a.to_str().is_some_and(|s| SUBCOMMANDS.contains(&s)))
    else {
        return Err(CliError::Usage("--config must follow a subcommand".into()));
    };
    let injected = entries
        .into_iter()
        .flat_map(|(k, v)| [OsString::from(format!("--{k}")), OsString::from(v)]);
    args.splice(sub + 1..sub + 1, injected);
    Ok(args)
}
