use std::fs;

use serde::de::DeserializeOwned;

use crate::CliError;

/// Resolves an input argument: `@path` or a plain path is read from disk,
/// anything starting with `{` or `[` is taken as inline JSON.
pub fn load_text(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    let path = arg.strip_prefix('@').unwrap_or(arg);
    fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{path}: {e}")))
}

pub fn load_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = load_text(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{what}: {e}")))
}

pub fn required<'a>(arg: Option<&'a String>, flag: &str) -> Result<&'a str, CliError> {
    arg.map(String::as_str)
        .ok_or_else(|| CliError::invalid(format!("missing {flag}")))
}
