// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::Path;

use multauto::automaton::load_dfao;
use multauto::{fixtures, Dfao, Error};

/// A failure mapped to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            code: 2,
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Hypothesis(_)
            | Error::SpacingTooSmall { .. }
            | Error::TooLarge(_)
            | Error::NotMultiplicative { .. } => 1,
            _ => 2,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::usage(format!("parse error: {e}"))
    }
}

/// A DFAO file if `input` names an existing path, else a fixture.
pub fn load(input: &str) -> Result<Dfao, Failure> {
    if Path::new(input).exists() {
        let text = std::fs::read_to_string(input)?;
        return Ok(load_dfao(&text)?);
    }
    fixtures::by_name(input).ok_or_else(|| {
        Failure::usage(format!(
            "`{input}` is neither a file nor a fixture (try `multauto fixtures`)"
        ))
    })
}

pub fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}
