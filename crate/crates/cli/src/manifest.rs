use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Record of one invocation. Two runs with equal fields other than
/// `wall_clock_ms` produce byte-identical primary output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
    /// Input path to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub output_sha256: String,
    pub wall_clock_ms: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(
        command: String,
        params: serde_json::Value,
        seed: Option<u64>,
        inputs: &[PathBuf],
        output: &[u8],
        elapsed: Duration,
    ) -> Result<Self, CliError> {
        let mut digests = BTreeMap::new();
        for p in inputs {
            let bytes = std::fs::read(p).map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?;
            digests.insert(p.display().to_string(), sha256_hex(&bytes));
        }
        Ok(RunManifest {
            command,
            params,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: digests,
            output_sha256: sha256_hex(output),
            wall_clock_ms: elapsed.as_secs_f64() * 1e3,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
