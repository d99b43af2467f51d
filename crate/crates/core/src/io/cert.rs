use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CERT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: u32,
    kind: String,
    body: T,
}

pub fn write_cert<T: Serialize>(kind: &str, body: &T) -> Result<String> {
    let env = Envelope { version: CERT_VERSION, kind: kind.to_string(), body };
    Ok(serde_json::to_string_pretty(&env)? + "\n")
}

pub fn read_cert<T: DeserializeOwned>(text: &str, kind: &str) -> Result<T> {
    let env: Envelope<T> = serde_json::from_str(text)?;
    if env.version != CERT_VERSION {
        return Err(Error::input(format!("certificate version {} (expected {CERT_VERSION})", env.version)));
    }
    if env.kind != kind {
        return Err(Error::input(format!("certificate holds `{}`, expected `{kind}`", env.kind)));
    }
    Ok(env.body)
}
