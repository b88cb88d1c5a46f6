//! Report envelope and deterministic JSON emission.
//!
//! Floats are written with 17 significant digits in scientific notation, which
//! round-trips every `f64` exactly and never depends on the shortest-repr
//! algorithm of the JSON library. Struct fields keep declaration order.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct ReportEnvelope<P> {
    pub schema_version: u32,
    pub command: &'static str,
    pub input_digest: String,
    pub payload: P,
}

impl<P: Serialize> ReportEnvelope<P> {
    pub fn new(command: &'static str, input: &[u8], payload: P) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            input_digest: digest(input),
            payload,
        }
    }
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON of `value` with fixed-precision floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, FixedDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_with_17_digits() {
        let values = [1.0 / 3.0, 0.1, -2.5e-300, 0.0, 1e22, f64::MAX, 3f64.sqrt()];
        let text = to_json(&values);
        assert!(text.contains("3.3333333333333331e-1"));
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, values);
    }

    #[test]
    fn integers_stay_integers() {
        assert_eq!(to_json(&(3usize, -4i32)), "[3,-4]");
    }

    #[test]
    fn envelope_layout() {
        let env = ReportEnvelope::new("regular", b"abc", 0.5);
        assert_eq!(
            to_json(&env),
            r#"{"schema_version":1,"command":"regular","input_digest":"ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad","payload":5.0000000000000000e-1}"#
        );
    }
}
