//! Exit codes: 2 invalid input, 3 unsatisfiable query, 4 internal invariant
//! violation.

use std::process::ExitCode;

use serde_json::json;
use wiener_core::Error;

pub const INVALID: u8 = 2;
pub const UNSATISFIABLE: u8 = 3;
pub const INVARIANT: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub reason: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: INVALID,
            reason: "invalid-input",
            message: message.into(),
        }
    }

    pub fn internal(message: impl ToString) -> Failure {
        Failure {
            code: INVARIANT,
            reason: "invariant",
            message: message.to_string(),
        }
    }

    pub fn report(&self, as_json: bool) -> ExitCode {
        if as_json {
            println!(
                "{}",
                json!({ "error": self.reason, "code": self.code, "message": self.message })
            );
        }
        eprintln!("error ({}): {}", self.reason, self.message);
        ExitCode::from(self.code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let (code, reason) = match e {
            Error::ParityViolation { .. } => (UNSATISFIABLE, "parity"),
            Error::OutOfRange { .. } => (UNSATISFIABLE, "out-of-range"),
            Error::NotCovered { .. } => (UNSATISFIABLE, "not-covered"),
            Error::MoveInvariant { .. } | Error::WitnessMismatch { .. } | Error::Overflow(_) => {
                (INVARIANT, "invariant")
            }
            _ => (INVALID, "invalid-input"),
        };
        Failure {
            code,
            reason,
            message: e.to_string(),
        }
    }
}
