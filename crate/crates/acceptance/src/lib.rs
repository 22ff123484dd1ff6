//! Runner for named pass/fail checks.
//!
//! Each check runs in isolation; a panic counts as a failure and does not stop
//! the remaining checks.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    /// `PASS name (12 ms): detail`
    pub fn line(&self) -> String {
        format!(
            "{} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_millis(),
            self.detail
        )
    }
}

/// Runs `check`; `Ok` carries a summary of what was verified, `Err` the reason
/// for failure.
pub fn run(name: &'static str, check: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(check));
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(reason)) => (false, reason),
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".to_owned());
            (false, format!("panic: {message}"))
        }
    };
    Outcome {
        name,
        passed,
        detail,
        elapsed,
    }
}

/// Turns a failed condition into an `Err` with `message`.
pub fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}
