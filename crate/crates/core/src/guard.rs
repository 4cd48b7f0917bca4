//! Process-wide total-degree guardrail.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: u32 = 64;
pub const ENV_VAR: &str = "TRANSCEND_MAX_DEGREE";

fn cell() -> &'static AtomicU32 {
    static CELL: OnceLock<AtomicU32> = OnceLock::new();
    CELL.get_or_init(|| {
        let from_env = std::env::var(ENV_VAR).ok().and_then(|v| v.trim().parse().ok());
        AtomicU32::new(from_env.unwrap_or(DEFAULT_MAX_DEGREE))
    })
}

pub fn max_degree() -> u32 {
    cell().load(Ordering::Relaxed)
}

pub fn set_max_degree(d: u32) {
    cell().store(d, Ordering::Relaxed);
}

/// Fails when `degree` exceeds the current limit.
pub fn check(degree: u32) -> Result<()> {
    let limit = max_degree();
    if degree > limit {
        return Err(Error::DegreeGuardExceeded { found: degree, limit });
    }
    Ok(())
}
