//! Process-level limits.

/// Default maximum polynomial degree accepted anywhere in the library.
pub const DEFAULT_DEGREE_CAP: usize = 200;

/// Environment variable overriding [`DEFAULT_DEGREE_CAP`].
pub const DEGREE_CAP_ENV: &str = "FINFOURIER_MAX_DEGREE";

/// Current degree cap: `FINFOURIER_MAX_DEGREE` when set to a valid integer,
/// otherwise [`DEFAULT_DEGREE_CAP`].
pub fn degree_cap() -> usize {
    std::env::var(DEGREE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

pub(crate) fn check_degree(n: usize) -> crate::Result<()> {
    let cap = degree_cap();
    if n > cap {
        return Err(crate::error::param(format!(
            "degree {n} exceeds the cap {cap} (set {DEGREE_CAP_ENV} to raise it)"
        )));
    }
    Ok(())
}
