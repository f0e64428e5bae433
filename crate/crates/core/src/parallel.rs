//! Thread-pool sizing for parallel sweeps.

use rayon::ThreadPoolBuilder;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "QDEFORM_THREADS";

/// Runs `f` on a pool capped by `QDEFORM_THREADS`, or on the global pool
/// when the variable is unset or invalid.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
