//! The worker pool shared by harness evaluations.

use std::sync::OnceLock;

pub const THREADS_ENV: &str = "CARTAN_FORGE_THREADS";

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            b = b.num_threads(n.max(1));
        }
        b.build().expect("thread pool")
    })
}

/// Runs `f` inside the pool, whose size is capped by `CARTAN_FORGE_THREADS`.
pub fn run<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    pool().install(f)
}

pub fn threads() -> usize {
    pool().current_num_threads()
}
