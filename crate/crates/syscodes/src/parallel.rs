//! Rayon drivers. Results always come back in input order.

use rayon::prelude::*;
use syscodes_core::hyperbolic::{self, HyperbolicError, MinTraceReport};
use syscodes_core::surface_family::{bound_report, BoundReport, FamilyDescriptor, FamilyError, FreedomCheck};

/// Environment variable capping worker threads; `0` or unset means one per core.
pub const THREADS_VAR: &str = "SYSCODES_THREADS";

pub fn thread_count() -> Result<usize, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{THREADS_VAR} must be a nonnegative integer, got {v:?}")),
    }
}

pub fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Builds every member and its bound report.
pub fn scan(
    pool: &rayon::ThreadPool,
    descriptors: &[FamilyDescriptor],
    freedom: Option<FreedomCheck>,
) -> Vec<Result<BoundReport, FamilyError>> {
    pool.install(|| {
        descriptors
            .par_iter()
            .map(|d| bound_report(&d.build()?, freedom))
            .collect()
    })
}

/// [`hyperbolic::min_trace_verify`] with the enumeration split over `a`.
pub fn min_trace(pool: &rayon::ThreadPool, p: i64, n: i64, bound: i64) -> Result<MinTraceReport, HyperbolicError> {
    hyperbolic::check_inputs(p, n, bound)?;
    let slices: Vec<_> = pool.install(|| {
        (-bound..=bound)
            .into_par_iter()
            .map(|a| hyperbolic::enumerate_slice(p, n, bound, a))
            .collect()
    });
    let elements: Vec<_> = slices.into_iter().flatten().collect();
    Ok(MinTraceReport::from_elements(p, n, bound, &elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let pool = pool(3);
        for (p, n, b) in [(3, 2, 8), (7, 3, 10), (11, 4, 6)] {
            assert_eq!(
                min_trace(&pool, p, n, b).unwrap(),
                hyperbolic::min_trace_verify(p, n, b).unwrap()
            );
        }
        assert!(min_trace(&pool, 5, 2, 3).is_err());
        assert!(min_trace(&pool, 3, 2, 0).is_err());
        let ds: Vec<FamilyDescriptor> = ["torus:3", "rp2", "torus:2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let reports: Vec<_> = scan(&pool, &ds, None).into_iter().map(Result::unwrap).collect();
        assert_eq!(reports[0].descriptor, "torus:3");
        assert_eq!(reports[1].descriptor, "rp2");
        assert_eq!(reports[2].descriptor, "torus:2");
    }
}
