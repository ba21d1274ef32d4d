//! Size guard for computations that enumerate `Irr(S_n)` or its classes.
//!
//! The default bound is `n ≤ 10` (at most 42 partitions). The environment
//! variable `TENSORWALK_MAX_N` raises or lowers it; values above
//! [`HARD_MAX_N`] are clamped because class sizes are stored as `u64`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: usize = 10;

/// `20!` is the largest factorial that fits in a `u64`.
pub const HARD_MAX_N: usize = 20;

pub const MAX_N_ENV: &str = "TENSORWALK_MAX_N";

static MAX_N: OnceLock<usize> = OnceLock::new();

/// The active bound, read once from the environment.
pub fn max_n() -> usize {
    *MAX_N.get_or_init(|| match std::env::var(MAX_N_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(v) => {
                let v = v.min(HARD_MAX_N);
                if v != DEFAULT_MAX_N {
                    log::warn!(
                        "{MAX_N_ENV}={raw}: multi-route size guard set to n <= {v} \
                         (default {DEFAULT_MAX_N}); large n may be very slow"
                    );
                }
                v
            }
            Err(_) => {
                log::warn!("ignoring unparsable {MAX_N_ENV}={raw:?}");
                DEFAULT_MAX_N
            }
        },
        Err(_) => DEFAULT_MAX_N,
    })
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    let max = max_n();
    if n == 0 || n > max {
        return Err(Error::SizeLimit { n, max });
    }
    Ok(())
}
