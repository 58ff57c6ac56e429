//! Shared fixtures for the benchmarks.

use cone_anomaly::lattice::ZetaNHContext;
use cone_anomaly::{Enclosure, Precision};

pub fn context(digits: u32) -> ZetaNHContext {
    ZetaNHContext::new(Precision::from_digits(digits))
}

/// `n/d` at the context's working precision.
pub fn point(ctx: &ZetaNHContext, n: i64, d: i64) -> Enclosure {
    Enclosure::from_ratio(n, d, ctx.prec)
}
