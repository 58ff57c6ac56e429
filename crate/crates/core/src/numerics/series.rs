//! Summation of infinite series with rigorous tail bounds.

use super::enclosure::Enclosure;
use super::float::Precision;
use super::mag::Mag;
use crate::error::{Error, Result};

/// An infinite series `Σ_{k ≥ start} term(k)`.
///
/// `tail(n)` must bound `|Σ_{k ≥ n} term(k)|` for every `n ≥ start` where it
/// returns `Some`, and must be non-increasing in `n`. Summation stops at the
/// first `n` whose tail is at most `target / 2`.
pub struct SeriesSpec<T, B> {
    pub start: u64,
    pub max_index: u64,
    pub target: Mag,
    pub term: T,
    pub tail: B,
    pub label: &'static str,
}

impl<T, B> SeriesSpec<T, B>
where
    T: FnMut(u64) -> Result<Enclosure>,
    B: Fn(u64) -> Option<Mag>,
{
    pub fn new(label: &'static str, start: u64, term: T, tail: B) -> Self {
        SeriesSpec {
            start,
            max_index: 10_000,
            target: Mag::ZERO,
            term,
            tail,
            label,
        }
    }

    pub fn target(mut self, target: Mag) -> Self {
        self.target = target;
        self
    }

    pub fn max_index(mut self, max_index: u64) -> Self {
        self.max_index = max_index;
        self
    }
}

/// Sums in ascending index order. The result radius is the accumulated
/// term/rounding radius plus the tail bound at the stopping index.
pub fn sum_series<T, B>(mut spec: SeriesSpec<T, B>, prec: Precision) -> Result<Enclosure>
where
    T: FnMut(u64) -> Result<Enclosure>,
    B: Fn(u64) -> Option<Mag>,
{
    let goal = spec.target.mul_2exp(-1);
    let mut acc = Enclosure::zero(prec);
    let mut n = spec.start;
    loop {
        let tail = (spec.tail)(n);
        if let Some(t) = tail {
            if t <= goal {
                return Ok(acc.add_error(t));
            }
        }
        if n > spec.max_index {
            let best = tail.map(|t| acc.add_error(t));
            return Err(Error::exhausted(
                format!("{} (stopped at index {n})", spec.label),
                best,
            ));
        }
        acc = acc.add_enc(&(spec.term)(n)?);
        n += 1;
    }
}

/// Default target radius for a working precision: `2^-bits`.
pub fn default_target(prec: Precision) -> Mag {
    Mag::pow2(-(prec.bits() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ExtendedReal;

    #[test]
    fn geometric_series() {
        let prec = Precision::from_digits(60);
        let spec = SeriesSpec::new(
            "geometric",
            1,
            |k| Ok(Enclosure::exact(ExtendedReal::one().mul_2exp(-(k as i64)), prec)),
            |n| Some(Mag::pow2(1 - n as i64)),
        )
        .target(Mag::pow2(-170))
        .max_index(400);
        let s = sum_series(spec, prec).unwrap();
        assert!(s.contains_point(&ExtendedReal::one()));
        assert!(s.rad() <= Mag::pow2(-166));
    }

    #[test]
    fn empty_series() {
        let prec = Precision::from_digits(60);
        let spec = SeriesSpec::new(
            "empty",
            5,
            |_| panic!("no terms expected"),
            |_| Some(Mag::ZERO),
        )
        .max_index(4);
        let s = sum_series(spec, prec).unwrap();
        assert!(s.mid().is_zero() && s.rad().is_zero());
    }

    #[test]
    fn exhaustion_carries_best_enclosure() {
        let prec = Precision::from_digits(30);
        let spec = SeriesSpec::new(
            "harmonic-squares",
            1,
            |k| Enclosure::one(prec).div(&Enclosure::from_i64((k * k) as i64, prec)),
            |n| Some(Mag::from_u64(2) / Mag::from_u64(n)),
        )
        .target(Mag::pow2(-100))
        .max_index(50);
        match sum_series(spec, prec) {
            Err(Error::PrecisionExhausted { best: Some(b), .. }) => {
                assert!((b.mid_f64() - 1.6449).abs() < 0.1);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }
}
