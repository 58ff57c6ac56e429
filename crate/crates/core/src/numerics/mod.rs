//! Extended-precision arithmetic with rigorous error tracking.

pub mod elementary;
pub mod enclosure;
pub mod float;
pub mod mag;
pub mod series;

pub use enclosure::{enclose_fn, parse_decimal, ElementaryFn, Enclosure};
pub use float::{ExtendedReal, Precision, Rounded};
pub use mag::Mag;
pub use series::{default_target, sum_series, SeriesSpec};
