//! JSON serialization helpers shared by the reports.

use num_rational::BigRational;
use serde::Serializer;

pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}
