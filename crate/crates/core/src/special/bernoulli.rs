//! Exact Bernoulli numbers via tangent numbers.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

static TABLE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();

/// Tangent numbers `T_1..T_n` (Brent–Harvey integer recurrence).
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

/// `B_{2k}` for `k >= 0` (`B_0 = 1`, `B_2 = 1/6`, ...).
pub fn bernoulli_2k(k: usize) -> BigRational {
    let table = TABLE.get_or_init(|| Mutex::new(Vec::new()));
    {
        let t = table.lock().unwrap();
        if k < t.len() {
            return t[k].clone();
        }
    }
    let n = (k + 1).max(64).next_power_of_two();
    let tan = tangent_numbers(n);
    let mut fresh = Vec::with_capacity(n + 1);
    fresh.push(BigRational::one());
    for (m, tm) in tan.iter().enumerate().skip(1) {
        // B_{2m} = (-1)^{m-1} 2m T_m / (4^m (4^m - 1))
        let four_m = BigInt::one() << (2 * m);
        let den = &four_m * (&four_m - 1u32);
        let mut b = BigRational::new(tm * BigInt::from(2 * m), den);
        if m % 2 == 0 {
            b = -b;
        }
        fresh.push(b);
    }
    let mut t = table.lock().unwrap();
    if t.len() < fresh.len() {
        *t = fresh;
    }
    t[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_values() {
        assert_eq!(bernoulli_2k(0), q(1, 1));
        assert_eq!(bernoulli_2k(1), q(1, 6));
        assert_eq!(bernoulli_2k(2), q(-1, 30));
        assert_eq!(bernoulli_2k(3), q(1, 42));
        assert_eq!(bernoulli_2k(6), q(691, -2730));
        assert_eq!(bernoulli_2k(10), q(-174611, 330));
    }

    #[test]
    fn table_grows_consistently() {
        let b100 = bernoulli_2k(100);
        let b3 = bernoulli_2k(3);
        assert_eq!(b3, q(1, 42));
        assert_eq!(bernoulli_2k(100), b100);
    }
}
