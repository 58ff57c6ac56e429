//! Exact spectral combinatorics of the even spheres `S^{2p}`.
//!
//! Co-exact `q`-forms on `S^{2p}` have eigenvalues
//! `λ_{q,n} = (n+q)(n+2p-1-q)`, `n >= 1`, and with `α_q = ½ + q - p`
//! the shifted parameter `μ_{q,n} = √(λ_{q,n} + α_q²)` is `n + p - ½`.
//! The multiplicities are polynomials in `n` whose roots are the
//! sequence `N^q`; everything here is exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type ExactRational = BigRational;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The parameter bundle for one form degree `q` on `S^{2p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereSpec {
    pub p: u32,
    pub q: u32,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha_q: ExactRational,
    /// `N^q`: `j - q` for `j = 0..2p-1`, skipping `j = q` and `j = 2p-1-q`.
    pub sequence: Vec<i64>,
}

impl SphereSpec {
    pub fn new(p: u32, q: u32) -> Result<SphereSpec> {
        if p < 1 {
            return Err(Error::domain("sphere_spec", format!("p = {p} must be at least 1")));
        }
        if q > 2 * p - 1 {
            return Err(Error::domain(
                "sphere_spec",
                format!("q = {q} outside [0, {}]", 2 * p - 1),
            ));
        }
        let (pi, qi) = (p as i64, q as i64);
        let sequence = (0..2 * pi)
            .filter(|&j| j != qi && j != 2 * pi - 1 - qi)
            .map(|j| j - qi)
            .collect();
        Ok(SphereSpec {
            p,
            q,
            alpha_q: BigRational::new(BigInt::from(2 * (qi - pi) + 1), BigInt::from(2)),
            sequence,
        })
    }

    /// Whether `q` carries actual spectral data (`q <= p-1`); the upper half
    /// only enters through the Hodge-dual reduction.
    pub fn is_spectral(&self) -> bool {
        self.q < self.p
    }

    /// The Hodge dual `2p-1-q`.
    pub fn dual(&self) -> SphereSpec {
        SphereSpec::new(self.p, 2 * self.p - 1 - self.q).expect("dual degree in range")
    }

    pub fn eigenvalue(&self, n: u64) -> ExactRational {
        let (n, p, q) = (n as i64, self.p as i64, self.q as i64);
        rat((n + q) * (n + 2 * p - 1 - q))
    }

    /// `μ_{q,n}²`, which is the perfect square `(n + p - ½)²`.
    pub fn mu_squared(&self, n: u64) -> ExactRational {
        self.eigenvalue(n) + &self.alpha_q * &self.alpha_q
    }

    pub fn mu(&self, n: u64) -> ExactRational {
        rat(n as i64 + self.p as i64) - BigRational::new(BigInt::one(), BigInt::from(2))
    }
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binom_exact(n: i64, k: i64) -> ExactRational {
    BigRational::from_integer(binom_int(n, k))
}

fn binom_int(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// All elementary symmetric polynomials `e_0..e_len` of a sequence.
pub fn elem_symmetric_all(seq: &[i64]) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); seq.len() + 1];
    c[0] = BigInt::one();
    for (i, &x) in seq.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let t = &c[k - 1] * BigInt::from(x);
            c[k] += t;
        }
    }
    c
}

/// `e_k(N^q)`, `0 <= k <= 2p-2`.
pub fn elem_symmetric(spec: &SphereSpec, k: u32) -> Result<ExactRational> {
    let top = 2 * spec.p - 2;
    if k > top {
        return Err(Error::domain(
            "elem_symmetric",
            format!("degree k = {k} outside [0, {top}]"),
        ));
    }
    Ok(BigRational::from_integer(
        elem_symmetric_all(&spec.sequence)[k as usize].clone(),
    ))
}

/// `S(x; N^q) = Π (x + j)` over `j ∈ N^q`, as a direct product.
pub fn s_poly_value(spec: &SphereSpec, x: &ExactRational) -> ExactRational {
    spec.sequence
        .iter()
        .fold(BigRational::one(), |acc, &j| acc * (x + rat(j)))
}

/// `S(x; N^q)` through its coefficients `Σ_l e_{2p-2-l}(N^q) x^l`.
pub fn s_poly_value_coefficients(spec: &SphereSpec, x: &ExactRational) -> ExactRational {
    let e = elem_symmetric_all(&spec.sequence);
    let deg = spec.sequence.len();
    // Horner from the leading coefficient e_0
    e.iter()
        .take(deg + 1)
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

fn check_n(function: &'static str, n: i64, min: i64) -> Result<()> {
    if n < min {
        return Err(Error::domain(function, format!("n = {n} must be at least {min}")));
    }
    Ok(())
}

/// `m_{q,n} = (2n-1+2p)/(n+2p-1-q) · C(n-1+2p, n+q) · C(q+n-1, n-1)`.
pub fn multiplicity_sphere(spec: &SphereSpec, n: i64) -> Result<ExactRational> {
    check_n("multiplicity_sphere", n, 1)?;
    let (p, q) = (spec.p as i64, spec.q as i64);
    let ratio = BigRational::new(BigInt::from(2 * n - 1 + 2 * p), BigInt::from(n + 2 * p - 1 - q));
    Ok(ratio * binom_exact(n - 1 + 2 * p, n + q) * binom_exact(q + n - 1, n - 1))
}

/// The same multiplicity in factored form,
/// `C(2p-1, q) (2n-1+2p) Π_{j ≠ q, 2p-1-q} (n+j) / (2p-1)!`.
pub fn multiplicity_sphere_factored(spec: &SphereSpec, n: i64) -> Result<ExactRational> {
    check_n("multiplicity_sphere", n, 1)?;
    let (p, q) = (spec.p as i64, spec.q as i64);
    let prod = (0..2 * p)
        .filter(|&j| j != q && j != 2 * p - 1 - q)
        .fold(BigInt::one(), |acc, j| acc * BigInt::from(n + j));
    Ok(BigRational::new(
        binom_int(2 * p - 1, q) * BigInt::from(2 * n - 1 + 2 * p) * prod,
        factorial(2 * p - 1),
    ))
}

/// `m_{q,n-q}` written through `S(n; N^q)`, for `n >= q+1`.
pub fn multiplicity_shifted(spec: &SphereSpec, n: i64) -> Result<ExactRational> {
    let (p, q) = (spec.p as i64, spec.q as i64);
    check_n("multiplicity_shifted", n, q + 1)?;
    Ok(BigRational::new(
        binom_int(2 * p - 1, q) * BigInt::from(2 * n - 1 - 2 * q + 2 * p),
        factorial(2 * p - 1),
    ) * s_poly_value(spec, &rat(n)))
}

/// `Σ_{q=0}^{2p-1} (-1)^q C(2p-1, q) q^k`, which vanishes for `k <= 2p-2`.
pub fn alternating_moment(p: u32, k: u32) -> Result<ExactRational> {
    if p < 1 || k > 2 * p - 2 {
        return Err(Error::domain(
            "alternating_moment",
            format!("need p >= 1 and 0 <= k <= 2p-2, got p = {p}, k = {k}"),
        ));
    }
    let p = p as i64;
    let mut acc = BigInt::zero();
    for q in 0..2 * p {
        let t = binom_int(2 * p - 1, q) * num_traits::pow(BigInt::from(q), k as usize);
        if q % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(BigRational::from_integer(acc))
}

/// `Σ_q (-1)^{q+1} C(2p-1, q) w_q e_{2p-2-l}(N^q)` with `w_q = 1`
/// (`alpha = false`) or `w_q = α_q`.
pub fn alternating_coefficient_sum(p: u32, l: u32, alpha: bool) -> Result<ExactRational> {
    if p < 1 || l > 2 * p - 2 {
        return Err(Error::domain(
            "alternating_coefficient_sum",
            format!("need p >= 1 and 0 <= l <= 2p-2, got p = {p}, l = {l}"),
        ));
    }
    let mut acc = BigRational::zero();
    for q in 0..2 * p {
        let spec = SphereSpec::new(p, q)?;
        let mut t = binom_exact(2 * p as i64 - 1, q as i64) * elem_symmetric(&spec, 2 * p - 2 - l)?;
        if alpha {
            t *= &spec.alpha_q;
        }
        if q % 2 == 0 {
            acc -= t;
        } else {
            acc += t;
        }
    }
    Ok(acc)
}

/// `(1/(2p-1)!) Σ_q (-1)^{q+1} C(2p-1, q) α_q e_{2p-2}(N^q)`, the
/// coefficient of `ζ_R(s)` in the alternating sum of the co-exact zetas.
/// Each `q` contributes exactly `½`, so the value is `p`.
pub fn alpha_weighted_top_sum(p: u32) -> Result<ExactRational> {
    Ok(alternating_coefficient_sum(p, 0, true)?
        / BigRational::from_integer(factorial(2 * p as i64 - 1)))
}

/// `e_{2p-2}(N^q) = (-1)^q q! (2p-1-q)! / (2p-1-2q)`.
pub fn top_symmetric_closed(spec: &SphereSpec) -> ExactRational {
    let (p, q) = (spec.p as i64, spec.q as i64);
    let sign = if q % 2 == 0 { 1 } else { -1 };
    BigRational::new(
        BigInt::from(sign) * factorial(q) * factorial(2 * p - 1 - q),
        BigInt::from(2 * p - 1 - 2 * q),
    )
}

/// True when `x` is a positive integer.
pub fn is_positive_integer(x: &ExactRational) -> bool {
    x.is_integer() && x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, q: u32) -> SphereSpec {
        SphereSpec::new(p, q).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_exact(4, 2), rat(6));
        assert_eq!(binom_exact(3, 1), rat(3));
        assert_eq!(binom_exact(7, 0), rat(1));
        assert_eq!(binom_exact(3, 5), rat(0));
        assert_eq!(binom_exact(3, -1), rat(0));
    }

    #[test]
    fn sequences_and_symmetric_polynomials() {
        assert!(spec(1, 0).sequence.is_empty());
        assert_eq!(elem_symmetric(&spec(1, 0), 0).unwrap(), rat(1));
        let s = spec(2, 0);
        assert_eq!(s.sequence, vec![1, 2]);
        assert_eq!(elem_symmetric(&s, 1).unwrap(), rat(3));
        assert_eq!(elem_symmetric(&s, 2).unwrap(), rat(2));
        assert!(elem_symmetric(&s, 3).is_err());
        for p in 1..=6 {
            for q in 0..2 * p {
                let s = spec(p, q);
                assert_eq!(s.sequence.len(), 2 * p as usize - 2);
                assert_eq!(elem_symmetric(&s, 2 * p - 2).unwrap(), top_symmetric_closed(&s));
                assert_eq!(s.alpha_q, -s.dual().alpha_q);
            }
        }
    }

    #[test]
    fn s_poly_roots_and_equal_endpoints() {
        for p in 2..=5 {
            for q in 0..2 * p {
                let s = spec(p, q);
                let (pi, qi) = (p as i64, q as i64);
                for r in (qi + 1 - 2 * pi)..=qi {
                    if r == -2 * pi + 1 + 2 * qi || r == 0 {
                        continue;
                    }
                    assert!(s_poly_value(&s, &rat(r)).is_zero());
                }
                let at0 = s_poly_value(&s, &rat(0));
                assert_eq!(at0, elem_symmetric(&s, 2 * p - 2).unwrap());
                assert_eq!(s_poly_value(&s, &rat(-2 * pi + 1 + 2 * qi)), at0);
            }
        }
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_sphere(&spec(1, 0), 1).unwrap(), rat(3));
        assert_eq!(multiplicity_sphere(&spec(1, 0), 2).unwrap(), rat(5));
        // l = 1 harmonics on S^4
        assert_eq!(multiplicity_sphere(&spec(2, 0), 1).unwrap(), rat(5));
        assert_eq!(multiplicity_sphere_factored(&spec(2, 0), 1).unwrap(), rat(5));
        assert!(multiplicity_sphere(&spec(1, 0), 0).is_err());
        assert_eq!(
            multiplicity_shifted(&spec(2, 1), 2).unwrap(),
            multiplicity_sphere(&spec(2, 1), 1).unwrap()
        );
        assert_eq!(
            multiplicity_shifted(&spec(3, 2), 5).unwrap(),
            multiplicity_sphere(&spec(3, 2), 3).unwrap()
        );
        assert!(multiplicity_shifted(&spec(3, 2), 2).is_err());
    }

    #[test]
    fn alternating_identities() {
        assert!(alternating_moment(1, 0).unwrap().is_zero());
        assert!(alternating_moment(2, 2).unwrap().is_zero());
        assert!(alternating_moment(3, 4).unwrap().is_zero());
        assert!(alternating_moment(3, 5).is_err());
        for p in 1..=8 {
            assert_eq!(alpha_weighted_top_sum(p).unwrap(), rat(p as i64));
        }
    }

    #[test]
    fn mu_completes_the_square() {
        let s = spec(3, 1);
        for n in 1..10 {
            assert_eq!(s.mu_squared(n), &s.mu(n) * &s.mu(n));
            assert_eq!(s.mu(n) + &s.alpha_q, rat(n as i64 + 1));
        }
    }
}
