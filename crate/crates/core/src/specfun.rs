//! Special functions the oscillator eigenstates are assembled from.
//!
//! Legendre-family functions carry the Condon–Shortley phase. The hyperbolic
//! variant `P̂_l^m(ζ)` is the real function obtained from `P_l^m` on the
//! imaginary axis, `P̂_l^m(ζ) = i^{-(l-m)} P_l^m(iζ)` for `m ≥ 0`, but it is
//! evaluated here by its own real recurrence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn require_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {v}")))
    }
}

/// Index pair of a polynomial family: degree (`n` or `l`) and order (`α` or `m`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyIndex {
    pub degree: i64,
    pub order: f64,
}

/// Generalized Laguerre function `L_n^α(x)`.
///
/// Negative degree evaluates to zero, degree zero to one.
pub fn laguerre(n: i64, alpha: f64, x: f64) -> Result<f64> {
    require_finite("x", x)?;
    require_finite("alpha", alpha)?;
    Ok(laguerre_unchecked(n, alpha, x))
}

pub(crate) fn laguerre_unchecked(n: i64, alpha: f64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `k`-th derivative of `L_n^α` in `x`, from `d/dx L_n^α = -L_{n-1}^{α+1}`.
pub fn laguerre_derivative(n: i64, alpha: f64, x: f64, k: u32) -> Result<f64> {
    require_finite("x", x)?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * laguerre_unchecked(n - k as i64, alpha + k as f64, x))
}

/// `(l - m)! / (l + m)!` for `0 ≤ m ≤ l`.
fn factorial_ratio(l: i64, m: i64) -> f64 {
    let mut r = 1.0;
    for k in (l - m + 1)..=(l + m) {
        r /= k as f64;
    }
    r
}

/// `(2m - 1)!!`, with the empty product for `m = 0`.
fn double_factorial_odd(m: i64) -> f64 {
    (1..=m).fold(1.0, |acc, k| acc * (2 * k - 1) as f64)
}

/// Degree recurrence shared by both Legendre families.
///
/// `sign` is `-1` for `P` and `+1` for `P̂`; `seed` is the diagonal value
/// `P_m^m` (or `P̂_m^m`) at the argument.
fn legendre_upward(l: i64, m: i64, arg: f64, seed: f64, sign: f64) -> f64 {
    if l == m {
        return seed;
    }
    let mut prev = seed;
    let mut cur = arg * (2 * m + 1) as f64 * seed;
    for k in (m + 2)..=l {
        let next = ((2 * k - 1) as f64 * arg * cur + sign * ((k + m - 1) as f64) * prev)
            / (k - m) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Legendre function `P_l^m(z)` on `[-1, 1]`, Condon–Shortley phase.
///
/// Zero when `|m| > l`. Negative order follows
/// `P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m`.
pub fn legendre_p(l: i64, m: i64, z: f64) -> Result<f64> {
    require_finite("z", z)?;
    if z.abs() > 1.0 {
        return Err(Error::Domain(format!("legendre_p requires |z| <= 1, got {z}")));
    }
    if l < 0 {
        return Err(Error::Domain(format!("degree must be non-negative, got {l}")));
    }
    Ok(legendre_p_unchecked(l, m, z))
}

pub(crate) fn legendre_p_unchecked(l: i64, m: i64, z: f64) -> f64 {
    let am = m.abs();
    if l < 0 || am > l {
        return 0.0;
    }
    let phase = if am % 2 == 0 { 1.0 } else { -1.0 };
    let seed = phase * double_factorial_odd(am) * (1.0 - z * z).max(0.0).powf(am as f64 / 2.0);
    let v = legendre_upward(l, am, z, seed, -1.0);
    if m < 0 {
        phase * factorial_ratio(l, am) * v
    } else {
        v
    }
}

/// Hyperbolic associated Legendre function `P̂_l^m(ζ)` for real `ζ`.
///
/// Seeded from `P̂_m^m = (-1)^m (2m)!/(2^m m!) (1 + ζ²)^{m/2}` and raised in
/// degree by `(l-m) P̂_l^m = (2l-1) ζ P̂_{l-1}^m + (l+m-1) P̂_{l-2}^m`.
pub fn legendre_phat(l: i64, m: i64, zeta: f64) -> Result<f64> {
    require_finite("zeta", zeta)?;
    if l < 0 {
        return Err(Error::Domain(format!("degree must be non-negative, got {l}")));
    }
    Ok(legendre_phat_unchecked(l, m, zeta))
}

pub(crate) fn legendre_phat_unchecked(l: i64, m: i64, zeta: f64) -> f64 {
    let am = m.abs();
    if l < 0 || am > l {
        return 0.0;
    }
    let phase = if am % 2 == 0 { 1.0 } else { -1.0 };
    let seed = phase * double_factorial_odd(am) * (1.0 + zeta * zeta).powf(am as f64 / 2.0);
    let v = legendre_upward(l, am, zeta, seed, 1.0);
    if m < 0 {
        phase * factorial_ratio(l, am) * v
    } else {
        v
    }
}

/// `dP_l^m/dz` from `(1 - z²) P' = (l + m) P_{l-1}^m - l z P_l^m`; open interval only.
pub fn legendre_p_derivative(l: i64, m: i64, z: f64) -> Result<f64> {
    require_finite("z", z)?;
    if z.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "legendre_p_derivative requires |z| < 1, got {z}"
        )));
    }
    let num = (l + m) as f64 * legendre_p_unchecked(l - 1, m, z)
        - l as f64 * z * legendre_p_unchecked(l, m, z);
    Ok(num / (1.0 - z * z))
}

/// `dP̂_l^m/dζ` from `(1 + ζ²) P̂' = (l + m) P̂_{l-1}^m + l ζ P̂_l^m`.
pub fn legendre_phat_derivative(l: i64, m: i64, zeta: f64) -> Result<f64> {
    require_finite("zeta", zeta)?;
    let num = (l + m) as f64 * legendre_phat_unchecked(l - 1, m, zeta)
        + l as f64 * zeta * legendre_phat_unchecked(l, m, zeta);
    Ok(num / (1.0 + zeta * zeta))
}

/// `Γ(x)` for real arguments.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Labels of a Clebsch–Gordan coefficient `⟨j1 m1 j2 m2 | J M⟩`.
///
/// Stored as twice the physical value so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CGIndex {
    pub two_j1: i32,
    pub two_m1: i32,
    pub two_j2: i32,
    pub two_m2: i32,
    pub two_j: i32,
    pub two_m: i32,
}

fn twice(name: &str, v: f64) -> Result<i32> {
    let t = 2.0 * v;
    if !t.is_finite() || (t - t.round()).abs() > 1e-9 {
        return Err(Error::Label(format!("{name} = {v} is not half-integer valued")));
    }
    Ok(t.round() as i32)
}

impl CGIndex {
    pub fn new(j1: f64, m1: f64, j2: f64, m2: f64, j: f64, m: f64) -> Result<Self> {
        Ok(Self {
            two_j1: twice("j1", j1)?,
            two_m1: twice("m1", m1)?,
            two_j2: twice("j2", j2)?,
            two_m2: twice("m2", m2)?,
            two_j: twice("J", j)?,
            two_m: twice("M", m)?,
        })
    }

    /// Integer-only constructor for the common case.
    pub fn integral(j1: i32, m1: i32, j2: i32, m2: i32, j: i32, m: i32) -> Self {
        Self {
            two_j1: 2 * j1,
            two_m1: 2 * m1,
            two_j2: 2 * j2,
            two_m2: 2 * m2,
            two_j: 2 * j,
            two_m: 2 * m,
        }
    }

    fn selection_rules_hold(&self) -> bool {
        let Self {
            two_j1,
            two_m1,
            two_j2,
            two_m2,
            two_j,
            two_m,
        } = *self;
        if two_j1 < 0 || two_j2 < 0 || two_j < 0 {
            return false;
        }
        if two_m1.abs() > two_j1 || two_m2.abs() > two_j2 || two_m.abs() > two_j {
            return false;
        }
        if two_m1 + two_m2 != two_m {
            return false;
        }
        if two_j < (two_j1 - two_j2).abs() || two_j > two_j1 + two_j2 {
            return false;
        }
        // j ± m must be integers and the triangle must close on integers.
        (two_j1 + two_m1) % 2 == 0
            && (two_j2 + two_m2) % 2 == 0
            && (two_j + two_m) % 2 == 0
            && (two_j1 + two_j2 + two_j) % 2 == 0
    }
}

fn big_factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Square of the coefficient with its sign attached, as an exact rational.
pub fn clebsch_gordan_signed_square(idx: &CGIndex) -> BigRational {
    if !idx.selection_rules_hold() {
        return BigRational::zero();
    }
    // All combinations below are integers once the selection rules hold.
    let h = |twice: i32| (twice / 2) as i64;
    let j1 = idx.two_j1;
    let j2 = idx.two_j2;
    let j = idx.two_j;
    let m1 = idx.two_m1;
    let m2 = idx.two_m2;
    let m = idx.two_m;

    let a = h(j1 + j2 - j);
    let b = h(j1 - m1);
    let c = h(j2 + m2);
    let d = h(j - j2 + m1);
    let e = h(j - j1 - m2);

    let prefactor_num = BigInt::from((j + 1) as i64)
        * big_factorial(h(j + j1 - j2))
        * big_factorial(h(j - j1 + j2))
        * big_factorial(h(j1 + j2 - j))
        * big_factorial(h(j + m))
        * big_factorial(h(j - m))
        * big_factorial(h(j1 - m1))
        * big_factorial(h(j1 + m1))
        * big_factorial(h(j2 - m2))
        * big_factorial(h(j2 + m2));
    let prefactor_den = big_factorial(h(j1 + j2 + j) + 1);

    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = big_factorial(k)
            * big_factorial(a - k)
            * big_factorial(b - k)
            * big_factorial(c - k)
            * big_factorial(d + k)
            * big_factorial(e + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let square = BigRational::new(prefactor_num, prefactor_den) * &sum * &sum;
    if sum.is_negative() {
        -square
    } else {
        square
    }
}

/// Real Clebsch–Gordan coefficient `⟨j1 m1 j2 m2 | J M⟩` (Condon–Shortley).
///
/// Couplings that violate a selection rule give zero.
pub fn clebsch_gordan(idx: &CGIndex) -> f64 {
    let signed = clebsch_gordan_signed_square(idx);
    if signed.is_zero() {
        return 0.0;
    }
    let mag = signed.abs();
    let v = (mag.numer().to_f64().unwrap_or(f64::NAN) / mag.denom().to_f64().unwrap_or(f64::NAN))
        .sqrt();
    if signed.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laguerre_boundary_values() {
        assert_eq!(laguerre(0, 0.5, 3.7).unwrap(), 1.0);
        assert_eq!(laguerre(-1, 0.5, 3.7).unwrap(), 0.0);
        assert_eq!(laguerre(1, 0.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(laguerre(2, 1.0, 0.0).unwrap(), 3.0, epsilon = 1e-15);
        assert!(laguerre(2, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn legendre_low_order_values() {
        for &z in &[-0.9, -0.3, 0.0, 0.4, 0.8] {
            assert_relative_eq!(
                legendre_p(1, 1, z).unwrap(),
                -(1.0f64 - z * z).sqrt(),
                epsilon = 1e-15
            );
            assert_relative_eq!(legendre_p(1, 0, z).unwrap(), z, epsilon = 1e-15);
        }
        assert_relative_eq!(legendre_p(3, 0, 1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(legendre_p(2, 3, 0.2).unwrap(), 0.0);
        assert!(legendre_p(2, 1, 1.2).is_err());
    }

    #[test]
    fn legendre_negative_order_proportionality() {
        let z = 0.37;
        // P_2^{-1} = -(1/6) P_2^1
        assert_relative_eq!(
            legendre_p(2, -1, z).unwrap(),
            -legendre_p(2, 1, z).unwrap() / 6.0,
            epsilon = 1e-15
        );
        // P_1^{-1} = (1/2) sqrt(1 - z^2)
        assert_relative_eq!(
            legendre_p(1, -1, z).unwrap(),
            0.5 * (1.0 - z * z as f64).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn phat_low_order_values() {
        for &zeta in &[-2.5, -0.4, 0.0, 1.3, 3.0] {
            assert_relative_eq!(
                legendre_phat(1, 1, zeta).unwrap(),
                -(1.0f64 + zeta * zeta).sqrt(),
                epsilon = 1e-14
            );
            assert_relative_eq!(legendre_phat(1, 0, zeta).unwrap(), zeta, epsilon = 1e-15);
        }
        assert_relative_eq!(legendre_phat(2, 2, 1.0).unwrap(), 6.0, epsilon = 1e-14);
    }

    #[test]
    fn cg_selection_rules_give_zero() {
        assert_eq!(clebsch_gordan(&CGIndex::integral(1, 1, 1, 1, 1, 1)), 0.0);
        assert_eq!(clebsch_gordan(&CGIndex::integral(1, 1, 1, 0, 2, 2)), 0.0);
        assert_eq!(clebsch_gordan(&CGIndex::integral(1, 0, 1, 0, 3, 0)), 0.0);
        assert!(CGIndex::new(0.3, 0.0, 1.0, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn cg_half_integer_coupling() {
        // <1/2 1/2 1/2 -1/2 | 0 0> = 1/sqrt 2
        let idx = CGIndex::new(0.5, 0.5, 0.5, -0.5, 0.0, 0.0).unwrap();
        assert_relative_eq!(clebsch_gordan(&idx), 0.5f64.sqrt(), epsilon = 1e-15);
        let idx = CGIndex::new(0.5, -0.5, 0.5, 0.5, 0.0, 0.0).unwrap();
        assert_relative_eq!(clebsch_gordan(&idx), -(0.5f64.sqrt()), epsilon = 1e-15);
    }
}
