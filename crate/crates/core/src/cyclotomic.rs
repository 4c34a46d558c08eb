//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_k]`.
//!
//! An element is stored as a length-`k` integer vector `c` standing for
//! `Σ c[j]·ζ_k^j`. The vector is only reduced modulo `x^k - 1`; two vectors
//! describe the same complex number iff their difference is divisible by the
//! `k`-th cyclotomic polynomial. Rotations and reflections are therefore plain
//! index permutations.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use thiserror::Error;

/// Largest supported order `k`.
pub const MAX_ORDER: usize = 36;

/// Largest permitted coefficient magnitude.
pub const COEFF_LIMIT: i64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cannot mix cyclotomic orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("coefficient magnitude exceeds 2^31")]
    Overflow,
}

/// Integer polynomial, lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient() == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor. Returns `None` if the
    /// divisor is not monic.
    pub fn div_rem_monic(&self, divisor: &Self) -> Option<(Self, Self)> {
        if !divisor.is_monic() {
            return None;
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Some((Self::new(Vec::new()), self.clone()));
        }
        let mut quot = vec![0i64; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            quot[top - d] = c;
            for (i, &p) in divisor.coeffs.iter().enumerate() {
                rem[top - d + i] -= c * p;
            }
        }
        rem.truncate(d);
        Some((Self::new(quot), Self::new(rem)))
    }
}

/// Euler's totient.
pub fn euler_phi(n: usize) -> usize {
    assert!(n >= 1, "euler_phi needs n >= 1");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub(crate) fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The `n`-th cyclotomic polynomial, obtained by exactly dividing `x^n - 1`
/// by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic_polynomial needs n >= 1");
    let divs = divisors(n);
    // memo[i] = Φ_{divs[i]}; divisors of a divisor precede it in `divs`.
    let mut memo: Vec<IntPolynomial> = Vec::with_capacity(divs.len());
    for (i, &d) in divs.iter().enumerate() {
        let mut poly = IntPolynomial::x_pow_minus_one(d);
        for (j, &e) in divs[..i].iter().enumerate() {
            if d % e == 0 {
                let (q, r) = poly
                    .div_rem_monic(&memo[j])
                    .expect("cyclotomic polynomials are monic");
                debug_assert!(r.is_zero());
                poly = q;
            }
        }
        memo.push(poly);
    }
    memo.pop().expect("n has at least one divisor")
}

/// Element of `Z[ζ_k]`.
#[derive(Debug, Clone)]
pub struct CycInt {
    coeffs: Vec<i64>,
}

fn check_coeff(c: i64) -> Result<i64, CycError> {
    if c.abs() > COEFF_LIMIT {
        Err(CycError::Overflow)
    } else {
        Ok(c)
    }
}

fn check_order(order: usize) -> Result<(), CycError> {
    if order == 0 || order > MAX_ORDER {
        Err(CycError::OrderOutOfRange(order))
    } else {
        Ok(())
    }
}

impl CycInt {
    /// Builds an element of order `coeffs.len()`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, CycError> {
        check_order(coeffs.len())?;
        for &c in &coeffs {
            check_coeff(c)?;
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        check_order(order).expect("order in range");
        Self { coeffs: vec![0; order] }
    }

    /// The integer `n` embedded in `Z[ζ_order]`.
    pub fn from_int(order: usize, n: i64) -> Result<Self, CycError> {
        let mut z = Self::zero(order);
        z.coeffs[0] = check_coeff(n)?;
        Ok(z)
    }

    /// `ζ^j` for any integer `j`.
    pub fn root(order: usize, j: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[j.rem_euclid(order as i64) as usize] = 1;
        z
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<(), CycError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(CycError::OrderMismatch(self.order(), other.order()))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self, CycError> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(CycError::Overflow).and_then(check_coeff))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn try_scale(&self, factor: i64) -> Result<Self, CycError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(factor).ok_or(CycError::Overflow).and_then(check_coeff))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }

    /// Product, reduced modulo `x^k - 1`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_order(other)?;
        let k = self.order();
        let mut acc = vec![0i128; k];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[(i + j) % k] += a as i128 * b as i128;
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| {
                if c.abs() > COEFF_LIMIT as i128 {
                    Err(CycError::Overflow)
                } else {
                    Ok(c as i64)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }

    /// Multiplication by `ζ^j`: a cyclic shift of the coefficients.
    pub fn rotate(&self, j: i64) -> Self {
        let k = self.order();
        let shift = j.rem_euclid(k as i64) as usize;
        let mut coeffs = vec![0; k];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % k] = c;
        }
        Self { coeffs }
    }

    /// Reflection across the line through 0 at angle `m·π/k`,
    /// `z ↦ ζ^m · conj(z)`.
    pub fn reflect(&self, m: i64) -> Self {
        let k = self.order() as i64;
        let mut coeffs = vec![0; self.order()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(m - i as i64).rem_euclid(k) as usize] = c;
        }
        Self { coeffs }
    }

    pub fn conj(&self) -> Self {
        self.reflect(0)
    }

    pub fn to_cartesian(&self) -> (f64, f64) {
        let k = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold((0.0, 0.0), |(x, y), (j, &c)| {
                let t = TAU * j as f64 / k;
                (x + c as f64 * libm::cos(t), y + c as f64 * libm::sin(t))
            })
    }

    /// Exact equality of the represented complex numbers. Elements of
    /// different orders never compare equal.
    pub fn equals(&self, other: &Self) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let diff: Vec<i128> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a as i128 - b as i128)
            .collect();
        let phi = cyclotomic_polynomial(self.order());
        remainder(&diff, phi.coeffs()).iter().all(|&c| c == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&Self::zero(self.order()))
    }
}

/// Remainder of `poly` divided by the monic polynomial `divisor`.
fn remainder(poly: &[i128], divisor: &[i64]) -> Vec<i128> {
    let d = divisor.len() - 1;
    let mut rem = poly.to_vec();
    if rem.len() < d {
        rem.resize(d, 0);
        return rem;
    }
    for top in (d..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for (i, &p) in divisor.iter().enumerate() {
            rem[top - d + i] -= c * p as i128;
        }
    }
    rem.truncate(d);
    rem
}

/// Exact-equality key: the remainder modulo `Φ_k`. Keys are additive, so the
/// key of a sum is the sum of keys.
pub(crate) type Key = Vec<i128>;

/// Per-order cache of `Φ_k`, root coordinates and root keys.
#[derive(Debug, Clone)]
pub(crate) struct RingContext {
    order: usize,
    phi: Vec<i64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
    root_keys: Vec<Key>,
}

impl RingContext {
    pub(crate) fn new(order: usize) -> Self {
        let phi = cyclotomic_polynomial(order).coeffs().to_vec();
        let cos = (0..order).map(|j| libm::cos(TAU * j as f64 / order as f64)).collect();
        let sin = (0..order).map(|j| libm::sin(TAU * j as f64 / order as f64)).collect();
        let mut ctx = Self {
            order,
            phi,
            cos,
            sin,
            root_keys: Vec::new(),
        };
        ctx.root_keys = (0..order).map(|j| ctx.key(&CycInt::root(order, j as i64))).collect();
        ctx
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn key(&self, z: &CycInt) -> Key {
        debug_assert_eq!(z.order(), self.order);
        let wide: Vec<i128> = z.coeffs.iter().map(|&c| c as i128).collect();
        remainder(&wide, &self.phi)
    }

    pub(crate) fn root_key(&self, j: usize) -> &Key {
        &self.root_keys[j % self.order]
    }

    pub(crate) fn root_xy(&self, j: usize) -> (f64, f64) {
        let j = j % self.order;
        (self.cos[j], self.sin[j])
    }

    pub(crate) fn xy(&self, z: &CycInt) -> (f64, f64) {
        z.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(x, y), (j, &c)| {
                (x + c as f64 * self.cos[j], y + c as f64 * self.sin[j])
            })
    }
}

pub(crate) fn key_add(a: &Key, b: &Key) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn key_scale(a: &Key, s: i128) -> Key {
    a.iter().map(|x| x * s).collect()
}

pub(crate) fn key_is_zero(a: &Key) -> bool {
    a.iter().all(|&x| x == 0)
}
