//! Exact scalars: rationals and elements of cyclotomic fields.
//!
//! A [`Cyclotomic`] lives in `Q(z)` with `z` a primitive `n`-th root of
//! unity. It is stored in the power basis `1, z, ..., z^(phi(n)-1)` modulo
//! the `n`-th cyclotomic polynomial. Operands with different conductors are
//! lifted to the least common conductor before any arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{DepthError, Result};

pub use num_rational::BigRational as Rational;

/// Largest conductor accepted anywhere in the crate.
pub const MAX_CONDUCTOR: u32 = 840;

pub fn totient(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![0i64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db];
        quot[i] = c;
        if c != 0 {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= c * y;
            }
        }
    }
    debug_assert!(rem.iter().all(|x| *x == 0));
    quot
}

fn compute_cyclotomic_poly(n: u32) -> Vec<i64> {
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut factor = vec![0i64; d as usize + 1];
        factor[0] = -1;
        factor[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul_int(&num, &factor),
            -1 => den = poly_mul_int(&den, &factor),
            _ => {}
        }
    }
    poly_div_int(&num, &den)
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_cyclotomic_poly(n)))
        .clone()
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Reduce a rational polynomial modulo `Phi_n`, padding to `phi(n)` terms.
fn reduce_mod(mut poly: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, p) in phi.iter().enumerate().take(deg) {
                if *p != 0 {
                    poly[i - deg + j] -= &c * Rational::from_integer(BigInt::from(*p));
                }
            }
        }
        poly.truncate(deg);
    }
    poly.resize(deg, Rational::zero());
    poly
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quot[i] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    // a - q*b
    let mut out = a.to_vec();
    let len = if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 };
    if out.len() < len {
        out.resize(len, Rational::zero());
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(&mut out);
    out
}

/// An element of the cyclotomic field `Q(z_n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Build from power-basis coefficients, reducing modulo `Phi_n`.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor == 0 || conductor > MAX_CONDUCTOR {
            return Err(DepthError::invalid(format!(
                "conductor {conductor} outside 1..={MAX_CONDUCTOR}"
            )));
        }
        Ok(Self {
            conductor,
            coeffs: reduce_mod(coeffs, conductor),
        })
    }

    pub fn from_rational(r: Rational) -> Self {
        Self {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The primitive root `z_n = exp(2 pi i / n)`.
    ///
    /// Panics when `n == 0` or `n > MAX_CONDUCTOR`.
    pub fn root(n: u32) -> Self {
        assert!((1..=MAX_CONDUCTOR).contains(&n), "conductor {n} out of range");
        let mut poly = vec![Rational::zero(); 2];
        poly[1] = Rational::one();
        Self {
            conductor: n,
            coeffs: reduce_mod(poly, n),
        }
    }

    /// `z_n^k` for any integer `k`.
    pub fn root_power(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self {
            conductor: n,
            coeffs: reduce_mod(poly, n),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor <= 2 {
            return Some(self.coeffs[0].clone());
        }
        // Rational elements have a unique representation as a constant.
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in `Q(z_target)`; requires `conductor | target`.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        if !target.is_multiple_of(self.conductor) {
            return Err(DepthError::invalid(format!(
                "cannot lift conductor {} to {}",
                self.conductor, target
            )));
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Cyclotomic::from_coeffs(target, poly)
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = lcm(a.conductor, b.conductor);
        (
            a.lift(l).expect("lcm lift"),
            b.lift(l).expect("lcm lift"),
        )
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        if b.conductor == 1 {
            return a.scale_rational(&b.coeffs[0]);
        }
        if a.conductor == 1 {
            return b.scale_rational(&a.coeffs[0]);
        }
        if a.conductor != b.conductor {
            let (x, y) = Self::aligned(a, b);
            return Self::mul_impl(&x, &y);
        }
        let n = a.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self {
            conductor: a.conductor,
            coeffs: reduce_mod(prod, a.conductor),
        }
    }

    fn add_impl(a: &Self, b: &Self, sign: bool) -> Self {
        if a.conductor != b.conductor {
            let (x, y) = Self::aligned(a, b);
            return Self::add_impl(&x, &y, sign);
        }
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| if sign { x + y } else { x - y })
            .collect();
        Self {
            conductor: a.conductor,
            coeffs,
        }
    }

    /// Multiplicative inverse; fails only on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(DepthError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            let inv = r.recip();
            return if self.conductor == 1 {
                Ok(Self::from_rational(inv))
            } else {
                Ok(Self::from_rational(inv).lift(self.conductor).expect("lift from 1"))
            };
        }
        // Extended Euclid in Q[x]: find u with a*u = 1 mod Phi_n.
        let phi: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|c| Rational::from_integer(BigInt::from(*c)))
            .collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut t0, mut t1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divrem(&r0, &r1);
            let t = poly_sub_mul(&t0, &q, &t1);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
            if r1.is_empty() {
                // gcd is not constant: impossible for a nonzero element of a field
                return Err(DepthError::DivisionByZero);
            }
        }
        let c = r1[0].recip();
        let u: Vec<Rational> = t1.iter().map(|x| x * &c).collect();
        Cyclotomic::from_coeffs(self.conductor, u)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(v: Rational) -> Self {
        Cyclotomic::from_rational(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Cyclotomic::add_impl(a, b, true));
forward_binop!(Sub, sub, |a, b| Cyclotomic::add_impl(a, b, false));
forward_binop!(Mul, mul, Cyclotomic::mul_impl);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = Cyclotomic::add_impl(self, rhs, true);
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = Cyclotomic::add_impl(self, rhs, false);
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = Cyclotomic::mul_impl(self, rhs);
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Rationals print as `p/q`; field elements as e.g. `3/2*z^2 - 1@n=5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", fmt_rational(&self.coeffs[0]));
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = fmt_rational(&abs);
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !abs.is_one() {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push('z');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{}@n={}", out, self.conductor)
    }
}

fn parse_rational(s: &str, offset: usize) -> Result<Rational> {
    let err = || DepthError::Parse {
        position: offset,
        message: format!("invalid rational {s:?}"),
    };
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(p, q))
    } else {
        Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| err())?))
    }
}

impl FromStr for Cyclotomic {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        let (poly, conductor) = match s.rfind("@n=") {
            Some(at) => {
                let n: u32 = s[at + 3..].trim().parse().map_err(|_| DepthError::Parse {
                    position: at + 3,
                    message: "invalid conductor".into(),
                })?;
                (&s[..at], n)
            }
            None => (s, 1),
        };
        if conductor == 0 || conductor > MAX_CONDUCTOR {
            return Err(DepthError::Parse {
                position: s.len(),
                message: format!("conductor {conductor} out of range"),
            });
        }
        // Split into signed terms at top-level '+'/'-' (not inside a rational denominator).
        let mut terms: Vec<(usize, bool, String)> = Vec::new();
        let mut current = String::new();
        let mut start = 0;
        let mut sign = true;
        for (i, ch) in poly.char_indices() {
            if (ch == '+' || ch == '-') && !current.trim().is_empty() {
                let prev = current.trim_end().chars().last();
                // '-' directly after '^' or '/' or '*' belongs to the term
                if !matches!(prev, Some('^') | Some('/') | Some('*')) {
                    terms.push((start, sign, std::mem::take(&mut current)));
                    sign = ch == '+';
                    start = i + 1;
                    continue;
                }
            }
            if (ch == '+' || ch == '-') && current.trim().is_empty() {
                if ch == '-' {
                    sign = !sign;
                }
                start = i + 1;
                continue;
            }
            current.push(ch);
        }
        if !current.trim().is_empty() {
            terms.push((start, sign, current));
        }
        if terms.is_empty() {
            return Err(DepthError::Parse {
                position: 0,
                message: "empty scalar".into(),
            });
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        for (pos, positive, term) in terms {
            let term = term.trim();
            let (coef, power) = if let Some(zpos) = term.find('z') {
                let coef_part = term[..zpos].trim().trim_end_matches('*').trim();
                let coef = if coef_part.is_empty() {
                    Rational::one()
                } else {
                    parse_rational(coef_part, pos)?
                };
                let rest = term[zpos + 1..].trim();
                let power = if rest.is_empty() {
                    1usize
                } else if let Some(p) = rest.strip_prefix('^') {
                    p.trim().parse::<usize>().map_err(|_| DepthError::Parse {
                        position: pos + zpos,
                        message: format!("invalid exponent in {term:?}"),
                    })?
                } else {
                    return Err(DepthError::Parse {
                        position: pos + zpos,
                        message: format!("unexpected text after z in {term:?}"),
                    });
                };
                if conductor == 1 {
                    return Err(DepthError::Parse {
                        position: pos + zpos,
                        message: "z used without @n= conductor".into(),
                    });
                }
                (coef, power)
            } else {
                (parse_rational(term, pos)?, 0)
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            if positive {
                coeffs[power] += coef;
            } else {
                coeffs[power] -= coef;
            }
        }
        Cyclotomic::from_coeffs(conductor, coeffs)
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Cyclotomic::from_int)
                .ok_or_else(|| serde::de::Error::custom("non-integer numeric scalar")),
            other => Err(serde::de::Error::custom(format!("invalid scalar {other}"))),
        }
    }
}

/// `cyclotomic_root(n)`: the primitive `n`-th root of unity.
pub fn cyclotomic_root(n: u32) -> Result<Cyclotomic> {
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(DepthError::invalid(format!("conductor {n} out of range")));
    }
    Ok(Cyclotomic::root(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Cyclotomic {
        Cyclotomic::from_frac(p, r)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
    }

    #[test]
    fn small_roots_are_rational() {
        assert_eq!(Cyclotomic::root(1), Cyclotomic::one());
        assert_eq!(Cyclotomic::root(2), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::root(2).as_rational(), Some(Rational::from_integer((-1).into())));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::root(4);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
    }

    #[test]
    fn root_orders() {
        for n in 1..=12u32 {
            let z = Cyclotomic::root(n);
            for k in 1..=(3 * n as i64) {
                let p = z.pow(k).unwrap();
                assert_eq!(p.is_one(), k % n as i64 == 0, "n={n} k={k}");
            }
            assert_eq!(z.inv().unwrap(), z.pow(n as i64 - 1).unwrap());
        }
    }

    #[test]
    fn cross_conductor_arithmetic() {
        let i = Cyclotomic::root(4);
        let w = Cyclotomic::root(3);
        let s = &i + &w;
        assert_eq!(s.conductor(), 12);
        assert_eq!(&s - &w, i);
        // z_12^3 = i and z_12^4 = w
        assert_eq!(Cyclotomic::root_power(12, 3), i);
        assert_eq!(Cyclotomic::root_power(12, 4), w);
    }

    #[test]
    fn inverse_and_zero() {
        assert_eq!(Cyclotomic::zero().inv(), Err(DepthError::DivisionByZero));
        let a = &Cyclotomic::root(5) + &q(3, 2);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let a = &a + &Cyclotomic::zero();
        assert_eq!(a, &Cyclotomic::root(5) + &q(3, 2));
    }

    #[test]
    fn display_and_parse() {
        let z = Cyclotomic::root(5);
        let x = &(&(&z * &z) * &q(3, 2)) - &Cyclotomic::one();
        let s = x.to_string();
        assert_eq!(s, "3/2*z^2 - 1@n=5");
        assert_eq!(s.parse::<Cyclotomic>().unwrap(), x);
        assert_eq!("-3/4".parse::<Cyclotomic>().unwrap(), q(-3, 4));
        assert_eq!("0@n=7".parse::<Cyclotomic>().unwrap(), Cyclotomic::zero());
        assert_eq!("-z + 2@n=4".parse::<Cyclotomic>().unwrap(), &q(2, 1) - &Cyclotomic::root(4));
        assert!("z^2".parse::<Cyclotomic>().is_err());
        assert!("1/0".parse::<Cyclotomic>().is_err());
    }
}
