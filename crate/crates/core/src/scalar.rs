//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` of `Q[x]/(Φ_N(x))` as integer
//! numerators over one positive common denominator. Every operation reduces modulo `Φ_N` and
//! strips common factors, so two elements of the same conductor are equal iff their stored
//! representations agree. Elements of different conductors are combined after embedding both
//! into `Q(ζ_lcm)`.

use std::borrow::Cow;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest conductor the arithmetic will create.
pub const MAX_CONDUCTOR: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {0} exceeds the limit of {MAX_CONDUCTOR}")]
    ConductorTooLarge(u64),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("malformed cyclotomic: {0}")]
    Malformed(String),
}

/// Arithmetic context for one conductor: the cyclotomic polynomial in sparse form.
#[derive(Debug)]
struct Field {
    conductor: u64,
    degree: usize,
    /// Nonzero coefficients of `Φ_N` below its (monic) leading term.
    tail: Vec<(usize, BigInt)>,
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<Field>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn field(n: u64) -> Result<Arc<Field>, ScalarError> {
    if n == 0 {
        return Err(ScalarError::ZeroConductor);
    }
    if n > MAX_CONDUCTOR {
        return Err(ScalarError::ConductorTooLarge(n));
    }
    Ok(field_unchecked(n))
}

fn field_unchecked(n: u64) -> Arc<Field> {
    if let Some(f) = field_cache().lock().expect("field cache poisoned").get(&n) {
        return Arc::clone(f);
    }
    let poly = cyclotomic_polynomial(n);
    let degree = poly.len() - 1;
    let tail = poly[..degree]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(p, c)| (p, BigInt::from(*c)))
        .collect();
    let f = Arc::new(Field { conductor: n, degree, tail });
    field_cache()
        .lock()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(f)
        .clone()
}

pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    distinct_prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Coefficients of `Φ_n`, lowest degree first.
///
/// Uses `Φ_rad(x) = ∏_{d | rad} (x^d - 1)^{μ(rad/d)}` followed by `Φ_n(x) = Φ_rad(x^{n/rad})`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0, "conductor must be positive");
    let primes = distinct_prime_factors(n);
    let rad: u64 = primes.iter().product();
    let k = primes.len();
    let mut poly: Vec<i128> = vec![1];
    let mut divisors = Vec::new();
    for mask in 0u32..(1 << k) {
        let d: u64 = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| primes[b])
            .product();
        let missing = k - mask.count_ones() as usize;
        if missing % 2 == 0 {
            let d = d as usize;
            let mut next = vec![0i128; poly.len() + d];
            for (i, c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        } else {
            divisors.push(d as usize);
        }
    }
    for d in divisors {
        let len = poly.len();
        let mut quot = vec![0i128; len - d];
        for i in (d..len).rev() {
            let carry = if i < len - d { quot[i] } else { 0 };
            quot[i - d] = poly[i] + carry;
        }
        debug_assert!((0..d).all(|i| poly[i] == -quot.get(i).copied().unwrap_or(0)));
        poly = quot;
    }
    let stretch = (n / rad) as usize;
    let mut out = vec![0i64; (poly.len() - 1) * stretch + 1];
    for (i, c) in poly.into_iter().enumerate() {
        out[i * stretch] = i64::try_from(c).expect("cyclotomic coefficient overflow");
    }
    out
}

/// Reduces a dense integer polynomial modulo `Φ_N`, returning exactly `degree` coefficients.
fn reduce(f: &Field, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let d = f.degree;
    if v.len() > d {
        for k in (d..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[k]);
            for (p, coef) in &f.tail {
                v[k - d + p] -= &c * coef;
            }
        }
    }
    v.resize(d, BigInt::zero());
    v
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(field: Arc<Field>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree);
        if num.iter().all(Zero::is_zero) {
            return Self { field, num, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut num {
                *c /= &g;
            }
            den /= &g;
        }
        Self { field, num, den }
    }

    fn from_dense(field: Arc<Field>, dense: Vec<BigInt>, den: BigInt) -> Self {
        let num = reduce(&field, dense);
        Self::from_parts(field, num, den)
    }

    pub fn zero(conductor: u64) -> Result<Self, ScalarError> {
        let f = field(conductor)?;
        let num = vec![BigInt::zero(); f.degree];
        Ok(Self { field: f, num, den: BigInt::one() })
    }

    pub fn from_integer(value: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(value.into()))
    }

    pub fn from_rational(value: &BigRational) -> Self {
        let f = field_unchecked(1);
        Self::from_parts(f, vec![value.numer().clone()], value.denom().clone())
    }

    /// `ζ_n^k` with `ζ_n = e^{2πi/n}`.
    ///
    /// Panics if `n` is zero or above [`MAX_CONDUCTOR`].
    pub fn zeta(n: u64, k: i64) -> Self {
        let f = field(n).expect("invalid conductor");
        let e = k.rem_euclid(n as i64) as usize;
        let mut dense = vec![BigInt::zero(); (e + 1).max(f.degree)];
        dense[e] = BigInt::one();
        Self::from_dense(f, dense, BigInt::one())
    }

    /// Builds an element from power-basis coefficients; `coeffs.len()` must equal `φ(n)`.
    pub fn from_coefficients(n: u64, coeffs: &[BigRational]) -> Result<Self, ScalarError> {
        let f = field(n)?;
        if coeffs.len() != f.degree {
            return Err(ScalarError::Malformed(format!(
                "conductor {n} needs {} coefficients, got {}",
                f.degree,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(f, num, den))
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The integer value, if the element is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Image in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u64) -> Result<Self, ScalarError> {
        if m == 0 || m % self.conductor() != 0 {
            return Err(ScalarError::Malformed(format!(
                "cannot embed conductor {} into {m}",
                self.conductor()
            )));
        }
        let target = field(m)?;
        Ok(self.embed_into(target))
    }

    fn embed_into(&self, target: Arc<Field>) -> Self {
        if target.conductor == self.conductor() {
            return self.clone();
        }
        let stretch = (target.conductor / self.conductor()) as usize;
        let len = ((self.num.len() - 1) * stretch + 1).max(target.degree);
        let mut dense = vec![BigInt::zero(); len];
        for (i, c) in self.num.iter().enumerate() {
            dense[i * stretch] = c.clone();
        }
        Self::from_dense(target, dense, self.den.clone())
    }

    fn unify<'a>(
        a: &'a Self,
        b: &'a Self,
        capped: bool,
    ) -> Result<(Cow<'a, Self>, Cow<'a, Self>), ScalarError> {
        if a.conductor() == b.conductor() {
            return Ok((Cow::Borrowed(a), Cow::Borrowed(b)));
        }
        let m = a.conductor().lcm(&b.conductor());
        let f = if capped { field(m)? } else { field_unchecked(m) };
        let lift = |x: &'a Self| {
            if x.conductor() == m {
                Cow::Borrowed(x)
            } else {
                Cow::Owned(x.embed_into(Arc::clone(&f)))
            }
        };
        Ok((lift(a), lift(b)))
    }

    fn add_sub(&self, other: &Self, negate: bool) -> Result<Self, ScalarError> {
        let (a, b) = Self::unify(self, other, true)?;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Ok(Self::from_parts(Arc::clone(&a.field), num, &a.den * &b.den))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add_sub(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add_sub(other, true)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let (a, b) = Self::unify(self, other, true)?;
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.conductor());
        }
        let d = a.field.degree;
        let mut dense = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_dense(Arc::clone(&a.field), dense, &a.den * &b.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let f = &self.field;
        let mut modulus = vec![BigRational::zero(); f.degree + 1];
        modulus[f.degree] = BigRational::one();
        for (p, c) in &f.tail {
            modulus[*p] = BigRational::from_integer(c.clone());
        }
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (gcd, s) = poly::ext_gcd_second(modulus, poly::trim(a));
        debug_assert_eq!(gcd.len(), 1, "Φ_N is irreducible");
        let scale = BigRational::from_integer(self.den.clone()) / &gcd[0];
        let coeffs: Vec<BigRational> = s.into_iter().map(|c| c * &scale).collect();
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut dense: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        dense.resize(dense.len().max(f.degree), BigInt::zero());
        Ok(Self::from_dense(Arc::clone(f), dense, den))
    }

    /// Image under the Galois automorphism `ζ_N ↦ ζ_N^k`; `k` must be coprime to `N`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor();
        let k = k.rem_euclid(n as i64) as u64;
        assert!(n == 1 || k.gcd(&n) == 1, "Galois exponent must be a unit mod N");
        if n <= 2 {
            return self.clone();
        }
        let mut dense = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let e = (i as u64 * k % n) as usize;
            dense[e] += c;
        }
        Self::from_dense(Arc::clone(&self.field), dense, self.den.clone())
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_integer(1).embed_into(Arc::clone(&self.field));
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Numeric value at `ζ_N = e^{2πi/N}` as `(re, im)`.
    ///
    /// Each coefficient is rounded to `f64` once and every basis power is evaluated directly,
    /// so the absolute error stays below `1e-15 · Σ|c_i|` (about `1e-12` whenever the coefficient
    /// 1-norm is below 1000).
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            let (s, co) = (TAU * i as f64 / n).sin_cos();
            re += v * co;
            im += v * s;
        }
        (re, im)
    }

    /// Recognizes `self = e^{2πik/M}`, returning `(k, M)` with `gcd(k, M) = 1`, `0 ≤ k < M`.
    ///
    /// Every root of unity in `Q(ζ_N)` is a power of `ζ_{lcm(2,N)}`; the candidate exponent is
    /// read off the numeric argument and then confirmed exactly. If the guess fails while the
    /// modulus is near 1, all exponents are checked exactly.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let n = self.conductor();
        let order = if n % 2 == 0 { n } else { 2 * n };
        let (re, im) = self.approx();
        let modulus = re.hypot(im);
        let hit = |j: u64| {
            let z = root_in_field(&self.field, order, j);
            (z == *self).then(|| reduce_fraction(j, order))
        };
        let guess = ((im.atan2(re) / TAU * order as f64).round() as i64).rem_euclid(order as i64);
        if let Some(r) = hit(guess as u64) {
            return Some(r);
        }
        if (modulus - 1.0).abs() > 1e-3 {
            return None;
        }
        (0..order).find_map(hit)
    }
}

/// `ζ_order^j` inside `Q(ζ_N)`, where `order` is `N` or `2N` with `N` odd.
fn root_in_field(f: &Arc<Field>, order: u64, j: u64) -> Cyclotomic {
    let n = f.conductor;
    if order == n {
        return Cyclotomic::zeta(n, j as i64);
    }
    // ζ_{2N} = -ζ_N^{(N+1)/2} for odd N
    let z = Cyclotomic::zeta(n, (j * ((n + 1) / 2) % n) as i64);
    if j % 2 == 1 {
        -z
    } else {
        z
    }
}

fn reduce_fraction(k: u64, m: u64) -> (u64, u64) {
    if k == 0 {
        return (0, 1);
    }
    let g = k.gcd(&m);
    (k / g, m / g)
}

/// Exact positive square root of a non-negative integer as a cyclotomic.
///
/// For an odd prime `p` the quadratic Gauss sum `Σ_k ζ_p^{k²}` equals `√p` when `p ≡ 1 (mod 4)`
/// and `i√p` when `p ≡ 3 (mod 4)`; `√2 = ζ_8 + ζ_8^{-1}`.
pub fn sqrt_integer(n: u64) -> Cyclotomic {
    if n == 0 {
        return Cyclotomic::from_integer(0);
    }
    let mut square = 1u64;
    let mut free = 1u64;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= rest;
    let mut acc = Cyclotomic::from_integer(square as i64);
    for p in distinct_prime_factors(free) {
        let root = if p == 2 {
            Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, -1)
        } else {
            let g: Cyclotomic = (0..p)
                .map(|k| Cyclotomic::zeta(p, (k * k % p) as i64))
                .fold(Cyclotomic::zero(p).expect("valid conductor"), |a, b| a + b);
            if p % 4 == 1 {
                g
            } else {
                -(Cyclotomic::zeta(4, 1) * g)
            }
        };
        acc = acc * root;
    }
    acc
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match Self::unify(self, other, false) {
            Ok((a, b)) => a.num == b.num && a.den == b.den,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.conductor();
        let mut first = true;
        for (i, c) in self.coefficients().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "ζ{n}^{i}")?,
                (_, false) => write!(f, "{mag}·ζ{n}^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(N={}: {})", self.conductor(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    #[serde(rename = "N")]
    n: u64,
    c: Vec<(String, String)>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let c = self
            .coefficients()
            .into_iter()
            .map(|q| (q.numer().to_string(), q.denom().to_string()))
            .collect();
        CyclotomicRepr { n: self.conductor(), c }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = CyclotomicRepr::deserialize(deserializer)?;
        let coeffs = repr
            .c
            .iter()
            .map(|(p, q)| {
                let p: BigInt = p.parse().map_err(D::Error::custom)?;
                let q: BigInt = q.parse().map_err(D::Error::custom)?;
                if q.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(p, q))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Cyclotomic::from_coefficients(repr.n, &coeffs).map_err(D::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect(concat!("cyclotomic ", stringify!($method)))
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

// Operator forms panic on division by zero or when the unified conductor exceeds
// MAX_CONDUCTOR; the checked_* methods report those as errors.
forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let num = self.num.iter().map(|c| -c).collect();
        Cyclotomic { field: Arc::clone(&self.field), num, den: self.den.clone() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::from_integer(0), |a, b| a + b)
    }
}

mod poly {
    //! Dense polynomials over Q, lowest degree first, trimmed of trailing zeros.

    use num_rational::BigRational;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        if a.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead = b.last().expect("nonzero divisor");
        let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + b.len() - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= &c * bi;
            }
            quot[k] = c;
        }
        rem.truncate(b.len() - 1);
        (quot, trim(rem))
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(out)
    }

    /// Returns `(g, s)` with `g = gcd(a, b)` and `s·b ≡ g (mod a)`.
    pub fn ext_gcd_second(
        a: Vec<BigRational>,
        b: Vec<BigRational>,
    ) -> (Vec<BigRational>, Vec<BigRational>) {
        let (mut r0, mut r1) = (trim(a), b);
        let (mut s0, mut s1) = (Vec::new(), vec![num_traits::One::one()]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}
