//! Exact arithmetic in the cyclotomic field Q(ζ₈).
//!
//! An element is stored as `a₀ + a₁ζ + a₂ζ² + a₃ζ³` with rational
//! coefficients, reduced by `ζ⁴ = −1`. The basis `{1, ζ, ζ², ζ³}` is a
//! Q-basis, so equality is coefficient-wise.
//!
//! Useful constants: `i = ζ²`, `√2 = ζ − ζ³`, `1/√2 = (ζ − ζ³)/2`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("division by zero in Q(ζ₈)")]
    DivisionByZero,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, CycError> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| CycError::Parse(s.to_string()))?;
    Ok(r)
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycQ8 {
    c: [Rational; 4],
}

impl CycQ8 {
    pub fn new(c: [Rational; 4]) -> Self {
        CycQ8 { c }
    }

    pub fn from_ints(a: [i64; 4]) -> Self {
        CycQ8::new(a.map(|x| Rational::from_integer(x.into())))
    }

    pub fn zero() -> Self {
        CycQ8::new([Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn one() -> Self {
        CycQ8::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        CycQ8::new([r, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn from_int(n: i64) -> Self {
        CycQ8::from_rational(Rational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        CycQ8::from_rational(rat(n, d))
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut a = [0i64; 4];
        if k < 4 {
            a[k] = 1;
        } else {
            a[k - 4] = -1;
        }
        CycQ8::from_ints(a)
    }

    pub fn zeta() -> Self {
        CycQ8::zeta_pow(1)
    }

    /// The imaginary unit ζ².
    pub fn i() -> Self {
        CycQ8::zeta_pow(2)
    }

    /// √2 = ζ − ζ³.
    pub fn sqrt2() -> Self {
        CycQ8::from_ints([0, 1, 0, -1])
    }

    /// 1/√2 = (ζ − ζ³)/2.
    pub fn inv_sqrt2() -> Self {
        CycQ8::new([Rational::zero(), rat(1, 2), Rational::zero(), rat(-1, 2)])
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycQ8::new([&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r])
    }

    /// Complex conjugation: the automorphism fixing Q with ζ ↦ ζ⁻¹ = −ζ³.
    pub fn conj(&self) -> Self {
        // ζ ↦ −ζ³, ζ² ↦ −ζ², ζ³ ↦ −ζ
        CycQ8::new([self.c[0].clone(), -&self.c[3], -&self.c[2], -&self.c[1]])
    }

    /// Galois automorphism ζ ↦ ζ^k for odd k.
    pub fn galois(&self, k: i64) -> Self {
        assert!(k % 2 != 0, "galois exponent must be odd");
        let mut out = CycQ8::zero();
        for (j, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                out += &CycQ8::zeta_pow(k * j as i64).scale(a);
            }
        }
        out
    }

    /// Field norm down to Q: product of the four Galois conjugates.
    pub fn norm(&self) -> Rational {
        let p = self * &self.galois(3) * self.galois(5) * self.galois(7);
        p.as_rational().cloned().expect("norm of an element of Q(ζ₈) is rational")
    }

    /// Multiplicative inverse by an exact 4×4 solve over Q.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        // Column k of the multiplication matrix holds the coefficients of self·ζ^k.
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); 5]; 4];
        for k in 0..4 {
            let col = self * &CycQ8::zeta_pow(k as i64);
            for r in 0..4 {
                m[r][k] = col.c[r].clone();
            }
        }
        m[0][4] = Rational::one();
        // Gauss-Jordan on the augmented system.
        for col in 0..4 {
            let piv = (col..4)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(CycError::DivisionByZero)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..4 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..5 {
                        let d = &f * &m[col][c];
                        m[r][c] -= d;
                    }
                }
            }
        }
        Ok(CycQ8::new([m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone()]))
    }

    pub fn try_div(&self, other: &CycQ8) -> Result<Self, CycError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Result<Self, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = CycQ8::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Float embedding ζ ↦ e^{iπ/4}. For display and debugging only.
    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (k, a) in self.c.iter().enumerate() {
            let v = a.to_f64().unwrap_or(f64::NAN);
            z += Complex64::from_polar(v, std::f64::consts::FRAC_PI_4 * k as f64);
        }
        z
    }

    /// A square root inside Q(ζ₈), if one exists.
    pub fn sqrt(&self) -> Option<CycQ8> {
        if self.is_zero() {
            return Some(CycQ8::zero());
        }
        // Write self = P + Q·i with P, Q in the real subfield Q(√2) and solve
        // (u + v·i)² = P + Q·i for u, v in Q(√2).
        let (p, q) = self.real_imag();
        let two = CycQ8::from_int(2);
        let half = CycQ8::frac(1, 2);
        let n0 = sqrt_real(&(&(&p * &p) + &(&q * &q)))?;
        for n in [n0.clone(), -n0] {
            let u2 = &(&p + &n) * &half;
            let Some(u0) = sqrt_real(&u2) else { continue };
            let candidates: Vec<(CycQ8, CycQ8)> = if u0.is_zero() {
                match sqrt_real(&-&p) {
                    Some(v) => vec![(CycQ8::zero(), v)],
                    None => continue,
                }
            } else {
                let v = q.try_div(&(&two * &u0)).ok()?;
                vec![(u0, v)]
            };
            for (u, v) in candidates {
                let y = &u + &(&v * &CycQ8::i());
                if &y * &y == *self {
                    return Some(y);
                }
            }
        }
        None
    }

    /// Split into real and imaginary parts, both in Q(√2) ⊂ Q(ζ₈).
    pub fn real_imag(&self) -> (CycQ8, CycQ8) {
        let half = CycQ8::frac(1, 2);
        let re = &(self + &self.conj()) * &half;
        let im = &(self - &self.conj()) * &(&half * &-CycQ8::i());
        (re, im)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }
}

fn sqrt_q(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Square root of an element of the real subfield Q(√2), staying in Q(√2).
fn sqrt_real(x: &CycQ8) -> Option<CycQ8> {
    // x = r + s√2 with √2 = ζ − ζ³; coefficients satisfy a₂ = 0, a₃ = −a₁.
    if !x.is_real() {
        return None;
    }
    let r = x.c[0].clone();
    let s = x.c[1].clone();
    let from_ms = |m: &Rational, n: &Rational| {
        &CycQ8::from_rational(m.clone()) + &CycQ8::sqrt2().scale(n)
    };
    let mut cands = Vec::new();
    if s.is_zero() {
        if let Some(m) = sqrt_q(&r) {
            cands.push(from_ms(&m, &Rational::zero()));
        }
        if let Some(n) = sqrt_q(&(&r / Rational::from_integer(2.into()))) {
            cands.push(from_ms(&Rational::zero(), &n));
        }
    } else {
        // (m + n√2)² = m² + 2n² + 2mn√2
        let disc = &r * &r - &s * &s * Rational::from_integer(2.into());
        if let Some(sd) = sqrt_q(&disc) {
            let two = Rational::from_integer(2.into());
            for m2 in [(&r + &sd) / &two, (&r - &sd) / &two] {
                if let Some(m) = sqrt_q(&m2) {
                    if !m.is_zero() {
                        let n = &s / (&two * &m);
                        cands.push(from_ms(&m, &n));
                    }
                }
            }
        }
    }
    cands.into_iter().find(|y| &(y * y) == x)
}

impl Default for CycQ8 {
    fn default() -> Self {
        CycQ8::zero()
    }
}

impl From<i64> for CycQ8 {
    fn from(n: i64) -> Self {
        CycQ8::from_int(n)
    }
}

impl From<Rational> for CycQ8 {
    fn from(r: Rational) -> Self {
        CycQ8::from_rational(r)
    }
}

fn mul_raw(x: &CycQ8, y: &CycQ8) -> CycQ8 {
    let mut out: [Rational; 4] = Default::default();
    for (i, a) in x.c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.c.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let p = a * b;
            let k = i + j;
            if k < 4 {
                out[k] += p;
            } else {
                out[k - 4] -= p;
            }
        }
    }
    CycQ8::new(out)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycQ8> for &'a CycQ8 {
            type Output = CycQ8;
            fn $method(self, rhs: &'a CycQ8) -> CycQ8 {
                let f: fn(&CycQ8, &CycQ8) -> CycQ8 = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycQ8> for CycQ8 {
            type Output = CycQ8;
            fn $method(self, rhs: CycQ8) -> CycQ8 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycQ8> for CycQ8 {
            type Output = CycQ8;
            fn $method(self, rhs: &'a CycQ8) -> CycQ8 {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<CycQ8> for &'a CycQ8 {
            type Output = CycQ8;
            fn $method(self, rhs: CycQ8) -> CycQ8 {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| CycQ8::new([
    &x.c[0] + &y.c[0],
    &x.c[1] + &y.c[1],
    &x.c[2] + &y.c[2],
    &x.c[3] + &y.c[3]
]));
forward_binop!(Sub, sub, |x, y| CycQ8::new([
    &x.c[0] - &y.c[0],
    &x.c[1] - &y.c[1],
    &x.c[2] - &y.c[2],
    &x.c[3] - &y.c[3]
]));
forward_binop!(Mul, mul, mul_raw);

impl AddAssign<&CycQ8> for CycQ8 {
    fn add_assign(&mut self, rhs: &CycQ8) {
        for k in 0..4 {
            if !rhs.c[k].is_zero() {
                self.c[k] += &rhs.c[k];
            }
        }
    }
}

impl SubAssign<&CycQ8> for CycQ8 {
    fn sub_assign(&mut self, rhs: &CycQ8) {
        for k in 0..4 {
            if !rhs.c[k].is_zero() {
                self.c[k] -= &rhs.c[k];
            }
        }
    }
}

impl Neg for &CycQ8 {
    type Output = CycQ8;
    fn neg(self) -> CycQ8 {
        CycQ8::new([-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]])
    }
}

impl Neg for CycQ8 {
    type Output = CycQ8;
    fn neg(self) -> CycQ8 {
        -&self
    }
}

impl std::iter::Sum for CycQ8 {
    fn sum<I: Iterator<Item = CycQ8>>(iter: I) -> Self {
        let mut acc = CycQ8::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for CycQ8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "ζ", "ζ²", "ζ³"];
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a.numer().sign() == Sign::Minus;
            let abs = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", names[k])?;
            } else {
                write!(f, "{abs}{}", names[k])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycQ8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycQ8({self})")
    }
}

impl Serialize for CycQ8 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: [String; 4] = [
            format_rational(&self.c[0]),
            format_rational(&self.c[1]),
            format_rational(&self.c[2]),
            format_rational(&self.c[3]),
        ];
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycQ8 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: [String; 4] = Deserialize::deserialize(d)?;
        let mut c: [Rational; 4] = Default::default();
        for (k, s) in v.iter().enumerate() {
            c[k] = parse_rational(s).map_err(D::Error::custom)?;
        }
        Ok(CycQ8::new(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> CycQ8 {
        CycQ8::zeta_pow(k)
    }

    #[test]
    fn zeta_products() {
        assert_eq!(z(1) * z(3), CycQ8::from_int(-1));
        assert_eq!(CycQ8::sqrt2() * CycQ8::sqrt2(), CycQ8::from_int(2));
        assert_eq!(CycQ8::i() * CycQ8::i(), CycQ8::from_int(-1));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(CycQ8::i().conj(), -CycQ8::i());
        assert_eq!(CycQ8::sqrt2().conj(), CycQ8::sqrt2());
        let x = CycQ8::frac(1, 2) + CycQ8::i();
        assert_eq!(x.conj(), CycQ8::frac(1, 2) - CycQ8::i());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CycQ8::from_int(2).inv().unwrap(), CycQ8::frac(1, 2));
        assert_eq!(CycQ8::sqrt2().inv().unwrap(), CycQ8::inv_sqrt2());
        assert_eq!(z(1).inv().unwrap(), -z(3));
        assert_eq!(CycQ8::zero().inv(), Err(CycError::DivisionByZero));
    }

    #[test]
    fn sqrt_of_units_and_twos() {
        assert_eq!(CycQ8::i().sqrt().map(|s| &s * &s), Some(CycQ8::i()));
        let s = CycQ8::from_int(2).sqrt().unwrap();
        assert_eq!(&s * &s, CycQ8::from_int(2));
        let s = CycQ8::from_int(-1).sqrt().unwrap();
        assert_eq!(&s * &s, CycQ8::from_int(-1));
        // √3 is not in Q(ζ₈).
        assert_eq!(CycQ8::from_int(3).sqrt(), None);
        // ζ itself has no square root here (it would be a primitive 16th root).
        assert_eq!(z(1).sqrt(), None);
    }

    #[test]
    fn norm_of_sqrt2_is_4() {
        assert_eq!(CycQ8::sqrt2().norm(), rat(4, 1));
    }

    #[test]
    fn serialization_uses_rational_strings() {
        let x = CycQ8::new([rat(1, 2), rat(0, 1), rat(-1, 2), rat(0, 1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["1/2","0","-1/2","0"]"#);
        let back: CycQ8 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn complex_embedding() {
        let w = z(1).to_complex();
        assert!((w - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-15);
        assert!((CycQ8::sqrt2().to_complex().re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn display() {
        assert_eq!(CycQ8::inv_sqrt2().to_string(), "1/2ζ - 1/2ζ³");
        assert_eq!(CycQ8::from_int(-3).to_string(), "-3");
    }
}
