//! Exact scalars: arbitrary-precision rationals and residues modulo an odd prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// The ground field of a computation.
///
/// Characteristic two is never representable: every constructor rejects
/// `p = 2`, so `1/2` always exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(Modulus),
}

/// An odd prime below 2^31. Only obtainable through [`Field::prime`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl Field {
    /// Prime field of order `p`; `p` must be an odd prime below 2^31.
    pub fn prime(p: u32) -> Result<Self, LinalgError> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(LinalgError::InvalidField(p));
        }
        Ok(Field::Prime(Modulus(p)))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar(Repr::Q(BigRational::from_integer(BigInt::from(n)))),
            Field::Prime(Modulus(p)) => Scalar(Repr::P {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            }),
        }
    }

    /// `num / den` in this field. Fails if `den` vanishes in the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        d.inv().map(|d| &n * &d).ok_or(LinalgError::DivisionByZero)
    }

    /// Image of a rational number in this field, if its denominator is invertible.
    pub fn reduce(self, q: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar(Repr::Q(q.clone()))),
            Field::Prime(Modulus(p)) => {
                let modulus = BigInt::from(p);
                let num = q.numer().mod_floor(&modulus).to_u32()?;
                let den = q.denom().mod_floor(&modulus).to_u32()?;
                let n = Scalar(Repr::P { value: num, modulus: p });
                let d = Scalar(Repr::P { value: den, modulus: p });
                d.inv().map(|d| &n * &d)
            }
        }
    }

    /// Parses `"a"` or `"a/b"` (with optional sign) into this field.
    pub fn parse(self, text: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::ParseLiteral(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        self.reduce(&BigRational::new(num, den)).ok_or_else(bad)
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(Modulus(p)) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(Modulus(p)) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator (enforced by
/// `BigRational`); prime-field residues lie in `[0, p)`. Arithmetic between
/// scalars of different fields is a logic error and panics; containers such as
/// [`super::Matrix`] reject mixed fields at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    P { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Q(_) => Field::Rational,
            Repr::P { modulus, .. } => Field::Prime(Modulus(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_zero(),
            Repr::P { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_one(),
            Repr::P { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let repr = match &self.0 {
            Repr::Q(q) => Repr::Q(q.recip()),
            Repr::P { value, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let mut base = *value as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Repr::P {
                    value: acc as u32,
                    modulus: *modulus,
                }
            }
        };
        Some(Scalar(repr))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn half(&self) -> Scalar {
        let two = self.field().from_i64(2);
        self.checked_div(&two)
            .expect("2 is invertible in every supported field")
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(q) => Some(q),
            Repr::P { .. } => None,
        }
    }

    /// Residue in `[0, p)`, if this is a prime-field scalar.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Q(_) => None,
            Repr::P { value, .. } => Some(*value),
        }
    }

    /// Whether this is a nonzero rational with negative sign.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_negative(),
            Repr::P { .. } => false,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let repr = match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a + b),
            (Repr::P { value: a, modulus: p }, Repr::P { value: b, modulus: q }) if p == q => Repr::P {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        };
        Scalar(repr)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let repr = match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a - b),
            (Repr::P { value: a, modulus: p }, Repr::P { value: b, modulus: q }) if p == q => Repr::P {
                value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        };
        Scalar(repr)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let repr = match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a * b),
            (Repr::P { value: a, modulus: p }, Repr::P { value: b, modulus: q }) if p == q => Repr::P {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        };
        Scalar(repr)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match &self.0 {
            Repr::Q(a) => Repr::Q(-a),
            Repr::P { value, modulus } => Repr::P {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        };
        Scalar(repr)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Panics on division by zero; use [`Scalar::checked_div`] when the divisor
/// may vanish.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::P { value, .. } => write!(f, "{value}"),
        }
    }
}
