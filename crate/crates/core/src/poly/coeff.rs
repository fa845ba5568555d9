use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field element: an exact rational, or a residue modulo a prime `p < 2³¹`.
///
/// Mixed arithmetic between the two variants (or between different moduli)
/// is a logic error; polynomial operations check ring compatibility first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

pub fn is_prime_u32(n: u32) -> bool {
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

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn reduce_bigint(n: &BigInt, modulus: u32) -> u32 {
    let m = BigInt::from(modulus);
    let r = ((n % &m) + &m) % &m;
    r.to_u32().expect("residue fits in u32")
}

impl Coeff {
    pub fn zero(characteristic: u32) -> Coeff {
        Coeff::from_i64(0, characteristic)
    }

    pub fn one(characteristic: u32) -> Coeff {
        Coeff::from_i64(1, characteristic)
    }

    pub fn from_i64(v: i64, characteristic: u32) -> Coeff {
        if characteristic == 0 {
            Coeff::Rational(BigRational::from_integer(BigInt::from(v)))
        } else {
            let m = characteristic as i64;
            Coeff::Modular {
                value: v.rem_euclid(m) as u32,
                modulus: characteristic,
            }
        }
    }

    pub fn from_bigint(v: &BigInt, characteristic: u32) -> Coeff {
        if characteristic == 0 {
            Coeff::Rational(BigRational::from_integer(v.clone()))
        } else {
            Coeff::Modular {
                value: reduce_bigint(v, characteristic),
                modulus: characteristic,
            }
        }
    }

    /// `num / den`; `None` when the denominator vanishes in the field.
    pub fn from_ratio(num: &BigInt, den: &BigInt, characteristic: u32) -> Option<Coeff> {
        if characteristic == 0 {
            if den.is_zero() {
                return None;
            }
            Some(Coeff::Rational(BigRational::new(num.clone(), den.clone())))
        } else {
            let d = Coeff::from_bigint(den, characteristic);
            let inv = d.inv()?;
            Some(Coeff::from_bigint(num, characteristic).mul(&inv))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Coeff::Rational(_) => 0,
            Coeff::Modular { modulus, .. } => *modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    /// True for negative rationals; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Coeff::Rational(r) if r.is_negative())
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (
                Coeff::Modular { value: a, modulus },
                Coeff::Modular {
                    value: b,
                    modulus: m2,
                },
            ) => {
                debug_assert_eq!(modulus, m2);
                let s = (*a as u64 + *b as u64) % *modulus as u64;
                Coeff::Modular {
                    value: s as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (
                Coeff::Modular { value: a, modulus },
                Coeff::Modular {
                    value: b,
                    modulus: m2,
                },
            ) => {
                debug_assert_eq!(modulus, m2);
                let s = (*a as u64 * *b as u64) % *modulus as u64;
                Coeff::Modular {
                    value: s as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Rational(a) => Coeff::Rational(a.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: mod_pow(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    /// `self / other`. Panics when `other` is zero.
    pub fn div(&self, other: &Coeff) -> Coeff {
        self.mul(&other.inv().expect("division by zero coefficient"))
    }

    pub fn pow(&self, mut exp: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = Coeff::one(self.characteristic());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn abs(&self) -> Coeff {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(r) => Some(r),
            Coeff::Modular { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u32> {
        match self {
            Coeff::Rational(_) => None,
            Coeff::Modular { value, .. } => Some(*value),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
