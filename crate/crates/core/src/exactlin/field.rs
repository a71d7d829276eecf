use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime characteristic; products of two residues fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// A prime field `F_p` or the rationals (characteristic 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    characteristic: u64,
}

/// A field element. Residues are kept reduced in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fe {
    Fp(u64),
    Q(BigRational),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(characteristic: u64) -> Result<Field> {
        if characteristic == 0 || (is_prime(characteristic) && characteristic <= MAX_PRIME) {
            Ok(Field { characteristic })
        } else {
            Err(Error::InvalidField(characteristic))
        }
    }

    /// `F_p`; panics unless `p` is an admissible prime.
    pub fn fp(p: u64) -> Field {
        Field::new(p).expect("characteristic must be an admissible prime")
    }

    pub fn rationals() -> Field {
        Field { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_prime_field(&self) -> bool {
        self.characteristic != 0
    }

    pub fn zero(&self) -> Fe {
        match self.characteristic {
            0 => Fe::Q(BigRational::zero()),
            _ => Fe::Fp(0),
        }
    }

    pub fn one(&self) -> Fe {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        match self.characteristic {
            0 => Fe::Q(BigRational::from_integer(BigInt::from(n))),
            p => Fe::Fp(reduce_i64(n, p)),
        }
    }

    /// Embeds a rational number; fails in characteristic `p` when `p` divides the denominator.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Fe> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self.characteristic {
            0 => Ok(Fe::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))),
            _ => {
                let d = self.from_i64(den);
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_i64(num), &inv))
            }
        }
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        match (a, b) {
            (Fe::Fp(x), Fe::Fp(y)) => Fe::Fp((x + y) % self.characteristic),
            (Fe::Q(x), Fe::Q(y)) => Fe::Q(x + y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        match (a, b) {
            (Fe::Fp(x), Fe::Fp(y)) => Fe::Fp((x + self.characteristic - y) % self.characteristic),
            (Fe::Q(x), Fe::Q(y)) => Fe::Q(x - y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        match (a, b) {
            (Fe::Fp(x), Fe::Fp(y)) => Fe::Fp(x * y % self.characteristic),
            (Fe::Q(x), Fe::Q(y)) => Fe::Q(x * y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        self.sub(&self.zero(), a)
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe> {
        match a {
            Fe::Fp(0) => Err(Error::DivisionByZero),
            Fe::Fp(x) => Ok(Fe::Fp(inv_mod(*x, self.characteristic))),
            Fe::Q(x) if x.is_zero() => Err(Error::DivisionByZero),
            Fe::Q(x) => Ok(Fe::Q(x.recip())),
        }
    }

    pub fn pow(&self, a: &Fe, mut e: u64) -> Fe {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements of a prime field in increasing order; `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<Fe>> {
        match self.characteristic {
            0 => None,
            p => Some((0..p).map(Fe::Fp).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

impl Fe {
    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Fp(x) => *x == 0,
            Fe::Q(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Fe::Fp(x) => *x == 1,
            Fe::Q(x) => x.is_one(),
        }
    }

    /// Integer value when the element is a residue or an integral rational that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Fe::Fp(x) => Some(*x as i64),
            Fe::Q(x) if x.is_integer() => x.to_integer().to_i64(),
            Fe::Q(_) => None,
        }
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Fp(x) => write!(f, "{x}"),
            Fe::Q(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Fe::Q(x) => {
                let sign = if x.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", x.numer().abs(), x.denom())
            }
        }
    }
}

pub(crate) fn reduce_i64(n: i64, p: u64) -> u64 {
    let r = n.rem_euclid(p as i64);
    r as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}
