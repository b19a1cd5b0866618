//! Exact coefficient arithmetic: integers, residues mod m, and rationals,
//! with dense polynomials and truncated power series on top.

mod poly;
mod series;

pub use poly::Poly;
pub use series::{Series, SeriesSqrt};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient ring every polynomial and series carries with it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    /// Arbitrary-precision integers.
    Integers,
    /// Residues modulo m, stored normalized to 0..m-1.
    Residues(u64),
    /// Exact rationals, fully reduced with positive denominator.
    Rationals,
}

impl Domain {
    /// Residue domain with a validated modulus (m >= 2).
    pub fn residues(m: u64) -> Result<Domain> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Domain::Residues(m))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Domain::Residues(m) => Some(*m),
            _ => None,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Domain::Integers => Coeff::Int(BigInt::zero()),
            Domain::Residues(_) => Coeff::Res(0),
            Domain::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Domain::Integers => Coeff::Int(BigInt::one()),
            Domain::Residues(_) => Coeff::Res(1),
            Domain::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Domain::Integers => Coeff::Int(BigInt::from(v)),
            Domain::Residues(m) => Coeff::Res((v as i128).rem_euclid(*m as i128) as u64),
            Domain::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Domain::Integers => Coeff::Int(v.clone()),
            Domain::Residues(m) => {
                let mm = BigInt::from(*m);
                let r = ((v % &mm) + &mm) % &mm;
                Coeff::Res(r.to_u64().expect("normalized residue fits u64"))
            }
            Domain::Rationals => Coeff::Rat(BigRational::from_integer(v.clone())),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Domain::Residues(m), Coeff::Res(x), Coeff::Res(y)) => {
                Coeff::Res(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (Domain::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => panic!("coefficient kind does not match domain {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x - y),
            (Domain::Residues(m), Coeff::Res(x), Coeff::Res(y)) => {
                Coeff::Res(((*x as u128 + (*m - *y) as u128) % *m as u128) as u64)
            }
            (Domain::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            _ => panic!("coefficient kind does not match domain {self}"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Domain::Residues(m), Coeff::Res(x), Coeff::Res(y)) => {
                Coeff::Res(((*x as u128 * *y as u128) % *m as u128) as u64)
            }
            (Domain::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => panic!("coefficient kind does not match domain {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Domain::Integers, Coeff::Int(x)) => Coeff::Int(-x),
            (Domain::Residues(m), Coeff::Res(x)) => Coeff::Res(if *x == 0 { 0 } else { m - x }),
            (Domain::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => panic!("coefficient kind does not match domain {self}"),
        }
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        match (self, a) {
            (Domain::Integers, Coeff::Int(x)) => x.abs().is_one(),
            (Domain::Residues(m), Coeff::Res(x)) => gcd_u64(*x, *m) == 1,
            (Domain::Rationals, Coeff::Rat(x)) => !x.is_zero(),
            _ => panic!("coefficient kind does not match domain {self}"),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        match (self, a) {
            (Domain::Integers, Coeff::Int(x)) => {
                if x.abs().is_one() {
                    Ok(Coeff::Int(x.clone()))
                } else {
                    Err(Error::NonUnitConstant(*self))
                }
            }
            (Domain::Residues(m), Coeff::Res(x)) => {
                mod_inverse(*x, *m).map(Coeff::Res).ok_or(Error::NonUnitConstant(*self))
            }
            (Domain::Rationals, Coeff::Rat(x)) => {
                if x.is_zero() {
                    Err(Error::NonUnitConstant(*self))
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            _ => panic!("coefficient kind does not match domain {self}"),
        }
    }

    /// Map a coefficient of `self` into `target`, where this is meaningful.
    pub fn convert(&self, a: &Coeff, target: &Domain) -> Result<Coeff> {
        if self == target {
            return Ok(a.clone());
        }
        match (self, a, target) {
            (Domain::Integers, Coeff::Int(x), _) => Ok(target.from_bigint(x)),
            (Domain::Rationals, Coeff::Rat(x), _) => {
                if x.denom().is_one() {
                    Ok(target.from_bigint(x.numer()))
                } else {
                    Err(Error::NotIntegral)
                }
            }
            _ => Err(Error::UnsupportedConversion(*self, *target)),
        }
    }

    pub fn format(&self, a: &Coeff) -> String {
        match a {
            Coeff::Int(x) => x.to_string(),
            Coeff::Res(x) => x.to_string(),
            Coeff::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
        }
    }

    pub fn parse(&self, token: &str) -> Result<Coeff> {
        let bad = |t: &str| Error::Parse(format!("bad coefficient `{t}`"));
        match self {
            Domain::Integers => token
                .parse::<BigInt>()
                .map(Coeff::Int)
                .map_err(|_| bad(token)),
            Domain::Residues(_) => {
                let v = token.parse::<i128>().map_err(|_| bad(token))?;
                let m = self.modulus().unwrap() as i128;
                Ok(Coeff::Res(v.rem_euclid(m) as u64))
            }
            Domain::Rationals => {
                if let Some((n, d)) = token.split_once('/') {
                    let n = n.parse::<BigInt>().map_err(|_| bad(token))?;
                    let d = d.parse::<BigInt>().map_err(|_| bad(token))?;
                    if d.is_zero() {
                        return Err(bad(token));
                    }
                    Ok(Coeff::Rat(BigRational::new(n, d)))
                } else {
                    let n = token.parse::<BigInt>().map_err(|_| bad(token))?;
                    Ok(Coeff::Rat(BigRational::from_integer(n)))
                }
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => write!(f, "Z"),
            Domain::Residues(m) => write!(f, "Z/{m}Z"),
            Domain::Rationals => write!(f, "Q"),
        }
    }
}

/// A single coefficient; the variant always matches the owning domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coeff {
    Int(BigInt),
    Res(u64),
    Rat(BigRational),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(x) => x.is_zero(),
            Coeff::Res(x) => *x == 0,
            Coeff::Rat(x) => x.is_zero(),
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    // extended euclid on i128; m >= 2
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}
