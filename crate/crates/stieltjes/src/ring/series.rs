use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Domain, Poly};

/// Truncated formal power series: coefficients of x^0..x^order, all present.
///
/// Binary operations never extend precision: the result carries the minimum
/// of the operand orders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    domain: Domain,
    coeffs: Vec<Coeff>, // length = order + 1
}

/// Result of an exact square root: the series over the rationals plus a flag
/// recording whether every coefficient is an integer.
#[derive(Clone, Debug)]
pub struct SeriesSqrt {
    pub series: Series,
    pub integral: bool,
}

impl Series {
    pub fn from_coeffs(domain: Domain, coeffs: Vec<Coeff>) -> Series {
        assert!(!coeffs.is_empty(), "a series holds at least the constant term");
        Series { domain, coeffs }
    }

    pub fn zero(domain: Domain, order: usize) -> Series {
        Series { domain, coeffs: vec![domain.zero(); order + 1] }
    }

    pub fn one(domain: Domain, order: usize) -> Series {
        let mut s = Series::zero(domain, order);
        s.coeffs[0] = domain.one();
        s
    }

    /// Series from sparse (exponent, value) terms; exponents beyond the order
    /// are simply not representable and are rejected.
    pub fn from_terms(domain: Domain, order: usize, terms: &[(usize, i64)]) -> Result<Series> {
        let mut s = Series::zero(domain, order);
        for &(e, v) in terms {
            if e > order {
                return Err(Error::DegreeOverflow { degree: e, order });
            }
            s.coeffs[e] = domain.add(&s.coeffs[e], &domain.from_i64(v));
        }
        Ok(s)
    }

    /// Exact conversion: fails if the polynomial has a term beyond `order`.
    pub fn from_poly_exact(p: &Poly, order: usize) -> Result<Series> {
        if let Some(d) = p.degree() {
            if d > order {
                return Err(Error::DegreeOverflow { degree: d, order });
            }
        }
        Ok(Series::from_poly_truncated(p, order))
    }

    /// Conversion that silently drops terms beyond `order`.
    pub fn from_poly_truncated(p: &Poly, order: usize) -> Series {
        let domain = p.domain();
        let mut coeffs = Vec::with_capacity(order + 1);
        for i in 0..=order {
            coeffs.push(p.coeff(i));
        }
        Series { domain, coeffs }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Coefficient of x^i; requesting beyond the order is a caller bug.
    pub fn coeff(&self, i: usize) -> &Coeff {
        assert!(i < self.coeffs.len(), "coefficient {i} beyond order {}", self.order());
        &self.coeffs[i]
    }

    pub(crate) fn coeff_mut(&mut self, i: usize) -> &mut Coeff {
        assert!(i < self.coeffs.len(), "coefficient {i} beyond order {}", self.order());
        &mut self.coeffs[i]
    }

    /// Multiply by x^k, truncating at the original order.
    pub fn mul_x_pow(&self, k: usize) -> Series {
        if k == 0 {
            return self.clone();
        }
        let n = self.order();
        let mut out = Series::zero(self.domain, n);
        if k <= n {
            for i in 0..=n - k {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "truncate cannot extend a series");
        Series { domain: self.domain, coeffs: self.coeffs[..=order].to_vec() }
    }

    fn check_domain(&self, rhs: &Series) -> Result<()> {
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch(self.domain, rhs.domain));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Series) -> Result<Series> {
        self.check_domain(rhs)?;
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| self.domain.add(&self.coeffs[i], &rhs.coeffs[i]))
            .collect();
        Ok(Series { domain: self.domain, coeffs })
    }

    pub fn sub(&self, rhs: &Series) -> Result<Series> {
        self.check_domain(rhs)?;
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| self.domain.sub(&self.coeffs[i], &rhs.coeffs[i]))
            .collect();
        Ok(Series { domain: self.domain, coeffs })
    }

    pub fn mul(&self, rhs: &Series) -> Result<Series> {
        self.check_domain(rhs)?;
        let n = self.order().min(rhs.order());
        let mut out = vec![self.domain.zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = self.domain.add(&out[i + j], &self.domain.mul(a, b));
            }
        }
        Ok(Series { domain: self.domain, coeffs: out })
    }

    pub fn scale(&self, c: &Coeff) -> Series {
        let coeffs = self.coeffs.iter().map(|a| self.domain.mul(a, c)).collect();
        Series { domain: self.domain, coeffs }
    }

    /// Multiplicative inverse: the constant term must be a unit.
    /// Standard coefficient recurrence b_n = -b_0 * sum a_i b_{n-i}.
    pub fn inverse(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        let b0 = self.domain.inv(a0)?;
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        out.push(b0.clone());
        for k in 1..=n {
            let mut acc = self.domain.zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() || out[k - i].is_zero() {
                    continue;
                }
                acc = self.domain.add(&acc, &self.domain.mul(&self.coeffs[i], &out[k - i]));
            }
            out.push(self.domain.neg(&self.domain.mul(&b0, &acc)));
        }
        Ok(Series { domain: self.domain, coeffs: out })
    }

    /// self / rhs by forward substitution; rhs needs a unit constant term.
    pub fn div(&self, rhs: &Series) -> Result<Series> {
        self.check_domain(rhs)?;
        let q0inv = self.domain.inv(&rhs.coeffs[0])?;
        let n = self.order().min(rhs.order());
        let mut out: Vec<Coeff> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                if rhs.coeffs[i].is_zero() || out[k - i].is_zero() {
                    continue;
                }
                acc = self.domain.sub(&acc, &self.domain.mul(&rhs.coeffs[i], &out[k - i]));
            }
            out.push(self.domain.mul(&acc, &q0inv));
        }
        Ok(Series { domain: self.domain, coeffs: out })
    }

    /// Exact square root over the rationals via the coefficient recursion
    /// c_n = (s_n - sum_{0<i<n} c_i c_{n-i}) / 2. Input must be over the
    /// integers or rationals with constant term 1.
    pub fn sqrt_exact(&self) -> Result<SeriesSqrt> {
        let rat = match self.domain {
            Domain::Integers | Domain::Rationals => self.reduce(Domain::Rationals)?,
            d => return Err(Error::UnsupportedConversion(d, Domain::Rationals)),
        };
        if rat.coeffs[0] != Domain::Rationals.one() {
            return Err(Error::SqrtConstant);
        }
        let n = rat.order();
        let two = BigRational::from_integer(BigInt::from(2));
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(BigRational::one());
        for k in 1..=n {
            let Coeff::Rat(sk) = &rat.coeffs[k] else { unreachable!() };
            let mut acc = sk.clone();
            for i in 1..k {
                acc -= &out[i] * &out[k - i];
            }
            out.push(acc / &two);
        }
        let integral = out.iter().all(|c| c.denom().is_one());
        let coeffs = out.into_iter().map(Coeff::Rat).collect();
        Ok(SeriesSqrt {
            series: Series { domain: Domain::Rationals, coeffs },
            integral,
        })
    }

    /// x -> x^k for k >= 2, truncated at the original order.
    pub fn substitute_power(&self, k: usize) -> Series {
        assert!(k >= 2, "substitute_power requires k >= 2");
        let n = self.order();
        let mut out = Series::zero(self.domain, n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match i.checked_mul(k) {
                Some(e) if e <= n => out.coeffs[e] = a.clone(),
                _ => break,
            }
        }
        out
    }

    /// x -> -x.
    pub fn negate_argument(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| if i % 2 == 1 { self.domain.neg(a) } else { a.clone() })
            .collect();
        Series { domain: self.domain, coeffs }
    }

    pub fn reduce(&self, target: Domain) -> Result<Series> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| self.domain.convert(a, &target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series { domain: target, coeffs })
    }

    /// One-line text form `order=N; c0 c1 ... cN`.
    pub fn to_line(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(|c| self.domain.format(c)).collect();
        format!("order={}; {}", self.order(), body.join(" "))
    }

    pub fn parse(line: &str, domain: Domain) -> Result<Series> {
        let line = line.trim();
        let rest = line
            .strip_prefix("order=")
            .ok_or_else(|| Error::Parse("series line must start with `order=`".into()))?;
        let (ord_str, body) = rest
            .split_once(';')
            .ok_or_else(|| Error::Parse("missing `;` in series line".into()))?;
        let order: usize = ord_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad order `{ord_str}`")))?;
        let coeffs = body
            .split_whitespace()
            .map(|tok| domain.parse(tok))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != order + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                order + 1,
                coeffs.len()
            )));
        }
        Ok(Series { domain, coeffs })
    }
}
