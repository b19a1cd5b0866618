use crate::error::{Error, Result};
use crate::ring::{Coeff, Domain};

/// Dense polynomial in canonical form: no trailing zero coefficient,
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    domain: Domain,
    coeffs: Vec<Coeff>,
}

impl Poly {
    pub fn from_coeffs(domain: Domain, mut coeffs: Vec<Coeff>) -> Poly {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Poly { domain, coeffs }
    }

    pub fn from_i64_coeffs(domain: Domain, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(domain, coeffs.iter().map(|&v| domain.from_i64(v)).collect())
    }

    pub fn zero(domain: Domain) -> Poly {
        Poly { domain, coeffs: Vec::new() }
    }

    pub fn one(domain: Domain) -> Poly {
        Poly { domain, coeffs: vec![domain.one()] }
    }

    pub fn x(domain: Domain) -> Poly {
        Poly { domain, coeffs: vec![domain.zero(), domain.one()] }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Coeff {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(0)
    }

    fn check_domain(&self, rhs: &Poly) -> Result<()> {
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch(self.domain, rhs.domain));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Poly) -> Result<Poly> {
        self.check_domain(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.domain.add(&self.coeff(i), &rhs.coeff(i)));
        }
        Ok(Poly::from_coeffs(self.domain, out))
    }

    pub fn sub(&self, rhs: &Poly) -> Result<Poly> {
        self.check_domain(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.domain.sub(&self.coeff(i), &rhs.coeff(i)));
        }
        Ok(Poly::from_coeffs(self.domain, out))
    }

    pub fn mul(&self, rhs: &Poly) -> Result<Poly> {
        self.check_domain(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(self.domain));
        }
        let mut out = vec![self.domain.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = self.domain.add(&out[i + j], &self.domain.mul(a, b));
            }
        }
        Ok(Poly::from_coeffs(self.domain, out))
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let out = self.coeffs.iter().map(|a| self.domain.mul(a, c)).collect();
        Poly::from_coeffs(self.domain, out)
    }

    /// Multiply by x^k.
    pub fn mul_x_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.domain.zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly { domain: self.domain, coeffs: out }
    }

    /// x -> -x: flip the sign of every odd-degree coefficient.
    pub fn negate_argument(&self) -> Poly {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| if i % 2 == 1 { self.domain.neg(a) } else { a.clone() })
            .collect();
        Poly::from_coeffs(self.domain, out)
    }

    pub fn reduce(&self, target: Domain) -> Result<Poly> {
        let out = self
            .coeffs
            .iter()
            .map(|a| self.domain.convert(a, &target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(target, out))
    }

    /// One-line text form `deg=D; c0 c1 ... cD` (the zero polynomial is `deg=-1;`).
    pub fn to_line(&self) -> String {
        match self.degree() {
            None => "deg=-1;".to_string(),
            Some(d) => {
                let body: Vec<String> =
                    self.coeffs.iter().map(|c| self.domain.format(c)).collect();
                format!("deg={}; {}", d, body.join(" "))
            }
        }
    }

    pub fn parse(line: &str, domain: Domain) -> Result<Poly> {
        let line = line.trim();
        let rest = line
            .strip_prefix("deg=")
            .ok_or_else(|| Error::Parse("polynomial line must start with `deg=`".into()))?;
        let (deg_str, body) = rest
            .split_once(';')
            .ok_or_else(|| Error::Parse("missing `;` in polynomial line".into()))?;
        let deg: i64 = deg_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree `{deg_str}`")))?;
        if deg < 0 {
            return Ok(Poly::zero(domain));
        }
        let coeffs = body
            .split_whitespace()
            .map(|tok| domain.parse(tok))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != (deg as usize) + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                deg + 1,
                coeffs.len()
            )));
        }
        Ok(Poly::from_coeffs(domain, coeffs))
    }
}
