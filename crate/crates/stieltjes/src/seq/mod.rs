//! Automatic +/-1 sequences: the paperfolding and Rudin-Shapiro recurrences,
//! substitution systems with codings, closure operations, and an empirical
//! k-kernel probe.

mod kernel;
mod substitution;

pub use kernel::{kernel_estimate, KernelClass, KernelReport};
pub use substitution::SubstitutionSystem;

use crate::error::{Error, Result};
use crate::max_work;

/// How a [`SignSequence`] reproduces its prefix.
#[derive(Clone, Debug)]
pub enum SequenceRule {
    /// p_0 = 1, p_{4n} = 1, p_{4n+2} = -1, p_{2n+1} = p_n.
    Paperfolding,
    /// r_0 = 1, r_{2n} = r_n, r_{2n+1} = (-1)^n r_n.
    RudinShapiro,
    /// Coded fixed point of a substitution system.
    Substitution(SubstitutionSystem),
    /// A fixed finite vector (not extendable).
    Explicit,
}

/// A +/-1 sequence with a deterministic generator and a materialized prefix.
#[derive(Clone, Debug)]
pub struct SignSequence {
    name: String,
    rule: SequenceRule,
    prefix: Vec<i8>,
}

impl SignSequence {
    pub fn paperfolding(len: usize) -> Result<SignSequence> {
        let mut seq = SignSequence {
            name: "paperfolding".into(),
            rule: SequenceRule::Paperfolding,
            prefix: Vec::new(),
        };
        seq.extend_to(len)?;
        Ok(seq)
    }

    pub fn rudin_shapiro(len: usize) -> Result<SignSequence> {
        let mut seq = SignSequence {
            name: "rudin-shapiro".into(),
            rule: SequenceRule::RudinShapiro,
            prefix: Vec::new(),
        };
        seq.extend_to(len)?;
        Ok(seq)
    }

    /// Sequence generated by a custom substitution system.
    pub fn from_system(name: &str, system: SubstitutionSystem, len: usize) -> Result<SignSequence> {
        let mut seq = SignSequence {
            name: name.into(),
            rule: SequenceRule::Substitution(system),
            prefix: Vec::new(),
        };
        seq.extend_to(len)?;
        Ok(seq)
    }

    /// Wrap explicit values (each +/-1); useful for randomized checks.
    pub fn from_values(name: &str, values: Vec<i8>) -> Result<SignSequence> {
        if let Some(v) = values.iter().find(|v| **v != 1 && **v != -1) {
            return Err(Error::InvalidArgument(format!("sequence value {v} is not +/-1")));
        }
        Ok(SignSequence { name: name.into(), rule: SequenceRule::Explicit, prefix: values })
    }

    /// Look up one of the built-in sequences by name.
    pub fn by_name(name: &str, len: usize) -> Result<SignSequence> {
        match name {
            "paperfolding" => SignSequence::paperfolding(len),
            "rudin-shapiro" => SignSequence::rudin_shapiro(len),
            other => Err(Error::UnknownSequence(other.into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rule(&self) -> &SequenceRule {
        &self.rule
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.prefix
    }

    /// The first `len` values, failing rather than extending.
    pub fn prefix(&self, len: usize) -> Result<&[i8]> {
        if len > self.prefix.len() {
            return Err(Error::PrefixTooShort { needed: len, have: self.prefix.len() });
        }
        Ok(&self.prefix[..len])
    }

    /// Grow the materialized prefix to at least `len` values.
    pub fn extend_to(&mut self, len: usize) -> Result<()> {
        let cap = max_work();
        if len > cap {
            return Err(Error::WorkCapExceeded { requested: len as u128, cap: cap as u128 });
        }
        if len <= self.prefix.len() {
            return Ok(());
        }
        match &self.rule {
            SequenceRule::Paperfolding => {
                let p = &mut self.prefix;
                if p.is_empty() {
                    p.push(1);
                }
                for i in p.len()..len {
                    let v = if i % 2 == 1 {
                        p[(i - 1) / 2]
                    } else if i % 4 == 0 {
                        1
                    } else {
                        -1
                    };
                    p.push(v);
                }
            }
            SequenceRule::RudinShapiro => {
                let r = &mut self.prefix;
                if r.is_empty() {
                    r.push(1);
                }
                for i in r.len()..len {
                    let v = if i % 2 == 0 {
                        r[i / 2]
                    } else {
                        let n = (i - 1) / 2;
                        if n % 2 == 0 {
                            r[n]
                        } else {
                            -r[n]
                        }
                    };
                    r.push(v);
                }
            }
            SequenceRule::Substitution(system) => {
                let mut n = 0;
                loop {
                    let coded = system.coded_expansion(n)?;
                    if coded.len() >= len {
                        self.prefix = coded;
                        break;
                    }
                    n += 1;
                }
            }
            SequenceRule::Explicit => {
                return Err(Error::PrefixTooShort { needed: len, have: self.prefix.len() });
            }
        }
        Ok(())
    }
}

/// First `len` values of a built-in sequence, straight from its recurrence.
pub fn sequence_prefix(name: &str, len: usize) -> Result<Vec<i8>> {
    if len == 0 {
        return Err(Error::InvalidArgument("prefix length must be positive".into()));
    }
    Ok(SignSequence::by_name(name, len)?.values()[..len].to_vec())
}

/// Does the coded substitution fixed point match the recurrence definition?
/// Compares rho(sigma^n(seed)) of the canonical system against the
/// recurrence-generated prefix of the same length.
pub fn cross_check_definitions(name: &str, n: usize) -> Result<bool> {
    let system = match name {
        "paperfolding" => SubstitutionSystem::paperfolding(),
        "rudin-shapiro" => SubstitutionSystem::rudin_shapiro(),
        other => return Err(Error::UnknownSequence(other.into())),
    };
    cross_check_system(&system, name, n)
}

/// Same comparison for an arbitrary system against a named recurrence.
pub fn cross_check_system(system: &SubstitutionSystem, reference: &str, n: usize) -> Result<bool> {
    let coded = system.coded_expansion(n)?;
    let recurrence = sequence_prefix(reference, coded.len())?;
    Ok(coded == recurrence)
}

/// Check the sign-swap conjugacy of the Rudin-Shapiro substitution images:
/// the coded n-fold images of a and d, and of b and c, are pointwise negations.
pub fn iota_conjugacy_check(n: usize) -> Result<bool> {
    let rs = SubstitutionSystem::rudin_shapiro();
    let neg = |v: Vec<i8>| -> Vec<i8> { v.into_iter().map(|x| -x).collect() };
    let a = rs.coded_expansion_of('a', n)?;
    let d = rs.coded_expansion_of('d', n)?;
    let b = rs.coded_expansion_of('b', n)?;
    let c = rs.coded_expansion_of('c', n)?;
    Ok(a == neg(d) && b == neg(c))
}

/// Running fold y_n = x_{n-1} * y_{n-1} (so y_n combines the first n terms,
/// newest on the left). Returns y_1..y_len.
pub fn running_fold(
    seq: &SignSequence,
    len: usize,
    op: impl Fn(i64, i64) -> i64,
) -> Result<Vec<i64>> {
    let values = seq.prefix(len)?;
    let mut out = Vec::with_capacity(len);
    let mut acc = 0i64;
    for (i, &v) in values.iter().enumerate() {
        acc = if i == 0 { v as i64 } else { op(v as i64, acc) };
        out.push(acc);
    }
    Ok(out)
}

/// The arithmetic subsequence (a_{s n + t}) for n = 0..len.
pub fn arithmetic_subsequence(
    seq: &SignSequence,
    s: usize,
    t: usize,
    len: usize,
) -> Result<Vec<i8>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let last = s
        .checked_mul(len - 1)
        .and_then(|v| v.checked_add(t))
        .ok_or_else(|| Error::InvalidArgument("subsequence index overflows".into()))?;
    let values = seq.prefix(last + 1)?;
    Ok((0..len).map(|n| values[s * n + t]).collect())
}

/// 0/1 indicator of the perfect squares; a standard non-automatic control
/// input for the kernel probe.
pub fn squares_indicator(len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    let mut i = 0usize;
    while i * i < len {
        out[i * i] = 1;
        i += 1;
    }
    out
}
