//! Convergents of Stieltjes continued fractions with +/-1 partial quotients:
//! the polynomial recurrence, the equivalent 2x2 matrix product, block
//! convergents over dyadic index ranges, truncated series expansion, and the
//! two-dimensional coefficient table of the convergent polynomials.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::max_work;
use crate::ring::{Coeff, Domain, Poly, Series};
use crate::seq::SignSequence;

/// Numerator/denominator pair of one convergent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentPair {
    pub index: usize,
    pub p: Poly,
    pub q: Poly,
}

impl ConvergentPair {
    pub fn domain(&self) -> Domain {
        self.q.domain()
    }

    /// Two text lines `P: ...` and `Q: ...` in the polynomial line format.
    pub fn to_lines(&self) -> String {
        format!("P: {}\nQ: {}\n", self.p.to_line(), self.q.to_line())
    }

    pub fn parse_lines(text: &str, index: usize, domain: Domain) -> Result<ConvergentPair> {
        let mut p = None;
        let mut q = None;
        for line in text.lines() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("P:") {
                p = Some(Poly::parse(rest, domain)?);
            } else if let Some(rest) = line.strip_prefix("Q:") {
                q = Some(Poly::parse(rest, domain)?);
            }
        }
        match (p, q) {
            (Some(p), Some(q)) => Ok(ConvergentPair { index, p, q }),
            _ => Err(Error::Parse("expected `P:` and `Q:` lines".into())),
        }
    }
}

/// Four adjacent polynomials (F_{n-1}, F_n) for both tracks; also the shape
/// of a block-convergent matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentQuad {
    /// Index of the later column.
    pub index: usize,
    pub p_prev: Poly,
    pub p: Poly,
    pub q_prev: Poly,
    pub q: Poly,
}

impl ConvergentQuad {
    /// p_prev * q - p * q_prev; the product of the factor determinants.
    pub fn determinant(&self) -> Result<Poly> {
        self.p_prev.mul(&self.q)?.sub(&self.p.mul(&self.q_prev)?)
    }
}

fn sign_coeff(domain: Domain, c: i8) -> Coeff {
    domain.from_i64(c as i64)
}

/// One recurrence step F_next = cur + c * x * prev.
fn step(cur: &Poly, prev: &Poly, c: i8) -> Poly {
    let shifted = prev.mul_x_pow(1);
    let sum = if c == 1 { cur.add(&shifted) } else { cur.sub(&shifted) };
    sum.expect("tracks share one domain")
}

/// Run the recurrence across a whole quotient slice (length >= 1), returning
/// the last two columns of the corresponding matrix product.
fn quad_over_slice(quotients: &[i8], domain: Domain) -> ConvergentQuad {
    debug_assert!(!quotients.is_empty());
    // Columns for "index -1": P = 0, Q = 1.
    let mut p_prev = Poly::zero(domain);
    let mut q_prev = Poly::one(domain);
    let mut p = Poly::x(domain).scale(&sign_coeff(domain, quotients[0]));
    let mut q = Poly::one(domain);
    for &c in &quotients[1..] {
        let p_next = step(&p, &p_prev, c);
        let q_next = step(&q, &q_prev, c);
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    ConvergentQuad { index: quotients.len() - 1, p_prev, p, q_prev, q }
}

/// Iterator over convergent pairs n = 0..=n_max, by the recurrence.
pub struct Convergents<'a> {
    quotients: &'a [i8],
    next_index: usize,
    p_prev: Poly,
    q_prev: Poly,
    p: Poly,
    q: Poly,
}

impl Iterator for Convergents<'_> {
    type Item = ConvergentPair;

    fn next(&mut self) -> Option<ConvergentPair> {
        if self.next_index >= self.quotients.len() {
            return None;
        }
        let n = self.next_index;
        let pair = ConvergentPair { index: n, p: self.p.clone(), q: self.q.clone() };
        self.next_index += 1;
        if self.next_index < self.quotients.len() {
            let c = self.quotients[self.next_index];
            let p_next = step(&self.p, &self.p_prev, c);
            let q_next = step(&self.q, &self.q_prev, c);
            self.p_prev = std::mem::replace(&mut self.p, p_next);
            self.q_prev = std::mem::replace(&mut self.q, q_next);
        }
        Some(pair)
    }
}

/// Stream the convergents of `seq` for n = 0..=n_max.
pub fn convergents<'a>(
    seq: &'a SignSequence,
    n_max: usize,
    domain: Domain,
) -> Result<Convergents<'a>> {
    let quotients = seq.prefix(n_max + 1)?;
    Ok(Convergents {
        quotients,
        next_index: 0,
        p_prev: Poly::zero(domain),
        q_prev: Poly::one(domain),
        p: Poly::x(domain).scale(&sign_coeff(domain, quotients[0])),
        q: Poly::one(domain),
    })
}

/// The quad at indices (n-1, n) of the main track, by the recurrence.
pub fn convergent_quad(seq: &SignSequence, n: usize, domain: Domain) -> Result<ConvergentQuad> {
    if n == 0 {
        return Err(Error::InvalidArgument("quad needs index n >= 1".into()));
    }
    let quotients = seq.prefix(n + 1)?;
    Ok(quad_over_slice(quotients, domain))
}

/// 2x2 matrix with polynomial entries, row-major [[a, b], [c, d]].
#[derive(Clone, Debug)]
struct Mat2 {
    a: Poly,
    b: Poly,
    c: Poly,
    d: Poly,
}

impl Mat2 {
    fn quotient(domain: Domain, q: i8) -> Mat2 {
        Mat2 {
            a: Poly::zero(domain),
            b: Poly::x(domain).scale(&sign_coeff(domain, q)),
            c: Poly::one(domain),
            d: Poly::one(domain),
        }
    }

    fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        Ok(Mat2 {
            a: self.a.mul(&rhs.a)?.add(&self.b.mul(&rhs.c)?)?,
            b: self.a.mul(&rhs.b)?.add(&self.b.mul(&rhs.d)?)?,
            c: self.c.mul(&rhs.a)?.add(&self.d.mul(&rhs.c)?)?,
            d: self.c.mul(&rhs.b)?.add(&self.d.mul(&rhs.d)?)?,
        })
    }
}

/// The quad at indices (n-1, n) by multiplying out the n+1 quotient matrices.
/// Independent of the recurrence path; the two must agree.
pub fn matrix_product_convergents(
    seq: &SignSequence,
    n: usize,
    domain: Domain,
) -> Result<ConvergentQuad> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix product needs n >= 1".into()));
    }
    let quotients = seq.prefix(n + 1)?;
    let mut acc = Mat2::quotient(domain, quotients[0]);
    for &c in &quotients[1..] {
        acc = acc.mul(&Mat2::quotient(domain, c))?;
    }
    Ok(ConvergentQuad { index: n, p_prev: acc.a, p: acc.b, q_prev: acc.c, q: acc.d })
}

/// Block convergents over the dyadic quotient range [2^level, 2^{level+1});
/// the quad holds the block polynomials at indices 2^level-2 and 2^level-1.
/// Levels below 2 are used internally by the factorization checks.
pub(crate) fn block_quad(
    seq: &SignSequence,
    level: u32,
    domain: Domain,
) -> Result<ConvergentQuad> {
    let lo = 1usize << level;
    let hi = 1usize << (level + 1);
    let quotients = seq.prefix(hi)?;
    let mut quad = quad_over_slice(&quotients[lo..hi], domain);
    quad.index = lo - 1;
    Ok(quad)
}

/// Block convergents for level n >= 2, the published range.
pub fn b_convergents(seq: &SignSequence, n: u32, domain: Domain) -> Result<ConvergentQuad> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("block level must be >= 2, got {n}")));
    }
    block_quad(seq, n, domain)
}

/// Truncated power-series expansion of the continued fraction, to `order`.
///
/// Computes the convergent at index `order` and divides in the series domain;
/// the expansion from index `order`+1 must agree through `order`, which is
/// asserted and turns arithmetic bugs into hard errors.
pub fn expand_stieltjes(seq: &SignSequence, order: usize, domain: Domain) -> Result<Series> {
    let quad = convergent_quad(seq, order + 1, domain)?;
    let p_lo = Series::from_poly_truncated(&quad.p_prev, order);
    let q_lo = Series::from_poly_truncated(&quad.q_prev, order);
    let expansion = p_lo.div(&q_lo)?;
    // Cross-check: P_{order+1} - Q_{order+1} * expansion must vanish through x^order.
    let p_hi = Series::from_poly_truncated(&quad.p, order);
    let q_hi = Series::from_poly_truncated(&quad.q, order);
    let residual = p_hi.sub(&q_hi.mul(&expansion)?)?;
    if let Some(e) = residual.coeffs().iter().position(|c| !c.is_zero()) {
        return Err(Error::Stabilization(e));
    }
    Ok(expansion)
}

/// Which polynomial family a coefficient table is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Track {
    P,
    Q,
}

impl Track {
    pub fn parse(s: &str) -> Result<Track> {
        match s {
            "p" | "P" => Ok(Track::P),
            "q" | "Q" => Ok(Track::Q),
            other => Err(Error::Parse(format!("track must be P or Q, got `{other}`"))),
        }
    }
}

impl std::fmt::Display for Track {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Track::P => write!(f, "P"),
            Track::Q => write!(f, "Q"),
        }
    }
}

/// Dense table of the coefficients a_{n,i} of x^i in F_n, for n = 0..=n_max
/// and i = 0..=i_max, filled by a_{n,i} = a_{n-1,i} + c_n a_{n-2,i-1}.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    track: Track,
    domain: Domain,
    n_max: usize,
    i_max: usize,
    entries: Vec<Coeff>, // row-major by n
}

/// Build the coefficient table of the chosen track.
pub fn coefficient_table(
    seq: &SignSequence,
    track: Track,
    n_max: usize,
    i_max: usize,
    domain: Domain,
) -> Result<CoefficientTable> {
    let cells = (n_max as u128 + 1) * (i_max as u128 + 1);
    let cap = 8 * max_work() as u128;
    if cells > cap {
        return Err(Error::WorkCapExceeded { requested: cells, cap });
    }
    let quotients = seq.prefix(n_max + 1)?;
    let cols = i_max + 1;
    let mut entries = vec![domain.zero(); (n_max + 1) * cols];
    let one = domain.one();
    match track {
        Track::Q => {
            // Q_0 = 1, Q_1 = 1 + c_1 x
            entries[0] = one.clone();
            if n_max >= 1 {
                entries[cols] = one;
                if i_max >= 1 {
                    entries[cols + 1] = sign_coeff(domain, quotients[1]);
                }
            }
        }
        Track::P => {
            // P_0 = P_1 = c_0 x
            if i_max >= 1 {
                entries[1] = sign_coeff(domain, quotients[0]);
                if n_max >= 1 {
                    entries[cols + 1] = sign_coeff(domain, quotients[0]);
                }
            }
        }
    }
    for n in 2..=n_max {
        let c = quotients[n];
        entries[n * cols] = entries[(n - 1) * cols].clone();
        for i in 1..=i_max {
            let carry = &entries[(n - 2) * cols + i - 1];
            let prev = &entries[(n - 1) * cols + i];
            entries[n * cols + i] = if c == 1 {
                domain.add(prev, carry)
            } else {
                domain.sub(prev, carry)
            };
        }
    }
    Ok(CoefficientTable { track, domain, n_max, i_max, entries })
}

impl CoefficientTable {
    pub fn track(&self) -> Track {
        self.track
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn entry(&self, n: usize, i: usize) -> &Coeff {
        assert!(n <= self.n_max && i <= self.i_max, "table index out of range");
        &self.entries[n * (self.i_max + 1) + i]
    }

    /// Column i as a sequence in n.
    pub fn column(&self, i: usize) -> Vec<Coeff> {
        (0..=self.n_max).map(|n| self.entry(n, i).clone()).collect()
    }

    /// Column i as i64 values (residues lift directly; integers must fit).
    pub fn column_i64(&self, i: usize) -> Result<Vec<i64>> {
        self.column(i)
            .into_iter()
            .map(|c| match c {
                Coeff::Res(v) => Ok(v as i64),
                Coeff::Int(v) => i64::try_from(&v)
                    .map_err(|_| Error::InvalidArgument("table entry exceeds i64".into())),
                Coeff::Rat(_) => {
                    Err(Error::InvalidArgument("rational table columns are not probed".into()))
                }
            })
            .collect()
    }

    /// Row n reassembled as the polynomial it tabulates (valid when i_max
    /// covers the degree).
    pub fn row_poly(&self, n: usize) -> Poly {
        let cols = self.i_max + 1;
        Poly::from_coeffs(self.domain, self.entries[n * cols..(n + 1) * cols].to_vec())
    }

    /// Row-major integer grid, one row per n, entries for i = 0..=i_max.
    pub fn to_grid(&self, n_lo: usize, n_hi: usize) -> String {
        let mut s = String::new();
        for n in n_lo..=n_hi {
            for i in 0..=self.i_max {
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}", self.domain.format(self.entry(n, i)));
            }
            s.push('\n');
        }
        s
    }

    /// Pointwise form of the triangle mechanism: wherever a column value
    /// repeats (a_{n,i} = a_{n-1,i}, n >= 2, i >= 1), the entry a_{n-2,i-1}
    /// must vanish, because the quotients are units.
    pub fn triangle_mechanism_holds(&self) -> bool {
        for n in 2..=self.n_max {
            for i in 1..=self.i_max {
                if self.entry(n, i) == self.entry(n - 1, i)
                    && !self.entry(n - 2, i - 1).is_zero()
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Parse a grid written by [`CoefficientTable::to_grid`] into rows of i64.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<i64>>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad grid entry `{tok}`")))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Domain = Domain::Integers;

    fn m4() -> Domain {
        Domain::residues(4).unwrap()
    }

    fn pf(len: usize) -> SignSequence {
        SignSequence::paperfolding(len).unwrap()
    }

    fn poly(domain: Domain, coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(domain, coeffs)
    }

    #[test]
    fn first_convergents_of_paperfolding() {
        let seq = pf(8);
        let pairs: Vec<_> = convergents(&seq, 2, Z).unwrap().collect();
        assert_eq!(pairs[0].p, poly(Z, &[0, 1]));
        assert_eq!(pairs[0].q, Poly::one(Z));
        assert_eq!(pairs[1].p, poly(Z, &[0, 1]));
        assert_eq!(pairs[1].q, poly(Z, &[1, 1]));
        // c_2 = -1: Q_2 = Q_1 + c_2 x Q_0 = 1, P_2 = x - x^2
        assert_eq!(pairs[2].q, Poly::one(Z));
        assert_eq!(pairs[2].p, poly(Z, &[0, 1, -1]));
    }

    #[test]
    fn matrix_product_matches_single_multiplication() {
        let seq = pf(4);
        let quad = matrix_product_convergents(&seq, 1, Z).unwrap();
        assert_eq!(quad.p_prev, poly(Z, &[0, 1]));
        assert_eq!(quad.p, poly(Z, &[0, 1]));
        assert_eq!(quad.q_prev, Poly::one(Z));
        assert_eq!(quad.q, poly(Z, &[1, 1]));
    }

    #[test]
    fn recurrence_instance_at_n_2() {
        // Q_2 = Q_1 + c_2 x Q_0 for any sequence
        for values in [vec![1i8, 1, 1], vec![1, -1, 1], vec![-1, 1, -1], vec![1, 1, -1]] {
            let seq = SignSequence::from_values("probe", values.clone()).unwrap();
            let pairs: Vec<_> = convergents(&seq, 2, Z).unwrap().collect();
            let expect = pairs[1]
                .q
                .add(&pairs[0].q.mul_x_pow(1).scale(&Z.from_i64(values[2] as i64)))
                .unwrap();
            assert_eq!(pairs[2].q, expect);
        }
    }

    #[test]
    fn block_convergents_level_two() {
        // paperfolding block quotients (p_4..p_7) = (1, -1, -1, 1)
        let seq = pf(8);
        assert_eq!(&seq.values()[4..8], &[1, -1, -1, 1]);
        let quad = b_convergents(&seq, 2, Z).unwrap();
        let direct = quad_over_slice(&seq.values()[4..8], Z);
        assert_eq!(quad.p_prev, direct.p_prev);
        assert_eq!(quad.p, direct.p);
        assert_eq!(quad.q_prev, direct.q_prev);
        assert_eq!(quad.q, direct.q);
        assert_eq!(quad.q_prev.constant_term(), Z.one());
        assert_eq!(quad.q.constant_term(), Z.one());

        let rs = SignSequence::rudin_shapiro(8).unwrap();
        assert_eq!(&rs.values()[4..8], &[1, 1, -1, 1]);
        assert!(b_convergents(&rs, 1, Z).is_err());
    }

    #[test]
    fn expansion_leading_coefficients() {
        let seq = pf(640);
        let s = expand_stieltjes(&seq, 8, m4()).unwrap();
        // x^1 carries c_0 and x^2 carries -c_0 c_1
        assert_eq!(s.coeff(1), &m4().from_i64(1));
        assert_eq!(s.coeff(2), &m4().from_i64(-1));
        // frozen oracle prefix of the paperfolding expansion mod 4
        let expect = Series::parse("order=8; 0 1 3 0 1 2 2 2 1", m4()).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn expansion_needs_the_prefix() {
        let seq = pf(4);
        assert!(matches!(
            expand_stieltjes(&seq, 8, m4()),
            Err(Error::PrefixTooShort { .. })
        ));
    }

    #[test]
    fn q_track_table_against_convergents() {
        let seq = pf(40);
        let table = coefficient_table(&seq, Track::Q, 32, 17, Z).unwrap();
        for pair in convergents(&seq, 32, Z).unwrap() {
            assert_eq!(table.row_poly(pair.index), pair.q, "row {}", pair.index);
        }
        // constant first column
        for n in 0..=32 {
            assert_eq!(table.entry(n, 0), &Z.one());
        }
        // degree bound: entries beyond ceil(n/2) vanish
        for n in 0..=32usize {
            for i in (n + 1).div_ceil(2) + 1..=17 {
                assert!(table.entry(n, i).is_zero(), "({n},{i})");
            }
        }
    }

    #[test]
    fn p_track_table_against_convergents() {
        let seq = SignSequence::rudin_shapiro(40).unwrap();
        let table = coefficient_table(&seq, Track::P, 24, 13, Z).unwrap();
        for pair in convergents(&seq, 24, Z).unwrap() {
            assert_eq!(table.row_poly(pair.index), pair.p, "row {}", pair.index);
        }
    }

    #[test]
    fn q_track_column_one_closed_form() {
        // a_{n,1} = a_{2,1} + a_{1,0} * sum_{j=3}^{n} c_j
        let seq = pf(70);
        let table = coefficient_table(&seq, Track::Q, 64, 2, Z).unwrap();
        let a21 = table.entry(2, 1).clone();
        let quotients = seq.values();
        for n in 3..=64usize {
            let sum: i64 = quotients[3..=n].iter().map(|&c| c as i64).sum();
            let expect = Z.add(&a21, &Z.from_i64(sum));
            assert_eq!(table.entry(n, 1), &expect, "n={n}");
        }
    }

    #[test]
    fn triangle_mechanism_on_builtin_tables() {
        for name in ["paperfolding", "rudin-shapiro"] {
            let seq = SignSequence::by_name(name, 300).unwrap();
            for track in [Track::P, Track::Q] {
                let table = coefficient_table(&seq, track, 256, 129, m4()).unwrap();
                assert!(table.triangle_mechanism_holds(), "{name} {track}");
            }
        }
    }

    #[test]
    fn grid_round_trip() {
        let seq = pf(10);
        let table = coefficient_table(&seq, Track::Q, 8, 4, m4()).unwrap();
        let grid = table.to_grid(0, 8);
        let rows = parse_grid(&grid).unwrap();
        assert_eq!(rows.len(), 9);
        for (n, row) in rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                assert_eq!(&m4().from_i64(v), table.entry(n, i));
            }
        }
    }

    #[test]
    fn convergent_pair_lines_round_trip() {
        let seq = pf(8);
        let pair = convergents(&seq, 5, Z).unwrap().last().unwrap();
        let text = pair.to_lines();
        let back = ConvergentPair::parse_lines(&text, pair.index, Z).unwrap();
        assert_eq!(back, pair);
    }
}
