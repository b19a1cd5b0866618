//! Closed-form series: Catalan numbers and their generating function, the
//! S/T families supported on dyadic exponents, the identities relating them
//! mod 4, and the closed-form right-hand sides that the verification harness
//! compares against convergent data.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Domain, Series};

/// The Catalan number C_n reduced mod 4, by the closed form: 1 when n+1 is a
/// power of two, 2 when n+1 is a sum of two distinct powers of two, else 0.
pub fn catalan_mod4(n: u64) -> u64 {
    match (n as u128 + 1).count_ones() {
        1 => 1,
        2 => 2,
        _ => 0,
    }
}

/// Exact Catalan numbers C_0..C_n via C_k = C_{k-1} * 2(2k-1)/(k+1).
pub fn catalan_numbers(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::from(1));
    for k in 1..=n {
        let prev = out.last().unwrap();
        let next = prev * BigInt::from(2 * (2 * k as i64 - 1)) / BigInt::from(k as i64 + 1);
        out.push(next);
    }
    out
}

/// The Catalan generating function to `order`, computed exactly over the
/// integers and then reduced into `domain`.
pub fn phi_series(order: usize, domain: Domain) -> Result<Series> {
    let cats = catalan_numbers(order);
    let coeffs = cats.iter().map(|c| Domain::Integers.from_bigint(c)).collect();
    Series::from_coeffs(Domain::Integers, coeffs).reduce(domain)
}

/// Which auxiliary family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxKind {
    /// Exponents 2^0 .. 2^level.
    S,
    /// Exponents 2^{2i}, i = 0..=level.
    SEven,
    /// Exponents 2^{2i+1}, i = 0..=level.
    SOdd,
    /// Exponents 2^i + 2^k with 2 <= k < i <= level (empty below level 3).
    T,
}

/// Finite level, or every exponent that fits below the truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxLevel {
    Level(u32),
    Infinite,
}

/// Build an auxiliary family member as a series of the given order; exponents
/// beyond the order are truncated away.
pub fn auxiliary_series(
    kind: AuxKind,
    level: AuxLevel,
    order: usize,
    domain: Domain,
) -> Series {
    let mut s = Series::zero(domain, order);
    let one = domain.one();
    let bump = |s: &mut Series, e: usize| {
        let v = domain.add(s.coeff(e), &one);
        *s.coeff_mut(e) = v;
    };
    let fits = |e: u128| -> Option<usize> {
        if e <= order as u128 {
            Some(e as usize)
        } else {
            None
        }
    };
    let max_level = |stride: u32| -> u32 {
        match level {
            AuxLevel::Level(l) => l,
            // generous bound: exponents are at least 2^(stride*i)
            AuxLevel::Infinite => (usize::BITS / stride.max(1)) + 1,
        }
    };
    match kind {
        AuxKind::S => {
            for i in 0..=max_level(1) {
                match fits(1u128 << i) {
                    Some(e) => bump(&mut s, e),
                    None => break,
                }
            }
        }
        AuxKind::SEven => {
            for i in 0..=max_level(2) {
                match fits(1u128 << (2 * i)) {
                    Some(e) => bump(&mut s, e),
                    None => break,
                }
            }
        }
        AuxKind::SOdd => {
            for i in 0..=max_level(2) {
                match fits(1u128 << (2 * i + 1)) {
                    Some(e) => bump(&mut s, e),
                    None => break,
                }
            }
        }
        AuxKind::T => {
            let top = max_level(1).max(3);
            for i in 3..=top {
                if (1u128 << i) > order as u128 {
                    break;
                }
                if matches!(level, AuxLevel::Level(l) if i > l) {
                    break;
                }
                for k in 2..i {
                    if let Some(e) = fits((1u128 << i) + (1u128 << k)) {
                        bump(&mut s, e);
                    }
                }
            }
        }
    }
    s
}

fn m4() -> Domain {
    Domain::residues(4).expect("4 >= 2")
}

fn sparse(order: usize, terms: &[(usize, i64)]) -> Result<Series> {
    Series::from_terms(m4(), order, terms)
}

/// Results of the four mod-4 identities tying S and T levels together:
/// doubling (2S_n^2 = 2(S_{n+1}-x)), the adjacent product, the T tail
/// recurrence, and the full expansion of S_n^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AuxIdentities {
    pub doubling: bool,
    pub adjacent_product: bool,
    pub tail_recurrence: bool,
    pub square_expansion: bool,
}

impl AuxIdentities {
    pub fn all(&self) -> bool {
        self.doubling && self.adjacent_product && self.tail_recurrence && self.square_expansion
    }
}

/// Check the four S/T identities at level n (n >= 3), mod 4 to `order`.
/// The order must be at least 2^{n+1} so every exponent is visible.
pub fn verify_aux_identities(n: u32, order: usize) -> Result<AuxIdentities> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("level must be >= 3, got {n}")));
    }
    if (order as u128) < (1u128 << (n + 1)) {
        return Err(Error::InvalidArgument(format!(
            "order {order} too small for level {n}; need at least 2^{}",
            n + 1
        )));
    }
    let d = m4();
    let two = d.from_i64(2);
    let s_n = auxiliary_series(AuxKind::S, AuxLevel::Level(n), order, d);
    let s_lo = auxiliary_series(AuxKind::S, AuxLevel::Level(n - 1), order, d);
    let s_hi = auxiliary_series(AuxKind::S, AuxLevel::Level(n + 1), order, d);
    let t_n = auxiliary_series(AuxKind::T, AuxLevel::Level(n), order, d);
    let t_lo = auxiliary_series(AuxKind::T, AuxLevel::Level(n - 1), order, d);
    let x2n = sparse(order, &[(1 << n, 1)])?;

    // 2 S_n^2 = 2 (S_{n+1} - x)
    let lhs = s_n.mul(&s_n)?.scale(&two);
    let rhs = s_hi.sub(&sparse(order, &[(1, 1)])?)?.scale(&two);
    let doubling = lhs == rhs;

    // 2 S_{n-1} S_n = 2 (S_{n+1} - x) + 2 x^{2^n} S_n
    let lhs = s_lo.mul(&s_n)?.scale(&two);
    let rhs = rhs.add(&x2n.mul(&s_n)?.scale(&two))?;
    let adjacent_product = lhs == rhs;

    // 2 T_n = 2 T_{n-1} + 2 x^{2^n} (S_{n-1} - x - x^2)
    let lhs = t_n.scale(&two);
    let tail = s_lo.sub(&sparse(order, &[(1, 1), (2, 1)])?)?;
    let rhs = t_lo.scale(&two).add(&x2n.mul(&tail)?.scale(&two))?;
    let tail_recurrence = lhs == rhs;

    // S_n^2 = (3x + 2x^2 + 2x^3 + 2x^4) + 2(x + x^2) S_n + S_{n+1} + 2 T_n
    let lhs = s_n.mul(&s_n)?;
    let rhs = sparse(order, &[(1, 3), (2, 2), (3, 2), (4, 2)])?
        .add(&sparse(order, &[(1, 2), (2, 2)])?.mul(&s_n)?)?
        .add(&s_hi)?
        .add(&t_n.scale(&two))?;
    let square_expansion = lhs == rhs;

    Ok(AuxIdentities { doubling, adjacent_product, tail_recurrence, square_expansion })
}

/// Closed-form candidate for the paperfolding expansion mod 4:
/// 2x + (3x + 2x^3) phi(x).
pub fn theorem1_rhs(order: usize) -> Result<Series> {
    let phi = phi_series(order, m4())?;
    let poly = sparse(order, &[(1, 3), (3, 2)])?;
    sparse(order, &[(1, 2)])?.add(&poly.mul(&phi)?)
}

/// Closed-form candidate for the Rudin-Shapiro expansion mod 4:
/// x + 2x^2 + 2x^3 + (3x + 2x^3) phi(x) + x sqrt(1 - 4x phi(x)).
///
/// The square root is computed two independent ways and both must agree:
/// (a) the exact rational square root, whose integrality is asserted, and
/// (b) the substitution sqrt(1 - 4x phi) = 1 + 2 S^e_inf mod 4.
pub fn theorem2_rhs(order: usize) -> Result<Series> {
    let root_a = sqrt_one_minus_4x_phi(order)?.reduce(m4())?;
    let root_b = Series::one(m4(), order)
        .add(&auxiliary_series(AuxKind::SEven, AuxLevel::Infinite, order, m4()).scale(&m4().from_i64(2)))?;
    if let Some(e) = first_difference(&root_a, &root_b) {
        return Err(Error::RouteDisagreement(e));
    }
    let phi = phi_series(order, m4())?;
    sparse(order, &[(1, 1), (2, 2), (3, 2)])?
        .add(&sparse(order, &[(1, 3), (3, 2)])?.mul(&phi)?)?
        .add(&root_a.mul_x_pow(1))
}

/// sqrt(1 - 4x phi(x)) over the integers (integrality is asserted).
pub fn sqrt_one_minus_4x_phi(order: usize) -> Result<Series> {
    let phi = phi_series(order, Domain::Integers)?;
    let u = Series::one(Domain::Integers, order)
        .sub(&phi.mul_x_pow(1).scale(&Domain::Integers.from_i64(4)))?;
    let root = u.sqrt_exact()?;
    if !root.integral {
        return Err(Error::NotIntegral);
    }
    root.series.reduce(Domain::Integers)
}

/// Results of the three mod-4 identities expressing the Catalan generating
/// function through the dyadic families: phi via S and T, the square of
/// S_inf against (x phi)^2, and the closed quartic form of S_inf itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SInfinityIdentities {
    pub phi_from_families: bool,
    pub square_match: bool,
    pub quartic_form: bool,
}

impl SInfinityIdentities {
    pub fn all(&self) -> bool {
        self.phi_from_families && self.square_match && self.quartic_form
    }
}

/// Check the S_inf/T_inf identities mod 4 to `order` (order >= 8).
/// The identity involving x^{-1} factors is checked in x-multiplied form.
pub fn s_infinity_identities(order: usize) -> Result<SInfinityIdentities> {
    if order < 8 {
        return Err(Error::InvalidArgument("order must be at least 8".into()));
    }
    let d = m4();
    let two = d.from_i64(2);
    let phi = phi_series(order, d)?;
    let xphi = phi.mul_x_pow(1);
    let s_inf = auxiliary_series(AuxKind::S, AuxLevel::Infinite, order, d);
    let t_inf = auxiliary_series(AuxKind::T, AuxLevel::Infinite, order, d);

    // x phi = S + 2T + 2(x + x^2) S + 2(x^2 + x^3 + x^4)
    let rhs = s_inf
        .add(&t_inf.scale(&two))?
        .add(&sparse(order, &[(1, 2), (2, 2)])?.mul(&s_inf)?)?
        .add(&sparse(order, &[(2, 2), (3, 2), (4, 2)])?)?;
    let phi_from_families = xphi == rhs;

    // S^2 = (x phi)^2
    let square_match = s_inf.mul(&s_inf)? == xphi.mul(&xphi)?;

    // S = (x phi)^4 + x + x^2
    let xphi2 = xphi.mul(&xphi)?;
    let quartic = xphi2.mul(&xphi2)?.add(&sparse(order, &[(1, 1), (2, 1)])?)?;
    let quartic_form = s_inf == quartic;

    Ok(SInfinityIdentities { phi_from_families, square_match, quartic_form })
}

/// First exponent where two equal-order series differ.
pub fn first_difference(a: &Series, b: &Series) -> Option<usize> {
    let n = a.order().min(b.order());
    (0..=n).find(|&i| a.coeff(i) != b.coeff(i))
}

/// Closed form for one of the eight paperfolding convergent congruences at
/// block level n (items 1..=8), as a mod-4 series of the given order.
///
/// Items: 1 Q_{2^n-2}, 2 Q_{2^n-1}, 3 P_{2^n-2}, 4 P_{2^n-1},
/// 5 Q^b_{2^n-2}, 6 Q^b_{2^n-1}, 7 P^b_{2^n-2}, 8 P^b_{2^n-1}.
pub fn pf_lemma_rhs(item: u8, n: u32, order: usize) -> Result<Series> {
    if !(1..=8).contains(&item) {
        return Err(Error::InvalidArgument(format!("item must be 1..=8, got {item}")));
    }
    if n < 4 {
        return Err(Error::InvalidArgument(format!("level must be >= 4, got {n}")));
    }
    let d = m4();
    let two = d.from_i64(2);
    let s2 = auxiliary_series(AuxKind::S, AuxLevel::Level(n - 2), order, d);
    let s1 = auxiliary_series(AuxKind::S, AuxLevel::Level(n - 1), order, d);
    let t2 = auxiliary_series(AuxKind::T, AuxLevel::Level(n - 2), order, d);
    let half = 1usize << (n - 1);
    match item {
        1 => sparse(order, &[(0, 1), (1, 2), (2, 2), (3, 2), (4, 2)])?
            .add(&sparse(order, &[(0, 2), (1, 2), (2, 2)])?.mul(&s2)?)?
            .add(&t2.scale(&two)),
        2 => sparse(order, &[(0, 1), (half, 3)])?
            .add(&sparse(order, &[(0, 1), (1, 2)])?.mul(&s2)?),
        3 => sparse(order, &[(1, 2)])?.mul(&s2)?.add(&s1),
        4 => sparse(order, &[(1, 3), (5, 2)])?
            .add(&sparse(order, &[(1, 2), (3, 2)])?.mul(&s2)?)?
            .add(&s1.scale(&two))?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t2)?),
        5 => sparse(order, &[(0, 1), (1, 2), (2, 2), (3, 2), (4, 2)])?
            .add(&sparse(order, &[(1, 2), (2, 2)])?.mul(&s2)?)?
            .add(&t2.scale(&two)),
        6 => sparse(order, &[(0, 1), (1, 2)])?
            .add(&sparse(order, &[(1, 2)])?.mul(&s2)?)?
            .add(&s1),
        7 => sparse(order, &[(1, 2)])?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&s2)?)?
            .add(&s1),
        _ => sparse(order, &[(1, 3), (5, 2)])?
            .add(&sparse(order, &[(0, 2), (3, 2)])?.mul(&s2)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t2)?),
    }
}

/// Closed form for one of the sixteen Rudin-Shapiro convergent congruences
/// at block parameter j (items 1..=16), as a mod-4 series.
///
/// Odd-level blocks (2^{2j+1}) pair with the even-level ones (2^{2j}):
/// 1/2 Q_{..-2}, 3/4 Q_{..-1}, 5/6 P_{..-2}, 7/8 P_{..-1}, then the same
/// order for the block polynomials in items 9..=16.
pub fn rs_lemma_rhs(item: u8, j: u32, order: usize) -> Result<Series> {
    if !(1..=16).contains(&item) {
        return Err(Error::InvalidArgument(format!("item must be 1..=16, got {item}")));
    }
    if j < 2 {
        return Err(Error::InvalidArgument(format!("block parameter must be >= 2, got {j}")));
    }
    let d = m4();
    let s_even = auxiliary_series(AuxKind::S, AuxLevel::Level(2 * j - 2), order, d);
    let s_odd = auxiliary_series(AuxKind::S, AuxLevel::Level(2 * j - 1), order, d);
    let t_even = auxiliary_series(AuxKind::T, AuxLevel::Level(2 * j - 2), order, d);
    let t_odd = auxiliary_series(AuxKind::T, AuxLevel::Level(2 * j - 1), order, d);
    let so_j2 = auxiliary_series(AuxKind::SOdd, AuxLevel::Level(j - 2), order, d);
    let so_j1 = auxiliary_series(AuxKind::SOdd, AuxLevel::Level(j - 1), order, d);
    let se_j1 = auxiliary_series(AuxKind::SEven, AuxLevel::Level(j - 1), order, d);
    let e_even = 1usize << (2 * j - 1); // top exponent of the 2^{2j} block
    let e_odd = 1usize << (2 * j); // top exponent of the 2^{2j+1} block
    match item {
        1 => sparse(order, &[(0, 1), (1, 2)])?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&s_even)?),
        2 => sparse(order, &[(0, 1)])?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&s_odd)?),
        3 => sparse(order, &[(0, 1), (2, 2), (5, 2), (e_even, 1)])?
            .add(&sparse(order, &[(1, 2)])?.mul(&so_j2)?)?
            .add(&sparse(order, &[(0, 3), (3, 2)])?.mul(&s_even)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_even)?),
        4 => sparse(order, &[(0, 1), (2, 2), (5, 2), (e_odd, 1)])?
            .add(&sparse(order, &[(1, 2)])?.mul(&se_j1)?)?
            .add(&sparse(order, &[(0, 3), (3, 2)])?.mul(&s_odd)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_odd)?),
        5 => sparse(order, &[(2, 2), (5, 2), (e_even, 1)])?
            .add(&sparse(order, &[(0, 1), (3, 2)])?.mul(&s_even)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_even)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&so_j2)?),
        6 => sparse(order, &[(2, 2), (5, 2), (e_odd, 1)])?
            .add(&sparse(order, &[(0, 1), (3, 2)])?.mul(&s_odd)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_odd)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&se_j1)?),
        7 => sparse(order, &[(1, 1), (2, 2), (3, 2), (4, 2), (5, 2)])?
            .add(&sparse(order, &[(3, 2)])?.mul(&s_even)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&t_even)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&so_j2)?),
        8 => sparse(order, &[(1, 1), (3, 2), (4, 2), (5, 2)])?
            .add(&sparse(order, &[(3, 2)])?.mul(&s_odd)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&t_odd)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&se_j1)?),
        9 => sparse(order, &[(0, 1)])?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&s_even)?),
        10 => sparse(order, &[(0, 1), (1, 2)])?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&s_odd)?),
        11 => sparse(order, &[(0, 1), (2, 2), (5, 2), (e_even, 1)])?
            .add(&sparse(order, &[(0, 3), (3, 2)])?.mul(&s_even)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_even)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&se_j1)?),
        12 => sparse(order, &[(0, 1), (2, 2), (5, 2), (e_odd, 1)])?
            .add(&sparse(order, &[(0, 3), (3, 2)])?.mul(&s_odd)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_odd)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&so_j1)?),
        13 => sparse(order, &[(2, 2), (5, 2), (e_even, 1)])?
            .add(&sparse(order, &[(0, 1), (3, 2)])?.mul(&s_even)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_even)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&se_j1)?),
        14 => sparse(order, &[(2, 2), (5, 2), (e_odd, 1)])?
            .add(&sparse(order, &[(0, 1), (3, 2)])?.mul(&s_odd)?)?
            .add(&sparse(order, &[(0, 2), (1, 2)])?.mul(&t_odd)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&so_j1)?),
        15 => sparse(order, &[(1, 1), (3, 2), (4, 2), (5, 2)])?
            .add(&sparse(order, &[(1, 2)])?.mul(&se_j1)?)?
            .add(&sparse(order, &[(3, 2)])?.mul(&s_even)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&t_even)?),
        _ => sparse(order, &[(1, 1), (2, 2), (3, 2), (4, 2), (5, 2)])?
            .add(&sparse(order, &[(1, 2)])?.mul(&so_j1)?)?
            .add(&sparse(order, &[(3, 2)])?.mul(&s_odd)?)?
            .add(&sparse(order, &[(1, 2)])?.mul(&t_odd)?),
    }
}
