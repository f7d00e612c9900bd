//! Exact scalars over ℚ and simple number fields ℚ(θ).
//!
//! A [`FieldSpec`] is either the rationals or ℚ[t]/(f) for a monic, integral,
//! irreducible `f`. Elements are stored as coefficient vectors in the power
//! basis `1, θ, …, θ^{d-1}`; this representation is canonical, so equality is
//! coefficient-wise.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("minimal polynomial is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility of a degree {0} polynomial cannot be decided here; mark it as trusted")]
    UntrustedHighDegree(usize),
    #[error("n-th root requested for n = 0")]
    ZeroExponent,
    #[error("n-th root of zero requested")]
    RootOfZero,
    #[error("coefficient vector has length {got}, field degree is {expected}")]
    BadLength { expected: usize, got: usize },
}

/// Which field a [`FieldSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    NumberField,
}

/// ℚ, or ℚ(θ) with θ a root of `min_poly`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
    /// Low-to-high integer coefficients, monic; empty for ℚ.
    min_poly: Vec<BigInt>,
    generator: String,
    trusted: bool,
}

impl FieldSpec {
    pub fn rationals() -> Arc<FieldSpec> {
        Arc::new(FieldSpec {
            kind: FieldKind::Rationals,
            min_poly: Vec::new(),
            generator: String::new(),
            trusted: false,
        })
    }

    /// ℚ(i) with i² = -1.
    pub fn gaussian() -> Arc<FieldSpec> {
        FieldSpec::number_field(vec![1, 0, 1], "i", false).expect("t^2+1 is irreducible")
    }

    /// Builds ℚ[t]/(min_poly). Degrees 2 and 3 are checked by the rational root
    /// test; higher degrees must be declared `trusted_irreducible` and are then
    /// screened for small linear and quadratic factors.
    pub fn number_field<T: Into<BigInt>>(
        min_poly: Vec<T>,
        generator: &str,
        trusted_irreducible: bool,
    ) -> Result<Arc<FieldSpec>, FieldError> {
        let min_poly: Vec<BigInt> = min_poly.into_iter().map(Into::into).collect();
        let deg = min_poly.len().saturating_sub(1);
        if deg < 2 {
            return Err(FieldError::DegreeTooSmall(deg));
        }
        if !min_poly[deg].is_one() {
            return Err(FieldError::NotMonic);
        }
        if let Some(root) = integer_root(&min_poly) {
            return Err(FieldError::Reducible(format!("integer root {root}")));
        }
        if deg >= 4 {
            if !trusted_irreducible {
                return Err(FieldError::UntrustedHighDegree(deg));
            }
            if let Some((p, q)) = small_quadratic_factor(&min_poly, 10) {
                return Err(FieldError::Reducible(format!("factor t^2 + {p}t + {q}")));
            }
        }
        Ok(Arc::new(FieldSpec {
            kind: FieldKind::NumberField,
            min_poly,
            generator: generator.to_string(),
            trusted: trusted_irreducible,
        }))
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        match self.kind {
            FieldKind::Rationals => 1,
            FieldKind::NumberField => self.min_poly.len() - 1,
        }
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn generator_label(&self) -> &str {
        &self.generator
    }

    pub fn trusted_irreducible(&self) -> bool {
        self.trusted
    }

    pub fn is_rationals(&self) -> bool {
        self.kind == FieldKind::Rationals
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::NumberField => {
                write!(f, "Q({}) with ", self.generator)?;
                let terms: Vec<String> = self
                    .min_poly
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| match k {
                        0 => format!("{c}"),
                        1 => format!("{c}*{}", self.generator),
                        _ => format!("{c}*{}^{k}", self.generator),
                    })
                    .collect();
                write!(f, "{} = 0", terms.join(" + "))
            }
        }
    }
}

fn same_field(a: &Arc<FieldSpec>, b: &Arc<FieldSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn eval_int_poly(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Positive divisors of |n| (n ≠ 0), by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational root test for a monic integer polynomial: any rational root is an
/// integer dividing the constant term.
fn integer_root(poly: &[BigInt]) -> Option<BigInt> {
    if poly[0].is_zero() {
        return Some(BigInt::zero());
    }
    for d in divisors(&poly[0]) {
        for cand in [d.clone(), -d] {
            if eval_int_poly(poly, &cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

fn small_quadratic_factor(poly: &[BigInt], bound: i64) -> Option<(i64, i64)> {
    for p in -bound..=bound {
        for q in -bound..=bound {
            if q == 0 {
                continue;
            }
            let divisor = [BigInt::from(q), BigInt::from(p), BigInt::one()];
            let (_, rem) = int_poly_divrem_monic(poly, &divisor);
            if rem.iter().all(Zero::is_zero) {
                return Some((p, q));
            }
        }
    }
    None
}

fn int_poly_divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k - dd + j] -= &c * dj;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

/// An exact element of a [`FieldSpec`].
#[derive(Clone)]
pub struct Scalar {
    field: Arc<FieldSpec>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

/// Binary operations accepted by [`arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn arithmetic(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, FieldError> {
    a.check_same(b)?;
    match op {
        FieldOp::Add => Ok(a + b),
        FieldOp::Mul => Ok(a * b),
        FieldOp::Div => Ok(a * &b.inv()?),
    }
}

/// Outcome of an n-th root search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootOutcome {
    Root(Scalar),
    /// No root exists (`certified`) or the bounded search gave up (not certified).
    NoRoot { certified: bool },
}

/// Outcome of asking whether a scalar lies in ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalCheck {
    Rational(BigRational),
    NotRational,
}

impl Scalar {
    pub fn zero(field: &Arc<FieldSpec>) -> Scalar {
        Scalar {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Scalar {
        Scalar::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<FieldSpec>, q: BigRational) -> Scalar {
        let mut s = Scalar::zero(field);
        s.coeffs[0] = q;
        s
    }

    pub fn from_int(field: &Arc<FieldSpec>, n: i64) -> Scalar {
        Scalar::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(field: &Arc<FieldSpec>, num: i64, den: i64) -> Scalar {
        Scalar::from_rational(field, BigRational::new(num.into(), den.into()))
    }

    /// The generator θ of a number field.
    pub fn generator(field: &Arc<FieldSpec>) -> Scalar {
        let mut s = Scalar::zero(field);
        if field.degree() == 1 {
            panic!("the rationals have no generator");
        }
        s.coeffs[1] = BigRational::one();
        s
    }

    pub fn from_coeffs(field: &Arc<FieldSpec>, coeffs: Vec<BigRational>) -> Result<Scalar, FieldError> {
        if coeffs.len() != field.degree() {
            return Err(FieldError::BadLength {
                expected: field.degree(),
                got: coeffs.len(),
            });
        }
        Ok(Scalar {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Scalar) -> Result<(), FieldError> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    /// Re-expresses a scalar of ℚ (or of an equal field) inside `target`.
    pub fn embed_into(&self, target: &Arc<FieldSpec>) -> Result<Scalar, FieldError> {
        if same_field(&self.field, target) {
            return Ok(Scalar {
                field: target.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        if self.field.is_rationals() {
            return Ok(Scalar::from_rational(target, self.coeffs[0].clone()));
        }
        Err(FieldError::FieldMismatch(
            self.field.to_string(),
            target.to_string(),
        ))
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let d = self.field.degree();
        if d == 1 {
            return Ok(Scalar::from_rational(&self.field, self.coeffs[0].recip()));
        }
        // Solve (self · x) = 1 through the multiplication-by-self matrix, whose
        // k-th column is self·θ^k.
        let mut cols = Vec::with_capacity(d);
        let mut power = Scalar::one(&self.field);
        let theta = Scalar::generator(&self.field);
        for _ in 0..d {
            cols.push((self * &power).coeffs);
            power = &power * &theta;
        }
        let matrix: Vec<Vec<BigRational>> = (0..d)
            .map(|i| (0..d).map(|k| cols[k][i].clone()).collect())
            .collect();
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let sol = solve_rational(matrix, rhs).ok_or(FieldError::DivisionByZero)?;
        Ok(Scalar {
            field: self.field.clone(),
            coeffs: sol,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, FieldError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.field);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Returns the value as a rational when every θ-coefficient beyond degree 0 vanishes.
    pub fn rational_check(&self) -> RationalCheck {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            RationalCheck::Rational(self.coeffs[0].clone())
        } else {
            RationalCheck::NotRational
        }
    }

    /// Field norm down to ℚ (determinant of multiplication by `self`).
    pub fn norm(&self) -> BigRational {
        let d = self.field.degree();
        if d == 1 {
            return self.coeffs[0].clone();
        }
        let theta = Scalar::generator(&self.field);
        let mut power = Scalar::one(&self.field);
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push((self * &power).coeffs);
            power = &power * &theta;
        }
        let matrix: Vec<Vec<BigRational>> = (0..d)
            .map(|i| (0..d).map(|k| cols[k][i].clone()).collect())
            .collect();
        det_rational(matrix)
    }

    /// Searches for r with rⁿ = self.
    ///
    /// Complete for ℚ and for quadratic fields; for higher degree a small
    /// bounded search is run and failure is reported as uncertified.
    pub fn nth_root(&self, n: u32) -> Result<RootOutcome, FieldError> {
        if n == 0 {
            return Err(FieldError::ZeroExponent);
        }
        if self.is_zero() {
            return Err(FieldError::RootOfZero);
        }
        if n == 1 {
            return Ok(RootOutcome::Root(self.clone()));
        }
        match self.field.degree() {
            1 => Ok(match rational_nth_root(&self.coeffs[0], n) {
                Some(r) => RootOutcome::Root(Scalar::from_rational(&self.field, r)),
                None => RootOutcome::NoRoot { certified: true },
            }),
            2 => Ok(self.quadratic_nth_root(n)),
            _ => Ok(self.bounded_nth_root_search(n)),
        }
    }

    /// Every root r = x + yθ satisfies: the integer (M·r) lies in ℤ[θ] for
    /// M = lcm(denominators)·|disc|, its norm is a rational n-th root of N(a)
    /// scaled by M², and |y| is bounded through the two embeddings.
    fn quadratic_nth_root(&self, n: u32) -> RootOutcome {
        let mp = &self.field.min_poly;
        let c = BigRational::from_integer(mp[0].clone());
        let b = BigRational::from_integer(mp[1].clone());
        let disc_int: BigInt = &mp[1] * &mp[1] - BigInt::from(4) * &mp[0];
        let (a0, a1) = (&self.coeffs[0], &self.coeffs[1]);

        let norm_a = self.norm();
        let mut norms: Vec<BigRational> = Vec::new();
        if let Some(nu) = rational_nth_root(&norm_a, n) {
            norms.push(nu.clone());
            if n.is_multiple_of(2) {
                norms.push(-nu);
            }
        }
        if norms.is_empty() {
            return RootOutcome::NoRoot { certified: true };
        }

        // D'·r is integral whenever D divides D'^n
        let den = denominator_root(&a0.denom().lcm(a1.denom()), n);
        let m = &den * disc_int.abs();
        let m_sq = BigRational::from_integer(&m * &m);

        // Numeric embeddings bound |y|; a generous margin keeps the bound safe.
        let (bf, cf) = (b.to_f64().unwrap_or(0.0), c.to_f64().unwrap_or(0.0));
        let (a0f, a1f) = (a0.to_f64().unwrap_or(0.0), a1.to_f64().unwrap_or(0.0));
        let discf = bf * bf - 4.0 * cf;
        let sq = discf.abs().sqrt();
        let embed_abs = |sign: f64| -> f64 {
            if discf >= 0.0 {
                (a0f + a1f * (-bf + sign * sq) / 2.0).abs()
            } else {
                let re = a0f - a1f * bf / 2.0;
                let im = a1f * sq / 2.0;
                (re * re + im * im).sqrt()
            }
        };
        let b1 = embed_abs(1.0).powf(1.0 / n as f64);
        let b2 = embed_abs(-1.0).powf(1.0 / n as f64);
        let mf = m.to_f64().unwrap_or(f64::INFINITY);
        let y_bound_f = mf * (b1 + b2) / sq * 1.000_001 + 1.0;
        if !y_bound_f.is_finite() || y_bound_f > 1.0e6 {
            return RootOutcome::NoRoot { certified: false };
        }
        let y_bound = y_bound_f.ceil() as i64;

        let theta = Scalar::generator(&self.field);
        let m_rat = BigRational::from_integer(m.clone());
        for y in -y_bound..=y_bound {
            let y_big = BigInt::from(y);
            for nu in &norms {
                let target = nu * &m_sq;
                if !target.is_integer() {
                    continue;
                }
                let target = target.to_integer();
                // X² − bY·X + (cY² − target) = 0
                let delta: BigInt =
                    &disc_int * &y_big * &y_big + BigInt::from(4) * &target;
                if delta.is_negative() {
                    continue;
                }
                let s = delta.sqrt();
                if &s * &s != delta {
                    continue;
                }
                let by = &mp[1] * &y_big;
                for root_num in [&by + &s, &by - &s] {
                    if root_num.is_odd() {
                        continue;
                    }
                    let x = root_num / 2;
                    let cand = (&Scalar::from_rational(&self.field, BigRational::from_integer(x))
                        + &theta.scale(&BigRational::from_integer(y_big.clone())))
                        .scale(&m_rat.recip());
                    if cand.pow(n as i64).map(|p| p == *self).unwrap_or(false) {
                        return RootOutcome::Root(cand);
                    }
                }
            }
        }
        RootOutcome::NoRoot { certified: true }
    }

    fn bounded_nth_root_search(&self, n: u32) -> RootOutcome {
        let d = self.field.degree();
        if d > 4 {
            return RootOutcome::NoRoot { certified: false };
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let den = BigRational::from_integer(den);
        const H: i64 = 3;
        let mut digits = vec![-H; d];
        loop {
            let coeffs: Vec<BigRational> = digits
                .iter()
                .map(|&x| BigRational::from_integer(x.into()) / &den)
                .collect();
            let cand = Scalar {
                field: self.field.clone(),
                coeffs,
            };
            if !cand.is_zero() && cand.pow(n as i64).map(|p| p == *self).unwrap_or(false) {
                return RootOutcome::Root(cand);
            }
            let mut k = 0;
            loop {
                if k == d {
                    return RootOutcome::NoRoot { certified: false };
                }
                digits[k] += 1;
                if digits[k] > H {
                    digits[k] = -H;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        debug_assert!(same_field(&self.field, &other.field), "field mismatch");
        let d = self.field.degree();
        if d == 1 {
            return Scalar {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mp = &self.field.min_poly;
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in mp.iter().enumerate().take(d) {
                if !mj.is_zero() {
                    prod[k - d + j] -= &c * BigRational::from_integer(mj.clone());
                }
            }
        }
        prod.truncate(d);
        Scalar {
            field: self.field.clone(),
            coeffs: prod,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let label = &self.field.generator;
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 if c.is_one() => label.to_string(),
                1 => format!("{c}*{label}"),
                _ if c.is_one() => format!("{label}^{k}"),
                _ => format!("{c}*{label}^{k}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        debug_assert!(same_field(&self.field, &rhs.field), "field mismatch");
        Scalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        debug_assert!(same_field(&self.field, &rhs.field), "field mismatch");
        Scalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Exact rational n-th root, when one exists.
pub fn rational_nth_root(q: &BigRational, n: u32) -> Option<BigRational> {
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    if q.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = q.numer().abs();
    let den = q.denom().clone();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if num::pow_big(&rn, n) != num || num::pow_big(&rd, n) != den {
        return None;
    }
    let r = BigRational::new(rn, rd);
    Some(if q.is_negative() { -r } else { r })
}

mod num {
    use num_bigint::BigInt;
    use num_traits::One;

    pub fn pow_big(b: &BigInt, n: u32) -> BigInt {
        let mut acc = BigInt::one();
        for _ in 0..n {
            acc *= b;
        }
        acc
    }
}

/// A positive D' with D | D'^n, as small as trial division up to 10⁵ allows.
fn denominator_root(d: &BigInt, n: u32) -> BigInt {
    let mut rest = d.abs();
    let mut out = BigInt::one();
    let mut p = 2u32;
    while p < 100_000 && rest > BigInt::one() {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out *= num_traits::pow(bp, e.div_ceil(n) as usize);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.nth_root(n);
    if num_traits::pow(root.clone(), n as usize) == rest {
        out * root
    } else {
        out * rest
    }
}

/// Gaussian elimination over ℚ; `None` when the system is singular.
pub fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = &a[r][col] * &inv;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn det_rational(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[col][col];
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    det
}

/// Rank and pivot columns of a matrix over a field, by row reduction.
pub fn rank_profile(rows: &[Vec<Scalar>]) -> (usize, Vec<usize>) {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(piv) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let inv = a[row][col].inv().expect("pivot is nonzero");
        for r in row + 1..nrows {
            if !a[r][col].is_zero() {
                let factor = &a[r][col] * &inv;
                for c in col..ncols {
                    let delta = &factor * &a[row][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (pivots.len(), pivots)
}

/// Determinant of a square matrix over a field. Empty matrices have determinant 1.
pub fn determinant(rows: &[Vec<Scalar>], field: &Arc<FieldSpec>) -> Scalar {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let n = a.len();
    let mut det = Scalar::one(field);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero(field);
        };
        if piv != col {
            a.swap(col, piv);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let factor = &a[r][col] * &inv;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
        }
    }
    det
}
