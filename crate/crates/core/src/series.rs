//! The completed local ring at a toric point, truncated by a positive grading.
//!
//! With the character basis split as `z_1..z_r` (vanishing at the point) and
//! `z_{r+1}..z_m` (units at the point), the completed local ring is modelled as
//! `k(x)[[S₀]] ⊗̂ k(x)[[s_{r+1}, …, s_m]]`, where `S₀` is the sharp monoid (image
//! of S in the first r z-coordinates) and `z_i = z_i(x)·(1 + s_i)` for `i > r`.
//!
//! A key is `(a, d)` with `a ∈ S₀` and `d ∈ ℕ^{m−r}`, weighted by
//! `h·a + |d|`. Series keep every key of weight ≤ N and nothing else, so all
//! ring operations are exact in the quotient by the weight > N ideal.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::toric::{dot, ToricError, ToricPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series belong to different local models")]
    ModelMismatch,
    #[error("series is not a unit (zero constant term)")]
    NotAUnit,
    #[error("constant term must be {expected}, found {found}")]
    BadConstantTerm { expected: &'static str, found: String },
    #[error("character with z-coordinates {0:?} is not regular at the point")]
    NotRegular(Vec<i64>),
    #[error("invalid key {0:?}: {1}")]
    BadKey(Vec<i64>, &'static str),
    #[error("grading: {0}")]
    Grading(String),
    #[error("coefficient is not in the residue field")]
    FieldMismatch,
    #[error("series is not a monomial times a unit up to weight {cutoff}")]
    NotMonomialTimesUnit { cutoff: i64 },
    #[error(transparent)]
    Toric(#[from] ToricError),
}

/// The truncated local ring at a toric point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalModel {
    point: ToricPoint,
    grading: Vec<i64>,
    cutoff: i64,
}

impl LocalModel {
    /// `grading`, when given, has length m in z-coordinates; entries for the
    /// unit directions must be 1. Defaults to all ones.
    pub fn new(point: ToricPoint, grading: Option<Vec<i64>>, cutoff: i64) -> Result<Arc<LocalModel>, SeriesError> {
        let m = point.monoid().ambient_rank();
        let r = point.r();
        let h = match grading {
            Some(h) => {
                if h.len() != m {
                    return Err(SeriesError::Grading(format!(
                        "expected {m} weights, got {}",
                        h.len()
                    )));
                }
                if h[r..].iter().any(|&w| w != 1) {
                    return Err(SeriesError::Grading(
                        "unit directions must have weight 1".into(),
                    ));
                }
                h[..r].to_vec()
            }
            None => vec![1; r],
        };
        if let Some(g) = point
            .sharp_monoid()
            .generators()
            .iter()
            .find(|g| dot(&h, g) <= 0)
        {
            return Err(SeriesError::Grading(format!(
                "weight of sharp generator {g:?} is not positive; supply a grading"
            )));
        }
        if cutoff < 0 {
            return Err(SeriesError::Grading("negative truncation order".into()));
        }
        Ok(Arc::new(LocalModel {
            point,
            grading: h,
            cutoff,
        }))
    }

    /// Same point and grading, different truncation order.
    pub fn with_cutoff(&self, cutoff: i64) -> Arc<LocalModel> {
        Arc::new(LocalModel {
            point: self.point.clone(),
            grading: self.grading.clone(),
            cutoff,
        })
    }

    pub fn point(&self) -> &ToricPoint {
        &self.point
    }

    pub fn m(&self) -> usize {
        self.point.monoid().ambient_rank()
    }

    pub fn r(&self) -> usize {
        self.point.r()
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    /// Weights of the sharp directions z_1..z_r.
    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.point.residue_field()
    }

    /// z_i(x) for the unit directions i = r+1..m.
    pub fn unit_values(&self) -> &[Scalar] {
        self.point.char_values()
    }

    pub fn weight(&self, exps: &[i64]) -> i64 {
        let r = self.r();
        dot(&self.grading, &exps[..r]) + exps[r..].iter().sum::<i64>()
    }

    fn key(&self, exps: Vec<i64>) -> Key {
        Key {
            weight: self.weight(&exps),
            exps,
        }
    }

    fn sharp_member(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0) || self.point.sharp_monoid().contains(a).unwrap_or(false)
    }
}

/// Monomial key `(a, d)` ordered by weight, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    weight: i64,
    exps: Vec<i64>,
}

impl Key {
    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Sharp exponents followed by s-degrees.
    pub fn exps(&self) -> &[i64] {
        &self.exps
    }
}

/// An element of the truncated local ring.
#[derive(Clone)]
pub struct TruncatedSeries {
    model: Arc<LocalModel>,
    terms: BTreeMap<Key, Scalar>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        same_model(&self.model, &other.model) && self.terms == other.terms
    }
}

impl Eq for TruncatedSeries {}

fn same_model(a: &Arc<LocalModel>, b: &Arc<LocalModel>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

type Piece = Vec<(Vec<i64>, Scalar)>;

fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Coefficients of the binomial series (1+s)^a up to degree n.
fn binomial_coeffs(a: i64, n: i64) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigRational::one();
    for k in 0..=n {
        if c.is_zero() {
            break;
        }
        out.push(c.clone());
        c *= BigRational::new((a - k).into(), (k + 1).into());
    }
    out
}

impl TruncatedSeries {
    pub fn zero(model: &Arc<LocalModel>) -> TruncatedSeries {
        TruncatedSeries {
            model: model.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(model: &Arc<LocalModel>, c: Scalar) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(model);
        if !c.is_zero() {
            let key = model.key(vec![0; model.m()]);
            s.terms.insert(key, c);
        }
        s
    }

    pub fn one(model: &Arc<LocalModel>) -> TruncatedSeries {
        TruncatedSeries::constant(model, Scalar::one(model.field()))
    }

    /// Builds a series from raw keys `(a, d)`; terms above the cutoff are dropped.
    pub fn from_terms<I>(model: &Arc<LocalModel>, terms: I) -> Result<TruncatedSeries, SeriesError>
    where
        I: IntoIterator<Item = (Vec<i64>, Scalar)>,
    {
        let m = model.m();
        let r = model.r();
        let mut s = TruncatedSeries::zero(model);
        for (exps, c) in terms {
            if exps.len() != m {
                return Err(SeriesError::BadKey(exps, "wrong length"));
            }
            if exps[r..].iter().any(|&d| d < 0) {
                return Err(SeriesError::BadKey(exps, "negative s-degree"));
            }
            if !model.sharp_member(&exps[..r]) {
                return Err(SeriesError::BadKey(exps, "sharp part outside the sharp monoid"));
            }
            if **c.field() != **model.field() {
                return Err(SeriesError::FieldMismatch);
            }
            let key = model.key(exps);
            if key.weight <= model.cutoff {
                s.accumulate(key, c);
            }
        }
        Ok(s)
    }

    /// s_i = z_i/z_i(x) − 1 for a unit direction `i` (0-based, r ≤ i < m).
    pub fn s_var(model: &Arc<LocalModel>, i: usize) -> TruncatedSeries {
        assert!(i >= model.r() && i < model.m(), "not a unit direction");
        let mut exps = vec![0; model.m()];
        exps[i] = 1;
        TruncatedSeries::from_terms(model, [(exps, Scalar::one(model.field()))]).expect("valid key")
    }

    /// The character z^a for a z-coordinate vector `a`.
    pub fn z_power(model: &Arc<LocalModel>, a: &[i64]) -> Result<TruncatedSeries, SeriesError> {
        let r = model.r();
        let m = model.m();
        if a.len() != m {
            return Err(SeriesError::BadKey(a.to_vec(), "wrong length"));
        }
        if !model.sharp_member(&a[..r]) {
            return Err(SeriesError::NotRegular(a.to_vec()));
        }
        let field = model.field();
        let mut value = Scalar::one(field);
        let mut out = {
            let mut exps = vec![0; m];
            exps[..r].copy_from_slice(&a[..r]);
            let key = model.key(exps);
            let mut s = TruncatedSeries::zero(model);
            if key.weight <= model.cutoff {
                s.terms.insert(key, Scalar::one(field));
            }
            s
        };
        for i in r..m {
            if a[i] == 0 {
                continue;
            }
            let zi = &model.unit_values()[i - r];
            value = &value * &zi.pow(a[i]).expect("unit values are nonzero");
            let coeffs = binomial_coeffs(a[i], model.cutoff);
            let factor = TruncatedSeries::from_terms(
                model,
                coeffs.into_iter().enumerate().map(|(k, c)| {
                    let mut exps = vec![0; m];
                    exps[i] = k as i64;
                    (exps, Scalar::from_rational(field, c))
                }),
            )?;
            out = out.mul(&factor)?;
        }
        Ok(out.scale(&value))
    }

    /// The character χ^v for `v` in ambient lattice coordinates.
    pub fn character(model: &Arc<LocalModel>, v: &[i64]) -> Result<TruncatedSeries, SeriesError> {
        let a = model.point().split().to_basis_coords(v);
        TruncatedSeries::z_power(model, &a)
    }

    pub fn model(&self) -> &Arc<LocalModel> {
        &self.model
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (weight, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Scalar {
        let key = self.model.key(exps.to_vec());
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.model.field()))
    }

    /// Smallest weight carrying a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next().map(|k| k.weight)
    }

    /// The constant term, i.e. the value at the point.
    pub fn value_at_point(&self) -> Scalar {
        self.coeff(&vec![0; self.model.m()])
    }

    fn accumulate(&mut self, key: Key, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_model(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if same_model(&self.model, &other.model) {
            Ok(())
        } else {
            Err(SeriesError::ModelMismatch)
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_model(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            model: self.model.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedSeries {
        if c.is_zero() {
            return TruncatedSeries::zero(&self.model);
        }
        TruncatedSeries {
            model: self.model.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> TruncatedSeries {
        self.scale(&Scalar::from_rational(self.model.field(), q.clone()))
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_model(other)?;
        let n = self.model.cutoff;
        let b: Vec<(&Key, &Scalar)> = other.terms.iter().collect();
        let mut out = TruncatedSeries::zero(&self.model);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &b {
                let w = ka.weight + kb.weight;
                if w > n {
                    break;
                }
                out.accumulate(
                    Key {
                        weight: w,
                        exps: add_exps(&ka.exps, &kb.exps),
                    },
                    ca * cb,
                );
            }
        }
        Ok(out)
    }

    /// Drops every term of weight above `w`.
    pub fn truncate(&self, w: i64) -> TruncatedSeries {
        TruncatedSeries {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.weight <= w)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by z^a where `a` is a (possibly negative) sharp exponent;
    /// fails when a shifted key leaves the sharp monoid.
    pub fn shift_sharp(&self, a: &[i64]) -> Result<TruncatedSeries, SeriesError> {
        let r = self.model.r();
        let mut out = TruncatedSeries::zero(&self.model);
        for (k, c) in &self.terms {
            let mut exps = k.exps.clone();
            for i in 0..r {
                exps[i] += a[i];
            }
            if !self.model.sharp_member(&exps[..r]) {
                return Err(SeriesError::BadKey(exps, "shift leaves the sharp monoid"));
            }
            let key = self.model.key(exps);
            if key.weight <= self.model.cutoff {
                out.terms.insert(key, c.clone());
            }
        }
        Ok(out)
    }

    /// Keeps only the terms with zero sharp part (restriction to the orbit of the point).
    pub fn restrict_to_orbit(&self) -> TruncatedSeries {
        let r = self.model.r();
        TruncatedSeries {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.exps[..r].iter().all(|&x| x == 0))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    fn pieces(&self) -> Vec<Piece> {
        let n = self.model.cutoff as usize;
        let mut out: Vec<Piece> = vec![Vec::new(); n + 1];
        for (k, c) in &self.terms {
            out[k.weight as usize].push((k.exps.clone(), c.clone()));
        }
        out
    }

    fn from_pieces(model: &Arc<LocalModel>, pieces: Vec<Piece>) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(model);
        for (w, piece) in pieces.into_iter().enumerate() {
            for (exps, c) in piece {
                out.accumulate(
                    Key {
                        weight: w as i64,
                        exps,
                    },
                    c,
                );
            }
        }
        out
    }

    /// Accumulates Σ_{k=1..w} factor(k) · A_k · B_{w−k} into a map.
    fn convolve_into(
        acc: &mut BTreeMap<Vec<i64>, Scalar>,
        a: &[Piece],
        b: &[Piece],
        w: usize,
        factor: impl Fn(usize) -> Option<BigRational>,
    ) {
        for k in 1..=w {
            if a[k].is_empty() || b[w - k].is_empty() {
                continue;
            }
            let f = factor(k);
            for (ea, ca) in &a[k] {
                let ca = match &f {
                    Some(q) => ca.scale(q),
                    None => ca.clone(),
                };
                for (eb, cb) in &b[w - k] {
                    let prod = &ca * cb;
                    let key = add_exps(ea, eb);
                    match acc.get_mut(&key) {
                        Some(v) => *v = &*v + &prod,
                        None => {
                            acc.insert(key, prod);
                        }
                    }
                }
            }
        }
    }

    /// Multiplicative inverse of a unit, by the weight recurrence
    /// `u₀·R_w = −Σ_{k≥1} U_k·R_{w−k}`.
    pub fn invert(&self) -> Result<TruncatedSeries, SeriesError> {
        let u0 = self.value_at_point();
        if u0.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let c = u0.inv().expect("nonzero");
        let neg_c = -&c;
        let n = self.model.cutoff as usize;
        let u = self.pieces();
        let mut res: Vec<Piece> = vec![Vec::new(); n + 1];
        res[0].push((vec![0; self.model.m()], c));
        for w in 1..=n {
            let mut acc = BTreeMap::new();
            TruncatedSeries::convolve_into(&mut acc, &u, &res, w, |_| None);
            res[w] = acc
                .into_iter()
                .map(|(e, v)| (e, &v * &neg_c))
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        Ok(TruncatedSeries::from_pieces(&self.model, res))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<TruncatedSeries, SeriesError> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = TruncatedSeries::one(&self.model);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Truncated exponential of a series without constant term, from
    /// `w·F_w = Σ_k k·G_k·F_{w−k}`.
    pub fn exp(&self) -> Result<TruncatedSeries, SeriesError> {
        let g0 = self.value_at_point();
        if !g0.is_zero() {
            return Err(SeriesError::BadConstantTerm {
                expected: "0",
                found: g0.to_string(),
            });
        }
        let n = self.model.cutoff as usize;
        let g = self.pieces();
        let mut f: Vec<Piece> = vec![Vec::new(); n + 1];
        f[0].push((vec![0; self.model.m()], Scalar::one(self.model.field())));
        for w in 1..=n {
            let mut acc = BTreeMap::new();
            TruncatedSeries::convolve_into(&mut acc, &g, &f, w, |k| {
                Some(BigRational::new((k as i64).into(), (w as i64).into()))
            });
            f[w] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(TruncatedSeries::from_pieces(&self.model, f))
    }

    /// Truncated logarithm of a series with constant term 1, from
    /// `w·G_w = w·U_w − Σ_{k<w} k·G_k·U_{w−k}`.
    pub fn log(&self) -> Result<TruncatedSeries, SeriesError> {
        let u0 = self.value_at_point();
        if !u0.is_one() {
            return Err(SeriesError::BadConstantTerm {
                expected: "1",
                found: u0.to_string(),
            });
        }
        let n = self.model.cutoff as usize;
        let u = self.pieces();
        let mut g: Vec<Piece> = vec![Vec::new(); n + 1];
        for w in 1..=n {
            let mut acc: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
            // g[w] is still empty here, so the k = w term vanishes.
            TruncatedSeries::convolve_into(&mut acc, &g, &u, w, |k| {
                Some(BigRational::new((-(k as i64)).into(), (w as i64).into()))
            });
            for (e, c) in &u[w] {
                match acc.get_mut(e) {
                    Some(v) => *v = &*v + c,
                    None => {
                        acc.insert(e.clone(), c.clone());
                    }
                }
            }
            g[w] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(TruncatedSeries::from_pieces(&self.model, g))
    }

    /// Coefficients a_i with dy = Σ a_i dz_i/z_i.
    ///
    /// Sharp monomials contribute `a_i·z^a`; for unit directions
    /// `ds_i = (1 + s_i)·dz_i/z_i`. The unit-direction coefficients are exact
    /// through weight N − 1.
    pub fn dlog_coefficients(&self) -> LogDerivativeVector {
        let m = self.model.m();
        let r = self.model.r();
        let mut entries = vec![TruncatedSeries::zero(&self.model); m];
        for (k, c) in &self.terms {
            for i in 0..r {
                if k.exps[i] != 0 {
                    let q = BigRational::from_integer(k.exps[i].into());
                    entries[i].accumulate(k.clone(), c.scale(&q));
                }
            }
            for (i, entry) in entries.iter_mut().enumerate().skip(r) {
                let d = k.exps[i];
                if d == 0 {
                    continue;
                }
                let cd = c.scale(&BigRational::from_integer(d.into()));
                let mut lower = k.exps.clone();
                lower[i] -= 1;
                entry.accumulate(
                    Key {
                        weight: k.weight - 1,
                        exps: lower,
                    },
                    cd.clone(),
                );
                entry.accumulate(k.clone(), cd);
            }
        }
        LogDerivativeVector { entries }
    }
}

/// A series written as `z^exponent · unit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialUnitForm {
    /// z-coordinates; the unit-direction entries are zero.
    pub exponent: Vec<i64>,
    pub unit: TruncatedSeries,
}

/// Finds the support key that divides every other support key and has a
/// nonzero coefficient, and splits `y` as that monomial times a unit.
///
/// The unit is only determined up to weight `N − h(exponent)`; multiplying
/// back by the monomial reproduces `y` exactly to weight N.
pub fn extract_monomial_unit(y: &TruncatedSeries) -> Result<MonomialUnitForm, SeriesError> {
    let model = y.model();
    let r = model.r();
    let not_form = SeriesError::NotMonomialTimesUnit {
        cutoff: model.cutoff(),
    };
    let mut sharp_parts: Vec<&[i64]> = y.terms.keys().map(|k| &k.exps[..r]).collect();
    sharp_parts.sort_unstable();
    sharp_parts.dedup();
    for key in y.terms.keys() {
        if key.exps[r..].iter().any(|&d| d != 0) {
            continue;
        }
        let cand = &key.exps[..r];
        let divides_all = sharp_parts.iter().all(|s| {
            let diff: Vec<i64> = s.iter().zip(cand).map(|(a, b)| a - b).collect();
            model.sharp_member(&diff)
        });
        if divides_all {
            let neg: Vec<i64> = cand.iter().map(|x| -x).collect();
            let unit = y.shift_sharp(&neg)?;
            let mut exponent = cand.to_vec();
            exponent.resize(model.m(), 0);
            return Ok(MonomialUnitForm { exponent, unit });
        }
    }
    Err(not_form)
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let r = self.model.r();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut mono = Vec::new();
                for (i, &e) in k.exps.iter().enumerate() {
                    let var = if i < r {
                        format!("z{}", i + 1)
                    } else {
                        format!("s{}", i + 1)
                    };
                    match e {
                        0 => {}
                        1 => mono.push(var),
                        _ => mono.push(format!("{var}^{e}")),
                    }
                }
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The coefficients a_1..a_m of dy in the basis dz_i/z_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDerivativeVector {
    pub entries: Vec<TruncatedSeries>,
}

impl LogDerivativeVector {
    pub fn at_point(&self) -> Vec<Scalar> {
        self.entries.iter().map(TruncatedSeries::value_at_point).collect()
    }

    /// Multiplies every coefficient by a series (used to pass from dy to dy/y).
    pub fn mul_series(&self, f: &TruncatedSeries) -> Result<LogDerivativeVector, SeriesError> {
        Ok(LogDerivativeVector {
            entries: self
                .entries
                .iter()
                .map(|a| a.mul(f))
                .collect::<Result<_, _>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::AffineMonoid;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn plane(n: i64) -> Arc<LocalModel> {
        let f = FieldSpec::rationals();
        let p = ToricPoint::fixed_point(AffineMonoid::orthant(2), f).unwrap();
        LocalModel::new(p, None, n).unwrap()
    }

    fn line_unit(n: i64) -> Arc<LocalModel> {
        // ℕ at the open orbit point z = 1: the ring k[[s]]
        let f = FieldSpec::rationals();
        let p = ToricPoint::new(AffineMonoid::orthant(1), vec![0], vec![Scalar::one(&f)], f).unwrap();
        LocalModel::new(p, None, n).unwrap()
    }

    fn poly(model: &Arc<LocalModel>, terms: &[(&[i64], i64, i64)]) -> TruncatedSeries {
        let f = model.field().clone();
        TruncatedSeries::from_terms(
            model,
            terms
                .iter()
                .map(|(e, n, d)| (e.to_vec(), Scalar::from_ratio(&f, *n, *d))),
        )
        .unwrap()
    }

    #[test]
    fn product_and_inverse() {
        let m = plane(4);
        let a = poly(&m, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1)]);
        let b = poly(&m, &[(&[0, 0], 1, 1), (&[1, 0], -1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(&m, &[(&[0, 0], 1, 1), (&[2, 0], -1, 1)]));

        let m3 = plane(3);
        let a = poly(&m3, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1)]);
        assert_eq!(
            a.invert().unwrap(),
            poly(
                &m3,
                &[(&[0, 0], 1, 1), (&[1, 0], -1, 1), (&[2, 0], 1, 1), (&[3, 0], -1, 1)]
            )
        );
        assert_eq!(
            poly(&m3, &[(&[1, 0], 1, 1)]).invert(),
            Err(SeriesError::NotAUnit)
        );
    }

    #[test]
    fn log_of_one_plus_s() {
        let m = line_unit(3);
        let u = poly(&m, &[(&[0], 1, 1), (&[1], 1, 1)]);
        assert_eq!(
            u.log().unwrap(),
            poly(&m, &[(&[1], 1, 1), (&[2], -1, 2), (&[3], 1, 3)])
        );
        assert!(matches!(
            u.exp(),
            Err(SeriesError::BadConstantTerm { expected: "0", .. })
        ));
    }

    #[test]
    fn exp_log_roundtrip_and_additivity() {
        let m = plane(5);
        let u = poly(&m, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        assert_eq!(u.log().unwrap().exp().unwrap(), u);

        let a = poly(&m, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1)]);
        let b = poly(&m, &[(&[0, 0], 1, 1), (&[0, 1], 1, 1)]);
        let lhs = a.mul(&b).unwrap().log().unwrap();
        let rhs = a.log().unwrap().add(&b.log().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dlog_examples() {
        let m = plane(6);
        let y = poly(&m, &[(&[1, 0], 1, 1)]);
        let a = y.dlog_coefficients();
        assert_eq!(a.entries[0], y);
        assert!(a.entries[1].is_zero());

        let c = poly(&m, &[(&[0, 0], 7, 3)]);
        assert!(c.dlog_coefficients().entries.iter().all(TruncatedSeries::is_zero));

        // quadric cone at its fixed point
        let f = FieldSpec::rationals();
        let s = AffineMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let qm = LocalModel::new(ToricPoint::fixed_point(s, f).unwrap(), None, 6).unwrap();
        let y = poly(&qm, &[(&[2, 0], 1, 1), (&[1, 1], 1, 1)]);
        let a = y.dlog_coefficients();
        assert_eq!(a.entries[0], poly(&qm, &[(&[2, 0], 2, 1), (&[1, 1], 1, 1)]));
        assert_eq!(a.entries[1], poly(&qm, &[(&[1, 1], 1, 1)]));
        assert!(a.at_point().iter().all(Scalar::is_zero));
    }

    #[test]
    fn unit_direction_dlog() {
        // z = z(x)(1+s): dz/z has coefficient 1, so d(z)/z = 1·dz/z and a(z) = z
        let f = FieldSpec::rationals();
        let p = ToricPoint::new(AffineMonoid::orthant(1), vec![0], vec![Scalar::from_int(&f, 3)], f.clone()).unwrap();
        let m = LocalModel::new(p, None, 5).unwrap();
        let z = TruncatedSeries::character(&m, &[1]).unwrap();
        assert_eq!(z, poly(&m, &[(&[0], 3, 1), (&[1], 3, 1)]));
        assert_eq!(z.dlog_coefficients().entries[0], z);
        // z^{-1} = (1/3)(1 - s + s^2 - ...)
        let zi = TruncatedSeries::character(&m, &[-1]).unwrap();
        assert_eq!(zi.mul(&z).unwrap(), TruncatedSeries::one(&m));
        assert_eq!(zi.coeff(&[2]), Scalar::from_rational(&f, q(1, 3)));
    }

    #[test]
    fn value_at_point_examples() {
        let f = FieldSpec::rationals();
        let p = ToricPoint::new(AffineMonoid::orthant(2), vec![1], vec![Scalar::one(&f)], f).unwrap();
        let m = LocalModel::new(p, None, 4).unwrap();
        let y = poly(&m, &[(&[0, 0], 2, 1), (&[0, 1], 1, 1), (&[1, 1], 1, 1)]);
        assert_eq!(y.value_at_point(), Scalar::from_int(m.field(), 2));
        assert!(TruncatedSeries::zero(&m).value_at_point().is_zero());
    }

    #[test]
    fn monomial_unit_examples() {
        let m = plane(5);
        let y = poly(&m, &[(&[1, 1], 1, 1), (&[2, 1], 1, 1)]);
        let form = extract_monomial_unit(&y).unwrap();
        assert_eq!(form.exponent, vec![1, 1]);
        assert_eq!(form.unit.truncate(3), poly(&m, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1)]));
        let back = TruncatedSeries::z_power(&m, &form.exponent).unwrap().mul(&form.unit).unwrap();
        assert_eq!(back, y);

        let y = poly(&m, &[(&[0, 0], 2, 1), (&[1, 0], 1, 1)]);
        let form = extract_monomial_unit(&y).unwrap();
        assert_eq!(form.exponent, vec![0, 0]);
        assert_eq!(form.unit, y);

        let y = poly(&m, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        assert!(matches!(
            extract_monomial_unit(&y),
            Err(SeriesError::NotMonomialTimesUnit { .. })
        ));
    }

    #[test]
    fn model_mismatch_is_reported() {
        let a = TruncatedSeries::one(&plane(3));
        let b = TruncatedSeries::one(&plane(4));
        assert_eq!(a.add(&b), Err(SeriesError::ModelMismatch));
    }

    #[test]
    fn bad_keys_rejected() {
        let f = FieldSpec::rationals();
        let s = AffineMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let qm = LocalModel::new(ToricPoint::fixed_point(s, f.clone()).unwrap(), None, 6).unwrap();
        assert!(matches!(
            TruncatedSeries::from_terms(&qm, [(vec![1, 0], Scalar::one(&f))]),
            Err(SeriesError::BadKey(..))
        ));
        assert!(matches!(
            TruncatedSeries::character(&qm, &[1, 0]),
            Err(SeriesError::NotRegular(_))
        ));
    }
}
