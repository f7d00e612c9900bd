//! Monomialization of a log smooth germ: exponent matrix, translation,
//! unit rescaling by Hensel lifting, toric morphism, and the checks around it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{determinant, rank_profile, FieldSpec, RationalCheck, RootOutcome, Scalar};
use crate::intlat::{self, IntMatrix, LatticeError};
use crate::log_smooth::{
    augment_to_equal_dim, jacobian_from_forms, verdict_from_jacobian, GermError, LogJacobian, MorphismGerm,
};
use crate::series::{LocalModel, SeriesError, TruncatedSeries};
use crate::toric::{
    self, is_regular_toric_morphism, AffineMonoid, Regularity, ToricError, ToricMorphismData, ToricPoint,
    TranslationPoint,
};

pub use crate::series::{extract_monomial_unit, MonomialUnitForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomializeError {
    #[error("morphism is not log smooth at the point (rank {rank} < {n})")]
    NotLogSmooth { rank: usize, n: usize },
    #[error("residue value u_{index}(x) = {value} is not in the base field")]
    ResidueFieldHypothesisViolated { index: usize, value: String },
    #[error("no {degree}-th root of {value} in the residue field (certified: {certified})")]
    RootExtractionFailed {
        index: usize,
        value: String,
        degree: u32,
        certified: bool,
    },
    #[error("exponent matrix is singular")]
    Singular,
    #[error("chart character {index} is not a unit multiple of its pullback: expected exponent {expected:?}, found {found:?}")]
    Condition1Violated {
        index: usize,
        expected: Vec<i64>,
        found: Vec<i64>,
    },
    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Toric(#[from] ToricError),
}

/// Which branch of the construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// λ_j = u_j(x); needs every residue value in the base field.
    RationalResidue,
    /// λ_j = 1; constant parts of ε come from n-th roots in the residue field.
    RootCapable,
}

/// Commutativity check for one target character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramCheck {
    pub index: usize,
    pub pass: bool,
    /// Lowest weight, measured on the unit factor, where the two sides differ.
    pub mismatch_weight: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub weight_checked: i64,
    pub checks: Vec<DiagramCheck>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&DiagramCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomializationResult {
    pub mode: Mode,
    /// The germ after dimension equalization.
    pub germ: MorphismGerm,
    /// Characters appended by the augmentation step.
    pub appended: Vec<Vec<i64>>,
    pub forms: Vec<MonomialUnitForm>,
    pub jacobian: LogJacobian,
    pub e: IntMatrix,
    pub lambda: Vec<Scalar>,
    pub w: Vec<TruncatedSeries>,
    pub epsilon: Vec<TruncatedSeries>,
    pub g: ToricMorphismData,
    pub t: TranslationPoint,
    pub verification: VerificationReport,
}

fn rational_inverse(e: &IntMatrix) -> Result<Vec<Vec<BigRational>>, MonomializeError> {
    let (_, inv) = intlat::det_and_inverse(e)?;
    inv.ok_or(MonomializeError::Singular)
}

fn exp_of_combination(
    row: &[BigRational],
    logs: &[TruncatedSeries],
    model: &Arc<LocalModel>,
) -> Result<TruncatedSeries, SeriesError> {
    let mut acc = TruncatedSeries::zero(model);
    for (q, l) in row.iter().zip(logs) {
        if !q.is_zero() {
            acc = acc.add(&l.scale_rational(q))?;
        }
    }
    acc.exp()
}

/// Units ε with Π_i ε_i^{E_{j,i}} = w_j, as ε = exp(E⁻¹·log w).
pub fn hensel_units(e: &IntMatrix, w: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>, MonomializeError> {
    if e.rows() != e.cols() || e.rows() != w.len() {
        return Err(MonomializeError::InvariantBreach(format!(
            "exponent matrix {}x{} against {} units",
            e.rows(),
            e.cols(),
            w.len()
        )));
    }
    let Some(model) = w.first().map(|s| s.model().clone()) else {
        return Ok(Vec::new());
    };
    let inv = rational_inverse(e)?;
    let logs: Vec<TruncatedSeries> = w.iter().map(TruncatedSeries::log).collect::<Result<_, _>>()?;
    inv.iter()
        .map(|row| exp_of_combination(row, &logs, &model).map_err(Into::into))
        .collect()
}

/// Π_i ε_i^{E_{j,i}}.
pub fn monomial_in_units(row: &[i64], epsilon: &[TruncatedSeries]) -> Result<TruncatedSeries, SeriesError> {
    let model = epsilon[0].model();
    let mut acc = TruncatedSeries::one(model);
    for (&e, eps) in row.iter().zip(epsilon) {
        if e != 0 {
            acc = acc.mul(&eps.pow(e)?)?;
        }
    }
    Ok(acc)
}

fn to_i64(x: &BigInt) -> Result<i64, MonomializeError> {
    x.to_i64()
        .ok_or_else(|| MonomializeError::InvariantBreach(format!("integer {x} does not fit in 64 bits")))
}

/// Constants γ with Π_i γ_i^{E_{j,i}} = c_j, via U·E·V = D: δ_k = (c^U)_k^{1/d_k}, γ = δ^V.
fn solve_constant_system(e: &IntMatrix, c: &[Scalar]) -> Result<Vec<Scalar>, MonomializeError> {
    let n = c.len();
    let snf = intlat::snf(e);
    let field = c[0].field().clone();
    let mut gamma_hat = Vec::with_capacity(n);
    for k in 0..n {
        let mut cu = Scalar::one(&field);
        for (j, cj) in c.iter().enumerate() {
            let exp = to_i64(&snf.u[(k, j)])?;
            if exp != 0 {
                cu = &cu * &cj.pow(exp).expect("unit values are nonzero");
            }
        }
        let d = to_i64(&snf.d[(k, k)])?;
        if d == 0 {
            return Err(MonomializeError::Singular);
        }
        let degree = u32::try_from(d).map_err(|_| MonomializeError::InvariantBreach("huge elementary divisor".into()))?;
        match cu.nth_root(degree).map_err(|e| MonomializeError::InvariantBreach(e.to_string()))? {
            RootOutcome::Root(root) => gamma_hat.push(root),
            RootOutcome::NoRoot { certified } => {
                return Err(MonomializeError::RootExtractionFailed {
                    index: k,
                    value: cu.to_string(),
                    degree,
                    certified,
                })
            }
        }
    }
    let mut gamma = Vec::with_capacity(n);
    for i in 0..n {
        let mut g = Scalar::one(&field);
        for (k, dk) in gamma_hat.iter().enumerate() {
            let exp = to_i64(&snf.v[(i, k)])?;
            if exp != 0 {
                g = &g * &dk.pow(exp).expect("roots of units are nonzero");
            }
        }
        gamma.push(g);
    }
    Ok(gamma)
}

/// The residue value as a base-field scalar, if it lies in the base field.
fn into_base_field(value: &Scalar, base: &Arc<FieldSpec>) -> Option<Scalar> {
    if **value.field() == **base {
        return Some(value.clone());
    }
    match value.rational_check() {
        RationalCheck::Rational(q) if base.is_rationals() => Some(Scalar::from_rational(base, q)),
        _ => None,
    }
}

/// Runs the whole construction on a germ and verifies the resulting diagram.
pub fn monomialize_pipeline(f: &MorphismGerm, mode: Mode) -> Result<MonomializationResult, MonomializeError> {
    let aug = augment_to_equal_dim(f).map_err(|e| match e {
        GermError::NotLogSmooth { rank, n } => MonomializeError::NotLogSmooth { rank, n },
        other => other.into(),
    })?;
    let germ = aug.germ;
    let model = germ.source().clone();
    let field = model.field().clone();
    let n = germ.n();
    let r = model.r();

    let forms = germ.monomial_unit_forms()?;
    let jacobian = jacobian_from_forms(&forms)?;
    let verdict = verdict_from_jacobian(jacobian.clone(), &field);
    if !verdict.smooth {
        return Err(MonomializeError::InvariantBreach(
            "augmented jacobian is singular".into(),
        ));
    }

    // First r columns of E are the sharp exponents; the rest are free.
    let sharp_cols: Vec<Vec<i64>> = (0..r)
        .map(|i| forms.iter().map(|form| form.exponent[i]).collect())
        .collect();
    let e = intlat::complete_columns(&IntMatrix::from_columns(n, &sharp_cols))?;
    for (j, row) in jacobian.at_point.iter().enumerate() {
        for (i, entry) in row.iter().enumerate().take(r) {
            if *entry != Scalar::from_int(&field, to_i64(&e[(j, i)])?) {
                return Err(MonomializeError::InvariantBreach(format!(
                    "J(x)[{j}][{i}] = {entry} differs from the exponent matrix"
                )));
            }
        }
    }

    // u_j: y_j = z^{E_j} · u_j, absorbing the free columns into the unit.
    let mut units = Vec::with_capacity(n);
    for (j, form) in forms.iter().enumerate() {
        let mut free = vec![0; n];
        for (i, slot) in free.iter_mut().enumerate().skip(r) {
            *slot = -to_i64(&e[(j, i)])?;
        }
        units.push(form.unit.mul(&TruncatedSeries::z_power(&model, &free)?)?);
    }

    let base = germ.base_field().clone();
    let (lambda, w, epsilon) = match mode {
        Mode::RationalResidue => {
            let mut lambda = Vec::with_capacity(n);
            let mut w = Vec::with_capacity(n);
            for (j, u) in units.iter().enumerate() {
                let value = u.value_at_point();
                let lam = into_base_field(&value, &base).ok_or_else(|| {
                    MonomializeError::ResidueFieldHypothesisViolated {
                        index: j,
                        value: value.to_string(),
                    }
                })?;
                w.push(u.scale(&value.inv().expect("units are nonzero at the point")));
                lambda.push(lam);
            }
            let epsilon = hensel_units(&e, &w)?;
            (lambda, w, epsilon)
        }
        Mode::RootCapable => {
            let c: Vec<Scalar> = units.iter().map(TruncatedSeries::value_at_point).collect();
            let gamma = solve_constant_system(&e, &c)?;
            let normalized: Vec<TruncatedSeries> = units
                .iter()
                .zip(&c)
                .map(|(u, cj)| u.scale(&cj.inv().expect("nonzero")))
                .collect();
            let eta = hensel_units(&e, &normalized)?;
            let epsilon = eta.iter().zip(&gamma).map(|(s, g)| s.scale(g)).collect();
            (vec![Scalar::one(&base); n], units, epsilon)
        }
    };

    let t = toric::translation_from_lambda(&lambda, &base)?;

    let g = ToricMorphismData::new(e.clone());
    check_g_regular(&e, r, model.point(), germ.target_monoid())?;

    let mut result = MonomializationResult {
        mode,
        germ,
        appended: aug.appended,
        forms,
        jacobian,
        e,
        lambda,
        w,
        epsilon,
        g,
        t,
        verification: VerificationReport {
            weight_checked: model.cutoff(),
            checks: Vec::new(),
        },
    };
    result.verification = verify_diagram(&result.germ, &result)?;
    if !result.verification.all_pass() {
        return Err(MonomializeError::InvariantBreach(format!(
            "diagram check failed: {:?}",
            result.verification.first_failure()
        )));
    }
    Ok(result)
}

/// g is regular near the point iff every target generator pulls back to a
/// character whose vanishing part lies in the sharp monoid.
fn check_g_regular(
    e: &IntMatrix,
    r: usize,
    point: &ToricPoint,
    target: &AffineMonoid,
) -> Result<(), MonomializeError> {
    let local = ToricMorphismData::new(e.column_block(0, r));
    let sharp = point.sharp_monoid();
    if r == 0 {
        return Ok(());
    }
    match is_regular_toric_morphism(&local, sharp, target)? {
        Regularity::Regular => Ok(()),
        Regularity::NotRegular {
            target_generator,
            pullback,
        } => Err(MonomializeError::InvariantBreach(format!(
            "g is not regular: generator {target_generator:?} pulls back to {pullback:?}"
        ))),
    }
}

/// Checks λ_j⁻¹·f*(c_j) = (Π_i ε_i^{E_{j,i}})·z^{E_j} for every j.
pub fn verify_diagram(
    f: &MorphismGerm,
    res: &MonomializationResult,
) -> Result<VerificationReport, MonomializeError> {
    verify_parts(f, &res.e, &res.lambda, &res.epsilon)
}

/// [`verify_diagram`] on loose data, e.g. a result read back from a report.
pub fn verify_parts(
    f: &MorphismGerm,
    e: &IntMatrix,
    lambda: &[Scalar],
    epsilon: &[TruncatedSeries],
) -> Result<VerificationReport, MonomializeError> {
    let model = f.source();
    let n = f.n();
    if e.rows() != n || e.cols() != model.m() || lambda.len() != n || epsilon.len() != e.cols() {
        return Err(MonomializeError::InvariantBreach(format!(
            "result shape does not match the germ ({} pullbacks, rank {})",
            n,
            model.m()
        )));
    }
    let breach = |e: crate::field::FieldError| MonomializeError::InvariantBreach(e.to_string());
    let mut checks = Vec::with_capacity(n);
    for (j, y) in f.pullbacks().iter().enumerate() {
        let row: Vec<i64> = (0..e.cols()).map(|i| to_i64(&e[(j, i)])).collect::<Result<_, _>>()?;
        let lam_inv = lambda[j].embed_into(model.field()).map_err(breach)?.inv().map_err(breach)?;
        let lhs = y.scale(&lam_inv);
        let monomial = TruncatedSeries::z_power(model, &row)?;
        let rhs = monomial_in_units(&row, epsilon)?.mul(&monomial)?;
        let diff = lhs.sub(&rhs)?;
        let shift = model.weight(&row);
        checks.push(DiagramCheck {
            index: j,
            pass: diff.is_zero(),
            mismatch_weight: diff.order().map(|w| w - shift),
        });
    }
    Ok(VerificationReport {
        weight_checked: model.cutoff(),
        checks,
    })
}

/// Verdict of the étale criterion for a chart map ψ against the chart ρ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleVerdict {
    pub etale: bool,
    pub det_j: Scalar,
    /// Whether the last m−r rows × first r columns block of J(x) vanishes.
    pub block_zero: bool,
    pub det_j0: Scalar,
    /// det(∂x'_i/∂x_j(x)) over the unit directions, from J₀(x) rescaled by
    /// x'_i(x) on rows and 1/x_j(x) on columns.
    pub rescaled_det: Scalar,
    pub jacobian: LogJacobian,
}

/// ψ is given by pullbacks ψ*(z_i) of the z-basis characters; the chart ρ is
/// the identity of the model (ρ*(z_i) = z_i).
pub fn lemma3_etale_check(rho_model: &Arc<LocalModel>, psi: &[TruncatedSeries]) -> Result<EtaleVerdict, MonomializeError> {
    let m = rho_model.m();
    let r = rho_model.r();
    if psi.len() != m {
        return Err(MonomializeError::InvariantBreach(format!(
            "expected {m} pullbacks, got {}",
            psi.len()
        )));
    }
    let field = rho_model.field().clone();
    let mut forms = Vec::with_capacity(m);
    for (i, y) in psi.iter().enumerate() {
        if **y.model() != **rho_model {
            return Err(SeriesError::ModelMismatch.into());
        }
        let form = extract_monomial_unit(y).map_err(|e| GermError::Pullback { index: i, source: e })?;
        let mut expected = vec![0; m];
        if i < r {
            expected[i] = 1;
        }
        if form.exponent != expected {
            return Err(MonomializeError::Condition1Violated {
                index: i,
                expected,
                found: form.exponent,
            });
        }
        forms.push(form);
    }
    let jacobian = jacobian_from_forms(&forms)?;
    let (rank, _) = rank_profile(&jacobian.at_point);
    if rank < m {
        return Err(MonomializeError::NotLogSmooth { rank, n: m });
    }
    let det_j = determinant(&jacobian.at_point, &field);
    let block_zero = jacobian.at_point[r..]
        .iter()
        .all(|row| row[..r].iter().all(Scalar::is_zero));
    let j0: Vec<Vec<Scalar>> = jacobian.at_point[r..].iter().map(|row| row[r..].to_vec()).collect();
    let det_j0 = determinant(&j0, &field);

    let units = rho_model.unit_values();
    let rescaled: Vec<Vec<Scalar>> = j0
        .iter()
        .enumerate()
        .map(|(a, row)| {
            let xi_prime = psi[r + a].value_at_point();
            row.iter()
                .enumerate()
                .map(|(b, entry)| &(entry * &xi_prime) * &units[b].inv().expect("unit values are nonzero"))
                .collect()
        })
        .collect();
    let rescaled_det = determinant(&rescaled, &field);
    Ok(EtaleVerdict {
        etale: !det_j.is_zero() && block_zero && !det_j0.is_zero(),
        det_j,
        block_zero,
        det_j0,
        rescaled_det,
        jacobian,
    })
}

/// The germ z = y·x⁴ with y² = x − 1 at x = 0, y(0) = i: source ℕ over ℚ(i),
/// base field ℚ, truncated at `cutoff`.
pub fn counterexample_germ(cutoff: i64) -> Result<MorphismGerm, MonomializeError> {
    let qi = FieldSpec::gaussian();
    let point = ToricPoint::fixed_point(AffineMonoid::orthant(1), qi.clone())?;
    let model = LocalModel::new(point, None, cutoff)?;
    // y = i·(1 − x)^{1/2}
    let mut terms = Vec::new();
    let mut coeff = BigRational::from_integer(1.into());
    for k in 0..=cutoff {
        let c = &Scalar::generator(&qi) * &Scalar::from_rational(&qi, coeff.clone());
        terms.push((vec![k + 4], c));
        // binomial(1/2, k+1)·(−1)^{k+1} from binomial(1/2, k)·(−1)^k
        let half = BigRational::new(1.into(), 2.into());
        coeff = -coeff * (half - BigRational::from_integer(k.into())) / BigRational::from_integer((k + 1).into());
    }
    let pullback = TruncatedSeries::from_terms(&model, terms)?;
    Ok(MorphismGerm::new(model, AffineMonoid::orthant(1), vec![pullback], FieldSpec::rationals())?)
}

/// Evidence that no α ∈ ℚ, β ∈ ℚ(i) satisfy α·β⁴ = i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticObstruction {
    /// Coefficients of p⁴, p³q, p²q², pq³, q⁴ in Re (p + qi)⁴.
    pub real_part: Vec<BigInt>,
    /// Coefficients of the same monomials in Im (p + qi)⁴.
    pub imaginary_part: Vec<BigInt>,
    /// t² − 6t + 1 as [1, −6, 1] (t = (p/q)², leading coefficient first).
    pub reduced_quadratic: Vec<BigInt>,
    /// Rational root candidates and the value of the quadratic at each.
    pub candidates: Vec<(BigInt, BigInt)>,
    pub certified: bool,
}

fn quartic_obstruction() -> QuarticObstruction {
    // (p + qi)⁴ = Σ C(4,k) p^{4−k} q^k i^k
    let binom = [1, 4, 6, 4, 1];
    let mut real_part = vec![BigInt::zero(); 5];
    let mut imaginary_part = vec![BigInt::zero(); 5];
    for (k, &b) in binom.iter().enumerate() {
        let sign = if k % 4 < 2 { 1 } else { -1 };
        if k % 2 == 0 {
            real_part[k] = BigInt::from(sign * b);
        } else {
            imaginary_part[k] = BigInt::from(sign * b);
        }
    }
    // With q ≠ 0 and β⁴ purely imaginary, divide the real part by q⁴: only
    // even powers of p/q occur, giving a quadratic in t = (p/q)².
    let reduced_quadratic = vec![real_part[0].clone(), real_part[2].clone(), real_part[4].clone()];
    let lead = &reduced_quadratic[0];
    let constant = &reduced_quadratic[2];
    let mut candidates = Vec::new();
    // Both the leading and the constant coefficient are ±1 here, so the
    // rational root theorem leaves only ±1.
    debug_assert!(lead == &BigInt::from(1) && (constant == &BigInt::from(1) || constant == &BigInt::from(-1)));
    for t in [BigInt::from(1), BigInt::from(-1)] {
        let value = &reduced_quadratic[0] * &t * &t + &reduced_quadratic[1] * &t + &reduced_quadratic[2];
        candidates.push((t, value));
    }
    let certified = candidates.iter().all(|(_, v)| !v.is_zero());
    QuarticObstruction {
        real_part,
        imaginary_part,
        reduced_quadratic,
        candidates,
        certified,
    }
}

/// Certificate that the residue field hypothesis cannot be dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleCertificate {
    pub jacobian_at_point: Vec<Vec<Scalar>>,
    pub smooth: bool,
    /// β real or purely imaginary makes β⁴ real, hence α·β⁴ ≠ i.
    pub axis_cases_excluded: bool,
    pub obstruction: QuarticObstruction,
    /// The field's own search: i has no fourth root in ℚ(i).
    pub fourth_root_of_i: RootOutcome,
    pub rational_mode: Result<(), MonomializeError>,
    pub root_mode: Result<(), MonomializeError>,
}

impl CounterexampleCertificate {
    pub fn all_pass(&self) -> bool {
        let four = self.jacobian_at_point.len() == 1
            && self.jacobian_at_point[0].len() == 1
            && self.jacobian_at_point[0][0] == Scalar::from_int(self.jacobian_at_point[0][0].field(), 4);
        four && self.smooth
            && self.axis_cases_excluded
            && self.obstruction.certified
            && self.fourth_root_of_i == RootOutcome::NoRoot { certified: true }
            && matches!(
                self.rational_mode,
                Err(MonomializeError::ResidueFieldHypothesisViolated { .. })
            )
            && matches!(self.root_mode, Err(MonomializeError::RootExtractionFailed { .. }))
    }
}

pub fn certify_counterexample(cutoff: i64) -> Result<CounterexampleCertificate, MonomializeError> {
    let germ = counterexample_germ(cutoff)?;
    let verdict = crate::log_smooth::is_log_smooth(&germ)?;
    let qi = germ.source().field().clone();
    let i = Scalar::generator(&qi);

    // β = p or β = qi gives β⁴ = p⁴ or q⁴, both rational.
    let axis = |b: Scalar| b.pow(4).map(|v| matches!(v.rational_check(), RationalCheck::Rational(_)));
    let axis_cases_excluded = axis(Scalar::from_int(&qi, 3)).unwrap_or(false)
        && axis(&Scalar::from_int(&qi, 2) * &i).unwrap_or(false);

    let fourth_root_of_i = i
        .nth_root(4)
        .map_err(|e| MonomializeError::InvariantBreach(e.to_string()))?;
    let rational_mode = monomialize_pipeline(&germ, Mode::RationalResidue).map(|_| ());
    let root_mode = monomialize_pipeline(&germ, Mode::RootCapable).map(|_| ());
    Ok(CounterexampleCertificate {
        jacobian_at_point: verdict.jacobian.at_point.clone(),
        smooth: verdict.smooth,
        axis_cases_excluded,
        obstruction: quartic_obstruction(),
        fourth_root_of_i,
        rational_mode,
        root_mode,
    })
}
