//! Logarithmic Jacobians of morphism germs and the log smoothness test.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{determinant, rank_profile, FieldSpec, Scalar};
use crate::series::{extract_monomial_unit, LocalModel, MonomialUnitForm, SeriesError, TruncatedSeries};
use crate::toric::{AffineMonoid, ToricError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("expected {expected} pullbacks, got {got}")]
    PullbackCount { expected: usize, got: usize },
    #[error("pullback {0} is zero")]
    ZeroPullback(usize),
    #[error("target rank {n} exceeds source rank {m}")]
    TargetTooLarge { n: usize, m: usize },
    #[error("base field {base} is neither Q nor the residue field {residue}")]
    BaseField { base: String, residue: String },
    #[error("no augmenting character of height <= {0} completes the jacobian")]
    SearchExhausted(i64),
    #[error("morphism is not log smooth (rank {rank} < {n})")]
    NotLogSmooth { rank: usize, n: usize },
    #[error("pullback {index}: {source}")]
    Pullback { index: usize, source: SeriesError },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Toric(#[from] ToricError),
}

/// A morphism germ f at a toric point, given by the pullbacks f*(c_j) of a
/// basis c_1..c_n of the target character lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismGerm {
    source: Arc<LocalModel>,
    target_monoid: AffineMonoid,
    pullbacks: Vec<TruncatedSeries>,
    base_field: Arc<FieldSpec>,
}

impl MorphismGerm {
    pub fn new(
        source: Arc<LocalModel>,
        target_monoid: AffineMonoid,
        pullbacks: Vec<TruncatedSeries>,
        base_field: Arc<FieldSpec>,
    ) -> Result<MorphismGerm, GermError> {
        let n = target_monoid.ambient_rank();
        let m = source.m();
        if pullbacks.len() != n {
            return Err(GermError::PullbackCount {
                expected: n,
                got: pullbacks.len(),
            });
        }
        if n > m {
            return Err(GermError::TargetTooLarge { n, m });
        }
        for (j, p) in pullbacks.iter().enumerate() {
            if **p.model() != *source {
                return Err(GermError::Pullback {
                    index: j,
                    source: SeriesError::ModelMismatch,
                });
            }
            if p.is_zero() {
                return Err(GermError::ZeroPullback(j));
            }
        }
        if !base_field.is_rationals() && *base_field != **source.field() {
            return Err(GermError::BaseField {
                base: base_field.to_string(),
                residue: source.field().to_string(),
            });
        }
        Ok(MorphismGerm {
            source,
            target_monoid,
            pullbacks,
            base_field,
        })
    }

    pub fn source(&self) -> &Arc<LocalModel> {
        &self.source
    }

    pub fn target_monoid(&self) -> &AffineMonoid {
        &self.target_monoid
    }

    pub fn pullbacks(&self) -> &[TruncatedSeries] {
        &self.pullbacks
    }

    pub fn base_field(&self) -> &Arc<FieldSpec> {
        &self.base_field
    }

    pub fn n(&self) -> usize {
        self.pullbacks.len()
    }

    pub fn m(&self) -> usize {
        self.source.m()
    }

    /// The monomial·unit form of every pullback.
    pub fn monomial_unit_forms(&self) -> Result<Vec<MonomialUnitForm>, GermError> {
        self.pullbacks
            .iter()
            .enumerate()
            .map(|(j, p)| extract_monomial_unit(p).map_err(|e| GermError::Pullback { index: j, source: e }))
            .collect()
    }
}

/// J with f*(dc_j/c_j) = Σ_i J_{j,i} dz_i/z_i, and its value at the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogJacobian {
    pub entries: Vec<Vec<TruncatedSeries>>,
    pub at_point: Vec<Vec<Scalar>>,
}

/// Row of the log Jacobian for `z^e · u`: `e + a(u)/u`.
pub fn log_jacobian_row(form: &MonomialUnitForm) -> Result<Vec<TruncatedSeries>, SeriesError> {
    let model = form.unit.model();
    let inv = form.unit.invert()?;
    let a = form.unit.dlog_coefficients().mul_series(&inv)?;
    let field = model.field();
    a.entries
        .into_iter()
        .zip(&form.exponent)
        .map(|(entry, &e)| entry.add(&TruncatedSeries::constant(model, Scalar::from_int(field, e))))
        .collect()
}

pub fn log_jacobian(f: &MorphismGerm) -> Result<LogJacobian, GermError> {
    let forms = f.monomial_unit_forms()?;
    jacobian_from_forms(&forms)
}

pub(crate) fn jacobian_from_forms(forms: &[MonomialUnitForm]) -> Result<LogJacobian, GermError> {
    let entries: Vec<Vec<TruncatedSeries>> = forms
        .iter()
        .enumerate()
        .map(|(j, form)| log_jacobian_row(form).map_err(|e| GermError::Pullback { index: j, source: e }))
        .collect::<Result<_, _>>()?;
    let at_point = entries
        .iter()
        .map(|row| row.iter().map(TruncatedSeries::value_at_point).collect())
        .collect();
    Ok(LogJacobian { entries, at_point })
}

/// Outcome of the log smoothness test with its rank certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub rank: usize,
    pub n: usize,
    /// Columns of a maximal nonvanishing minor of J(x).
    pub minor_columns: Vec<usize>,
    pub minor_det: Scalar,
    pub jacobian: LogJacobian,
}

pub fn is_log_smooth(f: &MorphismGerm) -> Result<SmoothnessVerdict, GermError> {
    let jacobian = log_jacobian(f)?;
    Ok(verdict_from_jacobian(jacobian, f.source.field()))
}

pub(crate) fn verdict_from_jacobian(jacobian: LogJacobian, field: &Arc<FieldSpec>) -> SmoothnessVerdict {
    let n = jacobian.at_point.len();
    let (rank, pivots) = rank_profile(&jacobian.at_point);
    // Rows are independent exactly when rank = n; the pivot columns then
    // carry a nonsingular n×n minor.
    let minor: Vec<Vec<Scalar>> = if rank == n {
        jacobian
            .at_point
            .iter()
            .map(|row| pivots.iter().map(|&c| row[c].clone()).collect())
            .collect()
    } else {
        Vec::new()
    };
    let minor_det = if rank == n {
        determinant(&minor, field)
    } else {
        Scalar::zero(field)
    };
    SmoothnessVerdict {
        smooth: rank == n,
        rank,
        n,
        minor_columns: pivots,
        minor_det,
        jacobian,
    }
}

/// Largest coordinate height searched by [`augment_to_equal_dim`].
pub const AUGMENT_HEIGHT_BOUND: i64 = 10;

/// Result of dimension equalization: the new germ and the appended
/// characters (ambient coordinates of the source lattice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub germ: MorphismGerm,
    pub appended: Vec<Vec<i64>>,
}

/// Vectors of `ℤ^m` with max-norm exactly `h`, in lexicographic order.
fn vectors_of_height(m: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-h; m];
    loop {
        if cur.iter().any(|x| x.abs() == h) {
            out.push(cur.clone());
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < h {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = -h;
                }
                break;
            }
        }
    }
}

/// Appends pure characters χ^v, v ∈ S, to a log smooth germ until J(x) is
/// square and invertible. Candidates are enumerated by height, then
/// lexicographically; each is kept iff it raises the rank.
pub fn augment_to_equal_dim(f: &MorphismGerm) -> Result<Augmentation, GermError> {
    let verdict = is_log_smooth(f)?;
    if !verdict.smooth {
        return Err(GermError::NotLogSmooth {
            rank: verdict.rank,
            n: verdict.n,
        });
    }
    let m = f.m();
    let n = f.n();
    if n == m {
        return Ok(Augmentation {
            germ: f.clone(),
            appended: Vec::new(),
        });
    }
    let model = &f.source;
    let field = model.field();
    let split = model.point().split();
    let monoid = model.point().monoid();
    let mut rows = verdict.jacobian.at_point.clone();
    let mut appended = Vec::new();
    'search: for h in 1..=AUGMENT_HEIGHT_BOUND {
        for v in vectors_of_height(m, h) {
            if !monoid.contains(&v)? {
                continue;
            }
            let a = split.to_basis_coords(&v);
            let row: Vec<Scalar> = a.iter().map(|&x| Scalar::from_int(field, x)).collect();
            rows.push(row);
            if rank_profile(&rows).0 == rows.len() {
                appended.push(v);
                if rows.len() == m {
                    break 'search;
                }
            } else {
                rows.pop();
            }
        }
    }
    if rows.len() < m {
        return Err(GermError::SearchExhausted(AUGMENT_HEIGHT_BOUND));
    }

    let germ = append_characters(f, &appended)?;
    Ok(Augmentation { germ, appended })
}

/// Extends f by the pure characters χ^v (ambient source coordinates),
/// widening the target monoid by affine-line factors.
pub fn append_characters(f: &MorphismGerm, appended: &[Vec<i64>]) -> Result<MorphismGerm, GermError> {
    if appended.is_empty() {
        return Ok(f.clone());
    }
    let model = &f.source;
    let n = f.n();
    let mut pullbacks = f.pullbacks.clone();
    for v in appended {
        pullbacks.push(TruncatedSeries::character(model, v)?);
    }
    let target = &f.target_monoid;
    let new_rank = n + appended.len();
    let mut gens: Vec<Vec<i64>> = target
        .generators()
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.resize(new_rank, 0);
            g
        })
        .collect();
    let mut labels = target.labels().to_vec();
    for k in n..new_rank {
        let mut e = vec![0; new_rank];
        e[k] = 1;
        gens.push(e);
        let mut label = format!("c{}", k + 1);
        while labels.contains(&label) {
            label.push('\'');
        }
        labels.push(label);
    }
    let target_monoid = AffineMonoid::build(new_rank, gens, labels, None, target.declared_saturated())?;
    MorphismGerm::new(model.clone(), target_monoid, pullbacks, f.base_field.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::ToricPoint;

    fn plane(n: i64) -> Arc<LocalModel> {
        let p = ToricPoint::fixed_point(AffineMonoid::orthant(2), FieldSpec::rationals()).unwrap();
        LocalModel::new(p, None, n).unwrap()
    }

    fn poly(model: &Arc<LocalModel>, terms: &[(&[i64], i64)]) -> TruncatedSeries {
        let f = model.field().clone();
        TruncatedSeries::from_terms(model, terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_int(&f, *c)))).unwrap()
    }

    fn germ(model: &Arc<LocalModel>, pullbacks: Vec<TruncatedSeries>) -> MorphismGerm {
        let n = pullbacks.len();
        MorphismGerm::new(model.clone(), AffineMonoid::orthant(n), pullbacks, FieldSpec::rationals()).unwrap()
    }

    fn ints(rows: &[Vec<Scalar>]) -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }

    #[test]
    fn jacobian_of_unit_times_monomial() {
        let m = plane(6);
        let f = germ(&m, vec![poly(&m, &[(&[1, 1], 1), (&[2, 1], 1)])]);
        let j = log_jacobian(&f).unwrap();
        assert_eq!(ints(&j.at_point), vec![vec!["1", "1"]]);
        // a_1(1+z1)/(1+z1) = z1/(1+z1)
        let expected = poly(&m, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], -1), (&[3, 0], 1), (&[4, 0], -1), (&[5, 0], 1), (&[6, 0], -1)]);
        assert_eq!(j.entries[0][0], expected);
    }

    #[test]
    fn identity_and_duplicate_rows() {
        let m = plane(4);
        let id = germ(&m, vec![poly(&m, &[(&[1, 0], 1)]), poly(&m, &[(&[0, 1], 1)])]);
        let v = is_log_smooth(&id).unwrap();
        assert!(v.smooth);
        assert_eq!(ints(&v.jacobian.at_point), vec![vec!["1", "0"], vec!["0", "1"]]);

        let dup = germ(&m, vec![poly(&m, &[(&[1, 1], 1)]), poly(&m, &[(&[1, 1], 1)])]);
        let v = is_log_smooth(&dup).unwrap();
        assert!(!v.smooth);
        assert_eq!(v.rank, 1);
    }

    #[test]
    fn augmentation_examples() {
        let m = plane(4);
        let f = germ(&m, vec![poly(&m, &[(&[1, 1], 1), (&[2, 1], 1)])]);
        let aug = augment_to_equal_dim(&f).unwrap();
        assert_eq!(aug.appended, vec![vec![0, 1]]);
        let j = log_jacobian(&aug.germ).unwrap();
        assert_eq!(ints(&j.at_point), vec![vec!["1", "1"], vec!["0", "1"]]);

        let f = germ(&m, vec![poly(&m, &[(&[1, 0], 1)])]);
        assert_eq!(augment_to_equal_dim(&f).unwrap().appended, vec![vec![0, 1]]);

        let f = germ(&m, vec![poly(&m, &[(&[1, 0], 1)]), poly(&m, &[(&[0, 1], 1)])]);
        let aug = augment_to_equal_dim(&f).unwrap();
        assert!(aug.appended.is_empty());
        assert_eq!(aug.germ, f);
    }

    #[test]
    fn height_enumeration_order() {
        let v = vectors_of_height(2, 1);
        assert_eq!(v.len(), 8);
        assert_eq!(v[0], vec![-1, -1]);
        assert!(v.iter().position(|x| x == &vec![0, 1]) < v.iter().position(|x| x == &vec![1, 0]));
    }
}
