//! Affine monoids, points of affine toric varieties as (face, character)
//! pairs, toric morphisms as lattice maps, and torus translations.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::field::{FieldSpec, RationalCheck, Scalar};
use crate::intlat::{self, BasisSplit, IntMatrix, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("generators span a sublattice of rank {rank} in Z^{ambient}")]
    NotFullRank { rank: usize, ambient: usize },
    #[error("monoid admits no strictly positive grading in the searched range")]
    NoPositiveGrading,
    #[error("grading {grading:?} is not strictly positive on generator {generator:?}")]
    GradingNotPositive { grading: Vec<i64>, generator: Vec<i64> },
    #[error("saturation spot check failed: {witness:?} is not in the monoid but {multiple} times it is")]
    NotSaturated { witness: Vec<i64>, multiple: i64 },
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("face index {0} out of range")]
    InvalidFaceIndex(usize),
    #[error("generators {0} and {1} violate the face property")]
    NotAFace(usize, usize),
    #[error("face lattice: {0}")]
    FaceLattice(LatticeError),
    #[error("expected {expected} character values on the face lattice, got {got}")]
    CharValueCount { expected: usize, got: usize },
    #[error("character value {0} is zero")]
    ZeroCharValue(usize),
    #[error("character value {0} is not in the residue field")]
    CharValueField(usize),
    #[error("translation value {0} is zero")]
    ZeroTranslation(usize),
    #[error("translation value {index} ({value}) is not in the base field")]
    NotInBaseField { index: usize, value: String },
}

/// A finitely generated monoid S ⊂ ℤ^m of full rank, together with a strictly
/// positive grading used to bound membership searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient_rank: usize,
    generators: Vec<Vec<i64>>,
    labels: Vec<String>,
    grading: Option<Vec<i64>>,
    declared_saturated: bool,
    lattice_index: BigInt,
}

/// Cutoff for the saturation spot check (grading value of the tested points).
pub const SATURATION_CHECK_CUTOFF: i64 = 6;

impl AffineMonoid {
    /// Monoid with default labels `g0, g1, …`, a searched grading, declared saturated.
    pub fn new(ambient_rank: usize, generators: Vec<Vec<i64>>) -> Result<AffineMonoid, ToricError> {
        let labels = (0..generators.len()).map(|i| format!("g{i}")).collect();
        AffineMonoid::build(ambient_rank, generators, labels, None, true)
    }

    /// ℕ^m with generators labelled `z1, …, zm`.
    pub fn orthant(m: usize) -> AffineMonoid {
        let gens = (0..m)
            .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
            .collect();
        let labels = (1..=m).map(|i| format!("z{i}")).collect();
        AffineMonoid::build(m, gens, labels, None, true).expect("orthant is valid")
    }

    /// Full constructor. When the monoid is declared saturated and a grading
    /// exists, the saturation spot check runs here.
    pub fn build(
        ambient_rank: usize,
        generators: Vec<Vec<i64>>,
        labels: Vec<String>,
        grading: Option<Vec<i64>>,
        declared_saturated: bool,
    ) -> Result<AffineMonoid, ToricError> {
        let monoid = AffineMonoid::unchecked(ambient_rank, generators, labels, grading)?;
        let monoid = AffineMonoid {
            declared_saturated,
            ..monoid
        };
        if declared_saturated && monoid.grading.is_some() {
            monoid.spot_check_saturation(SATURATION_CHECK_CUTOFF)?;
        }
        Ok(monoid)
    }

    fn unchecked(
        ambient_rank: usize,
        generators: Vec<Vec<i64>>,
        labels: Vec<String>,
        grading: Option<Vec<i64>>,
    ) -> Result<AffineMonoid, ToricError> {
        if generators.iter().any(|g| g.len() != ambient_rank) {
            return Err(ToricError::Shape(format!(
                "generator length differs from ambient rank {ambient_rank}"
            )));
        }
        if labels.len() != generators.len() {
            return Err(ToricError::Shape("one label per generator".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(ToricError::DuplicateLabel(l.clone()));
            }
        }
        let gm = IntMatrix::from_columns(ambient_rank, &generators);
        let snf = intlat::snf(&gm);
        let rank = snf.rank();
        if rank != ambient_rank {
            return Err(ToricError::NotFullRank {
                rank,
                ambient: ambient_rank,
            });
        }
        let lattice_index = snf.diagonal().into_iter().fold(BigInt::one(), |a, d| a * d);
        let grading = match grading {
            Some(h) => {
                if h.len() != ambient_rank {
                    return Err(ToricError::Shape("grading length".into()));
                }
                if let Some(g) = generators.iter().find(|g| dot(&h, g) <= 0 && g.iter().any(|&x| x != 0)) {
                    return Err(ToricError::GradingNotPositive {
                        grading: h,
                        generator: g.clone(),
                    });
                }
                Some(h)
            }
            None => find_positive_grading(ambient_rank, &generators),
        };
        Ok(AffineMonoid {
            ambient_rank,
            generators,
            labels,
            grading,
            declared_saturated: true,
            lattice_index,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn declared_saturated(&self) -> bool {
        self.declared_saturated
    }

    /// Index of the group generated by S inside ℤ^m (1 when S generates ℤ^m).
    pub fn lattice_index(&self) -> &BigInt {
        &self.lattice_index
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient_rank, &self.generators)
    }

    /// Decides v ∈ S by exhaustive search bounded by the grading value of v.
    pub fn contains(&self, v: &[i64]) -> Result<bool, ToricError> {
        let h = self.grading.as_ref().ok_or(ToricError::NoPositiveGrading)?;
        Ok(in_monoid(&self.generators, h, v))
    }

    /// All monoid elements of grading value ≤ `max_weight`.
    pub fn elements_up_to(&self, max_weight: i64) -> Result<Vec<Vec<i64>>, ToricError> {
        let h = self.grading.as_ref().ok_or(ToricError::NoPositiveGrading)?;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        let zero = vec![0; self.ambient_rank];
        seen.insert(zero.clone());
        queue.push_back(zero);
        while let Some(v) = queue.pop_front() {
            for g in &self.generators {
                let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
                if dot(h, &w) <= max_weight && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
        out.sort_by(|a, b| dot(h, a).cmp(&dot(h, b)).then(a.cmp(b)));
        Ok(out)
    }

    /// Every lattice point p (in the group generated by S) with k·p ∈ S for
    /// k ∈ {2, 3} and grading value ≤ `cutoff` must itself lie in S.
    pub fn spot_check_saturation(&self, cutoff: i64) -> Result<(), ToricError> {
        let gm = self.generator_matrix();
        for k in [2i64, 3] {
            for e in self.elements_up_to(k * cutoff)? {
                if e.iter().any(|x| x % k != 0) {
                    continue;
                }
                let p: Vec<i64> = e.iter().map(|x| x / k).collect();
                if intlat::lattice_contains(&gm, &p) && !self.contains(&p)? {
                    return Err(ToricError::NotSaturated {
                        witness: p,
                        multiple: k,
                    });
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn find_positive_grading(m: usize, gens: &[Vec<i64>]) -> Option<Vec<i64>> {
    let positive = |h: &[i64]| {
        gens.iter()
            .all(|g| g.iter().all(|&x| x == 0) || dot(h, g) > 0)
    };
    let ones = vec![1; m];
    if positive(&ones) {
        return Some(ones);
    }
    const B: i64 = 3;
    let mut h = vec![-B; m];
    loop {
        if positive(&h) {
            return Some(h);
        }
        let mut k = 0;
        loop {
            if k == m {
                return None;
            }
            h[k] += 1;
            if h[k] > B {
                h[k] = -B;
                k += 1;
            } else {
                break;
            }
        }
    }
}

/// Membership of `v` in the monoid generated by `gens`, where `h` is
/// strictly positive on every nonzero generator.
pub(crate) fn in_monoid(gens: &[Vec<i64>], h: &[i64], v: &[i64]) -> bool {
    let gens: Vec<&Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    let mut failed: HashSet<Vec<i64>> = HashSet::new();
    fn go(v: &[i64], gens: &[&Vec<i64>], h: &[i64], failed: &mut HashSet<Vec<i64>>) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if dot(h, v) <= 0 || failed.contains(v) {
            return false;
        }
        for g in gens {
            let rest: Vec<i64> = v.iter().zip(g.iter()).map(|(a, b)| a - b).collect();
            if go(&rest, gens, h, failed) {
                return true;
            }
        }
        failed.insert(v.to_vec());
        false
    }
    go(v, &gens, h, &mut failed)
}

/// A point of Spec k[S]: a face of S together with a group homomorphism from
/// the (saturated) face lattice to k(x)^×, given by its values on the last
/// `m − r` vectors of a basis split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricPoint {
    monoid: AffineMonoid,
    face: Vec<usize>,
    char_values: Vec<Scalar>,
    residue_field: Arc<FieldSpec>,
    split: BasisSplit,
    sharp: AffineMonoid,
}

/// Result of evaluating a character at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharValue {
    Value(Scalar),
    Zero,
    Undefined,
}

impl ToricPoint {
    pub fn new(
        monoid: AffineMonoid,
        mut face: Vec<usize>,
        char_values: Vec<Scalar>,
        residue_field: Arc<FieldSpec>,
    ) -> Result<ToricPoint, ToricError> {
        face.sort_unstable();
        face.dedup();
        let ngens = monoid.generators.len();
        if let Some(&bad) = face.iter().find(|&&i| i >= ngens) {
            return Err(ToricError::InvalidFaceIndex(bad));
        }
        let m = monoid.ambient_rank;
        let h = monoid
            .grading
            .clone()
            .ok_or(ToricError::NoPositiveGrading)?;
        let face_gens: Vec<Vec<i64>> = face.iter().map(|&i| monoid.generators[i].clone()).collect();
        for i in 0..ngens {
            for j in i..ngens {
                let in_face = face.contains(&i) && face.contains(&j);
                if in_face {
                    continue;
                }
                let sum: Vec<i64> = monoid.generators[i]
                    .iter()
                    .zip(&monoid.generators[j])
                    .map(|(a, b)| a + b)
                    .collect();
                if in_monoid(&face_gens, &h, &sum) {
                    return Err(ToricError::NotAFace(i, j));
                }
            }
        }
        let face_matrix = IntMatrix::from_columns(m, &face_gens);
        let saturated = intlat::saturation_basis(&face_matrix);
        let split = intlat::split_basis(&saturated).map_err(ToricError::FaceLattice)?;
        let r = split.r();
        if char_values.len() != m - r {
            return Err(ToricError::CharValueCount {
                expected: m - r,
                got: char_values.len(),
            });
        }
        for (k, c) in char_values.iter().enumerate() {
            if **c.field() != *residue_field {
                return Err(ToricError::CharValueField(k));
            }
            if c.is_zero() {
                return Err(ToricError::ZeroCharValue(k));
            }
        }

        // Image of S in the first r z-coordinates: the sharp monoid of the
        // toric neighbourhood of the point.
        let mut sharp_gens: Vec<Vec<i64>> = Vec::new();
        for g in &monoid.generators {
            let a = split.to_basis_coords(g);
            let s = a[..r].to_vec();
            if s.iter().any(|&x| x != 0) && !sharp_gens.contains(&s) {
                sharp_gens.push(s);
            }
        }
        let labels = (0..sharp_gens.len()).map(|i| format!("t{i}")).collect();
        let sharp = AffineMonoid::unchecked(r, sharp_gens, labels, None)?;
        if sharp.grading.is_none() {
            return Err(ToricError::NoPositiveGrading);
        }

        Ok(ToricPoint {
            monoid,
            face,
            char_values,
            residue_field,
            split,
            sharp,
        })
    }

    /// The torus-fixed point (empty face) of a pointed monoid.
    pub fn fixed_point(monoid: AffineMonoid, residue_field: Arc<FieldSpec>) -> Result<ToricPoint, ToricError> {
        ToricPoint::new(monoid, Vec::new(), Vec::new(), residue_field)
    }

    pub fn monoid(&self) -> &AffineMonoid {
        &self.monoid
    }

    pub fn face(&self) -> &[usize] {
        &self.face
    }

    pub fn char_values(&self) -> &[Scalar] {
        &self.char_values
    }

    pub fn residue_field(&self) -> &Arc<FieldSpec> {
        &self.residue_field
    }

    pub fn split(&self) -> &BasisSplit {
        &self.split
    }

    /// Number of basis characters vanishing at the point.
    pub fn r(&self) -> usize {
        self.split.r()
    }

    /// Projection of S onto the vanishing z-coordinates.
    pub fn sharp_monoid(&self) -> &AffineMonoid {
        &self.sharp
    }

    /// Whether the point lies on the closed orbit of V (its face is the
    /// smallest face of S).
    pub fn in_closed_orbit(&self) -> bool {
        // S is pointed (it has a positive grading), so its smallest face is {0}.
        self.face
            .iter()
            .all(|&i| self.monoid.generators[i].iter().all(|&x| x == 0))
    }

    /// Evaluates the character χ^v (v in ambient coordinates) at the point.
    pub fn eval_character(&self, v: &[i64]) -> CharValue {
        let a = self.split.to_basis_coords(v);
        let r = self.r();
        if a[..r].iter().all(|&x| x == 0) {
            let mut val = Scalar::one(&self.residue_field);
            for (k, &e) in a[r..].iter().enumerate() {
                let p = self.char_values[k].pow(e).expect("values are nonzero");
                val = &val * &p;
            }
            return CharValue::Value(val);
        }
        match self.sharp.contains(&a[..r]) {
            Ok(true) => CharValue::Zero,
            _ => CharValue::Undefined,
        }
    }
}

/// A toric map given on characters: row j is the exponent vector of g*(c_j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricMorphismData {
    pub source_rank: usize,
    pub target_rank: usize,
    pub lattice_map: IntMatrix,
}

/// Outcome of a regularity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    NotRegular {
        target_generator: Vec<i64>,
        pullback: Vec<i64>,
    },
}

impl ToricMorphismData {
    pub fn new(lattice_map: IntMatrix) -> ToricMorphismData {
        ToricMorphismData {
            source_rank: lattice_map.cols(),
            target_rank: lattice_map.rows(),
            lattice_map,
        }
    }

    /// Exponent vector of g*(χ^w) for a target character w.
    pub fn pullback(&self, w: &[i64]) -> Vec<i64> {
        self.lattice_map.transpose().mul_vec(w)
    }
}

/// g is a morphism iff every target generator pulls back into the source monoid.
pub fn is_regular_toric_morphism(
    g: &ToricMorphismData,
    source: &AffineMonoid,
    target: &AffineMonoid,
) -> Result<Regularity, ToricError> {
    if g.source_rank != source.ambient_rank || g.target_rank != target.ambient_rank {
        return Err(ToricError::Shape(format!(
            "map {}x{} between ranks {} and {}",
            g.target_rank, g.source_rank, source.ambient_rank, target.ambient_rank
        )));
    }
    for w in &target.generators {
        let p = g.pullback(w);
        if !source.contains(&p)? {
            return Ok(Regularity::NotRegular {
                target_generator: w.clone(),
                pullback: p,
            });
        }
    }
    Ok(Regularity::Regular)
}

/// A k-rational point of the target torus, by its character values c_j(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationPoint {
    values: Vec<Scalar>,
}

impl TranslationPoint {
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }
}

/// The translation whose character values are λ_j^{-1}. Each λ_j must be a
/// nonzero element of the base field (rational-valued elements of an
/// extension are accepted and moved into the base field).
pub fn translation_from_lambda(
    lambda: &[Scalar],
    base_field: &Arc<FieldSpec>,
) -> Result<TranslationPoint, ToricError> {
    let mut values = Vec::with_capacity(lambda.len());
    for (j, l) in lambda.iter().enumerate() {
        if l.is_zero() {
            return Err(ToricError::ZeroTranslation(j));
        }
        let in_base = if **l.field() == **base_field {
            l.clone()
        } else if base_field.is_rationals() {
            match l.rational_check() {
                RationalCheck::Rational(q) => Scalar::from_rational(base_field, q),
                RationalCheck::NotRational => {
                    return Err(ToricError::NotInBaseField {
                        index: j,
                        value: l.to_string(),
                    })
                }
            }
        } else {
            return Err(ToricError::NotInBaseField {
                index: j,
                value: l.to_string(),
            });
        };
        values.push(in_base.inv().expect("nonzero"));
    }
    Ok(TranslationPoint { values })
}
