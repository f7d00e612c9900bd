#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toroidal::field::{FieldSpec, Scalar};
use toroidal::log_smooth::MorphismGerm;
use toroidal::series::{LocalModel, TruncatedSeries};
use toroidal::toric::{AffineMonoid, ToricPoint};

pub fn q() -> Arc<FieldSpec> {
    FieldSpec::rationals()
}

pub fn br(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(&q(), n, d)
}

/// A point of 𝔸^m whose face is spanned by the coordinate generators in
/// `face` (those coordinates are units with the given values).
pub fn orthant_point(m: usize, face: &[usize], values: &[Scalar]) -> ToricPoint {
    ToricPoint::new(AffineMonoid::orthant(m), face.to_vec(), values.to_vec(), q()).unwrap()
}

pub fn origin_model(m: usize, cutoff: i64) -> Arc<LocalModel> {
    LocalModel::new(ToricPoint::fixed_point(AffineMonoid::orthant(m), q()).unwrap(), None, cutoff).unwrap()
}

pub fn quadric_cone() -> AffineMonoid {
    AffineMonoid::build(
        2,
        vec![vec![2, 0], vec![1, 1], vec![0, 2]],
        vec!["u".into(), "v".into(), "w".into()],
        None,
        true,
    )
    .unwrap()
}

pub fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

pub fn random_rat(rng: &mut ChaCha8Rng) -> Scalar {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_nonzero_rat(rng: &mut ChaCha8Rng) -> Scalar {
    rat(nonzero(rng, 5), rng.gen_range(1..=4))
}

/// A random point on 𝔸^m: random face, random nonzero unit values.
pub fn random_orthant_model(rng: &mut ChaCha8Rng, m: usize, cutoff: i64) -> Arc<LocalModel> {
    let face: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
    let values: Vec<Scalar> = face.iter().map(|_| random_nonzero_rat(rng)).collect();
    LocalModel::new(orthant_point(m, &face, &values), None, cutoff).unwrap()
}

/// A random key of positive weight at most `max_weight` in an orthant model.
pub fn random_key(rng: &mut ChaCha8Rng, m: usize, max_weight: i64) -> Vec<i64> {
    loop {
        let k: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=max_weight.min(3))).collect();
        let w: i64 = k.iter().sum();
        if w > 0 && w <= max_weight {
            return k;
        }
    }
}

/// A random series on an orthant model with up to `terms` terms.
pub fn random_series(rng: &mut ChaCha8Rng, model: &Arc<LocalModel>, terms: usize) -> TruncatedSeries {
    let m = model.m();
    let n = rng.gen_range(0..=terms);
    let mut out = Vec::new();
    if rng.gen_bool(0.7) {
        out.push((vec![0; m], random_rat(rng)));
    }
    for _ in 0..n {
        out.push((random_key(rng, m, model.cutoff().max(1)), random_rat(rng)));
    }
    TruncatedSeries::from_terms(model, out).unwrap()
}

/// `c + (random terms of positive weight)` on an orthant model.
pub fn random_unit(rng: &mut ChaCha8Rng, model: &Arc<LocalModel>, c: Scalar, terms: usize) -> TruncatedSeries {
    let m = model.m();
    let mut out = vec![(vec![0; m], c)];
    for _ in 0..terms {
        out.push((random_key(rng, m, 3), random_rat(rng)));
    }
    TruncatedSeries::from_terms(model, out).unwrap()
}

/// A unit with a random nonzero constant term.
pub fn random_unit_nonzero(rng: &mut ChaCha8Rng, model: &Arc<LocalModel>, terms: usize) -> TruncatedSeries {
    let c = random_nonzero_rat(rng);
    random_unit(rng, model, c, terms)
}

pub fn rational_matrix(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| br(x, 1)).collect()).collect()
}

/// Determinant by permutation expansion.
pub fn permutation_det(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigRational::zero();
    permute(a, &mut perm, 0, &mut total);
    total
}

fn permute(a: &[Vec<BigRational>], perm: &mut Vec<usize>, k: usize, total: &mut BigRational) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut p = BigRational::one();
        for (i, &j) in perm.iter().enumerate() {
            p *= &a[i][j];
        }
        if inversions % 2 == 1 {
            p = -p;
        }
        *total += p;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(a, perm, k + 1, total);
        perm.swap(k, i);
    }
}

/// Rank over ℚ by plain elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let d = &f * &a[rank][k];
                    a[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The only coefficient of a rational scalar.
pub fn as_rational(s: &Scalar) -> BigRational {
    assert!(s.field().is_rationals());
    s.coeffs()[0].clone()
}

/// Pullbacks `c_j·z^{E_j}·u_j` from the origin of 𝔸^m into 𝔸^m, with
/// random positive exponent rows and nonsingular E.
pub fn random_monomial_germ(rng: &mut ChaCha8Rng, m: usize, cutoff: i64) -> MorphismGerm {
    let model = origin_model(m, cutoff);
    let e = loop {
        let e: Vec<Vec<i64>> = (0..m).map(|_| (0..m).map(|_| rng.gen_range(0..=2)).collect()).collect();
        if !permutation_det(&rational_matrix(&e)).is_zero() {
            break e;
        }
    };
    let pullbacks = e
        .iter()
        .map(|row| {
            let mono = TruncatedSeries::z_power(&model, row).unwrap();
            let unit = random_unit_nonzero(rng, &model, 3);
            mono.mul(&unit).unwrap()
        })
        .collect();
    MorphismGerm::new(model, AffineMonoid::orthant(m), pullbacks, q()).unwrap()
}

/// Pullbacks into 𝔸² from a point of 𝔸² on the orbit where the second
/// coordinate is a unit: `c_j·z₁^{a_j}·u_j` with units depending on s.
pub fn random_unit_direction_germ(rng: &mut ChaCha8Rng, cutoff: i64) -> MorphismGerm {
    let value = random_nonzero_rat(rng);
    let model = LocalModel::new(orthant_point(2, &[1], &[value]), None, cutoff).unwrap();
    let a = [rng.gen_range(1..=3), rng.gen_range(0..=2)];
    let pullbacks = a
        .iter()
        .map(|&ai| {
            let mono = TruncatedSeries::z_power(&model, &[ai, 0]).unwrap();
            let unit = random_unit_nonzero(rng, &model, 3);
            mono.mul(&unit).unwrap()
        })
        .collect();
    MorphismGerm::new(model, AffineMonoid::orthant(2), pullbacks, q()).unwrap()
}
