//! Decide whether a chart map ψ into the same affine space is étale at the
//! origin, by the block structure of its log Jacobian.
use std::sync::Arc;

use toroidal::field::{FieldSpec, Scalar};
use toroidal::monomialize::{lemma3_etale_check, MonomializeError};
use toroidal::series::{LocalModel, TruncatedSeries};
use toroidal::toric::{AffineMonoid, ToricPoint};

fn series(model: &Arc<LocalModel>, terms: &[(&[i64], i64)]) -> TruncatedSeries {
    let q = model.field().clone();
    TruncatedSeries::from_terms(model, terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_int(&q, *c)))).unwrap()
}

fn report(name: &str, model: &Arc<LocalModel>, psi: &[TruncatedSeries]) {
    match lemma3_etale_check(model, psi) {
        Ok(v) => println!(
            "{name}: étale {}, det J = {}, zero block {}, rescaled det = {}",
            v.etale, v.det_j, v.block_zero, v.rescaled_det
        ),
        Err(MonomializeError::Condition1Violated { index, expected, found }) => {
            println!("{name}: exponent of ψ*(z{}) is {found:?}, expected {expected:?}", index + 1)
        }
        Err(e) => println!("{name}: {e}"),
    }
}

fn main() {
    let q = FieldSpec::rationals();
    // z1 is sharp, z2 is a unit with value 3.
    let p = ToricPoint::new(AffineMonoid::orthant(2), vec![1], vec![Scalar::from_int(&q, 3)], q).unwrap();
    let model = LocalModel::new(p, None, 6).unwrap();
    let z1 = TruncatedSeries::character(&model, &[1, 0]).unwrap();
    let z2 = TruncatedSeries::character(&model, &[0, 1]).unwrap();
    let s2 = TruncatedSeries::s_var(&model, 1);

    report("identity", &model, &[z1.clone(), z2.clone()]);

    let unit = series(&model, &[(&[0, 0], 1), (&[1, 0], 1)]);
    report("z1 rescaled by 1+z1", &model, &[z1.mul(&unit).unwrap(), z2.clone()]);

    // ψ*(z2) = 3·s2² + 5 has no linear s2 term: not étale.
    let flat = series(&model, &[(&[0, 0], 5)]).add(&s2.pow(2).unwrap().scale(&z2.value_at_point())).unwrap();
    report("flat in the unit direction", &model, &[z1.clone(), flat]);

    report("z1 squared", &model, &[z1.pow(2).unwrap(), z2]);
}
