//! Truncated power series at a point of a toric variety: products, inverses,
//! exp/log, logarithmic derivatives and monomial-times-unit factorisation.
use toroidal::field::{FieldSpec, Scalar};
use toroidal::series::{extract_monomial_unit, LocalModel, TruncatedSeries};
use toroidal::toric::{AffineMonoid, ToricPoint};

fn main() {
    let q = FieldSpec::rationals();
    // A point on the x-axis orbit of the plane: z1 is a unit with value 2.
    let point = ToricPoint::new(AffineMonoid::orthant(2), vec![0], vec![Scalar::from_int(&q, 2)], q.clone()).unwrap();
    let model = LocalModel::new(point, None, 6).unwrap();
    println!("m = {}, r = {}, cutoff {}", model.m(), model.r(), model.cutoff());

    // χ^(1,0) = 2(1+s) in the unit direction, χ^(0,1) is the sharp coordinate.
    let x = TruncatedSeries::character(&model, &[1, 0]).unwrap();
    let y = TruncatedSeries::character(&model, &[0, 1]).unwrap();
    println!("x = {x}\ny = {y}");

    let f = x.mul(&y).unwrap().add(&y.pow(3).unwrap()).unwrap();
    println!("f = xy + y³ = {f}");
    println!("order {:?}, value at the point {}", f.order(), f.value_at_point());

    let u = TruncatedSeries::one(&model).add(&y).unwrap();
    let u_inv = u.invert().unwrap();
    println!("(1+y)^-1 = {u_inv}");
    println!("(1+y)·(1+y)^-1 = {}", u.mul(&u_inv).unwrap());

    let l = u.log().unwrap();
    println!("log(1+y) = {l}");
    println!("exp(log(1+y)) == 1+y: {}", l.exp().unwrap() == u);

    let form = extract_monomial_unit(&f).unwrap();
    println!("f = z^{:?} · ({})", form.exponent, form.unit);

    let d = x.dlog_coefficients();
    println!("dlog coefficients of x at the point: {:?}", d.at_point());
    let r = f.restrict_to_orbit();
    println!("f restricted to the orbit: {r}");
}
