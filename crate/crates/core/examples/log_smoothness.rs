//! The log Jacobian criterion: smooth, non-smooth, and a germ that needs
//! extra target characters before its Jacobian is square.
use toroidal::field::{FieldSpec, Scalar};
use toroidal::log_smooth::{augment_to_equal_dim, is_log_smooth, MorphismGerm};
use toroidal::series::{LocalModel, TruncatedSeries};
use toroidal::toric::{AffineMonoid, ToricPoint};

fn series(model: &std::sync::Arc<LocalModel>, terms: &[(&[i64], i64)]) -> TruncatedSeries {
    let q = model.field().clone();
    TruncatedSeries::from_terms(model, terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_int(&q, *c)))).unwrap()
}

fn show(name: &str, f: &MorphismGerm) {
    let v = is_log_smooth(f).unwrap();
    println!("{name}: smooth {}, rank {} of {}, J(x) = {:?}", v.smooth, v.rank, v.n, v.jacobian.at_point);
}

fn main() {
    let q = FieldSpec::rationals();
    let origin = ToricPoint::fixed_point(AffineMonoid::orthant(2), q.clone()).unwrap();
    let plane = LocalModel::new(origin, None, 8).unwrap();

    // (x, y) ↦ (xy(1+x), 2xy²(1+y/2))
    let y1 = series(&plane, &[(&[1, 1], 1), (&[2, 1], 1)]);
    let y2 = series(&plane, &[(&[1, 2], 2), (&[1, 3], 1)]);
    let f = MorphismGerm::new(plane.clone(), AffineMonoid::orthant(2), vec![y1, y2], q.clone()).unwrap();
    show("plane pair", &f);

    // (x, y) ↦ (xy, x²y²) has proportional exponents.
    let g1 = series(&plane, &[(&[1, 1], 1)]);
    let g2 = series(&plane, &[(&[2, 2], 1)]);
    let g = MorphismGerm::new(plane.clone(), AffineMonoid::orthant(2), vec![g1, g2], q.clone()).unwrap();
    show("square map", &g);

    // (x, y) ↦ xy(1+x) into the line: one row for two columns.
    let h1 = series(&plane, &[(&[1, 1], 1), (&[2, 1], 1)]);
    let h = MorphismGerm::new(plane, AffineMonoid::orthant(1), vec![h1], q).unwrap();
    show("to the line", &h);
    let aug = augment_to_equal_dim(&h).unwrap();
    println!("appended characters {:?}", aug.appended);
    show("augmented", &aug.germ);
}
