//! Put a log smooth germ into monomial form: exponent matrix E, constants λ,
//! the translation t, units ε with λ⁻¹·y = ε^E·z^E, and the toric map g.
use toroidal::field::{FieldSpec, Scalar};
use toroidal::log_smooth::MorphismGerm;
use toroidal::monomialize::{monomialize_pipeline, verify_diagram, Mode};
use toroidal::series::{LocalModel, TruncatedSeries};
use toroidal::toric::{AffineMonoid, ToricPoint};

fn main() {
    let q = FieldSpec::rationals();
    let origin = ToricPoint::fixed_point(AffineMonoid::orthant(2), q.clone()).unwrap();
    let plane = LocalModel::new(origin, None, 8).unwrap();
    let term = |e: &[i64], c: i64| (e.to_vec(), Scalar::from_int(&q, c));
    let y1 = TruncatedSeries::from_terms(&plane, [term(&[1, 1], 1), term(&[2, 1], 1)]).unwrap();
    let y2 = TruncatedSeries::from_terms(&plane, [term(&[1, 2], 2), term(&[1, 3], 1)]).unwrap();
    let f = MorphismGerm::new(plane, AffineMonoid::orthant(2), vec![y1, y2], q.clone()).unwrap();

    for mode in [Mode::RationalResidue, Mode::RootCapable] {
        let res = monomialize_pipeline(&f, mode).unwrap();
        println!("== {mode:?}");
        println!("E =\n{}", res.e);
        println!("λ = {:?}", res.lambda);
        println!("t = {:?}", res.t.values());
        for (j, eps) in res.epsilon.iter().enumerate() {
            println!("ε{} = {eps}", j + 1);
        }
        println!("g lattice map =\n{}", res.g.lattice_map);
        let report = verify_diagram(&f, &res).unwrap();
        println!("diagram commutes through weight {}: {}", report.weight_checked, report.all_pass());
    }
}
