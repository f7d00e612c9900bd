//! Affine monoids, points with a face and nonzero character values, and
//! regularity of lattice maps.
use toroidal::field::{FieldSpec, Scalar};
use toroidal::intlat::IntMatrix;
use toroidal::toric::{is_regular_toric_morphism, AffineMonoid, ToricMorphismData, ToricPoint};

fn main() {
    // The quadric cone: generated by (2,0), (1,1), (0,2) inside its saturated lattice.
    let cone = AffineMonoid::build(
        2,
        vec![vec![2, 0], vec![1, 1], vec![0, 2]],
        vec!["u".into(), "v".into(), "w".into()],
        None,
        true,
    )
    .unwrap();
    println!("grading {:?}, lattice index {}", cone.grading(), cone.lattice_index());
    for v in [[3, 1], [2, 1], [4, 2]] {
        println!("{v:?} in cone: {}", cone.contains(&v).unwrap());
    }
    println!("elements up to weight 4: {:?}", cone.elements_up_to(4).unwrap());

    let q = FieldSpec::rationals();
    let p = ToricPoint::fixed_point(cone.clone(), q.clone()).unwrap();
    println!("fixed point: r = {}, closed orbit {}", p.r(), p.in_closed_orbit());
    for v in [[0, 0], [1, 1]] {
        println!("  χ^{v:?}(x) = {:?}", p.eval_character(&v));
    }

    let plane = AffineMonoid::orthant(2);
    let x = ToricPoint::new(plane.clone(), vec![1], vec![Scalar::from_int(&q, 3)], q).unwrap();
    println!("point on the y-axis orbit: r = {}, sharp generators {:?}", x.r(), x.sharp_monoid().generators());
    println!("  χ^(0,2)(x) = {:?}", x.eval_character(&[0, 2]));
    println!("  χ^(1,0)(x) = {:?}", x.eval_character(&[1, 0]));

    // A lattice map is regular when it sends the target monoid into the source monoid.
    let g = ToricMorphismData::new(IntMatrix::from_rows(&[[1, 1], [0, 1]]));
    println!("(x,y) ↦ (xy, y): {:?}", is_regular_toric_morphism(&g, &plane, &plane).unwrap());
    let h = ToricMorphismData::new(IntMatrix::from_rows(&[[1, -1], [0, 1]]));
    println!("(x,y) ↦ (x/y, y): {:?}", is_regular_toric_morphism(&h, &plane, &plane).unwrap());
}
