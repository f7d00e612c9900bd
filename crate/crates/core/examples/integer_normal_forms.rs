//! Hermite and Smith normal forms, exact inverses and lattice completion.
use toroidal::intlat::{complete_columns, det_and_inverse, determinant, hnf, snf, split_basis, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    println!("A =\n{a}");

    let h = hnf(&a);
    println!("HNF =\n{}pivots {:?}, U·A == H: {}", h.h, h.pivots, h.u.mul(&a) == h.h);

    let s = snf(&a);
    println!("invariant factors {:?}", s.diagonal());
    println!("U·A·V == D: {}", s.u.mul(&a).mul(&s.v) == s.d);

    let (det, inv) = det_and_inverse(&a).unwrap();
    println!("det {det}");
    if let Some(inv) = inv {
        for row in inv {
            println!("  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("  "));
        }
    }

    // Extend columns to a nonsingular square matrix with standard basis vectors.
    let first = IntMatrix::from_columns(3, &[[2, 3, 5]]);
    let full = complete_columns(&first).unwrap();
    println!("completion of (2,3,5):\n{full}det {}", determinant(&full).unwrap());

    // Splitting needs a saturated sublattice.
    let coarse = IntMatrix::from_columns(3, &[[2, 0, 0], [1, 1, 0]]);
    println!("span of (2,0,0), (1,1,0): {:?}", split_basis(&coarse).err());
    let gens = IntMatrix::from_columns(3, &[[1, 0, 0], [1, 1, 0]]);
    let split = split_basis(&gens).unwrap();
    println!("split with r = {} of rank {}:\n{}", split.r(), split.rank(), split.full_basis());
    println!("(3, 1, 4) in basis coordinates: {:?}", split.to_basis_coords(&[3, 1, 4]));
}
