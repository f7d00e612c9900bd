//! Exact arithmetic in ℚ and ℚ(i), including root extraction.
use toroidal::field::{determinant, rank_profile, FieldSpec, RootOutcome, Scalar};

fn main() {
    let q = FieldSpec::rationals();
    let a = Scalar::from_ratio(&q, 81, 16);
    for n in [2, 4, 3] {
        match a.nth_root(n).unwrap() {
            RootOutcome::Root(r) => println!("root of degree {n} of {a} = {r}"),
            RootOutcome::NoRoot { certified } => println!("{a} has no root of degree {n} in ℚ (certified: {certified})"),
        }
    }

    let k = FieldSpec::gaussian();
    let i = Scalar::generator(&k);
    let z = &(&Scalar::one(&k) + &i) * &Scalar::from_int(&k, 3);
    println!("in {k}: (3+3i)^-1 = {}", z.inv().unwrap());
    println!("norm of 3+3i = {}", z.norm());
    println!("(1+i)^2 = {}", (&Scalar::one(&k) + &i).pow(2).unwrap());
    match i.nth_root(4).unwrap() {
        RootOutcome::Root(r) => println!("fourth root of i: {r}"),
        RootOutcome::NoRoot { certified } => println!("i has no fourth root in {k} (certified: {certified})"),
    }

    let rows: Vec<Vec<Scalar>> = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| Scalar::from_int(&q, x)).collect())
        .collect();
    let (rank, pivots) = rank_profile(&rows);
    println!("rank {rank}, pivot columns {pivots:?}, det {}", determinant(&rows, &q));
}
