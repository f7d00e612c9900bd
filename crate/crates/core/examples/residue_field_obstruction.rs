//! A log smooth germ over ℚ whose residue field is ℚ(i) and which admits no
//! monomialisation: the needed constant is not a rational number and i has
//! no fourth root in ℚ(i).
use toroidal::monomialize::certify_counterexample;

fn main() {
    let cert = certify_counterexample(12).unwrap();
    println!("J(x) = {:?}", cert.jacobian_at_point);
    println!("log smooth: {}", cert.smooth);
    println!("axis cases excluded: {}", cert.axis_cases_excluded);
    let o = &cert.obstruction;
    println!("real part of (a+bi)^4 / b^4: {:?}", o.real_part);
    println!("imaginary part: {:?}", o.imaginary_part);
    println!("reduced quadratic: {:?}", o.reduced_quadratic);
    println!("rational root candidates: {:?}, certified {}", o.candidates, o.certified);
    println!("fourth root of i: {:?}", cert.fourth_root_of_i);
    println!("rational residue mode: {:?}", cert.rational_mode);
    println!("root capable mode: {:?}", cert.root_mode);
    println!("all checks pass: {}", cert.all_pass());
}
