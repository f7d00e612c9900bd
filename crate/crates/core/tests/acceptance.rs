//! Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use toroidal::cli::{catalog, report_to_string, run, Command, RunOptions};
use toroidal::field::{RootOutcome, Scalar};
use toroidal::intlat::{det_and_inverse, hnf, snf, IntMatrix};
use toroidal::log_smooth::{is_log_smooth, MorphismGerm};
use toroidal::monomialize::{
    certify_counterexample, counterexample_germ, hensel_units, lemma3_etale_check, monomialize_pipeline, Mode,
    MonomializeError,
};
use toroidal::scenario::{parse_scenario, Scenario};
use toroidal::series::{LocalModel, TruncatedSeries};
use toroidal::toric::{AffineMonoid, ToricPoint};

const N: i64 = 12;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_scenarios() -> Vec<Scenario> {
    catalog::names()
        .iter()
        .map(|n| parse_scenario(&catalog::get(n).unwrap()).unwrap())
        .collect()
}

/// λ_j⁻¹·y_j − Π_i ε_i^{E_ji} · z^{E_j} recomputed from scratch.
fn diagram_residual(f: &MorphismGerm, e: &IntMatrix, lambda: &[Scalar], eps: &[TruncatedSeries]) -> Option<usize> {
    let model = f.source();
    for (j, y) in f.pullbacks().iter().enumerate() {
        let row = e.row_i64(j);
        let mut rhs = TruncatedSeries::one(model);
        for (i, ei) in eps.iter().enumerate() {
            rhs = rhs.mul(&ei.pow(row[i]).unwrap()).unwrap();
        }
        rhs = rhs.mul(&TruncatedSeries::z_power(model, &row).unwrap()).unwrap();
        let l = lambda[j].embed_into(model.field()).unwrap().inv().unwrap();
        if !y.scale(&l).sub(&rhs).unwrap().is_zero() {
            return Some(j);
        }
    }
    None
}

fn diagram_commutes() -> Check {
    let start = Instant::now();
    let mut catalog_ok = 0;
    for s in catalog_scenarios() {
        let s = s.with_truncation(N).map_err(|e| e.to_string())?;
        let expects_error = s.doc().assertions.as_ref().is_some_and(|a| a.error.is_some());
        match monomialize_pipeline(s.germ(), s.mode()) {
            Ok(res) => {
                ensure(res.verification.all_pass(), || format!("{}: {:?}", s.name(), res.verification.first_failure()))?;
                ensure(res.verification.weight_checked == N, || format!("{}: weight {}", s.name(), res.verification.weight_checked))?;
                catalog_ok += 1;
            }
            Err(e) => ensure(expects_error, || format!("{}: unexpected {e}", s.name()))?,
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut fuzzed = 0;
    while fuzzed < 100 {
        let f = match fuzzed % 4 {
            0 => random_monomial_germ(&mut rng, if fuzzed % 8 == 0 { 3 } else { 1 }, N),
            1 | 2 => random_monomial_germ(&mut rng, 2, N),
            _ => random_unit_direction_germ(&mut rng, N),
        };
        if !is_log_smooth(&f).unwrap().smooth {
            continue;
        }
        let res = monomialize_pipeline(&f, Mode::RationalResidue).map_err(|e| format!("fuzz {fuzzed}: {e}"))?;
        ensure(res.verification.all_pass(), || format!("fuzz {fuzzed}: {:?}", res.verification.first_failure()))?;
        let bad = diagram_residual(&res.germ, &res.e, &res.lambda, &res.epsilon);
        ensure(bad.is_none(), || format!("fuzz {fuzzed}: independent residual nonzero in row {bad:?}"))?;
        fuzzed += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{catalog_ok} catalog results and {fuzzed} fuzzed germs exact at weight {N}, {t:.2?}"))
}

fn hensel_oracle() -> Check {
    let model = origin_model(2, N);
    let w1 = TruncatedSeries::from_terms(&model, [(vec![0, 0], rat(1, 1)), (vec![1, 0], rat(1, 1))]).unwrap();
    let w2 = TruncatedSeries::from_terms(&model, [(vec![0, 0], rat(1, 1)), (vec![0, 1], rat(1, 2))]).unwrap();
    let eps = hensel_units(&IntMatrix::from_rows(&[[1, 1], [1, 2]]), &[w1, w2]).map_err(|e| e.to_string())?;

    // dense expansions: (1+z₁)²·Σ(−z₂/2)^j and (1+z₂/2)·Σ(−z₁)^i
    let binom2 = [1, 2, 1];
    let mut nonzero = [0usize; 2];
    for i in 0..=N {
        for j in 0..=N - i {
            let e1 = if i <= 2 { br(binom2[i as usize], 1) * num_traits::pow(br(-1, 2), j as usize) } else { BigRational::zero() };
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let e2 = match j {
                0 => br(sign, 1),
                1 => br(sign, 2),
                _ => BigRational::zero(),
            };
            for (k, expected) in [e1, e2].into_iter().enumerate() {
                let got = as_rational(&eps[k].coeff(&[i, j]));
                ensure(got == expected, || format!("ε{} at z^({i},{j}): {got} vs {expected}", k + 1))?;
                if !expected.is_zero() {
                    nonzero[k] += 1;
                }
            }
        }
    }
    ensure(eps[0].len() == nonzero[0] && eps[1].len() == nonzero[1], || "extra terms beyond the oracle".into())?;

    // (1+s)^{1/2}
    let p = ToricPoint::new(AffineMonoid::orthant(1), vec![0], vec![rat(1, 1)], q()).unwrap();
    let line = LocalModel::new(p, None, N).unwrap();
    let w = TruncatedSeries::one(&line).add(&TruncatedSeries::s_var(&line, 0)).unwrap();
    let root = hensel_units(&IntMatrix::from_rows(&[[2]]), &[w]).map_err(|e| e.to_string())?;
    let mut c = BigRational::one();
    for k in 0..=N {
        let got = as_rational(&root[0].coeff(&[k]));
        ensure(got == c, || format!("binomial coefficient {k}: {got} vs {c}"))?;
        c = c * (br(1, 2) - br(k, 1)) / br(k + 1, 1);
    }
    ensure(root[0].len() == (N + 1) as usize, || "extra terms in the square root".into())?;
    Ok(format!("closed forms match through weight {N}"))
}

fn sharp_coefficients_vanish() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let cone = quadric_cone();
    let cone_model = LocalModel::new(ToricPoint::fixed_point(cone.clone(), q()).unwrap(), None, 8).unwrap();
    let space = origin_model(3, 8);
    let mut cases = 0;
    for case in 0..200 {
        let (model, gens) = if case % 2 == 0 {
            (&cone_model, cone.generators().to_vec())
        } else {
            (&space, AffineMonoid::orthant(3).generators().to_vec())
        };
        let mut y = TruncatedSeries::zero(model);
        for _ in 0..rng.gen_range(1..=4) {
            let mut term = TruncatedSeries::constant(model, random_rat(&mut rng));
            for _ in 0..rng.gen_range(0..=3) {
                let g = &gens[rng.gen_range(0..gens.len())];
                term = term.mul(&TruncatedSeries::character(model, g).unwrap()).unwrap();
            }
            y = y.add(&term).unwrap();
        }
        let a = y.dlog_coefficients().at_point();
        for (i, ai) in a.iter().enumerate().take(model.r()) {
            ensure(ai.is_zero(), || format!("case {case}: a_{} = {ai} for y = {y}", i + 1))?;
        }
        cases += 1;
    }
    Ok(format!("{cases} elements, zero failures"))
}

fn residue_field_obstruction() -> Check {
    let start = Instant::now();
    let v = is_log_smooth(&counterexample_germ(N).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(v.smooth, || "germ not log smooth".into())?;
    let j = &v.jacobian.at_point;
    ensure(j.len() == 1 && j[0].len() == 1 && j[0][0] == Scalar::from_int(j[0][0].field(), 4), || format!("J(a) = {j:?}"))?;

    let cert = certify_counterexample(N).map_err(|e| e.to_string())?;
    let quad: Vec<i64> = cert.obstruction.reduced_quadratic.iter().map(|c| i64::try_from(c).unwrap()).collect();
    ensure(quad == [1, -6, 1], || format!("reduced quadratic {quad:?}"))?;
    // rational roots of t² − 6t + 1 must be ±1; neither is a root
    for t in [1i64, -1] {
        ensure(t * t - 6 * t + 1 != 0, || format!("{t} is a root"))?;
    }
    ensure(cert.axis_cases_excluded && cert.obstruction.certified, || "obstruction not certified".into())?;
    ensure(cert.fourth_root_of_i == RootOutcome::NoRoot { certified: true }, || format!("{:?}", cert.fourth_root_of_i))?;
    ensure(
        matches!(cert.rational_mode, Err(MonomializeError::ResidueFieldHypothesisViolated { .. })),
        || format!("rational mode: {:?}", cert.rational_mode),
    )?;
    ensure(
        matches!(cert.root_mode, Err(MonomializeError::RootExtractionFailed { .. })),
        || format!("root mode: {:?}", cert.root_mode),
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!("J(a) = [4], both modes refused, {t:.2?}"))
}

fn big_det(a: &IntMatrix) -> BigRational {
    let rows: Vec<Vec<BigRational>> = (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    permutation_det(&rows)
}

fn integer_certificates() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut inverses = 0;
    for case in 0..500 {
        let (r, c) = if case % 3 == 0 {
            let n = rng.gen_range(1..=6);
            (n, n)
        } else {
            (rng.gen_range(1..=6), rng.gen_range(1..=6))
        };
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let a = IntMatrix::from_rows(&rows);

        let h = hnf(&a);
        ensure(h.u.mul(&a) == h.h, || format!("case {case}: u·a ≠ h"))?;
        ensure(big_det(&h.u).abs().is_one(), || format!("case {case}: hnf transform not unimodular"))?;

        let s = snf(&a);
        ensure(s.u.mul(&a).mul(&s.v) == s.d, || format!("case {case}: u·a·v ≠ d"))?;
        ensure(big_det(&s.u).abs().is_one() && big_det(&s.v).abs().is_one(), || format!("case {case}: snf transforms"))?;
        let d = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                ensure(i == j || s.d.row(i)[j].is_zero(), || format!("case {case}: d not diagonal"))?;
            }
        }
        for w in d.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(ok && !w[0].is_negative(), || format!("case {case}: divisibility chain {d:?}"))?;
        }

        if r == c {
            let (det, inv) = det_and_inverse(&a).map_err(|e| e.to_string())?;
            ensure(BigRational::from_integer(det.clone()) == big_det(&a), || format!("case {case}: det"))?;
            if let Some(inv) = inv {
                for i in 0..r {
                    for j in 0..r {
                        let mut acc = BigRational::zero();
                        for k in 0..r {
                            acc += BigRational::from_integer(a.row(i)[k].clone()) * &inv[k][j];
                        }
                        ensure(acc == if i == j { BigRational::one() } else { BigRational::zero() }, || {
                            format!("case {case}: a·inv ≠ I")
                        })?;
                    }
                }
                inverses += 1;
            } else {
                ensure(det.is_zero(), || format!("case {case}: no inverse for det {det}"))?;
            }
        }
    }
    Ok(format!("500 matrices, {inverses} inverses checked"))
}

fn etale_charts() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let (mut etale, mut not_etale) = (0, 0);
    let mut case = 0;
    while case < 50 {
        let m = rng.gen_range(2..=3);
        let model = random_orthant_model(&mut rng, m, 5);
        let r = model.r();
        if r == m {
            continue;
        }
        let k = m - r;
        // linear s-part of the unit-direction pullbacks, sometimes degenerate
        let mut lin: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if rng.gen_bool(0.3) {
            lin[k - 1] = lin[0].iter().map(|x| 2 * x).collect();
        }
        let mut psi = Vec::with_capacity(m);
        for i in 0..r {
            let mut e = vec![0; m];
            e[i] = 1;
            let unit = random_unit_nonzero(&mut rng, &model, 3);
            psi.push(TruncatedSeries::z_power(&model, &e).unwrap().mul(&unit).unwrap());
        }
        for row in &lin {
            let c = random_nonzero_rat(&mut rng);
            let mut terms = vec![(vec![0; m], c)];
            for (j, &l) in row.iter().enumerate() {
                let mut key = vec![0; m];
                key[r + j] = 1;
                terms.push((key, rat(l, 1)));
            }
            // higher-order and sharp terms do not affect the verdict
            for _ in 0..3 {
                let key = random_key(&mut rng, m, 3);
                if key.iter().sum::<i64>() >= 2 || key[..r].iter().any(|&x| x > 0) {
                    terms.push((key, random_rat(&mut rng)));
                }
            }
            psi.push(TruncatedSeries::from_terms(&model, terms).unwrap());
        }

        // ∂ψ_i/∂z_j(x) = (s_j-coefficient of ψ_i) / z_j(x)
        let jac: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut key = vec![0; m];
                        key[r + j] = 1;
                        as_rational(&psi[r + i].coeff(&key)) / as_rational(&model.unit_values()[j])
                    })
                    .collect()
            })
            .collect();
        let oracle = permutation_det(&jac);

        match lemma3_etale_check(&model, &psi) {
            Ok(v) => {
                ensure(v.block_zero, || format!("case {case}: lower-left block nonzero"))?;
                ensure(v.etale == !oracle.is_zero(), || format!("case {case}: verdict {} vs det {oracle}", v.etale))?;
                ensure(as_rational(&v.rescaled_det) == oracle, || {
                    format!("case {case}: rescaled det {} vs {oracle}", v.rescaled_det)
                })?;
                if v.etale {
                    etale += 1;
                } else {
                    not_etale += 1;
                }
            }
            Err(MonomializeError::NotLogSmooth { .. }) => {
                ensure(oracle.is_zero(), || format!("case {case}: refused but det {oracle}"))?;
                not_etale += 1;
            }
            Err(e) => return Err(format!("case {case}: {e}")),
        }
        case += 1;
    }
    Ok(format!("{etale} étale, {not_etale} not étale, all agree with the chart determinant"))
}

fn catalog_reports() -> String {
    let opts = RunOptions::default();
    let mut out = String::new();
    for s in catalog_scenarios() {
        for c in [Command::Check, Command::Monomialize, Command::Verify] {
            out.push_str(&report_to_string(&run(c, Some(&s), &opts).report));
        }
    }
    out.push_str(&report_to_string(&run(Command::Counterexample, None, &opts).report));
    out
}

fn deterministic_reports() -> Check {
    let a = catalog_reports();
    let b = catalog_reports();
    ensure(a == b, || "reports differ between runs".into())?;
    ensure(!a.contains("elapsed"), || "timing leaked into reports".into())?;
    Ok(format!("{} bytes identical across two runs", a.len()))
}

fn main() {
    std::env::remove_var(catalog::ENV_VAR);
    let criteria: [(&str, fn() -> Check); 7] = [
        ("diagram commutes on catalog and fuzzed germs", diagram_commutes),
        ("unit solver matches closed forms", hensel_oracle),
        ("sharp log coefficients vanish at the point", sharp_coefficients_vanish),
        ("residue field obstruction certified", residue_field_obstruction),
        ("integer normal form certificates", integer_certificates),
        ("chart étaleness matches the chart determinant", etale_charts),
        ("catalog reports are deterministic", deterministic_reports),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
