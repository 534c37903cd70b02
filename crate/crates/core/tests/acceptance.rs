//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact; the only tolerances are the runtime
//! limits below.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tff_core::characters::{character_value, nilradical_det_factor};
use tff_core::lefschetz::{
    classify_roots, evaluate, infinite_weight_value, lefschetz_number, validate_dataset, with_finite_proxy,
    Evaluator, Formula, NuKind, NuSpec, Severity, TorusFactor,
};
use tff_core::nilcoh::{i_nu_of_weight, kostant_decomposition, quadrant_membership, quadrant_membership_by_cones};
use tff_core::oracle::ce::{run_ce_check, CoefficientModule, MatrixModel, NilpotentLieModel};
use tff_core::oracle::forms::{count_elliptic_classes, elliptic_traces, reduced_forms};
use tff_core::rational::parse_big;
use tff_core::sampling::{self, DatasetShape};
use tff_core::{
    CartanType, CycValue, FixedPointDataset, RootDatum, Subset, ToralElement, Weight, WeightProfile, WeylGroup, Q,
};

const LIMIT_QUADRANTS: Duration = Duration::from_secs(1);
const LIMIT_KOSTANT_ORACLE: Duration = Duration::from_secs(60);
const LIMIT_CLASS_COUNTS: Duration = Duration::from_secs(10);

const TORUS_SAMPLES: usize = 20;
const QUADRANT_SAMPLES: usize = 1000;
const RANDOM_DATASETS: u64 = 50;
const INTERIOR_DATASETS: u64 = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn group(t: CartanType, n: usize) -> WeylGroup {
    WeylGroup::new(RootDatum::new(t, n).expect("valid root datum")).expect("small Weyl group")
}

fn multiset<I: IntoIterator<Item = Subset>>(it: I) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for s in it {
        *out.entry(s.to_string()).or_insert(0) += 1;
    }
    out
}

fn expected(entries: &[(&str, usize)]) -> BTreeMap<String, usize> {
    entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `(group, levi, lambda)` configurations of the Kostant / cochain matrix.
fn kostant_matrix() -> Vec<(CartanType, usize, Subset, Vec<i64>)> {
    let mut out = Vec::new();
    for n in 0..=6 {
        out.push((CartanType::A, 1, Subset::EMPTY, vec![n]));
    }
    for levi in [Subset::EMPTY, Subset::from_indices([0]), Subset::from_indices([1])] {
        for lambda in [vec![0, 0], vec![1, 1]] {
            out.push((CartanType::A, 2, levi, lambda));
        }
    }
    for levi in [Subset::EMPTY, Subset::from_indices([0]), Subset::from_indices([1])] {
        out.push((CartanType::C, 2, levi, vec![0, 0]));
    }
    out.push((CartanType::A, 3, Subset::EMPTY, vec![0, 0, 0]));
    out
}

fn criterion_1() -> Outcome {
    let g = group(CartanType::C, 2);
    let rd = g.root_datum();
    let nu = WeightProfile::Finite(-rd.rho());
    let mods = e(kostant_decomposition(&g, Subset::EMPTY, &Weight::zero(2), &nu))?;
    let got = multiset(mods.iter().map(|m| m.quadrant));
    let want = expected(&[("{}", 3), ("{2}", 1), ("{1,2}", 3), ("{1}", 1)]);
    check(got == want && mods.len() == 8, || format!("quadrants {got:?}, expected {want:?}"))?;
    Ok(format!("{got:?}"))
}

fn criterion_2() -> Outcome {
    let g = group(CartanType::C, 2);
    let rd = g.root_datum();
    // regular element of the dominant chamber: alpha = 4/3, beta = 9/4
    let a = e(ToralElement::new(
        vec![e(parse_big("2"))?, e(parse_big("3"))?],
        vec![Q::from_integer(0); 2],
    ))?;
    let mut plus = Vec::new();
    for w in g.elements() {
        let wa = e(a.weyl_act(rd, w))?;
        let factor = TorusFactor::new((0..2).map(|i| (i, wa.simple_root_magnitude(rd, i).unwrap())));
        let c = e(classify_roots(rd, Subset::EMPTY, &factor))?;
        check(c.neutral.is_empty(), || format!("chamber of {w} is not regular"))?;
        plus.push(c.plus);
    }
    let got = multiset(plus);
    let want = expected(&[("{}", 1), ("{2}", 3), ("{1,2}", 1), ("{1}", 3)]);
    check(got == want, || format!("Delta_P^+ multiset {got:?}, expected {want:?}"))?;
    Ok(format!("{got:?}"))
}

fn criterion_3() -> Outcome {
    let configs = kostant_matrix();
    for (t, n, levi, lambda) in &configs {
        let g = group(*t, *n);
        let (_, cmp) = e(run_ce_check(&g, *levi, lambda))?;
        check(cmp.matches, || format!("{t}{n} I={levi} lambda={lambda:?}: {cmp}"))?;
    }
    Ok(format!("{} configurations match", configs.len()))
}

fn criterion_4() -> Outcome {
    let configs = kostant_matrix();
    let mut rng = sampling::rng(sampling::DEFAULT_SEED);
    let mut checked = 0;
    for (t, n, levi, lambda) in &configs {
        let g = group(*t, *n);
        let rd = g.root_datum();
        let lambda = Weight::fundamental_int(lambda);
        let reps = e(g.kostant_representatives(*levi))?.representatives;
        for _ in 0..TORUS_SAMPLES {
            let el = sampling::random_torus_element(&mut rng, *n, 6);
            let inv = el.inverse();
            let mut lhs = CycValue::zero();
            for w in &reps {
                let tr = e(character_value(rd, *levi, &w.dot(rd, &lambda), &inv))?;
                lhs += &if w.length() % 2 == 0 { tr } else { -tr };
            }
            let tr = e(character_value(rd, rd.all_simple(), &lambda, &inv))?;
            let rhs = &tr * &e(nilradical_det_factor(rd, *levi, &el))?;
            check(lhs == rhs, || format!("{t}{n} I={levi} at {el:?}: {lhs} vs {rhs}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} identities"))
}

fn criterion_5() -> Outcome {
    let mut rng = sampling::rng(sampling::DEFAULT_SEED + 5);
    let mut seen = std::collections::BTreeSet::new();
    let mut checked = 0;
    for (t, n, levi, _) in kostant_matrix() {
        if !seen.insert((t, n, levi)) {
            continue;
        }
        let rd = RootDatum::new(t, n).unwrap();
        let delta_p = rd.all_simple().difference(levi);
        for k in 0..QUADRANT_SAMPLES {
            let nu = if k % 2 == 0 {
                WeightProfile::Middle
            } else {
                WeightProfile::Finite(sampling::random_rational_weight(&mut rng, n))
            };
            let gamma = sampling::random_rational_weight(&mut rng, n);
            let direct = i_nu_of_weight(&rd, levi, &gamma, &nu);
            let mut hits = 0;
            for j in delta_p.subsets() {
                let member = e(quadrant_membership(&rd, levi, &gamma, &nu, j))?;
                let full = e(quadrant_membership_by_cones(&rd, levi, &gamma, &nu, j, false))?;
                let refined = e(quadrant_membership_by_cones(&rd, levi, &gamma, &nu, j, true))?;
                check(member == (j == direct) && full == member && refined == member, || {
                    format!("{t}{n} I={levi} gamma={gamma} nu={nu} J={j}: direct {direct}, member {member}, union {full}, refined {refined}")
                })?;
                hits += usize::from(member);
            }
            check(hits == 1, || format!("{t}{n} I={levi} gamma={gamma}: in {hits} quadrants"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} weights"))
}

fn fixtures() -> Vec<(String, FixedPointDataset)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("examples directory")
        .map(|d| d.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let ds = FixedPointDataset::from_path(&p).unwrap_or_else(|err| panic!("{name}: {err}"));
            (name, ds)
        })
        .collect()
}

fn infinite_consistency(name: &str, ds: &FixedPointDataset) -> Result<(), String> {
    let closed = e(infinite_weight_value(ds))?;
    let symbolic = e(lefschetz_number(ds))?;
    let proxy = e(lefschetz_number(&e(with_finite_proxy(ds))?))?;
    check(closed == symbolic && closed == proxy, || {
        format!("{name}: closed form {closed}, symbolic {symbolic}, proxy {proxy}")
    })
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (name, ds) in fixtures() {
        if validate_dataset(&ds).iter().any(|d| d.severity == Severity::Error) {
            continue;
        }
        for kind in [NuKind::PlusInfinity, NuKind::MinusInfinity] {
            let mut ds = ds.clone();
            ds.nu = NuSpec { kind, coords: None };
            infinite_consistency(&format!("{name} ({kind:?})"), &ds)?;
            count += 1;
        }
    }
    for seed in 0..RANDOM_DATASETS {
        let nu = if seed % 2 == 0 { WeightProfile::PlusInfinity } else { WeightProfile::MinusInfinity };
        let shape = DatasetShape {
            nu: Some(nu),
            ..DatasetShape::default()
        };
        let ds = sampling::random_dataset(&mut sampling::rng(seed), &shape);
        infinite_consistency(&format!("random seed {seed}"), &ds)?;
        count += 1;
    }
    Ok(format!("{count} datasets"))
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for t in elliptic_traces(p) {
            let n = e(count_elliptic_classes(p, t))?;
            let forms = e(reduced_forms(t * t - 4 * p as i64))?.len();
            check(n == forms, || format!("p={p} t={t}: {n} classes vs {forms} forms"))?;
            check(p != 2 || n == 1, || format!("p=2 t={t}: {n} classes"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (p,t) pairs"))
}

/// Weights of the explicit module with highest weight `lambda`, root basis.
fn module_weights(rd: &RootDatum, lambda: &[i64]) -> Result<Vec<Weight>, String> {
    if rd.rank() == 1 {
        let n = lambda[0];
        return Ok((0..=n).map(|k| rd.to_root_basis(&Weight::fundamental_int(&[n - 2 * k]))).collect());
    }
    let model = e(MatrixModel::for_root_datum(rd))?;
    let nil = e(NilpotentLieModel::nilradical(rd, &model, Subset::EMPTY))?;
    Ok(e(CoefficientModule::for_highest_weight(rd, &model, &nil, lambda))?.weights)
}

fn criterion_8() -> Outcome {
    let mut classes = 0;
    for seed in 0..INTERIOR_DATASETS {
        let mut rng = sampling::rng(1000 + seed);
        let (rd, lambda) = match seed % 4 {
            0 => (RootDatum::new(CartanType::A, 1).unwrap(), vec![1 + (seed as i64 % 5)]),
            1 => (RootDatum::new(CartanType::A, 1).unwrap(), vec![0]),
            2 => (RootDatum::new(CartanType::A, 2).unwrap(), vec![1, 0]),
            _ => (RootDatum::new(CartanType::A, 2).unwrap(), vec![1, 1]),
        };
        let ds = sampling::random_interior_dataset(&mut rng, &rd, &lambda, 3);
        let weights = module_weights(&rd, &lambda)?;
        let ev = e(Evaluator::for_dataset(&ds))?;
        let stratum = &ds.strata[0];
        let coset = &stratum.double_cosets[0];
        let mut expected_total = CycValue::zero();
        for class in &coset.classes {
            let el = e(class.torus_rep.to_element())?;
            let mut trace = CycValue::zero();
            for mu in &weights {
                trace += &e(el.inverse().evaluate(&rd, mu))?;
            }
            let term = trace.scale_int(class.chi_c);
            let got = e(ev.local_contribution(stratum.levi(), coset, class, Formula::Main))?;
            check(got == term, || format!("seed {seed} class {}: {got} vs {term}", class.label))?;
            expected_total += &term;
            classes += 1;
        }
        let total = e(evaluate(&ds, Formula::Main))?.total;
        check(total == expected_total, || format!("seed {seed}: {total} vs {expected_total}"))?;
    }
    Ok(format!("{INTERIOR_DATASETS} datasets, {classes} classes"))
}

fn criterion_9() -> Outcome {
    let by_name: BTreeMap<String, FixedPointDataset> = fixtures().into_iter().collect();
    let diags = |name: &str| validate_dataset(&by_name[name]);

    let d = diags("lint_consistent.json");
    check(d.is_empty(), || format!("consistent fixture: {d:?}"))?;

    let d = diags("lint_torus_mismatch.json");
    check(
        d.len() == 1
            && d[0].severity == Severity::Error
            && d[0].path == "strata[0].double_cosets[0].classes[0].torus_rep"
            && d[0].message.contains("torus factor mismatch"),
        || format!("mismatch fixture: {d:?}"),
    )?;

    let d = diags("lint_nonelliptic_levi.json");
    check(
        d.len() == 1 && d[0].severity == Severity::Warning && d[0].path == "strata[0]",
        || format!("non-elliptic Levi fixture: {d:?}"),
    )?;
    Ok("error, none, warning".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Sp4 middle-weight quadrants", criterion_1, Some(LIMIT_QUADRANTS)),
        ("Sp4 chamber classification", criterion_2, None),
        ("Kostant vs cochain oracle", criterion_3, Some(LIMIT_KOSTANT_ORACLE)),
        ("Euler factorization", criterion_4, None),
        ("quadrant laws", criterion_5, None),
        ("infinite-weight consistency", criterion_6, None),
        ("elliptic class counts", criterion_7, Some(LIMIT_CLASS_COUNTS)),
        ("interior-stratum specialization", criterion_8, None),
        ("dataset lints", criterion_9, None),
    ];
    let mut failures = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let limit = limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} ({elapsed:.2?}{limit}, exact)", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL {name}: {why} ({elapsed:.2?}{limit}, exact)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
