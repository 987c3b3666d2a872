//! Acceptance suite: one PASS/FAIL line per criterion, exact rational
//! comparisons throughout. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use icdual_core::coding::gf256::{determinant, Gf256};
use icdual_core::coding::mds_rows;
use icdual_core::generate::{all_small_uniprior, random_planar, random_unicast, random_uniprior};
use icdual_core::lp::{int, ratio, verify_duality, Rational};
use icdual_core::pipeline::{build_schedule, cliques, cycles, solve};
use icdual_core::programs::*;
use icdual_core::verify::{
    bounds_report, check_planar_optimality, check_small_uniprior, check_uniprior_codes_agree, cyclic_values,
    program_values, simulate,
};
use icdual_core::{enumerate::enumerate_split_cycles, Instance, Limits, Mode, Strategy};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<String, String>;

fn suite(seed: u64, count: usize, gen: impl Fn(&mut ChaCha8Rng) -> Instance) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen(&mut rng)).collect()
}

fn random_suite() -> Vec<Instance> {
    suite(3, 500, |r| random_unicast(r, 5, 6, 3))
}

fn planar_suite() -> Vec<Instance> {
    suite(4, 200, |r| random_planar(r, 5, 6, 3))
}

fn uniprior_suite() -> Vec<Instance> {
    suite(7, 200, |r| random_uniprior(r, 5, 6, 3))
}

/// Runs `f` on every instance in parallel; reports the first failures.
fn all_instances(insts: &[Instance], f: impl Fn(&Instance) -> Result<(), String> + Sync) -> Result<usize, String> {
    let failures: Vec<String> = insts
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| f(inst).err().map(|e| format!("#{i}: {e}")))
        .collect();
    if failures.is_empty() {
        Ok(insts.len())
    } else {
        Err(format!(
            "{} failures, first: {}",
            failures.len(),
            failures.iter().take(3).join("; ")
        ))
    }
}

fn count(insts: &[Instance], pred: impl Fn(&Instance) -> bool + Sync) -> usize {
    insts.par_iter().filter(|i| pred(i)).count()
}

fn cyclic(inst: &Instance) -> bool {
    !cycles(inst, &Limits::default()).unwrap_or_default().is_empty()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expect(label: &str, got: &Rational, want: &Rational) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label} = {got}, expected {want}"))
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!(
            "took {:.2} s, limit {:.0} s",
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        ))
    }
}

fn planar_example() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let inst = planar3();
    let [p1, p1r, p2r, p2] = cyclic_values(&inst, &limits).map_err(err)?;
    for (label, v) in [
        ("lower", &p1),
        ("lower relaxation", &p1r),
        ("cyclic relaxation", &p2r),
        ("cyclic", &p2),
    ] {
        expect(label, v, &int(2))?;
    }
    expect("deletion oracle", &int(brute_force_max_acyclic(&inst) as i64), &int(2))?;
    let report = bounds_report(&inst, &limits).map_err(err)?;
    if !(report.planar && report.optimal && report.verdict == "OPTIMAL (planar)") {
        return Err(format!("report verdict {:?}, planar {}", report.verdict, report.planar));
    }
    let built = build_schedule(&inst, Strategy::Cyclic, Mode::Scalar, &limits).map_err(err)?;
    if built.schedule.transmissions.len() != 2 {
        return Err(format!("{} transmissions", built.schedule.transmissions.len()));
    }
    let decode = simulate(&inst, &built.schedule, 1).map_err(err)?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "all values 2, planar optimal, 2 transmissions decoded by {} users",
        decode.users.len()
    ))
}

fn symmetric_example() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let inst = k33();
    let v = program_values(&inst, &limits).map_err(err)?;
    expect("lower", &v.max_acyclic, &int(1))?;
    expect("lower relaxation", &v.max_acyclic_lp, &ratio(3, 2))?;
    expect("cyclic relaxation", &v.cyclic_code_lp, &ratio(3, 2))?;
    expect("cyclic", &v.cyclic_code, &int(2))?;
    expect("clique", &v.clique_code, &int(1))?;
    expect("clique relaxation", &v.clique_code_lp, &int(1))?;
    let cyc = cycles(&inst, &limits).map_err(err)?;
    let vo1 = vertex_optimum(&max_acyclic(&inst, &cyc, true).map_err(err)?).ok_or("no vertex")?;
    let vo2 = vertex_optimum(&cyclic_code(&inst, &cyc, true).map_err(err)?).ok_or("no vertex")?;
    expect("vertex oracle lower relaxation", &vo1, &ratio(3, 2))?;
    expect("vertex oracle cyclic relaxation", &vo2, &ratio(3, 2))?;

    let clique = build_schedule(&inst, Strategy::PartialClique, Mode::Scalar, &limits).map_err(err)?;
    if clique.schedule.transmissions.len() != 1 {
        return Err(format!(
            "clique schedule has {} transmissions",
            clique.schedule.transmissions.len()
        ));
    }
    simulate(&inst, &clique.schedule, 2).map_err(err)?;
    let vector = build_schedule(&inst, Strategy::Cyclic, Mode::Vector, &limits).map_err(err)?;
    let s = &vector.schedule;
    if s.theta != 2 || s.transmissions.len() != 3 {
        return Err(format!(
            "vector cyclic theta {} with {} transmissions",
            s.theta,
            s.transmissions.len()
        ));
    }
    expect("vector clearance", &s.total_count(), &ratio(3, 2))?;
    simulate(&inst, s, 3).map_err(err)?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("values 1, 3/2, 3/2, 2, 1, 1; clique code 1 transmission; vector cyclic 3 subpackets at theta 2".into())
}

fn duality_suite(insts: &[Instance]) -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let n = all_instances(insts, |inst| {
        let cyc = cycles(inst, &limits).map_err(err)?;
        let cl = cliques(inst, &limits).map_err(err)?;
        for (name, a, b) in [
            (
                "acyclic/cyclic",
                max_acyclic(inst, &cyc, true),
                cyclic_code(inst, &cyc, true),
            ),
            (
                "clique bound/code",
                clique_bound(inst, &cl, true),
                clique_code(inst, &cl, true),
            ),
        ] {
            let (a, b) = (a.map_err(err)?, b.map_err(err)?);
            let (ra, rb) = (solve(&a, &limits).map_err(err)?, solve(&b, &limits).map_err(err)?);
            let check = verify_duality((&a, &ra), (&b, &rb));
            if !check.holds() {
                return Err(format!("{name}: {check:?}"));
            }
        }
        Ok(())
    })?;
    within(start.elapsed(), Duration::from_secs(60))?;
    let fractional = count(insts, |inst| {
        cyclic_values(inst, &limits).is_ok_and(|v| !v[1].is_integer())
    });
    Ok(format!(
        "{n} instances ({} with cycles, {fractional} with fractional relaxation): both pairs equal and certified",
        count(insts, cyclic)
    ))
}

fn planar_suite_check(insts: &[Instance]) -> Check {
    let limits = Limits::default();
    let n = all_instances(insts, |inst| {
        let c = check_planar_optimality(inst, &limits).map_err(err)?;
        match c.holds {
            Some(true) => Ok(()),
            Some(false) => Err(format!(
                "values {} {} {} {}",
                c.max_acyclic, c.max_acyclic_lp, c.cyclic_code_lp, c.cyclic_code
            )),
            None => Err("generator produced a non-planar instance".into()),
        }
    })?;
    Ok(format!(
        "{n} planar instances ({} with cycles), both gaps zero",
        count(insts, cyclic)
    ))
}

fn clique_bound_equivalence(insts: &[Instance]) -> Check {
    let limits = Limits::default();
    let n = all_instances(insts, |inst| {
        let cyc = cycles(inst, &limits).map_err(err)?;
        let cl = cliques(inst, &limits).map_err(err)?;
        let a = solve(&max_acyclic(inst, &cyc, false).map_err(err)?, &limits).map_err(err)?;
        let b = solve(&clique_bound(inst, &cl, false).map_err(err)?, &limits).map_err(err)?;
        expect("clique bound", &b.objective, &a.objective)
    })?;
    Ok(format!(
        "{n} instances: integral lower bound equals integral clique bound"
    ))
}

fn exhaustive_uniprior() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let insts = all_small_uniprior(4, 4);
    let strict = insts.iter().filter(|i| i.is_uniprior()).count();
    let n = all_instances(&insts, |inst| match check_small_uniprior(inst, &limits) {
        Ok(true) => Ok(()),
        Ok(false) => Err("scalar cyclic code above the lower bound".into()),
        Err(e) => Err(e.to_string()),
    })?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "{n} non-isomorphic instances ({strict} with every packet held by exactly one user)"
    ))
}

fn uniprior_codes(insts: &[Instance]) -> Check {
    let limits = Limits::default();
    let n = all_instances(insts, |inst| match check_uniprior_codes_agree(inst, &limits) {
        Ok(true) => Ok(()),
        Ok(false) => Err("cyclic and clique code values differ".into()),
        Err(e) => Err(e.to_string()),
    })?;
    Ok(format!(
        "{n} instances ({} with cycles): scalar and vector values agree",
        count(insts, cyclic)
    ))
}

fn complementarity(insts: &[Instance]) -> Check {
    let limits = Limits::default();
    let small = insts.iter().filter(|i| i.num_packets() <= 5).count();
    let n = all_instances(insts, |inst| {
        let w = int(inst.total_weight() as i64);
        let cyc = cycles(inst, &limits).map_err(err)?;
        let v = |lp: Result<_, _>| -> Result<Rational, String> {
            Ok(solve(&lp.map_err(err)?, &limits).map_err(err)?.objective)
        };
        let p1 = v(max_acyclic(inst, &cyc, false))?;
        let p2 = v(cyclic_code(inst, &cyc, false))?;
        let p3 = v(feedback_vertex_set(inst, &cyc, false))?;
        let p4 = v(cycle_packing(inst, &cyc, false))?;
        expect("lower + feedback set", &(&p1 + &p3), &w)?;
        expect("cyclic + packing", &(&p2 + &p4), &w)?;
        if inst.num_packets() <= 5 {
            let g = inst.build_split_digraph();
            let sc = enumerate_split_cycles(&g, Some(limits.max_cycles)).map_err(err)?;
            expect(
                "split feedback arc set",
                &v(split_feedback_arc_set(inst, &g, &sc, false))?,
                &p3,
            )?;
            expect(
                "split cycle packing",
                &v(split_cycle_packing(inst, &g, &sc, false))?,
                &p4,
            )?;
        }
        Ok(())
    })?;
    Ok(format!(
        "{n} instances; split digraph programs agree on {small} with <= 5 packets"
    ))
}

fn deletion_oracle(insts: &[Instance]) -> Check {
    let limits = Limits::default();
    let mut all = insts.to_vec();
    all.extend(suite(9, 300, |r| random_unicast(r, 5, 10, 3)));
    let largest = all.iter().map(|i| i.num_packets()).max().unwrap_or(0);
    let n = all_instances(&all, |inst| {
        let cyc = cycles(inst, &limits).map_err(err)?;
        let res = solve(&max_acyclic(inst, &cyc, false).map_err(err)?, &limits).map_err(err)?;
        expect(
            "integral lower bound",
            &res.objective,
            &int(brute_force_max_acyclic(inst) as i64),
        )
    })?;
    Ok(format!("{n} instances up to {largest} packets match the 2^M search"))
}

fn code_soundness(suites: &[&[Instance]]) -> Check {
    let limits = Limits::default();
    let insts: Vec<Instance> = suites.iter().flat_map(|s| s.iter().cloned()).collect();
    let n = all_instances(&insts, |inst| {
        let cyc = cycles(inst, &limits).map_err(err)?;
        let lower = solve(&max_acyclic(inst, &cyc, false).map_err(err)?, &limits)
            .map_err(err)?
            .objective;
        for strategy in [Strategy::Cyclic, Strategy::PartialClique] {
            for mode in [Mode::Scalar, Mode::Vector] {
                let built = build_schedule(inst, strategy, mode, &limits).map_err(err)?;
                let count = built.schedule.total_count();
                expect(
                    &format!("{strategy:?}/{mode:?} clearance"),
                    &count,
                    &built.program_value,
                )?;
                if count < lower {
                    return Err(format!(
                        "{strategy:?}/{mode:?} clearance {count} below lower bound {lower}"
                    ));
                }
                simulate(inst, &built.schedule, inst.total_weight())
                    .map_err(|e| format!("{strategy:?}/{mode:?}: {e}"))?;
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "{} schedules decoded bit-exactly, none below the lower bound",
        4 * n
    ))
}

fn field_checks() -> Check {
    for a in 1..=255u8 {
        let x = Gf256(a);
        let inv = x.inv().ok_or(format!("{a} has no inverse"))?;
        if x * inv != Gf256::ONE {
            return Err(format!("inverse of {a} wrong"));
        }
        let searched = (1..=255u8)
            .filter(|&b| x.mul_slow(Gf256(b)) == Gf256::ONE)
            .collect_vec();
        if searched != vec![inv.0] {
            return Err(format!("inverse of {a} not unique"));
        }
    }
    let mut minors = 0usize;
    for k in 1..=6 {
        for r in 1..=k {
            let m = mds_rows(k, r).map_err(err)?;
            for size in 1..=r {
                for rows in (0..r).combinations(size) {
                    for cols in (0..k).combinations(size) {
                        let sub = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                        if determinant(sub).is_zero() {
                            return Err(format!(
                                "singular minor in mds_rows({k}, {r}) rows {rows:?} cols {cols:?}"
                            ));
                        }
                        minors += 1;
                    }
                }
            }
        }
    }
    Ok(format!("255 inverses verified; {minors} square minors nonzero"))
}

fn main() -> ExitCode {
    let random = random_suite();
    let planar = planar_suite();
    let uniprior = uniprior_suite();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("planar three-user example", Box::new(planar_example)),
        ("symmetric K3,3 example", Box::new(symmetric_example)),
        ("relaxation duality suite", Box::new(|| duality_suite(&random))),
        ("planar optimality suite", Box::new(|| planar_suite_check(&planar))),
        (
            "lower bound equals clique bound",
            Box::new(|| clique_bound_equivalence(&random)),
        ),
        ("exhaustive small uniprior", Box::new(exhaustive_uniprior)),
        (
            "uniprior cyclic vs clique codes",
            Box::new(|| uniprior_codes(&uniprior)),
        ),
        ("complementary programs", Box::new(|| complementarity(&random))),
        ("deletion oracle", Box::new(|| deletion_oracle(&random))),
        (
            "code soundness",
            Box::new(|| code_soundness(&[&random, &planar, &uniprior])),
        ),
        ("GF(256) and MDS", Box::new(field_checks)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag}  {name}: {detail} ({secs:.2} s)", i + 1);
        if outcome.is_err() {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
