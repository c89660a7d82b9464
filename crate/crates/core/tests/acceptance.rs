//! Acceptance criteria, one test each. Run with `--nocapture` to see the
//! PASS/FAIL summary lines.

use std::sync::Arc;
use std::time::Instant;

use periodic_hall::embed::Embedding;
use periodic_hall::extended::ExtendedAlgebra;
use periodic_hall::hall::HallContext;
use periodic_hall::periodic::PeriodicAlgebra;
use periodic_hall::repcat::{KClass, Quiver, RepCategory};
use periodic_hall::suites::{self, SuiteReport};
use periodic_hall::{HallError, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

type Criterion = fn() -> Result<(bool, String)>;

fn a2(q: u32) -> Arc<HallContext> {
    Arc::new(HallContext::new(RepCategory::new(Quiver::parse("A2").unwrap(), q).unwrap()))
}

fn small_bound() -> KClass {
    KClass(vec![1, 1])
}

/// Folds reports into a pass flag and a one-line summary.
fn tally(reports: Vec<SuiteReport>) -> (bool, String) {
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("{r}");
    }
    (failed == 0, format!("{checks} checks, {failed} failed"))
}

fn criterion_1() -> Result<(bool, String)> {
    let mut reports = Vec::new();
    for q in [2, 3] {
        let ctx = a2(q);
        for m in [1, 3] {
            let emb = Embedding::new(ctx.clone(), m)?;
            let basis = emb.periodic().basis_objects(&small_bound(), 2)?;
            reports.push(suites::embedding_suite(&emb, &basis)?);
        }
    }
    Ok(tally(reports))
}

fn criterion_2() -> Result<(bool, String)> {
    let mut reports = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for q in [2, 3] {
        let ctx = a2(q);
        let classes = ctx.cat().enumerate_iso_classes(&small_bound())?;
        for m in [1, 2, 3] {
            let alg = ExtendedAlgebra::new(ctx.clone(), m)?;
            reports.push(suites::extended_assoc_suite(&alg, &classes, 50, &mut rng)?);
        }
        for m in [1, 3] {
            let alg = PeriodicAlgebra::new(ctx.clone(), m)?;
            reports.push(suites::periodic_assoc_suite(&alg, &classes, 50, &mut rng)?);
        }
    }
    Ok(tally(reports))
}

fn criterion_3() -> Result<(bool, String)> {
    let reports = [2, 3].map(|q| suites::partition_suite(a2(q).cat(), 3)).into_iter().collect::<Result<_>>()?;
    Ok(tally(reports))
}

fn criterion_4() -> Result<(bool, String)> {
    let mut reports = Vec::new();
    for q in [2, 3] {
        let ctx = a2(q);
        let periodic = PeriodicAlgebra::new(ctx.clone(), 3)?;
        let extended = ExtendedAlgebra::new(ctx, 3)?;
        reports.push(suites::golden_suite(&periodic, &extended)?);
    }
    Ok(tally(reports))
}

fn criterion_5() -> Result<(bool, String)> {
    let mut reports = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for q in [2, 3] {
        let ctx = a2(q);
        let classes = ctx.cat().enumerate_iso_classes(&small_bound())?;
        for m in [1, 3] {
            let alg = ExtendedAlgebra::new(ctx.clone(), m)?;
            reports.push(suites::k_relations_suite(&alg, &classes, 100, &mut rng)?);
        }
    }
    Ok(tally(reports))
}

fn criterion_6() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let reports = vec![
        suites::identities_suite(3, 2, 100, &mut rng)?,
        suites::identities_suite(5, 2, 100, &mut rng)?,
        suites::identities_suite(5, 3, 100, &mut rng)?,
    ];
    Ok(tally(reports))
}

fn criterion_7() -> Result<(bool, String)> {
    let reports = [2, 3].map(|q| suites::riedtmann_suite(a2(q).cat(), 3)).into_iter().collect::<Result<_>>()?;
    Ok(tally(reports))
}

fn criterion_8() -> Result<(bool, String)> {
    let ctx = a2(2);
    let mut ok = true;
    for m in [2, 4, 6] {
        ok &= PeriodicAlgebra::new(ctx.clone(), m).err() == Some(HallError::EvenPeriod { m });
        ok &= Embedding::new(ctx.clone(), m).err() == Some(HallError::EvenPeriod { m });
    }
    let classes = ctx.cat().enumerate_iso_classes(&small_bound())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut reports = Vec::new();
    for m in [2, 4] {
        let alg = ExtendedAlgebra::new(ctx.clone(), m)?;
        reports.push(suites::extended_assoc_suite(&alg, &classes, 50, &mut rng)?);
    }
    let (assoc_ok, summary) = tally(reports);
    Ok((ok && assoc_ok, format!("guards {}, even-period associativity {summary}", if ok { "hold" } else { "broken" })))
}

fn report(n: usize, name: &str, run: Criterion) {
    let start = Instant::now();
    let (ok, summary) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    println!(
        "criterion {n} {name}: {} ({summary}, {:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    assert!(ok, "criterion {n} failed: {summary}");
}

#[test]
fn criterion_1_embedding_is_a_homomorphism_on_a2() {
    report(1, "embedding is a homomorphism on A2 (exhaustive)", criterion_1);
}

#[test]
fn criterion_2_associativity_of_both_products() {
    report(2, "associativity of both products", criterion_2);
}

#[test]
fn criterion_3_extension_fibers_partition_hom() {
    report(3, "extension fibers partition Hom(X, Y[1])", criterion_3);
}

#[test]
fn criterion_4_golden_product() {
    report(4, "golden product in both algebras", criterion_4);
}

#[test]
fn criterion_5_k_element_relations() {
    report(5, "K-element relations", criterion_5);
}

#[test]
fn criterion_6_alternating_sum_identities() {
    report(6, "alternating-sum identities", criterion_6);
}

#[test]
fn criterion_7_submodule_counts_match_extension_counts() {
    report(7, "submodule counts agree with extension counts", criterion_7);
}

#[test]
fn criterion_8_even_period_guard() {
    report(8, "even-period guard", criterion_8);
}
