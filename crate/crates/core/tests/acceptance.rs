//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so the
//! lines show up under `cargo test` without `--nocapture`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use overrank_core::combinat::{count_overpartitions, nbar_class, nbar_class_series, pbar_series, rank_table};
use overrank_core::rankdiff::{rank_diff_formula, rank_diff_oracle, RankDiffKey, Side};
use overrank_core::registry::{Registry, SuiteOptions, DEFAULT_SEED};
use overrank_core::{Coefficient, LaurentSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn registry() -> Registry {
    Registry::with_seed(DEFAULT_SEED)
}

/// Verifies each id at `order` (or its default) and requires a clean pass
/// checked at least up to `min_checked`.
fn verify_all(reg: &Registry, ids: &[String], order: Option<i64>, min_checked: i64) -> Outcome {
    for id in ids {
        let entry = reg.get(id).ok_or_else(|| format!("{id} is not registered"))?;
        let order = order.unwrap_or(entry.default_order);
        let r = reg.verify_with(id, order, false).map_err(|e| format!("{id}: {e}"))?;
        ensure(r.pass, || format!("{id} fails at q^{:?}", r.mismatch_exp()))?;
        ensure(r.checked_order >= min_checked, || {
            format!("{id} checked only to {}", r.checked_order)
        })?;
    }
    Ok(())
}

fn ids_with_prefix(reg: &Registry, prefixes: &[&str]) -> Vec<String> {
    reg.entries()
        .iter()
        .filter(|e| prefixes.iter().any(|p| e.id.starts_with(p)))
        .map(|e| e.id.clone())
        .collect()
}

fn criterion1() -> Outcome {
    let four = count_overpartitions(4).map_err(|e| e.to_string())?;
    ensure(four == 14, || format!("enumeration gives {four} overpartitions of 4"))?;
    let series = pbar_series(31).map_err(|e| e.to_string())?;
    ensure(series.to_i64_vec(5)[4] == 14, || {
        "series coefficient of q^4 is not 14".into()
    })?;
    for n in 0..=30u32 {
        let c = count_overpartitions(n).map_err(|e| e.to_string())?;
        ensure(series.to_i64_vec(31)[n as usize] == c as i64, || {
            format!("disagreement at n = {n}")
        })?;
    }
    Ok(())
}

fn theorem_cases(ell: i64) -> Outcome {
    for key in RankDiffKey::all().into_iter().filter(|k| k.ell == ell) {
        let oracle = rank_diff_oracle(key, 40).map_err(|e| e.to_string())?;
        let formula = rank_diff_formula(key, 40).map_err(|e| e.to_string())?;
        ensure(oracle.order() == 40 && formula.order() >= 40, || {
            format!("{} precision", key.id())
        })?;
        if let Some((e, a, b)) = oracle.first_difference(&formula) {
            return Err(format!("{} differs at q^{e}: {a} vs {b}", key.id()));
        }
    }
    Ok(())
}

fn criterion2() -> Outcome {
    ensure(RankDiffKey::all().iter().filter(|k| k.ell == 3).count() == 3, || {
        "expected 3 cases".into()
    })?;
    theorem_cases(3)
}

fn criterion3() -> Outcome {
    ensure(RankDiffKey::all().iter().filter(|k| k.ell == 5).count() == 10, || {
        "expected 10 cases".into()
    })?;
    theorem_cases(5)?;
    let key = RankDiffKey::parse("5:0:2:2").map_err(|e| e.to_string())?;
    let oracle = rank_diff_oracle(key, 40).map_err(|e| e.to_string())?;
    let formula = rank_diff_formula(key, 40).map_err(|e| e.to_string())?;
    ensure(oracle.is_zero() && formula.is_zero(), || {
        "R02(2) is not identically zero".into()
    })?;
    for n in (2..=30).step_by(5) {
        let (a, b) = (nbar_class(0, 5, n).unwrap(), nbar_class(2, 5, n).unwrap());
        ensure(a == b, || format!("N(0,5,{n}) = {a} but N(2,5,{n}) = {b}"))?;
    }
    Ok(())
}

fn criterion4() -> Outcome {
    let reg = registry();
    let ids = ids_with_prefix(&reg, &["lemma2.1@", "rels@", "p-relations@"]);
    ensure(ids.len() >= 6, || format!("only {} relation entries", ids.len()))?;
    verify_all(&reg, &ids, Some(210), 200)
}

fn criterion5() -> Outcome {
    let reg = registry();
    verify_all(&reg, &["lemma3.1.eq1".into(), "lemma3.1.eq2".into()], Some(150), 150)?;
    let used = ids_with_prefix(
        &reg,
        &["lemma3.2@x", "lemma3.3@x", "lemma3.4@x", "lemma3.5@x", "lemma3.6@z"],
    );
    ensure(used.len() >= 7, || format!("only {} instantiations", used.len()))?;
    verify_all(&reg, &used, None, 400)?;
    for lemma in ["lemma3.2", "lemma3.3", "lemma3.4", "lemma3.5", "lemma3.6"] {
        let id = format!("{lemma}@samples");
        verify_all(&reg, std::slice::from_ref(&id), None, 300)?;
        let r = reg.verify_with(&id, 300, false).map_err(|e| e.to_string())?;
        let count = r
            .notes
            .iter()
            .find_map(|n| n.strip_prefix("instances: "))
            .map(|l| l.split("; ").count())
            .unwrap_or(0);
        ensure(count >= 10, || format!("{id} has {count} samples"))?;
    }
    Ok(())
}

fn criterion6() -> Outcome {
    let reg = registry();
    let ids = ids_with_prefix(
        &reg,
        &["lemma4.1@", "lem1@", "lemma4.2.", "constant@", "gees@", "g1@", "g2@"],
    );
    ensure(ids.len() >= 17, || format!("only {} entries", ids.len()))?;
    verify_all(&reg, &ids, None, 150)
}

fn criterion7() -> Outcome {
    let reg = registry();
    let mut ids = ids_with_prefix(&reg, &["s(b)@", "final@", "brackets@", "check"]);
    ids.extend(["gen3too", "gen3", "gen4"].map(String::from));
    ensure(ids.len() >= 3 + 3 + 3 + 12 + 3, || {
        format!("only {} entries", ids.len())
    })?;
    verify_all(&reg, &ids, None, 150)
}

fn random_series(rng: &mut ChaCha8Rng, order: i64) -> LaurentSeries {
    let min = rng.gen_range(-2..3);
    let ints: Vec<i64> = (0..rng.gen_range(1..10)).map(|_| rng.gen_range(-9..10)).collect();
    let den: i64 = rng.gen_range(1..4);
    LaurentSeries::from_ints(min, &ints, order).scale(&Coefficient::new(1.into(), den.into()))
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..40 {
        let (a, b, c) = (
            random_series(&mut rng, 20),
            random_series(&mut rng, 20),
            random_series(&mut rng, 20),
        );
        ensure(a.mul(&b).agrees_with(&b.mul(&a)), || "commutativity".into())?;
        ensure(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))), || {
            "associativity".into()
        })?;
        ensure(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))), || {
            "distributivity".into()
        })?;
        let f = random_series(&mut rng, 30).shift(3);
        let m = rng.gen_range(1..6);
        let mut rebuilt = LaurentSeries::zero(30);
        for d in 0..m {
            let part = f.extract_progression(m, d).map_err(|e| e.to_string())?;
            rebuilt = rebuilt.add(&part.substitute_power(m).shift(d).truncate(30));
        }
        ensure(rebuilt.agrees_with(&f) && rebuilt.order() == 30, || {
            "dissection completeness".into()
        })?;
    }
    verify_all(&registry(), &["range-doubling".into()], None, 120)?;
    for n in 1..=24 {
        let t = rank_table(n).map_err(|e| e.to_string())?;
        for (&m, &c) in &t.counts {
            ensure(c == t.get(-m), || format!("rank symmetry at m = {m}, n = {n}"))?;
        }
        for m in [3, 5] {
            let total: u64 = (0..m).map(|s| t.class(s, m)).sum();
            ensure(total == t.total(), || format!("class sum at m = {m}, n = {n}"))?;
        }
    }
    for m in [3, 5] {
        let mut sum = LaurentSeries::zero(25);
        for s in 0..m {
            sum = sum.add(&nbar_class_series(s, m, 25).map_err(|e| e.to_string())?);
        }
        let pbar = pbar_series(25).map_err(|e| e.to_string())?.sub(&LaurentSeries::one(25));
        ensure(sum.agrees_with(&pbar), || format!("class series sum for m = {m}"))?;
    }
    Ok(())
}

fn criterion9() -> Outcome {
    type Edit = fn(&mut overrank_core::rankdiff::Identity);
    let mutations: [(&str, Edit); 4] = [
        ("check7", |i| i.flip_sign(Side::Rhs, 0)),
        ("thm5.R12.d1", |i| i.bump_exponent(Side::Rhs, 0, None, 1)),
        ("s3", |i| i.flip_sign(Side::Rhs, 1)),
        ("brackets@ell=5,m=2", |i| i.bump_exponent(Side::Rhs, 0, Some(0), 1)),
    ];
    for (id, edit) in mutations {
        let mut reg = registry();
        reg.mutate(id, edit).map_err(|e| e.to_string())?;
        let failed: Vec<_> = reg
            .run_suite(SuiteOptions {
                order_scale: 0.25,
                jobs: 4,
                timing: false,
            })
            .into_iter()
            .filter(|r| !r.pass)
            .collect();
        ensure(failed.len() == 1 && failed[0].id == id, || {
            format!(
                "mutating {id} failed {:?}",
                failed.iter().map(|r| &r.id).collect::<Vec<_>>()
            )
        })?;
        ensure(failed[0].first_mismatch.is_some(), || {
            format!("{id} mismatch not located")
        })?;
    }
    Ok(())
}

fn criterion10() -> Outcome {
    let reg = registry();
    let start = Instant::now();
    let opts = SuiteOptions {
        order_scale: 1.0,
        jobs: 1,
        timing: false,
    };
    let first = reg.run_suite(opts);
    let elapsed = start.elapsed();
    let failed: Vec<_> = first.iter().filter(|r| !r.pass).map(|r| r.id.clone()).collect();
    ensure(failed.is_empty(), || format!("failing: {failed:?}"))?;
    let a = serde_json::to_string_pretty(&first).unwrap();
    let b = serde_json::to_string_pretty(&reg.run_suite(opts)).unwrap();
    let c = serde_json::to_string_pretty(&reg.run_suite(SuiteOptions { jobs: 4, ..opts })).unwrap();
    ensure(a == b, || "two runs differ".into())?;
    ensure(a == c, || "parallel run differs".into())?;
    ensure(elapsed < Duration::from_secs(600), || format!("suite took {elapsed:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("overpartition counts: enumeration against product", criterion1),
        ("ell = 3 rank differences to order 40", criterion2),
        ("ell = 5 rank differences to order 40, R02(2) = 0", criterion3),
        ("S̄ and P relations to order 200", criterion4),
        ("product lemmas at used and sampled instantiations", criterion5),
        ("Lambert and g-function lemmas", criterion6),
        (
            "assembly: s(b), final forms, brackets, combinations, checks",
            criterion7,
        ),
        ("property suites", criterion8),
        ("mutation sensitivity", criterion9),
        ("full suite deterministic and under 10 minutes", criterion10),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("PASS criterion {}: {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                all = false;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
