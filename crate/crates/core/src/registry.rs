//! Registry of every verifiable identity, keyed by a stable id, and the suite
//! runner built on it.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{count_overpartitions, nbar_class, nbar_class_series, nbar_series, pbar_series, rank_table};
use crate::error::{Error, Result};
use crate::lambert::{
    sigma, sigma_with_margin, verify_g1, verify_g2, verify_g_constant, verify_g_relation, verify_gees,
    verify_lambert_product, verify_rels, verify_s_bar_at_ell, verify_short, verify_sigma_shift, verify_step, GRelation,
    LambertSpec,
};
use crate::products::{
    verify_addition, verify_dissection, verify_hickerson, verify_p_relations, verify_triple_product, DissectionVariant,
    Hickerson, SignedMonomial,
};
use crate::rankdiff::{
    brackets_identity, check_identity, lambert_index_identity, rank_diff_oracle, theorem_identity,
    verify_decomposition, CombinationPair, FinalFormSpec, Identity, Intermediate, NamedFinalForm, RankDiffKey,
};
use crate::report::IdentityReport;
use crate::series::Coefficient;

pub const DEFAULT_SEED: u64 = 20240917;
pub const SEED_ENV: &str = "OVERRANK_SEED";
const SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Product,
    Lambert,
    Oracle,
    Combination,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tier::Product => "product",
            Tier::Lambert => "lambert",
            Tier::Oracle => "oracle",
            Tier::Combination => "combination",
        };
        f.write_str(s)
    }
}

pub type CheckFn = Arc<dyn Fn(i64) -> Result<IdentityReport> + Send + Sync>;

#[derive(Clone)]
pub struct IdentityEntry {
    pub id: String,
    pub paper_anchor: String,
    pub default_order: i64,
    pub tier: Tier,
    check: CheckFn,
    identity: Option<Identity>,
}

impl fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .field("paper_anchor", &self.paper_anchor)
            .field("default_order", &self.default_order)
            .field("tier", &self.tier)
            .finish()
    }
}

impl IdentityEntry {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        default_order: i64,
        tier: Tier,
        check: impl Fn(i64) -> Result<IdentityReport> + Send + Sync + 'static,
    ) -> Self {
        IdentityEntry {
            id: id.into(),
            paper_anchor: anchor.into(),
            default_order,
            tier,
            check: Arc::new(check),
            identity: None,
        }
    }

    /// An entry whose check is the comparison of a transcribed [`Identity`].
    pub fn from_identity(
        id: impl Into<String>,
        anchor: impl Into<String>,
        default_order: i64,
        tier: Tier,
        identity: Identity,
    ) -> Self {
        let id = id.into();
        let mut entry = IdentityEntry::new(id, anchor, default_order, tier, |_| unreachable!());
        entry.set_identity(identity);
        entry
    }

    fn set_identity(&mut self, identity: Identity) {
        let id = self.id.clone();
        let shared = identity.clone();
        self.check = Arc::new(move |order| shared.verify(id.clone(), order));
        self.identity = Some(identity);
    }

    pub fn identity(&self) -> Option<&Identity> {
        self.identity.as_ref()
    }

    /// Runs the check. The report always carries this entry's id. Errors from
    /// the underlying computation become a failing report with the error in
    /// the notes and no mismatch.
    pub fn run(&self, order: i64, timing: bool) -> IdentityReport {
        let start = Instant::now();
        let mut report = match (self.check)(order) {
            Ok(r) => r,
            Err(e) => {
                let mut r = IdentityReport::new(self.id.clone(), 0);
                r.pass = false;
                r.notes.push(format!("error: {e}"));
                r
            }
        };
        report.id = self.id.clone();
        report.runtime_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
        report
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    pub order_scale: f64,
    pub jobs: usize,
    pub timing: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            order_scale: 1.0,
            jobs: 1,
            timing: true,
        }
    }
}

pub fn scaled_order(default_order: i64, scale: f64) -> i64 {
    ((default_order as f64 * scale).round() as i64).max(1)
}

#[derive(Clone, Debug)]
pub struct Registry {
    entries: Vec<IdentityEntry>,
    seed: u64,
}

impl Registry {
    /// The standard registry; the sampling seed comes from `OVERRANK_SEED`
    /// when it is set to an integer.
    pub fn standard() -> Self {
        Self::with_seed(seed_from_env())
    }

    pub fn with_seed(seed: u64) -> Self {
        let mut entries = build_entries(seed);
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let mut seen = BTreeSet::new();
        for e in &entries {
            assert!(seen.insert(e.id.clone()), "duplicate registry id {}", e.id);
        }
        Registry { entries, seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn entries(&self) -> &[IdentityEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&IdentityEntry> {
        self.entries
            .binary_search_by(|e| e.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.entries[i])
    }

    fn get_mut(&mut self, id: &str) -> Result<&mut IdentityEntry> {
        match self.entries.binary_search_by(|e| e.id.as_str().cmp(id)) {
            Ok(i) => Ok(&mut self.entries[i]),
            Err(_) => Err(Error::UnknownIdentity(id.to_string())),
        }
    }

    pub fn verify(&self, id: &str, order: i64) -> Result<IdentityReport> {
        self.verify_with(id, order, true)
    }

    pub fn verify_with(&self, id: &str, order: i64, timing: bool) -> Result<IdentityReport> {
        let entry = self.get(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
        Ok(entry.run(order, timing))
    }

    /// Runs every entry at its scaled default order; reports come back in id
    /// order whatever the number of workers.
    pub fn run_suite(&self, opts: SuiteOptions) -> Vec<IdentityReport> {
        let run = |e: &IdentityEntry| e.run(scaled_order(e.default_order, opts.order_scale), opts.timing);
        let jobs = opts.jobs.max(1);
        if jobs == 1 {
            return self.entries.iter().map(run).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| self.entries.par_iter().map(run).collect())
    }

    /// Swaps the check of one entry.
    pub fn replace(
        &mut self,
        id: &str,
        check: impl Fn(i64) -> Result<IdentityReport> + Send + Sync + 'static,
    ) -> Result<()> {
        let entry = self.get_mut(id)?;
        entry.check = Arc::new(check);
        entry.identity = None;
        Ok(())
    }

    /// Edits the transcribed identity behind one entry.
    pub fn mutate(&mut self, id: &str, edit: impl FnOnce(&mut Identity)) -> Result<()> {
        let entry = self.get_mut(id)?;
        let mut identity = entry
            .identity
            .clone()
            .ok_or_else(|| Error::InvalidArgument(format!("{id} has no transcribed identity")))?;
        edit(&mut identity);
        entry.set_identity(identity);
        Ok(())
    }
}

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn list_identities() -> Vec<IdentityEntry> {
    Registry::standard().entries
}

pub fn verify(id: &str, order: i64) -> Result<IdentityReport> {
    Registry::standard().verify(id, order)
}

pub fn run_suite(order_scale: f64, parallelism: usize) -> Vec<IdentityReport> {
    Registry::standard().run_suite(SuiteOptions {
        order_scale,
        jobs: parallelism,
        timing: true,
    })
}

fn q(e: i64) -> SignedMonomial {
    SignedMonomial::q(e)
}

fn nq(e: i64) -> SignedMonomial {
    SignedMonomial::neg_q(e)
}

fn random_monomial(rng: &mut ChaCha8Rng, base: i64) -> SignedMonomial {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    SignedMonomial::new(sign, rng.gen_range(1..base))
}

fn sample_base(rng: &mut ChaCha8Rng) -> i64 {
    [7, 9, 11, 13][rng.gen_range(0..4)]
}

/// Residues that must stay away from `0 mod base` so no product degenerates.
fn generic(base: i64, exps: &[i64]) -> bool {
    exps.iter().all(|e| e.rem_euclid(base) != 0)
}

fn hickerson_samples(seed: u64, which: Hickerson) -> Vec<(SignedMonomial, SignedMonomial, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (which as u64 + 1).wrapping_mul(0x9e37_79b9));
    let mut out = Vec::new();
    while out.len() < SAMPLES {
        let base = sample_base(&mut rng);
        let x = random_monomial(&mut rng, base);
        let z = random_monomial(&mut rng, base);
        if generic(base, &[x.exp - z.exp, x.exp + z.exp]) {
            out.push((x, z, base));
        }
    }
    out
}

type Triple = (SignedMonomial, SignedMonomial, SignedMonomial, i64);

fn addition_samples(seed: u64) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xadd1);
    let mut out = Vec::new();
    while out.len() < SAMPLES {
        let base = sample_base(&mut rng);
        let z = random_monomial(&mut rng, base);
        let zeta = random_monomial(&mut rng, base);
        let t = random_monomial(&mut rng, base);
        let (a, b, c) = (z.exp, zeta.exp, t.exp);
        if generic(base, &[a - b, a + b, a - c, a + c, b - c, b + c]) {
            out.push((z, zeta, t, base));
        }
    }
    out
}

fn sampled_entry<T: Send + Sync + Clone + fmt::Debug + 'static>(
    id: &str,
    anchor: &str,
    order: i64,
    seed: u64,
    samples: Vec<T>,
    run: impl Fn(&T, i64) -> Result<IdentityReport> + Send + Sync + 'static,
) -> IdentityEntry {
    let id_owned = id.to_string();
    IdentityEntry::new(id, anchor, order, Tier::Product, move |order| {
        let parts = samples.iter().map(|s| run(s, order)).collect::<Result<Vec<_>>>()?;
        let listing: Vec<String> = parts.iter().map(|p| p.id.clone()).collect();
        Ok(IdentityReport::merge(id_owned.clone(), parts)
            .with_note(format!("seed {seed}"))
            .with_note(format!("instances: {}", listing.join("; "))))
    })
}

fn enumeration_limit(order: i64) -> u32 {
    order.clamp(1, 31) as u32 - 1
}

fn int(k: i64) -> Coefficient {
    Coefficient::from_integer(k.into())
}

/// Enumeration against the generating functions, coefficient by coefficient.
fn oracle_entries() -> Vec<IdentityEntry> {
    let pbar = IdentityEntry::new(
        "oracle.pbar",
        "overpartition counts: (-q)_inf/(q)_inf against direct enumeration",
        31,
        Tier::Oracle,
        |order| {
            let nmax = enumeration_limit(order);
            let series = pbar_series(nmax as i64 + 1)?;
            let mut report = IdentityReport::new("oracle.pbar", nmax as i64 + 1);
            for n in 0..=nmax {
                let want = int(count_overpartitions(n)? as i64);
                let got = series.coeff(n as i64)?;
                if want != got {
                    report.fail_at(n as i64, &want, &got);
                    break;
                }
            }
            Ok(report)
        },
    );
    let nbar = IdentityEntry::new(
        "oracle.nbar",
        "rank counts N(m,n), |m| <= 8: two-variable generating function against enumeration, with N(m,n) = N(-m,n)",
        31,
        Tier::Oracle,
        |order| {
            let nmax = enumeration_limit(order);
            let mut report = IdentityReport::new("oracle.nbar", nmax as i64 + 1).with_note(
                "n = 0 excluded: the generating function gives 0 where enumeration counts the empty overpartition",
            );
            let tables = (1..=nmax).map(rank_table).collect::<Result<Vec<_>>>()?;
            for m in -8..=8i64 {
                let series = nbar_series(m, nmax as i64 + 1)?;
                for t in &tables {
                    let want = int(t.get(m) as i64);
                    let got = series.coeff(t.n as i64)?;
                    if want != got || t.get(m) != t.get(-m) {
                        report.fail_at(t.n as i64, &want, &got);
                        report.notes.push(format!("m = {m}"));
                        return Ok(report);
                    }
                }
            }
            Ok(report)
        },
    );
    let classes = IdentityEntry::new(
        "oracle.nbar-class",
        "class counts N(s,m,n), m in {3,5}: bilateral generating function against enumeration, class symmetry and class sums",
        31,
        Tier::Oracle,
        |order| {
            let nmax = enumeration_limit(order);
            let mut report = IdentityReport::new("oracle.nbar-class", nmax as i64 + 1)
                .with_note("n = 0 excluded: the generating function gives 0 where enumeration counts the empty overpartition");
            let tables = (1..=nmax).map(rank_table).collect::<Result<Vec<_>>>()?;
            let pbar = pbar_series(nmax as i64 + 1)?;
            for m in [3i64, 5] {
                let mut total = vec![int(0); nmax as usize + 1];
                for s in 0..m {
                    let series = nbar_class_series(s, m, nmax as i64 + 1)?;
                    for t in &tables {
                        let count = t.class(s, m);
                        let got = series.coeff(t.n as i64)?;
                        total[t.n as usize] += &got;
                        if int(count as i64) != got || count != t.class(m - s, m) {
                            report.fail_at(t.n as i64, &int(count as i64), &got);
                            report.notes.push(format!("s = {s}, m = {m}"));
                            return Ok(report);
                        }
                    }
                }
                for n in 1..=nmax as i64 {
                    let want = pbar.coeff(n)?;
                    if total[n as usize] != want {
                        report.fail_at(n, &want, &total[n as usize]);
                        return Ok(report);
                    }
                }
            }
            Ok(report)
        },
    );
    let r02 = IdentityEntry::new(
        "oracle.R02.d2",
        "R_02(2) = 0 spot check: N(0,5,5n+2) = N(2,5,5n+2) by enumeration",
        31,
        Tier::Oracle,
        |order| {
            let nmax = enumeration_limit(order) as i64;
            let mut report = IdentityReport::new("oracle.R02.d2", nmax / 5 + 1);
            for n in (2..=nmax).step_by(5) {
                let a = nbar_class(0, 5, n as u32)?;
                let b = nbar_class(2, 5, n as u32)?;
                if a != b {
                    report.fail_at((n - 2) / 5, &int(a as i64), &int(b as i64));
                    break;
                }
            }
            Ok(report)
        },
    );
    vec![pbar, nbar, classes, r02]
}

fn range_doubling_entry() -> IdentityEntry {
    IdentityEntry::new(
        "range-doubling",
        "every Lambert sum used by the rank-difference chain is unchanged when the summation range is widened",
        120,
        Tier::Lambert,
        |order| {
            let mut specs = Vec::new();
            for (ell, m) in [(3, 1), (5, 2), (5, 1)] {
                let e = ell;
                specs.push(LambertSpec::index(m, 0, e));
                specs.push(LambertSpec::index(2 * m, 2 * m, e));
                specs.push(LambertSpec::index_zero(-2 * m, e));
                for a in (FinalFormSpec { ell, m }).a_values() {
                    specs.push(LambertSpec::index(m + a, 2 * a, e));
                    specs.push(LambertSpec::index(m - a, -2 * a, e));
                }
            }
            specs.push(LambertSpec::new(q(1), SignedMonomial::ONE, 3));
            specs.push(LambertSpec::new(q(1), SignedMonomial::ONE, 5));
            specs.push(LambertSpec::new(q(2), SignedMonomial::ONE, 5));
            let mut parts = Vec::new();
            for spec in specs {
                let a = sigma(&spec, order)?;
                let b = sigma_with_margin(&spec, order, 8)?;
                let id = format!("z={},zeta={},base={}", spec.z, spec.zeta, spec.base);
                parts.push(IdentityReport::compare(id, &a, &b, order));
            }
            for ell in [3, 5] {
                for b in -ell..=2 * ell {
                    let a = crate::lambert::s_bar(b, ell, order)?;
                    let w = crate::lambert::s_bar_with_margin(b, ell, order, 8)?;
                    parts.push(IdentityReport::compare(format!("sbar@b={b},ell={ell}"), &a, &w, order));
                }
            }
            Ok(IdentityReport::merge("range-doubling", parts))
        },
    )
}

fn build_entries(seed: u64) -> Vec<IdentityEntry> {
    let mut v = Vec::new();

    for key in RankDiffKey::all() {
        v.push(IdentityEntry::from_identity(
            key.id(),
            format!(
                "rank difference R_{}{}({}) for ell = {}: closed form against the dissected generating function",
                key.s, key.t, key.d, key.ell
            ),
            40,
            Tier::Oracle,
            theorem_identity(key),
        ));
    }
    v.push(IdentityEntry::new(
        "thm.integrality",
        "every rank-difference closed form has integer coefficients",
        40,
        Tier::Oracle,
        |order| {
            let mut report = IdentityReport::new("thm.integrality", order);
            for key in RankDiffKey::all() {
                let s = crate::rankdiff::rank_diff_formula(key, order)?;
                if !s.has_integer_coefficients() {
                    report.pass = false;
                    report
                        .notes
                        .push(format!("{} has denominator {}", key.id(), s.denominator()));
                }
            }
            if !report.pass {
                // locate the first offending coefficient for the report
                for key in RankDiffKey::all() {
                    let s = crate::rankdiff::rank_diff_formula(key, order)?;
                    let bad = s.terms().find(|(_, c)| !c.is_integer());
                    if let Some((e, c)) = bad {
                        report.fail_at(e, &c, &c.round());
                        break;
                    }
                }
            }
            Ok(report)
        },
    ));
    // also validates the oracle side independently of any closed form
    v.push(IdentityEntry::new(
        "thm.oracle-integrality",
        "dissected rank differences have integer coefficients",
        40,
        Tier::Oracle,
        |order| {
            let mut report = IdentityReport::new("thm.oracle-integrality", order);
            for key in RankDiffKey::all() {
                let s = rank_diff_oracle(key, order)?;
                let bad = s.terms().find(|(_, c)| !c.is_integer());
                if let Some((e, c)) = bad {
                    report.fail_at(e, &c, &c.round());
                    report.notes.push(key.id());
                    break;
                }
            }
            Ok(report)
        },
    ));

    for idx in 0..10u8 {
        let tier = if matches!(idx, 0 | 5) {
            Tier::Lambert
        } else {
            Tier::Product
        };
        v.push(IdentityEntry::from_identity(
            format!("check{idx}"),
            format!("coefficient identity {idx} from equating powers of q in the ell = 5 assembly"),
            400,
            tier,
            check_identity(idx).expect("ten check identities"),
        ));
    }
    for i in Intermediate::ALL {
        let anchor = match i {
            Intermediate::Check0 => "3g(1) + g(2) as four products, from (g1) at a = 1, 2 and g(4) = 1 - g(1)",
            Intermediate::Check5 => "1/2 - 2g(2) - g(1) as two products, from (g1) at a = 2",
            Intermediate::Thm3Constant => "-3g(1) + 1/2 as two products for ell = 3",
        };
        v.push(IdentityEntry::from_identity(
            i.id(),
            anchor,
            400,
            Tier::Lambert,
            i.identity(),
        ));
    }

    for spec in FinalFormSpec::ALL {
        let label = format!("ell={},m={}", spec.ell, spec.m);
        v.push(IdentityEntry::from_identity(
            format!("brackets@{label}"),
            "closed product form of the coefficient of Σ(m,0)",
            300,
            Tier::Product,
            brackets_identity(spec),
        ));
        v.push(IdentityEntry::new(
            format!("final@{label}"),
            "S̄(ell - 2m) = -g(m) + product terms + Σ(m,0)·{bracket}",
            200,
            Tier::Lambert,
            move |order| crate::rankdiff::verify_final_form(spec, order),
        ));
        v.push(IdentityEntry::new(
            format!("s(b)@{label}"),
            "S̄(ell - 2m) split over n = ell r + m + b into Σ(a,b) sums",
            200,
            Tier::Lambert,
            move |order| crate::rankdiff::verify_s_b(spec, order),
        ));
    }
    for f in NamedFinalForm::ALL {
        let anchor = match f {
            NamedFinalForm::S1Too => "S̄(1) for ell = 3 = -g(1) - q^2 Σ(1,0)·(q)(-q^9;q^9)/((-q)(q^9;q^9))",
            NamedFinalForm::S1 => "S̄(1) for ell = 5 = -g(2) + q y Σ(2,0)·(...) - q^2·(...)",
            NamedFinalForm::S3 => "S̄(3) for ell = 5 = -g(1) - q^4 Σ(1,0)·(...) + q^3·(...)",
        };
        v.push(IdentityEntry::from_identity(
            f.id(),
            anchor,
            200,
            Tier::Lambert,
            f.identity(),
        ));
    }
    for pair in CombinationPair::ALL {
        let (ell, s, t) = pair.params();
        v.push(IdentityEntry::from_identity(
            pair.id(),
            format!("sum_n (N({s},{ell},n) - N({t},{ell},n)) q^n (q)/(2(-q)) as a combination of S̄(b)"),
            150,
            Tier::Combination,
            pair.identity(),
        ));
        v.push(IdentityEntry::new(
            format!("term@{}", pair.id()),
            format!("S̄ combination for ell = {ell}, ({s},{t}) against sum_d R_{s}{t}(d)(q^{ell}) q^d (q)/(2(-q))"),
            150,
            Tier::Combination,
            move |order| verify_decomposition(pair, order),
        ));
    }

    for ell in [3, 5] {
        v.push(IdentityEntry::new(
            format!("lemma2.1@ell={ell}"),
            "S̄(ell) = -(q)/(2(-q)) + 1/2",
            200,
            Tier::Lambert,
            move |order| verify_s_bar_at_ell(ell, order),
        ));
        v.push(IdentityEntry::new(
            format!("rels@ell={ell}"),
            "S̄(b) = -S̄(ell - b) for -ell <= b <= 2 ell",
            200,
            Tier::Lambert,
            move |order| verify_rels(ell, order),
        ));
    }
    for ell in [3, 5, 7] {
        v.push(IdentityEntry::new(
            format!("p-relations@ell={ell}"),
            "P(z^-1 q) = P(z), P(zq) = -z^-1 P(z), P(ell - a) = P(a), P(-a) = P(ell + a) = -y^-a P(a)",
            200,
            Tier::Product,
            move |order| verify_p_relations(ell, order),
        ));
    }
    for (z, base) in [(SignedMonomial::MINUS_ONE, 1), (q(1), 3), (nq(2), 5)] {
        v.push(IdentityEntry::new(
            format!("jtp@z={z},base={base}"),
            "sum z^n q^(n^2) = (-zq, -q/z, q^2; q^2)_inf",
            200,
            Tier::Product,
            move |order| verify_triple_product(z, base, order),
        ));
    }

    v.push(IdentityEntry::new(
        "lemma3.1.eq1",
        "(q)/(-q) = (q^9;q^9)/(-q^9;q^9) - 2q (q^3, q^15, q^18; q^18)",
        150,
        Tier::Product,
        |order| verify_dissection(DissectionVariant::Base9, order),
    ));
    v.push(IdentityEntry::new(
        "lemma3.1.eq2",
        "(q)/(-q) as three products over q^25 and q^50",
        150,
        Tier::Product,
        |order| verify_dissection(DissectionVariant::Base25, order),
    ));
    let used: [(Hickerson, SignedMonomial, SignedMonomial); 5] = [
        (Hickerson::First, q(5), q(10)),
        (Hickerson::Second, nq(5), nq(10)),
        (Hickerson::Second, q(5), q(10)),
        (Hickerson::Third, q(5), q(10)),
        (Hickerson::Fourth, q(5), q(10)),
    ];
    for (which, x, z) in used {
        v.push(IdentityEntry::new(
            format!("{}@x={x},z={z},base=25", which.label()),
            "two-variable product identity at x, z in the q^25 setting",
            400,
            Tier::Product,
            move |order| verify_hickerson(which, x, z, 25, order),
        ));
    }
    for which in Hickerson::ALL {
        v.push(sampled_entry(
            &format!("{}@samples", which.label()),
            "seeded random instantiations of a two-variable product identity",
            300,
            seed,
            hickerson_samples(seed, which),
            move |&(x, z, base), order| verify_hickerson(which, x, z, base, order),
        ));
    }
    for (z, zeta, t) in [(q(20), q(10), q(5)), (q(20), q(15), q(10))] {
        v.push(IdentityEntry::new(
            format!("lemma3.6@z={z},zeta={zeta},t={t},base=50"),
            "three-term addition theorem for P at q^50",
            400,
            Tier::Product,
            move |order| verify_addition(z, zeta, t, 50, order),
        ));
    }
    v.push(sampled_entry(
        "lemma3.6@samples",
        "seeded random instantiations of the addition theorem",
        300,
        seed,
        addition_samples(seed),
        |&(z, zeta, t, base), order| verify_addition(z, zeta, t, base, order),
    ));

    for (a, b, ell) in [(1, 2, 5), (2, 1, 5), (1, 3, 7)] {
        let (zeta, z, base) = (q(ell * a), q(ell * b), ell * ell);
        v.push(IdentityEntry::new(
            format!("lemma4.1@a={a},b={b},ell={ell}"),
            "two-sided Lambert sum in ζ^(±2n) = product·Σ(z,1) + product, at ζ = y^a, z = y^b, q = y^ell",
            300,
            Tier::Lambert,
            move |order| verify_lambert_product(zeta, z, base, order),
        ));
    }
    for (a, b) in [(1, 2), (2, 1)] {
        v.push(IdentityEntry::from_identity(
            format!("lem1@a={a},b={b},ell=5"),
            "the same Lambert identity written with Σ(a,b) and P(a)",
            300,
            Tier::Lambert,
            lambert_index_identity(a, b, 5),
        ));
    }
    for (z, base, order) in [(q(1), 5, 300), (q(1), 3, 200)] {
        v.push(IdentityEntry::new(
            format!("lemma4.2.part1@z={z},base={base}"),
            "2g(z) - g(z^2) + 1/2 as two products",
            order,
            Tier::Lambert,
            move |order| verify_g_relation(GRelation::Duplication, z, base, order),
        ));
    }
    v.push(IdentityEntry::new(
        "lemma4.2.part2@z=q10,base=25",
        "g(z) + g(q/z) = 1",
        300,
        Tier::Lambert,
        |order| verify_g_relation(GRelation::Reflection, q(10), 25, order),
    ));
    for (z, base, order) in [(q(1), 3, 150), (q(5), 25, 300)] {
        v.push(IdentityEntry::new(
            format!("constant@z={z},base={base}"),
            "g(z) - g(zq) = -2",
            order,
            Tier::Lambert,
            move |order| verify_g_constant(z, base, order),
        ));
        v.push(IdentityEntry::new(
            format!("gees@z={z},base={base}"),
            "g(1/z) + g(z) = -1",
            order,
            Tier::Lambert,
            move |order| verify_gees(z, base, order),
        ));
    }
    for (a, ell) in [(1, 3), (1, 5), (2, 5)] {
        v.push(IdentityEntry::new(
            format!("g1@a={a},ell={ell}"),
            "2g(a) - g(2a) + 1/2 as two products in P(a), P(0)",
            300,
            Tier::Lambert,
            move |order| verify_g1(a, ell, order),
        ));
        v.push(IdentityEntry::new(
            format!("g2@a={a},ell={ell}"),
            "g(a) + g(ell - a) = 1",
            300,
            Tier::Lambert,
            move |order| verify_g2(a, ell, order),
        ));
    }
    v.push(IdentityEntry::new(
        "sigma@samples",
        "z^2 Σ(z,ζ) + ζ Σ(zq,ζ) as a theta-type sum, five instantiations",
        150,
        Tier::Lambert,
        |order| {
            let cases = [
                (q(1), SignedMonomial::ONE, 3),
                (q(2), q(1), 5),
                (nq(3), q(2), 7),
                (q(4), nq(1), 5),
                (q(1), q(-2), 4),
            ];
            let parts = cases
                .iter()
                .map(|&(z, zeta, b)| verify_sigma_shift(z, zeta, b, order))
                .collect::<Result<Vec<_>>>()?;
            Ok(IdentityReport::merge("sigma@samples", parts))
        },
    ));
    v.push(IdentityEntry::new(
        "step@z=q2,base=7",
        "z^2 Σ(z,1) + Σ(zq,1) = -z (q)/(-q)",
        200,
        Tier::Lambert,
        |order| verify_step(q(2), 7, order),
    ));
    v.push(IdentityEntry::new(
        "short@samples",
        "Σ(z,1) + z^-2 Σ(1/z,1) = -z^-1 sum (-1)^n q^(n^2), three instantiations",
        150,
        Tier::Lambert,
        |order| {
            let parts = [(q(1), 3), (q(2), 5), (nq(1), 4)]
                .iter()
                .map(|&(z, b)| verify_short(z, b, order))
                .collect::<Result<Vec<_>>>()?;
            Ok(IdentityReport::merge("short@samples", parts))
        },
    ));
    v.push(range_doubling_entry());
    v.extend(oracle_entries());
    v
}
