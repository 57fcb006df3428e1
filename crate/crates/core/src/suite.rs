//! Run configuration, suite dispatch and the versioned report bundle.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::apps::{product_one_report, walk_report};
use crate::bounds::{
    centralizer_bound_check, delta_certificate, delta_solver, irr_count_check, orbit_checks_with_budget, restriction_norm_check,
    schur_check, show_dec, sigma_lambda_checks, two_significant, Pairing, DELTA_A,
};
use crate::cache::{CacheError, Provenance, TableCache};
use crate::catalog::embeddings;
use crate::chartab::{build_table, CharacterTable};
use crate::groups::{enumerate_with_budget, Family, GroupError, GroupSpec, DEFAULT_BUDGET};
use crate::level::{level_range_check, levels, main3_check, rank_level_checks, uranks};
use crate::real;
use crate::report::{BoundReport, Direction, Interval, Verdict};
use crate::weil::{Psi, WeilModel, DEFAULT_DIM_BUDGET};
use crate::Rational;

pub const REPORT_SCHEMA: &str = "cclab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Level,
    Rank,
    Main3,
    Orbits,
    Centralizer,
    Restriction,
    Delta,
    Walk,
    ProductOne,
    WeilModel,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Level,
        Suite::Rank,
        Suite::Main3,
        Suite::Orbits,
        Suite::Centralizer,
        Suite::Restriction,
        Suite::Delta,
        Suite::Walk,
        Suite::ProductOne,
        Suite::WeilModel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Level => "level",
            Suite::Rank => "rank",
            Suite::Main3 => "main3",
            Suite::Orbits => "orbits",
            Suite::Centralizer => "centralizer",
            Suite::Restriction => "restriction",
            Suite::Delta => "delta",
            Suite::Walk => "walk",
            Suite::ProductOne => "product-one",
            Suite::WeilModel => "weil-model",
        }
    }

    /// Suites that do not take a group.
    pub fn is_global(self) -> bool {
        self == Suite::Delta
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s.trim()).ok_or_else(|| ConfigError::UnknownSuite(s.trim().to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(ConfigError::Value { key: "format".into(), value: other.into(), why: "expected json, csv or text".into() }),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("unknown config key '{0}'")]
    UnknownKey(String),
    #[error("line {0}: expected 'key = value'")]
    Syntax(usize),
    #[error("{key} = '{value}': {why}")]
    Value { key: String, value: String, why: String },
    #[error("{0} must be positive")]
    NonPositive(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub groups: Vec<GroupSpec>,
    pub suites: Vec<Suite>,
    /// Largest group order enumerated.
    pub enumeration_budget: u128,
    /// Largest Weil model dimension q^N.
    pub model_budget: usize,
    /// Largest tuple space enumerated (orbit and product-one oracles).
    pub tuple_budget: u128,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    pub gamma: BigRational,
    pub walk_class: Option<usize>,
    pub walk_t: u32,
    pub tuple: Option<Vec<usize>>,
    /// Random pairs for the Weil homomorphism check.
    pub pairs: usize,
    pub orbit_j: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            groups: Vec::new(),
            suites: Vec::new(),
            enumeration_budget: DEFAULT_BUDGET,
            model_budget: DEFAULT_DIM_BUDGET,
            tuple_budget: crate::bounds::TUPLE_BUDGET,
            cache_dir: None,
            format: Format::Json,
            workers: rayon::current_num_threads(),
            gamma: real::rat(99, 100),
            walk_class: None,
            walk_t: 8,
            tuple: None,
            pairs: 200,
            orbit_j: 2,
        }
    }
}

/// Split at commas outside parentheses, so "Sp(4,3), SL(2,5)" gives two items.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == ',' || ch == ';') && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    out.push(cur.trim().to_string());
    out.retain(|x| !x.is_empty());
    out
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::Value { key: key.into(), value: value.into(), why: "not a number".into() })
}

fn positive<T: PartialOrd + Default>(key: &str, v: T) -> Result<T, ConfigError> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(ConfigError::NonPositive(key.into()))
    }
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.trim().replace('-', "_");
        let v = value.trim();
        match key.as_str() {
            "groups" | "group" => {
                self.groups = split_top_level(v).iter().map(|s| s.parse()).collect::<Result<_, GroupError>>()?;
            }
            "suites" | "suite" => {
                self.suites = split_top_level(v).iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            }
            "enumeration_budget" => self.enumeration_budget = positive(&key, parse_num(&key, v)?)?,
            "model_budget" => self.model_budget = positive(&key, parse_num(&key, v)?)?,
            "tuple_budget" => self.tuple_budget = positive(&key, parse_num(&key, v)?)?,
            "workers" => self.workers = positive(&key, parse_num(&key, v)?)?,
            "pairs" => self.pairs = parse_num(&key, v)?,
            "walk_t" | "t" => self.walk_t = parse_num(&key, v)?,
            "orbit_j" => self.orbit_j = positive(&key, parse_num(&key, v)?)?,
            "walk_class" | "class" => self.walk_class = Some(parse_num(&key, v)?),
            "tuple" | "classes" => {
                self.tuple = Some(split_top_level(v).iter().map(|s| parse_num(&key, s)).collect::<Result<_, _>>()?);
            }
            "cache_dir" => self.cache_dir = if v.is_empty() { None } else { Some(PathBuf::from(v)) },
            "format" => self.format = v.parse()?,
            "gamma" => {
                self.gamma = real::decimal(v).ok_or_else(|| ConfigError::Value {
                    key: key.clone(),
                    value: v.into(),
                    why: "expected a decimal".into(),
                })?;
            }
            _ => return Err(ConfigError::UnknownKey(key)),
        }
        Ok(())
    }

    /// Parse the key-value config format: one `key = value` per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax(i + 1))?;
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    /// The settings that determine report content; worker count, format and cache location are excluded.
    fn to_json(&self) -> Value {
        json!({
            "groups": self.groups.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "enumeration_budget": self.enumeration_budget.to_string(),
            "model_budget": self.model_budget,
            "tuple_budget": self.tuple_budget.to_string(),
            "gamma": show_dec(&self.gamma),
            "walk_class": self.walk_class,
            "walk_t": self.walk_t,
            "tuple": self.tuple,
            "pairs": self.pairs,
            "orbit_j": self.orbit_j,
        })
    }
}

/// Reports about one subject (a character, a class, an embedding, ...).
#[derive(Clone, Debug)]
pub struct Record {
    pub subject: String,
    pub reports: Vec<BoundReport>,
}

impl Record {
    pub fn verdict(&self) -> Verdict {
        if self.reports.iter().any(|r| r.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.reports.iter().any(|r| r.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::NotApplicable
        }
    }
}

fn singles(reports: Vec<BoundReport>) -> Vec<Record> {
    reports.into_iter().map(|r| Record { subject: r.params.clone(), reports: vec![r] }).collect()
}

#[derive(Clone, Debug)]
pub struct Item {
    pub suite: Suite,
    pub group: Option<String>,
    pub records: Vec<Record>,
    /// Set when the item could not be run (budget, scope); not a fail verdict.
    pub error: Option<String>,
}

impl Item {
    pub fn reports(&self) -> impl Iterator<Item = &BoundReport> {
        self.records.iter().flat_map(|r| r.reports.iter())
    }
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub config: Value,
    pub items: Vec<Item>,
    /// Cache notices; kept out of the serialized bundle so reruns stay byte-identical.
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub errors: usize,
}

impl Bundle {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for item in &self.items {
            if item.error.is_some() {
                t.errors += 1;
            }
            for r in item.reports() {
                match r.verdict {
                    Verdict::Pass => t.pass += 1,
                    Verdict::Fail => t.fail += 1,
                    Verdict::NotApplicable => t.not_applicable += 1,
                }
            }
        }
        t
    }

    /// 0 when nothing failed, 1 otherwise. Configuration errors (2) never reach a bundle.
    pub fn exit_code(&self) -> i32 {
        if self.tally().fail == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let t = self.tally();
        json!({
            "schema": REPORT_SCHEMA,
            "engine": crate::cache::engine_hash(),
            "config": self.config,
            "items": self.items.iter().map(|it| json!({
                "suite": it.suite.name(),
                "group": it.group,
                "error": it.error,
                "records": it.records.iter().map(|r| json!({
                    "subject": r.subject,
                    "verdict": r.verdict(),
                    "reports": r.reports.iter().map(BoundReport::to_json).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "summary": {"pass": t.pass, "fail": t.fail, "not_applicable": t.not_applicable, "errors": t.errors},
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "group", "subject", "id", "params", "lhs", "relation", "rhs", "verdict", "note"]).expect("in-memory write");
        for it in &self.items {
            let group = it.group.clone().unwrap_or_default();
            if let Some(e) = &it.error {
                w.write_record([it.suite.name(), &group, "", "error", "", "", "", "", "", e]).expect("in-memory write");
            }
            for rec in &it.records {
                for r in &rec.reports {
                    let rel = serde_json::to_value(r.direction).expect("serializable");
                    w.write_record([
                        it.suite.name(),
                        &group,
                        &rec.subject,
                        &r.id,
                        &r.params,
                        &r.lhs.to_string(),
                        rel.as_str().unwrap_or(""),
                        &r.rhs.to_string(),
                        &r.verdict.to_string(),
                        r.note.as_deref().unwrap_or(""),
                    ])
                    .expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("flushed")).expect("utf8")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for it in &self.items {
            s.push_str(&format!("== {} {}\n", it.suite, it.group.as_deref().unwrap_or("-")));
            if let Some(e) = &it.error {
                s.push_str(&format!("  error: {e}\n"));
            }
            for rec in &it.records {
                for r in &rec.reports {
                    s.push_str(&format!("  {r}\n"));
                }
            }
        }
        let t = self.tally();
        s.push_str(&format!("pass {} fail {} n/a {} errors {}\n", t.pass, t.fail, t.not_applicable, t.errors));
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n",
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

/// Build (or load from the cache) the table of `spec` under the enumeration budget.
pub fn obtain_table(cfg: &RunConfig, spec: &GroupSpec) -> Result<(CharacterTable, Option<String>), CacheError> {
    let build = || -> Result<CharacterTable, CacheError> { Ok(build_table(enumerate_with_budget(spec, cfg.enumeration_budget)?)?) };
    let cache = cfg.cache_dir.clone().map(TableCache::new).or_else(TableCache::from_env);
    match cache {
        None => Ok((build()?, None)),
        Some(c) => {
            let (t, prov) = c.load_or_build_with(spec, build)?;
            let warn = match prov {
                Provenance::Rebuilt(why) => Some(format!("cache entry for {spec} rejected ({why}); rebuilt")),
                _ => None,
            };
            Ok((t, warn))
        }
    }
}

fn default_class(table: &CharacterTable) -> Option<usize> {
    let cl = table.classes();
    (0..cl.len()).find(|&c| cl.size(c) > 1)
}

fn run_delta(cfg: &RunConfig) -> Result<Vec<Record>, String> {
    let sol = delta_solver(&cfg.gamma, DELTA_A).map_err(|e| e.to_string())?;
    let two = two_significant(&sol.delta_max);
    let mut out = vec![Record { subject: format!("delta_max={}", show_dec(&sol.delta_max)), reports: sol.certificate }];
    if two > BigRational::from_integer(0.into()) {
        out.push(Record { subject: format!("delta={}", show_dec(&two)), reports: delta_certificate(&cfg.gamma, &two, DELTA_A) });
    }
    Ok(out)
}

fn run_weil(cfg: &RunConfig, table: &CharacterTable) -> Result<Vec<Record>, String> {
    let g = table.group();
    let spec = g.spec().ok_or("no classical spec")?;
    if spec.family != Family::Sp || spec.q % 2 == 0 {
        return Err(format!("{spec} is not Sp(2N, q) with q odd"));
    }
    let n = g.dim() / 2;
    let q = spec.q as i128;
    let order = g.order() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let pairs: Vec<(u32, u32)> = (0..cfg.pairs).map(|_| (rng.gen_range(0..order), rng.gen_range(0..order))).collect();
    let mut out = Vec::new();
    for psi in [Psi::Standard, Psi::Twisted] {
        let m = WeilModel::with_budget(g.field().clone(), n, psi, cfg.model_budget).map_err(|e| e.to_string())?;
        let bad = pairs
            .par_iter()
            .filter(|&&(x, y)| {
                let lhs = m.operator(&g.mat(g.mul(x, y))).expect("symplectic");
                let rhs = m.operator(&g.mat(x)).expect("symplectic").mul(&m.operator(&g.mat(y)).expect("symplectic"));
                lhs != rhs
            })
            .count();
        let params = format!("{spec} {psi:?} {} pairs seed 0", pairs.len());
        let hom = BoundReport::compare("weil-homomorphism", params.clone(), Interval::from_int(bad as i128), Direction::Eq, Interval::from_int(0));
        let cl = table.classes();
        let norms: Vec<BoundReport> = (0..cl.len())
            .into_par_iter()
            .map(|c| {
                let x = cl.rep(c);
                let tr = m.trace(&g.mat(x)).expect("symplectic");
                let want = Rational::from_integer(q.pow(g.fixed_space_dims(x).0 as u32));
                let got = tr.abs2_exact().map(|v| Interval::from_rational(&v)).unwrap_or_else(|| real::abs2(&tr, 128));
                BoundReport::compare("weil-trace-norm", format!("{spec} {psi:?} class {c}"), got, Direction::Eq, Interval::from_rational(&want))
            })
            .collect();
        out.push(Record { subject: params, reports: vec![hom] });
        out.push(Record { subject: format!("{spec} {psi:?} trace norms"), reports: norms });
    }
    Ok(out)
}

fn run_item(cfg: &RunConfig, suite: Suite, table: &CharacterTable) -> Result<Vec<Record>, String> {
    let e = |x: &dyn fmt::Display| x.to_string();
    match suite {
        Suite::Level => {
            let (data, lv) = levels(table).map_err(|x| e(&x))?;
            Ok(singles(level_range_check(table, &lv, &data)))
        }
        Suite::Main3 => {
            let (_, lv) = levels(table).map_err(|x| e(&x))?;
            let reports = main3_check(table, &lv);
            let mut recs: Vec<Record> = Vec::new();
            for r in reports {
                let subject = r.params.split(" level").next().unwrap_or(&r.params).to_string();
                match recs.last_mut() {
                    Some(last) if last.subject == subject => last.reports.push(r),
                    _ => recs.push(Record { subject, reports: vec![r] }),
                }
            }
            Ok(recs)
        }
        Suite::Rank => {
            let (_, lv) = levels(table).map_err(|x| e(&x))?;
            let rk = uranks(table).map_err(|x| e(&x))?;
            Ok(singles(rank_level_checks(table, &lv, &rk).map_err(|x| e(&x))?))
        }
        Suite::Orbits => {
            let mut out = Vec::new();
            for j in 1..=cfg.orbit_j {
                let reports = orbit_checks_with_budget(table.classes(), j, cfg.tuple_budget).map_err(|x| e(&x))?;
                out.push(Record { subject: format!("j={j}"), reports });
            }
            Ok(out)
        }
        Suite::Centralizer => {
            let mut out = singles(centralizer_bound_check(table.classes()).map_err(|x| e(&x))?);
            out.push(Record { subject: "irr-count".into(), reports: vec![irr_count_check(table).map_err(|x| e(&x))?] });
            out.push(Record { subject: "schur".into(), reports: vec![schur_check(table)] });
            Ok(out)
        }
        Suite::Restriction => {
            let label = table.group().label().to_string();
            let embs = embeddings().map_err(|x| e(&x))?;
            let mut out = Vec::new();
            for emb in embs.iter().filter(|m| m.g.group().label() == label) {
                let spec_g = emb.g.group().spec();
                let spec_h = emb.h.group().spec();
                let pairing = match (spec_g.map(|s| s.family), spec_h.map(|s| s.dim)) {
                    (Some(Family::Sp), Some(d)) if d + 2 == emb.g.group().dim() => Some(Pairing::RestrSp),
                    (Some(Family::SO | Family::Omega), Some(d)) if d + 1 == emb.g.group().dim() => Some(Pairing::RestrSo),
                    _ => None,
                };
                let mut reports = sigma_lambda_checks(emb);
                if let Some(p) = pairing {
                    reports.extend(restriction_norm_check(emb, p).map_err(|x| e(&x))?);
                }
                out.push(Record { subject: emb.label.clone(), reports });
            }
            if out.is_empty() {
                return Err(format!("no recorded embedding with ambient group {label}"));
            }
            Ok(out)
        }
        Suite::Walk => {
            let c = cfg.walk_class.or_else(|| default_class(table)).ok_or("abelian group: no non-central class")?;
            let w = walk_report(table, c, cfg.walk_t).map_err(|x| e(&x))?;
            let mut mix = BoundReport::compare(
                "walk-mixing-time",
                format!("{} class {c} threshold {}", w.group, w.threshold),
                Interval::from_int(w.mixing_time.map(i128::from).unwrap_or(-1)),
                Direction::Ge,
                Interval::from_int(0),
            );
            mix = mix.informative(match w.mixing_time {
                Some(t) => format!("L1 distance below threshold from t = {t}"),
                None if w.confined => "walk confined to a proper normal subgroup".to_string(),
                None => format!("not mixed by t = {}", cfg.walk_t),
            });
            let mut out = singles(w.reports);
            out.push(Record { subject: "mixing".into(), reports: vec![mix] });
            Ok(out)
        }
        Suite::ProductOne => {
            let tuple = match &cfg.tuple {
                Some(t) => t.clone(),
                None => vec![default_class(table).ok_or("abelian group: no non-central class")?; 3],
            };
            let r = product_one_report(table, &tuple, Some(cfg.tuple_budget)).map_err(|x| e(&x))?;
            Ok(vec![Record { subject: format!("{:?} N={}", r.classes, r.n), reports: r.reports }])
        }
        Suite::WeilModel => run_weil(cfg, table),
        Suite::Delta => run_delta(cfg),
    }
}

/// Run every (suite, group) pair. Items come back in config order whatever the worker count.
pub fn run_suite(cfg: &RunConfig) -> Result<Bundle, ConfigError> {
    if cfg.workers == 0 {
        return Err(ConfigError::NonPositive("workers".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build().map_err(|e| ConfigError::Value {
        key: "workers".into(),
        value: cfg.workers.to_string(),
        why: e.to_string(),
    })?;
    let needs_tables = cfg.suites.iter().any(|s| !s.is_global());
    let groups: Vec<GroupSpec> = if needs_tables { cfg.groups.clone() } else { Vec::new() };
    pool.install(|| {
        let tables: Vec<Result<(Arc<CharacterTable>, Option<String>), String>> = groups
            .par_iter()
            .map(|g| obtain_table(cfg, g).map(|(t, w)| (Arc::new(t), w)).map_err(|e| e.to_string()))
            .collect();
        let warnings: Vec<String> = tables.iter().filter_map(|t| t.as_ref().ok().and_then(|(_, w)| w.clone())).collect();
        let mut jobs: Vec<(Suite, Option<usize>)> = Vec::new();
        for &s in &cfg.suites {
            if s.is_global() {
                jobs.push((s, None));
            } else {
                jobs.extend((0..groups.len()).map(|i| (s, Some(i))));
            }
        }
        let items: Vec<Item> = jobs
            .par_iter()
            .map(|&(suite, gi)| {
                let group = gi.map(|i| groups[i].to_string());
                let result = match gi {
                    None => run_delta(cfg),
                    Some(i) => match &tables[i] {
                        Ok((t, _)) => run_item(cfg, suite, t),
                        Err(e) => Err(e.clone()),
                    },
                };
                match result {
                    Ok(records) => Item { suite, group, records, error: None },
                    Err(e) => Item { suite, group, records: Vec::new(), error: Some(e) },
                }
            })
            .collect();
        Ok(Bundle { config: cfg.to_json(), items, warnings })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let cfg = RunConfig::parse("groups = Sp(4,3), SL(2,5)\nsuites = main3, delta # trailing\nworkers = 3\ngamma = 0.99\n").unwrap();
        assert_eq!(cfg.groups.len(), 2);
        assert_eq!(cfg.suites, vec![Suite::Main3, Suite::Delta]);
        assert_eq!(cfg.workers, 3);
        assert!(matches!(RunConfig::parse("suites = level, bogus"), Err(ConfigError::UnknownSuite(s)) if s == "bogus"));
        assert!(matches!(RunConfig::parse("tuple_budget = 0"), Err(ConfigError::NonPositive(_))));
        assert!(matches!(RunConfig::parse("colour = red"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(RunConfig::parse("groups = SO(5,2)"), Err(ConfigError::Group(_))));
        assert!(matches!(RunConfig::parse("just words"), Err(ConfigError::Syntax(1))));
    }

    #[test]
    fn empty_and_delta() {
        let b = run_suite(&RunConfig::default()).unwrap();
        assert!(b.items.is_empty());
        assert_eq!(b.exit_code(), 0);
        let mut cfg = RunConfig::default();
        cfg.set("suites", "delta").unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(b.exit_code(), 0);
        assert!(b.items[0].records.iter().any(|r| r.subject == "delta=0.0011" && r.verdict() == Verdict::Pass));
    }
}
