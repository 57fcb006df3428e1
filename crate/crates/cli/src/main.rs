use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use cclab_core::suite::{obtain_table, run_suite, ConfigError, Format, RunConfig, Suite};
use cclab_core::{CharacterTable, GroupSpec};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cclab", version, about = "Exact character tables and bound verification for small classical groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Output format: json, csv or text.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
    /// Directory for cached character tables.
    #[arg(long, env = "CCLAB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    enumeration_budget: Option<String>,
    #[arg(long)]
    model_budget: Option<String>,
    #[arg(long)]
    tuple_budget: Option<String>,
    /// Extra `key=value` settings, as in a config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the character table of a group.
    Table {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run one suite on one or more groups.
    Verify {
        suite: String,
        specs: Vec<String>,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        classes: Option<String>,
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        orbit_j: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Random walk driven by a conjugacy class.
    Walk {
        spec: String,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value = "8")]
        t: String,
        #[command(flatten)]
        common: Common,
    },
    /// Count tuples from given classes with product one.
    ProductOne {
        spec: String,
        #[arg(long)]
        classes: String,
        #[command(flatten)]
        common: Common,
    },
    /// Largest admissible delta for a given gamma.
    Delta {
        #[arg(long, default_value = "0.99")]
        gamma: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a key-value config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Configuration problems exit with 2; everything else that goes wrong is a runtime error.
enum Failure {
    Config(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.into())
    }
}

fn apply_common(cfg: &mut RunConfig, c: &Common) -> Result<(), ConfigError> {
    let pairs = [
        ("format", &c.format),
        ("enumeration_budget", &c.enumeration_budget),
        ("model_budget", &c.model_budget),
        ("tuple_budget", &c.tuple_budget),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    if let Some(w) = c.workers {
        cfg.set("workers", &w.to_string())?;
    }
    if let Some(d) = &c.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    for kv in &c.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| ConfigError::Value {
            key: "--set".into(),
            value: kv.clone(),
            why: "expected KEY=VALUE".into(),
        })?;
        cfg.set(k, v)?;
    }
    Ok(())
}

fn table_json(t: &CharacterTable) -> serde_json::Value {
    let cl = t.classes();
    json!({
        "group": t.group().label(),
        "order": cl.order(),
        "classes": (0..cl.len()).map(|c| json!({
            "rep": cl.rep(c),
            "size": cl.size(c),
            "element_order": cl.element_order(c),
            "centralizer": cl.centralizer_order(c),
        })).collect::<Vec<_>>(),
        "degrees": t.degrees(),
        "characters": t.characters().iter().map(|chi| chi.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn table_text(t: &CharacterTable) -> String {
    let cl = t.classes();
    let mut s = format!("{}: order {}, {} classes\n", t.group().label(), cl.order(), cl.len());
    s.push_str("class  size  ord  |C(g)|\n");
    for c in 0..cl.len() {
        s.push_str(&format!("{c:>5} {:>5} {:>4} {:>7}\n", cl.size(c), cl.element_order(c), cl.centralizer_order(c)));
    }
    for (i, chi) in t.characters().iter().enumerate() {
        let vals: Vec<String> = chi.values.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("chi{i}: {}\n", vals.join("  ")));
    }
    s
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).context("writing output")?;
    out.flush().context("writing output")
}

fn run_bundle(cfg: &RunConfig) -> Result<i32, Failure> {
    let bundle = run_suite(cfg)?;
    for w in &bundle.warnings {
        eprintln!("warning: {w}");
    }
    emit(&bundle.render(cfg.format)).map_err(Failure::Runtime)?;
    Ok(bundle.exit_code())
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    let mut cfg = RunConfig::default();
    match cli.cmd {
        Cmd::Table { spec, common } => {
            apply_common(&mut cfg, &common)?;
            let spec: GroupSpec = spec.parse().map_err(ConfigError::from)?;
            let (t, warn) = obtain_table(&cfg, &spec).map_err(|e| Failure::Runtime(e.into()))?;
            if let Some(w) = warn {
                eprintln!("warning: {w}");
            }
            let text = match cfg.format {
                Format::Text => table_text(&t),
                _ => serde_json::to_string_pretty(&table_json(&t)).expect("serializable") + "\n",
            };
            emit(&text).map_err(Failure::Runtime)?;
            Ok(0)
        }
        Cmd::Verify { suite, specs, gamma, class, t, classes, pairs, orbit_j, common } => {
            let suite: Suite = suite.parse()?;
            cfg.suites = vec![suite];
            cfg.set("groups", &specs.join(";"))?;
            if !suite.is_global() && cfg.groups.is_empty() {
                return Err(Failure::Config(anyhow::anyhow!("suite {suite} needs at least one group")));
            }
            let opts = [("gamma", gamma), ("walk_class", class), ("walk_t", t), ("tuple", classes), ("pairs", pairs), ("orbit_j", orbit_j)];
            for (k, v) in opts {
                if let Some(v) = v {
                    cfg.set(k, &v)?;
                }
            }
            apply_common(&mut cfg, &common)?;
            run_bundle(&cfg)
        }
        Cmd::Walk { spec, class, t, common } => {
            cfg.suites = vec![Suite::Walk];
            cfg.set("groups", &spec)?;
            if let Some(c) = class {
                cfg.set("walk_class", &c)?;
            }
            cfg.set("walk_t", &t)?;
            apply_common(&mut cfg, &common)?;
            run_bundle(&cfg)
        }
        Cmd::ProductOne { spec, classes, common } => {
            cfg.suites = vec![Suite::ProductOne];
            cfg.set("groups", &spec)?;
            cfg.set("tuple", &classes)?;
            apply_common(&mut cfg, &common)?;
            run_bundle(&cfg)
        }
        Cmd::Delta { gamma, common } => {
            cfg.suites = vec![Suite::Delta];
            cfg.set("gamma", &gamma)?;
            apply_common(&mut cfg, &common)?;
            run_bundle(&cfg)
        }
        Cmd::Run { config, common } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))
                .map_err(Failure::Config)?;
            cfg = RunConfig::parse(&text)?;
            apply_common(&mut cfg, &common)?;
            run_bundle(&cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
