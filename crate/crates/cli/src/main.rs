use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use echotrace::pipeline::{self, PipelineConfig};
use echotrace::synth::{dump_lines, planted_triples, PlantedConfig};

/// Word-level echoing pipeline over delta-awarded conversation dumps.
#[derive(Parser)]
#[command(name = "echotrace", version)]
struct Cli {
    /// Pipeline config (TOML, or JSON with a .json extension).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for every random draw in the run.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract triples from dumps, split by time, write adapter input.
    Ingest,
    /// Annotate, fit training statistics, write feature matrices.
    Featurize,
    /// Grid-search a model on validation F1.
    Train,
    /// Score the trained model on the test split.
    Evaluate,
    /// Descriptives, document-frequency deciles, significance tests.
    Stats,
    /// Token streams with per-token features for sequence models.
    ExportAugmented,
    /// Write a synthetic dump with a planted echo rule.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 300)]
        triples: usize,
    },
}

/// Relative paths resolve against `ECHOTRACE_DATA_DIR`, else the config's
/// directory.
fn load_config(path: Option<&Path>, seed: Option<u64>) -> Result<PipelineConfig> {
    let path = path.context("--config is required for this command")?;
    let cfg = PipelineConfig::load(path).with_context(|| format!("reading config {}", path.display()))?;
    let root = match std::env::var_os("ECHOTRACE_DATA_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let mut cfg = cfg.resolve(&root);
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Command::Synth { out, triples } = &cli.command {
        let cfg = PlantedConfig {
            n_triples: *triples,
            seed: cli.seed.unwrap_or(7),
            ..Default::default()
        };
        let mut text = dump_lines(&planted_triples(&cfg), cfg.seed).join("\n");
        text.push('\n');
        echotrace::io::write_atomic(out, text.as_bytes())?;
        return Ok(());
    }
    let cfg = load_config(cli.config.as_deref(), cli.seed)?;
    match cli.command {
        Command::Ingest => {
            let s = pipeline::ingest(&cfg)?;
            println!("triples: train {} / validation {} / test {}", s.train, s.validation, s.test);
        }
        Command::Featurize => {
            for (split, n) in pipeline::featurize(&cfg)? {
                println!("{split}: {n} candidate rows");
            }
        }
        Command::Train => {
            let model = pipeline::train(&cfg)?;
            println!("trained {:?} on {} features", model.kind(), model.feature_indices.len());
        }
        Command::Evaluate => {
            let r = pipeline::evaluate_stage(&cfg)?;
            let opt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.3}"));
            println!(
                "F1 all {:.3}  content {}  stop {}  (random {:.3} / {} / {})",
                r.f1_all,
                opt(r.f1_content),
                opt(r.f1_stop),
                r.random_f1_all,
                opt(r.random_f1_content),
                opt(r.random_f1_stop)
            );
        }
        Command::Stats => pipeline::stats_stage(&cfg)?,
        Command::ExportAugmented => {
            let n = pipeline::export_augmented(&cfg)?;
            println!("{n} triples exported");
        }
        Command::Synth { .. } => unreachable!(),
    }
    Ok(())
}
