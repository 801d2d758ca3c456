//! Command-line surface. Exit codes: 0 success, 1 runtime error,
//! 2 usage error (handled by the argument parser).

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tscl_core::clustering::{
    self, AveragingMethod, ClustererKind, ClusteringConfig, InitMethod,
};
use tscl_core::stats::{emit_cd_output, holm_cliques, ResultsTable};
use tscl_core::{distances, metrics, z_normalize, DistanceKind, DistanceSpec, TimeSeries};

use crate::collate::{collate, collect_reports};
use crate::experiment::{run_experiment, ExperimentSpec};
use crate::results::fmt_sig6;
use crate::ucr::{load_series, load_ucr_dataset};

#[derive(Parser)]
#[command(name = "tscl", version, about = "Elastic-distance time series clustering toolkit")]
pub struct Cli {
    /// Size of the thread pool for parallel distance computation.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct DistArgs {
    /// Distance measure: ed, dtw, ddtw, wdtw, wddtw, lcss, edr, erp, msm, twe.
    #[arg(long, default_value = "dtw")]
    pub metric: String,
    /// Sakoe-Chiba window fraction (dtw/ddtw).
    #[arg(long, default_value_t = 0.2)]
    pub window: f64,
    /// Logistic weight steepness (wdtw/wddtw).
    #[arg(long = "g", default_value_t = 0.05)]
    pub g: f64,
    /// Match threshold (lcss/edr).
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    /// Gap reference value (erp).
    #[arg(long, default_value_t = 0.05)]
    pub gap: f64,
    /// Split/merge cost (msm).
    #[arg(long, default_value_t = 1.0)]
    pub cost: f64,
    /// Stiffness (twe).
    #[arg(long, default_value_t = 0.05)]
    pub nu: f64,
    /// Edit penalty (twe).
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Divide the EDR edit count by the series length.
    #[arg(long)]
    pub edr_normalize: bool,
}

impl DistArgs {
    pub fn spec(&self) -> anyhow::Result<DistanceSpec> {
        let kind: DistanceKind = self
            .metric
            .parse()
            .with_context(|| format!("unknown metric {:?}", self.metric))?;
        let mut spec = DistanceSpec::new(kind);
        spec.window = self.window;
        spec.weight = self.g;
        spec.epsilon = self.epsilon;
        spec.gap = self.gap;
        spec.cost = self.cost;
        spec.nu = self.nu;
        spec.lambda = self.lambda;
        spec.edr_normalize = self.edr_normalize;
        Ok(spec)
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ClustererArg {
    Kmeans,
    Kmedoids,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum AveragingArg {
    Mean,
    Dba,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum InitArg {
    Forgy,
    RandomPartition,
}

#[derive(Args, Clone)]
pub struct ClusterArgs {
    #[arg(long, value_enum, default_value_t = ClustererArg::Kmeans)]
    pub clusterer: ClustererArg,
    /// Exemplar update for k-means.
    #[arg(long, value_enum, default_value_t = AveragingArg::Mean)]
    pub averaging: AveragingArg,
    /// Number of clusters; 0 means "number of distinct train labels".
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[arg(long, default_value_t = 300)]
    pub max_iters: usize,
    /// Base random seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = InitArg::Forgy)]
    pub init: InitArg,
    /// Skip z-normalization of every series.
    #[arg(long)]
    pub no_normalize: bool,
}

impl ClusterArgs {
    pub fn config(&self, spec: DistanceSpec) -> ClusteringConfig {
        let clusterer = match self.clusterer {
            ClustererArg::Kmeans => ClustererKind::KMeans,
            ClustererArg::Kmedoids => ClustererKind::KMedoids,
        };
        let mut config = ClusteringConfig::new(self.k, clusterer, spec);
        config.averaging = match self.averaging {
            AveragingArg::Mean => AveragingMethod::Mean,
            AveragingArg::Dba => AveragingMethod::Dba,
        };
        config.restarts = self.restarts;
        config.max_iters = self.max_iters;
        config.seed = self.seed;
        config.init = match self.init {
            InitArg::Forgy => InitMethod::Forgy,
            InitArg::RandomPartition => InitMethod::RandomPartition,
        };
        config
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Distance between two single-series files.
    Dist {
        #[command(flatten)]
        dist: DistArgs,
        /// Also print the DTW alignment path.
        #[arg(long)]
        path: bool,
        a: PathBuf,
        b: PathBuf,
    },
    /// Pairwise distance matrix of a dataset.
    Pairwise {
        #[command(flatten)]
        dist: DistArgs,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        data: PathBuf,
    },
    /// Fit a clusterer on one dataset and report metrics.
    Cluster {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        cluster: ClusterArgs,
        data: PathBuf,
    },
    /// Full train/test experiment writing results files.
    Experiment {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        cluster: ClusterArgs,
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        resample: u64,
        #[arg(long)]
        overwrite: bool,
        /// Record wall-clock timings in the results files (breaks
        /// byte-for-byte reproducibility).
        #[arg(long)]
        timings: bool,
    },
    /// Merge results directories into per-metric score tables.
    Collate {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "test")]
        split: String,
        dirs: Vec<PathBuf>,
    },
    /// Rank algorithms over datasets with Wilcoxon/Holm cliques.
    Rank {
        #[arg(long, default_value = "clacc")]
        metric: String,
        #[arg(long, default_value = "test")]
        split: String,
        /// Write the structured summary as JSON.
        #[arg(long)]
        summary: Option<PathBuf>,
        dirs: Vec<PathBuf>,
    },
    /// Time repeated distance calls on random series.
    Bench {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 1000)]
        length: usize,
        #[arg(long, default_value_t = 200)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn table_csv(table: &ResultsTable) -> String {
    let mut out = String::new();
    out.push_str(&format!("dataset,{}\n", table.algorithm_names.join(",")));
    for (d, row) in table.dataset_names.iter().zip(&table.scores) {
        let cells: Vec<String> = row.iter().map(|&v| fmt_sig6(v)).collect();
        out.push_str(&format!("{d},{}\n", cells.join(",")));
    }
    out
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("failed to size the thread pool")?;
    }
    match cli.command {
        Command::Dist { dist, path, a, b } => {
            let spec = dist.spec()?;
            let sa = load_series(&a)?;
            let sb = load_series(&b)?;
            let d = distances::distance(&sa, &sb, &spec)?;
            println!("{d}");
            if path {
                if spec.kind != DistanceKind::Dtw {
                    bail!("--path is only available for dtw");
                }
                let (p, _) = distances::dtw_alignment_path(&sa, &sb, &spec)?;
                let pairs: Vec<String> =
                    p.pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
                println!("{}", pairs.join(" "));
            }
        }
        Command::Pairwise { dist, out, data } => {
            let spec = dist.spec()?;
            let dataset = load_ucr_dataset(&data)?;
            let matrix = distances::pairwise_distance(&dataset, None, &spec)?;
            let mut text = String::new();
            for row in &matrix {
                let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                text.push_str(&cells.join(","));
                text.push('\n');
            }
            match out {
                Some(p) => std::fs::write(&p, text)
                    .with_context(|| format!("cannot write {}", p.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Cluster {
            dist,
            cluster,
            data,
        } => {
            let spec = dist.spec()?;
            let mut dataset = load_ucr_dataset(&data)?;
            if !cluster.no_normalize {
                dataset = dataset.map_series(|s| Ok(z_normalize(s)))?;
            }
            let mut config = cluster.config(spec);
            if config.k == 0 {
                config.k = dataset
                    .num_classes()
                    .context("dataset has no labels, pass an explicit --k")?;
            }
            let model = clustering::fit(&dataset, &config)?;
            println!("inertia {}", fmt_sig6(model.inertia));
            println!("iterations {}", model.iterations_run);
            println!("converged {}", model.converged);
            if let Some(labels) = dataset.labels() {
                println!(
                    "clacc {}",
                    fmt_sig6(metrics::clustering_accuracy(labels, &model.assignments)?)
                );
                println!(
                    "ari {}",
                    fmt_sig6(metrics::adjusted_rand_index(labels, &model.assignments)?)
                );
                println!(
                    "ami {}",
                    fmt_sig6(metrics::adjusted_mutual_information(
                        labels,
                        &model.assignments
                    )?)
                );
            }
            match metrics::davies_bouldin(dataset.series(), &model.assignments, config.k) {
                Ok(db) => println!("db {}", fmt_sig6(db)),
                Err(e) => println!("db undefined ({e})"),
            }
        }
        Command::Experiment {
            dist,
            cluster,
            train,
            test,
            out,
            resample,
            overwrite,
            timings,
        } => {
            let spec = dist.spec()?;
            let experiment = ExperimentSpec {
                train,
                test,
                clustering: cluster.config(spec),
                normalize: !cluster.no_normalize,
                resample,
                base_seed: cluster.seed,
                out_dir: out,
                overwrite,
                record_timings: timings,
            };
            let (train_report, test_report) = run_experiment(&experiment)?;
            eprintln!(
                "train {} clacc {}",
                train_report.dataset,
                fmt_sig6(train_report.clacc)
            );
            if let Some(r) = test_report {
                eprintln!("test {} clacc {}", r.dataset, fmt_sig6(r.clacc));
            }
        }
        Command::Collate { out, split, dirs } => {
            let reports = collect_reports(&dirs)?;
            let tables = collate(&reports, &split)?;
            std::fs::create_dir_all(&out)
                .with_context(|| format!("cannot create {}", out.display()))?;
            for (metric, table) in &tables {
                let p = out.join(format!("{metric}.csv"));
                std::fs::write(&p, table_csv(table))
                    .with_context(|| format!("cannot write {}", p.display()))?;
            }
        }
        Command::Rank {
            metric,
            split,
            summary,
            dirs,
        } => {
            let reports = collect_reports(&dirs)?;
            let tables = collate(&reports, &split)?;
            let mut table = tables
                .get(&metric)
                .with_context(|| format!("unknown metric {metric:?}"))?
                .clone();
            if metric == "db" {
                // Davies-Bouldin is lower-is-better; ranking expects higher
                for row in &mut table.scores {
                    for v in row.iter_mut() {
                        *v = -*v;
                    }
                }
            }
            let analysis = holm_cliques(&table, 0.05)?;
            let (text, cd) = emit_cd_output(&analysis);
            print!("{text}");
            if let Some(p) = summary {
                std::fs::write(&p, serde_json::to_string_pretty(&cd)?)
                    .with_context(|| format!("cannot write {}", p.display()))?;
            }
        }
        Command::Bench {
            dist,
            length,
            reps,
            seed,
        } => {
            let spec = dist.spec()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut series = |_| -> TimeSeries {
                TimeSeries::new((0..length).map(|_| rng.gen_range(-2.0..2.0)).collect())
                    .expect("non-empty finite series")
            };
            let pairs: Vec<(TimeSeries, TimeSeries)> =
                (0..reps).map(|i| (series(i), series(i))).collect();
            let start = Instant::now();
            let mut sink = 0.0;
            for (a, b) in &pairs {
                sink += distances::distance(a, b, &spec)?;
            }
            let secs = start.elapsed().as_secs_f64();
            println!("{secs:.3}");
            eprintln!("{reps} x {} at length {length}, checksum {sink:.3}", spec.kind);
        }
    }
    Ok(())
}
