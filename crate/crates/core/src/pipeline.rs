//! End-to-end orchestration: load, train, mine, explain, evaluate.
//!
//! Each stage is also exposed on its own so the CLI subcommands can be
//! chained by hand through the JSON artifacts with the same results as a
//! single [`run_pipeline`] call.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::artifacts::{write_json, CfFile, ReportFile};
use crate::cf::{generate_cf_batch, generate_nun_batch, Method};
use crate::classifier::{train_1nn, BlackBoxClassifier};
use crate::dataset::{load_ucr_split, LabelMap, LabeledDataset};
use crate::error::{Error, Result, Stage, StageExt};
use crate::mining::{
    mine_motifs, validate_fractions, MiningConfig, MiningStats, MotifPair, DEFAULT_FRACTIONS,
};

pub const MOTIFS_FILE: &str = "motifs.json";
pub const CFS_FILE: &str = "cfs.json";
pub const REPORT_FILE: &str = "report.json";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClassifierKind {
    /// Reference one-nearest-neighbour model.
    #[default]
    OneNn,
}

impl std::str::FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1nn" => Ok(ClassifierKind::OneNn),
            other => Err(Error::InvalidArgument(format!("unknown classifier {other:?}"))),
        }
    }
}

impl ClassifierKind {
    pub fn train(self, train: &LabeledDataset) -> Box<dyn BlackBoxClassifier> {
        match self {
            ClassifierKind::OneNn => Box::new(train_1nn(train.clone())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub train_path: PathBuf,
    pub test_path: PathBuf,
    pub fractions: Vec<f64>,
    pub method: Method,
    pub classifier: ClassifierKind,
    pub early_abandon: bool,
    pub output_dir: PathBuf,
    pub label_map: Option<LabelMap>,
}

impl RunConfig {
    pub fn new(
        train_path: impl Into<PathBuf>,
        test_path: impl Into<PathBuf>,
        output_dir: impl Into<PathBuf>,
    ) -> Self {
        RunConfig {
            train_path: train_path.into(),
            test_path: test_path.into(),
            fractions: DEFAULT_FRACTIONS.to_vec(),
            method: Method::Mgcf,
            classifier: ClassifierKind::OneNn,
            early_abandon: true,
            output_dir: output_dir.into(),
            label_map: None,
        }
    }

    pub fn mining(&self) -> MiningConfig {
        MiningConfig {
            fractions: self.fractions.clone(),
            early_abandon: self.early_abandon,
        }
    }
}

/// Motifs plus how long mining took.
#[derive(Clone, Debug)]
pub struct Mined {
    pub motifs: MotifPair,
    pub stats: MiningStats,
    pub runtime_seconds: f64,
}

pub fn load_datasets(
    train: &Path,
    test: &Path,
    label_map: Option<&LabelMap>,
) -> Result<(LabeledDataset, LabeledDataset)> {
    load_ucr_split(train, test, label_map).stage(Stage::Dataset)
}

pub fn mine(train: &LabeledDataset, config: &MiningConfig) -> Result<Mined> {
    let started = Instant::now();
    let outcome = mine_motifs(train, config).stage(Stage::Mine)?;
    Ok(Mined {
        motifs: outcome.motifs,
        stats: outcome.stats,
        runtime_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Explains every test series. `motifs` is required for [`Method::Mgcf`].
pub fn explain(
    train: &LabeledDataset,
    test: &LabeledDataset,
    motifs: Option<&MotifPair>,
    method: Method,
    classifier: ClassifierKind,
) -> Result<CfFile> {
    let f = classifier.train(train);
    let batch = match method {
        Method::Mgcf => {
            let motifs = motifs
                .ok_or_else(|| Error::InvalidArgument("the mgcf method needs mined motifs".into()))
                .stage(Stage::Explain)?;
            generate_cf_batch(test.series(), &f, motifs, train)
        }
        Method::Nun => generate_nun_batch(test.series(), &f, train),
    }
    .stage(Stage::Explain)?;
    let mut file = CfFile::from_batch(method, train.name(), &batch);
    let correct = batch
        .counterfactuals
        .iter()
        .zip(test.labels())
        .filter(|(cf, &label)| cf.original_pred == label)
        .count();
    file.metadata.classifier_accuracy = Some(correct as f64 / test.len() as f64);
    Ok(file)
}

pub fn evaluate_cfs(cfs: &CfFile, mining_runtime_seconds: Option<f64>) -> Result<ReportFile> {
    let report = cfs.evaluate().stage(Stage::Evaluate)?;
    let mut file = ReportFile::new(cfs.method, cfs.dataset.clone(), report, mining_runtime_seconds);
    file.metadata.classifier_accuracy = cfs.metadata.classifier_accuracy;
    Ok(file)
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub motifs: MotifPair,
    pub mining_stats: MiningStats,
    pub cfs: CfFile,
    pub report: ReportFile,
}

/// Runs every stage and writes `motifs.json`, `cfs.json` and `report.json`
/// into the output directory.
pub fn run_pipeline(cfg: &RunConfig) -> Result<PipelineOutput> {
    validate_fractions(&cfg.fractions).stage(Stage::Mine)?;
    let (train, test) = load_datasets(&cfg.train_path, &cfg.test_path, cfg.label_map.as_ref())?;
    let mined = mine(&train, &cfg.mining())?;
    let cfs = explain(&train, &test, Some(&mined.motifs), cfg.method, cfg.classifier)?;
    let report = evaluate_cfs(&cfs, Some(mined.runtime_seconds))?;

    let out = &cfg.output_dir;
    std::fs::create_dir_all(out)
        .map_err(|e| Error::Io {
            path: out.clone(),
            source: e,
        })
        .stage(Stage::Report)?;
    write_json(out.join(MOTIFS_FILE), &mined.motifs).stage(Stage::Report)?;
    write_json(out.join(CFS_FILE), &cfs).stage(Stage::Report)?;
    write_json(out.join(REPORT_FILE), &report).stage(Stage::Report)?;

    Ok(PipelineOutput {
        motifs: mined.motifs,
        mining_stats: mined.stats,
        cfs,
        report,
    })
}
