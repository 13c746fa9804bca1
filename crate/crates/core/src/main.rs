use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use panelboost::io::{self, GenSpec, Provenance};
use panelboost::modelsel::{SweepGrid, SweepRow};
use panelboost::{
    cumulative, evaluate, fit, fit_on_split, predict, sweep, BoostConfig, Error, Metrics,
    SplitSpec, TransformKind,
};

/// Sparse panel selection and forecasting for additive time series.
#[derive(Parser)]
#[command(name = "panelboost", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic occupancy panel as CSV.
    Gen(GenArgs),
    /// Fit a panel model and write it as JSON.
    Fit(FitArgs),
    /// Apply a fitted model to a panel CSV.
    Predict(PredictArgs),
    /// Grid-search metaparameters on the validation segment.
    Sweep(SweepArgs),
    /// Score a prediction file against the target of a panel CSV.
    Eval(EvalArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    days: usize,
    #[arg(long)]
    archetypes: usize,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    model_out: PathBuf,
    #[arg(long)]
    panel_size: usize,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    lbound: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value = "reciprocal", value_parser = parse_transform)]
    transform: TransformKind,
    #[arg(long)]
    with_replacement: bool,
    #[arg(long, requires = "val")]
    train: Option<f64>,
    #[arg(long, requires = "train")]
    val: Option<f64>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    cumulative: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    train: f64,
    #[arg(long)]
    val: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    panel_sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    lbounds: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_transform)]
    transforms: Vec<TransformKind>,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

fn parse_transform(s: &str) -> Result<TransformKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Fit(a) => run_fit(a),
        Command::Predict(a) => run_predict(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Eval(a) => run_eval(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e.to_string().replace('\n', " "));
            match e {
                Error::InvalidConfig(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run_gen(a: GenArgs) -> panelboost::Result<()> {
    let spec = GenSpec {
        n_series: a.n,
        days: a.days,
        archetypes: a.archetypes,
        noise_sd: a.noise,
        seed: a.seed,
    };
    let (family, _) = io::generate(&spec)?;
    io::write_panel_csv(&a.out, &family, None)?;
    println!(
        "wrote {} series x {} days to {}",
        family.len(),
        family.grid().count(),
        a.out.display()
    );
    Ok(())
}

fn read_data(path: &Path) -> panelboost::Result<(Vec<u8>, io::PanelData)> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let data = io::parse_panel_csv(&bytes, &path.display().to_string())?;
    Ok((bytes, data))
}

fn run_fit(a: FitArgs) -> panelboost::Result<()> {
    let config = BoostConfig {
        panel_size: a.panel_size,
        lbound: a.lbound,
        alpha: a.alpha,
        transform: a.transform,
        with_replacement: a.with_replacement,
    };
    config.validate()?;
    let (bytes, data) = read_data(&a.data)?;
    let (model, trace) = match (a.train, a.val) {
        (Some(train), Some(val)) => {
            let spec = SplitSpec::new(train, val)?;
            let (model, trace, _) = fit_on_split(&data.family, &data.target, &spec, &config)?;
            (model, trace)
        }
        _ => fit(&data.family, &data.target, &config)?,
    };
    io::write_model(&a.model_out, &model, &Provenance::for_input(&bytes))?;
    for r in &trace.records {
        println!(
            "{}\t{}\trho={:.6}\tscore={:.6}\tsse={:.6e}",
            r.iteration, r.member_id, r.raw_rho, r.score, r.squared_error_after
        );
    }
    if model.stopped_early() {
        println!("stopped early after {} terms", model.terms().len());
    }
    Ok(())
}

fn run_predict(a: PredictArgs) -> panelboost::Result<()> {
    let (_, data) = read_data(&a.data)?;
    let model = io::read_model(&a.model)?.model;
    let prediction = predict(&model, &data.family)?;
    let grid = data.family.grid();
    let cum = if a.cumulative {
        Some(cumulative(&prediction, grid.step())?)
    } else {
        None
    };
    io::write_prediction_csv(&a.out, grid, &prediction, cum.as_ref())
}

fn opt(v: Option<f64>) -> String {
    v.map(io::format_value).unwrap_or_default()
}

fn metric_cells(m: &Metrics) -> [String; 5] {
    [
        io::format_value(m.rmse),
        io::format_value(m.mae),
        opt(m.pearson),
        opt(m.psi),
        io::format_value(m.cumulative_abs_error),
    ]
}

const SWEEP_HEADER: &str = "panel_size,lbound,alpha,transform,status,stopped_early,n_terms,\
train_rmse,train_mae,train_pearson,train_psi,train_cumulative_abs_error,\
val_rmse,val_mae,val_pearson,val_psi,val_cumulative_abs_error,best,members";

fn sweep_line(row: &SweepRow, best: bool) -> String {
    let c = &row.config;
    let mut cells = vec![
        c.panel_size.to_string(),
        io::format_value(c.lbound),
        io::format_value(c.alpha),
        c.transform.to_string(),
    ];
    match &row.outcome {
        Ok(f) => {
            cells.push("ok".into());
            cells.push(f.stopped_early.to_string());
            cells.push(f.n_terms.to_string());
            cells.extend(metric_cells(&f.train));
            cells.extend(metric_cells(&f.validation));
            cells.push(u8::from(best).to_string());
            cells.push(f.members.join(" "));
        }
        Err(code) => {
            cells.push((*code).into());
            cells.extend(std::iter::repeat_n(String::new(), 12));
            cells.push("0".into());
            cells.push(String::new());
        }
    }
    cells.join(",")
}

fn run_sweep(a: SweepArgs) -> panelboost::Result<()> {
    let split = SplitSpec::new(a.train, a.val)?;
    let grid = SweepGrid {
        panel_sizes: a.panel_sizes,
        lbounds: a.lbounds,
        alphas: a.alphas,
        transforms: a.transforms,
    };
    grid.validate()?;
    let (_, data) = read_data(&a.data)?;
    let result = sweep(&data.family, &data.target, &split, &grid)?;
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for (i, row) in result.rows.iter().enumerate() {
        out.push_str(&sweep_line(row, i == result.best));
        out.push('\n');
    }
    io::write_atomic(&a.report, out.as_bytes())?;
    let best = result.best_row();
    println!(
        "best: panel_size={} lbound={} alpha={} transform={}",
        best.config.panel_size, best.config.lbound, best.config.alpha, best.config.transform
    );
    Ok(())
}

fn run_eval(a: EvalArgs) -> panelboost::Result<()> {
    let (pred_grid, prediction) = io::read_prediction_csv(&a.pred)?;
    let (_, data) = read_data(&a.data)?;
    let step = data.family.grid().step();
    if pred_grid.count() != data.target.len() {
        return Err(Error::ShapeError {
            expected: data.target.len(),
            actual: pred_grid.count(),
        });
    }
    let rec = evaluate(&prediction, &data.target, TransformKind::Reciprocal, step)?;
    let witch = evaluate(&prediction, &data.target, TransformKind::Witch, step)?;
    let out = format!(
        "rmse,mae,pearson,psi_reciprocal,psi_witch,cumulative_abs_error\n{},{},{},{},{},{}\n",
        io::format_value(rec.rmse),
        io::format_value(rec.mae),
        opt(rec.pearson),
        opt(rec.psi),
        opt(witch.psi),
        io::format_value(rec.cumulative_abs_error),
    );
    io::write_atomic(&a.report, out.as_bytes())
}
