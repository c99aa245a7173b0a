use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use ifs_cavity::evolution::{evolve, EvolutionMode};
use ifs_cavity::sweep::{compare_modes, run_sweep, FigurePreset, SweepConfig, SweepMode, Witness, WitnessSeries};
use serde_json::{Map, Value};

use crate::args::{
    Cli, Command, CompareArgs, EvolveArgs, FiguresArgs, Format, LambdaArgs, ModeArg, OutputFlags, SweepArgs,
};
use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::fsio::write_atomic;
use crate::manifest::{manifest_path_for, ModeFlags, RunManifest};
use crate::svg::emit_svg;
use crate::table::{format_number, witness_table, Cell, Table};

/// Runs one parsed invocation; data goes to `stdout` unless `--out` is given.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Lambda(args) => lambda(args, stdout),
        Command::Evolve(args) => evolve_cmd(args, stdout),
        Command::Mandel(args) => sweep_cmd("mandel", Witness::Mandel, args, stdout),
        Command::Squeeze(args) => sweep_cmd("squeeze", Witness::Squeezing, args, stdout),
        Command::Figures(args) => figures(args),
        Command::Compare(args) => compare(args, stdout),
    }
}

struct Delivery<'a> {
    output: &'a OutputFlags,
    table: Table,
    extra: Map<String, Value>,
    plot: Option<(PathBuf, String)>,
}

impl Delivery<'_> {
    fn send(self, mut manifest: RunManifest, started: Instant, stdout: &mut dyn Write) -> CliResult<()> {
        if let Some(out) = &self.output.out {
            manifest.record_output(out);
        }
        if let Some((path, _)) = &self.plot {
            manifest.record_output(path);
        }
        let sidecar = self
            .output
            .out
            .as_deref()
            .or(self.plot.as_ref().map(|(p, _)| p.as_path()))
            .map(manifest_path_for);
        if let Some(path) = &sidecar {
            manifest.record_output(path);
        }
        manifest.finish(started.elapsed());

        let body = match self.output.format {
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("rows".into(), self.table.to_json_rows());
                obj.extend(self.extra);
                obj.insert("manifest".into(), manifest.to_value());
                let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("json output");
                text.push('\n');
                text
            }
        };
        match &self.output.out {
            Some(path) => write_atomic(path, body.as_bytes())?,
            None => stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))?,
        }
        if let Some((path, svg)) = &self.plot {
            write_atomic(path, svg.as_bytes())?;
        }
        if let Some(path) = &sidecar {
            manifest.write(path)?;
        }
        Ok(())
    }
}

fn manifest_for(command: &str, config: &SweepConfig) -> RunManifest {
    RunManifest::new(
        command,
        serde_json::to_value(config).expect("config serializes"),
        ModeFlags::of(config),
    )
}

fn lambda(args: LambdaArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let started = Instant::now();
    let config = Settings::from_flags(&args.model)?.resolve(vec![Witness::Mandel])?;
    let seq = config.weight_sequence()?;
    let mut table = Table::new(&["n", "lambda", "ratio"]);
    for n in 0..=config.n_max.min(seq.max_index()) {
        table.push(vec![Cell::Int(n), seq.weight(n)?.into(), seq.ratio(n)?.into()]);
    }
    Delivery {
        output: &args.output,
        table,
        extra: Map::new(),
        plot: None,
    }
    .send(manifest_for("lambda", &config), started, stdout)
}

fn evolve_cmd(args: EvolveArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let started = Instant::now();
    let config = Settings::from_flags(&args.model)?.resolve(vec![Witness::Mandel, Witness::Squeezing])?;
    let params = config.model()?;
    let mut table = Table::new(&["gt", "mode", "n", "ca_re", "ca_im", "cb_re", "cb_im", "cc_re", "cc_im"]);
    for &mode in &config.modes {
        let route = match mode {
            SweepMode::Paper => config.paper_mode(),
            SweepMode::Oracle => EvolutionMode::OracleOde,
        };
        let amps = evolve(route, &params, args.gt / config.g)?;
        for (n, b) in amps.blocks() {
            table.push(vec![
                args.gt.into(),
                mode.label().into(),
                Cell::Int(n),
                b.ca.re.into(),
                b.ca.im.into(),
                b.cb.re.into(),
                b.cb.im.into(),
                b.cc.re.into(),
                b.cc.im.into(),
            ]);
        }
    }
    let mut manifest = manifest_for("evolve", &config);
    manifest.config["gt"] = Value::from(args.gt);
    Delivery {
        output: &args.output,
        table,
        extra: Map::new(),
        plot: None,
    }
    .send(manifest, started, stdout)
}

fn describe(series: &WitnessSeries) -> String {
    let s = &series.summary;
    let min = match (s.min, s.argmin_gt) {
        (Some(m), Some(gt)) => format!("min {} at gt {}", format_number(m), format_number(gt)),
        _ => "no defined values".to_owned(),
    };
    format!(
        "{}/{}: {min}, {:.1}% of grid below zero",
        series.witness,
        series.mode,
        100.0 * s.fraction_below_zero
    )
}

fn plot_title(config: &SweepConfig, witness: Witness) -> String {
    let q = config
        .weights
        .q()
        .map(|q| format!(", q={}", format_number(q)))
        .unwrap_or_default();
    format!(
        "{} ({}{q}, nbar={}, k={})",
        match witness {
            Witness::Mandel => "Mandel Q",
            Witness::Squeezing => "optimal squeezing",
        },
        config.weights.label(),
        format_number(config.nbar),
        format_number(config.k)
    )
}

fn sweep_cmd(command: &str, witness: Witness, args: SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let started = Instant::now();
    let config = Settings::from_flags(&args.model)?.resolve(vec![witness])?;
    let series = run_sweep(&config)?;
    for s in &series {
        eprintln!("{}", describe(s));
    }
    let plot = match &args.plot {
        Some(path) => Some((path.clone(), emit_svg(&series, &plot_title(&config, witness))?)),
        None => None,
    };
    Delivery {
        output: &args.output,
        table: witness_table(&series),
        extra: Map::new(),
        plot,
    }
    .send(manifest_for(command, &config), started, stdout)
}

fn compare(args: CompareArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let started = Instant::now();
    let mut settings = Settings::from_flags(&args.model)?;
    settings.mode = Some(ModeArg::Both);
    let config = settings.resolve(vec![Witness::Mandel, Witness::Squeezing])?;
    let report = compare_modes(&config)?;
    eprintln!(
        "max |dQ| = {} at gt {}; max |dS| = {} at gt {}; max oracle norm drift = {}",
        format_number(report.max_q_deviation),
        format_number(report.argmax_q_gt),
        format_number(report.max_s_deviation),
        format_number(report.argmax_s_gt),
        format_number(report.max_oracle_norm_drift)
    );
    let mut table = Table::new(&[
        "gt",
        "q_paper",
        "q_oracle",
        "q_deviation",
        "s_paper",
        "s_oracle",
        "s_deviation",
        "paper_norm_drift",
        "oracle_norm_drift",
    ]);
    for r in &report.rows {
        table.push(vec![
            r.gt.into(),
            r.q_paper.into(),
            r.q_oracle.into(),
            r.q_deviation.into(),
            r.s_paper.into(),
            r.s_oracle.into(),
            r.s_deviation.into(),
            r.paper_norm_drift.into(),
            r.oracle_norm_drift.into(),
        ]);
    }
    let mut extra = Map::new();
    extra.insert(
        "summary".into(),
        serde_json::json!({
            "max_q_deviation": report.max_q_deviation,
            "argmax_q_gt": report.argmax_q_gt,
            "max_s_deviation": report.max_s_deviation,
            "argmax_s_gt": report.argmax_s_gt,
            "max_oracle_norm_drift": report.max_oracle_norm_drift,
        }),
    );
    Delivery {
        output: &args.output,
        table,
        extra,
        plot: None,
    }
    .send(manifest_for("compare", &config), started, stdout)
}

/// Preset configs with the `figures` overrides applied.
pub fn figure_configs(args: &FiguresArgs) -> CliResult<Vec<(String, SweepConfig)>> {
    let settings = Settings {
        mode: args.mode,
        ..Settings::default()
    };
    FigurePreset::all()
        .into_iter()
        .map(|preset| {
            let base = preset.config();
            let config = SweepConfig {
                points: args.points.unwrap_or(base.points),
                gt_max: args.gt_max.unwrap_or(base.gt_max),
                n_max: args.nmax.unwrap_or(base.n_max),
                modes: settings.modes(),
                ..base
            };
            config.validate()?;
            Ok((preset.name(), config))
        })
        .collect()
}

fn figures(args: FiguresArgs) -> CliResult<()> {
    let started = Instant::now();
    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::io(&args.out_dir, e))?;
    let configs = figure_configs(&args)?;
    let mut echo = Map::new();
    let mut outputs: Vec<PathBuf> = Vec::new();
    for (name, config) in &configs {
        let series = run_sweep(config)?;
        for s in &series {
            eprintln!("{name} {}", describe(s));
        }
        let csv_path = args.out_dir.join(format!("{name}.csv"));
        let svg_path = args.out_dir.join(format!("{name}.svg"));
        write_atomic(&csv_path, witness_table(&series).to_csv().as_bytes())?;
        let title = format!("{name}: {}", plot_title(config, config.witnesses[0]));
        write_atomic(&svg_path, emit_svg(&series, &title)?.as_bytes())?;
        outputs.push(csv_path);
        outputs.push(svg_path);
        echo.insert(name.clone(), serde_json::to_value(config).expect("config serializes"));
    }
    let first = &configs[0].1;
    let mut manifest = RunManifest::new("figures", Value::Object(echo), ModeFlags::of(first));
    manifest.modes.paper_closed_form = "paper-closed-form for k = 0, paper-lossy for k > 0".into();
    let manifest_path = args.out_dir.join("manifest.json");
    for path in outputs.iter().map(PathBuf::as_path).chain([manifest_path.as_path()]) {
        manifest.record_output(path);
    }
    manifest.finish(started.elapsed());
    manifest.write(&manifest_path)
}
