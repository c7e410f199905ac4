//! Command-line front end: parse design files, run analyses and sweeps,
//! emit machine-readable reports.
//!
//! Exit codes: 0 ok, 2 schema error, 3 no mode in window, 4 gain target
//! unreachable, 5 infeasible design.

mod design_file;
mod output;

use clap::{Parser, Subcommand};
use serde::Serialize;
use std::f64::consts::TAU;

use threewave::element::ComplexFrequency;
use threewave::error::Error;
use threewave::pump::{
    gamma3_linear, gamma3_pumped, signal_response, solve_pump_for_gain, y_nl, OperatingPoint,
};
use threewave::resonance::{find_modes, mode_summary, ModeSearchOptions, ModeSummary};
use threewave::synthesis::{evaluate_design, flux_sweep, optimize, NetworkSpec, OptimizeSettings};

use design_file::DesignFile;
use output::{emit, par_map_indexed, sig12, Csv};

#[derive(Debug)]
pub struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    pub fn schema(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn no_mode() -> Self {
        Self { code: 3, message: "no resonant mode in the requested window".into() }
    }

    pub fn unreachable_gain(detail: String) -> Self {
        Self { code: 4, message: detail }
    }

    pub fn infeasible(detail: String) -> Self {
        Self { code: 5, message: detail }
    }

    fn internal(detail: String) -> Self {
        // Unexpected evaluation failures surface as schema-class errors:
        // the inputs demanded something the model cannot evaluate.
        Self { code: 2, message: detail }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoMode => CliError::no_mode(),
            Error::UnreachableGain { .. } => CliError::unreachable_gain(e.to_string()),
            Error::Schema { .. } | Error::InvalidElement { .. } => CliError::schema(e.to_string()),
            other => CliError::internal(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "threewave",
    about = "Frequency-domain analysis and synthesis of three-wave-mixing Josephson parametric amplifiers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate resonant modes and their per-port coupling rates.
    Modes {
        /// Design file (JSON, version "1").
        design: String,
        /// Search window in Hz as "lo,hi"; defaults to the design targets.
        #[arg(long, value_parser = parse_window)]
        window: Option<(f64, f64)>,
        /// Emit a JSON array instead of CSV.
        #[arg(long)]
        json: bool,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Solve the pump for a gain target and sweep the signal frequency.
    GainSweep {
        design: String,
        /// Reflection gain target in dB at the mode center.
        #[arg(long, default_value_t = 20.0)]
        pump_gain_db: f64,
        /// Sweep span in Hz, centered on the mode (file default otherwise).
        #[arg(long)]
        span: Option<f64>,
        /// Number of sweep points (file default otherwise).
        #[arg(long)]
        points: Option<usize>,
        /// Evaluate the unpumped (linear) response instead.
        #[arg(long)]
        unpumped: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Optimize filter prototypes against the design targets.
    Design {
        design: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Total objective-evaluation budget across restarts.
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        #[arg(long, default_value_t = 5)]
        restarts: usize,
        /// Path for the optimized design file.
        #[arg(long, default_value = "optimized_design.json")]
        out: String,
        /// Path for the evaluation trace CSV.
        #[arg(long, default_value = "trace.csv")]
        trace: String,
        /// Optional path for the report JSON (stdout otherwise).
        #[arg(long)]
        report: Option<String>,
    },
    /// Track the mode across external flux.
    FluxSweep {
        design: String,
        /// Number of flux points over [0, 0.5] flux quanta (file default
        /// otherwise).
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_window(text: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err("expected \"lo,hi\" in Hz".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("bad lo: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("bad hi: {e}"))?;
    Ok((lo, hi))
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Modes { design, window, json, out } => cmd_modes(&design, window, json, out.as_deref()),
        Command::GainSweep { design, pump_gain_db, span, points, unpumped, out } => {
            cmd_gain_sweep(&design, pump_gain_db, span, points, unpumped, out.as_deref())
        }
        Command::Design { design, seed, budget, restarts, out, trace, report } => {
            cmd_design(&design, seed, budget, restarts, &out, &trace, report.as_deref())
        }
        Command::FluxSweep { design, points, out } => cmd_flux_sweep(&design, points, out.as_deref()),
    }
}

#[derive(Serialize)]
struct ModeRow {
    omega_hz: f64,
    kappa_hz: f64,
    p_j: f64,
    kappa_sig_hz: f64,
    kappa_pump_hz: f64,
}

impl ModeRow {
    fn from_summary(m: &ModeSummary<f64>) -> Self {
        Self {
            omega_hz: m.omega_a / TAU,
            kappa_hz: m.kappa_a / TAU,
            p_j: m.p_j,
            kappa_sig_hz: m.kappa_signal_port / TAU,
            kappa_pump_hz: m.kappa_pump_port / TAU,
        }
    }
}

fn cmd_modes(
    path: &str,
    window: Option<(f64, f64)>,
    json: bool,
    out: Option<&str>,
) -> Result<(), CliError> {
    let file = DesignFile::load(path)?;
    let design = file.design()?;
    let targets = file.targets()?;
    let (lo_hz, hi_hz) = window.unwrap_or(targets.mode_window_hz);
    if !(lo_hz > 0.0 && hi_hz > lo_hz) {
        return Err(CliError::no_mode());
    }
    let emb = design.embedding()?;
    let dipole = design.dipole.dipole()?;
    let zth = |s: threewave::C64| {
        emb.zth(ComplexFrequency::from_complex(s))
            .unwrap_or(threewave::C64::new(f64::NAN, f64::NAN))
    };
    let poles = find_modes(
        zth,
        dipole.l_j,
        (TAU * lo_hz, TAU * hi_hz),
        &ModeSearchOptions::default(),
    )?;
    if poles.is_empty() {
        return Err(CliError::no_mode());
    }
    let rows: Vec<ModeRow> = poles
        .iter()
        .map(|p| mode_summary(&emb, dipole.l_j, p).map(|m| ModeRow::from_summary(&m)))
        .collect::<Result<_, _>>()?;
    let text = if json {
        let mut t = serde_json::to_string_pretty(&rows).expect("serializable rows");
        t.push('\n');
        t
    } else {
        let mut csv = Csv::new(&["omega_hz", "kappa_hz", "p_j", "kappa_sig_hz", "kappa_pump_hz"]);
        for r in &rows {
            csv.row(&[
                sig12(r.omega_hz),
                sig12(r.kappa_hz),
                sig12(r.p_j),
                sig12(r.kappa_sig_hz),
                sig12(r.kappa_pump_hz),
            ]);
        }
        csv.to_text()
    };
    emit(&text, out)
}

fn cmd_gain_sweep(
    path: &str,
    pump_gain_db: f64,
    span: Option<f64>,
    points: Option<usize>,
    unpumped: bool,
    out: Option<&str>,
) -> Result<(), CliError> {
    let file = DesignFile::load(path)?;
    let design = file.design()?;
    let targets = file.targets()?;
    // Flags beat file defaults beat built-ins.
    let span = span
        .or_else(|| file.sweeps.as_ref().and_then(|s| s.gain_span_hz))
        .unwrap_or(6.0e8);
    let points = points
        .or_else(|| file.sweeps.as_ref().and_then(|s| s.gain_points))
        .unwrap_or(201)
        .max(2);

    let report = evaluate_design(&design, &targets)?;
    let mode = report.mode.ok_or_else(CliError::no_mode)?;
    let emb = design.embedding()?;
    let dipole = design.dipole.dipole()?;
    let omega_hat = mode.omega_a;
    let op = OperatingPoint::new(omega_hat, 2.0 * omega_hat, 10f64.powf(pump_gain_db / 10.0));

    let pump = if unpumped {
        None
    } else {
        let s3 = emb.three_port(ComplexFrequency::real_freq(op.omega_s))?;
        let zth_i = emb.zth(ComplexFrequency::real_freq(op.omega_i()))?;
        Some(solve_pump_for_gain(&dipole, &op, &s3, zth_i, 1.0)?)
    };
    let eta_pc = report.eta_pc;
    let leak_bound_db = -10.0 * eta_pc.log10();

    let rows = par_map_indexed(points, |k| {
        let f_hz = omega_hat / TAU - span / 2.0 + span * k as f64 / (points - 1) as f64;
        let omega_s = TAU * f_hz;
        let result: Result<(f64, f64), Error> = (|| {
            let s3 = emb.three_port(ComplexFrequency::real_freq(omega_s))?;
            let gamma = match &pump {
                Some(p) => {
                    let op_k = OperatingPoint::new(omega_s, op.omega_p, op.gain_target);
                    let zth_i = emb.zth(ComplexFrequency::real_freq(op_k.omega_i()))?;
                    let y = y_nl(&dipole, p, &op_k, zth_i)?;
                    gamma3_pumped(&dipole, y, omega_s, emb.z0)
                }
                None => gamma3_linear(dipole.l_j, omega_s, emb.z0),
            };
            let resp = signal_response(&s3, gamma)?;
            Ok((resp.gain, resp.transmission))
        })();
        (f_hz, result)
    });

    let mut csv = Csv::new(&[
        "freq_hz",
        "gain_db",
        "transmission_db",
        "eta_pc",
        "leakage_bound_dbm_per_pjp",
    ]);
    for (f_hz, result) in rows {
        match result {
            Ok((gain, transmission)) => csv.row(&[
                sig12(f_hz),
                sig12(10.0 * gain.max(1e-300).log10()),
                sig12(10.0 * transmission.max(1e-300).log10()),
                sig12(eta_pc),
                sig12(leak_bound_db),
            ]),
            // Points the model cannot evaluate (element singularities) stay
            // in the table as gaps.
            Err(_) => csv.row(&[sig12(f_hz), String::new(), String::new(), String::new(), String::new()]),
        }
    }
    emit(&csv.to_text(), out)
}

#[derive(Serialize)]
struct DesignReportOut {
    feasible: bool,
    penalty: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<ModeRow>,
    eta_pc: f64,
    transmission_at_mode: f64,
    signal_network_pump_band_rejection_db: f64,
    pump_network_signal_band_rejection_db: f64,
}

fn cmd_design(
    path: &str,
    seed: u64,
    budget: usize,
    restarts: usize,
    out: &str,
    trace_path: &str,
    report_path: Option<&str>,
) -> Result<(), CliError> {
    let file = DesignFile::load(path)?;
    let design = file.design()?;
    let targets = file.targets()?;
    let (NetworkSpec::Prototype(sig), NetworkSpec::Prototype(pump)) =
        (design.signal.clone(), design.pump.clone())
    else {
        return Err(CliError::schema(
            "design optimization needs prototype networks on both ports".into(),
        ));
    };
    if budget < 100 {
        return Err(CliError::schema("budget must be at least 100 evaluations".into()));
    }
    if restarts < 1 {
        return Err(CliError::schema("at least one restart required".into()));
    }

    let outcome = optimize(
        &sig,
        &pump,
        &design.dipole,
        design.z0,
        &targets,
        &OptimizeSettings { seed, budget, restarts },
    )?;

    let optimized = file.with_optimized(&outcome.signal, &outcome.pump)?;
    let mut design_text =
        serde_json::to_string_pretty(&optimized).expect("serializable design file");
    design_text.push('\n');
    std::fs::write(out, design_text)
        .map_err(|e| CliError::schema(format!("cannot write {out}: {e}")))?;

    let mut trace = Csv::new(&["restart", "eval", "penalty", "params"]);
    for entry in &outcome.trace {
        let params = entry.params.iter().map(|p| sig12(*p)).collect::<Vec<_>>().join(";");
        trace.row(&[
            entry.restart.to_string(),
            entry.eval.to_string(),
            sig12(entry.penalty),
            params,
        ]);
    }
    std::fs::write(trace_path, trace.to_text())
        .map_err(|e| CliError::schema(format!("cannot write {trace_path}: {e}")))?;

    let report = DesignReportOut {
        feasible: outcome.feasible,
        penalty: outcome.penalty,
        mode: outcome.report.mode.as_ref().map(ModeRow::from_summary),
        eta_pc: outcome.report.eta_pc,
        transmission_at_mode: outcome.report.transmission_at_mode,
        signal_network_pump_band_rejection_db: outcome
            .report
            .signal_network_pump_band_rejection_db,
        pump_network_signal_band_rejection_db: outcome
            .report
            .pump_network_signal_band_rejection_db,
    };
    let mut report_text = serde_json::to_string_pretty(&report).expect("serializable report");
    report_text.push('\n');
    emit(&report_text, report_path)?;

    if !outcome.feasible {
        return Err(CliError::infeasible(format!(
            "no feasible design found; closest (penalty {:.3e}) written to {out}",
            outcome.penalty
        )));
    }
    Ok(())
}

fn cmd_flux_sweep(path: &str, points: Option<usize>, out: Option<&str>) -> Result<(), CliError> {
    let file = DesignFile::load(path)?;
    let design = file.design()?;
    let targets = file.targets()?;
    let points = points
        .or_else(|| file.sweeps.as_ref().and_then(|s| s.flux_points))
        .unwrap_or(26)
        .max(2);
    let grid: Vec<f64> = (0..points).map(|k| 0.5 * k as f64 / (points - 1) as f64).collect();
    let sweep = flux_sweep(&design, &targets, &grid)?;
    let mut csv = Csv::new(&["phi_ext", "omega_hz", "kappa_hz", "p_j"]);
    for pt in &sweep {
        match &pt.mode {
            Some(m) => csv.row(&[
                sig12(pt.phi_ext),
                sig12(m.omega_a / TAU),
                sig12(m.kappa_a / TAU),
                sig12(m.p_j),
            ]),
            None => csv.row(&[sig12(pt.phi_ext), String::new(), String::new(), String::new()]),
        }
    }
    emit(&csv.to_text(), out)
}
