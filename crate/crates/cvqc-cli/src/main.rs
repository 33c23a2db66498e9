//! `cvqc` — CSV front end for the cloning/teleportation toolkit.
//!
//! Data goes to stdout (or `--out`), diagnostics to stderr. Exit status 0
//! on success, 1 when `mc-validate` finds a disagreement (or on runtime
//! errors), 2 on flag errors. All output is deterministic for identical
//! flags, including the Monte-Carlo subcommand at a fixed seed.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cvqc::analysis::{ppt_nu_minus, ThresholdConvention, TwoModeCM};
use cvqc::circuit::clone_1to2;
use cvqc::gaussian::{covariance, covariance_matrix, InitialModeSpec};
use cvqc::mc::{estimate_covariance, estimate_teleport_fidelity, McConfig};
use cvqc::teleport::{
    comparison_curve, optimal_fidelity, optimal_gain, protocol_outcome, GainSpec,
};

/// Seed used when neither `--seed` nor `CVQC_SEED` is given.
const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser)]
#[command(
    name = "cvqc",
    version,
    about = "Gaussian cloning and teleportation curves as CSV"
)]
struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Entanglement threshold convention for verdicts and E_N columns.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Paper)]
    convention: Convention,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Convention {
    /// Entangled iff nu < 1; E_N = max(0, -log2(nu)).
    Paper,
    /// Entangled iff nu < 1/4; E_N = max(0, -log2(4 nu)).
    Standard,
}

impl From<Convention> for ThresholdConvention {
    fn from(value: Convention) -> Self {
        match value {
            Convention::Paper => ThresholdConvention::Paper,
            Convention::Standard => ThresholdConvention::Standard,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity of one clone against the input at squeezing r.
    CloneFidelity {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
    },
    /// Entanglement of the two clones for given mode squeezings.
    Entanglement {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r0: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r1: f64,
        /// Ancilla squeezing; the closed-form pattern has rz = 0, other
        /// values go through the circuit route.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        rz: f64,
    },
    /// Clone entanglement curve over a squeezing grid: r, nu_minus, E_N.
    Figure1 {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        step: f64,
    },
    /// Fidelity comparison curve: r, F_opt, F_loock.
    Figure2 {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        step: f64,
    },
    /// One teleportation run: r, g3, sigma_x, sigma_p, F.
    Teleport {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
        /// Feedforward gain g3; defaults to the optimum for r.
        #[arg(long, allow_negative_numbers = true)]
        gain: Option<f64>,
    },
    /// Monte-Carlo validation: quantity, analytic, mc, stderr, pass.
    McValidate {
        #[arg(long, default_value_t = 1_000_000)]
        shots: u64,
        /// RNG seed; falls back to CVQC_SEED, then to a built-in default.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        shards: u32,
    },
}

/// Minimal decimal form for grid values, nine decimals for data.
fn grid(v: f64) -> String {
    format!("{v:?}")
}

fn num(v: f64) -> String {
    format!("{v:.9}")
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("CVQC_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_SEED)
}

/// Clone covariance pattern for arbitrary ancilla squeezing, through the
/// circuit route (the rz = 0 closed form is a special case).
fn clone_pattern(r0: f64, r1: f64, rz: f64) -> Result<TwoModeCM> {
    let out = clone_1to2(
        &InitialModeSpec::x_squeezed(r0)?,
        &InitialModeSpec::x_squeezed(r1)?,
        &InitialModeSpec::p_squeezed(rz)?,
    )?;
    let vacuum = [InitialModeSpec::vacuum(); 3];
    let cm = covariance_matrix(&[out.clone0, out.clone1], &vacuum)?;
    Ok(TwoModeCM::from_matrix(&cm)?)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<ExitCode> {
    let convention = ThresholdConvention::from(cli.convention);
    match &cli.command {
        Command::CloneFidelity { r } => {
            let fidelity = cvqc::analysis::clone_fidelity(*r)?.fidelity;
            writeln!(out, "r,F_clone")?;
            writeln!(out, "{},{}", grid(*r), num(fidelity))?;
        }
        Command::Entanglement { r0, r1, rz } => {
            let result = ppt_nu_minus(&clone_pattern(*r0, *r1, *rz)?)?;
            let e_n = convention.log_negativity(result.nu_minus)?;
            let entangled = result.nu_minus < convention.threshold();
            writeln!(out, "r0,r1,rz,nu_minus,E_N,entangled")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                grid(*r0),
                grid(*r1),
                grid(*rz),
                num(result.nu_minus),
                num(e_n),
                entangled
            )?;
        }
        Command::Figure1 { r_min, r_max, step } => {
            let rows = comparison_curve(*r_min, *r_max, *step)?;
            writeln!(out, "r,nu_minus,E_N")?;
            for row in rows {
                let nu = ppt_nu_minus(&TwoModeCM::from_squeezing(row.r, row.r)?)?.nu_minus;
                writeln!(
                    out,
                    "{},{},{}",
                    grid(row.r),
                    num(nu),
                    num(convention.log_negativity(nu)?)
                )?;
            }
        }
        Command::Figure2 { r_min, r_max, step } => {
            let rows = comparison_curve(*r_min, *r_max, *step)?;
            writeln!(out, "r,F_opt,F_loock")?;
            for row in rows {
                writeln!(
                    out,
                    "{},{},{}",
                    grid(row.r),
                    num(row.f_opt),
                    num(row.f_loock)
                )?;
            }
        }
        Command::Teleport { r, gain } => {
            let g3 = gain.unwrap_or_else(|| optimal_gain(*r));
            let outcome = protocol_outcome(*r, *r, *r, &GainSpec::unit(g3)?, (0.0, 0.0))?;
            writeln!(out, "r,g3,sigma_x,sigma_p,F")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                grid(*r),
                num(g3),
                num(outcome.sigma_x),
                num(outcome.sigma_p),
                num(outcome.fidelity)
            )?;
        }
        Command::McValidate {
            shots,
            seed,
            shards,
        } => {
            return mc_validate(out, *shots, resolve_seed(*seed), *shards);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn mc_validate(out: &mut dyn Write, shots: u64, seed: u64, shards: u32) -> Result<ExitCode> {
    writeln!(out, "quantity,analytic,mc,stderr,pass")?;
    let mut all_pass = true;
    let mut emit =
        |out: &mut dyn Write, quantity: &str, analytic: f64, mc: f64, se: f64, pass: bool| {
            all_pass &= pass;
            writeln!(
                out,
                "{quantity},{},{},{},{pass}",
                num(analytic),
                num(mc),
                num(se)
            )
        };

    // teleportation fidelity against the closed form, absolute 5e-3 gate
    for (i, r) in [0.0, 0.5, 1.0].into_iter().enumerate() {
        let cfg = McConfig::new(shots, seed.wrapping_add(i as u64), shards)?;
        let est = estimate_teleport_fidelity(r, optimal_gain(r), &cfg)?;
        let analytic = optimal_fidelity(r);
        let pass = (est.mean - analytic).abs() <= 5e-3;
        emit(
            out,
            &format!("F_opt(r={r})"),
            analytic,
            est.mean,
            est.standard_error,
            pass,
        )?;
    }

    // clone covariance pattern against the moment engine, 4 standard errors
    let vacuum = [InitialModeSpec::vacuum(); 3];
    for (block, r) in [0.0_f64, 0.5].into_iter().enumerate() {
        let clones = clone_1to2(
            &InitialModeSpec::x_squeezed(r)?,
            &InitialModeSpec::x_squeezed(r)?,
            &InitialModeSpec::vacuum(),
        )?;
        let quantities = [
            ("s", &clones.clone0.x, &clones.clone0.x),
            ("t", &clones.clone0.x, &clones.clone1.x),
            ("u", &clones.clone0.p, &clones.clone0.p),
            ("v", &clones.clone0.p, &clones.clone1.p),
        ];
        for (i, (name, e1, e2)) in quantities.into_iter().enumerate() {
            let cfg = McConfig::new(
                shots,
                seed.wrapping_add(100 + (10 * block + i) as u64),
                shards,
            )?;
            let est = estimate_covariance(e1, e2, &vacuum, &cfg)?;
            let analytic = covariance(e1, e2, &vacuum)?;
            let pass = (est.variance - analytic).abs() <= 4.0 * est.standard_error;
            emit(
                out,
                &format!("{name}(r={r})"),
                analytic,
                est.variance,
                est.standard_error,
                pass,
            )?;
        }
    }

    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()));
            match file {
                Ok(file) => {
                    let mut writer = BufWriter::new(file);
                    run(&cli, &mut writer).and_then(|code| {
                        writer.flush().context("flushing output")?;
                        Ok(code)
                    })
                }
                Err(e) => Err(e),
            }
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(&cli, &mut lock)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
