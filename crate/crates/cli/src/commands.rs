use std::fmt;
use std::io::{self, BufWriter, Write};

use gausscat::fock::{self, truncation_guard};
use gausscat::gauss_sums::{gauss_coefficient_closed, gauss_coefficients_direct};
use gausscat::superposition::{build_descriptor, coefficients_by_inverse_dft, Component};
use gausscat::tolerances::{COEFFS_COMMAND, EVOLUTION_FIDELITY};
use gausscat::verify::{self, Group};
use gausscat::wavefunc::{kitten_wavefunction, GridSpec};
use gausscat::{CoprimeFraction, ExactCoefficient, C64};
use serde::Serialize;

use crate::{Format, FractionArgs, GridArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
    Io(io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "write failed: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<(), CliError>;

fn fraction(args: FractionArgs) -> Result<CoprimeFraction, CliError> {
    CoprimeFraction::new(args.m, args.n).map_err(|e| CliError::Usage(e.to_string()))
}

fn grid(args: GridArgs) -> Result<GridSpec, CliError> {
    GridSpec::new(args.half_width, args.points).map_err(|e| CliError::Usage(e.to_string()))
}

fn guard(alpha: C64, dim: usize) -> CliResult {
    truncation_guard(alpha, dim).map_err(|e| CliError::Usage(e.to_string()))
}

fn stdout() -> BufWriter<io::StdoutLock<'static>> {
    BufWriter::new(io::stdout().lock())
}

fn write_json<T: Serialize>(value: &T) -> CliResult {
    let mut out = stdout();
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn complex_text(z: C64) -> String {
    format!("{:+.16e}{:+.16e}i", z.re, z.im)
}

#[derive(Serialize)]
struct CoeffRow {
    k: i64,
    exact: ExactCoefficient,
    exact_text: String,
    closed: [f64; 2],
    direct: [f64; 2],
    inverse_dft: [f64; 2],
    discrepancy: f64,
}

pub fn coeffs(args: FractionArgs, format: Format) -> CliResult {
    let f = fraction(args)?;
    let direct = gauss_coefficients_direct(f);
    let idft = coefficients_by_inverse_dft(f);
    let rows: Vec<CoeffRow> = (0..f.n())
        .map(|k| {
            let exact = gauss_coefficient_closed(f, k);
            let closed = exact.value();
            let (d, i) = (direct[k as usize], idft[k as usize]);
            let discrepancy = (closed - d)
                .norm()
                .max((closed - i).norm())
                .max((d - i).norm());
            CoeffRow {
                k,
                exact,
                exact_text: exact.to_string(),
                closed: [closed.re, closed.im],
                direct: [d.re, d.im],
                inverse_dft: [i.re, i.im],
                discrepancy,
            }
        })
        .collect();
    let worst = rows.iter().map(|r| r.discrepancy).fold(0.0, f64::max);

    match format {
        Format::Json => write_json(&rows)?,
        Format::Csv => {
            let mut out = stdout();
            writeln!(
                out,
                "k,sign,phase_num,phase_den,inv_sqrt,direct_re,direct_im,idft_re,idft_im,discrepancy"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.3e}",
                    r.k,
                    r.exact.sign,
                    r.exact.phase.num(),
                    r.exact.phase.den(),
                    r.exact.inv_sqrt,
                    r.direct[0],
                    r.direct[1],
                    r.inverse_dft[0],
                    r.inverse_dft[1],
                    r.discrepancy
                )?;
            }
            out.flush()?;
        }
        Format::Text => {
            let mut out = stdout();
            writeln!(out, "# c_k for M/N = {f}")?;
            writeln!(
                out,
                "{:>4}  {:<22} {:<48} {:<48} discrepancy",
                "k", "exact", "direct", "inverse DFT"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>4}  {:<22} {:<48} {:<48} {:.3e}",
                    r.k,
                    r.exact_text,
                    complex_text(C64::new(r.direct[0], r.direct[1])),
                    complex_text(C64::new(r.inverse_dft[0], r.inverse_dft[1])),
                    r.discrepancy
                )?;
            }
            writeln!(
                out,
                "# max discrepancy {worst:.3e} (tolerance {COEFFS_COMMAND:.0e})"
            )?;
            out.flush()?;
        }
    }

    if worst > COEFFS_COMMAND {
        return Err(CliError::Failed(format!(
            "cross-route discrepancy {worst:.3e} exceeds {COEFFS_COMMAND:.0e}"
        )));
    }
    Ok(())
}

pub fn state(args: FractionArgs, yurke_stoler: bool, by_angle: bool, format: Format) -> CliResult {
    let f = fraction(args)?;
    let mut desc = build_descriptor(f);
    if yurke_stoler {
        desc = desc.yurke_stoler();
    }
    if by_angle && format != Format::Text {
        return Err(CliError::Usage(
            "--by-angle applies to text output only".into(),
        ));
    }

    match format {
        Format::Json => write_json(&desc)?,
        Format::Csv => {
            let mut out = stdout();
            writeln!(
                out,
                "k,sign,phase_num,phase_den,inv_sqrt,rotation_num,rotation_den"
            )?;
            for c in &desc.components {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    c.k,
                    c.coefficient.sign,
                    c.coefficient.phase.num(),
                    c.coefficient.phase.den(),
                    c.coefficient.inv_sqrt,
                    c.rotation.num(),
                    c.rotation.den()
                )?;
            }
            out.flush()?;
        }
        Format::Text => {
            let components: Vec<Component> = if by_angle {
                desc.sorted_by_rotation()
            } else {
                desc.components.clone()
            };
            let mut out = stdout();
            writeln!(
                out,
                "# kitten M/N = {f}, {} components, {} parity{}",
                desc.n(),
                if f.is_even() { "even" } else { "odd" },
                if yurke_stoler {
                    ", alpha -> -i alpha"
                } else {
                    ""
                }
            )?;
            for c in &components {
                writeln!(
                    out,
                    "{:>4}  {:<22} |exp(i·{}) α⟩",
                    c.k,
                    c.coefficient.to_string(),
                    c.rotation
                )?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

pub fn wavefunction(
    args: FractionArgs,
    alpha: (f64, f64),
    grid_args: GridArgs,
    format: Format,
) -> CliResult {
    let f = fraction(args)?;
    let alpha = C64::new(alpha.0, alpha.1);
    let g = grid(grid_args)?;
    guard(alpha, grid_args.dim)?;

    let ws = kitten_wavefunction(alpha, f, g, grid_args.dim);
    eprintln!("trapezoid norm: {:.12}", ws.norm_sq());

    let mut out = stdout();
    match format {
        Format::Csv => ws.write_csv(&mut out)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Sample {
                x: f64,
                re_psi: f64,
                im_psi: f64,
                abs2: f64,
            }
            let samples: Vec<Sample> = g
                .xs()
                .into_iter()
                .zip(&ws.values)
                .map(|(x, v)| Sample {
                    x,
                    re_psi: v.re,
                    im_psi: v.im,
                    abs2: v.norm_sqr(),
                })
                .collect();
            serde_json::to_writer_pretty(&mut out, &samples).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Text => {
            for (x, v) in g.xs().into_iter().zip(&ws.values) {
                writeln!(
                    out,
                    "{:>24.16e} {:>24.16e} {:>24.16e} {:>24.16e}",
                    x,
                    v.re,
                    v.im,
                    v.norm_sqr()
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn verify(only: Option<Group>, grid_args: GridArgs, format: Format) -> CliResult {
    let opts = verify::Options {
        only,
        dim: grid_args.dim,
        grid: grid(grid_args)?,
        ..Default::default()
    };
    let report = verify::run(&opts);

    match format {
        Format::Json => write_json(&report)?,
        Format::Csv => {
            let mut out = stdout();
            writeln!(out, "group,check,measured,tolerance,passed")?;
            for c in &report.checks {
                writeln!(
                    out,
                    "{},\"{}\",{:.6e},{:.0e},{}",
                    c.group.name(),
                    c.name,
                    c.measured,
                    c.tolerance,
                    c.passed
                )?;
            }
            out.flush()?;
        }
        Format::Text => {
            let mut out = stdout();
            for c in &report.checks {
                writeln!(out, "{c}")?;
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {} failed", report.checks.len(), failed)?;
            out.flush()?;
        }
    }

    if report.passed {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}

pub fn evolve(
    args: FractionArgs,
    alpha: (f64, f64),
    t: f64,
    steps: usize,
    dim: usize,
    format: Format,
) -> CliResult {
    let f = fraction(args)?;
    let alpha = C64::new(alpha.0, alpha.1);
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !t.is_finite() {
        return Err(CliError::Usage(format!("--t must be finite, got {t}")));
    }
    guard(alpha, dim)?;

    let series: Vec<(f64, f64)> = (0..=steps)
        .map(|i| {
            let ti = t * i as f64 / steps as f64;
            (ti, fock::evolution_fidelity(alpha, f, ti, dim))
        })
        .collect();
    let worst = series
        .iter()
        .map(|&(_, fid)| (fid - 1.0).abs())
        .fold(0.0, f64::max);

    let mut out = stdout();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Point {
                t: f64,
                fidelity: f64,
            }
            let points: Vec<Point> = series
                .iter()
                .map(|&(t, fidelity)| Point { t, fidelity })
                .collect();
            serde_json::to_writer_pretty(&mut out, &points).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "t,fidelity")?;
            for (ti, fid) in &series {
                writeln!(out, "{ti:.16e},{fid:.16e}")?;
            }
        }
        Format::Text => {
            for (ti, fid) in &series {
                writeln!(out, "t = {ti:<24.16e} fidelity = {fid:.16e}")?;
            }
            writeln!(out, "# max |fidelity - 1| = {worst:.3e}")?;
        }
    }
    out.flush()?;

    if worst > EVOLUTION_FIDELITY {
        return Err(CliError::Failed(format!(
            "fidelity deviates from 1 by {worst:.3e}"
        )));
    }
    Ok(())
}
