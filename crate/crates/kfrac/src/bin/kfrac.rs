use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use kfrac::coherent::{
    check_eigenstate, coherence_factor, displacement_apply, eigenstate_bf_check,
    fractional_supercoherent, overcompleteness_check, overlap_exponential_check, vourdas_decomposition_check,
};
use kfrac::fracsusy::{spectrum, verify_susy, verify_weyl_heisenberg};
use kfrac::grassmann::verify_realization;
use kfrac::kfermion::verify_fk_relations;
use kfrac::quon::limit_study;
use kfrac::report::CheckReport;
use kfrac::KfracError;

#[derive(Parser)]
#[command(name = "kfrac", version, about = "k-fermionic algebras and the fractional supersymmetric oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Algebra,
    Grassmann,
    Coherent,
    Susy,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity-verification suites.
    Verify {
        /// Deformation order: an integer in 2..=12, or "all" for 2..6.
        #[arg(long, default_value = "all")]
        k: String,
        #[arg(long, default_value_t = 24)]
        boson_cutoff: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the oscillator spectrum.
    Spectrum {
        #[arg(long, default_value = "all")]
        k: String,
        /// Number of levels to print.
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 24)]
        boson_cutoff: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the coherent-state suite at a given amplitude.
    Coherent {
        #[arg(long, default_value = "all")]
        k: String,
        /// Bosonic amplitude as "re,im".
        #[arg(long, default_value = "0.7,0.4")]
        z: String,
        #[arg(long, default_value_t = 24)]
        boson_cutoff: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the quon-to-boson+k-fermion deviation table.
    QuonLimit {
        #[arg(long, default_value = "all")]
        k: String,
        /// Comma-separated deformation offsets in (0, 0.5).
        #[arg(long, default_value = "1e-2,1e-3,1e-4")]
        epsilons: String,
        #[arg(long, default_value_t = 24)]
        boson_cutoff: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_k(spec: &str) -> Result<Vec<usize>, String> {
    if spec == "all" {
        return Ok((2..=6).collect());
    }
    let k: usize = spec
        .parse()
        .map_err(|_| format!("--k must be an integer or \"all\", got {spec:?}"))?;
    if !(2..=12).contains(&k) {
        return Err(format!("--k must lie in 2..=12, got {k}"));
    }
    Ok(vec![k])
}

fn parse_complex(spec: &str) -> Result<C64, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("complex value must be \"re,im\", got {spec:?}"));
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| format!("bad real part {:?}", parts[0]))?;
    let im: f64 = parts[1].trim().parse().map_err(|_| format!("bad imaginary part {:?}", parts[1]))?;
    Ok(C64::new(re, im))
}

fn parse_epsilons(spec: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let e: f64 = part.trim().parse().map_err(|_| format!("bad epsilon {part:?}"))?;
        out.push(e);
    }
    if out.is_empty() {
        return Err("epsilon ladder is empty".into());
    }
    Ok(out)
}

fn check_cutoff(k_list: &[usize], cutoff: usize) -> Result<(), String> {
    let need = k_list.iter().max().unwrap() + 3;
    if cutoff < need {
        return Err(format!("--boson-cutoff must be at least k+3 = {need}, got {cutoff}"));
    }
    Ok(())
}

fn coherent_suite(k: usize, z: C64, cutoff: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let mut report = check_eigenstate(k, tol)?;
    report.merge(overlap_exponential_check(k, tol)?);
    report.merge(overcompleteness_check(k, tol)?);

    let mut factors = CheckReport::new(format!("coherence factors k={k}"));
    for m in 1..k {
        factors.residual(format!("g({m}) = 1"), (coherence_factor(k, m)? - 1.0).abs(), tol);
    }
    factors.residual(format!("g({k}) = 0"), coherence_factor(k, k)?.abs(), tol);
    report.merge(factors);

    let state = fractional_supercoherent(z, k, cutoff)?;
    let displaced = displacement_apply(z, k, cutoff)?;
    let mut disp = CheckReport::new(format!("displacement k={k}"));
    disp.residual(
        "D_q(z,theta)|0,0> = |z,theta)",
        displaced.sub(&state)?.max_abs(),
        1e-12,
    );
    report.merge(disp);

    report.merge(eigenstate_bf_check(z, k, cutoff)?);
    report.merge(vourdas_decomposition_check(z, k, cutoff, 1e-12)?);
    Ok(report)
}

fn print_reports(reports: &[CheckReport], format: Format) {
    match format {
        Format::Table => {
            for r in reports {
                println!("{}", r.render_table());
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(reports).unwrap());
        }
    }
}

fn run() -> Result<ExitCode, KfracError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { k, boson_cutoff, tol, suite, format } => {
            let k_list = match parse_k(&k) {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            if let Err(e) = check_cutoff(&k_list, boson_cutoff) {
                return Ok(usage_error(&e));
            }
            let mut reports = Vec::new();
            for &k in &k_list {
                if matches!(suite, Suite::Algebra | Suite::All) {
                    reports.push(verify_fk_relations(k, tol)?);
                    reports.push(verify_weyl_heisenberg(k, boson_cutoff, tol)?);
                }
                if matches!(suite, Suite::Grassmann | Suite::All) {
                    reports.push(verify_realization(k, tol)?);
                }
                if matches!(suite, Suite::Coherent | Suite::All) {
                    reports.push(coherent_suite(k, C64::new(0.7, 0.4), boson_cutoff, tol)?);
                }
                if matches!(suite, Suite::Susy | Suite::All) {
                    reports.push(verify_susy(k, boson_cutoff, tol)?);
                }
            }
            print_reports(&reports, format);
            let pass = reports.iter().all(|r| r.overall_pass());
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Spectrum { k, levels, boson_cutoff, format } => {
            let k_list = match parse_k(&k) {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            if let Err(e) = check_cutoff(&k_list, boson_cutoff) {
                return Ok(usage_error(&e));
            }
            let mut json_out = Vec::new();
            for &k in &k_list {
                let mut report = spectrum(k, boson_cutoff)?;
                report.levels.truncate(levels);
                match format {
                    Format::Table => println!("{}", report.render_table()),
                    Format::Json => json_out.push(serde_json::json!({
                        "k": report.k,
                        "levels": report.levels,
                        "spacing": report.spacing,
                    })),
                }
            }
            if matches!(format, Format::Json) {
                let value = if json_out.len() == 1 {
                    json_out.into_iter().next().unwrap()
                } else {
                    serde_json::Value::Array(json_out)
                };
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Coherent { k, z, boson_cutoff, format } => {
            let k_list = match parse_k(&k) {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            let z = match parse_complex(&z) {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            if let Err(e) = check_cutoff(&k_list, boson_cutoff) {
                return Ok(usage_error(&e));
            }
            let mut reports = Vec::new();
            for &k in &k_list {
                reports.push(coherent_suite(k, z, boson_cutoff, 1e-10)?);
            }
            print_reports(&reports, format);
            let pass = reports.iter().all(|r| r.overall_pass());
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::QuonLimit { k, epsilons, boson_cutoff, format } => {
            let k_list = match parse_k(&k) {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            let eps = match parse_epsilons(&epsilons) {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            if let Err(e) = check_cutoff(&k_list, boson_cutoff) {
                return Ok(usage_error(&e));
            }
            let mut reports = Vec::new();
            for &k in &k_list {
                reports.push(limit_study(k, &eps, boson_cutoff)?);
            }
            match format {
                Format::Table => {
                    for r in &reports {
                        println!("{}", r.render_table());
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
            }
            let pass = reports.iter().all(|r| r.pass());
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => usage_error(&e.to_string()),
    }
}
