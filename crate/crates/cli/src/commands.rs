//! Implementations of the compute / sweep / figure / reconcile subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use unruh_discord::closed_form::{linspace, reconcile_closed_forms};
use unruh_discord::correlation::{entropic_discord, geometric_discord, Measure};
use unruh_discord::reduction::{
    claim_catalog, convention_search, sector_state, Sector, TraceConvention,
};
use unruh_discord::report::fmt_sig12;
use unruh_discord::unruh::{gamma_from_acceleration, BranchWeights, StateFamily};
use unruh_discord::Error;

use crate::opts::{parse_accel, parse_range, Cli, Command, ComputeArgs, FigureArgs, ReconcileArgs, SweepArgs};
use crate::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute(args) => compute(args),
        Command::Sweep(args) => sweep(args),
        Command::Figure(args) => figure(args),
        Command::Reconcile(args) => reconcile(args),
    }
}

/// Map library domain errors onto messages that name the offending flag.
fn core_err(e: Error) -> CliError {
    let message = match &e {
        Error::GammaOutOfRange(v) => format!("--gamma out of [0, pi/4] (got {v})"),
        Error::BranchWeightOutOfRange(v) => format!("--qr out of [0, 1] (got {v})"),
        Error::AlphaOutOfRange(v) => format!("--alpha out of [0, pi/2] (got {v})"),
        Error::FidelityOutOfRange(v) => format!("--fidelity out of [0, 1] (got {v})"),
        Error::AccelerationDomain => "--accel needs OMEGA > 0, A >= 0, C > 0".to_string(),
        Error::InvalidConvention(s) => format!("--convention invalid: {s}"),
        other => other.to_string(),
    };
    CliError::domain(message)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FamilyKind {
    PhiPlus,
    PhiMinus,
    Werner,
}

impl FamilyKind {
    fn parse(name: &str) -> Result<Self, CliError> {
        match name.to_ascii_lowercase().as_str() {
            "phi+" => Ok(FamilyKind::PhiPlus),
            "phi-" => Ok(FamilyKind::PhiMinus),
            "werner" => Ok(FamilyKind::Werner),
            other => Err(CliError::domain(format!(
                "--family must be phi+, phi- or werner (got \"{other}\")"
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            FamilyKind::PhiPlus => "phi+",
            FamilyKind::PhiMinus => "phi-",
            FamilyKind::Werner => "werner",
        }
    }

    fn with_param(self, param: f64) -> Result<StateFamily, CliError> {
        let family = match self {
            FamilyKind::PhiPlus => StateFamily::PhiPlus { alpha: param },
            FamilyKind::PhiMinus => StateFamily::PhiMinus { alpha: param },
            FamilyKind::Werner => StateFamily::Werner { fidelity: param },
        };
        family.validate().map_err(core_err)?;
        Ok(family)
    }
}

fn resolve_gamma(gamma: Option<f64>, accel: Option<&str>) -> Result<f64, CliError> {
    match (gamma, accel) {
        (Some(g), None) => {
            unruh_discord::unruh::validate_gamma(g).map_err(core_err)?;
            Ok(g)
        }
        (None, Some(spec)) => {
            let (omega, a, c) = parse_accel(spec)?;
            gamma_from_acceleration(omega, a, c).map_err(core_err)
        }
        _ => Err(CliError::domain(
            "exactly one of --gamma and --accel is required",
        )),
    }
}

fn resolve_sector(name: &str) -> Result<Sector, CliError> {
    Sector::parse(name).ok_or_else(|| {
        CliError::domain(format!("--sector must be I+, I-, II+ or II- (got \"{name}\")"))
    })
}

fn resolve_convention(spec: &str) -> Result<TraceConvention, CliError> {
    TraceConvention::parse(spec).map_err(core_err)
}

fn resolve_param(
    kind: FamilyKind,
    alpha: Option<f64>,
    fidelity: Option<f64>,
) -> Result<f64, CliError> {
    match kind {
        FamilyKind::Werner => {
            if alpha.is_some() {
                return Err(CliError::domain(
                    "--alpha is not accepted for family werner (it is fixed to pi/4)",
                ));
            }
            fidelity.ok_or_else(|| CliError::domain("--fidelity is required for family werner"))
        }
        _ => {
            if fidelity.is_some() {
                return Err(CliError::domain(
                    "--fidelity is only accepted for family werner",
                ));
            }
            alpha.ok_or_else(|| {
                CliError::domain("--alpha is required for families phi+ and phi-")
            })
        }
    }
}

fn compute(args: ComputeArgs) -> Result<(), CliError> {
    let kind = FamilyKind::parse(&args.state.family)?;
    let param = resolve_param(kind, args.state.alpha, args.state.fidelity)?;
    let family = kind.with_param(param)?;
    let gamma = resolve_gamma(args.state.gamma, args.state.accel.as_deref())?;
    let weights = BranchWeights::new(args.state.qr).map_err(core_err)?;
    let sector = resolve_sector(&args.sector)?;
    let convention = resolve_convention(&args.state.convention)?;

    let rho = sector_state(&family, gamma, &weights, sector, &convention).map_err(core_err)?;

    let mut json = String::from("{");
    json.push_str(&format!("\"family\":\"{}\"", kind.name()));
    let param_key = if kind == FamilyKind::Werner {
        "fidelity"
    } else {
        "alpha"
    };
    json.push_str(&format!(",\"{param_key}\":{}", fmt_sig12(param)));
    json.push_str(&format!(",\"gamma\":{}", fmt_sig12(gamma)));
    json.push_str(&format!(",\"q_r\":{}", fmt_sig12(weights.q_r())));
    json.push_str(&format!(",\"sector\":\"{sector}\""));
    json.push_str(&format!(",\"convention\":\"{}\"", convention.id()));

    match args.measure.as_str() {
        "all" => {
            let report = entropic_discord(&rho).map_err(core_err)?;
            json.push_str(&format!(",\"geometric\":{}", fmt_sig12(report.geometric)));
            json.push_str(&format!(",\"entropic\":{}", fmt_sig12(report.entropic)));
            json.push_str(&format!(",\"mutual\":{}", fmt_sig12(report.mutual_info)));
            json.push_str(&format!(",\"classical\":{}", fmt_sig12(report.classical_j)));
            json.push_str(&format!(
                ",\"optimizer_theta\":{}",
                fmt_sig12(report.optimizer_direction.theta)
            ));
            json.push_str(&format!(
                ",\"optimizer_phi\":{}",
                fmt_sig12(report.optimizer_direction.phi)
            ));
        }
        name => {
            let measure = Measure::parse(name).ok_or_else(|| {
                CliError::domain(format!(
                    "--measure must be geometric, entropic, mutual, classical or all (got \"{name}\")"
                ))
            })?;
            let value = measure.evaluate(&rho).map_err(core_err)?;
            json.push_str(&format!(",\"measure\":\"{}\"", measure.name()));
            json.push_str(&format!(",\"value\":{}", fmt_sig12(value)));
        }
    }
    json.push('}');
    println!("{json}");
    Ok(())
}

struct SweepRow {
    gamma: f64,
    q_r: f64,
    param: f64,
    sector: Sector,
    measure: Measure,
    value: f64,
}

fn sweep_rows(
    kind: FamilyKind,
    sectors: &[Sector],
    measures: &[Measure],
    gammas: &[f64],
    q_rs: &[f64],
    params: &[f64],
    convention: &TraceConvention,
) -> Result<Vec<SweepRow>, CliError> {
    let mut points = Vec::new();
    for &sector in sectors {
        for &q_r in q_rs {
            for &param in params {
                for &gamma in gammas {
                    points.push((sector, q_r, param, gamma));
                }
            }
        }
    }
    let needs_entropic = measures
        .iter()
        .any(|m| !matches!(m, Measure::Geometric));
    let results: Vec<Result<Vec<SweepRow>, Error>> = points
        .par_iter()
        .map(|&(sector, q_r, param, gamma)| {
            let family = match kind {
                FamilyKind::PhiPlus => StateFamily::PhiPlus { alpha: param },
                FamilyKind::PhiMinus => StateFamily::PhiMinus { alpha: param },
                FamilyKind::Werner => StateFamily::Werner { fidelity: param },
            };
            let weights = BranchWeights::new(q_r)?;
            let rho = sector_state(&family, gamma, &weights, sector, convention)?;
            let mut values = Vec::with_capacity(measures.len());
            if needs_entropic {
                let report = entropic_discord(&rho)?;
                for &measure in measures {
                    let value = match measure {
                        Measure::Geometric => report.geometric,
                        Measure::Entropic => report.entropic,
                        Measure::Mutual => report.mutual_info,
                        Measure::Classical => report.classical_j,
                    };
                    values.push(SweepRow {
                        gamma,
                        q_r,
                        param,
                        sector,
                        measure,
                        value,
                    });
                }
            } else {
                let value = geometric_discord(&rho)?;
                values.push(SweepRow {
                    gamma,
                    q_r,
                    param,
                    sector,
                    measure: Measure::Geometric,
                    value,
                });
            }
            Ok(values)
        })
        .collect();
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r.map_err(core_err)?);
    }
    rows.sort_by(|a, b| {
        a.sector
            .name()
            .cmp(b.sector.name())
            .then(a.q_r.total_cmp(&b.q_r))
            .then(a.param.total_cmp(&b.param))
            .then(a.gamma.total_cmp(&b.gamma))
            .then(a.measure.name().cmp(b.measure.name()))
    });
    Ok(rows)
}

fn rows_to_csv(rows: &[SweepRow], convention_id: &str) -> String {
    let mut out = String::from("gamma,q_R,param,sector,convention,measure,value\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sig12(row.gamma),
            fmt_sig12(row.q_r),
            fmt_sig12(row.param),
            row.sector,
            convention_id,
            row.measure.name(),
            fmt_sig12(row.value)
        ));
    }
    out
}

fn rows_to_json(rows: &[SweepRow], convention_id: &str) -> String {
    let mut out = String::from("[\n");
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"gamma\":{},\"q_R\":{},\"param\":{},\"sector\":\"{}\",\"convention\":\"{}\",\"measure\":\"{}\",\"value\":{}}}{}\n",
            fmt_sig12(row.gamma),
            fmt_sig12(row.q_r),
            fmt_sig12(row.param),
            row.sector,
            convention_id,
            row.measure.name(),
            fmt_sig12(row.value),
            if i + 1 == rows.len() { "" } else { "," }
        ));
    }
    out.push_str("]\n");
    out
}

fn emit(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        print!("{text}");
        Ok(())
    } else {
        let path = Path::new(path);
        fs::write(path, text).map_err(|e| CliError::io(path, e))
    }
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let kind = FamilyKind::parse(&args.family)?;
    let sectors: Vec<Sector> = args
        .sector
        .split(',')
        .map(resolve_sector)
        .collect::<Result<_, _>>()?;
    let measures: Vec<Measure> = args
        .measure
        .split(',')
        .map(|name| {
            Measure::parse(name).ok_or_else(|| {
                CliError::domain(format!("--measure contains unknown measure \"{name}\""))
            })
        })
        .collect::<Result<_, _>>()?;
    let gammas = parse_range("--gamma", &args.gamma)?;
    for &g in &gammas {
        unruh_discord::unruh::validate_gamma(g).map_err(core_err)?;
    }
    let q_rs = parse_range("--qr", &args.qr)?;
    let params = match kind {
        FamilyKind::Werner => {
            if args.alpha.is_some() {
                return Err(CliError::domain(
                    "--alpha is not accepted for family werner (it is fixed to pi/4)",
                ));
            }
            let spec = args.fidelity.as_deref().ok_or_else(|| {
                CliError::domain("--fidelity is required for family werner")
            })?;
            parse_range("--fidelity", spec)?
        }
        _ => {
            if args.fidelity.is_some() {
                return Err(CliError::domain(
                    "--fidelity is only accepted for family werner",
                ));
            }
            let spec = args
                .alpha
                .as_deref()
                .ok_or_else(|| CliError::domain("--alpha is required for families phi+ and phi-"))?;
            parse_range("--alpha", spec)?
        }
    };
    for &p in &params {
        kind.with_param(p)?;
    }
    let convention = resolve_convention(&args.convention)?;
    let rows = sweep_rows(kind, &sectors, &measures, &gammas, &q_rs, &params, &convention)?;
    let text = match args.format.as_str() {
        "csv" => rows_to_csv(&rows, &convention.id()),
        "json" => rows_to_json(&rows, &convention.id()),
        other => {
            return Err(CliError::domain(format!(
                "--format must be csv or json (got \"{other}\")"
            )))
        }
    };
    emit(&args.out, &text)
}

/// Figure presets: which family, sectors and curve parameters each figure
/// sweeps. All figures run gamma over [0, pi/4] with 201 points and
/// q_R over {1, 0.75, 0.5, 0.25}, measure geometric.
struct FigurePreset {
    kind: FamilyKind,
    sectors: [Sector; 2],
    params: [f64; 2],
    /// Whether the preset's sectors are expected to keep discord at the
    /// infinite-acceleration endpoint.
    expectation: &'static str,
}

fn figure_preset(n: u32) -> Option<FigurePreset> {
    use std::f64::consts::{FRAC_PI_4, PI};
    match n {
        1 => Some(FigurePreset {
            kind: FamilyKind::PhiPlus,
            sectors: [Sector::IPlus, Sector::IiMinus],
            params: [FRAC_PI_4, PI / 12.0],
            expectation: "retained",
        }),
        2 => Some(FigurePreset {
            kind: FamilyKind::PhiPlus,
            sectors: [Sector::IMinus, Sector::IiPlus],
            params: [FRAC_PI_4, PI / 12.0],
            expectation: "vanishes",
        }),
        3 => Some(FigurePreset {
            kind: FamilyKind::Werner,
            sectors: [Sector::IPlus, Sector::IiMinus],
            params: [0.9, 0.6],
            expectation: "retained",
        }),
        4 => Some(FigurePreset {
            kind: FamilyKind::Werner,
            sectors: [Sector::IMinus, Sector::IiPlus],
            params: [0.9, 0.6],
            expectation: "vanishes",
        }),
        _ => None,
    }
}

fn sector_file_tag(sector: Sector) -> &'static str {
    match sector {
        Sector::IPlus => "Iplus",
        Sector::IMinus => "Iminus",
        Sector::IiPlus => "IIplus",
        Sector::IiMinus => "IIminus",
    }
}

fn figure(args: FigureArgs) -> Result<(), CliError> {
    let preset = figure_preset(args.number)
        .ok_or_else(|| CliError::domain(format!("figure number must be 1..=4 (got {})", args.number)))?;
    let convention = resolve_convention(&args.convention)?;
    let outdir = PathBuf::from(&args.outdir);
    fs::create_dir_all(&outdir).map_err(|e| CliError::io(&outdir, e))?;

    let gammas = linspace(0.0, std::f64::consts::FRAC_PI_4, 201);
    let q_rs = [1.0, 0.75, 0.5, 0.25];

    let mut notes = String::from("{\n");
    notes.push_str(&format!("  \"figure\": {},\n", args.number));
    notes.push_str(&format!("  \"convention\": \"{}\",\n", convention.id()));
    notes.push_str(&format!("  \"family\": \"{}\",\n", preset.kind.name()));
    notes.push_str("  \"curves\": [\n");
    let mut curve_lines = Vec::new();

    for sector in preset.sectors {
        let rows = sweep_rows(
            preset.kind,
            &[sector],
            &[Measure::Geometric],
            &gammas,
            &q_rs,
            &preset.params,
            &convention,
        )?;
        let path = outdir.join(format!(
            "figure{}_sector-{}.csv",
            args.number,
            sector_file_tag(sector)
        ));
        fs::write(&path, rows_to_csv(&rows, &convention.id()))
            .map_err(|e| CliError::io(&path, e))?;

        for &param in &preset.params {
            for &q_r in &q_rs {
                let curve: Vec<&SweepRow> = rows
                    .iter()
                    .filter(|r| r.param == param && r.q_r == q_r)
                    .collect();
                let start = curve
                    .iter()
                    .find(|r| r.gamma == 0.0)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                let end = curve
                    .iter()
                    .rev()
                    .find(|r| (r.gamma - std::f64::consts::FRAC_PI_4).abs() < 1e-15)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                let consistent = match preset.expectation {
                    "retained" => end > 1e-6,
                    _ => end < 1e-9,
                };
                curve_lines.push(format!(
                    "    {{\"sector\": \"{}\", \"param\": {}, \"q_r\": {}, \"start_value\": {}, \"end_value\": {}, \"reference_expectation\": \"{}\", \"consistent\": {}}}",
                    sector,
                    fmt_sig12(param),
                    fmt_sig12(q_r),
                    fmt_sig12(start),
                    fmt_sig12(end),
                    preset.expectation,
                    consistent
                ));
            }
        }
    }
    notes.push_str(&curve_lines.join(",\n"));
    notes.push_str("\n  ]\n}\n");
    let notes_path = outdir.join(format!("figure{}_notes.json", args.number));
    fs::write(&notes_path, notes).map_err(|e| CliError::io(&notes_path, e))?;
    Ok(())
}

fn reconcile(args: ReconcileArgs) -> Result<(), CliError> {
    if args.alpha_points < 1 || args.gamma_points < 1 || args.qr_points < 1 {
        return Err(CliError::domain("grid point counts must be >= 1"));
    }
    let outdir = PathBuf::from(&args.outdir);
    fs::create_dir_all(&outdir).map_err(|e| CliError::io(&outdir, e))?;

    let claims = claim_catalog();
    let claim_report = convention_search(&claims).map_err(core_err)?;
    let path = outdir.join("conventions.csv");
    fs::write(&path, claim_report.to_csv()).map_err(|e| CliError::io(&path, e))?;
    let path = outdir.join("conventions.json");
    fs::write(&path, claim_report.to_json()).map_err(|e| CliError::io(&path, e))?;

    let deviation_report = reconcile_closed_forms(
        &linspace(0.0, std::f64::consts::FRAC_PI_2, args.alpha_points),
        &linspace(0.0, std::f64::consts::FRAC_PI_4, args.gamma_points),
        &linspace(0.0, 1.0, args.qr_points),
    )
    .map_err(core_err)?;
    let path = outdir.join("closed_forms.csv");
    fs::write(&path, deviation_report.to_csv()).map_err(|e| CliError::io(&path, e))?;
    let path = outdir.join("closed_forms.json");
    fs::write(&path, deviation_report.to_json()).map_err(|e| CliError::io(&path, e))?;
    Ok(())
}
