//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the decisive numbers (run with `--nocapture` to see them all).

use std::f64::consts::{FRAC_PI_4, PI};

use unruh_discord::closed_form::{dg_closed_form, linspace, Reading};
use unruh_discord::correlation::{
    entropic_discord, geometric_discord, geometric_discord_oracle, mutual_information,
};
use unruh_discord::fock::{mix, outer, ModeLabel, ModeOrder, PureState};
use unruh_discord::reduction::{
    claim_catalog, convention_search, sector_state, Sector, TraceConvention,
};
use unruh_discord::unruh::{BranchWeights, StateFamily};

use num_complex::Complex64;

fn line(criterion: &str, pass: bool, detail: &str) {
    println!(
        "{criterion} {}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn phi_plus_sector(
    alpha: f64,
    gamma: f64,
    q_r: f64,
    sector: Sector,
    conv: &TraceConvention,
) -> unruh_discord::fock::DensityMatrix {
    sector_state(
        &StateFamily::PhiPlus { alpha },
        gamma,
        &BranchWeights::new(q_r).unwrap(),
        sector,
        conv,
    )
    .unwrap()
}

#[test]
fn a1_inertial_limit_reproduces_pure_state_discord() {
    let plain = TraceConvention::plain();
    let mut worst = 0.0f64;
    for alpha in [PI / 12.0, PI / 6.0, FRAC_PI_4] {
        let rho = phi_plus_sector(alpha, 0.0, 1.0, Sector::IPlus, &plain);
        let got = geometric_discord(&rho).unwrap();
        let want = 0.5 * (2.0 * alpha).sin().powi(2);
        worst = worst.max((got - want).abs());
    }
    let pass = worst < 1e-9;
    line(
        "A1",
        pass,
        &format!("D_G(I+, gamma=0, qR=1) = sin^2(2a)/2 for a in {{pi/12, pi/6, pi/4}}; max |dev| = {worst:.3e}"),
    );
    assert!(pass);
}

#[test]
fn a2_product_input_has_zero_correlations_everywhere() {
    let (gamma, q_r) = (FRAC_PI_4, 0.75);
    let mut worst = 0.0f64;
    for conv in TraceConvention::enumerate() {
        for sector in Sector::ALL {
            let rho = phi_plus_sector(0.0, gamma, q_r, sector, &conv);
            let report = entropic_discord(&rho).unwrap();
            for v in [report.geometric, report.entropic, report.mutual_info] {
                worst = worst.max(v.abs());
            }
        }
    }
    let pass = worst < 1e-9;
    line(
        "A2",
        pass,
        &format!("alpha=0: geometric/entropic/mutual over 4 sectors x 96 conventions; max |value| = {worst:.3e}"),
    );
    assert!(pass);
}

#[test]
fn a3_corrected_i_plus_formula_equals_plain_pipeline() {
    let plain = TraceConvention::plain();
    let alphas = linspace(0.0, PI / 2.0, 21);
    let gammas = linspace(0.0, FRAC_PI_4, 21);
    let q_rs = linspace(0.0, 1.0, 5);
    let mut worst = 0.0f64;
    for &alpha in &alphas {
        for &gamma in &gammas {
            for &q_r in &q_rs {
                let w = BranchWeights::new(q_r).unwrap();
                let closed =
                    dg_closed_form(Reading::Corrected, Sector::IPlus, alpha, gamma, &w).unwrap();
                let pipeline = geometric_discord(&phi_plus_sector(
                    alpha,
                    gamma,
                    q_r,
                    Sector::IPlus,
                    &plain,
                ))
                .unwrap();
                worst = worst.max((closed - pipeline).abs());
            }
        }
    }
    let pass = worst < 1e-9;
    line(
        "A3",
        pass,
        &format!("corrected I+ closed form vs plain pipeline on 21x21x5 grid; max |dev| = {worst:.3e}"),
    );
    assert!(pass);
}

#[test]
fn a4_infinite_acceleration_endpoint_is_three_sixteenths() {
    let plain = TraceConvention::plain();
    let rho = phi_plus_sector(FRAC_PI_4, FRAC_PI_4, 1.0, Sector::IPlus, &plain);
    let bloch_form = geometric_discord(&rho).unwrap();
    let closed = dg_closed_form(
        Reading::Corrected,
        Sector::IPlus,
        FRAC_PI_4,
        FRAC_PI_4,
        &BranchWeights::single_mode(),
    )
    .unwrap();
    let oracle = geometric_discord_oracle(&rho, 128).unwrap();
    let want = 3.0 / 16.0;
    let pass = (bloch_form - want).abs() < 1e-9
        && (closed - want).abs() < 1e-9
        && (oracle - want).abs() < 1e-4;
    line(
        "A4",
        pass,
        &format!(
            "D_G(I+) at (pi/4, pi/4, qR=1): bloch {bloch_form:.12}, closed {closed:.12}, oracle(128) {oracle:.12}, want 0.1875"
        ),
    );
    assert!(pass);
}

#[test]
fn a5_werner_intercepts_are_half_fidelity_squared() {
    let plain = TraceConvention::plain();
    let mut worst = 0.0f64;
    for fidelity in [0.9, 0.6] {
        let rho = sector_state(
            &StateFamily::Werner { fidelity },
            0.0,
            &BranchWeights::single_mode(),
            Sector::IPlus,
            &plain,
        )
        .unwrap();
        let got = geometric_discord(&rho).unwrap();
        worst = worst.max((got - fidelity * fidelity / 2.0).abs());
    }
    let pass = worst < 1e-9;
    line(
        "A5",
        pass,
        &format!("D_G(Werner, gamma=0, qR=1) = F^2/2 for F in {{0.9, 0.6}}; max |dev| = {worst:.3e}"),
    );
    assert!(pass);
}

#[test]
fn a6_convention_search_emits_full_claim_table() {
    let claims = claim_catalog();
    let report = convention_search(&claims).unwrap();

    // completeness: every convention evaluated against every claim
    let conventions = TraceConvention::enumerate();
    let complete = report.rows.len() == conventions.len() * claims.len();
    let mut families_per_convention = true;
    for conv in &conventions {
        let conv_id = conv.id();
        let ids: Vec<&str> = report
            .rows_for_convention(&conv_id)
            .map(|r| r.claim_id.as_str())
            .collect();
        for prefix in ["retained;", "vanishes;", "coincides;"] {
            if !ids.iter().any(|id| id.starts_with(prefix)) {
                families_per_convention = false;
            }
        }
    }

    // the serialized forms must carry every row
    let csv = report.to_csv();
    let json = report.to_json();
    let serialized_ok =
        csv.lines().count() == report.rows.len() + 1 && json.contains("\"rows\"");

    // plain must confirm the retained-I+ claim at qR = 1 for both alphas
    let plain = TraceConvention::plain().id();
    let retained_i_plus_at_unit_qr = report
        .rows_for_convention(&plain)
        .filter(|r| r.claim_id.starts_with("retained;I+;qr=1.00"))
        .collect::<Vec<_>>();
    let plain_ok = retained_i_plus_at_unit_qr.len() == 2
        && retained_i_plus_at_unit_qr.iter().all(|r| r.pass);

    // the rest of the table is reported, not asserted; surface the headline
    // numbers for the record
    for r in report.rows_for_convention(&plain) {
        if r.claim_id.starts_with("retained;II-;qr=1.00")
            || r.claim_id.starts_with("vanishes;I-;qr=1.00")
        {
            println!(
                "A6 note: plain convention, claim `{}` -> pass={} witness={:?}",
                r.claim_id, r.pass, r.witness
            );
        }
    }
    let best = {
        let mut per: Vec<(usize, String)> = conventions
            .iter()
            .map(|c| {
                (
                    report.rows_for_convention(&c.id()).filter(|r| r.pass).count(),
                    c.id(),
                )
            })
            .collect();
        per.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        per[0].clone()
    };
    println!(
        "A6 note: best convention `{}` passes {}/{} claims; zero conventions pass all",
        best.1,
        best.0,
        claims.len()
    );

    let pass = complete && families_per_convention && serialized_ok && plain_ok;
    line(
        "A6",
        pass,
        &format!(
            "claim table: {} rows over {} conventions x {} claims; plain passes retained-I+ at qR=1",
            report.rows.len(),
            conventions.len(),
            claims.len()
        ),
    );
    assert!(pass);
}

/// The phi- family is pinned to the minus-branch one-particle state exactly
/// as its reference expression reads, which is not the particle/antiparticle
/// mirror of the plus branch: its inertial single-mode limit puts Bob's excitation
/// in an antiparticle mode, so e.g. at (alpha=pi/4, gamma=0, qR=1) the I+
/// sector of phi- is a product state (D_G = 0) where phi+ gives 0.5. The
/// sweep values therefore cannot agree within 1e-9; this criterion is
/// expected to fail and is kept faithful rather than weakened. See the
/// README section on known discrepancies.
#[test]
fn a7_phi_minus_sweeps_match_phi_plus() {
    let plain = TraceConvention::plain();
    let gammas = linspace(0.0, FRAC_PI_4, 201);
    let q_rs = [1.0, 0.75, 0.5, 0.25];
    let alphas = [FRAC_PI_4, PI / 12.0];
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for sector in Sector::ALL {
        for &q_r in &q_rs {
            let weights = BranchWeights::new(q_r).unwrap();
            for &alpha in &alphas {
                for &gamma in &gammas {
                    let plus = geometric_discord(
                        &sector_state(
                            &StateFamily::PhiPlus { alpha },
                            gamma,
                            &weights,
                            sector,
                            &plain,
                        )
                        .unwrap(),
                    )
                    .unwrap();
                    let minus = geometric_discord(
                        &sector_state(
                            &StateFamily::PhiMinus { alpha },
                            gamma,
                            &weights,
                            sector,
                            &plain,
                        )
                        .unwrap(),
                    )
                    .unwrap();
                    let dev = (plus - minus).abs();
                    if dev > worst {
                        worst = dev;
                        worst_at = format!(
                            "sector {sector}, qR={q_r}, alpha={alpha:.6}, gamma={gamma:.6}: phi+ {plus:.9} vs phi- {minus:.9}"
                        );
                    }
                }
            }
        }
    }
    let pass = worst < 1e-9;
    line(
        "A7",
        pass,
        &format!("phi- vs phi+ over figure-1/2 sweep grids (plain); max |dev| = {worst:.3e} at {worst_at}"),
    );
    assert!(
        pass,
        "phi- sweep values diverge from phi+ (max dev {worst:.3e} at {worst_at}); \
         the minus-branch state as displayed is not the mirror of the plus branch, \
         so this equality cannot hold (see README, known discrepancies)"
    );
}

#[test]
fn a8_sweep_rows_are_coherent_and_positive() {
    let plain = TraceConvention::plain();
    let gammas = [0.0, FRAC_PI_4 / 2.0, FRAC_PI_4];
    let q_rs = [0.25, 0.75, 1.0];
    let mut families: Vec<StateFamily> = Vec::new();
    for alpha in [PI / 12.0, FRAC_PI_4] {
        families.push(StateFamily::PhiPlus { alpha });
    }
    for fidelity in [0.6, 0.9] {
        families.push(StateFamily::Werner { fidelity });
    }
    let mut rows = 0usize;
    let mut max_identity_dev = 0.0f64;
    let mut max_oracle_gap = 0.0f64;
    let mut ordering_ok = true;
    for family in &families {
        for &gamma in &gammas {
            for &q_r in &q_rs {
                let weights = BranchWeights::new(q_r).unwrap();
                for sector in Sector::ALL {
                    let rho = sector_state(family, gamma, &weights, sector, &plain).unwrap();
                    rho.validate().expect("reduced state PSD within 1e-10");
                    let report = entropic_discord(&rho).unwrap();
                    let identity_dev =
                        (report.entropic - (report.mutual_info - report.classical_j)).abs();
                    max_identity_dev = max_identity_dev.max(identity_dev);
                    let oracle = geometric_discord_oracle(&rho, 32).unwrap();
                    max_oracle_gap = max_oracle_gap.max(report.geometric - oracle);
                    ordering_ok &=
                        report.mutual_info >= report.classical_j - 1e-9 && report.classical_j >= 0.0;
                    rows += 1;
                }
            }
        }
    }
    let pass = max_identity_dev < 1e-6 && max_oracle_gap < 1e-12 && ordering_ok;
    line(
        "A8",
        pass,
        &format!(
            "{rows} sweep rows: max |entropic - (mutual - classical)| = {max_identity_dev:.3e}; max (D_G - oracle) = {max_oracle_gap:.3e}; mutual >= classical >= 0; all states PSD"
        ),
    );
    assert!(pass);
}

#[test]
fn a9_entropic_golden_values() {
    let order = ModeOrder::new(vec![ModeLabel::Alice, ModeLabel::ParticleI]).unwrap();
    let h = (0.5f64).sqrt();
    let bell = outer(
        &PureState::new(
            order.clone(),
            vec![
                Complex64::new(h, 0.0),
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::new(h, 0.0),
            ],
        )
        .unwrap(),
    );
    let cc = mix(&[
        (0.5, outer(&PureState::basis_state(order.clone(), 0))),
        (0.5, outer(&PureState::basis_state(order, 3))),
    ])
    .unwrap();

    let bell_report = entropic_discord(&bell).unwrap();
    let cc_report = entropic_discord(&cc).unwrap();
    let checks = [
        (bell_report.mutual_info, 2.0),
        (bell_report.classical_j, 1.0),
        (bell_report.entropic, 1.0),
        (cc_report.mutual_info, 1.0),
        (cc_report.classical_j, 1.0),
        (cc_report.entropic, 0.0),
    ];
    let worst = checks
        .iter()
        .map(|(got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    let _ = mutual_information(&bell).unwrap();
    let pass = worst < 1e-6;
    line(
        "A9",
        pass,
        &format!("Bell (I,J,D) = (2,1,1), classical mix (1,1,0); max |dev| = {worst:.3e}"),
    );
    assert!(pass);
}
