//! Report types shared by the convention-search and closed-form
//! reconciliation harnesses, with deterministic CSV and JSON emission.

use serde::Serialize;

/// Format a float with 12 significant digits, fixed-point for ordinary
/// magnitudes and scientific otherwise. Output is deterministic, which keeps
/// emitted files byte-identical across runs.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0.000000000000".to_string();
    }
    let a = v.abs();
    if (1e-4..1e12).contains(&a) {
        let digits_before = a.log10().floor() as i64 + 1;
        let decimals = (12 - digits_before).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

/// One claim evaluated under one trace convention.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimRow {
    pub convention_id: String,
    pub claim_id: String,
    pub pass: bool,
    /// The values the verdict was decided on (one per sector involved).
    pub witness: Vec<f64>,
}

/// Qualitative-claim table over the whole convention space.
#[derive(Debug, Clone, Serialize)]
pub struct ReconciliationReport {
    pub rows: Vec<ClaimRow>,
}

impl ReconciliationReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("convention,claim,pass,witness_a,witness_b\n");
        for row in &self.rows {
            let w0 = row.witness.first().map(|&v| fmt_sig12(v)).unwrap_or_default();
            let w1 = row.witness.get(1).map(|&v| fmt_sig12(v)).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.convention_id, row.claim_id, row.pass, w0, w1
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn rows_for_convention<'a>(
        &'a self,
        convention_id: &'a str,
    ) -> impl Iterator<Item = &'a ClaimRow> + 'a {
        self.rows
            .iter()
            .filter(move |r| r.convention_id == convention_id)
    }
}

/// Max deviation of one closed-form reading from the pipeline under one
/// convention, over a parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct DeviationRow {
    pub sector: String,
    pub reading: String,
    pub convention_id: String,
    pub max_abs_deviation: f64,
    pub grid_points: usize,
    /// Machine-readable record of the exact formula the reading evaluates.
    pub formula: String,
}

/// Closed-form vs pipeline comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct DeviationReport {
    pub rows: Vec<DeviationRow>,
}

impl DeviationReport {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("sector,reading,convention,max_abs_deviation,grid_points,formula\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.sector,
                row.reading,
                row.convention_id,
                fmt_sig12(row.max_abs_deviation),
                row.grid_points,
                row.formula
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_sig12_fixed_point() {
        assert_eq!(fmt_sig12(0.5), "0.500000000000");
        assert_eq!(fmt_sig12(0.1875), "0.187500000000");
        assert_eq!(fmt_sig12(0.0), "0.000000000000");
        assert_eq!(fmt_sig12(std::f64::consts::FRAC_PI_4), "0.785398163397");
        assert_eq!(fmt_sig12(3.0), "3.00000000000");
        assert_eq!(fmt_sig12(-0.25), "-0.250000000000");
        assert_eq!(fmt_sig12(0.000123), "0.000123000000000");
    }

    #[test]
    fn fmt_sig12_scientific_for_extremes() {
        assert_eq!(fmt_sig12(1e-16), "1.00000000000e-16");
        assert!(fmt_sig12(3.5e14).contains('e'));
    }

    #[test]
    fn csv_shapes() {
        let report = ReconciliationReport {
            rows: vec![ClaimRow {
                convention_id: "plain".into(),
                claim_id: "c".into(),
                pass: true,
                witness: vec![0.1875],
            }],
        };
        let csv = report.to_csv();
        assert!(csv.starts_with("convention,claim,pass"));
        assert!(csv.contains("plain,c,true,0.187500000000,"));
    }
}
