use serde::Serialize;
use towerlim_core::delta::{DeltaFormula, DeltaTable};
use towerlim_core::Error;

use crate::error::CliError;
use crate::report::{line, yes_no, Report};

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub k: usize,
    pub direct: String,
    pub oracle: String,
}

#[derive(Debug, Serialize)]
pub struct DeltaReport {
    pub max_n: usize,
    pub max_k: usize,
    /// `rows[n-1][k-1] = δ_n(k)`; empty when the oracle disagreed.
    pub rows: Vec<Vec<String>>,
    pub oracle_agrees: bool,
    pub mismatch: Option<Mismatch>,
    pub vanishing_below_diagonal: bool,
    pub diagonal_is_factorial: bool,
    pub factorial_divides: bool,
}

pub fn table(
    max_n: usize,
    max_k: usize,
    formula: DeltaFormula,
    parallel: bool,
) -> Result<DeltaReport, CliError> {
    if max_n == 0 || max_k == 0 {
        return Err(CliError::Input(
            "--max-n and --max-k must be positive".into(),
        ));
    }
    let mut report = DeltaReport {
        max_n,
        max_k,
        rows: Vec::new(),
        oracle_agrees: false,
        mismatch: None,
        vanishing_below_diagonal: false,
        diagonal_is_factorial: false,
        factorial_divides: false,
    };
    match DeltaTable::build_with(max_n, max_k, formula, parallel) {
        Ok(t) => {
            let p = t.properties();
            report.rows = t
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            report.oracle_agrees = true;
            report.vanishing_below_diagonal = p.vanishing_below_diagonal;
            report.diagonal_is_factorial = p.diagonal_is_factorial;
            report.factorial_divides = p.factorial_divides;
        }
        Err(Error::OracleMismatch {
            n,
            k,
            direct,
            oracle,
        }) => {
            report.mismatch = Some(Mismatch {
                n,
                k,
                direct: direct.to_string(),
                oracle: oracle.to_string(),
            });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

impl Report for DeltaReport {
    fn render(&self, out: &mut String) {
        line!(
            out,
            "δ_n(k) for 1 <= n <= {}, 1 <= k <= {}",
            self.max_n,
            self.max_k
        );
        for (i, row) in self.rows.iter().enumerate() {
            line!(out, "n = {:>2}: {}", i + 1, row.join(" "));
        }
        match &self.mismatch {
            None => line!(out, "Stirling oracle n!·S(k,n): agrees on every entry"),
            Some(m) => line!(
                out,
                "Stirling oracle n!·S(k,n): MISMATCH at n = {}, k = {}: {} vs {}",
                m.n,
                m.k,
                m.direct,
                m.oracle
            ),
        }
        if self.oracle_agrees {
            line!(
                out,
                "zero for k < n: {}",
                yes_no(self.vanishing_below_diagonal)
            );
            line!(out, "δ_n(n) = n!: {}", yes_no(self.diagonal_is_factorial));
            line!(
                out,
                "n! divides every entry: {}",
                yes_no(self.factorial_divides)
            );
        }
    }

    fn passed(&self) -> bool {
        self.oracle_agrees
            && self.vanishing_below_diagonal
            && self.diagonal_is_factorial
            && self.factorial_divides
    }
}
