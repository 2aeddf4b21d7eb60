use serde::Serialize;
use towerlim_core::towers::{six_term_check, ArrowStatus};

use crate::error::CliError;
use crate::report::{line, Report};
use crate::scenario::Scenario;

#[derive(Debug, Serialize)]
pub struct ArrowReport {
    pub arrow: String,
    pub status: String,
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SequenceReport {
    pub name: String,
    pub horizon: usize,
    /// `lim K`, `lim G`, `lim H` at the horizon.
    pub limits: [String; 3],
    pub lim1_zero_certified: [bool; 3],
    pub arrows: Vec<ArrowReport>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct SixTermReport {
    pub sequences: Vec<SequenceReport>,
}

pub fn check(scenario: &Scenario, only: Option<&str>) -> Result<SixTermReport, CliError> {
    let names: Vec<&str> = match only {
        Some(n) => vec![n],
        None => scenario.sequences.iter().map(|(n, _)| n.as_str()).collect(),
    };
    if names.is_empty() {
        return Err(CliError::Input("scenario declares no sequences".into()));
    }
    let sequences = names
        .into_iter()
        .map(|name| {
            let r = six_term_check(&scenario.ses(name)?)?;
            Ok(SequenceReport {
                name: name.to_string(),
                horizon: r.horizon,
                limits: [&r.lim_kernel, &r.lim_middle, &r.lim_quotient]
                    .map(|l| l.group.to_string()),
                lim1_zero_certified: [0, 1, 2].map(|i| r.lim1[i].is_zero_certified()),
                arrows: r
                    .arrows
                    .iter()
                    .map(|a| {
                        let (status, detail) = match &a.status {
                            ArrowStatus::Verified => ("verified", None),
                            ArrowStatus::Failed => ("FAILED", None),
                            ArrowStatus::Skipped(why) => ("skipped", Some(why.clone())),
                        };
                        ArrowReport {
                            arrow: a.arrow.to_string(),
                            status: status.into(),
                            detail,
                        }
                    })
                    .collect(),
                passed: r.passed(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SixTermReport { sequences })
}

impl Report for SixTermReport {
    fn render(&self, out: &mut String) {
        for s in &self.sequences {
            line!(out, "sequence {} (horizon {})", s.name, s.horizon);
            line!(
                out,
                "  lim K = {}, lim G = {}, lim H = {}",
                s.limits[0],
                s.limits[1],
                s.limits[2]
            );
            let tags = s
                .lim1_zero_certified
                .map(|z| if z { "zero" } else { "undetermined" });
            line!(out, "  lim¹: K {}, G {}, H {}", tags[0], tags[1], tags[2]);
            for a in &s.arrows {
                match &a.detail {
                    Some(d) => line!(out, "  {}: {} ({})", a.arrow, a.status, d),
                    None => line!(out, "  {}: {}", a.arrow, a.status),
                }
            }
            line!(out, "  result: {}", if s.passed { "pass" } else { "FAIL" });
        }
    }

    fn passed(&self) -> bool {
        self.sequences.iter().all(|s| s.passed)
    }
}
