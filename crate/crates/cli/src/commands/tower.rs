use serde::Serialize;
use towerlim_core::towers::{
    gray_kernel_levels, is_mittag_leffler, lim1_classification, lim_at_horizon, stable_image_tower,
    GrayTag, Lim1Certificate, Lim1Classification, StageStatus,
};
use towerlim_core::Tower;

use crate::error::CliError;
use crate::report::{line, yes_no, Report};

#[derive(Debug, Serialize)]
pub struct StageReport {
    pub stage: usize,
    pub group: String,
    /// Index of `G_n^(k)` in `G_n` for `k = n..=N`; `inf` for infinite index.
    pub chain_indices: Vec<String>,
    pub chain_groups: Vec<String>,
    pub status: String,
    pub strictly_decreasing: bool,
}

#[derive(Debug, Serialize)]
pub struct Lim1Report {
    pub zero_certified: bool,
    pub verdict: String,
}

#[derive(Debug, Serialize)]
pub struct GrayReport {
    pub k: usize,
    pub prefix_stages: usize,
    pub derived_stages: Vec<String>,
    pub lim1: Lim1Report,
    pub tag: String,
}

#[derive(Debug, Serialize)]
pub struct TowerReport {
    pub name: String,
    pub horizon: usize,
    pub stages: Vec<StageReport>,
    pub mittag_leffler: bool,
    pub lim1: Lim1Report,
    pub lim_at_horizon: String,
    pub stable_images: Vec<String>,
    pub stable_bonds_surjective: bool,
    pub gray: Option<GrayReport>,
}

fn status_text(s: &StageStatus) -> String {
    match s {
        StageStatus::Stable { from } => format!("stable from {from}"),
        StageStatus::Unstable { witness: (a, b) } => format!("unstable, witness ({a}, {b})"),
        StageStatus::Horizon => "horizon".into(),
    }
}

fn lim1_report(c: &Lim1Classification) -> Lim1Report {
    let verdict = match c {
        Lim1Classification::ZeroCertified(Lim1Certificate::Stabilized { .. }) => {
            "zero (Mittag-Leffler below the horizon)".to_string()
        }
        Lim1Classification::ZeroCertified(Lim1Certificate::FiniteStages) => {
            "zero (all stages finite)".to_string()
        }
        Lim1Classification::UndeterminedAtHorizon { unstable } => {
            format!(
                "undetermined at horizon ({} stages not stabilized)",
                unstable.len()
            )
        }
    };
    Lim1Report {
        zero_certified: c.is_zero_certified(),
        verdict,
    }
}

pub fn analyze(name: &str, tower: &Tower, gray: Option<usize>) -> Result<TowerReport, CliError> {
    let ml = is_mittag_leffler(tower);
    let stages = ml
        .stages
        .iter()
        .map(|r| StageReport {
            stage: r.stage,
            group: tower.stages()[r.stage - 1].to_string(),
            chain_indices: r
                .chain
                .iter()
                .map(|s| {
                    s.index()
                        .map_or_else(|| "inf".to_string(), |i| i.to_string())
                })
                .collect(),
            chain_groups: r.chain.iter().map(|s| s.group().to_string()).collect(),
            status: status_text(&r.status),
            strictly_decreasing: r.strictly_decreasing(),
        })
        .collect();
    let stable = stable_image_tower(tower);
    let gray = gray
        .map(|k| {
            gray_kernel_levels(tower, k).map(|g| GrayReport {
                k,
                prefix_stages: g.prefix_stages,
                derived_stages: g.derived.stages().iter().map(ToString::to_string).collect(),
                lim1: lim1_report(&g.lim1),
                tag: match g.tag {
                    GrayTag::WholeLim1 => "level is all of lim¹".into(),
                    GrayTag::Undetermined => "undetermined at horizon".into(),
                },
            })
        })
        .transpose()?;
    Ok(TowerReport {
        name: name.to_string(),
        horizon: tower.horizon(),
        stages,
        mittag_leffler: ml.is_ml(),
        lim1: lim1_report(&lim1_classification(tower)),
        lim_at_horizon: lim_at_horizon(tower).group.to_string(),
        stable_images: stable
            .tower
            .stages()
            .iter()
            .map(ToString::to_string)
            .collect(),
        stable_bonds_surjective: stable.bonds_surjective,
        gray,
    })
}

impl Report for TowerReport {
    fn render(&self, out: &mut String) {
        line!(out, "tower {} (horizon {})", self.name, self.horizon);
        for s in &self.stages {
            line!(out, "stage {}: {}", s.stage, s.group);
            line!(out, "  chain of indices: {}", s.chain_indices.join("·"));
            line!(out, "  status: {}", s.status);
        }
        line!(
            out,
            "Mittag-Leffler below horizon: {}",
            yes_no(self.mittag_leffler)
        );
        line!(out, "lim¹: {}", self.lim1.verdict);
        line!(out, "lim at horizon: {}", self.lim_at_horizon);
        line!(out, "stable images: {}", self.stable_images.join(" <- "));
        line!(
            out,
            "stable image bonds surjective: {}",
            yes_no(self.stable_bonds_surjective)
        );
        if let Some(g) = &self.gray {
            line!(
                out,
                "derived tower at k = {}: {}",
                g.k,
                g.derived_stages.join(" <- ")
            );
            line!(out, "  leading copies of G_k: {}", g.prefix_stages);
            line!(out, "  lim¹: {}", g.lim1.verdict);
            line!(out, "  filtration level: {}", g.tag);
        }
    }
}
