use num_bigint::BigInt;
use serde::Serialize;
use towerlim_core::prufer::{
    growth_witness, in_a0n, stable_membership, ClassLiteral, Membership, NonMember, PrimeWindow,
    PruferClass,
};

use crate::error::CliError;
use crate::report::{line, yes_no, Report};

#[derive(Debug, Serialize)]
pub struct Blocker {
    pub index: usize,
    pub prime: u64,
    pub order: String,
}

impl From<NonMember> for Blocker {
    fn from(w: NonMember) -> Self {
        Blocker {
            index: w.index,
            prime: w.prime,
            order: w.order.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub class: String,
    pub primes: Vec<u64>,
    pub representative: String,
    pub n: usize,
    pub member: bool,
    pub k: Option<String>,
    pub residual: Option<String>,
    pub blocker: Option<Blocker>,
}

fn class_over(
    lit: &ClassLiteral,
    n: usize,
    window: Option<usize>,
) -> Result<PruferClass, CliError> {
    let w = lit.window(n.max(window.unwrap_or(0)))?;
    Ok(PruferClass::new(lit.element(&w)?))
}

pub fn reduce(
    lit: &ClassLiteral,
    n: usize,
    window: Option<usize>,
) -> Result<ReduceReport, CliError> {
    let class = class_over(lit, n, window)?;
    let rep = class.representative();
    let mut report = ReduceReport {
        class: rep.literal(),
        primes: class.window().primes().to_vec(),
        representative: rep.to_string(),
        n,
        member: false,
        k: None,
        residual: None,
        blocker: None,
    };
    match in_a0n(&class, n)? {
        Membership::Member { k, residual } => {
            report.member = true;
            report.k = Some(k.to_string());
            report.residual = Some(residual.to_string());
        }
        Membership::NotMember(w) => report.blocker = Some(w.into()),
    }
    Ok(report)
}

fn render_membership(out: &mut String, member: bool, n: usize, blocker: &Option<Blocker>) {
    line!(out, "in A_0^({n}): {}", yes_no(member));
    if let Some(b) = blocker {
        line!(
            out,
            "blocked at coordinate {} (p = {}): order {} does not divide {}",
            b.index,
            b.prime,
            b.order,
            b.prime
        );
    }
}

impl Report for ReduceReport {
    fn render(&self, out: &mut String) {
        line!(out, "class {} over primes {:?}", self.class, self.primes);
        line!(out, "representative: {}", self.representative);
        render_membership(out, self.member, self.n, &self.blocker);
        if let (Some(k), Some(r)) = (&self.k, &self.residual) {
            line!(out, "k = {k}");
            line!(out, "residual = {r}");
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MembershipReport {
    pub class: String,
    pub primes: Vec<u64>,
    pub n: usize,
    pub member: bool,
    pub blocker: Option<Blocker>,
    /// Largest `n` within the window with the class in `A_0^(n)`.
    pub largest_n: usize,
    /// Every coordinate has order dividing its prime.
    pub in_stable_image_window: bool,
}

pub fn membership(
    lit: &ClassLiteral,
    n: usize,
    window: Option<usize>,
) -> Result<MembershipReport, CliError> {
    let class = class_over(lit, n, window)?;
    let (member, blocker) = match in_a0n(&class, n)? {
        Membership::Member { .. } => (true, None),
        Membership::NotMember(w) => (false, Some(w.into())),
    };
    let stable = stable_membership(&class);
    Ok(MembershipReport {
        class: class.representative().literal(),
        primes: class.window().primes().to_vec(),
        n,
        member,
        blocker,
        largest_n: stable.largest_n,
        in_stable_image_window: stable.all_primes,
    })
}

impl Report for MembershipReport {
    fn render(&self, out: &mut String) {
        line!(out, "class {} over primes {:?}", self.class, self.primes);
        render_membership(out, self.member, self.n, &self.blocker);
        line!(out, "largest n in window: {}", self.largest_n);
        line!(
            out,
            "order divides p at every prime of the window: {}",
            yes_no(self.in_stable_image_window)
        );
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessRow {
    pub n: usize,
    pub prime: u64,
    pub minimal_reducer: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub coord: String,
    pub rows: Vec<WitnessRow>,
    pub strictly_increasing: bool,
}

pub fn witness(
    lit: &ClassLiteral,
    windows: std::ops::RangeInclusive<usize>,
) -> Result<WitnessReport, CliError> {
    if windows.is_empty() || *windows.start() == 0 {
        return Err(CliError::Input(
            "window range must be non-empty and start at 1 or more".into(),
        ));
    }
    let x = lit.element(&lit.window(1)?)?;
    let needed = x.window().len();
    if *windows.start() < needed {
        return Err(CliError::Input(format!(
            "`{lit}` needs windows of at least {needed} primes"
        )));
    }
    let table = growth_witness(&x, windows)?;
    let reducers: Vec<Option<BigInt>> = table.iter().map(|(_, k)| k.clone()).collect();
    let strictly_increasing = reducers
        .windows(2)
        .all(|w| matches!((&w[0], &w[1]), (Some(a), Some(b)) if a < b));
    let last = table.last().map_or(0, |(n, _)| *n);
    let primes = PrimeWindow::first(last);
    Ok(WitnessReport {
        coord: x.literal(),
        rows: table
            .into_iter()
            .map(|(n, k)| WitnessRow {
                n,
                prime: primes.primes()[n - 1],
                minimal_reducer: k.map(|k| k.to_string()),
            })
            .collect(),
        strictly_increasing,
    })
}

impl Report for WitnessReport {
    fn render(&self, out: &mut String) {
        line!(
            out,
            "minimal reducers of {} clearing the first N primes",
            self.coord
        );
        line!(out, "{:>4}  {:>4}  minimal reducer", "N", "p_N");
        for r in &self.rows {
            let k = r.minimal_reducer.as_deref().unwrap_or("none");
            line!(out, "{:>4}  {:>4}  {}", r.n, r.prime, k);
        }
        line!(
            out,
            "strictly increasing: {}",
            yes_no(self.strictly_increasing)
        );
    }
}
