use serde::Serialize;

/// A command result with a text rendering and a JSON mirror.
pub trait Report: Serialize {
    fn render(&self, out: &mut String);

    /// False when the report records a failed check.
    fn passed(&self) -> bool {
        true
    }
}

pub fn to_text<R: Report>(report: &R) -> String {
    let mut out = String::new();
    report.render(&mut out);
    out
}

pub fn to_json<R: Report>(report: &R) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Appends one formatted line to a `&mut String`.
macro_rules! line {
    ($out:expr) => {{
        let o: &mut String = $out;
        o.push('\n');
    }};
    ($out:expr, $($arg:tt)*) => {{
        let o: &mut String = $out;
        o.push_str(&format!($($arg)*));
        o.push('\n');
    }};
}
pub(crate) use line;
