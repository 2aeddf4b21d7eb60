//! Scenario files: named towers, short exact sequences of towers, class
//! literals and default parameters, in a line-oriented text format.
//!
//! The grammar is documented in the repository README. Parsing reports the
//! line and column of the first error; [`Scenario`]'s `Display` prints the
//! canonical form, which parses back to an equal value.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use towerlim_core::prufer::{truncated_prufer_ses, ClassLiteral, PrimeWindow};
use towerlim_core::towers::{TowerMap, TowerSes};
use towerlim_core::{FgAbGroup, Homomorphism, Matrix, Tower};

use crate::error::CliError;

/// Horizon used when neither the command line nor the scenario gives one.
pub const DEFAULT_HORIZON: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Matrix rows as written; `[]` stands for any matrix with no entries.
pub type RawMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerSpec {
    /// `n -> k(n-1)Z` with bonds the prime multiplications.
    Primorial { horizon: Option<usize> },
    /// `Z` with every bond multiplication by `factor`.
    Scaling { factor: i64, horizon: Option<usize> },
    /// `G` with identity bonds.
    Constant {
        group: FgAbGroup,
        horizon: Option<usize>,
    },
    /// Stages from `n = 1` upward; `bonds[n-1] : G_{n+1} -> G_n`.
    Explicit {
        stages: Vec<FgAbGroup>,
        bonds: Vec<RawMatrix>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SesSpec {
    PrimePower {
        p: u64,
        horizon: usize,
    },
    Prufer {
        window: usize,
        exponent: u32,
        horizon: Option<usize>,
    },
    Explicit {
        kernel: String,
        middle: String,
        quotient: String,
        inclusion: Vec<RawMatrix>,
        projection: Vec<RawMatrix>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scenario {
    pub horizon: Option<usize>,
    pub window: Option<usize>,
    pub delta: Option<(usize, usize)>,
    pub classes: Vec<(String, ClassLiteral)>,
    pub towers: Vec<(String, TowerSpec)>,
    pub sequences: Vec<(String, SesSpec)>,
}

/// Towers available to `tower analyze` without a scenario file.
pub const BUILTIN: &str = "\
tower primorial = primorial
tower doubling = scaling 2
tower identity = scaling 1
tower constant = constant Z/6
tower reduction {
  stage Z/2
  stage Z/4
  stage Z/8
  stage Z/16
  bond [[1]]
  bond [[1]]
  bond [[1]]
}
ses prime-power = prime-power 2 6
";

pub fn builtin() -> Scenario {
    BUILTIN.parse().expect("built-in scenario parses")
}

impl Scenario {
    pub fn class(&self, name: &str) -> Option<&ClassLiteral> {
        self.classes.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn tower_spec(&self, name: &str) -> Option<&TowerSpec> {
        self.towers.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn ses_spec(&self, name: &str) -> Option<&SesSpec> {
        self.sequences
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    /// Builds a named tower. `horizon` overrides the scenario default for
    /// generated towers and truncates explicit ones.
    pub fn tower(&self, name: &str, horizon: Option<usize>) -> Result<Tower, CliError> {
        let spec = self
            .tower_spec(name)
            .ok_or_else(|| CliError::Input(format!("no tower named `{name}`")))?;
        let resolve = |own: Option<usize>| {
            let n = horizon.or(own).or(self.horizon).unwrap_or(DEFAULT_HORIZON);
            if n == 0 {
                Err(CliError::Input("horizon must be at least 1".into()))
            } else {
                Ok(n)
            }
        };
        Ok(match spec {
            TowerSpec::Primorial { horizon } => Tower::primorial(resolve(*horizon)?),
            TowerSpec::Scaling { factor, horizon } => Tower::scaling(*factor, resolve(*horizon)?),
            TowerSpec::Constant { group, horizon } => Tower::constant(group, resolve(*horizon)?),
            TowerSpec::Explicit { stages, bonds } => {
                let maps = bonds
                    .iter()
                    .enumerate()
                    .map(|(i, m)| homomorphism(&stages[i + 1], &stages[i], m))
                    .collect::<Result<Vec<_>, _>>()?;
                let tower = Tower::new(stages.clone(), maps)?;
                match horizon {
                    Some(n) => tower.truncate(n)?,
                    None => tower,
                }
            }
        })
    }

    pub fn ses(&self, name: &str) -> Result<TowerSes, CliError> {
        let spec = self
            .ses_spec(name)
            .ok_or_else(|| CliError::Input(format!("no sequence named `{name}`")))?;
        Ok(match spec {
            SesSpec::PrimePower { p, horizon } => TowerSes::prime_power(*p, *horizon)?,
            SesSpec::Prufer {
                window,
                exponent,
                horizon,
            } => truncated_prufer_ses(
                &PrimeWindow::first(*window),
                *exponent,
                horizon.unwrap_or(*window),
            )?,
            SesSpec::Explicit {
                kernel,
                middle,
                quotient,
                inclusion,
                projection,
            } => {
                let k = self.tower(kernel, None)?;
                let g = self.tower(middle, None)?;
                let h = self.tower(quotient, None)?;
                let levelwise = |maps: &[RawMatrix], s: &Tower, t: &Tower| {
                    if maps.len() != s.horizon() || s.horizon() != t.horizon() {
                        return Err(CliError::Input(format!(
                            "sequence `{name}` needs {} maps between towers of equal horizon",
                            s.horizon()
                        )));
                    }
                    maps.iter()
                        .zip(s.stages().iter().zip(t.stages()))
                        .map(|(m, (a, b))| homomorphism(a, b, m))
                        .collect::<Result<Vec<_>, _>>()
                };
                let incl = levelwise(inclusion, &k, &g)?;
                let proj = levelwise(projection, &g, &h)?;
                TowerSes::new(
                    TowerMap::new(k, g.clone(), incl)?,
                    TowerMap::new(g, h, proj)?,
                )?
            }
        })
    }
}

fn homomorphism(
    source: &FgAbGroup,
    target: &FgAbGroup,
    raw: &RawMatrix,
) -> Result<Homomorphism, CliError> {
    let (rows, cols) = (target.num_generators(), source.num_generators());
    let given_cols = raw.first().map_or(0, Vec::len);
    let matrix = if raw.len() == rows && given_cols == cols {
        Matrix::from_rows(cols, raw)
    } else if raw.iter().all(Vec::is_empty) && rows * cols == 0 {
        Matrix::zeros(rows, cols)
    } else {
        return Err(CliError::Input(format!(
            "map {source} -> {target} needs a {rows}x{cols} matrix, got {}x{given_cols}",
            raw.len()
        )));
    };
    Ok(Homomorphism::new(source.clone(), target.clone(), matrix)?)
}

// ---------------------------------------------------------------- printing

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &RawMatrix) -> fmt::Result {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let entries: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    write!(f, "[{}]", rows.join(", "))
}

fn opt(h: &Option<usize>) -> String {
    h.map(|n| format!(" {n}")).unwrap_or_default()
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = self.horizon {
            writeln!(f, "horizon {h}")?;
        }
        if let Some(w) = self.window {
            writeln!(f, "window {w}")?;
        }
        if let Some((n, k)) = self.delta {
            writeln!(f, "delta {n} {k}")?;
        }
        for (name, lit) in &self.classes {
            writeln!(f, "class {name} = {lit}")?;
        }
        for (name, spec) in &self.towers {
            match spec {
                TowerSpec::Primorial { horizon } => {
                    writeln!(f, "tower {name} = primorial{}", opt(horizon))?
                }
                TowerSpec::Scaling { factor, horizon } => {
                    writeln!(f, "tower {name} = scaling {factor}{}", opt(horizon))?
                }
                TowerSpec::Constant { group, horizon } => {
                    writeln!(f, "tower {name} = constant {group}{}", opt(horizon))?
                }
                TowerSpec::Explicit { stages, bonds } => {
                    writeln!(f, "tower {name} {{")?;
                    for g in stages {
                        writeln!(f, "  stage {g}")?;
                    }
                    for b in bonds {
                        write!(f, "  bond ")?;
                        write_matrix(f, b)?;
                        writeln!(f)?;
                    }
                    writeln!(f, "}}")?;
                }
            }
        }
        for (name, spec) in &self.sequences {
            match spec {
                SesSpec::PrimePower { p, horizon } => {
                    writeln!(f, "ses {name} = prime-power {p} {horizon}")?
                }
                SesSpec::Prufer {
                    window,
                    exponent,
                    horizon,
                } => writeln!(f, "ses {name} = prufer {window} {exponent}{}", opt(horizon))?,
                SesSpec::Explicit {
                    kernel,
                    middle,
                    quotient,
                    inclusion,
                    projection,
                } => {
                    writeln!(f, "ses {name} {{")?;
                    writeln!(f, "  kernel {kernel}")?;
                    writeln!(f, "  middle {middle}")?;
                    writeln!(f, "  quotient {quotient}")?;
                    for (word, maps) in [("inclusion", inclusion), ("projection", projection)] {
                        for m in maps {
                            write!(f, "  {word} ")?;
                            write_matrix(f, m)?;
                            writeln!(f)?;
                        }
                    }
                    writeln!(f, "}}")?;
                }
            }
        }
        Ok(())
    }
}

// ----------------------------------------------------------------- parsing

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.text[..pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected `{}`", self.rest())))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    /// A run of letters, digits, `_` and `-`.
    fn word(&mut self, what: &str) -> Result<(&'a str, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '-'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        self.pos += len;
        Ok((&self.text[start..self.pos], start))
    }

    fn name(&mut self) -> Result<(String, usize), ParseError> {
        let (w, at) = self.word("a name")?;
        if !w.starts_with(|c: char| c.is_alphabetic() || c == '_') {
            return Err(self.error_at(at, format!("`{w}` is not a name")));
        }
        Ok((w.to_string(), at))
    }

    fn integer(&mut self) -> Result<(BigInt, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut len = usize::from(self.rest().starts_with('-'));
        len += self.rest()[len..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len() - len);
        let s = &self.rest()[..len];
        let v = s
            .parse::<BigInt>()
            .map_err(|_| self.error("expected an integer"))?;
        self.pos += len;
        Ok((v, start))
    }

    fn number<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<T, ParseError> {
        let (v, at) = self.integer()?;
        T::try_from(v).map_err(|_| self.error_at(at, format!("expected {what}")))
    }

    fn positive(&mut self, what: &str) -> Result<usize, ParseError> {
        self.skip_ws();
        let at = self.pos;
        match self.number::<usize>(what)? {
            0 => Err(self.error_at(at, format!("expected {what}"))),
            n => Ok(n),
        }
    }

    fn optional_positive(&mut self, what: &str) -> Result<Option<usize>, ParseError> {
        if self.at_end() {
            Ok(None)
        } else {
            self.positive(what).map(Some)
        }
    }

    /// `0`, or `+`-separated terms `Z`, `Z^r`, `Z/d` in invariant-factor order.
    fn group(&mut self) -> Result<FgAbGroup, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('0') {
            return Ok(FgAbGroup::trivial());
        }
        let mut rank = 0usize;
        let mut torsion = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            self.expect('Z')?;
            if self.rest().starts_with('/') {
                self.pos += 1;
                if rank > 0 {
                    return Err(self.error_at(at, "torsion factors must precede free factors"));
                }
                torsion.push(self.integer()?.0);
            } else if self.rest().starts_with('^') {
                self.pos += 1;
                rank += self.positive("a rank")?;
            } else {
                rank += 1;
            }
            if !self.eat('+') {
                break;
            }
        }
        FgAbGroup::new(rank, torsion).map_err(|e| self.error_at(start, e.to_string()))
    }

    fn matrix(&mut self) -> Result<RawMatrix, ParseError> {
        self.expect('[')?;
        let mut rows: RawMatrix = Vec::new();
        if self.eat(']') {
            return Ok(rows);
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            self.expect('[')?;
            let mut row = Vec::new();
            if !self.eat(']') {
                loop {
                    row.push(self.integer()?.0);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(self.error_at(at, "rows have different lengths"));
                }
            }
            rows.push(row);
            if self.eat(']') {
                return Ok(rows);
            }
            self.expect(',')?;
        }
    }
}

/// A block `{ ... }` being collected.
enum Block {
    Tower {
        name: String,
        line: usize,
        stages: Vec<FgAbGroup>,
        bonds: Vec<RawMatrix>,
    },
    Ses {
        name: String,
        line: usize,
        kernel: Option<String>,
        middle: Option<String>,
        quotient: Option<String>,
        inclusion: Vec<RawMatrix>,
        projection: Vec<RawMatrix>,
    },
}

impl std::str::FromStr for Scenario {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Parser::default().run(s)
    }
}

#[derive(Default)]
struct Parser {
    scenario: Scenario,
    names: HashMap<String, usize>,
    references: Vec<(usize, usize, String)>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Scenario, ParseError> {
        let mut block: Option<Block> = None;
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            let mut c = Cursor::new(line, content);
            if c.at_end() {
                continue;
            }
            block = match block {
                Some(b) => self.block_line(b, &mut c)?,
                None => self.top_line(&mut c)?,
            };
        }
        if let Some(b) = block {
            let (name, line) = match &b {
                Block::Tower { name, line, .. } | Block::Ses { name, line, .. } => {
                    (name.clone(), *line)
                }
            };
            return Err(ParseError {
                line: last_line.max(line),
                column: 1,
                message: format!("block `{name}` opened on line {line} is not closed"),
            });
        }
        for (line, column, name) in &self.references {
            if self.scenario.tower_spec(name).is_none() {
                return Err(ParseError {
                    line: *line,
                    column: *column,
                    message: format!("no tower named `{name}`"),
                });
            }
        }
        Ok(self.scenario)
    }

    fn declare(&mut self, c: &Cursor, name: &str, at: usize) -> Result<(), ParseError> {
        if let Some(prev) = self.names.insert(name.to_string(), c.line) {
            return Err(c.error_at(at, format!("`{name}` is already defined on line {prev}")));
        }
        Ok(())
    }

    fn top_line(&mut self, c: &mut Cursor) -> Result<Option<Block>, ParseError> {
        let (keyword, at) = c.word("a directive")?;
        match keyword {
            "horizon" => {
                let n = c.positive("a positive horizon")?;
                set_once(c, at, &mut self.scenario.horizon, n, "horizon")?;
            }
            "window" => {
                let n = c.positive("a positive window size")?;
                set_once(c, at, &mut self.scenario.window, n, "window")?;
            }
            "delta" => {
                let n = c.positive("a positive bound")?;
                let k = c.positive("a positive bound")?;
                set_once(c, at, &mut self.scenario.delta, (n, k), "delta")?;
            }
            "class" => {
                let (name, nat) = c.name()?;
                c.expect('=')?;
                c.skip_ws();
                let lat = c.pos;
                let lit: ClassLiteral = c
                    .rest()
                    .trim()
                    .parse()
                    .map_err(|e: towerlim_core::Error| c.error_at(lat, e.to_string()))?;
                c.pos = c.text.len();
                self.declare(c, &name, nat)?;
                self.scenario.classes.push((name, lit));
            }
            "tower" => {
                let (name, nat) = c.name()?;
                self.declare(c, &name, nat)?;
                if c.eat('{') {
                    c.end()?;
                    return Ok(Some(Block::Tower {
                        name,
                        line: c.line,
                        stages: Vec::new(),
                        bonds: Vec::new(),
                    }));
                }
                c.expect('=')?;
                let (generator, gat) = c.word("a tower generator")?;
                let spec = match generator {
                    "primorial" => TowerSpec::Primorial {
                        horizon: c.optional_positive("a positive horizon")?,
                    },
                    "scaling" => TowerSpec::Scaling {
                        factor: c.number("a 64-bit factor")?,
                        horizon: c.optional_positive("a positive horizon")?,
                    },
                    "constant" => TowerSpec::Constant {
                        group: c.group()?,
                        horizon: c.optional_positive("a positive horizon")?,
                    },
                    other => {
                        return Err(c.error_at(gat, format!("unknown tower generator `{other}`")))
                    }
                };
                self.scenario.towers.push((name, spec));
            }
            "ses" => {
                let (name, nat) = c.name()?;
                self.declare(c, &name, nat)?;
                if c.eat('{') {
                    c.end()?;
                    return Ok(Some(Block::Ses {
                        name,
                        line: c.line,
                        kernel: None,
                        middle: None,
                        quotient: None,
                        inclusion: Vec::new(),
                        projection: Vec::new(),
                    }));
                }
                c.expect('=')?;
                let (generator, gat) = c.word("a sequence generator")?;
                let spec = match generator {
                    "prime-power" => {
                        c.skip_ws();
                        let pat = c.pos;
                        let p: u64 = c.number("a prime")?;
                        if !towerlim_core::primes::is_prime(p) {
                            return Err(c.error_at(pat, format!("{p} is not prime")));
                        }
                        SesSpec::PrimePower {
                            p,
                            horizon: c.positive("a positive horizon")?,
                        }
                    }
                    "prufer" => {
                        let window = c.positive("a positive window size")?;
                        c.skip_ws();
                        let eat = c.pos;
                        let exponent = c.positive("a positive exponent")?;
                        let exponent = u32::try_from(exponent)
                            .map_err(|_| c.error_at(eat, "exponent too large"))?;
                        c.skip_ws();
                        let hat = c.pos;
                        let horizon = c.optional_positive("a positive horizon")?;
                        if horizon.is_some_and(|h| h > window) {
                            return Err(c.error_at(hat, "horizon exceeds the window size"));
                        }
                        SesSpec::Prufer {
                            window,
                            exponent,
                            horizon,
                        }
                    }
                    other => {
                        return Err(c.error_at(gat, format!("unknown sequence generator `{other}`")))
                    }
                };
                self.scenario.sequences.push((name, spec));
            }
            other => return Err(c.error_at(at, format!("unknown directive `{other}`"))),
        }
        c.end()?;
        Ok(None)
    }

    fn block_line(&mut self, block: Block, c: &mut Cursor) -> Result<Option<Block>, ParseError> {
        if c.eat('}') {
            c.end()?;
            self.close(block, c)?;
            return Ok(None);
        }
        let (keyword, at) = c.word("a block entry")?;
        let mut block = block;
        match (&mut block, keyword) {
            (Block::Tower { stages, .. }, "stage") => stages.push(c.group()?),
            (Block::Tower { bonds, .. }, "bond") => bonds.push(c.matrix()?),
            (Block::Ses { kernel, .. }, "kernel") => self.reference(c, kernel, "kernel")?,
            (Block::Ses { middle, .. }, "middle") => self.reference(c, middle, "middle")?,
            (Block::Ses { quotient, .. }, "quotient") => self.reference(c, quotient, "quotient")?,
            (Block::Ses { inclusion, .. }, "inclusion") => inclusion.push(c.matrix()?),
            (Block::Ses { projection, .. }, "projection") => projection.push(c.matrix()?),
            (Block::Tower { .. }, other) => {
                return Err(c.error_at(at, format!("expected `stage`, `bond` or `}}`, found `{other}`")))
            }
            (Block::Ses { .. }, other) => {
                return Err(c.error_at(
                    at,
                    format!("expected `kernel`, `middle`, `quotient`, `inclusion`, `projection` or `}}`, found `{other}`"),
                ))
            }
        }
        c.end()?;
        Ok(Some(block))
    }

    fn reference(
        &mut self,
        c: &mut Cursor,
        slot: &mut Option<String>,
        what: &str,
    ) -> Result<(), ParseError> {
        let (name, at) = c.name()?;
        if slot.is_some() {
            return Err(c.error_at(at, format!("{what} given twice")));
        }
        self.references
            .push((c.line, c.text[..at].chars().count() + 1, name.clone()));
        *slot = Some(name);
        Ok(())
    }

    fn close(&mut self, block: Block, c: &Cursor) -> Result<(), ParseError> {
        match block {
            Block::Tower {
                name,
                stages,
                bonds,
                ..
            } => {
                if stages.is_empty() {
                    return Err(c.error_at(0, format!("tower `{name}` has no stages")));
                }
                if bonds.len() + 1 != stages.len() {
                    return Err(c.error_at(
                        0,
                        format!(
                            "tower `{name}` has {} stages and {} bonds",
                            stages.len(),
                            bonds.len()
                        ),
                    ));
                }
                self.scenario
                    .towers
                    .push((name, TowerSpec::Explicit { stages, bonds }));
            }
            Block::Ses {
                name,
                kernel,
                middle,
                quotient,
                inclusion,
                projection,
                ..
            } => {
                let missing = |slot: Option<String>, what: &str| {
                    slot.ok_or_else(|| c.error_at(0, format!("sequence `{name}` has no {what}")))
                };
                let spec = SesSpec::Explicit {
                    kernel: missing(kernel, "kernel")?,
                    middle: missing(middle, "middle")?,
                    quotient: missing(quotient, "quotient")?,
                    inclusion,
                    projection,
                };
                self.scenario.sequences.push((name, spec));
            }
        }
        Ok(())
    }
}

fn set_once<T>(
    c: &Cursor,
    at: usize,
    slot: &mut Option<T>,
    value: T,
    what: &str,
) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(c.error_at(at, format!("{what} given twice")));
    }
    *slot = Some(value);
    Ok(())
}
