//! Rank bounds and candidate classification for the `⟨5,5,5⟩` application.
//!
//! A group that realizes `⟨5,5,5⟩` would give a 5×5 matrix multiplication
//! algorithm using `R(G)` scalar multiplications. Groups whose rank lower
//! bound stays under 100 (the best published upper bound for `R(5)`) are C1
//! candidates; under 125 (the naive bound), C2 candidates. Classification
//! combines the Pospelov-style lower bound with order windows and two
//! structural exclusions that need the actual group: an abelian index-2
//! subgroup rules a group out up to order 72, and every index-2 subgroup
//! must itself realize `⟨3,3,3⟩`.
//!
//! Character degree patterns are ingested as data; computing them would
//! require character-theoretic machinery the bounds do not need.

use crate::group::{index2_subgroups, Group};
use crate::search::{search_mmm, SearchError, SearchMode};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScreenError {
    #[error("degree {degree} outside the rank table (enable the cubic fallback or extend the table)")]
    DegreeOutOfTable { degree: u32 },
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

/// Multiset of irreducible character degrees with multiplicities.
/// The squares weighted by multiplicity sum to the group order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDegreePattern {
    pub order: u64,
    /// `(degree, multiplicity)` pairs, ascending by degree.
    pub entries: Vec<(u32, u32)>,
}

impl CharacterDegreePattern {
    pub fn new(order: u64, mut entries: Vec<(u32, u32)>) -> Result<Self, ScreenError> {
        entries.sort_unstable();
        let p = CharacterDegreePattern { order, entries };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ScreenError> {
        if self.entries.is_empty() {
            return Err(ScreenError::InconsistentInput("pattern has no entries".into()));
        }
        if self.entries.iter().any(|&(d, m)| d == 0 || m == 0) {
            return Err(ScreenError::InconsistentInput("zero degree or multiplicity".into()));
        }
        if self.entries[0].0 != 1 {
            return Err(ScreenError::InconsistentInput(
                "pattern lacks a degree-1 entry (trivial character)".into(),
            ));
        }
        let sum: u64 = self.entries.iter().map(|&(d, m)| m as u64 * (d as u64) * (d as u64)).sum();
        if sum != self.order {
            return Err(ScreenError::InconsistentInput(format!(
                "sum of multiplicity*degree^2 is {sum}, order is {}",
                self.order
            )));
        }
        Ok(())
    }

    /// Parses the compact form `1^3,3^5`; a bare degree means multiplicity 1.
    pub fn parse(order: u64, text: &str) -> Result<Self, ScreenError> {
        let mut entries = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (d, m) = match part.split_once('^') {
                Some((d, m)) => (d.trim(), m.trim()),
                None => (part, "1"),
            };
            let degree: u32 = d
                .parse()
                .map_err(|_| ScreenError::InconsistentInput(format!("bad degree {d:?}")))?;
            let mult: u32 = m
                .parse()
                .map_err(|_| ScreenError::InconsistentInput(format!("bad multiplicity {m:?}")))?;
            entries.push((degree, mult));
        }
        Self::new(order, entries)
    }

    pub fn to_compact(&self) -> String {
        self.entries
            .iter()
            .map(|&(d, m)| format!("{d}^{m}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Number of irreducible characters (= conjugacy classes).
    pub fn t_count(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m as u64).sum()
    }

    /// Largest irreducible character degree.
    pub fn b_max(&self) -> u64 {
        self.entries.iter().map(|&(d, _)| d as u64).max().unwrap_or(0)
    }

    /// True when every irreducible degree is 1 (abelian groups).
    pub fn is_abelian(&self) -> bool {
        self.b_max() == 1
    }
}

/// `D_r = Σ multiplicity·degree^r`; `D_2` is always the group order.
pub fn d_r_capacity(pattern: &CharacterDegreePattern, r: u32) -> u64 {
    pattern
        .entries
        .iter()
        .map(|&(d, m)| m as u64 * (d as u64).pow(r))
        .sum()
}

/// Per-degree upper bounds on the rank of `d×d` matrix multiplication.
/// Keyed by degree; configurable from a data file so improved bounds slot in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    map: BTreeMap<u32, u64>,
}

impl Default for RankTable {
    /// Strassen (2), Laderman (3), Strassen squared (4), Makarov (5), the
    /// 2x3 tensor bound 7·23 (6) and 258 (7).
    fn default() -> Self {
        let map = BTreeMap::from([(1, 1), (2, 7), (3, 23), (4, 49), (5, 100), (6, 161), (7, 258)]);
        RankTable { map }
    }
}

impl RankTable {
    pub fn get(&self, degree: u32) -> Option<u64> {
        self.map.get(&degree).copied()
    }

    pub fn set(&mut self, degree: u32, bound: u64) {
        self.map.insert(degree, bound);
    }

    /// Loads `degree,bound` lines; `#` comments and blanks are skipped.
    pub fn parse(text: &str) -> Result<Self, ScreenError> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| ScreenError::Parse { line: lineno + 1, msg: msg.into() };
            let (d, b) = line.split_once(',').ok_or_else(|| err("expected degree,bound"))?;
            let degree: u32 = d.trim().parse().map_err(|_| err("bad degree"))?;
            let bound: u64 = b.trim().parse().map_err(|_| err("bad bound"))?;
            map.insert(degree, bound);
        }
        if map.is_empty() {
            return Err(ScreenError::Parse { line: 0, msg: "empty rank table".into() });
        }
        Ok(RankTable { map })
    }

    pub fn load(path: &Path) -> Result<Self, ScreenError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScreenError::Io(e.to_string()))?;
        Self::parse(&text)
    }
}

/// Upper bound on `R(G)`: the per-degree bounds summed over the pattern
/// (Wedderburn decomposition into full matrix algebras). Degrees outside the
/// table use the naive `d^3` when `cubic_fallback` is set, otherwise error.
pub fn rank_upper(
    pattern: &CharacterDegreePattern,
    table: &RankTable,
    cubic_fallback: bool,
) -> Result<u64, ScreenError> {
    let mut sum: u64 = 0;
    for &(d, m) in &pattern.entries {
        let per = match table.get(d) {
            Some(b) => b,
            None if cubic_fallback => (d as u64).pow(3),
            None => return Err(ScreenError::DegreeOutOfTable { degree: d }),
        };
        sum += m as u64 * per;
    }
    Ok(sum)
}

/// Lower bound on `R(G)` from the largest degree `b` and character count `T`:
/// `|G|` when `b = 1`, `2|G| - T` when `b = 2` (both exact), otherwise
/// `2|G| + b - T - 1`.
pub fn rank_lower_pospelov(order: u64, t_count: u64, b_max: u64) -> u64 {
    match b_max {
        0 | 1 => order,
        2 => 2 * order - t_count,
        b => 2 * order + b - t_count - 1,
    }
}

/// Lower and upper bounds for the rank of a group algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBounds {
    pub lower: u64,
    pub upper: u64,
}

pub fn rank_bounds(
    pattern: &CharacterDegreePattern,
    table: &RankTable,
    cubic_fallback: bool,
) -> Result<RankBounds, ScreenError> {
    let lower = rank_lower_pospelov(pattern.order, pattern.t_count(), pattern.b_max());
    let upper = rank_upper(pattern, table, cubic_fallback)?;
    Ok(RankBounds { lower, upper })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    C1,
    C2Only,
    Excluded,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::C1 => write!(f, "C1"),
            Classification::C2Only => write!(f, "C2-only"),
            Classification::Excluded => write!(f, "excluded"),
        }
    }
}

/// Rule identifiers recorded when classification rules fire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum ScreenReason {
    /// Abelian groups have `R(G) = |G|` and triples of size at most `|G|`.
    Abelian,
    /// C1 candidates satisfy `45 <= |G| <= 72`.
    OrderOutsideC1Window { order: u64 },
    /// C2 candidates satisfy `45 <= |G| <= 90`.
    OrderOutsideC2Window { order: u64 },
    /// `R(G) >= 100` already matches the best known 5×5 bound.
    LowerBoundReachesC1 { lower: u64 },
    /// `R(G) >= 125` cannot beat the naive 5×5 algorithm.
    LowerBoundReachesC2 { lower: u64 },
    /// Up to order 72, an abelian index-2 subgroup forbids `⟨5,5,5⟩`.
    AbelianIndex2Subgroup { subgroup: usize },
    /// An index-2 subgroup of a `⟨5,5,5⟩` realizer must realize `⟨3,3,3⟩`.
    Index2WithoutTriple { subgroup: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenVerdict {
    pub classification: Classification,
    pub reasons: Vec<ScreenReason>,
}

/// Applies every classification rule and collects the ones that fire.
///
/// Pattern-only rules always run; the two structural rules run when the
/// concrete group is supplied. Exclusion for C2 always implies exclusion for
/// C1 (the rules are monotone).
pub fn classify(
    order: u64,
    pattern: &CharacterDegreePattern,
    group: Option<&Group>,
) -> Result<ScreenVerdict, ScreenError> {
    pattern.validate()?;
    if pattern.order != order {
        return Err(ScreenError::InconsistentInput(format!(
            "pattern order {} does not match row order {order}",
            pattern.order
        )));
    }
    if let Some(g) = group {
        if g.order() as u64 != order {
            return Err(ScreenError::InconsistentInput(format!(
                "group order {} does not match row order {order}",
                g.order()
            )));
        }
    }

    let mut reasons = Vec::new();
    let mut c1 = true;
    let mut c2 = true;

    let abelian = match group {
        Some(g) => g.is_abelian(),
        None => pattern.is_abelian(),
    };
    if abelian {
        reasons.push(ScreenReason::Abelian);
        c1 = false;
        c2 = false;
    }

    if !(45..=72).contains(&order) {
        reasons.push(ScreenReason::OrderOutsideC1Window { order });
        c1 = false;
    }
    if !(45..=90).contains(&order) {
        reasons.push(ScreenReason::OrderOutsideC2Window { order });
        c2 = false;
    }

    let lower = rank_lower_pospelov(order, pattern.t_count(), pattern.b_max());
    if lower >= 100 {
        reasons.push(ScreenReason::LowerBoundReachesC1 { lower });
        c1 = false;
    }
    if lower >= 125 {
        reasons.push(ScreenReason::LowerBoundReachesC2 { lower });
        c2 = false;
    }

    if let Some(g) = group {
        let subs = index2_subgroups(g);
        if order <= 72 {
            if let Some(i) = subs.iter().position(|h| h.is_abelian_in(g)) {
                reasons.push(ScreenReason::AbelianIndex2Subgroup { subgroup: i });
                c1 = false;
                c2 = false;
            }
        }
        for (i, h) in subs.iter().enumerate() {
            let sub = h.to_group(g).map_err(|e| {
                ScreenError::InconsistentInput(format!("index-2 subgroup {i}: {e}"))
            })?;
            let realizes = match search_mmm(&sub, 3, SearchMode::First, None) {
                Ok(out) => !out.triples.is_empty(),
                Err(SearchError::InfeasibleSize { .. }) => false,
                Err(e) => {
                    return Err(ScreenError::InconsistentInput(format!(
                        "index-2 subgroup {i}: {e}"
                    )))
                }
            };
            if !realizes {
                reasons.push(ScreenReason::Index2WithoutTriple { subgroup: i });
                c1 = false;
                c2 = false;
                break;
            }
        }
    }

    let classification = if c1 {
        Classification::C1
    } else if c2 {
        Classification::C2Only
    } else {
        Classification::Excluded
    };
    debug_assert!(c2 || !c1, "exclusion rules are monotone");
    Ok(ScreenVerdict { classification, reasons })
}

/// One input row of a screening data file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenInputRow {
    pub gap_id: String,
    pub order: u64,
    pub pattern: String,
    pub cayley_file: Option<String>,
}

/// Per-row screening output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenRow {
    pub gap_id: String,
    pub order: u64,
    pub pattern: String,
    pub t_count: u64,
    pub b_max: u64,
    pub lower: u64,
    pub upper: u64,
    pub classification: Classification,
    pub reasons: Vec<ScreenReason>,
    pub group_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowError {
    pub line: usize,
    pub gap_id: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenReport {
    pub rows: Vec<ScreenRow>,
    pub errors: Vec<RowError>,
}

#[derive(Clone, Debug, Default)]
pub struct ScreenOptions {
    /// Load `cayley_file` columns and run the structural exclusions.
    pub with_groups: bool,
    pub rank_table: RankTable,
    pub cubic_fallback: bool,
}

/// Parses a screening CSV with columns `gap_id,order,pattern,cayley_file`
/// (the pattern field is quoted since it contains commas). `#` lines are
/// comments; a `gap_id,...` header row is skipped.
/// Parsed rows paired with their line numbers, plus per-row errors.
pub type ParsedScreenRows = (Vec<(usize, ScreenInputRow)>, Vec<RowError>);

pub fn parse_screen_csv(text: &str) -> Result<ParsedScreenRows, ScreenError> {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields = split_csv_line(line);
        if fields.first().map(String::as_str) == Some("gap_id") {
            continue; // header
        }
        let lineno = lineno + 1;
        if fields.len() < 3 {
            errors.push(RowError {
                line: lineno,
                gap_id: fields.first().cloned().unwrap_or_default(),
                message: "expected gap_id,order,pattern[,cayley_file]".into(),
            });
            continue;
        }
        let order: u64 = match fields[1].trim().parse() {
            Ok(o) => o,
            Err(_) => {
                errors.push(RowError {
                    line: lineno,
                    gap_id: fields[0].clone(),
                    message: format!("bad order {:?}", fields[1]),
                });
                continue;
            }
        };
        let cayley_file = fields.get(3).map(|s| s.trim()).filter(|s| !s.is_empty());
        rows.push((
            lineno,
            ScreenInputRow {
                gap_id: fields[0].trim().to_string(),
                order,
                pattern: fields[2].trim().to_string(),
                cayley_file: cayley_file.map(str::to_string),
            },
        ));
    }
    Ok((rows, errors))
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut field = String::new();
    let mut in_quotes = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if in_quotes && chars.peek() == Some(&'"') => {
                chars.next();
                field.push('"');
            }
            '"' => in_quotes = !in_quotes,
            ',' if !in_quotes => fields.push(std::mem::take(&mut field)),
            _ => field.push(c),
        }
    }
    fields.push(field);
    fields
}

/// Screens every row of a data file; row-level failures are reported per row
/// without aborting the batch. Relative `cayley_file` paths resolve against
/// the data file's directory.
pub fn screen_table(path: &Path, opts: &ScreenOptions) -> Result<ScreenReport, ScreenError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScreenError::Io(e.to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let (rows, mut errors) = parse_screen_csv(&text)?;
    let mut report_rows = Vec::new();

    for (line, row) in rows {
        let fail = |message: String, errors: &mut Vec<RowError>| {
            errors.push(RowError { line, gap_id: row.gap_id.clone(), message });
        };
        let pattern = match CharacterDegreePattern::parse(row.order, &row.pattern) {
            Ok(p) => p,
            Err(e) => {
                fail(e.to_string(), &mut errors);
                continue;
            }
        };
        let bounds = match rank_bounds(&pattern, &opts.rank_table, opts.cubic_fallback) {
            Ok(b) => b,
            Err(e) => {
                fail(e.to_string(), &mut errors);
                continue;
            }
        };
        let group = if opts.with_groups {
            match &row.cayley_file {
                Some(rel) => match crate::group::read_table_file(&base.join(rel)) {
                    Ok(g) => Some(g),
                    Err(e) => {
                        fail(format!("cayley file {rel}: {e}"), &mut errors);
                        continue;
                    }
                },
                None => None,
            }
        } else {
            None
        };
        match classify(row.order, &pattern, group.as_ref()) {
            Ok(verdict) => report_rows.push(ScreenRow {
                gap_id: row.gap_id.clone(),
                order: row.order,
                pattern: pattern.to_compact(),
                t_count: pattern.t_count(),
                b_max: pattern.b_max(),
                lower: bounds.lower,
                upper: bounds.upper,
                classification: verdict.classification,
                reasons: verdict.reasons,
                group_checked: group.is_some(),
            }),
            Err(e) => fail(e.to_string(), &mut errors),
        }
    }

    Ok(ScreenReport { rows: report_rows, errors })
}
