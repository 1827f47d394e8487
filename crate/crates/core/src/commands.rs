//! The command-line operations, as pure functions returning their output text.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::fano::{
    enumerate_reflexive, enumerate_until_stable, finiteness_bound, is_locally_factorial, is_q_factorial,
    is_smooth, merge_color_permutations, report, FanoError,
};
use crate::horospace::HoroSpace;
use crate::io::{format_report, IoError, PolytopeFile};
use crate::polytope::RationalPolytope;
use crate::rootsys::{Family, RootError, RootSystem};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Write(String),
    #[error(transparent)]
    Fano(#[from] FanoError),
    #[error(transparent)]
    Root(#[from] RootError),
}

impl CommandError {
    /// 1 for I/O and parse failures, 2 for violated preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Io(e) if e.is_semantic() => 2,
            CommandError::Io(_) | CommandError::Write(_) => 1,
            CommandError::Fano(_) | CommandError::Root(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Smooth,
    LocallyFactorial,
    QFactorial,
}

impl Filter {
    pub fn accepts(self, space: &HoroSpace, q: &RationalPolytope) -> bool {
        match self {
            Filter::All => true,
            Filter::Smooth => is_smooth(space, q),
            Filter::LocallyFactorial => is_locally_factorial(space, q),
            Filter::QFactorial => is_q_factorial(space, q),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Fixed box; `None` grows the box until the count settles.
    pub bound: Option<i64>,
    pub max_bound: i64,
    pub patience: usize,
    pub filter: Filter,
    /// Write one representative per class under color-permuting automorphisms.
    pub permute_colors: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { bound: None, max_bound: 16, patience: 3, filter: Filter::All, permute_colors: false }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateOutcome {
    pub polytopes: Vec<RationalPolytope>,
    pub classes: Vec<RationalPolytope>,
    pub summary: String,
}

fn counts(space: &HoroSpace, list: &[RationalPolytope]) -> String {
    let c = |f: Filter| list.iter().filter(|q| f.accepts(space, q)).count();
    format!(
        "total={} smooth={} locfac={} qfact={}",
        list.len(),
        c(Filter::Smooth),
        c(Filter::LocallyFactorial),
        c(Filter::QFactorial)
    )
}

/// Enumerates, optionally writes `poly_NNNN.json` files, and summarizes.
///
/// Summary lines: search history, counts of classes under automorphisms
/// permuting the colors, and counts of orbits under those fixing each color.
pub fn cmd_enumerate(
    space: &HoroSpace,
    opts: &EnumerateOptions,
    out: Option<&Path>,
) -> Result<EnumerateOutcome, CommandError> {
    let (polytopes, history, stable) = match opts.bound {
        Some(b) => {
            let list = enumerate_reflexive(space, b);
            let h = vec![(b, list.len())];
            (list, h, true)
        }
        None => {
            let run = enumerate_until_stable(space, 1, opts.max_bound, opts.patience);
            (run.polytopes, run.history, run.stable)
        }
    };
    let classes = merge_color_permutations(space, &polytopes);
    let mut summary = String::new();
    let hist: Vec<String> = history.iter().map(|(b, c)| format!("{b}:{c}")).collect();
    let last = history.last().map(|h| h.0).unwrap_or(0);
    writeln!(summary, "bound={last} stable={stable} history={}", hist.join(",")).expect("string");
    writeln!(summary, "{}", counts(space, &classes)).expect("string");
    writeln!(summary, "fixed_colors {}", counts(space, &polytopes)).expect("string");

    if let Some(dir) = out {
        let werr = |e: std::io::Error| CommandError::Write(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(werr)?;
        let chosen = if opts.permute_colors { &classes } else { &polytopes };
        let mut written = 0;
        for (k, q) in chosen.iter().filter(|q| opts.filter.accepts(space, q)).enumerate() {
            let path = dir.join(format!("poly_{:04}.json", k + 1));
            std::fs::write(&path, PolytopeFile::from_polytope(q).to_json()).map_err(werr)?;
            written += 1;
        }
        writeln!(summary, "written={written} dir={}", dir.display()).expect("string");
    }
    Ok(EnumerateOutcome { polytopes, classes, summary })
}

pub fn cmd_check(space: &HoroSpace, q: &RationalPolytope) -> Result<String, CommandError> {
    let r = report(space, q)?;
    Ok(format_report(space, q, &r))
}

/// One row of the table of `(−Σ_{β∈R_I⁺}⟨β, α̌⟩, #(R⁺_{I∪α} \ R_I⁺) − 1)`
/// for connected `I ∪ {α}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    /// Position in the printed table, 1-based.
    pub row: usize,
    pub label: String,
    pub family: Family,
    pub rank: usize,
    /// 0-based index of `α` in Bourbaki order.
    pub alpha: usize,
    /// Value as printed.
    pub expected: (i64, i64),
    /// Value recounted from the root counts where the printed one is off.
    pub erratum: Option<(i64, i64)>,
}

impl TableRow {
    pub fn computed(&self) -> Result<(i64, i64), RootError> {
        let rs = RootSystem::build(&[(self.family, self.rank)], 0)?;
        let i_set: BTreeSet<usize> = (0..self.rank).filter(|&k| k != self.alpha).collect();
        rs.color_table_row(&i_set, self.alpha)
    }
}

/// The 20 rows, parametric rows instantiated for every total rank ≤ 8.
pub fn dynkin_table_rows() -> Vec<TableRow> {
    use Family::*;
    let mut rows = Vec::new();
    let mut push = |row: usize, label: String, family: Family, rank: usize, alpha: usize, expected: (i64, i64)| {
        rows.push(TableRow { row, label, family, rank, alpha, expected, erratum: None })
    };
    for i in 0..=7i64 {
        push(1, format!("A{i} in A{}", i + 1), A, i as usize + 1, 0, (i, i));
    }
    for i in 1..=7i64 {
        push(2, format!("A{i} in B{}", i + 1), B, i as usize + 1, i as usize, (2 * i, i * (i + 3) / 2));
    }
    for i in 1..=7i64 {
        push(3, format!("A{i} in C{}", i + 1), C, i as usize + 1, i as usize, (i, i * (i + 3) / 2));
    }
    for i in 3..=7i64 {
        push(4, format!("A{i} in D{}", i + 1), D, i as usize + 1, i as usize, (2 * (i - 1), (i - 1) * (i + 2) / 2));
    }
    push(5, "A5 in E6".into(), E, 6, 1, (9, 20));
    push(6, "A6 in E7".into(), E, 7, 1, (12, 41));
    push(7, "A7 in E8".into(), E, 8, 1, (15, 91));
    push(8, "A1 in G2, arrow toward alpha".into(), G, 2, 0, (3, 4));
    push(9, "A1 in G2, arrow from alpha".into(), G, 2, 1, (1, 4));
    for i in 2..=7i64 {
        push(10, format!("B{i} in B{}", i + 1), B, i as usize + 1, 0, (2 * i - 1, 2 * i));
    }
    push(11, "B2 in C3".into(), C, 3, 0, (4, 4));
    push(12, "B3 in F4".into(), F, 4, 3, (9, 14));
    for i in 3..=7i64 {
        push(13, format!("C{i} in C{}", i + 1), C, i as usize + 1, 0, (2 * i, 2 * i));
    }
    push(14, "C3 in F4".into(), F, 4, 0, (6, 14));
    for i in 4..=7i64 {
        push(15, format!("D{i} in D{}", i + 1), D, i as usize + 1, 0, (2 * i - 2, 2 * i - 1));
    }
    push(16, "D5 in E6".into(), E, 6, 0, (10, 15));
    push(17, "D6 in E7".into(), E, 7, 0, (15, 32));
    push(18, "D7 in E8".into(), E, 8, 0, (21, 78));
    push(19, "E6 in E7".into(), E, 7, 6, (16, 26));
    push(20, "E7 in E8".into(), E, 8, 7, (27, 56));
    // #R⁺(E8) − #R⁺(D7) − 1 = 120 − 42 − 1
    for row in rows.iter_mut().filter(|r| r.label == "D7 in E8") {
        row.erratum = Some((21, 77));
    }
    rows
}

/// Agreement of the regenerated table with the printed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub text: String,
    /// Rows equal to the printed value.
    pub matching: usize,
    /// Rows differing from the printed value but equal to the recounted one.
    pub errata: usize,
    /// Rows matching neither.
    pub mismatches: usize,
}

pub fn cmd_dynkin_table() -> TableCheck {
    let mut check = TableCheck { text: String::new(), matching: 0, errata: 0, mismatches: 0 };
    for row in dynkin_table_rows() {
        let got = row.computed();
        let status = match &got {
            Ok(g) if *g == row.expected => {
                check.matching += 1;
                "ok".to_string()
            }
            Ok(g) if Some(*g) == row.erratum => {
                check.errata += 1;
                format!("erratum (printed ({}, {}))", row.expected.0, row.expected.1)
            }
            _ => {
                check.mismatches += 1;
                "MISMATCH".to_string()
            }
        };
        let shown = match got {
            Ok((a, b)) => format!("({a}, {b})"),
            Err(e) => format!("error: {e}"),
        };
        let (e0, e1) = row.erratum.unwrap_or(row.expected);
        writeln!(check.text, "{:<30} computed={:<10} expected=({e0}, {e1}) {status}", row.label, shown)
            .expect("string");
    }
    check
}

/// Fundamental weights `ϖ_i` (1-based) whose simple module is horospherical.
pub fn horospherical_weights(family: Family, rank: usize) -> Result<Vec<usize>, RootError> {
    let rs = RootSystem::build(&[(family, rank)], 0)?;
    let mut out = Vec::new();
    for i in 0..rank {
        if rs.is_horospherical_module(i)? {
            out.push(i + 1);
        }
    }
    Ok(out)
}

pub fn cmd_modules(family: Family, rank: usize) -> Result<String, CommandError> {
    let ws = horospherical_weights(family, rank)?;
    let names: Vec<String> = ws.iter().map(|i| format!("w{i}")).collect();
    Ok(format!("type={family}{rank} horospherical={{{}}}\n", names.join(", ")))
}

/// Exact finiteness bound as `coefficient * 2^exponent`.
pub fn cmd_bound(space: &HoroSpace) -> String {
    let b = finiteness_bound(space);
    format!(
        "n={} a={} V={}\nbound={}\nbits={}\n",
        b.n,
        b.a,
        b.v,
        b,
        b.bit_length()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches() {
        let t = cmd_dynkin_table();
        assert_eq!(t.mismatches, 0, "{}", t.text);
        assert_eq!(t.errata, 1, "{}", t.text);
        let line = t.text.lines().find(|l| l.starts_with("C3 in F4")).unwrap();
        assert!(line.contains("computed=(6, 14)") && line.ends_with("ok"), "{line}");
        let rows: BTreeSet<usize> = dynkin_table_rows().iter().map(|r| r.row).collect();
        assert_eq!(rows, (1..=20).collect());
    }

    #[test]
    fn module_lists() {
        assert_eq!(horospherical_weights(Family::A, 3).unwrap(), vec![1, 3]);
        assert_eq!(horospherical_weights(Family::C, 4).unwrap(), vec![1]);
        assert!(horospherical_weights(Family::E, 6).unwrap().is_empty());
        assert!(horospherical_weights(Family::E, 5).is_err());
    }

    #[test]
    fn exit_codes() {
        let e: CommandError = FanoError::NotReflexive.into();
        assert_eq!(e.exit_code(), 2);
        let e: CommandError =
            IoError::Syntax { path: "p".into(), line: 1, column: 1, message: "x".into() }.into();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn bound_text() {
        let s = HoroSpace::mod_unipotent(&[(Family::A, 1)], 0).unwrap();
        let t = cmd_bound(&s);
        assert!(t.contains("V=194481"));
        assert!(t.contains("bound=388962 * 2^302582874888"), "{t}");
    }
}
