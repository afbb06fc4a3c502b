//! Command-line front end.
//!
//! Exit codes: 0 when a result was computed (either classification verdict
//! counts), 1 for a domain failure such as a character that does not factor,
//! 2 for usage and parse errors.

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classifier::{classify, cohomology_character, parse_partition};
use crate::exactalg::LaurentPoly;
use crate::json::number;
use crate::lefschetz::{
    build_cohomology_module, highest_weight_counts, is_irreducible, module_character,
    multiprojective_module, verify_brackets, Sl2MatrixModule,
};
use crate::partition::partitions_up_to;
use crate::sl2rep::{
    clebsch_gordan_decompose, factor_tensor_of_irreps, irrep_character, Character,
};
use crate::symcurve::{compare_dimensions, genus_obstruction_report, Curve};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest number of (genus, n) cells `table` will compute.
pub const MAX_TABLE_CELLS: usize = 10_000;
/// Largest module dimension `lefschetz-check` will build.
pub const MAX_MODULE_DIM: usize = 1024;

#[derive(Parser, Debug)]
#[command(
    name = "multiproj",
    version,
    about = "Exact sl(2) invariants of multiprojective spaces and symmetric products of curves"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Print only the headline result in table format.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two multiprojective spaces are isomorphic.
    Classify {
        /// First partition, e.g. `2,1`.
        partition1: String,
        /// Second partition, e.g. `1,1,1`.
        partition2: String,
    },
    /// Betti numbers of Sym^n of a genus-g curve.
    Betti {
        #[arg(long)]
        genus: u32,
        #[arg(long = "n")]
        n: u32,
        /// Only the total dimension of cohomology.
        #[arg(long)]
        sum: bool,
    },
    /// Compare dim H^*(Sym^n C) with dim Sym^n H^*(C).
    Dims {
        #[arg(long)]
        genus: u32,
        #[arg(long = "n")]
        n: u32,
    },
    /// Recover irreducible tensor factors from a character.
    Factor(FactorArgs),
    /// Build the Lefschetz module and verify the sl(2) relations.
    LefschetzCheck {
        /// Dimension of the projective space.
        #[arg(conflicts_with = "partition")]
        n: Option<u32>,
        /// Multiprojective space instead of a single projective space.
        #[arg(long)]
        partition: Option<String>,
        /// Also count highest-weight vectors by matrix rank.
        #[arg(long)]
        rank_check: bool,
    },
    /// Bulk table of dimension comparisons or Betti numbers.
    Table {
        /// Genus range `a..b` (inclusive) or a single value.
        #[arg(long)]
        genus: String,
        /// Symmetric power range `a..b` (inclusive) or a single value.
        #[arg(long = "n")]
        n: String,
        /// Emit one row per Betti number instead of dimension comparisons.
        #[arg(long)]
        betti: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FactorArgs {
    /// Build the character of this partition, then factor it.
    #[arg(long)]
    partition: Option<String>,
    /// Character in canonical text form, e.g. `q^2 + 2 + q^-2`.
    #[arg(long = "char")]
    character: Option<String>,
    /// Verify factorization for every partition with sum at most N.
    #[arg(long, value_name = "N")]
    roundtrip: Option<u32>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        }
    }
}

type CmdResult = Result<u8, CliError>;

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let ctx = Ctx {
        format: cli.format,
        quiet: cli.quiet,
    };
    let result = match cli.command {
        Command::Classify {
            partition1,
            partition2,
        } => cmd_classify(&ctx, out, &partition1, &partition2),
        Command::Betti { genus, n, sum } => cmd_betti(&ctx, out, genus, n, sum),
        Command::Dims { genus, n } => cmd_dims(&ctx, out, genus, n),
        Command::Factor(args) => cmd_factor(&ctx, out, args),
        Command::LefschetzCheck {
            n,
            partition,
            rank_check,
        } => cmd_lefschetz_check(&ctx, out, n, partition.as_deref(), rank_check),
        Command::Table { genus, n, betti } => cmd_table(&ctx, out, &genus, &n, betti),
    };
    match result.and_then(|code| out.flush().map(|_| code).map_err(CliError::from)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

struct Ctx {
    format: Format,
    quiet: bool,
}

impl Ctx {
    /// Headline line, then `key: value` details unless quiet.
    fn table(
        &self,
        out: &mut dyn Write,
        headline: &str,
        details: &[(&str, String)],
    ) -> io::Result<()> {
        writeln!(out, "{headline}")?;
        if !self.quiet {
            for (k, v) in details {
                writeln!(out, "{k}: {v}")?;
            }
        }
        Ok(())
    }

    fn json(&self, out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut *out, v).map_err(io::Error::from)?;
        writeln!(out)?;
        Ok(())
    }

    fn csv(
        &self,
        out: &mut dyn Write,
        header: &[&str],
        rows: &[Vec<String>],
    ) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_classify(ctx: &Ctx, out: &mut dyn Write, p1: &str, p2: &str) -> CmdResult {
    let p1 = parse_partition(p1).map_err(usage)?;
    let p2 = parse_partition(p2).map_err(usage)?;
    let doc = classify(&p1, &p2).document();
    let opt = |o: &Option<String>| o.clone().unwrap_or_default();
    match ctx.format {
        Format::Json => ctx.json(out, &serde_json::to_value(&doc).map_err(io::Error::from)?)?,
        Format::Csv => ctx.csv(
            out,
            &[
                "verdict",
                "reason",
                "n1",
                "n2",
                "partition1",
                "partition2",
                "character1",
                "character2",
                "factorization1",
                "factorization2",
            ],
            &[vec![
                doc.verdict.to_string(),
                doc.reason.to_string(),
                doc.n1.to_string(),
                doc.n2.to_string(),
                doc.partition1.clone(),
                doc.partition2.clone(),
                opt(&doc.character1),
                opt(&doc.character2),
                opt(&doc.factorization1),
                opt(&doc.factorization2),
            ]],
        )?,
        Format::Table => {
            let or_dash = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
            ctx.table(
                out,
                &doc.verdict.to_string(),
                &[
                    ("reason", doc.reason.to_string()),
                    ("partition1", format!("{} (n={})", doc.partition1, doc.n1)),
                    ("partition2", format!("{} (n={})", doc.partition2, doc.n2)),
                    ("character1", or_dash(&doc.character1)),
                    ("character2", or_dash(&doc.character2)),
                    ("factorization1", or_dash(&doc.factorization1)),
                    ("factorization2", or_dash(&doc.factorization2)),
                ],
            )?
        }
    }
    Ok(EXIT_OK)
}

fn cmd_betti(ctx: &Ctx, out: &mut dyn Write, genus: u32, n: u32, sum: bool) -> CmdResult {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let curve = Curve::new(genus);
    let poly = curve
        .sym_poincare(n)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let total = poly.total();
    let method = if genus == 0 { "projective" } else { "series" };
    if sum {
        match ctx.format {
            Format::Json => ctx.json(
                out,
                &json!({"genus": genus, "n": n, "total": number(&total)}),
            )?,
            Format::Csv => ctx.csv(
                out,
                &["g", "n", "total"],
                &[vec![genus.to_string(), n.to_string(), total.to_string()]],
            )?,
            Format::Table => writeln!(out, "{total}")?,
        }
        return Ok(EXIT_OK);
    }
    match ctx.format {
        Format::Json => {
            let betti: Vec<Value> = poly.betti().iter().map(number).collect();
            ctx.json(
                out,
                &json!({
                    "genus": genus,
                    "n": n,
                    "method": method,
                    "betti": betti,
                    "poincare": poly.to_string(),
                    "total": number(&total),
                }),
            )?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = poly
                .betti()
                .iter()
                .enumerate()
                .map(|(r, b)| {
                    vec![
                        genus.to_string(),
                        n.to_string(),
                        r.to_string(),
                        b.to_string(),
                    ]
                })
                .collect();
            ctx.csv(out, &["g", "n", "r", "betti"], &rows)?
        }
        Format::Table => ctx.table(
            out,
            &join(poly.betti()),
            &[
                ("poincare", poly.to_string()),
                ("total", total.to_string()),
                ("method", method.to_string()),
            ],
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_dims(ctx: &Ctx, out: &mut dyn Write, genus: u32, n: u32) -> CmdResult {
    let cmp = genus_obstruction_report(genus, n).map_err(usage)?;
    match ctx.format {
        Format::Json => ctx.json(out, &serde_json::to_value(&cmp).map_err(io::Error::from)?)?,
        Format::Csv => ctx.csv(
            out,
            &["g", "n", "total_dim", "sym_dim", "relation"],
            &[vec![
                genus.to_string(),
                n.to_string(),
                cmp.total_dim.to_string(),
                cmp.sym_dim.to_string(),
                cmp.relation.to_string(),
            ]],
        )?,
        Format::Table => ctx.table(
            out,
            &format!("{},{},{}", cmp.total_dim, cmp.sym_dim, cmp.relation),
            &[
                ("dim H^*(Sym^n C)", cmp.total_dim.to_string()),
                ("dim Sym^n H^*(C)", cmp.sym_dim.to_string()),
                ("relation", cmp.relation.to_string()),
            ],
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_factor(ctx: &Ctx, out: &mut dyn Write, args: FactorArgs) -> CmdResult {
    if let Some(max) = args.roundtrip {
        return cmd_roundtrip(ctx, out, max);
    }
    let character = match (&args.partition, &args.character) {
        (Some(p), _) => cohomology_character(&parse_partition(p).map_err(usage)?),
        (None, Some(text)) => {
            let poly: LaurentPoly = text.parse().map_err(usage)?;
            Character::new(poly).map_err(|e| {
                CliError::Domain(format!("not a tensor of nontrivial irreducibles: {e}"))
            })?
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let factors =
        factor_tensor_of_irreps(&character).map_err(|e| CliError::Domain(e.to_string()))?;
    let labels = factors.labels();
    match ctx.format {
        Format::Json => ctx.json(
            out,
            &json!({
                "character": character.to_string(),
                "labels": labels,
                "multiset": factors.to_string(),
            }),
        )?,
        Format::Csv => ctx.csv(
            out,
            &["character", "multiset"],
            &[vec![character.to_string(), factors.to_string()]],
        )?,
        Format::Table => ctx.table(
            out,
            &join(&labels),
            &[
                ("multiset", factors.to_string()),
                ("character", character.to_string()),
            ],
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_roundtrip(ctx: &Ctx, out: &mut dyn Write, max: u32) -> CmdResult {
    let mut checked = 0u64;
    let mut failures = Vec::new();
    let mut seen: HashSet<Character> = HashSet::new();
    for p in partitions_up_to(max) {
        checked += 1;
        let c = cohomology_character(&p);
        let ok = factor_tensor_of_irreps(&c).is_ok_and(|m| m.labels() == p.parts());
        // characters of distinct partitions (all n) must never collide
        if !seen.insert(c) || !ok {
            failures.push(p.to_string());
        }
    }
    match ctx.format {
        Format::Json => ctx.json(
            out,
            &json!({"max_sum": max, "checked": checked, "failures": failures}),
        )?,
        Format::Csv => ctx.csv(
            out,
            &["max_sum", "checked", "failures"],
            &[vec![
                max.to_string(),
                checked.to_string(),
                failures.len().to_string(),
            ]],
        )?,
        Format::Table => ctx.table(
            out,
            if failures.is_empty() { "ok" } else { "FAILED" },
            &[
                ("max_sum", max.to_string()),
                ("checked", checked.to_string()),
                (
                    "failures",
                    if failures.is_empty() {
                        "none".into()
                    } else {
                        failures.join(" ")
                    },
                ),
            ],
        )?,
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}

fn cmd_lefschetz_check(
    ctx: &Ctx,
    out: &mut dyn Write,
    n: Option<u32>,
    partition: Option<&str>,
    rank_check: bool,
) -> CmdResult {
    let (label, parts) = match (n, partition) {
        (Some(n), None) => (format!("P^{n}"), vec![n]),
        (None, Some(text)) => {
            let p = parse_partition(text).map_err(usage)?;
            let label = p
                .parts()
                .iter()
                .map(|k| format!("P^{k}"))
                .collect::<Vec<_>>()
                .join(" x ");
            (label, p.parts().to_vec())
        }
        _ => return Err(usage("give either N or --partition")),
    };
    let dim = parts
        .iter()
        .map(|&k| BigUint::from(k) + 1u32)
        .product::<BigUint>();
    if dim > BigUint::from(MAX_MODULE_DIM) {
        return Err(usage(format!(
            "module dimension {dim} exceeds the limit of {MAX_MODULE_DIM}"
        )));
    }

    let module: Sl2MatrixModule = if partition.is_some() {
        multiprojective_module(&parts)
    } else {
        build_cohomology_module(parts[0])
    };
    let expected_character = if partition.is_some() {
        cohomology_character(&parse_partition(&join(&parts)).map_err(usage)?)
    } else {
        irrep_character(parts[0])
    };
    let expected_irreducible = parts.iter().filter(|&&k| k > 0).count() <= 1;

    let report = verify_brackets(&module);
    let shifts = module.shifts_weights();
    let character = module_character(&module).map_err(|e| CliError::Domain(e.to_string()))?;
    let character_matches = character == expected_character;
    let irreducible = is_irreducible(&module);
    let cg = clebsch_gordan_decompose(&character).map_err(|e| CliError::Domain(e.to_string()))?;
    let hw = rank_check.then(|| highest_weight_counts(&module));
    let hw_matches = hw.as_ref().is_none_or(|h| *h == cg);
    let ok = report.all_pass()
        && shifts
        && character_matches
        && irreducible == expected_irreducible
        && hw_matches;

    match ctx.format {
        Format::Json => {
            let mut doc = json!({
                "module": label,
                "dim": module.dim(),
                "brackets": serde_json::to_value(&report).map_err(io::Error::from)?,
                "weight_shifts": shifts,
                "character": character.to_string(),
                "expected_character": expected_character.to_string(),
                "character_matches": character_matches,
                "irreducible": irreducible,
                "expected_irreducible": expected_irreducible,
                "decomposition": cg.to_string(),
                "ok": ok,
            });
            if let Some(h) = &hw {
                doc["highest_weight_vectors"] = Value::String(h.to_string());
            }
            ctx.json(out, &doc)?
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.relation.to_string(), c.pass.to_string()])
                .collect();
            rows.push(vec!["weight_shifts".into(), shifts.to_string()]);
            rows.push(vec![
                "character_matches".into(),
                character_matches.to_string(),
            ]);
            rows.push(vec![
                "irreducible_as_expected".into(),
                (irreducible == expected_irreducible).to_string(),
            ]);
            if hw.is_some() {
                rows.push(vec![
                    "highest_weight_rank_check".into(),
                    hw_matches.to_string(),
                ]);
            }
            ctx.csv(out, &["check", "pass"], &rows)?
        }
        Format::Table => {
            let mut details: Vec<(&str, String)> =
                vec![("module", format!("{label} (dim {})", module.dim()))];
            for c in &report.checks {
                details.push((
                    c.relation,
                    if c.pass {
                        "pass".into()
                    } else {
                        format!("FAIL (max numerator {})", c.max_abs_discrepancy_numerator)
                    },
                ));
            }
            details.push(("weight shifts", shifts.to_string()));
            details.push(("character", character.to_string()));
            details.push(("character matches", character_matches.to_string()));
            details.push(("irreducible", irreducible.to_string()));
            details.push(("decomposition", cg.to_string()));
            if let Some(h) = &hw {
                details.push(("highest-weight vectors", h.to_string()));
            }
            ctx.table(out, if ok { "ok" } else { "FAILED" }, &details)?
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_DOMAIN })
}

/// `a..b` (inclusive) or a single integer.
fn parse_range(flag: &str, text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let num = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| usage(format!("--{flag}: invalid value `{s}`")))
    };
    let range = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let v = num(text)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(usage(format!("--{flag}: empty range `{text}`")));
    }
    Ok(range)
}

fn cmd_table(ctx: &Ctx, out: &mut dyn Write, genus: &str, n: &str, betti: bool) -> CmdResult {
    let genera = parse_range("genus", genus)?;
    let powers = parse_range("n", n)?;
    if *powers.start() == 0 {
        return Err(usage("--n: symmetric powers start at 1"));
    }
    let cells = (genera.end() - genera.start()) as usize + 1;
    let cells = cells.saturating_mul((powers.end() - powers.start()) as usize + 1);
    if cells > MAX_TABLE_CELLS {
        return Err(usage(format!(
            "{cells} cells requested; the limit is {MAX_TABLE_CELLS}"
        )));
    }

    let grid = || {
        genera
            .clone()
            .flat_map(|g| powers.clone().map(move |n| (g, n)))
    };
    if betti {
        let mut rows = Vec::new();
        for (g, n) in grid() {
            let poly = Curve::new(g)
                .sym_poincare(n)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            for (r, b) in poly.betti().iter().enumerate() {
                rows.push((g, n, r, b.clone()));
            }
        }
        match ctx.format {
            Format::Json => {
                let arr: Vec<Value> = rows
                    .iter()
                    .map(|(g, n, r, b)| json!({"g": g, "n": n, "r": r, "betti": number(b)}))
                    .collect();
                ctx.json(out, &Value::Array(arr))?
            }
            _ => {
                let rows: Vec<Vec<String>> = rows
                    .iter()
                    .map(|(g, n, r, b)| {
                        vec![g.to_string(), n.to_string(), r.to_string(), b.to_string()]
                    })
                    .collect();
                let header = ["g", "n", "r", "betti"];
                if ctx.format == Format::Csv {
                    ctx.csv(out, &header, &rows)?
                } else {
                    write_aligned(out, &header, &rows)?
                }
            }
        }
        return Ok(EXIT_OK);
    }

    let rows: Vec<_> = grid().map(|(g, n)| compare_dimensions(g, n)).collect();
    match ctx.format {
        Format::Json => ctx.json(out, &serde_json::to_value(&rows).map_err(io::Error::from)?)?,
        _ => {
            let header = ["g", "n", "total_dim", "sym_dim", "relation"];
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|c| {
                    vec![
                        c.genus.to_string(),
                        c.n.to_string(),
                        c.total_dim.to_string(),
                        c.sym_dim.to_string(),
                        c.relation.to_string(),
                    ]
                })
                .collect();
            if ctx.format == Format::Csv {
                ctx.csv(out, &header, &rows)?
            } else {
                write_aligned(out, &header, &rows)?
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_aligned(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
