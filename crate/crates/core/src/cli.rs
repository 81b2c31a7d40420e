//! The `cellkit` command-line tool.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::based_ring::{based_ring_iso, BasedRing};
use crate::cells::{compute_cells_with_guard, distinguished_involutions, j_ring, CellPartition, DEFAULT_CELL_GUARD};
use crate::coxeter::CoxeterDatum;
use crate::error::{Error, Result};
use crate::fusion::{convolution_ring, drinfeld_double, module_category_table, GSet, MODULE_TABLE_GUARD};
use crate::group::{FiniteGroup, Perm};
use crate::hecke::{classical_from_balanced, ExtendedHeckeDatum, KlTable};
use crate::io;

#[derive(Parser, Debug)]
#[command(name = "cellkit", version, about = "Kazhdan-Lusztig cells, asymptotic rings and fusion-category counts")]
struct Cli {
    /// Directory for the persistent KL cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Override a guard, `name=value` (names: cells, modcats, double).
    #[arg(long = "guard", global = true)]
    guards: Vec<String>,
    /// Allow guards above their defaults.
    #[arg(long, global = true)]
    unsafe_guards: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cell partition of a finite (extended) Coxeter group.
    Cells {
        #[arg(long = "type")]
        ty: String,
        /// Ω as `Z<m>` or `Z<m>:<image of each generator>`.
        #[arg(long)]
        extended: Option<String>,
    },
    /// Classical KL polynomial P_{x,w} in q.
    Kl {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// Module categories of Rep(G) with #M and #Fun(M, M).
    Modcats {
        #[arg(long)]
        group: String,
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// J-ring of a two-sided cell (or of Γ ∩ Γ⁻¹ for a left cell in it).
    Jring {
        #[arg(long = "type")]
        ty: String,
        /// Two-sided cell id, or `middle`.
        #[arg(long)]
        cell: String,
        #[arg(long)]
        gamma_gamma_inv: bool,
        /// Which left cell of the two-sided cell (with --gamma-gamma-inv).
        #[arg(long, default_value_t = 0)]
        left: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convolution ring K_G(X × X) for X = ⊔ G/H_i.
    Convring {
        #[arg(long)]
        group: String,
        /// Stabilizer generators of one orbit (`e` for the trivial subgroup,
        /// `G` for the whole group); repeat per orbit.
        #[arg(long = "orbit", required = true)]
        orbits: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Drinfeld-double S-matrix.
    Double {
        #[arg(long)]
        group: String,
    },
    /// Based-ring isomorphism search.
    Match {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Based subrings with their FP dimensions.
    Subrings {
        #[arg(long)]
        ring: PathBuf,
    },
}

struct Guards {
    cells: usize,
    modcats: usize,
    double: usize,
}

impl Guards {
    fn from_flags(flags: &[String], unsafe_guards: bool) -> Result<Guards> {
        let mut g = Guards { cells: DEFAULT_CELL_GUARD, modcats: MODULE_TABLE_GUARD, double: 1000 };
        for f in flags {
            let (name, value) = f.split_once('=').ok_or_else(|| Error::invalid(format!("bad guard `{f}`")))?;
            let value: usize = value.trim().parse().map_err(|_| Error::invalid(format!("bad guard value in `{f}`")))?;
            let slot = match name.trim() {
                "cells" => &mut g.cells,
                "modcats" => &mut g.modcats,
                "double" => &mut g.double,
                other => return Err(Error::invalid(format!("unknown guard `{other}`"))),
            };
            if value > *slot && !unsafe_guards {
                return Err(Error::invalid(format!("raising guard `{name}` requires --unsafe-guards")));
            }
            *slot = value;
        }
        Ok(g)
    }
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    match execute(&cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if let Some(j) = cli.jobs {
        // a pool may already exist when running in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let guards = Guards::from_flags(&cli.guards, cli.unsafe_guards)?;
    match &cli.command {
        Command::Cells { ty, extended } => cmd_cells(cli, &guards, ty, extended.as_deref(), out),
        Command::Kl { ty, x, w } => cmd_kl(cli, ty, x, w, out),
        Command::Modcats { group, golden } => cmd_modcats(cli, &guards, group, golden.as_ref(), out),
        Command::Jring { ty, cell, gamma_gamma_inv, left, out: path } => {
            cmd_jring(&guards, ty, cell, *gamma_gamma_inv, *left, path.as_ref(), out)
        }
        Command::Convring { group, orbits, out: path } => cmd_convring(group, orbits, path.as_ref(), out),
        Command::Double { group } => cmd_double(cli, &guards, group, out),
        Command::Match { left, right } => cmd_match(cli, left, right, out),
        Command::Subrings { ring } => cmd_subrings(cli, ring, out),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

/// Groups: `S<n>`, `A<n>`, `Z<n>`, `D<n>` (order 2n), or generators in
/// cycle notation separated by `;`.
pub fn parse_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    let s = spec.trim();
    let num = |t: &str| t.parse::<usize>().ok().filter(|&n| n >= 1);
    if let Some(n) = s.strip_prefix('S').and_then(num) {
        if n > 7 {
            return Err(Error::Guard { name: "symmetric group degree", limit: 7, value: n });
        }
        return Ok(FiniteGroup::symmetric(n));
    }
    if let Some(n) = s.strip_prefix('Z').and_then(num) {
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = s.strip_prefix('A').and_then(num) {
        if n > 7 {
            return Err(Error::Guard { name: "alternating group degree", limit: 7, value: n });
        }
        let sym = FiniteGroup::symmetric(n);
        let even: Vec<Perm> = sym.elements().iter().filter(|p| is_even(p)).cloned().collect();
        return FiniteGroup::from_permutations(n, even);
    }
    if let Some(n) = s.strip_prefix('D').and_then(num) {
        let rot = (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        let refl: Vec<String> = (1..=n / 2)
            .filter(|&i| i != n + 1 - i)
            .map(|i| format!("({},{})", i, n + 1 - i))
            .collect();
        let refl = if refl.is_empty() { "()".to_string() } else { refl.join("") };
        return FiniteGroup::from_cycles(n.max(2), &[&format!("({rot})"), &refl]);
    }
    let gens: Vec<&str> = s.split(';').map(str::trim).filter(|g| !g.is_empty()).collect();
    if gens.is_empty() {
        return Err(Error::invalid(format!("cannot parse group `{spec}`")));
    }
    let degree = gens.iter().filter_map(|g| max_point(g)).max().unwrap_or(1);
    FiniteGroup::from_cycles(degree, &gens)
}

fn max_point(cycles: &str) -> Option<usize> {
    if cycles.contains(',') {
        cycles.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse().ok()).max()
    } else {
        cycles.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).max()
    }
}

fn is_even(p: &Perm) -> bool {
    p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
}

fn cells_report(p: &CellPartition) -> Result<Value> {
    let mut cells = Vec::new();
    for (c, members) in p.two_sided_cells().iter().enumerate() {
        let lefts: Vec<Vec<String>> =
            p.left_cells_in(c).iter().map(|l| l.iter().map(|&e| p.label(e)).collect()).collect();
        let dist = if p.is_plain() {
            json!(distinguished_involutions(p, c)?.iter().map(|&d| p.label(d)).collect::<Vec<_>>())
        } else {
            Value::Null
        };
        cells.push(json!({
            "id": c,
            "size": members.len(),
            "a": p.a_value(c),
            "elements": members.iter().map(|&e| p.label(e)).collect::<Vec<_>>(),
            "left_cells": lefts,
            "distinguished_involutions": dist,
        }));
    }
    Ok(json!({
        "elements": p.len(),
        "num_left_cells": p.left_cells().len(),
        "num_right_cells": p.right_cells().len(),
        "two_sided_cells": cells,
    }))
}

fn cmd_cells(cli: &Cli, guards: &Guards, ty: &str, extended: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let datum = CoxeterDatum::from_type(ty)?;
    let ed = match extended {
        Some(spec) => ExtendedHeckeDatum::parse(datum, spec)?,
        None => ExtendedHeckeDatum::plain(datum),
    };
    let p = compute_cells_with_guard(&ed, guards.cells)?;
    let report = cells_report(&p)?;
    match cli.format {
        Format::Json => emit_json(out, &io::envelope("cells", &report)?)?,
        Format::Csv => {
            writeln!(out, "element,left_cell,right_cell,two_sided_cell,a")?;
            for e in 0..p.len() {
                writeln!(
                    out,
                    "\"{}\",{},{},{},{}",
                    p.label(e),
                    p.left_cell_id(e),
                    p.right_cell_id(e),
                    p.two_sided_cell_id(e),
                    p.a_function(e)
                )?;
            }
        }
        Format::Pretty => {
            let cells = report["two_sided_cells"].as_array().expect("array");
            writeln!(
                out,
                "{} elements, {} two-sided cells, {} left cells",
                p.len(),
                cells.len(),
                p.left_cells().len()
            )?;
            for c in cells {
                writeln!(
                    out,
                    "cell {}: size {}, a = {}, {} left cells",
                    c["id"],
                    c["size"],
                    c["a"],
                    c["left_cells"].as_array().map_or(0, Vec::len)
                )?;
                if let Some(d) = c["distinguished_involutions"].as_array() {
                    let d: Vec<&str> = d.iter().filter_map(Value::as_str).collect();
                    writeln!(out, "  distinguished involutions: {}", d.join(" "))?;
                }
            }
        }
    }
    Ok(0)
}

fn cmd_kl(cli: &Cli, ty: &str, x: &str, w: &str, out: &mut dyn Write) -> Result<i32> {
    let datum = CoxeterDatum::from_type(ty)?;
    let x = datum.normalize(&datum.parse_word(x)?)?;
    let w = datum.normalize(&datum.parse_word(w)?)?;
    let table = KlTable::new(datum.clone());
    let path = io::cache_file(&io::cache_dir(cli.cache_dir.as_deref()), &datum);
    if path.exists() {
        if let Err(e) = io::read_cache(&path, &table) {
            eprintln!("warning: ignoring KL cache {}: {e}", path.display());
        }
    }
    let h = table.h(&x, &w)?;
    let p = classical_from_balanced(&h, datum.length(&w) as i32 - datum.length(&x) as i32);
    if let Err(e) = io::write_cache(&path, &table) {
        eprintln!("warning: could not write KL cache {}: {e}", path.display());
    }
    match cli.format {
        Format::Json => emit_json(
            out,
            &io::envelope("kl", json!({"x": x, "w": w, "balanced": h.render("v"), "classical": p.render("q")}))?,
        )?,
        _ => writeln!(out, "{}", p.render("q"))?,
    }
    Ok(0)
}

fn cmd_modcats(cli: &Cli, guards: &Guards, group: &str, golden: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let g = parse_group(group)?;
    crate::error::check_guard("|G| for module category tables", g.order(), guards.modcats)?;
    let rows = module_category_table(&g)?;
    match cli.format {
        Format::Json => emit_json(out, &io::envelope("modcats", json!({ "group": group, "rows": rows }))?)?,
        Format::Csv => {
            writeln!(out, "order,generators,extension,num_m,num_fun")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.order,
                    r.generators.join(";").replace(',', ""),
                    u8::from(!r.trivial_cocycle),
                    r.num_m,
                    r.num_fun
                )?;
            }
        }
        Format::Pretty => {
            writeln!(out, "{:>5}  {:<28} {:>3} {:>5} {:>5}", "|H|", "H", "ψ", "#M", "#Fun")?;
            for r in &rows {
                let gens = if r.generators.is_empty() { "{e}".to_string() } else { r.generators.join(" ") };
                let psi = if r.trivial_cocycle { "1" } else { "~" };
                writeln!(out, "{:>5}  {:<28} {:>3} {:>5} {:>5}", r.order, gens, psi, r.num_m, r.num_fun)?;
            }
            writeln!(out, "{} rows", rows.len())?;
        }
    }
    if let Some(path) = golden {
        io::compare_golden(&g, &rows, &io::read_golden(path)?)?;
        if cli.format == Format::Pretty {
            writeln!(out, "golden table {}: match", path.display())?;
        }
    }
    Ok(0)
}

fn write_ring(ring: &BasedRing, kind: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let v = io::envelope(kind, ring)?;
    match path {
        Some(p) => std::fs::write(p, serde_json::to_string_pretty(&v)?)?,
        None => emit_json(out, &v)?,
    }
    Ok(())
}

fn read_ring(path: &PathBuf) -> Result<BasedRing> {
    io::open_envelope(&std::fs::read_to_string(path)?)
}

fn cmd_jring(
    guards: &Guards,
    ty: &str,
    cell: &str,
    gamma_gamma_inv: bool,
    left: usize,
    path: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let datum = CoxeterDatum::from_type(ty)?;
    let p = compute_cells_with_guard(&ExtendedHeckeDatum::plain(datum), guards.cells)?;
    let cells = p.two_sided_cells();
    let c = if cell == "middle" {
        // by a-value, the median cell
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by_key(|&c| (p.a_value(c), c));
        order[order.len() / 2]
    } else {
        cell.parse::<usize>().ok().filter(|&c| c < cells.len()).ok_or_else(|| {
            Error::invalid(format!("cell must be `middle` or an id below {}", cells.len()))
        })?
    };
    let subset = if gamma_gamma_inv {
        let lefts = p.left_cells_in(c);
        let gamma = lefts
            .get(left)
            .ok_or_else(|| Error::invalid(format!("cell {c} has only {} left cells", lefts.len())))?;
        gamma.iter().copied().filter(|&e| gamma.contains(&p.inverse(e))).collect()
    } else {
        cells[c].clone()
    };
    write_ring(&j_ring(&p, &subset)?, "based_ring", path, out)?;
    Ok(0)
}

fn parse_subgroup(g: &Arc<FiniteGroup>, spec: &str) -> Result<Arc<FiniteGroup>> {
    let s = spec.trim();
    if s == "G" {
        return Ok(g.clone());
    }
    if s == "e" || s.is_empty() {
        return Ok(FiniteGroup::trivial_on(g.degree()));
    }
    let gens = s
        .split(';')
        .map(|c| {
            let p = Perm::parse_cycles(c.trim(), g.degree())?;
            g.index_of(&p).map(|i| i as u32).ok_or_else(|| Error::invalid(format!("{c} is not in the group")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(g.subgroup(&g.closure(&gens)))
}

fn cmd_convring(group: &str, orbits: &[String], path: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let g = parse_group(group)?;
    let stabs = orbits.iter().map(|o| parse_subgroup(&g, o)).collect::<Result<Vec<_>>>()?;
    let ring = convolution_ring(&GSet::new(g, stabs)?)?;
    write_ring(&ring, "based_ring", path, out)?;
    Ok(0)
}

fn cmd_double(cli: &Cli, guards: &Guards, group: &str, out: &mut dyn Write) -> Result<i32> {
    let g = parse_group(group)?;
    crate::error::check_guard("|G| for the Drinfeld double", g.order(), guards.double)?;
    let f = drinfeld_double(&g)?;
    match cli.format {
        Format::Json => emit_json(out, &io::envelope("fourier_matrix", &f)?)?,
        _ => {
            writeln!(out, "{} simples", f.len())?;
            writeln!(out, "unitarity defect {:.3e}", f.unitarity_defect())?;
            writeln!(out, "symmetry defect {:.3e}", f.symmetry_defect())?;
            writeln!(out, "S·conj(S) is a permutation: {}", f.s_conj_s_permutation().is_some())?;
        }
    }
    Ok(0)
}

fn cmd_match(cli: &Cli, left: &PathBuf, right: &PathBuf, out: &mut dyn Write) -> Result<i32> {
    let (a, b) = (read_ring(left)?, read_ring(right)?);
    let iso = based_ring_iso(&a, &b)?;
    match cli.format {
        Format::Json => {
            let map = iso.as_ref().map(|s| {
                s.iter().enumerate().map(|(i, &j)| json!([a.labels()[i], b.labels()[j]])).collect::<Vec<_>>()
            });
            emit_json(out, &io::envelope("match", json!({ "isomorphic": iso.is_some(), "map": map }))?)?;
        }
        _ => match &iso {
            Some(s) => {
                writeln!(out, "isomorphism found")?;
                for (i, &j) in s.iter().enumerate() {
                    writeln!(out, "  {} -> {}", a.labels()[i], b.labels()[j])?;
                }
            }
            None => writeln!(out, "no isomorphism")?,
        },
    }
    Ok(if iso.is_some() { 0 } else { 3 })
}

fn cmd_subrings(cli: &Cli, ring: &PathBuf, out: &mut dyn Write) -> Result<i32> {
    let r = read_ring(ring)?;
    let subs = r.based_subrings()?;
    match cli.format {
        Format::Json => {
            let rows: Vec<Value> = subs
                .iter()
                .map(|(s, d)| json!({ "basis": s.iter().map(|&i| &r.labels()[i]).collect::<Vec<_>>(), "fpdim": d }))
                .collect();
            emit_json(out, &io::envelope("subrings", json!({ "subrings": rows }))?)?;
        }
        _ => {
            for (s, d) in &subs {
                let labels: Vec<&str> = s.iter().map(|&i| r.labels()[i].as_str()).collect();
                writeln!(out, "FPdim {:>10.4}  {{{}}}", d, labels.join(", "))?;
            }
        }
    }
    Ok(0)
}
