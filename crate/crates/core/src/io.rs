//! Serialization: versioned JSON envelopes, the `KLC1` KL cache and golden
//! module-category tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coxeter::{CoxeterDatum, GroupElement};
use crate::error::{Error, Result};
use crate::fusion::TableRow;
use crate::group::{find_class, subgroup_classes, FiniteGroup, Perm};
use crate::hecke::{KlColumn, KlTable, LaurentPoly};

pub const SCHEMA: &str = "cellkit/1";
const CACHE_MAGIC: &str = "KLC1";

/// `{"schema": "cellkit/1", "kind": kind, ...payload}`.
pub fn envelope(kind: &str, payload: impl Serialize) -> Result<Value> {
    let mut v = json!({ "schema": SCHEMA, "kind": kind });
    let body = serde_json::to_value(payload)?;
    match body {
        Value::Object(map) => {
            for (k, x) in map {
                v[k] = x;
            }
        }
        other => v["data"] = other,
    }
    Ok(v)
}

/// Reads a payload written by [`envelope`], checking the schema tag.
pub fn open_envelope<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text)?;
    if v.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(Error::invalid(format!("expected a `{SCHEMA}` document")));
    }
    Ok(serde_json::from_value(v)?)
}

/// Flag > `CELLKIT_CACHE` > `$XDG_CACHE_HOME/cellkit` > `~/.cache/cellkit`.
pub fn cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os("CELLKIT_CACHE") {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(p).join("cellkit");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("cellkit"),
        None => std::env::temp_dir().join("cellkit"),
    }
}

pub fn cache_file(dir: &Path, datum: &CoxeterDatum) -> PathBuf {
    let safe: String = datum
        .label()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '~' { c } else { '_' })
        .collect();
    dir.join(format!("{safe}.klc"))
}

/// Writes every cached column: header, datum label, then one record per
/// nonzero `h_{x,w}` as `x-word w-word exp:coeff ...`.
pub fn write_cache(path: &Path, table: &KlTable) -> Result<()> {
    let mut out = format!("{CACHE_MAGIC}\n{}\n", table.datum().label());
    for (w, col) in table.cached_columns() {
        for (x, h) in col.iter() {
            let terms: Vec<String> = h.terms().map(|(e, c)| format!("{e}:{c}")).collect();
            out.push_str(&format!("{x} {w} {}\n", terms.join(" ")));
        }
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("klc.tmp");
    fs::write(&tmp, out)?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// Loads cached columns into `table`. Returns the number of columns read.
/// Malformed files are rejected as invalid input.
pub fn read_cache(path: &Path, table: &KlTable) -> Result<usize> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_MAGIC) {
        return Err(Error::invalid(format!("{} is not a KLC1 cache", path.display())));
    }
    let datum = table.datum().clone();
    if lines.next() != Some(datum.label()) {
        return Err(Error::invalid("KL cache belongs to a different Coxeter datum"));
    }
    let bad = |l: &str| Error::invalid(format!("malformed KL cache record `{l}`"));
    let mut cols: BTreeMap<GroupElement, KlColumn> = BTreeMap::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let mut parts = line.split_whitespace();
        let x = parse_element(&datum, parts.next().ok_or_else(|| bad(line))?)?;
        let w = parse_element(&datum, parts.next().ok_or_else(|| bad(line))?)?;
        let mut terms = Vec::new();
        for t in parts {
            let (e, c) = t.split_once(':').ok_or_else(|| bad(line))?;
            terms.push((e.parse::<i32>().map_err(|_| bad(line))?, c.parse::<i64>().map_err(|_| bad(line))?));
        }
        let h = LaurentPoly::from_terms(terms);
        // h_{w,w} = 1 and h_{x,w} ∈ vZ[v] otherwise
        let ok = if x == w { h.is_one() } else { h.valuation().is_some_and(|v| v >= 1) };
        if !ok {
            return Err(bad(line));
        }
        cols.entry(w).or_default().insert(x, h);
    }
    let n = cols.len();
    for (w, col) in cols {
        if col.get(&w).is_none() {
            return Err(Error::invalid(format!("KL cache column {w} lacks its diagonal entry")));
        }
        table.insert_column(w, col);
    }
    Ok(n)
}

fn parse_element(datum: &Arc<CoxeterDatum>, word: &str) -> Result<GroupElement> {
    let w = datum.parse_word(word)?;
    let e = datum.normalize(&w)?;
    if e.word() != w.as_slice() {
        return Err(Error::invalid(format!("cache word {word} is not in normal form")));
    }
    Ok(e)
}

/// A row of a golden module-category table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub label: String,
    /// Generators in cycle notation separated by `;` (empty for `{e}`).
    pub generators: String,
    /// 1 for a nontrivial cocycle class.
    pub extension: u8,
    pub num_m: usize,
    pub num_fun: usize,
}

pub fn read_golden(path: &Path) -> Result<Vec<GoldenRow>> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    rdr.deserialize()
        .map(|r| r.map_err(|e| Error::invalid(format!("{}: {e}", path.display()))))
        .collect()
}

/// Compares a computed table with golden rows. Rows are matched by subgroup
/// class and cocycle triviality; counts must agree exactly.
pub fn compare_golden(g: &Arc<FiniteGroup>, rows: &[TableRow], golden: &[GoldenRow]) -> Result<()> {
    let classes = subgroup_classes(g)?;
    let mut problems = Vec::new();
    if rows.len() != golden.len() {
        problems.push(format!("{} computed rows vs {} golden rows", rows.len(), golden.len()));
    }
    type Key = (usize, bool);
    let mut expected: BTreeMap<Key, Vec<(usize, usize, String)>> = BTreeMap::new();
    for row in golden {
        let gens = row
            .generators
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|c| {
                let p = Perm::parse_cycles(c, g.degree())?;
                g.index_of(&p).map(|i| i as u32).ok_or_else(|| Error::invalid(format!("{c} is not in the group")))
            })
            .collect::<Result<Vec<u32>>>()?;
        let members = g.closure(&gens);
        let class = find_class(g, &classes, &members)
            .ok_or_else(|| Error::integrity(format!("no subgroup class for golden row {}", row.label)))?;
        expected.entry((class, row.extension != 0)).or_default().push((row.num_m, row.num_fun, row.label.clone()));
    }
    let mut computed: BTreeMap<Key, Vec<(usize, usize)>> = BTreeMap::new();
    for r in rows {
        computed.entry((r.subgroup_class, !r.trivial_cocycle)).or_default().push((r.num_m, r.num_fun));
    }
    for (key, exp) in &expected {
        let mut want: Vec<(usize, usize)> = exp.iter().map(|(m, f, _)| (*m, *f)).collect();
        let mut got = computed.get(key).cloned().unwrap_or_default();
        want.sort_unstable();
        got.sort_unstable();
        if want != got {
            problems.push(format!("{}: golden (#M, #Fun) {:?}, computed {:?}", exp[0].2, want, got));
        }
    }
    for (key, got) in &computed {
        if !expected.contains_key(key) {
            problems.push(format!("computed rows {got:?} for subgroup class {} have no golden counterpart", key.0));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::GoldenMismatch(problems.join("; ")))
    }
}
