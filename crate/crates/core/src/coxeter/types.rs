//! Cartan-type labels and their Coxeter matrices (Bourbaki numbering).

use crate::error::{Error, Result};

/// Coxeter matrix entry used for `m = ∞`.
pub const INFINITE_BOND: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Component {
    pub family: char,
    pub rank: usize,
}

impl Component {
    /// Group order of the irreducible finite component.
    pub fn order(&self) -> Option<u128> {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        Some(match self.family {
            'A' => fact(n + 1),
            'B' | 'C' => (1u128 << n) * fact(n),
            'D' => (1u128 << (n - 1)) * fact(n),
            'E' => match n {
                6 => 51_840,
                7 => 2_903_040,
                8 => 696_729_600,
                _ => return None,
            },
            'F' => 1152,
            'G' => 12,
            _ => return None,
        })
    }

    fn bonds(&self) -> Vec<(usize, usize, u32)> {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect::<Vec<_>>();
        match self.family {
            'A' => chain(n),
            'B' | 'C' => {
                let mut b = chain(n);
                if let Some(last) = b.last_mut() {
                    last.2 = 4;
                }
                b
            }
            'D' => {
                let mut b = chain(n - 1);
                b.push((n - 3, n - 1, 3));
                b
            }
            'E' => {
                // 1-3-4-5-..., with 2 attached to 4
                let mut b = vec![(0, 2, 3), (1, 3, 3)];
                for i in 2..n - 1 {
                    b.push((i, i + 1, 3));
                }
                b
            }
            'F' => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            'G' => vec![(0, 1, 6)],
            _ => unreachable!(),
        }
    }
}

fn parse_component(s: &str) -> Result<Component> {
    let mut chars = s.chars();
    let family = chars
        .next()
        .ok_or_else(|| Error::invalid("empty Cartan component"))?
        .to_ascii_uppercase();
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::invalid(format!("bad rank in Cartan component `{s}`")))?;
    let ok = match family {
        'A' => rank >= 1,
        'B' | 'C' => rank >= 2,
        'D' => rank >= 4,
        'E' => (6..=8).contains(&rank),
        'F' => rank == 4,
        'G' => rank == 2,
        _ => return Err(Error::invalid(format!("unknown Cartan family in `{s}`"))),
    };
    if !ok || rank > 64 {
        return Err(Error::invalid(format!("rank out of supported range in `{s}`")));
    }
    Ok(Component { family, rank })
}

/// Parsed form of a type label.
pub(crate) enum ParsedLabel {
    Components(Vec<Component>),
    Matrix(Vec<Vec<u32>>),
}

/// Parses labels such as `A3`, `B2xG2`, `trivial` or an explicit
/// matrix literal `M[[1,3],[3,1]]` (with `inf` or `0` for an infinite bond).
pub(crate) fn parse_label(label: &str) -> Result<ParsedLabel> {
    let label = label.trim();
    if label.is_empty() || label.eq_ignore_ascii_case("trivial") || label == "A0" {
        return Ok(ParsedLabel::Components(Vec::new()));
    }
    if let Some(body) = label.strip_prefix('M').or_else(|| label.strip_prefix('m')) {
        return parse_matrix_literal(body).map(ParsedLabel::Matrix);
    }
    let parts: Vec<&str> = label
        .split(['x', '×', '*', ' '])
        .filter(|p| !p.is_empty())
        .collect();
    parts
        .into_iter()
        .map(parse_component)
        .collect::<Result<Vec<_>>>()
        .map(ParsedLabel::Components)
}

fn parse_matrix_literal(body: &str) -> Result<Vec<Vec<u32>>> {
    let body = body.trim();
    let inner = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::invalid("matrix literal must look like M[[..],[..]]"))?;
    let mut rows = Vec::new();
    for row in inner.split(']') {
        let row = row.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        let Some(row) = row.strip_prefix('[') else {
            if row.trim().is_empty() {
                continue;
            }
            return Err(Error::invalid("malformed matrix row"));
        };
        let entries = row
            .split(',')
            .map(|e| {
                let e = e.trim();
                if e.eq_ignore_ascii_case("inf") || e == "∞" || e == "0" {
                    Ok(INFINITE_BOND)
                } else {
                    e.parse::<u32>().map_err(|_| Error::invalid(format!("bad matrix entry `{e}`")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(entries);
    }
    Ok(rows)
}

/// Block-diagonal Coxeter matrix of a product of irreducible components.
pub(crate) fn matrix_of_components(comps: &[Component]) -> Vec<Vec<u32>> {
    let n: usize = comps.iter().map(|c| c.rank).sum();
    let mut m = vec![vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut offset = 0;
    for c in comps {
        for (i, j, v) in c.bonds() {
            m[offset + i][offset + j] = v;
            m[offset + j][offset + i] = v;
        }
        offset += c.rank;
    }
    m
}

pub(crate) fn validate_matrix(m: &[Vec<u32>]) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid("Coxeter matrix must be square"));
        }
        for (j, &v) in row.iter().enumerate() {
            if i == j && v != 1 {
                return Err(Error::invalid("Coxeter matrix diagonal must be 1"));
            }
            if i != j && v == 1 {
                return Err(Error::invalid("off-diagonal Coxeter entries must be >= 2"));
            }
            if m[j][i] != v {
                return Err(Error::invalid("Coxeter matrix must be symmetric"));
            }
            if i != j && !matches!(v, 2 | 3 | 4 | 6 | INFINITE_BOND) {
                return Err(Error::invalid(format!(
                    "bond m = {v} has no integral realization; supported bonds are 2, 3, 4, 6 and infinity"
                )));
            }
        }
    }
    Ok(())
}

/// Integral generalized Cartan matrix realizing the Coxeter matrix.
pub(crate) fn cartan_of(m: &[Vec<u32>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        for j in (i + 1)..n {
            let (aij, aji) = match m[i][j] {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                _ => (-2, -2),
            };
            a[i][j] = aij;
            a[j][i] = aji;
        }
    }
    a
}
