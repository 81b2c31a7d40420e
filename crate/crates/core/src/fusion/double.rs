use std::sync::Arc;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{check_guard, Error, Result};
use crate::group::{character_table, FiniteGroup};

/// S-matrix of the Drinfeld double of `G`, on simples `(class of a, χ ∈
/// Irr Z_G(a))`.
#[derive(Clone, Debug)]
pub struct FourierMatrix {
    /// `(element index of the class representative, irreducible index)`.
    pub labels: Vec<(usize, usize)>,
    pub label_names: Vec<String>,
    pub entries: Vec<Vec<Complex64>>,
    /// Row scale factors applied to reach unit-norm rows.
    pub row_scaling: Vec<f64>,
    /// The permutation `S²`.
    pub charge_conjugation: Vec<usize>,
}

impl Serialize for FourierMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<[f64; 2]>> =
            self.entries.iter().map(|row| row.iter().map(|c| [c.re, c.im]).collect()).collect();
        let mut st = s.serialize_struct("FourierMatrix", 3)?;
        st.serialize_field("labels", &self.label_names)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("charge_conjugation", &self.charge_conjugation)?;
        st.end()
    }
}

impl FourierMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Largest entry of `|S S^† - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let v: Complex64 = (0..n).map(|k| self.entries[i][k] * self.entries[j][k].conj()).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - target).norm());
            }
        }
        worst
    }

    pub fn symmetry_defect(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.entries[i][j] - self.entries[j][i]).norm());
            }
        }
        worst
    }

    /// The permutation `π` with `M[i][π(i)] = 1`, if `M` is one within `tol`.
    fn as_permutation(m: &[Vec<Complex64>], tol: f64) -> Option<Vec<usize>> {
        let n = m.len();
        let mut perm = Vec::with_capacity(n);
        for row in m {
            let ones: Vec<usize> = (0..n).filter(|&j| (row[j] - 1.0).norm() < tol).collect();
            if ones.len() != 1 || (0..n).any(|j| j != ones[0] && row[j].norm() > tol) {
                return None;
            }
            perm.push(ones[0]);
        }
        let mut seen = perm.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == n).then_some(perm)
    }

    fn product(&self, conj_right: bool) -> Vec<Vec<Complex64>> {
        let n = self.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                let r = self.entries[k][j];
                                self.entries[i][k] * if conj_right { r.conj() } else { r }
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    /// `S · conj(S)` as a permutation, if it is one.
    pub fn s_conj_s_permutation(&self) -> Option<Vec<usize>> {
        Self::as_permutation(&self.product(true), 1e-9)
    }
}

/// `S_{(a,χ),(b,τ)} = 1/(|Z(a)||Z(b)|) Σ_{g: a·gbg⁻¹ = gbg⁻¹·a} conj χ(gbg⁻¹) conj τ(g⁻¹ag)`,
/// rows rescaled to unit norm, then checked for unitarity, symmetry and
/// the permutation property of `S·conj(S)` and `S²`.
pub fn drinfeld_double(g: &Arc<FiniteGroup>) -> Result<FourierMatrix> {
    check_guard("|G| for the Drinfeld double", g.order(), 1000)?;
    struct Centralizer {
        rep: usize,
        order: usize,
        local: Vec<Option<usize>>,
        irreps: Vec<Vec<Complex64>>,
    }
    let cents: Vec<Centralizer> = g
        .classes()
        .iter()
        .map(|cls| {
            let a = cls[0] as usize;
            let z = g.subgroup(&g.centralizer(a));
            let table = character_table(&z)?;
            let irreps = (0..table.num_irreps())
                .map(|r| (0..z.order()).map(|k| table.value_complex(r, z.class_of(k))).collect())
                .collect();
            let local = g.elements().iter().map(|p| z.index_of(p)).collect();
            Ok(Centralizer { rep: a, order: z.order(), local, irreps })
        })
        .collect::<Result<_>>()?;
    let labels: Vec<(usize, usize, usize)> =
        cents.iter().enumerate().flat_map(|(c, z)| (0..z.irreps.len()).map(move |r| (c, z.rep, r))).collect();
    let n = labels.len();
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, &(ci, a, r)) in labels.iter().enumerate() {
        for (j, &(cj, b, t)) in labels.iter().enumerate() {
            let (za, zb) = (&cents[ci], &cents[cj]);
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..g.order() {
                let bx = g.conj(x, b);
                if !g.commute(a, bx) {
                    continue;
                }
                let ax = g.conj(g.inv(x), a);
                let u = za.irreps[r][za.local[bx].expect("commutes with a")];
                let w = zb.irreps[t][zb.local[ax].expect("commutes with b")];
                acc += u.conj() * w.conj();
            }
            entries[i][j] = acc / (za.order * zb.order) as f64;
        }
    }
    let row_scaling: Vec<f64> = entries
        .iter_mut()
        .map(|row| {
            let norm = row.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in row.iter_mut() {
                *c /= norm;
            }
            1.0 / norm
        })
        .collect();
    let label_names = labels.iter().map(|&(_, a, r)| format!("{}:{}", g.element(a), r)).collect();
    let mut f = FourierMatrix {
        labels: labels.iter().map(|&(_, a, r)| (a, r)).collect(),
        label_names,
        entries,
        row_scaling,
        charge_conjugation: Vec::new(),
    };
    if f.unitarity_defect() > 1e-9 {
        return Err(Error::integrity(format!("S-matrix not unitary (defect {:e})", f.unitarity_defect())));
    }
    if f.symmetry_defect() > 1e-9 {
        return Err(Error::integrity("S-matrix not symmetric"));
    }
    if f.s_conj_s_permutation().is_none() {
        return Err(Error::integrity("S·conj(S) is not a permutation matrix"));
    }
    f.charge_conjugation = FourierMatrix::as_permutation(&f.product(false), 1e-9)
        .ok_or_else(|| Error::integrity("S² is not a permutation matrix"))?;
    Ok(f)
}
