//! Output formats: dimension tables (CSV/JSON), check reports (JSON), and
//! the structure-constant text format for Hopf algebras.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::matrix::{SparseMatrix, SparseVec};
use crate::presentation::{parse_combination, parse_tensor};
use crate::scalar::Field;
use crate::space::IndexedSpace;

/// A homology dimension table; every row carries the truncation bound used,
/// so no unbounded claim is ever emitted.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionTable {
    pub kind: String,
    pub n_max: usize,
    pub rows: Vec<DimensionRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionRow {
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hh: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hp: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hp_stable: Option<bool>,
}

impl DimensionTable {
    pub fn assemble(
        kind: impl Into<String>,
        n_max: usize,
        hh: Option<&[usize]>,
        hc: Option<&[usize]>,
        hp: Option<&[crate::homology::PeriodicEntry]>,
    ) -> DimensionTable {
        let degrees = hh
            .map(|v| v.len())
            .into_iter()
            .chain(hc.map(|v| v.len()))
            .chain(hp.map(|v| v.len()))
            .max()
            .unwrap_or(0);
        let rows = (0..degrees)
            .map(|n| DimensionRow {
                degree: n,
                hh: hh.and_then(|v| v.get(n).copied()),
                hc: hc.and_then(|v| v.get(n).copied()),
                hp: hp.and_then(|v| v.get(n).map(|e| e.dim)),
                hp_stable: hp.and_then(|v| v.get(n).map(|e| e.stable)),
            })
            .collect();
        DimensionTable {
            kind: kind.into(),
            n_max,
            rows,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,hh,hc,hp,hp_stable,n_max\n");
        for r in &self.rows {
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.degree,
                opt(r.hh),
                opt(r.hc),
                opt(r.hp),
                r.hp_stable.map(|b| b.to_string()).unwrap_or_default(),
                self.n_max
            ));
        }
        out
    }
}

/// A grid of dimensions (spectral sequence pages) as CSV.
pub fn grid_to_csv(name: &str, grid: &[Vec<usize>]) -> String {
    let mut out = format!("# {name}: rows p, columns q\n");
    for (p, row) in grid.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("{p},{}\n", cells.join(",")));
    }
    out
}

/// Generic machine-readable outcome of a theorem check.
#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub kind: String,
    pub passed: bool,
    pub certificates: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}

// ---------------------------------------------------------------------------
// structure-constant text format
// ---------------------------------------------------------------------------

fn scalar_to_text(c: &crate::scalar::ExactScalar) -> String {
    format!("{c}")
}

fn combination_to_text(v: &SparseVec, labels: &[String], field: Field) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let _ = field;
    v.iter()
        .map(|(i, c)| {
            if c.is_one() {
                labels[*i].clone()
            } else {
                format!("{}*{}", scalar_to_text(c), labels[*i])
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn sanitize_labels(space: &IndexedSpace) -> Vec<String> {
    let valid = |l: &str| {
        l.chars().next().map_or(false, |c| c.is_alphabetic() || c == '_')
            && l.chars().all(|c| c.is_alphanumeric() || c == '_')
            && l != "q"
    };
    let mut labels: Vec<String> = space
        .labels()
        .into_iter()
        .enumerate()
        .map(|(i, l)| if valid(&l) { l } else { format!("e{i}") })
        .collect();
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != labels.len() {
        labels = (0..space.dim()).map(|i| format!("e{i}")).collect();
    }
    labels
}

/// Serialize a Hopf algebra as diffable text listing the nonzero entries of
/// every structure tensor.
pub fn write_hopf_text(h: &HopfAlgebra) -> String {
    let labels = sanitize_labels(&h.space);
    let n = h.dim();
    let mut out = String::new();
    out.push_str("[hopf]\n");
    out.push_str(&format!("name = {}\n", h.name.replace(char::is_whitespace, "_")));
    out.push_str(&format!(
        "field = {}\n",
        match h.field {
            Field::Rational => "rational".to_string(),
            Field::Prime(p) => format!("prime {p}"),
            Field::RationalFunction => "rational-function-q".to_string(),
        }
    ));
    out.push_str(&format!("basis = {}\n", labels.join(" ")));
    out.push_str("\n[unit]\n");
    out.push_str(&format!("1 = {}\n", combination_to_text(&h.unit, &labels, h.field)));
    out.push_str("\n[mult]\n");
    for i in 0..n {
        for j in 0..n {
            let p = h.product(i, j);
            if !p.is_zero() {
                out.push_str(&format!(
                    "{} {} = {}\n",
                    labels[i],
                    labels[j],
                    combination_to_text(p, &labels, h.field)
                ));
            }
        }
    }
    out.push_str("\n[comult]\n");
    for k in 0..n {
        let terms: Vec<String> = h
            .comult_of(k)
            .into_iter()
            .map(|((a, b), c)| {
                if c.is_one() {
                    format!("{}|{}", labels[a], labels[b])
                } else {
                    format!("{}*{}|{}", scalar_to_text(&c), labels[a], labels[b])
                }
            })
            .collect();
        out.push_str(&format!(
            "{} = {}\n",
            labels[k],
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        ));
    }
    out.push_str("\n[counit]\n");
    for k in 0..n {
        out.push_str(&format!("{} = {}\n", labels[k], scalar_to_text(&h.counit_of(k))));
    }
    out.push_str("\n[antipode]\n");
    for k in 0..n {
        out.push_str(&format!(
            "{} = {}\n",
            labels[k],
            combination_to_text(h.antipode.column(k), &labels, h.field)
        ));
    }
    out.push_str("\n[antipode_inverse]\n");
    for k in 0..n {
        out.push_str(&format!(
            "{} = {}\n",
            labels[k],
            combination_to_text(h.antipode_inv.column(k), &labels, h.field)
        ));
    }
    out
}

/// Parse the structure-constant text format back into a Hopf algebra.
pub fn read_hopf_text(text: &str) -> Result<HopfAlgebra> {
    let mut name = "hopf".to_string();
    let mut field = Field::Rational;
    let mut labels: Vec<String> = Vec::new();
    let mut section = String::new();
    let mut unit = None;
    let mut mult_lines = Vec::new();
    let mut comult_lines = Vec::new();
    let mut counit_lines = Vec::new();
    let mut antipode_lines = Vec::new();
    let mut antipode_inv_lines = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            section = line[1..line.len() - 1].to_string();
            continue;
        }
        match section.as_str() {
            "hopf" => {
                let Some((key, value)) = line.split_once('=') else {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        msg: "expected key = value".to_string(),
                    });
                };
                match key.trim() {
                    "name" => name = value.trim().to_string(),
                    "field" => {
                        field = match value.trim() {
                            "rational" => Field::Rational,
                            "rational-function-q" => Field::RationalFunction,
                            other => {
                                let p = other
                                    .strip_prefix("prime")
                                    .and_then(|s| s.trim().parse::<u64>().ok())
                                    .ok_or_else(|| Error::Parse {
                                        line: line_no,
                                        col: 1,
                                        msg: format!("unknown field `{other}`"),
                                    })?;
                                Field::prime(p)?
                            }
                        }
                    }
                    "basis" => {
                        labels = value.split_whitespace().map(|s| s.to_string()).collect()
                    }
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            col: 1,
                            msg: format!("unknown key `{other}`"),
                        })
                    }
                }
            }
            "unit" => {
                let (_, rhs) = line.split_once('=').ok_or(Error::Parse {
                    line: line_no,
                    col: 1,
                    msg: "expected `1 = combination`".to_string(),
                })?;
                unit = Some(parse_basis_combination(rhs, &labels, field, line_no)?);
            }
            "mult" => mult_lines.push((line_no, line.to_string())),
            "comult" => comult_lines.push((line_no, line.to_string())),
            "counit" => counit_lines.push((line_no, line.to_string())),
            "antipode" => antipode_lines.push((line_no, line.to_string())),
            "antipode_inverse" => antipode_inv_lines.push((line_no, line.to_string())),
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    col: 1,
                    msg: format!("content outside a known section (`{other}`)"),
                })
            }
        }
    }
    if labels.is_empty() {
        return Err(Error::structure("structure file declares no basis"));
    }
    let n = labels.len();
    let space = IndexedSpace::new(name.clone(), labels.clone())?;
    let index_of = |l: &str, line: usize| -> Result<usize> {
        labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol: l.to_string(),
                line,
                col: 1,
            })
    };
    let mut mult = SparseMatrix::zero(n, n * n, field);
    for (line_no, line) in &mult_lines {
        let (lhs, rhs) = line.split_once('=').ok_or(Error::Parse {
            line: *line_no,
            col: 1,
            msg: "expected `a b = combination`".to_string(),
        })?;
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                line: *line_no,
                col: 1,
                msg: "left side must name two basis elements".to_string(),
            });
        }
        let i = index_of(parts[0], *line_no)?;
        let j = index_of(parts[1], *line_no)?;
        mult.set_column(i * n + j, parse_basis_combination(rhs, &labels, field, *line_no)?);
    }
    let mut comult = SparseMatrix::zero(n * n, n, field);
    for (line_no, line) in &comult_lines {
        let (lhs, rhs) = line.split_once('=').ok_or(Error::Parse {
            line: *line_no,
            col: 1,
            msg: "expected `a = tensor combination`".to_string(),
        })?;
        let k = index_of(lhs.trim(), *line_no)?;
        let tensor = parse_tensor(rhs, &labels, field, *line_no)?;
        let mut entries = Vec::new();
        for ((w1, w2), c) in tensor.0 {
            if w1.len() != 1 || w2.len() != 1 {
                return Err(Error::Parse {
                    line: *line_no,
                    col: 1,
                    msg: "comultiplication entries must be basis|basis".to_string(),
                });
            }
            entries.push((w1[0] * n + w2[0], c));
        }
        comult.set_column(k, SparseVec::from_entries(entries));
    }
    let mut counit = SparseMatrix::zero(1, n, field);
    for (line_no, line) in &counit_lines {
        let (lhs, rhs) = line.split_once('=').ok_or(Error::Parse {
            line: *line_no,
            col: 1,
            msg: "expected `a = scalar`".to_string(),
        })?;
        let k = index_of(lhs.trim(), *line_no)?;
        let comb = parse_combination(rhs, &[], field, *line_no)?;
        let val = comb
            .0
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| field.zero());
        counit.set_column(k, SparseVec::from_entries(vec![(0, val)]));
    }
    let read_map = |lines: &[(usize, String)]| -> Result<SparseMatrix> {
        let mut m = SparseMatrix::zero(n, n, field);
        for (line_no, line) in lines {
            let (lhs, rhs) = line.split_once('=').ok_or(Error::Parse {
                line: *line_no,
                col: 1,
                msg: "expected `a = combination`".to_string(),
            })?;
            let k = index_of(lhs.trim(), *line_no)?;
            m.set_column(k, parse_basis_combination(rhs, &labels, field, *line_no)?);
        }
        Ok(m)
    };
    let antipode = read_map(&antipode_lines)?;
    let antipode_inv = if antipode_inv_lines.is_empty() {
        antipode
            .solve_inverse()
            .ok_or_else(|| Error::structure("antipode is not invertible"))?
    } else {
        read_map(&antipode_inv_lines)?
    };
    Ok(HopfAlgebra {
        name,
        field,
        space,
        mult,
        unit: unit.ok_or_else(|| Error::structure("missing [unit] section"))?,
        comult,
        counit,
        antipode,
        antipode_inv,
    })
}

/// Parse a linear combination of basis labels into coordinates.
fn parse_basis_combination(
    text: &str,
    labels: &[String],
    field: Field,
    line_no: usize,
) -> Result<SparseVec> {
    let labels_owned: Vec<String> = labels.to_vec();
    let comb = parse_combination(text, &labels_owned, field, line_no)?;
    let mut out = Vec::new();
    for (w, c) in comb.0 {
        match w.len() {
            0 => {
                if !c.is_zero() {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        msg: "scalar term without a basis label".to_string(),
                    });
                }
            }
            1 => out.push((w[0], c)),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    col: 1,
                    msg: "products of basis labels are not allowed here".to_string(),
                })
            }
        }
    }
    Ok(SparseVec::from_entries(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{group_algebra, sweedler_algebra, GroupTable};

    #[test]
    fn hopf_text_roundtrip() {
        for h in [
            group_algebra(&GroupTable::cyclic(3), Field::Rational).unwrap(),
            sweedler_algebra(Field::Rational).unwrap(),
            group_algebra(&GroupTable::cyclic(2), Field::prime(2).unwrap()).unwrap(),
        ] {
            let text = write_hopf_text(&h);
            let back = read_hopf_text(&text).unwrap();
            assert_eq!(back.dim(), h.dim());
            assert_eq!(back.mult, h.mult, "{}", h.name);
            assert_eq!(back.comult, h.comult);
            assert_eq!(back.counit, h.counit);
            assert_eq!(back.antipode, h.antipode);
            assert!(back.check_hopf().ok());
        }
    }

    #[test]
    fn csv_table_shape() {
        let t = DimensionTable::assemble("triple", 3, Some(&[1, 0]), Some(&[1, 0]), None);
        let csv = t.to_csv();
        assert!(csv.starts_with("degree,hh,hc,hp,hp_stable,n_max\n"));
        assert!(csv.contains("0,1,1,,,3"));
    }
}
