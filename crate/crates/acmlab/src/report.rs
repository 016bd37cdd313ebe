//! Machine-readable report types for the command-line front end.
//!
//! The JSON schema is language-neutral: monomials are exponent arrays,
//! coefficients are decimal strings (`n` or `n/d` over the rationals, the
//! canonical residue over a prime field), and cohomology tables are keyed by
//! stringified `(i,k)` pairs. Serialization is deterministic: identical
//! inputs produce byte-identical output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

pub fn poly_json(p: &Polynomial) -> PolyJson {
    PolyJson {
        terms: p
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exps: m.exps.iter().map(|&x| x as u32).collect(),
                coeff: c.render(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<Vec<PolyJson>>,
}

pub fn matrix_json(m: &PolyMatrix) -> MatrixJson {
    MatrixJson {
        nrows: m.nrows,
        ncols: m.ncols,
        entries: (0..m.nrows)
            .map(|i| (0..m.ncols).map(|j| poly_json(m.at(i, j))).collect())
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructReport {
    pub field: String,
    pub vars: usize,
    pub hypersurface: PolyJson,
    pub degree: i64,
    pub e: i64,
    pub twists: Vec<i64>,
    pub smooth: bool,
    pub betti_admissible: bool,
    pub checks: Vec<CheckJson>,
    pub phi: MatrixJson,
    pub psi: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleSummary {
    pub support: Option<(i64, i64)>,
    pub dims: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub field: String,
    pub vars: usize,
    pub degree: i64,
    pub e: i64,
    pub twists: Vec<i64>,
    pub smooth: bool,
    pub expect_split: bool,
    pub suite: String,
    pub checks: Vec<CheckJson>,
    pub obstruction: Option<ModuleSummary>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumerateRow {
    pub r: usize,
    pub a: Vec<i64>,
    pub binding: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub degree: i64,
    pub e: i64,
    pub ambient: i64,
    pub candidates: Vec<EnumerateRow>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub field: String,
    pub module: String,
    pub window: (i64, i64),
    /// `"(i,k)"` -> `h^i` of the twist by `k`.
    pub table: BTreeMap<String, usize>,
    /// `"k"` -> Euler characteristic of the twist by `k`.
    pub chi: BTreeMap<String, i64>,
}

impl CohomologyReport {
    /// Aligned text rendering: one row per cohomological index, top first.
    pub fn render_text(&self, n: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!("module {} over window {:?}\n", self.module, self.window));
        out.push_str("      k:");
        for k in self.window.0..=self.window.1 {
            out.push_str(&format!("{k:>7}"));
        }
        out.push('\n');
        for i in (0..=n).rev() {
            out.push_str(&format!("  h^{i}  :"));
            for k in self.window.0..=self.window.1 {
                match self.table.get(&format!("({i},{k})")) {
                    Some(0) | None => out.push_str("      ."),
                    Some(v) => out.push_str(&format!("{v:>7}")),
                }
            }
            out.push('\n');
        }
        out.push_str("  chi  :");
        for k in self.window.0..=self.window.1 {
            let v = self.chi.get(&format!("{k}")).copied().unwrap_or(0);
            out.push_str(&format!("{v:>7}"));
        }
        out.push('\n');
        out
    }
}

/// Writes a report atomically: to a temporary sibling first, then renamed
/// over the target, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Error> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or("report");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
        file.sync_all()?;
    }
    if let Err(e) = std::fs::rename(&tmp, path) {
        let _ = std::fs::remove_file(&tmp);
        return Err(Error::Io(e));
    }
    Ok(())
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
