use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use loopcell::homology::{config_homology, thom_dims};
use loopcell::spectral::{dl_basis, e1_page, snaith_check, E1Page, SnaithReport};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// Integer table with a fixed column order.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub table: &'static str,
    pub params: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<i64>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("tables serialize") + "\n",
            Format::Tsv => {
                let mut out = self.columns.join("\t") + "\n";
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                    writeln!(out, "{}", cells.join("\t")).unwrap();
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Params {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub max_rank: usize,
    pub max_degree: usize,
}

pub const TABLES: [&str; 5] = ["e1", "dl", "thom", "conf", "snaith"];

pub fn build(id: &str, p: &Params) -> Result<Table, CliError> {
    match id {
        "e1" => Ok(e1_table(
            &e1_page(p.k, p.m, p.max_rank, p.max_degree).map_err(CliError::input)?,
        )),
        "dl" => {
            if p.m == 0 || p.n == 0 {
                return Err(CliError::Input("dl needs m >= 1 and n >= 1".into()));
            }
            let rows = dl_basis(p.m, p.n, p.max_rank, p.max_degree)
                .into_iter()
                .map(|((d, w), c)| vec![d as i64, w as i64, c as i64])
                .collect();
            Ok(Table {
                table: "dl",
                params: json!({"m": p.m, "n": p.n, "max_rank": p.max_rank, "max_degree": p.max_degree}),
                columns: vec!["degree", "weight", "dim"],
                rows,
            })
        }
        "thom" => {
            let t = thom_dims(p.k, p.m, p.r, p.max_degree).map_err(CliError::input)?;
            Ok(Table {
                table: "thom",
                params: json!({"k": p.k, "m": p.m, "r": p.r, "max_degree": p.max_degree}),
                columns: vec!["degree", "dim"],
                rows: t
                    .dims
                    .iter()
                    .map(|(&q, &d)| vec![q as i64, d as i64])
                    .collect(),
            })
        }
        "conf" => {
            let betti = config_homology(p.n, p.d).map_err(CliError::input)?;
            Ok(Table {
                table: "conf",
                params: json!({"n": p.n, "d": p.d}),
                columns: vec!["degree", "dim"],
                rows: betti
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| vec![i as i64, b as i64])
                    .collect(),
            })
        }
        "snaith" => Ok(snaith_table(
            &snaith_check(p.k, p.m, p.max_degree).map_err(CliError::input)?,
        )),
        other => Err(CliError::Input(format!(
            "unknown table '{other}' (known: {})",
            TABLES.join(", ")
        ))),
    }
}

pub fn e1_table(page: &E1Page) -> Table {
    Table {
        table: "e1",
        params: json!({"k": page.k, "m": page.m, "max_rank": page.max_rank, "max_degree": page.max_degree}),
        columns: vec!["p", "q", "total", "dim"],
        rows: page
            .entries
            .iter()
            .map(|e| vec![e.p as i64, e.q, e.total as i64, e.dim as i64])
            .collect(),
    }
}

pub fn snaith_table(r: &SnaithReport) -> Table {
    Table {
        table: "snaith",
        params: json!({"k": r.k, "m": r.m, "max_degree": r.max_degree, "passed": r.passed}),
        columns: vec!["degree", "thom", "dyer_lashof"],
        rows: r
            .rows
            .iter()
            .map(|row| vec![row.degree as i64, row.thom as i64, row.dyer_lashof as i64])
            .collect(),
    }
}
