//! Text, CSV and LaTeX renderings of designs and bound tables.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::bounds::BoundRow;
use crate::design::{DesignMatrix, Entry};

const RED: &str = "\x1b[31m";
const DIM: &str = "\x1b[2m";
const RESET: &str = "\x1b[0m";

/// Right-aligned token grid, two spaces between columns. Widths depend
/// only on the tokens, so output is stable across runs.
pub fn text(d: &DesignMatrix, color: bool) -> String {
    let tokens: Vec<Vec<String>> = d
        .to_rows()
        .iter()
        .map(|r| r.iter().map(Entry::to_string).collect())
        .collect();
    let widths: Vec<usize> = (0..d.cols())
        .map(|c| tokens.iter().map(|r| r[c].chars().count()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in &tokens {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(t, &w)| {
                let pad = " ".repeat(w - t.chars().count());
                match (color, t.as_str()) {
                    (false, _) => format!("{pad}{t}"),
                    (true, "0") => format!("{pad}{DIM}{t}{RESET}"),
                    (true, s) if s.starts_with('-') => format!("{pad}{RED}{t}{RESET}"),
                    (true, _) => format!("{pad}{t}"),
                }
            })
            .collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

/// One CSV record per matrix row, cells as tokens.
pub fn csv(d: &DesignMatrix) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in 0..d.rows() {
        w.write_record(d.row(r).iter().map(Entry::to_string))
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("tokens are UTF-8")
}

fn latex_entry(e: &Entry) -> String {
    match e.literal() {
        None => "0".to_string(),
        Some(l) => {
            let var = format!("x_{{{}}}{}", l.var, if l.conj { "^{*}" } else { "" });
            let sign = if l.sign() < 0 { "-" } else { "" };
            if l.is_scaled() {
                format!("\\frac{{{sign}{var}}}{{\\sqrt{{2}}}}")
            } else {
                format!("{sign}{var}")
            }
        }
    }
}

/// A bracketed `array`; scaled entries render as `\frac{±x_i}{\sqrt{2}}`.
pub fn latex(d: &DesignMatrix) -> String {
    let mut out = format!("\\left[\\begin{{array}}{{{}}}\n", "r".repeat(d.cols()));
    for r in 0..d.rows() {
        let cells: Vec<String> = d.row(r).iter().map(latex_entry).collect();
        let _ = writeln!(out, "  {} \\\\", cells.join(" & "));
    }
    out.push_str("\\end{array}\\right]\n");
    out
}

#[derive(Serialize)]
struct TableRecord {
    n: u64,
    delay_rh: u64,
    delay_tjc: u64,
    delay_maxrate: u128,
    rate_half: String,
    rate_maxrate: String,
}

fn ratio(r: Ratio<u64>) -> String {
    r.to_string()
}

fn records(rows: &[BoundRow]) -> Vec<TableRecord> {
    rows.iter()
        .map(|r| TableRecord {
            n: r.n,
            delay_rh: r.delay_rh,
            delay_tjc: r.delay_tjc,
            delay_maxrate: r.delay_maxrate,
            rate_half: ratio(r.rate_half),
            rate_maxrate: ratio(r.rate_maxrate),
        })
        .collect()
}

const TABLE_HEADER: [&str; 6] = [
    "n",
    "delay_rh",
    "delay_tjc",
    "delay_maxrate",
    "rate_half",
    "rate_maxrate",
];

fn table_cells(rows: &[BoundRow]) -> Vec<Vec<String>> {
    records(rows)
        .into_iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.delay_rh.to_string(),
                r.delay_tjc.to_string(),
                r.delay_maxrate.to_string(),
                r.rate_half,
                r.rate_maxrate,
            ]
        })
        .collect()
}

pub fn table_text(rows: &[BoundRow]) -> String {
    let body = table_cells(rows);
    let widths: Vec<usize> = (0..TABLE_HEADER.len())
        .map(|c| {
            body.iter()
                .map(|r| r[c].len())
                .chain([TABLE_HEADER[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ") + "\n"
    };
    let mut out = line(TABLE_HEADER.to_vec());
    for r in &body {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn table_csv(rows: &[BoundRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABLE_HEADER).expect("writing to memory");
    for r in table_cells(rows) {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ASCII")
}

pub fn table_json(rows: &[BoundRow]) -> String {
    let mut s = serde_json::to_string_pretty(&records(rows)).expect("plain records");
    s.push('\n');
    s
}

/// Antenna counts across, one row per quantity.
pub fn table_latex(rows: &[BoundRow]) -> String {
    let body = table_cells(rows);
    let labels = [
        "$n$",
        "Delay of $RH_n$",
        "Delay of $TJC_n$",
        "Delay of $L_n$",
        "Rate of $RH_n$, $TJC_n$",
        "Rate of $L_n$",
    ];
    let mut out = format!("\\begin{{tabular}}{{l{}}}\n\\hline\n", "c".repeat(rows.len()));
    for (q, label) in labels.iter().enumerate() {
        let cells: Vec<String> = body
            .iter()
            .map(|r| {
                let c = &r[q];
                if q >= 4 && c.contains('/') {
                    let (a, b) = c.split_once('/').expect("checked");
                    format!("$\\frac{{{a}}}{{{b}}}$")
                } else {
                    c.clone()
                }
            })
            .collect();
        let _ = writeln!(out, "{label} & {} \\\\", cells.join(" & "));
        if q == 0 {
            out.push_str("\\hline\n");
        }
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}
