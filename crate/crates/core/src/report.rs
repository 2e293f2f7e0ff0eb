//! CSV and JSON renderings of sweep output, and parsers for both so
//! emitted files round-trip.
//!
//! Column order is fixed: `x,y,k,dprime,adprime_num,adprime_den,adprime`.
//! The `adprime` column is a 12-significant-digit decimal rendering of
//! the exact fraction carried by the two columns before it.

use std::io::{Read, Write};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::delta::adprime;
use crate::error::{Error, Result};
use crate::rational::format_decimal;
use crate::splits::average_distance;
use crate::sweep::InsetRecord;
use crate::tree::{DistanceSum, Tree};

pub const ANALYZE_HEADER: [&str; 7] = [
    "x",
    "y",
    "k",
    "dprime",
    "adprime_num",
    "adprime_den",
    "adprime",
];
pub const BENCH_HEADER: [&str; 7] = [
    "family",
    "n",
    "m",
    "wiener",
    "basic_ops",
    "ops_per_wiener",
    "wall_ms",
];

/// Decimal precision used for all rendered fractions.
pub const DECIMAL_DIGITS: usize = 12;

/// One analyze output row, with original vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRow {
    pub x: String,
    pub y: String,
    pub k: u32,
    pub dprime: DistanceSum,
    pub adprime_num: i64,
    pub adprime_den: i64,
    pub adprime: String,
}

/// Tree-level summary attached to analyze output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub n: u64,
    pub m: u64,
    pub wiener: DistanceSum,
    pub avg_distance: AvgDistance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvgDistance {
    pub num: i64,
    pub den: i64,
    pub decimal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub meta: Meta,
    pub records: Vec<AnalyzeRow>,
}

/// Builds the summary block for a tree.
pub fn meta_for(tree: &Tree, wiener: DistanceSum) -> Meta {
    let n = tree.vertex_count() as u64;
    let avg = average_distance(wiener, n).expect("trees have at least two vertices");
    Meta {
        n,
        m: tree.inset_edge_count(),
        wiener,
        avg_distance: AvgDistance {
            num: *avg.numer() as i64,
            den: *avg.denom() as i64,
            decimal: format_decimal(&avg, DECIMAL_DIGITS),
        },
    }
}

/// Renders records (already sorted as desired) into output rows.
pub fn analyze_rows(tree: &Tree, records: &[InsetRecord]) -> Vec<AnalyzeRow> {
    let n = tree.vertex_count() as u64;
    records
        .iter()
        .map(|r| {
            let ad = adprime(r.dprime, n).expect("records imply n >= 3");
            AnalyzeRow {
                x: tree.label(r.x).to_owned(),
                y: tree.label(r.y).to_owned(),
                k: r.k,
                dprime: r.dprime,
                adprime_num: *ad.numer() as i64,
                adprime_den: *ad.denom() as i64,
                adprime: format_decimal(&ad, DECIMAL_DIGITS),
            }
        })
        .collect()
}

/// Writes the fixed-header CSV form.
pub fn write_analyze_csv<W: Write>(out: W, rows: &[AnalyzeRow]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(ANALYZE_HEADER)?;
    for row in rows {
        writer.write_record([
            row.x.as_str(),
            row.y.as_str(),
            &row.k.to_string(),
            &row.dprime.to_string(),
            &row.adprime_num.to_string(),
            &row.adprime_den.to_string(),
            &row.adprime,
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Parses a file produced by [`write_analyze_csv`].
pub fn read_analyze_csv<R: Read>(input: R) -> Result<Vec<AnalyzeRow>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        rows.push(record?);
    }
    Ok(rows)
}

/// Writes the JSON form: `{"meta": {...}, "records": [...]}`.
pub fn write_analyze_json<W: Write>(out: W, meta: &Meta, rows: &[AnalyzeRow]) -> Result<()> {
    let report = AnalyzeReport {
        meta: meta.clone(),
        records: rows.to_vec(),
    };
    serde_json::to_writer_pretty(out, &report).map_err(|e| Error::Io(e.into()))?;
    Ok(())
}

/// Parses a file produced by [`write_analyze_json`].
pub fn read_analyze_json<R: Read>(input: R) -> Result<AnalyzeReport> {
    serde_json::from_reader(input).map_err(|e| Error::Io(e.into()))
}

/// One benchmark output row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: u64,
    pub m: u64,
    pub wiener: DistanceSum,
    pub basic_ops: u64,
    pub ops_per_wiener: String,
    pub wall_ms: String,
}

impl BenchRow {
    pub fn new(
        family: &str,
        n: u64,
        m: u64,
        wiener: DistanceSum,
        basic_ops: u64,
        wall_ms: f64,
    ) -> BenchRow {
        let ratio = Ratio::new(basic_ops as i128, wiener.max(1) as i128);
        BenchRow {
            family: family.to_owned(),
            n,
            m,
            wiener,
            basic_ops,
            ops_per_wiener: format_decimal(&ratio, 6),
            wall_ms: format!("{wall_ms:.3}"),
        }
    }
}

/// Writes bench rows under the fixed header.
pub fn write_bench_csv<W: Write>(out: W, rows: &[BenchRow]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(BENCH_HEADER)?;
    for row in rows {
        writer.write_record([
            row.family.as_str(),
            &row.n.to_string(),
            &row.m.to_string(),
            &row.wiener.to_string(),
            &row.basic_ops.to_string(),
            &row.ops_per_wiener,
            &row.wall_ms,
        ])?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splits::{edge_splits, wiener_from_splits};
    use crate::sweep::sweep_all;
    use crate::tree::{generate, TreeKind};

    fn report_for(tree: &Tree) -> (Meta, Vec<AnalyzeRow>) {
        let splits = edge_splits(tree);
        let mut records = Vec::new();
        sweep_all(tree, &splits, |r| records.push(r));
        records.sort_unstable();
        let meta = meta_for(tree, wiener_from_splits(&splits));
        let rows = analyze_rows(tree, &records);
        (meta, rows)
    }

    #[test]
    fn csv_has_exact_header_and_values() {
        let tree: Tree = "1 2\n2 3\n3 4".parse().unwrap();
        let (_, rows) = report_for(&tree);
        let mut buf = Vec::new();
        write_analyze_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,k,dprime,adprime_num,adprime_den,adprime");
        assert_eq!(lines[1], "1,3,3,2,1,3,0.333333333333");
        assert_eq!(lines[2], "1,4,4,2,1,3,0.333333333333");
        assert_eq!(lines[3], "2,4,3,2,1,3,0.333333333333");
    }

    #[test]
    fn csv_round_trips() {
        let tree = generate(TreeKind::Random, 30, 9).unwrap();
        let (_, rows) = report_for(&tree);
        let mut buf = Vec::new();
        write_analyze_csv(&mut buf, &rows).unwrap();
        let back = read_analyze_csv(&buf[..]).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn csv_quotes_awkward_labels() {
        let tree: Tree = "a,1 b\nb c\"x".parse().unwrap();
        let (_, rows) = report_for(&tree);
        let mut buf = Vec::new();
        write_analyze_csv(&mut buf, &rows).unwrap();
        let back = read_analyze_csv(&buf[..]).unwrap();
        assert_eq!(back, rows);
        assert!(back.iter().any(|r| r.x == "a,1" || r.y == "a,1"));
    }

    #[test]
    fn json_round_trips_with_meta() {
        let tree = generate(TreeKind::Caterpillar, 18, 4).unwrap();
        let (meta, rows) = report_for(&tree);
        let mut buf = Vec::new();
        write_analyze_json(&mut buf, &meta, &rows).unwrap();
        let back = read_analyze_json(&buf[..]).unwrap();
        assert_eq!(back.meta, meta);
        assert_eq!(back.records, rows);
        assert_eq!(back.meta.m, rows.len() as u64);
    }

    #[test]
    fn meta_reports_exact_average_distance() {
        let tree: Tree = "1 2\n2 3\n3 4".parse().unwrap();
        let (meta, _) = report_for(&tree);
        assert_eq!(meta.wiener, 10);
        assert_eq!((meta.avg_distance.num, meta.avg_distance.den), (5, 3));
        assert_eq!(meta.avg_distance.decimal, "1.66666666667");
    }

    #[test]
    fn bench_rows_render_ratio() {
        let row = BenchRow::new("path", 10, 36, 165, 330, 1.25);
        assert_eq!(row.ops_per_wiener, "2");
        assert_eq!(row.wall_ms, "1.250");
        let mut buf = Vec::new();
        write_bench_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("family,n,m,wiener,basic_ops,ops_per_wiener,wall_ms\n"));
        assert!(text.contains("path,10,36,165,330,2,1.250"));
    }
}
