//! Browser bindings for the shortcut-effect explorer.
//!
//! Three operations back the static page in `www/`: generate an edge
//! list, analyze a tree (drops for all inset edges plus a radial layout
//! for drawing), and find the inset edges closest to a target change.
//! Everything crosses the boundary as strings: edge-list text in, JSON
//! out, so the page needs no glue beyond `JSON.parse`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use treedelta::query::{closest, Metric};
use treedelta::{
    build_index, edge_splits, format_decimal, parse_rational, sweep_all, wiener_from_splits,
    Error, InsetRecord, Tree, TreeKind, VertexId,
};

mod layout;

/// Demo-side vertex cap. Keeps the record table and the JSON payload at
/// interactive sizes (m grows quadratically).
const MAX_DEMO_VERTICES: u64 = 400;

fn parse_demo_tree(text: &str) -> Result<Tree, Error> {
    let tree: Tree = text.parse()?;
    if tree.vertex_count() as u64 > MAX_DEMO_VERTICES {
        return Err(Error::TooManyVertices {
            n: tree.vertex_count() as u64,
        });
    }
    Ok(tree)
}

fn record_json(tree: &Tree, r: &InsetRecord, n: u64) -> serde_json::Value {
    let ad = treedelta::adprime(r.dprime, n).expect("records imply n >= 3");
    json!({
        "xi": r.x,
        "yi": r.y,
        "x": tree.label(r.x),
        "y": tree.label(r.y),
        "k": r.k,
        "dprime": r.dprime,
        "adprime_num": *ad.numer() as i64,
        "adprime_den": *ad.denom() as i64,
        "adprime": format_decimal(&ad, 12),
    })
}

pub fn generate_impl(kind: &str, n: u64, seed: u64) -> Result<String, Error> {
    if n > MAX_DEMO_VERTICES {
        return Err(Error::TooManyVertices { n });
    }
    let kind: TreeKind = kind.parse()?;
    Ok(treedelta::generate(kind, n, seed)?.to_edge_list())
}

pub fn analyze_impl(text: &str) -> Result<String, Error> {
    let tree = parse_demo_tree(text)?;
    let n = tree.vertex_count() as u64;
    let splits = edge_splits(&tree);
    let wiener = wiener_from_splits(&splits);
    let avg = treedelta::average_distance(wiener, n)?;

    let mut records = Vec::new();
    sweep_all(&tree, &splits, |r| records.push(r));
    records.sort_unstable();
    let (max_dp, min_dp) = records
        .iter()
        .fold((0i64, i64::MAX), |(hi, lo), r| (hi.max(r.dprime), lo.min(r.dprime)));

    let positions = layout::radial(&tree);
    let vertices: Vec<serde_json::Value> = positions
        .iter()
        .enumerate()
        .map(|(v, &(x, y))| json!({ "label": tree.label(v as VertexId), "x": x, "y": y }))
        .collect();
    let edges: Vec<[VertexId; 2]> = tree.edges().iter().map(|&(u, v)| [u, v]).collect();
    let record_values: Vec<serde_json::Value> =
        records.iter().map(|r| record_json(&tree, r, n)).collect();

    let payload = json!({
        "meta": {
            "n": n,
            "m": records.len() as u64,
            "wiener": wiener,
            "avg_distance": {
                "num": *avg.numer() as i64,
                "den": *avg.denom() as i64,
                "decimal": format_decimal(&avg, 12),
            },
            "max_dprime": if records.is_empty() { 0 } else { max_dp },
            "min_dprime": if records.is_empty() { 0 } else { min_dp },
        },
        "vertices": vertices,
        "edges": edges,
        "records": record_values,
    });
    Ok(payload.to_string())
}

pub fn query_closest_impl(text: &str, target: &str, metric: &str) -> Result<String, Error> {
    let tree = parse_demo_tree(text)?;
    let n = tree.vertex_count() as u64;
    let splits = edge_splits(&tree);
    let mut records = Vec::new();
    sweep_all(&tree, &splits, |r| records.push(r));
    let index = build_index(records, n)?;
    let metric: Metric = metric.parse()?;
    let target = parse_rational(target)?;
    let result = closest(&index, target, metric)?;

    let payload = json!({
        "metric": match metric { Metric::Dprime => "dprime", Metric::Adprime => "adprime" },
        "deviation": {
            "num": result.deviation.numer().to_string(),
            "den": result.deviation.denom().to_string(),
            "decimal": format_decimal(&result.deviation, 12),
        },
        "records": result
            .records
            .iter()
            .map(|r| record_json(&tree, r, n))
            .collect::<Vec<_>>(),
    });
    Ok(payload.to_string())
}

/// Edge-list text for a generated tree: path|star|caterpillar|random.
#[wasm_bindgen]
pub fn generate_tree(kind: &str, n: u32, seed: u64) -> Result<String, JsError> {
    generate_impl(kind, n as u64, seed).map_err(into_js)
}

/// Full analysis of an edge-list text: metadata, a radial layout, and
/// one record per inset edge, as JSON.
#[wasm_bindgen]
pub fn analyze(text: &str) -> Result<String, JsError> {
    analyze_impl(text).map_err(into_js)
}

/// The inset edges whose dprime/adprime lies closest to `target`
/// (a rational like `7`, `1/2`, or `0.35`), as JSON.
#[wasm_bindgen]
pub fn query_closest(text: &str, target: &str, metric: &str) -> Result<String, JsError> {
    query_closest_impl(text, target, metric).map_err(into_js)
}

fn into_js(err: Error) -> JsError {
    JsError::new(&err.to_string())
}
