//! JSON and DOT formats. Rationals are written as canonical `"p/q"` or
//! integer strings and read from strings or JSON integers.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::complex::{PolyComplex, SkeletonGraph};
use crate::error::{Error, Result};
use crate::flow::{Edge, MetricExtension, MinMaxMode, MinMaxReport, Multiflow, Network};
use crate::geometry::{ExtPoint, Polyline};
use crate::metric::{DirectedDistance, GroundSet};
use crate::rank::RankCertificate;
use crate::rational::{format, serde_str::from_json, Rational};
use crate::treereal::{OrientedTree, Realization, SplitTerm};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| parse_err(format!("{what} must hold strings"))))
        .collect()
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|i| i as usize).ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format(r))
}

/// `{"labels": [...], "matrix": [["0","1/2",...],...]}`
pub fn distance_to_json(mu: &DirectedDistance) -> Value {
    json!({
        "labels": mu.labels(),
        "matrix": mu.rows().iter().map(|r| r.iter().map(rational_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn distance_from_json(v: &Value) -> Result<DirectedDistance> {
    let rows = array(field(v, "matrix")?, "matrix")?;
    let matrix: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(from_json).collect())
        .collect::<Result<_>>()?;
    match v.get("labels") {
        Some(l) => DirectedDistance::new(string_list(l, "labels")?, matrix),
        None => DirectedDistance::with_default_labels(matrix),
    }
}

pub fn read_distance(text: &str) -> Result<DirectedDistance> {
    distance_from_json(&parse_json(text)?)
}

fn labelled(labels: &[String], values: &[Rational]) -> Value {
    let mut m = Map::new();
    for (l, x) in labels.iter().zip(values) {
        m.insert(l.clone(), rational_json(x));
    }
    Value::Object(m)
}

/// `{"col": {label: "p/q", ...}, "row": {...}}`
pub fn point_to_json(ground: &GroundSet, p: &ExtPoint) -> Value {
    json!({ "col": labelled(ground.labels(), &p.col), "row": labelled(ground.labels(), &p.row) })
}

pub fn point_from_json(ground: &GroundSet, v: &Value) -> Result<ExtPoint> {
    let side = |key: &str| -> Result<Vec<Rational>> {
        let obj = field(v, key)?.as_object().ok_or_else(|| parse_err(format!("{key} must be an object")))?;
        if obj.len() != ground.len() {
            return Err(Error::LengthMismatch(obj.len(), ground.len()));
        }
        for k in obj.keys() {
            ground.index_of(k)?;
        }
        ground.labels().iter().map(|l| from_json(&obj[l])).collect()
    };
    Ok(ExtPoint { col: side("col")?, row: side("row")? })
}

pub fn polyline_to_json(ground: &GroundSet, line: &Polyline) -> Value {
    json!({
        "points": line.points.iter().map(|p| point_to_json(ground, p)).collect::<Vec<_>>(),
        "steps": line.steps.iter().map(rational_json).collect::<Vec<_>>(),
        "total": rational_json(&line.total),
    })
}

fn node_name(ground: &GroundSet, node: usize) -> String {
    let n = ground.len();
    if node < n {
        format!("{}^c", ground.label(node))
    } else {
        format!("{}^r", ground.label(node - n))
    }
}

pub fn complex_to_json(ground: &GroundSet, c: &PolyComplex) -> Value {
    let faces: Vec<Value> = c
        .faces
        .iter()
        .map(|f| {
            json!({
                "dim": f.dim,
                "vertices": f.vertices,
                "bounded": f.bounded,
                "maximal": f.maximal,
                "edges": f.edges.iter().map(|&(s, t)| [ground.label(s), ground.label(t)]).collect::<Vec<_>>(),
                "zeros": f.zeros.iter().map(|&z| node_name(ground, z)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "kind": c.kind.name(),
        "dim": c.dim(),
        "f_vector": c.f_vector(),
        "vertices": c.vertices.iter().map(|p| point_to_json(ground, p)).collect::<Vec<_>>(),
        "faces": faces,
        "incidence": c.incidence,
    })
}

fn point_label(p: &ExtPoint) -> String {
    let f = |v: &[Rational]| v.iter().map(format).collect::<Vec<_>>().join(",");
    format!("({} | {})", f(&p.col), f(&p.row))
}

pub fn skeleton_to_dot(g: &SkeletonGraph) -> String {
    let mut out = String::from("digraph skeleton {\n");
    for (i, p) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", point_label(p));
    }
    for e in &g.edges {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.tail, e.head, format(&e.length));
    }
    out.push_str("}\n");
    out
}

pub fn realization_to_json(r: &Realization) -> Value {
    let mut subtrees = Map::new();
    for (s, f) in r.subtrees.iter().enumerate() {
        subtrees.insert(r.labels.label(s).to_string(), json!(f));
    }
    json!({
        "labels": r.labels.labels(),
        "vertices": r.tree.num_vertices(),
        "edges": r.tree.edges().iter().zip(&r.lengths)
            .map(|(&(t, h), l)| json!({"tail": t, "head": h, "length": rational_json(l)}))
            .collect::<Vec<_>>(),
        "subtrees": subtrees,
    })
}

pub fn realization_from_json(v: &Value) -> Result<Realization> {
    let labels = string_list(field(v, "labels")?, "labels")?;
    let m = index(field(v, "vertices")?, "vertices")?;
    let mut edges = Vec::new();
    let mut lengths = Vec::new();
    for e in array(field(v, "edges")?, "edges")? {
        edges.push((index(field(e, "tail")?, "tail")?, index(field(e, "head")?, "head")?));
        lengths.push(from_json(field(e, "length")?)?);
    }
    let subs = field(v, "subtrees")?.as_object().ok_or_else(|| parse_err("subtrees must be an object"))?;
    let subtrees = labels
        .iter()
        .map(|l| {
            let f = subs.get(l).ok_or_else(|| Error::EmptySubtree(l.clone()))?;
            array(f, "subtree")?.iter().map(|x| index(x, "subtree vertex")).collect()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Realization::new(OrientedTree::new(m, edges)?, lengths, labels, subtrees)
}

const PALETTE: [&str; 8] =
    ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999"];

/// Tree with each vertex listing and colored by the subtrees containing it.
pub fn realization_to_dot(r: &Realization) -> String {
    let mut out = String::from("digraph realization {\n  node [style=filled];\n");
    for v in 0..r.tree.num_vertices() {
        let owners: Vec<usize> = (0..r.n()).filter(|&s| r.subtrees[s].contains(&v)).collect();
        let names: Vec<&str> = owners.iter().map(|&s| r.labels.label(s)).collect();
        let colors: Vec<&str> = owners.iter().map(|&s| PALETTE[s % PALETTE.len()]).collect();
        let fill = if colors.is_empty() { "white".to_string() } else { colors.join(":") };
        let style = if colors.len() > 1 { ", style=wedged" } else { "" };
        let _ = writeln!(out, "  v{v} [label=\"{v} {{{}}}\", fillcolor=\"{fill}\"{style}];", names.join(","));
    }
    for (&(t, h), l) in r.tree.edges().iter().zip(&r.lengths) {
        let _ = writeln!(out, "  v{t} -> v{h} [label=\"{}\"];", format(l));
    }
    out.push_str("}\n");
    out
}

pub fn splits_to_json(ground: &GroundSet, terms: &[SplitTerm]) -> Value {
    let names = |v: &[usize]| v.iter().map(|&s| ground.label(s).to_string()).collect::<Vec<_>>();
    Value::Array(
        terms
            .iter()
            .map(|t| json!({"a": names(&t.a), "b": names(&t.b), "coeff": rational_json(&t.coeff)}))
            .collect(),
    )
}

fn vertex_ref(ground: &GroundSet, v: &Value) -> Result<usize> {
    match v {
        Value::String(s) => ground.index_of(s),
        Value::Number(_) => {
            let i = index(v, "vertex")?;
            ground.check_index(i)?;
            Ok(i)
        }
        _ => Err(parse_err("vertex reference must be a name or an index")),
    }
}

/// `{"vertices":[...], "edges":[{"tail":..,"head":..,"cap":k}], "terminals":[...]}`
/// with endpoints and terminals given by name or index.
pub fn network_from_json(v: &Value) -> Result<Network> {
    let names = string_list(field(v, "vertices")?, "vertices")?;
    let ground = GroundSet::new(names.clone())?;
    let edges = array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| {
            Ok(Edge {
                tail: vertex_ref(&ground, field(e, "tail")?)?,
                head: vertex_ref(&ground, field(e, "head")?)?,
                cap: field(e, "cap")?.as_u64().ok_or_else(|| parse_err("cap must be a nonnegative integer"))?,
            })
        })
        .collect::<Result<_>>()?;
    let terminals = array(field(v, "terminals")?, "terminals")?
        .iter()
        .map(|t| vertex_ref(&ground, t))
        .collect::<Result<_>>()?;
    Network::new(names, edges, terminals)
}

pub fn network_to_json(net: &Network) -> Value {
    let g = net.vertices();
    json!({
        "vertices": g.labels(),
        "edges": net.edges().iter()
            .map(|e| json!({"tail": g.label(e.tail), "head": g.label(e.head), "cap": e.cap}))
            .collect::<Vec<_>>(),
        "terminals": net.terminals().iter().map(|&t| g.label(t)).collect::<Vec<_>>(),
    })
}

pub fn flow_to_json(net: &Network, flow: &Multiflow) -> Value {
    let g = net.vertices();
    Value::Array(
        flow.paths
            .iter()
            .zip(&flow.values)
            .map(|(p, x)| {
                json!({
                    "path": p.vertices.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                    "value": rational_json(x),
                })
            })
            .collect(),
    )
}

pub fn extension_to_json(ext: &MetricExtension) -> Value {
    distance_to_json(&ext.d)
}

pub fn minmax_to_json(net: &Network, r: &MinMaxReport) -> Value {
    let mut checks = Map::new();
    for (name, ok) in &r.checks {
        checks.insert(name.to_string(), Value::Bool(*ok));
    }
    json!({
        "mode": match r.mode { MinMaxMode::T => "T", MinMaxMode::Q => "Q" },
        "max": rational_json(&r.max),
        "min": rational_json(&r.min),
        "equal": r.equal,
        "ok": r.ok(),
        "checks": checks,
        "flow": flow_to_json(net, &r.flow),
        "extension": extension_to_json(&r.extension),
    })
}

pub fn rank_certificate_to_json(rows: &GroundSet, cols: &GroundSet, c: &RankCertificate) -> Value {
    json!({
        "rows": c.rows.iter().map(|&i| rows.label(i)).collect::<Vec<_>>(),
        "cols": c.cols.iter().map(|&j| cols.label(j)).collect::<Vec<_>>(),
        "matching": c.matching.iter().map(|&(i, j)| [rows.label(i), cols.label(j)]).collect::<Vec<_>>(),
        "size": c.value,
    })
}
