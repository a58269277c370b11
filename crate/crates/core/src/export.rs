//! Text renderings: DOT, JSON, CSV and OFF.

use std::fmt::Write;

use serde::Serialize;
use serde_json::json;

use crate::braid::PositiveBraid;
use crate::complex::SigmaComplex;
use crate::counting::CountReport;
use crate::tilt::{predicted_dims, TiltingPoset};

/// `"v|w"` for an interval element.
pub fn node_label(x: &PositiveBraid) -> String {
    let (v, w) = x.pair_form().expect("poset nodes lie in the interval");
    format!("{v}|{w}")
}

pub fn poset_dot(poset: &TiltingPoset) -> String {
    let labels: Vec<String> = poset.nodes().iter().map(node_label).collect();
    let mut out = String::from("digraph tilt {\n");
    for l in &labels {
        writeln!(out, "  \"{l}\";").unwrap();
    }
    for a in poset.arrows() {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", labels[a.from], labels[a.to], a.slot).unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct PosetNode {
    id: usize,
    v: String,
    w: String,
    dims: Vec<Vec<i64>>,
}

pub fn poset_json(poset: &TiltingPoset) -> String {
    let nodes: Vec<PosetNode> = poset
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, x)| {
            let (v, w) = x.pair_form().expect("poset nodes lie in the interval");
            PosetNode { id, v: v.to_string(), w: w.to_string(), dims: predicted_dims(x) }
        })
        .collect();
    let value = json!({ "nodes": nodes, "arrows": poset.arrows() });
    pretty(&value)
}

/// One row per arrow: `from,to,slot` with node labels.
pub fn poset_csv(poset: &TiltingPoset) -> String {
    let mut out = String::from("from,to,slot\n");
    for a in poset.arrows() {
        let (f, t) = (node_label(&poset.nodes()[a.from]), node_label(&poset.nodes()[a.to]));
        writeln!(out, "{f},{t},{}", a.slot).unwrap();
    }
    out
}

pub fn complex_json(sigma: &SigmaComplex) -> String {
    let value = json!({
        "vertices": sigma.vertices(),
        "facets": sigma.facets(),
        "boundary_facets": sigma.boundary().facets,
    });
    pretty(&value)
}

/// OFF face list. Vertices carry placeholder coordinates `(slot, size, 0)`.
pub fn complex_off(sigma: &SigmaComplex) -> String {
    let mut out = String::from("OFF\n");
    writeln!(out, "{} {} 0", sigma.vertices().len(), sigma.facets().len()).unwrap();
    for v in sigma.vertices() {
        writeln!(out, "{} {} 0", v.slot, v.size).unwrap();
    }
    for f in sigma.facets() {
        let ids: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", f.len(), ids.join(" ")).unwrap();
    }
    out
}

/// One row per vertex: `id,slot,size`.
pub fn complex_csv(sigma: &SigmaComplex) -> String {
    let mut out = String::from("id,slot,size\n");
    for v in sigma.vertices() {
        writeln!(out, "{},{},{}", v.id, v.slot, v.size).unwrap();
    }
    out
}

/// The table `n,c_n,t_n`, then the table of `p_{n,i}` and `p_n`, separated
/// by a blank line. Missing entries are `-`.
pub fn counts_csv(reports: &[CountReport]) -> String {
    let mut out = String::from("n,c_n,t_n\n");
    for r in reports {
        writeln!(out, "{},{},{}", r.n, r.c, r.t_recursive).unwrap();
    }
    let width = reports.iter().filter(|r| r.p.is_some()).map(|r| r.n).max().unwrap_or(0);
    if width == 0 {
        return out;
    }
    out.push('\n');
    let header: Vec<String> = (1..=width).map(|i| format!("p_n{i}")).collect();
    writeln!(out, "n,{},p_n", header.join(",")).unwrap();
    for r in reports {
        let Some(p) = &r.p else { continue };
        let cells: Vec<String> = (0..width).map(|i| p.get(i).map_or("-".to_string(), u64::to_string)).collect();
        writeln!(out, "{},{},{}", r.n, cells.join(","), r.p_total.unwrap_or(0)).unwrap();
    }
    out
}

pub fn counts_json(reports: &[CountReport]) -> String {
    pretty(&reports)
}

pub fn pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
