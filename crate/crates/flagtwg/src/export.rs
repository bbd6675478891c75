//! DOT and JSON renderings of position posets and weight graphs.

use serde::Serialize;
use serde_json::{json, Value};

use crate::ideals::Ideal;
use crate::twg::WeightGraph;
use crate::weyl::{Family, PositionPoset, WeylElement};

/// One-line notation; type A elements print without separators ("231").
pub fn element_label(w: &WeylElement) -> String {
    match w.family() {
        Family::A if w.images().iter().all(|&x| x < 10) => w.images().iter().map(|x| x.to_string()).collect(),
        _ => w.to_string(),
    }
}

/// Label of the i-th coset. Cosets of the Lagrangian parabolic in type C
/// are determined by the signs of w^-1(1), ..., w^-1(n) and print as a
/// sign tuple; everything else prints its minimal representative.
pub fn coset_label(poset: &PositionPoset, i: usize) -> String {
    let sys = poset.system();
    let w = &poset.element(i).min_rep;
    let lagrangian = sys.family() == Family::C && poset.eta().iter().eq([sys.rank()].iter());
    if lagrangian && poset.theta().len() == sys.rank() {
        let inv = w.inverse();
        let signs: Vec<&str> = (1..=sys.rank() as i32).map(|k| if inv.apply(k) > 0 { "+" } else { "-" }).collect();
        format!("({})", signs.join(","))
    } else {
        element_label(w)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    // serde_json's default map is a BTreeMap, so a round trip sorts keys
    let v: Value = serde_json::to_value(value).expect("serialisable");
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

/// Hasse diagram drawn bottom to top. Members of `ideal`, if any, are
/// filled.
pub fn hasse_dot(poset: &PositionPoset, ideal: Option<&Ideal<'_>>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for i in 0..poset.len() {
        let style = match ideal {
            Some(id) if id.contains(i) => ", style=filled, fillcolor=lightgray, shape=box",
            _ => "",
        };
        out.push_str(&format!("  n{i} [label={}{style}];\n", quote(&coset_label(poset, i))));
    }
    for (a, b) in poset.covers() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn hasse_json(poset: &PositionPoset) -> Value {
    let elements: Vec<Value> = poset
        .elements()
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "label": coset_label(poset, i), "images": c.min_rep.images(), "length": c.min_rep.length() }))
        .collect();
    let covers: Vec<[usize; 2]> = poset.covers().into_iter().map(|(a, b)| [a, b]).collect();
    json!({
        "family": poset.system().family().to_string(),
        "rank": poset.system().rank(),
        "theta": poset.theta(),
        "eta": poset.eta(),
        "elements": elements,
        "covers": covers,
    })
}

/// Round vertices are circles labelled by sign, square vertices boxes
/// labelled by Euler number, edges labelled by weight.
pub fn weight_graph_dot(g: &WeightGraph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in g.round() {
        out.push_str(&format!("  {} [shape=circle, label={}];\n", quote(&v.id), quote(&v.sign.to_string())));
    }
    for v in g.square() {
        out.push_str(&format!("  {} [shape=box, label={}];\n", quote(&v.id), quote(&v.euler.to_string())));
    }
    for e in g.edges() {
        out.push_str(&format!("  {} -- {} [label={}];\n", quote(&e.a), quote(&e.b), quote(&e.weight.to_string())));
    }
    out.push_str("}\n");
    out
}
