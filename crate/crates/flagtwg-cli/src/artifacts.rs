//! The reproducible outputs checked against the golden directory, and the
//! JSON documents shared with the individual subcommands.

use std::collections::BTreeSet;

use flagtwg::dims::{census_rows, flag_dim, fullcases_table};
use flagtwg::export::{coset_label, hasse_dot, hasse_json, to_sorted_json, weight_graph_dot};
use flagtwg::ideals::{enumerate_balanced_ideals, minimal_anosov_type};
use flagtwg::sl2reps::Partition;
use flagtwg::twg::{classify_fiber, run_case, CaseResult, CircleGroup, FlagKind};
use flagtwg::weyl::{Family, PositionPoset, RootSubset, RootSystem};
use serde_json::{json, Value};

pub fn poset(family: Family, rank: usize, theta: Option<RootSubset>, eta: Option<RootSubset>) -> Result<PositionPoset, String> {
    let sys = RootSystem::new(family, rank).map_err(|e| e.to_string())?;
    let theta = theta.unwrap_or_else(|| sys.all_roots());
    let eta = eta.unwrap_or_else(|| sys.all_roots());
    PositionPoset::new(sys, &theta, &eta).map_err(|e| e.to_string())
}

pub fn ideals_json(p: &PositionPoset) -> Result<Value, String> {
    let found = enumerate_balanced_ideals(p).map_err(|e| e.to_string())?;
    let label = |i: &usize| coset_label(p, *i);
    let mut list = Vec::new();
    for ideal in &found {
        let theta_prime = minimal_anosov_type(ideal).map_err(|e| e.to_string())?;
        list.push(json!({
            "members": ideal.members().iter().map(label).collect::<Vec<_>>(),
            "generators": ideal.generators().iter().map(label).collect::<Vec<_>>(),
            "minimal_anosov_type": theta_prime,
        }));
    }
    Ok(json!({ "poset": hasse_json(p), "balanced_ideals": list }))
}

pub fn census_json(max_rank: usize) -> Result<Value, String> {
    let mut rows = Vec::new();
    for (group, list) in census_rows(max_rank) {
        let varieties: Vec<Value> = list
            .iter()
            .map(|d| Ok(json!({ "variety": d.variety_name(), "dim": flag_dim(d).map_err(|e| e.to_string())? })))
            .collect::<Result<_, String>>()?;
        rows.push(json!({ "group": group, "varieties": varieties }));
    }
    let table = fullcases_table().map_err(|e| e.to_string())?;
    Ok(json!({ "census": rows, "cases": table }))
}

/// The six circle actions, in order.
pub const CASES: [(&str, FlagKind, CircleGroup); 6] = [
    ("3", FlagKind::Full, CircleGroup::PSO2),
    ("2,1", FlagKind::Full, CircleGroup::SO2),
    ("4", FlagKind::Proj, CircleGroup::PSO2),
    ("2,2", FlagKind::Proj, CircleGroup::PSO2),
    ("4", FlagKind::Lag, CircleGroup::PSO2),
    ("2,1,1", FlagKind::Lag, CircleGroup::SO2),
];

pub fn case(p: &str, kind: FlagKind, group: CircleGroup) -> Result<CaseResult, String> {
    let p: Partition = p.parse().map_err(|e: flagtwg::sl2reps::Sl2Error| e.to_string())?;
    run_case(&p, kind, group).map_err(|e| e.to_string())
}

pub fn kind_name(k: FlagKind) -> &'static str {
    match k {
        FlagKind::Full => "full",
        FlagKind::Proj => "proj",
        FlagKind::Lag => "lag",
    }
}

pub fn group_name(g: CircleGroup) -> &'static str {
    match g {
        CircleGroup::SO2 => "so2",
        CircleGroup::PSO2 => "pso2",
    }
}

/// (file name, contents) for everything `reproduce` regenerates.
pub fn all() -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    let s3 = poset(Family::A, 2, None, None)?;
    out.push(("hasse_s3.dot".into(), hasse_dot(&s3, None)));
    out.push(("hasse_s3.json".into(), to_sorted_json(&hasse_json(&s3))));
    let sp4 = poset(Family::C, 2, None, Some(BTreeSet::from([2])))?;
    out.push(("hasse_sp4_eta2.dot".into(), hasse_dot(&sp4, None)));
    out.push(("hasse_sp4_eta2.json".into(), to_sorted_json(&hasse_json(&sp4))));

    let ideal_posets = [
        ("flag_c3", s3.clone()),
        ("cp3", poset(Family::A, 3, None, Some(BTreeSet::from([1])))?),
        ("lag_c4", sp4.clone()),
    ];
    let mut ideals = serde_json::Map::new();
    for (name, p) in &ideal_posets {
        ideals.insert(name.to_string(), ideals_json(p)?);
    }
    out.push(("ideals.json".into(), to_sorted_json(&Value::Object(ideals))));
    out.push(("census.json".into(), to_sorted_json(&census_json(4)?)));

    let mut summary = Vec::new();
    for (i, &(p, kind, group)) in CASES.iter().enumerate() {
        let c = case(p, kind, group)?;
        let stem = format!("case{}_{}_{}_{}", i + 1, p.replace(',', ""), kind_name(kind), group_name(group));
        out.push((format!("{stem}.json"), to_sorted_json(&c.fiber)));
        out.push((format!("{stem}.dot"), weight_graph_dot(&c.fiber, &stem)));
        let cls = classify_fiber(&c.fiber).map_err(|e| format!("{stem}: {e}"))?;
        summary.push(json!({
            "case": i + 1,
            "partition": p,
            "flag": kind_name(kind),
            "group": group_name(group),
            "euler_count": c.euler_count(),
            "model": cls.model,
            "diffeotype": cls.diffeotype,
        }));
    }
    out.push(("classification.json".into(), to_sorted_json(&summary)));
    Ok(out)
}

/// First differing line between two texts, 1-based.
pub fn first_difference(expected: &str, got: &str) -> Option<(usize, String, String)> {
    let (mut e, mut g) = (expected.lines(), got.lines());
    let mut n = 0;
    loop {
        n += 1;
        match (e.next(), g.next()) {
            (None, None) => return None,
            (a, b) if a == b => continue,
            (a, b) => {
                let show = |x: Option<&str>| x.map_or("<end of file>".to_string(), str::to_string);
                return Some((n, show(a), show(b)));
            }
        }
    }
}
