//! Plain-text comb files: a header with rank and gluing mode, one line per
//! component (id, role, degrees), one line per edge (parent, child). The
//! emitter writes the canonical form the parser accepts.

use super::{build_comb, CombSpec, GluingMode, Tooth};
use crate::error::CombError;
use crate::splitcalc::SplitType;
use std::collections::BTreeMap;

fn parse_err(line: usize, msg: impl Into<String>) -> CombError {
    CombError::Parse(format!("line {line}: {}", msg.into()))
}

/// Parses the comb text format.
pub fn parse_comb(text: &str) -> Result<CombSpec, CombError> {
    let mut mode = None;
    let mut declared_rank = None;
    let mut components: BTreeMap<String, (String, SplitType)> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("rank") => {
                let value = tokens
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing rank"))?;
                declared_rank = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| parse_err(line_no, "bad rank"))?,
                );
            }
            Some("mode") => {
                mode = Some(match tokens.next() {
                    Some("general") => GluingMode::General,
                    Some("explicit") => GluingMode::Explicit,
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!("mode must be general or explicit, got {other:?}"),
                        ))
                    }
                });
            }
            Some("component") => {
                let id = tokens
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing component id"))?
                    .to_string();
                let role = tokens
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing component role"))?
                    .to_string();
                if role != "base" && role != "tail" {
                    return Err(parse_err(
                        line_no,
                        format!("role must be base or tail, got {role}"),
                    ));
                }
                let degrees = tokens
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing degree list"))?;
                let degrees: Result<Vec<i64>, _> = degrees
                    .split(',')
                    .map(|d| d.trim().parse::<i64>())
                    .collect();
                let degrees = degrees.map_err(|_| parse_err(line_no, "bad degree list"))?;
                let split =
                    SplitType::new(degrees).map_err(|e| parse_err(line_no, e.to_string()))?;
                if components.insert(id.clone(), (role, split)).is_some() {
                    return Err(parse_err(line_no, format!("duplicate component id {id}")));
                }
                order.push(id);
            }
            Some("edge") => {
                let a = tokens
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing edge end"))?;
                let b = tokens
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing edge end"))?;
                edges.push((a.to_string(), b.to_string()));
            }
            Some(other) => return Err(parse_err(line_no, format!("unknown directive {other}"))),
            None => unreachable!("blank lines are skipped"),
        }
    }

    let mode = mode.unwrap_or(GluingMode::General);
    let base_ids: Vec<&String> = order
        .iter()
        .filter(|id| components[*id].0 == "base")
        .collect();
    if base_ids.len() != 1 {
        return Err(CombError::Parse(format!(
            "expected exactly one base component, found {}",
            base_ids.len()
        )));
    }
    let base_id = base_ids[0].clone();
    let base = components[&base_id].1.clone();
    if let Some(r) = declared_rank {
        if r != base.rank() {
            return Err(CombError::Parse(format!(
                "declared rank {r} does not match base rank {}",
                base.rank()
            )));
        }
    }

    // Undirected adjacency, oriented by search from the base.
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in &edges {
        if !components.contains_key(a) || !components.contains_key(b) {
            return Err(CombError::Parse(format!(
                "edge references unknown component {a} or {b}"
            )));
        }
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut teeth = Vec::new();
    let mut visited: BTreeMap<&str, bool> =
        components.keys().map(|k| (k.as_str(), false)).collect();
    *visited.get_mut(base_id.as_str()).unwrap() = true;
    for root in adj.get(base_id.as_str()).cloned().unwrap_or_default() {
        if visited[root] {
            return Err(CombError::CyclicTopology);
        }
        // Collect the tooth subtree rooted here.
        let mut local_ids = vec![root];
        let mut local_edges = Vec::new();
        *visited.get_mut(root).unwrap() = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let v_local = local_ids.iter().position(|&x| x == v).unwrap();
            for &w in adj.get(v).map(|v| v.as_slice()).unwrap_or(&[]) {
                if w == base_id.as_str() {
                    if v != root {
                        return Err(CombError::HypothesisViolation(
                            "a tooth meets the base in more than one point".to_string(),
                        ));
                    }
                    continue;
                }
                if visited[w] {
                    continue;
                }
                *visited.get_mut(w).unwrap() = true;
                local_ids.push(w);
                local_edges.push((v_local, local_ids.len() - 1));
                stack.push(w);
            }
        }
        let comps: Vec<SplitType> = local_ids
            .iter()
            .map(|id| components[*id].1.clone())
            .collect();
        teeth.push(Tooth {
            components: comps,
            edges: local_edges,
        });
    }
    if let Some((id, _)) = visited.iter().find(|(_, &v)| !v) {
        return Err(CombError::Parse(format!(
            "component {id} is not connected to the base"
        )));
    }
    build_comb(base, teeth, mode)
}

/// Canonical text form; `parse_comb` round-trips it.
pub fn emit_comb(comb: &CombSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("rank {}\n", comb.rank()));
    let mode = match comb.mode() {
        GluingMode::General => "general",
        GluingMode::Explicit => "explicit",
    };
    out.push_str(&format!("mode {mode}\n"));
    let fmt_degrees = |s: &SplitType| {
        s.degrees()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    out.push_str(&format!("component b base {}\n", fmt_degrees(comb.base())));
    for (i, tooth) in comb.teeth().iter().enumerate() {
        for (j, c) in tooth.components.iter().enumerate() {
            out.push_str(&format!("component t{i}_{j} tail {}\n", fmt_degrees(c)));
        }
    }
    for (i, tooth) in comb.teeth().iter().enumerate() {
        out.push_str(&format!("edge b t{i}_0\n"));
        for &(a, bb) in &tooth.edges {
            out.push_str(&format!("edge t{i}_{a} t{i}_{bb}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = "\
# a comb
rank 2
mode general
component b base 0,0
component t0_0 tail 0,-1
component t1_0 tail 0,-1
component t1_1 tail -1,-1
edge b t0_0
edge b t1_0
edge t1_0 t1_1
";
        let comb = parse_comb(text).unwrap();
        assert_eq!(comb.teeth().len(), 2);
        assert_eq!(comb.teeth()[1].components.len(), 2);
        let emitted = emit_comb(&comb);
        assert_eq!(parse_comb(&emitted).unwrap(), comb);
    }

    #[test]
    fn parse_rejects_bad_files() {
        assert!(parse_comb("component x tail 1,1\n").is_err());
        assert!(parse_comb("component b base 1,1\ncomponent c base 0,0\n").is_err());
        assert!(parse_comb("rank 3\ncomponent b base 1,1\n").is_err());
        assert!(parse_comb("mode sideways\ncomponent b base 1,1\n").is_err());
        // Disconnected tail.
        assert!(parse_comb("component b base 1,1\ncomponent t tail 1,1\n").is_err());
        // A tooth meeting the base twice.
        let text = "\
component b base 0,0
component x tail 0,0
component y tail 0,0
edge b x
edge x y
edge y b
";
        assert!(parse_comb(text).is_err());
    }
}
