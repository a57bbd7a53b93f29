//! One-line text format for labeled fatgraphs.
//!
//! `tau0=(1 2 3)(4 5 6); tau1=(1 4)(2 5)(3 6); labels=[1,2,3]`
//!
//! Darts are named by positive integers; cycles start at their smallest dart
//! and are listed by smallest dart; `labels` gives the boundary label of each
//! tau2-cycle in min-dart order. Writing then reading then writing again is
//! byte-identical.

use super::{cycles_of, tau2_of, FatGraph};
use crate::error::{Error, Result};

/// Renders the canonical one-line form.
pub fn write_fatgraph(graph: &FatGraph) -> String {
    let cycles_str = |perm: &[usize]| -> String {
        cycles_of(perm)
            .iter()
            .map(|cycle| {
                let names: Vec<String> = cycle.iter().map(|d| (d + 1).to_string()).collect();
                format!("({})", names.join(" "))
            })
            .collect()
    };
    let boundary = cycles_of(&tau2_of(graph.tau0_perm(), graph.tau1_perm()));
    let labels: Vec<String> = boundary
        .iter()
        .map(|cycle| graph.label_of_dart(cycle[0]).to_string())
        .collect();
    format!(
        "tau0={}; tau1={}; labels=[{}]",
        cycles_str(graph.tau0_perm()),
        cycles_str(graph.tau1_perm()),
        labels.join(",")
    )
}

/// Parses the one-line form and validates the graph.
pub fn read_fatgraph(line: &str) -> Result<FatGraph> {
    let mut tau0_src = None;
    let mut tau1_src = None;
    let mut labels_src = None;
    for part in line.split(';') {
        let part = part.trim();
        if let Some(rest) = part.strip_prefix("tau0=") {
            tau0_src = Some(rest.trim());
        } else if let Some(rest) = part.strip_prefix("tau1=") {
            tau1_src = Some(rest.trim());
        } else if let Some(rest) = part.strip_prefix("labels=") {
            labels_src = Some(rest.trim());
        } else if !part.is_empty() {
            return Err(Error::Parse(format!("unexpected field {part:?}")));
        }
    }
    let (tau0_src, tau1_src, labels_src) = match (tau0_src, tau1_src, labels_src) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(Error::Parse(
                "fatgraph line needs tau0=, tau1= and labels= fields".into(),
            ))
        }
    };

    let cycles0 = parse_cycles(tau0_src)?;
    let cycles1 = parse_cycles(tau1_src)?;
    let n_darts = cycles0.iter().map(|c| c.len()).sum::<usize>();
    let tau0 = perm_from_cycles(&cycles0, n_darts)?;
    let tau1 = perm_from_cycles(&cycles1, n_darts)?;

    let labels_body = labels_src
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("labels must look like [1,2,3]".into()))?;
    let cycle_labels: Vec<usize> = if labels_body.trim().is_empty() {
        Vec::new()
    } else {
        labels_body
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad label {tok:?}")))
            })
            .collect::<Result<_>>()?
    };
    FatGraph::from_cycle_labels(tau0, tau1, &cycle_labels)
}

fn parse_cycles(src: &str) -> Result<Vec<Vec<usize>>> {
    let src = src.trim();
    if !src.starts_with('(') || !src.ends_with(')') {
        return Err(Error::Parse(format!("expected cycles, got {src:?}")));
    }
    let mut cycles = Vec::new();
    for chunk in src[1..src.len() - 1].split(")(") {
        let darts: Vec<usize> = chunk
            .split_whitespace()
            .map(|tok| {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad dart name {tok:?}")))?;
                if v == 0 {
                    return Err(Error::Parse("dart names are positive integers".into()));
                }
                Ok(v - 1)
            })
            .collect::<Result<_>>()?;
        if darts.is_empty() {
            return Err(Error::Parse("empty cycle".into()));
        }
        cycles.push(darts);
    }
    Ok(cycles)
}

fn perm_from_cycles(cycles: &[Vec<usize>], n_darts: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<Option<usize>> = vec![None; n_darts];
    for cycle in cycles {
        for (i, &d) in cycle.iter().enumerate() {
            let img = cycle[(i + 1) % cycle.len()];
            if d >= n_darts || img >= n_darts || perm[d].is_some() {
                return Err(Error::Parse("cycles do not form a permutation".into()));
            }
            perm[d] = Some(img);
        }
    }
    perm.into_iter()
        .enumerate()
        .map(|(d, v)| v.ok_or_else(|| Error::Parse(format!("dart {} missing", d + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        for graph in [
            planar_theta(),
            twisted_theta(),
            genus1_figure8(),
            planar_figure8(),
        ] {
            let line = write_fatgraph(&graph);
            let back = read_fatgraph(&line).unwrap();
            assert_eq!(back, graph);
            assert_eq!(write_fatgraph(&back), line);
        }
    }

    #[test]
    fn expected_shape() {
        assert_eq!(
            write_fatgraph(&twisted_theta()),
            "tau0=(1 2 3)(4 5 6); tau1=(1 4)(2 5)(3 6); labels=[1]"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(read_fatgraph("tau0=(1 2 3); labels=[1]").is_err());
        assert!(read_fatgraph("tau0=(1 2)(3); tau1=(1 3)(2 4); labels=[1]").is_err());
        assert!(read_fatgraph(
            "tau0=(1 2 3)(4 5 6); tau1=(1 4)(2 5)(3 6); labels=[1,2]"
        )
        .is_err());
    }
}
