//! The lattice of fully invariant subgroups, found by brute force and labelled
//! by admissible indicators.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::valuation;
use crate::error::{Error, Result};
use crate::group::{fi_form_name, GroupTable, Subgroup};
use crate::indicator::{enumerate_admissible, indicator_subgroup, Indicator};
use crate::Budget;

/// The smallest fully invariant subgroup containing `x`, i.e. the orbit `xE`.
pub fn fi_closure(t: &GroupTable, x: usize) -> Subgroup {
    t.span(t.elementary_images(x))
}

/// `α_i` = least height met in the projection of `H` onto `B_i`, checked by
/// regenerating `⊕ p^{α_i} B_i`.
pub fn canonical_fi_form(t: &GroupTable, h: &Subgroup) -> Result<Vec<u32>> {
    if !t.is_fully_invariant(h) {
        return Err(Error::NotFullyInvariant);
    }
    let g = t.spec();
    let blocks = g.coord_blocks();
    let mut alpha: Vec<u32> = g.components().iter().map(|c| c.exponent).collect();
    for x in h.indices() {
        for (c, &b) in blocks.iter().enumerate() {
            let d = t.digit(x, c);
            if d != 0 {
                alpha[b] = alpha[b].min(valuation(d, g.p()));
            }
        }
    }
    if &t.from_fi_form(&alpha)? != h {
        return Err(Error::CanonicalFormMismatch { alpha });
    }
    Ok(alpha)
}

#[derive(Clone, Debug)]
pub struct FiLattice {
    /// Sorted by order, then element set; node ids are positions here.
    nodes: Vec<Subgroup>,
    alpha: Vec<Vec<u32>>,
    hasse_edges: Vec<(usize, usize)>,
    sigma_labels: Vec<Vec<Indicator>>,
    /// Admissible indicators whose subgroup is not a node (should be empty).
    unmatched: Vec<Indicator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub nodes: usize,
    pub indicator_subgroups: usize,
    /// Node ids carrying no indicator label.
    pub unlabelled: Vec<usize>,
    pub unmatched: Vec<Indicator>,
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        self.unlabelled.is_empty() && self.unmatched.is_empty()
    }
}

impl FiLattice {
    /// Principal closures, then the sum-closure fixpoint.
    pub fn enumerate(t: &GroupTable, budget: &Budget) -> Result<Self> {
        let principal: HashSet<Subgroup> = t
            .indices()
            .into_par_iter()
            .map(|x| fi_closure(t, x))
            .collect();
        let mut principal: Vec<Subgroup> = principal.into_iter().collect();
        principal.sort();

        let mut seen: HashSet<Subgroup> = principal.iter().cloned().collect();
        let mut frontier = principal.clone();
        while !frontier.is_empty() {
            let found: HashSet<Subgroup> = frontier
                .par_iter()
                .flat_map_iter(|h| {
                    principal
                        .iter()
                        .filter(|q| !q.leq(h).expect("same group"))
                        .map(|q| t.sum(h, q).expect("same group"))
                        .collect::<Vec<_>>()
                })
                .collect();
            frontier = found.into_iter().filter(|h| !seen.contains(h)).collect();
            frontier.sort();
            seen.extend(frontier.iter().cloned());
        }
        let mut nodes: Vec<Subgroup> = seen.into_iter().collect();
        nodes.sort();

        let alpha = nodes
            .iter()
            .map(|h| canonical_fi_form(t, h))
            .collect::<Result<Vec<_>>>()?;
        for (h, a) in nodes.iter_mut().zip(&alpha) {
            h.fi_form = Some(a.clone());
        }

        let index: HashMap<&Subgroup, usize> =
            nodes.iter().enumerate().map(|(i, h)| (h, i)).collect();
        let mut sigma_labels = vec![Vec::new(); nodes.len()];
        let mut unmatched = Vec::new();
        let sigmas = enumerate_admissible(t.spec(), budget)?;
        let subgroups: Vec<Subgroup> = sigmas
            .par_iter()
            .map(|s| indicator_subgroup(t, s))
            .collect();
        for (s, h) in sigmas.into_iter().zip(&subgroups) {
            match index.get(h) {
                Some(&i) => sigma_labels[i].push(s),
                None => unmatched.push(s),
            }
        }
        let hasse_edges = hasse(&nodes);
        Ok(Self {
            nodes,
            alpha,
            hasse_edges,
            sigma_labels,
            unmatched,
        })
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn alpha(&self, id: usize) -> &[u32] {
        &self.alpha[id]
    }

    pub fn sigma_labels(&self, id: usize) -> &[Indicator] {
        &self.sigma_labels[id]
    }

    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse_edges
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.nodes.binary_search(h).ok()
    }

    pub fn coverage(&self) -> Coverage {
        Coverage {
            nodes: self.nodes.len(),
            indicator_subgroups: self.sigma_labels.iter().filter(|l| !l.is_empty()).count(),
            unlabelled: (0..self.nodes.len())
                .filter(|&i| self.sigma_labels[i].is_empty())
                .collect(),
            unmatched: self.unmatched.clone(),
        }
    }

    /// Strict containment between every pair of nodes.
    fn strictly_below(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        (0..n)
            .map(|i| {
                (i + 1..n)
                    .filter(|&j| self.nodes[i].leq(&self.nodes[j]).expect("same group"))
                    .collect()
            })
            .collect()
    }

    /// Longest chain (in nodes) and widest antichain.
    pub fn stats(&self) -> (usize, usize) {
        let n = self.nodes.len();
        if n == 0 {
            return (0, 0);
        }
        let above = self.strictly_below();
        let mut chain = vec![1usize; n];
        for i in (0..n).rev() {
            for &j in &above[i] {
                chain[i] = chain[i].max(chain[j] + 1);
            }
        }
        let longest = chain.into_iter().max().unwrap_or(0);
        (longest, n - max_matching(n, &above))
    }

    pub fn export(&self, t: &GroupTable, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(t),
            ExportFormat::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("plain data") + "\n"
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let sigmas: Vec<&[u32]> =
                    self.sigma_labels[i].iter().map(|s| s.entries()).collect();
                serde_json::json!({
                    "id": i,
                    "alpha": self.alpha[i],
                    "sigmas": sigmas,
                    "order": h.order(),
                })
            })
            .collect();
        serde_json::json!({ "nodes": nodes, "edges": self.hasse_edges })
    }

    fn to_dot(&self, t: &GroupTable) -> String {
        let mut out = String::from("digraph fi_lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, h) in self.nodes.iter().enumerate() {
            let sigmas: Vec<String> = self.sigma_labels[i].iter().map(|s| s.to_string()).collect();
            let sig = if sigmas.is_empty() {
                "no indicator".to_string()
            } else {
                sigmas.join(" ")
            };
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}\\n|H|={}\\n{}\"];",
                fi_form_name(t.spec(), &self.alpha[i]),
                h.order(),
                sig
            );
        }
        for (a, b) in &self.hasse_edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn hasse(nodes: &[Subgroup]) -> Vec<(usize, usize)> {
    let n = nodes.len();
    let leq = |i: usize, j: usize| nodes[i].leq(&nodes[j]).expect("same group");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if leq(i, j) && !(i + 1..j).any(|k| leq(i, k) && leq(k, j)) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Maximum bipartite matching (left copy to right copy) by augmenting paths.
fn max_matching(n: usize, adj: &[Vec<usize>]) -> usize {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        mate: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if mate[v].is_none_or(|w| augment(w, adj, seen, mate)) {
                    mate[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut mate = vec![None; n];
    (0..n)
        .filter(|&u| augment(u, adj, &mut vec![false; n], &mut mate))
        .count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Self::Dot),
            "json" => Ok(Self::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}
