//! Whole-group summaries for the `analyze` and `endo` commands.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::endo::{find_dagger_collision, EndoRing};
use crate::error::Result;
use crate::group::{fi_form_name, fundamental_name, GroupSpec, GroupTable, Subgroup};
use crate::indicator::{enumerate_admissible, indicator_subgroup, Indicator};
use crate::lattice::{canonical_fi_form, FiLattice};
use crate::matrix::FundMatrix;
use crate::Budget;

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub indicator: Indicator,
    /// Realised as the indicator of some element.
    pub realizable: bool,
    /// `p^κG[p^n]` name when `G(σ)` is fundamental, with the least κ and then the largest n.
    pub fundamental: Option<String>,
    pub decomposition: String,
    pub alpha: Vec<u32>,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSummary {
    pub nodes: usize,
    pub hasse_edges: usize,
    pub longest_chain: usize,
    pub width: usize,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub group: GroupSpec,
    pub name: String,
    pub order: String,
    pub rank: u64,
    pub exponent: u32,
    pub ulm_invariants: Vec<u64>,
    pub admissible_count: usize,
    pub realizable_count: usize,
    /// Admissible indicators by number of finite entries.
    pub length_histogram: BTreeMap<usize, usize>,
    pub lattice: LatticeSummary,
    pub matrix: serde_json::Value,
    #[serde(skip)]
    matrix_text: String,
    pub table: Vec<TableRow>,
}

/// The fundamental name of `h`, if `h = p^κG[p^n]` for some κ < n.
pub fn fundamental_of(t: &GroupTable, h: &Subgroup) -> Option<String> {
    let e = t.spec().exponent();
    if h.is_trivial() {
        return Some("0".into());
    }
    (0..e)
        .flat_map(|k| (k + 1..=e).rev().map(move |n| (k, n)))
        .find(|&(k, n)| &t.fundamental(k, n) == h)
        .map(|(k, n)| fundamental_name(t.spec(), k, n))
}

pub fn analyze(g: &GroupSpec, budget: &Budget) -> Result<Analysis> {
    let t = GroupTable::new(g, budget)?;
    let lattice = FiLattice::enumerate(&t, budget)?;
    let matrix = FundMatrix::build(&t);
    let sigmas = enumerate_admissible(g, budget)?;
    let mut table = Vec::with_capacity(sigmas.len());
    for s in sigmas {
        let h = indicator_subgroup(&t, &s);
        let alpha = canonical_fi_form(&t, &h)?;
        table.push(TableRow {
            realizable: s.is_realizable(g),
            fundamental: fundamental_of(&t, &h),
            decomposition: fi_form_name(g, &alpha),
            alpha,
            order: h.order(),
            indicator: s,
        });
    }
    table.sort_by(|a, b| {
        (a.indicator.len(), a.indicator.entries()).cmp(&(b.indicator.len(), b.indicator.entries()))
    });
    let mut length_histogram = BTreeMap::new();
    for r in &table {
        *length_histogram.entry(r.indicator.len()).or_insert(0) += 1;
    }
    let (longest_chain, width) = lattice.stats();
    Ok(Analysis {
        group: g.clone(),
        name: g.to_string(),
        order: g.order_string(),
        rank: g.rank(),
        exponent: g.exponent(),
        ulm_invariants: g.ulm_invariants(),
        admissible_count: table.len(),
        realizable_count: table.iter().filter(|r| r.realizable).count(),
        length_histogram,
        lattice: LatticeSummary {
            nodes: lattice.len(),
            hasse_edges: lattice.hasse_edges().len(),
            longest_chain,
            width,
            complete: lattice.coverage().is_complete(),
        },
        matrix: matrix.to_json(&t),
        matrix_text: matrix.render_text(&t),
        table,
    })
}

impl Analysis {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let ulm: Vec<String> = self.ulm_invariants.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "group     {}", self.name);
        let _ = writeln!(out, "order     {}", self.order);
        let _ = writeln!(out, "rank      {}", self.rank);
        let _ = writeln!(out, "exponent  {}", self.exponent);
        let _ = writeln!(out, "ulm       [{}]", ulm.join(", "));
        let _ = writeln!(
            out,
            "indicators  {} admissible, {} realizable",
            self.admissible_count, self.realizable_count
        );
        let hist: Vec<String> = self
            .length_histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        let _ = writeln!(
            out,
            "admissible indicators by length  {{{}}}",
            hist.join(", ")
        );
        let l = &self.lattice;
        let _ = writeln!(
            out,
            "fully invariant subgroups  {} distinct, {} covering pairs, longest chain {}, width {}{}",
            l.nodes,
            l.hasse_edges,
            l.longest_chain,
            l.width,
            if l.complete { "" } else { " (indicator coverage incomplete)" }
        );
        out.push_str("\nfundamental matrix M(i,j) = p^jG[p^i]  (* marks homocyclic columns)\n");
        out.push_str(&self.matrix_text);
        out.push('\n');
        let rows: Vec<[String; 3]> = self
            .table
            .iter()
            .map(|r| {
                [
                    r.indicator.to_string(),
                    r.fundamental.clone().unwrap_or_else(|| "—".into()),
                    r.decomposition.clone(),
                ]
            })
            .collect();
        let head = ["Indicator", "FI Subgroup", "Ind. Decomp"];
        let w: Vec<usize> = (0..3)
            .map(|k| {
                rows.iter()
                    .map(|r| r[k].chars().count())
                    .chain([head[k].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: [&str; 3]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&w)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("{}\n", padded.join(" | ").trim_end())
        };
        out.push_str(&line(head));
        out.push_str(&format!(
            "{}\n",
            w.iter()
                .map(|&k| "-".repeat(k))
                .collect::<Vec<_>>()
                .join("-+-")
        ));
        for r in &rows {
            out.push_str(&line([&r[0], &r[1], &r[2]]));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvClassRow {
    pub subgroup: String,
    pub subgroup_order: usize,
    pub dagger_order: usize,
    /// Ideals with this image.
    pub class_size: usize,
    pub closed_members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndoSummary {
    pub group: GroupSpec,
    pub ring_order: usize,
    pub ideal_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideals_note: Option<String>,
    pub classes: Vec<InvClassRow>,
    pub collision: Option<serde_json::Value>,
}

pub fn endo_summary(g: &GroupSpec, budget: &Budget) -> Result<EndoSummary> {
    let t = GroupTable::new(g, budget)?;
    let ring = EndoRing::new(g, budget)?;
    let lattice = FiLattice::enumerate(&t, budget)?;
    let (ideals, note) = match ring.enumerate_ideals(budget) {
        Ok(i) => (Some(i), None),
        Err(e) if e.is_budget() => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let images: Option<Vec<Subgroup>> = ideals
        .as_ref()
        .map(|is| is.iter().map(|i| ring.dagger_ideal(&t, i)).collect());
    let mut classes = Vec::new();
    for (id, h) in lattice.nodes().iter().enumerate() {
        let d = ring.dagger_subgroup(&t, h)?;
        let (class_size, closed_members) = match (&ideals, &images) {
            (Some(is), Some(im)) => {
                let members: Vec<usize> = (0..is.len()).filter(|&k| &im[k] == h).collect();
                let closed = members.iter().filter(|&&k| is[k] == d).count();
                (members.len(), closed)
            }
            _ => (0, 0),
        };
        classes.push(InvClassRow {
            subgroup: fi_form_name(g, lattice.alpha(id)),
            subgroup_order: h.order(),
            dagger_order: d.order(),
            class_size,
            closed_members,
        });
    }
    let collision = match find_dagger_collision(&ring, &t, budget) {
        Ok(Some(c)) => Some(serde_json::json!({
            "source": c.source,
            "first": ring.ideal_to_json(&c.first),
            "second": ring.ideal_to_json(&c.second),
            "image": canonical_fi_form(&t, &c.image).map(|a| fi_form_name(g, &a)).unwrap_or_default(),
        })),
        _ => None,
    };
    Ok(EndoSummary {
        group: g.clone(),
        ring_order: ring.size(),
        ideal_count: ideals.as_ref().map(Vec::len),
        ideals_note: note,
        classes,
        collision,
    })
}

impl EndoSummary {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group  {}", self.group);
        let _ = writeln!(out, "|E|    {}", self.ring_order);
        match (self.ideal_count, &self.ideals_note) {
            (Some(n), _) => {
                let _ = writeln!(out, "ideals {n}");
            }
            (None, Some(why)) => {
                let _ = writeln!(out, "ideals not enumerated: {why}");
            }
            _ => {}
        }
        out.push_str("\nH | |H| | |H†| | #†-inv(H) | closed\n");
        for r in &self.classes {
            let class = if self.ideal_count.is_some() {
                (r.class_size.to_string(), r.closed_members.to_string())
            } else {
                ("?".into(), "?".into())
            };
            let _ = writeln!(
                out,
                "{} | {} | {} | {} | {}",
                r.subgroup, r.subgroup_order, r.dagger_order, class.0, class.1
            );
        }
        if let Some(c) = &self.collision {
            let _ = writeln!(
                out,
                "\ncollision ({}) with image {}",
                c["source"].as_str().unwrap_or(""),
                c["image"].as_str().unwrap_or("")
            );
            let _ = writeln!(out, "  I = {}", c["first"]);
            let _ = writeln!(out, "  J = {}", c["second"]);
        }
        out
    }
}
