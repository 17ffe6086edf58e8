//! The claim catalogue: each entry checks one structural statement
//! exhaustively on a single group and returns a [`ClaimReport`].

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::endo::{collision_recipe, find_dagger_collision, EndoRing, Ideal};
use crate::error::{Error, Result};
use crate::group::{fi_form_name, GroupSpec, GroupTable, Subgroup, UlmConvention};
use crate::indicator::{
    enumerate_admissible, ind_of_index, indicator_subgroup, min_admissible, Indicator,
};
use crate::lattice::{canonical_fi_form, fi_closure, FiLattice};
use crate::matrix::{entry_join, entry_meet, Cell, FundMatrix};
use crate::report::{Checker, ClaimReport};
use crate::ulm::{
    basic_seq_to_ulm, check_ulm_criterion, ulm_to_basic_seq, BasicBlock, BasicComponent,
    BasicGroupSpec, BasicSequence, CardinalValue, Ordinal, UlmSequence,
};
use crate::Budget;

/// Largest `|G|·|E|` walked pair by pair.
const MAX_PAIRS: u64 = 1 << 28;

/// Everything a claim may need, computed at most once and shared.
pub struct Context {
    spec: GroupSpec,
    budget: Budget,
    table: GroupTable,
    matrix: OnceLock<FundMatrix>,
    indicators: OnceLock<Vec<Indicator>>,
    admissible: OnceLock<Result<Vec<(Indicator, Subgroup)>>>,
    lattice: OnceLock<Result<FiLattice>>,
    ring: OnceLock<Result<EndoRing>>,
    ideals: OnceLock<Result<Vec<Ideal>>>,
    node_daggers: OnceLock<Result<Vec<Ideal>>>,
    ideal_daggers: OnceLock<Result<Vec<Subgroup>>>,
}

fn cached<T>(cell: &OnceLock<Result<T>>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(init).as_ref().map_err(Clone::clone)
}

impl Context {
    pub fn new(spec: &GroupSpec, budget: &Budget) -> Result<Self> {
        Ok(Self {
            spec: spec.clone(),
            budget: *budget,
            table: GroupTable::new(spec, budget)?,
            matrix: OnceLock::new(),
            indicators: OnceLock::new(),
            admissible: OnceLock::new(),
            lattice: OnceLock::new(),
            ring: OnceLock::new(),
            ideals: OnceLock::new(),
            node_daggers: OnceLock::new(),
            ideal_daggers: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn matrix(&self) -> &FundMatrix {
        self.matrix.get_or_init(|| FundMatrix::build(&self.table))
    }

    /// `ind(x)` for every element index.
    pub fn indicators(&self) -> &[Indicator] {
        self.indicators.get_or_init(|| {
            self.table
                .indices()
                .into_par_iter()
                .map(|x| ind_of_index(&self.table, x))
                .collect()
        })
    }

    /// Admissible indicators with their subgroups `G(σ)`.
    pub fn admissible(&self) -> Result<&[(Indicator, Subgroup)]> {
        cached(&self.admissible, || {
            let sigmas = enumerate_admissible(&self.spec, &self.budget)?;
            Ok(sigmas
                .into_par_iter()
                .map(|s| {
                    let h = indicator_subgroup(&self.table, &s);
                    (s, h)
                })
                .collect())
        })
        .map(Vec::as_slice)
    }

    pub fn lattice(&self) -> Result<&FiLattice> {
        cached(&self.lattice, || {
            FiLattice::enumerate(&self.table, &self.budget)
        })
    }

    pub fn ring(&self) -> Result<&EndoRing> {
        cached(&self.ring, || EndoRing::new(&self.spec, &self.budget))
    }

    pub fn ideals(&self) -> Result<&[Ideal]> {
        cached(&self.ideals, || self.ring()?.enumerate_ideals(&self.budget)).map(Vec::as_slice)
    }

    /// `H†` for every lattice node, by node id.
    pub fn node_daggers(&self) -> Result<&[Ideal]> {
        cached(&self.node_daggers, || {
            let ring = self.ring()?;
            self.lattice()?
                .nodes()
                .par_iter()
                .map(|h| ring.dagger_subgroup(&self.table, h))
                .collect()
        })
        .map(Vec::as_slice)
    }

    /// `I†` for every enumerated ideal, by position.
    pub fn ideal_daggers(&self) -> Result<&[Subgroup]> {
        cached(&self.ideal_daggers, || {
            let ring = self.ring()?;
            Ok(self
                .ideals()?
                .par_iter()
                .map(|i| ring.dagger_ideal(&self.table, i))
                .collect())
        })
        .map(Vec::as_slice)
    }

    fn node_id(&self, h: &Subgroup) -> Result<usize> {
        self.lattice()?
            .position(h)
            .ok_or_else(|| Error::InvalidInput("subgroup is not a lattice node".into()))
    }

    fn ideal_id(&self, i: &Ideal) -> Result<usize> {
        self.ideals()?
            .binary_search(i)
            .map_err(|_| Error::InvalidInput("ideal is not enumerated".into()))
    }

    fn el(&self, x: usize) -> Value {
        json!(self.table.element(x).coords())
    }

    fn name(&self, h: &Subgroup) -> String {
        match canonical_fi_form(&self.table, h) {
            Ok(alpha) => fi_form_name(&self.spec, &alpha),
            Err(_) => format!("a subgroup of order {}", h.order()),
        }
    }

    fn ideal_json(&self, i: &Ideal) -> Value {
        self.ring().map_or(Value::Null, |r| r.ideal_to_json(i))
    }
}

/// Some element in exactly one of `h` and `k`.
fn difference(h: &Subgroup, k: &Subgroup) -> Option<usize> {
    h.indices()
        .find(|&x| !k.contains(x))
        .or_else(|| k.indices().find(|&x| !h.contains(x)))
}

type Run = fn(&Context, &mut Checker) -> Result<()>;

pub struct ClaimDef {
    pub id: &'static str,
    pub title: &'static str,
    run: Run,
}

impl ClaimDef {
    pub fn run(&self, ctx: &Context, timing: bool) -> ClaimReport {
        let start = Instant::now();
        let mut c = Checker::new(self.id, self.title, Some(ctx.spec()));
        let mut report = match (self.run)(ctx, &mut c) {
            Ok(()) => c.finish(),
            Err(e) if e.is_budget() => {
                ClaimReport::skipped(self.id, self.title, Some(ctx.spec()), e.to_string())
            }
            Err(e) => {
                c.fail("error", || (e.to_string(), Value::Null));
                c.finish()
            }
        };
        if timing {
            report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        report
    }
}

macro_rules! claims {
    ($( $id:literal, $title:literal => $f:ident; )*) => {
        &[ $( ClaimDef { id: $id, title: $title, run: $f }, )* ]
    };
}

pub fn registry() -> &'static [ClaimDef] {
    claims! {
        "cor-7.15", "admissible indicators account for every fully invariant subgroup" => cor_7_15;
        "cor-7.16", "G(σ) lies in the fundamental subgroup p^{σ_0}G[p^n]" => cor_7_16;
        "cor-7.6", "quartering of the fundamental matrix" => cor_7_6;
        "cor-8.11", "fundamental and indicator subgroups are †-closed" => cor_8_11;
        "cor-8.12", "every fully invariant subgroup is †-closed" => cor_8_12;
        "lemma-7.1", "fully invariant subgroups form a lattice under sum and intersection" => lemma_7_1;
        "lemma-7.10", "rising paths correspond to indicators" => lemma_7_10;
        "lemma-7.4", "p^κG[p^n] ≤ p^μG[p^m] iff n ≤ m and κ ≥ μ" => lemma_7_4;
        "lemma-7.5.1", "fundamental matrix entries are distinct" => lemma_7_5_1;
        "lemma-7.5.2", "join and meet index formulas for matrix entries" => lemma_7_5_2;
        "lemma-8.13", "†-inverse classes are sum-closed with H† as the only closed member" => lemma_8_13;
        "lemma-8.2", "the dagger maps land in ideals and fully invariant subgroups" => lemma_8_2;
        "lemma-8.9", "dagger images of p^nE, p^nG, E[p^n] and G[p^n]" => lemma_8_9;
        "prop-3.2", "Ulm sum criterion on bounded data" => prop_3_2;
        "prop-7.12", "G(σ) lies under every entry of its rising path" => prop_7_12;
        "prop-7.2.1", "indicator subgroups are fully invariant" => prop_7_2_1;
        "prop-7.2.2", "admissible indicators form a lattice" => prop_7_2_2;
        "prop-7.2.3", "every segment of an admissible indicator is realised" => prop_7_2_3;
        "prop-7.2.5", "σ ⪯ τ implies G(τ) ≤ G(σ)" => prop_7_2_5;
        "prop-7.8", "every entry has an alias in a homocyclic column" => prop_7_8;
        "prop-8.10", "(p^κG)† = p^κE for finite κ" => prop_8_10;
        "prop-8.4", "the dagger maps preserve order, meets and joins" => prop_8_4;
        "prop-8.6", "each image has a unique †-closed preimage" => prop_8_6;
        "prop-8.8.4", "dagger is a lattice isomorphism between closed objects" => prop_8_8_4;
        "remark-8.3", "the pair p^3 E and ⟨a ↦ pa, b ↦ p^3 b⟩ collide under dagger" => remark_8_3;
        "section-3.2.u5", "Ulm invariants match component multiplicities" => section_3_2_u5;
        "section-6.6", "(0,1,…,e−1,∞) is the least admissible indicator" => section_6_6;
        "section-6.8", "endomorphisms raise indicators: ind(a) ⪯ ind(af)" => section_6_8;
        "section-6.9", "bounded groups are transitive" => section_6_9;
        "section-7.2.sum", "G(σ) is the sum of the entries M(t+1, σ_t)" => section_7_2_sum;
        "section-8.3.1", "homocyclic groups have a chain of †-closed ideals p^kE" => section_8_3_1;
        "section-8.3.3", "distinct ideals with equal dagger images exist" => section_8_3_3;
        "section-9.finite-rank", "the rank filtration collapses at finite rank" => section_9_finite_rank;
        "theorem-9.4.4", "H† ≤ H'† iff H ≥ H' (finite specialisation)" => theorem_9_4_4;
    }
}

fn matches_filter(id: &str, f: &str) -> bool {
    id == f || id.strip_prefix(f).is_some_and(|rest| rest.starts_with('.'))
}

/// Claims selected by exact id or dotted prefix; `all` selects everything.
pub fn select(filters: &[String]) -> Result<Vec<&'static ClaimDef>> {
    if filters.is_empty() || filters.iter().any(|f| f == "all") {
        return Ok(registry().iter().collect());
    }
    for f in filters {
        if !registry().iter().any(|d| matches_filter(d.id, f)) {
            return Err(Error::InvalidInput(format!("unknown claim `{f}`")));
        }
    }
    Ok(registry()
        .iter()
        .filter(|d| filters.iter().any(|f| matches_filter(d.id, f)))
        .collect())
}

/// Runs the claims concurrently; the result is sorted by claim id.
pub fn run_claims(ctx: &Context, defs: &[&ClaimDef], timing: bool) -> Vec<ClaimReport> {
    let mut out: Vec<ClaimReport> = defs.par_iter().map(|d| d.run(ctx, timing)).collect();
    out.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    out
}

pub fn verify(spec: &GroupSpec, budget: &Budget, filters: &[String]) -> Result<Vec<ClaimReport>> {
    let defs = select(filters)?;
    let ctx = Context::new(spec, budget)?;
    Ok(run_claims(&ctx, &defs, false))
}

fn section_3_2_u5(ctx: &Context, c: &mut Checker) -> Result<()> {
    let g = ctx.spec();
    let t = ctx.table();
    let p = g.p();
    let e = g.exponent();
    let socle_dim = |k: u32| {
        let n = t
            .indices()
            .filter(|&x| t.exponent(x) <= 1 && t.height(x) >= crate::Height::Finite(k))
            .count() as u64;
        (n as f64).log(p as f64).round() as u64
    };
    let mut total = 0;
    for k in 0..=e {
        let u = g.ulm_invariant(k);
        total += u;
        let oracle = socle_dim(k) - socle_dim(k + 1);
        c.check("quotient-dimension", u == oracle, || {
            (
                format!("u_{k} = {u} but the socle slices give {oracle}"),
                json!({"kappa": k}),
            )
        });
        for (part, conv) in [
            ("shifted", UlmConvention::Shifted),
            ("literal", UlmConvention::Literal),
        ] {
            let v = g.ulm_by_convention(k, conv);
            c.check(part, v == u, || {
                (
                    format!("convention predicts u_{k} = {v}, actual {u}"),
                    json!({"kappa": k, "predicted": v, "actual": u}),
                )
            });
        }
    }
    c.check("rank-sum", total == g.rank(), || {
        (
            format!("Σ u_κ = {total} but rank is {}", g.rank()),
            Value::Null,
        )
    });
    Ok(())
}

fn prop_3_2(ctx: &Context, c: &mut Checker) -> Result<()> {
    let g = ctx.spec();
    let u = UlmSequence::of_group(g);
    let v = check_ulm_criterion(&u);
    c.check("vacuous", v.admissible && v.checks.is_empty(), || {
        (
            "bounded Ulm data was not vacuously admissible".into(),
            json!(v),
        )
    });
    let basic = BasicSequence {
        lambda: Ordinal::finite(g.exponent()),
        blocks: vec![BasicBlock {
            xi: Ordinal::ZERO,
            basic: BasicGroupSpec::new(
                g.components()
                    .iter()
                    .map(|comp| BasicComponent {
                        exponent: comp.exponent,
                        multiplicity: CardinalValue::Finite(comp.multiplicity as u64),
                    })
                    .collect(),
                None,
            )?,
        }],
    };
    let forward = basic_seq_to_ulm(&basic)?;
    c.check("basic-forward", forward == u.canonical(), || {
        (
            "basic data and computed Ulm invariants disagree".into(),
            json!({"forward": forward, "computed": u}),
        )
    });
    let back = ulm_to_basic_seq(&forward)?;
    c.check("round-trip", back == basic.canonical(), || {
        (
            "round trip through Ulm data changed the basic group".into(),
            json!(back),
        )
    });
    Ok(())
}

fn section_6_6(ctx: &Context, c: &mut Checker) -> Result<()> {
    let m = min_admissible(ctx.spec());
    c.check("admissible", m.is_admissible(ctx.spec()), || {
        (format!("{m} is not admissible"), Value::Null)
    });
    for (s, _) in ctx.admissible()? {
        c.check("least", m.precedes(s), || {
            (format!("{m} does not precede {s}"), json!(s))
        });
    }
    let top = indicator_subgroup(ctx.table(), &m);
    c.check("whole-group", top == ctx.table().whole(), || {
        (format!("G({m}) has order {}", top.order()), Value::Null)
    });
    Ok(())
}

fn section_6_8(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let pairs = t.order() as u64 * ring.size() as u64;
    if pairs > MAX_PAIRS {
        return Err(Error::RingTooLarge {
            size: format!("{pairs} pairs"),
            limit: MAX_PAIRS,
        });
    }
    let inds = ctx.indicators();
    // (part, a, f) for every failure, in (f, a) order
    let failures: Vec<Vec<(&str, usize, usize)>> = ring
        .indices()
        .into_par_iter()
        .map(|f| {
            let mut bad = Vec::new();
            for a in t.indices() {
                let b = ring.apply(a, f);
                if !inds[a].precedes(&inds[b]) {
                    bad.push(("indicator", a, f));
                }
                if b != 0 && t.height(b) < t.height(a) {
                    bad.push(("height", a, f));
                }
                if t.exponent(b) > t.exponent(a) {
                    bad.push(("exponent", a, f));
                }
            }
            bad
        })
        .collect();
    c.add_checked(pairs);
    for (part, a, f) in failures.into_iter().flatten() {
        c.fail(part, || {
            let b = ring.apply(a, f);
            (
                format!("ind(a) = {}, ind(af) = {}", inds[a], inds[b]),
                json!({"a": ctx.el(a), "f": ring.endo(f)}),
            )
        });
    }
    Ok(())
}

fn section_6_9(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    let inds = ctx.indicators();
    let targets: Vec<Subgroup> = t
        .indices()
        .into_par_iter()
        .map(|x| indicator_subgroup(t, &inds[x]))
        .collect();
    for x in t.indices() {
        let h = fi_closure(t, x);
        c.check("closure", h == targets[x], || {
            (
                format!(
                    "closure of a has order {}, G(ind(a)) = G({}) has order {}",
                    h.order(),
                    inds[x],
                    targets[x].order()
                ),
                json!({"a": ctx.el(x)}),
            )
        });
    }
    let orbit_note = match ctx.ring() {
        Ok(ring) if (t.order() as u64) * (ring.size() as u64) <= MAX_PAIRS => {
            let orbits: Vec<FixedBitSet> = t
                .indices()
                .into_par_iter()
                .map(|x| {
                    let mut bits = FixedBitSet::with_capacity(t.order());
                    for f in ring.indices() {
                        bits.insert(ring.apply(x, f));
                    }
                    bits
                })
                .collect();
            for x in t.indices() {
                let ok = &orbits[x] == targets[x].bits();
                c.check("orbit", ok, || {
                    let missing = targets[x].indices().find(|&y| !orbits[x].contains(y));
                    (
                        format!(
                            "no endomorphism maps a to some b with ind(a) ⪯ ind(b); a = {}",
                            ctx.el(x)
                        ),
                        json!({"a": ctx.el(x), "b": missing.map(|y| ctx.el(y))}),
                    )
                });
            }
            None
        }
        Ok(_) => Some("orbit check skipped: too many element/endomorphism pairs".to_string()),
        Err(e) => Some(format!("orbit check skipped: {e}")),
    };
    if let Some(n) = orbit_note {
        c.note(n);
    }
    Ok(())
}

fn prop_7_2_1(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    let adm = ctx.admissible()?;
    for (s, h) in adm {
        c.check("elementary", t.is_fully_invariant(h), || {
            (
                format!("G({s}) is not closed under the ring generators"),
                json!(s),
            )
        });
    }
    if let Ok(ring) = ctx.ring() {
        let work: u64 = adm.iter().map(|(_, h)| h.order() as u64).sum::<u64>() * ring.size() as u64;
        if work <= MAX_PAIRS {
            for (s, h) in adm {
                let bad = h
                    .indices()
                    .flat_map(|x| ring.indices().map(move |f| (x, f)))
                    .find(|&(x, f)| !h.contains(ring.apply(x, f)));
                c.check("all-endomorphisms", bad.is_none(), || {
                    let (x, f) = bad.expect("failure");
                    (
                        format!("G({s}) is not closed"),
                        json!({"a": ctx.el(x), "f": ring.endo(f)}),
                    )
                });
            }
        }
    }
    Ok(())
}

fn prop_7_2_2(ctx: &Context, c: &mut Checker) -> Result<()> {
    let g = ctx.spec();
    let sigmas: Vec<&Indicator> = ctx.admissible()?.iter().map(|(s, _)| s).collect();
    for &s in &sigmas {
        for &tau in &sigmas {
            let m = s.meet(tau);
            let j = s.join(tau);
            let meet_ok = m.precedes(s)
                && m.precedes(tau)
                && sigmas
                    .iter()
                    .all(|r| !(r.precedes(s) && r.precedes(tau)) || r.precedes(&m));
            c.check("meet-glb", meet_ok, || {
                (format!("{s} ∧ {tau} = {m} is not the g.l.b."), Value::Null)
            });
            let join_ok = s.precedes(&j)
                && tau.precedes(&j)
                && sigmas
                    .iter()
                    .all(|r| !(s.precedes(r) && tau.precedes(r)) || j.precedes(r));
            c.check("join-lub", join_ok, || {
                (format!("{s} ∨ {tau} = {j} is not the l.u.b."), Value::Null)
            });
            let lower: Vec<&&Indicator> = sigmas
                .iter()
                .filter(|r| r.precedes(s) && r.precedes(tau))
                .collect();
            let has_glb = lower.iter().any(|a| lower.iter().all(|b| b.precedes(a)));
            c.check("admissible-meet", has_glb, || {
                (
                    format!("{s} and {tau} have no greatest admissible lower bound"),
                    Value::Null,
                )
            });
            let upper: Vec<&&Indicator> = sigmas
                .iter()
                .filter(|r| s.precedes(r) && tau.precedes(r))
                .collect();
            let has_lub = upper.iter().any(|a| upper.iter().all(|b| a.precedes(b)));
            c.check("admissible-join", has_lub, || {
                (
                    format!("{s} and {tau} have no least admissible upper bound"),
                    Value::Null,
                )
            });
        }
    }
    let _ = g;
    Ok(())
}

fn prop_7_2_3(ctx: &Context, c: &mut Checker) -> Result<()> {
    let g = ctx.spec();
    let realised: BTreeSet<&Indicator> = ctx.indicators().iter().collect();
    for (s, _) in ctx.admissible()? {
        for seg in s.segments() {
            c.check("segments", realised.contains(&seg), || {
                (
                    format!("segment {seg} of {s} is the indicator of no element"),
                    json!({"sigma": s, "segment": seg}),
                )
            });
        }
        c.check(
            "realizable",
            s.is_realizable(g) == realised.contains(s),
            || (format!("realizability test is wrong for {s}"), json!(s)),
        );
    }
    for s in &realised {
        c.check("admissible", s.is_admissible(g), || {
            (format!("ind(a) = {s} is not admissible"), json!(s))
        });
    }
    Ok(())
}

fn prop_7_2_5(ctx: &Context, c: &mut Checker) -> Result<()> {
    let adm = ctx.admissible()?;
    for (s, hs) in adm {
        for (tau, ht) in adm {
            if s.precedes(tau) {
                c.check("antitone", ht.leq(hs)?, || {
                    (format!("{s} ⪯ {tau} but G({tau}) ⊄ G({s})"), Value::Null)
                });
            }
        }
    }
    Ok(())
}

fn lemma_7_1(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    let l = ctx.lattice()?;
    let nodes = l.nodes();
    for h in nodes {
        c.check("fully-invariant", t.is_fully_invariant(h), || {
            (
                format!("node of order {} is not fully invariant", h.order()),
                Value::Null,
            )
        });
    }
    for (i, h) in nodes.iter().enumerate() {
        for k in &nodes[i..] {
            let s = t.sum(h, k)?;
            c.check("sum", l.position(&s).is_some(), || {
                (
                    format!("{} + {} is not a node", ctx.name(h), ctx.name(k)),
                    Value::Null,
                )
            });
            let m = h.meet(k)?;
            c.check("meet", l.position(&m).is_some(), || {
                (
                    format!("{} ∩ {} is not a node", ctx.name(h), ctx.name(k)),
                    Value::Null,
                )
            });
        }
    }
    Ok(())
}

fn lemma_7_4(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    let e = ctx.spec().exponent();
    let subs: Vec<((u32, u32), Subgroup)> = (0..e)
        .flat_map(|k| (1..=e).map(move |n| (k, n)))
        .map(|(k, n)| ((k, n), t.fundamental(k, n)))
        .collect();
    for ((k, n), h) in &subs {
        for ((mu, m), hh) in &subs {
            let indices = n <= m && k >= mu;
            let leq = h.leq(hh)?;
            if indices {
                c.check("if", leq, || {
                    (format!("p^{k}G[p^{n}] ⊄ p^{mu}G[p^{m}]"), Value::Null)
                });
            } else {
                c.check("only-if", !leq, || {
                    (
                        format!("p^{k}G[p^{n}] ≤ p^{mu}G[p^{m}] although not (n ≤ m and κ ≥ μ)"),
                        json!({"left": [k, n], "right": [mu, m]}),
                    )
                });
            }
        }
    }
    Ok(())
}

fn lemma_7_5_1(ctx: &Context, c: &mut Checker) -> Result<()> {
    let m = ctx.matrix();
    let cells: Vec<Cell> = m
        .cells()
        .filter(|cell| m.homocyclic_cols().contains(&cell.col))
        .collect();
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            c.check("distinct", m.entry(a)? != m.entry(b)?, || {
                (
                    format!("{a} = {b} = {}", ctx.name(m.entry(a).expect("cell"))),
                    json!({"cells": [a, b]}),
                )
            });
        }
    }
    Ok(())
}

fn lemma_7_5_2(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    let m = ctx.matrix();
    let cells: Vec<Cell> = m.cells().collect();
    for &a in &cells {
        for &b in &cells {
            let (ea, eb) = (m.entry(a)?, m.entry(b)?);
            let sum = t.sum(ea, eb)?;
            let j = entry_join(a, b);
            c.check("join", &sum == m.entry(j)?, || {
                (
                    format!(
                        "{a} + {b} = {} but {j} = {}",
                        ctx.name(&sum),
                        ctx.name(m.entry(j).expect("cell"))
                    ),
                    json!({"cells": [a, b], "formula": j}),
                )
            });
            let meet = ea.meet(eb)?;
            let mm = entry_meet(a, b);
            c.check("meet", &meet == m.entry(mm)?, || {
                (
                    format!("{a} ∩ {b} differs from {mm}"),
                    json!({"cells": [a, b], "formula": mm}),
                )
            });
        }
    }
    Ok(())
}

fn cor_7_6(ctx: &Context, c: &mut Checker) -> Result<()> {
    let m = ctx.matrix();
    let total = m.cells().count();
    for pivot in m.cells() {
        let q = m.quartering(pivot)?;
        let e = m.entry(pivot)?;
        c.check(
            "partition",
            q.south_east.len() + q.north_west.len() + q.incomparable.len() + 1 == total,
            || {
                (
                    format!("quartering at {pivot} is not a partition"),
                    Value::Null,
                )
            },
        );
        for &cell in &q.south_east {
            c.check("south-east", m.entry(cell)?.leq(e)?, || {
                (format!("{cell} ⊄ {pivot}"), Value::Null)
            });
        }
        for &cell in &q.north_west {
            c.check("north-west", e.leq(m.entry(cell)?)?, || {
                (format!("{pivot} ⊄ {cell}"), Value::Null)
            });
        }
        for &cell in &q.incomparable {
            let x = m.entry(cell)?;
            let comparable = x.leq(e)? || e.leq(x)?;
            c.check("incomparable", !comparable, || {
                (
                    format!("{cell} and {pivot} are comparable"),
                    json!({"pivot": pivot, "cell": cell}),
                )
            });
        }
    }
    Ok(())
}

fn prop_7_8(ctx: &Context, c: &mut Checker) -> Result<()> {
    let m = ctx.matrix();
    for cell in m.cells() {
        if m.homocyclic_cols().contains(&cell.col) || m.entry(cell)?.is_trivial() {
            continue;
        }
        match m.alias(cell) {
            Ok(l) => {
                let same = m.entry(Cell::new(cell.row, l))? == m.entry(cell)?;
                c.check("alias", same, || {
                    (format!("alias {l} of {cell} is not equal"), Value::Null)
                });
            }
            Err(Error::NoAlias { .. }) => c.check("alias", false, || {
                (
                    format!(
                        "{cell} = {} equals no homocyclic entry in its row",
                        ctx.name(m.entry(cell).expect("cell"))
                    ),
                    json!(cell),
                )
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn lemma_7_10(ctx: &Context, c: &mut Checker) -> Result<()> {
    let m = ctx.matrix();
    let e = m.size();
    let realised: BTreeSet<&Indicator> = ctx.indicators().iter().collect();
    for s in &realised {
        c.check("forward", m.indicator_to_path(s, 1).is_ok(), || {
            (format!("ind(a) = {s} has no rising path"), json!(s))
        });
    }
    let paths = m.admissible_rising_paths(ctx.budget())?;
    for p in &paths {
        let s = m.path_to_indicator(p)?;
        c.check("converse", realised.contains(&s), || {
            (format!("path {s} is the indicator of no element"), json!(p))
        });
        let back = p
            .start_row()
            .map_or(Ok(p.clone()), |r| m.indicator_to_path(&s, r))?;
        c.check("round-trip", &back == p, || {
            ("path round trip failed".into(), json!(p))
        });
    }
    for (s, _) in ctx.admissible()? {
        for r in 1..=(e + 1 - s.len().max(1) as u32) {
            let ok = m
                .indicator_to_path(s, r)
                .and_then(|p| m.path_to_indicator(&p))
                .is_ok_and(|back| &back == s);
            c.check("round-trip", ok, || {
                (format!("{s} from row {r} does not round trip"), json!(s))
            });
        }
    }
    Ok(())
}

fn prop_7_12(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    let m = ctx.matrix();
    for (s, h) in ctx.admissible()? {
        let n = s.len() as u32;
        for (k, &col) in s.entries().iter().enumerate() {
            let k = k as u32;
            let up = Cell::new(1 + k, col);
            let bad = h
                .indices()
                .find(|&x| !m.entry(up).expect("in grid").contains(x));
            c.check("stated", bad.is_none(), || {
                (
                    format!(
                        "G({s}) ⊄ {up}: {} is missing",
                        ctx.el(bad.expect("failure"))
                    ),
                    json!({"sigma": s, "cell": up, "element": ctx.el(bad.expect("failure"))}),
                )
            });
            let down = Cell::new(n - k, col);
            let pk = t.spec().p().pow(k);
            let bad = h
                .indices()
                .find(|&x| !m.entry(down).expect("in grid").contains(t.smul(pk, x)));
            c.check("descending", bad.is_none(), || {
                (
                    format!("p^{k}G({s}) ⊄ {down}"),
                    json!({"sigma": s, "cell": down}),
                )
            });
        }
    }
    Ok(())
}

/// Per-σ comparison of `G(σ)` with `Σ_t M(t+1, σ_t)`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SigmaSumRow {
    pub sigma: Indicator,
    pub cells: Vec<Cell>,
    pub sum_order: usize,
    pub subgroup_order: usize,
    pub equal: bool,
    /// An element of exactly one side.
    pub witness: Option<Vec<u64>>,
}

pub fn sigma_sum_rows(ctx: &Context) -> Result<Vec<SigmaSumRow>> {
    let t = ctx.table();
    let m = ctx.matrix();
    Ok(ctx
        .admissible()?
        .iter()
        .map(|(s, h)| {
            let sum = m.sigma_sum(t, s);
            SigmaSumRow {
                sigma: s.clone(),
                cells: m.sigma_cells(s),
                sum_order: sum.order(),
                subgroup_order: h.order(),
                equal: &sum == h,
                witness: difference(&sum, h).map(|x| t.element(x).coords().to_vec()),
            }
        })
        .collect())
}

fn section_7_2_sum(ctx: &Context, c: &mut Checker) -> Result<()> {
    for row in sigma_sum_rows(ctx)? {
        c.check("sum", row.equal, || {
            (
                format!(
                    "σ = {}: sum has order {}, G(σ) has order {}, {:?} separates them",
                    row.sigma,
                    row.sum_order,
                    row.subgroup_order,
                    row.witness.as_deref().unwrap_or(&[])
                ),
                json!(row),
            )
        });
    }
    Ok(())
}

fn cor_7_15(ctx: &Context, c: &mut Checker) -> Result<()> {
    let l = ctx.lattice()?;
    let cov = l.coverage();
    c.add_checked((cov.nodes + ctx.admissible()?.len()) as u64);
    for &id in &cov.unlabelled {
        c.fail("unlabelled", || {
            (
                format!("{} is G(σ) for no admissible σ", ctx.name(&l.nodes()[id])),
                json!(l.alpha(id)),
            )
        });
    }
    for s in &cov.unmatched {
        c.fail("unmatched", || {
            (format!("G({s}) is not a lattice node"), json!(s))
        });
    }
    Ok(())
}

fn cor_7_16(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    for (s, h) in ctx.admissible()? {
        if let Some(&k) = s.entries().first() {
            let f = t.fundamental(k, s.len() as u32);
            c.check("first-entry", h.leq(&f)?, || {
                (format!("G({s}) ⊄ p^{k}G[p^{}]", s.len()), json!(s))
            });
        }
    }
    Ok(())
}

/// An index set is an ideal iff it equals the ideal it generates.
fn is_ideal_fast(ring: &EndoRing, i: &Ideal) -> bool {
    let members: Vec<usize> = i.members().collect();
    i.contains(0) && &ring.ideal_generated(&members) == i
}

fn lemma_8_2(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let l = ctx.lattice()?;
    for (h, d) in l.nodes().iter().zip(ctx.node_daggers()?) {
        c.check("subgroup-to-ideal", is_ideal_fast(ring, d), || {
            (format!("({})† is not an ideal", ctx.name(h)), Value::Null)
        });
    }
    for (i, h) in ctx.ideals()?.iter().zip(ctx.ideal_daggers()?) {
        c.check(
            "ideal-to-subgroup",
            t.is_fully_invariant(h) && l.position(h).is_some(),
            || ("I† is not fully invariant".into(), ctx.ideal_json(i)),
        );
    }
    Ok(())
}

fn prop_8_4(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let nodes = ctx.lattice()?.nodes();
    let nd = ctx.node_daggers()?;
    let ideals = ctx.ideals()?;
    let id = ctx.ideal_daggers()?;
    let node_dd = |k: usize| -> Result<&Ideal> { Ok(&nd[ctx.node_id(&id[k])?]) };

    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if nodes[i].leq(&nodes[j])? {
                c.check("order-h", nd[i].leq(&nd[j]), || {
                    ("H ≤ K but H† ⊄ K†".into(), Value::Null)
                });
            }
            let meet = nodes[i].meet(&nodes[j])?;
            let md = &nd[ctx.node_id(&meet)?];
            c.check("meet-h", md == &nd[i].meet(&nd[j]), || {
                (
                    format!(
                        "({} ∩ {})† ≠ H† ∩ K†",
                        ctx.name(&nodes[i]),
                        ctx.name(&nodes[j])
                    ),
                    Value::Null,
                )
            });
            let sum = t.sum(&nodes[i], &nodes[j])?;
            let sd = &nd[ctx.node_id(&sum)?];
            c.check("join-h", sd == &ring.ideal_sum(&nd[i], &nd[j]), || {
                (
                    format!(
                        "({} + {})† ≠ H† + K†",
                        ctx.name(&nodes[i]),
                        ctx.name(&nodes[j])
                    ),
                    Value::Null,
                )
            });
        }
        let dd = ring.dagger_ideal(t, &nd[i]);
        c.check("deflation-h", dd.leq(&nodes[i])?, || {
            (format!("({})†† ⊄ H", ctx.name(&nodes[i])), Value::Null)
        });
        let ddd = &nd[ctx.node_id(&dd)?];
        c.check("triple-h", ddd == &nd[i], || {
            (format!("({})††† ≠ H†", ctx.name(&nodes[i])), Value::Null)
        });
    }
    for a in 0..ideals.len() {
        for b in 0..ideals.len() {
            if ideals[a].leq(&ideals[b]) {
                c.check("order-i", id[a].leq(&id[b])?, || {
                    ("I ≤ J but I† ⊄ J†".into(), Value::Null)
                });
            }
            let meet = ideals[a].meet(&ideals[b]);
            let mimg = &id[ctx.ideal_id(&meet)?];
            let target = id[a].meet(&id[b])?;
            c.check("meet-i", mimg == &target, || {
                (
                    format!(
                        "(I ∩ J)† = {} but I† ∩ J† = {}",
                        ctx.name(mimg),
                        ctx.name(&target)
                    ),
                    json!({"I": ctx.ideal_json(&ideals[a]), "J": ctx.ideal_json(&ideals[b])}),
                )
            });
            let sum = ring.ideal_sum(&ideals[a], &ideals[b]);
            let simg = &id[ctx.ideal_id(&sum)?];
            c.check("join-i", simg == &t.sum(&id[a], &id[b])?, || {
                ("(I + J)† ≠ I† + J†".into(), Value::Null)
            });
        }
        for (h, d) in nodes.iter().zip(nd) {
            let left = id[a].leq(h)?;
            let right = ideals[a].leq(d);
            c.check("galois", left == right, || {
                (
                    format!("I† ≤ {} is {left} but I ≤ H† is {right}", ctx.name(h)),
                    ctx.ideal_json(&ideals[a]),
                )
            });
        }
        let dd = node_dd(a)?;
        c.check("deflation-i", dd.leq(&ideals[a]), || {
            (
                format!(
                    "I†† has order {} and does not lie in I (order {})",
                    dd.order(),
                    ideals[a].order()
                ),
                ctx.ideal_json(&ideals[a]),
            )
        });
        c.check("inflation-i", ideals[a].leq(dd), || {
            ("I ⊄ I††".into(), ctx.ideal_json(&ideals[a]))
        });
        let ddd = ring.dagger_ideal(t, dd);
        c.check("triple-i", ddd == id[a], || {
            ("I††† ≠ I†".into(), ctx.ideal_json(&ideals[a]))
        });
    }
    Ok(())
}

fn prop_8_6(ctx: &Context, c: &mut Checker) -> Result<()> {
    let nodes = ctx.lattice()?.nodes();
    let nd = ctx.node_daggers()?;
    let ideals = ctx.ideals()?;
    let id = ctx.ideal_daggers()?;
    for (k, h) in nodes.iter().enumerate() {
        let closed: Vec<usize> = (0..ideals.len())
            .filter(|&a| &id[a] == h && ideals[a] == nd[ctx.node_id(&id[a]).expect("node")])
            .collect();
        let ok = closed.len() == 1 && ideals[closed[0]] == nd[k];
        c.check("unique-closed", ok, || {
            (
                format!("{} has {} †-closed preimages", ctx.name(h), closed.len()),
                Value::Null,
            )
        });
    }
    Ok(())
}

fn prop_8_8_4(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let nodes = ctx.lattice()?.nodes();
    let nd = ctx.node_daggers()?;
    let ideals = ctx.ideals()?;
    let id = ctx.ideal_daggers()?;
    let closed: BTreeSet<&Ideal> = (0..ideals.len())
        .filter(|&a| ctx.node_id(&id[a]).is_ok_and(|k| nd[k] == ideals[a]))
        .map(|a| &ideals[a])
        .collect();
    let image: BTreeSet<&Ideal> = nd.iter().collect();
    c.check(
        "bijection",
        image.len() == nodes.len() && image == closed,
        || {
            (
                format!(
                    "{} nodes, {} distinct daggers, {} closed ideals",
                    nodes.len(),
                    image.len(),
                    closed.len()
                ),
                Value::Null,
            )
        },
    );
    for i in 0..nodes.len() {
        c.check("inverse", ring.dagger_ideal(t, &nd[i]) == nodes[i], || {
            (format!("({})†† ≠ H", ctx.name(&nodes[i])), Value::Null)
        });
        for j in 0..nodes.len() {
            c.check(
                "order",
                nodes[i].leq(&nodes[j])? == nd[i].leq(&nd[j]),
                || {
                    (
                        format!(
                            "order not reflected between {} and {}",
                            ctx.name(&nodes[i]),
                            ctx.name(&nodes[j])
                        ),
                        Value::Null,
                    )
                },
            );
        }
    }
    Ok(())
}

fn lemma_8_9(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let e = ctx.spec().exponent();
    for n in 0..=e {
        let (pe, ep) = ring.special_ideals(n);
        let png = t.fundamental(n, e);
        let gpn = t.fundamental(0, n);
        let img = ring.dagger_ideal(t, &pe);
        c.check("pnE-dagger", img == png, || {
            (format!("(p^{n}E)† = {}", ctx.name(&img)), json!({"n": n}))
        });
        let d = ring.dagger_subgroup(t, &png)?;
        c.check("pnG-dagger", d == pe, || {
            let extra = d.members().find(|&f| !pe.contains(f));
            (
                format!(
                    "(p^{n}G)† has order {} but p^{n}E has order {}",
                    d.order(),
                    pe.order()
                ),
                json!({"n": n, "f": extra.map(|f| ring.endo(f))}),
            )
        });
        let img = ring.dagger_ideal(t, &ep);
        c.check("Epn-dagger", img == gpn, || {
            (format!("(E[p^{n}])† = {}", ctx.name(&img)), json!({"n": n}))
        });
        let d = ring.dagger_subgroup(t, &gpn)?;
        c.check("Gpn-dagger", d == ep, || {
            (format!("(G[p^{n}])† ≠ E[p^{n}]"), json!({"n": n}))
        });
    }
    Ok(())
}

fn prop_8_10(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let e = ctx.spec().exponent();
    for k in 0..e {
        let d = ring.dagger_subgroup(t, &t.fundamental(k, e))?;
        let pe = ring.power_ideal(k);
        c.check("finite-kappa", d == pe, || {
            let extra = d.members().find(|&f| !pe.contains(f));
            (
                format!(
                    "(p^{k}G)† has order {}, p^{k}E has order {}",
                    d.order(),
                    pe.order()
                ),
                json!({"kappa": k, "f": extra.map(|f| ring.endo(f))}),
            )
        });
    }
    Ok(())
}

fn closed_check(
    ctx: &Context,
    c: &mut Checker,
    part: &str,
    label: &str,
    h: &Subgroup,
) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let dd = ring.dagger_ideal(t, &ring.dagger_subgroup(t, h)?);
    c.check(part, &dd == h, || {
        (
            format!("{label} = {} is not †-closed", ctx.name(h)),
            Value::Null,
        )
    });
    Ok(())
}

fn cor_8_11(ctx: &Context, c: &mut Checker) -> Result<()> {
    let t = ctx.table();
    let e = ctx.spec().exponent();
    for k in 0..=e {
        for n in 0..=e {
            closed_check(
                ctx,
                c,
                "fundamental",
                &format!("p^{k}G[p^{n}]"),
                &t.fundamental(k, n),
            )?;
        }
    }
    for (s, h) in ctx.admissible()? {
        closed_check(ctx, c, "indicator", &format!("G({s})"), h)?;
    }
    Ok(())
}

fn cor_8_12(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    for (h, d) in ctx.lattice()?.nodes().iter().zip(ctx.node_daggers()?) {
        let dd = ring.dagger_ideal(t, d);
        c.check("closed", &dd == h, || {
            (format!("{} is not †-closed", ctx.name(h)), Value::Null)
        });
    }
    Ok(())
}

fn lemma_8_13(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let nodes = ctx.lattice()?.nodes();
    let nd = ctx.node_daggers()?;
    let ideals = ctx.ideals()?;
    let id = ctx.ideal_daggers()?;
    for (k, h) in nodes.iter().enumerate() {
        let class: Vec<usize> = (0..ideals.len()).filter(|&a| &id[a] == h).collect();
        c.check(
            "maximum",
            class.iter().all(|&a| ideals[a].leq(&nd[k]))
                && class.iter().any(|&a| ideals[a] == nd[k]),
            || {
                (
                    format!("({})† is not the largest ideal with image H", ctx.name(h)),
                    Value::Null,
                )
            },
        );
        for &a in &class {
            for &b in &class {
                let s = ring.ideal_sum(&ideals[a], &ideals[b]);
                c.check("sum-closed", &id[ctx.ideal_id(&s)?] == h, || {
                    (
                        format!("†-inv({}) is not closed under sums", ctx.name(h)),
                        Value::Null,
                    )
                });
            }
            let closed = nd[ctx.node_id(&id[a])?] == ideals[a];
            c.check("unique-closed", !closed || ideals[a] == nd[k], || {
                (
                    format!("†-inv({}) has a second closed member", ctx.name(h)),
                    ctx.ideal_json(&ideals[a]),
                )
            });
        }
    }
    Ok(())
}

fn remark_8_3(ctx: &Context, c: &mut Checker) -> Result<()> {
    let g = ctx.spec();
    let shape: Vec<(u32, u32)> = g
        .components()
        .iter()
        .map(|x| (x.exponent, x.multiplicity))
        .collect();
    if shape != [(2, 1), (4, 1)] {
        c.note("applies only to Z(p^2)⊕Z(p^4)");
        return Ok(());
    }
    let ring = ctx.ring()?;
    let t = ctx.table();
    let p = g.p();
    let i = ring.ideal_generated(&[ring.smul(p.pow(3), ring.identity())]);
    let f = ring.index(&crate::endo::Endo {
        matrix: vec![vec![p, 0], vec![0, p.pow(3)]],
    })?;
    let j = ring.ideal_generated(&[f]);
    let socle = t.fundamental(0, 1);
    let (di, dj) = (ring.dagger_ideal(t, &i), ring.dagger_ideal(t, &j));
    c.check("I-dagger", di == socle, || {
        (
            format!("I† = {}, not G[p]", ctx.name(&di)),
            json!({"order": di.order()}),
        )
    });
    c.check("J-dagger", dj == socle, || {
        (format!("J† = {}, not G[p]", ctx.name(&dj)), Value::Null)
    });
    c.check("distinct", i != j, || ("I = J".into(), Value::Null));
    c.check("collision", i != j && di == dj, || {
        (
            format!("I† = {} but J† = {}", ctx.name(&di), ctx.name(&dj)),
            Value::Null,
        )
    });
    Ok(())
}

fn section_8_3_1(ctx: &Context, c: &mut Checker) -> Result<()> {
    let g = ctx.spec();
    if !g.is_homocyclic() {
        c.note("applies only to homocyclic groups");
        return Ok(());
    }
    let ring = ctx.ring()?;
    let t = ctx.table();
    let e = g.exponent();
    let ideals = ctx.ideals()?;
    let chain: Vec<Ideal> = (0..=e).rev().map(|k| ring.power_ideal(k)).collect();
    c.check("chain", ideals == chain.as_slice(), || {
        (
            format!("{} ideals instead of the chain of {}", ideals.len(), e + 1),
            Value::Null,
        )
    });
    for k in 0..=e {
        let img = ring.dagger_ideal(t, &ring.power_ideal(k));
        c.check("dagger", img == t.fundamental(k, e), || {
            (format!("(p^{k}E)† ≠ p^{k}G"), Value::Null)
        });
    }
    let nd = ctx.node_daggers()?;
    for (i, h) in ideals.iter().zip(ctx.ideal_daggers()?) {
        c.check("closed", nd[ctx.node_id(h)?] == *i, || {
            ("ideal is not †-closed".into(), ctx.ideal_json(i))
        });
    }
    Ok(())
}

fn section_8_3_3(ctx: &Context, c: &mut Checker) -> Result<()> {
    let g = ctx.spec();
    if g.is_homocyclic() {
        c.note("applies only to non-homocyclic groups");
        return Ok(());
    }
    let ring = ctx.ring()?;
    let t = ctx.table();
    let (f, h) = collision_recipe(ring).expect("non-homocyclic");
    let (i, j) = (ring.ideal_generated(&[f]), ring.ideal_generated(&[h]));
    let (di, dj) = (ring.dagger_ideal(t, &i), ring.dagger_ideal(t, &j));
    c.check("recipe", i != j && di == dj, || {
        (
            format!(
                "recipe ideals: distinct = {}, images {} and {}",
                i != j,
                ctx.name(&di),
                ctx.name(&dj)
            ),
            json!({"f": ring.endo(f), "g": ring.endo(h)}),
        )
    });
    let found = find_dagger_collision(ring, t, ctx.budget())?;
    c.check("search", found.is_some(), || {
        ("no two distinct ideals share an image".into(), Value::Null)
    });
    Ok(())
}

fn theorem_9_4_4(ctx: &Context, c: &mut Checker) -> Result<()> {
    let nodes = ctx.lattice()?.nodes();
    let nd = ctx.node_daggers()?;
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            let dagger_leq = nd[i].leq(&nd[j]);
            let leq = nodes[i].leq(&nodes[j])?;
            let geq = nodes[j].leq(&nodes[i])?;
            c.check("monotone", dagger_leq == leq, || {
                (
                    format!("H† ≤ H'† is {dagger_leq} but H ≤ H' is {leq}"),
                    Value::Null,
                )
            });
            c.check("stated", dagger_leq == geq, || {
                (
                    format!(
                        "H = {}, H' = {}: H† ≤ H'† is {dagger_leq} but H ≥ H' is {geq}",
                        ctx.name(&nodes[i]),
                        ctx.name(&nodes[j])
                    ),
                    Value::Null,
                )
            });
        }
    }
    Ok(())
}

fn section_9_finite_rank(ctx: &Context, c: &mut Checker) -> Result<()> {
    let ring = ctx.ring()?;
    let t = ctx.table();
    let g = ctx.spec();
    let e = g.exponent();
    let ranks: Vec<u32> = ring
        .indices()
        .into_par_iter()
        .map(|f| ring.endo_rank(t, f))
        .collect();
    let rho = g.rank() as u32;
    for k in 0..e {
        for n in 1..=e {
            let d = ring.dagger_subgroup(t, &t.fundamental(k, n))?;
            let ok = d.members().all(|f| ranks[f] <= rho);
            c.check("collapse", ok, || {
                (format!("I({k},{n},{rho}) ≠ (p^{k}G[p^{n}])†"), Value::Null)
            });
        }
    }
    if ring.size() <= 1 << 10 {
        for f in ring.indices() {
            for h in ring.indices() {
                let s = ring.add(f, h);
                c.check("subadditive", ranks[s] <= ranks[f] + ranks[h], || {
                    (
                        "rank(f+g) > rank(f) + rank(g)".into(),
                        json!({"f": ring.endo(f), "g": ring.endo(h)}),
                    )
                });
            }
        }
    }
    Ok(())
}

/// The sum criterion on a symbolic Ulm sequence, as a report.
pub fn ulm_report(u: &UlmSequence) -> ClaimReport {
    let v = check_ulm_criterion(u);
    let mut c = Checker::new(
        "ulm-criterion",
        "Ulm sum criterion at every limit κ with κ + ω < λ",
        None,
    );
    for chk in &v.checks {
        c.check("criterion", chk.holds, || {
            (
                format!(
                    "κ = {}: Σ over ρ ≥ κ+ω is {}, Σ over the block is {}",
                    chk.kappa, chk.upper_sum, chk.block_sum
                ),
                json!({"kappa": chk.kappa, "upper_sum": chk.upper_sum, "block_sum": chk.block_sum}),
            )
        });
    }
    if v.checks.is_empty() {
        c.note("no limit κ with κ + ω < λ; admissible vacuously");
    }
    c.finish()
}

/// The rank condition on a sequence of basic groups, as a report.
pub fn basic_report(seq: &BasicSequence) -> Result<ClaimReport> {
    let v = crate::ulm::check_basic_sequence_admissible(seq)?;
    let mut c = Checker::new(
        "basic-sequence",
        "rank(B^(ξ)) dominates the later ranks",
        None,
    );
    for chk in &v.checks {
        c.check("rank", chk.holds, || {
            (
                format!(
                    "ξ = {}: rank {} < later sum {}",
                    chk.xi, chk.rank, chk.later_sum
                ),
                json!({"xi": chk.xi, "rank": chk.rank, "later_sum": chk.later_sum}),
            )
        });
    }
    let u = basic_seq_to_ulm(seq)?;
    let crit = check_ulm_criterion(&u);
    c.check("ulm-criterion", crit.admissible == v.admissible, || {
        (
            "rank condition and Ulm criterion disagree".into(),
            json!({"ulm": u}),
        )
    });
    Ok(c.finish())
}
