//! Indicators (finite height sequences terminated by ∞), their order, the gap
//! condition and indicator subgroups `G(σ)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, GroupTable, Height, Subgroup};
use crate::Budget;

/// A strictly increasing list of heights with an implicit terminal `∞`.
///
/// `Ord` is a canonical total order for sorting (length, then entries); the
/// mathematical partial order is [`Indicator::precedes`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IndicatorRepr", into = "IndicatorRepr")]
pub struct Indicator {
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndicatorRepr {
    entries: Vec<u32>,
}

impl TryFrom<IndicatorRepr> for Indicator {
    type Error = Error;

    fn try_from(r: IndicatorRepr) -> Result<Self> {
        Indicator::new(r.entries)
    }
}

impl From<Indicator> for IndicatorRepr {
    fn from(s: Indicator) -> Self {
        IndicatorRepr { entries: s.entries }
    }
}

impl Indicator {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing);
        }
        Ok(Self { entries })
    }

    /// `(∞)`, the top of the order.
    pub fn infinity() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `i`, with `∞` past the end.
    pub fn get(&self, i: usize) -> Height {
        self.entries
            .get(i)
            .map_or(Height::Infinite, |&h| Height::Finite(h))
    }

    /// `σ ⪯ τ`: `σ` is at least as long and pointwise below on `τ`'s length.
    pub fn precedes(&self, tau: &Indicator) -> bool {
        self.len() >= tau.len() && self.entries.iter().zip(&tau.entries).all(|(s, t)| s <= t)
    }

    /// Greatest lower bound: pointwise minimum with `∞` padding.
    pub fn meet(&self, tau: &Indicator) -> Indicator {
        let n = self.len().max(tau.len());
        let entries = (0..n)
            .map(|i| match (self.get(i), tau.get(i)) {
                (Height::Finite(a), Height::Finite(b)) => a.min(b),
                (Height::Finite(a), Height::Infinite) | (Height::Infinite, Height::Finite(a)) => a,
                (Height::Infinite, Height::Infinite) => unreachable!("below the longer length"),
            })
            .collect();
        Indicator { entries }
    }

    /// Least upper bound: pointwise maximum truncated to the shorter length.
    pub fn join(&self, tau: &Indicator) -> Indicator {
        let entries = self
            .entries
            .iter()
            .zip(&tau.entries)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Indicator { entries }
    }

    /// `σ_i + 1 < σ_{i+1}`; requires `i + 1 < len`.
    pub fn has_gap_at(&self, i: usize) -> Result<bool> {
        if i + 1 >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.entries[i] + 1 < self.entries[i + 1])
    }

    fn gaps(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries
            .windows(2)
            .filter(|w| w[0] + 1 < w[1])
            .map(|w| w[0])
    }

    /// Gap condition plus the bounded-group range restriction.
    pub fn is_admissible(&self, g: &GroupSpec) -> bool {
        let e = g.exponent();
        self.len() <= e as usize
            && self.entries.iter().all(|&x| x < e)
            && self.gaps().all(|k| g.ulm_invariant(k) != 0)
    }

    /// Admissible and equal to `ind(a)` for some `a`: the last finite entry
    /// must be the height of a socle element.
    pub fn is_realizable(&self, g: &GroupSpec) -> bool {
        self.is_admissible(g) && self.entries.last().is_none_or(|&k| g.ulm_invariant(k) != 0)
    }

    /// All contiguous finite segments of `σ`, plus `(∞)`.
    pub fn segments(&self) -> Vec<Indicator> {
        let n = self.len();
        let mut out = vec![Indicator::infinity()];
        for i in 0..n {
            for j in i + 1..=n {
                out.push(Indicator {
                    entries: self.entries[i..j].to_vec(),
                });
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for x in &self.entries {
            write!(f, "{x},")?;
        }
        f.write_str("∞)")
    }
}

impl std::str::FromStr for Indicator {
    type Err = Error;

    /// Accepts `(1,3,∞)`, `1,3` or `[1,3]`; `inf`/`∞` may end the list.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let mut entries = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if matches!(tok, "∞" | "inf" | "oo") {
                continue;
            }
            entries.push(
                tok.parse()
                    .map_err(|_| Error::InvalidInput(format!("bad indicator entry `{tok}`")))?,
            );
        }
        Indicator::new(entries)
    }
}

/// `ind(a) = (height(a), height(pa), …)` up to the last nonzero multiple.
pub fn ind_of(g: &GroupSpec, a: &Element) -> Indicator {
    let mut entries = Vec::new();
    let mut x = a.clone();
    while let Height::Finite(h) = g.height(&x) {
        entries.push(h);
        x = g.smul(g.p() as i64, &x).expect("same group");
    }
    Indicator { entries }
}

/// [`ind_of`] on a table index.
pub fn ind_of_index(t: &GroupTable, mut x: usize) -> Indicator {
    let mut entries = Vec::with_capacity(t.exponent(x) as usize);
    while let Height::Finite(h) = t.height(x) {
        entries.push(h);
        x = t.times_p(x);
    }
    Indicator { entries }
}

/// Whether `σ ⪯ ind(x)`, without building the indicator.
pub fn precedes_index(t: &GroupTable, sigma: &Indicator, mut x: usize) -> bool {
    if t.exponent(x) as usize > sigma.len() {
        return false;
    }
    for &s in &sigma.entries {
        if x == 0 {
            break;
        }
        if t.height(x) < Height::Finite(s) {
            return false;
        }
        x = t.times_p(x);
    }
    true
}

/// `(0, 1, …, e−1, ∞)`.
pub fn min_admissible(g: &GroupSpec) -> Indicator {
    Indicator {
        entries: (0..g.exponent()).collect(),
    }
}

/// Every admissible indicator, in canonical order.
pub fn enumerate_admissible(g: &GroupSpec, budget: &Budget) -> Result<Vec<Indicator>> {
    let e = g.exponent();
    if e > budget.max_exponent {
        return Err(Error::GroupTooLarge {
            size: format!("exponent {e}"),
            limit: budget.max_exponent as u64,
        });
    }
    let mut out: Vec<Indicator> = (0u64..1 << e)
        .map(|mask| Indicator {
            entries: (0..e).filter(|&i| mask >> i & 1 == 1).collect(),
        })
        .filter(|s| s.is_admissible(g))
        .collect();
    out.sort();
    Ok(out)
}

/// `G(σ) = {a : σ ⪯ ind(a)}`.
pub fn indicator_subgroup(t: &GroupTable, sigma: &Indicator) -> Subgroup {
    t.subgroup_where(|x| precedes_index(t, sigma, x))
}

fn extremal(
    candidates: Vec<&Indicator>,
    above: impl Fn(&Indicator, &Indicator) -> bool,
) -> Result<Indicator> {
    candidates
        .iter()
        .find(|c| candidates.iter().all(|d| above(c, d)))
        .map(|c| (*c).clone())
        .ok_or(Error::NotALattice)
}

/// Greatest admissible lower bound of `σ` and `τ`, found by search.
pub fn admissible_meet(
    g: &GroupSpec,
    sigma: &Indicator,
    tau: &Indicator,
    budget: &Budget,
) -> Result<Indicator> {
    let all = enumerate_admissible(g, budget)?;
    let lower = all
        .iter()
        .filter(|r| r.precedes(sigma) && r.precedes(tau))
        .collect();
    extremal(lower, |c, d| d.precedes(c))
}

/// Least admissible upper bound of `σ` and `τ`, found by search.
pub fn admissible_join(
    g: &GroupSpec,
    sigma: &Indicator,
    tau: &Indicator,
    budget: &Budget,
) -> Result<Indicator> {
    let all = enumerate_admissible(g, budget)?;
    let upper = all
        .iter()
        .filter(|r| sigma.precedes(r) && tau.precedes(r))
        .collect();
    extremal(upper, |c, d| c.precedes(d))
}

/// `precedes` as a partial order comparison.
pub fn partial_cmp(sigma: &Indicator, tau: &Indicator) -> Option<Ordering> {
    match (sigma.precedes(tau), tau.precedes(sigma)) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}
