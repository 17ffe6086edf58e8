//! Bounded abelian p-groups `⊕ Z(p^{n_i})^{m_i}`, their elements, heights and
//! explicit subgroups.
//!
//! Coordinates are flattened: a group with components `[(2,1),(4,2)]` has
//! three coordinates with exponents `[2,4,4]`. Coordinate `t` lives in
//! `Z/p^{e_t}`.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::cyclic::{is_prime, mulmod, valuation, CyclicProduct};
use crate::error::{Error, Result};
use crate::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub exponent: u32,
    pub multiplicity: u32,
}

/// A validated bounded abelian p-group, given by its homocyclic components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupSpecRepr", into = "GroupSpecRepr")]
pub struct GroupSpec {
    p: u64,
    components: Vec<Component>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpecRepr {
    p: u64,
    components: Vec<Component>,
}

impl TryFrom<GroupSpecRepr> for GroupSpec {
    type Error = Error;

    fn try_from(r: GroupSpecRepr) -> Result<Self> {
        let pairs: Vec<_> = r
            .components
            .iter()
            .map(|c| (c.exponent, c.multiplicity))
            .collect();
        GroupSpec::new(r.p, &pairs)
    }
}

impl From<GroupSpec> for GroupSpecRepr {
    fn from(g: GroupSpec) -> Self {
        GroupSpecRepr {
            p: g.p,
            components: g.components,
        }
    }
}

impl GroupSpec {
    pub fn new(p: u64, pairs: &[(u32, u32)]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if pairs.is_empty() {
            return Err(Error::EmptyGroup);
        }
        let mut prev = 0;
        for &(n, m) in pairs {
            if n <= prev {
                return Err(Error::NonIncreasingExponents);
            }
            if m == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            prev = n;
        }
        if p.checked_pow(prev).is_none() {
            return Err(Error::InvalidInput(format!(
                "p^{prev} does not fit in 64 bits"
            )));
        }
        Ok(Self {
            p,
            components: pairs
                .iter()
                .map(|&(exponent, multiplicity)| Component {
                    exponent,
                    multiplicity,
                })
                .collect(),
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group spec serialises")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// `exp(G)`, the largest component exponent.
    pub fn exponent(&self) -> u32 {
        self.components.last().map_or(0, |c| c.exponent)
    }

    pub fn rank(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity as u64).sum()
    }

    /// `log_p |G|`.
    pub fn log_order(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.exponent as u64 * c.multiplicity as u64)
            .sum()
    }

    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(u32::try_from(self.log_order()).ok()?)
    }

    pub fn order_string(&self) -> String {
        match self.order() {
            Some(n) => n.to_string(),
            None => format!("{}^{}", self.p, self.log_order()),
        }
    }

    pub fn is_homocyclic(&self) -> bool {
        self.components.len() == 1
    }

    pub fn coord_exponents(&self) -> Vec<u32> {
        self.components
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.exponent, c.multiplicity as usize))
            .collect()
    }

    /// Component index of each flattened coordinate.
    pub fn coord_blocks(&self) -> Vec<usize> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| std::iter::repeat_n(i, c.multiplicity as usize))
            .collect()
    }

    pub fn coord_moduli(&self) -> Vec<u64> {
        self.coord_exponents()
            .into_iter()
            .map(|e| self.p.pow(e))
            .collect()
    }

    pub fn zero(&self) -> Element {
        Element {
            coords: vec![0; self.rank() as usize],
        }
    }

    /// The first generator of component `block`.
    pub fn generator(&self, block: usize) -> Element {
        let mut coords = vec![0; self.rank() as usize];
        let t = self.coord_blocks().iter().position(|&b| b == block);
        if let Some(t) = t {
            coords[t] = 1;
        }
        Element { coords }
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<Element> {
        let a = Element { coords };
        self.check(&a)?;
        Ok(a)
    }

    fn check(&self, a: &Element) -> Result<()> {
        let moduli = self.coord_moduli();
        if a.coords.len() != moduli.len() || a.coords.iter().zip(&moduli).any(|(&x, &m)| x >= m) {
            return Err(Error::MismatchedParent);
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(self.coord_moduli())
            .map(|((&x, &y), m)| ((x as u128 + y as u128) % m as u128) as u64)
            .collect();
        Ok(Element { coords })
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .zip(self.coord_moduli())
            .map(|(&x, m)| (m - x) % m)
            .collect();
        Ok(Element { coords })
    }

    pub fn smul(&self, c: i64, a: &Element) -> Result<Element> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .zip(self.coord_moduli())
            .map(|(&x, m)| {
                let c = c.rem_euclid(m as i64) as u64;
                mulmod(c, x, m)
            })
            .collect();
        Ok(Element { coords })
    }

    /// `min{k : p^k a = 0}`.
    pub fn element_exponent(&self, a: &Element) -> u32 {
        a.coords
            .iter()
            .zip(self.coord_exponents())
            .filter(|(&x, _)| x != 0)
            .map(|(&x, e)| e - valuation(x, self.p))
            .max()
            .unwrap_or(0)
    }

    /// Largest `h` with `a ∈ p^h G`; infinite for zero.
    pub fn height(&self, a: &Element) -> Height {
        a.coords
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| valuation(x, self.p))
            .min()
            .map_or(Height::Infinite, Height::Finite)
    }

    /// `dim p^κG[p]`: socle coordinates survive up to height `e_t - 1`.
    pub fn socle_slice_dim(&self, kappa: u32) -> u64 {
        self.components
            .iter()
            .filter(|c| c.exponent > kappa)
            .map(|c| c.multiplicity as u64)
            .sum()
    }

    /// `u_κ = dim(p^κG[p] / p^{κ+1}G[p])`.
    pub fn ulm_invariant(&self, kappa: u32) -> u64 {
        self.socle_slice_dim(kappa) - self.socle_slice_dim(kappa + 1)
    }

    /// `u_0, …, u_{e-1}`; every later invariant is zero.
    pub fn ulm_invariants(&self) -> Vec<u64> {
        (0..self.exponent())
            .map(|k| self.ulm_invariant(k))
            .collect()
    }

    /// Value predicted for `u_κ` by a component-indexing convention.
    pub fn ulm_by_convention(&self, kappa: u32, convention: UlmConvention) -> u64 {
        let shift = match convention {
            UlmConvention::Shifted => 1,
            UlmConvention::Literal => 0,
        };
        self.components
            .iter()
            .filter(|c| c.exponent - shift == kappa)
            .map(|c| c.multiplicity as u64)
            .sum()
    }

    /// All `|G|` elements in index order.
    pub fn enumerate_elements(&self, budget: &Budget) -> Result<impl Iterator<Item = Element>> {
        let size = self
            .order()
            .filter(|&n| n <= budget.max_elements)
            .ok_or_else(|| Error::GroupTooLarge {
                size: self.order_string(),
                limit: budget.max_elements,
            })?;
        let arith = CyclicProduct::new(self.coord_moduli()).expect("order fits");
        Ok((0..size as usize).map(move |x| Element {
            coords: arith.decode(x),
        }))
    }
}

fn superscript(k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .bytes()
        .map(|d| DIGITS[(d - b'0') as usize])
        .collect()
}

/// `p^k` written compactly: empty for `k = 0`, `p` for `k = 1`, `p²` and so on.
pub fn p_power(k: u32) -> String {
    match k {
        0 => String::new(),
        1 => "p".into(),
        _ => format!("p{}", superscript(k)),
    }
}

/// Generator letter of component `i`: `a`, `b`, …, then `x10`, `x11`, ….
pub fn block_letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// `⊕ p^{α_i} B_i` written as `⟨pa⟩⊕⟨p³b⟩`; `0` when every summand vanishes.
pub fn fi_form_name(g: &GroupSpec, alpha: &[u32]) -> String {
    let parts: Vec<String> = g
        .components()
        .iter()
        .zip(alpha)
        .enumerate()
        .filter(|(_, (c, &a))| a < c.exponent)
        .map(|(i, (c, &a))| {
            let base = format!("⟨{}{}⟩", p_power(a), block_letter(i));
            if c.multiplicity == 1 {
                base
            } else {
                format!("{base}^{}", c.multiplicity)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("⊕")
    }
}

/// `p^κG[p^n]` with the trivial parts dropped: `G`, `pG`, `G[p²]`, `p²G[p³]`.
pub fn fundamental_name(g: &GroupSpec, kappa: u32, n: u32) -> String {
    let e = g.exponent();
    let n = n.min(e);
    if kappa >= n {
        return "0".into();
    }
    let head = format!("{}G", p_power(kappa));
    if n == e {
        head
    } else {
        let pn = if n == 1 { "p".to_string() } else { p_power(n) };
        format!("{head}[{pn}]")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let base = format!("Z({}^{})", self.p, c.exponent);
                if c.multiplicity == 1 {
                    base
                } else {
                    format!("{base}^{}", c.multiplicity)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// How the nonzero Ulm invariants line up with component multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UlmConvention {
    /// `u_{n_i - 1} = m_i`.
    Shifted,
    /// `u_{n_i} = m_i`.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u32> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("∞"),
        }
    }
}

/// An element as reduced residues, one per flattened coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element {
    coords: Vec<u64>,
}

impl Element {
    pub(crate) fn from_coords(coords: Vec<u64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// An explicit subgroup: the set of element indices of a [`GroupTable`].
#[derive(Clone, Debug)]
pub struct Subgroup {
    bits: FixedBitSet,
    /// `(α_1..α_k)` when the subgroup is known to equal `⊕ p^{α_i} B_i`.
    pub fi_form: Option<Vec<u32>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by size, then by element set.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl Subgroup {
    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        Self {
            bits,
            fi_form: None,
        }
    }

    pub fn order(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.bits.contains(idx)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    fn same_parent(&self, other: &Subgroup) -> Result<()> {
        if self.bits.len() != other.bits.len() {
            return Err(Error::MismatchedParent);
        }
        Ok(())
    }

    pub fn leq(&self, other: &Subgroup) -> Result<bool> {
        self.same_parent(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn meet(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(Subgroup::from_bits(bits))
    }
}

/// A fully materialised group: every element has an index in `0..|G|`, and
/// heights and exponents are tabulated.
#[derive(Clone, Debug)]
pub struct GroupTable {
    spec: GroupSpec,
    arith: CyclicProduct,
    coord_exps: Vec<u32>,
    coord_blocks: Vec<usize>,
    heights: Vec<Height>,
    exponents: Vec<u32>,
}

impl GroupTable {
    pub fn new(spec: &GroupSpec, budget: &Budget) -> Result<Self> {
        let size = spec
            .order()
            .filter(|&n| n <= budget.max_group)
            .ok_or_else(|| Error::GroupTooLarge {
                size: spec.order_string(),
                limit: budget.max_group,
            })?;
        let arith = CyclicProduct::new(spec.coord_moduli()).expect("order fits");
        let coord_exps = spec.coord_exponents();
        let p = spec.p();
        let mut heights = Vec::with_capacity(size as usize);
        let mut exponents = Vec::with_capacity(size as usize);
        for x in 0..size as usize {
            let mut h = Height::Infinite;
            let mut e = 0;
            for (t, &et) in coord_exps.iter().enumerate() {
                let d = arith.digit(x, t);
                if d != 0 {
                    let v = valuation(d, p);
                    h = h.min(Height::Finite(v));
                    e = e.max(et - v);
                }
            }
            heights.push(h);
            exponents.push(e);
        }
        Ok(Self {
            spec: spec.clone(),
            arith,
            coord_exps,
            coord_blocks: spec.coord_blocks(),
            heights,
            exponents,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn order(&self) -> usize {
        self.heights.len()
    }

    pub fn coord_exponents(&self) -> &[u32] {
        &self.coord_exps
    }

    pub fn element(&self, idx: usize) -> Element {
        Element {
            coords: self.arith.decode(idx),
        }
    }

    pub fn index(&self, a: &Element) -> Result<usize> {
        self.spec.check(a)?;
        Ok(self.arith.encode(&a.coords))
    }

    pub fn digit(&self, idx: usize, t: usize) -> u64 {
        self.arith.digit(idx, t)
    }

    pub fn height(&self, idx: usize) -> Height {
        self.heights[idx]
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.exponents[idx]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.arith.add(x, y)
    }

    pub fn neg(&self, x: usize) -> usize {
        self.arith.neg(x)
    }

    pub fn smul(&self, c: u64, x: usize) -> usize {
        self.arith.smul(c, x)
    }

    pub fn times_p(&self, x: usize) -> usize {
        self.arith.smul(self.spec.p, x)
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert_range(..);
        let mut s = Subgroup::from_bits(bits);
        s.fi_form = Some(vec![0; self.spec.components.len()]);
        s
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        let mut s = Subgroup::from_bits(bits);
        s.fi_form = Some(self.spec.components.iter().map(|c| c.exponent).collect());
        s
    }

    /// All elements satisfying `pred`; the caller guarantees this is a subgroup.
    pub fn subgroup_where(&self, pred: impl Fn(usize) -> bool) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for x in self.indices() {
            if pred(x) {
                bits.insert(x);
            }
        }
        Subgroup::from_bits(bits)
    }

    pub fn span<I: IntoIterator<Item = usize>>(&self, gens: I) -> Subgroup {
        Subgroup::from_bits(self.arith.span(gens).0)
    }

    /// `p^κG[p^n]`, the elements of height at least `κ` and exponent at most `n`.
    pub fn fundamental(&self, kappa: u32, n: u32) -> Subgroup {
        let mut s = self
            .subgroup_where(|x| self.exponents[x] <= n && self.heights[x] >= Height::Finite(kappa));
        s.fi_form = Some(
            self.spec
                .components
                .iter()
                .map(|c| kappa.max(c.exponent.saturating_sub(n)).min(c.exponent))
                .collect(),
        );
        s
    }

    /// `⊕ p^{α_i} B_i`, generated coordinate by coordinate.
    pub fn from_fi_form(&self, alpha: &[u32]) -> Result<Subgroup> {
        if alpha.len() != self.spec.components.len() {
            return Err(Error::MismatchedParent);
        }
        let gens: Vec<usize> = self
            .coord_blocks
            .iter()
            .enumerate()
            .map(|(t, &b)| {
                let a = alpha[b].min(self.coord_exps[t]);
                self.arith.smul(self.spec.p.pow(a), self.arith.unit(t))
            })
            .collect();
        let mut s = self.span(gens);
        s.fi_form = Some(
            alpha
                .iter()
                .zip(&self.spec.components)
                .map(|(&a, c)| a.min(c.exponent))
                .collect(),
        );
        Ok(s)
    }

    pub fn sum(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
        h.same_parent(k)?;
        if h.bits.len() != self.order() {
            return Err(Error::MismatchedParent);
        }
        let mut bits = h.bits.clone();
        let mut elems: Vec<usize> = h.bits.ones().collect();
        let gens: Vec<usize> = k.bits.ones().collect();
        self.arith.extend_span(&mut bits, &mut elems, gens);
        Ok(Subgroup::from_bits(bits))
    }

    /// Images of `x` under the additive generators `e_{st}` of the endomorphism
    /// ring (`e_{st}` sends coordinate `s` to coordinate `t`, scaled so the map
    /// is well defined).
    pub fn elementary_images(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let r = self.coord_exps.len();
        let p = self.spec.p;
        (0..r).flat_map(move |s| {
            (0..r).map(move |t| {
                let (es, et) = (self.coord_exps[s], self.coord_exps[t]);
                let scale = p.pow(et.saturating_sub(es));
                let v = mulmod(self.arith.digit(x, s), scale, self.arith.moduli()[t]);
                (v * self.arith.unit(t) as u64) as usize
            })
        })
    }

    /// Closure under every endomorphism, tested on additive generators of the ring.
    pub fn is_fully_invariant(&self, h: &Subgroup) -> bool {
        h.indices()
            .all(|x| self.elementary_images(x).all(|y| h.contains(y)))
    }

    /// True when the index set is a subgroup (contains 0, closed under addition).
    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        if !h.contains(0) {
            return false;
        }
        let elems: Vec<usize> = h.indices().collect();
        elems
            .iter()
            .all(|&x| elems.iter().all(|&y| h.contains(self.add(x, y))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(p: u64) -> GroupSpec {
        GroupSpec::new(p, &[(2, 1), (4, 1)]).unwrap()
    }

    #[test]
    fn make_group_examples() {
        let g = example(2);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.order(), Some(64));
        assert_eq!(GroupSpec::new(2, &[(1, 1)]).unwrap().order(), Some(2));
        let h = GroupSpec::new(3, &[(2, 2)]).unwrap();
        assert_eq!(h.order(), Some(81));
        assert_eq!(h.rank(), 2);
    }

    #[test]
    fn make_group_errors() {
        assert_eq!(GroupSpec::new(4, &[(1, 1)]), Err(Error::NonPrime(4)));
        assert_eq!(
            GroupSpec::new(2, &[(2, 1), (2, 1)]),
            Err(Error::NonIncreasingExponents)
        );
        assert_eq!(
            GroupSpec::new(2, &[(0, 1)]),
            Err(Error::NonIncreasingExponents)
        );
        assert_eq!(GroupSpec::new(2, &[(1, 0)]), Err(Error::ZeroMultiplicity));
        assert_eq!(GroupSpec::new(2, &[]), Err(Error::EmptyGroup));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = r#"{"p": 2, "components": [{"exponent": 2, "multiplicity": 1}, {"exponent": 4, "multiplicity": 1}]}"#;
        let g = GroupSpec::from_json(s).unwrap();
        assert_eq!(g, example(2));
        assert_eq!(GroupSpec::from_json(&g.to_json()).unwrap(), g);
        assert!(GroupSpec::from_json(
            r#"{"p": 6, "components": [{"exponent": 1, "multiplicity": 1}]}"#
        )
        .is_err());
        assert!(GroupSpec::from_json("{not json").is_err());
    }

    #[test]
    fn element_arithmetic() {
        let z4 = GroupSpec::new(2, &[(2, 1)]).unwrap();
        let two = z4.element(vec![2]).unwrap();
        assert_eq!(z4.smul(3, &two).unwrap().coords(), &[2]);
        let a = z4.element(vec![3]).unwrap();
        assert_eq!(z4.add(&a, &z4.zero()).unwrap(), a);
        assert!(z4.add(&a, &z4.neg(&a).unwrap()).unwrap().is_zero());
        assert_eq!(z4.smul(-1, &a).unwrap(), z4.neg(&a).unwrap());
        let other = example(2).zero();
        assert_eq!(z4.add(&a, &other), Err(Error::MismatchedParent));
        assert_eq!(z4.element(vec![4]), Err(Error::MismatchedParent));
    }

    #[test]
    fn exponents_and_heights() {
        let g = example(2);
        let b = g.generator(1);
        let a = g.generator(0);
        assert_eq!(g.element_exponent(&g.zero()), 0);
        assert_eq!(g.element_exponent(&b), 4);
        let p2b = g.smul(4, &b).unwrap();
        assert_eq!(g.element_exponent(&p2b), 2);
        assert_eq!(g.height(&g.zero()), Height::Infinite);
        assert_eq!(g.height(&g.smul(2, &a).unwrap()), Height::Finite(1));
        assert_eq!(g.height(&g.smul(8, &b).unwrap()), Height::Finite(3));
    }

    #[test]
    fn ulm_invariants_of_example() {
        let g = example(2);
        assert_eq!(g.ulm_invariants(), vec![0, 1, 0, 1]);
        assert_eq!(g.ulm_invariant(7), 0);
        assert_eq!(GroupSpec::new(5, &[(1, 1)]).unwrap().ulm_invariant(0), 1);
        for k in 0..4 {
            assert_eq!(
                g.ulm_by_convention(k, UlmConvention::Shifted),
                g.ulm_invariant(k)
            );
        }
        assert_ne!(
            g.ulm_by_convention(1, UlmConvention::Literal),
            g.ulm_invariant(1)
        );
    }

    #[test]
    fn enumerate_counts() {
        let b = Budget::default();
        let z2 = GroupSpec::new(2, &[(1, 1)]).unwrap();
        let elems: Vec<_> = z2.enumerate_elements(&b).unwrap().collect();
        assert_eq!(elems.len(), 2);
        assert_eq!(example(2).enumerate_elements(&b).unwrap().count(), 64);
        let g = GroupSpec::new(3, &[(1, 2)]).unwrap();
        assert_eq!(g.enumerate_elements(&b).unwrap().count(), 9);
        let tiny = Budget {
            max_elements: 8,
            ..Budget::default()
        };
        assert!(matches!(
            example(2).enumerate_elements(&tiny),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn fundamental_subgroups_of_example() {
        let g = example(2);
        let t = GroupTable::new(&g, &Budget::default()).unwrap();
        assert_eq!(t.fundamental(0, 4), t.whole());
        let a = t.index(&g.generator(0)).unwrap();
        let b = t.index(&g.generator(1)).unwrap();
        // pG[p^2] = <pa> + <p^2 b>
        let expected = t.span([t.smul(2, a), t.smul(4, b)]);
        let f = t.fundamental(1, 2);
        assert_eq!(f, expected);
        assert_eq!(f.fi_form, Some(vec![1, 2]));
        assert_eq!(t.from_fi_form(&[1, 2]).unwrap(), f);
        assert_eq!(t.fundamental(3, 1), t.span([t.smul(8, b)]));
    }

    #[test]
    fn names() {
        let g = example(2);
        assert_eq!(fi_form_name(&g, &[1, 3]), "⟨pa⟩⊕⟨p³b⟩");
        assert_eq!(fi_form_name(&g, &[2, 4]), "0");
        assert_eq!(fundamental_name(&g, 0, 4), "G");
        assert_eq!(fundamental_name(&g, 1, 2), "pG[p²]");
        assert_eq!(fundamental_name(&g, 0, 1), "G[p]");
        let h = GroupSpec::new(3, &[(1, 2)]).unwrap();
        assert_eq!(fi_form_name(&h, &[0]), "⟨a⟩^2");
    }

    #[test]
    fn subgroup_lattice_operations() {
        let g = example(2);
        let t = GroupTable::new(&g, &Budget::default()).unwrap();
        let h = t.fundamental(1, 2);
        assert_eq!(t.sum(&h, &t.trivial()).unwrap(), h);
        assert!(t.fundamental(3, 4).leq(&t.fundamental(1, 4)).unwrap());
        assert!(t.fundamental(1, 2).leq(&t.fundamental(0, 3)).unwrap());
        let other =
            GroupTable::new(&GroupSpec::new(2, &[(1, 1)]).unwrap(), &Budget::default()).unwrap();
        assert_eq!(h.leq(&other.whole()), Err(Error::MismatchedParent));
        assert!(t.is_fully_invariant(&h));
        assert!(!t.is_fully_invariant(&t.span([t.index(&g.generator(0)).unwrap()])));
    }
}
