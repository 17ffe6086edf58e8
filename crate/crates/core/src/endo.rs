//! Endomorphism rings of finite p-groups as constrained integer matrices, their
//! two-sided ideals, and the dagger maps between ideals and fully invariant
//! subgroups.
//!
//! Maps act on the right: `a(fg) = (af)g`. Row `s` of a matrix is the image of
//! the `s`-th coordinate generator. Entry `(s,t)` lives in `Z/p^{e_t}` and is
//! divisible by `p^{max(0, e_t - e_s)}`, so the additive group of the ring is
//! a product of cyclic groups of orders `p^{min(e_s, e_t)}`; endomorphisms are
//! packed as indices of that product.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic::{mulmod, CyclicProduct};
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, GroupTable, Subgroup};
use crate::Budget;

/// An endomorphism as an explicit matrix, row = source coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Endo {
    pub matrix: Vec<Vec<u64>>,
}

/// A two-sided ideal as a set of ring indices.
#[derive(Clone, Debug)]
pub struct Ideal {
    bits: FixedBitSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Ideal {}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state)
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl Ideal {
    pub fn order(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, f: usize) -> bool {
        self.bits.contains(f)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn leq(&self, other: &Ideal) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn meet(&self, other: &Ideal) -> Ideal {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ideal { bits }
    }
}

#[derive(Clone, Debug)]
pub struct EndoRing {
    spec: GroupSpec,
    exps: Vec<u32>,
    /// `p^{max(0, e_t - e_s)}` per packed position.
    scale: Vec<u64>,
    additive: CyclicProduct,
    group: CyclicProduct,
}

impl EndoRing {
    /// `|E| = Π p^{min(e_s, e_t)}`, or `None` on overflow.
    pub fn order_of(g: &GroupSpec) -> Option<u64> {
        let exps = g.coord_exponents();
        let mut log = 0u64;
        for &es in &exps {
            for &et in &exps {
                log += es.min(et) as u64;
            }
        }
        g.p().checked_pow(u32::try_from(log).ok()?)
    }

    pub fn new(g: &GroupSpec, budget: &Budget) -> Result<Self> {
        let too_large = || {
            let exps = g.coord_exponents();
            let log: u64 = exps
                .iter()
                .flat_map(|&s| exps.iter().map(move |&t| s.min(t) as u64))
                .sum();
            Error::RingTooLarge {
                size: format!("{}^{}", g.p(), log),
                limit: budget.max_ring,
            }
        };
        match Self::order_of(g) {
            Some(n) if n <= budget.max_ring => {}
            _ => return Err(too_large()),
        }
        let p = g.p();
        let exps = g.coord_exponents();
        let r = exps.len();
        let mut moduli = Vec::with_capacity(r * r);
        let mut scale = Vec::with_capacity(r * r);
        for s in 0..r {
            for t in 0..r {
                moduli.push(p.pow(exps[s].min(exps[t])));
                scale.push(p.pow(exps[t].saturating_sub(exps[s])));
            }
        }
        Ok(Self {
            spec: g.clone(),
            additive: CyclicProduct::new(moduli).expect("checked above"),
            group: CyclicProduct::new(g.coord_moduli()).ok_or_else(too_large)?,
            exps,
            scale,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.additive.size() as usize
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    fn rank(&self) -> usize {
        self.exps.len()
    }

    fn modulus(&self, t: usize) -> u64 {
        self.group.moduli()[t]
    }

    /// Matrix entry `(s,t)` of the endomorphism with index `f`.
    pub fn entry(&self, f: usize, s: usize, t: usize) -> u64 {
        let k = s * self.rank() + t;
        self.additive.digit(f, k) * self.scale[k]
    }

    pub fn endo(&self, f: usize) -> Endo {
        let r = self.rank();
        Endo {
            matrix: (0..r)
                .map(|s| (0..r).map(|t| self.entry(f, s, t)).collect())
                .collect(),
        }
    }

    fn pack(&self, m: &[Vec<u64>]) -> usize {
        let r = self.rank();
        let digits: Vec<u64> = (0..r * r)
            .map(|k| m[k / r][k % r] / self.scale[k])
            .collect();
        self.additive.encode(&digits)
    }

    /// Validates shape and divisibility, reducing entries first.
    pub fn index(&self, f: &Endo) -> Result<usize> {
        let r = self.rank();
        if f.matrix.len() != r || f.matrix.iter().any(|row| row.len() != r) {
            return Err(Error::MismatchedParent);
        }
        let mut m = f.matrix.clone();
        for (s, row) in m.iter_mut().enumerate() {
            for (t, x) in row.iter_mut().enumerate() {
                *x %= self.modulus(t);
                let d = self.scale[s * r + t];
                if !x.is_multiple_of(d) {
                    return Err(Error::InvalidInput(format!(
                        "entry ({s},{t}) = {x} is not divisible by {d}"
                    )));
                }
            }
        }
        Ok(self.pack(&m))
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn identity(&self) -> usize {
        let r = self.rank();
        let m: Vec<Vec<u64>> = (0..r)
            .map(|s| (0..r).map(|t| u64::from(s == t)).collect())
            .collect();
        self.pack(&m)
    }

    /// The additive generator with digit 1 at `(s,t)`.
    pub fn elementary(&self, s: usize, t: usize) -> usize {
        self.additive.unit(s * self.rank() + t)
    }

    pub fn add(&self, f: usize, g: usize) -> usize {
        self.additive.add(f, g)
    }

    pub fn smul(&self, c: u64, f: usize) -> usize {
        self.additive.smul(c, f)
    }

    /// `fg`: first `f`, then `g`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        let r = self.rank();
        let mut m = vec![vec![0u64; r]; r];
        for (s, row) in m.iter_mut().enumerate() {
            for (u, cell) in row.iter_mut().enumerate() {
                let mo = self.modulus(u);
                let mut acc = 0u64;
                for t in 0..r {
                    let x = self.entry(f, s, t);
                    if x != 0 {
                        acc = (acc + mulmod(x, self.entry(g, t, u), mo)) % mo;
                    }
                }
                *cell = acc;
            }
        }
        self.pack(&m)
    }

    /// `af` on table indices.
    pub fn apply(&self, x: usize, f: usize) -> usize {
        let r = self.rank();
        let mut out = 0usize;
        for t in 0..r {
            let mo = self.modulus(t);
            let mut acc = 0u64;
            for s in 0..r {
                let d = self.group.digit(x, s);
                if d != 0 {
                    acc = (acc + mulmod(d, self.entry(f, s, t), mo)) % mo;
                }
            }
            out += acc as usize * self.group.unit(t);
        }
        out
    }

    pub fn apply_element(&self, a: &Element, f: &Endo) -> Result<Element> {
        let x = self.group_index(a)?;
        let f = self.index(f)?;
        Ok(Element::from_coords(self.group.decode(self.apply(x, f))))
    }

    fn group_index(&self, a: &Element) -> Result<usize> {
        let coords = a.coords();
        if coords.len() != self.rank()
            || coords
                .iter()
                .zip(self.group.moduli())
                .any(|(&c, &m)| c >= m)
        {
            return Err(Error::MismatchedParent);
        }
        Ok(self.group.encode(coords))
    }

    /// Row images `e_s f`, which generate `Gf`.
    pub fn row_images(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).map(move |s| self.apply(self.group.unit(s), f))
    }

    pub fn image(&self, t: &GroupTable, f: usize) -> Subgroup {
        t.span(self.row_images(f))
    }

    /// `rank(Gf) = dim (Gf)[p]`.
    pub fn endo_rank(&self, t: &GroupTable, f: usize) -> u32 {
        let socle = self
            .image(t, f)
            .indices()
            .filter(|&x| t.exponent(x) <= 1)
            .count();
        let mut n = socle as u64;
        let mut d = 0;
        while n > 1 {
            n /= self.spec.p();
            d += 1;
        }
        d
    }

    fn ideal_from(&self, gens: impl IntoIterator<Item = usize>) -> Ideal {
        Ideal {
            bits: self.additive.span(gens).0,
        }
    }

    /// Least two-sided ideal containing `gens`: spanned by `u s v` for
    /// additive generators `u`, `v` of the ring.
    pub fn ideal_generated(&self, gens: &[usize]) -> Ideal {
        let r = self.rank();
        let elementary: Vec<usize> = (0..r * r).map(|k| self.elementary(k / r, k % r)).collect();
        let mut products = Vec::new();
        for &s in gens {
            for &u in &elementary {
                let us = self.compose(u, s);
                if us == 0 {
                    continue;
                }
                for &v in &elementary {
                    products.push(self.compose(us, v));
                }
            }
        }
        self.ideal_from(products)
    }

    pub fn zero_ideal(&self) -> Ideal {
        self.ideal_from([])
    }

    pub fn whole_ideal(&self) -> Ideal {
        self.ideal_from((0..self.rank() * self.rank()).map(|k| self.additive.unit(k)))
    }

    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut bits = i.bits.clone();
        let mut elems: Vec<usize> = bits.ones().collect();
        self.additive
            .extend_span(&mut bits, &mut elems, j.bits.ones());
        Ideal { bits }
    }

    /// Whether `S` is closed under addition and two-sided multiplication.
    pub fn is_ideal(&self, i: &Ideal) -> bool {
        let all: Vec<usize> = self.indices().collect();
        i.contains(0)
            && i.members().all(|f| {
                i.members().all(|g| i.contains(self.add(f, g)))
                    && all
                        .iter()
                        .all(|&u| i.contains(self.compose(u, f)) && i.contains(self.compose(f, u)))
            })
    }

    /// Principal ideals, deduplicated, then the sum-closure fixpoint.
    pub fn enumerate_ideals(&self, budget: &Budget) -> Result<Vec<Ideal>> {
        if self.size() as u64 > budget.max_ideals {
            return Err(Error::RingTooLarge {
                size: self.size().to_string(),
                limit: budget.max_ideals,
            });
        }
        let principal: HashSet<Ideal> = self
            .indices()
            .into_par_iter()
            .map(|f| self.ideal_generated(&[f]))
            .collect();
        let mut principal: Vec<Ideal> = principal.into_iter().collect();
        principal.sort();
        let mut seen: HashSet<Ideal> = principal.iter().cloned().collect();
        let mut frontier = principal.clone();
        while !frontier.is_empty() {
            let found: HashSet<Ideal> = frontier
                .par_iter()
                .flat_map_iter(|i| {
                    principal
                        .iter()
                        .filter(|q| !q.leq(i))
                        .map(|q| self.ideal_sum(i, q))
                        .collect::<Vec<_>>()
                })
                .collect();
            frontier = found.into_iter().filter(|i| !seen.contains(i)).collect();
            frontier.sort();
            seen.extend(frontier.iter().cloned());
        }
        let mut out: Vec<Ideal> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// `H† = {f : Gf ≤ H}`.
    pub fn dagger_subgroup(&self, t: &GroupTable, h: &Subgroup) -> Result<Ideal> {
        if !t.is_fully_invariant(h) {
            return Err(Error::NotFullyInvariant);
        }
        let mut bits = FixedBitSet::with_capacity(self.size());
        for f in self.indices() {
            if self.row_images(f).all(|y| h.contains(y)) {
                bits.insert(f);
            }
        }
        Ok(Ideal { bits })
    }

    /// `I† = Σ_{f ∈ I} Gf`.
    pub fn dagger_ideal(&self, t: &GroupTable, i: &Ideal) -> Subgroup {
        t.span(i.members().flat_map(|f| self.row_images(f)))
    }

    /// `p^nE`.
    pub fn power_ideal(&self, n: u32) -> Ideal {
        let c = self.spec.p().pow(n.min(self.spec.exponent()));
        let mut bits = FixedBitSet::with_capacity(self.size());
        for f in self.indices() {
            bits.insert(self.smul(c, f));
        }
        Ideal { bits }
    }

    /// `E[p^n] = {f : p^n f = 0}`.
    pub fn torsion_ideal(&self, n: u32) -> Ideal {
        let c = self.spec.p().pow(n.min(self.spec.exponent()));
        let mut bits = FixedBitSet::with_capacity(self.size());
        for f in self.indices() {
            if self.smul(c, f) == 0 {
                bits.insert(f);
            }
        }
        Ideal { bits }
    }

    /// `(p^nE, E[p^n])`.
    pub fn special_ideals(&self, n: u32) -> (Ideal, Ideal) {
        (self.power_ideal(n), self.torsion_ideal(n))
    }

    /// A small additive generating set, chosen greedily in index order.
    pub fn ideal_generators(&self, i: &Ideal) -> Vec<usize> {
        let mut bits = FixedBitSet::with_capacity(self.size());
        bits.insert(0);
        let mut elems = vec![0];
        let mut gens = Vec::new();
        for f in i.members() {
            if !bits.contains(f) {
                gens.push(f);
                self.additive.extend_span(&mut bits, &mut elems, [f]);
            }
        }
        gens
    }

    pub fn ideal_to_json(&self, i: &Ideal) -> serde_json::Value {
        let gens: Vec<Endo> = self
            .ideal_generators(i)
            .into_iter()
            .map(|f| self.endo(f))
            .collect();
        serde_json::json!({ "order": i.order(), "generators": gens })
    }
}

/// Whether an object equals its double dagger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DaggerReport {
    pub subject: String,
    pub subject_order: usize,
    pub dagger_order: usize,
    pub double_dagger_order: usize,
    pub closed: bool,
    /// Members of exactly one of `x` and `x††`, at most a few.
    pub witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 4;

pub fn subgroup_dagger_report(
    ring: &EndoRing,
    t: &GroupTable,
    subject: &str,
    h: &Subgroup,
) -> Result<DaggerReport> {
    let d = ring.dagger_subgroup(t, h)?;
    let dd = ring.dagger_ideal(t, &d);
    let witnesses = h
        .indices()
        .filter(|&x| !dd.contains(x))
        .chain(dd.indices().filter(|&x| !h.contains(x)))
        .take(MAX_WITNESSES)
        .map(|x| format!("{:?}", t.element(x).coords()))
        .collect();
    Ok(DaggerReport {
        subject: subject.to_string(),
        subject_order: h.order(),
        dagger_order: d.order(),
        double_dagger_order: dd.order(),
        closed: &dd == h,
        witnesses,
    })
}

pub fn ideal_dagger_report(
    ring: &EndoRing,
    t: &GroupTable,
    subject: &str,
    i: &Ideal,
) -> Result<DaggerReport> {
    let d = ring.dagger_ideal(t, i);
    let dd = ring.dagger_subgroup(t, &d)?;
    let witnesses = i
        .members()
        .filter(|&f| !dd.contains(f))
        .chain(dd.members().filter(|&f| !i.contains(f)))
        .take(MAX_WITNESSES)
        .map(|f| format!("{:?}", ring.endo(f).matrix))
        .collect();
    Ok(DaggerReport {
        subject: subject.to_string(),
        subject_order: i.order(),
        dagger_order: d.order(),
        double_dagger_order: dd.order(),
        closed: &dd == i,
        witnesses,
    })
}

/// All enumerated ideals `I` with `I† = H`.
pub fn dagger_inv_class(
    ring: &EndoRing,
    t: &GroupTable,
    ideals: &[Ideal],
    h: &Subgroup,
) -> Vec<Ideal> {
    ideals
        .iter()
        .filter(|i| &ring.dagger_ideal(t, i) == h)
        .cloned()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionSource {
    Recipe,
    Search,
}

#[derive(Clone, Debug)]
pub struct Collision {
    pub first: Ideal,
    pub second: Ideal,
    pub image: Subgroup,
    pub source: CollisionSource,
}

/// Endomorphisms `f: a ↦ p^{m-1}b, b ↦ p^{m-1}b` and `g: a ↦ 0, b ↦ p^{m-1}b`,
/// where `a` generates the first component and `b` the last one.
pub fn collision_recipe(ring: &EndoRing) -> Option<(usize, usize)> {
    let g = ring.spec();
    if g.is_homocyclic() {
        return None;
    }
    let r = ring.rank();
    let (a, b) = (0, r - 1);
    let m = ring.exps[b];
    let top = g.p().pow(m - 1);
    let mut fm = vec![vec![0u64; r]; r];
    fm[a][b] = top;
    fm[b][b] = top;
    let mut gm = vec![vec![0u64; r]; r];
    gm[b][b] = top;
    let f = ring.index(&Endo { matrix: fm }).ok()?;
    let gi = ring.index(&Endo { matrix: gm }).ok()?;
    Some((f, gi))
}

/// Distinct ideals with the same dagger image: the recipe pair when it works,
/// otherwise the first collision among all enumerated ideals.
pub fn find_dagger_collision(
    ring: &EndoRing,
    t: &GroupTable,
    budget: &Budget,
) -> Result<Option<Collision>> {
    if let Some((f, g)) = collision_recipe(ring) {
        let i = ring.ideal_generated(&[f]);
        let j = ring.ideal_generated(&[g]);
        let (hi, hj) = (ring.dagger_ideal(t, &i), ring.dagger_ideal(t, &j));
        if i != j && hi == hj {
            return Ok(Some(Collision {
                first: i,
                second: j,
                image: hi,
                source: CollisionSource::Recipe,
            }));
        }
    }
    let ideals = ring.enumerate_ideals(budget)?;
    let mut by_image: std::collections::HashMap<Subgroup, usize> = Default::default();
    for (k, i) in ideals.iter().enumerate() {
        let h = ring.dagger_ideal(t, i);
        if let Some(&prev) = by_image.get(&h) {
            return Ok(Some(Collision {
                first: ideals[prev].clone(),
                second: i.clone(),
                image: h,
                source: CollisionSource::Search,
            }));
        }
        by_image.insert(h, k);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64, pairs: &[(u32, u32)]) -> (GroupTable, EndoRing) {
        let g = GroupSpec::new(p, pairs).unwrap();
        let b = Budget::default();
        (
            GroupTable::new(&g, &b).unwrap(),
            EndoRing::new(&g, &b).unwrap(),
        )
    }

    #[test]
    fn ring_orders() {
        assert_eq!(setup(2, &[(2, 1)]).1.size(), 4);
        assert_eq!(setup(2, &[(2, 1), (4, 1)]).1.size(), 1024);
        assert_eq!(setup(2, &[(1, 2)]).1.size(), 16);
        assert_eq!(setup(2, &[(1, 1), (2, 1)]).1.size(), 32);
        let tiny = Budget {
            max_ring: 100,
            ..Budget::default()
        };
        let g = GroupSpec::new(2, &[(2, 1), (4, 1)]).unwrap();
        assert!(matches!(
            EndoRing::new(&g, &tiny),
            Err(Error::RingTooLarge { .. })
        ));
    }

    #[test]
    fn identity_and_zero() {
        let (t, e) = setup(2, &[(2, 1), (4, 1)]);
        let id = e.identity();
        for x in t.indices() {
            assert_eq!(e.apply(x, id), x);
            assert_eq!(e.apply(x, e.zero()), 0);
        }
    }

    #[test]
    fn composition_is_f_then_g() {
        let (t, e) = setup(2, &[(1, 1), (2, 1)]);
        for f in e.indices() {
            for g in e.indices() {
                let fg = e.compose(f, g);
                for x in t.indices() {
                    assert_eq!(e.apply(x, fg), e.apply(e.apply(x, f), g));
                }
            }
        }
    }

    #[test]
    fn explicit_matrices() {
        let (_, e) = setup(2, &[(1, 1), (2, 1)]);
        let f = Endo {
            matrix: vec![vec![0, 2], vec![0, 2]],
        };
        let i = e.index(&f).unwrap();
        assert_eq!(e.endo(i), f);
        let bad = Endo {
            matrix: vec![vec![0, 1], vec![0, 0]],
        };
        assert!(e.index(&bad).is_err());
        let a = GroupSpec::new(2, &[(1, 1), (2, 1)]).unwrap().generator(0);
        assert_eq!(e.apply_element(&a, &f).unwrap().coords(), &[0, 2]);
    }

    #[test]
    fn generated_ideals() {
        let (_, e) = setup(2, &[(2, 1), (4, 1)]);
        assert!(e.ideal_generated(&[0]).is_zero());
        assert_eq!(e.ideal_generated(&[e.identity()]), e.whole_ideal());
        let p3 = e.smul(8, e.identity());
        assert_eq!(e.ideal_generated(&[p3]), e.power_ideal(3));
    }

    #[test]
    fn matrix_ring_over_f2_is_simple() {
        let (_, e) = setup(2, &[(1, 2)]);
        let ideals = e.enumerate_ideals(&Budget::default()).unwrap();
        assert_eq!(ideals.len(), 2);
    }

    #[test]
    fn homocyclic_ideals_are_a_chain() {
        let (_, e) = setup(3, &[(3, 1)]);
        let ideals = e.enumerate_ideals(&Budget::default()).unwrap();
        let expected: Vec<Ideal> = (0..=3).rev().map(|k| e.power_ideal(k)).collect();
        assert_eq!(ideals, expected);
    }

    #[test]
    fn daggers_of_extremes() {
        let (t, e) = setup(2, &[(1, 1), (2, 1)]);
        assert_eq!(e.dagger_subgroup(&t, &t.whole()).unwrap(), e.whole_ideal());
        assert!(e.dagger_subgroup(&t, &t.trivial()).unwrap().is_zero());
        assert!(e.dagger_ideal(&t, &e.zero_ideal()).is_trivial());
        assert_eq!(e.dagger_ideal(&t, &e.whole_ideal()), t.whole());
    }

    #[test]
    fn ranks() {
        let (t, e) = setup(2, &[(2, 1), (4, 1)]);
        assert_eq!(e.endo_rank(&t, 0), 0);
        assert_eq!(e.endo_rank(&t, e.identity()), 2);
        let f = e
            .index(&Endo {
                matrix: vec![vec![2, 0], vec![0, 8]],
            })
            .unwrap();
        assert_eq!(e.endo_rank(&t, f), 2);
    }

    #[test]
    fn recipe_collision_on_z2_z4() {
        let (t, e) = setup(2, &[(1, 1), (2, 1)]);
        let c = find_dagger_collision(&e, &t, &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(c.source, CollisionSource::Recipe);
        assert_ne!(c.first, c.second);
        assert_eq!(e.dagger_ideal(&t, &c.first), e.dagger_ideal(&t, &c.second));
    }
}
