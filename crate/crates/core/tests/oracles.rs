mod common;

use std::collections::BTreeSet;

use common::{group, precedes, set_of, Naive, Set};
use fullinv_core::endo::EndoRing;
use fullinv_core::indicator::{enumerate_admissible, ind_of_index, indicator_subgroup};
use fullinv_core::lattice::FiLattice;
use fullinv_core::ulm::{CardinalValue, Ordinal};
use fullinv_core::{Budget, GroupSpec, GroupTable, Indicator};
use proptest::prelude::*;

const SMALL: &[(u64, &[(u32, u32)])] = &[
    (2, &[(1, 1)]),
    (2, &[(3, 1)]),
    (3, &[(2, 1)]),
    (2, &[(1, 2)]),
    (2, &[(1, 1), (2, 1)]),
    (2, &[(1, 1), (3, 1)]),
    (3, &[(1, 1), (2, 1)]),
    (2, &[(1, 2), (2, 1)]),
    (2, &[(2, 1), (4, 1)]),
    (5, &[(1, 1), (2, 1)]),
];

#[test]
fn order_and_rank() {
    for &(p, comps) in SMALL {
        let naive = Naive::new(p, comps);
        let g = naive.spec();
        assert_eq!(g.order(), Some(naive.elems.len() as u64), "{g}");
        assert_eq!(g.rank(), naive.exps.len() as u64);
    }
    assert_eq!(group(3, &[(2, 2)]).order(), Some(81));
}

#[test]
fn indicators_match_naive_heights() {
    let budget = Budget::default();
    for &(p, comps) in SMALL {
        let naive = Naive::new(p, comps);
        let t = GroupTable::new(&naive.spec(), &budget).unwrap();
        for i in t.indices() {
            let x = t.element(i).coords().to_vec();
            assert_eq!(
                ind_of_index(&t, i).entries(),
                naive.ind(&x).as_slice(),
                "{x:?}"
            );
        }
    }
}

#[test]
fn realizable_indicators_are_exactly_the_element_indicators() {
    let budget = Budget::default();
    for &(p, comps) in SMALL {
        let naive = Naive::new(p, comps);
        let g = naive.spec();
        let seen: BTreeSet<Vec<u32>> = naive.elems.iter().map(|x| naive.ind(x)).collect();
        let realizable: BTreeSet<Vec<u32>> = enumerate_admissible(&g, &budget)
            .unwrap()
            .into_iter()
            .filter(|s| s.is_realizable(&g))
            .map(|s| s.entries().to_vec())
            .collect();
        assert_eq!(seen, realizable, "{g}");
    }
}

#[test]
fn indicator_subgroups_match_naive_filter() {
    let budget = Budget::default();
    for &(p, comps) in SMALL {
        let naive = Naive::new(p, comps);
        let g = naive.spec();
        let t = GroupTable::new(&g, &budget).unwrap();
        let inds: Vec<Vec<u32>> = naive.elems.iter().map(|x| naive.ind(x)).collect();
        for s in enumerate_admissible(&g, &budget).unwrap() {
            let oracle: Set = naive
                .elems
                .iter()
                .zip(&inds)
                .filter(|(_, i)| precedes(s.entries(), i))
                .map(|(x, _)| x.clone())
                .collect();
            assert_eq!(set_of(&t, &indicator_subgroup(&t, &s)), oracle, "{g} {s}");
        }
    }
}

#[test]
fn homocyclic_lattice_is_a_chain_of_powers() {
    let budget = Budget::default();
    for (p, n) in [(2u64, 1u32), (2, 3), (3, 2), (2, 5)] {
        let naive = Naive::new(p, &[(n, 1)]);
        let t = GroupTable::new(&naive.spec(), &budget).unwrap();
        let got: BTreeSet<Set> = FiLattice::enumerate(&t, &budget)
            .unwrap()
            .nodes()
            .iter()
            .map(|h| set_of(&t, h))
            .collect();
        let chain: BTreeSet<Set> = (0..=n).map(|k| naive.fundamental(k, n)).collect();
        assert_eq!(got, chain);
        assert_eq!(got.len(), n as usize + 1);
    }
}

#[test]
fn endomorphisms_match_naive_homs() {
    let budget = Budget::default();
    for &(p, comps) in SMALL {
        let naive = Naive::new(p, comps);
        let g = naive.spec();
        let ring = EndoRing::new(&g, &budget).unwrap();
        let homs = naive.homs();
        assert_eq!(ring.size(), homs.len(), "{g}");
        let mine: BTreeSet<Vec<Vec<u64>>> = ring.indices().map(|f| ring.endo(f).matrix).collect();
        let theirs: BTreeSet<Vec<Vec<u64>>> = homs.into_iter().collect();
        assert_eq!(mine, theirs, "{g}");
    }
}

#[test]
fn composition_and_application_match_naive() {
    let budget = Budget::default();
    let naive = Naive::new(2, &[(1, 1), (3, 1)]);
    let g = naive.spec();
    let t = GroupTable::new(&g, &budget).unwrap();
    let ring = EndoRing::new(&g, &budget).unwrap();
    for f in ring.indices().step_by(7) {
        let fm = ring.endo(f).matrix;
        for h in ring.indices().step_by(11) {
            let hm = ring.endo(h).matrix;
            // f then h on each generator
            let expect: Vec<Vec<u64>> = fm.iter().map(|y| naive.apply(&hm, y)).collect();
            assert_eq!(ring.endo(ring.compose(f, h)).matrix, expect);
        }
        for x in t.indices() {
            let xe = t.element(x).coords().to_vec();
            assert_eq!(
                t.element(ring.apply(x, f)).coords(),
                naive.apply(&fm, &xe).as_slice()
            );
        }
    }
}

/// Two-sided ideals by brute force: spans of `{u f v}`, closed under sums.
fn naive_ideal_count(naive: &Naive) -> usize {
    let homs = naive.homs();
    let compose = |f: &[Vec<u64>], h: &[Vec<u64>]| -> Vec<Vec<u64>> {
        f.iter().map(|y| naive.apply(h, y)).collect()
    };
    let add = |f: &[Vec<u64>], h: &[Vec<u64>]| -> Vec<Vec<u64>> {
        f.iter().zip(h).map(|(a, b)| naive.add(a, b)).collect()
    };
    let span = |gens: Vec<Vec<Vec<u64>>>| -> BTreeSet<Vec<Vec<u64>>> {
        let zero: Vec<Vec<u64>> = vec![naive.zero(); naive.exps.len()];
        let mut set = BTreeSet::from([zero.clone()]);
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = add(&x, g);
                if set.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        set
    };
    let principal: BTreeSet<BTreeSet<Vec<Vec<u64>>>> = homs
        .iter()
        .map(|f| {
            let mut gens = vec![];
            for u in &homs {
                let uf = compose(u, f);
                for v in &homs {
                    gens.push(compose(&uf, v));
                }
            }
            span(gens)
        })
        .collect();
    let mut all = principal.clone();
    loop {
        let mut new = vec![];
        for a in &all {
            for b in &principal {
                let s = span(a.iter().chain(b).cloned().collect());
                if !all.contains(&s) {
                    new.push(s);
                }
            }
        }
        if new.is_empty() {
            return all.len();
        }
        all.extend(new);
    }
}

#[test]
fn ideal_counts_match_naive() {
    let budget = Budget::default();
    let shapes: [(u64, &[(u32, u32)]); 5] = [
        (2, &[(2, 1)]),
        (2, &[(3, 1)]),
        (2, &[(1, 2)]),
        (2, &[(1, 1), (2, 1)]),
        (2, &[(1, 1), (3, 1)]),
    ];
    for (p, comps) in shapes {
        let naive = Naive::new(p, comps);
        let g = naive.spec();
        let ring = EndoRing::new(&g, &budget).unwrap();
        assert_eq!(
            ring.enumerate_ideals(&budget).unwrap().len(),
            naive_ideal_count(&naive),
            "{g}"
        );
    }
}

#[test]
fn z2_z4_ring_has_order_32() {
    let g = group(2, &[(1, 1), (2, 1)]);
    assert_eq!(EndoRing::order_of(&g), Some(32));
}

fn arb_group() -> impl Strategy<Value = GroupSpec> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        prop::collection::btree_set(1u32..5, 1..3),
        prop::collection::vec(1u32..3, 3),
    )
        .prop_filter_map("small enough", |(p, exps, mults)| {
            let comps: Vec<(u32, u32)> = exps.into_iter().zip(mults).collect();
            let g = GroupSpec::new(p, &comps).ok()?;
            (g.order()? <= 1 << 12).then_some(g)
        })
}

fn arb_indicator() -> impl Strategy<Value = Indicator> {
    prop::collection::btree_set(0u32..8, 0..5)
        .prop_map(|s| Indicator::new(s.into_iter().collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_json_round_trips(g in arb_group()) {
        prop_assert_eq!(GroupSpec::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn ulm_invariants_sum_to_rank(g in arb_group()) {
        prop_assert_eq!(g.ulm_invariants().iter().sum::<u64>(), g.rank());
    }

    #[test]
    fn element_addition_is_a_group(g in arb_group(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let t = GroupTable::new(&g, &Budget::default()).unwrap();
        let n = t.order() as u64;
        let (a, b, c) = ((a % n) as usize, (b % n) as usize, (c % n) as usize);
        prop_assert_eq!(t.add(a, b), t.add(b, a));
        prop_assert_eq!(t.add(t.add(a, b), c), t.add(a, t.add(b, c)));
        prop_assert_eq!(t.add(a, t.neg(a)), 0);
    }

    #[test]
    fn precedes_is_a_partial_order(s in arb_indicator(), t in arb_indicator(), u in arb_indicator()) {
        prop_assert!(s.precedes(&s));
        if s.precedes(&t) && t.precedes(&s) {
            prop_assert_eq!(&s, &t);
        }
        if s.precedes(&t) && t.precedes(&u) {
            prop_assert!(s.precedes(&u));
        }
        prop_assert_eq!(s.precedes(&t), precedes(s.entries(), t.entries()));
    }

    #[test]
    fn meet_and_join_are_bounds(s in arb_indicator(), t in arb_indicator(), u in arb_indicator()) {
        let (m, j) = (s.meet(&t), s.join(&t));
        prop_assert!(m.precedes(&s) && m.precedes(&t));
        prop_assert!(s.precedes(&j) && t.precedes(&j));
        if u.precedes(&s) && u.precedes(&t) {
            prop_assert!(u.precedes(&m));
        }
        if s.precedes(&u) && t.precedes(&u) {
            prop_assert!(j.precedes(&u));
        }
    }

    #[test]
    fn indicator_text_round_trips(s in arb_indicator()) {
        prop_assert_eq!(s.to_string().parse::<Indicator>().unwrap(), s);
    }

    #[test]
    fn ordinal_addition_is_associative(a in (0u32..3, 0u32..5), b in (0u32..3, 0u32..5), c in (0u32..3, 0u32..5)) {
        let (a, b, c) = (Ordinal::new(a.0, a.1), Ordinal::new(b.0, b.1), Ordinal::new(c.0, c.1));
        prop_assert_eq!((a + b) + c, a + (b + c));
    }

    #[test]
    fn cardinals_accept_all_encodings(n in 0u64..1000, k in 0u32..4) {
        let plain: CardinalValue = serde_json::from_str(&n.to_string()).unwrap();
        let tagged: CardinalValue = serde_json::from_str(&format!("{{\"finite\":{n}}}")).unwrap();
        prop_assert_eq!(plain, CardinalValue::Finite(n));
        prop_assert_eq!(tagged, CardinalValue::Finite(n));
        let aleph: CardinalValue = serde_json::from_str(&format!("{{\"aleph\":{k}}}")).unwrap();
        prop_assert!(aleph > CardinalValue::Finite(n));
    }
}
