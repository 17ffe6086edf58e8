//! A deliberately naive model of a finite abelian p-group, used as an
//! oracle. Shares no code with the library beyond reading its outputs.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::io::Write;

use fullinv_core::{GroupSpec, GroupTable, Subgroup};

pub type El = Vec<u64>;
pub type Set = BTreeSet<El>;

/// `∞` in naive indicators is represented by the vector ending.
pub type Ind = Vec<u32>;

pub struct Naive {
    pub p: u64,
    /// Exponent of each flattened coordinate.
    pub exps: Vec<u32>,
    pub moduli: Vec<u64>,
    /// Component index of each coordinate.
    pub block: Vec<usize>,
    pub elems: Vec<El>,
    /// `p^k G` for `k = 0..=e`.
    layers: Vec<HashSet<El>>,
}

impl Naive {
    pub fn new(p: u64, comps: &[(u32, u32)]) -> Self {
        let mut exps = vec![];
        let mut block = vec![];
        for (i, &(n, m)) in comps.iter().enumerate() {
            for _ in 0..m {
                exps.push(n);
                block.push(i);
            }
        }
        let moduli: Vec<u64> = exps.iter().map(|&n| p.pow(n)).collect();
        let mut elems: Vec<El> = vec![vec![]];
        for &m in &moduli {
            elems = elems
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        let e = *exps.iter().max().unwrap();
        let mut g = Naive {
            p,
            exps,
            moduli,
            block,
            elems,
            layers: vec![],
        };
        let mut layers = vec![];
        for k in 0..=e {
            let pk = p.pow(k);
            layers.push(g.elems.iter().map(|x| g.smul(pk, x)).collect());
        }
        g.layers = layers;
        g
    }

    pub fn spec(&self) -> GroupSpec {
        let mut comps: Vec<(u32, u32)> = vec![];
        for &n in &self.exps {
            match comps.last_mut() {
                Some((m, k)) if *m == n => *k += 1,
                _ => comps.push((n, 1)),
            }
        }
        GroupSpec::new(self.p, &comps).unwrap()
    }

    pub fn exponent(&self) -> u32 {
        *self.exps.iter().max().unwrap()
    }

    pub fn zero(&self) -> El {
        vec![0; self.exps.len()]
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    pub fn smul(&self, c: u64, a: &El) -> El {
        a.iter()
            .zip(&self.moduli)
            .map(|(x, m)| (x * (c % m)) % m)
            .collect()
    }

    pub fn is_zero(a: &El) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Largest `k` with `a ∈ p^k G`; `None` for zero.
    pub fn height(&self, a: &El) -> Option<u32> {
        if Self::is_zero(a) {
            return None;
        }
        (0..self.layers.len())
            .rev()
            .find(|&k| self.layers[k].contains(a))
            .map(|k| k as u32)
    }

    pub fn ind(&self, a: &El) -> Ind {
        let mut out = vec![];
        let mut x = a.clone();
        while let Some(h) = self.height(&x) {
            out.push(h);
            x = self.smul(self.p, &x);
        }
        out
    }

    pub fn span(&self, gens: impl IntoIterator<Item = El>) -> Set {
        let mut set: Set = [self.zero()].into();
        let gens: Vec<El> = gens.into_iter().collect();
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn sum(&self, h: &Set, k: &Set) -> Set {
        self.span(h.iter().chain(k).cloned())
    }

    pub fn unit(&self, t: usize) -> El {
        let mut v = self.zero();
        v[t] = 1;
        v
    }

    /// `p^k G ∩ G[p^n]`.
    pub fn fundamental(&self, k: u32, n: u32) -> Set {
        let k = k.min(self.exponent()) as usize;
        let pn = self.p.pow(n);
        self.layers[k]
            .iter()
            .filter(|x| Self::is_zero(&self.smul(pn, x)))
            .cloned()
            .collect()
    }

    /// `⊕ p^{α_i} B_i`, one α per component.
    pub fn alpha_subgroup(&self, alpha: &[u32]) -> Set {
        self.span((0..self.exps.len()).map(|t| {
            let a = alpha[self.block[t]].min(self.exps[t]);
            self.smul(self.p.pow(a), &self.unit(t))
        }))
    }

    /// Every homomorphism as the list of generator images.
    pub fn homs(&self) -> Vec<Vec<El>> {
        let choices: Vec<Vec<El>> = self
            .exps
            .iter()
            .map(|&n| {
                let pn = self.p.pow(n);
                self.elems
                    .iter()
                    .filter(|y| Self::is_zero(&self.smul(pn, y)))
                    .cloned()
                    .collect()
            })
            .collect();
        let mut out: Vec<Vec<El>> = vec![vec![]];
        for c in &choices {
            out = out
                .into_iter()
                .flat_map(|v| {
                    c.iter().map(move |y| {
                        let mut w = v.clone();
                        w.push(y.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn apply(&self, f: &[El], a: &El) -> El {
        let mut acc = self.zero();
        for (t, img) in f.iter().enumerate() {
            acc = self.add(&acc, &self.smul(a[t], img));
        }
        acc
    }

    /// Fully invariant subgroups: endomorphism orbits spanned, then closed under sums.
    pub fn fi_subgroups(&self, homs: &[Vec<El>]) -> BTreeSet<Set> {
        let principal: BTreeSet<Set> = self
            .elems
            .iter()
            .map(|x| self.span(homs.iter().map(|f| self.apply(f, x))))
            .collect();
        let mut all = principal.clone();
        loop {
            let mut new = vec![];
            for h in &all {
                for k in &principal {
                    let s = self.sum(h, k);
                    if !all.contains(&s) {
                        new.push(s);
                    }
                }
            }
            if new.is_empty() {
                return all;
            }
            all.extend(new);
        }
    }
}

/// `σ ⪯ τ`: σ is at least as long and entrywise no larger.
pub fn precedes(s: &[u32], t: &[u32]) -> bool {
    s.len() >= t.len() && t.iter().zip(s).all(|(tt, ss)| ss <= tt)
}

pub fn set_of(t: &GroupTable, h: &Subgroup) -> Set {
    h.indices()
        .map(|i| t.element(i).coords().to_vec())
        .collect()
}

pub fn group(p: u64, comps: &[(u32, u32)]) -> GroupSpec {
    GroupSpec::new(p, comps).unwrap()
}

/// Writes straight to stderr, past the test harness's output capture.
pub fn say(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}
