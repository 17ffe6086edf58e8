//! Symbolic Ulm data: ordinals below ω², finite or aleph cardinals, blockwise
//! Ulm sequences with eventually constant tails, the Ulm sum criterion,
//! admissible sequences of basic groups, and ideal descriptors `I(κ,n,μ)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// `ω·q + r`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(deny_unknown_fields)]
pub struct Ordinal {
    pub q: u32,
    pub r: u32,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { q: 0, r: 0 };
    pub const OMEGA: Ordinal = Ordinal { q: 1, r: 0 };

    pub fn new(q: u32, r: u32) -> Self {
        Self { q, r }
    }

    pub fn finite(r: u32) -> Self {
        Self { q: 0, r }
    }

    pub fn is_limit(self) -> bool {
        self.r == 0
    }

    pub fn is_successor(self) -> bool {
        self.r > 0
    }

    /// `κ + ω`.
    pub fn plus_omega(self) -> Ordinal {
        self + Ordinal::OMEGA
    }

    /// The limit `ω·q` below this ordinal's finite part.
    pub fn block(self) -> Ordinal {
        Ordinal::new(self.q, 0)
    }
}

pub fn ord_cmp(x: Ordinal, y: Ordinal) -> Ordering {
    x.cmp(&y)
}

/// Ordinal sum; a right summand of at least `ω` absorbs the left finite part.
impl std::ops::Add for Ordinal {
    type Output = Ordinal;

    fn add(self, other: Ordinal) -> Ordinal {
        if other.q > 0 {
            Ordinal::new(self.q + other.q, other.r)
        } else {
            Ordinal::new(self.q, self.r + other.r)
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q, self.r) {
            (0, r) => write!(f, "{r}"),
            (1, 0) => f.write_str("ω"),
            (1, r) => write!(f, "ω+{r}"),
            (q, 0) => write!(f, "ω·{q}"),
            (q, r) => write!(f, "ω·{q}+{r}"),
        }
    }
}

/// A cardinal: every finite value lies below every aleph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", from = "CardinalRepr")]
pub enum CardinalValue {
    Finite(u64),
    Aleph(u32),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CardinalRepr {
    Plain(u64),
    Tagged(TaggedCardinal),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum TaggedCardinal {
    Finite(u64),
    Aleph(u32),
}

impl From<CardinalRepr> for CardinalValue {
    fn from(r: CardinalRepr) -> Self {
        match r {
            CardinalRepr::Plain(n) | CardinalRepr::Tagged(TaggedCardinal::Finite(n)) => {
                CardinalValue::Finite(n)
            }
            CardinalRepr::Tagged(TaggedCardinal::Aleph(k)) => CardinalValue::Aleph(k),
        }
    }
}

impl CardinalValue {
    pub const ZERO: CardinalValue = CardinalValue::Finite(0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, CardinalValue::Aleph(_))
    }
}

impl fmt::Display for CardinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalValue::Finite(n) => write!(f, "{n}"),
            CardinalValue::Aleph(k) => write!(f, "ℵ{k}"),
        }
    }
}

/// Sum of `xs` followed, when `repeat` is given, by infinitely many copies of it.
pub fn cardinal_sum(xs: &[CardinalValue], repeat: Option<CardinalValue>) -> CardinalValue {
    let sup = xs
        .iter()
        .copied()
        .chain(repeat)
        .max()
        .unwrap_or(CardinalValue::ZERO);
    let infinitely_many = repeat.is_some_and(|c| !c.is_zero());
    if infinitely_many || sup.is_infinite() {
        return sup.max(CardinalValue::Aleph(0));
    }
    let total = xs
        .iter()
        .map(|c| match c {
            CardinalValue::Finite(n) => *n,
            CardinalValue::Aleph(_) => unreachable!("handled above"),
        })
        .fold(0u64, u64::saturating_add);
    CardinalValue::Finite(total)
}

/// What follows the explicit head of an Ulm block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    AllZero,
    Constant(CardinalValue),
}

impl Tail {
    pub fn value(self) -> CardinalValue {
        match self {
            Tail::AllZero => CardinalValue::ZERO,
            Tail::Constant(c) => c,
        }
    }

    fn normalized(self) -> Tail {
        match self {
            Tail::Constant(c) if c.is_zero() => Tail::AllZero,
            t => t,
        }
    }
}

/// `u_{ξ+n}` for one limit `ξ`: explicit head, then the tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UlmBlock {
    pub xi: Ordinal,
    #[serde(default)]
    pub head: Vec<CardinalValue>,
    #[serde(default = "all_zero")]
    pub tail: Tail,
}

fn all_zero() -> Tail {
    Tail::AllZero
}

impl UlmBlock {
    pub fn get(&self, n: u32) -> CardinalValue {
        self.head
            .get(n as usize)
            .copied()
            .unwrap_or_else(|| self.tail.value())
    }

    /// `Σ_{n<ω} u_{ξ+n}`.
    pub fn sum(&self) -> CardinalValue {
        let repeat = match self.tail {
            Tail::AllZero => None,
            Tail::Constant(c) => Some(c),
        };
        cardinal_sum(&self.head, repeat)
    }

    fn canonical(mut self) -> Self {
        self.tail = self.tail.normalized();
        let v = self.tail.value();
        while self.head.last() == Some(&v) {
            self.head.pop();
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UlmRepr")]
pub struct UlmSequence {
    pub lambda: Ordinal,
    pub blocks: Vec<UlmBlock>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UlmRepr {
    lambda: Ordinal,
    blocks: Vec<UlmBlock>,
}

impl TryFrom<UlmRepr> for UlmSequence {
    type Error = Error;

    fn try_from(r: UlmRepr) -> Result<Self> {
        UlmSequence::new(r.lambda, r.blocks)
    }
}

impl UlmSequence {
    /// Blocks must sit at distinct limits below `λ` and never index past `λ`.
    pub fn new(lambda: Ordinal, mut blocks: Vec<UlmBlock>) -> Result<Self> {
        blocks.sort_by_key(|b| b.xi);
        for w in blocks.windows(2) {
            if w[0].xi == w[1].xi {
                return Err(Error::InvalidInput(format!(
                    "duplicate block at {}",
                    w[0].xi
                )));
            }
        }
        for b in &blocks {
            if !b.xi.is_limit() {
                return Err(Error::InvalidInput(format!(
                    "block index {} is not a limit",
                    b.xi
                )));
            }
            if b.xi >= lambda {
                return Err(Error::InvalidInput(format!(
                    "block {} is not below λ = {lambda}",
                    b.xi
                )));
            }
            if b.xi.q == lambda.q {
                let r = lambda.r as usize;
                let nonzero_past = b.head.iter().skip(r).any(|c| !c.is_zero());
                if nonzero_past || !b.tail.value().is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "block {} has entries at or beyond λ = {lambda}",
                        b.xi
                    )));
                }
            }
        }
        Ok(Self { lambda, blocks })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    /// The finite Ulm sequence of a bounded group, `λ = exp(G)`.
    pub fn of_group(g: &GroupSpec) -> Self {
        let head = g
            .ulm_invariants()
            .into_iter()
            .map(CardinalValue::Finite)
            .collect();
        UlmSequence {
            lambda: Ordinal::finite(g.exponent()),
            blocks: vec![UlmBlock {
                xi: Ordinal::ZERO,
                head,
                tail: Tail::AllZero,
            }
            .canonical()],
        }
    }

    pub fn block(&self, xi: Ordinal) -> Option<&UlmBlock> {
        self.blocks.iter().find(|b| b.xi == xi)
    }

    /// `u_κ`; zero outside the described blocks and at or beyond `λ`.
    pub fn get(&self, kappa: Ordinal) -> CardinalValue {
        if kappa >= self.lambda {
            return CardinalValue::ZERO;
        }
        self.block(kappa.block())
            .map_or(CardinalValue::ZERO, |b| b.get(kappa.r))
    }

    /// The limit ordinals `κ` with `κ + ω < λ`, where the criterion applies.
    pub fn checkpoints(&self) -> Vec<Ordinal> {
        (0..=self.lambda.q)
            .map(|q| Ordinal::new(q, 0))
            .filter(|k| k.plus_omega() < self.lambda)
            .collect()
    }

    pub fn canonical(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .cloned()
            .map(UlmBlock::canonical)
            .filter(|b| !(b.head.is_empty() && b.tail == Tail::AllZero))
            .collect();
        UlmSequence {
            lambda: self.lambda,
            blocks,
        }
    }
}

/// One evaluation of `Σ_{ρ≥κ+ω} u_ρ ≤ Σ_{n<ω} u_{κ+n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionCheck {
    pub kappa: Ordinal,
    pub upper_sum: CardinalValue,
    pub block_sum: CardinalValue,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UlmVerdict {
    pub admissible: bool,
    pub checks: Vec<CriterionCheck>,
    /// First `κ` where the inequality fails.
    pub witness: Option<Ordinal>,
}

/// Evaluates the Ulm sum criterion at each limit `κ` with `κ + ω < λ`.
pub fn check_ulm_criterion(u: &UlmSequence) -> UlmVerdict {
    let block_sum = |xi: Ordinal| u.block(xi).map_or(CardinalValue::ZERO, UlmBlock::sum);
    let checks: Vec<CriterionCheck> = u
        .checkpoints()
        .into_iter()
        .map(|kappa| {
            let later: Vec<CardinalValue> = u
                .blocks
                .iter()
                .filter(|b| b.xi > kappa)
                .map(UlmBlock::sum)
                .collect();
            let upper = cardinal_sum(&later, None);
            let own = block_sum(kappa);
            CriterionCheck {
                kappa,
                upper_sum: upper,
                block_sum: own,
                holds: upper <= own,
            }
        })
        .collect();
    let witness = checks.iter().find(|c| !c.holds).map(|c| c.kappa);
    UlmVerdict {
        admissible: witness.is_none(),
        checks,
        witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicComponent {
    pub exponent: u32,
    pub multiplicity: CardinalValue,
}

/// Every exponent `n ≥ from` carries `multiplicity` copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicTail {
    pub from: u32,
    pub multiplicity: CardinalValue,
}

/// `⊕ Z(p^{n_i})^{(m_i)}`, possibly unbounded through a constant tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BasicRepr")]
pub struct BasicGroupSpec {
    pub components: Vec<BasicComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<BasicTail>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasicRepr {
    components: Vec<BasicComponent>,
    #[serde(default)]
    tail: Option<BasicTail>,
}

impl TryFrom<BasicRepr> for BasicGroupSpec {
    type Error = Error;

    fn try_from(r: BasicRepr) -> Result<Self> {
        BasicGroupSpec::new(r.components, r.tail)
    }
}

impl BasicGroupSpec {
    pub fn new(components: Vec<BasicComponent>, tail: Option<BasicTail>) -> Result<Self> {
        let mut prev = 0;
        for c in &components {
            if c.exponent <= prev {
                return Err(Error::NonIncreasingExponents);
            }
            if c.multiplicity.is_zero() {
                return Err(Error::ZeroMultiplicity);
            }
            prev = c.exponent;
        }
        if let Some(t) = tail {
            if t.from <= prev {
                return Err(Error::NonIncreasingExponents);
            }
        }
        Ok(Self {
            components,
            tail: tail.filter(|t| !t.multiplicity.is_zero()),
        })
    }

    pub fn is_bounded(&self) -> bool {
        self.tail.is_none()
    }

    pub fn rank(&self) -> CardinalValue {
        let ms: Vec<CardinalValue> = self.components.iter().map(|c| c.multiplicity).collect();
        cardinal_sum(&ms, self.tail.map(|t| t.multiplicity))
    }

    /// Largest exponent of a bounded spec.
    pub fn exponent(&self) -> Option<u32> {
        match self.tail {
            Some(_) => None,
            None => Some(self.components.last().map_or(0, |c| c.exponent)),
        }
    }

    /// Folds trailing components that match the tail into it.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        if let Some(t) = out.tail.as_mut() {
            while let Some(c) = out.components.last() {
                if c.exponent + 1 == t.from && c.multiplicity == t.multiplicity {
                    t.from -= 1;
                    out.components.pop();
                } else {
                    break;
                }
            }
        }
        out
    }

    /// The block of Ulm data: `u_{n-1}` is the multiplicity of exponent `n`.
    fn to_block(&self, xi: Ordinal) -> UlmBlock {
        let len = match self.tail {
            Some(t) => t.from - 1,
            None => self.components.last().map_or(0, |c| c.exponent),
        } as usize;
        let mut head = vec![CardinalValue::ZERO; len];
        for c in &self.components {
            head[(c.exponent - 1) as usize] = c.multiplicity;
        }
        let tail = self
            .tail
            .map_or(Tail::AllZero, |t| Tail::Constant(t.multiplicity));
        UlmBlock { xi, head, tail }.canonical()
    }

    fn from_block(b: &UlmBlock) -> Self {
        let components = b
            .head
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, &c)| BasicComponent {
                exponent: k as u32 + 1,
                multiplicity: c,
            })
            .collect();
        let tail = match b.tail.normalized() {
            Tail::AllZero => None,
            Tail::Constant(c) => Some(BasicTail {
                from: b.head.len() as u32 + 1,
                multiplicity: c,
            }),
        };
        BasicGroupSpec { components, tail }.canonical()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicBlock {
    pub xi: Ordinal,
    pub basic: BasicGroupSpec,
}

/// Basic groups `B^(ξ)` indexed by the limits `ξ < λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicSequence {
    pub lambda: Ordinal,
    pub blocks: Vec<BasicBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub xi: Ordinal,
    pub rank: CardinalValue,
    pub later_sum: CardinalValue,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicVerdict {
    pub admissible: bool,
    pub checks: Vec<RankCheck>,
    pub witness: Option<Ordinal>,
}

impl BasicSequence {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    /// One block per limit below `λ`: unbounded when `ξ + ω ≤ λ`, bounded
    /// with exponents at most `λ - ξ` otherwise.
    pub fn check_shape(&self) -> Result<()> {
        let expected: Vec<Ordinal> = (0..=self.lambda.q)
            .map(|q| Ordinal::new(q, 0))
            .filter(|&x| x < self.lambda)
            .collect();
        let got: Vec<Ordinal> = self.blocks.iter().map(|b| b.xi).collect();
        if got != expected {
            return Err(Error::ShapeViolation(format!(
                "blocks must be indexed by the limits below λ = {} in order",
                self.lambda
            )));
        }
        for b in &self.blocks {
            if b.xi.plus_omega() <= self.lambda {
                if b.basic.is_bounded() {
                    return Err(Error::ShapeViolation(format!(
                        "B^({}) must be unbounded since {} + ω ≤ λ",
                        b.xi, b.xi
                    )));
                }
            } else {
                match b.basic.exponent() {
                    None => {
                        return Err(Error::ShapeViolation(format!(
                            "final block B^({}) must be bounded",
                            b.xi
                        )))
                    }
                    Some(n) if n > self.lambda.r => {
                        return Err(Error::ShapeViolation(format!(
                            "final block B^({}) has exponent {n} beyond λ = {}",
                            b.xi, self.lambda
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }
}

/// `rank(B^(ξ)) ≥ Σ_{ρ > ξ} rank(B^(ρ))` at every `ξ`, after the shape check.
pub fn check_basic_sequence_admissible(seq: &BasicSequence) -> Result<BasicVerdict> {
    seq.check_shape()?;
    let ranks: Vec<CardinalValue> = seq.blocks.iter().map(|b| b.basic.rank()).collect();
    let checks: Vec<RankCheck> = seq
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let later = cardinal_sum(&ranks[i + 1..], None);
            RankCheck {
                xi: b.xi,
                rank: ranks[i],
                later_sum: later,
                holds: ranks[i] >= later,
            }
        })
        .collect();
    let witness = checks.iter().find(|c| !c.holds).map(|c| c.xi);
    Ok(BasicVerdict {
        admissible: witness.is_none(),
        checks,
        witness,
    })
}

/// Block `ξ` of the Ulm data holds the multiplicities of `B^(ξ)` at `ξ + (n-1)`.
pub fn basic_seq_to_ulm(seq: &BasicSequence) -> Result<UlmSequence> {
    let verdict = check_basic_sequence_admissible(seq)?;
    if let Some(xi) = verdict.witness {
        return Err(Error::NotAdmissible(format!(
            "rank inequality fails at ξ = {xi}"
        )));
    }
    let blocks = seq.blocks.iter().map(|b| b.basic.to_block(b.xi)).collect();
    Ok(UlmSequence::new(seq.lambda, blocks)?.canonical())
}

/// Rebuilds one basic group per limit from the nonzero Ulm entries.
pub fn ulm_to_basic_seq(u: &UlmSequence) -> Result<BasicSequence> {
    let verdict = check_ulm_criterion(u);
    if let Some(k) = verdict.witness {
        return Err(Error::NotAdmissible(format!(
            "Ulm criterion fails at κ = {k}"
        )));
    }
    let blocks = (0..=u.lambda.q)
        .map(|q| Ordinal::new(q, 0))
        .filter(|&xi| xi < u.lambda)
        .map(|xi| {
            let basic = u.block(xi).map_or_else(
                || BasicGroupSpec {
                    components: vec![],
                    tail: None,
                },
                BasicGroupSpec::from_block,
            );
            BasicBlock { xi, basic }
        })
        .collect();
    Ok(BasicSequence {
        lambda: u.lambda,
        blocks,
    })
}

impl BasicSequence {
    pub fn canonical(&self) -> Self {
        BasicSequence {
            lambda: self.lambda,
            blocks: self
                .blocks
                .iter()
                .map(|b| BasicBlock {
                    xi: b.xi,
                    basic: b.basic.canonical(),
                })
                .collect(),
        }
    }
}

/// `I(κ, n, μ) = {f : Gf ≤ p^κG[p^n], rank(Gf) ≤ μ}` within a named group context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicIdealDescriptor {
    pub kappa: Ordinal,
    pub n: u32,
    pub mu: CardinalValue,
    #[serde(default)]
    pub context: String,
}

impl SymbolicIdealDescriptor {
    pub fn new(kappa: Ordinal, n: u32, mu: CardinalValue) -> Self {
        Self {
            kappa,
            n,
            mu,
            context: String::new(),
        }
    }

    /// A finite `μ` marks the finite-rank case, where the rank filtration
    /// collapses to the whole dagger ideal.
    pub fn is_finite_rank_collapse(&self) -> bool {
        !self.mu.is_infinite()
    }
}

/// `p^κG[p^n] ≤ p^μG[p^m]` exactly when `n ≤ m` and `κ ≥ μ`.
pub fn fundamental_leq(kappa: Ordinal, n: u32, mu: Ordinal, m: u32) -> bool {
    n <= m && kappa >= mu
}

/// The containment rule as stated: `d1 ≤ d2` iff `H1 ≥ H2` and `μ1 ≤ μ2`.
pub fn descriptor_leq(d1: &SymbolicIdealDescriptor, d2: &SymbolicIdealDescriptor) -> Result<bool> {
    if d1.context != d2.context {
        return Err(Error::IncomparableContext);
    }
    if d1 == d2 {
        return Ok(true);
    }
    Ok(fundamental_leq(d2.kappa, d2.n, d1.kappa, d1.n) && d1.mu <= d2.mu)
}

/// The same rule with the subgroup comparison in the order-preserving direction.
pub fn descriptor_leq_monotone(
    d1: &SymbolicIdealDescriptor,
    d2: &SymbolicIdealDescriptor,
) -> Result<bool> {
    if d1.context != d2.context {
        return Err(Error::IncomparableContext);
    }
    Ok(fundamental_leq(d1.kappa, d1.n, d2.kappa, d2.n) && d1.mu <= d2.mu)
}
