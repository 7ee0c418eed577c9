//! Minimal edge labelings of the lattice of flats.
//!
//! An [`AtomOrder`] ord fixes a linear order on atoms; the minimal labeling
//! assigns the cover u ⋖ v the ord-least atom of A(v) \ A(u). Every atom order
//! makes this an EL-labeling: each interval has a unique weakly ascending
//! saturated chain, and that chain is strictly lex-first. [`verify_el`] checks
//! this exhaustively; [`EdgeLabeling`] lets tests corrupt labels and watch the
//! verifier object.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::collections::HashMap;
use std::fmt;

use crate::atoms::{Atom, AtomSet};
use crate::lattice::{FlatsLattice, Interval};
use crate::{Caps, Error};

/// Saturated-chain budget per interval inside [`verify_el`].
const INTERVAL_CHAIN_BUDGET: usize = 1_000_000;

/// A linear order on the atoms 1..=n (a permutation; position 0 is least).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomOrder {
    order: Vec<Atom>,
    pos: Vec<usize>,
}

impl AtomOrder {
    /// The natural order 1 < 2 < … < n.
    pub fn natural(n: usize) -> AtomOrder {
        AtomOrder::new((1..=n).map(Atom::new).collect()).expect("natural order is a permutation")
    }

    pub fn new(order: Vec<Atom>) -> Result<AtomOrder, Error> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (i, a) in order.iter().enumerate() {
            if a.label() > n {
                return Err(Error::InvalidOrder(format!("atom {a} outside 1..={n}")));
            }
            if pos[a.index()] != usize::MAX {
                return Err(Error::InvalidOrder(format!("atom {a} appears twice")));
            }
            pos[a.index()] = i;
        }
        Ok(AtomOrder { order, pos })
    }

    /// Parse a comma-separated permutation of 1..=n, e.g. "4,3,1,2".
    pub fn parse(text: &str, n: usize) -> Result<AtomOrder, Error> {
        let mut atoms = Vec::new();
        for tok in text.split(',') {
            let label: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidOrder(format!("bad atom {tok:?}")))?;
            if label == 0 || label > n {
                return Err(Error::InvalidOrder(format!("atom {label} outside 1..={n}")));
            }
            atoms.push(Atom::new(label));
        }
        if atoms.len() != n {
            return Err(Error::InvalidOrder(format!("expected {n} atoms, got {}", atoms.len())));
        }
        AtomOrder::new(atoms)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Atoms from least to greatest.
    pub fn atoms(&self) -> &[Atom] {
        &self.order
    }

    /// 0-based position of `a` (smaller = earlier).
    pub fn position(&self, a: Atom) -> usize {
        self.pos[a.index()]
    }

    pub fn lt(&self, a: Atom, b: Atom) -> bool {
        self.position(a) < self.position(b)
    }

    pub fn le(&self, a: Atom, b: Atom) -> bool {
        self.position(a) <= self.position(b)
    }

    /// Least atom of `s` under this order.
    pub fn min_of(&self, s: AtomSet) -> Option<Atom> {
        s.iter().min_by_key(|&a| self.position(a))
    }

    /// All n! orders, lexicographic in the atom labels.
    pub fn all(n: usize) -> Vec<AtomOrder> {
        (1..=n)
            .map(Atom::new)
            .permutations(n)
            .map(|p| AtomOrder::new(p).expect("permutation"))
            .collect()
    }

    /// `count` seeded random orders (ChaCha20, so identical across platforms).
    pub fn random(n: usize, count: usize, seed: u64) -> Vec<AtomOrder> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut atoms: Vec<Atom> = (1..=n).map(Atom::new).collect();
                atoms.shuffle(&mut rng);
                AtomOrder::new(atoms).expect("permutation")
            })
            .collect()
    }
}

impl fmt::Display for AtomOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.order.iter().map(Atom::to_string).join(","))
    }
}

/// A maximal chain 0̂ = x_0 ⋖ x_1 ⋖ … ⋖ x_r = 1̂, as flat indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalChain {
    elements: Vec<usize>,
}

impl MaximalChain {
    pub fn new(lattice: &FlatsLattice, elements: Vec<usize>) -> Result<MaximalChain, Error> {
        if elements.first() != Some(&lattice.bottom()) {
            return Err(Error::InvalidChain("chain must start at ∅".into()));
        }
        if elements.last() != Some(&lattice.top()) {
            return Err(Error::InvalidChain("chain must end at the top flat".into()));
        }
        for w in elements.windows(2) {
            if !lattice.covers_up(w[0]).contains(&w[1]) {
                return Err(Error::InvalidChain(format!(
                    "{} ⋖ {} is not a cover",
                    lattice.flat(w[0]),
                    lattice.flat(w[1])
                )));
            }
        }
        Ok(MaximalChain { elements })
    }

    /// Element x_i (i = 0 is the bottom).
    pub fn element(&self, rank: usize) -> usize {
        self.elements[rank]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Number of cover steps r.
    pub fn steps(&self) -> usize {
        self.elements.len() - 1
    }

    /// The chain with x_rank replaced (no validation; callers uphold covers).
    pub(crate) fn with_element(&self, rank: usize, flat: usize) -> MaximalChain {
        let mut elements = self.elements.clone();
        elements[rank] = flat;
        MaximalChain { elements }
    }

    /// Parse the CLI chain syntax: flats separated by ';', each a
    /// comma-separated atom list, ∅ as an empty token — e.g. ";4;3,4;1,2,3,4".
    pub fn parse(lattice: &FlatsLattice, text: &str) -> Result<MaximalChain, Error> {
        let mut elements = Vec::new();
        for tok in text.split(';') {
            let tok = tok.trim();
            let mut set = AtomSet::EMPTY;
            if !tok.is_empty() {
                for part in tok.split(',') {
                    let label: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidChain(format!("bad atom {part:?}")))?;
                    if label == 0 || label > crate::MAX_ATOMS {
                        return Err(Error::InvalidChain(format!("atom {label} out of range")));
                    }
                    set = set.insert(Atom::new(label));
                }
            }
            let idx = lattice
                .index_of(set)
                .ok_or_else(|| Error::InvalidChain(format!("{set} is not a flat")))?;
            elements.push(idx);
        }
        MaximalChain::new(lattice, elements)
    }

    /// Inverse of [`MaximalChain::parse`].
    pub fn render(&self, lattice: &FlatsLattice) -> String {
        self.elements.iter().map(|&u| lattice.flat(u).plain()).join(";")
    }
}

/// λ(u ⋖ v) = the ord-least atom of A(v) \ A(u).
pub fn minimal_label(
    lattice: &FlatsLattice,
    ord: &AtomOrder,
    u: usize,
    v: usize,
) -> Result<Atom, Error> {
    if !lattice.covers_up(u).contains(&v) {
        return Err(Error::NotACover { u: lattice.flat(u), v: lattice.flat(v) });
    }
    let new_atoms = lattice.atom_set(v).minus(lattice.atom_set(u));
    Ok(ord.min_of(new_atoms).expect("a cover adds at least one atom"))
}

/// The label sequence of a chain (λ(x_0,x_1), …, λ(x_{r-1},x_r)).
pub fn label_sequence(lattice: &FlatsLattice, ord: &AtomOrder, chain: &MaximalChain) -> LabelSequence {
    let labels = chain
        .elements()
        .windows(2)
        .map(|w| minimal_label(lattice, ord, w[0], w[1]).expect("chain consists of covers"))
        .collect();
    LabelSequence { labels }
}

/// A sequence of edge labels along a saturated chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelSequence {
    labels: Vec<Atom>,
}

impl LabelSequence {
    pub fn new(labels: Vec<Atom>) -> LabelSequence {
        LabelSequence { labels }
    }

    pub fn labels(&self) -> &[Atom] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// 1-based label positions, so `get(1)` is λ(x_0,x_1).
    pub fn get(&self, position: usize) -> Atom {
        self.labels[position - 1]
    }

    /// Descent ranks: i ∈ 1..r-1 with label_i > label_{i+1} under ord.
    pub fn descents(&self, ord: &AtomOrder) -> Vec<usize> {
        (1..self.labels.len())
            .filter(|&i| ord.lt(self.labels[i], self.labels[i - 1]))
            .collect()
    }

    pub fn is_weakly_ascending(&self, ord: &AtomOrder) -> bool {
        self.descents(ord).is_empty()
    }

    /// Inversions: pairs p < q with label_p > label_q under ord.
    pub fn inversions(&self, ord: &AtomOrder) -> usize {
        let n = self.labels.len();
        (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .filter(|&(p, q)| ord.lt(self.labels[q], self.labels[p]))
            .count()
    }

    /// The labels rearranged into ascending order under ord.
    pub fn sorted(&self, ord: &AtomOrder) -> LabelSequence {
        let mut labels = self.labels.clone();
        labels.sort_by_key(|&a| ord.position(a));
        LabelSequence { labels }
    }

    /// Position-wise lexicographic comparison under ord.
    pub fn lex_cmp(&self, other: &LabelSequence, ord: &AtomOrder) -> std::cmp::Ordering {
        let key = |s: &LabelSequence| s.labels.iter().map(|&a| ord.position(a)).collect::<Vec<_>>();
        key(self).cmp(&key(other))
    }
}

impl fmt::Display for LabelSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.labels.iter().map(Atom::to_string).join(","))
    }
}

/// All maximal chains, lexicographically by flat-index sequence.
pub fn enumerate_maximal_chains(
    lattice: &FlatsLattice,
    caps: &Caps,
) -> Result<Vec<MaximalChain>, Error> {
    let seqs = chains_between(lattice, lattice.bottom(), lattice.top(), caps.chains)
        .map_err(|_| Error::ChainCap { cap: caps.chains })?;
    Ok(seqs.into_iter().map(|elements| MaximalChain { elements }).collect())
}

/// All saturated chains from lo to hi, lexicographically; Err(()) past `budget`.
fn chains_between(
    lattice: &FlatsLattice,
    lo: usize,
    hi: usize,
    budget: usize,
) -> Result<Vec<Vec<usize>>, ()> {
    let mut out = Vec::new();
    let mut stack = vec![lo];
    dfs(lattice, hi, &mut stack, &mut out, budget)?;
    return Ok(out);

    fn dfs(
        lattice: &FlatsLattice,
        hi: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<(), ()> {
        let last = *stack.last().expect("stack starts nonempty");
        if last == hi {
            if out.len() == budget {
                return Err(());
            }
            out.push(stack.clone());
            return Ok(());
        }
        for &next in lattice.covers_up(last) {
            if lattice.le(next, hi) {
                stack.push(next);
                dfs(lattice, hi, stack, out, budget)?;
                stack.pop();
            }
        }
        Ok(())
    }
}

/// Saturated chains of [lo, hi] under the verifier's per-interval budget.
pub fn enumerate_interval_chains(
    lattice: &FlatsLattice,
    lo: usize,
    hi: usize,
    budget: usize,
) -> Result<Vec<Vec<usize>>, Error> {
    chains_between(lattice, lo, hi, budget).map_err(|_| Error::IntervalChainBudget {
        lo: lattice.flat(lo),
        hi: lattice.flat(hi),
        budget,
    })
}

/// The weakly ascending chain of an interval, built greedily by taking the
/// cover with the ord-least label at each step. For minimal labelings this is
/// the lex-first chain of the interval.
pub fn ascending_chain(lattice: &FlatsLattice, ord: &AtomOrder, interval: &Interval) -> Vec<usize> {
    let mut chain = vec![interval.lo()];
    let mut current = interval.lo();
    while current != interval.hi() {
        let next = lattice
            .covers_up(current)
            .iter()
            .copied()
            .filter(|&v| lattice.le(v, interval.hi()))
            .min_by_key(|&v| {
                let new_atoms = lattice.atom_set(v).minus(lattice.atom_set(current));
                ord.min_of(new_atoms).map(|a| ord.position(a)).expect("cover adds an atom")
            })
            .expect("hi is reachable from every element below it");
        chain.push(next);
        current = next;
    }
    chain
}

/// The ascending maximal chain of the whole lattice.
pub fn ascending_maximal_chain(lattice: &FlatsLattice, ord: &AtomOrder) -> MaximalChain {
    let interval = lattice
        .interval(lattice.bottom(), lattice.top())
        .expect("bottom is below top");
    MaximalChain { elements: ascending_chain(lattice, ord, &interval) }
}

/// Explicit labels on every cover edge; starts as the minimal labeling and can
/// be overridden edge by edge (for corruption fixtures).
#[derive(Clone, Debug)]
pub struct EdgeLabeling {
    labels: HashMap<(usize, usize), Atom>,
}

impl EdgeLabeling {
    pub fn minimal(lattice: &FlatsLattice, ord: &AtomOrder) -> EdgeLabeling {
        let mut labels = HashMap::new();
        for u in 0..lattice.len() {
            for &v in lattice.covers_up(u) {
                labels.insert((u, v), minimal_label(lattice, ord, u, v).expect("cover"));
            }
        }
        EdgeLabeling { labels }
    }

    pub fn get(&self, u: usize, v: usize) -> Atom {
        self.labels[&(u, v)]
    }

    pub fn set(&mut self, u: usize, v: usize, label: Atom) {
        assert!(self.labels.contains_key(&(u, v)), "({u},{v}) is not a cover edge");
        self.labels.insert((u, v), label);
    }

    fn sequence(&self, chain: &[usize]) -> LabelSequence {
        LabelSequence { labels: chain.windows(2).map(|w| self.get(w[0], w[1])).collect() }
    }
}

/// How an interval can fail the EL condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElViolationKind {
    /// No weakly ascending saturated chain.
    NoAscending,
    /// More than one weakly ascending saturated chain.
    MultipleAscending,
    /// The ascending chain is not strictly lex-first.
    NotLexFirst,
}

#[derive(Clone, Debug)]
pub struct ElViolation {
    pub lo: AtomSet,
    pub hi: AtomSet,
    pub kind: ElViolationKind,
    /// Witness chains/label sequences, rendered.
    pub detail: String,
}

impl fmt::Display for ElViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] {:?}: {}", self.lo, self.hi, self.kind, self.detail)
    }
}

/// Outcome of EL verification over every interval of the lattice.
#[derive(Clone, Debug)]
pub struct ElReport {
    pub intervals_checked: usize,
    pub violations: Vec<ElViolation>,
}

impl ElReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify the EL property of the minimal labeling for `ord`.
pub fn verify_el(lattice: &FlatsLattice, ord: &AtomOrder) -> Result<ElReport, Error> {
    verify_el_with(lattice, ord, &EdgeLabeling::minimal(lattice, ord))
}

/// Verify the EL property of an arbitrary edge labeling, comparing labels
/// under `ord`. Reports every violating interval.
pub fn verify_el_with(
    lattice: &FlatsLattice,
    ord: &AtomOrder,
    labeling: &EdgeLabeling,
) -> Result<ElReport, Error> {
    verify_el_budgeted(lattice, ord, labeling, INTERVAL_CHAIN_BUDGET)
}

fn verify_el_budgeted(
    lattice: &FlatsLattice,
    ord: &AtomOrder,
    labeling: &EdgeLabeling,
    budget: usize,
) -> Result<ElReport, Error> {
    let mut report = ElReport { intervals_checked: 0, violations: Vec::new() };
    for lo in 0..lattice.len() {
        for hi in 0..lattice.len() {
            if lo == hi || !lattice.le(lo, hi) {
                continue;
            }
            report.intervals_checked += 1;
            let chains = enumerate_interval_chains(lattice, lo, hi, budget)?;
            let sequences: Vec<LabelSequence> =
                chains.iter().map(|c| labeling.sequence(c)).collect();
            let ascending: Vec<usize> = (0..chains.len())
                .filter(|&i| sequences[i].is_weakly_ascending(ord))
                .collect();
            let (lo_set, hi_set) = (lattice.flat(lo), lattice.flat(hi));
            match ascending.as_slice() {
                [] => report.violations.push(ElViolation {
                    lo: lo_set,
                    hi: hi_set,
                    kind: ElViolationKind::NoAscending,
                    detail: format!("{} saturated chains, none ascending", chains.len()),
                }),
                [one] => {
                    for i in (0..chains.len()).filter(|&i| i != *one) {
                        if sequences[*one].lex_cmp(&sequences[i], ord) != std::cmp::Ordering::Less {
                            report.violations.push(ElViolation {
                                lo: lo_set,
                                hi: hi_set,
                                kind: ElViolationKind::NotLexFirst,
                                detail: format!(
                                    "ascending chain {} is not lex-below {}",
                                    sequences[*one], sequences[i]
                                ),
                            });
                            break;
                        }
                    }
                }
                [a, b, ..] => report.violations.push(ElViolation {
                    lo: lo_set,
                    hi: hi_set,
                    kind: ElViolationKind::MultipleAscending,
                    detail: format!(
                        "both {} and {} are ascending",
                        sequences[*a], sequences[*b]
                    ),
                }),
            }
        }
    }
    Ok(report)
}
