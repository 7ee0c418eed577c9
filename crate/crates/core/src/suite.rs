//! The claim-by-claim verification suite.
//!
//! [`run_suite`] takes one matroid instance, builds its lattice of flats, and
//! checks every structural claim the library rests on: the geometric axioms,
//! EL-ness of minimal labelings, the C(r,2) diameter bound and its exact
//! sharpness, the shape of the lexicographic orientation, straightening and
//! connection words, rearrangement realizability, descent swapping, reversal
//! inversions, and the agreement of the descent order's Hasse diagram with
//! the orientation. Each claim yields one info finding when it holds and a
//! witness-carrying violation finding per failing case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use std::fmt;

use crate::chain_graph::{FacetRidgeGraph, GlexGraph};
use crate::coxeter::{is_reduced, is_reduced_by_length};
use crate::descent_order::DescentOrder;
use crate::descent_path::{apply_t, connect, reversal_chain, straighten};
use crate::labeling::{
    ascending_maximal_chain, label_sequence, verify_el, AtomOrder, LabelSequence, MaximalChain,
};
use crate::lattice::FlatsLattice;
use crate::matroid::Matroid;
use crate::{binom2, Atom, AtomSet, Caps, Error};

/// Seed for all internal sampling (pair picks, large-r rearrangements).
const SAMPLE_SEED: u64 = 42;
/// Above this chain count, connection is checked on sampled pairs.
const CONNECT_EXHAUSTIVE_LIMIT: usize = 64;
/// Sampled connection pairs for larger instances.
const CONNECT_SAMPLES: usize = 200;
/// Above this rank, rearrangements are sampled instead of exhaustive.
const REARRANGEMENT_EXHAUSTIVE_RANK: usize = 6;
/// Sampled rearrangements for larger ranks.
const REARRANGEMENT_SAMPLES: usize = 100;

/// Stable claim identifiers, in report order.
pub const CLAIMS: [&str; 14] = [
    "geometric-axioms",
    "closure-props",
    "diameter-upper-bound",
    "el-labeling",
    "label-distinct-independent",
    "ascending-lex-min",
    "rearrangement-realizability",
    "lex-min-rearrangement-iff",
    "descent-swapping",
    "glex-structure",
    "straightening",
    "connect-bound",
    "sharpness-exact",
    "reversal-inversions",
];
// hasse-equals-glex is checked inside glex-structure's sibling claim below;
// see HASSE_CLAIM.
/// Identifier of the Hasse-vs-orientation comparison claim.
pub const HASSE_CLAIM: &str = "hasse-equals-glex";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Violation,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Violation => "violation",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified (or refuted) statement about one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub claim: String,
    pub instance: String,
    pub witness: String,
}

/// Which atom orders a suite run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderSelection {
    /// Every one of the n! orders.
    All,
    /// `count` seeded random orders.
    Random { count: usize, seed: u64 },
}

impl OrderSelection {
    /// All orders up to n = 5 (120 orders), 50 seeded ones beyond that.
    pub fn automatic(n: usize) -> OrderSelection {
        if n <= 5 {
            OrderSelection::All
        } else {
            OrderSelection::Random { count: 50, seed: SAMPLE_SEED }
        }
    }

    pub fn orders(&self, n: usize) -> Vec<AtomOrder> {
        match *self {
            OrderSelection::All => AtomOrder::all(n),
            OrderSelection::Random { count, seed } => AtomOrder::random(n, count, seed),
        }
    }

    pub fn describe(&self, n: usize) -> String {
        match *self {
            OrderSelection::All => format!("all {} orders", self.orders(n).len()),
            OrderSelection::Random { count, seed } => {
                format!("{count} random orders (seed {seed})")
            }
        }
    }
}

/// Everything run_suite found about one instance.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub label: String,
    pub findings: Vec<Finding>,
}

impl SuiteReport {
    pub fn violations(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Violation)
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    pub fn passed(&self) -> bool {
        self.violation_count() == 0
    }
}

struct Ctx<'a> {
    matroid: &'a Matroid,
    lattice: &'a FlatsLattice,
    label: &'a str,
    caps: &'a Caps,
    orders: &'a [AtomOrder],
    findings: Vec<Finding>,
}

impl Ctx<'_> {
    fn info(&mut self, claim: &str, witness: String) {
        self.findings.push(Finding {
            severity: Severity::Info,
            claim: claim.to_string(),
            instance: self.label.to_string(),
            witness,
        });
    }

    fn violation(&mut self, claim: &str, instance_detail: &str, witness: String) {
        let instance = if instance_detail.is_empty() {
            self.label.to_string()
        } else {
            format!("{} | {instance_detail}", self.label)
        };
        self.findings.push(Finding {
            severity: Severity::Violation,
            claim: claim.to_string(),
            instance,
            witness,
        });
    }

    /// Count violations already recorded for a claim.
    fn violations_for(&self, claim: &str) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Violation && f.claim == claim)
            .count()
    }
}

/// Run the full suite on one matroid under the given order selection.
pub fn run_suite(
    matroid: &Matroid,
    label: &str,
    selection: &OrderSelection,
    caps: &Caps,
) -> Result<SuiteReport, Error> {
    let lattice = FlatsLattice::build(matroid, caps)?;
    let orders = selection.orders(lattice.ground_size());
    let mut ctx = Ctx { matroid, lattice: &lattice, label, caps, orders: &orders, findings: Vec::new() };

    check_geometric(&mut ctx);
    check_closure(&mut ctx);
    check_diameter(&mut ctx)?;
    check_el(&mut ctx)?;
    check_labels_distinct_independent(&mut ctx)?;
    check_ascending_lex_min(&mut ctx)?;
    check_rearrangements(&mut ctx)?;
    check_glex_structure(&mut ctx)?;
    check_straightening(&mut ctx)?;
    check_connect(&mut ctx)?;
    check_sharpness(&mut ctx)?;
    check_reversal_inversions(&mut ctx)?;
    check_hasse_equals_glex(&mut ctx)?;

    Ok(SuiteReport { label: label.to_string(), findings: ctx.findings })
}

fn check_geometric(ctx: &mut Ctx) {
    let report = ctx.lattice.verify_geometric();
    if let Some(failure) = report.first_failure() {
        ctx.violation("geometric-axioms", "", failure);
    } else {
        ctx.info(
            "geometric-axioms",
            format!(
                "{} flats, rank {}: bounded, graded, atomic, semimodular",
                ctx.lattice.len(),
                ctx.lattice.rank()
            ),
        );
    }
}

fn check_closure(ctx: &mut Ctx) {
    let claim = "closure-props";
    let n = ctx.matroid.n();
    let subsets: Vec<AtomSet> = if n <= 8 {
        crate::matroid::subsets(AtomSet::full(n))
    } else {
        let mut rng = ChaCha20Rng::seed_from_u64(SAMPLE_SEED);
        (0..2000).map(|_| crate::matroid::random_subset(&mut rng, AtomSet::full(n))).collect()
    };
    let mut checked = 0usize;
    for &s in &subsets {
        let cl = ctx.matroid.closure(s);
        checked += 1;
        if !s.is_subset_of(cl) {
            ctx.violation(claim, "", format!("closure({s}) = {cl} does not contain {s}"));
        }
        if ctx.matroid.rank(cl) != ctx.matroid.rank(s) {
            ctx.violation(
                claim,
                "",
                format!("rank(closure({s})) = {} ≠ rank({s}) = {}", ctx.matroid.rank(cl), ctx.matroid.rank(s)),
            );
        }
        if ctx.matroid.closure(cl) != cl {
            ctx.violation(claim, "", format!("closure is not idempotent at {s}"));
        }
    }
    for u in 0..ctx.lattice.len() {
        let f = ctx.lattice.flat(u);
        if ctx.matroid.closure(f) != f {
            ctx.violation(claim, "", format!("listed flat {f} is not closed"));
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(claim, format!("{checked} subsets: extensive, idempotent, rank-preserving"));
    }
}

fn check_diameter(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "diameter-upper-bound";
    let frg = FacetRidgeGraph::build(ctx.lattice, ctx.caps)?;
    let bound = binom2(ctx.lattice.rank());
    match frg.diameter() {
        Err(Error::Disconnected { components, sizes }) => {
            ctx.violation(
                claim,
                "",
                format!("facet-ridge graph disconnected: {components} components of sizes {sizes:?}"),
            );
        }
        Err(e) => return Err(e),
        Ok(report) => {
            if report.diameter > bound {
                ctx.violation(
                    claim,
                    "",
                    format!(
                        "diameter {} exceeds C(r,2) = {bound}, witness chains {} and {}",
                        report.diameter,
                        frg.chain(report.witness.0).render(ctx.lattice),
                        frg.chain(report.witness.1).render(ctx.lattice)
                    ),
                );
            } else {
                ctx.info(
                    claim,
                    format!(
                        "{} chains, diameter {} ≤ C({},2) = {bound}",
                        frg.len(),
                        report.diameter,
                        ctx.lattice.rank()
                    ),
                );
            }
        }
    }
    Ok(())
}

fn check_el(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "el-labeling";
    let mut intervals = 0;
    for ord in ctx.orders {
        let report = verify_el(ctx.lattice, ord)?;
        intervals = report.intervals_checked;
        for v in &report.violations {
            ctx.violation(claim, &format!("order={ord}"), v.to_string());
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(
            claim,
            format!("{} orders × {intervals} intervals: unique ascending chain, strictly lex-first", ctx.orders.len()),
        );
    }
    Ok(())
}

fn check_labels_distinct_independent(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "label-distinct-independent";
    let mut chains_checked = 0usize;
    for ord in ctx.orders {
        let glex = GlexGraph::build(ctx.lattice, ord, ctx.caps)?;
        // Distinct labels on the up-covers of every flat.
        for u in 0..ctx.lattice.len() {
            let labels: Vec<Atom> = ctx
                .lattice
                .covers_up(u)
                .iter()
                .map(|&v| {
                    crate::labeling::minimal_label(ctx.lattice, ord, u, v).expect("cover")
                })
                .collect();
            let mut dedup = labels.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != labels.len() {
                ctx.violation(
                    claim,
                    &format!("order={ord}"),
                    format!("up-covers of {} repeat a label: {labels:?}", ctx.lattice.flat(u)),
                );
            }
        }
        // Each chain's labels are distinct and form an independent set.
        for i in 0..glex.len() {
            chains_checked += 1;
            let labels = glex.label_sequence(i);
            let set: AtomSet = labels.labels().iter().copied().collect();
            if set.len() != labels.len() {
                ctx.violation(
                    claim,
                    &format!("order={ord}"),
                    format!("chain {} repeats a label: {labels}", glex.chain(i).render(ctx.lattice)),
                );
            } else if ctx.matroid.rank_is_matroidal() && ctx.matroid.rank(set) != labels.len() {
                ctx.violation(
                    claim,
                    &format!("order={ord}"),
                    format!(
                        "labels {labels} of chain {} have rank {} < {}",
                        glex.chain(i).render(ctx.lattice),
                        ctx.matroid.rank(set),
                        labels.len()
                    ),
                );
            }
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(
            claim,
            format!(
                "{} orders × {} chains: labels distinct and independent, up-cover labels distinct",
                ctx.orders.len(),
                chains_checked / ctx.orders.len().max(1)
            ),
        );
    }
    Ok(())
}

fn check_ascending_lex_min(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "ascending-lex-min";
    for ord in ctx.orders {
        let glex = GlexGraph::build(ctx.lattice, ord, ctx.caps)?;
        let asc = ascending_maximal_chain(ctx.lattice, ord);
        let asc_index = glex.index_of(&asc).expect("ascending chain is maximal");
        for i in 0..glex.len() {
            if i == asc_index {
                continue;
            }
            if glex.label_sequence(asc_index).lex_cmp(glex.label_sequence(i), ord)
                != std::cmp::Ordering::Less
            {
                ctx.violation(
                    claim,
                    &format!("order={ord}"),
                    format!(
                        "ascending labels {} not strictly lex-below {} of chain {}",
                        glex.label_sequence(asc_index),
                        glex.label_sequence(i),
                        glex.chain(i).render(ctx.lattice)
                    ),
                );
            }
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(
            claim,
            format!("{} orders: the ascending chain is the strict lex-minimum", ctx.orders.len()),
        );
    }
    Ok(())
}

/// The rearrangement chains of an order: for a label rearrangement σ of the
/// ascending labels, the chain of joins of σ-prefixes. Returns (labels, chain
/// or failure witness).
fn rearrangement_chain(
    lattice: &FlatsLattice,
    rearranged: &[Atom],
) -> Result<MaximalChain, String> {
    let mut elements = vec![lattice.bottom()];
    let mut current = lattice.bottom();
    for &a in rearranged {
        let af = lattice.atom_flat(a).ok_or_else(|| format!("{a} is not an atom"))?;
        current = lattice.join(current, af);
        elements.push(current);
    }
    MaximalChain::new(lattice, elements).map_err(|e| e.to_string())
}

fn check_rearrangements(ctx: &mut Ctx) -> Result<(), Error> {
    let realize = "rearrangement-realizability";
    let iff = "lex-min-rearrangement-iff";
    let swap = "descent-swapping";
    let r = ctx.lattice.rank();
    let mut per_order = 0usize;
    for ord in ctx.orders {
        let asc = ascending_maximal_chain(ctx.lattice, ord);
        let asc_labels = label_sequence(ctx.lattice, ord, &asc);
        let rearrangements: Vec<Vec<Atom>> = if r <= REARRANGEMENT_EXHAUSTIVE_RANK {
            use itertools::Itertools;
            asc_labels.labels().iter().copied().permutations(r).collect()
        } else {
            let mut rng = ChaCha20Rng::seed_from_u64(SAMPLE_SEED);
            (0..REARRANGEMENT_SAMPLES)
                .map(|_| {
                    use rand::seq::SliceRandom;
                    let mut v = asc_labels.labels().to_vec();
                    v.shuffle(&mut rng);
                    v
                })
                .collect()
        };
        per_order = rearrangements.len();
        for rearranged in &rearrangements {
            let seq = LabelSequence::new(rearranged.clone());
            match rearrangement_chain(ctx.lattice, rearranged) {
                Err(witness) => {
                    ctx.violation(
                        realize,
                        &format!("order={ord}"),
                        format!("prefix joins of {seq} do not form a maximal chain: {witness}"),
                    );
                    continue;
                }
                Ok(chain) => {
                    let actual = label_sequence(ctx.lattice, ord, &chain);
                    if actual != seq {
                        ctx.violation(
                            realize,
                            &format!("order={ord}"),
                            format!(
                                "prefix-join chain {} has labels {actual}, wanted {seq}",
                                chain.render(ctx.lattice)
                            ),
                        );
                        continue;
                    }
                    // iff: the rearrangement chain is the ascending chain
                    // exactly when σ is the identity.
                    let is_identity = rearranged == asc_labels.labels();
                    let is_ascending = seq.is_weakly_ascending(ord);
                    if is_identity != (chain == asc) || is_identity != is_ascending {
                        ctx.violation(
                            iff,
                            &format!("order={ord}"),
                            format!(
                                "rearrangement {seq}: identity={is_identity}, equals-ascending={}, descent-free={is_ascending}",
                                chain == asc
                            ),
                        );
                    }
                    // Descent swapping: on rearrangement-labeled chains every
                    // move swaps the two labels exactly (j′ = j).
                    for rank in actual.descents(ord) {
                        let moved = apply_t(ctx.lattice, ord, &chain, rank)
                            .expect("descents admit the T move");
                        let moved_labels = label_sequence(ctx.lattice, ord, &moved);
                        let (j, i) = (actual.get(rank), actual.get(rank + 1));
                        let (i2, j2) = (moved_labels.get(rank), moved_labels.get(rank + 1));
                        if (i2, j2) != (i, j) {
                            ctx.violation(
                                swap,
                                &format!("order={ord}"),
                                format!(
                                    "T_{rank} on {seq} gave ({i2},{j2}) at ranks ({rank},{}), expected the swap ({i},{j})",
                                    rank + 1
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    for (claim, note) in [
        (realize, "every rearrangement is realized by its prefix-join chain"),
        (iff, "rearrangement chain is ascending ⟺ the rearrangement is the identity"),
        (swap, "moves on rearrangement chains swap the label pair exactly"),
    ] {
        if ctx.violations_for(claim) == 0 {
            ctx.info(claim, format!("{} orders × {per_order} rearrangements: {note}", ctx.orders.len()));
        }
    }
    Ok(())
}

fn check_glex_structure(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "glex-structure";
    let frg = FacetRidgeGraph::build(ctx.lattice, ctx.caps)?;
    for ord in ctx.orders {
        let glex = GlexGraph::build(ctx.lattice, ord, ctx.caps)?;
        if !glex.is_acyclic() {
            ctx.violation(claim, &format!("order={ord}"), "orientation has a directed cycle".into());
        }
        let sinks = glex.sinks();
        let asc = ascending_maximal_chain(ctx.lattice, ord);
        if sinks.len() != 1 || glex.chain(sinks[0]) != &asc {
            ctx.violation(
                claim,
                &format!("order={ord}"),
                format!(
                    "expected the unique sink to be the ascending chain, found {} sink(s)",
                    sinks.len()
                ),
            );
        }
        if glex.distances_to_sink().iter().any(Option::is_none) {
            ctx.violation(
                claim,
                &format!("order={ord}"),
                "some chain cannot reach the sink".into(),
            );
        }
        for u in 0..glex.len() {
            for e in glex.edges(u) {
                let (j, i) = e.from_pair;
                let (i2, j2) = e.to_pair;
                if !(ord.lt(i, j) && i2 == i && ord.lt(i2, j2) && ord.le(j2, j)) {
                    ctx.violation(
                        claim,
                        &format!("order={ord}"),
                        format!(
                            "edge contract broken at T_{} from {}: ({},{}) → ({},{})",
                            e.rank,
                            glex.chain(u).render(ctx.lattice),
                            j, i, i2, j2
                        ),
                    );
                }
                if !frg.neighbors(u).contains(&e.to) {
                    ctx.violation(
                        claim,
                        &format!("order={ord}"),
                        format!(
                            "edge {} → {} is not a facet-ridge edge",
                            glex.chain(u).render(ctx.lattice),
                            glex.chain(e.to).render(ctx.lattice)
                        ),
                    );
                }
            }
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(
            claim,
            format!(
                "{} orders: acyclic, unique sink at the ascending chain, all chains reach it, edge contract holds",
                ctx.orders.len()
            ),
        );
    }
    Ok(())
}

fn check_straightening(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "straightening";
    let r = ctx.lattice.rank();
    let bound = binom2(r);
    let mut chains_checked = 0usize;
    for ord in ctx.orders {
        let glex = GlexGraph::build(ctx.lattice, ord, ctx.caps)?;
        let asc = ascending_maximal_chain(ctx.lattice, ord);
        for i in 0..glex.len() {
            chains_checked += 1;
            let run = straighten(ctx.lattice, ord, glex.chain(i));
            let detail = format!("order={ord} chain={}", glex.chain(i).render(ctx.lattice));
            if run.terminal() != &asc {
                ctx.violation(claim, &detail, "straightening did not reach the ascending chain".into());
            }
            if run.len() > bound {
                ctx.violation(
                    claim,
                    &detail,
                    format!("word {} has length {} > C({r},2) = {bound}", run.word, run.len()),
                );
            }
            if !is_reduced(&run.word, r)? || !is_reduced_by_length(&run.word, r)? {
                ctx.violation(claim, &detail, format!("word {} is not reduced", run.word));
            }
            for pair in run.path.windows(2) {
                let before = label_sequence(ctx.lattice, ord, &pair[0]);
                let after = label_sequence(ctx.lattice, ord, &pair[1]);
                if after.lex_cmp(&before, ord) != std::cmp::Ordering::Less {
                    ctx.violation(claim, &detail, format!("move did not lex-decrease: {before} → {after}"));
                }
                let differing = pair[0]
                    .elements()
                    .iter()
                    .zip(pair[1].elements())
                    .filter(|(a, b)| a != b)
                    .count();
                if differing != 1 {
                    ctx.violation(
                        claim,
                        &detail,
                        format!("move changed {differing} chain elements, expected exactly 1"),
                    );
                }
            }
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(
            claim,
            format!(
                "{chains_checked} straightenings: terminal ascending, reduced words, length ≤ {bound}, lex-decreasing ridge path"
            ),
        );
    }
    Ok(())
}

fn check_connect(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "connect-bound";
    let chains = crate::labeling::enumerate_maximal_chains(ctx.lattice, ctx.caps)?;
    let bound = binom2(ctx.lattice.rank());
    let pairs: Vec<(usize, usize)> = if chains.len() <= CONNECT_EXHAUSTIVE_LIMIT {
        (0..chains.len())
            .flat_map(|a| (0..chains.len()).map(move |b| (a, b)))
            .collect()
    } else {
        let mut rng = ChaCha20Rng::seed_from_u64(SAMPLE_SEED);
        (0..CONNECT_SAMPLES)
            .map(|_| (rng.random_range(0..chains.len()), rng.random_range(0..chains.len())))
            .collect()
    };
    let count = pairs.len();
    for (a, b) in pairs {
        let conn = connect(ctx.lattice, &chains[a], &chains[b]);
        if conn.straightening.terminal() != &chains[b] {
            ctx.violation(
                claim,
                &format!("from={} to={}", chains[a].render(ctx.lattice), chains[b].render(ctx.lattice)),
                "connection did not terminate at the target chain".into(),
            );
        }
        if conn.straightening.len() > bound {
            ctx.violation(
                claim,
                &format!("from={} to={}", chains[a].render(ctx.lattice), chains[b].render(ctx.lattice)),
                format!(
                    "connecting word {} has length {} > C(r,2) = {bound}",
                    conn.straightening.word,
                    conn.straightening.len()
                ),
            );
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(claim, format!("{count} chain pairs connected within {bound} moves"));
    }
    Ok(())
}

fn check_sharpness(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "sharpness-exact";
    let bound = binom2(ctx.lattice.rank());
    for ord in ctx.orders {
        let glex = GlexGraph::build(ctx.lattice, ord, ctx.caps)?;
        let Some((ecc, witness)) = glex.max_directed_eccentricity() else {
            ctx.violation(claim, &format!("order={ord}"), "no chain reaches a sink".into());
            continue;
        };
        if ecc != bound {
            ctx.violation(
                claim,
                &format!("order={ord}"),
                format!(
                    "max directed eccentricity {ecc} ≠ C(r,2) = {bound}, extremal chain {}",
                    glex.chain(witness).render(ctx.lattice)
                ),
            );
        }
        let rev = reversal_chain(ctx.lattice, ord);
        let rev_index = glex.index_of(&rev).expect("reversal chain is maximal");
        if glex.distances_to_sink()[rev_index] != Some(bound) {
            ctx.violation(
                claim,
                &format!("order={ord}"),
                format!(
                    "reversal chain {} sits at distance {:?}, expected {bound}",
                    rev.render(ctx.lattice),
                    glex.distances_to_sink()[rev_index]
                ),
            );
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(
            claim,
            format!(
                "{} orders: max directed eccentricity = C(r,2) = {bound}, attained by the reversal chain",
                ctx.orders.len()
            ),
        );
    }
    Ok(())
}

fn check_reversal_inversions(ctx: &mut Ctx) -> Result<(), Error> {
    let claim = "reversal-inversions";
    for ord in ctx.orders {
        let glex = GlexGraph::build(ctx.lattice, ord, ctx.caps)?;
        let rev = reversal_chain(ctx.lattice, ord);
        let rev_index = glex.index_of(&rev).expect("reversal chain is maximal");
        // Forward search from the reversal chain; every reachable edge must
        // remove exactly one inversion.
        let mut seen = vec![false; glex.len()];
        let mut stack = vec![rev_index];
        seen[rev_index] = true;
        while let Some(u) = stack.pop() {
            let inv_u = glex.label_sequence(u).inversions(ord);
            for e in glex.edges(u) {
                let inv_v = glex.label_sequence(e.to).inversions(ord);
                if inv_u != inv_v + 1 {
                    ctx.violation(
                        claim,
                        &format!("order={ord}"),
                        format!(
                            "edge {} → {} changes inversions {inv_u} → {inv_v}",
                            glex.chain(u).render(ctx.lattice),
                            glex.chain(e.to).render(ctx.lattice)
                        ),
                    );
                }
                if !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
    }
    if ctx.violations_for(claim) == 0 {
        ctx.info(
            claim,
            format!(
                "{} orders: every move reachable from the reversal chain removes exactly one inversion",
                ctx.orders.len()
            ),
        );
    }
    Ok(())
}

fn check_hasse_equals_glex(ctx: &mut Ctx) -> Result<(), Error> {
    for ord in ctx.orders {
        let order = DescentOrder::build(ctx.lattice, ord, ctx.caps)?;
        let glex = GlexGraph::build(ctx.lattice, ord, ctx.caps)?;
        let cmp = order.compare_glex(&glex);
        if !cmp.equal() {
            ctx.violation(
                HASSE_CLAIM,
                &format!("order={ord}"),
                format!(
                    "{} orientation edges absent from the Hasse diagram, {} Hasse covers absent from the orientation",
                    cmp.missing_from_hasse.len(),
                    cmp.missing_from_glex.len()
                ),
            );
        }
    }
    if ctx.violations_for(HASSE_CLAIM) == 0 {
        ctx.info(
            HASSE_CLAIM,
            format!(
                "{} orders: Hasse diagram of the descent order equals the orientation edge-for-edge",
                ctx.orders.len()
            ),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn suite_passes_on_u34() {
        let m = Matroid::uniform(3, 4, &caps()).unwrap();
        let report = run_suite(&m, "uniform(3,4)", &OrderSelection::All, &caps()).unwrap();
        assert!(report.passed(), "violations: {:?}", report.violations().collect::<Vec<_>>());
        // One info finding per claim.
        assert_eq!(report.findings.len(), CLAIMS.len() + 1);
        for claim in CLAIMS.iter().chain([&HASSE_CLAIM]) {
            assert!(
                report.findings.iter().any(|f| f.claim == *claim),
                "missing claim {claim}"
            );
        }
    }

    #[test]
    fn suite_passes_on_near_pencil_flats() {
        let sets: Vec<AtomSet> = [
            vec![],
            vec![1],
            vec![2],
            vec![3],
            vec![4],
            vec![1, 2, 4],
            vec![1, 3],
            vec![2, 3],
            vec![3, 4],
            vec![1, 2, 3, 4],
        ]
        .iter()
        .map(|f| f.iter().map(|&l| Atom::new(l)).collect())
        .collect();
        let m = Matroid::from_flats(4, &sets, &caps()).unwrap();
        let report = run_suite(&m, "flats(n=4)", &OrderSelection::All, &caps()).unwrap();
        assert!(report.passed(), "violations: {:?}", report.violations().collect::<Vec<_>>());
    }

    #[test]
    fn selection_rules() {
        assert_eq!(OrderSelection::automatic(4), OrderSelection::All);
        assert_eq!(OrderSelection::automatic(5), OrderSelection::All);
        assert_eq!(
            OrderSelection::automatic(6),
            OrderSelection::Random { count: 50, seed: 42 }
        );
        assert_eq!(OrderSelection::All.orders(3).len(), 6);
        assert_eq!(OrderSelection::Random { count: 7, seed: 1 }.orders(5).len(), 7);
    }

    #[test]
    fn random_selection_is_deterministic() {
        let m = Matroid::uniform(2, 4, &caps()).unwrap();
        let sel = OrderSelection::Random { count: 5, seed: 42 };
        let a = run_suite(&m, "uniform(2,4)", &sel, &caps()).unwrap();
        let b = run_suite(&m, "uniform(2,4)", &sel, &caps()).unwrap();
        let lines = |r: &SuiteReport| {
            r.findings
                .iter()
                .map(|f| format!("{}|{}|{}|{}", f.severity, f.claim, f.instance, f.witness))
                .collect::<Vec<_>>()
        };
        assert_eq!(lines(&a), lines(&b));
        assert!(a.passed());
    }
}
