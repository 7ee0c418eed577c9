//! The lattice of flats of a matroid.
//!
//! Flats are enumerated by closure BFS from ∅ and held in a canonical order
//! (rank, then atom-set lex), so every downstream enumeration is
//! deterministic. Cover relations come out of the BFS for matroid-backed
//! lattices; [`FlatsLattice::from_closed_sets`] builds the containment order of
//! an arbitrary set family instead (used to vet explicit flat lists before
//! they are accepted as matroids). [`FlatsLattice::verify_geometric`] checks
//! the geometric-lattice axioms and reports a concrete witness per failure.

use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::atoms::{Atom, AtomSet};
use crate::matroid::Matroid;
use crate::{Caps, Error};

/// Lattices with at most this many flats get an eagerly filled join table.
const JOIN_TABLE_MAX_FLATS: usize = 4096;
/// Size guard for explicit set families (their cover pruning is cubic).
const RAW_FAMILY_LIMIT: usize = 10_000;

/// The lattice of flats, bottom ∅ to top the full closure.
#[derive(Clone, Debug)]
pub struct FlatsLattice {
    n: usize,
    rank: usize,
    flats: Vec<AtomSet>,
    rank_of: Vec<usize>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
    index: HashMap<AtomSet, usize>,
    join_table: Option<Vec<u32>>,
    /// Joins computable by walking cover edges (matroid-backed lattices).
    walkable: bool,
}

impl FlatsLattice {
    /// Enumerate the flats of `m` by closing F ∪ {x} breadth-first from ∅.
    pub fn build(m: &Matroid, caps: &Caps) -> Result<FlatsLattice, Error> {
        let n = m.n();
        let bottom = m.closure(AtomSet::EMPTY);
        let mut discovered: HashMap<AtomSet, usize> = HashMap::from([(bottom, 0)]);
        let mut sets = vec![bottom];
        let mut parent: Vec<Option<(usize, Atom)>> = vec![None];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut head = 0;
        while head < sets.len() {
            let f = sets[head];
            for x in m.ground().atoms().filter(|&x| !f.contains(x)) {
                let g = m.closure(f.insert(x));
                let to = match discovered.get(&g) {
                    Some(&i) => i,
                    None => {
                        if sets.len() == caps.flats {
                            return Err(Error::FlatCap { cap: caps.flats });
                        }
                        discovered.insert(g, sets.len());
                        sets.push(g);
                        parent.push(Some((head, x)));
                        sets.len() - 1
                    }
                };
                if !edges.contains(&(head, to)) {
                    edges.push((head, to));
                }
            }
            head += 1;
        }

        let rank_of_raw: Vec<usize> = sets.iter().map(|&f| m.rank(f)).collect();
        let order = canonical_permutation(&sets, &rank_of_raw);
        let mut lattice = assemble(n, &sets, &rank_of_raw, &edges, &order, true);
        // A cover candidate that skips a rank can only arise from a
        // non-matroidal rank function (explicit flat families); prune those.
        if !m.rank_is_matroidal() {
            prune_covers(&mut lattice);
        }
        let parents_canonical: Vec<Option<(usize, Atom)>> = {
            let mut v = vec![None; sets.len()];
            for (old, p) in parent.iter().enumerate() {
                v[order[old]] = p.map(|(w, a)| (order[w], a));
            }
            v
        };
        if lattice.len() <= JOIN_TABLE_MAX_FLATS && m.rank_is_matroidal() {
            lattice.fill_join_table(&parents_canonical);
        }
        Ok(lattice)
    }

    /// Containment order of an explicit set family, with rank = height. No
    /// lattice or matroid structure is assumed; pair with
    /// [`FlatsLattice::verify_geometric`] to find out what the family is.
    pub fn from_closed_sets(n: usize, listed: &[AtomSet], caps: &Caps) -> Result<FlatsLattice, Error> {
        let mut sets: Vec<AtomSet> = Vec::new();
        for &f in listed {
            if !sets.contains(&f) {
                sets.push(f);
            }
        }
        if sets.is_empty() {
            return Err(Error::Spec("empty set family".into()));
        }
        if sets.len() > caps.flats.min(RAW_FAMILY_LIMIT) {
            return Err(Error::FlatCap { cap: caps.flats.min(RAW_FAMILY_LIMIT) });
        }
        // Height by longest containment chain; size order is topological.
        let mut by_size: Vec<usize> = (0..sets.len()).collect();
        by_size.sort_by_key(|&i| sets[i].len());
        let mut height = vec![0usize; sets.len()];
        for &i in &by_size {
            height[i] = (0..sets.len())
                .filter(|&j| sets[j].is_proper_subset_of(sets[i]))
                .map(|j| height[j] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for u in 0..sets.len() {
            for v in 0..sets.len() {
                if sets[u].is_proper_subset_of(sets[v])
                    && !(0..sets.len()).any(|w| {
                        sets[u].is_proper_subset_of(sets[w]) && sets[w].is_proper_subset_of(sets[v])
                    })
                {
                    edges.push((u, v));
                }
            }
        }
        let order = canonical_permutation(&sets, &height);
        Ok(assemble(n, &sets, &height, &edges, &order, false))
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ground-set size n.
    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Lattice rank r = rank of the top flat.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flats(&self) -> &[AtomSet] {
        &self.flats
    }

    pub fn flat(&self, u: usize) -> AtomSet {
        self.flats[u]
    }

    pub fn rank_of(&self, u: usize) -> usize {
        self.rank_of[u]
    }

    pub fn covers_up(&self, u: usize) -> &[usize] {
        &self.covers_up[u]
    }

    pub fn covers_down(&self, u: usize) -> &[usize] {
        &self.covers_down[u]
    }

    pub fn index_of(&self, f: AtomSet) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    /// Order relation u ≤ v (atom-set containment).
    pub fn le(&self, u: usize, v: usize) -> bool {
        self.flats[u].is_subset_of(self.flats[v])
    }

    /// Indices of the rank-1 flats, in canonical order.
    pub fn atom_flats(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.rank_of[u] == 1).collect()
    }

    /// A(u): the atoms below the flat u. For simple matroids this is the atom
    /// set of u itself.
    pub fn atom_set(&self, u: usize) -> AtomSet {
        self.flats[u]
    }

    /// The rank-1 flat containing atom `a`, if the singleton is a flat.
    pub fn atom_flat(&self, a: Atom) -> Option<usize> {
        self.index_of(AtomSet::singleton(a))
    }

    /// Least upper bound, if unique.
    pub fn try_join(&self, u: usize, v: usize) -> Option<usize> {
        if let Some(table) = &self.join_table {
            return Some(table[u * self.len() + v] as usize);
        }
        if self.walkable {
            Some(self.join_walk(u, v))
        } else {
            let ubs: Vec<usize> = (0..self.len())
                .filter(|&w| self.le(u, w) && self.le(v, w))
                .collect();
            let minimal: Vec<usize> = ubs
                .iter()
                .copied()
                .filter(|&w| !ubs.iter().any(|&x| x != w && self.le(x, w)))
                .collect();
            match minimal.as_slice() {
                [w] => Some(*w),
                _ => None,
            }
        }
    }

    /// Greatest lower bound, if unique.
    pub fn try_meet(&self, u: usize, v: usize) -> Option<usize> {
        if self.walkable {
            // Flats of a matroid are intersection-closed.
            self.index_of(self.flats[u].intersection(self.flats[v]))
        } else {
            let lbs: Vec<usize> = (0..self.len())
                .filter(|&w| self.le(w, u) && self.le(w, v))
                .collect();
            let maximal: Vec<usize> = lbs
                .iter()
                .copied()
                .filter(|&w| !lbs.iter().any(|&x| x != w && self.le(w, x)))
                .collect();
            match maximal.as_slice() {
                [w] => Some(*w),
                _ => None,
            }
        }
    }

    pub fn join(&self, u: usize, v: usize) -> usize {
        self.try_join(u, v).expect("join exists in a geometric lattice")
    }

    pub fn meet(&self, u: usize, v: usize) -> usize {
        self.try_meet(u, v).expect("meet exists in a geometric lattice")
    }

    /// One cover-walk step: the cover of `u` whose flat contains `a`.
    fn step(&self, u: usize, a: Atom) -> usize {
        if self.flats[u].contains(a) {
            return u;
        }
        *self
            .covers_up[u]
            .iter()
            .find(|&&v| self.flats[v].contains(a))
            .expect("matroid lattice has a cover of u through each missing atom")
    }

    fn join_walk(&self, u: usize, v: usize) -> usize {
        self.flats[v].iter().fold(u, |w, a| self.step(w, a))
    }

    fn fill_join_table(&mut self, parents: &[Option<(usize, Atom)>]) {
        let f = self.len();
        let mut table = vec![0u32; f * f];
        for v in 0..f {
            match parents[v] {
                // v = bottom: join(u, ∅) = u.
                None => {
                    for u in 0..f {
                        table[u * f + v] = u as u32;
                    }
                }
                // v = w ∨ {a}: join(u, v) = step(join(u, w), a).
                Some((w, a)) => {
                    for u in 0..f {
                        table[u * f + v] = self.step(table[u * f + w] as usize, a) as u32;
                    }
                }
            }
        }
        self.join_table = Some(table);
    }

    /// The closed interval [lo, hi].
    pub fn interval(&self, lo: usize, hi: usize) -> Result<Interval, Error> {
        if !self.le(lo, hi) {
            return Err(Error::NotAnInterval { lo: self.flats[lo], hi: self.flats[hi] });
        }
        let members = (0..self.len())
            .filter(|&u| self.le(lo, u) && self.le(u, hi))
            .collect();
        Ok(Interval { lo, hi, members })
    }

    /// Check the geometric-lattice axioms on the whole lattice.
    pub fn verify_geometric(&self) -> GeometricReport {
        let members: Vec<usize> = (0..self.len()).collect();
        check_axioms(self, &members)
    }

    /// Hasse diagram in DOT, flats clustered by rank.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for (u, f) in self.flats.iter().enumerate() {
            let _ = writeln!(out, "  f{u} [label=\"{f}\"];");
        }
        for r in 0..=self.rank {
            let ids: Vec<String> = (0..self.len())
                .filter(|&u| self.rank_of[u] == r)
                .map(|u| format!("f{u};"))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join(" "));
        }
        for (u, ups) in self.covers_up.iter().enumerate() {
            for &v in ups {
                let _ = writeln!(out, "  f{u} -> f{v} [dir=none];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// An interval [lo, hi] of a lattice; element indices are global.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: usize,
    hi: usize,
    members: Vec<usize>,
}

impl Interval {
    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Members in canonical order (lo first, hi last).
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.contains(&u)
    }

    /// Interval rank (length of its saturated chains).
    pub fn height(&self, lattice: &FlatsLattice) -> usize {
        lattice.rank_of(self.hi) - lattice.rank_of(self.lo)
    }

    /// Check the geometric axioms on the induced subposet.
    pub fn verify_geometric(&self, lattice: &FlatsLattice) -> GeometricReport {
        check_axioms(lattice, &self.members)
    }
}

/// Per-axiom outcome of [`FlatsLattice::verify_geometric`]: `None` is a pass,
/// `Some(witness)` describes the first violation found in canonical order.
#[derive(Clone, Debug, Serialize)]
pub struct GeometricReport {
    pub bounded: Option<String>,
    pub graded: Option<String>,
    pub atomic: Option<String>,
    pub semimodular: Option<String>,
}

impl GeometricReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    /// "axiom: witness" for the first failing axiom.
    pub fn first_failure(&self) -> Option<String> {
        [
            ("bounded", &self.bounded),
            ("graded", &self.graded),
            ("atomic", &self.atomic),
            ("semimodular", &self.semimodular),
        ]
        .iter()
        .find_map(|(name, w)| w.as_ref().map(|w| format!("{name}: {w}")))
    }

    /// One "axiom: pass/FAIL" line per axiom.
    pub fn lines(&self) -> Vec<String> {
        [
            ("bounded", &self.bounded),
            ("graded", &self.graded),
            ("atomic", &self.atomic),
            ("semimodular", &self.semimodular),
        ]
        .iter()
        .map(|(name, w)| match w {
            None => format!("{name}: pass"),
            Some(witness) => format!("{name}: FAIL — {witness}"),
        })
        .collect()
    }
}

fn canonical_permutation(sets: &[AtomSet], rank: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..sets.len()).collect();
    idx.sort_by(|&a, &b| rank[a].cmp(&rank[b]).then(sets[a].lex_cmp(sets[b])));
    let mut order = vec![0usize; sets.len()];
    for (new, &old) in idx.iter().enumerate() {
        order[old] = new;
    }
    order
}

fn assemble(
    n: usize,
    sets: &[AtomSet],
    rank: &[usize],
    edges: &[(usize, usize)],
    order: &[usize],
    walkable: bool,
) -> FlatsLattice {
    let f = sets.len();
    let mut flats = vec![AtomSet::EMPTY; f];
    let mut rank_of = vec![0usize; f];
    for old in 0..f {
        flats[order[old]] = sets[old];
        rank_of[order[old]] = rank[old];
    }
    let mut covers_up = vec![Vec::new(); f];
    let mut covers_down = vec![Vec::new(); f];
    for &(u, v) in edges {
        covers_up[order[u]].push(order[v]);
        covers_down[order[v]].push(order[u]);
    }
    for list in covers_up.iter_mut().chain(covers_down.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }
    let index = flats.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let top_rank = rank_of[f - 1];
    FlatsLattice {
        n,
        rank: top_rank,
        flats,
        rank_of,
        covers_up,
        covers_down,
        index,
        join_table: None,
        walkable,
    }
}

/// Drop candidate cover edges with another flat strictly between.
fn prune_covers(lattice: &mut FlatsLattice) {
    let f = lattice.len();
    for u in 0..f {
        let keep: Vec<usize> = lattice.covers_up[u]
            .iter()
            .copied()
            .filter(|&v| {
                !(0..f).any(|w| {
                    lattice.flats[u].is_proper_subset_of(lattice.flats[w])
                        && lattice.flats[w].is_proper_subset_of(lattice.flats[v])
                })
            })
            .collect();
        lattice.covers_up[u] = keep;
    }
    let mut covers_down = vec![Vec::new(); f];
    for u in 0..f {
        for &v in &lattice.covers_up[u] {
            covers_down[v].push(u);
        }
    }
    for list in covers_down.iter_mut() {
        list.sort_unstable();
    }
    lattice.covers_down = covers_down;
}

/// Axiom checker shared by whole-lattice and interval verification. `members`
/// must be closed under "betweenness" (all of a lattice, or an interval), so
/// the induced covers are the restricted cover lists.
fn check_axioms(lattice: &FlatsLattice, members: &[usize]) -> GeometricReport {
    let in_view = |u: usize| members.contains(&u);
    let covers_in = |u: usize| -> Vec<usize> {
        lattice.covers_up(u).iter().copied().filter(|&v| in_view(v)).collect()
    };
    let fl = |u: usize| lattice.flat(u);

    // Bounded: unique minimal and unique maximal element.
    let minimal: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&u| !members.iter().any(|&w| w != u && lattice.le(w, u)))
        .collect();
    let maximal: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&u| !members.iter().any(|&w| w != u && lattice.le(u, w)))
        .collect();
    let bounded = match (minimal.as_slice(), maximal.as_slice()) {
        ([_], [_]) => None,
        ([_, ..], _) if minimal.len() > 1 => Some(format!(
            "two minimal elements {} and {}",
            fl(minimal[0]),
            fl(minimal[1])
        )),
        _ => Some(format!(
            "two maximal elements {} and {}",
            fl(maximal[0]),
            fl(maximal[1])
        )),
    };
    if bounded.is_some() {
        let skip = Some("not checked: poset is not bounded".to_string());
        return GeometricReport { bounded, graded: skip.clone(), atomic: skip.clone(), semimodular: skip };
    }
    let bot = minimal[0];

    // Graded: every cover advances the longest-path depth by exactly one.
    let mut depth: HashMap<usize, usize> = HashMap::new();
    for &u in members {
        // Canonical member order ascends in rank, hence is topological.
        let d = lattice
            .covers_down(u)
            .iter()
            .filter(|&&w| in_view(w))
            .map(|&w| depth[&w] + 1)
            .max()
            .unwrap_or(0);
        depth.insert(u, d);
    }
    let mut graded = None;
    'outer: for &u in members {
        for v in covers_in(u) {
            if depth[&v] != depth[&u] + 1 {
                graded = Some(format!(
                    "cover {} ⋖ {}: depths {} and {} differ by more than one",
                    fl(u),
                    fl(v),
                    depth[&u],
                    depth[&v]
                ));
                break 'outer;
            }
        }
    }

    // Atomic: every element is the join of the atoms below it.
    let atoms = covers_in(bot);
    let mut atomic = None;
    for &v in members {
        let mut acc = bot;
        for &a in atoms.iter().filter(|&&a| lattice.le(a, v)) {
            match lattice.try_join(acc, a) {
                Some(j) => acc = j,
                None => {
                    atomic = Some(format!("no unique join of {} and {}", fl(acc), fl(a)));
                    break;
                }
            }
        }
        if atomic.is_some() {
            break;
        }
        if acc != v {
            atomic = Some(format!(
                "element {} is not the join of the atoms below it (that join is {})",
                fl(v),
                fl(acc)
            ));
            break;
        }
    }

    // Semimodular: two covers of a common element are both covered by their join.
    let mut semimodular = None;
    'semi: for &x in members {
        let ups = covers_in(x);
        for (i, &y) in ups.iter().enumerate() {
            for &y2 in &ups[i + 1..] {
                let Some(z) = lattice.try_join(y, y2) else {
                    semimodular =
                        Some(format!("({}, {}, {}): no unique join", fl(x), fl(y), fl(y2)));
                    break 'semi;
                };
                if !covers_in(y).contains(&z) || !covers_in(y2).contains(&z) {
                    semimodular = Some(format!(
                        "({}, {}, {}): their join {} does not cover both",
                        fl(x),
                        fl(y),
                        fl(y2),
                        fl(z)
                    ));
                    break 'semi;
                }
            }
        }
    }

    GeometricReport { bounded, graded, atomic, semimodular }
}
