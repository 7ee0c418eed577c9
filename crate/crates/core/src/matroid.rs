//! Simple matroids given by a rank oracle.
//!
//! Four sources: uniform U(k,n), graphic (cycle matroid of a simple graph),
//! linear over F_p for a prime p ≤ 7, and an explicit intersection-closed flat
//! family. Ground elements are atoms 1..=n. Every constructor rejects
//! non-simple input with a diagnostic naming the offending loop or parallel
//! pair, and validates the rank axioms (exhaustively for n ≤ 8, on 10,000
//! seeded samples above).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::atoms::{Atom, AtomSet, MAX_ATOMS};
use crate::{Caps, Error};

/// Ground-set size cap on the number of graph vertices a graphic spec may name.
const MAX_VERTICES: usize = 4096;
/// Dimension cap for linear representations.
const MAX_DIMENSION: usize = 64;
/// Seed for the sampled rank-axiom validation on large ground sets.
const AXIOM_SAMPLE_SEED: u64 = 0x9e37_79b9;
const AXIOM_SAMPLES: usize = 10_000;

/// The ground set {1, ..., n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize, caps: &Caps) -> Result<GroundSet, Error> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        let cap = caps.ground.min(MAX_ATOMS);
        if n > cap {
            return Err(Error::GroundCap { n, cap });
        }
        Ok(GroundSet { n })
    }

    pub fn len(self) -> usize {
        self.n
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn full_set(self) -> AtomSet {
        AtomSet::full(self.n)
    }

    pub fn atoms(self) -> impl Iterator<Item = Atom> {
        (1..=self.n).map(Atom::new)
    }
}

#[derive(Clone, Debug)]
pub enum MatroidSource {
    Uniform {
        k: usize,
    },
    Graphic {
        vertices: usize,
        /// 0-based vertex endpoints per edge, indexed by atom index.
        edges: Vec<(usize, usize)>,
    },
    Linear {
        p: u64,
        /// Row vectors reduced mod p, indexed by atom index.
        vectors: Vec<Vec<u64>>,
    },
    Flats {
        /// The listed flats (deduplicated).
        flats: Vec<AtomSet>,
        /// Height of each listed flat in the containment order.
        height: HashMap<AtomSet, usize>,
    },
}

/// A simple matroid on atoms 1..=n, exposing rank and closure oracles.
#[derive(Clone, Debug)]
pub struct Matroid {
    ground: GroundSet,
    source: MatroidSource,
}

impl Matroid {
    /// Uniform matroid U(k,n): r(S) = min(|S|, k). Requires 2 ≤ k ≤ n.
    pub fn uniform(k: usize, n: usize, caps: &Caps) -> Result<Matroid, Error> {
        let ground = GroundSet::new(n, caps)?;
        if k < 2 {
            return Err(Error::UniformRankTooSmall { k });
        }
        if k > n {
            return Err(Error::UniformRankTooLarge { k, n });
        }
        let m = Matroid { ground, source: MatroidSource::Uniform { k } };
        m.validate()?;
        Ok(m)
    }

    /// Cycle matroid of a graph on `vertices` vertices with the given 1-based
    /// edge list; atoms are edge indices. Loops and parallel edges are rejected.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)], caps: &Caps) -> Result<Matroid, Error> {
        if vertices == 0 {
            return Err(Error::NoVertices);
        }
        if vertices > MAX_VERTICES {
            return Err(Error::Spec(format!("vertex count {vertices} exceeds {MAX_VERTICES}")));
        }
        let ground = GroundSet::new(edges.len(), caps)?;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut zero_based = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            let index = i + 1;
            if u == 0 || v == 0 || u > vertices || v > vertices {
                return Err(Error::VertexRange { index, u, v, vertices });
            }
            if u == v {
                return Err(Error::LoopEdge { index, v });
            }
            let key = (u.min(v), u.max(v));
            if let Some(&e1) = seen.get(&key) {
                return Err(Error::ParallelEdges { e1, e2: index, u: key.0, v: key.1 });
            }
            seen.insert(key, index);
            zero_based.push((u - 1, v - 1));
        }
        let m = Matroid { ground, source: MatroidSource::Graphic { vertices, edges: zero_based } };
        m.check_simple()?;
        m.validate()?;
        Ok(m)
    }

    /// Linear matroid of the given vectors over F_p, p a prime ≤ 7; atoms are
    /// vector indices. Zero and pairwise-parallel vectors are rejected.
    pub fn linear(p: u64, vectors: &[Vec<u64>], caps: &Caps) -> Result<Matroid, Error> {
        if !matches!(p, 2 | 3 | 5 | 7) {
            return Err(Error::BadPrime { p });
        }
        let ground = GroundSet::new(vectors.len(), caps)?;
        let d = vectors[0].len();
        if d == 0 || d > MAX_DIMENSION {
            return Err(Error::Spec(format!("vector dimension must be 1..={MAX_DIMENSION}, got {d}")));
        }
        let mut reduced: Vec<Vec<u64>> = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch { index: i + 1, got: v.len(), expected: d });
            }
            reduced.push(v.iter().map(|&x| x % p).collect());
        }
        for (i, v) in reduced.iter().enumerate() {
            if v.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector { index: i + 1, p });
            }
        }
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                if (1..p).any(|c| reduced[i].iter().zip(&reduced[j]).all(|(&a, &b)| a * c % p == b)) {
                    return Err(Error::ParallelVectors { i: i + 1, j: j + 1, p });
                }
            }
        }
        let m = Matroid { ground, source: MatroidSource::Linear { p, vectors: reduced } };
        m.check_simple()?;
        m.validate()?;
        Ok(m)
    }

    /// Matroid given by an explicit flat family. The list must contain ∅ and
    /// the full set and be closed under intersection; the rank of S is the
    /// height of the smallest listed flat containing S. The induced lattice is
    /// validated as geometric and the matroid as simple before acceptance.
    pub fn from_flats(n: usize, listed: &[AtomSet], caps: &Caps) -> Result<Matroid, Error> {
        let ground = GroundSet::new(n, caps)?;
        let full = ground.full_set();
        let mut flats: Vec<AtomSet> = Vec::new();
        for &f in listed {
            if let Some(atom) = f.minus(full).min_natural() {
                return Err(Error::FlatOutsideGround { flat: f, atom: atom.label(), n });
            }
            if !flats.contains(&f) {
                flats.push(f);
            }
        }
        if !flats.contains(&AtomSet::EMPTY) {
            return Err(Error::MissingEmptyFlat);
        }
        if !flats.contains(&full) {
            return Err(Error::MissingFullFlat);
        }
        for i in 0..flats.len() {
            for j in i + 1..flats.len() {
                let meet = flats[i].intersection(flats[j]);
                if !flats.contains(&meet) {
                    return Err(Error::IntersectionNotClosed { a: flats[i], b: flats[j], meet });
                }
            }
        }
        let poset = crate::lattice::FlatsLattice::from_closed_sets(n, &flats, caps)?;
        let report = poset.verify_geometric();
        if let Some(failure) = report.first_failure() {
            return Err(Error::NotGeometric(failure));
        }
        let height: HashMap<AtomSet, usize> =
            (0..poset.len()).map(|i| (poset.flat(i), poset.rank_of(i))).collect();
        let m = Matroid { ground, source: MatroidSource::Flats { flats, height } };
        m.check_simple()?;
        m.validate()?;
        Ok(m)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n
    }

    pub fn source(&self) -> &MatroidSource {
        &self.source
    }

    /// Whether the rank oracle is matroidal by construction (so that
    /// closure(F ∪ {x}) always covers the flat F). True for all sources except
    /// explicit flat families, whose rank is a derived height function.
    pub fn rank_is_matroidal(&self) -> bool {
        !matches!(self.source, MatroidSource::Flats { .. })
    }

    /// Matroid rank of an atom set.
    pub fn rank(&self, s: AtomSet) -> usize {
        match &self.source {
            MatroidSource::Uniform { k } => s.len().min(*k),
            MatroidSource::Graphic { vertices, edges } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(parent: &mut [usize], mut x: usize) -> usize {
                    while parent[x] != x {
                        parent[x] = parent[parent[x]];
                        x = parent[x];
                    }
                    x
                }
                let mut merges = 0;
                for a in s.iter() {
                    let (u, v) = edges[a.index()];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        merges += 1;
                    }
                }
                merges
            }
            MatroidSource::Linear { p, vectors } => {
                let mut rows: Vec<Vec<u64>> = s.iter().map(|a| vectors[a.index()].clone()).collect();
                gauss_rank(&mut rows, *p)
            }
            MatroidSource::Flats { height, .. } => height[&self.closure(s)],
        }
    }

    /// Closure {x : r(S ∪ {x}) = r(S)}; for flat families, the smallest listed
    /// flat containing S (the same set, computed directly).
    pub fn closure(&self, s: AtomSet) -> AtomSet {
        match &self.source {
            MatroidSource::Flats { flats, .. } => {
                let mut acc = self.ground.full_set();
                for &f in flats {
                    if s.is_subset_of(f) {
                        acc = acc.intersection(f);
                    }
                }
                acc
            }
            _ => {
                let r = self.rank(s);
                self.ground
                    .atoms()
                    .filter(|&x| s.contains(x) || self.rank(s.insert(x)) == r)
                    .collect()
            }
        }
    }

    /// Rank of the whole matroid.
    pub fn full_rank(&self) -> usize {
        self.rank(self.ground.full_set())
    }

    /// r({x}) = 1 for every atom and r({x,y}) = 2 for every pair.
    pub fn is_simple(&self) -> bool {
        self.check_simple().is_ok()
    }

    fn check_simple(&self) -> Result<(), Error> {
        for x in self.ground.atoms() {
            let sx = AtomSet::singleton(x);
            let r = self.rank(sx);
            if r != 1 {
                return Err(Error::NotSimple(format!("atom {x} has rank {r} (a loop)")));
            }
            let cl = self.closure(sx);
            if cl != sx {
                let y = cl.remove(x).min_natural().expect("closure larger than singleton");
                return Err(Error::NotSimple(format!(
                    "atoms {x} and {y} are parallel (closure of {{{x}}} is {cl})"
                )));
            }
        }
        for x in self.ground.atoms() {
            for y in self.ground.atoms().filter(|&y| y > x) {
                let pair = AtomSet::singleton(x).insert(y);
                let r = self.rank(pair);
                if r != 2 {
                    return Err(Error::NotSimple(format!("pair {{{x},{y}}} has rank {r}")));
                }
            }
        }
        Ok(())
    }

    /// Rank-axiom validation: r(∅) = 0, unit increase, monotonicity, and
    /// submodularity — exhaustive for n ≤ 8, sampled with a fixed seed above.
    fn validate(&self) -> Result<(), Error> {
        if self.rank(AtomSet::EMPTY) != 0 {
            return Err(Error::RankAxiom(format!(
                "r(∅) = {}, expected 0",
                self.rank(AtomSet::EMPTY)
            )));
        }
        let n = self.ground.n;
        if n <= 8 {
            let all: Vec<AtomSet> = subsets(self.ground.full_set());
            for &s in &all {
                self.check_unit_increase(s)?;
            }
            for &s in &all {
                for &t in &all {
                    self.check_submodular(s, t)?;
                }
            }
        } else {
            let mut rng = ChaCha20Rng::seed_from_u64(AXIOM_SAMPLE_SEED);
            let full = self.ground.full_set();
            for _ in 0..AXIOM_SAMPLES {
                let s = random_subset(&mut rng, full);
                let t = random_subset(&mut rng, full);
                self.check_unit_increase(s)?;
                self.check_submodular(s, t)?;
            }
        }
        Ok(())
    }

    fn check_unit_increase(&self, s: AtomSet) -> Result<(), Error> {
        let r = self.rank(s);
        for x in self.ground.atoms().filter(|&x| !s.contains(x)) {
            let rx = self.rank(s.insert(x));
            if rx != r && rx != r + 1 {
                return Err(Error::RankAxiom(format!(
                    "r({} ∪ {{{x}}}) = {rx} but r({}) = {r}",
                    s, s
                )));
            }
        }
        Ok(())
    }

    fn check_submodular(&self, s: AtomSet, t: AtomSet) -> Result<(), Error> {
        let (rs, rt) = (self.rank(s), self.rank(t));
        if s.is_subset_of(t) && rs > rt {
            return Err(Error::RankAxiom(format!("r({s}) = {rs} > r({t}) = {rt} despite {s} ⊆ {t}")));
        }
        let (ru, ri) = (self.rank(s.union(t)), self.rank(s.intersection(t)));
        if ru + ri > rs + rt {
            return Err(Error::RankAxiom(format!(
                "r(S∪T) + r(S∩T) = {ru} + {ri} > r(S) + r(T) = {rs} + {rt} for S = {s}, T = {t}"
            )));
        }
        Ok(())
    }
}

/// All subsets of `full`, in mask order.
pub fn subsets(full: AtomSet) -> Vec<AtomSet> {
    let atoms: Vec<Atom> = full.iter().collect();
    let mut out = Vec::with_capacity(1 << atoms.len());
    for mask in 0u64..1 << atoms.len() {
        out.push(
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect(),
        );
    }
    out
}

/// A uniformly random subset of `full` (each atom kept with probability ½).
pub fn random_subset(rng: &mut ChaCha20Rng, full: AtomSet) -> AtomSet {
    full.iter().filter(|_| rng.random_bool(0.5)).collect()
}

/// Row rank of `rows` mod the prime `p`, by Gaussian elimination.
fn gauss_rank(rows: &mut [Vec<u64>], p: u64) -> usize {
    let d = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..d {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col] % p, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_multiple_of(p) {
                let factor = row[col] % p;
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - factor) * pv) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut result = 1;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// On-disk matroid description ("matroid-spec v1"): a JSON object tagged by
/// `kind`, with 1-based atoms and vertices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform { rank: usize, elements: usize },
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Linear { prime: u64, vectors: Vec<Vec<u64>> },
    Flats { ground: usize, flats: Vec<Vec<usize>> },
}

impl MatroidSpec {
    pub fn from_json(text: &str) -> Result<MatroidSpec, Error> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn build(&self, caps: &Caps) -> Result<Matroid, Error> {
        match self {
            MatroidSpec::Uniform { rank, elements } => Matroid::uniform(*rank, *elements, caps),
            MatroidSpec::Graphic { vertices, edges } => Matroid::graphic(*vertices, edges, caps),
            MatroidSpec::Linear { prime, vectors } => Matroid::linear(*prime, vectors, caps),
            MatroidSpec::Flats { ground, flats } => {
                let mut sets = Vec::with_capacity(flats.len());
                for f in flats {
                    for &a in f {
                        if a == 0 || a > MAX_ATOMS {
                            return Err(Error::Spec(format!("atom {a} outside 1..={MAX_ATOMS}")));
                        }
                    }
                    sets.push(f.iter().map(|&a| Atom::new(a)).collect());
                }
                Matroid::from_flats(*ground, &sets, caps)
            }
        }
    }

    /// Short instance label for reports, e.g. "uniform(3,4)".
    pub fn label(&self) -> String {
        match self {
            MatroidSpec::Uniform { rank, elements } => format!("uniform({rank},{elements})"),
            MatroidSpec::Graphic { vertices, edges } => {
                format!("graphic(v={vertices},e={})", edges.len())
            }
            MatroidSpec::Linear { prime, vectors } => {
                format!("linear(p={prime},n={})", vectors.len())
            }
            MatroidSpec::Flats { ground, flats } => {
                format!("flats(n={ground},count={})", flats.len())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn set(labels: &[usize]) -> AtomSet {
        labels.iter().map(|&l| Atom::new(l)).collect()
    }

    /// The near-pencil rank-3 lattice on 4 atoms: e1, e2, e3, e1+e2 over F_3.
    pub(crate) fn near_pencil_vectors() -> Vec<Vec<u64>> {
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]
    }

    #[test]
    fn uniform_rank_and_closure() {
        let m = Matroid::uniform(3, 4, &caps()).unwrap();
        assert_eq!(m.rank(AtomSet::EMPTY), 0);
        assert_eq!(m.rank(set(&[1, 2])), 2);
        assert_eq!(m.rank(AtomSet::full(4)), 3);
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.closure(set(&[1, 2])), set(&[1, 2]));
        assert_eq!(m.closure(set(&[1, 2, 3])), AtomSet::full(4));
        assert!(m.is_simple());
    }

    #[test]
    fn uniform_bounds() {
        assert!(matches!(Matroid::uniform(1, 3, &caps()), Err(Error::UniformRankTooSmall { k: 1 })));
        assert!(matches!(
            Matroid::uniform(5, 4, &caps()),
            Err(Error::UniformRankTooLarge { k: 5, n: 4 })
        ));
        assert!(matches!(
            Matroid::uniform(2, 15, &caps()),
            Err(Error::GroundCap { n: 15, cap: 14 })
        ));
        let wide = Caps { ground: 20, ..Caps::default() };
        assert!(Matroid::uniform(2, 15, &wide).is_ok());
    }

    /// K_4: every pair of the 4 vertices joined, atoms = 6 edges.
    pub(crate) fn k4_edges() -> Vec<(usize, usize)> {
        vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    }

    #[test]
    fn graphic_k4() {
        let m = Matroid::graphic(4, &k4_edges(), &caps()).unwrap();
        assert_eq!(m.full_rank(), 3);
        // Edges 1,2,4 form the triangle 1-2-3: rank 2, and the triangle is closed.
        assert_eq!(m.rank(set(&[1, 2, 4])), 2);
        assert_eq!(m.closure(set(&[1, 2])), set(&[1, 2, 4]));
        assert!(m.is_simple());
    }

    #[test]
    fn graphic_rejects_nonsimple() {
        let e = Matroid::graphic(3, &[(1, 2), (1, 1)], &caps()).unwrap_err();
        assert!(matches!(e, Error::LoopEdge { index: 2, v: 1 }));
        let e = Matroid::graphic(3, &[(1, 2), (2, 3), (2, 1)], &caps()).unwrap_err();
        assert!(matches!(e, Error::ParallelEdges { e1: 1, e2: 3, u: 1, v: 2 }));
        let e = Matroid::graphic(2, &[(1, 3)], &caps()).unwrap_err();
        assert!(matches!(e, Error::VertexRange { index: 1, .. }));
    }

    #[test]
    fn linear_near_pencil_matrix() {
        let m = Matroid::linear(3, &near_pencil_vectors(), &caps()).unwrap();
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.rank(set(&[1, 2, 4])), 2);
        assert_eq!(m.closure(set(&[1, 2])), set(&[1, 2, 4]));
        assert_eq!(m.closure(set(&[3, 4])), set(&[3, 4]));
        assert_eq!(m.closure(set(&[1, 4])), set(&[1, 2, 4]));
        assert!(m.is_simple());
    }

    #[test]
    fn linear_rejects_degenerate() {
        assert!(matches!(
            Matroid::linear(4, &near_pencil_vectors(), &caps()),
            Err(Error::BadPrime { p: 4 })
        ));
        let e = Matroid::linear(3, &[vec![1, 0], vec![0, 0]], &caps()).unwrap_err();
        assert!(matches!(e, Error::ZeroVector { index: 2, p: 3 }));
        // (2,2,0) = 2·(1,1,0) mod 3.
        let e = Matroid::linear(3, &[vec![1, 1, 0], vec![0, 0, 1], vec![2, 2, 0]], &caps())
            .unwrap_err();
        assert!(matches!(e, Error::ParallelVectors { i: 1, j: 3, p: 3 }));
        let e = Matroid::linear(3, &[vec![1, 0], vec![0, 1, 1]], &caps()).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch { index: 2, got: 3, expected: 2 }));
    }

    /// Rank oracle with no linear algebra: brute-force span membership count.
    fn linear_rank_naive(vectors: &[Vec<u64>], p: u64, s: AtomSet) -> usize {
        // Count vectors in the span of the selected set by enumerating all
        // coefficient combinations over the selected vectors; the rank is the
        // log_p of the span size.
        let sel: Vec<&Vec<u64>> = s.iter().map(|a| &vectors[a.index()]).collect();
        let d = vectors[0].len();
        let mut span = std::collections::HashSet::new();
        let mut coeffs = vec![0u64; sel.len()];
        loop {
            let mut v = vec![0u64; d];
            for (c, row) in coeffs.iter().zip(&sel) {
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x = (*x + c * y) % p;
                }
            }
            span.insert(v);
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    let mut size = span.len();
                    let mut rank = 0;
                    while size > 1 {
                        size /= p as usize;
                        rank += 1;
                    }
                    return rank;
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn linear_rank_matches_span_count() {
        let vectors = near_pencil_vectors();
        let m = Matroid::linear(3, &vectors, &caps()).unwrap();
        for s in subsets(AtomSet::full(4)) {
            assert_eq!(m.rank(s), linear_rank_naive(&vectors, 3, s), "rank of {s}");
        }
    }

    /// The ten flats of the near-pencil lattice, in rank order.
    pub(crate) fn near_pencil_flats() -> Vec<AtomSet> {
        [
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
        .map(|f| f.iter().map(|&a| Atom::new(a)).collect())
        .collect()
    }

    #[test]
    fn from_flats_accepts_near_pencil_lattice() {
        let m = Matroid::from_flats(4, &near_pencil_flats(), &caps()).unwrap();
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.rank(set(&[1, 2])), 2);
        assert_eq!(m.closure(set(&[1, 2])), set(&[1, 2, 4]));
        assert!(m.is_simple());
        // …and it agrees with the linear representation on every subset.
        let lin = Matroid::linear(3, &near_pencil_vectors(), &caps()).unwrap();
        for s in subsets(AtomSet::full(4)) {
            assert_eq!(m.rank(s), lin.rank(s), "rank of {s}");
            assert_eq!(m.closure(s), lin.closure(s), "closure of {s}");
        }
    }

    #[test]
    fn from_flats_rejects_punctured_uniform() {
        // Flats of U(3,4) with {1,2} removed: the BFS closure of {1,2} jumps
        // straight to the top, so semimodularity fails at (∅, {1}, {2}).
        let mut flats: Vec<AtomSet> = vec![AtomSet::EMPTY];
        flats.extend((1..=4).map(|a| AtomSet::singleton(Atom::new(a))));
        for i in 1..=4usize {
            for j in i + 1..=4 {
                if (i, j) != (1, 2) {
                    flats.push(set(&[i, j]));
                }
            }
        }
        flats.push(AtomSet::full(4));
        let e = Matroid::from_flats(4, &flats, &caps()).unwrap_err();
        match e {
            Error::NotGeometric(msg) => {
                assert!(msg.contains("semimodular"), "unexpected failure: {msg}")
            }
            other => panic!("expected NotGeometric, got {other:?}"),
        }
    }

    #[test]
    fn from_flats_rejects_missing_pieces() {
        let e = Matroid::from_flats(2, &[set(&[1]), set(&[2]), set(&[1, 2])], &caps());
        assert!(matches!(e, Err(Error::MissingEmptyFlat)));
        let e = Matroid::from_flats(2, &[AtomSet::EMPTY, set(&[1]), set(&[2])], &caps());
        assert!(matches!(e, Err(Error::MissingFullFlat)));
        let e = Matroid::from_flats(
            3,
            &[AtomSet::EMPTY, set(&[1, 2]), set(&[2, 3]), set(&[1, 2, 3])],
            &caps(),
        );
        assert!(matches!(e, Err(Error::IntersectionNotClosed { .. })));
        let e = Matroid::from_flats(2, &[AtomSet::EMPTY, set(&[1]), set(&[3]), set(&[1, 2])], &caps());
        assert!(matches!(e, Err(Error::FlatOutsideGround { atom: 3, .. })));
    }

    #[test]
    fn from_flats_rejects_parallel_atoms() {
        // {1,2} is a rank-1 flat: atoms 1 and 2 are parallel.
        let e = Matroid::from_flats(2, &[AtomSet::EMPTY, set(&[1, 2])], &caps()).unwrap_err();
        match e {
            Error::NotSimple(msg) => assert!(msg.contains("parallel"), "got: {msg}"),
            other => panic!("expected NotSimple, got {other:?}"),
        }
    }

    #[test]
    fn rank_one_flat_family_is_legal() {
        let m = Matroid::from_flats(1, &[AtomSet::EMPTY, set(&[1])], &caps()).unwrap();
        assert_eq!(m.full_rank(), 1);
        assert!(m.is_simple());
    }

    #[test]
    fn closure_properties_exhaustive() {
        let ms = [
            Matroid::uniform(3, 4, &caps()).unwrap(),
            Matroid::uniform(2, 4, &caps()).unwrap(),
            Matroid::graphic(4, &k4_edges(), &caps()).unwrap(),
            Matroid::linear(3, &near_pencil_vectors(), &caps()).unwrap(),
        ];
        for m in &ms {
            let all = subsets(m.ground().full_set());
            for &s in &all {
                let cl = m.closure(s);
                assert!(s.is_subset_of(cl), "extensive: {s}");
                assert_eq!(m.closure(cl), cl, "idempotent: {s}");
                assert_eq!(m.rank(cl), m.rank(s), "rank-preserving: {s}");
                for &t in &all {
                    if s.is_subset_of(t) {
                        assert!(cl.is_subset_of(m.closure(t)), "monotone: {s} ⊆ {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn spec_round_trip_and_build() {
        let texts = [
            r#"{"kind":"uniform","rank":3,"elements":4}"#,
            r#"{"kind":"graphic","vertices":4,"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#,
            r#"{"kind":"linear","prime":3,"vectors":[[1,0,0],[0,1,0],[0,0,1],[1,1,0]]}"#,
            r#"{"kind":"flats","ground":4,"flats":[[],[1],[2],[3],[4],[1,2,4],[1,3],[2,3],[3,4],[1,2,3,4]]}"#,
        ];
        for text in texts {
            let spec = MatroidSpec::from_json(text).unwrap();
            let round = MatroidSpec::from_json(&spec.to_json()).unwrap();
            assert_eq!(spec, round);
            let m = spec.build(&caps()).unwrap();
            assert_eq!(m.full_rank(), 3);
        }
        assert_eq!(
            MatroidSpec::from_json(texts[0]).unwrap().label(),
            "uniform(3,4)"
        );
        assert!(MatroidSpec::from_json(r#"{"kind":"moebius"}"#).is_err());
        assert!(MatroidSpec::from_json(r#"{"kind":"uniform","rank":3}"#).is_err());
        assert!(MatroidSpec::from_json(r#"{"kind":"uniform","rank":3,"elements":4,"x":1}"#).is_err());
    }
}
