//! Descent moves on maximal chains and the straightening algorithm.
//!
//! A chain has a descent at rank i when its labels satisfy λ(x_{i-1},x_i) >
//! λ(x_i,x_{i+1}). [`apply_t`] resolves the descent by replacing x_i with
//! x_{i-1} ∨ h, where h is the rank-1 flat of the lower label — equivalently,
//! by re-traversing the height-2 interval [x_{i-1}, x_{i+1}] along its
//! ascending chain. [`straighten`] iterates such moves to reach the ascending
//! chain, recording a word in T_1,…,T_{r-1} that is always reduced and of
//! length at most C(r,2). [`connect`] drives any chain onto any other by
//! straightening under the target's own block order.

use crate::coxeter::Word;
use crate::labeling::{
    ascending_maximal_chain, label_sequence, AtomOrder, LabelSequence, MaximalChain,
};
use crate::lattice::FlatsLattice;
use crate::{Atom, Error};

/// Apply the descent move T_rank. Errors if rank is outside 1..=r-1 or the
/// chain has no descent there.
pub fn apply_t(
    lattice: &FlatsLattice,
    ord: &AtomOrder,
    chain: &MaximalChain,
    rank: usize,
) -> Result<MaximalChain, Error> {
    let r = chain.steps();
    if rank == 0 || rank >= r {
        return Err(Error::RankRange { rank, max: r.saturating_sub(1) });
    }
    let labels = label_sequence(lattice, ord, chain);
    let (upper, lower) = (labels.get(rank), labels.get(rank + 1));
    if !ord.lt(lower, upper) {
        return Err(Error::NotADescent { rank });
    }
    let below = chain.element(rank - 1);
    let handle = lattice.atom_flat(lower).expect("every label is an atom of the lattice");
    let replacement = lattice.join(below, handle);
    let moved = chain.with_element(rank, replacement);
    debug_assert!(
        MaximalChain::new(lattice, moved.elements().to_vec()).is_ok(),
        "descent move must produce a maximal chain"
    );
    Ok(moved)
}

/// A straightening run: the word in application order (first letter = first
/// move) and every chain along the way.
#[derive(Clone, Debug)]
pub struct Straightening {
    pub word: Word,
    /// path[0] is the start; path[k] is the chain after k moves.
    pub path: Vec<MaximalChain>,
}

impl Straightening {
    /// The chain reached after all moves.
    pub fn terminal(&self) -> &MaximalChain {
        self.path.last().expect("path contains at least the start chain")
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Straighten a chain to the ascending chain of `ord` by descent moves.
///
/// Pass k ∈ 1..=r locates the ord-least label among positions k..=r and
/// bubbles it down to position k with T_{p-1}, …, T_k; every one of those
/// moves lands on a descent, and the terminal chain is the ascending chain.
pub fn straighten(lattice: &FlatsLattice, ord: &AtomOrder, start: &MaximalChain) -> Straightening {
    let r = start.steps();
    let mut current = start.clone();
    let mut letters = Vec::new();
    let mut path = vec![current.clone()];
    for k in 1..=r {
        let labels = label_sequence(lattice, ord, &current);
        let p = (k..=r)
            .min_by_key(|&q| ord.position(labels.get(q)))
            .expect("positions k..=r are nonempty");
        for j in (k..p).rev() {
            current = apply_t(lattice, ord, &current, j)
                .expect("straightening only applies moves at descents");
            letters.push(j);
            path.push(current.clone());
        }
    }
    debug_assert_eq!(current, ascending_maximal_chain(lattice, ord));
    Straightening { word: Word::new(letters).expect("letters are ≥ 1"), path }
}

/// The atom order that makes `chain` its own ascending chain: atoms sorted by
/// the rank at which the chain acquires them, naturally within each block.
pub fn atom_order_for_chain(lattice: &FlatsLattice, chain: &MaximalChain) -> AtomOrder {
    let mut atoms: Vec<Atom> = Vec::with_capacity(lattice.ground_size());
    for w in chain.elements().windows(2) {
        let block = lattice.atom_set(w[1]).minus(lattice.atom_set(w[0]));
        atoms.extend(block.iter());
    }
    AtomOrder::new(atoms).expect("chain blocks partition the atoms")
}

/// A path from one chain to another: the order used and the straightening run.
#[derive(Clone, Debug)]
pub struct Connection {
    pub order: AtomOrder,
    pub straightening: Straightening,
}

/// Connect `from` to `to` by straightening `from` under `to`'s block order.
/// The resulting word has length at most C(r,2).
pub fn connect(lattice: &FlatsLattice, from: &MaximalChain, to: &MaximalChain) -> Connection {
    let order = atom_order_for_chain(lattice, to);
    let straightening = straighten(lattice, &order, from);
    assert_eq!(
        straightening.terminal(),
        to,
        "the target chain is the ascending chain of its own block order"
    );
    Connection { order, straightening }
}

/// The reversal chain of `ord`: x_k is the join of the atom flats of the top k
/// labels of the ascending chain. Its label sequence is the ascending sequence
/// reversed, so it has all C(r,2) inversions.
pub fn reversal_chain(lattice: &FlatsLattice, ord: &AtomOrder) -> MaximalChain {
    let ascending = ascending_maximal_chain(lattice, ord);
    let labels = label_sequence(lattice, ord, &ascending);
    let r = labels.len();
    let mut elements = vec![lattice.bottom()];
    let mut current = lattice.bottom();
    for k in 1..=r {
        let atom = labels.get(r + 1 - k);
        current = lattice.join(current, lattice.atom_flat(atom).expect("label is an atom"));
        elements.push(current);
    }
    let chain = MaximalChain::new(lattice, elements)
        .expect("joins of reversed ascending labels form a maximal chain");
    let expected =
        LabelSequence::new((1..=r).rev().map(|k| labels.get(k)).collect());
    assert_eq!(
        label_sequence(lattice, ord, &chain),
        expected,
        "reversal chain labels are the reversed ascending labels"
    );
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::AtomSet;
    use crate::labeling::{ascending_chain, enumerate_maximal_chains};
    use crate::matroid::Matroid;
    use crate::{binom2, Caps};

    fn caps() -> Caps {
        Caps::default()
    }

    fn build(m: &Matroid) -> FlatsLattice {
        FlatsLattice::build(m, &caps()).unwrap()
    }

    fn u34() -> FlatsLattice {
        build(&Matroid::uniform(3, 4, &caps()).unwrap())
    }

    fn boolean(r: usize) -> FlatsLattice {
        build(&Matroid::uniform(r, r, &caps()).unwrap())
    }

    fn near_pencil() -> FlatsLattice {
        let flats: Vec<AtomSet> = [
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
        build(&Matroid::from_flats(4, &flats, &caps()).unwrap())
    }

    fn labels_of(lattice: &FlatsLattice, ord: &AtomOrder, chain: &MaximalChain) -> String {
        label_sequence(lattice, ord, chain).to_string()
    }

    #[test]
    fn apply_t_walkthrough() {
        // M = ∅ ⋖ {4} ⋖ {3,4} ⋖ 1̂ in U(3,4) under the natural order; apply
        // T_2, then T_1, then T_2 (composition T_2T_1T_2 sends M to the
        // ascending chain), and check the idempotent tail T_2T_1T_2T_1.
        let lattice = u34();
        let ord = AtomOrder::natural(4);
        let m = MaximalChain::parse(&lattice, ";4;3,4;1,2,3,4").unwrap();
        assert_eq!(labels_of(&lattice, &ord, &m), "(4,3,1)");

        let t2 = apply_t(&lattice, &ord, &m, 2).unwrap();
        assert_eq!(t2.render(&lattice), ";4;1,4;1,2,3,4");
        assert_eq!(labels_of(&lattice, &ord, &t2), "(4,1,2)");

        let t1t2 = apply_t(&lattice, &ord, &t2, 1).unwrap();
        assert_eq!(t1t2.render(&lattice), ";1;1,4;1,2,3,4");
        assert_eq!(labels_of(&lattice, &ord, &t1t2), "(1,4,2)");

        let t2t1t2 = apply_t(&lattice, &ord, &t1t2, 2).unwrap();
        assert_eq!(t2t1t2.render(&lattice), ";1;1,2;1,2,3,4");
        assert_eq!(labels_of(&lattice, &ord, &t2t1t2), "(1,2,3)");
        assert_eq!(t2t1t2, ascending_maximal_chain(&lattice, &ord));

        // The other branch: T_1 first.
        let t1 = apply_t(&lattice, &ord, &m, 1).unwrap();
        assert_eq!(labels_of(&lattice, &ord, &t1), "(3,4,1)");
        let t2t1 = apply_t(&lattice, &ord, &t1, 2).unwrap();
        assert_eq!(labels_of(&lattice, &ord, &t2t1), "(3,1,2)");
        let t1t2t1 = apply_t(&lattice, &ord, &t2t1, 1).unwrap();
        assert_eq!(labels_of(&lattice, &ord, &t1t2t1), "(1,3,2)");
        let t2t1t2t1 = apply_t(&lattice, &ord, &t1t2t1, 2).unwrap();
        assert_eq!(t2t1t2t1, t2t1t2);
    }

    #[test]
    fn apply_t_rejects_bad_moves() {
        let lattice = u34();
        let ord = AtomOrder::natural(4);
        let m = MaximalChain::parse(&lattice, ";4;3,4;1,2,3,4").unwrap();
        assert!(matches!(apply_t(&lattice, &ord, &m, 0), Err(Error::RankRange { rank: 0, max: 2 })));
        assert!(matches!(apply_t(&lattice, &ord, &m, 3), Err(Error::RankRange { rank: 3, max: 2 })));
        // After T_2 the labels are (4,1,2): rank 2 is now an ascent.
        let t2 = apply_t(&lattice, &ord, &m, 2).unwrap();
        assert!(matches!(apply_t(&lattice, &ord, &t2, 2), Err(Error::NotADescent { rank: 2 })));
        // The ascending chain admits no move at all.
        let asc = ascending_maximal_chain(&lattice, &ord);
        for rank in 1..=2 {
            assert!(matches!(
                apply_t(&lattice, &ord, &asc, rank),
                Err(Error::NotADescent { .. })
            ));
        }
    }

    /// The join formula agrees with re-traversing [x_{i-1}, x_{i+1}] by its
    /// ascending chain, for every descent of every chain and every atom order.
    #[test]
    fn apply_t_matches_interval_ascent() {
        for lattice in [boolean(3), u34(), near_pencil()] {
            for ord in AtomOrder::all(lattice.ground_size()) {
                for chain in enumerate_maximal_chains(&lattice, &caps()).unwrap() {
                    let labels = label_sequence(&lattice, &ord, &chain);
                    for rank in labels.descents(&ord) {
                        let moved = apply_t(&lattice, &ord, &chain, rank).unwrap();
                        let interval = lattice
                            .interval(chain.element(rank - 1), chain.element(rank + 1))
                            .unwrap();
                        let ascent = ascending_chain(&lattice, &ord, &interval);
                        assert_eq!(moved.element(rank), ascent[1]);
                        // The move leaves the rest of the chain alone.
                        for i in 0..=chain.steps() {
                            if i != rank {
                                assert_eq!(moved.element(i), chain.element(i));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn straighten_examples() {
        let lattice = u34();
        let ord = AtomOrder::natural(4);
        let m = MaximalChain::parse(&lattice, ";4;3,4;1,2,3,4").unwrap();
        let run = straighten(&lattice, &ord, &m);
        assert_eq!(run.word.letters(), &[2, 1, 2]);
        assert_eq!(run.path.len(), 4);
        assert_eq!(run.terminal(), &ascending_maximal_chain(&lattice, &ord));

        // Reverse chain of B_4: the full C(4,2) = 6 moves.
        let lattice = boolean(4);
        let ord = AtomOrder::natural(4);
        let reverse = MaximalChain::parse(&lattice, ";4;3,4;2,3,4;1,2,3,4").unwrap();
        let run = straighten(&lattice, &ord, &reverse);
        assert_eq!(run.word.letters(), &[3, 2, 1, 3, 2, 3]);
        assert_eq!(run.len(), binom2(4));

        // The ascending chain straightens by the empty word.
        let asc = ascending_maximal_chain(&lattice, &ord);
        let run = straighten(&lattice, &ord, &asc);
        assert!(run.word.is_empty());
        assert_eq!(run.path.len(), 1);
    }

    /// Straightening invariants on the whole corpus: terminal is ascending,
    /// the word is reduced by both characterizations, its length is at most
    /// C(r,2), and every move strictly decreases the label sequence in lex.
    #[test]
    fn straighten_invariants() {
        use crate::coxeter::{is_reduced, is_reduced_by_length};
        for lattice in [boolean(3), u34(), near_pencil()] {
            let r = lattice.rank();
            for ord in AtomOrder::all(lattice.ground_size()) {
                for chain in enumerate_maximal_chains(&lattice, &caps()).unwrap() {
                    let run = straighten(&lattice, &ord, &chain);
                    assert_eq!(run.terminal(), &ascending_maximal_chain(&lattice, &ord));
                    assert!(run.len() <= binom2(r));
                    assert!(is_reduced(&run.word, r).unwrap());
                    assert!(is_reduced_by_length(&run.word, r).unwrap());
                    for pair in run.path.windows(2) {
                        let before = label_sequence(&lattice, &ord, &pair[0]);
                        let after = label_sequence(&lattice, &ord, &pair[1]);
                        assert_eq!(
                            after.lex_cmp(&before, &ord),
                            std::cmp::Ordering::Less,
                            "each move lex-decreases the labels"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn block_order_for_chain() {
        let lattice = u34();
        let m = MaximalChain::parse(&lattice, ";4;3,4;1,2,3,4").unwrap();
        let ord = atom_order_for_chain(&lattice, &m);
        assert_eq!(ord.to_string(), "4,3,1,2");
        assert_eq!(ascending_maximal_chain(&lattice, &ord), m);
    }

    #[test]
    fn connect_red_to_blue() {
        let lattice = near_pencil();
        let decreasing = MaximalChain::parse(&lattice, ";4;3,4;1,2,3,4").unwrap();
        let increasing = MaximalChain::parse(&lattice, ";1;1,2,4;1,2,3,4").unwrap();
        let conn = connect(&lattice, &decreasing, &increasing);
        assert_eq!(conn.order.to_string(), "1,2,4,3");
        assert_eq!(conn.straightening.word.letters(), &[2, 1]);
        assert_eq!(conn.straightening.terminal(), &increasing);
        // The intermediate chain passes through {1,2,4}.
        assert_eq!(conn.straightening.path[1].render(&lattice), ";4;1,2,4;1,2,3,4");
        // Connecting a chain to itself is the empty word.
        let idle = connect(&lattice, &decreasing, &decreasing);
        assert!(idle.straightening.word.is_empty());
    }

    #[test]
    fn connect_any_pair() {
        for lattice in [boolean(3), u34(), near_pencil()] {
            let chains = enumerate_maximal_chains(&lattice, &caps()).unwrap();
            for from in &chains {
                for to in &chains {
                    let conn = connect(&lattice, from, to);
                    assert_eq!(conn.straightening.terminal(), to);
                    assert!(conn.straightening.len() <= binom2(lattice.rank()));
                }
            }
        }
    }

    #[test]
    fn reversal_chain_examples() {
        let lattice = u34();
        let rev = reversal_chain(&lattice, &AtomOrder::natural(4));
        assert_eq!(rev.render(&lattice), ";3;2,3;1,2,3,4");

        let lattice = near_pencil();
        let rev = reversal_chain(&lattice, &AtomOrder::natural(4));
        assert_eq!(rev.render(&lattice), ";3;2,3;1,2,3,4");
        assert_eq!(
            labels_of(&lattice, &AtomOrder::natural(4), &rev),
            "(3,2,1)"
        );

        let lattice = boolean(4);
        let rev = reversal_chain(&lattice, &AtomOrder::natural(4));
        assert_eq!(rev.render(&lattice), ";4;3,4;2,3,4;1,2,3,4");
        // Straightening the reversal chain takes exactly C(r,2) moves.
        let run = straighten(&lattice, &AtomOrder::natural(4), &rev);
        assert_eq!(run.len(), binom2(4));
    }
}
