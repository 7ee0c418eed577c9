//! One handler per subcommand, each producing a serializable report with a
//! human-readable text twin.

use serde::Serialize;
use std::path::Path;

use geomlat::chain_graph::{FacetRidgeGraph, GlexGraph};
use geomlat::coxeter::{evaluate, is_reduced, is_reduced_by_length, WiringDiagram, Word};
use geomlat::descent_order::DescentOrder;
use geomlat::descent_path::{connect, reversal_chain, straighten};
use geomlat::labeling::{
    ascending_maximal_chain, label_sequence, verify_el, AtomOrder, MaximalChain,
};
use geomlat::lattice::FlatsLattice;
use geomlat::matroid::{Matroid, MatroidSpec};
use geomlat::suite::{run_suite, OrderSelection, Severity};
use geomlat::{binom2, Caps};

use crate::emit::{csv_line, emit, kv_block, write_file, Format, Render};
use crate::{CliError, Outcome};

/// How many chains a diameter report will list pairwise distances for.
const PAIR_DISTANCE_LIMIT: usize = 16;
/// Attempts before giving up on rejection sampling a random graphic matroid.
const GENERATOR_ATTEMPTS: usize = 10_000;

pub fn load_spec(path: &Path) -> Result<MatroidSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    MatroidSpec::from_json(&text).map_err(CliError::from)
}

fn build(spec: &MatroidSpec, caps: &Caps) -> Result<(Matroid, FlatsLattice), CliError> {
    let matroid = spec.build(caps)?;
    let lattice = FlatsLattice::build(&matroid, caps)?;
    Ok((matroid, lattice))
}

fn single_order(opt: Option<&str>, n: usize) -> Result<AtomOrder, CliError> {
    match opt {
        None => Ok(AtomOrder::natural(n)),
        Some(text) => AtomOrder::parse(text, n).map_err(CliError::from),
    }
}

/// Order-sweep flags shared by `verify` and `sharpness`.
pub struct OrderFlags {
    pub order: Option<String>,
    pub all_orders: bool,
    pub random_orders: Option<usize>,
    pub seed: u64,
}

impl OrderFlags {
    fn resolve(&self, n: usize) -> Result<Vec<AtomOrder>, CliError> {
        match (&self.order, self.all_orders, self.random_orders) {
            (Some(text), false, None) => Ok(vec![AtomOrder::parse(text, n)?]),
            (None, true, None) => Ok(AtomOrder::all(n)),
            (None, false, Some(count)) => Ok(AtomOrder::random(n, count, self.seed)),
            (None, false, None) => Ok(vec![AtomOrder::natural(n)]),
            _ => Err(CliError::Usage(
                "--order, --all-orders, and --random-orders are mutually exclusive".into(),
            )),
        }
    }
}

// ---------------------------------------------------------------- lattice --

#[derive(Serialize)]
struct FlatRow {
    index: usize,
    rank: usize,
    atoms: String,
}

#[derive(Serialize)]
struct LatticeReport {
    spec: String,
    ground: usize,
    rank: usize,
    flat_count: usize,
    flats_by_rank: Vec<usize>,
    flats: Vec<FlatRow>,
}

impl Render for LatticeReport {
    fn text(&self) -> String {
        let mut out = format!("lattice of flats: {}\n", self.spec);
        out.push_str(&kv_block(&[
            ("ground atoms", self.ground.to_string()),
            ("rank", self.rank.to_string()),
            ("flats", self.flat_count.to_string()),
            ("flats by rank", format!("{:?}", self.flats_by_rank)),
        ]));
        out.push_str("\n  flats:\n");
        for f in &self.flats {
            out.push_str(&format!("    [{:>3}] rank {}  {}\n", f.index, f.rank, f.atoms));
        }
        out.pop();
        out
    }
}

pub fn lattice(
    spec_path: &Path,
    dot: Option<&Path>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let mut flats_by_rank = vec![0usize; lattice.rank() + 1];
    let flats: Vec<FlatRow> = (0..lattice.len())
        .map(|u| {
            flats_by_rank[lattice.rank_of(u)] += 1;
            FlatRow {
                index: u,
                rank: lattice.rank_of(u),
                atoms: lattice.flat(u).to_string(),
            }
        })
        .collect();
    if let Some(path) = dot {
        write_file(path, &lattice.hasse_dot())?;
    }
    let report = LatticeReport {
        spec: spec.label(),
        ground: lattice.ground_size(),
        rank: lattice.rank(),
        flat_count: lattice.len(),
        flats_by_rank,
        flats,
    };
    emit(&report, format);
    Ok(Outcome::Clean)
}

// ----------------------------------------------------------------- verify --

#[derive(Serialize)]
struct VerifyOrderRow {
    order: String,
    intervals_checked: usize,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    spec: String,
    geometric: Vec<String>,
    geometric_passed: bool,
    orders: Vec<VerifyOrderRow>,
    passed: bool,
}

impl Render for VerifyReport {
    fn text(&self) -> String {
        let mut out = format!("verify: {}\n", self.spec);
        for line in &self.geometric {
            out.push_str(&format!("  {line}\n"));
        }
        for row in &self.orders {
            if row.violations.is_empty() {
                out.push_str(&format!(
                    "  EL-labeling, order {}: pass ({} intervals)\n",
                    row.order, row.intervals_checked
                ));
            } else {
                out.push_str(&format!("  EL-labeling, order {}: FAIL\n", row.order));
                for v in &row.violations {
                    out.push_str(&format!("    {v}\n"));
                }
            }
        }
        out.push_str(if self.passed { "  verdict: pass" } else { "  verdict: VIOLATION" });
        out
    }
}

pub fn verify(
    spec_path: &Path,
    orders: &OrderFlags,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let geometric_report = lattice.verify_geometric();
    let mut rows = Vec::new();
    for ord in orders.resolve(lattice.ground_size())? {
        let el = verify_el(&lattice, &ord)?;
        rows.push(VerifyOrderRow {
            order: ord.to_string(),
            intervals_checked: el.intervals_checked,
            violations: el.violations.iter().map(|v| v.to_string()).collect(),
        });
    }
    let geometric_passed = geometric_report.passed();
    let passed = geometric_passed && rows.iter().all(|r| r.violations.is_empty());
    let report = VerifyReport {
        spec: spec.label(),
        geometric: geometric_report.lines(),
        geometric_passed,
        orders: rows,
        passed,
    };
    emit(&report, format);
    Ok(if passed { Outcome::Clean } else { Outcome::Violations })
}

// --------------------------------------------------------------- diameter --

#[derive(Serialize)]
struct PairDistanceRow {
    a: String,
    b: String,
    distance: usize,
}

#[derive(Serialize)]
struct DiameterCmdReport {
    spec: String,
    rank: usize,
    chains: usize,
    ridges: usize,
    connected: bool,
    diameter: Option<usize>,
    bound: usize,
    bound_holds: bool,
    witness: Option<[String; 2]>,
    pair_distances: Option<Vec<PairDistanceRow>>,
}

impl Render for DiameterCmdReport {
    fn text(&self) -> String {
        let mut out = format!("facet-ridge diameter: {}\n", self.spec);
        out.push_str(&kv_block(&[
            ("rank r", self.rank.to_string()),
            ("maximal chains", self.chains.to_string()),
            ("ridges", self.ridges.to_string()),
            ("connected", self.connected.to_string()),
            (
                "diameter",
                self.diameter.map_or("∞".into(), |d| d.to_string()),
            ),
            ("C(r,2)", self.bound.to_string()),
        ]));
        if let Some([a, b]) = &self.witness {
            out.push_str(&format!("\n  witness pair  {a}  ↔  {b}"));
        }
        if let Some(pairs) = &self.pair_distances {
            out.push_str("\n  pair distances:\n");
            for p in pairs {
                out.push_str(&format!("    d({}, {}) = {}\n", p.a, p.b, p.distance));
            }
            out.pop();
        }
        out.push_str(&format!(
            "\n  verdict: {}",
            if self.bound_holds { "bound holds" } else { "VIOLATION" }
        ));
        out
    }
}

pub fn diameter(
    spec_path: &Path,
    dot: Option<&Path>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let frg = FacetRidgeGraph::build(&lattice, caps)?;
    if let Some(path) = dot {
        write_file(path, &frg.dot(&lattice))?;
    }
    let bound = binom2(lattice.rank());
    let connected = frg.check_connected().is_ok();
    let (diameter, witness) = match frg.diameter() {
        Ok(r) => (
            Some(r.diameter),
            Some([
                frg.chain(r.witness.0).render(&lattice),
                frg.chain(r.witness.1).render(&lattice),
            ]),
        ),
        Err(_) => (None, None),
    };
    let pair_distances = (frg.len() <= PAIR_DISTANCE_LIMIT).then(|| {
        let mut rows = Vec::new();
        for a in 0..frg.len() {
            let dist = frg.bfs_distances(a);
            for (b, d) in dist.iter().enumerate().skip(a + 1) {
                if let Some(d) = d {
                    rows.push(PairDistanceRow {
                        a: frg.chain(a).render(&lattice),
                        b: frg.chain(b).render(&lattice),
                        distance: *d,
                    });
                }
            }
        }
        rows
    });
    let bound_holds = connected && diameter.is_some_and(|d| d <= bound);
    let report = DiameterCmdReport {
        spec: spec.label(),
        rank: lattice.rank(),
        chains: frg.len(),
        ridges: frg.edge_count(),
        connected,
        diameter,
        bound,
        bound_holds,
        witness,
        pair_distances,
    };
    emit(&report, format);
    Ok(if bound_holds { Outcome::Clean } else { Outcome::Violations })
}

// ------------------------------------------------------------------- glex --

#[derive(Serialize)]
struct ShortcutRow {
    from: String,
    to: String,
    from_distance: usize,
    to_distance: usize,
}

#[derive(Serialize)]
struct GlexReport {
    spec: String,
    order: String,
    chains: usize,
    moves: usize,
    acyclic: bool,
    sinks: Vec<String>,
    ascending: String,
    sink_is_ascending: bool,
    all_reach_sink: bool,
    max_directed_eccentricity: Option<usize>,
    eccentricity_witness: Option<String>,
    bound: usize,
    sharp: bool,
    shortcut_pairs: Vec<ShortcutRow>,
    passed: bool,
}

impl Render for GlexReport {
    fn text(&self) -> String {
        let mut out = format!("lexicographic orientation: {} (order {})\n", self.spec, self.order);
        out.push_str(&kv_block(&[
            ("chains", self.chains.to_string()),
            ("moves", self.moves.to_string()),
            ("acyclic", self.acyclic.to_string()),
            ("sinks", self.sinks.join("  ")),
            ("ascending chain", self.ascending.clone()),
            ("all chains reach sink", self.all_reach_sink.to_string()),
            (
                "max directed ecc",
                self.max_directed_eccentricity.map_or("∞".into(), |d| d.to_string()),
            ),
            ("C(r,2)", self.bound.to_string()),
            ("sharp (= C(r,2))", self.sharp.to_string()),
        ]));
        if let Some(w) = &self.eccentricity_witness {
            out.push_str(&format!("\n  eccentricity witness  {w}"));
        }
        if self.shortcut_pairs.is_empty() {
            out.push_str("\n  shortcut ridges: none");
        } else {
            out.push_str("\n  shortcut ridges (no move toward the closer neighbor):\n");
            for s in &self.shortcut_pairs {
                out.push_str(&format!(
                    "    {} (dist {}) ↛ {} (dist {})\n",
                    s.from, s.from_distance, s.to, s.to_distance
                ));
            }
            out.pop();
        }
        out.push_str(&format!(
            "\n  verdict: {}",
            if self.passed { "pass" } else { "VIOLATION" }
        ));
        out
    }
}

pub fn glex(
    spec_path: &Path,
    order: Option<&str>,
    dot: Option<&Path>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let ord = single_order(order, lattice.ground_size())?;
    let glex = GlexGraph::build(&lattice, &ord, caps)?;
    let frg = FacetRidgeGraph::build(&lattice, caps)?;
    if let Some(path) = dot {
        write_file(path, &glex.dot(&lattice))?;
    }
    let asc = ascending_maximal_chain(&lattice, &ord);
    let sinks = glex.sinks();
    let sink_is_ascending = sinks.len() == 1 && glex.chain(sinks[0]) == &asc;
    let dist = glex.distances_to_sink();
    let all_reach_sink = dist.iter().all(Option::is_some);
    let ecc = glex.max_directed_eccentricity();
    let bound = binom2(lattice.rank());
    let sharp = ecc.map(|(d, _)| d) == Some(bound);
    let shortcut_pairs = glex
        .shortcut_pairs(&frg)
        .into_iter()
        .map(|(u, v)| ShortcutRow {
            from: glex.chain(u).render(&lattice),
            to: glex.chain(v).render(&lattice),
            from_distance: dist[u].expect("shortcut endpoints reach the sink"),
            to_distance: dist[v].expect("shortcut endpoints reach the sink"),
        })
        .collect();
    let passed = glex.is_acyclic() && sink_is_ascending && all_reach_sink && sharp;
    let report = GlexReport {
        spec: spec.label(),
        order: ord.to_string(),
        chains: glex.len(),
        moves: glex.edge_count(),
        acyclic: glex.is_acyclic(),
        sinks: sinks.iter().map(|&s| glex.chain(s).render(&lattice)).collect(),
        ascending: asc.render(&lattice),
        sink_is_ascending,
        all_reach_sink,
        max_directed_eccentricity: ecc.map(|(d, _)| d),
        eccentricity_witness: ecc.map(|(_, w)| glex.chain(w).render(&lattice)),
        bound,
        sharp,
        shortcut_pairs,
        passed,
    };
    emit(&report, format);
    Ok(if passed { Outcome::Clean } else { Outcome::Violations })
}

// ------------------------------------------------------- straighten/connect --

#[derive(Serialize)]
struct StepRow {
    chain: String,
    labels: String,
}

#[derive(Serialize)]
struct StraightenReport {
    spec: String,
    order: String,
    start: String,
    word: String,
    length: usize,
    bound: usize,
    within_bound: bool,
    reduced_no_repeated_reflection: bool,
    reduced_length_equals_inversions: bool,
    terminal: String,
    terminal_is_ascending: bool,
    steps: Vec<StepRow>,
    passed: bool,
}

impl Render for StraightenReport {
    fn text(&self) -> String {
        let mut out = format!("straighten: {} (order {})\n", self.spec, self.order);
        out.push_str(&kv_block(&[
            ("start", self.start.clone()),
            ("word (application order)", self.word.clone()),
            ("length", format!("{} (C(r,2) = {})", self.length, self.bound)),
            ("reduced: no repeated reflection", self.reduced_no_repeated_reflection.to_string()),
            ("reduced: length = inversions", self.reduced_length_equals_inversions.to_string()),
            ("terminal is ascending", self.terminal_is_ascending.to_string()),
        ]));
        out.push_str("\n  path:\n");
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("    {i}: {}  labels {}\n", s.chain, s.labels));
        }
        out.push_str(&format!("  verdict: {}", if self.passed { "pass" } else { "VIOLATION" }));
        out
    }
}

pub fn straighten_cmd(
    spec_path: &Path,
    chain_text: &str,
    order: Option<&str>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let ord = single_order(order, lattice.ground_size())?;
    let start = MaximalChain::parse(&lattice, chain_text)?;
    let run = straighten(&lattice, &ord, &start);
    let r = lattice.rank();
    let bound = binom2(r);
    let reduced_a = is_reduced(&run.word, r.max(1))?;
    let reduced_b = is_reduced_by_length(&run.word, r.max(1))?;
    let terminal_is_ascending = run.terminal() == &ascending_maximal_chain(&lattice, &ord);
    let steps = run
        .path
        .iter()
        .map(|c| StepRow {
            chain: c.render(&lattice),
            labels: label_sequence(&lattice, &ord, c).to_string(),
        })
        .collect();
    let passed = run.len() <= bound && reduced_a && reduced_b && terminal_is_ascending;
    let report = StraightenReport {
        spec: spec.label(),
        order: ord.to_string(),
        start: start.render(&lattice),
        word: run.word.to_string(),
        length: run.len(),
        bound,
        within_bound: run.len() <= bound,
        reduced_no_repeated_reflection: reduced_a,
        reduced_length_equals_inversions: reduced_b,
        terminal: run.terminal().render(&lattice),
        terminal_is_ascending,
        steps,
        passed,
    };
    emit(&report, format);
    Ok(if passed { Outcome::Clean } else { Outcome::Violations })
}

#[derive(Serialize)]
struct ConnectReport {
    spec: String,
    from: String,
    to: String,
    derived_order: String,
    word: String,
    length: usize,
    bound: usize,
    within_bound: bool,
    steps: Vec<StepRow>,
}

impl Render for ConnectReport {
    fn text(&self) -> String {
        let mut out = format!("connect: {}\n", self.spec);
        out.push_str(&kv_block(&[
            ("from", self.from.clone()),
            ("to", self.to.clone()),
            ("derived order", self.derived_order.clone()),
            ("word (application order)", self.word.clone()),
            ("length", format!("{} (C(r,2) = {})", self.length, self.bound)),
        ]));
        out.push_str("\n  path:\n");
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("    {i}: {}  labels {}\n", s.chain, s.labels));
        }
        out.push_str(&format!(
            "  verdict: {}",
            if self.within_bound { "pass" } else { "VIOLATION" }
        ));
        out
    }
}

pub fn connect_cmd(
    spec_path: &Path,
    from_text: &str,
    to_text: &str,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let from = MaximalChain::parse(&lattice, from_text)?;
    let to = MaximalChain::parse(&lattice, to_text)?;
    let conn = connect(&lattice, &from, &to);
    let bound = binom2(lattice.rank());
    let within_bound = conn.straightening.len() <= bound;
    let steps = conn
        .straightening
        .path
        .iter()
        .map(|c| StepRow {
            chain: c.render(&lattice),
            labels: label_sequence(&lattice, &conn.order, c).to_string(),
        })
        .collect();
    let report = ConnectReport {
        spec: spec.label(),
        from: from.render(&lattice),
        to: to.render(&lattice),
        derived_order: conn.order.to_string(),
        word: conn.straightening.word.to_string(),
        length: conn.straightening.len(),
        bound,
        within_bound,
        steps,
    };
    emit(&report, format);
    Ok(if within_bound { Outcome::Clean } else { Outcome::Violations })
}

// --------------------------------------------------------------- reversal --

#[derive(Serialize)]
struct ReversalReport {
    spec: String,
    order: String,
    ascending: String,
    ascending_labels: String,
    reversal: String,
    reversal_labels: String,
    directed_distance: Option<usize>,
    bound: usize,
    tight: bool,
}

impl Render for ReversalReport {
    fn text(&self) -> String {
        let mut out = format!("reversal chain: {} (order {})\n", self.spec, self.order);
        out.push_str(&kv_block(&[
            ("ascending chain", format!("{}  labels {}", self.ascending, self.ascending_labels)),
            ("reversal chain", format!("{}  labels {}", self.reversal, self.reversal_labels)),
            (
                "directed distance to sink",
                self.directed_distance.map_or("∞".into(), |d| d.to_string()),
            ),
            ("C(r,2)", self.bound.to_string()),
        ]));
        out.push_str(&format!(
            "\n  verdict: {}",
            if self.tight { "distance = C(r,2), bound attained" } else { "VIOLATION" }
        ));
        out
    }
}

pub fn reversal(
    spec_path: &Path,
    order: Option<&str>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let ord = single_order(order, lattice.ground_size())?;
    let asc = ascending_maximal_chain(&lattice, &ord);
    let rev = reversal_chain(&lattice, &ord);
    let glex = GlexGraph::build(&lattice, &ord, caps)?;
    let rev_index = glex.index_of(&rev).expect("reversal chain is maximal");
    let directed_distance = glex.distances_to_sink()[rev_index];
    let bound = binom2(lattice.rank());
    let tight = directed_distance == Some(bound);
    let report = ReversalReport {
        spec: spec.label(),
        order: ord.to_string(),
        ascending: asc.render(&lattice),
        ascending_labels: label_sequence(&lattice, &ord, &asc).to_string(),
        reversal: rev.render(&lattice),
        reversal_labels: label_sequence(&lattice, &ord, &rev).to_string(),
        directed_distance,
        bound,
        tight,
    };
    emit(&report, format);
    Ok(if tight { Outcome::Clean } else { Outcome::Violations })
}

// -------------------------------------------------------------- sharpness --

#[derive(Serialize)]
struct SharpnessRow {
    spec_id: String,
    order: String,
    r: usize,
    chains: usize,
    diameter_undirected: usize,
    max_directed_ecc: Option<usize>,
    binom_r_2: usize,
    tight: bool,
}

#[derive(Serialize)]
struct SharpnessReport {
    spec: String,
    rows: Vec<SharpnessRow>,
    all_tight: bool,
}

impl Render for SharpnessReport {
    fn text(&self) -> String {
        let mut out = format!("sharpness sweep: {}\n", self.spec);
        out.push_str(
            "  spec_id | order | r | chains | diameter_undirected | max_directed_ecc | binom_r_2 | tight\n",
        );
        for row in &self.rows {
            out.push_str(&format!(
                "  {} | {} | {} | {} | {} | {} | {} | {}\n",
                row.spec_id,
                row.order,
                row.r,
                row.chains,
                row.diameter_undirected,
                row.max_directed_ecc.map_or("∞".into(), |d| d.to_string()),
                row.binom_r_2,
                row.tight
            ));
        }
        out.push_str(&format!(
            "  verdict: {}",
            if self.all_tight { "all orders tight" } else { "VIOLATION" }
        ));
        out
    }
}

fn sharpness_csv(rows: &[SharpnessRow]) -> String {
    let mut out = String::from(
        "spec_id,order,r,chains,diameter_undirected,max_directed_ecc,binom_r_2,tight\n",
    );
    for row in rows {
        out.push_str(&csv_line(&[
            row.spec_id.clone(),
            row.order.clone(),
            row.r.to_string(),
            row.chains.to_string(),
            row.diameter_undirected.to_string(),
            row.max_directed_ecc.map_or(String::new(), |d| d.to_string()),
            row.binom_r_2.to_string(),
            row.tight.to_string(),
        ]));
        out.push('\n');
    }
    out
}

pub fn sharpness(
    spec_path: &Path,
    orders: &OrderFlags,
    csv: Option<&Path>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let frg = FacetRidgeGraph::build(&lattice, caps)?;
    let diameter = frg.diameter()?.diameter;
    let bound = binom2(lattice.rank());
    let rows: Vec<SharpnessRow> = orders
        .resolve(lattice.ground_size())?
        .iter()
        .map(|ord| -> Result<SharpnessRow, CliError> {
            let glex = GlexGraph::build(&lattice, ord, caps)?;
            let ecc = glex.max_directed_eccentricity().map(|(d, _)| d);
            Ok(SharpnessRow {
                spec_id: spec.label(),
                order: ord.to_string(),
                r: lattice.rank(),
                chains: glex.len(),
                diameter_undirected: diameter,
                max_directed_ecc: ecc,
                binom_r_2: bound,
                tight: ecc == Some(bound),
            })
        })
        .collect::<Result<_, _>>()?;
    if let Some(path) = csv {
        write_file(path, &sharpness_csv(&rows))?;
    }
    let all_tight = rows.iter().all(|r| r.tight);
    let report = SharpnessReport { spec: spec.label(), rows, all_tight };
    emit(&report, format);
    Ok(if all_tight { Outcome::Clean } else { Outcome::Violations })
}

// ----------------------------------------------------------- descent-order --

#[derive(Serialize)]
struct GlexComparisonRows {
    equal: bool,
    missing_from_hasse: Vec<[String; 2]>,
    missing_from_glex: Vec<[String; 2]>,
}

#[derive(Serialize)]
struct DescentOrderReport {
    spec: String,
    order: String,
    chains: usize,
    hasse_edges: usize,
    minimum: Option<String>,
    minimum_is_ascending: bool,
    glex_comparison: Option<GlexComparisonRows>,
    passed: bool,
}

impl Render for DescentOrderReport {
    fn text(&self) -> String {
        let mut out = format!("descent order: {} (order {})\n", self.spec, self.order);
        out.push_str(&kv_block(&[
            ("chains", self.chains.to_string()),
            ("Hasse cover relations", self.hasse_edges.to_string()),
            ("minimum", self.minimum.clone().unwrap_or_else(|| "none".into())),
            ("minimum is ascending chain", self.minimum_is_ascending.to_string()),
        ]));
        if let Some(cmp) = &self.glex_comparison {
            out.push_str(&format!("\n  Hasse = orientation: {}", cmp.equal));
            for [a, b] in &cmp.missing_from_hasse {
                out.push_str(&format!("\n    orientation-only edge {a} → {b}"));
            }
            for [a, b] in &cmp.missing_from_glex {
                out.push_str(&format!("\n    Hasse-only cover {a} ⋗ {b}"));
            }
        }
        out.push_str(&format!(
            "\n  verdict: {}",
            if self.passed { "pass" } else { "VIOLATION" }
        ));
        out
    }
}

pub fn descent_order(
    spec_path: &Path,
    order: Option<&str>,
    check_glex: bool,
    dot: Option<&Path>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let (_, lattice) = build(&spec, caps)?;
    let ord = single_order(order, lattice.ground_size())?;
    let order_poset = DescentOrder::build(&lattice, &ord, caps)?;
    if let Some(path) = dot {
        write_file(path, &order_poset.dot(&lattice))?;
    }
    let minima = order_poset.minimal_elements();
    let asc = ascending_maximal_chain(&lattice, &ord);
    let minimum_is_ascending =
        minima.len() == 1 && order_poset.chain(minima[0]) == &asc;
    let glex_comparison = if check_glex {
        let glex = GlexGraph::build(&lattice, &ord, caps)?;
        let cmp = order_poset.compare_glex(&glex);
        let rendered = |pairs: &[(usize, usize)]| {
            pairs
                .iter()
                .map(|&(a, b)| {
                    [
                        order_poset.chain(a).render(&lattice),
                        order_poset.chain(b).render(&lattice),
                    ]
                })
                .collect()
        };
        Some(GlexComparisonRows {
            equal: cmp.equal(),
            missing_from_hasse: rendered(&cmp.missing_from_hasse),
            missing_from_glex: rendered(&cmp.missing_from_glex),
        })
    } else {
        None
    };
    let passed =
        minimum_is_ascending && glex_comparison.as_ref().is_none_or(|c| c.equal);
    let report = DescentOrderReport {
        spec: spec.label(),
        order: ord.to_string(),
        chains: order_poset.len(),
        hasse_edges: order_poset.hasse_edges().len(),
        minimum: minima.first().map(|&m| order_poset.chain(m).render(&lattice)),
        minimum_is_ascending,
        glex_comparison,
        passed,
    };
    emit(&report, format);
    Ok(if passed { Outcome::Clean } else { Outcome::Violations })
}

// ----------------------------------------------------------------- wiring --

#[derive(Serialize)]
struct WiringReport {
    word: String,
    rank: usize,
    final_order: Vec<usize>,
    crossings: Vec<(usize, usize)>,
    double_crossings: Vec<(usize, usize)>,
    reduced_no_repeated_reflection: bool,
    reduced_length_equals_inversions: bool,
    oracles_agree: bool,
    diagram: String,
}

impl Render for WiringReport {
    fn text(&self) -> String {
        let mut out = format!("wiring diagram: word {} in S_{}\n\n", self.word, self.rank);
        for line in self.diagram.lines() {
            out.push_str(&format!("  {line}\n"));
        }
        out.push('\n');
        out.push_str(&kv_block(&[
            ("evaluation", format!("({})", self.final_order.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))),
            ("crossings", format!("{:?}", self.crossings)),
            ("double crossings", format!("{:?}", self.double_crossings)),
            ("reduced: no repeated reflection", self.reduced_no_repeated_reflection.to_string()),
            ("reduced: length = inversions", self.reduced_length_equals_inversions.to_string()),
            ("oracles agree", self.oracles_agree.to_string()),
        ]));
        out
    }
}

pub fn wiring(word_text: &str, rank: Option<usize>, format: Format) -> Result<Outcome, CliError> {
    let word = Word::parse(word_text)?;
    let r = rank.unwrap_or_else(|| (word.max_letter() + 1).max(2));
    let diagram = WiringDiagram::new(&word, r)?;
    let reduced_a = is_reduced(&word, r)?;
    let reduced_b = is_reduced_by_length(&word, r)?;
    let report = WiringReport {
        word: word.to_string(),
        rank: r,
        final_order: evaluate(&word, r)?.images().to_vec(),
        crossings: diagram.crossings().to_vec(),
        double_crossings: diagram.double_crossings(),
        reduced_no_repeated_reflection: reduced_a,
        reduced_length_equals_inversions: reduced_b,
        oracles_agree: reduced_a == reduced_b,
        diagram: diagram.render(),
    };
    emit(&report, format);
    Ok(if report.oracles_agree { Outcome::Clean } else { Outcome::Violations })
}

// ------------------------------------------------------------------ sweep --

#[derive(Serialize)]
struct SweepFindingRow {
    spec_id: String,
    claim: String,
    severity: String,
    instance: String,
    witness: String,
}

#[derive(Serialize)]
struct SweepInstanceRow {
    spec_id: String,
    source: String,
    findings: usize,
    violations: usize,
    error: Option<String>,
}

#[derive(Serialize)]
struct SweepReport {
    seed: u64,
    instances: Vec<SweepInstanceRow>,
    findings: Vec<SweepFindingRow>,
    violations: usize,
    errors: usize,
}

impl Render for SweepReport {
    fn text(&self) -> String {
        let mut out = format!("sweep (seed {}):\n", self.seed);
        for inst in &self.instances {
            match &inst.error {
                Some(e) => out.push_str(&format!(
                    "  {} [{}]: ERROR {e}\n",
                    inst.spec_id, inst.source
                )),
                None => out.push_str(&format!(
                    "  {} [{}]: {} findings, {} violations\n",
                    inst.spec_id, inst.source, inst.findings, inst.violations
                )),
            }
        }
        for f in self.findings.iter().filter(|f| f.severity != "info") {
            out.push_str(&format!(
                "  {}: {} [{}] {} — {}\n",
                f.severity, f.claim, f.spec_id, f.instance, f.witness
            ));
        }
        out.push_str(&format!(
            "  verdict: {} violations, {} instance errors",
            self.violations, self.errors
        ));
        out
    }
}

fn sweep_csv(findings: &[SweepFindingRow]) -> String {
    let mut out = String::from("spec_id,claim,severity,instance,witness\n");
    for f in findings {
        out.push_str(&csv_line(&[
            f.spec_id.as_str(),
            f.claim.as_str(),
            f.severity.as_str(),
            f.instance.as_str(),
            f.witness.as_str(),
        ]));
        out.push('\n');
    }
    out
}

/// A deterministic random simple connected graph: Erdős–Rényi with p = ½,
/// rejection-sampled until the graphic matroid is simple with full rank
/// v − 1 (connected). The spec it came from is returned for logging.
fn random_graphic_spec(
    vertices: usize,
    rng: &mut rand_chacha::ChaCha20Rng,
    caps: &Caps,
) -> Result<MatroidSpec, CliError> {
    use rand::Rng;
    for _ in 0..GENERATOR_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 1..=vertices {
            for v in u + 1..=vertices {
                if rng.random_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let spec = MatroidSpec::Graphic { vertices, edges };
        let Ok(matroid) = spec.build(caps) else { continue };
        if matroid.full_rank() == vertices - 1 {
            return Ok(spec);
        }
    }
    Err(CliError::Usage(format!(
        "could not sample a connected simple graph on {vertices} vertices in {GENERATOR_ATTEMPTS} attempts"
    )))
}

enum SweepSource {
    File(std::path::PathBuf),
    Generated { spec: MatroidSpec, description: String },
}

pub fn sweep(
    spec_paths: &[std::path::PathBuf],
    random_graphic: Option<usize>,
    vertices: usize,
    seed: u64,
    csv: Option<&Path>,
    caps: &Caps,
    format: Format,
) -> Result<Outcome, CliError> {
    let mut sources: Vec<SweepSource> =
        spec_paths.iter().cloned().map(SweepSource::File).collect();
    if let Some(count) = random_graphic {
        if vertices < 2 {
            return Err(CliError::Usage("--vertices must be at least 2".into()));
        }
        let mut rng = <rand_chacha::ChaCha20Rng as rand::SeedableRng>::seed_from_u64(seed);
        for i in 0..count {
            let spec = random_graphic_spec(vertices, &mut rng, caps)?;
            let description =
                format!("erdős–rényi p=0.5 v={vertices} seed={seed} i={i}");
            sources.push(SweepSource::Generated { spec, description });
        }
    }
    if sources.is_empty() {
        return Err(CliError::Usage(
            "sweep needs at least one spec file or --random-graphic N".into(),
        ));
    }

    let mut instances = Vec::new();
    let mut findings = Vec::new();
    for source in &sources {
        let (spec_result, source_desc) = match source {
            SweepSource::File(path) => (load_spec(path), path.display().to_string()),
            SweepSource::Generated { spec, description } => {
                (Ok(spec.clone()), description.clone())
            }
        };
        let outcome = spec_result.and_then(|spec| {
            let matroid = spec.build(caps)?;
            let selection = OrderSelection::automatic(matroid.n());
            let report = run_suite(&matroid, &spec.label(), &selection, caps)?;
            Ok((spec, report))
        });
        match outcome {
            Err(e) => {
                let spec_id = match source {
                    SweepSource::File(path) => path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| source_desc.clone()),
                    SweepSource::Generated { spec, .. } => spec.label(),
                };
                findings.push(SweepFindingRow {
                    spec_id: spec_id.clone(),
                    claim: "instance-error".into(),
                    severity: "error".into(),
                    instance: source_desc.clone(),
                    witness: e.to_string(),
                });
                instances.push(SweepInstanceRow {
                    spec_id,
                    source: source_desc,
                    findings: 0,
                    violations: 0,
                    error: Some(e.to_string()),
                });
            }
            Ok((spec, report)) => {
                let spec_id = spec.label();
                if let SweepSource::Generated { description, .. } = source {
                    findings.push(SweepFindingRow {
                        spec_id: spec_id.clone(),
                        claim: "generator".into(),
                        severity: "info".into(),
                        instance: spec_id.clone(),
                        witness: format!("{description} spec={}", spec.to_json()),
                    });
                }
                let violations = report.violation_count();
                for f in &report.findings {
                    findings.push(SweepFindingRow {
                        spec_id: spec_id.clone(),
                        claim: f.claim.clone(),
                        severity: match f.severity {
                            Severity::Info => "info".into(),
                            Severity::Violation => "violation".into(),
                        },
                        instance: f.instance.clone(),
                        witness: f.witness.clone(),
                    });
                }
                instances.push(SweepInstanceRow {
                    spec_id,
                    source: source_desc,
                    findings: report.findings.len(),
                    violations,
                    error: None,
                });
            }
        }
    }

    if let Some(path) = csv {
        write_file(path, &sweep_csv(&findings))?;
    }
    let violations = findings.iter().filter(|f| f.severity == "violation").count();
    let errors = findings.iter().filter(|f| f.severity == "error").count();
    let report = SweepReport { seed, instances, findings, violations, errors };
    emit(&report, format);
    Ok(if violations > 0 {
        Outcome::Violations
    } else if errors > 0 {
        Outcome::Errors
    } else {
        Outcome::Clean
    })
}
