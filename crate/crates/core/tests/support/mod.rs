//! Invariant checks and brute-force oracles shared by the property and
//! acceptance targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use chromatic_core::config::{initial_configuration, is_consistent, variables, Configuration};
use chromatic_core::directional::{apply_move, classify_move, walk_to_next_step, Guide};
use chromatic_core::graph::families;
use chromatic_core::kempe::{
    exchange, exchange_with_dontcare, invert_path, kempe_step, trace_max_path, walk_variable, ColorPair,
};
use chromatic_core::tree::build_spanning_tree;
use chromatic_core::{Color, ComplexColor, Link, SimpleGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn graph_from(n: usize, pairs: &[(usize, usize)]) -> SimpleGraph {
    let mut edges: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| (a % n, b % n))
        .filter(|&(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    SimpleGraph::new(n, edges).unwrap()
}

pub fn assert_sound(config: &Configuration<'_>, what: &str) {
    assert!(is_consistent(config), "{what} broke consistency: {config:?}");
    assert_eq!(config.recount_variables(), config.variable_count(), "{what} left a stale count");
}

/// Every traced cycle has as many variables, mod 2, as edges.
pub fn assert_parity(config: &Configuration<'_>) {
    let graph = config.graph();
    for e in 0..graph.edge_count() {
        let (lo, _) = graph.endpoints(e);
        let link = Link::new(e, lo);
        let c = config.link_color(link);
        for other in config.colors().filter(|&o| o != c) {
            let path = trace_max_path(config, link, ColorPair::new(c, other));
            if path.is_cycle() {
                assert_eq!(path.variables(config).len() % 2, path.edge_length() % 2, "{path:?}");
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Op {
    Exchange(usize, usize, usize),
    DontCare(usize, usize, usize),
    Invert(usize, usize),
    Step(usize, bool),
    Walk(usize),
    Directional(usize, bool, bool),
    Move(usize, usize),
}

fn pick<T: Copy>(items: &[T], i: usize) -> Option<T> {
    (!items.is_empty()).then(|| items[i % items.len()])
}

pub fn run_op(config: &mut Configuration<'_>, op: &Op, rng: &mut ChaCha8Rng) {
    let graph = config.graph();
    let n = graph.vertex_count();
    let before = config.variable_count();
    let vars = variables(config);
    match *op {
        Op::Exchange(v, a, b) => {
            let inc = graph.incident(v % n);
            if inc.len() >= 2 {
                let (ea, eb) = (inc[a % inc.len()], inc[b % inc.len()]);
                if ea != eb {
                    exchange(config, v % n, ea, eb).unwrap();
                }
            }
            assert_sound(config, "exchange");
        }
        Op::DontCare(v, a, c) => {
            let v = v % n;
            let free = config.dont_cares(v);
            if let (Some(e), Some(d)) = (pick(graph.incident(v), a), pick(&free, c)) {
                exchange_with_dontcare(config, v, e, d.color).unwrap();
            }
            assert_sound(config, "don't-care exchange");
        }
        Op::Invert(e, c) => {
            if graph.edge_count() == 0 {
                return;
            }
            let e = e % graph.edge_count();
            let link = Link::new(e, graph.endpoints(e).0);
            let own = config.link_color(link);
            let others: Vec<Color> = config.colors().filter(|&x| x != own).collect();
            let Some(other) = pick(&others, c) else { return };
            let path = trace_max_path(config, link, ColorPair::new(own, other));
            let snapshot = config.clone();
            invert_path(config, &path).unwrap();
            assert_sound(config, "inversion");
            assert_eq!(config.variable_count(), before, "inversion changed n_c");
            let again = trace_max_path(config, link, ColorPair::new(own, other));
            invert_path(config, &again).unwrap();
            assert_eq!(*config, snapshot, "inversion is not an involution");
            invert_path(config, &path).unwrap();
        }
        Op::Step(i, hi) => {
            if let Some(e) = pick(&vars, i) {
                let (lo, high) = graph.endpoints(e);
                kempe_step(config, e, if hi { high } else { lo }).unwrap();
                assert_sound(config, "Kempe step");
                assert!(config.variable_count() <= before, "Kempe step increased n_c");
            }
        }
        Op::Walk(i) => {
            if let Some(e) = pick(&vars, i) {
                walk_variable(config, e);
                assert_sound(config, "variable walk");
                assert!(config.variable_count() <= before, "variable walk increased n_c");
            }
        }
        Op::Directional(i, tree_mode, second) => {
            if let Some(e) = pick(&vars, i) {
                let cc = config.complex_color(e);
                let color = if second { cc.second } else { cc.first };
                let tree = build_spanning_tree(graph, i as u64);
                let guide = if tree_mode { Guide::Tree(&tree) } else { Guide::Random };
                walk_to_next_step(config, e, guide, color, rng).unwrap();
                assert_sound(config, "walk to next step");
                assert!(config.variable_count() <= before, "walk to next step increased n_c");
            }
        }
        Op::Move(i, j) => {
            if let Some(e) = pick(&vars, i) {
                let (lo, hi) = graph.endpoints(e);
                let neighbours: Vec<usize> = graph
                    .incident(lo)
                    .iter()
                    .chain(graph.incident(hi))
                    .copied()
                    .filter(|&f| f != e)
                    .collect();
                if let Some(f) = pick(&neighbours, j) {
                    let class = classify_move(config, e, f).unwrap();
                    if !class.case.is_blocked() {
                        apply_move(config, &class).unwrap();
                        assert_sound(config, class.case.name());
                        assert!(config.variable_count() <= before, "{} increased n_c", class.case.name());
                    }
                }
            }
        }
    }
}

/// Quaternion units: 0 = 1, 1 = i, 2 = j, 3 = k, with a sign.
type Quat = (i8, usize);

fn qmul(a: Quat, b: Quat) -> Quat {
    // products of basis units: row × column over (1, i, j, k)
    const TABLE: [[Quat; 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let (s, u) = TABLE[a.1][b.1];
    (s * a.0 * b.0, u)
}

/// Exchanges of two-edge patterns over an ordered color triple against
/// unit quaternion products. Each expected cell is (left result, right
/// result); constant results correspond to ±1.
pub fn check_quaternion_table() -> usize {
    let mut cells = 0;
    let g = families::path(3);
    for palette in [3usize, 4] {
        for a in 0..palette {
            for b in 0..palette {
                for c in 0..palette {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let (a, b, c) = (Color::new(a), Color::new(b), Color::new(c));
                    let cc = ComplexColor::new;
                    let unit = |x: ComplexColor| -> Quat {
                        match (x.first, x.second) {
                            (p, q) if p == q => (1, 0),
                            (p, q) if (p, q) == (a, b) => (1, 1),
                            (p, q) if (p, q) == (b, a) => (-1, 1),
                            (p, q) if (p, q) == (b, c) => (1, 2),
                            (p, q) if (p, q) == (c, b) => (-1, 2),
                            (p, q) if (p, q) == (c, a) => (1, 3),
                            (p, q) if (p, q) == (a, c) => (-1, 3),
                            _ => panic!("color outside the triple"),
                        }
                    };
                    let rows = [cc(a, b), cc(b, c), cc(c, a)];
                    let cols = [cc(b, a), cc(c, b), cc(a, c)];
                    let expected = [
                        [(cc(a, a), cc(b, b)), (cc(a, c), cc(b, b)), (cc(a, a), cc(b, c))],
                        [(cc(b, b), cc(c, a)), (cc(b, b), cc(c, c)), (cc(b, a), cc(c, c))],
                        [(cc(c, b), cc(a, a)), (cc(c, c), cc(a, b)), (cc(c, c), cc(a, a))],
                    ];
                    for (r, &row) in rows.iter().enumerate() {
                        for (k, &col) in cols.iter().enumerate() {
                            // a diagonal cell inverts the right operand first
                            let right = if r == k { -col } else { col };
                            let mut config = Configuration::from_complex_colors(&g, palette, &[row, right]).unwrap();
                            assert!(is_consistent(&config));
                            exchange(&mut config, 1, 0, 1).unwrap();
                            let got = (config.complex_color(0), config.complex_color(1));
                            assert_eq!(got, expected[r][k], "row {row} column {col}");
                            let product = qmul(unit(row), unit(col));
                            let variable = [got.0, got.1].into_iter().find(|x| x.is_variable());
                            match variable {
                                Some(v) => assert_eq!(product, unit(v), "row {row} column {col}"),
                                None => assert_eq!(product.1, 0, "row {row} column {col}"),
                            }
                            cells += 1;
                        }
                    }
                }
            }
        }
    }
    cells
}

/// A move of e1 onto e2 is effective when it does not add variables and
/// either removes one or leaves e1 constant.
pub fn effective(before: usize, config: &Configuration<'_>, tagged: usize) -> bool {
    let after = config.variable_count();
    after <= before && (after < before || !config.is_variable(tagged))
}

/// Tries the plain exchange, every maximal-path inversion through a link
/// of `next` that keeps off `tagged`, each followed by the exchange at
/// the shared vertex, and every flip of a path stretch running from a
/// link of `next` to a link of `tagged`, with or without the exchange.
pub fn oracle_effective(config: &Configuration<'_>, tagged: usize, next: usize) -> Option<String> {
    let graph = config.graph();
    let front = graph.common_vertex(tagged, next).unwrap();
    let tail = Link::new(tagged, graph.opposite(tagged, front));
    let head = Link::new(tagged, front);
    let before = config.variable_count();
    let finish = |mut c: Configuration<'_>| -> bool {
        if !is_consistent(&c) {
            return false;
        }
        exchange(&mut c, front, tagged, next).unwrap();
        effective(before, &c, tagged)
    };
    if finish(config.clone()) {
        return Some("exchange".into());
    }
    for link in [Link::new(next, front), Link::new(next, graph.opposite(next, front))] {
        let own = config.link_color(link);
        for other in config.colors().filter(|&o| o != own) {
            let pair = ColorPair::new(own, other);
            let path = trace_max_path(config, link, pair);
            if !path.contains_link(tail) && !path.contains_link(head) {
                let mut c = config.clone();
                invert_path(&mut c, &path).unwrap();
                if finish(c) {
                    return Some(format!("{path:?}"));
                }
            }
            for end in [tail, head] {
                if !path.contains_link(end) {
                    continue;
                }
                let i = path.links.iter().position(|&l| l == end).unwrap();
                let j = path.links.iter().position(|&l| l == link).unwrap();
                let stretch = &path.links[i.min(j)..=i.max(j)];
                let mut flipped = config.complex_colors();
                for l in stretch {
                    let x = &mut flipped[l.edge];
                    let cur = if graph.endpoints(l.edge).0 == l.endpoint { &mut x.first } else { &mut x.second };
                    *cur = pair.partner(*cur);
                }
                let c = Configuration::from_complex_colors(graph, config.palette(), &flipped).unwrap();
                if is_consistent(&c) && effective(before, &c, tagged) {
                    return Some(format!("stretch {stretch:?} of {pair:?} alone"));
                }
                if finish(c) {
                    return Some(format!("stretch {stretch:?} of {pair:?}"));
                }
            }
        }
    }
    None
}

/// All graphs on vertices 0..5 containing the edges 0-1 and 1-2 plus up
/// to two more edges.
pub fn local_shapes() -> Vec<SimpleGraph> {
    let mut pairs = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            if (a, b) != (0, 1) && (a, b) != (1, 2) {
                pairs.push((a, b));
            }
        }
    }
    let mut shapes = Vec::new();
    let build = |extra: &[(usize, usize)]| {
        let mut edges = vec![(0, 1), (1, 2)];
        edges.extend_from_slice(extra);
        let used = edges.iter().map(|&(_, b)| b).max().unwrap() + 1;
        SimpleGraph::new(used, edges).unwrap()
    };
    shapes.push(build(&[]));
    for (i, &p) in pairs.iter().enumerate() {
        shapes.push(build(&[p]));
        for &q in &pairs[i + 1..] {
            shapes.push(build(&[p, q]));
        }
    }
    shapes
}

/// Classifies `tagged -> next`, checks the verdict against the oracle and,
/// for an unblocked move, that applying it is consistent and effective.
pub fn check_move(config: &Configuration<'_>, tagged: usize, next: usize) -> &'static str {
    let class = classify_move(config, tagged, next).unwrap();
    let oracle = oracle_effective(config, tagged, next);
    assert_eq!(
        !class.case.is_blocked(),
        oracle.is_some(),
        "{tagged}->{next}: {:?} vs {oracle:?} on {:?} with {config:?}",
        class.case,
        config.graph().edges()
    );
    if !class.case.is_blocked() {
        let mut c = config.clone();
        apply_move(&mut c, &class).unwrap();
        assert!(is_consistent(&c));
        assert!(effective(config.variable_count(), &c, tagged), "{:?} not effective on {config:?}", class.case);
    }
    class.case.name()
}

/// Every consistent coloring of every local shape with 3 or 4 colors, e1
/// fixed to (0,1) up to color renaming. Returns the case counts.
pub fn check_local_patterns() -> BTreeMap<&'static str, usize> {
    let mut cases = BTreeMap::new();
    for graph in local_shapes() {
        let m = graph.edge_count();
        for palette in [3usize, 4] {
            if palette < graph.max_degree() {
                continue;
            }
            let free = 2 * m - 2;
            for code in 0..palette.pow(free as u32) {
                let mut digits = Vec::with_capacity(free);
                let mut x = code;
                for _ in 0..free {
                    digits.push(Color::new(x % palette));
                    x /= palette;
                }
                let mut colors = vec![ComplexColor::new(Color(0), Color(1))];
                colors.extend(digits.chunks(2).map(|d| ComplexColor::new(d[0], d[1])));
                let config = Configuration::from_complex_colors(&graph, palette, &colors).unwrap();
                if is_consistent(&config) {
                    *cases.entry(check_move(&config, 0, 1)).or_insert(0) += 1;
                }
            }
        }
    }
    cases
}

/// Checks every move of every variable on seeded random graphs of up to
/// nine vertices until `count` moves have been checked.
pub fn check_random_neighbourhoods(seed: u64, count: usize) -> BTreeMap<&'static str, usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = BTreeMap::new();
    let mut checked = 0usize;
    while checked < count {
        let n = rng.gen_range(4..10);
        let pairs: Vec<(usize, usize)> = (0..rng.gen_range(3..24)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let graph = graph_from(n, &pairs);
        let palette = graph.max_degree().max(3 + rng.gen_range(0..2)) + rng.gen_range(0..2);
        let config = initial_configuration(&graph, palette, rng.gen()).unwrap();
        for tagged in variables(&config) {
            let (lo, hi) = graph.endpoints(tagged);
            for &next in graph.incident(lo).iter().chain(graph.incident(hi)) {
                if next != tagged {
                    *cases.entry(check_move(&config, tagged, next)).or_insert(0) += 1;
                    checked += 1;
                }
            }
        }
    }
    cases
}

/// A random graph, palette and initial configuration, then `len` random
/// operations, each checked as it is applied. Ends with a parity check.
pub fn check_random_run(seed: u64, len: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..10);
    let pairs: Vec<(usize, usize)> = (0..rng.gen_range(2..22)).map(|_| (rng.gen_range(0..10), rng.gen_range(0..10))).collect();
    let graph = graph_from(n, &pairs);
    let ops: Vec<Op> = (0..len).map(|_| random_op(&mut rng)).collect();
    run_ops(&graph, rng.gen_range(0..2), rng.gen(), &ops);
}

pub fn random_op(rng: &mut ChaCha8Rng) -> Op {
    let mut i = || rng.gen_range(0..64usize);
    let (a, b, c) = (i(), i(), i());
    match rng.gen_range(0..7) {
        0 => Op::Exchange(a, b, c),
        1 => Op::DontCare(a, b, c),
        2 => Op::Invert(a, b),
        3 => Op::Step(a, rng.gen()),
        4 => Op::Walk(a),
        5 => Op::Directional(a, rng.gen(), rng.gen()),
        _ => Op::Move(a, b),
    }
}

pub fn run_ops(graph: &SimpleGraph, extra: usize, seed: u64, ops: &[Op]) {
    let mut config = initial_configuration(graph, graph.max_degree().max(1) + extra, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    assert_sound(&config, "initial configuration");
    for op in ops {
        run_op(&mut config, op, &mut rng);
    }
    assert_parity(&config);
}
