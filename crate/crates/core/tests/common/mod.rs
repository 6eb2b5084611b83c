#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use slcs::{ClosureModel, Formula, PointSet, SpaceGraph};

pub const LETTERS: [&str; 3] = ["p", "q", "r"];

/// Random relation on at most `max_n` points: mixed densities, optional
/// symmetry, self-loops allowed.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    if n == 0 {
        return Vec::new();
    }
    let density: f64 = *[0.02, 0.08, 0.15, 0.3, 0.6].choose(rng).unwrap();
    let symmetric = rng.gen_bool(0.4);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if (a == b && rng.gen_bool(0.1)) || (a != b && rng.gen_bool(density)) {
                edges.push((a, b));
                if symmetric {
                    edges.push((b, a));
                }
            }
        }
    }
    edges.shuffle(rng);
    edges
}

pub fn random_space<R: Rng>(rng: &mut R, max_n: usize) -> SpaceGraph {
    let n = rng.gen_range(0..=max_n);
    SpaceGraph::from_edges(n, random_edges(rng, n)).unwrap()
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    let p: f64 = rng.gen_range(0.0..1.0);
    PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(p))).unwrap()
}

pub fn random_model<R: Rng>(rng: &mut R, max_n: usize) -> ClosureModel {
    let n = rng.gen_range(1..=max_n);
    let edges = random_edges(rng, n);
    let valuation: Vec<(&str, Vec<usize>)> = LETTERS
        .iter()
        .map(|&l| (l, random_subset(rng, n).to_indices()))
        .collect();
    ClosureModel::from_edges(n, edges, valuation).unwrap()
}

/// Random formula of depth at most `depth` over [`LETTERS`], every
/// constructor included.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..8) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(*LETTERS.choose(rng).unwrap()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..14) {
        0 => Formula::not(random_formula(rng, d)),
        1 => Formula::and(random_formula(rng, d), random_formula(rng, d)),
        2 => Formula::or(random_formula(rng, d), random_formula(rng, d)),
        3 => Formula::near(random_formula(rng, d)),
        4 => Formula::interior(random_formula(rng, d)),
        5 => Formula::boundary(random_formula(rng, d)),
        6 => Formula::iboundary(random_formula(rng, d)),
        7 => Formula::cboundary(random_formula(rng, d)),
        8 | 9 => Formula::until(random_formula(rng, d), random_formula(rng, d)),
        10 => Formula::reach(random_formula(rng, d), random_formula(rng, d)),
        11 => Formula::global(random_formula(rng, d)),
        12 => Formula::future(random_formula(rng, d)),
        _ => Formula::not(Formula::until(random_formula(rng, d), random_formula(rng, d))),
    }
}

/// Side-by-side 4-adjacent grid with a striped valuation, used for scaling runs.
pub fn grid_model(side: usize) -> ClosureModel {
    let mut edges = Vec::with_capacity(4 * side * side);
    for y in 0..side {
        for x in 0..side {
            let i = y * side + x;
            if x + 1 < side {
                edges.push((i, i + 1));
                edges.push((i + 1, i));
            }
            if y + 1 < side {
                edges.push((i, i + side));
                edges.push((i + side, i));
            }
        }
    }
    let p: Vec<usize> = (0..side * side).filter(|i| !(i % side).is_multiple_of(16)).collect();
    let q: Vec<usize> = (0..side * side)
        .filter(|i| (i % side).is_multiple_of(16) && (i / side) % 7 != 3)
        .collect();
    ClosureModel::from_edges(side * side, edges, [("p", p), ("q", q)]).unwrap()
}
