//! Global model checking of SLCS formulas.
//!
//! Formulas are desugared to the core connectives and evaluated bottom-up
//! into point sets. Until is decided by a backward search from the points
//! that violate both sides: every φ-point that can step into such a point
//! is bad, and badness propagates backwards through points not covered by ψ.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::model::ClosureModel;
use crate::pointset::{PointId, PointSet};
use crate::space::{SpaceGraph, Work};

/// What to do with a proposition letter missing from the valuation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnknownAtoms {
    #[default]
    Error,
    /// Treat the letter as holding nowhere.
    Empty,
}

impl std::str::FromStr for UnknownAtoms {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "error" => Ok(UnknownAtoms::Error),
            "empty" => Ok(UnknownAtoms::Empty),
            other => Err(format!("expected `error` or `empty`, got `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub unknown_atoms: UnknownAtoms,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes_visited: u64,
    pub edges_traversed: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub satisfying: PointSet,
    pub stats: Stats,
}

/// Computes `{ x | M, x ⊨ f }` with default options.
pub fn check(model: &ClosureModel, f: &Formula) -> Result<CheckOutcome> {
    check_with(model, f, CheckOptions::default())
}

pub fn check_with(model: &ClosureModel, f: &Formula, opts: CheckOptions) -> Result<CheckOutcome> {
    let started = Instant::now();
    let core = f.desugar();
    let mut ev = Evaluator {
        model,
        opts,
        memo: HashMap::new(),
        work: Work::default(),
    };
    let satisfying = ev.eval(&core)?;
    let stats = Stats {
        nodes_visited: ev.work.nodes_visited,
        edges_traversed: ev.work.edges_traversed,
        wall_time: started.elapsed(),
    };
    Ok(CheckOutcome { satisfying, stats })
}

/// Points satisfying `phi U psi`.
pub fn check_until(model: &ClosureModel, phi: &Formula, psi: &Formula) -> Result<PointSet> {
    Ok(check(model, &Formula::until(phi.clone(), psi.clone()))?.satisfying)
}

/// Checks several formulas against one model, in parallel when the
/// `parallel` feature is enabled. Results keep input order.
pub fn check_all(model: &ClosureModel, formulas: &[Formula], opts: CheckOptions) -> Vec<Result<CheckOutcome>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        formulas.par_iter().map(|f| check_with(model, f, opts)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        check_all_sequential(model, formulas, opts)
    }
}

pub fn check_all_sequential(
    model: &ClosureModel,
    formulas: &[Formula],
    opts: CheckOptions,
) -> Vec<Result<CheckOutcome>> {
    formulas.iter().map(|f| check_with(model, f, opts)).collect()
}

struct Evaluator<'m, 'f> {
    model: &'m ClosureModel,
    opts: CheckOptions,
    memo: HashMap<&'f Formula, PointSet>,
    work: Work,
}

impl<'f> Evaluator<'_, 'f> {
    fn eval(&mut self, f: &'f Formula) -> Result<PointSet> {
        if let Some(s) = self.memo.get(f) {
            return Ok(s.clone());
        }
        let space = self.model.space();
        let out = match f {
            Formula::Top => space.full_set(),
            Formula::Atom(p) => match (self.model.letter(p), self.opts.unknown_atoms) {
                (Some(s), _) => s.clone(),
                (None, UnknownAtoms::Empty) => space.empty_set(),
                (None, UnknownAtoms::Error) => return Err(Error::UnknownLetter(p.clone())),
            },
            Formula::Not(a) => self.eval(a)?.complement(),
            Formula::And(a, b) => {
                let mut s = self.eval(a)?;
                s.intersect_with(&self.eval(b)?);
                s
            }
            Formula::Near(a) => {
                let s = self.eval(a)?;
                space.closure_counted(&s, &mut self.work)
            }
            Formula::Until(a, b) => {
                let v = self.eval(a)?;
                let q = self.eval(b)?;
                until_sets(space, v, &q, &mut self.work)
            }
            derived => unreachable!("`{}` survived desugaring", derived.operator_name()),
        };
        self.memo.insert(f, out.clone());
        Ok(out)
    }
}

/// Until over precomputed sets: removes from `v` (the φ-points) every point
/// with a path leaving `v` before reaching `q` (the ψ-points).
pub fn until_sets(space: &SpaceGraph, v: PointSet, q: &PointSet, work: &mut Work) -> PointSet {
    until_sets_variant(space, v, q, work, Variant::Faithful)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Faithful,
    NoFrontierFilter,
    KeepGuarded,
}

fn until_sets_variant(
    space: &SpaceGraph,
    mut v: PointSet,
    q: &PointSet,
    work: &mut Work,
    variant: Variant,
) -> PointSet {
    let covered = v.union(q);
    let frontier = space.closure_counted(&covered, work).difference(&covered);

    // A point enters the queue either as a frontier point (outside V ∪ Q) or
    // when it is removed from V, so at most once.
    let mut queue: VecDeque<u32> = frontier.iter().map(|p| p.0).collect();
    while let Some(x) = queue.pop_front() {
        let preds = space.pred_slice(x as usize);
        work.nodes_visited += 1;
        work.edges_traversed += preds.len() as u64;
        for &y in preds {
            let y = PointId(y);
            if !v.contains(y) {
                continue;
            }
            let guarded = q.contains(y);
            match variant {
                Variant::Faithful => {
                    v.remove(y);
                    if !guarded {
                        queue.push_back(y.0);
                    }
                }
                Variant::NoFrontierFilter => {
                    v.remove(y);
                    queue.push_back(y.0);
                }
                Variant::KeepGuarded => {
                    if !guarded {
                        v.remove(y);
                        queue.push_back(y.0);
                    }
                }
            }
        }
    }
    v
}

/// Deliberately broken until procedures, for mutation testing the audits.
#[doc(hidden)]
pub mod fault {
    use super::*;

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Mutation {
        /// Propagate badness from removed points even when they satisfy ψ.
        NoFrontierFilter,
        /// Never remove ψ-points from V.
        KeepGuarded,
    }

    pub fn until_sets_mutant(space: &SpaceGraph, v: PointSet, q: &PointSet, mutation: Mutation) -> PointSet {
        let variant = match mutation {
            Mutation::NoFrontierFilter => Variant::NoFrontierFilter,
            Mutation::KeepGuarded => Variant::KeepGuarded,
        };
        until_sets_variant(space, v, q, &mut Work::default(), variant)
    }
}
