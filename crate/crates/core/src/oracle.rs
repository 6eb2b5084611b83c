//! Brute-force reference semantics.
//!
//! Everything here is computed point by point from the definitions (direct
//! set-builder forms for the spatial operators, explicit walk searches for
//! the path operators) and shares no code with [`crate::space`]'s set
//! algebra or with [`crate::checker`]. Intended for small models.

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::model::ClosureModel;
use crate::pointset::{PointId, PointSet};
use crate::space::SpaceGraph;

fn collect(n: usize, mut pred: impl FnMut(PointId) -> bool) -> PointSet {
    let mut s = PointSet::empty(n);
    for i in 0..n {
        let x = PointId::from(i);
        if pred(x) {
            s.insert(x);
        }
    }
    s
}

fn has_pred_in(space: &SpaceGraph, x: PointId, set: &PointSet) -> bool {
    space.pred(x).any(|a| set.contains(a))
}

/// `{ x | x ∈ A ∨ ∃a ∈ A. (a, x) ∈ R }`
pub fn closure_pointwise(space: &SpaceGraph, a: &PointSet) -> PointSet {
    collect(space.len(), |x| a.contains(x) || has_pred_in(space, x, a))
}

/// `{ x ∈ A | ¬∃a ∉ A. (a, x) ∈ R }`
pub fn interior_pointwise(space: &SpaceGraph, a: &PointSet) -> PointSet {
    collect(space.len(), |x| a.contains(x) && !space.pred(x).any(|y| !a.contains(y)))
}

/// `{ x ∈ A | ∃a ∉ A. (a, x) ∈ R }`
pub fn boundary_minus_pointwise(space: &SpaceGraph, a: &PointSet) -> PointSet {
    collect(space.len(), |x| a.contains(x) && space.pred(x).any(|y| !a.contains(y)))
}

/// `{ x ∉ A | ∃a ∈ A. (a, x) ∈ R }`
pub fn boundary_plus_pointwise(space: &SpaceGraph, a: &PointSet) -> PointSet {
    collect(space.len(), |x| !a.contains(x) && has_pred_in(space, x, a))
}

/// Depth-first search over successors starting from the successors of `x`.
/// `enter` decides whether a reached point is expanded further; the search
/// stops as soon as `hit` holds for a reached point.
fn search_from_successors(
    space: &SpaceGraph,
    x: PointId,
    enter: impl Fn(PointId) -> bool,
    hit: impl Fn(PointId) -> bool,
) -> bool {
    let mut seen = vec![false; space.len()];
    let mut stack: Vec<PointId> = space.succ(x).collect();
    while let Some(y) = stack.pop() {
        if std::mem::replace(&mut seen[y.index()], true) {
            continue;
        }
        if hit(y) {
            return true;
        }
        if enter(y) {
            stack.extend(space.succ(y));
        }
    }
    false
}

/// `φ U ψ` by path quantification: `x ∈ φ` and no walk `x = p0, p1, .., pl`
/// has `pl ∉ φ` while `pk ∉ ψ` for every `k ∈ 1..=l`.
pub fn oracle_until(space: &SpaceGraph, phi: &PointSet, psi: &PointSet) -> PointSet {
    collect(space.len(), |x| {
        phi.contains(x)
            && !search_from_successors(space, x, |y| !psi.contains(y), |y| !psi.contains(y) && !phi.contains(y))
    })
}

/// `φ R ψ`: some walk reaches ψ at index `k` with φ on indices `1..=k`.
/// `k = 0` is allowed, so ψ at `x` suffices and `x` need not satisfy φ.
pub fn oracle_reach(space: &SpaceGraph, phi: &PointSet, psi: &PointSet) -> PointSet {
    collect(space.len(), |x| {
        psi.contains(x) || search_from_successors(space, x, |y| phi.contains(y), |y| phi.contains(y) && psi.contains(y))
    })
}

/// `G φ`: every point reachable from `x`, `x` included, satisfies φ.
pub fn oracle_global(space: &SpaceGraph, phi: &PointSet) -> PointSet {
    collect(space.len(), |x| {
        phi.contains(x) && !search_from_successors(space, x, |_| true, |y| !phi.contains(y))
    })
}

/// `F φ`: some point reachable from `x`, `x` included, satisfies φ.
pub fn oracle_future(space: &SpaceGraph, phi: &PointSet) -> PointSet {
    collect(space.len(), |x| {
        phi.contains(x) || search_from_successors(space, x, |_| true, |y| phi.contains(y))
    })
}

/// Reference satisfaction set of any formula, derived operators included,
/// evaluated from their semantic definitions rather than their desugaring.
pub fn oracle_satisfies(model: &ClosureModel, f: &Formula) -> Result<PointSet> {
    let space = model.space();
    let n = space.len();
    let sat = |g: &Formula| oracle_satisfies(model, g);
    Ok(match f {
        Formula::Atom(p) => model
            .letter(p)
            .cloned()
            .ok_or_else(|| Error::UnknownLetter(p.clone()))?,
        Formula::Top => collect(n, |_| true),
        Formula::Bot => collect(n, |_| false),
        Formula::Not(a) => {
            let a = sat(a)?;
            collect(n, |x| !a.contains(x))
        }
        Formula::And(a, b) => {
            let (a, b) = (sat(a)?, sat(b)?);
            collect(n, |x| a.contains(x) && b.contains(x))
        }
        Formula::Or(a, b) => {
            let (a, b) = (sat(a)?, sat(b)?);
            collect(n, |x| a.contains(x) || b.contains(x))
        }
        Formula::Near(a) => closure_pointwise(space, &sat(a)?),
        Formula::Interior(a) => interior_pointwise(space, &sat(a)?),
        Formula::Boundary(a) => {
            let a = sat(a)?;
            let (c, i) = (closure_pointwise(space, &a), interior_pointwise(space, &a));
            collect(n, |x| c.contains(x) && !i.contains(x))
        }
        Formula::IBoundary(a) => boundary_minus_pointwise(space, &sat(a)?),
        Formula::CBoundary(a) => boundary_plus_pointwise(space, &sat(a)?),
        Formula::Until(a, b) => oracle_until(space, &sat(a)?, &sat(b)?),
        Formula::Reach(a, b) => oracle_reach(space, &sat(a)?, &sat(b)?),
        Formula::Global(a) => oracle_global(space, &sat(a)?),
        Formula::Future(a) => oracle_future(space, &sat(a)?),
    })
}

/// Outcome of auditing an until result against bounded walk enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UntilAudit {
    /// Reported points with a walk leaving φ before meeting ψ.
    pub unsound: Vec<PointId>,
    /// φ-points left out although no such walk exists.
    pub incomplete: Vec<PointId>,
}

impl UntilAudit {
    pub fn passed(&self) -> bool {
        self.unsound.is_empty() && self.incomplete.is_empty()
    }
}

/// Whether some walk of at most `|X|` steps from `x` reaches a ¬φ point at
/// index `l` with ψ failing on all of indices `1..=l`. Enumerates walk
/// endpoints layer by layer, by walk length.
fn has_escape_walk(space: &SpaceGraph, x: PointId, phi: &PointSet, psi: &PointSet) -> bool {
    if !phi.contains(x) {
        return true;
    }
    let n = space.len();
    let mut layer = vec![x];
    let mut in_next = vec![false; n];
    for _ in 0..n {
        let mut next = Vec::new();
        for &y in &layer {
            for z in space.succ(y) {
                if psi.contains(z) || in_next[z.index()] {
                    continue;
                }
                if !phi.contains(z) {
                    return true;
                }
                in_next[z.index()] = true;
                next.push(z);
            }
        }
        if next.is_empty() {
            return false;
        }
        for z in &next {
            in_next[z.index()] = false;
        }
        layer = next;
    }
    false
}

/// Audits `reported` as the value of `φ U ψ`: every reported point must
/// satisfy the forward path property (each walk reaching ¬φ meets ψ first,
/// at an index ≥ 1) and every unreported φ-point must have a counterexample
/// walk.
pub fn audit_until(space: &SpaceGraph, phi: &PointSet, psi: &PointSet, reported: &PointSet) -> UntilAudit {
    let mut audit = UntilAudit::default();
    for i in 0..space.len() {
        let x = PointId::from(i);
        let escapes = has_escape_walk(space, x, phi, psi);
        if reported.contains(x) && escapes {
            audit.unsound.push(x);
        } else if !reported.contains(x) && phi.contains(x) && !escapes {
            audit.incomplete.push(x);
        }
    }
    audit
}

/// Runs the checker on `φ U ψ` and audits its answer with [`audit_until`].
pub fn check_forward_theorem(model: &ClosureModel, phi: &Formula, psi: &Formula) -> Result<bool> {
    let reported = crate::checker::check_until(model, phi, psi)?;
    let phi_set = oracle_satisfies(model, phi)?;
    let psi_set = oracle_satisfies(model, psi)?;
    Ok(audit_until(model.space(), &phi_set, &psi_set, &reported).passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> PointSet {
        PointSet::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn isolated_phi_point_satisfies_until() {
        let g = SpaceGraph::from_edges(1, []).unwrap();
        assert_eq!(oracle_until(&g, &set(1, &[0]), &set(1, &[])).to_indices(), vec![0]);
    }

    #[test]
    fn two_node_bad_case() {
        let g = SpaceGraph::from_edges(2, [(0, 1)]).unwrap();
        let both = set(2, &[0]);
        assert!(oracle_until(&g, &both, &both).is_empty());
        let audit = audit_until(&g, &both, &both, &set(2, &[]));
        assert!(audit.passed());
        let audit = audit_until(&g, &both, &both, &set(2, &[0]));
        assert_eq!(audit.unsound, vec![PointId(0)]);
    }

    #[test]
    fn future_is_backward_reachability() {
        // 0 -> 1 -> 2 <- 3, 4 isolated
        let g = SpaceGraph::from_edges(5, [(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(oracle_future(&g, &set(5, &[2])).to_indices(), vec![0, 1, 2, 3]);
        assert_eq!(
            oracle_global(&g, &set(5, &[0, 1, 2, 3, 4])).to_indices(),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(oracle_global(&g, &set(5, &[1, 2, 4])).to_indices(), vec![1, 2, 4]);
    }

    #[test]
    fn reach_with_psi_only_at_start() {
        // x = 0 satisfies ψ but not φ: k = 0 witnesses φ R ψ
        let g = SpaceGraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(oracle_reach(&g, &set(2, &[]), &set(2, &[0])).to_indices(), vec![0]);
        // reaching ψ at index 1 needs φ there too
        assert_eq!(oracle_reach(&g, &set(2, &[]), &set(2, &[1])).to_indices(), vec![1]);
        assert_eq!(oracle_reach(&g, &set(2, &[1]), &set(2, &[1])).to_indices(), vec![0, 1]);
    }

    #[test]
    fn pointwise_forms_on_chain() {
        let g = SpaceGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let a = set(3, &[1]);
        assert_eq!(closure_pointwise(&g, &a).to_indices(), vec![1, 2]);
        assert_eq!(interior_pointwise(&g, &a).to_indices(), Vec::<usize>::new());
        assert_eq!(boundary_minus_pointwise(&g, &a).to_indices(), vec![1]);
        assert_eq!(boundary_plus_pointwise(&g, &a).to_indices(), vec![2]);
    }
}
