//! Finite topological spaces.
//!
//! A finite space is stored through its point closures `cl{x}`; closed sets are
//! exactly the unions of point closures (the down-sets of the specialization
//! preorder), so no family of closed sets has to be materialized. Families are
//! enumerated on demand with an explicit cap.

mod maps;
mod pointset;

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use maps::{check_map, MapCheck};
pub use pointset::PointSet;

/// Default cap on the size of enumerated closed-set families.
pub const DEFAULT_FAMILY_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    closures: Vec<PointSet>,
    ups: Vec<PointSet>,
}

impl FiniteSpace {
    /// Builds a space from point closures. Each `closures[x]` must contain `x`,
    /// and `y ∈ cl{x}` must imply `cl{y} ⊆ cl{x}`.
    pub fn from_closures(labels: Vec<String>, closures: Vec<PointSet>) -> Result<Self> {
        let n = labels.len();
        if closures.len() != n {
            return Err(Error::InvalidSpace(format!(
                "{} closures for {n} points",
                closures.len()
            )));
        }
        for (x, cl) in closures.iter().enumerate() {
            if cl.universe() != n {
                return Err(Error::InvalidSpace("point set of wrong size".into()));
            }
            if !cl.contains(x) {
                return Err(Error::InvalidSpace(format!(
                    "{} not in its closure",
                    labels[x]
                )));
            }
            if let Some(y) = cl.iter().find(|&y| !closures[y].is_subset(cl)) {
                return Err(Error::InvalidSpace(format!(
                    "closure of {} not contained in closure of {}",
                    labels[y], labels[x]
                )));
            }
        }
        let ups = (0..n)
            .map(|x| PointSet::from_indices(n, (0..n).filter(|&y| closures[y].contains(x))))
            .collect();
        Ok(Self {
            labels,
            closures,
            ups,
        })
    }

    /// The topology whose closed sets are generated by `basis` together with ∅
    /// and the whole space under finite unions and intersections.
    pub fn from_closed_basis(labels: Vec<String>, basis: &[PointSet]) -> Result<Self> {
        let n = labels.len();
        check_sizes(n, basis)?;
        let closures = (0..n)
            .map(|x| {
                basis
                    .iter()
                    .filter(|b| b.contains(x))
                    .fold(PointSet::full(n), |acc, b| acc.intersection(b))
            })
            .collect();
        Self::from_closures(labels, closures)
    }

    /// The topology generated by `basis` as a subbasis of open sets.
    pub fn from_open_basis(labels: Vec<String>, basis: &[PointSet]) -> Result<Self> {
        let n = labels.len();
        check_sizes(n, basis)?;
        let ups: Vec<PointSet> = (0..n)
            .map(|x| {
                basis
                    .iter()
                    .filter(|b| b.contains(x))
                    .fold(PointSet::full(n), |acc, b| acc.intersection(b))
            })
            .collect();
        let closures = (0..n)
            .map(|x| PointSet::from_indices(n, (0..n).filter(|&y| ups[y].contains(x))))
            .collect();
        Self::from_closures(labels, closures)
    }

    /// Builds a space from its complete family of closed sets, which must
    /// contain ∅ and the whole space and be closed under unions and intersections.
    pub fn from_closed_sets(labels: Vec<String>, family: &[PointSet]) -> Result<Self> {
        let n = labels.len();
        check_sizes(n, family)?;
        check_lattice(n, family)?;
        Self::from_closed_basis(labels, family)
    }

    pub fn from_open_sets(labels: Vec<String>, family: &[PointSet]) -> Result<Self> {
        let n = labels.len();
        check_sizes(n, family)?;
        check_lattice(n, family)?;
        Self::from_open_basis(labels, family)
    }

    /// Points named `0, 1, …` with the given closures.
    pub fn unlabeled(closures: Vec<PointSet>) -> Result<Self> {
        let labels = (0..closures.len()).map(|i| i.to_string()).collect();
        Self::from_closures(labels, closures)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn point(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn set(&self, labels: &[&str]) -> Result<PointSet> {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.point(l)?);
        }
        Ok(s)
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn format_set(&self, s: &PointSet) -> String {
        let names: Vec<&str> = s.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn set_names(&self, s: &PointSet) -> Vec<String> {
        s.iter().map(|x| self.labels[x].clone()).collect()
    }

    /// `cl{x}`.
    pub fn point_closure(&self, x: usize) -> &PointSet {
        &self.closures[x]
    }

    /// The smallest open set containing `x`, `{y : x ∈ cl{y}}`.
    pub fn up(&self, x: usize) -> &PointSet {
        &self.ups[x]
    }

    pub fn point_closures(&self) -> &[PointSet] {
        &self.closures
    }

    pub fn closure(&self, s: &PointSet) -> PointSet {
        s.iter()
            .fold(self.empty_set(), |acc, x| acc.union(&self.closures[x]))
    }

    /// The smallest open set containing `s`.
    pub fn open_hull(&self, s: &PointSet) -> PointSet {
        s.iter()
            .fold(self.empty_set(), |acc, x| acc.union(&self.ups[x]))
    }

    pub fn interior(&self, s: &PointSet) -> PointSet {
        self.closure(&s.complement()).complement()
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        s.universe() == self.len() && self.closure(s) == *s
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        s.universe() == self.len() && self.open_hull(s) == *s
    }

    /// `y ∈ cl{x}`: `y` is a specialization of `x`.
    pub fn specializes(&self, y: usize, x: usize) -> bool {
        self.closures[x].contains(y)
    }

    pub fn is_t0(&self) -> bool {
        let distinct: HashSet<&PointSet> = self.closures.iter().collect();
        distinct.len() == self.len()
    }

    /// Finite spaces are Noetherian.
    pub fn is_noetherian(&self) -> bool {
        true
    }

    /// Every subset of a finite space is quasi-compact.
    pub fn is_quasi_compact(&self, _s: &PointSet) -> bool {
        true
    }

    /// All closed sets, by breadth-first unions of point closures.
    pub fn closed_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        let mut seen: HashSet<PointSet> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.empty_set());
        queue.push_back(self.empty_set());
        while let Some(z) = queue.pop_front() {
            for x in 0..self.len() {
                if z.contains(x) {
                    continue;
                }
                let next = z.union(&self.closures[x]);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::Capacity {
                            what: "closed sets",
                            size: seen.len() + 1,
                            limit: cap,
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<PointSet> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn open_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        let mut out: Vec<PointSet> = self
            .closed_sets(cap)?
            .iter()
            .map(PointSet::complement)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Down-sets of the specialization preorder. On a finite space these are
    /// exactly the closed sets.
    pub fn specialization_closed_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        self.closed_sets(cap)
    }

    /// Whether `z` is a nonempty closed set that is not the union of two proper
    /// closed subsets.
    ///
    /// Every proper closed subset of `z` misses some `w ∈ z` and so lies in the
    /// maximal proper closed subset `z ∖ ↑w`; it is enough to test whether two
    /// of these cover `z`.
    pub fn is_irreducible(&self, z: &PointSet) -> bool {
        if z.is_empty() || !self.is_closed(z) {
            return false;
        }
        let maximal: Vec<PointSet> = z.iter().map(|w| z.difference(&self.ups[w])).collect();
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i..] {
                if a.union(b) == *z {
                    return false;
                }
            }
        }
        true
    }

    /// Irreducible closed sets, sorted.
    ///
    /// A closed set `Z` is the finite union of the closures of its points, so an
    /// irreducible one equals some `cl{x}`; only point closures are tested.
    pub fn irreducible_closed_sets(&self) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = self
            .closures
            .iter()
            .filter(|z| self.is_irreducible(z))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Irreducible closed sets found by testing every closed set.
    pub fn irreducible_closed_sets_exhaustive(&self, cap: usize) -> Result<Vec<PointSet>> {
        Ok(self
            .closed_sets(cap)?
            .into_iter()
            .filter(|z| self.is_irreducible(z))
            .collect())
    }

    /// Points `x ∈ z` with `cl{x} = z`.
    pub fn generic_points(&self, z: &PointSet) -> Vec<usize> {
        z.iter().filter(|&x| self.closures[x] == *z).collect()
    }

    /// The unique generic point of an irreducible closed set, if it has exactly one.
    pub fn generic_point(&self, z: &PointSet) -> Result<Option<usize>> {
        if !self.is_closed(z) {
            return Err(Error::NotClosedSet);
        }
        if !self.is_irreducible(z) {
            return Err(Error::Reducible);
        }
        match self.generic_points(z).as_slice() {
            [x] => Ok(Some(*x)),
            _ => Ok(None),
        }
    }

    pub fn is_sober(&self) -> bool {
        self.irreducible_closed_sets()
            .iter()
            .all(|z| self.generic_points(z).len() == 1)
    }

    /// For finite spaces: T0 and sober.
    pub fn is_spectral(&self) -> bool {
        self.is_t0() && self.is_sober()
    }

    /// Evaluates the ultrafilter criterion for spectrality against an open
    /// basis: for each (principal) ultrafilter `U_p`, the set
    /// `{x : ∀B ∈ basis, x ∈ B ⇔ B ∈ U_p}` must be nonempty.
    pub fn finocchiaro_check(&self, open_basis: &[PointSet]) -> Result<FinocchiaroReport> {
        check_sizes(self.len(), open_basis)?;
        let generated = FiniteSpace::from_open_basis(self.labels.clone(), open_basis)?;
        if generated.closures != self.closures {
            return Err(Error::BasisMismatch);
        }
        let witnesses: Vec<PointSet> = (0..self.len())
            .map(|p| {
                let u = Ultrafilter::principal(p);
                PointSet::from_indices(
                    self.len(),
                    (0..self.len())
                        .filter(|&x| open_basis.iter().all(|b| b.contains(x) == u.contains(b))),
                )
            })
            .collect();
        Ok(FinocchiaroReport {
            holds: witnesses.iter().all(|w| !w.is_empty()),
            witnesses,
        })
    }

    /// The Hochster dual: the open sets of the dual are the closed sets here,
    /// so specialization is reversed.
    pub fn hochster_dual(&self) -> Result<FiniteSpace> {
        if !self.is_spectral() {
            return Err(Error::NotSpectral);
        }
        Ok(FiniteSpace {
            labels: self.labels.clone(),
            closures: self.ups.clone(),
            ups: self.closures.clone(),
        })
    }

    /// The subspace on `u`, with its points listed in increasing order of index.
    pub fn subspace(&self, u: &PointSet) -> FiniteSpace {
        let points: Vec<usize> = u.iter().collect();
        let m = points.len();
        let labels = points.iter().map(|&x| self.labels[x].clone()).collect();
        let closures: Vec<PointSet> = points
            .iter()
            .map(|&x| {
                PointSet::from_indices(
                    m,
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, &y)| self.closures[x].contains(y))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        FiniteSpace::from_closures(labels, closures).expect("subspace of a valid space")
    }

    /// Covering pairs `(x, y)` of the strict specialization order: `x ∈ cl{y}`,
    /// `y ∉ cl{x}`, and nothing strictly between. Generic points are sinks.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let below =
            |x: usize, y: usize| self.closures[y].contains(x) && !self.closures[x].contains(y);
        let mut edges = Vec::new();
        for y in 0..n {
            for x in self.closures[y].iter() {
                if below(x, y) && !(0..n).any(|z| below(x, z) && below(z, y)) {
                    edges.push((x, y));
                }
            }
        }
        edges.sort();
        edges
    }

    /// Graphviz rendering of the specialization Hasse diagram. Points with the
    /// same closure are joined by dashed undirected edges; generic points of
    /// irreducible components are drawn as double circles.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_id(name));
        let _ = writeln!(out, "  rankdir=BT;");
        let maximal: HashSet<usize> = (0..self.len())
            .filter(|&x| self.ups[x].iter().all(|y| self.closures[x].contains(y)))
            .collect();
        for x in 0..self.len() {
            let shape = if maximal.contains(&x) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(
                out,
                "  n{x} [label={}, shape={shape}];",
                dot_id(&self.labels[x])
            );
        }
        for (x, y) in self.hasse_edges() {
            let _ = writeln!(out, "  n{x} -> n{y};");
        }
        for x in 0..self.len() {
            for y in (x + 1)..self.len() {
                if self.closures[x] == self.closures[y] {
                    let _ = writeln!(out, "  n{x} -> n{y} [dir=none, style=dashed];");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Serializable form listing all closed sets, or the point closures (which
    /// generate them) when the family exceeds `cap`.
    pub fn to_doc(&self, cap: usize) -> SpaceDoc {
        let sets = self.closed_sets(cap).unwrap_or_else(|_| {
            let mut c = self.closures.clone();
            c.sort();
            c.dedup();
            c
        });
        SpaceDoc {
            points: self.labels.clone(),
            closed_sets: Some(sets.iter().map(|s| self.set_names(s)).collect()),
            open_sets: None,
        }
    }

    pub fn from_doc(doc: &SpaceDoc) -> Result<Self> {
        let n = doc.points.len();
        let mut seen = HashSet::new();
        for p in &doc.points {
            if !seen.insert(p.as_str()) {
                return Err(Error::InvalidSpace(format!("duplicate point {p}")));
            }
        }
        let resolve = |sets: &[Vec<String>]| -> Result<Vec<PointSet>> {
            sets.iter()
                .map(|names| {
                    let mut s = PointSet::empty(n);
                    for name in names {
                        let x = doc
                            .points
                            .iter()
                            .position(|p| p == name)
                            .ok_or_else(|| Error::UnknownPoint(name.clone()))?;
                        s.insert(x);
                    }
                    Ok(s)
                })
                .collect()
        };
        match (&doc.closed_sets, &doc.open_sets) {
            (Some(c), None) => Self::from_closed_basis(doc.points.clone(), &resolve(c)?),
            (None, Some(o)) => Self::from_open_basis(doc.points.clone(), &resolve(o)?),
            _ => Err(Error::InvalidSpace(
                "exactly one of closed_sets and open_sets is required".into(),
            )),
        }
    }
}

fn check_sizes(n: usize, sets: &[PointSet]) -> Result<()> {
    if sets.iter().any(|s| s.universe() != n) {
        return Err(Error::InvalidSpace("point set of wrong size".into()));
    }
    Ok(())
}

fn check_lattice(n: usize, family: &[PointSet]) -> Result<()> {
    let members: HashSet<&PointSet> = family.iter().collect();
    if !members.contains(&PointSet::empty(n)) || !members.contains(&PointSet::full(n)) {
        return Err(Error::InvalidSpace(
            "family must contain ∅ and the whole space".into(),
        ));
    }
    for a in family {
        for b in family {
            if !members.contains(&a.union(b)) || !members.contains(&a.intersection(b)) {
                return Err(Error::InvalidSpace(
                    "family is not closed under union and intersection".into(),
                ));
            }
        }
    }
    Ok(())
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Serialized space. The listed sets generate the topology; a complete family
/// of closed (or open) sets is one valid input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_sets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_sets: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinocchiaroReport {
    pub holds: bool,
    /// Witness set for the ultrafilter at each point.
    pub witnesses: Vec<PointSet>,
}

/// An ultrafilter on the points of a finite space. Every ultrafilter on a
/// finite set is principal, so it is determined by its point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ultrafilter {
    point: usize,
}

impl Ultrafilter {
    pub fn principal(point: usize) -> Self {
        Self { point }
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        s.contains(self.point)
    }

    /// Checks the filter axioms and the ultra dichotomy over all subsets of an
    /// `n`-point set (`n ≤ 16`).
    pub fn check_axioms(&self, n: usize) -> Result<bool> {
        if n > 16 {
            return Err(Error::Capacity {
                what: "points for ultrafilter axiom check",
                size: n,
                limit: 16,
            });
        }
        if self.point >= n {
            return Ok(false);
        }
        let subsets: Vec<PointSet> = (0..(1u32 << n))
            .map(|bits| PointSet::from_indices(n, (0..n).filter(|i| bits & (1 << i) != 0)))
            .collect();
        if self.contains(&PointSet::empty(n)) || !self.contains(&PointSet::full(n)) {
            return Ok(false);
        }
        for a in &subsets {
            if self.contains(a) == self.contains(&a.complement()) {
                return Ok(false);
            }
            for b in &subsets {
                if self.contains(a) && self.contains(b) && !self.contains(&a.intersection(b)) {
                    return Ok(false);
                }
                if self.contains(a) && a.is_subset(b) && !self.contains(b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
