//! The law battery: every structural property the library promises, checked
//! on concrete models, spectra, supports and bridges.
//!
//! Each law has a stable id and a one-line statement. A [`Battery`] tallies
//! how many cases of each law were checked and keeps the first failure.

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::equivariance::{invariant_subcats, EquivariantBridge};
use crate::error::Result;
use crate::fixtures;
use crate::lattice::{
    enumerate_by_filter, satisfies, Closure, Kind, Lattice, Subcat, SubcatFamily,
};
use crate::model::{CategoryModel, Flavor, Obj};
use crate::random::{self, RandomConfig};
use crate::spectrum::{build_spectrum, Spectrum, MAX_POINTS};
use crate::supports::Support;
use crate::topology::{FiniteSpace, PointSet};

/// Cap on exhaustive open/closed-set enumerations inside the battery; larger
/// spaces fall back to generating sets.
pub const LAW_FAMILY_CAP: usize = 4096;

/// Spaces with at most this many points have the closure formula checked on every subset.
const EXHAUSTIVE_CLOSURE_POINTS: usize = 12;

/// Models with at most this many indecomposables have object supports enumerated exhaustively.
const EXHAUSTIVE_OBJECT_INDECS: usize = 10;

/// Random subsets drawn per shape when a space is too large to check every subset.
const SAMPLED_SUBSETS: usize = 64;

/// Points whose closure, open star and complement are restricted to.
const RESTRICTION_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub id: String,
    pub statement: String,
    pub passed: bool,
    pub cases: usize,
    /// The first failing case.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Battery {
    laws: Vec<LawResult>,
    context: String,
}

impl Battery {
    pub fn new() -> Self {
        Self::default()
    }

    /// Prefix for failure details recorded from now on.
    pub fn set_context(&mut self, context: impl Into<String>) {
        self.context = context.into();
    }

    pub fn check(&mut self, id: &str, statement: &str, ok: bool, detail: impl FnOnce() -> String) {
        let pos = match self.laws.iter().position(|l| l.id == id) {
            Some(p) => p,
            None => {
                self.laws.push(LawResult {
                    id: id.to_string(),
                    statement: statement.to_string(),
                    passed: true,
                    cases: 0,
                    detail: None,
                });
                self.laws.len() - 1
            }
        };
        let law = &mut self.laws[pos];
        law.cases += 1;
        if !ok && law.passed {
            law.passed = false;
            law.detail = Some(if self.context.is_empty() {
                detail()
            } else {
                format!("{}: {}", self.context, detail())
            });
        }
    }

    pub fn laws(&self) -> &[LawResult] {
        &self.laws
    }

    pub fn law(&self, id: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.id == id)
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn into_laws(self) -> Vec<LawResult> {
        self.laws
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub models: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub laws: Vec<LawResult>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn from_battery(b: Battery, models: usize, notes: Vec<String>) -> Self {
        Self {
            passed: b.passed(),
            models,
            model_hash: None,
            seed: None,
            laws: b.into_laws(),
            notes,
        }
    }
}

fn random_obj(rng: &mut impl Rng, n: usize) -> Obj {
    let k = rng.gen_range(0..=3);
    Obj::from_counts((0..k).map(|_| (rng.gen_range(0..n), rng.gen_range(1..=2))))
}

// ---------------------------------------------------------------------------
// Models and lattices

pub fn model_laws(b: &mut Battery, model: &CategoryModel, seed: u64) {
    let mut rng = random::rng(seed);
    let n = model.len();
    for _ in 0..32 {
        let [x, y, z] = [(); 3].map(|_| random_obj(&mut rng, n));
        let ok = x.direct_sum(&y) == y.direct_sum(&x)
            && x.direct_sum(&y).direct_sum(&z) == x.direct_sum(&y.direct_sum(&z))
            && x.direct_sum(&Obj::zero()) == x;
        b.check(
            "model.direct-sum-monoid",
            "direct sum is commutative and associative with unit 0",
            ok,
            || {
                format!(
                    "fails on {}, {}, {}",
                    model.format_obj(&x),
                    model.format_obj(&y),
                    model.format_obj(&z)
                )
            },
        );
        if let Some(t) = model.tensor_table() {
            let ok = t.tensor(&x, &y.direct_sum(&z))
                == t.tensor(&x, &y).direct_sum(&t.tensor(&x, &z))
                && t.tensor(&y.direct_sum(&z), &x)
                    == t.tensor(&y, &x).direct_sum(&t.tensor(&z, &x));
            b.check(
                "model.tensor-biadditive",
                "tensor distributes over direct sum on both sides",
                ok,
                || {
                    format!(
                        "fails on {}, {}, {}",
                        model.format_obj(&x),
                        model.format_obj(&y),
                        model.format_obj(&z)
                    )
                },
            );
        }
    }
    if model.flavor() == Flavor::TriangulatedShiftQuotient {
        for c in model.conflations() {
            let ok = c
                .rotations()
                .iter()
                .all(|r| model.conflations().contains(r));
            b.check(
                "model.rotation-closed",
                "triangulated conflation lists are closed under rotation",
                ok,
                || format!("missing a rotation of {}", model.format_obj(&c.middle)),
            );
        }
    }
}

fn kinds(model: &CategoryModel) -> Vec<Kind> {
    Kind::ALL
        .into_iter()
        .filter(|k| !k.needs_tensor() || model.tensor_table().is_some())
        .collect()
}

fn seeds(model: &CategoryModel, rng: &mut impl Rng) -> Vec<Subcat> {
    let n = model.len();
    if n <= EXHAUSTIVE_CLOSURE_POINTS {
        (0..1u64 << n).map(Subcat::from_bits).collect()
    } else {
        let mask = model.full().bits();
        (0..256)
            .map(|_| Subcat::from_bits(rng.gen::<u64>() & mask))
            .collect()
    }
}

pub fn lattice_laws(b: &mut Battery, model: &CategoryModel, limit: usize, seed: u64) -> Result<()> {
    let lattice = Lattice::new(model).with_limit(limit);
    let mut families = Vec::new();
    for kind in kinds(model) {
        let fast = lattice.enumerate(kind)?;
        let oracle = enumerate_by_filter(model, kind, limit)?;
        b.check(
            "lattice.enumeration-oracle",
            "enumeration equals the filter of all subsets by the defining predicate",
            fast.same_members(&oracle),
            || {
                format!(
                    "{kind}: {} enumerated, {} by filter",
                    fast.len(),
                    oracle.len()
                )
            },
        );
        families.push((kind, fast));
    }
    let family = |k: Kind| families.iter().find(|(kind, _)| *kind == k).map(|(_, f)| f);
    let (all, thick, serre) = (
        family(Kind::As).unwrap(),
        family(Kind::Thick).unwrap(),
        family(Kind::Serre).unwrap(),
    );
    b.check(
        "lattice.kind-nesting",
        "Serre subcategories are thick and thick subcategories are additive",
        serre.is_subfamily_of(thick) && thick.is_subfamily_of(all),
        || {
            format!(
                "{} Serre, {} thick, {} additive",
                serre.len(),
                thick.len(),
                all.len()
            )
        },
    );

    let mut rng = random::rng(seed);
    let seeds = seeds(model, &mut rng);
    for kind in kinds(model) {
        let closure = Closure::new(model, kind)?;
        for &s in &seeds {
            let c = closure.close(s);
            let monotone = (0..model.len()).all(|i| {
                let mut bigger = s;
                bigger.insert(i);
                c.is_subset(closure.close(bigger))
            });
            let ok =
                s.is_subset(c) && closure.close(c) == c && monotone && satisfies(model, c, kind)?;
            b.check(
                "lattice.closure-operator",
                "closure is extensive, monotone and idempotent and lands in the kind",
                ok,
                || format!("{kind} closure of {}", model.format_subcat(s)),
            );
        }
    }

    let full = model.full();
    let matsui = lattice.matsui_primes()?;
    b.check(
        "lattice.primes-proper",
        "primes are proper members of their ambient lattice",
        matsui.is_subfamily_of(thick) && !matsui.contains(full),
        || "a Matsui prime is not a proper thick subcategory".into(),
    );
    if model.tensor_table().is_some() {
        let balmer = lattice.balmer_primes()?;
        let nc = lattice.nc_primes()?;
        let ideals = family(Kind::TtIdeal).unwrap();
        let two_sided = family(Kind::NcTwoSided).unwrap();
        b.check(
            "lattice.primes-proper",
            "primes are proper members of their ambient lattice",
            balmer.is_subfamily_of(ideals)
                && nc.is_subfamily_of(two_sided)
                && !balmer.contains(full)
                && !nc.contains(full),
            || "a tensor prime is not a proper ideal".into(),
        );
        if model.tensor_table().is_some_and(|t| t.is_commutative()) {
            b.check(
                "lattice.nc-primes-commutative",
                "for a commutative tensor, nc-primes are exactly the Balmer primes",
                nc.same_members(&balmer),
                || format!("{} nc-primes, {} Balmer primes", nc.len(), balmer.len()),
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Finite spaces

pub fn space_laws(b: &mut Battery, space: &FiniteSpace) -> Result<()> {
    let n = space.len();
    let opens = space.open_sets(LAW_FAMILY_CAP).unwrap_or_else(|_| {
        let mut gens: Vec<PointSet> = (0..n).map(|y| space.up(y).clone()).collect();
        gens.push(space.empty_set());
        gens
    });
    for u in &opens {
        for x in 0..n {
            let cl = space.point_closure(x);
            let misses = u.is_disjoint(cl);
            let ok = misses == !u.contains(x) && (!misses || cl.iter().all(|y| !u.contains(y)));
            b.check(
                "topology.open-misses-closure",
                "an open set misses cl{x} exactly when it does not contain x",
                ok,
                || format!("U = {}, x = {}", space.format_set(u), space.label(x)),
            );
        }
    }
    let quasi_compact = space.is_quasi_compact(&space.full_set())
        && (0..n).all(|x| space.is_quasi_compact(space.point_closure(x)));
    b.check(
        "topology.finite-noetherian",
        "finite spaces are Noetherian and every subset is quasi-compact",
        space.is_noetherian() && quasi_compact,
        || "a finite space was reported non-Noetherian".into(),
    );
    if let Ok(exhaustive) = space.irreducible_closed_sets_exhaustive(LAW_FAMILY_CAP) {
        let mut fast = space.irreducible_closed_sets();
        fast.sort();
        fast.dedup();
        b.check(
            "topology.irreducible-oracle",
            "irreducible closed sets from point closures equal the exhaustive irreducibility test",
            fast == exhaustive,
            || {
                format!(
                    "{} from point closures, {} exhaustive",
                    fast.len(),
                    exhaustive.len()
                )
            },
        );
    }
    b.check(
        "topology.finite-t0-sober",
        "finite T0 spaces are sober",
        !space.is_t0() || space.is_sober(),
        || "T0 but not sober".into(),
    );
    let ups: Vec<PointSet> = (0..n).map(|x| space.up(x).clone()).collect();
    let fin = space.finocchiaro_check(&ups)?;
    b.check(
        "topology.spectral-finocchiaro",
        "a space is spectral exactly when it is T0 and satisfies the ultrafilter criterion",
        space.is_spectral() == (space.is_t0() && fin.holds),
        || {
            format!(
                "spectral = {}, ultrafilter criterion = {}",
                space.is_spectral(),
                fin.holds
            )
        },
    );
    if space.is_spectral() {
        let dual = space.hochster_dual()?;
        let back = dual.hochster_dual()?;
        let reversed =
            (0..n).all(|x| (0..n).all(|y| dual.specializes(x, y) == space.specializes(y, x)));
        b.check(
            "topology.hochster-dual",
            "the Hochster dual is an involution reversing specialization",
            reversed && back.point_closures() == space.point_closures(),
            || "dual of the dual differs or specialization is not reversed".into(),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Spectra

/// `{P : E ∉ P}` computed from the members, without the cached supports.
fn supp_by_definition(spec: &Spectrum, e: &Obj) -> PointSet {
    PointSet::from_indices(
        spec.len(),
        (0..spec.len()).filter(|&x| !spec.subcat_at(x).contains_obj(e)),
    )
}

/// `⋂ {supp(T) : S ⊆ supp(T)}` over objects `T`, as a closure oracle. Up to
/// the object cap every subset of indecomposables is tried; beyond it the
/// intersection is taken over `T = Q` for each point `Q`, the largest object
/// with `Q ∉ supp(T)`, which decides membership of `Q`.
struct SupportClosure {
    supports: Vec<PointSet>,
}

impl SupportClosure {
    fn new(spec: &Spectrum) -> Self {
        let n = spec.model().len();
        let supports = if n <= EXHAUSTIVE_OBJECT_INDECS {
            (0..1u64 << n)
                .map(|bits| spec.supp_of_subcat(Subcat::from_bits(bits)))
                .collect()
        } else {
            (0..spec.len())
                .map(|q| spec.supp_of_subcat(spec.subcat_at(q)))
                .collect()
        };
        Self { supports }
    }

    fn closure(&self, s: &PointSet) -> PointSet {
        let mut out = PointSet::full(s.universe());
        for t in &self.supports {
            if s.is_subset(t) {
                out.intersect_with(t);
            }
        }
        out
    }
}

fn closure_samples(spec: &Spectrum, rng: &mut impl Rng) -> Vec<PointSet> {
    let n = spec.len();
    if n <= EXHAUSTIVE_CLOSURE_POINTS {
        return (0..1u64 << n)
            .map(|bits| PointSet::from_indices(n, (0..n).filter(|&x| bits >> x & 1 == 1)))
            .collect();
    }
    let mut out: Vec<PointSet> = (0..n).map(|x| PointSet::singleton(n, x)).collect();
    out.extend((0..SAMPLED_SUBSETS).map(|_| {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        PointSet::from_indices(n, [x, y])
    }));
    out.extend(
        (0..SAMPLED_SUBSETS)
            .map(|_| PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.3)))),
    );
    out
}

pub fn spectrum_laws(b: &mut Battery, spec: &Spectrum, seed: u64) -> Result<()> {
    let model = spec.model();
    let space = spec.space();
    let n = model.len();
    let mut rng = random::rng(seed);

    let basis_closed =
        (0..n).all(|i| space.is_closed(spec.supp_indec(i)) && space.is_open(&spec.ucomp_indec(i)));
    let closures_generated = (0..spec.len()).all(|x| {
        let from_indecs = (0..n)
            .filter(|&i| spec.supp_indec(i).contains(x))
            .fold(space.full_set(), |acc, i| {
                acc.intersection(spec.supp_indec(i))
            });
        from_indecs == *space.point_closure(x)
    });
    b.check(
        "spectrum.closed-basis",
        "supports of objects form a closed basis and their complements an open basis",
        basis_closed && closures_generated,
        || "a support is not closed or a point closure is not cut out by supports".into(),
    );

    let zero_empty = spec.supp(&Obj::zero())?.is_empty();
    for _ in 0..32 {
        let (e, f) = (random_obj(&mut rng, n), random_obj(&mut rng, n));
        let sum = supp_by_definition(spec, &e.direct_sum(&f));
        let ok = zero_empty
            && sum == supp_by_definition(spec, &e).union(&supp_by_definition(spec, &f))
            && spec.supp(&e)? == supp_by_definition(spec, &e);
        b.check(
            "spectrum.support-additive",
            "supp(0) is empty and supp(E ⊕ F) = supp(E) ∪ supp(F)",
            ok,
            || format!("E = {}, F = {}", model.format_obj(&e), model.format_obj(&f)),
        );
    }

    let members_are = |k: Kind| -> Result<bool> {
        for p in spec.family().iter() {
            if !satisfies(model, p, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if members_are(Kind::Thick)? {
        for c in model.conflations() {
            let [l, m, r] = c.terms().map(|o| supp_by_definition(spec, o));
            let ok =
                m.is_subset(&l.union(&r)) && l.is_subset(&m.union(&r)) && r.is_subset(&l.union(&m));
            b.check(
                "spectrum.conflation-thick",
                "over thick subcategories each conflation term's support lies in the union of the other two",
                ok,
                || format!("conflation through {}", model.format_obj(&c.middle)),
            );
        }
    }
    if members_are(Kind::Serre)? {
        for c in model.conflations() {
            let [l, m, r] = c.terms().map(|o| supp_by_definition(spec, o));
            b.check(
                "spectrum.conflation-serre",
                "over Serre subcategories supp(M) = supp(L) ∪ supp(N) for each conflation",
                m == l.union(&r),
                || format!("conflation through {}", model.format_obj(&c.middle)),
            );
        }
    }

    for member in spec.family().iter() {
        let union = member
            .iter()
            .fold(space.empty_set(), |acc, i| acc.union(spec.supp_indec(i)));
        let expected = PointSet::from_indices(
            spec.len(),
            (0..spec.len()).filter(|&x| !member.is_subset(spec.subcat_at(x))),
        );
        b.check(
            "spectrum.member-supports",
            "the supports of a member's objects cover exactly the points not containing it",
            union == expected,
            || format!("member {}", model.format_subcat(member)),
        );
    }

    let oracle = SupportClosure::new(spec);
    for s in closure_samples(spec, &mut rng) {
        b.check(
            "spectrum.closure-formula",
            "the closure of S is the intersection of the supports containing S",
            space.closure(&s) == oracle.closure(&s),
            || format!("S = {}", space.format_set(&s)),
        );
    }

    for x in 0..spec.len() {
        let p = spec.subcat_at(x);
        let below = PointSet::from_indices(
            spec.len(),
            (0..spec.len()).filter(|&y| spec.subcat_at(y).is_subset(p)),
        );
        b.check(
            "spectrum.point-closure-is-subsets",
            "the closure of a point P is the set of points contained in P, so spectra are T0",
            below == *space.point_closure(x) && space.is_t0(),
            || format!("point {}", space.label(x)),
        );
    }

    let sober = spec.sober_report();
    b.check(
        "spectrum.sober-criterion",
        "every irreducible closed Z has P(Z) in the family with Z = cl{P(Z)}, and the spectrum is sober",
        sober.sober && sober.criterion,
        || {
            let bad = sober.entries.iter().find(|e| !(e.in_family && e.closure_matches));
            bad.map_or("space is not sober".into(), |e| format!("Z = {:?}, P(Z) = {}", e.closed_set, e.p_of_z))
        },
    );
    let spectral = spec.spectral_report()?;
    b.check(
        "spectrum.spectral-methods-agree",
        "T0 with sobriety, the ultrafilter criterion and P_U in the family agree, and finite spectra are spectral",
        spectral.agree && spectral.spectral,
        || format!("{spectral:?}"),
    );

    space_laws(b, space)?;
    let taut = Support::tautological(spec);
    support_laws(b, &taut, Some(spec))?;
    let imm = taut.immersion_j(spec)?;
    let identity = imm
        .map
        .as_ref()
        .is_some_and(|m| m.iter().enumerate().all(|(i, &j)| i == j));
    b.check(
        "supports.tautological-identity",
        "the tautological support is compatible with its family and j is the identity homeomorphism",
        imm.compatible && identity && imm.check.homeomorphism,
        || "j on the tautological support is not the identity".into(),
    );
    if spectral.spectral {
        let dual = Support::dual_tautological(spec)?;
        support_laws(b, &dual, Some(spec))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Supports

fn restriction_subsets(space: &FiniteSpace) -> Vec<PointSet> {
    let n = space.len();
    let mut out = vec![space.full_set()];
    for x in 0..n.min(RESTRICTION_POINTS) {
        out.push(space.point_closure(x).clone());
        out.push(space.up(x).clone());
        out.push(PointSet::singleton(n, x).complement());
    }
    out
}

/// Laws of a support; with a spectrum, also the comparison map into it.
pub fn support_laws(b: &mut Battery, support: &Support, spec: Option<&Spectrum>) -> Result<()> {
    let space = support.space();
    let n = space.len();
    let closed = support.is_closed();
    let open = support.is_open();
    let sober = space.is_sober();

    for x in 0..n {
        if closed && sober {
            b.check(
                "supports.point-subcategories",
                "P(x) = S(x) on sober closed supports and P(x) = N(x) on open supports",
                support.p_at(x) == support.s_at(x),
                || format!("closed support, point {}", space.label(x)),
            );
        }
        if open {
            b.check(
                "supports.point-subcategories",
                "P(x) = S(x) on sober closed supports and P(x) = N(x) on open supports",
                support.p_at(x) == support.n_at(x),
                || format!("open support, point {}", space.label(x)),
            );
        }
    }
    if space.is_t0() {
        let ws: Vec<PointSet> = (0..n).map(|x| support.w(x)).collect();
        let distinct = ws.iter().collect::<HashSet<_>>().len() == n;
        b.check(
            "supports.w-separates-points",
            "on a T0 space W_x = W_y only when x = y",
            distinct,
            || "two points share W".into(),
        );
    }

    let realizable: Option<HashSet<PointSet>> = support
        .realizable_sets(LAW_FAMILY_CAP)
        .ok()
        .map(|v| v.into_iter().collect());
    if let Some(real) = &realizable {
        for x in 0..n {
            if closed {
                let cl = space.point_closure(x);
                let fixed = support.f_sigma(support.g_sigma(cl)) == *cl;
                b.check(
                    "supports.closure-realizable",
                    "cl{x} is a value of σ exactly when f g fixes it",
                    fixed == real.contains(cl),
                    || format!("point {}", space.label(x)),
                );
            }
            if open {
                let u = space.point_closure(x).complement();
                let fixed = support.f_sigma(support.g_sigma(&u)) == u;
                b.check(
                    "supports.open-realizable",
                    "X ∖ cl{x} is a value of σ exactly when f g fixes it",
                    fixed == real.contains(&u),
                    || format!("point {}", space.label(x)),
                );
            }
        }
    }

    let order_matches = |f: &dyn Fn(usize, usize) -> bool| {
        (0..n).all(|x| (0..n).all(|y| space.point_closure(y).contains(x) == f(x, y)))
    };
    if closed && sober {
        if let Ok(spcl) = space.specialization_closed_sets(LAW_FAMILY_CAP) {
            if spcl
                .iter()
                .all(|w| support.f_sigma(support.g_sigma(w)) == *w)
            {
                b.check(
                    "supports.specialization-closed",
                    "x ∈ cl{y} iff P(x) ⊆ P(y) when f g is the identity on specialization-closed sets",
                    order_matches(&|x, y| support.p_at(x).is_subset(support.p_at(y))),
                    || "specialization differs from inclusion of P".into(),
                );
            }
        }
    }
    if open {
        if let Ok(opens) = space.open_sets(LAW_FAMILY_CAP) {
            if opens
                .iter()
                .all(|u| support.f_sigma(support.g_sigma(u)) == *u)
            {
                b.check(
                    "supports.specialization-open",
                    "x ∈ cl{y} iff N(x) ⊇ N(y) when f g is the identity on open sets",
                    order_matches(&|x, y| support.n_at(y).is_subset(support.n_at(x))),
                    || "specialization differs from reverse inclusion of N".into(),
                );
            }
        }
    }

    if let Some(spec) = spec {
        if closed {
            let r = support.immersion_j(spec)?;
            if r.compatible {
                b.check(
                    "supports.immersion-j",
                    "j is a morphism of supports, an immersion under the hypotheses, and a homeomorphism iff surjective",
                    r.consistent(),
                    || format!("{r:?}"),
                );
            }
        }
        if open && spec.spectral_report()?.spectral {
            let r = support.immersion_j_dual(spec)?;
            if r.base.compatible {
                b.check(
                    "supports.immersion-j-dual",
                    "on open supports P = N and the dual comparison map is a morphism and, when gated, an immersion",
                    r.consistent(),
                    || format!("{r:?}"),
                );
            }
        }
    }

    let compatible = spec.map(|s| support.is_compatible(s.family()));
    let ambient = match spec {
        Some(s) if closed && compatible == Some(true) => Some((s, support.immersion_j(s)?)),
        _ => None,
    };
    let classifying = closed && support.is_classifying_closed().is_ok_and(|r| r.classifying);
    for u in restriction_subsets(space) {
        if let Some((s, Some(map))) = ambient.as_ref().map(|(s, r)| (*s, r.map.as_ref())) {
            if !u.is_empty() {
                let restricted = support.restrict(&u)?.immersion_j(s)?;
                let agrees = restricted
                    .map
                    .as_ref()
                    .is_some_and(|m| u.iter().zip(m).all(|(x, &j)| map[x] == j));
                let ambient_immersion = ambient
                    .as_ref()
                    .is_some_and(|(_, r)| r.check.injective && r.check.embedding);
                let stays = !(classifying && ambient_immersion)
                    || (restricted.check.injective && restricted.check.embedding);
                b.check(
                    "supports.restriction-immersion",
                    "j of a restricted support is the restriction of j, and stays an immersion when the support is classifying",
                    agrees && stays,
                    || format!("U = {}", space.format_set(&u)),
                );
            }
        }
        let r = support.restriction_report(&u)?;
        let keeps_compat = match (compatible, spec) {
            (Some(true), Some(s)) => support.restrict(&u)?.is_compatible(s.family()),
            _ => true,
        };
        b.check(
            "supports.restriction",
            "restricting to a subspace keeps openness, closedness, bases, compatibility and P",
            r.holds() && keeps_compat,
            || format!("U = {}: {r:?}", space.format_set(&u)),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Group actions

pub fn bridge_laws(b: &mut Battery, bridge: &EquivariantBridge) -> Result<()> {
    let (base, eq, action) = (bridge.base(), bridge.eq(), bridge.action());
    let subs: Vec<Subcat> = if base.len() <= EXHAUSTIVE_CLOSURE_POINTS {
        (0..1u64 << base.len()).map(Subcat::from_bits).collect()
    } else {
        Lattice::new(base).enumerate(Kind::Thick)?.items().to_vec()
    };
    for &s in &subs {
        let ok = action.act(action.identity(), s) == s
            && (0..action.len()).all(|g| {
                (0..action.len()).all(|h| {
                    action.act(g, action.act(h, s)) == action.act(action.multiply(g, h), s)
                })
            });
        b.check(
            "equivariance.action-laws",
            "T_g T_h = T_gh and T_e is the identity on subcategories",
            ok,
            || format!("subcategory {}", base.format_subcat(s)),
        );
    }

    let mut corr_kinds = vec![Kind::As, Kind::Thick];
    if base.flavor() == Flavor::Abelian && eq.flavor() == Flavor::Abelian {
        corr_kinds.push(Kind::Serre);
    }
    for kind in corr_kinds {
        let r = bridge.verify_correspondence(kind)?;
        b.check(
            "equivariance.correspondence",
            "(-)^G and -∩E preserve order and kind and are inverse bijections between invariant and Ind-closed subcategories",
            r.holds,
            || format!("{kind}: {}", r.failures.join("; ")),
        );
    }

    let c = invariant_subcats(base, action, Kind::Thick)?;
    let d = Lattice::new(eq).enumerate(Kind::Thick)?;
    let contained = bridge.family_up_g(&c).is_subfamily_of(&d);
    let transfer = if contained {
        let r = bridge.action_spectrum_check(&c, &d)?;
        r.holds
    } else {
        false
    };
    b.check(
        "equivariance.support-transfer",
        "supports correspond under Ind and Forget and Esp_C(E) ≅ Esp_{C^G}(E^G) immerses into Esp_D(E^G)",
        transfer,
        || "invariant thick spectrum does not transfer".into(),
    );

    let triangulated = [base, eq]
        .iter()
        .all(|m| m.flavor() == Flavor::TriangulatedShiftQuotient);
    if triangulated {
        let r = bridge.g_matsui_check()?;
        if r.eq_thick_ind_closed {
            b.check(
                "equivariance.g-matsui",
                "successors of invariant Matsui primes are invariant and their images are Matsui primes with an immersion",
                r.holds,
                || format!("{r:?}"),
            );
        }
    }
    let abelian = [base, eq].iter().all(|m| m.flavor() == Flavor::Abelian);
    if abelian {
        let r = bridge.g_serre_check()?;
        b.check(
            "equivariance.g-serre",
            "invariant Serre subcategories go to Serre subcategories and immerse into the Serre spectrum",
            r.holds,
            || format!("{r:?}"),
        );
    }
    let monoidal = base.tensor_table().is_some()
        && eq.tensor_table().is_some()
        && bridge.projection_formula_witness()?.is_none();
    if monoidal {
        let r = bridge.equibalmer_check()?;
        b.check(
            "equivariance.g-balmer",
            "invariant prime ideals of E give a spectrum homeomorphic to the Balmer spectrum of E^G",
            r.homeomorphism && r.orbit_intersections_agree,
            || format!("{r:?}"),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Suites

/// The families whose spectra a suite checks: additive, thick, Serre, Matsui
/// primes and, with a tensor, Balmer and nc-primes.
pub fn standard_families(
    model: &CategoryModel,
    limit: usize,
) -> Result<Vec<(&'static str, SubcatFamily)>> {
    let lattice = Lattice::new(model).with_limit(limit);
    let mut out = vec![
        ("as", lattice.enumerate(Kind::As)?),
        ("thick", lattice.enumerate(Kind::Thick)?),
        ("serre", lattice.enumerate(Kind::Serre)?),
        ("matsui", lattice.matsui_primes()?),
    ];
    if model.tensor_table().is_some() {
        out.push(("balmer", lattice.balmer_primes()?));
        out.push(("nc", lattice.nc_primes()?));
    }
    Ok(out)
}

/// Model, lattice and spectrum laws for one model. Spectra over families with
/// more than the point limit are skipped with a note.
pub fn model_battery(
    b: &mut Battery,
    notes: &mut Vec<String>,
    model: &CategoryModel,
    limit: usize,
    seed: u64,
) -> Result<()> {
    model_laws(b, model, seed);
    lattice_laws(b, model, limit, seed)?;
    let context = b.context.clone();
    for (name, family) in standard_families(model, limit)? {
        if family.len() > MAX_POINTS {
            notes.push(format!(
                "{context} {name} spectrum skipped: {} points",
                family.len()
            ));
            continue;
        }
        b.set_context(format!("{context} {name} spectrum").trim().to_string());
        let spec = build_spectrum(model, &family)?;
        spectrum_laws(b, &spec, seed)?;
    }
    b.set_context(context);
    Ok(())
}

pub fn model_suite(model: &CategoryModel, limit: usize, seed: u64) -> Result<SuiteReport> {
    let mut b = Battery::new();
    let mut notes = Vec::new();
    if let Some(w) = crate::lattice::matsui_flavor_warning(model) {
        notes.push(w);
    }
    model_battery(&mut b, &mut notes, model, limit, seed)?;
    let mut report = SuiteReport::from_battery(b, 1, notes);
    report.model_hash = Some(model.hash());
    report.seed = Some(seed);
    Ok(report)
}

/// The battery over `count` seeded random models.
pub fn random_suite(
    seed: u64,
    count: usize,
    config: &RandomConfig,
    limit: usize,
) -> Result<SuiteReport> {
    let mut b = Battery::new();
    let mut notes = Vec::new();
    for (s, model) in random::model_battery(seed, count, config) {
        b.set_context(format!("random model {s}"));
        model_battery(&mut b, &mut notes, &model, limit, s)?;
        b.set_context(format!("random space {s}"));
        space_laws(&mut b, &random::random_space(s, 8))?;
    }
    let mut report = SuiteReport::from_battery(b, count, notes);
    report.seed = Some(seed);
    Ok(report)
}

/// The battery over every shipped fixture: models, spaces, the discrete
/// two-point support and the bridges.
pub fn fixture_suite(limit: usize) -> Result<SuiteReport> {
    let mut b = Battery::new();
    let mut notes = Vec::new();
    let models = fixtures::all_models();
    for (name, model) in &models {
        b.set_context(format!("fixture {name}"));
        model_battery(&mut b, &mut notes, model, limit, 0)?;
    }
    for (name, space) in [
        ("discrete2", fixtures::discrete2()),
        ("sierpinski", fixtures::sierpinski()),
        ("chain3", fixtures::chain3()),
    ] {
        b.set_context(format!("space {name}"));
        space_laws(&mut b, &space)?;
    }
    for model in [fixtures::m_kxk(), fixtures::m_kxk_abelian()] {
        b.set_context("support x2");
        let x2 = fixtures::x2_support(&model);
        let primes = Lattice::new(&model).balmer_primes()?;
        support_laws(&mut b, &x2, Some(&build_spectrum(&model, &primes)?))?;
    }
    for (name, bridge) in fixtures::all_bridges() {
        b.set_context(format!("bridge {name}"));
        bridge_laws(&mut b, &bridge)?;
    }
    Ok(SuiteReport::from_battery(b, models.len(), notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_keeps_first_failure() {
        let mut b = Battery::new();
        b.set_context("ctx");
        b.check("x", "law", true, || unreachable!());
        b.check("x", "law", false, || "first".into());
        b.check("x", "law", false, || "second".into());
        let law = b.law("x").unwrap();
        assert_eq!(law.cases, 3);
        assert_eq!(law.detail.as_deref(), Some("ctx: first"));
        assert!(!b.passed());
    }

    #[test]
    fn a2_suite_passes() {
        let r = model_suite(&fixtures::m_a2(), 20, 0).unwrap();
        let failed: Vec<_> = r.laws.iter().filter(|l| !l.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        for id in [
            "spectrum.point-closure-is-subsets",
            "spectrum.closed-basis",
            "spectrum.sober-criterion",
        ] {
            assert!(r.laws.iter().any(|l| l.id == id && l.cases > 0));
        }
    }

    #[test]
    fn fixture_suite_passes() {
        let r = fixture_suite(20).unwrap();
        let failed: Vec<_> = r.laws.iter().filter(|l| !l.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        for id in [
            "equivariance.g-balmer",
            "equivariance.g-matsui",
            "equivariance.g-serre",
            "supports.immersion-j",
        ] {
            assert!(r.laws.iter().any(|l| l.id == id), "{id} never ran");
        }
    }

    #[test]
    fn small_random_suite_passes() {
        let r = random_suite(11, 10, &RandomConfig::default(), 20).unwrap();
        let failed: Vec<_> = r.laws.iter().filter(|l| !l.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
