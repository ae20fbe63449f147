//! Abstract supports `(X, σ)` on a model and their comparison maps into spectra.
//!
//! `σ` is given on indecomposables and extended to objects by unions, so
//! `σ(0) = ∅` and `σ(E ⊕ F) = σ(E) ∪ σ(F)` hold by construction.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Subcat, SubcatFamily};
use crate::model::{CategoryModel, Obj};
use crate::spectrum::Spectrum;
use crate::topology::{check_map, FiniteSpace, MapCheck, PointSet, SpaceDoc, DEFAULT_FAMILY_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support<'m> {
    model: &'m CategoryModel,
    space: FiniteSpace,
    sigma: Vec<PointSet>,
}

impl<'m> Support<'m> {
    pub fn new(model: &'m CategoryModel, space: FiniteSpace, sigma: Vec<PointSet>) -> Result<Self> {
        if sigma.len() != model.len() {
            return Err(Error::ModelMismatch);
        }
        if sigma.iter().any(|s| s.universe() != space.len()) {
            return Err(Error::InvalidSpace("σ value of wrong size".into()));
        }
        Ok(Self {
            model,
            space,
            sigma,
        })
    }

    /// `(Esp_C, supp_C)`.
    pub fn tautological(spec: &Spectrum<'m>) -> Self {
        Self {
            model: spec.model(),
            space: spec.space().clone(),
            sigma: spec.supp_basis().to_vec(),
        }
    }

    /// `(Esp_C^∨, supp_C)`, an open support when `Esp_C` is spectral.
    pub fn dual_tautological(spec: &Spectrum<'m>) -> Result<Self> {
        Ok(Self {
            model: spec.model(),
            space: spec.space().hochster_dual()?,
            sigma: spec.supp_basis().to_vec(),
        })
    }

    pub fn from_doc(model: &'m CategoryModel, doc: &SupportDoc) -> Result<Self> {
        let space = FiniteSpace::from_doc(&SpaceDoc {
            points: doc.points.clone(),
            closed_sets: doc.closed_sets.clone(),
            open_sets: doc.open_sets.clone(),
        })?;
        let mut sigma = vec![None; model.len()];
        for (name, pts) in &doc.sigma {
            let i = model.index_of(name)?;
            let refs: Vec<&str> = pts.iter().map(String::as_str).collect();
            sigma[i] = Some(space.set(&refs)?);
        }
        let sigma = sigma
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::UnknownLabel(format!("sigma has no entry for {}", model.label(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(model, space, sigma)
    }

    pub fn from_json(model: &'m CategoryModel, text: &str) -> Result<Self> {
        Self::from_doc(model, &serde_json::from_str(text)?)
    }

    pub fn to_doc(&self, cap: usize) -> SupportDoc {
        let space = self.space.to_doc(cap);
        SupportDoc {
            points: space.points,
            closed_sets: space.closed_sets,
            open_sets: None,
            sigma: (0..self.model.len())
                .map(|i| {
                    (
                        self.model.label(i).to_string(),
                        self.space.set_names(&self.sigma[i]),
                    )
                })
                .collect(),
        }
    }

    pub fn model(&self) -> &'m CategoryModel {
        self.model
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn sigma_indec(&self, i: usize) -> &PointSet {
        &self.sigma[i]
    }

    pub fn sigma_values(&self) -> &[PointSet] {
        &self.sigma
    }

    pub fn sigma(&self, e: &Obj) -> Result<PointSet> {
        self.model.check_obj(e)?;
        Ok(self.f_sigma(e.support()))
    }

    /// Every `σ(i)` is closed.
    pub fn is_closed(&self) -> bool {
        self.sigma.iter().all(|s| self.space.is_closed(s))
    }

    /// Every `σ(i)` is open.
    pub fn is_open(&self) -> bool {
        self.sigma.iter().all(|s| self.space.is_open(s))
    }

    /// `f_σ(N) = ⋃_{i ∈ N} σ(i)`.
    pub fn f_sigma(&self, n: Subcat) -> PointSet {
        n.iter()
            .fold(self.space.empty_set(), |acc, i| acc.union(&self.sigma[i]))
    }

    /// `g_σ(S) = {i : σ(i) ⊆ S}`.
    pub fn g_sigma(&self, s: &PointSet) -> Subcat {
        Subcat::from_indices((0..self.model.len()).filter(|&i| self.sigma[i].is_subset(s)))
    }

    /// `W_x = {x' : x ∉ cl{x'}}`.
    pub fn w(&self, x: usize) -> PointSet {
        self.space.up(x).complement()
    }

    /// `P(x) = {i : x ∉ σ(i)}`.
    pub fn p_at(&self, x: usize) -> Subcat {
        Subcat::from_indices((0..self.model.len()).filter(|&i| !self.sigma[i].contains(x)))
    }

    /// `N(x) = g_σ(X ∖ cl{x})`.
    pub fn n_at(&self, x: usize) -> Subcat {
        self.g_sigma(&self.space.point_closure(x).complement())
    }

    /// `S(x) = g_σ(W_x)`.
    pub fn s_at(&self, x: usize) -> Subcat {
        self.g_sigma(&self.w(x))
    }

    pub fn point_subcats(&self, x: usize) -> Result<PointSubcats> {
        if x >= self.space.len() {
            return Err(Error::UnknownPoint(x.to_string()));
        }
        Ok(PointSubcats {
            p: self.p_at(x),
            s: self.s_at(x),
            n: self.n_at(x),
            w: self.w(x),
        })
    }

    /// `C_{X,σ} = {P(x) : x ∈ X}`.
    pub fn point_family(&self) -> SubcatFamily {
        SubcatFamily::new(
            crate::lattice::FamilyKind::Custom,
            (0..self.space.len()).map(|x| self.p_at(x)),
        )
    }

    /// Whether every `P(x)` lies in `c`; otherwise the first offending point.
    pub fn compatibility_witness(&self, c: &SubcatFamily) -> Option<usize> {
        (0..self.space.len()).find(|&x| !c.contains(self.p_at(x)))
    }

    pub fn is_compatible(&self, c: &SubcatFamily) -> bool {
        self.compatibility_witness(c).is_none()
    }

    /// All values `σ(E)`: the closure of `{σ(i)}` under finite unions.
    pub fn realizable_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        let mut seen: HashSet<PointSet> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.space.empty_set());
        queue.push_back(self.space.empty_set());
        while let Some(s) = queue.pop_front() {
            for v in &self.sigma {
                let next = s.union(v);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::Capacity {
                            what: "realizable support values",
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

    /// `{σ(i)}` generates the topology as a closed basis.
    pub fn is_closed_basis(&self) -> bool {
        FiniteSpace::from_closed_basis(self.space.labels().to_vec(), &self.sigma)
            .is_ok_and(|g| g.point_closures() == self.space.point_closures())
    }

    /// `{σ(i)}` generates the topology as an open basis.
    pub fn is_open_basis(&self) -> bool {
        FiniteSpace::from_open_basis(self.space.labels().to_vec(), &self.sigma)
            .is_ok_and(|g| g.point_closures() == self.space.point_closures())
    }

    /// `f_σ g_σ (W_x) = W_x` for every point.
    pub fn fg_identity_on_pm(&self) -> bool {
        (0..self.space.len()).all(|x| {
            let w = self.w(x);
            self.f_sigma(self.g_sigma(&w)) == w
        })
    }

    /// `f_σ g_σ (X ∖ cl{x}) = X ∖ cl{x}` for every point.
    pub fn fg_identity_on_point_complements(&self) -> bool {
        (0..self.space.len()).all(|x| {
            let u = self.space.point_closure(x).complement();
            self.f_sigma(self.g_sigma(&u)) == u
        })
    }

    pub fn is_classifying_closed(&self) -> Result<ClassifyingReport> {
        if !self.is_closed() {
            return Err(Error::SupportNotClosed);
        }
        let realizable: HashSet<PointSet> = self
            .realizable_sets(DEFAULT_FAMILY_CAP)?
            .into_iter()
            .collect();
        let unrealized: Vec<String> = (0..self.space.len())
            .filter(|&x| !realizable.contains(self.space.point_closure(x)))
            .map(|x| self.space.label(x).to_string())
            .collect();
        let sober = self.space.is_sober();
        let classifying = self.space.is_noetherian() && sober && unrealized.is_empty();
        let (basis, all_realized) = if classifying {
            let every = self
                .space
                .closed_sets(DEFAULT_FAMILY_CAP)
                .ok()
                .map(|cs| cs.iter().all(|z| realizable.contains(z)));
            (Some(self.is_closed_basis()), every)
        } else {
            (None, None)
        };
        Ok(ClassifyingReport {
            classifying,
            t0: self.space.is_t0(),
            sober,
            unrealized_points: unrealized,
            basis_generates: basis,
            every_set_realized: all_realized,
        })
    }

    pub fn is_classifying_open(&self) -> Result<ClassifyingReport> {
        if !self.is_open() {
            return Err(Error::SupportNotOpen);
        }
        let realizable: HashSet<PointSet> = self
            .realizable_sets(DEFAULT_FAMILY_CAP)?
            .into_iter()
            .collect();
        let unrealized: Vec<String> = (0..self.space.len())
            .filter(|&x| !realizable.contains(&self.space.point_closure(x).complement()))
            .map(|x| self.space.label(x).to_string())
            .collect();
        let t0 = self.space.is_t0();
        let basis = self.is_open_basis();
        let classifying = t0 && basis && unrealized.is_empty();
        let bijection = classifying.then(|| {
            let points = self.space.len();
            let complements: HashSet<PointSet> = (0..points)
                .map(|x| self.space.point_closure(x).complement())
                .collect();
            let family = self.point_family();
            family.len() == complements.len()
                && family.iter().all(|p| {
                    let f = self.f_sigma(p);
                    complements.contains(&f) && self.g_sigma(&f) == p
                })
        });
        Ok(ClassifyingReport {
            classifying,
            t0,
            sober: self.space.is_sober(),
            unrealized_points: unrealized,
            basis_generates: Some(basis),
            every_set_realized: bijection,
        })
    }

    /// `x ↦ P(x)` into `Esp_C`, for a closed support.
    pub fn immersion_j(&self, spec: &Spectrum) -> Result<ImmersionReport> {
        if !self.is_closed() {
            return Err(Error::SupportNotClosed);
        }
        let hypotheses = self.space.is_noetherian()
            && self.space.is_sober()
            && self.fg_identity_on_pm()
            && self.is_closed_basis();
        self.comparison(spec, spec.space(), hypotheses)
    }

    /// `x ↦ P(x) = N(x)` into the Hochster dual of `Esp_C`, for an open support.
    pub fn immersion_j_dual(&self, spec: &Spectrum) -> Result<DualImmersionReport> {
        if !self.is_open() {
            return Err(Error::SupportNotOpen);
        }
        let spectral = spec.spectral_report()?;
        if !spectral.spectral {
            return Err(Error::NotSpectral);
        }
        let dual = spec.space().hochster_dual()?;
        let hypotheses =
            self.space.is_t0() && self.fg_identity_on_point_complements() && self.is_open_basis();
        let base = self.comparison(spec, &dual, hypotheses)?;
        let p_equals_n = (0..self.space.len()).all(|x| self.p_at(x) == self.n_at(x));

        // Opens are unions of the minimal neighbourhoods ↑x and values of σ are
        // closed under unions, so it suffices that each ↑x is a union of σ(i).
        let every_open_realized = (0..self.space.len()).all(|x| {
            let up = self.space.up(x);
            self.f_sigma(self.g_sigma(up)) == *up
        });
        let part3_gate = self.space.is_spectral() && every_open_realized;
        let induced = match (&base.map, part3_gate) {
            (Some(map), true) => {
                let xd = self.space.hochster_dual()?;
                Some(check_map(&xd, spec.space(), map)?)
            }
            _ => None,
        };
        Ok(DualImmersionReport {
            base,
            p_equals_n,
            every_open_realized,
            induced_immersion_gate: part3_gate,
            induced_immersion: induced,
        })
    }

    fn comparison(
        &self,
        spec: &Spectrum,
        target: &FiniteSpace,
        hypotheses: bool,
    ) -> Result<ImmersionReport> {
        if spec.model() != self.model {
            return Err(Error::ModelMismatch);
        }
        if let Some(x) = self.compatibility_witness(spec.family()) {
            return Ok(ImmersionReport {
                compatible: false,
                incompatible_point: Some(self.space.label(x).to_string()),
                images: BTreeMap::new(),
                map: None,
                support_identity: false,
                check: MapCheck::default(),
                hypotheses,
                homeomorphism_iff_surjective: false,
            });
        }
        let map: Vec<usize> = (0..self.space.len())
            .map(|x| spec.point_of(self.p_at(x)).expect("compatible"))
            .collect();
        let support_identity =
            (0..self.model.len()).all(|i| spec.supp_indec(i).preimage(&map) == self.sigma[i]);
        let check = check_map(&self.space, target, &map)?;
        let images = (0..self.space.len())
            .map(|x| {
                (
                    self.space.label(x).to_string(),
                    self.model.format_subcat(self.p_at(x)),
                )
            })
            .collect();
        Ok(ImmersionReport {
            compatible: true,
            incompatible_point: None,
            images,
            map: Some(map),
            support_identity,
            check,
            hypotheses,
            homeomorphism_iff_surjective: !check.embedding
                || check.homeomorphism == check.surjective,
        })
    }

    /// The support `(U, σ_U)` with `σ_U(i) = σ(i) ∩ U` on the subspace `U`.
    pub fn restrict(&self, u: &PointSet) -> Result<Support<'m>> {
        if u.universe() != self.space.len() {
            return Err(Error::InvalidSpace("subset of wrong size".into()));
        }
        let points: Vec<usize> = u.iter().collect();
        let sigma = self
            .sigma
            .iter()
            .map(|s| {
                PointSet::from_indices(
                    points.len(),
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| s.contains(x))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        Support::new(self.model, self.space.subspace(u), sigma)
    }

    /// Checks what restriction to `u` inherits from this support.
    pub fn restriction_report(&self, u: &PointSet) -> Result<RestrictionReport> {
        let r = self.restrict(u)?;
        let points: Vec<usize> = u.iter().collect();
        let implies = |a: bool, b: bool| !a || b;
        Ok(RestrictionReport {
            points: r.space.len(),
            closed_inherited: implies(self.is_closed(), r.is_closed()),
            open_inherited: implies(self.is_open(), r.is_open()),
            closed_basis_inherited: implies(self.is_closed_basis(), r.is_closed_basis()),
            open_basis_inherited: implies(self.is_open_basis(), r.is_open_basis()),
            point_subcats_agree: points
                .iter()
                .enumerate()
                .all(|(k, &x)| r.p_at(k) == self.p_at(x)),
        })
    }
}

/// Whether `map: src → dst` is continuous with `σ(i) = map⁻¹(τ(i))` for every
/// indecomposable.
pub fn is_morphism_of_supports(map: &[usize], src: &Support, dst: &Support) -> Result<bool> {
    if src.model != dst.model {
        return Err(Error::ModelMismatch);
    }
    let check = check_map(&src.space, &dst.space, map)?;
    Ok(
        check.continuous
            && (0..src.model.len()).all(|i| dst.sigma[i].preimage(map) == src.sigma[i]),
    )
}

/// Support file: a space plus `σ` on every indecomposable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportDoc {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_sets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_sets: Option<Vec<Vec<String>>>,
    pub sigma: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSubcats {
    pub p: Subcat,
    pub s: Subcat,
    pub n: Subcat,
    pub w: PointSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyingReport {
    pub classifying: bool,
    pub t0: bool,
    pub sober: bool,
    /// Points whose closure (closed case) or closure complement (open case)
    /// is not a value of `σ`.
    pub unrealized_points: Vec<String>,
    pub basis_generates: Option<bool>,
    /// Closed case: every closed set is a value of `σ`. Open case: `f_σ` and
    /// `g_σ` are mutually inverse between `C_{X,σ}` and the closure
    /// complements. Evaluated only for classifying supports.
    pub every_set_realized: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImmersionReport {
    pub compatible: bool,
    pub incompatible_point: Option<String>,
    pub images: BTreeMap<String, String>,
    pub map: Option<Vec<usize>>,
    /// `j⁻¹(supp(i)) = σ(i)` for every indecomposable.
    pub support_identity: bool,
    pub check: MapCheck,
    /// The sufficient conditions for `j` to be an immersion hold.
    pub hypotheses: bool,
    /// For an immersion: homeomorphism exactly when surjective.
    pub homeomorphism_iff_surjective: bool,
}

impl ImmersionReport {
    pub fn is_morphism_of_supports(&self) -> bool {
        self.compatible && self.support_identity && self.check.continuous
    }

    /// A compatible support gives a morphism of supports, and the
    /// hypotheses force an immersion.
    pub fn consistent(&self) -> bool {
        self.compatible
            && self.is_morphism_of_supports()
            && (!self.hypotheses || (self.check.injective && self.check.embedding))
            && self.homeomorphism_iff_surjective
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualImmersionReport {
    #[serde(flatten)]
    pub base: ImmersionReport,
    pub p_equals_n: bool,
    pub every_open_realized: bool,
    pub induced_immersion_gate: bool,
    /// `j: X^∨ → Esp_C`, evaluated when the gate holds.
    pub induced_immersion: Option<MapCheck>,
}

impl DualImmersionReport {
    pub fn consistent(&self) -> bool {
        self.base.consistent()
            && self.p_equals_n
            && self.induced_immersion.is_none_or(|c| c.embedding)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub points: usize,
    pub closed_inherited: bool,
    pub open_inherited: bool,
    pub closed_basis_inherited: bool,
    pub open_basis_inherited: bool,
    pub point_subcats_agree: bool,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.closed_inherited
            && self.open_inherited
            && self.closed_basis_inherited
            && self.open_basis_inherited
            && self.point_subcats_agree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::{balmer_primes, enumerate, matsui_primes, FamilyKind, Kind};
    use crate::spectrum::build_spectrum;

    #[test]
    fn f_and_g_on_x2() {
        let m = fixtures::m_kxk();
        let s = fixtures::x2_support(&m);
        let e1 = m.subcat(&["e1"]).unwrap();
        let p = s.space().set(&["p"]).unwrap();
        assert_eq!(s.f_sigma(e1), p);
        assert_eq!(s.g_sigma(&p), e1);
        assert_eq!(s.g_sigma(&s.space().empty_set()), Subcat::empty());
        assert!(s.is_closed() && s.is_open());
    }

    #[test]
    fn point_subcats_on_x2() {
        let m = fixtures::m_kxk();
        let s = fixtures::x2_support(&m);
        let ps = s.point_subcats(s.space().point("p").unwrap()).unwrap();
        let e2 = m.subcat(&["e2"]).unwrap();
        assert_eq!((ps.p, ps.s, ps.n), (e2, e2, e2));
        assert_eq!(ps.w, s.space().set(&["q"]).unwrap());
        assert!(s.point_subcats(7).is_err());
    }

    #[test]
    fn tautological_point_subcats() {
        let m = fixtures::m_mod2();
        let spec = build_spectrum(&m, &enumerate(&m, Kind::Serre).unwrap()).unwrap();
        let t = Support::tautological(&spec);
        for x in 0..spec.len() {
            assert_eq!(t.p_at(x), spec.subcat_at(x));
        }
    }

    #[test]
    fn generic_point_of_full_support() {
        let m = fixtures::m_kxk();
        let space = fixtures::sierpinski();
        let s = Support::new(&m, space.clone(), vec![space.full_set(), space.full_set()]).unwrap();
        assert_eq!(s.p_at(space.point("b").unwrap()), Subcat::empty());
    }

    #[test]
    fn compatibility() {
        let m = fixtures::m_kxk();
        let s = fixtures::x2_support(&m);
        assert!(s.is_compatible(&balmer_primes(&m).unwrap()));
        let only_e1 = SubcatFamily::new(FamilyKind::Custom, [m.subcat(&["e1"]).unwrap()]);
        assert_eq!(s.compatibility_witness(&only_e1), Some(0));
        let a2 = fixtures::m_a2();
        let th = enumerate(&a2, Kind::Thick).unwrap();
        let t = Support::tautological(&build_spectrum(&a2, &th).unwrap());
        assert!(t.is_compatible(&th));
    }

    #[test]
    fn classifying_closed() {
        let m = fixtures::m_kxk();
        let r = fixtures::x2_support(&m).is_classifying_closed().unwrap();
        assert!(r.classifying);
        assert_eq!(r.basis_generates, Some(true));
        assert_eq!(r.every_set_realized, Some(true));

        let d = fixtures::discrete2();
        let flat = Support::new(&m, d.clone(), vec![d.full_set(), d.full_set()]).unwrap();
        let r = flat.is_classifying_closed().unwrap();
        assert!(!r.classifying);
        assert_eq!(r.unrealized_points, ["p", "q"]);

        let a2 = fixtures::m_a2();
        let spec = build_spectrum(&a2, &matsui_primes(&a2).unwrap()).unwrap();
        // Every nonzero indecomposable lies in exactly one prime, so each
        // nonzero support has two points and no point closure is realized.
        let r = Support::tautological(&spec)
            .is_classifying_closed()
            .unwrap();
        assert!(!r.classifying && r.sober);
        assert_eq!(r.unrealized_points.len(), 3);

        let s = fixtures::sierpinski();
        let open_only =
            Support::new(&m, s.clone(), vec![s.set(&["b"]).unwrap(), s.empty_set()]).unwrap();
        assert!(matches!(
            open_only.is_classifying_closed(),
            Err(Error::SupportNotClosed)
        ));
    }

    #[test]
    fn classifying_open() {
        let m = fixtures::m_kxk();
        assert!(
            fixtures::x2_support(&m)
                .is_classifying_open()
                .unwrap()
                .classifying
        );

        let d = fixtures::discrete2();
        let empty = Support::new(&m, d.clone(), vec![d.empty_set(), d.empty_set()]).unwrap();
        let r = empty.is_classifying_open().unwrap();
        assert_eq!(r.basis_generates, Some(false));
        assert!(!r.classifying);

        // On the Sierpinski space X ∖ cl{a} = {b}; σ only realizes ∅ and {a,b}.
        let s = fixtures::sierpinski();
        let coarse = Support::new(&m, s.clone(), vec![s.full_set(), s.empty_set()]).unwrap();
        let r = coarse.is_classifying_open().unwrap();
        assert_eq!(r.unrealized_points, ["a"]);
        let fine = Support::new(&m, s.clone(), vec![s.set(&["b"]).unwrap(), s.full_set()]).unwrap();
        assert!(fine.is_classifying_open().unwrap().classifying);
    }

    #[test]
    fn immersion_j_on_x2() {
        let m = fixtures::m_kxk();
        let x2 = fixtures::x2_support(&m);
        let b = build_spectrum(&m, &balmer_primes(&m).unwrap()).unwrap();
        let r = x2.immersion_j(&b).unwrap();
        assert!(r.consistent() && r.hypotheses && r.check.homeomorphism);
        assert_eq!(r.images["p"], "{e2}");
        assert_eq!(r.images["q"], "{e1}");

        let th = build_spectrum(&m, &enumerate(&m, Kind::Thick).unwrap()).unwrap();
        let r = x2.immersion_j(&th).unwrap();
        assert!(r.consistent() && r.check.embedding && !r.check.surjective);

        let only_e1 = SubcatFamily::new(FamilyKind::Custom, [m.subcat(&["e1"]).unwrap()]);
        let small = build_spectrum(&m, &only_e1).unwrap();
        let r = x2.immersion_j(&small).unwrap();
        assert!(!r.compatible);
        assert_eq!(r.incompatible_point.as_deref(), Some("p"));
    }

    #[test]
    fn tautological_immersion_is_identity() {
        let m = fixtures::m_mod2();
        let spec = build_spectrum(&m, &enumerate(&m, Kind::Serre).unwrap()).unwrap();
        let r = Support::tautological(&spec).immersion_j(&spec).unwrap();
        assert_eq!(r.map, Some((0..spec.len()).collect()));
        assert!(r.check.homeomorphism);
    }

    #[test]
    fn dual_immersion_on_x2() {
        let m = fixtures::m_kxk();
        let x2 = fixtures::x2_support(&m);
        let b = build_spectrum(&m, &balmer_primes(&m).unwrap()).unwrap();
        let r = x2.immersion_j_dual(&b).unwrap();
        assert!(r.consistent() && r.base.check.homeomorphism);
        assert!(r.induced_immersion_gate);
        assert!(r.induced_immersion.unwrap().embedding);
    }

    #[test]
    fn dual_immersion_on_chain() {
        let m = fixtures::m_three();
        let chain = SubcatFamily::new(
            FamilyKind::Custom,
            [
                Subcat::empty(),
                m.subcat(&["x"]).unwrap(),
                m.subcat(&["x", "y"]).unwrap(),
            ],
        );
        let spec = build_spectrum(&m, &chain).unwrap();
        let t = Support::dual_tautological(&spec).unwrap();
        assert!(t.is_open());
        let r = t.immersion_j_dual(&spec).unwrap();
        assert!(r.consistent() && r.base.check.homeomorphism);
        // The dual reverses the chain: ∅ is now the generic point.
        let zero = spec.point_of(Subcat::empty()).unwrap();
        assert!(t.space().point_closure(zero).is_full());
    }

    #[test]
    fn dual_immersion_skips_part3_when_gate_fails() {
        let m = fixtures::m_kxk();
        let s = fixtures::sierpinski();
        let fine = Support::new(&m, s.clone(), vec![s.set(&["b"]).unwrap(), s.full_set()]).unwrap();
        let th = build_spectrum(&m, &enumerate(&m, Kind::Thick).unwrap()).unwrap();
        let r = fine.immersion_j_dual(&th).unwrap();
        assert!(r.base.compatible);
        assert!(r.induced_immersion_gate == r.induced_immersion.is_some());
        let coarse = Support::new(&m, s.clone(), vec![s.full_set(), s.full_set()]).unwrap();
        let r = coarse.immersion_j_dual(&th).unwrap();
        assert!(!r.every_open_realized);
        assert!(!r.induced_immersion_gate && r.induced_immersion.is_none());
    }

    #[test]
    fn restriction() {
        let m = fixtures::m_kxk();
        let x2 = fixtures::x2_support(&m);
        let p = x2.space().set(&["p"]).unwrap();
        let r = x2.restrict(&p).unwrap();
        assert_eq!(r.space().len(), 1);
        assert!(r.sigma_indec(0).is_full() && r.sigma_indec(1).is_empty());
        assert!(x2.restriction_report(&p).unwrap().holds());
        assert_eq!(x2.restrict(&x2.space().full_set()).unwrap(), x2);
        let e = x2.restrict(&x2.space().empty_set()).unwrap();
        assert!(e.space().is_empty() && e.sigma_values().iter().all(PointSet::is_empty));
    }

    #[test]
    fn morphisms_of_supports() {
        let m = fixtures::m_kxk();
        let x2 = fixtures::x2_support(&m);
        assert!(is_morphism_of_supports(&[0, 1], &x2, &x2).unwrap());
        let pt = FiniteSpace::from_closed_basis(vec!["pt".into()], &[]).unwrap();
        let one = Support::new(&m, pt.clone(), vec![pt.full_set(), pt.full_set()]).unwrap();
        assert!(!is_morphism_of_supports(&[0, 0], &x2, &one).unwrap());
    }

    #[test]
    fn doc_roundtrip() {
        let m = fixtures::m_kxk();
        let x2 = fixtures::x2_support(&m);
        let text = serde_json::to_string(&x2.to_doc(64)).unwrap();
        assert_eq!(Support::from_json(&m, &text).unwrap(), x2);
        let missing = r#"{"points":["p"],"closed_sets":[],"sigma":{"e1":["p"]}}"#;
        assert!(Support::from_json(&m, missing).is_err());
    }
}
