//! The spectrum `Esp_C(E)` of a family `C` of subcategories.
//!
//! Points are the members of `C`; the closed sets are generated by the
//! supports `supp(i) = {P ∈ C : i ∉ P}` of the indecomposables. Supports of
//! arbitrary objects are unions of these, so the generated topology is the
//! full support topology.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{satisfies, FamilyDoc, FamilyKind, Subcat, SubcatFamily};
use crate::model::{CategoryModel, Obj};
use crate::topology::{check_map, FiniteSpace, MapCheck, PointSet, SpaceDoc, Ultrafilter};

/// Largest family accepted as a point set.
pub const MAX_POINTS: usize = 1 << 13;

#[derive(Clone, Debug)]
pub struct Spectrum<'m> {
    model: &'m CategoryModel,
    family: SubcatFamily,
    space: FiniteSpace,
    supp_basis: Vec<PointSet>,
}

/// Builds `Esp_C(E)`. Members must be subcategories of the model and, unless
/// the family is custom, closed under the family's kind.
pub fn build_spectrum<'m>(model: &'m CategoryModel, family: &SubcatFamily) -> Result<Spectrum<'m>> {
    if family.len() > MAX_POINTS {
        return Err(Error::Capacity {
            what: "spectrum points",
            size: family.len(),
            limit: MAX_POINTS,
        });
    }
    for p in family.iter() {
        if !p.is_subset(model.full()) {
            return Err(Error::NotSubcategory(format!("{p:?}")));
        }
        if let Some(kind) = family.kind().member_kind() {
            if !satisfies(model, p, kind)? {
                return Err(Error::NotSubcategory(format!(
                    "{} ({kind})",
                    model.format_subcat(p)
                )));
            }
        }
    }
    let n = family.len();
    let supp_basis: Vec<PointSet> = (0..model.len())
        .map(|i| {
            PointSet::from_indices(
                n,
                family
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.contains(i))
                    .map(|(k, _)| k),
            )
        })
        .collect();
    let labels = family.iter().map(|p| model.format_subcat(p)).collect();
    let space = FiniteSpace::from_closed_basis(labels, &supp_basis)?;
    Ok(Spectrum {
        model,
        family: family.clone(),
        space,
        supp_basis,
    })
}

impl<'m> Spectrum<'m> {
    pub fn model(&self) -> &'m CategoryModel {
        self.model
    }

    pub fn family(&self) -> &SubcatFamily {
        &self.family
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    /// The subcategory at point `x`.
    pub fn subcat_at(&self, x: usize) -> Subcat {
        self.family.items()[x]
    }

    pub fn point_of(&self, p: Subcat) -> Option<usize> {
        self.family.index_of(p)
    }

    /// `supp(i)` for each indecomposable `i`.
    pub fn supp_basis(&self) -> &[PointSet] {
        &self.supp_basis
    }

    pub fn supp_indec(&self, i: usize) -> &PointSet {
        &self.supp_basis[i]
    }

    pub fn supp(&self, e: &Obj) -> Result<PointSet> {
        self.model.check_obj(e)?;
        Ok(self.supp_of_subcat(e.support()))
    }

    /// `⋃_{i ∈ s} supp(i)`, which equals `{P : s ⊄ P}`.
    pub fn supp_of_subcat(&self, s: Subcat) -> PointSet {
        s.iter().fold(self.space.empty_set(), |acc, i| {
            acc.union(&self.supp_basis[i])
        })
    }

    /// `U(E)`, the complement of `supp(E)`.
    pub fn ucomp(&self, e: &Obj) -> Result<PointSet> {
        Ok(self.supp(e)?.complement())
    }

    pub fn ucomp_indec(&self, i: usize) -> PointSet {
        self.supp_basis[i].complement()
    }

    /// `Z(X)`: the intersection of the supports of the listed objects.
    pub fn zset(&self, objs: &[Obj]) -> Result<PointSet> {
        objs.iter().try_fold(self.space.full_set(), |acc, e| {
            Ok(acc.intersection(&self.supp(e)?))
        })
    }

    /// The open basis `{U(i)}` of the support topology.
    pub fn open_basis(&self) -> Vec<PointSet> {
        (0..self.model.len()).map(|i| self.ucomp_indec(i)).collect()
    }

    /// `P(Z) = {i : U(i) ∩ Z ≠ ∅}` for a nonempty irreducible closed `Z`.
    pub fn p_of_z(&self, z: &PointSet) -> Result<Subcat> {
        if !self.space.is_closed(z) {
            return Err(Error::NotClosedSet);
        }
        if !self.space.is_irreducible(z) {
            return Err(Error::Reducible);
        }
        Ok(self.p_of_set(z))
    }

    fn p_of_set(&self, z: &PointSet) -> Subcat {
        Subcat::from_indices((0..self.model.len()).filter(|&i| !self.ucomp_indec(i).is_disjoint(z)))
    }

    /// `P_U = {i : U(i) ∈ U}`.
    pub fn p_of_ultrafilter(&self, u: &Ultrafilter) -> Subcat {
        Subcat::from_indices((0..self.model.len()).filter(|&i| u.contains(&self.ucomp_indec(i))))
    }

    pub fn sober_report(&self) -> SoberReport {
        let mut entries = Vec::new();
        for z in self.space.irreducible_closed_sets() {
            let p = self.p_of_set(&z);
            let point = self.point_of(p);
            let closure_matches = point.is_some_and(|x| *self.space.point_closure(x) == z);
            let generic: Vec<String> = self
                .space
                .generic_points(&z)
                .into_iter()
                .map(|x| self.space.label(x).to_string())
                .collect();
            entries.push(SoberEntry {
                closed_set: self.space.set_names(&z),
                p_of_z: self.model.format_subcat(p),
                in_family: point.is_some(),
                closure_matches,
                generic_points: generic,
            });
        }
        let criterion = entries.iter().all(|e| e.in_family && e.closure_matches);
        let space_sober = self.space.is_sober();
        SoberReport {
            sober: space_sober && criterion,
            space_sober,
            criterion,
            entries,
        }
    }

    /// Spectrality by three routes: T0 and sober, the ultrafilter criterion on
    /// the basis `{U(i)}`, and `P_U ∈ C` for every ultrafilter.
    pub fn spectral_report(&self) -> Result<SpectralReport> {
        let t0 = self.space.is_t0();
        let sober = self.space.is_sober();
        let fin = self.space.finocchiaro_check(&self.open_basis())?;
        let mut missing = Vec::new();
        for x in 0..self.len() {
            let p = self.p_of_ultrafilter(&Ultrafilter::principal(x));
            if self.point_of(p).is_none() {
                missing.push(self.model.format_subcat(p));
            }
        }
        let by_topology = t0 && sober;
        let by_finocchiaro = t0 && fin.holds;
        let by_ultrafilter_points = t0 && missing.is_empty();
        Ok(SpectralReport {
            t0,
            sober,
            by_topology,
            by_finocchiaro,
            by_ultrafilter_points,
            agree: by_topology == by_finocchiaro && by_finocchiaro == by_ultrafilter_points,
            spectral: by_topology,
            ultrafilter_points_outside_family: missing,
        })
    }

    pub fn to_doc(&self, cap: usize) -> SpectrumDoc {
        let supp = (0..self.model.len())
            .map(|i| {
                (
                    self.model.label(i).to_string(),
                    self.space.set_names(&self.supp_basis[i]),
                )
            })
            .collect();
        SpectrumDoc {
            family: self.family.to_doc(self.model),
            space: self.space.to_doc(cap),
            supp,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumDoc {
    pub family: FamilyDoc,
    pub space: SpaceDoc,
    pub supp: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoberEntry {
    pub closed_set: Vec<String>,
    pub p_of_z: String,
    pub in_family: bool,
    pub closure_matches: bool,
    pub generic_points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoberReport {
    pub sober: bool,
    /// Soberness of the underlying space, tested directly.
    pub space_sober: bool,
    /// `P(Z) ∈ C` and `Z = cl{P(Z)}` for every irreducible closed `Z`.
    pub criterion: bool,
    pub entries: Vec<SoberEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub t0: bool,
    pub sober: bool,
    pub by_topology: bool,
    pub by_finocchiaro: bool,
    pub by_ultrafilter_points: bool,
    pub agree: bool,
    pub spectral: bool,
    pub ultrafilter_points_outside_family: Vec<String>,
}

/// A point map between spectra together with its properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumMap {
    /// Image index of each source point.
    pub map: Vec<usize>,
    pub check: MapCheck,
}

/// The identity-on-points map `Esp_C1(E) → Esp_C2(E)` for `C1 ⊆ C2`.
pub fn inclusion_immersion(spec1: &Spectrum, spec2: &Spectrum) -> Result<SpectrumMap> {
    if spec1.model != spec2.model {
        return Err(Error::ModelMismatch);
    }
    let map = spec1
        .family
        .iter()
        .map(|p| {
            spec2
                .point_of(p)
                .ok_or_else(|| Error::NotContained(spec1.model.format_subcat(p)))
        })
        .collect::<Result<Vec<_>>>()?;
    let check = check_map(&spec1.space, &spec2.space, &map)?;
    Ok(SpectrumMap { map, check })
}

/// An additive functor `F: source → target` given on indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorMap<'a> {
    pub source: &'a CategoryModel,
    pub target: &'a CategoryModel,
    pub images: Vec<Obj>,
    /// Declared to be an equivalence up to direct summands.
    pub declared_equivalence: bool,
}

impl<'a> FunctorMap<'a> {
    /// `images` maps each source label to the target labels of its image.
    pub fn from_names(
        source: &'a CategoryModel,
        target: &'a CategoryModel,
        images: &[(&str, &[&str])],
        declared_equivalence: bool,
    ) -> Result<Self> {
        let mut objs = vec![None; source.len()];
        for (name, image) in images {
            objs[source.index_of(name)?] = Some(target.obj(image)?);
        }
        let images = objs
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| Error::UnknownLabel(format!("no image for {}", source.label(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source,
            target,
            images,
            declared_equivalence,
        })
    }

    pub fn identity(model: &'a CategoryModel) -> Self {
        Self {
            source: model,
            target: model,
            images: (0..model.len()).map(Obj::indec).collect(),
            declared_equivalence: true,
        }
    }

    /// `F⁻¹P = {i : F(i) ∈ P}`.
    pub fn preimage(&self, p: Subcat) -> Subcat {
        Subcat::from_indices(
            (0..self.source.len()).filter(|&i| self.images[i].support().is_subset(p)),
        )
    }

    fn image_support(&self, s: Subcat) -> Subcat {
        s.iter().fold(Subcat::empty(), |acc, i| {
            acc.union(self.images[i].support())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    /// The family `F⁻¹D` over the source model.
    pub preimage_family: FamilyDoc,
    pub map: Vec<usize>,
    pub check: MapCheck,
    /// `(Esp F)⁻¹(U(M)) = U(F(M))` for every source indecomposable `M`.
    pub support_identity: bool,
    pub declared_equivalence: bool,
    /// Bijective and a homeomorphism; only evaluated for declared equivalences.
    pub equivalence_confirmed: Option<bool>,
}

/// `Esp F: Esp_D(target) → Esp_{F⁻¹D}(source)`, `P ↦ F⁻¹P`.
pub fn esp_functor_map(target_spec: &Spectrum, functor: &FunctorMap) -> Result<FunctorReport> {
    if target_spec.model != functor.target {
        return Err(Error::ModelMismatch);
    }
    for img in &functor.images {
        functor.target.check_obj(img)?;
    }
    let pre = SubcatFamily::new(
        FamilyKind::Custom,
        target_spec.family.iter().map(|p| functor.preimage(p)),
    );
    let source_spec = build_spectrum(functor.source, &pre)?;
    let map: Vec<usize> = target_spec
        .family
        .iter()
        .map(|p| {
            source_spec
                .point_of(functor.preimage(p))
                .expect("preimage listed")
        })
        .collect();
    let check = check_map(&target_spec.space, &source_spec.space, &map)?;
    let support_identity = (0..functor.source.len()).all(|m| {
        let lhs = source_spec.ucomp_indec(m).preimage(&map);
        let rhs = target_spec
            .supp_of_subcat(functor.image_support(Subcat::from_indices([m])))
            .complement();
        lhs == rhs
    });
    let equivalence_confirmed = functor
        .declared_equivalence
        .then_some(check.homeomorphism && check.injective && check.surjective);
    Ok(FunctorReport {
        preimage_family: pre.to_doc(functor.source),
        map,
        check,
        support_identity,
        declared_equivalence: functor.declared_equivalence,
        equivalence_confirmed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::{balmer_primes, enumerate, matsui_primes, Kind};

    fn names(space: &FiniteSpace, sets: &[PointSet]) -> Vec<String> {
        sets.iter().map(|s| space.format_set(s)).collect()
    }

    #[test]
    fn a2_matsui_spectrum_is_discrete() {
        let m = fixtures::m_a2();
        let s = build_spectrum(&m, &matsui_primes(&m).unwrap()).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.space().closed_sets(64).unwrap().len(), 8);
        let x = m.indec("x").unwrap();
        assert_eq!(s.space().format_set(&s.supp(&x).unwrap()), "{{y},{z}}");
        let z = s.zset(&[x, m.indec("y").unwrap()]).unwrap();
        assert_eq!(s.space().format_set(&z), "{{z}}");
        let zx = s.space().set(&["{x}"]).unwrap();
        assert_eq!(s.p_of_z(&zx).unwrap(), m.subcat(&["x"]).unwrap());
    }

    #[test]
    fn mod2_serre_spectrum() {
        let m = fixtures::m_mod2();
        let s = build_spectrum(&m, &enumerate(&m, Kind::Serre).unwrap()).unwrap();
        let sp = s.space();
        assert_eq!(
            names(sp, &sp.closed_sets(64).unwrap()),
            [
                "{}",
                "{{}}",
                "{{},{s1}}",
                "{{},{s1},{s1,s2,m},{s2}}",
                "{{},{s1},{s2}}",
                "{{},{s2}}",
            ]
        );
        let mid = m.indec("m").unwrap();
        assert_eq!(sp.format_set(&s.supp(&mid).unwrap()), "{{},{s1},{s2}}");
        assert!(s.supp(&Obj::zero()).unwrap().is_empty());
        assert_eq!(s.p_of_z(&sp.full_set()).unwrap(), m.full());
        let p1 = m.subcat(&["s1"]).unwrap();
        let u = Ultrafilter::principal(s.point_of(p1).unwrap());
        assert_eq!(s.p_of_ultrafilter(&u), p1);
        assert!(s.sober_report().sober);
        let r = s.spectral_report().unwrap();
        assert!(r.spectral && r.agree);
    }

    #[test]
    fn empty_family_gives_empty_space() {
        let m = fixtures::m_a2();
        let s = build_spectrum(&m, &SubcatFamily::new(FamilyKind::Custom, [])).unwrap();
        assert!(s.is_empty());
        assert!(s.supp(&m.indec("x").unwrap()).unwrap().is_empty());
        assert!(s.spectral_report().unwrap().spectral);
    }

    #[test]
    fn non_members_are_rejected() {
        let m = fixtures::m_a2();
        let bad = SubcatFamily::new(FamilyKind::Thick, [m.subcat(&["x", "y"]).unwrap()]);
        assert!(matches!(
            build_spectrum(&m, &bad),
            Err(Error::NotSubcategory(_))
        ));
        let custom = bad.clone().with_kind(FamilyKind::Custom);
        assert!(build_spectrum(&m, &custom).is_ok());
    }

    #[test]
    fn zero_point_ultrafilter() {
        let m = fixtures::m_a2();
        let s = build_spectrum(&m, &enumerate(&m, Kind::Thick).unwrap()).unwrap();
        let x = s.point_of(Subcat::empty()).unwrap();
        assert_eq!(
            s.p_of_ultrafilter(&Ultrafilter::principal(x)),
            Subcat::empty()
        );
    }

    #[test]
    fn spectra_of_examples_are_spectral() {
        let a2 = fixtures::m_a2();
        let th = build_spectrum(&a2, &enumerate(&a2, Kind::Thick).unwrap()).unwrap();
        assert!(th.sober_report().sober);
        assert!(th.spectral_report().unwrap().spectral);
        let kxk = fixtures::m_kxk();
        let b = build_spectrum(&kxk, &balmer_primes(&kxk).unwrap()).unwrap();
        let r = b.spectral_report().unwrap();
        assert!(r.spectral && r.agree);
        let e1 = kxk.subcat(&["e1"]).unwrap();
        let u = Ultrafilter::principal(b.point_of(e1).unwrap());
        assert_eq!(b.p_of_ultrafilter(&u), e1);
    }

    #[test]
    fn inclusion_immersions() {
        let m = fixtures::m_a2();
        let primes = build_spectrum(&m, &matsui_primes(&m).unwrap()).unwrap();
        let th = build_spectrum(&m, &enumerate(&m, Kind::Thick).unwrap()).unwrap();
        let r = inclusion_immersion(&primes, &th).unwrap();
        assert!(r.check.embedding && !r.check.surjective);
        let same = inclusion_immersion(&th, &th).unwrap();
        assert!(same.check.homeomorphism);
        assert!(matches!(
            inclusion_immersion(&th, &primes),
            Err(Error::NotContained(_))
        ));

        let k = fixtures::m_kxk();
        let b = build_spectrum(&k, &balmer_primes(&k).unwrap()).unwrap();
        let t = build_spectrum(&k, &enumerate(&k, Kind::Thick).unwrap()).unwrap();
        assert!(inclusion_immersion(&b, &t).unwrap().check.embedding);
    }

    #[test]
    fn functor_maps() {
        let k = fixtures::m_kxk();
        let th = build_spectrum(&k, &enumerate(&k, Kind::Thick).unwrap()).unwrap();
        let id = esp_functor_map(&th, &FunctorMap::identity(&k)).unwrap();
        assert_eq!(id.map, [0, 1, 2, 3]);
        assert_eq!(id.equivalence_confirmed, Some(true));
        assert!(id.support_identity);

        let single = fixtures::m_k();
        let incl = FunctorMap::from_names(&single, &k, &[("v", &["e1", "e2"])], true).unwrap();
        let r = esp_functor_map(&th, &incl).unwrap();
        assert_eq!(r.equivalence_confirmed, Some(false));
        assert!(!r.check.injective);
        assert!(r.support_identity && r.check.continuous);

        let b = build_spectrum(&k, &balmer_primes(&k).unwrap()).unwrap();
        let swap =
            FunctorMap::from_names(&k, &k, &[("e1", &["e2"]), ("e2", &["e1"])], true).unwrap();
        let r = esp_functor_map(&b, &swap).unwrap();
        assert_eq!(r.map, [1, 0]);
        assert_eq!(r.equivalence_confirmed, Some(true));
    }
}
