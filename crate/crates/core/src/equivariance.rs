//! Finite group actions on models and the passage to an equivariantization.
//!
//! An action permutes the indecomposable labels strictly (`T_g T_h = T_gh` on
//! the nose). The equivariantization `E^G` is not constructed; it is supplied
//! as a second model together with the object maps `Ind: E → E^G` and
//! `Forget: E^G → E`, which is all the subcategory-level statements need.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    matsui_primes, satisfies, successor, FamilyKind, Kind, Lattice, Subcat, SubcatFamily,
};
use crate::model::{CategoryModel, Flavor, ModelDoc, Obj, ObjDoc};
use crate::spectrum::{build_spectrum, inclusion_immersion};
use crate::topology::{check_map, MapCheck};

/// A finite group with a multiplication table, acting on the indecomposables of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Validates the group axioms, that `g ↦ perms[g]` is a homomorphism into
    /// the permutations of the model's labels, and that every `T_g` preserves
    /// the conflation list and the tensor table.
    pub fn new(
        model: &CategoryModel,
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let action = Self {
            elements,
            table,
            identity,
            perms,
        };
        action.validate_group()?;
        action.validate_perms(model)?;
        Ok(action)
    }

    /// The one-element group acting by the identity.
    pub fn trivial(model: &CategoryModel) -> Self {
        Self {
            elements: vec!["e".to_string()],
            table: vec![vec![0]],
            identity: 0,
            perms: vec![(0..model.len()).collect()],
        }
    }

    /// Builds an action from labelled data. Labels missing from a permutation
    /// are fixed; a missing element is allowed only for the identity.
    pub fn from_doc(
        model: &CategoryModel,
        group: &GroupDoc,
        perm: &BTreeMap<String, BTreeMap<String, String>>,
    ) -> Result<Self> {
        let element = |name: &str| {
            group
                .elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::InvalidAction(format!("unknown group element `{name}`")))
        };
        let identity = element(&group.identity)?;
        if group.table.len() != group.elements.len() {
            return Err(Error::InvalidAction(
                "multiplication table has the wrong number of rows".into(),
            ));
        }
        let table = group
            .table
            .iter()
            .map(|row| row.iter().map(|x| element(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        for name in perm.keys() {
            element(name)?;
        }
        let mut perms = Vec::with_capacity(group.elements.len());
        for (g, name) in group.elements.iter().enumerate() {
            let mut p: Vec<usize> = (0..model.len()).collect();
            match perm.get(name) {
                Some(map) => {
                    for (from, to) in map {
                        p[model.index_of(from)?] = model.index_of(to)?;
                    }
                }
                None if g == identity => {}
                None => {
                    return Err(Error::InvalidAction(format!(
                        "no permutation given for `{name}`"
                    )));
                }
            }
            perms.push(p);
        }
        Self::new(model, group.elements.clone(), table, identity, perms)
    }

    fn validate_group(&self) -> Result<()> {
        let n = self.elements.len();
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        if n == 0 {
            return bad("the group has no elements".into());
        }
        if self.identity >= n {
            return bad("identity is not an element".into());
        }
        if self.table.len() != n || self.table.iter().any(|row| row.len() != n) {
            return bad(format!("multiplication table must be {n}×{n}"));
        }
        if self.table.iter().flatten().any(|&x| x >= n) {
            return bad("multiplication table leaves the group".into());
        }
        for g in 0..n {
            if self.table[self.identity][g] != g || self.table[g][self.identity] != g {
                return bad(format!(
                    "`{}` is not fixed by the identity",
                    self.elements[g]
                ));
            }
            if !(0..n).any(|h| self.table[g][h] == self.identity) {
                return bad(format!("`{}` has no inverse", self.elements[g]));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]] {
                        return bad(format!(
                            "multiplication is not associative at ({}, {}, {})",
                            self.elements[g], self.elements[h], self.elements[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_perms(&self, model: &CategoryModel) -> Result<()> {
        let n = model.len();
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        if self.perms.len() != self.elements.len() {
            return bad("one permutation per group element is required".into());
        }
        for (g, p) in self.perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n
                || p.iter()
                    .any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
            {
                return bad(format!(
                    "`{}` does not permute the indecomposables",
                    self.elements[g]
                ));
            }
        }
        if self.perms[self.identity]
            .iter()
            .enumerate()
            .any(|(i, &j)| i != j)
        {
            return bad("the identity must act trivially".into());
        }
        for g in 0..self.len() {
            for h in 0..self.len() {
                let gh = self.table[g][h];
                if (0..n).any(|i| self.perms[gh][i] != self.perms[g][self.perms[h][i]]) {
                    return bad(format!(
                        "T_{} T_{} differs from T_{}",
                        self.elements[g], self.elements[h], self.elements[gh]
                    ));
                }
            }
        }
        let stored = model.conflations();
        for g in 0..self.len() {
            for c in stored {
                let [l, m, r] = c.terms().map(|o| self.act_obj(g, o));
                if !stored
                    .iter()
                    .any(|d| d.left == l && d.middle == m && d.right == r)
                {
                    return bad(format!(
                        "T_{} sends the conflation {} → {} → {} outside the list",
                        self.elements[g],
                        model.format_obj(&c.left),
                        model.format_obj(&c.middle),
                        model.format_obj(&c.right)
                    ));
                }
            }
            if let Some(t) = model.tensor_table() {
                if self.act_obj(g, t.unit()) != *t.unit() {
                    return bad(format!(
                        "T_{} does not fix the tensor unit",
                        self.elements[g]
                    ));
                }
                for a in 0..n {
                    for b in 0..n {
                        let moved = t.product(self.perms[g][a], self.perms[g][b]);
                        if *moved != self.act_obj(g, t.product(a, b)) {
                            return bad(format!(
                                "T_{} does not preserve {} ⊗ {}",
                                self.elements[g],
                                model.label(a),
                                model.label(b)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn multiply(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    /// `T_g(sub)`.
    pub fn act(&self, g: usize, sub: Subcat) -> Subcat {
        Subcat::from_indices(sub.iter().map(|i| self.perms[g][i]))
    }

    pub fn act_obj(&self, g: usize, obj: &Obj) -> Obj {
        Obj::from_counts(obj.summands().map(|(i, m)| (self.perms[g][i], m)))
    }

    /// `T_g(N) ⊆ N` for every `g`; since each `T_g` is a bijection this forces equality.
    pub fn is_invariant(&self, sub: Subcat) -> bool {
        (0..self.len()).all(|g| self.act(g, sub).is_subset(sub))
    }

    /// `⊕_g T_g(a)`, the underlying object of `Ind(a)`.
    pub fn orbit_sum(&self, a: usize) -> Obj {
        Obj::from_indices((0..self.len()).map(|g| self.perms[g][a]))
    }

    /// Keeps the invariant members of `family`.
    pub fn invariant_family(&self, family: &SubcatFamily) -> SubcatFamily {
        SubcatFamily::new(
            family.kind(),
            family.iter().filter(|&s| self.is_invariant(s)),
        )
    }
}

/// `T_g(sub)`.
pub fn act(action: &GroupAction, g: usize, sub: Subcat) -> Subcat {
    action.act(g, sub)
}

/// Invariant members of `enumerate(model, kind)`.
pub fn invariant_subcats(
    model: &CategoryModel,
    action: &GroupAction,
    kind: Kind,
) -> Result<SubcatFamily> {
    let all = Lattice::new(model).enumerate(kind)?;
    let inv = action.invariant_family(&all);
    debug_assert!(inv
        .iter()
        .all(|s| (0..action.len()).all(|g| action.act(g, s) == s)));
    Ok(inv)
}

/// Invariant Matsui primes.
pub fn g_matsui_primes(model: &CategoryModel, action: &GroupAction) -> Result<SubcatFamily> {
    let primes = matsui_primes(model)?;
    Ok(action
        .invariant_family(&primes)
        .with_kind(FamilyKind::GMatsuiPrime))
}

/// Proper invariant tt-ideals `P` such that `I ⊗ J ⊆ P` implies `I ⊆ P` or
/// `J ⊆ P` for invariant tt-ideals `I, J`.
pub fn g_balmer_primes(model: &CategoryModel, action: &GroupAction) -> Result<SubcatFamily> {
    let t = model.require_tensor()?;
    let ideals = invariant_subcats(model, action, Kind::TtIdeal)?;
    let full = model.full();
    let primes = ideals.iter().filter(|&p| {
        p != full
            && ideals.iter().all(|i| {
                ideals.iter().all(|j| {
                    !t.tensor_support(i, j).is_subset(p) || i.is_subset(p) || j.is_subset(p)
                })
            })
    });
    Ok(SubcatFamily::new(
        FamilyKind::GBalmerPrime,
        primes.collect::<Vec<_>>(),
    ))
}

/// Hypotheses of the equivariant setting that the encoding cannot check.
/// They are carried along and echoed in reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct BridgeMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_invertible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent_complete: Option<bool>,
}

/// A base model `E`, a supplied equivariantization `E^G`, the action on `E`
/// and the object maps between them.
#[derive(Clone, Debug)]
pub struct EquivariantBridge {
    base: CategoryModel,
    eq: CategoryModel,
    action: GroupAction,
    ind: Vec<Obj>,
    forget: Vec<Obj>,
    meta: BridgeMeta,
}

impl EquivariantBridge {
    /// Checks `Forget(Ind(a)) = ⊕_g T_g(a)` for every base indecomposable and
    /// that every equivariant indecomposable `j` is a summand of `Ind(b)` for
    /// some summand `b` of `Forget(j)`.
    pub fn new(
        base: CategoryModel,
        eq: CategoryModel,
        action: GroupAction,
        ind: Vec<Obj>,
        forget: Vec<Obj>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidBridge(msg));
        if action.perms.iter().any(|p| p.len() != base.len()) {
            return bad("the action is not on the base model".into());
        }
        if ind.len() != base.len() || forget.len() != eq.len() {
            return bad("ind and forget need one image per indecomposable".into());
        }
        for o in &ind {
            eq.check_obj(o)?;
        }
        for o in &forget {
            base.check_obj(o)?;
        }
        let bridge = Self {
            base,
            eq,
            action,
            ind,
            forget,
            meta: BridgeMeta::default(),
        };
        for a in 0..bridge.base.len() {
            let round = bridge.forget_obj(&bridge.ind[a]);
            let orbit = bridge.action.orbit_sum(a);
            if round != orbit {
                return bad(format!(
                    "forget(ind({})) = {} but the orbit sum is {}",
                    bridge.base.label(a),
                    bridge.base.format_obj(&round),
                    bridge.base.format_obj(&orbit)
                ));
            }
        }
        for j in 0..bridge.eq.len() {
            let covered = bridge.forget[j]
                .summands()
                .any(|(b, _)| bridge.ind[b].multiplicity(j) > 0);
            if !covered {
                return bad(format!(
                    "{} is not a summand of ind of any summand of its underlying object",
                    bridge.eq.label(j)
                ));
            }
        }
        Ok(bridge)
    }

    /// Trivial group, `E^G = E`, both maps the identity.
    pub fn identity(model: &CategoryModel) -> Self {
        let ids: Vec<Obj> = (0..model.len()).map(Obj::indec).collect();
        Self {
            base: model.clone(),
            eq: model.clone(),
            action: GroupAction::trivial(model),
            ind: ids.clone(),
            forget: ids,
            meta: BridgeMeta::default(),
        }
    }

    pub fn with_meta(mut self, meta: BridgeMeta) -> Self {
        self.meta = meta;
        self
    }

    /// Model references given as paths are resolved against `dir`.
    pub fn from_doc(doc: &BridgeDoc, dir: Option<&Path>) -> Result<Self> {
        let base = doc.base_model.load(dir)?;
        let eq = doc.eq_model.load(dir)?;
        let action = GroupAction::from_doc(&base, &doc.group, &doc.perm)?;
        let ind = images(&base, &eq, &doc.ind, "ind")?;
        let forget = images(&eq, &base, &doc.forget, "forget")?;
        Ok(Self::new(base, eq, action, ind, forget)?.with_meta(doc.metadata.clone()))
    }

    pub fn from_json(text: &str, dir: Option<&Path>) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(text)?, dir)
    }

    pub fn base(&self) -> &CategoryModel {
        &self.base
    }

    pub fn eq(&self) -> &CategoryModel {
        &self.eq
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn meta(&self) -> &BridgeMeta {
        &self.meta
    }

    pub fn ind(&self, a: usize) -> &Obj {
        &self.ind[a]
    }

    pub fn forget(&self, j: usize) -> &Obj {
        &self.forget[j]
    }

    pub fn ind_obj(&self, obj: &Obj) -> Obj {
        extend(&self.ind, obj)
    }

    pub fn forget_obj(&self, obj: &Obj) -> Obj {
        extend(&self.forget, obj)
    }

    /// `I^G = {j : Forget(j) ∈ I}`.
    pub fn i_up_g(&self, i: Subcat) -> Subcat {
        Subcat::from_indices((0..self.eq.len()).filter(|&j| self.forget[j].support().is_subset(i)))
    }

    /// `J ∩ E = {a : Ind(a) ∈ J}`.
    pub fn j_cap_e(&self, j: Subcat) -> Subcat {
        Subcat::from_indices((0..self.base.len()).filter(|&a| self.ind[a].support().is_subset(j)))
    }

    /// A member `j` of `J` with `Ind(Forget(j)) ∉ J`, if any.
    pub fn ind_closure_witness(&self, j: Subcat) -> Option<usize> {
        j.iter()
            .find(|&x| !self.ind_obj(&self.forget[x]).support().is_subset(j))
    }

    pub fn is_ind_closed(&self, j: Subcat) -> bool {
        self.ind_closure_witness(j).is_none()
    }

    /// First pair `(a, j)` with `Ind(a ⊗ Forget(j)) ≠ Ind(a) ⊗ j`. This
    /// projection formula is what makes the bridge monoidal.
    pub fn projection_formula_witness(&self) -> Result<Option<(usize, usize)>> {
        let tb = self.base.require_tensor()?;
        let te = self.eq.require_tensor()?;
        for a in 0..self.base.len() {
            for j in 0..self.eq.len() {
                let lhs = self.ind_obj(&tb.tensor(&Obj::indec(a), &self.forget[j]));
                let rhs = te.tensor(&self.ind[a], &Obj::indec(j));
                if lhs != rhs {
                    return Ok(Some((a, j)));
                }
            }
        }
        Ok(None)
    }

    /// `C^G`, tagged as a custom family of the equivariant model.
    pub fn family_up_g(&self, c: &SubcatFamily) -> SubcatFamily {
        SubcatFamily::new(FamilyKind::Custom, c.iter().map(|p| self.i_up_g(p)))
    }

    fn names(
        &self,
        model: &CategoryModel,
        family: impl IntoIterator<Item = Subcat>,
    ) -> Vec<String> {
        family.into_iter().map(|s| model.format_subcat(s)).collect()
    }

    /// Checks the two correspondences between subcategories of `E` and `E^G`
    /// over the full enumerations of `kind` on both sides.
    pub fn verify_correspondence(&self, kind: Kind) -> Result<CorrespondenceReport> {
        if !matches!(kind, Kind::As | Kind::Thick | Kind::Serre) {
            return Err(Error::InvalidBridge(format!(
                "correspondence is checked for as, thick and serre, not {kind}"
            )));
        }
        let (base, eq) = (&self.base, &self.eq);
        let base_all = Lattice::new(base).enumerate(kind)?;
        let eq_all = Lattice::new(eq).enumerate(kind)?;
        let mut failures = Vec::new();

        for i in base_all.iter() {
            let back = self.j_cap_e(self.i_up_g(i));
            if !back.is_subset(i) {
                failures.push(format!("(I^G)∩E ⊄ I for I = {}", base.format_subcat(i)));
            }
            let invariant = self.action.is_invariant(i);
            if invariant != (back == i) {
                failures.push(format!(
                    "invariance of {} disagrees with (I^G)∩E = I",
                    base.format_subcat(i)
                ));
            }
            if !satisfies(eq, self.i_up_g(i), kind)? {
                failures.push(format!(
                    "I^G is not {kind} for I = {}",
                    base.format_subcat(i)
                ));
            }
        }
        for j in eq_all.iter() {
            let back = self.i_up_g(self.j_cap_e(j));
            if !back.is_subset(j) {
                failures.push(format!("(J∩E)^G ⊄ J for J = {}", eq.format_subcat(j)));
            }
            if self.is_ind_closed(j) != (back == j) {
                failures.push(format!(
                    "Ind-closedness of {} disagrees with (J∩E)^G = J",
                    eq.format_subcat(j)
                ));
            }
            if !satisfies(base, self.j_cap_e(j), kind)? {
                failures.push(format!("J∩E is not {kind} for J = {}", eq.format_subcat(j)));
            }
        }
        if kind == Kind::Serre {
            for bits in 0..(1u64 << base.len()) {
                let i = Subcat::from_bits(bits);
                if self.action.is_invariant(i)
                    && satisfies(eq, self.i_up_g(i), kind)?
                    && !satisfies(base, i, kind)?
                {
                    failures.push(format!(
                        "invariant {} is not Serre although I^G is",
                        base.format_subcat(i)
                    ));
                }
            }
        }
        let order_preserving = base_all.iter().all(|a| {
            base_all
                .iter()
                .filter(|&b| a.is_subset(b))
                .all(|b| self.i_up_g(a).is_subset(self.i_up_g(b)))
        }) && eq_all.iter().all(|a| {
            eq_all
                .iter()
                .filter(|&b| a.is_subset(b))
                .all(|b| self.j_cap_e(a).is_subset(self.j_cap_e(b)))
        });
        if !order_preserving {
            failures.push("the correspondences are not order-preserving".into());
        }

        let invariant = self.action.invariant_family(&base_all);
        let ind_closed = SubcatFamily::new(
            eq_all.kind(),
            eq_all.iter().filter(|&j| self.is_ind_closed(j)),
        );
        let image = SubcatFamily::new(eq_all.kind(), invariant.iter().map(|i| self.i_up_g(i)));
        let bijection = image.len() == invariant.len()
            && image.same_members(&ind_closed)
            && invariant.iter().all(|i| self.j_cap_e(self.i_up_g(i)) == i)
            && ind_closed.iter().all(|j| self.i_up_g(self.j_cap_e(j)) == j);
        if !bijection {
            failures.push("invariant and Ind-closed subcategories are not in bijection".into());
        }
        let pairs = invariant
            .iter()
            .map(|i| [base.format_subcat(i), eq.format_subcat(self.i_up_g(i))])
            .collect();
        Ok(CorrespondenceReport {
            kind,
            base_count: base_all.len(),
            eq_count: eq_all.len(),
            invariant: self.names(base, invariant.iter()),
            ind_closed: self.names(eq, ind_closed.iter()),
            pairs,
            bijection,
            order_preserving,
            holds: failures.is_empty(),
            failures,
        })
    }

    /// Compares `Esp_C(E)` with `Esp_{C^G}(E^G)` and immerses the latter into `Esp_D(E^G)`.
    pub fn action_spectrum_check(
        &self,
        c: &SubcatFamily,
        d: &SubcatFamily,
    ) -> Result<ActionSpectrumReport> {
        if let Some(p) = c.iter().find(|&p| !self.action.is_invariant(p)) {
            return Err(Error::NotInvariant(self.base.format_subcat(p)));
        }
        let cg = self.family_up_g(c);
        if let Some(p) = cg.iter().find(|&p| !d.contains(p)) {
            return Err(Error::NotContained(self.eq.format_subcat(p)));
        }
        let spec_c = build_spectrum(&self.base, c)?;
        let spec_cg = build_spectrum(&self.eq, &cg)?;
        let spec_d = build_spectrum(&self.eq, d)?;

        let supp_under_ind = (0..self.base.len()).all(|a| {
            let ind_a = self.ind[a].support();
            c.iter()
                .all(|p| p.contains(a) == ind_a.is_subset(self.i_up_g(p)))
        });
        let supp_under_forget = (0..self.eq.len()).all(|j| {
            let f = self.forget[j].support();
            c.iter()
                .all(|p| self.i_up_g(p).contains(j) == f.is_subset(p))
        });
        let map: Vec<usize> = c
            .iter()
            .map(|p| {
                spec_cg
                    .point_of(self.i_up_g(p))
                    .expect("C^G lists every image")
            })
            .collect();
        let correspondence = check_map(spec_c.space(), spec_cg.space(), &map)?;
        let immersion = inclusion_immersion(&spec_cg, &spec_d)?.check;
        let d_equals_c_g = cg.same_members(d);
        let iff = immersion.homeomorphism == d_equals_c_g;
        Ok(ActionSpectrumReport {
            c: self.names(&self.base, c.iter()),
            c_g: self.names(&self.eq, cg.iter()),
            d: self.names(&self.eq, d.iter()),
            supp_under_ind,
            supp_under_forget,
            correspondence,
            immersion,
            d_equals_c_g,
            homeomorphism_iff_d_equals_c_g: iff,
            holds: supp_under_ind
                && supp_under_forget
                && correspondence.homeomorphism
                && immersion.embedding
                && iff,
        })
    }

    /// Invariant Matsui primes of `E`, their successors, and the immersion into `MSpc(E^G)`.
    pub fn g_matsui_check(&self) -> Result<GMatsuiReport> {
        for m in [&self.base, &self.eq] {
            if m.flavor() != Flavor::TriangulatedShiftQuotient {
                return Err(Error::FlavorMismatch(format!(
                    "invariant Matsui primes need triangulated models, found {}",
                    m.flavor()
                )));
            }
        }
        let thick = Lattice::new(&self.base).enumerate(Kind::Thick)?;
        let primes = g_matsui_primes(&self.base, &self.action)?;
        let successors: Vec<SuccessorEntry> = primes
            .iter()
            .map(|p| {
                let s = successor(&thick, p).expect("Matsui primes have a successor");
                SuccessorEntry {
                    prime: self.base.format_subcat(p),
                    successor: self.base.format_subcat(s),
                    invariant: self.action.is_invariant(s),
                }
            })
            .collect();
        let successors_invariant = successors.iter().all(|e| e.invariant);

        let eq_thick = Lattice::new(&self.eq).enumerate(Kind::Thick)?;
        let witness = eq_thick.iter().find(|&j| !self.is_ind_closed(j));
        let hypothesis = witness.is_none();
        let eq_primes = matsui_primes(&self.eq)?;
        let images_are_matsui = primes.iter().all(|p| eq_primes.contains(self.i_up_g(p)));
        let immersion = if images_are_matsui {
            Some(self.action_spectrum_check(&primes, &eq_primes)?)
        } else {
            None
        };
        let holds = successors_invariant
            && hypothesis
            && images_are_matsui
            && immersion.as_ref().is_some_and(|r| r.holds);
        Ok(GMatsuiReport {
            g_matsui_primes: self.names(&self.base, primes.iter()),
            successors,
            successors_invariant,
            eq_thick_ind_closed: hypothesis,
            not_ind_closed_witness: witness.map(|j| {
                let x = self
                    .ind_closure_witness(j)
                    .expect("witness has a bad member");
                format!(
                    "{} (ind(forget({})) leaves it)",
                    self.eq.format_subcat(j),
                    self.eq.label(x)
                )
            }),
            eq_matsui_primes: self.names(&self.eq, eq_primes.iter()),
            images_are_matsui,
            surjective: immersion.as_ref().map(|r| r.immersion.surjective),
            immersion,
            holds,
        })
    }

    /// Invariant Serre subcategories of `E` immersed into the Serre spectrum of `E^G`.
    pub fn g_serre_check(&self) -> Result<GSerreReport> {
        for m in [&self.base, &self.eq] {
            if m.flavor() != Flavor::Abelian {
                return Err(Error::FlavorMismatch(format!(
                    "Serre transfer needs abelian models, found {}",
                    m.flavor()
                )));
            }
        }
        let c = invariant_subcats(&self.base, &self.action, Kind::Serre)?;
        let d = Lattice::new(&self.eq).enumerate(Kind::Serre)?;
        let images_serre = c.iter().all(|p| d.contains(self.i_up_g(p)));
        let immersion = if images_serre {
            Some(self.action_spectrum_check(&c, &d)?)
        } else {
            None
        };
        Ok(GSerreReport {
            invariant_serre: self.names(&self.base, c.iter()),
            eq_serre: self.names(&self.eq, d.iter()),
            images_serre,
            image: self.names(&self.eq, self.family_up_g(&c).iter()),
            holds: immersion.as_ref().is_some_and(|r| r.holds),
            immersion,
        })
    }

    /// Compares the spectrum of invariant prime ideals of `E` with the Balmer spectrum of `E^G`.
    pub fn equibalmer_check(&self) -> Result<EquiBalmerReport> {
        let c = g_balmer_primes(&self.base, &self.action)?;
        let primes = Lattice::new(&self.base).balmer_primes()?;
        let orbits = SubcatFamily::new(
            FamilyKind::Custom,
            primes.iter().map(|q| {
                (0..self.action.len()).fold(self.base.full(), |acc, g| {
                    acc.intersection(self.action.act(g, q))
                })
            }),
        );
        let d = Lattice::new(&self.eq).balmer_primes()?;
        let cg = self.family_up_g(&c);
        let spectrum = if cg.is_subfamily_of(&d) {
            Some(self.action_spectrum_check(&c, &d)?)
        } else {
            None
        };
        Ok(EquiBalmerReport {
            g_balmer_primes: self.names(&self.base, c.iter()),
            orbit_intersections: self.names(&self.base, orbits.iter()),
            orbit_intersections_agree: orbits.same_members(&c),
            eq_balmer_primes: self.names(&self.eq, d.iter()),
            homeomorphism: spectrum
                .as_ref()
                .is_some_and(|r| r.holds && r.immersion.homeomorphism),
            spectrum,
        })
    }
}

fn extend(images: &[Obj], obj: &Obj) -> Obj {
    obj.summands().fold(Obj::zero(), |acc, (i, m)| {
        (0..m).fold(acc, |acc, _| acc.direct_sum(&images[i]))
    })
}

fn images(
    source: &CategoryModel,
    target: &CategoryModel,
    map: &BTreeMap<String, ObjDoc>,
    what: &str,
) -> Result<Vec<Obj>> {
    let mut out = vec![None; source.len()];
    for (name, doc) in map {
        out[source.index_of(name)?] = Some(target.obj_from_doc(doc)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| {
                Error::InvalidBridge(format!("{what} has no image for {}", source.label(i)))
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub kind: Kind,
    pub base_count: usize,
    pub eq_count: usize,
    pub invariant: Vec<String>,
    pub ind_closed: Vec<String>,
    /// `[I, I^G]` for every invariant `I`.
    pub pairs: Vec<[String; 2]>,
    pub bijection: bool,
    pub order_preserving: bool,
    pub holds: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionSpectrumReport {
    pub c: Vec<String>,
    pub c_g: Vec<String>,
    pub d: Vec<String>,
    /// `I ∈ supp(a) ⇔ I^G ∈ supp(Ind a)` for every base indecomposable `a`.
    pub supp_under_ind: bool,
    /// `I^G ∈ supp(j) ⇔ I ∈ supp(Forget j)` for every equivariant indecomposable `j`.
    pub supp_under_forget: bool,
    /// `Esp_C(E) → Esp_{C^G}(E^G)`, `I ↦ I^G`.
    pub correspondence: MapCheck,
    /// `Esp_{C^G}(E^G) → Esp_D(E^G)`.
    pub immersion: MapCheck,
    pub d_equals_c_g: bool,
    pub homeomorphism_iff_d_equals_c_g: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuccessorEntry {
    pub prime: String,
    pub successor: String,
    pub invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GMatsuiReport {
    pub g_matsui_primes: Vec<String>,
    pub successors: Vec<SuccessorEntry>,
    pub successors_invariant: bool,
    pub eq_thick_ind_closed: bool,
    pub not_ind_closed_witness: Option<String>,
    pub eq_matsui_primes: Vec<String>,
    pub images_are_matsui: bool,
    pub immersion: Option<ActionSpectrumReport>,
    pub surjective: Option<bool>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GSerreReport {
    pub invariant_serre: Vec<String>,
    pub eq_serre: Vec<String>,
    pub images_serre: bool,
    pub image: Vec<String>,
    pub immersion: Option<ActionSpectrumReport>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquiBalmerReport {
    pub g_balmer_primes: Vec<String>,
    /// `⋂_g T_g(Q)` over the Balmer primes `Q` of the base.
    pub orbit_intersections: Vec<String>,
    pub orbit_intersections_agree: bool,
    pub eq_balmer_primes: Vec<String>,
    pub spectrum: Option<ActionSpectrumReport>,
    pub homeomorphism: bool,
}

// ---------------------------------------------------------------------------
// Document form

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    /// `table[g][h]` is the product `gh`.
    pub table: Vec<Vec<String>>,
    pub identity: String,
}

/// A model written inline or a path to a model file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Inline(ModelDoc),
    Path(String),
}

impl ModelRef {
    fn load(&self, dir: Option<&Path>) -> Result<CategoryModel> {
        match self {
            ModelRef::Inline(doc) => CategoryModel::from_doc(doc),
            ModelRef::Path(p) => {
                let path = dir.map_or_else(|| Path::new(p).to_path_buf(), |d| d.join(p));
                CategoryModel::from_json(&std::fs::read_to_string(path)?)
            }
        }
    }
}

/// The on-disk bridge format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgeDoc {
    pub base_model: ModelRef,
    pub eq_model: ModelRef,
    pub group: GroupDoc,
    /// Per group element, a map of moved base labels; unlisted labels are fixed.
    #[serde(default)]
    pub perm: BTreeMap<String, BTreeMap<String, String>>,
    pub ind: BTreeMap<String, ObjDoc>,
    pub forget: BTreeMap<String, ObjDoc>,
    #[serde(default)]
    pub metadata: BridgeMeta,
}
