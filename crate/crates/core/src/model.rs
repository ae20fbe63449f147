//! Finite presentations of extriangulated categories.
//!
//! A model lists its indecomposable objects by name; every object is a finite
//! multiset of indecomposables (Krull–Schmidt). Conflations are stored as
//! triples of objects, split conflations are implicit, and an optional tensor
//! table gives the product of every ordered pair of indecomposables.

use std::cell::Cell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice::Subcat;

/// Hard ceiling imposed by the `u64` member-set encoding of subcategories.
pub const MAX_INDECS: usize = 64;

/// An object: a finite multiset of indecomposables, keyed by index.
/// The empty multiset is the zero object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj {
    summands: BTreeMap<usize, u32>,
}

impl Obj {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn indec(i: usize) -> Self {
        Self::from_counts([(i, 1)])
    }

    /// Builds an object from `(index, multiplicity)` pairs; zero multiplicities are dropped
    /// and repeated indices accumulate.
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut summands = BTreeMap::new();
        for (i, m) in counts {
            if m > 0 {
                *summands.entry(i).or_insert(0) += m;
            }
        }
        Self { summands }
    }

    /// One summand per listed index (repeats raise the multiplicity).
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self::from_counts(indices.into_iter().map(|i| (i, 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiplicity(&self, i: usize) -> u32 {
        self.summands.get(&i).copied().unwrap_or(0)
    }

    pub fn summands(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.summands.iter().map(|(&i, &m)| (i, m))
    }

    /// The set of indecomposables occurring with positive multiplicity.
    pub fn support(&self) -> Subcat {
        Subcat::from_indices(self.summands.keys().copied())
    }

    /// Multiset union.
    pub fn direct_sum(&self, other: &Obj) -> Obj {
        let mut out = self.clone();
        for (i, m) in other.summands() {
            *out.summands.entry(i).or_insert(0) += m;
        }
        out
    }

    fn scaled(&self, k: u32) -> Obj {
        Obj::from_counts(self.summands().map(|(i, m)| (i, m * k)))
    }

    fn max_index(&self) -> Option<usize> {
        self.summands.keys().next_back().copied()
    }
}

/// A conflation `left → middle → right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conflation {
    pub left: Obj,
    pub middle: Obj,
    pub right: Obj,
}

impl Conflation {
    pub fn new(left: Obj, middle: Obj, right: Obj) -> Self {
        Self {
            left,
            middle,
            right,
        }
    }

    /// `(M, N, L)` and `(N, L, M)`.
    pub fn rotations(&self) -> [Conflation; 2] {
        [
            Conflation::new(self.middle.clone(), self.right.clone(), self.left.clone()),
            Conflation::new(self.right.clone(), self.left.clone(), self.middle.clone()),
        ]
    }

    pub fn terms(&self) -> [&Obj; 3] {
        [&self.left, &self.middle, &self.right]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    #[default]
    Extriangulated,
    TriangulatedShiftQuotient,
    Abelian,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Extriangulated => "extriangulated",
            Flavor::TriangulatedShiftQuotient => "triangulated-shift-quotient",
            Flavor::Abelian => "abelian",
        })
    }
}

/// Products of indecomposables, extended bilinearly to objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTable {
    n: usize,
    products: Vec<Obj>,
    product_supports: Vec<Subcat>,
    unit: Obj,
    commutative: bool,
}

impl TensorTable {
    pub fn product(&self, a: usize, b: usize) -> &Obj {
        &self.products[a * self.n + b]
    }

    /// Support of `a ⊗ b` for indecomposables `a`, `b`.
    pub fn product_support(&self, a: usize, b: usize) -> Subcat {
        self.product_supports[a * self.n + b]
    }

    pub fn unit(&self) -> &Obj {
        &self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn tensor(&self, a: &Obj, b: &Obj) -> Obj {
        let mut out = Obj::zero();
        for (i, mi) in a.summands() {
            for (j, mj) in b.summands() {
                out = out.direct_sum(&self.product(i, j).scaled(mi * mj));
            }
        }
        out
    }

    /// Support of `A ⊗ B` computed from the supports of `A` and `B` alone.
    pub fn tensor_support(&self, a: Subcat, b: Subcat) -> Subcat {
        let mut out = Subcat::empty();
        for i in a.iter() {
            for j in b.iter() {
                out = out.union(self.product_support(i, j));
            }
        }
        out
    }
}

/// A validated finite category model. Immutable once built.
#[derive(Clone, Debug)]
pub struct CategoryModel {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    conflations: Vec<Conflation>,
    tensor: Option<TensorTable>,
    flavor: Flavor,
}

impl PartialEq for CategoryModel {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.conflations == other.conflations
            && self.tensor == other.tensor
            && self.flavor == other.flavor
    }
}

impl Eq for CategoryModel {}

impl CategoryModel {
    /// Validates `doc` and builds the model; all violations are returned together.
    pub fn from_doc(doc: &ModelDoc) -> Result<Self> {
        let (model, report) = resolve(doc);
        match model {
            Some(model) if report.is_valid() => Ok(model),
            _ => Err(Error::InvalidModel(report)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn conflations(&self) -> &[Conflation] {
        &self.conflations
    }

    pub fn tensor_table(&self) -> Option<&TensorTable> {
        self.tensor.as_ref()
    }

    pub fn require_tensor(&self) -> Result<&TensorTable> {
        self.tensor.as_ref().ok_or(Error::MissingTensor)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// The subcategory containing every indecomposable.
    pub fn full(&self) -> Subcat {
        Subcat::full(self.len())
    }

    pub fn indec(&self, name: &str) -> Result<Obj> {
        Ok(Obj::indec(self.index_of(name)?))
    }

    /// Object from a list of names; repeated names raise multiplicities.
    pub fn obj(&self, names: &[&str]) -> Result<Obj> {
        names
            .iter()
            .map(|n| self.index_of(n))
            .collect::<Result<Vec<_>>>()
            .map(Obj::from_indices)
    }

    pub fn obj_from_doc(&self, doc: &ObjDoc) -> Result<Obj> {
        doc.entries()
            .into_iter()
            .map(|(n, m)| Ok((self.index_of(n)?, m)))
            .collect::<Result<Vec<_>>>()
            .map(Obj::from_counts)
    }

    pub fn subcat(&self, names: &[&str]) -> Result<Subcat> {
        names
            .iter()
            .map(|n| self.index_of(n))
            .collect::<Result<Vec<_>>>()
            .map(Subcat::from_indices)
    }

    /// Fails with [`Error::ModelMismatch`] if `obj` mentions an index outside this model.
    pub fn check_obj(&self, obj: &Obj) -> Result<()> {
        match obj.max_index() {
            Some(i) if i >= self.len() => Err(Error::ModelMismatch),
            _ => Ok(()),
        }
    }

    pub fn check_subcat(&self, sub: Subcat) -> Result<()> {
        if sub.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    pub fn direct_sum(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        self.check_obj(a)?;
        self.check_obj(b)?;
        Ok(a.direct_sum(b))
    }

    pub fn tensor(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        let table = self.require_tensor()?;
        self.check_obj(a)?;
        self.check_obj(b)?;
        Ok(table.tensor(a, b))
    }

    /// Member names of `sub`, in declaration order.
    pub fn member_names(&self, sub: Subcat) -> Vec<String> {
        sub.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,b}` style rendering of a subcategory.
    pub fn format_subcat(&self, sub: Subcat) -> String {
        format!("{{{}}}", self.member_names(sub).join(","))
    }

    pub fn format_obj(&self, obj: &Obj) -> String {
        if obj.is_zero() {
            return "0".to_string();
        }
        obj.summands()
            .map(|(i, m)| {
                if m == 1 {
                    self.labels[i].clone()
                } else {
                    format!("{}^{}", self.labels[i], m)
                }
            })
            .collect::<Vec<_>>()
            .join("⊕")
    }

    /// Canonical document form (summands listed in declaration order, repeated by multiplicity).
    pub fn to_doc(&self) -> ModelDoc {
        let obj_doc = |o: &Obj| {
            ObjDoc::List(
                o.summands()
                    .flat_map(|(i, m)| std::iter::repeat_n(self.labels[i].clone(), m as usize))
                    .collect(),
            )
        };
        ModelDoc {
            indecs: self.labels.clone(),
            conflations: self
                .conflations
                .iter()
                .map(|c| [obj_doc(&c.left), obj_doc(&c.middle), obj_doc(&c.right)])
                .collect(),
            tensor: self.tensor.as_ref().map(|t| TensorDoc {
                unit: obj_doc(&t.unit),
                table: (0..self.len())
                    .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
                    .map(|(a, b)| TensorEntryDoc {
                        left: self.labels[a].clone(),
                        right: self.labels[b].clone(),
                        result: obj_doc(t.product(a, b)),
                    })
                    .collect(),
            }),
            flavor: self.flavor,
            commutative: self.tensor.as_ref().map(|t| t.commutative),
        }
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(&self.to_doc()).expect("model serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

// ---------------------------------------------------------------------------
// Document form and validation

/// An object in a model file: either a list of names (repeats allowed) or a
/// `{name: multiplicity}` map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjDoc {
    List(Vec<String>),
    Counts(BTreeMap<String, u32>),
}

impl ObjDoc {
    fn entries(&self) -> Vec<(&str, u32)> {
        match self {
            ObjDoc::List(names) => names.iter().map(|n| (n.as_str(), 1)).collect(),
            ObjDoc::Counts(map) => map.iter().map(|(n, &m)| (n.as_str(), m)).collect(),
        }
    }
}

impl From<&[&str]> for ObjDoc {
    fn from(names: &[&str]) -> Self {
        ObjDoc::List(names.iter().map(|s| s.to_string()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorEntryDoc {
    pub left: String,
    pub right: String,
    pub result: ObjDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDoc {
    pub unit: ObjDoc,
    pub table: Vec<TensorEntryDoc>,
}

/// The on-disk model format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub indecs: Vec<String>,
    #[serde(default)]
    pub conflations: Vec<[ObjDoc; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorDoc>,
    #[serde(default)]
    pub flavor: Flavor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
}

impl ModelDoc {
    /// Appends every rotation missing from the conflation list. Entries that
    /// mention unknown labels are left alone; validation reports them.
    pub fn complete_rotations(&mut self) {
        let Ok(model) = CategoryModel::from_doc(&ModelDoc {
            flavor: Flavor::Extriangulated,
            tensor: None,
            commutative: None,
            ..self.clone()
        }) else {
            return;
        };
        let mut stored: Vec<Conflation> = model.conflations.clone();
        for c in &model.conflations {
            for r in c.rotations() {
                if !stored.contains(&r) {
                    stored.push(r);
                }
            }
        }
        let completed = CategoryModel {
            conflations: stored,
            ..model
        };
        self.conflations = completed.to_doc().conflations;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "issue", rename_all = "kebab-case")]
pub enum Issue {
    EmptyLabel,
    DuplicateLabel {
        label: String,
    },
    TooManyIndecs {
        count: usize,
    },
    UnknownLabel {
        label: String,
        context: String,
    },
    MissingRotation {
        conflation: usize,
        rotation: String,
    },
    MissingTensorEntry {
        left: String,
        right: String,
    },
    DuplicateTensorEntry {
        left: String,
        right: String,
    },
    UnitFailure {
        label: String,
        side: &'static str,
        got: String,
    },
    NotCommutative {
        left: String,
        right: String,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EmptyLabel => write!(f, "empty indecomposable name"),
            Issue::DuplicateLabel { label } => write!(f, "duplicate label {label}"),
            Issue::TooManyIndecs { count } => {
                write!(
                    f,
                    "{count} indecomposables exceeds the maximum of {MAX_INDECS}"
                )
            }
            Issue::UnknownLabel { label, context } => {
                write!(f, "unknown label {label} in {context}")
            }
            Issue::MissingRotation {
                conflation,
                rotation,
            } => write!(f, "conflation #{conflation} is missing rotation {rotation}"),
            Issue::MissingTensorEntry { left, right } => {
                write!(f, "tensor table has no entry for {left}⊗{right}")
            }
            Issue::DuplicateTensorEntry { left, right } => {
                write!(f, "tensor table lists {left}⊗{right} twice")
            }
            Issue::UnitFailure { label, side, got } => {
                write!(f, "unit law fails on the {side} for {label}: got {got}")
            }
            Issue::NotCommutative { left, right } => {
                write!(
                    f,
                    "table declared commutative but {left}⊗{right} ≠ {right}⊗{left}"
                )
            }
        }
    }
}

/// Every violated invariant of a model document. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.issues.iter().map(|i| i.to_string()).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.messages().join("; "))
    }
}

/// Lists every violated invariant of `doc` without failing.
pub fn validate_model(doc: &ModelDoc) -> ValidationReport {
    resolve(doc).1
}

fn resolve(doc: &ModelDoc) -> (Option<CategoryModel>, ValidationReport) {
    let mut issues = Vec::new();
    let mut index = HashMap::new();
    for (i, name) in doc.indecs.iter().enumerate() {
        if name.is_empty() {
            issues.push(Issue::EmptyLabel);
        }
        if index.insert(name.clone(), i).is_some() {
            issues.push(Issue::DuplicateLabel {
                label: name.clone(),
            });
        }
    }
    if doc.indecs.len() > MAX_INDECS {
        issues.push(Issue::TooManyIndecs {
            count: doc.indecs.len(),
        });
        return (None, ValidationReport { issues });
    }

    let unresolved = Cell::new(false);
    let lookup = |o: &ObjDoc, context: String, issues: &mut Vec<Issue>| -> Obj {
        let mut counts = Vec::new();
        for (name, m) in o.entries() {
            match index.get(name) {
                Some(&i) => counts.push((i, m)),
                None => {
                    unresolved.set(true);
                    issues.push(Issue::UnknownLabel {
                        label: name.to_string(),
                        context: context.clone(),
                    });
                }
            }
        }
        Obj::from_counts(counts)
    };

    let conflations: Vec<Conflation> = doc
        .conflations
        .iter()
        .enumerate()
        .map(|(k, [l, m, n])| {
            let ctx = format!("conflation #{k}");
            Conflation::new(
                lookup(l, ctx.clone(), &mut issues),
                lookup(m, ctx.clone(), &mut issues),
                lookup(n, ctx, &mut issues),
            )
        })
        .collect();

    let n = doc.indecs.len();
    let mut tensor = None;
    if let Some(t) = &doc.tensor {
        let unit = lookup(&t.unit, "tensor unit".to_string(), &mut issues);
        let mut products: Vec<Option<Obj>> = vec![None; n * n];
        for entry in &t.table {
            let ctx = format!("tensor entry {}⊗{}", entry.left, entry.right);
            let l = index.get(entry.left.as_str()).copied();
            let r = index.get(entry.right.as_str()).copied();
            for (name, found) in [(&entry.left, l), (&entry.right, r)] {
                if found.is_none() {
                    unresolved.set(true);
                    issues.push(Issue::UnknownLabel {
                        label: name.clone(),
                        context: ctx.clone(),
                    });
                }
            }
            let result = lookup(&entry.result, ctx, &mut issues);
            if let (Some(a), Some(b)) = (l, r) {
                let slot = &mut products[a * n + b];
                if slot.is_some() {
                    issues.push(Issue::DuplicateTensorEntry {
                        left: entry.left.clone(),
                        right: entry.right.clone(),
                    });
                }
                *slot = Some(result);
            }
        }
        let mut complete = true;
        for a in 0..n {
            for b in 0..n {
                if products[a * n + b].is_none() {
                    complete = false;
                    issues.push(Issue::MissingTensorEntry {
                        left: doc.indecs[a].clone(),
                        right: doc.indecs[b].clone(),
                    });
                }
            }
        }
        if complete {
            let products: Vec<Obj> = products.into_iter().map(Option::unwrap).collect();
            let product_supports = products.iter().map(Obj::support).collect();
            tensor = Some(TensorTable {
                n,
                products,
                product_supports,
                unit,
                commutative: doc.commutative.unwrap_or(false),
            });
        } else {
            unresolved.set(true);
        }
    }

    if unresolved.get() {
        return (None, ValidationReport { issues });
    }

    let model = CategoryModel {
        labels: doc.indecs.clone(),
        index,
        conflations,
        tensor,
        flavor: doc.flavor,
    };

    if model.flavor == Flavor::TriangulatedShiftQuotient {
        for (k, c) in model.conflations.iter().enumerate() {
            for r in c.rotations() {
                if !model.conflations.contains(&r) {
                    issues.push(Issue::MissingRotation {
                        conflation: k,
                        rotation: format!(
                            "({}, {}, {})",
                            model.format_obj(&r.left),
                            model.format_obj(&r.middle),
                            model.format_obj(&r.right)
                        ),
                    });
                }
            }
        }
    }

    if let Some(t) = &model.tensor {
        for a in 0..n {
            let obj = Obj::indec(a);
            let right = t.tensor(&obj, &t.unit);
            if right != obj {
                issues.push(Issue::UnitFailure {
                    label: model.labels[a].clone(),
                    side: "right",
                    got: model.format_obj(&right),
                });
            }
            let left = t.tensor(&t.unit, &obj);
            if left != obj {
                issues.push(Issue::UnitFailure {
                    label: model.labels[a].clone(),
                    side: "left",
                    got: model.format_obj(&left),
                });
            }
        }
        if t.commutative {
            for a in 0..n {
                for b in (a + 1)..n {
                    if t.product(a, b) != t.product(b, a) {
                        issues.push(Issue::NotCommutative {
                            left: model.labels[a].clone(),
                            right: model.labels[b].clone(),
                        });
                    }
                }
            }
        }
    }

    (Some(model), ValidationReport { issues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn doc(json: &str) -> ModelDoc {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn a2_fixture_is_valid() {
        assert!(validate_model(&fixtures::m_a2().to_doc()).is_valid());
    }

    #[test]
    fn unknown_label_is_reported() {
        let d = doc(
            r#"{"indecs":["x","y"],"conflations":[[["x"],["w"],["y"]]],"flavor":"extriangulated"}"#,
        );
        let report = validate_model(&d);
        assert_eq!(report.issues.len(), 1);
        assert!(report.messages()[0].contains("unknown label w"));
        assert!(CategoryModel::from_doc(&d).is_err());
    }

    #[test]
    fn kxk_tensor_is_valid() {
        let m = fixtures::m_kxk();
        assert!(validate_model(&m.to_doc()).is_valid());
        let t = m.require_tensor().unwrap();
        let e1 = m.indec("e1").unwrap();
        let e2 = m.indec("e2").unwrap();
        assert_eq!(m.tensor(&e1, &e2).unwrap(), Obj::zero());
        assert_eq!(m.tensor(t.unit(), &e1).unwrap(), e1);
        assert_eq!(m.tensor(&Obj::zero(), &e2).unwrap(), Obj::zero());
    }

    #[test]
    fn missing_rotation_reported() {
        let d = doc(
            r#"{"indecs":["x","y","z"],"conflations":[[["x"],["y"],["z"]]],
                "flavor":"triangulated-shift-quotient"}"#,
        );
        let report = validate_model(&d);
        assert_eq!(report.issues.len(), 2);
        let mut fixed = d.clone();
        fixed.complete_rotations();
        assert_eq!(fixed.conflations.len(), 3);
        assert!(validate_model(&fixed).is_valid());
    }

    #[test]
    fn unit_and_commutativity_failures() {
        let d = doc(
            r#"{"indecs":["a","b"],"flavor":"triangulated-shift-quotient","commutative":true,
                "tensor":{"unit":["a"],"table":[
                  {"left":"a","right":"a","result":["a"]},
                  {"left":"a","right":"b","result":["b"]},
                  {"left":"b","right":"a","result":[]},
                  {"left":"b","right":"b","result":["b"]}]}}"#,
        );
        let msgs = validate_model(&d).messages();
        assert!(msgs
            .iter()
            .any(|m| m.contains("unit law fails on the right for b")));
        assert!(msgs.iter().any(|m| m.contains("declared commutative")));
    }

    #[test]
    fn missing_tensor_entry() {
        let d = doc(r#"{"indecs":["a"],"tensor":{"unit":["a"],"table":[]}}"#);
        let report = validate_model(&d);
        assert!(matches!(report.issues[0], Issue::MissingTensorEntry { .. }));
    }

    #[test]
    fn counts_form_is_accepted() {
        let d = doc(r#"{"indecs":["a","b"],"conflations":[[{"a":2},["a","a","b"],{"b":1}]]}"#);
        let m = CategoryModel::from_doc(&d).unwrap();
        let c = &m.conflations()[0];
        assert_eq!(c.left.multiplicity(0), 2);
        assert_eq!(c.middle, Obj::from_counts([(0, 2), (1, 1)]));
    }

    #[test]
    fn direct_sum_examples() {
        let m = fixtures::m_a2();
        let x = m.indec("x").unwrap();
        assert_eq!(m.direct_sum(&x, &Obj::zero()).unwrap(), x);
        assert_eq!(m.direct_sum(&x, &x).unwrap().multiplicity(0), 2);
        let xyz = m
            .direct_sum(&m.obj(&["x", "y"]).unwrap(), &m.indec("z").unwrap())
            .unwrap();
        assert_eq!(xyz, Obj::from_indices([0, 1, 2]));
        assert!(matches!(
            m.direct_sum(&x, &Obj::indec(7)),
            Err(Error::ModelMismatch)
        ));
    }

    #[test]
    fn canonical_roundtrip_preserves_hash() {
        let m = fixtures::m_kxk();
        let text = serde_json::to_string(&m.to_doc()).unwrap();
        let back = CategoryModel::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.hash(), m.hash());
    }
}
