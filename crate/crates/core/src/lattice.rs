//! Subcategory lattices of a model and the prime notions defined on them.
//!
//! Subcategories are identified with their sets of indecomposables, so every
//! closure kind is a Horn-clause closure system on at most 64 atoms. The
//! families are enumerated with Ganter's NextClosure; [`enumerate_by_filter`]
//! is the brute-force definition and is kept as the reference oracle.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CategoryModel, Flavor, Obj};

/// Default cap on the number of indecomposables for full enumeration (2^20 subsets).
pub const DEFAULT_INDEC_LIMIT: usize = 20;

/// A subcategory in `as(E)`, identified with its set of indecomposables.
///
/// An object belongs to it iff every summand does, so the zero object belongs
/// to every subcategory.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Subcat(u64);

impl Subcat {
    pub const fn empty() -> Self {
        Subcat(0)
    }

    pub fn full(n: usize) -> Self {
        match n {
            0 => Subcat(0),
            64 => Subcat(u64::MAX),
            n => Subcat((1u64 << n) - 1),
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        Subcat(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Subcat(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    /// Object membership: every summand is a member.
    pub fn contains_obj(self, obj: &Obj) -> bool {
        obj.support().is_subset(self)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn is_subset(self, other: Subcat) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Subcat) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union(self, other: Subcat) -> Subcat {
        Subcat(self.0 | other.0)
    }

    pub fn intersection(self, other: Subcat) -> Subcat {
        Subcat(self.0 & other.0)
    }

    pub fn difference(self, other: Subcat) -> Subcat {
        Subcat(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl fmt::Debug for Subcat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Lexicographic on the increasing sequence of member indices.
impl Ord for Subcat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subcat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Closure kinds for which subcategory families can be enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    As,
    Thick,
    Serre,
    TtIdeal,
    NcTwoSided,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::As,
        Kind::Thick,
        Kind::Serre,
        Kind::TtIdeal,
        Kind::NcTwoSided,
    ];

    pub fn needs_tensor(self) -> bool {
        matches!(self, Kind::TtIdeal | Kind::NcTwoSided)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::As => "as",
            Kind::Thick => "thick",
            Kind::Serre => "serre",
            Kind::TtIdeal => "tt-ideal",
            Kind::NcTwoSided => "nc-two-sided",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tag carried by a [`SubcatFamily`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    As,
    Thick,
    Serre,
    TtIdeal,
    NcTwoSided,
    MatsuiPrime,
    BalmerPrime,
    NcPrime,
    GMatsuiPrime,
    GBalmerPrime,
    Custom,
}

impl FamilyKind {
    /// The closure kind every member must satisfy, if any.
    pub fn member_kind(self) -> Option<Kind> {
        match self {
            FamilyKind::As => Some(Kind::As),
            FamilyKind::Thick | FamilyKind::MatsuiPrime | FamilyKind::GMatsuiPrime => {
                Some(Kind::Thick)
            }
            FamilyKind::Serre => Some(Kind::Serre),
            FamilyKind::TtIdeal | FamilyKind::BalmerPrime | FamilyKind::GBalmerPrime => {
                Some(Kind::TtIdeal)
            }
            FamilyKind::NcTwoSided | FamilyKind::NcPrime => Some(Kind::NcTwoSided),
            FamilyKind::Custom => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::As => "as",
            FamilyKind::Thick => "thick",
            FamilyKind::Serre => "serre",
            FamilyKind::TtIdeal => "tt-ideal",
            FamilyKind::NcTwoSided => "nc-two-sided",
            FamilyKind::MatsuiPrime => "matsui-prime",
            FamilyKind::BalmerPrime => "balmer-prime",
            FamilyKind::NcPrime => "nc-prime",
            FamilyKind::GMatsuiPrime => "g-matsui-prime",
            FamilyKind::GBalmerPrime => "g-balmer-prime",
            FamilyKind::Custom => "custom",
        }
    }
}

impl From<Kind> for FamilyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::As => FamilyKind::As,
            Kind::Thick => FamilyKind::Thick,
            Kind::Serre => FamilyKind::Serre,
            Kind::TtIdeal => FamilyKind::TtIdeal,
            Kind::NcTwoSided => FamilyKind::NcTwoSided,
        }
    }
}

/// A finite set of subcategories of one model, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubcatFamily {
    kind: FamilyKind,
    items: Vec<Subcat>,
}

impl SubcatFamily {
    pub fn new(kind: FamilyKind, items: impl IntoIterator<Item = Subcat>) -> Self {
        let mut items: Vec<Subcat> = items.into_iter().collect();
        items.sort();
        items.dedup();
        Self { kind, items }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: FamilyKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn items(&self) -> &[Subcat] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, s: Subcat) -> bool {
        self.items.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: Subcat) -> Option<usize> {
        self.items.binary_search(&s).ok()
    }

    pub fn is_subfamily_of(&self, other: &SubcatFamily) -> bool {
        self.items.iter().all(|&s| other.contains(s))
    }

    pub fn iter(&self) -> impl Iterator<Item = Subcat> + '_ {
        self.items.iter().copied()
    }

    /// Same members, compared as sets regardless of tag.
    pub fn same_members(&self, other: &SubcatFamily) -> bool {
        self.items == other.items
    }

    pub fn to_doc(&self, model: &CategoryModel) -> FamilyDoc {
        let mut items: Vec<Vec<String>> = self
            .items
            .iter()
            .map(|&s| {
                let mut names = model.member_names(s);
                names.sort();
                names
            })
            .collect();
        items.sort();
        FamilyDoc {
            kind: self.kind,
            model_hash: model.hash(),
            items,
        }
    }
}

/// Serialized family: sorted member-name arrays plus the kind tag and model hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub kind: FamilyKind,
    pub model_hash: String,
    pub items: Vec<Vec<String>>,
}

/// Reads a family either as a [`FamilyDoc`] or as a bare array of member-name arrays.
pub fn family_from_json(model: &CategoryModel, text: &str) -> Result<SubcatFamily> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Doc {
            #[serde(default)]
            kind: Option<FamilyKind>,
            items: Vec<Vec<String>>,
        },
        Bare(Vec<Vec<String>>),
    }
    let (kind, items) = match serde_json::from_str::<Input>(text)? {
        Input::Doc { kind, items } => (kind.unwrap_or(FamilyKind::Custom), items),
        Input::Bare(items) => (FamilyKind::Custom, items),
    };
    let subs = items
        .iter()
        .map(|names| {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            model.subcat(&refs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubcatFamily::new(kind, subs))
}

// ---------------------------------------------------------------------------
// Closure

#[derive(Clone, Copy, Debug)]
struct Rule {
    premise: Subcat,
    conclusion: Subcat,
}

/// Precompiled Horn rules of one closure kind on one model.
#[derive(Clone, Debug)]
pub struct Closure {
    kind: Kind,
    rules: Vec<Rule>,
}

impl Closure {
    pub fn new(model: &CategoryModel, kind: Kind) -> Result<Self> {
        let mut rules = Vec::new();
        let mut push = |premise: Subcat, conclusion: Subcat| {
            if !conclusion.is_subset(premise) {
                rules.push(Rule {
                    premise,
                    conclusion,
                });
            }
        };
        if kind != Kind::As {
            for c in model.conflations() {
                let [l, m, n] = c.terms().map(Obj::support);
                push(l.union(m), n);
                push(l.union(n), m);
                push(m.union(n), l);
                if kind == Kind::Serre {
                    push(m, l.union(n));
                }
            }
        }
        if kind.needs_tensor() {
            let t = model.require_tensor()?;
            for a in 0..model.len() {
                let mut absorbed = Subcat::empty();
                for b in 0..model.len() {
                    absorbed = absorbed
                        .union(t.product_support(a, b))
                        .union(t.product_support(b, a));
                }
                push(Subcat::from_indices([a]), absorbed);
            }
        }
        Ok(Self { kind, rules })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Least fixed point of the rules above `seed`.
    pub fn close(&self, seed: Subcat) -> Subcat {
        let mut s = seed;
        loop {
            let before = s;
            for r in &self.rules {
                if r.premise.is_subset(s) {
                    s = s.union(r.conclusion);
                }
            }
            if s == before {
                return s;
            }
        }
    }
}

/// Smallest subcategory of the given kind containing `seed`.
pub fn close(model: &CategoryModel, seed: Subcat, kind: Kind) -> Result<Subcat> {
    model.check_subcat(seed)?;
    Ok(Closure::new(model, kind)?.close(seed))
}

/// Definitional membership test for a closure kind, checked rule by rule on the
/// conflation list and tensor table (no fixpoint iteration).
pub fn satisfies(model: &CategoryModel, s: Subcat, kind: Kind) -> Result<bool> {
    if kind == Kind::As {
        return Ok(true);
    }
    for c in model.conflations() {
        let [l, m, n] = c.terms().map(|o| s.contains_obj(o));
        let members = [l, m, n].iter().filter(|&&b| b).count();
        if members == 2 {
            return Ok(false);
        }
        if kind == Kind::Serre && m != (l && n) {
            return Ok(false);
        }
    }
    if kind.needs_tensor() {
        let t = model.require_tensor()?;
        for a in s.iter() {
            for b in 0..model.len() {
                let (ea, eb) = (Obj::indec(a), Obj::indec(b));
                if !s.contains_obj(&t.tensor(&ea, &eb)) || !s.contains_obj(&t.tensor(&eb, &ea)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn check_capacity(model: &CategoryModel, limit: usize) -> Result<()> {
    if model.len() > limit {
        return Err(Error::Capacity {
            what: "indecomposables for full enumeration",
            size: model.len(),
            limit,
        });
    }
    Ok(())
}

/// Reference enumeration: filter all `2^n` subsets through [`satisfies`].
pub fn enumerate_by_filter(
    model: &CategoryModel,
    kind: Kind,
    limit: usize,
) -> Result<SubcatFamily> {
    check_capacity(model, limit)?;
    let mut items = Vec::new();
    for bits in 0..(1u64 << model.len()) {
        let s = Subcat::from_bits(bits);
        if satisfies(model, s, kind)? {
            items.push(s);
        }
    }
    Ok(SubcatFamily::new(kind.into(), items))
}

// ---------------------------------------------------------------------------
// Families and primes

/// Enumeration context for one model, carrying the capacity limit.
#[derive(Clone, Copy, Debug)]
pub struct Lattice<'m> {
    model: &'m CategoryModel,
    limit: usize,
}

impl<'m> Lattice<'m> {
    pub fn new(model: &'m CategoryModel) -> Self {
        Self {
            model,
            limit: DEFAULT_INDEC_LIMIT,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn model(&self) -> &'m CategoryModel {
        self.model
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// All subcategories of the given kind, via NextClosure.
    pub fn enumerate(&self, kind: Kind) -> Result<SubcatFamily> {
        check_capacity(self.model, self.limit)?;
        let n = self.model.len();
        if kind == Kind::As {
            return Ok(SubcatFamily::new(
                FamilyKind::As,
                (0..(1u64 << n)).map(Subcat::from_bits),
            ));
        }
        let closure = Closure::new(self.model, kind)?;
        let mut items = Vec::new();
        let mut current = closure.close(Subcat::empty());
        items.push(current);
        'outer: loop {
            let mut a = current;
            for i in (0..n).rev() {
                if a.contains(i) {
                    a = Subcat::from_bits(a.bits() & !(1u64 << i));
                    continue;
                }
                let mut seed = a;
                seed.insert(i);
                let b = closure.close(seed);
                let below_i = (1u64 << i) - 1;
                if b.difference(a).bits() & below_i == 0 {
                    current = b;
                    items.push(b);
                    continue 'outer;
                }
            }
            break;
        }
        Ok(SubcatFamily::new(kind.into(), items))
    }

    /// Proper thick `P` whose strict thick over-poset has a least element.
    pub fn matsui_primes(&self) -> Result<SubcatFamily> {
        let thick = self.enumerate(Kind::Thick)?;
        let full = self.model.full();
        let primes = thick
            .iter()
            .filter(|&p| p != full && successor(&thick, p).is_some())
            .collect::<Vec<_>>();
        Ok(SubcatFamily::new(FamilyKind::MatsuiPrime, primes))
    }

    pub fn balmer_primes(&self) -> Result<SubcatFamily> {
        let ideals = self.enumerate(Kind::TtIdeal)?;
        let full = self.model.full();
        let mut primes = Vec::new();
        for p in ideals.iter().filter(|&p| p != full) {
            if balmer_witness(self.model, p)?.is_none() {
                primes.push(p);
            }
        }
        Ok(SubcatFamily::new(FamilyKind::BalmerPrime, primes))
    }

    pub fn nc_primes(&self) -> Result<SubcatFamily> {
        let ideals = self.enumerate(Kind::NcTwoSided)?;
        let full = self.model.full();
        let mut primes = Vec::new();
        for p in ideals.iter().filter(|&p| p != full) {
            if nc_witness(self.model, p)?.is_none() {
                primes.push(p);
            }
        }
        Ok(SubcatFamily::new(FamilyKind::NcPrime, primes))
    }

    /// Compares the tensor support `supp(a⊗b)` with `supp(a) ∩ supp(b)` over the
    /// nc-prime spectrum for every ordered pair of indecomposables.
    pub fn tensor_product_property(&self) -> Result<TensorPropertyReport> {
        let t = self.model.require_tensor()?;
        let primes = self.nc_primes()?;
        let supp = |s: Subcat| -> Vec<bool> { primes.iter().map(|p| !s.is_subset(p)).collect() };
        for a in 0..self.model.len() {
            for b in 0..self.model.len() {
                let lhs = supp(t.product_support(a, b));
                let sa = supp(Subcat::from_indices([a]));
                let sb = supp(Subcat::from_indices([b]));
                let rhs: Vec<bool> = sa.iter().zip(&sb).map(|(x, y)| *x && *y).collect();
                if lhs != rhs {
                    let names = |v: &[bool]| -> Vec<String> {
                        primes
                            .iter()
                            .zip(v)
                            .filter(|(_, &keep)| keep)
                            .map(|(p, _)| self.model.format_subcat(p))
                            .collect()
                    };
                    return Ok(TensorPropertyReport {
                        holds: false,
                        primes: primes.len(),
                        counterexample: Some(TensorCounterexample {
                            left: self.model.label(a).to_string(),
                            right: self.model.label(b).to_string(),
                            supp_product: names(&lhs),
                            supp_intersection: names(&rhs),
                        }),
                    });
                }
            }
        }
        Ok(TensorPropertyReport {
            holds: true,
            primes: primes.len(),
            counterexample: None,
        })
    }

    /// Compares thick subcategories, tt-ideals and radical tt-ideals.
    pub fn thick_equals_ideals(&self) -> Result<IdealComparison> {
        let thick = self.enumerate(Kind::Thick)?;
        let ideals = self.enumerate(Kind::TtIdeal)?;
        let mut radical = Vec::new();
        for i in ideals.iter() {
            if radical_of(self.model, i)? == i {
                radical.push(i);
            }
        }
        let radical = SubcatFamily::new(FamilyKind::TtIdeal, radical);
        Ok(IdealComparison {
            thick: thick.len(),
            tt_ideals: ideals.len(),
            radical_tt_ideals: radical.len(),
            thick_equals_ideals: thick.same_members(&ideals),
            ideals_all_radical: radical.same_members(&ideals),
        })
    }
}

pub fn enumerate(model: &CategoryModel, kind: Kind) -> Result<SubcatFamily> {
    Lattice::new(model).enumerate(kind)
}

pub fn matsui_primes(model: &CategoryModel) -> Result<SubcatFamily> {
    Lattice::new(model).matsui_primes()
}

pub fn balmer_primes(model: &CategoryModel) -> Result<SubcatFamily> {
    Lattice::new(model).balmer_primes()
}

pub fn nc_primes(model: &CategoryModel) -> Result<SubcatFamily> {
    Lattice::new(model).nc_primes()
}

pub fn check_tensor_product_property(model: &CategoryModel) -> Result<TensorPropertyReport> {
    Lattice::new(model).tensor_product_property()
}

pub fn thick_equals_ideals(model: &CategoryModel) -> Result<IdealComparison> {
    Lattice::new(model).thick_equals_ideals()
}

/// Matsui primes are defined for triangulated models; other flavors get a warning.
pub fn matsui_flavor_warning(model: &CategoryModel) -> Option<String> {
    (model.flavor() != Flavor::TriangulatedShiftQuotient).then(|| {
        format!(
            "Matsui primes computed on a {} model; the notion is intended for triangulated categories",
            model.flavor()
        )
    })
}

/// The least element of `{N ∈ family : p ⊊ N}`, if there is one.
pub fn successor(family: &SubcatFamily, p: Subcat) -> Option<Subcat> {
    let above: Vec<Subcat> = family.iter().filter(|&n| p.is_proper_subset(n)).collect();
    above
        .iter()
        .copied()
        .find(|&n| above.iter().all(|&m| n.is_subset(m)))
}

/// First pair `(a, b)` with `a⊗b ∈ p` but `a, b ∉ p`.
pub fn balmer_witness(model: &CategoryModel, p: Subcat) -> Result<Option<(usize, usize)>> {
    let t = model.require_tensor()?;
    for a in 0..model.len() {
        for b in 0..model.len() {
            if t.product_support(a, b).is_subset(p) && !p.contains(a) && !p.contains(b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// First pair `(a, b)` with `a⊗k⊗b ∈ p` for every indecomposable `k` but `a, b ∉ p`.
pub fn nc_witness(model: &CategoryModel, p: Subcat) -> Result<Option<(usize, usize)>> {
    let t = model.require_tensor()?;
    for a in 0..model.len() {
        for b in 0..model.len() {
            if p.contains(a) || p.contains(b) {
                continue;
            }
            let all_in = (0..model.len()).all(|k| {
                let kb = t.product_support(k, b);
                t.tensor_support(Subcat::from_indices([a]), kb).is_subset(p)
            });
            if all_in {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Least tt-ideal `R ⊇ ideal` that contains every indecomposable having some
/// tensor power in `R`.
///
/// Each pass adds the indecomposables with a power in the current ideal and
/// closes; passes repeat until nothing changes, so the result is radical.
pub fn radical(model: &CategoryModel, ideal: Subcat) -> Result<Subcat> {
    model.check_subcat(ideal)?;
    radical_of(model, ideal)
}

fn radical_of(model: &CategoryModel, ideal: Subcat) -> Result<Subcat> {
    let t = model.require_tensor()?;
    let closure = Closure::new(model, Kind::TtIdeal)?;
    let mut current = closure.close(ideal);
    loop {
        let mut seed = current;
        for a in 0..model.len() {
            if current.contains(a) {
                continue;
            }
            let single = Subcat::from_indices([a]);
            let mut power = single;
            let mut seen = HashSet::new();
            while seen.insert(power) {
                if power.is_subset(current) {
                    seed.insert(a);
                    break;
                }
                power = t.tensor_support(power, single);
            }
        }
        let next = closure.close(seed);
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorCounterexample {
    pub left: String,
    pub right: String,
    pub supp_product: Vec<String>,
    pub supp_intersection: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorPropertyReport {
    pub holds: bool,
    pub primes: usize,
    pub counterexample: Option<TensorCounterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealComparison {
    pub thick: usize,
    pub tt_ideals: usize,
    pub radical_tt_ideals: usize,
    pub thick_equals_ideals: bool,
    pub ideals_all_radical: bool,
}
