//! Small models, spaces, supports and bridges used by tests, the acceptance
//! suite and the CLI examples.

use crate::equivariance::{BridgeDoc, EquivariantBridge};
use crate::model::{CategoryModel, ModelDoc};
use crate::supports::{Support, SupportDoc};
use crate::topology::{FiniteSpace, SpaceDoc};

fn model(json: &str) -> CategoryModel {
    let doc: ModelDoc = serde_json::from_str(json).expect("fixture parses");
    CategoryModel::from_doc(&doc).expect("fixture is valid")
}

/// Three shift-orbits `x, y, z` with the rotations of one triangle.
pub fn m_a2() -> CategoryModel {
    model(
        r#"{"indecs":["x","y","z"],
            "conflations":[[["x"],["y"],["z"]],[["y"],["z"],["x"]],[["z"],["x"],["y"]]],
            "flavor":"triangulated-shift-quotient"}"#,
    )
}

/// Two simples and their nonsplit extension `0 → s2 → m → s1 → 0`.
pub fn m_mod2() -> CategoryModel {
    model(
        r#"{"indecs":["s1","s2","m"],
            "conflations":[[["s2"],["m"],["s1"]]],
            "flavor":"abelian"}"#,
    )
}

/// Two orthogonal idempotents with unit `e1 ⊕ e2`.
pub fn m_kxk() -> CategoryModel {
    model(
        r#"{"indecs":["e1","e2"],
            "flavor":"triangulated-shift-quotient","commutative":true,
            "tensor":{"unit":["e1","e2"],"table":[
              {"left":"e1","right":"e1","result":["e1"]},
              {"left":"e1","right":"e2","result":[]},
              {"left":"e2","right":"e1","result":[]},
              {"left":"e2","right":"e2","result":["e2"]}]}}"#,
    )
}

/// [`m_kxk`] presented as an abelian category with two simples.
pub fn m_kxk_abelian() -> CategoryModel {
    model(
        r#"{"indecs":["e1","e2"],
            "flavor":"abelian","commutative":true,
            "tensor":{"unit":["e1","e2"],"table":[
              {"left":"e1","right":"e1","result":["e1"]},
              {"left":"e1","right":"e2","result":[]},
              {"left":"e2","right":"e1","result":[]},
              {"left":"e2","right":"e2","result":["e2"]}]}}"#,
    )
}

/// One indecomposable `v` with `v ⊗ v = v`.
pub fn m_k() -> CategoryModel {
    model(
        r#"{"indecs":["v"],"flavor":"triangulated-shift-quotient","commutative":true,
            "tensor":{"unit":["v"],"table":[{"left":"v","right":"v","result":["v"]}]}}"#,
    )
}

/// [`m_k`] in the abelian flavor.
pub fn m_k_abelian() -> CategoryModel {
    model(
        r#"{"indecs":["v"],"flavor":"abelian","commutative":true,
            "tensor":{"unit":["v"],"table":[{"left":"v","right":"v","result":["v"]}]}}"#,
    )
}

/// Two indecomposables `v, w`, each its own idempotent summand of the unit.
pub fn m_k_split() -> CategoryModel {
    model(
        r#"{"indecs":["v","w"],
            "flavor":"triangulated-shift-quotient","commutative":true,
            "tensor":{"unit":["v","w"],"table":[
              {"left":"v","right":"v","result":["v"]},
              {"left":"v","right":"w","result":[]},
              {"left":"w","right":"v","result":[]},
              {"left":"w","right":"w","result":["w"]}]}}"#,
    )
}

/// One idempotent unit `u`.
pub fn m_unit() -> CategoryModel {
    model(
        r#"{"indecs":["u"],"commutative":true,
            "tensor":{"unit":["u"],"table":[{"left":"u","right":"u","result":["u"]}]}}"#,
    )
}

/// A unit `u` and a square-zero `a`.
pub fn m_square_zero() -> CategoryModel {
    model(
        r#"{"indecs":["u","a"],"commutative":true,
            "tensor":{"unit":["u"],"table":[
              {"left":"u","right":"u","result":["u"]},
              {"left":"u","right":"a","result":["a"]},
              {"left":"a","right":"u","result":["a"]},
              {"left":"a","right":"a","result":[]}]}}"#,
    )
}

/// Thick lattice is the chain `∅ ⊂ {a} ⊂ {a,b}`.
pub fn m_chain() -> CategoryModel {
    model(
        r#"{"indecs":["a","b"],
            "conflations":[[["b"],["b"],["a"]],[["b"],["a"],["b"]],[["a"],["b"],["b"]]],
            "flavor":"triangulated-shift-quotient"}"#,
    )
}

/// Three indecomposables and no conflations: every subset is thick.
pub fn m_three() -> CategoryModel {
    model(r#"{"indecs":["x","y","z"],"flavor":"triangulated-shift-quotient"}"#)
}

/// Every model fixture, with a short name.
pub fn all_models() -> Vec<(&'static str, CategoryModel)> {
    vec![
        ("a2", m_a2()),
        ("mod2", m_mod2()),
        ("kxk", m_kxk()),
        ("kxk-abelian", m_kxk_abelian()),
        ("k", m_k()),
        ("k-split", m_k_split()),
        ("unit", m_unit()),
        ("square-zero", m_square_zero()),
        ("chain", m_chain()),
        ("three", m_three()),
    ]
}

fn space(points: &[&str], closed: &[&[&str]]) -> FiniteSpace {
    let doc = SpaceDoc {
        points: points.iter().map(|s| s.to_string()).collect(),
        closed_sets: Some(
            closed
                .iter()
                .map(|c| c.iter().map(|s| s.to_string()).collect())
                .collect(),
        ),
        open_sets: None,
    };
    FiniteSpace::from_doc(&doc).expect("fixture space is valid")
}

/// Discrete space on `p, q`.
pub fn discrete2() -> FiniteSpace {
    space(&["p", "q"], &[&["p"], &["q"]])
}

/// Points `a, b` with closed sets `∅, {a}, {a,b}`; `b` is generic.
pub fn sierpinski() -> FiniteSpace {
    space(&["a", "b"], &[&["a"]])
}

/// The chain `a ∈ cl{b}`, `b ∈ cl{c}`.
pub fn chain3() -> FiniteSpace {
    space(&["a", "b", "c"], &[&["a"], &["a", "b"]])
}

/// Discrete `{p, q}` with `σ(e1) = {p}`, `σ(e2) = {q}`, over a model with
/// indecomposables `e1, e2`.
pub fn x2_support(model: &CategoryModel) -> Support<'_> {
    let doc: SupportDoc = serde_json::from_str(
        r#"{"points":["p","q"],"closed_sets":[["p"],["q"]],
            "sigma":{"e1":["p"],"e2":["q"]}}"#,
    )
    .expect("fixture parses");
    Support::from_doc(model, &doc).expect("fixture support is valid")
}

fn bridge(
    base: CategoryModel,
    eq: CategoryModel,
    perm: serde_json::Value,
    ind: serde_json::Value,
    forget: serde_json::Value,
) -> EquivariantBridge {
    let doc: BridgeDoc = serde_json::from_value(serde_json::json!({
        "base_model": base.to_doc(),
        "eq_model": eq.to_doc(),
        "group": {"elements": ["e", "s"], "table": [["e", "s"], ["s", "e"]], "identity": "e"},
        "perm": {"s": perm},
        "ind": ind,
        "forget": forget,
    }))
    .expect("fixture parses");
    EquivariantBridge::from_doc(&doc, None).expect("fixture bridge is valid")
}

/// [`m_kxk`] with the factors swapped, over [`m_k`]: `Ind(e_i) = v`, `Forget(v) = e1 ⊕ e2`.
pub fn bridge_kxk_k() -> EquivariantBridge {
    bridge(
        m_kxk(),
        m_k(),
        serde_json::json!({"e1": "e2", "e2": "e1"}),
        serde_json::json!({"e1": ["v"], "e2": ["v"]}),
        serde_json::json!({"v": ["e1", "e2"]}),
    )
}

/// The swap on [`m_kxk`] over [`m_k_split`]: `Ind(e_i) = v ⊕ w`,
/// `Forget(v) = e1`, `Forget(w) = e2`. The target has more subcategories than
/// the invariant ones.
pub fn bridge_kxk_k_split() -> EquivariantBridge {
    bridge(
        m_kxk(),
        m_k_split(),
        serde_json::json!({"e1": "e2", "e2": "e1"}),
        serde_json::json!({"e1": ["v", "w"], "e2": ["v", "w"]}),
        serde_json::json!({"v": ["e1"], "w": ["e2"]}),
    )
}

/// [`bridge_kxk_k`] in the abelian flavor.
pub fn bridge_kxk_k_abelian() -> EquivariantBridge {
    bridge(
        m_kxk_abelian(),
        m_k_abelian(),
        serde_json::json!({"e1": "e2", "e2": "e1"}),
        serde_json::json!({"e1": ["v"], "e2": ["v"]}),
        serde_json::json!({"v": ["e1", "e2"]}),
    )
}

/// [`m_three`] with `x ↔ y`, over a model with the orbit object `xy` and the
/// two equivariant structures `z1, z2` on the fixed object `z`.
pub fn bridge_three_swap() -> EquivariantBridge {
    let eq = model(r#"{"indecs":["xy","z1","z2"],"flavor":"triangulated-shift-quotient"}"#);
    bridge(
        m_three(),
        eq,
        serde_json::json!({"x": "y", "y": "x"}),
        serde_json::json!({"x": ["xy"], "y": ["xy"], "z": ["z1", "z2"]}),
        serde_json::json!({"xy": ["x", "y"], "z1": ["z"], "z2": ["z"]}),
    )
}

/// Every bridge fixture, with a short name.
pub fn all_bridges() -> Vec<(&'static str, EquivariantBridge)> {
    vec![
        ("kxk-swap-k", bridge_kxk_k()),
        ("kxk-swap-k-split", bridge_kxk_k_split()),
        ("kxk-abelian-swap-k", bridge_kxk_k_abelian()),
        ("three-swap", bridge_three_swap()),
        ("a2-trivial", EquivariantBridge::identity(&m_a2())),
        ("mod2-trivial", EquivariantBridge::identity(&m_mod2())),
    ]
}
