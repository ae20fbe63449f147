//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact set equality. The only numeric tolerance is the
//! wall-clock budget of the oracle battery.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use esp_core::checks::{fixture_suite, random_suite, SuiteReport};
use esp_core::equivariance::{invariant_subcats, EquivariantBridge};
use esp_core::fixtures;
use esp_core::lattice::{enumerate_by_filter, Kind, Lattice, DEFAULT_INDEC_LIMIT};
use esp_core::random::RandomConfig;
use esp_core::spectrum::build_spectrum;
use esp_core::{CategoryModel, Subcat, SubcatFamily, Support};

const RANDOM_SEED: u64 = 20_240_601;
const RANDOM_MODELS: usize = 100;
const ENUMERATION_LIMIT: usize = DEFAULT_INDEC_LIMIT;
const SUITE_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn laws_pass(reports: &[&SuiteReport], ids: &[&str]) -> Outcome {
    for id in ids {
        let mut ran = false;
        for r in reports {
            if let Some(law) = r.laws.iter().find(|l| l.id == *id) {
                ran |= law.cases > 0;
                if !law.passed {
                    return Err(format!("{id}: {}", law.detail.clone().unwrap_or_default()));
                }
            }
        }
        ensure(ran, || format!("{id} never ran"))?;
    }
    Ok(())
}

fn family_of(model: &CategoryModel, members: &[&[&str]]) -> Vec<Subcat> {
    let mut out: Vec<Subcat> = members
        .iter()
        .map(|m| Subcat::from_indices(m.iter().map(|l| model.index_of(l).expect("label exists"))))
        .collect();
    out.sort();
    out
}

fn sorted(f: &SubcatFamily) -> Vec<Subcat> {
    let mut v = f.items().to_vec();
    v.sort();
    v
}

fn enumeration_counts() -> Outcome {
    let cases = [
        ("A2", fixtures::m_a2(), Kind::Thick, 5),
        ("A2", fixtures::m_a2(), Kind::Serre, 2),
        ("mod2", fixtures::m_mod2(), Kind::Thick, 5),
        ("mod2", fixtures::m_mod2(), Kind::Serre, 4),
        ("kxk", fixtures::m_kxk(), Kind::Thick, 4),
    ];
    for (name, model, kind, expected) in cases {
        let fast = Lattice::new(&model)
            .enumerate(kind)
            .map_err(|e| e.to_string())?;
        let oracle =
            enumerate_by_filter(&model, kind, ENUMERATION_LIMIT).map_err(|e| e.to_string())?;
        ensure(fast.len() == expected && fast.same_members(&oracle), || {
            format!(
                "{kind}({name}): {} enumerated, {} by filter, expected {expected}",
                fast.len(),
                oracle.len()
            )
        })?;
    }
    Ok(())
}

fn prime_detection() -> Outcome {
    let a2 = fixtures::m_a2();
    let matsui = Lattice::new(&a2)
        .matsui_primes()
        .map_err(|e| e.to_string())?;
    ensure(
        sorted(&matsui) == family_of(&a2, &[&["x"], &["y"], &["z"]]),
        || format!("Matsui primes of A2: {:?}", matsui.to_doc(&a2)),
    )?;
    let kxk = fixtures::m_kxk();
    let lattice = Lattice::new(&kxk);
    let expected = family_of(&kxk, &[&["e1"], &["e2"]]);
    for (name, f) in [
        ("Balmer", lattice.balmer_primes()),
        ("nc", lattice.nc_primes()),
        ("Matsui", lattice.matsui_primes()),
    ] {
        let f = f.map_err(|e| e.to_string())?;
        ensure(sorted(&f) == expected, || {
            format!("{name} primes of kxk: {:?}", f.to_doc(&kxk))
        })?;
    }
    Ok(())
}

fn serre_and_balmer_spectral() -> Outcome {
    for (name, model, kind) in [
        ("mod2", fixtures::m_mod2(), Kind::Serre),
        ("A2", fixtures::m_a2(), Kind::Serre),
        ("kxk-abelian", fixtures::m_kxk_abelian(), Kind::Serre),
    ] {
        let family = Lattice::new(&model)
            .enumerate(kind)
            .map_err(|e| e.to_string())?;
        let spec = build_spectrum(&model, &family).map_err(|e| e.to_string())?;
        let r = spec.spectral_report().map_err(|e| e.to_string())?;
        ensure(r.spectral && r.agree, || {
            format!("Serre spectrum of {name} is not spectral")
        })?;
    }
    for (name, model) in fixtures::all_models() {
        if model.tensor_table().is_none() {
            continue;
        }
        let primes = Lattice::new(&model)
            .balmer_primes()
            .map_err(|e| e.to_string())?;
        let spec = build_spectrum(&model, &primes).map_err(|e| e.to_string())?;
        let r = spec.spectral_report().map_err(|e| e.to_string())?;
        ensure(r.spectral && r.agree, || {
            format!("Balmer spectrum of {name} is not spectral")
        })?;
    }
    Ok(())
}

fn immersions(fixture_report: &SuiteReport) -> Outcome {
    let kxk = fixtures::m_kxk();
    let lattice = Lattice::new(&kxk);
    let x2 = fixtures::x2_support(&kxk);
    let balmer = build_spectrum(&kxk, &lattice.balmer_primes().map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let thick = build_spectrum(
        &kxk,
        &lattice.enumerate(Kind::Thick).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;

    let onto_balmer = x2.immersion_j(&balmer).map_err(|e| e.to_string())?;
    ensure(
        onto_balmer.consistent() && onto_balmer.check.homeomorphism,
        || format!("j into the Balmer spectrum: {onto_balmer:?}"),
    )?;
    let into_thick = x2.immersion_j(&thick).map_err(|e| e.to_string())?;
    ensure(
        into_thick.consistent() && into_thick.check.embedding && !into_thick.check.surjective,
        || format!("j into the thick spectrum: {into_thick:?}"),
    )?;
    let dual = x2.immersion_j_dual(&balmer).map_err(|e| e.to_string())?;
    ensure(dual.consistent(), || format!("dual j: {dual:?}"))?;

    for spec in [&balmer, &thick] {
        let taut = Support::tautological(spec);
        let r = taut.immersion_j(spec).map_err(|e| e.to_string())?;
        let identity = r
            .map
            .as_ref()
            .is_some_and(|m| m.iter().enumerate().all(|(i, &j)| i == j));
        ensure(identity && r.check.homeomorphism, || {
            "tautological j is not the identity".into()
        })?;
    }
    laws_pass(
        &[fixture_report],
        &[
            "supports.tautological-identity",
            "supports.restriction",
            "supports.restriction-immersion",
            "supports.immersion-j",
        ],
    )
}

fn equivariance() -> Outcome {
    let bridge = fixtures::bridge_kxk_k();
    let corr = bridge
        .verify_correspondence(Kind::Thick)
        .map_err(|e| e.to_string())?;
    ensure(
        corr.holds && corr.bijection && corr.invariant.len() == 2 && corr.ind_closed.len() == 2,
        || format!("thick correspondence: {corr:?}"),
    )?;
    let c = invariant_subcats(bridge.base(), bridge.action(), Kind::Thick)
        .map_err(|e| e.to_string())?;
    let d = Lattice::new(bridge.eq())
        .enumerate(Kind::Thick)
        .map_err(|e| e.to_string())?;
    let spec = bridge
        .action_spectrum_check(&c, &d)
        .map_err(|e| e.to_string())?;
    ensure(spec.holds && spec.correspondence.homeomorphism, || {
        format!("action spectrum: {spec:?}")
    })?;
    let eb = bridge.equibalmer_check().map_err(|e| e.to_string())?;
    ensure(eb.homeomorphism && eb.orbit_intersections_agree, || {
        format!("G-Balmer: {eb:?}")
    })?;

    let a2 = EquivariantBridge::identity(&fixtures::m_a2());
    let gm = a2.g_matsui_check().map_err(|e| e.to_string())?;
    let gm_identity = gm
        .immersion
        .as_ref()
        .is_some_and(|i| i.immersion.homeomorphism);
    ensure(gm.holds && gm_identity, || {
        format!("G-Matsui on trivial A2: {gm:?}")
    })?;
    let mod2 = EquivariantBridge::identity(&fixtures::m_mod2());
    let gs = mod2.g_serre_check().map_err(|e| e.to_string())?;
    let gs_identity = gs
        .immersion
        .as_ref()
        .is_some_and(|i| i.immersion.homeomorphism);
    ensure(gs.holds && gs_identity, || {
        format!("G-Serre on trivial mod2: {gs:?}")
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fixture_report = fixture_suite(ENUMERATION_LIMIT);
    let random_report = random_suite(
        RANDOM_SEED,
        RANDOM_MODELS,
        &RandomConfig::default(),
        ENUMERATION_LIMIT,
    );
    let elapsed = start.elapsed();
    let (fixture_report, random_report) = match (fixture_report, random_report) {
        (Ok(f), Ok(r)) => (f, r),
        (Err(e), _) | (_, Err(e)) => {
            println!("FAIL  battery did not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let both = [&fixture_report, &random_report];

    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "1 enumeration counts match the subset filter",
            enumeration_counts(),
        ),
        ("2 prime detection", prime_detection()),
        (
            "3 topology laws on fixtures and 100 random models",
            laws_pass(
                &both,
                &["topology.open-misses-closure", "topology.hochster-dual"],
            ),
        ),
        (
            "4 spectrum laws",
            laws_pass(
                &both,
                &[
                    "spectrum.closed-basis",
                    "spectrum.support-additive",
                    "spectrum.member-supports",
                    "spectrum.closure-formula",
                    "spectrum.point-closure-is-subsets",
                ],
            ),
        ),
        (
            "5 sober and spectral criteria agree",
            laws_pass(
                &both,
                &[
                    "spectrum.sober-criterion",
                    "spectrum.spectral-methods-agree",
                ],
            )
            .and_then(|_| serre_and_balmer_spectral()),
        ),
        (
            "6 immersions of the two-point and tautological supports",
            immersions(&fixture_report),
        ),
        (
            "7 equivariance on the swap bridge and trivial bridges",
            equivariance(),
        ),
        (
            "8 oracle equivalence within the time budget",
            laws_pass(
                &both,
                &["lattice.enumeration-oracle", "topology.irreducible-oracle"],
            )
            .and_then(|_| {
                ensure(elapsed <= SUITE_BUDGET, || {
                    format!("battery took {elapsed:?}")
                })
            }),
        ),
    ];

    let mut all = true;
    for (name, outcome) in &criteria {
        match outcome {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                all = false;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "battery: {} fixture models, {} random models (seed {RANDOM_SEED}), {:.1}s",
        fixture_report.models,
        random_report.models,
        elapsed.as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
