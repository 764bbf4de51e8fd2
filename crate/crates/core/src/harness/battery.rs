//! The twelve instance checks of the theorem battery. Everything is
//! exact; a check fails by returning the locus of the first broken
//! equation together with the serialized instance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::approach::{
    alexandroff, check_approach_axioms, coreflection, embed_topology, is_contraction,
    scott_distance_finite, specialization, ContractionReport, Subset,
};
use crate::balls::{check_condition_s_instance, d_scott_grid_cross_check, topologies};
use crate::costs::ExtValue;
use crate::io;
use crate::weights::{
    bar_distance, colimits, is_flat, is_scott_weight, is_weight, kan_extend, net_weight,
    precompose, yoneda_embed, WeightFn,
};

use super::gen::{
    gen_cauchy_net, gen_chain, gen_map, gen_nonexpansive_map, gen_shift, gen_space,
    gen_topology, gen_weight,
};
use super::oracles::{flat_oracle_bplus, flat_oracle_tensor_max};
use super::{CheckId, TrialConfig};

pub(super) type CheckOutcome = Result<(), (String, serde_json::Value)>;

/// Derives the per-(trial, check) generator stream: disabling checks or
/// reordering them never changes another check's instances.
fn lane_rng(config: &TrialConfig, trial: u32, check: CheckId) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(((trial as u64) << 8) | (check.index() as u64 + 1));
    rng
}

pub(super) fn run_check(config: &TrialConfig, trial: u32, check: CheckId) -> CheckOutcome {
    let mut rng = lane_rng(config, trial, check);
    match check {
        CheckId::B1 => b1_omega_sigma_identity(config, &mut rng),
        CheckId::B2 => b2_yoneda_lemma(config, &mut rng),
        CheckId::B3 => b3_flat_oracle_agreement(config, &mut rng),
        CheckId::B4 => b4_net_weights(config, &mut rng),
        CheckId::B5 => b5_scott_is_alexandroff(config, &mut rng),
        CheckId::B6 => b6_sandwich_equalities(config, &mut rng),
        CheckId::B7 => b7_contraction_iff_yoneda_continuous(config, &mut rng),
        CheckId::B8 => b8_kan_adjunction(config, &mut rng),
        CheckId::B9 => b9_table_axioms(config, &mut rng),
        CheckId::B10 => b10_compactness_criterion(config, &mut rng),
        CheckId::B11 => b11_basis_formula(config, &mut rng),
        CheckId::B12 => b12_condition_s(config, &mut rng),
    }
}

fn fail(locus: impl Into<String>, instance: serde_json::Value) -> CheckOutcome {
    Err((locus.into(), instance))
}

fn b1_omega_sigma_identity(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let instance = json!({ "space": io::space_json(&space) });
    let sigma = match scott_distance_finite(&space) {
        Ok(t) => t,
        Err(e) => return fail(format!("Scott distance failed: {e}"), instance),
    };
    let back = match specialization(&sigma) {
        Ok(s) => s,
        Err(e) => return fail(format!("specialization failed: {e}"), instance),
    };
    if back != *space {
        return fail("ΩΣ(X) differs from X", instance);
    }
    Ok(())
}

fn b2_yoneda_lemma(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let phi = gen_weight(&space, rng);
    let instance = json!({
        "space": io::space_json(&space),
        "weight": io::weight_json(&space, phi.values()),
    });
    for x in 0..space.len() {
        let yx = yoneda_embed(&space, x).expect("point exists");
        let d = bar_distance(&yx, &phi).expect("same space");
        if d != *phi.value(x) {
            return fail(
                format!("d̄(y({x}), φ) = {d} but φ({x}) = {}", phi.value(x)),
                instance,
            );
        }
    }
    Ok(())
}

fn b3_flat_oracle_agreement(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let phi = gen_weight(&space, rng);
    let instance = json!({
        "space": io::space_json(&space),
        "weight": io::weight_json(&space, phi.values()),
    });
    let direct = is_flat(&phi);
    let tensor_max = flat_oracle_tensor_max(&phi, rng);
    if direct != tensor_max {
        return fail(
            format!("is_flat = {direct} but the tensor-max oracle says {tensor_max}"),
            instance,
        );
    }
    let bplus = flat_oracle_bplus(&phi);
    if direct != bplus {
        return fail(
            format!("is_flat = {direct} but the formal-ball oracle says {bplus}"),
            instance,
        );
    }
    Ok(())
}

fn b4_net_weights(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let net = gen_cauchy_net(&space, rng);
    let instance = json!({
        "space": io::space_json(&space),
        "net": io::finite_net_json(&space, &net),
    });
    let w = match net_weight(&space, &net) {
        Ok(w) => w,
        Err(e) => return fail(format!("net weight failed: {e}"), instance),
    };
    if !is_flat(&w) {
        return fail("net weight is not flat", instance);
    }
    let descriptor = crate::spaces::NetDescriptor::Finite {
        space: space.clone(),
        net: net.clone(),
    };
    let limits = match crate::spaces::yoneda_limits(&descriptor) {
        Ok(crate::spaces::YonedaLimits::Points(p)) => p,
        other => return fail(format!("Yoneda limits came back as {other:?}"), instance),
    };
    let colims = colimits(&w);
    if limits != colims {
        return fail(
            format!("colimits {colims:?} differ from Yoneda limits {limits:?}"),
            instance,
        );
    }
    Ok(())
}

fn b5_scott_is_alexandroff(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let instance = json!({ "space": io::space_json(&space) });
    let gamma = alexandroff(&space).expect("small space");
    match scott_distance_finite(&space) {
        Ok(sigma) => {
            if sigma != gamma {
                return fail("Scott and Alexandroff tables differ", instance);
            }
        }
        Err(e) => return fail(format!("Scott distance failed: {e}"), instance),
    }
    Ok(())
}

fn b6_sandwich_equalities(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let instance = json!({ "space": io::space_json(&space) });
    let four = match topologies(&space) {
        Ok(t) => t,
        Err(e) => return fail(format!("topologies failed: {e}"), instance),
    };
    let d = four.d_scott.closed_sets();
    let c = four.c_scott.closed_sets();
    let g = four.gen_scott.closed_sets();
    if !d.is_subset(c) || !c.is_subset(g) {
        return fail("sandwich inclusions fail", instance);
    }
    if d != c || c != g {
        return fail("finite-space topology equalities fail", instance);
    }
    let gamma_coreflection =
        match coreflection(&alexandroff(&space).expect("small space")) {
            Ok(t) => t,
            Err(e) => return fail(format!("coreflection failed: {e}"), instance),
        };
    if gamma_coreflection != four.open_ball {
        return fail(
            "the open-ball topology differs from the coreflection of Γ(d)",
            instance,
        );
    }
    if four.c_scott != four.open_ball {
        return fail("ι(σ) differs from the open-ball topology", instance);
    }
    match d_scott_grid_cross_check(&space) {
        Ok(true) => Ok(()),
        Ok(false) => fail("the Bφ grid cross-check fails", instance),
        Err(e) => fail(format!("cross-check errored: {e}"), instance),
    }
}

fn b7_contraction_iff_yoneda_continuous(
    config: &TrialConfig,
    rng: &mut ChaCha8Rng,
) -> CheckOutcome {
    let source = gen_space(config, rng);
    let target = gen_space(config, rng);
    let f = gen_map(&source, &target, rng);
    let instance = json!({
        "source": io::space_json(&source),
        "target": io::space_json(&target),
        "map": f.assignment(),
    });
    let sigma_x = match scott_distance_finite(&source) {
        Ok(t) => t,
        Err(e) => return fail(format!("Scott distance failed: {e}"), instance),
    };
    let sigma_y = match scott_distance_finite(&target) {
        Ok(t) => t,
        Err(e) => return fail(format!("Scott distance failed: {e}"), instance),
    };
    let continuous = f.is_yoneda_continuous();
    let contraction = matches!(
        is_contraction(f.assignment(), &sigma_x, &sigma_y).expect("total map"),
        ContractionReport::Contraction
    );
    if continuous != contraction {
        return fail(
            format!("Yoneda continuity = {continuous} but Σf contraction = {contraction}"),
            instance,
        );
    }
    Ok(())
}

fn b8_kan_adjunction(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let source = gen_space(config, rng);
    let target = gen_space(config, rng);
    // The Kan adjunction is stated for non-expansive maps; without that
    // ξ∘f need not be a weight at all.
    let f = gen_nonexpansive_map(&source, &target, rng);
    let phi = gen_weight(&source, rng);
    let xi = gen_weight(&target, rng);
    let instance = json!({
        "source": io::space_json(&source),
        "target": io::space_json(&target),
        "map": f.assignment(),
        "phi": io::weight_json(&source, phi.values()),
        "xi": io::weight_json(&target, xi.values()),
    });
    let extended = match kan_extend(&f, &phi) {
        Ok(w) => w,
        Err(e) => return fail(format!("Kan extension failed: {e}"), instance),
    };
    let lhs = bar_distance(&extended, &xi).expect("same space");
    let restricted = precompose(&f, &xi).expect("same space");
    let rhs = bar_distance(&phi, &restricted).expect("same space");
    if lhs != rhs {
        return fail(
            format!("d̄(f̄φ, ξ) = {lhs} but d̄(φ, ξ∘f) = {rhs}"),
            instance,
        );
    }
    // Tensor compatibility rides along: f̄(φ) ⊗ ψ = φ ⊗ (ψ∘f).
    let psi = super::gen::gen_coweight(&target, rng);
    let lhs = crate::weights::tensor(&extended, &psi).expect("same space");
    let pulled = crate::weights::precompose_coweight(&f, &psi).expect("same space");
    let rhs = crate::weights::tensor(&phi, &pulled).expect("same space");
    if lhs != rhs {
        return fail(
            format!("f̄(φ)⊗ψ = {lhs} but φ⊗(ψ∘f) = {rhs}"),
            instance,
        );
    }
    Ok(())
}

fn b9_table_axioms(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let instance = json!({ "space": io::space_json(&space) });
    let gamma = alexandroff(&space).expect("small space");
    let report = check_approach_axioms(&gamma);
    if !report.ok() {
        return fail(
            format!("Γ(d) breaks the axioms: {:?}", report.witnesses.first()),
            instance,
        );
    }
    if let Ok(sigma) = scott_distance_finite(&space) {
        let report = check_approach_axioms(&sigma);
        if !report.ok() {
            return fail(
                format!("σ breaks the axioms: {:?}", report.witnesses.first()),
                instance,
            );
        }
    }
    let topology = gen_topology(config, rng);
    let instance = json!({
        "space": io::space_json(&space),
        "topology": io::topology_json(&topology),
    });
    let table = match embed_topology(&topology) {
        Ok(t) => t,
        Err(e) => return fail(format!("ω(T) failed: {e}"), instance),
    };
    let report = check_approach_axioms(&table);
    if !report.ok() {
        return fail(
            format!("ω(T) breaks the axioms: {:?}", report.witnesses.first()),
            instance,
        );
    }
    match coreflection(&table) {
        Ok(t) if t == topology => Ok(()),
        Ok(_) => fail("ι(ω(T)) differs from T", instance),
        Err(e) => fail(format!("coreflection failed: {e}"), instance),
    }
}

fn b10_compactness_criterion(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let instance = json!({ "space": io::space_json(&space) });
    let mut radii: Vec<ExtValue> = vec![
        ExtValue::zero(),
        ExtValue::half(&ExtValue::one()),
        ExtValue::one(),
        ExtValue::Infinity,
    ];
    radii.extend(space.positive_finite_entries());
    radii.sort();
    radii.dedup();
    for b in 0..space.len() {
        let compact =
            crate::algebraic::is_compact_finite(&space, b).expect("point exists");
        let mut criterion = true;
        for r in &radii {
            let values: Vec<ExtValue> = (0..space.len())
                .map(|y| r.tminus(space.d(b, y)))
                .collect();
            if !is_weight(&space, &values).expect("sized") {
                criterion = false;
                break;
            }
            let w = WeightFn::new(space.clone(), values).expect("checked");
            if !is_scott_weight(&w) {
                criterion = false;
                break;
            }
        }
        if compact != criterion {
            return fail(
                format!("point {b}: compact = {compact}, r⊖d(b,−) criterion = {criterion}"),
                instance,
            );
        }
        if !compact {
            return fail(format!("point {b} of a finite space is not compact"), instance);
        }
    }
    Ok(())
}

fn b11_basis_formula(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let instance = json!({ "space": io::space_json(&space) });
    let sigma = match scott_distance_finite(&space) {
        Ok(t) => t,
        Err(e) => return fail(format!("Scott distance failed: {e}"), instance),
    };
    let spec = crate::algebraic::AlgebraicSpec::finite(space.clone());
    let n = space.len();
    for x in 0..n {
        for mask in 0..(1u32 << n) {
            let members: Vec<crate::algebraic::AlgPoint> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(crate::algebraic::AlgPoint::Point)
                .collect();
            let got = match crate::algebraic::scott_distance_algebraic(
                &spec,
                &crate::algebraic::AlgPoint::Point(x),
                &members,
                &ExtValue::one(),
                true,
            ) {
                Ok(iv) => iv,
                Err(e) => return fail(format!("basis formula failed: {e}"), instance),
            };
            if !got.is_exact() || got.lo != *sigma.delta(x, mask as Subset) {
                return fail(
                    format!(
                        "σ({x}, {mask:#b}): basis formula {}..{} vs table {}",
                        got.lo,
                        got.hi,
                        sigma.delta(x, mask as Subset)
                    ),
                    instance,
                );
            }
        }
    }
    Ok(())
}

fn b12_condition_s(config: &TrialConfig, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let space = gen_space(config, rng);
    let chains = vec![gen_chain(&space, rng), gen_chain(&space, rng)];
    let shifts = vec![gen_shift(rng), gen_shift(rng)];
    let instance = json!({ "space": io::space_json(&space) });
    match check_condition_s_instance(&space, &chains, &shifts) {
        Ok(report) => {
            for case in &report.cases {
                if !case.holds {
                    return fail(
                        format!(
                            "chain {} with shift {}: join existence is not biconditional",
                            case.chain_index, case.shift
                        ),
                        instance,
                    );
                }
                if case.join.is_none() || case.shifted_join.is_none() {
                    return fail(
                        format!(
                            "chain {} with shift {}: a directed chain in a finite space lost its join",
                            case.chain_index, case.shift
                        ),
                        instance,
                    );
                }
            }
            Ok(())
        }
        Err(e) => fail(format!("condition (S) instance failed: {e}"), instance),
    }
}

/// Used by the counterexample-search verb: compares the c-Scott and
/// generalized-Scott closed families on one generated space.
pub(super) fn c_scott_vs_gen_scott(config: &TrialConfig, trial: u32) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(((trial as u64) << 8) | 0xCC);
    let space = gen_space(config, &mut rng);
    let instance = json!({ "space": io::space_json(&space) });
    let four = match topologies(&space) {
        Ok(t) => t,
        Err(e) => return fail(format!("topologies failed: {e}"), instance),
    };
    if four.c_scott != four.gen_scott {
        return fail("c-Scott differs from generalized Scott", instance);
    }
    Ok(())
}
