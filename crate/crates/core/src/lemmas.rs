//! Exhaustive verification of the basic-bisection identities, the ample
//! structure of `G(S)`, germ coherence, and the isomorphism `ε: S → Γ_c(G(S))`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::bisection::{all_bisections, epsilon, is_bisection, Bisection, BisectionMonoid};
use crate::config::Caps;
use crate::germ::{alpha, build_germ_groupoid, canonical_germ, germ_equivalent, GermGroupoid};
use crate::monoid::FiniteInverseMonoid;
use crate::report::{Check, Report};
use crate::stone::Character;
use crate::Result;

pub const SUBSET_UNDER_ORDER: &str = "ψ ≤ φ gives [ψ,x] = [φ,x] and U_ψ ⊆ U_φ";
pub const INTERSECTION_AS_UNION: &str = "U_φ ∩ U_ψ = ⋃ U_φq over idempotents q with φq = ψq";
pub const INTERSECTION_IS_MEET: &str = "U_φ ∩ U_ψ = U_(φ∧ψ)";
pub const ORTHOGONAL_DISJOINT: &str = "φ ⊥ ψ gives U_φ ∩ U_ψ = ∅";
pub const ORTHOGONAL_UNION: &str = "φ ⊥ ψ gives U_φ ∪ U_ψ = U_(φ∨ψ)";
pub const DIFFERENCE: &str = "U_φ ∖ U_ψ = U_(φ∖(φ∧ψ))";
pub const RESTRICTION: &str = "U_φp = { [φ,x] : x(φ⁻¹φp) = 1 } for idempotent p";

pub const BASIC_ARE_BISECTIONS: &str = "every U_φ is a bisection";
pub const BASIC_COVER: &str = "the sets U_φ cover G(S)";
pub const BASIS: &str = "every arrow set is a union of sets U_φe";
pub const THETA: &str = "θ_φ: [φ,x] ↦ x is a bijection U_φ → Ê_φ matching the source map";
pub const UNIT_SPACE: &str = "unit space is { [1,x] }";

pub const EQUIVALENCE_CANONICAL: &str = "germ relation agrees with the canonical key (a, φ·a)";
pub const EQUIVALENCE_RELATION: &str = "germ relation is an equivalence relation";
pub const PRODUCT_WELL_DEFINED: &str = "germ product is independent of representatives";
pub const ALPHA_INVOLUTIVE: &str = "α_φ⁻¹ ∘ α_φ = id on Ê_φ, with α_φ(Ê_φ) ⊆ Ê_φ⁻¹";
pub const INVERSE_BISECTION: &str = "U_φ⁻¹ = { g⁻¹ : g ∈ U_φ }";
pub const INVERSE_GERMS: &str = "[φ,x]⁻¹·[φ,x] = [1,x] and [φ,x]·[φ,x]⁻¹ = range unit";
pub const GROUPOID_AXIOMS: &str = "groupoid axioms (endpoints, units, associativity, inverses)";

pub const EPS_HOMOMORPHISM: &str = "ε(φψ) = ε(φ)·ε(ψ)";
pub const EPS_INJECTIVE: &str = "ε is injective";
pub const EPS_SURJECTIVE: &str = "ε is surjective onto Γ_c(G(S))";
pub const EPS_INVERSE: &str = "ε(φ⁻¹) = ε(φ)⁻¹";
pub const EPS_ORTHOGONALIZE: &str =
    "χ = φ₂∖(φ₂∧φ₁) is orthogonal to φ₁ and U_φ₁ ∪ U_φ₂ = U_(φ₁∨χ) when the union is a bisection";
pub const EPS_INDUCTION: &str = "orthogonalizing a cover of each bisection W yields ψ with U_ψ = W";

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

fn first_failure<T: Sync>(
    items: &[T],
    bad: impl Fn(&T) -> Option<String> + Sync + Send,
) -> Option<String> {
    items.par_iter().find_map_first(bad)
}

/// Set identities satisfied by the basic bisections, swept over all pairs.
pub fn verify_intersection_lemma(gg: &GermGroupoid) -> Result<Report> {
    let m = gg.monoid();
    let n = m.len();
    let u = epsilon(gg)?;
    let nm = |a: usize| m.name(a).to_owned();
    let all = pairs(n);
    let detail = format!("{} pairs", all.len());
    let mut report = Report::new("Basic bisection identities");

    let w = first_failure(&all, |&(phi, psi)| {
        if !m.leq(psi, phi) {
            return None;
        }
        for &x in gg.characters() {
            if gg.algebra().eval(x, m.source_idempotent(psi)) {
                let same = canonical_germ(gg.algebra(), phi, x).ok()
                    == canonical_germ(gg.algebra(), psi, x).ok();
                if !same {
                    return Some(format!(
                        "[{}, x_{}] ≠ [{}, x_{}]",
                        nm(psi),
                        nm(x.atom()),
                        nm(phi),
                        nm(x.atom())
                    ));
                }
            }
        }
        (!u[psi].arrows().is_subset(u[phi].arrows()))
            .then(|| format!("U_{} ⊄ U_{}", nm(psi), nm(phi)))
    });
    report.push(Check::from_witness(SUBSET_UNDER_ORDER, detail.clone(), w));

    let idem = m.idempotents();
    let w = first_failure(&all, |&(phi, psi)| {
        let cap: BTreeSet<usize> = u[phi]
            .arrows()
            .intersection(u[psi].arrows())
            .copied()
            .collect();
        let union: BTreeSet<usize> = idem
            .iter()
            .filter(|&&q| m.mul(phi, q) == m.mul(psi, q))
            .flat_map(|&q| u[m.mul(phi, q)].arrows().iter().copied())
            .collect();
        (cap != union).then(|| format!("φ = {}, ψ = {}", nm(phi), nm(psi)))
    });
    report.push(Check::from_witness(
        INTERSECTION_AS_UNION,
        detail.clone(),
        w,
    ));

    let w = first_failure(&all, |&(phi, psi)| {
        let cap: BTreeSet<usize> = u[phi]
            .arrows()
            .intersection(u[psi].arrows())
            .copied()
            .collect();
        match m.meet_opt(phi, psi) {
            Some(mt) if u[mt].arrows() == &cap => None,
            _ => Some(format!("φ = {}, ψ = {}", nm(phi), nm(psi))),
        }
    });
    report.push(Check::from_witness(INTERSECTION_IS_MEET, detail.clone(), w));

    let orth: Vec<(usize, usize)> = all.iter().copied().filter(|&(a, b)| m.perp(a, b)).collect();
    let odetail = format!("{} orthogonal pairs", orth.len());
    let w = first_failure(&orth, |&(phi, psi)| {
        (!u[phi].arrows().is_disjoint(u[psi].arrows()))
            .then(|| format!("φ = {}, ψ = {}", nm(phi), nm(psi)))
    });
    report.push(Check::from_witness(ORTHOGONAL_DISJOINT, odetail.clone(), w));
    let w = first_failure(&orth, |&(phi, psi)| {
        let cup: BTreeSet<usize> = u[phi].arrows().union(u[psi].arrows()).copied().collect();
        match m.join_opt(phi, psi) {
            Some(j) if u[j].arrows() == &cup => None,
            _ => Some(format!("φ = {}, ψ = {}", nm(phi), nm(psi))),
        }
    });
    report.push(Check::from_witness(ORTHOGONAL_UNION, odetail, w));

    let w = first_failure(&all, |&(phi, psi)| {
        let diff: BTreeSet<usize> = u[phi]
            .arrows()
            .difference(u[psi].arrows())
            .copied()
            .collect();
        let rest = m
            .meet_opt(phi, psi)
            .and_then(|mt| m.relative_complement(phi, mt).ok());
        match rest {
            Some(r) if u[r].arrows() == &diff => None,
            _ => Some(format!("φ = {}, ψ = {}", nm(phi), nm(psi))),
        }
    });
    report.push(Check::from_witness(DIFFERENCE, detail, w));

    let by_idem: Vec<(usize, usize)> = (0..n)
        .flat_map(|phi| idem.iter().map(move |&p| (phi, p)))
        .collect();
    let w = first_failure(&by_idem, |&(phi, p)| {
        let e = m.mul(m.source_idempotent(phi), p);
        let expected: Option<BTreeSet<usize>> = gg
            .characters()
            .iter()
            .filter(|&&x| gg.algebra().eval(x, e))
            .map(|&x| gg.arrow_of(phi, x).ok())
            .collect();
        (expected.as_ref() != Some(u[m.mul(phi, p)].arrows()))
            .then(|| format!("φ = {}, p = {}", nm(phi), nm(p)))
    });
    report.push(Check::from_witness(
        RESTRICTION,
        format!("{} element-idempotent pairs", by_idem.len()),
        w,
    ));
    Ok(report)
}

/// Bisection, covering, basis and source-map properties of `{U_φ}`.
pub fn verify_ample_structure(gg: &GermGroupoid) -> Result<Report> {
    let m = gg.monoid();
    let g = gg.groupoid();
    let u = epsilon(gg)?;
    let nm = |a: usize| m.name(a).to_owned();
    let mut report = Report::new("Ample structure of G(S)");

    let w = (0..m.len())
        .find(|&phi| !is_bisection(g, u[phi].arrows()))
        .map(|phi| format!("U_{} is not a bisection", nm(phi)));
    report.push(Check::from_witness(
        BASIC_ARE_BISECTIONS,
        format!("{} sets", m.len()),
        w,
    ));

    let covered: BTreeSet<usize> = u.iter().flat_map(|b| b.arrows().iter().copied()).collect();
    let w = (0..g.len())
        .find(|a| !covered.contains(a))
        .map(|a| format!("arrow {} is in no U_φ", g.label(a)));
    report.push(Check::from_witness(
        BASIC_COVER,
        format!("{} basic bisections over {} arrows", m.len(), g.len()),
        w,
    ));

    // Each arrow [φ, x_a] is the singleton U_φa, so every arrow set is a union of such sets.
    let w = gg.germs().iter().enumerate().find_map(|(i, germ)| {
        let phi = germ.element();
        let pa = m.mul(phi, germ.atom());
        let singleton: BTreeSet<usize> = [i].into();
        (u[pa].arrows() != &singleton).then(|| format!("U_{} ≠ {{{}}}", nm(pa), g.label(i)))
    });
    report.push(Check::from_witness(
        BASIS,
        format!("{} singletons", g.len()),
        w,
    ));

    let w = (0..m.len()).find_map(|phi| {
        let e = m.source_idempotent(phi);
        let support: BTreeSet<Character> = gg
            .characters()
            .iter()
            .copied()
            .filter(|&x| gg.algebra().eval(x, e))
            .collect();
        let images: BTreeSet<Character> = u[phi]
            .arrows()
            .iter()
            .map(|&a| gg.germs()[a].character())
            .collect();
        if images != support || images.len() != u[phi].len() {
            return Some(format!(
                "θ_{} is not a bijection onto Ê_{}",
                nm(phi),
                nm(phi)
            ));
        }
        u[phi].arrows().iter().find_map(|&a| {
            let x = gg.germs()[a].character();
            (g.source(a) != gg.arrow(gg.unit(x)))
                .then(|| format!("source of {} is not [1, x_{}]", g.label(a), nm(x.atom())))
        })
    });
    report.push(Check::from_witness(
        THETA,
        format!("{} elements", m.len()),
        w,
    ));

    let units: BTreeSet<usize> = g.units().iter().copied().collect();
    let expected: BTreeSet<usize> = gg
        .characters()
        .iter()
        .map(|&x| gg.arrow(gg.unit(x)))
        .collect();
    let w = (units != expected || &units != u[m.one()].arrows()).then(|| {
        format!(
            "{} units, {} characters",
            units.len(),
            gg.characters().len()
        )
    });
    report.push(Check::from_witness(
        UNIT_SPACE,
        format!(
            "{} units, {} characters",
            units.len(),
            gg.characters().len()
        ),
        w,
    ));
    Ok(report)
}

/// Germ-level coherence: the literal relation, representative independence
/// of the product, α, and inverses.
pub fn verify_germ_coherence(gg: &GermGroupoid) -> Result<Report> {
    let m = gg.monoid();
    let alg = gg.algebra();
    let g = gg.groupoid();
    let nm = |a: usize| m.name(a).to_owned();
    let mut report = Report::new("Germ coherence");

    // S ∗ Ê(S), grouped by character
    let reps: Vec<(usize, Character)> = (0..m.len())
        .flat_map(|phi| {
            gg.characters()
                .iter()
                .filter(move |&&x| alg.eval(x, m.source_idempotent(phi)))
                .map(move |&x| (phi, x))
        })
        .collect();
    let rep_pairs: Vec<(usize, usize)> = pairs(reps.len());
    let literal: Vec<bool> = rep_pairs
        .par_iter()
        .map(|&(i, j)| germ_equivalent(alg, reps[i], reps[j]).unwrap_or(false))
        .collect();
    let keys: Vec<_> = reps
        .iter()
        .map(|&(phi, x)| canonical_germ(alg, phi, x))
        .collect::<Result<_>>()?;
    let w = rep_pairs.iter().zip(&literal).find_map(|(&(i, j), &lit)| {
        (lit != (keys[i] == keys[j])).then(|| {
            format!(
                "({}, x_{}) vs ({}, x_{})",
                nm(reps[i].0),
                nm(reps[i].1.atom()),
                nm(reps[j].0),
                nm(reps[j].1.atom())
            )
        })
    });
    report.push(Check::from_witness(
        EQUIVALENCE_CANONICAL,
        format!(
            "{} pairs over {} representatives",
            rep_pairs.len(),
            reps.len()
        ),
        w,
    ));

    let k = reps.len();
    let rel = |i: usize, j: usize| literal[i * k + j];
    let w = (0..k).into_par_iter().find_map_first(|i| {
        if !rel(i, i) {
            return Some(format!(
                "({}, x_{}) not related to itself",
                nm(reps[i].0),
                nm(reps[i].1.atom())
            ));
        }
        for j in 0..k {
            if rel(i, j) != rel(j, i) {
                return Some(format!("asymmetric at representatives {i}, {j}"));
            }
            if rel(i, j) {
                if let Some(l) = (0..k).find(|&l| rel(j, l) && !rel(i, l)) {
                    return Some(format!("not transitive at representatives {i}, {j}, {l}"));
                }
            }
        }
        None
    });
    report.push(Check::from_witness(
        EQUIVALENCE_RELATION,
        format!("{k} representatives"),
        w,
    ));

    let mut classes: HashMap<usize, Vec<(usize, Character)>> = HashMap::new();
    for (rep, key) in reps.iter().zip(&keys) {
        classes.entry(gg.arrow(*key)).or_default().push(*rep);
    }
    let composable: Vec<(usize, usize, usize)> = g.composition_triples().collect();
    let w = composable.par_iter().find_map_first(|&(a, b, ab)| {
        for &(phi, x) in &classes[&a] {
            for &(psi, y) in &classes[&b] {
                let ok = alpha(alg, psi, y).ok() == Some(x)
                    && canonical_germ(alg, m.mul(phi, psi), y)
                        .ok()
                        .map(|k| gg.arrow(k))
                        == Some(ab);
                if !ok {
                    return Some(format!(
                        "[{}, x_{}]·[{}, x_{}]",
                        nm(phi),
                        nm(x.atom()),
                        nm(psi),
                        nm(y.atom())
                    ));
                }
            }
        }
        None
    });
    let rep_products: usize = composable
        .iter()
        .map(|(a, b, _)| classes[a].len() * classes[b].len())
        .sum();
    report.push(Check::from_witness(
        PRODUCT_WELL_DEFINED,
        format!(
            "{} composable class pairs, {rep_products} representative pairs",
            composable.len()
        ),
        w,
    ));

    let w = reps.iter().find_map(|&(phi, x)| {
        let y = alpha(alg, phi, x).ok()?;
        let back = alpha(alg, m.inv(phi), y).ok();
        (back != Some(x)).then(|| format!("φ = {}, x = x_{}", nm(phi), nm(x.atom())))
    });
    // alpha() itself rejects y outside Ê_φ⁻¹ via the precondition on the second call
    let w = w.or_else(|| {
        reps.iter()
            .find(|&&(phi, x)| alpha(alg, phi, x).is_err())
            .map(|&(phi, x)| format!("α_{} undefined at x_{}", nm(phi), nm(x.atom())))
    });
    report.push(Check::from_witness(
        ALPHA_INVOLUTIVE,
        format!("{} representatives", reps.len()),
        w,
    ));

    let u = epsilon(gg)?;
    let w = (0..m.len()).find_map(|phi| {
        let inv: BTreeSet<usize> = u[phi].arrows().iter().map(|&a| g.inverse(a)).collect();
        (u[m.inv(phi)].arrows() != &inv).then(|| format!("φ = {}", nm(phi)))
    });
    report.push(Check::from_witness(
        INVERSE_BISECTION,
        format!("{} elements", m.len()),
        w,
    ));

    let w = gg.germs().iter().find_map(|&germ| {
        let inv = gg.inverse_germ(germ).ok()?;
        let left = gg.compose_germs(inv, germ).ok();
        let right = gg.compose_germs(germ, inv).ok();
        let range = gg.range(germ).ok();
        (left != Some(gg.source(germ)) || right != range || gg.inverse_germ(inv).ok() != Some(germ))
            .then(|| format!("germ {}", nm(germ.element())))
    });
    report.push(Check::from_witness(
        INVERSE_GERMS,
        format!("{} germs", g.len()),
        w,
    ));

    report.push(Check::pass(
        GROUPOID_AXIOMS,
        format!("validated at construction over {} arrows", g.len()),
    ));
    Ok(report)
}

/// Result of running the isomorphism suite, keeping the built objects.
#[derive(Debug, Clone)]
pub struct EpsilonOutcome {
    pub groupoid: GermGroupoid,
    pub gamma: BisectionMonoid,
    pub report: Report,
}

/// Builds `G(S)` and `Γ_c(G(S))` and checks that `φ ↦ U_φ` is an isomorphism.
pub fn verify_epsilon_isomorphism(s: &FiniteInverseMonoid, caps: &Caps) -> Result<EpsilonOutcome> {
    let gg = build_germ_groupoid(s, caps)?;
    let gamma = all_bisections(gg.groupoid(), caps)?;
    let report = epsilon_report(&gg, &gamma)?;
    Ok(EpsilonOutcome {
        groupoid: gg,
        gamma,
        report,
    })
}

pub fn epsilon_report(gg: &GermGroupoid, gamma: &BisectionMonoid) -> Result<Report> {
    let m = gg.monoid();
    let g = gg.groupoid();
    let n = m.len();
    let u = epsilon(gg)?;
    let nm = |a: usize| m.name(a).to_owned();
    let mut report = Report::new("Isomorphism S → Γ_c(G(S))");
    let all = pairs(n);

    let w = first_failure(&all, |&(phi, psi)| {
        (u[phi].product(&u[psi], g) != *u[m.mul(phi, psi)].arrows())
            .then(|| format!("φ = {}, ψ = {}", nm(phi), nm(psi)))
    });
    report.push(Check::from_witness(
        EPS_HOMOMORPHISM,
        format!("{} pairs", all.len()),
        w,
    ));

    let mut seen: HashMap<&Bisection, usize> = HashMap::new();
    let w = (0..n).find_map(|phi| {
        seen.insert(&u[phi], phi)
            .map(|other| format!("U_{} = U_{}", nm(other), nm(phi)))
    });
    report.push(Check::from_witness(
        EPS_INJECTIVE,
        format!("{n} elements"),
        w,
    ));

    let image: BTreeSet<&Bisection> = u.iter().collect();
    let w = gamma
        .bisections()
        .iter()
        .find(|b| !image.contains(b))
        .map(|b| format!("{} is not a U_φ", b.label(g)))
        .or_else(|| {
            u.iter()
                .find(|b| gamma.index_of(b).is_none())
                .map(|b| format!("{} is not in Γ_c", b.label(g)))
        });
    report.push(Check::from_witness(
        EPS_SURJECTIVE,
        format!("|S| = {n}, |Γ_c| = {}", gamma.len()),
        w,
    ));

    let w = (0..n)
        .find_map(|phi| (u[m.inv(phi)] != u[phi].inverse(g)).then(|| format!("φ = {}", nm(phi))));
    report.push(Check::from_witness(EPS_INVERSE, format!("{n} elements"), w));

    let bisecting: Vec<(usize, usize)> = all
        .iter()
        .copied()
        .filter(|&(a, b)| is_bisection(g, u[a].arrows().union(u[b].arrows())))
        .collect();
    let w = first_failure(&bisecting, |&(p1, p2)| {
        let chi = m
            .meet_opt(p2, p1)
            .and_then(|mt| m.relative_complement(p2, mt).ok())?;
        let cup: BTreeSet<usize> = u[p1].arrows().union(u[p2].arrows()).copied().collect();
        let ok =
            m.perp(p1, chi) && m.join_opt(p1, chi).map(|j| u[j].arrows() == &cup) == Some(true);
        (!ok).then(|| format!("φ₁ = {}, φ₂ = {}, χ = {}", nm(p1), nm(p2), nm(chi)))
    })
    .or_else(|| {
        bisecting
            .iter()
            .find(|&&(p1, p2)| {
                m.meet_opt(p2, p1)
                    .and_then(|mt| m.relative_complement(p2, mt).ok())
                    .is_none()
            })
            .map(|&(p1, p2)| format!("φ₂∖(φ₂∧φ₁) undefined for φ₁ = {}, φ₂ = {}", nm(p1), nm(p2)))
    });
    report.push(Check::from_witness(
        EPS_ORTHOGONALIZE,
        format!("{} pairs with bisecting union", bisecting.len()),
        w,
    ));

    // Cover W by the singletons U_φa of its arrows and fold them together as
    // ψ ← ψ ∨ (φ∖(φ∧ψ)).
    let w = gamma.bisections().iter().find_map(|b| {
        let mut psi = m.zero();
        for &a in b.arrows() {
            let germ = gg.germs()[a];
            let piece = m.mul(germ.element(), germ.atom());
            let chi = m
                .meet_opt(piece, psi)
                .and_then(|mt| m.relative_complement(piece, mt).ok());
            match chi
                .filter(|&c| m.perp(psi, c))
                .and_then(|c| m.join_opt(psi, c))
            {
                Some(j) => psi = j,
                None => {
                    return Some(format!(
                        "orthogonalization breaks down inside {}",
                        b.label(g)
                    ))
                }
            }
        }
        (&u[psi] != b).then(|| format!("U_{} ≠ {}", nm(psi), b.label(g)))
    });
    report.push(Check::from_witness(
        EPS_INDUCTION,
        format!("{} bisections", gamma.len()),
        w,
    ));
    Ok(report)
}
