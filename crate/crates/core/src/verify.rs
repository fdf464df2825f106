//! Exhaustive axiom checks for Boolean inverse monoids.

use rayon::prelude::*;

use crate::monoid::FiniteInverseMonoid;
use crate::report::{Check, Report};

pub const INVERSE_LAWS: &str = "inverse semigroup laws (associativity, unique inverses)";
pub const ZERO_ONE: &str = "zero is absorbing, identity is two-sided";
pub const IDEMPOTENTS_COMMUTE: &str = "idempotents commute";
pub const PARTIAL_ORDER: &str = "natural order is a partial order";
pub const IDEMPOTENT_MEETS: &str = "meet of idempotents is their product";
pub const MEETS_EXIST: &str = "all pairwise meets exist";
pub const JOINS_EXIST: &str = "orthogonal joins exist";
pub const LEFT_DISTRIBUTIVE: &str = "left multiplication distributes over orthogonal joins";
pub const RIGHT_DISTRIBUTIVE: &str = "right multiplication distributes over orthogonal joins";
pub const IDEMPOTENT_LATTICE: &str = "idempotents form a bounded distributive lattice";
pub const IDEMPOTENT_COMPLEMENTS: &str = "every idempotent has a complement";
pub const RELATIVE_COMPLEMENTS: &str = "relative complements exist and are unique";

/// Runs every Boolean-inverse-monoid axiom; failures carry the first
/// counterexample in canonical element order.
pub fn verify_boolean_inverse_monoid(m: &FiniteInverseMonoid) -> Report {
    let n = m.len();
    let nm = |a: usize| m.name(a).to_owned();
    let mut report = Report::new("Boolean inverse monoid axioms");

    report.push(Check::pass(
        INVERSE_LAWS,
        format!("validated at construction over {n}³ triples"),
    ));
    report.push(Check::pass(
        ZERO_ONE,
        format!("validated at construction over {n} elements"),
    ));

    let idem = m.idempotents();
    let w = first_pair(idem, idem, |p, q| m.mul(p, q) != m.mul(q, p))
        .map(|(p, q)| format!("{}·{} ≠ {}·{}", nm(p), nm(q), nm(q), nm(p)));
    report.push(Check::from_witness(
        IDEMPOTENTS_COMMUTE,
        format!("{} idempotents", idem.len()),
        w,
    ));

    let w = (0..n).into_par_iter().find_map_first(|a| {
        if !m.leq(a, a) {
            return Some(format!("{} ≰ {}", nm(a), nm(a)));
        }
        for b in m.above(a).ones() {
            if b != a && m.leq(b, a) {
                return Some(format!("{} ≤ {} ≤ {} but distinct", nm(a), nm(b), nm(a)));
            }
            if !m.above(b).is_subset(m.above(a)) {
                let c = m.above(b).difference(m.above(a)).next().unwrap();
                return Some(format!(
                    "{} ≤ {} ≤ {} but {} ≰ {}",
                    nm(a),
                    nm(b),
                    nm(c),
                    nm(a),
                    nm(c)
                ));
            }
        }
        None
    });
    report.push(Check::from_witness(
        PARTIAL_ORDER,
        format!("{n} elements"),
        w,
    ));

    let w = first_pair(idem, idem, |p, q| m.meet_opt(p, q) != Some(m.mul(p, q)))
        .map(|(p, q)| format!("{} ∧ {} ≠ {}·{}", nm(p), nm(q), nm(p), nm(q)));
    report.push(Check::from_witness(
        IDEMPOTENT_MEETS,
        format!("{} pairs", idem.len().pow(2)),
        w,
    ));

    let all: Vec<usize> = (0..n).collect();
    let w = first_pair(&all, &all, |a, b| m.meet_opt(a, b).is_none())
        .map(|(a, b)| format!("no greatest lower bound for {} and {}", nm(a), nm(b)));
    report.push(Check::from_witness(
        MEETS_EXIST,
        format!("{} pairs", n * n),
        w,
    ));

    let orthogonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| m.perp(a, b))
        .collect();
    let w = orthogonal
        .par_iter()
        .find_first(|&&(a, b)| m.join_opt(a, b).is_none())
        .map(|&(a, b)| format!("orthogonal {} and {} have no join", nm(a), nm(b)));
    let joins_ok = w.is_none();
    report.push(Check::from_witness(
        JOINS_EXIST,
        format!("{} orthogonal pairs", orthogonal.len()),
        w,
    ));

    let detail = format!("{} orthogonal pairs × {n} multipliers", orthogonal.len());
    if joins_ok {
        let sweep = |left: bool| {
            orthogonal.par_iter().find_map_first(|&(a, b)| {
                let ab = m.join_opt(a, b).unwrap();
                (0..n).find_map(|c| {
                    let (lhs, ca, cb) = if left {
                        (m.mul(c, ab), m.mul(c, a), m.mul(c, b))
                    } else {
                        (m.mul(ab, c), m.mul(a, c), m.mul(b, c))
                    };
                    (m.join_opt(ca, cb) != Some(lhs)).then(|| {
                        if left {
                            format!(
                                "{c}·({a} ∨ {b}) ≠ {c}·{a} ∨ {c}·{b}",
                                c = nm(c),
                                a = nm(a),
                                b = nm(b)
                            )
                        } else {
                            format!(
                                "({a} ∨ {b})·{c} ≠ {a}·{c} ∨ {b}·{c}",
                                c = nm(c),
                                a = nm(a),
                                b = nm(b)
                            )
                        }
                    })
                })
            })
        };
        report.push(Check::from_witness(
            LEFT_DISTRIBUTIVE,
            detail.clone(),
            sweep(true),
        ));
        report.push(Check::from_witness(
            RIGHT_DISTRIBUTIVE,
            detail,
            sweep(false),
        ));
    } else {
        for name in [LEFT_DISTRIBUTIVE, RIGHT_DISTRIBUTIVE] {
            report.push(Check::fail(
                name,
                detail.clone(),
                "skipped: orthogonal joins missing",
            ));
        }
    }

    report.push(idempotent_lattice(m));
    report.push(idempotent_complements(m));

    let below_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| m.below(a).ones().map(move |c| (a, c)))
        .collect();
    let w = below_pairs.par_iter().find_map_first(|&(a, c)| {
        let k = m.complement_candidates(a, c).len();
        (k != 1).then(|| format!("{} \\ {} has {k} candidates", nm(a), nm(c)))
    });
    report.push(Check::from_witness(
        RELATIVE_COMPLEMENTS,
        format!("{} pairs c ≤ a", below_pairs.len()),
        w,
    ));

    report
}

/// Least upper bound of two idempotents within the idempotents.
fn idempotent_join(m: &FiniteInverseMonoid, p: usize, q: usize) -> Option<usize> {
    let idem = m.idempotents();
    let upper: Vec<usize> = idem
        .iter()
        .copied()
        .filter(|&r| m.leq(p, r) && m.leq(q, r))
        .collect();
    upper
        .iter()
        .copied()
        .find(|&r| upper.iter().all(|&s| m.leq(r, s)))
}

fn idempotent_lattice(m: &FiniteInverseMonoid) -> Check {
    let idem = m.idempotents();
    let nm = |a: usize| m.name(a).to_owned();
    let k = idem.len();
    let detail = format!("{k} idempotents, {} triples", k.pow(3));
    for &p in idem {
        if !m.leq(m.zero(), p) || !m.leq(p, m.one()) {
            return Check::fail(
                IDEMPOTENT_LATTICE,
                detail,
                format!("{} lies outside [0, 1]", nm(p)),
            );
        }
    }
    let mut joins = vec![None; m.len() * m.len()];
    for &p in idem {
        for &q in idem {
            match idempotent_join(m, p, q) {
                Some(r) => joins[p * m.len() + q] = Some(r),
                None => {
                    return Check::fail(
                        IDEMPOTENT_LATTICE,
                        detail,
                        format!("{} and {} have no join among idempotents", nm(p), nm(q)),
                    )
                }
            }
        }
    }
    let join = |p: usize, q: usize| joins[p * m.len() + q].unwrap();
    let w = idem.par_iter().find_map_first(|&p| {
        for &q in idem {
            for &r in idem {
                if m.mul(p, join(q, r)) != join(m.mul(p, q), m.mul(p, r)) {
                    return Some(format!(
                        "{p} ∧ ({q} ∨ {r}) ≠ ({p} ∧ {q}) ∨ ({p} ∧ {r})",
                        p = nm(p),
                        q = nm(q),
                        r = nm(r)
                    ));
                }
            }
        }
        None
    });
    Check::from_witness(IDEMPOTENT_LATTICE, detail, w)
}

fn idempotent_complements(m: &FiniteInverseMonoid) -> Check {
    let idem = m.idempotents();
    let w = idem.iter().find_map(|&p| {
        let complemented = idem
            .iter()
            .any(|&q| m.mul(p, q) == m.zero() && idempotent_join(m, p, q) == Some(m.one()));
        (!complemented).then(|| format!("{} has no complement", m.name(p)))
    });
    Check::from_witness(
        IDEMPOTENT_COMPLEMENTS,
        format!("{} idempotents", idem.len()),
        w,
    )
}

fn first_pair(
    xs: &[usize],
    ys: &[usize],
    bad: impl Fn(usize, usize) -> bool + Sync,
) -> Option<(usize, usize)> {
    xs.par_iter()
        .find_map_first(|&x| ys.iter().find(|&&y| bad(x, y)).map(|&y| (x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::partial::PointSet;
    use crate::symmetric::symmetric_inverse_monoid;

    #[test]
    fn symmetric_monoids_pass() {
        for n in 1..=3 {
            let s = symmetric_inverse_monoid(PointSet::new(n).unwrap(), &Caps::default()).unwrap();
            let r = verify_boolean_inverse_monoid(s.monoid());
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn two_element_monoid_passes() {
        let m = FiniteInverseMonoid::from_table(
            vec!["0".into(), "1".into()],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .unwrap();
        assert!(verify_boolean_inverse_monoid(&m).passed());
    }

    #[test]
    fn chain_fails_on_complements() {
        let m = FiniteInverseMonoid::from_table(
            vec!["0".into(), "e".into(), "1".into()],
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            0,
            2,
        )
        .unwrap();
        let r = verify_boolean_inverse_monoid(&m);
        assert!(!r.passed());
        assert!(r.get(MEETS_EXIST).unwrap().passed);
        assert!(r.get(JOINS_EXIST).unwrap().passed);
        assert!(r.get(IDEMPOTENT_LATTICE).unwrap().passed);
        assert_eq!(
            r.get(IDEMPOTENT_COMPLEMENTS).unwrap().witness.as_deref(),
            Some("e has no complement")
        );
        assert_eq!(
            r.get(RELATIVE_COMPLEMENTS).unwrap().witness.as_deref(),
            Some("1 \\ e has 0 candidates")
        );
    }

    #[test]
    fn group_with_zero_passes() {
        // Z/2 with a zero adjoined: idempotents {0, 1}, no nontrivial orthogonal pairs
        let m = FiniteInverseMonoid::from_table(
            vec!["0".into(), "1".into(), "g".into()],
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
            0,
            1,
        )
        .unwrap();
        let r = verify_boolean_inverse_monoid(&m);
        assert!(r.passed(), "{}", r.render_text());
    }
}
