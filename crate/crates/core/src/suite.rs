//! Verification suites as run by the command-line tool.

use std::str::FromStr;

use crate::bisection::all_bisections;
use crate::config::Caps;
use crate::germ::build_germ_groupoid;
use crate::lemmas::{
    epsilon_report, verify_ample_structure, verify_germ_coherence, verify_intersection_lemma,
};
use crate::monoid::FiniteInverseMonoid;
use crate::report::{Check, Report};
use crate::verify::verify_boolean_inverse_monoid;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Lemmas,
    Roundtrip,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "axioms" => Ok(Suite::Axioms),
            "lemmas" => Ok(Suite::Lemmas),
            "roundtrip" => Ok(Suite::Roundtrip),
            "all" => Ok(Suite::All),
            other => Err(Error::Input(format!("unknown suite {other:?}"))),
        }
    }
}

pub const GAMMA_TITLE: &str = "Γ_c(G(S)) as a Boolean inverse monoid";

/// Runs `suite` on `m`, in the order: axioms, basic-bisection identities,
/// ample structure, germ coherence, isomorphism, `Γ_c` axioms.
///
/// Size-cap violations are returned as errors; structural failures end up as
/// failed checks.
pub fn run_suite(m: &FiniteInverseMonoid, suite: Suite, caps: &Caps) -> Result<Vec<Report>> {
    let axioms = verify_boolean_inverse_monoid(m);
    let boolean = axioms.passed();
    let mut reports = Vec::new();
    if matches!(suite, Suite::Axioms | Suite::All) {
        reports.push(axioms);
    }
    let want_lemmas = matches!(suite, Suite::Lemmas | Suite::All);
    let want_roundtrip = matches!(suite, Suite::Roundtrip | Suite::All);
    if !want_lemmas && !want_roundtrip {
        return Ok(reports);
    }
    if !boolean {
        reports.push(blocked("not a Boolean inverse monoid"));
        return Ok(reports);
    }
    let gg = match build_germ_groupoid(m, caps) {
        Ok(gg) => gg,
        Err(e @ Error::Size { .. }) => return Err(e),
        Err(e) => {
            reports.push(blocked(&e.to_string()));
            return Ok(reports);
        }
    };
    if want_lemmas {
        reports.push(verify_intersection_lemma(&gg)?);
        reports.push(verify_ample_structure(&gg)?);
        reports.push(verify_germ_coherence(&gg)?);
    }
    if want_roundtrip {
        match all_bisections(gg.groupoid(), caps) {
            Ok(gamma) => {
                reports.push(epsilon_report(&gg, &gamma)?);
                let mut r = verify_boolean_inverse_monoid(gamma.monoid());
                r.title = GAMMA_TITLE.into();
                reports.push(r);
            }
            Err(e @ Error::Size { .. }) => return Err(e),
            Err(e) => reports.push(blocked(&format!("Γ_c(G(S)): {e}"))),
        }
    }
    Ok(reports)
}

fn blocked(reason: &str) -> Report {
    let mut r = Report::new("Germ groupoid construction");
    r.push(Check::fail(
        "G(S) can be built",
        "prerequisite for the groupoid suites",
        reason,
    ));
    r
}
