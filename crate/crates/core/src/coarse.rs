//! Finite coarse spaces and their partial-translation monoids.
//!
//! A finite space is automatically uniformly locally finite. The coarse
//! structure generated by a symmetric reflexive relation `R` has, at finite
//! scale, a largest entourage: the transitive closure of `R`. Partial
//! translations are the partial bijections whose graphs lie inside it.

use std::collections::BTreeSet;

use crate::config::Caps;
use crate::germ::{build_germ_groupoid, GermGroupoid};
use crate::groupoid::{groupoid_isomorphic, FiniteGroupoid};
use crate::partial::{PartialBijection, PointSet};
use crate::report::{Check, Report};
use crate::stone::BooleanAlgebraView;
use crate::symmetric::PartialBijectionMonoid;
use crate::{Error, Result};

pub type Relation = BTreeSet<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseSpace {
    points: PointSet,
    generator: Relation,
}

impl CoarseSpace {
    /// The space generated by `edges`; the diagonal and the reversed edges
    /// are added.
    pub fn new(points: PointSet, edges: &[(usize, usize)]) -> Result<Self> {
        let n = points.size();
        let mut generator: Relation = points.points().map(|x| (x, x)).collect();
        for &(x, y) in edges {
            if x >= n || y >= n {
                return Err(Error::Input(format!("edge ({x}, {y}) outside 0..{n}")));
            }
            generator.insert((x, y));
            generator.insert((y, x));
        }
        Ok(CoarseSpace { points, generator })
    }

    /// `R = { (x, y) : d(x, y) ≤ radius } ∪ Δ`, symmetrized.
    pub fn from_metric(points: PointSet, dist: &[Vec<f64>], radius: f64) -> Result<Self> {
        let n = points.size();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::Input(format!("distance table must be {n}×{n}")));
        }
        if dist.iter().flatten().any(|d| !d.is_finite() || *d < 0.0) || !radius.is_finite() {
            return Err(Error::Input(
                "distances and radius must be finite and non-negative".into(),
            ));
        }
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| dist[x][y] <= radius)
            .collect();
        Self::new(points, &edges)
    }

    /// The relation `X × X`.
    pub fn complete(points: PointSet) -> Self {
        let edges: Vec<_> = points
            .points()
            .flat_map(|x| points.points().map(move |y| (x, y)))
            .collect();
        Self::new(points, &edges).expect("edges inside the point set")
    }

    pub fn discrete(points: PointSet) -> Self {
        Self::new(points, &[]).expect("no edges")
    }

    pub fn points(&self) -> PointSet {
        self.points
    }

    pub fn generator(&self) -> &Relation {
        &self.generator
    }

    /// Reflexive-symmetric-transitive closure of the generator.
    pub fn closure_entourage(&self) -> Relation {
        let n = self.points.size();
        let mut reach = vec![vec![false; n]; n];
        for &(x, y) in &self.generator {
            reach[x][y] = true;
        }
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (cell, &step) in row.iter_mut().zip(&via) {
                    *cell |= step;
                }
            }
        }
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| reach[x][y])
            .collect()
    }
}

/// `T_E`: partial bijections with graph inside the closure entourage.
pub fn partial_translations(c: &CoarseSpace, caps: &Caps) -> Result<PartialBijectionMonoid> {
    caps.check("point set", c.points().size(), caps.points)?;
    let entourage = c.closure_entourage();
    let maps = PartialBijection::enumerate(c.points())
        .into_iter()
        .filter(|f| f.graph().all(|p| entourage.contains(&p)))
        .collect();
    PartialBijectionMonoid::from_maps(c.points(), maps)
}

/// `G(T_E)`, checked to be isomorphic to the groupoid of the closure entourage.
pub fn coarse_groupoid(c: &CoarseSpace, caps: &Caps) -> Result<GermGroupoid> {
    let te = partial_translations(c, caps)?;
    let gg = build_germ_groupoid(te.monoid(), caps)?;
    let pairs: Vec<(usize, usize)> = c.closure_entourage().into_iter().collect();
    let reference = FiniteGroupoid::equivalence(c.points().size(), &pairs)?;
    if !groupoid_isomorphic(gg.groupoid(), &reference, caps)? {
        return Err(Error::Structure(
            "G(T_E) is not isomorphic to the groupoid of the closure entourage".into(),
        ));
    }
    Ok(gg)
}

pub const TRANSLATION_IDEMPOTENTS: &str = "idempotents of T_E are exactly the id_Y, Y ⊆ X";
pub const IDEMPOTENT_COUNT: &str = "|E(T_E)| = 2^|X|";
pub const CHARACTER_COUNT: &str = "E(T_E) has exactly |X| characters";

pub fn verify_translation_idempotents(c: &CoarseSpace, caps: &Caps) -> Result<Report> {
    let te = partial_translations(c, caps)?;
    let m = te.monoid();
    let n = c.points().size();
    let mut report = Report::new("Idempotents of the partial-translation monoid");

    let found: BTreeSet<&PartialBijection> = m.idempotents().iter().map(|&p| te.map(p)).collect();
    let expected: Vec<PartialBijection> = (0..1u64 << n)
        .map(|mask| PartialBijection::identity_on(c.points(), mask))
        .collect();
    let w = expected
        .iter()
        .find(|e| !found.contains(e))
        .map(|e| format!("{e} is missing"))
        .or_else(|| {
            found
                .iter()
                .find(|f| !expected.contains(f))
                .map(|f| format!("{f} is idempotent but not an identity"))
        });
    report.push(Check::from_witness(
        TRANSLATION_IDEMPOTENTS,
        format!("{} idempotents", found.len()),
        w,
    ));
    let k = m.idempotents().len();
    report.push(Check::from_witness(
        IDEMPOTENT_COUNT,
        format!("{k} = 2^{n}"),
        (k != 1 << n).then(|| format!("{k} ≠ {}", 1 << n)),
    ));
    let chars = BooleanAlgebraView::from_monoid(m)?
        .characters(caps.character_oracle)?
        .len();
    report.push(Check::from_witness(
        CHARACTER_COUNT,
        format!("{chars} = {n}"),
        (chars != n).then(|| format!("{chars} characters")),
    ));
    Ok(report)
}
