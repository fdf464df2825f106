//! Bisections of finite groupoids and the bisection monoid `Γ_c(G)`.

use std::collections::{BTreeSet, HashMap};

use crate::config::Caps;
use crate::germ::GermGroupoid;
use crate::groupoid::FiniteGroupoid;
use crate::monoid::FiniteInverseMonoid;
use crate::{Error, Result};

/// A set of arrows on which source and range are both injective.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bisection(BTreeSet<usize>);

impl Bisection {
    /// Wraps an arrow set, checking the bisection property.
    pub fn new(g: &FiniteGroupoid, arrows: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = arrows.into_iter().collect();
        if let Some(&a) = set.iter().find(|&&a| a >= g.len()) {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: g.len(),
            });
        }
        if !is_bisection(g, &set) {
            return Err(Error::Precondition(
                "source or range is not injective on the arrow set".into(),
            ));
        }
        Ok(Bisection(set))
    }

    pub fn arrows(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arrow: usize) -> bool {
        self.0.contains(&arrow)
    }

    /// `{ g·h : g ∈ self, h ∈ other, g·h defined }`
    pub fn product(&self, other: &Self, g: &FiniteGroupoid) -> BTreeSet<usize> {
        self.0
            .iter()
            .flat_map(|&a| other.0.iter().filter_map(move |&b| g.compose(a, b)))
            .collect()
    }

    /// `{ g⁻¹ : g ∈ self }`
    pub fn inverse(&self, g: &FiniteGroupoid) -> Self {
        Bisection(self.0.iter().map(|&a| g.inverse(a)).collect())
    }

    pub fn label(&self, g: &FiniteGroupoid) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&a| g.label(a)).collect();
        format!("[{}]", parts.join(" "))
    }
}

/// Source and range are each injective on `arrows`.
pub fn is_bisection<'a>(g: &FiniteGroupoid, arrows: impl IntoIterator<Item = &'a usize>) -> bool {
    let mut sources = BTreeSet::new();
    let mut ranges = BTreeSet::new();
    arrows
        .into_iter()
        .all(|&a| sources.insert(g.source(a)) && ranges.insert(g.range(a)))
}

/// `U_φ = { [φ, x] : x(φ⁻¹φ) = 1 }` as an arrow set of `G(S)`.
pub fn basic_bisection(gg: &GermGroupoid, phi: usize) -> Result<Bisection> {
    let m = gg.monoid();
    m.check_index(phi)?;
    let e = m.source_idempotent(phi);
    let arrows = gg
        .characters()
        .iter()
        .filter(|&&x| gg.algebra().evaluate(x, e).unwrap_or(false))
        .map(|&x| gg.arrow_of(phi, x))
        .collect::<Result<BTreeSet<usize>>>()?;
    Ok(Bisection(arrows))
}

/// `ε(φ) = U_φ` for every element, indexed like the monoid.
pub fn epsilon(gg: &GermGroupoid) -> Result<Vec<Bisection>> {
    (0..gg.monoid().len())
        .map(|phi| basic_bisection(gg, phi))
        .collect()
}

/// `Γ_c(G)`: every bisection, packaged as an inverse monoid under the
/// setwise product. Element `i` of [`Self::monoid`] is `self.bisections()[i]`.
#[derive(Debug, Clone)]
pub struct BisectionMonoid {
    bisections: Vec<Bisection>,
    index: HashMap<Bisection, usize>,
    monoid: FiniteInverseMonoid,
}

impl BisectionMonoid {
    pub fn bisections(&self) -> &[Bisection] {
        &self.bisections
    }

    pub fn monoid(&self) -> &FiniteInverseMonoid {
        &self.monoid
    }

    pub fn index_of(&self, b: &Bisection) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn len(&self) -> usize {
        self.bisections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bisections.is_empty()
    }
}

/// Enumerates all bisections by choosing, for each unit in turn, at most one
/// arrow with that source whose range is still free.
pub fn enumerate_bisections(g: &FiniteGroupoid, caps: &Caps) -> Result<Vec<Bisection>> {
    caps.check("unit space", g.units().len(), caps.units)?;
    let fibers: Vec<Vec<usize>> = g
        .units()
        .iter()
        .map(|&u| (0..g.len()).filter(|&a| g.source(a) == u).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut used_ranges = BTreeSet::new();
    backtrack(
        g,
        &fibers,
        0,
        &mut chosen,
        &mut used_ranges,
        &mut out,
        caps.elements,
    )?;
    out.sort();
    Ok(out)
}

fn backtrack(
    g: &FiniteGroupoid,
    fibers: &[Vec<usize>],
    depth: usize,
    chosen: &mut Vec<usize>,
    used_ranges: &mut BTreeSet<usize>,
    out: &mut Vec<Bisection>,
    cap: usize,
) -> Result<()> {
    if depth == fibers.len() {
        if out.len() == cap {
            return Err(Error::Size {
                what: "bisection monoid",
                size: cap + 1,
                cap,
            });
        }
        out.push(Bisection(chosen.iter().copied().collect()));
        return Ok(());
    }
    backtrack(g, fibers, depth + 1, chosen, used_ranges, out, cap)?;
    for &a in &fibers[depth] {
        let r = g.range(a);
        if used_ranges.insert(r) {
            chosen.push(a);
            backtrack(g, fibers, depth + 1, chosen, used_ranges, out, cap)?;
            chosen.pop();
            used_ranges.remove(&r);
        }
    }
    Ok(())
}

/// Builds `Γ_c(G)` with zero `∅`, identity the unit space, product
/// `A·B = { g·h }` and inverse `A⁻¹ = { g⁻¹ }`; the inverse table derived by
/// the monoid constructor is checked against the setwise inverse.
pub fn all_bisections(g: &FiniteGroupoid, caps: &Caps) -> Result<BisectionMonoid> {
    let bisections = enumerate_bisections(g, caps)?;
    let index: HashMap<Bisection, usize> = bisections
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    let lookup = |set: BTreeSet<usize>| {
        let b = Bisection(set);
        index
            .get(&b)
            .copied()
            .ok_or_else(|| Error::Structure(format!("{} is not a bisection", b.label(g))))
    };
    let zero = lookup(BTreeSet::new())?;
    let one = lookup(g.units().iter().copied().collect())?;
    let table = bisections
        .iter()
        .map(|a| {
            bisections
                .iter()
                .map(|b| lookup(a.product(b, g)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let names = bisections.iter().map(|b| b.label(g)).collect();
    let monoid = FiniteInverseMonoid::from_table(names, table, zero, one)?;
    for (i, b) in bisections.iter().enumerate() {
        if monoid.inv(i) != lookup(b.inverse(g).0)? {
            return Err(Error::Structure(format!(
                "generalized inverse of {} is not its arrow-wise inverse",
                b.label(g)
            )));
        }
    }
    Ok(BisectionMonoid {
        bisections,
        index,
        monoid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::build_germ_groupoid;
    use crate::partial::{PartialBijection, PointSet};
    use crate::symmetric::symmetric_inverse_monoid;

    #[test]
    fn counts_on_pair_groupoids() {
        let caps = Caps::default();
        for (n, count) in [(1, 2), (2, 7), (3, 34)] {
            let g = FiniteGroupoid::pair(n).unwrap();
            assert_eq!(all_bisections(&g, &caps).unwrap().len(), count);
        }
    }

    #[test]
    fn unit_cap() {
        let caps = Caps {
            units: 2,
            ..Caps::default()
        };
        let g = FiniteGroupoid::pair(3).unwrap();
        assert!(matches!(all_bisections(&g, &caps), Err(Error::Size { .. })));
        let caps = Caps {
            elements: 10,
            ..Caps::default()
        };
        assert!(matches!(all_bisections(&g, &caps), Err(Error::Size { .. })));
    }

    #[test]
    fn is_bisection_examples() {
        let caps = Caps::default();
        let s = symmetric_inverse_monoid(PointSet::new(2).unwrap(), &caps).unwrap();
        let gg = build_germ_groupoid(s.monoid(), &caps).unwrap();
        let g = gg.groupoid();
        assert!(is_bisection(g, &BTreeSet::new()));
        assert!(is_bisection(g, g.units()));
        let idx = |pairs: &[(usize, usize)]| {
            s.index_of(&PartialBijection::from_pairs(s.points(), pairs).unwrap())
                .unwrap()
        };
        let x0 = gg.algebra().character_of(idx(&[(0, 0)])).unwrap();
        let a01 = gg.arrow_of(idx(&[(0, 1)]), x0).unwrap();
        let a00 = gg.arrow_of(idx(&[(0, 0)]), x0).unwrap();
        assert!(!is_bisection(g, &[a01, a00]));
        assert!(Bisection::new(g, [a01, a00]).is_err());

        let swap = basic_bisection(&gg, idx(&[(0, 1), (1, 0)])).unwrap();
        assert_eq!(swap.len(), 2);
        assert!(swap.contains(a01));
        assert!(basic_bisection(&gg, s.monoid().zero()).unwrap().is_empty());
        assert_eq!(
            basic_bisection(&gg, s.monoid().one()).unwrap().arrows(),
            &g.units().iter().copied().collect()
        );
    }

    #[test]
    fn single_arrow_groupoid() {
        let g = FiniteGroupoid::pair(1).unwrap();
        let gamma = all_bisections(&g, &Caps::default()).unwrap();
        assert_eq!(gamma.len(), 2);
        assert_eq!(gamma.monoid().zero(), 0);
    }
}
