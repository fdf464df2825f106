//! Monoids of partial bijections: `I(X)` and its inverse submonoids.

use std::collections::HashMap;

use crate::config::Caps;
use crate::monoid::FiniteInverseMonoid;
use crate::partial::{PartialBijection, PointSet};
use crate::{Error, Result};

/// A finite inverse monoid whose elements are concrete partial bijections.
///
/// Element `i` of [`Self::monoid`] is `self.maps()[i]`; the maps are kept in
/// canonical order so the empty map is the zero.
#[derive(Debug, Clone)]
pub struct PartialBijectionMonoid {
    points: PointSet,
    maps: Vec<PartialBijection>,
    monoid: FiniteInverseMonoid,
}

impl PartialBijectionMonoid {
    /// Packages a set of partial bijections closed under composition, which
    /// must contain the empty map and the identity.
    pub fn from_maps(points: PointSet, mut maps: Vec<PartialBijection>) -> Result<Self> {
        maps.sort();
        maps.dedup();
        let index: HashMap<&PartialBijection, usize> =
            maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let lookup = |m: &PartialBijection, what: &str| {
            index
                .get(m)
                .copied()
                .ok_or_else(|| Error::Structure(format!("{what} {m} missing from the set")))
        };
        let zero = lookup(&PartialBijection::empty(points), "empty map")?;
        let one = lookup(&PartialBijection::identity(points), "identity")?;
        let mut table = Vec::with_capacity(maps.len());
        for f in &maps {
            let row = maps
                .iter()
                .map(|g| lookup(&f.compose(g), "composite"))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let names = maps.iter().map(ToString::to_string).collect();
        let monoid = FiniteInverseMonoid::from_table(names, table, zero, one)?;
        Ok(PartialBijectionMonoid {
            points,
            maps,
            monoid,
        })
    }

    pub fn points(&self) -> PointSet {
        self.points
    }

    pub fn maps(&self) -> &[PartialBijection] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &PartialBijection {
        &self.maps[a]
    }

    pub fn monoid(&self) -> &FiniteInverseMonoid {
        &self.monoid
    }

    pub fn into_monoid(self) -> FiniteInverseMonoid {
        self.monoid
    }

    pub fn index_of(&self, map: &PartialBijection) -> Option<usize> {
        self.maps.binary_search(map).ok()
    }
}

/// `I(X)`: every partial bijection on `x`, in canonical order.
pub fn symmetric_inverse_monoid(x: PointSet, caps: &Caps) -> Result<PartialBijectionMonoid> {
    caps.check("point set", x.size(), caps.points)?;
    PartialBijectionMonoid::from_maps(x, PartialBijection::enumerate(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i_n(n: usize) -> PartialBijectionMonoid {
        symmetric_inverse_monoid(PointSet::new(n).unwrap(), &Caps::default()).unwrap()
    }

    fn pb(n: usize, pairs: &[(usize, usize)]) -> PartialBijection {
        PartialBijection::from_pairs(PointSet::new(n).unwrap(), pairs).unwrap()
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps {
            points: 2,
            ..Caps::default()
        };
        let err = symmetric_inverse_monoid(PointSet::new(3).unwrap(), &caps).unwrap_err();
        assert!(matches!(
            err,
            Error::Size {
                size: 3,
                cap: 2,
                ..
            }
        ));
    }

    #[test]
    fn zero_and_one_are_empty_and_identity() {
        let s = i_n(2);
        assert!(s.map(s.monoid().zero()).is_empty());
        assert_eq!(
            s.map(s.monoid().one()),
            &PartialBijection::identity(s.points())
        );
    }

    #[test]
    fn compose_in_i2() {
        let s = i_n(2);
        let f = s.index_of(&pb(2, &[(0, 1)])).unwrap();
        let g = s.index_of(&pb(2, &[(1, 0)])).unwrap();
        let fg = s.monoid().compose(f, g).unwrap();
        assert_eq!(s.map(fg), &pb(2, &[(1, 1)]));
        let one = s.monoid().one();
        assert_eq!(s.monoid().compose(one, f).unwrap(), f);
        assert_eq!(s.monoid().compose(0, f).unwrap(), 0);
    }

    #[test]
    fn inverse_is_graph_reversal() {
        let s = i_n(3);
        for (a, m) in s.maps().iter().enumerate() {
            assert_eq!(s.map(s.monoid().inverse_of(a).unwrap()), &m.inverse());
        }
    }

    #[test]
    fn named_order_examples() {
        let s = i_n(3);
        let m = s.monoid();
        let small = s.index_of(&pb(3, &[(0, 1)])).unwrap();
        let big = s.index_of(&pb(3, &[(0, 1), (2, 0)])).unwrap();
        assert!(m.natural_leq(small, big).unwrap());
        assert!(!m.natural_leq(big, small).unwrap());

        let s = i_n(2);
        let m = s.monoid();
        let id0 = s.index_of(&pb(2, &[(0, 0)])).unwrap();
        let id1 = s.index_of(&pb(2, &[(1, 1)])).unwrap();
        let swap = s.index_of(&pb(2, &[(0, 1), (1, 0)])).unwrap();
        let f = s.index_of(&pb(2, &[(0, 1)])).unwrap();
        let g = s.index_of(&pb(2, &[(1, 0)])).unwrap();
        assert!(m.is_orthogonal(id0, id1).unwrap());
        assert_eq!(m.meet(m.one(), id0).unwrap(), id0);
        assert_eq!(m.meet(m.one(), swap).unwrap(), m.zero());
        assert_eq!(m.meet(f, f).unwrap(), f);
        assert_eq!(m.meet(f, m.zero()).unwrap(), m.zero());
        assert_eq!(m.orthogonal_join(id0, id1).unwrap(), m.one());
        assert_eq!(m.orthogonal_join(f, g).unwrap(), swap);
        assert_eq!(m.relative_complement(m.one(), id0).unwrap(), id1);
        assert_eq!(m.relative_complement(swap, swap).unwrap(), m.zero());
        assert_eq!(m.relative_complement(swap, m.zero()).unwrap(), swap);
        assert_eq!(m.inverse_of(f).unwrap(), g);
    }
}
