//! Concrete partial bijections on a finite point set.
//!
//! These are the elements of the symmetric inverse monoid `I(X)`. Besides
//! being the source of the canonical element order, the direct formulas here
//! (graph reversal, agreement restriction, graph union) serve as oracles for
//! the order-theoretic searches in [`crate::monoid`].

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Largest point set representable by a [`PartialBijection`] domain mask.
pub const MAX_POINTS: usize = 64;

/// The points `0..size` of a finite set `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointSet {
    size: usize,
}

impl PointSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Input("a point set needs at least one point".into()));
        }
        if size > MAX_POINTS {
            return Err(Error::Size {
                what: "point set",
                size,
                cap: MAX_POINTS,
            });
        }
        Ok(PointSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.size
    }
}

/// An injective map from a subset of `X` into `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    ambient: PointSet,
    map: Vec<Option<usize>>,
}

impl PartialBijection {
    /// Builds a partial bijection from its graph.
    pub fn from_pairs(ambient: PointSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ambient.size();
        let mut map = vec![None; n];
        let mut hit = vec![false; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Input(format!("pair ({x}, {y}) outside 0..{n}")));
            }
            if map[x].is_some() {
                return Err(Error::Input(format!("point {x} mapped twice")));
            }
            if hit[y] {
                return Err(Error::Input(format!(
                    "point {y} hit twice; map is not injective"
                )));
            }
            map[x] = Some(y);
            hit[y] = true;
        }
        Ok(PartialBijection { ambient, map })
    }

    pub fn empty(ambient: PointSet) -> Self {
        PartialBijection {
            ambient,
            map: vec![None; ambient.size()],
        }
    }

    pub fn identity(ambient: PointSet) -> Self {
        PartialBijection {
            ambient,
            map: ambient.points().map(Some).collect(),
        }
    }

    /// `id_Y` for the subset `Y` encoded by `mask`.
    pub fn identity_on(ambient: PointSet, mask: u64) -> Self {
        PartialBijection {
            ambient,
            map: ambient
                .points()
                .map(|x| (mask >> x & 1 == 1).then_some(x))
                .collect(),
        }
    }

    pub fn ambient(&self) -> PointSet {
        self.ambient
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn domain_mask(&self) -> u64 {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, y)| y.is_some())
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    pub fn image_mask(&self) -> u64 {
        self.map.iter().flatten().fold(0, |m, &y| m | 1 << y)
    }

    /// Images listed in increasing order of their preimages.
    pub fn image_tuple(&self) -> Vec<usize> {
        self.map.iter().flatten().copied().collect()
    }

    pub fn graph(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn is_empty(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    /// `self ∘ other`: apply `other` first, then `self`, wherever both are defined.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ambient, other.ambient);
        PartialBijection {
            ambient: self.ambient,
            map: other
                .map
                .iter()
                .map(|y| y.and_then(|y| self.map[y]))
                .collect(),
        }
    }

    /// Graph reversal.
    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.ambient.size()];
        for (x, y) in self.graph() {
            map[y] = Some(x);
        }
        PartialBijection {
            ambient: self.ambient,
            map,
        }
    }

    pub fn restrict(&self, mask: u64) -> Self {
        PartialBijection {
            ambient: self.ambient,
            map: self
                .map
                .iter()
                .enumerate()
                .map(|(x, y)| if mask >> x & 1 == 1 { *y } else { None })
                .collect(),
        }
    }

    /// True iff `self` is a restriction of `other`.
    pub fn is_restriction_of(&self, other: &Self) -> bool {
        self.graph().all(|(x, y)| other.apply(x) == Some(y))
    }

    /// Restriction of `self` to the points where `self` and `other` agree.
    pub fn agreement(&self, other: &Self) -> Self {
        let mask = self
            .graph()
            .filter(|&(x, y)| other.apply(x) == Some(y))
            .fold(0, |m, (x, _)| m | 1 << x);
        self.restrict(mask)
    }

    /// Disjoint domains and disjoint images.
    pub fn is_orthogonal(&self, other: &Self) -> bool {
        self.domain_mask() & other.domain_mask() == 0 && self.image_mask() & other.image_mask() == 0
    }

    /// Union of graphs, when that union is again a partial bijection.
    pub fn union(&self, other: &Self) -> Option<Self> {
        let mut pairs: Vec<(usize, usize)> = self.graph().collect();
        for (x, y) in other.graph() {
            match self.apply(x) {
                Some(z) if z == y => {}
                Some(_) => return None,
                None => pairs.push((x, y)),
            }
        }
        Self::from_pairs(self.ambient, &pairs).ok()
    }

    /// Canonical order key: domain bitmask, then image tuple.
    pub fn canonical_key(&self) -> (u64, Vec<usize>) {
        (self.domain_mask(), self.image_tuple())
    }

    /// Every partial bijection on `ambient`, in canonical order.
    pub fn enumerate(ambient: PointSet) -> Vec<Self> {
        let n = ambient.size();
        let mut out = Vec::new();
        for mask in 0..(1u64 << n) {
            let domain: Vec<usize> = (0..n).filter(|x| mask >> x & 1 == 1).collect();
            let mut map = vec![None; n];
            fill(ambient, &domain, 0, 0, &mut map, &mut out);
        }
        out
    }
}

fn fill(
    ambient: PointSet,
    domain: &[usize],
    pos: usize,
    used: u64,
    map: &mut Vec<Option<usize>>,
    out: &mut Vec<PartialBijection>,
) {
    if pos == domain.len() {
        out.push(PartialBijection {
            ambient,
            map: map.clone(),
        });
        return;
    }
    for y in 0..ambient.size() {
        if used >> y & 1 == 0 {
            map[domain[pos]] = Some(y);
            fill(ambient, domain, pos + 1, used | 1 << y, map, out);
        }
    }
    map[domain[pos]] = None;
}

impl Ord for PartialBijection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key()
            .cmp(&other.canonical_key())
            .then(self.ambient.size().cmp(&other.ambient.size()))
    }
}

impl PartialOrd for PartialBijection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Formats as `{0->1,2->0}`; the empty map is `{}`.
impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.graph().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}->{y}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pb(n: usize, pairs: &[(usize, usize)]) -> PartialBijection {
        PartialBijection::from_pairs(PointSet::new(n).unwrap(), pairs).unwrap()
    }

    #[test]
    fn rejects_non_injective_graphs() {
        let x = PointSet::new(2).unwrap();
        assert!(PartialBijection::from_pairs(x, &[(0, 1), (1, 1)]).is_err());
        assert!(PartialBijection::from_pairs(x, &[(0, 1), (0, 0)]).is_err());
        assert!(PartialBijection::from_pairs(x, &[(0, 2)]).is_err());
        assert!(PointSet::new(0).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let f = pb(2, &[(0, 1)]);
        let g = pb(2, &[(1, 0)]);
        assert_eq!(f.compose(&g), pb(2, &[(1, 1)]));
        assert_eq!(g.compose(&f), pb(2, &[(0, 0)]));
    }

    #[test]
    fn enumeration_is_sorted_and_sized() {
        for (n, count) in [(1, 2), (2, 7), (3, 34)] {
            let all = PartialBijection::enumerate(PointSet::new(n).unwrap());
            assert_eq!(all.len(), count);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all[0].is_empty());
        }
    }

    #[test]
    fn display() {
        assert_eq!(pb(3, &[(2, 0), (0, 1)]).to_string(), "{0->1,2->0}");
        assert_eq!(pb(3, &[]).to_string(), "{}");
    }

    #[test]
    fn union_and_agreement() {
        let a = pb(2, &[(0, 1)]);
        let b = pb(2, &[(1, 0)]);
        assert_eq!(a.union(&b), Some(pb(2, &[(0, 1), (1, 0)])));
        assert_eq!(a.union(&pb(2, &[(1, 1)])), None);
        let id = PartialBijection::identity(PointSet::new(2).unwrap());
        assert_eq!(id.agreement(&pb(2, &[(0, 0)])), pb(2, &[(0, 0)]));
        assert!(id.agreement(&pb(2, &[(0, 1), (1, 0)])).is_empty());
    }
}
