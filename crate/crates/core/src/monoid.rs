//! Finite inverse monoids given by a multiplication table.
//!
//! All laws are checked exhaustively when a monoid is built, so every
//! operation here is total on a constructed value apart from index checks.
//! The order-theoretic operations (meet, orthogonal join, relative
//! complement) are found by searching the natural order, never by formulas
//! specific to a representation.

use std::collections::HashSet;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct FiniteInverseMonoid {
    names: Vec<String>,
    table: Vec<u32>,
    zero: usize,
    one: usize,
    inv: Vec<usize>,
    /// `below[a] = { c : c ≤ a }`
    below: Vec<FixedBitSet>,
    /// `above[a] = { c : a ≤ c }`
    above: Vec<FixedBitSet>,
    idempotents: Vec<usize>,
    meets: OnceLock<Vec<u32>>,
    joins: OnceLock<Vec<u32>>,
}

impl FiniteInverseMonoid {
    /// Validates and wraps a multiplication table; `table[a][b]` is `a·b`.
    ///
    /// Rejects the one-element monoid, where zero and identity coincide.
    pub fn from_table(
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Input("monoid has no elements".into()));
        }
        if names.len() != n {
            return Err(Error::Input(format!(
                "{} names for {} table rows",
                names.len(),
                n
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Input(format!("duplicate element name {name:?}")));
            }
        }
        if n > NONE as usize {
            return Err(Error::Size {
                what: "monoid",
                size: n,
                cap: NONE as usize,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= n {
                    return Err(Error::Input(format!(
                        "row {a} refers to element {c} of {n}"
                    )));
                }
                flat.push(c as u32);
            }
        }
        for idx in [zero, one] {
            if idx >= n {
                return Err(Error::Input(format!(
                    "element {idx} out of range for {n} elements"
                )));
            }
        }
        if n == 1 || zero == one {
            return Err(Error::Structure(
                "zero and identity coincide; the one-element monoid is not accepted".into(),
            ));
        }

        let mul = |a: usize, b: usize| flat[a * n + b] as usize;
        let name = |a: usize| names[a].as_str();

        let assoc = (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = assoc {
            return Err(Error::Structure(format!(
                "not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})",
                name(a),
                name(b),
                name(c)
            )));
        }
        for a in 0..n {
            if mul(zero, a) != zero || mul(a, zero) != zero {
                return Err(Error::Structure(format!(
                    "{} is not absorbing against {}",
                    name(zero),
                    name(a)
                )));
            }
            if mul(one, a) != a || mul(a, one) != a {
                return Err(Error::Structure(format!(
                    "{} is not an identity for {}",
                    name(one),
                    name(a)
                )));
            }
        }

        let inverses: Vec<std::result::Result<usize, (usize, usize)>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut found =
                    (0..n).filter(|&b| mul(mul(a, b), a) == a && mul(mul(b, a), b) == b);
                match (found.next(), found.next()) {
                    (Some(b), None) => Ok(b),
                    (first, _) => Err((a, first.map_or(0, |_| 2))),
                }
            })
            .collect();
        let mut inv = Vec::with_capacity(n);
        for r in inverses {
            match r {
                Ok(b) => inv.push(b),
                Err((a, count)) => {
                    return Err(Error::Structure(format!(
                        "{} has {} generalized inverses (expected exactly one)",
                        name(a),
                        if count == 0 { "no" } else { "several" }
                    )))
                }
            }
        }

        let below: Vec<FixedBitSet> = (0..n)
            .into_par_iter()
            .map(|b| {
                let mut set = FixedBitSet::with_capacity(n);
                for (a, &ai) in inv.iter().enumerate() {
                    if mul(mul(b, ai), a) == a {
                        set.insert(a);
                    }
                }
                set
            })
            .collect();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (b, set) in below.iter().enumerate() {
            for a in set.ones() {
                above[a].insert(b);
            }
        }
        let idempotents = (0..n).filter(|&p| mul(p, p) == p).collect();

        Ok(FiniteInverseMonoid {
            names,
            table: flat,
            zero,
            one,
            inv,
            below,
            above,
            idempotents,
            meets: OnceLock::new(),
            joins: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Panics if `a` is out of range.
    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The multiplication table as rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.len())
            .map(|row| row.iter().map(|&c| c as usize).collect())
            .collect()
    }

    pub fn check_index(&self, a: usize) -> Result<usize> {
        if a < self.len() {
            Ok(a)
        } else {
            Err(Error::IndexOutOfRange {
                index: a,
                len: self.len(),
            })
        }
    }

    /// `a·b` by table lookup.
    pub fn compose(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.mul(a, b))
    }

    /// Unchecked `a·b`; panics if out of range.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    /// Product of a sequence of elements, left to right.
    pub fn mul_all(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.one, |acc, &e| self.mul(acc, e))
    }

    /// The unique generalized inverse `a⁻¹`.
    pub fn inverse_of(&self, a: usize) -> Result<usize> {
        Ok(self.inv[self.check_index(a)?])
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a⁻¹a`
    pub fn source_idempotent(&self, a: usize) -> usize {
        self.mul(self.inv[a], a)
    }

    /// `aa⁻¹`
    pub fn range_idempotent(&self, a: usize) -> usize {
        self.mul(a, self.inv[a])
    }

    pub fn is_idempotent(&self, p: usize) -> bool {
        self.mul(p, p) == p
    }

    /// All idempotents in canonical order.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// The natural order: `a ≤ b` iff `a = b·a⁻¹·a`.
    pub fn natural_leq(&self, a: usize, b: usize) -> Result<bool> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.leq(a, b))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn below(&self, a: usize) -> &FixedBitSet {
        &self.below[a]
    }

    pub fn above(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// `a·b⁻¹ = 0` and `a⁻¹·b = 0`.
    pub fn is_orthogonal(&self, a: usize, b: usize) -> Result<bool> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.perp(a, b))
    }

    #[inline]
    pub fn perp(&self, a: usize, b: usize) -> bool {
        self.mul(a, self.inv[b]) == self.zero && self.mul(self.inv[a], b) == self.zero
    }

    /// Greatest lower bound under the natural order.
    pub fn meet(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        self.meet_opt(a, b).ok_or_else(|| {
            Error::Structure(format!(
                "{} and {} have no greatest lower bound",
                self.name(a),
                self.name(b)
            ))
        })
    }

    pub fn meet_opt(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let table = self.meets.get_or_init(|| {
            (0..n)
                .into_par_iter()
                .flat_map_iter(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let mut lower = self.below[a].clone();
                    lower.intersect_with(&self.below[b]);
                    extremal(&lower, &self.below).map_or(NONE, |c| c as u32)
                })
                .collect()
        });
        decode(table[a * n + b])
    }

    /// Least upper bound of an orthogonal pair.
    pub fn orthogonal_join(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        if !self.perp(a, b) {
            return Err(Error::Precondition(format!(
                "{} and {} are not orthogonal",
                self.name(a),
                self.name(b)
            )));
        }
        self.join_opt(a, b).ok_or_else(|| {
            Error::Structure(format!(
                "orthogonal pair {} and {} has no least upper bound",
                self.name(a),
                self.name(b)
            ))
        })
    }

    /// Join of an orthogonal pair, `None` when the pair is not orthogonal or
    /// has no least upper bound.
    pub fn join_opt(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let table = self.joins.get_or_init(|| {
            (0..n)
                .into_par_iter()
                .flat_map_iter(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| {
                    if !self.perp(a, b) {
                        return NONE;
                    }
                    self.least_upper_bound(a, b).map_or(NONE, |c| c as u32)
                })
                .collect()
        });
        decode(table[a * n + b])
    }

    /// Least upper bound of any pair, by search.
    pub fn least_upper_bound(&self, a: usize, b: usize) -> Option<usize> {
        let mut upper = self.above[a].clone();
        upper.intersect_with(&self.above[b]);
        extremal(&upper, &self.above)
    }

    /// The unique `d` with `d ⊥ c` and `d ∨ c = a`; requires `c ≤ a`.
    pub fn relative_complement(&self, a: usize, c: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(c)?;
        if !self.leq(c, a) {
            return Err(Error::Precondition(format!(
                "{} is not below {}",
                self.name(c),
                self.name(a)
            )));
        }
        let candidates = self.complement_candidates(a, c);
        match candidates.as_slice() {
            [d] => Ok(*d),
            _ => Err(Error::Structure(format!(
                "{} \\ {} has {} candidates (expected exactly one)",
                self.name(a),
                self.name(c),
                candidates.len()
            ))),
        }
    }

    /// Every `d` with `d ⊥ c` and `d ∨ c = a`.
    pub fn complement_candidates(&self, a: usize, c: usize) -> Vec<usize> {
        (0..self.len())
            // d ≤ d ∨ c, so anything not below a is rejected before the join lookup
            .filter(|&d| self.leq(d, a) && self.perp(d, c) && self.join_opt(d, c) == Some(a))
            .collect()
    }

    /// Iterated orthogonal join; `None` if some partial join is missing.
    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> Option<usize> {
        elems
            .into_iter()
            .try_fold(self.zero, |acc, e| self.join_opt(acc, e))
    }
}

/// The element of `set` whose cone (`cones[c]`) contains all of `set`, if any.
/// The candidate is the member with the largest cone, which is necessarily
/// the extremum when one exists.
fn extremal(set: &FixedBitSet, cones: &[FixedBitSet]) -> Option<usize> {
    let best = set
        .ones()
        .max_by_key(|&c| (cones[c].count_ones(..), std::cmp::Reverse(c)))?;
    set.is_subset(&cones[best]).then_some(best)
}

fn decode(v: u32) -> Option<usize> {
    (v != NONE).then_some(v as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    /// `{0, e, 1}` with `e·e = e`: a chain of idempotents.
    pub(crate) fn chain() -> FiniteInverseMonoid {
        FiniteInverseMonoid::from_table(
            vec!["0".into(), "e".into(), "1".into()],
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            0,
            2,
        )
        .unwrap()
    }

    #[test]
    fn rejects_degenerate_and_malformed_tables() {
        assert!(matches!(
            FiniteInverseMonoid::from_table(names(1), vec![vec![0]], 0, 0),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            FiniteInverseMonoid::from_table(names(2), vec![vec![0, 0], vec![0]], 0, 1),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            FiniteInverseMonoid::from_table(names(2), vec![vec![0, 0], vec![0, 2]], 0, 1),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            FiniteInverseMonoid::from_table(
                vec!["a".into(), "a".into()],
                vec![vec![0, 0], vec![0, 1]],
                0,
                1
            ),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn rejects_non_inverse_monoids() {
        // {0, a, b, 1} with a·x = a and b·x = b for x ≠ 0: both a and b invert a
        let t = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 1, 1],
            vec![0, 2, 2, 2],
            vec![0, 1, 2, 3],
        ];
        let err = FiniteInverseMonoid::from_table(names(4), t, 0, 3).unwrap_err();
        assert!(
            matches!(err, Error::Structure(ref m) if m.contains("inverses")),
            "{err}"
        );
    }

    #[test]
    fn rejects_non_associative_table() {
        // (a·a)·a = b·a = a but a·(a·a) = a·b = 0
        let t = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 3, 0],
            vec![0, 3, 2, 3],
        ];
        let err = FiniteInverseMonoid::from_table(names(4), t, 0, 1).unwrap_err();
        assert!(
            matches!(err, Error::Structure(ref m) if m.contains("associative")),
            "{err}"
        );
    }

    #[test]
    fn rejects_element_without_inverse() {
        // a² = 0 leaves a without a generalized inverse
        let t = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]];
        let err = FiniteInverseMonoid::from_table(names(3), t, 0, 1).unwrap_err();
        assert!(
            matches!(err, Error::Structure(ref m) if m.contains("no generalized")),
            "{err}"
        );
    }

    #[test]
    fn two_element_monoid() {
        let m =
            FiniteInverseMonoid::from_table(names(2), vec![vec![0, 0], vec![0, 1]], 0, 1).unwrap();
        assert_eq!(m.inverse_of(1).unwrap(), 1);
        assert_eq!(m.inverse_of(0).unwrap(), 0);
        assert!(m.natural_leq(0, 1).unwrap());
        assert!(!m.is_orthogonal(1, 1).unwrap());
        assert_eq!(m.orthogonal_join(1, 0).unwrap(), 1);
        assert_eq!(m.relative_complement(1, 1).unwrap(), 0);
        assert!(m.compose(2, 0).is_err());
    }

    #[test]
    fn chain_has_no_complement_for_e() {
        let m = chain();
        assert_eq!(m.meet(1, 2).unwrap(), 1);
        assert!(m.complement_candidates(2, 1).is_empty());
        assert!(matches!(
            m.relative_complement(2, 1),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            m.relative_complement(1, 2),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            m.orthogonal_join(1, 2),
            Err(Error::Precondition(_))
        ));
    }
}
