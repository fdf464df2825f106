//! Finite groupoids given by explicit source, range and composition tables.

use std::fmt::Write;

use serde::Serialize;

use crate::config::Caps;
use crate::{Error, Result};

/// A finite groupoid. Arrows are `0..len()`; units are arrows too.
///
/// `compose(g, h)` is defined iff `source(g) == range(h)`, and then
/// `source(gh) = source(h)`, `range(gh) = range(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    unit_labels: Vec<String>,
    units: Vec<usize>,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    product: Vec<Option<usize>>,
}

impl FiniteGroupoid {
    /// Builds and validates a groupoid. `product[g * n + h]` must be `Some`
    /// exactly on composable pairs. `unit_labels[i]` names `units[i]`.
    pub fn new(
        labels: Vec<String>,
        units: Vec<usize>,
        unit_labels: Vec<String>,
        source: Vec<usize>,
        range: Vec<usize>,
        product: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if source.len() != n
            || range.len() != n
            || product.len() != n * n
            || unit_labels.len() != units.len()
        {
            return Err(Error::Input(
                "groupoid tables have inconsistent sizes".into(),
            ));
        }
        let out_of_range = units
            .iter()
            .chain(&source)
            .chain(&range)
            .chain(product.iter().flatten())
            .any(|&a| a >= n);
        if out_of_range {
            return Err(Error::Input(
                "groupoid table refers to a missing arrow".into(),
            ));
        }
        let mut g = FiniteGroupoid {
            labels,
            unit_labels,
            units,
            source,
            range,
            inverse: Vec::new(),
            product,
        };
        g.inverse = g.check_axioms()?;
        Ok(g)
    }

    /// Exhaustive groupoid axioms; returns the inverse table.
    fn check_axioms(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let lb = |a: usize| self.labels[a].as_str();
        let fail = |msg: String| Err(Error::Structure(msg));
        for &u in &self.units {
            if self.source[u] != u || self.range[u] != u {
                return fail(format!("unit {} is not its own source and range", lb(u)));
            }
        }
        for g in 0..n {
            if !self.is_unit(self.source[g]) || !self.is_unit(self.range[g]) {
                return fail(format!("source or range of {} is not a unit", lb(g)));
            }
            for h in 0..n {
                let composable = self.source[g] == self.range[h];
                match self.product[g * n + h] {
                    Some(_) if !composable => {
                        return fail(format!(
                            "{}·{} defined on a non-composable pair",
                            lb(g),
                            lb(h)
                        ))
                    }
                    None if composable => return fail(format!("{}·{} undefined", lb(g), lb(h))),
                    Some(gh)
                        if self.source[gh] != self.source[h] || self.range[gh] != self.range[g] =>
                    {
                        return fail(format!("{}·{} has the wrong endpoints", lb(g), lb(h)))
                    }
                    _ => {}
                }
            }
            if self.product[self.range[g] * n + g] != Some(g)
                || self.product[g * n + self.source[g]] != Some(g)
            {
                return fail(format!("units do not act trivially on {}", lb(g)));
            }
        }
        for g in 0..n {
            for h in self.composable_right(g) {
                let gh = self.product[g * n + h].unwrap();
                for k in self.composable_right(h) {
                    let hk = self.product[h * n + k].unwrap();
                    if self.product[gh * n + k] != self.product[g * n + hk] {
                        return fail(format!(
                            "({0}·{1})·{2} ≠ {0}·({1}·{2})",
                            lb(g),
                            lb(h),
                            lb(k)
                        ));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n).find(|&h| {
                self.product[g * n + h] == Some(self.range[g])
                    && self.product[h * n + g] == Some(self.source[g])
            });
            match inv {
                Some(h) => inverse.push(h),
                None => return fail(format!("{} has no inverse", lb(g))),
            }
        }
        Ok(inverse)
    }

    /// Arrows `h` with `g·h` defined.
    fn composable_right(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        let s = self.source[g];
        (0..self.len()).filter(move |&h| self.range[h] == s)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn unit_labels(&self) -> &[String] {
        &self.unit_labels
    }

    pub fn is_unit(&self, g: usize) -> bool {
        self.units.contains(&g)
    }

    /// Position of `unit` within [`Self::units`].
    pub fn unit_position(&self, unit: usize) -> Option<usize> {
        self.units.iter().position(|&u| u == unit)
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn range(&self, g: usize) -> usize {
        self.range[g]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.product[g * self.len() + h]
    }

    /// Composable pairs with their product, `(g, h, g·h)`, in index order.
    pub fn composition_triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n)
            .flat_map(move |g| (0..n).filter_map(move |h| self.compose(g, h).map(|gh| (g, h, gh))))
    }

    /// The groupoid of an equivalence relation: one arrow `(x, y)` from `y`
    /// to `x` per related pair, with `(x, y)·(y, z) = (x, z)`.
    pub fn equivalence(points: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = pairs.to_vec();
        pairs.sort();
        pairs.dedup();
        let index = |p: (usize, usize)| pairs.binary_search(&p).ok();
        let mut units = Vec::new();
        for x in 0..points {
            units.push(
                index((x, x))
                    .ok_or_else(|| Error::Input(format!("relation is not reflexive at {x}")))?,
            );
        }
        let n = pairs.len();
        let mut product = vec![None; n * n];
        let mut source = Vec::with_capacity(n);
        let mut range = Vec::with_capacity(n);
        for (g, &(x, y)) in pairs.iter().enumerate() {
            if x >= points || y >= points {
                return Err(Error::Input(format!("pair ({x}, {y}) outside 0..{points}")));
            }
            source.push(units[y]);
            range.push(units[x]);
            for (h, &(y2, z)) in pairs.iter().enumerate() {
                if y2 == y {
                    let gh = index((x, z)).ok_or_else(|| {
                        Error::Input(format!("relation is not transitive at ({x}, {y}, {z})"))
                    })?;
                    product[g * n + h] = Some(gh);
                }
            }
        }
        let labels = pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
        // pairs are sorted, so the diagonal arrows appear in point order
        let unit_labels = (0..points).map(|x| x.to_string()).collect();
        FiniteGroupoid::new(labels, units, unit_labels, source, range, product)
    }

    /// The pair groupoid `X × X`.
    pub fn pair(points: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..points)
            .flat_map(|x| (0..points).map(move |y| (x, y)))
            .collect();
        Self::equivalence(points, &pairs)
    }

    /// DOT rendering: units as nodes, every arrow as an edge from its source
    /// to its range.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph germs {\n");
        for (i, label) in self.unit_labels.iter().enumerate() {
            let _ = writeln!(out, "  u{i} [label=\"{}\"];", escape(label));
        }
        for g in 0..self.len() {
            let s = self.unit_position(self.source[g]).unwrap();
            let r = self.unit_position(self.range[g]).unwrap();
            let _ = writeln!(
                out,
                "  u{s} -> u{r} [label=\"{}\"];",
                escape(&self.labels[g])
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self) -> GroupoidExport {
        GroupoidExport {
            units: self.unit_labels.clone(),
            arrows: (0..self.len())
                .map(|g| ArrowExport {
                    src: self.unit_position(self.source[g]).unwrap(),
                    dst: self.unit_position(self.range[g]).unwrap(),
                    label: self.labels[g].clone(),
                })
                .collect(),
            composition: self
                .composition_triples()
                .map(|(g, h, k)| [g, h, k])
                .collect(),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `{"units": [...], "arrows": [{"src", "dst", "label"}], "composition": [[i, j, k]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupoidExport {
    pub units: Vec<String>,
    pub arrows: Vec<ArrowExport>,
    pub composition: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrowExport {
    pub src: usize,
    pub dst: usize,
    pub label: String,
}

/// Backtracking search for an isomorphism of finite groupoids.
///
/// Units are matched first, then each remaining arrow is sent to an unused
/// arrow with the already-fixed endpoints, checking compositions among
/// assigned arrows at every step.
pub fn groupoid_isomorphic(a: &FiniteGroupoid, b: &FiniteGroupoid, caps: &Caps) -> Result<bool> {
    caps.check("groupoid arrows", a.len().max(b.len()), caps.iso_arrows)?;
    if a.len() != b.len() || a.units().len() != b.units().len() {
        return Ok(false);
    }
    let order: Vec<usize> = a
        .units()
        .iter()
        .copied()
        .chain((0..a.len()).filter(|&g| !a.is_unit(g)))
        .collect();
    let mut search = IsoSearch {
        a,
        b,
        profile_a: profiles(a),
        profile_b: profiles(b),
        map: vec![None; a.len()],
        used: vec![false; b.len()],
        assigned: Vec::new(),
    };
    Ok(search.extend(&order))
}

/// Per-unit counts of (loops, outgoing, incoming) arrows.
fn profiles(g: &FiniteGroupoid) -> Vec<(usize, usize, usize)> {
    let mut p = vec![(0, 0, 0); g.len()];
    for h in 0..g.len() {
        let (s, r) = (g.source(h), g.range(h));
        if s == r {
            p[s].0 += 1;
        }
        p[s].1 += 1;
        p[r].2 += 1;
    }
    p
}

struct IsoSearch<'a> {
    a: &'a FiniteGroupoid,
    b: &'a FiniteGroupoid,
    profile_a: Vec<(usize, usize, usize)>,
    profile_b: Vec<(usize, usize, usize)>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, order: &[usize]) -> bool {
        let Some((&g, rest)) = order.split_first() else {
            return true;
        };
        for cand in 0..self.b.len() {
            if self.used[cand] || !self.admissible(g, cand) {
                continue;
            }
            self.map[g] = Some(cand);
            self.used[cand] = true;
            self.assigned.push(g);
            if self.consistent(g) && self.extend(rest) {
                return true;
            }
            self.assigned.pop();
            self.used[cand] = false;
            self.map[g] = None;
        }
        false
    }

    fn admissible(&self, g: usize, cand: usize) -> bool {
        let (a, b) = (self.a, self.b);
        if a.is_unit(g) {
            return b.is_unit(cand) && self.profile_a[g] == self.profile_b[cand];
        }
        !b.is_unit(cand)
            && self.map[a.source(g)] == Some(b.source(cand))
            && self.map[a.range(g)] == Some(b.range(cand))
    }

    /// Every composition among assigned arrows involving `g` is preserved.
    fn consistent(&self, g: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let f = |x: usize| self.map[x];
        self.assigned.iter().all(|&h| {
            [(g, h), (h, g)]
                .into_iter()
                .all(|(x, y)| match a.compose(x, y) {
                    Some(xy) => match (f(xy), f(x), f(y)) {
                        (Some(img), Some(fx), Some(fy)) => b.compose(fx, fy) == Some(img),
                        _ => true,
                    },
                    None => true,
                })
                && {
                    // g may be the product of two assigned arrows
                    let gi = a.inverse(h);
                    match a.compose(gi, g) {
                        Some(k) => match (f(k), f(h)) {
                            (Some(fk), Some(fh)) => b.compose(fh, fk) == f(g),
                            _ => true,
                        },
                        None => true,
                    }
                }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_shape() {
        let g = FiniteGroupoid::pair(3).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g.units().len(), 3);
        for h in 0..g.len() {
            assert_eq!(g.compose(g.inverse(h), h), Some(g.source(h)));
        }
    }

    #[test]
    fn equivalence_requires_reflexive_transitive() {
        assert!(FiniteGroupoid::equivalence(2, &[(0, 0)]).is_err());
        assert!(FiniteGroupoid::equivalence(
            3,
            &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)]
        )
        .is_err());
    }

    #[test]
    fn isomorphism_basics() {
        let caps = Caps::default();
        let p3 = FiniteGroupoid::pair(3).unwrap();
        assert!(groupoid_isomorphic(&p3, &p3, &caps).unwrap());
        assert!(!groupoid_isomorphic(&p3, &FiniteGroupoid::pair(2).unwrap(), &caps).unwrap());
        // same arrow count (5) and unit count (3), different shapes
        let a = FiniteGroupoid::equivalence(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)]).unwrap();
        let b = FiniteGroupoid::equivalence(3, &[(0, 0), (1, 1), (2, 2), (1, 2), (2, 1)]).unwrap();
        assert!(groupoid_isomorphic(&a, &b, &caps).unwrap());
        let tight = Caps {
            iso_arrows: 4,
            ..caps
        };
        assert!(matches!(
            groupoid_isomorphic(&a, &b, &tight),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn isotropy_distinguishes_groupoids() {
        let caps = Caps::default();
        // Z/2 as a one-unit groupoid vs. two isolated units: counts differ in units
        let z2 = FiniteGroupoid::new(
            vec!["e".into(), "g".into()],
            vec![0],
            vec!["*".into()],
            vec![0, 0],
            vec![0, 0],
            vec![Some(0), Some(1), Some(1), Some(0)],
        )
        .unwrap();
        let two_units = FiniteGroupoid::equivalence(2, &[(0, 0), (1, 1)]).unwrap();
        assert!(!groupoid_isomorphic(&z2, &two_units, &caps).unwrap());
        assert!(groupoid_isomorphic(&z2, &z2, &caps).unwrap());
    }

    #[test]
    fn dot_and_json_export() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("[label=").count(), 6);
        assert_eq!(dot.matches(" -> ").count(), 4);
        let e = g.export();
        assert_eq!(e.units.len(), 2);
        assert_eq!(e.arrows.len(), 4);
        assert_eq!(e.composition.len(), 8);
    }

    #[test]
    fn rejects_broken_tables() {
        // product defined on a non-composable pair
        let err = FiniteGroupoid::new(
            vec!["u".into(), "v".into()],
            vec![0, 1],
            vec!["u".into(), "v".into()],
            vec![0, 1],
            vec![0, 1],
            vec![Some(0), Some(0), None, Some(1)],
        );
        assert!(matches!(err, Err(Error::Structure(_))));
    }
}
