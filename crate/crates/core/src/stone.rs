//! The Boolean algebra of idempotents and its (finite) character space.
//!
//! A finite Boolean algebra is atomic, and its characters are exactly the
//! maps `p ↦ [a ≤ p]` for atoms `a`. Characters are therefore stored as their
//! defining atom. The character space of a finite algebra is discrete, so the
//! topology is just the family of basic sets [`BooleanAlgebraView::basic_open`].

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::monoid::FiniteInverseMonoid;
use crate::{Error, Result};

/// A `{0,1}`-valued homomorphism on the idempotents, `x_a(p) = 1` iff `a·p = a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    atom: usize,
}

impl Character {
    /// The defining atom (an idempotent index of the owning monoid).
    pub fn atom(&self) -> usize {
        self.atom
    }
}

pub(crate) fn character_from_atom(atom: usize) -> Character {
    Character { atom }
}

pub type CharSet = BTreeSet<Character>;

/// `E(S)` with meet = product, join `p ∨ q = p ∨ (q ∖ (p ∧ q))` and
/// complement `1 ∖ p`, validated on construction.
#[derive(Debug, Clone)]
pub struct BooleanAlgebraView {
    monoid: Arc<FiniteInverseMonoid>,
    carrier: Vec<usize>,
    complement: Vec<Option<usize>>,
    atoms: Vec<usize>,
}

impl BooleanAlgebraView {
    pub fn new(monoid: Arc<FiniteInverseMonoid>) -> Result<Self> {
        let m = &*monoid;
        let carrier = m.idempotents().to_vec();
        let mut complement = vec![None; m.len()];
        for &p in &carrier {
            complement[p] = Some(m.relative_complement(m.one(), p)?);
        }
        let mut view = BooleanAlgebraView {
            monoid,
            carrier,
            complement,
            atoms: Vec::new(),
        };
        view.check_laws()?;
        view.atoms = view.find_atoms()?;
        Ok(view)
    }

    pub fn from_monoid(m: &FiniteInverseMonoid) -> Result<Self> {
        Self::new(Arc::new(m.clone()))
    }

    pub fn monoid(&self) -> &FiniteInverseMonoid {
        &self.monoid
    }

    pub fn shared_monoid(&self) -> Arc<FiniteInverseMonoid> {
        Arc::clone(&self.monoid)
    }

    /// The idempotents, in canonical order.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn bottom(&self) -> usize {
        self.monoid.zero()
    }

    pub fn top(&self) -> usize {
        self.monoid.one()
    }

    pub fn meet(&self, p: usize, q: usize) -> usize {
        self.monoid.mul(p, q)
    }

    /// `p ∨ (q ∖ (p ∧ q))`; panics if `p` or `q` is not idempotent in a
    /// validated algebra.
    pub fn join(&self, p: usize, q: usize) -> usize {
        let m = &*self.monoid;
        let rest = m
            .relative_complement(q, m.mul(p, q))
            .expect("validated Boolean algebra");
        m.join_opt(p, rest).expect("validated Boolean algebra")
    }

    pub fn complement(&self, p: usize) -> usize {
        self.complement[p].expect("complement of an idempotent")
    }

    fn require_idempotent(&self, p: usize) -> Result<()> {
        self.monoid.check_index(p)?;
        if self.complement[p].is_none() {
            return Err(Error::Precondition(format!(
                "{} is not idempotent",
                self.monoid.name(p)
            )));
        }
        Ok(())
    }

    fn check_laws(&self) -> Result<()> {
        let m = &*self.monoid;
        let nm = |a: usize| m.name(a);
        let fail = |msg: String| Err(Error::Structure(msg));
        for &p in &self.carrier {
            for &q in &self.carrier {
                let rest = m.relative_complement(q, m.mul(p, q))?;
                if m.join_opt(p, rest).is_none() {
                    return fail(format!(
                        "{} and {} have no orthogonalized join",
                        nm(p),
                        nm(q)
                    ));
                }
            }
        }
        for &p in &self.carrier {
            let c = self.complement(p);
            if self.meet(p, c) != m.zero() || self.join(p, c) != m.one() {
                return fail(format!("{} is not a complement of {}", nm(c), nm(p)));
            }
            if self.join(p, m.zero()) != p || self.meet(p, m.one()) != p {
                return fail(format!("bounds fail at {}", nm(p)));
            }
            for &q in &self.carrier {
                if self.join(p, q) != self.join(q, p) {
                    return fail(format!(
                        "join of {} and {} is not commutative",
                        nm(p),
                        nm(q)
                    ));
                }
                if self.join(p, self.meet(p, q)) != p || self.meet(p, self.join(p, q)) != p {
                    return fail(format!("absorption fails for {} and {}", nm(p), nm(q)));
                }
                for &r in &self.carrier {
                    if self.meet(p, self.join(q, r)) != self.join(self.meet(p, q), self.meet(p, r))
                    {
                        return fail(format!(
                            "distributivity fails for {}, {}, {}",
                            nm(p),
                            nm(q),
                            nm(r)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn find_atoms(&self) -> Result<Vec<usize>> {
        let m = &*self.monoid;
        let atoms: Vec<usize> = self
            .carrier
            .iter()
            .copied()
            .filter(|&p| {
                p != m.zero()
                    && !self
                        .carrier
                        .iter()
                        .any(|&q| q != m.zero() && q != p && m.leq(q, p))
            })
            .collect();
        if m.join_all(atoms.iter().copied()) != Some(m.one()) {
            return Err(Error::Structure(
                "the atoms do not join to the identity".into(),
            ));
        }
        Ok(atoms)
    }

    /// Minimal nonzero idempotents, in canonical order.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// One character per atom. When `|E(S)| ≤ oracle_limit` the result is also
    /// compared with a brute-force enumeration of every `{0,1}`-valued map on
    /// the idempotents that preserves `0`, `1`, meets and complements.
    pub fn characters(&self, oracle_limit: usize) -> Result<Vec<Character>> {
        let chars: Vec<Character> = self.atoms.iter().map(|&atom| Character { atom }).collect();
        if self.carrier.len() <= oracle_limit {
            let mut from_atoms: Vec<Vec<bool>> =
                chars.iter().map(|x| self.value_table(*x)).collect();
            let mut brute = self.brute_force_characters();
            from_atoms.sort();
            brute.sort();
            if from_atoms != brute {
                return Err(Error::Structure(format!(
                    "{} atom characters but {} homomorphisms to {{0,1}}",
                    from_atoms.len(),
                    brute.len()
                )));
            }
        }
        Ok(chars)
    }

    /// Every homomorphism `E(S) → {0,1}` as a value table over [`Self::carrier`].
    pub fn brute_force_characters(&self) -> Vec<Vec<bool>> {
        let m = &*self.monoid;
        let k = self.carrier.len();
        assert!(k < 32, "brute force over 2^{k} maps");
        let pos = |p: usize| self.carrier.binary_search(&p).unwrap();
        let mut out = Vec::new();
        for bits in 0u64..(1 << k) {
            let x = |p: usize| bits >> pos(p) & 1 == 1;
            let hom = !x(m.zero())
                && x(m.one())
                && self.carrier.iter().all(|&p| {
                    x(self.complement(p)) != x(p)
                        && self
                            .carrier
                            .iter()
                            .all(|&q| x(self.meet(p, q)) == (x(p) && x(q)))
                });
            if hom {
                out.push((0..k).map(|i| bits >> i & 1 == 1).collect());
            }
        }
        out
    }

    fn value_table(&self, x: Character) -> Vec<bool> {
        self.carrier.iter().map(|&p| self.eval(x, p)).collect()
    }

    /// `x(p)`; `p` must be idempotent.
    pub fn evaluate(&self, x: Character, p: usize) -> Result<bool> {
        self.require_idempotent(p)?;
        Ok(self.eval(x, p))
    }

    #[inline]
    pub(crate) fn eval(&self, x: Character, p: usize) -> bool {
        self.monoid.mul(x.atom, p) == x.atom
    }

    pub fn character_of(&self, atom: usize) -> Option<Character> {
        self.atoms
            .binary_search(&atom)
            .ok()
            .map(|_| Character { atom })
    }

    /// `{ x : x(e) = 1 }`, i.e. the atoms below `e`.
    pub fn basic_open(&self, e: usize) -> Result<CharSet> {
        self.require_idempotent(e)?;
        Ok(self.open_set(e))
    }

    pub(crate) fn open_set(&self, e: usize) -> CharSet {
        self.atoms
            .iter()
            .map(|&atom| Character { atom })
            .filter(|&x| self.eval(x, e))
            .collect()
    }

    pub fn export(&self) -> AtomsExport {
        AtomsExport {
            atoms: self
                .atoms
                .iter()
                .map(|&a| self.monoid.name(a).to_owned())
                .collect(),
            characters: self.atoms.len(),
        }
    }
}

/// `{"atoms": [...], "characters": count}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomsExport {
    pub atoms: Vec<String>,
    pub characters: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::partial::{PartialBijection, PointSet};
    use crate::symmetric::symmetric_inverse_monoid;

    fn view(n: usize) -> (crate::symmetric::PartialBijectionMonoid, BooleanAlgebraView) {
        let s = symmetric_inverse_monoid(PointSet::new(n).unwrap(), &Caps::default()).unwrap();
        let v = BooleanAlgebraView::from_monoid(s.monoid()).unwrap();
        (s, v)
    }

    fn id_on(s: &crate::symmetric::PartialBijectionMonoid, mask: u64) -> usize {
        s.index_of(&PartialBijection::identity_on(s.points(), mask))
            .unwrap()
    }

    #[test]
    fn atoms_of_small_algebras() {
        let (s, v) = view(2);
        assert_eq!(v.atoms(), &[id_on(&s, 0b01), id_on(&s, 0b10)]);
        let (_, v) = view(3);
        assert_eq!(v.atoms().len(), 3);
        assert_eq!(v.carrier().len(), 8);

        let two = FiniteInverseMonoid::from_table(
            vec!["0".into(), "1".into()],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .unwrap();
        let v = BooleanAlgebraView::from_monoid(&two).unwrap();
        assert_eq!(v.atoms(), &[1]);
        assert_eq!(v.characters(16).unwrap().len(), 1);
    }

    #[test]
    fn characters_match_brute_force() {
        let (_, v) = view(2);
        assert_eq!(v.characters(16).unwrap().len(), 2);
        assert_eq!(v.brute_force_characters().len(), 2);
        let (_, v) = view(3);
        assert_eq!(v.characters(16).unwrap().len(), 3);
    }

    #[test]
    fn evaluation_and_basic_opens() {
        let (s, v) = view(3);
        let x0 = v.character_of(id_on(&s, 0b001)).unwrap();
        let x1 = v.character_of(id_on(&s, 0b010)).unwrap();
        let one = s.monoid().one();
        assert!(v.evaluate(x0, one).unwrap());
        assert!(!v.evaluate(x0, s.monoid().zero()).unwrap());
        assert!(v.evaluate(x0, id_on(&s, 0b011)).unwrap());
        assert_eq!(
            v.basic_open(id_on(&s, 0b011)).unwrap(),
            CharSet::from([x0, x1])
        );
        assert_eq!(v.basic_open(one).unwrap().len(), 3);
        assert!(v.basic_open(s.monoid().zero()).unwrap().is_empty());

        let swap = s
            .index_of(&PartialBijection::from_pairs(s.points(), &[(0, 1), (1, 0)]).unwrap())
            .unwrap();
        assert!(matches!(v.evaluate(x0, swap), Err(Error::Precondition(_))));
        assert!(v.basic_open(swap).is_err());
    }

    #[test]
    fn chain_has_no_boolean_view() {
        let chain = FiniteInverseMonoid::from_table(
            vec!["0".into(), "e".into(), "1".into()],
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            0,
            2,
        )
        .unwrap();
        assert!(matches!(
            BooleanAlgebraView::from_monoid(&chain),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn export_shape() {
        let (_, v) = view(2);
        let json = serde_json::to_string(&v.export()).unwrap();
        assert_eq!(json, r#"{"atoms":["{0->0}","{1->1}"],"characters":2}"#);
    }
}
