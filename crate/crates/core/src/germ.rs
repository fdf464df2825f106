//! The germ groupoid `G(S)` of a finite Boolean inverse monoid.
//!
//! Arrows are classes `[φ, x]` of pairs with `x(φ⁻¹φ) = 1`, where
//! `(φ, x) ∼ (ψ, y)` iff `x = y` and `φp = ψp` for some idempotent `p` with
//! `x(p) = 1`. For a character `x_a` given by the atom `a`, any such `p`
//! lies above `a`, so `φa = ψa`; conversely `p = a` is a witness. The pair
//! `(a, φ·a)` therefore classifies germs, and `φ·a` alone determines `a` as
//! its source idempotent. That key is what [`Germ`] stores; the literal
//! relation [`germ_equivalent`] is kept for cross-checking.
//!
//! Orientation: `source([φ, x]) = [1, x]` and `range([φ, x]) = [1, α_φ(x)]`,
//! so `[φ, x]·[ψ, y]` is defined iff `x = α_ψ(y)` and equals `[φψ, y]`.
//!
//! `G(S)` is finite and hence discrete: every subset is open and compact, and
//! the topological statements about it reduce to set identities.

use std::collections::HashMap;
use std::sync::Arc;

use crate::config::Caps;
use crate::groupoid::FiniteGroupoid;
use crate::monoid::FiniteInverseMonoid;
use crate::stone::{BooleanAlgebraView, CharSet, Character};
use crate::{Error, Result};

/// A germ `[φ, x_a]`, stored as its canonical representative `(φ·a, x_a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Germ {
    atom: usize,
    element: usize,
}

impl Germ {
    /// The canonical representative `φ·a` of the class.
    pub fn element(&self) -> usize {
        self.element
    }

    pub fn atom(&self) -> usize {
        self.atom
    }

    /// The character `x_a` at which the germ is taken.
    pub fn character(&self) -> Character {
        char_of(self.atom)
    }
}

fn char_of(atom: usize) -> Character {
    // Characters are only ever built from atoms of a validated algebra.
    crate::stone::character_from_atom(atom)
}

/// `Ê(S)_φ = { x : x(φ⁻¹φ) = 1 }`.
pub fn char_support(alg: &BooleanAlgebraView, phi: usize) -> Result<CharSet> {
    let m = alg.monoid();
    m.check_index(phi)?;
    Ok(alg.open_set(m.source_idempotent(phi)))
}

fn in_support(alg: &BooleanAlgebraView, phi: usize, x: Character) -> bool {
    alg.eval(x, alg.monoid().source_idempotent(phi))
}

fn require_support(alg: &BooleanAlgebraView, phi: usize, x: Character) -> Result<()> {
    alg.monoid().check_index(phi)?;
    if alg.character_of(x.atom()).is_none() {
        return Err(Error::Precondition(format!(
            "{} is not an atom",
            alg.monoid().name(x.atom())
        )));
    }
    if !in_support(alg, phi, x) {
        return Err(Error::Precondition(format!(
            "x_{} is not in the support of {}",
            alg.monoid().name(x.atom()),
            alg.monoid().name(phi)
        )));
    }
    Ok(())
}

/// `α_φ(x)`: the character `p ↦ x(φ⁻¹pφ)`, found by matching value tables
/// against every atom.
pub fn alpha(alg: &BooleanAlgebraView, phi: usize, x: Character) -> Result<Character> {
    require_support(alg, phi, x)?;
    alpha_unchecked(alg, phi, x)
}

pub(crate) fn alpha_unchecked(
    alg: &BooleanAlgebraView,
    phi: usize,
    x: Character,
) -> Result<Character> {
    let m = alg.monoid();
    let phi_inv = m.inv(phi);
    let target: Vec<bool> = alg
        .carrier()
        .iter()
        .map(|&p| alg.eval(x, m.mul_all(&[phi_inv, p, phi])))
        .collect();
    alg.atoms()
        .iter()
        .map(|&a| char_of(a))
        .find(|&y| {
            alg.carrier()
                .iter()
                .zip(&target)
                .all(|(&p, &t)| alg.eval(y, p) == t)
        })
        .ok_or_else(|| {
            Error::Structure(format!(
                "no character realizes α_{}(x_{})",
                m.name(phi),
                m.name(x.atom())
            ))
        })
}

/// The defining relation on `S ∗ Ê(S)`, by search over all idempotents.
pub fn germ_equivalent(
    alg: &BooleanAlgebraView,
    (phi, x): (usize, Character),
    (psi, y): (usize, Character),
) -> Result<bool> {
    require_support(alg, phi, x)?;
    require_support(alg, psi, y)?;
    let m = alg.monoid();
    Ok(x == y
        && alg
            .carrier()
            .iter()
            .any(|&p| alg.eval(x, p) && m.mul(phi, p) == m.mul(psi, p)))
}

/// The class key `(a, φ·a)` of `(φ, x_a)`.
pub fn canonical_germ(alg: &BooleanAlgebraView, phi: usize, x: Character) -> Result<Germ> {
    require_support(alg, phi, x)?;
    Ok(canon(alg.monoid(), phi, x))
}

fn canon(m: &FiniteInverseMonoid, phi: usize, x: Character) -> Germ {
    Germ {
        atom: x.atom(),
        element: m.mul(phi, x.atom()),
    }
}

/// `G(S)` with its germs in canonical order and the groupoid tables built
/// from the germ operations.
#[derive(Debug, Clone)]
pub struct GermGroupoid {
    algebra: BooleanAlgebraView,
    characters: Vec<Character>,
    germs: Vec<Germ>,
    index: HashMap<Germ, usize>,
    groupoid: FiniteGroupoid,
}

/// Builds `G(S)`. `s` should already pass the Boolean-inverse-monoid axioms;
/// the idempotent algebra and the groupoid axioms are checked here.
pub fn build_germ_groupoid(s: &FiniteInverseMonoid, caps: &Caps) -> Result<GermGroupoid> {
    caps.check("monoid", s.len(), caps.elements)?;
    GermGroupoid::new(Arc::new(s.clone()), caps)
}

impl GermGroupoid {
    pub fn new(monoid: Arc<FiniteInverseMonoid>, caps: &Caps) -> Result<Self> {
        let algebra = BooleanAlgebraView::new(monoid)?;
        let characters = algebra.characters(caps.character_oracle)?;
        let m = algebra.monoid();
        let alg = &algebra;

        let mut germs: Vec<Germ> = (0..m.len())
            .flat_map(|phi| {
                characters
                    .iter()
                    .filter(move |&&x| in_support(alg, phi, x))
                    .map(move |&x| canon(m, phi, x))
            })
            .collect();
        germs.sort();
        germs.dedup();
        let index: HashMap<Germ, usize> = germs.iter().enumerate().map(|(i, g)| (*g, i)).collect();

        let n = germs.len();
        let unit_of = |x: Character| index[&canon(m, m.one(), x)];
        let units: Vec<usize> = characters.iter().map(|&x| unit_of(x)).collect();
        let unit_labels = characters
            .iter()
            .map(|x| m.name(x.atom()).to_owned())
            .collect();
        let mut source = Vec::with_capacity(n);
        let mut range = Vec::with_capacity(n);
        let mut ranges = Vec::with_capacity(n);
        for g in &germs {
            let r = alpha_unchecked(&algebra, g.element, g.character())?;
            source.push(unit_of(g.character()));
            range.push(unit_of(r));
            ranges.push(r);
        }
        let mut product = vec![None; n * n];
        for (i, g) in germs.iter().enumerate() {
            for (j, h) in germs.iter().enumerate() {
                if g.character() == ranges[j] {
                    let gh = canon(m, m.mul(g.element, h.element), h.character());
                    let k = *index.get(&gh).ok_or_else(|| {
                        Error::Structure(format!(
                            "product of {} and {} is not a germ",
                            m.name(g.element),
                            m.name(h.element)
                        ))
                    })?;
                    product[i * n + j] = Some(k);
                }
            }
        }
        let labels = germs.iter().map(|g| m.name(g.element).to_owned()).collect();
        let groupoid = FiniteGroupoid::new(labels, units, unit_labels, source, range, product)?;
        Ok(GermGroupoid {
            algebra,
            characters,
            germs,
            index,
            groupoid,
        })
    }

    pub fn algebra(&self) -> &BooleanAlgebraView {
        &self.algebra
    }

    pub fn monoid(&self) -> &FiniteInverseMonoid {
        self.algebra.monoid()
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn germs(&self) -> &[Germ] {
        &self.germs
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    /// Arrow index of a germ.
    pub fn arrow(&self, g: Germ) -> usize {
        self.index[&g]
    }

    /// `[φ, x]`; requires `x(φ⁻¹φ) = 1`.
    pub fn germ(&self, phi: usize, x: Character) -> Result<Germ> {
        canonical_germ(&self.algebra, phi, x)
    }

    pub fn arrow_of(&self, phi: usize, x: Character) -> Result<usize> {
        Ok(self.arrow(self.germ(phi, x)?))
    }

    /// `[1, x]`
    pub fn unit(&self, x: Character) -> Germ {
        canon(self.monoid(), self.monoid().one(), x)
    }

    pub fn source(&self, g: Germ) -> Germ {
        self.unit(g.character())
    }

    pub fn range(&self, g: Germ) -> Result<Germ> {
        Ok(self.unit(alpha(&self.algebra, g.element, g.character())?))
    }

    /// `[φ, x]·[ψ, y] = [φψ, y]`, defined when `x = α_ψ(y)`.
    pub fn compose_germs(&self, g: Germ, h: Germ) -> Result<Germ> {
        let m = self.monoid();
        let y = h.character();
        if g.character() != alpha(&self.algebra, h.element, y)? {
            return Err(Error::NotComposable(format!(
                "[{}, x_{}] after [{}, x_{}]",
                m.name(g.element),
                m.name(g.atom),
                m.name(h.element),
                m.name(h.atom)
            )));
        }
        let phi_psi = m.mul(g.element, h.element);
        if !in_support(&self.algebra, phi_psi, y) {
            return Err(Error::Structure(format!(
                "x_{} leaves the support of {}",
                m.name(y.atom()),
                m.name(phi_psi)
            )));
        }
        Ok(canon(m, phi_psi, y))
    }

    /// `[φ, x]⁻¹ = [φ⁻¹, α_φ(x)]`.
    pub fn inverse_germ(&self, g: Germ) -> Result<Germ> {
        let m = self.monoid();
        let y = alpha(&self.algebra, g.element, g.character())?;
        self.germ(m.inv(g.element), y)
    }
}
