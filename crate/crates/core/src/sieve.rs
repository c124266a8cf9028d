//! Sieves on an object and their Heyting algebra.
//!
//! A sieve on `c` is a set of arrows into `c` closed under precomposition.
//! Sieves on `c` are exactly the subobjects of the representable presheaf
//! `Hom(-, c)`, so they form a finite Heyting algebra.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::fincat::{ArrowId, FiniteCategory, ObjectId};

/// Upper bound on the number of sieves enumerated on a single object.
pub const MAX_SIEVES_PER_OBJECT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SieveError {
    #[error("arrow `{arrow}` does not have codomain `{expected}`")]
    WrongCodomain { arrow: String, expected: String },
    #[error("not a sieve: contains `{member}` but not its precomposite `{missing}`")]
    NotASieve { member: String, missing: String },
    #[error("sieves live in different categories")]
    CategoryMismatch,
    #[error("sieves on `{0}` and `{1}` cannot be combined")]
    CodomainMismatch(String, String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("object `{0}` carries more than {MAX_SIEVES_PER_OBJECT} sieves")]
    TooLarge(String),
}

/// A sieve on one object of a validated category.
#[derive(Clone)]
pub struct Sieve {
    cat: FiniteCategory,
    cod: ObjectId,
    arrows: BitSet,
}

impl PartialEq for Sieve {
    fn eq(&self, other: &Self) -> bool {
        self.cod == other.cod && self.arrows == other.arrows && self.cat.same_as(&other.cat)
    }
}

impl Eq for Sieve {}

impl fmt::Debug for Sieve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Sieve {
    /// Canonical form `c:{f, g}` with arrow names sorted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{{{}}}",
            self.cat.object_name(self.cod),
            self.arrow_names().join(", ")
        )
    }
}

// Mask-level algebra shared with the topology and presheaf modules.

pub(crate) fn is_sieve_mask(cat: &FiniteCategory, set: BitSet) -> bool {
    set.iter().all(|f| cat.principal(f).is_subset(set))
}

pub(crate) fn generate_mask(cat: &FiniteCategory, gens: BitSet) -> BitSet {
    // each principal sieve is already closed, so one union reaches the fixpoint
    gens.iter()
        .fold(BitSet::EMPTY, |acc, f| acc.union(cat.principal(f)))
}

/// `f*(S) = {g | f ∘ g ∈ S}`.
pub(crate) fn pullback_mask(cat: &FiniteCategory, set: BitSet, f: usize) -> BitSet {
    cat.arrows_into(cat.dom_ix(f))
        .iter()
        .filter(|&g| set.contains(cat.comp(f, g)))
        .collect()
}

/// `{f | f*(R) = ∅}`.
pub(crate) fn not_mask(cat: &FiniteCategory, c: usize, set: BitSet) -> BitSet {
    cat.arrows_into(c)
        .iter()
        .filter(|&f| cat.principal(f).is_disjoint(set))
        .collect()
}

/// `{f | f*(R) stably non-empty}`: every `f ∘ g` has a non-empty pullback.
pub(crate) fn not_not_mask(cat: &FiniteCategory, c: usize, set: BitSet) -> BitSet {
    cat.arrows_into(c)
        .iter()
        .filter(|&f| {
            cat.principal(f)
                .iter()
                .all(|h| !cat.principal(h).is_disjoint(set))
        })
        .collect()
}

/// `{f | f*(S) ⊆ f*(T)}`.
pub(crate) fn implies_mask(cat: &FiniteCategory, c: usize, s: BitSet, t: BitSet) -> BitSet {
    cat.arrows_into(c)
        .iter()
        .filter(|&f| cat.principal(f).intersection(s).is_subset(t))
        .collect()
}

/// Whether every pullback of `set` (a sieve on `c`) is non-empty.
pub(crate) fn stably_nonempty_mask(cat: &FiniteCategory, c: usize, set: BitSet) -> bool {
    cat.arrows_into(c)
        .iter()
        .all(|f| !cat.principal(f).is_disjoint(set))
}

/// All sieves on `c`, ascending by mask, or `None` past the size bound.
pub(crate) fn sieves_mask(cat: &FiniteCategory, c: usize) -> Option<Arc<[BitSet]>> {
    cat.cached_sieves(c, || {
        let arrows: Vec<usize> = cat.arrows_into(c).iter().collect();
        let mut out = Vec::new();
        // Branch on each arrow: including it forces its principal sieve in,
        // excluding it forces every arrow it factors through out.
        fn walk(
            cat: &FiniteCategory,
            arrows: &[usize],
            i: usize,
            inc: BitSet,
            exc: BitSet,
            out: &mut Vec<BitSet>,
        ) -> bool {
            if out.len() > MAX_SIEVES_PER_OBJECT {
                return false;
            }
            let Some(&f) = arrows.get(i) else {
                out.push(inc);
                return true;
            };
            if inc.contains(f) || exc.contains(f) {
                return walk(cat, arrows, i + 1, inc, exc, out);
            }
            let with = inc.union(cat.principal(f));
            if with.is_disjoint(exc) && !walk(cat, arrows, i + 1, with, exc, out) {
                return false;
            }
            walk(cat, arrows, i + 1, inc, exc.union(cat.above(f)), out)
        }
        if !walk(cat, &arrows, 0, BitSet::EMPTY, BitSet::EMPTY, &mut out) {
            return None;
        }
        out.sort();
        Some(out)
    })
}

impl Sieve {
    pub(crate) fn from_mask(cat: &FiniteCategory, cod: ObjectId, arrows: BitSet) -> Self {
        debug_assert!(arrows.is_subset(cat.arrows_into(cod.0)));
        debug_assert!(is_sieve_mask(cat, arrows));
        Sieve {
            cat: cat.clone(),
            cod,
            arrows,
        }
    }

    /// Validated constructor: every arrow must land in `c` and the set must be
    /// closed under precomposition.
    pub fn new(
        cat: &FiniteCategory,
        c: ObjectId,
        arrows: impl IntoIterator<Item = ArrowId>,
    ) -> Result<Self, SieveError> {
        let set = checked_set(cat, c, arrows)?;
        for f in set.iter() {
            if let Some(missing) = cat.principal(f).difference(set).iter().next() {
                return Err(SieveError::NotASieve {
                    member: cat.arrow_name(ArrowId(f)).to_string(),
                    missing: cat.arrow_name(ArrowId(missing)).to_string(),
                });
            }
        }
        Ok(Self::from_mask(cat, c, set))
    }

    /// Validated constructor from object and arrow names.
    pub fn from_names<S: AsRef<str>>(
        cat: &FiniteCategory,
        c: &str,
        arrows: &[S],
    ) -> Result<Self, SieveError> {
        let (c, arrows) = resolve_names(cat, c, arrows)?;
        Self::new(cat, c, arrows)
    }

    /// Smallest sieve on `c` containing `gens`.
    pub fn generated(
        cat: &FiniteCategory,
        c: ObjectId,
        gens: impl IntoIterator<Item = ArrowId>,
    ) -> Result<Self, SieveError> {
        let set = checked_set(cat, c, gens)?;
        Ok(Self::from_mask(cat, c, generate_mask(cat, set)))
    }

    pub fn empty(cat: &FiniteCategory, c: ObjectId) -> Self {
        Self::from_mask(cat, c, BitSet::EMPTY)
    }

    pub fn maximal(cat: &FiniteCategory, c: ObjectId) -> Self {
        Self::from_mask(cat, c, cat.arrows_into(c.0))
    }

    /// All sieves on `c`, including the empty and the maximal sieve, in
    /// canonical order.
    pub fn enumerate(cat: &FiniteCategory, c: ObjectId) -> Result<Vec<Self>, SieveError> {
        let masks = sieves_mask(cat, c.0)
            .ok_or_else(|| SieveError::TooLarge(cat.object_name(c).to_string()))?;
        Ok(masks
            .iter()
            .map(|&m| Self::from_mask(cat, c, m))
            .collect())
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn codomain(&self) -> ObjectId {
        self.cod
    }

    pub(crate) fn mask(&self) -> BitSet {
        self.arrows
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows.iter().map(ArrowId)
    }

    /// Member arrow names, sorted.
    pub fn arrow_names(&self) -> Vec<String> {
        self.cat.arrow_names(self.arrows)
    }

    pub fn contains(&self, f: ArrowId) -> bool {
        self.arrows.contains(f.0)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// A sieve is maximal iff it contains the identity.
    pub fn is_maximal(&self) -> bool {
        self.arrows.contains(self.cat.identity(self.cod).0)
    }

    pub fn is_subset(&self, other: &Sieve) -> bool {
        self.arrows.is_subset(other.arrows)
    }

    fn check_compatible(&self, other: &Sieve) -> Result<(), SieveError> {
        if !self.cat.same_as(&other.cat) {
            return Err(SieveError::CategoryMismatch);
        }
        if self.cod != other.cod {
            return Err(SieveError::CodomainMismatch(
                self.cat.object_name(self.cod).to_string(),
                self.cat.object_name(other.cod).to_string(),
            ));
        }
        Ok(())
    }

    /// `f*(S)`, a sieve on `dom f`.
    pub fn pullback(&self, f: ArrowId) -> Result<Sieve, SieveError> {
        if f.0 >= self.cat.num_arrows() {
            return Err(SieveError::CategoryMismatch);
        }
        if self.cat.cod(f) != self.cod {
            return Err(SieveError::WrongCodomain {
                arrow: self.cat.arrow_name(f).to_string(),
                expected: self.cat.object_name(self.cod).to_string(),
            });
        }
        Ok(Self::from_mask(
            &self.cat,
            self.cat.dom(f),
            pullback_mask(&self.cat, self.arrows, f.0),
        ))
    }

    pub fn union(&self, other: &Sieve) -> Result<Sieve, SieveError> {
        self.check_compatible(other)?;
        Ok(Self::from_mask(&self.cat, self.cod, self.arrows.union(other.arrows)))
    }

    pub fn intersection(&self, other: &Sieve) -> Result<Sieve, SieveError> {
        self.check_compatible(other)?;
        Ok(Self::from_mask(
            &self.cat,
            self.cod,
            self.arrows.intersection(other.arrows),
        ))
    }

    /// Heyting implication `S ⇒ T = {f | f*(S) ⊆ f*(T)}`.
    pub fn implies(&self, other: &Sieve) -> Result<Sieve, SieveError> {
        self.check_compatible(other)?;
        Ok(Self::from_mask(
            &self.cat,
            self.cod,
            implies_mask(&self.cat, self.cod.0, self.arrows, other.arrows),
        ))
    }

    /// Pseudocomplement `¬R = {f | f*(R) = ∅}`.
    pub fn not(&self) -> Sieve {
        Self::from_mask(&self.cat, self.cod, not_mask(&self.cat, self.cod.0, self.arrows))
    }

    /// `¬¬R = {f | f*(R) is stably non-empty}`.
    pub fn not_not(&self) -> Sieve {
        Self::from_mask(
            &self.cat,
            self.cod,
            not_not_mask(&self.cat, self.cod.0, self.arrows),
        )
    }

    /// Every pullback of this sieve is non-empty.
    pub fn is_stably_nonempty(&self) -> bool {
        stably_nonempty_mask(&self.cat, self.cod.0, self.arrows)
    }
}

fn checked_set(
    cat: &FiniteCategory,
    c: ObjectId,
    arrows: impl IntoIterator<Item = ArrowId>,
) -> Result<BitSet, SieveError> {
    if c.0 >= cat.num_objects() {
        return Err(SieveError::CategoryMismatch);
    }
    let mut set = BitSet::EMPTY;
    for f in arrows {
        if f.0 >= cat.num_arrows() {
            return Err(SieveError::CategoryMismatch);
        }
        if cat.cod(f) != c {
            return Err(SieveError::WrongCodomain {
                arrow: cat.arrow_name(f).to_string(),
                expected: cat.object_name(c).to_string(),
            });
        }
        set.insert(f.0);
    }
    Ok(set)
}

pub(crate) fn resolve_names<S: AsRef<str>>(
    cat: &FiniteCategory,
    c: &str,
    arrows: &[S],
) -> Result<(ObjectId, Vec<ArrowId>), SieveError> {
    let obj = cat
        .object(c)
        .ok_or_else(|| SieveError::UnknownObject(c.to_string()))?;
    let ids = arrows
        .iter()
        .map(|a| {
            cat.arrow(a.as_ref())
                .ok_or_else(|| SieveError::UnknownArrow(a.as_ref().to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((obj, ids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(cat: &FiniteCategory, c: &str, arrows: &[&str]) -> Sieve {
        Sieve::from_names(cat, c, arrows).unwrap()
    }

    #[test]
    fn generation_on_walk() {
        let w = fixtures::walk();
        let b = w.object("b").unwrap();
        let u = w.arrow("u").unwrap();
        let id_b = w.identity(b);
        assert_eq!(Sieve::generated(&w, b, [u]).unwrap(), s(&w, "b", &["u"]));
        let max = Sieve::generated(&w, b, [id_b]).unwrap();
        assert_eq!(max, s(&w, "b", &["u", "id_b"]));
        assert!(max.is_maximal());
        assert!(Sieve::generated(&w, b, []).unwrap().is_empty());
        let a = w.object("a").unwrap();
        assert!(matches!(
            Sieve::generated(&w, a, [u]),
            Err(SieveError::WrongCodomain { .. })
        ));
    }

    #[test]
    fn unclosed_set_is_rejected() {
        let w = fixtures::walk();
        assert!(matches!(
            Sieve::from_names(&w, "b", &["id_b"]),
            Err(SieveError::NotASieve { .. })
        ));
    }

    #[test]
    fn pullbacks_on_walk() {
        let w = fixtures::walk();
        let u = w.arrow("u").unwrap();
        let su = s(&w, "b", &["u"]);
        let back = su.pullback(u).unwrap();
        assert!(back.is_maximal());
        assert_eq!(back, s(&w, "a", &["id_a"]));
        let id_b = w.arrow("id_b").unwrap();
        assert_eq!(su.pullback(id_b).unwrap(), su);
        let b = w.object("b").unwrap();
        assert!(Sieve::empty(&w, b).pullback(u).unwrap().is_empty());
    }

    #[test]
    fn union_and_intersection() {
        let c = fixtures::cospan();
        let sf = s(&c, "c", &["f"]);
        let sg = s(&c, "c", &["g"]);
        assert_eq!(sf.union(&sg).unwrap(), s(&c, "c", &["f", "g"]));
        let obj = c.object("c").unwrap();
        assert_eq!(sf.union(&Sieve::empty(&c, obj)).unwrap(), sf);
        assert_eq!(sf.intersection(&Sieve::maximal(&c, obj)).unwrap(), sf);
        let on_a = Sieve::maximal(&c, c.object("a").unwrap());
        assert!(matches!(sf.union(&on_a), Err(SieveError::CodomainMismatch(..))));
        let w = fixtures::walk();
        let other = Sieve::maximal(&w, w.object("a").unwrap());
        assert_eq!(on_a.union(&other).unwrap_err(), SieveError::CategoryMismatch);
    }

    #[test]
    fn negation_examples() {
        let w = fixtures::walk();
        let b = w.object("b").unwrap();
        assert!(s(&w, "b", &["u"]).not().is_empty());
        assert!(Sieve::empty(&w, b).not().is_maximal());
        assert!(s(&w, "b", &["u"]).not_not().is_maximal());
        assert!(Sieve::maximal(&w, b).not_not().is_maximal());

        let c = fixtures::cospan();
        assert_eq!(s(&c, "c", &["f"]).not(), s(&c, "c", &["g"]));
        assert_eq!(s(&c, "c", &["f"]).not_not(), s(&c, "c", &["f"]));
    }

    #[test]
    fn implication_examples() {
        let c = fixtures::cospan();
        let obj = c.object("c").unwrap();
        let sf = s(&c, "c", &["f"]);
        let max = Sieve::maximal(&c, obj);
        assert!(sf.implies(&sf).unwrap().is_maximal());
        assert_eq!(max.implies(&sf).unwrap(), sf);
        assert_eq!(sf.implies(&Sieve::empty(&c, obj)).unwrap(), s(&c, "c", &["g"]));
    }

    #[test]
    fn enumeration_counts() {
        let w = fixtures::walk();
        let b = w.object("b").unwrap();
        let all = Sieve::enumerate(&w, b).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.contains(&s(&w, "b", &[])));
        assert!(all.contains(&s(&w, "b", &["u"])));
        assert!(all.contains(&s(&w, "b", &["u", "id_b"])));

        let z2 = fixtures::z2();
        let star = z2.object("*").unwrap();
        let all = Sieve::enumerate(&z2, star).unwrap();
        assert_eq!(all, vec![Sieve::empty(&z2, star), Sieve::maximal(&z2, star)]);

        let t = fixtures::term();
        assert_eq!(Sieve::enumerate(&t, t.object("*").unwrap()).unwrap().len(), 2);
    }

    /// Brute-force filter over all subsets of arrows into `c`.
    fn brute_sieves(cat: &FiniteCategory, c: ObjectId) -> Vec<BitSet> {
        let into: Vec<ArrowId> = cat.arrows().filter(|&f| cat.cod(f) == c).collect();
        let mut out = Vec::new();
        for bits in 0u32..(1 << into.len()) {
            let set: Vec<ArrowId> = (0..into.len())
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| into[i])
                .collect();
            let closed = set.iter().all(|&f| {
                cat.arrows()
                    .filter_map(|g| cat.compose(f, g))
                    .all(|fg| set.contains(&fg))
            });
            if closed {
                out.push(set.iter().map(|f| f.index()).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force_on_corpus() {
        for cat in fixtures::all() {
            for c in cat.objects() {
                let fast: Vec<BitSet> = Sieve::enumerate(&cat, c)
                    .unwrap()
                    .iter()
                    .map(|s| s.mask())
                    .collect();
                assert_eq!(fast, brute_sieves(&cat, c), "{} {:?}", cat.label(), c);
            }
        }
    }

    #[test]
    fn display_is_sorted() {
        let c = fixtures::cospan();
        assert_eq!(s(&c, "c", &["g", "f"]).to_string(), "c:{f, g}");
    }
}
