//! Grothendieck topologies on finite categories.
//!
//! Topologies are stored extensionally as the set of covering sieves on each
//! object. Every constructor either saturates (least topology containing a
//! family) or runs the exhaustive axiom checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::fincat::{ArrowId, FiniteCategory, ObjectId};
use crate::format::TopologyFile;
use crate::sieve::{
    not_mask, not_not_mask, pullback_mask, sieves_mask, stably_nonempty_mask, Sieve, SieveError,
};

/// Default cap on the total number of sieves (summed over objects) for
/// [`GrothendieckTopology::enumerate`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("topologies live on different categories")]
    CategoryMismatch,
    #[error("{0}")]
    TooLarge(String),
    #[error("not a Grothendieck topology: {0}")]
    Axiom(AxiomViolation),
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error("topology file names category `{found}`, expected `{expected}`")]
    WrongCategory { found: String, expected: String },
}

/// First failing axiom found by the checker, with the witnessing sieves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// The maximal sieve on `object` is not covering.
    Maximality { object: String },
    /// `cover` covers `object` but its pullback along `arrow` does not cover.
    Stability {
        object: String,
        cover: Vec<String>,
        arrow: String,
        pullback: Vec<String>,
    },
    /// Every pullback of `sieve` along arrows of the covering `cover` covers,
    /// yet `sieve` is not covering.
    Transitivity {
        object: String,
        cover: Vec<String>,
        sieve: Vec<String>,
    },
    /// `sieve` contains the covering `cover` but is not covering.
    Upward {
        object: String,
        cover: Vec<String>,
        sieve: Vec<String>,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[String]| format!("{{{}}}", v.join(", "));
        match self {
            AxiomViolation::Maximality { object } => {
                write!(f, "maximality: the maximal sieve on `{object}` is not covering")
            }
            AxiomViolation::Stability {
                object,
                cover,
                arrow,
                pullback,
            } => write!(
                f,
                "stability: {} covers `{object}` but its pullback along `{arrow}`, {}, does not cover",
                show(cover),
                show(pullback)
            ),
            AxiomViolation::Transitivity {
                object,
                cover,
                sieve,
            } => write!(
                f,
                "transitivity: {} on `{object}` is locally covering over the cover {} but not covering",
                show(sieve),
                show(cover)
            ),
            AxiomViolation::Upward {
                object,
                cover,
                sieve,
            } => write!(
                f,
                "upward closure: {} on `{object}` contains the cover {} but is not covering",
                show(sieve),
                show(cover)
            ),
        }
    }
}

pub(crate) type Covers = Vec<BTreeSet<BitSet>>;

/// A Grothendieck topology on a finite category.
#[derive(Clone)]
pub struct GrothendieckTopology {
    cat: FiniteCategory,
    covers: Covers,
}

impl PartialEq for GrothendieckTopology {
    fn eq(&self, other: &Self) -> bool {
        self.covers == other.covers && self.cat.same_as(&other.cat)
    }
}

impl Eq for GrothendieckTopology {}

impl fmt::Debug for GrothendieckTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GrothendieckTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cat
            .objects()
            .map(|c| {
                let sieves: Vec<String> = self
                    .sorted_names(c)
                    .into_iter()
                    .map(|s| format!("{{{}}}", s.join(",")))
                    .collect();
                format!("{}:{{{}}}", self.cat.object_name(c), sieves.join(", "))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub(crate) fn sieve_space(cat: &FiniteCategory, c: usize) -> Result<std::sync::Arc<[BitSet]>, TopologyError> {
    sieves_mask(cat, c).ok_or_else(|| {
        TopologyError::TooLarge(format!(
            "object `{}` carries too many sieves",
            cat.object_name(ObjectId(c))
        ))
    })
}

/// Exhaustive check of maximality, stability, transitivity and upward closure.
pub(crate) fn check_axioms(cat: &FiniteCategory, covers: &Covers) -> Result<Result<(), AxiomViolation>, TopologyError> {
    let names = |s: BitSet| cat.arrow_names(s);
    for (c, set) in covers.iter().enumerate() {
        if !set.contains(&cat.arrows_into(c)) {
            return Ok(Err(AxiomViolation::Maximality {
                object: cat.object_name(ObjectId(c)).to_string(),
            }));
        }
    }
    for c in 0..cat.num_objects() {
        for &s in &covers[c] {
            for f in cat.arrows_into(c).iter() {
                let p = pullback_mask(cat, s, f);
                if !covers[cat.dom_ix(f)].contains(&p) {
                    return Ok(Err(AxiomViolation::Stability {
                        object: cat.object_name(ObjectId(c)).to_string(),
                        cover: names(s),
                        arrow: cat.arrow_name(ArrowId(f)).to_string(),
                        pullback: names(p),
                    }));
                }
            }
        }
    }
    for c in 0..cat.num_objects() {
        let space = sieve_space(cat, c)?;
        for &r in space.iter().filter(|r| !covers[c].contains(r)) {
            if let Some(&s) = covers[c].iter().find(|&&s| locally_covers(cat, covers, s, r)) {
                return Ok(Err(AxiomViolation::Transitivity {
                    object: cat.object_name(ObjectId(c)).to_string(),
                    cover: names(s),
                    sieve: names(r),
                }));
            }
            if let Some(&s) = covers[c].iter().find(|&&s| s.is_subset(r)) {
                return Ok(Err(AxiomViolation::Upward {
                    object: cat.object_name(ObjectId(c)).to_string(),
                    cover: names(s),
                    sieve: names(r),
                }));
            }
        }
    }
    Ok(Ok(()))
}

/// Whether `f*(r)` covers for every `f` in `s`.
fn locally_covers(cat: &FiniteCategory, covers: &Covers, s: BitSet, r: BitSet) -> bool {
    s.iter()
        .all(|f| covers[cat.dom_ix(f)].contains(&pullback_mask(cat, r, f)))
}

/// Least topology containing `covers`: stability, transitivity and upward
/// passes repeated until nothing changes.
pub(crate) fn saturate(cat: &FiniteCategory, covers: &mut Covers) -> Result<(), TopologyError> {
    for (c, set) in covers.iter_mut().enumerate() {
        set.insert(cat.arrows_into(c));
    }
    let spaces = (0..cat.num_objects())
        .map(|c| sieve_space(cat, c))
        .collect::<Result<Vec<_>, _>>()?;
    loop {
        let mut changed = false;
        for c in 0..cat.num_objects() {
            let current: Vec<BitSet> = covers[c].iter().copied().collect();
            for s in current {
                for f in cat.arrows_into(c).iter() {
                    changed |= covers[cat.dom_ix(f)].insert(pullback_mask(cat, s, f));
                }
            }
        }
        for c in 0..cat.num_objects() {
            for &r in spaces[c].iter() {
                if !covers[c].contains(&r)
                    && covers[c].iter().any(|&s| locally_covers(cat, covers, s, r))
                {
                    covers[c].insert(r);
                    changed = true;
                }
            }
        }
        for c in 0..cat.num_objects() {
            for &t in spaces[c].iter() {
                if !covers[c].contains(&t) && covers[c].iter().any(|s| s.is_subset(t)) {
                    covers[c].insert(t);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

impl GrothendieckTopology {
    pub(crate) fn from_covers_unchecked(cat: &FiniteCategory, covers: Covers) -> Self {
        debug_assert_eq!(covers.len(), cat.num_objects());
        GrothendieckTopology {
            cat: cat.clone(),
            covers,
        }
    }

    fn empty_covers(cat: &FiniteCategory) -> Covers {
        vec![BTreeSet::new(); cat.num_objects()]
    }

    fn collect_family(
        cat: &FiniteCategory,
        family: impl IntoIterator<Item = Sieve>,
    ) -> Result<Covers, TopologyError> {
        let mut covers = Self::empty_covers(cat);
        for s in family {
            if !s.category().same_as(cat) {
                return Err(TopologyError::CategoryMismatch);
            }
            covers[s.codomain().index()].insert(s.mask());
        }
        Ok(covers)
    }

    /// Strict constructor: the given sieves must already form a topology.
    pub fn new(
        cat: &FiniteCategory,
        covering: impl IntoIterator<Item = Sieve>,
    ) -> Result<Self, TopologyError> {
        let covers = Self::collect_family(cat, covering)?;
        check_axioms(cat, &covers)?.map_err(TopologyError::Axiom)?;
        Ok(Self::from_covers_unchecked(cat, covers))
    }

    /// Axiom check without constructing a topology.
    pub fn check(
        cat: &FiniteCategory,
        covering: impl IntoIterator<Item = Sieve>,
    ) -> Result<Result<(), AxiomViolation>, TopologyError> {
        let covers = Self::collect_family(cat, covering)?;
        check_axioms(cat, &covers)
    }

    /// The minimum topology: only maximal sieves cover.
    pub fn trivial(cat: &FiniteCategory) -> Self {
        let covers = (0..cat.num_objects())
            .map(|c| BTreeSet::from([cat.arrows_into(c)]))
            .collect();
        Self::from_covers_unchecked(cat, covers)
    }

    /// The maximum topology: every sieve covers, the empty one included.
    pub fn maximal(cat: &FiniteCategory) -> Result<Self, TopologyError> {
        let covers = (0..cat.num_objects())
            .map(|c| Ok(sieve_space(cat, c)?.iter().copied().collect()))
            .collect::<Result<Covers, TopologyError>>()?;
        Ok(Self::from_covers_unchecked(cat, covers))
    }

    /// Least topology in which every sieve of `family` covers.
    pub fn generate(
        cat: &FiniteCategory,
        family: impl IntoIterator<Item = Sieve>,
    ) -> Result<Self, TopologyError> {
        let mut covers = Self::collect_family(cat, family)?;
        saturate(cat, &mut covers)?;
        Ok(Self::from_covers_unchecked(cat, covers))
    }

    /// Least topology containing `self` and `family`.
    pub fn generate_over(
        &self,
        family: impl IntoIterator<Item = Sieve>,
    ) -> Result<Self, TopologyError> {
        let mut covers = Self::collect_family(&self.cat, family)?;
        for (c, set) in self.covers.iter().enumerate() {
            covers[c].extend(set.iter().copied());
        }
        saturate(&self.cat, &mut covers)?;
        Ok(Self::from_covers_unchecked(&self.cat, covers))
    }

    /// Dense topology: the covering sieves are the stably non-empty ones.
    pub fn dense(cat: &FiniteCategory) -> Result<Self, TopologyError> {
        let covers = (0..cat.num_objects())
            .map(|c| {
                Ok(sieve_space(cat, c)?
                    .iter()
                    .copied()
                    .filter(|&s| stably_nonempty_mask(cat, c, s))
                    .collect())
            })
            .collect::<Result<Covers, TopologyError>>()?;
        Ok(Self::from_covers_unchecked(cat, covers))
    }

    /// De Morgan topology: generated by `¬R ∪ ¬¬R` for every sieve `R`.
    pub fn de_morgan(cat: &FiniteCategory) -> Result<Self, TopologyError> {
        let mut covers = Self::empty_covers(cat);
        for (c, set) in covers.iter_mut().enumerate() {
            for &r in sieve_space(cat, c)?.iter() {
                set.insert(not_mask(cat, c, r).union(not_not_mask(cat, c, r)));
            }
        }
        saturate(cat, &mut covers)?;
        Ok(Self::from_covers_unchecked(cat, covers))
    }

    /// Every topology on `cat`, in canonical order. Fails with `TooLarge` when
    /// the total number of sieves exceeds `bound`.
    pub fn enumerate(cat: &FiniteCategory, bound: usize) -> Result<Vec<Self>, TopologyError> {
        let spaces = (0..cat.num_objects())
            .map(|c| sieve_space(cat, c))
            .collect::<Result<Vec<_>, _>>()?;
        let total: usize = spaces.iter().map(|s| s.len()).sum();
        if total > bound {
            return Err(TopologyError::TooLarge(format!(
                "{} has {total} sieves, above the enumeration bound {bound}",
                cat.label()
            )));
        }
        // per object: choose any subset of the non-maximal sieves
        let optional: Vec<Vec<BitSet>> = spaces
            .iter()
            .enumerate()
            .map(|(c, s)| s.iter().copied().filter(|&m| m != cat.arrows_into(c)).collect())
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; optional.len()];
        loop {
            let covers: Covers = optional
                .iter()
                .zip(&choice)
                .enumerate()
                .map(|(c, (opts, &bits))| {
                    let mut set: BTreeSet<BitSet> = opts
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| bits >> i & 1 == 1)
                        .map(|(_, &m)| m)
                        .collect();
                    set.insert(cat.arrows_into(c));
                    set
                })
                .collect();
            if check_axioms(cat, &covers)?.is_ok() {
                out.push(Self::from_covers_unchecked(cat, covers));
            }
            // odometer over per-object subset masks
            let mut k = 0;
            loop {
                if k == choice.len() {
                    out.sort_by(|a, b| a.covers.cmp(&b.covers));
                    return Ok(out);
                }
                choice[k] += 1;
                if choice[k] < 1 << optional[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub(crate) fn covers_mask(&self, c: usize) -> &BTreeSet<BitSet> {
        &self.covers[c]
    }

    /// Covering sieves on `c`, in canonical order.
    pub fn covers(&self, c: ObjectId) -> Vec<Sieve> {
        self.covers[c.index()]
            .iter()
            .map(|&m| Sieve::from_mask(&self.cat, c, m))
            .collect()
    }

    /// Covering sieves on `c` as sorted arrow-name lists, themselves sorted.
    pub fn sorted_names(&self, c: ObjectId) -> Vec<Vec<String>> {
        let mut v: Vec<Vec<String>> = self.covers[c.index()]
            .iter()
            .map(|&m| self.cat.arrow_names(m))
            .collect();
        v.sort();
        v
    }

    pub fn is_covering(&self, s: &Sieve) -> bool {
        s.category().same_as(&self.cat) && self.covers[s.codomain().index()].contains(&s.mask())
    }

    /// Whether the empty sieve covers `c`.
    pub fn covers_by_empty(&self, c: ObjectId) -> bool {
        self.covers[c.index()].contains(&BitSet::EMPTY)
    }

    fn check_same(&self, other: &Self) -> Result<(), TopologyError> {
        if self.cat.same_as(&other.cat) {
            Ok(())
        } else {
            Err(TopologyError::CategoryMismatch)
        }
    }

    /// Per-object inclusion of covering families.
    pub fn leq(&self, other: &Self) -> Result<bool, TopologyError> {
        self.check_same(other)?;
        Ok(self
            .covers
            .iter()
            .zip(&other.covers)
            .all(|(a, b)| a.is_subset(b)))
    }

    /// Least topology above both.
    pub fn join(&self, other: &Self) -> Result<Self, TopologyError> {
        self.check_same(other)?;
        let mut covers = self.covers.clone();
        for (c, set) in other.covers.iter().enumerate() {
            covers[c].extend(set.iter().copied());
        }
        saturate(&self.cat, &mut covers)?;
        Ok(Self::from_covers_unchecked(&self.cat, covers))
    }

    pub(crate) fn close_mask(&self, c: usize, s: BitSet) -> BitSet {
        self.cat
            .arrows_into(c)
            .iter()
            .filter(|&f| self.covers[self.cat.dom_ix(f)].contains(&pullback_mask(&self.cat, s, f)))
            .collect()
    }

    /// `{f: d → c | f*(S) covers d}`.
    pub fn close_sieve(&self, s: &Sieve) -> Result<Sieve, TopologyError> {
        if !s.category().same_as(&self.cat) {
            return Err(TopologyError::CategoryMismatch);
        }
        let c = s.codomain();
        Ok(Sieve::from_mask(&self.cat, c, self.close_mask(c.index(), s.mask())))
    }

    pub fn is_closed(&self, s: &Sieve) -> Result<bool, TopologyError> {
        Ok(self.close_sieve(s)? == *s)
    }

    /// Every covering sieve is effective-epimorphic.
    pub fn is_subcanonical(&self) -> bool {
        self.subcanonical_witness().is_none()
    }

    /// First covering sieve (by object, then canonical order) that is not
    /// effective-epimorphic.
    pub fn subcanonical_witness(&self) -> Option<Sieve> {
        self.cat.objects().find_map(|c| {
            self.covers(c)
                .into_iter()
                .find(|s| !effective_epimorphic(s))
        })
    }

    /// Topology file representation.
    pub fn to_file(&self) -> TopologyFile {
        TopologyFile {
            category: self.cat.label().to_string(),
            covers: self
                .cat
                .objects()
                .map(|c| (self.cat.object_name(c).to_string(), self.sorted_names(c)))
                .collect::<BTreeMap<_, _>>(),
        }
    }

    /// Load a topology file over `cat`. With `saturate` the listed sieves are
    /// saturated silently; otherwise they must already form a topology and
    /// the first axiom violation is reported.
    pub fn from_file(
        cat: &FiniteCategory,
        file: &TopologyFile,
        saturate: bool,
    ) -> Result<Self, TopologyError> {
        if !file.category.eq_ignore_ascii_case(cat.label()) {
            return Err(TopologyError::WrongCategory {
                found: file.category.clone(),
                expected: cat.label().to_string(),
            });
        }
        let mut family = Vec::new();
        for (obj, sieves) in &file.covers {
            for arrows in sieves {
                family.push(Sieve::from_names(cat, obj, arrows)?);
            }
        }
        if saturate {
            Self::generate(cat, family)
        } else {
            Self::new(cat, family)
        }
    }
}

/// Trivial (minimum) topology.
pub fn trivial_topology(cat: &FiniteCategory) -> GrothendieckTopology {
    GrothendieckTopology::trivial(cat)
}

pub fn generate_topology(
    cat: &FiniteCategory,
    family: impl IntoIterator<Item = Sieve>,
) -> Result<GrothendieckTopology, TopologyError> {
    GrothendieckTopology::generate(cat, family)
}

pub fn dense_topology(cat: &FiniteCategory) -> Result<GrothendieckTopology, TopologyError> {
    GrothendieckTopology::dense(cat)
}

pub fn de_morgan_topology(cat: &FiniteCategory) -> Result<GrothendieckTopology, TopologyError> {
    GrothendieckTopology::de_morgan(cat)
}

/// A target object at which the comparison map from `Hom(c, e)` to compatible
/// families over a sieve on `c` fails to be a bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveEpiFailure {
    pub target: ObjectId,
    pub hom_count: usize,
    pub family_count: usize,
    pub injective: bool,
}

/// All compatible families `(x_f)_{f ∈ S}` into `e`, each listed in the
/// ascending arrow order of `S`.
pub fn compatible_families(s: &Sieve, e: ObjectId) -> Vec<Vec<ArrowId>> {
    let cat = s.category();
    let members: Vec<usize> = s.mask().iter().collect();
    let pos = |f: usize| members.iter().position(|&m| m == f).expect("sieve member");
    // constraints (i, g, j): x_j = x_i ∘ g where members[j] = members[i] ∘ g
    let mut constraints: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); members.len()];
    for (i, &f) in members.iter().enumerate() {
        for g in cat.arrows_into(cat.dom_ix(f)).iter() {
            let j = pos(cat.comp(f, g));
            constraints[i.max(j)].push((i, g, j));
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(members.len());

    fn search(
        cat: &FiniteCategory,
        members: &[usize],
        constraints: &[Vec<(usize, usize, usize)>],
        e: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<ArrowId>>,
    ) {
        let k = current.len();
        if k == members.len() {
            out.push(current.iter().map(|&x| ArrowId(x)).collect());
            return;
        }
        for x in cat.hom_set(cat.dom_ix(members[k]), e).iter() {
            current.push(x);
            let ok = constraints[k]
                .iter()
                .all(|&(i, g, j)| current[j] == cat.comp(current[i], g));
            if ok {
                search(cat, members, constraints, e, current, out);
            }
            current.pop();
        }
    }
    search(cat, &members, &constraints, e.index(), &mut current, &mut out);
    out
}

/// The first target object where effective-epimorphicity fails, if any.
pub fn effective_epimorphic_failure(s: &Sieve) -> Option<EffectiveEpiFailure> {
    let cat = s.category();
    let c = s.codomain();
    cat.objects().find_map(|e| {
        let families = compatible_families(s, e);
        let images: BTreeSet<Vec<ArrowId>> = cat
            .hom(c, e)
            .map(|h| s.arrows().map(|f| cat.compose(h, f).expect("composable")).collect())
            .collect();
        let hom_count = cat.hom(c, e).count();
        let injective = images.len() == hom_count;
        let bijective = injective && families.len() == hom_count;
        (!bijective).then_some(EffectiveEpiFailure {
            target: e,
            hom_count,
            family_count: families.len(),
            injective,
        })
    })
}

/// Whether `Hom(c, e)` is in bijection with the compatible families over
/// `S` for every object `e`.
pub fn effective_epimorphic(s: &Sieve) -> bool {
    effective_epimorphic_failure(s).is_none()
}

/// Effective-epimorphic, and so is every pullback.
pub fn universally_effective_epimorphic(s: &Sieve) -> bool {
    let cat = s.category();
    effective_epimorphic(s)
        && cat
            .arrows()
            .filter(|&f| cat.cod(f) == s.codomain())
            .all(|f| effective_epimorphic(&s.pullback(f).expect("codomain checked")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(cat: &FiniteCategory, c: &str, arrows: &[&str]) -> Sieve {
        Sieve::from_names(cat, c, arrows).unwrap()
    }

    fn d_walk() -> GrothendieckTopology {
        let w = fixtures::walk();
        GrothendieckTopology::new(
            &w,
            [
                s(&w, "a", &["id_a"]),
                s(&w, "b", &["u"]),
                s(&w, "b", &["u", "id_b"]),
            ],
        )
        .unwrap()
    }

    fn jcov() -> GrothendieckTopology {
        let w = fixtures::walk();
        GrothendieckTopology::new(
            &w,
            [s(&w, "a", &[]), s(&w, "a", &["id_a"]), s(&w, "b", &["u", "id_b"])],
        )
        .unwrap()
    }

    #[test]
    fn trivial_is_a_topology() {
        for cat in fixtures::all() {
            let t = GrothendieckTopology::trivial(&cat);
            assert!(check_axioms(&cat, &t.covers).unwrap().is_ok());
        }
    }

    #[test]
    fn generation_examples() {
        let w = fixtures::walk();
        assert_eq!(
            GrothendieckTopology::generate(&w, [s(&w, "b", &["u"])]).unwrap(),
            d_walk()
        );
        assert_eq!(
            GrothendieckTopology::generate(&w, [s(&w, "a", &[])]).unwrap(),
            jcov()
        );
        for cat in fixtures::all() {
            assert_eq!(
                GrothendieckTopology::generate(&cat, []).unwrap(),
                GrothendieckTopology::trivial(&cat)
            );
        }
    }

    #[test]
    fn missing_maximal_sieve_is_reported() {
        let w = fixtures::walk();
        let err = GrothendieckTopology::new(&w, [s(&w, "b", &["u", "id_b"])]).unwrap_err();
        assert_eq!(
            err,
            TopologyError::Axiom(AxiomViolation::Maximality { object: "a".into() })
        );
    }

    #[test]
    fn transitivity_failure_is_reported() {
        let w = fixtures::walk();
        let err = GrothendieckTopology::new(
            &w,
            [
                s(&w, "a", &[]),
                s(&w, "a", &["id_a"]),
                s(&w, "b", &["u"]),
                s(&w, "b", &["u", "id_b"]),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            TopologyError::Axiom(AxiomViolation::Transitivity {
                object: "b".into(),
                cover: vec!["u".into()],
                sieve: vec![],
            })
        );
    }

    #[test]
    fn dense_examples() {
        assert_eq!(GrothendieckTopology::dense(&fixtures::walk()).unwrap(), d_walk());
        let z2 = fixtures::z2();
        assert_eq!(
            GrothendieckTopology::dense(&z2).unwrap(),
            GrothendieckTopology::trivial(&z2)
        );
        let m2 = fixtures::m2();
        let d = GrothendieckTopology::dense(&m2).unwrap();
        assert_eq!(
            d.sorted_names(m2.object("*").unwrap()),
            vec![vec!["1".to_string(), "m".to_string()], vec!["m".to_string()]]
        );
    }

    #[test]
    fn de_morgan_examples() {
        let w = fixtures::walk();
        assert_eq!(
            GrothendieckTopology::de_morgan(&w).unwrap(),
            GrothendieckTopology::trivial(&w)
        );
        let c = fixtures::cospan();
        let m = GrothendieckTopology::de_morgan(&c).unwrap();
        let expected = GrothendieckTopology::new(
            &c,
            [
                s(&c, "a", &["id_a"]),
                s(&c, "b", &["id_b"]),
                s(&c, "c", &["f", "g"]),
                s(&c, "c", &["f", "g", "id_c"]),
            ],
        )
        .unwrap();
        assert_eq!(m, expected);
        let z2 = fixtures::z2();
        assert_eq!(
            GrothendieckTopology::de_morgan(&z2).unwrap(),
            GrothendieckTopology::trivial(&z2)
        );
    }

    #[test]
    fn comparison_and_join() {
        let w = fixtures::walk();
        let t = GrothendieckTopology::trivial(&w);
        assert!(t.leq(&d_walk()).unwrap());
        assert!(!d_walk().leq(&t).unwrap());
        assert_eq!(d_walk().join(&t).unwrap(), d_walk());
        let joined = jcov().join(&d_walk()).unwrap();
        let expected = GrothendieckTopology::new(
            &w,
            [
                s(&w, "a", &[]),
                s(&w, "a", &["id_a"]),
                s(&w, "b", &["u"]),
                s(&w, "b", &["u", "id_b"]),
            ],
        );
        // the union {∅, max} at a and {{u}, max} at b is not transitive: ∅ on b
        // becomes covering through {u}, so the join is the maximal topology.
        assert!(expected.is_err());
        assert_eq!(joined, GrothendieckTopology::maximal(&w).unwrap());
        let z2 = GrothendieckTopology::trivial(&fixtures::z2());
        assert_eq!(t.leq(&z2).unwrap_err(), TopologyError::CategoryMismatch);
    }

    #[test]
    fn sieve_closure_examples() {
        let w = fixtures::walk();
        let t = GrothendieckTopology::trivial(&w);
        assert_eq!(t.close_sieve(&s(&w, "b", &["u"])).unwrap(), s(&w, "b", &["u"]));
        assert_eq!(jcov().close_sieve(&s(&w, "b", &[])).unwrap(), s(&w, "b", &["u"]));
        assert!(d_walk().close_sieve(&s(&w, "b", &["u"])).unwrap().is_maximal());
        let b = w.object("b").unwrap();
        assert!(jcov().close_sieve(&Sieve::maximal(&w, b)).unwrap().is_maximal());
        assert!(t.is_closed(&s(&w, "b", &["u"])).unwrap());
    }

    #[test]
    fn effective_epimorphism_examples() {
        for cat in fixtures::all() {
            for c in cat.objects() {
                assert!(effective_epimorphic(&Sieve::maximal(&cat, c)));
            }
        }
        let w = fixtures::walk();
        let fail = effective_epimorphic_failure(&s(&w, "b", &["u"])).unwrap();
        assert_eq!(w.object_name(fail.target), "a");
        assert_eq!((fail.hom_count, fail.family_count), (0, 1));
        // {f, g} exhibits c as the coproduct of a and b inside COSPAN
        let c = fixtures::cospan();
        assert!(effective_epimorphic(&s(&c, "c", &["f", "g"])));
        assert!(!effective_epimorphic(&s(&c, "c", &["f"])));
    }

    #[test]
    fn subcanonicity_examples() {
        for cat in fixtures::all() {
            assert!(GrothendieckTopology::trivial(&cat).is_subcanonical());
        }
        let witness = d_walk().subcanonical_witness().unwrap();
        assert_eq!(witness.arrow_names(), vec!["u".to_string()]);
        assert!(GrothendieckTopology::dense(&fixtures::z2())
            .unwrap()
            .is_subcanonical());
    }

    #[test]
    fn enumeration_of_small_sites() {
        let t = fixtures::term();
        assert_eq!(GrothendieckTopology::enumerate(&t, 16).unwrap().len(), 2);
        let w = fixtures::walk();
        let all = GrothendieckTopology::enumerate(&w, 16).unwrap();
        for j in [
            GrothendieckTopology::trivial(&w),
            d_walk(),
            jcov(),
            GrothendieckTopology::maximal(&w).unwrap(),
        ] {
            assert!(all.contains(&j));
        }
        assert!(matches!(
            GrothendieckTopology::enumerate(&w, 4),
            Err(TopologyError::TooLarge(_))
        ));
    }

    #[test]
    fn file_round_trip_and_strict_mode() {
        let w = fixtures::walk();
        let file = jcov().to_file();
        assert_eq!(GrothendieckTopology::from_file(&w, &file, false).unwrap(), jcov());
        let bad = crate::format::TopologyFile {
            category: "WALK".into(),
            covers: [("b".to_string(), vec![vec!["u".to_string()]])].into(),
        };
        assert!(matches!(
            GrothendieckTopology::from_file(&w, &bad, false),
            Err(TopologyError::Axiom(_))
        ));
        assert_eq!(GrothendieckTopology::from_file(&w, &bad, true).unwrap(), d_walk());
    }
}
