//! Finite presheaves, subpresheaves and their Heyting algebra.
//!
//! Presheaves are contravariant: an arrow `f: a → b` restricts elements of
//! `E(b)` to elements of `E(a)`. Covariant set-valued functors on `C` are
//! presheaves on `C^op`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bitset::{BitSet, CAPACITY};
use crate::fincat::{ArrowId, FiniteCategory, ObjectId};
use crate::format::{PresheafFile, SubpresheafFile};
use crate::sieve::Sieve;
use crate::topology::{GrothendieckTopology, TopologyError};

/// Default cap on total elements for [`Subpresheaf::enumerate`].
pub const DEFAULT_ELEMENT_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresheafError {
    #[error("values live over different categories")]
    CategoryMismatch,
    #[error("presheaf file names category `{found}`, expected `{expected}`")]
    WrongCategory { found: String, expected: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("element `{element}` not found in E({object})")]
    ElementNotFound { object: String, element: String },
    #[error("duplicate element `{element}` in E({object})")]
    DuplicateElement { object: String, element: String },
    #[error("E({object}) has more than {CAPACITY} elements")]
    TooManyElements { object: String },
    #[error("restriction along `{arrow}` is not defined on `{element}`")]
    MissingRestriction { arrow: String, element: String },
    #[error("restriction along identity `{arrow}` moves `{element}`")]
    IdentityLaw { arrow: String, element: String },
    #[error("restriction along `{then}`∘`{first}` disagrees with the composite of restrictions at `{element}`")]
    CompositionLaw {
        first: String,
        then: String,
        element: String,
    },
    #[error("subpresheaves of different presheaves")]
    ParentMismatch,
    #[error("not a subpresheaf: `{element}` ∈ A({object}) restricts along `{arrow}` outside A")]
    NotSubpresheaf {
        object: String,
        element: String,
        arrow: String,
    },
    #[error("subpresheaf is not closed for the topology")]
    NotClosed,
    #[error("presheaf is not representable by `{0}`")]
    NotRepresentable(String),
    #[error("{0}")]
    TooLarge(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

struct Inner {
    cat: FiniteCategory,
    values: Vec<Vec<String>>,
    index: Vec<HashMap<String, usize>>,
    /// `restriction[f][i]`: index in `E(dom f)` of the restriction of the
    /// `i`-th element of `E(cod f)`.
    restriction: Vec<Vec<usize>>,
    /// For `Hom(-, c)`: the represented object.
    represents: Option<ObjectId>,
}

/// A presheaf on a finite category with finite values.
#[derive(Clone)]
pub struct Presheaf {
    inner: Arc<Inner>,
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.cat.same_as(&other.inner.cat)
                && self.inner.values == other.inner.values
                && self.inner.restriction == other.inner.restriction)
    }
}

impl Eq for Presheaf {}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presheaf")
            .field("category", &self.inner.cat.label())
            .field("values", &self.inner.values)
            .finish()
    }
}

impl Presheaf {
    fn build(
        cat: &FiniteCategory,
        values: Vec<Vec<String>>,
        restriction: Vec<Vec<usize>>,
        represents: Option<ObjectId>,
    ) -> Result<Self, PresheafError> {
        let mut index = Vec::with_capacity(values.len());
        for (c, vals) in values.iter().enumerate() {
            let object = cat.object_name(ObjectId(c)).to_string();
            if vals.len() > CAPACITY {
                return Err(PresheafError::TooManyElements { object });
            }
            let mut map = HashMap::new();
            for (i, v) in vals.iter().enumerate() {
                if map.insert(v.clone(), i).is_some() {
                    return Err(PresheafError::DuplicateElement {
                        object,
                        element: v.clone(),
                    });
                }
            }
            index.push(map);
        }
        let p = Presheaf {
            inner: Arc::new(Inner {
                cat: cat.clone(),
                values,
                index,
                restriction,
                represents,
            }),
        };
        p.check_functor()?;
        Ok(p)
    }

    fn check_functor(&self) -> Result<(), PresheafError> {
        let cat = &self.inner.cat;
        let r = &self.inner.restriction;
        for f in cat.arrows() {
            if cat.is_identity(f) {
                let c = cat.cod(f);
                if let Some(i) = (0..self.inner.values[c.0].len()).find(|&i| r[f.0][i] != i) {
                    return Err(PresheafError::IdentityLaw {
                        arrow: cat.arrow_name(f).to_string(),
                        element: self.inner.values[c.0][i].clone(),
                    });
                }
            }
        }
        for f in cat.arrows() {
            for g in cat.arrows().filter(|&g| cat.dom(g) == cat.cod(f)) {
                let gf = cat.compose(g, f).expect("composable");
                let c = cat.cod(g);
                for i in 0..self.inner.values[c.0].len() {
                    if r[gf.0][i] != r[f.0][r[g.0][i]] {
                        return Err(PresheafError::CompositionLaw {
                            first: cat.arrow_name(f).to_string(),
                            then: cat.arrow_name(g).to_string(),
                            element: self.inner.values[c.0][i].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Validate a presheaf file over `cat`.
    pub fn from_file(cat: &FiniteCategory, file: &PresheafFile) -> Result<Self, PresheafError> {
        if !file.category.eq_ignore_ascii_case(cat.label()) {
            return Err(PresheafError::WrongCategory {
                found: file.category.clone(),
                expected: cat.label().to_string(),
            });
        }
        for obj in file.values.keys() {
            cat.object(obj)
                .ok_or_else(|| PresheafError::UnknownObject(obj.clone()))?;
        }
        let values: Vec<Vec<String>> = cat
            .objects()
            .map(|c| file.values.get(cat.object_name(c)).cloned().unwrap_or_default())
            .collect();
        for arrow in file.restriction.keys() {
            cat.arrow(arrow)
                .ok_or_else(|| PresheafError::UnknownArrow(arrow.clone()))?;
        }
        let find = |c: ObjectId, e: &str| {
            values[c.0]
                .iter()
                .position(|v| v == e)
                .ok_or_else(|| PresheafError::ElementNotFound {
                    object: cat.object_name(c).to_string(),
                    element: e.to_string(),
                })
        };
        let mut restriction = Vec::with_capacity(cat.num_arrows());
        for f in cat.arrows() {
            let (a, b) = (cat.dom(f), cat.cod(f));
            let given = file.restriction.get(cat.arrow_name(f));
            if let Some(map) = given {
                for k in map.keys() {
                    find(b, k)?;
                }
            }
            let mut row = Vec::with_capacity(values[b.0].len());
            for e in &values[b.0] {
                match given.and_then(|m| m.get(e)) {
                    Some(target) => row.push(find(a, target)?),
                    None if cat.is_identity(f) => row.push(find(a, e)?),
                    None => {
                        return Err(PresheafError::MissingRestriction {
                            arrow: cat.arrow_name(f).to_string(),
                            element: e.clone(),
                        })
                    }
                }
            }
            restriction.push(row);
        }
        Self::build(cat, values, restriction, None)
    }

    pub fn from_json(cat: &FiniteCategory, text: &str) -> Result<Self, crate::Error> {
        let file: PresheafFile = serde_json::from_str(text)?;
        Ok(Self::from_file(cat, &file)?)
    }

    /// The representable presheaf `Hom(-, c)`; elements are arrow names and
    /// restriction is precomposition.
    pub fn yoneda(cat: &FiniteCategory, c: ObjectId) -> Self {
        let homs: Vec<Vec<ArrowId>> = cat.objects().map(|d| cat.hom(d, c).collect()).collect();
        let values = homs
            .iter()
            .map(|h| h.iter().map(|&x| cat.arrow_name(x).to_string()).collect())
            .collect();
        let restriction = cat
            .arrows()
            .map(|f| {
                let (a, b) = (cat.dom(f), cat.cod(f));
                homs[b.0]
                    .iter()
                    .map(|&x| {
                        let xf = cat.compose(x, f).expect("composable");
                        homs[a.0].iter().position(|&y| y == xf).expect("in hom-set")
                    })
                    .collect()
            })
            .collect();
        Self::build(cat, values, restriction, Some(c)).expect("representables are presheaves")
    }

    /// The terminal presheaf: one element `*` at every object.
    pub fn terminal(cat: &FiniteCategory) -> Self {
        let values = cat.objects().map(|_| vec!["*".to_string()]).collect();
        let restriction = cat.arrows().map(|_| vec![0]).collect();
        Self::build(cat, values, restriction, None).expect("terminal presheaf")
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.inner.cat
    }

    pub fn represents(&self) -> Option<ObjectId> {
        self.inner.represents
    }

    pub fn values(&self, c: ObjectId) -> &[String] {
        &self.inner.values[c.0]
    }

    pub fn element(&self, c: ObjectId, name: &str) -> Option<usize> {
        self.inner.index[c.0].get(name).copied()
    }

    pub fn total_elements(&self) -> usize {
        self.inner.values.iter().map(Vec::len).sum()
    }

    /// `E(f)(e)` for `e ∈ E(cod f)`, by element index.
    pub fn restrict(&self, f: ArrowId, e: usize) -> usize {
        self.inner.restriction[f.0][e]
    }

    pub(crate) fn all_mask(&self, c: usize) -> BitSet {
        BitSet::full(self.inner.values[c].len())
    }

    pub fn to_file(&self) -> PresheafFile {
        let cat = &self.inner.cat;
        PresheafFile {
            category: cat.label().to_string(),
            values: cat
                .objects()
                .map(|c| (cat.object_name(c).to_string(), self.inner.values[c.0].clone()))
                .collect(),
            restriction: cat
                .arrows()
                .map(|f| {
                    let (a, b) = (cat.dom(f), cat.cod(f));
                    let map = self.inner.values[b.0]
                        .iter()
                        .enumerate()
                        .map(|(i, e)| {
                            (e.clone(), self.inner.values[a.0][self.restrict(f, i)].clone())
                        })
                        .collect();
                    (cat.arrow_name(f).to_string(), map)
                })
                .collect(),
        }
    }
}

/// A subpresheaf `A ↪ E`: per-object subsets closed under restriction.
#[derive(Clone)]
pub struct Subpresheaf {
    parent: Presheaf,
    chosen: Vec<BitSet>,
}

impl PartialEq for Subpresheaf {
    fn eq(&self, other: &Self) -> bool {
        self.chosen == other.chosen && self.parent == other.parent
    }
}

impl Eq for Subpresheaf {}

impl fmt::Debug for Subpresheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subpresheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cat = self.parent.category();
        let parts: Vec<String> = cat
            .objects()
            .map(|c| format!("{}:{{{}}}", cat.object_name(c), self.chosen_names(c).join(", ")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Subpresheaf {
    fn from_masks(parent: &Presheaf, chosen: Vec<BitSet>) -> Self {
        Subpresheaf {
            parent: parent.clone(),
            chosen,
        }
    }

    fn closure_violation(parent: &Presheaf, chosen: &[BitSet]) -> Option<PresheafError> {
        let cat = parent.category();
        for f in cat.arrows() {
            let (a, b) = (cat.dom(f), cat.cod(f));
            for e in chosen[b.0].iter() {
                if !chosen[a.0].contains(parent.restrict(f, e)) {
                    return Some(PresheafError::NotSubpresheaf {
                        object: cat.object_name(b).to_string(),
                        element: parent.values(b)[e].clone(),
                        arrow: cat.arrow_name(f).to_string(),
                    });
                }
            }
        }
        None
    }

    /// Validated constructor from element indices per object.
    pub fn new(parent: &Presheaf, chosen: Vec<BitSet>) -> Result<Self, PresheafError> {
        let cat = parent.category();
        if chosen.len() != cat.num_objects()
            || chosen
                .iter()
                .enumerate()
                .any(|(c, s)| !s.is_subset(parent.all_mask(c)))
        {
            return Err(PresheafError::ParentMismatch);
        }
        match Self::closure_violation(parent, &chosen) {
            Some(err) => Err(err),
            None => Ok(Self::from_masks(parent, chosen)),
        }
    }

    /// Validated constructor from element names; absent objects are empty.
    pub fn from_names(
        parent: &Presheaf,
        chosen: &BTreeMap<String, Vec<String>>,
    ) -> Result<Self, PresheafError> {
        let cat = parent.category();
        let mut masks = vec![BitSet::EMPTY; cat.num_objects()];
        for (obj, elems) in chosen {
            let c = cat
                .object(obj)
                .ok_or_else(|| PresheafError::UnknownObject(obj.clone()))?;
            for e in elems {
                let i = parent
                    .element(c, e)
                    .ok_or_else(|| PresheafError::ElementNotFound {
                        object: obj.clone(),
                        element: e.clone(),
                    })?;
                masks[c.0].insert(i);
            }
        }
        Self::new(parent, masks)
    }

    pub fn from_file(parent: &Presheaf, file: &SubpresheafFile) -> Result<Self, PresheafError> {
        Self::from_names(parent, &file.chosen)
    }

    pub fn to_file(&self, presheaf_name: &str) -> SubpresheafFile {
        let cat = self.parent.category();
        SubpresheafFile {
            presheaf: presheaf_name.to_string(),
            chosen: cat
                .objects()
                .map(|c| (cat.object_name(c).to_string(), self.chosen_names(c)))
                .collect(),
        }
    }

    pub fn empty(parent: &Presheaf) -> Self {
        Self::from_masks(parent, vec![BitSet::EMPTY; parent.category().num_objects()])
    }

    pub fn full(parent: &Presheaf) -> Self {
        let n = parent.category().num_objects();
        Self::from_masks(parent, (0..n).map(|c| parent.all_mask(c)).collect())
    }

    /// The subpresheaf of `Hom(-, c)` corresponding to a sieve on `c`.
    pub fn from_sieve(yoneda: &Presheaf, s: &Sieve) -> Result<Self, PresheafError> {
        let cat = yoneda.category();
        if !s.category().same_as(cat) {
            return Err(PresheafError::CategoryMismatch);
        }
        if yoneda.represents() != Some(s.codomain()) {
            return Err(PresheafError::NotRepresentable(
                cat.object_name(s.codomain()).to_string(),
            ));
        }
        let mut masks = vec![BitSet::EMPTY; cat.num_objects()];
        for f in s.arrows() {
            let d = cat.dom(f);
            let i = yoneda
                .element(d, cat.arrow_name(f))
                .expect("arrows into c are elements of Hom(-, c)");
            masks[d.0].insert(i);
        }
        Ok(Self::from_masks(yoneda, masks))
    }

    /// The sieve corresponding to a subpresheaf of a representable.
    pub fn to_sieve(&self) -> Result<Sieve, PresheafError> {
        let cat = self.parent.category();
        let c = self
            .parent
            .represents()
            .ok_or_else(|| PresheafError::NotRepresentable("any object".to_string()))?;
        let arrows = cat.objects().flat_map(|d| {
            self.chosen[d.0]
                .iter()
                .map(move |i| cat.arrow(&self.parent.values(d)[i]).expect("element is an arrow"))
        });
        Ok(Sieve::new(cat, c, arrows).expect("subpresheaves of Hom(-, c) are sieves"))
    }

    /// All subpresheaves of `parent`, in canonical order.
    pub fn enumerate(parent: &Presheaf, bound: usize) -> Result<Vec<Self>, PresheafError> {
        let total = parent.total_elements();
        if total > bound {
            return Err(PresheafError::TooLarge(format!(
                "presheaf has {total} elements, above the enumeration bound {bound}"
            )));
        }
        let n = parent.category().num_objects();
        let mut out = Vec::new();
        let mut current = vec![BitSet::EMPTY; n];
        fn walk(parent: &Presheaf, c: usize, current: &mut Vec<BitSet>, out: &mut Vec<Subpresheaf>) {
            if c == current.len() {
                if Subpresheaf::closure_violation(parent, current).is_none() {
                    out.push(Subpresheaf::from_masks(parent, current.clone()));
                }
                return;
            }
            for s in parent.all_mask(c).subsets() {
                current[c] = s;
                walk(parent, c + 1, current, out);
            }
            current[c] = BitSet::EMPTY;
        }
        walk(parent, 0, &mut current, &mut out);
        out.sort_by(|a, b| a.chosen.cmp(&b.chosen));
        Ok(out)
    }

    pub fn parent(&self) -> &Presheaf {
        &self.parent
    }

    pub fn chosen(&self, c: ObjectId) -> impl Iterator<Item = usize> + '_ {
        self.chosen[c.0].iter()
    }

    pub fn contains(&self, c: ObjectId, e: usize) -> bool {
        self.chosen[c.0].contains(e)
    }

    /// Chosen element names at `c`, sorted.
    pub fn chosen_names(&self, c: ObjectId) -> Vec<String> {
        let mut v: Vec<String> = self.chosen[c.0]
            .iter()
            .map(|i| self.parent.values(c)[i].clone())
            .collect();
        v.sort();
        v
    }

    pub fn is_subset(&self, other: &Subpresheaf) -> bool {
        self.chosen
            .iter()
            .zip(&other.chosen)
            .all(|(a, b)| a.is_subset(*b))
    }

    fn check_parent(&self, other: &Subpresheaf) -> Result<(), PresheafError> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(PresheafError::ParentMismatch)
        }
    }

    fn pointwise(&self, other: &Subpresheaf, op: impl Fn(BitSet, BitSet) -> BitSet) -> Self {
        let chosen = self
            .chosen
            .iter()
            .zip(&other.chosen)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Self::from_masks(&self.parent, chosen)
    }

    pub fn meet(&self, other: &Subpresheaf) -> Result<Self, PresheafError> {
        self.check_parent(other)?;
        Ok(self.pointwise(other, BitSet::intersection))
    }

    pub fn join(&self, other: &Subpresheaf) -> Result<Self, PresheafError> {
        self.check_parent(other)?;
        Ok(self.pointwise(other, BitSet::union))
    }

    /// Elements `e ∈ E(c)` such that `keep(d, E(f)(e))` holds for every `f: d → c`.
    fn forcing(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let cat = self.parent.category();
        let chosen = cat
            .objects()
            .map(|c| {
                self.parent
                    .all_mask(c.0)
                    .iter()
                    .filter(|&e| {
                        cat.arrows()
                            .filter(|&f| cat.cod(f) == c)
                            .all(|f| keep(cat.dom(f).0, self.parent.restrict(f, e)))
                    })
                    .collect()
            })
            .collect();
        Self::from_masks(&self.parent, chosen)
    }

    /// `(A ⇒ B)(c) = {e | for all f: d → c, E(f)(e) ∈ A(d) implies E(f)(e) ∈ B(d)}`.
    pub fn implies(&self, other: &Subpresheaf) -> Result<Self, PresheafError> {
        self.check_parent(other)?;
        Ok(self.forcing(|d, x| !self.chosen[d].contains(x) || other.chosen[d].contains(x)))
    }

    /// `(¬A)(c) = {e | for all f: d → c, E(f)(e) ∉ A(d)}`.
    pub fn not(&self) -> Self {
        self.forcing(|d, x| !self.chosen[d].contains(x))
    }

    pub(crate) fn element_sieve_mask(&self, c: usize, e: usize) -> BitSet {
        let cat = self.parent.category();
        cat.arrows_into(c)
            .iter()
            .filter(|&f| {
                self.chosen[cat.dom_ix(f)].contains(self.parent.restrict(ArrowId(f), e))
            })
            .collect()
    }

    /// `S^A_(c,e) = {f: d → c | E(f)(e) ∈ A(d)}`.
    pub fn element_sieve(&self, c: ObjectId, e: usize) -> Result<Sieve, PresheafError> {
        let cat = self.parent.category();
        if c.0 >= cat.num_objects() || e >= self.parent.values(c).len() {
            return Err(PresheafError::ElementNotFound {
                object: if c.0 < cat.num_objects() {
                    cat.object_name(c).to_string()
                } else {
                    format!("#{}", c.0)
                },
                element: format!("#{e}"),
            });
        }
        Ok(Sieve::from_mask(cat, c, self.element_sieve_mask(c.0, e)))
    }

    /// Every element sieve `S^A_(c,e)`, in object then element order.
    pub fn element_sieves(&self) -> Vec<Sieve> {
        let cat = self.parent.category();
        cat.objects()
            .flat_map(|c| {
                self.parent
                    .all_mask(c.0)
                    .iter()
                    .map(move |e| Sieve::from_mask(cat, c, self.element_sieve_mask(c.0, e)))
            })
            .collect()
    }

    fn check_topology(&self, j: &GrothendieckTopology) -> Result<(), PresheafError> {
        if j.category().same_as(self.parent.category()) {
            Ok(())
        } else {
            Err(PresheafError::CategoryMismatch)
        }
    }

    /// `c_J(A)(c) = {e ∈ E(c) | S^A_(c,e) is J-covering}`.
    pub fn close(&self, j: &GrothendieckTopology) -> Result<Self, PresheafError> {
        self.check_topology(j)?;
        let cat = self.parent.category();
        let chosen = cat
            .objects()
            .map(|c| {
                self.parent
                    .all_mask(c.0)
                    .iter()
                    .filter(|&e| j.covers_mask(c.0).contains(&self.element_sieve_mask(c.0, e)))
                    .collect()
            })
            .collect();
        Ok(Self::from_masks(&self.parent, chosen))
    }

    pub fn is_closed(&self, j: &GrothendieckTopology) -> Result<bool, PresheafError> {
        Ok(self.close(j)? == *self)
    }

    /// `A ↪ E` is dense iff its closure is all of `E`.
    pub fn is_dense(&self, j: &GrothendieckTopology) -> Result<bool, PresheafError> {
        Ok(self.close(j)? == Self::full(&self.parent))
    }

    /// Pseudocomplement inside the lattice of `J`-closed subpresheaves:
    /// `A ⇒ c_J(∅)`.
    pub fn closed_not(&self, j: &GrothendieckTopology) -> Result<Self, PresheafError> {
        if !self.is_closed(j)? {
            return Err(PresheafError::NotClosed);
        }
        let bottom = Self::empty(&self.parent).close(j)?;
        self.implies(&bottom)
    }

    /// Least topology containing `J` for which `A ↪ E` is dense.
    pub fn densifying_topology(
        &self,
        j: &GrothendieckTopology,
    ) -> Result<GrothendieckTopology, PresheafError> {
        self.check_topology(j)?;
        Ok(j.generate_over(self.element_sieves())?)
    }
}

pub fn yoneda(cat: &FiniteCategory, c: ObjectId) -> Presheaf {
    Presheaf::yoneda(cat, c)
}

/// Topology generated over `j` by the element sieves of `A ∨ ¬A ↪ E` for every
/// subpresheaf `A` of every presheaf in `presheaves`.
pub fn excluded_middle_topology(
    j: &GrothendieckTopology,
    presheaves: &[Presheaf],
    bound: usize,
) -> Result<GrothendieckTopology, PresheafError> {
    let mut family = BTreeSet::new();
    let mut sieves = Vec::new();
    for e in presheaves {
        for a in Subpresheaf::enumerate(e, bound)? {
            let lem = a.join(&a.not())?;
            for s in lem.element_sieves() {
                if family.insert((s.codomain(), s.mask())) {
                    sieves.push(s);
                }
            }
        }
    }
    Ok(j.generate_over(sieves)?)
}
