//! Finite categories given by explicit composition tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{BitSet, CAPACITY};

/// Index of an object inside one validated [`FiniteCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub(crate) usize);

/// Index of an arrow inside one validated [`FiniteCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub(crate) usize);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Raw category file contents, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDescription {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<CompositeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// One row of the composition table: `result = then ∘ first`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeEntry {
    pub first: String,
    pub then: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("empty {0} name")]
    EmptyName(&'static str),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown object `{object}` referenced by {context}")]
    UnknownObject { object: String, context: String },
    #[error("unknown arrow `{arrow}` referenced by {context}")]
    UnknownArrow { arrow: String, context: String },
    #[error("object `{0}` has no identity arrow")]
    MissingIdentity(String),
    #[error("identity `{arrow}` of `{object}` is not an endomorphism of `{object}`")]
    IdentityNotEndo { object: String, arrow: String },
    #[error("composite {then}∘{first} is listed twice with different results")]
    ConflictingComposite { first: String, then: String },
    #[error("missing composite {then}∘{first}")]
    MissingComposite { first: String, then: String },
    #[error("composite entry {then}∘{first} = {result}: domains and codomains do not match")]
    DomCodMismatch {
        first: String,
        then: String,
        result: String,
    },
    #[error("identity law fails for `{arrow}` with identity `{identity}`")]
    IdentityViolation { identity: String, arrow: String },
    #[error("associativity fails for f=`{f}`, g=`{g}`, h=`{h}`: h∘(g∘f) ≠ (h∘g)∘f")]
    AssociativityViolation { f: String, g: String, h: String },
    #[error("{0} arrows exceeds the supported maximum of {CAPACITY}")]
    TooManyArrows(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ArrowData {
    name: String,
    dom: usize,
    cod: usize,
}

struct Inner {
    label: String,
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    identity: Vec<usize>,
    /// `table[first * n + then]` holds `then ∘ first` for composable pairs.
    table: Vec<Option<usize>>,
    object_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    into: Vec<BitSet>,
    out_of: Vec<BitSet>,
    /// `principal[f]` is the sieve generated by `f`: all `f ∘ g`.
    principal: Vec<BitSet>,
    /// `above[f]` is every `g` with `f ∈ principal[g]`.
    above: Vec<BitSet>,
    sieve_cache: Vec<OnceLock<Option<Arc<[BitSet]>>>>,
}

/// A validated, immutable finite category.
///
/// Cloning is cheap: all clones share one table.
#[derive(Clone)]
pub struct FiniteCategory {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("label", &self.inner.label)
            .field("objects", &self.inner.objects)
            .field("arrows", &self.inner.arrows.len())
            .finish()
    }
}

impl PartialEq for FiniteCategory {
    /// Structural equality: same objects, arrows and composition table, in
    /// the same order. The label is ignored.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.objects == other.inner.objects
                && self.inner.arrows == other.inner.arrows
                && self.inner.identity == other.inner.identity
                && self.inner.table == other.inner.table)
    }
}

impl Eq for FiniteCategory {}

/// Validate a category description. See [`FiniteCategory::new`].
pub fn validate_category(
    label: &str,
    raw: &CategoryDescription,
) -> Result<FiniteCategory, CategoryError> {
    FiniteCategory::new(label, raw)
}

impl FiniteCategory {
    /// Checks names, the identity assignment, totality and typing of the
    /// composition table, both identity laws and associativity, in that order.
    /// The first failure found is returned with its witnessing arrows.
    pub fn new(label: &str, raw: &CategoryDescription) -> Result<Self, CategoryError> {
        let mut object_index = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if o.is_empty() {
                return Err(CategoryError::EmptyName("object"));
            }
            if object_index.insert(o.clone(), i).is_some() {
                return Err(CategoryError::DuplicateObject(o.clone()));
            }
        }
        if raw.arrows.len() > CAPACITY {
            return Err(CategoryError::TooManyArrows(raw.arrows.len()));
        }
        let lookup_obj = |name: &str, context: &dyn Fn() -> String| {
            object_index
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::UnknownObject {
                    object: name.to_string(),
                    context: context(),
                })
        };
        let mut arrow_index = HashMap::new();
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for (i, a) in raw.arrows.iter().enumerate() {
            if a.name.is_empty() {
                return Err(CategoryError::EmptyName("arrow"));
            }
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(CategoryError::DuplicateArrow(a.name.clone()));
            }
            let ctx = || format!("arrow `{}`", a.name);
            arrows.push(ArrowData {
                name: a.name.clone(),
                dom: lookup_obj(&a.dom, &ctx)?,
                cod: lookup_obj(&a.cod, &ctx)?,
            });
        }
        let lookup_arrow = |name: &str, context: &dyn Fn() -> String| {
            arrow_index
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::UnknownArrow {
                    arrow: name.to_string(),
                    context: context(),
                })
        };

        for key in raw.identities.keys() {
            lookup_obj(key, &|| "the identity map".to_string())?;
        }
        let mut identity = Vec::with_capacity(raw.objects.len());
        for (i, o) in raw.objects.iter().enumerate() {
            let name = raw
                .identities
                .get(o)
                .ok_or_else(|| CategoryError::MissingIdentity(o.clone()))?;
            let id = lookup_arrow(name, &|| format!("identity of `{o}`"))?;
            if arrows[id].dom != i || arrows[id].cod != i {
                return Err(CategoryError::IdentityNotEndo {
                    object: o.clone(),
                    arrow: name.clone(),
                });
            }
            identity.push(id);
        }

        let n = arrows.len();
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for entry in &raw.compose {
            let ctx = || format!("composite {}∘{}", entry.then, entry.first);
            let f = lookup_arrow(&entry.first, &ctx)?;
            let g = lookup_arrow(&entry.then, &ctx)?;
            let r = lookup_arrow(&entry.result, &ctx)?;
            if arrows[f].cod != arrows[g].dom
                || arrows[r].dom != arrows[f].dom
                || arrows[r].cod != arrows[g].cod
            {
                return Err(CategoryError::DomCodMismatch {
                    first: entry.first.clone(),
                    then: entry.then.clone(),
                    result: entry.result.clone(),
                });
            }
            match table[f * n + g] {
                Some(prev) if prev != r => {
                    return Err(CategoryError::ConflictingComposite {
                        first: entry.first.clone(),
                        then: entry.then.clone(),
                    })
                }
                _ => table[f * n + g] = Some(r),
            }
        }
        for f in 0..n {
            for g in 0..n {
                if arrows[f].cod == arrows[g].dom && table[f * n + g].is_none() {
                    return Err(CategoryError::MissingComposite {
                        first: arrows[f].name.clone(),
                        then: arrows[g].name.clone(),
                    });
                }
            }
        }
        let comp = |g: usize, f: usize| table[f * n + g].expect("composable");

        for f in 0..n {
            let id_cod = identity[arrows[f].cod];
            let id_dom = identity[arrows[f].dom];
            let witness = if comp(id_cod, f) != f {
                Some(id_cod)
            } else if comp(f, id_dom) != f {
                Some(id_dom)
            } else {
                None
            };
            if let Some(id) = witness {
                return Err(CategoryError::IdentityViolation {
                    identity: arrows[id].name.clone(),
                    arrow: arrows[f].name.clone(),
                });
            }
        }
        for f in 0..n {
            for g in (0..n).filter(|&g| arrows[g].dom == arrows[f].cod) {
                let gf = comp(g, f);
                for h in (0..n).filter(|&h| arrows[h].dom == arrows[g].cod) {
                    if comp(h, gf) != comp(comp(h, g), f) {
                        return Err(CategoryError::AssociativityViolation {
                            f: arrows[f].name.clone(),
                            g: arrows[g].name.clone(),
                            h: arrows[h].name.clone(),
                        });
                    }
                }
            }
        }

        let m = raw.objects.len();
        let mut into = vec![BitSet::EMPTY; m];
        let mut out_of = vec![BitSet::EMPTY; m];
        for (i, a) in arrows.iter().enumerate() {
            into[a.cod].insert(i);
            out_of[a.dom].insert(i);
        }
        let principal: Vec<BitSet> = (0..n)
            .map(|f| into[arrows[f].dom].iter().map(|g| comp(f, g)).collect())
            .collect();
        let mut above = vec![BitSet::EMPTY; n];
        for (g, p) in principal.iter().enumerate() {
            for f in p.iter() {
                above[f].insert(g);
            }
        }

        Ok(FiniteCategory {
            inner: Arc::new(Inner {
                label: label.to_string(),
                objects: raw.objects.clone(),
                arrows,
                identity,
                table,
                object_index,
                arrow_index,
                into,
                out_of,
                principal,
                above,
                sieve_cache: (0..m).map(|_| OnceLock::new()).collect(),
            }),
        })
    }

    /// Parse and validate a category file.
    pub fn from_json(label: &str, text: &str) -> Result<Self, crate::Error> {
        let raw: CategoryDescription = serde_json::from_str(text)?;
        Ok(Self::new(label, &raw)?)
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Same category, different label.
    pub fn relabeled(&self, label: &str) -> Self {
        Self::new(label, &self.description()).expect("already validated")
    }

    /// The canonical description: objects and arrows in declaration order,
    /// composites ordered by `(first, then)` arrow index.
    pub fn description(&self) -> CategoryDescription {
        let inner = &*self.inner;
        let n = inner.arrows.len();
        let mut compose = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if let Some(r) = inner.table[f * n + g] {
                    compose.push(CompositeEntry {
                        first: inner.arrows[f].name.clone(),
                        then: inner.arrows[g].name.clone(),
                        result: inner.arrows[r].name.clone(),
                    });
                }
            }
        }
        CategoryDescription {
            objects: inner.objects.clone(),
            arrows: inner
                .arrows
                .iter()
                .map(|a| ArrowDecl {
                    name: a.name.clone(),
                    dom: inner.objects[a.dom].clone(),
                    cod: inner.objects[a.cod].clone(),
                })
                .collect(),
            identities: inner
                .objects
                .iter()
                .zip(&inner.identity)
                .map(|(o, &id)| (o.clone(), inner.arrows[id].name.clone()))
                .collect(),
            compose,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.description()).expect("serializable")
    }

    /// Whether two handles denote the same category (shared table or equal
    /// structure). Downstream values use this for `CategoryMismatch` checks.
    pub fn same_as(&self, other: &FiniteCategory) -> bool {
        self == other
    }

    pub fn num_objects(&self) -> usize {
        self.inner.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.inner.arrows.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjectId> + '_ {
        (0..self.inner.objects.len()).map(ObjectId)
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = ArrowId> + '_ {
        (0..self.inner.arrows.len()).map(ArrowId)
    }

    pub fn object(&self, name: &str) -> Option<ObjectId> {
        self.inner.object_index.get(name).copied().map(ObjectId)
    }

    pub fn arrow(&self, name: &str) -> Option<ArrowId> {
        self.inner.arrow_index.get(name).copied().map(ArrowId)
    }

    pub fn object_name(&self, c: ObjectId) -> &str {
        &self.inner.objects[c.0]
    }

    pub fn arrow_name(&self, f: ArrowId) -> &str {
        &self.inner.arrows[f.0].name
    }

    pub fn dom(&self, f: ArrowId) -> ObjectId {
        ObjectId(self.inner.arrows[f.0].dom)
    }

    pub fn cod(&self, f: ArrowId) -> ObjectId {
        ObjectId(self.inner.arrows[f.0].cod)
    }

    pub fn identity(&self, c: ObjectId) -> ArrowId {
        ArrowId(self.inner.identity[c.0])
    }

    pub fn is_identity(&self, f: ArrowId) -> bool {
        self.inner.identity[self.inner.arrows[f.0].dom] == f.0
    }

    /// `g ∘ f`, or `None` when `cod f ≠ dom g`.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        let n = self.inner.arrows.len();
        self.inner.table[f.0 * n + g.0].map(ArrowId)
    }

    /// `g ∘ f` on raw indices; the pair must be composable.
    pub(crate) fn comp(&self, g: usize, f: usize) -> usize {
        let n = self.inner.arrows.len();
        self.inner.table[f * n + g].expect("composable pair")
    }

    /// Arrows `d → c`.
    pub fn hom(&self, d: ObjectId, c: ObjectId) -> impl Iterator<Item = ArrowId> + '_ {
        self.inner
            .into[c.0]
            .intersection(self.inner.out_of[d.0])
            .iter()
            .map(ArrowId)
    }

    pub(crate) fn hom_set(&self, d: usize, c: usize) -> BitSet {
        self.inner.into[c].intersection(self.inner.out_of[d])
    }

    /// All arrows with codomain `c`, as a mask.
    pub(crate) fn arrows_into(&self, c: usize) -> BitSet {
        self.inner.into[c]
    }

    pub(crate) fn principal(&self, f: usize) -> BitSet {
        self.inner.principal[f]
    }

    pub(crate) fn above(&self, f: usize) -> BitSet {
        self.inner.above[f]
    }

    pub(crate) fn dom_ix(&self, f: usize) -> usize {
        self.inner.arrows[f].dom
    }

    pub(crate) fn arrow_names(&self, set: BitSet) -> Vec<String> {
        let mut names: Vec<String> = set
            .iter()
            .map(|i| self.inner.arrows[i].name.clone())
            .collect();
        names.sort();
        names
    }

    pub(crate) fn cached_sieves(
        &self,
        c: usize,
        compute: impl FnOnce() -> Option<Vec<BitSet>>,
    ) -> Option<Arc<[BitSet]>> {
        self.inner.sieve_cache[c]
            .get_or_init(|| compute().map(Arc::from))
            .clone()
    }

    /// The opposite category: arrows keep their names, `dom` and `cod` swap,
    /// and `g ∘ f` in `C^op` is `f ∘ g` in `C`.
    pub fn opposite(&self) -> FiniteCategory {
        let desc = self.description();
        let op = CategoryDescription {
            objects: desc.objects,
            arrows: desc
                .arrows
                .into_iter()
                .map(|a| ArrowDecl {
                    name: a.name,
                    dom: a.cod,
                    cod: a.dom,
                })
                .collect(),
            identities: desc.identities,
            compose: desc
                .compose
                .into_iter()
                .map(|e| CompositeEntry {
                    first: e.then,
                    then: e.first,
                    result: e.result,
                })
                .collect(),
        };
        let label = match self.label().strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.label()),
        };
        FiniteCategory::new(&label, &op).expect("opposite of a valid category is valid")
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: ArrowId) -> Option<ArrowId> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a).find(|&g| {
            self.compose(g, f) == Some(self.identity(a))
                && self.compose(f, g) == Some(self.identity(b))
        })
    }

    /// True iff every arrow has a two-sided inverse.
    pub fn is_groupoid(&self) -> bool {
        self.arrows().all(|f| self.inverse(f).is_some())
    }

    /// First cospan `(f: a → c, g: b → c)` with no completing square
    /// `f ∘ h = g ∘ k`, in arrow-index order.
    pub fn right_ore_failure(&self) -> Option<(ArrowId, ArrowId)> {
        for f in self.arrows() {
            let c = self.cod(f);
            for g in self.inner.into[c.0].iter().map(ArrowId) {
                if g < f {
                    continue;
                }
                let (a, b) = (self.dom(f), self.dom(g));
                let completes = self.objects().any(|d| {
                    self.hom(d, a).any(|h| {
                        let fh = self.compose(f, h);
                        self.hom(d, b).any(|k| self.compose(g, k) == fh)
                    })
                });
                if !completes {
                    return Some((f, g));
                }
            }
        }
        None
    }

    /// Every cospan completes to a commutative square.
    pub fn satisfies_right_ore(&self) -> bool {
        self.right_ore_failure().is_none()
    }
}

/// Right Ore condition; free-function form of [`FiniteCategory::satisfies_right_ore`].
pub fn satisfies_right_ore(c: &FiniteCategory) -> bool {
    c.satisfies_right_ore()
}

pub fn is_groupoid(c: &FiniteCategory) -> bool {
    c.is_groupoid()
}

pub fn opposite(c: &FiniteCategory) -> FiniteCategory {
    c.opposite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn walk_desc() -> CategoryDescription {
        serde_json::from_str(fixtures::WALK_JSON).unwrap()
    }

    #[test]
    fn walk_is_valid() {
        let c = FiniteCategory::new("WALK", &walk_desc()).unwrap();
        assert_eq!(c.num_objects(), 2);
        assert_eq!(c.num_arrows(), 3);
    }

    #[test]
    fn deleting_a_composite_is_reported() {
        let mut d = walk_desc();
        d.compose.retain(|e| !(e.first == "u" && e.then == "id_b"));
        assert_eq!(
            FiniteCategory::new("W", &d).unwrap_err(),
            CategoryError::MissingComposite {
                first: "u".into(),
                then: "id_b".into()
            }
        );
    }

    #[test]
    fn ill_typed_composite_is_reported() {
        let mut d = walk_desc();
        d.compose.push(CompositeEntry {
            first: "id_b".into(),
            then: "u".into(),
            result: "u".into(),
        });
        assert!(matches!(
            FiniteCategory::new("W", &d),
            Err(CategoryError::DomCodMismatch { .. })
        ));
    }

    #[test]
    fn wrong_identity_result_is_reported() {
        // one object, arrows e and s; claim e∘s = e, violating the identity law
        let d = CategoryDescription {
            objects: vec!["*".into()],
            arrows: vec![
                ArrowDecl { name: "e".into(), dom: "*".into(), cod: "*".into() },
                ArrowDecl { name: "s".into(), dom: "*".into(), cod: "*".into() },
            ],
            identities: [("*".to_string(), "e".to_string())].into(),
            compose: vec![
                entry("e", "e", "e"),
                entry("s", "e", "e"),
                entry("e", "s", "s"),
                entry("s", "s", "e"),
            ],
        };
        assert_eq!(
            FiniteCategory::new("bad", &d).unwrap_err(),
            CategoryError::IdentityViolation { identity: "e".into(), arrow: "s".into() }
        );
    }

    #[test]
    fn non_associative_table_is_reported() {
        // one object {1, x, y}; x∘x = y, y∘y = y, x∘y = 1, y∘x = y.
        // (x∘x)∘y = y∘y = y but x∘(x∘y) = x∘1 = x.
        let names = ["1", "x", "y"];
        let mul = |a: &str, b: &str| -> &'static str {
            match (a, b) {
                ("1", other) | (other, "1") => names.iter().find(|n| **n == other).copied().unwrap(),
                ("x", "x") => "y",
                ("y", "y") => "y",
                ("x", "y") => "1",
                ("y", "x") => "y",
                _ => unreachable!(),
            }
        };
        let mut compose = Vec::new();
        for f in names {
            for g in names {
                compose.push(entry(f, g, mul(g, f)));
            }
        }
        let d = CategoryDescription {
            objects: vec!["*".into()],
            arrows: names
                .iter()
                .map(|n| ArrowDecl { name: n.to_string(), dom: "*".into(), cod: "*".into() })
                .collect(),
            identities: [("*".to_string(), "1".to_string())].into(),
            compose,
        };
        assert!(matches!(
            FiniteCategory::new("bad", &d),
            Err(CategoryError::AssociativityViolation { .. })
        ));
    }

    fn entry(first: &str, then: &str, result: &str) -> CompositeEntry {
        CompositeEntry { first: first.into(), then: then.into(), result: result.into() }
    }

    #[test]
    fn duplicate_and_unknown_names() {
        let mut d = walk_desc();
        d.objects.push("a".into());
        assert_eq!(
            FiniteCategory::new("W", &d).unwrap_err(),
            CategoryError::DuplicateObject("a".into())
        );
        let mut d = walk_desc();
        d.arrows[2].cod = "zz".into();
        assert!(matches!(
            FiniteCategory::new("W", &d),
            Err(CategoryError::UnknownObject { .. })
        ));
        let mut d = walk_desc();
        d.identities.remove("a");
        assert_eq!(
            FiniteCategory::new("W", &d).unwrap_err(),
            CategoryError::MissingIdentity("a".into())
        );
    }

    #[test]
    fn opposite_of_walk_reverses_u() {
        let c = fixtures::walk();
        let op = c.opposite();
        let u = op.arrow("u").unwrap();
        assert_eq!(op.object_name(op.dom(u)), "b");
        assert_eq!(op.object_name(op.cod(u)), "a");
        assert_eq!(op.opposite(), c);
        assert_eq!(op.opposite().label(), "WALK");
    }

    #[test]
    fn opposite_of_cospan_is_span() {
        assert_eq!(fixtures::cospan().opposite(), fixtures::span());
    }

    #[test]
    fn z2_is_self_dual() {
        let z2 = fixtures::z2();
        assert_eq!(z2.opposite(), z2);
    }

    #[test]
    fn groupoid_checks() {
        assert!(fixtures::z2().is_groupoid());
        assert!(!fixtures::walk().is_groupoid());
        assert!(!fixtures::m2().is_groupoid());
        assert!(fixtures::term().is_groupoid());
        assert!(fixtures::disc2().is_groupoid());
    }

    #[test]
    fn right_ore_checks() {
        assert!(fixtures::walk().satisfies_right_ore());
        assert!(fixtures::m2().satisfies_right_ore());
        assert!(fixtures::span().satisfies_right_ore());
        let cospan = fixtures::cospan();
        let (f, g) = cospan.right_ore_failure().unwrap();
        assert_eq!(
            (cospan.arrow_name(f), cospan.arrow_name(g)),
            ("f", "g")
        );
        assert!(!fixtures::pair().satisfies_right_ore());
    }

    #[test]
    fn description_round_trips() {
        for c in fixtures::all() {
            let again = FiniteCategory::new(c.label(), &c.description()).unwrap();
            assert_eq!(again, c);
            assert_eq!(again.description(), c.description());
        }
    }
}
