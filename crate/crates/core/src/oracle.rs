//! Exhaustive self-checks on one finite category.
//!
//! Every invariant is recomputed by brute force (subset search, cartesian
//! products, intersections over all enumerated topologies) and compared with
//! the library's constructions. Usable only at desk scale: the category must
//! carry at most `bound` sieves in total.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::fincat::{ArrowId, FiniteCategory, ObjectId};
use crate::fixtures;
use crate::presheaf::{excluded_middle_topology, Presheaf, PresheafError, Subpresheaf, DEFAULT_ELEMENT_BOUND};
use crate::reduct::{
    boolean_witness, booleanization, booleanization_by_generation, de_morgan_witness,
    demorganization, demorganization_by_generation, extend_topology, is_boolean, is_de_morgan,
    reduced_subcategory, restrict_topology,
};
use crate::sieve::Sieve;
use crate::topology::{effective_epimorphic, Covers, GrothendieckTopology, TopologyError};
use crate::Error;

/// Largest number of arrows into one object for which sieves are found by
/// subset search.
const MAX_SUBSET_SEARCH_ARROWS: usize = 20;
/// Largest cartesian product searched for compatible families.
const MAX_FAMILY_SEARCH: usize = 1 << 18;
/// Largest subobject lattice on which triple-wise laws are checked.
const MAX_TRIPLE_LATTICE: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    /// Counterexample on failure, reason on skip, optional note on pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub category: String,
    pub bound: usize,
    pub sieves: usize,
    pub topologies: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl OracleReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

enum Problem {
    Fail(String),
    Skip(String),
    Error(Error),
}

impl<E: Into<Error>> From<E> for Problem {
    fn from(e: E) -> Self {
        Problem::Error(e.into())
    }
}

type Outcome = Result<Option<String>, Problem>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Problem> {
    if cond {
        Ok(())
    } else {
        Err(Problem::Fail(msg()))
    }
}

/// Names of every invariant [`run`] checks, in report order.
pub const CHECKS: &[&str] = &[
    "category_laws",
    "sieve_enumeration",
    "pullback_functoriality",
    "sieve_heyting",
    "yoneda_sieves",
    "presheaf_heyting",
    "topology_enumeration",
    "generation_minimality",
    "dense_and_de_morgan",
    "excluded_middle_operators",
    "sieve_closure",
    "subobject_closure",
    "closed_negation",
    "negation_under_dense",
    "densifying_minimality",
    "restriction_extension",
    "booleanization",
    "demorganization",
    "verdict_witnesses",
    "groupoid_and_ore",
    "subcanonicity",
];

struct NamedPresheaf {
    name: String,
    presheaf: Presheaf,
    subs: Vec<Subpresheaf>,
}

struct Ctx {
    cat: FiniteCategory,
    bound: usize,
    /// Sieves on each object, found by subset search.
    sieves: Vec<Vec<BitSet>>,
    topologies: Vec<GrothendieckTopology>,
    presheaves: Vec<NamedPresheaf>,
}

/// Runs every invariant against `cat`. Fails with `TooLarge` when `cat`
/// carries more than `bound` sieves or an object has too many arrows into it
/// for subset search.
pub fn run(cat: &FiniteCategory, bound: usize) -> Result<OracleReport, Error> {
    let mut sieves = Vec::new();
    for c in cat.objects() {
        let into = arrows_into(cat, c);
        if into.len() > MAX_SUBSET_SEARCH_ARROWS {
            return Err(TopologyError::TooLarge(format!(
                "object `{}` has {} incoming arrows, too many for subset search",
                cat.object_name(c),
                into.len()
            ))
            .into());
        }
        sieves.push(
            into.subsets()
                .filter(|&s| brute_is_sieve(cat, s))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>(),
        );
    }
    let total: usize = sieves.iter().map(Vec::len).sum();
    if total > bound {
        return Err(TopologyError::TooLarge(format!(
            "{} has {total} sieves, above the oracle bound {bound}",
            cat.label()
        ))
        .into());
    }
    let topologies = GrothendieckTopology::enumerate(cat, bound)?;
    let presheaves = fixtures::presheaves_on(cat)
        .into_iter()
        .enumerate()
        .filter(|(_, p)| p.total_elements() <= DEFAULT_ELEMENT_BOUND)
        .map(|(i, p)| {
            let name = match p.represents() {
                Some(c) => format!("y({})", cat.object_name(c)),
                None => format!("presheaf #{i}"),
            };
            let subs = Subpresheaf::enumerate(&p, DEFAULT_ELEMENT_BOUND)?;
            Ok(NamedPresheaf { name, presheaf: p, subs })
        })
        .collect::<Result<Vec<_>, PresheafError>>()?;
    let ctx = Ctx {
        cat: cat.clone(),
        bound,
        sieves,
        topologies,
        presheaves,
    };

    let checks: [fn(&Ctx) -> Outcome; 21] = [
        category_laws,
        sieve_enumeration,
        pullback_functoriality,
        sieve_heyting,
        yoneda_sieves,
        presheaf_heyting,
        topology_enumeration,
        generation_minimality,
        dense_and_de_morgan,
        excluded_middle_operators,
        sieve_closure,
        subobject_closure,
        closed_negation,
        negation_under_dense,
        densifying_minimality,
        restriction_extension,
        booleanization_check,
        demorganization_check,
        verdict_witnesses,
        groupoid_and_ore,
        subcanonicity,
    ];
    let results: Vec<CheckResult> = CHECKS
        .iter()
        .zip(checks)
        .map(|(&name, check)| {
            let (status, detail) = match check(&ctx) {
                Ok(note) => (Status::Pass, note),
                Err(Problem::Fail(msg)) => (Status::Fail, Some(msg)),
                Err(Problem::Skip(msg)) => (Status::Skip, Some(msg)),
                Err(Problem::Error(Error::Topology(TopologyError::TooLarge(msg)))) => {
                    (Status::Skip, Some(msg))
                }
                Err(Problem::Error(e)) => (Status::Fail, Some(format!("error: {e}"))),
            };
            CheckResult { name, status, detail }
        })
        .collect();
    Ok(OracleReport {
        category: cat.label().to_string(),
        bound,
        sieves: total,
        topologies: ctx.topologies.len(),
        passed: results.iter().all(|r| r.status != Status::Fail),
        checks: results,
    })
}

// Brute-force primitives, written against the public category interface only.

fn arrows_into(cat: &FiniteCategory, c: ObjectId) -> BitSet {
    cat.arrows().filter(|&f| cat.cod(f) == c).map(|f| f.index()).collect()
}

fn brute_is_sieve(cat: &FiniteCategory, set: BitSet) -> bool {
    set.iter().all(|f| {
        cat.arrows().all(|g| match cat.compose(ArrowId(f), g) {
            Some(fg) => set.contains(fg.index()),
            None => true,
        })
    })
}

fn brute_pullback(cat: &FiniteCategory, set: BitSet, f: ArrowId) -> BitSet {
    cat.arrows()
        .filter(|&g| cat.compose(f, g).is_some_and(|fg| set.contains(fg.index())))
        .map(|g| g.index())
        .collect()
}

fn brute_stably_nonempty(cat: &FiniteCategory, c: ObjectId, set: BitSet) -> bool {
    arrows_into(cat, c)
        .iter()
        .all(|f| !brute_pullback(cat, set, ArrowId(f)).is_empty())
}

fn sieve(cat: &FiniteCategory, c: usize, mask: BitSet) -> Sieve {
    Sieve::from_mask(cat, ObjectId(c), mask)
}

fn topology_from_masks(cat: &FiniteCategory, covers: Covers) -> GrothendieckTopology {
    GrothendieckTopology::from_covers_unchecked(cat, covers)
}

/// Independent axiom check: maximality, stability, transitivity.
fn brute_axioms(ctx: &Ctx, covers: &Covers) -> Result<(), String> {
    let cat = &ctx.cat;
    for c in cat.objects() {
        let set = &covers[c.index()];
        if !set.contains(&arrows_into(cat, c)) {
            return Err(format!("maximal sieve on {} does not cover", cat.object_name(c)));
        }
        for &s in set {
            for f in arrows_into(cat, c).iter() {
                let p = brute_pullback(cat, s, ArrowId(f));
                if !covers[cat.dom(ArrowId(f)).index()].contains(&p) {
                    return Err(format!(
                        "pullback of {} along {} does not cover",
                        sieve(cat, c.index(), s),
                        cat.arrow_name(ArrowId(f))
                    ));
                }
            }
        }
        for &r in &ctx.sieves[c.index()] {
            let local = |s: BitSet| {
                s.iter().all(|f| {
                    let dom = cat.dom(ArrowId(f)).index();
                    covers[dom].contains(&brute_pullback(cat, r, ArrowId(f)))
                })
            };
            if !set.contains(&r) && set.iter().any(|&s| local(s)) {
                return Err(format!(
                    "{} is locally covering but does not cover",
                    sieve(cat, c.index(), r)
                ));
            }
        }
    }
    Ok(())
}

/// Per-object intersection of the covers of every topology in `it`, or `None`
/// for an empty iterator.
fn intersection<'a>(
    it: impl Iterator<Item = &'a GrothendieckTopology>,
) -> Option<Vec<BTreeSet<BitSet>>> {
    it.fold(None, |acc: Option<Covers>, t| {
        let cur: Covers = (0..t.category().num_objects())
            .map(|c| t.covers_mask(c).clone())
            .collect();
        Some(match acc {
            None => cur,
            Some(prev) => prev
                .iter()
                .zip(&cur)
                .map(|(a, b)| a.intersection(b).copied().collect())
                .collect(),
        })
    })
}

fn covers_of(t: &GrothendieckTopology) -> Covers {
    (0..t.category().num_objects())
        .map(|c| t.covers_mask(c).clone())
        .collect()
}

fn all_sieves(ctx: &Ctx) -> impl Iterator<Item = Sieve> + '_ {
    ctx.sieves
        .iter()
        .enumerate()
        .flat_map(move |(c, ss)| ss.iter().map(move |&s| sieve(&ctx.cat, c, s)))
}

// Checks.

fn category_laws(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for f in cat.arrows() {
        let (d, c) = (cat.dom(f), cat.cod(f));
        ensure(
            cat.compose(f, cat.identity(d)) == Some(f) && cat.compose(cat.identity(c), f) == Some(f),
            || format!("identity law fails at {}", cat.arrow_name(f)),
        )?;
        for g in cat.arrows() {
            ensure(cat.compose(g, f).is_some() == (cat.cod(f) == cat.dom(g)), || {
                format!("composite of {} then {} is wrongly (un)defined", cat.arrow_name(f), cat.arrow_name(g))
            })?;
            let Some(gf) = cat.compose(g, f) else { continue };
            for h in cat.arrows() {
                let Some(h_gf) = cat.compose(h, gf) else { continue };
                let hg = cat.compose(h, g).expect("composable");
                ensure(cat.compose(hg, f) == Some(h_gf), || {
                    format!(
                        "associativity fails at {}, {}, {}",
                        cat.arrow_name(f),
                        cat.arrow_name(g),
                        cat.arrow_name(h)
                    )
                })?;
            }
        }
    }
    Ok(None)
}

fn sieve_enumeration(ctx: &Ctx) -> Outcome {
    for c in ctx.cat.objects() {
        let listed: Vec<BitSet> = Sieve::enumerate(&ctx.cat, c)?.iter().map(Sieve::mask).collect();
        ensure(listed == ctx.sieves[c.index()], || {
            format!(
                "on {}: enumerated {} sieves, subset search found {}",
                ctx.cat.object_name(c),
                listed.len(),
                ctx.sieves[c.index()].len()
            )
        })?;
    }
    Ok(None)
}

fn pullback_functoriality(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for s in all_sieves(ctx) {
        let c = s.codomain();
        ensure(s.pullback(cat.identity(c))? == s, || format!("id* moves {s}"))?;
        for f in cat.arrows().filter(|&f| cat.cod(f) == c) {
            let p = s.pullback(f)?;
            ensure(p.mask() == brute_pullback(cat, s.mask(), f), || {
                format!("pullback of {s} along {} is wrong", cat.arrow_name(f))
            })?;
            for g in cat.arrows().filter(|&g| cat.cod(g) == cat.dom(f)) {
                let fg = cat.compose(f, g).expect("composable");
                ensure(s.pullback(fg)? == p.pullback(g)?, || {
                    format!(
                        "(f∘g)* differs from g*f* for {s}, f = {}, g = {}",
                        cat.arrow_name(f),
                        cat.arrow_name(g)
                    )
                })?;
            }
        }
    }
    Ok(None)
}

fn sieve_heyting(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for (c, masks) in ctx.sieves.iter().enumerate() {
        let all: Vec<Sieve> = masks.iter().map(|&m| sieve(cat, c, m)).collect();
        let empty = Sieve::empty(cat, ObjectId(c));
        for s in &all {
            let not = s.not();
            ensure(s.intersection(&not)?.is_empty(), || format!("{s} meets its negation"))?;
            let largest_disjoint = all
                .iter()
                .filter(|r| r.intersection(s).is_ok_and(|m| m.is_empty()))
                .fold(BitSet::EMPTY, |acc, r| acc.union(r.mask()));
            ensure(not.mask() == largest_disjoint, || {
                format!("¬{s} = {not} is not the largest sieve disjoint from it")
            })?;
            ensure(not.not().not() == not, || format!("¬¬¬ ≠ ¬ at {s}"))?;
            ensure(s.not_not() == not.not(), || format!("¬¬ formula disagrees with ¬(¬) at {s}"))?;
            ensure(s.implies(&empty)? == not, || format!("{s} ⇒ ∅ differs from ¬{s}"))?;
            ensure(s.is_stably_nonempty() == brute_stably_nonempty(cat, ObjectId(c), s.mask()), || {
                format!("stable non-emptiness of {s} is wrong")
            })?;
            for t in &all {
                let imp = s.implies(t)?;
                let largest = all
                    .iter()
                    .filter(|r| r.intersection(s).is_ok_and(|m| m.is_subset(t)))
                    .fold(BitSet::EMPTY, |acc, r| acc.union(r.mask()));
                ensure(imp.mask() == largest, || {
                    format!("{s} ⇒ {t} = {imp} is not the largest R with R ∩ S ⊆ T")
                })?;
                for r in &all {
                    ensure(
                        r.intersection(s)?.is_subset(t) == r.is_subset(&imp),
                        || format!("adjunction fails for R = {r}, S = {s}, T = {t}"),
                    )?;
                }
            }
        }
    }
    Ok(None)
}

fn yoneda_sieves(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for c in cat.objects() {
        let y = Presheaf::yoneda(cat, c);
        if y.total_elements() > DEFAULT_ELEMENT_BOUND {
            continue;
        }
        let subs = Subpresheaf::enumerate(&y, DEFAULT_ELEMENT_BOUND)?;
        ensure(subs.len() == ctx.sieves[c.index()].len(), || {
            format!("y({}) has {} subobjects but {} sieves", cat.object_name(c), subs.len(), ctx.sieves[c.index()].len())
        })?;
        for &m in &ctx.sieves[c.index()] {
            let s = sieve(cat, c.index(), m);
            let a = Subpresheaf::from_sieve(&y, &s)?;
            ensure(a.to_sieve()? == s, || format!("{s} does not round-trip through y"))?;
            ensure(a.not().to_sieve()? == s.not(), || format!("negation of {s} differs in y"))?;
        }
    }
    Ok(None)
}

fn presheaf_heyting(ctx: &Ctx) -> Outcome {
    for p in &ctx.presheaves {
        let subs = &p.subs;
        let empty = Subpresheaf::empty(&p.presheaf);
        for a in subs {
            let not = a.not();
            ensure(a.meet(&not)? == empty, || format!("{}: {a} meets its negation", p.name))?;
            ensure(subs.contains(&not), || format!("{}: ¬{a} is not a subpresheaf", p.name))?;
            for b in subs {
                if a.meet(b)? == empty {
                    ensure(b.is_subset(&not), || {
                        format!("{}: {b} is disjoint from {a} but not below its negation", p.name)
                    })?;
                }
            }
            ensure(not.not().not() == not, || format!("{}: ¬¬¬ ≠ ¬ at {a}", p.name))?;
            ensure(a.implies(&empty)? == not, || format!("{}: A ⇒ ∅ differs from ¬A at {a}", p.name))?;
        }
        if subs.len() > MAX_TRIPLE_LATTICE {
            return Err(Problem::Skip(format!(
                "{} has {} subobjects, too many for the adjunction triples",
                p.name,
                subs.len()
            )));
        }
        for a in subs {
            for b in subs {
                let imp = a.implies(b)?;
                ensure(subs.contains(&imp), || format!("{}: {a} ⇒ {b} is not a subpresheaf", p.name))?;
                for r in subs {
                    ensure(r.meet(a)?.is_subset(b) == r.is_subset(&imp), || {
                        format!("{}: adjunction fails for R = {r}, A = {a}, B = {b}", p.name)
                    })?;
                }
            }
        }
    }
    Ok(None)
}

fn topology_enumeration(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for t in &ctx.topologies {
        brute_axioms(ctx, &covers_of(t)).map_err(|e| Problem::Fail(format!("{t}: {e}")))?;
    }
    // every subfamily of sieves passing the brute axioms must be listed
    let optional: Vec<(usize, BitSet)> = ctx
        .sieves
        .iter()
        .enumerate()
        .flat_map(|(c, ss)| {
            ss.iter()
                .copied()
                .filter(move |&s| s != arrows_into(cat, ObjectId(c)))
                .map(move |s| (c, s))
        })
        .collect();
    if optional.len() > 20 {
        return Err(Problem::Skip(format!("{} optional sieves", optional.len())));
    }
    let mut expected = 0usize;
    for pick in 0u32..1 << optional.len() {
        let mut covers: Covers = cat
            .objects()
            .map(|c| BTreeSet::from([arrows_into(cat, c)]))
            .collect();
        for (i, &(c, s)) in optional.iter().enumerate() {
            if pick >> i & 1 == 1 {
                covers[c].insert(s);
            }
        }
        if brute_axioms(ctx, &covers).is_ok() {
            expected += 1;
            let t = topology_from_masks(cat, covers);
            ensure(ctx.topologies.contains(&t), || format!("{t} is a topology but was not enumerated"))?;
        }
    }
    ensure(expected == ctx.topologies.len(), || {
        format!("enumerated {} topologies, brute force found {expected}", ctx.topologies.len())
    })?;
    for named in [
        GrothendieckTopology::trivial(cat),
        GrothendieckTopology::maximal(cat)?,
        GrothendieckTopology::dense(cat)?,
        GrothendieckTopology::de_morgan(cat)?,
    ] {
        ensure(ctx.topologies.contains(&named), || format!("{named} missing from enumeration"))?;
    }
    Ok(Some(format!("{} topologies", ctx.topologies.len())))
}

fn generation_minimality(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for s in all_sieves(ctx) {
        let generated = GrothendieckTopology::generate(cat, [s.clone()])?;
        let expected = intersection(ctx.topologies.iter().filter(|t| t.is_covering(&s)))
            .ok_or_else(|| Problem::Fail(format!("no topology contains {s}")))?;
        ensure(covers_of(&generated) == expected, || {
            format!("generate({{{s}}}) = {generated} is not the least topology containing it")
        })?;
    }
    for t in &ctx.topologies {
        let again = GrothendieckTopology::generate(cat, all_covers(t))?;
        ensure(again == *t, || format!("generate is not idempotent on {t}"))?;
        let over = t.generate_over([])?;
        ensure(over == *t, || format!("generate_over adds sieves to {t}"))?;
    }
    Ok(None)
}

fn all_covers(t: &GrothendieckTopology) -> Vec<Sieve> {
    t.category().objects().flat_map(|c| t.covers(c)).collect()
}

fn dense_and_de_morgan(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    let dense = GrothendieckTopology::dense(cat)?;
    for c in cat.objects() {
        for &m in &ctx.sieves[c.index()] {
            ensure(dense.covers_mask(c.index()).contains(&m) == brute_stably_nonempty(cat, c, m), || {
                format!("dense topology disagrees with stable non-emptiness at {}", sieve(cat, c.index(), m))
            })?;
        }
    }
    let lem: Vec<Sieve> = all_sieves(ctx).map(|s| s.union(&s.not()).expect("same codomain")).collect();
    let generated = GrothendieckTopology::generate(cat, lem)?;
    ensure(generated == dense, || format!("generate(R ∪ ¬R) = {generated} but dense = {dense}"))?;
    let dm: Vec<Sieve> = all_sieves(ctx)
        .map(|s| s.not().union(&s.not_not()).expect("same codomain"))
        .collect();
    let de_morgan = GrothendieckTopology::de_morgan(cat)?;
    let expected = intersection(
        ctx.topologies
            .iter()
            .filter(|t| dm.iter().all(|s| t.is_covering(s))),
    )
    .expect("the maximal topology contains every family");
    ensure(covers_of(&de_morgan) == expected, || {
        format!("De Morgan topology {de_morgan} is not the least containing ¬R ∪ ¬¬R")
    })?;
    ensure(de_morgan.leq(&dense)?, || format!("{de_morgan} is not below {dense}"))?;
    for t in &ctx.topologies {
        let no_empty = cat.objects().all(|c| !t.covers_by_empty(c));
        ensure(t.leq(&dense)? == no_empty, || {
            format!("{t}: J ≤ dense should hold exactly when ∅ covers nothing")
        })?;
    }
    Ok(None)
}

fn excluded_middle_operators(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    let trivial = GrothendieckTopology::trivial(cat);
    let representables: Vec<Presheaf> = cat.objects().map(|c| Presheaf::yoneda(cat, c)).collect();
    if representables.iter().any(|p| p.total_elements() > DEFAULT_ELEMENT_BOUND) {
        return Err(Problem::Skip("representables too large for subobject search".into()));
    }
    let dense = GrothendieckTopology::dense(cat)?;
    let from_reps = excluded_middle_topology(&trivial, &representables, DEFAULT_ELEMENT_BOUND)?;
    ensure(from_reps == dense, || {
        format!("least topology making every A ∨ ¬A ↣ y(c) dense is {from_reps}, not {dense}")
    })?;
    let all: Vec<Presheaf> = ctx.presheaves.iter().map(|p| p.presheaf.clone()).collect();
    let from_all = excluded_middle_topology(&trivial, &all, DEFAULT_ELEMENT_BOUND)?;
    ensure(from_all == dense, || format!("corpus presheaves give {from_all}, not {dense}"))?;
    let mut dm = Vec::new();
    for y in &representables {
        for a in Subpresheaf::enumerate(y, DEFAULT_ELEMENT_BOUND)? {
            dm.extend(a.not().join(&a.not().not())?.element_sieves());
        }
    }
    let de_morgan = GrothendieckTopology::de_morgan(cat)?;
    let generated = trivial.generate_over(dm)?;
    ensure(generated == de_morgan, || {
        format!("least topology making every ¬A ∨ ¬¬A ↣ y(c) dense is {generated}, not {de_morgan}")
    })?;
    Ok(None)
}

fn sieve_closure(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for t in &ctx.topologies {
        for (c, masks) in ctx.sieves.iter().enumerate() {
            let all: Vec<Sieve> = masks.iter().map(|&m| sieve(cat, c, m)).collect();
            for s in &all {
                let cl = t.close_sieve(s)?;
                let brute: BitSet = arrows_into(cat, ObjectId(c))
                    .iter()
                    .filter(|&f| {
                        let f = ArrowId(f);
                        t.covers_mask(cat.dom(f).index())
                            .contains(&brute_pullback(cat, s.mask(), f))
                    })
                    .collect();
                ensure(cl.mask() == brute, || format!("{t}: closure of {s} is wrong"))?;
                ensure(s.is_subset(&cl), || format!("{t}: closure of {s} is not extensive"))?;
                ensure(t.close_sieve(&cl)? == cl, || format!("{t}: closure of {s} is not idempotent"))?;
                ensure(t.is_covering(s) == cl.is_maximal(), || {
                    format!("{t}: {s} covers iff its closure is maximal fails")
                })?;
                for u in &all {
                    let cu = t.close_sieve(u)?;
                    if s.is_subset(u) {
                        ensure(cl.is_subset(&cu), || format!("{t}: closure not monotone on {s} ⊆ {u}"))?;
                    }
                    ensure(t.close_sieve(&s.intersection(u)?)? == cl.intersection(&cu)?, || {
                        format!("{t}: closure does not preserve {s} ∩ {u}")
                    })?;
                }
            }
        }
    }
    Ok(None)
}

fn subobject_closure(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for t in &ctx.topologies {
        for p in &ctx.presheaves {
            for a in &p.subs {
                let cl = a.close(t)?;
                ensure(p.subs.contains(&cl), || format!("{t}, {}: closure of {a} is not a subpresheaf", p.name))?;
                for c in cat.objects() {
                    for e in 0..p.presheaf.values(c).len() {
                        let element_sieve: BitSet = cat
                            .arrows()
                            .filter(|&f| cat.cod(f) == c && a.contains(cat.dom(f), p.presheaf.restrict(f, e)))
                            .map(|f| f.index())
                            .collect();
                        ensure(
                            cl.contains(c, e) == t.covers_mask(c.index()).contains(&element_sieve),
                            || format!("{t}, {}: membership of {} in the closure of {a}", p.name, p.presheaf.values(c)[e]),
                        )?;
                    }
                }
                ensure(a.is_subset(&cl), || format!("{t}, {}: closure of {a} not extensive", p.name))?;
                ensure(cl.close(t)? == cl, || format!("{t}, {}: closure of {a} not idempotent", p.name))?;
                for b in &p.subs {
                    let cb = b.close(t)?;
                    if a.is_subset(b) {
                        ensure(cl.is_subset(&cb), || format!("{t}, {}: closure not monotone on {a} ⊆ {b}", p.name))?;
                    }
                    ensure(a.meet(b)?.close(t)? == cl.meet(&cb)?, || {
                        format!("{t}, {}: closure does not preserve {a} ∧ {b}", p.name)
                    })?;
                }
            }
            if let Some(c) = p.presheaf.represents() {
                for a in &p.subs {
                    let s = a.to_sieve()?;
                    ensure(a.close(t)?.to_sieve()? == t.close_sieve(&s)?, || {
                        format!("{t}: subobject and sieve closure disagree on {s} (object {})", cat.object_name(c))
                    })?;
                }
            }
        }
    }
    Ok(None)
}

fn closed_negation(ctx: &Ctx) -> Outcome {
    for t in &ctx.topologies {
        for p in &ctx.presheaves {
            let closed: Vec<&Subpresheaf> =
                p.subs.iter().filter(|a| a.is_closed(t).unwrap_or(false)).collect();
            let bottom = Subpresheaf::empty(&p.presheaf).close(t)?;
            for a in &closed {
                let cn = a.closed_not(t)?;
                let candidates: Vec<&&Subpresheaf> = closed
                    .iter()
                    .filter(|b| a.meet(b).is_ok_and(|m| m.is_subset(&bottom)))
                    .collect();
                ensure(candidates.iter().any(|b| ***b == cn), || {
                    format!("{t}, {}: closed negation of {a} is {cn}, not a closed subobject meeting it inside c(∅)", p.name)
                })?;
                ensure(candidates.iter().all(|b| b.is_subset(&cn)), || {
                    format!("{t}, {}: closed negation of {a} is not the largest", p.name)
                })?;
            }
            for a in p.subs.iter().filter(|a| !closed.contains(a)) {
                ensure(
                    matches!(a.closed_not(t), Err(PresheafError::NotClosed)),
                    || format!("{t}, {}: closed negation accepted non-closed {a}", p.name),
                )?;
            }
        }
    }
    Ok(None)
}

fn negation_under_dense(ctx: &Ctx) -> Outcome {
    let dense = GrothendieckTopology::dense(&ctx.cat)?;
    let mut count = 0;
    for t in ctx.topologies.iter().filter(|t| t.leq(&dense).unwrap_or(false)) {
        count += 1;
        for p in &ctx.presheaves {
            for a in &p.subs {
                let not = a.not();
                ensure(not.close(t)? == not, || format!("{t}, {}: ¬{a} = {not} is not closed", p.name))?;
                let cl = a.close(t)?;
                ensure(cl.closed_not(t)? == not, || {
                    format!("{t}, {}: closed negation of the closure of {a} differs from ¬{a}", p.name)
                })?;
            }
        }
    }
    Ok(Some(format!("{count} topologies below the dense topology")))
}

fn densifying_minimality(ctx: &Ctx) -> Outcome {
    for j in &ctx.topologies {
        let above: Vec<&GrothendieckTopology> =
            ctx.topologies.iter().filter(|k| j.leq(k).unwrap_or(false)).collect();
        for p in &ctx.presheaves {
            for a in &p.subs {
                let d = a.densifying_topology(j)?;
                ensure(a.is_dense(&d)?, || format!("{j}, {}: {a} is not dense for {d}", p.name))?;
                let expected = intersection(
                    above.iter().copied().filter(|k| a.is_dense(k).unwrap_or(false)),
                )
                .expect("the maximal topology makes everything dense");
                ensure(covers_of(&d) == expected, || {
                    format!("{j}, {}: {d} is not the least topology over J making {a} dense", p.name)
                })?;
            }
        }
    }
    Ok(None)
}

fn restriction_extension(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    for j in &ctx.topologies {
        let reduced = reduced_subcategory(j)?;
        let kept: Vec<ObjectId> = cat.objects().filter(|&c| !j.covers_by_empty(c)).collect();
        ensure(reduced.kept_objects() == kept, || format!("{j}: wrong kept objects"))?;
        let d = reduced.subcategory();
        ensure(d.is_dense_for(j)?, || format!("{j}: reduced subcategory is not dense"))?;
        for k in ctx.topologies.iter().filter(|k| j.leq(k).unwrap_or(false)) {
            let r = restrict_topology(k, d)?;
            let back = extend_topology(&r, d, j)?;
            ensure(back == *k, || format!("{j}: extend(restrict({k})) = {back}"))?;
        }
        let sub_topologies = GrothendieckTopology::enumerate(d.category(), ctx.bound)?;
        for z in sub_topologies.iter().filter(|z| reduced.topology().leq(z).unwrap_or(false)) {
            let e = extend_topology(z, d, j)?;
            ensure(j.leq(&e)?, || format!("{j}: extension of {z} is not above J"))?;
            let back = restrict_topology(&e, d)?;
            ensure(back == *z, || format!("{j}: restrict(extend({z})) = {back}"))?;
        }
    }
    Ok(None)
}

/// Sieves generated in `C` by `op(R)` for every sieve `R` of `C̃`.
fn lifted(
    j: &GrothendieckTopology,
    op: impl Fn(&Sieve) -> Sieve,
) -> Result<Vec<Sieve>, Problem> {
    let reduced = reduced_subcategory(j)?;
    let d = reduced.subcategory();
    let mut out = Vec::new();
    for c in d.category().objects() {
        for r in Sieve::enumerate(d.category(), c)? {
            out.push(d.generated_in_ambient(&op(&r))?);
        }
    }
    Ok(out)
}

fn booleanization_check(ctx: &Ctx) -> Outcome {
    for j in &ctx.topologies {
        let jb = booleanization(j)?;
        let second = booleanization_by_generation(j)?;
        ensure(jb == second, || format!("{j}: explicit J_b = {jb}, generated = {second}"))?;
        brute_axioms(ctx, &covers_of(&jb)).map_err(|e| Problem::Fail(format!("{j}: J_b = {jb}: {e}")))?;
        ensure(j.leq(&jb)?, || format!("{j}: J_b = {jb} is not above J"))?;
        ensure(booleanization(&jb)? == jb, || format!("{j}: booleanization not idempotent"))?;
        ensure(is_boolean(&jb)?, || format!("{j}: J_b = {jb} is not Boolean"))?;
        ensure(is_boolean(j)? == (jb == *j), || format!("{j}: Boolean iff J = J_b fails"))?;
        let gens = lifted(j, |r| r.union(&r.not()).expect("same codomain"))?;
        let expected = intersection(
            ctx.topologies
                .iter()
                .filter(|k| j.leq(k).unwrap_or(false) && gens.iter().all(|s| k.is_covering(s))),
        )
        .expect("the maximal topology contains every family");
        ensure(covers_of(&jb) == expected, || {
            format!("{j}: J_b = {jb} is not the least topology over J covering every R ∨ ¬R")
        })?;
    }
    Ok(None)
}

fn demorganization_check(ctx: &Ctx) -> Outcome {
    for j in &ctx.topologies {
        let jm = demorganization(j)?;
        let second = demorganization_by_generation(j)?;
        ensure(jm == second, || format!("{j}: explicit J_m = {jm}, generated = {second}"))?;
        brute_axioms(ctx, &covers_of(&jm)).map_err(|e| Problem::Fail(format!("{j}: J_m = {jm}: {e}")))?;
        ensure(j.leq(&jm)?, || format!("{j}: J_m = {jm} is not above J"))?;
        ensure(jm.leq(&booleanization(j)?)?, || format!("{j}: J_m = {jm} is not below J_b"))?;
        ensure(demorganization(&jm)? == jm, || format!("{j}: DeMorganization not idempotent"))?;
        ensure(is_de_morgan(&jm)?, || format!("{j}: J_m = {jm} is not De Morgan"))?;
        ensure(is_de_morgan(j)? == (jm == *j), || format!("{j}: De Morgan iff J = J_m fails"))?;
        let gens = lifted(j, |r| r.not().union(&r.not_not()).expect("same codomain"))?;
        let expected = intersection(
            ctx.topologies
                .iter()
                .filter(|k| j.leq(k).unwrap_or(false) && gens.iter().all(|s| k.is_covering(s))),
        )
        .expect("the maximal topology contains every family");
        ensure(covers_of(&jm) == expected, || {
            format!("{j}: J_m = {jm} is not the least topology over J covering every ¬R ∨ ¬¬R")
        })?;
    }
    Ok(None)
}

fn verdict_witnesses(ctx: &Ctx) -> Outcome {
    for j in &ctx.topologies {
        let reduced = reduced_subcategory(j)?;
        let sub = reduced.category();
        let restricted = reduced.topology();
        let mut brute_boolean = true;
        for c in sub.objects() {
            for r in Sieve::enumerate(sub, c)? {
                if restricted.is_covering(&r) != brute_stably_nonempty(sub, c, r.mask()) {
                    brute_boolean = false;
                }
            }
        }
        let boolean = is_boolean(j)?;
        ensure(boolean == brute_boolean, || format!("{j}: Boolean verdict disagrees with J|C̃ = D_C̃"))?;
        let de_morgan = is_de_morgan(j)?;
        let dm_gens_cover = sub.objects().all(|c| {
            Sieve::enumerate(sub, c).is_ok_and(|rs| {
                rs.iter().all(|r| restricted.is_covering(&r.not().union(&r.not_not()).expect("same codomain")))
            })
        });
        ensure(de_morgan == dm_gens_cover, || format!("{j}: De Morgan verdict disagrees with its generators"))?;
        ensure(!boolean || de_morgan, || format!("{j}: Boolean but not De Morgan"))?;
        match boolean_witness(j)? {
            None => ensure(boolean, || format!("{j}: not Boolean but no witness"))?,
            Some(r) => {
                ensure(!boolean, || format!("{j}: Boolean but witness {r}"))?;
                ensure(!restricted.is_covering(&r.union(&r.not())?), || {
                    format!("{j}: witness {r} has R ∨ ¬R covering")
                })?;
            }
        }
        match de_morgan_witness(j)? {
            None => ensure(de_morgan, || format!("{j}: not De Morgan but no witness"))?,
            Some(r) => {
                ensure(!de_morgan, || format!("{j}: De Morgan but witness {r}"))?;
                ensure(!restricted.is_covering(&r.not().union(&r.not_not())?), || {
                    format!("{j}: witness {r} has ¬R ∨ ¬¬R covering")
                })?;
            }
        }
    }
    Ok(None)
}

fn groupoid_and_ore(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    let brute_groupoid = cat.arrows().all(|f| {
        cat.arrows().any(|g| {
            cat.compose(g, f) == Some(cat.identity(cat.dom(f)))
                && cat.compose(f, g) == Some(cat.identity(cat.cod(f)))
        })
    });
    ensure(cat.is_groupoid() == brute_groupoid, || "groupoid test disagrees with inverse search".into())?;
    let brute_ore = cat.arrows().all(|f| {
        cat.arrows().filter(|&g| cat.cod(g) == cat.cod(f)).all(|g| {
            cat.arrows().any(|h| {
                cat.compose(f, h).is_some_and(|fh| {
                    cat.arrows().any(|k| cat.dom(k) == cat.dom(h) && cat.compose(g, k) == Some(fh))
                })
            })
        })
    });
    ensure(cat.satisfies_right_ore() == brute_ore, || "right Ore test disagrees with square search".into())?;
    let trivial = GrothendieckTopology::trivial(cat);
    let boolean = is_boolean(&trivial)?;
    let de_morgan = is_de_morgan(&trivial)?;
    ensure(boolean == brute_groupoid, || {
        format!("presheaf topos Boolean = {boolean}, groupoid = {brute_groupoid}")
    })?;
    ensure(de_morgan == brute_ore, || {
        format!("presheaf topos De Morgan = {de_morgan}, right Ore = {brute_ore}")
    })?;
    let both = |b: bool| if b { "both true" } else { "both false" };
    Ok(Some(format!(
        "Boolean/groupoid: {}; De Morgan/right Ore: {}",
        both(boolean),
        both(de_morgan)
    )))
}

/// Compatible families for `s` into `e`, found by searching the full product
/// of hom-sets.
fn brute_families(cat: &FiniteCategory, s: &Sieve, e: ObjectId) -> Result<Vec<Vec<ArrowId>>, Problem> {
    let members: Vec<ArrowId> = s.arrows().collect();
    let choices: Vec<Vec<ArrowId>> = members
        .iter()
        .map(|&f| cat.arrows().filter(|&x| cat.dom(x) == cat.dom(f) && cat.cod(x) == e).collect())
        .collect();
    let size = choices.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.len()));
    if size.is_none_or(|n| n > MAX_FAMILY_SEARCH) {
        return Err(Problem::Skip(format!("family search for {s} is too large")));
    }
    let position: BTreeMap<ArrowId, usize> = members.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; members.len()];
    if choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let family: Vec<ArrowId> = idx.iter().zip(&choices).map(|(&i, v)| v[i]).collect();
        let compatible = members.iter().enumerate().all(|(i, &f)| {
            cat.arrows().all(|g| match cat.compose(f, g) {
                Some(fg) => cat.compose(family[i], g) == Some(family[position[&fg]]),
                None => true,
            })
        });
        if compatible {
            out.push(family);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn brute_effective_epi(cat: &FiniteCategory, s: &Sieve) -> Result<bool, Problem> {
    let c = s.codomain();
    for e in cat.objects() {
        let families = brute_families(cat, s, e)?;
        let images: BTreeSet<Vec<ArrowId>> = cat
            .arrows()
            .filter(|&x| cat.dom(x) == c && cat.cod(x) == e)
            .map(|x| s.arrows().map(|f| cat.compose(x, f).expect("composable")).collect())
            .collect();
        let hom = cat.arrows().filter(|&x| cat.dom(x) == c && cat.cod(x) == e).count();
        if images.len() != hom || families.len() != hom {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subcanonicity(ctx: &Ctx) -> Outcome {
    let cat = &ctx.cat;
    let mut verdicts: BTreeMap<(usize, BitSet), bool> = BTreeMap::new();
    for s in all_sieves(ctx) {
        let brute = brute_effective_epi(cat, &s)?;
        ensure(effective_epimorphic(&s) == brute, || {
            format!("effective-epimorphic verdict for {s} disagrees with family search")
        })?;
        verdicts.insert((s.codomain().index(), s.mask()), brute);
    }
    ensure(GrothendieckTopology::trivial(cat).is_subcanonical(), || {
        "trivial topology is not subcanonical".into()
    })?;
    let mut count = 0;
    for t in &ctx.topologies {
        let brute = cat
            .objects()
            .all(|c| t.covers_mask(c.index()).iter().all(|&m| verdicts[&(c.index(), m)]));
        ensure(t.is_subcanonical() == brute, || format!("{t}: subcanonical verdict is wrong"))?;
        if let Some(w) = t.subcanonical_witness() {
            ensure(t.is_covering(&w) && !verdicts[&(w.codomain().index(), w.mask())], || {
                format!("{t}: witness {w} is not a covering non-effective sieve")
            })?;
        }
        count += usize::from(brute);
    }
    Ok(Some(format!("{count} of {} topologies subcanonical", ctx.topologies.len())))
}
