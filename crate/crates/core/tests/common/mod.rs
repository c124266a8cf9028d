//! Brute-force reference implementations used as oracles by the integration
//! tests. Everything here works on plain sets of arrow ids and the public
//! category interface, independent of the library's bitmask algebra.

#![allow(dead_code)]

use std::collections::BTreeSet;

use finsite::{ArrowId, FiniteCategory, GrothendieckTopology, ObjectId, Presheaf, Sieve, Subpresheaf};

pub type Arrows = BTreeSet<ArrowId>;
/// Covering sieves per object, indexed by object position.
pub type Cov = Vec<BTreeSet<Arrows>>;

pub fn objects(cat: &FiniteCategory) -> Vec<ObjectId> {
    cat.objects().collect()
}

pub fn into(cat: &FiniteCategory, c: ObjectId) -> Vec<ArrowId> {
    cat.arrows().filter(|&f| cat.cod(f) == c).collect()
}

pub fn is_sieve(cat: &FiniteCategory, s: &Arrows) -> bool {
    s.iter().all(|&f| {
        cat.arrows()
            .filter_map(|g| cat.compose(f, g))
            .all(|fg| s.contains(&fg))
    })
}

/// Every subset of arrows into `c` closed under precomposition.
pub fn sieves(cat: &FiniteCategory, c: ObjectId) -> Vec<Arrows> {
    let arrows = into(cat, c);
    assert!(arrows.len() < 24, "subset search too large");
    (0u32..1 << arrows.len())
        .map(|m| {
            arrows
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &f)| f)
                .collect::<Arrows>()
        })
        .filter(|s| is_sieve(cat, s))
        .collect()
}

pub fn total_sieves(cat: &FiniteCategory) -> usize {
    cat.objects().map(|c| sieves(cat, c).len()).sum()
}

pub fn maximal(cat: &FiniteCategory, c: ObjectId) -> Arrows {
    into(cat, c).into_iter().collect()
}

pub fn pullback(cat: &FiniteCategory, s: &Arrows, f: ArrowId) -> Arrows {
    cat.arrows()
        .filter(|&g| cat.compose(f, g).is_some_and(|fg| s.contains(&fg)))
        .collect()
}

pub fn meet(a: &Arrows, b: &Arrows) -> Arrows {
    a.intersection(b).copied().collect()
}

pub fn join(a: &Arrows, b: &Arrows) -> Arrows {
    a.union(b).copied().collect()
}

/// Largest sieve on `c` disjoint from `s`, by search.
pub fn not(cat: &FiniteCategory, c: ObjectId, s: &Arrows) -> Arrows {
    sieves(cat, c)
        .into_iter()
        .filter(|r| r.is_disjoint(s))
        .fold(Arrows::new(), |acc, r| join(&acc, &r))
}

pub fn stably_nonempty(cat: &FiniteCategory, c: ObjectId, s: &Arrows) -> bool {
    into(cat, c).into_iter().all(|f| !pullback(cat, s, f).is_empty())
}

pub fn sieve_of(cat: &FiniteCategory, c: ObjectId, s: &Arrows) -> Sieve {
    Sieve::new(cat, c, s.iter().copied()).expect("a sieve")
}

pub fn arrows_of(s: &Sieve) -> Arrows {
    s.arrows().collect()
}

/// Maximality, stability and transitivity, checked literally.
pub fn is_topology(cat: &FiniteCategory, cov: &Cov) -> bool {
    let obs = objects(cat);
    for &c in &obs {
        let here = &cov[c.index()];
        if !here.contains(&maximal(cat, c)) {
            return false;
        }
        for s in here {
            for f in into(cat, c) {
                if !cov[cat.dom(f).index()].contains(&pullback(cat, s, f)) {
                    return false;
                }
            }
        }
        for r in sieves(cat, c) {
            if here.contains(&r) {
                continue;
            }
            let local = here.iter().any(|s| {
                s.iter()
                    .all(|&f| cov[cat.dom(f).index()].contains(&pullback(cat, &r, f)))
            });
            if local {
                return false;
            }
        }
    }
    true
}

/// Every topology, by filtering all families of non-maximal sieves.
pub fn topologies(cat: &FiniteCategory) -> Vec<Cov> {
    let obs = objects(cat);
    let optional: Vec<(usize, Arrows)> = obs
        .iter()
        .flat_map(|&c| {
            let max = maximal(cat, c);
            sieves(cat, c)
                .into_iter()
                .filter(move |s| *s != max)
                .map(move |s| (c.index(), s))
        })
        .collect();
    assert!(optional.len() <= 20, "topology search too large");
    let mut out = Vec::new();
    for pick in 0u32..1 << optional.len() {
        let mut cov: Cov = obs.iter().map(|&c| BTreeSet::from([maximal(cat, c)])).collect();
        for (i, (c, s)) in optional.iter().enumerate() {
            if pick >> i & 1 == 1 {
                cov[*c].insert(s.clone());
            }
        }
        if is_topology(cat, &cov) {
            out.push(cov);
        }
    }
    out
}

pub fn cov_of(t: &GrothendieckTopology) -> Cov {
    t.category()
        .objects()
        .map(|c| t.covers(c).iter().map(arrows_of).collect())
        .collect()
}

pub fn topology_of(cat: &FiniteCategory, cov: &Cov) -> GrothendieckTopology {
    let family = objects(cat)
        .into_iter()
        .flat_map(|c| cov[c.index()].iter().map(move |s| sieve_of(cat, c, s)))
        .collect::<Vec<_>>();
    GrothendieckTopology::new(cat, family).expect("a topology")
}

pub fn leq(a: &Cov, b: &Cov) -> bool {
    a.iter().zip(b).all(|(x, y)| x.is_subset(y))
}

/// Per-object intersection of all families in `covs`.
pub fn intersection<'a>(mut covs: impl Iterator<Item = &'a Cov>) -> Option<Cov> {
    let first = covs.next()?.clone();
    Some(covs.fold(first, |acc, c| {
        acc.iter()
            .zip(c)
            .map(|(x, y)| x.intersection(y).cloned().collect())
            .collect()
    }))
}

/// `{f | f*(s) covers}`.
pub fn close(cat: &FiniteCategory, cov: &Cov, c: ObjectId, s: &Arrows) -> Arrows {
    into(cat, c)
        .into_iter()
        .filter(|&f| cov[cat.dom(f).index()].contains(&pullback(cat, s, f)))
        .collect()
}

pub fn is_groupoid(cat: &FiniteCategory) -> bool {
    cat.arrows().all(|f| {
        cat.arrows().any(|g| {
            cat.compose(g, f) == Some(cat.identity(cat.dom(f)))
                && cat.compose(f, g) == Some(cat.identity(cat.cod(f)))
        })
    })
}

/// Every cospan `a → c ← b` completes to a commuting square.
pub fn right_ore(cat: &FiniteCategory) -> bool {
    cat.arrows().all(|f| {
        cat.arrows().filter(|&g| cat.cod(g) == cat.cod(f)).all(|g| {
            cat.arrows().any(|h| {
                cat.compose(f, h).is_some_and(|fh| {
                    cat.arrows()
                        .any(|k| cat.dom(k) == cat.dom(h) && cat.compose(g, k) == Some(fh))
                })
            })
        })
    })
}

/// Subpresheaves as per-object element sets.
pub type Sub = Vec<BTreeSet<usize>>;

pub fn subpresheaves(p: &Presheaf) -> Vec<Sub> {
    let cat = p.category();
    let obs = objects(cat);
    let sizes: Vec<usize> = obs.iter().map(|&c| p.values(c).len()).collect();
    let total: usize = sizes.iter().sum();
    assert!(total <= 20, "subobject search too large");
    let mut out = Vec::new();
    for m in 0u32..1 << total {
        let mut sub: Sub = Vec::new();
        let mut k = 0;
        for &n in &sizes {
            sub.push((0..n).filter(|i| m >> (k + i) & 1 == 1).collect());
            k += n;
        }
        let closed = cat.arrows().all(|f| {
            sub[cat.cod(f).index()]
                .iter()
                .all(|&e| sub[cat.dom(f).index()].contains(&p.restrict(f, e)))
        });
        if closed {
            out.push(sub);
        }
    }
    out
}

pub fn sub_of(p: &Presheaf, a: &Sub) -> Subpresheaf {
    let chosen = a.iter().map(|s| s.iter().copied().collect()).collect();
    Subpresheaf::new(p, chosen).expect("a subpresheaf")
}

pub fn sub_from(a: &Subpresheaf) -> Sub {
    a.parent()
        .category()
        .objects()
        .map(|c| a.chosen(c).collect())
        .collect()
}

pub fn sub_meet(a: &Sub, b: &Sub) -> Sub {
    a.iter().zip(b).map(|(x, y)| x.intersection(y).copied().collect()).collect()
}

pub fn sub_leq(a: &Sub, b: &Sub) -> bool {
    a.iter().zip(b).all(|(x, y)| x.is_subset(y))
}

pub fn sub_is_empty(a: &Sub) -> bool {
    a.iter().all(BTreeSet::is_empty)
}

/// Largest subpresheaf disjoint from `a`, by search.
pub fn sub_not(p: &Presheaf, a: &Sub) -> Sub {
    let n = a.len();
    subpresheaves(p)
        .into_iter()
        .filter(|b| sub_is_empty(&sub_meet(a, b)))
        .fold(vec![BTreeSet::new(); n], |acc, b| {
            acc.iter().zip(&b).map(|(x, y)| x.union(y).copied().collect()).collect()
        })
}

/// `e ∈ c(A)(c)` iff `{f | E(f)(e) ∈ A(dom f)}` covers.
pub fn sub_close(p: &Presheaf, cov: &Cov, a: &Sub) -> Sub {
    let cat = p.category();
    objects(cat)
        .into_iter()
        .map(|c| {
            (0..p.values(c).len())
                .filter(|&e| {
                    let s: Arrows = into(cat, c)
                        .into_iter()
                        .filter(|&f| a[cat.dom(f).index()].contains(&p.restrict(f, e)))
                        .collect();
                    cov[c.index()].contains(&s)
                })
                .collect()
        })
        .collect()
}

/// Effective-epimorphic by searching all tuples of arrows out of the
/// domains of `s` into each object.
pub fn effective_epi(cat: &FiniteCategory, c: ObjectId, s: &Arrows) -> bool {
    let members: Vec<ArrowId> = s.iter().copied().collect();
    for e in cat.objects() {
        let choices: Vec<Vec<ArrowId>> = members.iter().map(|&f| cat.hom(cat.dom(f), e).collect()).collect();
        let mut families = 0usize;
        let mut idx = vec![0usize; members.len()];
        let mut done = choices.iter().any(Vec::is_empty);
        while !done {
            let x: Vec<ArrowId> = idx.iter().zip(&choices).map(|(&i, v)| v[i]).collect();
            let compatible = members.iter().enumerate().all(|(i, &f)| {
                cat.arrows().all(|g| match cat.compose(f, g) {
                    Some(fg) => {
                        let j = members.iter().position(|&m| m == fg).expect("s is a sieve");
                        cat.compose(x[i], g) == Some(x[j])
                    }
                    None => true,
                })
            });
            families += usize::from(compatible);
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            done = k == idx.len();
        }
        let hom: Vec<ArrowId> = cat.hom(c, e).collect();
        let images: BTreeSet<Vec<ArrowId>> = hom
            .iter()
            .map(|&x| members.iter().map(|&f| cat.compose(x, f).unwrap()).collect())
            .collect();
        if families != hom.len() || images.len() != hom.len() {
            return false;
        }
    }
    true
}
