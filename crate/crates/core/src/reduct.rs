//! Reduced sites, restriction and extension of topologies along dense full
//! subcategories, Booleanization and DeMorganization, and the Boolean and
//! De Morgan verdicts for `Sh(C, J)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::fincat::{ArrowDecl, CategoryDescription, CompositeEntry, FiniteCategory, ObjectId};
use crate::format::{Report, SieveFile, Witness};
use crate::sieve::{generate_mask, not_mask, not_not_mask, pullback_mask, Sieve, SieveError};
use crate::topology::{check_axioms, sieve_space, Covers, GrothendieckTopology, TopologyError};
use crate::topology::AxiomViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductError {
    #[error("arguments live on different categories")]
    CategoryMismatch,
    #[error("object `{0}` is not in the subcategory")]
    ObjectNotInSubcategory(String),
    #[error("subcategory is not dense: the sieve of arrows from it into `{0}` does not cover")]
    NotDense(String),
    #[error("induced covers are not a topology: {0}")]
    NotATopology(AxiomViolation),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Sieve(#[from] SieveError),
}

/// A full subcategory together with its embedding into the ambient category.
#[derive(Clone, Debug)]
pub struct FullSubcategory {
    ambient: FiniteCategory,
    sub: FiniteCategory,
    /// sub object index -> ambient object
    objects: Vec<usize>,
    /// sub arrow index -> ambient arrow
    arrows: Vec<usize>,
    /// ambient arrow -> sub arrow
    arrow_back: Vec<Option<usize>>,
    object_back: Vec<Option<usize>>,
}

impl FullSubcategory {
    /// Full subcategory on `keep`; objects and arrows keep their names and
    /// their relative order.
    pub fn new(ambient: &FiniteCategory, keep: &[ObjectId], label: &str) -> Result<Self, ReductError> {
        let mut mask = vec![false; ambient.num_objects()];
        for &c in keep {
            if c.index() >= ambient.num_objects() {
                return Err(ReductError::ObjectNotInSubcategory(format!("#{}", c.index())));
            }
            mask[c.index()] = true;
        }
        let objects: Vec<usize> = (0..ambient.num_objects()).filter(|&c| mask[c]).collect();
        let arrows: Vec<usize> = ambient
            .arrows()
            .filter(|&f| mask[ambient.dom(f).index()] && mask[ambient.cod(f).index()])
            .map(|f| f.index())
            .collect();
        let mut arrow_back = vec![None; ambient.num_arrows()];
        for (i, &f) in arrows.iter().enumerate() {
            arrow_back[f] = Some(i);
        }
        let mut object_back = vec![None; ambient.num_objects()];
        for (i, &c) in objects.iter().enumerate() {
            object_back[c] = Some(i);
        }
        let amb = ambient.description();
        let arrow_name = |f: usize| amb.arrows[f].name.clone();
        let desc = CategoryDescription {
            objects: objects.iter().map(|&c| amb.objects[c].clone()).collect(),
            arrows: arrows
                .iter()
                .map(|&f| ArrowDecl {
                    name: arrow_name(f),
                    dom: amb.arrows[f].dom.clone(),
                    cod: amb.arrows[f].cod.clone(),
                })
                .collect(),
            identities: objects
                .iter()
                .map(|&c| (amb.objects[c].clone(), amb.identities[&amb.objects[c]].clone()))
                .collect(),
            compose: amb
                .compose
                .iter()
                .filter(|e| {
                    [&e.first, &e.then].iter().all(|n| {
                        ambient
                            .arrow(n)
                            .is_some_and(|f| arrow_back[f.index()].is_some())
                    })
                })
                .cloned()
                .collect::<Vec<CompositeEntry>>(),
        };
        let sub = FiniteCategory::new(label, &desc).expect("full subcategories are categories");
        Ok(FullSubcategory {
            ambient: ambient.clone(),
            sub,
            objects,
            arrows,
            arrow_back,
            object_back,
        })
    }

    pub fn ambient(&self) -> &FiniteCategory {
        &self.ambient
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.sub
    }

    /// Ambient objects in the subcategory.
    pub fn objects(&self) -> Vec<ObjectId> {
        self.objects.iter().map(|&c| ObjectId(c)).collect()
    }

    pub fn sub_object(&self, c: ObjectId) -> Result<ObjectId, ReductError> {
        self.object_back
            .get(c.index())
            .copied()
            .flatten()
            .map(ObjectId)
            .ok_or_else(|| {
                ReductError::ObjectNotInSubcategory(if c.index() < self.ambient.num_objects() {
                    self.ambient.object_name(c).to_string()
                } else {
                    format!("#{}", c.index())
                })
            })
    }

    fn to_ambient(&self, set: BitSet) -> BitSet {
        set.iter().map(|f| self.arrows[f]).collect()
    }

    fn to_sub(&self, set: BitSet) -> BitSet {
        set.iter().filter_map(|f| self.arrow_back[f]).collect()
    }

    /// Sieve generated in the ambient category by a sieve of the subcategory.
    pub fn generated_in_ambient(&self, r: &Sieve) -> Result<Sieve, ReductError> {
        if !r.category().same_as(&self.sub) {
            return Err(ReductError::CategoryMismatch);
        }
        let c = ObjectId(self.objects[r.codomain().index()]);
        Ok(Sieve::from_mask(
            &self.ambient,
            c,
            generate_mask(&self.ambient, self.to_ambient(r.mask())),
        ))
    }

    /// Whether the arrows from subcategory objects into each `c` form a
    /// `J`-covering sieve.
    pub fn is_dense_for(&self, j: &GrothendieckTopology) -> Result<bool, ReductError> {
        Ok(self.density_failure(j)?.is_none())
    }

    fn density_failure(&self, j: &GrothendieckTopology) -> Result<Option<ObjectId>, ReductError> {
        if !j.category().same_as(&self.ambient) {
            return Err(ReductError::CategoryMismatch);
        }
        Ok(self.ambient.objects().find(|&c| {
            let from_sub: BitSet = self
                .objects
                .iter()
                .map(|&d| self.ambient.hom_set(d, c.index()))
                .fold(BitSet::EMPTY, BitSet::union);
            !j.covers_mask(c.index())
                .contains(&generate_mask(&self.ambient, from_sub))
        }))
    }
}

/// `R ∈ J|_D(c)` iff the sieve generated by `R` in the ambient category covers.
pub fn restrict_topology(
    j: &GrothendieckTopology,
    d: &FullSubcategory,
) -> Result<GrothendieckTopology, ReductError> {
    if !j.category().same_as(&d.ambient) {
        return Err(ReductError::CategoryMismatch);
    }
    let sub = &d.sub;
    let mut covers: Covers = vec![BTreeSet::new(); sub.num_objects()];
    for (c, set) in covers.iter_mut().enumerate() {
        let amb_c = d.objects[c];
        for &r in sieve_space(sub, c)?.iter() {
            let generated = generate_mask(&d.ambient, d.to_ambient(r));
            if j.covers_mask(amb_c).contains(&generated) {
                set.insert(r);
            }
        }
    }
    check_axioms(sub, &covers)?.map_err(ReductError::NotATopology)?;
    Ok(GrothendieckTopology::from_covers_unchecked(sub, covers))
}

/// `S ∈ Z̄(c)` iff for every `f: d → c` with `d` in the subcategory,
/// `f*(S) ∩ arr(D)` is `Z`-covering on `d`. Requires `D` to be `J`-dense.
pub fn extend_topology(
    z: &GrothendieckTopology,
    d: &FullSubcategory,
    j: &GrothendieckTopology,
) -> Result<GrothendieckTopology, ReductError> {
    if !z.category().same_as(&d.sub) {
        return Err(ReductError::CategoryMismatch);
    }
    if let Some(c) = d.density_failure(j)? {
        return Err(ReductError::NotDense(d.ambient.object_name(c).to_string()));
    }
    let amb = &d.ambient;
    let mut covers: Covers = vec![BTreeSet::new(); amb.num_objects()];
    for (c, set) in covers.iter_mut().enumerate() {
        let from_sub: Vec<(usize, usize)> = d
            .objects
            .iter()
            .enumerate()
            .flat_map(|(i, &dd)| amb.hom_set(dd, c).iter().map(move |f| (i, f)))
            .collect();
        for &s in sieve_space(amb, c)?.iter() {
            let ok = from_sub.iter().all(|&(sub_d, f)| {
                let restricted = d.to_sub(pullback_mask(amb, s, f));
                z.covers_mask(sub_d).contains(&restricted)
            });
            if ok {
                set.insert(s);
            }
        }
    }
    check_axioms(amb, &covers)?.map_err(ReductError::NotATopology)?;
    Ok(GrothendieckTopology::from_covers_unchecked(amb, covers))
}

/// The reduced site `C̃`: objects not covered by the empty sieve, with the
/// restricted topology.
#[derive(Clone, Debug)]
pub struct ReducedSite {
    site: FullSubcategory,
    ambient_topology: GrothendieckTopology,
    topology: GrothendieckTopology,
}

impl ReducedSite {
    pub fn subcategory(&self) -> &FullSubcategory {
        &self.site
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.site.sub
    }

    pub fn kept_objects(&self) -> Vec<ObjectId> {
        self.site.objects()
    }

    pub fn kept_names(&self) -> Vec<String> {
        self.site
            .objects()
            .into_iter()
            .map(|c| self.site.ambient.object_name(c).to_string())
            .collect()
    }

    /// `J|_C̃`.
    pub fn topology(&self) -> &GrothendieckTopology {
        &self.topology
    }

    pub fn ambient_topology(&self) -> &GrothendieckTopology {
        &self.ambient_topology
    }

    pub fn is_degenerate(&self) -> bool {
        self.site.objects.is_empty()
    }

    /// Topology on the ambient category whose restriction to `C̃` dominates
    /// via `S ⊇ T̄` for some `T ∈ z(c)`, with every sieve covering outside `C̃`.
    fn explicit_extension(&self, z: &GrothendieckTopology) -> Result<GrothendieckTopology, ReductError> {
        let amb = &self.site.ambient;
        let mut covers: Covers = vec![BTreeSet::new(); amb.num_objects()];
        for (c, set) in covers.iter_mut().enumerate() {
            let space = sieve_space(amb, c)?;
            match self.site.object_back[c] {
                None => set.extend(space.iter().copied()),
                Some(sub_c) => {
                    let generated: Vec<BitSet> = z
                        .covers_mask(sub_c)
                        .iter()
                        .map(|&t| generate_mask(amb, self.site.to_ambient(t)))
                        .collect();
                    set.extend(
                        space
                            .iter()
                            .copied()
                            .filter(|&s| generated.iter().any(|t| t.is_subset(s))),
                    );
                }
            }
        }
        Ok(GrothendieckTopology::from_covers_unchecked(amb, covers))
    }

    /// Generators `R̄ ∨ ¬R̄`-style, lifted from `C̃`: `op` builds the sieve on
    /// each kept object from each sieve `R` of `C̃`.
    fn lifted_generators(
        &self,
        op: impl Fn(&FiniteCategory, usize, BitSet) -> BitSet,
    ) -> Result<Vec<Sieve>, ReductError> {
        let sub = &self.site.sub;
        let mut out = Vec::new();
        for c in 0..sub.num_objects() {
            for &r in sieve_space(sub, c)?.iter() {
                let t = Sieve::from_mask(sub, ObjectId(c), op(sub, c, r));
                out.push(self.site.generated_in_ambient(&t)?);
            }
        }
        Ok(out)
    }
}

pub fn reduced_subcategory(j: &GrothendieckTopology) -> Result<ReducedSite, ReductError> {
    let cat = j.category();
    let keep: Vec<ObjectId> = cat.objects().filter(|&c| !j.covers_by_empty(c)).collect();
    let site = FullSubcategory::new(cat, &keep, &format!("{}~", cat.label()))?;
    let topology = restrict_topology(j, &site)?;
    Ok(ReducedSite {
        site,
        ambient_topology: j.clone(),
        topology,
    })
}

/// `J_b`: every sieve covers off `C̃`; on `C̃`, `S` covers iff `S ⊇ T̄` for
/// some `T ∈ D_C̃(c)`.
pub fn booleanization(j: &GrothendieckTopology) -> Result<GrothendieckTopology, ReductError> {
    let reduced = reduced_subcategory(j)?;
    let dense = GrothendieckTopology::dense(reduced.category())?;
    reduced.explicit_extension(&dense)
}

/// `J_m`: as [`booleanization`] with `M_C̃ ∨ J|_C̃` in place of `D_C̃`.
pub fn demorganization(j: &GrothendieckTopology) -> Result<GrothendieckTopology, ReductError> {
    let reduced = reduced_subcategory(j)?;
    let m = GrothendieckTopology::de_morgan(reduced.category())?.join(reduced.topology())?;
    reduced.explicit_extension(&m)
}

/// Least topology over `J` in which `R ∨ ¬R` covers for every sieve `R` of
/// `C̃`, with `¬` computed in `C̃` and the result generated in `C`.
pub fn booleanization_by_generation(
    j: &GrothendieckTopology,
) -> Result<GrothendieckTopology, ReductError> {
    let reduced = reduced_subcategory(j)?;
    let gens = reduced.lifted_generators(|cat, c, r| r.union(not_mask(cat, c, r)))?;
    Ok(j.generate_over(gens)?)
}

/// Least topology over `J` in which `¬R ∨ ¬¬R` covers for every sieve `R` of `C̃`.
pub fn demorganization_by_generation(
    j: &GrothendieckTopology,
) -> Result<GrothendieckTopology, ReductError> {
    let reduced = reduced_subcategory(j)?;
    let gens =
        reduced.lifted_generators(|cat, c, r| not_mask(cat, c, r).union(not_not_mask(cat, c, r)))?;
    Ok(j.generate_over(gens)?)
}

/// `Sh(C, J)` is Boolean iff `J|_C̃ = D_C̃`.
pub fn is_boolean(j: &GrothendieckTopology) -> Result<bool, ReductError> {
    let reduced = reduced_subcategory(j)?;
    Ok(*reduced.topology() == GrothendieckTopology::dense(reduced.category())?)
}

/// `Sh(C, J)` is De Morgan iff `M_C̃ ≤ J|_C̃`.
pub fn is_de_morgan(j: &GrothendieckTopology) -> Result<bool, ReductError> {
    let reduced = reduced_subcategory(j)?;
    Ok(GrothendieckTopology::de_morgan(reduced.category())?.leq(reduced.topology())?)
}

fn first_uncovered(
    reduced: &ReducedSite,
    op: impl Fn(&FiniteCategory, usize, BitSet) -> BitSet,
) -> Result<Option<Sieve>, ReductError> {
    let sub = reduced.category();
    for c in 0..sub.num_objects() {
        for &r in sieve_space(sub, c)?.iter() {
            if !reduced.topology().covers_mask(c).contains(&op(sub, c, r)) {
                return Ok(Some(Sieve::from_mask(sub, ObjectId(c), r)));
            }
        }
    }
    Ok(None)
}

/// A sieve `R` of `C̃` with `R ∨ ¬R` not `J|_C̃`-covering.
pub fn boolean_witness(j: &GrothendieckTopology) -> Result<Option<Sieve>, ReductError> {
    first_uncovered(&reduced_subcategory(j)?, |cat, c, r| {
        r.union(not_mask(cat, c, r))
    })
}

/// A sieve `R` of `C̃` with `¬R ∨ ¬¬R` not `J|_C̃`-covering.
pub fn de_morgan_witness(j: &GrothendieckTopology) -> Result<Option<Sieve>, ReductError> {
    first_uncovered(&reduced_subcategory(j)?, |cat, c, r| {
        not_mask(cat, c, r).union(not_not_mask(cat, c, r))
    })
}

fn sieve_file(s: &Sieve) -> SieveFile {
    SieveFile {
        cod: s.category().object_name(s.codomain()).to_string(),
        arrows: s.arrow_names(),
    }
}

/// All verdicts and constructions for `(C, J)`.
pub fn analyze(j: &GrothendieckTopology) -> Result<Report, ReductError> {
    let cat = j.category();
    let reduced = reduced_subcategory(j)?;
    let boolean = is_boolean(j)?;
    let de_morgan = is_de_morgan(j)?;
    let sub_witness = j.subcanonical_witness();
    Ok(Report {
        category: cat.label().to_string(),
        topology: j.to_file(),
        kept_objects: reduced.kept_names(),
        groupoid: cat.is_groupoid(),
        right_ore: cat.satisfies_right_ore(),
        boolean,
        de_morgan,
        subcanonical: sub_witness.is_none(),
        booleanization: booleanization(j)?.to_file(),
        demorganization: demorganization(j)?.to_file(),
        witness: Witness {
            boolean: boolean_witness(j)?.as_ref().map(sieve_file),
            de_morgan: de_morgan_witness(j)?.as_ref().map(sieve_file),
            subcanonical: sub_witness.as_ref().map(sieve_file),
        },
    })
}
