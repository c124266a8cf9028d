//! The bundled fixture corpus.
//!
//! Category, presheaf and topology files live under `fixtures/` in this crate
//! and are embedded at compile time.

use crate::fincat::FiniteCategory;
use crate::presheaf::Presheaf;
use crate::topology::GrothendieckTopology;

pub const WALK_JSON: &str = include_str!("../fixtures/categories/walk.json");
pub const SPAN_JSON: &str = include_str!("../fixtures/categories/span.json");
pub const COSPAN_JSON: &str = include_str!("../fixtures/categories/cospan.json");
pub const Z2_JSON: &str = include_str!("../fixtures/categories/z2.json");
pub const M2_JSON: &str = include_str!("../fixtures/categories/m2.json");
pub const TERM_JSON: &str = include_str!("../fixtures/categories/term.json");
pub const DISC2_JSON: &str = include_str!("../fixtures/categories/disc2.json");
pub const PAIR_JSON: &str = include_str!("../fixtures/categories/pair.json");

/// Fixture category names with their file contents, in corpus order.
pub const CATEGORIES: &[(&str, &str)] = &[
    ("WALK", WALK_JSON),
    ("SPAN", SPAN_JSON),
    ("COSPAN", COSPAN_JSON),
    ("Z2", Z2_JSON),
    ("M2", M2_JSON),
    ("TERM", TERM_JSON),
    ("DISC2", DISC2_JSON),
    ("PAIR", PAIR_JSON),
];

/// Fixture presheaf files: (name, file contents).
pub const PRESHEAVES: &[(&str, &str)] = &[
    ("walk_fork", include_str!("../fixtures/presheaves/walk_fork.json")),
    ("walk_merge", include_str!("../fixtures/presheaves/walk_merge.json")),
    ("span_two", include_str!("../fixtures/presheaves/span_two.json")),
    ("cospan_glue", include_str!("../fixtures/presheaves/cospan_glue.json")),
    ("z2_swap", include_str!("../fixtures/presheaves/z2_swap.json")),
    ("m2_collapse", include_str!("../fixtures/presheaves/m2_collapse.json")),
    ("term_two", include_str!("../fixtures/presheaves/term_two.json")),
    ("disc2_one", include_str!("../fixtures/presheaves/disc2_one.json")),
    ("pair_two", include_str!("../fixtures/presheaves/pair_two.json")),
];

/// Fixture topology files: (name, file contents). `walk_bad_transitivity` is
/// deliberately not saturated.
pub const TOPOLOGIES: &[(&str, &str)] = &[
    ("walk_jcov", include_str!("../fixtures/topologies/walk_jcov.json")),
    ("walk_dense", include_str!("../fixtures/topologies/walk_dense.json")),
    (
        "walk_bad_transitivity",
        include_str!("../fixtures/topologies/walk_bad_transitivity.json"),
    ),
];

/// Look up a fixture category by name, case-insensitively.
pub fn category(name: &str) -> Option<FiniteCategory> {
    CATEGORIES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(n, text)| FiniteCategory::from_json(n, text).expect("fixture categories are valid"))
}

pub fn all() -> Vec<FiniteCategory> {
    CATEGORIES
        .iter()
        .map(|(n, _)| category(n).expect("listed"))
        .collect()
}

pub fn walk() -> FiniteCategory {
    category("WALK").unwrap()
}

pub fn span() -> FiniteCategory {
    category("SPAN").unwrap()
}

pub fn cospan() -> FiniteCategory {
    category("COSPAN").unwrap()
}

pub fn z2() -> FiniteCategory {
    category("Z2").unwrap()
}

pub fn m2() -> FiniteCategory {
    category("M2").unwrap()
}

pub fn term() -> FiniteCategory {
    category("TERM").unwrap()
}

pub fn disc2() -> FiniteCategory {
    category("DISC2").unwrap()
}

pub fn pair() -> FiniteCategory {
    category("PAIR").unwrap()
}

/// Fixture presheaf files written over `cat`.
pub fn presheaf_files_on(cat: &FiniteCategory) -> Vec<Presheaf> {
    PRESHEAVES
        .iter()
        .filter_map(|(_, text)| {
            let file: crate::format::PresheafFile = serde_json::from_str(text).ok()?;
            file.category
                .eq_ignore_ascii_case(cat.label())
                .then(|| Presheaf::from_file(cat, &file).expect("fixture presheaves are valid"))
        })
        .collect()
}

/// The presheaf corpus over `cat`: every representable, the terminal
/// presheaf, and the fixture files written over `cat`.
pub fn presheaves_on(cat: &FiniteCategory) -> Vec<Presheaf> {
    let mut out: Vec<Presheaf> = cat.objects().map(|c| Presheaf::yoneda(cat, c)).collect();
    out.push(Presheaf::terminal(cat));
    out.extend(presheaf_files_on(cat));
    out
}

/// A fixture topology by file name (e.g. `walk_jcov`), saturated if needed.
pub fn topology(name: &str) -> Option<GrothendieckTopology> {
    let (_, text) = TOPOLOGIES.iter().find(|(n, _)| *n == name)?;
    let file: crate::format::TopologyFile = serde_json::from_str(text).ok()?;
    let cat = category(&file.category)?;
    GrothendieckTopology::from_file(&cat, &file, true).ok()
}
