//! JSON file formats.
//!
//! Maps are `BTreeMap`s and arrow or element lists are sorted wherever the
//! writer controls the order, so serialized output is byte-deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// `{"cod": obj, "arrows": [sorted arrow names]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveFile {
    pub cod: String,
    pub arrows: Vec<String>,
}

/// `{"category": name, "covers": {obj: [[arrow names], ..]}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyFile {
    pub category: String,
    pub covers: BTreeMap<String, Vec<Vec<String>>>,
}

/// `{"category": name, "values": {obj: [elements]}, "restriction": {arrow: {elem: elem}}}`
///
/// Restriction maps of identity arrows may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafFile {
    pub category: String,
    pub values: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub restriction: BTreeMap<String, BTreeMap<String, String>>,
}

/// `{"presheaf": name, "chosen": {obj: [elements]}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubpresheafFile {
    pub presheaf: String,
    pub chosen: BTreeMap<String, Vec<String>>,
}

/// Witness sieves for failed verdicts, in the reduced site.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boolean: Option<SieveFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub de_morgan: Option<SieveFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subcanonical: Option<SieveFile>,
}

/// Full analysis of a site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub category: String,
    pub topology: TopologyFile,
    pub kept_objects: Vec<String>,
    pub groupoid: bool,
    pub right_ore: bool,
    pub boolean: bool,
    pub de_morgan: bool,
    pub subcanonical: bool,
    pub booleanization: TopologyFile,
    pub demorganization: TopologyFile,
    pub witness: Witness,
}
