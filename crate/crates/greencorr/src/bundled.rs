//! Groups shipped with the crate and the standard correspondence setups built from them.

use crate::error::{Error, Result};
use crate::green::{build_setup, CorrespondenceSetup};
use crate::grp::{parse_group, Group, Perm, Subgroup, SubgroupCollection};
use std::sync::Arc;

pub const GROUP_NAMES: &[&str] = &["c2", "c4", "s3", "a4", "d8", "s4", "a5"];

pub fn group_text(name: &str) -> Option<&'static str> {
    Some(match name.trim_end_matches(".grp") {
        "c2" => include_str!("../data/c2.grp"),
        "c4" => include_str!("../data/c4.grp"),
        "s3" => include_str!("../data/s3.grp"),
        "a4" => include_str!("../data/a4.grp"),
        "d8" => include_str!("../data/d8.grp"),
        "s4" => include_str!("../data/s4.grp"),
        "a5" => include_str!("../data/a5.grp"),
        _ => return None,
    })
}

pub fn group(name: &str) -> Result<Arc<Group>> {
    let text = group_text(name).ok_or_else(|| Error::Precondition(format!("no bundled group '{name}'")))?;
    Ok(parse_group(text)?.0)
}

/// Subgroup generated by permutations in cycle notation.
pub fn subgroup(g: &Arc<Group>, gens: &[&str]) -> Result<Subgroup> {
    let perms = gens.iter().map(|s| Perm::parse_cycles(g.degree(), s)).collect::<Result<Vec<_>>>()?;
    g.subgroup_from_perms(&perms)
}

/// `(group, H generators, 𝔓 generators, p)` for the three standard setups.
const SETUPS: &[(&str, &str, &[&str], &[&str], u32)] = &[
    ("s3-c2", "s3", &["(0 1)"], &["(0 1)"], 2),
    ("s4-d8", "s4", &["(0 1 2 3)", "(0 2)"], &["(0 1 2 3)", "(0 2)"], 2),
    ("a5-a4", "a5", &["(0 1 2)", "(1 2 3)"], &["(0 1)(2 3)", "(0 2)(1 3)"], 2),
];

pub const SETUP_NAMES: &[&str] = &["s3-c2", "s4-d8", "a5-a4"];

pub fn setup(name: &str) -> Result<CorrespondenceSetup> {
    let &(_, g, h, pp, p) = SETUPS
        .iter()
        .find(|s| s.0 == name)
        .ok_or_else(|| Error::Precondition(format!("no standard setup '{name}'")))?;
    let g = group(g)?;
    let h = subgroup(&g, h)?;
    let frak_p = SubgroupCollection::new(vec![subgroup(&g, pp)?], true);
    build_setup(&h, &frak_p, p)
}

/// The A5/A4 setup with `𝔜` emptied; condition (6) must fail on it.
pub fn broken_setup() -> Result<CorrespondenceSetup> {
    setup("a5-a4")?.with_y(SubgroupCollection::empty())
}
