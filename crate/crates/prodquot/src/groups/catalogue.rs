//! The group catalogue: named groups backing the classification sweep.
//!
//! Each group lives in a small text file. Permutation groups:
//!
//! ```text
//! name A5
//! degree 5
//! gen (1 2 3 4 5)
//! gen (1 2 3)
//! order 60
//! ```
//!
//! Semidirect products `(Z_m)^dim x| A` use a separate stanza with the
//! acting matrices row-major and the actor relations as words:
//!
//! ```text
//! name Z5^2:Z3
//! semidirect
//! modulus 5
//! dim 2
//! actor y 1 1 2 3
//! rel y^3
//! order 75
//! ```
//!
//! Optional fields: `alias` (alternative names), `gen-names`, `sweep false`
//! (exclude from the pipeline sweep, e.g. a second permutation
//! representation of a group already present), `actor-perm NAME DEG CYCLES`
//! (abstract carrier for a non-faithful action), and `aut-file` pointing at
//! a file of precomputed automorphisms (one per line, generator images in
//! cycle notation separated by `;`).

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use super::aut::GroupMap;
use super::perm::Permutation;
use super::semidirect::{semidirect_product, Actor};
use super::{FiniteGroup, GroupError};

pub struct CatalogueEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub group: Arc<FiniteGroup>,
    pub sweep: bool,
    pub preloaded_auts: Option<Vec<GroupMap>>,
}

pub struct Catalogue {
    entries: Vec<Arc<CatalogueEntry>>,
    by_name: HashMap<String, usize>,
}

impl Catalogue {
    pub fn empty() -> Catalogue {
        Catalogue {
            entries: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    /// The catalogue shipped with the crate.
    pub fn builtin() -> Result<Catalogue, GroupError> {
        let mut cat = Catalogue::empty();
        for (name, text) in BUILTIN_FILES {
            cat.add_text(text)
                .map_err(|e| GroupError::CatalogueParse(format!("{name}: {e}")))?;
        }
        Ok(cat)
    }

    /// Load every `*.group` file under the directory.
    pub fn load_dir(dir: &Path) -> Result<Catalogue, GroupError> {
        let mut cat = Catalogue::empty();
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().map_or(false, |x| x == "group"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path)?;
            let entry = parse_group_file(&text, Some(dir))
                .map_err(|e| GroupError::CatalogueParse(format!("{}: {e}", path.display())))?;
            cat.push(entry);
        }
        Ok(cat)
    }

    pub fn add_text(&mut self, text: &str) -> Result<(), GroupError> {
        let entry = parse_group_file(text, None)?;
        self.push(entry);
        Ok(())
    }

    fn push(&mut self, entry: CatalogueEntry) {
        let idx = self.entries.len();
        self.by_name.insert(entry.name.clone(), idx);
        for alias in &entry.aliases {
            self.by_name.insert(alias.clone(), idx);
        }
        self.entries.push(Arc::new(entry));
    }

    pub fn lookup(&self, name: &str) -> Result<&Arc<CatalogueEntry>, GroupError> {
        self.by_name
            .get(name)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| GroupError::UnknownGroup(name.to_string()))
    }

    pub fn group(&self, name: &str) -> Result<Arc<FiniteGroup>, GroupError> {
        Ok(self.lookup(name)?.group.clone())
    }

    pub fn entries(&self) -> &[Arc<CatalogueEntry>] {
        &self.entries
    }

    /// Sweep-enabled entries of the given order, in file order.
    pub fn by_order(&self, order: u64) -> Vec<Arc<CatalogueEntry>> {
        self.entries
            .iter()
            .filter(|e| e.sweep && e.group.order() == order)
            .cloned()
            .collect()
    }

    pub fn max_order(&self) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.sweep)
            .map(|e| e.group.order())
            .max()
            .unwrap_or(0)
    }
}

fn parse_group_file(text: &str, dir: Option<&Path>) -> Result<CatalogueEntry, GroupError> {
    let mut name = None;
    let mut aliases = Vec::new();
    let mut degree: Option<usize> = None;
    let mut order: Option<u64> = None;
    let mut sweep = true;
    let mut gens: Vec<String> = Vec::new();
    let mut gen_names: Option<Vec<String>> = None;
    let mut semidirect = false;
    let mut modulus: Option<i64> = None;
    let mut dim: Option<usize> = None;
    let mut actors: Vec<Actor> = Vec::new();
    let mut rels: Vec<String> = Vec::new();
    let mut aut_file: Option<String> = None;

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "name" => name = Some(rest.to_string()),
            "alias" => aliases.push(rest.to_string()),
            "degree" => {
                degree = Some(rest.parse().map_err(|_| bad(line))?);
            }
            "order" => {
                order = Some(rest.parse().map_err(|_| bad(line))?);
            }
            "sweep" => sweep = rest != "false",
            "gen" => gens.push(rest.to_string()),
            "gen-names" => {
                gen_names = Some(rest.split_whitespace().map(|s| s.to_string()).collect())
            }
            "semidirect" => semidirect = true,
            "modulus" => modulus = Some(rest.parse().map_err(|_| bad(line))?),
            "dim" => dim = Some(rest.parse().map_err(|_| bad(line))?),
            "actor" => {
                let mut it = rest.split_whitespace();
                let aname = it.next().ok_or_else(|| bad(line))?.to_string();
                let matrix: Vec<i64> = it
                    .map(|t| t.parse().map_err(|_| bad(line)))
                    .collect::<Result<_, _>>()?;
                actors.push(Actor {
                    name: aname,
                    matrix,
                    perm: None,
                });
            }
            "actor-perm" => {
                let mut it = rest.splitn(3, char::is_whitespace);
                let aname = it.next().ok_or_else(|| bad(line))?;
                let deg: usize = it
                    .next()
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| bad(line))?;
                let cycles = it.next().ok_or_else(|| bad(line))?;
                let perm = Permutation::parse_cycles(cycles, deg)?;
                let actor = actors
                    .iter_mut()
                    .find(|a| a.name == aname)
                    .ok_or_else(|| bad(line))?;
                actor.perm = Some(perm);
            }
            "rel" => rels.push(rest.to_string()),
            "aut-file" => aut_file = Some(rest.to_string()),
            _ => return Err(bad(line)),
        }
    }

    let name = name.ok_or_else(|| GroupError::CatalogueParse("missing name".into()))?;
    let mut group = if semidirect {
        let modulus = modulus.ok_or_else(|| GroupError::CatalogueParse("missing modulus".into()))?;
        let dim = dim.ok_or_else(|| GroupError::CatalogueParse("missing dim".into()))?;
        semidirect_product(dim, modulus, &actors, &rels)?
    } else {
        let degree = degree.ok_or_else(|| GroupError::CatalogueParse("missing degree".into()))?;
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree))
            .collect::<Result<_, _>>()?;
        // materialize up to the asserted order so catalogue groups beyond the
        // pipeline cap (used only for existence tests) still enumerate
        let cap = order.unwrap_or(super::DEFAULT_ELEMENT_CAP).max(super::DEFAULT_ELEMENT_CAP);
        let mut g = FiniteGroup::with_cap(perms, cap)?;
        if let Some(names) = gen_names {
            g.set_gen_names(names);
        }
        g
    };
    if let Some(want) = order {
        if group.order() != want {
            return Err(GroupError::OrderAssertion {
                name,
                got: group.order(),
                want,
            });
        }
    }
    group.set_name(name.clone());

    let preloaded_auts = match (aut_file, dir) {
        (Some(file), Some(dir)) => {
            let text = std::fs::read_to_string(dir.join(&file))?;
            Some(parse_aut_file(&text, &group)?)
        }
        (Some(_), None) => {
            return Err(GroupError::CatalogueParse(
                "aut-file needs a directory-based catalogue".into(),
            ))
        }
        _ => None,
    };

    Ok(CatalogueEntry {
        name,
        aliases,
        group: Arc::new(group),
        sweep,
        preloaded_auts,
    })
}

fn parse_aut_file(text: &str, group: &FiniteGroup) -> Result<Vec<GroupMap>, GroupError> {
    let mut auts = Vec::new();
    let gen_ids = group.generator_ids()?.to_vec();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let images: Vec<Permutation> = line
            .split(';')
            .map(|s| Permutation::parse_cycles(s.trim(), group.degree()))
            .collect::<Result<_, _>>()?;
        if images.len() != gen_ids.len() {
            return Err(GroupError::CatalogueParse(
                "automorphism line arity mismatch".into(),
            ));
        }
        let target_ids: Vec<_> = images
            .iter()
            .map(|p| group.id_of(p))
            .collect::<Result<_, _>>()?;
        let map = extend_generator_map(group, &gen_ids, &target_ids)
            .ok_or_else(|| GroupError::CatalogueParse("line is not an automorphism".into()))?;
        auts.push(map);
    }
    Ok(auts)
}

/// Extend generator images to a full automorphism, if they define one.
pub fn extend_generator_map(
    group: &FiniteGroup,
    gens: &[super::ElementId],
    targets: &[super::ElementId],
) -> Option<GroupMap> {
    let n = group.element_count();
    let mut img = vec![u16::MAX; n];
    img[0] = 0;
    let mut queue = vec![0 as super::ElementId];
    let mut qi = 0;
    while qi < queue.len() {
        let cur = queue[qi];
        qi += 1;
        for (k, &s) in gens.iter().enumerate() {
            let next = group.mul(cur, s);
            let want = group.mul(img[cur as usize], targets[k]);
            if img[next as usize] == u16::MAX {
                img[next as usize] = want;
                queue.push(next);
            } else if img[next as usize] != want {
                return None;
            }
        }
    }
    if img.iter().any(|&x| x == u16::MAX) {
        return None;
    }
    // verify all edges, then bijectivity
    for x in 0..n as u32 {
        for (k, &s) in gens.iter().enumerate() {
            if img[group.mul(x as u16, s) as usize] != group.mul(img[x as usize], targets[k]) {
                return None;
            }
        }
    }
    let map = GroupMap::from_images(img);
    map.is_bijective().then_some(map)
}

fn bad(line: &str) -> GroupError {
    GroupError::CatalogueParse(format!("cannot parse line `{line}`"))
}

macro_rules! builtin {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../../data/catalogue/", $file)))),*]
    };
}

const BUILTIN_FILES: &[(&str, &str)] = builtin![
    "a5.group",
    "a6.group",
    "a7.group",
    "g16_3.group",
    "g32_27.group",
    "psl27.group",
    "psl27_s7.group",
    "s3xs3.group",
    "s4.group",
    "s5.group",
    "z2_3.group",
    "z2_4.group",
    "z2p4_d5.group",
    "z2p4_s3.group",
    "z2xa4.group",
    "z2xd4.group",
    "z2xs4.group",
    "z2xs5.group",
    "z3_2.group",
    "z3p2_z2.group",
    "z3xs3.group",
    "z4_2.group",
    "z4xz2.group",
    "z5_2.group",
    "z5p2_z3.group",
];
