use crate::error::{Error, Result};
use crate::permgroup::{are_isomorphic, FiniteGroup, Subgroup};
use crate::presentations::{group_from_presentation, Presentation, DEFAULT_COSET_CAP};

/// Orders up to which the catalog lists every group up to isomorphism.
pub const EXHAUSTIVE_ORDER: usize = 8;

/// Largest order the catalog accepts.
pub const CATALOG_MAX_ORDER: usize = 64;

/// Presentations of the groups of order at most 8, with a few redundant
/// ones that must collapse onto earlier entries.
const PRESENTATIONS: &[(&str, &str)] = &[
    ("C1", "gens 1\na\n"),
    ("C2", "gens 1\naa\n"),
    ("C3", "gens 1\naaa\n"),
    ("C4", "gens 1\naaaa\n"),
    ("C2^2", "gens 2\naa\nbb\nABab\n"),
    ("C5", "gens 1\naaaaa\n"),
    ("C6", "gens 1\naaaaaa\n"),
    ("S3", "gens 2\naaa\nbb\nabab\n"),
    ("C6", "gens 2\naaa\nbb\nABab\n"),
    ("C7", "gens 1\naaaaaaa\n"),
    ("C8", "gens 1\naaaaaaaa\n"),
    ("C4xC2", "gens 2\naaaa\nbb\nABab\n"),
    ("C2^3", "gens 3\naa\nbb\ncc\nABab\nACac\nBCbc\n"),
    ("D8", "gens 2\naaaa\nbb\nabab\n"),
    ("Q8", "gens 2\naaaa\naaBB\nBaba\n"),
    ("D8", "gens 2\naa\nbb\nabababab\n"),
    ("C4xC2", "gens 2\naaaa\nbbbb\naabb\nABab\n"),
];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
}

/// Groups of small order. For orders up to [`EXHAUSTIVE_ORDER`] the list is
/// complete up to isomorphism; above it only the cyclic, dihedral and
/// elementary abelian families appear and `partial` is set.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub max_order: usize,
    pub entries: Vec<CatalogEntry>,
    pub partial: bool,
}

impl Catalog {
    pub fn of_order(&self, n: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.group.order() == n)
    }

    /// Whether every group of order `n` is listed.
    pub fn is_exhaustive_for(&self, n: usize) -> bool {
        n <= self.max_order && n <= EXHAUSTIVE_ORDER
    }
}

/// Build the catalog of groups of order at most `max_order`.
pub fn small_group_catalog(max_order: usize) -> Result<Catalog> {
    if max_order == 0 {
        return Err(Error::domain("max_order must be positive"));
    }
    if max_order > CATALOG_MAX_ORDER {
        return Err(Error::UnsupportedScale(format!(
            "catalog covers orders up to {CATALOG_MAX_ORDER}, asked for {max_order}"
        )));
    }
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for (name, text) in PRESENTATIONS {
        let group = group_from_presentation(&Presentation::from_text(text)?, DEFAULT_COSET_CAP)?;
        if group.order() > max_order {
            continue;
        }
        push_new(&mut entries, name, group);
    }
    for n in EXHAUSTIVE_ORDER + 1..=max_order {
        push_new(&mut entries, &format!("C{n}"), FiniteGroup::cyclic(n)?);
        if n % 2 == 0 && n >= 6 {
            push_new(&mut entries, &format!("D{n}"), FiniteGroup::dihedral(n / 2)?);
        }
        if n.is_power_of_two() {
            let k = n.trailing_zeros();
            push_new(&mut entries, &format!("C2^{k}"), FiniteGroup::elementary_abelian(k)?);
        }
    }
    entries.sort_by_key(|e| e.group.order());
    Ok(Catalog {
        max_order,
        entries,
        partial: max_order > EXHAUSTIVE_ORDER,
    })
}

fn push_new(entries: &mut Vec<CatalogEntry>, name: &str, group: FiniteGroup) {
    if entries.iter().any(|e| are_isomorphic(&e.group, &group)) {
        return;
    }
    entries.push(CatalogEntry {
        name: name.to_string(),
        group,
    });
}

/// Number of groups of order `2^m` generated by some set of `d` distinct
/// involutions, by exhaustive search over the catalog.
pub fn g_count(d: usize, m: u32) -> Result<usize> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    let n = 1usize
        .checked_shl(m)
        .filter(|&n| n <= EXHAUSTIVE_ORDER)
        .ok_or_else(|| {
            Error::UnsupportedScale(format!(
                "order 2^{m} is beyond the exhaustive catalog (orders ≤ {EXHAUSTIVE_ORDER})"
            ))
        })?;
    let catalog = small_group_catalog(n)?;
    Ok(catalog
        .of_order(n)
        .filter(|e| generated_by_involutions(&e.group, d))
        .count())
}

/// Whether some `d` distinct involutions generate `g`.
pub fn generated_by_involutions(g: &FiniteGroup, d: usize) -> bool {
    let involutions: Vec<u32> = (1..g.order() as u32)
        .filter(|&x| g.element_order(x) == 2)
        .collect();
    let mut chosen = Vec::with_capacity(d);
    subsets_generate(g, &involutions, d, 0, &mut chosen)
}

fn subsets_generate(g: &FiniteGroup, pool: &[u32], d: usize, from: usize, chosen: &mut Vec<u32>) -> bool {
    if chosen.len() == d {
        return Subgroup::generated(g, chosen).order() == g.order();
    }
    for i in from..pool.len() {
        if pool.len() - i < d - chosen.len() {
            break;
        }
        chosen.push(pool[i]);
        let found = subsets_generate(g, pool, d, i + 1, chosen);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}
