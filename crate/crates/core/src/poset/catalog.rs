use super::{direct_product, Poset};
use crate::error::{Error, Result};

/// Named poset families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Catalog {
    /// The power set `2^n` of `{1..n}`.
    BooleanLattice(usize),
    /// A chain with `k` elements.
    Chain(usize),
    /// Ranks `{0, 1, k-1, k}` of `2^k`: bottom, `k` atoms, `k` coatoms, top.
    AtomCoatom(usize),
    /// `0 < k` pairwise incomparable atoms `< 1`.
    MAtoms(usize),
    /// Direct product of chains of the given sizes.
    ChainProduct(Vec<usize>),
}

impl Catalog {
    pub const NAMES: [&'static str; 5] = ["boolean_lattice", "chain", "atom_coatom", "m_atoms", "product"];

    /// Resolves a catalog name plus integer parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Catalog> {
        let single = || match params {
            [p] => Ok(*p),
            _ => Err(Error::BadParam(format!("`{name}` takes exactly one parameter"))),
        };
        match name {
            "boolean_lattice" => Ok(Catalog::BooleanLattice(single()?)),
            "chain" => Ok(Catalog::Chain(single()?)),
            "atom_coatom" => Ok(Catalog::AtomCoatom(single()?)),
            "m_atoms" => Ok(Catalog::MAtoms(single()?)),
            "product" => Ok(Catalog::ChainProduct(params.to_vec())),
            other => Err(Error::UnknownCatalogName(other.to_string())),
        }
    }
}

pub fn generate(entry: &Catalog) -> Result<Poset> {
    match *entry {
        Catalog::BooleanLattice(n) => {
            if n < 1 {
                return Err(Error::BadParam("boolean_lattice needs n >= 1".into()));
            }
            if n > 16 {
                return Err(Error::BadParam("boolean_lattice is limited to n <= 16".into()));
            }
            subset_poset(n, |_| true)
        }
        Catalog::Chain(k) => {
            if k < 2 {
                return Err(Error::BadParam("chain needs k >= 2".into()));
            }
            let names = (0..k)
                .map(|i| match i {
                    0 => "0".to_string(),
                    i if i == k - 1 => "1".to_string(),
                    i => format!("c{i}"),
                })
                .collect();
            Poset::from_fn(names, |a, b| a <= b)
        }
        Catalog::AtomCoatom(k) => {
            if k < 2 {
                return Err(Error::BadParam("atom_coatom needs k >= 2".into()));
            }
            if k > 60 {
                return Err(Error::BadParam("atom_coatom is limited to k <= 60".into()));
            }
            atom_coatom(k)
        }
        Catalog::MAtoms(k) => {
            if k < 1 {
                return Err(Error::BadParam("m_atoms needs k >= 1".into()));
            }
            let mut names = vec!["0".to_string()];
            names.extend((0..k).map(|i| {
                if k <= 26 {
                    char::from(b'a' + i as u8).to_string()
                } else {
                    format!("a{}", i + 1)
                }
            }));
            names.push("1".to_string());
            let top = k + 1;
            Poset::from_fn(names, |a, b| a == 0 || b == top)
        }
        Catalog::ChainProduct(ref sizes) => {
            let factors = sizes.iter().map(|&s| generate(&Catalog::Chain(s))).collect::<Result<Vec<_>>>()?;
            Ok(direct_product(&factors)?.carrier)
        }
    }
}

/// Subsets of `{1..n}` accepted by `keep`, ordered by size then lexicographically.
fn subset_poset<F: Fn(usize) -> bool>(n: usize, keep: F) -> Result<Poset> {
    let full = (1usize << n) - 1;
    let mut masks: Vec<usize> = (0..=full).filter(|&m| keep(m.count_ones() as usize)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), members(m, n)));
    let names = masks
        .iter()
        .map(|&m| match m {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => {
                let parts: Vec<String> = members(m, n).iter().map(|i| i.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    Poset::from_fn(names, |a, b| masks[a] & !masks[b] == 0)
}

fn members(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

fn atom_coatom(k: usize) -> Result<Poset> {
    // 0, q1..qk, q1'..qk', 1 where q_i' is the complement of q_i in 2^k.
    // For k = 2 the two middle ranks coincide (q1' = q2) and the result is 2^2.
    let mut names = vec!["0".to_string()];
    names.extend((1..=k).map(|i| format!("q{i}")));
    if k == 2 {
        names.push("1".to_string());
        return Poset::from_fn(names, |a, b| a == 0 || b == 3 || a == b);
    }
    names.extend((1..=k).map(|i| format!("q{i}'")));
    names.push("1".to_string());
    let full = (1usize << k) - 1;
    let mask = |id: usize| -> usize {
        match id {
            0 => 0,
            i if i <= k => 1 << (i - 1),
            i if i <= 2 * k => full & !(1 << (i - k - 1)),
            _ => full,
        }
    };
    Poset::from_fn(names, |a, b| mask(a) & !mask(b) == 0)
}
