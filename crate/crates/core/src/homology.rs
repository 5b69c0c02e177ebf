//! Reduced simplicial homology over the rationals and the Reisner test.
//!
//! A complex is Cohen–Macaulay (over `Q`) iff for every face `F`, including
//! the empty face, the link of `F` has vanishing reduced homology below its
//! dimension. Ranks of boundary maps come from [`crate::linalg::rank`].

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;

/// A finite simplicial complex on vertices `0..vertex_count`, kept by facets.
///
/// Facets are sorted vertex lists, pairwise incomparable, listed in
/// lexicographic order. An empty facet list is read as the complex `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn from_facets(vertex_count: usize, facets: Vec<Vec<usize>>) -> SimplicialComplex {
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        facets.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            if !kept.iter().any(|k| is_subset(&f, k)) {
                kept.push(f);
            }
        }
        if kept.is_empty() {
            kept.push(Vec::new());
        }
        kept.sort();
        SimplicialComplex { vertex_count, facets: kept }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Largest facet size minus one; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0) as isize - 1
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        self.facets.iter().any(|f| is_subset(&sorted, f))
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.vertex_count > cap {
            return Err(Error::SizeLimitExceeded { what: "homology", size: self.vertex_count, cap });
        }
        Ok(())
    }

    /// All faces grouped by size: entry `j` holds the faces of dimension `j - 1`,
    /// each group sorted lexicographically. Entry 0 is `[∅]`.
    pub fn faces_by_dimension(&self, cap: usize) -> Result<Vec<Vec<Vec<usize>>>> {
        self.check_cap(cap)?;
        Ok(self.all_faces())
    }

    fn all_faces(&self) -> Vec<Vec<Vec<usize>>> {
        let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        let mut seen = std::collections::HashSet::new();
        for facet in &self.facets {
            let k = facet.len();
            for mask in 0u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| facet[i]).collect();
                if seen.insert(face.clone()) {
                    levels[face.len()].push(face);
                }
            }
        }
        for level in &mut levels {
            level.sort();
        }
        levels
    }

    /// Face counts `f_{-1}, f_0, …, f_dim`.
    pub fn f_vector(&self, cap: usize) -> Result<Vec<usize>> {
        Ok(self.faces_by_dimension(cap)?.iter().map(Vec::len).collect())
    }

    /// `lk(F) = { G : G ∩ F = ∅, G ∪ F ∈ Δ }`.
    pub fn link(&self, face: &[usize]) -> Result<SimplicialComplex> {
        let mut face = face.to_vec();
        face.sort_unstable();
        face.dedup();
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| is_subset(&face, f))
            .map(|f| f.iter().copied().filter(|v| face.binary_search(v).is_err()).collect())
            .collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(face));
        }
        Ok(SimplicialComplex::from_facets(self.vertex_count, facets))
    }

    /// Reduced Betti numbers over `Q`.
    pub fn reduced_betti(&self, cap: usize) -> Result<HomologyProfile> {
        self.check_cap(cap)?;
        homology_of_levels(&self.all_faces())
    }

    /// Applies the vertex relabeling `v ↦ perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> SimplicialComplex {
        let facets = self.facets.iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        SimplicialComplex::from_facets(self.vertex_count, facets)
    }

    /// Reisner's criterion over `Q`, checking every face in face order.
    pub fn reisner(&self, cap: usize) -> Result<ReisnerReport> {
        self.check_cap(cap)?;
        let faces: Vec<Vec<usize>> = self.all_faces().into_iter().flatten().collect();
        let rows = faces
            .into_par_iter()
            .map(|face| {
                let link = self.link(&face)?;
                let betti = homology_of_levels(&link.all_faces())?;
                Ok(LinkRow { link_dimension: link.dimension(), face, betti })
            })
            .collect::<Result<Vec<LinkRow>>>()?;
        let witness = rows
            .iter()
            .find_map(|row| (-1..row.link_dimension).find(|&i| row.betti.get(i) != 0).map(|i| (row.face.clone(), i)));
        Ok(ReisnerReport { cohen_macaulay: witness.is_none(), witness, rows })
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // Both sorted.
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

fn homology_of_levels(levels: &[Vec<Vec<usize>>]) -> Result<HomologyProfile> {
    // ranks[j] = rank of the boundary map from level j to level j-1.
    let mut ranks = vec![0usize; levels.len() + 1];
    for j in 1..levels.len() {
        let index: HashMap<&[usize], usize> =
            levels[j - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let width = levels[j - 1].len();
        let matrix: Vec<Vec<i64>> = levels[j]
            .iter()
            .map(|face| {
                let mut row = vec![0i64; width];
                for skip in 0..face.len() {
                    let boundary: Vec<usize> =
                        face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    row[index[boundary.as_slice()]] = sign;
                }
                row
            })
            .collect();
        ranks[j] = linalg::rank(&matrix);
    }

    let betti: Vec<u64> = (0..levels.len())
        .map(|j| {
            let b = levels[j].len() as i64 - ranks[j] as i64 - ranks[j + 1] as i64;
            u64::try_from(b).map_err(|_| Error::Internal(format!("negative Betti number {b} at level {j}")))
        })
        .collect::<Result<_>>()?;

    let alternating = |xs: &mut dyn Iterator<Item = i64>| -> i64 {
        xs.enumerate().map(|(j, x)| if j % 2 == 0 { -x } else { x }).sum()
    };
    let euler_faces = alternating(&mut levels.iter().map(|l| l.len() as i64));
    let euler_betti = alternating(&mut betti.iter().map(|&b| b as i64));
    if euler_faces != euler_betti {
        return Err(Error::Internal(format!(
            "Euler characteristic mismatch: faces give {euler_faces}, homology gives {euler_betti}"
        )));
    }
    Ok(HomologyProfile { betti })
}

/// Reduced Betti numbers over `Q`, from dimension `-1` upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    betti: Vec<u64>,
}

impl HomologyProfile {
    /// `β̃_i`, zero outside the stored range.
    pub fn get(&self, dim: isize) -> u64 {
        usize::try_from(dim + 1).ok().and_then(|j| self.betti.get(j).copied()).unwrap_or(0)
    }

    /// `[β̃_{-1}, β̃_0, …, β̃_dim]`.
    pub fn as_slice(&self) -> &[u64] {
        &self.betti
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.betti.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkRow {
    pub face: Vec<usize>,
    pub link_dimension: isize,
    pub betti: HomologyProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReisnerReport {
    pub cohen_macaulay: bool,
    /// First face whose link has nonzero `β̃_i` with `i < dim lk(F)`.
    pub witness: Option<(Vec<usize>, isize)>,
    pub rows: Vec<LinkRow>,
}

pub fn faces_by_dimension(c: &SimplicialComplex, cap: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    c.faces_by_dimension(cap)
}

pub fn reduced_betti(c: &SimplicialComplex, cap: usize) -> Result<HomologyProfile> {
    c.reduced_betti(cap)
}

pub fn link_of(c: &SimplicialComplex, face: &[usize]) -> Result<SimplicialComplex> {
    c.link(face)
}

pub fn reisner_cm(c: &SimplicialComplex, cap: usize) -> Result<ReisnerReport> {
    c.reisner(cap)
}
