use super::Poset;
use crate::error::{Error, Result};

/// A materialized direct product `P_1 × … × P_n` with componentwise order.
#[derive(Debug, Clone)]
pub struct ProductPoset {
    pub factors: Vec<Poset>,
    pub carrier: Poset,
    /// `coord_of[x][i]` is the id of the `i`-th coordinate of carrier element `x`.
    pub coord_of: Vec<Vec<usize>>,
}

impl ProductPoset {
    /// Carrier id of the tuple whose `i`-th coordinate is `coords[i]`.
    pub fn id_of_coords(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.factors).fold(0, |acc, (&c, f)| acc * f.len() + c)
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// The atom of the carrier supported on coordinate `i`, when factor `i` has a unique atom.
    pub fn coordinate_atom(&self, i: usize) -> Option<usize> {
        let atoms = self.factors[i].atoms().ok()?;
        if atoms.len() != 1 {
            return None;
        }
        let mut coords: Vec<usize> = self.factors.iter().map(|f| f.bottom().unwrap()).collect();
        coords[i] = atoms.iter().next()?;
        Some(self.id_of_coords(&coords))
    }
}

/// Builds the direct product. Tuples are ordered lexicographically by
/// coordinate ids, last coordinate fastest; names are `(x1,x2,…)`.
pub fn direct_product(factors: &[Poset]) -> Result<ProductPoset> {
    if factors.len() < 2 {
        return Err(Error::TooFewFactors { need: 2, got: factors.len() });
    }
    if let Some(index) = factors.iter().position(|f| !f.is_bounded()) {
        return Err(Error::UnboundedFactor { index });
    }

    let total: usize = factors.iter().map(Poset::len).product();
    let coord_of: Vec<Vec<usize>> = (0..total)
        .map(|mut x| {
            let mut coords = vec![0; factors.len()];
            for (slot, f) in coords.iter_mut().zip(factors).rev() {
                *slot = x % f.len();
                x /= f.len();
            }
            coords
        })
        .collect();
    let names = coord_of
        .iter()
        .map(|coords| {
            let parts: Vec<&str> = coords.iter().zip(factors).map(|(&c, f)| f.name(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();

    let carrier = Poset::from_order_fn(names, |a, b| {
        coord_of[a].iter().zip(&coord_of[b]).zip(factors).all(|((&x, &y), f)| f.leq(x, y))
    })?;

    let product = ProductPoset { factors: factors.to_vec(), carrier, coord_of };

    if factors.iter().all(|f| f.atoms().map(|a| a.len() == 1).unwrap_or(false)) {
        let expected: Vec<usize> = {
            let mut ids: Vec<usize> = (0..factors.len()).filter_map(|i| product.coordinate_atom(i)).collect();
            ids.sort_unstable();
            ids
        };
        let atoms = product.carrier.atoms()?.ids();
        if atoms != expected {
            return Err(Error::Internal(format!("product atoms {atoms:?} differ from coordinate atoms {expected:?}")));
        }
    }

    Ok(product)
}
