//! Block decomposition of multifusion rings.
//!
//! With unit `1 = p_1 + … + p_n`, every label `x` sits in exactly one block `Φ_{ij}`, meaning
//! `p_i·x = x = x·p_j`. Blocks multiply like matrix units, indices linked by a nonzero block
//! form the indecomposable components, and each diagonal block `Φ_{ii}` is a ring with simple
//! unit `p_i`. Corners inside one component are Morita equivalent; at ring level this is
//! recorded by the row and column label sets and equal global FP dimensions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fusion_ring::{FusionError, FusionRing};
use crate::report::{Check, ValidationReport};

/// Corners in one component must agree on global FP dimension to this tolerance.
pub const MORITA_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultifusionError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("unit summands fail the projector laws: {0}")]
    Projector(String),
    #[error("label {0} does not lie in exactly one block")]
    AmbiguousBlock(String),
    #[error("{x}·{y} contains {z}, breaking the block calculus")]
    BlockCalculus { x: String, y: String, z: String },
    #[error("unit position {0} out of range")]
    UnitOutOfRange(usize),
}

/// Checks `p_i² = p_i`, `p_i p_j = 0` for `i ≠ j` and `p_i* = p_i`; witnesses are positions in
/// the unit list.
pub fn unit_summands_check(ring: &FusionRing) -> ValidationReport {
    let units = ring.unit_summands();
    let mut report = ValidationReport::default();
    let idem = units.iter().enumerate().find(|&(_, &p)| ring.product(p, p) != [(p, 1)]);
    report.push(Check::from_violation(
        "projector_idempotent",
        idem.map(|(i, &p)| (vec![i, i], format!("{0}·{0} != {0}", ring.label(p)))),
    ));
    let orth = (0..units.len())
        .flat_map(|i| (0..units.len()).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && !ring.product(units[i], units[j]).is_empty());
    report.push(Check::from_violation(
        "projectors_orthogonal",
        orth.map(|(i, j)| {
            (vec![i, j], format!("{}·{} != 0", ring.label(units[i]), ring.label(units[j])))
        }),
    ));
    let adj = units.iter().enumerate().find(|&(_, &p)| ring.dual(p) != p);
    report.push(Check::from_violation(
        "projector_self_adjoint",
        adj.map(|(i, &p)| (vec![i, i], format!("{} is not self-dual", ring.label(p)))),
    ));
    report
}

/// Result of [`block_partition`]. Unit summands are referred to by their position in
/// `ring.unit_summands()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    ring: FusionRing,
    block_of: Vec<(usize, usize)>,
    components: Vec<Vec<usize>>,
}

/// Ring-level record of the Morita equivalence between two corners of one component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoritaWitness {
    pub from: usize,
    pub to: usize,
    /// Labels of `⊔_j Φ_{from, j}` over the component.
    pub row: Vec<String>,
    /// Labels of `⊔_j Φ_{j, from}` over the component.
    pub column: Vec<String>,
    pub from_dimension: f64,
    pub to_dimension: f64,
    pub dimensions_agree: bool,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Assigns every label its block, checks the matrix-unit calculus on every nonzero `N_{xy}^z`
/// and groups unit summands into components.
pub fn block_partition(ring: &FusionRing) -> Result<BlockDecomposition, MultifusionError> {
    let units = ring.unit_summands();
    let check = unit_summands_check(ring);
    if let Some(bad) = check.failures().next() {
        return Err(MultifusionError::Projector(format!(
            "{} at {:?}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    let n = units.len();
    let mut block_of = Vec::with_capacity(ring.rank());
    for x in 0..ring.rank() {
        let left: Vec<usize> = (0..n).filter(|&i| !ring.product(units[i], x).is_empty()).collect();
        let right: Vec<usize> = (0..n).filter(|&j| !ring.product(x, units[j]).is_empty()).collect();
        match (left.as_slice(), right.as_slice()) {
            ([i], [j]) if ring.product(units[*i], x) == [(x, 1)] && ring.product(x, units[*j]) == [(x, 1)] => {
                block_of.push((*i, *j))
            }
            _ => return Err(MultifusionError::AmbiguousBlock(ring.label(x).to_owned())),
        }
    }
    for (x, y, z, _) in ring.entries() {
        let (i, j) = block_of[x];
        let (k, l) = block_of[y];
        if j != k || block_of[z] != (i, l) {
            return Err(MultifusionError::BlockCalculus {
                x: ring.label(x).to_owned(),
                y: ring.label(y).to_owned(),
                z: ring.label(z).to_owned(),
            });
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(i, j) in &block_of {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a.max(b)] = a.min(b);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    Ok(BlockDecomposition { ring: ring.clone(), block_of, components: groups.into_values().collect() })
}

impl BlockDecomposition {
    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    /// Block `(i, j)` of label `x`.
    pub fn block_of(&self, x: usize) -> (usize, usize) {
        self.block_of[x]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn unit_count(&self) -> usize {
        self.ring.unit_summands().len()
    }

    /// Labels of block `(i, j)` in ring order.
    pub fn block(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.ring.rank()).filter(|&x| self.block_of[x] == (i, j)).collect()
    }

    /// Fusion ring of `Φ_{ii}` with unit `p_i`.
    pub fn corner_ring(&self, i: usize) -> Result<FusionRing, MultifusionError> {
        if i >= self.unit_count() {
            return Err(MultifusionError::UnitOutOfRange(i));
        }
        let labels = self.block(i, i);
        let pos: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(a, &x)| (x, a)).collect();
        let unit = vec![pos[&self.ring.unit_summands()[i]]];
        let dual = labels.iter().map(|x| pos[&self.ring.dual(*x)]).collect();
        let fusion: Vec<_> = self
            .ring
            .entries()
            .filter(|(x, y, _, _)| pos.contains_key(x) && pos.contains_key(y))
            .map(|(x, y, z, n)| (pos[&x], pos[&y], pos[&z], n))
            .collect();
        let names = labels.iter().map(|&x| self.ring.label(x).to_owned()).collect();
        Ok(FusionRing::new(names, unit, dual, fusion)?)
    }

    /// For each component, witnesses relating its first corner to every other one.
    pub fn morita_witnesses(&self) -> Result<Vec<MoritaWitness>, MultifusionError> {
        let mut out = Vec::new();
        for comp in &self.components {
            let from = comp[0];
            let from_dimension = self.corner_ring(from)?.global_fp_dimension()?;
            let names = |xs: Vec<usize>| xs.into_iter().map(|x| self.ring.label(x).to_owned()).collect::<Vec<_>>();
            let row = names(comp.iter().flat_map(|&j| self.block(from, j)).collect());
            let column = names(comp.iter().flat_map(|&j| self.block(j, from)).collect());
            for &to in &comp[1..] {
                let to_dimension = self.corner_ring(to)?.global_fp_dimension()?;
                out.push(MoritaWitness {
                    from,
                    to,
                    row: row.clone(),
                    column: column.clone(),
                    from_dimension,
                    to_dimension,
                    dimensions_agree: (from_dimension - to_dimension).abs() <= MORITA_TOLERANCE,
                });
            }
        }
        Ok(out)
    }

    /// Whether every nonzero `N_{xy}^z` has all three labels in one component.
    pub fn is_block_diagonal(&self) -> bool {
        let comp_of = |i: usize| self.components.iter().position(|c| c.contains(&i));
        self.ring.entries().all(|(x, y, z, _)| {
            let c = comp_of(self.block_of[x].0);
            c == comp_of(self.block_of[y].0) && c == comp_of(self.block_of[z].0)
        })
    }

    /// `{"components", "blocks", "corners", "morita"}` report.
    pub fn to_json(&self) -> Result<serde_json::Value, MultifusionError> {
        let blocks: serde_json::Map<String, serde_json::Value> = (0..self.ring.rank())
            .map(|x| {
                let (i, j) = self.block_of[x];
                (self.ring.label(x).to_owned(), serde_json::json!([i, j]))
            })
            .collect();
        let corners = (0..self.unit_count())
            .map(|i| self.corner_ring(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(serde_json::json!({
            "components": self.components,
            "blocks": blocks,
            "corners": corners,
            "morita": self.morita_witnesses()?,
        }))
    }
}

/// `M_n`: labels `e{i}{j}` with `e_ij·e_kl = δ_jk e_il`, unit `e11 + … + enn`, dual `e_ij ↦ e_ji`.
pub fn matrix_unit_ring(n: usize) -> FusionRing {
    let idx = |i: usize, j: usize| i * n + j;
    let labels = (0..n * n).map(|x| format!("e{}{}", x / n + 1, x % n + 1)).collect();
    let unit = (0..n).map(|i| idx(i, i)).collect();
    let dual = (0..n * n).map(|x| idx(x % n, x / n)).collect();
    let fusion: Vec<_> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |l| (idx(i, j), idx(j, l), idx(i, l), 1))))
        .collect();
    FusionRing::new(labels, unit, dual, fusion).expect("matrix units are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::ring_product;

    fn fibonacci() -> FusionRing {
        FusionRing::new(
            vec!["1".into(), "tau".into()],
            vec![0],
            vec![0, 1],
            [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn matrix_units() {
        let m2 = matrix_unit_ring(2);
        assert!(m2.is_valid(), "{}", m2.validate());
        assert!(unit_summands_check(&m2).passed());
        let dec = block_partition(&m2).unwrap();
        for (x, block) in [(0, (0, 0)), (1, (0, 1)), (2, (1, 0)), (3, (1, 1))] {
            assert_eq!(dec.block_of(x), block);
        }
        assert_eq!(dec.components(), &[vec![0, 1]]);
        let corner = dec.corner_ring(0).unwrap();
        assert!(corner.isomorphism_to(&FusionRing::trivial()).is_some());
        let w = dec.morita_witnesses().unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].row, ["e11", "e12"]);
        assert_eq!(w[0].column, ["e11", "e21"]);
        assert!(w[0].dimensions_agree);
    }

    #[test]
    fn identity_dual_on_matrix_units_is_rejected() {
        let m2 = matrix_unit_ring(2);
        let bad = FusionRing::new(m2.labels().to_vec(), vec![0, 3], vec![0, 1, 2, 3], m2.entries()).unwrap();
        assert!(bad.validate().failed("frobenius_pairing"));
        assert!(matches!(
            bad.frobenius_pairing(),
            Err(FusionError::DualMismatch { label: 1, declared: 1, found: 2 })
        ));
    }

    #[test]
    fn direct_sums_split() {
        let z2 = FusionRing::abelian_group_ring(&[2]).relabel(vec!["e".into(), "g".into()]).unwrap();
        let sum = fibonacci().direct_sum(&z2).unwrap();
        let dec = block_partition(&sum).unwrap();
        assert_eq!(dec.components(), &[vec![0], vec![1]]);
        assert!(dec.corner_ring(0).unwrap().isomorphism_to(&fibonacci()).is_some());
        assert!(dec.corner_ring(1).unwrap().isomorphism_to(&z2).is_some());
        assert!(dec.morita_witnesses().unwrap().is_empty());

        let m2t = matrix_unit_ring(2).direct_sum(&FusionRing::trivial()).unwrap();
        let dec = block_partition(&m2t).unwrap();
        assert_eq!(dec.components(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn product_corner_is_fibonacci() {
        let p = ring_product(&matrix_unit_ring(2), &fibonacci());
        assert!(p.is_valid());
        let dec = block_partition(&p).unwrap();
        assert_eq!(dec.components().len(), 1);
        let corner = dec.corner_ring(0).unwrap();
        assert_eq!(corner.labels(), ["(e11,1)", "(e11,tau)"]);
        assert_eq!(corner.isomorphism_to(&fibonacci()), Some(vec![0, 1]));
        let w = dec.morita_witnesses().unwrap();
        assert!(w.iter().all(|w| w.dimensions_agree));
    }

    #[test]
    fn non_orthogonal_units_are_rejected() {
        let ring = FusionRing::new(
            vec!["a".into(), "b".into()],
            vec![0, 1],
            vec![0, 1],
            [(0, 0, 0, 1), (1, 1, 1, 1), (0, 1, 1, 1)],
        )
        .unwrap();
        let report = unit_summands_check(&ring);
        assert!(report.failed("projectors_orthogonal"));
        assert!(matches!(block_partition(&ring), Err(MultifusionError::Projector(_))));
    }

    #[test]
    fn json_shape() {
        let dec = block_partition(&matrix_unit_ring(2)).unwrap();
        let v = dec.to_json().unwrap();
        assert_eq!(v["components"], serde_json::json!([[0, 1]]));
        assert_eq!(v["blocks"]["e21"], serde_json::json!([1, 0]));
        assert_eq!(v["corners"].as_array().unwrap().len(), 2);
    }
}
