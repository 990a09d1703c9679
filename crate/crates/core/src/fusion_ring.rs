//! Grothendieck rings of (multi)fusion categories.
//!
//! A [`FusionRing`] carries labels, the simple summands of the unit, the dual involution and the
//! sparse fusion tensor `N_{ij}^k`. Validation checks the unit law, associativity, Frobenius
//! reciprocity and the rigidity pairing `B_{ij} = Σ_u N_{ij}^u`, which must be a symmetric
//! permutation matrix agreeing with the declared duality.

use std::collections::{BTreeMap, HashSet};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::report::{Check, ValidationReport};

/// Rings up to this rank also keep a dense `r³` copy of the fusion tensor.
pub const DENSE_RANK_LIMIT: usize = 64;

const SHIFT: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FusionError {
    #[error("input error: {0}")]
    Input(String),
    #[error("rigidity pairing is not perfect at label {0}")]
    PerfectnessFailure(usize),
    #[error("pairing sends label {label} to {found}, but its declared dual is {declared}")]
    DualMismatch { label: usize, declared: usize, found: usize },
    #[error("numeric error: {0}")]
    Numeric(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FusionRingJson", into = "FusionRingJson")]
pub struct FusionRing {
    labels: Vec<String>,
    unit: Vec<usize>,
    dual: Vec<usize>,
    entries: BTreeMap<(usize, usize, usize), u64>,
    /// `products[i * r + j]` lists the nonzero `(k, N_{ij}^k)`.
    products: Vec<Vec<(usize, u64)>>,
    dense: Option<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct FusionRingJson {
    labels: Vec<String>,
    unit: Vec<usize>,
    dual: Vec<usize>,
    fusion: Vec<[u64; 4]>,
}

impl TryFrom<FusionRingJson> for FusionRing {
    type Error = FusionError;

    fn try_from(j: FusionRingJson) -> Result<Self, Self::Error> {
        let fusion = j
            .fusion
            .iter()
            .map(|[i, j, k, n]| (*i as usize, *j as usize, *k as usize, *n));
        FusionRing::new(j.labels, j.unit, j.dual, fusion)
    }
}

impl From<FusionRing> for FusionRingJson {
    fn from(r: FusionRing) -> Self {
        let fusion = r
            .entries
            .iter()
            .map(|(&(i, j, k), &n)| [i as u64, j as u64, k as u64, n])
            .collect();
        FusionRingJson { labels: r.labels, unit: r.unit, dual: r.dual, fusion }
    }
}

/// The rigidity pairing together with the permutation it encodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    pub entries: Vec<Vec<u64>>,
    /// `permutation[i]` is the unique `j` with `B_{ij} = 1`.
    pub permutation: Vec<usize>,
}

fn input(msg: impl Into<String>) -> FusionError {
    FusionError::Input(msg.into())
}

impl FusionRing {
    /// Builds a ring from `(i, j, k, N_{ij}^k)` entries; omitted triples are zero.
    ///
    /// Structural problems (indices out of range, duplicate triples, an empty or repeated unit,
    /// duplicate labels) are input errors. Axiom violations are left to [`FusionRing::validate`].
    pub fn new(
        labels: Vec<String>,
        unit: Vec<usize>,
        dual: Vec<usize>,
        fusion: impl IntoIterator<Item = (usize, usize, usize, u64)>,
    ) -> Result<Self, FusionError> {
        let r = labels.len();
        if r == 0 {
            return Err(input("a fusion ring needs at least one label"));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(input(format!("duplicate label {dup:?}")));
        }
        if unit.is_empty() {
            return Err(input("unit must have at least one simple summand"));
        }
        let mut seen = HashSet::new();
        for &u in &unit {
            if u >= r {
                return Err(input(format!("unit summand {u} out of range")));
            }
            if !seen.insert(u) {
                return Err(input(format!("unit summand {u} repeated")));
            }
        }
        if dual.len() != r {
            return Err(input(format!("dual has length {}, expected {r}", dual.len())));
        }
        if let Some(d) = dual.iter().find(|&&d| d >= r) {
            return Err(input(format!("dual index {d} out of range")));
        }
        let mut entries = BTreeMap::new();
        for (i, j, k, n) in fusion {
            if i >= r || j >= r || k >= r {
                return Err(input(format!("fusion triple ({i}, {j}, {k}) out of range")));
            }
            if entries.insert((i, j, k), n).is_some() {
                return Err(input(format!("duplicate fusion triple ({i}, {j}, {k})")));
            }
        }
        entries.retain(|_, n| *n != 0);
        let mut products = vec![Vec::new(); r * r];
        for (&(i, j, k), &n) in &entries {
            products[i * r + j].push((k, n));
        }
        let dense = (r <= DENSE_RANK_LIMIT).then(|| {
            let mut d = vec![0; r * r * r];
            for (&(i, j, k), &n) in &entries {
                d[(i * r + j) * r + k] = n;
            }
            d
        });
        Ok(Self { labels, unit, dual, entries, products, dense })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit_summands(&self) -> &[usize] {
        &self.unit
    }

    pub fn has_simple_unit(&self) -> bool {
        self.unit.len() == 1
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `N_{ij}^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        match &self.dense {
            Some(d) => d[(i * r + j) * r + k],
            None => self.entries.get(&(i, j, k)).copied().unwrap_or(0),
        }
    }

    /// Nonzero summands `(k, N_{ij}^k)` of `x_i · x_j`, in increasing `k`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.products[i * self.rank() + j]
    }

    /// Nonzero entries in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j, k), &n)| (i, j, k, n))
    }

    /// The ring with a single label that is its own unit.
    pub fn trivial() -> Self {
        Self::new(vec!["1".into()], vec![0], vec![0], [(0, 0, 0, 1)]).expect("valid")
    }

    /// Group ring of a finite abelian group `Z_{n_1} × … × Z_{n_s}`; elements are enumerated with
    /// the first coordinate varying fastest and labelled `"a1,...,as"`.
    pub fn abelian_group_ring(orders: &[u64]) -> Self {
        let group = crate::pointed::AbelianGroup::new(orders.to_vec()).expect("positive orders");
        let size = group.order();
        let labels = (0..size).map(|a| group.key(a)).collect();
        let dual = (0..size).map(|a| group.neg(a)).collect();
        let fusion = (0..size).flat_map(|a| {
            let group = &group;
            (0..size).map(move |b| (a, b, group.add(a, b), 1))
        });
        Self::new(labels, vec![0], dual, fusion.collect::<Vec<_>>()).expect("valid group ring")
    }

    /// Same ring with labels renamed.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self, FusionError> {
        if labels.len() != self.rank() {
            return Err(input("relabel needs one name per label"));
        }
        Self::new(labels, self.unit.clone(), self.dual.clone(), self.entries())
    }

    /// Direct sum with disjoint label sets; the unit is the union of both units.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, FusionError> {
        let off = self.rank();
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let unit = self
            .unit
            .iter()
            .copied()
            .chain(other.unit.iter().map(|u| u + off))
            .collect();
        let dual = self
            .dual
            .iter()
            .copied()
            .chain(other.dual.iter().map(|d| d + off))
            .collect();
        let fusion = self
            .entries()
            .chain(other.entries().map(|(i, j, k, n)| (i + off, j + off, k + off, n)))
            .collect::<Vec<_>>();
        Self::new(labels, unit, dual, fusion)
    }

    /// Runs every ring axiom check; the ring is accepted iff all pass.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.push(Check::from_violation("dual_involution", self.dual_violation()));
        report.push(Check::from_violation("unit_law", self.unit_law_violation()));
        report.push(Check::from_violation("associativity", self.associativity_violation()));
        report.push(Check::from_violation(
            "frobenius_reciprocity",
            self.reciprocity_violation(),
        ));
        match self.frobenius_pairing() {
            Ok(_) => {
                report.push(Check::pass("frobenius_pairing"));
                let asym = self.pairing_symmetry_check();
                report.push(Check::from_violation(
                    "pairing_symmetry",
                    asym.first().map(|&(i, j)| {
                        (vec![i, j], format!("B({i},{j}) != B({j},{i})"))
                    }),
                ));
            }
            Err(FusionError::PerfectnessFailure(i)) => report.push(Check::fail(
                "frobenius_pairing",
                Some(vec![i, self.dual[i]]),
                format!("row {} of the pairing is not a unit vector", self.labels[i]),
            )),
            Err(FusionError::DualMismatch { label, declared, found }) => report.push(Check::fail(
                "frobenius_pairing",
                Some(vec![label, found]),
                format!(
                    "pairing pairs {} with {}, declared dual is {}",
                    self.labels[label], self.labels[found], self.labels[declared]
                ),
            )),
            Err(e) => report.push(Check::fail("frobenius_pairing", None, e.to_string())),
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    fn dual_violation(&self) -> Option<(Vec<usize>, String)> {
        if let Some(i) = (0..self.rank()).find(|&i| self.dual[self.dual[i]] != i) {
            return Some((vec![i], format!("dual(dual({})) != {}", self.labels[i], self.labels[i])));
        }
        self.unit
            .iter()
            .find(|&&u| self.dual[u] != u)
            .map(|&u| (vec![u], format!("unit summand {} is not self-dual", self.labels[u])))
    }

    fn unit_law_violation(&self) -> Option<(Vec<usize>, String)> {
        let r = self.rank();
        for j in 0..r {
            for k in 0..r {
                let expect = u64::from(j == k);
                let left: u64 = self.unit.iter().map(|&u| self.n(u, j, k)).sum();
                let right: u64 = self.unit.iter().map(|&u| self.n(j, u, k)).sum();
                if left != expect || right != expect {
                    return Some((
                        vec![j, k],
                        format!("1·{0} or {0}·1 has multiplicity {left}/{right} at {1}", self.labels[j], self.labels[k]),
                    ));
                }
            }
        }
        None
    }

    fn associativity_violation(&self) -> Option<(Vec<usize>, String)> {
        let r = self.rank();
        let mut left = vec![0u64; r];
        let mut right = vec![0u64; r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    left.iter_mut().for_each(|x| *x = 0);
                    right.iter_mut().for_each(|x| *x = 0);
                    for &(m, a) in self.product(i, j) {
                        for &(l, b) in self.product(m, k) {
                            left[l] += a * b;
                        }
                    }
                    for &(m, a) in self.product(j, k) {
                        for &(l, b) in self.product(i, m) {
                            right[l] += a * b;
                        }
                    }
                    if let Some(l) = (0..r).find(|&l| left[l] != right[l]) {
                        return Some((
                            vec![i, j, k, l],
                            format!("(x{i}·x{j})·x{k} and x{i}·(x{j}·x{k}) differ at x{l}"),
                        ));
                    }
                }
            }
        }
        None
    }

    fn reciprocity_violation(&self) -> Option<(Vec<usize>, String)> {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let n = self.n(i, j, k);
                    let a = self.n(self.dual[i], k, j);
                    let b = self.n(k, self.dual[j], i);
                    if n != a || n != b {
                        return Some((
                            vec![i, j, k],
                            format!("N_{{{i}{j}}}^{k} = {n}, N_{{{i}*{k}}}^{j} = {a}, N_{{{k}{j}*}}^{i} = {b}"),
                        ));
                    }
                }
            }
        }
        None
    }

    /// `B_{ij} = Σ_{u ∈ unit} N_{ij}^u`.
    pub fn pairing_entries(&self) -> Vec<Vec<u64>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.unit.iter().map(|&u| self.n(i, j, u)).sum())
                    .collect()
            })
            .collect()
    }

    /// Computes the rigidity pairing and checks that it is a permutation matrix matching the
    /// declared duality.
    pub fn frobenius_pairing(&self) -> Result<PairingMatrix, FusionError> {
        let b = self.pairing_entries();
        let r = self.rank();
        let mut permutation = Vec::with_capacity(r);
        let mut hit = vec![false; r];
        for (i, row) in b.iter().enumerate() {
            let weight: u64 = row.iter().sum();
            let j = row.iter().position(|&x| x == 1);
            match j {
                Some(j) if weight == 1 && !hit[j] => {
                    hit[j] = true;
                    permutation.push(j);
                }
                _ => return Err(FusionError::PerfectnessFailure(i)),
            }
        }
        if let Some(i) = (0..r).find(|&i| permutation[i] != self.dual[i]) {
            return Err(FusionError::DualMismatch {
                label: i,
                declared: self.dual[i],
                found: permutation[i],
            });
        }
        Ok(PairingMatrix { entries: b, permutation })
    }

    /// Pairs `(i, j)` with `B_{ij} != B_{ji}`; empty means the pairing is symmetric.
    pub fn pairing_symmetry_check(&self) -> Vec<(usize, usize)> {
        let b = self.pairing_entries();
        let r = self.rank();
        (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .filter(|&(i, j)| b[i][j] != b[j][i])
            .collect()
    }

    /// Left multiplication matrix of `x_i`: entry `(j, k)` is `N_{ij}^k`.
    pub fn fusion_matrix(&self, i: usize) -> DMatrix<f64> {
        let r = self.rank();
        let mut m = DMatrix::zeros(r, r);
        for j in 0..r {
            for &(k, n) in self.product(i, j) {
                m[(j, k)] = n as f64;
            }
        }
        m
    }

    /// Frobenius–Perron dimensions: the largest real eigenvalue of each fusion matrix.
    ///
    /// Unit summands are reported as exactly 1. Off-diagonal labels of a multifusion ring have
    /// nilpotent fusion matrices and get 0.
    pub fn fp_dimensions(&self) -> Result<Vec<f64>, FusionError> {
        (0..self.rank())
            .map(|i| {
                if self.unit.contains(&i) {
                    return Ok(1.0);
                }
                // QR iteration stalls on permutation matrices; a shift separates equal moduli.
                let m = self.fusion_matrix(i) + DMatrix::identity(self.rank(), self.rank()) * SHIFT;
                let schur = nalgebra::linalg::Schur::try_new(m, 1e-13, 100_000).ok_or_else(|| {
                    FusionError::Numeric(format!("eigenvalues of {} did not converge", self.labels[i]))
                })?;
                let best = schur
                    .complex_eigenvalues()
                    .iter()
                    .filter(|z| z.im.abs() <= 1e-7 * z.re.abs().max(1.0))
                    .map(|z| z.re - SHIFT)
                    .fold(f64::NEG_INFINITY, f64::max);
                if best.is_finite() {
                    Ok(best.max(0.0))
                } else {
                    Err(FusionError::Numeric(format!("no real eigenvalue for {}", self.labels[i])))
                }
            })
            .collect()
    }

    /// A label bijection `φ` with `N_{φi φj}^{φk} = N_{ij}^k`, mapping units onto units, if one
    /// exists. Backtracking over candidates with matching product profiles.
    pub fn isomorphism_to(&self, other: &Self) -> Option<Vec<usize>> {
        let r = self.rank();
        if r != other.rank() || self.unit.len() != other.unit.len() || self.entries.len() != other.entries.len() {
            return None;
        }
        let profile = |ring: &Self, i: usize| {
            let mut row: Vec<u64> = (0..r).map(|j| ring.product(i, j).iter().map(|p| p.1).sum()).collect();
            row.sort_unstable();
            (ring.unit.contains(&i), ring.dual[i] == i, row)
        };
        let mine: Vec<_> = (0..r).map(|i| profile(self, i)).collect();
        let theirs: Vec<_> = (0..r).map(|i| profile(other, i)).collect();
        let mut map = vec![usize::MAX; r];
        let mut used = vec![false; r];
        fn extend(
            a: &FusionRing,
            b: &FusionRing,
            mine: &[(bool, bool, Vec<u64>)],
            theirs: &[(bool, bool, Vec<u64>)],
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let r = a.rank();
            if i == r {
                return true;
            }
            for c in 0..r {
                if used[c] || mine[i] != theirs[c] {
                    continue;
                }
                map[i] = c;
                let consistent = (0..=i).all(|j| {
                    (0..=i).all(|k| {
                        (0..=i).all(|l| a.n(j, k, l) == b.n(map[j], map[k], map[l]))
                            && (a.dual[j] > i || b.dual[map[j]] == map[a.dual[j]])
                    })
                });
                if consistent {
                    used[c] = true;
                    if extend(a, b, mine, theirs, i + 1, map, used) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            map[i] = usize::MAX;
            false
        }
        extend(self, other, &mine, &theirs, 0, &mut map, &mut used).then_some(map)
    }

    /// `Σ_i FPdim(x_i)²`.
    pub fn global_fp_dimension(&self) -> Result<f64, FusionError> {
        Ok(self.fp_dimensions()?.iter().map(|d| d * d).sum())
    }
}

/// Ring on label pairs: `N_{(a,b)(c,d)}^{(e,f)} = N_{ac}^e N_{bd}^f`, pair `(i, j)` at index
/// `i · rank(b) + j`.
pub fn ring_product(a: &FusionRing, b: &FusionRing) -> FusionRing {
    let rb = b.rank();
    let idx = |i: usize, j: usize| i * rb + j;
    let labels = a
        .labels
        .iter()
        .flat_map(|x| b.labels.iter().map(move |y| format!("({x},{y})")))
        .collect();
    let unit = a
        .unit
        .iter()
        .flat_map(|&u| b.unit.iter().map(move |&v| idx(u, v)))
        .collect();
    let dual = (0..a.rank())
        .flat_map(|i| (0..rb).map(move |j| idx(a.dual[i], b.dual[j])))
        .collect();
    let mut fusion = Vec::new();
    for (i, k, m, x) in a.entries() {
        for (j, l, n, y) in b.entries() {
            fusion.push((idx(i, j), idx(k, l), idx(m, n), x * y));
        }
    }
    FusionRing::new(labels, unit, dual, fusion).expect("product of well-formed rings")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fibonacci() -> FusionRing {
        FusionRing::new(
            vec!["1".into(), "tau".into()],
            vec![0],
            vec![0, 1],
            [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
        )
        .unwrap()
    }

    fn with_entry(ring: &FusionRing, i: usize, j: usize, k: usize, n: u64) -> FusionRing {
        let mut e: BTreeMap<_, _> = ring.entries().map(|(a, b, c, m)| ((a, b, c), m)).collect();
        e.insert((i, j, k), n);
        FusionRing::new(
            ring.labels.clone(),
            ring.unit.clone(),
            ring.dual.clone(),
            e.into_iter().map(|((a, b, c), m)| (a, b, c, m)),
        )
        .unwrap()
    }

    fn ising() -> FusionRing {
        // 1, psi, sigma
        FusionRing::new(
            vec!["1".into(), "psi".into(), "sigma".into()],
            vec![0],
            vec![0, 1, 2],
            [
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (0, 2, 2, 1),
                (1, 0, 1, 1),
                (2, 0, 2, 1),
                (1, 1, 0, 1),
                (1, 2, 2, 1),
                (2, 1, 2, 1),
                (2, 2, 0, 1),
                (2, 2, 1, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fibonacci_passes_every_check() {
        let report = fibonacci().validate();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn removing_tau_tau_to_unit_breaks_the_pairing_at_tau() {
        let broken = with_entry(&fibonacci(), 1, 1, 0, 0);
        let report = broken.validate();
        let check = report.get("frobenius_pairing").unwrap();
        assert!(!check.passed);
        assert_eq!(check.witness, Some(vec![1, 1]));
        assert_eq!(broken.frobenius_pairing(), Err(FusionError::PerfectnessFailure(1)));
    }

    #[test]
    fn doubled_pairing_row_is_not_perfect() {
        let broken = with_entry(&fibonacci(), 1, 1, 0, 2);
        assert_eq!(broken.frobenius_pairing(), Err(FusionError::PerfectnessFailure(1)));
    }

    #[test]
    fn empty_unit_is_an_input_error() {
        let r = FusionRing::new(vec!["1".into()], vec![], vec![0], [(0, 0, 0, 1)]);
        assert!(matches!(r, Err(FusionError::Input(_))));
    }

    #[test]
    fn structural_input_errors() {
        let one = || vec!["1".to_string()];
        assert!(FusionRing::new(one(), vec![0], vec![0], [(0, 0, 1, 1)]).is_err());
        assert!(FusionRing::new(one(), vec![0, 0], vec![0], [(0, 0, 0, 1)]).is_err());
        assert!(FusionRing::new(one(), vec![0], vec![0], [(0, 0, 0, 1), (0, 0, 0, 1)]).is_err());
        assert!(FusionRing::new(vec!["a".into(), "a".into()], vec![0], vec![0, 1], []).is_err());
        assert!(FusionRing::new(one(), vec![0], vec![], [(0, 0, 0, 1)]).is_err());
    }

    #[test]
    fn pairing_permutations() {
        let fib = fibonacci().frobenius_pairing().unwrap();
        assert_eq!(fib.permutation, vec![0, 1]);
        assert_eq!(fib.entries, vec![vec![1, 0], vec![0, 1]]);
        let z3 = FusionRing::abelian_group_ring(&[3]).frobenius_pairing().unwrap();
        assert_eq!(z3.permutation, vec![0, 2, 1]);
    }

    #[test]
    fn wrong_declared_dual_is_a_mismatch() {
        let z3 = FusionRing::abelian_group_ring(&[3]);
        let bad = FusionRing::new(z3.labels.clone(), vec![0], vec![0, 1, 2], z3.entries()).unwrap();
        assert_eq!(
            bad.frobenius_pairing(),
            Err(FusionError::DualMismatch { label: 1, declared: 1, found: 2 })
        );
        assert!(bad.validate().failed("frobenius_reciprocity"));
    }

    #[test]
    fn pairing_symmetry_examples() {
        assert!(FusionRing::abelian_group_ring(&[3]).pairing_symmetry_check().is_empty());
        assert!(ising().pairing_symmetry_check().is_empty());
        assert!(ising().validate().passed());
    }

    #[test]
    fn associativity_violation_is_located() {
        // a·b = 1 but b·a = a, so (a·a)·a = a while a·(a·a) = 1
        let ring = FusionRing::new(
            vec!["1".into(), "a".into(), "b".into()],
            vec![0],
            vec![0, 1, 2],
            [
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (0, 2, 2, 1),
                (2, 0, 2, 1),
                (1, 1, 2, 1),
                (1, 2, 0, 1),
                (2, 1, 1, 1),
                (2, 2, 0, 1),
            ],
        )
        .unwrap();
        let report = ring.validate();
        assert!(report.failed("associativity"), "{report}");
    }

    #[test]
    fn fp_dimension_examples() {
        let d = fibonacci().fp_dimensions().unwrap();
        assert_eq!(d[0], 1.0);
        assert!((d[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
        let d = FusionRing::abelian_group_ring(&[2]).fp_dimensions().unwrap();
        assert!(d.iter().all(|x| (x - 1.0).abs() < 1e-10));
        let d = ising().fp_dimensions().unwrap();
        assert!((d[1] - 1.0).abs() < 1e-10 && (d[2] - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn fp_dimensions_are_a_character() {
        for ring in [fibonacci(), ising(), FusionRing::abelian_group_ring(&[2, 3])] {
            let d = ring.fp_dimensions().unwrap();
            for i in 0..ring.rank() {
                for j in 0..ring.rank() {
                    let rhs: f64 = ring.product(i, j).iter().map(|&(k, n)| n as f64 * d[k]).sum();
                    assert!((d[i] * d[j] - rhs).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn isomorphisms() {
        let fib = fibonacci();
        let swapped = FusionRing::new(
            vec!["t".into(), "one".into()],
            vec![1],
            vec![0, 1],
            [(1, 1, 1, 1), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (0, 0, 0, 1)],
        )
        .unwrap();
        assert_eq!(fib.isomorphism_to(&swapped), Some(vec![1, 0]));
        let z2 = FusionRing::abelian_group_ring(&[2]);
        assert_eq!(fib.isomorphism_to(&z2), None);
        let z4 = FusionRing::abelian_group_ring(&[4]);
        let z22 = FusionRing::abelian_group_ring(&[2, 2]);
        assert_eq!(z4.isomorphism_to(&z22), None);
        assert!(z22.isomorphism_to(&z22).is_some());
    }

    #[test]
    fn products_of_rings() {
        let z2 = FusionRing::abelian_group_ring(&[2]);
        let p = ring_product(&fibonacci(), &z2);
        assert_eq!(p.rank(), 4);
        assert_eq!(p.unit_summands(), &[0]);
        assert_eq!(p.label(0), "(1,0)");
        assert!(p.validate().passed());

        let t = ring_product(&FusionRing::trivial(), &fibonacci());
        assert_eq!(t.entries().collect::<Vec<_>>(), fibonacci().entries().collect::<Vec<_>>());

        // (τ⊠τ)² = (1+τ)⊠(1+τ): four summands with multiplicity one each
        let ff = ring_product(&fibonacci(), &fibonacci());
        assert_eq!(ff.product(3, 3), &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert!(ff.validate().passed());
    }

    #[test]
    fn json_round_trip_and_duplicate_rejection() {
        let fib = fibonacci();
        let s = serde_json::to_string(&fib).unwrap();
        assert_eq!(
            s,
            r#"{"labels":["1","tau"],"unit":[0],"dual":[0,1],"fusion":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1],[1,1,1,1]]}"#
        );
        let back: FusionRing = serde_json::from_str(&s).unwrap();
        assert_eq!(back, fib);
        let dup = r#"{"labels":["1"],"unit":[0],"dual":[0],"fusion":[[0,0,0,1],[0,0,0,1]]}"#;
        assert!(serde_json::from_str::<FusionRing>(dup).is_err());
    }
}
