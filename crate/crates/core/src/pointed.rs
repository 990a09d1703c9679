//! Pointed modular categories as metric groups `(A, q)`.
//!
//! A finite abelian group is a product of cyclic factors; elements are tuples enumerated with
//! the first coordinate varying fastest. The quadratic form takes values in `Q/Z`, stored as
//! rationals in `[0, 1)`. The braiding pairing is `b(a, c) = q(a + c) - q(a) - q(c)`.

use std::collections::HashSet;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::fusion_ring::FusionRing;
use crate::modular_data::{CentralCharge, ModularData, ModularError};
use crate::report::{Check, ValidationReport};
use crate::scalar::{sqrt_integer, Cyclotomic};

/// Largest group order accepted by subgroup enumeration.
pub const MAX_GROUP_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointedError {
    #[error("input error: {0}")]
    Input(String),
    #[error("quadratic form is degenerate: b({0}, -) vanishes")]
    Degenerate(String),
    #[error("not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("group order {0} exceeds the enumeration limit of {MAX_GROUP_ORDER}")]
    SizeLimit(usize),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// `Z_{n_1} × … × Z_{n_s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    size: usize,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, PointedError> {
        if orders.iter().any(|&n| n == 0) {
            return Err(PointedError::Input("cyclic orders must be positive".into()));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize))
            .ok_or_else(|| PointedError::Input("group order overflows".into()))?;
        Ok(Self { orders, size })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn decode(&self, mut a: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&n| {
                let c = (a as u64) % n;
                a /= n as usize;
                c
            })
            .collect()
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.orders)
            .rev()
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + (c % n) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| (n - c) % n)
            .collect();
        self.encode(&x)
    }

    pub fn scale(&self, a: usize, k: u64) -> usize {
        let x: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c * (k % n) % n)
            .collect();
        self.encode(&x)
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> u64 {
        self.decode(a)
            .iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))))
    }

    /// Standard generators `e_i`.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.orders.len())
            .map(|i| {
                let mut c = vec![0; self.orders.len()];
                c[i] = 1;
                self.encode(&c)
            })
            .collect()
    }

    /// Comma-separated coordinates, e.g. `"1,0"`.
    pub fn key(&self, a: usize) -> String {
        self.decode(a)
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(&self, key: &str) -> Result<usize, PointedError> {
        let bad = || PointedError::Input(format!("bad element key {key:?}"));
        let coords: Vec<u64> = if key.trim().is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        if coords.len() != self.orders.len() || coords.iter().zip(&self.orders).any(|(c, n)| c >= n) {
            return Err(bad());
        }
        Ok(self.encode(&coords))
    }
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// A finite abelian group with a `Q/Z`-valued quadratic form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MetricGroupJson", into = "MetricGroupJson")]
pub struct MetricGroup {
    group: AbelianGroup,
    q: Vec<Rational64>,
}

#[derive(Serialize, Deserialize)]
struct MetricGroupJson {
    orders: Vec<u64>,
    q: serde_json::Map<String, serde_json::Value>,
}

impl TryFrom<MetricGroupJson> for MetricGroup {
    type Error = PointedError;

    fn try_from(j: MetricGroupJson) -> Result<Self, Self::Error> {
        let group = AbelianGroup::new(j.orders)?;
        let mut q = vec![None; group.order()];
        for (key, value) in &j.q {
            let a = group.parse_key(key)?;
            let text = value
                .as_str()
                .ok_or_else(|| PointedError::Input(format!("q({key}) must be a string \"p/q\"")))?;
            let v: Rational64 = text
                .trim()
                .parse()
                .map_err(|_| PointedError::Input(format!("bad rational {text:?}")))?;
            if q[a].replace(frac(v)).is_some() {
                return Err(PointedError::Input(format!("element {key} listed twice")));
            }
        }
        let q = q
            .into_iter()
            .enumerate()
            .map(|(a, v)| v.ok_or_else(|| PointedError::Input(format!("q({}) missing", group.key(a)))))
            .collect::<Result<_, _>>()?;
        Ok(MetricGroup { group, q })
    }
}

impl From<MetricGroup> for MetricGroupJson {
    fn from(m: MetricGroup) -> Self {
        let q = (0..m.group.order())
            .map(|a| (m.group.key(a), serde_json::Value::String(m.q[a].to_string())))
            .collect();
        MetricGroupJson { orders: m.group.orders.clone(), q }
    }
}

/// A subgroup given by its sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl MetricGroup {
    /// `q` lists one value per element in enumeration order; values are reduced mod 1.
    pub fn new(orders: Vec<u64>, q: Vec<Rational64>) -> Result<Self, PointedError> {
        let group = AbelianGroup::new(orders)?;
        if q.len() != group.order() {
            return Err(PointedError::Input(format!(
                "expected {} values of q, got {}",
                group.order(),
                q.len()
            )));
        }
        Ok(Self { group, q: q.into_iter().map(frac).collect() })
    }

    /// Builds `q` from a closure on coordinate tuples.
    pub fn from_fn(
        orders: Vec<u64>,
        q: impl Fn(&[u64]) -> Rational64,
    ) -> Result<Self, PointedError> {
        let group = AbelianGroup::new(orders)?;
        let values = (0..group.order()).map(|a| frac(q(&group.decode(a)))).collect();
        Ok(Self { group, q: values })
    }

    /// `(A, -q)`, the metric group of the reversed category.
    pub fn reverse(&self) -> Self {
        Self { group: self.group.clone(), q: self.q.iter().map(|&v| frac(-v)).collect() }
    }

    /// `(A ⊕ B, q_A + q_B)` indexed like the Deligne product of modular data, so that element
    /// `(a, b)` sits at `a·|B| + b`.
    pub fn box_sum(&self, other: &Self) -> Result<Self, PointedError> {
        let mut orders = other.group.orders.clone();
        orders.extend_from_slice(&self.group.orders);
        let nb = other.order();
        let q = (0..self.order() * nb).map(|x| self.q[x / nb] + other.q[x % nb]).collect();
        Self::new(orders, q)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn q(&self, a: usize) -> Rational64 {
        self.q[a]
    }

    /// `b(a, c) = q(a + c) - q(a) - q(c)` in `[0, 1)`.
    pub fn b(&self, a: usize, c: usize) -> Rational64 {
        frac(self.q[self.group.add(a, c)] - self.q[a] - self.q[c])
    }

    /// Checks the quadratic-form axioms and nondegeneracy.
    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let n = g.order();
        let mut report = ValidationReport::default();
        report.push(Check::from_violation(
            "quadratic_symmetry",
            (0..n).find(|&a| self.q[g.neg(a)] != self.q[a]).map(|a| {
                (vec![a], format!("q(-{0}) != q({0})", g.key(a)))
            }),
        ));
        let scaling = (0..n).find_map(|a| {
            (0..g.element_order(a).max(2)).find_map(|k| {
                let lhs = self.q[g.scale(a, k)];
                let rhs = frac(self.q[a] * Rational64::from_integer((k * k) as i64));
                (lhs != rhs).then(|| (vec![a, k as usize], format!("q({k}·{}) != {k}²·q", g.key(a))))
            })
        });
        report.push(Check::from_violation("quadratic_scaling", scaling));
        let gens = g.generators();
        let bilinear = (0..n).find_map(|a| {
            gens.iter().find_map(|&e| {
                (0..n).find_map(|c| {
                    let lhs = self.b(g.add(a, e), c);
                    let rhs = frac(self.b(a, c) + self.b(e, c));
                    (lhs != rhs).then(|| (vec![a, e, c], format!("b is not additive at ({}, {})", g.key(a), g.key(c))))
                })
            })
        });
        let is_bilinear = bilinear.is_none();
        report.push(Check::from_violation("bilinearity", bilinear));
        report.push(Check::from_violation(
            "nondegeneracy",
            self.radical_element(is_bilinear)
                .map(|a| (vec![a], format!("b({}, -) vanishes", g.key(a)))),
        ));
        report
    }

    /// A nonzero element orthogonal to everything, if one exists.
    fn radical_element(&self, bilinear: bool) -> Option<usize> {
        let g = &self.group;
        let probes: Vec<usize> = if bilinear { g.generators() } else { (0..g.order()).collect() };
        (1..g.order()).find(|&a| probes.iter().all(|&c| self.b(a, c).is_zero()))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical_element(false).is_none()
    }

    /// Least common denominator of the values of `q`.
    fn denominator(&self) -> u64 {
        self.q.iter().fold(1i64, |acc, v| acc.lcm(v.denom())) as u64
    }

    /// `e^{2πi x}` for `x` with denominator dividing `conductor`.
    fn phase(x: Rational64, conductor: u64) -> Cyclotomic {
        let k = (x * Rational64::from_integer(conductor as i64)).to_integer();
        Cyclotomic::zeta(conductor, k)
    }
}

fn check_quadratic(mg: &MetricGroup) -> Result<(), PointedError> {
    let report = mg.validate();
    if let Some(c) = report.failures().find(|c| c.name != "nondegeneracy") {
        return Err(PointedError::NotQuadratic(c.detail.clone().unwrap_or_default()));
    }
    if report.failed("nondegeneracy") {
        let a = report.get("nondegeneracy").and_then(|c| c.witness.clone()).unwrap_or_default();
        return Err(PointedError::Degenerate(mg.group.key(a[0])));
    }
    Ok(())
}

/// Modular data of the pointed category: `S_{ab} = e^{-2πi b(a,b)}/√|A|`, `θ_a = e^{2πi q(a)}`,
/// fusion given by the group law.
pub fn metric_modular_data(mg: &MetricGroup) -> Result<ModularData, PointedError> {
    check_quadratic(mg)?;
    let g = &mg.group;
    let n = g.order();
    let root = sqrt_integer(n as u64);
    let conductor = mg.denominator().lcm(&root.conductor());
    let inv_root = Cyclotomic::from_integer(1) / &root;
    let s = (0..n)
        .map(|a| {
            (0..n)
                .map(|c| &inv_root * MetricGroup::phase(-mg.b(a, c), conductor))
                .collect()
        })
        .collect();
    let t = (0..n).map(|a| MetricGroup::phase(mg.q[a], conductor)).collect();
    let ring = FusionRing::abelian_group_ring(g.orders());
    Ok(ModularData::new(Some(ring), 0, conductor, s, t)?)
}

/// Central charge from the Gauss–Milgram sum `Σ_a e^{2πi q(a)} = √|A| · e^{2πi c/8}`.
///
/// Works from `q` alone, without building the S-matrix.
pub fn milgram_signature(mg: &MetricGroup) -> Result<CentralCharge, PointedError> {
    check_quadratic(mg)?;
    let conductor = mg.denominator();
    let sum: Cyclotomic = mg.q.iter().map(|&v| MetricGroup::phase(v, conductor)).sum();
    let phase = sum / sqrt_integer(mg.order() as u64);
    let (k, m) = phase
        .as_root_of_unity()
        .ok_or(ModularError::NotRootOfUnity)?;
    Ok(CentralCharge::from_root_of_unity(k, m))
}

/// `G ⊕ Ĝ` with `q(g, χ) = χ(g)`; characters of `Z_n` are residues `χ` acting by `g ↦ χg/n`.
pub fn abelian_double(orders: &[u64]) -> Result<MetricGroup, PointedError> {
    let s = orders.len();
    let mut all = orders.to_vec();
    all.extend_from_slice(orders);
    MetricGroup::from_fn(all, |x| {
        (0..s).fold(Rational64::zero(), |acc, i| {
            acc + Rational64::new((x[i] * x[s + i]) as i64, orders[i] as i64)
        })
    })
}

fn closure(g: &AbelianGroup, members: &[usize], extra: usize) -> Vec<usize> {
    let mut out: HashSet<usize> = members.iter().copied().collect();
    let mut frontier: Vec<usize> = members.to_vec();
    if frontier.is_empty() {
        frontier.push(0);
        out.insert(0);
    }
    let mut shift = extra;
    while !out.contains(&shift) {
        for &h in &frontier {
            out.insert(g.add(h, shift));
        }
        shift = g.add(shift, extra);
    }
    let mut v: Vec<usize> = out.into_iter().collect();
    v.sort_unstable();
    v
}

/// All subgroups `L` with `q|_L = 0` and `|L|² = |A|`, sorted by element lists.
///
/// Grows isotropic subgroups one isotropic, orthogonal generator at a time and keeps the
/// maximal ones of the right size.
pub fn lagrangian_subgroups(mg: &MetricGroup) -> Result<Vec<Subgroup>, PointedError> {
    let g = &mg.group;
    let n = g.order();
    if n > MAX_GROUP_ORDER {
        return Err(PointedError::SizeLimit(n));
    }
    let root = (n as f64).sqrt().round() as usize;
    if root * root != n {
        return Ok(Vec::new());
    }
    let isotropic: Vec<usize> = (1..n).filter(|&a| mg.q[a].is_zero()).collect();
    let mut found = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut level: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], Vec::new())];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (members, gens) in level {
            if members.len() == root {
                found.push(Subgroup { elements: members });
                continue;
            }
            for &a in &isotropic {
                if members.binary_search(&a).is_ok() || gens.iter().any(|&h| !mg.b(a, h).is_zero()) {
                    continue;
                }
                let grown = closure(g, &members, a);
                if grown.len() > root || !seen.insert(grown.clone()) {
                    continue;
                }
                let mut gs = gens.clone();
                gs.push(a);
                next.push((grown, gs));
            }
        }
        level = next;
    }
    found.sort();
    Ok(found)
}

/// Indicator vector of a subgroup over all group elements.
pub fn indicator(mg: &MetricGroup, sub: &Subgroup) -> Vec<u64> {
    let mut v = vec![0; mg.order()];
    for &a in &sub.elements {
        v[a] = 1;
    }
    v
}

/// Whether `order` is a perfect square.
pub fn is_perfect_square(order: usize) -> bool {
    let r = (order as f64).sqrt().round() as usize;
    r * r == order
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn keys(&self, g: &AbelianGroup) -> Vec<String> {
        self.elements.iter().map(|&a| g.key(a)).collect()
    }
}
