//! Exact modular data `(S, T)` over a cyclotomic field.
//!
//! Conventions are the unitary ones: `S` is symmetric and unitary with `S_{0i}/S_{00} = d_i > 0`,
//! `D = 1/S_{00}`, twists are `θ_i = T_i/T_0`, `S² = C` is the charge-conjugation permutation
//! and `(ST)³ = (τ₊/D)·S²` with `τ± = Σ_i d_i² θ_i^{±1}`. The central charge is read off
//! `τ₊/D = e^{2πic/8}` and is therefore only known modulo 8.

use std::borrow::Cow;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::fusion_ring::{ring_product, FusionError, FusionRing};
use crate::report::{Check, ValidationReport};
use crate::scalar::{Cyclotomic, ScalarError};

/// Default threshold for the numeric positivity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModularError {
    #[error("input error: {0}")]
    Input(String),
    #[error("S-matrix is not invertible")]
    NonModular,
    #[error("Verlinde coefficient N_({i},{j})^{k} is not a non-negative integer")]
    NonIntegralVerlinde { i: usize, j: usize, k: usize },
    #[error("Gauss sums violate τ₊·τ₋ = D²")]
    GaussIdentityFailure,
    #[error("τ₊/D is not a root of unity")]
    NotRootOfUnity,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

pub type Matrix = Vec<Vec<Cyclotomic>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModularDataJson", into = "ModularDataJson")]
pub struct ModularData {
    labels: Vec<String>,
    ring: Option<FusionRing>,
    unit: usize,
    conductor: u64,
    s: Matrix,
    t: Vec<Cyclotomic>,
    thetas: Vec<Cyclotomic>,
}

#[derive(Serialize, Deserialize)]
struct ModularDataJson {
    ring: Option<FusionRing>,
    unit: usize,
    conductor: u64,
    #[serde(rename = "S")]
    s: Matrix,
    #[serde(rename = "T")]
    t: Vec<Cyclotomic>,
}

impl TryFrom<ModularDataJson> for ModularData {
    type Error = ModularError;

    fn try_from(j: ModularDataJson) -> Result<Self, Self::Error> {
        ModularData::new(j.ring, j.unit, j.conductor, j.s, j.t)
    }
}

impl From<ModularData> for ModularDataJson {
    fn from(m: ModularData) -> Self {
        ModularDataJson { ring: m.ring, unit: m.unit, conductor: m.conductor, s: m.s, t: m.t }
    }
}

fn input(msg: impl Into<String>) -> ModularError {
    ModularError::Input(msg.into())
}

fn lift(x: Cyclotomic, conductor: u64, what: impl Fn() -> String) -> Result<Cyclotomic, ModularError> {
    if conductor % x.conductor() == 0 {
        return Ok(x.embed(conductor)?);
    }
    match x.to_rational() {
        Some(q) => Ok(Cyclotomic::from_rational(&q).embed(conductor)?),
        None => Err(input(format!("{} does not lie in Q(ζ_{conductor})", what()))),
    }
}

impl ModularData {
    /// Builds modular data, embedding every entry into `Q(ζ_conductor)`.
    ///
    /// A supplied ring must have the same rank and the simple unit `{unit}`.
    pub fn new(
        ring: Option<FusionRing>,
        unit: usize,
        conductor: u64,
        s: Matrix,
        t: Vec<Cyclotomic>,
    ) -> Result<Self, ModularError> {
        let r = t.len();
        if r == 0 {
            return Err(input("modular data needs at least one label"));
        }
        if s.len() != r || s.iter().any(|row| row.len() != r) {
            return Err(input(format!("S must be {r}×{r} to match T")));
        }
        if unit >= r {
            return Err(input(format!("unit index {unit} out of range")));
        }
        Cyclotomic::zero(conductor)?;
        let s = s
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, x)| lift(x, conductor, || format!("S[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Matrix, _>>()?;
        let t = t
            .into_iter()
            .enumerate()
            .map(|(i, x)| lift(x, conductor, || format!("T[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if t[unit].is_zero() {
            return Err(input("T entry of the unit must be nonzero"));
        }
        let labels = match &ring {
            Some(ring) => {
                if ring.rank() != r {
                    return Err(input(format!("ring has rank {}, S has rank {r}", ring.rank())));
                }
                if ring.unit_summands() != [unit] {
                    return Err(input("modular data requires a simple unit matching `unit`"));
                }
                ring.labels().to_vec()
            }
            None => (0..r).map(|i| format!("x{i}")).collect(),
        };
        let inv_t0 = t[unit].inverse()?;
        let thetas = t.iter().map(|x| x * &inv_t0).collect();
        Ok(Self { labels, ring, unit, conductor, s, t, thetas })
    }

    /// The rank-one data of the trivial category.
    pub fn trivial() -> Self {
        let one = Cyclotomic::from_integer(1);
        Self::new(Some(FusionRing::trivial()), 0, 1, vec![vec![one.clone()]], vec![one])
            .expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ring(&self) -> Option<&FusionRing> {
        self.ring.as_ref()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn t(&self) -> &[Cyclotomic] {
        &self.t
    }

    /// Twists `θ_i = T_i / T_unit`.
    pub fn thetas(&self) -> &[Cyclotomic] {
        &self.thetas
    }

    fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.conductor).expect("conductor validated at construction")
    }

    /// Quantum dimensions `d_i = S_{0i}/S_{00}`.
    pub fn dims(&self) -> Result<Vec<Cyclotomic>, ModularError> {
        let inv = self.s[self.unit][self.unit]
            .inverse()
            .map_err(|_| ModularError::NonModular)?;
        Ok(self.s[self.unit].iter().map(|x| x * &inv).collect())
    }

    /// Total dimension `D = 1/S_{00}`.
    pub fn global_dimension(&self) -> Result<Cyclotomic, ModularError> {
        self.s[self.unit][self.unit]
            .inverse()
            .map_err(|_| ModularError::NonModular)
    }

    /// The declared fusion ring, or the one produced by the Verlinde formula.
    pub fn fusion(&self) -> Result<Cow<'_, FusionRing>, ModularError> {
        if let Some(ring) = &self.ring {
            return Ok(Cow::Borrowed(ring));
        }
        let tensor = verlinde(self)?;
        Ok(Cow::Owned(tensor.to_ring(self.labels.clone(), self.unit)?))
    }

    /// Same data with new label names; a declared ring is relabelled too.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self, ModularError> {
        if labels.len() != self.rank() {
            return Err(input("relabel needs one name per label"));
        }
        let mut out = self.clone();
        if let Some(ring) = &self.ring {
            out.ring = Some(ring.relabel(labels.clone())?);
        }
        out.labels = labels;
        Ok(out)
    }

    /// Exact equality of `S`, twists and unit position, ignoring labels and declared rings.
    pub fn same_data(&self, other: &Self) -> bool {
        self.rank() == other.rank()
            && self.unit == other.unit
            && self.s == other.s
            && self.thetas == other.thetas
    }
}

fn matmul(a: &Matrix, b: &Matrix, zero: &Cyclotomic) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = zero.clone();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = acc + &a[i][k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// The permutation encoded by a 0/1 matrix with exactly one 1 per row and column.
fn as_permutation(m: &Matrix) -> Result<Vec<usize>, usize> {
    let n = m.len();
    let mut perm = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for (i, row) in m.iter().enumerate() {
        let ones: Vec<usize> = (0..n).filter(|&j| row[j].is_one()).collect();
        let zeros = row.iter().filter(|x| x.is_zero()).count();
        match ones.as_slice() {
            [j] if zeros == n - 1 && !hit[*j] => {
                hit[*j] = true;
                perm.push(*j);
            }
            _ => return Err(i),
        }
    }
    Ok(perm)
}

fn is_invertible(m: &Matrix) -> bool {
    let mut a = m.clone();
    let n = a.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        a.swap(col, p);
        let inv = a[col][col].inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] = &a[r][c] - delta;
            }
        }
    }
    true
}

/// Dense Verlinde tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTensor {
    rank: usize,
    data: Vec<u64>,
}

impl FusionTensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.rank + j) * self.rank + k]
    }

    /// Nonzero entries in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        let r = self.rank;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(move |(idx, &n)| (idx / (r * r), idx / r % r, idx % r, n))
    }

    /// First triple where the tensor and `ring` disagree.
    pub fn first_mismatch(&self, ring: &FusionRing) -> Option<(usize, usize, usize)> {
        let r = self.rank;
        if ring.rank() != r {
            return Some((0, 0, 0));
        }
        (0..r * r * r)
            .map(|idx| (idx / (r * r), idx / r % r, idx % r))
            .find(|&(i, j, k)| self.get(i, j, k) != ring.n(i, j, k))
    }

    /// Ring with simple unit `unit` and duals read off `N_{ij}^unit`.
    pub fn to_ring(&self, labels: Vec<String>, unit: usize) -> Result<FusionRing, FusionError> {
        let r = self.rank;
        let dual = (0..r)
            .map(|i| {
                (0..r).find(|&j| self.get(i, j, unit) == 1).ok_or_else(|| {
                    FusionError::Input(format!("label {i} has no dual in the Verlinde ring"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        FusionRing::new(labels, vec![unit], dual, self.entries())
    }
}

/// `N_{ij}^k = Σ_m S_{im} S_{jm} conj(S_{km}) / S_{0m}`, exactly.
///
/// The sum is first evaluated in floating point and rounded. The rounded tensor is then
/// certified exactly through `S S† = 1` and `Σ_k N_{ij}^k S_{km} = S_{jm} S_{im}/S_{0m}`, which
/// together pin down the formula's value since `S` is invertible. If rounding or the
/// certificate fails, every coefficient is evaluated exactly to locate the offending one.
pub fn verlinde(md: &ModularData) -> Result<FusionTensor, ModularError> {
    let r = md.rank();
    let u = md.unit;
    let s = &md.s;
    if s[u].iter().any(Cyclotomic::is_zero) {
        return Err(ModularError::NonModular);
    }
    let ratio: Matrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|m| &s[i][m] / &s[u][m])
                .collect()
        })
        .collect();
    if let Some(data) = numeric_verlinde(md) {
        let tensor = FusionTensor { rank: r, data };
        if certify_verlinde(md, &ratio, &tensor) {
            return Ok(tensor);
        }
    }
    exact_verlinde(md, &ratio)
}

fn numeric_verlinde(md: &ModularData) -> Option<Vec<u64>> {
    let r = md.rank();
    let s: Vec<Vec<(f64, f64)>> = md.s.iter().map(|row| row.iter().map(Cyclotomic::approx).collect()).collect();
    let u = md.unit;
    let mut data = vec![0u64; r * r * r];
    let mut v = vec![(0.0, 0.0); r];
    for i in 0..r {
        for j in 0..r {
            for m in 0..r {
                let (a, b) = s[i][m];
                let (c, d) = s[j][m];
                let (e, f) = s[u][m];
                let (pr, pi) = (a * c - b * d, a * d + b * c);
                let den = e * e + f * f;
                v[m] = ((pr * e + pi * f) / den, (pi * e - pr * f) / den);
            }
            for k in 0..r {
                let (mut re, mut im) = (0.0, 0.0);
                for m in 0..r {
                    let (x, y) = v[m];
                    let (c, d) = s[k][m];
                    re += x * c + y * d;
                    im += y * c - x * d;
                }
                let n = re.round();
                if im.abs() > 1e-6 || (re - n).abs() > 1e-6 || n < 0.0 {
                    return None;
                }
                data[(i * r + j) * r + k] = n as u64;
            }
        }
    }
    Some(data)
}

fn certify_verlinde(md: &ModularData, ratio: &Matrix, tensor: &FusionTensor) -> bool {
    let r = md.rank();
    let s = &md.s;
    let zero = md.zero();
    let conj: Matrix = s.iter().map(|row| row.iter().map(Cyclotomic::conj).collect()).collect();
    for j in 0..r {
        for k in 0..r {
            let mut acc = zero.clone();
            for m in 0..r {
                acc = acc + &s[j][m] * &conj[k][m];
            }
            if acc != Cyclotomic::from_integer(i64::from(j == k)) {
                return false;
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            let terms: Vec<(usize, u64)> = (0..r)
                .filter_map(|k| {
                    let n = tensor.get(i, j, k);
                    (n != 0).then_some((k, n))
                })
                .collect();
            for m in 0..r {
                let mut lhs = zero.clone();
                for &(k, n) in &terms {
                    lhs = lhs + Cyclotomic::from_integer(n as i64) * &s[k][m];
                }
                if lhs != &s[j][m] * &ratio[i][m] {
                    return false;
                }
            }
        }
    }
    true
}

fn exact_verlinde(md: &ModularData, ratio: &Matrix) -> Result<FusionTensor, ModularError> {
    let r = md.rank();
    let s = &md.s;
    let zero = md.zero();
    let conj: Matrix = s.iter().map(|row| row.iter().map(Cyclotomic::conj).collect()).collect();
    let mut data = vec![0u64; r * r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let mut acc = zero.clone();
                for m in 0..r {
                    acc = acc + &ratio[i][m] * &s[j][m] * &conj[k][m];
                }
                let n = acc
                    .to_integer()
                    .filter(|n| !n.is_negative())
                    .and_then(|n| n.to_u64())
                    .ok_or(ModularError::NonIntegralVerlinde { i, j, k })?;
                data[(i * r + j) * r + k] = n;
            }
        }
    }
    Ok(FusionTensor { rank: r, data })
}

/// Runs every modular axiom with the default positivity tolerance.
pub fn validate_modular(md: &ModularData) -> Result<ValidationReport, ModularError> {
    validate_modular_with_tolerance(md, DEFAULT_TOLERANCE)
}

/// Checks the modular axioms exactly; only positivity of `d_i` and `D` uses `tolerance`.
///
/// A singular `S` is an error rather than a report entry.
pub fn validate_modular_with_tolerance(
    md: &ModularData,
    tolerance: f64,
) -> Result<ValidationReport, ModularError> {
    let r = md.rank();
    let u = md.unit;
    let s = &md.s;
    let zero = md.zero();
    let mut report = ValidationReport::default();

    let asym = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .find(|&(i, j)| s[i][j] != s[j][i]);
    report.push(Check::from_violation(
        "s_symmetric",
        asym.map(|(i, j)| (vec![i, j], format!("S[{i}][{j}] != S[{j}][{i}]"))),
    ));

    let s2 = matmul(s, s, &zero);
    let perm = as_permutation(&s2);
    if perm.is_err() && !is_invertible(s) {
        return Err(ModularError::NonModular);
    }
    let charge = match &perm {
        Ok(p) => (0..r)
            .find(|&i| p[p[i]] != i)
            .map(|i| (vec![i], "S² is not an involution".to_owned()))
            .or_else(|| (p[u] != u).then(|| (vec![u], "S² moves the unit".to_owned()))),
        Err(i) => Some((vec![*i], format!("row {i} of S² is not a permutation row"))),
    };
    report.push(Check::from_violation("charge_conjugation", charge));

    if s[u][u].is_zero() {
        for name in ["dimensions_real_positive", "global_dimension", "st_balancing"] {
            report.push(Check::fail(name, Some(vec![u, u]), "S_00 vanishes"));
        }
        return Ok(report);
    }
    let dims = md.dims()?;
    let bad_dim = (0..r).find(|&i| !dims[i].is_real() || dims[i].approx().0 <= tolerance);
    report.push(Check::from_violation(
        "dimensions_real_positive",
        bad_dim.map(|i| (vec![i], format!("d_{i} = {} is not a positive real", dims[i]))),
    ));

    let big_d = md.global_dimension()?;
    let sum_sq: Cyclotomic = dims.iter().map(|d| d * d).fold(zero.clone(), |a, b| a + b);
    let global = if &big_d * &big_d != sum_sq {
        Some((vec![u], "D² != Σ d_i²".to_owned()))
    } else if !big_d.is_real() || big_d.approx().0 <= tolerance {
        Some((vec![u], "D = 1/S_00 is not a positive real".to_owned()))
    } else {
        None
    };
    report.push(Check::from_violation("global_dimension", global));

    let thetas = md.thetas();
    let bad_theta = (0..r).find(|&i| md.t[i].as_root_of_unity().is_none());
    report.push(Check::from_violation(
        "twists_roots_of_unity",
        bad_theta.map(|i| (vec![i], format!("T_{i} = {} is not a root of unity", md.t[i]))),
    ));

    let duality = match &perm {
        Ok(p) => (0..r)
            .find(|&i| thetas[p[i]] != thetas[i])
            .map(|i| (vec![i, p[i]], format!("θ_{i} != θ_{}", p[i]))),
        Err(_) => Some((vec![], "no charge conjugation to compare against".to_owned())),
    };
    report.push(Check::from_violation("twist_duality", duality));

    let tau_plus: Cyclotomic = (0..r)
        .map(|i| &dims[i] * &dims[i] * &thetas[i])
        .fold(zero.clone(), |a, b| a + b);
    let tau_minus: Cyclotomic = (0..r)
        .map(|i| &dims[i] * &dims[i] * thetas[i].inverse().unwrap_or_else(|_| zero.clone()))
        .fold(zero.clone(), |a, b| a + b);
    report.push(Check::from_violation(
        "gauss_identity",
        (&tau_plus * &tau_minus != &big_d * &big_d)
            .then(|| (vec![], "τ₊·τ₋ != D²".to_owned())),
    ));

    let st: Matrix = (0..r)
        .map(|i| (0..r).map(|j| &s[i][j] * &thetas[j]).collect())
        .collect();
    let st2 = matmul(&st, &st, &zero);
    let st3 = matmul(&st2, &st, &zero);
    let scale = &tau_plus / &big_d;
    let balance = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find(|&(i, j)| st3[i][j] != &scale * &s2[i][j]);
    report.push(Check::from_violation(
        "st_balancing",
        balance.map(|(i, j)| (vec![i, j], format!("(ST)³ != (τ₊/D)·S² at ({i}, {j})"))),
    ));

    match verlinde(md) {
        Ok(tensor) => {
            report.push(Check::pass("verlinde_integrality"));
            if let Some(ring) = &md.ring {
                let mismatch = tensor
                    .first_mismatch(ring)
                    .map(|(i, j, k)| {
                        (vec![i, j, k], format!("Verlinde gives {}, ring declares {}", tensor.get(i, j, k), ring.n(i, j, k)))
                    })
                    .or_else(|| match &perm {
                        Ok(p) => (0..r)
                            .find(|&i| ring.dual(i) != p[i])
                            .map(|i| (vec![i], format!("declared dual of {i} is {}, S² gives {}", ring.dual(i), p[i]))),
                        Err(_) => None,
                    });
                report.push(Check::from_violation("verlinde_matches_ring", mismatch));
            }
        }
        Err(ModularError::NonIntegralVerlinde { i, j, k }) => report.push(Check::fail(
            "verlinde_integrality",
            Some(vec![i, j, k]),
            format!("N_({i},{j})^{k} is not a non-negative integer"),
        )),
        Err(e) => report.push(Check::fail("verlinde_integrality", None, e.to_string())),
    }
    Ok(report)
}

/// Gauss sums and the total dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussSums {
    pub plus: Cyclotomic,
    pub minus: Cyclotomic,
    pub global_dimension: Cyclotomic,
}

/// `τ± = Σ_i d_i² θ_i^{±1}`, checked against `τ₊τ₋ = D²`.
pub fn gauss_sums(md: &ModularData) -> Result<GaussSums, ModularError> {
    let dims = md.dims()?;
    let zero = md.zero();
    let mut plus = zero.clone();
    let mut minus = zero;
    for (d, theta) in dims.iter().zip(md.thetas()) {
        let sq = d * d;
        plus = plus + &sq * theta;
        minus = minus + sq * theta.inverse()?;
    }
    let global_dimension = md.global_dimension()?;
    if &plus * &minus != &global_dimension * &global_dimension {
        return Err(ModularError::GaussIdentityFailure);
    }
    Ok(GaussSums { plus, minus, global_dimension })
}

/// An element of `Q/8Z`, kept in `[0, 8)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralCharge(Rational64);

impl CentralCharge {
    pub fn new(value: Rational64) -> Self {
        let eight = Rational64::from_integer(8);
        let reduced = value - (value / eight).floor() * eight;
        Self(reduced)
    }

    /// `c` with `e^{2πic/8} = e^{2πik/m}`.
    pub fn from_root_of_unity(k: u64, m: u64) -> Self {
        Self::new(Rational64::new(8 * k as i64, m as i64))
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for CentralCharge {
    type Output = CentralCharge;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.0 + rhs.0)
    }
}

impl Neg for CentralCharge {
    type Output = CentralCharge;
    fn neg(self) -> Self {
        Self::new(-self.0)
    }
}

/// Central charge mod 8 from `τ₊/D = e^{2πic/8}`, with `D = 1/S_00` taken exactly from `S`.
pub fn central_charge(md: &ModularData) -> Result<CentralCharge, ModularError> {
    let dims = md.dims()?;
    let tau_plus: Cyclotomic = dims
        .iter()
        .zip(md.thetas())
        .map(|(d, theta)| d * d * theta)
        .fold(md.zero(), |a, b| a + b);
    let phase = tau_plus / md.global_dimension()?;
    let (k, m) = phase.as_root_of_unity().ok_or(ModularError::NotRootOfUnity)?;
    Ok(CentralCharge::from_root_of_unity(k, m))
}

/// Central charge from `(τ₊/D)² = τ₊/τ₋`, never dividing by `D`.
///
/// The square root's sign is fixed by the numeric argument of `τ₊`, which equals `2πc/8`
/// because `D > 0`.
pub fn central_charge_via_gauss_ratio(md: &ModularData) -> Result<CentralCharge, ModularError> {
    let dims = md.dims()?;
    let zero = md.zero();
    let mut plus = zero.clone();
    let mut minus = zero;
    for (d, theta) in dims.iter().zip(md.thetas()) {
        let sq = d * d;
        plus = plus + &sq * theta;
        minus = minus + sq * theta.inverse()?;
    }
    let (k, m) = (&plus / &minus)
        .as_root_of_unity()
        .ok_or(ModularError::NotRootOfUnity)?;
    let half = Rational64::new(4 * k as i64, m as i64);
    let (re, im) = plus.approx();
    let numeric = (im.atan2(re) / TAU * 8.0).rem_euclid(8.0);
    let candidates = [CentralCharge::new(half), CentralCharge::new(half + 4)];
    let distance = |c: &CentralCharge| {
        let d = (c.to_f64() - numeric).rem_euclid(8.0);
        d.min(8.0 - d)
    };
    Ok(candidates
        .into_iter()
        .min_by(|a, b| distance(a).total_cmp(&distance(b)))
        .expect("two candidates"))
}

/// The same category with inverse braiding: `S ↦ conj(S)`, `T ↦ conj(T)`.
pub fn reverse(md: &ModularData) -> ModularData {
    let s = md.s.iter().map(|row| row.iter().map(Cyclotomic::conj).collect()).collect();
    let t = md.t.iter().map(Cyclotomic::conj).collect();
    let mut out = ModularData::new(md.ring.clone(), md.unit, md.conductor, s, t)
        .expect("conjugate of well-formed data");
    out.labels = md.labels.clone();
    out
}

/// Deligne product: label pairs `(i, j)` at `i·rank(b) + j`, `S` the Kronecker product, `T`
/// entrywise.
pub fn box_tensor(a: &ModularData, b: &ModularData) -> Result<ModularData, ModularError> {
    let conductor = a.conductor.lcm(&b.conductor);
    Cyclotomic::zero(conductor)?;
    let (ra, rb) = (a.rank(), b.rank());
    let ring = ring_product(&*a.fusion()?, &*b.fusion()?);
    let s = (0..ra * rb)
        .map(|x| {
            (0..ra * rb)
                .map(|y| &a.s[x / rb][y / rb] * &b.s[x % rb][y % rb])
                .collect()
        })
        .collect();
    let t = (0..ra * rb).map(|x| &a.t[x / rb] * &b.t[x % rb]).collect();
    ModularData::new(Some(ring), a.unit * rb + b.unit, conductor, s, t)
}

/// `md ⊠ reverse(md)`.
pub fn double(md: &ModularData) -> Result<ModularData, ModularError> {
    box_tensor(md, &reverse(md))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_rational(&BigRational::new(p.into(), d.into()))
    }

    fn toric(thetas: [i64; 4]) -> ModularData {
        let h = q(1, 2);
        let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        let s = signs
            .iter()
            .map(|row| row.iter().map(|&x| &h * Cyclotomic::from_integer(x)).collect())
            .collect();
        let t = thetas.iter().map(|&x| Cyclotomic::from_integer(x)).collect();
        ModularData::new(None, 0, 1, s, t).unwrap()
    }

    fn semion() -> ModularData {
        let sqrt2 = Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, -1);
        let inv = Cyclotomic::from_integer(1) / sqrt2;
        let s = vec![vec![inv.clone(), inv.clone()], vec![inv.clone(), -inv]];
        ModularData::new(None, 0, 8, s, vec![Cyclotomic::from_integer(1), Cyclotomic::zeta(4, 1)])
            .unwrap()
    }

    fn fibonacci() -> ModularData {
        let phi = Cyclotomic::from_integer(1) + Cyclotomic::zeta(5, 1) + Cyclotomic::zeta(5, 4);
        // D = 2 sin(2π/5) = -i(ζ5 - ζ5^{-1})
        let big_d = -(Cyclotomic::zeta(4, 1) * (Cyclotomic::zeta(5, 1) - Cyclotomic::zeta(5, 4)));
        let inv = Cyclotomic::from_integer(1) / big_d;
        let s = vec![
            vec![inv.clone(), &inv * &phi],
            vec![&inv * &phi, -inv.clone()],
        ];
        ModularData::new(None, 0, 20, s, vec![Cyclotomic::from_integer(1), Cyclotomic::zeta(5, 2)])
            .unwrap()
    }

    #[test]
    fn toric_code_validates() {
        let report = validate_modular(&toric([1, 1, 1, -1])).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn semion_validates() {
        let report = validate_modular(&semion()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn trivial_twists_break_st_balancing() {
        let report = validate_modular(&toric([1, 1, 1, 1])).unwrap();
        assert!(report.failed("st_balancing"), "{report}");
        assert!(!report.failed("s_symmetric"));
    }

    #[test]
    fn singular_s_is_non_modular() {
        let one = Cyclotomic::from_integer(1);
        let s = vec![vec![one.clone(), one.clone()], vec![one.clone(), one.clone()]];
        let md = ModularData::new(None, 0, 1, s, vec![one.clone(), one]).unwrap();
        assert_eq!(validate_modular(&md), Err(ModularError::NonModular));
    }

    #[test]
    fn verlinde_examples() {
        let t = verlinde(&toric([1, 1, 1, -1])).unwrap();
        // Z2 × Z2 with e = (1,0), m = (0,1), f = (1,1) at indices 1, 2, 3
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(t.get(a, b, c), u64::from(a ^ b == c));
                }
            }
        }
        let f = verlinde(&fibonacci()).unwrap();
        assert_eq!((f.get(1, 1, 0), f.get(1, 1, 1)), (1, 1));
        let triv = verlinde(&ModularData::trivial()).unwrap();
        assert_eq!(triv.get(0, 0, 0), 1);
    }

    #[test]
    fn non_integral_verlinde_is_reported() {
        // symmetric, unitary, but not a modular S-matrix: rotation by 45 degrees
        let sqrt2 = Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, -1);
        let inv = Cyclotomic::from_integer(1) / &sqrt2;
        let c = &inv * (Cyclotomic::from_integer(1) + &sqrt2) / Cyclotomic::from_integer(2);
        let s = vec![vec![inv.clone(), c.clone()], vec![c, -inv]];
        let md = ModularData::new(None, 0, 8, s, vec![Cyclotomic::from_integer(1); 2]).unwrap();
        assert!(matches!(verlinde(&md), Err(ModularError::NonIntegralVerlinde { .. })));
    }

    #[test]
    fn gauss_sum_examples() {
        let g = gauss_sums(&toric([1, 1, 1, -1])).unwrap();
        assert_eq!(g.plus, Cyclotomic::from_integer(2));
        assert_eq!(g.global_dimension, Cyclotomic::from_integer(2));
        let g = gauss_sums(&semion()).unwrap();
        assert_eq!(g.plus, Cyclotomic::from_integer(1) + Cyclotomic::zeta(4, 1));
        let g = gauss_sums(&ModularData::trivial()).unwrap();
        assert!(g.plus.is_one() && g.minus.is_one() && g.global_dimension.is_one());
        assert_eq!(gauss_sums(&toric([1, 1, 1, 1])), Err(ModularError::GaussIdentityFailure));
    }

    #[test]
    fn central_charge_examples() {
        assert!(central_charge(&toric([1, 1, 1, -1])).unwrap().is_zero());
        assert_eq!(central_charge(&semion()).unwrap().to_string(), "1");
        assert_eq!(central_charge(&fibonacci()).unwrap().to_string(), "14/5");
        for md in [toric([1, 1, 1, -1]), semion(), fibonacci(), ModularData::trivial()] {
            assert_eq!(central_charge(&md).unwrap(), central_charge_via_gauss_ratio(&md).unwrap());
        }
        assert_eq!(central_charge(&toric([1, 1, 1, 1])), Err(ModularError::NotRootOfUnity));
    }

    #[test]
    fn reverse_examples() {
        let rs = reverse(&semion());
        assert_eq!(rs.thetas()[1], -Cyclotomic::zeta(4, 1));
        assert_eq!(central_charge(&rs).unwrap().to_string(), "7");
        let tc = toric([1, 1, 1, -1]);
        assert_eq!(reverse(&tc), tc);
        for md in [semion(), fibonacci(), tc] {
            assert_eq!(reverse(&reverse(&md)), md);
        }
    }

    #[test]
    fn box_tensor_examples() {
        let d = double(&semion()).unwrap();
        assert_eq!(d.rank(), 4);
        assert!(central_charge(&d).unwrap().is_zero());
        assert!(validate_modular(&d).unwrap().passed());

        let fib = fibonacci();
        let tf = box_tensor(&ModularData::trivial(), &fib).unwrap();
        assert!(tf.same_data(&fib));

        let tt = box_tensor(&toric([1, 1, 1, -1]), &toric([1, 1, 1, -1])).unwrap();
        assert_eq!(tt.rank(), 16);
        assert_eq!(tt.global_dimension().unwrap(), Cyclotomic::from_integer(4));
    }

    #[test]
    fn central_charge_is_additive() {
        let all = [semion(), fibonacci(), toric([1, 1, 1, -1]), reverse(&fibonacci())];
        for a in &all {
            for b in &all {
                let ab = box_tensor(a, b).unwrap();
                assert_eq!(
                    central_charge(&ab).unwrap(),
                    central_charge(a).unwrap() + central_charge(b).unwrap()
                );
            }
        }
    }

    #[test]
    fn central_charge_mod_eight() {
        let c = CentralCharge::new(Rational64::new(-1, 2));
        assert_eq!(c.to_string(), "15/2");
        assert_eq!((-CentralCharge::new(Rational64::from_integer(1))).to_string(), "7");
        assert!((c + CentralCharge::new(Rational64::new(1, 2))).is_zero());
    }

    #[test]
    fn entries_outside_the_field_are_rejected() {
        let s = vec![vec![Cyclotomic::zeta(8, 1)]];
        let err = ModularData::new(None, 0, 4, s, vec![Cyclotomic::from_integer(1)]);
        assert!(matches!(err, Err(ModularError::Input(_))));
    }

    #[test]
    fn json_round_trip() {
        let md = fibonacci();
        let text = serde_json::to_string(&md).unwrap();
        let back: ModularData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, md);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
