//! Built-in example categories. The JSON files under `fixtures/` are serializations of these.

use num_rational::Rational64;

use crate::category_file::CategoryFile;
use crate::fusion_ring::{ring_product, FusionRing};
use crate::modular_data::{double, ModularData};
use crate::multifusion::matrix_unit_ring;
use crate::pointed::{abelian_double, metric_modular_data, MetricGroup};
use crate::scalar::Cyclotomic;

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| (*s).to_owned()).collect()
}

fn pointed(name: &str, mg: MetricGroup, labels: &[&str], notes: &[&str]) -> CategoryFile {
    let md = metric_modular_data(&mg)
        .expect("catalog metric groups are nondegenerate")
        .relabel(strings(labels))
        .expect("one label per element");
    let mut provenance = strings(notes);
    provenance.push("S and T generated exactly from the metric group; checked by validate and the Gauss-Milgram sum".into());
    CategoryFile { name: name.into(), provenance, fusion_ring: None, modular_data: Some(md), metric_group: Some(mg) }
}

fn q(p: i64, d: i64) -> Rational64 {
    Rational64::new(p, d)
}

pub fn trivial() -> CategoryFile {
    CategoryFile {
        name: "trivial".into(),
        provenance: strings(&["rank one: S = T = (1)"]),
        fusion_ring: None,
        modular_data: Some(ModularData::trivial()),
        metric_group: Some(MetricGroup::new(vec![], vec![q(0, 1)]).expect("trivial group")),
    }
}

pub fn semion() -> CategoryFile {
    let mg = MetricGroup::new(vec![2], vec![q(0, 1), q(1, 4)]).expect("valid");
    pointed("semion", mg, &["1", "s"], &["Z2 with q(s) = 1/4"])
}

pub fn double_semion() -> CategoryFile {
    let mg = MetricGroup::new(vec![2, 2], vec![q(0, 1), q(1, 4), q(3, 4), q(0, 1)]).expect("valid");
    pointed(
        "double_semion",
        mg,
        &["1", "s", "sbar", "s sbar"],
        &["Z2 x Z2 with q = (0, 1/4, 3/4, 0); equals double(semion) up to label order"],
    )
}

pub fn toric_code() -> CategoryFile {
    let mg = abelian_double(&[2]).expect("valid");
    pointed("toric_code", mg, &["1", "e", "m", "f"], &["double of Z2: q(g, chi) = g chi / 2"])
}

pub fn d_z3() -> CategoryFile {
    let mg = abelian_double(&[3]).expect("valid");
    let labels: Vec<String> = (0..9).map(|x| format!("({},{})", x % 3, x / 3)).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    pointed("d_z3", mg, &labels, &["double of Z3: q(g, chi) = g chi / 3, labels (g, chi)"])
}

fn sqrt2() -> Cyclotomic {
    Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, -1)
}

pub fn ising_ring() -> FusionRing {
    FusionRing::new(
        strings(&["1", "psi", "sigma"]),
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
    .expect("valid")
}

pub fn ising() -> CategoryFile {
    let h = Cyclotomic::from_integer(1) / Cyclotomic::from_integer(2);
    let r = &h * sqrt2();
    let one = Cyclotomic::from_integer(1);
    let zero = Cyclotomic::zero(1).expect("valid");
    let s = vec![
        vec![h.clone(), h.clone(), r.clone()],
        vec![h.clone(), h.clone(), -r.clone()],
        vec![r.clone(), -r, zero],
    ];
    let t = vec![one.clone(), -one, Cyclotomic::zeta(16, 1)];
    let md = ModularData::new(Some(ising_ring()), 0, 16, s, t).expect("valid");
    CategoryFile {
        name: "ising".into(),
        provenance: strings(&[
            "S = (1/2)[[1,1,r],[1,1,-r],[r,-r,0]] with r = zeta8 + zeta8^-1",
            "theta = (1, -1, zeta16); checked by validate, Verlinde and the Gauss-sum oracle",
        ]),
        fusion_ring: None,
        modular_data: Some(md),
        metric_group: None,
    }
}

pub fn fibonacci_ring() -> FusionRing {
    FusionRing::new(
        strings(&["1", "tau"]),
        vec![0],
        vec![0, 1],
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
    )
    .expect("valid")
}

pub fn fibonacci() -> CategoryFile {
    let phi = Cyclotomic::from_integer(1) + Cyclotomic::zeta(5, 1) + Cyclotomic::zeta(5, 4);
    let big_d = -(Cyclotomic::zeta(4, 1) * (Cyclotomic::zeta(5, 1) - Cyclotomic::zeta(5, 4)));
    let inv = Cyclotomic::from_integer(1) / big_d;
    let s = vec![vec![inv.clone(), &inv * &phi], vec![&inv * &phi, -inv]];
    let t = vec![Cyclotomic::from_integer(1), Cyclotomic::zeta(5, 2)];
    let md = ModularData::new(Some(fibonacci_ring()), 0, 20, s, t).expect("valid");
    CategoryFile {
        name: "fibonacci".into(),
        provenance: strings(&[
            "phi = 1 + zeta5 + zeta5^4, D = -i (zeta5 - zeta5^-1) with D^2 = 2 + phi",
            "S = (1/D)[[1, phi],[phi, -1]], theta_tau = zeta5^2; checked by validate and Verlinde",
        ]),
        fusion_ring: None,
        modular_data: Some(md),
        metric_group: None,
    }
}

/// `double(base)` with a metric group when `base` has one.
pub fn doubled(base: &CategoryFile) -> CategoryFile {
    let md = base.modular_data.as_ref().expect("modular fixture");
    let d = double(md).expect("doubles of catalog data stay below the conductor cap");
    let metric_group = base
        .metric_group
        .as_ref()
        .map(|mg| mg.box_sum(&mg.reverse()).expect("valid"));
    CategoryFile {
        name: format!("double_{}", base.name),
        provenance: vec![format!(
            "{} boxed with its reverse; S is the Kronecker product, T the entrywise product",
            base.name
        )],
        fusion_ring: None,
        modular_data: Some(d),
        metric_group,
    }
}

fn ring_file(name: &str, ring: FusionRing, note: &str) -> CategoryFile {
    CategoryFile {
        name: name.into(),
        provenance: strings(&[note]),
        fusion_ring: Some(ring),
        modular_data: None,
        metric_group: None,
    }
}

pub fn m2() -> CategoryFile {
    ring_file("m2", matrix_unit_ring(2), "matrix units e_ij e_kl = delta_jk e_il, unit e11 + e22")
}

pub fn fib_plus_z2() -> CategoryFile {
    let z2 = FusionRing::abelian_group_ring(&[2]).relabel(strings(&["e", "g"])).expect("valid");
    let ring = fibonacci_ring().direct_sum(&z2).expect("disjoint labels");
    ring_file("fib_plus_z2", ring, "direct sum of the Fibonacci ring and the Z2 group ring")
}

pub fn m2_plus_trivial() -> CategoryFile {
    let t = FusionRing::trivial().relabel(strings(&["u"])).expect("valid");
    let ring = matrix_unit_ring(2).direct_sum(&t).expect("disjoint labels");
    ring_file("m2_plus_trivial", ring, "direct sum of M2 and the trivial ring")
}

pub fn m2_times_fib() -> CategoryFile {
    let ring = ring_product(&matrix_unit_ring(2), &fibonacci_ring());
    ring_file("m2_times_fib", ring, "ring product of M2 and the Fibonacci ring")
}

/// Modular fixtures that are not themselves doubles.
pub fn modular_bases() -> Vec<CategoryFile> {
    vec![trivial(), semion(), double_semion(), toric_code(), ising(), fibonacci(), d_z3()]
}

/// The full corpus in a fixed order.
pub fn all() -> Vec<CategoryFile> {
    let mut out = modular_bases();
    for name in ["trivial", "toric_code", "ising", "fibonacci", "double_semion"] {
        let base = out.iter().find(|f| f.name == name).expect("base present").clone();
        out.push(doubled(&base));
    }
    out.extend([m2(), fib_plus_z2(), m2_plus_trivial(), m2_times_fib()]);
    out
}

pub fn by_name(name: &str) -> Option<CategoryFile> {
    all().into_iter().find(|f| f.name == name)
}
