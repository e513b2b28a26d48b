//! The property-suite runner behind `hlf props`.
//!
//! Every suite draws from its own labeled substream of the configured seed,
//! so reports are byte-identical for identical (seed, config) and adding a
//! suite never perturbs the others. On failure the report carries the first
//! counterexample and a replay command that re-runs exactly that suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

use hlf::gen::{self, NetProfile, Rng};
use hlf::{
    add, archimedean_seminorm, bounded_sup_difference, c_seminorm, classify, convergence_check,
    gauge_eval, invlex_compare, min_plus_convolve, mul, nets_equal_on_window, pair, partial_sum,
    polar_membership, product_seminorm, projection, reconstruct_handle, scalar_mul, seminorm_eval,
    val_p, window_corroborate, ExtInt, FieldShape, LaurentElement, MultiIndex, NetKind,
    PolarCertificate, QExp, RhoSpec, RhoValue, SeriesGenerator, Window,
};

use crate::config::SuiteConfig;

pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
    pub notes: Vec<(String, String)>,
}

impl SuiteOutcome {
    fn pass(name: &'static str, cases: usize) -> Self {
        SuiteOutcome {
            name,
            cases,
            failure: None,
            notes: Vec::new(),
        }
    }

    fn fail(name: &'static str, cases: usize, failure: String) -> Self {
        SuiteOutcome {
            name,
            cases,
            failure: Some(failure),
            notes: Vec::new(),
        }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "extint-laws",
    "invlex-order",
    "partition-validity",
    "polar-involution",
    "polar-pointwise",
    "classification-duality",
    "classifier-window",
    "minplus-bounded",
    "ring-laws",
    "product-ultrametric",
    "member-product-bound",
    "partial-sum-monotone",
    "gauge-sup",
    "ultrametric-homogeneity",
    "membership-bridge",
    "boundedness-bridge",
    "convergence-tails",
    "pairing-laws",
    "coefficient-recovery",
    "reconstruct-roundtrip",
    "bicontinuity",
    "pseudo-polar",
    "pseudo-bipolar",
    "archimedean",
    "product-seminorm",
];

fn rng_for(cfg: &SuiteConfig, suite: &str) -> Rng {
    Rng::new(cfg.seed).substream(suite)
}

fn pick_prime(cfg: &SuiteConfig, rng: &mut Rng) -> BigInt {
    BigInt::from(cfg.primes[rng.below(cfg.primes.len() as u64) as usize])
}

fn pick_shape(cfg: &SuiteConfig, case: usize) -> FieldShape {
    cfg.shapes[case % cfg.shapes.len()]
}

fn power(p: &BigInt, e: &BigInt) -> BigRational {
    let exp = i64::try_from(e).expect("small exponents in generated nets");
    let pow = p.pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(pow)
    } else {
        BigRational::new(BigInt::one(), pow)
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<SuiteOutcome> {
    match name {
        "extint-laws" => Some(extint_laws(cfg)),
        "invlex-order" => Some(invlex_order(cfg)),
        "partition-validity" => Some(partition_validity(cfg)),
        "polar-involution" => Some(polar_involution(cfg)),
        "polar-pointwise" => Some(polar_pointwise(cfg)),
        "classification-duality" => Some(classification_duality(cfg)),
        "classifier-window" => Some(classifier_window(cfg)),
        "minplus-bounded" => Some(minplus_bounded(cfg)),
        "ring-laws" => Some(ring_laws(cfg)),
        "product-ultrametric" => Some(product_ultrametric(cfg)),
        "member-product-bound" => Some(member_product_bound(cfg)),
        "partial-sum-monotone" => Some(partial_sum_monotone(cfg)),
        "gauge-sup" => Some(gauge_sup(cfg)),
        "ultrametric-homogeneity" => Some(ultrametric_homogeneity(cfg)),
        "membership-bridge" => Some(membership_bridge(cfg)),
        "boundedness-bridge" => Some(boundedness_bridge(cfg)),
        "convergence-tails" => Some(convergence_tails(cfg)),
        "pairing-laws" => Some(pairing_laws(cfg)),
        "coefficient-recovery" => Some(coefficient_recovery(cfg)),
        "reconstruct-roundtrip" => Some(reconstruct_roundtrip(cfg)),
        "bicontinuity" => Some(bicontinuity(cfg)),
        "pseudo-polar" => Some(pseudo_polar(cfg)),
        "pseudo-bipolar" => Some(pseudo_bipolar(cfg)),
        "archimedean" => Some(archimedean(cfg)),
        "product-seminorm" => Some(product_seminorm_suite(cfg)),
        _ => None,
    }
}

/// Runs the selected suites and assembles the line-oriented report.
/// Returns (report, all_passed).
pub fn run_all(cfg: &SuiteConfig, config_path: &str, only: Option<&str>) -> (String, bool) {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(&v);
        out.push('\n');
    };
    line("seed", cfg.seed.to_string());
    line("cases", cfg.cases.to_string());
    line("window", cfg.window.to_string());
    let mut failures = 0usize;
    let mut run = 0usize;
    for name in SUITE_NAMES {
        if let Some(filter) = only {
            if filter != *name {
                continue;
            }
        }
        let outcome = run_suite(name, cfg).expect("suite names are exhaustive");
        run += 1;
        line("suite", outcome.name.to_string());
        line("suite-cases", outcome.cases.to_string());
        for (k, v) in &outcome.notes {
            line(k, v.clone());
        }
        match &outcome.failure {
            None => line("suite-result", "pass".to_string()),
            Some(counterexample) => {
                failures += 1;
                line("suite-result", "FAIL".to_string());
                line("counterexample", counterexample.clone());
                line(
                    "replay",
                    format!("hlf props --config {config_path} --only {}", outcome.name),
                );
            }
        }
    }
    line("suites-run", run.to_string());
    line("failures", failures.to_string());
    line(
        "verdict",
        if failures == 0 {
            "pass".to_string()
        } else {
            "FAIL".to_string()
        },
    );
    (out, failures == 0)
}

fn extint_laws(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "extint-laws";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    let pool = [
        ExtInt::NegInf,
        ExtInt::fin(-3),
        ExtInt::zero(),
        ExtInt::fin(7),
        ExtInt::PosInf,
    ];
    for case in 0..cfg.cases {
        let a = &pool[rng.below(pool.len() as u64) as usize];
        let b = &pool[rng.below(pool.len() as u64) as usize];
        let c = &pool[rng.below(pool.len() as u64) as usize];
        cases += 1;
        if a.checked_add(b).ok() != b.checked_add(a).ok() {
            return SuiteOutcome::fail(
                name,
                cases,
                format!("case {case}: {a} + {b} not commutative"),
            );
        }
        let left = a.checked_add(b).and_then(|x| x.checked_add(c));
        let right = b.checked_add(c).and_then(|x| a.checked_add(&x));
        if let (Ok(l), Ok(r)) = (&left, &right) {
            if l != r {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: associativity broke on ({a}, {b}, {c})"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn invlex_order(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "invlex-order";
    let mut cases = 0;
    for &d in cfg.dims.iter().filter(|d| **d <= 3) {
        let radius = 2i64;
        let window = Window::radius(d, radius);
        let points: Vec<Vec<i64>> = window.iter().collect();
        let oracle = |a: &[i64], b: &[i64]| -> Ordering {
            for l in (0..d).rev() {
                if a[l] != b[l] {
                    return a[l].cmp(&b[l]);
                }
            }
            Ordering::Equal
        };
        for a in &points {
            for b in &points {
                cases += 1;
                let ia = MultiIndex::from_i64(a);
                let ib = MultiIndex::from_i64(b);
                let sym = invlex_compare(&ia, &ib).unwrap();
                if sym != oracle(a, b) {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("order oracle disagrees on {a:?}, {b:?}"),
                    );
                }
                if sym.reverse() != invlex_compare(&ib, &ia).unwrap() {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("antisymmetry broke on {a:?}, {b:?}"),
                    );
                }
                // negation reverses the order
                if sym != invlex_compare(&ib.negated(), &ia.negated()).unwrap() {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("negation anti-isomorphism broke on {a:?}, {b:?}"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn partition_validity(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "partition-validity";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    let mut rejected = 0usize;
    for _ in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let net = gen::gen_net(&mut rng, d, NetProfile::full());
            if !net.is_valid_partition() {
                rejected += 1;
            }
        }
    }
    let mut outcome = if rejected == 0 {
        SuiteOutcome::pass(name, cases)
    } else {
        SuiteOutcome::fail(
            name,
            cases,
            format!("{rejected} generated nets failed validation"),
        )
    };
    outcome.notes.push((
        "rejection-rate".to_string(),
        format!("{}/{}", rejected, cases),
    ));
    outcome
}

fn polar_involution(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "polar-involution";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let net = gen::gen_net(&mut rng, d, NetProfile::full());
            let twice = net.pseudo_polar().pseudo_polar();
            if twice != net {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: structural involution broke (d={d})"),
                );
            }
            let radius = cfg.window.min(25);
            if let Some(diff) =
                nets_equal_on_window(&net, &twice, &Window::radius(d, radius)).unwrap()
            {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: pointwise involution broke at {diff}"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn polar_pointwise(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "polar-pointwise";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let net = gen::gen_net(&mut rng, d, NetProfile::full());
            let polar = net.pseudo_polar();
            for point in Window::radius(d, cfg.window.min(8)).iter() {
                let alpha = MultiIndex::from_i64(&point);
                let direct = polar.eval(&alpha).unwrap();
                let formula = net.eval(&alpha.negated()).unwrap().one_minus();
                if direct != formula {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!(
                            "case {case}: polar({alpha}) = {direct} but 1 - net(-a) = {formula}"
                        ),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn classification_duality(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "classification-duality";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        let shape = pick_shape(cfg, case);
        cases += 1;
        let lattice_side = gen::gen_net(&mut rng, shape.dim(), NetProfile::lattice_side());
        let forward = hlf::classify_open_lattice(&lattice_side, &shape)
            .unwrap()
            .holds;
        let dual = hlf::classify_compactoid(&lattice_side.pseudo_polar(), &shape)
            .unwrap()
            .holds;
        if forward != dual {
            return SuiteOutcome::fail(
                name,
                cases,
                format!("case {case}: lattice {forward} but dual compactoid {dual}"),
            );
        }
        let bounded_side = gen::gen_net(&mut rng, shape.dim(), NetProfile::bounded_side());
        let forward = hlf::classify_compactoid(&bounded_side, &shape)
            .unwrap()
            .holds;
        let dual = hlf::classify_open_lattice(&bounded_side.pseudo_polar(), &shape)
            .unwrap()
            .holds;
        if forward != dual {
            return SuiteOutcome::fail(
                name,
                cases,
                format!("case {case}: compactoid {forward} but dual lattice {dual}"),
            );
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn classifier_window(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "classifier-window";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        let shape = pick_shape(cfg, case);
        for kind in [NetKind::OpenLattice, NetKind::Bounded, NetKind::Compactoid] {
            let profile = match kind {
                NetKind::OpenLattice => NetProfile::lattice_side(),
                _ => NetProfile::bounded_side(),
            };
            let raw = gen::gen_net(&mut rng, shape.dim(), profile);
            let repaired = gen::gen_classified_net(&mut rng, &shape, kind);
            for net in [&raw, &repaired] {
                cases += 1;
                let verdict = classify(net, &shape, kind).unwrap();
                let result = window_corroborate(net, &shape, kind, cfg.window).unwrap();
                if verdict.holds && result.is_counterexample() {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("case {case}: window refuted a true {kind} verdict: {result}"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn minplus_bounded(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "minplus-bounded";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    let small: Vec<&FieldShape> = cfg.shapes.iter().filter(|s| s.dim() <= 2).collect();
    if small.is_empty() {
        return SuiteOutcome::pass(name, 0);
    }
    for case in 0..cfg.cases.min(24) {
        let shape = small[case % small.len()];
        cases += 1;
        let b1 = gen::gen_classified_net(&mut rng, shape, NetKind::Bounded);
        let b2 = gen::gen_classified_net(&mut rng, shape, NetKind::Bounded);
        let window = Window::radius(shape.dim(), 3);
        let table = min_plus_convolve(&b1, &b2, &window).unwrap();
        let reach = 25i64;
        for (point, value) in table.iter() {
            if *value == ExtInt::NegInf {
                return SuiteOutcome::fail(name, cases, format!("case {case}: -inf at {point:?}"));
            }
            let mut best = ExtInt::PosInf;
            for beta in Window::new(vec![-reach; shape.dim()], vec![reach; shape.dim()]).iter() {
                let gamma: Vec<i64> = point.iter().zip(&beta).map(|(a, b)| a - b).collect();
                let v1 = b1.eval(&MultiIndex::from_i64(&beta)).unwrap();
                let v2 = b2.eval(&MultiIndex::from_i64(&gamma)).unwrap();
                if let Ok(sum) = v1.checked_add(&v2) {
                    if sum < best {
                        best = sum;
                    }
                }
            }
            if value != &best {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!(
                        "case {case}: at {point:?} table has {value} but enumeration gives {best}"
                    ),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn ring_laws(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "ring-laws";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let x = gen::gen_element(&mut rng, d, &p);
            let y = gen::gen_element(&mut rng, d, &p);
            let z = gen::gen_element(&mut rng, d, &p);
            let checks = [
                add(&x, &y).unwrap() == add(&y, &x).unwrap(),
                add(&add(&x, &y).unwrap(), &z).unwrap() == add(&x, &add(&y, &z).unwrap()).unwrap(),
                mul(&x, &y).unwrap() == mul(&y, &x).unwrap(),
                mul(&mul(&x, &y).unwrap(), &z).unwrap() == mul(&x, &mul(&y, &z).unwrap()).unwrap(),
                mul(&x, &add(&y, &z).unwrap()).unwrap()
                    == add(&mul(&x, &y).unwrap(), &mul(&x, &z).unwrap()).unwrap(),
            ];
            if let Some(i) = checks.iter().position(|ok| !ok) {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: ring law {i} broke (d={d}, p={p})"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn product_ultrametric(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "product-ultrametric";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let x = gen::gen_element(&mut rng, d, &p);
            let y = gen::gen_element(&mut rng, d, &p);
            let product = mul(&x, &y).unwrap();
            for (alpha, coeff) in product.terms() {
                let mut bound = ExtInt::PosInf;
                for (beta, xb) in x.terms() {
                    let gamma = MultiIndex::new(
                        alpha
                            .coords()
                            .iter()
                            .zip(beta.coords())
                            .map(|(a, b)| a - b)
                            .collect(),
                    );
                    let sum = val_p(xb, &p)
                        .checked_add(&val_p(&y.coeff(&gamma), &p))
                        .unwrap();
                    if sum < bound {
                        bound = sum;
                    }
                }
                if val_p(coeff, &p) < bound {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("case {case}: coefficient at {alpha} beats the valuation bound"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn member_product_bound(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "member-product-bound";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    let small: Vec<&FieldShape> = cfg.shapes.iter().filter(|s| s.dim() <= 2).collect();
    if small.is_empty() {
        return SuiteOutcome::pass(name, 0);
    }
    for case in 0..cfg.cases {
        let shape = small[case % small.len()];
        cases += 1;
        let p = pick_prime(cfg, &mut rng);
        let b1 = gen::gen_classified_net(&mut rng, shape, NetKind::Bounded);
        let b2 = gen::gen_classified_net(&mut rng, shape, NetKind::Bounded);
        let sample = Window::radius(shape.dim(), 5);
        let x = gen::gen_element_in_net(&mut rng, &b1, &p, &sample);
        let y = gen::gen_element_in_net(&mut rng, &b2, &p, &sample);
        let product = mul(&x, &y).unwrap();
        let Some(window) = product.support_window(1) else {
            continue;
        };
        let table = min_plus_convolve(&b1, &b2, &window).unwrap();
        for (alpha, coeff) in product.terms() {
            let point = alpha.to_i64().unwrap();
            if val_p(coeff, &p).cmp(table.get(&point)) == Ordering::Less {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!(
                        "case {case}: product coefficient at {alpha} escapes the convolution net"
                    ),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn partial_sum_monotone(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "partial-sum-monotone";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in cfg.dims.iter().filter(|d| **d <= 2) {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let element = gen::gen_element(&mut rng, d, &p);
            let g =
                SeriesGenerator::table(d, p, element.terms().map(|(i, c)| (i.clone(), c.clone())));
            let window = Window::radius(d, 7);
            let mut cuts: Vec<MultiIndex> = (0..3)
                .map(|_| {
                    MultiIndex::from_i64(&(0..d).map(|_| rng.range(-7, 7)).collect::<Vec<_>>())
                })
                .collect();
            cuts.sort();
            for pairing in cuts.windows(2) {
                let small = partial_sum(&g, &pairing[0], &window).unwrap();
                let large = partial_sum(&g, &pairing[1], &window).unwrap();
                for (index, coeff) in small.terms() {
                    if &large.coeff(index) != coeff {
                        return SuiteOutcome::fail(
                            name,
                            cases,
                            format!("case {case}: partial sums lost the term at {index}"),
                        );
                    }
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn gauge_sup(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "gauge-sup";
    let sabotaged = cfg.sabotage.as_deref() == Some(name);
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        let shape = pick_shape(cfg, case);
        cases += 1;
        let p = pick_prime(cfg, &mut rng);
        let net = gen::gen_classified_net(&mut rng, &shape, NetKind::OpenLattice);
        let x = gen::gen_element(&mut rng, shape.dim(), &p);
        let direct = seminorm_eval(&net, &x).unwrap();
        let mut gauge = gauge_eval(&net, &x).unwrap();
        if sabotaged {
            // test fixture: shift the oracle so the disagreement is caught
            gauge = gauge.shifted(&BigInt::one());
        }
        if direct != gauge {
            return SuiteOutcome::fail(
                name,
                cases,
                format!(
                    "case {case}: supremum formula gives {direct} but gauge search gives {gauge}"
                ),
            );
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn ultrametric_homogeneity(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "ultrametric-homogeneity";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let net = gen::gen_net(&mut rng, d, NetProfile::lattice_side());
            let x = gen::gen_element(&mut rng, d, &p);
            let y = gen::gen_element(&mut rng, d, &p);
            let nx = seminorm_eval(&net, &x).unwrap();
            let ny = seminorm_eval(&net, &y).unwrap();
            let nsum = seminorm_eval(&net, &add(&x, &y).unwrap()).unwrap();
            let max = nx.clone().max(ny.clone());
            if nsum > max {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: ||x+y|| exceeded max"),
                );
            }
            if nx != ny && nsum != max {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: strict ultrametric equality broke"),
                );
            }
            let exp = rng.range(-4, 4);
            let c = gen::gen_coefficient(&mut rng, &p, exp);
            let shifted = seminorm_eval(&net, &scalar_mul(&c, &x)).unwrap();
            let delta = -val_p(&c, &p).as_fin().unwrap().clone();
            if shifted != nx.shifted(&delta) {
                return SuiteOutcome::fail(name, cases, format!("case {case}: homogeneity broke"));
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn membership_bridge(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "membership-bridge";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let net = gen::gen_net(&mut rng, d, NetProfile::lattice_side());
            let x = gen::gen_element(&mut rng, d, &p);
            let member = x.in_net(&net).unwrap();
            let bounded = seminorm_eval(&net, &x).unwrap() <= QExp::from_exponent(0);
            if member != bounded {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: membership {member} but exponent-at-most-zero {bounded}"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn boundedness_bridge(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "boundedness-bridge";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        let shape = pick_shape(cfg, case);
        cases += 1;
        let p = pick_prime(cfg, &mut rng);
        let n_net = gen::gen_classified_net(&mut rng, &shape, NetKind::OpenLattice);
        let k_net = gen::gen_classified_net(&mut rng, &shape, NetKind::Bounded);
        let result = bounded_sup_difference(&n_net, &k_net).unwrap();
        if result.sup == ExtInt::PosInf {
            return SuiteOutcome::fail(
                name,
                cases,
                format!("case {case}: difference unbounded above"),
            );
        }
        let sample = Window::radius(shape.dim(), 6);
        for _ in 0..4 {
            let x = gen::gen_element_in_net(&mut rng, &k_net, &p, &sample);
            if seminorm_eval(&n_net, &x).unwrap().exponent() > &result.sup {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: member escaped the bound"),
                );
            }
        }
        if let (ExtInt::Fin(sup), Some(at)) = (&result.sup, &result.attained_at) {
            if let ExtInt::Fin(k_val) = k_net.eval(at).unwrap() {
                let witness = LaurentElement::monomial(p.clone(), at.clone(), power(&p, &k_val));
                let attained = seminorm_eval(&n_net, &witness).unwrap();
                if attained.exponent() != &ExtInt::Fin(sup.clone()) {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("case {case}: witness monomial did not attain the supremum"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn convergence_tails(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "convergence-tails";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    // shapes whose last coordinate is of ((.)) kind, so the order cofinally
    // exhausts the window along a series axis
    let tails: Vec<&FieldShape> = cfg.shapes.iter().filter(|s| s.r() < s.dim()).collect();
    if tails.is_empty() {
        return SuiteOutcome::pass(name, 0);
    }
    for case in 0..cfg.cases {
        let shape = tails[case % tails.len()];
        if shape.dim() > 2 {
            continue;
        }
        cases += 1;
        let p = pick_prime(cfg, &mut rng);
        let net = gen::gen_classified_net(&mut rng, shape, NetKind::OpenLattice);
        let element = gen::gen_element(&mut rng, shape.dim(), &p);
        let g = SeriesGenerator::table(
            shape.dim(),
            p,
            element.terms().map(|(i, c)| (i.clone(), c.clone())),
        );
        let window = Window::radius(shape.dim(), 7);
        let schedule = gen::gen_schedule(&mut rng, shape.dim(), &window);
        let norms = convergence_check(&g, &net, &schedule, &window).unwrap();
        for pairing in norms.windows(2) {
            if pairing[1] > pairing[0] {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: tail norms increased"),
                );
            }
        }
        if !norms.last().unwrap().is_zero_value() {
            return SuiteOutcome::fail(
                name,
                cases,
                format!("case {case}: tail norm never reached 0"),
            );
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn pairing_laws(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "pairing-laws";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let x = gen::gen_element(&mut rng, d, &p);
            let xx = gen::gen_element(&mut rng, d, &p);
            let y = gen::gen_element(&mut rng, d, &p);
            if pair(&x, &y).unwrap() != pair(&y, &x).unwrap() {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: pairing not symmetric"),
                );
            }
            let lhs = pair(&add(&x, &xx).unwrap(), &y).unwrap();
            let rhs = pair(&x, &y).unwrap() + pair(&xx, &y).unwrap();
            if lhs != rhs {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: pairing not additive"),
                );
            }
            let exp = rng.range(-2, 2);
            let c = gen::gen_coefficient(&mut rng, &p, exp);
            if pair(&scalar_mul(&c, &x), &y).unwrap() != c * pair(&x, &y).unwrap() {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: pairing not homogeneous"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn coefficient_recovery(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "coefficient-recovery";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in cfg.dims.iter().filter(|d| **d <= 2) {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let x = gen::gen_element(&mut rng, d, &p);
            let handle = hlf::gamma(&x);
            for point in Window::radius(d, 6).iter() {
                let alpha = MultiIndex::from_i64(&point);
                let recovered = handle.apply_monomial(&alpha.negated()).unwrap();
                if recovered != projection(&alpha, &x).unwrap() {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("case {case}: recovery failed at {alpha}"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn reconstruct_roundtrip(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "reconstruct-roundtrip";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in &cfg.dims {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let x = gen::gen_element(&mut rng, d, &p);
            let window = x.support_window(1).unwrap_or_else(|| Window::radius(d, 1));
            let rebuilt = reconstruct_handle(&hlf::gamma(&x), &window).unwrap();
            if rebuilt != x
                || hlf::json::element_to_json(&rebuilt) != hlf::json::element_to_json(&x)
            {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: round trip was not byte-exact"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn bicontinuity(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "bicontinuity";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        let shape = pick_shape(cfg, case);
        cases += 1;
        let p = pick_prime(cfg, &mut rng);
        let b = gen::gen_classified_net(&mut rng, &shape, NetKind::Compactoid);
        let x = gen::gen_element(&mut rng, shape.dim(), &p);
        let closed = c_seminorm(&x, &b, &shape).unwrap();
        if !closed.compactoid {
            return SuiteOutcome::fail(
                name,
                cases,
                format!("case {case}: repaired net not flagged compactoid"),
            );
        }
        let via = seminorm_eval(&b.negated_reflection(), &x).unwrap();
        if closed.value != via {
            return SuiteOutcome::fail(
                name,
                cases,
                format!(
                    "case {case}: closed form {} but reflected seminorm {via}",
                    closed.value
                ),
            );
        }
        for point in Window::radius(shape.dim(), 4).iter() {
            let alpha = MultiIndex::from_i64(&point);
            let ExtInt::Fin(k) = b.eval(&alpha).unwrap() else {
                continue;
            };
            let y = LaurentElement::monomial(p.clone(), alpha, power(&p, &k));
            let value = pair(&x, &y).unwrap();
            if value.is_zero() {
                continue;
            }
            let exponent = -val_p(&value, &p).as_fin().unwrap();
            if &ExtInt::Fin(exponent) > closed.value.exponent() {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: sampled pairing exceeded the closed form"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn pseudo_polar(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "pseudo-polar";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in cfg.dims.iter().filter(|d| **d <= 2) {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let y = gen::gen_element(&mut rng, d, &p);
            let a_net = gen::gen_net(&mut rng, d, NetProfile::full());
            let result = polar_membership(&y, &a_net).unwrap();
            if result.member {
                for point in Window::radius(d, 4).iter() {
                    let alpha = MultiIndex::from_i64(&point);
                    let ExtInt::Fin(k) = a_net.eval(&alpha).unwrap() else {
                        continue;
                    };
                    let a = LaurentElement::monomial(p.clone(), alpha, power(&p, &k));
                    let value = pair(&y, &a).unwrap();
                    if !value.is_zero() && val_p(&value, &p) < ExtInt::fin(1) {
                        return SuiteOutcome::fail(
                            name,
                            cases,
                            format!("case {case}: member paired out of the maximal ideal"),
                        );
                    }
                }
            } else {
                let PolarCertificate::Violation {
                    witness,
                    pairing,
                    pairing_valuation,
                } = &result.certificate
                else {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("case {case}: missing certificate"),
                    );
                };
                let ok = witness.in_net(&a_net).unwrap()
                    && &pair(&y, witness).unwrap() == pairing
                    && pairing_valuation <= &ExtInt::zero()
                    && !pairing.is_zero();
                if !ok {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("case {case}: violation certificate failed"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn pseudo_bipolar(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "pseudo-bipolar";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in cfg.dims.iter().filter(|d| **d <= 2) {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let a_net = gen::gen_net(&mut rng, d, NetProfile::full());
            let double = a_net.pseudo_polar().pseudo_polar();
            for point in Window::radius(d, 3).iter() {
                let exp = rng.range(-3, 3);
                let coeff = gen::gen_coefficient(&mut rng, &p, exp);
                let y = LaurentElement::monomial(p.clone(), MultiIndex::from_i64(&point), coeff);
                if y.in_net(&a_net).unwrap() != y.in_net(&double).unwrap() {
                    return SuiteOutcome::fail(
                        name,
                        cases,
                        format!("case {case}: bipolar membership changed at {point:?}"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn archimedean(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "archimedean";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        for &d in cfg.dims.iter().filter(|d| **d <= 2) {
            cases += 1;
            let p = pick_prime(cfg, &mut rng);
            let x = gen::gen_element(&mut rng, d, &p);
            // random admissible scaling net: finite positive radii on a
            // bounded box, infinite outside
            let edge = rng.range(2, 5);
            let num = rng.range(1, 9);
            let den = rng.range(1, 9);
            let radius = BigRational::new(BigInt::from(num), BigInt::from(den));
            let mut pieces = Vec::new();
            let inner = hlf::Region::new(
                (0..d)
                    .map(|_| hlf::Interval::bounded(-edge, edge))
                    .collect(),
            );
            pieces.push((inner.clone(), RhoValue::Finite(radius.clone())));
            // complement as boxes: peel one coordinate at a time
            for m in 0..d {
                let mut lows = Vec::new();
                let mut highs = Vec::new();
                for k in 0..d {
                    use std::cmp::Ordering::*;
                    let (lo_iv, hi_iv) = match k.cmp(&m) {
                        Less => (
                            hlf::Interval::bounded(-edge, edge),
                            hlf::Interval::bounded(-edge, edge),
                        ),
                        Equal => (
                            hlf::Interval::at_most(-edge - 1),
                            hlf::Interval::at_least(edge + 1),
                        ),
                        Greater => (hlf::Interval::all(), hlf::Interval::all()),
                    };
                    lows.push(lo_iv);
                    highs.push(hi_iv);
                }
                pieces.push((hlf::Region::new(lows), RhoValue::Infinite));
                pieces.push((hlf::Region::new(highs), RhoValue::Infinite));
            }
            let rho = RhoSpec::new(d, pieces);
            if !rho.validate_partition().is_empty() || !rho.is_admissible() {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: generated scaling net invalid"),
                );
            }
            let value = archimedean_seminorm(&x, &rho).unwrap();
            // direct oracle: per-term ratios, absolute values by hand
            let mut expect = BigRational::zero();
            for (index, coeff) in x.terms() {
                if inner.contains(index) {
                    let magnitude = if coeff < &BigRational::zero() {
                        -coeff
                    } else {
                        coeff.clone()
                    };
                    let ratio = magnitude / &radius;
                    if ratio > expect {
                        expect = ratio;
                    }
                }
            }
            if value != expect {
                return SuiteOutcome::fail(
                    name,
                    cases,
                    format!("case {case}: archimedean sup {value} != direct {expect}"),
                );
            }
        }
    }
    SuiteOutcome::pass(name, cases)
}

fn product_seminorm_suite(cfg: &SuiteConfig) -> SuiteOutcome {
    let name = "product-seminorm";
    let mut rng = rng_for(cfg, name);
    let mut cases = 0;
    for case in 0..cfg.cases {
        cases += 1;
        let count = rng.below(5) + 1;
        let components: Vec<QExp> = (0..count)
            .map(|_| {
                if rng.chance(1, 4) {
                    QExp::zero_value()
                } else {
                    QExp::from_exponent(rng.range(-9, 9))
                }
            })
            .collect();
        let combined = product_seminorm(&components).unwrap();
        let expect = components.iter().max().unwrap();
        if &combined != expect {
            return SuiteOutcome::fail(
                name,
                cases,
                format!("case {case}: product seminorm is not the max"),
            );
        }
    }
    if product_seminorm(&[]).is_ok() {
        return SuiteOutcome::fail(name, cases, "empty product did not error".to_string());
    }
    SuiteOutcome::pass(name, cases)
}
