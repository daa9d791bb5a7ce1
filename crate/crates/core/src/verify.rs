//! Seeded verification suites, one per acceptance property group.
//!
//! Each suite draws its instances from [`Generator`] and checks identities
//! between independently computed quantities. Reports are deterministic for
//! a given seed and scale.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{exp_char0, exp_charp, factorize, universal_v, witt_add, GammaElement, Sign};
use crate::grassmann::{
    all_subspaces, finite_coordinates, quotient_basis, GrassPoint, MayaDiagram, Partition,
};
use crate::laurent::LaurentElement;
use crate::pairings::{
    commutator_pairing, commutator_window_bound, residue_pairing, LieElement,
};
use crate::scalars::{BaseField, CoeffRing, RingElement, RingRef, Scalar};
use crate::schur::{bosonize, duality_pair, schur, schur_in};
use crate::tau::{baker, hirota_kp_check, tau_direct, tau_schur, TauPolynomial};
use crate::testgen::Generator;

pub const SUITES: &[&str] = &[
    "tau-crosscheck",
    "vacuum",
    "factor",
    "cocycle",
    "finite",
    "exp",
    "witt",
    "pairings",
    "schur",
    "kp",
    "index",
];

/// The acceptance criterion a suite belongs to.
pub fn criterion_of(suite: &str) -> Option<u32> {
    Some(match suite {
        "tau-crosscheck" => 1,
        "vacuum" => 2,
        "factor" => 3,
        "cocycle" => 4,
        "finite" => 5,
        "exp" | "witt" => 6,
        "pairings" => 7,
        "schur" => 8,
        "kp" => 9,
        "index" => 10,
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    Full,
}

impl Scale {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            _ => Err(Error::Parse(format!("unknown scale {s:?}"))),
        }
    }

    fn pick(self, small: usize, full: usize) -> usize {
        match self {
            Scale::Small => small,
            Scale::Full => full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u32,
    pub seed: u64,
    pub scale: Scale,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.properties.iter().all(PropertyReport::ok)
    }
}

struct Tally {
    name: String,
    instances: usize,
    passed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            instances: 0,
            passed: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, outcome: Result<bool>, what: impl FnOnce() -> String) {
        self.instances += 1;
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => {
                self.first_failure.get_or_insert_with(what);
            }
            Err(e) => {
                self.first_failure.get_or_insert_with(|| format!("{}: {e}", what()));
            }
        }
    }

    fn done(self) -> PropertyReport {
        PropertyReport {
            name: self.name,
            instances: self.instances,
            passed: self.passed,
            first_failure: self.first_failure,
        }
    }
}

pub fn run_suite(name: &str, seed: u64, scale: Scale) -> Result<SuiteReport> {
    let criterion = criterion_of(name)
        .ok_or_else(|| Error::Parse(format!("unknown suite {name:?}")))?;
    let mut gen = Generator::new(seed);
    let properties = match name {
        "tau-crosscheck" => tau_crosscheck(&mut gen, scale),
        "vacuum" => vacuum(),
        "factor" => factor(&mut gen, scale),
        "cocycle" => cocycle(&mut gen, scale),
        "finite" => finite(scale),
        "exp" => exp(&mut gen, scale),
        "witt" => witt(scale),
        "pairings" => pairings(&mut gen, scale),
        "schur" => schur_suite(scale),
        "kp" => kp(&mut gen, scale),
        "index" => index(&mut gen, scale),
        _ => unreachable!("suite names are checked above"),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        criterion,
        seed,
        scale,
        properties,
    })
}

pub fn run_all(seed: u64, scale: Scale) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, seed, scale)).collect()
}

const TAU_DEGREE: u32 = 6;

fn random_big_cell_points(gen: &mut Generator, count: usize) -> Vec<GrassPoint> {
    let field = CoeffRing::field(BaseField::Rationals);
    (0..count)
        .map(|_| gen.big_cell_point(&field, 4, TAU_DEGREE as i64, 5))
        .collect()
}

fn tau_crosscheck(gen: &mut Generator, scale: Scale) -> Vec<PropertyReport> {
    let mut t = Tally::new("tau_direct = tau_schur at d = 6");
    for u in random_big_cell_points(gen, scale.pick(10, 50)) {
        let outcome = (|| Ok(tau_direct(&u, TAU_DEGREE)?.value == tau_schur(&u, TAU_DEGREE)?.value))();
        t.check(outcome, || u.to_string());
    }
    vec![t.done()]
}

fn vacuum() -> Vec<PropertyReport> {
    let q = BaseField::Rationals;
    let field = CoeffRing::field(q);
    let mut t = Tally::new("tau of V- is 1");
    let u = GrassPoint::v_minus(&field, 16);
    for d in 1..=6 {
        let outcome = (|| {
            Ok(tau_direct(&u, d)?.value.is_one() && tau_schur(&u, d)?.value.is_one())
        })();
        t.check(outcome, || format!("d = {d}"));
    }
    let mut b = Tally::new("Baker of V- is v^-1 at d = 5, M = 6");
    let outcome = (|| {
        let psi = baker(&u, 5, 6)?;
        let v_inv = universal_v(q, 5).gminus().invert()?;
        Ok(psi.value == v_inv.truncated(6))
    })();
    b.check(outcome, || "V-".into());
    vec![t.done(), b.done()]
}

fn factor(gen: &mut Generator, scale: Scale) -> Vec<PropertyReport> {
    let rings = [
        CoeffRing::new(BaseField::Rationals, 2, 2),
        CoeffRing::new(BaseField::prime(5).expect("prime"), 1, 2),
    ];
    let mut round = Tally::new("gminus * unit * gplus * z^n reproduces the series");
    let mut unique = Tally::new("an exact product factors back into its own components");
    let n = scale.pick(20, 100);
    for k in 0..n {
        let ring = &rings[k % 2];
        let f = gen.invertible_series(ring, 12);
        let outcome = factorize(&f).map(|g| {
            let prod = g.to_laurent();
            prod.trunc().is_none_or(|t| t > g.zpower()) && prod.agrees_with(&f)
        });
        round.check(outcome, || f.to_string());

        let zpower = gen.int(-2, 2);
        let g = gen.gamma(ring, 2, 3);
        let g = GammaElement::new(
            g.gminus().clone(),
            g.unit().clone(),
            g.gplus().clone(),
            zpower,
        );
        let outcome = g.and_then(|g| Ok(factorize(&g.to_laurent())? == g));
        unique.check(outcome, || format!("z^{zpower} times a random element"));
    }
    vec![round.done(), unique.done()]
}

/// A point of index zero whose frame is generic on the rows `-N..window`.
fn generic_point(gen: &mut Generator, ring: &RingRef, n: i64, window: i64) -> Result<GrassPoint> {
    let base = ring.base();
    let cols: Vec<LaurentElement> = (0..n)
        .map(|_| {
            let terms: Vec<(i64, Scalar)> =
                (-n..window).map(|e| (e, gen.scalar(base, 5))).collect();
            LaurentElement::from_scalars(ring, &terms).truncated(window)
        })
        .collect();
    GrassPoint::new(ring, n, window, cols)
}

fn cocycle(gen: &mut Generator, scale: Scale) -> Vec<PropertyReport> {
    let field = CoeffRing::field(BaseField::Rationals);
    let charts: Vec<MayaDiagram> = Partition::up_to(3)
        .iter()
        .map(MayaDiagram::from_partition)
        .collect();
    let mut t = Tally::new("det(AB) det(BC) = det(AC)");
    let mut made = 0;
    while made < scale.pick(10, 50) {
        let n = gen.int(3, 4);
        let Ok(u) = generic_point(gen, &field, n, 4) else {
            continue;
        };
        let a = gen.pick(&charts).clone();
        let b = gen.pick(&charts).clone();
        let c = gen.pick(&charts).clone();
        let inside = [&a, &b, &c]
            .iter()
            .all(|s| u.in_chart(s).unwrap_or(false));
        if !inside {
            continue;
        }
        made += 1;
        let outcome = (|| {
            let ab = u.chart_transition(&a, &b)?;
            let bc = u.chart_transition(&b, &c)?;
            let ac = u.chart_transition(&a, &c)?;
            Ok(&ab * &bc == ac)
        })();
        t.check(outcome, || format!("{u} with charts {a}, {b}, {c}"));
    }
    vec![t.done()]
}

/// The chart whose Plücker minor uses the rows `J` shifted by `lo`.
fn chart_of_rows(rows: &[usize], lo: i64, hi: i64) -> MayaDiagram {
    let holes: Vec<i64> = rows.iter().map(|&r| lo + r as i64).collect();
    MayaDiagram::new(hi, (lo..hi).filter(|e| !holes.contains(e))).expect("members below tail")
}

fn finite(scale: Scale) -> Vec<PropertyReport> {
    let mut plucker = Tally::new("Pluecker coordinates of j(M) match the finite model");
    let mut stated = Tally::new("index of j(M) = index(L') + dim L'/(M+L)");
    let mut opposite = Tally::new("index of j(M) = index(L') - dim L'/(M+L)");
    let primes: &[u64] = match scale {
        Scale::Small => &[2],
        Scale::Full => &[2, 3],
    };
    for &p in primes {
        let base = BaseField::prime(p).expect("prime");
        let ring = CoeffRing::field(base);
        let lower = GrassPoint::new(&ring, 2, 6, vec![]).expect("tail only");
        let upper = GrassPoint::new(
            &ring,
            2,
            6,
            (-2..2).map(|e| LaurentElement::z_power(&ring, e)).collect(),
        )
        .expect("independent");
        let upper_index = upper.index().expect("index");
        let emb = quotient_basis(&lower, &upper).expect("L inside L'");
        let dim = emb.dim();
        for m in all_subspaces(base, dim).expect("prime field") {
            let label = || format!("F_{p}: M = {m:?}");
            let jm = match emb.embed(&m) {
                Ok(x) => x,
                Err(e) => {
                    plucker.check(Err(e.clone()), label);
                    stated.check(Err(e.clone()), label);
                    opposite.check(Err(e), label);
                    continue;
                }
            };
            let coords = finite_coordinates(base, dim, &m);
            let outcome = (|| {
                let mut scale_factor: Option<Scalar> = None;
                for (rows, c) in &coords {
                    let s = chart_of_rows(rows, -2, 2);
                    let omega = jm.plucker(&s)?.constant_term();
                    match &scale_factor {
                        None if !c.is_zero() => scale_factor = omega.div(c),
                        None => {
                            if !omega.is_zero() {
                                return Ok(false);
                            }
                        }
                        Some(f) => {
                            if omega != f.mul(c) {
                                return Ok(false);
                            }
                        }
                    }
                }
                Ok(scale_factor.is_some_and(|f| !f.is_zero()))
            })();
            plucker.check(outcome, label);
            let quotient = (dim - m.len()) as i64;
            let i = jm.index();
            stated.check(i.clone().map(|i| i == upper_index + quotient), label);
            opposite.check(i.map(|i| i == upper_index - quotient), label);
        }
    }
    vec![plucker.done(), stated.done(), opposite.done()]
}

fn exp(gen: &mut Generator, scale: Scale) -> Vec<PropertyReport> {
    let ring = CoeffRing::new(BaseField::Rationals, 2, 6);
    let mut minus = Tally::new("exp(y) exp(y') = exp(y + y'), minus sign, d = 6");
    let mut plus = Tally::new("exp(y) exp(y') = exp(y + y'), plus sign, d = 6");
    for _ in 0..scale.pick(5, 20) {
        let len = gen.int(1, 4) as usize;
        let y: Vec<RingElement> = (0..len).map(|_| gen.ring_element(&ring, 2, true)).collect();
        let y2: Vec<RingElement> = (0..len).map(|_| gen.ring_element(&ring, 2, true)).collect();
        let sum: Vec<RingElement> = y.iter().zip(&y2).map(|(a, b)| a + b).collect();
        let label = || format!("{y:?} and {y2:?}");
        let outcome = (|| {
            let a = exp_char0(&ring, &y, Sign::Minus, None)?;
            let b = exp_char0(&ring, &y2, Sign::Minus, None)?;
            let c = exp_char0(&ring, &sum, Sign::Minus, None)?;
            Ok(a.gminus().mul(b.gminus()) == *c.gminus())
        })();
        minus.check(outcome, label);
        let outcome = (|| {
            let a = exp_char0(&ring, &y, Sign::Plus, Some(7))?;
            let b = exp_char0(&ring, &y2, Sign::Plus, Some(7))?;
            let c = exp_char0(&ring, &sum, Sign::Plus, Some(7))?;
            Ok(a.gplus().mul(b.gplus()) == *c.gplus())
        })();
        plus.check(outcome, label);
    }
    vec![minus.done(), plus.done()]
}

/// All vectors of length `n` with entries among the first `k` residues.
fn vectors(ring: &RingRef, n: usize, k: u64) -> Vec<Vec<RingElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..k).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|v| {
            v.into_iter()
                .map(|c| RingElement::from_i64(ring, c as i64))
                .collect()
        })
        .collect()
}

fn witt(scale: Scale) -> Vec<PropertyReport> {
    const N: usize = 4;
    let mut comm = Tally::new("witt_add is commutative");
    let mut unit = Tally::new("(0,...,0) is the identity");
    let mut assoc = Tally::new("witt_add is associative");
    let mut product = Tally::new("product form is a homomorphism");
    for p in [2u64, 3] {
        let base = BaseField::prime(p).expect("prime");
        let ring = CoeffRing::field(base);
        let add = |a: &[RingElement], b: &[RingElement]| witt_add(&ring, a, b, N);
        let wide = vectors(&ring, N, p.min(scale.pick(2, 3) as u64));
        let narrow = vectors(&ring, N, 2);
        let zero = vec![RingElement::zero(&ring); N];
        for a in &wide {
            unit.check(add(a, &zero).map(|s| s == *a), || format!("F_{p}: {a:?}"));
            for b in &wide {
                let outcome = (|| Ok(add(a, b)? == add(b, a)?))();
                comm.check(outcome, || format!("F_{p}: {a:?}, {b:?}"));
            }
        }
        let triples: &[Vec<RingElement>] = match scale {
            Scale::Small => &narrow[..8],
            Scale::Full => &narrow,
        };
        for a in triples {
            for b in triples {
                for c in triples {
                    let outcome = (|| Ok(add(&add(a, b)?, c)? == add(a, &add(b, c)?)?))();
                    assoc.check(outcome, || format!("F_{p}: {a:?}, {b:?}, {c:?}"));
                }
            }
        }
        for a in &narrow {
            for b in &narrow {
                let outcome = (|| {
                    let lhs = exp_charp(&ring, a, Sign::Plus)?
                        .gplus()
                        .mul(exp_charp(&ring, b, Sign::Plus)?.gplus())
                        .truncated(N as i64 + 1);
                    let rhs = exp_charp(&ring, &add(a, b)?, Sign::Plus)?
                        .gplus()
                        .truncated(N as i64 + 1);
                    Ok(lhs == rhs)
                })();
                product.check(outcome, || format!("F_{p}: {a:?}, {b:?}"));
            }
        }
    }
    vec![comm.done(), unit.done(), assoc.done(), product.done()]
}

fn pairings(gen: &mut Generator, scale: Scale) -> Vec<PropertyReport> {
    let field = CoeffRing::field(BaseField::Rationals);
    let mut res = Tally::new("res(z^m d z^n) = n delta_{m+n,0}");
    for m in -10..=10i64 {
        for n in -10..=10i64 {
            let f = LieElement::new(LaurentElement::z_power(&field, m));
            let g = LieElement::new(LaurentElement::z_power(&field, n));
            let want = RingElement::from_i64(&field, if m + n == 0 { n } else { 0 });
            res.check(residue_pairing(&f, &g).map(|r| r == want), || format!("({m}, {n})"));
        }
    }
    let ring = CoeffRing::new(BaseField::Rationals, 2, 2);
    let count = scale.pick(5, 20);
    let pair_at_bound = |g1: &GammaElement, g2: &GammaElement, extra: i64| {
        commutator_pairing(g1, g2, commutator_window_bound(g1, g2)?.max(1) + extra)
    };
    let mut plus = Tally::new("[g1, g2] = 1 on Gamma_+ x Gamma_+");
    let mut minus = Tally::new("[g1, g2] = 1 on Gamma_- x Gamma_-");
    let mut stable = Tally::new("[g1, g2] is the same at W and W + 3");
    for _ in 0..count {
        let a = GammaElement::plus(gen.gamma_plus_series(&ring, 2)).expect("plus element");
        let b = GammaElement::plus(gen.gamma_plus_series(&ring, 2)).expect("plus element");
        plus.check(pair_at_bound(&a, &b, 0).map(|c| c.is_one()), || format!("{a}, {b}"));
        let a = GammaElement::minus(gen.gamma_minus_series(&ring, 2)).expect("minus element");
        let b = GammaElement::minus(gen.gamma_minus_series(&ring, 2)).expect("minus element");
        minus.check(pair_at_bound(&a, &b, 0).map(|c| c.is_one()), || format!("{a}, {b}"));
        let a = gen.gamma(&ring, 2, 2);
        let b = gen.gamma(&ring, 2, 2);
        let outcome = (|| Ok(pair_at_bound(&a, &b, 0)? == pair_at_bound(&a, &b, 3)?))();
        stable.check(outcome, || format!("{a}, {b}"));
    }
    let mut inf = Tally::new("first-order commutator matches the residue pairing");
    let eps = RingElement::var(&ring, 0);
    let t = RingElement::var(&ring, 1);
    let one = LaurentElement::one(&ring);
    for a in 1..=4i64 {
        for b in 1..=4i64 {
            let outcome = (|| {
                let g1 = GammaElement::minus(one.add(&LaurentElement::monomial(&ring, -a, eps.clone())))?;
                let g2 = GammaElement::plus(one.add(&LaurentElement::monomial(&ring, b, t.clone())))?;
                let c = pair_at_bound(&g1, &g2, 0)?;
                let r = residue_pairing(
                    &LieElement::new(LaurentElement::z_power(&field, -a)),
                    &LieElement::new(LaurentElement::z_power(&field, b)),
                )?;
                Ok(c.coeff(&[1, 1]) == r.constant_term())
            })();
            inf.check(outcome, || format!("(a, b) = ({a}, {b})"));
        }
    }
    vec![res.done(), plus.done(), minus.done(), stable.done(), inf.done()]
}

/// Semistandard tableaux of shape `lambda` with entries in `1..=n`, as
/// monomials `y^content`.
fn tableau_sum(ring: &RingRef, lambda: &Partition, n: usize) -> RingElement {
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut acc = RingElement::zero(ring);
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        n: usize,
        grid: &mut BTreeMap<(usize, usize), usize>,
        ring: &RingRef,
        acc: &mut RingElement,
    ) {
        if k == cells.len() {
            let mut m = vec![0u32; n];
            for v in grid.values() {
                m[*v - 1] += 1;
            }
            *acc = &*acc + &RingElement::monomial(ring, m, ring.base().one());
            return;
        }
        let (r, c) = cells[k];
        let left = if c > 0 { grid[&(r, c - 1)] } else { 1 };
        let above = if r > 0 { grid[&(r - 1, c)] + 1 } else { 1 };
        for v in left.max(above)..=n {
            grid.insert((r, c), v);
            go(k + 1, cells, n, grid, ring, acc);
        }
        grid.remove(&(r, c));
    }
    go(0, &cells, n, &mut grid, ring, &mut acc);
    acc
}

/// `h_k(y_1..y_n)` for `k <= top`.
fn complete_homogeneous(ring: &RingRef, n: usize, top: usize) -> Vec<RingElement> {
    let mut h = vec![RingElement::one(ring)];
    h.extend((1..=top).map(|_| RingElement::zero(ring)));
    for i in 0..n {
        let y = RingElement::var(ring, i);
        let mut next = vec![RingElement::zero(ring); top + 1];
        for k in 0..=top {
            let mut pow = RingElement::one(ring);
            for j in 0..=k {
                next[k] = &next[k] + &(&pow * &h[k - j]);
                pow = &pow * &y;
            }
        }
        h = next;
    }
    h
}

fn schur_suite(scale: Scale) -> Vec<PropertyReport> {
    let q = BaseField::Rationals;
    let top = scale.pick(4, 5) as u32;
    let ring = CoeffRing::graded(q, top);
    let shapes = Partition::up_to(top);
    let polys: Vec<RingElement> = shapes
        .iter()
        .map(|l| schur_in(&ring, l).expect("within the bound"))
        .collect();
    let mut dual = Tally::new("(F_lambda, F_mu) = delta");
    for (i, f) in polys.iter().enumerate() {
        for (j, g) in polys.iter().enumerate() {
            let want = if i == j { q.one() } else { q.zero() };
            dual.check(duality_pair(f, g).map(|c| c == want), || {
                format!("{} vs {}", shapes[i], shapes[j])
            });
        }
    }
    let mut jt = Tally::new("Jacobi-Trudi matches the tableau sum");
    let mut bos = Tally::new("B(Omega_lambda) = F_lambda");
    for lambda in Partition::up_to(4) {
        let n = lambda.size().max(1) as usize;
        let yring = CoeffRing::new(q, n, lambda.size());
        let h = complete_homogeneous(&yring, n, lambda.size() as usize);
        let outcome = (|| {
            let f = schur(q, &lambda, 4)?;
            let images: Vec<RingElement> = (1..=4)
                .map(|i| h.get(i).cloned().unwrap_or_else(|| RingElement::zero(&yring)))
                .collect();
            let sym = f.substitute(&images, &RingElement::one(&yring));
            Ok(sym == tableau_sum(&yring, &lambda, n))
        })();
        jt.check(outcome, || lambda.to_string());
        let outcome = (|| {
            let mut unit = BTreeMap::new();
            unit.insert(lambda.clone(), q.one());
            Ok(bosonize(q, &unit, 4)? == schur(q, &lambda, 4)?)
        })();
        bos.check(outcome, || lambda.to_string());
    }
    vec![dual.done(), jt.done(), bos.done()]
}

fn kp(gen: &mut Generator, scale: Scale) -> Vec<PropertyReport> {
    let q = BaseField::Rationals;
    let order = TAU_DEGREE - 3;
    let wrap = |value: RingElement| TauPolynomial {
        delta: RingElement::one(&CoeffRing::field(q)),
        point_ref: String::new(),
        value,
    };
    let mut schur_tau = Tally::new("F_lambda solves KP for |lambda| <= 4");
    for lambda in Partition::up_to(4) {
        let outcome = schur(q, &lambda, TAU_DEGREE).and_then(|f| hirota_kp_check(&wrap(f), order));
        schur_tau.check(outcome, || lambda.to_string());
    }
    let mut points = Tally::new("tau of random big-cell points solves KP");
    for u in random_big_cell_points(gen, scale.pick(10, 50)) {
        let outcome = tau_schur(&u, TAU_DEGREE).and_then(|t| hirota_kp_check(&t, order));
        points.check(outcome, || u.to_string());
    }
    let mut witness = Tally::new("1 + x1^2 fails the check");
    let ring = CoeffRing::graded(q, TAU_DEGREE);
    let x1 = RingElement::var(&ring, 0);
    let w = &RingElement::one(&ring) + &(&x1 * &x1);
    witness.check(hirota_kp_check(&wrap(w), order).map(|b| !b), || "1 + x1^2".into());
    vec![schur_tau.done(), points.done(), witness.done()]
}

fn index(gen: &mut Generator, scale: Scale) -> Vec<PropertyReport> {
    let field = CoeffRing::field(BaseField::Rationals);
    let ring = CoeffRing::new(BaseField::Rationals, 1, 2);
    let mut t = Tally::new("index(gL) = index(L)");
    for _ in 0..scale.pick(10, 50) {
        let l = gen.point(&field, 3, 4, 8);
        let g = gen.gamma(&ring, 2, 2);
        let outcome = (|| {
            let lr = l.map_into(&ring)?;
            Ok(lr.act(&g)?.index()? == l.index()?)
        })();
        t.check(outcome, || format!("{g} on {l}"));
    }
    vec![t.done()]
}
