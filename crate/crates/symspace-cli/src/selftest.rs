//! The deterministic self-test battery.
//!
//! Every case draws its randomness from a generator seeded by a hash of the
//! master seed, the suite name and the case index, so results do not depend
//! on the order in which suites or cases run. Most cases live over
//! `Mat_n(ℝ)` with `n` cycling through 1, 2 and 3; every tenth case (offset
//! 4) is moved to `Mat_1(ℍ)` and every tenth case (offset 9) to `Mat_n(ℂ)`.

use std::thread;
use std::time::Instant;

use rand::Rng;
use sha2::{Digest, Sha256};
use symspace::algebra::linalg::{real_rep, solve_right};
use symspace::algebra::{
    rng_from_seed, sample, AlgebraElement, AlgebraSpec, BaseKind, Constraint, ExtensionSigma, Ground, SampleRng, Unit,
};
use symspace::groups::{
    cartan_project, group_contains, k_pattern_residual, m_pattern_residual, random_lie, sample_group, CartanKind,
    Conjugator, GroupFamily, GroupId,
};
use symspace::hitchin::{
    hkr_recover, hkr_sp4, invariants, norm_value, sample_compact, trace_powers, HiggsFamily, HiggsVector,
};
use symspace::models::{
    act, act_tangent, metric, metric_at_base, metric_quadratic, Family, Model, ModelId, ModelKind, ModelPoint, Payload,
};
use symspace::transforms::{
    convert, difference_quotient, differential, differential_fd, tangent_residual, tangent_size, MapId, DEFAULT_FD_STEP,
};
use symspace::{Error, Result};

use crate::report::{RunReport, SuiteReport};

/// Options of a self-test run.
#[derive(Clone, Debug, PartialEq)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Cases per group, overriding each suite's default.
    pub cases: Option<usize>,
    /// Tolerance overriding each suite's pinned tolerance.
    pub tol: Option<f64>,
    /// Runs only the suites whose name contains this string.
    pub filter: Option<String>,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { seed: 42, cases: None, tol: None, filter: None }
    }
}

type CaseResults = Vec<(String, std::result::Result<f64, String>)>;

/// A named suite with its default case count per group and its tolerance.
#[derive(Clone, Copy)]
pub struct Suite {
    pub name: &'static str,
    pub cases: usize,
    pub tol: f64,
    run: fn(&Context) -> CaseResults,
}

/// Every suite of the battery, in report order.
pub const SUITES: &[Suite] = &[
    Suite { name: "algebra", cases: 1000, tol: 1e-10, run: algebra_laws },
    Suite { name: "groups", cases: 1000, tol: 1e-9, run: group_closure },
    Suite { name: "cartan", cases: 200, tol: 1e-10, run: cartan_relations },
    Suite { name: "stabilizers", cases: 100, tol: 1e-10, run: stabilizers },
    Suite { name: "equivariance", cases: 200, tol: 1e-8, run: equivariance },
    Suite { name: "round_trips", cases: 200, tol: 1e-8, run: round_trips },
    Suite { name: "differentials", cases: 100, tol: 1e-5, run: differentials },
    Suite { name: "fd_convergence", cases: 3, tol: 0.25, run: fd_convergence },
    Suite { name: "metric_invariance", cases: 200, tol: 1e-8, run: metric_invariance },
    Suite { name: "metric_positivity", cases: 200, tol: 0.0, run: metric_positivity },
    Suite { name: "metric_base", cases: 100, tol: 1e-10, run: metric_base },
    Suite { name: "incarnation", cases: 100, tol: 1e-9, run: incarnation },
    Suite { name: "hkr_traces", cases: 100, tol: 1e-10, run: hkr_traces },
    Suite { name: "hkr_round_trip", cases: 100, tol: 1e-12, run: hkr_round_trip },
    Suite { name: "hitchin_invariance", cases: 100, tol: 1e-8, run: hitchin_invariance },
    Suite { name: "hitchin_equivariance", cases: 100, tol: 1e-9, run: hitchin_equivariance },
];

/// Per-suite state handed to the case functions.
pub struct Context {
    seed: u64,
    suite: &'static str,
    cases: usize,
}

/// The seed of case `index` of `suite`: the first eight bytes of
/// `SHA-256(seed ‖ suite ‖ 0 ‖ index)`, little-endian.
pub fn case_seed(seed: u64, suite: &str, index: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(suite.as_bytes());
    hasher.update([0u8]);
    hasher.update(index.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

impl Context {
    fn rng(&self, index: u64) -> SampleRng {
        rng_from_seed(case_seed(self.seed, self.suite, index))
    }

    /// Runs `cases` cases for each group, labelled `"{group} #{i}"`.
    fn run<G>(
        &self,
        groups: &[G],
        label: impl Fn(&G) -> String,
        case: impl Fn(&G, usize, &mut SampleRng) -> Result<f64>,
    ) -> CaseResults {
        let mut out = Vec::with_capacity(groups.len() * self.cases);
        for (g, group) in groups.iter().enumerate() {
            let name = label(group);
            for i in 0..self.cases {
                let mut rng = self.rng((g * self.cases + i) as u64);
                let result = case(group, i, &mut rng).map_err(|e| format!("{}: {e}", e.name()));
                out.push((format!("{name} #{i}"), result));
            }
        }
        out
    }
}

/// Runs the selected suites concurrently and collects their reports in
/// battery order.
pub fn run_selftest(options: &SelftestOptions, command: String) -> RunReport {
    let start = Instant::now();
    let selected: Vec<&Suite> =
        SUITES.iter().filter(|s| options.filter.as_deref().is_none_or(|f| s.name.contains(f))).collect();
    let suites = thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|suite| {
                scope.spawn(move || {
                    let t0 = Instant::now();
                    let ctx =
                        Context { seed: options.seed, suite: suite.name, cases: options.cases.unwrap_or(suite.cases) };
                    let results = (suite.run)(&ctx);
                    let tol = options.tol.unwrap_or(suite.tol);
                    SuiteReport::new(suite.name, tol, results, t0.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    RunReport::new(command, Some(options.seed), suites, start.elapsed().as_secs_f64())
}

fn base_for(i: usize) -> AlgebraSpec {
    match i % 10 {
        4 => AlgebraSpec::quaternion_hermitian(1),
        9 => AlgebraSpec::complex_hermitian(1 + (i / 10) % 2),
        _ => AlgebraSpec::real(1 + i % 3),
    }
}

fn rel(x: &AlgebraElement) -> f64 {
    1.0 + x.norm()
}

/// Distance between two points of one model: the relative residual of
/// `x ≈ y·a` for lines, the relative distance otherwise.
fn point_distance(a: &ModelPoint, b: &ModelPoint) -> Result<f64> {
    if a.model != b.model {
        return Err(Error::SpecMismatch(format!("{} and {}", a.model, b.model)));
    }
    match (&a.payload, &b.payload) {
        (Payload::P(x), Payload::P(y)) => Ok(solve_right(y, x)?.1),
        (Payload::C { j: x, .. }, Payload::C { j: y, .. })
        | (Payload::U(x), Payload::U(y))
        | (Payload::B(x), Payload::B(y)) => Ok(x.distance(y) / rel(y)),
        _ => Err(Error::SpecMismatch("payloads of different kinds".into())),
    }
}

fn towers() -> Vec<AlgebraSpec> {
    let r = AlgebraSpec::real(2);
    let c = AlgebraSpec::complex_hermitian(2);
    vec![
        r,
        AlgebraSpec::real(3),
        c,
        AlgebraSpec::ground(2, Ground::Complex, BaseKind::Transpose),
        AlgebraSpec::ground(2, Ground::Quaternion, BaseKind::QuatSigma0),
        AlgebraSpec::quaternion_hermitian(2),
        r.complexify(ExtensionSigma::Linear),
        r.complexify(ExtensionSigma::Conjugate).with_central(),
        c.quaternionify(ExtensionSigma::Sigma1),
        r.quaternionify(ExtensionSigma::Sigma0).with_central(),
        AlgebraSpec::quaternion_hermitian(1).complexify(ExtensionSigma::Linear).with_central(),
    ]
}

fn algebra_laws(ctx: &Context) -> CaseResults {
    ctx.run(
        &towers(),
        |s| s.to_string(),
        |spec, _, rng| {
            let a = sample(*spec, Constraint::Free, rng);
            let b = sample(*spec, Constraint::Free, rng);
            let c = sample(*spec, Constraint::Free, rng);
            let (sa, sb, sc) = (rel(&a), rel(&b), rel(&c));
            let mut r = (&(&a * &b) * &c).distance(&(&a * &(&b * &c))) / (sa * sb * sc);
            r = r.max((&a * &b).sigma().distance(&(b.sigma() * a.sigma())) / (sa * sb));
            r = r.max(a.sigma().sigma().distance(&a) / sa);
            for unit in [Unit::I, Unit::J, Unit::K, Unit::Central] {
                if spec.tower.has_unit(unit) {
                    let ta = a.theta(unit)?;
                    r = r.max(ta.theta(unit)?.distance(&a) / sa);
                    r = r.max((&a * &b).theta(unit)?.distance(&(ta * b.theta(unit)?)) / (sa * sb));
                }
            }
            let embedded = (&a * &b).embed_complex() - a.embed_complex() * b.embed_complex();
            Ok(r.max(embedded.norm() / (sa * sb)))
        },
    )
}

fn group_configs() -> Vec<(GroupFamily, bool)> {
    let mut out: Vec<(GroupFamily, bool)> =
        GroupFamily::ALL.into_iter().map(|f| (f, f == GroupFamily::KSp2C)).collect();
    out.push((GroupFamily::Sp2, true));
    out
}

fn group_over(family: GroupFamily, complexified: bool, base: AlgebraSpec) -> Result<GroupId> {
    let over = if complexified { base.complexify(ExtensionSigma::Linear) } else { base };
    GroupId::new(family, over)
}

fn group_closure(ctx: &Context) -> CaseResults {
    let label = |(f, c): &(GroupFamily, bool)| format!("{}{}", f.name(), if *c { " complexified" } else { "" });
    ctx.run(&group_configs(), label, |(family, complexified), i, rng| {
        let gid = group_over(*family, *complexified, base_for(i))?;
        let g = sample_group(&gid, rng)?;
        let h = sample_group(&gid, rng)?;
        let product = group_contains(&gid, &g.mul(&h).m, 0.0)?.max_residual();
        let inverse = group_contains(&gid, &g.inv()?.m, 0.0)?.max_residual();
        Ok(product.max(inverse))
    })
}

fn cartan_relations(ctx: &Context) -> CaseResults {
    let kinds = [(GroupFamily::Sp2, false), (GroupFamily::O11, false), (GroupFamily::Sp2, true)];
    let label = |(f, c): &(GroupFamily, bool)| format!("{}{}", f.name(), if *c { " complexified" } else { "" });
    ctx.run(&kinds, label, |(family, complexified), i, rng| {
        let gid = group_over(*family, *complexified, base_for(i))?;
        let kind = CartanKind::of(&gid)?;
        let (xi, eta) = (random_lie(&gid, 1.0, rng)?, random_lie(&gid, 1.0, rng)?);
        let (k1, m1) = cartan_project(&gid, &xi, 1e-10)?;
        let (k2, m2) = cartan_project(&gid, &eta, 1e-10)?;
        let recomposed = (&k1 + &m1).distance(&xi) + (&k2 + &m2).distance(&eta);
        Ok(recomposed
            + k_pattern_residual(kind, &k1.commutator(&k2))
            + m_pattern_residual(kind, &k1.commutator(&m2))
            + k_pattern_residual(kind, &m1.commutator(&m2)))
    })
}

fn all_models() -> Vec<ModelId> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for kind in ModelKind::ALL {
            for sign in [1, -1] {
                if let Ok(id) = ModelId::new(family, kind, sign) {
                    if !out.contains(&id) {
                        out.push(id);
                    }
                }
            }
        }
    }
    out
}

fn stabilizers(ctx: &Context) -> CaseResults {
    ctx.run(&all_models(), ModelId::to_string, |id, i, rng| {
        let model = Model::new(*id, base_for(i))?;
        let base = model.basepoint();
        let k = model.sample_stabilizer(rng)?;
        point_distance(&act(&k, &base)?, &base)
    })
}

fn all_edges() -> Vec<MapId> {
    Family::ALL.into_iter().flat_map(MapId::primitive_edges).collect()
}

fn non_compact_edges() -> Vec<MapId> {
    Family::ALL.into_iter().filter(|f| !f.is_compact()).flat_map(MapId::primitive_edges).collect()
}

fn equivariance(ctx: &Context) -> CaseResults {
    ctx.run(&all_edges(), MapId::to_string, |edge, i, rng| {
        let from = Model::new(edge.from, base_for(i))?;
        let p = from.sample_point(rng)?;
        let g = sample_group(&from.group(), rng)?;
        let lhs = convert(&act(&g, &p)?, edge.to)?;
        let rhs = act(&g, &convert(&p, edge.to)?)?;
        point_distance(&lhs, &rhs)
    })
}

/// A primitive edge, or the triangle `U⁺ → B` against `U⁺ → P⁺ → B`.
enum RoundTrip {
    Edge(MapId),
    Triangle(Family),
}

fn round_trips(ctx: &Context) -> CaseResults {
    let mut checks: Vec<RoundTrip> = all_edges().into_iter().map(RoundTrip::Edge).collect();
    checks.extend(Family::ALL.into_iter().filter(|f| !f.is_compact()).map(RoundTrip::Triangle));
    let label = |c: &RoundTrip| match c {
        RoundTrip::Edge(e) => format!("{e} -> {}", e.from),
        RoundTrip::Triangle(f) => format!("{} triangle", f.name()),
    };
    ctx.run(&checks, label, |check, i, rng| match check {
        RoundTrip::Edge(edge) => {
            let p = Model::new(edge.from, base_for(i))?.sample_point(rng)?;
            point_distance(&convert(&convert(&p, edge.to)?, edge.from)?, &p)
        }
        RoundTrip::Triangle(family) => {
            let z = Model::of(*family, ModelKind::U, 1, base_for(i))?.sample_point(rng)?;
            let b = ModelId::new(*family, ModelKind::B, 1)?;
            let via = convert(&convert(&z, ModelId::new(*family, ModelKind::P, 1)?)?, b)?;
            point_distance(&convert(&z, b)?, &via)
        }
    })
}

fn differentials(ctx: &Context) -> CaseResults {
    ctx.run(&non_compact_edges(), MapId::to_string, |edge, i, rng| {
        let p = Model::new(edge.from, base_for(i))?.sample_point(rng)?;
        let v = p.sample_tangent(rng)?;
        let analytic = differential(&v, edge.to)?;
        let fd = differential_fd(&v, edge.to, DEFAULT_FD_STEP)?;
        Ok(tangent_residual(&analytic, &fd)? / tangent_size(&analytic)?.max(1e-12))
    })
}

/// `|e(h)/e(h/2) − 4|/4` for the plain central difference of `C → U⁺` at
/// `h = 10⁻²`.
fn fd_convergence(ctx: &Context) -> CaseResults {
    ctx.run(
        &[Family::O11, Family::Sp2, Family::Sp2c],
        |f| format!("{} C -> U+", f.name()),
        |family, _, rng| {
            let p = Model::of(*family, ModelKind::C, 1, AlgebraSpec::real(2))?.sample_point(rng)?;
            let v = p.sample_tangent(rng)?;
            let to = ModelId::new(*family, ModelKind::U, 1)?;
            let analytic = differential(&v, to)?;
            let h = 1e-2;
            let coarse = tangent_residual(&analytic, &difference_quotient(&v, to, h)?)?;
            let fine = tangent_residual(&analytic, &difference_quotient(&v, to, h / 2.0)?)?;
            Ok((coarse / fine / 4.0 - 1.0).abs())
        },
    )
}

fn half_space_models() -> Vec<ModelId> {
    all_models().into_iter().filter(|id| id.kind == ModelKind::U).collect()
}

fn metric_invariance(ctx: &Context) -> CaseResults {
    ctx.run(&half_space_models(), ModelId::to_string, |id, i, rng| {
        let model = Model::new(*id, base_for(i))?;
        let p = model.sample_point(rng)?;
        let v = p.sample_tangent(rng)?;
        let g = sample_group(&model.group(), rng)?;
        let moved = act_tangent(&g, &v)?;
        let before = metric_quadratic(&p, chart_vector(&v.payload)?)?;
        let after = metric_quadratic(&moved.at, chart_vector(&moved.payload)?)?;
        Ok((before - after).abs() / (1.0 + before.abs()))
    })
}

fn chart_vector(v: &symspace::models::TangentPayload) -> Result<&AlgebraElement> {
    v.element().ok_or_else(|| Error::SpecMismatch("expected a chart tangent".into()))
}

/// Zero when `metric(v, v) > 0` for a unit `v`, and `1 − metric(v, v)`
/// otherwise.
fn metric_positivity(ctx: &Context) -> CaseResults {
    ctx.run(&half_space_models(), ModelId::to_string, |id, i, rng| {
        let p = Model::new(*id, base_for(i))?.sample_point(rng)?;
        let v = p.sample_tangent(rng)?;
        let w = chart_vector(&v.payload)?;
        if w.norm() == 0.0 {
            // The tangent space is trivial, as for OC over a 1 × 1 real algebra.
            return Ok(0.0);
        }
        let unit = w.scale(1.0 / w.norm());
        let q = metric(&p, &unit, &unit)?;
        Ok(if q > 0.0 { 0.0 } else { 1.0 - q })
    })
}

fn metric_base(ctx: &Context) -> CaseResults {
    ctx.run(&half_space_models(), ModelId::to_string, |id, i, rng| {
        let model = Model::new(*id, base_for(i))?;
        let base = model.basepoint();
        let v = base.sample_tangent(rng)?;
        let w = base.sample_tangent(rng)?;
        let (v, w) = (chart_vector(&v.payload)?, chart_vector(&w.payload)?);
        Ok((metric(&base, v, w)? - metric_at_base(&model, v, w)?).abs())
    })
}

fn incarnation(ctx: &Context) -> CaseResults {
    ctx.run(
        &["O11 to SP2"],
        |s| s.to_string(),
        |_, i, rng| {
            let wide = base_for(i).complexify(ExtensionSigma::Conjugate);
            let m = sample_group(&GroupId::new(GroupFamily::O11, wide)?, rng)?;
            let image = Conjugator::S.conjugate(&m.m)?;
            Ok(group_contains(&GroupId::new(GroupFamily::Sp2, wide)?, &image, 0.0)?.max_residual())
        },
    )
}

/// Traces of `L²` and `L⁴` by dense real matrix powers.
fn dense_traces(l: &AlgebraElement) -> (f64, f64) {
    let m = real_rep(l);
    let m2 = &m * &m;
    (m2.trace(), (&m2 * &m2).trace())
}

fn hkr_traces(ctx: &Context) -> CaseResults {
    ctx.run(
        &["Sp4(R)"],
        |s| s.to_string(),
        |_, _, rng| {
            let (q2, q4): (f64, f64) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            let field = hkr_sp4(q2, q4);
            let (t2, t4) = dense_traces(&field.l);
            let identities = (t2 - 4.0 * q2).abs().max((t4 - 4.0 * (q2 * q2 + q4)).abs());
            let t = trace_powers(&field.l, 2);
            let traces = (t[0].re - t2).abs().max((t[1].re - t4).abs()).max(t[0].im.abs()).max(t[1].im.abs());
            Ok(identities.max(traces))
        },
    )
}

fn hkr_round_trip(ctx: &Context) -> CaseResults {
    ctx.run(
        &["Sp4(R)"],
        |s| s.to_string(),
        |_, _, rng| {
            let (q2, q4): (f64, f64) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            let (r2, r4) = hkr_recover(&hkr_sp4(q2, q4).l)?;
            Ok((r2 - q2).abs().max((r4 - q4).abs()))
        },
    )
}

const HIGGS: [HiggsFamily; 2] = [HiggsFamily::Sp2c, HiggsFamily::Oc];

fn hitchin_invariance(ctx: &Context) -> CaseResults {
    ctx.run(
        &HIGGS,
        |f| f.name().to_string(),
        |family, i, rng| {
            let over = base_for(i);
            let hv = HiggsVector::sample(*family, &over, rng)?;
            let k = sample_compact(*family, &over, rng);
            let before = invariants(&hv)?;
            let after = invariants(&hv.congruence(&k)?)?;
            Ok(before.iter().zip(&after).map(|(x, y)| (x - y).norm() / (1.0 + x.norm())).fold(0.0, f64::max))
        },
    )
}

fn hitchin_equivariance(ctx: &Context) -> CaseResults {
    ctx.run(
        &HIGGS,
        |f| f.name().to_string(),
        |family, i, rng| {
            let over = base_for(i);
            let hv = HiggsVector::sample(*family, &over, rng)?;
            let k = sample_compact(*family, &over, rng).lift(hv.q.spec())?;
            let expected = &k * &norm_value(&hv)? * k.inv()?;
            Ok(norm_value(&hv.congruence(&k)?)?.distance(&expected) / rel(&expected))
        },
    )
}
