//! Check suites over a corpus of tableaux.
//!
//! Structural checks are exact and deterministic. Randomized suites draw
//! from per-target streams (see [`Sampler`]) so a fixed seed reproduces
//! every sample regardless of scheduling.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus::{admissible_tableaux, CorpusEntry};
use crate::dlinalg::DMatrix;
use crate::dualpair::{build_moment_lift, cayley, stable_range_lift, DualPair, MomentLift, WSpace};
use crate::error::{Error, Result};
use crate::hermitian::{adjoint, HermitianModule};
use crate::random::{Sampler, DEFAULT_BOUND};
use crate::report::{Check, Report};
use crate::scalars::{AlgebraSpec, Coords, Rational, Sign};
use crate::sl2::Grading;
use crate::tableaux::{build_module, dominated_by, jordan_type};

/// Short labels naming the property each check exercises.
pub mod anchor {
    pub const BUILD: &str = "module built from tableau";
    pub const SL2: &str = "sl2 relations and skew-adjointness";
    pub const JORDAN: &str = "jordan type round trip";
    pub const GRADING: &str = "weight and root space dimensions";
    pub const PAIRING_VI: &str = "perfect pairing of V_i with V_-i";
    pub const SIGN_IDENTITY: &str = "B_{i+2}(Xv,Xw) = -B_i(v,w)";
    pub const KAPPA: &str = "kappa_-1 antisymmetric and nondegenerate";
    pub const MX: &str = "centralizer dimension matches row isometry algebras";
    pub const LIFT: &str = "maximal-rank lift: moments, shift, ranks, jordan type";
    pub const W_PAIRING: &str = "J_T pairing identity on W";
    pub const HERMITIAN: &str = "adjoint identities and kappa invariance";
    pub const BRACKETS: &str = "graded brackets and parabolic closure";
    pub const ALPHA_GAMMA: &str = "alpha_gamma is a homomorphism";
    pub const ALPHA_T: &str = "alpha_T is a homomorphism";
    pub const PHI_T: &str = "phi_T intertwines and is multiplicative";
    pub const MOMENT: &str = "moment images in the Lie algebras; nilpotency equivalence";
    pub const STABLE_RANGE: &str = "stable range lift T*T = X";
    pub const CLOSURE: &str = "closure shadow in dominance order";
}

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

/// All exact per-tableau checks. Ids are `<entry id>/<suffix>`.
pub fn structural_checks(e: &CorpusEntry) -> Vec<Check> {
    let id = |s: &str| format!("{}/{s}", e.id);
    let built = match build_module(&e.tableau, e.epsilon) {
        Ok(b) => b,
        Err(err) => return vec![Check::fail(id("build"), anchor::BUILD, json!(err.to_string()))],
    };
    let mut out = Vec::new();
    let t = &built.triple;
    let rel = t.relations();
    out.push(Check::from_bool(id("sl2.relations"), anchor::SL2, rel.all(), || json!(rel)));

    let jt = jordan_type(t.x());
    let want = e.tableau.partition();
    out.push(Check::from_bool(id("jordan.round_trip"), anchor::JORDAN, jt.as_ref().ok() == Some(&want), || {
        json!({"expected": want, "got": jt.as_ref().map_err(|e| e.to_string())})
    }));

    match t.grade() {
        Ok(g) => out.extend(grading_checks(&id, &g, &built.module)),
        Err(err) => out.push(Check::fail(id("grading.dims"), anchor::GRADING, json!(err.to_string()))),
    }

    match build_moment_lift(&e.tableau, e.epsilon, None, None) {
        Ok(lift) => {
            out.push(Check::from_result(id("lift.moment"), anchor::LIFT, lift_check(&id("lift.moment"), &lift)));
            out.push(Check::from_result(id("lift.pairing"), anchor::W_PAIRING, pairing_check(&id("lift.pairing"), &lift)));
        }
        Err(err) => out.push(Check::fail(id("lift.moment"), anchor::LIFT, json!(err.to_string()))),
    }
    out
}

fn grading_checks(id: &dyn Fn(&str) -> String, g: &Grading, module: &HermitianModule) -> Vec<Check> {
    let mut out = Vec::new();
    let vsum: usize = g.v_dims().values().sum();
    let gsum: usize = g.g_dims().values().sum();
    let ok = vsum == module.dim() && gsum == module.lie_algebra_dim();
    out.push(Check::from_bool(id("grading.dims"), anchor::GRADING, ok, || {
        json!({"v_dims": g.v_dims(), "g_dims": g.g_dims(), "dim": module.dim()})
    }));

    let gram = g.module().gram();
    let perfect = g.v_dims().keys().all(|&i| {
        let block = gram.submatrix(&g.v_indices(i), &g.v_indices(-i));
        block.rank() == block.rows() && block.rows() == block.cols()
    });
    out.push(Check::from_bool(id("grading.pairing"), anchor::PAIRING_VI, perfect, || json!(g.v_dims())));

    out.push(Check::from_result(
        id("weights.sign_identity"),
        anchor::SIGN_IDENTITY,
        g.sign_identity().map(|s| {
            let bad: Vec<_> = s.iter().filter(|x| !x.holds).collect();
            Check::from_bool(id("weights.sign_identity"), anchor::SIGN_IDENTITY, bad.is_empty(), || json!(bad))
        }),
    ));

    out.push(Check::from_result(
        id("grading.kappa_minus1"),
        anchor::KAPPA,
        g.kappa_minus1_gram(g.g_minus1().elements()).map(|k| {
            let ok = k.is_antisymmetric() && k.rank() == k.rows();
            Check::from_bool(id("grading.kappa_minus1"), anchor::KAPPA, ok, || json!({"dim": k.rows(), "rank": k.rank()}))
        }),
    ));

    out.push(Check::from_result(
        id("grading.mx"),
        anchor::MX,
        g.mx_dimension_report().map(|r| Check::from_bool(id("grading.mx"), anchor::MX, r.holds(), || json!(r))),
    ));
    out
}

fn lift_check(id: &str, lift: &MomentLift) -> Result<Check> {
    let c = lift.checks()?;
    Ok(Check::from_bool(id, anchor::LIFT, c.all(), || {
        json!({"checks": c, "lifted": lift.lifted().label(), "T": lift.t()})
    }))
}

fn pairing_check(id: &str, lift: &MomentLift) -> Result<Check> {
    let w = WSpace::new(lift);
    let d1 = lift.grading().g_minus1().len();
    let d2 = lift.grading_tilde().g_minus1().len();
    if w.dim() != d1 + d2 {
        return Ok(Check::fail(id, anchor::W_PAIRING, json!({"dim_w": w.dim(), "dim_g-1": d1, "dim_gt-1": d2})));
    }
    if w.dim() == 0 {
        return Ok(Check::pass(id, anchor::W_PAIRING));
    }
    let j = lift.j_matrix(&w)?;
    let gram = j.transpose().mul(w.gram()).mul(&j);
    let expected = lift.expected_pairing_gram()?;
    let ok = j.rank() == w.dim() && gram == expected;
    Ok(Check::from_bool(id, anchor::W_PAIRING, ok, || json!({"rank": j.rank(), "dim_w": w.dim()})))
}

/// Whether a lift has a nonzero `W`.
pub fn has_nonzero_w(lift: &MomentLift) -> bool {
    !lift.grading().g_minus1().is_empty() || !lift.grading_tilde().g_minus1().is_empty()
}

/// Outcome of a randomized suite: one aggregated check per target.
#[derive(Clone, Debug, Default)]
pub struct SuiteResult {
    pub checks: Vec<Check>,
    pub samples: usize,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn merge(parts: Vec<SuiteResult>) -> SuiteResult {
        let mut out = SuiteResult::default();
        for p in parts {
            out.samples += p.samples;
            out.checks.extend(p.checks);
        }
        out
    }
}

/// Splits `total` samples across `n` targets as evenly as possible.
fn share(total: usize, n: usize, j: usize) -> usize {
    total / n + usize::from(j < total % n)
}

/// Runs `per_sample` on `count` draws, stopping at the first failure.
fn run_samples(
    id: String,
    anchor: &str,
    count: usize,
    mut sampler: Sampler,
    mut per_sample: impl FnMut(&mut Sampler) -> Result<Option<Value>>,
) -> SuiteResult {
    for k in 0..count {
        match per_sample(&mut sampler) {
            Ok(None) => {}
            Ok(Some(w)) => {
                return SuiteResult { checks: vec![Check::fail(id, anchor, json!({"sample": k, "witness": w}))], samples: k + 1 };
            }
            Err(e) => {
                return SuiteResult {
                    checks: vec![Check::fail(id, anchor, json!({"sample": k, "error": e.to_string()}))],
                    samples: k + 1,
                };
            }
        }
    }
    SuiteResult { checks: vec![Check::pass(id, anchor)], samples: count }
}

/// A random element of the unipotent group with Lie algebra spanned by `basis`.
fn random_unipotent(s: &mut Sampler, module: &HermitianModule, basis: &[DMatrix]) -> Result<DMatrix> {
    let n = module.dim();
    s.combination(basis, n, n, module).nilpotent_exp()
}

/// A target for the randomized suites: a corpus tableau and its lift.
pub struct LiftTarget {
    pub id: String,
    pub lift: MomentLift,
}

pub fn lift_targets(entries: &[CorpusEntry]) -> Vec<LiftTarget> {
    entries
        .par_iter()
        .filter_map(|e| build_moment_lift(&e.tableau, e.epsilon, None, None).ok().map(|lift| LiftTarget { id: e.id.clone(), lift }))
        .collect()
}

pub fn alpha_gamma_suite(targets: &[LiftTarget], sign: Sign, samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let parts = targets
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            // the source grading and, for variety, the target grading on alternate targets
            let g = if j % 2 == 0 { t.lift.grading() } else { t.lift.grading_tilde() };
            let name = format!("random/alpha_gamma/{:+}/{}", sign.value(), t.id);
            let sampler = Sampler::new(seed, &name, bound);
            let count = share(samples, targets.len(), j);
            let n_basis = g.g_basis_where(|d| d <= -1).elements().to_vec();
            let u_basis = g.g_basis_where(|d| d <= -2).elements().to_vec();
            let group = g.heisenberg_group(sign);
            run_samples(name, anchor::ALPHA_GAMMA, count, sampler, |s| {
                let group = group.as_ref().map_err(|e| Error::InvalidTriple(e.to_string()))?;
                let n1 = random_unipotent(s, g.module(), &n_basis)?;
                let n2 = random_unipotent(s, g.module(), &n_basis)?;
                let lhs = g.alpha_gamma(&n1.matmul(&n2)?, sign)?;
                let rhs = group.mul(&g.alpha_gamma(&n1, sign)?, &g.alpha_gamma(&n2, sign)?);
                if lhs != rhs {
                    return Ok(Some(json!({"lhs": lhs, "rhs": rhs})));
                }
                let (tt, z) = g.heisenberg_coordinates(&n1)?;
                if tt.nilpotent_exp()?.matmul(&z.nilpotent_exp()?)? != n1 {
                    return Ok(Some(json!("exp(T)exp(Z) does not reconstruct n")));
                }
                let n = g.module().dim();
                let z1 = s.combination(&u_basis, n, n, g.module());
                let z2 = s.combination(&u_basis, n, n, g.module());
                if !g.chi(&z1.commutator(&z2)?)?.is_zero() {
                    return Ok(Some(json!("character does not vanish on [u,u]")));
                }
                let a = g.alpha_gamma(&z1.nilpotent_exp()?, sign)?;
                if a.vector.iter().any(|x| !x.is_zero()) || a.center != g.chi(&z1)? * sign.rational() {
                    return Ok(Some(json!("alpha(exp Z) differs from (0, sign*kappa(X,Z))")));
                }
                Ok(None)
            })
        })
        .collect();
    SuiteResult::merge(parts)
}

pub fn alpha_t_suite(targets: &[LiftTarget], samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let parts = targets
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let lift = &t.lift;
            let name = format!("random/alpha_t/{}", t.id);
            let sampler = Sampler::new(seed, &name, bound);
            let count = share(samples, targets.len(), j);
            let g = lift.grading();
            let gt = lift.grading_tilde();
            let n_basis = g.g_basis_where(|d| d <= -1).elements().to_vec();
            let nt_basis = gt.g_basis_where(|d| d <= -1).elements().to_vec();
            let u_basis = g.g_basis_where(|d| d <= -2).elements().to_vec();
            let w = WSpace::new(lift);
            let group = w.heisenberg_group();
            run_samples(name, anchor::ALPHA_T, count, sampler, |s| {
                let group = group.as_ref().map_err(|e| Error::InvalidPair(e.to_string()))?;
                let n1 = random_unipotent(s, g.module(), &n_basis)?;
                let n2 = random_unipotent(s, g.module(), &n_basis)?;
                let m1 = random_unipotent(s, gt.module(), &nt_basis)?;
                let m2 = random_unipotent(s, gt.module(), &nt_basis)?;
                let lhs = lift.alpha_t(&w, &n1.matmul(&n2)?, &m1.matmul(&m2)?)?;
                let rhs = group.mul(&lift.alpha_t(&w, &n1, &m1)?, &lift.alpha_t(&w, &n2, &m2)?);
                if lhs != rhs {
                    return Ok(Some(json!({"lhs": lhs, "rhs": rhs})));
                }
                let (dv, dvt) = (g.module().dim(), gt.module().dim());
                let r = s.combination(g.g_minus1().elements(), dv, dv, g.module());
                let rt = s.combination(gt.g_minus1().elements(), dvt, dvt, gt.module());
                let cross = w.pairing(&lift.t().matmul(&r)?, &rt.matmul(lift.t())?)?;
                if !cross.is_zero() {
                    return Ok(Some(json!({"cross_term": cross})));
                }
                let z = s.combination(&u_basis, dv, dv, g.module());
                let a = lift.alpha_t(&w, &z.nilpotent_exp()?, &DMatrix::identity(gt.module().algebra(), dvt))?;
                if a.vector.iter().any(|x| !x.is_zero()) || a.center != -g.chi(&z)? {
                    return Ok(Some(json!("alpha_T(exp Z, e) differs from (0, -kappa(X,Z))")));
                }
                Ok(None)
            })
        })
        .collect();
    SuiteResult::merge(parts)
}

/// Random element of `M̃_X̃`: −1, a Cayley transform, or a unipotent.
fn random_mx_tilde(s: &mut Sampler, lift: &MomentLift, basis: &[DMatrix], nilpotent: &[DMatrix]) -> Result<DMatrix> {
    let module = &lift.target().module;
    let n = module.dim();
    let id = DMatrix::identity(module.algebra(), n);
    let kind = s.index(4);
    if basis.is_empty() || kind == 0 {
        return Ok(if s.coin() { id.neg() } else { id });
    }
    if kind == 3 && !nilpotent.is_empty() {
        // sums of nilpotent elements need not be nilpotent; use one direction
        let z = &nilpotent[s.index(nilpotent.len())];
        return z.scale(&s.nonzero_rational()).nilpotent_exp();
    }
    for _ in 0..8 {
        let a = s.combination(basis, n, n, module);
        match cayley(&a) {
            Ok(g) => return Ok(if kind == 2 { g.neg() } else { g }),
            Err(Error::Singular) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(id)
}

pub fn phi_t_suite(targets: &[LiftTarget], samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let parts = targets
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let lift = &t.lift;
            let name = format!("random/phi_t/{}", t.id);
            let sampler = Sampler::new(seed, &name, bound);
            let count = share(samples, targets.len(), j);
            let basis = lift.grading_tilde().centralizer_basis();
            let nilpotent: Vec<DMatrix> =
                basis.iter().flatten().filter(|b| b.is_nilpotent()).cloned().collect();
            run_samples(name, anchor::PHI_T, count, sampler, |s| {
                let basis = basis.as_ref().map_err(|e| Error::InvalidTriple(e.to_string()))?;
                let m1 = random_mx_tilde(s, lift, basis, &nilpotent)?;
                let m2 = random_mx_tilde(s, lift, basis, &nilpotent)?;
                let p1 = lift.phi_t(&m1)?;
                let p2 = lift.phi_t(&m2)?;
                let p12 = lift.phi_t(&m1.matmul(&m2)?)?;
                if m1.matmul(lift.t())? != lift.t().matmul(&p1)? {
                    return Ok(Some(json!("m T != T phi_T(m)")));
                }
                if p12 != p1.matmul(&p2)? {
                    return Ok(Some(json!("phi_T(m1 m2) != phi_T(m1) phi_T(m2)")));
                }
                Ok(None)
            })
        })
        .collect();
    SuiteResult::merge(parts)
}

/// Random maps between the modules of each lift: scaled lifts (nilpotent
/// moments) and dense random maps.
pub fn moment_suite(targets: &[LiftTarget], samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let parts = targets
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let lift = &t.lift;
            let pair = lift.pair();
            let name = format!("random/moment/{}", t.id);
            let sampler = Sampler::new(seed, &name, bound);
            let count = share(samples, targets.len(), j);
            run_samples(name, anchor::MOMENT, count, sampler, |s| {
                let map = if s.coin() {
                    lift.t().scale(&s.nonzero_rational())
                } else {
                    s.matrix(pair.v(), pair.vtilde().dim(), pair.v().dim())
                };
                let (a, b) = pair.moment(&map)?;
                if !pair.v().is_lie_algebra_element(&a) || !pair.vtilde().is_lie_algebra_element(&b) {
                    return Ok(Some(json!("moment image outside the Lie algebra")));
                }
                if a.is_nilpotent() != b.is_nilpotent() {
                    return Ok(Some(json!({"T": map})));
                }
                Ok(None)
            })
        })
        .collect();
    SuiteResult::merge(parts)
}

/// Random `X ∈ sp(V)` (alternately square-zero nilpotent and generic) on
/// symplectic `V` of dimension 2, 4, 6 into split orthogonal `Ṽ` of dimension ≤ 14.
pub fn stable_range_suite(samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let f = AlgebraSpec::Field;
    let parts = (0..samples)
        .into_par_iter()
        .map(|k| {
            let name = format!("random/stable_range/{k:04}");
            let mut s = Sampler::new(seed, &name, bound);
            let m = 1 + k % 3;
            let v = HermitianModule::hyperbolic(&f, Sign::Minus, m);
            let extra = s.index(14 - 4 * m + 1);
            let mut diag: Vec<Coords> = Vec::new();
            for i in 0..2 * m {
                diag.push(Coords::scalar(q(if i % 2 == 0 { 1 } else { -1 })));
                diag.push(Coords::scalar(q(if i % 2 == 0 { -2 } else { 2 })));
            }
            for _ in 0..extra {
                diag.push(Coords::scalar(q([1, -1, 2, -2][s.index(4)])));
            }
            let mut run = || -> Result<Option<Value>> {
                let vt = HermitianModule::diagonal(&f, Sign::Plus, &diag)?;
                let pair = DualPair::new(v.clone(), vt)?;
                let basis = if k % 2 == 0 {
                    v.lie_basis(|r, c| r % 2 == 0 && c % 2 == 0)
                } else {
                    v.lie_basis(|_, _| true)
                };
                let x = s.lie_element(&v, &basis);
                let t = stable_range_lift(&pair, &x)?;
                let (phi, _) = pair.moment(&t)?;
                if phi != x || t.rank() != v.dim() {
                    return Ok(Some(json!({"X": x, "T": t})));
                }
                Ok(None)
            };
            let result = run();
            let check = match result {
                Ok(None) => Check::pass(name, anchor::STABLE_RANGE),
                Ok(Some(w)) => Check::fail(name, anchor::STABLE_RANGE, w),
                Err(e) => Check::fail(name, anchor::STABLE_RANGE, json!(e.to_string())),
            };
            SuiteResult { checks: vec![check], samples: 1 }
        })
        .collect();
    SuiteResult::merge(parts)
}

/// Restricting `T` to a nondegenerate sum of lines of `V` keeps both moment
/// images inside the closures: their Jordan types are dominated by the
/// partitions of the orbit and of its lift.
pub fn closure_suite(targets: &[LiftTarget], samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let parts = targets
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let lift = &t.lift;
            let name = format!("random/closure/{}", t.id);
            let sampler = Sampler::new(seed, &name, bound);
            let count = share(samples, targets.len(), j);
            run_samples(name, anchor::CLOSURE, count, sampler, |s| {
                let src = lift.source();
                let n = src.module.dim();
                let mut keep = vec![false; n];
                for (row, block) in lift.tableau().rows().iter().zip(&src.blocks) {
                    let hyperbolic = row.form.algebra().is_field() && row.eps == Sign::Minus;
                    let step = if hyperbolic { 2 } else { 1 };
                    for a0 in (0..block.mult).step_by(step) {
                        if s.coin() {
                            for a in a0..a0 + step {
                                for p in 0..block.t {
                                    keep[block.index(a, p)] = true;
                                }
                            }
                        }
                    }
                }
                let p = DMatrix::from_fn(src.module.algebra(), n, n, |r, c| {
                    if r == c && keep[r] {
                        Coords::one()
                    } else {
                        Coords::zero()
                    }
                });
                let tp = lift.t().matmul(&p)?;
                let (a, b) = lift.pair().moment(&tp)?;
                let ja = jordan_type(&a)?;
                let jb = jordan_type(&b)?;
                let ok = dominated_by(&ja, &lift.tableau().partition()) && dominated_by(&jb, &lift.lifted().partition());
                Ok((!ok).then(|| json!({"source": ja, "target": jb})))
            })
        })
        .collect();
    SuiteResult::merge(parts)
}

/// Adjoint and invariance identities on the modules of each lift.
pub fn hermitian_suite(targets: &[LiftTarget], samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let parts = targets
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let v = &t.lift.source().module;
            let pair = t.lift.pair();
            let name = format!("random/hermitian/{}", t.id);
            let sampler = Sampler::new(seed, &name, bound);
            let count = share(samples, targets.len(), j);
            let basis = v.lie_basis(|_, _| true);
            run_samples(name, anchor::HERMITIAN, count, sampler, |s| {
                let n = v.dim();
                let a = s.matrix(v, n, n);
                let b = s.matrix(v, n, n);
                let astar = adjoint(&a, v, v)?;
                if adjoint(&astar, v, v)? != a || adjoint(&a.matmul(&b)?, v, v)? != adjoint(&b, v, v)?.matmul(&astar)? {
                    return Ok(Some(json!("adjoint identities fail")));
                }
                let tmap = s.matrix(v, pair.vtilde().dim(), n);
                let tstar = pair.adjoint(&tmap)?;
                let back = adjoint(&tstar, pair.vtilde(), v)?;
                if back != tmap.scale(&(v.epsilon() * pair.vtilde().epsilon()).rational()) {
                    return Ok(Some(json!("T** != eps*eps~ T")));
                }
                let (x, y, z) = (s.lie_element(v, &basis), s.lie_element(v, &basis), s.lie_element(v, &basis));
                if v.kappa(&x.commutator(&y)?, &z)? != v.kappa(&x, &y.commutator(&z)?)? || v.kappa(&x, &y)? != v.kappa(&y, &x)? {
                    return Ok(Some(json!("kappa is not symmetric invariant")));
                }
                if !v.is_lie_algebra_element(&x.commutator(&y)?) {
                    return Ok(Some(json!("Lie algebra not closed under bracket")));
                }
                Ok(None)
            })
        })
        .collect();
    SuiteResult::merge(parts)
}

/// `[𝔤_i, 𝔤_j] ⊆ 𝔤_{i+j}` on random basis pairs, and closure of `u ⊆ n ⊆ p`.
pub fn bracket_suite(targets: &[LiftTarget], samples: usize, seed: u64, bound: i64) -> SuiteResult {
    let parts = targets
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let g = t.lift.grading();
            let name = format!("random/brackets/{}", t.id);
            let sampler = Sampler::new(seed, &name, bound);
            let count = share(samples, targets.len(), j);
            let degrees: Vec<i64> = g.g_dims().keys().copied().collect();
            let n_basis = g.g_basis_where(|d| d <= -1).elements().to_vec();
            let p_basis = g.g_basis_where(|d| d <= 0).elements().to_vec();
            run_samples(name, anchor::BRACKETS, count, sampler, |s| {
                let i = degrees[s.index(degrees.len())];
                let k = degrees[s.index(degrees.len())];
                let bi = g.g_basis(i);
                let bk = g.g_basis(k);
                let a = bi.elements()[s.index(bi.len())].clone();
                let b = bk.elements()[s.index(bk.len())].clone();
                let c = a.commutator(&b)?;
                if !c.is_zero() && !g.in_graded(&c, |d| d == i + k) {
                    return Ok(Some(json!({"i": i, "j": k})));
                }
                let n = g.module().dim();
                let (x, y) = (s.combination(&n_basis, n, n, g.module()), s.combination(&n_basis, n, n, g.module()));
                if !g.in_u(&x.commutator(&y)?) {
                    return Ok(Some(json!("[n,n] not in u")));
                }
                let (x, y) = (s.combination(&p_basis, n, n, g.module()), s.combination(&p_basis, n, n, g.module()));
                if !g.in_graded(&x.commutator(&y)?, |d| d <= 0) {
                    return Ok(Some(json!("p not closed")));
                }
                Ok(None)
            })
        })
        .collect();
    SuiteResult::merge(parts)
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
    /// Largest `|d|` of the tableaux over `k`.
    pub max_size: usize,
    /// Largest `|d|` used for the randomized suites and the division algebra corpora.
    pub random_max_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, samples: 100, bound: DEFAULT_BOUND, max_size: 8, random_max_size: 4 }
    }
}

pub fn division_algebras() -> Vec<AlgebraSpec> {
    vec![
        AlgebraSpec::quadratic(q(-1)).expect("-1 is not a square"),
        AlgebraSpec::quadratic(q(5)).expect("5 is not a square"),
        AlgebraSpec::hamilton(),
    ]
}

/// Structural checks on every entry, in parallel, in entry order.
pub fn structural_suite(entries: &[CorpusEntry]) -> Vec<Check> {
    entries.par_iter().flat_map_iter(structural_checks).collect()
}

/// Every suite on the corpus given (or the generated one when `None`).
pub fn verify_all(opts: &VerifyOptions, corpus: Option<Vec<CorpusEntry>>) -> Result<Report> {
    let mut entries = match corpus {
        Some(c) => c,
        None => {
            let mut c = admissible_tableaux(&AlgebraSpec::Field, opts.max_size)?;
            for alg in division_algebras() {
                c.extend(admissible_tableaux(&alg, opts.random_max_size.min(opts.max_size))?);
            }
            c
        }
    };
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    let mut checks = structural_suite(&entries);
    let small: Vec<CorpusEntry> =
        entries.iter().filter(|e| e.tableau.size() <= opts.random_max_size).cloned().collect();
    let targets = lift_targets(&small);
    if !targets.is_empty() && opts.samples > 0 {
        let (seed, n, b) = (opts.seed, opts.samples, opts.bound);
        let odd: Vec<LiftTarget> = lift_targets(
            &small.iter().filter(|e| e.tableau.rows().iter().any(|r| r.t % 2 == 0) && e.tableau.rows().iter().any(|r| r.t % 2 == 1)).cloned().collect::<Vec<_>>(),
        );
        let rich = if odd.is_empty() { &targets } else { &odd };
        for sign in [Sign::Plus, Sign::Minus] {
            checks.extend(alpha_gamma_suite(rich, sign, n, seed, b).checks);
        }
        checks.extend(alpha_t_suite(rich, n, seed, b).checks);
        checks.extend(phi_t_suite(&targets, n, seed, b).checks);
        checks.extend(moment_suite(&targets, n, seed, b).checks);
        checks.extend(closure_suite(&targets, n, seed, b).checks);
        checks.extend(hermitian_suite(&targets, n, seed, b).checks);
        checks.extend(bracket_suite(&targets, n, seed, b).checks);
        checks.extend(stable_range_suite(n.min(100), seed, b).checks);
    }
    Ok(Report::new(checks))
}
