//! Negative gradient flow of `F` on the unit sphere of the tensor space, with
//! convergence detection and stratum labels for the limit.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{act_with_inverse, derivation_algebra, DEFAULT_NULLSPACE_TOL};
use crate::classify::{extract_type, CriticalType, DEFAULT_TYPE_TOL};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix, ZERO};
use crate::moment::{
    ambient_gradient, criticality, moment_map, scalar_f_difference, tangential, CriticalReport,
};
use crate::tensor::StructureTensor;

/// Gradient norm below which the criticality residual is evaluated, every
/// `RESIDUAL_CHECK_EVERY` steps since it needs an SVD.
const RESIDUAL_CHECK_GRAD: f64 = 1e-3;
const RESIDUAL_CHECK_EVERY: usize = 10;
/// Smallest step before the integrator gives up on making progress.
const MIN_STEP: f64 = 1e-15;
const GROWTH: f64 = 1.2;
/// Bound on `8 h (max R - min R)`, i.e. on the log-condition of a step.
const MAX_EXPONENT: f64 = 12.0;
/// Accepted steps between attempts to collapse onto the grading of a nearby
/// critical point (needed when the limit lies outside the starting orbit and
/// the flow only converges polynomially).
const COLLAPSE_INTERVAL: usize = 500;
const COLLAPSE_MAX_RESIDUAL: f64 = 1e-3;
/// Minimum ratio between the defects kept and dropped by a collapse.
const COLLAPSE_MIN_GAP: f64 = 10.0;
/// Coefficients below this fraction of the norm are ignored when choosing
/// the cut.
const COLLAPSE_NEGLIGIBLE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowParams {
    pub initial_step: f64,
    pub max_steps: usize,
    pub grad_tol: f64,
    pub crit_tol: f64,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self {
            initial_step: 1e-3,
            max_steps: 200_000,
            grad_tol: 1e-9,
            crit_tol: 1e-8,
        }
    }
}

impl FlowParams {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.initial_step) || !ok(self.grad_tol) || !ok(self.crit_tol) {
            return Err(Error::Domain(
                "flow tolerances and step must be positive".into(),
            ));
        }
        if self.max_steps == 0 {
            return Err(Error::Domain("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub step: usize,
    #[serde(rename = "F")]
    pub f: f64,
    pub grad_norm: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    GradientTolerance,
    CriticalResidual,
    MaxSteps,
    Stalled,
}

#[derive(Clone, Debug)]
pub struct FlowTrace {
    pub samples: Vec<Sample>,
    /// Unit-norm endpoint.
    pub limit: StructureTensor,
    pub converged: bool,
    pub stop: StopReason,
    pub limit_report: CriticalReport,
    pub stratum: Option<CriticalType>,
    /// Complex dimensions of `Der` at the start and at the limit.
    pub der_dims: (usize, usize),
}

impl FlowTrace {
    pub fn final_f(&self) -> f64 {
        self.limit_report.f_value
    }

    /// `step,F,grad_norm` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("step,F,grad_norm\n");
        for p in &self.samples {
            s.push_str(&format!("{},{},{}\n", p.step, p.f, p.grad_norm));
        }
        s
    }

    /// Largest increase of `F` between consecutive samples (zero when monotone).
    pub fn max_increase(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| w[1].f - w[0].f)
            .fold(0.0, f64::max)
    }
}

struct State {
    mu: StructureTensor,
    r: HermitianMatrix,
    /// Spectral width of `R`, which bounds the conditioning of a step.
    spread: f64,
    f: f64,
    /// Tangential negative gradient.
    v: StructureTensor,
}

fn state(mu: StructureTensor) -> State {
    let r = moment_map(&mu);
    let f = r.trace_product(&r);
    let v = tangential(&ambient_gradient(&mu, &r), &mu).scale_real(-1.0);
    let ev = r.eigenvalues();
    let spread = (ev[ev.len() - 1] - ev[0]).max(f64::MIN_POSITIVE);
    State {
        mu,
        r,
        spread,
        f,
        v,
    }
}

/// `exp(-8 h R_mu) . mu`. Since `-grad = 8 delta_mu(R_mu)` is the velocity of
/// `t -> exp(-8 t R_mu) . mu`, this is a first-order step that never leaves
/// the orbit of the starting point.
fn exp_step(cur: &State, h: f64) -> StructureTensor {
    let g = cur.r.map_spectrum(|x| (-8.0 * h * x).exp()).to_complex();
    let g_inv = cur.r.map_spectrum(|x| (8.0 * h * x).exp()).to_complex();
    act_with_inverse(&g, &g_inv, &cur.mu)
}

fn residual_ok(mu: &StructureTensor, tol: f64) -> bool {
    criticality(mu, tol).map(|r| r.is_critical).unwrap_or(false)
}

/// Degeneration of `mu` along the one-parameter subgroup generated by the
/// approximate derivation `d`.
///
/// In an eigenbasis of `d` each coefficient `c_ij^k` has defect
/// `d_i + d_j - d_k`. The defects are split at their widest logarithmic gap;
/// coefficients above the cut are dropped, which is the limit of
/// `exp(s d') . mu` for the nearby derivation `d'`. Returns `None` if there is
/// no clear gap, nothing to drop, or a significant coefficient would blow up
/// along the subgroup.
pub fn grading_collapse(mu: &StructureTensor, d: &HermitianMatrix) -> Option<StructureTensor> {
    let n = mu.dim();
    let (vals, vecs) = d.eigen();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    let u = ComplexMatrix::new(vecs).ok()?;
    let u_h = u.adjoint();
    // Coefficients in the eigenbasis: u^*.mu has basis vectors u e_i.
    let local = act_with_inverse(&u_h, &u, mu);
    let floor = COLLAPSE_NEGLIGIBLE * local.norm();
    let defect = |i: usize, j: usize, k: usize| (vals[i] + vals[j] - vals[k]) / scale;
    let mut defects = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                if local.get(i, j, k).norm() > floor {
                    defects.push(defect(i, j, k));
                }
            }
        }
    }
    let mut mags: Vec<f64> = defects.iter().map(|e| e.abs().max(1e-15)).collect();
    mags.sort_by(f64::total_cmp);
    mags.dedup();
    let (ratio, cut) = mags
        .windows(2)
        .map(|w| (w[1] / w[0], (w[0] * w[1]).sqrt()))
        .fold((1.0, 0.0), |best, c| if c.0 > best.0 { c } else { best });
    if ratio < COLLAPSE_MIN_GAP || defects.iter().any(|&e| e > cut) {
        return None;
    }
    let kept = StructureTensor::from_fn(n, |i, j, k| {
        if defect(i, j, k).abs() <= cut {
            local.get(i, j, k)
        } else {
            ZERO
        }
    });
    act_with_inverse(&u, &u_h, &kept).normalized().ok()
}

fn try_collapse(cur: &State, crit_tol: f64) -> Option<State> {
    let report = criticality(&cur.mu, crit_tol).ok()?;
    if report.residual > COLLAPSE_MAX_RESIDUAL * cur.r.norm() {
        return None;
    }
    let next = state(grading_collapse(&cur.mu, &report.d_mu)?);
    if scalar_f_difference(&cur.mu, &next.mu) > 0.0 {
        return None;
    }
    let after = criticality(&next.mu, crit_tol).ok()?;
    (after.residual < report.residual).then_some(next)
}

pub fn flow(mu0: &StructureTensor, params: &FlowParams) -> Result<FlowTrace> {
    params.validate()?;
    let start = mu0.normalized().map_err(|_| Error::ZeroTensor("flow"))?;
    let der_start = derivation_algebra(&start, DEFAULT_NULLSPACE_TOL).complex_dim;

    let mut cur = state(start);
    let mut h = params.initial_step;
    let mut samples = vec![Sample {
        step: 0,
        f: cur.f,
        grad_norm: cur.v.norm(),
    }];
    let mut stop = StopReason::MaxSteps;
    let mut step = 0;
    loop {
        let g = cur.v.norm();
        if g <= params.grad_tol {
            stop = StopReason::GradientTolerance;
            break;
        }
        if g <= RESIDUAL_CHECK_GRAD
            && step % RESIDUAL_CHECK_EVERY == 0
            && residual_ok(&cur.mu, params.crit_tol)
        {
            stop = StopReason::CriticalResidual;
            break;
        }
        if step >= params.max_steps {
            break;
        }
        step += 1;
        if step % COLLAPSE_INTERVAL == 0 && g <= RESIDUAL_CHECK_GRAD {
            if let Some(next) = try_collapse(&cur, params.crit_tol) {
                cur = next;
                samples.push(Sample {
                    step,
                    f: cur.f,
                    grad_norm: cur.v.norm(),
                });
                continue;
            }
        }
        h = h.min(MAX_EXPONENT / (8.0 * cur.spread));
        // Halve until F does not increase.
        let next = loop {
            if let Ok(t) = exp_step(&cur, h).normalized() {
                if scalar_f_difference(&cur.mu, &t) <= 0.0 {
                    break Some(state(t));
                }
            }
            h *= 0.5;
            if h < MIN_STEP {
                break None;
            }
        };
        match next {
            Some(n) => {
                cur = n;
                h *= GROWTH;
                samples.push(Sample {
                    step,
                    f: cur.f,
                    grad_norm: cur.v.norm(),
                });
            }
            None => {
                stop = StopReason::Stalled;
                break;
            }
        }
    }

    let converged = matches!(
        stop,
        StopReason::GradientTolerance | StopReason::CriticalResidual
    ) || (stop == StopReason::Stalled && residual_ok(&cur.mu, params.crit_tol));
    let limit_report = criticality(&cur.mu, params.crit_tol)?;
    let stratum = if converged {
        extract_type(&limit_report.d_mu, DEFAULT_TYPE_TOL).ok()
    } else {
        None
    };
    let der_limit = derivation_algebra(&cur.mu, DEFAULT_NULLSPACE_TOL).complex_dim;
    Ok(FlowTrace {
        samples,
        limit: cur.mu,
        converged,
        stop,
        limit_report,
        stratum,
        der_dims: (der_start, der_limit),
    })
}

/// Type of the flow limit, i.e. the label of the stratum containing `[mu0]`.
pub fn stratum_label(mu0: &StructureTensor, params: &FlowParams) -> Result<CriticalType> {
    let t = flow(mu0, params)?;
    if !t.converged {
        return Err(Error::NotConverged {
            steps: t.samples.last().map_or(0, |s| s.step),
            residual: t.limit_report.residual,
        });
    }
    t.stratum
        .ok_or_else(|| Error::TypeExtraction("flow limit has no consistent type".into()))
}

/// Independent flows, in input order. Results do not depend on the thread count.
pub fn flow_batch(inputs: &[StructureTensor], params: &FlowParams) -> Vec<Result<FlowTrace>> {
    inputs.par_iter().map(|mu| flow(mu, params)).collect()
}
