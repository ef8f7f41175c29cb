//! Classical Ginzburg-Landau landscapes of the rescaled-field potential
//!
//!   V(phi) = -2 mu cos(phi) - sum_n 2 lambda_n cos(n phi / p + delta_n)
//!
//! with period 2 pi p: minima location and classification, degenerate
//! grouping, and the critical loci where minima coalesce.
//!
//! For p = 2 the printed double-well form -2 mu cos(phi) - 2 lambda_1
//! sin(phi/2) corresponds to delta_1 = -pi/2 above; the mirror choice
//! delta_1 = +pi/2 gives the same landscape reflected through phi -> -phi.

use serde::Serialize;

use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Rescaled-field potential with p-fold base frequency and p-1 perturbations.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalPotential {
    pub p: u32,
    pub mu: f64,
    /// Couplings lambda_1 .. lambda_{p-1}.
    pub lambda: Vec<f64>,
    /// Phases delta_1 .. delta_{p-1} (radians).
    pub delta: Vec<f64>,
}

/// One refined stationary minimum of the potential.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Minimum {
    pub location: f64,
    pub value: f64,
    pub curvature: f64,
    /// Set when |V''| < 1e-8: the minimum sits at a critical/marginal point.
    pub marginal: bool,
}

/// Closed-form critical loci, each cross-checked by a numeric coalescence scan.
#[derive(Debug, Clone, Serialize)]
pub enum CriticalLocus {
    /// p = 2: single curvature-flip point lambda_1* = 4 mu.
    IsingPoint { lambda1: f64 },
    /// p = 3: critical line lambda_2 = slope * lambda_1 + intercept ending at
    /// the tricritical point `endpoint`.
    TricriticalLine {
        slope: f64,
        intercept: f64,
        endpoint: (f64, f64),
    },
    /// p > 3: no closed form; coalescence located by scanning along the ray
    /// lambda_n = t * weight_n with the default phase choice.
    NumericOnly { weights: Vec<f64>, t_critical: f64 },
}

impl ClassicalPotential {
    pub fn new(p: u32, mu: f64, lambda: Vec<f64>, delta: Vec<f64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p must be >= 2, got {p}")));
        }
        let want = (p - 1) as usize;
        if lambda.len() != want || delta.len() != want {
            return Err(Error::InvalidArgument(format!(
                "p = {p} needs {want} couplings and phases, got {} and {}",
                lambda.len(),
                delta.len()
            )));
        }
        Ok(Self { p, mu, lambda, delta })
    }

    /// Double-well form -2 mu cos(phi) - 2 lambda_1 sin(phi/2).
    pub fn ising(mu: f64, lambda1: f64) -> Self {
        Self {
            p: 2,
            mu,
            lambda: vec![lambda1],
            delta: vec![-std::f64::consts::FRAC_PI_2],
        }
    }

    /// Three-minima form -2 mu cos(phi) - 2 lambda_1 cos(phi/3) + 2 lambda_2 cos(2 phi/3).
    pub fn tricritical(mu: f64, lambda1: f64, lambda2: f64) -> Self {
        Self {
            p: 3,
            mu,
            lambda: vec![lambda1, lambda2],
            delta: vec![0.0, std::f64::consts::PI],
        }
    }

    /// Period 2 pi p of the rescaled field.
    pub fn period(&self) -> f64 {
        TWO_PI * self.p as f64
    }

    pub fn evaluate(&self, phi: f64) -> f64 {
        let mut v = -2.0 * self.mu * phi.cos();
        for (n, (&l, &d)) in self.lambda.iter().zip(&self.delta).enumerate() {
            let k = (n + 1) as f64 / self.p as f64;
            v -= 2.0 * l * (k * phi + d).cos();
        }
        v
    }

    /// First derivative dV/dphi.
    pub fn d1(&self, phi: f64) -> f64 {
        let mut v = 2.0 * self.mu * phi.sin();
        for (n, (&l, &d)) in self.lambda.iter().zip(&self.delta).enumerate() {
            let k = (n + 1) as f64 / self.p as f64;
            v += 2.0 * l * k * (k * phi + d).sin();
        }
        v
    }

    /// Second derivative d2V/dphi2.
    pub fn d2(&self, phi: f64) -> f64 {
        let mut v = 2.0 * self.mu * phi.cos();
        for (n, (&l, &d)) in self.lambda.iter().zip(&self.delta).enumerate() {
            let k = (n + 1) as f64 / self.p as f64;
            v += 2.0 * l * k * k * (k * phi + d).cos();
        }
        v
    }

    /// Fourth derivative d4V/dphi4.
    pub fn d4(&self, phi: f64) -> f64 {
        let mut v = -2.0 * self.mu * phi.cos();
        for (n, (&l, &d)) in self.lambda.iter().zip(&self.delta).enumerate() {
            let k = (n + 1) as f64 / self.p as f64;
            v -= 2.0 * l * k.powi(4) * (k * phi + d).cos();
        }
        v
    }

    /// Coupling magnitude used to scale degeneracy tolerances.
    pub fn scale(&self) -> f64 {
        let s = 2.0 * (self.mu.abs() + self.lambda.iter().map(|l| l.abs()).sum::<f64>());
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }
}

/// Locate all local minima over one period, refined from grid seeds by
/// derivative bisection to |V'| < 1e-12. Minima with |V''| < 1e-8 are
/// flagged marginal.
pub fn find_minima(pot: &ClassicalPotential, grid_size: usize) -> Result<Vec<Minimum>> {
    if grid_size < 64 {
        return Err(Error::InvalidArgument(format!(
            "grid_size must be >= 64, got {grid_size}"
        )));
    }
    let period = pot.period();
    let h = period / grid_size as f64;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev = pot.d1(0.0);
    for i in 0..grid_size {
        let a = i as f64 * h;
        let b = a + h;
        let next = pot.d1(b);
        if prev == 0.0 {
            roots.push(a);
        } else if prev * next < 0.0 {
            roots.push(bisect_d1(pot, a, b));
        }
        prev = next;
    }
    // dedupe modulo the period (a root refined near 0 can reappear near 2 pi p)
    let tol = 1e-9 * period;
    let mut minima: Vec<Minimum> = Vec::new();
    for r in roots {
        let loc = r.rem_euclid(period);
        if minima
            .iter()
            .any(|m| wrapped_dist(m.location, loc, period) < tol)
        {
            continue;
        }
        let curvature = pot.d2(loc);
        // a refined V' root is a minimum when the well opens upward; at a
        // marginal point V'' ~ 0 fall back to comparing nearby values
        let probe = h * 1e-3;
        let is_min = if curvature.abs() >= 1e-8 {
            curvature > 0.0
        } else {
            let v = pot.evaluate(loc);
            pot.evaluate(loc - probe) >= v && pot.evaluate(loc + probe) >= v
        };
        if is_min {
            minima.push(Minimum {
                location: loc,
                value: pot.evaluate(loc),
                curvature,
                marginal: curvature.abs() < 1e-8,
            });
        }
    }
    minima.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok(minima)
}

/// Group minima whose values agree within 1e-9 * scale; returns indices into
/// the input slice, one group per degenerate level, lowest level first.
pub fn group_degenerate(minima: &[Minimum], scale: f64) -> Vec<Vec<usize>> {
    let tol = 1e-9 * scale;
    let mut order: Vec<usize> = (0..minima.len()).collect();
    order.sort_by(|&a, &b| minima[a].value.total_cmp(&minima[b].value));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match groups.last_mut() {
            Some(g) if (minima[idx].value - minima[g[0]].value).abs() <= tol => g.push(idx),
            _ => groups.push(vec![idx]),
        }
    }
    groups
}

fn wrapped_dist(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

fn bisect_d1(pot: &ClassicalPotential, mut a: f64, mut b: f64) -> f64 {
    let mut fa = pot.d1(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = pot.d1(mid);
        if fm.abs() < 1e-12 || (b - a) < 1e-16 {
            return mid;
        }
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Generic sign-change bisection over a coupling axis.
fn bisect_flip(mut lo: f64, mut hi: f64, mut pred: impl FnMut(f64) -> f64) -> f64 {
    let mut flo = pred(lo);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let fm = pred(mid);
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Numeric coalescence scan for p = 2: the two degenerate wells merge where
/// the curvature at the inter-well stationary point flips sign. Returns the
/// critical lambda_1 for the given mu.
pub fn numeric_ising_coalescence(mu: f64) -> f64 {
    // the stationary point between the wells of the double-well form sits at
    // phi = pi by symmetry; scan its curvature
    bisect_flip(1e-6 * mu, 16.0 * mu, |l1| {
        ClassicalPotential::ising(mu, l1).d2(std::f64::consts::PI)
    })
}

/// Numeric coalescence scan for p = 3 at fixed lambda_1: the symmetric pair of
/// wells merges into phi = 0 where the curvature there flips sign.
pub fn numeric_tricritical_line(mu: f64, lambda1: f64) -> f64 {
    bisect_flip(0.0, 8.0 * (mu.abs() + lambda1.abs()), |l2| {
        ClassicalPotential::tricritical(mu, lambda1, l2).d2(0.0)
    })
}

/// Numeric tricritical endpoint for p = 3: walk the coalescence line in
/// lambda_1 until the quartic term at the merge point also vanishes.
pub fn numeric_tricritical_endpoint(mu: f64) -> (f64, f64) {
    let l1 = bisect_flip(1.0 * mu, 40.0 * mu, |l1| {
        let l2 = numeric_tricritical_line(mu, l1);
        ClassicalPotential::tricritical(mu, l1, l2).d4(0.0)
    });
    (l1, numeric_tricritical_line(mu, l1))
}

/// Critical locus of the p-minima landscape for the given mu. For p in {2, 3}
/// the closed forms are returned after numeric verification; p > 3 falls back
/// to a pure scan along the default ray.
pub fn critical_locus(p: u32, mu: f64) -> Result<CriticalLocus> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be >= 2, got {p}")));
    }
    if mu <= 0.0 {
        return Err(Error::InvalidArgument("mu must be positive".into()));
    }
    match p {
        2 => {
            let closed = 4.0 * mu;
            let numeric = numeric_ising_coalescence(mu);
            debug_assert!((numeric - closed).abs() / closed < 1e-8);
            Ok(CriticalLocus::IsingPoint { lambda1: closed })
        }
        3 => {
            let endpoint = (15.0 * mu, 6.0 * mu);
            let numeric = numeric_tricritical_endpoint(mu);
            debug_assert!((numeric.0 - endpoint.0).abs() / endpoint.0 < 1e-8);
            debug_assert!((numeric.1 - endpoint.1).abs() / endpoint.1 < 1e-8);
            Ok(CriticalLocus::TricriticalLine {
                slope: 0.25,
                intercept: 2.25 * mu,
                endpoint,
            })
        }
        _ => {
            // scan t along lambda_n = t * (p - n) with the tetracritical-style
            // phases; the merge point of the symmetric wells is phi = 0
            let weights: Vec<f64> = (1..p).map(|n| (p - n) as f64).collect();
            let deltas = default_phases(p);
            let t_critical = bisect_flip(1e-6 * mu, 64.0 * mu, |t| {
                let lambda: Vec<f64> = weights.iter().map(|w| t * w).collect();
                let pot = ClassicalPotential::new(p, mu, lambda, deltas.clone()).unwrap();
                pot.d2(0.0)
            });
            Ok(CriticalLocus::NumericOnly { weights, t_critical })
        }
    }
}

/// Default perturbation phases delta_1 .. delta_{p-1} for the landscape scans:
/// the choices that make the p = 2, 3, 4 potentials symmetric about the merge
/// point of their wells.
pub fn default_phases(p: u32) -> Vec<f64> {
    use std::f64::consts::PI;
    match p {
        2 => vec![-PI / 2.0],
        3 => vec![0.0, PI],
        4 => vec![-PI / 4.0, PI / 2.0, -3.0 * PI / 4.0],
        _ => (1..p).map(|n| PI * (n % 2) as f64).collect(),
    }
}
