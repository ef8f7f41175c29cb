//! Symbolic assembly of the circuit-chain Hamiltonian
//!
//!   H = E_c sum_j n_j^2 + eps E_c sum_j n_j n_{j+1} - E_g sum_j n_j
//!       - E_J sum_j cos(phi_j - phi_{j+1})
//!       - sum_{n=1..p} sum_j E_{J_n} cos(n phi_j + delta_n)
//!
//! into a representation-independent term list, plus the global Z2 symmetry
//! and string operators built from the single-site algebra. Sites are
//! 0-based internally. Energies are stored in units of E_c = 1 by
//! convention; the fields hold whatever ratios the caller supplies.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charge::{
    self, basis_dim, charge_conjugation, cos_kphi, exp_iphi, number_operator, number_phase,
    parity_operator, CMatrix,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

/// Couplings and geometry of the circuit chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitParams {
    /// Number of sites.
    #[serde(rename = "L")]
    pub l: usize,
    /// Base frequency of the on-site Josephson potential (p-fold minima).
    pub p: u32,
    /// Charge cutoff of the local basis.
    pub n_max: i64,
    /// Charging energy, the unit of all other couplings.
    #[serde(rename = "E_c", default = "default_e_c")]
    pub e_c: f64,
    /// Nearest-neighbor charge coupling (dimensionless, <= 1).
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Gate energy.
    #[serde(rename = "E_g", default = "default_e_g")]
    pub e_g: f64,
    /// Cooper-pair hopping energy on the horizontal links.
    #[serde(rename = "E_J")]
    pub e_j: f64,
    /// On-site junction energies E_{J_1} .. E_{J_p}.
    #[serde(rename = "E_Jn")]
    pub e_jn: Vec<f64>,
    /// Phases delta_1 .. delta_p; delta_p is pinned to 0.
    #[serde(default)]
    pub delta: Vec<f64>,
    pub boundary: Boundary,
    /// Optional boundary field -E_Jb cos(phi) at the first and last site.
    #[serde(rename = "E_Jb", default)]
    pub e_jb: Option<f64>,
}

fn default_e_c() -> f64 {
    1.0
}
fn default_epsilon() -> f64 {
    0.2
}
fn default_e_g() -> f64 {
    1.2
}

/// Default phase choices delta_1 .. delta_p (with delta_p = 0): pi/2 for the
/// two-minima chain, (0, pi) for three, (-pi/4, pi/2, -3pi/4) for four.
pub fn default_deltas(p: u32) -> Vec<f64> {
    use std::f64::consts::PI;
    let mut d: Vec<f64> = match p {
        2 => vec![PI / 2.0],
        3 => vec![0.0, PI],
        4 => vec![-PI / 4.0, PI / 2.0, -3.0 * PI / 4.0],
        _ => (1..p).map(|n| PI * (n % 2) as f64).collect(),
    };
    d.push(0.0);
    d
}

impl CircuitParams {
    /// Chain with the conventional defaults (E_c = 1, eps = 0.2, E_g = 1.2)
    /// and the default phase choice for the given p. Junction energies start
    /// at zero (free-boson chain).
    pub fn new(l: usize, p: u32, n_max: i64) -> Self {
        Self {
            l,
            p,
            n_max,
            e_c: 1.0,
            epsilon: 0.2,
            e_g: 1.2,
            e_j: 1.0,
            e_jn: vec![0.0; p as usize],
            delta: default_deltas(p),
            boundary: Boundary::Periodic,
            e_jb: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.l < 2 {
            return Err(Error::InvalidArgument(format!(
                "chain needs L >= 2 sites, got {}",
                self.l
            )));
        }
        if self.p < 2 {
            return Err(Error::InvalidArgument(format!("p must be >= 2, got {}", self.p)));
        }
        if self.n_max < 1 {
            return Err(Error::InvalidArgument(format!(
                "n_max must be >= 1, got {}",
                self.n_max
            )));
        }
        if self.epsilon > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be <= 1, got {}",
                self.epsilon
            )));
        }
        if self.e_jn.len() != self.p as usize {
            return Err(Error::InvalidArgument(format!(
                "E_Jn must list {} junction energies, got {}",
                self.p,
                self.e_jn.len()
            )));
        }
        if self.delta.len() != self.p as usize {
            return Err(Error::InvalidArgument(format!(
                "delta must list {} phases, got {}",
                self.p,
                self.delta.len()
            )));
        }
        if self.delta[self.p as usize - 1] != 0.0 {
            return Err(Error::InvalidArgument("delta_p must be exactly 0".into()));
        }
        if self.p as i64 > 2 * self.n_max {
            return Err(Error::InvalidArgument(format!(
                "cos({} phi) needs n_max >= {}, got {}",
                self.p,
                (self.p as i64 + 1) / 2,
                self.n_max
            )));
        }
        if self.e_jb.is_some() && self.boundary == Boundary::Periodic {
            return Err(Error::InvalidArgument(
                "boundary fields pair with open boundary conditions only".into(),
            ));
        }
        Ok(())
    }

    /// Local Hilbert-space dimension.
    pub fn local_dim(&self) -> usize {
        basis_dim(self.n_max)
    }
}

/// One-site operator labels appearing in a [`TermList`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TermOp {
    /// n
    Number,
    /// n^2
    NumberSquared,
    /// cos(k phi + delta)
    Cos { k: i64, delta: f64 },
}

impl TermOp {
    /// Dense single-site matrix for this label.
    pub fn matrix(&self, n_max: i64) -> Result<CMatrix> {
        match *self {
            TermOp::Number => Ok(number_operator(n_max)?.matrix),
            TermOp::NumberSquared => {
                let n = number_operator(n_max)?.matrix;
                Ok(n.dot(&n))
            }
            TermOp::Cos { k, delta } => Ok(cos_kphi(k, delta, n_max)?.matrix),
        }
    }
}

/// Hermitian term of the Hamiltonian. Two-site terms carry both sites; the
/// hopping label bundles the pair with its conjugate so every term is
/// Hermitian as written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Term {
    Site {
        site: usize,
        coeff: f64,
        op: TermOp,
    },
    /// coeff * n_a n_b
    NumberNumber { a: usize, b: usize, coeff: f64 },
    /// coeff * (e^{i phi_a} e^{-i phi_b} + h.c.)
    Hopping { a: usize, b: usize, coeff: f64 },
}

/// Symbolic Hamiltonian: a list of Hermitian one- and two-site terms,
/// independent of any tensor representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermList {
    pub l: usize,
    pub boundary: Boundary,
    pub terms: Vec<Term>,
}

impl TermList {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when some term couples the last site back to the first.
    pub fn has_wrap_terms(&self) -> bool {
        self.terms.iter().any(|t| match *t {
            Term::NumberNumber { a, b, .. } | Term::Hopping { a, b, .. } => {
                a.max(b) == self.l - 1 && a.min(b) == 0 && self.l > 2
            }
            Term::Site { .. } => false,
        })
    }
}

/// Expand the circuit parameters into the full term list. Terms with an
/// exactly zero coefficient are dropped.
pub fn build_terms(params: &CircuitParams) -> Result<TermList> {
    params.validate()?;
    let l = params.l;
    let mut terms = Vec::new();
    let mut push = |coeff: f64, term: Term| {
        if coeff != 0.0 {
            terms.push(term);
        }
    };

    for j in 0..l {
        push(
            params.e_c,
            Term::Site {
                site: j,
                coeff: params.e_c,
                op: TermOp::NumberSquared,
            },
        );
    }
    let nn = params.epsilon * params.e_c;
    for j in 0..l - 1 {
        push(nn, Term::NumberNumber { a: j, b: j + 1, coeff: nn });
    }
    if params.boundary == Boundary::Periodic {
        push(nn, Term::NumberNumber { a: l - 1, b: 0, coeff: nn });
    }
    for j in 0..l {
        push(
            -params.e_g,
            Term::Site {
                site: j,
                coeff: -params.e_g,
                op: TermOp::Number,
            },
        );
    }
    let hop = -params.e_j / 2.0;
    for j in 0..l - 1 {
        push(hop, Term::Hopping { a: j, b: j + 1, coeff: hop });
    }
    if params.boundary == Boundary::Periodic {
        push(hop, Term::Hopping { a: l - 1, b: 0, coeff: hop });
    }
    for (idx, &e_jn) in params.e_jn.iter().enumerate() {
        let k = (idx + 1) as i64;
        let delta = params.delta[idx];
        for j in 0..l {
            push(
                -e_jn,
                Term::Site {
                    site: j,
                    coeff: -e_jn,
                    op: TermOp::Cos { k, delta },
                },
            );
        }
    }
    if let Some(e_jb) = params.e_jb {
        for j in [0, l - 1] {
            push(
                -e_jb,
                Term::Site {
                    site: j,
                    coeff: -e_jb,
                    op: TermOp::Cos { k: 1, delta: 0.0 },
                },
            );
        }
    }
    Ok(TermList {
        l,
        boundary: params.boundary,
        terms,
    })
}

/// Site-factorized global operator O = O_0 x O_1 x ... x O_{L-1}.
#[derive(Debug, Clone)]
pub struct FactorizedOperator {
    pub factors: Vec<CMatrix>,
}

impl FactorizedOperator {
    pub fn l(&self) -> usize {
        self.factors.len()
    }

    /// Dense Kronecker assembly; guarded by the same cap as the exact module.
    pub fn dense(&self) -> Result<CMatrix> {
        let dim: usize = self.factors.iter().map(|f| f.nrows()).product();
        if dim > crate::exact::DENSE_DIM_CAP {
            return Err(Error::DimensionTooLarge {
                dim,
                max: crate::exact::DENSE_DIM_CAP,
            });
        }
        let mut out = Array2::from_elem((1, 1), Complex64::new(1.0, 0.0));
        for f in &self.factors {
            out = kron(&out, f);
        }
        Ok(out)
    }
}

/// Kronecker product, first factor most significant.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = CMatrix::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for k in 0..ac {
            let aik = a[[i, k]];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..br {
                for m in 0..bc {
                    out[[i * br + j, k * bc + m]] = aik * b[[j, m]];
                }
            }
        }
    }
    out
}

/// Global Z2 operator O = (prod_j e^{i pi n_j}) C implementing
/// phi_j -> pi - phi_j on every site. Unitary with O^2 = 1.
pub fn symmetry_operator(l: usize, n_max: i64) -> Result<FactorizedOperator> {
    if l < 1 {
        return Err(Error::InvalidArgument("need at least one site".into()));
    }
    let site = parity_operator(n_max)?
        .matrix
        .dot(&charge_conjugation(n_max)?.matrix);
    Ok(FactorizedOperator {
        factors: vec![site; l],
    })
}

/// String operator (prod_{k<j} e^{i alpha1 pi n_k}) e^{i alpha2 phi_j} on an
/// L-site chain, site j 0-based. alpha2 must be an integer: the charge basis
/// supports integer shifts only.
pub fn string_operator(
    l: usize,
    j: usize,
    alpha1: f64,
    alpha2: f64,
    n_max: i64,
) -> Result<FactorizedOperator> {
    if j >= l {
        return Err(Error::InvalidArgument(format!(
            "string site {j} outside the {l}-site chain"
        )));
    }
    let shift = alpha2.round();
    if (alpha2 - shift).abs() > 1e-12 {
        return Err(Error::UnsupportedExponent(alpha2));
    }
    let d = basis_dim(n_max);
    let tail = shift as i64;
    let head = number_phase(alpha1, n_max)?;
    let mut factors = Vec::with_capacity(l);
    for site in 0..l {
        factors.push(if site < j {
            head.clone()
        } else if site == j {
            if tail == 0 {
                CMatrix::eye(d)
            } else {
                exp_iphi(tail, n_max)?
            }
        } else {
            CMatrix::eye(d)
        });
    }
    Ok(FactorizedOperator { factors })
}

/// Frobenius norm of the commutator [A, B] of dense matrices.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    let comm = a.dot(b) - b.dot(a);
    charge::frobenius_norm(&comm)
}
