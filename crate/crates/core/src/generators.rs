//! Hamiltonian/Lindblad data for the local and global interaction walks and
//! assembly of the vectorized evolution superoperator
//!
//!   dρ/dt = −i(1−ω)[H, ρ] + ω ( −i[H_loc, ρ] + Σ_L L ρ L† − ½{L†L, ρ} )
//!
//! with the column-stacking convention vecc(A X B) = (Bᵀ ⊗ A) vecc(X), so
//!
//!   F = −i(1−ω)(𝟙⊗H − Hᵀ⊗𝟙)
//!     + ω ( −i(𝟙⊗H_loc − H_locᵀ⊗𝟙) + Σ_L  L̄⊗L − ½ 𝟙⊗L†L − ½ (L†L)ᵀ⊗𝟙 ).
//!
//! The local Hamiltonian term only appears in the non-moralizing mode.

use ndarray::Array2;
use num_complex::Complex64;
use thiserror::Error;

use crate::graph::Digraph;
use crate::linalg::{
    self, dagger, frobenius_norm, hermiticity_defect, identity, kron, matmul, transpose, vecc,
    CMat, CVec, I, ONE,
};
use crate::nonmoralizing::EnlargedSpace;

pub const INPUT_HERMITICITY_TOL: f64 = 1e-12;
pub const STATE_HERMITICITY_TOL: f64 = 1e-10;
pub const STATE_TRACE_TOL: f64 = 1e-10;
pub const STATE_MIN_EIGENVALUE: f64 = -1e-8;
pub const TRACE_PRESERVATION_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("custom Hamiltonian is not Hermitian (defect {0:e})")]
    NonHermitian(f64),
    #[error("custom Hamiltonian has dimension {got}, expected {expected}")]
    HamiltonianDimension { expected: usize, got: usize },
    #[error("omega {0} outside [0, 1]")]
    OmegaOutOfRange(f64),
    #[error("dimension mismatch: generator dim {expected}, state dim {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("assembled superoperator is not trace preserving (defect {0:e})")]
    NotTracePreserving(f64),
}

#[derive(Debug, Error)]
pub enum StateError {
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("trace deviates from one by {0:e}")]
    TraceNotOne(f64),
    #[error("minimum eigenvalue {0:e} is below the positivity floor")]
    NotPositive(f64),
    #[error("state vector has zero norm")]
    ZeroVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Local,
    Global,
    Nonmoralizing,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Local => write!(f, "local"),
            Mode::Global => write!(f, "global"),
            Mode::Nonmoralizing => write!(f, "nonmoralizing"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum HamiltonianChoice {
    UnderlyingAdjacency,
    Custom(CMat),
    Zero,
}

/// Hamiltonian, Lindblad collection and smoothing parameter for one walk.
#[derive(Debug, Clone)]
pub struct QswGenerator {
    pub dim: usize,
    pub hamiltonian: CMat,
    pub lindblads: Vec<CMat>,
    /// Extra Hamiltonian inside the ω-weighted part (non-moralizing only).
    pub local_hamiltonian: Option<CMat>,
    pub omega: f64,
    pub mode: Mode,
    /// Vertex → subspace map; the identity layout except in non-moralizing
    /// mode.
    pub layout: EnlargedSpace,
}

/// Dense matrix F acting on vectorized states.
#[derive(Debug, Clone)]
pub struct Superoperator {
    matrix: CMat,
    dim: usize,
}

impl Superoperator {
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Underlying Hilbert-space dimension d; the matrix is d²×d².
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply_vec(&self, v: &CVec) -> CVec {
        linalg::matvec(&self.matrix, v)
    }

    /// ‖vecc(𝟙)† F‖ — zero for a trace-preserving generator.
    pub fn trace_preservation_defect(&self) -> f64 {
        let id_vec = vecc(&identity(self.dim));
        let mut out = 0.0f64;
        for col in 0..self.matrix.ncols() {
            let s: Complex64 = (0..self.matrix.nrows())
                .map(|row| id_vec[row].conj() * self.matrix[[row, col]])
                .sum();
            out += s.norm_sqr();
        }
        out.sqrt()
    }
}

/// Hermitian, positive-semidefinite, trace-one state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMat,
}

impl DensityMatrix {
    pub fn new(matrix: CMat) -> Result<Self, StateError> {
        let herm = hermiticity_defect(&matrix);
        if herm > STATE_HERMITICITY_TOL {
            return Err(StateError::NotHermitian(herm));
        }
        let tr = linalg::trace(&matrix);
        let drift = (tr - ONE).norm();
        if drift > STATE_TRACE_TOL {
            return Err(StateError::TraceNotOne(drift));
        }
        let state = Self { matrix };
        let min = state.min_eigenvalue();
        if min < STATE_MIN_EIGENVALUE {
            return Err(StateError::NotPositive(min));
        }
        Ok(state)
    }

    pub(crate) fn new_unchecked(matrix: CMat) -> Self {
        Self { matrix }
    }

    /// |k⟩⟨k| in a `dim`-dimensional space.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut m = Array2::zeros((dim, dim));
        m[[k, k]] = ONE;
        Self { matrix: m }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            matrix: identity(dim).mapv(|z| z * scale),
        }
    }

    /// v v† / ‖v‖².
    pub fn from_pure(v: &CVec) -> Result<Self, StateError> {
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(StateError::ZeroVector);
        }
        let dim = v.len();
        let mut m = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                m[[i, j]] = v[i] * v[j].conj() / norm_sq;
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let sym = linalg::hermitize(&self.matrix);
        linalg::eigenvalues_hermitian(&sym)
            .map(|w| w[0])
            .unwrap_or(f64::NEG_INFINITY)
    }

    pub fn trace_drift(&self) -> f64 {
        (linalg::trace(&self.matrix) - ONE).norm()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.matrix)
    }

    /// Diagonal in the canonical basis; clamps away round-off negatives.
    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diag().iter().map(|z| z.re.max(0.0)).collect()
    }
}

/// One Lindblad hop `c_(v,w) |w⟩⟨v|` per arc; H defaults to the adjacency
/// matrix of the underlying graph.
pub fn build_local(
    g: &Digraph,
    omega: f64,
    hamiltonian: HamiltonianChoice,
) -> Result<QswGenerator, GeneratorError> {
    let n = g.vertex_count();
    let h = resolve_hamiltonian(g, hamiltonian)?;
    check_omega(omega)?;
    let lindblads = g
        .arcs()
        .map(|(v, w, c)| {
            let mut l: CMat = Array2::zeros((n, n));
            l[[w, v]] = c;
            l
        })
        .collect();
    Ok(QswGenerator {
        dim: n,
        hamiltonian: h,
        lindblads,
        local_hamiltonian: None,
        omega,
        mode: Mode::Local,
        layout: EnlargedSpace::trivial(n),
    })
}

/// A single Lindblad operator: the digraph adjacency matrix itself.
pub fn build_global(g: &Digraph, omega: f64) -> Result<QswGenerator, GeneratorError> {
    check_omega(omega)?;
    let n = g.vertex_count();
    Ok(QswGenerator {
        dim: n,
        hamiltonian: g.underlying_adjacency(),
        lindblads: vec![g.adjacency_matrix()],
        local_hamiltonian: None,
        omega,
        mode: Mode::Global,
        layout: EnlargedSpace::trivial(n),
    })
}

fn resolve_hamiltonian(
    g: &Digraph,
    choice: HamiltonianChoice,
) -> Result<CMat, GeneratorError> {
    let n = g.vertex_count();
    match choice {
        HamiltonianChoice::UnderlyingAdjacency => Ok(g.underlying_adjacency()),
        HamiltonianChoice::Zero => Ok(Array2::zeros((n, n))),
        HamiltonianChoice::Custom(h) => {
            if h.nrows() != n || h.ncols() != n {
                return Err(GeneratorError::HamiltonianDimension {
                    expected: n,
                    got: h.nrows(),
                });
            }
            let defect = hermiticity_defect(&h);
            if defect > INPUT_HERMITICITY_TOL {
                return Err(GeneratorError::NonHermitian(defect));
            }
            Ok(h)
        }
    }
}

fn check_omega(omega: f64) -> Result<(), GeneratorError> {
    if !(0.0..=1.0).contains(&omega) || omega.is_nan() {
        return Err(GeneratorError::OmegaOutOfRange(omega));
    }
    Ok(())
}

/// Commutator superoperator −i(𝟙⊗H − Hᵀ⊗𝟙) scaled by `weight`.
fn hamiltonian_part(h: &CMat, weight: f64) -> CMat {
    let n = h.nrows();
    let id = identity(n);
    let mut out = kron(&id, h) - kron(&transpose(h), &id);
    out.mapv_inplace(|z| z * (-I) * weight);
    out
}

/// F as a dense dim²×dim² matrix.
pub fn assemble_superoperator(gen: &QswGenerator) -> Result<Superoperator, GeneratorError> {
    let n = gen.dim;
    let id = identity(n);
    let mut f = hamiltonian_part(&gen.hamiltonian, 1.0 - gen.omega);
    if let Some(h_loc) = &gen.local_hamiltonian {
        f = f + hamiltonian_part(h_loc, gen.omega);
    }
    let w = Complex64::new(gen.omega, 0.0);
    let half = Complex64::new(0.5, 0.0);
    for l in &gen.lindblads {
        if l.nrows() != n {
            return Err(GeneratorError::DimensionMismatch {
                expected: n,
                got: l.nrows(),
            });
        }
        let l_bar = linalg::conjugate(l);
        let ldl = matmul(&dagger(l), l);
        let mut term = kron(&l_bar, l);
        term = term - kron(&id, &ldl).mapv(|z| z * half);
        term = term - kron(&transpose(&ldl), &id).mapv(|z| z * half);
        f = f + term.mapv(|z| z * w);
    }
    let sup = Superoperator { matrix: f, dim: n };
    let defect = sup.trace_preservation_defect();
    let scale = frobenius_norm(sup.matrix()).max(1.0);
    if defect > TRACE_PRESERVATION_TOL * scale {
        return Err(GeneratorError::NotTracePreserving(defect));
    }
    Ok(sup)
}

/// 𝓜[ρ] evaluated directly on the matrix, without vectorization.
pub fn apply_generator(gen: &QswGenerator, rho: &CMat) -> Result<CMat, GeneratorError> {
    let n = gen.dim;
    if rho.nrows() != n || rho.ncols() != n {
        return Err(GeneratorError::DimensionMismatch {
            expected: n,
            got: rho.nrows(),
        });
    }
    let coherent = linalg::commutator(&gen.hamiltonian, rho)
        .mapv(|z| z * (-I) * (1.0 - gen.omega));
    let mut out = coherent;
    if let Some(h_loc) = &gen.local_hamiltonian {
        out = out + linalg::commutator(h_loc, rho).mapv(|z| z * (-I) * gen.omega);
    }
    let half = Complex64::new(0.5, 0.0);
    let mut dissipator: CMat = Array2::zeros((n, n));
    for l in &gen.lindblads {
        let l_dag = dagger(l);
        let ldl = matmul(&l_dag, l);
        let hop = matmul(&matmul(l, rho), &l_dag);
        let anti = linalg::anticommutator(&ldl, rho);
        dissipator = dissipator + hop - anti.mapv(|z| z * half);
    }
    out = out + dissipator.mapv(|z| z * gen.omega);
    Ok(out)
}
