//! Amplitude damping on density matrices and the erasure identities of the
//! dual-rail and single-excitation three-qubit encodings.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;

use super::{check_cap, DenseOperator, DenseState, DENSITY_CAP};
use crate::error::{Error, Result};

/// Damping rate `γ ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct DampingParameter(f64);

impl DampingParameter {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Gamma(gamma));
        }
        Ok(Self(gamma))
    }

    pub fn gamma(self) -> f64 {
        self.0
    }
}

/// `A₀ = diag(1, √(1-γ))` and `A₁ = √γ |0⟩⟨1|`.
pub fn ad_kraus(gamma: DampingParameter) -> [Matrix2<Complex64>; 2] {
    let g = gamma.gamma();
    let c = |x: f64| Complex64::new(x, 0.0);
    [Matrix2::new(c(1.0), c(0.0), c(0.0), c((1.0 - g).sqrt())), Matrix2::new(c(0.0), c(g.sqrt()), c(0.0), c(0.0))]
}

fn qubit_count(rho: &DenseOperator) -> Result<usize> {
    let dim = rho.nrows();
    if dim != rho.ncols() || !dim.is_power_of_two() {
        return Err(Error::NotDensity(format!("shape {}x{}", rho.nrows(), rho.ncols())));
    }
    Ok(dim.trailing_zeros() as usize)
}

fn check_density(rho: &DenseOperator) -> Result<usize> {
    let n = qubit_count(rho)?;
    let trace = rho.trace();
    if (trace - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(Error::NotDensity(format!("trace {trace}")));
    }
    let skew = (rho - rho.adjoint()).norm();
    if skew > 1e-10 {
        return Err(Error::NotDensity(format!("not Hermitian (deviation {skew:e})")));
    }
    Ok(n)
}

/// `K_q ρ K_q†` for a single-qubit `K` acting on qubit `q` of `n`.
fn conjugate_on(rho: &DenseOperator, k: &Matrix2<Complex64>, q: usize, n: usize) -> DenseOperator {
    let dim = rho.nrows();
    let shift = n - 1 - q;
    let mask = 1usize << shift;
    let bit = |i: usize| (i >> shift) & 1;
    // left multiply: (Kρ)_{ij} = Σ_b K[bit_i, b] ρ[i with bit b, j]
    let mut left = DenseOperator::zeros(dim, dim);
    for i in 0..dim {
        let bi = bit(i);
        let i0 = i & !mask;
        for j in 0..dim {
            left[(i, j)] = k[(bi, 0)] * rho[(i0, j)] + k[(bi, 1)] * rho[(i0 | mask, j)];
        }
    }
    let mut out = DenseOperator::zeros(dim, dim);
    for j in 0..dim {
        let bj = bit(j);
        let j0 = j & !mask;
        for i in 0..dim {
            out[(i, j)] = left[(i, j0)] * k[(bj, 0)].conj() + left[(i, j0 | mask)] * k[(bj, 1)].conj();
        }
    }
    out
}

/// Applies independent damping to each listed qubit.
pub fn apply_channel(rho: &DenseOperator, gamma: DampingParameter, qubits: &[usize]) -> Result<DenseOperator> {
    let n = check_density(rho)?;
    check_cap("apply_channel", n, DENSITY_CAP)?;
    let kraus = ad_kraus(gamma);
    let mut out = rho.clone();
    for &q in qubits {
        if q >= n {
            return Err(Error::QubitRange { index: q, n });
        }
        out = conjugate_on(&out, &kraus[0], q, n) + conjugate_on(&out, &kraus[1], q, n);
    }
    Ok(out)
}

/// Inner encodings whose single excitation damps to the all-zero flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerKind {
    /// `|01⟩, |10⟩`
    DualRail,
    /// `|001⟩, |010⟩, |100⟩`: one qutrit in three qubits
    Qutrit3,
}

impl InnerKind {
    pub fn num_qubits(self) -> usize {
        match self {
            InnerKind::DualRail => 2,
            InnerKind::Qutrit3 => 3,
        }
    }

    /// Basis indices spanning the code space.
    pub fn code_indices(self) -> Vec<usize> {
        let n = self.num_qubits();
        (0..n).map(|q| 1usize << q).rev().collect()
    }
}

impl fmt::Display for InnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerKind::DualRail => "dualrail",
            InnerKind::Qutrit3 => "qutrit3",
        })
    }
}

impl FromStr for InnerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dualrail" => Ok(InnerKind::DualRail),
            "qutrit3" => Ok(InnerKind::Qutrit3),
            _ => Err(Error::Precondition(format!("unknown inner code {s:?} (expected dualrail or qutrit3)"))),
        }
    }
}

/// Random normalized state in the inner code space.
pub fn random_inner_state<R: Rng + ?Sized>(inner: InnerKind, rng: &mut R) -> DenseState {
    let mut psi = DenseState::zeros(1 << inner.num_qubits());
    for i in inner.code_indices() {
        psi[i] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    let norm = psi.norm();
    psi / Complex64::new(norm, 0.0)
}

/// Frobenius norm of `E^{⊗b}(ρ) - (1-γ)ρ - γ|0…0⟩⟨0…0|`.
pub fn erasure_lemma_check(gamma: DampingParameter, rho: &DenseOperator, inner: InnerKind) -> Result<f64> {
    let b = inner.num_qubits();
    if qubit_count(rho)? != b {
        return Err(Error::Dimension { expected: b, actual: qubit_count(rho)? });
    }
    let mut projector = DenseOperator::zeros(1 << b, 1 << b);
    for i in inner.code_indices() {
        projector[(i, i)] = Complex64::new(1.0, 0.0);
    }
    let leak = (rho - &projector * rho * &projector).norm();
    if leak > 1e-10 {
        return Err(Error::OutsideCodeSpace(leak));
    }
    let out = apply_channel(rho, gamma, &(0..b).collect::<Vec<_>>())?;
    let g = gamma.gamma();
    let mut expected = rho * Complex64::new(1.0 - g, 0.0);
    expected[(0, 0)] += Complex64::new(g, 0.0);
    Ok((out - expected).norm())
}
