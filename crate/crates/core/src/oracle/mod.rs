//! Dense state-vector and density-matrix backend, independent of the
//! symbolic reduction in `stabcode` and `adverify`.
//!
//! Qubit 0 is the most significant bit of a basis index, so an `n`-qubit
//! basis state `|b_0 b_1 … b_{n-1}⟩` has index `Σ b_q 2^{n-1-q}`.

mod channel;
mod fidelity;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bits::{BitVec, Echelon};
use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, PauliSum, Phase};
use crate::stabcode::StabilizerCode;

pub use channel::{ad_kraus, apply_channel, erasure_lemma_check, random_inner_state, DampingParameter, InnerKind};
pub use fidelity::{fidelity_experiment, FidelityResult, DEFAULT_GAMMAS};

/// Largest register for state vectors.
pub const STATE_CAP: usize = 14;
/// Largest register for density-matrix experiments.
pub const DENSITY_CAP: usize = 10;

pub type DenseState = DVector<Complex64>;
pub type DenseOperator = DMatrix<Complex64>;

pub(crate) fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::DenseCap { what, n, cap });
    }
    Ok(())
}

fn phase_value(p: Phase) -> Complex64 {
    let g = p.to_gaussian();
    Complex64::new(g.re as f64, g.im as f64)
}

/// Index-space masks `(x, z)` of a Pauli, honoring the MSB-first layout.
fn masks(p: &PauliOperator) -> (usize, usize) {
    let n = p.num_qubits();
    let (xb, zb) = (p.x_bits(), p.z_bits());
    let mut x = 0usize;
    let mut z = 0usize;
    for q in 0..n {
        let bit = 1usize << (n - 1 - q);
        if xb.get(q) {
            x |= bit;
        }
        if zb.get(q) {
            z |= bit;
        }
    }
    (x, z)
}

/// `acc += c · P ψ` without building the matrix of `P`.
fn add_pauli_applied(acc: &mut DenseState, p: &PauliOperator, c: Complex64, psi: &DenseState) {
    let (x, z) = masks(p);
    // P = i^k ⊗ letters and Y = iXZ per qubit, so P = i^{k + |x∧z|} X^x Z^z
    let y = (x & z).count_ones() as i64;
    let c = c * phase_value(p.phase() * Phase::new(y));
    for (i, &amp) in psi.iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let sign = if (i & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        acc[i ^ x] += c * amp * sign;
    }
}

fn check_state(n: usize, psi: &DenseState) -> Result<()> {
    if psi.len() != 1usize << n {
        return Err(Error::Dimension { expected: n, actual: psi.len().trailing_zeros() as usize });
    }
    Ok(())
}

pub fn apply_pauli(p: &PauliOperator, psi: &DenseState) -> Result<DenseState> {
    check_state(p.num_qubits(), psi)?;
    let mut out = DenseState::zeros(psi.len());
    add_pauli_applied(&mut out, p, Complex64::new(1.0, 0.0), psi);
    Ok(out)
}

pub fn apply_pauli_sum(op: &PauliSum, psi: &DenseState) -> Result<DenseState> {
    check_state(op.num_qubits(), psi)?;
    let mut out = DenseState::zeros(psi.len());
    for (p, c) in op.terms() {
        add_pauli_applied(&mut out, &p, Complex64::new(c.re as f64, c.im as f64), psi);
    }
    Ok(out)
}

/// Full `2^n × 2^n` matrix of `P`.
pub fn pauli_matrix(p: &PauliOperator) -> Result<DenseOperator> {
    let n = p.num_qubits();
    check_cap("pauli_matrix", n, DENSITY_CAP)?;
    let dim = 1usize << n;
    let mut m = DenseOperator::zeros(dim, dim);
    for j in 0..dim {
        let mut e = DenseState::zeros(dim);
        e[j] = Complex64::new(1.0, 0.0);
        m.set_column(j, &apply_pauli(p, &e)?);
    }
    Ok(m)
}

/// Solves `rows · x = rhs` over GF(2), returning one solution if any.
fn solve_gf2(rows: &[BitVec], rhs: &[bool], ncols: usize) -> Option<BitVec> {
    let augmented: Vec<BitVec> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = BitVec::zeros(ncols + 1);
            for i in r.ones() {
                v.set(i, true);
            }
            v.set(ncols, b);
            v
        })
        .collect();
    let ech = Echelon::new(&augmented);
    let mut x = BitVec::zeros(ncols);
    for (pivot, row) in ech.basis() {
        if pivot == ncols {
            return None;
        }
        x.set(pivot, row.get(ncols));
    }
    Some(x)
}

/// A computational basis index inside the support of the joint +1
/// eigenstate of `ops` (independent, commuting, Hermitian, `n` of them).
fn support_index(n: usize, ops: &[PauliOperator]) -> Result<usize> {
    let xs: Vec<BitVec> = ops.iter().map(|p| p.x_bits()).collect();
    let ech = Echelon::new(&xs);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &i in ech.dependent() {
        // ops[i] times the combination sharing its X part is diagonal
        let (_, combo) = ech.reduce(&xs[i]);
        let mut d = ops[i].clone();
        for j in combo.ones() {
            d.mul_assign_unchecked(&ops[j]);
        }
        debug_assert!(d.x_bits().is_zero() && d.phase().is_real());
        rows.push(d.z_bits());
        rhs.push(d.phase() == Phase::MINUS_ONE);
    }
    let x = solve_gf2(&rows, &rhs, n).ok_or_else(|| Error::Precondition("stabilizer contains -I".into()))?;
    Ok(x.ones().fold(0usize, |acc, q| acc | 1 << (n - 1 - q)))
}

/// `|ψ_j⟩ = X̄^{j}|ψ_0⟩`, where `|ψ_0⟩` is the +1 eigenstate of every
/// generator and every logical Z, phased so its amplitude on a support
/// basis state is real and positive. Bit `k-1-i` of `j` is the exponent
/// of logical X `i`.
pub fn codewords(code: &StabilizerCode) -> Result<Vec<DenseState>> {
    let n = code.n();
    check_cap("codewords", n, STATE_CAP)?;
    let ops: Vec<PauliOperator> = code.generators().iter().chain(code.logical_z()).cloned().collect();
    let start = support_index(n, &ops)?;
    let mut psi = DenseState::zeros(1 << n);
    psi[start] = Complex64::new(1.0, 0.0);
    for g in &ops {
        let mut next = psi.clone();
        add_pauli_applied(&mut next, g, Complex64::new(1.0, 0.0), &psi);
        psi = next * Complex64::new(0.5, 0.0);
    }
    let norm = psi.norm();
    if norm < 1e-9 {
        return Err(Error::Precondition("empty code space".into()));
    }
    let lead = psi[start];
    psi *= lead.conj() / (lead.norm() * norm);
    let k = code.k();
    (0..1usize << k)
        .map(|j| {
            let mut s = psi.clone();
            for i in 0..k {
                if (j >> (k - 1 - i)) & 1 == 1 {
                    s = apply_pauli(&code.logical_x()[i], &s)?;
                }
            }
            Ok(s)
        })
        .collect()
}

/// `M_ij = ⟨ψ_i| op |ψ_j⟩`.
pub fn matrix_element(basis: &[DenseState], op: &PauliSum) -> Result<DenseOperator> {
    let d = basis.len();
    let mut m = DenseOperator::zeros(d, d);
    for (j, psi) in basis.iter().enumerate() {
        let image = apply_pauli_sum(op, psi)?;
        for (i, phi) in basis.iter().enumerate() {
            m[(i, j)] = phi.dotc(&image);
        }
    }
    Ok(m)
}
