//! Code constructors: CSS, the Bacon-Shor damping family, subcodes, and a
//! symplectic Gram-Schmidt logical-operator finder for arbitrary stabilizers.

use std::fmt;

use crate::bits::{nullspace, BitVec, Echelon};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator, Phase};

use super::StabilizerCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicalKind {
    X,
    Z,
}

impl fmt::Display for LogicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicalKind::X => "X",
            LogicalKind::Z => "Z",
        })
    }
}

fn typed_pauli(v: &BitVec, letter: Pauli) -> PauliOperator {
    let mut p = PauliOperator::identity(v.len());
    for q in v.ones() {
        p.set(q, letter).expect("in range");
    }
    p
}

/// Vectors of `candidates` that extend the span of `base`, in order.
fn complement(base: &[BitVec], candidates: &[BitVec]) -> Vec<BitVec> {
    let mut rows: Vec<BitVec> = base.to_vec();
    rows.extend_from_slice(candidates);
    let ech = Echelon::new(&rows);
    let dependent = ech.dependent();
    candidates
        .iter()
        .enumerate()
        .filter(|(i, _)| !dependent.contains(&(base.len() + i)))
        .map(|(_, v)| v.clone())
        .collect()
}

/// CSS code from X-type and Z-type stabilizer supports on `n` qubits.
///
/// Logicals are X-type and Z-type complements of the stabilizer spans inside
/// the respective kernels, paired so that `X̄_i` anticommutes only with `Z̄_i`.
pub fn css_code(n: usize, x_rows: &[BitVec], z_rows: &[BitVec]) -> Result<StabilizerCode> {
    for r in x_rows.iter().chain(z_rows) {
        if r.len() != n {
            return Err(Error::Dimension { expected: n, actual: r.len() });
        }
    }
    for (i, xr) in x_rows.iter().enumerate() {
        for (j, zr) in z_rows.iter().enumerate() {
            if xr.dot(zr) {
                return Err(Error::Precondition(format!(
                    "X row {i} ({xr}) and Z row {j} ({zr}) overlap oddly, so the generators anticommute"
                )));
            }
        }
    }
    let mut lx = complement(x_rows, &nullspace(z_rows, n));
    let mut lz = complement(z_rows, &nullspace(x_rows, n));
    if lx.len() != lz.len() {
        return Err(Error::Precondition(format!(
            "dependent stabilizer rows: {} X-type and {} Z-type logicals",
            lx.len(),
            lz.len()
        )));
    }
    let k = lx.len();
    for i in 0..k {
        let j = (i..k).find(|&j| lx[i].dot(&lz[j])).expect("logical pairing matrix is invertible");
        lz.swap(i, j);
        for j in 0..k {
            if j != i && lx[i].dot(&lz[j]) {
                let zi = lz[i].clone();
                lz[j].xor_assign(&zi);
            }
        }
        for j in i + 1..k {
            if lx[j].dot(&lz[i]) {
                let xi = lx[i].clone();
                lx[j].xor_assign(&xi);
            }
        }
    }
    let generators = x_rows
        .iter()
        .map(|r| typed_pauli(r, Pauli::X))
        .chain(z_rows.iter().map(|r| typed_pauli(r, Pauli::Z)))
        .collect();
    StabilizerCode::new(
        format!("css_{n}_{k}"),
        n,
        generators,
        lx.iter().map(|v| typed_pauli(v, Pauli::X)).collect(),
        lz.iter().map(|v| typed_pauli(v, Pauli::Z)).collect(),
    )?
    .validated()
}

/// The `[[(t+1)², 1]]` code with codewords `(|0…0⟩ ± |1…1⟩)^{⊗(t+1)}` on
/// blocks of `t+1` qubits. `t = 1` is the four-qubit damping code in its
/// rotated basis and `t = 2` is Shor's nine-qubit code.
///
/// The logical Z is X on the whole first block and the logical X is Z on
/// the first qubit of every block, so logical `|0⟩` is the all-`+` product.
pub fn bacon_shor_ad(t: usize) -> Result<StabilizerCode> {
    if t < 1 {
        return Err(Error::Precondition("bacon_shor_ad needs t >= 1".into()));
    }
    let m = t + 1;
    let n = m * m;
    let z_rows: Vec<BitVec> =
        (0..m).flat_map(|b| (0..m - 1).map(move |i| BitVec::from_indices(n, &[b * m + i, b * m + i + 1]))).collect();
    let x_rows: Vec<BitVec> =
        (0..m - 1).map(|b| BitVec::from_indices(n, &(b * m..(b + 2) * m).collect::<Vec<_>>())).collect();
    let css = css_code(n, &x_rows, &z_rows)?;
    let logical_z = typed_pauli(&BitVec::from_indices(n, &(0..m).collect::<Vec<_>>()), Pauli::X);
    let logical_x = typed_pauli(&BitVec::from_indices(n, &(0..m).map(|b| b * m).collect::<Vec<_>>()), Pauli::Z);
    StabilizerCode::new(format!("bacon_shor_{n}_1"), n, css.generators().to_vec(), vec![logical_x], vec![logical_z])?
        .validated()
}

/// Promotes logical `kind[index]` into the stabilizer, giving `[[n, k-1]]`.
pub fn subcode_fix_logical(code: &StabilizerCode, index: usize, kind: LogicalKind) -> Result<StabilizerCode> {
    let k = code.k();
    if index >= k {
        return Err(Error::LogicalIndex { index, k });
    }
    let fixed = match kind {
        LogicalKind::X => &code.logical_x()[index],
        LogicalKind::Z => &code.logical_z()[index],
    };
    let mut generators = code.generators().to_vec();
    generators.push(fixed.clone());
    let keep = |ops: &[PauliOperator]| {
        ops.iter().enumerate().filter(|(i, _)| *i != index).map(|(_, p)| p.clone()).collect::<Vec<_>>()
    };
    StabilizerCode::new(
        format!("{}_fix{kind}{index}", code.name()),
        code.n(),
        generators,
        keep(code.logical_x()),
        keep(code.logical_z()),
    )?
    .validated()
}

/// Symplectic vector in the plain `[x_0..x_{n-1} | z_0..z_{n-1}]` layout.
fn plain_sym(p: &PauliOperator) -> BitVec {
    p.symplectic()
}

fn sym_product(n: usize, u: &BitVec, v: &BitVec) -> bool {
    let mut acc = false;
    for q in 0..n {
        acc ^= (u.get(q) && v.get(n + q)) ^ (u.get(n + q) && v.get(q));
    }
    acc
}

/// Logical operator pairs for independent commuting `generators`, found by
/// symplectic Gram-Schmidt on a complement of the stabilizer inside its
/// normalizer. All returned operators carry phase `+1`.
pub fn find_logicals(n: usize, generators: &[PauliOperator]) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>)> {
    let sym: Vec<BitVec> = generators.iter().map(plain_sym).collect();
    // rows (z | x) so the ordinary dot product is the symplectic product
    let swapped: Vec<BitVec> = sym
        .iter()
        .map(|v| {
            let mut w = BitVec::zeros(2 * n);
            for q in 0..n {
                w.set(q, v.get(n + q));
                w.set(n + q, v.get(q));
            }
            w
        })
        .collect();
    let normalizer = nullspace(&swapped, 2 * n);
    let mut pool = complement(&sym, &normalizer);
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    while !pool.is_empty() {
        let u = pool.remove(0);
        let j = pool
            .iter()
            .position(|v| sym_product(n, &u, v))
            .ok_or_else(|| Error::Precondition("generators are not a valid stabilizer".into()))?;
        let v = pool.remove(j);
        for w in pool.iter_mut() {
            let with_v = sym_product(n, w, &v);
            let with_u = sym_product(n, w, &u);
            if with_v {
                w.xor_assign(&u);
            }
            if with_u {
                w.xor_assign(&v);
            }
        }
        lx.push(PauliOperator::from_symplectic(&u, Phase::ONE));
        lz.push(PauliOperator::from_symplectic(&v, Phase::ONE));
    }
    Ok((lx, lz))
}
