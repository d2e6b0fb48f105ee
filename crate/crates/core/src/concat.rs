//! Concatenation of an outer stabilizer code with a one-qubit inner code,
//! by default the dual-rail code `|0⟩ ↦ |01⟩, |1⟩ ↦ |10⟩` stabilized by `-ZZ`.
//!
//! With dual-rail blocks every damping event lands in a detectable erasure
//! state, so an outer `[[m, k, d]]` code yields a `[[2m, k]]` code that
//! corrects `d - 1` damping errors.

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator, Phase};
use crate::stabcode::{CodeParams, StabilizerCode};

/// A `[[block_size, 1]]` code used for every outer qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerCode {
    pub name: String,
    pub block_size: usize,
    pub stabilizer: Vec<PauliOperator>,
    pub logical_x: PauliOperator,
    pub logical_z: PauliOperator,
}

pub fn dual_rail() -> InnerCode {
    let p = |s: &str| s.parse::<PauliOperator>().expect("literal");
    InnerCode {
        name: "dualrail".into(),
        block_size: 2,
        stabilizer: vec![p("-ZZ")],
        logical_x: p("XX"),
        logical_z: p("ZI"),
    }
}

impl InnerCode {
    pub fn as_code(&self) -> Result<StabilizerCode> {
        StabilizerCode::new(
            self.name.clone(),
            self.block_size,
            self.stabilizer.clone(),
            vec![self.logical_x.clone()],
            vec![self.logical_z.clone()],
        )
    }

    /// Inner images of the four letters; `Y = iXZ` maps to `i X̄ Z̄`, which
    /// keeps substitution a homomorphism of signed Paulis.
    fn images(&self) -> [PauliOperator; 4] {
        let mut y = self.logical_x.multiply(&self.logical_z).expect("same block");
        y = y.clone().with_phase(y.phase() * Phase::I);
        [PauliOperator::identity(self.block_size), self.logical_x.clone(), y, self.logical_z.clone()]
    }
}

fn letter_index(p: Pauli) -> usize {
    match p {
        Pauli::I => 0,
        Pauli::X => 1,
        Pauli::Y => 2,
        Pauli::Z => 3,
    }
}

/// Places `op` on qubits `offset..offset + op.n` of an `n`-qubit register.
fn embed(op: &PauliOperator, n: usize, offset: usize) -> PauliOperator {
    let mut out = PauliOperator::identity(n);
    for q in 0..op.num_qubits() {
        out.set(offset + q, op.get(q)).expect("block in range");
    }
    out.with_phase(op.phase())
}

fn substitute(outer_op: &PauliOperator, images: &[PauliOperator; 4], block: usize) -> PauliOperator {
    let n = outer_op.num_qubits() * block;
    let mut out = PauliOperator::identity(n).with_phase(outer_op.phase());
    for q in 0..outer_op.num_qubits() {
        let image = &images[letter_index(outer_op.get(q))];
        // disjoint blocks commute, so only the image's own phase enters
        out.mul_assign_right(&embed(image, n, q * block)).expect("same length");
    }
    out
}

/// Outer generator images first, then the inner stabilizer on each block;
/// block `q` occupies qubits `block_size·q ..`.
pub fn concatenate(outer: &StabilizerCode, inner: &InnerCode) -> Result<StabilizerCode> {
    if let Some(v) = outer.validate().violation {
        return Err(Error::InvalidCode(v));
    }
    if let Some(v) = inner.as_code()?.validate().violation {
        return Err(Error::InvalidCode(v));
    }
    let b = inner.block_size;
    let n = outer.n() * b;
    let images = inner.images();
    let map = |ops: &[PauliOperator]| ops.iter().map(|p| substitute(p, &images, b)).collect::<Vec<_>>();
    let mut generators = map(outer.generators());
    for q in 0..outer.n() {
        generators.extend(inner.stabilizer.iter().map(|s| embed(s, n, q * b)));
    }
    StabilizerCode::new(
        format!("{}.{}", outer.name(), inner.name),
        n,
        generators,
        map(outer.logical_x()),
        map(outer.logical_z()),
    )?
    .validated()
}

/// `[[m, k, d]]` outer parameters to `[[2m, k]]` with `t = d - 1`.
pub fn concatenated_params(p: CodeParams) -> Result<CodeParams> {
    let d = p.d.ok_or_else(|| Error::Precondition("outer distance is required".into()))?;
    if d == 0 {
        return Err(Error::Precondition("outer distance must be at least 1".into()));
    }
    Ok(CodeParams { n: 2 * p.n, k: p.k, d: None, t: Some(d - 1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabcode::{css_code, get_code};

    #[test]
    fn trivial_outer_gives_dual_rail() {
        let trivial = css_code(1, &[], &[]).unwrap();
        let code = concatenate(&trivial, &dual_rail()).unwrap();
        let dr = get_code("dualrail").unwrap();
        assert_eq!(code.generators(), dr.generators());
        assert_eq!(code.logical_x(), dr.logical_x());
        assert_eq!(code.logical_z(), dr.logical_z());
    }

    #[test]
    fn letter_images() {
        let [i, x, y, z] = dual_rail().images();
        assert_eq!(i.to_string(), "+II");
        assert_eq!(x.to_string(), "+XX");
        assert_eq!(z.to_string(), "+ZI");
        // i · XX · ZI = i · (XZ ⊗ X) = i · (-iY ⊗ X) = YX
        assert_eq!(y.to_string(), "+YX");
    }

    #[test]
    fn five_qubit_layout() {
        let code = concatenate(&get_code("five_1_3").unwrap(), &dual_rail()).unwrap();
        assert_eq!((code.n(), code.k()), (10, 1));
        let g: Vec<String> = code.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(g[0], "+XXZIZIXXII");
        assert_eq!(g[4], "-ZZIIIIIIII");
        assert_eq!(g[8], "-IIIIIIIIZZ");
        assert_eq!(code.logical_x()[0].to_string(), "+XXXXXXXXXX");
        assert_eq!(code.logical_z()[0].to_string(), "+ZIZIZIZIZI");
    }

    #[test]
    fn y_factors_stay_valid() {
        let code = concatenate(&get_code("h8_8_3_3").unwrap(), &dual_rail()).unwrap();
        assert_eq!((code.n(), code.k()), (16, 3));
    }

    #[test]
    fn invalid_outer_is_rejected() {
        let bad = StabilizerCode::from_strings("bad", &["XI", "ZI"], &[], &[]).unwrap();
        assert!(matches!(concatenate(&bad, &dual_rail()), Err(Error::InvalidCode(_))));
    }

    #[test]
    fn parameter_law() {
        let p = concatenated_params(CodeParams::new(5, 1, Some(3))).unwrap();
        assert_eq!((p.n, p.k, p.t), (10, 1, Some(2)));
        let p = concatenated_params(CodeParams::new(1, 1, Some(1))).unwrap();
        assert_eq!((p.n, p.t), (2, Some(0)));
        let p = concatenated_params(CodeParams::new(10, 1, Some(4))).unwrap();
        assert_eq!((p.n, p.t), (20, Some(3)));
        assert!(concatenated_params(CodeParams::new(5, 1, None)).is_err());
    }
}
