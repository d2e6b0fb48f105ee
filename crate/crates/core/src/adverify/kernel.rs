//! Gray-code evaluation of `P E P` without materializing the Pauli sum.
//!
//! Per qubit `A = X(I - Z)`, `A† = X(I + Z)` and `B = I - Z`, so
//! `E = X_{Sx} ∏_{q∈S} (I + s_q Z_q)` with `s_q = +1` on A† qubits and `-1`
//! elsewhere. The term for `T ⊆ S` is `∏_T s_q · (-i)^{|Sx ∩ T|}` times the
//! Pauli with X-part `Sx` and Z-part `T` in Y form.
//!
//! Every per-qubit quantity the check needs is GF(2)-linear in the
//! symplectic vector: the syndrome, the logical class `(a, b)`, and the
//! generator combination completing `L(a, b)` to the operator. A Gray code
//! over `T` updates all three with one XOR per term.

use std::collections::BTreeMap;

use crate::bits::{BitVec, Echelon};
use crate::pauli::{Gaussian, Pauli, PauliOperator, Phase};
use crate::stabcode::StabilizerCode;

use super::{ClassCoefficient, ErrorSupport, ErrorVerdict};

/// Precomputed per-qubit signatures for one code.
pub struct Checker {
    code: StabilizerCode,
    /// words holding the syndrome; zero here means "in the normalizer"
    syndrome_words: usize,
    class_offset: usize,
    combo_offset: usize,
    words: usize,
    x_sig: Vec<Vec<u64>>,
    z_sig: Vec<Vec<u64>>,
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn bit(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

impl Checker {
    pub fn new(code: &StabilizerCode) -> Self {
        let n = code.n();
        let k = code.k();
        let r = code.generators().len();
        let syndrome_words = r.div_ceil(64);
        let class_words = (2 * k).div_ceil(64);
        let combo_words = r.div_ceil(64);
        let class_offset = syndrome_words * 64;
        let combo_offset = (syndrome_words + class_words) * 64;
        let words = syndrome_words + class_words + combo_words;

        let gens: Vec<BitVec> = code.generators().iter().map(|g| g.symplectic()).collect();
        let echelon = Echelon::new(&gens);
        let logical_sym = |a: &[bool], b: &[bool]| {
            let mut v = BitVec::zeros(2 * n);
            for i in 0..k {
                if a[i] {
                    v.xor_assign(&code.logical_x()[i].symplectic());
                }
                if b[i] {
                    v.xor_assign(&code.logical_z()[i].symplectic());
                }
            }
            v
        };
        let signature = |p: &PauliOperator| {
            let mut sig = vec![0u64; words];
            for (i, g) in code.generators().iter().enumerate() {
                if g.anticommutes_unchecked(p) {
                    set_bit(&mut sig, i);
                }
            }
            let a: Vec<bool> = code.logical_z().iter().map(|z| z.anticommutes_unchecked(p)).collect();
            let b: Vec<bool> = code.logical_x().iter().map(|x| x.anticommutes_unchecked(p)).collect();
            for i in 0..k {
                if a[i] {
                    set_bit(&mut sig, class_offset + i);
                }
                if b[i] {
                    set_bit(&mut sig, class_offset + k + i);
                }
            }
            // linear on all of GF(2)^{2n}; meaningful once the syndrome vanishes
            let mut residual = p.symplectic();
            residual.xor_assign(&logical_sym(&a, &b));
            let (_, combo) = echelon.reduce(&residual);
            for j in combo.ones() {
                set_bit(&mut sig, combo_offset + j);
            }
            sig
        };
        let single = |q, l| PauliOperator::single(n, q, l).expect("in range");
        Self {
            code: code.clone(),
            syndrome_words,
            class_offset,
            combo_offset,
            words,
            x_sig: (0..n).map(|q| signature(&single(q, Pauli::X))).collect(),
            z_sig: (0..n).map(|q| signature(&single(q, Pauli::Z))).collect(),
        }
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    /// Phase of `L(a, b) · ∏ g_j^{c_j}` read from a normalizer signature.
    fn representative_phase(&self, sig: &[u64]) -> Phase {
        let code = &self.code;
        let k = code.k();
        let mut rep = PauliOperator::identity(code.n());
        for i in 0..k {
            if bit(sig, self.class_offset + i) {
                rep.mul_assign_unchecked(&code.logical_x()[i]);
            }
        }
        for i in 0..k {
            if bit(sig, self.class_offset + k + i) {
                rep.mul_assign_unchecked(&code.logical_z()[i]);
            }
        }
        for (j, g) in code.generators().iter().enumerate() {
            if bit(sig, self.combo_offset + j) {
                rep.mul_assign_unchecked(g);
            }
        }
        rep.phase()
    }

    fn class_key(&self, sig: &[u64]) -> Vec<u64> {
        let k2 = 2 * self.code.k();
        let mut key = vec![0u64; k2.div_ceil(64)];
        for i in 0..k2 {
            if bit(sig, self.class_offset + i) {
                set_bit(&mut key, i);
            }
        }
        key
    }

    /// Logical-class buckets of `P E P`. The support must be valid for the
    /// code; [`super::check_error`] checks that first.
    pub fn check(&self, e: &ErrorSupport) -> ErrorVerdict {
        let mut support: Vec<(usize, bool, bool)> = Vec::with_capacity(e.len());
        support.extend(e.adag.iter().map(|&q| (q, true, false)));
        support.extend(e.a.iter().map(|&q| (q, true, true)));
        support.extend(e.b.iter().map(|&q| (q, false, true)));

        let mut acc = vec![0u64; self.words];
        for &(q, has_x, _) in &support {
            if has_x {
                for (d, s) in acc.iter_mut().zip(&self.x_sig[q]) {
                    *d ^= s;
                }
            }
        }
        let mut in_t = vec![false; support.len()];
        let mut negatives = 0i32;
        let mut overlap = 0i32;
        // bucket key -> counts of i^0, i^1, i^2, i^3
        let mut buckets: BTreeMap<Vec<u64>, [i64; 4]> = BTreeMap::new();
        for step in 0u64..(1u64 << support.len()) {
            if step > 0 {
                let j = step.trailing_zeros() as usize;
                let (q, has_x, negative) = support[j];
                in_t[j] = !in_t[j];
                for (d, s) in acc.iter_mut().zip(&self.z_sig[q]) {
                    *d ^= s;
                }
                let delta = if in_t[j] { 1 } else { -1 };
                if negative {
                    negatives += delta;
                }
                if has_x {
                    overlap += delta;
                }
            }
            if acc[..self.syndrome_words].iter().any(|&w| w != 0) {
                continue;
            }
            // term = (-1)^negatives (-i)^overlap · op, and op = rep_phase^{-1} · L(a,b) s
            let exponent = 2 * negatives + 3 * overlap + self.representative_phase(&acc).inverse().exponent() as i32;
            buckets.entry(self.class_key(&acc)).or_insert([0; 4])[exponent.rem_euclid(4) as usize] += 1;
        }
        let k = self.code.k();
        let mut classes = buckets
            .into_iter()
            .map(|(key, c)| {
                let bits = |off: usize| (0..k).map(|i| if bit(&key, off + i) { '1' } else { '0' }).collect();
                ClassCoefficient { a: bits(0), b: bits(k), coefficient: Gaussian::new(c[0] - c[2], c[1] - c[3]) }
            })
            .filter(|c| c.coefficient != Gaussian::new(0, 0))
            .collect::<Vec<_>>();
        classes.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
        ErrorVerdict { classes }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{check_error_expanded, enumerate_error_supports, ErrorModel};
    use super::*;
    use crate::concat::{concatenate, dual_rail};
    use crate::stabcode::get_code;

    #[test]
    fn kernel_matches_expansion() {
        let codes = [
            get_code("dualrail").unwrap(),
            get_code("leung_4_1").unwrap(),
            get_code("five_1_3").unwrap(),
            get_code("c4_2_2").unwrap(),
            get_code("h8_8_3_3").unwrap(),
            concatenate(&get_code("c4_1_2").unwrap(), &dual_rail()).unwrap(),
        ];
        for code in &codes {
            let checker = Checker::new(code);
            for model in [ErrorModel::KnillLaflamme, ErrorModel::AProducts] {
                for e in enumerate_error_supports(code.n(), 1, model) {
                    assert_eq!(checker.check(&e), check_error_expanded(code, &e).unwrap(), "{} {e}", code.name());
                }
            }
        }
    }

    #[test]
    fn kernel_matches_expansion_on_larger_supports() {
        let code = get_code("shor_9_1").unwrap();
        let checker = Checker::new(&code);
        for e in enumerate_error_supports(9, 2, ErrorModel::KnillLaflamme).step_by(37) {
            assert_eq!(checker.check(&e), check_error_expanded(&code, &e).unwrap(), "{e}");
        }
    }
}
