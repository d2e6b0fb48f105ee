//! Exact n-qubit Pauli algebra in the binary symplectic representation.
//!
//! A [`PauliOperator`] is `i^k · P_0 ⊗ … ⊗ P_{n-1}` where qubit `q` carries
//! `I`, `X`, `Z` or `Y` according to `(x_q, z_q) = (0,0), (1,0), (0,1), (1,1)`.
//! The single fixed convention is `Y = iXZ`, so `X·Z = -iY`.
//!
//! [`PauliSum`] holds exact Gaussian-integer combinations of Paulis; it is the
//! symbolic form of products of the damping operators `A = X + iY`,
//! `A† = X - iY` and `B = I - Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bits::{self, BitVec};
use crate::error::{Error, Result};

/// Exact Gaussian integer `a + bi`.
pub type Gaussian = Complex<i64>;

/// Power of `i`, stored mod 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(exponent: i64) -> Self {
        Phase(exponent.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Phase::new(-(self.0 as i64))
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn to_gaussian(self) -> Gaussian {
        match self.0 {
            0 => Complex::new(1, 0),
            1 => Complex::new(0, 1),
            2 => Complex::new(-1, 0),
            _ => Complex::new(0, -1),
        }
    }

    /// Inverse of [`Phase::to_gaussian`] for the four units.
    pub fn from_unit(c: Gaussian) -> Option<Self> {
        match (c.re, c.im) {
            (1, 0) => Some(Phase(0)),
            (0, 1) => Some(Phase(1)),
            (-1, 0) => Some(Phase(2)),
            (0, -1) => Some(Phase(3)),
            _ => None,
        }
    }

    fn prefix(self) -> &'static str {
        ["+", "+i", "-", "-i"][self.0 as usize]
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({self})")
    }
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        let w = bits::word_count(n);
        Self { n, x: vec![0; w], z: vec![0; w], phase: Phase::ONE }
    }

    /// `p` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Result<Self> {
        let mut op = Self::identity(n);
        op.set(q, p)?;
        Ok(op)
    }

    pub fn from_bits(x: &BitVec, z: &BitVec, phase: Phase) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::Dimension { expected: x.len(), actual: z.len() });
        }
        Ok(Self { n: x.len(), x: x.words().to_vec(), z: z.words().to_vec(), phase })
    }

    pub(crate) fn from_words(n: usize, x: Vec<u64>, z: Vec<u64>, phase: Phase) -> Self {
        debug_assert_eq!(x.len(), bits::word_count(n));
        debug_assert_eq!(z.len(), bits::word_count(n));
        Self { n, x, z, phase }
    }

    pub fn from_letters(letters: &[Pauli], phase: Phase) -> Self {
        let mut op = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            op.set(q, p).expect("index in range");
        }
        op.phase = phase;
        op
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n, "qubit {q} out of range {}", self.n);
        Pauli::from_bits(bits::get(&self.x, q), bits::get(&self.z, q))
    }

    /// Replaces the letter on qubit `q`; the phase is left untouched.
    pub fn set(&mut self, q: usize, p: Pauli) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitRange { index: q, n: self.n });
        }
        let (xb, zb) = p.bits();
        if bits::get(&self.x, q) != xb {
            bits::flip(&mut self.x, q);
        }
        if bits::get(&self.z, q) != zb {
            bits::flip(&mut self.z, q);
        }
        Ok(())
    }

    pub fn x_bits(&self) -> BitVec {
        BitVec::from_words(self.n, self.x.clone())
    }

    pub fn z_bits(&self) -> BitVec {
        BitVec::from_words(self.n, self.z.clone())
    }

    pub(crate) fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub(crate) fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// The `(x | z)` vector of length `2n`, ignoring the phase.
    pub fn symplectic(&self) -> BitVec {
        let mut v = BitVec::zeros(2 * self.n);
        for q in 0..self.n {
            if bits::get(&self.x, q) {
                v.set(q, true);
            }
            if bits::get(&self.z, q) {
                v.set(self.n + q, true);
            }
        }
        v
    }

    pub fn from_symplectic(v: &BitVec, phase: Phase) -> Self {
        assert!(v.len().is_multiple_of(2));
        let n = v.len() / 2;
        let mut op = Self::identity(n);
        for q in 0..n {
            if v.get(q) {
                bits::flip(&mut op.x, q);
            }
            if v.get(n + q) {
                bits::flip(&mut op.z, q);
            }
        }
        op.phase = phase;
        op
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| bits::get(&self.x, q) || bits::get(&self.z, q)).collect()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        bits::is_zero(&self.x) && bits::is_zero(&self.z)
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension { expected: self.n, actual: other.n });
        }
        Ok(())
    }

    /// `true` iff the two operators commute (symplectic product zero).
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        bits::dot(&self.x, &other.z) ^ bits::dot(&self.z, &other.x)
    }

    /// `self ← self · rhs`, including the phase.
    pub fn mul_assign_right(&mut self, rhs: &Self) -> Result<()> {
        self.check_dims(rhs)?;
        self.mul_assign_unchecked(rhs);
        Ok(())
    }

    #[inline]
    pub(crate) fn mul_assign_unchecked(&mut self, rhs: &Self) {
        // Write each letter as i^{x z} X^x Z^z; moving Z^{z1} past X^{x2}
        // costs (-1)^{z1 x2}, and the result is re-expressed in Y form.
        let mut k: u32 = self.phase.0 as u32 + rhs.phase.0 as u32;
        k += bits::and_popcount(&self.x, &self.z);
        k += bits::and_popcount(&rhs.x, &rhs.z);
        k += 2 * bits::and_popcount(&self.z, &rhs.x);
        bits::xor_into(&mut self.x, &rhs.x);
        bits::xor_into(&mut self.z, &rhs.z);
        let y = bits::and_popcount(&self.x, &self.z);
        self.phase = Phase(((k + 4 * y - y) % 4) as u8);
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.mul_assign_right(rhs)?;
        Ok(out)
    }

    /// Tensor product `self ⊗ other` (qubits of `other` appended).
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut out = Self::identity(n);
        for q in 0..self.n {
            out.set(q, self.get(q)).expect("in range");
        }
        for q in 0..other.n {
            out.set(self.n + q, other.get(q)).expect("in range");
        }
        out.phase = self.phase * other.phase;
        out
    }
}

/// Group product `p · q` with exact phase.
pub fn pauli_mul(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    p.multiply(q)
}

/// `true` iff `p q = q p`.
pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    p.commutes_with(q)
}

impl Mul<&PauliOperator> for &PauliOperator {
    type Output = PauliOperator;

    /// Panics on a qubit-count mismatch; use [`pauli_mul`] to get an error.
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.multiply(rhs).expect("Pauli operators of different length")
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::PauliParse { input: s.to_string(), reason: reason.to_string() };
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MINUS_I, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (Phase::ONE, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, rest)
        } else {
            (Phase::ONE, s)
        };
        if body.is_empty() {
            return Err(err("no qubits"));
        }
        let letters = body
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(err(&format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(&letters, phase))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact linear combination of Paulis with Gaussian-integer coefficients.
///
/// Terms are keyed by their `(x, z)` bits; the stored Pauli carries phase `+1`
/// and any phase is folded into the coefficient. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<(Vec<u64>, Vec<u64>), Gaussian>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pauli(&PauliOperator::identity(n))
    }

    pub fn from_pauli(p: &PauliOperator) -> Self {
        let mut s = Self::zero(p.n);
        s.add_term(p, Complex::new(1, 0)).expect("same length");
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · p`.
    pub fn add_term(&mut self, p: &PauliOperator, coeff: Gaussian) -> Result<()> {
        if p.n != self.n {
            return Err(Error::Dimension { expected: self.n, actual: p.n });
        }
        let c = coeff * p.phase.to_gaussian();
        let key = (p.x.clone(), p.z.clone());
        let entry = self.terms.entry(key).or_insert(Complex::new(0, 0));
        *entry += c;
        if *entry == Complex::new(0, 0) {
            self.terms.remove(&(p.x.clone(), p.z.clone()));
        }
        Ok(())
    }

    /// Terms in a deterministic order, each Pauli with phase `+1`.
    pub fn terms(&self) -> impl Iterator<Item = (PauliOperator, Gaussian)> + '_ {
        self.terms
            .iter()
            .map(move |((x, z), c)| (PauliOperator::from_words(self.n, x.clone(), z.clone(), Phase::ONE), *c))
    }

    pub fn coefficient(&self, p: &PauliOperator) -> Gaussian {
        self.terms
            .get(&(p.x.clone(), p.z.clone()))
            .map(|c| c * p.phase.inverse().to_gaussian())
            .unwrap_or(Complex::new(0, 0))
    }

    pub fn multiply(&self, rhs: &PauliSum) -> Result<PauliSum> {
        if self.n != rhs.n {
            return Err(Error::Dimension { expected: self.n, actual: rhs.n });
        }
        let mut out = PauliSum::zero(self.n);
        for (p, a) in self.terms() {
            for (q, b) in rhs.terms() {
                out.add_term(&(&p * &q), a * b)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &PauliSum) -> Result<PauliSum> {
        let mut out = self.clone();
        for (p, c) in rhs.terms() {
            out.add_term(&p, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let letters = p.to_string();
            write!(f, "({c}){}", &letters[1..])?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliSum[{self}]")
    }
}

/// One factor of an amplitude-damping error product on a single qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DampingFactor {
    /// `A = X + iY = 2|0⟩⟨1|`
    A,
    /// `A† = X - iY = 2|1⟩⟨0|`
    ADag,
    /// `B = I - Z = 2|1⟩⟨1|`
    B,
}

/// Expands `∏_{q∈a} A_q · ∏_{q∈adag} A†_q · ∏_{q∈b} B_q` into Paulis.
///
/// The supports must be pairwise disjoint; on one qubit `AB = 2A`, `A² = 0`
/// and `A†A = 2B`, so overlapping products never add anything new.
pub fn expand_ad_product(a: &[usize], adag: &[usize], b: &[usize], n: usize) -> Result<PauliSum> {
    let mut factors: Vec<(usize, DampingFactor)> = Vec::new();
    let mut seen = vec![false; n];
    for (set, kind) in [(a, DampingFactor::A), (adag, DampingFactor::ADag), (b, DampingFactor::B)] {
        for &q in set {
            if q >= n {
                return Err(Error::QubitRange { index: q, n });
            }
            if seen[q] {
                return Err(Error::OverlappingSupports(q));
            }
            seen[q] = true;
            factors.push((q, kind));
        }
    }
    // Each factor is a two-term sum; qubits are disjoint so no ordering phases.
    let mut out = PauliSum::zero(n);
    let m = factors.len();
    for choice in 0u64..(1u64 << m) {
        let mut p = PauliOperator::identity(n);
        let mut coeff = Complex::new(1i64, 0);
        for (j, &(q, kind)) in factors.iter().enumerate() {
            let second = (choice >> j) & 1 == 1;
            let (letter, c) = match (kind, second) {
                (DampingFactor::A, false) | (DampingFactor::ADag, false) => (Pauli::X, Complex::new(1, 0)),
                (DampingFactor::A, true) => (Pauli::Y, Complex::new(0, 1)),
                (DampingFactor::ADag, true) => (Pauli::Y, Complex::new(0, -1)),
                (DampingFactor::B, false) => (Pauli::I, Complex::new(1, 0)),
                (DampingFactor::B, true) => (Pauli::Z, Complex::new(-1, 0)),
            };
            p.set(q, letter)?;
            coeff *= c;
        }
        out.add_term(&p, coeff)?;
    }
    Ok(out)
}

/// `∏_{q∈support_a} (X_q + iY_q) · ∏_{q∈support_b} (I_q − Z_q)`.
pub fn expand_ad_error(support_a: &[usize], support_b: &[usize], n: usize) -> Result<PauliSum> {
    expand_ad_product(support_a, &[], support_b, n)
}
