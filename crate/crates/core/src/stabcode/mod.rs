//! Stabilizer codes with signed generators and explicit logical operators.

mod build;
mod database;
mod distance;
mod format;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::{BitVec, Echelon};
use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, Phase};

pub use build::{bacon_shor_ad, css_code, find_logicals, subcode_fix_logical, LogicalKind};
pub use database::{database_names, get_code};
pub use distance::{css_distances, distance, distance_with, Distance, DistanceConfig};
pub use format::{parse_code, CodeJson};

/// `[[n, k, d]]` parameters plus the damping-correction order `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub t: Option<usize>,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d: Option<usize>) -> Self {
        Self { n, k, d, t: None }
    }
}

/// First violated stabilizer-code invariant, with the operators involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LogicalCountMismatch { x: usize, z: usize },
    GeneratorCount { n: usize, k: usize, generators: usize },
    NonHermitian { role: String, op: String },
    GeneratorsAnticommute { i: usize, j: usize, a: String, b: String },
    DependentGenerator { index: usize, op: String },
    LogicalAnticommutesWithGenerator { logical: String, generator: usize, a: String, b: String },
    LogicalPairing { left: String, right: String, a: String, b: String, expected_commute: bool },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LogicalCountMismatch { x, z } => {
                write!(f, "{x} logical X operators but {z} logical Z operators")
            }
            Violation::GeneratorCount { n, k, generators } => {
                write!(f, "expected n - k = {} generators, found {generators}", n - k)
            }
            Violation::NonHermitian { role, op } => write!(f, "{role} {op} is not Hermitian"),
            Violation::GeneratorsAnticommute { i, j, a, b } => {
                write!(f, "generators {i} and {j} anticommute: {a}, {b}")
            }
            Violation::DependentGenerator { index, op } => {
                write!(f, "generator {index} ({op}) depends on earlier generators")
            }
            Violation::LogicalAnticommutesWithGenerator { logical, generator, a, b } => {
                write!(f, "{logical} anticommutes with generator {generator}: {a}, {b}")
            }
            Violation::LogicalPairing { left, right, a, b, expected_commute } => {
                let want = if *expected_commute { "commute" } else { "anticommute" };
                write!(f, "{left} and {right} should {want}: {a}, {b}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub code: String,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "{}: pass", self.code),
            Some(v) => write!(f, "{}: fail: {v}", self.code),
        }
    }
}

/// A normalizer element written as `phase · L(a, b) · s` with `s` in the
/// stabilizer group and `L(a, b) = ∏ X̄_i^{a_i} · ∏ Z̄_j^{b_j}` (X part first,
/// ascending index).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogicalClass {
    pub a: BitVec,
    pub b: BitVec,
    pub phase: Phase,
    pub in_group: bool,
}

#[derive(Clone)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    reducer: OnceLock<Reducer>,
}

impl PartialEq for StabilizerCode {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.n == other.n
            && self.generators == other.generators
            && self.logical_x == other.logical_x
            && self.logical_z == other.logical_z
    }
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StabilizerCode")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("generators", &self.generators)
            .field("logical_x", &self.logical_x)
            .field("logical_z", &self.logical_z)
            .finish()
    }
}

impl StabilizerCode {
    /// Builds a code after checking only that all operators act on `n`
    /// qubits and that logicals come in pairs. Use [`StabilizerCode::validate`]
    /// or [`StabilizerCode::validated`] for the algebraic invariants.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        for op in generators.iter().chain(&logical_x).chain(&logical_z) {
            if op.num_qubits() != n {
                return Err(Error::Dimension { expected: n, actual: op.num_qubits() });
            }
        }
        if logical_x.len() != logical_z.len() {
            return Err(Error::InvalidCode(Violation::LogicalCountMismatch { x: logical_x.len(), z: logical_z.len() }));
        }
        Ok(Self { name: name.into(), n, generators, logical_x, logical_z, reducer: OnceLock::new() })
    }

    /// Parses generator and logical strings; convenient for fixed tables.
    pub fn from_strings(name: &str, generators: &[&str], logical_x: &[&str], logical_z: &[&str]) -> Result<Self> {
        let parse = |v: &[&str]| v.iter().map(|s| s.parse()).collect::<Result<Vec<PauliOperator>>>();
        let gens = parse(generators)?;
        let lx = parse(logical_x)?;
        let lz = parse(logical_z)?;
        let n = gens
            .first()
            .or(lx.first())
            .map(PauliOperator::num_qubits)
            .ok_or_else(|| Error::Precondition("cannot infer qubit count".into()))?;
        Self::new(name, n, gens, lx, lz)
    }

    pub fn validated(self) -> Result<Self> {
        match self.validate().violation {
            None => Ok(self),
            Some(v) => Err(Error::InvalidCode(v)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn params(&self) -> CodeParams {
        CodeParams::new(self.n, self.k(), None)
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport { code: self.name.clone(), violation: self.first_violation() }
    }

    fn first_violation(&self) -> Option<Violation> {
        let k = self.k();
        let gens = &self.generators;
        if k > self.n || gens.len() + k != self.n {
            return Some(Violation::GeneratorCount { n: self.n, k: k.min(self.n), generators: gens.len() });
        }
        let roles = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("generator {i}"), g))
            .chain(self.logical_x.iter().enumerate().map(|(i, p)| (format!("logical X {i}"), p)))
            .chain(self.logical_z.iter().enumerate().map(|(i, p)| (format!("logical Z {i}"), p)));
        for (role, op) in roles {
            if !op.is_hermitian() {
                return Some(Violation::NonHermitian { role, op: op.to_string() });
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if gens[i].anticommutes_unchecked(&gens[j]) {
                    return Some(Violation::GeneratorsAnticommute {
                        i,
                        j,
                        a: gens[i].to_string(),
                        b: gens[j].to_string(),
                    });
                }
            }
        }
        let ech = Echelon::new(&gens.iter().map(sym_vector).collect::<Vec<_>>());
        if let Some(&index) = ech.dependent().first() {
            return Some(Violation::DependentGenerator { index, op: gens[index].to_string() });
        }
        let logicals = self
            .logical_x
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("logical X {i}"), p))
            .chain(self.logical_z.iter().enumerate().map(|(i, p)| (format!("logical Z {i}"), p)));
        for (label, l) in logicals {
            for (gi, g) in gens.iter().enumerate() {
                if l.anticommutes_unchecked(g) {
                    return Some(Violation::LogicalAnticommutesWithGenerator {
                        logical: label,
                        generator: gi,
                        a: l.to_string(),
                        b: g.to_string(),
                    });
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                let pairs = [
                    ("X", &self.logical_x[i], "Z", &self.logical_z[j], i != j),
                    ("X", &self.logical_x[i], "X", &self.logical_x[j], true),
                    ("Z", &self.logical_z[i], "Z", &self.logical_z[j], true),
                ];
                for (ln, l, rn, r, should_commute) in pairs {
                    if l.anticommutes_unchecked(r) == should_commute {
                        return Some(Violation::LogicalPairing {
                            left: format!("logical {ln} {i}"),
                            right: format!("logical {rn} {j}"),
                            a: l.to_string(),
                            b: r.to_string(),
                            expected_commute: should_commute,
                        });
                    }
                }
            }
        }
        None
    }

    /// Bit `i` is set iff `p` anticommutes with generator `i`.
    pub fn syndrome(&self, p: &PauliOperator) -> Result<BitVec> {
        self.check_len(p)?;
        Ok(BitVec::from_bools(&self.generators.iter().map(|g| g.anticommutes_unchecked(p)).collect::<Vec<_>>()))
    }

    fn check_len(&self, p: &PauliOperator) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::Dimension { expected: self.n, actual: p.num_qubits() });
        }
        Ok(())
    }

    /// Decomposes a normalizer element into logical class and exact phase.
    pub fn reduce_mod_stabilizer(&self, p: &PauliOperator) -> Result<LogicalClass> {
        self.check_len(p)?;
        if !self.syndrome(p)?.is_zero() {
            return Err(Error::NotInNormalizer(p.to_string()));
        }
        self.reducer().reduce(self, p)
    }

    /// The stabilizer element `∏ g_j^{c_j}` for a GF(2) combination `c`,
    /// multiplied in ascending generator order.
    pub fn stabilizer_element(&self, combination: &BitVec) -> PauliOperator {
        let mut s = PauliOperator::identity(self.n);
        for j in combination.ones() {
            s.mul_assign_unchecked(&self.generators[j]);
        }
        s
    }

    /// Canonical representative `L(a, b)`.
    pub fn logical_operator(&self, a: &BitVec, b: &BitVec) -> PauliOperator {
        let mut l = PauliOperator::identity(self.n);
        for i in a.ones() {
            l.mul_assign_unchecked(&self.logical_x[i]);
        }
        for i in b.ones() {
            l.mul_assign_unchecked(&self.logical_z[i]);
        }
        l
    }

    pub(crate) fn reducer(&self) -> &Reducer {
        self.reducer.get_or_init(|| Reducer::new(self))
    }
}

/// Symplectic vector laid out as `[x words | z words]`.
/// GF(2) rank of the symplectic vectors of `ops`.
pub fn gf2_rank(ops: &[PauliOperator]) -> usize {
    Echelon::new(&ops.iter().map(|p| p.symplectic()).collect::<Vec<_>>()).rank()
}

pub(crate) fn sym_vector(p: &PauliOperator) -> BitVec {
    let mut w = p.x_words().to_vec();
    w.extend_from_slice(p.z_words());
    BitVec::from_words(w.len() * 64, w)
}

/// Row reduction of the generator matrix, reused for every reduction.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    echelon: Echelon,
}

impl Reducer {
    fn new(code: &StabilizerCode) -> Self {
        let rows: Vec<BitVec> = code.generators.iter().map(sym_vector).collect();
        Self { echelon: Echelon::new(&rows) }
    }

    pub(crate) fn reduce(&self, code: &StabilizerCode, p: &PauliOperator) -> Result<LogicalClass> {
        let k = code.k();
        let a = BitVec::from_bools(&code.logical_z.iter().map(|z| p.anticommutes_unchecked(z)).collect::<Vec<_>>());
        let b = BitVec::from_bools(&code.logical_x.iter().map(|x| p.anticommutes_unchecked(x)).collect::<Vec<_>>());
        let mut rep = code.logical_operator(&a, &b);
        let mut residual = sym_vector(p);
        residual.xor_assign(&sym_vector(&rep));
        let (rest, combination) = self.echelon.reduce(&residual);
        if !rest.is_zero() {
            return Err(Error::NotInNormalizer(p.to_string()));
        }
        rep.mul_assign_unchecked(&code.stabilizer_element(&combination));
        debug_assert_eq!(sym_vector(&rep), sym_vector(p));
        let phase = p.phase() * rep.phase().inverse();
        let in_group = a.is_zero() && b.is_zero();
        debug_assert_eq!(a.len(), k);
        Ok(LogicalClass { a, b, phase, in_group })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn five() -> StabilizerCode {
        get_code("five_1_3").unwrap()
    }

    #[test]
    fn known_codes_validate() {
        assert!(five().validate().is_pass());
        let dr = StabilizerCode::from_strings("dualrail", &["-ZZ"], &["XX"], &["ZI"]).unwrap();
        assert!(dr.validate().is_pass());
    }

    #[test]
    fn anticommuting_generators_fail() {
        let bad = StabilizerCode::from_strings("bad", &["XI", "ZI"], &[], &[]).unwrap();
        let report = bad.validate();
        assert!(matches!(report.violation, Some(Violation::GeneratorsAnticommute { i: 0, j: 1, .. })));
        assert!(report.to_string().contains("anticommute"));
    }

    #[test]
    fn dependent_and_miscounted_generators_fail() {
        let dep = StabilizerCode::from_strings("dep", &["ZZI", "IZZ", "ZIZ"], &[], &[]).unwrap();
        assert!(matches!(dep.validate().violation, Some(Violation::DependentGenerator { index: 2, .. })));
        let short = StabilizerCode::from_strings("short", &["ZZ"], &[], &[]).unwrap();
        assert!(matches!(short.validate().violation, Some(Violation::GeneratorCount { .. })));
        let nonherm = StabilizerCode::from_strings("ih", &["+iZZ"], &["XX"], &["ZI"]).unwrap();
        assert!(matches!(nonherm.validate().violation, Some(Violation::NonHermitian { .. })));
    }

    #[test]
    fn bad_logicals_fail() {
        let c = StabilizerCode::from_strings("c", &["-ZZ"], &["XI"], &["ZI"]).unwrap();
        assert!(matches!(c.validate().violation, Some(Violation::LogicalAnticommutesWithGenerator { .. })));
        let c = StabilizerCode::from_strings("c", &["-ZZ"], &["XX"], &["ZZ"]).unwrap();
        assert!(matches!(c.validate().violation, Some(Violation::LogicalPairing { .. })));
    }

    #[test]
    fn syndromes() {
        let code = five();
        assert!(code.syndrome(&p("IIIII")).unwrap().is_zero());
        for g in code.generators() {
            assert!(code.syndrome(g).unwrap().is_zero());
        }
        // Z on qubit 0 hits the X in g1 = XZZXI and g3 = XIXZZ
        assert_eq!(code.syndrome(&p("ZIIII")).unwrap().to_string(), "1010");
        assert!(code.syndrome(&p("ZZ")).is_err());
    }

    #[test]
    fn reduction_phases() {
        let code = five();
        let c = code.reduce_mod_stabilizer(&p("XZZXI")).unwrap();
        assert!(c.in_group);
        assert_eq!(c.phase, Phase::ONE);

        let dr = get_code("dualrail").unwrap();
        let c = dr.reduce_mod_stabilizer(&p("ZZ")).unwrap();
        assert!(c.in_group);
        assert_eq!(c.phase, Phase::MINUS_ONE);

        let c = dr.reduce_mod_stabilizer(&p("XX")).unwrap();
        assert!(!c.in_group);
        assert_eq!(c.a.to_string(), "1");
        assert_eq!(c.b.to_string(), "0");
        assert_eq!(c.phase, Phase::ONE);

        // Y-type logical: XX·ZI = X Z ⊗ X = -i YX, so YX = i L(1,1)
        let c = dr.reduce_mod_stabilizer(&p("YX")).unwrap();
        assert_eq!((c.a.to_string(), c.b.to_string()), ("1".into(), "1".into()));
        assert_eq!(c.phase, Phase::I);

        assert!(matches!(dr.reduce_mod_stabilizer(&p("XI")), Err(Error::NotInNormalizer(_))));
    }

    #[test]
    fn reduction_reconstructs_operator() {
        let code = five();
        let g = code.generators();
        let prod = &(&g[0] * &g[2]) * &code.logical_z()[0];
        let c = code.reduce_mod_stabilizer(&prod).unwrap();
        assert_eq!(c.b.to_string(), "1");
        let rep = code.reduce_mod_stabilizer(&code.logical_operator(&c.a, &c.b)).unwrap();
        assert_eq!((rep.a, rep.b, rep.phase), (c.a, c.b, Phase::ONE));
        // -g1 reduces to the trivial class with phase -1
        let neg = g[0].clone().with_phase(Phase::MINUS_ONE);
        assert_eq!(code.reduce_mod_stabilizer(&neg).unwrap().phase, Phase::MINUS_ONE);
    }
}
