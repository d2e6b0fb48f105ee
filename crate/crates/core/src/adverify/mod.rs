//! Exact verification that a stabilizer code corrects `t` amplitude-damping
//! errors, by checking `P E P ∝ P` for every error product `E` in the model,
//! where `P` is the code projector.
//!
//! An error is `A†_{S1} A_{S2} B_{S3}` on disjoint supports, with
//! `A = X + iY = 2|0⟩⟨1|` and `B = I - Z = 2|1⟩⟨1|`. Every term of its Pauli
//! expansion either leaves the normalizer (and vanishes under `P · P`) or
//! reduces to `phase · L(a, b)` on the code space. The code passes iff each
//! nontrivial logical class `(a, b)` collects an exactly zero coefficient.

mod kernel;

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{expand_ad_product, Gaussian, PauliSum};
use crate::stabcode::StabilizerCode;

pub use kernel::Checker;

/// Which error products must satisfy the detection condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorModel {
    /// Products `E_μ† E_ν` of the leading-order Kraus operators `A_S B_R`,
    /// kept up to order `γ^t`: `|S1| ≤ t`, `|S2| ≤ t`,
    /// `|S1| + |S2| + 2|S3| ≤ 2t`.
    #[default]
    KnillLaflamme,
    /// Plain products `A_{S_A} B_{S_B}` with `|S_A| ≤ 2t`, `|S_B| ≤ t`.
    AProducts,
}

impl ErrorModel {
    pub fn name(self) -> &'static str {
        match self {
            ErrorModel::KnillLaflamme => "knill-laflamme",
            ErrorModel::AProducts => "a-products",
        }
    }

    /// Support-size triples `(|S1|, |S2|, |S3|)` in enumeration order.
    fn size_triples(self, n: usize, t: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        match self {
            ErrorModel::KnillLaflamme => {
                for p in 0..=t {
                    for q in 0..=t {
                        for r in 0..=t {
                            if p + q + 2 * r <= 2 * t && p + q + r <= n {
                                out.push((p, q, r));
                            }
                        }
                    }
                }
            }
            ErrorModel::AProducts => {
                for q in 0..=2 * t {
                    for r in 0..=t {
                        if q + r <= n {
                            out.push((0, q, r));
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ErrorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ErrorModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knill-laflamme" | "kl" => Ok(ErrorModel::KnillLaflamme),
            "a-products" => Ok(ErrorModel::AProducts),
            _ => Err(Error::Precondition(format!("unknown error model {s:?} (expected knill-laflamme or a-products)"))),
        }
    }
}

/// Supports of `A†_{adag} A_{a} B_{b}`; pairwise disjoint, each ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ErrorSupport {
    #[serde(rename = "supportA")]
    pub a: Vec<usize>,
    #[serde(rename = "supportAdag")]
    pub adag: Vec<usize>,
    #[serde(rename = "supportB")]
    pub b: Vec<usize>,
}

impl ErrorSupport {
    pub fn new(a: Vec<usize>, adag: Vec<usize>, b: Vec<usize>) -> Self {
        Self { a, adag, b }
    }

    /// Total number of damping factors.
    pub fn len(&self) -> usize {
        self.a.len() + self.adag.len() + self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn expand(&self, n: usize) -> Result<PauliSum> {
        expand_ad_product(&self.a, &self.adag, &self.b, n)
    }

    fn check(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for &q in self.a.iter().chain(&self.adag).chain(&self.b) {
            if q >= n {
                return Err(Error::QubitRange { index: q, n });
            }
            if seen[q] {
                return Err(Error::OverlappingSupports(q));
            }
            seen[q] = true;
        }
        Ok(())
    }
}

impl fmt::Display for ErrorSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[usize]| v.iter().join(",");
        write!(f, "A{{{}}}", set(&self.a))?;
        if !self.adag.is_empty() {
            write!(f, " Adag{{{}}}", set(&self.adag))?;
        }
        write!(f, " B{{{}}}", set(&self.b))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn triple_count(n: usize, (p, q, r): (usize, usize, usize)) -> u128 {
    binomial(n, p) * binomial(n - p, q) * binomial(n - p - q, r)
}

/// Number of supports the model enumerates on `n` qubits.
pub fn support_count(n: usize, t: usize, model: ErrorModel) -> u128 {
    model.size_triples(n, t).into_iter().map(|s| triple_count(n, s)).sum()
}

/// Number of Pauli terms in the expansions of all enumerated supports.
pub fn term_count(n: usize, t: usize, model: ErrorModel) -> u128 {
    model.size_triples(n, t).into_iter().map(|s| triple_count(n, s) << (s.0 + s.1 + s.2)).sum()
}

/// Every support of the model, `(∅, ∅, ∅)` first, then by size triple and
/// lexicographically within a triple (A† set, then A set, then B set).
pub fn enumerate_error_supports(n: usize, t: usize, model: ErrorModel) -> impl Iterator<Item = ErrorSupport> {
    model.size_triples(n, t).into_iter().flat_map(move |(p, q, r)| {
        (0..n).combinations(p).flat_map(move |s1| {
            let rest: Vec<usize> = (0..n).filter(|i| !s1.contains(i)).collect();
            rest.clone().into_iter().combinations(q).flat_map(move |s2| {
                let rest2: Vec<usize> = rest.iter().copied().filter(|i| !s2.contains(i)).collect();
                let s1 = s1.clone();
                rest2.into_iter().combinations(r).map(move |s3| ErrorSupport::new(s2.clone(), s1.clone(), s3))
            })
        })
    })
}

/// Exact coefficient of one logical class in `P E P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCoefficient {
    /// Logical-X exponents, one bit per logical qubit.
    pub a: String,
    /// Logical-Z exponents.
    pub b: String,
    pub coefficient: Gaussian,
}

impl ClassCoefficient {
    pub fn is_trivial(&self) -> bool {
        !self.a.contains('1') && !self.b.contains('1')
    }

    pub fn a_bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.a.chars().map(|c| c == '1')
    }

    pub fn b_bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.b.chars().map(|c| c == '1')
    }
}

/// `P E P = Σ_classes coefficient · L(a, b) P`; nonzero classes only, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorVerdict {
    pub classes: Vec<ClassCoefficient>,
}

impl ErrorVerdict {
    /// `C_E` in `P E P = C_E P` when the error passes.
    pub fn scalar(&self) -> Gaussian {
        self.classes.iter().find(|c| c.is_trivial()).map_or(Gaussian::new(0, 0), |c| c.coefficient)
    }

    pub fn offending(&self) -> impl Iterator<Item = &ClassCoefficient> {
        self.classes.iter().filter(|c| !c.is_trivial())
    }

    pub fn passes(&self) -> bool {
        self.offending().next().is_none()
    }

    /// `⟨ψ_i| E |ψ_j⟩` on the codewords `|ψ_j⟩ = X̄^j |ψ_0⟩` of
    /// [`crate::oracle::codewords`]. Class strings are read most significant
    /// bit first, matching bit `k-1-i` of `j` for logical qubit `i`.
    pub fn logical_matrix(&self, k: usize) -> Vec<Vec<Gaussian>> {
        let dim = 1usize << k;
        let index = |s: &str| s.chars().fold(0usize, |acc, c| acc << 1 | (c == '1') as usize);
        let mut m = vec![vec![Gaussian::new(0, 0); dim]; dim];
        for class in &self.classes {
            let (a, b) = (index(&class.a), index(&class.b));
            for j in 0..dim {
                let sign = if (b & j).count_ones() % 2 == 1 { -1 } else { 1 };
                m[a ^ j][j] += class.coefficient * sign;
            }
        }
        m
    }
}

/// Checks one error through the explicit Pauli expansion and per-term
/// stabilizer reduction. Slower than [`Checker::check`]; kept as the
/// readable reference.
pub fn check_error_expanded(code: &StabilizerCode, e: &ErrorSupport) -> Result<ErrorVerdict> {
    e.check(code.n())?;
    let mut buckets: std::collections::BTreeMap<(String, String), Gaussian> = Default::default();
    for (p, coeff) in e.expand(code.n())?.terms() {
        if !code.syndrome(&p)?.is_zero() {
            continue;
        }
        let class = code.reduce_mod_stabilizer(&p)?;
        *buckets.entry((class.a.to_string(), class.b.to_string())).or_insert(Gaussian::new(0, 0)) +=
            coeff * class.phase.to_gaussian();
    }
    Ok(ErrorVerdict {
        classes: buckets
            .into_iter()
            .filter(|(_, c)| *c != Gaussian::new(0, 0))
            .map(|((a, b), coefficient)| ClassCoefficient { a, b, coefficient })
            .collect(),
    })
}

/// Checks one error with the fast kernel.
pub fn check_error(code: &StabilizerCode, e: &ErrorSupport) -> Result<ErrorVerdict> {
    e.check(code.n())?;
    Ok(Checker::new(code).check(e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    #[serde(flatten)]
    pub support: ErrorSupport,
    pub class: ClassLabel,
    pub coefficient: Gaussian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarEntry {
    #[serde(flatten)]
    pub support: ErrorSupport,
    pub scalar: Gaussian,
}

/// Outcome of a full verification run. Failures and scalars follow the
/// enumeration order, so the report does not depend on thread count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub model: ErrorModel,
    pub verdict: Verdict,
    pub num_errors: u64,
    pub num_terms: u64,
    pub failures: Vec<Failure>,
    /// Nonzero `C_E` only.
    pub scalars: Vec<ScalarEntry>,
}

impl DetectionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const SHOWN_FAILURES: usize = 10;

impl fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} [[{},{}]] t={} model={}: {} ({} errors, {} terms)",
            self.code, self.n, self.k, self.t, self.model, self.verdict, self.num_errors, self.num_terms
        )?;
        for fl in self.failures.iter().take(SHOWN_FAILURES) {
            writeln!(f, "  {}: class a={} b={} coefficient {}", fl.support, fl.class.a, fl.class.b, fl.coefficient)?;
        }
        if self.failures.len() > SHOWN_FAILURES {
            writeln!(f, "  ... {} more", self.failures.len() - SHOWN_FAILURES)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub model: ErrorModel,
    /// Cap on the total number of expanded Pauli terms.
    pub budget: u128,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Supports per parallel work item.
    pub chunk: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { model: ErrorModel::default(), budget: 1_000_000_000, jobs: None, chunk: 2048 }
    }
}

#[derive(Default)]
struct Partial {
    errors: u64,
    terms: u64,
    failures: Vec<Failure>,
    scalars: Vec<ScalarEntry>,
}

impl Partial {
    fn absorb(&mut self, other: Partial) {
        self.errors += other.errors;
        self.terms += other.terms;
        self.failures.extend(other.failures);
        self.scalars.extend(other.scalars);
    }
}

fn run_chunk(checker: &Checker, chunk: &[ErrorSupport]) -> Partial {
    let mut out = Partial::default();
    for e in chunk {
        let verdict = checker.check(e);
        out.errors += 1;
        out.terms += 1 << e.len();
        for c in &verdict.classes {
            if c.is_trivial() {
                out.scalars.push(ScalarEntry { support: e.clone(), scalar: c.coefficient });
            } else {
                out.failures.push(Failure {
                    support: e.clone(),
                    class: ClassLabel { a: c.a.clone(), b: c.b.clone() },
                    coefficient: c.coefficient,
                });
            }
        }
    }
    out
}

/// Checks every error of the model up to order `t`.
pub fn verify_t_code(code: &StabilizerCode, t: usize, config: &VerifyConfig) -> Result<DetectionReport> {
    let n = code.n();
    let terms = term_count(n, t, config.model);
    if terms > config.budget {
        return Err(Error::Budget { what: "expanded Pauli terms", count: terms, budget: config.budget });
    }
    let checker = Checker::new(code);
    let chunk = config.chunk.max(1);
    let run = || {
        let mut total = Partial::default();
        let mut stream = enumerate_error_supports(n, t, config.model).peekable();
        // batches of chunks keep memory flat while feeding every worker
        let batch = chunk * 4 * rayon::current_num_threads().max(1);
        while stream.peek().is_some() {
            let supports: Vec<ErrorSupport> = stream.by_ref().take(batch).collect();
            let parts: Vec<Partial> = supports.par_chunks(chunk).map(|c| run_chunk(&checker, c)).collect();
            for p in parts {
                total.absorb(p);
            }
        }
        total
    };
    let total = match config.jobs {
        None => run(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(run),
    };
    Ok(DetectionReport {
        code: code.name().to_string(),
        n,
        k: code.k(),
        t,
        model: config.model,
        verdict: if total.failures.is_empty() { Verdict::Pass } else { Verdict::Fail },
        num_errors: total.errors,
        num_terms: total.terms,
        failures: total.failures,
        scalars: total.scalars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabcode::get_code;

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::new(re, im)
    }

    #[test]
    fn logical_matrix_matches_dense_codewords() {
        let code = get_code("c4_2_2").unwrap();
        let basis = crate::oracle::codewords(&code).unwrap();
        for e in enumerate_error_supports(4, 1, ErrorModel::KnillLaflamme) {
            let dense = crate::oracle::matrix_element(&basis, &e.expand(4).unwrap()).unwrap();
            let symbolic = check_error(&code, &e).unwrap().logical_matrix(2);
            for (i, row) in symbolic.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let want = num_complex::Complex64::new(c.re as f64, c.im as f64);
                    assert!((dense[(i, j)] - want).norm() < 1e-10, "{e} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_closed_form() {
        for model in [ErrorModel::KnillLaflamme, ErrorModel::AProducts] {
            for n in 1..=7 {
                for t in 0..=2 {
                    let all: Vec<_> = enumerate_error_supports(n, t, model).collect();
                    assert_eq!(all.len() as u128, support_count(n, t, model), "{model} n={n} t={t}");
                    let terms: u128 = all.iter().map(|e| 1u128 << e.len()).sum();
                    assert_eq!(terms, term_count(n, t, model));
                    assert!(all[0].is_empty());
                    let unique: std::collections::HashSet<_> = all.iter().collect();
                    assert_eq!(unique.len(), all.len());
                    for e in &all {
                        e.check(n).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn two_qubit_a_products() {
        // (|A|,|B|) = (0,0):1 (0,1):2 (1,0):2 (1,1):2 (2,0):1
        assert_eq!(support_count(2, 1, ErrorModel::AProducts), 8);
        let first: Vec<String> = enumerate_error_supports(2, 1, ErrorModel::AProducts).map(|e| e.to_string()).collect();
        assert_eq!(first[..3], ["A{} B{}", "A{} B{0}", "A{} B{1}"]);
    }

    #[test]
    fn ten_qubit_counts() {
        let direct: u128 = (0..=4).flat_map(|a| (0..=2).map(move |b| binomial(10, a) * binomial(10 - a, b))).sum();
        assert_eq!(support_count(10, 2, ErrorModel::AProducts), direct);
    }

    #[test]
    fn identity_error_has_unit_scalar() {
        let code = get_code("five_1_3").unwrap();
        let v = check_error(&code, &ErrorSupport::default()).unwrap();
        assert!(v.passes());
        assert_eq!(v.scalar(), g(1, 0));
    }

    #[test]
    fn single_damping_on_dual_rail_leaves_code_space() {
        let code = get_code("dualrail").unwrap();
        let v = check_error(&code, &ErrorSupport::new(vec![0], vec![], vec![])).unwrap();
        assert!(v.passes());
        assert_eq!(v.scalar(), g(0, 0));
    }

    #[test]
    fn b_error_on_four_qubit_code() {
        let code = get_code("leung_4_1").unwrap();
        let v = check_error(&code, &ErrorSupport::new(vec![], vec![], vec![0])).unwrap();
        assert!(v.passes());
        // ⟨ψ|I - Z_0|ψ⟩ = 1 since Z_0 has zero expectation
        assert_eq!(v.scalar(), g(1, 0));
    }

    #[test]
    fn bad_supports_are_rejected() {
        let code = get_code("dualrail").unwrap();
        assert!(check_error(&code, &ErrorSupport::new(vec![0], vec![], vec![0])).is_err());
        assert!(check_error(&code, &ErrorSupport::new(vec![2], vec![], vec![])).is_err());
    }

    #[test]
    fn budget_is_checked_before_running() {
        let code = get_code("shor_9_1").unwrap();
        let config = VerifyConfig { budget: 10, ..Default::default() };
        assert!(matches!(verify_t_code(&code, 1, &config), Err(Error::Budget { .. })));
    }

    #[test]
    fn four_qubit_code_is_a_one_code_only() {
        let code = get_code("leung_4_1").unwrap();
        let config = VerifyConfig::default();
        let one = verify_t_code(&code, 1, &config).unwrap();
        assert!(one.passed(), "{one}");
        let two = verify_t_code(&code, 2, &config).unwrap();
        assert!(!two.passed());
        assert!(!two.failures.is_empty());
    }

    #[test]
    fn report_json_shape() {
        let code = get_code("dualrail").unwrap();
        let report = verify_t_code(&code, 1, &VerifyConfig::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["model"], "knill-laflamme");
        let f = &v["failures"][0];
        assert!(f["supportA"].is_array() && f["supportB"].is_array() && f["class"]["a"].is_string());
    }

    #[test]
    fn model_parses() {
        assert_eq!("kl".parse::<ErrorModel>().unwrap(), ErrorModel::KnillLaflamme);
        assert_eq!("a-products".parse::<ErrorModel>().unwrap(), ErrorModel::AProducts);
        assert!("other".parse::<ErrorModel>().is_err());
    }
}
