//! Reconciled report on `npj(M)`: bounds from both sides, candidates and
//! an exact value only when a certificate backs it.

use serde::{Deserialize, Serialize};

use crate::decomp::{cyclic_subgroup_words, SearchBudget};
use crate::linalg::{IntMatrix, IntPolynomial};
use crate::rep::{core, Answer, Module};

use super::cc::{cc_sequence, running_min, upper_bounds, CcConfig, ModuleIdentity};
use super::classify::{classify, Category, Classification};
use super::cyclic::cyclic_exact_npj;
use super::orbit::OrbitTable;
use super::recurrence::{detect_recurrence, Recurrence, DEFAULT_HOLDOUT};
use super::table::{table_from_orbits, table_npj};

const EXACT_TOL: f64 = 1e-9;
const AGREE_TOL: f64 = 1e-6;

/// Never certifies on its own; printed whenever the answer is an interval.
pub const LIMIT_NOTE: &str =
    "npj is a limit; finitely many terms of cc_n alone never certify it, so only the interval is claimed";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub cc: CcConfig,
    pub holdout: usize,
    /// Cyclic subgroups used for restriction bounds; `None` means all of them.
    pub restrict: Option<Vec<Vec<u32>>>,
    pub table: bool,
    /// Cap on the products built by [`classify`].
    pub classify_dim_cap: usize,
    /// Terms of `cc_n(M ⊗ M*)` computed for the diagnostics; 0 disables them.
    pub diagnostic_n: usize,
    /// Largest `dim core(M)^2` for which the diagnostics run.
    pub diagnostic_dim_cap: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            cc: CcConfig::default(),
            holdout: DEFAULT_HOLDOUT,
            restrict: None,
            table: true,
            classify_dim_cap: 5000,
            diagnostic_n: 3,
            diagnostic_dim_cap: 36,
        }
    }
}

impl ReportConfig {
    pub fn budget(&self) -> SearchBudget {
        self.cc.orbit.budget
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    /// Restriction word; the bound is the exact value over `⟨g^word⟩`.
    pub word: Vec<u32>,
    /// Non-projective Jordan block sizes of the restriction.
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Projective,
    CyclicClosedForm { p: u32, blocks: Vec<usize> },
    ClosedTable { matrix: IntMatrix, charpoly: IntPolynomial },
    ModuleIdentity { identity: ModuleIdentity },
    /// A restriction bound meets `u_n`.
    Squeeze { word: Vec<u32>, blocks: Vec<usize>, n: usize },
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::Projective => write!(f, "core(M) = 0"),
            Certificate::CyclicClosedForm { p, blocks } => write!(f, "cyclic closed form, p = {p}, blocks {blocks:?}"),
            Certificate::ClosedTable { charpoly, .. } => write!(f, "closed omega table, charpoly {charpoly}"),
            Certificate::ModuleIdentity { identity: i } => write!(
                f,
                "core(M^⊗{}) ≅ ({}/{})·core(M^⊗{})",
                i.n,
                i.num,
                i.den,
                i.n - i.lag
            ),
            Certificate::Squeeze { word, n, .. } => write!(f, "restriction to {word:?} meets u_{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Exact { value: f64, certificate: Certificate },
    Interval { lower: f64, upper: f64, note: String },
}

impl Verdict {
    pub fn exact(&self) -> Option<f64> {
        match self {
            Verdict::Exact { value, .. } => Some(*value),
            Verdict::Interval { .. } => None,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Verdict::Exact { value, .. } => (*value, *value),
            Verdict::Interval { lower, upper, .. } => (*lower, *upper),
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Exact { value, certificate } => write!(f, "exact {value:.10} ({certificate})"),
            Verdict::Interval { lower, upper, .. } => write!(f, "interval [{lower:.10}, {upper:.10}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSummary {
    pub closed: bool,
    pub dims: Vec<usize>,
    pub limit: Option<String>,
    pub undecided: usize,
    pub value: Option<f64>,
    pub matrix: Option<IntMatrix>,
    pub charpoly: Option<IntPolynomial>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NpjReport {
    pub config: ReportConfig,
    pub dim: usize,
    pub classification: Classification,
    pub lower_bounds: Vec<LowerBound>,
    pub cc: Vec<u64>,
    pub truncated: Option<String>,
    /// `u_n = cc_n^{1/n}` for `n >= 1`.
    pub upper_bounds: Vec<f64>,
    pub running_min: Vec<f64>,
    pub recurrence: Option<Recurrence>,
    pub rejected_fits: Vec<Recurrence>,
    pub identity: Option<ModuleIdentity>,
    pub table: Option<TableSummary>,
    pub verdict: Verdict,
    pub inconsistencies: Vec<String>,
    /// Heuristic comparisons, never asserted.
    pub diagnostics: Vec<Diagnostic>,
    pub undecided: usize,
}

impl NpjReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }

    pub fn best_lower(&self) -> f64 {
        self.lower_bounds.iter().map(|b| b.value).fold(0.0, f64::max)
    }

    pub fn best_upper(&self) -> Option<f64> {
        self.running_min.last().copied()
    }
}

pub fn npj_report(m: &Module, cfg: &ReportConfig) -> NpjReport {
    let budget = cfg.budget();
    let classification = classify(m, &budget, cfg.classify_dim_cap);
    let p = m.p();
    let rank = m.group().rank();
    let mut inconsistencies = Vec::new();

    let words = cfg.restrict.clone().unwrap_or_else(|| cyclic_subgroup_words(p, rank));
    let mut lower_bounds = Vec::new();
    for w in words {
        match m.restrict(std::slice::from_ref(&w)).and_then(|h| cyclic_exact_npj(&h)) {
            Ok(v) => lower_bounds.push(LowerBound {
                value: v.value,
                word: w,
                blocks: v.blocks,
            }),
            Err(e) => inconsistencies.push(format!("restriction to {w:?} failed: {e}")),
        }
    }

    let seq = cc_sequence(m, &cfg.cc);
    let ups = upper_bounds(&seq.values);
    let mins = running_min(&ups);
    let search = detect_recurrence(&seq.values, cfg.holdout);
    let mut undecided = seq.undecided;

    let table = if cfg.table && !classification.projective {
        let mut t = OrbitTable::from_snapshot(m, cfg.cc.orbit, &seq.snapshot.orbit);
        let limit = t.close().err();
        let tt = table_from_orbits(&mut t, limit);
        undecided = undecided.max(tt.undecided);
        let v = table_npj(&tt).ok();
        Some(TableSummary {
            closed: tt.closed,
            dims: tt.dims(),
            limit: tt.limit.as_ref().map(ToString::to_string),
            undecided: tt.undecided,
            value: v.as_ref().map(|v| v.value),
            matrix: v.as_ref().map(|v| v.matrix.clone()),
            charpoly: v.map(|v| v.charpoly),
        })
    } else {
        None
    };

    let hits_zero = seq.values.iter().skip(1).any(|&c| c == 0);
    if hits_zero && !classification.projective {
        inconsistencies.push("cc_n = 0 for some n but core(M) is nonzero".into());
    }
    if classification.projective && seq.values.get(1).is_some_and(|&c| c != 0) {
        inconsistencies.push("core(M) = 0 but cc_1 is nonzero".into());
    }

    // two-sided certificates, strongest first
    let exact: Option<(f64, Certificate)> = if classification.projective {
        Some((0.0, Certificate::Projective))
    } else if rank == 1 {
        cyclic_exact_npj(m)
            .ok()
            .map(|v| (v.value, Certificate::CyclicClosedForm { p, blocks: v.blocks }))
    } else if let Some(TableSummary {
        closed: true,
        value: Some(v),
        matrix: Some(a),
        charpoly: Some(cp),
        ..
    }) = &table
    {
        Some((
            *v,
            Certificate::ClosedTable {
                matrix: a.clone(),
                charpoly: cp.clone(),
            },
        ))
    } else {
        seq.identity
            .clone()
            .map(|i| (i.rate(), Certificate::ModuleIdentity { identity: i }))
    };

    let lower = lower_bounds.iter().map(|b| b.value).fold(0.0, f64::max);
    let upper = mins.last().copied().unwrap_or(core(m).core.dim() as f64);
    if lower > upper + EXACT_TOL {
        inconsistencies.push(format!("lower bound {lower} exceeds upper bound {upper}"));
    }
    if let Some((v, c)) = &exact {
        if *v < lower - EXACT_TOL || *v > upper + EXACT_TOL {
            inconsistencies.push(format!("certified value {v} from {c} lies outside [{lower}, {upper}]"));
        }
    }
    if let (Some(implied), Some((v, _))) = (classification.implied_value(), &exact) {
        if (implied - v).abs() > AGREE_TOL {
            inconsistencies.push(format!("classification implies {implied} but the certified value is {v}"));
        }
    }
    if let (Some(r), Some(TableSummary { value: Some(tv), .. })) = (&search.recurrence, &table) {
        if (r.value() - tv).abs() > AGREE_TOL {
            inconsistencies.push(format!(
                "recurrence value {} disagrees with table value {tv}",
                r.value()
            ));
        }
    }
    if let (Some(i), Some(TableSummary { value: Some(tv), .. })) = (&seq.identity, &table) {
        if (i.rate() - tv).abs() > AGREE_TOL {
            inconsistencies.push(format!("identity rate {} disagrees with table value {tv}", i.rate()));
        }
    }

    let verdict = match exact {
        Some((value, certificate)) => Verdict::Exact { value, certificate },
        None if upper - lower <= EXACT_TOL && !lower_bounds.is_empty() && !ups.is_empty() => {
            let best = lower_bounds
                .iter()
                .max_by(|a, b| a.value.total_cmp(&b.value))
                .expect("nonempty");
            let n = 1 + mins.iter().position(|&u| u - lower <= EXACT_TOL).expect("upper is attained");
            Verdict::Exact {
                value: lower,
                certificate: Certificate::Squeeze {
                    word: best.word.clone(),
                    blocks: best.blocks.clone(),
                    n,
                },
            }
        }
        None => Verdict::Interval {
            lower,
            upper,
            note: LIMIT_NOTE.into(),
        },
    };

    let diagnostics = diagnostics(m, cfg, &verdict, search.recurrence.is_some(), seq.values.len());

    NpjReport {
        config: cfg.clone(),
        dim: m.dim(),
        classification,
        lower_bounds,
        cc: seq.values,
        truncated: seq.truncated.map(|l| l.to_string()),
        upper_bounds: ups,
        running_min: mins,
        recurrence: search.recurrence,
        rejected_fits: search.rejected,
        identity: seq.identity,
        table,
        verdict,
        inconsistencies,
        diagnostics,
        undecided,
    }
}

fn diagnostics(m: &Module, cfg: &ReportConfig, verdict: &Verdict, recursive: bool, terms: usize) -> Vec<Diagnostic> {
    let mut out = vec![Diagnostic {
        name: "eventually recursive".into(),
        detail: if recursive {
            format!("an integer recurrence fits all {terms} terms")
        } else {
            format!("no integer recurrence verified on {terms} terms")
        },
    }];
    if cfg.diagnostic_n == 0 {
        return out;
    }
    let c = core(m).core;
    let d = c.dim();
    let name = "npj(M ⊗ M*) vs npj(M)^2".to_string();
    if d == 0 {
        return out;
    }
    if d * d > cfg.diagnostic_dim_cap {
        out.push(Diagnostic {
            name,
            detail: format!("skipped: dim core(M)^2 = {} above {}", d * d, cfg.diagnostic_dim_cap),
        });
        return out;
    }
    let mm = c.tensor(&c.dual()).expect("same group");
    let sub = CcConfig {
        n_max: cfg.diagnostic_n,
        ..cfg.cc
    };
    let seq = cc_sequence(&mm, &sub);
    let u = running_min(&upper_bounds(&seq.values)).last().copied().unwrap_or(f64::NAN);
    let (lo, hi) = verdict.bounds();
    let cmp = match verdict.exact() {
        Some(v) => format!("npj(M)^2 = {:.6}", v * v),
        None => format!("npj(M)^2 in [{:.6}, {:.6}]", lo * lo, hi * hi),
    };
    out.push(Diagnostic {
        name,
        detail: format!(
            "upper estimate {u:.6} from cc_1..cc_{} of M ⊗ M*; {cmp}",
            seq.last_n()
        ),
    });
    out
}

impl Classification {
    /// Value forced by the classification, if any.
    pub fn implied_value(&self) -> Option<f64> {
        match self.category {
            Category::Projective => Some(0.0),
            Category::Endotrivial if self.endotrivial == Answer::Yes => Some(1.0),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::rep::GroupSpec;

    fn quick() -> ReportConfig {
        ReportConfig {
            cc: CcConfig {
                n_max: 7,
                ..CcConfig::default()
            },
            ..ReportConfig::default()
        }
    }

    #[test]
    fn projective_is_exact_zero() {
        let g = GroupSpec::new(3, 2).unwrap();
        let r = npj_report(&Module::free_module(g, 1), &quick());
        assert_eq!(r.verdict.exact(), Some(0.0));
        assert!(r.is_consistent(), "{:?}", r.inconsistencies);
    }

    #[test]
    fn uniserial_is_certified() {
        let r = npj_report(&gallery::uniserial_3x3(), &quick());
        let v = r.verdict.exact().expect("certified");
        assert!((v - 2.0).abs() < 1e-9);
        assert!(r.is_consistent(), "{:?}", r.inconsistencies);
        assert!(r.identity.is_some());
    }

    #[test]
    fn cyclic_input_uses_closed_form() {
        let r = npj_report(&gallery::jordan_block(5, 2), &quick());
        match &r.verdict {
            Verdict::Exact {
                certificate: Certificate::CyclicClosedForm { blocks, .. },
                value,
            } => {
                assert_eq!(blocks, &vec![2]);
                assert!((value - 1.618033988749895).abs() < 1e-12);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn interval_without_certificate() {
        let cfg = ReportConfig {
            table: false,
            cc: CcConfig {
                n_max: 2,
                ..CcConfig::default()
            },
            ..ReportConfig::default()
        };
        let r = npj_report(&gallery::m6_three_classes(), &cfg);
        match &r.verdict {
            Verdict::Interval { lower, upper, note } => {
                assert!(lower <= upper);
                assert_eq!(note, LIMIT_NOTE);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn endotrivial_report() {
        let g = GroupSpec::new(3, 2).unwrap();
        let w = crate::rep::omega(&Module::trivial(g, 1));
        let r = npj_report(&w, &quick());
        assert_eq!(r.classification.implied_value(), Some(1.0));
        assert!((r.verdict.exact().expect("certified") - 1.0).abs() < 1e-9);
    }
}
