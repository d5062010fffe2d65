//! One function per subcommand, each returning all renderings of its report.

use npj_core::decomp::{decompose, is_isomorphic, SearchBudget};
use npj_core::engine::{
    classify, cyclic_exact_npj, detect_recurrence, invariant_harness, npj_report, omega_table, running_min,
    table_npj, upper_bounds, CcConfig, Certificate, HarnessReport, Laurent, ModuleIdentity, NpjReport, OrbitConfig,
    Recurrence, ReportConfig, TransitionTable, Verdict, ALL_LAWS, DEFAULT_HOLDOUT,
};
use npj_core::linalg::IntPolynomial;
use npj_core::rep::{Answer, Module};
use serde::Serialize;

use crate::cache::{cached_cc, Cache};
use crate::error::CliError;
use crate::file::{content_hash, Loaded};
use crate::output::{row, ModuleInfo, Output, Settings};

/// Resolved numeric options shared by all commands.
#[derive(Clone, Debug)]
pub struct Options {
    pub n: usize,
    pub seed: u64,
    pub dim_budget: Option<usize>,
    pub trials: Option<usize>,
    pub restrict: Option<Vec<Vec<u32>>>,
}

impl Options {
    pub fn budget(&self) -> SearchBudget {
        let d = SearchBudget::default();
        SearchBudget {
            trials: self.trials.unwrap_or(d.trials),
            seed: self.seed,
            ..d
        }
    }

    pub fn orbit(&self) -> OrbitConfig {
        let d = OrbitConfig::default();
        OrbitConfig {
            dim_cap: self.dim_budget.unwrap_or(d.dim_cap),
            budget: self.budget(),
            ..d
        }
    }

    pub fn cc(&self) -> CcConfig {
        let d = CcConfig::default();
        CcConfig {
            n_max: self.n,
            dim_budget: self.dim_budget.unwrap_or(d.dim_budget),
            orbit: self.orbit(),
        }
    }

    pub fn settings(&self) -> Settings {
        let cc = self.cc();
        Settings {
            n: self.n,
            seed: self.seed,
            dim_budget: cc.dim_budget,
            class_cap: cc.orbit.class_cap,
            trials: cc.orbit.budget.trials,
            peel_trials: cc.orbit.budget.peel_trials,
            restrict: self.restrict.clone(),
        }
    }
}

pub fn module_info(l: &Loaded) -> ModuleInfo {
    ModuleInfo {
        name: l.name.clone(),
        p: l.module.p(),
        rank: l.module.group().rank(),
        dim: l.module.dim(),
        hash: content_hash(&l.module),
    }
}

/// `c·` for `c > 1`.
fn times(c: u64) -> String {
    if c == 1 {
        String::new()
    } else {
        format!("{c}·")
    }
}

fn join_sum(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ⊕ ")
    }
}

// ---------------------------------------------------------------- validate

#[derive(Serialize)]
struct ValidateResult {
    valid: bool,
    violations: Vec<String>,
}

pub fn validate(l: &Loaded, o: &Options) -> Result<Output, CliError> {
    let violations = l.module.validate();
    let r = ValidateResult {
        valid: violations.is_empty(),
        violations,
    };
    let text = if r.valid {
        format!("{}: valid module for {}, dim {}\n", l.name, l.module.group(), l.module.dim())
    } else {
        format!("{}: invalid: {}\n", l.name, r.violations.join("; "))
    };
    let csv = vec![row(["valid", "violations"]), row([r.valid.to_string(), r.violations.join("; ")])];
    let mut out = Output::build("validate", &o.settings(), &[module_info(l)], &r, csv, text)?;
    if !r.valid {
        out.exit_code = 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------------- cc

#[derive(Serialize)]
pub struct CcResult {
    pub values: Vec<u64>,
    pub free_ranks: Vec<u64>,
    pub total_free_ranks: Vec<Option<u64>>,
    pub upper_bounds: Vec<f64>,
    pub running_min: Vec<f64>,
    pub truncated: Option<String>,
    pub identity: Option<ModuleIdentity>,
    pub identity_text: Option<String>,
    pub recurrence: Option<Recurrence>,
    pub rejected_fits: usize,
    pub undecided: usize,
}

/// `M^⊗5 ≅ 8·M^⊗2 ⊕ 19·P` style summary of a module identity.
pub fn identity_text(i: &ModuleIdentity, total_free: &[Option<u64>]) -> String {
    let base = i.n - i.lag;
    let coef = if i.den == 1 {
        times(i.num)
    } else {
        format!("({}/{})·", i.num, i.den)
    };
    let rhs = if total_free.get(base).copied().flatten() == Some(0) {
        format!("{coef}M^⊗{base}")
    } else {
        format!("{coef}core(M^⊗{base})")
    };
    match total_free.get(i.n).copied().flatten() {
        Some(f) => format!("M^⊗{} ≅ {rhs} ⊕ {}P", i.n, times(f)),
        None => format!("core(M^⊗{}) ≅ {rhs}", i.n),
    }
}

pub fn cc(l: &Loaded, o: &Options, cache: Option<&Cache>) -> Result<Output, CliError> {
    let run = cached_cc(&l.module, &o.cc(), cache)?;
    let seq = run.seq;
    let ups = upper_bounds(&seq.values);
    let mins = running_min(&ups);
    let search = detect_recurrence(&seq.values, DEFAULT_HOLDOUT);
    let r = CcResult {
        identity_text: seq.identity.as_ref().map(|i| identity_text(i, &seq.total_free_ranks)),
        values: seq.values,
        free_ranks: seq.free_ranks,
        total_free_ranks: seq.total_free_ranks,
        upper_bounds: ups,
        running_min: mins,
        truncated: seq.truncated.map(|t| t.to_string()),
        identity: seq.identity,
        recurrence: search.recurrence,
        rejected_fits: search.rejected.len(),
        undecided: seq.undecided,
    };
    let mut csv = vec![row(["n", "cc", "free_rank", "total_free_rank", "u_n", "running_min"])];
    let mut text = format!("cc_n for {} ({}, dim {})\n", l.name, l.module.group(), l.module.dim());
    for (n, &c) in r.values.iter().enumerate() {
        let tf = r.total_free_ranks.get(n).copied().flatten();
        let (u, m) = if n == 0 {
            (String::new(), String::new())
        } else {
            (r.upper_bounds[n - 1].to_string(), r.running_min[n - 1].to_string())
        };
        csv.push(row([
            n.to_string(),
            c.to_string(),
            r.free_ranks[n].to_string(),
            tf.map_or(String::new(), |f| f.to_string()),
            u.clone(),
            m,
        ]));
        text.push_str(&format!("  n = {n:>2}  cc = {c}"));
        if n > 0 {
            text.push_str(&format!("  u_n = {:.6}", r.upper_bounds[n - 1]));
        }
        text.push('\n');
    }
    if let Some(t) = &r.truncated {
        text.push_str(&format!("truncated: {t}\n"));
    }
    if let Some(s) = &r.identity_text {
        text.push_str(&format!("identity: {s}\n"));
    }
    if let Some(rec) = &r.recurrence {
        text.push_str(&format!("recurrence: {} (root {:.10})\n", rec.describe(), rec.value()));
    }
    Output::build("cc", &o.settings(), &[module_info(l)], &r, csv, text)
}

// --------------------------------------------------------------------- npj

pub fn report_config(o: &Options, table: bool) -> ReportConfig {
    ReportConfig {
        cc: o.cc(),
        restrict: o.restrict.clone(),
        table,
        ..ReportConfig::default()
    }
}

pub fn npj(l: &Loaded, o: &Options, table: bool) -> Result<Output, CliError> {
    let r = npj_report(&l.module, &report_config(o, table));
    let mut out = Output::build("npj", &o.settings(), &[module_info(l)], &r, npj_csv(&r), npj_text(&l.name, &r))?;
    if !r.is_consistent() {
        out.exit_code = 2;
    }
    Ok(out)
}

fn npj_csv(r: &NpjReport) -> Vec<Vec<String>> {
    let (lo, hi) = r.verdict.bounds();
    let mut rows = vec![
        row(["field", "value"]),
        row(["verdict".to_string(), if r.verdict.exact().is_some() { "exact" } else { "interval" }.to_string()]),
        row(["lower".to_string(), lo.to_string()]),
        row(["upper".to_string(), hi.to_string()]),
        row(["category".to_string(), r.classification.category.to_string()]),
    ];
    for (n, c) in r.cc.iter().enumerate() {
        rows.push(row([format!("cc_{n}"), c.to_string()]));
    }
    for (i, u) in r.upper_bounds.iter().enumerate() {
        rows.push(row([format!("u_{}", i + 1), u.to_string()]));
    }
    for b in &r.lower_bounds {
        rows.push(row([format!("restriction_{}", word_text(&b.word)), b.value.to_string()]));
    }
    if let Some(t) = r.table.as_ref().and_then(|t| t.value) {
        rows.push(row(["table_value".to_string(), t.to_string()]));
    }
    if let Some(rec) = &r.recurrence {
        rows.push(row(["recurrence_value".to_string(), rec.value().to_string()]));
    }
    for s in &r.inconsistencies {
        rows.push(row(["inconsistency", s.as_str()]));
    }
    rows
}

fn word_text(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(":")
}

fn npj_text(name: &str, r: &NpjReport) -> String {
    let mut t = format!("npj for {name} (dim {})\n", r.dim);
    t.push_str(&format!(
        "classification: {} (core dim {}, free rank {}, p-faithful {})\n",
        r.classification.category, r.classification.core_dim, r.classification.free_rank, r.classification.p_faithful
    ));
    t.push_str(&format!("cc: {}\n", list(&r.cc)));
    if let Some(u) = r.best_upper() {
        t.push_str(&format!("best upper bound: {u:.10}\n"));
    }
    if let Some(b) = r.lower_bounds.iter().max_by(|a, b| a.value.total_cmp(&b.value)) {
        t.push_str(&format!(
            "best restriction bound: {:.10} from ⟨{}⟩, blocks {:?}\n",
            b.value,
            word_text(&b.word),
            b.blocks
        ));
    }
    if let Some(rec) = &r.recurrence {
        t.push_str(&format!("recurrence: {} (root {:.10})\n", rec.describe(), rec.value()));
    }
    if let Some(tab) = &r.table {
        match tab.value {
            Some(v) => t.push_str(&format!("omega table: closed, {} classes, value {v:.10}\n", tab.dims.len())),
            None => t.push_str(&format!(
                "omega table: inconclusive ({})\n",
                tab.limit.as_deref().unwrap_or("not closed")
            )),
        }
    }
    t.push_str(&format!("result: {}\n", r.verdict));
    if let Verdict::Interval { note, .. } = &r.verdict {
        t.push_str(&format!("note: {note}\n"));
    }
    if let Verdict::Exact {
        certificate: Certificate::ClosedTable { charpoly, .. },
        ..
    } = &r.verdict
    {
        t.push_str(&format!("charpoly: {charpoly}\n"));
    }
    for d in &r.diagnostics {
        t.push_str(&format!("diagnostic [{}]: {}\n", d.name, d.detail));
    }
    for s in &r.inconsistencies {
        t.push_str(&format!("INCONSISTENT: {s}\n"));
    }
    t
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

// --------------------------------------------------------------- decompose

#[derive(Serialize)]
struct SummandInfo {
    label: String,
    dim: usize,
    multiplicity: usize,
    trials: usize,
}

#[derive(Serialize)]
struct DecomposeResult {
    summands: Vec<SummandInfo>,
    free_rank: usize,
    undecided_pairs: usize,
    notation: String,
}

/// `M{dim}` labels, primed when a dimension repeats.
fn labels(dims: &[usize]) -> Vec<String> {
    let mut seen = std::collections::BTreeMap::<usize, usize>::new();
    dims.iter()
        .map(|&d| {
            let k = seen.entry(d).or_default();
            let l = format!("M{d}{}", "'".repeat(*k));
            *k += 1;
            l
        })
        .collect()
}

pub fn decompose_cmd(l: &Loaded, o: &Options) -> Result<Output, CliError> {
    let d = decompose(&l.module, &o.budget());
    let dims: Vec<usize> = d.summands.iter().map(|s| s.module.dim()).collect();
    let labs = labels(&dims);
    let summands: Vec<SummandInfo> = d
        .summands
        .iter()
        .zip(labs)
        .map(|(s, label)| SummandInfo {
            label,
            dim: s.module.dim(),
            multiplicity: s.multiplicity,
            trials: s.trials,
        })
        .collect();
    let mut terms: Vec<String> = summands.iter().map(|s| format!("{}{}", times(s.multiplicity as u64), s.label)).collect();
    if d.free_rank > 0 {
        terms.push(format!("{}P", times(d.free_rank as u64)));
    }
    let r = DecomposeResult {
        notation: join_sum(terms),
        summands,
        free_rank: d.free_rank,
        undecided_pairs: d.undecided_pairs,
    };
    let mut csv = vec![row(["label", "dim", "multiplicity", "trials"])];
    for s in &r.summands {
        csv.push(row([s.label.clone(), s.dim.to_string(), s.multiplicity.to_string(), s.trials.to_string()]));
    }
    csv.push(row(["P".to_string(), l.module.group().order().to_string(), r.free_rank.to_string(), "0".to_string()]));
    let text = format!("{} ≅ {}\n", l.name, r.notation);
    Output::build("decompose", &o.settings(), &[module_info(l)], &r, csv, text)
}

// ------------------------------------------------------------- omega-table

#[derive(Serialize)]
struct ClassInfo {
    label: String,
    dim: usize,
    period: Option<i32>,
}

#[derive(Serialize)]
struct EntryInfo {
    class: usize,
    coeff: String,
}

#[derive(Serialize)]
struct RowInfo {
    class: usize,
    entries: Vec<EntryInfo>,
    projective: u64,
    text: String,
}

#[derive(Serialize)]
struct TableResult {
    closed: bool,
    limit: Option<String>,
    classes: Vec<ClassInfo>,
    rows: Vec<RowInfo>,
    matrix: Vec<Vec<i64>>,
    charpoly: Option<IntPolynomial>,
    value: Option<f64>,
    undecided: usize,
}

/// Labels that mark a class isomorphic to the dual of an earlier one with `*`.
fn table_labels(t: &TransitionTable, budget: &SearchBudget) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(t.len());
    for (i, c) in t.classes.iter().enumerate() {
        let d = c.rep.dim();
        let same: Vec<usize> = (0..i).filter(|&j| t.classes[j].rep.dim() == d).collect();
        if same.is_empty() {
            out.push(format!("M{d}"));
            continue;
        }
        let dual = c.rep.dual();
        let starred = same
            .iter()
            .find(|&&j| !out[j].ends_with('*') && is_isomorphic(&t.classes[j].rep, &dual, budget) == Answer::Yes);
        let base = match starred {
            Some(&j) => format!("{}*", out[j]),
            None => format!("M{d}"),
        };
        let mut label = base.clone();
        while out.contains(&label) {
            label.push('\'');
        }
        out.push(label);
    }
    out
}

fn laurent_terms(coeff: &Laurent, label: &str) -> Vec<String> {
    coeff
        .0
        .iter()
        .map(|(&m, &c)| {
            let om = match m {
                0 => String::new(),
                1 => "Ω".to_string(),
                _ => format!("Ω^{m}"),
            };
            format!("{}{om}{label}", times(c))
        })
        .collect()
}

pub fn omega_table_cmd(l: &Loaded, o: &Options) -> Result<Output, CliError> {
    let t = omega_table(&l.module, &o.orbit());
    let value = table_npj(&t).ok();
    let labs = table_labels(&t, &o.budget());
    let rows: Vec<RowInfo> = t
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut terms: Vec<String> = r.iter().flat_map(|e| laurent_terms(&e.coeff, &labs[e.class])).collect();
            if t.projective[i] > 0 {
                terms.push(format!("{}P", times(t.projective[i])));
            }
            RowInfo {
                class: i,
                entries: r
                    .iter()
                    .map(|e| EntryInfo {
                        class: e.class,
                        coeff: e.coeff.to_string(),
                    })
                    .collect(),
                projective: t.projective[i],
                text: format!("M ⊗ {} ≅ {}", labs[i], join_sum(terms)),
            }
        })
        .collect();
    let r = TableResult {
        closed: t.closed,
        limit: t.limit.as_ref().map(ToString::to_string),
        classes: t
            .classes
            .iter()
            .zip(&labs)
            .map(|(c, label)| ClassInfo {
                label: label.clone(),
                dim: c.rep.dim(),
                period: c.period,
            })
            .collect(),
        matrix: t.at_one().to_i64_rows(),
        charpoly: value.as_ref().map(|v| v.charpoly.clone()),
        value: value.as_ref().map(|v| v.value),
        undecided: t.undecided,
        rows,
    };
    let mut csv = vec![{
        let mut h = vec!["class".to_string(), "dim".to_string()];
        h.extend(labs.iter().cloned());
        h.push("P".into());
        h
    }];
    for (i, mrow) in r.matrix.iter().enumerate() {
        let mut line = vec![labs[i].clone(), r.classes[i].dim.to_string()];
        line.extend(mrow.iter().map(i64::to_string));
        line.push(t.projective[i].to_string());
        csv.push(line);
    }
    let mut text = format!(
        "omega table for {}: {} classes, {}\n",
        l.name,
        r.classes.len(),
        if r.closed { "closed" } else { "inconclusive" }
    );
    if let Some(lim) = &r.limit {
        text.push_str(&format!("limit: {lim}\n"));
    }
    for row in &r.rows {
        text.push_str(&format!("  {}\n", row.text));
    }
    if let (Some(v), Some(cp)) = (r.value, &r.charpoly) {
        text.push_str(&format!("charpoly at Ω = 1: {cp}\nnpj = {v:.10}\n"));
    }
    Output::build("omega-table", &o.settings(), &[module_info(l)], &r, csv, text)
}

// ---------------------------------------------------------------- classify

pub fn classify_cmd(l: &Loaded, o: &Options) -> Result<Output, CliError> {
    let c = classify(&l.module, &o.budget(), ReportConfig::default().classify_dim_cap);
    let csv = vec![
        row(["category", "core_dim", "free_rank", "endotrivial", "sqrt2", "p_faithful"]),
        row([
            c.category.to_string(),
            c.core_dim.to_string(),
            c.free_rank.to_string(),
            c.endotrivial.to_string(),
            c.sqrt2.to_string(),
            c.p_faithful.to_string(),
        ]),
    ];
    let text = format!(
        "{}: {} (core dim {}, free rank {}, endotrivial {}, sqrt2 {}, p-faithful {})\n",
        l.name, c.category, c.core_dim, c.free_rank, c.endotrivial, c.sqrt2, c.p_faithful
    );
    Output::build("classify", &o.settings(), &[module_info(l)], &c, csv, text)
}

// ------------------------------------------------------------ cyclic-exact

#[derive(Serialize)]
struct CyclicResult {
    word: Option<Vec<u32>>,
    p: u32,
    blocks: Vec<usize>,
    value: f64,
    descriptor: String,
}

pub fn cyclic_exact_cmd(l: &Loaded, o: &Options) -> Result<Output, CliError> {
    let targets: Vec<(Option<Vec<u32>>, Module)> = match &o.restrict {
        Some(ws) => ws
            .iter()
            .map(|w| Ok((Some(w.clone()), l.module.restrict(std::slice::from_ref(w))?)))
            .collect::<Result<_, CliError>>()?,
        None => vec![(None, l.module.clone())],
    };
    let mut results = Vec::new();
    for (word, m) in targets {
        let v = cyclic_exact_npj(&m)?;
        results.push(CyclicResult {
            word,
            p: v.p,
            descriptor: v.to_string(),
            blocks: v.blocks,
            value: v.value,
        });
    }
    let mut csv = vec![row(["word", "p", "blocks", "value"])];
    let mut text = String::new();
    for r in &results {
        let w = r.word.as_deref().map_or_else(String::new, word_text);
        let blocks = r.blocks.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        csv.push(row([w.clone(), r.p.to_string(), blocks.clone(), r.value.to_string()]));
        if r.word.is_some() {
            text.push_str(&format!("⟨{w}⟩: "));
        }
        text.push_str(&format!("{:.10} blocks {{{}}}\n", r.value, blocks));
    }
    Output::build("cyclic-exact", &o.settings(), &[module_info(l)], &results, csv, text)
}

// ----------------------------------------------------------------- harness

pub fn harness(mods: &[Loaded], o: &Options) -> Result<Output, CliError> {
    let modules: Vec<Module> = mods.iter().map(|l| l.module.clone()).collect();
    if let Some(w) = modules.windows(2).find(|w| w[0].group() != w[1].group()) {
        return Err(CliError::Input(format!(
            "harness modules must share a group: {} vs {}",
            w[0].group(),
            w[1].group()
        )));
    }
    let r: HarnessReport = invariant_harness(&modules, o.n, &o.budget());
    let mut csv = vec![row(["law", "checks", "failures"])];
    let mut text = format!("harness: {} modules, n <= {}\n", r.modules, r.n_max);
    for law in ALL_LAWS {
        let (checks, fails) = r.tally.iter().find(|t| t.0 == law).map_or((0, 0), |t| (t.1, t.2));
        csv.push(row([law.letter().to_string(), checks.to_string(), fails.to_string()]));
        text.push_str(&format!(
            "  ({}) {:<4} {checks} checks, {fails} failures\n",
            law.letter(),
            if fails == 0 { "pass" } else { "FAIL" }
        ));
    }
    for f in &r.failures {
        text.push_str(&format!(
            "  failure ({}) modules {:?} n {:?}: {}\n",
            f.law.letter(),
            f.modules,
            f.n,
            f.detail
        ));
    }
    let infos: Vec<ModuleInfo> = mods.iter().map(module_info).collect();
    let mut out = Output::build("harness", &o.settings(), &infos, &r, csv, text)?;
    if !r.passed() {
        out.exit_code = 2;
    }
    Ok(out)
}
