//! The sequence `cc_n = dim core(M^⊗n)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rep::{core, Module};

use super::orbit::{key_map, ClassKey, Limit, OrbitConfig, OrbitSnapshot, OrbitTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcConfig {
    pub n_max: usize,
    /// Largest module the computation may build.
    pub dim_budget: usize,
    pub orbit: OrbitConfig,
}

impl Default for CcConfig {
    fn default() -> Self {
        CcConfig {
            n_max: 12,
            dim_budget: 200_000,
            orbit: OrbitConfig::default(),
        }
    }
}

impl CcConfig {
    fn orbit_config(&self) -> OrbitConfig {
        OrbitConfig {
            dim_cap: self.orbit.dim_cap.min(self.dim_budget),
            ..self.orbit
        }
    }
}

/// `core(M^⊗n)` written as a multiset of shifted classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreMultiset(#[serde(with = "key_map")] pub BTreeMap<ClassKey, u64>);

impl CoreMultiset {
    pub fn count(&self) -> u64 {
        self.0.values().sum()
    }
}

/// `K_n = (num/den)·K_{n-lag}` as multisets of indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleIdentity {
    pub n: usize,
    pub lag: usize,
    pub num: u64,
    pub den: u64,
}

impl ModuleIdentity {
    /// `(num/den)^{1/lag}`, the growth rate forced by the identity.
    pub fn rate(&self) -> f64 {
        (self.num as f64 / self.den as f64).powf(1.0 / self.lag as f64)
    }
}

/// Everything needed to extend a sequence: classes, products and `K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcSnapshot {
    pub orbit: OrbitSnapshot,
    /// `K_1, ..., K_n`.
    pub history: Vec<CoreMultiset>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CcSequence {
    /// `cc_0, cc_1, ...`.
    pub values: Vec<u64>,
    /// Free rank stripped when passing from `K_{n-1} ⊗ M` to `K_n` (index 0 is 0).
    pub free_ranks: Vec<u64>,
    /// Free rank of `M^⊗n` itself, `(dim M^n - cc_n) / |G|`, when it fits in 64 bits.
    pub total_free_ranks: Vec<Option<u64>>,
    pub truncated: Option<Limit>,
    pub identity: Option<ModuleIdentity>,
    pub snapshot: CcSnapshot,
    /// Isomorphism questions left undecided along the way.
    pub undecided: usize,
}

impl CcSequence {
    /// Largest `n` with a computed value.
    pub fn last_n(&self) -> usize {
        self.values.len() - 1
    }
}

fn total_free(dim: u64, q: u64, n: usize, cc: u64) -> Option<u64> {
    let total = dim.checked_pow(n as u32)?;
    Some((total - cc) / q)
}

/// Runs `K_{n+1} = core(K_n ⊗ M)` up to `n_max`, stopping early when a module
/// would exceed the dimension budget.
pub fn cc_sequence(m: &Module, cfg: &CcConfig) -> CcSequence {
    let empty = CcSnapshot {
        orbit: OrbitSnapshot {
            reps: vec![],
            products: vec![],
        },
        history: vec![],
    };
    cc_extend(m, &empty, cfg)
}

/// Continues from a snapshot of an earlier run with the same module.
pub fn cc_extend(m: &Module, snap: &CcSnapshot, cfg: &CcConfig) -> CcSequence {
    let mut table = OrbitTable::from_snapshot(m, cfg.orbit_config(), &snap.orbit);
    let mut driver = Driver {
        table: &mut table,
        dim: m.dim() as u64,
        q: m.group().order() as u64,
        periods: BTreeMap::new(),
    };
    let mut history = snap.history.clone();
    let mut values = vec![1u64];
    let mut free_ranks = vec![0u64];
    let mut truncated = None;

    // replay stored steps to recover the values
    let mut prev: Option<&CoreMultiset> = None;
    for k in history.iter().take(cfg.n_max) {
        match driver.replay(prev, k) {
            Ok((v, f)) => {
                values.push(v);
                free_ranks.push(f);
            }
            Err(l) => {
                truncated = Some(l);
                break;
            }
        }
        prev = Some(k);
    }
    history.truncate(values.len() - 1);

    while truncated.is_none() && values.len() <= cfg.n_max {
        let step = match history.last() {
            None => driver.first(),
            Some(k) => driver.step(k),
        };
        match step {
            Ok((k, v, f)) => {
                history.push(k);
                values.push(v);
                free_ranks.push(f);
            }
            Err(l) => truncated = Some(l),
        }
    }
    if let Some(l) = &truncated {
        log::info!("cc sequence stopped after n = {}: {l}", values.len() - 1);
    }

    let identity = driver.find_identity(&history);
    let q = m.group().order() as u64;
    let total_free_ranks = values
        .iter()
        .enumerate()
        .map(|(n, &c)| if n == 0 { Some(0) } else { total_free(m.dim() as u64, q, n, c) })
        .collect();
    CcSequence {
        values,
        free_ranks,
        total_free_ranks,
        truncated,
        identity,
        snapshot: CcSnapshot {
            orbit: table.snapshot(),
            history,
        },
        undecided: table.undecided(),
    }
}

struct Driver<'a> {
    table: &'a mut OrbitTable,
    dim: u64,
    q: u64,
    periods: BTreeMap<usize, Option<i32>>,
}

impl Driver<'_> {
    fn size(&mut self, k: &CoreMultiset) -> Result<u64, Limit> {
        let mut total = 0u64;
        for (&(j, s), &c) in &k.0 {
            let d = self.table.shift_dim(j, s)?;
            total = c
                .checked_mul(d)
                .and_then(|x| x.checked_add(total))
                .ok_or(Limit::Overflow)?;
        }
        Ok(total)
    }

    fn first(&mut self) -> Result<(CoreMultiset, u64, u64), Limit> {
        let p = self.table.seed()?;
        let k = CoreMultiset(p.pieces);
        let v = self.size(&k)?;
        Ok((k, v, p.free_rank))
    }

    fn step(&mut self, k: &CoreMultiset) -> Result<(CoreMultiset, u64, u64), Limit> {
        let mut next: BTreeMap<ClassKey, u64> = BTreeMap::new();
        for (&(j, s), &c) in &k.0 {
            let prod = self.table.product(j)?;
            for (&(j2, s2), &c2) in &prod.pieces {
                let e = next.entry((j2, s + s2)).or_default();
                *e = c.checked_mul(c2).and_then(|x| x.checked_add(*e)).ok_or(Limit::Overflow)?;
            }
        }
        let next = CoreMultiset(next);
        let before = self.size(k)?.checked_mul(self.dim).ok_or(Limit::Overflow)?;
        let v = self.size(&next)?;
        Ok((next, v, (before - v) / self.q))
    }

    /// Values of a stored step.
    fn replay(&mut self, prev: Option<&CoreMultiset>, k: &CoreMultiset) -> Result<(u64, u64), Limit> {
        let v = self.size(k)?;
        let before = match prev {
            None => self.dim,
            Some(p) => self.size(p)?.checked_mul(self.dim).ok_or(Limit::Overflow)?,
        };
        Ok((v, (before - v) / self.q))
    }

    /// Folds shifts of periodic classes into `0..period`.
    fn normalize(&mut self, k: &CoreMultiset) -> BTreeMap<ClassKey, u64> {
        let mut out = BTreeMap::new();
        for (&(j, s), &c) in &k.0 {
            let per = *self.periods.entry(j).or_insert_with(|| self.table.period(j));
            let s = match per {
                Some(pi) => s.rem_euclid(pi),
                None => s,
            };
            *out.entry((j, s)).or_default() += c;
        }
        out
    }

    /// Earliest `n`, then smallest lag, with `K_n` a rational multiple of `K_{n-lag}`.
    fn find_identity(&mut self, history: &[CoreMultiset]) -> Option<ModuleIdentity> {
        let norm: Vec<BTreeMap<ClassKey, u64>> = history.iter().map(|k| self.normalize(k)).collect();
        for n in 2..=norm.len() {
            for lag in 1..n {
                let (a, b) = (&norm[n - 1], &norm[n - 1 - lag]);
                if b.is_empty() || a.len() != b.len() {
                    continue;
                }
                let (&k0, &b0) = b.iter().next().expect("nonempty");
                let Some(&a0) = a.get(&k0) else { continue };
                let ok = b.iter().all(|(key, &bc)| {
                    a.get(key)
                        .is_some_and(|&ac| ac as u128 * b0 as u128 == a0 as u128 * bc as u128)
                });
                if ok && a0 != b0 {
                    let g = num_integer::gcd(a0, b0);
                    return Some(ModuleIdentity {
                        n,
                        lag,
                        num: a0 / g,
                        den: b0 / g,
                    });
                }
            }
        }
        None
    }
}

/// Plain iteration on explicit modules; the baseline the class-based driver
/// is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectCc {
    pub values: Vec<u64>,
    pub free_ranks: Vec<u64>,
    pub last_core: Module,
    pub truncated: bool,
}

pub fn cc_sequence_direct(m: &Module, n_max: usize, dim_budget: usize) -> DirectCc {
    let mut values = vec![1];
    let mut free_ranks = vec![0];
    let mut k = Module::trivial(m.group(), 1);
    let mut truncated = false;
    for _ in 1..=n_max {
        if k.dim() * m.dim() > dim_budget {
            truncated = true;
            break;
        }
        let c = core(&k.tensor(m).expect("same group"));
        values.push(c.core.dim() as u64);
        free_ranks.push(c.free_rank as u64);
        k = c.core;
    }
    DirectCc {
        values,
        free_ranks,
        last_core: k,
        truncated,
    }
}

/// `u_n = cc_n^{1/n}` for `n >= 1`.
pub fn upper_bounds(values: &[u64]) -> Vec<f64> {
    values
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, &c)| (c as f64).powf(1.0 / n as f64))
        .collect()
}

/// Running minimum of [`upper_bounds`]; each entry bounds `npj` from above.
pub fn running_min(us: &[f64]) -> Vec<f64> {
    let mut best = f64::INFINITY;
    us.iter()
        .map(|&u| {
            best = best.min(u);
            best
        })
        .collect()
}
