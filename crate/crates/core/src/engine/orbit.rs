//! Products `S ⊗ M` of syzygy-orbit representatives, decomposed into shifts
//! of registered classes.
//!
//! Since `core(Ω^m S ⊗ M) ≅ Ω^m core(S ⊗ M)`, one decomposition per orbit
//! determines the products of every shift.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decomp::{decompose_with_known, Catalog, OmegaClassRegistry, OmegaMatch, SearchBudget};
use crate::rep::Module;

/// `(class id, m)` standing for `Ω^m` of the class representative.
pub type ClassKey = (usize, i32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitConfig {
    /// Largest `|m|` searched when matching a summand against known classes.
    pub window: i32,
    pub class_cap: usize,
    /// Largest module (product or shift) ever built.
    pub dim_cap: usize,
    /// Largest shift built while searching for matches.
    pub shift_dim_cap: usize,
    pub budget: SearchBudget,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            window: 6,
            class_cap: 64,
            dim_cap: 5000,
            shift_dim_cap: 600,
            budget: SearchBudget::default(),
        }
    }
}

/// Why an exploration stopped early.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    ClassCap { cap: usize },
    Dimension { needed: usize, cap: usize },
    Overflow,
}

impl std::fmt::Display for Limit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Limit::ClassCap { cap } => write!(f, "more than {cap} classes"),
            Limit::Dimension { needed, cap } => write!(f, "needs a {needed}-dim module, cap is {cap}"),
            Limit::Overflow => write!(f, "integer overflow"),
        }
    }
}

/// Decomposition of `core(X)` as shifted classes plus the stripped free rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub free_rank: u64,
    #[serde(with = "key_map")]
    pub pieces: BTreeMap<ClassKey, u64>,
}

/// Serializes class-keyed maps as lists of `[id, shift, count]`.
pub(crate) mod key_map {
    use super::ClassKey;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<ClassKey, u64>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(usize, i32, u64)> = m.iter().map(|(&(j, k), &c)| (j, k, c)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<ClassKey, u64>, D::Error> {
        let v: Vec<(usize, i32, u64)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(j, k, c)| ((j, k), c)).collect())
    }
}

/// Serializable state: the class representatives and the products computed so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSnapshot {
    pub reps: Vec<Module>,
    pub products: Vec<Option<Product>>,
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    m: Module,
    cfg: OrbitConfig,
    registry: OmegaClassRegistry,
    products: Vec<Option<Product>>,
    peel: Catalog,
    peel_keys: Vec<ClassKey>,
    /// Largest number of failed splitting trials behind an indecomposability verdict.
    pub max_trials: usize,
}

fn mix(seed: u64, j: usize) -> u64 {
    seed ^ (j as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

impl OrbitTable {
    pub fn new(m: &Module, cfg: OrbitConfig) -> Self {
        OrbitTable {
            m: m.clone(),
            cfg,
            registry: OmegaClassRegistry::new(cfg.window, cfg.shift_dim_cap.min(cfg.dim_cap), cfg.budget),
            products: Vec::new(),
            peel: Catalog::new(cfg.budget),
            peel_keys: Vec::new(),
            max_trials: 0,
        }
    }

    pub fn from_snapshot(m: &Module, cfg: OrbitConfig, snap: &OrbitSnapshot) -> Self {
        let mut t = OrbitTable::new(m, cfg);
        for rep in &snap.reps {
            t.add_class(rep.clone());
        }
        t.products = snap.products.clone();
        t.products.resize(t.registry.len(), None);
        t
    }

    pub fn snapshot(&self) -> OrbitSnapshot {
        OrbitSnapshot {
            reps: self.registry.classes().iter().map(|c| c.rep.clone()).collect(),
            products: self.products.clone(),
        }
    }

    pub fn module(&self) -> &Module {
        &self.m
    }

    pub fn config(&self) -> &OrbitConfig {
        &self.cfg
    }

    pub fn len(&self) -> usize {
        self.registry.len()
    }

    pub fn is_empty(&self) -> bool {
        self.registry.is_empty()
    }

    pub fn rep(&self, id: usize) -> &Module {
        self.registry.rep(id)
    }

    pub fn undecided(&self) -> usize {
        self.registry.undecided + self.peel.undecided
    }

    /// The cached product of class `id` with `M`, if computed.
    pub fn cached_product(&self, id: usize) -> Option<&Product> {
        self.products.get(id).and_then(|p| p.as_ref())
    }

    fn add_class(&mut self, rep: Module) -> usize {
        let id = self.registry.register(rep);
        self.after_register(id);
        id
    }

    fn after_register(&mut self, id: usize) {
        self.products.push(None);
        let cap = self.cfg.shift_dim_cap.min(self.cfg.dim_cap);
        for m in [0, 1, -1] {
            if let Some(s) = self.registry.shift(id, m, cap) {
                let s = s.clone();
                self.peel.push(s);
                self.peel_keys.push((id, m));
            }
        }
    }

    /// Decomposes `core(x)` into shifted classes, registering new orbits.
    pub fn classify(&mut self, x: &Module, seed: u64) -> Result<Product, Limit> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order: Vec<usize> = (0..self.peel.len()).collect();
        let kd = decompose_with_known(x, &mut self.peel, &order, &mut rng);
        let mut pieces: BTreeMap<ClassKey, u64> = BTreeMap::new();
        for (i, &c) in kd.known.iter().enumerate() {
            if c > 0 {
                *pieces.entry(self.peel_keys[i]).or_default() += c as u64;
            }
        }
        for piece in kd.others {
            self.max_trials = self.max_trials.max(piece.trials);
            let before = self.registry.len();
            let found = self.registry.omega_classify(&piece.module);
            if let OmegaMatch::New { id, .. } = found {
                debug_assert_eq!(id, before);
                self.after_register(id);
                if self.registry.len() > self.cfg.class_cap {
                    return Err(Limit::ClassCap { cap: self.cfg.class_cap });
                }
            }
            *pieces.entry((found.id(), found.shift())).or_default() += 1;
        }
        Ok(Product {
            free_rank: kd.free_rank as u64,
            pieces,
        })
    }

    /// Decomposition of `core(M)`; registers its summands as the first classes.
    pub fn seed(&mut self) -> Result<Product, Limit> {
        let m = self.m.clone();
        if m.dim() > self.cfg.dim_cap {
            return Err(Limit::Dimension {
                needed: m.dim(),
                cap: self.cfg.dim_cap,
            });
        }
        self.classify(&m, self.cfg.budget.seed)
    }

    /// `core(rep_id ⊗ M)`, memoized.
    pub fn product(&mut self, id: usize) -> Result<Product, Limit> {
        if let Some(p) = &self.products[id] {
            return Ok(p.clone());
        }
        let rep = self.registry.rep(id);
        let needed = rep.dim() * self.m.dim();
        if needed > self.cfg.dim_cap {
            return Err(Limit::Dimension {
                needed,
                cap: self.cfg.dim_cap,
            });
        }
        let x = rep.tensor(&self.m).expect("same group");
        log::debug!("class {id}: decomposing a {}-dim product", x.dim());
        let p = self.classify(&x, mix(self.cfg.budget.seed, id))?;
        self.products[id] = Some(p.clone());
        Ok(p)
    }

    pub fn shift(&mut self, id: usize, m: i32) -> Result<&Module, Limit> {
        let cap = self.cfg.dim_cap;
        let ok = self.registry.shift(id, m, cap).is_some();
        if !ok {
            return Err(Limit::Dimension { needed: cap + 1, cap });
        }
        Ok(self.registry.shift(id, m, cap).expect("just computed"))
    }

    pub fn shift_dim(&mut self, id: usize, m: i32) -> Result<u64, Limit> {
        self.shift(id, m).map(|s| s.dim() as u64)
    }

    /// Smallest positive period of the class under `Ω`, within the window.
    pub fn period(&mut self, id: usize) -> Option<i32> {
        self.registry.period(id)
    }

    /// Computes products until every registered class has one.
    pub fn close(&mut self) -> Result<(), Limit> {
        if self.registry.is_empty() {
            self.seed()?;
        }
        let mut j = 0;
        while j < self.registry.len() {
            self.product(j)?;
            j += 1;
        }
        Ok(())
    }
}
