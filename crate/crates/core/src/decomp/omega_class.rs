//! Grouping indecomposables into orbits of the syzygy functor.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use crate::rep::{omega, omega_inv, Answer, Module};

use super::iso::{iso_search, AdditiveInvariants};
use super::SearchBudget;

#[derive(Clone, Debug)]
struct Shift {
    module: Module,
    inv: OnceCell<AdditiveInvariants>,
}

impl Shift {
    fn new(module: Module) -> Self {
        Shift {
            module,
            inv: OnceCell::new(),
        }
    }

    fn inv(&self) -> &AdditiveInvariants {
        self.inv.get_or_init(|| AdditiveInvariants::of(&self.module))
    }
}

#[derive(Clone, Debug)]
pub struct OmegaClass {
    pub id: usize,
    pub rep: Module,
    /// Computed shifts `Ω^m(rep)`.
    shifts: BTreeMap<i32, Shift>,
}

/// Result of classifying a module against the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaMatch {
    /// `S ≅ Ω^shift(rep of class id)`.
    Existing { id: usize, shift: i32 },
    /// Registered as a new class whose representative is `Ω^{-shift}(S)`.
    New { id: usize, shift: i32 },
}

impl OmegaMatch {
    pub fn id(&self) -> usize {
        match *self {
            OmegaMatch::Existing { id, .. } | OmegaMatch::New { id, .. } => id,
        }
    }

    pub fn shift(&self) -> i32 {
        match *self {
            OmegaMatch::Existing { shift, .. } | OmegaMatch::New { shift, .. } => shift,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OmegaClassRegistry {
    classes: Vec<OmegaClass>,
    pub window: i32,
    /// Shifts are only built from modules of at most this dimension when
    /// searching for matches.
    pub shift_dim_cap: usize,
    budget: SearchBudget,
    /// Isomorphism questions left undecided (treated as "not isomorphic").
    pub undecided: usize,
}

impl OmegaClassRegistry {
    pub fn new(window: i32, shift_dim_cap: usize, budget: SearchBudget) -> Self {
        OmegaClassRegistry {
            classes: Vec::new(),
            window,
            shift_dim_cap,
            budget,
            undecided: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[OmegaClass] {
        &self.classes
    }

    pub fn rep(&self, id: usize) -> &Module {
        &self.classes[id].rep
    }

    pub fn register(&mut self, rep: Module) -> usize {
        let id = self.classes.len();
        let mut shifts = BTreeMap::new();
        shifts.insert(0, Shift::new(rep.clone()));
        self.classes.push(OmegaClass { id, rep, shifts });
        id
    }

    /// `Ω^m(rep of id)`, computed along the chain from 0 and cached. Returns
    /// `None` if some module on the way (including the result) exceeds `cap`.
    pub fn shift(&mut self, id: usize, m: i32, cap: usize) -> Option<&Module> {
        self.shift_entry(id, m, cap).map(|s| &s.module)
    }

    fn shift_entry(&mut self, id: usize, m: i32, cap: usize) -> Option<&Shift> {
        if !self.classes[id].shifts.contains_key(&m) {
            let step = m.signum();
            let src = self.shift_entry(id, m - step, cap)?.module.clone();
            let next = if step > 0 { omega(&src) } else { omega_inv(&src) };
            self.classes[id].shifts.insert(m, Shift::new(next));
        }
        let s = &self.classes[id].shifts[&m];
        (s.module.dim() <= cap).then_some(s)
    }

    /// Shift order 0, 1, -1, 2, -2, ... up to the window.
    fn shift_order(&self) -> Vec<i32> {
        let mut v = vec![0];
        for k in 1..=self.window {
            v.push(k);
            v.push(-k);
        }
        v
    }

    /// Finds `(id, m)` with `s ≅ Ω^m(rep)` and `|m| <= window`.
    pub fn lookup(&mut self, s: &Module) -> Option<(usize, i32)> {
        let inv = OnceCell::new();
        let cap = self.shift_dim_cap;
        for m in self.shift_order() {
            for id in 0..self.classes.len() {
                let budget = self.budget;
                let Some(cand) = self.shift_entry(id, m, cap) else {
                    continue;
                };
                if cand.module.dim() != s.dim() || cand.inv() != inv.get_or_init(|| AdditiveInvariants::of(s)) {
                    continue;
                }
                match iso_search(&cand.module, s, &budget) {
                    Answer::Yes => return Some((id, m)),
                    Answer::No => {}
                    Answer::Unknown => self.undecided += 1,
                }
            }
        }
        None
    }

    /// Classifies `s`, registering it as a new class when no shift matches.
    pub fn omega_classify(&mut self, s: &Module) -> OmegaMatch {
        match self.lookup(s) {
            Some((id, shift)) => OmegaMatch::Existing { id, shift },
            None => {
                let (id, shift) = self.register_normalized(s);
                OmegaMatch::New { id, shift }
            }
        }
    }

    /// Registers the smallest module reached from `s` by applying `Ω` or
    /// `Ω^{-1}` while the dimension keeps dropping. Returns `(id, m)` with
    /// `s ≅ Ω^m(rep)`.
    pub fn register_normalized(&mut self, s: &Module) -> (usize, i32) {
        let mut best = (s.clone(), 0);
        for dir in [1, -1] {
            let mut cur = s.clone();
            let mut m = 0i32;
            while m.abs() < self.window {
                let next = if dir > 0 { omega(&cur) } else { omega_inv(&cur) };
                if next.dim() >= cur.dim() {
                    break;
                }
                m += dir;
                cur = next;
                if cur.dim() < best.0.dim() {
                    best = (cur.clone(), m);
                }
            }
        }
        (self.register(best.0), -best.1)
    }

    /// Smallest `π` in `1..=window` with `Ω^π(rep) ≅ rep`, if any.
    pub fn period(&mut self, id: usize) -> Option<i32> {
        let cap = self.shift_dim_cap;
        let rep = self.classes[id].rep.clone();
        for m in 1..=self.window {
            let budget = self.budget;
            let Some(cand) = self.shift_entry(id, m, cap) else {
                return None;
            };
            if cand.module.dim() == rep.dim() && iso_search(&cand.module, &rep, &budget) == Answer::Yes {
                return Some(m);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::GroupSpec;

    #[test]
    fn omega_of_trivial() {
        let g = GroupSpec::new(3, 2).unwrap();
        let k = Module::trivial(g, 1);
        let mut reg = OmegaClassRegistry::new(6, 512, SearchBudget::default());
        assert_eq!(reg.omega_classify(&k), OmegaMatch::New { id: 0, shift: 0 });
        assert_eq!(reg.omega_classify(&omega(&k)), OmegaMatch::Existing { id: 0, shift: 1 });
        assert_eq!(reg.omega_classify(&omega_inv(&k)), OmegaMatch::Existing { id: 0, shift: -1 });
        assert_eq!(reg.len(), 1);
        assert_eq!(reg.period(0), None);
    }

    #[test]
    fn new_classes_are_normalized() {
        let g = GroupSpec::new(3, 2).unwrap();
        let k = Module::trivial(g, 1);
        let mut reg = OmegaClassRegistry::new(6, 512, SearchBudget::default());
        let o2 = omega(&omega(&k));
        assert_eq!(reg.omega_classify(&o2), OmegaMatch::New { id: 0, shift: 2 });
        assert_eq!(reg.rep(0).dim(), 1);
    }

    #[test]
    fn periodic_uniserial() {
        let m = Module::from_int_rows(
            3,
            &[
                vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]],
                vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]],
            ],
        )
        .unwrap();
        let mut reg = OmegaClassRegistry::new(6, 512, SearchBudget::default());
        reg.register(m);
        assert_eq!(reg.period(0), Some(2));
    }
}
