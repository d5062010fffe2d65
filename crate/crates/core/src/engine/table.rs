//! Transition tables: tensoring class representatives with `M`, recorded as
//! Laurent polynomials in `Ω`, and the spectral radius of the table at `Ω = 1`.
//!
//! Rows are the smallest-dimensional modules of each syzygy orbit. An
//! aperiodic orbit contributes its normalized representative; an orbit with
//! `Ω^π S ≅ S` contributes every shift `0 <= m < π` of minimal dimension, and
//! exponents on such rows are reduced modulo `π`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decomp::{canonical_signature, AdditiveInvariants, Signature};
use crate::error::{Error, Result};
use crate::linalg::{charpoly_int, largest_real_root, IntMatrix, IntPolynomial};
use crate::rep::Module;

use super::orbit::{Limit, OrbitConfig, OrbitTable};

/// `Σ c_m Ω^m` with nonnegative coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Laurent(pub BTreeMap<i32, u64>);

impl Laurent {
    pub fn at_one(&self) -> u64 {
        self.0.values().sum()
    }

    fn add(&mut self, m: i32, c: u64) {
        *self.0.entry(m).or_default() += c;
    }
}

impl std::fmt::Display for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (&m, &c) in &self.0 {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if c == 1 && m != 0 { String::new() } else { c.to_string() };
            match m {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coef}Ω")?,
                _ => write!(f, "{coef}Ω^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableClass {
    pub rep: Module,
    /// Syzygy orbit and the shift of the orbit representative giving `rep`.
    pub orbit: usize,
    pub shift: i32,
    pub period: Option<i32>,
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub class: usize,
    pub coeff: Laurent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionTable {
    pub classes: Vec<TableClass>,
    /// `rows[i]`: the non-projective part of `classes[i] ⊗ M`.
    pub rows: Vec<Vec<TableEntry>>,
    /// Free rank of `classes[i] ⊗ M`.
    pub projective: Vec<u64>,
    pub closed: bool,
    pub limit: Option<Limit>,
    /// Isomorphism questions left undecided while building the table.
    pub undecided: usize,
    /// Largest number of failed splitting trials behind an indecomposability verdict.
    pub max_trials: usize,
}

impl TransitionTable {
    /// The integer matrix at `Ω = 1`; entry `(i, j)` counts class `j` in row `i`.
    pub fn at_one(&self) -> IntMatrix {
        let n = self.classes.len();
        let mut a = IntMatrix::zeros(n);
        for (i, row) in self.rows.iter().enumerate() {
            for e in row {
                a.set(i, e.class, e.coeff.at_one().into());
            }
        }
        a
    }

    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.rep.dim()).collect()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

struct Member {
    orbit: usize,
    shift: i32,
}

/// Maps orbit keys `(c, m)` to `(row, residual exponent)`.
struct Folding {
    /// Per orbit: period and sorted member shifts with their row index.
    orbits: Vec<(Option<i32>, Vec<(i32, usize)>)>,
}

impl Folding {
    fn place(&self, c: usize, m: i32) -> (usize, i32) {
        let (period, members) = &self.orbits[c];
        match period {
            None => (members[0].1, m - members[0].0),
            Some(pi) => {
                let r = m.rem_euclid(*pi);
                let &(o, row) = members
                    .iter()
                    .rev()
                    .find(|(o, _)| *o <= r)
                    .unwrap_or(members.last().expect("nonempty"));
                let o = if o <= r { o } else { o - pi };
                (row, r - o)
            }
        }
    }
}

/// Builds the transition table of `M` by closing the orbit table.
pub fn omega_table(m: &Module, cfg: &OrbitConfig) -> TransitionTable {
    let mut t = OrbitTable::new(m, *cfg);
    let limit = t.close().err();
    table_from_orbits(&mut t, limit)
}

/// Table over the orbits whose products are known.
pub fn table_from_orbits(t: &mut OrbitTable, limit: Option<Limit>) -> TransitionTable {
    let q = t.module().group().order() as u64;
    let dm = t.module().dim() as u64;
    let cap = t.config().dim_cap;
    let done: Vec<usize> = (0..t.len()).filter(|&c| t.cached_product(c).is_some()).collect();
    let closed = limit.is_none() && done.len() == t.len();

    let mut members: Vec<Member> = Vec::new();
    let mut orbit_members: Vec<Vec<i32>> = vec![Vec::new(); t.len()];
    let mut periods = vec![None; t.len()];
    for c in 0..t.len() {
        let period = t.period(c);
        periods[c] = period;
        let shifts: Vec<i32> = match period {
            None => vec![0],
            Some(pi) => {
                let dims: Vec<(i32, usize)> = (0..pi)
                    .filter_map(|s| t.shift(c, s).ok().map(|x| (s, x.dim())))
                    .collect();
                let min = dims.iter().map(|d| d.1).min().unwrap_or(0);
                dims.into_iter().filter(|d| d.1 == min).map(|d| d.0).collect()
            }
        };
        for &s in &shifts {
            members.push(Member { orbit: c, shift: s });
        }
        orbit_members[c] = shifts;
    }

    // canonical row order
    let mut keyed: Vec<(Signature, AdditiveInvariants, usize, Module)> = members
        .iter()
        .enumerate()
        .map(|(i, mb)| {
            let rep = t.shift(mb.orbit, mb.shift).expect("member was built").clone();
            (canonical_signature(&rep), AdditiveInvariants::of(&rep), i, rep)
        })
        .collect();
    keyed.sort_by(|a, b| (&a.0, &a.1, a.2).cmp(&(&b.0, &b.1, b.2)));
    let mut row_of = vec![0; members.len()];
    for (row, k) in keyed.iter().enumerate() {
        row_of[k.2] = row;
    }
    let mut folding = Folding { orbits: Vec::new() };
    let mut idx = 0;
    for c in 0..t.len() {
        let list = orbit_members[c]
            .iter()
            .map(|&s| {
                let r = row_of[idx];
                idx += 1;
                (s, r)
            })
            .collect();
        folding.orbits.push((periods[c], list));
    }

    let mut classes = Vec::with_capacity(members.len());
    let mut rows = Vec::with_capacity(members.len());
    let mut projective = Vec::with_capacity(members.len());
    for (sig, _, i, rep) in keyed {
        let mb = &members[i];
        let mut row: BTreeMap<usize, Laurent> = BTreeMap::new();
        let mut free = 0;
        if let Some(prod) = t.cached_product(mb.orbit).cloned() {
            let mut core_dim = 0u64;
            let mut ok = true;
            for (&(c, k), &n) in &prod.pieces {
                let (r, e) = folding.place(c, k + mb.shift);
                row.entry(r).or_default().add(e, n);
                match t.shift(c, k + mb.shift) {
                    Ok(x) if x.dim() <= cap => core_dim += n * x.dim() as u64,
                    _ => ok = false,
                }
            }
            if ok {
                free = (rep.dim() as u64 * dm - core_dim) / q;
            }
        }
        classes.push(TableClass {
            rep,
            orbit: mb.orbit,
            shift: mb.shift,
            period: periods[mb.orbit],
            signature: sig,
        });
        rows.push(
            row.into_iter()
                .map(|(class, coeff)| TableEntry { class, coeff })
                .collect(),
        );
        projective.push(free);
    }
    TransitionTable {
        classes,
        rows,
        projective,
        closed,
        limit,
        undecided: t.undecided(),
        max_trials: t.max_trials,
    }
}

/// Spectral radius of a closed table with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableValue {
    pub value: f64,
    pub matrix: IntMatrix,
    pub charpoly: IntPolynomial,
}

pub fn table_npj(table: &TransitionTable) -> Result<TableValue> {
    if !table.closed {
        return Err(Error::TableNotClosed);
    }
    let matrix = table.at_one();
    let charpoly = charpoly_int(&matrix);
    let value = largest_real_root(&charpoly, 1e-13).unwrap_or(0.0).max(0.0);
    Ok(TableValue { value, matrix, charpoly })
}
