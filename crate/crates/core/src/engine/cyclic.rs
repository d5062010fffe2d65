//! Exact values for cyclic groups `Z/p`, where a module is a sum of Jordan
//! blocks `J_1..J_p` and `J_j` contributes `f_j(2cos(π/p))`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::rep::Module;

/// `f_1 = 1`, `f_2 = x`, `x f_j = f_{j+1} + f_{j-1}`.
pub fn chebyshev_f(j: usize, x: f64) -> f64 {
    assert!(j >= 1, "chebyshev_f is defined for j >= 1");
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 1..j {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Non-projective Jordan block sizes, descending.
pub fn cyclic_blocks(m: &Module) -> Result<Vec<usize>> {
    if m.group().rank() != 1 {
        return Err(Error::Precondition(format!(
            "needs a cyclic group, got rank {}",
            m.group().rank()
        )));
    }
    let p = m.p() as usize;
    let x = m.gens()[0].sub(&FpMatrix::identity(m.p(), m.dim()));
    let mut sizes = x.nilpotent_profile()?;
    sizes.retain(|&j| j < p);
    Ok(sizes)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicValue {
    pub p: u32,
    /// The exact descriptor: the value is `Σ sin(jπ/p) / sin(π/p)` over these.
    pub blocks: Vec<usize>,
    pub value: f64,
}

impl std::fmt::Display for CyclicValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .blocks
            .iter()
            .map(|j| format!("sin({j}π/{p})/sin(π/{p})", p = self.p))
            .collect();
        write!(f, "{} = {:.12}", terms.join(" + "), self.value)
    }
}

fn species_of_blocks(p: u32, blocks: &[usize], m: u32) -> f64 {
    let x = 2.0 * (m as f64 * PI / p as f64).cos();
    blocks.iter().map(|&j| chebyshev_f(j, x)).sum()
}

/// `npj` of a module for `Z/p`.
pub fn cyclic_exact_npj(m: &Module) -> Result<CyclicValue> {
    let blocks = cyclic_blocks(m)?;
    Ok(CyclicValue {
        p: m.p(),
        value: species_of_blocks(m.p(), &blocks, 1),
        blocks,
    })
}

/// The species `s_m`, sending `J_2` to `2cos(mπ/p)`.
pub fn species_cyclic(module: &Module, m: u32) -> Result<f64> {
    let p = module.p();
    if m == 0 || m >= p {
        return Err(Error::Precondition(format!("species index {m} outside 1..{p}")));
    }
    let blocks = cyclic_blocks(module)?;
    Ok(species_of_blocks(p, &blocks, m))
}
