//! Named modules used throughout the tests and the command-line examples.
//!
//! `(Z/p)^2` modules are written with generators `g, h`; matrices act on
//! column vectors.

use crate::linalg::FpMatrix;
use crate::rep::{GroupSpec, Module};

fn build(p: u32, gens: &[Vec<Vec<i64>>]) -> Module {
    Module::from_int_rows(p, gens).expect("gallery module is valid")
}

/// Uniserial 3-dim module for `(Z/3)^2` with `Ω^2 M ≅ M`; its cores grow like `2^n`.
pub fn uniserial_3x3() -> Module {
    build(
        3,
        &[
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]],
            vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]],
        ],
    )
}

/// `Soc^2(kG)` for `(Z/3)^2`, three dimensional with a 2-dim top.
pub fn soc2_3x3() -> Module {
    build(
        3,
        &[
            vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]],
        ],
    )
}

/// Six-dimensional `(Z/3)^2` module with `npj = 3` and a three-class table.
pub fn m6_three_classes() -> Module {
    build(
        3,
        &[
            vec![
                vec![1, 0, 1, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 1, 0],
                vec![0, 0, 0, 1, 0, 1],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
            vec![
                vec![1, 0, 0, 1, 0, 0],
                vec![0, 1, 0, 0, 1, 0],
                vec![0, 0, 1, 0, 0, 1],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
        ],
    )
}

/// Self-dual six-dimensional `(Z/3)^2` module with `npj = 4` and an eight-class table.
pub fn m6_eight_classes() -> Module {
    build(
        3,
        &[
            vec![
                vec![1, 1, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 1, 0, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 0, 0, 0, 0, 1],
            ],
            vec![
                vec![1, 0, 0, 1, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 1],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
        ],
    )
}

/// `kG / Rad^2(kG)` for `(Z/p)^2`: basis `1, x_1, x_2`.
pub fn kg_mod_rad2(p: u32) -> Module {
    let g = GroupSpec::new(p, 2).expect("prime");
    let mut gens = Vec::new();
    for i in 0..2 {
        let mut x = FpMatrix::identity(p, 3);
        x.set(i + 1, 0, 1);
        gens.push(x);
    }
    Module::new(g, gens).expect("valid")
}

/// Five-dimensional `(Z/3)^2` module whose restriction to `<g>` is `k ⊕ 2·J_2`.
pub fn m5_restriction() -> Module {
    build(
        3,
        &[
            vec![
                vec![1, 0, 0, 0, 0],
                vec![0, 1, 1, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 1],
                vec![0, 0, 0, 0, 1],
            ],
            vec![
                vec![1, 0, 1, 0, 0],
                vec![0, 1, 0, 0, 1],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 1],
            ],
        ],
    )
}

/// Self-dual four-dimensional `(Z/3)^2` module whose tensor powers keep
/// producing new syzygy orbits.
pub fn m4_zigzag() -> Module {
    build(
        3,
        &[
            vec![vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1], vec![0, 0, 0, 1]],
            vec![vec![1, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        ],
    )
}

/// Jordan block of size `j` for `Z/p`.
pub fn jordan_block(p: u32, j: usize) -> Module {
    let g = GroupSpec::new(p, 1).expect("prime");
    let mut x = FpMatrix::identity(p, j);
    for i in 0..j.saturating_sub(1) {
        x.set(i, i + 1, 1);
    }
    Module::new(g, vec![x]).expect("valid")
}

/// Direct sum of Jordan blocks for `Z/p`.
pub fn jordan_blocks(p: u32, sizes: &[usize]) -> Module {
    let g = GroupSpec::new(p, 1).expect("prime");
    let blocks: Vec<Module> = sizes.iter().map(|&j| jordan_block(p, j)).collect();
    if blocks.is_empty() {
        return Module::zero(g);
    }
    Module::direct_sum(&blocks).expect("same group")
}

/// Looks a gallery module up by name.
pub fn by_name(name: &str) -> Option<Module> {
    Some(match name {
        "uniserial-3x3" => uniserial_3x3(),
        "soc2-3x3" => soc2_3x3(),
        "m6-three-classes" => m6_three_classes(),
        "m6-eight-classes" => m6_eight_classes(),
        "kg-mod-rad2-5" => kg_mod_rad2(5),
        "m5-restriction" => m5_restriction(),
        "m4-zigzag" => m4_zigzag(),
        "jordan-5-2" => jordan_block(5, 2),
        _ => return None,
    })
}

pub const NAMES: [&str; 8] = [
    "uniserial-3x3",
    "soc2-3x3",
    "m6-three-classes",
    "m6-eight-classes",
    "kg-mod-rad2-5",
    "m5-restriction",
    "m4-zigzag",
    "jordan-5-2",
];
