//! Structural flags read off small tensor products.

use serde::{Deserialize, Serialize};

use crate::decomp::{is_isomorphic, SearchBudget};
use crate::rep::{core, Answer, Module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Projective,
    Endotrivial,
    Sqrt2Class,
    General,
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Category::Projective => "projective",
            Category::Endotrivial => "endotrivial",
            Category::Sqrt2Class => "sqrt2-class",
            Category::General => "general",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub category: Category,
    pub core_dim: usize,
    pub free_rank: usize,
    pub projective: bool,
    /// `core(M ⊗ M*) ≅ k`.
    pub endotrivial: Answer,
    /// `core(M ⊗ M* ⊗ M) ≅ core(M) ⊕ core(M)`.
    pub sqrt2: Answer,
    pub p_faithful: Answer,
}

/// `dim_cap` bounds the triple product built for the `sqrt2` test.
pub fn classify(m: &Module, budget: &SearchBudget, dim_cap: usize) -> Classification {
    let c = core(m);
    let k = Module::trivial(m.group(), 1);
    let cm = c.core;
    let projective = cm.dim() == 0;
    let p_faithful = m.p_faithful(1 << 16);
    if projective {
        return Classification {
            category: Category::Projective,
            core_dim: 0,
            free_rank: c.free_rank,
            projective,
            endotrivial: Answer::No,
            sqrt2: Answer::No,
            p_faithful,
        };
    }
    let d = cm.dim();
    let endotrivial = if d * d > dim_cap {
        Answer::Unknown
    } else {
        let mm = core(&cm.tensor(&cm.dual()).expect("same group")).core;
        is_isomorphic(&mm, &k, budget)
    };
    let sqrt2 = if endotrivial == Answer::Yes {
        // M ⊗ M* ⊗ M ≅ M ⊕ proj for endotrivial M
        Answer::No
    } else if d * d * d > dim_cap {
        Answer::Unknown
    } else {
        let mm = core(&cm.tensor(&cm.dual()).expect("same group")).core;
        let mmm = core(&mm.tensor(&cm).expect("same group")).core;
        is_isomorphic(&mmm, &cm.multiple(2), budget)
    };
    let category = if endotrivial == Answer::Yes {
        Category::Endotrivial
    } else if sqrt2 == Answer::Yes {
        Category::Sqrt2Class
    } else {
        Category::General
    };
    Classification {
        category,
        core_dim: d,
        free_rank: c.free_rank,
        projective,
        endotrivial,
        sqrt2,
        p_faithful,
    }
}
