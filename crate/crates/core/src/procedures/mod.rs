//! Constructive steps: symmetrization to a complete multipartite graph and
//! the minimum-entry vertex removal procedure with its per-step checks.

mod extraction;
mod lemmas;
mod symmetrize;

pub use extraction::{
    extract_dense_subgraph, extract_with_p_reduction, Conclusions, ExtractionParams, ExtractionStep, ExtractionTrace, Invariants,
    PReduction, Preconditions,
};
pub use lemmas::{assert_lemma_le0, assert_lemma_le1_step, sigma_of, LemmaOutcome, LEMMA_TOL};
pub use symmetrize::{symmetrize, Symmetrization};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}
