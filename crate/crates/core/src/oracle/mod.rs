//! Brute-force ground truth on ultimately periodic words.
//!
//! Nothing here calls into the translation pipeline: LTL is evaluated
//! position by position, and automata are checked through their public
//! transition data with a separate SCC routine.

mod automata;
mod corpus;
mod graph;
mod lasso;
mod ltl;

pub use automata::{
    at_most_one_accepting_run, nba_accepts, nba_accepts_naive, nba_unambiguous, tgba_accepts,
    vwaa_accepts,
};
pub use corpus::{enumerate_formulas, random_disjunction_free, random_formula};
pub use lasso::{all_lassos, distinct_lassos, random_lasso, LassoDisplay, LassoWord};
pub use ltl::{ltl_holds, LtlEvaluator};
