//! LTL syntax: hash-consed formulas, parsing, positive normal form,
//! simplification and the syntactic fragments used by the heuristic.

mod formula;
mod fragments;
mod normal;
mod parse;
mod simplify;

pub use formula::{Atom, Formula, Kind};
pub use fragments::{
    classify, decompose_disjunction_free, goal, is_disjunction_free, is_purely_eventual,
    is_purely_universal, FormulaClass, FragmentError,
};
pub use normal::{negate_pnf, to_pnf};
pub use parse::{parse_formula, parse_prefix, ParseError};
pub use simplify::simplify;
