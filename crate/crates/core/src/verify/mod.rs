//! Bound formulas, the built-in corpus and the verification harness.

mod bounds;
mod corpus;
mod example;
pub mod properties;
mod report;

use num_bigint::BigInt;
use serde::Serializer;

pub use bounds::{
    binomial, binomial_divisibility_check, bound_formulas, bound_improvement_check, divides,
    floor_log, BinomialViolation, BoundSet,
};
pub use corpus::{
    builtin_corpus, counterexample_recipe, run_corpus, sylow_check, sylow_corpus, BuiltGroup,
    CorpusEntry, CorpusReport, EntryFailure, Recipe, Summary, SylowCheck, REPORT_VERSION,
};
pub use example::{counterexample_2048, Counterexample};
pub use report::{analyze_pair, Flags, MultiplierField, PairReport, Verdict, Verdicts};

/// Serializes a big integer as a decimal string.
pub fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
