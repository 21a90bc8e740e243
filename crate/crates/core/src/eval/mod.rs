//! F1 metrics, report breakdowns, ablations, document-frequency deciles,
//! corpus descriptives and per-feature significance tests.

mod ablation;
mod decile;
mod descriptives;
mod metrics;
mod report;
mod significance;

pub use ablation::{ablation, AblationEntry};
pub use decile::{
    decile_curve, echo_prob_by_df_decile, pc_from_op_decile, write_decile_csv, DecileBin, DecileCurve,
};
pub use descriptives::{corpus_descriptives, pearson, Descriptives, DocCounts, EchoFractions, LengthCorrelations};
pub use metrics::{confusion, f1, Confusion};
pub use report::{evaluate, evaluate_predictions, modal_pos, Source, EvalReport, PosScore, SubsetScore};
pub use significance::{
    arrows, significance_tests, welch_t_test, write_significance_csv, Population, SignificanceRow,
    SignificanceTable, BONFERRONI_TESTS,
};
