//! Inputs shared by the benchmarks.

use docmine_core::SourceFile;

pub const LOGISTIC_SOURCE: &str =
    include_str!("../../../fixtures/sklearn/linear_model/logistic.py");
pub const MLP_SOURCE: &str =
    include_str!("../../../fixtures/sklearn/neural_network/multilayer_perceptron.py");

pub const SHORT_DESCS: &[&str] = &[
    "str, {'linear', 'sag', 'lbfgs'}, optional (default='linear').",
    "int, float, string or None, optional (default=None)",
    "{array-like, sparse matrix}, shape [n_samples, n_features]",
    "int, RandomState instance or None, optional (default=None)",
    "'auto' or a list of lists/arrays of values, default='auto'.",
];

/// A module with `classes` copies of a wide estimator class, each with
/// `params` documented arguments.
pub fn synthetic_module(classes: usize, params: usize) -> SourceFile {
    let mut s = String::new();
    for c in 0..classes {
        s.push_str(&format!("class Estimator{c}:\n    \"\"\"Synthetic estimator.\n\n    Parameters\n    ----------\n"));
        for p in 0..params {
            s.push_str(&format!(
                "    p{p} : {{'a', 'b', 'c'}} or int, optional (default='a')\n        Argument {p}.\n        Only used when p0='b'.\n"
            ));
        }
        s.push_str("    \"\"\"\n\n    def __init__(self");
        for p in 0..params {
            s.push_str(&format!(", p{p}='a'"));
        }
        s.push_str("):\n        pass\n\n");
    }
    SourceFile::new("synthetic.py", s)
}
