//! Controlled-natural-language grammars for type lines and constraint sentences.

pub mod constraint;
pub mod lexer;
pub mod types;

pub use constraint::{
    constraint_description, flag_candidates, lower_constraint, mine_constraint, parse_constraint,
    resolve_name, todo_fragment, CandidateSentence, Compare, Cond, ConstraintAst,
    ConstraintOutcome, ConstraintResult, GrammarForm, ParamContext, ParamInfo, TodoReason,
    TriggerSet, DEFAULT_TRIGGERS,
};
pub use lexer::{tokenize, Token, TokenKind};
pub use types::{
    lower_type, lower_type_expr, parse_short_desc, parse_type_text, Dim, ObjKind, ParseFailure,
    ParsedShortDesc, PrimKind, Shape, TypeExpr,
};
