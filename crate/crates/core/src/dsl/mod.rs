//! Session language: lexer, parser, runner and JSON forms.

pub mod ast;
pub mod json;
pub mod lexer;
pub mod parser;
pub mod runner;

pub use ast::{print_session, Directive, DirectiveKind, Session};
pub use lexer::Span;
pub use parser::{parse_session, ParseError, ParseErrorKind};
pub use runner::{run_session, RunOptions, Runner, Status, Transcript, Value};
