#![cfg_attr(not(test), no_std)]
// AST builders such as `Formula::not` and `Term::add` are named after the connective.
#![allow(clippy::should_implement_trait)]
extern crate alloc;

pub mod classes;
pub mod constructions;
pub mod coding;
pub mod eval;
pub mod kernel;
pub mod modalprop;
pub mod syntax;
pub mod translate;
