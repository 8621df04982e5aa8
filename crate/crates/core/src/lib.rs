//! Twist-valued models of set theory over finite Boolean algebras.

pub mod boolalg;
pub mod evaluator;
pub mod folast;
pub mod lab;
pub mod proplogic;
pub mod twist;
pub mod universe;
