pub mod branchcut;
pub mod cad;
pub mod expr;
pub mod numeval;
pub mod realalg;
pub mod verifier;
