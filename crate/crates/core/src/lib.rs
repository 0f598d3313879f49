pub mod error;
pub mod field;
pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod detvar;
pub mod indices;
pub mod report;
pub mod scenario;
