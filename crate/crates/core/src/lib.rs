pub mod cli;
pub mod error;
pub mod field;
pub mod fsing;
pub mod gcd;
pub mod groebner;
pub mod invariants;
pub mod parse;
pub mod perfection;
pub mod poly;
pub mod ring;
pub mod sample;
