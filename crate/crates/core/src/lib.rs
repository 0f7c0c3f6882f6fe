pub mod coeff;
pub mod skew;
pub mod freemod;
pub mod janet;
pub mod structure;
pub mod anderson;
pub mod oracle;
pub mod parse;
pub mod input;
pub mod diagram;
pub mod report;
pub mod cli;
