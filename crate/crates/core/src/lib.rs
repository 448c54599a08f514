pub mod ajspec;
pub mod charvar;
pub mod cli;
pub mod elim;
pub mod knotio;
pub mod mpoly;
pub mod newton;
pub mod su2;
