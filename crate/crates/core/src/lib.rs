pub mod cli;
pub mod coverings;
pub mod curves;
pub mod foldseq;
pub mod lattice;
pub mod lip;
