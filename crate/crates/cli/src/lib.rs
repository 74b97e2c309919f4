//! Congruence classification pipeline over a file of elliptic curves: sieving, certification,
//! symplectic typing, a Frey-Mazur audit and TSV reports.

pub mod classes;
pub mod config;
pub mod freymazur;
pub mod ingest;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod step4;
