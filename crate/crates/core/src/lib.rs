pub mod configuration;
pub mod counting;
pub mod decompose;
pub mod error;
pub mod generation;
pub mod genseq;
pub mod ipm;
pub mod oracle;
pub mod random;
pub mod staircase;
