pub mod cli;
pub mod freq;
pub mod legacy;
pub mod morph;
pub mod script;
pub mod segment;
pub mod store;
