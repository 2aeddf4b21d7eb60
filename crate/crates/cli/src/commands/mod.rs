pub mod delta;
pub mod prufer;
pub mod six_term;
pub mod tower;
