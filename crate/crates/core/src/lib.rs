//! Exact tools for Waring decompositions of the form
//! `F = Q + M_1^d + ... + M_t^d`, where `Q` is a binary form supported on a
//! line and the `M_i` are linear forms off that line.

pub mod exactlin;
pub mod binary;
pub mod catalecticant;
pub mod cli;
pub mod decomposer;
pub mod forms;
pub mod schemes;
