//! A laboratory for finite partition calculus: pair colorings over ordinal
//! domains, well-connected sets and their tree orders, walks on ordinals and
//! deciders for the classical, highly connected and well-connected arrows.

pub mod arrows;
pub mod certificate;
pub mod cli;
pub mod colorings;
pub mod graphs;
pub mod ordinal;
pub mod walks;
pub mod wellconn;
