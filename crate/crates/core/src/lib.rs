//! Statevector simulation and amplitude-amplification search drivers:
//! standard Grover search, GRK partial search, depth-first layered search
//! (DFGS) and bi-directional layered search (BDGS), with a benchmark
//! harness reproducing the accuracy/iteration comparison between them.

pub mod grover;
pub mod harness;
pub mod qsim;
pub mod search;
pub mod seed;
