//! Biclique covers of bipartite graphs, rectifier networks realizing them,
//! weighted set cover, and the automata constructions that connect them.

pub mod automata;
pub mod biclique;
pub mod error;
pub mod families;
pub mod graph;
pub mod measures;
pub mod rational;
pub mod rectifier;
pub mod report;
pub mod samples;
pub mod setcover;

pub use biclique::{enumerate_bicliques, validate_cover, Biclique, BicliqueCover};
pub use error::{Error, Result};
pub use graph::BipartiteGraph;
pub use rational::Rational;
pub use rectifier::{realizes, RectifierNetwork};
pub use setcover::{CoverSolution, SetCoverInstance};
