//! Instance compilers into independent set reconfiguration, and the
//! bridges between token addition/removal and token jumping sequences.

pub mod bridges;
pub mod drawing;
pub mod isr;
pub mod ncl;
pub mod planar;
pub mod pmr;
pub mod sat;

pub use bridges::{ktj_seq_to_tar_seq, maxmin_threshold_to_k, minmax_threshold_to_k, tar_highval_to_tj};
pub use drawing::{crossings, grid_draw, Crossing, DrawnEdge, Drawing, EdgeRole, Point};
pub use isr::inte3sat_to_isr;

pub use ncl::{decode_config, ncl_to_isr, token_decomposition};
pub use pmr::pmr_to_isr;
pub use planar::{crossover_gadget, planarize, CrossoverRole, Planarized};

pub use sat::{e3sat_to_inte3sat, e3sat_to_inte3sat_unchecked, replace_long_clause};

use crate::oracles::Literal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetTag {
    TrueVertex,
    FalseVertex,
    PositiveVertex,
    NegativeVertex,
    Connector,
    Internal,
    Crossover,
    Pad,
}

/// Where a compiled vertex came from. Indices are 0-based except variable
/// numbers and occurrence numbers, which follow the formula's 1-based ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Variable { var: usize, occurrence: usize },
    Clause { clause: usize, position: usize, literal: Literal },
    NclEdge { edge: usize, position: usize },
    NclVertex { vertex: usize, index: usize },
    Crossing { crossing: usize, role: CrossoverRole },
    Pad { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexTag {
    pub tag: GadgetTag,
    pub origin: Provenance,
}

/// One tag per compiled vertex, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetAnnotation {
    pub tags: Vec<VertexTag>,
}

impl GadgetAnnotation {
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tag(&self, v: usize) -> GadgetTag {
        self.tags[v].tag
    }

    pub fn origin(&self, v: usize) -> Provenance {
        self.tags[v].origin
    }

    pub(crate) fn push(&mut self, tag: GadgetTag, origin: Provenance) -> usize {
        self.tags.push(VertexTag { tag, origin });
        self.tags.len() - 1
    }
}
