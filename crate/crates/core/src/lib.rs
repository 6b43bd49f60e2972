pub mod exactgeom;
pub mod metricgraph;
pub mod realization;
pub mod report;
pub mod sampling;
pub mod simplicial;
pub mod threshold;
