//! Exchange graphs, maximal green sequences, τ-tilting reduction, transport
//! of green sequences and the verification suites.

mod graph;
mod reduction;
mod transport;
mod verify;

pub use graph::{build_exchange_graph, maximal_green_sequences, Edge, EdgeReport, ExchangeGraph, GraphReport, NodeReport};
pub use reduction::{
    match_torsion_class, reduce_generator, reduction_bijection_check, reduction_bijection_with, reduction_functor,
    reduction_functor_map, tau_reduction, ReductionData, ReductionReport,
};
pub use transport::{
    connect_fixed_summand, is_left_step, left_bongartz_by_search, transport_mgs, verify_mutation_compat, CompatCase,
    CompatReport, Step, Transport,
};
pub use verify::{rigid_pairs, run_suite, run_suite_on, test_algebras, Counterexample, Suite, SuiteReport, VerifyOptions};

#[cfg(test)]
mod tests;
