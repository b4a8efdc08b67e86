//! Code-side substrate: Tanner graphs, binary words, the alist
//! interchange format, and brute-force expansion certification.

mod alist;
mod expansion;
mod graph;
mod word;

pub use alist::{parse_alist, write_alist, AlistError};
pub use expansion::{
    certify_expansion, neighborhood_size, CertificateStatus, ExpansionCertificate,
    ExpansionError, ExpansionParams,
};
pub use graph::{
    build_graph, build_graph_nonuniform, code_dimension, codewords, generate_regular,
    is_codeword, min_distance, syndrome, GraphError, MinDistance, TannerGraph,
};
pub use word::{BitWord, WordError};
