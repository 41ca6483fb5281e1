pub mod accmac;
pub mod acmac;
pub mod channels;
pub mod error;
pub mod format;
pub mod gaussian;
pub mod multiletter;
pub mod prob;
pub mod region;
pub mod search;
pub mod sim;

pub use accmac::{accmac_inner_point, accmac_outer_point};
pub use acmac::{
    inner_point, joint_law_inner, joint_law_outer, outer_point, BoundResult, Cognition, DelayCaps,
    InnerParams, OuterParams,
};
pub use channels::{build_binary_additive, build_mod_channel, ChannelFile, NamedChannel};
pub use error::{Error, Result};
pub use gaussian::{gaussian_inner, gaussian_outer, GaussianCurve, GaussianSpec};
pub use multiletter::{accmac_multiletter_point, q_n_point, r_n_point, NLetterLaw};
pub use prob::{
    binary_entropy, conditional_mutual_information, entropy, mutual_information, ConditionalPmf,
    DelaySet, DiscreteChannel, JointTensor, Labels, Pmf, Var,
};
pub use region::{
    contains, intersect_pentagons, pentagon_vertices, support, union_hull, BoundPentagon, RatePair,
    RegionHull,
};
pub use search::{
    accmac_inner_region, accmac_outer_region, inner_region, outer_region, search_inner,
    search_outer, Evaluated, SearchConfig, SearchOutcome,
};
pub use sim::{run_experiment, Codebooks, DelayPolicy, SimConfig, SimReport};
