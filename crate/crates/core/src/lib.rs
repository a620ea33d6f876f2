//! Exact computation with finite skew left braces and the trifactorised
//! groups associated with them.
//!
//! Groups live on the index set `0..order` with `0` as identity. A brace is a
//! pair of group tables on one index set. Trifactorised groups are tuples
//! `(G, K, H, E)` with `K` normal, `G = KE = KH = HE` and
//! `K ∩ E = H ∩ E = 1`; every such tuple carries a brace on `K`, and every
//! brace yields a family of tuples parametrised by normal subgroups of its
//! multiplicative group contained in the kernel of the lambda map.

pub mod brace;
pub mod catalog;
pub mod classify;
pub mod config;
pub mod enumerate;
pub mod group;
pub mod hom;
pub mod io;
pub mod morphism;
pub mod quotients;
pub mod search;
pub mod subgroup;
pub mod substructure;
pub mod trifact;

pub use brace::{BraceError, SkewBrace};
pub use config::Bounds;
pub use group::{Elem, FiniteGroup, GroupError};
pub use hom::GroupMap;
pub use subgroup::SubgroupSet;
