//! Constructive flexible list coloring.
//!
//! Given a graph, a list assignment and a (possibly weighted) color request,
//! the solvers in this crate produce proper list colorings that satisfy a
//! certified fraction of the requests:
//!
//! * [`maxdeg`]: graphs of maximum degree Δ ≥ 3 other than K_{Δ+1}, with lists
//!   of size Δ (unweighted and weighted requests).
//! * [`treewidth`]: coloring families on trees, 2-trees and k-trees with
//!   λ-assignments.
//! * [`treedepth`]: the recursive random coloring for bounded treedepth, its
//!   exact request probabilities and a derandomized solver.
//! * [`degeneracy`]: flexible degeneracy orderings built from spanning trees
//!   and hypergraph spanning sets.
//!
//! [`oracle`] holds the exhaustive ground truth used to check every bound on
//! small instances, and [`io`] the instance format and generators.

#![forbid(unsafe_code)]

pub mod degeneracy;
pub mod error;
pub mod graph;
pub mod io;
pub mod list;
pub mod maxdeg;
pub mod oracle;
pub mod treedepth;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use list::{Color, Coloring, ListAssignment, Request};

/// Exact rational used for certified bounds and probabilities.
pub type Rational = num_rational::Ratio<i128>;

/// Formats a rational as `p/q` (or `p` when integral).
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
