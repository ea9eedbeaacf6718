//! Coloring families on trees, 2-trees and k-trees with λ-assignments.
//!
//! A family is a list of proper L-colorings in which every color of every
//! list appears at its vertex the same number of times, so the best member
//! satisfies at least the average share of any weighted request.

mod lambda;
mod six;
mod tree_pair;

pub use lambda::{build_sa, family_size, lambda_family, lambda_family_with, LambdaAssignment, DEFAULT_FAMILY_CAP};
pub use six::{extend_phi, is_admissible, seed_phi, two_tree_family, Column};
pub use tree_pair::tree_pair_family;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::list::{check_coloring, satisfied_amount, Coloring, ListAssignment, Request};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringFamily {
    pub members: Vec<Coloring>,
    /// Each color of each list appears exactly this often at its vertex.
    pub multiplicity: usize,
}

impl ColoringFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of members using color `c` at `v`.
    pub fn count(&self, v: usize, c: u32) -> usize {
        self.members.iter().filter(|m| m[v] == c).count()
    }

    /// Checks that every member is a proper L-coloring and that every
    /// `(v, c)` with `c ∈ L(v)` occurs exactly `multiplicity` times.
    pub fn verify(&self, g: &Graph, lists: &ListAssignment) -> Result<()> {
        for m in &self.members {
            check_coloring(g, lists, m)?;
        }
        for v in 0..g.n() {
            for &c in lists.get(v) {
                let k = self.count(v, c);
                if k != self.multiplicity {
                    return Err(Error::internal(format!(
                        "color {c} appears {k} times at vertex {v}, expected {}",
                        self.multiplicity
                    )));
                }
            }
        }
        Ok(())
    }

    /// Share `multiplicity / |F|` guaranteed by averaging.
    pub fn guaranteed_fraction(&self) -> Rational {
        Rational::new(self.multiplicity as i128, self.members.len() as i128)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestMember {
    pub index: usize,
    pub coloring: Coloring,
    pub satisfied: Rational,
    /// `multiplicity / |F| * total`.
    pub guaranteed: Rational,
}

/// The member with the largest satisfied amount (first on ties).
pub fn best_of_family(family: &ColoringFamily, g: &Graph, lists: &ListAssignment, r: &Request) -> Result<BestMember> {
    if family.is_empty() {
        return Err(Error::precondition("empty coloring family"));
    }
    r.validate(lists)?;
    let mut best: Option<(usize, Rational)> = None;
    for (i, m) in family.members.iter().enumerate() {
        let s = satisfied_amount(g, lists, m, r)?;
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    let (index, satisfied) = best.unwrap();
    Ok(BestMember {
        index,
        coloring: family.members[index].clone(),
        satisfied,
        guaranteed: family.guaranteed_fraction() * r.total(),
    })
}
