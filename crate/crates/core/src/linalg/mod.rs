//! Exact linear algebra on adjacency matrices.
//!
//! Every quantity here is an integer computed without rounding: rank by
//! fraction-free elimination, characteristic polynomials by Faddeev-LeVerrier
//! over big integers, and eigenvalue counts from polynomial gcds. Only integer
//! eigenvalues `mu` are supported for multiplicities; those are the only ones
//! whose multiplicity is a matrix rank over the integers.

mod matrix;
mod poly;
mod rank;

use thiserror::Error;

use crate::graph::Graph;

pub use matrix::IntMatrix;
pub use poly::{char_poly, IntPolynomial};
pub use rank::{rank_exact, rank_mod_p};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("order {order} out of range: {reason}")]
    OrderOutOfRange { order: usize, reason: &'static str },
}

pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    IntMatrix::adjacency(g)
}

/// `eta(G) = n - rank(A(G))`, the multiplicity of eigenvalue zero.
pub fn nullity(g: &Graph) -> usize {
    g.n() - rank_exact(&IntMatrix::adjacency(g))
}

/// Rank of the adjacency matrix.
pub fn graph_rank(g: &Graph) -> usize {
    rank_exact(&IntMatrix::adjacency(g))
}

/// `m_G(mu) = n - rank(A(G) - mu I)` for integer `mu`.
pub fn integer_eigenvalue_multiplicity(g: &Graph, mu: i64) -> usize {
    g.n() - rank_exact(&IntMatrix::shifted_adjacency(g, mu))
}

/// Number of distinct adjacency eigenvalues: the degree of the square-free
/// part of the characteristic polynomial. All roots are real because the
/// matrix is symmetric, so this counts the spectrum exactly.
pub fn distinct_eigenvalue_count(g: &Graph) -> usize {
    let p = char_poly(&IntMatrix::adjacency(g));
    p.square_free_degree()
}

/// Nullity of the path on `m` vertices: 1 for odd `m`, else 0.
pub fn path_nullity(m: usize) -> Result<usize, LinalgError> {
    if m == 0 {
        return Err(LinalgError::OrderOutOfRange {
            order: m,
            reason: "paths need at least one vertex",
        });
    }
    Ok(m % 2)
}

/// Nullity of the cycle on `m` vertices: 2 when `4 | m`, else 0.
pub fn cycle_nullity(m: usize) -> Result<usize, LinalgError> {
    if m < 3 {
        return Err(LinalgError::OrderOutOfRange {
            order: m,
            reason: "cycles need at least three vertices",
        });
    }
    Ok(if m.is_multiple_of(4) { 2 } else { 0 })
}
