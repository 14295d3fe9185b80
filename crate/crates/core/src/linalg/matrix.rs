use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::Graph;

/// Dense square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(order: usize) -> Self {
        IntMatrix {
            order,
            entries: vec![BigInt::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = IntMatrix::zero(order);
        for i in 0..order {
            m.entries[i * order + i] = BigInt::from(1);
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            assert_eq!(row.len(), order, "matrix must be square");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { order, entries }
    }

    pub fn adjacency(g: &Graph) -> Self {
        IntMatrix::shifted_adjacency(g, 0)
    }

    /// `A(G) - mu I`.
    pub fn shifted_adjacency(g: &Graph, mu: i64) -> Self {
        let n = g.n();
        let mut m = IntMatrix::zero(n);
        for u in 0..n {
            for v in 0..n {
                if g.has_edge(u, v) {
                    m.entries[u * n + v] = BigInt::from(1);
                }
            }
            m.entries[u * n + u] = BigInt::from(-mu);
        }
        m
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add_scalar_identity(&mut self, c: &BigInt) {
        for i in 0..self.order {
            self.entries[i * self.order + i] += c;
        }
    }

    pub(crate) fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_shapes() {
        let k2 = IntMatrix::adjacency(&Graph::complete(2).unwrap());
        assert_eq!(k2, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        let k1 = IntMatrix::adjacency(&Graph::empty(1).unwrap());
        assert_eq!(k1, IntMatrix::from_rows(&[vec![0]]));
        let p3 = IntMatrix::adjacency(&Graph::path(3).unwrap());
        assert_eq!(
            p3,
            IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]])
        );
        assert!(p3.is_symmetric());
        let shifted = IntMatrix::shifted_adjacency(&Graph::path(3).unwrap(), 2);
        assert_eq!(shifted.get(1, 1), &BigInt::from(-2));
        assert_eq!(shifted.trace(), BigInt::from(-6));
    }

    #[test]
    fn products() {
        let p3 = IntMatrix::adjacency(&Graph::path(3).unwrap());
        let sq = p3.mul(&p3);
        assert_eq!(
            sq,
            IntMatrix::from_rows(&[vec![1, 0, 1], vec![0, 2, 0], vec![1, 0, 1]])
        );
        assert_eq!(IntMatrix::identity(3).mul(&p3), p3);
    }
}
