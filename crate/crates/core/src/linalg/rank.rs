use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{IntMatrix, LinalgError};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Bareiss keeps every intermediate entry equal to a minor of the input, so
/// the Hadamard bound on the input bounds all of them. When twice that bound
/// squared fits in an `i128` the elimination runs on machine integers;
/// otherwise it runs on big integers. Both paths are exact.
pub fn rank_exact(m: &IntMatrix) -> usize {
    if fits_i128(m) {
        let rows = m
            .rows_vec()
            .into_iter()
            .map(|r| r.iter().map(|x| x.to_i128().expect("bounded")).collect())
            .collect();
        bareiss_rank(rows)
    } else {
        bareiss_rank(m.rows_vec())
    }
}

/// Product of squared row norms (each at least 1) is below 2^126.
fn fits_i128(m: &IntMatrix) -> bool {
    let limit = BigInt::one() << 126u32;
    let mut product = BigInt::one();
    for i in 0..m.order() {
        let norm: BigInt = m.row(i).iter().map(|x| x * x).sum();
        if norm > BigInt::one() {
            product *= norm;
            if product >= limit {
                return false;
            }
        }
    }
    true
}

fn bareiss_rank<T>(mut rows: Vec<Vec<T>>) -> usize
where
    T: Clone + Integer + Signed,
{
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let p = prow[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let value = p.clone() * row[j].clone() - factor.clone() * prow[j].clone();
                debug_assert!(value.is_multiple_of(&prev));
                row[j] = value / prev.clone();
            }
            row[col] = T::zero();
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// Rank over `GF(p)` for an odd prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    if p == 2 || !is_prime(p) {
        return Err(LinalgError::NotOddPrime(p));
    }
    let modulus = BigInt::from(p);
    let n = m.order();
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&modulus).to_u64().expect("reduced"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for x in &mut rows[rank][col..] {
            *x = mul_mod(*x, inv, p);
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..n {
                row[j] = (row[j] + p - mul_mod(f, prow[j], p)) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
