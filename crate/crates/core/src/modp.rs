//! Dense linear algebra over a prime field `F_p` (p < 2^31).

pub(crate) type Matrix = Vec<Vec<u64>>;

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
pub(crate) fn row_reduce(m: &mut Matrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(mut m: Matrix, p: u64) -> usize {
    row_reduce(&mut m, p).len()
}

/// Basis of `{x : m x = 0}`; `cols` is needed when `m` has no rows.
pub(crate) fn nullspace(mut m: Matrix, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let pivots = row_reduce(&mut m, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Solves `basis · X = target` where `basis` is given as a list of column
/// vectors of full column rank and `target` as column vectors lying in their
/// span. Returns `X` as columns.
pub(crate) fn solve_in_span(basis: &[Vec<u64>], target: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let dim = basis.first().map_or(0, Vec::len);
    let m = basis.len();
    let t = target.len();
    let mut aug: Matrix = (0..dim)
        .map(|i| {
            basis.iter().map(|b| b[i]).chain(target.iter().map(|c| c[i])).collect()
        })
        .collect();
    let pivots = row_reduce(&mut aug, p);
    if pivots.len() != m || pivots.iter().any(|&c| c >= m) {
        return None;
    }
    // Rows beyond the pivots must vanish for a consistent system.
    if aug[m..].iter().any(|row| row[m..].iter().any(|&x| x != 0)) {
        return None;
    }
    Some((0..t).map(|j| (0..m).map(|i| aug[i][m + j]).collect()).collect())
}

#[cfg(test)]
pub(crate) fn mat_vec(m: &Matrix, v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(m.clone(), 3, 7);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&m, &v, 7).iter().all(|&x| x == 0));
        }
        assert_eq!(rank(m, 7), 1);
    }

    #[test]
    fn solve_columns() {
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let target = vec![vec![2, 3, 0]];
        let x = solve_in_span(&basis, &target, 5).unwrap();
        assert_eq!(x, vec![vec![2, 3]]);
        assert!(solve_in_span(&basis, &[vec![1, 0, 0]], 5).is_none());
    }

    #[test]
    fn inverses() {
        for a in 1..13 {
            assert_eq!(a * inv_mod(a, 13) % 13, 1);
        }
    }
}
