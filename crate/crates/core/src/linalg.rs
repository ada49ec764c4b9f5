//! Small dense linear algebra over `F_p`: rank, membership in a row space,
//! and solving for a column as a combination of chosen columns. Everything is
//! plain Gaussian elimination on copied matrices; the instances here are a
//! handful of rows wide.

/// Multiplicative inverse mod an odd prime, by Fermat.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn eliminate(rows: &mut [Vec<u64>], p: u64) -> usize {
    let mut pivot_row = 0;
    let width = rows.first().map_or(0, |r| r.len());
    for col in 0..width {
        let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = mod_inv(rows[pivot_row][col], p);
        for e in rows[pivot_row].iter_mut().skip(col) {
            *e = *e * inv % p;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let factor = row[col];
                for (e, &pe) in row.iter_mut().zip(&pivot).skip(col) {
                    let sub = factor * pe % p;
                    *e = (*e + p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

/// Rank of a matrix given as rows of residues mod `p`.
pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    eliminate(&mut work, p)
}

/// Whether `v` lies in the row space of `rows`.
pub fn in_row_space(rows: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let base = rank(rows, p);
    let mut extended: Vec<Vec<u64>> = rows.to_vec();
    extended.push(v.to_vec());
    rank(&extended, p) == base
}

/// Solve `sum_j x_j cols[j] = target` over `F_p`; `None` when inconsistent.
/// Free variables are set to zero, so the solution is deterministic.
pub fn solve_from_columns(cols: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let height = target.len();
    debug_assert!(cols.iter().all(|c| c.len() == height));
    let width = cols.len();
    // augmented system rows: [cols | target]
    let mut aug: Vec<Vec<u64>> = (0..height)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    eliminate(&mut aug, p);
    // consistency: no row 0 = nonzero
    for row in &aug {
        if row[..width].iter().all(|&c| c == 0) && row[width] != 0 {
            return None;
        }
    }
    let mut x = vec![0u64; width];
    for row in &aug {
        if let Some(lead) = row[..width].iter().position(|&c| c != 0) {
            // reduced form: pivot is 1 and the only nonzero among pivots;
            // subtract contributions of later (free, zero-valued) variables
            let mut val = row[width];
            for j in lead + 1..width {
                if row[j] != 0 && x[j] != 0 {
                    val = (val + p - row[j] * x[j] % p) % p;
                }
            }
            x[lead] = val;
        }
    }
    Some(x)
}
