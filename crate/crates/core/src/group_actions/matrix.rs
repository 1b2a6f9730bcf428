use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{GradedSeries, Scalar, SeriesError, SeriesRing, Variable};

/// The confluent Vandermonde matrix A(n_1, ..., n_r; m): block i has n_i
/// rows u with entries a_{u,v} = binom(v-1, ū) t_i^(v-1-ū), ū = 0..n_i-1.
#[derive(Debug, Clone)]
pub struct ConfluentMatrix {
    blocks: Vec<usize>,
    width: usize,
    ring: Arc<SeriesRing>,
    rows: Vec<Vec<GradedSeries>>,
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Polynomial ring Q[t1..tr] with generous degree bound.
pub fn poly_ring(r: usize, max_deg: i32) -> Result<Arc<SeriesRing>> {
    let vars = (1..=r).map(|i| Variable::power(format!("t{i}"), 1)).collect();
    Ok(SeriesRing::from_vars(vars, max_deg, 0)?)
}

impl ConfluentMatrix {
    pub fn build(blocks: &[usize], width: usize) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) || width == 0 {
            return Err(Error::InvalidArgument("block sizes and width must be >= 1".into()));
        }
        let n: usize = blocks.iter().sum();
        // Entries and minors are homogeneous, so exact division terminates
        // by degree; the bound is never reached.
        let ring = poly_ring(blocks.len(), 4096)?;
        let mut rows = Vec::with_capacity(n);
        for (i, &ni) in blocks.iter().enumerate() {
            for ubar in 0..ni {
                let mut row = Vec::with_capacity(width);
                for v in 1..=width {
                    let e = v as i64 - 1 - ubar as i64;
                    let entry = if e < 0 {
                        GradedSeries::zero(&ring)
                    } else {
                        let c = Scalar::from_bigint(binom(v as u64 - 1, ubar as u64));
                        let mut exps = vec![0; blocks.len()];
                        exps[i] = e as i32;
                        GradedSeries::monomial(&ring, exps, c)?
                    };
                    row.push(entry);
                }
                rows.push(row);
            }
        }
        Ok(ConfluentMatrix { blocks: blocks.to_vec(), width, ring, rows })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn entry(&self, u: usize, v: usize) -> &GradedSeries {
        &self.rows[u][v]
    }

    /// ∏_{i>j} (t_i - t_j)^(n_i n_j).
    pub fn predicted_product(&self) -> Result<GradedSeries> {
        let mut out = GradedSeries::one(&self.ring);
        for i in 0..self.blocks.len() {
            for j in 0..i {
                let ti = GradedSeries::var(&self.ring, &format!("t{}", i + 1))?;
                let tj = GradedSeries::var(&self.ring, &format!("t{}", j + 1))?;
                out = out.mul(&ti.sub(&tj)?.pow((self.blocks[i] * self.blocks[j]) as u32)?)?;
            }
        }
        Ok(out)
    }

    /// Determinant of the square submatrix on the given columns.
    pub fn minor(&self, cols: &[usize]) -> Result<GradedSeries> {
        if cols.len() != self.nrows() {
            return Err(Error::InvalidArgument("minor must be square".into()));
        }
        let m: Vec<Vec<GradedSeries>> =
            self.rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        bareiss_determinant(m, &self.ring)
    }

    pub fn determinant(&self) -> Result<GradedSeries> {
        let cols: Vec<usize> = (0..self.width).collect();
        self.minor(&cols)
    }
}

/// Fraction-free Gaussian elimination with row pivoting; every division
/// is exact.
pub fn bareiss_determinant(
    mut m: Vec<Vec<GradedSeries>>,
    ring: &Arc<SeriesRing>,
) -> Result<GradedSeries> {
    let n = m.len();
    if n == 0 {
        return Ok(GradedSeries::one(ring));
    }
    let mut sign = 1i64;
    let mut prev = GradedSeries::one(ring);
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero());
        let Some(pr) = pivot else {
            return Ok(GradedSeries::zero(ring));
        };
        if pr != k {
            m.swap(pr, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.exact_divide(&prev)?;
            }
            m[i][k] = GradedSeries::zero(ring);
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].scale_int(sign))
}

/// All compositions of n into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MinorReport {
    pub blocks: Vec<usize>,
    pub determinant_ok: bool,
    pub minors_checked: usize,
    pub minors_divisible: bool,
    pub witness: Option<String>,
}

/// Checks det A(n; N) = ∏ (t_i - t_j)^(n_i n_j) and, if requested, that
/// every N x N minor of A(n; m), N <= m <= N + 2, is divisible by it.
pub fn check_minor_determinant(blocks: &[usize], exhaustive_minors: bool) -> Result<MinorReport> {
    let n: usize = blocks.iter().sum();
    let widths: Vec<usize> = if exhaustive_minors { (n..=n + 2).collect() } else { Vec::new() };
    check_minors(blocks, &widths)
}

/// det A(n; N) against the product, then every N x N minor of A(n; m) for
/// each m in `widths`, stopping at the first non-divisible one.
pub fn check_minors(blocks: &[usize], widths: &[usize]) -> Result<MinorReport> {
    let n: usize = blocks.iter().sum();
    let square = ConfluentMatrix::build(blocks, n)?;
    let product = square.predicted_product()?;
    let det = square.determinant()?;
    let determinant_ok = det == product;
    let mut witness = (!determinant_ok).then(|| format!("det = {det}, expected {product}"));
    let mut minors_checked = 0;
    let mut minors_divisible = true;
    'outer: for &m in widths {
        if m < n {
            return Err(Error::InvalidArgument(format!("width {m} is below N = {n}")));
        }
        let a = ConfluentMatrix::build(blocks, m)?;
        for cols in subsets(m, n) {
            let minor = a.minor(&cols)?;
            minors_checked += 1;
            match minor.exact_divide(&product) {
                Ok(q) if q.mul(&product)? == minor => {}
                Ok(_) | Err(SeriesError::NotDivisible { .. }) => {
                    minors_divisible = false;
                    witness.get_or_insert_with(|| format!("minor {cols:?} of width {m}: {minor}"));
                    break 'outer;
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(MinorReport { blocks: blocks.to_vec(), determinant_ok, minors_checked, minors_divisible, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        let a = ConfluentMatrix::build(&[1, 1], 2).unwrap();
        assert_eq!(a.entry(0, 1).to_string(), "t1");
        assert_eq!(a.entry(1, 1).to_string(), "t2");
        assert_eq!(a.determinant().unwrap().to_string(), "-t1 + t2");

        let b = ConfluentMatrix::build(&[2], 2).unwrap();
        assert_eq!(b.entry(0, 0).to_string(), "1");
        assert_eq!(b.entry(0, 1).to_string(), "t1");
        assert!(b.entry(1, 0).is_zero());
        assert_eq!(b.entry(1, 1).to_string(), "1");
        assert_eq!(b.determinant().unwrap().to_string(), "1");

        assert_eq!(ConfluentMatrix::build(&[1], 1).unwrap().determinant().unwrap().to_string(), "1");
    }

    #[test]
    fn det_2_1() {
        let a = ConfluentMatrix::build(&[2, 1], 3).unwrap();
        assert_eq!(a.determinant().unwrap(), a.predicted_product().unwrap());
    }

    #[test]
    fn compositions_count() {
        for n in 1..=6 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(subsets(5, 3).len(), 10);
    }

    #[test]
    fn minors_report() {
        let r = check_minor_determinant(&[2, 1], true).unwrap();
        assert!(r.determinant_ok && r.minors_divisible);
        assert_eq!(r.minors_checked, 1 + 4 + 10);
    }
}
