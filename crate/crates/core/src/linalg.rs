//! Exact rational linear algebra: small dense helpers and an incremental
//! sparse echelon basis used for every rank computation in the crate.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{fmt_q, Q};

/// Reduced row echelon form in place. Returns pivot columns.
pub fn rref(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}`, one vector per free column, with a 1 in that
/// column and 0 in every other free column.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    nullspace_with_free(rows, ncols).into_iter().map(|(_, v)| v).collect()
}

/// Like [`nullspace`], pairing each vector with its free column.
pub fn nullspace_with_free(rows: &[Vec<Q>], ncols: usize) -> Vec<(usize, Vec<Q>)> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in a.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            (f, v)
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Q::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Sparse vector over an ordered key set.
pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Q, x: &[(K, Q)]) {
    for (k, c) in x {
        let prod = a * c;
        match y.get_mut(k) {
            Some(v) => {
                *v += prod;
                if v.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(k.clone(), prod);
            }
        }
    }
}

pub fn add_into<K: Ord + Clone>(y: &mut SparseVec<K>, k: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match y.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                y.remove(&k);
            }
        }
        None => {
            y.insert(k, c);
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    entries: Vec<(K, Q)>,
    tag: Vec<(usize, Q)>,
}

/// Incrementally built echelon basis of a subspace of a sparse coordinate
/// space. The pivot of a row is its smallest key, normalized to 1; rows are
/// only semi-reduced, which is all rank and membership need.
///
/// Each inserted vector may carry a tag (a sparse combination of "source"
/// indices); when an insertion reduces to zero the reduced tag is a kernel
/// relation among the sources.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    pivots: BTreeMap<K, Row<K>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self { pivots: BTreeMap::new() }
    }
}

pub enum Insert<K> {
    /// The vector was independent; its reduced form now has this pivot.
    New(K),
    /// The vector reduced to zero; the reduced tag is returned.
    Dependent(SparseVec<usize>),
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    fn reduce_full(&self, v: &mut SparseVec<K>, tag: &mut SparseVec<usize>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.pivots.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
            };
            let Some(k) = next else { break };
            let row = &self.pivots[&k];
            let f = -v[&k].clone();
            axpy(v, &f, &row.entries);
            if !row.tag.is_empty() {
                axpy(tag, &f, &row.tag);
            }
            cursor = Some(k);
        }
    }

    /// Reduces `v` against the basis, returning the remainder.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut tag = SparseVec::new();
        self.reduce_full(&mut v, &mut tag);
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        matches!(self.insert_tagged(v, SparseVec::new()), Insert::New(_))
    }

    pub fn insert_tagged(&mut self, mut v: SparseVec<K>, mut tag: SparseVec<usize>) -> Insert<K> {
        self.reduce_full(&mut v, &mut tag);
        let Some((k, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Insert::Dependent(tag);
        };
        let inv = Q::one() / lead;
        let entries = v.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let tag = tag.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.pivots.insert(k.clone(), Row { entries, tag });
        Insert::New(k)
    }
}

/// Kernel of a linear map given by the images of source basis vectors.
/// Returns the kernel as sparse combinations of source indices, in the
/// deterministic order in which dependencies are discovered.
pub fn kernel_of_images<K: Ord + Clone>(images: impl IntoIterator<Item = SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut basis = EchelonBasis::new();
    let mut kernel = Vec::new();
    for (i, img) in images.into_iter().enumerate() {
        let mut tag = SparseVec::new();
        tag.insert(i, Q::one());
        if let Insert::Dependent(rel) = basis.insert_tagged(img, tag) {
            kernel.push(rel);
        }
    }
    kernel
}

/// Exact sparse rational matrix with a deterministic row-echelon reduction
/// under the natural column order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SparseMatQ {
    pub ncols: usize,
    #[serde(serialize_with = "ser_rows")]
    pub rows: Vec<SparseVec<usize>>,
}

fn ser_rows<S: serde::Serializer>(rows: &[SparseVec<usize>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(|(k, v)| (*k, fmt_q(v))).collect::<Vec<_>>()))
}

impl SparseMatQ {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: SparseVec<usize>) {
        debug_assert!(row.keys().all(|&k| k < self.ncols));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        let mut b = EchelonBasis::new();
        for r in &self.rows {
            b.insert(r.clone());
        }
        b.rank()
    }

    /// Canonical fully reduced row-echelon form (rows sorted by pivot).
    pub fn row_echelon(&self) -> SparseMatQ {
        let mut b = EchelonBasis::new();
        for r in &self.rows {
            b.insert(r.clone());
        }
        let keys: Vec<usize> = b.pivot_keys().copied().collect();
        // back-substitute so every pivot column is zero outside its row
        let mut rows: Vec<SparseVec<usize>> = keys
            .iter()
            .map(|k| b.pivots[k].entries.iter().cloned().collect())
            .collect();
        for i in (0..rows.len()).rev() {
            let pivot_row: Vec<(usize, Q)> = rows[i].iter().map(|(k, v)| (*k, v.clone())).collect();
            let pk = keys[i];
            for row in rows.iter_mut().take(i) {
                if let Some(f) = row.get(&pk).cloned() {
                    axpy(row, &-f, &pivot_row);
                }
            }
        }
        SparseMatQ { ncols: self.ncols, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use proptest::prelude::*;

    fn dense_rank(rows: &[Vec<Q>], ncols: usize) -> usize {
        let mut a = rows.to_vec();
        rref(&mut a, ncols).len()
    }

    fn to_sparse(row: &[Q]) -> SparseVec<usize> {
        row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
    }

    #[test]
    fn nullspace_of_trace_condition() {
        // a + d = 0 on 2x2 matrices
        let rows = vec![vec![q(1), q(0), q(0), q(1)]];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            assert_eq!(&v[0] + &v[3], q(0));
        }
    }

    #[test]
    fn invert_roundtrip() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert!(invert(&[vec![q(1), q(2)], vec![qr(1, 2), q(1)]]).is_none());
    }

    #[test]
    fn kernel_detects_relation() {
        let imgs = vec![to_sparse(&[q(1), q(2)]), to_sparse(&[q(0), q(1)]), to_sparse(&[q(2), q(3)])];
        let ker = kernel_of_images(imgs);
        assert_eq!(ker.len(), 1);
        // 2 v0 - v1 - v2 = 0
        let k = &ker[0];
        let c: Vec<Q> = (0..3).map(|i| k.get(&i).cloned().unwrap_or_default()).collect();
        assert_eq!(&c[0] * q(1) + &c[1] * q(0) + &c[2] * q(2), q(0));
        assert_eq!(&c[0] * q(2) + &c[1] * q(1) + &c[2] * q(3), q(0));
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(entries in proptest::collection::vec(-3i64..=3, 20)) {
            let rows: Vec<Vec<Q>> = entries.chunks(5).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
            let mut m = SparseMatQ::new(5);
            for r in &rows {
                m.push_row(to_sparse(r));
            }
            prop_assert_eq!(m.rank(), dense_rank(&rows, 5));
            let e = m.row_echelon();
            prop_assert_eq!(e.rank(), e.nrows());
            // pivot columns are clean
            for (i, r) in e.rows.iter().enumerate() {
                let pk = *r.keys().next().unwrap();
                for (j, s) in e.rows.iter().enumerate() {
                    if i != j {
                        prop_assert!(!s.contains_key(&pk));
                    }
                }
            }
        }
    }
}
