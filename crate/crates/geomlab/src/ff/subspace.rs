//! Linear subspaces and affine flats of `F_q^n` in canonical form.
//!
//! A subspace is stored as its reduced row-echelon basis, which is the
//! unique canonical representative, so structural equality is subspace
//! equality. A flat additionally carries the lexicographically smallest
//! point of its coset; that point is exactly the coset member with zeros in
//! all pivot coordinates of the subspace, so it is computed by row
//! reduction rather than search.

use std::collections::BTreeSet;

use super::field::FieldSpec;
use super::vector::FpVec;
use super::FfError;

/// A `k`-dimensional linear subspace of `F_q^n`, basis in reduced
/// row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpSubspace {
    field: FieldSpec,
    n: usize,
    rows: Vec<Vec<u64>>,
}

/// An affine `k`-flat: a subspace translated to pass through `translate`,
/// the lexicographically smallest point of the coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpFlat {
    subspace: FpSubspace,
    translate: FpVec,
}

/// Row-reduce `rows` in place over `field`, returning the reduced nonzero
/// rows in echelon order.
fn rref(field: FieldSpec, n: usize, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot_row) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = field.inv(rows[rank][col]);
        for entry in rows[rank].iter_mut() {
            *entry = field.mul(*entry, inv);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in 0..n {
                    let delta = field.mul(factor, rows[rank][j]);
                    rows[i][j] = field.sub(rows[i][j], delta);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

impl FpSubspace {
    /// The span of the given vectors, in canonical form.
    pub fn from_vectors(field: FieldSpec, n: usize, vectors: &[FpVec]) -> Result<FpSubspace, FfError> {
        if n == 0 {
            return Err(FfError::ZeroDimension);
        }
        if vectors.iter().any(|v| v.field() != field || v.n() != n) {
            return Err(FfError::MixedDomains);
        }
        let rows = vectors.iter().map(|v| v.coords().to_vec()).collect();
        Ok(FpSubspace { field, n, rows: rref(field, n, rows) })
    }

    /// The span of a single vector.
    pub fn span(v: &FpVec) -> FpSubspace {
        FpSubspace::from_vectors(v.field(), v.n(), std::slice::from_ref(v))
            .expect("a vector spans a valid subspace")
    }

    pub fn zero(field: FieldSpec, n: usize) -> FpSubspace {
        FpSubspace { field, n, rows: Vec::new() }
    }

    pub fn full(field: FieldSpec, n: usize) -> FpSubspace {
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![0; n];
                row[i] = 1;
                row
            })
            .collect();
        FpSubspace { field, n, rows }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows as vectors, echelon order.
    pub fn basis(&self) -> Vec<FpVec> {
        self.rows
            .iter()
            .map(|row| FpVec::new(self.field, row.clone()).expect("basis rows are canonical"))
            .collect()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|row| row.iter().position(|&c| c != 0).expect("basis rows are nonzero"))
            .collect()
    }

    /// Subtract the unique combination of basis rows matching `v` at the
    /// pivot columns. The result has zeros at every pivot column; it is the
    /// canonical label (and lexicographically smallest member) of the coset
    /// `v + self`.
    pub fn reduce(&self, v: &FpVec) -> Result<FpVec, FfError> {
        if v.field() != self.field || v.n() != self.n {
            return Err(FfError::MixedDomains);
        }
        let mut coords = v.coords().to_vec();
        for (row, &pivot) in self.rows.iter().zip(&self.pivots()) {
            let factor = coords[pivot];
            if factor != 0 {
                for j in 0..self.n {
                    let delta = self.field.mul(factor, row[j]);
                    coords[j] = self.field.sub(coords[j], delta);
                }
            }
        }
        Ok(FpVec::new(self.field, coords).expect("reduction preserves canonical residues"))
    }

    pub fn contains(&self, v: &FpVec) -> Result<bool, FfError> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn contains_subspace(&self, other: &FpSubspace) -> Result<bool, FfError> {
        if other.field != self.field || other.n != self.n {
            return Err(FfError::MixedDomains);
        }
        for row in other.basis() {
            if !self.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `q^k` points of the subspace, sorted.
    pub fn points(&self, cap: u64) -> Result<Vec<FpVec>, FfError> {
        let q = self.field.q();
        let needed = (q as u128).pow(self.k() as u32);
        if needed > cap as u128 {
            return Err(FfError::SizeLimit { needed, cap });
        }
        let basis = self.basis();
        let mut points = Vec::with_capacity(needed as usize);
        for idx in 0..needed as u64 {
            let mut point = FpVec::zero(self.field, self.n);
            let mut rest = idx;
            for row in basis.iter().rev() {
                let coeff = rest % q;
                rest /= q;
                point = point.add(&row.scale(coeff))?;
            }
            points.push(point);
        }
        points.sort();
        points.dedup();
        Ok(points)
    }

    /// The subspace `{x : x·v = 0 for all v in self}`.
    pub fn orthogonal_complement(&self) -> FpSubspace {
        let pivots = self.pivots();
        let mut rows = Vec::with_capacity(self.n - self.k());
        for j in 0..self.n {
            if pivots.contains(&j) {
                continue;
            }
            // Kernel vector with a 1 in free column j and the balancing
            // entries at the pivot columns.
            let mut row = vec![0; self.n];
            row[j] = 1;
            for (basis_row, &pivot) in self.rows.iter().zip(&pivots) {
                row[pivot] = self.field.neg(basis_row[j]);
            }
            rows.push(row);
        }
        FpSubspace { field: self.field, n: self.n, rows: rref(self.field, self.n, rows) }
    }
}

impl FpFlat {
    /// The coset of `subspace` through `point`, canonicalized.
    pub fn new(subspace: FpSubspace, point: &FpVec) -> Result<FpFlat, FfError> {
        let translate = subspace.reduce(point)?;
        Ok(FpFlat { subspace, translate })
    }

    pub fn subspace(&self) -> &FpSubspace {
        &self.subspace
    }

    pub fn translate(&self) -> &FpVec {
        &self.translate
    }

    pub fn k(&self) -> usize {
        self.subspace.k()
    }

    pub fn contains(&self, v: &FpVec) -> Result<bool, FfError> {
        let diff = v.sub(&self.translate)?;
        self.subspace.contains(&diff)
    }

    /// All points of the flat, sorted.
    pub fn points(&self, cap: u64) -> Result<Vec<FpVec>, FfError> {
        let mut points = Vec::new();
        for p in self.subspace.points(cap)? {
            points.push(p.add(&self.translate)?);
        }
        points.sort();
        Ok(points)
    }
}

/// Exhaustion guard shared by subspace and flat enumeration: the work
/// estimate `q^(k(n-k)+n)` must stay within `cap`.
fn enumeration_guard(field: FieldSpec, n: usize, k: usize, cap: u64) -> Result<(), FfError> {
    let exponent = (k * (n - k) + n) as u32;
    let needed = (field.q() as u128).pow(exponent);
    if needed > cap as u128 {
        return Err(FfError::SizeLimit { needed, cap });
    }
    Ok(())
}

/// All `k`-dimensional linear subspaces of `F_q^n`, sorted by canonical
/// form. The count is the Gaussian binomial `binom(n, k)_q`.
pub fn enumerate_subspaces(
    field: FieldSpec,
    n: usize,
    k: usize,
    cap: u64,
) -> Result<Vec<FpSubspace>, FfError> {
    if n == 0 {
        return Err(FfError::ZeroDimension);
    }
    if k > n {
        return Err(FfError::InvalidDimension { k, n });
    }
    enumeration_guard(field, n, k, cap)?;
    let q = field.q();
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // Free entries sit to the right of each row's pivot, outside pivot
        // columns; every assignment of field values to them yields exactly
        // one subspace in reduced row-echelon form.
        let mut free_slots = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..n {
                if !pivots.contains(&j) {
                    free_slots.push((i, j));
                }
            }
        }
        let total = (q as u128).pow(free_slots.len() as u32);
        for assignment in 0..total as u64 {
            let mut rows = vec![vec![0; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut rest = assignment;
            for &(i, j) in free_slots.iter().rev() {
                rows[i][j] = rest % q;
                rest /= q;
            }
            out.push(FpSubspace { field, n, rows });
        }
    }
    out.sort();
    Ok(out)
}

/// All affine `k`-flats of `F_q^n`, sorted; there are `q^(n-k)` per linear
/// subspace.
pub fn enumerate_flats(
    field: FieldSpec,
    n: usize,
    k: usize,
    cap: u64,
) -> Result<Vec<FpFlat>, FfError> {
    let subspaces = enumerate_subspaces(field, n, k, cap)?;
    let q = field.q();
    let translates_each = (q as u128).pow((n - k) as u32);
    let needed = translates_each * subspaces.len() as u128;
    if needed > cap as u128 {
        return Err(FfError::SizeLimit { needed, cap });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for subspace in subspaces {
        let pivots = subspace.pivots();
        let free_cols: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        // Translates with zeros at the pivot columns are exactly the
        // canonical coset labels, one per coset.
        for assignment in 0..translates_each as u64 {
            let mut coords = vec![0; n];
            let mut rest = assignment;
            for &j in free_cols.iter().rev() {
                coords[j] = rest % q;
                rest /= q;
            }
            let translate = FpVec::new(field, coords).expect("residues are canonical");
            out.push(FpFlat { subspace: subspace.clone(), translate });
        }
    }
    out.sort();
    Ok(out)
}

/// Distinct cosets of `V^⊥` meeting `X`, as canonical labels. The count is
/// the size of the subspace projection of `X` along `V`.
pub fn coset_project(v: &FpSubspace, xs: &[FpVec]) -> Result<BTreeSet<FpVec>, FfError> {
    let complement = v.orthogonal_complement();
    let mut labels = BTreeSet::new();
    for x in xs {
        labels.insert(complement.reduce(x)?);
    }
    Ok(labels)
}

/// The Gaussian binomial `binom(n, k)_q`: the number of `k`-dimensional
/// subspaces of an `n`-dimensional space over a field with `q` elements.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            recurse(n, k, i + 1, current, out);
            current.pop();
        }
    }
    recurse(n, k, 0, &mut current, &mut out);
    out
}
