//! Points, hyperplanes and subspaces of PG(n, q).
//!
//! Points and hyperplanes share one canonical form: the leftmost nonzero
//! coordinate is 1. Canonical vectors are numbered in lexicographic order of
//! their encodings (coordinate 0 compared first), so index `i` names both a
//! point and the hyperplane with the same coordinate vector, and the
//! incidence relation is symmetric in these indices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits;
use crate::galois::{FieldElement, FieldSpec};
use crate::{Error, Result};

/// Largest number of points for which [`Geometry`] builds an incidence table.
pub const MAX_POINTS: u64 = 1 << 24;
/// Largest incidence table, in bits.
pub const MAX_TABLE_BITS: u64 = 1 << 33;

/// Number of points of PG(n, q): `(q^(n+1) - 1) / (q - 1)`.
pub fn theta(n: u32, q: u64) -> u64 {
    (0..=n).fold(0u64, |acc, _| acc.saturating_mul(q).saturating_add(1))
}

/// `theta` extended with `theta(-1) = 0`.
fn theta_signed(n: isize, q: u64) -> u64 {
    if n < 0 {
        0
    } else {
        theta(n as u32, q)
    }
}

/// Scales `raw` so that its leftmost nonzero entry is 1.
fn normalize_vec(field: &FieldSpec, raw: &[FieldElement]) -> Result<Vec<FieldElement>> {
    for &x in raw {
        field.element(x.rep())?;
    }
    let lead = raw.iter().copied().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let s = field.inv(lead)?;
    Ok(raw.iter().map(|&x| field.mul(s, x)).collect())
}

/// Lexicographic index of a canonical vector of length n + 1.
fn lex_index(q: u64, v: &[FieldElement]) -> usize {
    let n = v.len() - 1;
    let lead = v.iter().position(|x| !x.is_zero()).expect("canonical vector is nonzero");
    let offset = theta_signed(n as isize - lead as isize - 1, q);
    let tail = v[lead + 1..].iter().fold(0u64, |acc, x| acc * q + x.rep() as u64);
    (offset + tail) as usize
}

fn lex_unindex(n: usize, q: u64, index: usize) -> Vec<FieldElement> {
    let idx = index as u64;
    let mut lead = n;
    while theta_signed(n as isize - lead as isize, q) <= idx {
        lead -= 1;
    }
    let mut tail = idx - theta_signed(n as isize - lead as isize - 1, q);
    let mut v = vec![FieldElement::ZERO; n + 1];
    v[lead] = FieldElement::ONE;
    for slot in v[lead + 1..].iter_mut().rev() {
        *slot = field_el((tail % q) as u32);
        tail /= q;
    }
    v
}

#[inline]
fn field_el(rep: u32) -> FieldElement {
    crate::galois::element_unchecked(rep)
}

macro_rules! canonical_vector_type {
    ($(#[$meta:meta])* $name:ident, $field:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            index: usize,
            $field: Vec<FieldElement>,
        }

        impl $name {
            /// Canonical representative of a nonzero vector.
            pub fn new(field: &FieldSpec, raw: &[FieldElement]) -> Result<Self> {
                if raw.is_empty() {
                    return Err(Error::DimensionMismatch { expected: 1, found: 0 });
                }
                let v = normalize_vec(field, raw)?;
                Ok(Self { index: lex_index(field.q() as u64, &v), $field: v })
            }

            pub fn from_reps(field: &FieldSpec, reps: &[u32]) -> Result<Self> {
                let raw = reps.iter().map(|&r| field.element(r)).collect::<Result<Vec<_>>>()?;
                Self::new(field, &raw)
            }

            pub fn from_index(n: usize, field: &FieldSpec, index: usize) -> Result<Self> {
                let t = theta(n as u32, field.q() as u64);
                if index as u64 >= t {
                    return Err(Error::IndexOutOfRange(index));
                }
                Ok(Self { index, $field: lex_unindex(n, field.q() as u64, index) })
            }

            #[inline]
            pub fn index(&self) -> usize {
                self.index
            }

            #[inline]
            pub fn $field(&self) -> &[FieldElement] {
                &self.$field
            }

            /// Projective dimension n of the ambient space.
            #[inline]
            pub fn ambient_dim(&self) -> usize {
                self.$field.len() - 1
            }

            pub fn reps(&self) -> Vec<u32> {
                self.$field.iter().map(|x| x.rep()).collect()
            }
        }
    };
}

canonical_vector_type!(
    /// A point of PG(n, q) in canonical homogeneous coordinates.
    ProjPoint,
    coords
);
canonical_vector_type!(
    /// A hyperplane of PG(n, q), given by the canonical coefficient vector
    /// of its linear form.
    Hyperplane,
    coeffs
);

impl ProjPoint {
    /// The hyperplane whose coefficients are this point's coordinates.
    pub fn dual(&self) -> Hyperplane {
        Hyperplane { index: self.index, coeffs: self.coords.clone() }
    }
}

impl Hyperplane {
    /// The point whose coordinates are this hyperplane's coefficients.
    pub fn dual(&self) -> ProjPoint {
        ProjPoint { index: self.index, coords: self.coeffs.clone() }
    }
}

/// Whether `point` lies on `hyperplane`.
pub fn incident(field: &FieldSpec, point: &ProjPoint, hyperplane: &Hyperplane) -> Result<bool> {
    if point.coords.len() != hyperplane.coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: point.coords.len(),
            found: hyperplane.coeffs.len(),
        });
    }
    Ok(field.dot(&point.coords, &hyperplane.coeffs).is_zero())
}

/// All θ_n points of PG(n, q), in index order.
pub fn all_points(n: usize, field: &FieldSpec) -> Vec<ProjPoint> {
    let q = field.q() as u64;
    (0..theta(n as u32, q) as usize)
        .map(|i| ProjPoint { index: i, coords: lex_unindex(n, q, i) })
        .collect()
}

/// All θ_n hyperplanes of PG(n, q), in index order.
pub fn all_hyperplanes(n: usize, field: &FieldSpec) -> Vec<Hyperplane> {
    all_points(n, field).into_iter().map(|p| p.dual()).collect()
}

/// The q + 1 points of the line PQ, sorted by index.
pub fn line_through(field: &FieldSpec, p: &ProjPoint, q: &ProjPoint) -> Result<Vec<ProjPoint>> {
    if p.coords.len() != q.coords.len() {
        return Err(Error::DimensionMismatch { expected: p.coords.len(), found: q.coords.len() });
    }
    if p == q {
        return Err(Error::EqualPoints);
    }
    let mut out = Vec::with_capacity(field.q() as usize + 1);
    out.push(q.clone());
    for t in field.elements() {
        let v: Vec<FieldElement> = p
            .coords
            .iter()
            .zip(&q.coords)
            .map(|(&a, &b)| field.add(a, field.mul(t, b)))
            .collect();
        out.push(ProjPoint::new(field, &v)?);
    }
    out.sort();
    Ok(out)
}

/// Row-reduces in place, drops zero rows, returns pivot columns.
fn rref(field: &FieldSpec, rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let s = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(s, *x);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = field.neg(rows[i][c]);
            for j in c..cols {
                let v = field.mul(f, rows[r][j]);
                rows[i][j] = field.add(rows[i][j], v);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of coordinate vectors.
pub fn rank(field: &FieldSpec, vectors: &[Vec<FieldElement>]) -> Result<usize> {
    check_lengths(vectors)?;
    let mut rows = vectors.to_vec();
    Ok(rref(field, &mut rows).len())
}

fn check_lengths(vectors: &[Vec<FieldElement>]) -> Result<()> {
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
            return Err(Error::DimensionMismatch { expected: first.len(), found: bad.len() });
        }
    }
    Ok(())
}

/// Iterates all reduced row echelon matrices with `r` rows and `m` columns
/// over GF(q), calling `f` on each.
fn for_each_rref(field: &FieldSpec, r: usize, m: usize, mut f: impl FnMut(&[Vec<FieldElement>])) {
    if r > m {
        return;
    }
    let q = field.q() as u64;
    let mut piv: Vec<usize> = (0..r).collect();
    loop {
        // free slots: (row, col) with col > piv[row] and col not a pivot
        let mut free = Vec::new();
        for (i, &pc) in piv.iter().enumerate() {
            for c in pc + 1..m {
                if !piv.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let total = q.pow(free.len() as u32);
        let mut rows = vec![vec![FieldElement::ZERO; m]; r];
        for (i, &pc) in piv.iter().enumerate() {
            rows[i][pc] = FieldElement::ONE;
        }
        for mut code in 0..total {
            for &(i, c) in free.iter().rev() {
                rows[i][c] = field_el((code % q) as u32);
                code /= q;
            }
            f(&rows);
        }
        // next pivot combination, lexicographic
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if piv[i] < m - r + i {
                piv[i] += 1;
                for j in i + 1..r {
                    piv[j] = piv[j - 1] + 1;
                }
                break;
            }
        }
        if r == 0 {
            return;
        }
    }
}

/// A projective subspace, stored as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    len: usize,
    basis: Vec<Vec<FieldElement>>,
}

impl Subspace {
    /// Row space of `vectors` in a space of coordinate length `len` (= n + 1).
    pub fn span(field: &FieldSpec, len: usize, vectors: &[Vec<FieldElement>]) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
            return Err(Error::DimensionMismatch { expected: len, found: bad.len() });
        }
        let mut rows = vectors.to_vec();
        rref(field, &mut rows);
        Ok(Subspace { len, basis: rows })
    }

    pub fn span_points(field: &FieldSpec, points: &[ProjPoint]) -> Result<Self> {
        let len = points.first().ok_or(Error::EmptySet)?.coords.len();
        let v: Vec<_> = points.iter().map(|p| p.coords.clone()).collect();
        Self::span(field, len, &v)
    }

    /// The empty subspace (dimension -1) of PG(n, q).
    pub fn empty(n: usize) -> Self {
        Subspace { len: n + 1, basis: Vec::new() }
    }

    pub fn whole(field: &FieldSpec, n: usize) -> Self {
        let rows: Vec<_> = (0..=n)
            .map(|i| {
                let mut v = vec![FieldElement::ZERO; n + 1];
                v[i] = FieldElement::ONE;
                v
            })
            .collect();
        Self::span(field, n + 1, &rows).expect("unit vectors")
    }

    pub fn from_point(p: &ProjPoint) -> Self {
        Subspace { len: p.coords.len(), basis: vec![p.coords.clone()] }
    }

    /// The points of a hyperplane, as a subspace.
    pub fn from_hyperplane(field: &FieldSpec, h: &Hyperplane) -> Self {
        Subspace { len: h.coeffs.len(), basis: vec![h.coeffs.clone()] }.annihilator(field)
    }

    /// Projective dimension; -1 for the empty subspace.
    pub fn dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    /// Projective dimension n of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.len - 1
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch { expected: self.len, found: other.len });
        }
        Ok(())
    }

    /// The dual subspace: all vectors orthogonal to every basis row.
    /// Its points are the hyperplanes containing `self`.
    pub fn annihilator(&self, field: &FieldSpec) -> Subspace {
        let mut rows = self.basis.clone();
        let pivots = rref(field, &mut rows);
        let mut kernel = Vec::new();
        for f in (0..self.len).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldElement::ZERO; self.len];
            v[f] = FieldElement::ONE;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = field.neg(row[f]);
            }
            kernel.push(v);
        }
        rref(field, &mut kernel);
        Subspace { len: self.len, basis: kernel }
    }

    pub fn join(&self, field: &FieldSpec, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(field, self.len, &rows)
    }

    pub fn intersect(&self, field: &FieldSpec, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.annihilator(field).join(field, &other.annihilator(field))?.annihilator(field))
    }

    pub fn contains_vector(&self, field: &FieldSpec, v: &[FieldElement]) -> bool {
        if v.len() != self.len {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(field, &mut rows).len() == self.basis.len()
    }

    pub fn contains_point(&self, field: &FieldSpec, p: &ProjPoint) -> bool {
        self.contains_vector(field, &p.coords)
    }

    pub fn contains(&self, field: &FieldSpec, other: &Subspace) -> bool {
        other.len == self.len && other.basis.iter().all(|v| self.contains_vector(field, v))
    }

    /// Whether every point of `self` lies on `h`.
    pub fn lies_in(&self, field: &FieldSpec, h: &Hyperplane) -> bool {
        h.coeffs.len() == self.len && self.basis.iter().all(|b| field.dot(b, &h.coeffs).is_zero())
    }

    /// All points of the subspace, sorted by index.
    pub fn points(&self, field: &FieldSpec) -> Vec<ProjPoint> {
        let mut out = Vec::new();
        self.for_each_point(field, |v| {
            out.push(ProjPoint { index: lex_index(field.q() as u64, v), coords: v.to_vec() })
        });
        out.sort();
        out
    }

    pub fn point_indices(&self, field: &FieldSpec) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_point(field, |v| out.push(lex_index(field.q() as u64, v)));
        out.sort_unstable();
        out
    }

    /// Calls `f` with each point's canonical vector, in no particular order.
    fn for_each_point(&self, field: &FieldSpec, mut f: impl FnMut(&[FieldElement])) {
        let q = field.q() as u64;
        let r = self.basis.len();
        let mut v = vec![FieldElement::ZERO; self.len];
        // A combination whose first nonzero coefficient is 1 at row i has its
        // leading entry 1 at row i's pivot: the result is already canonical.
        for lead in 0..r {
            let free = r - lead - 1;
            for mut code in 0..q.pow(free as u32) {
                v.copy_from_slice(&self.basis[lead]);
                for row in self.basis[lead + 1..].iter().rev() {
                    let t = field_el((code % q) as u32);
                    code /= q;
                    if !t.is_zero() {
                        for (x, &b) in v.iter_mut().zip(row) {
                            *x = field.add(*x, field.mul(t, b));
                        }
                    }
                }
                f(&v);
            }
        }
    }

    /// The hyperplanes containing this subspace, sorted by index.
    pub fn hyperplanes_containing(&self, field: &FieldSpec) -> Vec<Hyperplane> {
        self.annihilator(field).points(field).into_iter().map(|p| p.dual()).collect()
    }

    /// All `k`-dimensional subspaces containing `self`, sorted.
    pub fn subspaces_through(&self, field: &FieldSpec, k: isize) -> Result<Vec<Subspace>> {
        let n = self.len as isize - 1;
        if k <= self.dim() || k > n {
            return Err(Error::SubspaceDimension {
                expected: format!("{} < k <= {}", self.dim(), n),
                found: k,
            });
        }
        let mut rows = self.basis.clone();
        let pivots = rref(field, &mut rows);
        let complement: Vec<usize> = (0..self.len).filter(|c| !pivots.contains(c)).collect();
        let extra = (k - self.dim()) as usize;
        let mut out = Vec::new();
        for_each_rref(field, extra, complement.len(), |m| {
            let mut gens = self.basis.clone();
            for row in m {
                let mut v = vec![FieldElement::ZERO; self.len];
                for (&c, &x) in complement.iter().zip(row) {
                    v[c] = x;
                }
                gens.push(v);
            }
            out.push(Subspace::span(field, self.len, &gens).expect("lengths match"));
        });
        out.sort();
        Ok(out)
    }

    /// All `k`-dimensional subspaces contained in `self`, sorted.
    pub fn subspaces_within(&self, field: &FieldSpec, k: isize) -> Result<Vec<Subspace>> {
        if k < -1 || k > self.dim() {
            return Err(Error::SubspaceDimension {
                expected: format!("-1 <= k <= {}", self.dim()),
                found: k,
            });
        }
        let m = self.basis.len();
        let mut out = Vec::new();
        for_each_rref(field, (k + 1) as usize, m, |coef| {
            let gens: Vec<Vec<FieldElement>> = coef
                .iter()
                .map(|c| {
                    let mut v = vec![FieldElement::ZERO; self.len];
                    for (&t, b) in c.iter().zip(&self.basis) {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = field.add(*x, field.mul(t, y));
                        }
                    }
                    v
                })
                .collect();
            out.push(Subspace::span(field, self.len, &gens).expect("lengths match"));
        });
        out.sort();
        Ok(out)
    }

    /// All `k`-dimensional subspaces of PG(n, q), sorted.
    pub fn all(field: &FieldSpec, n: usize, k: isize) -> Result<Vec<Subspace>> {
        Subspace::whole(field, n).subspaces_within(field, k)
    }
}

/// PG(n, q) with its points enumerated and the point/hyperplane incidence
/// precomputed as one bitset row per hyperplane.
#[derive(Debug, Clone)]
pub struct Geometry {
    n: usize,
    field: FieldSpec,
    theta: usize,
    words: usize,
    coords: Vec<FieldElement>,
    masks: Vec<u64>,
    /// Points on each hyperplane (= hyperplanes through each point), sorted.
    incid: Vec<u32>,
    per: usize,
}

impl Geometry {
    pub fn new(n: usize, field: FieldSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter(format!("dimension n = {n} must be at least 1")));
        }
        let q = field.q() as u64;
        let t = theta(n as u32, q);
        let bits = (t as u128) * (t as u128);
        if t > MAX_POINTS || bits > MAX_TABLE_BITS as u128 {
            return Err(Error::SpaceTooLarge { n, q: field.q() });
        }
        let theta = t as usize;
        let per = theta_signed(n as isize - 1, q) as usize;
        let words = bits::words_for(theta);
        let mut coords = Vec::with_capacity(theta * (n + 1));
        for i in 0..theta {
            coords.extend(lex_unindex(n, q, i));
        }
        let mut masks = vec![0u64; theta * words];
        let mut incid = Vec::with_capacity(theta * per);
        for h in 0..theta {
            let hyp = Hyperplane { index: h, coeffs: coords[h * (n + 1)..(h + 1) * (n + 1)].to_vec() };
            let pts = Subspace::from_hyperplane(&field, &hyp).point_indices(&field);
            debug_assert_eq!(pts.len(), per);
            let row = &mut masks[h * words..(h + 1) * words];
            for &p in &pts {
                bits::set(row, p);
                incid.push(p as u32);
            }
        }
        Ok(Geometry { n, field, theta, words, coords, masks, incid, per })
    }

    /// Convenience constructor for GF(q) with the default modulus.
    pub fn with_order(n: usize, q: u32) -> Result<Self> {
        Self::new(n, FieldSpec::with_order(q)?)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of points (and of hyperplanes).
    #[inline]
    pub fn theta(&self) -> usize {
        self.theta
    }

    /// Points per hyperplane, θ_{n-1}.
    #[inline]
    pub fn per_hyperplane(&self) -> usize {
        self.per
    }

    /// `u64` words per bitset row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn coords(&self, i: usize) -> &[FieldElement] {
        &self.coords[i * (self.n + 1)..(i + 1) * (self.n + 1)]
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        ProjPoint { index: i, coords: self.coords(i).to_vec() }
    }

    pub fn hyperplane(&self, i: usize) -> Hyperplane {
        Hyperplane { index: i, coeffs: self.coords(i).to_vec() }
    }

    /// Bitset of the points on hyperplane `h`.
    #[inline]
    pub fn mask(&self, h: usize) -> &[u64] {
        &self.masks[h * self.words..(h + 1) * self.words]
    }

    #[inline]
    pub fn points_on(&self, h: usize) -> &[u32] {
        &self.incid[h * self.per..(h + 1) * self.per]
    }

    #[inline]
    pub fn hyperplanes_through(&self, p: usize) -> &[u32] {
        self.points_on(p)
    }

    #[inline]
    pub fn incident(&self, point: usize, hyperplane: usize) -> bool {
        bits::get(self.mask(hyperplane), point)
    }

    /// Index of the canonical form of a nonzero coordinate vector.
    pub fn index_of(&self, raw: &[FieldElement]) -> Result<usize> {
        if raw.len() != self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, found: raw.len() });
        }
        Ok(ProjPoint::new(&self.field, raw)?.index)
    }

    /// Bitset of all points.
    pub fn all_mask(&self) -> Vec<u64> {
        bits::full(self.theta)
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        (0..self.theta).map(|i| self.point(i)).collect()
    }

    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        (0..self.theta).map(|i| self.hyperplane(i)).collect()
    }

    /// Point indices of the line through points `a` and `b`.
    pub fn line_indices(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let line = line_through(&self.field, &self.point(a), &self.point(b))?;
        Ok(line.into_iter().map(|p| p.index).collect())
    }

    /// Subspace spanned by the points with the given indices.
    pub fn span_indices(&self, idx: impl IntoIterator<Item = usize>) -> Subspace {
        let rows: Vec<_> = idx.into_iter().map(|i| self.coords(i).to_vec()).collect();
        Subspace::span(&self.field, self.n + 1, &rows).expect("lengths match")
    }

    /// Indices of the hyperplanes containing `s`.
    pub fn hyperplanes_containing(&self, s: &Subspace) -> Vec<usize> {
        s.annihilator(&self.field).point_indices(&self.field)
    }

    pub(crate) fn check_space(&self, n: usize, field: &FieldSpec) -> Result<()> {
        if n != self.n || *field != self.field {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }
}
