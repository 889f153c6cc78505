//! Hyperplane sets, point sets, and the cover/blocking-set vocabulary built
//! on the incidence table: holes, multiplicities, essential elements,
//! tangents, triviality, duality and minimal reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits;
use crate::galois::FieldSpec;
use crate::projective::{Geometry, Hyperplane, ProjPoint, Subspace};
use crate::{Error, Result};

fn sorted_distinct(theta: usize, idx: impl IntoIterator<Item = usize>) -> Result<Vec<u32>> {
    let mut v: Vec<u32> = Vec::new();
    for i in idx {
        if i >= theta {
            return Err(Error::IndexOutOfRange(i));
        }
        v.push(i as u32);
    }
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Duplicate(w[0] as usize));
    }
    Ok(v)
}

macro_rules! index_set_type {
    ($(#[$meta:meta])* $name:ident, $elem:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name {
            n: usize,
            field: FieldSpec,
            members: Vec<u32>,
        }

        impl $name {
            /// Builds the set from indices; duplicates and out-of-range
            /// indices are errors.
            pub fn new(geo: &Geometry, idx: impl IntoIterator<Item = usize>) -> Result<Self> {
                Ok($name {
                    n: geo.n(),
                    field: geo.field().clone(),
                    members: sorted_distinct(geo.theta(), idx)?,
                })
            }

            pub fn from_elements(geo: &Geometry, elems: &[$elem]) -> Result<Self> {
                if let Some(e) = elems.iter().find(|e| e.ambient_dim() != geo.n()) {
                    return Err(Error::DimensionMismatch { expected: geo.n() + 1, found: e.ambient_dim() + 1 });
                }
                Self::new(geo, elems.iter().map($elem::index))
            }

            pub fn empty(geo: &Geometry) -> Self {
                $name { n: geo.n(), field: geo.field().clone(), members: Vec::new() }
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
            pub fn len(&self) -> usize {
                self.members.len()
            }

            #[inline]
            pub fn is_empty(&self) -> bool {
                self.members.is_empty()
            }

            /// Sorted member indices.
            #[inline]
            pub fn indices(&self) -> &[u32] {
                &self.members
            }

            pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
                self.members.iter().map(|&i| i as usize)
            }

            pub fn contains(&self, i: usize) -> bool {
                self.members.binary_search(&(i as u32)).is_ok()
            }

            /// Copy with one more member.
            pub fn with(&self, i: usize) -> Result<Self> {
                match self.members.binary_search(&(i as u32)) {
                    Ok(_) => Err(Error::Duplicate(i)),
                    Err(pos) => {
                        let mut s = self.clone();
                        s.members.insert(pos, i as u32);
                        Ok(s)
                    }
                }
            }

            /// Copy with one member removed (no-op if absent).
            pub fn without(&self, i: usize) -> Self {
                let mut s = self.clone();
                s.members.retain(|&x| x as usize != i);
                s
            }

            pub fn mask(&self, geo: &Geometry) -> Vec<u64> {
                bits::from_indices(geo.theta(), self.iter())
            }

            pub fn is_subset_of(&self, other: &Self) -> bool {
                self.members.iter().all(|m| other.members.binary_search(m).is_ok())
            }

            fn check(&self, geo: &Geometry) -> Result<()> {
                geo.check_space(self.n, &self.field)
            }
        }
    };
}

index_set_type!(
    /// A set of distinct hyperplanes of PG(n, q): a partial cover, or a cover
    /// when it leaves no hole.
    PartialCover,
    Hyperplane
);
index_set_type!(
    /// A set of distinct points of PG(n, q): hole sets and blocking sets.
    PointSet,
    ProjPoint
);

impl PartialCover {
    pub fn hyperplanes(&self, geo: &Geometry) -> Vec<Hyperplane> {
        self.iter().map(|i| geo.hyperplane(i)).collect()
    }

    /// Excess over q: the `a` in "a set of q + a hyperplanes".
    pub fn excess(&self) -> i64 {
        self.len() as i64 - self.field.q() as i64
    }
}

impl PointSet {
    pub fn points(&self, geo: &Geometry) -> Vec<ProjPoint> {
        self.iter().map(|i| geo.point(i)).collect()
    }
}

/// Union of the point masks of `hyperplanes`.
pub fn covered_mask(geo: &Geometry, hyperplanes: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut m = vec![0u64; geo.words()];
    for h in hyperplanes {
        bits::or_into(&mut m, geo.mask(h));
    }
    m
}

/// Complement of [`covered_mask`] within the point set.
pub fn hole_mask(geo: &Geometry, hyperplanes: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let covered = covered_mask(geo, hyperplanes);
    let mut all = geo.all_mask();
    for (a, c) in all.iter_mut().zip(&covered) {
        *a &= !c;
    }
    all
}

/// Number of hyperplanes of `s` through point `p`.
pub fn covering_multiplicity(geo: &Geometry, s: &PartialCover, p: usize) -> Result<usize> {
    s.check(geo)?;
    if p >= geo.theta() {
        return Err(Error::IndexOutOfRange(p));
    }
    Ok(s.iter().filter(|&h| geo.incident(p, h)).count())
}

/// Multiplicity of every point, indexed by point.
pub fn multiplicities(geo: &Geometry, s: &PartialCover) -> Vec<u32> {
    let mut m = vec![0u32; geo.theta()];
    for h in s.iter() {
        for &p in geo.points_on(h) {
            m[p as usize] += 1;
        }
    }
    m
}

/// Points lying on no hyperplane of `s`.
pub fn holes(geo: &Geometry, s: &PartialCover) -> Result<PointSet> {
    s.check(geo)?;
    let mask = hole_mask(geo, s.iter());
    Ok(PointSet { n: s.n, field: s.field.clone(), members: bits::ones(&mask).map(|i| i as u32).collect() })
}

pub fn is_cover(geo: &Geometry, s: &PartialCover) -> Result<bool> {
    s.check(geo)?;
    Ok(bits::count(&covered_mask(geo, s.iter())) == geo.theta())
}

pub fn is_partial_cover(geo: &Geometry, s: &PartialCover) -> Result<bool> {
    is_cover(geo, s).map(|c| !c)
}

/// Hyperplanes of `c` that own a point covered by nothing else in `c`.
pub fn essential_hyperplanes(geo: &Geometry, c: &PartialCover) -> Result<Vec<usize>> {
    c.check(geo)?;
    let mult = multiplicities(geo, c);
    Ok(c.iter().filter(|&h| owns_private_point(geo, &mult, h)).collect())
}

fn owns_private_point(geo: &Geometry, mult: &[u32], h: usize) -> bool {
    geo.points_on(h).iter().any(|&p| mult[p as usize] == 1)
}

/// Outcome of [`minimal_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub cover: PartialCover,
    /// Hyperplanes removed, in removal order.
    pub removed: Vec<usize>,
    /// True when the input size is within the range where the minimal cover
    /// inside it is known to be unique: `|C| <= 2q` in the plane, `|C| < 2q`
    /// for n >= 3.
    pub uniqueness_guaranteed: bool,
}

/// Whether a cover of `size` hyperplanes in PG(n, q) has a unique minimal
/// subcover.
pub fn uniqueness_bound_holds(n: usize, q: u32, size: usize) -> bool {
    let two_q = 2 * q as usize;
    if n == 2 {
        size <= two_q
    } else {
        size < two_q
    }
}

/// Reduces a cover to a minimal one by repeatedly removing the non-essential
/// hyperplane of smallest index.
pub fn minimal_reduce(geo: &Geometry, c: &PartialCover) -> Result<Reduction> {
    minimal_reduce_with(geo, c, |_| 0)
}

/// Like [`minimal_reduce`], with `pick` choosing which of the current
/// non-essential hyperplanes (passed sorted by index) to remove next.
pub fn minimal_reduce_with(
    geo: &Geometry,
    c: &PartialCover,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Result<Reduction> {
    if !is_cover(geo, c)? {
        return Err(Error::NotACover);
    }
    let mut mult = multiplicities(geo, c);
    let mut members: Vec<usize> = c.iter().collect();
    let mut removed = Vec::new();
    let mut candidates = Vec::new();
    loop {
        candidates.clear();
        candidates.extend(members.iter().copied().filter(|&h| !owns_private_point(geo, &mult, h)));
        if candidates.is_empty() {
            break;
        }
        let k = pick(&candidates).min(candidates.len() - 1);
        let h = candidates[k];
        for &p in geo.points_on(h) {
            mult[p as usize] -= 1;
        }
        members.retain(|&x| x != h);
        removed.push(h);
    }
    Ok(Reduction {
        cover: PartialCover::new(geo, members)?,
        removed,
        uniqueness_guaranteed: uniqueness_bound_holds(geo.n(), geo.q(), c.len()),
    })
}

/// Whether `c` has no proper subcover.
pub fn is_minimal_cover(geo: &Geometry, c: &PartialCover) -> Result<bool> {
    Ok(is_cover(geo, c)? && essential_hyperplanes(geo, c)?.len() == c.len())
}

/// Indices of the q + 1 hyperplanes through the (n-2)-space `h1 ∩ h2`.
///
/// Hyperplanes through that space have coefficient vectors on the line of
/// the dual space joining `h1` and `h2`, and points and hyperplanes share
/// indices.
pub fn pencil_of_pair(geo: &Geometry, h1: usize, h2: usize) -> Result<Vec<usize>> {
    geo.line_indices(h1, h2)
}

/// The (n-2)-space `h1 ∩ h2`.
pub fn axis_of_pair(geo: &Geometry, h1: usize, h2: usize) -> Result<Subspace> {
    let f = geo.field();
    Subspace::from_hyperplane(f, &geo.hyperplane(h1)).intersect(f, &Subspace::from_hyperplane(f, &geo.hyperplane(h2)))
}

/// If `c` contains every hyperplane through some (n-2)-space, returns the
/// smallest such space.
pub fn is_trivial(geo: &Geometry, c: &PartialCover) -> Result<Option<Subspace>> {
    c.check(geo)?;
    let members: Vec<usize> = c.iter().collect();
    let mut best: Option<Subspace> = None;
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let pencil = pencil_of_pair(geo, a, b)?;
            if pencil.iter().all(|&h| c.contains(h)) {
                let axis = axis_of_pair(geo, a, b)?;
                if best.as_ref().is_none_or(|cur| axis < *cur) {
                    best = Some(axis);
                }
            }
        }
    }
    Ok(best)
}

/// Swaps each hyperplane `[c_0..c_n]` for the point `(c_0..c_n)`.
pub fn dualize_cover(s: &PartialCover) -> PointSet {
    PointSet { n: s.n, field: s.field.clone(), members: s.members.clone() }
}

/// Swaps each point `(c_0..c_n)` for the hyperplane `[c_0..c_n]`.
pub fn dualize_points(b: &PointSet) -> PartialCover {
    PartialCover { n: b.n, field: b.field.clone(), members: b.members.clone() }
}

/// Whether every hyperplane meets `b`.
pub fn is_blocking_set(geo: &Geometry, b: &PointSet) -> Result<bool> {
    b.check(geo)?;
    let m = b.mask(geo);
    Ok((0..geo.theta()).all(|h| bits::and_count(geo.mask(h), &m) > 0))
}

/// Hyperplanes meeting `b` in exactly the point `p`.
pub fn tangent_hyperplanes(geo: &Geometry, b: &PointSet, p: usize) -> Result<Vec<usize>> {
    b.check(geo)?;
    if !b.contains(p) {
        return Err(Error::PointNotInSet(p));
    }
    let m = b.mask(geo);
    Ok(tangents_with_mask(geo, &m, p))
}

pub(crate) fn tangents_with_mask(geo: &Geometry, set_mask: &[u64], p: usize) -> Vec<usize> {
    geo.hyperplanes_through(p)
        .iter()
        .map(|&h| h as usize)
        .filter(|&h| bits::and_count(geo.mask(h), set_mask) == 1)
        .collect()
}

pub fn is_essential_point(geo: &Geometry, b: &PointSet, p: usize) -> Result<bool> {
    Ok(!tangent_hyperplanes(geo, b, p)?.is_empty())
}

/// Whether `b` contains all points of some line.
pub fn contains_line(geo: &Geometry, b: &PointSet) -> Result<bool> {
    b.check(geo)?;
    let members: Vec<usize> = b.iter().collect();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if geo.line_indices(x, y)?.iter().all(|&z| b.contains(z)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// A hyperplane containing every point of `h`, if one exists: the unique one
/// when the points span a hyperplane, else the one of smallest index.
pub fn holes_in_common_hyperplane(geo: &Geometry, h: &PointSet) -> Result<Option<usize>> {
    h.check(geo)?;
    if h.is_empty() {
        return Err(Error::EmptySet);
    }
    let span = geo.span_indices(h.iter());
    if span.dim() >= geo.n() as isize {
        return Ok(None);
    }
    Ok(geo.hyperplanes_containing(&span).first().copied())
}

/// Whether all points of `h` lie on one line.
pub fn holes_collinear(geo: &Geometry, h: &PointSet) -> Result<bool> {
    h.check(geo)?;
    if h.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(geo.span_indices(h.iter()).dim() <= 1)
}
