//! Generators for extremal hyperplane configurations.
//!
//! - [`pencil`]: the q + 1 hyperplanes through an (n-2)-space.
//! - [`sharp_hole_cover`]: q pencil hyperplanes plus `a` hyperplanes meeting
//!   the missing pencil member H in distinct (n-2)-spaces through a common
//!   (n-3)-space. It leaves exactly `q^(n-1) - a q^(n-2)` holes, all in H.
//! - [`two_line_hole_cover`]: in the plane, q - 1 concurrent lines plus
//!   `a + 1` lines through a point of one of them. Its `2(q - a - 1)` holes
//!   lie on two lines; at `a = (q - 2)/3` that is `q + a` non-collinear holes.
//!
//! Every free choice is either canonical (smallest in the subspace order) or
//! drawn from a ChaCha stream seeded by the recipe, so a [`Recipe`] replays
//! to the same cover.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covers::{self, PartialCover, PointSet};
use crate::galois::{FieldElement, FieldSpec};
use crate::projective::{Geometry, Subspace};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// All hyperplanes through the canonical (n-2)-space.
    Pencil,
    /// The pencil without its smallest-index member.
    PencilMinusOne,
    /// See [`sharp_hole_cover`].
    SharpHoles,
    /// See [`two_line_hole_cover`]; any `0 <= a <= q - 2`.
    TwoLineHoles,
}

impl Kind {
    /// Name used in recipe files.
    pub fn name(self) -> &'static str {
        match self {
            Kind::Pencil => "pencil",
            Kind::PencilMinusOne => "pencil_minus_one",
            Kind::SharpHoles => "remark9",
            Kind::TwoLineHoles => "example16",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Some(match s {
            "pencil" => Kind::Pencil,
            "pencil_minus_one" | "pencil-minus-one" => Kind::PencilMinusOne,
            "remark9" | "sharp" => Kind::SharpHoles,
            "example16" | "two-line" => Kind::TwoLineHoles,
            _ => return None,
        })
    }
}

/// Everything needed to rebuild a construction bit for bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub kind: Kind,
    pub n: usize,
    pub field: FieldSpec,
    pub a: usize,
    pub seed: u64,
}

/// The choices a construction made, for inspection and replay checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    /// The (n-2)-space of the pencil, or the common point P of the
    /// concurrent lines in the plane.
    pub center: Option<Subspace>,
    /// Common (n-3)-space of the intersections with H (empty when n = 2).
    pub sigma: Option<Subspace>,
    /// The (n-2)-spaces of H met by the extra hyperplanes.
    pub traces: Vec<Subspace>,
    /// Pencil members left out.
    pub dropped: Vec<usize>,
    /// The point all extra lines pass through (two-line construction).
    pub fixed_point: Option<usize>,
    /// Hyperplanes added beyond the pencil members.
    pub extras: Vec<usize>,
    /// A hyperplane known to contain every hole.
    pub hole_hyperplane: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub recipe: Recipe,
    pub cover: PartialCover,
    pub provenance: Provenance,
}

impl Recipe {
    pub fn new(kind: Kind, n: usize, field: FieldSpec, a: usize, seed: u64) -> Self {
        Recipe { kind, n, field, a, seed }
    }

    /// The boundary two-line configuration, `a = (q - 2)/3`.
    pub fn two_line_boundary(field: FieldSpec, seed: u64) -> Result<Self> {
        let a = boundary_excess(field.q())?;
        Ok(Recipe::new(Kind::TwoLineHoles, 2, field, a, seed))
    }

    pub fn build(&self, geo: &Geometry) -> Result<Construction> {
        geo.check_space(self.n, &self.field)?;
        match self.kind {
            Kind::Pencil => {
                if self.a != 0 {
                    return Err(Error::Parameter(format!("a pencil has a = 0, got {}", self.a)));
                }
                let axis = canonical_axis(geo.field(), geo.n());
                let cover = pencil(geo, &axis)?;
                let provenance = Provenance { center: Some(axis), ..Provenance::default() };
                Ok(Construction { recipe: self.clone(), cover, provenance })
            }
            Kind::PencilMinusOne => {
                if self.a != 0 {
                    return Err(Error::Parameter(format!("pencil minus one has a = 0, got {}", self.a)));
                }
                let mut c = sharp_hole_cover(geo, 0, self.seed)?;
                c.recipe.kind = Kind::PencilMinusOne;
                Ok(c)
            }
            Kind::SharpHoles => sharp_hole_cover(geo, self.a, self.seed),
            Kind::TwoLineHoles => two_line_hole_cover(geo, self.a, self.seed),
        }
    }

    /// Builds the geometry and the construction.
    pub fn replay(&self) -> Result<(Geometry, Construction)> {
        let geo = Geometry::new(self.n, self.field.clone())?;
        let c = self.build(&geo)?;
        Ok((geo, c))
    }
}

/// `(q - 2)/3`, when it is an integer and q >= 5.
pub fn boundary_excess(q: u32) -> Result<usize> {
    if q < 5 || q % 3 != 2 {
        return Err(Error::Parameter(format!("q = {q} must satisfy q >= 5 and q = 2 (mod 3)")));
    }
    Ok(((q - 2) / 3) as usize)
}

/// The (n-2)-space `x_0 = x_1 = 0`, which is the smallest one in the
/// subspace order.
pub fn canonical_axis(field: &FieldSpec, n: usize) -> Subspace {
    let rows: Vec<Vec<FieldElement>> = (2..=n)
        .map(|i| {
            let mut v = alloc::vec![FieldElement::ZERO; n + 1];
            v[i] = FieldElement::ONE;
            v
        })
        .collect();
    Subspace::span(field, n + 1, &rows).expect("unit vectors")
}

/// The q + 1 hyperplanes through the (n-2)-space `axis`.
pub fn pencil(geo: &Geometry, axis: &Subspace) -> Result<PartialCover> {
    let n = geo.n() as isize;
    if axis.ambient_dim() != geo.n() || axis.dim() != n - 2 {
        return Err(Error::SubspaceDimension { expected: format!("{}", n - 2), found: axis.dim() });
    }
    PartialCover::new(geo, geo.hyperplanes_containing(axis))
}

/// q + a hyperplanes with exactly `q^(n-1) - a q^(n-2)` holes, all inside
/// the one pencil member H that is left out.
///
/// The pencil axis is [`canonical_axis`], H is its smallest-index
/// hyperplane, and the common (n-3)-space is the smallest one inside the
/// axis. The `a` smallest (n-2)-spaces of H through it (other than the axis)
/// each receive one seeded-random hyperplane through them other than H.
/// Feasible for `a <= q - 1`.
pub fn sharp_hole_cover(geo: &Geometry, a: usize, seed: u64) -> Result<Construction> {
    let field = geo.field();
    let n = geo.n() as isize;
    let axis = canonical_axis(field, geo.n());
    let members = geo.hyperplanes_containing(&axis);
    let h = members[0];
    let h_space = Subspace::from_hyperplane(field, &geo.hyperplane(h));
    let sigma = axis
        .subspaces_within(field, n - 3)?
        .into_iter()
        .next()
        .expect("an (n-3)-space exists inside the axis");
    let traces: Vec<Subspace> = sigma
        .subspaces_through(field, n - 2)?
        .into_iter()
        .filter(|t| *t != axis && h_space.contains(field, t))
        .collect();
    if a >= traces.len() {
        return Err(Error::Parameter(format!(
            "a = {a} needs a < {} (distinct traces in H other than the axis)",
            traces.len()
        )));
    }
    let traces: Vec<Subspace> = traces.into_iter().take(a).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extras = Vec::with_capacity(a);
    for t in &traces {
        let options: Vec<usize> = geo.hyperplanes_containing(t).into_iter().filter(|&x| x != h).collect();
        extras.push(options[rng.gen_range(0..options.len())]);
    }
    let cover = PartialCover::new(geo, members[1..].iter().copied().chain(extras.iter().copied()))?;
    let recipe = Recipe::new(Kind::SharpHoles, geo.n(), field.clone(), a, seed);
    let provenance = Provenance {
        center: Some(axis),
        sigma: Some(sigma),
        traces,
        dropped: alloc::vec![h],
        fixed_point: None,
        extras,
        hole_hyperplane: Some(h),
    };
    Ok(Construction { recipe, cover, provenance })
}

/// Plane only: the q - 1 lines through P = (0,0,1) other than the two of
/// largest index (M_1, M_2), plus `a + 1` seeded-random lines through the
/// smallest-index point Q != P of the first kept line. The holes are the
/// `2(q - a - 1)` points of M_1 and M_2 missed by the lines through Q.
/// Requires `0 <= a <= q - 2`.
pub fn two_line_hole_cover(geo: &Geometry, a: usize, seed: u64) -> Result<Construction> {
    if geo.n() != 2 {
        return Err(Error::Parameter(format!("two-line construction needs n = 2, got {}", geo.n())));
    }
    let q = geo.q() as usize;
    if a + 2 > q {
        return Err(Error::Parameter(format!("a = {a} must be at most q - 2 = {}", q as isize - 2)));
    }
    let field = geo.field();
    let p = 0usize;
    let center = Subspace::from_point(&geo.point(p));
    let through_p: Vec<usize> = geo.hyperplanes_through(p).iter().map(|&x| x as usize).collect();
    let kept = &through_p[..q - 1];
    let dropped = through_p[q - 1..].to_vec();
    let first = kept[0];
    let fixed = geo.points_on(first).iter().map(|&x| x as usize).find(|&x| x != p).expect("a line has q + 1 points");
    let options: Vec<usize> =
        geo.hyperplanes_through(fixed).iter().map(|&x| x as usize).filter(|&l| l != first).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extras: Vec<usize> = index::sample(&mut rng, options.len(), a + 1).into_iter().map(|i| options[i]).collect();
    extras.sort_unstable();
    let cover = PartialCover::new(geo, kept.iter().copied().chain(extras.iter().copied()))?;
    let recipe = Recipe::new(Kind::TwoLineHoles, 2, field.clone(), a, seed);
    let provenance = Provenance {
        center: Some(center),
        dropped,
        fixed_point: Some(fixed),
        extras,
        ..Provenance::default()
    };
    Ok(Construction { recipe, cover, provenance })
}

/// The two-line construction at the boundary `a = (q - 2)/3`.
pub fn two_line_boundary_cover(geo: &Geometry, seed: u64) -> Result<Construction> {
    two_line_hole_cover(geo, boundary_excess(geo.q())?, seed)
}

/// Dual of the construction's cover together with a hyperplane containing
/// all of its holes: a blocking set of size |cover| + 1 in which that
/// hyperplane's dual point is essential. A construction without holes is
/// dualized as is.
pub fn dual_construction(geo: &Geometry, c: &Construction) -> Result<PointSet> {
    let holes = covers::holes(geo, &c.cover)?;
    if holes.is_empty() {
        return Ok(covers::dualize_cover(&c.cover));
    }
    let mu = match c.provenance.hole_hyperplane {
        Some(h) => h,
        None => covers::holes_in_common_hyperplane(geo, &holes)?.ok_or(Error::HolesNotInHyperplane)?,
    };
    if !holes.iter().all(|p| geo.incident(p, mu)) {
        return Err(Error::HolesNotInHyperplane);
    }
    Ok(covers::dualize_cover(&c.cover.with(mu)?))
}
