//! Instance-by-instance checking of the hole, tangent, structure and
//! reduction statements.
//!
//! The scans here are sequential over a rank range (exhaustive mode) or a
//! sample-index range (sampled mode). Each sample draws from its own ChaCha
//! stream keyed by `(seed, sample index)`, so splitting a range into chunks
//! and merging the [`Outcome`]s in chunk order reproduces the sequential
//! result exactly. Threading and timing are left to the caller.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::combinatorics::{binomial, colex_next, colex_unrank};
use crate::covers::{self, PartialCover, PointSet};
use crate::galois::is_prime;
use crate::projective::{Geometry, Subspace};
use crate::{Error, Result};

/// Default cap on exhaustive enumeration.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;
/// Violations kept in full per outcome; the count keeps going.
pub const MAX_STORED_VIOLATIONS: usize = 100;
/// Removal orders tried per reduction trial, besides the default order.
pub const DEFAULT_REMOVAL_ORDERS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Partial (q+a)-covers with few holes: hole count lower bound and holes
    /// inside one hyperplane.
    Holes,
    /// Tangent hyperplanes through essential points of small blocking sets.
    Tangents,
    /// Prime q: q concurrent hyperplanes plus a others.
    Structure,
    /// Unique minimal subcover below 2q.
    Reduction,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Holes => "holes",
            Theorem::Tangents => "tangents",
            Theorem::Structure => "structure",
            Theorem::Reduction => "reduction",
        }
    }
}

/// How random instances are drawn in sampled mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sampler {
    /// Uniform subsets of the given size.
    #[default]
    Uniform,
    /// A random pencil with 1 to 3 members dropped, topped up with random
    /// hyperplanes outside it. Concentrates on instances with few holes.
    NearPencil,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Sampled { samples: u64, sampler: Sampler },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Fewer holes than `q^(n-1) - a q^(n-2)`.
    TooFewHoles { bound: i64 },
    /// The holes span the whole space.
    HolesNotInHyperplane,
    /// No q concurrent members with the rest off the axis.
    NoPencilStructure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Cover { hyperplanes: Vec<usize>, holes: usize, failure: Failure },
    Tangent { point: usize, tangents: usize, bound: i64 },
    Reduction { hyperplanes: Vec<usize>, expected: Vec<usize>, found: Vec<usize> },
}

/// Tallies of one scan (or one chunk of a scan).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub instances_checked: u64,
    /// Instances inside the statement's hypothesis, i.e. actually checked
    /// against its conclusion.
    pub hypothesis_met_count: u64,
    /// Hyperplane sets with no hole.
    pub full_covers: u64,
    /// Partial covers with more holes than the statement allows.
    pub excess_holes: u64,
    /// Smallest hole count (or tangent count) among checked instances.
    pub min_observed: Option<u64>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl Outcome {
    pub fn record(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < MAX_STORED_VIOLATIONS {
            self.violations.push(v);
        }
    }

    fn observe(&mut self, x: u64) {
        self.min_observed = Some(self.min_observed.map_or(x, |m| m.min(x)));
    }

    /// Appends `other`, as if its instances came after ours.
    pub fn merge(&mut self, other: Outcome) {
        self.instances_checked += other.instances_checked;
        self.hypothesis_met_count += other.hypothesis_met_count;
        self.full_covers += other.full_covers;
        self.excess_holes += other.excess_holes;
        if let Some(m) = other.min_observed {
            self.observe(m);
        }
        self.violation_count += other.violation_count;
        let room = MAX_STORED_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// `q^(n-1) - a q^(n-2)`.
pub fn hole_lower_bound(n: usize, q: u32, a: i64) -> i64 {
    let q = q as i64;
    let hi = q.pow(n as u32 - 1);
    let lo = q.pow(n as u32 - 2);
    hi - a * lo
}

fn require_plane_or_higher(geo: &Geometry) -> Result<()> {
    if geo.n() < 2 {
        return Err(Error::Parameter(format!("n = {} must be at least 2", geo.n())));
    }
    Ok(())
}

/// Whether `a < (q - 2)/3`.
pub fn excess_in_range(q: u32, a: usize) -> bool {
    3 * a as u64 + 2 < q as u64
}

/// q hyperplanes through a common (n-2)-space plus the rest off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilStructure {
    pub center: Subspace,
    pub members: Vec<usize>,
    pub extras: Vec<usize>,
}

/// Splits `s` into exactly q hyperplanes through a common (n-2)-space and
/// the others, none of which contain it. The smallest such space is chosen
/// when several qualify; a full pencil of q + 1 does not qualify.
pub fn detect_pencil_structure(geo: &Geometry, s: &PartialCover) -> Result<Option<PencilStructure>> {
    geo.check_space(s.n(), s.field())?;
    let q = geo.q() as usize;
    let members: Vec<usize> = s.iter().collect();
    let mut best: Option<PencilStructure> = None;
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let pencil = covers::pencil_of_pair(geo, x, y)?;
            if seen.contains(&pencil) {
                continue;
            }
            let inside: Vec<usize> = pencil.iter().copied().filter(|&h| s.contains(h)).collect();
            if inside.len() == q {
                let center = covers::axis_of_pair(geo, x, y)?;
                if best.as_ref().is_none_or(|b| center < b.center) {
                    let extras = members.iter().copied().filter(|h| !inside.contains(h)).collect();
                    best = Some(PencilStructure { center, members: inside, extras });
                }
            }
            seen.push(pencil);
        }
    }
    Ok(best)
}

/// Per-instance checker for partial (q+a)-covers.
#[derive(Debug, Clone)]
pub struct HoleScan<'g> {
    geo: &'g Geometry,
    theorem: Theorem,
    a: usize,
    size: usize,
    max_holes: usize,
    bound: i64,
    full: Vec<u64>,
}

impl<'g> HoleScan<'g> {
    /// `theorem` is [`Theorem::Holes`] or [`Theorem::Structure`]; the
    /// latter requires prime q.
    pub fn new(geo: &'g Geometry, theorem: Theorem, a: usize) -> Result<Self> {
        require_plane_or_higher(geo)?;
        match theorem {
            Theorem::Holes => {}
            Theorem::Structure => {
                if !is_prime(geo.q()) {
                    return Err(Error::Parameter(format!("q = {} must be prime", geo.q())));
                }
            }
            _ => return Err(Error::Parameter(format!("{} is not a hyperplane-set scan", theorem.name()))),
        }
        let q = geo.q() as usize;
        let size = q + a;
        if size > geo.theta() {
            return Err(Error::Parameter(format!("q + a = {size} exceeds the {} hyperplanes", geo.theta())));
        }
        let max_holes = q.pow(geo.n() as u32 - 1);
        Ok(HoleScan {
            geo,
            theorem,
            a,
            size,
            max_holes,
            bound: hole_lower_bound(geo.n(), geo.q(), a as i64),
            full: geo.all_mask(),
        })
    }

    pub fn geometry(&self) -> &'g Geometry {
        self.geo
    }

    pub fn theorem(&self) -> Theorem {
        self.theorem
    }

    /// Number of hyperplanes per instance, q + a.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn hypothesis_met(&self) -> bool {
        excess_in_range(self.geo.q(), self.a)
    }

    /// Number of instances an exhaustive scan visits.
    pub fn exhaustive_count(&self) -> u128 {
        binomial(self.geo.theta() as u64, self.size as u64)
    }

    pub fn check_budget(&self, budget: u128) -> Result<()> {
        let count = self.exhaustive_count();
        if count > budget {
            return Err(Error::BudgetExceeded {
                what: format!("exhaustive scan of {}-subsets of {} hyperplanes", self.size, self.geo.theta()),
                count,
                budget,
            });
        }
        Ok(())
    }

    /// Classifies one instance given its hole mask.
    pub fn examine(&self, members: &[usize], hole_mask: &[u64], out: &mut Outcome) {
        out.instances_checked += 1;
        let h = bits::count(hole_mask);
        if h == 0 {
            out.full_covers += 1;
            return;
        }
        if h > self.max_holes {
            out.excess_holes += 1;
            return;
        }
        out.hypothesis_met_count += 1;
        out.observe(h as u64);
        let failure = match self.theorem {
            Theorem::Holes => self.hole_failure(hole_mask, h),
            _ => self.structure_failure(members),
        };
        if let Some(failure) = failure {
            out.record(Violation::Cover { hyperplanes: members.to_vec(), holes: h, failure });
        }
    }

    fn hole_failure(&self, hole_mask: &[u64], h: usize) -> Option<Failure> {
        if (h as i64) < self.bound {
            return Some(Failure::TooFewHoles { bound: self.bound });
        }
        // A hyperplane through all holes contains every hole, so check the
        // span of the holes.
        let span = self.geo.span_indices(bits::ones(hole_mask));
        if span.dim() >= self.geo.n() as isize {
            return Some(Failure::HolesNotInHyperplane);
        }
        None
    }

    fn structure_failure(&self, members: &[usize]) -> Option<Failure> {
        let s = PartialCover::new(self.geo, members.iter().copied()).expect("scan members are distinct");
        match detect_pencil_structure(self.geo, &s) {
            Ok(Some(_)) => None,
            _ => Some(Failure::NoPencilStructure),
        }
    }

    /// Scans the subsets with co-lex ranks in `ranks`.
    pub fn scan_exhaustive(&self, ranks: Range<u128>) -> Outcome {
        let mut out = Outcome::default();
        let total = self.exhaustive_count();
        let end = ranks.end.min(total);
        if ranks.start >= end {
            return out;
        }
        let k = self.size;
        let w = self.geo.words();
        let theta = self.geo.theta();
        let mut c = vec![0usize; k];
        colex_unrank(ranks.start, &mut c);
        // suffix unions: suf[j] = masks of c[j..]
        let mut suf = vec![0u64; (k + 1) * w];
        let mut holes = vec![0u64; w];
        let mut changed = k.saturating_sub(1);
        let mut rank = ranks.start;
        loop {
            for j in (0..=changed.min(k.saturating_sub(1))).rev() {
                if k == 0 {
                    break;
                }
                let (lo, hi) = suf.split_at_mut((j + 1) * w);
                let dst = &mut lo[j * w..];
                let mask = self.geo.mask(c[j]);
                for t in 0..w {
                    dst[t] = hi[t] | mask[t];
                }
            }
            for t in 0..w {
                holes[t] = self.full[t] & !suf[t];
            }
            self.examine(&c, &holes, &mut out);
            rank += 1;
            if rank >= end {
                break;
            }
            match colex_next(&mut c, theta) {
                Some(i) => changed = i,
                None => break,
            }
        }
        out
    }

    /// Draws the instance with index `i` of the sample stream `seed`.
    pub fn sample(&self, sampler: Sampler, seed: u64, i: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        draw(self.geo, self.size, sampler, &mut rng)
    }

    /// Scans samples `range` of the stream `seed`.
    pub fn scan_sampled(&self, sampler: Sampler, seed: u64, range: Range<u64>) -> Outcome {
        let mut out = Outcome::default();
        for i in range {
            let members = self.sample(sampler, seed, i);
            let holes = covers::hole_mask(self.geo, members.iter().copied());
            self.examine(&members, &holes, &mut out);
        }
        out
    }

    /// Whole scan, single-threaded.
    pub fn run(&self, mode: Mode, seed: u64, budget: u128) -> Result<Outcome> {
        match mode {
            Mode::Exhaustive => {
                self.check_budget(budget)?;
                Ok(self.scan_exhaustive(0..self.exhaustive_count()))
            }
            Mode::Sampled { samples, sampler } => Ok(self.scan_sampled(sampler, seed, 0..samples)),
        }
    }
}

fn draw(geo: &Geometry, size: usize, sampler: Sampler, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let theta = geo.theta();
    let mut v: Vec<usize> = match sampler {
        Sampler::Uniform => index::sample(rng, theta, size).into_vec(),
        Sampler::NearPencil => {
            let q = geo.q() as usize;
            let pair = index::sample(rng, theta, 2);
            let full = covers::pencil_of_pair(geo, pair.index(0), pair.index(1)).expect("distinct");
            let mut chosen = full.clone();
            let drop = rng.gen_range(1..=3usize.min(q + 1));
            for _ in 0..drop {
                let k = rng.gen_range(0..chosen.len());
                chosen.swap_remove(k);
            }
            chosen.truncate(size);
            while chosen.len() < size {
                let h = rng.gen_range(0..theta);
                if !chosen.contains(&h) && !full.contains(&h) {
                    chosen.push(h);
                }
            }
            chosen
        }
    };
    v.sort_unstable();
    v
}

/// Every essential point of a blocking set of size q + a + 1 <= 2q lies on
/// at least `q^(n-1) - a q^(n-2)` tangent hyperplanes.
pub fn verify_tangent_bound(geo: &Geometry, b: &PointSet) -> Result<Outcome> {
    require_plane_or_higher(geo)?;
    let q = geo.q() as usize;
    if b.len() > 2 * q {
        return Err(Error::Parameter(format!("|B| = {} exceeds 2q = {}", b.len(), 2 * q)));
    }
    if !covers::is_blocking_set(geo, b)? {
        return Err(Error::NotABlockingSet);
    }
    let a = b.len() as i64 - q as i64 - 1;
    let bound = hole_lower_bound(geo.n(), geo.q(), a);
    let mask = b.mask(geo);
    let mut out = Outcome::default();
    for p in b.iter() {
        let t = covers::tangents_with_mask(geo, &mask, p).len();
        if t == 0 {
            continue;
        }
        out.instances_checked += 1;
        out.hypothesis_met_count += 1;
        out.observe(t as u64);
        if (t as i64) < bound {
            out.record(Violation::Tangent { point: p, tangents: t, bound });
        }
    }
    Ok(out)
}

/// Largest cover size with a guaranteed unique minimal subcover.
pub fn reduction_size_limit(n: usize, q: u32) -> usize {
    if n == 2 {
        2 * q as usize
    } else {
        2 * q as usize - 1
    }
}

/// A seeded random cover of at most [`reduction_size_limit`] hyperplanes.
///
/// Half the trials start from a pencil with one or two members removed and
/// patch the holes with random hyperplanes through them; the rest (and any
/// patch that overruns the size limit) take a whole pencil. Random extra
/// hyperplanes then fill up to a random size within the limit.
pub fn random_small_cover(geo: &Geometry, rng: &mut ChaCha8Rng) -> PartialCover {
    let theta = geo.theta();
    let limit = reduction_size_limit(geo.n(), geo.q());
    let pair = index::sample(rng, theta, 2);
    let pencil = covers::pencil_of_pair(geo, pair.index(0), pair.index(1)).expect("distinct");
    let mut chosen: Vec<usize> = pencil.clone();
    if rng.gen_bool(0.5) {
        let mut patched = pencil.clone();
        for _ in 0..rng.gen_range(1..=2usize) {
            let k = rng.gen_range(0..patched.len());
            patched.swap_remove(k);
        }
        loop {
            let holes = covers::hole_mask(geo, patched.iter().copied());
            let Some(p) = bits::ones(&holes).nth(rng.gen_range(0..bits::count(&holes).max(1))) else {
                break;
            };
            let through = geo.hyperplanes_through(p);
            patched.push(through[rng.gen_range(0..through.len())] as usize);
            if patched.len() > limit {
                break;
            }
        }
        if patched.len() <= limit {
            chosen = patched;
        }
    }
    let target = rng.gen_range(chosen.len()..=limit.max(chosen.len()));
    while chosen.len() < target {
        let h = rng.gen_range(0..theta);
        if !chosen.contains(&h) {
            chosen.push(h);
        }
    }
    PartialCover::new(geo, chosen).expect("distinct members")
}

/// Reduces seeded random covers within the uniqueness range under the
/// default order and `orders` random orders; all results must agree.
pub fn verify_reduction_uniqueness(geo: &Geometry, trials: Range<u64>, seed: u64, orders: usize) -> Outcome {
    let mut out = Outcome::default();
    for t in trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let cover = random_small_cover(geo, &mut rng);
        let reference = covers::minimal_reduce(geo, &cover).expect("generated sets are covers");
        out.instances_checked += 1;
        if reference.uniqueness_guaranteed {
            out.hypothesis_met_count += 1;
        }
        out.observe(cover.len() as u64);
        for _ in 0..orders {
            let r = covers::minimal_reduce_with(geo, &cover, |c| rng.gen_range(0..c.len())).expect("cover");
            if r.cover != reference.cover {
                out.record(Violation::Reduction {
                    hyperplanes: cover.iter().collect(),
                    expected: reference.cover.iter().collect(),
                    found: r.cover.iter().collect(),
                });
                break;
            }
        }
    }
    out
}

/// Lazily enumerated hyperplane sets of a fixed size.
pub struct CoverStream<'g> {
    geo: &'g Geometry,
    inner: StreamState,
}

enum StreamState {
    Exhaustive { current: Option<Vec<usize>> },
    Sampled { sampler: Sampler, seed: u64, next: u64, end: u64, size: usize },
}

/// Every `size`-subset of hyperplanes once in co-lex order, or `samples`
/// seeded draws.
pub fn enumerate_covers(geo: &Geometry, size: usize, mode: Mode, seed: u64, budget: u128) -> Result<CoverStream<'_>> {
    if size > geo.theta() {
        return Err(Error::Parameter(format!("size {size} exceeds the {} hyperplanes", geo.theta())));
    }
    let inner = match mode {
        Mode::Exhaustive => {
            let count = binomial(geo.theta() as u64, size as u64);
            if count > budget {
                return Err(Error::BudgetExceeded {
                    what: format!("exhaustive enumeration of {size}-subsets of {} hyperplanes", geo.theta()),
                    count,
                    budget,
                });
            }
            StreamState::Exhaustive { current: Some((0..size).collect()) }
        }
        Mode::Sampled { samples, sampler } => StreamState::Sampled { sampler, seed, next: 0, end: samples, size },
    };
    Ok(CoverStream { geo, inner })
}

impl Iterator for CoverStream<'_> {
    type Item = PartialCover;

    fn next(&mut self) -> Option<PartialCover> {
        let members = match &mut self.inner {
            StreamState::Exhaustive { current } => {
                let c = current.take()?;
                let mut succ = c.clone();
                if colex_next(&mut succ, self.geo.theta()).is_some() {
                    *current = Some(succ);
                }
                c
            }
            StreamState::Sampled { sampler, seed, next, end, size } => {
                if *next >= *end {
                    return None;
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(*next);
                *next += 1;
                draw(self.geo, *size, *sampler, &mut rng)
            }
        };
        Some(PartialCover::new(self.geo, members).expect("distinct indices"))
    }
}
