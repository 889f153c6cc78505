//! Acceptance checks, one line per criterion.
//!
//! Expected counts come from the closed-form formulas or from the
//! reference implementation in `oracle`, never from the library itself.

mod oracle;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use oracle::{binomial, Field, Space};
use pgcover::driver;
use pgcover_core::constructions::{self, Kind, Recipe};
use pgcover_core::covers;
use pgcover_core::verify::{self, HoleScan, Mode, Sampler, Theorem};
use pgcover_core::{FieldElement, FieldSpec, Geometry, PartialCover, PointSet};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_space(geo: &Geometry) -> Space {
    let f = geo.field();
    Space::new(geo.n(), Field::new(f.p(), f.h(), f.modulus()))
}

/// Library hyperplane indices translated to oracle indices.
fn translate(geo: &Geometry, space: &Space, idx: impl IntoIterator<Item = usize>) -> Vec<usize> {
    idx.into_iter().map(|i| space.index(&geo.hyperplane(i).reps())).collect()
}

fn hole_bound(n: usize, q: u32, a: usize) -> i64 {
    (q as i64).pow(n as u32 - 1) - a as i64 * (q as i64).pow(n as u32 - 2)
}

const SHARP_CASES: [(usize, u32, usize); 6] = [(2, 5, 0), (2, 5, 1), (2, 7, 2), (2, 17, 5), (3, 3, 1), (3, 5, 2)];
const SEEDS: std::ops::Range<u64> = 0..5;

fn sharp_holes() -> Check {
    let mut built = 0;
    for (n, q, a) in SHARP_CASES {
        let geo = Geometry::with_order(n, q).map_err(|e| e.to_string())?;
        let space = oracle_space(&geo);
        for seed in SEEDS {
            let c = Recipe::new(Kind::SharpHoles, n, geo.field().clone(), a, seed)
                .build(&geo)
                .map_err(|e| format!("({n},{q},{a}): {e}"))?;
            let members = translate(&geo, &space, c.cover.iter());
            let holes = space.holes(&members);
            let want = hole_bound(n, q, a);
            ensure(holes.len() as i64 == want, || {
                format!("({n},{q},{a}) seed {seed}: {} holes, expected {want}", holes.len())
            })?;
            let h_lib = c.provenance.hole_hyperplane.ok_or("no hole hyperplane recorded")?;
            let h = space.index(&geo.hyperplane(h_lib).reps());
            ensure(!members.contains(&h), || format!("({n},{q},{a}): H is in the cover"))?;
            ensure(holes.iter().all(|&p| space.on(p, h)), || format!("({n},{q},{a}): a hole lies off H"))?;
            // H completes the q pencil members to a full pencil
            let extras = translate(&geo, &space, c.provenance.extras.iter().copied());
            let mut full: Vec<usize> = members.iter().copied().filter(|m| !extras.contains(m)).collect();
            full.push(h);
            ensure(extras.len() == a && full.len() == q as usize + 1 && space.rank_of(&full) == 2, || {
                format!("({n},{q},{a}): H plus the pencil members is not a pencil")
            })?;
            built += 1;
        }
    }
    Ok(format!("{built} constructions, hole counts exact, all holes in H"))
}

fn two_line_holes() -> Check {
    let mut report = Vec::new();
    for q in [5u32, 8, 11, 17] {
        let geo = Geometry::with_order(2, q).map_err(|e| e.to_string())?;
        let space = oracle_space(&geo);
        let a = ((q - 2) / 3) as usize;
        ensure(3 * a + 2 == q as usize, || format!("q = {q} not on the boundary"))?;
        for seed in SEEDS {
            let c = Recipe::new(Kind::TwoLineHoles, 2, geo.field().clone(), a, seed)
                .build(&geo)
                .map_err(|e| format!("q={q}: {e}"))?;
            ensure(c.cover.len() == q as usize + a, || format!("q={q}: {} lines", c.cover.len()))?;
            let members = translate(&geo, &space, c.cover.iter());
            let holes = space.holes(&members);
            let want = q as usize + a;
            ensure(holes.len() == want && want == 2 * (q as usize - a - 1), || {
                format!("q={q} seed {seed}: {} holes, expected {want}", holes.len())
            })?;
            ensure(c.provenance.dropped.len() == 2, || "two dropped lines expected".into())?;
            let m: Vec<usize> = translate(&geo, &space, c.provenance.dropped.iter().copied());
            let on1 = holes.iter().filter(|&&p| space.on(p, m[0])).count();
            let on2 = holes.iter().filter(|&&p| space.on(p, m[1])).count();
            let both = holes.iter().filter(|&&p| space.on(p, m[0]) && space.on(p, m[1])).count();
            let half = q as usize - a - 1;
            ensure(on1 == half && on2 == half && both == 0, || {
                format!("q={q} seed {seed}: split {on1}/{on2} (shared {both}), expected {half}/{half}")
            })?;
            ensure(space.rank_of(&holes) == 3, || format!("q={q}: oracle finds the holes collinear"))?;
            let lib_holes = covers::holes(&geo, &c.cover).map_err(|e| e.to_string())?;
            ensure(!covers::holes_collinear(&geo, &lib_holes).map_err(|e| e.to_string())?, || {
                format!("q={q}: library reports collinear holes")
            })?;
        }
        report.push(format!("q={q}: {} holes", q as usize + a));
    }
    Ok(report.join(", "))
}

fn exhaustive_holes() -> Check {
    let geo = Geometry::with_order(2, 5).map_err(|e| e.to_string())?;
    let scan = HoleScan::new(&geo, Theorem::Holes, 0).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = scan.run(Mode::Exhaustive, 0, verify::DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let lib_time = start.elapsed();
    let total = binomial(31, 5);
    ensure(total == 169_911, || format!("C(31,5) = {total}"))?;
    ensure(out.instances_checked == total, || format!("{} instances, expected {total}", out.instances_checked))?;
    ensure(out.violation_count == 0, || format!("{} violations: {:?}", out.violation_count, out.violations.first()))?;

    // independent sweep: every qualifying 5-set has exactly 5 collinear holes
    let space = oracle_space(&geo);
    let lines = space.size();
    let mut qualifying = 0u64;
    let mut visited = 0u64;
    let mut c = [0usize, 1, 2, 3, 4];
    loop {
        visited += 1;
        let holes = space.holes(&c);
        if !holes.is_empty() && holes.len() <= 5 {
            qualifying += 1;
            ensure(holes.len() == 5, || format!("{c:?}: {} holes", holes.len()))?;
            ensure((0..lines).any(|l| holes.iter().all(|&p| space.on(p, l))), || format!("{c:?}: holes not collinear"))?;
        }
        // next 5-subset in lexicographic order
        let mut i = 4;
        loop {
            if c[i] < lines - 5 + i {
                break;
            }
            if i == 0 {
                i = usize::MAX;
                break;
            }
            i -= 1;
        }
        if i == usize::MAX {
            break;
        }
        c[i] += 1;
        for j in i + 1..5 {
            c[j] = c[j - 1] + 1;
        }
    }
    ensure(visited == total, || format!("oracle visited {visited}"))?;
    ensure(qualifying == out.hypothesis_met_count, || {
        format!("library found {} qualifying, oracle {qualifying}", out.hypothesis_met_count)
    })?;
    ensure(lib_time < Duration::from_secs(10), || format!("single-threaded scan took {lib_time:?}"))?;
    Ok(format!(
        "{total} subsets, {qualifying} qualifying, 0 violations, scan {:.3} s single-threaded",
        lib_time.as_secs_f64()
    ))
}

fn tangent_bound() -> Check {
    let mut checked = 0;
    for (n, q, a) in SHARP_CASES {
        let geo = Geometry::with_order(n, q).map_err(|e| e.to_string())?;
        let space = oracle_space(&geo);
        for seed in SEEDS {
            let c = Recipe::new(Kind::SharpHoles, n, geo.field().clone(), a, seed)
                .build(&geo)
                .map_err(|e| e.to_string())?;
            let b = constructions::dual_construction(&geo, &c).map_err(|e| e.to_string())?;
            ensure(b.len() == q as usize + a + 1 && b.len() <= 2 * q as usize, || {
                format!("({n},{q},{a}): |B| = {}", b.len())
            })?;
            let out = verify::verify_tangent_bound(&geo, &b).map_err(|e| e.to_string())?;
            ensure(out.passed(), || format!("({n},{q},{a}): {:?}", out.violations.first()))?;

            let pts: Vec<usize> = b.iter().map(|i| space.index(&geo.point(i).reps())).collect();
            let bound = hole_bound(n, q, a);
            let counts: Vec<usize> = pts.iter().map(|&p| space.tangents(&pts, p)).collect();
            let essential: Vec<usize> = counts.iter().copied().filter(|&t| t > 0).collect();
            ensure(essential.iter().all(|&t| t as i64 >= bound), || {
                format!("({n},{q},{a}) seed {seed}: tangent counts {counts:?} below {bound}")
            })?;
            ensure(out.instances_checked == essential.len() as u64, || {
                format!("({n},{q},{a}): library saw {} essential points, oracle {}", out.instances_checked, essential.len())
            })?;
            ensure(out.min_observed == essential.iter().min().map(|&m| m as u64), || {
                format!("({n},{q},{a}): minimum tangent count differs")
            })?;
            if (n, q, a) == (2, 5, 0) {
                ensure(space.rank_of(&pts) == 2, || "a = 0 dual is not a line".into())?;
                ensure(counts.iter().all(|&t| t == 5), || format!("line tangents {counts:?}, expected 5 each"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} dual blocking sets, bound met; line case has 5 tangents per point"))
}

/// Every minimal subcover of `members` by subset enumeration.
fn minimal_subcovers(space: &Space, members: &[usize]) -> Vec<Vec<usize>> {
    let k = members.len();
    let full: Vec<u64> = space.covered(&(0..space.size()).collect::<Vec<_>>());
    let mut masks: Vec<Vec<u64>> = vec![vec![0; space.words]; 1 << k];
    let mut covers = vec![false; 1 << k];
    for s in 1usize..1 << k {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let m: Vec<u64> = masks[rest].iter().zip(&space.incidence[members[low]]).map(|(x, y)| x | y).collect();
        covers[s] = m == full;
        masks[s] = m;
    }
    (1usize..1 << k)
        .filter(|&s| covers[s] && (0..k).all(|i| s >> i & 1 == 0 || !covers[s & !(1 << i)]))
        .map(|s| {
            let mut v: Vec<usize> = (0..k).filter(|&i| s >> i & 1 == 1).map(|i| members[i]).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

fn unique_reduction() -> Check {
    let seed = 2024;
    let mut parts = Vec::new();
    for (n, q, limit) in [(2usize, 7u32, 14usize), (3, 3, 5)] {
        let geo = Geometry::with_order(n, q).map_err(|e| e.to_string())?;
        let space = oracle_space(&geo);
        let out = verify::verify_reduction_uniqueness(&geo, 0..200, seed, verify::DEFAULT_REMOVAL_ORDERS);
        ensure(out.instances_checked == 200, || format!("PG({n},{q}): {} trials", out.instances_checked))?;
        ensure(out.violation_count == 0, || format!("PG({n},{q}): {:?}", out.violations.first()))?;
        ensure(out.hypothesis_met_count == 200, || format!("PG({n},{q}): trial outside the size bound"))?;
        let mut largest = 0;
        for t in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let cover = verify::random_small_cover(&geo, &mut rng);
            largest = largest.max(cover.len());
            ensure(cover.len() <= limit, || format!("PG({n},{q}) trial {t}: size {}", cover.len()))?;
            let members = translate(&geo, &space, cover.iter());
            ensure(space.holes(&members).is_empty(), || format!("PG({n},{q}) trial {t}: not a cover"))?;
            let minimal = minimal_subcovers(&space, &members);
            ensure(minimal.len() == 1, || format!("PG({n},{q}) trial {t}: {} minimal subcovers", minimal.len()))?;
            let r = covers::minimal_reduce(&geo, &cover).map_err(|e| e.to_string())?;
            let mut got = translate(&geo, &space, r.cover.iter());
            got.sort_unstable();
            ensure(got == minimal[0], || format!("PG({n},{q}) trial {t}: reduction differs from the oracle"))?;
        }
        parts.push(format!("PG({n},{q}): 200 trials, sizes <= {largest}"));
    }
    Ok(format!("{}, 20 orders each, all agree", parts.join("; ")))
}

/// Oracle structure test in the plane: a point on exactly q of the lines.
fn concurrent_q(space: &Space, lines: &[usize], q: usize) -> bool {
    (0..space.size()).any(|p| lines.iter().filter(|&&l| space.on(p, l)).count() == q)
}

fn structure() -> Check {
    let start = Instant::now();
    let geo = Geometry::with_order(2, 5).map_err(|e| e.to_string())?;
    let scan = HoleScan::new(&geo, Theorem::Structure, 0).map_err(|e| e.to_string())?;
    let out = driver::scan(&scan, Mode::Exhaustive, 0, verify::DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(out.instances_checked == binomial(31, 5), || format!("{} instances", out.instances_checked))?;
    ensure(out.violation_count == 0, || format!("PG(2,5): {:?}", out.violations.first()))?;
    // 31 points times 6 ways to leave out one line through it
    ensure(out.hypothesis_met_count == 31 * 6, || format!("{} qualifying in PG(2,5)", out.hypothesis_met_count))?;
    let mut parts = vec![format!("PG(2,5) exhaustive: {} qualifying", out.hypothesis_met_count)];

    let geo = Geometry::with_order(2, 17).map_err(|e| e.to_string())?;
    let space = oracle_space(&geo);
    let scan = HoleScan::new(&geo, Theorem::Structure, 2).map_err(|e| e.to_string())?;
    ensure(scan.hypothesis_met(), || "a = 2 is inside the hypothesis for q = 17".into())?;
    for sampler in [Sampler::Uniform, Sampler::NearPencil] {
        let samples = 100_000;
        let out = driver::scan(&scan, Mode::Sampled { samples, sampler }, 42, 0).map_err(|e| e.to_string())?;
        ensure(out.instances_checked == samples, || format!("{} samples", out.instances_checked))?;
        ensure(out.violation_count == 0, || format!("q=17 {sampler:?}: {:?}", out.violations.first()))?;
        let mut qualifying = 0;
        for i in 0..samples {
            let members = scan.sample(sampler, 42, i);
            let lines = translate(&geo, &space, members);
            let h = space.holes(&lines).len();
            if (1..=17).contains(&h) {
                qualifying += 1;
                ensure(concurrent_q(&space, &lines, 17), || format!("q=17 sample {i}: no 17 concurrent lines"))?;
            }
        }
        ensure(qualifying == out.hypothesis_met_count, || {
            format!("q=17 {sampler:?}: library {} qualifying, oracle {qualifying}", out.hypothesis_met_count)
        })?;
        parts.push(format!("q=17 {}: {qualifying} of {samples} qualifying", pgcover::report::sampler_name(sampler)));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(parts.join("; "))
}

const FIELD_ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn field_axioms(q: u32) -> Result<(), String> {
    let f = FieldSpec::with_order(q).map_err(|e| e.to_string())?;
    let o = Field::new(f.p(), f.h(), f.modulus());
    let el: Vec<FieldElement> = f.elements().collect();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    for &x in &el {
        ensure(f.add(x, zero) == x && f.mul(x, one) == x, || format!("GF({q}): identities at {x:?}"))?;
        ensure(f.add(x, f.neg(x)) == zero, || format!("GF({q}): additive inverse of {x:?}"))?;
        if x != zero {
            let inv = f.inv(x).map_err(|e| e.to_string())?;
            ensure(f.mul(x, inv) == one, || format!("GF({q}): inverse of {x:?}"))?;
            ensure(f.pow(x, q as i64 - 1).map_err(|e| e.to_string())? == one, || format!("GF({q}): order of {x:?}"))?;
        }
        for &y in &el {
            ensure(f.add(x, y) == f.add(y, x) && f.mul(x, y) == f.mul(y, x), || format!("GF({q}): commutativity"))?;
            ensure(f.mul(x, y).rep() == o.mul(x.rep(), y.rep()), || format!("GF({q}): {x:?}*{y:?} differs from oracle"))?;
            ensure(f.add(x, y).rep() == o.add(x.rep(), y.rep()), || format!("GF({q}): {x:?}+{y:?} differs from oracle"))?;
            for &z in &el {
                ensure(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)), || format!("GF({q}): additive associativity"))?;
                ensure(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)), || format!("GF({q}): associativity"))?;
                ensure(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)), || format!("GF({q}): distributivity"))?;
            }
        }
    }
    Ok(())
}

fn random_set(geo: &Geometry, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let k = rng.gen_range(0..=geo.theta().min(3 * geo.q() as usize));
    index::sample(rng, geo.theta(), k).into_vec()
}

fn properties() -> Check {
    for q in FIELD_ORDERS {
        field_axioms(q)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut instances = 0;
    for (n, q) in [(2usize, 2u32), (2, 3), (2, 4), (2, 5), (2, 7), (2, 8), (2, 9), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3)] {
        let geo = Geometry::with_order(n, q).map_err(|e| e.to_string())?;
        let space = oracle_space(&geo);
        let theta_hyp = space.theta(n as u32 - 1) as usize;
        ensure(space.size() as u64 == space.theta(n as u32), || format!("PG({n},{q}): oracle size"))?;
        for _ in 0..300 {
            let idx = random_set(&geo, &mut rng);
            let s = PartialCover::new(&geo, idx.iter().copied()).map_err(|e| e.to_string())?;
            let tag = || format!("PG({n},{q}) {idx:?}");

            // duality
            let b = covers::dualize_cover(&s);
            ensure(covers::dualize_points(&b) == s, || format!("{}: dualize twice", tag()))?;
            let is_cover = covers::is_cover(&geo, &s).map_err(|e| e.to_string())?;
            ensure(is_cover == covers::is_blocking_set(&geo, &b).map_err(|e| e.to_string())?, || {
                format!("{}: cover and blocking set disagree", tag())
            })?;
            let back = PointSet::new(&geo, b.iter()).map_err(|e| e.to_string())?;
            ensure(covers::dualize_cover(&covers::dualize_points(&back)) == back, || format!("{}: point duality", tag()))?;

            // double counting
            let mult = covers::multiplicities(&geo, &s);
            let total: usize = mult.iter().map(|&m| m as usize).sum();
            ensure(total == s.len() * theta_hyp, || format!("{}: sum of multiplicities {total}", tag()))?;

            // holes and covered points partition the space, matching the oracle
            let holes = covers::holes(&geo, &s).map_err(|e| e.to_string())?;
            let covered = (0..geo.theta()).filter(|&p| mult[p] > 0).count();
            ensure(holes.len() + covered == geo.theta(), || format!("{}: partition", tag()))?;
            ensure(holes.iter().all(|p| mult[p] == 0), || format!("{}: hole with positive multiplicity", tag()))?;
            let members = translate(&geo, &space, s.iter());
            let mut want: Vec<Vec<u32>> = space.holes(&members).into_iter().map(|p| space.vectors[p].clone()).collect();
            let mut got: Vec<Vec<u32>> = holes.iter().map(|p| geo.point(p).reps()).collect();
            want.sort();
            got.sort();
            ensure(got == want, || format!("{}: holes differ from the oracle", tag()))?;
            ensure(is_cover == holes.is_empty(), || format!("{}: is_cover", tag()))?;

            // monotonicity
            if let Some(extra) = (0..geo.theta()).find(|h| !s.contains(*h)) {
                let bigger = s.with(extra).map_err(|e| e.to_string())?;
                let after = covers::holes(&geo, &bigger).map_err(|e| e.to_string())?;
                ensure(after.len() <= holes.len() && after.is_subset_of(&holes), || {
                    format!("{}: adding {extra} grew the holes", tag())
                })?;
            }
            instances += 1;
        }
    }
    Ok(format!("field axioms for q in {FIELD_ORDERS:?}; {instances} random hyperplane sets"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 7] = [
        ("1 sharp construction hole counts", Duration::from_secs(5), sharp_holes),
        ("2 two-line boundary configuration", Duration::from_secs(5), two_line_holes),
        ("3 exhaustive PG(2,5) hole theorem", Duration::from_secs(10), exhaustive_holes),
        ("4 tangent bound on dual constructions", Duration::from_secs(10), tangent_bound),
        ("5 unique reduction", Duration::from_secs(60), unique_reduction),
        ("6 pencil structure", Duration::from_secs(300), structure),
        ("7 property suite", Duration::from_secs(60), properties),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed <= limit => "PASS",
            _ => "FAIL",
        };
        let detail = match result {
            Ok(d) if elapsed <= limit => d,
            Ok(d) => format!("{d}; over the {} s limit", limit.as_secs()),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {name:<40} {verdict} {:>8.2} s  {detail}", elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
