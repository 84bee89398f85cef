//! End-to-end acceptance checks. One PASS/FAIL line per criterion; the
//! process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use a6arc::field::{minimal_degree, ElemChoice};
use a6arc::group::{A6_ORDER_HISTOGRAM, GROUP_ORDER};
use a6arc::orbit::{
    arc_check, arc_from_secants, completeness_check, completeness_from_secants, construct_orbit,
    construct_orbit_with, extends, line_spectrum_full_scan, secant_lines, spectrum_from_secants, LineSpectrum,
    ORBIT_SIZE,
};
use a6arc::plane::collinear;
use a6arc::symcalc::cache::{load_cache, write_cache};
use a6arc::symcalc::poly::resultant;
use a6arc::symcalc::{compute_delta, reference_symbolic_orbit, DeltaReport, IntPoly, Var, PAIR_COUNT};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(what: &str, t: Duration, budget: Duration) -> Result<(), String> {
    if t > budget {
        Err(format!("{what} took {t:.2?}, budget {budget:.0?}"))
    } else {
        Ok(())
    }
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// (p, r, plane q, spectrum, completeness of the set at its max secancy)
fn exceptional() -> Vec<(u64, u32, u64, Vec<(usize, u64)>, Option<bool>)> {
    vec![
        (7, 2, 49, vec![(0, 336), (1, 810), (2, 765), (4, 540)], Some(true)),
        (11, 2, 121, vec![(0, 7248), (1, 4320), (2, 3105), (5, 90)], Some(false)),
        (13, 2, 169, vec![(0, 16896), (1, 8730), (2, 2925), (4, 180)], Some(false)),
        (17, 2, 289, vec![(0, 61356), (1, 19170), (2, 2925), (3, 360)], Some(false)),
        (19, 1, 361, vec![(0, 101676), (1, 25650), (2, 3285), (5, 72)], Some(false)),
        (61, 1, 61, vec![(0, 1068), (1, 450), (2, 2025), (4, 180), (6, 60)], None),
        (109, 1, 109, vec![(0, 5736), (1, 2970), (2, 2925), (3, 360)], None),
        (181, 1, 181, vec![(0, 20208), (1, 9450), (2, 2925), (3, 360)], None),
        (229, 1, 229, vec![(0, 35436), (1, 14130), (2, 2925), (4, 180)], None),
        (241, 1, 241, vec![(0, 40008), (1, 15210), (2, 2925), (4, 180)], None),
        (421, 1, 421, vec![(0, 143328), (1, 31050), (2, 2925), (3, 360)], None),
    ]
}

const EXCEPTIONAL_PRIMES: [u64; 11] = [7, 11, 13, 17, 19, 61, 109, 181, 229, 241, 421];

fn group_certification() -> Outcome {
    let want: BTreeMap<u32, usize> = A6_ORDER_HISTOGRAM.into_iter().collect();
    let mut notes = Vec::new();
    for p in [31, 61, 349] {
        let t0 = Instant::now();
        let orb = construct_orbit(p, 1).map_err(err)?;
        let g = &orb.group;
        ensure!(g.order() == GROUP_ORDER, "q={p}: order {}", g.order());
        ensure!(g.order_histogram() == want, "q={p}: histogram {:?}", g.order_histogram());
        let stab = g.point_stabilizer(orb.basepoint());
        ensure!(stab.order() == 4 && stab.is_cyclic(g), "q={p}: stabilizer order {}", stab.order());
        ensure!(orb.points.len() == ORBIT_SIZE, "q={p}: orbit size {}", orb.points.len());
        let t = t0.elapsed();
        within(&format!("q={p}"), t, Duration::from_secs(1))?;
        notes.push(format!("q={p} {t:.0?}"));
    }
    Ok(notes.join(", "))
}

fn exceptional_spectra() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (p, r, q, counts, complete) in exceptional() {
        let t0 = Instant::now();
        let orb = construct_orbit(p, r).map_err(err)?;
        ensure!(orb.plane_q() == q, "p={p} r={r}: plane {} instead of {q}", orb.plane_q());
        let secants = secant_lines(&orb);
        let spectrum = spectrum_from_secants(&orb, &secants);
        spectrum.verify_identities(ORBIT_SIZE).map_err(|e| format!("q={q}: {e}"))?;
        ensure!(spectrum == LineSpectrum::from_pairs(q, &counts), "q={q}: spectrum {:?}", spectrum.counts);
        if let Some(want) = complete {
            let m = spectrum.max_secancy();
            let v = completeness_from_secants(&orb, &secants, m).map_err(err)?;
            ensure!(v.complete == want, "q={q}: complete={} as a (90,{m})-set", v.complete);
            if let Some(w) = &v.witness {
                ensure!(extends(&orb, w, m), "q={q}: witness does not extend");
            }
        }
        let t = t0.elapsed();
        within(&format!("q={q}"), t, Duration::from_secs(5))?;
        slowest = slowest.max(t);
    }
    Ok(format!("11 spectra, identities hold, slowest {slowest:.2?}"))
}

fn arc_verdicts() -> Outcome {
    let t0 = Instant::now();
    let mut non_arcs = Vec::new();
    let mut scanned = 0;
    for p in primes_in(7, 450) {
        let Some(r) = minimal_degree(p) else { continue };
        let orb = construct_orbit(p, r).map_err(err)?;
        scanned += 1;
        if !arc_check(&orb).is_arc {
            non_arcs.push(p);
        }
    }
    let t = t0.elapsed();
    ensure!(non_arcs == EXCEPTIONAL_PRIMES, "non-arcs at p = {non_arcs:?}");
    within("scan", t, Duration::from_secs(120))?;
    Ok(format!("{scanned} primes, non-arcs exactly the 11 exceptional q, {t:.2?}"))
}

fn completeness() -> Outcome {
    let mut notes = Vec::new();
    for (p, r, want) in [(349, 1, true), (409, 1, true), (23, 2, true), (601, 1, true), (661, 1, true), (379, 1, false), (691, 1, false)] {
        let t0 = Instant::now();
        let orb = construct_orbit(p, r).map_err(err)?;
        let q = orb.base().q();
        let secants = secant_lines(&orb);
        ensure!(arc_from_secants(&secants).is_arc, "q={q}: not an arc");
        let v = completeness_from_secants(&orb, &secants, 2).map_err(err)?;
        ensure!(v.complete == want, "q={q}: complete={}", v.complete);
        if let Some(w) = &v.witness {
            ensure!(extends(&orb, w, 2), "q={q}: witness does not extend");
        }
        ensure!(want || v.witness.is_some(), "q={q}: no witness");
        let t = t0.elapsed();
        within(&format!("q={q}"), t, Duration::from_secs(10))?;
        notes.push(format!("q={q} {} {t:.1?}", if want { "complete" } else { "witness ok" }));
    }
    Ok(notes.join(", "))
}

fn delta_pipeline() -> Result<(String, DeltaReport), String> {
    let t0 = Instant::now();
    let sym = reference_symbolic_orbit().map_err(err)?;
    let report = compute_delta(&sym).map_err(err)?;
    let cold = t0.elapsed();
    ensure!(report.pairs.len() == PAIR_COUNT, "{} pairs", report.pairs.len());
    ensure!(report.pairs.iter().all(|r| !r.resultant.is_zero()), "zero resultant");
    let want: Vec<BigUint> = EXCEPTIONAL_PRIMES.iter().map(|&p| BigUint::from(p)).collect();
    ensure!(report.confirmed() == want, "confirmed {:?}", report.confirmed());
    ensure!(want.iter().all(|p| report.delta.contains(p)), "delta misses a confirmed prime");
    within("cold run", cold, Duration::from_secs(600))?;

    let path = std::env::temp_dir().join(format!("a6arc-acceptance-{}.cache", std::process::id()));
    write_cache(&path, &report.pairs).map_err(err)?;
    let t1 = Instant::now();
    let warm = DeltaReport::from_pairs(load_cache(&path).map_err(err)?).map_err(err)?;
    let warm_t = t1.elapsed();
    let _ = std::fs::remove_file(&path);
    ensure!(warm == report, "warm reload differs");
    within("warm run", warm_t, Duration::from_secs(5))?;
    let delta: Vec<String> = report.delta.iter().map(|p| p.to_string()).collect();
    Ok((format!("delta = {{{}}}, cold {cold:.2?}, warm {warm_t:.2?}", delta.join(",")), report))
}

fn coherence(report: &DeltaReport) -> Outcome {
    let fields: Vec<(u64, u32)> =
        primes_in(7, 450).into_iter().filter_map(|p| minimal_degree(p).map(|r| (p, r))).collect();
    let mut orbits = BTreeMap::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut checked, mut draws) = (0, 0);
    while checked < 200 {
        draws += 1;
        ensure!(draws < 100_000, "could not draw 200 samples");
        let (p, r) = fields[rng.gen_range(0..fields.len())];
        let i = rng.gen_range(1..89);
        let j = rng.gen_range(i + 1..90);
        let rec = report.pair(i, j).ok_or("missing pair")?;
        if rec.primes.contains(&BigUint::from(p)) {
            continue;
        }
        if !orbits.contains_key(&p) {
            orbits.insert(p, construct_orbit(p, r).map_err(err)?);
        }
        let orb = &orbits[&p];
        ensure!(
            !collinear(orb.plane(), &orb.points[0], &orb.points[i], &orb.points[j]).map_err(err)?,
            "p={p}: pair ({i},{j}) collinear but p not in its prime set"
        );
        checked += 1;
    }
    for p in EXCEPTIONAL_PRIMES {
        let bp = BigInt::from(p);
        ensure!(
            report.pairs.iter().any(|r| (&r.resultant % &bp).is_zero()),
            "no pair resultant divisible by {p}"
        );
    }
    Ok(format!("200 samples non-collinear ({draws} draws), every exceptional p divides some resultant"))
}

fn oracle_equivalence() -> Outcome {
    for (p, r) in [(7, 2), (61, 1), (109, 1), (11, 2)] {
        let orb = construct_orbit(p, r).map_err(err)?;
        let fast = spectrum_from_secants(&orb, &secant_lines(&orb));
        ensure!(fast == line_spectrum_full_scan(&orb), "q={}: secant and full scan differ", orb.plane_q());
    }
    let mut rng = StdRng::seed_from_u64(7);
    let b = BigInt::from;
    for _ in 0..1000 {
        let (x, y): (i64, i64) = (rng.gen_range(-1_000_000..1_000_000), rng.gen_range(-1_000_000..1_000_000));
        let res = |v: Var| {
            resultant(&v.relation(), &IntPoly::univariate(v, &[b(x), b(y)]), v).as_constant().unwrap_or_default()
        };
        ensure!(res(Var::T) == b(x * x - x * y + y * y), "t closed form fails at ({x},{y})");
        ensure!(res(Var::S) == b(x * x - 3 * y * y), "s closed form fails at ({x},{y})");
        ensure!(res(Var::Z) == b(x * x - 5 * y * y), "z closed form fails at ({x},{y})");
    }
    Ok("secant = full scan for q in {49,61,109,121}; 1000 closed-form resultants agree".into())
}

fn choice_invariance() -> Outcome {
    for p in [31, 61] {
        let mut seen = None;
        for bits in 0..8u8 {
            let choice =
                ElemChoice { conjugate_t: bits & 1 != 0, negate_z: bits & 2 != 0, negate_s: bits & 4 != 0 };
            let orb = construct_orbit_with(p, 1, choice).map_err(err)?;
            let secants = secant_lines(&orb);
            let spectrum = spectrum_from_secants(&orb, &secants);
            let arc = arc_from_secants(&secants).is_arc;
            let m = spectrum.max_secancy();
            let complete = completeness_from_secants(&orb, &secants, m).map_err(err)?.complete;
            let verdict = (spectrum, arc, complete, completeness_check(&orb, 2).map_err(err)?.complete);
            match &seen {
                None => seen = Some(verdict),
                Some(first) => ensure!(*first == verdict, "q={p}: choice {choice:?} changes the verdict"),
            }
        }
    }
    Ok("8 conjugate choices agree at q=31 and q=61".into())
}

fn main() {
    let mut failed = 0;
    let mut report_line = |n: u32, name: &str, out: Outcome| {
        match out {
            Ok(msg) => println!("PASS {n} {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {n} {name}: {msg}");
            }
        }
    };
    report_line(1, "group certification", group_certification());
    report_line(2, "exceptional spectra", exceptional_spectra());
    report_line(3, "arc verdicts", arc_verdicts());
    report_line(4, "completeness", completeness());
    let delta = delta_pipeline();
    let report = delta.as_ref().ok().map(|(_, r)| r.clone());
    report_line(5, "delta pipeline", delta.map(|(msg, _)| msg));
    report_line(
        6,
        "symbolic/numeric coherence",
        report.as_ref().map_or(Err("delta pipeline failed".into()), coherence),
    );
    report_line(7, "oracle equivalence", oracle_equivalence());
    report_line(8, "choice invariance", choice_invariance());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
