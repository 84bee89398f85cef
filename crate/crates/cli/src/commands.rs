use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use a6arc::field::minimal_degree;
use a6arc::orbit::{
    arc_from_secants, collinear_triples_brute, completeness_brute, completeness_from_secants, construct_orbit,
    export_mds_from, line_spectrum_full_scan, secant_lines, spectrum_from_secants, ORBIT_SIZE,
};
use a6arc::symcalc::cache::{load_cache, write_cache};
use a6arc::symcalc::{compute_pairs, reference_symbolic_orbit};
use a6arc::{CompletenessMethod, DeltaReport, Error, OrbitResult, PrimeStatus, ProjPoint, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{Params, RunReport};

#[derive(Clone, Copy, Debug, Default)]
pub struct Opts {
    pub oracle: bool,
}

/// A finished command: the report plus its text and CSV renderings.
pub struct Run {
    pub report: RunReport,
    pub text: String,
    pub csv: String,
}

/// Single-field commands work over GF(p) unless `-r` asks for GF(p^2).
fn resolve_degree(r: Option<u32>) -> u32 {
    r.unwrap_or(1)
}

fn field_params(orb: &OrbitResult, opts: Opts) -> Params {
    let mut options = BTreeMap::new();
    options.insert("oracle".into(), json!(opts.oracle));
    Params {
        p: Some(orb.base().p()),
        r: Some(orb.base().r()),
        q: Some(orb.base().q()),
        plane_q: Some(orb.plane_q()),
        modulus: Some(orb.plane().modulus_string()),
        options,
    }
}

fn header(orb: &OrbitResult) -> String {
    format!(
        "# q = {}, plane PG(2,{}) over {}\n",
        orb.base().q(),
        orb.plane_q(),
        orb.plane().modulus_string()
    )
}

fn coords(orb: &OrbitResult, pt: &ProjPoint) -> [String; 3] {
    pt.coords().map(|c| orb.plane().format(c))
}

#[derive(Serialize)]
struct OrbitPoint {
    index: usize,
    coords: [String; 3],
    word: String,
}

pub fn orbit(p: u64, r: Option<u32>, opts: Opts) -> Result<Run> {
    let orb = construct_orbit(p, resolve_degree(r))?;
    let points: Vec<OrbitPoint> = orb
        .points
        .iter()
        .zip(&orb.words)
        .enumerate()
        .map(|(index, (pt, w))| OrbitPoint { index, coords: coords(&orb, pt), word: w.to_string() })
        .collect();
    let mut text = header(&orb);
    let mut csv = String::from("index,x,y,z,word\n");
    for pt in &points {
        let [x, y, z] = &pt.coords;
        writeln!(text, "{:>3}  ({x}, {y}, {z})  {}", pt.index, pt.word).unwrap();
        writeln!(csv, "{},{x},{y},{z},{}", pt.index, pt.word).unwrap();
    }
    let results = json!({ "plane_q": orb.plane_q(), "points": points });
    Ok(Run { report: RunReport::new("orbit", field_params(&orb, opts), results), text, csv })
}

#[derive(Serialize, Clone)]
struct Completeness {
    /// Bound on points per line the set is judged against.
    m: usize,
    complete: bool,
    method: String,
    witness: Option<[String; 3]>,
}

#[derive(Serialize, Clone)]
struct CheckResult {
    verdict: String,
    is_arc: bool,
    collinear_triples: usize,
    max_secancy: usize,
    spectrum: BTreeMap<String, u64>,
    completeness: Completeness,
}

fn method_name(m: CompletenessMethod) -> &'static str {
    match m {
        CompletenessMethod::Exhaustive => "exhaustive",
        CompletenessMethod::CountingBound => "counting-bound",
        CompletenessMethod::Trivial => "trivial",
    }
}

fn check_orbit(orb: &OrbitResult, opts: Opts) -> Result<CheckResult> {
    let secants = secant_lines(orb);
    let spectrum = spectrum_from_secants(orb, &secants);
    spectrum.verify_identities(ORBIT_SIZE)?;
    let arc = arc_from_secants(&secants);
    let m = spectrum.max_secancy().max(2);
    let comp = completeness_from_secants(orb, &secants, m)?;
    if opts.oracle {
        if line_spectrum_full_scan(orb) != spectrum {
            return Err(Error::InternalInconsistency("spectrum differs from full-plane scan".into()));
        }
        if collinear_triples_brute(orb) != arc.collinear_triples {
            return Err(Error::InternalInconsistency("collinear triples differ from brute force".into()));
        }
        if completeness_brute(orb, m) != comp.complete {
            return Err(Error::InternalInconsistency("completeness differs from brute force".into()));
        }
    }
    let status = if comp.complete { "complete" } else { "incomplete" };
    let verdict = if arc.is_arc {
        format!("{ORBIT_SIZE}-arc, {status}")
    } else {
        format!("set of type {}, {status} as a ({ORBIT_SIZE},{m})-set", spectrum.type_string())
    };
    Ok(CheckResult {
        verdict,
        is_arc: arc.is_arc,
        collinear_triples: arc.collinear_triples.len(),
        max_secancy: spectrum.max_secancy(),
        spectrum: spectrum.counts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        completeness: Completeness {
            m,
            complete: comp.complete,
            method: method_name(comp.method).into(),
            witness: comp.witness.map(|w| coords(orb, &w)),
        },
    })
}

pub fn check(p: u64, r: Option<u32>, opts: Opts) -> Result<Run> {
    let orb = construct_orbit(p, resolve_degree(r))?;
    let res = check_orbit(&orb, opts)?;
    let mut text = header(&orb);
    writeln!(text, "{}", res.verdict).unwrap();
    writeln!(text, "{:>4}  {:>10}", "m", "lines").unwrap();
    let mut csv = String::from("m,lines\n");
    let mut rows: Vec<(usize, u64)> = res.spectrum.iter().map(|(k, v)| (k.parse().unwrap(), *v)).collect();
    rows.sort_unstable();
    for (m, c) in rows {
        writeln!(text, "{m:>4}  {c:>10}").unwrap();
        writeln!(csv, "{m},{c}").unwrap();
    }
    if let Some([x, y, z]) = &res.completeness.witness {
        writeln!(text, "witness ({x}, {y}, {z}) extends the set").unwrap();
    }
    let results = serde_json::to_value(&res).expect("serializable");
    Ok(Run { report: RunReport::new("check", field_params(&orb, opts), results), text, csv })
}

#[derive(Serialize)]
struct ScanRow {
    p: u64,
    r: u32,
    q: u64,
    plane_q: u64,
    #[serde(flatten)]
    check: CheckResult,
}

fn primes_upto(n: u64) -> Vec<u64> {
    (7..=n).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

pub fn scan(p_max: u64, opts: Opts) -> Result<Run> {
    let rows: Vec<ScanRow> = primes_upto(p_max)
        .into_par_iter()
        .filter_map(|p| minimal_degree(p).map(|r| (p, r)))
        .map(|(p, r)| {
            let orb = construct_orbit(p, r)?;
            let check = check_orbit(&orb, opts)?;
            Ok(ScanRow { p, r, q: orb.base().q(), plane_q: orb.plane_q(), check })
        })
        .collect::<Result<_>>()?;
    let mut text = format!("{:>5} {:>2} {:>7} {:>8}  verdict\n", "p", "r", "q", "plane");
    let mut csv = String::from("p,r,q,plane_q,is_arc,max_secancy,complete\n");
    for row in &rows {
        writeln!(text, "{:>5} {:>2} {:>7} {:>8}  {}", row.p, row.r, row.q, row.plane_q, row.check.verdict).unwrap();
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            row.p, row.r, row.q, row.plane_q, row.check.is_arc, row.check.max_secancy, row.check.completeness.complete
        )
        .unwrap();
    }
    let non_arcs: Vec<u64> = rows.iter().filter(|r| !r.check.is_arc).map(|r| r.p).collect();
    writeln!(text, "non-arcs at p = {non_arcs:?}").unwrap();
    let mut options = BTreeMap::new();
    options.insert("p_max".into(), json!(p_max));
    options.insert("oracle".into(), json!(opts.oracle));
    let params = Params { options, ..Params::default() };
    let results = json!({ "rows": rows, "non_arcs": non_arcs });
    Ok(Run { report: RunReport::new("scan", params, results), text, csv })
}

fn status_name(s: &PrimeStatus) -> String {
    match s {
        PrimeStatus::OutOfHypothesis => "out-of-hypothesis".into(),
        PrimeStatus::Confirmed { r } => format!("confirmed (r={r})"),
        PrimeStatus::Spurious { r } => format!("spurious (r={r})"),
        PrimeStatus::Untested => "untested".into(),
    }
}

fn strings<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

pub fn delta(cache: Option<&Path>, opts: Opts) -> Result<Run> {
    let (pairs, cache_state) = match cache {
        Some(path) if path.exists() => (load_cache(path)?, Some("warm")),
        Some(path) => {
            let pairs = compute_pairs(&reference_symbolic_orbit()?)?;
            write_cache(path, &pairs)?;
            (pairs, Some("cold"))
        }
        None => (compute_pairs(&reference_symbolic_orbit()?)?, None),
    };
    let rep = DeltaReport::from_pairs(pairs)?;
    if opts.oracle {
        for (p, s) in &rep.status {
            let (r, want_arc) = match *s {
                PrimeStatus::Confirmed { r } => (r, false),
                PrimeStatus::Spurious { r } => (r, true),
                _ => continue,
            };
            let p: u64 = p.try_into().expect("classified primes fit in u64");
            if collinear_triples_brute(&construct_orbit(p, r)?).is_empty() != want_arc {
                return Err(Error::InternalInconsistency(format!("brute force disagrees at p = {p}")));
            }
        }
    }
    let status: BTreeMap<String, String> = rep.status.iter().map(|(p, s)| (p.to_string(), status_name(s))).collect();
    let results = json!({
        "pairs": rep.pairs.len(),
        "delta": strings(&rep.delta),
        "confirmed": strings(rep.confirmed()),
        "spurious": strings(rep.spurious()),
        "out_of_hypothesis": strings(rep.out_of_hypothesis()),
        "untested": strings(rep.untested()),
        "status": status,
    });
    let list = |v: Vec<String>| format!("{{{}}}", v.join(", "));
    let mut text = String::new();
    writeln!(text, "pairs: {}", rep.pairs.len()).unwrap();
    writeln!(text, "delta ({}): {}", rep.delta.len(), list(strings(&rep.delta))).unwrap();
    writeln!(text, "confirmed: {}", list(strings(rep.confirmed()))).unwrap();
    writeln!(text, "spurious: {}", list(strings(rep.spurious()))).unwrap();
    writeln!(text, "out of hypothesis (p < 7): {}", list(strings(rep.out_of_hypothesis()))).unwrap();
    if !rep.untested().is_empty() {
        writeln!(text, "untested: {}", list(strings(rep.untested()))).unwrap();
    }
    let mut csv = String::from("prime,status\n");
    for (p, s) in &status {
        writeln!(csv, "{p},{s}").unwrap();
    }
    let mut options = BTreeMap::new();
    if let Some(path) = cache {
        options.insert("cache".into(), Value::String(path.display().to_string()));
    }
    options.insert("oracle".into(), json!(opts.oracle));
    let params = Params { options, ..Params::default() };
    let mut report = RunReport::new("delta", params, results);
    report.timing.cache = cache_state.map(String::from);
    Ok(Run { report, text, csv })
}

pub fn export_mds(p: u64, r: Option<u32>, out: &Path, opts: Opts) -> Result<Run> {
    let orb = construct_orbit(p, resolve_degree(r))?;
    let spectrum = spectrum_from_secants(&orb, &secant_lines(&orb));
    let code = export_mds_from(&orb, &spectrum)?;
    let csv = code.to_csv();
    std::fs::write(out, &csv)?;
    let mut text = header(&orb);
    writeln!(text, "[{},{},{}] code, generator matrix written to {}", code.n, code.k, code.d, out.display()).unwrap();
    let mut params = field_params(&orb, opts);
    params.options.insert("out".into(), Value::String(out.display().to_string()));
    let results = json!({ "n": code.n, "k": code.k, "d": code.d });
    Ok(Run { report: RunReport::new("export-mds", params, results), text, csv })
}
