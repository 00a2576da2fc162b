use std::collections::BTreeMap;
use std::time::Instant;

use ehall_core::coeff::EvalAssign;
use ehall_core::coproduct::{eq1_decompose, CheckReport, DeltaChecker};
use ehall_core::freealg::{Bidegree, Window};
use ehall_core::relations::{
    enumerate_with, kernel_tensor_trials, membership_minimal, nested_commutator, rank_quotient_exact,
    rank_quotient_seeded, relator_cubic, relator_mixed, relator_quad, relator_r, relator_theta_comm,
    with_retries, Family, Membership, RankReport, Relator,
};
use ehall_core::shuffle::{act_word, eval_rank, rep_check_relator_sets, EvalPointSet, SymRat};
use ehall_core::{Error, Status};
use serde_json::{json, Value};

use crate::config::{Command, Mode, RunConfig};
use crate::report::{Record, Report};

/// Run the configured command and collect its records.
pub fn execute(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let records = match cfg.command {
        Command::Relators => relators(cfg),
        Command::Rank => rank(cfg),
        Command::CheckCubic => check_cubic(cfg),
        Command::CheckR => check_r(cfg),
        Command::CheckDelta => check_delta(cfg),
        Command::Eq1 => eq1(cfg),
        Command::Oracle => oracle(cfg),
        Command::LemmaTensor => lemma_tensor(cfg),
    };
    let mut report = Report::new(cfg.echo(), records);
    report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    report
}

/// Time `f`, keeping the measurement only when timing was requested.
fn timed<T>(cfg: &RunConfig, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let t = Instant::now();
    let out = f();
    (out, cfg.timing.then(|| t.elapsed().as_millis() as u64))
}

fn with_time(mut r: Record, t: Option<u64>) -> Record {
    r.elapsed_ms = t;
    r
}

/// A check that could not be decided.
fn errored(id: String, cfg: &RunConfig, e: &Error) -> Record {
    Record::new(id, cfg.seed, Status::Inconclusive, json!({ "error": e.to_string() }))
}

fn of_relator(r: Record, rel: &Relator) -> Record {
    r.family(rel.family.name(), &rel.params).bidegree(rel.bidegree())
}

fn relators(cfg: &RunConfig) -> Vec<Record> {
    let w = cfg.window;
    enumerate_with(&w, &cfg.params.families)
        .into_iter()
        .map(|rel| {
            let rebuilt = Relator::rebuild(rel.family, &rel.params).ok();
            let ok = rel.elem.is_homogeneous() && w.contains(&rel.elem) && rebuilt.as_ref() == Some(&rel);
            let data = json!({
                "terms": rel.elem.len(),
                "max_theta_weight": rel.max_theta_weight(),
                "elem": rel.elem.to_string(),
            });
            of_relator(
                Record::new(format!("relators/{}", rel.id()), cfg.seed, Status::from_bool(ok), data),
                &rel,
            )
        })
        .collect()
}

fn rank_data(r: &RankReport) -> Value {
    json!({
        "n_words": r.n_words,
        "n_translates": r.n_relators,
        "relator_rank": r.relator_rank,
        "quotient_rank": r.quotient_rank,
    })
}

fn bid_id(b: Bidegree) -> String {
    format!("({},{})", b.n, b.d)
}

fn rank(cfg: &RunConfig) -> Vec<Record> {
    let w = cfg.window;
    let mut out = Vec::new();
    for &b in &cfg.params.bidegrees {
        let base = format!("rank/{}", bid_id(b));
        if cfg.mode == Mode::Exact {
            let (res, t) = timed(cfg, || rank_quotient_exact(b, &w));
            out.push(match res {
                Ok(r) => with_time(
                    Record::new(format!("{base}/exact"), cfg.seed, Status::Pass, rank_data(&r)).bidegree(Some(b)),
                    t,
                ),
                Err(e) => errored(format!("{base}/exact"), cfg, &e).bidegree(Some(b)),
            });
            continue;
        }
        let mut ranks = Vec::new();
        for &p in &cfg.primes {
            let id = format!("{base}/p={p}");
            let (res, t) = timed(cfg, || rank_quotient_seeded(b, &w, p, cfg.seed));
            out.push(match res {
                Ok(r) => {
                    ranks.push(Some(r.quotient_rank));
                    with_time(
                        Record::new(id, cfg.seed, Status::Pass, rank_data(&r)).bidegree(Some(b)).prime(p),
                        t,
                    )
                }
                Err(e) => {
                    ranks.push(None);
                    errored(id, cfg, &e).bidegree(Some(b)).prime(p)
                }
            });
        }
        // Generic points agree on the rank; a disagreement flags a bad point.
        let status = if ranks.iter().any(Option::is_none) {
            Status::Inconclusive
        } else {
            Status::from_bool(ranks.windows(2).all(|x| x[0] == x[1]))
        };
        out.push(
            Record::new(format!("{base}/agree"), cfg.seed, status, json!({ "quotient_ranks": ranks }))
                .bidegree(Some(b)),
        );
    }
    out
}

fn check_cubic(cfg: &RunConfig) -> Vec<Record> {
    cfg.params
        .m
        .iter()
        .map(|m| {
            let (rel, t) = timed(cfg, || relator_cubic(m));
            let want = nested_commutator(m + 1, m + 3, m + 2);
            let data = json!({
                "terms": rel.elem.len(),
                "commutator": format!("[[u[1,{}],u[1,{}]],u[1,{}]]", m + 1, m + 3, m + 2),
            });
            let r = Record::new(
                format!("check-cubic/m={m}"),
                cfg.seed,
                Status::from_bool(rel.elem == want),
                data,
            );
            with_time(of_relator(r, &rel), t)
        })
        .collect()
}

fn membership_record(cfg: &RunConfig, id: String, m: &Membership, th: u32) -> Record {
    match m.certificate() {
        Some(cert) => {
            let verified = cert.verify();
            let status = match verified {
                Ok(true) => Status::Pass,
                Ok(false) => Status::Fail,
                Err(_) => Status::Inconclusive,
            };
            let data = json!({
                "certified": true,
                "verified": verified.unwrap_or(false),
                "th_used": th,
                "exact": cert.exact.is_some(),
                "primes": cert.primes(),
                "n_terms": cert.n_terms(),
                "relators_used": cert.used_relators(),
            });
            Record::new(id, cfg.seed, status, data)
        }
        None => Record::new(
            id,
            cfg.seed,
            Status::Inconclusive,
            json!({ "certified": false, "th_searched": th }),
        ),
    }
}

fn check_r(cfg: &RunConfig) -> Vec<Record> {
    let p = &cfg.params;
    let w = cfg.window;
    type Outcome = Result<(Membership, u32), Error>;
    let mut cache: BTreeMap<Vec<i32>, (Relator, Outcome)> = BTreeMap::new();
    let mut out = Vec::new();
    for m in p.m.iter() {
        for n in p.n.iter() {
            for l in p.l.iter() {
                let rel = relator_r(m, n, l);
                let id = format!("check-R/{}", rel.id());
                if rel.elem.is_zero() {
                    let rec = Record::new(id, cfg.seed, Status::Pass, json!({ "zero": true }));
                    out.push(of_relator(rec, &rel));
                    continue;
                }
                let mut key = vec![m, n, l];
                key.sort_unstable();
                // R is symmetric in its arguments; reuse only on an exact match.
                let shared = cache
                    .get(&key)
                    .filter(|(seen, _)| seen.elem == rel.elem)
                    .map(|(seen, res)| (seen.id(), res.clone()));
                let (res, from, t) = match shared {
                    Some((from, res)) => (res, Some(from), None),
                    None => {
                        let (res, t) = timed(cfg, || {
                            membership_minimal(&rel.elem, &w, 0, w.th_max, &cfg.primes, cfg.seed, &Family::DEFINING)
                        });
                        cache.insert(key, (rel.clone(), res.clone()));
                        (res, None, t)
                    }
                };
                let mut rec = match res {
                    Ok((mem, th)) => membership_record(cfg, id, &mem, th),
                    Err(e) => errored(id, cfg, &e),
                };
                if let Some(from) = from {
                    rec.data["same_element_as"] = json!(from);
                }
                out.push(with_time(of_relator(rec, &rel), t));
            }
        }
    }
    out
}

fn delta_record(cfg: &RunConfig, rel: &Relator, rep: &CheckReport, prime: u64) -> Record {
    let comps: Vec<Value> = rep
        .components
        .iter()
        .map(|c| {
            json!({
                "left": bid_id(c.left),
                "right": bid_id(c.right),
                "terms": c.n_terms,
                "leg_certificate": c.certificate.as_ref().map(|l| l.verified),
                "oracle_zero": c.oracle_zero,
                "status": c.status.as_str(),
            })
        })
        .collect();
    let truncated: Vec<String> = rep
        .truncated
        .iter()
        .map(|(l, r)| format!("{}x{}", bid_id(*l), bid_id(*r)))
        .collect();
    let data = json!({ "components": comps, "truncated": truncated });
    of_relator(
        Record::new(format!("check-delta/{}", rel.id()), cfg.seed, rep.status, data),
        rel,
    )
    .prime(prime)
}

fn check_delta(cfg: &RunConfig) -> Vec<Record> {
    let w = cfg.window;
    let rels = enumerate_with(&w, &cfg.params.families);
    let prime = cfg.primes[0];
    let run = with_retries(prime, cfg.seed, |a: &EvalAssign| {
        let mut checker = DeltaChecker::new(w, a.clone());
        rels.iter()
            .map(|rel| {
                let (rep, t) = timed(cfg, || checker.check(rel));
                rep.map(|r| (r, t))
            })
            .collect::<Result<Vec<_>, Error>>()
    });
    match run {
        Ok(reps) => rels
            .iter()
            .zip(reps)
            .map(|(rel, (rep, t))| with_time(delta_record(cfg, rel, &rep, prime), t))
            .collect(),
        Err(e) => vec![errored("check-delta".into(), cfg, &e).prime(prime)],
    }
}

fn eq1(cfg: &RunConfig) -> Vec<Record> {
    let s = cfg.seed;
    let (dec, t) = timed(cfg, || eq1_decompose(&cfg.window));
    let dec = match dec {
        Ok(d) => d,
        Err(e) => return vec![errored("eq1".into(), cfg, &e)],
    };
    let mut out = vec![
        with_time(
            Record::new(
                "eq1/term1",
                s,
                Status::from_bool(dec.term1_matches()),
                json!({ "terms": dec.term1.len() }),
            ),
            t,
        ),
        Record::new(
            "eq1/sum",
            s,
            Status::from_bool(dec.sums_to_delta()),
            json!({
                "complete_components": dec.split.complete.len(),
                "truncated_components": dec.split.truncated.len(),
            }),
        ),
    ];
    let mut not_complete = Vec::new();
    for (k, ok) in dec.term3_matches(cfg.window.th_max) {
        match ok {
            Some(ok) => out.push(Record::new(
                format!("eq1/term3/k={k}"),
                s,
                Status::from_bool(ok),
                json!({ "weight": k }),
            )),
            None => not_complete.push(k),
        }
    }
    if let Some(sum) = out.iter_mut().find(|r| r.check_id == "eq1/sum") {
        sum.data["term3_weights_not_complete"] = json!(not_complete);
    }
    let (ev, t) = timed(cfg, || dec.e_vanishing(&cfg.primes, s, cfg.params.points));
    match ev {
        Ok(list) => {
            for (key, ok) in list {
                let id = format!("eq1/E/{}x{}", bid_id(key.0), bid_id(key.1));
                let data = json!({ "points": cfg.params.points, "primes": cfg.primes });
                out.push(with_time(Record::new(id, s, Status::from_bool(ok), data), t));
            }
        }
        Err(e) => out.push(errored("eq1/E".into(), cfg, &e)),
    }
    out
}

/// Relators with every parameter in `lo..=hi`, each listed once per symmetry
/// class.
pub fn suite_relators(lo: i32, hi: i32) -> Vec<Relator> {
    let mut out = Vec::new();
    for m in lo.max(1)..=hi {
        for n in (m + 1)..=hi {
            out.extend(relator_theta_comm(m, n).ok());
        }
    }
    for a in lo..=hi {
        for b in a..=hi {
            out.push(relator_quad(a, b));
        }
        for b in lo..=hi {
            out.push(relator_mixed(a, b));
        }
        out.push(relator_cubic(a));
        for b in a..=hi {
            for c in b..=hi {
                out.push(relator_r(a, b, c));
            }
        }
    }
    out.retain(|r| !r.elem.is_zero());
    out
}

fn oracle(cfg: &RunConfig) -> Vec<Record> {
    let p = &cfg.params;
    let s = cfg.seed;
    let mut out = Vec::new();
    let sets: Vec<EvalPointSet> = cfg
        .primes
        .iter()
        .map(|&q| EvalPointSet::new(q, s, p.points, 5))
        .collect();
    for rel in suite_relators(p.range.lo, p.range.hi) {
        let id = format!("oracle/rep/{}", rel.id());
        let (res, t) = timed(cfg, || rep_check_relator_sets(&rel, p.probe_level, &sets));
        let rec = match res {
            Ok(c) => {
                let data = json!({
                    "probes": c.probes,
                    "exact": c.exact,
                    "modular": c.modular,
                    "failures": c.failures,
                });
                Record::new(id, s, Status::from_bool(c.passed()), data)
            }
            Err(e) => errored(id, cfg, &e),
        };
        out.push(with_time(of_relator(rec, &rel), t));
    }
    for &b in &p.bidegrees {
        for &q in &cfg.primes {
            let (rec, t) = timed(cfg, || sandwich(cfg, b, q));
            out.push(with_time(rec, t));
        }
    }
    out
}

/// Upper bound `rank_quotient` against the lower bound from the oracle
/// images of the component's words.
fn sandwich(cfg: &RunConfig, b: Bidegree, prime: u64) -> Record {
    let w: Window = cfg.window;
    let id = format!("oracle/sandwich/{}/p={prime}", bid_id(b));
    let words = w.component_words(b);
    let images: Vec<SymRat> = words.iter().map(|x| act_word(x, &SymRat::one())).collect();
    let pts = EvalPointSet::new(prime, cfg.seed, words.len() + 8, (b.n as usize).max(1));
    let res = rank_quotient_seeded(b, &w, prime, cfg.seed)
        .and_then(|r| Ok((r.quotient_rank, eval_rank(&images, &pts)?)));
    match res {
        Ok((upper, lower)) => Record::new(
            id,
            cfg.seed,
            Status::from_bool(lower <= upper),
            json!({
                "n_words": words.len(),
                "quotient_rank": upper,
                "eval_rank": lower,
                "tight": lower == upper,
            }),
        ),
        Err(e) => errored(id, cfg, &e),
    }
    .bidegree(Some(b))
    .prime(prime)
}

fn lemma_tensor(cfg: &RunConfig) -> Vec<Record> {
    let prime = cfg.primes[0];
    let p = &cfg.params;
    match kernel_tensor_trials(p.trials, p.max_dim, prime, cfg.seed) {
        Ok(reports) => reports
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let data = json!({
                    "dim_v": r.dim_v,
                    "dim_w": r.dim_w,
                    "dim_kernel": r.dim_kernel,
                    "dim_tensor_kernel": r.dim_tensor_kernel,
                    "dim_sum": r.dim_sum,
                });
                Record::new(format!("lemma-tensor/{i:04}"), cfg.seed, Status::from_bool(r.holds()), data)
                    .prime(prime)
            })
            .collect(),
        Err(e) => vec![errored("lemma-tensor".into(), cfg, &e).prime(prime)],
    }
}
