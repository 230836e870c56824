//! Theorem-check suites over resolved instance files.
//!
//! Every check id names exactly one engine operation and runs it over all
//! eligible entities declared in the file.  Checks execute in parallel and
//! the reports are assembled in a fixed canonical order, so output is
//! deterministic across runs.

use crate::adjoint::{check_adjunction, check_slice_adjunction, enrich_adjunction, laxslice_adjunction};
use crate::autoenrich::{
    autoenrich, check_autoenrichment_2functor, check_fundamental_lemma, grave, reconstruct_iso,
};
use crate::chbase::{canonical_normalization, enumerate_monoidal_vnats};
use crate::enriched::check_symmonclosed;
use crate::groth::{
    canonical_cleavage, check_base_index, check_enr_v_agreement, check_split_op2fibration,
    close_base_index, OrdSlice1Cell, OrdSliceObj,
};
use crate::inst::{MonVCatDef, ResolvedInstances};
use crate::report::{EngineError, LawReport, Result};
use crate::smcc::{identity_monoidal, identity_monoidal_nat, whisker_right_nat};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Outcome of one suite check.
#[derive(Debug, Clone)]
pub struct Report {
    pub id: String,
    pub status: Status,
    /// The first violating law instance, with the witnessing cell ids.
    pub counterexample: Option<String>,
    pub millis: u128,
}

/// All check ids in canonical execution and output order.
pub const ALL_CHECKS: &[&str] = &[
    "self-enrichment",
    "pushforward",
    "normalization-uniqueness",
    "reconstruction",
    "fund-lemma",
    "enrichment-2functor",
    "base-index",
    "split-fibration",
    "enr-v-agreement",
    "adjunction",
    "slice-adjunction",
    "enriched-adjunction",
];

/// Result of one check body: pass when no entity fails, skipped when the
/// file declares nothing eligible.
type Outcome = (Status, Option<String>);

fn first_problem(entity: &str, rep: &LawReport) -> Option<String> {
    if let Some(s) = rep.structural.first() {
        return Some(format!("{entity}: {s}"));
    }
    rep.violations
        .first()
        .map(|v| format!("{entity}: law {}: {}", v.law, v.witness))
}

fn over_entities<I, T>(items: I, mut f: impl FnMut(&T) -> Result<Option<String>>) -> Outcome
where
    I: IntoIterator<Item = T>,
{
    let mut any = false;
    for item in items {
        any = true;
        match f(&item) {
            Ok(None) => {}
            Ok(Some(cx)) => return (Status::Fail, Some(cx)),
            Err(e) => return (Status::Fail, Some(format!("{e}"))),
        }
    }
    if any {
        (Status::Pass, None)
    } else {
        (Status::Skipped, None)
    }
}

fn base_of<'a>(r: &'a ResolvedInstances, name: &str) -> Result<&'a crate::smcc::Smcc> {
    r.smccs
        .get(name)
        .ok_or_else(|| EngineError::UnknownId(name.to_string()))
}

fn run_check(id: &str, r: &ResolvedInstances, limits: &Limits) -> Result<Outcome> {
    Ok(match id {
        "self-enrichment" => over_entities(r.smccs.iter(), |(name, v)| {
            let m = autoenrich(v, limits)?;
            Ok(first_problem(name, &check_symmonclosed(v, &m).canonicalize()))
        }),
        "pushforward" => over_entities(
            r.monvcat_defs
                .iter()
                .filter(|(_, def)| matches!(def, MonVCatDef::Push(_, _))),
            |(name, _)| {
                let (base, m) = &r.monvcats[*name];
                let v = base_of(r, base)?;
                Ok(first_problem(name, &check_symmonclosed(v, m).canonicalize()))
            },
        ),
        "normalization-uniqueness" => over_entities(r.monvcats.iter(), |(name, (base, m))| {
            let v = base_of(r, base)?;
            let bundle = canonical_normalization(v, m, limits)?;
            let found = enumerate_monoidal_vnats(v, &bundle.u, &bundle.u, limits)?;
            Ok(if found.len() == 1 {
                None
            } else {
                Some(format!(
                    "{name}: {} monoidal transformations from the normalization to itself",
                    found.len()
                ))
            })
        }),
        "reconstruction" => over_entities(r.monvcats.iter(), |(name, (base, m))| {
            let v = base_of(r, base)?;
            let rec = reconstruct_iso(v, m, limits)?;
            Ok(first_problem(name, &rec.report))
        }),
        "fund-lemma" => over_entities(r.functors.iter(), |(name, g)| {
            let gr = grave(g, limits)?;
            for monoidal in [false, true] {
                let rep = check_fundamental_lemma(&g.target, &gr, monoidal, limits);
                if let Some(cx) = first_problem(name, &rep) {
                    return Ok(Some(cx));
                }
            }
            Ok(None)
        }),
        "enrichment-2functor" => {
            // prefer the closure of a declared index as the probe set: it
            // already contains all identities and composites
            if !r.indices.is_empty() {
                over_entities(r.indices.iter(), |(name, idx)| {
                    let closed = close_base_index(idx, limits)?;
                    let rep = check_autoenrichment_2functor(&closed.functors, &closed.nats, limits);
                    Ok(first_problem(name, &rep))
                })
            } else if r.functors.is_empty() && r.nats.is_empty() {
                (Status::Skipped, None)
            } else {
                let functors: Vec<_> = r.functors.values().cloned().collect();
                let nats: Vec<_> = r.nats.values().cloned().collect();
                let rep = check_autoenrichment_2functor(&functors, &nats, limits);
                match first_problem("probe", &rep) {
                    None => (Status::Pass, None),
                    cx => (Status::Fail, cx),
                }
            }
        }
        "base-index" => over_entities(r.indices.iter(), |(name, idx)| {
            let closed = close_base_index(idx, limits)?;
            Ok(first_problem(name, &check_base_index(&closed, limits)))
        }),
        "split-fibration" => over_entities(r.indices.iter(), |(name, idx)| {
            let cleavage = canonical_cleavage(idx, limits)?;
            Ok(first_problem(name, &check_split_op2fibration(idx, &cleavage, limits)))
        }),
        "enr-v-agreement" => over_entities(r.adjunctions.iter(), |(name, a)| {
            let slice = laxslice_adjunction(a)?;
            let tgt = OrdSliceObj {
                m: a.left.target.clone(),
                g: a.right.clone(),
            };
            let fg = OrdSlice1Cell {
                source: tgt.clone(),
                target: tgt.clone(),
                s: crate::smcc::compose_monoidal(&a.left, &a.right)?,
                beta: whisker_right_nat(&a.unit, &a.right)?,
            };
            let id_cell = OrdSlice1Cell {
                source: tgt.clone(),
                target: tgt,
                s: identity_monoidal(&a.left.target),
                beta: identity_monoidal_nat(&a.right),
            };
            let rep = check_enr_v_agreement(
                &[slice.left, slice.right],
                &[(fg, id_cell, a.counit.clone())],
                limits,
            );
            Ok(first_problem(name, &rep))
        }),
        "adjunction" => over_entities(r.adjunctions.iter(), |(name, a)| {
            Ok(first_problem(name, &check_adjunction(a)))
        }),
        "slice-adjunction" => over_entities(r.adjunctions.iter(), |(name, a)| {
            let slice = laxslice_adjunction(a)?;
            Ok(first_problem(name, &check_slice_adjunction(&slice)))
        }),
        "enriched-adjunction" => over_entities(r.adjunctions.iter(), |(name, a)| {
            let enr = enrich_adjunction(a, limits)?;
            Ok(first_problem(name, &enr.report))
        }),
        other => return Err(EngineError::UnknownId(format!("check {other}"))),
    })
}

/// Run the named checks over a resolved file.  The empty list is a valid
/// (empty) suite; unknown ids are rejected before anything runs.  Checks
/// execute in parallel and reports come back in canonical order.
pub fn run_suite(r: &ResolvedInstances, ids: &[String], limits: &Limits) -> Result<Vec<Report>> {
    for id in ids {
        if !ALL_CHECKS.contains(&id.as_str()) {
            return Err(EngineError::UnknownId(format!("check {id}")));
        }
    }
    let selected: Vec<&str> = ALL_CHECKS
        .iter()
        .copied()
        .filter(|c| ids.iter().any(|i| i == c))
        .collect();
    let results: Vec<Result<(Outcome, u128)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|id| {
                scope.spawn(move || {
                    let start = std::time::Instant::now();
                    let outcome = run_check(id, r, limits)?;
                    Ok((outcome, start.elapsed().as_millis()))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut out = Vec::new();
    for (id, res) in selected.iter().zip(results) {
        let ((status, counterexample), millis) = res?;
        out.push(Report {
            id: id.to_string(),
            status,
            counterexample,
            millis,
        });
    }
    Ok(out)
}

/// Version of the JSON report layout produced by [`reports_to_json`].
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Render reports as JSON.  Keys are sorted and timing is deliberately
/// omitted so that repeated runs over the same file are byte-identical.
pub fn reports_to_json(reports: &[Report]) -> serde_json::Value {
    let checks: Vec<serde_json::Value> = reports
        .iter()
        .map(|rep| {
            let mut obj = serde_json::Map::new();
            obj.insert("id".into(), rep.id.clone().into());
            obj.insert("status".into(), rep.status.as_str().into());
            obj.insert(
                "counterexample".into(),
                match &rep.counterexample {
                    Some(cx) => cx.clone().into(),
                    None => serde_json::Value::Null,
                },
            );
            serde_json::Value::Object(obj)
        })
        .collect();
    let mut root = serde_json::Map::new();
    root.insert("schema_version".into(), REPORT_SCHEMA_VERSION.into());
    root.insert("checks".into(), checks.into());
    serde_json::Value::Object(root)
}

/// Render reports as aligned text lines, including per-check timing.
pub fn reports_to_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for rep in reports {
        out.push_str(&format!(
            "{:<26} {:<8} {:>6} ms",
            rep.id,
            rep.status.as_str(),
            rep.millis
        ));
        if let Some(cx) = &rep.counterexample {
            out.push_str(&format!("  {cx}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inst::{bundled_instance_file, resolve};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn the_full_suite_passes_on_the_bundled_file() {
        let l = limits();
        let r = resolve(&bundled_instance_file(), &l).unwrap();
        let ids: Vec<String> = ALL_CHECKS.iter().map(|s| s.to_string()).collect();
        let reports = run_suite(&r, &ids, &l).unwrap();
        assert_eq!(reports.len(), ALL_CHECKS.len());
        for rep in &reports {
            assert_eq!(rep.status, Status::Pass, "{}: {:?}", rep.id, rep.counterexample);
        }
    }

    #[test]
    fn an_empty_suite_yields_an_empty_report() {
        let l = limits();
        let r = resolve(&bundled_instance_file(), &l).unwrap();
        assert!(run_suite(&r, &[], &l).unwrap().is_empty());
    }

    #[test]
    fn an_unknown_check_id_is_rejected() {
        let l = limits();
        let r = resolve(&bundled_instance_file(), &l).unwrap();
        let err = run_suite(&r, &["nosuch".into()], &l).unwrap_err();
        assert!(format!("{err}").contains("nosuch"));
    }

    #[test]
    fn a_mutated_instance_fails_with_a_counterexample() {
        let l = limits();
        let mut file = bundled_instance_file();
        for sec in &mut file.sections {
            if let crate::inst::Section::Nat(n) = sec {
                if n.name == "epsilon" {
                    n.components.insert("h".into(), "le(h,h)".into());
                }
            }
        }
        let r = resolve(&file, &l).unwrap();
        let reports = run_suite(&r, &["adjunction".into()], &l).unwrap();
        assert_eq!(reports[0].status, Status::Fail);
        assert!(reports[0].counterexample.is_some());
    }

    #[test]
    fn json_reports_are_identical_across_runs() {
        let l = limits();
        let r = resolve(&bundled_instance_file(), &l).unwrap();
        let ids = vec!["adjunction".to_string(), "self-enrichment".to_string()];
        let a = serde_json::to_string_pretty(&reports_to_json(&run_suite(&r, &ids, &l).unwrap())).unwrap();
        let b = serde_json::to_string_pretty(&reports_to_json(&run_suite(&r, &ids, &l).unwrap())).unwrap();
        assert_eq!(a, b);
    }
}
