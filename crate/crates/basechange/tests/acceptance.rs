//! End-to-end acceptance run over the bundled instances.  Each criterion
//! prints one pass/fail line; the test fails if any criterion does.

use basechange::adjoint::{enrich_adjunction, laxslice_adjunction, Adjunction};
use basechange::autoenrich::{
    autoenrich, check_autoenrichment_2functor, check_fundamental_lemma, grave, reconstruct_iso,
};
use basechange::chbase::{canonical_normalization, enumerate_monoidal_vnats, push_monvcat};
use basechange::enriched::{check_symmonclosed, check_vfunctor};
use basechange::groth::{
    canonical_cleavage, check_enr_v_agreement, check_split_op2fibration, close_base_index,
    OrdSlice1Cell, OrdSliceObj,
};
use basechange::inst::{bundled_instance_file, resolve};
use basechange::instances::{
    b2, bundled_base_index, bundled_smccs, functor_iota, functor_iota0, functor_q, functor_r, g3,
    nat_epsilon, nat_eta,
};
use basechange::report::LawReport;
use basechange::smcc::{check_smcc, compose_monoidal, identity_monoidal, identity_monoidal_nat, whisker_right_nat};
use basechange::suites::{reports_to_json, run_suite, ALL_CHECKS};
use basechange::Limits;

fn empty(label: &str, rep: &LawReport) -> Result<(), String> {
    if rep.is_empty() {
        Ok(())
    } else {
        Err(format!("{label}: {rep}"))
    }
}

/// A corruption is detected when the checker comes back non-empty; the
/// witness line is returned for display.
fn detected(rep: &LawReport) -> Result<String, String> {
    if let Some(v) = rep.violations.first() {
        return Ok(format!("law {}: {}", v.law, v.witness));
    }
    if let Some(s) = rep.structural.first() {
        return Ok(format!("structural: {s}"));
    }
    Err("corruption went undetected".into())
}

fn r_q(l: &Limits) -> Adjunction {
    Adjunction {
        name: "r⊣q".into(),
        left: functor_r(l),
        right: functor_q(l),
        unit: nat_eta(l),
        counit: nat_epsilon(l),
    }
}

/// All bundled enrichments: the self-enrichment of every base plus the
/// bundled pushforward, each with its base.
fn bundled_enrichments(
    l: &Limits,
) -> Result<Vec<(basechange::smcc::Smcc, basechange::enriched::SymMonClosedVCat)>, String> {
    let mut out = Vec::new();
    for v in bundled_smccs(l) {
        let m = autoenrich(&v, l).map_err(|e| e.to_string())?;
        out.push((v, m));
    }
    let q = functor_q(l);
    let pushed = push_monvcat(&q, &autoenrich(&q.source, l).map_err(|e| e.to_string())?, l)
        .map_err(|e| e.to_string())?;
    out.push((q.target.clone(), pushed));
    Ok(out)
}

fn structure_validity(l: &Limits) -> Result<(), String> {
    for v in bundled_smccs(l) {
        empty(&v.name, &check_smcc(&v))?;
    }
    Ok(())
}

fn self_enrichment(l: &Limits) -> Result<(), String> {
    for v in bundled_smccs(l) {
        let m = autoenrich(&v, l).map_err(|e| e.to_string())?;
        empty(&v.name, &check_symmonclosed(&v, &m))?;
    }
    Ok(())
}

fn normalization_uniqueness(l: &Limits) -> Result<(), String> {
    for (v, m) in bundled_enrichments(l)? {
        let bundle = canonical_normalization(&v, &m, l).map_err(|e| e.to_string())?;
        let found = enumerate_monoidal_vnats(&v, &bundle.u, &bundle.u, l).map_err(|e| e.to_string())?;
        if found.len() != 1 {
            return Err(format!("{}: found {} transformations", m.name, found.len()));
        }
    }
    Ok(())
}

fn reconstruction(l: &Limits) -> Result<(), String> {
    for (v, m) in bundled_enrichments(l)? {
        let rec = reconstruct_iso(&v, &m, l).map_err(|e| e.to_string())?;
        empty(&m.name, &rec.report)?;
        for (a, b) in &rec.s.omap {
            if a != b {
                return Err(format!("{}: comparison moves object {a} to {b}", m.name));
            }
        }
    }
    Ok(())
}

fn fundamental_lemma(l: &Limits) -> Result<(), String> {
    for g in [functor_r(l), functor_q(l), functor_iota(l), functor_iota0(l)] {
        let gr = grave(&g, l).map_err(|e| e.to_string())?;
        for monoidal in [false, true] {
            empty(&g.name, &check_fundamental_lemma(&g.target, &gr, monoidal, l))?;
        }
    }
    Ok(())
}

fn two_functoriality(l: &Limits) -> Result<(), String> {
    let closed = close_base_index(&bundled_base_index(l), l).map_err(|e| e.to_string())?;
    empty(
        "probe closure",
        &check_autoenrichment_2functor(&closed.functors, &closed.nats, l),
    )
}

/// Corrupt one cocartesian cleavage entry by rerouting an object-map entry.
fn corrupted_cleavage_is_detected(l: &Limits) -> Result<String, String> {
    let idx = bundled_base_index(l);
    let mut cleavage = canonical_cleavage(&idx, l).map_err(|e| e.to_string())?;
    let key = cleavage.cocartesian.keys().next().unwrap().clone();
    let cell = cleavage.cocartesian.get_mut(&key).unwrap();
    let first_obj = cell.up.f.omap.keys().next().unwrap().clone();
    let other = cell
        .up
        .f
        .omap
        .values()
        .find(|v| **v != cell.up.f.omap[&first_obj])
        .cloned();
    match other {
        Some(o) => {
            cell.up.f.omap.insert(first_obj, o);
        }
        None => {
            cleavage.cocartesian.remove(&key);
        }
    }
    detected(&check_split_op2fibration(&idx, &cleavage, l))
}

fn split_fibration(l: &Limits) -> Result<(), String> {
    let idx = bundled_base_index(l);
    let cleavage = canonical_cleavage(&idx, l).map_err(|e| e.to_string())?;
    empty("bundled index", &check_split_op2fibration(&idx, &cleavage, l))?;
    corrupted_cleavage_is_detected(l)?;
    Ok(())
}

/// The (r, η) probe 1-cell over B2 used for route agreement.
fn probe_cell(l: &Limits) -> OrdSlice1Cell {
    let q = functor_q(l);
    OrdSlice1Cell {
        source: OrdSliceObj {
            m: b2(l),
            g: identity_monoidal(&b2(l)),
        },
        target: OrdSliceObj {
            m: q.source.clone(),
            g: q,
        },
        s: functor_r(l),
        beta: nat_eta(l),
    }
}

fn enr_v_agreement(l: &Limits) -> Result<(), String> {
    let a = r_q(l);
    let slice = laxslice_adjunction(&a).map_err(|e| e.to_string())?;
    let tgt = OrdSliceObj {
        m: a.left.target.clone(),
        g: a.right.clone(),
    };
    let fg = OrdSlice1Cell {
        source: tgt.clone(),
        target: tgt.clone(),
        s: compose_monoidal(&a.left, &a.right).map_err(|e| e.to_string())?,
        beta: whisker_right_nat(&a.unit, &a.right).map_err(|e| e.to_string())?,
    };
    let id_cell = OrdSlice1Cell {
        source: tgt.clone(),
        target: tgt,
        s: identity_monoidal(&a.left.target),
        beta: identity_monoidal_nat(&a.right),
    };
    empty(
        "probe cells",
        &check_enr_v_agreement(
            &[probe_cell(l), slice.left, slice.right],
            &[(fg, id_cell, a.counit.clone())],
            l,
        ),
    )
}

fn enriched_adjunction(l: &Limits) -> Result<(), String> {
    let a = r_q(l);
    let enr = enrich_adjunction(&a, l).map_err(|e| e.to_string())?;
    empty("r⊣q", &enr.report)?;
    let v = &a.left.source;
    for (x, comp) in &enr.adj.unit.components {
        let eta = a.unit.at(x).map_err(|e| e.to_string())?;
        let expected = v.name_of(eta).map_err(|e| e.to_string())?;
        if *comp != expected {
            return Err(format!("unit component at {x}: {comp} != {expected}"));
        }
    }
    Ok(())
}

fn mutation_robustness(l: &Limits) -> Result<(), String> {
    let mut witnesses = Vec::new();

    // 1: a corrupted internal-hom entry of B2
    let mut v = b2(l);
    v.ihom.insert(("1".into(), "0".into()), "1".into());
    witnesses.push(("structure", detected(&check_smcc(&v))?));

    // 2: a corrupted closure hom-object of the self-enrichment of G3
    let v = g3(l);
    let mut m = autoenrich(&v, l).map_err(|e| e.to_string())?;
    m.closure.hom.insert(("h".into(), "0".into()), "h".into());
    witnesses.push(("self-enrichment", detected(&check_symmonclosed(&v, &m))?));

    // 3: a corrupted hom-map entry of the canonical normalization
    let v = b2(l);
    let m = autoenrich(&v, l).map_err(|e| e.to_string())?;
    let mut bundle = canonical_normalization(&v, &m, l).map_err(|e| e.to_string())?;
    let key = bundle.u.f.hmap.keys().next().unwrap().clone();
    let old = bundle.u.f.hmap[&key].clone();
    let wrong = v
        .cat
        .morphisms
        .iter()
        .find(|f| **f != old)
        .ok_or("no distinct morphism to corrupt with")?
        .clone();
    bundle.u.f.hmap.insert(key.clone(), wrong);
    let witness = match enumerate_monoidal_vnats(&v, &bundle.u, &bundle.u, l) {
        Err(e) => format!("structural: {e}"),
        Ok(found) if found.len() != 1 => {
            format!("hom-map at {key:?}: {} transformations instead of 1", found.len())
        }
        Ok(_) => {
            // thin homs make every family natural; the corruption still
            // breaks the functor laws of the normalization itself
            let rep = basechange::enriched::check_vfunctor(&v, &bundle.u.f).canonicalize();
            detected(&rep)?
        }
    };
    witnesses.push(("normalization", witness));

    // 4: a corrupted component of the reconstruction comparison
    let v = g3(l);
    let m = autoenrich(&v, l).map_err(|e| e.to_string())?;
    let mut rec = reconstruct_iso(&v, &m, l).map_err(|e| e.to_string())?;
    let um = basechange::autoenrich::underlying_smcc(&v, &m, l).map_err(|e| e.to_string())?;
    rec.s
        .hmap
        .insert(("1".into(), "h".into()), rec.s.target.hom_of("1", "h"));
    witnesses.push(("reconstruction", detected(&check_vfunctor(&um.smcc, &rec.s).canonicalize())?));

    // 5: a corrupted hom-map entry of an enriched 1-cell
    let q = functor_q(l);
    let mut gr = grave(&q, l).map_err(|e| e.to_string())?;
    let key = gr.f.hmap.keys().next().unwrap().clone();
    let other = gr
        .f
        .hmap
        .values()
        .find(|x| **x != gr.f.hmap[&key])
        .cloned()
        .ok_or("no distinct hom-map value")?;
    gr.f.hmap.insert(key, other);
    witnesses.push((
        "fund-lemma",
        detected(&check_fundamental_lemma(&q.target, &gr, true, l))?,
    ));

    // 6: a corrupted tensor cell of a probe functor
    let mut qq = functor_q(l);
    let cell = qq.m.get_mut(&("h".into(), "h".into())).ok_or("missing cell")?;
    *cell = "le(0,1)".into();
    witnesses.push((
        "2-functoriality",
        detected(&check_autoenrichment_2functor(&[qq, functor_r(l)], &[], l))?,
    ));

    // 7: a corrupted cleavage entry
    witnesses.push(("split-fibration", corrupted_cleavage_is_detected(l)?));

    // 8: a corrupted comparison 2-cell on a slice probe
    let mut cell = probe_cell(l);
    cell.beta.components.insert("0".into(), "le(0,1)".into());
    witnesses.push((
        "enr-v-agreement",
        detected(&check_enr_v_agreement(&[cell], &[], l))?,
    ));

    // 9: a corrupted counit component of the adjunction
    let mut a = r_q(l);
    a.counit.components.insert("h".into(), "le(h,h)".into());
    let witness = match enrich_adjunction(&a, l) {
        Err(e) => format!("structural: {e}"),
        Ok(enr) => detected(&enr.report)?,
    };
    witnesses.push(("enriched-adjunction", witness));

    for (label, w) in &witnesses {
        println!("    mutation {label}: {w}");
    }
    Ok(())
}

fn determinism(l: &Limits) -> Result<(), String> {
    let file = bundled_instance_file();
    let r = resolve(&file, l).map_err(|e| e.to_string())?;
    let ids: Vec<String> = ALL_CHECKS.iter().map(|s| s.to_string()).collect();
    let run = |r: &basechange::inst::ResolvedInstances| -> Result<String, String> {
        let reports = run_suite(r, &ids, l).map_err(|e| e.to_string())?;
        for rep in &reports {
            if rep.status != basechange::suites::Status::Pass {
                return Err(format!("{}: {:?}", rep.id, rep.counterexample));
            }
        }
        serde_json::to_string_pretty(&reports_to_json(&reports)).map_err(|e| e.to_string())
    };
    let first = run(&r)?;
    let second = run(&r)?;
    if first != second {
        return Err("JSON reports differ between runs".into());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let l = Limits::default();
    let criteria: Vec<(&str, fn(&Limits) -> Result<(), String>)> = vec![
        ("01 structure validity", structure_validity),
        ("02 self-enrichment", self_enrichment),
        ("03 normalization uniqueness", normalization_uniqueness),
        ("04 reconstruction", reconstruction),
        ("05 fundamental lemma", fundamental_lemma),
        ("06 2-functoriality", two_functoriality),
        ("07 split op-2-fibration", split_fibration),
        ("08 slice-enrichment agreement", enr_v_agreement),
        ("09 enriched adjunction", enriched_adjunction),
        ("10 mutation robustness", mutation_robustness),
        ("11 determinism", determinism),
    ];
    let mut failures = Vec::new();
    for (label, f) in criteria {
        match f(&l) {
            Ok(()) => println!("criterion {label}: pass"),
            Err(e) => {
                println!("criterion {label}: FAIL — {e}");
                failures.push((label, e));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
