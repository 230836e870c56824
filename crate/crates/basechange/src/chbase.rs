//! Change of base along an ordinary monoidal functor G: V → W: pushforward
//! of enriched categories, functors, transformations, and symmetric
//! monoidal closed enriched categories; canonical normalizations with their
//! θ/κ comparison transformations; normality; and the ordinary comparison
//! functor K^G.

use std::collections::BTreeMap;

use crate::autoenrich::{autoenrich, autoenrich_vcat};
use crate::enriched::{
    compose_mon_vfunctors, pre_map, tensor_vcat, u_inv, uarrow_id, ucomp, underlying_cat,
    Closure, MonVFunctor, MonVNatTrans, SymMonClosedVCat, UArrow, VCat, VFunctor, VNatTrans,
};
use crate::fincat::{FinFunctor, Id};
use crate::report::{EngineError, Result};
use crate::smcc::{MonoidalFunctor, MonoidalNatTrans, Smcc};
use crate::Limits;

fn check_base(g: &MonoidalFunctor, base_name: &str, what: &str) -> Result<()> {
    if g.source.name != base_name {
        return Err(EngineError::Shape(format!(
            "cannot push {what} over base {base_name} along {} (source base {})",
            g.name, g.source.name
        )));
    }
    Ok(())
}

/// Push a base morphism name n: I_V → X to e^G-then-G[n]: I_W → G X.
pub fn push_name(g: &MonoidalFunctor, n: &str) -> Result<Id> {
    g.target.comp(g.mor(n)?, &g.e)
}

/// Push an underlying arrow of a V-category to the pushed W-category.
pub fn push_uarrow(g: &MonoidalFunctor, u: &UArrow) -> Result<UArrow> {
    Ok(UArrow {
        dom: u.dom.clone(),
        cod: u.cod.clone(),
        name: push_name(g, &u.name)?,
    })
}

/// G_* on enriched categories: same objects, hom = G∘hom, composition
/// G(c)∘m^G, units G(j)∘e^G.
pub fn push_vcat(g: &MonoidalFunctor, a: &VCat) -> Result<VCat> {
    check_base(g, &a.base_name, &a.name)?;
    let w = &g.target;
    let mut hom = BTreeMap::new();
    let mut comp = BTreeMap::new();
    let mut unit = BTreeMap::new();
    for x in &a.objects {
        for y in &a.objects {
            hom.insert((x.clone(), y.clone()), g.ob(&a.hom_of(x, y))?.clone());
            for z in &a.objects {
                let m = g.m_at(&a.hom_of(x, y), &a.hom_of(y, z))?;
                comp.insert(
                    (x.clone(), y.clone(), z.clone()),
                    w.comp(g.mor(&a.c(x, y, z))?, &m)?,
                );
            }
        }
        unit.insert(x.clone(), w.comp(g.mor(&a.j(x))?, &g.e)?);
    }
    Ok(VCat {
        name: format!("{}_*({})", g.name, a.name),
        base_name: w.name.clone(),
        objects: a.objects.clone(),
        hom,
        comp,
        unit,
    })
}

/// G_* on enriched functors: same object map, hom maps G(P_{AA'}).
pub fn push_vfunctor(g: &MonoidalFunctor, p: &VFunctor) -> Result<VFunctor> {
    let mut hmap = BTreeMap::new();
    for ((x, y), h) in &p.hmap {
        hmap.insert((x.clone(), y.clone()), g.mor(h)?.clone());
    }
    Ok(VFunctor {
        name: format!("{}_*({})", g.name, p.name),
        source: push_vcat(g, &p.source)?,
        target: push_vcat(g, &p.target)?,
        omap: p.omap.clone(),
        hmap,
    })
}

/// G_* on enriched transformations: pushed component names e^G then G[ψ_A].
pub fn push_vnat(g: &MonoidalFunctor, t: &VNatTrans) -> Result<VNatTrans> {
    let mut components = BTreeMap::new();
    for (a, n) in &t.components {
        components.insert(a.clone(), push_name(g, n)?);
    }
    Ok(VNatTrans {
        name: format!("{}_*({})", g.name, t.name),
        source: push_vfunctor(g, &t.source)?,
        target: push_vfunctor(g, &t.target)?,
        components,
    })
}

/// φ_* for a monoidal transformation φ: G ⇒ H — the identity-on-objects
/// W-functor G_*a → H_*a with hom maps the components of φ.
pub fn push_nat_family(phi: &MonoidalNatTrans, a: &VCat) -> Result<VFunctor> {
    let mut hmap = BTreeMap::new();
    for x in &a.objects {
        for y in &a.objects {
            hmap.insert(
                (x.clone(), y.clone()),
                phi.at(&a.hom_of(x, y))?.clone(),
            );
        }
    }
    Ok(VFunctor {
        name: format!("{}_*({})", phi.name, a.name),
        source: push_vcat(&phi.source, a)?,
        target: push_vcat(&phi.target, a)?,
        omap: a.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        hmap,
    })
}

/// G_* on symmetric monoidal closed enriched categories: tensor-on-homs
/// G(⊗)∘m^G, pushed coherence names, pushed closure isomorphisms.
pub fn push_monvcat(
    g: &MonoidalFunctor,
    m: &SymMonClosedVCat,
    limits: &Limits,
) -> Result<SymMonClosedVCat> {
    static MEMO: std::sync::LazyLock<
        crate::memo::Memo<(MonoidalFunctor, SymMonClosedVCat, usize), SymMonClosedVCat>,
    > = std::sync::LazyLock::new(Default::default);
    MEMO.get_or_try_insert((g.clone(), m.clone(), limits.max_morphisms), || {
        push_monvcat_uncached(g, m, limits)
    })
}

fn push_monvcat_uncached(
    g: &MonoidalFunctor,
    m: &SymMonClosedVCat,
    limits: &Limits,
) -> Result<SymMonClosedVCat> {
    let w = &g.target;
    let pm = push_vcat(g, &m.m)?;
    let pmm = tensor_vcat(w, &pm, &pm, limits)?;
    let mut hmap = BTreeMap::new();
    for ((x, y), h) in &m.tensor.hmap {
        // x = (A,B), y = (A',B'); the pushed hom map is
        // G(hom(A,A'))⊗G(hom(B,B')) → G(hom(A,A')⊗hom(B,B')) → G(hom(A⊗B,A'⊗B')).
        let (ha, hb) = split_pair_hom(&m.m, x, y)?;
        let mg = g.m_at(&ha, &hb)?;
        hmap.insert((x.clone(), y.clone()), w.comp(g.mor(h)?, &mg)?);
    }
    let tensor = VFunctor {
        name: format!("{}_*({})", g.name, m.tensor.name),
        source: pmm,
        target: pm.clone(),
        omap: m.tensor.omap.clone(),
        hmap,
    };
    let mut assoc = BTreeMap::new();
    for (k, n) in &m.assoc {
        assoc.insert(k.clone(), push_name(g, n)?);
    }
    let mut lunit = BTreeMap::new();
    for (k, n) in &m.lunit {
        lunit.insert(k.clone(), push_name(g, n)?);
    }
    let mut runit = BTreeMap::new();
    for (k, n) in &m.runit {
        runit.insert(k.clone(), push_name(g, n)?);
    }
    let mut sym = BTreeMap::new();
    for (k, n) in &m.sym {
        sym.insert(k.clone(), push_name(g, n)?);
    }
    let mut iso = BTreeMap::new();
    for (k, i) in &m.closure.iso {
        iso.insert(k.clone(), g.mor(i)?.clone());
    }
    Ok(SymMonClosedVCat {
        name: format!("{}_*({})", g.name, m.name),
        m: pm,
        tensor,
        unit: m.unit.clone(),
        assoc,
        lunit,
        runit,
        sym,
        closure: Closure {
            hom: m.closure.hom.clone(),
            iso,
        },
    })
}

/// Recover the two hom objects tensored in a hom of a⊗a, given the pair
/// object ids of the tensor V-functor's key.
fn split_pair_hom(a: &VCat, x: &str, y: &str) -> Result<(Id, Id)> {
    let (x1, x2) = crate::fincat::split_pair(x)?;
    let (y1, y2) = crate::fincat::split_pair(y)?;
    Ok((a.hom_of(&x1, &y1), a.hom_of(&x2, &y2)))
}

/// G_* on enriched monoidal functors: push the functor part and all
/// structure cells.
pub fn push_mon_vfunctor(
    g: &MonoidalFunctor,
    s: &MonVFunctor,
    limits: &Limits,
) -> Result<MonVFunctor> {
    let mut m = BTreeMap::new();
    for (k, u) in &s.m {
        m.insert(k.clone(), push_uarrow(g, u)?);
    }
    Ok(MonVFunctor {
        name: format!("{}_*({})", g.name, s.name),
        source: push_monvcat(g, &s.source, limits)?,
        target: push_monvcat(g, &s.target, limits)?,
        f: push_vfunctor(g, &s.f)?,
        e: push_uarrow(g, &s.e)?,
        m,
        symmetric: s.symmetric,
    })
}

/// G_* on enriched monoidal transformations.
pub fn push_mon_vnat(g: &MonoidalFunctor, t: &MonVNatTrans, limits: &Limits) -> Result<MonVNatTrans> {
    let mut components = BTreeMap::new();
    for (a, n) in &t.components {
        components.insert(a.clone(), push_name(g, n)?);
    }
    Ok(MonVNatTrans {
        name: format!("{}_*({})", g.name, t.name),
        source: push_mon_vfunctor(g, &t.source, limits)?,
        target: push_mon_vfunctor(g, &t.target, limits)?,
        components,
    })
}

/// φ_* on a symmetric monoidal closed enriched category: the strict
/// symmetric monoidal form of [`push_nat_family`].
pub fn push_nat_family_mon(
    phi: &MonoidalNatTrans,
    m: &SymMonClosedVCat,
    limits: &Limits,
) -> Result<MonVFunctor> {
    let f = push_nat_family(phi, &m.m)?;
    let source = push_monvcat(&phi.source, m, limits)?;
    let target = push_monvcat(&phi.target, m, limits)?;
    let mut cells = BTreeMap::new();
    for a in &m.m.objects {
        for b in &m.m.objects {
            let t = m.tobj(a, b);
            cells.insert(
                (a.clone(), b.clone()),
                UArrow {
                    dom: t.clone(),
                    cod: t,
                    name: target.m.j(&m.tobj(a, b)),
                },
            );
        }
    }
    let e = UArrow {
        dom: m.unit.clone(),
        cod: m.unit.clone(),
        name: target.m.j(&m.unit),
    };
    Ok(MonVFunctor {
        name: f.name.clone(),
        source,
        target,
        f,
        e,
        m: cells,
        symmetric: true,
    })
}

/// The canonical normalization of a symmetric monoidal closed V-category:
/// U^M = M(I,−) with its monoidal structure.
#[derive(Debug, Clone)]
pub struct NormalizationBundle {
    pub m: SymMonClosedVCat,
    pub u: MonVFunctor,
}

pub fn canonical_normalization(
    base: &Smcc,
    m: &SymMonClosedVCat,
    limits: &Limits,
) -> Result<NormalizationBundle> {
    let target = autoenrich(base, limits)?;
    let i = m.unit.clone();
    let mut omap = BTreeMap::new();
    let mut hmap = BTreeMap::new();
    for a in &m.m.objects {
        omap.insert(a.clone(), m.m.hom_of(&i, a));
        for b in &m.m.objects {
            // hom map: the transpose of c_{I,A,B}.
            hmap.insert(
                (a.clone(), b.clone()),
                base.transpose_of(
                    &m.m.hom_of(&i, a),
                    &m.m.hom_of(a, b),
                    &m.m.hom_of(&i, b),
                    &m.m.c(&i, a, b),
                )?,
            );
        }
    }
    let f = VFunctor {
        name: format!("U^{}", m.name),
        source: m.m.clone(),
        target: target.m.clone(),
        omap: omap.clone(),
        hmap,
    };
    let e = UArrow {
        dom: base.unit.clone(),
        cod: m.m.hom_of(&i, &i),
        name: base.name_of(&m.m.j(&i))?,
    };
    let l_i_inv = u_inv(base, &m.m, &m.ul(&i)).ok_or_else(|| {
        EngineError::Invalid(format!("left unitor at the unit of {} not invertible", m.name))
    })?;
    let mut cells = BTreeMap::new();
    for a in &m.m.objects {
        for b in &m.m.objects {
            let ab = m.tobj(a, b);
            // M(I,A)⊗M(I,B) → M(I⊗I,A⊗B) → M(I,A⊗B)
            let th = m
                .tensor
                .h(&crate::fincat::pair_id(&i, &i), &crate::fincat::pair_id(a, b))?;
            let pre = pre_map(base, &m.m, &ab, &l_i_inv)?;
            let v_mor = base.comp(&pre, &th)?;
            cells.insert(
                (a.clone(), b.clone()),
                UArrow {
                    dom: base.tobj(&omap[a], &omap[b]),
                    cod: m.m.hom_of(&i, &ab),
                    name: base.name_of(&v_mor)?,
                },
            );
        }
    }
    let u = MonVFunctor {
        name: format!("U^{}", m.name),
        source: m.clone(),
        target,
        f,
        e,
        m: cells,
        symmetric: true,
    };
    Ok(NormalizationBundle { m: m.clone(), u })
}

/// θ^S: U^M ⇒ U^N ∘ S for an enriched monoidal functor S: M → N, with
/// components the names of "precompose with e^S after S_{I,A}".
pub fn theta(base: &Smcc, s: &MonVFunctor, limits: &Limits) -> Result<MonVNatTrans> {
    let bm = canonical_normalization(base, &s.source, limits)?;
    let bn = canonical_normalization(base, &s.target, limits)?;
    let i = s.source.unit.clone();
    let mut components = BTreeMap::new();
    for a in &s.source.m.objects {
        let v_mor = base.comp(
            &pre_map(base, &s.target.m, s.f.ob(a)?, &s.e)?,
            &s.f.h(&i, a)?,
        )?;
        components.insert(a.clone(), base.name_of(&v_mor)?);
    }
    Ok(MonVNatTrans {
        name: format!("θ^{}", s.name),
        source: bm.u,
        target: compose_mon_vfunctors(base, &bn.u, s)?,
        components,
    })
}

/// ξ: 1 ⇒ U^{underline(V)}, the unit normalization isomorphism, with
/// components the names of the transposes of ℓ.
pub fn unit_normalization_iso(base: &Smcc, limits: &Limits) -> Result<MonVNatTrans> {
    let ul = autoenrich(base, limits)?;
    let bundle = canonical_normalization(base, &ul, limits)?;
    let mut components = BTreeMap::new();
    for a in &base.cat.objects {
        let xi = base.transpose_of(&base.unit, a, a, &base.l(a))?;
        components.insert(a.clone(), base.name_of(&xi)?);
    }
    Ok(MonVNatTrans {
        name: "ξ".into(),
        source: crate::enriched::identity_mon_vfunctor(base, &ul),
        target: bundle.u,
        components,
    })
}

/// κ^G: U^M ⇒ G for a normalization G: M → underline(V), as ξ^{-1}-whisker
/// after θ^G.
pub fn kappa(base: &Smcc, g: &MonVFunctor, limits: &Limits) -> Result<MonVNatTrans> {
    let ul = autoenrich(base, limits)?;
    if !g.target.same_tables(&ul) {
        return Err(EngineError::Shape(format!(
            "{} is not a normalization into the autoenrichment of {}",
            g.name, base.name
        )));
    }
    let th = theta(base, g, limits)?;
    let xi = unit_normalization_iso(base, limits)?;
    let mut components = BTreeMap::new();
    for a in &g.source.m.objects {
        let ga = g.f.ob(a)?.clone();
        let xi_ga = UArrow {
            dom: ga.clone(),
            cod: base.ihom_of(&base.unit, &ga),
            name: xi.components[&ga].clone(),
        };
        let xi_inv = u_inv(base, &ul.m, &xi_ga).ok_or_else(|| {
            EngineError::Invalid(format!("ξ component at {ga} not invertible"))
        })?;
        let th_a = UArrow {
            dom: g.source.m.hom_of(&g.source.unit, a),
            cod: base.ihom_of(&base.unit, &ga),
            name: th.components[a].clone(),
        };
        components.insert(a.clone(), ucomp(base, &ul.m, &xi_inv, &th_a)?.name);
    }
    Ok(MonVNatTrans {
        name: format!("κ^{}", g.name),
        source: th.source.clone(),
        target: g.clone(),
        components,
    })
}

/// Exhaustively enumerate all monoidal V-natural transformations F ⇒ G.
pub fn enumerate_monoidal_vnats(
    base: &Smcc,
    f: &MonVFunctor,
    g: &MonVFunctor,
    limits: &Limits,
) -> Result<Vec<MonVNatTrans>> {
    if !f.source.same_tables(&g.source) || !f.target.same_tables(&g.target) {
        return Err(EngineError::Shape("not a parallel pair".into()));
    }
    let objects = &f.source.m.objects;
    let mut choices: Vec<Vec<Id>> = Vec::new();
    let mut total: usize = 1;
    for a in objects {
        let names = base
            .cat
            .hom(&base.unit, &f.target.m.hom_of(f.f.ob(a)?, g.f.ob(a)?));
        total = total.saturating_mul(names.len().max(1));
        if total > limits.max_candidates {
            return Err(EngineError::SearchBound(format!(
                "{total} candidate families exceed the cap {}",
                limits.max_candidates
            )));
        }
        choices.push(names);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    'outer: loop {
        if choices.iter().all(|c| !c.is_empty()) {
            let components: BTreeMap<Id, Id> = objects
                .iter()
                .zip(idx.iter())
                .enumerate()
                .map(|(k, (a, &i))| (a.clone(), choices[k][i].clone()))
                .collect();
            let cand = MonVNatTrans {
                name: format!("candidate-{}", out.len()),
                source: f.clone(),
                target: g.clone(),
                components,
            };
            if crate::enriched::check_mon_vnat(base, &cand).is_empty() {
                out.push(cand);
            }
        } else {
            break;
        }
        // advance multi-index
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
            if k == 0 {
                break 'outer;
            }
        }
        if idx.is_empty() {
            break;
        }
    }
    for (i, t) in out.iter_mut().enumerate() {
        t.name = format!("mvnat-{i}");
    }
    Ok(out)
}

/// A normalization is normal when every θ component is invertible.
pub fn is_normal(base: &Smcc, g: &MonVFunctor, limits: &Limits) -> Result<bool> {
    let th = theta(base, g, limits)?;
    let ul = autoenrich_vcat(base, limits)?;
    for a in &g.source.m.objects {
        let u = UArrow {
            dom: g.source.m.hom_of(&g.source.unit, a),
            cod: base.ihom_of(&base.unit, g.f.ob(a)?),
            name: th.components[a].clone(),
        };
        if u_inv(base, &ul, &u).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The comparison functor K^G: V → (G_* underline(V))_0, identity on
/// objects, sending f to the name G([f])∘e^G.
pub fn comparison_kg(g: &MonoidalFunctor, limits: &Limits) -> Result<FinFunctor> {
    let v = &g.source;
    let w = &g.target;
    let pushed = push_vcat(g, &autoenrich_vcat(v, limits)?)?;
    let target = underlying_cat(w, &pushed)?;
    let mut mmap = BTreeMap::new();
    for f in &v.cat.morphisms {
        let a = v.cat.dom_of(f)?.clone();
        let b = v.cat.cod_of(f)?.clone();
        let name = push_name(g, &v.name_of(f)?)?;
        mmap.insert(f.clone(), uarrow_id(&a, &b, &name));
    }
    Ok(FinFunctor {
        name: format!("K^{}", g.name),
        source: v.cat.clone(),
        target,
        omap: v
            .cat
            .objects
            .iter()
            .map(|o| (o.clone(), o.clone()))
            .collect(),
        mmap,
    })
}

/// The underlying ordinary functor of G̀, with the target identified with W:
/// (G_* underline(V))_0 → W.
pub fn grave0(g: &MonoidalFunctor, limits: &Limits) -> Result<FinFunctor> {
    let v = &g.source;
    let w = &g.target;
    let gr = crate::autoenrich::grave(g, limits)?;
    let pushed = push_vcat(g, &autoenrich_vcat(v, limits)?)?;
    let source = underlying_cat(w, &pushed)?;
    let mut mmap = BTreeMap::new();
    for a in &v.cat.objects {
        for b in &v.cat.objects {
            let h = gr.f.h(a, b)?;
            let ga = gr.f.ob(a)?.clone();
            let gb = gr.f.ob(b)?.clone();
            for n in w.cat.hom(&w.unit, &pushed.hom_of(a, b)) {
                let f = w.unname(&ga, &gb, &w.comp(&h, &n)?)?;
                mmap.insert(uarrow_id(a, b, &n), f);
            }
        }
    }
    Ok(FinFunctor {
        name: format!("({})_0", gr.name),
        source,
        target: w.cat.clone(),
        omap: gr.f.omap.clone(),
        mmap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autoenrich::{autoenrich, autoenrich_vcat};
    use crate::enriched::{check_mon_vfunctor, check_mon_vnat, check_symmonclosed, check_vfunctor};
    use crate::instances;
    use crate::smcc::identity_monoidal;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn pushforward_along_q_is_the_boolean_preorder() {
        let l = limits();
        let q = instances::functor_q(&l);
        let m = autoenrich_vcat(&q.source, &l).unwrap();
        let p = push_vcat(&q, &m).unwrap();
        assert!(crate::enriched::check_vcat(&q.target, &p).is_empty());
        // hom(a,b) = q([a,b]) = 1 exactly when a ≤ b in the chain
        assert_eq!(p.hom_of("0", "h"), "1");
        assert_eq!(p.hom_of("h", "0"), "0");
        assert_eq!(p.hom_of("1", "h"), "0");
    }

    #[test]
    fn pushforward_along_identity_is_the_identity() {
        let l = limits();
        let v = instances::g3(&l);
        let m = autoenrich_vcat(&v, &l).unwrap();
        let p = push_vcat(&identity_monoidal(&v), &m).unwrap();
        assert!(p.same_tables(&m));
        let mv = autoenrich(&v, &l).unwrap();
        let pm = push_monvcat(&identity_monoidal(&v), &mv, &l).unwrap();
        assert!(pm.same_tables(&mv));
    }

    #[test]
    fn pushforward_along_iota_keeps_the_lukasiewicz_homs() {
        let l = limits();
        let i = instances::functor_iota(&l);
        let m = autoenrich_vcat(&i.source, &l).unwrap();
        let p = push_vcat(&i, &m).unwrap();
        // ι is the identity on elements, so hom(1,h) = ι([1,h]_G3) = h
        assert_eq!(p.hom_of("1", "h"), "h");
        assert!(crate::enriched::check_vcat(&i.target, &p).is_empty());
    }

    #[test]
    fn pushed_pseudomonoids_remain_symmetric_monoidal_closed() {
        let l = limits();
        for g in [instances::functor_q(&l), instances::functor_iota(&l)] {
            let m = autoenrich(&g.source, &l).unwrap();
            let p = push_monvcat(&g, &m, &l).unwrap();
            let rep = check_symmonclosed(&g.target, &p);
            assert!(rep.is_empty(), "{}: {rep}", g.name);
        }
    }

    #[test]
    fn pushed_functors_and_transformations_stay_lawful() {
        let l = limits();
        let q = instances::functor_q(&l);
        let m = autoenrich(&q.source, &l).unwrap();
        let hv = crate::enriched::hom_vfunctor(&q.source, &m, &l).unwrap();
        let ph = push_vfunctor(&q, &hv).unwrap();
        assert!(check_vfunctor(&q.target, &ph).is_empty());
        let idn = crate::enriched::identity_vnat(&hv);
        let pn = push_vnat(&q, &idn).unwrap();
        assert!(crate::enriched::check_vnat(&q.target, &pn).is_empty());
    }

    #[test]
    fn pushed_family_of_a_monoidal_transformation_is_strict_monoidal() {
        let l = limits();
        let alpha = instances::nat_alpha(&l);
        let m = autoenrich(&alpha.source.source, &l).unwrap();
        let f = push_nat_family(&alpha, &m.m).unwrap();
        assert!(check_vfunctor(&alpha.source.target, &f).is_empty());
        let fm = push_nat_family_mon(&alpha, &m, &l).unwrap();
        assert!(check_mon_vfunctor(&alpha.source.target, &fm).is_empty());
        assert!(fm.is_strict());
    }

    #[test]
    fn canonical_normalization_is_monoidal_and_residuates_at_the_unit() {
        let l = limits();
        for v in [instances::b2(&l), instances::g3(&l), instances::c2(&l)] {
            let m = autoenrich(&v, &l).unwrap();
            let bundle = canonical_normalization(&v, &m, &l).unwrap();
            // object map a ↦ [1,a] = a for quantales (and ⋆ ↦ ⋆)
            for a in &v.cat.objects {
                assert_eq!(bundle.u.f.omap[a], v.ihom_of(&v.unit, a));
            }
            let rep = check_mon_vfunctor(&v, &bundle.u);
            assert!(rep.is_empty(), "{}: {rep}", v.name);
        }
    }

    #[test]
    fn theta_of_the_identity_is_a_lawful_comparison() {
        let l = limits();
        let v = instances::g3(&l);
        let m = autoenrich(&v, &l).unwrap();
        let idm = crate::enriched::identity_mon_vfunctor(&v, &m);
        let th = theta(&v, &idm, &l).unwrap();
        assert!(check_mon_vnat(&v, &th).is_empty());
    }

    #[test]
    fn unit_normalization_is_an_isomorphism_and_kappa_compares() {
        let l = limits();
        let v = instances::b2(&l);
        let xi = unit_normalization_iso(&v, &l).unwrap();
        assert!(check_mon_vnat(&v, &xi).is_empty());
        let ul = autoenrich(&v, &l).unwrap();
        for a in &v.cat.objects {
            let u = UArrow {
                dom: a.clone(),
                cod: v.ihom_of(&v.unit, a),
                name: xi.components[a].clone(),
            };
            assert!(u_inv(&v, &ul.m, &u).is_some());
        }
        let bundle = canonical_normalization(&v, &ul, &l).unwrap();
        let k = kappa(&v, &bundle.u, &l).unwrap();
        assert!(check_mon_vnat(&v, &k).is_empty());
    }

    #[test]
    fn the_canonical_normalization_comparison_is_unique() {
        let l = limits();
        let v = instances::b2(&l);
        let m = autoenrich(&v, &l).unwrap();
        let bundle = canonical_normalization(&v, &m, &l).unwrap();
        let found = enumerate_monoidal_vnats(&v, &bundle.u, &bundle.u, &l).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn normalizations_of_bundled_functors_are_normal() {
        let l = limits();
        for g in [
            instances::functor_r(&l),
            instances::functor_q(&l),
            instances::functor_iota(&l),
        ] {
            let gr = crate::autoenrich::grave(&g, &l).unwrap();
            assert!(is_normal(&g.target, &gr, &l).unwrap(), "{}", g.name);
        }
    }

    #[test]
    fn comparison_functor_triangle_commutes_and_is_invertible_when_normal() {
        let l = limits();
        for g in [instances::functor_q(&l), instances::functor_iota(&l)] {
            let kg = comparison_kg(&g, &l).unwrap();
            assert!(crate::fincat::check_functor(&kg).is_empty(), "{}", g.name);
            let g0 = grave0(&g, &l).unwrap();
            assert!(crate::fincat::check_functor(&g0).is_empty(), "{}", g.name);
            let tri = crate::fincat::compose_functors(&g0, &kg).unwrap();
            assert!(tri.same_tables(&g.f), "{}", g.name);
            // mmap is a bijection onto the pushed underlying category
            let mut seen: std::collections::BTreeSet<&Id> = Default::default();
            for v in kg.mmap.values() {
                seen.insert(v);
            }
            assert_eq!(seen.len(), kg.mmap.len());
            assert_eq!(seen.len(), kg.target.morphisms.len());
        }
    }
}
