//! Bundled finite instances: the quantales B2, G3, L3, the cyclic monoids
//! C2 and C3, and the probe functors/transformations/adjunction between
//! them that the verification suites run on.
//!
//! Element naming: `0`, `h` (one half) and `1` for the three-element chains.

use std::collections::{BTreeMap, BTreeSet};

use crate::fincat::Id;
use crate::smcc::{
    monoid_to_smcc, quantale_to_smcc, CommMonoidDesc, MonoidalFunctor, MonoidalNatTrans,
    QuantaleDesc, Smcc,
};
use crate::Limits;

fn chain_leq(els: &[&str]) -> BTreeSet<(Id, Id)> {
    let mut leq = BTreeSet::new();
    for (i, a) in els.iter().enumerate() {
        for b in els.iter().skip(i) {
            leq.insert((a.to_string(), b.to_string()));
        }
    }
    leq
}

/// The Boolean quantale ({0,1}, ∧, 1).
pub fn b2_desc() -> QuantaleDesc {
    let els = ["0", "1"];
    let mut tensor = BTreeMap::new();
    for a in els {
        for b in els {
            let v = if a == "1" && b == "1" { "1" } else { "0" };
            tensor.insert((a.to_string(), b.to_string()), v.to_string());
        }
    }
    QuantaleDesc {
        name: "b2".into(),
        elements: els.iter().map(|s| s.to_string()).collect(),
        leq: chain_leq(&els),
        tensor,
        unit: "1".into(),
    }
}

/// The Gödel chain ({0,½,1}, min, 1).
pub fn g3_desc() -> QuantaleDesc {
    let els = ["0", "h", "1"];
    let rank = |x: &str| els.iter().position(|e| *e == x).unwrap();
    let mut tensor = BTreeMap::new();
    for a in els {
        for b in els {
            let v = if rank(a) <= rank(b) { a } else { b };
            tensor.insert((a.to_string(), b.to_string()), v.to_string());
        }
    }
    QuantaleDesc {
        name: "g3".into(),
        elements: els.iter().map(|s| s.to_string()).collect(),
        leq: chain_leq(&els),
        tensor,
        unit: "1".into(),
    }
}

/// The three-element Łukasiewicz chain ({0,½,1}, a⊗b = max(0, a+b−1), 1).
pub fn l3_desc() -> QuantaleDesc {
    let els = ["0", "h", "1"];
    let val = |x: &str| match x {
        "0" => 0i32,
        "h" => 1,
        _ => 2,
    };
    let name_of = |v: i32| match v {
        0 => "0",
        1 => "h",
        _ => "1",
    };
    let mut tensor = BTreeMap::new();
    for a in els {
        for b in els {
            let v = (val(a) + val(b) - 2).max(0);
            tensor.insert((a.to_string(), b.to_string()), name_of(v).to_string());
        }
    }
    QuantaleDesc {
        name: "l3".into(),
        elements: els.iter().map(|s| s.to_string()).collect(),
        leq: chain_leq(&els),
        tensor,
        unit: "1".into(),
    }
}

/// The cyclic group of order 2 as a commutative monoid {1, σ}.
pub fn c2_desc() -> CommMonoidDesc {
    let mut op = BTreeMap::new();
    for a in ["e", "s"] {
        for b in ["e", "s"] {
            let v = if a == b { "e" } else { "s" };
            op.insert((a.to_string(), b.to_string()), v.to_string());
        }
    }
    CommMonoidDesc {
        name: "c2".into(),
        elements: vec!["e".into(), "s".into()],
        op,
        unit: "e".into(),
    }
}

/// The cyclic group of order 3 as a commutative monoid {e, s, s2}.
pub fn c3_desc() -> CommMonoidDesc {
    let els = ["e", "s", "s2"];
    let val = |x: &str| els.iter().position(|e| *e == x).unwrap();
    let mut op = BTreeMap::new();
    for a in els {
        for b in els {
            let v = els[(val(a) + val(b)) % 3];
            op.insert((a.to_string(), b.to_string()), v.to_string());
        }
    }
    CommMonoidDesc {
        name: "c3".into(),
        elements: els.iter().map(|s| s.to_string()).collect(),
        op,
        unit: "e".into(),
    }
}

pub fn b2(limits: &Limits) -> Smcc {
    quantale_to_smcc(&b2_desc(), limits).expect("b2 is a quantale")
}

pub fn g3(limits: &Limits) -> Smcc {
    quantale_to_smcc(&g3_desc(), limits).expect("g3 is a quantale")
}

pub fn l3(limits: &Limits) -> Smcc {
    quantale_to_smcc(&l3_desc(), limits).expect("l3 is a quantale")
}

pub fn c2(limits: &Limits) -> Smcc {
    monoid_to_smcc(&c2_desc(), limits).expect("c2 is a commutative monoid")
}

pub fn c3(limits: &Limits) -> Smcc {
    monoid_to_smcc(&c3_desc(), limits).expect("c3 is a commutative monoid")
}

/// All bundled symmetric monoidal closed categories.
pub fn bundled_smccs(limits: &Limits) -> Vec<Smcc> {
    vec![b2(limits), g3(limits), l3(limits), c2(limits), c3(limits)]
}

/// A monoidal functor between thin (quantale-built) bases given by a
/// monotone map of carriers; every structure cell is forced by thinness.
pub fn thin_monoidal_functor(
    name: &str,
    source: &Smcc,
    target: &Smcc,
    omap: &[(&str, &str)],
) -> MonoidalFunctor {
    let omap: BTreeMap<Id, Id> = omap
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let mut mmap = BTreeMap::new();
    for m in &source.cat.morphisms {
        let d = &omap[&source.cat.dom[m]];
        let c = &omap[&source.cat.cod[m]];
        mmap.insert(m.clone(), format!("le({d},{c})"));
    }
    let f = crate::fincat::FinFunctor {
        name: name.to_string(),
        source: source.cat.clone(),
        target: target.cat.clone(),
        omap: omap.clone(),
        mmap,
    };
    let fi = &omap[&source.unit];
    let e = format!("le({},{fi})", target.unit);
    let mut m = BTreeMap::new();
    for a in &source.cat.objects {
        for b in &source.cat.objects {
            let d = target.tobj(&omap[a], &omap[b]);
            let c = &omap[&source.tobj(a, b)];
            m.insert((a.clone(), b.clone()), format!("le({d},{c})"));
        }
    }
    MonoidalFunctor {
        name: name.to_string(),
        source: source.clone(),
        target: target.clone(),
        f,
        e,
        m,
    }
}

/// r: B2 → G3, the inclusion {0,1} ↪ {0,½,1} (left adjoint of q).
pub fn functor_r(limits: &Limits) -> MonoidalFunctor {
    thin_monoidal_functor("r", &b2(limits), &g3(limits), &[("0", "0"), ("1", "1")])
}

/// q: G3 → B2, x ↦ 1 iff x = 1 (strict symmetric, right adjoint of r).
pub fn functor_q(limits: &Limits) -> MonoidalFunctor {
    thin_monoidal_functor(
        "q",
        &g3(limits),
        &b2(limits),
        &[("0", "0"), ("h", "0"), ("1", "1")],
    )
}

/// ι: G3 → L3, identity on elements; lax because max(0,a+b−1) ≤ min(a,b),
/// with m not invertible at (½,½).
pub fn functor_iota(limits: &Limits) -> MonoidalFunctor {
    thin_monoidal_functor(
        "iota",
        &g3(limits),
        &l3(limits),
        &[("0", "0"), ("h", "h"), ("1", "1")],
    )
}

/// ι₀ = ι∘r∘q: G3 → L3, x ↦ 1 iff x = 1; pointwise below ι.
pub fn functor_iota0(limits: &Limits) -> MonoidalFunctor {
    thin_monoidal_functor(
        "iota0",
        &g3(limits),
        &l3(limits),
        &[("0", "0"), ("h", "0"), ("1", "1")],
    )
}

/// A monoidal transformation between thin-based monoidal functors; the
/// components are the forced morphisms of the thin target.
pub fn thin_monoidal_nat(
    name: &str,
    source: &MonoidalFunctor,
    target: &MonoidalFunctor,
) -> MonoidalNatTrans {
    let components = source
        .source
        .cat
        .objects
        .iter()
        .map(|a| {
            let d = &source.f.omap[a];
            let c = &target.f.omap[a];
            (a.clone(), format!("le({d},{c})"))
        })
        .collect();
    MonoidalNatTrans {
        name: name.to_string(),
        source: source.clone(),
        target: target.clone(),
        components,
    }
}

/// α: ι₀ ⇒ ι, the bundled nonidentity monoidal transformation between lax
/// maps G3 → L3.
pub fn nat_alpha(limits: &Limits) -> MonoidalNatTrans {
    thin_monoidal_nat("alpha", &functor_iota0(limits), &functor_iota(limits))
}

/// η: 1_{B2} ⇒ q∘r (an identity, since q∘r = 1 on the nose).
pub fn nat_eta(limits: &Limits) -> MonoidalNatTrans {
    let qr = crate::smcc::compose_monoidal(&functor_q(limits), &functor_r(limits))
        .expect("q∘r composable");
    thin_monoidal_nat("eta", &crate::smcc::identity_monoidal(&b2(limits)), &qr)
}

/// ε: r∘q ⇒ 1_{G3}, the counit of r ⊣ q.
pub fn nat_epsilon(limits: &Limits) -> MonoidalNatTrans {
    let rq = crate::smcc::compose_monoidal(&functor_r(limits), &functor_q(limits))
        .expect("r∘q composable");
    thin_monoidal_nat("epsilon", &rq, &crate::smcc::identity_monoidal(&g3(limits)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smcc::{check_monoidal_functor, check_monoidal_nat, check_smcc, Strength};

    #[test]
    fn bundled_smccs_are_valid() {
        for v in bundled_smccs(&Limits::default()) {
            let rep = check_smcc(&v);
            assert!(rep.is_empty(), "{}: {rep}", v.name);
        }
    }

    #[test]
    fn residuals_match_hand_computation() {
        let lim = Limits::default();
        let b = b2(&lim);
        assert_eq!(b.ihom_of("1", "0"), "0");
        assert_eq!(b.ihom_of("0", "0"), "1");
        let g = g3(&lim);
        assert_eq!(g.ihom_of("h", "0"), "0");
        assert_eq!(g.ihom_of("1", "h"), "h");
        assert_eq!(g.ihom_of("1", "0"), "0");
        let l = l3(&lim);
        assert_eq!(l.ihom_of("h", "0"), "h");
        assert_eq!(l.ihom_of("1", "h"), "h");
        assert_eq!(l.ihom_of("h", "h"), "1");
    }

    #[test]
    fn residuation_galois_property() {
        // Hom(a⊗b, c) nonempty ⟺ Hom(b, [a,c]) nonempty, exhaustively.
        let lim = Limits::default();
        for v in [b2(&lim), g3(&lim), l3(&lim)] {
            for a in &v.cat.objects {
                for b in &v.cat.objects {
                    for c in &v.cat.objects {
                        let ab = v.tobj(a, b);
                        let h = v.ihom_of(a, c);
                        assert_eq!(
                            v.cat.hom(&ab, c).is_empty(),
                            v.cat.hom(b, &h).is_empty(),
                            "{}: ({a},{b},{c})",
                            v.name
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn c2_transpose_is_identity_bijection() {
        let v = c2(&Limits::default());
        assert_eq!(v.transpose_of("⋆", "⋆", "⋆", "s").unwrap(), "s");
        assert_eq!(v.untranspose("⋆", "⋆", "⋆", "s").unwrap(), "s");
    }

    #[test]
    fn bundled_functors_are_valid_with_expected_strength() {
        let lim = Limits::default();
        let r = functor_r(&lim);
        let q = functor_q(&lim);
        let iota = functor_iota(&lim);
        let iota0 = functor_iota0(&lim);
        for f in [&r, &q, &iota, &iota0] {
            let rep = check_monoidal_functor(f);
            assert!(rep.is_empty(), "{}: {rep}", f.name);
        }
        assert_eq!(r.strength(), Strength::Strict);
        assert_eq!(q.strength(), Strength::Strict);
        assert_eq!(iota.strength(), Strength::Lax);
        // m^ι is not invertible at (½,½): ½⊗_Ł½ = 0 < ½.
        let m = iota.m_at("h", "h").unwrap();
        assert!(!iota.target.cat.is_iso(&m));
    }

    #[test]
    fn iota0_is_iota_after_r_q() {
        let lim = Limits::default();
        let comp = crate::smcc::compose_monoidal(
            &functor_iota(&lim),
            &crate::smcc::compose_monoidal(&functor_r(&lim), &functor_q(&lim)).unwrap(),
        )
        .unwrap();
        assert!(comp.same_tables(&functor_iota0(&lim)));
    }

    #[test]
    fn bundled_nats_are_valid() {
        let lim = Limits::default();
        for t in [nat_alpha(&lim), nat_eta(&lim), nat_epsilon(&lim)] {
            let rep = check_monoidal_nat(&t);
            assert!(rep.is_empty(), "{}: {rep}", t.name);
        }
    }

    #[test]
    fn monoidal_composites_are_valid() {
        let lim = Limits::default();
        let rq = crate::smcc::compose_monoidal(&functor_r(&lim), &functor_q(&lim)).unwrap();
        let qr = crate::smcc::compose_monoidal(&functor_q(&lim), &functor_r(&lim)).unwrap();
        assert!(check_monoidal_functor(&rq).is_empty());
        assert!(check_monoidal_functor(&qr).is_empty());
        // q∘r = 1_{B2} on the nose.
        assert!(qr.same_tables(&crate::smcc::identity_monoidal(&b2(&lim))));
    }

    #[test]
    fn mutated_ihom_is_detected() {
        let mut v = b2(&Limits::default());
        v.ihom.insert(("1".into(), "0".into()), "1".into());
        let rep = check_smcc(&v);
        assert!(!rep.is_empty());
        assert!(rep.violations.iter().any(|x| x.law.starts_with("closedness")));
    }
}

/// The bundled finite index of bases: the three quantales with the bundled
/// functors and transformations among them.
pub fn bundled_base_index(limits: &Limits) -> crate::groth::BaseIndex {
    crate::groth::BaseIndex {
        name: "bundled".into(),
        smccs: vec![b2(limits), g3(limits), l3(limits)],
        functors: vec![
            functor_r(limits),
            functor_q(limits),
            functor_iota(limits),
            functor_iota0(limits),
        ],
        nats: vec![nat_alpha(limits), nat_eta(limits), nat_epsilon(limits)],
    }
}
