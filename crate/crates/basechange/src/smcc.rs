//! Symmetric monoidal closed structure on a finite category, with builders
//! from commutative quantales and commutative monoids, and ordinary
//! (lax/strong/strict) monoidal functors and monoidal transformations.

use std::collections::{BTreeMap, BTreeSet};

use crate::fincat::{
    check_category, check_functor, pair_id, product_category, FinCat, FinFunctor, Id,
};
use crate::report::{EngineError, LawReport, Result};
use crate::Limits;

/// A finite symmetric monoidal closed category: a [`FinCat`] plus tensor,
/// unit, coherence isomorphisms, internal homs, evaluation, and a transpose
/// bijection witnessing closedness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Smcc {
    pub name: String,
    pub cat: FinCat,
    /// product_category(cat, cat), the domain of the tensor functor.
    pub prod: FinCat,
    /// ⊗ as a functor cat × cat → cat on pair-encoded cells.
    pub tensor: FinFunctor,
    pub unit: Id,
    /// a_{A,B,C}: (A⊗B)⊗C → A⊗(B⊗C)
    pub assoc: BTreeMap<(Id, Id, Id), Id>,
    /// ℓ_A: I⊗A → A
    pub lunit: BTreeMap<Id, Id>,
    /// r_A: A⊗I → A
    pub runit: BTreeMap<Id, Id>,
    /// s_{A,B}: A⊗B → B⊗A
    pub sym: BTreeMap<(Id, Id), Id>,
    /// [A,B]
    pub ihom: BTreeMap<(Id, Id), Id>,
    /// Ev_{A,B}: A⊗[A,B] → B
    pub ev: BTreeMap<(Id, Id), Id>,
    /// (A,B,C,f:A⊗B→C) -> f̂: B→[A,C] with Ev∘(1_A⊗f̂) = f
    pub transpose: BTreeMap<(Id, Id, Id, Id), Id>,
    /// (A,B,C,g:B→[A,C]) -> f: A⊗B→C, inverse of the above
    pub transpose_inv: BTreeMap<(Id, Id, Id, Id), Id>,
}

impl Smcc {
    pub fn idm(&self, a: &str) -> Id {
        self.cat.identity[a].clone()
    }

    pub fn comp(&self, g: &str, f: &str) -> Result<Id> {
        self.cat.compose(g, f)
    }

    pub fn comp_all(&self, chain: &[&str]) -> Result<Id> {
        self.cat.compose_all(chain)
    }

    pub fn tobj(&self, a: &str, b: &str) -> Id {
        self.tensor.omap[&pair_id(a, b)].clone()
    }

    pub fn tmor(&self, f: &str, g: &str) -> Result<Id> {
        self.tensor
            .mmap
            .get(&pair_id(f, g))
            .cloned()
            .ok_or_else(|| EngineError::UnknownId(pair_id(f, g)))
    }

    pub fn a(&self, x: &str, y: &str, z: &str) -> Id {
        self.assoc[&(x.to_string(), y.to_string(), z.to_string())].clone()
    }

    pub fn a_inv(&self, x: &str, y: &str, z: &str) -> Result<Id> {
        self.inv(&self.a(x, y, z))
    }

    pub fn l(&self, a: &str) -> Id {
        self.lunit[a].clone()
    }

    pub fn l_inv(&self, a: &str) -> Result<Id> {
        self.inv(&self.l(a))
    }

    pub fn r(&self, a: &str) -> Id {
        self.runit[a].clone()
    }

    pub fn r_inv(&self, a: &str) -> Result<Id> {
        self.inv(&self.r(a))
    }

    pub fn s(&self, a: &str, b: &str) -> Id {
        self.sym[&(a.to_string(), b.to_string())].clone()
    }

    pub fn ihom_of(&self, a: &str, b: &str) -> Id {
        self.ihom[&(a.to_string(), b.to_string())].clone()
    }

    pub fn ev_at(&self, a: &str, b: &str) -> Id {
        self.ev[&(a.to_string(), b.to_string())].clone()
    }

    pub fn inv(&self, f: &str) -> Result<Id> {
        self.cat
            .inverse(f)
            .ok_or_else(|| EngineError::Invalid(format!("morphism {f} is not invertible")))
    }

    /// f: A⊗B → C  ↦  f̂: B → [A,C].
    pub fn transpose_of(&self, a: &str, b: &str, c: &str, f: &str) -> Result<Id> {
        self.transpose
            .get(&(a.to_string(), b.to_string(), c.to_string(), f.to_string()))
            .cloned()
            .ok_or_else(|| {
                EngineError::Shape(format!("no transpose entry at ({a},{b},{c}) for {f}"))
            })
    }

    /// g: B → [A,C]  ↦  f: A⊗B → C.
    pub fn untranspose(&self, a: &str, b: &str, c: &str, g: &str) -> Result<Id> {
        self.transpose_inv
            .get(&(a.to_string(), b.to_string(), c.to_string(), g.to_string()))
            .cloned()
            .ok_or_else(|| {
                EngineError::Shape(format!("no inverse-transpose entry at ({a},{b},{c}) for {g}"))
            })
    }

    /// The name of f: X → Y, i.e. the transpose of f∘r_X : X⊗I → Y, an arrow
    /// I → [X,Y].
    pub fn name_of(&self, f: &str) -> Result<Id> {
        let x = self.cat.dom_of(f)?.clone();
        let y = self.cat.cod_of(f)?.clone();
        let fr = self.comp(f, &self.r(&x))?;
        self.transpose_of(&x, &self.unit, &y, &fr)
    }

    /// Inverse of [`Smcc::name_of`]: recover f: X → Y from its name.
    pub fn unname(&self, x: &str, y: &str, n: &str) -> Result<Id> {
        // Ev∘(1_X⊗n) = f∘r_X, so f = Ev∘(1_X⊗n)∘r_X^{-1}.
        let step = self.tmor(&self.idm(x), n)?;
        let ev = self.ev_at(x, y);
        self.comp_all(&[&ev, &step, &self.r_inv(x)?])
    }

    /// All morphisms A → B in the underlying category.
    pub fn hom(&self, a: &str, b: &str) -> Vec<Id> {
        self.cat.hom(a, b)
    }

    /// Table equality ignoring display names.
    pub fn same_tables(&self, other: &Smcc) -> bool {
        self.cat.same_tables(&other.cat)
            && self.tensor.same_tables(&other.tensor)
            && self.unit == other.unit
            && self.assoc == other.assoc
            && self.lunit == other.lunit
            && self.runit == other.runit
            && self.sym == other.sym
            && self.ihom == other.ihom
            && self.ev == other.ev
            && self.transpose == other.transpose
    }

    /// The middle-four interchange (W⊗X)⊗(Y⊗Z) → (W⊗Y)⊗(X⊗Z), built from
    /// associators and one symmetry.
    pub fn interchange(&self, w: &str, x: &str, y: &str, z: &str) -> Result<Id> {
        let yz = self.tobj(y, z);
        let xz = self.tobj(x, z);
        let step1 = self.a(w, x, &yz);
        let step2 = self.tmor(&self.idm(w), &self.a_inv(x, y, z)?)?;
        let swap = self.tmor(&self.s(x, y), &self.idm(z))?;
        let step3 = self.tmor(&self.idm(w), &swap)?;
        let step4 = self.tmor(&self.idm(w), &self.a(y, x, z))?;
        let step5 = self.a_inv(w, y, &xz)?;
        self.comp_all(&[&step5, &step4, &step3, &step2, &step1])
    }
}

/// Description of a finite commutative quantale (complete lattice with a
/// join-preserving commutative monoid structure).
#[derive(Debug, Clone)]
pub struct QuantaleDesc {
    pub name: String,
    pub elements: Vec<Id>,
    /// The partial order as a set of (smaller, larger) pairs; must include
    /// the reflexive pairs.
    pub leq: BTreeSet<(Id, Id)>,
    pub tensor: BTreeMap<(Id, Id), Id>,
    pub unit: Id,
}

/// Description of a finite commutative monoid.
#[derive(Debug, Clone)]
pub struct CommMonoidDesc {
    pub name: String,
    pub elements: Vec<Id>,
    pub op: BTreeMap<(Id, Id), Id>,
    pub unit: Id,
}

fn le_id(a: &str, b: &str) -> Id {
    format!("le({a},{b})")
}

/// Build the thin symmetric monoidal closed category of a commutative
/// quantale.  Internal homs are residuals: [a,b] = ⋁{ s : a⊗s ≤ b }.
pub fn quantale_to_smcc(q: &QuantaleDesc, limits: &Limits) -> Result<Smcc> {
    let els = &q.elements;
    let leq = |a: &str, b: &str| q.leq.contains(&(a.to_string(), b.to_string()));
    // Order axioms.
    for a in els {
        if !leq(a, a) {
            return Err(EngineError::Invalid(format!("{}: order not reflexive at {a}", q.name)));
        }
        for b in els {
            if leq(a, b) && leq(b, a) && a != b {
                return Err(EngineError::Invalid(format!(
                    "{}: order not antisymmetric at ({a},{b})",
                    q.name
                )));
            }
            for c in els {
                if leq(a, b) && leq(b, c) && !leq(a, c) {
                    return Err(EngineError::Invalid(format!(
                        "{}: order not transitive at ({a},{b},{c})",
                        q.name
                    )));
                }
            }
        }
    }
    let tens = |a: &str, b: &str| -> Result<&Id> {
        q.tensor
            .get(&(a.to_string(), b.to_string()))
            .ok_or_else(|| EngineError::Invalid(format!("{}: ⊗ missing at ({a},{b})", q.name)))
    };
    // Commutative monoid.
    for a in els {
        if tens(a, &q.unit)? != a || tens(&q.unit, a)? != a {
            return Err(EngineError::Invalid(format!("{}: unit law fails at {a}", q.name)));
        }
        for b in els {
            if tens(a, b)? != tens(b, a)? {
                return Err(EngineError::Invalid(format!(
                    "{}: ⊗ not commutative at ({a},{b})",
                    q.name
                )));
            }
            for c in els {
                let l = tens(tens(a, b)?, c)?;
                let r = tens(a, tens(b, c)?)?;
                if l != r {
                    return Err(EngineError::Invalid(format!(
                        "{}: ⊗ not associative at ({a},{b},{c})",
                        q.name
                    )));
                }
            }
        }
    }
    // Binary joins and bottom must exist (finite completeness).
    let join = |a: &str, b: &str| -> Result<Id> {
        let ubs: Vec<&Id> = els.iter().filter(|u| leq(a, u) && leq(b, u)).collect();
        let mins: Vec<&&Id> = ubs
            .iter()
            .filter(|u| ubs.iter().all(|v| leq(u, v) || !leq(v, u)))
            .collect();
        // least upper bound: an upper bound below all others
        for u in &ubs {
            if ubs.iter().all(|v| leq(u, v)) {
                return Ok((*u).clone());
            }
        }
        let _ = mins;
        Err(EngineError::Invalid(format!(
            "{}: no join of {a} and {b}",
            q.name
        )))
    };
    let mut bottom: Option<&Id> = None;
    for a in els {
        if els.iter().all(|b| leq(a, b)) {
            bottom = Some(a);
        }
    }
    let bottom =
        bottom.ok_or_else(|| EngineError::Invalid(format!("{}: no bottom element", q.name)))?;
    // Join preservation of ⊗ (binary + empty joins suffice at finite scale).
    for a in els {
        if tens(a, bottom)? != bottom {
            return Err(EngineError::Invalid(format!(
                "{}: ⊗ does not preserve the empty join at ({a},⊥)",
                q.name
            )));
        }
        for b in els {
            for c in els {
                let lhs = tens(a, &join(b, c)?)?.clone();
                let rhs = join(tens(a, b)?, tens(a, c)?)?;
                if lhs != rhs {
                    return Err(EngineError::Invalid(format!(
                        "{}: ⊗ does not preserve joins at ({a},{b},{c})",
                        q.name
                    )));
                }
            }
        }
    }
    // Residuals.
    let mut ihom = BTreeMap::new();
    for a in els {
        for b in els {
            let mut best: Option<Id> = None;
            for s in els {
                if leq(tens(a, s)?, b) {
                    best = Some(match best {
                        None => s.clone(),
                        Some(t) => join(&t, s)?,
                    });
                }
            }
            let r = best.ok_or_else(|| {
                EngineError::Invalid(format!("{}: residual [{a},{b}] undefined", q.name))
            })?;
            // Residuation must actually hold at the join.
            if !leq(tens(a, &r)?, b) {
                return Err(EngineError::Invalid(format!(
                    "{}: ⊗ not join-preserving, residual [{a},{b}] fails",
                    q.name
                )));
            }
            ihom.insert((a.clone(), b.clone()), r);
        }
    }

    // Thin category.
    let mut dom = BTreeMap::new();
    let mut cod = BTreeMap::new();
    let mut identity = BTreeMap::new();
    let mut comp = BTreeMap::new();
    let mut morphisms = Vec::new();
    for a in els {
        identity.insert(a.clone(), le_id(a, a));
        for b in els {
            if leq(a, b) {
                let m = le_id(a, b);
                dom.insert(m.clone(), a.clone());
                cod.insert(m.clone(), b.clone());
                morphisms.push(m);
            }
        }
    }
    for g in &morphisms {
        for f in &morphisms {
            if cod[f] == dom[g] {
                comp.insert((g.clone(), f.clone()), le_id(&dom[f], &cod[g]));
            }
        }
    }
    let cat = FinCat {
        name: q.name.clone(),
        objects: els.clone(),
        morphisms,
        dom,
        cod,
        identity,
        comp,
    }
    .normalized();

    let prod = product_category(&cat, &cat, limits)?;
    // Tensor functor: pair objects through the ⊗ table; thinness forces mmap.
    let mut omap = BTreeMap::new();
    let mut mmap = BTreeMap::new();
    for a in els {
        for b in els {
            omap.insert(pair_id(a, b), tens(a, b)?.clone());
        }
    }
    for m in &prod.morphisms {
        let d = &prod.dom[m];
        let c = &prod.cod[m];
        mmap.insert(m.clone(), le_id(&omap[d], &omap[c]));
    }
    let tensor = FinFunctor {
        name: format!("⊗_{}", q.name),
        source: prod.clone(),
        target: cat.clone(),
        omap,
        mmap,
    };

    let mut smcc = Smcc {
        name: q.name.clone(),
        cat,
        prod,
        tensor,
        unit: q.unit.clone(),
        assoc: BTreeMap::new(),
        lunit: BTreeMap::new(),
        runit: BTreeMap::new(),
        sym: BTreeMap::new(),
        ihom,
        ev: BTreeMap::new(),
        transpose: BTreeMap::new(),
        transpose_inv: BTreeMap::new(),
    };
    // Thin: every coherence component is the unique morphism of its shape.
    for a in els {
        for b in els {
            let ab = smcc.tobj(a, b);
            let ba = smcc.tobj(b, a);
            smcc.sym.insert((a.clone(), b.clone()), le_id(&ab, &ba));
            for c in els {
                let left = smcc.tobj(&smcc.tobj(a, b), c);
                let right = smcc.tobj(a, &smcc.tobj(b, c));
                smcc.assoc
                    .insert((a.clone(), b.clone(), c.clone()), le_id(&left, &right));
            }
        }
        smcc.lunit.insert(a.clone(), le_id(&smcc.tobj(&q.unit, a), a));
        smcc.runit.insert(a.clone(), le_id(&smcc.tobj(a, &q.unit), a));
    }
    // Evaluation and the (at most one entry per hom) transpose tables.
    for a in els {
        for b in els {
            let h = smcc.ihom_of(a, b);
            let dom_ev = smcc.tobj(a, &h);
            smcc.ev.insert((a.clone(), b.clone()), le_id(&dom_ev, b));
        }
    }
    for a in els {
        for b in els {
            for c in els {
                let ab = smcc.tobj(a, b);
                let h = smcc.ihom_of(a, c);
                if leq(&ab, c) {
                    let f = le_id(&ab, c);
                    let g = le_id(b, &h);
                    smcc.transpose
                        .insert((a.clone(), b.clone(), c.clone(), f.clone()), g.clone());
                    smcc.transpose_inv
                        .insert((a.clone(), b.clone(), c.clone(), g), f);
                }
            }
        }
    }
    Ok(smcc)
}

/// Build the one-object symmetric monoidal closed category of a commutative
/// monoid: End(⋆) = M, f⊗g = fg, Ev = identity, transpose = identity.
pub fn monoid_to_smcc(m: &CommMonoidDesc, limits: &Limits) -> Result<Smcc> {
    let els = &m.elements;
    let op = |a: &str, b: &str| -> Result<&Id> {
        m.op.get(&(a.to_string(), b.to_string()))
            .ok_or_else(|| EngineError::Invalid(format!("{}: op missing at ({a},{b})", m.name)))
    };
    for a in els {
        if op(a, &m.unit)? != a || op(&m.unit, a)? != a {
            return Err(EngineError::Invalid(format!("{}: unit law fails at {a}", m.name)));
        }
        for b in els {
            if op(a, b)? != op(b, a)? {
                return Err(EngineError::Invalid(format!(
                    "{}: not commutative at ({a},{b})",
                    m.name
                )));
            }
            for c in els {
                if op(op(a, b)?, c)? != op(a, op(b, c)?)? {
                    return Err(EngineError::Invalid(format!(
                        "{}: not associative at ({a},{b},{c})",
                        m.name
                    )));
                }
            }
        }
    }
    let star: Id = "⋆".into();
    let mut comp = BTreeMap::new();
    for g in els {
        for f in els {
            comp.insert((g.clone(), f.clone()), op(g, f)?.clone());
        }
    }
    let cat = FinCat {
        name: m.name.clone(),
        objects: vec![star.clone()],
        morphisms: els.clone(),
        dom: els.iter().map(|e| (e.clone(), star.clone())).collect(),
        cod: els.iter().map(|e| (e.clone(), star.clone())).collect(),
        identity: [(star.clone(), m.unit.clone())].into_iter().collect(),
        comp,
    }
    .normalized();
    let prod = product_category(&cat, &cat, limits)?;
    let mut mmap = BTreeMap::new();
    for f in els {
        for g in els {
            mmap.insert(pair_id(f, g), op(f, g)?.clone());
        }
    }
    let tensor = FinFunctor {
        name: format!("⊗_{}", m.name),
        source: prod.clone(),
        target: cat.clone(),
        omap: [(pair_id(&star, &star), star.clone())].into_iter().collect(),
        mmap,
    };
    let key3 = (star.clone(), star.clone(), star.clone());
    let key2 = (star.clone(), star.clone());
    let mut transpose = BTreeMap::new();
    let mut transpose_inv = BTreeMap::new();
    for f in els {
        transpose.insert(
            (star.clone(), star.clone(), star.clone(), f.clone()),
            f.clone(),
        );
        transpose_inv.insert(
            (star.clone(), star.clone(), star.clone(), f.clone()),
            f.clone(),
        );
    }
    Ok(Smcc {
        name: m.name.clone(),
        cat,
        prod,
        tensor,
        unit: star.clone(),
        assoc: [(key3, m.unit.clone())].into_iter().collect(),
        lunit: [(star.clone(), m.unit.clone())].into_iter().collect(),
        runit: [(star.clone(), m.unit.clone())].into_iter().collect(),
        sym: [(key2.clone(), m.unit.clone())].into_iter().collect(),
        ihom: [(key2.clone(), star.clone())].into_iter().collect(),
        ev: [(key2, m.unit.clone())].into_iter().collect(),
        transpose,
        transpose_inv,
    })
}

/// Exhaustively check every symmetric-monoidal-closed law of `v`.
pub fn check_smcc(v: &Smcc) -> LawReport {
    let mut rep = LawReport::new();
    rep.absorb("cat", check_category(&v.cat));
    rep.absorb("prod", check_category(&v.prod));
    rep.absorb("tensor", check_functor(&v.tensor));
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    match product_category(&v.cat, &v.cat, &Limits::default()) {
        Ok(p) => {
            if !p.same_tables(&v.prod) {
                rep.structural("prod is not the product of cat with itself".to_string());
            }
        }
        Err(e) => rep.structural(format!("cannot rebuild product: {e}")),
    }
    if !v.cat.objects.contains(&v.unit) {
        rep.structural(format!("unit {} unknown", v.unit));
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }

    let objs = &v.cat.objects;
    let mors = &v.cat.morphisms;

    // Component shapes + invertibility.
    let mut shape = |m: &Id, d: Id, c: Id, what: &str| {
        if v.cat.dom.get(m) != Some(&d) || v.cat.cod.get(m) != Some(&c) {
            rep.structural(format!("{what} component {m} should be {d} → {c}"));
        }
    };
    for a in objs {
        for b in objs {
            for c in objs {
                let m = v.a(a, b, c);
                shape(
                    &m,
                    v.tobj(&v.tobj(a, b), c),
                    v.tobj(a, &v.tobj(b, c)),
                    "assoc",
                );
            }
            let m = v.s(a, b);
            shape(&m, v.tobj(a, b), v.tobj(b, a), "sym");
        }
        shape(&v.l(a), v.tobj(&v.unit, a), a.clone(), "lunit");
        shape(&v.r(a), v.tobj(a, &v.unit), a.clone(), "runit");
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    for a in objs {
        for b in objs {
            for c in objs {
                if !v.cat.is_iso(&v.a(a, b, c)) {
                    rep.violation("assoc-iso", format!("a({a},{b},{c}) not invertible"));
                }
            }
            if !v.cat.is_iso(&v.s(a, b)) {
                rep.violation("sym-iso", format!("s({a},{b}) not invertible"));
            }
        }
        if !v.cat.is_iso(&v.l(a)) {
            rep.violation("lunit-iso", format!("ℓ({a}) not invertible"));
        }
        if !v.cat.is_iso(&v.r(a)) {
            rep.violation("runit-iso", format!("r({a}) not invertible"));
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }

    // Naturality of the coherence families.
    let chk = |rep: &mut LawReport, law: &str, w: String, l: Result<Id>, r: Result<Id>| match (l, r)
    {
        (Ok(l), Ok(r)) => {
            if l != r {
                rep.violation(law, format!("{w}: {l} ≠ {r}"));
            }
        }
        (l, r) => rep.structural(format!("{law} at {w}: not composable ({l:?} / {r:?})")),
    };
    for f in mors {
        let (a, a2) = (&v.cat.dom[f], &v.cat.cod[f]);
        for g in mors {
            let (b, b2) = (&v.cat.dom[g], &v.cat.cod[g]);
            // symmetry
            let fg = v.tmor(f, g);
            let gf = v.tmor(g, f);
            if let (Ok(fg), Ok(gf)) = (fg, gf) {
                chk(
                    &mut rep,
                    "sym-natural",
                    format!("({f},{g})"),
                    v.comp(&v.s(a2, b2), &fg),
                    v.comp(&gf, &v.s(a, b)),
                );
            }
            for h in mors {
                let (c, c2) = (&v.cat.dom[h], &v.cat.cod[h]);
                let lhs = v
                    .tmor(&v.tmor(f, g).unwrap(), h)
                    .and_then(|m| v.comp(&v.a(a2, b2, c2), &m));
                let rhs = v
                    .tmor(f, &v.tmor(g, h).unwrap())
                    .and_then(|m| v.comp(&m, &v.a(a, b, c)));
                chk(&mut rep, "assoc-natural", format!("({f},{g},{h})"), lhs, rhs);
            }
        }
        // unitors
        let lhs = v
            .tmor(&v.idm(&v.unit), f)
            .and_then(|m| v.comp(&v.l(a2), &m));
        chk(
            &mut rep,
            "lunit-natural",
            f.clone(),
            lhs,
            v.comp(f, &v.l(a)),
        );
        let rhs = v
            .tmor(f, &v.idm(&v.unit))
            .and_then(|m| v.comp(&v.r(a2), &m));
        chk(
            &mut rep,
            "runit-natural",
            f.clone(),
            rhs,
            v.comp(f, &v.r(a)),
        );
    }

    // Mac Lane axioms.
    for a in objs {
        for b in objs {
            // triangle: (1_a⊗ℓ_b)∘a_{a,I,b} = r_a⊗1_b
            let lhs = v
                .tmor(&v.idm(a), &v.l(b))
                .and_then(|m| v.comp(&m, &v.a(a, &v.unit, b)));
            let rhs = v.tmor(&v.r(a), &v.idm(b));
            chk(&mut rep, "triangle", format!("({a},{b})"), lhs, rhs);
            // symmetry involution
            let lhs = v.comp(&v.s(b, a), &v.s(a, b));
            chk(
                &mut rep,
                "sym-involution",
                format!("({a},{b})"),
                lhs,
                Ok(v.idm(&v.tobj(a, b))),
            );
            for c in objs {
                // hexagon: a_{b,c,a}∘s_{a,b⊗c}∘a_{a,b,c} = (1_b⊗s_{a,c})∘a_{b,a,c}∘(s_{a,b}⊗1_c)
                let bc = v.tobj(b, c);
                let lhs = v.comp_all(&[&v.a(b, c, a), &v.s(a, &bc), &v.a(a, b, c)]);
                let rhs = (|| {
                    let w1 = v.tmor(&v.s(a, b), &v.idm(c))?;
                    let w2 = v.tmor(&v.idm(b), &v.s(a, c))?;
                    v.comp_all(&[&w2, &v.a(b, a, c), &w1])
                })();
                chk(&mut rep, "hexagon", format!("({a},{b},{c})"), lhs, rhs);
                for d in objs {
                    // pentagon
                    let lhs = v.comp(&v.a(a, b, &v.tobj(c, d)), &v.a(&v.tobj(a, b), c, d));
                    let rhs = (|| {
                        let w1 = v.tmor(&v.a(a, b, c), &v.idm(d))?;
                        let w2 = v.tmor(&v.idm(a), &v.a(b, c, d))?;
                        v.comp_all(&[&w2, &v.a(a, &v.tobj(b, c), d), &w1])
                    })();
                    chk(&mut rep, "pentagon", format!("({a},{b},{c},{d})"), lhs, rhs);
                }
            }
        }
    }
    // ℓ_I = r_I
    if v.l(&v.unit) != v.r(&v.unit) {
        rep.violation("lunit-runit-at-unit", format!("ℓ_I = {} ≠ {} = r_I", v.l(&v.unit), v.r(&v.unit)));
    }

    // Closedness, counting part: |Hom(A⊗B,C)| must equal |Hom(B,[A,C])|.
    // Checked before the evaluation tables so that a mis-set internal hom is
    // reported as the law failure it is.
    for a in objs {
        for b in objs {
            for c in objs {
                if let Some(h) = v.ihom.get(&(a.clone(), c.clone())) {
                    let ab = v.tobj(a, b);
                    let source = v.cat.hom(&ab, c);
                    let target = v.cat.hom(b, h);
                    if source.len() != target.len() {
                        rep.violation(
                            "closedness-bijection",
                            format!(
                                "|Hom({ab},{c})| = {} ≠ {} = |Hom({b},[{a},{c}])| at ({a},{b},{c})",
                                source.len(),
                                target.len()
                            ),
                        );
                    }
                }
            }
        }
    }

    // Closedness: transpose is a shape-correct bijection satisfying the
    // evaluation equation, for every object triple.
    for a in objs {
        for b in objs {
            match v.ihom.get(&(a.clone(), b.clone())) {
                Some(h) if v.cat.objects.contains(h) => {
                    let e = v.ev_at(a, b);
                    if v.cat.dom.get(&e) != Some(&v.tobj(a, h)) || v.cat.cod.get(&e) != Some(b) {
                        rep.structural(format!("Ev({a},{b}) has wrong shape"));
                    }
                }
                _ => rep.structural(format!("missing internal hom [{a},{b}]")),
            }
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    for a in objs {
        for b in objs {
            for c in objs {
                let ab = v.tobj(a, b);
                let h = v.ihom_of(a, c);
                let source = v.cat.hom(&ab, c);
                let target = v.cat.hom(b, &h);
                let mut seen = BTreeSet::new();
                for f in &source {
                    match v.transpose_of(a, b, c, f) {
                        Ok(fh) => {
                            if !target.contains(&fh) {
                                rep.violation(
                                    "closedness-shape",
                                    format!("transpose of {f} at ({a},{b},{c}) is not {b}→[{a},{c}]"),
                                );
                                continue;
                            }
                            seen.insert(fh.clone());
                            // Ev∘(1⊗f̂) = f
                            let lhs = v
                                .tmor(&v.idm(a), &fh)
                                .and_then(|m| v.comp(&v.ev_at(a, c), &m));
                            match lhs {
                                Ok(l) if l == *f => {}
                                Ok(l) => rep.violation(
                                    "closedness-evaluation",
                                    format!("Ev∘(1⊗{fh}) = {l} ≠ {f} at ({a},{b},{c})"),
                                ),
                                Err(e) => rep.structural(format!("evaluation at ({a},{b},{c}): {e}")),
                            }
                            match v.untranspose(a, b, c, &fh) {
                                Ok(back) if back == *f => {}
                                Ok(back) => rep.violation(
                                    "closedness-roundtrip",
                                    format!("untranspose(transpose({f})) = {back} at ({a},{b},{c})"),
                                ),
                                Err(e) => rep.structural(format!("{e}")),
                            }
                        }
                        Err(_) => rep.violation(
                            "closedness-total",
                            format!("no transpose of {f} at ({a},{b},{c})"),
                        ),
                    }
                }
                if seen.len() != source.len() {
                    rep.violation(
                        "closedness-injective",
                        format!("transpose not injective at ({a},{b},{c})"),
                    );
                }
                let _ = &target;
            }
        }
    }

    rep.canonicalize()
}

/// Derived strength classification of a monoidal functor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strength {
    Lax,
    Strong,
    Strict,
}

/// A (lax, symmetric when it checks out) monoidal functor between finite
/// symmetric monoidal closed categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidalFunctor {
    pub name: String,
    pub source: Smcc,
    pub target: Smcc,
    pub f: FinFunctor,
    /// e: I_W → F(I_V)
    pub e: Id,
    /// m_{A,B}: FA ⊗ FB → F(A⊗B)
    pub m: BTreeMap<(Id, Id), Id>,
}

impl MonoidalFunctor {
    pub fn ob(&self, a: &str) -> Result<&Id> {
        self.f.ob(a)
    }

    pub fn mor(&self, f: &str) -> Result<&Id> {
        self.f.mor(f)
    }

    pub fn m_at(&self, a: &str, b: &str) -> Result<Id> {
        self.m
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::Shape(format!("{}: missing m at ({a},{b})", self.name)))
    }

    /// Derived strong/strict classification of (e, m).
    pub fn strength(&self) -> Strength {
        let e_id = self.e == self.target.idm(&self.target.unit)
            && self.f.omap.get(&self.source.unit) == Some(&self.target.unit);
        let e_iso = self.target.cat.is_iso(&self.e);
        let mut m_id = true;
        let mut m_iso = true;
        for ((a, b), m) in &self.m {
            let fa = &self.f.omap[a];
            let fb = &self.f.omap[b];
            if *m != self.target.idm(&self.target.tobj(fa, fb)) {
                m_id = false;
            }
            if !self.target.cat.is_iso(m) {
                m_iso = false;
            }
        }
        if e_id && m_id {
            Strength::Strict
        } else if e_iso && m_iso {
            Strength::Strong
        } else {
            Strength::Lax
        }
    }

    /// Table equality ignoring names.
    pub fn same_tables(&self, other: &MonoidalFunctor) -> bool {
        self.f.same_tables(&other.f) && self.e == other.e && self.m == other.m
    }
}

pub fn identity_monoidal(v: &Smcc) -> MonoidalFunctor {
    let mut m = BTreeMap::new();
    for a in &v.cat.objects {
        for b in &v.cat.objects {
            m.insert((a.clone(), b.clone()), v.idm(&v.tobj(a, b)));
        }
    }
    MonoidalFunctor {
        name: format!("1_{}", v.name),
        source: v.clone(),
        target: v.clone(),
        f: crate::fincat::identity_functor(&v.cat),
        e: v.idm(&v.unit),
        m,
    }
}

/// g ∘ f with the composite monoidal structure
/// e = g(e_f)∘e_g and m = g(m_f)∘m_g.
pub fn compose_monoidal(g: &MonoidalFunctor, f: &MonoidalFunctor) -> Result<MonoidalFunctor> {
    if !f.target.cat.same_tables(&g.source.cat) {
        return Err(EngineError::Shape(format!(
            "cannot compose monoidal functors {} and {}",
            g.name, f.name
        )));
    }
    let func = crate::fincat::compose_functors(&g.f, &f.f)?;
    let e = g.target.comp(g.mor(&f.e)?, &g.e)?;
    let mut m = BTreeMap::new();
    for ((a, b), mf) in &f.m {
        let fa = f.ob(a)?;
        let fb = f.ob(b)?;
        let mg = g.m_at(fa, fb)?;
        m.insert((a.clone(), b.clone()), g.target.comp(g.mor(mf)?, &mg)?);
    }
    Ok(MonoidalFunctor {
        name: format!("{}∘{}", g.name, f.name),
        source: f.source.clone(),
        target: g.target.clone(),
        f: func,
        e,
        m,
    })
}

/// Exhaustively check the monoidal-functor coherence laws, including the
/// symmetry equation.
pub fn check_monoidal_functor(t: &MonoidalFunctor) -> LawReport {
    let mut rep = LawReport::new();
    rep.absorb("underlying", check_functor(&t.f));
    if !t.f.source.same_tables(&t.source.cat) || !t.f.target.same_tables(&t.target.cat) {
        rep.structural("underlying functor does not match declared source/target".to_string());
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    let v = &t.source;
    let w = &t.target;
    // e shape
    let fi = &t.f.omap[&v.unit];
    if w.cat.dom.get(&t.e) != Some(&w.unit) || w.cat.cod.get(&t.e) != Some(fi) {
        rep.structural(format!("e = {} should be {} → {}", t.e, w.unit, fi));
    }
    for a in &v.cat.objects {
        for b in &v.cat.objects {
            match t.m.get(&(a.clone(), b.clone())) {
                Some(m) => {
                    let d = w.tobj(&t.f.omap[a], &t.f.omap[b]);
                    let c = &t.f.omap[&v.tobj(a, b)];
                    if w.cat.dom.get(m) != Some(&d) || w.cat.cod.get(m) != Some(c) {
                        rep.structural(format!("m({a},{b}) = {m} should be {d} → {c}"));
                    }
                }
                None => rep.structural(format!("missing m({a},{b})")),
            }
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }

    let chk = |rep: &mut LawReport, law: &str, wtn: String, l: Result<Id>, r: Result<Id>| match (
        l, r,
    ) {
        (Ok(l), Ok(r)) => {
            if l != r {
                rep.violation(law, format!("{wtn}: {l} ≠ {r}"));
            }
        }
        (l, r) => rep.structural(format!("{law} at {wtn}: {l:?} / {r:?}")),
    };

    // Naturality of m.
    for f in &v.cat.morphisms {
        for g in &v.cat.morphisms {
            let (a, a2) = (&v.cat.dom[f], &v.cat.cod[f]);
            let (b, b2) = (&v.cat.dom[g], &v.cat.cod[g]);
            let lhs = (|| {
                let m2 = t.m_at(a2, b2)?;
                let wf = w.tmor(t.mor(f)?, t.mor(g)?)?;
                w.comp(&m2, &wf)
            })();
            let rhs = (|| {
                let vf = v.tmor(f, g)?;
                let m1 = t.m_at(a, b)?;
                w.comp(t.mor(&vf)?, &m1)
            })();
            chk(&mut rep, "m-natural", format!("({f},{g})"), lhs, rhs);
        }
    }

    for a in &v.cat.objects {
        let fa = &t.f.omap[a];
        // left unit: F(ℓ_a)∘m_{I,a}∘(e⊗1) = ℓ_{Fa}
        let lhs = (|| {
            let w1 = w.tmor(&t.e, &w.idm(fa))?;
            let m = t.m_at(&v.unit, a)?;
            w.comp_all(&[t.mor(&v.l(a))?, &m, &w1])
        })();
        chk(&mut rep, "unit-left", a.clone(), lhs, Ok(w.l(fa)));
        // right unit: F(r_a)∘m_{a,I}∘(1⊗e) = r_{Fa}
        let rhs = (|| {
            let w1 = w.tmor(&w.idm(fa), &t.e)?;
            let m = t.m_at(a, &v.unit)?;
            w.comp_all(&[t.mor(&v.r(a))?, &m, &w1])
        })();
        chk(&mut rep, "unit-right", a.clone(), rhs, Ok(w.r(fa)));
        for b in &v.cat.objects {
            let fb = &t.f.omap[b];
            // symmetry: F(s_{a,b})∘m_{a,b} = m_{b,a}∘s_{Fa,Fb}
            let lhs = (|| {
                let m = t.m_at(a, b)?;
                w.comp(t.mor(&v.s(a, b))?, &m)
            })();
            let rhs = (|| {
                let m = t.m_at(b, a)?;
                w.comp(&m, &w.s(fa, fb))
            })();
            chk(&mut rep, "symmetry", format!("({a},{b})"), lhs, rhs);
            for c in &v.cat.objects {
                let fc = &t.f.omap[c];
                // associativity hexagon
                let lhs = (|| {
                    let w1 = w.tmor(&t.m_at(a, b)?, &w.idm(fc))?;
                    let m2 = t.m_at(&v.tobj(a, b), c)?;
                    w.comp_all(&[t.mor(&v.a(a, b, c))?, &m2, &w1])
                })();
                let rhs = (|| {
                    let w1 = w.tmor(&w.idm(fa), &t.m_at(b, c)?)?;
                    let m2 = t.m_at(a, &v.tobj(b, c))?;
                    w.comp_all(&[&m2, &w1, &w.a(fa, fb, fc)])
                })();
                chk(&mut rep, "associativity", format!("({a},{b},{c})"), lhs, rhs);
            }
        }
    }
    rep.canonicalize()
}

/// A monoidal natural transformation between monoidal functors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidalNatTrans {
    pub name: String,
    pub source: MonoidalFunctor,
    pub target: MonoidalFunctor,
    /// object of the common source -> morphism in the target category
    pub components: BTreeMap<Id, Id>,
}

impl MonoidalNatTrans {
    pub fn at(&self, a: &str) -> Result<&Id> {
        self.components
            .get(a)
            .ok_or_else(|| EngineError::UnknownId(a.to_string()))
    }
}

pub fn identity_monoidal_nat(f: &MonoidalFunctor) -> MonoidalNatTrans {
    MonoidalNatTrans {
        name: format!("1_{}", f.name),
        source: f.clone(),
        target: f.clone(),
        components: f
            .source
            .cat
            .objects
            .iter()
            .map(|a| (a.clone(), f.target.idm(&f.f.omap[a])))
            .collect(),
    }
}

/// Check naturality plus the unit/multiplication compatibility squares.
pub fn check_monoidal_nat(t: &MonoidalNatTrans) -> LawReport {
    let mut rep = LawReport::new();
    let nat = crate::fincat::FinNatTrans {
        name: t.name.clone(),
        source: t.source.f.clone(),
        target: t.target.f.clone(),
        components: t.components.clone(),
    };
    rep.absorb("underlying", crate::fincat::check_nat(&nat));
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    let v = &t.source.source;
    let w = &t.source.target;
    // unit: α_I ∘ e_F = e_G
    match w.comp(&t.components[&v.unit], &t.source.e) {
        Ok(l) => {
            if l != t.target.e {
                rep.violation("monoidal-nat-unit", format!("α_I∘e = {l} ≠ {}", t.target.e));
            }
        }
        Err(e) => rep.structural(format!("unit square: {e}")),
    }
    // multiplication: α_{a⊗b} ∘ m^F = m^G ∘ (α_a⊗α_b)
    for a in &v.cat.objects {
        for b in &v.cat.objects {
            let lhs = (|| {
                let m = t.source.m_at(a, b)?;
                w.comp(&t.components[&v.tobj(a, b)], &m)
            })();
            let rhs = (|| {
                let wt = w.tmor(&t.components[a], &t.components[b])?;
                let m = t.target.m_at(a, b)?;
                w.comp(&m, &wt)
            })();
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    if l != r {
                        rep.violation("monoidal-nat-mult", format!("({a},{b}): {l} ≠ {r}"));
                    }
                }
                (l, r) => rep.structural(format!("mult square at ({a},{b}): {l:?} / {r:?}")),
            }
        }
    }
    rep.canonicalize()
}

/// Vertical composite β·α of monoidal transformations α: F ⇒ G, β: G ⇒ H.
pub fn vcomp_monoidal_nats(b: &MonoidalNatTrans, a: &MonoidalNatTrans) -> Result<MonoidalNatTrans> {
    if !b.source.same_tables(&a.target) {
        return Err(EngineError::Shape(format!(
            "cannot compose {} · {}: middle functors differ",
            b.name, a.name
        )));
    }
    let w = &a.source.target;
    let mut components = BTreeMap::new();
    for (x, n) in &a.components {
        components.insert(x.clone(), w.comp(b.at(x)?, n)?);
    }
    Ok(MonoidalNatTrans {
        name: format!("{}·{}", b.name, a.name),
        source: a.source.clone(),
        target: b.target.clone(),
        components,
    })
}

/// Left whisker u∘α of a monoidal transformation with a following functor u.
pub fn whisker_left_nat(u: &MonoidalFunctor, a: &MonoidalNatTrans) -> Result<MonoidalNatTrans> {
    let mut components = BTreeMap::new();
    for (x, n) in &a.components {
        components.insert(x.clone(), u.mor(n)?.clone());
    }
    Ok(MonoidalNatTrans {
        name: format!("{}∘{}", u.name, a.name),
        source: compose_monoidal(u, &a.source)?,
        target: compose_monoidal(u, &a.target)?,
        components,
    })
}

/// Right whisker α∘f of a monoidal transformation with a preceding functor f.
pub fn whisker_right_nat(a: &MonoidalNatTrans, f: &MonoidalFunctor) -> Result<MonoidalNatTrans> {
    let mut components = BTreeMap::new();
    for x in &f.source.cat.objects {
        components.insert(x.clone(), a.at(f.ob(x)?)?.clone());
    }
    Ok(MonoidalNatTrans {
        name: format!("{}∘{}", a.name, f.name),
        source: compose_monoidal(&a.source, f)?,
        target: compose_monoidal(&a.target, f)?,
        components,
    })
}
