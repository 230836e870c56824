//! Categories enriched in a fixed finite symmetric monoidal closed base:
//! V-categories, V-functors, V-natural transformations, tensor and unit of
//! the 2-category of V-categories, opposites, underlying ordinary
//! categories, and symmetric monoidal closed V-categories with their laws.
//!
//! Convention: multi-fold tensors are left-bracketed, and coherence
//! isomorphisms of the base are inserted mechanically where shapes demand.

use std::collections::BTreeMap;

use crate::fincat::{pair_id, FinCat, Id};
use crate::report::{EngineError, LawReport, Result};
use crate::smcc::Smcc;
use crate::Limits;

/// A category enriched in a base [`Smcc`], given by hom-object and
/// composition/unit tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VCat {
    pub name: String,
    /// Display name of the base the tables live in (mismatch detection only).
    pub base_name: String,
    pub objects: Vec<Id>,
    /// (A,B) -> hom-object in the base
    pub hom: BTreeMap<(Id, Id), Id>,
    /// (A,B,C) -> c_{ABC}: hom(A,B)⊗hom(B,C) → hom(A,C) in the base
    pub comp: BTreeMap<(Id, Id, Id), Id>,
    /// A -> j_A: I → hom(A,A) in the base
    pub unit: BTreeMap<Id, Id>,
}

impl VCat {
    pub fn hom_of(&self, a: &str, b: &str) -> Id {
        self.hom[&(a.to_string(), b.to_string())].clone()
    }

    pub fn c(&self, a: &str, b: &str, c: &str) -> Id {
        self.comp[&(a.to_string(), b.to_string(), c.to_string())].clone()
    }

    pub fn j(&self, a: &str) -> Id {
        self.unit[a].clone()
    }

    /// Table equality ignoring display names.
    pub fn same_tables(&self, other: &VCat) -> bool {
        self.objects == other.objects
            && self.hom == other.hom
            && self.comp == other.comp
            && self.unit == other.unit
    }

    pub fn normalized(mut self) -> Self {
        self.objects.sort();
        self.objects.dedup();
        self
    }
}

/// An arrow of the underlying ordinary category of a V-category, carried as
/// its name: a base morphism I → hom(dom, cod).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UArrow {
    pub dom: Id,
    pub cod: Id,
    pub name: Id,
}

/// Identity underlying arrow of `x`.
pub fn uid(a: &VCat, x: &str) -> UArrow {
    UArrow {
        dom: x.to_string(),
        cod: x.to_string(),
        name: a.j(x),
    }
}

/// Underlying composition g∘f, via c and ℓ_I^{-1}.
pub fn ucomp(base: &Smcc, a: &VCat, g: &UArrow, f: &UArrow) -> Result<UArrow> {
    if f.cod != g.dom {
        return Err(EngineError::NotComposable {
            g: g.name.clone(),
            f: f.name.clone(),
        });
    }
    let pair = base.tmor(&f.name, &g.name)?;
    let c = a.c(&f.dom, &f.cod, &g.cod);
    let name = base.comp_all(&[&c, &pair, &base.l_inv(&base.unit)?])?;
    Ok(UArrow {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        name,
    })
}

/// Compose a chain of underlying arrows listed codomain-to-domain.
pub fn ucomp_all(base: &Smcc, a: &VCat, chain: &[&UArrow]) -> Result<UArrow> {
    let mut it = chain.iter().rev();
    let mut acc = (*it
        .next()
        .ok_or_else(|| EngineError::Invalid("empty underlying chain".into()))?)
    .clone();
    for next in it {
        acc = ucomp(base, a, next, &acc)?;
    }
    Ok(acc)
}

/// Two-sided inverse of an underlying arrow, by search over the underlying
/// hom-set.
pub fn u_inv(base: &Smcc, a: &VCat, u: &UArrow) -> Option<UArrow> {
    let back = base.cat.hom(&base.unit, &a.hom_of(&u.cod, &u.dom));
    for n in back {
        let cand = UArrow {
            dom: u.cod.clone(),
            cod: u.dom.clone(),
            name: n,
        };
        let left = ucomp(base, a, &cand, u).ok()?;
        let right = ucomp(base, a, u, &cand).ok()?;
        if left == uid(a, &u.dom) && right == uid(a, &u.cod) {
            return Some(cand);
        }
    }
    None
}

/// The base morphism hom(x,y) → hom(x,z) "postcompose with g: y → z".
pub fn post_map(base: &Smcc, a: &VCat, x: &str, g: &UArrow) -> Result<Id> {
    let h = a.hom_of(x, &g.dom);
    let step = base.tmor(&base.idm(&h), &g.name)?;
    base.comp_all(&[&a.c(x, &g.dom, &g.cod), &step, &base.r_inv(&h)?])
}

/// The base morphism hom(y,z) → hom(x,z) "precompose with f: x → y".
pub fn pre_map(base: &Smcc, a: &VCat, z: &str, f: &UArrow) -> Result<Id> {
    let h = a.hom_of(&f.cod, z);
    let step = base.tmor(&f.name, &base.idm(&h))?;
    base.comp_all(&[&a.c(&f.dom, &f.cod, z), &step, &base.l_inv(&h)?])
}

/// Exhaustively check the enriched category laws of `a` in `base`.
pub fn check_vcat(base: &Smcc, a: &VCat) -> LawReport {
    let mut rep = LawReport::new();
    for x in &a.objects {
        for y in &a.objects {
            match a.hom.get(&(x.clone(), y.clone())) {
                Some(h) if base.cat.objects.contains(h) => {}
                Some(h) => rep.structural(format!("hom({x},{y}) = {h} unknown in base")),
                None => rep.structural(format!("missing hom({x},{y})")),
            }
        }
        match a.unit.get(x) {
            Some(j) => {
                if base.cat.dom.get(j) != Some(&base.unit)
                    || base.cat.cod.get(j) != a.hom.get(&(x.clone(), x.clone()))
                {
                    rep.structural(format!("unit j_{x} = {j} has wrong shape"));
                }
            }
            None => rep.structural(format!("missing unit at {x}")),
        }
    }
    for x in &a.objects {
        for y in &a.objects {
            for z in &a.objects {
                match a.comp.get(&(x.clone(), y.clone(), z.clone())) {
                    Some(c) => {
                        let d = base.tobj(&a.hom_of(x, y), &a.hom_of(y, z));
                        if base.cat.dom.get(c) != Some(&d)
                            || base.cat.cod.get(c) != a.hom.get(&(x.clone(), z.clone()))
                        {
                            rep.structural(format!("c({x},{y},{z}) = {c} has wrong shape"));
                        }
                    }
                    None => rep.structural(format!("missing c({x},{y},{z})")),
                }
            }
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }

    // Associativity, over all object quadruples:
    //   c∘(c⊗1) = c∘(1⊗c)∘a  on (h1⊗h2)⊗h3.
    for w in &a.objects {
        for x in &a.objects {
            for y in &a.objects {
                for z in &a.objects {
                    let h1 = a.hom_of(w, x);
                    let h2 = a.hom_of(x, y);
                    let h3 = a.hom_of(y, z);
                    let lhs = (|| {
                        let w1 = base.tmor(&a.c(w, x, y), &base.idm(&h3))?;
                        base.comp(&a.c(w, y, z), &w1)
                    })();
                    let rhs = (|| {
                        let w1 = base.tmor(&base.idm(&h1), &a.c(x, y, z))?;
                        base.comp_all(&[&a.c(w, x, z), &w1, &base.a(&h1, &h2, &h3)])
                    })();
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => {
                            if l != r {
                                rep.violation(
                                    "enriched-associativity",
                                    format!("({w},{x},{y},{z}): {l} ≠ {r}"),
                                );
                            }
                        }
                        (l, r) => rep.structural(format!(
                            "associativity at ({w},{x},{y},{z}): {l:?} / {r:?}"
                        )),
                    }
                }
            }
        }
    }
    // Unit laws.
    for x in &a.objects {
        for y in &a.objects {
            let h = a.hom_of(x, y);
            let left = (|| {
                let w1 = base.tmor(&a.j(x), &base.idm(&h))?;
                base.comp_all(&[&a.c(x, x, y), &w1, &base.l_inv(&h)?])
            })();
            match left {
                Ok(l) if l == base.idm(&h) => {}
                Ok(l) => rep.violation("enriched-unit-left", format!("({x},{y}): {l}")),
                Err(e) => rep.structural(format!("unit-left at ({x},{y}): {e}")),
            }
            let right = (|| {
                let w1 = base.tmor(&base.idm(&h), &a.j(y))?;
                base.comp_all(&[&a.c(x, y, y), &w1, &base.r_inv(&h)?])
            })();
            match right {
                Ok(r) if r == base.idm(&h) => {}
                Ok(r) => rep.violation("enriched-unit-right", format!("({x},{y}): {r}")),
                Err(e) => rep.structural(format!("unit-right at ({x},{y}): {e}")),
            }
        }
    }
    rep.canonicalize()
}

/// The tensor product of V-categories: pair objects, tensored homs,
/// composition interleaved through the base symmetry.
pub fn tensor_vcat(base: &Smcc, a: &VCat, b: &VCat, limits: &Limits) -> Result<VCat> {
    static MEMO: std::sync::LazyLock<crate::memo::Memo<(Smcc, VCat, VCat, usize), VCat>> =
        std::sync::LazyLock::new(Default::default);
    MEMO.get_or_try_insert(
        (base.clone(), a.clone(), b.clone(), limits.max_morphisms),
        || tensor_vcat_uncached(base, a, b, limits),
    )
}

fn tensor_vcat_uncached(base: &Smcc, a: &VCat, b: &VCat, limits: &Limits) -> Result<VCat> {
    if a.base_name != b.base_name {
        return Err(EngineError::Shape(format!(
            "tensor of V-categories over different bases {} and {}",
            a.base_name, b.base_name
        )));
    }
    let requested = a.objects.len() * b.objects.len();
    if requested * requested > limits.max_morphisms {
        return Err(EngineError::SizeGuard {
            requested: requested * requested,
            limit: limits.max_morphisms,
        });
    }
    let mut hom = BTreeMap::new();
    let mut comp = BTreeMap::new();
    let mut unit = BTreeMap::new();
    let mut objects = Vec::new();
    for x in &a.objects {
        for p in &b.objects {
            objects.push(pair_id(x, p));
        }
    }
    for x in &a.objects {
        for p in &b.objects {
            for y in &a.objects {
                for q in &b.objects {
                    hom.insert(
                        (pair_id(x, p), pair_id(y, q)),
                        base.tobj(&a.hom_of(x, y), &b.hom_of(p, q)),
                    );
                }
            }
            let j = base.comp(
                &base.tmor(&a.j(x), &b.j(p))?,
                &base.l_inv(&base.unit)?,
            )?;
            unit.insert(pair_id(x, p), j);
        }
    }
    for x in &a.objects {
        for p in &b.objects {
            for y in &a.objects {
                for q in &b.objects {
                    for z in &a.objects {
                        for s in &b.objects {
                            let inter = base.interchange(
                                &a.hom_of(x, y),
                                &b.hom_of(p, q),
                                &a.hom_of(y, z),
                                &b.hom_of(q, s),
                            )?;
                            let cc = base.tmor(&a.c(x, y, z), &b.c(p, q, s))?;
                            comp.insert(
                                (pair_id(x, p), pair_id(y, q), pair_id(z, s)),
                                base.comp(&cc, &inter)?,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(VCat {
        name: format!("{}⊗{}", a.name, b.name),
        base_name: a.base_name.clone(),
        objects,
        hom,
        comp,
        unit,
    }
    .normalized())
}

/// The unit V-category: one object with hom = I.
pub fn unit_vcat(base: &Smcc) -> VCat {
    let star: Id = "⋆".into();
    VCat {
        name: format!("I_{}", base.name),
        base_name: base.name.clone(),
        objects: vec![star.clone()],
        hom: [((star.clone(), star.clone()), base.unit.clone())]
            .into_iter()
            .collect(),
        comp: [(
            (star.clone(), star.clone(), star.clone()),
            base.l(&base.unit),
        )]
        .into_iter()
        .collect(),
        unit: [(star.clone(), base.idm(&base.unit))].into_iter().collect(),
    }
}

/// The opposite V-category: swapped homs, composition twisted by the base
/// symmetry.
pub fn opposite_vcat(base: &Smcc, a: &VCat) -> Result<VCat> {
    let mut hom = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for x in &a.objects {
        for y in &a.objects {
            hom.insert((x.clone(), y.clone()), a.hom_of(y, x));
            for z in &a.objects {
                let h1 = a.hom_of(y, x);
                let h2 = a.hom_of(z, y);
                let tw = base.comp(&a.c(z, y, x), &base.s(&h1, &h2))?;
                comp.insert((x.clone(), y.clone(), z.clone()), tw);
            }
        }
    }
    Ok(VCat {
        name: format!("{}^op", a.name),
        base_name: a.base_name.clone(),
        objects: a.objects.clone(),
        hom,
        comp,
        unit: a.unit.clone(),
    })
}

/// Deterministic id of an underlying-category morphism: the name `n` of an
/// arrow A → B.
pub fn uarrow_id(a: &str, b: &str, n: &str) -> Id {
    format!("nm({a}=>{b};{n})")
}

/// The underlying ordinary category: morphisms A → B are the names
/// I → hom(A,B), composed via c and ℓ_I^{-1}.
pub fn underlying_cat(base: &Smcc, a: &VCat) -> Result<FinCat> {
    let mut morphisms = Vec::new();
    let mut dom = BTreeMap::new();
    let mut cod = BTreeMap::new();
    let mut identity = BTreeMap::new();
    let mut comp = BTreeMap::new();
    let mut arrows: Vec<UArrow> = Vec::new();
    for x in &a.objects {
        for y in &a.objects {
            for n in base.cat.hom(&base.unit, &a.hom_of(x, y)) {
                let m = uarrow_id(x, y, &n);
                dom.insert(m.clone(), x.clone());
                cod.insert(m.clone(), y.clone());
                morphisms.push(m);
                arrows.push(UArrow {
                    dom: x.clone(),
                    cod: y.clone(),
                    name: n,
                });
            }
        }
        identity.insert(x.clone(), uarrow_id(x, x, &a.j(x)));
    }
    for g in &arrows {
        for f in &arrows {
            if f.cod != g.dom {
                continue;
            }
            let h = ucomp(base, a, g, f)?;
            comp.insert(
                (
                    uarrow_id(&g.dom, &g.cod, &g.name),
                    uarrow_id(&f.dom, &f.cod, &f.name),
                ),
                uarrow_id(&h.dom, &h.cod, &h.name),
            );
        }
    }
    Ok(FinCat {
        name: format!("({})_0", a.name),
        objects: a.objects.clone(),
        morphisms,
        dom,
        cod,
        identity,
        comp,
    }
    .normalized())
}

/// A functor between V-categories over the same base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VFunctor {
    pub name: String,
    pub source: VCat,
    pub target: VCat,
    pub omap: BTreeMap<Id, Id>,
    /// (A,B) -> base morphism hom_src(A,B) → hom_tgt(FA,FB)
    pub hmap: BTreeMap<(Id, Id), Id>,
}

impl VFunctor {
    pub fn ob(&self, a: &str) -> Result<&Id> {
        self.omap
            .get(a)
            .ok_or_else(|| EngineError::UnknownId(a.to_string()))
    }

    pub fn h(&self, a: &str, b: &str) -> Result<Id> {
        self.hmap
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::Shape(format!("{}: missing hmap at ({a},{b})", self.name)))
    }

    pub fn same_tables(&self, other: &VFunctor) -> bool {
        self.omap == other.omap && self.hmap == other.hmap
    }
}

/// Apply the underlying functor of `f` to an underlying arrow.
pub fn uapply(base: &Smcc, f: &VFunctor, u: &UArrow) -> Result<UArrow> {
    Ok(UArrow {
        dom: f.ob(&u.dom)?.clone(),
        cod: f.ob(&u.cod)?.clone(),
        name: base.comp(&f.h(&u.dom, &u.cod)?, &u.name)?,
    })
}

/// g ∘ f (apply f first).
pub fn compose_vfunctors(base: &Smcc, g: &VFunctor, f: &VFunctor) -> Result<VFunctor> {
    if !f.target.same_tables(&g.source) {
        return Err(EngineError::Shape(format!(
            "cannot compose V-functors {} and {}",
            g.name, f.name
        )));
    }
    let mut omap = BTreeMap::new();
    let mut hmap = BTreeMap::new();
    for (a, fa) in &f.omap {
        omap.insert(a.clone(), g.ob(fa)?.clone());
    }
    for ((a, b), fh) in &f.hmap {
        let fa = f.ob(a)?;
        let fb = f.ob(b)?;
        hmap.insert(
            (a.clone(), b.clone()),
            base.comp(&g.h(fa, fb)?, fh)?,
        );
    }
    Ok(VFunctor {
        name: format!("{}∘{}", g.name, f.name),
        source: f.source.clone(),
        target: g.target.clone(),
        omap,
        hmap,
    })
}

/// F ⊗ G between tensor V-categories.
pub fn tensor_pair_vfunctor(
    base: &Smcc,
    f: &VFunctor,
    g: &VFunctor,
    limits: &Limits,
) -> Result<VFunctor> {
    let source = tensor_vcat(base, &f.source, &g.source, limits)?;
    let target = tensor_vcat(base, &f.target, &g.target, limits)?;
    let mut omap = BTreeMap::new();
    let mut hmap = BTreeMap::new();
    for x in &f.source.objects {
        for p in &g.source.objects {
            omap.insert(pair_id(x, p), pair_id(f.ob(x)?, g.ob(p)?));
            for y in &f.source.objects {
                for q in &g.source.objects {
                    hmap.insert(
                        (pair_id(x, p), pair_id(y, q)),
                        base.tmor(&f.h(x, y)?, &g.h(p, q)?)?,
                    );
                }
            }
        }
    }
    Ok(VFunctor {
        name: format!("{}⊗{}", f.name, g.name),
        source,
        target,
        omap,
        hmap,
    })
}

/// The symmetry V-functor a⊗b → b⊗a.
pub fn swap_vfunctor(base: &Smcc, a: &VCat, b: &VCat, limits: &Limits) -> Result<VFunctor> {
    let source = tensor_vcat(base, a, b, limits)?;
    let target = tensor_vcat(base, b, a, limits)?;
    let mut omap = BTreeMap::new();
    let mut hmap = BTreeMap::new();
    for x in &a.objects {
        for p in &b.objects {
            omap.insert(pair_id(x, p), pair_id(p, x));
            for y in &a.objects {
                for q in &b.objects {
                    hmap.insert(
                        (pair_id(x, p), pair_id(y, q)),
                        base.s(&a.hom_of(x, y), &b.hom_of(p, q)),
                    );
                }
            }
        }
    }
    Ok(VFunctor {
        name: format!("swap({},{})", a.name, b.name),
        source,
        target,
        omap,
        hmap,
    })
}

/// The canonical relabeling (a⊗b)⊗c → a⊗(b⊗c).
pub fn assoc_vfunctor(
    base: &Smcc,
    a: &VCat,
    b: &VCat,
    c: &VCat,
    limits: &Limits,
) -> Result<VFunctor> {
    let ab = tensor_vcat(base, a, b, limits)?;
    let bc = tensor_vcat(base, b, c, limits)?;
    let source = tensor_vcat(base, &ab, c, limits)?;
    let target = tensor_vcat(base, a, &bc, limits)?;
    let mut omap = BTreeMap::new();
    let mut hmap = BTreeMap::new();
    for x in &a.objects {
        for p in &b.objects {
            for u in &c.objects {
                omap.insert(
                    pair_id(&pair_id(x, p), u),
                    pair_id(x, &pair_id(p, u)),
                );
                for y in &a.objects {
                    for q in &b.objects {
                        for v in &c.objects {
                            hmap.insert(
                                (pair_id(&pair_id(x, p), u), pair_id(&pair_id(y, q), v)),
                                base.a(&a.hom_of(x, y), &b.hom_of(p, q), &c.hom_of(u, v)),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(VFunctor {
        name: format!("assoc({},{},{})", a.name, b.name, c.name),
        source,
        target,
        omap,
        hmap,
    })
}

/// Exhaustively check V-functor laws.
pub fn check_vfunctor(base: &Smcc, f: &VFunctor) -> LawReport {
    let mut rep = LawReport::new();
    for a in &f.source.objects {
        match f.omap.get(a) {
            Some(fa) if f.target.objects.contains(fa) => {}
            _ => rep.structural(format!("object {a} has no valid image")),
        }
    }
    if !rep.structural.is_empty() {
        return rep.canonicalize();
    }
    for a in &f.source.objects {
        for b in &f.source.objects {
            match f.hmap.get(&(a.clone(), b.clone())) {
                Some(h) => {
                    let d = f.source.hom_of(a, b);
                    let c = f.target.hom_of(&f.omap[a], &f.omap[b]);
                    if base.cat.dom.get(h) != Some(&d) || base.cat.cod.get(h) != Some(&c) {
                        rep.structural(format!("hmap({a},{b}) = {h} should be {d} → {c}"));
                    }
                }
                None => rep.structural(format!("missing hmap({a},{b})")),
            }
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    // Composition: F∘c = c∘(F⊗F); units: F∘j = j.
    for a in &f.source.objects {
        for b in &f.source.objects {
            for c in &f.source.objects {
                let lhs = base.comp(
                    &f.hmap[&(a.clone(), c.clone())],
                    &f.source.c(a, b, c),
                );
                let rhs = (|| {
                    let w = base.tmor(
                        &f.hmap[&(a.clone(), b.clone())],
                        &f.hmap[&(b.clone(), c.clone())],
                    )?;
                    base.comp(&f.target.c(&f.omap[a], &f.omap[b], &f.omap[c]), &w)
                })();
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => {
                        if l != r {
                            rep.violation(
                                "vfunctor-composition",
                                format!("({a},{b},{c}): {l} ≠ {r}"),
                            );
                        }
                    }
                    (l, r) => rep.structural(format!("composition at ({a},{b},{c}): {l:?} / {r:?}")),
                }
            }
        }
        match base.comp(&f.hmap[&(a.clone(), a.clone())], &f.source.j(a)) {
            Ok(l) => {
                if l != f.target.j(&f.omap[a]) {
                    rep.violation("vfunctor-unit", format!("{a}: {l}"));
                }
            }
            Err(e) => rep.structural(format!("unit at {a}: {e}")),
        }
    }
    rep.canonicalize()
}

/// A V-natural transformation: components are names I → hom(FA,GA).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VNatTrans {
    pub name: String,
    pub source: VFunctor,
    pub target: VFunctor,
    pub components: BTreeMap<Id, Id>,
}

impl VNatTrans {
    pub fn at(&self, a: &str) -> Result<UArrow> {
        let n = self
            .components
            .get(a)
            .ok_or_else(|| EngineError::UnknownId(a.to_string()))?;
        Ok(UArrow {
            dom: self.source.ob(a)?.clone(),
            cod: self.target.ob(a)?.clone(),
            name: n.clone(),
        })
    }
}

/// Exhaustively check enriched naturality.
pub fn check_vnat(base: &Smcc, t: &VNatTrans) -> LawReport {
    let mut rep = LawReport::new();
    if !t.source.source.same_tables(&t.target.source)
        || !t.source.target.same_tables(&t.target.target)
    {
        rep.structural("not a parallel pair of V-functors".to_string());
        return rep.canonicalize();
    }
    let src = &t.source.source;
    let tgt = &t.source.target;
    for a in &src.objects {
        match t.components.get(a) {
            Some(n) => {
                let fa = &t.source.omap[a];
                let ga = &t.target.omap[a];
                let h = tgt.hom_of(fa, ga);
                if base.cat.dom.get(n) != Some(&base.unit) || base.cat.cod.get(n) != Some(&h) {
                    rep.structural(format!("component at {a} = {n} should be {} → {h}", base.unit));
                }
            }
            None => rep.structural(format!("missing component at {a}")),
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    for a in &src.objects {
        for b in &src.objects {
            let lhs = (|| {
                let post = post_map(base, tgt, &t.source.omap[a], &t.at(b)?)?;
                base.comp(&post, &t.source.h(a, b)?)
            })();
            let rhs = (|| {
                let pre = pre_map(base, tgt, &t.target.omap[b], &t.at(a)?)?;
                base.comp(&pre, &t.target.h(a, b)?)
            })();
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    if l != r {
                        rep.violation("v-naturality", format!("({a},{b}): {l} ≠ {r}"));
                    }
                }
                (l, r) => rep.structural(format!("naturality at ({a},{b}): {l:?} / {r:?}")),
            }
        }
    }
    rep.canonicalize()
}

pub fn identity_vnat(f: &VFunctor) -> VNatTrans {
    VNatTrans {
        name: format!("1_{}", f.name),
        source: f.clone(),
        target: f.clone(),
        components: f
            .source
            .objects
            .iter()
            .map(|a| (a.clone(), f.target.j(&f.omap[a])))
            .collect(),
    }
}

/// Closure witness of a symmetric monoidal closed V-category: hom objects
/// plus invertible base morphisms hom(M⊗N,P) → hom(N,[M,P]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Closure {
    /// (M,P) -> object [M,P]
    pub hom: BTreeMap<(Id, Id), Id>,
    /// (M,N,P) -> base morphism hom(M⊗N,P) → hom(N,[M,P])
    pub iso: BTreeMap<(Id, Id, Id), Id>,
}

/// Pseudomonoid data on a V-category: tensor V-functor, unit object,
/// V-natural coherence families (component names), and closure witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMonClosedVCat {
    pub name: String,
    pub m: VCat,
    /// tensor_vcat(m,m) → m
    pub tensor: VFunctor,
    pub unit: Id,
    /// (A,B,C) -> name of (A⊗B)⊗C → A⊗(B⊗C)
    pub assoc: BTreeMap<(Id, Id, Id), Id>,
    /// A -> name of I⊗A → A
    pub lunit: BTreeMap<Id, Id>,
    /// A -> name of A⊗I → A
    pub runit: BTreeMap<Id, Id>,
    /// (A,B) -> name of A⊗B → B⊗A
    pub sym: BTreeMap<(Id, Id), Id>,
    pub closure: Closure,
}

impl SymMonClosedVCat {
    pub fn tobj(&self, a: &str, b: &str) -> Id {
        self.tensor.omap[&pair_id(a, b)].clone()
    }

    pub fn cl_hom(&self, m: &str, p: &str) -> Id {
        self.closure.hom[&(m.to_string(), p.to_string())].clone()
    }

    pub fn cl_iso(&self, m: &str, n: &str, p: &str) -> Result<Id> {
        self.closure
            .iso
            .get(&(m.to_string(), n.to_string(), p.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::Shape(format!("missing closure iso at ({m},{n},{p})")))
    }

    pub fn ua(&self, a: &str, b: &str, c: &str) -> UArrow {
        UArrow {
            dom: self.tobj(&self.tobj(a, b), c),
            cod: self.tobj(a, &self.tobj(b, c)),
            name: self.assoc[&(a.to_string(), b.to_string(), c.to_string())].clone(),
        }
    }

    pub fn ul(&self, a: &str) -> UArrow {
        UArrow {
            dom: self.tobj(&self.unit, a),
            cod: a.to_string(),
            name: self.lunit[a].clone(),
        }
    }

    pub fn ur(&self, a: &str) -> UArrow {
        UArrow {
            dom: self.tobj(a, &self.unit),
            cod: a.to_string(),
            name: self.runit[a].clone(),
        }
    }

    pub fn us(&self, a: &str, b: &str) -> UArrow {
        UArrow {
            dom: self.tobj(a, b),
            cod: self.tobj(b, a),
            name: self.sym[&(a.to_string(), b.to_string())].clone(),
        }
    }

    /// Tensor of underlying arrows via the tensor V-functor.
    pub fn utensor(&self, base: &Smcc, u: &UArrow, v: &UArrow) -> Result<UArrow> {
        let h = self
            .tensor
            .h(&pair_id(&u.dom, &v.dom), &pair_id(&u.cod, &v.cod))?;
        let pair = base.tmor(&u.name, &v.name)?;
        let name = base.comp_all(&[&h, &pair, &base.l_inv(&base.unit)?])?;
        Ok(UArrow {
            dom: self.tobj(&u.dom, &v.dom),
            cod: self.tobj(&u.cod, &v.cod),
            name,
        })
    }

    /// Enriched transpose at the underlying level:
    /// u: M⊗N → P  ↦  N → [M,P].
    pub fn etranspose(&self, base: &Smcc, m: &str, n: &str, p: &str, u: &UArrow) -> Result<UArrow> {
        let iso = self.cl_iso(m, n, p)?;
        Ok(UArrow {
            dom: n.to_string(),
            cod: self.cl_hom(m, p),
            name: base.comp(&iso, &u.name)?,
        })
    }

    /// Inverse enriched transpose: v: N → [M,P]  ↦  M⊗N → P.
    pub fn euntranspose(
        &self,
        base: &Smcc,
        m: &str,
        n: &str,
        p: &str,
        v: &UArrow,
    ) -> Result<UArrow> {
        let iso = self.cl_iso(m, n, p)?;
        let inv = base.inv(&iso)?;
        Ok(UArrow {
            dom: self.tobj(m, n),
            cod: p.to_string(),
            name: base.comp(&inv, &v.name)?,
        })
    }

    /// Derived closure unit η_N: N → [M, M⊗N].
    pub fn closure_unit(&self, base: &Smcc, m: &str, n: &str) -> Result<UArrow> {
        let mn = self.tobj(m, n);
        self.etranspose(base, m, n, &mn, &uid(&self.m, &mn))
    }

    /// Derived closure counit ε_P: M⊗[M,P] → P.
    pub fn closure_counit(&self, base: &Smcc, m: &str, p: &str) -> Result<UArrow> {
        let h = self.cl_hom(m, p);
        self.euntranspose(base, m, &h, p, &uid(&self.m, &h))
    }

    /// The V-functor M ⊗ (−).
    pub fn tensor_left_vfunctor(&self, base: &Smcc, m: &str) -> Result<VFunctor> {
        let mut omap = BTreeMap::new();
        let mut hmap = BTreeMap::new();
        for x in &self.m.objects {
            omap.insert(x.clone(), self.tobj(m, x));
            for y in &self.m.objects {
                let h = self.m.hom_of(x, y);
                let step = base.tmor(&self.m.j(m), &base.idm(&h))?;
                hmap.insert(
                    (x.clone(), y.clone()),
                    base.comp_all(&[
                        &self.tensor.h(&pair_id(m, x), &pair_id(m, y))?,
                        &step,
                        &base.l_inv(&h)?,
                    ])?,
                );
            }
        }
        Ok(VFunctor {
            name: format!("{m}⊗−"),
            source: self.m.clone(),
            target: self.m.clone(),
            omap,
            hmap,
        })
    }

    /// The V-functor (−) ⊗ M.
    pub fn tensor_right_vfunctor(&self, base: &Smcc, m: &str) -> Result<VFunctor> {
        let mut omap = BTreeMap::new();
        let mut hmap = BTreeMap::new();
        for x in &self.m.objects {
            omap.insert(x.clone(), self.tobj(x, m));
            for y in &self.m.objects {
                let h = self.m.hom_of(x, y);
                let step = base.tmor(&base.idm(&h), &self.m.j(m))?;
                hmap.insert(
                    (x.clone(), y.clone()),
                    base.comp_all(&[
                        &self.tensor.h(&pair_id(x, m), &pair_id(y, m))?,
                        &step,
                        &base.r_inv(&h)?,
                    ])?,
                );
            }
        }
        Ok(VFunctor {
            name: format!("−⊗{m}"),
            source: self.m.clone(),
            target: self.m.clone(),
            omap,
            hmap,
        })
    }

    /// The V-functor [M, −] derived from the closure witness.
    pub fn ihom_vfunctor(&self, base: &Smcc, m: &str) -> Result<VFunctor> {
        let mut omap = BTreeMap::new();
        let mut hmap = BTreeMap::new();
        for p in &self.m.objects {
            omap.insert(p.clone(), self.cl_hom(m, p));
        }
        for p in &self.m.objects {
            let eps = self.closure_counit(base, m, p)?;
            for p2 in &self.m.objects {
                // hom(P,P') → hom(M⊗[M,P],P') → hom([M,P],[M,P'])
                let pre = pre_map(base, &self.m, p2, &eps)?;
                let iso = self.cl_iso(m, &self.cl_hom(m, p), p2)?;
                hmap.insert((p.clone(), p2.clone()), base.comp(&iso, &pre)?);
            }
        }
        Ok(VFunctor {
            name: format!("[{m},−]"),
            source: self.m.clone(),
            target: self.m.clone(),
            omap,
            hmap,
        })
    }

    pub fn same_tables(&self, other: &SymMonClosedVCat) -> bool {
        self.m.same_tables(&other.m)
            && self.tensor.same_tables(&other.tensor)
            && self.unit == other.unit
            && self.assoc == other.assoc
            && self.lunit == other.lunit
            && self.runit == other.runit
            && self.sym == other.sym
            && self.closure == other.closure
    }
}

/// Exhaustively check the symmetric monoidal closed V-category laws.
pub fn check_symmonclosed(base: &Smcc, m: &SymMonClosedVCat) -> LawReport {
    static MEMO: std::sync::LazyLock<crate::memo::Memo<(Smcc, SymMonClosedVCat), LawReport>> =
        std::sync::LazyLock::new(Default::default);
    MEMO.get_or_insert((base.clone(), m.clone()), || {
        check_symmonclosed_uncached(base, m)
    })
}

fn check_symmonclosed_uncached(base: &Smcc, m: &SymMonClosedVCat) -> LawReport {
    let limits = Limits::default();
    let mut rep = LawReport::new();
    rep.absorb("vcat", check_vcat(base, &m.m));
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    let mm = match tensor_vcat(base, &m.m, &m.m, &limits) {
        Ok(t) => t,
        Err(e) => {
            rep.structural(format!("cannot build m⊗m: {e}"));
            return rep.canonicalize();
        }
    };
    if !m.tensor.source.same_tables(&mm) || !m.tensor.target.same_tables(&m.m) {
        rep.structural("tensor V-functor endpoints are not m⊗m → m".to_string());
        return rep.canonicalize();
    }
    rep.absorb("tensor", check_vfunctor(base, &m.tensor));
    if !m.m.objects.contains(&m.unit) {
        rep.structural(format!("unit object {} unknown", m.unit));
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }

    let idm = identity_vfunctor(base, &m.m);

    // Invertibility of all coherence components.
    for a in &m.m.objects {
        if u_inv(base, &m.m, &m.ul(a)).is_none() {
            rep.violation("lunit-iso", a.clone());
        }
        if u_inv(base, &m.m, &m.ur(a)).is_none() {
            rep.violation("runit-iso", a.clone());
        }
        for b in &m.m.objects {
            if u_inv(base, &m.m, &m.us(a, b)).is_none() {
                rep.violation("sym-iso", format!("({a},{b})"));
            }
            for c in &m.m.objects {
                if u_inv(base, &m.m, &m.ua(a, b, c)).is_none() {
                    rep.violation("assoc-iso", format!("({a},{b},{c})"));
                }
            }
        }
    }

    // V-naturality of the coherence families, via materialized V-functors.
    let vnat_checks: Result<()> = (|| {
        // symmetry: tensor ⇒ tensor∘swap on m⊗m
        let swap = swap_vfunctor(base, &m.m, &m.m, &limits)?;
        let tswap = compose_vfunctors(base, &m.tensor, &swap)?;
        let sym_nat = VNatTrans {
            name: "sV".into(),
            source: m.tensor.clone(),
            target: tswap,
            components: m
                .sym
                .iter()
                .map(|((a, b), n)| (pair_id(a, b), n.clone()))
                .collect(),
        };
        rep.absorb("sym-vnatural", check_vnat(base, &sym_nat));

        // associator: ⊗∘(⊗⊗1) ⇒ ⊗∘(1⊗⊗)∘assoc on (m⊗m)⊗m
        let t_pair_left = tensor_pair_vfunctor(base, &m.tensor, &idm, &limits)?;
        let f1 = compose_vfunctors(base, &m.tensor, &t_pair_left)?;
        let t_pair_right = tensor_pair_vfunctor(base, &idm, &m.tensor, &limits)?;
        let relabel = assoc_vfunctor(base, &m.m, &m.m, &m.m, &limits)?;
        let f2 = compose_vfunctors(
            base,
            &compose_vfunctors(base, &m.tensor, &t_pair_right)?,
            &relabel,
        )?;
        let assoc_nat = VNatTrans {
            name: "aV".into(),
            source: f1,
            target: f2,
            components: m
                .assoc
                .iter()
                .map(|((a, b, c), n)| (pair_id(&pair_id(a, b), c), n.clone()))
                .collect(),
        };
        rep.absorb("assoc-vnatural", check_vnat(base, &assoc_nat));

        // unitors
        let lf = m.tensor_left_vfunctor(base, &m.unit)?;
        let l_nat = VNatTrans {
            name: "lV".into(),
            source: lf,
            target: idm.clone(),
            components: m.lunit.clone(),
        };
        rep.absorb("lunit-vnatural", check_vnat(base, &l_nat));
        let rf = m.tensor_right_vfunctor(base, &m.unit)?;
        let r_nat = VNatTrans {
            name: "rV".into(),
            source: rf,
            target: idm.clone(),
            components: m.runit.clone(),
        };
        rep.absorb("runit-vnatural", check_vnat(base, &r_nat));
        Ok(())
    })();
    if let Err(e) = vnat_checks {
        rep.structural(format!("coherence V-naturality setup: {e}"));
    }

    // Mac Lane axioms at the underlying level.
    let eq = |rep: &mut LawReport, law: &str, w: String, l: Result<UArrow>, r: Result<UArrow>| {
        match (l, r) {
            (Ok(l), Ok(r)) => {
                if l != r {
                    rep.violation(law, format!("{w}: {} ≠ {}", l.name, r.name));
                }
            }
            (l, r) => rep.structural(format!("{law} at {w}: {l:?} / {r:?}")),
        }
    };
    for a in &m.m.objects {
        for b in &m.m.objects {
            // triangle
            let lhs = (|| {
                let w1 = m.utensor(base, &uid(&m.m, a), &m.ul(b))?;
                ucomp(base, &m.m, &w1, &m.ua(a, &m.unit, b))
            })();
            let rhs = m.utensor(base, &m.ur(a), &uid(&m.m, b));
            eq(&mut rep, "triangle", format!("({a},{b})"), lhs, rhs);
            // involution
            let lhs = ucomp(base, &m.m, &m.us(b, a), &m.us(a, b));
            eq(
                &mut rep,
                "sym-involution",
                format!("({a},{b})"),
                lhs,
                Ok(uid(&m.m, &m.tobj(a, b))),
            );
            for c in &m.m.objects {
                // hexagon
                let bc = m.tobj(b, c);
                let lhs = ucomp_all(base, &m.m, &[&m.ua(b, c, a), &m.us(a, &bc), &m.ua(a, b, c)]);
                let rhs = (|| {
                    let w1 = m.utensor(base, &m.us(a, b), &uid(&m.m, c))?;
                    let w2 = m.utensor(base, &uid(&m.m, b), &m.us(a, c))?;
                    ucomp_all(base, &m.m, &[&w2, &m.ua(b, a, c), &w1])
                })();
                eq(&mut rep, "hexagon", format!("({a},{b},{c})"), lhs, rhs);
                for d in &m.m.objects {
                    // pentagon
                    let lhs = ucomp(
                        base,
                        &m.m,
                        &m.ua(a, b, &m.tobj(c, d)),
                        &m.ua(&m.tobj(a, b), c, d),
                    );
                    let rhs = (|| {
                        let w1 = m.utensor(base, &m.ua(a, b, c), &uid(&m.m, d))?;
                        let w2 = m.utensor(base, &uid(&m.m, a), &m.ua(b, c, d))?;
                        ucomp_all(base, &m.m, &[&w2, &m.ua(a, &m.tobj(b, c), d), &w1])
                    })();
                    eq(&mut rep, "pentagon", format!("({a},{b},{c},{d})"), lhs, rhs);
                }
            }
        }
    }
    if m.lunit.get(&m.unit) != m.runit.get(&m.unit) {
        rep.violation("lunit-runit-at-unit", m.unit.clone());
    }

    // Closure witnesses: invertible isos, V-natural unit/counit, triangle
    // identities.
    for x in &m.m.objects {
        for n in &m.m.objects {
            for p in &m.m.objects {
                match m.cl_iso(x, n, p) {
                    Ok(iso) => {
                        let d = m.m.hom_of(&m.tobj(x, n), p);
                        let c = m.m.hom_of(n, &m.cl_hom(x, p));
                        if base.cat.dom.get(&iso) != Some(&d) || base.cat.cod.get(&iso) != Some(&c)
                        {
                            rep.structural(format!(
                                "closure iso at ({x},{n},{p}) should be {d} → {c}"
                            ));
                        } else if !base.cat.is_iso(&iso) {
                            rep.violation("closure-iso", format!("({x},{n},{p})"));
                        }
                    }
                    Err(e) => rep.structural(format!("{e}")),
                }
            }
        }
    }
    if !rep.structural.is_empty() {
        return rep.canonicalize();
    }
    for x in &m.m.objects {
        let res: Result<()> = (|| {
            let lf = m.tensor_left_vfunctor(base, x)?;
            let hf = m.ihom_vfunctor(base, x)?;
            // counit ε: (x⊗−)∘[x,−] ⇒ 1
            let src = compose_vfunctors(base, &lf, &hf)?;
            let mut eps_components = BTreeMap::new();
            let mut eta_components = BTreeMap::new();
            for p in &m.m.objects {
                eps_components.insert(p.clone(), m.closure_counit(base, x, p)?.name);
                eta_components.insert(p.clone(), m.closure_unit(base, x, p)?.name);
            }
            let eps_nat = VNatTrans {
                name: format!("ε^{x}"),
                source: src,
                target: idm.clone(),
                components: eps_components,
            };
            rep.absorb(&format!("closure-counit-vnatural[{x}]"), check_vnat(base, &eps_nat));
            // unit η: 1 ⇒ [x,−]∘(x⊗−)
            let tgt = compose_vfunctors(base, &hf, &lf)?;
            let eta_nat = VNatTrans {
                name: format!("η^{x}"),
                source: idm.clone(),
                target: tgt,
                components: eta_components,
            };
            rep.absorb(&format!("closure-unit-vnatural[{x}]"), check_vnat(base, &eta_nat));
            // triangle identities
            for n in &m.m.objects {
                let eta = m.closure_unit(base, x, n)?;
                let xn = m.tobj(x, n);
                let eps = m.closure_counit(base, x, &xn)?;
                let lhs = ucomp(
                    base,
                    &m.m,
                    &eps,
                    &m.utensor(base, &uid(&m.m, x), &eta)?,
                )?;
                if lhs != uid(&m.m, &xn) {
                    rep.violation(
                        "closure-triangle-1",
                        format!("({x},{n}): {}", lhs.name),
                    );
                }
            }
            for p in &m.m.objects {
                let h = m.cl_hom(x, p);
                let eta = m.closure_unit(base, x, &h)?;
                let eps = m.closure_counit(base, x, p)?;
                let heps = uapply(base, &hf, &eps)?;
                let lhs = ucomp(base, &m.m, &heps, &eta)?;
                if lhs != uid(&m.m, &h) {
                    rep.violation("closure-triangle-2", format!("({x},{p}): {}", lhs.name));
                }
            }
            Ok(())
        })();
        if let Err(e) = res {
            rep.structural(format!("closure check at {x}: {e}"));
        }
    }
    rep.canonicalize()
}

/// Identity V-functor with hom maps the base identities.
pub fn identity_vfunctor(base: &Smcc, a: &VCat) -> VFunctor {
    VFunctor {
        name: format!("1_{}", a.name),
        source: a.clone(),
        target: a.clone(),
        omap: a.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        hmap: a
            .hom
            .iter()
            .map(|((x, y), h)| ((x.clone(), y.clone()), base.idm(h)))
            .collect(),
    }
}

/// The hom V-functor M(−,−): M^op ⊗ M → underline(base).
pub fn hom_vfunctor(base: &Smcc, m: &SymMonClosedVCat, limits: &Limits) -> Result<VFunctor> {
    let under = crate::autoenrich::autoenrich_vcat(base, limits)?;
    let op = opposite_vcat(base, &m.m)?;
    let source = tensor_vcat(base, &op, &m.m, limits)?;
    let mut omap = BTreeMap::new();
    let mut hmap = BTreeMap::new();
    for a in &m.m.objects {
        for b in &m.m.objects {
            omap.insert(pair_id(a, b), m.m.hom_of(a, b));
        }
    }
    for a in &m.m.objects {
        for b in &m.m.objects {
            for a2 in &m.m.objects {
                for b2 in &m.m.objects {
                    // hom(a',a)⊗hom(b,b') → [hom(a,b), hom(a',b')]:
                    // transpose of hom(a,b)⊗(hom(a',a)⊗hom(b,b')) → hom(a',b')
                    let h_ab = m.m.hom_of(a, b);
                    let h_a2a = m.m.hom_of(a2, a);
                    let h_bb2 = m.m.hom_of(b, b2);
                    let pre = base.a_inv(&h_ab, &h_a2a, &h_bb2)?;
                    let sw = base.tmor(&base.s(&h_ab, &h_a2a), &base.idm(&h_bb2))?;
                    let c1 = base.tmor(&m.m.c(a2, a, b), &base.idm(&h_bb2))?;
                    let inner = base.comp_all(&[&m.m.c(a2, b, b2), &c1, &sw, &pre])?;
                    let dom2 = base.tobj(&h_a2a, &h_bb2);
                    let tr = base.transpose_of(&h_ab, &dom2, &m.m.hom_of(a2, b2), &inner)?;
                    hmap.insert((pair_id(a, b), pair_id(a2, b2)), tr);
                }
            }
        }
    }
    Ok(VFunctor {
        name: format!("{}(−,−)", m.name),
        source,
        target: under,
        omap,
        hmap,
    })
}

/// A monoidal V-functor: a V-functor between symmetric monoidal closed
/// V-categories with structure cells e (underlying arrow I_N → S I_M) and a
/// V-natural family m: SM⊗SM' → S(M⊗M').
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonVFunctor {
    pub name: String,
    pub source: SymMonClosedVCat,
    pub target: SymMonClosedVCat,
    pub f: VFunctor,
    pub e: UArrow,
    pub m: BTreeMap<(Id, Id), UArrow>,
    pub symmetric: bool,
}

impl MonVFunctor {
    pub fn m_at(&self, a: &str, b: &str) -> Result<UArrow> {
        self.m
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::Shape(format!("{}: missing m at ({a},{b})", self.name)))
    }

    pub fn same_tables(&self, other: &MonVFunctor) -> bool {
        self.f.same_tables(&other.f) && self.e == other.e && self.m == other.m
    }

    /// Strict when every structure cell is an identity underlying arrow.
    pub fn is_strict(&self) -> bool {
        if self.e != uid(&self.target.m, &self.target.unit) {
            return false;
        }
        self.m.iter().all(|(_, u)| *u == uid(&self.target.m, &u.dom))
    }
}

pub fn identity_mon_vfunctor(base: &Smcc, m: &SymMonClosedVCat) -> MonVFunctor {
    let mut mm = BTreeMap::new();
    for a in &m.m.objects {
        for b in &m.m.objects {
            mm.insert((a.clone(), b.clone()), uid(&m.m, &m.tobj(a, b)));
        }
    }
    MonVFunctor {
        name: format!("1_{}", m.name),
        source: m.clone(),
        target: m.clone(),
        f: identity_vfunctor(base, &m.m),
        e: uid(&m.m, &m.unit),
        m: mm,
        symmetric: true,
    }
}

/// t ∘ s with composite structure cells.
pub fn compose_mon_vfunctors(
    base: &Smcc,
    t: &MonVFunctor,
    s: &MonVFunctor,
) -> Result<MonVFunctor> {
    let f = compose_vfunctors(base, &t.f, &s.f)?;
    let e = ucomp(base, &t.target.m, &uapply(base, &t.f, &s.e)?, &t.e)?;
    let mut m = BTreeMap::new();
    for ((a, b), ms) in &s.m {
        let sa = s.f.ob(a)?;
        let sb = s.f.ob(b)?;
        let mt = t.m_at(sa, sb)?;
        m.insert(
            (a.clone(), b.clone()),
            ucomp(base, &t.target.m, &uapply(base, &t.f, ms)?, &mt)?,
        );
    }
    Ok(MonVFunctor {
        name: format!("{}∘{}", t.name, s.name),
        source: s.source.clone(),
        target: t.target.clone(),
        f,
        e,
        m,
        symmetric: t.symmetric && s.symmetric,
    })
}

/// Exhaustively check the monoidal V-functor laws.
pub fn check_mon_vfunctor(base: &Smcc, s: &MonVFunctor) -> LawReport {
    let limits = Limits::default();
    let mut rep = LawReport::new();
    rep.absorb("underlying", check_vfunctor(base, &s.f));
    if !s.f.source.same_tables(&s.source.m) || !s.f.target.same_tables(&s.target.m) {
        rep.structural("V-functor endpoints do not match the declared pseudomonoids");
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    let n = &s.target;
    let msrc = &s.source;
    // e shape
    let si = s.f.omap[&msrc.unit].clone();
    if s.e.dom != n.unit || s.e.cod != si {
        rep.structural(format!("e should be {} → {si}", n.unit));
    }
    for a in &msrc.m.objects {
        for b in &msrc.m.objects {
            match s.m.get(&(a.clone(), b.clone())) {
                Some(u) => {
                    let d = n.tobj(&s.f.omap[a], &s.f.omap[b]);
                    let c = s.f.omap[&msrc.tobj(a, b)].clone();
                    if u.dom != d || u.cod != c {
                        rep.structural(format!("m({a},{b}) should be {d} → {c}"));
                    }
                }
                None => rep.structural(format!("missing m({a},{b})")),
            }
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }

    // V-naturality of the m family: ⊗_N∘(S⊗S) ⇒ S∘⊗_M on m⊗m.
    let res: Result<()> = (|| {
        let ss = tensor_pair_vfunctor(base, &s.f, &s.f, &limits)?;
        let f1 = compose_vfunctors(base, &n.tensor, &ss)?;
        let f2 = compose_vfunctors(base, &s.f, &msrc.tensor)?;
        let nat = VNatTrans {
            name: format!("m^{}", s.name),
            source: f1,
            target: f2,
            components: s
                .m
                .iter()
                .map(|((a, b), u)| (pair_id(a, b), u.name.clone()))
                .collect(),
        };
        rep.absorb("m-vnatural", check_vnat(base, &nat));
        Ok(())
    })();
    if let Err(e) = res {
        rep.structural(format!("m-naturality setup: {e}"));
    }

    let eq = |rep: &mut LawReport, law: &str, w: String, l: Result<UArrow>, r: Result<UArrow>| {
        match (l, r) {
            (Ok(l), Ok(r)) => {
                if l != r {
                    rep.violation(law, format!("{w}: {} ≠ {}", l.name, r.name));
                }
            }
            (l, r) => rep.structural(format!("{law} at {w}: {l:?} / {r:?}")),
        }
    };

    for a in &msrc.m.objects {
        let sa = &s.f.omap[a];
        // unit laws
        let lhs = (|| {
            let w1 = n.utensor(base, &s.e, &uid(&n.m, sa))?;
            let m1 = s.m_at(&msrc.unit, a)?;
            let top = uapply(base, &s.f, &msrc.ul(a))?;
            ucomp_all(base, &n.m, &[&top, &m1, &w1])
        })();
        eq(&mut rep, "unit-left", a.clone(), lhs, Ok(n.ul(sa)));
        let rhs = (|| {
            let w1 = n.utensor(base, &uid(&n.m, sa), &s.e)?;
            let m1 = s.m_at(a, &msrc.unit)?;
            let top = uapply(base, &s.f, &msrc.ur(a))?;
            ucomp_all(base, &n.m, &[&top, &m1, &w1])
        })();
        eq(&mut rep, "unit-right", a.clone(), rhs, Ok(n.ur(sa)));
        for b in &msrc.m.objects {
            let sb = &s.f.omap[b];
            if s.symmetric {
                let lhs = (|| {
                    let top = uapply(base, &s.f, &msrc.us(a, b))?;
                    ucomp(base, &n.m, &top, &s.m_at(a, b)?)
                })();
                let rhs = (|| ucomp(base, &n.m, &s.m_at(b, a)?, &n.us(sa, sb)))();
                eq(&mut rep, "symmetry", format!("({a},{b})"), lhs, rhs);
            }
            for c in &msrc.m.objects {
                let sc = &s.f.omap[c];
                let lhs = (|| {
                    let w1 = n.utensor(base, &s.m_at(a, b)?, &uid(&n.m, sc))?;
                    let m2 = s.m_at(&msrc.tobj(a, b), c)?;
                    let top = uapply(base, &s.f, &msrc.ua(a, b, c))?;
                    ucomp_all(base, &n.m, &[&top, &m2, &w1])
                })();
                let rhs = (|| {
                    let w1 = n.utensor(base, &uid(&n.m, sa), &s.m_at(b, c)?)?;
                    let m2 = s.m_at(a, &msrc.tobj(b, c))?;
                    ucomp_all(base, &n.m, &[&m2, &w1, &n.ua(sa, sb, sc)])
                })();
                eq(&mut rep, "associativity", format!("({a},{b},{c})"), lhs, rhs);
            }
        }
    }
    rep.canonicalize()
}

/// A monoidal V-natural transformation between monoidal V-functors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonVNatTrans {
    pub name: String,
    pub source: MonVFunctor,
    pub target: MonVFunctor,
    pub components: BTreeMap<Id, Id>,
}

impl MonVNatTrans {
    pub fn at(&self, base: &Smcc, a: &str) -> Result<UArrow> {
        let _ = base;
        let n = self
            .components
            .get(a)
            .ok_or_else(|| EngineError::UnknownId(a.to_string()))?;
        Ok(UArrow {
            dom: self.source.f.ob(a)?.clone(),
            cod: self.target.f.ob(a)?.clone(),
            name: n.clone(),
        })
    }

    pub fn vnat(&self) -> VNatTrans {
        VNatTrans {
            name: self.name.clone(),
            source: self.source.f.clone(),
            target: self.target.f.clone(),
            components: self.components.clone(),
        }
    }
}

pub fn identity_mon_vnat(f: &MonVFunctor) -> MonVNatTrans {
    MonVNatTrans {
        name: format!("1_{}", f.name),
        source: f.clone(),
        target: f.clone(),
        components: f
            .source
            .m
            .objects
            .iter()
            .map(|a| (a.clone(), f.target.m.j(&f.f.omap[a])))
            .collect(),
    }
}

/// Check enriched naturality plus the monoidal compatibility squares.
pub fn check_mon_vnat(base: &Smcc, t: &MonVNatTrans) -> LawReport {
    let mut rep = LawReport::new();
    rep.absorb("underlying", check_vnat(base, &t.vnat()));
    if !rep.is_empty() {
        return rep.canonicalize();
    }
    let n = &t.source.target;
    let msrc = &t.source.source;
    // unit: α_{I}∘e^F = e^G
    match (|| {
        let alpha_i = t.at(base, &msrc.unit)?;
        ucomp(base, &n.m, &alpha_i, &t.source.e)
    })() {
        Ok(l) => {
            if l != t.target.e {
                rep.violation("mon-vnat-unit", format!("{} ≠ {}", l.name, t.target.e.name));
            }
        }
        Err(e) => rep.structural(format!("unit square: {e}")),
    }
    // multiplication
    for a in &msrc.m.objects {
        for b in &msrc.m.objects {
            let lhs = (|| {
                let alpha = t.at(base, &msrc.tobj(a, b))?;
                ucomp(base, &n.m, &alpha, &t.source.m_at(a, b)?)
            })();
            let rhs = (|| {
                let w = n.utensor(base, &t.at(base, a)?, &t.at(base, b)?)?;
                ucomp(base, &n.m, &t.target.m_at(a, b)?, &w)
            })();
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    if l != r {
                        rep.violation("mon-vnat-mult", format!("({a},{b}): {} ≠ {}", l.name, r.name));
                    }
                }
                (l, r) => rep.structural(format!("mult square at ({a},{b}): {l:?} / {r:?}")),
            }
        }
    }
    rep.canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autoenrich::{autoenrich, autoenrich_vcat};
    use crate::instances;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn self_enrichment_is_symmetric_monoidal_closed() {
        let l = limits();
        for v in instances::bundled_smccs(&l) {
            let m = autoenrich(&v, &l).unwrap();
            let rep = check_symmonclosed(&v, &m);
            assert!(rep.is_empty(), "{}: {rep}", v.name);
        }
    }

    #[test]
    fn underlying_of_self_enrichment_is_the_order() {
        let l = limits();
        let v = instances::b2(&l);
        let m = autoenrich_vcat(&v, &l).unwrap();
        let c = underlying_cat(&v, &m).unwrap();
        assert!(check_vcat(&v, &m).is_empty());
        assert_eq!(c.hom("0", "1").len(), 1);
        assert_eq!(c.hom("1", "0").len(), 0);
        assert_eq!(c.hom("1", "1").len(), 1);
        assert!(crate::fincat::check_category(&c).is_empty());
    }

    #[test]
    fn tensor_of_self_enrichments_has_componentwise_homs() {
        let l = limits();
        let v = instances::g3(&l);
        let m = autoenrich_vcat(&v, &l).unwrap();
        let t = tensor_vcat(&v, &m, &m, &l).unwrap();
        assert!(check_vcat(&v, &t).is_empty());
        // hom((1,1),(h,0)) = [1,h]⊗[1,0] = min(h,0) = 0
        assert_eq!(t.hom_of(&pair_id("1", "1"), &pair_id("h", "0")), "0");
    }

    #[test]
    fn unit_enriched_category_underlies_to_endomorphisms_of_the_unit() {
        let l = limits();
        let b = instances::b2(&l);
        let cb = underlying_cat(&b, &unit_vcat(&b)).unwrap();
        assert_eq!(cb.morphisms.len(), 1);
        let c2 = instances::c2(&l);
        let cc = underlying_cat(&c2, &unit_vcat(&c2)).unwrap();
        assert_eq!(cc.morphisms.len(), 2);
    }

    #[test]
    fn opposite_is_an_involution() {
        let l = limits();
        let v = instances::l3(&l);
        let m = autoenrich_vcat(&v, &l).unwrap();
        let op = opposite_vcat(&v, &m).unwrap();
        assert!(check_vcat(&v, &op).is_empty());
        // hom^op(h,1) = [1,h] = h in the Łukasiewicz chain
        assert_eq!(op.hom_of("h", "1"), "h");
        let opop = opposite_vcat(&v, &op).unwrap();
        assert!(opop.same_tables(&m));
    }

    #[test]
    fn hom_functor_is_enriched_functorial() {
        let l = limits();
        for v in [instances::b2(&l), instances::g3(&l), instances::c2(&l)] {
            let m = autoenrich(&v, &l).unwrap();
            let hv = hom_vfunctor(&v, &m, &l).unwrap();
            let rep = check_vfunctor(&v, &hv);
            assert!(rep.is_empty(), "{}: {rep}", v.name);
        }
    }

    #[test]
    fn swap_and_assoc_relabelings_are_enriched_functors() {
        let l = limits();
        let v = instances::g3(&l);
        let m = autoenrich_vcat(&v, &l).unwrap();
        let sw = swap_vfunctor(&v, &m, &m, &l).unwrap();
        assert!(check_vfunctor(&v, &sw).is_empty());
        let re = assoc_vfunctor(&v, &m, &m, &m, &l).unwrap();
        assert!(check_vfunctor(&v, &re).is_empty());
    }

    #[test]
    fn mutated_closure_witness_is_detected() {
        let l = limits();
        let v = instances::g3(&l);
        let mut m = autoenrich(&v, &l).unwrap();
        // Mis-set the closure hom object [h,0] from 0 to h: the stored
        // witnesses no longer match the declared adjunction shape.
        m.closure
            .hom
            .insert(("h".into(), "0".into()), "h".into());
        let rep = check_symmonclosed(&v, &m);
        assert!(!rep.is_empty());
    }

    #[test]
    fn identity_monoidal_enriched_functor_passes() {
        let l = limits();
        let v = instances::c3(&l);
        let m = autoenrich(&v, &l).unwrap();
        let idm = identity_mon_vfunctor(&v, &m);
        assert!(check_mon_vfunctor(&v, &idm).is_empty());
        let idn = identity_mon_vnat(&idm);
        assert!(check_mon_vnat(&v, &idn).is_empty());
    }
}

/// Vertical composite β·α of enriched monoidal transformations.
pub fn vcomp_mon_vnat(
    base: &Smcc,
    b: &MonVNatTrans,
    a: &MonVNatTrans,
) -> Result<MonVNatTrans> {
    if !b.source.same_tables(&a.target) {
        return Err(EngineError::Shape(format!(
            "cannot compose {} · {}: middle functors differ",
            b.name, a.name
        )));
    }
    let n = &a.source.target;
    let mut components = BTreeMap::new();
    for x in a.components.keys() {
        let u = ucomp(base, &n.m, &b.at(base, x)?, &a.at(base, x)?)?;
        components.insert(x.clone(), u.name);
    }
    Ok(MonVNatTrans {
        name: format!("{}·{}", b.name, a.name),
        source: a.source.clone(),
        target: b.target.clone(),
        components,
    })
}

/// Left whisker u∘α of an enriched monoidal transformation with a following
/// enriched monoidal functor u.
pub fn whisker_mon_vnat_left(
    base: &Smcc,
    u: &MonVFunctor,
    a: &MonVNatTrans,
) -> Result<MonVNatTrans> {
    let mut components = BTreeMap::new();
    for x in a.components.keys() {
        components.insert(x.clone(), uapply(base, &u.f, &a.at(base, x)?)?.name);
    }
    Ok(MonVNatTrans {
        name: format!("{}∘{}", u.name, a.name),
        source: compose_mon_vfunctors(base, u, &a.source)?,
        target: compose_mon_vfunctors(base, u, &a.target)?,
        components,
    })
}

/// Right whisker α∘f of an enriched monoidal transformation with a preceding
/// enriched monoidal functor f.
pub fn whisker_mon_vnat_right(
    base: &Smcc,
    a: &MonVNatTrans,
    f: &MonVFunctor,
) -> Result<MonVNatTrans> {
    let mut components = BTreeMap::new();
    for x in &f.source.m.objects {
        components.insert(x.clone(), a.components[f.f.ob(x)?].clone());
    }
    Ok(MonVNatTrans {
        name: format!("{}∘{}", a.name, f.name),
        source: compose_mon_vfunctors(base, &a.source, f)?,
        target: compose_mon_vfunctors(base, &a.target, f)?,
        components,
    })
}
