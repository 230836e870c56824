//! Finite categories, functors and natural transformations as explicit
//! composition tables, with total law checking.
//!
//! Identifiers are interned strings; derived structures (products, tensors,
//! pushforwards) name their cells by a deterministic encoding of the
//! construction, so equality of derived categories is literal table equality.

use std::collections::BTreeMap;

use crate::report::{EngineError, LawReport, Result};
use crate::Limits;

pub type Id = String;

/// Deterministic encoding of a pair cell, shared by product categories and
/// tensor domains.
pub fn pair_id(x: &str, y: &str) -> Id {
    format!("({x},{y})")
}

/// Inverse of [`pair_id`]: split at the top-level comma, respecting nested
/// parentheses.
pub fn split_pair(p: &str) -> Result<(Id, Id)> {
    let inner = p
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| EngineError::Shape(format!("{p} is not a pair id")))?;
    let mut depth = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                return Ok((inner[..i].to_string(), inner[i + 1..].to_string()));
            }
            _ => {}
        }
    }
    Err(EngineError::Shape(format!("{p} is not a pair id")))
}

/// A finite category given by explicit tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinCat {
    pub name: String,
    /// Sorted list of object ids.
    pub objects: Vec<Id>,
    /// Sorted list of morphism ids.
    pub morphisms: Vec<Id>,
    pub dom: BTreeMap<Id, Id>,
    pub cod: BTreeMap<Id, Id>,
    /// object -> its identity morphism
    pub identity: BTreeMap<Id, Id>,
    /// (g, f) -> g∘f, defined exactly when cod(f) = dom(g)
    pub comp: BTreeMap<(Id, Id), Id>,
}

impl FinCat {
    /// Normalize: sort the object/morphism lists so two categories with the
    /// same tables compare equal.
    pub fn normalized(mut self) -> Self {
        self.objects.sort();
        self.objects.dedup();
        self.morphisms.sort();
        self.morphisms.dedup();
        self
    }

    pub fn dom_of(&self, f: &str) -> Result<&Id> {
        self.dom
            .get(f)
            .ok_or_else(|| EngineError::UnknownId(f.to_string()))
    }

    pub fn cod_of(&self, f: &str) -> Result<&Id> {
        self.cod
            .get(f)
            .ok_or_else(|| EngineError::UnknownId(f.to_string()))
    }

    pub fn id_of(&self, a: &str) -> Result<&Id> {
        self.identity
            .get(a)
            .ok_or_else(|| EngineError::UnknownId(a.to_string()))
    }

    /// Table lookup for g∘f.
    pub fn compose(&self, g: &str, f: &str) -> Result<Id> {
        self.comp
            .get(&(g.to_string(), f.to_string()))
            .cloned()
            .ok_or_else(|| EngineError::NotComposable {
                g: g.to_string(),
                f: f.to_string(),
            })
    }

    /// Compose a chain listed codomain-to-domain: `compose_all([h,g,f]) = h∘g∘f`.
    pub fn compose_all(&self, chain: &[&str]) -> Result<Id> {
        let mut it = chain.iter().rev();
        let first = it
            .next()
            .ok_or_else(|| EngineError::Invalid("empty composition chain".into()))?;
        let mut acc = first.to_string();
        for next in it {
            acc = self.compose(next, &acc)?;
        }
        Ok(acc)
    }

    /// All morphisms a → b.
    pub fn hom(&self, a: &str, b: &str) -> Vec<Id> {
        self.morphisms
            .iter()
            .filter(|f| {
                self.dom.get(*f).map(String::as_str) == Some(a)
                    && self.cod.get(*f).map(String::as_str) == Some(b)
            })
            .cloned()
            .collect()
    }

    /// Two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: &str) -> Option<Id> {
        let a = self.dom.get(f)?;
        let b = self.cod.get(f)?;
        let ida = self.identity.get(a)?;
        let idb = self.identity.get(b)?;
        for g in self.hom(b, a) {
            if self.compose(&g, f).ok().as_ref() == Some(ida)
                && self.compose(f, &g).ok().as_ref() == Some(idb)
            {
                return Some(g);
            }
        }
        None
    }

    pub fn is_iso(&self, f: &str) -> bool {
        self.inverse(f).is_some()
    }

    /// Table equality, ignoring the display name.
    pub fn same_tables(&self, other: &FinCat) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.dom == other.dom
            && self.cod == other.cod
            && self.identity == other.identity
            && self.comp == other.comp
    }
}

/// Exhaustively check the category laws on `c`.
pub fn check_category(c: &FinCat) -> LawReport {
    let mut rep = LawReport::new();

    // Structural: every referenced id must exist.
    for f in &c.morphisms {
        match (c.dom.get(f), c.cod.get(f)) {
            (Some(d), Some(e)) => {
                if !c.objects.contains(d) || !c.objects.contains(e) {
                    rep.structural(format!("morphism {f} has unknown endpoint"));
                }
            }
            _ => rep.structural(format!("morphism {f} missing dom/cod entry")),
        }
    }
    for a in &c.objects {
        match c.identity.get(a) {
            Some(i) => {
                if c.dom.get(i) != Some(a) || c.cod.get(i) != Some(a) {
                    rep.structural(format!("identity of {a} is not an endomorphism"));
                }
            }
            None => rep.structural(format!("object {a} has no identity")),
        }
    }
    if !rep.structural.is_empty() {
        return rep.canonicalize();
    }

    // comp defined exactly on compatible pairs, with the right endpoints.
    for g in &c.morphisms {
        for f in &c.morphisms {
            let compatible = c.cod[f] == c.dom[g];
            match c.comp.get(&(g.clone(), f.clone())) {
                Some(h) => {
                    if !compatible {
                        rep.violation("comp-domain", format!("{g}∘{f} defined but not composable"));
                    } else if !c.morphisms.contains(h) {
                        rep.structural(format!("composite {g}∘{f} = {h} unknown"));
                    } else if c.dom[h] != c.dom[f] || c.cod[h] != c.cod[g] {
                        rep.violation("comp-endpoints", format!("{g}∘{f} = {h} has wrong endpoints"));
                    }
                }
                None => {
                    if compatible {
                        rep.violation("comp-total", format!("{g}∘{f} undefined"));
                    }
                }
            }
        }
    }
    if !rep.is_empty() {
        return rep.canonicalize();
    }

    // Identity laws.
    for f in &c.morphisms {
        let ida = &c.identity[&c.dom[f]];
        let idb = &c.identity[&c.cod[f]];
        if c.comp[&(f.clone(), ida.clone())] != *f {
            rep.violation("identity-right", format!("{f}∘{ida} ≠ {f}"));
        }
        if c.comp[&(idb.clone(), f.clone())] != *f {
            rep.violation("identity-left", format!("{idb}∘{f} ≠ {f}"));
        }
    }

    // Associativity over all composable triples.
    for h in &c.morphisms {
        for g in &c.morphisms {
            if c.cod[g] != c.dom[h] {
                continue;
            }
            for f in &c.morphisms {
                if c.cod[f] != c.dom[g] {
                    continue;
                }
                let left = &c.comp[&(c.comp[&(h.clone(), g.clone())].clone(), f.clone())];
                let right = &c.comp[&(h.clone(), c.comp[&(g.clone(), f.clone())].clone())];
                if left != right {
                    rep.violation("associativity", format!("({h}∘{g})∘{f} = {left} ≠ {right} = {h}∘({g}∘{f})"));
                }
            }
        }
    }

    rep.canonicalize()
}

/// The product category a × b with pair-encoded cells.
pub fn product_category(a: &FinCat, b: &FinCat, limits: &Limits) -> Result<FinCat> {
    let requested = a.morphisms.len() * b.morphisms.len();
    if requested > limits.max_morphisms {
        return Err(EngineError::SizeGuard {
            requested,
            limit: limits.max_morphisms,
        });
    }
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut dom = BTreeMap::new();
    let mut cod = BTreeMap::new();
    let mut identity = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for x in &a.objects {
        for y in &b.objects {
            let o = pair_id(x, y);
            identity.insert(o.clone(), pair_id(&a.identity[x], &b.identity[y]));
            objects.push(o);
        }
    }
    for f in &a.morphisms {
        for g in &b.morphisms {
            let m = pair_id(f, g);
            dom.insert(m.clone(), pair_id(&a.dom[f], &b.dom[g]));
            cod.insert(m.clone(), pair_id(&a.cod[f], &b.cod[g]));
            morphisms.push(m);
        }
    }
    for f1 in &a.morphisms {
        for g1 in &b.morphisms {
            for f2 in &a.morphisms {
                if a.cod[f2] != a.dom[f1] {
                    continue;
                }
                for g2 in &b.morphisms {
                    if b.cod[g2] != b.dom[g1] {
                        continue;
                    }
                    comp.insert(
                        (pair_id(f1, g1), pair_id(f2, g2)),
                        pair_id(&a.comp[&(f1.clone(), f2.clone())], &b.comp[&(g1.clone(), g2.clone())]),
                    );
                }
            }
        }
    }
    Ok(FinCat {
        name: format!("{}×{}", a.name, b.name),
        objects,
        morphisms,
        dom,
        cod,
        identity,
        comp,
    }
    .normalized())
}

/// A functor between finite categories, as object/morphism lookup tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFunctor {
    pub name: String,
    pub source: FinCat,
    pub target: FinCat,
    pub omap: BTreeMap<Id, Id>,
    pub mmap: BTreeMap<Id, Id>,
}

impl FinFunctor {
    pub fn ob(&self, a: &str) -> Result<&Id> {
        self.omap
            .get(a)
            .ok_or_else(|| EngineError::UnknownId(a.to_string()))
    }

    pub fn mor(&self, f: &str) -> Result<&Id> {
        self.mmap
            .get(f)
            .ok_or_else(|| EngineError::UnknownId(f.to_string()))
    }

    /// Table equality of the two maps (endpoints compared separately).
    pub fn same_tables(&self, other: &FinFunctor) -> bool {
        self.omap == other.omap && self.mmap == other.mmap
    }
}

pub fn identity_functor(c: &FinCat) -> FinFunctor {
    FinFunctor {
        name: format!("1_{}", c.name),
        source: c.clone(),
        target: c.clone(),
        omap: c.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        mmap: c.morphisms.iter().map(|m| (m.clone(), m.clone())).collect(),
    }
}

/// g ∘ f (apply f first).
pub fn compose_functors(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor> {
    if !f.target.same_tables(&g.source) {
        return Err(EngineError::Shape(format!(
            "cannot compose functors {} and {}: middle categories differ",
            g.name, f.name
        )));
    }
    let mut omap = BTreeMap::new();
    let mut mmap = BTreeMap::new();
    for (a, fa) in &f.omap {
        omap.insert(a.clone(), g.ob(fa)?.clone());
    }
    for (m, fm) in &f.mmap {
        mmap.insert(m.clone(), g.mor(fm)?.clone());
    }
    Ok(FinFunctor {
        name: format!("{}∘{}", g.name, f.name),
        source: f.source.clone(),
        target: g.target.clone(),
        omap,
        mmap,
    })
}

/// Pairing into a product category: ⟨F,G⟩-style functor a×b → a'×b'.
pub fn product_functor(f: &FinFunctor, g: &FinFunctor, limits: &Limits) -> Result<FinFunctor> {
    let source = product_category(&f.source, &g.source, limits)?;
    let target = product_category(&f.target, &g.target, limits)?;
    let mut omap = BTreeMap::new();
    let mut mmap = BTreeMap::new();
    for x in &f.source.objects {
        for y in &g.source.objects {
            omap.insert(pair_id(x, y), pair_id(f.ob(x)?, g.ob(y)?));
        }
    }
    for m in &f.source.morphisms {
        for n in &g.source.morphisms {
            mmap.insert(pair_id(m, n), pair_id(f.mor(m)?, g.mor(n)?));
        }
    }
    Ok(FinFunctor {
        name: format!("{}×{}", f.name, g.name),
        source,
        target,
        omap,
        mmap,
    })
}

/// Exhaustively check functor laws.
pub fn check_functor(f: &FinFunctor) -> LawReport {
    let mut rep = LawReport::new();
    for a in &f.source.objects {
        match f.omap.get(a) {
            Some(fa) if f.target.objects.contains(fa) => {}
            Some(fa) => rep.structural(format!("object image {fa} of {a} unknown in target")),
            None => rep.structural(format!("object {a} has no image")),
        }
    }
    for m in &f.source.morphisms {
        match f.mmap.get(m) {
            Some(fm) if f.target.morphisms.contains(fm) => {}
            Some(fm) => rep.structural(format!("morphism image {fm} of {m} unknown in target")),
            None => rep.structural(format!("morphism {m} has no image")),
        }
    }
    if !rep.structural.is_empty() {
        return rep.canonicalize();
    }
    for m in &f.source.morphisms {
        let fm = &f.mmap[m];
        if f.target.dom[fm] != f.omap[&f.source.dom[m]] || f.target.cod[fm] != f.omap[&f.source.cod[m]] {
            rep.violation("functor-endpoints", format!("image of {m} has wrong endpoints"));
        }
    }
    for a in &f.source.objects {
        if f.mmap[&f.source.identity[a]] != f.target.identity[&f.omap[a]] {
            rep.violation("functor-identity", format!("F(id_{a}) ≠ id_F({a})"));
        }
    }
    for ((g, h), gh) in &f.source.comp {
        let lhs = &f.mmap[gh];
        match f.target.compose(&f.mmap[g], &f.mmap[h]) {
            Ok(rhs) => {
                if *lhs != rhs {
                    rep.violation("functor-composition", format!("F({g}∘{h}) = {lhs} ≠ {rhs}"));
                }
            }
            Err(_) => rep.violation("functor-composition", format!("images of {g},{h} not composable")),
        }
    }
    rep.canonicalize()
}

/// A natural transformation between parallel functors, as a component table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinNatTrans {
    pub name: String,
    pub source: FinFunctor,
    pub target: FinFunctor,
    /// object of the (common) source category -> morphism in the target category
    pub components: BTreeMap<Id, Id>,
}

impl FinNatTrans {
    pub fn at(&self, a: &str) -> Result<&Id> {
        self.components
            .get(a)
            .ok_or_else(|| EngineError::UnknownId(a.to_string()))
    }
}

pub fn identity_nat(f: &FinFunctor) -> FinNatTrans {
    FinNatTrans {
        name: format!("1_{}", f.name),
        source: f.clone(),
        target: f.clone(),
        components: f
            .source
            .objects
            .iter()
            .map(|a| (a.clone(), f.target.identity[&f.omap[a]].clone()))
            .collect(),
    }
}

/// Exhaustively check naturality squares.
pub fn check_nat(t: &FinNatTrans) -> LawReport {
    let mut rep = LawReport::new();
    if !t.source.source.same_tables(&t.target.source) || !t.source.target.same_tables(&t.target.target) {
        rep.structural("source and target functors are not a parallel pair".to_string());
        return rep.canonicalize();
    }
    let cat = &t.source.source;
    let tgt = &t.source.target;
    for a in &cat.objects {
        match t.components.get(a) {
            Some(c) => {
                if tgt.dom.get(c) != t.source.omap.get(a) || tgt.cod.get(c) != t.target.omap.get(a) {
                    rep.structural(format!("component at {a} has wrong endpoints"));
                }
            }
            None => rep.structural(format!("missing component at {a}")),
        }
    }
    if !rep.structural.is_empty() {
        return rep.canonicalize();
    }
    for f in &cat.morphisms {
        let a = &cat.dom[f];
        let b = &cat.cod[f];
        let lhs = tgt.compose(&t.components[b], &t.source.mmap[f]);
        let rhs = tgt.compose(&t.target.mmap[f], &t.components[a]);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                if l != r {
                    rep.violation("naturality", format!("square at {f}: {l} ≠ {r}"));
                }
            }
            _ => rep.structural(format!("naturality square at {f} not composable")),
        }
    }
    rep.canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Thin category on {0,1} with 0 ≤ 1.
    pub fn bool_poset() -> FinCat {
        let mut dom = BTreeMap::new();
        let mut cod = BTreeMap::new();
        let mut identity = BTreeMap::new();
        let mut comp = BTreeMap::new();
        let mors = ["le(0,0)", "le(0,1)", "le(1,1)"];
        let ends = [("0", "0"), ("0", "1"), ("1", "1")];
        for (m, (d, c)) in mors.iter().zip(ends.iter()) {
            dom.insert(m.to_string(), d.to_string());
            cod.insert(m.to_string(), c.to_string());
        }
        identity.insert("0".into(), "le(0,0)".into());
        identity.insert("1".into(), "le(1,1)".into());
        for g in mors {
            for f in mors {
                if cod[f] == dom[g] {
                    let d = &dom[f];
                    let c = &cod[g];
                    comp.insert((g.to_string(), f.to_string()), format!("le({d},{c})"));
                }
            }
        }
        FinCat {
            name: "B2".into(),
            objects: vec!["0".into(), "1".into()],
            morphisms: mors.iter().map(|s| s.to_string()).collect(),
            dom,
            cod,
            identity,
            comp,
        }
        .normalized()
    }

    fn c2_one_object(bad: bool) -> FinCat {
        let mut comp = BTreeMap::new();
        comp.insert(("1".to_string(), "1".to_string()), "1".to_string());
        comp.insert(("1".to_string(), "σ".to_string()), "σ".to_string());
        // A corrupted table entry σ∘1 = 1 breaks the right identity law
        // (and with it associativity of the triple (σ,1,σ)).
        comp.insert(
            ("σ".to_string(), "1".to_string()),
            if bad { "1".to_string() } else { "σ".to_string() },
        );
        comp.insert(("σ".to_string(), "σ".to_string()), "1".to_string());
        FinCat {
            name: "C2".into(),
            objects: vec!["⋆".into()],
            morphisms: vec!["1".into(), "σ".into()],
            dom: [("1", "⋆"), ("σ", "⋆")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            cod: [("1", "⋆"), ("σ", "⋆")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            identity: [("⋆", "1")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            comp,
        }
        .normalized()
    }

    #[test]
    fn bool_poset_is_a_category() {
        assert!(check_category(&bool_poset()).is_empty());
    }

    #[test]
    fn c2_is_a_category_and_bad_table_is_caught() {
        assert!(check_category(&c2_one_object(false)).is_empty());
        let rep = check_category(&c2_one_object(true));
        assert!(!rep.is_empty());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.law == "identity-right" || v.law == "associativity"));
    }

    #[test]
    fn compose_in_three_chain() {
        // poset 3-chain 0 ≤ ½ ≤ 1
        let els = ["0", "h", "1"];
        let le = |a: &str, b: &str| {
            let ia = els.iter().position(|x| *x == a).unwrap();
            let ib = els.iter().position(|x| *x == b).unwrap();
            ia <= ib
        };
        let mut dom = BTreeMap::new();
        let mut cod = BTreeMap::new();
        let mut identity = BTreeMap::new();
        let mut comp = BTreeMap::new();
        let mut morphisms = Vec::new();
        for a in els {
            identity.insert(a.to_string(), format!("le({a},{a})"));
            for b in els {
                if le(a, b) {
                    let m = format!("le({a},{b})");
                    dom.insert(m.clone(), a.to_string());
                    cod.insert(m.clone(), b.to_string());
                    morphisms.push(m);
                }
            }
        }
        for g in &morphisms {
            for f in &morphisms {
                if cod[f] == dom[g] {
                    comp.insert((g.clone(), f.clone()), format!("le({},{})", dom[f], cod[g]));
                }
            }
        }
        let chain = FinCat {
            name: "chain3".into(),
            objects: els.iter().map(|s| s.to_string()).collect(),
            morphisms,
            dom,
            cod,
            identity,
            comp,
        }
        .normalized();
        assert!(check_category(&chain).is_empty());
        assert_eq!(chain.compose("le(h,1)", "le(0,h)").unwrap(), "le(0,1)");
        let c2 = c2_one_object(false);
        assert_eq!(c2.compose("σ", "σ").unwrap(), "1");
        assert_eq!(chain.compose("le(0,0)", "le(0,0)").unwrap(), "le(0,0)");
    }

    #[test]
    fn product_of_bool_posets() {
        let b2 = bool_poset();
        let p = product_category(&b2, &b2, &Limits::default()).unwrap();
        assert_eq!(p.objects.len(), 4);
        assert_eq!(p.morphisms.len(), 9);
        assert!(check_category(&p).is_empty());
    }

    #[test]
    fn product_with_terminal_relabels() {
        let b2 = bool_poset();
        let one = FinCat {
            name: "1".into(),
            objects: vec!["⋆".into()],
            morphisms: vec!["1".into()],
            dom: [("1".to_string(), "⋆".to_string())].into_iter().collect(),
            cod: [("1".to_string(), "⋆".to_string())].into_iter().collect(),
            identity: [("⋆".to_string(), "1".to_string())].into_iter().collect(),
            comp: [(("1".to_string(), "1".to_string()), "1".to_string())]
                .into_iter()
                .collect(),
        };
        let p = product_category(&b2, &one, &Limits::default()).unwrap();
        assert_eq!(p.objects.len(), b2.objects.len());
        assert_eq!(p.morphisms.len(), b2.morphisms.len());
        assert!(check_category(&p).is_empty());
    }

    #[test]
    fn size_guard_fires() {
        let b2 = bool_poset();
        let tiny = Limits {
            max_morphisms: 4,
            ..Limits::default()
        };
        assert!(matches!(
            product_category(&b2, &b2, &tiny),
            Err(EngineError::SizeGuard { .. })
        ));
    }

    #[test]
    fn identity_functor_and_nat_pass() {
        let b2 = bool_poset();
        let f = identity_functor(&b2);
        assert!(check_functor(&f).is_empty());
        assert!(check_nat(&identity_nat(&f)).is_empty());
    }

    #[test]
    fn functor_composition_is_associative_on_tables() {
        let b2 = bool_poset();
        let f = identity_functor(&b2);
        let fg = compose_functors(&f, &f).unwrap();
        let left = compose_functors(&compose_functors(&f, &f).unwrap(), &f).unwrap();
        let right = compose_functors(&f, &fg).unwrap();
        assert!(left.same_tables(&right));
    }
}
