//! Line-oriented instance files: parsing, canonical serialization, and
//! resolution of the declared entities into engine structures.
//!
//! A file is a sequence of sections.  Each section starts with
//! `<kind> <name>`, carries one indented `key value...` line per table
//! entry, and closes with `end`.  Blank lines and `#` comments are
//! accepted on input and dropped by the canonical serializer, which also
//! orders sections by kind and name.  Entities are referred to by name
//! from later sections; resolution is two-pass, so declaration order
//! inside the file does not matter.

use std::collections::{BTreeMap, BTreeSet};

use crate::adjoint::Adjunction;
use crate::autoenrich::autoenrich;
use crate::chbase::push_monvcat;
use crate::enriched::{SymMonClosedVCat, VCat};
use crate::fincat::{FinCat, FinFunctor, Id};
use crate::groth::BaseIndex;
use crate::instances::{thin_monoidal_functor, thin_monoidal_nat};
use crate::report::{EngineError, Result};
use crate::smcc::{
    compose_monoidal, identity_monoidal, monoid_to_smcc, quantale_to_smcc, CommMonoidDesc,
    MonoidalFunctor, MonoidalNatTrans, QuantaleDesc, Smcc,
};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantaleSec {
    pub name: Id,
    pub elements: Vec<Id>,
    pub unit: Id,
    pub leq: BTreeSet<(Id, Id)>,
    pub tensor: BTreeMap<(Id, Id), Id>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidSec {
    pub name: Id,
    pub elements: Vec<Id>,
    pub unit: Id,
    pub op: BTreeMap<(Id, Id), Id>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySec {
    pub name: Id,
    pub objects: Vec<Id>,
    /// morphism id -> (dom, cod)
    pub morphisms: BTreeMap<Id, (Id, Id)>,
    pub identities: BTreeMap<Id, Id>,
    pub comp: BTreeMap<(Id, Id), Id>,
}

/// A named alias for a base built from a quantale or monoid section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmccSec {
    pub name: Id,
    pub base: Id,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VCatSec {
    pub name: Id,
    pub base: Id,
    pub objects: Vec<Id>,
    pub hom: BTreeMap<(Id, Id), Id>,
    pub comp: BTreeMap<(Id, Id, Id), Id>,
    pub unit: BTreeMap<Id, Id>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorDef {
    /// An object map between thin bases (structure cells forced), with
    /// optional explicit morphism, unit, and tensor cells.
    Table {
        source: Id,
        target: Id,
        omap: BTreeMap<Id, Id>,
        mmap: BTreeMap<Id, Id>,
        e: Option<Id>,
        cells: BTreeMap<(Id, Id), Id>,
    },
    Identity(Id),
    Compose(Id, Id),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorSec {
    pub name: Id,
    pub def: FunctorDef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonVCatDef {
    Autoenrich(Id),
    Push(Id, Id),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonVCatSec {
    pub name: Id,
    pub def: MonVCatDef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatSec {
    pub name: Id,
    pub source: Id,
    pub target: Id,
    /// explicit components; when empty, the thin-forced ones are used
    pub components: BTreeMap<Id, Id>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseIndexSec {
    pub name: Id,
    pub smccs: Vec<Id>,
    pub functors: Vec<Id>,
    pub nats: Vec<Id>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionSec {
    pub name: Id,
    pub left: Id,
    pub right: Id,
    pub unit: Id,
    pub counit: Id,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Section {
    Quantale(QuantaleSec),
    Monoid(MonoidSec),
    Category(CategorySec),
    Smcc(SmccSec),
    VCat(VCatSec),
    Functor(FunctorSec),
    MonVCat(MonVCatSec),
    Nat(NatSec),
    BaseIndex(BaseIndexSec),
    Adjunction(AdjunctionSec),
}

impl Section {
    pub fn kind(&self) -> &'static str {
        match self {
            Section::Quantale(_) => "quantale",
            Section::Monoid(_) => "monoid",
            Section::Category(_) => "category",
            Section::Smcc(_) => "smcc",
            Section::VCat(_) => "vcat",
            Section::Functor(_) => "functor",
            Section::MonVCat(_) => "monvcat",
            Section::Nat(_) => "nat",
            Section::BaseIndex(_) => "base_index",
            Section::Adjunction(_) => "adjunction",
        }
    }

    pub fn name(&self) -> &Id {
        match self {
            Section::Quantale(s) => &s.name,
            Section::Monoid(s) => &s.name,
            Section::Category(s) => &s.name,
            Section::Smcc(s) => &s.name,
            Section::VCat(s) => &s.name,
            Section::Functor(s) => &s.name,
            Section::MonVCat(s) => &s.name,
            Section::Nat(s) => &s.name,
            Section::BaseIndex(s) => &s.name,
            Section::Adjunction(s) => &s.name,
        }
    }

    fn rank(&self) -> usize {
        match self {
            Section::Quantale(_) => 0,
            Section::Monoid(_) => 1,
            Section::Category(_) => 2,
            Section::Smcc(_) => 3,
            Section::VCat(_) => 4,
            Section::Functor(_) => 5,
            Section::MonVCat(_) => 6,
            Section::Nat(_) => 7,
            Section::BaseIndex(_) => 8,
            Section::Adjunction(_) => 9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InstanceFile {
    pub sections: Vec<Section>,
}

impl InstanceFile {
    /// Order the sections by kind and name; reject duplicate names within
    /// a kind.
    pub fn canonicalize(mut self) -> Result<InstanceFile> {
        self.sections
            .sort_by(|a, b| (a.rank(), a.name()).cmp(&(b.rank(), b.name())));
        for pair in self.sections.windows(2) {
            if pair[0].rank() == pair[1].rank() && pair[0].name() == pair[1].name() {
                return Err(EngineError::Shape(format!(
                    "duplicate {} section {}",
                    pair[0].kind(),
                    pair[0].name()
                )));
            }
        }
        Ok(self)
    }
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> EngineError {
    EngineError::Shape(format!("line {line}: {msg}"))
}

struct Body<'a> {
    /// (line number, key, remaining fields)
    entries: Vec<(usize, &'a str, Vec<&'a str>)>,
}

impl<'a> Body<'a> {
    fn single(&self, key: &str, head_line: usize) -> Result<&'a str> {
        let mut found = None;
        for (ln, k, rest) in &self.entries {
            if *k == key {
                if found.is_some() {
                    return Err(parse_err(*ln, format!("duplicate key {key}")));
                }
                if rest.len() != 1 {
                    return Err(parse_err(*ln, format!("{key} expects one field")));
                }
                found = Some(rest[0]);
            }
        }
        found.ok_or_else(|| parse_err(head_line, format!("missing key {key}")))
    }

    fn optional(&self, key: &str) -> Result<Option<&'a str>> {
        match self.entries.iter().filter(|(_, k, _)| *k == key).count() {
            0 => Ok(None),
            1 => Ok(Some(self.single(key, 0)?)),
            _ => Err(parse_err(0, format!("duplicate key {key}"))),
        }
    }

    fn list(&self, key: &str, arity: usize) -> Result<Vec<Vec<Id>>> {
        let mut out = Vec::new();
        for (ln, k, rest) in &self.entries {
            if *k == key {
                if rest.len() != arity {
                    return Err(parse_err(*ln, format!("{key} expects {arity} fields")));
                }
                out.push(rest.iter().map(|s| s.to_string()).collect());
            }
        }
        Ok(out)
    }

    fn flat(&self, key: &str) -> Vec<Id> {
        let mut out = Vec::new();
        for (_, k, rest) in &self.entries {
            if *k == key {
                out.extend(rest.iter().map(|s| s.to_string()));
            }
        }
        out
    }

    fn known_keys(&self, keys: &[&str]) -> Result<()> {
        for (ln, k, _) in &self.entries {
            if !keys.contains(k) {
                return Err(parse_err(*ln, format!("unknown key {k}")));
            }
        }
        Ok(())
    }
}

fn pairs2(rows: Vec<Vec<Id>>) -> BTreeMap<(Id, Id), Id> {
    rows.into_iter()
        .map(|mut r| {
            let c = r.pop().unwrap();
            let b = r.pop().unwrap();
            let a = r.pop().unwrap();
            ((a, b), c)
        })
        .collect()
}

fn parse_section(kind: &str, name: &str, head_line: usize, body: &Body) -> Result<Section> {
    match kind {
        "quantale" => {
            body.known_keys(&["elements", "unit", "le", "tensor"])?;
            Ok(Section::Quantale(QuantaleSec {
                name: name.to_string(),
                elements: body.flat("elements"),
                unit: body.single("unit", head_line)?.to_string(),
                leq: body
                    .list("le", 2)?
                    .into_iter()
                    .map(|mut r| {
                        let b = r.pop().unwrap();
                        (r.pop().unwrap(), b)
                    })
                    .collect(),
                tensor: pairs2(body.list("tensor", 3)?),
            }))
        }
        "monoid" => {
            body.known_keys(&["elements", "unit", "op"])?;
            Ok(Section::Monoid(MonoidSec {
                name: name.to_string(),
                elements: body.flat("elements"),
                unit: body.single("unit", head_line)?.to_string(),
                op: pairs2(body.list("op", 3)?),
            }))
        }
        "category" => {
            body.known_keys(&["objects", "mor", "id", "comp"])?;
            Ok(Section::Category(CategorySec {
                name: name.to_string(),
                objects: body.flat("objects"),
                morphisms: body
                    .list("mor", 3)?
                    .into_iter()
                    .map(|mut r| {
                        let c = r.pop().unwrap();
                        let d = r.pop().unwrap();
                        (r.pop().unwrap(), (d, c))
                    })
                    .collect(),
                identities: body
                    .list("id", 2)?
                    .into_iter()
                    .map(|mut r| {
                        let f = r.pop().unwrap();
                        (r.pop().unwrap(), f)
                    })
                    .collect(),
                comp: pairs2(body.list("comp", 3)?),
            }))
        }
        "smcc" => {
            body.known_keys(&["base"])?;
            Ok(Section::Smcc(SmccSec {
                name: name.to_string(),
                base: body.single("base", head_line)?.to_string(),
            }))
        }
        "vcat" => {
            body.known_keys(&["base", "objects", "hom", "comp", "unit"])?;
            Ok(Section::VCat(VCatSec {
                name: name.to_string(),
                base: body.single("base", head_line)?.to_string(),
                objects: body.flat("objects"),
                hom: pairs2(body.list("hom", 3)?),
                comp: body
                    .list("comp", 4)?
                    .into_iter()
                    .map(|mut r| {
                        let n = r.pop().unwrap();
                        let c = r.pop().unwrap();
                        let b = r.pop().unwrap();
                        ((r.pop().unwrap(), b, c), n)
                    })
                    .collect(),
                unit: body
                    .list("unit", 2)?
                    .into_iter()
                    .map(|mut r| {
                        let n = r.pop().unwrap();
                        (r.pop().unwrap(), n)
                    })
                    .collect(),
            }))
        }
        "functor" => {
            let def = if let Some(base) = body.optional("identity")? {
                body.known_keys(&["identity"])?;
                FunctorDef::Identity(base.to_string())
            } else if body.entries.iter().any(|(_, k, _)| *k == "compose") {
                body.known_keys(&["compose"])?;
                let rows = body.list("compose", 2)?;
                if rows.len() != 1 {
                    return Err(parse_err(head_line, "compose expects a single line"));
                }
                let mut r = rows.into_iter().next().unwrap();
                let f = r.pop().unwrap();
                FunctorDef::Compose(r.pop().unwrap(), f)
            } else {
                body.known_keys(&["source", "target", "ob", "mor", "e", "cell"])?;
                FunctorDef::Table {
                    source: body.single("source", head_line)?.to_string(),
                    target: body.single("target", head_line)?.to_string(),
                    omap: body
                        .list("ob", 2)?
                        .into_iter()
                        .map(|mut r| {
                            let b = r.pop().unwrap();
                            (r.pop().unwrap(), b)
                        })
                        .collect(),
                    mmap: body
                        .list("mor", 2)?
                        .into_iter()
                        .map(|mut r| {
                            let b = r.pop().unwrap();
                            (r.pop().unwrap(), b)
                        })
                        .collect(),
                    e: body.optional("e")?.map(|s| s.to_string()),
                    cells: pairs2(body.list("cell", 3)?),
                }
            };
            Ok(Section::Functor(FunctorSec {
                name: name.to_string(),
                def,
            }))
        }
        "monvcat" => {
            let def = if let Some(base) = body.optional("autoenrich")? {
                body.known_keys(&["autoenrich"])?;
                MonVCatDef::Autoenrich(base.to_string())
            } else {
                body.known_keys(&["push"])?;
                let rows = body.list("push", 2)?;
                if rows.len() != 1 {
                    return Err(parse_err(head_line, "push expects a single line"));
                }
                let mut r = rows.into_iter().next().unwrap();
                let m = r.pop().unwrap();
                MonVCatDef::Push(r.pop().unwrap(), m)
            };
            Ok(Section::MonVCat(MonVCatSec {
                name: name.to_string(),
                def,
            }))
        }
        "nat" => {
            body.known_keys(&["source", "target", "at"])?;
            Ok(Section::Nat(NatSec {
                name: name.to_string(),
                source: body.single("source", head_line)?.to_string(),
                target: body.single("target", head_line)?.to_string(),
                components: body
                    .list("at", 2)?
                    .into_iter()
                    .map(|mut r| {
                        let n = r.pop().unwrap();
                        (r.pop().unwrap(), n)
                    })
                    .collect(),
            }))
        }
        "base_index" => {
            body.known_keys(&["smcc", "functor", "nat"])?;
            Ok(Section::BaseIndex(BaseIndexSec {
                name: name.to_string(),
                smccs: body.flat("smcc"),
                functors: body.flat("functor"),
                nats: body.flat("nat"),
            }))
        }
        "adjunction" => {
            body.known_keys(&["left", "right", "unit", "counit"])?;
            Ok(Section::Adjunction(AdjunctionSec {
                name: name.to_string(),
                left: body.single("left", head_line)?.to_string(),
                right: body.single("right", head_line)?.to_string(),
                unit: body.single("unit", head_line)?.to_string(),
                counit: body.single("counit", head_line)?.to_string(),
            }))
        }
        other => Err(parse_err(head_line, format!("unknown section kind {other}"))),
    }
}

/// Parse an instance file and return it in canonical section order.
pub fn parse(text: &str) -> Result<InstanceFile> {
    let mut sections = Vec::new();
    let mut head: Option<(usize, String, String)> = None;
    let mut entries: Vec<(usize, &str, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(' ') || line.starts_with('\t');
        let mut fields = line.split_whitespace();
        let first = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        if head.is_none() {
            if indented || first == "end" {
                return Err(parse_err(ln, "expected a section header"));
            }
            if rest.len() != 1 {
                return Err(parse_err(ln, "section header expects `<kind> <name>`"));
            }
            head = Some((ln, first.to_string(), rest[0].to_string()));
        } else if !indented && first == "end" {
            if !rest.is_empty() {
                return Err(parse_err(ln, "end takes no fields"));
            }
            let (hl, kind, name) = head.take().unwrap();
            let body = Body {
                entries: std::mem::take(&mut entries),
            };
            sections.push(parse_section(&kind, &name, hl, &body)?);
        } else if indented {
            entries.push((ln, first, rest));
        } else {
            return Err(parse_err(ln, "expected an indented entry or `end`"));
        }
    }
    if let Some((hl, kind, name)) = head {
        return Err(parse_err(hl, format!("unterminated {kind} section {name}")));
    }
    InstanceFile { sections }.canonicalize()
}

fn write_flat(out: &mut String, key: &str, items: &[Id]) {
    if !items.is_empty() {
        out.push_str("  ");
        out.push_str(key);
        for it in items {
            out.push(' ');
            out.push_str(it);
        }
        out.push('\n');
    }
}

/// Serialize an instance file in canonical form: sections ordered by kind
/// and name, one table entry per line, no comments.
pub fn serialize(file: &InstanceFile) -> Result<String> {
    let file = file.clone().canonicalize()?;
    let mut out = String::new();
    for (i, sec) in file.sections.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", sec.kind(), sec.name()));
        match sec {
            Section::Quantale(s) => {
                write_flat(&mut out, "elements", &s.elements);
                out.push_str(&format!("  unit {}\n", s.unit));
                for (a, b) in &s.leq {
                    out.push_str(&format!("  le {a} {b}\n"));
                }
                for ((a, b), c) in &s.tensor {
                    out.push_str(&format!("  tensor {a} {b} {c}\n"));
                }
            }
            Section::Monoid(s) => {
                write_flat(&mut out, "elements", &s.elements);
                out.push_str(&format!("  unit {}\n", s.unit));
                for ((a, b), c) in &s.op {
                    out.push_str(&format!("  op {a} {b} {c}\n"));
                }
            }
            Section::Category(s) => {
                write_flat(&mut out, "objects", &s.objects);
                for (f, (d, c)) in &s.morphisms {
                    out.push_str(&format!("  mor {f} {d} {c}\n"));
                }
                for (a, f) in &s.identities {
                    out.push_str(&format!("  id {a} {f}\n"));
                }
                for ((g, f), h) in &s.comp {
                    out.push_str(&format!("  comp {g} {f} {h}\n"));
                }
            }
            Section::Smcc(s) => {
                out.push_str(&format!("  base {}\n", s.base));
            }
            Section::VCat(s) => {
                out.push_str(&format!("  base {}\n", s.base));
                write_flat(&mut out, "objects", &s.objects);
                for ((a, b), x) in &s.hom {
                    out.push_str(&format!("  hom {a} {b} {x}\n"));
                }
                for ((a, b, c), n) in &s.comp {
                    out.push_str(&format!("  comp {a} {b} {c} {n}\n"));
                }
                for (a, n) in &s.unit {
                    out.push_str(&format!("  unit {a} {n}\n"));
                }
            }
            Section::Functor(s) => match &s.def {
                FunctorDef::Identity(b) => out.push_str(&format!("  identity {b}\n")),
                FunctorDef::Compose(g, f) => out.push_str(&format!("  compose {g} {f}\n")),
                FunctorDef::Table {
                    source,
                    target,
                    omap,
                    mmap,
                    e,
                    cells,
                } => {
                    out.push_str(&format!("  source {source}\n"));
                    out.push_str(&format!("  target {target}\n"));
                    for (a, b) in omap {
                        out.push_str(&format!("  ob {a} {b}\n"));
                    }
                    for (f, g) in mmap {
                        out.push_str(&format!("  mor {f} {g}\n"));
                    }
                    if let Some(e) = e {
                        out.push_str(&format!("  e {e}\n"));
                    }
                    for ((a, b), n) in cells {
                        out.push_str(&format!("  cell {a} {b} {n}\n"));
                    }
                }
            },
            Section::MonVCat(s) => match &s.def {
                MonVCatDef::Autoenrich(b) => out.push_str(&format!("  autoenrich {b}\n")),
                MonVCatDef::Push(g, m) => out.push_str(&format!("  push {g} {m}\n")),
            },
            Section::Nat(s) => {
                out.push_str(&format!("  source {}\n", s.source));
                out.push_str(&format!("  target {}\n", s.target));
                for (a, n) in &s.components {
                    out.push_str(&format!("  at {a} {n}\n"));
                }
            }
            Section::BaseIndex(s) => {
                for x in &s.smccs {
                    out.push_str(&format!("  smcc {x}\n"));
                }
                for x in &s.functors {
                    out.push_str(&format!("  functor {x}\n"));
                }
                for x in &s.nats {
                    out.push_str(&format!("  nat {x}\n"));
                }
            }
            Section::Adjunction(s) => {
                out.push_str(&format!("  left {}\n", s.left));
                out.push_str(&format!("  right {}\n", s.right));
                out.push_str(&format!("  unit {}\n", s.unit));
                out.push_str(&format!("  counit {}\n", s.counit));
            }
        }
        out.push_str("end\n");
    }
    Ok(out)
}

/// All declared entities resolved into engine structures.
#[derive(Debug, Clone, Default)]
pub struct ResolvedInstances {
    pub smccs: BTreeMap<Id, Smcc>,
    pub cats: BTreeMap<Id, FinCat>,
    /// vcat name -> (base smcc name, tables)
    pub vcats: BTreeMap<Id, (Id, VCat)>,
    pub functors: BTreeMap<Id, MonoidalFunctor>,
    /// monvcat name -> (base smcc name, tables)
    pub monvcats: BTreeMap<Id, (Id, SymMonClosedVCat)>,
    /// monvcat name -> the definition it was declared with
    pub monvcat_defs: BTreeMap<Id, MonVCatDef>,
    pub nats: BTreeMap<Id, MonoidalNatTrans>,
    pub indices: BTreeMap<Id, BaseIndex>,
    pub adjunctions: BTreeMap<Id, Adjunction>,
}

fn lookup<'a, T>(map: &'a BTreeMap<Id, T>, id: &str, what: &str) -> Result<&'a T> {
    map.get(id)
        .ok_or_else(|| EngineError::UnknownId(format!("{what} {id}")))
}

/// Resolve an instance file into engine structures, erroring on dangling
/// references.
pub fn resolve(file: &InstanceFile, limits: &Limits) -> Result<ResolvedInstances> {
    let mut r = ResolvedInstances::default();
    for sec in &file.sections {
        match sec {
            Section::Quantale(s) => {
                let desc = QuantaleDesc {
                    name: s.name.clone(),
                    elements: s.elements.clone(),
                    leq: s.leq.clone(),
                    tensor: s.tensor.clone(),
                    unit: s.unit.clone(),
                };
                r.smccs.insert(s.name.clone(), quantale_to_smcc(&desc, limits)?);
            }
            Section::Monoid(s) => {
                let desc = CommMonoidDesc {
                    name: s.name.clone(),
                    elements: s.elements.clone(),
                    op: s.op.clone(),
                    unit: s.unit.clone(),
                };
                r.smccs.insert(s.name.clone(), monoid_to_smcc(&desc, limits)?);
            }
            Section::Category(s) => {
                let cat = FinCat {
                    name: s.name.clone(),
                    objects: s.objects.clone(),
                    morphisms: s.morphisms.keys().cloned().collect(),
                    dom: s.morphisms.iter().map(|(f, (d, _))| (f.clone(), d.clone())).collect(),
                    cod: s.morphisms.iter().map(|(f, (_, c))| (f.clone(), c.clone())).collect(),
                    identity: s.identities.clone(),
                    comp: s.comp.clone(),
                }
                .normalized();
                r.cats.insert(s.name.clone(), cat);
            }
            _ => {}
        }
    }
    // aliases may only refer to already-buildable bases
    for sec in &file.sections {
        if let Section::Smcc(s) = sec {
            let base = lookup(&r.smccs, &s.base, "smcc")?.clone();
            r.smccs.insert(s.name.clone(), base);
        }
    }
    for sec in &file.sections {
        if let Section::VCat(s) = sec {
            let base = lookup(&r.smccs, &s.base, "smcc")?;
            let v = VCat {
                name: s.name.clone(),
                base_name: base.name.clone(),
                objects: s.objects.clone(),
                hom: s.hom.clone(),
                comp: s.comp.clone(),
                unit: s.unit.clone(),
            };
            r.vcats.insert(s.name.clone(), (s.base.clone(), v));
        }
    }
    // functors may reference each other through composites: iterate to a
    // fixpoint and report the first unresolved name if progress stalls
    let functor_secs: Vec<&FunctorSec> = file
        .sections
        .iter()
        .filter_map(|s| match s {
            Section::Functor(f) => Some(f),
            _ => None,
        })
        .collect();
    let mut pending: Vec<&FunctorSec> = functor_secs.clone();
    loop {
        let before = pending.len();
        let mut next = Vec::new();
        for sec in pending {
            let built = match &sec.def {
                FunctorDef::Identity(base) => {
                    let v = lookup(&r.smccs, base, "smcc")?;
                    let mut f = identity_monoidal(v);
                    f.name = sec.name.clone();
                    f.f.name = sec.name.clone();
                    Some(f)
                }
                FunctorDef::Compose(g, f) => {
                    match (r.functors.get(g), r.functors.get(f)) {
                        (Some(g), Some(f)) => {
                            let mut c = compose_monoidal(g, f)?;
                            c.name = sec.name.clone();
                            c.f.name = sec.name.clone();
                            Some(c)
                        }
                        _ => None,
                    }
                }
                FunctorDef::Table {
                    source,
                    target,
                    omap,
                    mmap,
                    e,
                    cells,
                } => {
                    let v = lookup(&r.smccs, source, "smcc")?;
                    let w = lookup(&r.smccs, target, "smcc")?;
                    if mmap.is_empty() && e.is_none() && cells.is_empty() {
                        let pairs: Vec<(&str, &str)> =
                            omap.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                        Some(thin_monoidal_functor(&sec.name, v, w, &pairs))
                    } else {
                        let e = e.clone().ok_or_else(|| {
                            EngineError::Shape(format!(
                                "functor {}: explicit tables need a unit cell",
                                sec.name
                            ))
                        })?;
                        Some(MonoidalFunctor {
                            name: sec.name.clone(),
                            source: v.clone(),
                            target: w.clone(),
                            f: FinFunctor {
                                name: sec.name.clone(),
                                source: v.cat.clone(),
                                target: w.cat.clone(),
                                omap: omap.clone(),
                                mmap: mmap.clone(),
                            },
                            e,
                            m: cells.clone(),
                        })
                    }
                }
            };
            match built {
                Some(f) => {
                    r.functors.insert(sec.name.clone(), f);
                }
                None => next.push(sec),
            }
        }
        if next.is_empty() {
            break;
        }
        if next.len() == before {
            let names: Vec<&str> = next.iter().map(|s| s.name.as_str()).collect();
            return Err(EngineError::UnknownId(format!(
                "functor reference cycle or dangling composite among {}",
                names.join(", ")
            )));
        }
        pending = next;
    }
    // monvcats may reference each other through pushforwards
    let monvcat_secs: Vec<&MonVCatSec> = file
        .sections
        .iter()
        .filter_map(|s| match s {
            Section::MonVCat(m) => Some(m),
            _ => None,
        })
        .collect();
    let mut pending: Vec<&MonVCatSec> = monvcat_secs;
    loop {
        let before = pending.len();
        let mut next = Vec::new();
        for sec in pending {
            r.monvcat_defs.insert(sec.name.clone(), sec.def.clone());
            match &sec.def {
                MonVCatDef::Autoenrich(base) => {
                    let v = lookup(&r.smccs, base, "smcc")?;
                    let m = autoenrich(v, limits)?;
                    r.monvcats.insert(sec.name.clone(), (base.clone(), m));
                }
                MonVCatDef::Push(g, inner) => match r.monvcats.get(inner) {
                    Some((_, m)) => {
                        let g = lookup(&r.functors, g, "functor")?;
                        let pushed = push_monvcat(g, m, limits)?;
                        r.monvcats
                            .insert(sec.name.clone(), (g.target.name.clone(), pushed));
                    }
                    None => next.push(sec),
                },
            }
        }
        if next.is_empty() {
            break;
        }
        if next.len() == before {
            let names: Vec<&str> = next.iter().map(|s| s.name.as_str()).collect();
            return Err(EngineError::UnknownId(format!(
                "monvcat reference cycle or dangling pushforward among {}",
                names.join(", ")
            )));
        }
        pending = next;
    }
    for sec in &file.sections {
        if let Section::Nat(s) = sec {
            let source = lookup(&r.functors, &s.source, "functor")?.clone();
            let target = lookup(&r.functors, &s.target, "functor")?.clone();
            let nat = if s.components.is_empty() {
                let mut n = thin_monoidal_nat(&s.name, &source, &target);
                n.name = s.name.clone();
                n
            } else {
                MonoidalNatTrans {
                    name: s.name.clone(),
                    source,
                    target,
                    components: s.components.clone(),
                }
            };
            r.nats.insert(s.name.clone(), nat);
        }
    }
    for sec in &file.sections {
        match sec {
            Section::BaseIndex(s) => {
                let idx = BaseIndex {
                    name: s.name.clone(),
                    smccs: s
                        .smccs
                        .iter()
                        .map(|x| lookup(&r.smccs, x, "smcc").cloned())
                        .collect::<Result<_>>()?,
                    functors: s
                        .functors
                        .iter()
                        .map(|x| lookup(&r.functors, x, "functor").cloned())
                        .collect::<Result<_>>()?,
                    nats: s
                        .nats
                        .iter()
                        .map(|x| lookup(&r.nats, x, "nat").cloned())
                        .collect::<Result<_>>()?,
                };
                r.indices.insert(s.name.clone(), idx);
            }
            Section::Adjunction(s) => {
                let adj = Adjunction {
                    name: s.name.clone(),
                    left: lookup(&r.functors, &s.left, "functor")?.clone(),
                    right: lookup(&r.functors, &s.right, "functor")?.clone(),
                    unit: lookup(&r.nats, &s.unit, "nat")?.clone(),
                    counit: lookup(&r.nats, &s.counit, "nat")?.clone(),
                };
                r.adjunctions.insert(s.name.clone(), adj);
            }
            _ => {}
        }
    }
    Ok(r)
}

/// The bundled instance file: the three quantales, the two monoids, the
/// probe functors and transformations, the pushed enrichments, the base
/// index, and the adjunction.
pub fn bundled_instance_file() -> InstanceFile {
    let mk_quantale = |d: QuantaleDesc| {
        Section::Quantale(QuantaleSec {
            name: d.name,
            elements: d.elements,
            unit: d.unit,
            leq: d.leq,
            tensor: d.tensor,
        })
    };
    let mk_monoid = |d: CommMonoidDesc| {
        Section::Monoid(MonoidSec {
            name: d.name,
            elements: d.elements,
            unit: d.unit,
            op: d.op,
        })
    };
    let thin = |name: &str, source: &str, target: &str, omap: &[(&str, &str)]| {
        Section::Functor(FunctorSec {
            name: name.into(),
            def: FunctorDef::Table {
                source: source.into(),
                target: target.into(),
                omap: omap
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
                mmap: BTreeMap::new(),
                e: None,
                cells: BTreeMap::new(),
            },
        })
    };
    let nat = |name: &str, source: &str, target: &str| {
        Section::Nat(NatSec {
            name: name.into(),
            source: source.into(),
            target: target.into(),
            components: BTreeMap::new(),
        })
    };
    let sections = vec![
        mk_quantale(crate::instances::b2_desc()),
        mk_quantale(crate::instances::g3_desc()),
        mk_quantale(crate::instances::l3_desc()),
        mk_monoid(crate::instances::c2_desc()),
        mk_monoid(crate::instances::c3_desc()),
        thin("r", "b2", "g3", &[("0", "0"), ("1", "1")]),
        thin("q", "g3", "b2", &[("0", "0"), ("h", "0"), ("1", "1")]),
        thin(
            "iota",
            "g3",
            "l3",
            &[("0", "0"), ("h", "h"), ("1", "1")],
        ),
        thin(
            "iota0",
            "g3",
            "l3",
            &[("0", "0"), ("h", "0"), ("1", "1")],
        ),
        Section::Functor(FunctorSec {
            name: "1_b2".into(),
            def: FunctorDef::Identity("b2".into()),
        }),
        Section::Functor(FunctorSec {
            name: "1_g3".into(),
            def: FunctorDef::Identity("g3".into()),
        }),
        Section::Functor(FunctorSec {
            name: "qr".into(),
            def: FunctorDef::Compose("q".into(), "r".into()),
        }),
        Section::Functor(FunctorSec {
            name: "rq".into(),
            def: FunctorDef::Compose("r".into(), "q".into()),
        }),
        nat("alpha", "iota0", "iota"),
        nat("eta", "1_b2", "qr"),
        nat("epsilon", "rq", "1_g3"),
        Section::MonVCat(MonVCatSec {
            name: "ul_b2".into(),
            def: MonVCatDef::Autoenrich("b2".into()),
        }),
        Section::MonVCat(MonVCatSec {
            name: "ul_g3".into(),
            def: MonVCatDef::Autoenrich("g3".into()),
        }),
        Section::MonVCat(MonVCatSec {
            name: "ul_l3".into(),
            def: MonVCatDef::Autoenrich("l3".into()),
        }),
        Section::MonVCat(MonVCatSec {
            name: "q_ul_g3".into(),
            def: MonVCatDef::Push("q".into(), "ul_g3".into()),
        }),
        Section::BaseIndex(BaseIndexSec {
            name: "bundled".into(),
            smccs: vec!["b2".into(), "g3".into(), "l3".into()],
            functors: vec!["r".into(), "q".into(), "iota".into(), "iota0".into()],
            nats: vec!["alpha".into(), "eta".into(), "epsilon".into()],
        }),
        Section::Adjunction(AdjunctionSec {
            name: "r_adj_q".into(),
            left: "r".into(),
            right: "q".into(),
            unit: "eta".into(),
            counit: "epsilon".into(),
        }),
    ];
    InstanceFile { sections }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn the_bundled_file_round_trips_byte_identically() {
        let file = bundled_instance_file();
        let bytes = serialize(&file).unwrap();
        let parsed = parse(&bytes).unwrap();
        assert_eq!(parsed, file.clone().canonicalize().unwrap());
        assert_eq!(serialize(&parsed).unwrap(), bytes);
    }

    #[test]
    fn the_bundled_file_resolves_to_the_bundled_structures() {
        let l = limits();
        let r = resolve(&bundled_instance_file(), &l).unwrap();
        assert!(r.smccs["b2"].same_tables(&crate::instances::b2(&l)));
        assert!(r.smccs["g3"].same_tables(&crate::instances::g3(&l)));
        assert!(r.functors["q"].same_tables(&crate::instances::functor_q(&l)));
        assert_eq!(
            r.nats["epsilon"].components,
            crate::instances::nat_epsilon(&l).components
        );
        assert_eq!(r.indices["bundled"].functors.len(), 4);
        assert!(r.adjunctions.contains_key("r_adj_q"));
        let (base, pushed) = &r.monvcats["q_ul_g3"];
        assert_eq!(base, "b2");
        let expected = push_monvcat(
            &crate::instances::functor_q(&l),
            &autoenrich(&crate::instances::g3(&l), &l).unwrap(),
            &l,
        )
        .unwrap();
        assert!(pushed.same_tables(&expected));
    }

    #[test]
    fn the_checked_in_instance_files_are_canonical() {
        let bundled = include_str!("../instances/bundled.inst");
        assert_eq!(serialize(&bundled_instance_file()).unwrap(), bundled);
        assert_eq!(serialize(&parse(bundled).unwrap()).unwrap(), bundled);

        let b2 = include_str!("../instances/b2.inst");
        let parsed = parse(b2).unwrap();
        let quantales = parsed
            .sections
            .iter()
            .filter(|s| matches!(s, Section::Quantale(_)))
            .count();
        assert_eq!(quantales, 1);
        assert_eq!(parsed.sections.len(), 1);
        assert_eq!(serialize(&parsed).unwrap(), b2);
    }

    #[test]
    fn a_dangling_reference_names_the_missing_id() {
        let text = "nat bad\n  source nosuch\n  target alsonot\nend\n";
        let file = parse(text).unwrap();
        let err = resolve(&file, &limits()).unwrap_err();
        assert!(format!("{err}").contains("nosuch"), "{err}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse("quantale b2\n  wrong 1\nend\n").unwrap_err();
        assert!(format!("{err}").contains("line 2"), "{err}");
        let err = parse("functor f\n  identity b2\n").unwrap_err();
        assert!(format!("{err}").contains("line 1"), "{err}");
    }
}
