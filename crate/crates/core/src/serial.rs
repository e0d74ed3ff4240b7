//! JSON workspaces: named algebras, modules, coalgebroids, bialgebroids,
//! cells and twists over one field.
//!
//! Scalars are canonical strings, sparse vectors are `[index, "scalar"]`
//! lists and maps store their columns. Keys are sorted on output, so saving
//! the same workspace twice gives identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algkit::{check_algebra, cyclic_group_table, Alg, FiniteAlgebra};
use crate::bgdkit::{check_bialgebroid, Bialgebroid};
use crate::cgdkit::{check_coalgebroid, Coalgebroid};
use crate::error::{Error, Result};
use crate::exactfield::{Field, LinMap, SVec};
use crate::examples::{check_twist, TwistData};
use crate::modkit::{check_bimodule, Bimodule, Multimodule};
use crate::moritakit::{check_one_cell, check_two_cell, OneCell, TwoCell};
use crate::report::Report;

pub type RawVec = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLinMap {
    pub src: usize,
    pub tgt: usize,
    pub cols: Vec<RawVec>,
}

/// An algebra either by explicit structure constants or by a named family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RawAlgebra {
    Table { dim: usize, table: Vec<RawVec>, unit: RawVec },
    Ground {},
    Matrix { n: usize },
    Diagonal { n: usize },
    Truncated { n: usize },
    Cyclic { n: usize },
    Group { table: Vec<Vec<usize>> },
    Tensor { left: String, right: String },
    Opposite { of: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBimodule {
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub left_act: Vec<RawLinMap>,
    pub right_act: Vec<RawLinMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCoalgebroid {
    pub r: String,
    pub s: String,
    pub dim: usize,
    pub lower_left: Vec<RawLinMap>,
    pub lower_right: Vec<RawLinMap>,
    pub upper_left: Vec<RawLinMap>,
    pub upper_right: Vec<RawLinMap>,
    pub delta: RawLinMap,
    pub epsilon: RawLinMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBialgebroid {
    pub total: String,
    pub base: String,
    pub s: RawLinMap,
    pub t: RawLinMap,
    pub delta: RawLinMap,
    pub epsilon: RawLinMap,
}

/// A cell `from → to`; the carrier is a `to.total`-`from.total` bimodule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOneCell {
    pub from: String,
    pub to: String,
    pub dim: usize,
    pub left_act: Vec<RawLinMap>,
    pub right_act: Vec<RawLinMap>,
    pub delta: RawLinMap,
    pub epsilon: RawLinMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTwoCell {
    pub source: String,
    pub target: String,
    pub map: RawLinMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTwist {
    pub bialgebroid: String,
    pub j: RawVec,
    pub j_inv: RawVec,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawWorkspace {
    pub field: String,
    #[serde(default)]
    pub algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, RawBimodule>,
    #[serde(default)]
    pub coalgebroids: BTreeMap<String, RawCoalgebroid>,
    #[serde(default)]
    pub bialgebroids: BTreeMap<String, RawBialgebroid>,
    #[serde(default)]
    pub one_cells: BTreeMap<String, RawOneCell>,
    #[serde(default)]
    pub two_cells: BTreeMap<String, RawTwoCell>,
    #[serde(default)]
    pub twists: BTreeMap<String, RawTwist>,
}

pub fn vec_to_raw(v: &SVec) -> RawVec {
    v.iter().map(|(i, x)| (*i, x.to_string())).collect()
}

pub fn vec_from_raw(field: Field, raw: &RawVec, dim: usize) -> Result<SVec> {
    let pairs = raw
        .iter()
        .map(|(i, s)| {
            if *i >= dim {
                return Err(Error::dim(format!("index {i} outside a space of dimension {dim}")));
            }
            Ok((*i, field.parse(s)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SVec::from_pairs(pairs))
}

pub fn map_to_raw(m: &LinMap) -> RawLinMap {
    RawLinMap { src: m.src(), tgt: m.tgt(), cols: m.cols().iter().map(vec_to_raw).collect() }
}

pub fn map_from_raw(field: Field, raw: &RawLinMap) -> Result<LinMap> {
    if raw.cols.len() != raw.src {
        return Err(Error::dim(format!("map declares {} columns but lists {}", raw.src, raw.cols.len())));
    }
    let cols = raw.cols.iter().map(|c| vec_from_raw(field, c, raw.tgt)).collect::<Result<Vec<_>>>()?;
    Ok(LinMap::new(field, raw.tgt, cols))
}

fn maps_from_raw(field: Field, raw: &[RawLinMap]) -> Result<Vec<LinMap>> {
    raw.iter().map(|m| map_from_raw(field, m)).collect()
}

fn expect_shape(m: &LinMap, src: usize, tgt: usize, what: &str) -> Result<()> {
    if m.src() != src || m.tgt() != tgt {
        return Err(Error::dim(format!("{what} is {}→{}, expected {src}→{tgt}", m.src(), m.tgt())));
    }
    Ok(())
}

fn same_bialgebroid(a: &Bialgebroid, b: &Bialgebroid) -> bool {
    a.total == b.total
        && a.base == b.base
        && a.s.map == b.s.map
        && a.t.map == b.t.map
        && a.delta() == b.delta()
        && a.epsilon() == b.epsilon()
}

/// A named object of any kind.
#[derive(Clone, Copy, Debug)]
pub enum Object<'a> {
    Algebra(&'a Alg),
    Bimodule(&'a Bimodule),
    Coalgebroid(&'a Arc<Coalgebroid>),
    Bialgebroid(&'a Arc<Bialgebroid>),
    OneCell(&'a Arc<OneCell>),
    TwoCell(&'a TwoCell),
    Twist(&'a TwistData),
}

impl Object<'_> {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Bimodule(_) => "bimodule",
            Object::Coalgebroid(_) => "coalgebroid",
            Object::Bialgebroid(_) => "bialgebroid",
            Object::OneCell(_) => "one_cell",
            Object::TwoCell(_) => "two_cell",
            Object::Twist(_) => "twist",
        }
    }

    /// Runs the axiom checker for the object's kind.
    pub fn check(&self) -> Result<Report> {
        Ok(match self {
            Object::Algebra(a) => check_algebra(a),
            Object::Bimodule(m) => check_bimodule(m),
            Object::Coalgebroid(c) => check_coalgebroid(c),
            Object::Bialgebroid(b) => check_bialgebroid(b),
            Object::OneCell(p) => check_one_cell(p),
            Object::TwoCell(c) => check_two_cell(c),
            Object::Twist(t) => check_twist(t)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: Field,
    pub algebras: BTreeMap<String, Alg>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub coalgebroids: BTreeMap<String, Arc<Coalgebroid>>,
    pub bialgebroids: BTreeMap<String, Arc<Bialgebroid>>,
    pub one_cells: BTreeMap<String, Arc<OneCell>>,
    pub two_cells: BTreeMap<String, TwoCell>,
    pub twists: BTreeMap<String, TwistData>,
}

impl Workspace {
    pub fn new(field: Field) -> Self {
        Workspace {
            field,
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            coalgebroids: BTreeMap::new(),
            bialgebroids: BTreeMap::new(),
            one_cells: BTreeMap::new(),
            two_cells: BTreeMap::new(),
            twists: BTreeMap::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
        Workspace::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        Workspace::from_raw(&raw)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string()?).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
    }

    pub fn to_json_string(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_json()?).expect("JSON values serialize");
        s.push('\n');
        Ok(s)
    }

    pub fn to_json(&self) -> Result<Value> {
        Ok(serde_json::to_value(self.to_raw()?).expect("raw workspace serializes"))
    }

    pub fn names(&self) -> BTreeSet<&str> {
        self.algebras
            .keys()
            .chain(self.bimodules.keys())
            .chain(self.coalgebroids.keys())
            .chain(self.bialgebroids.keys())
            .chain(self.one_cells.keys())
            .chain(self.two_cells.keys())
            .chain(self.twists.keys())
            .map(String::as_str)
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<Object<'_>> {
        self.algebras
            .get(name)
            .map(Object::Algebra)
            .or_else(|| self.bimodules.get(name).map(Object::Bimodule))
            .or_else(|| self.coalgebroids.get(name).map(Object::Coalgebroid))
            .or_else(|| self.bialgebroids.get(name).map(Object::Bialgebroid))
            .or_else(|| self.one_cells.get(name).map(Object::OneCell))
            .or_else(|| self.two_cells.get(name).map(Object::TwoCell))
            .or_else(|| self.twists.get(name).map(Object::Twist))
    }

    pub fn lookup(&self, name: &str) -> Result<Object<'_>> {
        self.get(name).ok_or_else(|| Error::invalid(format!("no object named {name:?} in the workspace")))
    }

    pub fn one_cell(&self, name: &str) -> Result<&Arc<OneCell>> {
        self.one_cells.get(name).ok_or_else(|| Error::invalid(format!("no one-cell named {name:?}")))
    }

    pub fn bialgebroid(&self, name: &str) -> Result<&Arc<Bialgebroid>> {
        self.bialgebroids.get(name).ok_or_else(|| Error::invalid(format!("no bialgebroid named {name:?}")))
    }

    pub fn algebra(&self, name: &str) -> Result<&Alg> {
        self.algebras.get(name).ok_or_else(|| Error::invalid(format!("no algebra named {name:?}")))
    }

    fn claim(&self, name: &str) -> Result<()> {
        if self.get(name).is_some() {
            return Err(Error::invalid(format!("name {name:?} is already used")));
        }
        Ok(())
    }

    fn check_field(&self, f: Field) -> Result<()> {
        if f != self.field {
            return Err(Error::FieldMismatch(format!("object over {f} in a workspace over {}", self.field)));
        }
        Ok(())
    }

    /// Name of an equal algebra already present, or `fallback` after inserting it.
    fn intern_algebra(&mut self, a: &Alg, fallback: String) -> Result<String> {
        if let Some((name, _)) = self.algebras.iter().find(|(_, b)| *b == a) {
            return Ok(name.clone());
        }
        self.add_algebra(&fallback, a.clone())?;
        Ok(fallback)
    }

    fn intern_bialgebroid(&mut self, b: &Arc<Bialgebroid>, fallback: String) -> Result<String> {
        if let Some((name, _)) = self.bialgebroids.iter().find(|(_, c)| Arc::ptr_eq(c, b) || same_bialgebroid(c, b)) {
            return Ok(name.clone());
        }
        self.add_bialgebroid(&fallback, b.clone())?;
        Ok(fallback)
    }

    pub fn add_algebra(&mut self, name: &str, a: Alg) -> Result<()> {
        self.claim(name)?;
        self.check_field(a.field())?;
        self.algebras.insert(name.to_string(), a);
        Ok(())
    }

    pub fn add_bimodule(&mut self, name: &str, m: Bimodule) -> Result<()> {
        self.claim(name)?;
        self.check_field(m.field())?;
        self.intern_algebra(&m.left, format!("{name}.left"))?;
        self.intern_algebra(&m.right, format!("{name}.right"))?;
        self.bimodules.insert(name.to_string(), m);
        Ok(())
    }

    pub fn add_coalgebroid(&mut self, name: &str, c: Arc<Coalgebroid>) -> Result<()> {
        self.claim(name)?;
        self.check_field(c.field())?;
        self.intern_algebra(c.r(), format!("{name}.r"))?;
        self.intern_algebra(c.s(), format!("{name}.s"))?;
        self.coalgebroids.insert(name.to_string(), c);
        Ok(())
    }

    pub fn add_bialgebroid(&mut self, name: &str, b: Arc<Bialgebroid>) -> Result<()> {
        self.claim(name)?;
        self.check_field(b.field())?;
        self.intern_algebra(&b.total, format!("{name}.total"))?;
        self.intern_algebra(&b.base, format!("{name}.base"))?;
        self.bialgebroids.insert(name.to_string(), b);
        Ok(())
    }

    pub fn add_one_cell(&mut self, name: &str, p: Arc<OneCell>) -> Result<()> {
        self.claim(name)?;
        self.check_field(p.field())?;
        self.intern_bialgebroid(&p.from, format!("{name}.from"))?;
        self.intern_bialgebroid(&p.to, format!("{name}.to"))?;
        self.one_cells.insert(name.to_string(), p);
        Ok(())
    }

    pub fn add_two_cell(&mut self, name: &str, c: TwoCell) -> Result<()> {
        self.claim(name)?;
        self.intern_one_cell(&c.source, format!("{name}.source"))?;
        self.intern_one_cell(&c.target, format!("{name}.target"))?;
        self.two_cells.insert(name.to_string(), c);
        Ok(())
    }

    fn intern_one_cell(&mut self, p: &Arc<OneCell>, fallback: String) -> Result<String> {
        if let Some((name, _)) = self.one_cells.iter().find(|(_, c)| Arc::ptr_eq(c, p)) {
            return Ok(name.clone());
        }
        self.add_one_cell(&fallback, p.clone())?;
        Ok(fallback)
    }

    pub fn add_twist(&mut self, name: &str, t: TwistData) -> Result<()> {
        self.claim(name)?;
        self.intern_bialgebroid(&t.bialgebroid, format!("{name}.bialgebroid"))?;
        self.twists.insert(name.to_string(), t);
        Ok(())
    }

    fn algebra_name(&self, a: &Alg) -> Result<String> {
        self.algebras
            .iter()
            .find(|(_, b)| *b == a)
            .map(|(n, _)| n.clone())
            .ok_or_else(|| Error::invalid("object refers to an unregistered algebra"))
    }

    fn bialgebroid_name(&self, b: &Arc<Bialgebroid>) -> Result<String> {
        self.bialgebroids
            .iter()
            .find(|(_, c)| Arc::ptr_eq(c, b))
            .or_else(|| self.bialgebroids.iter().find(|(_, c)| same_bialgebroid(c, b)))
            .map(|(n, _)| n.clone())
            .ok_or_else(|| Error::invalid("object refers to an unregistered bialgebroid"))
    }

    fn one_cell_name(&self, p: &Arc<OneCell>) -> Result<String> {
        self.one_cells
            .iter()
            .find(|(_, c)| Arc::ptr_eq(c, p))
            .map(|(n, _)| n.clone())
            .ok_or_else(|| Error::invalid("two-cell refers to an unregistered one-cell"))
    }

    pub fn to_raw(&self) -> Result<RawWorkspace> {
        let maps = |ms: &[LinMap]| ms.iter().map(map_to_raw).collect::<Vec<_>>();
        let mut raw = RawWorkspace { field: self.field.to_string(), ..Default::default() };
        for (name, a) in &self.algebras {
            let table = (0..a.dim() * a.dim()).map(|k| vec_to_raw(a.basis_mul(k / a.dim(), k % a.dim()))).collect();
            raw.algebras.insert(name.clone(), RawAlgebra::Table { dim: a.dim(), table, unit: vec_to_raw(a.unit()) });
        }
        for (name, m) in &self.bimodules {
            raw.bimodules.insert(
                name.clone(),
                RawBimodule {
                    left: self.algebra_name(&m.left)?,
                    right: self.algebra_name(&m.right)?,
                    dim: m.dim,
                    left_act: maps(&m.left_act),
                    right_act: maps(&m.right_act),
                },
            );
        }
        for (name, c) in &self.coalgebroids {
            let mm = &c.carrier;
            raw.coalgebroids.insert(
                name.clone(),
                RawCoalgebroid {
                    r: self.algebra_name(&mm.r)?,
                    s: self.algebra_name(&mm.s)?,
                    dim: mm.dim,
                    lower_left: maps(&mm.lower_left),
                    lower_right: maps(&mm.lower_right),
                    upper_left: maps(&mm.upper_left),
                    upper_right: maps(&mm.upper_right),
                    delta: map_to_raw(&c.delta),
                    epsilon: map_to_raw(&c.epsilon),
                },
            );
        }
        for (name, b) in &self.bialgebroids {
            raw.bialgebroids.insert(
                name.clone(),
                RawBialgebroid {
                    total: self.algebra_name(&b.total)?,
                    base: self.algebra_name(&b.base)?,
                    s: map_to_raw(&b.s.map),
                    t: map_to_raw(&b.t.map),
                    delta: map_to_raw(b.delta()),
                    epsilon: map_to_raw(b.epsilon()),
                },
            );
        }
        for (name, p) in &self.one_cells {
            raw.one_cells.insert(
                name.clone(),
                RawOneCell {
                    from: self.bialgebroid_name(&p.from)?,
                    to: self.bialgebroid_name(&p.to)?,
                    dim: p.dim(),
                    left_act: maps(&p.carrier.left_act),
                    right_act: maps(&p.carrier.right_act),
                    delta: map_to_raw(p.delta()),
                    epsilon: map_to_raw(p.epsilon()),
                },
            );
        }
        for (name, c) in &self.two_cells {
            raw.two_cells.insert(
                name.clone(),
                RawTwoCell {
                    source: self.one_cell_name(&c.source)?,
                    target: self.one_cell_name(&c.target)?,
                    map: map_to_raw(&c.map),
                },
            );
        }
        for (name, t) in &self.twists {
            raw.twists.insert(
                name.clone(),
                RawTwist {
                    bialgebroid: self.bialgebroid_name(&t.bialgebroid)?,
                    j: vec_to_raw(&t.j),
                    j_inv: vec_to_raw(&t.j_inv),
                },
            );
        }
        Ok(raw)
    }

    pub fn from_raw(raw: &RawWorkspace) -> Result<Self> {
        let field: Field = raw.field.parse()?;
        let mut ws = Workspace::new(field);
        let mut seen = BTreeSet::new();
        let names = raw
            .algebras
            .keys()
            .chain(raw.bimodules.keys())
            .chain(raw.coalgebroids.keys())
            .chain(raw.bialgebroids.keys())
            .chain(raw.one_cells.keys())
            .chain(raw.two_cells.keys())
            .chain(raw.twists.keys());
        for n in names {
            if !seen.insert(n) {
                return Err(Error::invalid(format!("name {n:?} is used twice")));
            }
        }

        let mut visiting = BTreeSet::new();
        for name in raw.algebras.keys() {
            resolve_algebra(field, raw, name, &mut ws.algebras, &mut visiting)?;
        }
        let alg = |ws: &Workspace, name: &str, owner: &str| {
            ws.algebras
                .get(name)
                .cloned()
                .ok_or_else(|| Error::invalid(format!("{owner} refers to unknown algebra {name:?}")))
        };
        for (name, m) in &raw.bimodules {
            let b = Bimodule::new(
                alg(&ws, &m.left, name)?,
                alg(&ws, &m.right, name)?,
                m.dim,
                maps_from_raw(field, &m.left_act)?,
                maps_from_raw(field, &m.right_act)?,
            )
            .map_err(|e| Error::invalid(format!("bimodule {name:?}: {e}")))?;
            ws.bimodules.insert(name.clone(), b);
        }
        for (name, c) in &raw.coalgebroids {
            let mm = Multimodule::new(
                alg(&ws, &c.r, name)?,
                alg(&ws, &c.s, name)?,
                c.dim,
                maps_from_raw(field, &c.lower_left)?,
                maps_from_raw(field, &c.lower_right)?,
                maps_from_raw(field, &c.upper_left)?,
                maps_from_raw(field, &c.upper_right)?,
            )
            .map_err(|e| Error::invalid(format!("coalgebroid {name:?}: {e}")))?;
            let cg = Coalgebroid::new(mm, map_from_raw(field, &c.delta)?, map_from_raw(field, &c.epsilon)?)
                .map_err(|e| Error::invalid(format!("coalgebroid {name:?}: {e}")))?;
            ws.coalgebroids.insert(name.clone(), Arc::new(cg));
        }
        for (name, b) in &raw.bialgebroids {
            let total = alg(&ws, &b.total, name)?;
            let base = alg(&ws, &b.base, name)?;
            let s = map_from_raw(field, &b.s)?;
            let t = map_from_raw(field, &b.t)?;
            let delta = map_from_raw(field, &b.delta)?;
            let epsilon = map_from_raw(field, &b.epsilon)?;
            let (d, r) = (total.dim(), base.dim());
            expect_shape(&s, r, d, "s")?;
            expect_shape(&t, r, d, "t")?;
            expect_shape(&delta, d, d * d, "Δ")?;
            expect_shape(&epsilon, d, r, "ε")?;
            let bg = Bialgebroid::new(total, base, s, t, delta, epsilon)
                .map_err(|e| Error::invalid(format!("bialgebroid {name:?}: {e}")))?;
            ws.bialgebroids.insert(name.clone(), Arc::new(bg));
        }
        let bgd = |ws: &Workspace, name: &str, owner: &str| {
            ws.bialgebroids
                .get(name)
                .cloned()
                .ok_or_else(|| Error::invalid(format!("{owner} refers to unknown bialgebroid {name:?}")))
        };
        for (name, p) in &raw.one_cells {
            let from = bgd(&ws, &p.from, name)?;
            let to = bgd(&ws, &p.to, name)?;
            let carrier = Bimodule::new(
                to.total.clone(),
                from.total.clone(),
                p.dim,
                maps_from_raw(field, &p.left_act)?,
                maps_from_raw(field, &p.right_act)?,
            )
            .map_err(|e| Error::invalid(format!("one-cell {name:?}: {e}")))?;
            let delta = map_from_raw(field, &p.delta)?;
            let epsilon = map_from_raw(field, &p.epsilon)?;
            expect_shape(&delta, p.dim, p.dim * p.dim, "Δ_P")?;
            expect_shape(&epsilon, p.dim, from.base.dim(), "ε_P")?;
            let cell = OneCell::new(from, to, carrier, delta, epsilon)
                .map_err(|e| Error::invalid(format!("one-cell {name:?}: {e}")))?;
            ws.one_cells.insert(name.clone(), Arc::new(cell));
        }
        for (name, c) in &raw.two_cells {
            let get = |n: &str| {
                ws.one_cells
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("{name} refers to unknown one-cell {n:?}")))
            };
            let cell = TwoCell::new(get(&c.source)?, get(&c.target)?, map_from_raw(field, &c.map)?)
                .map_err(|e| Error::invalid(format!("two-cell {name:?}: {e}")))?;
            ws.two_cells.insert(name.clone(), cell);
        }
        for (name, t) in &raw.twists {
            let b = bgd(&ws, &t.bialgebroid, name)?;
            let n = b.dim();
            let tw = TwistData::new(b, vec_from_raw(field, &t.j, n * n)?, vec_from_raw(field, &t.j_inv, n * n)?)?;
            ws.twists.insert(name.clone(), tw);
        }
        Ok(ws)
    }
}

fn resolve_algebra(
    field: Field,
    raw: &RawWorkspace,
    name: &str,
    done: &mut BTreeMap<String, Alg>,
    visiting: &mut BTreeSet<String>,
) -> Result<Alg> {
    if let Some(a) = done.get(name) {
        return Ok(a.clone());
    }
    let def = raw.algebras.get(name).ok_or_else(|| Error::invalid(format!("unknown algebra {name:?}")))?;
    if !visiting.insert(name.to_string()) {
        return Err(Error::invalid(format!("algebra {name:?} is defined in terms of itself")));
    }
    let built = match def {
        RawAlgebra::Table { dim, table, unit } => {
            let t = table.iter().map(|v| vec_from_raw(field, v, *dim)).collect::<Result<Vec<_>>>()?;
            FiniteAlgebra::new(field, *dim, t, vec_from_raw(field, unit, *dim)?)
        }
        RawAlgebra::Ground {} => Ok(FiniteAlgebra::ground(field)),
        RawAlgebra::Matrix { n } => FiniteAlgebra::matrix(field, *n),
        RawAlgebra::Diagonal { n } => FiniteAlgebra::diagonal(field, *n),
        RawAlgebra::Truncated { n } => FiniteAlgebra::truncated_polynomial(field, *n),
        RawAlgebra::Cyclic { n } => FiniteAlgebra::group(field, &cyclic_group_table(*n)),
        RawAlgebra::Group { table } => FiniteAlgebra::group(field, table),
        RawAlgebra::Tensor { left, right } => {
            let l = resolve_algebra(field, raw, left, done, visiting)?;
            let r = resolve_algebra(field, raw, right, done, visiting)?;
            FiniteAlgebra::tensor(&l, &r)
        }
        RawAlgebra::Opposite { of } => Ok(resolve_algebra(field, raw, of, done, visiting)?.opposite()),
    }
    .map_err(|e| Error::invalid(format!("algebra {name:?}: {e}")))?;
    visiting.remove(name);
    let a = Arc::new(built);
    done.insert(name.to_string(), a.clone());
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bgdkit::group_bialgebra;
    use crate::examples::build_blowup;

    #[test]
    fn minimal_workspace() {
        let ws = Workspace::from_json_str(r#"{"field": "GF:7"}"#).unwrap();
        assert_eq!(ws.field, Field::Prime(7));
        assert!(ws.names().is_empty());
    }

    #[test]
    fn dangling_reference_names_the_algebra() {
        let text = r#"{"field": "Q", "algebras": {"k": {"ground": {}}},
            "bimodules": {"M": {"left": "k", "right": "nowhere", "dim": 0, "left_act": [], "right_act": []}}}"#;
        let err = Workspace::from_json_str(text).unwrap_err();
        assert!(err.to_string().contains("nowhere"), "{err}");
    }

    #[test]
    fn blowup_round_trip() {
        let b = Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(2)).unwrap());
        let bl = build_blowup(b.clone(), 2).unwrap();
        let mut ws = Workspace::new(Field::Rationals);
        ws.add_bialgebroid("B", b).unwrap();
        ws.add_bialgebroid("A", bl.a.clone()).unwrap();
        ws.add_one_cell("P", Arc::new(bl.cell)).unwrap();
        let text = ws.to_json_string().unwrap();
        let back = Workspace::from_json_str(&text).unwrap();
        assert_eq!(back.to_json_string().unwrap(), text);
        assert_eq!(back.names(), ws.names());
        assert!(back.lookup("P").unwrap().check().unwrap().pass());
    }

    #[test]
    fn family_algebras_resolve() {
        let text = r#"{"field": "Q", "algebras": {
            "M": {"matrix": {"n": 2}}, "Mop": {"opposite": {"of": "M"}},
            "E": {"tensor": {"left": "Mop", "right": "M"}}, "X": {"opposite": {"of": "X"}}}}"#;
        assert!(Workspace::from_json_str(text).is_err());
        let text = text.replace(r#", "X": {"opposite": {"of": "X"}}"#, "");
        let ws = Workspace::from_json_str(&text).unwrap();
        assert_eq!(ws.algebra("E").unwrap().dim(), 16);
    }
}
