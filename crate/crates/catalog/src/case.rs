//! Loading a case file into a resolved [`Case`]: the surface model is built,
//! every class name is bound, every check is parsed into a typed [`Op`].

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use dpverify_core::surfaces::{DelPezzoLattice, ProductSurfaceModel, RuledSurfaceModel, Surface};
use dpverify_core::threefold::{FanoBase, HodgeBase, HodgeStep, PipelineInput};
use dpverify_core::{Combination, DivisorClass, ExprError, Lattice, LatticeError, Namespace, PolarizedK3Model};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::builtin;
use crate::schema::{BaseSpec, CaseFile, Construction, RationalSpec, StepSpec, SurfaceSpec};
use crate::value;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("no builtin case `{0}` and no such file")]
    UnknownCase(String),
    #[error("{location}: unknown op `{op}`")]
    UnknownOp { location: String, op: String },
    #[error("{location}: missing argument `{arg}`")]
    MissingArg { location: String, arg: String },
    #[error("{location}: unexpected argument `{arg}`")]
    UnexpectedArg { location: String, arg: String },
    #[error("{location}: unbound class name `{name}`")]
    Unbound { location: String, name: String },
    #[error("{location}: {source}")]
    Lattice { location: String, source: LatticeError },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn invalid(location: impl Into<String>, message: impl ToString) -> LoadError {
    LoadError::Invalid { location: location.into(), message: message.to_string() }
}

/// The geometric object a case's checks run against.
#[derive(Debug, Clone)]
pub enum Model {
    K3(PolarizedK3Model),
    DelPezzo(DelPezzoLattice),
    Ruled(RuledSurfaceModel),
    Product(ProductSurfaceModel),
    Direct,
}

impl Model {
    pub fn surface(&self) -> Option<&dyn Surface> {
        match self {
            Model::K3(m) => Some(m),
            Model::DelPezzo(m) => Some(m),
            Model::Ruled(m) => Some(m),
            Model::Product(m) => Some(m),
            Model::Direct => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Window {
    pub functional: DivisorClass,
    pub min: BigInt,
    pub max: BigInt,
}

#[derive(Debug, Clone)]
pub enum Op {
    Classify,
    Pair { left: DivisorClass, right: DivisorClass },
    Class { expr: DivisorClass },
    H0Rr { class: DivisorClass },
    EffectiveCandidate { class: DivisorClass },
    Enum { square: BigInt, constraints: Vec<(DivisorClass, BigInt)>, window: Option<Window> },
    ClassesOfDegree { square: BigInt, min: BigInt, max: BigInt },
    MinusTwoUpTo { max: BigInt },
    MinusTwoOfDegreeZero,
    IsNegativeDefinite { classes: Vec<DivisorClass> },
    Bpf { class: DivisorClass },
    VeryAmple { class: DivisorClass },
    QuadricEmbedding,
    Nef { class: DivisorClass },
    Movable { class: DivisorClass },
    FixedPartSquare { class: DivisorClass, curves: Vec<DivisorClass> },
    BnGeneral,
    RelativeNef { restriction: DivisorClass, fiber: DivisorClass },
    AdjunctionGenus { class: DivisorClass },
    MinusOneClasses,
    NefDelPezzo { class: DivisorClass },
    RestrictedClass { expr: Combination },
    BlowupInvariants { kv3: BigInt, kv_dot_b: BigInt, genus: BigInt },
    DpdFeasibleTriples { d: i64 },
    DpdEliminations { d: i64 },
    H0Bidegree { a: u64, b: u64, m: u64, n: u64 },
    QuadricPencilH12 { size: u64, degree: u64 },
}

/// Names accepted in the `op` field.
pub const OPS: &[&str] = &[
    "classify",
    "pair",
    "class",
    "h0_rr",
    "effective_candidate",
    "enum",
    "classes_of_degree",
    "minus_two_up_to",
    "minus_two_of_degree_zero",
    "is_negative_definite",
    "bpf",
    "very_ample",
    "quadric_embedding",
    "nef",
    "movable",
    "fixed_part_square",
    "bn_general",
    "relative_nef",
    "adjunction_genus",
    "minus_one_classes",
    "nef_del_pezzo",
    "restricted_class",
    "blowup_invariants",
    "dpd_feasible_triples",
    "dpd_eliminations",
    "h0_bidegree",
    "quadric_pencil_h12",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineField {
    Kw3,
    KwDotB,
    GB,
}

impl PipelineField {
    pub fn name(self) -> &'static str {
        match self {
            PipelineField::Kw3 => "kw3",
            PipelineField::KwDotB => "kw_dot_b",
            PipelineField::GB => "g_b",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub op_name: String,
    pub op: Op,
    /// Arguments as written, echoed in reports.
    pub args: Value,
    /// Expectation with class names replaced by coordinates.
    pub expect: Value,
    pub anchor: String,
    pub paper_printed: Option<Value>,
    pub bind: Option<PipelineField>,
}

#[derive(Debug, Clone)]
pub enum Pipeline {
    /// A del Pezzo fibration obtained after the flop.
    Game(PipelineInput),
    /// `X` is the blowup of the base threefold itself.
    BlowupOnly { kw3: BigInt, kw_dot_b: BigInt, g_b: BigInt },
}

impl Pipeline {
    pub fn field(&self, f: PipelineField) -> &BigInt {
        let (kw3, kwb, g) = match self {
            Pipeline::Game(p) => (&p.kw3, &p.kw_dot_b, &p.g_b),
            Pipeline::BlowupOnly { kw3, kw_dot_b, g_b } => (kw3, kw_dot_b, g_b),
        };
        match f {
            PipelineField::Kw3 => kw3,
            PipelineField::KwDotB => kwb,
            PipelineField::GB => g,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableField {
    Kx3,
    KxDotC,
    Z,
    H12,
}

impl TableField {
    pub fn name(self) -> &'static str {
        match self {
            TableField::Kx3 => "kx3",
            TableField::KxDotC => "kx_dot_c",
            TableField::Z => "z",
            TableField::H12 => "h12",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [TableField::Kx3, TableField::KxDotC, TableField::Z, TableField::H12].into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone)]
pub struct Expected {
    pub kx3: BigRational,
    pub kx_dot_c: Option<BigRational>,
    pub z: Option<BigRational>,
    pub h12: BigRational,
    pub dp_degree: u8,
    pub anchor: String,
}

impl Expected {
    pub fn get(&self, f: TableField) -> Option<&BigRational> {
        match f {
            TableField::Kx3 => Some(&self.kx3),
            TableField::KxDotC => self.kx_dot_c.as_ref(),
            TableField::Z => self.z.as_ref(),
            TableField::H12 => Some(&self.h12),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Flag {
    pub field: TableField,
    pub paper_value: BigRational,
    pub anchor: String,
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Hodge {
    pub base: HodgeBase,
    pub steps: Vec<HodgeStep>,
    pub anchor: String,
}

#[derive(Debug, Clone)]
pub struct Case {
    pub id: String,
    pub construction: Construction,
    pub model: Model,
    pub namespace: Option<Namespace>,
    pub checks: Vec<Check>,
    pub pipeline: Option<Pipeline>,
    pub hodge: Option<Hodge>,
    pub expected: Expected,
    pub flags: Vec<Flag>,
}

/// Parse JSON text into a case file, reporting the path of the first schema violation.
pub fn parse_case_file(text: &str) -> Result<CaseFile, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| LoadError::Schema { path: e.path().to_string(), message: e.inner().to_string() })
}

/// A builtin id, or a path to a case file.
pub fn load_case(source: &str) -> Result<Case, LoadError> {
    if let Some(text) = builtin::source(source) {
        return resolve(parse_case_file(text)?);
    }
    let path = std::path::Path::new(source);
    if !path.exists() {
        return Err(LoadError::UnknownCase(source.to_string()));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|source_err| LoadError::Io { path: source.to_string(), source: source_err })?;
    resolve(parse_case_file(&text)?)
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rational(spec: &RationalSpec, location: &str) -> Result<BigRational, LoadError> {
    match spec {
        RationalSpec::Int(n) => Ok(BigRational::from(big(*n))),
        RationalSpec::Text(s) => {
            BigRational::from_str(s.trim()).map_err(|_| invalid(location, format!("`{s}` is not p/q")))
        }
    }
}

fn eval(ns: &Namespace, input: &str, location: &str) -> Result<DivisorClass, LoadError> {
    ns.eval(input).map_err(|e| match e {
        ExprError::Unbound(name) => LoadError::Unbound { location: location.to_string(), name },
        other => invalid(location, other),
    })
}

fn lattice_error(location: &str) -> impl FnOnce(LatticeError) -> LoadError + '_ {
    move |source| LoadError::Lattice { location: location.to_string(), source }
}

/// Build the model, bind names, type the checks.
pub fn resolve(file: CaseFile) -> Result<Case, LoadError> {
    let (model, lattice) = build_model(&file)?;
    let namespace = match &lattice {
        Some(l) => Some(build_namespace(&file, l, &model)?),
        None => None,
    };
    let model = match model {
        Model::K3(k3) if !file.marks.is_empty() => {
            let ns = namespace.as_ref().expect("K3 cases have a lattice");
            let marks = file
                .marks
                .iter()
                .enumerate()
                .map(|(i, m)| eval(ns, m, &format!("marks[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Model::K3(k3.with_irreducible(marks).map_err(|e| invalid("marks", e))?)
        }
        other => {
            if !file.marks.is_empty() {
                return Err(invalid("marks", "marks are only meaningful on K3 models"));
            }
            other
        }
    };

    let mut checks = Vec::with_capacity(file.checks.len());
    for (i, spec) in file.checks.iter().enumerate() {
        let location = format!("checks[{i}]");
        let op = parse_op(&spec.op, &spec.args, &location, &model, namespace.as_ref())?;
        let expect =
            value::normalize_expectation(&spec.expect, None, namespace.as_ref(), &format!("{location}.expect"))?;
        let paper_printed = spec
            .paper_printed
            .as_ref()
            .map(|v| value::normalize_expectation(v, None, namespace.as_ref(), &format!("{location}.paper_printed")))
            .transpose()?;
        let bind = match spec.bind.as_deref() {
            None => None,
            Some(b) => Some(
                [PipelineField::Kw3, PipelineField::KwDotB, PipelineField::GB]
                    .into_iter()
                    .find(|f| f.name() == b)
                    .ok_or_else(|| invalid(format!("{location}.bind"), format!("`{b}` is not a pipeline field")))?,
            ),
        };
        if bind.is_some() && file.pipeline.is_none() {
            return Err(invalid(format!("{location}.bind"), "case has no pipeline"));
        }
        checks.push(Check {
            op_name: spec.op.clone(),
            op,
            args: Value::Object(spec.args.clone()),
            expect,
            anchor: spec.anchor.clone(),
            paper_printed,
            bind,
        });
    }

    let pipeline = match &file.pipeline {
        None => None,
        Some(p) => Some(match p.d {
            Some(d) => {
                Pipeline::Game(PipelineInput::new(p.kw3, p.kw_dot_b, p.g_b, d).map_err(|e| invalid("pipeline", e))?)
            }
            None => {
                if p.g_b < 0 {
                    return Err(invalid("pipeline.g_b", "genus must be non-negative"));
                }
                Pipeline::BlowupOnly { kw3: big(p.kw3), kw_dot_b: big(p.kw_dot_b), g_b: big(p.g_b) }
            }
        }),
    };

    let hodge = match &file.hodge {
        None => None,
        Some(h) => {
            let base = match &h.base {
                BaseSpec::Named(name) => {
                    HodgeBase::Named(FanoBase::from_str(name).map_err(|e| invalid("hodge.base", e))?)
                }
                BaseSpec::Explicit(v) => HodgeBase::Explicit(*v),
            };
            let steps = h
                .steps
                .iter()
                .map(|s| match s {
                    StepSpec::Blowup(g) => HodgeStep::Blowup { genus: *g },
                    StepSpec::Blowdown(g) => HodgeStep::Blowdown { genus: *g },
                    StepSpec::Flop => HodgeStep::Flop,
                })
                .collect();
            Some(Hodge { base, steps, anchor: h.anchor.clone() })
        }
    };

    let e = &file.expected;
    let expected = Expected {
        kx3: BigRational::from(big(e.kx3)),
        kx_dot_c: e.kx_dot_c.as_ref().map(|v| rational(v, "expected.kx_dot_c")).transpose()?,
        z: e.z.as_ref().map(|v| rational(v, "expected.z")).transpose()?,
        h12: BigRational::from(BigInt::from(e.h12)),
        dp_degree: e.dp_degree,
        anchor: e.anchor.clone(),
    };

    let mut flags = Vec::with_capacity(file.flags.len());
    for (i, f) in file.flags.iter().enumerate() {
        let location = format!("flags[{i}]");
        let field = TableField::parse(&f.field)
            .ok_or_else(|| invalid(format!("{location}.field"), format!("`{}` is not a table field", f.field)))?;
        if expected.get(field).is_none() {
            return Err(invalid(format!("{location}.field"), "flagged field has no expected value"));
        }
        flags.push(Flag {
            field,
            paper_value: rational(&f.paper_value, &format!("{location}.paper_value"))?,
            anchor: f.anchor.clone(),
            note: f.note.clone(),
        });
    }

    Ok(Case {
        id: file.id,
        construction: file.construction,
        model,
        namespace,
        checks,
        pipeline,
        hodge,
        expected,
        flags,
    })
}

fn build_model(file: &CaseFile) -> Result<(Model, Option<Arc<Lattice>>), LoadError> {
    let need_surface = |kind: &str| invalid("surface", format!("construction needs a `{kind}` surface"));
    match file.construction {
        Construction::K3Lattice => {
            let spec = file.lattice.as_ref().ok_or_else(|| invalid("lattice", "K3 cases need a lattice"))?;
            let gram = spec.gram.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect();
            let lattice =
                Lattice::new(file.id.clone(), spec.basis.clone(), gram).map_err(lattice_error("lattice.gram"))?;
            let ns = Namespace::new(&lattice);
            let text =
                file.polarization.as_deref().ok_or_else(|| invalid("polarization", "K3 cases need a polarization"))?;
            let h = eval(&ns, text, "polarization")?;
            let model = PolarizedK3Model::new(&lattice, h).map_err(|e| invalid("polarization", e))?;
            Ok((Model::K3(model), Some(lattice)))
        }
        Construction::DelPezzoSurface => match &file.surface {
            Some(SurfaceSpec::DelPezzo { points }) => {
                let dp = DelPezzoLattice::new(*points).map_err(|e| invalid("surface.points", e))?;
                let l = dp.lattice().clone();
                Ok((Model::DelPezzo(dp), Some(l)))
            }
            _ => Err(need_surface("del_pezzo")),
        },
        Construction::RuledSurface => match &file.surface {
            Some(SurfaceSpec::Ruled { base_genus, degree, restrictions }) => {
                let mut model = RuledSurfaceModel::new(*base_genus, *degree).map_err(|e| invalid("surface", e))?;
                let l = model.lattice().clone();
                for (name, coords) in restrictions {
                    let c = l.class_from(coords).map_err(lattice_error("surface.restrictions"))?;
                    model = model.with_restriction(name.clone(), c).map_err(|e| invalid("surface.restrictions", e))?;
                }
                Ok((Model::Ruled(model), Some(l)))
            }
            _ => Err(need_surface("ruled")),
        },
        Construction::ProductSurface => match &file.surface {
            Some(SurfaceSpec::Product { base_genus }) => {
                let model = ProductSurfaceModel::new(*base_genus).map_err(|e| invalid("surface", e))?;
                let l = model.lattice().clone();
                Ok((Model::Product(model), Some(l)))
            }
            _ => Err(need_surface("product")),
        },
        Construction::Direct => {
            if file.lattice.is_some() || file.surface.is_some() {
                return Err(invalid("construction", "direct cases carry no lattice or surface"));
            }
            Ok((Model::Direct, None))
        }
    }
}

fn build_namespace(file: &CaseFile, lattice: &Arc<Lattice>, model: &Model) -> Result<Namespace, LoadError> {
    let mut ns = Namespace::new(lattice);
    if let Model::K3(k3) = model {
        if ns.get("H").is_none() {
            ns.insert("H", k3.polarization().clone()).map_err(lattice_error("polarization"))?;
        }
    }
    if let Model::Ruled(r) = model {
        for (name, c) in r.restrictions() {
            if ns.get(name).is_none() {
                ns.insert(name.clone(), c.clone()).map_err(lattice_error("surface.restrictions"))?;
            }
        }
    }
    if let Some(s) = model.surface() {
        if ns.get("K").is_none() && !matches!(model, Model::K3(_)) {
            ns.insert("K", s.canonical()).map_err(lattice_error("surface"))?;
        }
    }
    for (name, coords) in &file.classes {
        let location = format!("classes.{name}");
        if ns.get(name).is_some() {
            return Err(invalid(location, "name is already bound"));
        }
        let c = lattice.class_from(coords).map_err(lattice_error(&location))?;
        ns.insert(name.clone(), c).map_err(lattice_error(&location))?;
    }
    Ok(ns)
}

/// Typed view of a check's argument object; every key must be consumed.
struct Args<'a> {
    map: BTreeMap<&'a str, &'a Value>,
    location: String,
    ns: Option<&'a Namespace>,
}

impl<'a> Args<'a> {
    fn new(map: &'a Map<String, Value>, location: String, ns: Option<&'a Namespace>) -> Self {
        Args { map: map.iter().map(|(k, v)| (k.as_str(), v)).collect(), location, ns }
    }

    fn here(&self, arg: &str) -> String {
        format!("{}.args.{arg}", self.location)
    }

    fn take(&mut self, arg: &str) -> Result<&'a Value, LoadError> {
        self.map
            .remove(arg)
            .ok_or_else(|| LoadError::MissingArg { location: self.location.clone(), arg: arg.to_string() })
    }

    fn namespace(&self) -> Result<&'a Namespace, LoadError> {
        self.ns.ok_or_else(|| invalid(&self.location, "op needs a lattice but the case has none"))
    }

    fn class_at(&self, v: &Value, location: &str) -> Result<DivisorClass, LoadError> {
        let ns = self.namespace()?;
        match v {
            Value::String(s) => eval(ns, s, location),
            _ => Err(invalid(location, "expected a class expression")),
        }
    }

    fn class(&mut self, arg: &str) -> Result<DivisorClass, LoadError> {
        let v = self.take(arg)?;
        self.class_at(v, &self.here(arg))
    }

    fn classes(&mut self, arg: &str) -> Result<Vec<DivisorClass>, LoadError> {
        let v = self.take(arg)?;
        let here = self.here(arg);
        let items = v.as_array().ok_or_else(|| invalid(&here, "expected a list of class expressions"))?;
        items.iter().enumerate().map(|(i, x)| self.class_at(x, &format!("{here}[{i}]"))).collect()
    }

    fn int_at(v: &Value, location: &str) -> Result<i64, LoadError> {
        v.as_i64().ok_or_else(|| invalid(location, "expected an integer"))
    }

    fn int(&mut self, arg: &str) -> Result<i64, LoadError> {
        let v = self.take(arg)?;
        Self::int_at(v, &self.here(arg))
    }

    fn big(&mut self, arg: &str) -> Result<BigInt, LoadError> {
        self.int(arg).map(BigInt::from)
    }

    fn natural(&mut self, arg: &str) -> Result<u64, LoadError> {
        let v = self.take(arg)?;
        v.as_u64().ok_or_else(|| invalid(self.here(arg), "expected a non-negative integer"))
    }

    fn optional(&mut self, arg: &str) -> Option<&'a Value> {
        self.map.remove(arg)
    }

    fn finish(self) -> Result<(), LoadError> {
        match self.map.keys().next() {
            Some(extra) => Err(LoadError::UnexpectedArg { location: self.location, arg: extra.to_string() }),
            None => Ok(()),
        }
    }
}

fn parse_op(
    name: &str,
    args: &Map<String, Value>,
    location: &str,
    model: &Model,
    ns: Option<&Namespace>,
) -> Result<Op, LoadError> {
    if !OPS.contains(&name) {
        return Err(LoadError::UnknownOp { location: format!("{location}.op"), op: name.to_string() });
    }
    let needs = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("{location}.op"), format!("`{name}` needs {what}")))
        }
    };
    let is_k3 = matches!(model, Model::K3(_));
    let mut a = Args::new(args, location.to_string(), ns);
    let op = match name {
        "classify" => {
            a.namespace()?;
            Op::Classify
        }
        "pair" => Op::Pair { left: a.class("left")?, right: a.class("right")? },
        "class" => Op::Class { expr: a.class("expr")? },
        "h0_rr" => {
            needs(is_k3, "a K3 model")?;
            Op::H0Rr { class: a.class("class")? }
        }
        "effective_candidate" => {
            needs(is_k3, "a K3 model")?;
            Op::EffectiveCandidate { class: a.class("class")? }
        }
        "enum" => {
            let square = a.big("square")?;
            let mut constraints = Vec::new();
            if let Some(v) = a.optional("constraints") {
                let here = a.here("constraints");
                let items = v.as_array().ok_or_else(|| invalid(&here, "expected a list"))?;
                for (i, item) in items.iter().enumerate() {
                    let at = format!("{here}[{i}]");
                    let obj = item.as_object().ok_or_else(|| invalid(&at, "expected {class, value}"))?;
                    let mut inner = Args::new(obj, at.clone(), ns);
                    let c = inner.class("class")?;
                    let value = inner.big("value")?;
                    inner.finish()?;
                    constraints.push((c, value));
                }
            }
            let window = match a.optional("window") {
                None => None,
                Some(v) => {
                    let at = a.here("window");
                    let obj = v.as_object().ok_or_else(|| invalid(&at, "expected {class, min, max}"))?;
                    let mut inner = Args::new(obj, at, ns);
                    let w =
                        Window { functional: inner.class("class")?, min: inner.big("min")?, max: inner.big("max")? };
                    inner.finish()?;
                    Some(w)
                }
            };
            a.namespace()?;
            Op::Enum { square, constraints, window }
        }
        "classes_of_degree" => {
            needs(is_k3, "a K3 model")?;
            Op::ClassesOfDegree { square: a.big("square")?, min: a.big("min")?, max: a.big("max")? }
        }
        "minus_two_up_to" => {
            needs(is_k3, "a K3 model")?;
            Op::MinusTwoUpTo { max: a.big("max")? }
        }
        "minus_two_of_degree_zero" => {
            needs(is_k3, "a K3 model")?;
            Op::MinusTwoOfDegreeZero
        }
        "is_negative_definite" => Op::IsNegativeDefinite { classes: a.classes("classes")? },
        "bpf" => {
            needs(is_k3, "a K3 model")?;
            Op::Bpf { class: a.class("class")? }
        }
        "very_ample" => {
            needs(is_k3, "a K3 model")?;
            Op::VeryAmple { class: a.class("class")? }
        }
        "quadric_embedding" => {
            needs(is_k3, "a K3 model")?;
            Op::QuadricEmbedding
        }
        "nef" => {
            needs(is_k3, "a K3 model")?;
            Op::Nef { class: a.class("class")? }
        }
        "movable" => {
            needs(is_k3, "a K3 model")?;
            Op::Movable { class: a.class("class")? }
        }
        "fixed_part_square" => {
            needs(is_k3, "a K3 model")?;
            Op::FixedPartSquare { class: a.class("class")?, curves: a.classes("curves")? }
        }
        "bn_general" => {
            needs(is_k3, "a K3 model")?;
            Op::BnGeneral
        }
        "relative_nef" => {
            needs(is_k3, "a K3 model")?;
            Op::RelativeNef { restriction: a.class("restriction")?, fiber: a.class("fiber")? }
        }
        "adjunction_genus" => {
            needs(model.surface().is_some(), "a surface model")?;
            Op::AdjunctionGenus { class: a.class("class")? }
        }
        "minus_one_classes" => {
            needs(matches!(model, Model::DelPezzo(_)), "a del Pezzo model")?;
            Op::MinusOneClasses
        }
        "nef_del_pezzo" => {
            needs(matches!(model, Model::DelPezzo(_)), "a del Pezzo model")?;
            Op::NefDelPezzo { class: a.class("class")? }
        }
        "restricted_class" => {
            let Model::Ruled(ruled) = model else {
                return Err(invalid(format!("{location}.op"), "`restricted_class` needs a ruled surface model"));
            };
            let here = a.here("expr");
            let v = a.take("expr")?;
            let text = v.as_str().ok_or_else(|| invalid(&here, "expected an expression"))?;
            let expr = Combination::parse(text).map_err(|e| invalid(&here, e))?;
            if let Some(missing) = expr.names().find(|n| !ruled.restrictions().contains_key(*n)) {
                return Err(LoadError::Unbound { location: here, name: missing.to_string() });
            }
            Op::RestrictedClass { expr }
        }
        "blowup_invariants" => {
            Op::BlowupInvariants { kv3: a.big("kv3")?, kv_dot_b: a.big("kv_dot_b")?, genus: a.big("genus")? }
        }
        "dpd_feasible_triples" => Op::DpdFeasibleTriples { d: a.int("d")? },
        "dpd_eliminations" => Op::DpdEliminations { d: a.int("d")? },
        "h0_bidegree" => {
            Op::H0Bidegree { a: a.natural("a")?, b: a.natural("b")?, m: a.natural("m")?, n: a.natural("n")? }
        }
        "quadric_pencil_h12" => Op::QuadricPencilH12 { size: a.natural("size")?, degree: a.natural("degree")? },
        _ => unreachable!("op list and dispatch agree"),
    };
    a.finish()?;
    Ok(op)
}
