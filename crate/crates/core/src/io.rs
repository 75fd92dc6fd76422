//! The `ainfty/1` JSON presentation format and canonical report output.
//!
//! A file describes one category, either by generators and operation tables or as a
//! full dg subcategory of chain complexes, plus optional functors into other files.
//!
//! ```json
//! {
//!   "schema": "ainfty/1",
//!   "field": "F2",
//!   "objects": ["x", "y"],
//!   "homs": [{"source": "x", "target": "y", "basis": {"-1": ["a"], "0": ["b"]}}],
//!   "ops": [{"inputs": ["a"], "output": {"b": "1"}}],
//!   "units": "generate"
//! }
//! ```
//!
//! `units` is either `"generate"` (adds `1x` for every object together with the unit
//! products) or a map from object names to elements. Degrees are cohomological.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::category::{AInfCategory, Elem, GenId};
use crate::chain::ChainComplex;
use crate::dg::ChFragment;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functor::AInfFunctor;
use crate::linalg::Matrix;

pub const SCHEMA: &str = "ainfty/1";

/// An element as `label -> coefficient`; coefficients are strings (`"1/2"`, `"-1"`).
pub type ElemSpec = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub source: String,
    pub target: String,
    pub basis: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpSpec {
    pub inputs: Vec<String>,
    pub output: ElemSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitSpec {
    Generate(String),
    Given(BTreeMap<String, ElemSpec>),
}

/// A complex given by its nonzero dimensions and differential blocks `d^n: C^n → C^{n+1}`
/// as row-major matrices of scalars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub name: String,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub d: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub name: String,
    pub objects: BTreeMap<String, String>,
    pub components: Vec<OpSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub schema: String,
    pub field: String,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: Vec<HomSpec>,
    #[serde(default)]
    pub ops: Vec<OpSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complexes: Vec<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorSpec>,
}

/// A loaded file: the category and the functor declarations, still unresolved because
/// their targets live in other files.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub category: AInfCategory,
    pub functors: Vec<FunctorSpec>,
}

pub fn parse(text: &str) -> Result<CategoryFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file = parse(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })?;
    load(&file, None)
}

/// Builds the category. `field` overrides the declared field.
pub fn load(file: &CategoryFile, field: Option<Field>) -> Result<Loaded> {
    if file.schema != SCHEMA {
        return Err(Error::Invalid(format!("schema: expected `{SCHEMA}`, found `{}`", file.schema)));
    }
    let field = match field {
        Some(f) => f,
        None => file.field.parse().map_err(|e: Error| Error::Invalid(format!("field: {e}")))?,
    };
    let category = if file.complexes.is_empty() {
        table_category(file, field)?
    } else {
        if !file.homs.is_empty() || !file.ops.is_empty() || file.units.is_some() {
            return Err(Error::Invalid("complexes: a file of complexes carries no homs, ops or units".into()));
        }
        complex_category(file, field)?
    };
    Ok(Loaded { category, functors: file.functors.clone() })
}

fn parse_degree(text: &str, locus: &str) -> Result<i32> {
    text.trim().parse().map_err(|_| Error::Invalid(format!("{locus}: `{text}` is not a degree")))
}

fn gen_id(a: &AInfCategory, label: &str, locus: &str) -> Result<GenId> {
    a.generator_id(label).ok_or_else(|| Error::UnknownLabel(format!("{label}` at `{locus}")))
}

fn elem(a: &AInfCategory, spec: &ElemSpec, locus: &str) -> Result<Elem> {
    let field = a.field();
    let mut e = Elem::zero();
    for (label, c) in spec {
        let g = gen_id(a, label, locus)?;
        let c = field.parse_scalar(c).map_err(|err| Error::Invalid(format!("{locus}.{label}: {err}")))?;
        e.add_term(g, &c);
    }
    Ok(e)
}

fn table_category(file: &CategoryFile, field: Field) -> Result<AInfCategory> {
    let names: Vec<&str> = file.objects.iter().map(String::as_str).collect();
    let mut a = AInfCategory::new(field, &names);
    if a.objects().len() != names.len() {
        return Err(Error::Invalid("objects: duplicate names".into()));
    }
    let obj = |a: &AInfCategory, name: &str, locus: &str| {
        a.object_id(name).ok_or_else(|| Error::UnknownLabel(format!("{name}` at `{locus}")))
    };
    for (i, h) in file.homs.iter().enumerate() {
        let locus = format!("homs[{i}]");
        let x = obj(&a, &h.source, &locus)?;
        let y = obj(&a, &h.target, &locus)?;
        for (deg, labels) in &h.basis {
            let d = parse_degree(deg, &locus)?;
            for label in labels {
                a.add_generator(label, x, y, d).map_err(|e| Error::Invalid(format!("{locus}: {e}")))?;
            }
        }
    }
    match &file.units {
        None => {}
        Some(UnitSpec::Generate(s)) if s == "generate" => {
            let units = (0..a.objects().len())
                .map(|x| {
                    let label = format!("1{}", a.objects()[x]);
                    a.add_generator(&label, x, x, 0).map(|g| Elem::basis(g, field))
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Invalid(format!("units: {e}")))?;
            a.set_units(units)?;
            a.insert_unit_products()?;
        }
        Some(UnitSpec::Generate(s)) => return Err(Error::Invalid(format!("units: unknown directive `{s}`"))),
        Some(UnitSpec::Given(map)) => {
            let mut units = Vec::new();
            for x in a.objects().to_vec() {
                let spec = map.get(&x).ok_or_else(|| Error::Invalid(format!("units: object `{x}` has no unit")))?;
                units.push(elem(&a, spec, &format!("units.{x}"))?);
            }
            if map.keys().any(|k| a.object_id(k).is_none()) {
                return Err(Error::Invalid("units: entry for an unknown object".into()));
            }
            a.set_units(units).map_err(|e| Error::Invalid(format!("units: {e}")))?;
        }
    }
    for (i, op) in file.ops.iter().enumerate() {
        let locus = format!("ops[{i}]");
        let inputs = op
            .inputs
            .iter()
            .enumerate()
            .map(|(j, l)| gen_id(&a, l, &format!("{locus}.inputs[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let out = elem(&a, &op.output, &format!("{locus}.output"))?;
        a.set_op(&inputs, out).map_err(|e| Error::Invalid(format!("{locus}: {e}")))?;
    }
    Ok(a)
}

fn complex_category(file: &CategoryFile, field: Field) -> Result<AInfCategory> {
    let mut objects = Vec::new();
    for (i, c) in file.complexes.iter().enumerate() {
        let locus = format!("complexes[{i}]");
        let mut dims = Vec::new();
        for (deg, &n) in &c.dims {
            dims.push((parse_degree(deg, &locus)?, n));
        }
        dims.sort();
        let mut d = BTreeMap::new();
        for (deg, rows) in &c.d {
            let k = parse_degree(deg, &format!("{locus}.d"))?;
            let dim = |n: i32| dims.iter().find(|p| p.0 == n).map_or(0, |p| p.1);
            let (r, cols) = (dim(k + 1), dim(k));
            if rows.len() != r || rows.iter().any(|row| row.len() != cols) {
                return Err(Error::Invalid(format!("{locus}.d.{deg}: expected a {r}x{cols} matrix")));
            }
            let mut m = Matrix::zeros(field, r, cols);
            for (a, row) in rows.iter().enumerate() {
                for (b, x) in row.iter().enumerate() {
                    let v = field.parse_scalar(x).map_err(|e| Error::Invalid(format!("{locus}.d.{deg}: {e}")))?;
                    m.set(a, b, v);
                }
            }
            d.insert(k, m);
        }
        let cx = ChainComplex::from_dims(field, &c.name.to_lowercase(), &dims, d)
            .map_err(|e| Error::Invalid(format!("{locus}: {e}")))?;
        objects.push((c.name.clone(), cx));
    }
    if !file.objects.is_empty() && file.objects != objects.iter().map(|o| o.0.clone()).collect::<Vec<_>>() {
        return Err(Error::Invalid("objects: must list the complexes in order".into()));
    }
    let named: Vec<(&str, ChainComplex)> = objects.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
    Ok(ChFragment::new(field, &named)?.cat)
}

/// Resolves a functor declaration of `source` against `target`.
pub fn functor(spec: &FunctorSpec, source: &AInfCategory, target: &AInfCategory) -> Result<AInfFunctor> {
    let locus = format!("functors.{}", spec.name);
    let mut obj_map = Vec::new();
    for x in source.objects() {
        let y = spec.objects.get(x).ok_or_else(|| Error::Invalid(format!("{locus}.objects: `{x}` is not mapped")))?;
        obj_map.push(target.object_id(y).ok_or_else(|| Error::UnknownLabel(format!("{y}` at `{locus}.objects")))?);
    }
    let mut f = AInfFunctor::new(source.clone(), target.clone(), obj_map)?;
    for (i, c) in spec.components.iter().enumerate() {
        let l = format!("{locus}.components[{i}]");
        let inputs = c.inputs.iter().map(|g| gen_id(source, g, &l)).collect::<Result<Vec<_>>>()?;
        let value = elem(target, &c.output, &format!("{l}.output"))?;
        f.set_component(&inputs, value).map_err(|e| Error::Invalid(format!("{l}: {e}")))?;
    }
    Ok(f)
}

pub fn functor_named(loaded: &Loaded, name: &str, target: &AInfCategory) -> Result<AInfFunctor> {
    let spec = loaded
        .functors
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownLabel(format!("{name}` at `functors")))?;
    functor(spec, &loaded.category, target)
}

fn elem_spec(a: &AInfCategory, e: &Elem) -> ElemSpec {
    e.terms().map(|(g, c)| (a.generator(g).label.clone(), c.to_string())).collect()
}

/// Table presentation of any category; `load(&export(a), None)` rebuilds it.
pub fn export(a: &AInfCategory) -> CategoryFile {
    let field = match a.field() {
        Field::Rational => "Q".to_string(),
        Field::Prime(p) => format!("F{p}"),
    };
    let mut homs = Vec::new();
    for x in 0..a.objects().len() {
        for y in 0..a.objects().len() {
            let gens = a.hom(x, y);
            if gens.is_empty() {
                continue;
            }
            let mut basis: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for g in gens {
                let gen = a.generator(g);
                basis.entry(gen.degree.to_string()).or_default().push(gen.label.clone());
            }
            homs.push(HomSpec { source: a.objects()[x].clone(), target: a.objects()[y].clone(), basis });
        }
    }
    let mut ops: Vec<OpSpec> = a
        .ops()
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(t, v)| OpSpec { inputs: a.format_tuple(t), output: elem_spec(a, v) })
        .collect();
    // generator ids depend on declaration order; labels do not
    ops.sort_by(|p, q| (p.inputs.len(), &p.inputs).cmp(&(q.inputs.len(), &q.inputs)));
    let units = a.units().map(|us| {
        UnitSpec::Given(a.objects().iter().cloned().zip(us.iter().map(|u| elem_spec(a, u))).collect())
    });
    CategoryFile {
        schema: SCHEMA.into(),
        field,
        objects: a.objects().to_vec(),
        homs,
        ops,
        units,
        complexes: Vec::new(),
        functors: Vec::new(),
    }
}

/// A command report. Serialized with sorted keys, so equal reports print identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    /// Free-form output shown verbatim in text mode.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub data: Value,
    /// Present on failure: the first offending tuple, face or degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { schema: SCHEMA.into(), command: command.into(), config: BTreeMap::new(), checks: Vec::new(), lines: Vec::new() }
    }

    pub fn config(&mut self, key: &str, value: impl Serialize) {
        self.config.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn check(&mut self, name: &str, passed: bool, data: impl Serialize, witness: Option<Value>) {
        let data = serde_json::to_value(data).expect("serializable");
        self.checks.push(Check { name: name.into(), passed, data, witness: if passed { None } else { witness } });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn canonical(&self) -> String {
        canonical(&serde_json::to_value(self).expect("serializable"))
    }
}

pub fn canonical(v: &Value) -> String {
    // serde_json's default map is ordered by key, so re-serializing a Value sorts it
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
