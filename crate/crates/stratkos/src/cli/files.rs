//! `.alg` and `.ei` files (JSON).

use crate::algebra::{build_from_presentation, Algebra, BasisElem, Presentation, Quiver, Sparse};
use crate::eicat::{free_ei_category, Biset, EIArrow, EICategory, EIQuiver, FiniteGroup};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::Path;

pub const DEFAULT_MAX_DIM: usize = 2000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub degree: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub label: String,
    pub source: String,
    pub target: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    /// (basis label, coefficient)
    pub terms: Vec<(String, String)>,
}

/// Either a presentation (arrows + relations) or explicit structure constants (basis + products).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpecFile {
    pub name: String,
    pub field: String,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<ProductSpec>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        token: String::new(),
        msg: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_field(s: &str) -> Result<Field> {
    Field::parse(s).map_err(|m| Error::Parse {
        line: 0,
        token: s.to_string(),
        msg: m,
    })
}

/// First line of `text` containing `needle`, 1-based; 0 when absent.
fn line_of(text: &str, needle: &str) -> usize {
    text.lines()
        .position(|l| l.contains(needle))
        .map(|i| i + 1)
        .unwrap_or(0)
}

impl AlgebraSpecFile {
    pub fn parse(text: &str) -> Result<AlgebraSpecFile> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        self.to_algebra_in(None)
    }

    /// Builds the algebra; `source` is the file text, used to place relation errors on a line.
    pub fn to_algebra_in(&self, source: Option<&str>) -> Result<Algebra> {
        let field = parse_field(&self.field)?;
        if self.basis.is_some() {
            return self.structure_algebra(field);
        }
        let names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let mut q = Quiver::new(&names);
        for a in &self.arrows {
            q.add_arrow(&a.name, &a.from, &a.to, a.degree)
                .map_err(|e| match e {
                    Error::Parse { token, msg, .. } => Error::Parse {
                        line: source
                            .map(|s| line_of(s, &format!("\"{}\"", a.name)))
                            .unwrap_or(0),
                        token,
                        msg,
                    },
                    other => other,
                })?;
        }
        let mut p = Presentation::new(&self.name, field, q);
        for r in &self.relations {
            let line = source.map(|s| line_of(s, r)).unwrap_or(0);
            p.add_relation(r).map_err(|e| match e {
                Error::Parse { token, msg, .. } => Error::Parse { line, token, msg },
                other => other,
            })?;
        }
        build_from_presentation(&p, self.max_dim.unwrap_or(DEFAULT_MAX_DIM))
    }

    fn structure_algebra(&self, field: Field) -> Result<Algebra> {
        let basis_spec = self.basis.as_ref().expect("structure mode");
        let vpos = |v: &str| {
            self.vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    token: v.to_string(),
                    msg: "unknown vertex".into(),
                })
        };
        let mut basis = Vec::new();
        for b in basis_spec {
            basis.push(BasisElem {
                label: b.label.clone(),
                source: vpos(&b.source)?,
                target: vpos(&b.target)?,
                degree: b.degree,
            });
        }
        let lpos: HashMap<&str, usize> = basis_spec
            .iter()
            .enumerate()
            .map(|(i, b)| (b.label.as_str(), i))
            .collect();
        let lookup = |l: &str| {
            lpos.get(l).copied().ok_or_else(|| Error::Parse {
                line: 0,
                token: l.to_string(),
                msg: "unknown basis label".into(),
            })
        };
        let n = basis.len();
        let mut mult: Vec<Vec<Sparse>> = vec![vec![Vec::new(); n]; n];
        for p in self.products.iter().flatten() {
            let (i, j) = (lookup(&p.left)?, lookup(&p.right)?);
            let mut sp = Vec::new();
            for (l, c) in &p.terms {
                let c = field.parse_scalar(c).ok_or_else(|| Error::Parse {
                    line: 0,
                    token: c.clone(),
                    msg: "bad coefficient".into(),
                })?;
                if !c.is_zero() {
                    sp.push((lookup(l)?, c));
                }
            }
            mult[i][j] = sp;
        }
        let idem = self
            .idempotents
            .as_ref()
            .ok_or_else(|| Error::Parse {
                line: 0,
                token: "idempotents".into(),
                msg: "missing field".into(),
            })?
            .iter()
            .map(|l| lookup(l))
            .collect::<Result<Vec<_>>>()?;
        Algebra::from_structure(&self.name, field, self.vertices.clone(), basis, mult, idem)
    }

    /// Structure-constant form of an algebra.
    pub fn from_algebra(a: &Algebra) -> AlgebraSpecFile {
        let basis: Vec<BasisSpec> = a
            .basis
            .iter()
            .map(|b| BasisSpec {
                label: b.label.clone(),
                source: a.vertices[b.source].clone(),
                target: a.vertices[b.target].clone(),
                degree: b.degree,
            })
            .collect();
        let mut products = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let p = a.product(i, j);
                if !p.is_empty() {
                    products.push(ProductSpec {
                        left: a.basis[i].label.clone(),
                        right: a.basis[j].label.clone(),
                        terms: p
                            .iter()
                            .map(|(k, c)| (a.basis[*k].label.clone(), c.to_string()))
                            .collect(),
                    });
                }
            }
        }
        AlgebraSpecFile {
            name: a.name.clone(),
            field: a.field.to_string(),
            vertices: a.vertices.clone(),
            basis: Some(basis),
            idempotents: Some(
                a.idempotents
                    .iter()
                    .map(|&i| a.basis[i].label.clone())
                    .collect(),
            ),
            products: Some(products),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn load_algebra(path: &Path) -> Result<Algebra> {
    let text = read(path)?;
    AlgebraSpecFile::parse(&text)?.to_algebra_in(Some(&text))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// "trivial" or "C{n}"
    Named(String),
    Table(GroupTable),
}

impl GroupSpec {
    pub fn to_group(&self, generator: Option<&str>) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Named(s) if s == "trivial" => Ok(FiniteGroup::trivial()),
            GroupSpec::Named(s) => {
                let n: usize = s
                    .strip_prefix('C')
                    .and_then(|t| t.parse().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::Parse {
                        line: 0,
                        token: s.clone(),
                        msg: "expected trivial or C<n>".into(),
                    })?;
                Ok(FiniteGroup::cyclic(n, generator.unwrap_or("g")))
            }
            GroupSpec::Table(t) => FiniteGroup::from_table(t.elements.clone(), t.table.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub name: String,
    #[serde(default = "trivial_group")]
    pub group: GroupSpec,
    /// generator label for cyclic groups
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

fn trivial_group() -> GroupSpec {
    GroupSpec::Named("trivial".into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EIArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
    /// biset elements; a singleton named after the arrow when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    /// left[h] = permutation of the elements by h ∈ Aut(to); identity when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<Vec<usize>>>,
    /// right[g] = permutation of the elements by g ∈ Aut(from); identity when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EISpecFile {
    pub name: String,
    pub objects: Vec<ObjectSpec>,
    pub arrows: Vec<EIArrowSpec>,
    /// morphisms removed from the free category to form a subcategory
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub remove: Vec<String>,
}

impl EISpecFile {
    pub fn parse(text: &str) -> Result<EISpecFile> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_quiver(&self) -> Result<EIQuiver> {
        let objects: Vec<String> = self.objects.iter().map(|o| o.name.clone()).collect();
        let groups = self
            .objects
            .iter()
            .map(|o| o.group.to_group(o.generator.as_deref()))
            .collect::<Result<Vec<_>>>()?;
        let opos = |v: &str| {
            objects
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    token: v.to_string(),
                    msg: "unknown object".into(),
                })
        };
        let mut arrows = Vec::new();
        for a in &self.arrows {
            let (s, t) = (opos(&a.from)?, opos(&a.to)?);
            let labels = a.elements.clone().unwrap_or_else(|| vec![a.name.clone()]);
            let n = labels.len();
            let id: Vec<usize> = (0..n).collect();
            let left = a
                .left
                .clone()
                .unwrap_or_else(|| vec![id.clone(); groups[t].order()]);
            let right = a
                .right
                .clone()
                .unwrap_or_else(|| vec![id.clone(); groups[s].order()]);
            arrows.push(EIArrow {
                name: a.name.clone(),
                source: s,
                target: t,
                biset: Biset {
                    labels,
                    left,
                    right,
                },
            });
        }
        let q = EIQuiver {
            objects,
            groups,
            arrows,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn to_category(&self) -> Result<EICategory> {
        let c = free_ei_category(&self.to_quiver()?, &self.name)?;
        if self.remove.is_empty() {
            return Ok(c);
        }
        let idx = self
            .remove
            .iter()
            .map(|l| {
                c.index_of(l).ok_or_else(|| Error::Parse {
                    line: 0,
                    token: l.clone(),
                    msg: "unknown morphism".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        c.without(&idx)
    }
}

pub fn load_ei(path: &Path) -> Result<EICategory> {
    let text = read(path)?;
    EISpecFile::parse(&text)?.to_category()
}
