use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str]) -> Quiver {
        Quiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: Vec::new(),
        }
    }

    pub fn add_arrow(
        &mut self,
        name: &str,
        source: &str,
        target: &str,
        degree: usize,
    ) -> Result<usize> {
        if self.arrow_index(name).is_some() || self.vertex_index(name).is_some() {
            return Err(Error::Invalid(format!("duplicate name {name}")));
        }
        if degree > 1 {
            return Err(Error::Invalid(format!(
                "arrow {name} must have degree 0 or 1"
            )));
        }
        let s = self
            .vertex_index(source)
            .ok_or_else(|| Error::Invalid(format!("unknown vertex {source}")))?;
        let t = self
            .vertex_index(target)
            .ok_or_else(|| Error::Invalid(format!("unknown vertex {target}")))?;
        self.arrows.push(Arrow {
            name: name.to_string(),
            source: s,
            target: t,
            degree,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn with_arrow(mut self, name: &str, source: &str, target: &str, degree: usize) -> Quiver {
        self.add_arrow(name, source, target, degree)
            .expect("valid arrow");
        self
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate vertex {v}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Invalid(format!("duplicate arrow {}", a.name)));
            }
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::Invalid(format!(
                    "arrow {} has an undeclared endpoint",
                    a.name
                )));
            }
        }
        Ok(())
    }
}

/// A path stored in walk order: `arrows[0]` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.arrows.len(), &self.arrows, self.source).cmp(&(o.arrows.len(), &o.arrows, o.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map(|&a| q.arrows[a].target)
            .unwrap_or(self.source)
    }

    pub fn degree(&self, q: &Quiver) -> usize {
        self.arrows.iter().map(|&a| q.arrows[a].degree).sum()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Apply `self`, then `after`.
    pub fn then(&self, after: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != after.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&after.arrows);
        Some(Path {
            source: self.source,
            arrows,
        })
    }

    /// Label in composition order, e.g. `a*d` for d then a.
    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertices[self.source]);
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A relation Σ c_i p_i = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(name: &str, field: Field, quiver: Quiver) -> Presentation {
        Presentation {
            name: name.to_string(),
            field,
            quiver,
            relations: Vec::new(),
        }
    }

    pub fn add_relation(&mut self, text: &str) -> Result<()> {
        let r = parse_relation(text, &self.quiver, self.field, 0)?;
        self.relations.push(r);
        Ok(())
    }

    pub fn with_relation(mut self, text: &str) -> Presentation {
        self.add_relation(text).expect("valid relation");
        self
    }

    /// Checks that each relation is parallel and degree homogeneous.
    pub fn validate(&self) -> Result<()> {
        self.quiver.validate()?;
        for r in &self.relations {
            let mut key = None;
            for (_, p) in &r.terms {
                let k = (p.source, p.target(&self.quiver), p.degree(&self.quiver));
                match key {
                    None => key = Some(k),
                    Some(k0) if k0 != k => {
                        let text = r
                            .terms
                            .iter()
                            .map(|(_, p)| p.label(&self.quiver))
                            .collect::<Vec<_>>()
                            .join(", ");
                        return Err(Error::InhomogeneousRelation(text));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

fn parse_path(word: &str, q: &Quiver, line: usize) -> Result<Path> {
    let parts: Vec<&str> = word.split('*').map(str::trim).collect();
    if parts.len() == 1 {
        let w = parts[0];
        for prefix in ["e_", "1_"] {
            if let Some(v) = w.strip_prefix(prefix) {
                if let Some(vi) = q.vertex_index(v) {
                    return Ok(Path::trivial(vi));
                }
            }
        }
    }
    let mut arrows = Vec::new();
    for p in parts.iter().rev() {
        let a = q.arrow_index(p).ok_or_else(|| Error::Parse {
            line,
            token: p.to_string(),
            msg: "unknown arrow".into(),
        })?;
        arrows.push(a);
    }
    for w in arrows.windows(2) {
        if q.arrows[w[0]].target != q.arrows[w[1]].source {
            return Err(Error::Parse {
                line,
                token: word.to_string(),
                msg: "arrows do not compose".into(),
            });
        }
    }
    Ok(Path {
        source: q.arrows[arrows[0]].source,
        arrows,
    })
}

fn parse_side(
    text: &str,
    q: &Quiver,
    field: Field,
    line: usize,
    sign: &Scalar,
) -> Result<Vec<(Scalar, Path)>> {
    let mut terms = Vec::new();
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        if ch == '+' || ch == '-' {
            if !cur.trim().is_empty() {
                chunks.push((neg, cur.clone()));
            } else if !chunks.is_empty() {
                return Err(Error::Parse {
                    line,
                    token: text.trim().to_string(),
                    msg: "dangling sign".into(),
                });
            }
            cur.clear();
            neg = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        chunks.push((neg, cur));
    }
    for (neg, chunk) in chunks {
        let chunk = chunk.trim();
        let mut coef = field.one();
        let mut rest = chunk;
        if let Some((first, tail)) = chunk.split_once(char::is_whitespace) {
            if let Some(c) = field.parse_scalar(first) {
                coef = c;
                rest = tail.trim();
            }
        } else if let Some(c) = field.parse_scalar(chunk) {
            if c.is_zero() {
                continue;
            }
            return Err(Error::Parse {
                line,
                token: chunk.to_string(),
                msg: "constant term without a path".into(),
            });
        }
        if rest.is_empty() {
            return Err(Error::Parse {
                line,
                token: chunk.to_string(),
                msg: "empty term".into(),
            });
        }
        if rest.contains(char::is_whitespace) {
            return Err(Error::Parse {
                line,
                token: rest.to_string(),
                msg: "malformed term".into(),
            });
        }
        let path = parse_path(rest, q, line)?;
        let c = if neg { -&coef } else { coef };
        terms.push((&c * sign, path));
    }
    Ok(terms)
}

/// Parses `lhs [= rhs]` into Σ c_i p_i = 0. Paths use composition order: `a*d` means d first.
pub fn parse_relation(text: &str, q: &Quiver, field: Field, line: usize) -> Result<Relation> {
    let sides: Vec<&str> = text.split('=').collect();
    if sides.len() > 2 {
        return Err(Error::Parse {
            line,
            token: text.to_string(),
            msg: "more than one `=`".into(),
        });
    }
    let mut terms = parse_side(sides[0], q, field, line, &field.one())?;
    if sides.len() == 2 {
        terms.extend(parse_side(sides[1], q, field, line, &field.from_i64(-1))?);
    }
    // merge equal paths
    let mut merged: Vec<(Scalar, Path)> = Vec::new();
    for (c, p) in terms {
        if let Some(e) = merged.iter_mut().find(|(_, p2)| *p2 == p) {
            e.0 = &e.0 + &c;
        } else {
            merged.push((c, p));
        }
    }
    merged.retain(|(c, _)| !c.is_zero());
    if merged.is_empty() {
        return Err(Error::Parse {
            line,
            token: text.to_string(),
            msg: "relation is trivial".into(),
        });
    }
    Ok(Relation { terms: merged })
}
