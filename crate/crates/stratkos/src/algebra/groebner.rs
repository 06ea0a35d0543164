//! Overlap completion of relations and normal-word bases.

use super::presentation::{Path, Presentation, Quiver};
use super::{Algebra, BasisElem, Sparse};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

type Poly = BTreeMap<Path, Scalar>;

#[derive(Clone, Debug)]
struct Rule {
    lhs: Path,
    rhs: Poly,
}

struct Rewriter<'a> {
    q: &'a Quiver,
    field: Field,
    rules: Vec<Rule>,
}

fn find_sub(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

fn add_term(p: &mut Poly, w: Path, c: Scalar) {
    let e = p.entry(w.clone()).or_insert_with(|| c.field().zero());
    *e = &*e + &c;
    if e.is_zero() {
        p.remove(&w);
    }
}

impl<'a> Rewriter<'a> {
    fn rule_for(&self, w: &Path) -> Option<(usize, usize)> {
        for (ri, r) in self.rules.iter().enumerate() {
            if r.lhs.arrows.is_empty() {
                if w.arrows.is_empty() && w.source == r.lhs.source {
                    return Some((ri, 0));
                }
                continue;
            }
            if let Some(pos) = find_sub(&w.arrows, &r.lhs.arrows) {
                return Some((ri, pos));
            }
        }
        None
    }

    fn is_normal(&self, w: &Path) -> bool {
        self.rule_for(w).is_none()
    }

    fn reduce(&self, p: &Poly) -> Poly {
        let mut work = p.clone();
        let mut out = Poly::new();
        while let Some((w, c)) = work.pop_last() {
            match self.rule_for(&w) {
                None => add_term(&mut out, w, c),
                Some((ri, pos)) => {
                    let r = &self.rules[ri];
                    let pre = &w.arrows[..pos];
                    let post = &w.arrows[pos + r.lhs.arrows.len()..];
                    for (rw, rc) in &r.rhs {
                        let mut arrows = pre.to_vec();
                        arrows.extend_from_slice(&rw.arrows);
                        arrows.extend_from_slice(post);
                        let source = if pre.is_empty() { rw.source } else { w.source };
                        add_term(&mut work, Path { source, arrows }, &c * rc);
                    }
                }
            }
        }
        out
    }
}

/// Makes a nonzero polynomial into a rule with monic leading word.
fn make_rule(p: Poly) -> Option<Rule> {
    let (lead, lc) = p.last_key_value().map(|(w, c)| (w.clone(), c.clone()))?;
    let inv = lc.inv().expect("nonzero leading coefficient");
    let mut rhs = Poly::new();
    for (w, c) in p {
        if w != lead {
            add_term(&mut rhs, w, -&(&c * &inv));
        }
    }
    Some(Rule { lhs: lead, rhs })
}

impl<'a> Rewriter<'a> {
    /// Polynomials whose vanishing is forced by overlaps of rules i and j.
    fn overlaps(&self, i: usize, j: usize) -> Vec<Poly> {
        let (u, v) = (&self.rules[i], &self.rules[j]);
        let (ua, va) = (&u.lhs.arrows, &v.lhs.arrows);
        let mut out = Vec::new();
        if ua.is_empty() || va.is_empty() {
            return out;
        }
        // u = p s, v = s q with s nonempty and p, q nonempty
        for k in 1..ua.len().min(va.len()) {
            if ua[ua.len() - k..] != va[..k] {
                continue;
            }
            let p = &ua[..ua.len() - k];
            let qq = &va[k..];
            let mut left = Poly::new();
            for (w, c) in &u.rhs {
                let mut arrows = w.arrows.clone();
                arrows.extend_from_slice(qq);
                add_term(
                    &mut left,
                    Path {
                        source: w.source,
                        arrows,
                    },
                    c.clone(),
                );
            }
            for (w, c) in &v.rhs {
                let mut arrows = p.to_vec();
                arrows.extend_from_slice(&w.arrows);
                add_term(
                    &mut left,
                    Path {
                        source: u.lhs.source,
                        arrows,
                    },
                    -c,
                );
            }
            out.push(left);
        }
        out
    }

    fn interreduce(&mut self) {
        loop {
            let mut changed = false;
            for i in 0..self.rules.len() {
                let lhs = self.rules[i].lhs.clone();
                let others = Rewriter {
                    q: self.q,
                    field: self.field,
                    rules: self
                        .rules
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, r)| r.clone())
                        .collect(),
                };
                if !others.is_normal(&lhs) {
                    let mut p = self.rules[i].rhs.clone();
                    for v in p.values_mut() {
                        *v = -&*v;
                    }
                    add_term(&mut p, lhs, self.field.one());
                    let red = others.reduce(&p);
                    let mut rules = others.rules;
                    if let Some(r) = make_rule(red) {
                        rules.push(r);
                    }
                    self.rules = rules;
                    changed = true;
                    break;
                }
                let rhs = self.rules[i].rhs.clone();
                let red = others.reduce(&rhs);
                if red != rhs {
                    self.rules[i].rhs = red;
                }
            }
            if !changed {
                return;
            }
        }
    }
}

/// Completes the relations and returns the algebra spanned by normal words.
pub fn build_from_presentation(p: &Presentation, max_dim: usize) -> Result<Algebra> {
    p.validate()?;
    let q = &p.quiver;
    let mut rw = Rewriter {
        q,
        field: p.field,
        rules: Vec::new(),
    };
    let max_word = max_dim + 1;
    let mut pending: VecDeque<Poly> = p
        .relations
        .iter()
        .map(|r| {
            let mut poly = Poly::new();
            for (c, w) in &r.terms {
                add_term(&mut poly, w.clone(), c.clone());
            }
            poly
        })
        .collect();
    let mut rounds = 0usize;
    let round_cap = 20_000usize;
    loop {
        while let Some(poly) = pending.pop_front() {
            rounds += 1;
            if rounds > round_cap {
                return Err(Error::NonConfluent(format!(
                    "more than {round_cap} reductions"
                )));
            }
            let red = rw.reduce(&poly);
            if let Some(rule) = make_rule(red) {
                if rule.lhs.len() > 2 * max_word {
                    return Err(Error::NonConfluent(format!(
                        "rule with leading word {} exceeds the length bound",
                        rule.lhs.label(q)
                    )));
                }
                rw.rules.push(rule);
                rw.interreduce();
            }
        }
        // all overlaps
        let n = rw.rules.len();
        let mut found = false;
        'outer: for i in 0..n {
            for j in 0..n {
                for s in rw.overlaps(i, j) {
                    let red = rw.reduce(&s);
                    if !red.is_empty() {
                        pending.push_back(red);
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        if !found {
            break;
        }
    }
    // enumerate normal words by extension
    let mut words: Vec<Path> = Vec::new();
    let mut queue: VecDeque<Path> = VecDeque::new();
    for v in 0..q.vertices.len() {
        let t = Path::trivial(v);
        if rw.is_normal(&t) {
            queue.push_back(t);
        }
    }
    let mut seen = BTreeSet::new();
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        words.push(w.clone());
        if words.len() > max_dim {
            return Err(Error::NotFiniteDimensional(max_dim));
        }
        let t = w.target(q);
        for (ai, a) in q.arrows.iter().enumerate() {
            if a.source != t {
                continue;
            }
            let mut arrows = w.arrows.clone();
            arrows.push(ai);
            let nw = Path {
                source: w.source,
                arrows,
            };
            if rw.is_normal(&nw) {
                queue.push_back(nw);
            }
        }
    }
    words.sort();
    // idempotents first in vertex order
    let mut ordered: Vec<Path> = Vec::new();
    for v in 0..q.vertices.len() {
        let t = Path::trivial(v);
        if !words.contains(&t) {
            return Err(Error::Invalid(format!(
                "trivial path at {} was killed by the relations",
                q.vertices[v]
            )));
        }
        ordered.push(t);
    }
    ordered.extend(words.into_iter().filter(|w| !w.arrows.is_empty()));
    let index: BTreeMap<Path, usize> = ordered
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let basis: Vec<BasisElem> = ordered
        .iter()
        .map(|w| BasisElem {
            label: w.label(q),
            source: w.source,
            target: w.target(q),
            degree: w.degree(q),
        })
        .collect();
    let n = ordered.len();
    let mut mult: Vec<Vec<Sparse>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // b_i · b_j: walk b_j then b_i
            if let Some(cat) = ordered[j].then(&ordered[i], q) {
                let mut poly = Poly::new();
                add_term(&mut poly, cat, p.field.one());
                let red = rw.reduce(&poly);
                mult[i][j] = red.into_iter().map(|(w, c)| (index[&w], c)).collect();
            }
        }
    }
    let idem = (0..q.vertices.len()).collect();
    let mut a = Algebra::from_structure(&p.name, p.field, q.vertices.clone(), basis, mult, idem)?;
    a.set_presentation_data(q.clone(), ordered.into_iter().map(|w| w.arrows).collect());
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentation::Quiver;

    #[test]
    fn a2_no_relations() {
        let q = Quiver::new(&["x", "y"]).with_arrow("a", "x", "y", 1);
        let p = Presentation::new("A2", Field::Rationals, q);
        let a = build_from_presentation(&p, 50).unwrap();
        assert_eq!(a.dim(), 3);
        let labels: Vec<_> = a.basis.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["e_x", "e_y", "a"]);
    }

    #[test]
    fn loop_without_relation_is_infinite() {
        let q = Quiver::new(&["x"]).with_arrow("t", "x", "x", 1);
        let p = Presentation::new("kt", Field::Rationals, q);
        assert_eq!(
            build_from_presentation(&p, 10).unwrap_err(),
            Error::NotFiniteDimensional(10)
        );
    }

    #[test]
    fn overlap_completion() {
        // a*a = b*b, a*b = 0 on one vertex: completion needed
        let q = Quiver::new(&["x"])
            .with_arrow("a", "x", "x", 1)
            .with_arrow("b", "x", "x", 1);
        let p = Presentation::new("t", Field::Rationals, q)
            .with_relation("a*a = b*b")
            .with_relation("a*b");
        let a = build_from_presentation(&p, 50).unwrap();
        assert!(a.check_associativity().is_none());
        // basis: e, a, b, b*a, b*b, and nothing of length 3
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let q = Quiver::new(&["x"])
            .with_arrow("a", "x", "x", 1)
            .with_arrow("d", "x", "x", 0);
        let p = Presentation::new("t", Field::Rationals, q).with_relation("a*a = d");
        assert!(matches!(
            build_from_presentation(&p, 50),
            Err(Error::InhomogeneousRelation(_))
        ));
    }
}
