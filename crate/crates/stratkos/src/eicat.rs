//! Finite EI quivers and categories: free EI categories from biset products, unfactorizable
//! morphisms, the UFP, length gradings, free EI covers and category algebras.

use crate::algebra::{is_directed, Algebra, BasisElem, Sparse};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::homological::{
    ext_dims, is_koszul_algebra, is_quasi_koszul_algebra, minimal_resolution, DEFAULT_BOUND,
};
use crate::repmod::degree_zero_module;
use crate::stratification::{is_standardly_stratified, LinearOrder};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub labels: Vec<String>,
    /// table[a][b] = a·b
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteGroup {
    pub fn trivial() -> FiniteGroup {
        FiniteGroup {
            labels: vec!["1".into()],
            table: vec![vec![0]],
            identity: 0,
        }
    }

    /// Z/n with elements 1, g, g^2, …
    pub fn cyclic(n: usize, gen: &str) -> FiniteGroup {
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => gen.to_string(),
                _ => format!("{gen}^{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup {
            labels,
            table,
            identity: 0,
        }
    }

    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0
            || table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::Invalid("group table has the wrong shape".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let g = FiniteGroup {
            labels,
            table,
            identity,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if !(0..n).any(|b| self.table[a][b] == self.identity) {
                return Err(Error::Invalid(format!(
                    "element {} has no inverse",
                    self.labels[a]
                )));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Invalid("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group")
    }
}

/// An (H, G)-biset given by permutation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biset {
    pub labels: Vec<String>,
    /// left[h][x] = h·x
    pub left: Vec<Vec<usize>>,
    /// right[g][x] = x·g
    pub right: Vec<Vec<usize>>,
}

impl Biset {
    pub fn singleton(label: &str, h: &FiniteGroup, g: &FiniteGroup) -> Biset {
        Biset {
            labels: vec![label.to_string()],
            left: vec![vec![0]; h.order()],
            right: vec![vec![0]; g.order()],
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn validate(&self, h: &FiniteGroup, g: &FiniteGroup) -> Result<()> {
        let n = self.size();
        let perm = |p: &Vec<usize>| {
            let mut seen = vec![false; n];
            p.len() == n
                && p.iter()
                    .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if self.left.len() != h.order() || self.right.len() != g.order() {
            return Err(Error::Invalid(
                "biset action tables have the wrong number of rows".into(),
            ));
        }
        if !self.left.iter().all(perm) || !self.right.iter().all(perm) {
            return Err(Error::Invalid("biset actions must be permutations".into()));
        }
        for x in 0..n {
            if self.left[h.identity][x] != x || self.right[g.identity][x] != x {
                return Err(Error::Invalid(
                    "identity acts nontrivially on a biset".into(),
                ));
            }
            for a in 0..h.order() {
                for b in 0..h.order() {
                    if self.left[h.mul(a, b)][x] != self.left[a][self.left[b][x]] {
                        return Err(Error::Invalid("left biset action is not an action".into()));
                    }
                }
            }
            for a in 0..g.order() {
                for b in 0..g.order() {
                    if self.right[g.mul(a, b)][x] != self.right[b][self.right[a][x]] {
                        return Err(Error::Invalid("right biset action is not an action".into()));
                    }
                }
                for c in 0..h.order() {
                    if self.right[a][self.left[c][x]] != self.left[c][self.right[a][x]] {
                        return Err(Error::Invalid("biset actions do not commute".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EIArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// an (Aut(target), Aut(source))-biset
    pub biset: Biset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EIQuiver {
    pub objects: Vec<String>,
    pub groups: Vec<FiniteGroup>,
    pub arrows: Vec<EIArrow>,
}

impl EIQuiver {
    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        if self.groups.len() != n {
            return Err(Error::Invalid("one group per object is required".into()));
        }
        for g in &self.groups {
            g.validate()?;
        }
        for a in &self.arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::Invalid(format!(
                    "arrow {} has an unknown endpoint",
                    a.name
                )));
            }
            if a.source == a.target {
                return Err(Error::Invalid(format!("arrow {} is a loop", a.name)));
            }
            a.biset
                .validate(&self.groups[a.target], &self.groups[a.source])?;
        }
        if topological_order(n, self.arrows.iter().map(|a| (a.source, a.target))).is_none() {
            return Err(Error::Invalid("EI quiver has an oriented cycle".into()));
        }
        Ok(())
    }

    /// Directed paths of positive length, arrows in application order.
    fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        while let Some(p) = stack.pop() {
            let end = self.arrows[*p.last().unwrap()].target;
            for (b, arr) in self.arrows.iter().enumerate() {
                if arr.source == end {
                    let mut q = p.clone();
                    q.push(b);
                    stack.push(q);
                }
            }
            out.push(p);
        }
        out
    }
}

fn topological_order(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Option<Vec<usize>> {
    let mut adj = vec![vec![]; n];
    let mut indeg = vec![0; n];
    for (s, t) in edges {
        adj[s].push(t);
        indeg[t] += 1;
    }
    let mut out = Vec::new();
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        out.push(v);
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    (out.len() == n).then_some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EICategory {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// comp[f][g] = f∘g when source(f) = target(g)
    comp: Vec<Vec<Option<usize>>>,
    pub identities: Vec<usize>,
}

impl EICategory {
    /// Assembles and validates a category from a composition table.
    pub fn new(
        name: &str,
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        comp: Vec<Vec<Option<usize>>>,
        identities: Vec<usize>,
    ) -> Result<EICategory> {
        let c = EICategory {
            name: name.to_string(),
            objects,
            morphisms,
            comp,
            identities,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f][g]
    }

    /// Endomorphisms are the isomorphisms in a skeletal EI category.
    pub fn is_iso(&self, f: usize) -> bool {
        self.morphisms[f].source == self.morphisms[f].target
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&f| self.morphisms[f].source == x && self.morphisms[f].target == y)
            .collect()
    }

    pub fn aut(&self, x: usize) -> Vec<usize> {
        self.hom(x, x)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.label == label)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let no = self.objects.len();
        if self.comp.len() != n
            || self.comp.iter().any(|r| r.len() != n)
            || self.identities.len() != no
        {
            return Err(Error::Invalid(
                "composition table has the wrong shape".into(),
            ));
        }
        let m = &self.morphisms;
        for (x, &id) in self.identities.iter().enumerate() {
            if m[id].source != x || m[id].target != x {
                return Err(Error::Invalid(format!(
                    "identity of {} has the wrong endpoints",
                    self.objects[x]
                )));
            }
        }
        for f in 0..n {
            if m[f].source >= no || m[f].target >= no {
                return Err(Error::Invalid(format!(
                    "morphism {} has an unknown endpoint",
                    m[f].label
                )));
            }
            for g in 0..n {
                let composable = m[f].source == m[g].target;
                match self.comp[f][g] {
                    None if composable => {
                        return Err(Error::Invalid(format!(
                            "{} ∘ {} is missing",
                            m[f].label, m[g].label
                        )))
                    }
                    Some(_) if !composable => {
                        return Err(Error::Invalid(format!(
                            "{} ∘ {} is not composable",
                            m[f].label, m[g].label
                        )))
                    }
                    Some(h)
                        if h >= n || m[h].source != m[g].source || m[h].target != m[f].target =>
                    {
                        return Err(Error::Invalid(format!(
                            "{} ∘ {} has the wrong endpoints",
                            m[f].label, m[g].label
                        )))
                    }
                    _ => {}
                }
            }
            if self.comp[self.identities[m[f].target]][f] != Some(f)
                || self.comp[f][self.identities[m[f].source]] != Some(f)
            {
                return Err(Error::Invalid(format!(
                    "identity law fails at {}",
                    m[f].label
                )));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(fg) = self.comp[f][g] else { continue };
                for h in 0..n {
                    let Some(gh) = self.comp[g][h] else { continue };
                    if self.comp[fg][h] != self.comp[f][gh] {
                        return Err(Error::Invalid(format!(
                            "composition is not associative at ({}, {}, {})",
                            m[f].label, m[g].label, m[h].label
                        )));
                    }
                }
            }
        }
        for x in 0..no {
            let aut = self.aut(x);
            for &f in &aut {
                if !aut
                    .iter()
                    .any(|&g| self.comp[f][g] == Some(self.identities[x]))
                {
                    return Err(Error::Invalid(format!(
                        "endomorphism {} is not invertible",
                        m[f].label
                    )));
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                if m[f].source != m[f].target
                    && m[f].source == m[g].target
                    && m[f].target == m[g].source
                {
                    return Err(Error::Invalid(
                        "category is not skeletal or has an oriented cycle".into(),
                    ));
                }
            }
        }
        if topological_order(
            no,
            m.iter()
                .filter(|f| f.source != f.target)
                .map(|f| (f.source, f.target)),
        )
        .is_none()
        {
            return Err(Error::Invalid(
                "category has an oriented cycle of non-isomorphisms".into(),
            ));
        }
        // connectivity of the underlying graph
        let mut comp: Vec<usize> = (0..no).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for f in m {
            let (a, b) = (find(&mut comp, f.source), find(&mut comp, f.target));
            comp[a] = b;
        }
        if no > 0 && (0..no).any(|x| find(&mut comp, x) != find(&mut comp, 0)) {
            return Err(Error::Invalid("category is not connected".into()));
        }
        Ok(())
    }

    /// Aut(x) as a group, labelled by morphism labels.
    pub fn group_of(&self, x: usize) -> FiniteGroup {
        let aut = self.aut(x);
        let pos: HashMap<usize, usize> = aut.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let table = aut
            .iter()
            .map(|&a| {
                aut.iter()
                    .map(|&b| pos[&self.comp[a][b].unwrap()])
                    .collect()
            })
            .collect();
        FiniteGroup {
            labels: aut
                .iter()
                .map(|&f| self.morphisms[f].label.clone())
                .collect(),
            table,
            identity: pos[&self.identities[x]],
        }
    }

    /// The subcategory without the listed morphisms.
    pub fn without(&self, removed: &[usize]) -> Result<EICategory> {
        let keep: Vec<usize> = (0..self.len()).filter(|f| !removed.contains(f)).collect();
        self.restrict(
            &keep,
            &self
                .objects
                .iter()
                .enumerate()
                .map(|(i, _)| i)
                .collect::<Vec<_>>(),
        )
    }

    pub fn full_subcategory(&self, objects: &[usize]) -> Result<EICategory> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&f| {
                objects.contains(&self.morphisms[f].source)
                    && objects.contains(&self.morphisms[f].target)
            })
            .collect();
        self.restrict(&keep, objects)
    }

    fn restrict(&self, keep: &[usize], objects: &[usize]) -> Result<EICategory> {
        let opos: HashMap<usize, usize> =
            objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mpos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms = keep
            .iter()
            .map(|&f| {
                let m = &self.morphisms[f];
                Morphism {
                    label: m.label.clone(),
                    source: opos[&m.source],
                    target: opos[&m.target],
                }
            })
            .collect();
        let mut comp = vec![vec![None; keep.len()]; keep.len()];
        for (i, &f) in keep.iter().enumerate() {
            for (j, &g) in keep.iter().enumerate() {
                if let Some(h) = self.comp[f][g] {
                    let k = mpos.get(&h).ok_or_else(|| {
                        Error::Invalid(format!(
                            "subcategory is not closed: {}",
                            self.morphisms[h].label
                        ))
                    })?;
                    comp[i][j] = Some(*k);
                }
            }
        }
        let identities = objects
            .iter()
            .map(|&x| mpos.get(&self.identities[x]).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid("an identity was removed".into()))?;
        EICategory::new(
            &self.name,
            objects.iter().map(|&x| self.objects[x].clone()).collect(),
            morphisms,
            comp,
            identities,
        )
    }
}

/// A morphism of a free EI category: an automorphism or a path with a canonical orbit representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeWord {
    Aut {
        object: usize,
        element: usize,
    },
    /// arrows in application order with one biset element per arrow
    Path {
        arrows: Vec<usize>,
        elements: Vec<usize>,
    },
}

fn canonical(q: &EIQuiver, arrows: &[usize], elements: &[usize]) -> Vec<usize> {
    let n = arrows.len();
    let mids: Vec<usize> = arrows[..n - 1]
        .iter()
        .map(|&a| q.arrows[a].target)
        .collect();
    let mut best = elements.to_vec();
    let mut hs = vec![0usize; mids.len()];
    loop {
        let mut t = elements.to_vec();
        for i in 0..n {
            let b = &q.arrows[arrows[i]].biset;
            let mut x = t[i];
            if i > 0 {
                x = b.right[hs[i - 1]][x];
            }
            if i + 1 < n {
                x = b.left[q.groups[mids[i]].inv(hs[i])][x];
            }
            t[i] = x;
        }
        if t < best {
            best = t;
        }
        let mut k = 0;
        while k < hs.len() {
            hs[k] += 1;
            if hs[k] < q.groups[mids[k]].order() {
                break;
            }
            hs[k] = 0;
            k += 1;
        }
        if k == hs.len() {
            break;
        }
    }
    best
}

fn compose_words(q: &EIQuiver, f: &FreeWord, g: &FreeWord) -> FreeWord {
    match (f, g) {
        (FreeWord::Aut { object, element: a }, FreeWord::Aut { element: b, .. }) => FreeWord::Aut {
            object: *object,
            element: q.groups[*object].mul(*a, *b),
        },
        (FreeWord::Aut { element: h, .. }, FreeWord::Path { arrows, elements }) => {
            let mut e = elements.clone();
            let last = e.len() - 1;
            e[last] = q.arrows[arrows[last]].biset.left[*h][e[last]];
            FreeWord::Path {
                arrows: arrows.clone(),
                elements: canonical(q, arrows, &e),
            }
        }
        (FreeWord::Path { arrows, elements }, FreeWord::Aut { element: h, .. }) => {
            let mut e = elements.clone();
            e[0] = q.arrows[arrows[0]].biset.right[*h][e[0]];
            FreeWord::Path {
                arrows: arrows.clone(),
                elements: canonical(q, arrows, &e),
            }
        }
        (
            FreeWord::Path {
                arrows: af,
                elements: ef,
            },
            FreeWord::Path {
                arrows: ag,
                elements: eg,
            },
        ) => {
            let arrows: Vec<usize> = ag.iter().chain(af).copied().collect();
            let e: Vec<usize> = eg.iter().chain(ef).copied().collect();
            let elements = canonical(q, &arrows, &e);
            FreeWord::Path { arrows, elements }
        }
    }
}

fn word_ends(q: &EIQuiver, w: &FreeWord) -> (usize, usize) {
    match w {
        FreeWord::Aut { object, .. } => (*object, *object),
        FreeWord::Path { arrows, .. } => (
            q.arrows[arrows[0]].source,
            q.arrows[*arrows.last().unwrap()].target,
        ),
    }
}

fn word_label(q: &EIQuiver, w: &FreeWord) -> String {
    match w {
        FreeWord::Aut { object, element } => format!(
            "{}:{}",
            q.objects[*object], q.groups[*object].labels[*element]
        ),
        FreeWord::Path { arrows, elements } => arrows
            .iter()
            .zip(elements)
            .rev()
            .map(|(&a, &e)| q.arrows[a].biset.labels[e].clone())
            .collect::<Vec<_>>()
            .join("*"),
    }
}

/// The free EI category together with the word behind each morphism.
pub fn free_ei_words(q: &EIQuiver, name: &str) -> Result<(EICategory, Vec<FreeWord>)> {
    q.validate()?;
    let mut words: Vec<FreeWord> = Vec::new();
    for (v, g) in q.groups.iter().enumerate() {
        for element in 0..g.order() {
            words.push(FreeWord::Aut { object: v, element });
        }
    }
    for p in q.paths() {
        let sizes: Vec<usize> = p.iter().map(|&a| q.arrows[a].biset.size()).collect();
        if sizes.contains(&0) {
            continue;
        }
        let mut reps = std::collections::BTreeSet::new();
        let mut t = vec![0usize; p.len()];
        loop {
            reps.insert(canonical(q, &p, &t));
            let mut k = 0;
            while k < t.len() {
                t[k] += 1;
                if t[k] < sizes[k] {
                    break;
                }
                t[k] = 0;
                k += 1;
            }
            if k == t.len() {
                break;
            }
        }
        for elements in reps {
            words.push(FreeWord::Path {
                arrows: p.clone(),
                elements,
            });
        }
    }
    words.sort_by_key(|w| {
        let (s, t) = word_ends(q, w);
        let len = match w {
            FreeWord::Aut { .. } => 0,
            FreeWord::Path { arrows, .. } => arrows.len(),
        };
        (s, t, len, w.clone())
    });
    let index: HashMap<FreeWord, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let n = words.len();
    let mut comp = vec![vec![None; n]; n];
    for f in 0..n {
        for g in 0..n {
            if word_ends(q, &words[f]).0 == word_ends(q, &words[g]).1 {
                comp[f][g] = Some(index[&compose_words(q, &words[f], &words[g])]);
            }
        }
    }
    let morphisms = words
        .iter()
        .map(|w| {
            let (source, target) = word_ends(q, w);
            Morphism {
                label: word_label(q, w),
                source,
                target,
            }
        })
        .collect();
    let identities = (0..q.objects.len())
        .map(|v| {
            index[&FreeWord::Aut {
                object: v,
                element: q.groups[v].identity,
            }]
        })
        .collect();
    let c = EICategory::new(name, q.objects.clone(), morphisms, comp, identities)?;
    Ok((c, words))
}

pub fn free_ei_category(q: &EIQuiver, name: &str) -> Result<EICategory> {
    Ok(free_ei_words(q, name)?.0)
}

pub fn unfactorizable_morphisms(c: &EICategory) -> Vec<usize> {
    (0..c.len())
        .filter(|&f| !c.is_iso(f))
        .filter(|&f| {
            let m = &c.morphisms[f];
            !(0..c.len()).any(|h| {
                !c.is_iso(h)
                    && c.morphisms[h].source == m.source
                    && (0..c.len()).any(|g| !c.is_iso(g) && c.compose(g, h) == Some(f))
            })
        })
        .collect()
}

/// Every decomposition of f into unfactorizables, first-applied first.
pub fn decompositions(c: &EICategory, f: usize) -> Vec<Vec<usize>> {
    let unf = unfactorizable_morphisms(c);
    let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    decompose(c, f, &unf, &mut memo)
}

fn decompose(
    c: &EICategory,
    f: usize,
    unf: &[usize],
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(d) = memo.get(&f) {
        return d.clone();
    }
    let mut out = Vec::new();
    if c.is_iso(f) {
        memo.insert(f, out.clone());
        return out;
    }
    if unf.contains(&f) {
        out.push(vec![f]);
    } else {
        for &u in unf {
            if c.morphisms[u].source != c.morphisms[f].source {
                continue;
            }
            for g in 0..c.len() {
                if !c.is_iso(g) && c.compose(g, u) == Some(f) {
                    for mut d in decompose(c, g, unf, memo) {
                        d.insert(0, u);
                        out.push(d);
                    }
                }
            }
        }
    }
    memo.insert(f, out.clone());
    out
}

/// Automorphisms h_i with d1[i]∘h_{i-1} = h_i∘d2[i], h_0 and h_n identities.
fn ladder(c: &EICategory, d1: &[usize], d2: &[usize]) -> bool {
    if d1.len() != d2.len() {
        return false;
    }
    let n = d1.len();
    if (0..n).any(|i| c.morphisms[d1[i]].target != c.morphisms[d2[i]].target) {
        return false;
    }
    fn step(c: &EICategory, d1: &[usize], d2: &[usize], i: usize, prev: usize) -> bool {
        let n = d1.len();
        let lhs = c.compose(d1[i], prev).expect("composable");
        let y = c.morphisms[d1[i]].target;
        let choices = if i + 1 == n {
            vec![c.identities[y]]
        } else {
            c.aut(y)
        };
        choices
            .into_iter()
            .any(|h| c.compose(h, d2[i]) == Some(lhs) && (i + 1 == n || step(c, d1, d2, i + 1, h)))
    }
    step(c, d1, d2, 0, c.identities[c.morphisms[d1[0]].source])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UfpReport {
    pub ufp: bool,
    /// (morphism, two inequivalent decompositions)
    pub witness: Option<(usize, Vec<usize>, Vec<usize>)>,
}

pub fn has_ufp(c: &EICategory) -> UfpReport {
    let unf = unfactorizable_morphisms(c);
    let mut memo = HashMap::new();
    for f in 0..c.len() {
        let ds = decompose(c, f, &unf, &mut memo);
        for d in ds.iter().skip(1) {
            if !ladder(c, &ds[0], d) {
                return UfpReport {
                    ufp: false,
                    witness: Some((f, ds[0].clone(), d.clone())),
                };
            }
        }
    }
    UfpReport {
        ufp: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingReport {
    pub gradable: bool,
    /// decomposition length per morphism (0 for isomorphisms) when gradable
    pub lengths: Vec<usize>,
    pub witness: Option<usize>,
}

pub fn is_gradable(c: &EICategory) -> GradingReport {
    let unf = unfactorizable_morphisms(c);
    let mut memo = HashMap::new();
    let mut lengths = vec![0; c.len()];
    for (f, len) in lengths.iter_mut().enumerate() {
        let ds = decompose(c, f, &unf, &mut memo);
        if let Some(first) = ds.first() {
            if ds.iter().any(|d| d.len() != first.len()) {
                return GradingReport {
                    gradable: false,
                    lengths: vec![],
                    witness: Some(f),
                };
            }
            *len = first.len();
        }
    }
    GradingReport {
        gradable: true,
        lengths,
        witness: None,
    }
}

/// kE with basis the morphisms and e_x = 1_x; graded by length when possible.
pub fn category_algebra(c: &EICategory, field: Field) -> Result<Algebra> {
    let g = is_gradable(c);
    let basis = c
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| BasisElem {
            label: m.label.clone(),
            source: m.source,
            target: m.target,
            degree: if g.gradable { g.lengths[i] } else { 0 },
        })
        .collect();
    let mult: Vec<Vec<Sparse>> = (0..c.len())
        .map(|f| {
            (0..c.len())
                .map(|h| {
                    c.compose(f, h)
                        .map(|k| vec![(k, field.one())])
                        .unwrap_or_default()
                })
                .collect()
        })
        .collect();
    Algebra::from_structure(
        &format!("k{}", c.name),
        field,
        c.objects.clone(),
        basis,
        mult,
        c.identities.clone(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularObjects {
    pub left: Vec<bool>,
    pub right: Vec<bool>,
}

/// Stabilizer orders of non-isomorphisms ending (left) or starting (right) at each object, tested against p.
pub fn regular_objects(c: &EICategory, p: u64) -> RegularObjects {
    let invertible = |n: usize| p == 0 || !(n as u64).is_multiple_of(p);
    let no = c.objects.len();
    let mut left = vec![true; no];
    let mut right = vec![true; no];
    for f in 0..c.len() {
        if c.is_iso(f) {
            continue;
        }
        let (s, t) = (c.morphisms[f].source, c.morphisms[f].target);
        let ls = c
            .aut(t)
            .into_iter()
            .filter(|&h| c.compose(h, f) == Some(f))
            .count();
        let rs = c
            .aut(s)
            .into_iter()
            .filter(|&g| c.compose(f, g) == Some(f))
            .count();
        left[t] &= invertible(ls);
        right[s] &= invertible(rs);
    }
    RegularObjects { left, right }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCover {
    pub quiver: EIQuiver,
    pub cover: EICategory,
    /// cover morphism → morphism of the original category
    pub functor: Vec<usize>,
    pub full: bool,
    /// pairs (α̂, β̂) with equal images; their differences span the kernel
    pub kernel: Vec<(usize, usize)>,
}

impl FreeCover {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }
}

/// The EI quiver of unfactorizables of c.
pub fn ei_quiver_of(c: &EICategory) -> (EIQuiver, Vec<Vec<usize>>) {
    let unf = unfactorizable_morphisms(c);
    let groups: Vec<FiniteGroup> = (0..c.objects.len()).map(|x| c.group_of(x)).collect();
    let mut arrows = Vec::new();
    let mut elems = Vec::new();
    for x in 0..c.objects.len() {
        for y in 0..c.objects.len() {
            let us: Vec<usize> = unf
                .iter()
                .copied()
                .filter(|&u| c.morphisms[u].source == x && c.morphisms[u].target == y)
                .collect();
            if us.is_empty() {
                continue;
            }
            let pos: HashMap<usize, usize> = us.iter().enumerate().map(|(i, &u)| (u, i)).collect();
            let left = c
                .aut(y)
                .into_iter()
                .map(|h| us.iter().map(|&u| pos[&c.compose(h, u).unwrap()]).collect())
                .collect();
            let right = c
                .aut(x)
                .into_iter()
                .map(|g| us.iter().map(|&u| pos[&c.compose(u, g).unwrap()]).collect())
                .collect();
            let labels = us
                .iter()
                .map(|&u| {
                    let l = &c.morphisms[u].label;
                    if l.contains('*') {
                        format!("({l})")
                    } else {
                        l.clone()
                    }
                })
                .collect();
            arrows.push(EIArrow {
                name: format!("{}->{}", c.objects[x], c.objects[y]),
                source: x,
                target: y,
                biset: Biset {
                    labels,
                    left,
                    right,
                },
            });
            elems.push(us);
        }
    }
    (
        EIQuiver {
            objects: c.objects.clone(),
            groups,
            arrows,
        },
        elems,
    )
}

pub fn free_ei_cover(c: &EICategory) -> Result<FreeCover> {
    let (quiver, elems) = ei_quiver_of(c);
    let (cover, words) = free_ei_words(&quiver, &format!("{}^", c.name))?;
    let functor: Vec<usize> = words
        .iter()
        .map(|w| match w {
            FreeWord::Aut { object, element } => c.aut(*object)[*element],
            FreeWord::Path { arrows, elements } => {
                let mut acc = elems[arrows[0]][elements[0]];
                for (&a, &e) in arrows.iter().zip(elements).skip(1) {
                    acc = c.compose(elems[a][e], acc).expect("path composes");
                }
                acc
            }
        })
        .collect();
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (i, &f) in functor.iter().enumerate() {
        match first.get(&f) {
            Some(&r) => kernel.push((r, i)),
            None => {
                first.insert(f, i);
            }
        }
    }
    let full = first.len() == c.len();
    Ok(FreeCover {
        quiver,
        cover,
        functor,
        full,
        kernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EITheoremReport {
    pub bound: usize,
    pub free: bool,
    pub gradable: bool,
    pub pd_at_most_one: bool,
    /// the resolution of kE_0 terminated within the bound
    pub pd_finite_within_bound: bool,
    /// None when the category is not gradable
    pub koszul: Option<bool>,
    pub stratified: bool,
    /// every object left regular
    pub stratified_by_stabilizers: bool,
    pub quasi_koszul: Option<bool>,
    /// every object left or right regular
    pub regular_hypothesis: bool,
    pub ext2_vanishes: bool,
    /// an object that is not left regular
    pub counterexample_object: Option<usize>,
    pub consistent: bool,
}

pub fn ei_theorem_checks(c: &EICategory, field: Field, n: usize) -> Result<EITheoremReport> {
    let free = has_ufp(c).ufp;
    let gradable = is_gradable(c).gradable;
    let a = Arc::new(category_algebra(c, field)?);
    let k0 = degree_zero_module(&a);
    let res = minimal_resolution(&k0, n)?;
    let lengths: Vec<usize> = res.terms.iter().map(|t| t.module.dim()).collect();
    let pd_finite_within_bound = res.terminated;
    let pd_at_most_one = res.terminated && lengths.iter().skip(2).all(|&d| d == 0);
    let koszul = if gradable {
        Some(is_koszul_algebra(&a, n)?)
    } else {
        None
    };
    let quasi_koszul = if gradable {
        Some(is_quasi_koszul_algebra(&a, n)?)
    } else {
        None
    };
    let order = is_directed(&a).ok_or(Error::NotDirected)?;
    let stratified = is_standardly_stratified(&a, &LinearOrder::from_least(order))?;
    let reg = regular_objects(c, field.characteristic());
    let stratified_by_stabilizers = reg.left.iter().all(|&b| b);
    let counterexample_object = reg.left.iter().position(|&b| !b);
    let regular_hypothesis = (0..c.objects.len()).all(|x| reg.left[x] || reg.right[x]);
    let ext = ext_dims(&k0, &k0, 2.min(n))?;
    let ext2_vanishes = ext.dims.get(2).is_none_or(|&d| d == 0);
    let mut consistent =
        stratified == stratified_by_stabilizers && stratified == pd_finite_within_bound;
    if free && gradable {
        let k = koszul.unwrap_or(false);
        consistent &= pd_at_most_one == k && k == stratified;
        consistent &= ext2_vanishes;
        if regular_hypothesis {
            consistent &= quasi_koszul == Some(true);
        }
    }
    Ok(EITheoremReport {
        bound: n,
        free,
        gradable,
        pd_at_most_one,
        pd_finite_within_bound,
        koszul,
        stratified,
        stratified_by_stabilizers,
        quasi_koszul,
        regular_hypothesis,
        ext2_vanishes,
        counterexample_object,
        consistent,
    })
}

/// ei_theorem_checks at the default bound.
pub fn ei_theorem_checks_default(c: &EICategory, field: Field) -> Result<EITheoremReport> {
    ei_theorem_checks(c, field, DEFAULT_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// x → y → z with Aut(y) = C2 acting trivially on both arrows.
    fn ex_c2_chain() -> EIQuiver {
        let t = FiniteGroup::trivial();
        let c2 = FiniteGroup::cyclic(2, "h");
        EIQuiver {
            objects: vec!["x".into(), "y".into(), "z".into()],
            groups: vec![t.clone(), c2.clone(), t.clone()],
            arrows: vec![
                EIArrow {
                    name: "a".into(),
                    source: 0,
                    target: 1,
                    biset: Biset::singleton("a", &c2, &t),
                },
                EIArrow {
                    name: "b".into(),
                    source: 1,
                    target: 2,
                    biset: Biset::singleton("b", &t, &c2),
                },
            ],
        }
    }

    #[test]
    fn c2_chain_counts() {
        let c = free_ei_category(&ex_c2_chain(), "E").unwrap();
        assert_eq!(c.len(), 7);
        assert!(has_ufp(&c).ufp);
        assert!(is_gradable(&c).gradable);
        let u: Vec<String> = unfactorizable_morphisms(&c)
            .iter()
            .map(|&f| c.morphisms[f].label.clone())
            .collect();
        assert_eq!(u, vec!["a", "b"]);
        assert!(c.index_of("b*a").is_some());
        let r2 = regular_objects(&c, 2);
        assert!(!r2.left[1] && !r2.right[1]);
        let r3 = regular_objects(&c, 3);
        assert!(r3.left.iter().chain(&r3.right).all(|&b| b));
        let cov = free_ei_cover(&c).unwrap();
        assert_eq!(cov.cover.len(), 7);
        assert!(cov.kernel.is_empty() && cov.full);
    }

    #[test]
    fn swapped_biset() {
        // Aut(y) = C2 swaps b1, b2 and fixes a
        let t = FiniteGroup::trivial();
        let c2 = FiniteGroup::cyclic(2, "g");
        let q = EIQuiver {
            objects: vec!["x".into(), "y".into(), "z".into()],
            groups: vec![t.clone(), c2.clone(), t.clone()],
            arrows: vec![
                EIArrow {
                    name: "a".into(),
                    source: 0,
                    target: 1,
                    biset: Biset::singleton("a", &c2, &t),
                },
                EIArrow {
                    name: "b".into(),
                    source: 1,
                    target: 2,
                    biset: Biset {
                        labels: vec!["b1".into(), "b2".into()],
                        left: vec![vec![0, 1]],
                        right: vec![vec![0, 1], vec![1, 0]],
                    },
                },
            ],
        };
        let c = free_ei_category(&q, "E").unwrap();
        assert_eq!(c.len(), 8);
        assert!(has_ufp(&c).ufp);
        let g = c.index_of("y:g").unwrap();
        let d = c.without(&[g]).unwrap();
        assert_eq!(d.len(), 7);
        let r = has_ufp(&d);
        assert!(!r.ufp);
        assert!(is_gradable(&d).gradable);
        let cov = free_ei_cover(&d).unwrap();
        assert_eq!(cov.cover.len(), 8);
        assert_eq!(cov.kernel_dim(), 1);
    }

    #[test]
    fn c2_chain_theorems() {
        let c = free_ei_category(&ex_c2_chain(), "E").unwrap();
        let r2 = ei_theorem_checks(&c, Field::Prime(2), 4).unwrap();
        assert!(r2.free && r2.gradable && !r2.stratified && !r2.stratified_by_stabilizers);
        assert!(
            !r2.pd_finite_within_bound
                && r2.koszul == Some(false)
                && r2.quasi_koszul == Some(false)
        );
        assert!(r2.consistent);
        let r3 = ei_theorem_checks(&c, Field::Prime(3), 4).unwrap();
        assert!(
            r3.pd_at_most_one
                && r3.stratified
                && r3.koszul == Some(true)
                && r3.quasi_koszul == Some(true)
        );
        assert!(r3.consistent);
    }

    #[test]
    fn group_category() {
        let q = EIQuiver {
            objects: vec!["x".into()],
            groups: vec![FiniteGroup::cyclic(2, "g")],
            arrows: vec![],
        };
        let c = free_ei_category(&q, "G").unwrap();
        assert!(unfactorizable_morphisms(&c).is_empty());
        let a = category_algebra(&c, Field::Prime(3)).unwrap();
        assert_eq!(a.dim(), 2);
    }
}
