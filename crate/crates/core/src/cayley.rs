//! Cayley-graph experiments on small matrix groups: closure with word
//! lengths, diameters, shortest words with prescribed characteristic
//! polynomial factors, conjugacy-class covering numbers, and exhaustive
//! diameters over all generating sets of tiny abstract groups.
//!
//! Words are strings over `a, A, b, B, ..`; the lowercase letter is the
//! i-th generator and the uppercase one its inverse. A word `w1 w2 .. wk`
//! stands for the product `w1 * w2 * .. * wk`.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, Field};
use crate::matrix::{MatrixError, SquareMatrix};
use crate::par::{self, Execution};
use crate::poly::Polynomial;

pub const DEFAULT_CAP_ORDER: usize = 2_000_000;
pub const DEFAULT_KMAX: usize = 16;
/// Largest order accepted by [`exhaustive_group_diameter`].
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("group order exceeds the cap of {0}")]
    CapExceeded(usize),
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("no generators given")]
    EmptyGenerators,
    #[error("generators must share one field and dimension")]
    ShapeMismatch,
    #[error("at most 26 generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("no qualifying word among {explored} elements (group exhausted: {exhausted})")]
    NotFoundWithinCap { explored: usize, exhausted: bool },
    #[error("class products do not cover the group within {0} factors")]
    NotCovered(usize),
    #[error("group order {0} is above the exhaustive limit")]
    OrderTooLarge(usize),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("invalid targets: {0}")]
    InvalidTargets(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The closure of a generating set with BFS word lengths.
#[derive(Clone, Debug)]
pub struct GroupTable {
    field: Field,
    n: usize,
    generators: Vec<SquareMatrix>,
    /// `(label, matrix)` in the order `a, A, b, B, ..`.
    letters: Vec<(char, SquareMatrix)>,
    elements: Vec<SquareMatrix>,
    index: HashMap<Vec<Elem>, usize>,
    word_length: Vec<u32>,
    /// `(parent, letter)` for every element but the identity.
    parent: Vec<Option<(usize, u8)>>,
}

fn letters_for(gens: &[SquareMatrix]) -> Result<Vec<(char, SquareMatrix)>, CayleyError> {
    let first = gens.first().ok_or(CayleyError::EmptyGenerators)?;
    if gens.len() > 26 {
        return Err(CayleyError::TooManyGenerators(gens.len()));
    }
    let mut out = Vec::with_capacity(2 * gens.len());
    for (i, g) in gens.iter().enumerate() {
        if g.field() != first.field() || g.n() != first.n() {
            return Err(CayleyError::ShapeMismatch);
        }
        let inv = g.inverse().map_err(|_| CayleyError::SingularGenerator(i))?;
        let lower = (b'a' + i as u8) as char;
        out.push((lower, g.clone()));
        out.push((lower.to_ascii_uppercase(), inv));
    }
    Ok(out)
}

impl GroupTable {
    /// BFS closure. `stop` sees each new element in discovery order; when
    /// it returns `true` the search halts and the element's index is
    /// returned alongside the partial table.
    fn explore(
        gens: &[SquareMatrix],
        cap: usize,
        exec: Execution,
        mut stop: impl FnMut(&SquareMatrix) -> bool,
    ) -> Result<(GroupTable, Option<usize>), CayleyError> {
        let letters = letters_for(gens)?;
        let field = gens[0].field().clone();
        let n = gens[0].n();
        let id = SquareMatrix::identity(&field, n);
        let mut table = GroupTable {
            field,
            n,
            generators: gens.to_vec(),
            letters,
            index: HashMap::from([(id.entries().to_vec(), 0)]),
            elements: vec![id],
            word_length: vec![0],
            parent: vec![None],
        };
        if stop(&table.elements[0]) {
            return Ok((table, Some(0)));
        }
        let mut frontier = vec![0usize];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let products: Vec<Vec<SquareMatrix>> = par::map(exec, &frontier, |&x| {
                table
                    .letters
                    .iter()
                    .map(|(_, g)| table.elements[x].mul(g))
                    .collect()
            });
            let mut next = Vec::new();
            for (&x, prods) in frontier.iter().zip(products) {
                for (li, prod) in prods.into_iter().enumerate() {
                    if table.index.contains_key(prod.entries()) {
                        continue;
                    }
                    if table.elements.len() >= cap {
                        return Err(CayleyError::CapExceeded(cap));
                    }
                    let idx = table.elements.len();
                    table.index.insert(prod.entries().to_vec(), idx);
                    table.word_length.push(level);
                    table.parent.push(Some((x, li as u8)));
                    let hit = stop(&prod);
                    table.elements.push(prod);
                    if hit {
                        return Ok((table, Some(idx)));
                    }
                    next.push(idx);
                }
            }
            frontier = next;
        }
        Ok((table, None))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[SquareMatrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SquareMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SquareMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, a: &SquareMatrix) -> Option<usize> {
        if a.field() != &self.field || a.n() != self.n {
            return None;
        }
        self.index.get(a.entries()).copied()
    }

    pub fn word_length(&self, i: usize) -> u32 {
        self.word_length[i]
    }

    /// Shortest word for element `i`, lexicographically smallest among
    /// shortest words under the letter order `a < A < b < B < ..`.
    pub fn word(&self, i: usize) -> String {
        let mut out = Vec::new();
        let mut cur = i;
        while let Some((p, l)) = self.parent[cur] {
            out.push(self.letters[l as usize].0);
            cur = p;
        }
        out.iter().rev().collect()
    }

    /// Multiplies out a word over the generator labels.
    pub fn evaluate(&self, word: &str) -> Option<SquareMatrix> {
        let mut acc = SquareMatrix::identity(&self.field, self.n);
        for c in word.chars() {
            let (_, g) = self.letters.iter().find(|(l, _)| *l == c)?;
            acc = acc.mul(g);
        }
        Some(acc)
    }

    fn product_index(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].mul(&self.elements[b]);
        self.index[prod.entries()]
    }
}

pub fn enumerate_group(
    gens: &[SquareMatrix],
    cap: usize,
    exec: Execution,
) -> Result<GroupTable, CayleyError> {
    GroupTable::explore(gens, cap, exec, |_| false).map(|(t, _)| t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub group_order: usize,
    pub diameter: usize,
    /// `histogram[k]` = number of elements at distance `k`.
    pub histogram: Vec<usize>,
    pub witness_index: usize,
    pub witness_word: String,
}

pub fn diameter_report(table: &GroupTable) -> DiameterReport {
    let diameter = table.word_length.iter().copied().max().unwrap_or(0) as usize;
    let mut histogram = vec![0; diameter + 1];
    for &l in &table.word_length {
        histogram[l as usize] += 1;
    }
    let witness_index = table
        .word_length
        .iter()
        .position(|&l| l as usize == diameter)
        .unwrap_or(0);
    DiameterReport {
        group_order: table.order(),
        diameter,
        histogram,
        witness_index,
        witness_word: table.word(witness_index),
    }
}

pub fn bfs_diameter(
    gens: &[SquareMatrix],
    cap: usize,
    exec: Execution,
) -> Result<DiameterReport, CayleyError> {
    Ok(diameter_report(&enumerate_group(gens, cap, exec)?))
}

/// Shortest word whose characteristic polynomial is divisible by the
/// product of the targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeWord {
    pub word: String,
    pub matrix: SquareMatrix,
    pub charpoly: Polynomial,
    pub explored: usize,
    /// `q^(n d)` with `d` the total target degree.
    pub budget: BigUint,
}

pub fn find_low_degree_word(
    gens: &[SquareMatrix],
    targets: &[Polynomial],
    cap: usize,
    exec: Execution,
) -> Result<LowDegreeWord, CayleyError> {
    let first = gens.first().ok_or(CayleyError::EmptyGenerators)?;
    let field = first.field();
    let n = first.n();
    let mut product = Polynomial::one(field);
    for t in targets {
        if t.field() != field {
            return Err(CayleyError::InvalidTargets(
                "target over a different field".into(),
            ));
        }
        if !t.is_monic() || t.degree().unwrap_or(0) == 0 {
            return Err(CayleyError::InvalidTargets(format!(
                "{t} is not monic of positive degree"
            )));
        }
        product = product.mul(t);
    }
    let d = product.degree().unwrap_or(0);
    if d > n {
        return Err(CayleyError::InvalidTargets(format!(
            "total degree {d} exceeds n = {n}"
        )));
    }
    let result = GroupTable::explore(gens, cap, exec, |m| product.divides(&m.charpoly()));
    let (table, hit) = match result {
        Ok(r) => r,
        Err(CayleyError::CapExceeded(cap)) => {
            return Err(CayleyError::NotFoundWithinCap {
                explored: cap,
                exhausted: false,
            })
        }
        Err(e) => return Err(e),
    };
    let Some(idx) = hit else {
        return Err(CayleyError::NotFoundWithinCap {
            explored: table.order(),
            exhausted: true,
        });
    };
    let matrix = table.element(idx).clone();
    Ok(LowDegreeWord {
        word: table.word(idx),
        charpoly: matrix.charpoly(),
        matrix,
        explored: table.order(),
        budget: field.order().pow((n * d) as u32),
    })
}

/// Conjugacy class of element `a`, as sorted indices.
pub fn conjugacy_class(table: &GroupTable, a: usize, exec: Execution) -> Vec<usize> {
    let x = table.element(a);
    let mut class: Vec<usize> = par::map(exec, table.elements(), |g| {
        let conj = g
            .mul(x)
            .mul(&g.inverse().expect("group elements are invertible"));
        table.index[conj.entries()]
    });
    class.sort_unstable();
    class.dedup();
    class
}

/// Least `k <= kmax` such that products of at most `k` conjugates of `a`
/// exhaust the group.
pub fn class_covering_number(
    table: &GroupTable,
    a: &SquareMatrix,
    kmax: usize,
    exec: Execution,
) -> Result<usize, CayleyError> {
    let ai = table.index_of(a).ok_or(CayleyError::NotInGroup)?;
    let class = conjugacy_class(table, ai, exec);
    let order = table.order();
    let mut covered = vec![false; order];
    let mut count = 0;
    let mut cur = class.clone();
    for k in 1..=kmax {
        for &x in &cur {
            if !covered[x] {
                covered[x] = true;
                count += 1;
            }
        }
        if count == order {
            return Ok(k);
        }
        let prods: Vec<Vec<usize>> = par::map(exec, &cur, |&x| {
            class.iter().map(|&c| table.product_index(x, c)).collect()
        });
        let mut next: Vec<usize> = prods.into_iter().flatten().collect();
        next.sort_unstable();
        next.dedup();
        if next == cur {
            break;
        }
        cur = next;
    }
    Err(CayleyError::NotCovered(kmax))
}

/// Multiplication table of a small abstract group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    order: usize,
    table: Vec<u32>,
    identity: usize,
}

impl MulTable {
    /// `table[a * order + b] = a * b`.
    pub fn new(order: usize, table: Vec<u32>) -> Result<Self, CayleyError> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x as usize >= order)
        {
            return Err(CayleyError::NotSubgroup("malformed table".into()));
        }
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|x| {
                    table[e * order + x] as usize == x && table[x * order + e] as usize == x
                })
            })
            .ok_or_else(|| CayleyError::NotSubgroup("no identity".into()))?;
        Ok(MulTable {
            order,
            table,
            identity,
        })
    }

    pub fn from_group(g: &GroupTable) -> Result<Self, CayleyError> {
        let order = g.order();
        if order > 4096 {
            return Err(CayleyError::OrderTooLarge(order));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(g.product_index(a, b) as u32);
            }
        }
        MulTable::new(order, table)
    }

    pub fn cyclic(order: usize) -> Self {
        let table = (0..order * order)
            .map(|i| ((i / order + i % order) % order) as u32)
            .collect();
        MulTable {
            order,
            table,
            identity: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == self.identity)
            .unwrap()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Restriction to a subset closed under multiplication.
    pub fn subgroup(&self, elems: &[usize]) -> Result<MulTable, CayleyError> {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = elems.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in elems {
            for &b in elems {
                let c = pos
                    .get(&self.mul(a, b))
                    .ok_or_else(|| CayleyError::NotSubgroup("not closed".into()))?;
                table.push(*c as u32);
            }
        }
        MulTable::new(k, table)
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: std::collections::HashSet<usize> = elems.iter().copied().collect();
        (0..self.order).all(|g| {
            let gi = self.inverse(g);
            elems
                .iter()
                .all(|&x| set.contains(&self.mul(self.mul(g, x), gi)))
        })
    }

    /// `G / N` on the cosets of a normal subgroup, cosets numbered by their
    /// smallest element.
    pub fn quotient(&self, normal: &[usize]) -> Result<MulTable, CayleyError> {
        self.subgroup(normal)?;
        if !self.is_normal(normal) {
            return Err(CayleyError::NotSubgroup("not normal".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in normal {
                coset_of[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)] as u32);
            }
        }
        MulTable::new(k, table)
    }

    /// Diameter of the Cayley graph for `S u S^-1`, or `None` when `S` does
    /// not generate.
    pub fn diameter_wrt(&self, set: &[usize]) -> Option<usize> {
        let mut steps: Vec<usize> = set.iter().flat_map(|&s| [s, self.inverse(s)]).collect();
        steps.sort_unstable();
        steps.dedup();
        let mut dist = vec![usize::MAX; self.order];
        dist[self.identity] = 0;
        let mut frontier = vec![self.identity];
        let mut reached = 1;
        let mut level = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for &s in &steps {
                    let y = self.mul(x, s);
                    if dist[y] == usize::MAX {
                        dist[y] = level + 1;
                        reached += 1;
                        next.push(y);
                    }
                }
            }
            if !next.is_empty() {
                level += 1;
            }
            frontier = next;
        }
        (reached == self.order).then_some(level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveDiameter {
    pub group_order: usize,
    /// Maximum of `diam_S(G)` over all generating sets `S`.
    pub diameter: usize,
    pub generating_sets: usize,
    /// A generating set attaining the maximum (smallest bitmask).
    pub worst_set: Vec<usize>,
}

/// Scans every subset of non-identity elements.
pub fn exhaustive_group_diameter(
    t: &MulTable,
    exec: Execution,
) -> Result<ExhaustiveDiameter, CayleyError> {
    if t.order() > EXHAUSTIVE_LIMIT {
        return Err(CayleyError::OrderTooLarge(t.order()));
    }
    let others: Vec<usize> = (0..t.order()).filter(|&x| x != t.identity()).collect();
    let subsets = 1usize << others.len();
    let subset = |mask: usize| -> Vec<usize> {
        others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    };
    let diams = par::map_range(exec, subsets, |mask| t.diameter_wrt(&subset(mask)));
    let mut best: Option<(usize, usize)> = None;
    let mut generating = 0;
    for (mask, d) in diams.iter().enumerate() {
        if let Some(d) = *d {
            generating += 1;
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, mask));
            }
        }
    }
    let (diameter, mask) = best.expect("the full set generates");
    Ok(ExhaustiveDiameter {
        group_order: t.order(),
        diameter,
        generating_sets: generating,
        worst_set: subset(mask),
    })
}

/// Empirical check of `diam_S(G) <= 4 diam(N) diam(G/N)` over every
/// generating set `S` of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionCheck {
    pub diam_n: usize,
    pub diam_quotient: usize,
    pub bound: usize,
    pub max_diam_g: usize,
    pub generating_sets: usize,
    pub holds: bool,
}

pub fn composition_check(
    g: &MulTable,
    normal: &[usize],
    exec: Execution,
) -> Result<CompositionCheck, CayleyError> {
    let n = exhaustive_group_diameter(&g.subgroup(normal)?, exec)?;
    let quo = exhaustive_group_diameter(&g.quotient(normal)?, exec)?;
    let full = exhaustive_group_diameter(g, exec)?;
    let bound = 4 * n.diameter * quo.diameter;
    Ok(CompositionCheck {
        diam_n: n.diameter,
        diam_quotient: quo.diameter,
        bound,
        max_diam_g: full.diameter,
        generating_sets: full.generating_sets,
        holds: full.diameter <= bound,
    })
}
