//! Finite groups given by multiplication tables, their group algebras, and
//! subgroup-algebra extensions `k[G] | k[N]`.

use crate::algebra::{Extension, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Matrix};
use crate::scalar::Field;

/// A validated Cayley table: `table[a][b]` is the index of `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {a} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {x} out of range in row {a}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupTable { table, identity, inverses })
    }

    pub fn cyclic(n: usize) -> GroupTable {
        GroupTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).expect("cyclic group")
    }

    /// `S_3` on the points `{0, 1, 2}`, elements in lexicographic order of
    /// their one-line notation, product `(στ)(x) = σ(τ(x))`.
    pub fn symmetric3() -> GroupTable {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        GroupTable::new(table).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn check_subgroup(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.iter().any(|&x| x >= self.order()) {
            return Err(Error::NotASubgroup("empty or out-of-range subset".into()));
        }
        for &a in &s {
            for &b in &s {
                if s.binary_search(&self.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup(format!("product of {a} and {b} leaves the subset")));
                }
            }
        }
        // a finite subset closed under products is a subgroup
        Ok(s)
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        (0..self.order()).all(|g| {
            subgroup.iter().all(|&n| subgroup.contains(&self.mul(self.mul(g, n), self.inverse(g))))
        })
    }

    /// Least element of each left coset `gN`, in ascending order.
    pub fn transversal(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if !seen[g] {
                reps.push(g);
                for &n in subgroup {
                    seen[self.mul(g, n)] = true;
                }
            }
        }
        reps
    }

    /// Index of the transversal element whose left coset contains `g`.
    pub fn coset_of(&self, transversal: &[usize], subgroup: &[usize], g: usize) -> usize {
        transversal
            .iter()
            .position(|&r| subgroup.contains(&self.mul(self.inverse(r), g)))
            .expect("transversal covers the group")
    }
}

/// `k[G]` with basis indexed by group elements.
pub fn group_algebra(field: Field, g: &GroupTable) -> FiniteAlgebra {
    let n = g.order();
    FiniteAlgebra::from_products(field, n, unit_vector(field, n, g.identity()), |a, b| unit_vector(field, n, g.mul(a, b)))
        .expect("group algebra of a valid table")
}

/// `k[G] | k[N]` together with the combinatorial data it came from.
#[derive(Clone, Debug)]
pub struct GroupExtension {
    pub group: GroupTable,
    /// Elements of `N` in ascending order; `B`'s basis follows this order.
    pub subgroup: Vec<usize>,
    pub transversal: Vec<usize>,
    pub normal: bool,
    pub extension: Extension,
}

/// `k[N] → k[G]` for any subgroup `N`, normal or not.
pub fn subgroup_extension(field: Field, g: &GroupTable, subgroup: &[usize]) -> Result<GroupExtension> {
    let n = g.check_subgroup(subgroup)?;
    let pos = |x: usize| n.binary_search(&x).expect("closed");
    let sub_table = GroupTable::new(n.iter().map(|&a| n.iter().map(|&b| pos(g.mul(a, b))).collect()).collect())?;
    let b = group_algebra(field, &sub_table);
    let a = group_algebra(field, g);
    let cols: Vec<_> = n.iter().map(|&x| unit_vector(field, g.order(), x)).collect();
    let iota = Matrix::from_columns(field, g.order(), &cols)?;
    let extension = Extension::from_parts(b, a, iota)?;
    Ok(GroupExtension {
        group: g.clone(),
        transversal: g.transversal(&n),
        normal: g.is_normal(&n),
        subgroup: n,
        extension,
    })
}

/// Like `subgroup_extension` but insists on a normal subgroup.
pub fn group_pair(field: Field, g: &GroupTable, subgroup: &[usize]) -> Result<GroupExtension> {
    let ge = subgroup_extension(field, g, subgroup)?;
    if !ge.normal {
        return Err(Error::NotNormal(format!("subgroup {:?} is not normal", ge.subgroup)));
    }
    Ok(ge)
}
