use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest finite group accepted from a multiplication table unless a caller
/// raises the cap.
pub const DEFAULT_ORDER_CAP: usize = 64;

/// A finite group given by named elements and a full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    /// Validates `table[i][j] = names[i]·names[j]` (by index) and builds the group.
    /// Checks that the table is a Latin square with an identity and that the
    /// operation is associative.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>, cap: usize, label: Option<String>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("finite group with no elements".into()));
        }
        if n > cap {
            return Err(Error::InvalidGroup(format!("group order {n} exceeds the cap of {cap}")));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidGroup(format!("duplicate element name `{name}`")));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                row[table[i][j]] = true;
                col[table[j][i]] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(Error::InvalidGroup("table is not a Latin square".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative: ({0}{1}){2} != {0}({1}{2})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            label: label.unwrap_or_else(|| {
                let cyclic = (0..n).any(|g| {
                    let mut x = g;
                    (1..n).all(|_| {
                        let fresh = x != identity;
                        x = table[x][g];
                        fresh
                    })
                });
                if cyclic {
                    format!("C{n}")
                } else {
                    format!("G{n}")
                }
            }),
            names,
            table,
            identity,
            inverse,
        })
    }

    /// Cyclic group of order `n`: elements `1, g, g2, …, g{n-1}`.
    pub fn cyclic(n: usize, generator: &str) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_owned(),
                1 => generator.to_owned(),
                _ => format!("{generator}{k}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(names, table, usize::MAX, Some(format!("C{n}"))).expect("cyclic table is a group")
    }

    /// Symmetric group on `{0, …, n-1}` acting on the right: `(x·y)(i) = y(x(i))`.
    /// The identity is named `1`, other permutations `p` followed by their
    /// images, e.g. `p102` swaps 0 and 1.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n));
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut i = 0;
        // Lexicographic enumeration via repeated next-permutation.
        while i < perms.len() {
            let mut p = perms[i].clone();
            if next_permutation(&mut p) {
                perms.push(p);
            }
            i += 1;
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let names = perms
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if i == 0 {
                    "1".to_owned()
                } else {
                    format!("p{}", p.iter().map(|d| d.to_string()).collect::<String>())
                }
            })
            .collect();
        let table = perms
            .iter()
            .map(|x| {
                perms
                    .iter()
                    .map(|y| index[&x.iter().map(|&k| y[k]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::from_table(names, table, usize::MAX, Some(format!("S{n}"))).expect("symmetric table is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self) -> String {
        self.label.clone()
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        self.names.iter().position(|n| n == name)
    }

    /// Element indices with the identity first.
    pub(crate) fn identity_first(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.identity).chain((0..self.order()).filter(move |&i| i != self.identity))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FiniteSubgroup {
    members: Vec<bool>,
    reps: Vec<usize>,
    rep_of: Vec<usize>,
}

impl FiniteSubgroup {
    pub(crate) fn generate(group: &FiniteGroup, gens: &[super::Element]) -> Self {
        let gens: Vec<usize> = gens
            .iter()
            .map(|g| match g {
                super::Element::Finite(i) => *i,
                _ => unreachable!("validated by caller"),
            })
            .collect();
        let members = closure(group, &gens);
        let n = group.order();
        let mut rep_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for t in group.identity_first() {
            if rep_of[t] != usize::MAX {
                continue;
            }
            reps.push(t);
            for s in (0..n).filter(|&s| members[s]) {
                rep_of[group.mul(s, t)] = t;
            }
        }
        FiniteSubgroup { members, reps, rep_of }
    }

    pub(crate) fn contains(&self, g: usize) -> bool {
        self.members[g]
    }

    pub(crate) fn index(&self) -> usize {
        self.reps.len()
    }

    pub(crate) fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub(crate) fn rep_of(&self, g: usize) -> usize {
        self.rep_of[g]
    }

    pub(crate) fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    /// Greedy generating set: scan elements identity-first and keep any that is
    /// not yet generated.
    pub(crate) fn canonical_generators(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = closure(group, &gens);
        for g in group.identity_first() {
            if self.members[g] && !current[g] {
                gens.push(g);
                current = closure(group, &gens);
            }
        }
        gens
    }
}

fn closure(group: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut members = vec![false; group.order()];
    members[group.identity()] = true;
    let mut stack = vec![group.identity()];
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = group.mul(x, g);
            if !members[y] {
                members[y] = true;
                stack.push(y);
            }
        }
    }
    members
}
