use std::collections::BTreeSet;

use crate::{Error, Result};

/// How to build a [`FiniteGroup`].
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Symmetric group on `n ≤ 4` letters.
    Symmetric(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    /// Multiplication table with element 0 as identity; names default to indices.
    FromCayley {
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    },
}

/// A finite group given by its multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    label: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Underlying permutations (`σ[i]` is the image of `i`) for symmetric groups.
    permutations: Option<Vec<Vec<usize>>>,
}

/// Largest order for which subgroup enumeration is attempted.
pub const SUBGROUP_ORDER_LIMIT: usize = 64;

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::FromCayley { table, names } => {
            let names = names.clone().unwrap_or_else(|| (0..table.len()).map(|i| i.to_string()).collect());
            FiniteGroup::from_table(format!("G{}", table.len()), names, table.clone(), None)
        }
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Validation("cyclic group needs n >= 1".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let names = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_table(format!("C{n}"), names, table, None)
}

fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Validation("dihedral group needs n >= 1".into()));
    }
    // (f, k) = s^f r^k, stored at index f·n + k.
    let idx = |f: usize, k: usize| f * n + k;
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for f1 in 0..2 {
        for k1 in 0..n {
            for f2 in 0..2 {
                for k2 in 0..n {
                    let (f, k) = if f2 == 1 { ((f1 + 1) % 2, (k2 + n - k1) % n) } else { (f1, (k1 + k2) % n) };
                    table[idx(f1, k1)][idx(f2, k2)] = idx(f, k);
                }
            }
        }
    }
    let names = (0..2 * n)
        .map(|i| {
            let (f, k) = (i / n, i % n);
            match (f, k) {
                (0, 0) => "e".to_string(),
                (0, 1) => "r".to_string(),
                (0, k) => format!("r{k}"),
                (1, 0) => "s".to_string(),
                (1, 1) => "sr".to_string(),
                (_, k) => format!("sr{k}"),
            }
        })
        .collect();
    FiniteGroup::from_table(format!("D{n}"), names, table, None)
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations_of(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Cycle notation with 1-based letters, e.g. `(12)(34)`; the identity is `e`.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = perm[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Validation("symmetric group needs n >= 1".into()));
    }
    if n > 4 {
        return Err(Error::Unsupported(format!("symmetric({n}) is beyond the n <= 4 catalog")));
    }
    let mut perms = permutations_of(n);
    let moved = |p: &Vec<usize>| p.iter().enumerate().filter(|(i, v)| *i != **v).count();
    perms.sort_by(|a, b| moved(a).cmp(&moved(b)).then_with(|| cycle_notation(a).cmp(&cycle_notation(b))));
    let index_of = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
    // (στ)(i) = σ(τ(i))
    let table =
        perms.iter().map(|s| perms.iter().map(|t| index_of(&t.iter().map(|&i| s[i]).collect())).collect()).collect();
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_table(format!("S{n}"), names, table, Some(perms.clone()))
}

impl FiniteGroup {
    fn from_table(
        label: String,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        permutations: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("empty multiplication table".into()));
        }
        if names.len() != n {
            return Err(Error::Validation("one name per element required".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Validation("element names must be distinct".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!("row {a} has length {}", row.len())));
            }
            let set: BTreeSet<usize> = row.iter().copied().collect();
            if set.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Validation(format!("row {a} is not a permutation of the elements")));
            }
        }
        for b in 0..n {
            let set: BTreeSet<usize> = (0..n).map(|a| table[a][b]).collect();
            if set.len() != n {
                return Err(Error::Validation(format!("column {b} is not a permutation of the elements")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::Validation("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Validation(format!("table is not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse =
            (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("Latin rows contain the identity")).collect();
        Ok(Self { label, names, table, inverse, permutations })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `+1` or `−1` for permutation groups; `None` otherwise.
    pub fn sign(&self, a: usize) -> Option<f64> {
        let perm = &self.permutations.as_ref()?[a];
        let mut seen = vec![false; perm.len()];
        let mut transpositions = 0;
        for s in 0..perm.len() {
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        Some(if transpositions % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Whether `subset` is closed under products (which suffices for finite groups).
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || subset.iter().any(|&x| x >= self.order()) {
            return false;
        }
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let set: BTreeSet<usize> = subgroup.iter().copied().collect();
        (0..self.order()).all(|g| set.iter().all(|&h| set.contains(&self.mul(self.mul(g, h), self.inv(g)))))
    }

    fn check_limit(&self) -> Result<()> {
        if self.order() > SUBGROUP_ORDER_LIMIT {
            return Err(Error::Unsupported(format!("subgroup enumeration limited to order {SUBGROUP_ORDER_LIMIT}")));
        }
        Ok(())
    }

    fn closure(&self, mut bits: u64) -> u64 {
        bits |= 1;
        loop {
            let mut next = bits;
            for a in 0..self.order() {
                if bits >> a & 1 == 0 {
                    continue;
                }
                for b in 0..self.order() {
                    if bits >> b & 1 == 1 {
                        next |= 1 << self.mul(a, b);
                    }
                }
            }
            if next == bits {
                return bits;
            }
            bits = next;
        }
    }

    /// All subgroups, ordered by size and then by their sorted element lists.
    pub fn subgroups(&self) -> Result<Vec<Vec<usize>>> {
        self.check_limit()?;
        let n = self.order();
        let mut found: BTreeSet<u64> = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                found.insert(self.closure((1u64 << a) | (1u64 << b)));
            }
        }
        loop {
            let current: Vec<u64> = found.iter().copied().collect();
            let mut grew = false;
            for (i, &x) in current.iter().enumerate() {
                for &y in &current[i + 1..] {
                    if found.insert(self.closure(x | y)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> =
            found.into_iter().map(|bits| (0..n).filter(|&i| bits >> i & 1 == 1).collect()).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self.subgroups()?.into_iter().filter(|h| self.is_normal(h)).collect())
    }
}
