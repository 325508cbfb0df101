//! Finite groups given by multiplication tables, and the left-coset
//! bookkeeping for a fine subgroup.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite group on element indices `0..n`; `table[a][b]` is the index of `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a table: square, in range, Latin, with identity, inverses
    /// and associativity (checked on all triples).
    pub fn validate(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::BadTable("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::BadTable(format!("table must be {n}x{n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::BadTable(format!("index {bad} out of range")));
        }
        let distinct = |it: &mut dyn Iterator<Item = usize>| it.collect::<BTreeSet<_>>().len() == n;
        for (i, row) in table.iter().enumerate() {
            if !distinct(&mut row.iter().copied()) {
                return Err(Error::NotLatinSquare(format!("row {i}")));
            }
        }
        for j in 0..n {
            if !distinct(&mut (0..n).map(|i| table[i][j])) {
                return Err(Error::NotLatinSquare(format!("column {j}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(Error::NoIdentity)?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NoInverse(labels[a].clone()))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative(
                            labels[a].clone(),
                            labels[b].clone(),
                            labels[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup { labels, table, identity, inverses })
    }

    /// The trivial group `{e}`.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z_n` on labels `"0".."n-1"` with addition mod n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::validate(labels, table).expect("cyclic table is a group")
    }

    /// `Z_2` labelled `e, u`.
    pub fn z2() -> Self {
        Self::validate(vec!["e".into(), "u".into()], vec![vec![0, 1], vec![1, 0]]).expect("Z2")
    }

    /// `S_3` as permutations of `{1,2,3}` composed right to left:
    /// `(pq)(i) = p(q(i))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        Self::validate(labels.iter().map(|s| s.to_string()).collect(), table).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
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

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&self.identity)
            && s.iter().all(|&a| s.contains(&self.inv(a)) && s.iter().all(|&b| s.contains(&self.mul(a, b))))
    }

    /// Left coset `gH`, sorted.
    pub fn left_coset(&self, g: usize, h: &[usize]) -> Vec<usize> {
        let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
        c.sort_unstable();
        c
    }
}

/// A fine subgroup `Gamma_1` with representatives `gamma_1 = e, ..., gamma_p`
/// whose left cosets partition the support `Gamma \ Gamma_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineSubgroupData {
    gamma1: Vec<usize>,
    gamma0: Vec<usize>,
    reps: Vec<usize>,
    classes: Vec<Vec<usize>>,
    coset_of: Vec<Option<usize>>,
}

/// Splits `Gamma \ Gamma_0` into left cosets of `gamma1`, choosing for each
/// coset its smallest element as representative (`e` for `Gamma_1` itself).
pub fn coset_decomposition(group: &FiniteGroup, gamma1: &[usize], gamma0: &[usize]) -> Result<FineSubgroupData> {
    let mut reps = Vec::new();
    let mut covered = BTreeSet::new();
    let zero: BTreeSet<usize> = gamma0.iter().copied().collect();
    check_gamma1(group, gamma1, &zero)?;
    for g in group.elements() {
        if zero.contains(&g) || covered.contains(&g) {
            continue;
        }
        reps.push(g);
        covered.extend(group.left_coset(g, gamma1));
    }
    FineSubgroupData::with_representatives(group, gamma1, gamma0, &reps)
}

fn check_gamma1(group: &FiniteGroup, gamma1: &[usize], zero: &BTreeSet<usize>) -> Result<()> {
    if gamma1.iter().any(|&g| g >= group.order()) {
        return Err(Error::NotASubgroup("index out of range".into()));
    }
    if !group.is_subgroup(gamma1) {
        return Err(Error::NotASubgroup(format!(
            "{{{}}}",
            gamma1.iter().map(|&g| group.label(g)).collect::<Vec<_>>().join(", ")
        )));
    }
    if zero.contains(&group.identity()) {
        return Err(Error::NotAUnionOfCosets("the identity lies in the zero set".into()));
    }
    Ok(())
}

impl FineSubgroupData {
    /// Builds the coset data for explicitly chosen representatives.
    pub fn with_representatives(
        group: &FiniteGroup,
        gamma1: &[usize],
        gamma0: &[usize],
        reps: &[usize],
    ) -> Result<Self> {
        let zero: BTreeSet<usize> = gamma0.iter().copied().collect();
        check_gamma1(group, gamma1, &zero)?;
        if reps.first() != Some(&group.identity()) {
            return Err(Error::Invalid("first coset representative must be e".into()));
        }
        let mut g1: Vec<usize> = gamma1.to_vec();
        g1.sort_unstable();
        g1.dedup();
        let mut coset_of = vec![None; group.order()];
        let mut classes = Vec::new();
        for (k, &r) in reps.iter().enumerate() {
            let class = group.left_coset(r, &g1);
            for &g in &class {
                if zero.contains(&g) {
                    return Err(Error::NotAUnionOfCosets(format!(
                        "coset {}Gamma_1 meets the zero set at {}",
                        group.label(r),
                        group.label(g)
                    )));
                }
                if coset_of[g].is_some() {
                    return Err(Error::Invalid(format!("representatives {} overlap", group.label(r))));
                }
                coset_of[g] = Some(k);
            }
            classes.push(class);
        }
        if let Some(g) = group.elements().find(|g| coset_of[*g].is_none() && !zero.contains(g)) {
            return Err(Error::NotAUnionOfCosets(format!("{} is not covered", group.label(g))));
        }
        let mut z: Vec<usize> = zero.into_iter().collect();
        z.sort_unstable();
        Ok(FineSubgroupData { gamma1: g1, gamma0: z, reps: reps.to_vec(), classes, coset_of })
    }

    pub fn gamma1(&self) -> &[usize] {
        &self.gamma1
    }

    pub fn gamma0(&self) -> &[usize] {
        &self.gamma0
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep(&self, k: usize) -> usize {
        self.reps[k]
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn class(&self, k: usize) -> &[usize] {
        &self.classes[k]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Index `k` of the coset containing `g`, `None` for `g` in `Gamma_0`.
    pub fn coset_of(&self, g: usize) -> Option<usize> {
        self.coset_of[g]
    }

    pub fn in_gamma0(&self, g: usize) -> bool {
        self.coset_of[g].is_none()
    }

    pub fn in_gamma1(&self, g: usize) -> bool {
        self.gamma1.binary_search(&g).is_ok()
    }

    /// The unique `(k, beta)` with `g = gamma_k beta`, `beta` in `Gamma_1`.
    pub fn locate(&self, group: &FiniteGroup, g: usize) -> Option<(usize, usize)> {
        let k = self.coset_of[g]?;
        Some((k, group.mul(group.inv(self.reps[k]), g)))
    }
}
