//! Finite groups given by Cayley tables.

use crate::{Error, Result};

/// A finite group on the element indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates a Cayley table (`table[a][b] = a·b`) and derives identity and
    /// inverses.
    pub fn from_cayley(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty element list".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("Cayley table must be {n}×{n}")));
        }
        for (a, row) in table.iter().enumerate() {
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!(
                    "entry {bad} in row {} is not an element",
                    labels[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| {
                    Error::InvalidGroup(format!("element {} has no inverse", labels[a]))
                })?;
            inverse.push(inv);
        }
        Ok(Self {
            name: name.into(),
            labels,
            table,
            inverse,
            identity,
        })
    }

    /// Cyclic group `Z_n` with elements `e, a, a^2, …`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("Z_0 is not a group".into()));
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                _ => format!("a{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_cayley(format!("Z{n}"), labels, table)
    }

    /// Symmetric group on three letters. Elements are `r^k s^m` with `r` a
    /// 3-cycle and `s` a transposition, indexed `k + 3m`.
    pub fn symmetric3() -> Result<Self> {
        // permutations of {0,1,2} as images
        let perms: Vec<[usize; 3]> = {
            let r = [1, 2, 0];
            let s = [1, 0, 2];
            let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
            let id = [0, 1, 2];
            let r2 = compose(r, r);
            let rs = compose(r, s);
            let r2s = compose(r2, s);
            vec![id, r, r2, s, rs, r2s]
        };
        let labels = ["e", "r", "r2", "s", "rs", "r2s"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|&p| {
                perms
                    .iter()
                    .map(|&q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        Self::from_cayley("S3", labels, table)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Result<Self> {
        // unit quaternion basis products: (unit index, sign)
        // units: 0 = 1, 1 = i, 2 = j, 3 = k
        fn unit_mul(a: usize, b: usize) -> (usize, bool) {
            const T: [[(usize, bool); 4]; 4] = [
                [(0, false), (1, false), (2, false), (3, false)],
                [(1, false), (0, true), (3, false), (2, true)],
                [(2, false), (3, true), (0, true), (1, false)],
                [(3, false), (2, false), (1, true), (0, true)],
            ];
            T[a][b]
        }
        // element index = unit + 4 * negative
        let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (u, neg) = unit_mul(x % 4, y % 4);
                        let sign = neg ^ (x >= 4) ^ (y >= 4);
                        u + if sign { 4 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        Self::from_cayley("Q8", labels, table)
    }

    /// Built-in groups: `Z2`, `Z3`, `Z4`, `S3`, `Q8`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "Z2" => Self::cyclic(2),
            "Z3" => Self::cyclic(3),
            "Z4" => Self::cyclic(4),
            "S3" => Self::symmetric3(),
            "Q8" => Self::quaternion(),
            other => Err(Error::InvalidGroup(format!(
                "unknown built-in group `{other}`"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a^k` for a small signed exponent.
    pub fn pow(&self, a: usize, k: i32) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.commute(a, b)))
    }

    /// `g a g^{-1}`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }
}
