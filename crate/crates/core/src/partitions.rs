//! Partitions, `(p, q)`-hooks and their natural coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

/// The rank profile `(p, q)` of `gl(p|q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    pub p: usize,
    pub q: usize,
}

impl Profile {
    pub fn new(p: usize, q: usize) -> Self {
        Profile { p, q }
    }

    pub fn nvars(&self) -> usize {
        self.p + self.q
    }
}

/// Bosonic and fermionic coordinates of a hook.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NaturalCoords {
    pub b: Vec<i64>,
    pub f: Vec<i64>,
}

impl NaturalCoords {
    pub fn concat(&self) -> Vec<i64> {
        self.b.iter().chain(&self.f).copied().collect()
    }
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Rejects increasing parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("{parts:?} has interior zeros")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The hook `(a, 1^b)`.
    pub fn hook(a: u32, b: u32) -> Self {
        let mut v = vec![a];
        v.extend(std::iter::repeat_n(1, b as usize));
        Partition::new(v).expect("hook shape")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The `i`-th part, 1-based, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let n = self.part(1) as usize;
        Partition((1..=n).map(|j| self.0.iter().filter(|&&x| x as usize >= j).count() as u32).collect())
    }

    /// Boxes `(i, j)`, 1-based, in row-major order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (1..=r as usize).map(move |j| (i + 1, j)))
            .collect()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub fn is_hook(lambda: &Partition, prof: Profile) -> bool {
    lambda.part(prof.p + 1) as usize <= prof.q
}

fn require_hook(lambda: &Partition, prof: Profile) -> Result<()> {
    if is_hook(lambda, prof) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{lambda} is not a ({},{})-hook", prof.p, prof.q)))
    }
}

/// `(lambda_1..lambda_p | <lambda'_j - p>)` with `<t> = max(t, 0)`.
pub fn lambda_natural(lambda: &Partition, prof: Profile) -> Result<NaturalCoords> {
    require_hook(lambda, prof)?;
    let t = lambda.transpose();
    Ok(NaturalCoords {
        b: (1..=prof.p).map(|i| lambda.part(i) as i64).collect(),
        f: (1..=prof.q).map(|j| (t.part(j) as i64 - prof.p as i64).max(0)).collect(),
    })
}

/// All partitions of `n`, parts in lexicographic order of the part list.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in 1..=n.min(max) {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Hooks of size at most `d`, ordered by size and then lexicographically.
pub fn enumerate_hooks(prof: Profile, d: u32) -> Vec<Partition> {
    (0..=d).flat_map(|n| hooks_of_size(prof, n)).collect()
}

pub fn hooks_of_size(prof: Profile, n: u32) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|l| is_hook(l, prof)).collect()
}

/// Young-diagram containment `mu ⊆ lambda`.
pub fn contains(lambda: &Partition, mu: &Partition) -> bool {
    mu.len() <= lambda.len() && mu.0.iter().zip(&lambda.0).all(|(m, l)| m <= l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn natural_coords() {
        let c = lambda_natural(&p(&[3, 1, 1]), Profile::new(1, 1)).unwrap();
        assert_eq!(c, NaturalCoords { b: vec![3], f: vec![2] });
        let c = lambda_natural(&p(&[2, 1]), Profile::new(2, 1)).unwrap();
        assert_eq!(c, NaturalCoords { b: vec![2, 1], f: vec![0] });
        assert!(lambda_natural(&p(&[2, 2]), Profile::new(1, 1)).is_err());
    }

    #[test]
    fn hook_counts_for_one_one() {
        let counts: Vec<usize> = (0..=3).map(|d| enumerate_hooks(Profile::new(1, 1), d).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 7]);
        assert_eq!(
            enumerate_hooks(Profile::new(1, 1), 2),
            vec![p(&[]), p(&[1]), p(&[1, 1]), p(&[2])]
        );
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn transpose_and_contains() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert!(contains(&p(&[3, 1]), &p(&[2, 1])));
        assert!(!contains(&p(&[3]), &p(&[1, 1])));
        assert!(contains(&p(&[1]), &p(&[])));
    }

    #[test]
    fn parse_display() {
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[2, 1]).to_string(), "(2,1)");
        assert!("1,2".parse::<Partition>().is_err());
    }
}
