//! Permutations of `{0,…,p}` with composition, Lehmer ranking, and cycle
//! notation. The machine encoding only ever multiplies by transpositions
//! `τ_{0,j}`, but the group algebra is closed under arbitrary elements.

use std::fmt;

/// A bijection on `{0,…,size-1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation { images: (0..size as u8).collect() }
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(size: usize, a: u8, b: u8) -> Self {
        let mut images: Vec<u8> = (0..size as u8).collect();
        images.swap(a as usize, b as usize);
        Permutation { images }
    }

    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if (i as usize) >= images.len() || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Permutation { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u8 == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.size(), other.size());
        Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Lehmer rank in `0..size!`.
    pub fn rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn unrank(size: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0usize; size];
        for i in (0..size).rev() {
            let base = size - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..size as u8).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u8 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_is_self_inverse() {
        let t = Permutation::transposition(3, 0, 2);
        assert_eq!(t.compose(&t), Permutation::identity(3));
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn composition_is_associative() {
        let a = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let b = Permutation::transposition(3, 0, 1);
        let c = Permutation::transposition(3, 1, 2);
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let t01 = Permutation::transposition(3, 0, 1);
        let t12 = Permutation::transposition(3, 1, 2);
        // (t01 ∘ t12)(2) = t01(1) = 0
        assert_eq!(t01.compose(&t12).apply(2), 0);
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for size in 1..=5 {
            let fact: usize = (1..=size).product();
            for r in 0..fact {
                let p = Permutation::unrank(size, r);
                assert_eq!(p.rank(), r, "size {size} rank {r}");
            }
        }
    }

    #[test]
    fn identity_has_rank_zero() {
        assert_eq!(Permutation::identity(4).rank(), 0);
        assert!(Permutation::unrank(4, 0).is_identity());
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(Permutation::identity(3).to_string(), "id");
        assert_eq!(Permutation::transposition(3, 0, 2).to_string(), "(0 2)");
        assert_eq!(
            Permutation::from_images(vec![1, 2, 0]).unwrap().to_string(),
            "(0 1 2)"
        );
    }
}
