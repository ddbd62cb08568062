use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A permutation of `{0, .., d-1}` stored as its image array.
///
/// Composition follows the left-to-right convention of loop
/// concatenation: `a.then(b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(Error::InvalidInput(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
        }
    }

    /// Product of the given cycles (0-based points).
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p = Self::identity(d);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..d).collect();
            let mut seen = vec![false; d];
            for (k, &a) in cycle.iter().enumerate() {
                if a >= d || seen[a] {
                    return Err(Error::InvalidInput(format!("bad cycle {cycle:?} on {d} points")));
                }
                seen[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
            p = p.then(&Permutation { images });
        }
        Ok(p)
    }

    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..d).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` first, then `other`: `i ↦ other(self(i))`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut out = Self::identity(self.degree());
        for _ in 0..k % self.order() {
            out = out.then(self);
        }
        out
    }

    /// `g⁻¹ · self · g`, relabelling points through `g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] == i
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut out: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        out.extend(std::iter::repeat(1).take(self.degree() - moved));
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses 1-based cycle notation such as `"(1 2)(3 4)"` or `"()"`.
pub fn parse_cycles(text: &str, d: usize) -> Result<Permutation> {
    let bad = |msg: &str| Error::InvalidInput(format!("cycle notation `{text}`: {msg}"));
    let mut p = Permutation::identity(d);
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_end = rest.find(')').ok_or_else(|| bad("unclosed `(`"))?;
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| bad("expected `(`"))?
            .get(..inner_end - 1)
            .unwrap_or("");
        let points = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<usize>() {
                Ok(k) if (1..=d).contains(&k) => Ok(k - 1),
                _ => Err(bad("point out of range")),
            })
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            p = p.then(&Permutation::from_cycles(d, &[&points])?);
        }
        rest = rest[inner_end + 1..].trim_start();
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::transposition(4, 0, 1).cycle_type(), vec![2, 1, 1]);
        let c4 = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(c4.cycle_type(), vec![4]);
        assert_eq!(Permutation::identity(3).cycle_type(), vec![1, 1, 1]);
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::transposition(3, 1, 2);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
        assert!(a.then(&a).is_identity());
    }

    #[test]
    fn inverse_power_order() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(c.order(), 6);
        assert!(c.then(&c.inverse()).is_identity());
        assert_eq!(c.pow(3).cycle_type(), vec![2, 1, 1, 1]);
        assert!(c.pow(6).is_identity());
        assert!(!c.is_even());
        assert!(c.pow(2).is_even());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let p = parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(parse_cycles("(2 4 3)", 4).unwrap().images(), &[0, 3, 1, 2]);
        assert!(parse_cycles("(1 5)", 4).is_err());
        assert!(parse_cycles("(1 2", 4).is_err());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let p = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let g = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        assert_eq!(p.conjugate_by(&g).to_string(), "(3 4)");
    }
}
