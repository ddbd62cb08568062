use num_bigint::BigUint;
use num_traits::One;

use super::Permutation;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `point` to `b` for every `b` in the orbit.
    transversal: Vec<Option<Permutation>>,
}

/// A permutation group given by generators, with a base and strong
/// generating set built by the Schreier–Sims algorithm.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl GeneratedGroup {
    pub fn new(degree: usize, generators: &[Permutation]) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "group degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Dimension(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let mut group = GeneratedGroup {
            degree,
            generators: generators.to_vec(),
            strong: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        };
        group.schreier_sims();
        group.order = group
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        debug_assert!(
            (factorial(degree) % &group.order) == BigUint::from(0u32),
            "group order must divide d!"
        );
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (residue, level) = self.strip(g, 0);
            level == self.levels.len() && residue.is_identity()
        }
    }

    /// Orbit of `point` under the generators, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = vec![point];
        let mut k = 0;
        while k < queue.len() {
            let a = queue[k];
            k += 1;
            for g in &self.generators {
                let b = g.image(a);
                if !seen[b] {
                    seen[b] = true;
                    queue.push(b);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    fn level_generators(&self, l: usize) -> Vec<&Permutation> {
        let prefix: Vec<usize> = self.levels[..l].iter().map(|lv| lv.point).collect();
        self.strong
            .iter()
            .filter(|g| prefix.iter().all(|&b| g.fixes(b)))
            .collect()
    }

    fn rebuild_level(&mut self, l: usize) {
        let point = self.levels[l].point;
        let gens: Vec<Permutation> = self.level_generators(l).into_iter().cloned().collect();
        let mut transversal = vec![None; self.degree];
        transversal[point] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let a = orbit[k];
            k += 1;
            for s in &gens {
                let b = s.image(a);
                if transversal[b].is_none() {
                    let u = transversal[a].as_ref().expect("orbit point").then(s);
                    transversal[b] = Some(u);
                    orbit.push(b);
                }
            }
        }
        self.levels[l].orbit = orbit;
        self.levels[l].transversal = transversal;
    }

    fn push_base_point(&mut self, g: &Permutation) {
        let point = (0..self.degree)
            .find(|&i| !g.fixes(i))
            .expect("non-identity permutation");
        self.levels.push(Level {
            point,
            orbit: vec![point],
            transversal: Vec::new(),
        });
    }

    /// Sifts `g` through the levels from `from` on; returns the residue
    /// and the level where sifting stopped (`levels.len()` if it passed).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for l in from..self.levels.len() {
            let b = g.image(self.levels[l].point);
            match &self.levels[l].transversal[b] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        for g in self.generators.clone() {
            if g.is_identity() || self.strong.contains(&g) {
                continue;
            }
            if self.levels.iter().all(|l| g.fixes(l.point)) {
                self.push_base_point(&g);
            }
            self.strong.push(g);
        }
        for l in 0..self.levels.len() {
            self.rebuild_level(l);
        }
        let mut i = self.levels.len() as isize - 1;
        'levels: while i >= 0 {
            let l = i as usize;
            let gens: Vec<Permutation> = self.level_generators(l).into_iter().cloned().collect();
            let orbit = self.levels[l].orbit.clone();
            for &b in &orbit {
                let ub = self.levels[l].transversal[b].clone().expect("orbit point");
                for x in &gens {
                    let xb = x.image(b);
                    let uxb = self.levels[l].transversal[xb].as_ref().expect("orbit point");
                    let h = ub.then(x).then(&uxb.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(&h, l + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        if j == self.levels.len() {
                            self.push_base_point(&y);
                        }
                        self.strong.push(y);
                        for m in l + 1..=j {
                            self.rebuild_level(m);
                        }
                        i = j as isize;
                        continue 'levels;
                    }
                }
            }
            i -= 1;
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Primitivity test by block closure of every pair `{0, k}`. For an
    /// imprimitive transitive group the second component is a nontrivial
    /// block system with the smallest blocks found.
    pub fn primitivity(&self) -> (bool, Option<Vec<Vec<usize>>>) {
        if !self.is_transitive() {
            return (false, None);
        }
        let mut best: Option<Vec<Vec<usize>>> = None;
        for k in 1..self.degree {
            let blocks = self.minimal_block(k);
            if blocks.len() > 1 && best.as_ref().is_none_or(|b| blocks[0].len() < b[0].len()) {
                best = Some(blocks);
            }
        }
        (best.is_none(), best)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitivity().0
    }

    /// Finest block system in which `0` and `k` share a block.
    fn minimal_block(&self, k: usize) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        let mut queue = vec![(0usize, k)];
        parent[k] = 0;
        while let Some((a, b)) = queue.pop() {
            for g in &self.generators {
                let ra = find(&mut parent, g.image(a));
                let rb = find(&mut parent, g.image(b));
                if ra != rb {
                    let (lo, hi) = (ra.min(rb), ra.max(rb));
                    parent[hi] = lo;
                    queue.push((lo, hi));
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.degree];
        for a in 0..self.degree {
            let r = find(&mut parent, a);
            if index[r] == usize::MAX {
                index[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[index[r]].push(a);
        }
        classes
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Exact test: every transposition is sifted through the stabiliser chain.
    pub fn contains_transposition(&self) -> bool {
        (0..self.degree).any(|a| {
            (a + 1..self.degree).any(|b| self.contains(&Permutation::transposition(self.degree, a, b)))
        })
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn group(d: usize, gens: &[Permutation]) -> GeneratedGroup {
        GeneratedGroup::new(d, gens).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        let s4 = group(4, &[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]);
        assert_eq!(s4.order(), &BigUint::from(24u32));
        let c4 = group(4, &[cyc(4, &[&[0, 1, 2, 3]])]);
        assert_eq!(c4.order(), &BigUint::from(4u32));
        let klein = group(4, &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]);
        assert_eq!(klein.order(), &BigUint::from(4u32));
        let a4 = group(4, &[cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]);
        assert_eq!(a4.order(), &BigUint::from(12u32));
        let trivial = group(3, &[]);
        assert_eq!(trivial.order(), &BigUint::from(1u32));
    }

    #[test]
    fn large_symmetric_group() {
        let d = 12;
        let cycle: Vec<usize> = (0..d).collect();
        let g = group(d, &[cyc(d, &[&[0, 1]]), cyc(d, &[&cycle])]);
        assert_eq!(g.order(), &factorial(d));
    }

    #[test]
    fn membership() {
        let a4 = group(4, &[cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]);
        assert!(a4.contains(&cyc(4, &[&[0, 1], &[2, 3]])));
        assert!(!a4.contains(&cyc(4, &[&[0, 1]])));
        assert!(!a4.contains_transposition());
        let d4 = group(4, &[cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])]);
        assert!(d4.contains_transposition());
        assert_eq!(d4.order(), &BigUint::from(8u32));
    }

    #[test]
    fn transitivity_and_blocks() {
        let s4 = group(4, &[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]);
        assert!(s4.is_transitive() && s4.is_primitive());
        let c4 = group(4, &[cyc(4, &[&[0, 1, 2, 3]])]);
        let (prim, blocks) = c4.primitivity();
        assert!(c4.is_transitive() && !prim);
        assert_eq!(blocks.unwrap(), vec![vec![0, 2], vec![1, 3]]);
        let t = group(3, &[cyc(3, &[&[0, 1]])]);
        assert!(!t.is_transitive());
        let c5 = group(5, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        assert!(c5.is_primitive());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        assert!(GeneratedGroup::new(4, &[Permutation::identity(3)]).is_err());
        assert!(GeneratedGroup::new(65, &[]).is_err());
    }
}
