//! Permutations and permutation groups with a stabilizer chain.
//!
//! The chain (base points, orbits, transversals) gives the exact group order
//! as the product of orbit sizes and a membership test by sifting. The
//! construction is the classic deterministic incremental one: every Schreier
//! generator of a level is sifted through the deeper levels until all residues
//! vanish.

use std::collections::HashMap;
use std::fmt;

use num::BigUint;
use num::One;

/// A permutation of `0..degree`, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm { images })
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from >= degree || touched[from] {
                    return None;
                }
                touched[from] = true;
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Perm { images }
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &im)| i != im)
            .map(|(i, _)| i)
    }

    /// Cycle notation over arbitrary point names.
    pub fn to_cycles_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push('(');
            out.push_str(&cycle.iter().map(|&p| name(p)).collect::<Vec<_>>().join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles_with(|p| p.to_string()))
    }
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    transversal: HashMap<usize, Perm>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(base, Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn recompute_orbit_in(&mut self, degree: usize) {
        self.orbit = vec![self.base];
        self.transversal.clear();
        self.transversal.insert(self.base, Perm::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            let t_p = self.transversal[&p].clone();
            for g in &self.gens {
                let q = g.apply(p);
                if let std::collections::hash_map::Entry::Vacant(e) = self.transversal.entry(q) {
                    e.insert(t_p.then(g));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A permutation group given by generators, with a stabilizer chain.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Self {
        let mut group = PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            assert_eq!(g.degree(), degree);
            group.add_generator(g);
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Exact order: the product of the orbit sizes along the chain.
    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
        }
        order
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.strip(0, g.clone()).1.is_identity()
    }

    pub fn add_generator(&mut self, g: Perm) {
        if g.is_identity() || self.contains(&g) {
            return;
        }
        self.generators.push(g.clone());
        let (stuck, residue) = self.strip(0, g);
        let stuck = self.install(0, stuck, residue);
        self.verify_from(stuck);
    }

    /// Sifts `g` through the transversals from level `from` on; returns the
    /// first level whose orbit cannot absorb the residue (or the level count)
    /// together with the residue, which then fixes all earlier base points.
    fn strip(&self, from: usize, mut g: Perm) -> (usize, Perm) {
        for i in from..self.levels.len() {
            let level = &self.levels[i];
            let image = g.apply(level.base);
            if image == level.base {
                continue;
            }
            match level.transversal.get(&image) {
                None => return (i, g),
                Some(t) => g = g.then(&t.inverse()),
            }
        }
        (self.levels.len(), g)
    }

    /// Adds a stripped residue to the generator lists of levels
    /// `from ..= stuck` (creating a new final level when needed) and rebuilds
    /// their orbits. The residue fixes the base points of all levels below
    /// `stuck`, so it qualifies for each of those lists.
    fn install(&mut self, from: usize, stuck: usize, residue: Perm) -> usize {
        debug_assert!(!residue.is_identity());
        if stuck == self.levels.len() {
            let base = residue
                .first_moved_point()
                .expect("residue is not the identity");
            self.levels.push(Level::new(self.degree, base));
        }
        for level in &mut self.levels[from..=stuck] {
            level.gens.push(residue.clone());
            level.recompute_orbit_in(self.degree);
        }
        stuck
    }

    /// Re-establishes, from `start` upward, that every Schreier generator of
    /// each level sifts to the identity through the deeper levels; failures
    /// install the residue and resume at the deepest changed level.
    fn verify_from(&mut self, start: usize) {
        let mut current = start as isize;
        while current >= 0 {
            let i = current as usize;
            let orbit = self.levels[i].orbit.clone();
            let gens = self.levels[i].gens.clone();
            let mut clean = true;
            'scan: for &p in &orbit {
                let t_p = self.levels[i].transversal[&p].clone();
                for g in &gens {
                    let q = g.apply(p);
                    let t_q_inv = self.levels[i].transversal[&q].inverse();
                    let schreier = t_p.then(g).then(&t_q_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (stuck, residue) = self.strip(i + 1, schreier);
                    if residue.is_identity() {
                        continue;
                    }
                    current = self.install(i + 1, stuck, residue) as isize;
                    clean = false;
                    break 'scan;
                }
            }
            if clean {
                current -= 1;
            }
        }
    }

    pub fn to_json<F: Fn(usize) -> String>(&self, name: F) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "order": self.order().to_string(),
            "generators": self
                .generators
                .iter()
                .map(|g| g.to_cycles_with(&name))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order().to_string())
            .field("generators", &self.generators.len())
            .finish()
    }
}
