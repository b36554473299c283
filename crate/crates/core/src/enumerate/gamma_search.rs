//! Exhaustive search for all skew braces with a given circ group, by
//! assigning the γ-images of circ generators one cell at a time.
//!
//! A partial γ is stored as `gam[x][y] = γ_x(y)` plus its inverse. Because
//! `x · γ_x(y) = x ∘ y`, every known cell `γ_x(w) = z` also fixes a cell of the
//! dot table: `x · z = x ∘ w`. Propagation applies four necessary conditions
//! to fixpoint, inferring new cells where they are forced:
//!
//! - `γ_{x∘h} = γ_x γ_h`
//! - the dot table is a Latin square
//! - the dot table is associative
//! - every `γ_x` is a dot automorphism
//!
//! Leaves are validated with [`SkewBrace::new`], so pruning never has to be
//! sufficient, only necessary.

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::brace::SkewBrace;
use crate::group::FiniteGroup;

const UNSET: usize = usize::MAX;

struct Conflict;

#[derive(Clone)]
struct Cells {
    n: usize,
    gam: Vec<usize>,
    pre: Vec<usize>,
}

impl Cells {
    fn new(n: usize) -> Self {
        let mut cells = Cells {
            n,
            gam: vec![UNSET; n * n],
            pre: vec![UNSET; n * n],
        };
        for x in 0..n {
            cells.gam[x * n] = 0;
            cells.pre[x * n] = 0;
        }
        for y in 0..n {
            cells.gam[y] = y;
            cells.pre[y] = y;
        }
        cells
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> usize {
        self.gam[x * self.n + y]
    }

    #[inline]
    fn preimage(&self, x: usize, z: usize) -> usize {
        self.pre[x * self.n + z]
    }

    /// Records `γ_x(y) = z`; returns whether anything changed.
    #[inline]
    fn set(&mut self, x: usize, y: usize, z: usize) -> Result<bool, Conflict> {
        let i = x * self.n;
        let cur = self.gam[i + y];
        if cur == z {
            return Ok(false);
        }
        if cur != UNSET || self.pre[i + z] != UNSET {
            return Err(Conflict);
        }
        self.gam[i + y] = z;
        self.pre[i + z] = y;
        Ok(true)
    }

    fn row_complete(&self, x: usize) -> bool {
        self.gam[x * self.n..(x + 1) * self.n]
            .iter()
            .all(|&v| v != UNSET)
    }
}

struct Search<'a> {
    circ: &'a FiniteGroup,
    n: usize,
    gens: Vec<usize>,
    seed: Option<u64>,
    found: Vec<SkewBrace>,
}

impl<'a> Search<'a> {
    /// Dot cell `x · z`, if known.
    #[inline]
    fn dot(&self, c: &Cells, x: usize, z: usize) -> usize {
        let w = c.preimage(x, z);
        if w == UNSET {
            UNSET
        } else {
            self.circ.op(x, w)
        }
    }

    /// Records `x · z = t`, i.e. `γ_x(x̄ ∘ t) = z`.
    #[inline]
    fn set_dot(&self, c: &mut Cells, x: usize, z: usize, t: usize) -> Result<bool, Conflict> {
        c.set(x, self.circ.op(self.circ.inv(x), t), z)
    }

    fn propagate(&self, c: &mut Cells) -> Result<(), Conflict> {
        let n = self.n;
        loop {
            let mut changed = false;

            for x in 0..n {
                for h in 1..n {
                    let xh = self.circ.op(x, h);
                    for y in 1..n {
                        let w = c.get(h, y);
                        if w != UNSET {
                            let z = c.get(x, w);
                            if z != UNSET {
                                changed |= c.set(xh, y, z)?;
                            } else {
                                let z = c.get(xh, y);
                                if z != UNSET {
                                    changed |= c.set(x, w, z)?;
                                }
                            }
                        } else {
                            let z = c.get(xh, y);
                            if z != UNSET {
                                let w = c.preimage(x, z);
                                if w != UNSET {
                                    changed |= c.set(h, y, w)?;
                                }
                            }
                        }
                    }
                }
            }

            // Latin columns: x ↦ x · z is injective.
            let mut seen = vec![UNSET; n];
            for z in 1..n {
                seen.iter_mut().for_each(|s| *s = UNSET);
                for x in 0..n {
                    let t = self.dot(c, x, z);
                    if t != UNSET {
                        if seen[t] != UNSET {
                            return Err(Conflict);
                        }
                        seen[t] = x;
                    }
                }
            }

            // associativity: (x·y)·z = x·(y·z)
            for x in 1..n {
                for y in 1..n {
                    let u = self.dot(c, x, y);
                    if u == UNSET {
                        continue;
                    }
                    for z in 1..n {
                        let v = self.dot(c, y, z);
                        if v == UNSET {
                            continue;
                        }
                        let lhs = self.dot(c, u, z);
                        let rhs = self.dot(c, x, v);
                        match (lhs == UNSET, rhs == UNSET) {
                            (false, false) => {
                                if lhs != rhs {
                                    return Err(Conflict);
                                }
                            }
                            (false, true) => changed |= self.set_dot(c, x, v, lhs)?,
                            (true, false) => changed |= self.set_dot(c, u, z, rhs)?,
                            (true, true) => {}
                        }
                    }
                }
            }

            // γ_x(y · z) = γ_x(y) · γ_x(z)
            for x in 1..n {
                for y in 1..n {
                    let a = c.get(x, y);
                    if a == UNSET {
                        continue;
                    }
                    for z in 1..n {
                        let b = c.get(x, z);
                        let d = self.dot(c, y, z);
                        if b == UNSET || d == UNSET {
                            continue;
                        }
                        let lhs = c.get(x, d);
                        let rhs = self.dot(c, a, b);
                        match (lhs == UNSET, rhs == UNSET) {
                            (false, false) => {
                                if lhs != rhs {
                                    return Err(Conflict);
                                }
                            }
                            (false, true) => changed |= self.set_dot(c, a, b, lhs)?,
                            (true, false) => changed |= c.set(x, d, rhs)?,
                            (true, true) => {}
                        }
                    }
                }
            }

            // a row with one gap is forced
            for x in 1..n {
                let row = &c.gam[x * n..(x + 1) * n];
                let mut gaps = row.iter().enumerate().filter(|(_, &v)| v == UNSET);
                if let (Some((y, _)), None) = (gaps.next(), gaps.next()) {
                    let z = (0..n)
                        .find(|&z| c.preimage(x, z) == UNSET)
                        .ok_or(Conflict)?;
                    changed |= c.set(x, y, z)?;
                }
            }

            if !changed {
                return Ok(());
            }
        }
    }

    fn next_cell(&self, c: &Cells) -> Option<(usize, usize)> {
        let n = self.n;
        for &g in &self.gens {
            if let Some(y) = (1..n).find(|&y| c.get(g, y) == UNSET) {
                return Some((g, y));
            }
        }
        (1..n)
            .flat_map(|x| (1..n).map(move |y| (x, y)))
            .find(|&(x, y)| c.get(x, y) == UNSET)
    }

    fn run(&mut self, c: Cells, depth: usize) {
        let Some((x, y)) = self.next_cell(&c) else {
            self.leaf(&c);
            return;
        };
        let mut values: Vec<usize> = (1..self.n).filter(|&z| c.preimage(x, z) == UNSET).collect();
        if depth == 0 {
            if let Some(seed) = self.seed {
                values.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            }
        }
        for z in values {
            let mut next = c.clone();
            if next.set(x, y, z).is_err() || self.propagate(&mut next).is_err() {
                continue;
            }
            self.run(next, depth + 1);
        }
    }

    fn leaf(&mut self, c: &Cells) {
        let n = self.n;
        debug_assert!((0..n).all(|x| c.row_complete(x)));
        let table: Vec<usize> = (0..n * n).map(|i| self.dot(c, i / n, i % n)).collect();
        let Ok(dot) = FiniteGroup::from_flat(n, table) else {
            return;
        };
        if let Ok(brace) = SkewBrace::new(dot, self.circ.clone()) {
            assert_eq!(brace.gamma().images().len(), n);
            for x in 0..n {
                assert_eq!(brace.gamma().get(x).as_slice(), &c.gam[x * n..(x + 1) * n]);
            }
            self.found.push(brace);
        }
    }
}

/// Every skew brace whose circ group is `circ`, sorted by dot table.
///
/// `seed` only permutes the order in which the first branch is explored.
pub(crate) fn search(circ: &FiniteGroup, seed: Option<u64>) -> Vec<SkewBrace> {
    let n = circ.n();
    let mut search = Search {
        circ,
        n,
        gens: circ.generators(),
        seed,
        found: Vec::new(),
    };
    let mut start = Cells::new(n);
    if search.propagate(&mut start).is_ok() {
        search.run(start, 0);
    }
    let mut found = search.found;
    found.sort_by(|a, b| a.dot().flat().cmp(b.dot().flat()));
    found.dedup();
    found
}
