//! Exhaustive evaluation of the defining formulas on a raw order matrix.
//! Uses nothing from the checkers: only the relation, the bounds and the
//! ortho map are read from the lattice.

use qlat::lattice::FiniteOrtholattice;

pub struct Raw {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub bottom: usize,
    pub top: usize,
    pub ortho: Option<Vec<usize>>,
}

impl Raw {
    pub fn of(l: &FiniteOrtholattice) -> Self {
        let n = l.len();
        Raw {
            n,
            leq: (0..n).map(|a| (0..n).map(|b| l.leq(a, b)).collect()).collect(),
            bottom: l.bottom(),
            top: l.top(),
            ortho: l.ortho().map(<[usize]>::to_vec),
        }
    }

    fn all(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn is_lattice(&self) -> bool {
        let r = &self.leq;
        let po = self.all().all(|a| r[a][a])
            && self.all().all(|a| self.all().all(|b| a == b || !(r[a][b] && r[b][a])))
            && self.all().all(|a| self.all().all(|b| self.all().all(|c| !(r[a][b] && r[b][c]) || r[a][c])));
        po && self.all().all(|x| r[self.bottom][x] && r[x][self.top])
            && self.all().all(|a| self.all().all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some()))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = self.all().filter(|&x| self.leq[x][a] && self.leq[x][b]).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&x| self.leq[x][g]))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = self.all().filter(|&x| self.leq[a][x] && self.leq[b][x]).collect();
        upper.iter().copied().find(|&g| upper.iter().all(|&x| self.leq[g][x]))
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.meet(a, b).expect("lattice")
    }

    fn j(&self, a: usize, b: usize) -> usize {
        self.join(a, b).expect("lattice")
    }

    fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.all()
            .filter(|&x| self.lt(self.bottom, x) && !self.all().any(|y| self.lt(self.bottom, y) && self.lt(y, x)))
            .collect()
    }

    /// `a'' = a`, `a ≤ b ⇒ b' ≤ a'`, `a ∧ a' = 0`.
    pub fn ortho_ok(&self) -> Option<bool> {
        let o = self.ortho.as_ref()?;
        Some(self.all().all(|a| {
            o[o[a]] == a
                && self.m(a, o[a]) == self.bottom
                && self.all().all(|b| !self.leq[a][b] || self.leq[o[b]][o[a]])
        }))
    }

    pub fn atomic(&self) -> bool {
        let atoms = self.atoms();
        self.all().filter(|&x| x != self.bottom).all(|x| atoms.iter().any(|&p| self.leq[p][x]))
    }

    /// Atom `a`, `a ∧ b = 0`, `b < c < a ∨ b` never happens.
    pub fn covering(&self) -> bool {
        self.atoms().into_iter().all(|a| {
            self.all().filter(|&b| self.m(a, b) == self.bottom).all(|b| {
                let ab = self.j(a, b);
                !self.all().any(|c| self.lt(b, c) && self.lt(c, ab))
            })
        })
    }

    /// `a ≤ b ⇒ (a ∨ b') ∧ b = a`.
    pub fn weakly_modular(&self) -> Option<bool> {
        let o = self.ortho.as_ref()?;
        Some(self.all().all(|a| self.all().filter(|&b| self.leq[a][b]).all(|b| self.m(self.j(a, o[b]), b) == a)))
    }
}
