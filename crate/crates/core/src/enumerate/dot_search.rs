//! A second, independent search for all skew braces on a fixed circ group,
//! working on dot tables instead of γ.
//!
//! The rows of a dot table are the left translations `L_x(y) = x · y`. They
//! form a regular subgroup of `Perm(G)` with `L_x(0) = x`, and the triple is a
//! skew brace exactly when that subgroup is normalized by the circ left
//! translations. The search fixes one row at a time, always for the smallest
//! element not yet reached, and closes the known rows under composition and
//! conjugation by circ translations. Any closure that stops being
//! semiregular is discarded.

use crate::brace::SkewBrace;
use crate::group::FiniteGroup;

type Row = Vec<usize>;

struct Search<'a> {
    circ: &'a FiniteGroup,
    n: usize,
    lambda: Vec<Row>,
    lambda_inv: Vec<Row>,
    found: Vec<SkewBrace>,
}

impl<'a> Search<'a> {
    fn compose(p: &Row, q: &Row) -> Row {
        q.iter().map(|&x| p[x]).collect()
    }

    /// Adds `seed` to the known rows and closes; `None` if the closure is not
    /// semiregular.
    fn close(&self, rows: &[Option<Row>], seed: Row) -> Option<Vec<Option<Row>>> {
        let mut rows = rows.to_vec();
        let mut queue = vec![seed];
        while let Some(e) = queue.pop() {
            let p = e[0];
            match &rows[p] {
                Some(existing) if *existing == e => continue,
                Some(_) => return None,
                None => {}
            }
            if p != 0 && e.iter().enumerate().any(|(x, &y)| x == y) {
                return None;
            }
            let known: Vec<Row> = rows.iter().flatten().cloned().collect();
            for k in &known {
                queue.push(Self::compose(&e, k));
                queue.push(Self::compose(k, &e));
            }
            queue.push(Self::compose(&e, &e));
            for (l, li) in self.lambda.iter().zip(&self.lambda_inv) {
                queue.push(Self::compose(l, &Self::compose(&e, li)));
            }
            rows[p] = Some(e);
        }
        Some(rows)
    }

    fn run(&mut self, rows: Vec<Option<Row>>) {
        let Some(p) = rows.iter().position(Option::is_none) else {
            self.leaf(&rows);
            return;
        };
        let mut sigma = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        sigma[0] = p;
        used[p] = true;
        self.fill(&rows, &mut sigma, &mut used, 1);
    }

    fn fill(&mut self, rows: &[Option<Row>], sigma: &mut Row, used: &mut [bool], y: usize) {
        if y == self.n {
            if let Some(next) = self.close(rows, sigma.clone()) {
                self.run(next);
            }
            return;
        }
        for v in 0..self.n {
            if used[v] || v == y || rows.iter().flatten().any(|r| r[y] == v) {
                continue;
            }
            sigma[y] = v;
            used[v] = true;
            self.fill(rows, sigma, used, y + 1);
            used[v] = false;
        }
        sigma[y] = usize::MAX;
    }

    fn leaf(&mut self, rows: &[Option<Row>]) {
        let table: Vec<usize> = rows.iter().flatten().flatten().copied().collect();
        let dot = FiniteGroup::from_flat(self.n, table).expect("closed regular rows form a group");
        let brace = SkewBrace::new(dot, self.circ.clone())
            .expect("a normalized regular subgroup gives a skew brace");
        self.found.push(brace);
    }
}

/// Every skew brace whose circ group is `circ`, sorted by dot table.
pub(crate) fn search(circ: &FiniteGroup) -> Vec<SkewBrace> {
    let n = circ.n();
    let lambda: Vec<Row> = (0..n).map(|g| circ.row(g).to_vec()).collect();
    let lambda_inv: Vec<Row> = (0..n).map(|g| circ.row(circ.inv(g)).to_vec()).collect();
    let mut search = Search {
        circ,
        n,
        lambda,
        lambda_inv,
        found: Vec::new(),
    };
    let mut rows = vec![None; n];
    rows[0] = Some((0..n).collect());
    search.run(rows);
    let mut found = search.found;
    found.sort_by(|a, b| a.dot().flat().cmp(b.dot().flat()));
    found.dedup();
    found
}
