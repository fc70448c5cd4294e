//! Generators for the explicit extremal graphs and their closed-form
//! clique counts.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Part sizes of the balanced complete `parts`-partite graph on `n`
/// vertices, larger parts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranParts {
    pub n: usize,
    pub sizes: Vec<usize>,
}

impl TuranParts {
    pub fn new(n: usize, parts: usize) -> Result<Self> {
        if parts == 0 {
            return Err(Error::invalid("a Turán graph needs at least one part"));
        }
        let (q, rem) = (n / parts, n % parts);
        let sizes = (0..parts).map(|i| q + usize::from(i < rem)).collect();
        Ok(TuranParts { n, sizes })
    }

    /// `e_k` of the part sizes: the number of `K_k` in the Turán graph.
    pub fn elementary_symmetric(&self, k: usize) -> Result<u64> {
        let mut e = vec![0u128; k + 1];
        e[0] = 1;
        for &s in &self.sizes {
            for j in (1..=k).rev() {
                e[j] = e[j - 1]
                    .checked_mul(s as u128)
                    .and_then(|x| x.checked_add(e[j]))
                    .ok_or_else(|| Error::Overflow("Turán clique count".into()))?;
            }
        }
        u64::try_from(e[k]).map_err(|_| Error::Overflow("Turán clique count".into()))
    }

    /// Edge count of the Turán graph.
    pub fn edge_count(&self) -> u64 {
        self.elementary_symmetric(2).expect("edge count fits in 64 bits")
    }
}

/// `T(n, parts)`: parts are contiguous vertex ranges, larger parts first.
pub fn turan_graph(n: usize, parts: usize) -> Result<Graph> {
    let tp = TuranParts::new(n, parts)?;
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in tp.sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.insert_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// `N(K_r, T(n, parts))` from the part sizes.
pub fn count_kr_turan_closed(n: usize, parts: usize, r: usize) -> Result<u64> {
    if r == 0 {
        return Err(Error::invalid("clique order r must be at least 1"));
    }
    if r > parts {
        return Ok(0);
    }
    TuranParts::new(n, parts)?.elementary_symmetric(r)
}

/// `S(n, r, t)`: `K_t` on `0..t` joined to `T(n − t, r − t)` on `t..n`.
pub fn s_graph(n: usize, r: usize, t: usize) -> Result<Graph> {
    if !(n >= r && r > t) {
        return Err(Error::invalid(format!(
            "S(n, r, t) needs n >= r > t >= 0, got n = {n}, r = {r}, t = {t}"
        )));
    }
    Ok(Graph::join(&Graph::complete(t), &turan_graph(n - t, r - t)?))
}

/// `K_ℓ` joined to `⌊(n−ℓ)/(r−ℓ)⌋` disjoint copies of `K_{r−ℓ}`.
///
/// Leftover vertices are adjacent to the `K_ℓ` block only, so the number of
/// `K_r` copies is exactly `⌊(n−ℓ)/(r−ℓ)⌋` and any two of them meet in the
/// `K_ℓ` block.
pub fn single_l_graph(n: usize, r: usize, ell: usize) -> Result<Graph> {
    if ell >= r {
        return Err(Error::invalid(format!("ℓ = {ell} must be below r = {r}")));
    }
    if n < r {
        return Err(Error::invalid(format!("n = {n} must be at least r = {r}")));
    }
    let block = r - ell;
    let copies = (n - ell) / block;
    let mut g = Graph::empty(n);
    for u in 0..ell {
        for v in u + 1..n {
            g.insert_unchecked(u, v);
        }
    }
    for c in 0..copies {
        let base = ell + c * block;
        for u in base..base + block {
            for v in u + 1..base + block {
                g.insert_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// A subset of `[1, n]` with no three-term arithmetic progression.
///
/// Digit construction: numbers whose base-`(2d+1)` digits all lie in
/// `[0, d]` add without carries, so `x + z = 2y` forces the digit vectors
/// to satisfy `a + c = 2b`; restricting to one value of the digit square
/// sum (a sphere) then forces `a = b = c`. Every base `d` and every shell
/// is tried, the largest shell wins (ties to smaller `d`, then to the
/// smaller square sum), and the elements are shifted by one into `[1, n]`.
pub fn behrend_set(n: usize) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let max_d = n.isqrt().max(1);
    let mut best: Vec<usize> = vec![0];
    for d in 1..=max_d {
        for shell in digit_shells(n, d).into_values() {
            if shell.len() > best.len() {
                best = shell;
            }
        }
    }
    let mut out: Vec<usize> = best.into_iter().map(|x| x + 1).collect();
    out.sort_unstable();
    out
}

/// Values in `[0, n)` whose base-`(2d+1)` digits are all at most `d`,
/// grouped by digit square sum.
fn digit_shells(n: usize, d: usize) -> std::collections::BTreeMap<usize, Vec<usize>> {
    let base = 2 * d + 1;
    let places: Vec<usize> = std::iter::successors(Some(1usize), |p| p.checked_mul(base))
        .take_while(|&p| p < n)
        .collect();
    let mut shells = std::collections::BTreeMap::new();
    fn rec(
        places: &[usize],
        n: usize,
        d: usize,
        value: usize,
        squares: usize,
        shells: &mut std::collections::BTreeMap<usize, Vec<usize>>,
    ) {
        let Some((&place, rest)) = places.split_last() else {
            shells.entry(squares).or_default().push(value);
            return;
        };
        for digit in 0..=d {
            let v = value + digit * place;
            if v >= n {
                break;
            }
            rec(rest, n, d, v, squares + digit * digit, shells);
        }
    }
    rec(&places, n, d, 0, 0, &mut shells);
    shells
}

/// Tripartite Ruzsa–Szemerédi graph on parts `X` (`m`), `Y` (`2m`), `Z`
/// (`3m`) with `m = ⌊n/6⌋`: one triangle `(x, x+a, x+2a)` for every
/// `x ∈ X` and `a` in a progression-free set. The triangles are
/// edge-disjoint and are the only triangles. Vertices past `6m` are
/// isolated.
pub fn rs_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("rs_graph needs n >= 3, got {n}")));
    }
    let m = n / 6;
    let mut g = Graph::empty(n);
    if m == 0 {
        return Ok(g);
    }
    let (y0, z0) = (m, 3 * m);
    let steps = behrend_set(m);
    for x in 0..m {
        for &a in &steps {
            let (y, z) = (y0 + x + a, z0 + x + 2 * a);
            g.insert_unchecked(x, y);
            g.insert_unchecked(y, z);
            g.insert_unchecked(x, z);
        }
    }
    Ok(g)
}
