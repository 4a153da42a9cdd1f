//! Rooted forests as posets. Children sit below their parent, so roots
//! are the maximal elements and the hook of a node counts its subtree.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{bernoulli, Cgf};

/// A rooted forest on nodes `0..n`. Node indices follow depth-first
/// pre-order of the textual form (each constructor re-indexes to keep
/// this canonical).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    roots: Vec<usize>,
}

impl RootedForest {
    /// Builds a forest from adjacency lists, validating that every
    /// non-root has exactly one parent and everything hangs off a root.
    pub fn new(children: Vec<Vec<usize>>, roots: Vec<usize>) -> Result<Self> {
        let n = children.len();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        for (p, kids) in children.iter().enumerate() {
            for &c in kids {
                if c >= n {
                    return Err(Error::BadParameters(format!(
                        "child index {c} out of range for {n} nodes"
                    )));
                }
                if parent[c].is_some() {
                    return Err(Error::BadParameters(format!("node {c} has two parents")));
                }
                parent[c] = Some(p);
            }
        }
        for &r in &roots {
            if r >= n {
                return Err(Error::BadParameters(format!(
                    "root index {r} out of range for {n} nodes"
                )));
            }
            if parent[r].is_some() {
                return Err(Error::BadParameters(format!("root {r} has a parent")));
            }
        }
        // reachability from the roots rules out cycles among non-roots
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = roots.clone();
        while let Some(v) = stack.pop() {
            if seen[v] {
                return Err(Error::BadParameters(format!("node {v} reached twice")));
            }
            seen[v] = true;
            stack.extend(&children[v]);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BadParameters(
                "some nodes are not reachable from the roots".into(),
            ));
        }
        Ok(RootedForest {
            children,
            parent,
            roots,
        })
    }

    pub fn empty() -> Self {
        RootedForest {
            children: Vec::new(),
            parent: Vec::new(),
            roots: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn is_tree(&self) -> bool {
        self.roots.len() == 1
    }

    /// Nodes in depth-first pre-order (parents before children).
    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack: Vec<usize> = self.roots.iter().rev().copied().collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    /// Nodes with children listed before their parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Subtree size of every node, indexed by node.
    pub fn subtree_sizes(&self) -> Vec<u64> {
        let mut size = vec![1u64; self.n()];
        for v in self.postorder() {
            for &c in &self.children[v] {
                size[v] += size[c];
            }
        }
        size
    }

    /// Nested-parentheses form, children in stored order, trees joined
    /// by single spaces.
    pub fn to_text(&self) -> String {
        fn write(f: &RootedForest, v: usize, out: &mut String) {
            out.push('(');
            for &c in &f.children[v] {
                write(f, c, out);
            }
            out.push(')');
        }
        let mut out = String::new();
        for (i, &r) in self.roots.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write(self, r, &mut out);
        }
        out
    }

    /// The forest induced on the subtree of `v`, re-indexed in pre-order.
    pub fn subtree(&self, v: usize) -> RootedForest {
        let mut children: Vec<Vec<usize>> = Vec::new();
        fn copy(f: &RootedForest, v: usize, children: &mut Vec<Vec<usize>>) -> usize {
            let id = children.len();
            children.push(Vec::new());
            for &c in &f.children[v] {
                let cid = copy(f, c, children);
                children[id].push(cid);
            }
            id
        }
        let root = copy(self, v, &mut children);
        RootedForest::new(children, vec![root]).expect("subtree copy is a tree")
    }
}

/// Parses nested-parentheses notation: each node is `(` children `)`,
/// trees separated by whitespace, indices assigned in pre-order.
pub fn parse_forest(text: &str) -> Result<RootedForest> {
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => {
                let id = children.len();
                children.push(Vec::new());
                match stack.last() {
                    Some(&p) => children[p].push(id),
                    None => roots.push(id),
                }
                parent.push(stack.last().copied());
                stack.push(id);
            }
            ')' => {
                if stack.pop().is_none() {
                    return Err(Error::parse_at("unmatched ')'", i));
                }
            }
            c if c.is_whitespace() => {}
            c => {
                return Err(Error::parse_at(format!("unexpected character {c:?}"), i));
            }
        }
    }
    if !stack.is_empty() {
        return Err(Error::parse_at("unclosed '('", text.len()));
    }
    Ok(RootedForest {
        children,
        parent,
        roots,
    })
}

/// Poset hook lengths `h_x = #{t : t <= x}` (subtree sizes), sorted
/// weakly decreasing.
pub fn poset_hooks(forest: &RootedForest) -> Vec<u64> {
    let mut hooks = forest.subtree_sizes();
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    hooks
}

/// Size of the longest chain; a singleton has rank 1, the empty forest
/// rank 0.
pub fn forest_rank(forest: &RootedForest) -> u64 {
    let mut depth = vec![0u64; forest.n()];
    let mut best = 0;
    for v in forest.preorder() {
        depth[v] = match forest.parent(v) {
            Some(p) => depth[p] + 1,
            None => 1,
        };
        best = best.max(depth[v]);
    }
    best
}

/// `[1][2]...[n] / prod [h_u]` with shift 0; expands to the linear
/// extension generating function `L_P(q)` by the hook length theorem.
pub fn forest_cgf(forest: &RootedForest) -> Result<Cgf> {
    let n = forest.n() as u64;
    Cgf::new(
        (1..=n).map(BigUint::from),
        poset_hooks(forest).into_iter().map(BigUint::from),
        BigUint::zero(),
    )
}

/// Exact d-th cumulant of the `L_P(q)` distribution:
/// `(B_d/d)(sum k^d - sum h_u^d)`. Valid for every d >= 1; at d = 1
/// (with B_1 = +1/2) this is the mean, half the polynomial degree.
pub fn forest_cumulant(forest: &RootedForest, d: usize) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::Domain("cumulant order must be at least 1".into()));
    }
    let b = bernoulli(d);
    if b.is_zero() {
        return Ok(BigRational::zero());
    }
    let d32 = u32::try_from(d).map_err(|_| Error::Domain("cumulant order too large".into()))?;
    let mut diff = BigInt::zero();
    for k in 1..=(forest.n() as u64) {
        diff += BigInt::from(k).pow(d32);
    }
    for h in forest.subtree_sizes() {
        diff -= BigInt::from(h).pow(d32);
    }
    Ok(b / BigRational::from(BigInt::from(d)) * BigRational::from(diff))
}

/// Degree of `L_P(q)` without expanding: `sum k - sum h_u`.
pub fn lp_degree(forest: &RootedForest) -> u64 {
    let n = forest.n() as u128;
    let total = n * (n + 1) / 2;
    let hooks: u128 = forest.subtree_sizes().iter().map(|&h| h as u128).sum();
    u64::try_from(total - hooks).expect("degree fits u64")
}

/// Standardized form: joins multiple trees under a fresh root, then
/// strips the root while it has exactly one child. The expanded
/// `forest_cgf` is unchanged: joining multiplies numerator and
/// denominator by `[n+1]`, stripping cancels `[n]/[n]`.
pub fn standardize(forest: &RootedForest) -> RootedForest {
    if forest.n() == 0 {
        return RootedForest::empty();
    }
    if forest.roots().len() == 1 {
        let mut cur = forest.roots()[0];
        while forest.children(cur).len() == 1 {
            cur = forest.children(cur)[0];
        }
        return forest.subtree(cur);
    }
    // multiple trees: graft under a new root first
    let mut children = forest.children.clone();
    let new_root = children.len();
    children.push(forest.roots.clone());
    let grafted = RootedForest::new(children, vec![new_root]).expect("grafted root is a tree");
    standardize(&grafted)
}

/// The extremal tree `H_{n,r}`: a chain of r nodes with the remaining
/// n-r nodes attached as leaves of the second-smallest chain node. Its
/// `L_P(q)` is `[n-r+1]_q!` and its hook sum is maximal for the rank.
pub fn h_tree(n: u64, r: u64) -> Result<RootedForest> {
    if r <= 1 || r > n {
        return Err(Error::BadParameters(format!(
            "H_(n,r) needs 1 < r <= n, got n = {n}, r = {r}"
        )));
    }
    let n_us = usize::try_from(n)
        .ok()
        .filter(|&v| v <= 1_000_000)
        .ok_or_else(|| Error::InstanceTooLarge(format!("H tree with {n} nodes")))?;
    let r_us = r as usize;
    // pre-order: root = chain top = node 0, chain descends 0..r-2, then
    // node r-1 is the chain bottom (first child of node r-2), with the
    // leaves following it
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n_us];
    for v in 0..r_us - 2 {
        children[v].push(v + 1);
    }
    if r_us >= 2 {
        let second = r_us - 2; // second-smallest chain element
        children[second].push(r_us - 1);
        for leaf in r_us..n_us {
            children[second].push(leaf);
        }
    }
    RootedForest::new(children, vec![0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn chain(n: usize) -> RootedForest {
        let mut text = String::new();
        for _ in 0..n {
            text.push('(');
        }
        for _ in 0..n {
            text.push(')');
        }
        parse_forest(&text).unwrap()
    }

    #[test]
    fn parse_and_round_trip() {
        let d3 = parse_forest("((()()))").unwrap();
        assert_eq!(d3.n(), 4);
        assert!(d3.is_tree());
        assert_eq!(poset_hooks(&d3), vec![4, 3, 1, 1]);
        assert_eq!(d3.to_text(), "((()()))");

        let pair = parse_forest("() ()").unwrap();
        assert_eq!(pair.n(), 2);
        assert_eq!(pair.roots().len(), 2);
        assert_eq!(pair.to_text(), "() ()");

        let simple = parse_forest("(()())").unwrap();
        assert_eq!(poset_hooks(&simple), vec![3, 1, 1]);

        assert_eq!(parse_forest("").unwrap().n(), 0);
    }

    #[test]
    fn parse_reports_positions() {
        for (text, pos) in [("(()", 3usize), ("())", 2), ("(x)", 1)] {
            match parse_forest(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, Some(pos), "{text}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn ranks_and_degrees() {
        assert_eq!(forest_rank(&chain(5)), 5);
        assert_eq!(forest_rank(&parse_forest("()").unwrap()), 1);
        let binary = parse_forest("((()())(()()))").unwrap();
        assert_eq!(binary.n(), 7);
        assert_eq!(forest_rank(&binary), 3);

        assert_eq!(lp_degree(&chain(6)), 0);
        assert_eq!(lp_degree(&parse_forest("((()()))").unwrap()), 1);
        for n in 2..=12u64 {
            for r in 2..=n {
                let h = h_tree(n, r).unwrap();
                let k = n - r + 1;
                assert_eq!(lp_degree(&h), k * (k - 1) / 2, "H_({n},{r})");
            }
        }
    }

    #[test]
    fn cgf_expansions() {
        let d3 = parse_forest("((()()))").unwrap();
        let p = forest_cgf(&d3).unwrap().expand().unwrap();
        assert_eq!(p.offset(), 0);
        assert_eq!(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["1", "1"]);

        // chains have hooks {1..n}, so everything cancels
        let one = forest_cgf(&chain(7)).unwrap().expand().unwrap();
        assert_eq!(one.offset(), 0);
        assert_eq!(one.coeffs(), &[BigInt::one()]);

        let h = h_tree(10, 7).unwrap();
        let lp = forest_cgf(&h).unwrap().expand().unwrap();
        let want = [1i64, 3, 5, 6, 5, 3, 1];
        assert_eq!(lp.offset(), 0);
        assert_eq!(
            lp.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>(),
            want
        );
    }

    #[test]
    fn cumulants_match_small_cases() {
        // chain: hooks are exactly {1..n}
        for d in 1..=6 {
            assert_eq!(forest_cumulant(&chain(6), d).unwrap(), BigRational::zero());
        }
        // d3 tree: the 1+q distribution has variance 1/4
        let d3 = parse_forest("((()()))").unwrap();
        assert_eq!(forest_cumulant(&d3, 2).unwrap(), rat(1, 4));
        // and mean 1/2 = half the degree
        assert_eq!(forest_cumulant(&d3, 1).unwrap(), rat(1, 2));
        assert_eq!(forest_cumulant(&d3, 3).unwrap(), BigRational::zero());
    }

    #[test]
    fn standardize_examples() {
        let pair = parse_forest("() ()").unwrap();
        let s = standardize(&pair);
        assert_eq!(s.n(), 3);
        assert_eq!(s.roots().len(), 1);
        assert_eq!(s.children(s.roots()[0]).len(), 2);

        assert_eq!(standardize(&chain(5)).n(), 1);

        // single tree whose root already has two children is unchanged
        let bushy = parse_forest("(()())").unwrap();
        assert_eq!(standardize(&bushy).to_text(), "(()())");

        // nested single-child chain down to a bushy core
        let wrapped = parse_forest("(((()())))").unwrap();
        assert_eq!(standardize(&wrapped).to_text(), "(()())");
    }

    #[test]
    fn h_tree_shape() {
        let h = h_tree(6, 4).unwrap();
        assert_eq!(h.n(), 6);
        assert_eq!(forest_rank(&h), 4);
        let mut hooks = poset_hooks(&h);
        hooks.sort_unstable();
        assert_eq!(hooks, vec![1, 1, 1, 4, 5, 6]);
        assert!(h_tree(5, 1).is_err());
        assert!(h_tree(3, 4).is_err());

        // H_(2,2) is the 2-chain
        assert_eq!(h_tree(2, 2).unwrap().to_text(), "(())");
    }
}
