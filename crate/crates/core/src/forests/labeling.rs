//! Labelings, linear extension enumeration with inv/maj statistics, and
//! the hook length product identities they do (or do not) satisfy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{Cgf, DensePoly};
use crate::tableaux::gf_from_stats;

use super::forest::{forest_cgf, RootedForest};
use num_bigint::BigUint;
use num_traits::Zero;

/// Extension enumeration is exponential; refuse above this many nodes.
pub const EXTENSION_GUARD: usize = 10;

/// A bijection from nodes to `{1..n}`, stored as the image list in node
/// index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    w: Vec<u64>,
}

impl Labeling {
    pub fn new(w: Vec<u64>) -> Result<Self> {
        let n = w.len();
        let mut seen = vec![false; n];
        for &label in &w {
            let ok = label >= 1 && label <= n as u64 && !seen[(label - 1) as usize];
            if !ok {
                return Err(Error::BadParameters(format!(
                    "labeling must be a bijection onto 1..{n}, got {w:?}"
                )));
            }
            seen[(label - 1) as usize] = true;
        }
        Ok(Labeling { w })
    }

    /// Parses comma-separated images "w(node0),w(node1),..." in node order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut w = Vec::new();
        for piece in text.split(',') {
            let piece = piece.trim();
            let v: u64 = piece
                .parse()
                .map_err(|_| Error::parse(format!("bad label {piece:?}")))?;
            w.push(v);
        }
        Labeling::new(w)
    }

    pub fn identity(n: usize) -> Self {
        Labeling {
            w: (1..=n as u64).collect(),
        }
    }

    /// The canonical natural labeling: postorder positions. Children are
    /// labeled before their parent, so the labeling is order-preserving,
    /// and each subtree occupies a contiguous label interval ending at
    /// its root, which makes the labeling regular as well.
    pub fn natural(forest: &RootedForest) -> Self {
        let mut w = vec![0u64; forest.n()];
        for (i, v) in forest.postorder().into_iter().enumerate() {
            w[v] = i as u64 + 1;
        }
        Labeling { w }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.w[v]
    }

    pub fn images(&self) -> &[u64] {
        &self.w
    }

    pub fn to_text(&self) -> String {
        self.w
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `count` uniformly random labelings of n nodes from a fixed-seed
/// generator, for reproducible sampled sweeps where the full n! is too
/// many.
pub fn seeded_labelings(n: usize, count: usize, seed: u64) -> Vec<Labeling> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut w: Vec<u64> = (1..=n as u64).collect();
            w.shuffle(&mut rng);
            Labeling { w }
        })
        .collect()
}

/// Number of inversions of a word: pairs i < j with word[i] > word[j].
pub fn word_inv(word: &[u64]) -> u64 {
    let mut inv = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Major index of a word: sum of 1-based positions i with word[i] > word[i+1].
pub fn word_maj(word: &[u64]) -> u64 {
    let mut maj = 0;
    for i in 0..word.len().saturating_sub(1) {
        if word[i] > word[i + 1] {
            maj += (i + 1) as u64;
        }
    }
    maj
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionEntry {
    pub word: Vec<u64>,
    pub inv: u64,
    pub maj: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearExtensionReport {
    pub extensions: Vec<ExtensionEntry>,
    /// Inv(P,w): label pairs (w(x), w(y)) with x strictly below y and
    /// w(x) > w(y), sorted.
    pub inv_pairs: Vec<(u64, u64)>,
    /// Des(P,w): labels w(x) of elements covered by a smaller label.
    pub des_labels: Vec<u64>,
    pub inv_stat: u64,
    pub maj_stat: u64,
}

/// A finite poset given by its strict order relation. Only used as a
/// negative control next to forests (e.g. the diamond), so it stays a
/// dense matrix.
#[derive(Debug, Clone)]
pub struct GeneralPoset {
    below: Vec<Vec<bool>>, // below[x][y]: x strictly below y
}

impl GeneralPoset {
    /// Builds the poset from cover relations (lower, upper), taking the
    /// transitive closure.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut below = vec![vec![false; n]; n];
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::BadParameters(format!(
                    "cover ({lo},{hi}) out of range for {n} elements"
                )));
            }
            below[lo][hi] = true;
        }
        // Floyd-Warshall style closure
        for k in 0..n {
            for x in 0..n {
                if below[x][k] {
                    for y in 0..n {
                        if below[k][y] {
                            below[x][y] = true;
                        }
                    }
                }
            }
        }
        for (x, row) in below.iter().enumerate() {
            if row[x] {
                return Err(Error::BadParameters(format!("cycle through element {x}")));
            }
        }
        Ok(GeneralPoset { below })
    }

    pub fn from_forest(forest: &RootedForest) -> Self {
        let n = forest.n();
        let mut below = vec![vec![false; n]; n];
        for v in 0..n {
            let mut anc = forest.parent(v);
            while let Some(a) = anc {
                below[v][a] = true;
                anc = forest.parent(a);
            }
        }
        GeneralPoset { below }
    }

    /// Bottom, two incomparable middles, top.
    pub fn diamond() -> Self {
        GeneralPoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("valid covers")
    }

    pub fn n(&self) -> usize {
        self.below.len()
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.below[x][y]
    }

    /// y covers x: x < y with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.below[x][y] && (0..self.n()).all(|z| !(self.below[x][z] && self.below[z][y]))
    }

    /// Hook lengths h_y = #{x : x <= y}, sorted weakly decreasing.
    pub fn hooks(&self) -> Vec<u64> {
        let n = self.n();
        let mut hooks: Vec<u64> = (0..n)
            .map(|y| 1 + (0..n).filter(|&x| self.below[x][y]).count() as u64)
            .collect();
        hooks.sort_unstable_by(|a, b| b.cmp(a));
        hooks
    }

    /// `[1][2]...[n] / prod [h]`, shift 0; not polynomial in general.
    pub fn cgf(&self) -> Result<Cgf> {
        let n = self.n() as u64;
        Cgf::new(
            (1..=n).map(BigUint::from),
            self.hooks().into_iter().map(BigUint::from),
            BigUint::zero(),
        )
    }

    pub fn is_natural(&self, w: &Labeling) -> bool {
        let n = self.n();
        w.n() == n
            && (0..n).all(|x| (0..n).all(|y| !self.below[x][y] || w.label(x) < w.label(y)))
    }

    /// For every x < z and every y whose label sits strictly between
    /// w(x) and w(z) in the same direction, y must be comparable into
    /// the pair: x < y or y < z.
    pub fn is_regular(&self, w: &Labeling) -> bool {
        let n = self.n();
        if w.n() != n {
            return false;
        }
        for x in 0..n {
            for z in 0..n {
                if !self.below[x][z] {
                    continue;
                }
                let (wx, wz) = (w.label(x), w.label(z));
                for y in 0..n {
                    let wy = w.label(y);
                    let between = (wx < wy && wy < wz) || (wx > wy && wy > wz);
                    if between && !self.below[x][y] && !self.below[y][z] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn linear_extensions(&self, w: &Labeling) -> Result<LinearExtensionReport> {
        let n = self.n();
        if w.n() != n {
            return Err(Error::BadParameters(format!(
                "labeling has {} entries for a poset with {n} elements",
                w.n()
            )));
        }
        if n > EXTENSION_GUARD {
            return Err(Error::InstanceTooLarge(format!(
                "{n} nodes exceeds the extension enumeration guard {EXTENSION_GUARD}"
            )));
        }
        // cover lists drive availability: a node may be placed once all
        // nodes it covers are placed
        let mut requires: Vec<Vec<usize>> = vec![Vec::new(); n];
        for y in 0..n {
            for x in 0..n {
                if self.covers(x, y) {
                    requires[y].push(x);
                }
            }
        }
        let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (y, reqs) in requires.iter().enumerate() {
            for &x in reqs {
                dependents[x].push(y);
            }
        }
        let mut missing: Vec<usize> = requires.iter().map(|r| r.len()).collect();
        let mut placed = vec![false; n];
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut extensions = Vec::new();

        fn recurse(
            n: usize,
            w: &Labeling,
            dependents: &[Vec<usize>],
            missing: &mut [usize],
            placed: &mut [bool],
            order: &mut Vec<usize>,
            extensions: &mut Vec<ExtensionEntry>,
        ) {
            if order.len() == n {
                let word: Vec<u64> = order.iter().map(|&v| w.label(v)).collect();
                let inv = word_inv(&word);
                let maj = word_maj(&word);
                extensions.push(ExtensionEntry { word, inv, maj });
                return;
            }
            for v in 0..n {
                if placed[v] || missing[v] > 0 {
                    continue;
                }
                placed[v] = true;
                order.push(v);
                for &y in &dependents[v] {
                    missing[y] -= 1;
                }
                recurse(n, w, dependents, missing, placed, order, extensions);
                for &y in &dependents[v] {
                    missing[y] += 1;
                }
                order.pop();
                placed[v] = false;
            }
        }
        recurse(
            n,
            w,
            &dependents,
            &mut missing,
            &mut placed,
            &mut order,
            &mut extensions,
        );

        let mut inv_pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.below[x][y] && w.label(x) > w.label(y) {
                    inv_pairs.push((w.label(x), w.label(y)));
                }
            }
        }
        inv_pairs.sort_unstable();

        let hooks_by_node: Vec<u64> = (0..n)
            .map(|y| 1 + (0..n).filter(|&x| self.below[x][y]).count() as u64)
            .collect();
        let mut des_labels = Vec::new();
        let mut maj_stat = 0;
        for x in 0..n {
            let descent = (0..n).any(|y| self.covers(x, y) && w.label(x) > w.label(y));
            if descent {
                des_labels.push(w.label(x));
                maj_stat += hooks_by_node[x];
            }
        }
        des_labels.sort_unstable();

        Ok(LinearExtensionReport {
            inv_stat: inv_pairs.len() as u64,
            maj_stat,
            extensions,
            inv_pairs,
            des_labels,
        })
    }

    /// Negative-control version of the hook product identity check: the
    /// quotient may fail to be polynomial, reported as `product: None`.
    pub fn bw_check(&self, w: &Labeling) -> Result<GeneralBwReport> {
        let report = self.linear_extensions(w)?;
        let maj_gf = gf_from_stats(&report.extensions.iter().map(|e| e.maj).collect::<Vec<_>>());
        let inv_gf = gf_from_stats(&report.extensions.iter().map(|e| e.inv).collect::<Vec<_>>());
        let product = self.cgf()?.expand().ok();
        let (maj_ok, inv_ok) = match &product {
            Some(p) => (
                maj_gf == p.shifted(report.maj_stat),
                inv_gf == p.shifted(report.inv_stat),
            ),
            None => (false, false),
        };
        Ok(GeneralBwReport {
            maj_ok,
            inv_ok,
            maj_stat: report.maj_stat,
            inv_stat: report.inv_stat,
            maj_gf,
            inv_gf,
            product,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneralBwReport {
    pub maj_ok: bool,
    pub inv_ok: bool,
    pub maj_stat: u64,
    pub inv_stat: u64,
    pub maj_gf: DensePoly,
    pub inv_gf: DensePoly,
    pub product: Option<DensePoly>,
}

/// All linear extensions of a labeled forest with their statistics.
pub fn linear_extensions(forest: &RootedForest, w: &Labeling) -> Result<LinearExtensionReport> {
    GeneralPoset::from_forest(forest).linear_extensions(w)
}

/// Order-preserving labeling: every child label is smaller than its
/// parent label.
pub fn is_natural(forest: &RootedForest, w: &Labeling) -> bool {
    if w.n() != forest.n() {
        return false;
    }
    (0..forest.n()).all(|v| match forest.parent(v) {
        Some(p) => w.label(v) < w.label(p),
        None => true,
    })
}

pub fn is_regular(forest: &RootedForest, w: &Labeling) -> bool {
    GeneralPoset::from_forest(forest).is_regular(w)
}

#[derive(Debug, Clone, Serialize)]
pub struct BwReport {
    pub maj_ok: bool,
    pub inv_ok: bool,
    pub natural: bool,
    pub regular: bool,
    pub maj_stat: u64,
    pub inv_stat: u64,
    pub maj_gf: DensePoly,
    pub inv_gf: DensePoly,
    pub product: DensePoly,
}

/// Checks both hook product identities for a labeled forest:
/// sum q^maj = q^{maj(P,w)} L_P(q) holds for every labeling, while
/// sum q^inv = q^{inv(P,w)} L_P(q) is expected exactly when w is regular.
pub fn verify_bw(forest: &RootedForest, w: &Labeling) -> Result<BwReport> {
    let poset = GeneralPoset::from_forest(forest);
    let report = poset.linear_extensions(w)?;
    let maj_gf = gf_from_stats(&report.extensions.iter().map(|e| e.maj).collect::<Vec<_>>());
    let inv_gf = gf_from_stats(&report.extensions.iter().map(|e| e.inv).collect::<Vec<_>>());
    let product = forest_cgf(forest)?.expand()?;
    Ok(BwReport {
        maj_ok: maj_gf == product.shifted(report.maj_stat),
        inv_ok: inv_gf == product.shifted(report.inv_stat),
        natural: is_natural(forest, w),
        regular: poset.is_regular(w),
        maj_stat: report.maj_stat,
        inv_stat: report.inv_stat,
        maj_gf,
        inv_gf,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forests::forest::parse_forest;

    fn words(report: &LinearExtensionReport) -> Vec<String> {
        let mut out: Vec<String> = report
            .extensions
            .iter()
            .map(|e| e.word.iter().map(|d| d.to_string()).collect::<String>())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn labeling_basics() {
        assert!(Labeling::new(vec![2, 1, 3]).is_ok());
        assert!(Labeling::new(vec![1, 1, 3]).is_err());
        assert!(Labeling::new(vec![0, 1]).is_err());
        assert!(Labeling::new(vec![1, 4]).is_err());
        let w = Labeling::parse("3, 1, 2").unwrap();
        assert_eq!(w.images(), &[3, 1, 2]);
        assert_eq!(w.to_text(), "3,1,2");
        assert!(Labeling::parse("1,x").is_err());
    }

    #[test]
    fn word_stats() {
        assert_eq!(word_inv(&[2, 4, 1, 3]), 3);
        assert_eq!(word_maj(&[2, 4, 1, 3]), 2);
        assert_eq!(word_inv(&[4, 2, 1, 3]), 4);
        assert_eq!(word_maj(&[4, 2, 1, 3]), 3);
        assert_eq!(word_maj(&[1, 3, 2, 4]), 2);
    }

    #[test]
    fn diamond_extensions() {
        let diamond = GeneralPoset::diamond();
        assert_eq!(diamond.hooks(), vec![4, 2, 2, 1]);

        let natural = Labeling::new(vec![1, 2, 3, 4]).unwrap();
        assert!(diamond.is_natural(&natural));
        let rep = diamond.linear_extensions(&natural).unwrap();
        assert_eq!(words(&rep), vec!["1234", "1324"]);
        assert_eq!(rep.inv_stat, 0);
        assert_eq!(rep.maj_stat, 0);

        // bottom=3, middles 1 and 4, top=2
        let w = Labeling::new(vec![3, 1, 4, 2]).unwrap();
        assert!(!diamond.is_natural(&w));
        // regular by the formal definition: the only label windows are
        // (3,..,1) around y=top and (4,..,2) around y=bottom, and both
        // are discharged by bottom < top
        assert!(diamond.is_regular(&w));
        let rep = diamond.linear_extensions(&w).unwrap();
        assert_eq!(words(&rep), vec!["3142", "3412"]);
        assert_eq!(rep.inv_pairs, vec![(3, 1), (3, 2), (4, 2)]);
        assert_eq!(rep.des_labels, vec![3, 4]);
        assert_eq!(rep.inv_stat, 3);
        assert_eq!(rep.maj_stat, 3);
    }

    #[test]
    fn diamond_is_a_negative_control() {
        let diamond = GeneralPoset::diamond();
        // [4]!/([1][2][2][4]) = [3]/[2] leaves a remainder
        assert!(matches!(
            diamond.cgf().unwrap().expand(),
            Err(Error::NonPolynomial { .. })
        ));
        let natural = Labeling::new(vec![1, 2, 3, 4]).unwrap();
        let bw = diamond.bw_check(&natural).unwrap();
        assert!(bw.product.is_none());
        assert!(!bw.maj_ok);
        assert!(!bw.inv_ok);
        // sum over {1234, 1324} of q^maj is 1 + q^2
        assert_eq!(bw.maj_gf, gf_from_stats(&[0, 2]));
    }

    #[test]
    fn d3_tree_example() {
        // root=3, internal=1, leaves 2 and 4 in pre-order
        let d3 = parse_forest("((()()))").unwrap();
        let w = Labeling::new(vec![3, 1, 2, 4]).unwrap();
        let rep = linear_extensions(&d3, &w).unwrap();
        assert_eq!(words(&rep), vec!["2413", "4213"]);
        assert_eq!(rep.inv_pairs, vec![(2, 1), (4, 1), (4, 3)]);
        assert_eq!(rep.des_labels, vec![2, 4]);
        assert_eq!(rep.inv_stat, 3);
        assert_eq!(rep.maj_stat, 2);

        let bw = verify_bw(&d3, &w).unwrap();
        assert!(bw.maj_ok && bw.inv_ok);
        assert_eq!(bw.maj_stat, 2);
        assert_eq!(bw.inv_stat, 3);
        // L^maj = q^2 + q^3 and L^inv = q^3 + q^4
        assert_eq!(bw.maj_gf, gf_from_stats(&[2, 3]));
        assert_eq!(bw.inv_gf, gf_from_stats(&[3, 4]));
    }

    #[test]
    fn natural_and_regular_predicates() {
        let chain = parse_forest("(((())))").unwrap();
        // pre-order identity labels the root 1: anti-natural on a chain
        let id = Labeling::identity(4);
        assert!(!is_natural(&chain, &id));
        let nat = Labeling::natural(&chain);
        assert_eq!(nat.images(), &[4, 3, 2, 1]);
        assert!(is_natural(&chain, &nat));
        assert!(is_regular(&chain, &nat));

        // a natural labeling need not be regular: root(a(c), b) with
        // w(c)=1, w(b)=2, w(a)=3, w(r)=4 traps b between c and a
        let tree = parse_forest("((())())").unwrap();
        let w = Labeling::new(vec![4, 3, 1, 2]).unwrap();
        assert!(is_natural(&tree, &w));
        assert!(!is_regular(&tree, &w));
        // the maj identity still holds, the inv identity fails
        let bw = verify_bw(&tree, &w).unwrap();
        assert!(bw.maj_ok);
        assert!(!bw.inv_ok);

        // the canonical postorder labeling is natural and regular
        let nat = Labeling::natural(&tree);
        assert!(is_natural(&tree, &nat));
        assert!(is_regular(&tree, &nat));
        let bw = verify_bw(&tree, &nat).unwrap();
        assert!(bw.maj_ok && bw.inv_ok);
        assert_eq!(bw.maj_stat, 0);
        assert_eq!(bw.inv_stat, 0);
    }

    #[test]
    fn extension_guard() {
        let big = parse_forest(&"() ".repeat(11)).unwrap();
        let w = Labeling::identity(11);
        assert!(matches!(
            linear_extensions(&big, &w),
            Err(Error::InstanceTooLarge(_))
        ));
    }
}
