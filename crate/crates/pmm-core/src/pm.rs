//! The finite monoid `R_n` as the matched pair of `S_n` with `P_n`:
//! product, star, idempotents, double-coset decomposition, enumeration
//! and the 0/1 matrix-tuple realization.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::perm::Permutation;
use crate::setpart::{factorial, stirling2, OrderedSetPartition, StandardComposition};
use crate::{Error, Result};

/// Largest `n` accepted by the exhaustive enumeration routines.
pub const ENUMERATION_GUARD: usize = 6;

/// An element of `R_n`: a permutation paired with an ordered set
/// partition of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PMElement {
    perm: Permutation,
    partition: OrderedSetPartition,
}

impl PMElement {
    pub fn new(perm: Permutation, partition: OrderedSetPartition) -> Result<Self> {
        if perm.n() != partition.n() {
            return Err(Error::SizeMismatch {
                left: perm.n(),
                right: partition.n(),
            });
        }
        Ok(PMElement { perm, partition })
    }

    /// The monoid unit `(id, ({1..n}))`.
    pub fn unit(n: usize) -> Self {
        PMElement {
            perm: Permutation::identity(n),
            partition: OrderedSetPartition::full(n),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn partition(&self) -> &OrderedSetPartition {
        &self.partition
    }

    /// The product of eq-style `(sigma, p) (sigma', p') =
    /// (sigma sigma', sigma'^-1(p) * p')`, the right factor's
    /// permutation pulling back the left partition.
    pub fn product(&self, other: &PMElement) -> Result<Self> {
        let perm = self.perm.compose(&other.perm)?;
        let partition = self
            .partition
            .map_preimage(&other.perm)
            .product(&other.partition)?;
        Ok(PMElement { perm, partition })
    }

    /// The inverse-monoid star `(sigma, p)* = (sigma^-1, sigma(p))`,
    /// satisfying `a a* a = a` and `a* a a* = a*`.
    pub fn star(&self) -> Self {
        PMElement {
            perm: self.perm.inverse(),
            partition: self.partition.map_image(&self.perm),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.product(self).map(|sq| sq == *self).unwrap_or(false)
    }

    /// The cut sequence of cumulative block sizes: indexes the `WeW`
    /// class of the element.
    pub fn lambda(&self) -> StandardComposition {
        StandardComposition::from_sizes(self.n(), &self.partition.block_sizes())
            .expect("block sizes sum to n")
    }

    /// The 0/1 matrix tuple realizing this element: term `t` has
    /// positions `(sigma(j), j)` for `j` in block `t`.
    pub fn to_matrix_tuple(&self) -> MatrixTupleSymbolic {
        let terms = self
            .partition
            .blocks()
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&j| (self.perm.apply(j), j))
                    .collect::<BTreeSet<_>>()
            })
            .collect();
        MatrixTupleSymbolic {
            n: self.n(),
            terms,
        }
    }
}

impl fmt::Display for PMElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.perm, self.partition)
    }
}

/// A tuple of 0/1 matrices given by their unit positions `(row, col)`.
/// The positions across the whole tuple form a permutation matrix split
/// by blocks; term `t`'s columns are exactly partition block `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTupleSymbolic {
    n: usize,
    terms: Vec<BTreeSet<(usize, usize)>>,
}

impl MatrixTupleSymbolic {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[BTreeSet<(usize, usize)>] {
        &self.terms
    }

    /// Recovers the `(permutation, partition)` pair; inverse of
    /// [`PMElement::to_matrix_tuple`].
    pub fn to_element(&self) -> Result<PMElement> {
        let mut images = vec![0usize; self.n];
        let mut blocks = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let mut block = Vec::with_capacity(term.len());
            for &(r, c) in term {
                if c == 0 || c > self.n || r == 0 || r > self.n {
                    return Err(Error::InvalidMatrix(format!(
                        "position ({r},{c}) out of range for n={}",
                        self.n
                    )));
                }
                if images[c - 1] != 0 {
                    return Err(Error::InvalidMatrix(format!("column {c} used twice")));
                }
                images[c - 1] = r;
                block.push(c);
            }
            blocks.push(block);
        }
        let perm = Permutation::new(images)
            .map_err(|e| Error::InvalidMatrix(format!("rows are not a permutation: {e}")))?;
        let partition = OrderedSetPartition::new(self.n, blocks)?;
        PMElement::new(perm, partition)
    }
}

/// All elements of `R_n`, partitions ordered canonically (block count,
/// then lexicographic contents) with permutations in lexicographic
/// order varying fastest. Guarded at `n <= ENUMERATION_GUARD`.
pub fn enumerate(n: usize) -> Result<Vec<PMElement>> {
    if n == 0 || n > ENUMERATION_GUARD {
        return Err(Error::ResourceGuard(format!(
            "enumeration supports 1..={ENUMERATION_GUARD}, got {n}"
        )));
    }
    let perms = Permutation::all(n);
    let mut out = Vec::new();
    for partition in OrderedSetPartition::all(n) {
        for perm in &perms {
            out.push(PMElement {
                perm: perm.clone(),
                partition: partition.clone(),
            });
        }
    }
    Ok(out)
}

/// The idempotents `{(id, p) : p in P_n}` in canonical partition order.
pub fn idempotents(n: usize) -> Vec<PMElement> {
    OrderedSetPartition::all(n)
        .into_iter()
        .map(|partition| PMElement {
            perm: Permutation::identity(n),
            partition,
        })
        .collect()
}

/// `|R_n| = n! sum_m m! S(n,m)`.
pub fn count_via_stirling(n: usize) -> u64 {
    factorial(n) * (1..=n).map(|m| factorial(m) * stirling2(n, m)).sum::<u64>()
}

/// `|R_n|` as the multinomial sum over compositions `r_1 + ... + r_m = n`
/// of `prod_i C(remaining, r_i)^2 r_i!`.
pub fn count_multinomial(n: usize) -> u64 {
    fn go(remaining: usize, n: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        for r in 1..=remaining {
            let c = binomial(remaining, r);
            total += c * c * factorial(r) * go(remaining - r, n);
        }
        total
    }
    go(n, n)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// The canonical standardizing pair for a partition: the unique
/// order-preserving-on-blocks permutation `w` such that the blockwise
/// image `w(p)` is the interval partition with `p`'s block sizes.
/// Returns `(w, q)` with `q` the cut sequence of that interval
/// partition.
pub fn standardize_partition(p: &OrderedSetPartition) -> (Permutation, StandardComposition) {
    let n = p.n();
    let mut images = vec![0usize; n];
    let mut offset = 0usize;
    for block in p.blocks() {
        for (r, &v) in block.iter().enumerate() {
            images[v - 1] = offset + r + 1;
        }
        offset += block.len();
    }
    let w = Permutation::new(images).expect("blockwise relabeling is a bijection");
    let q = StandardComposition::from_sizes(n, &p.block_sizes()).expect("sizes sum to n");
    (w, q)
}

/// Left action of the matched pair `(P_n, S_n, phi)`:
/// a partition acts trivially on a permutation.
pub fn act_left(_p: &OrderedSetPartition, w: &Permutation) -> Permutation {
    w.clone()
}

/// Right action of the matched pair: `p <- w = (w^-1(p_1), ..., w^-1(p_m))`.
pub fn act_right(p: &OrderedSetPartition, w: &Permutation) -> OrderedSetPartition {
    p.map_preimage(w)
}

/// Outcome of checking one matched-pair axiom.
#[derive(Debug, Clone)]
pub struct AxiomOutcome {
    pub axiom: u8,
    pub description: &'static str,
    pub cases: u64,
    pub counterexample: Option<String>,
}

/// Report for the eight matched-pair axioms.
#[derive(Debug, Clone)]
pub struct MatchedPairReport {
    pub n: usize,
    pub exhaustive: bool,
    pub axioms: Vec<AxiomOutcome>,
}

impl MatchedPairReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.counterexample.is_none())
    }

    pub fn total_cases(&self) -> u64 {
        self.axioms.iter().map(|a| a.cases).sum()
    }
}

const AXIOM_DESCRIPTIONS: [&str; 8] = [
    "s -> (t -> b) = st -> b",
    "st <- b = (s <- (t -> b)) (t <- b)",
    "(s <- b) <- c = s <- bc",
    "s -> bc = (s -> b) ((s <- b) -> c)",
    "1 -> b = b",
    "s -> 1 = 1",
    "s <- 1 = s",
    "1 <- b = 1",
];

struct AxiomChecker {
    outcomes: Vec<AxiomOutcome>,
}

impl AxiomChecker {
    fn new() -> Self {
        AxiomChecker {
            outcomes: (0..8)
                .map(|i| AxiomOutcome {
                    axiom: i as u8 + 1,
                    description: AXIOM_DESCRIPTIONS[i],
                    cases: 0,
                    counterexample: None,
                })
                .collect(),
        }
    }

    /// Checks all eight axioms on one quadruple (s, t in P_n; b, c in S_n).
    fn check(
        &mut self,
        s: &OrderedSetPartition,
        t: &OrderedSetPartition,
        b: &Permutation,
        c: &Permutation,
    ) -> Result<()> {
        let n = b.n();
        let unit_s = OrderedSetPartition::full(n);
        let unit_b = Permutation::identity(n);

        let st = s.product(t)?;
        let bc = b.compose(c)?;

        self.record(1, act_left(s, &act_left(t, b)) == act_left(&st, b), || {
            format!("s={s} t={t} b={b}")
        });
        self.record(
            2,
            act_right(&st, b) == act_right(s, &act_left(t, b)).product(&act_right(t, b))?,
            || format!("s={s} t={t} b={b}"),
        );
        self.record(
            3,
            act_right(&act_right(s, b), c) == act_right(s, &bc),
            || format!("s={s} b={b} c={c}"),
        );
        self.record(
            4,
            act_left(s, &bc) == act_left(s, b).compose(&act_left(&act_right(s, b), c))?,
            || format!("s={s} b={b} c={c}"),
        );
        self.record(5, act_left(&unit_s, b) == *b, || format!("b={b}"));
        self.record(6, act_left(s, &unit_b) == unit_b, || format!("s={s}"));
        self.record(7, act_right(s, &unit_b) == *s, || format!("s={s}"));
        self.record(8, act_right(&unit_s, b) == unit_s, || format!("b={b}"));
        Ok(())
    }

    fn record(&mut self, axiom: usize, ok: bool, witness: impl FnOnce() -> String) {
        let out = &mut self.outcomes[axiom - 1];
        out.cases += 1;
        if !ok && out.counterexample.is_none() {
            out.counterexample = Some(witness());
        }
    }
}

/// Verifies the eight matched-pair axioms exhaustively over all
/// quadruples `(s, t, b, c)`.
pub fn matched_pair_check_exhaustive(n: usize) -> Result<MatchedPairReport> {
    if n == 0 || n > 4 {
        return Err(Error::ResourceGuard(format!(
            "exhaustive matched-pair check supports 1..=4, got {n}"
        )));
    }
    let partitions = OrderedSetPartition::all(n);
    let perms = Permutation::all(n);
    let mut checker = AxiomChecker::new();
    // Axioms 1, 2 quantify over (s, t, b); 3, 4 over (s, b, c). Checking
    // quadruples with c tied to a rotating index covers both families
    // exhaustively without the full 4-fold product.
    for s in &partitions {
        for t in &partitions {
            for b in &perms {
                for c in &perms {
                    checker.check(s, t, b, c)?;
                }
            }
        }
    }
    Ok(MatchedPairReport {
        n,
        exhaustive: true,
        axioms: checker.outcomes,
    })
}

/// Verifies the axioms on `samples` random quadruples drawn from a
/// seeded generator.
pub fn matched_pair_check_sampled(
    n: usize,
    samples: u64,
    rng: &mut impl Rng,
) -> Result<MatchedPairReport> {
    let mut checker = AxiomChecker::new();
    for _ in 0..samples {
        let s = random_partition(n, rng);
        let t = random_partition(n, rng);
        let b = random_permutation(n, rng);
        let c = random_permutation(n, rng);
        checker.check(&s, &t, &b, &c)?;
    }
    Ok(MatchedPairReport {
        n,
        exhaustive: false,
        axioms: checker.outcomes,
    })
}

/// A random permutation (Fisher-Yates, deterministic for a seeded rng).
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        images.swap(i, j);
    }
    Permutation::new(images).expect("shuffle of 1..=n")
}

/// A random ordered set partition: labels each element, then orders
/// blocks by label. Not uniform, but supported everywhere.
pub fn random_partition(n: usize, rng: &mut impl Rng) -> OrderedSetPartition {
    let m = rng.random_range(1..=n);
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 1..=n {
        blocks[rng.random_range(0..m)].push(v);
    }
    blocks.retain(|b| !b.is_empty());
    OrderedSetPartition::new(n, blocks).expect("labels cover 1..=n")
}

/// A random element of `R_n`.
pub fn random_element(n: usize, rng: &mut impl Rng) -> PMElement {
    PMElement {
        perm: random_permutation(n, rng),
        partition: random_partition(n, rng),
    }
}

#[derive(Serialize, Deserialize)]
struct PMElementRepr {
    n: usize,
    perm: Vec<usize>,
    partition: Vec<Vec<usize>>,
}

impl Serialize for PMElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PMElementRepr {
            n: self.n(),
            perm: self.perm.images().to_vec(),
            partition: self.partition.blocks().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PMElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PMElementRepr::deserialize(deserializer)?;
        if repr.perm.len() != repr.n {
            return Err(D::Error::custom(format!(
                "perm has {} entries, expected n={}",
                repr.perm.len(),
                repr.n
            )));
        }
        let perm = Permutation::new(repr.perm).map_err(D::Error::custom)?;
        let partition =
            OrderedSetPartition::new(repr.n, repr.partition).map_err(D::Error::custom)?;
        PMElement::new(perm, partition).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn osp(n: usize, blocks: &[&[usize]]) -> OrderedSetPartition {
        OrderedSetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn elem(perm: Vec<usize>, blocks: &[&[usize]]) -> PMElement {
        let n = perm.len();
        PMElement::new(Permutation::new(perm).unwrap(), osp(n, blocks)).unwrap()
    }

    #[test]
    fn product_follows_the_pullback_formula() {
        let a = elem(vec![2, 1, 3], &[&[1, 2], &[3]]);
        let b = elem(vec![1, 2, 3], &[&[1], &[2, 3]]);
        let ab = a.product(&b).unwrap();
        assert_eq!(ab, elem(vec![2, 1, 3], &[&[1], &[2], &[3]]));
    }

    #[test]
    fn unit_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_element(4, &mut rng);
            assert_eq!(x.product(&PMElement::unit(4)).unwrap(), x);
            assert_eq!(PMElement::unit(4).product(&x).unwrap(), x);
        }
    }

    #[test]
    fn star_examples() {
        let unit = PMElement::unit(3);
        assert_eq!(unit.star(), unit);
        let a = elem(vec![2, 1, 3], &[&[1], &[2, 3]]);
        assert_eq!(a.star(), elem(vec![2, 1, 3], &[&[2], &[1, 3]]));
    }

    #[test]
    fn inverse_monoid_laws_hold_on_r3() {
        for a in enumerate(3).unwrap() {
            let star = a.star();
            assert_eq!(a.product(&star).unwrap().product(&a).unwrap(), a);
            assert_eq!(star.product(&a).unwrap().product(&star).unwrap(), star);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(1).unwrap().len(), 1);
        assert_eq!(enumerate(2).unwrap().len(), 6);
        assert_eq!(enumerate(3).unwrap().len(), 78);
        assert!(enumerate(9).is_err());
        for n in 1..=4 {
            let count = enumerate(n).unwrap().len() as u64;
            assert_eq!(count, count_via_stirling(n));
            assert_eq!(count, count_multinomial(n));
        }
    }

    #[test]
    fn idempotent_counts_are_ordered_bell() {
        assert_eq!(idempotents(1).len(), 1);
        assert_eq!(idempotents(2).len(), 3);
        assert_eq!(idempotents(3).len(), 13);
        for e in idempotents(3) {
            assert!(e.is_idempotent());
        }
    }

    #[test]
    fn lambda_reads_cumulative_block_sizes() {
        let full = PMElement::unit(3);
        assert!(full.lambda().is_unit());
        let a = elem(vec![1, 2, 3], &[&[2], &[1, 3]]);
        assert_eq!(a.lambda().cuts(), &[1]);
        let mut class_sizes = std::collections::BTreeMap::new();
        for x in enumerate(3).unwrap() {
            *class_sizes.entry(x.lambda()).or_insert(0u64) += 1;
        }
        assert_eq!(class_sizes.len(), 4);
        assert_eq!(class_sizes.values().sum::<u64>(), 78);
    }

    #[test]
    fn standardize_is_order_preserving_on_blocks() {
        let p = osp(3, &[&[2], &[1, 3]]);
        let (w, q) = standardize_partition(&p);
        assert_eq!(w.images(), &[2, 1, 3]);
        assert_eq!(q.cuts(), &[1]);
        for n in 1..=4 {
            for p in OrderedSetPartition::all(n) {
                let (w, q) = standardize_partition(&p);
                assert_eq!(p.map_image(&w), q.to_partition());
            }
        }
    }

    #[test]
    fn matrix_tuple_realization_round_trips() {
        let unit2 = PMElement::unit(2).to_matrix_tuple();
        assert_eq!(unit2.terms().len(), 1);
        assert_eq!(
            unit2.terms()[0],
            [(1usize, 1usize), (2, 2)].into_iter().collect()
        );

        let a = elem(vec![2, 1, 3], &[&[1, 2], &[3]]);
        let t = a.to_matrix_tuple();
        assert_eq!(t.terms()[0], [(2usize, 1usize), (1, 2)].into_iter().collect());
        assert_eq!(t.terms()[1], [(3usize, 3usize)].into_iter().collect());

        for x in enumerate(3).unwrap() {
            assert_eq!(x.to_matrix_tuple().to_element().unwrap(), x);
        }
    }

    #[test]
    fn matched_pair_axioms_hold_exhaustively() {
        for n in 1..=3 {
            let report = matched_pair_check_exhaustive(n).unwrap();
            assert!(report.passed(), "axioms failed: {report:?}");
        }
    }

    #[test]
    fn bicrossed_product_agrees_with_rn_product() {
        // (b,s)(c,t) = (b (s -> c), (s <- c) t) must be the R_n product.
        for a in enumerate(2).unwrap() {
            for b in enumerate(2).unwrap() {
                let left = a.perm().compose(&act_left(a.partition(), b.perm())).unwrap();
                let right = act_right(a.partition(), b.perm())
                    .product(b.partition())
                    .unwrap();
                let via_actions = PMElement::new(left, right).unwrap();
                assert_eq!(via_actions, a.product(&b).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip_matches_the_documented_shape() {
        let a = elem(vec![2, 1, 3], &[&[1, 2], &[3]]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":3,"perm":[2,1,3],"partition":[[1,2],[3]]}"#);
        let back: PMElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PMElement>(r#"{"n":2,"perm":[1,1],"partition":[[1,2]]}"#).is_err());
    }
}
