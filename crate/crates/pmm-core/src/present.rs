//! Words over the `R_n` generating set, semantic evaluation, the five
//! relation schemas, and normal forms.
//!
//! Equality in `R_n` is decided semantically (evaluate both sides),
//! not by rewriting. Relation instances stay purely syntactic so that
//! checking them exercises the evaluator on both sides.

use rand::Rng;

use crate::perm::Permutation;
use crate::pm::{standardize_partition, PMElement};
use crate::setpart::StandardComposition;
use crate::words::{RnGenerator, RnWord};
use crate::{Error, Result};

/// The concrete element a generator letter denotes: `s_i` is the
/// adjacent transposition with the full partition, `e_cuts` the
/// identity with the interval partition.
pub fn generator_element(g: &RnGenerator, n: usize) -> Result<PMElement> {
    match g {
        RnGenerator::S(i) => PMElement::new(
            Permutation::transposition(n, *i)?,
            crate::setpart::OrderedSetPartition::full(n),
        ),
        RnGenerator::E(cuts) => {
            if cuts.n() != n {
                return Err(Error::SizeMismatch {
                    left: cuts.n(),
                    right: n,
                });
            }
            PMElement::new(Permutation::identity(n), cuts.to_partition())
        }
    }
}

/// Evaluates a word by folding the monoid product left to right. The
/// empty word is the unit.
pub fn eval_word(word: &[RnGenerator], n: usize) -> Result<PMElement> {
    let mut acc = PMElement::unit(n);
    for g in word {
        acc = acc.product(&generator_element(g, n)?)?;
    }
    Ok(acc)
}

/// The block index `j` (1-based) with `{i, i+1}` inside block `j` of
/// the interval partition of `cuts`, if any.
pub fn i_star(i: usize, cuts: &StandardComposition) -> Option<usize> {
    cuts.enclosing_block(i)
}

/// Computes the idempotent data for the right-hand side of the mixing
/// relation: `q` standardizes `(k-partition) * sigma(l-partition)`
/// where `sigma` is the permutation of the middle word, and `w` is the
/// canonical standardizer (`w(p) = q` blockwise). Errors if the side
/// condition on the middle word's first index is violated.
pub fn compute_q(
    kcuts: &StandardComposition,
    mid: &[usize],
    lcuts: &StandardComposition,
) -> Result<(StandardComposition, Permutation)> {
    let n = kcuts.n();
    if lcuts.n() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: lcuts.n(),
        });
    }
    check_mixing_side_condition(kcuts, mid)?;
    let sigma = perm_of_s_word(mid, n)?;
    let p = kcuts
        .to_partition()
        .product(&lcuts.to_partition().map_image(&sigma))?;
    let (w, q) = standardize_partition(&p);
    Ok((q, w))
}

fn check_mixing_side_condition(kcuts: &StandardComposition, mid: &[usize]) -> Result<()> {
    if let Some(&i1) = mid.first() {
        if let Some(j) = kcuts.enclosing_block(i1) {
            return Err(Error::SideCondition(format!(
                "{{{i1},{}}} lies inside block {j} of {kcuts}",
                i1 + 1
            )));
        }
    }
    Ok(())
}

/// The permutation of a word in adjacent transpositions (right factor
/// acting first).
pub fn perm_of_s_word(word: &[usize], n: usize) -> Result<Permutation> {
    let mut acc = Permutation::identity(n);
    for &i in word {
        acc = acc.compose(&Permutation::transposition(n, i)?)?;
    }
    Ok(acc)
}

/// Identifier of a relation schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationSchema {
    /// `s_i^2 = 1`
    Involution,
    /// `s_i s_j = s_j s_i` for `|i-j| >= 2`
    FarCommute,
    /// `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}`
    Braid,
    /// `e_K s_i = s_i e_K` when `{i, i+1}` lies inside a block of `K`
    BlockCommute,
    /// `e_K s_{i_1}..s_{i_r} e_L = Ad(w)(e_q) s_{i_1}..s_{i_r}`
    Mixing,
}

impl RelationSchema {
    pub fn label(&self) -> &'static str {
        match self {
            RelationSchema::Involution => "involution",
            RelationSchema::FarCommute => "far-commute",
            RelationSchema::Braid => "braid",
            RelationSchema::BlockCommute => "block-commute",
            RelationSchema::Mixing => "mixing",
        }
    }
}

/// Parameters selecting a concrete relation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationParams {
    Involution {
        i: usize,
    },
    FarCommute {
        i: usize,
        j: usize,
    },
    Braid {
        i: usize,
    },
    BlockCommute {
        i: usize,
        cuts: StandardComposition,
    },
    Mixing {
        kcuts: StandardComposition,
        mid: Vec<usize>,
        lcuts: StandardComposition,
    },
}

/// A concrete syntactic relation: two words claimed equal in `R_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub schema: RelationSchema,
    pub lhs: RnWord,
    pub rhs: RnWord,
    pub params: String,
}

fn s_index_ok(i: usize, n: usize) -> Result<()> {
    if i == 0 || i + 1 > n {
        return Err(Error::IndexOutOfRange {
            what: "generator",
            index: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// Builds the concrete two-sided word instance for the given schema
/// parameters, enforcing the schema's side conditions.
pub fn instantiate_relation(params: &RelationParams, n: usize) -> Result<RelationInstance> {
    use RnGenerator::{E, S};
    match params {
        RelationParams::Involution { i } => {
            s_index_ok(*i, n)?;
            Ok(RelationInstance {
                schema: RelationSchema::Involution,
                lhs: vec![S(*i), S(*i)],
                rhs: vec![],
                params: format!("i={i}"),
            })
        }
        RelationParams::FarCommute { i, j } => {
            s_index_ok(*i, n)?;
            s_index_ok(*j, n)?;
            if i.abs_diff(*j) < 2 {
                return Err(Error::SideCondition(format!(
                    "|{i}-{j}| must be at least 2"
                )));
            }
            Ok(RelationInstance {
                schema: RelationSchema::FarCommute,
                lhs: vec![S(*i), S(*j)],
                rhs: vec![S(*j), S(*i)],
                params: format!("i={i}, j={j}"),
            })
        }
        RelationParams::Braid { i } => {
            s_index_ok(*i + 1, n)?;
            Ok(RelationInstance {
                schema: RelationSchema::Braid,
                lhs: vec![S(*i), S(*i + 1), S(*i)],
                rhs: vec![S(*i + 1), S(*i), S(*i + 1)],
                params: format!("i={i}"),
            })
        }
        RelationParams::BlockCommute { i, cuts } => {
            s_index_ok(*i, n)?;
            let j = i_star(*i, cuts).ok_or_else(|| {
                Error::SideCondition(format!("{{{i},{}}} not inside a block of {cuts}", i + 1))
            })?;
            Ok(RelationInstance {
                schema: RelationSchema::BlockCommute,
                lhs: vec![E(cuts.clone()), S(*i)],
                rhs: vec![S(*i), E(cuts.clone())],
                params: format!("i={i}, cuts={cuts}, block={j}"),
            })
        }
        RelationParams::Mixing { kcuts, mid, lcuts } => {
            for &i in mid {
                s_index_ok(i, n)?;
            }
            let (q, w) = compute_q(kcuts, mid, lcuts)?;
            // Ad(w)(e_q) expands syntactically to  w^-1-word . e_q . w-word.
            let w_word = w.adjacent_word();
            let w_inv_word = w.inverse().adjacent_word();
            let mut rhs: RnWord = w_inv_word.iter().map(|&i| S(i)).collect();
            rhs.push(E(q.clone()));
            rhs.extend(w_word.iter().map(|&i| S(i)));
            rhs.extend(mid.iter().map(|&i| S(i)));

            let mut lhs: RnWord = vec![E(kcuts.clone())];
            lhs.extend(mid.iter().map(|&i| S(i)));
            lhs.push(E(lcuts.clone()));
            Ok(RelationInstance {
                schema: RelationSchema::Mixing,
                lhs,
                rhs,
                params: format!("k={kcuts}, mid={mid:?}, l={lcuts}, q={q}, w={w}"),
            })
        }
    }
}

/// True iff both sides of the instance evaluate to the same element.
pub fn check_relation(inst: &RelationInstance, n: usize) -> Result<bool> {
    Ok(eval_word(&inst.lhs, n)? == eval_word(&inst.rhs, n)?)
}

/// Every instantiable (involution / far-commute / braid / block-commute)
/// instance for the given `n`.
pub fn all_local_instances(n: usize) -> Result<Vec<RelationInstance>> {
    let mut out = Vec::new();
    for i in 1..n {
        out.push(instantiate_relation(&RelationParams::Involution { i }, n)?);
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) >= 2 {
                out.push(instantiate_relation(
                    &RelationParams::FarCommute { i, j },
                    n,
                )?);
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        out.push(instantiate_relation(&RelationParams::Braid { i }, n)?);
    }
    for cuts in StandardComposition::all(n) {
        for i in 1..n {
            if i_star(i, &cuts).is_some() {
                out.push(instantiate_relation(
                    &RelationParams::BlockCommute {
                        i,
                        cuts: cuts.clone(),
                    },
                    n,
                )?);
            }
        }
    }
    Ok(out)
}

/// Every mixing instance with middle word length at most `mid_max`
/// (including the degenerate empty middle word).
pub fn all_mixing_instances(n: usize, mid_max: usize) -> Result<Vec<RelationInstance>> {
    let comps = StandardComposition::all(n);
    let mut mids: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..mid_max {
        let mut next = Vec::new();
        for m in &frontier {
            for i in 1..n {
                let mut ext = m.clone();
                ext.push(i);
                next.push(ext);
            }
        }
        mids.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for k in &comps {
        for l in &comps {
            for mid in &mids {
                match instantiate_relation(
                    &RelationParams::Mixing {
                        kcuts: k.clone(),
                        mid: mid.clone(),
                        lcuts: l.clone(),
                    },
                    n,
                ) {
                    Ok(inst) => out.push(inst),
                    Err(Error::SideCondition(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

/// A random valid mixing instance (middle word of length up to
/// `mid_max`). Retries until the side condition is met.
pub fn sample_mixing_instance(
    n: usize,
    mid_max: usize,
    rng: &mut impl Rng,
) -> Result<RelationInstance> {
    let comps = StandardComposition::all(n);
    loop {
        let k = comps[rng.random_range(0..comps.len())].clone();
        let l = comps[rng.random_range(0..comps.len())].clone();
        let len = rng.random_range(0..=mid_max);
        let mid: Vec<usize> = (0..len).map(|_| rng.random_range(1..n)).collect();
        match instantiate_relation(
            &RelationParams::Mixing {
                kcuts: k,
                mid,
                lcuts: l,
            },
            n,
        ) {
            Ok(inst) => return Ok(inst),
            Err(Error::SideCondition(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A word `w_1 . e_q . w_2` evaluating back to `a`: `(w, q)`
/// standardizes the partition, `w_2` spells `w`, and `w_1` spells
/// `sigma w^-1`. The idempotent letter is omitted when `q` is the unit,
/// so the unit element gets the empty word.
pub fn normal_form(a: &PMElement) -> RnWord {
    let (w, q) = standardize_partition(a.partition());
    let front = a.perm().compose(&w.inverse()).expect("same n");
    let mut word: RnWord = front
        .adjacent_word()
        .into_iter()
        .map(RnGenerator::S)
        .collect();
    if !q.is_unit() {
        word.push(RnGenerator::E(q));
        word.extend(w.adjacent_word().into_iter().map(RnGenerator::S));
    }
    word
}
