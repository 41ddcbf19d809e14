//! Reduced words in the free group `F(x_1, ..., x_n)` and substitution
//! endomorphisms, including the Artin generators `tau_k` and their
//! explicit inverses.
//!
//! Letters are stored as signed generator indices: `+g` is `x_g`, `-g`
//! is `x_g^-1`, with `g` 1-based. Words are kept freely reduced at all
//! times, so structural equality is equality in the free group.

use std::fmt;

use crate::{Error, Result};

/// A freely reduced word in `F(x_1, ..., x_n)`.
///
/// The empty word is the identity. Serializes as `x1 x2^-1 x1`
/// (space-separated, `^-1` suffix for inverses).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    /// The identity word.
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// A single generator `x_g`.
    pub fn generator(g: usize) -> Self {
        FreeWord {
            letters: vec![g as i32],
        }
    }

    /// Freely reduces a raw letter sequence. Indices must lie in `1..=n`.
    ///
    /// A single left-to-right pass with a stack; the result is the unique
    /// reduced word equal to the input, and reducing again is a no-op.
    pub fn reduce(n: usize, raw: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut stack: Vec<i32> = Vec::new();
        for l in raw {
            let g = l.unsigned_abs() as usize;
            if l == 0 || g > n {
                return Err(Error::IndexOutOfRange {
                    what: "free group generator",
                    index: g,
                    max: n,
                });
            }
            push_reduced(&mut stack, l);
        }
        Ok(FreeWord { letters: stack })
    }

    /// Letters as signed indices (`+g` for `x_g`, `-g` for its inverse).
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Wraps letters already known to be freely reduced (contiguous
    /// slices of reduced words stay reduced).
    pub(crate) fn from_reduced(letters: Vec<i32>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        FreeWord { letters }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse word (reversed, signs flipped). Stays reduced.
    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Concatenation followed by reduction.
    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        FreeWord { letters: stack }
    }

    /// Keeps only letters whose generator index satisfies `keep`,
    /// then reduces. This is the retraction homomorphism killing the
    /// discarded generators.
    pub fn retain_generators(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut stack = Vec::new();
        for &l in &self.letters {
            if keep(l.unsigned_abs() as usize) {
                push_reduced(&mut stack, l);
            }
        }
        FreeWord { letters: stack }
    }

    /// Parses the `x1 x2^-1` syntax. An empty (or all-whitespace) string
    /// is the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for (tok_idx, tok) in text.split_whitespace().enumerate() {
            let (body, sign) = match tok.strip_suffix("^-1") {
                Some(b) => (b, -1),
                None => (tok, 1),
            };
            let idx: usize = body
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| {
                    Error::parse(tok_idx, (0, tok.len()), format!("bad letter `{tok}`"))
                })?;
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange {
                    what: "free group generator",
                    index: idx,
                    max: n,
                });
            }
            letters.push(sign * idx as i32);
        }
        FreeWord::reduce(n, letters)
    }
}

fn push_reduced(stack: &mut Vec<i32>, l: i32) {
    if stack.last() == Some(&-l) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// A substitution endomorphism of `F(x_1, ..., x_n)`: a total assignment
/// of a reduced word to every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeEndo {
    n: usize,
    images: Vec<FreeWord>,
}

impl FreeEndo {
    /// The identity endomorphism.
    pub fn identity(n: usize) -> Self {
        FreeEndo {
            n,
            images: (1..=n).map(FreeWord::generator).collect(),
        }
    }

    /// Builds an endomorphism from generator images (index `g` maps to
    /// `images[g-1]`).
    pub fn new(n: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != n {
            return Err(Error::SizeMismatch {
                left: images.len(),
                right: n,
            });
        }
        Ok(FreeEndo { n, images })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// The image of `x_g`.
    pub fn image(&self, g: usize) -> &FreeWord {
        &self.images[g - 1]
    }

    /// Applies the substitution to a word and reduces.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut stack = Vec::new();
        for &l in w.letters() {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &m in img.letters() {
                    push_reduced(&mut stack, m);
                }
            } else {
                for &m in img.letters().iter().rev() {
                    push_reduced(&mut stack, -m);
                }
            }
        }
        FreeWord { letters: stack }
    }

    /// Composition: `(f.compose(g))(x) = f(g(x))`, the right factor
    /// acting first.
    pub fn compose(&self, g: &FreeEndo) -> FreeEndo {
        FreeEndo {
            n: self.n,
            images: g.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    /// The Artin generator `tau_k`: `x_k -> x_k^-1 x_{k+1} x_k`,
    /// `x_{k+1} -> x_k`, all other generators fixed.
    pub fn artin(k: usize, n: usize) -> Result<Self> {
        check_artin_index(k, n)?;
        let mut images: Vec<FreeWord> = (1..=n).map(FreeWord::generator).collect();
        let k_i = k as i32;
        images[k - 1] = FreeWord::reduce(n, [-k_i, k_i + 1, k_i])?;
        images[k] = FreeWord::generator(k);
        Ok(FreeEndo { n, images })
    }

    /// The explicit inverse of `tau_k`: `x_k -> x_{k+1}`,
    /// `x_{k+1} -> x_{k+1} x_k x_{k+1}^-1`.
    pub fn artin_inv(k: usize, n: usize) -> Result<Self> {
        check_artin_index(k, n)?;
        let mut images: Vec<FreeWord> = (1..=n).map(FreeWord::generator).collect();
        let k_i = k as i32;
        images[k - 1] = FreeWord::generator(k + 1);
        images[k] = FreeWord::reduce(n, [k_i + 1, k_i, -(k_i + 1)])?;
        Ok(FreeEndo { n, images })
    }
}

fn check_artin_index(k: usize, n: usize) -> Result<()> {
    if k == 0 || k + 1 > n {
        return Err(Error::IndexOutOfRange {
            what: "Artin generator",
            index: k,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// The word `x_n x_{n-1} ... x_2 x_1`, fixed by every braid
/// automorphism.
pub fn descending_word(n: usize) -> FreeWord {
    FreeWord {
        letters: (1..=n as i32).rev().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, raw: &[i32]) -> FreeWord {
        FreeWord::reduce(n, raw.iter().copied()).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverse_pairs() {
        assert!(w(2, &[1, -1]).is_identity());
        assert_eq!(w(2, &[1, 2, -2, 1]), w(2, &[1, 1]));
        assert_eq!(w(2, &[-1, 2, 1]).letters(), &[-1, 2, 1]);
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert!(FreeWord::reduce(2, [3]).is_err());
        assert!(FreeWord::reduce(2, [0]).is_err());
    }

    #[test]
    fn artin_action_on_generators() {
        let t1 = FreeEndo::artin(1, 2).unwrap();
        assert_eq!(t1.apply(&FreeWord::generator(1)), w(2, &[-1, 2, 1]));
        assert_eq!(t1.apply(&FreeWord::generator(2)), FreeWord::generator(1));
        let id = FreeEndo::identity(3);
        let word = w(3, &[2, -3, 1]);
        assert_eq!(id.apply(&word), word);
    }

    #[test]
    fn artin_inverse_composes_to_identity() {
        for n in 2..=6 {
            for k in 1..n {
                let t = FreeEndo::artin(k, n).unwrap();
                let ti = FreeEndo::artin_inv(k, n).unwrap();
                assert_eq!(t.compose(&ti), FreeEndo::identity(n));
                assert_eq!(ti.compose(&t), FreeEndo::identity(n));
            }
        }
    }

    #[test]
    fn braid_relations_hold_for_artin_generators() {
        for n in 3..=6usize {
            for i in 1..n {
                for j in 1..n {
                    if i.abs_diff(j) >= 2 {
                        let ti = FreeEndo::artin(i, n).unwrap();
                        let tj = FreeEndo::artin(j, n).unwrap();
                        assert_eq!(ti.compose(&tj), tj.compose(&ti));
                    }
                }
            }
            for i in 1..n - 1 {
                let a = FreeEndo::artin(i, n).unwrap();
                let b = FreeEndo::artin(i + 1, n).unwrap();
                assert_eq!(
                    a.compose(&b).compose(&a),
                    b.compose(&a).compose(&b),
                    "braid relation at i={i}, n={n}"
                );
            }
        }
    }

    #[test]
    fn composition_by_hand_substitution() {
        // (tau_1 . tau_2)(x_3) applies tau_2 first: x_3 -> x_2, then x_2 -> x_1.
        let t1 = FreeEndo::artin(1, 3).unwrap();
        let t2 = FreeEndo::artin(2, 3).unwrap();
        let c = t1.compose(&t2);
        assert_eq!(c.apply(&FreeWord::generator(3)), FreeWord::generator(1));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let word = w(3, &[1, -2, 1]);
        assert_eq!(word.to_string(), "x1 x2^-1 x1");
        assert_eq!(FreeWord::parse("x1 x2^-1 x1", 3).unwrap(), word);
        assert_eq!(FreeWord::parse("", 3).unwrap(), FreeWord::identity());
    }

    fn raw_letters(n: usize) -> impl Strategy<Value = Vec<i32>> {
        let n = n as i32;
        prop::collection::vec((1..=n).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]), 0..24)
    }

    proptest! {
        #[test]
        fn reduce_is_a_homomorphism(u in raw_letters(4), v in raw_letters(4)) {
            let mut uv = u.clone();
            uv.extend_from_slice(&v);
            let direct = FreeWord::reduce(4, uv).unwrap();
            let split = FreeWord::reduce(4, u).unwrap().concat(&FreeWord::reduce(4, v).unwrap());
            prop_assert_eq!(direct, split);
        }

        #[test]
        fn compose_matches_apply(raw in raw_letters(3), seq in prop::collection::vec(1usize..3, 0..6)) {
            let word = FreeWord::reduce(3, raw).unwrap();
            let endos: Vec<FreeEndo> = seq.iter().map(|&k| FreeEndo::artin(k, 3).unwrap()).collect();
            let composed = endos.iter().fold(FreeEndo::identity(3), |acc, e| acc.compose(e));
            let stepped = endos.iter().rev().fold(word.clone(), |acc, e| e.apply(&acc));
            prop_assert_eq!(composed.apply(&word), stepped);
        }
    }
}
