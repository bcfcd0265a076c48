//! Reduced words in the free group on two generators and the cylinder
//! algebra of its boundary at a finite level.
//!
//! An infinite reduced word over `{a, a⁻¹, b, b⁻¹}` is pinned down, to
//! level `L`, by its length-`L` prefix; the characteristic functions of
//! those prefix cylinders form a basis of size `4·3^(L-1)`. Left
//! multiplication by a generator permutes the boundary and is realized
//! here as an exact integer map that always lands one level deeper.

use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown letter {0:?}: expected one of a, A, b, B")]
    UnknownLetter(char),
}

/// Generator letters in the fixed order a < a⁻¹ < b < b⁻¹ used everywhere
/// for tie-breaking and basis enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Letter, WordError> {
        match c {
            'a' => Ok(Letter::A),
            'A' => Ok(Letter::AInv),
            'b' => Ok(Letter::B),
            'B' => Ok(Letter::BInv),
            other => Err(WordError::UnknownLetter(other)),
        }
    }

    /// Contribution to the exponent sum of `a`.
    pub fn a_exponent(self) -> i64 {
        match self {
            Letter::A => 1,
            Letter::AInv => -1,
            _ => 0,
        }
    }

    /// Contribution to the exponent sum of `b`.
    pub fn b_exponent(self) -> i64 {
        match self {
            Letter::B => 1,
            Letter::BInv => -1,
            _ => 0,
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord::default()
    }

    pub fn single(l: Letter) -> Self {
        ReducedWord { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn prefix(&self, n: usize) -> ReducedWord {
        ReducedWord {
            letters: self.letters[..n.min(self.letters.len())].to_vec(),
        }
    }

    pub fn starts_with(&self, other: &ReducedWord) -> bool {
        self.letters.len() >= other.letters.len()
            && self.letters[..other.letters.len()] == other.letters[..]
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenate and cancel at the junction.
    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ReducedWord { letters: out }
    }

    pub fn exponent_sum_a(&self) -> i64 {
        self.letters.iter().map(|l| l.a_exponent()).sum()
    }

    pub fn exponent_sum_b(&self) -> i64 {
        self.letters.iter().map(|l| l.b_exponent()).sum()
    }

    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn parse(s: &str) -> Result<ReducedWord, WordError> {
        let letters = s
            .chars()
            .map(Letter::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(reduce(&letters))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Cancel adjacent inverse pairs until none remain.
pub fn reduce(letters: &[Letter]) -> ReducedWord {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    ReducedWord { letters: out }
}

/// All reduced words of exactly the given length, lexicographic in the
/// letter order. Length 0 gives the singleton empty word.
pub fn words_of_length(len: usize) -> Vec<ReducedWord> {
    let mut words = vec![ReducedWord::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(words.len() * 3);
        for w in &words {
            for l in Letter::ALL {
                if w.last() != Some(l.inverse()) {
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(ReducedWord { letters });
                }
            }
        }
        words = next;
    }
    words
}

/// Indexed basis of the level-`L` prefix cylinders.
pub struct CylinderBasis {
    level: usize,
    words: Vec<ReducedWord>,
    index: HashMap<ReducedWord, usize>,
}

impl CylinderBasis {
    pub fn new(level: usize) -> Self {
        let words = words_of_length(level);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        CylinderBasis {
            level,
            words,
            index,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[ReducedWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &ReducedWord {
        &self.words[i]
    }

    pub fn index_of(&self, w: &ReducedWord) -> usize {
        self.index[w]
    }
}

/// Integer combination of the level-`L` cylinders: an element of the
/// boundary function lattice truncated at level `L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryVector {
    pub level: usize,
    pub coeffs: Vec<i64>,
}

/// Serializes as `{level, coeffs: {word: coefficient}}` with zero entries
/// dropped — the wire format shared with the command line.
impl Serialize for BoundaryVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("BoundaryVector", 2)?;
        state.serialize_field("level", &self.level)?;
        state.serialize_field("coeffs", &self.to_named_coeffs())?;
        state.end()
    }
}

impl BoundaryVector {
    pub fn zero(level: usize) -> Self {
        BoundaryVector {
            level,
            coeffs: vec![0; words_of_length(level).len()],
        }
    }

    /// Characteristic function of the prefix cylinder of `w`.
    pub fn cylinder(w: &ReducedWord) -> Self {
        let basis = CylinderBasis::new(w.len());
        let mut v = BoundaryVector::zero(w.len());
        v.coeffs[basis.index_of(w)] = 1;
        v
    }

    /// All-ones vector: the constant function 1 at this level.
    pub fn ones(level: usize) -> Self {
        let mut v = BoundaryVector::zero(level);
        v.coeffs.iter_mut().for_each(|c| *c = 1);
        v
    }

    /// Value at the infinite word with the given (sufficiently long) prefix.
    pub fn evaluate(&self, prefix: &ReducedWord) -> i64 {
        assert!(prefix.len() >= self.level, "prefix too short to evaluate");
        let basis = CylinderBasis::new(self.level);
        self.coeffs[basis.index_of(&prefix.prefix(self.level))]
    }

    /// Serialize as a word -> coefficient map, dropping zeros.
    pub fn to_named_coeffs(&self) -> std::collections::BTreeMap<String, i64> {
        let basis = CylinderBasis::new(self.level);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (basis.word(i).to_string(), c))
            .collect()
    }
}

/// Rewrite a level-`L` vector at level `L+1`: each cylinder is the disjoint
/// union of its three one-letter extensions, so the function is unchanged.
pub fn refine(v: &BoundaryVector) -> BoundaryVector {
    let basis = CylinderBasis::new(v.level);
    let target = CylinderBasis::new(v.level + 1);
    let mut out = BoundaryVector::zero(v.level + 1);
    for (i, &c) in v.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let w = basis.word(i);
        for l in Letter::ALL {
            if w.last() == Some(l.inverse()) {
                continue;
            }
            let mut letters = w.letters.clone();
            letters.push(l);
            out.coeffs[target.index_of(&ReducedWord { letters })] += c;
        }
    }
    out
}

/// Image of a level-`L` vector under left multiplication by a generator,
/// expressed at level `L+1`.
///
/// For a cylinder `p_ω` the image cylinder set is: `C(gω)` when `ω` does
/// not start with `g⁻¹`; the complement of `C(g)` when `ω = g⁻¹`; and
/// `C(ω′)` when `ω = g⁻¹ω′` with `ω′` nonempty. The level always bumps by
/// exactly one, even when the image is expressible lower.
pub fn act_generator(g: Letter, v: &BoundaryVector) -> BoundaryVector {
    let basis = CylinderBasis::new(v.level);
    let target = CylinderBasis::new(v.level + 1);
    let mut out = BoundaryVector::zero(v.level + 1);
    for (i, &c) in v.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let w = basis.word(i);
        if w.first() != Some(g.inverse()) {
            let mut letters = vec![g];
            letters.extend_from_slice(&w.letters);
            out.coeffs[target.index_of(&ReducedWord { letters })] += c;
        } else if w.len() == 1 {
            // g · C(g⁻¹) is everything not starting with g
            for (j, u) in target.words().iter().enumerate() {
                if u.first() != Some(g) {
                    out.coeffs[j] += c;
                }
            }
        } else {
            // g · C(g⁻¹ω′) = C(ω′), two letters shorter than the target level
            let tail = &w.letters[1..];
            for (j, u) in target.words().iter().enumerate() {
                if u.letters[..tail.len()] == *tail {
                    out.coeffs[j] += c;
                }
            }
        }
    }
    out
}

fn first_admissible(excluded: &[Letter]) -> Letter {
    Letter::ALL
        .into_iter()
        .find(|l| !excluded.contains(l))
        .expect("at most two exclusions over a four-letter alphabet")
}

fn power(l: Letter, n: i64) -> Vec<Letter> {
    let letter = if n >= 0 { l } else { l.inverse() };
    vec![letter; n.unsigned_abs() as usize]
}

/// Word `g = ω₂[m]·σ₁·b·aᴺ·b·σ₂` moving any cylinder into the target
/// prefix cylinder: `σ₁` is the first letter (in the fixed order) that
/// avoids cancellation after the prefix and before `b`, and `σ₂` the first
/// that avoids cancellation between `b` and the start of the source word.
pub fn minimality_witness(
    omega2_prefix: &ReducedWord,
    omega1_first: Letter,
    n: i64,
) -> ReducedWord {
    assert!(n != 0, "the shift exponent must be nonzero");
    let mut excluded1 = vec![Letter::BInv];
    if let Some(last) = omega2_prefix.last() {
        excluded1.push(last.inverse());
    }
    let sigma1 = first_admissible(&excluded1);
    let sigma2 = first_admissible(&[Letter::BInv, omega1_first.inverse()]);

    let mut letters = omega2_prefix.letters.clone();
    letters.push(sigma1);
    letters.push(Letter::B);
    letters.extend(power(Letter::A, n));
    letters.push(Letter::B);
    letters.push(sigma2);
    assert!(
        ReducedWord::is_reduced(&letters),
        "witness failed to reduce"
    );
    let word = ReducedWord { letters };
    debug_assert!(word.starts_with(omega2_prefix));
    word
}

/// Word `g = ω·σ₁·b·aᴺ·bᴹ·a·σ₂` with both exponent sums zero, so that `g`
/// fixes the commuting factor pointwise while mapping the cylinder of `ω`
/// strictly inside itself. `N` and `M` are solved from the zero-sum
/// constraints; the `σ` pair is the first (in the fixed order) making both
/// solved exponents nonzero.
pub fn infiniteness_witness(omega: &ReducedWord) -> ReducedWord {
    assert!(!omega.is_empty(), "witness needs a nonempty source word");
    let last = omega.last().unwrap();
    let first = omega.first().unwrap();
    let sigma1_pool: Vec<Letter> = Letter::ALL
        .into_iter()
        .filter(|&l| l != last.inverse() && l != Letter::BInv)
        .collect();
    let sigma2_pool: Vec<Letter> = Letter::ALL
        .into_iter()
        .filter(|&l| l != Letter::AInv && l != first.inverse())
        .collect();

    for &s1 in &sigma1_pool {
        for &s2 in &sigma2_pool {
            // zero the letter counts of ω σ₁ b a^N b^M a σ₂
            let n = -(omega.exponent_sum_a() + s1.a_exponent() + s2.a_exponent() + 1);
            let m = -(omega.exponent_sum_b() + s1.b_exponent() + s2.b_exponent() + 1);
            if n == 0 || m == 0 {
                continue;
            }
            let mut letters = omega.letters.clone();
            letters.push(s1);
            letters.push(Letter::B);
            letters.extend(power(Letter::A, n));
            letters.extend(power(Letter::B, m));
            letters.push(Letter::A);
            letters.push(s2);
            assert!(
                ReducedWord::is_reduced(&letters),
                "witness failed to reduce"
            );
            let word = ReducedWord { letters };
            debug_assert_eq!(word.exponent_sum_a(), 0);
            debug_assert_eq!(word.exponent_sum_b(), 0);
            debug_assert!(word.starts_with(omega) && word.len() > omega.len());
            return word;
        }
    }
    unreachable!("some admissible σ pair always yields nonzero exponents")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("aAb"), w("b"));
        assert_eq!(w("abBa"), w("aa"));
        assert_eq!(w(""), ReducedWord::empty());
        assert!(ReducedWord::parse("axb").is_err());
    }

    #[test]
    fn reduce_concat_associative() {
        let x = w("abA");
        let y = w("aB");
        let z = w("ba");
        assert_eq!(x.concat(&y).concat(&z), x.concat(&y.concat(&z)));
    }

    #[test]
    fn cylinder_count() {
        for level in 1..=5 {
            let expect = 4 * 3usize.pow(level as u32 - 1);
            assert_eq!(words_of_length(level).len(), expect);
        }
    }

    #[test]
    fn refine_single_cylinder() {
        let v = BoundaryVector::cylinder(&w("a"));
        let r = refine(&v);
        assert_eq!(r.level, 2);
        let named = r.to_named_coeffs();
        assert_eq!(named.len(), 3);
        for word in ["aa", "ab", "aB"] {
            assert_eq!(named[word], 1);
        }
    }

    #[test]
    fn refine_zero() {
        let r = refine(&BoundaryVector::zero(2));
        assert_eq!(r, BoundaryVector::zero(3));
    }

    #[test]
    fn refine_difference_has_six_terms() {
        let mut v = BoundaryVector::cylinder(&w("b"));
        let vb = BoundaryVector::cylinder(&w("B"));
        for (c, d) in v.coeffs.iter_mut().zip(vb.coeffs.iter()) {
            *c -= d;
        }
        let r = refine(&v);
        let named = r.to_named_coeffs();
        assert_eq!(named.len(), 6);
        assert!(named.values().all(|&c| c == 1 || c == -1));
    }

    #[test]
    fn act_inverse_on_own_cylinder() {
        // a⁻¹ · C(a) is everything not starting with a⁻¹
        let v = BoundaryVector::cylinder(&w("a"));
        let img = act_generator(Letter::AInv, &v);
        let mut expect = BoundaryVector::cylinder(&w("a"));
        for word in ["b", "B"] {
            let u = BoundaryVector::cylinder(&w(word));
            for (c, d) in expect.coeffs.iter_mut().zip(u.coeffs.iter()) {
                *c += d;
            }
        }
        assert_eq!(img, refine(&expect));
    }

    #[test]
    fn act_no_cancellation_is_prefixing() {
        let v = BoundaryVector::cylinder(&w("b"));
        let img = act_generator(Letter::A, &v);
        assert_eq!(img, BoundaryVector::cylinder(&w("ab")));
    }

    #[test]
    fn act_then_inverse_is_double_refine() {
        for start in ["a", "A", "b", "B"] {
            let v = BoundaryVector::cylinder(&w(start));
            for g in Letter::ALL {
                let round_trip = act_generator(g.inverse(), &act_generator(g, &v));
                assert_eq!(round_trip, refine(&refine(&v)), "g={g:?} start={start}");
            }
        }
    }

    #[test]
    fn action_preserves_total_mass() {
        for level in 1..=3 {
            let ones = BoundaryVector::ones(level);
            for g in Letter::ALL {
                assert_eq!(act_generator(g, &ones), refine(&ones));
            }
        }
    }

    #[test]
    fn refine_preserves_evaluation() {
        let mut v = BoundaryVector::zero(2);
        v.coeffs[0] = 3;
        v.coeffs[5] = -2;
        v.coeffs[11] = 7;
        let r = refine(&v);
        for sample in ["aaa", "abA", "bab", "BBa", "Aba"] {
            let word = w(sample);
            assert_eq!(v.evaluate(&word), r.evaluate(&word), "at {sample}");
        }
    }

    #[test]
    fn minimality_witness_examples() {
        // prefix "ba", source starts with a, N = 3
        let g = minimality_witness(&w("ba"), Letter::A, 3);
        assert_eq!(g, w("baabaaaba"));
        // empty prefix, source starts with b, N = 1: σ₁ = σ₂ = a
        let g = minimality_witness(&ReducedWord::empty(), Letter::B, 1);
        assert_eq!(g, w("ababa"));
    }

    #[test]
    fn minimality_witness_prefix_property() {
        for (prefix, first, n) in [("ab", Letter::B, 2), ("BBa", Letter::AInv, -4)] {
            let p = w(prefix);
            let g = minimality_witness(&p, first, n);
            assert!(g.starts_with(&p));
            assert!(ReducedWord::is_reduced(g.letters()));
        }
    }

    #[test]
    fn infiniteness_witness_properties() {
        for source in ["a", "b", "AB", "baB", "aabA"] {
            let omega = w(source);
            let g = infiniteness_witness(&omega);
            assert_eq!(g.exponent_sum_a(), 0, "a-sum for {source}");
            assert_eq!(g.exponent_sum_b(), 0, "b-sum for {source}");
            assert!(g.starts_with(&omega) && g.len() > omega.len());
        }
    }
}
