//! Two-sided sequences over `{1, 2}`: the Fibonacci substitution word,
//! factor languages, block complexity, symbol frequency and run lengths.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("symbol {0} is not 1 or 2")]
    BadSymbol(u8),
    #[error("sequence line must contain exactly one '|' separator")]
    MissingSeparator,
    #[error("window radius {window} too small: need at least {needed}")]
    WindowTooSmall { window: usize, needed: usize },
    #[error("radius {0} exceeds the sequence window")]
    RadiusExceedsWindow(i64),
}

/// Bounded two-sided `{1,2}`-sequence on a symmetric window `[-W, W]`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSequence {
    radius: usize,
    symbols: Vec<u8>,
}

impl BiSequence {
    /// Build from symbols for indices `-W..=W` (so an odd-length slice).
    pub fn new(symbols: Vec<u8>) -> Result<Self, SeqError> {
        assert!(symbols.len() % 2 == 1, "two-sided window must be odd");
        if let Some(&bad) = symbols.iter().find(|&&s| s != 1 && s != 2) {
            return Err(SeqError::BadSymbol(bad));
        }
        Ok(BiSequence {
            radius: symbols.len() / 2,
            symbols,
        })
    }

    pub fn constant(symbol: u8, radius: usize) -> Result<Self, SeqError> {
        BiSequence::new(vec![symbol; 2 * radius + 1])
    }

    /// Periodic repetition of `pattern`, centered so index 0 reads
    /// `pattern[0]`.
    pub fn periodic(pattern: &[u8], radius: usize) -> Result<Self, SeqError> {
        let p = pattern.len() as i64;
        let symbols = (-(radius as i64)..=radius as i64)
            .map(|i| pattern[i.rem_euclid(p) as usize])
            .collect();
        BiSequence::new(symbols)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn get(&self, i: i64) -> u8 {
        self.symbols[(i + self.radius as i64) as usize]
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn in_window(&self, i: i64) -> bool {
        i.unsigned_abs() as usize <= self.radius
    }

    /// Parse the one-line format `symbols '|' symbols`, e.g. `21|121`.
    /// An asymmetric line is centered by trimming the longer side.
    pub fn parse(line: &str) -> Result<Self, SeqError> {
        let line = line.trim();
        let mut parts = line.split('|');
        let (left, right) = match (parts.next(), parts.next(), parts.next()) {
            (Some(l), Some(r), None) => (l, r),
            _ => return Err(SeqError::MissingSeparator),
        };
        let to_syms = |s: &str| -> Result<Vec<u8>, SeqError> {
            s.chars()
                .map(|c| match c {
                    '1' => Ok(1),
                    '2' => Ok(2),
                    other => Err(SeqError::BadSymbol(other as u8)),
                })
                .collect()
        };
        let left = to_syms(left)?;
        let right = to_syms(right)?;
        if right.is_empty() {
            return Err(SeqError::MissingSeparator);
        }
        // window [-W, W] with index 0 the first symbol right of '|'
        let w = left.len().min(right.len() - 1);
        let mut symbols = left[left.len() - w..].to_vec();
        symbols.extend_from_slice(&right[..w + 1]);
        BiSequence::new(symbols)
    }

    /// Render in the same one-line format.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.symbols.len() + 1);
        for (k, &s) in self.symbols.iter().enumerate() {
            if k == self.radius {
                out.push('|');
            }
            out.push(char::from(b'0' + s));
        }
        out
    }
}

impl fmt::Debug for BiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSequence[{}] {}", self.radius, self.render())
    }
}

/// One-sided Fibonacci word by the substitution recursion
/// `f_0 = 1`, `f_1 = 21`, `f_{n+1} = f_n f_{n-1}`.
pub fn fibonacci_word(n: usize) -> Vec<u8> {
    let mut prev = vec![1u8];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![2u8, 1];
    for _ in 1..n {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur
}

/// Stage-`n` two-sided Fibonacci word.
///
/// Stage 0 is `|f_0` and stage k flanks stage k-1 with `f_{3k-2}` on both
/// sides, which by `f_{m+3} = f_{m+1} f_m f_{m+1}` spells the word
/// `f_{3k}` with each stage a centered factor of the next. Index 0 is the
/// first symbol right of the separator.
pub fn two_sided_fibonacci(n: usize) -> BiSequence {
    assert!(n >= 1, "stage must be at least 1");
    let mut left: Vec<u8> = Vec::new();
    let mut right: Vec<u8> = vec![1];
    for k in 1..=n {
        let block = fibonacci_word(3 * k - 2);
        let mut new_left = block.clone();
        new_left.extend_from_slice(&left);
        left = new_left;
        right.extend_from_slice(&block);
    }
    debug_assert_eq!(left.len() + 1, right.len());
    let mut symbols = left;
    symbols.extend_from_slice(&right);
    BiSequence::new(symbols).expect("substitution output is over {1,2}")
}

fn check_window(x: &BiSequence, k: usize) -> Result<(), SeqError> {
    if x.radius() < 8 * k {
        return Err(SeqError::WindowTooSmall {
            window: x.radius(),
            needed: 8 * k,
        });
    }
    Ok(())
}

/// Set of length-`k` factors occurring in the window.
pub fn language(x: &BiSequence, k: usize) -> Result<BTreeSet<Vec<u8>>, SeqError> {
    check_window(x, k)?;
    Ok(factors_of_slice(x.symbols(), k))
}

/// Factors of a plain symbol slice; shared with rotation codings.
pub fn factors_of_slice(symbols: &[u8], k: usize) -> BTreeSet<Vec<u8>> {
    symbols.windows(k).map(<[u8]>::to_vec).collect()
}

/// Number of distinct length-`k` factors in the window.
pub fn block_complexity(x: &BiSequence, k: usize) -> Result<usize, SeqError> {
    Ok(language(x, k)?.len())
}

/// Frequency of the symbol 2 on `[-N, N]`, as an exact rational.
pub fn slope_estimate(x: &BiSequence, n: usize) -> Result<Rational64, SeqError> {
    if n > x.radius() {
        return Err(SeqError::RadiusExceedsWindow(n as i64));
    }
    let count = (-(n as i64)..=n as i64).filter(|&i| x.get(i) == 2).count() as i64;
    Ok(Rational64::new(count, 2 * n as i64 + 1))
}

/// Longest constant run of `symbol` in the window. Growth of this value
/// across increasing windows is the caller's non-simplicity evidence.
pub fn longest_run(x: &BiSequence, symbol: u8) -> usize {
    let mut best = 0usize;
    let mut cur = 0usize;
    for &s in x.symbols() {
        if s == symbol {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word_str(w: &[u8]) -> String {
        w.iter().map(|&s| char::from(b'0' + s)).collect()
    }

    #[test]
    fn fibonacci_first_generations() {
        assert_eq!(word_str(&fibonacci_word(0)), "1");
        assert_eq!(word_str(&fibonacci_word(1)), "21");
        assert_eq!(word_str(&fibonacci_word(2)), "211");
        assert_eq!(word_str(&fibonacci_word(3)), "21121");
    }

    #[test]
    fn fibonacci_lengths_and_two_counts() {
        let f7 = fibonacci_word(7);
        assert_eq!(f7.len(), 34);
        assert_eq!(f7.iter().filter(|&&s| s == 2).count(), 13);
    }

    #[test]
    fn two_sided_stage_one() {
        let x = two_sided_fibonacci(1);
        assert_eq!(x.render(), "21|121");
    }

    #[test]
    fn two_sided_stages_nest() {
        for k in 1..=4 {
            let small = two_sided_fibonacci(k);
            let big = two_sided_fibonacci(k + 1);
            let w = small.radius() as i64;
            for i in -w..=w {
                assert_eq!(small.get(i), big.get(i), "stage {k} index {i}");
            }
        }
    }

    #[test]
    fn two_sided_factors_appear_one_sided() {
        // every factor of the two-sided word occurs in a long one-sided word
        let x = two_sided_fibonacci(3);
        let long = fibonacci_word(15);
        for k in [1, 2, 5, 8] {
            let two_sided = factors_of_slice(x.symbols(), k);
            let one_sided = factors_of_slice(&long, k);
            assert!(two_sided.is_subset(&one_sided), "k = {k}");
        }
    }

    #[test]
    fn sturmian_complexity() {
        let x = two_sided_fibonacci(4);
        assert_eq!(block_complexity(&x, 1).unwrap(), 2);
        assert_eq!(block_complexity(&x, 5).unwrap(), 6);
        for k in 1..=10 {
            assert_eq!(block_complexity(&x, k).unwrap(), k + 1, "k = {k}");
        }
    }

    #[test]
    fn complexity_of_constant() {
        let x = BiSequence::constant(2, 40).unwrap();
        assert_eq!(block_complexity(&x, 3).unwrap(), 1);
    }

    #[test]
    fn window_guard() {
        let x = BiSequence::constant(2, 10).unwrap();
        assert!(matches!(
            block_complexity(&x, 2),
            Err(SeqError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn language_of_pairs() {
        let x = two_sided_fibonacci(3);
        let lang = language(&x, 2).unwrap();
        let expect: BTreeSet<Vec<u8>> = [vec![2, 1], vec![1, 1], vec![1, 2]].into_iter().collect();
        assert_eq!(lang, expect);
        assert!(!lang.contains(&vec![2, 2]));
    }

    #[test]
    fn slope_of_simple_sequences() {
        let x = BiSequence::constant(2, 20).unwrap();
        assert_eq!(slope_estimate(&x, 10).unwrap(), Rational64::new(1, 1));

        let alt = BiSequence::periodic(&[2, 1], 20).unwrap();
        let s = slope_estimate(&alt, 10).unwrap();
        assert_eq!(s, Rational64::new(11, 21));
        assert!(slope_estimate(&alt, 21).is_err());
    }

    #[test]
    fn slope_of_fibonacci_near_golden() {
        let x = two_sided_fibonacci(4);
        let target = (3.0 - 5.0f64.sqrt()) / 2.0;
        for n in [8usize, 16, 32, 64, 128] {
            let s = slope_estimate(&x, n).unwrap();
            let approx = *s.numer() as f64 / *s.denom() as f64;
            assert!((approx - target).abs() <= 2.0 / n as f64, "N = {n}");
        }
    }

    #[test]
    fn run_lengths() {
        let x = two_sided_fibonacci(3);
        assert_eq!(longest_run(&x, 2), 1);
        assert_eq!(longest_run(&x, 1), 2);
        let c = BiSequence::constant(2, 12).unwrap();
        assert_eq!(longest_run(&c, 2), 25);
    }

    #[test]
    fn parse_round_trip() {
        let x = BiSequence::parse("21|121").unwrap();
        assert_eq!(x.render(), "21|121");
        assert_eq!(x.get(0), 1);
        assert_eq!(x.get(-1), 1);
        // asymmetric input is centered
        let y = BiSequence::parse("2211|12").unwrap();
        assert_eq!(y.render(), "1|12");
        assert!(BiSequence::parse("2121").is_err());
        assert!(BiSequence::parse("21|3").is_err());
    }

    #[test]
    fn shift_invariance_of_language() {
        let x = two_sided_fibonacci(4);
        let w = x.radius() as i64;
        let shifted: Vec<u8> = (-(w - 1)..=(w - 1)).map(|i| x.get(i + 1)).collect();
        let y = BiSequence::new(shifted).unwrap();
        for k in 1..=6 {
            assert_eq!(language(&x, k).unwrap(), language(&y, k).unwrap());
        }
    }
}
