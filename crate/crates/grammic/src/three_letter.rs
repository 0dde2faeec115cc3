//! The three-letter fast path: every tableau over `{1,2,3}` has row normal
//! form `3^a 2^b 3^c 1^d 2^e 3^f`, and grammic equivalence reduces to a
//! constant-time comparison of the six exponents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::build_tableau;
use crate::words::{Alphabet, Word};

/// Exponents of the row normal form `3^a 2^b 3^c 1^d 2^e 3^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauParams {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    pub f: u64,
}

impl TableauParams {
    /// Column strictness forces `a <= b <= d` and `b + c <= d + e`.
    pub fn is_valid(&self) -> bool {
        self.a <= self.b && self.b <= self.d && self.b + self.c <= self.d + self.e
    }

    pub fn total_length(&self) -> u64 {
        self.a + self.b + self.c + self.d + self.e + self.f
    }

    /// The row normal form determined by the exponents.
    pub fn to_row_normal_form(&self) -> Result<Word> {
        if !self.is_valid() {
            return Err(Error::InvalidParams(format!("{self:?}")));
        }
        let mut letters = Vec::with_capacity(self.total_length() as usize);
        for (letter, count) in [
            (3u8, self.a),
            (2, self.b),
            (3, self.c),
            (1, self.d),
            (2, self.e),
            (3, self.f),
        ] {
            letters.extend(std::iter::repeat(letter).take(count as usize));
        }
        Word::new(letters, Alphabet::new(3)?)
    }
}

fn run_lengths(letters: &[u8], pattern: &[u8]) -> Option<Vec<u64>> {
    let mut counts = vec![0u64; pattern.len()];
    let mut slot = 0;
    for &letter in letters {
        while slot < pattern.len() && pattern[slot] != letter {
            slot += 1;
        }
        if slot == pattern.len() {
            return None;
        }
        counts[slot] += 1;
    }
    Some(counts)
}

/// Reads the six exponents off the row normal form of a three-letter word.
/// Total: every tableau over `{1,2,3}` fits the pattern.
pub fn extract_params(u: &Word) -> Result<TableauParams> {
    if u.alphabet().size() != 3 {
        return Err(Error::NotThreeLetters(u.alphabet().size()));
    }
    let tableau = build_tableau(u);
    let rows = tableau.rows();
    let bottom = rows
        .first()
        .map(|row| run_lengths(row.letters(), &[1, 2, 3]))
        .unwrap_or_else(|| Some(vec![0, 0, 0]))
        .expect("bottom row is a nondecreasing word over 1..=3");
    let middle = rows
        .get(1)
        .map(|row| run_lengths(row.letters(), &[2, 3]))
        .unwrap_or_else(|| Some(vec![0, 0]))
        .expect("second row of a three-letter tableau holds only 2s and 3s");
    let top = rows
        .get(2)
        .map(|row| run_lengths(row.letters(), &[3]))
        .unwrap_or_else(|| Some(vec![0]))
        .expect("third row of a three-letter tableau holds only 3s");
    let params = TableauParams {
        a: top[0],
        b: middle[0],
        c: middle[1],
        d: bottom[0],
        e: bottom[1],
        f: bottom[2],
    };
    debug_assert!(params.is_valid());
    debug_assert_eq!(params.total_length() as usize, u.len());
    Ok(params)
}

/// Constant-time grammic equivalence over three letters: the words are
/// congruent exactly when their exponents coincide, or when they share
/// `(b, d, e, f)` with `b, d > 0`, have `a + c = a' + c'`, and both `c`
/// and `c'` stay at most `e`.
pub fn grammic_eq3(u: &Word, v: &Word) -> Result<bool> {
    let p = extract_params(u)?;
    let q = extract_params(v)?;
    if p == q {
        return Ok(true);
    }
    Ok(p.b == q.b
        && p.d == q.d
        && p.e == q.e
        && p.f == q.f
        && p.b > 0
        && p.d > 0
        && p.a + p.c == q.a + q.c
        && p.c <= p.e
        && q.c <= p.e)
}

/// Number of distinct row normal forms in the grammic class determined by
/// the exponents: the valid shifts of weight between `a` and `c`.
pub fn class_3_multiplicity(params: &TableauParams) -> Result<u64> {
    if !params.is_valid() {
        return Err(Error::InvalidParams(format!("{params:?}")));
    }
    if params.b == 0 || params.d == 0 || params.c > params.e {
        return Ok(1);
    }
    let weight = params.a + params.c;
    // Pairs (a', c') with a' + c' = weight, c' <= e, and a' <= b.
    let c_low = weight.saturating_sub(params.b);
    let c_high = params.e.min(weight);
    debug_assert!(c_low <= c_high, "the class always contains its own form");
    Ok(c_high - c_low + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, Alphabet::new(3).unwrap()).unwrap()
    }

    fn params(a: u64, b: u64, c: u64, d: u64, e: u64, f: u64) -> TableauParams {
        TableauParams { a, b, c, d, e, f }
    }

    #[test]
    fn extract_params_of_section_example() {
        // ccc/bbb/aaabbbbb
        let p = extract_params(&w("33322211122222")).unwrap();
        assert_eq!(p, params(3, 3, 0, 3, 5, 0));
    }

    #[test]
    fn extract_params_of_empty_word() {
        assert_eq!(extract_params(&w("")).unwrap(), params(0, 0, 0, 0, 0, 0));
    }

    #[test]
    fn extract_params_of_example_one() {
        let p = extract_params(&w("32231122")).unwrap();
        assert_eq!(p, params(1, 2, 1, 2, 2, 0));
    }

    #[test]
    fn extract_params_requires_three_letters() {
        let two = Word::parse("12", Alphabet::new(2).unwrap()).unwrap();
        assert!(matches!(extract_params(&two), Err(Error::NotThreeLetters(2))));
    }

    #[test]
    fn params_round_trip_through_row_normal_form() {
        let p = params(2, 3, 1, 3, 5, 2);
        let word = p.to_row_normal_form().unwrap();
        assert_eq!(extract_params(&word).unwrap(), p);
        assert_eq!(crate::tableau::row_normal_form(&word), word);
    }

    #[test]
    fn grammic_eq3_on_section_chain() {
        let first = w("33322211122222");
        let second = w("33222311122222");
        let last = w("22233311122222");
        assert!(grammic_eq3(&first, &second).unwrap());
        assert!(grammic_eq3(&second, &last).unwrap());
        assert!(grammic_eq3(&first, &first).unwrap());
    }

    #[test]
    fn grammic_eq3_rejects_projection_counterexample() {
        assert!(!grammic_eq3(&w("23311223"), &w("23331122")).unwrap());
    }

    #[test]
    fn multiplicity_of_section_chain_is_four() {
        assert_eq!(class_3_multiplicity(&params(3, 3, 0, 3, 5, 0)).unwrap(), 4);
    }

    #[test]
    fn multiplicity_degenerate_cases() {
        assert_eq!(class_3_multiplicity(&params(0, 0, 2, 3, 2, 0)).unwrap(), 1);
        assert_eq!(class_3_multiplicity(&params(0, 0, 0, 0, 2, 1)).unwrap(), 1);
        // c > e pins the form.
        assert_eq!(class_3_multiplicity(&params(0, 1, 3, 4, 2, 0)).unwrap(), 1);
        assert!(class_3_multiplicity(&params(2, 1, 0, 3, 0, 0)).is_err());
    }
}
