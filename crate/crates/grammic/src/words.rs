//! Ordered alphabets, words over them, Parikh vectors, subalphabet
//! projection, and lexicographic enumeration of fixed-length word spaces.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported alphabet; keeps the decimal-digit encoding of letters
/// unambiguous.
pub const MAX_ALPHABET: u8 = 9;

/// A totally ordered alphabet of letters `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(k: u8) -> Result<Self> {
        if k == 0 || k > MAX_ALPHABET {
            return Err(Error::AlphabetSize(k));
        }
        Ok(Alphabet(k))
    }

    pub fn size(self) -> u8 {
        self.0
    }

    /// All letters in increasing order.
    pub fn letters(self) -> impl Iterator<Item = u8> {
        1..=self.0
    }

    pub fn contains(self, letter: u8) -> bool {
        (1..=self.0).contains(&letter)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{1..{}}}", self.0)
    }
}

/// A word over an ordered alphabet; letters are integers in `1..=k`.
///
/// Words serialize as plain integer arrays; the ambient alphabet is carried
/// by the surrounding report where it matters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Word {
    letters: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        for &letter in &letters {
            if !alphabet.contains(letter) {
                return Err(Error::LetterOutOfRange {
                    letter,
                    k: alphabet.size(),
                });
            }
        }
        Ok(Word { letters, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            letters: Vec::new(),
            alphabet,
        }
    }

    /// Parses a word from decimal digits (`"3212"`) or lowercase latin
    /// letters (`"cbab"`, with a = 1, b = 2, ...). Mixed input is rejected.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        let mut saw_digit = false;
        let mut saw_alpha = false;
        for ch in text.chars() {
            let letter = match ch {
                '1'..='9' => {
                    saw_digit = true;
                    ch as u8 - b'0'
                }
                'a'..='z' => {
                    saw_alpha = true;
                    ch as u8 - b'a' + 1
                }
                _ => {
                    return Err(Error::Parse {
                        text: text.to_owned(),
                        reason: format!("unexpected character {ch:?}"),
                    })
                }
            };
            letters.push(letter);
        }
        if saw_digit && saw_alpha {
            return Err(Error::Parse {
                text: text.to_owned(),
                reason: "mixed digit and letter input".to_owned(),
            });
        }
        Word::new(letters, alphabet)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; both factors must share an alphabet.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.size(),
                right: other.alphabet.size(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            letters,
            alphabet: self.alphabet,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &letter in &self.letters {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<u8>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<u8>) -> Result<Self> {
        let k = letters.iter().copied().max().unwrap_or(1);
        Word::new(letters, Alphabet::new(k)?)
    }
}

impl From<Word> for Vec<u8> {
    fn from(word: Word) -> Vec<u8> {
        word.letters
    }
}

/// Letter-occurrence counts of a word (its commutative image).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParikhVector {
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn zero(alphabet: Alphabet) -> Self {
        ParikhVector {
            counts: vec![0; alphabet.size() as usize],
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Occurrences of `letter` (1-based).
    pub fn count_of(&self, letter: u8) -> u64 {
        self.counts[letter as usize - 1]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl Add<&ParikhVector> for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.counts.len(), rhs.counts.len());
        ParikhVector {
            counts: self
                .counts
                .iter()
                .zip(&rhs.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Commutative image of `u`: `counts[i]` is the number of occurrences of
/// letter `i + 1`.
pub fn parikh(u: &Word) -> ParikhVector {
    let mut counts = vec![0u64; u.alphabet().size() as usize];
    for &letter in u.letters() {
        counts[letter as usize - 1] += 1;
    }
    ParikhVector { counts }
}

fn checked_subset(u: &Word, subset: &[u8]) -> Result<BTreeSet<u8>> {
    let set: BTreeSet<u8> = subset.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::EmptySubalphabet);
    }
    for &letter in &set {
        if !u.alphabet().contains(letter) {
            return Err(Error::LetterOutOfRange {
                letter,
                k: u.alphabet().size(),
            });
        }
    }
    Ok(set)
}

/// Erases the letters of `u` outside `subset`, keeping the original labels
/// and alphabet (the projection morphism onto the subalphabet).
pub fn erase(u: &Word, subset: &[u8]) -> Result<Word> {
    let set = checked_subset(u, subset)?;
    let letters = u
        .letters()
        .iter()
        .copied()
        .filter(|letter| set.contains(letter))
        .collect();
    Ok(Word {
        letters,
        alphabet: u.alphabet(),
    })
}

/// Projects `u` onto a subalphabet and relabels the survivors through the
/// unique order isomorphism onto `1..=|subset|`, so the result is a word
/// over the compact alphabet that downstream deciders expect.
pub fn project(u: &Word, subset: &[u8]) -> Result<Word> {
    let set = checked_subset(u, subset)?;
    // Order isomorphism: i-th smallest letter of the subset maps to i + 1.
    let mut relabel = [0u8; MAX_ALPHABET as usize + 1];
    for (i, &letter) in set.iter().enumerate() {
        relabel[letter as usize] = i as u8 + 1;
    }
    let letters: Vec<u8> = u
        .letters()
        .iter()
        .copied()
        .filter(|&letter| set.contains(&letter))
        .map(|letter| relabel[letter as usize])
        .collect();
    Ok(Word {
        letters,
        alphabet: Alphabet::new(set.len() as u8)?,
    })
}

/// The set of all `k^n` words of one length, in lexicographic order,
/// addressable by index so disjoint ranges can be consumed independently.
#[derive(Debug, Clone, Copy)]
pub struct WordSpace {
    n: usize,
    alphabet: Alphabet,
}

impl WordSpace {
    pub fn new(n: usize, alphabet: Alphabet) -> Self {
        WordSpace { n, alphabet }
    }

    pub fn len_words(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// `k^n` as a u128 (9^38 still fits).
    pub fn count(&self) -> u128 {
        (self.alphabet.size() as u128)
            .checked_pow(self.n as u32)
            .expect("word space too large to count")
    }

    /// The word at `index` in lexicographic order; `index < count()`.
    pub fn word_at(&self, index: u128) -> Word {
        let k = self.alphabet.size() as u128;
        let mut letters = vec![1u8; self.n];
        let mut rest = index;
        for slot in letters.iter_mut().rev() {
            *slot = (rest % k) as u8 + 1;
            rest /= k;
        }
        debug_assert_eq!(rest, 0, "index out of range");
        Word {
            letters,
            alphabet: self.alphabet,
        }
    }

    pub fn iter(&self) -> WordIter {
        self.range(0, self.count())
    }

    /// Words with indices in `start..end`.
    pub fn range(&self, start: u128, end: u128) -> WordIter {
        WordIter {
            space: *self,
            next: start,
            end: end.min(self.count()),
        }
    }
}

/// Iterator over a contiguous index range of a [`WordSpace`].
#[derive(Debug, Clone)]
pub struct WordIter {
    space: WordSpace,
    next: u128,
    end: u128,
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.next >= self.end {
            return None;
        }
        let word = self.space.word_at(self.next);
        self.next += 1;
        Some(word)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let remaining = (self.end - self.next).min(usize::MAX as u128) as usize;
        (remaining, Some(remaining))
    }
}

/// All `k^n` words of length `n` in lexicographic order.
pub fn words_of_length(n: usize, alphabet: Alphabet) -> WordIter {
    WordSpace::new(n, alphabet).iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(size: u8) -> Alphabet {
        Alphabet::new(size).unwrap()
    }

    #[test]
    fn alphabet_bounds() {
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::new(10).is_err());
        assert_eq!(k(9).size(), 9);
    }

    #[test]
    fn parse_letters_and_digits_agree() {
        let from_letters = Word::parse("cbbcaabb", k(3)).unwrap();
        let from_digits = Word::parse("32231122", k(3)).unwrap();
        assert_eq!(from_letters, from_digits);
        assert_eq!(from_letters.letters(), &[3, 2, 2, 3, 1, 1, 2, 2]);
    }

    #[test]
    fn parse_empty_and_identity() {
        assert!(Word::parse("", k(3)).unwrap().is_empty());
        assert_eq!(Word::parse("3212", k(3)).unwrap().letters(), &[3, 2, 1, 2]);
    }

    #[test]
    fn parse_rejections() {
        assert!(matches!(
            Word::parse("12a", k(3)),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Word::parse("1x", k(3)),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Word::parse("14", k(3)),
            Err(Error::LetterOutOfRange { letter: 4, k: 3 })
        ));
        assert!(matches!(
            Word::parse("d", k(3)),
            Err(Error::LetterOutOfRange { letter: 4, k: 3 })
        ));
    }

    #[test]
    fn parikh_examples() {
        let u = Word::parse("3212", k(3)).unwrap();
        assert_eq!(parikh(&u).counts(), &[1, 2, 1]);
        assert_eq!(parikh(&Word::empty(k(3))).counts(), &[0, 0, 0]);
        let w = Word::parse("32231122", k(3)).unwrap();
        assert_eq!(parikh(&w).counts(), &[2, 4, 2]);
    }

    #[test]
    fn project_keeps_low_letters() {
        let u = Word::parse("23311223", k(3)).unwrap();
        let p = project(&u, &[1, 2]).unwrap();
        assert_eq!(p, Word::parse("21122", k(2)).unwrap());
    }

    #[test]
    fn project_relabels_upper_letters() {
        let u = Word::parse("23311223", k(3)).unwrap();
        assert_eq!(
            erase(&u, &[2, 3]).unwrap(),
            Word::parse("233223", k(3)).unwrap()
        );
        let p = project(&u, &[2, 3]).unwrap();
        assert_eq!(p, Word::parse("122112", k(2)).unwrap());
    }

    #[test]
    fn project_full_subset_is_identity() {
        let u = Word::parse("23311223", k(3)).unwrap();
        assert_eq!(project(&u, &[1, 2, 3]).unwrap(), u);
    }

    #[test]
    fn project_rejects_empty_subset() {
        let u = Word::parse("12", k(2)).unwrap();
        assert!(matches!(project(&u, &[]), Err(Error::EmptySubalphabet)));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let words: Vec<String> = words_of_length(2, k(2)).map(|w| w.to_string()).collect();
        assert_eq!(words, ["11", "12", "21", "22"]);
        let only_empty: Vec<Word> = words_of_length(0, k(3)).collect();
        assert_eq!(only_empty, [Word::empty(k(3))]);
    }

    #[test]
    fn enumeration_counts_itself() {
        assert_eq!(words_of_length(8, k(3)).count(), 6561);
        assert_eq!(WordSpace::new(8, k(3)).count(), 6561);
    }

    #[test]
    fn ranges_partition_the_space() {
        let space = WordSpace::new(4, k(3));
        let whole: Vec<Word> = space.iter().collect();
        let mut chunked = Vec::new();
        let mut start = 0;
        while start < space.count() {
            let end = (start + 17).min(space.count());
            chunked.extend(space.range(start, end));
            start = end;
        }
        assert_eq!(whole, chunked);
    }

    #[test]
    fn word_json_is_an_integer_array() {
        let u = Word::parse("3212", k(3)).unwrap();
        assert_eq!(serde_json::to_string(&u).unwrap(), "[3,2,1,2]");
        let back: Word = serde_json::from_str("[3,2,1,2]").unwrap();
        assert_eq!(back, u);
    }
}
