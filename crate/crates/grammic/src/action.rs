//! The grammic action of words on row vectors in N^k, bounded-grid
//! fingerprints, and the decision procedure for grammic equivalence.
//!
//! A row `1^{x_1} 2^{x_2} ... k^{x_k}` is identified with the vector
//! `(x_1, ..., x_k)`. Acting by a letter performs Schensted row insertion
//! and discards the bumped letter.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::tableau::{build_tableau, row_normal_form};
use crate::words::{Alphabet, Word};

/// A point of N^k: multiplicities of each letter in a nondecreasing row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct RowVector {
    coords: Vec<u64>,
}

impl RowVector {
    pub fn new(coords: Vec<u64>) -> Result<Self> {
        Alphabet::new(coords.len() as u8)?;
        Ok(RowVector { coords })
    }

    pub fn zero(alphabet: Alphabet) -> Self {
        RowVector {
            coords: vec![0; alphabet.size() as usize],
        }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Dimension, i.e. the alphabet size the vector lives over.
    pub fn dim(&self) -> u8 {
        self.coords.len() as u8
    }

    /// Multiplicity of `letter` (1-based).
    pub fn get(&self, letter: u8) -> u64 {
        self.coords[letter as usize - 1]
    }

    pub fn sum(&self) -> u64 {
        self.coords.iter().sum()
    }

    /// One insertion step: increment coordinate `letter`; the leftmost
    /// strictly greater letter present in the row, if any, is bumped out
    /// and lost.
    pub fn act_letter(&self, letter: u8) -> Result<RowVector> {
        if !(1..=self.dim()).contains(&letter) {
            return Err(Error::LetterOutOfRange {
                letter,
                k: self.dim(),
            });
        }
        let mut coords = self.coords.clone();
        act_letter_in_place(&mut coords, letter);
        Ok(RowVector { coords })
    }

    /// Left-to-right fold of [`RowVector::act_letter`] over the word.
    pub fn act_word(&self, u: &Word) -> Result<RowVector> {
        if u.alphabet().size() != self.dim() {
            return Err(Error::AlphabetMismatch {
                left: u.alphabet().size(),
                right: self.dim(),
            });
        }
        let mut coords = self.coords.clone();
        for &letter in u.letters() {
            act_letter_in_place(&mut coords, letter);
        }
        Ok(RowVector { coords })
    }
}

impl TryFrom<Vec<u64>> for RowVector {
    type Error = Error;

    fn try_from(coords: Vec<u64>) -> Result<Self> {
        RowVector::new(coords)
    }
}

impl From<RowVector> for Vec<u64> {
    fn from(v: RowVector) -> Vec<u64> {
        v.coords
    }
}

#[inline]
fn act_letter_in_place(coords: &mut [u64], letter: u8) {
    let j = letter as usize - 1;
    coords[j] += 1;
    for x in coords[j + 1..].iter_mut() {
        if *x > 0 {
            *x -= 1;
            break;
        }
    }
}

/// The bottom row of the Young tableau of `u`, obtained by acting on the
/// zero vector.
pub fn bottom_row(u: &Word) -> RowVector {
    RowVector::zero(u.alphabet())
        .act_word(u)
        .expect("zero vector matches the word's alphabet")
}

/// Lexicographic iterator over the grid `{0, ..., bound}^k`.
pub fn grid_points(k: u8, bound: u64) -> GridIter {
    GridIter {
        k: k as usize,
        bound,
        next: Some(vec![0; k as usize]),
    }
}

#[derive(Debug, Clone)]
pub struct GridIter {
    k: usize,
    bound: u64,
    next: Option<Vec<u64>>,
}

impl Iterator for GridIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        // Successor in lexicographic order: bump the last coordinate that
        // has room, zeroing everything after it.
        let mut succ = current.clone();
        for i in (0..self.k).rev() {
            if succ[i] < self.bound {
                succ[i] += 1;
                for slot in succ[i + 1..].iter_mut() {
                    *slot = 0;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(current)
    }
}

/// The restriction of a word's action to the grid `{0, ..., n+1}^k`, in
/// lexicographic grid order. Equal fingerprints characterize grammic
/// equivalence for words of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    n: usize,
    k: u8,
    outputs: Vec<RowVector>,
}

impl Fingerprint {
    pub fn compute(u: &Word) -> Fingerprint {
        let k = u.alphabet().size();
        let n = u.len();
        let bound = n as u64 + 1;
        let mut outputs = Vec::with_capacity(((bound + 1) as usize).pow(k as u32));
        for mut point in grid_points(k, bound) {
            for &letter in u.letters() {
                act_letter_in_place(&mut point, letter);
            }
            outputs.push(RowVector { coords: point });
        }
        Fingerprint { n, k, outputs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Images in lexicographic grid order.
    pub fn outputs(&self) -> &[RowVector] {
        &self.outputs
    }

    /// Stable 128-bit digest for grouping; equality of digests is always
    /// confirmed against full fingerprints before any verdict.
    pub fn digest(&self) -> u128 {
        let mut hasher = Sha256::new();
        hasher.update((self.k as u64).to_le_bytes());
        hasher.update((self.n as u64).to_le_bytes());
        for output in &self.outputs {
            for &coord in output.coords() {
                hasher.update(coord.to_le_bytes());
            }
        }
        let bytes = hasher.finalize();
        u128::from_le_bytes(bytes[..16].try_into().expect("digest is wide enough"))
    }

    pub fn digest_hex(&self) -> String {
        format!("{:032x}", self.digest())
    }

    pub fn to_json(&self, include_outputs: bool) -> serde_json::Value {
        let mut value = serde_json::json!({
            "n": self.n,
            "k": self.k,
            "digest": self.digest_hex(),
        });
        if include_outputs {
            value["outputs"] = serde_json::to_value(&self.outputs).expect("vectors serialize");
        }
        value
    }
}

/// A grid point on which two words act differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrammicWitness {
    #[serde(rename = "x")]
    pub point: RowVector,
    pub image_u: RowVector,
    pub image_v: RowVector,
}

/// Verdict of the bounded grammic-equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammicOutcome {
    Equivalent,
    LengthMismatch { len_u: usize, len_v: usize },
    Witness(GrammicWitness),
}

impl GrammicOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, GrammicOutcome::Equivalent)
    }
}

/// Decides grammic equivalence by comparing the actions of `u` and `v` on
/// every vector of the grid `{0, ..., max(|u|,|v|)+1}^k`; agreement there
/// extends to all of N^k. Inequivalence comes with a concrete witness.
pub fn grammic_eq_bounded(u: &Word, v: &Word) -> Result<GrammicOutcome> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet().size(),
            right: v.alphabet().size(),
        });
    }
    if u.len() != v.len() {
        return Ok(GrammicOutcome::LengthMismatch {
            len_u: u.len(),
            len_v: v.len(),
        });
    }
    let k = u.alphabet().size();
    let bound = u.len().max(v.len()) as u64 + 1;
    for point in grid_points(k, bound) {
        let mut image_u = point.clone();
        for &letter in u.letters() {
            act_letter_in_place(&mut image_u, letter);
        }
        let mut image_v = point.clone();
        for &letter in v.letters() {
            act_letter_in_place(&mut image_v, letter);
        }
        if image_u != image_v {
            return Ok(GrammicOutcome::Witness(GrammicWitness {
                point: RowVector { coords: point },
                image_u: RowVector { coords: image_u },
                image_v: RowVector { coords: image_v },
            }));
        }
    }
    Ok(GrammicOutcome::Equivalent)
}

/// Cheap pre-filter: `true` means the words are certainly inequivalent
/// (length, commutative image, or bottom row differ); `false` is
/// inconclusive and must be settled by [`grammic_eq_bounded`].
pub fn quick_inequivalent(u: &Word, v: &Word) -> Result<bool> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet().size(),
            right: v.alphabet().size(),
        });
    }
    Ok(u.len() != v.len()
        || crate::words::parikh(u) != crate::words::parikh(v)
        || bottom_row(u) != bottom_row(v))
}

/// Threshold `m_i` for a word in row normal form: counting rows bottom-up,
/// row `i` starts with letter `b_i`, and `m_i` is the number of letters
/// smaller than `b_i` in the rows strictly below. Whenever `x_i > m_i`,
/// coordinate `i` of `x . w` stays positive for every proper prefix `w`.
pub fn nonvanishing_threshold(u: &Word, i: usize) -> Result<u64> {
    if row_normal_form(u) != *u {
        return Err(Error::NotRowNormalForm(u.to_string()));
    }
    let tableau = build_tableau(u);
    let rows = tableau.rows();
    if i == 0 || i > rows.len() {
        return Err(Error::RowIndexOutOfRange {
            index: i,
            rows: rows.len(),
        });
    }
    let initial = rows[i - 1].letters()[0];
    let mut threshold = 0u64;
    for row in &rows[..i - 1] {
        threshold += row.letters().iter().filter(|&&a| a < initial).count() as u64;
    }
    Ok(threshold)
}

/// Evaluates the action at a large value of one coordinate through its
/// affine tail: with `F(s)` the image when coordinate `i` is set to `s`,
/// the value at `t > |u|` is `F(n) + (t - n) (F(n+1) - F(n))` for `n = |u|`.
pub fn affine_tail(u: &Word, coord: u8, fixed: &RowVector, t: u64) -> Result<RowVector> {
    let k = u.alphabet().size();
    if fixed.dim() != k {
        return Err(Error::AlphabetMismatch {
            left: k,
            right: fixed.dim(),
        });
    }
    if !(1..=k).contains(&coord) {
        return Err(Error::CoordinateOutOfRange { coord, k });
    }
    let n = u.len();
    if t <= n as u64 {
        return Err(Error::AffineTailRange { t, n });
    }
    let eval = |s: u64| -> Result<RowVector> {
        let mut coords = fixed.coords().to_vec();
        coords[coord as usize - 1] = s;
        RowVector { coords }.act_word(u)
    };
    let at_n = eval(n as u64)?;
    let at_n1 = eval(n as u64 + 1)?;
    let coords = at_n
        .coords()
        .iter()
        .zip(at_n1.coords())
        .map(|(&base, &next)| {
            let delta = next as i128 - base as i128;
            let value = base as i128 + (t - n as u64) as i128 * delta;
            u64::try_from(value).map_err(|_| Error::Numeric("affine tail prediction"))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(RowVector { coords })
}
