//! Young tableaux, Schensted row and column insertion, row/column normal
//! forms, and the plactic-equivalence decider.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{parikh, Alphabet, ParikhVector, Word};

/// A nondecreasing sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Row(Vec<u8>);

impl Row {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse {
                text: format!("{letters:?}"),
                reason: "row letters must be nondecreasing".to_owned(),
            });
        }
        Ok(Row(letters))
    }

    pub fn empty() -> Self {
        Row(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A strictly decreasing sequence of letters, written top-to-bottom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Column(Vec<u8>);

impl Column {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Parse {
                text: format!("{letters:?}"),
                reason: "column letters must be strictly decreasing".to_owned(),
            });
        }
        Ok(Column(letters))
    }

    pub fn empty() -> Self {
        Column(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Schensted insertion of a letter into a row.
///
/// Appends when `b` is at least the last letter; otherwise substitutes `b`
/// for the leftmost letter strictly greater than `b` and bumps it out.
pub fn row_insert(row: &Row, b: u8) -> (Row, Option<u8>) {
    match row.0.iter().position(|&x| x > b) {
        None => {
            let mut letters = row.0.clone();
            letters.push(b);
            (Row(letters), None)
        }
        Some(i) => {
            let mut letters = row.0.clone();
            let bumped = std::mem::replace(&mut letters[i], b);
            (Row(letters), Some(bumped))
        }
    }
}

/// Schensted insertion of a letter into a column.
///
/// Prepends when `b` exceeds every letter; otherwise substitutes `b` for the
/// least letter greater than *or equal to* `b` (the asymmetry with row
/// insertion is deliberate) and expels it.
pub fn column_insert(col: &Column, b: u8) -> (Column, Option<u8>) {
    // Letters are strictly decreasing, so the least letter >= b is the last
    // position satisfying the comparison.
    match col.0.iter().rposition(|&x| x >= b) {
        None => {
            let mut letters = vec![b];
            letters.extend_from_slice(&col.0);
            (Column(letters), None)
        }
        Some(i) => {
            let mut letters = col.0.clone();
            let expelled = std::mem::replace(&mut letters[i], b);
            (Column(letters), Some(expelled))
        }
    }
}

/// A Young tableau, stored bottom row first: row lengths weakly decrease
/// upward and columns strictly increase upward.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct YoungTableau {
    rows: Vec<Row>,
}

impl YoungTableau {
    pub fn empty() -> Self {
        YoungTableau { rows: Vec::new() }
    }

    /// Rows from bottom to top.
    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Row::len).sum()
    }

    /// Row-inserts a letter into the bottom row, cascading bumps upward.
    pub fn insert(&mut self, letter: u8) {
        let mut carry = Some(letter);
        let mut level = 0;
        while let Some(b) = carry {
            if level == self.rows.len() {
                self.rows.push(Row::empty());
            }
            let (row, bumped) = row_insert(&self.rows[level], b);
            self.rows[level] = row;
            carry = bumped;
            level += 1;
        }
    }

    /// Checks the shape and column-strictness invariants.
    pub fn is_valid(&self) -> bool {
        for pair in self.rows.windows(2) {
            let (lower, upper) = (&pair[0], &pair[1]);
            if upper.len() > lower.len() {
                return false;
            }
            for (j, &cell) in upper.letters().iter().enumerate() {
                if cell <= lower.letters()[j] {
                    return false;
                }
            }
        }
        self.rows.iter().all(|r| {
            !r.is_empty() && r.letters().windows(2).all(|w| w[0] <= w[1])
        }) || self.rows.is_empty()
    }

    /// Multiset of cell contents as a Parikh vector over `alphabet`.
    pub fn cell_parikh(&self, alphabet: Alphabet) -> ParikhVector {
        let mut counts = vec![0u64; alphabet.size() as usize];
        for row in &self.rows {
            for &letter in row.letters() {
                counts[letter as usize - 1] += 1;
            }
        }
        // Reuse the canonical constructor via a throwaway word.
        let word = Word::new(
            self.rows
                .iter()
                .flat_map(|r| r.letters().iter().copied())
                .collect(),
            alphabet,
        )
        .expect("tableau cells lie in the alphabet");
        let p = parikh(&word);
        debug_assert_eq!(p.counts(), counts.as_slice());
        p
    }

    /// Columns from left to right, each written top-to-bottom.
    pub fn columns(&self) -> Vec<Column> {
        let width = self.rows.first().map_or(0, Row::len);
        (0..width)
            .map(|j| {
                let letters = self
                    .rows
                    .iter()
                    .rev()
                    .filter(|row| row.len() > j)
                    .map(|row| row.letters()[j])
                    .collect();
                Column(letters)
            })
            .collect()
    }

    /// Text rendering with the top row first, matching the usual layout.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in self.rows.iter().rev() {
            for &letter in row.letters() {
                out.push((b'0' + letter) as char);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.render().trim_end_matches('\n'))
    }
}

/// The Schensted P-tableau of a word, built by successive row insertion.
pub fn build_tableau(w: &Word) -> YoungTableau {
    let mut tableau = YoungTableau::empty();
    for &letter in w.letters() {
        tableau.insert(letter);
    }
    tableau
}

/// Builds the same tableau by column insertion, proceeding left to right
/// across columns: each letter enters the leftmost column and expelled
/// letters cascade rightward. Schensted's duality wants the letters read
/// right to left; inserting them in reading order builds a different
/// tableau.
pub fn build_tableau_by_columns(w: &Word) -> YoungTableau {
    let mut columns: Vec<Column> = Vec::new();
    for &letter in w.letters().iter().rev() {
        let mut carry = Some(letter);
        let mut j = 0;
        while let Some(b) = carry {
            if j == columns.len() {
                columns.push(Column::empty());
            }
            let (col, expelled) = column_insert(&columns[j], b);
            columns[j] = col;
            carry = expelled;
            j += 1;
        }
    }
    // Reassemble rows: cell (row r, column j) sits at depth len - 1 - r of
    // column j, counting from the top.
    let height = columns.first().map_or(0, Column::len);
    let rows = (0..height)
        .map(|r| {
            let letters = columns
                .iter()
                .filter(|col| col.len() > r)
                .map(|col| col.letters()[col.len() - 1 - r])
                .collect();
            Row(letters)
        })
        .collect();
    YoungTableau { rows }
}

/// Canonical representative reading tableau rows from top to bottom.
pub fn row_normal_form(w: &Word) -> Word {
    let tableau = build_tableau(w);
    let letters: Vec<u8> = tableau
        .rows()
        .iter()
        .rev()
        .flat_map(|row| row.letters().iter().copied())
        .collect();
    Word::new(letters, w.alphabet()).expect("tableau cells lie in the alphabet")
}

/// Canonical representative reading tableau columns left to right, each
/// top-to-bottom.
pub fn column_normal_form(w: &Word) -> Word {
    let tableau = build_tableau(w);
    let letters: Vec<u8> = tableau
        .columns()
        .iter()
        .flat_map(|col| col.letters().iter().copied())
        .collect();
    Word::new(letters, w.alphabet()).expect("tableau cells lie in the alphabet")
}

/// Plactic equivalence: two words are congruent exactly when they build the
/// same tableau.
pub fn plactic_eq(u: &Word, v: &Word) -> Result<bool> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet().size(),
            right: v.alphabet().size(),
        });
    }
    Ok(build_tableau(u) == build_tableau(v))
}
