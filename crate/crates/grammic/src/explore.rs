//! Brute-force exploration: enumerate congruence classes over full word
//! spaces, compare partitions, scan projection behavior, and probe the
//! four-letter candidate rules.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{grammic_eq_bounded, Fingerprint};
use crate::error::{Error, Result};
use crate::rewrite::{rewrite_eq, Rule4Variant, RuleKind, RuleSet, SearchLimits};
use crate::tableau::build_tableau;
use crate::words::{project, Alphabet, Word, WordSpace};

fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_owned()
}

/// Which congruence to enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    Plactic,
    Grammic,
    Rewrite(RuleSet),
}

impl Relation {
    pub fn tag(&self) -> String {
        match self {
            Relation::Plactic => "plactic".to_owned(),
            Relation::Grammic => "grammic".to_owned(),
            Relation::Rewrite(rules) => format!("rewrite:{}", rules.name()),
        }
    }

    /// Parses `plactic`, `grammic`, or `rewrite:<ruleset>` where the rule
    /// set is one of `knuth`, `grammic3`, `bdac`, `badc`.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Relation> {
        match text {
            "plactic" => Ok(Relation::Plactic),
            "grammic" => Ok(Relation::Grammic),
            other => match other.strip_prefix("rewrite:") {
                Some(name) => Ok(Relation::Rewrite(RuleSet::by_name(name, alphabet)?)),
                None => Err(Error::UnknownRelation(other.to_owned())),
            },
        }
    }
}

/// A partition of all `k^n` words into congruence classes. Classes are
/// listed by their lexicographically least member, members in lexicographic
/// order, so output is diffable across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    pub n: usize,
    pub k: u8,
    pub relation: String,
    #[serde(rename = "toolVersion")]
    pub tool_version: String,
    pub classes: Vec<Vec<Word>>,
}

impl<'de> Deserialize<'de> for ClassPartition {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        // Words serialize as bare integer arrays; rebind them to the
        // partition's own alphabet instead of inferring one per word.
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            k: u8,
            relation: String,
            #[serde(rename = "toolVersion")]
            tool_version: String,
            classes: Vec<Vec<Vec<u8>>>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let alphabet = Alphabet::new(wire.k).map_err(serde::de::Error::custom)?;
        let classes = wire
            .classes
            .into_iter()
            .map(|class| {
                class
                    .into_iter()
                    .map(|letters| Word::new(letters, alphabet))
                    .collect::<Result<Vec<Word>>>()
            })
            .collect::<Result<Vec<Vec<Word>>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(ClassPartition {
            n: wire.n,
            k: wire.k,
            relation: wire.relation,
            tool_version: wire.tool_version,
            classes,
        })
    }
}

impl ClassPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn word_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Map from each word to the index of its class.
    pub fn membership(&self) -> HashMap<&Word, usize> {
        let mut index = HashMap::with_capacity(self.word_count());
        for (class_id, class) in self.classes.iter().enumerate() {
            for word in class {
                index.insert(word, class_id);
            }
        }
        index
    }

    /// Sizes of the classes, largest first.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

fn budget_check(space: &WordSpace, limits: SearchLimits) -> Result<u64> {
    let total = space.count();
    if total > limits.node_budget as u128 {
        return Err(Error::BudgetExceeded {
            budget: limits.node_budget,
        });
    }
    Ok(total as u64)
}

fn plactic_classes(space: &WordSpace) -> Vec<Vec<Word>> {
    let mut index: HashMap<crate::tableau::YoungTableau, usize> = HashMap::new();
    let mut classes: Vec<Vec<Word>> = Vec::new();
    for word in space.iter() {
        let tableau = build_tableau(&word);
        match index.get(&tableau) {
            Some(&class_id) => classes[class_id].push(word),
            None => {
                index.insert(tableau, classes.len());
                classes.push(vec![word]);
            }
        }
    }
    classes
}

/// Groups by fingerprint digest, confirming every digest hit against the
/// full fingerprint of the class representative; the map phase runs in
/// parallel over index chunks, the merge is sequential and deterministic.
fn grammic_classes(space: &WordSpace, total: u64) -> Vec<Vec<Word>> {
    struct Class {
        fingerprint: Fingerprint,
        members: Vec<Word>,
    }
    const CHUNK: u64 = 1024;
    let mut by_digest: HashMap<u128, Vec<usize>> = HashMap::new();
    let mut classes: Vec<Class> = Vec::new();
    let mut start = 0u64;
    while start < total {
        let end = (start + CHUNK).min(total);
        let words: Vec<Word> = space.range(start as u128, end as u128).collect();
        let fingerprints: Vec<(u128, Fingerprint)> = words
            .par_iter()
            .map(|word| {
                let fp = Fingerprint::compute(word);
                (fp.digest(), fp)
            })
            .collect();
        for (word, (digest, fingerprint)) in words.into_iter().zip(fingerprints) {
            let bucket = by_digest.entry(digest).or_default();
            let found = bucket
                .iter()
                .copied()
                .find(|&class_id| classes[class_id].fingerprint == fingerprint);
            match found {
                Some(class_id) => classes[class_id].members.push(word),
                None => {
                    bucket.push(classes.len());
                    classes.push(Class {
                        fingerprint,
                        members: vec![word],
                    });
                }
            }
        }
        start = end;
    }
    classes.into_iter().map(|class| class.members).collect()
}

fn rewrite_classes(
    space: &WordSpace,
    rules: &RuleSet,
    limits: SearchLimits,
) -> Result<Vec<Vec<Word>>> {
    use std::collections::{HashSet, VecDeque};
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    let mut classes: Vec<Vec<Word>> = Vec::new();
    for seed in space.iter() {
        if visited.contains(seed.letters()) {
            continue;
        }
        let mut component = vec![seed.letters().to_vec()];
        visited.insert(seed.letters().to_vec());
        let mut queue = VecDeque::from([seed.letters().to_vec()]);
        while let Some(current) = queue.pop_front() {
            for neighbor in crate::rewrite::neighbors(
                &Word::new(current.clone(), space.alphabet())?,
                rules,
            ) {
                if visited.insert(neighbor.letters().to_vec()) {
                    component.push(neighbor.letters().to_vec());
                    queue.push_back(neighbor.letters().to_vec());
                }
            }
            if visited.len() as u64 > limits.node_budget {
                return Err(Error::BudgetExceeded {
                    budget: limits.node_budget,
                });
            }
        }
        component.sort_unstable();
        classes.push(
            component
                .into_iter()
                .map(|letters| Word::new(letters, space.alphabet()))
                .collect::<Result<Vec<Word>>>()?,
        );
    }
    Ok(classes)
}

/// Partitions all words of length `n` under the chosen relation.
pub fn enumerate_classes(
    n: usize,
    alphabet: Alphabet,
    relation: &Relation,
    limits: SearchLimits,
) -> Result<ClassPartition> {
    let space = WordSpace::new(n, alphabet);
    let total = budget_check(&space, limits)?;
    let classes = match relation {
        Relation::Plactic => plactic_classes(&space),
        Relation::Grammic => grammic_classes(&space, total),
        Relation::Rewrite(rules) => {
            if rules.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch {
                    left: rules.alphabet().size(),
                    right: alphabet.size(),
                });
            }
            rewrite_classes(&space, rules, limits)?
        }
    };
    Ok(ClassPartition {
        n,
        k: alphabet.size(),
        relation: relation.tag(),
        tool_version: tool_version(),
        classes,
    })
}

/// Outcome of comparing two partitions of the same word set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum PartitionComparison {
    Equal,
    /// Every class of the first is contained in a class of the second and
    /// some second-class merges words the first separates.
    FirstFiner { merged_in_second: (Word, Word) },
    SecondFiner { merged_in_first: (Word, Word) },
    Incomparable {
        merged_in_first: (Word, Word),
        merged_in_second: (Word, Word),
    },
}

/// First pair of words lying in one class of `merged` but split by
/// `split_membership`, scanning deterministically.
fn merge_split_witness(
    merged: &ClassPartition,
    split_membership: &HashMap<&Word, usize>,
) -> Option<(Word, Word)> {
    for class in &merged.classes {
        let first = class.first()?;
        let target = split_membership[first];
        for other in &class[1..] {
            if split_membership[other] != target {
                return Some((first.clone(), other.clone()));
            }
        }
    }
    None
}

/// Reports equality, strict refinement (with a witness pair merged in the
/// coarser partition and separated in the finer), or incomparability.
pub fn compare_partitions(
    first: &ClassPartition,
    second: &ClassPartition,
) -> Result<PartitionComparison> {
    if first.n != second.n || first.k != second.k || first.word_count() != second.word_count() {
        return Err(Error::MismatchedPartitions);
    }
    let first_membership = first.membership();
    let second_membership = second.membership();
    if second_membership.len() != first_membership.len() {
        return Err(Error::MismatchedPartitions);
    }
    // A pair merged by `second` but split by `first` shows that `second`
    // does not refine `first`, i.e. `first` is finer there.
    let split_by_first = merge_split_witness(second, &first_membership);
    let split_by_second = merge_split_witness(first, &second_membership);
    Ok(match (split_by_first, split_by_second) {
        (None, None) => PartitionComparison::Equal,
        (Some(pair), None) => PartitionComparison::FirstFiner {
            merged_in_second: pair,
        },
        (None, Some(pair)) => PartitionComparison::SecondFiner {
            merged_in_first: pair,
        },
        (Some(in_second), Some(in_first)) => PartitionComparison::Incomparable {
            merged_in_first: in_first,
            merged_in_second: in_second,
        },
    })
}

/// A grammic-equivalent pair whose projections onto some subalphabet are
/// inequivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionViolation {
    pub u: Word,
    pub v: Word,
    pub letters: Vec<u8>,
    pub proj_u: Word,
    pub proj_v: Word,
}

/// An inequivalent pair all of whose proper projections are equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseExample {
    pub u: Word,
    pub v: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionLengthReport {
    pub n: usize,
    /// Grammic-equivalent pairs examined at this length.
    pub equivalent_pairs: u64,
    /// Pairs among them with some inequivalent projection.
    pub violating_pairs: u64,
    pub violation_example: Option<ProjectionViolation>,
    /// Inequivalent pairs whose projections all agree.
    pub converse_pairs: u64,
    pub converse_example: Option<ConverseExample>,
}

/// Census of how grammic equivalence interacts with subalphabet
/// projection, length by length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub k: u8,
    pub max_len: usize,
    pub relation: String,
    #[serde(rename = "toolVersion")]
    pub tool_version: String,
    pub lengths: Vec<ProjectionLengthReport>,
}

impl ProjectionReport {
    pub fn total_violations(&self) -> u64 {
        self.lengths.iter().map(|l| l.violating_pairs).sum()
    }

    pub fn total_converse(&self) -> u64 {
        self.lengths.iter().map(|l| l.converse_pairs).sum()
    }
}

/// Proper nonempty subsets of `1..=k`, smallest first, then lexicographic.
fn proper_subalphabets(k: u8) -> Vec<Vec<u8>> {
    let mut subsets: Vec<Vec<u8>> = (1u32..(1 << k) - 1)
        .map(|mask| {
            (1..=k)
                .filter(|&letter| mask & (1 << (letter - 1)) != 0)
                .collect()
        })
        .collect();
    subsets.sort_by_key(|s: &Vec<u8>| (s.len(), s.clone()));
    subsets
}

/// Assigns stable class ids to projected words, grouping by fingerprint
/// (confirmed, never by digest alone).
#[derive(Default)]
struct ProjectedClasses {
    by_word: HashMap<Vec<u8>, usize>,
    by_digest: HashMap<(usize, u128), Vec<usize>>,
    reps: Vec<Fingerprint>,
}

impl ProjectedClasses {
    fn class_of(&mut self, word: &Word) -> usize {
        if let Some(&id) = self.by_word.get(word.letters()) {
            return id;
        }
        let fingerprint = Fingerprint::compute(word);
        let key = (word.len(), fingerprint.digest());
        let bucket = self.by_digest.entry(key).or_default();
        let found = bucket
            .iter()
            .copied()
            .find(|&id| self.reps[id] == fingerprint);
        let id = match found {
            Some(id) => id,
            None => {
                let id = self.reps.len();
                bucket.push(id);
                self.reps.push(fingerprint);
                id
            }
        };
        self.by_word.insert(word.letters().to_vec(), id);
        id
    }
}

fn pairs(count: u64) -> u64 {
    count * count.saturating_sub(1) / 2
}

/// For every grammic-equivalent pair of words of length at most `max_len`,
/// checks grammic equivalence of all proper-subalphabet projections; also
/// counts converse failures (inequivalent pairs with all projections
/// equivalent). Supports three- and four-letter alphabets.
pub fn projection_scan(
    max_len: usize,
    alphabet: Alphabet,
    limits: SearchLimits,
) -> Result<ProjectionReport> {
    let k = alphabet.size();
    if k != 3 && k != 4 {
        return Err(Error::ProjectionScanAlphabet(k));
    }
    let subsets = proper_subalphabets(k);
    let mut lengths = Vec::with_capacity(max_len + 1);
    for n in 0..=max_len {
        let partition = enumerate_classes(n, alphabet, &Relation::Grammic, limits)?;
        let mut projected: Vec<ProjectedClasses> =
            subsets.iter().map(|_| ProjectedClasses::default()).collect();
        // Signature of a word: the class of each of its projections.
        let mut signatures: HashMap<&Word, Vec<usize>> = HashMap::new();
        for class in &partition.classes {
            for word in class {
                let signature = subsets
                    .iter()
                    .zip(projected.iter_mut())
                    .map(|(subset, groups)| Ok(groups.class_of(&project(word, subset)?)))
                    .collect::<Result<Vec<usize>>>()?;
                signatures.insert(word, signature);
            }
        }

        let mut equivalent_pairs = 0u64;
        let mut violating_pairs = 0u64;
        let mut violation_example = None;
        for class in &partition.classes {
            equivalent_pairs += pairs(class.len() as u64);
            let mut by_signature: HashMap<&[usize], Vec<&Word>> = HashMap::new();
            for word in class {
                by_signature
                    .entry(signatures[word].as_slice())
                    .or_default()
                    .push(word);
            }
            if by_signature.len() <= 1 {
                continue;
            }
            let same_signature: u64 = by_signature
                .values()
                .map(|group| pairs(group.len() as u64))
                .sum();
            violating_pairs += pairs(class.len() as u64) - same_signature;
            if violation_example.is_none() {
                violation_example = first_violation(class, &signatures, &subsets)?;
            }
        }

        let mut converse_pairs = 0u64;
        let mut converse_example = None;
        let membership = partition.membership();
        let mut by_signature: HashMap<&[usize], Vec<&Word>> = HashMap::new();
        for class in &partition.classes {
            for word in class {
                by_signature
                    .entry(signatures[word].as_slice())
                    .or_default()
                    .push(word);
            }
        }
        for group in by_signature.values() {
            let mut by_class: HashMap<usize, u64> = HashMap::new();
            for word in group {
                *by_class.entry(membership[*word]).or_default() += 1;
            }
            if by_class.len() <= 1 {
                continue;
            }
            let same_class: u64 = by_class.values().map(|&count| pairs(count)).sum();
            converse_pairs += pairs(group.len() as u64) - same_class;
            if converse_example.is_none() {
                let first = group[0];
                if let Some(other) = group
                    .iter()
                    .find(|word| membership[**word] != membership[first])
                {
                    // Double-check with the bounded decider before reporting.
                    debug_assert!(!grammic_eq_bounded(first, other)?.is_equivalent());
                    if grammic_eq_bounded(first, other)?.is_equivalent() {
                        return Err(Error::Numeric("converse example failed re-verification"));
                    }
                    converse_example = Some(ConverseExample {
                        u: (*first).clone(),
                        v: (**other).clone(),
                    });
                }
            }
        }

        lengths.push(ProjectionLengthReport {
            n,
            equivalent_pairs,
            violating_pairs,
            violation_example,
            converse_pairs,
            converse_example,
        });
    }
    Ok(ProjectionReport {
        k,
        max_len,
        relation: "grammic".to_owned(),
        tool_version: tool_version(),
        lengths,
    })
}

/// Finds and re-verifies one violating pair in a class known to mix
/// projection signatures.
fn first_violation(
    class: &[Word],
    signatures: &HashMap<&Word, Vec<usize>>,
    subsets: &[Vec<u8>],
) -> Result<Option<ProjectionViolation>> {
    let first = &class[0];
    for other in &class[1..] {
        if signatures[first] == signatures[other] {
            continue;
        }
        for subset in subsets {
            let proj_u = project(first, subset)?;
            let proj_v = project(other, subset)?;
            let equivalent = proj_u.len() == proj_v.len()
                && grammic_eq_bounded(&proj_u, &proj_v)?.is_equivalent();
            if !equivalent {
                if !grammic_eq_bounded(first, other)?.is_equivalent() {
                    return Err(Error::Numeric("violation example failed re-verification"));
                }
                return Ok(Some(ProjectionViolation {
                    u: first.clone(),
                    v: other.clone(),
                    letters: subset.clone(),
                    proj_u,
                    proj_v,
                }));
            }
        }
    }
    Ok(None)
}

/// Validity verdict for one ground instance of a candidate rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleValidity {
    pub rule: String,
    pub valid: bool,
}

/// How the rewrite and grammic partitions relate at one length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Agreement {
    Equal,
    RewriteFiner,
    GrammicFiner,
    Incomparable,
}

/// A verified disagreement pair: its status under both relations is
/// re-checked directly before it is stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexamplePair {
    pub u: Word,
    pub v: Word,
    pub rewrite_equivalent: bool,
    pub grammic_equivalent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LengthAgreement {
    pub n: usize,
    pub rewrite_classes: usize,
    pub grammic_classes: usize,
    pub agreement: Agreement,
    /// Whether every rewrite class sits inside one grammic class; checked
    /// when the rule instances are valid.
    pub soundness_ok: Option<bool>,
    pub counterexamples: Vec<CounterexamplePair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VariantReport {
    pub variant: Rule4Variant,
    pub rule_set: String,
    pub rule_instances: Vec<RuleValidity>,
    pub all_instances_valid: bool,
    pub lengths: Vec<LengthAgreement>,
}

/// Evidence report for the four-letter candidate rules: per-variant rule
/// validity and per-length agreement between the rewrite closure and the
/// grammic partition. The harness never asserts the conjecture; it emits
/// what it saw.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConjectureReport {
    pub k: u8,
    pub max_len: usize,
    pub budget: u64,
    #[serde(rename = "toolVersion")]
    pub tool_version: String,
    pub variants: Vec<VariantReport>,
}

fn verify_counterexample(
    u: &Word,
    v: &Word,
    rules: &RuleSet,
    limits: SearchLimits,
) -> Result<CounterexamplePair> {
    let rewrite_equivalent = rewrite_eq(u, v, rules, limits)?;
    let grammic_equivalent = grammic_eq_bounded(u, v)?.is_equivalent();
    if rewrite_equivalent == grammic_equivalent {
        return Err(Error::Numeric("counterexample failed re-verification"));
    }
    Ok(CounterexamplePair {
        u: u.clone(),
        v: v.clone(),
        rewrite_equivalent,
        grammic_equivalent,
    })
}

/// Probes one or both candidate four-letter rules up to `max_len`.
pub fn conjecture4(
    max_len: usize,
    variants: &[Rule4Variant],
    limits: SearchLimits,
) -> Result<ConjectureReport> {
    let alphabet = Alphabet::new(4)?;
    // The grammic side is shared across variants; compute it once per length.
    let grammic: Vec<ClassPartition> = (0..=max_len)
        .map(|n| enumerate_classes(n, alphabet, &Relation::Grammic, limits))
        .collect::<Result<_>>()?;

    let mut reports = Vec::with_capacity(variants.len());
    for &variant in variants {
        let rules = RuleSet::candidate4(variant);
        let rule_instances: Vec<RuleValidity> = rules
            .rules()
            .iter()
            .filter(|rule| rule.kind() == RuleKind::Extra)
            .map(|rule| {
                let lhs = rule.lhs_word(alphabet);
                let rhs = rule.rhs_word(alphabet);
                Ok(RuleValidity {
                    rule: rule.id().to_owned(),
                    valid: grammic_eq_bounded(&lhs, &rhs)?.is_equivalent(),
                })
            })
            .collect::<Result<_>>()?;
        let all_instances_valid = rule_instances.iter().all(|r| r.valid);

        let mut lengths = Vec::with_capacity(max_len + 1);
        for (n, grammic_partition) in grammic.iter().enumerate() {
            let rewrite_partition =
                enumerate_classes(n, alphabet, &Relation::Rewrite(rules.clone()), limits)?;
            let comparison = compare_partitions(&rewrite_partition, grammic_partition)?;
            let (agreement, witnesses) = match &comparison {
                PartitionComparison::Equal => (Agreement::Equal, Vec::new()),
                PartitionComparison::FirstFiner { merged_in_second } => (
                    Agreement::RewriteFiner,
                    vec![(merged_in_second.0.clone(), merged_in_second.1.clone())],
                ),
                PartitionComparison::SecondFiner { merged_in_first } => (
                    Agreement::GrammicFiner,
                    vec![(merged_in_first.0.clone(), merged_in_first.1.clone())],
                ),
                PartitionComparison::Incomparable {
                    merged_in_first,
                    merged_in_second,
                } => (
                    Agreement::Incomparable,
                    vec![
                        (merged_in_first.0.clone(), merged_in_first.1.clone()),
                        (merged_in_second.0.clone(), merged_in_second.1.clone()),
                    ],
                ),
            };
            let counterexamples = witnesses
                .iter()
                .map(|(u, v)| verify_counterexample(u, v, &rules, limits))
                .collect::<Result<Vec<_>>>()?;
            let soundness_ok = if all_instances_valid {
                // Soundness: rewrite-equivalent implies grammic-equivalent,
                // i.e. no pair merged by rewrite is split by grammic.
                Some(merge_split_witness(&rewrite_partition, &grammic_partition.membership()).is_none())
            } else {
                None
            };
            lengths.push(LengthAgreement {
                n,
                rewrite_classes: rewrite_partition.class_count(),
                grammic_classes: grammic_partition.class_count(),
                agreement,
                soundness_ok,
                counterexamples,
            });
        }
        reports.push(VariantReport {
            variant,
            rule_set: rules.name().to_owned(),
            rule_instances,
            all_instances_valid,
            lengths,
        });
    }
    Ok(ConjectureReport {
        k: 4,
        max_len,
        budget: limits.node_budget,
        tool_version: tool_version(),
        variants: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(size: u8) -> Alphabet {
        Alphabet::new(size).unwrap()
    }

    fn w(text: &str, size: u8) -> Word {
        Word::parse(text, k(size)).unwrap()
    }

    #[test]
    fn singleton_classes_at_length_one() {
        for relation in [
            Relation::Plactic,
            Relation::Grammic,
            Relation::Rewrite(RuleSet::grammic3()),
        ] {
            let partition =
                enumerate_classes(1, k(3), &relation, SearchLimits::default()).unwrap();
            assert_eq!(partition.class_count(), 3);
            assert!(partition.classes.iter().all(|class| class.len() == 1));
        }
    }

    #[test]
    fn partitions_cover_the_space() {
        let partition = enumerate_classes(
            4,
            k(3),
            &Relation::Grammic,
            SearchLimits::default(),
        )
        .unwrap();
        assert_eq!(partition.word_count(), 81);
        // Classes keyed by first member, in lexicographic order.
        let firsts: Vec<&Word> = partition.classes.iter().map(|c| &c[0]).collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
    }

    #[test]
    fn grammic_class_of_the_new_rule_pair() {
        let partition =
            enumerate_classes(4, k(3), &Relation::Grammic, SearchLimits::default()).unwrap();
        let membership = partition.membership();
        assert_eq!(
            membership[&w("3212", 3)],
            membership[&w("2132", 3)]
        );
    }

    #[test]
    fn budget_rejects_oversized_spaces() {
        let result = enumerate_classes(
            10,
            k(3),
            &Relation::Plactic,
            SearchLimits::with_budget(100),
        );
        assert!(matches!(result, Err(Error::BudgetExceeded { budget: 100 })));
    }

    #[test]
    fn compare_detects_refinement_direction() {
        let limits = SearchLimits::default();
        let plactic = enumerate_classes(4, k(3), &Relation::Plactic, limits).unwrap();
        let grammic = enumerate_classes(4, k(3), &Relation::Grammic, limits).unwrap();
        match compare_partitions(&plactic, &grammic).unwrap() {
            PartitionComparison::FirstFiner { merged_in_second } => {
                let (u, v) = merged_in_second;
                assert!(grammic_eq_bounded(&u, &v).unwrap().is_equivalent());
                assert!(!crate::tableau::plactic_eq(&u, &v).unwrap());
            }
            other => panic!("expected plactic to be strictly finer, got {other:?}"),
        }
        assert_eq!(
            compare_partitions(&grammic, &grammic).unwrap(),
            PartitionComparison::Equal
        );
    }

    #[test]
    fn compare_rejects_mismatched_spaces() {
        let limits = SearchLimits::default();
        let a = enumerate_classes(3, k(3), &Relation::Plactic, limits).unwrap();
        let b = enumerate_classes(4, k(3), &Relation::Plactic, limits).unwrap();
        assert!(compare_partitions(&a, &b).is_err());
    }

    #[test]
    fn relation_parsing() {
        assert_eq!(Relation::parse("plactic", k(3)).unwrap(), Relation::Plactic);
        assert_eq!(Relation::parse("grammic", k(3)).unwrap(), Relation::Grammic);
        assert_eq!(
            Relation::parse("rewrite:grammic3", k(3)).unwrap().tag(),
            "rewrite:grammic3"
        );
        assert!(Relation::parse("nonsense", k(3)).is_err());
    }

    #[test]
    fn projection_scan_rejects_other_alphabets() {
        assert!(projection_scan(2, k(2), SearchLimits::default()).is_err());
    }

    #[test]
    fn projection_scan_trivial_length() {
        let report = projection_scan(1, k(3), SearchLimits::default()).unwrap();
        assert_eq!(report.total_violations(), 0);
        assert_eq!(report.total_converse(), 0);
    }

    #[test]
    fn conjecture_report_covers_small_lengths() {
        let report = conjecture4(3, &[Rule4Variant::Bdac], SearchLimits::default()).unwrap();
        let variant = &report.variants[0];
        assert_eq!(variant.lengths.len(), 4);
        // No length-four rule applies below length 4, yet the partitions
        // still have to be computed and compared honestly.
        for length in &variant.lengths {
            assert_eq!(length.agreement, Agreement::Equal);
            assert!(length.counterexamples.is_empty());
        }
    }
}
