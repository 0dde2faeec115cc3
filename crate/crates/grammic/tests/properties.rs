//! Cross-module invariants, checked exhaustively at desk scale and on
//! seeded random samples.

use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grammic::{
    build_tableau, build_tableau_by_columns, compare_partitions, enumerate_classes, erase,
    extract_params, grammic_eq_bounded, parikh, plactic_eq, project, quick_inequivalent,
    row_normal_form, words_of_length, Alphabet, ClassPartition, Fingerprint, PartitionComparison,
    Relation, RowVector, RuleKind, RuleSet, SearchLimits, Word,
};

fn alpha(k: u8) -> Alphabet {
    Alphabet::new(k).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, k: u8, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| rng.gen_range(1..=k)).collect();
    Word::new(letters, alpha(k)).unwrap()
}

fn word_strategy(k: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=k, 0..=max_len)
        .prop_map(move |letters| Word::new(letters, alpha(k)).unwrap())
}

proptest! {
    #[test]
    fn parikh_is_additive(u in word_strategy(3, 10), v in word_strategy(3, 10)) {
        let sum = &parikh(&u) + &parikh(&v);
        prop_assert_eq!(parikh(&u.concat(&v).unwrap()), sum);
    }

    #[test]
    fn projection_composes(
        u in word_strategy(4, 10),
        mask_b in 1u8..15,
        mask_c_seed in 1u8..15,
    ) {
        let b: Vec<u8> = (1..=4).filter(|i| mask_b & (1 << (i - 1)) != 0).collect();
        let size_b = b.len() as u8;
        let mask_c = (mask_c_seed % ((1 << size_b) - 1)) + 1;
        let c: Vec<u8> = (1..=size_b).filter(|i| mask_c & (1 << (i - 1)) != 0).collect();
        // Letters of the original alphabet that survive both projections.
        let preimage: Vec<u8> = c.iter().map(|&i| b[i as usize - 1]).collect();
        let nested = project(&project(&u, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(nested, project(&u, &preimage).unwrap());
    }

    #[test]
    fn erase_then_relabel_is_project(u in word_strategy(4, 10), mask in 1u8..15) {
        let b: Vec<u8> = (1..=4).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let erased = erase(&u, &b).unwrap();
        prop_assert_eq!(project(&erased, &b).unwrap(), project(&u, &b).unwrap());
        prop_assert_eq!(erased.alphabet(), u.alphabet());
    }

    #[test]
    fn sum_conservation_with_saturation(
        coords in prop::collection::vec(0u64..6, 3),
        letter in 1u8..=3,
    ) {
        let x = RowVector::new(coords.clone()).unwrap();
        let image = x.act_letter(letter).unwrap();
        let saturated = coords[letter as usize..].iter().all(|&c| c == 0);
        let expected = if saturated { x.sum() + 1 } else { x.sum() };
        prop_assert_eq!(image.sum(), expected);
    }

    #[test]
    fn action_is_bounded_by_length(u in word_strategy(3, 12)) {
        let image = grammic::bottom_row(&u);
        let max = image.coords().iter().copied().max().unwrap_or(0);
        prop_assert!(image.sum() <= u.len() as u64);
        prop_assert!(max <= image.sum());
    }
}

#[test]
fn enumeration_yields_distinct_words() {
    for (n, k, expected) in [(8usize, 3u8, 6561usize), (10, 2, 1024), (0, 4, 1)] {
        let seen: HashSet<Word> = words_of_length(n, alpha(k)).collect();
        assert_eq!(seen.len(), expected);
    }
}

/// Tableau invariants, multiset preservation, normal-form equivalence, and
/// the three-letter exponent constraints, exhaustively for length <= 8.
#[test]
fn tableau_invariants_exhaustive_k3() {
    for n in 0..=8 {
        for word in words_of_length(n, alpha(3)) {
            let tableau = build_tableau(&word);
            assert!(tableau.is_valid(), "invalid tableau for {word}");
            assert!(tableau.height() <= 3);
            assert_eq!(tableau.cell_parikh(word.alphabet()), parikh(&word));
            let row_nf = row_normal_form(&word);
            let col_nf = grammic::column_normal_form(&word);
            assert!(plactic_eq(&word, &row_nf).unwrap());
            assert!(plactic_eq(&word, &col_nf).unwrap());
            let params = extract_params(&word).unwrap();
            assert!(params.is_valid(), "bad exponents for {word}: {params:?}");
            assert_eq!(params.to_row_normal_form().unwrap(), row_nf);
        }
    }
}

#[test]
fn tableau_invariants_random_k4() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..2000 {
        let word = random_word(&mut rng, 4, 14);
        let tableau = build_tableau(&word);
        assert!(tableau.is_valid(), "invalid tableau for {word}");
        assert!(tableau.height() <= 4);
        assert_eq!(tableau.cell_parikh(word.alphabet()), parikh(&word));
        assert!(plactic_eq(&word, &row_normal_form(&word)).unwrap());
    }
}

#[test]
fn row_and_column_constructions_agree_exhaustively() {
    for n in 0..=7 {
        for word in words_of_length(n, alpha(3)) {
            assert_eq!(
                build_tableau_by_columns(&word),
                build_tableau(&word),
                "construction mismatch for {word}"
            );
        }
    }
}

/// The Knuth-only rewrite closure coincides with tableau equality at small
/// lengths, over both two and three letters.
#[test]
fn knuth_closure_equals_tableau_equality() {
    let limits = SearchLimits::default();
    for k in [2u8, 3] {
        let rules = RuleSet::knuth(k).unwrap();
        for n in 0..=7 {
            let plactic = enumerate_classes(n, alpha(k), &Relation::Plactic, limits).unwrap();
            let rewrite =
                enumerate_classes(n, alpha(k), &Relation::Rewrite(rules.clone()), limits).unwrap();
            assert_eq!(
                compare_partitions(&plactic, &rewrite).unwrap(),
                PartitionComparison::Equal,
                "k={k}, n={n}"
            );
        }
    }
}

/// One Knuth rewrite anywhere in a word never changes the action: the
/// mapping factors through the plactic monoid.
#[test]
fn action_factors_through_plactic_rewrites() {
    let rules = RuleSet::knuth(3).unwrap();
    let mut checked = 0;
    for n in 0..=5 {
        for word in words_of_length(n, alpha(3)) {
            let fp = Fingerprint::compute(&word);
            for neighbor in grammic::neighbors(&word, &rules) {
                assert_eq!(
                    Fingerprint::compute(&neighbor),
                    fp,
                    "action changed by Knuth rewrite {word} ~ {neighbor}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

/// Whenever the bounded decider accepts, the commutative images agree
/// (checked through the class partition, exhaustively at length <= 6).
#[test]
fn grammic_classes_are_parikh_homogeneous() {
    let limits = SearchLimits::default();
    for n in 0..=6 {
        let partition = enumerate_classes(n, alpha(3), &Relation::Grammic, limits).unwrap();
        for class in &partition.classes {
            let image = parikh(&class[0]);
            for word in class {
                assert_eq!(parikh(word), image, "class of {} mixes images", class[0]);
            }
        }
    }
}

/// Every ground rule of the three-letter system relates grammic-equivalent
/// words.
#[test]
fn grammic3_rules_are_sound() {
    let rules = RuleSet::grammic3();
    for rule in rules.rules() {
        let lhs = rule.lhs_word(rules.alphabet());
        let rhs = rule.rhs_word(rules.alphabet());
        assert!(
            grammic_eq_bounded(&lhs, &rhs).unwrap().is_equivalent(),
            "unsound rule {}",
            rule.id()
        );
    }
}

/// Random derivations replay from start to end.
#[test]
fn derivations_replay() {
    let rules = RuleSet::grammic3();
    let limits = SearchLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut found = 0;
    for _ in 0..300 {
        let start = random_word(&mut rng, 3, 8);
        // Random walk through the rewrite graph, then recover a certificate.
        let mut target = start.clone();
        for _ in 0..4 {
            let options: Vec<Word> = grammic::neighbors(&target, &rules).into_iter().collect();
            if options.is_empty() {
                break;
            }
            target = options[rng.gen_range(0..options.len())].clone();
        }
        let derivation = grammic::derivation(&start, &target, &rules, limits)
            .unwrap()
            .expect("walk endpoints stay congruent");
        derivation.verify(&rules).unwrap();
        assert_eq!(derivation.replay(&rules).unwrap(), target);
        found += derivation.steps.len();
    }
    assert!(found > 0);
}

/// Independent route for the minimal extra-rule count: binary-heap
/// Dijkstra with its own neighbor generation, nothing shared with the
/// deque search.
fn dijkstra_extra_count(u: &Word, v: &Word, rules: &RuleSet) -> Option<u64> {
    use std::cmp::Reverse;
    use std::collections::{BinaryHeap, HashMap};
    if u.len() != v.len() {
        return None;
    }
    let mut dist: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(u.letters().to_vec(), 0);
    heap.push(Reverse((0u64, u.letters().to_vec())));
    while let Some(Reverse((cost, current))) = heap.pop() {
        if dist.get(&current).is_some_and(|&d| d < cost) {
            continue;
        }
        if current == v.letters() {
            return Some(cost);
        }
        for rule in rules.rules() {
            let weight = match rule.kind() {
                RuleKind::Knuth => 0,
                RuleKind::Extra => 1,
            };
            let width = rule.lhs().len();
            if width > current.len() {
                continue;
            }
            for pos in 0..=current.len() - width {
                for (from, to) in [(rule.lhs(), rule.rhs()), (rule.rhs(), rule.lhs())] {
                    if &current[pos..pos + width] != from {
                        continue;
                    }
                    let mut next = current.clone();
                    next[pos..pos + width].copy_from_slice(to);
                    let candidate = cost + weight;
                    if dist.get(&next).is_none_or(|&d| candidate < d) {
                        dist.insert(next.clone(), candidate);
                        heap.push(Reverse((candidate, next)));
                    }
                }
            }
        }
    }
    None
}

#[test]
fn min_grammic_count_matches_dijkstra_oracle() {
    let rules = RuleSet::grammic3();
    let limits = SearchLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    // Random pairs within one length: some congruent, some not.
    for _ in 0..150 {
        let n = rng.gen_range(1..=6);
        let u = {
            let letters = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            Word::new(letters, alpha(3)).unwrap()
        };
        let v = {
            let letters = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            Word::new(letters, alpha(3)).unwrap()
        };
        assert_eq!(
            grammic::min_grammic_rule_count(&u, &v, limits).unwrap(),
            dijkstra_extra_count(&u, &v, &rules),
            "oracle disagreement for {u} vs {v}"
        );
    }
}

/// Grammic never separates what plactic merges; from length four on it is
/// strictly coarser.
#[test]
fn grammic_coarsens_plactic() {
    let limits = SearchLimits::default();
    for n in 0..=8 {
        let plactic = enumerate_classes(n, alpha(3), &Relation::Plactic, limits).unwrap();
        let grammic_partition =
            enumerate_classes(n, alpha(3), &Relation::Grammic, limits).unwrap();
        match compare_partitions(&plactic, &grammic_partition).unwrap() {
            PartitionComparison::Equal => assert!(n < 4, "expected strict coarsening at n={n}"),
            PartitionComparison::FirstFiner { merged_in_second } => {
                assert!(n >= 4);
                let (u, v) = merged_in_second;
                assert!(grammic_eq_bounded(&u, &v).unwrap().is_equivalent());
                assert!(!plactic_eq(&u, &v).unwrap());
            }
            other => panic!("grammic fails to coarsen plactic at n={n}: {other:?}"),
        }
    }
}

/// Leader-style pairwise classification with the bounded decider must
/// reproduce the fingerprint-grouped partition.
#[test]
fn pairwise_decider_matches_fingerprint_grouping() {
    let limits = SearchLimits::default();
    for n in 0..=6 {
        let by_fingerprint =
            enumerate_classes(n, alpha(3), &Relation::Grammic, limits).unwrap();
        let mut reps: Vec<Word> = Vec::new();
        let mut classes: Vec<Vec<Word>> = Vec::new();
        for word in words_of_length(n, alpha(3)) {
            let found = reps.iter().position(|rep| {
                !quick_inequivalent(rep, &word).unwrap()
                    && grammic_eq_bounded(rep, &word).unwrap().is_equivalent()
            });
            match found {
                Some(i) => classes[i].push(word),
                None => {
                    reps.push(word.clone());
                    classes.push(vec![word]);
                }
            }
        }
        assert_eq!(by_fingerprint.classes, classes, "partition mismatch at n={n}");
    }
}

/// extract_params is a plactic invariant: Knuth rewrites never change the
/// exponents.
#[test]
fn params_invariant_under_plactic_rewrites() {
    let rules = RuleSet::knuth(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..500 {
        let word = random_word(&mut rng, 3, 10);
        let params = extract_params(&word).unwrap();
        for neighbor in grammic::neighbors(&word, &rules) {
            assert_eq!(extract_params(&neighbor).unwrap(), params);
        }
    }
}

/// The closed-form class multiplicity agrees with brute-force enumeration:
/// each grammic class contains exactly that many distinct row normal forms.
#[test]
fn class_multiplicity_matches_enumeration() {
    let limits = SearchLimits::default();
    for n in 0..=8 {
        let partition = enumerate_classes(n, alpha(3), &Relation::Grammic, limits).unwrap();
        for class in &partition.classes {
            let forms: HashSet<Word> = class.iter().map(row_normal_form).collect();
            let params = extract_params(&class[0]).unwrap();
            assert_eq!(
                grammic::class_3_multiplicity(&params).unwrap(),
                forms.len() as u64,
                "class of {} (params {params:?})",
                class[0]
            );
        }
    }
}

/// Partition outputs are deterministic and carry their headers.
#[test]
fn partitions_are_deterministic() {
    let limits = SearchLimits::default();
    let one = enumerate_classes(5, alpha(3), &Relation::Grammic, limits).unwrap();
    let two = enumerate_classes(5, alpha(3), &Relation::Grammic, limits).unwrap();
    assert_eq!(one, two);
    let json = serde_json::to_value(&one).unwrap();
    assert_eq!(json["n"], 5);
    assert_eq!(json["k"], 3);
    assert_eq!(json["relation"], "grammic");
    assert!(json["toolVersion"].is_string());
    let back: ClassPartition = serde_json::from_value(json).unwrap();
    assert_eq!(back, one);
}
