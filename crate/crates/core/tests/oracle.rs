mod common;

use nusp::compiler::compile;
use nusp::oracle::{
    bound_violations, communication_fixture_check, differential_sigma, differential_sigma_with,
    equivalence_check, standard_fixtures, EquivalenceOptions, InstanceParams,
};
use nusp::splice::{SplicingRule, WordSet};
use nusp::symbol::{Symbol, Word};

/// σ that only finds non-overlapping occurrences, scanning left to right.
fn sigma_without_overlaps(rules: &[SplicingRule], lang: &WordSet) -> WordSet {
    fn disjoint(hay: &[Symbol], needle: &[Symbol]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = 0;
        while i + needle.len() <= hay.len() {
            if hay[i..i + needle.len()] == *needle {
                out.push(i);
                i += needle.len().max(1);
            } else {
                i += 1;
            }
        }
        out
    }
    let mut out = WordSet::new();
    for r in rules {
        for x in lang {
            for y in lang {
                for i in disjoint(x, &r.left_site()) {
                    for j in disjoint(y, &r.right_site()) {
                        let mut z = x[..i + r.u1.len()].to_vec();
                        z.extend_from_slice(&y[j + r.v1.len()..]);
                        out.insert(Word::new(z));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn thousand_cases_seed_seven() {
    differential_sigma(&InstanceParams::default(), 1000).unwrap();
}

#[test]
fn other_seeds() {
    for seed in [1, 2, 3] {
        differential_sigma(&InstanceParams::default().with_seed(seed), 300).unwrap();
    }
}

#[test]
fn overlap_mutation_is_caught() {
    let cx = differential_sigma_with(&InstanceParams::default(), 1000, sigma_without_overlaps).unwrap_err();
    // some missing product needs a second, overlapping occurrence of a site
    assert!(!cx.expected.is_subset(&cx.actual) || !cx.actual.is_subset(&cx.expected));
    let text = cx.to_string();
    assert!(text.contains("rule [(") && text.contains("missing"));
}

#[test]
fn overlap_mutation_on_the_classic_rule() {
    let aa = Word::parse_tokens("a").unwrap();
    let rule = SplicingRule::new(aa.clone(), aa.clone(), aa.clone(), aa);
    let lang: WordSet = [Word::parse_tokens("a a a").unwrap()].into();
    let good = nusp::oracle::naive_sigma(std::slice::from_ref(&rule), &lang);
    assert_ne!(sigma_without_overlaps(&[rule], &lang), good);
}

#[test]
fn communication_fixtures() {
    communication_fixture_check(&standard_fixtures()).unwrap();
}

#[test]
fn even_as_up_to_six() {
    let m = common::machine("even_as");
    let cn = compile(&m).unwrap();
    let report = equivalence_check("even_as", &m, &cn, 6, EquivalenceOptions::default());
    assert_eq!(report.tested, 127);
    assert!(report.passed(), "{report}");
    let (c1, c0) = report.fitted.unwrap();
    assert!(bound_violations(&report.samples, c1, c0).is_empty());
}

#[test]
fn anbn_up_to_six() {
    let m = common::machine("anbn");
    let cn = compile(&m).unwrap();
    let report = equivalence_check("anbn", &m, &cn, 6, EquivalenceOptions::default());
    assert!(report.passed(), "{report}");
    assert_eq!(report.samples.len(), 3);
}
