use exact_algebra::Integer;
use rayon::prelude::*;
use serde::Serialize;
use solution_tree::{enumerate, mutate, Triple};

use crate::seed::max_denominator_degree;
use crate::{mutate_seed, specialize_triple, ClusterError, MutationWord, Pattern, Seed};

/// Labels leaving the vertex reached by `w` in the tree with root chain `3, 2`
/// and binary branching that never reuses the edge just taken.
fn t3_prime_children(w: &MutationWord) -> Vec<usize> {
    match w.len() {
        0 => vec![3],
        1 => vec![2],
        _ => (1..=3).rev().filter(|&k| Some(k) != w.last()).collect(),
    }
}

/// All words of length at most `depth` in that tree, breadth first, children in
/// decreasing label order (the same order as the solution tree's display).
pub fn t3_prime_words(depth: usize) -> Vec<MutationWord> {
    let mut out = vec![MutationWord::default()];
    let mut level = out.clone();
    for _ in 0..depth {
        level = level
            .iter()
            .flat_map(|w| t3_prime_children(w).into_iter().map(move |k| w.pushed(k)))
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub depth: usize,
    pub nodes: usize,
    /// Largest entry among the matched triples.
    pub largest: Integer,
}

fn specialize(word: &MutationWord, s: &Seed) -> Result<Triple, ClusterError> {
    specialize_triple(s).ok_or_else(|| ClusterError::Mismatch {
        word: word.0.clone(),
        expected: "integral values".into(),
        got: format!("{:?}", crate::specialize_ones(s)),
    })
}

/// Walks the tree level by level and compares every specialized cluster with
/// the solution tree node at the same place.
pub fn walk_check(pattern: Pattern, depth: usize) -> Result<WalkReport, ClusterError> {
    let mut expected = enumerate(pattern.kind(), depth, None);
    let mut level = vec![(MutationWord::default(), pattern.initial_seed())];
    let mut nodes = 0;
    let mut largest = Integer::from(1);
    for d in 0..=depth {
        for (word, seed) in &level {
            let got = specialize(word, seed)?;
            let node = expected.next().ok_or_else(|| ClusterError::Mismatch {
                word: word.0.clone(),
                expected: "no node".into(),
                got: got.to_string(),
            })?;
            let path: Vec<usize> = node.path.iter().map(|&k| k as usize).collect();
            if path != word.0 || node.triple != got {
                return Err(ClusterError::Mismatch {
                    word: word.0.clone(),
                    expected: format!("{} at {:?}", node.triple, path),
                    got: got.to_string(),
                });
            }
            largest = largest.max(got.max().clone());
            nodes += 1;
        }
        if d == depth {
            break;
        }
        level = level
            .par_iter()
            .map(|(w, s)| {
                t3_prime_children(w)
                    .into_iter()
                    .map(|k| Ok((w.pushed(k), mutate_seed(s, k)?)))
                    .collect::<Result<Vec<_>, ClusterError>>()
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
    }
    if let Some(extra) = expected.next() {
        return Err(ClusterError::Mismatch {
            word: extra.path.iter().map(|&k| k as usize).collect(),
            expected: extra.triple.to_string(),
            got: "no seed".into(),
        });
    }
    Ok(WalkReport {
        depth,
        nodes,
        largest,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WordCheckReport {
    pub max_len: usize,
    /// Seeds reached, the initial one included.
    pub words: usize,
    pub max_denominator_degree: i64,
    pub max_terms: usize,
}

impl WordCheckReport {
    fn merge(mut self, other: WordCheckReport) -> Self {
        self.words += other.words;
        self.max_denominator_degree = self
            .max_denominator_degree
            .max(other.max_denominator_degree);
        self.max_terms = self.max_terms.max(other.max_terms);
        self
    }
}

struct Ctx {
    pattern: Pattern,
    max_len: usize,
    symmetrizer: Vec<Integer>,
}

fn check_subtree(
    ctx: &Ctx,
    word: &MutationWord,
    seed: &Seed,
    triple: &Triple,
) -> Result<WordCheckReport, ClusterError> {
    let here = WordCheckReport {
        max_len: ctx.max_len,
        words: 1,
        max_denominator_degree: max_denominator_degree(seed),
        max_terms: seed.cluster().iter().map(|p| p.len()).max().unwrap_or(0),
    };
    if word.len() == ctx.max_len {
        return Ok(here);
    }
    let mismatch = |w: &MutationWord, expected: &str, got: String| ClusterError::Mismatch {
        word: w.0.clone(),
        expected: expected.to_string(),
        got,
    };
    let dirs: Vec<usize> = (1..=seed.n()).filter(|&k| Some(k) != word.last()).collect();
    dirs.par_iter()
        .map(|&k| {
            let w = word.pushed(k);
            let child = mutate_seed(seed, k)?;
            let fresh = child.variable(k);
            if !fresh.is_laurent_positive() {
                return Err(mismatch(&w, "positive coefficients", fresh.to_string()));
            }
            if !child.matrix().is_symmetrized_by(&ctx.symmetrizer) {
                return Err(mismatch(
                    &w,
                    "initial skew-symmetrizer",
                    child.matrix().to_string(),
                ));
            }
            let back = mutate_seed(&child, k)?;
            if &back != seed {
                return Err(mismatch(
                    &w,
                    "mutating back returns the parent",
                    format!("{back:?}"),
                ));
            }
            let expected = mutate(triple, k as u8, ctx.pattern.kind())
                .map_err(|e| mismatch(&w, "a solution", e.to_string()))?;
            let got = specialize(&w, &child)?;
            if got != expected {
                return Err(mismatch(&w, &expected.to_string(), got.to_string()));
            }
            check_subtree(ctx, &w, &child, &got)
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|subs| subs.into_iter().fold(here.clone(), WordCheckReport::merge))
}

/// Visits every word of length at most `max_len` with no letter repeated
/// twice in a row. At each new seed checks that the new variable has positive
/// coefficients, that the matrix keeps the initial skew-symmetrizer, that
/// mutating back recovers the parent seed and that the values at ones agree
/// with the solution tree's mutation.
pub fn check_words(pattern: Pattern, max_len: usize) -> Result<WordCheckReport, ClusterError> {
    let seed = pattern.initial_seed();
    let ctx = Ctx {
        pattern,
        max_len,
        symmetrizer: seed.matrix().symmetrizer().to_vec(),
    };
    let root = MutationWord::default();
    let triple = specialize(&root, &seed)?;
    check_subtree(&ctx, &root, &seed, &triple)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_tree_shape() {
        let words = t3_prime_words(4);
        assert_eq!(words.len(), 9);
        assert_eq!(words[2].0, vec![3, 2]);
        assert_eq!(words[3].0, vec![3, 2, 3]);
        assert_eq!(words[4].0, vec![3, 2, 1]);
        assert_eq!(words[5].0, vec![3, 2, 3, 2]);
        assert_eq!(t3_prime_words(0), vec![MutationWord::default()]);
    }

    #[test]
    fn small_walks() {
        for p in [Pattern::Twelve, Pattern::Markov] {
            assert_eq!(walk_check(p, 0).unwrap().nodes, 1);
            assert_eq!(walk_check(p, 4).unwrap().nodes, 9);
        }
        assert_eq!(
            walk_check(Pattern::Twelve, 4).unwrap().largest,
            Integer::from(16693)
        );
    }

    #[test]
    fn short_word_checks() {
        let r = check_words(Pattern::Twelve, 3).unwrap();
        assert_eq!(r.words, 1 + 3 + 6 + 12);
        assert!(r.max_denominator_degree > 0);
    }
}
