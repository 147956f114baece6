use std::collections::VecDeque;

use cluster_engine::{mutate_seed, MutationWord, Pattern};
use exact_algebra::{Integer, LaurentPolynomial};
use serde::Serialize;

use crate::arc::{cross_monomial, ArcDescriptor};
use crate::graph::build_snake_graph;
use crate::matching::{count_matchings, weight_polynomial};
use crate::signs::{continued_fraction, evaluate_cf, ContinuedFraction};
use crate::SnakeError;

fn cross(arc: &ArcDescriptor) -> LaurentPolynomial {
    LaurentPolynomial::from_monomial(cross_monomial(arc), 1)
}

/// Weight polynomial divided by the cross monomial once: the numerator of the
/// expansion over `cross`.
pub fn expansion_numerator(arc: &ArcDescriptor) -> Result<LaurentPolynomial, SnakeError> {
    let w = weight_polynomial(&build_snake_graph(arc)?);
    Ok(w.div_exact(&cross(arc))?)
}

/// Laurent expansion of the arc's cluster variable in the initial cluster.
/// The snake graph has two tiles per monogon pass, so its matchings carry the
/// cross monomial twice.
pub fn cluster_variable_of_arc(arc: &ArcDescriptor) -> Result<LaurentPolynomial, SnakeError> {
    let c = cross(arc);
    Ok(expansion_numerator(arc)?.div_exact(&c)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumeratorReport {
    pub arc: String,
    pub matchings: Integer,
    pub continued_fraction: String,
    pub numerator: Integer,
    pub denominator: Integer,
}

/// Compares the number of perfect matchings with the numerator of the
/// continued fraction read off the sign sequence.
pub fn numerator_matching_check(arc: &ArcDescriptor) -> Result<NumeratorReport, SnakeError> {
    let g = build_snake_graph(arc)?;
    let count = count_matchings(&g);
    let cf: ContinuedFraction = continued_fraction(&g);
    let value = evaluate_cf(&cf);
    let report = NumeratorReport {
        arc: arc.to_string(),
        matchings: count.clone(),
        continued_fraction: cf.to_string(),
        numerator: value.numer().clone(),
        denominator: value.denom().clone(),
    };
    if report.numerator != count {
        return Err(SnakeError::Mismatch(format!(
            "{}: {} matchings but CF {} = {}/{}; graph {}",
            report.arc, count, report.continued_fraction, report.numerator, report.denominator, g
        )));
    }
    Ok(report)
}

/// Where an arc's cluster variable was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcWitness {
    pub word: MutationWord,
    pub position: usize,
    pub variable: String,
}

/// Accepts the arc when its expansion is a cluster variable of the `(Delta, 2I)`
/// pattern. Searches mutation words without immediate repeats; along such a
/// word every new variable is larger at `x = 1` than all earlier ones, so the
/// search stops once values exceed the arc's.
pub fn validate_arc(arc: &ArcDescriptor) -> Result<ArcWitness, SnakeError> {
    let target = cluster_variable_of_arc(arc).map_err(|e| match e {
        SnakeError::Algebra(err) => {
            SnakeError::InvalidArc(format!("{arc}: expansion is not Laurent ({err})"))
        }
        other => other,
    })?;
    let bound = target.eval_at_ones();
    let seed = Pattern::Twelve.initial_seed();
    let witness = |word: MutationWord, position| ArcWitness {
        word,
        position,
        variable: target.to_string(),
    };
    if let Some(k) = (1..=3).find(|&k| seed.variable(k) == &target) {
        return Ok(witness(MutationWord::default(), k));
    }
    let mut queue = VecDeque::from([(MutationWord::default(), seed)]);
    while let Some((w, s)) = queue.pop_front() {
        for k in (1..=3).filter(|&k| Some(k) != w.last()) {
            let child = mutate_seed(&s, k)?;
            let v = child.variable(k);
            if v == &target {
                return Ok(witness(w.pushed(k), k));
            }
            if v.eval_at_ones() < bound {
                queue.push_back((w.pushed(k), child));
            }
        }
    }
    Err(SnakeError::InvalidArc(format!(
        "{arc}: expansion with value {bound} at x = 1 is not a cluster variable"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(3, s).unwrap()
    }

    #[test]
    fn golden_expansion() {
        let a: ArcDescriptor = "3ccw 2cw 3cw".parse().unwrap();
        let num = expansion_numerator(&a).unwrap();
        let expected = lp("x1^4 + 2*x1^3*x2 + x1^3*x3 + 3*x1^2*x2^2 + x1^2*x2*x3 + x1^2*x3^2 + 2*x1*x2^3 + x1*x2^2*x3 + x2^4");
        assert_eq!(num, expected);
        assert_eq!(num.eval_at_ones(), Integer::from(13));
        let x = cluster_variable_of_arc(&a).unwrap();
        assert_eq!(x.denominator().exponents(), &[0, 1, 2]);
        let w = validate_arc(&a).unwrap();
        assert_eq!(w.word, MutationWord(vec![3, 2]));
        assert_eq!(w.position, 2);
    }

    #[test]
    fn initial_arcs() {
        assert_eq!(
            cluster_variable_of_arc(&ArcDescriptor::Initial(1)).unwrap(),
            lp("x1")
        );
        assert_eq!(
            validate_arc(&ArcDescriptor::Initial(3)).unwrap().word,
            MutationWord::default()
        );
        let r = numerator_matching_check(&ArcDescriptor::Initial(1)).unwrap();
        assert_eq!(r.matchings, Integer::from(1));
        assert_eq!(r.numerator, Integer::from(1));
    }

    #[test]
    fn golden_numerator() {
        let r = numerator_matching_check(&"3ccw 2cw 3cw".parse().unwrap()).unwrap();
        assert_eq!(r.continued_fraction, "[1,2,3,1]");
        assert_eq!(
            (r.numerator, r.denominator),
            (Integer::from(13), Integer::from(9))
        );
    }
}
