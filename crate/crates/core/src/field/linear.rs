use std::collections::VecDeque;

use super::{Field, Scalar, VecElem};
use crate::engine::WeightedAutomaton;
use crate::moore::Word;

/// Incrementally maintained row-echelon basis of a subspace of `F^n`.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection along the stored pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &(&factor * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` if it is independent of the stored vectors; reports whether it was.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (r, x) in row.iter_mut().zip(&v) {
                    *r = &*r - &(&factor * x);
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Words whose value vectors span the observation space, with every
/// state's values on those words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationBasis {
    pub words: Vec<Word>,
    /// `rows[q][j]` is the weight state `q` assigns to `words[j]`.
    pub rows: Vec<Vec<Scalar>>,
}

/// The observation basis of a weighted automaton's states.
///
/// Starting from the output vector, columns `v_aw = M_a v_w` are explored
/// breadth-first in alphabet order and kept when independent of the columns
/// kept so far. Two states accept the same weighted language iff their rows
/// are equal.
pub fn observation_basis(w: &WeightedAutomaton) -> ObservationBasis {
    basis_of(w.monad().field(), w.outputs(), w.transitions())
}

pub(crate) fn basis_of(
    field: Field,
    outputs: &[Scalar],
    trans: &[Vec<VecElem>],
) -> ObservationBasis {
    let n = outputs.len();
    let symbols = trans.first().map_or(0, Vec::len);
    let mut echelon = Echelon::new();
    let mut words = Vec::new();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut queue = VecDeque::from([(Word::empty(), outputs.to_vec())]);
    while let Some((word, column)) = queue.pop_front() {
        if !echelon.insert(&column) {
            continue;
        }
        for a in 0..symbols {
            let next: Vec<Scalar> = trans
                .iter()
                .map(|row| {
                    row[a]
                        .terms()
                        .fold(field.zero(), |acc, (t, c)| &acc + &(c * &column[t]))
                })
                .collect();
            let mut w = vec![a];
            w.extend_from_slice(word.symbols());
            queue.push_back((Word(w), next));
        }
        words.push(word);
        columns.push(column);
    }
    let rows = (0..n)
        .map(|q| columns.iter().map(|col| col[q].clone()).collect())
        .collect();
    ObservationBasis { words, rows }
}

/// Solves `Σ_j x_j · columns[j] = rhs`.
///
/// Unknowns are eliminated in index order, each pivoting on the lowest
/// available equation; free unknowns are set to zero.
pub fn solve(field: Field, columns: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let m = columns.len();
    let d = rhs.len();
    let mut a: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for j in 0..m {
        let Some(p) = (next..d).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(next, p);
        let inv = a[next][j].recip();
        for x in a[next].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..d {
            if i != next && !a[i][j].is_zero() {
                let factor = a[i][j].clone();
                let pivot_row = a[next].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push((next, j));
        next += 1;
    }
    if a[next..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); m];
    for (row, j) in pivots {
        x[j] = a[row][m].clone();
    }
    Some(x)
}

/// Expresses `rows[r]` over the other rows, indexed by position among the
/// remaining generators.
pub fn vec_redundancy(field: Field, rows: &[Vec<Scalar>], r: usize) -> Option<VecElem> {
    let others: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, row)| row.clone())
        .collect();
    solve(field, &others, &rows[r]).map(VecElem::from_terms_dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = Echelon::new();
        assert!(e.insert(&[q(1), q(2)]));
        assert!(!e.insert(&[q(2), q(4)]));
        assert!(e.insert(&[q(0), q(1)]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[q(5), q(7)]));
    }

    #[test]
    fn solve_sets_free_unknowns_to_zero() {
        let cols = vec![vec![q(1), q(0)], vec![q(2), q(0)], vec![q(0), q(1)]];
        let x = solve(Field::Rational, &cols, &[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(3), q(0), q(4)]);
        assert!(solve(Field::Rational, &cols[..2], &[q(1), q(1)]).is_none());
    }

    #[test]
    fn zero_row_is_an_empty_combination() {
        let rows = vec![vec![q(1)], vec![q(0)]];
        assert_eq!(
            vec_redundancy(Field::Rational, &rows, 1),
            Some(VecElem::zero())
        );
        assert_eq!(vec_redundancy(Field::Rational, &rows, 0), None);
    }

    #[test]
    fn gf2_solving() {
        let f = Field::Prime(2);
        let one = f.one();
        let zero = f.zero();
        let cols = vec![
            vec![one.clone(), zero.clone()],
            vec![one.clone(), one.clone()],
        ];
        let x = solve(f, &cols, &[zero.clone(), one.clone()]).unwrap();
        assert_eq!(x, vec![one.clone(), one]);
    }
}
