//! Enumeration of admissible tableaux with small attached forms.
//!
//! Hermitian rows get every diagonal form with entries in `{1, −1, 2, −2}`
//! (as a multiset). Skew rows get the hyperbolic form over `k` (even
//! multiplicity only) and `u·⟨c_1, …⟩` with `c_i ∈ {±1, ±2}` over a larger
//! D, where `u` is the first imaginary unit.

use crate::error::Result;
use crate::hermitian::HermitianModule;
use crate::scalars::{AlgebraSpec, Coords, Rational, Sign};
use crate::tableaux::{TableauRow, YoungTableau};

const ENTRIES: [i64; 4] = [1, -1, 2, -2];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub epsilon: Sign,
    pub tableau: YoungTableau,
}

/// Partitions of `n` as `(part, multiplicity)` lists, largest part first.
pub fn partitions(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(n: usize, max: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for t in (1..=max.min(n)).rev() {
            for mult in (1..=n / t).rev() {
                acc.push((t, mult));
                go(n - t * mult, t - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing index sequences of length `m` into `0..k`.
fn multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, m: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == m {
            out.push(acc.clone());
            return;
        }
        for i in start..k {
            acc.push(i);
            go(k, m, i, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(k, m, 0, &mut Vec::new(), &mut out);
    out
}

/// The attached forms tried for a row of multiplicity `mult` and sign `eps`.
pub fn form_choices(algebra: &AlgebraSpec, eps: Sign, mult: usize) -> Vec<HermitianModule> {
    let unit = match eps {
        Sign::Plus => Coords::one(),
        Sign::Minus => match algebra.imaginary_unit() {
            Some(u) => u,
            None => {
                return if mult.is_multiple_of(2) {
                    vec![HermitianModule::hyperbolic(algebra, Sign::Minus, mult / 2)]
                } else {
                    Vec::new()
                };
            }
        },
    };
    multisets(ENTRIES.len(), mult)
        .into_iter()
        .filter_map(|idx| {
            let entries: Vec<Coords> =
                idx.iter().map(|&i| unit.scale(&Rational::from_int(ENTRIES[i]))).collect();
            HermitianModule::diagonal(algebra, eps, &entries).ok()
        })
        .collect()
}

fn algebra_tag(a: &AlgebraSpec) -> String {
    match a {
        AlgebraSpec::Field => "k".into(),
        AlgebraSpec::Quadratic { delta } => format!("k(sqrt {delta})"),
        AlgebraSpec::Quaternion { a, b } => format!("({a},{b})"),
    }
}

/// Every admissible tableau over `algebra` with `1 ≤ |d| ≤ max_size`, both signs.
pub fn admissible_tableaux(algebra: &AlgebraSpec, max_size: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        for parts in partitions(n) {
            for epsilon in [Sign::Plus, Sign::Minus] {
                let choices: Vec<Vec<HermitianModule>> = parts
                    .iter()
                    .map(|&(t, mult)| form_choices(algebra, Sign::parity(t - 1) * epsilon, mult))
                    .collect();
                if choices.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut counter = vec![0usize; parts.len()];
                let mut serial = 0;
                loop {
                    let rows = parts
                        .iter()
                        .zip(&counter)
                        .enumerate()
                        .map(|(j, (&(t, _), &c))| TableauRow::new(t, choices[j][c].clone()))
                        .collect::<Result<Vec<_>>>()?;
                    let tableau = YoungTableau::new(algebra.clone(), rows)?;
                    let id = format!(
                        "{}/eps{:+}/{}#{serial:03}",
                        algebra_tag(algebra),
                        epsilon.value(),
                        tableau.label()
                    );
                    out.push(CorpusEntry { id, epsilon, tableau });
                    serial += 1;
                    // odometer over the per-row choices
                    let mut j = 0;
                    while j < counter.len() {
                        counter[j] += 1;
                        if counter[j] < choices[j].len() {
                            break;
                        }
                        counter[j] = 0;
                        j += 1;
                    }
                    if j == counter.len() {
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn small_corpus_is_admissible() {
        let c = admissible_tableaux(&AlgebraSpec::Field, 4).unwrap();
        assert!(!c.is_empty());
        for e in &c {
            assert!(e.tableau.is_admissible(e.epsilon), "{}", e.id);
        }
        // [2,1] is admissible for neither sign over k
        assert!(c.iter().all(|e| e.tableau.partition() != vec![2, 1]));
        let mut ids: Vec<&str> = c.iter().map(|e| e.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), c.len());
    }

    #[test]
    fn skew_rows_over_quadratic() {
        let d = AlgebraSpec::quadratic(Rational::from_int(-1)).unwrap();
        assert_eq!(form_choices(&d, Sign::Minus, 1).len(), 4);
        let c = admissible_tableaux(&d, 3).unwrap();
        assert!(c.iter().any(|e| e.tableau.partition() == vec![2, 1]));
    }
}
