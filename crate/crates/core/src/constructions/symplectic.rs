use crate::algebra::{gfp_rank, is_prime};
use crate::covers::ArcMatrix;
use crate::groups::{AbelianGroup, Element};

use super::ConstructionError;

/// `B: GF(p)^m x GF(p)^m -> GF(p)^s`, one `m x m` matrix per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingForm {
    p: u32,
    m: usize,
    s: usize,
    matrices: Vec<Vec<Vec<u32>>>,
}

impl AlternatingForm {
    /// Checks that every component is alternating and that `B_a = B(a, ·)`
    /// is onto `GF(p)^s` for every `a ≠ 0`.
    pub fn new(p: u32, m: usize, matrices: Vec<Vec<Vec<u32>>>) -> Result<Self, ConstructionError> {
        if !is_prime(p as u64) {
            return Err(ConstructionError::NotPrime(p));
        }
        let s = matrices.len();
        if s == 0 || m < s {
            return Err(ConstructionError::Dimensions(format!("need m >= s >= 1, got m={m}, s={s}")));
        }
        let matrices: Vec<Vec<Vec<u32>>> = matrices
            .into_iter()
            .map(|mat| mat.into_iter().map(|row| row.into_iter().map(|x| x % p).collect()).collect())
            .collect();
        for (k, mat) in matrices.iter().enumerate() {
            if mat.len() != m || mat.iter().any(|row| row.len() != m) {
                return Err(ConstructionError::Dimensions(format!("component {} is not {m}x{m}", k + 1)));
            }
            for i in 0..m {
                for j in i..m {
                    if (mat[i][j] + mat[j][i]) % p != 0 || (i == j && mat[i][i] != 0) {
                        return Err(ConstructionError::NotSkew { component: k + 1, i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        let form = AlternatingForm { p, m, s, matrices };
        let space = AbelianGroup::elementary(p, m)?;
        for a in space.elements().into_iter().skip(1) {
            let rows: Vec<Vec<u32>> = form
                .matrices
                .iter()
                .map(|mat| (0..m).map(|j| (0..m).map(|i| a[i] * mat[i][j]).sum::<u32>() % p).collect())
                .collect();
            if gfp_rank(&rows, p) < s {
                return Err(ConstructionError::NotSurjective { a });
            }
        }
        Ok(form)
    }

    /// `Σ (v_{2i-1} w_{2i} - v_{2i} w_{2i-1})` on `GF(p)^m`, `m` even.
    pub fn standard(p: u32, m: usize) -> Result<Self, ConstructionError> {
        if m == 0 || m % 2 == 1 {
            return Err(ConstructionError::NeedsForm { m, s: 1 });
        }
        let mut mat = vec![vec![0u32; m]; m];
        for i in (0..m).step_by(2) {
            mat[i][i + 1] = 1;
            mat[i + 1][i] = p - 1;
        }
        AlternatingForm::new(p, m, vec![mat])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn matrices(&self) -> &[Vec<Vec<u32>>] {
        &self.matrices
    }

    pub fn eval(&self, v: &[u32], w: &[u32]) -> Element {
        let p = self.p as u64;
        self.matrices
            .iter()
            .map(|mat| {
                let mut acc = 0u64;
                for (i, &vi) in v.iter().enumerate() {
                    for (j, &wj) in w.iter().enumerate() {
                        acc += vi as u64 * mat[i][j] as u64 * wj as u64;
                    }
                }
                (acc % p) as u32
            })
            .collect()
    }
}

/// Symplectic cover on the `p^m` vectors of `GF(p)^m` (in lexicographic
/// order) over `(Z/p)^s`, with `f(v, w) = B(v, w)`.
pub fn thas_somma(p: u32, m: usize, s: usize, form: Option<&AlternatingForm>) -> Result<ArcMatrix, ConstructionError> {
    if !is_prime(p as u64) {
        return Err(ConstructionError::NotPrime(p));
    }
    if s == 0 || m < s {
        return Err(ConstructionError::Dimensions(format!("need m >= s >= 1, got m={m}, s={s}")));
    }
    let default;
    let form = match form {
        Some(b) => {
            if (b.p, b.m, b.s) != (p, m, s) {
                return Err(ConstructionError::Dimensions(format!(
                    "form has p={}, m={}, s={}",
                    b.p, b.m, b.s
                )));
            }
            b
        }
        None if s == 1 => {
            default = AlternatingForm::standard(p, m)?;
            &default
        }
        None => return Err(ConstructionError::NeedsForm { m, s }),
    };
    let space = AbelianGroup::elementary(p, m)?;
    let vectors = space.elements();
    let group = AbelianGroup::elementary(p, s)?;
    Ok(ArcMatrix::from_fn(vectors.len(), &group, |u, v| form.eval(&vectors[u], &vectors[v])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_form_values() {
        let b = AlternatingForm::standard(3, 2).unwrap();
        assert_eq!(b.eval(&[1, 0], &[0, 1]), vec![1]);
        assert_eq!(b.eval(&[0, 1], &[1, 0]), vec![2]);
        assert_eq!(b.eval(&[2, 1], &[2, 1]), vec![0]);
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(matches!(AlternatingForm::standard(3, 3), Err(ConstructionError::NeedsForm { .. })));
        let degenerate = vec![vec![vec![0, 1, 0], vec![2, 0, 0], vec![0, 0, 0]]];
        assert!(matches!(
            AlternatingForm::new(3, 3, degenerate),
            Err(ConstructionError::NotSurjective { .. })
        ));
        let not_skew = vec![vec![vec![0, 1], vec![1, 0]]];
        assert!(matches!(AlternatingForm::new(3, 2, not_skew), Err(ConstructionError::NotSkew { .. })));
        assert!(matches!(thas_somma(3, 4, 2, None), Err(ConstructionError::NeedsForm { .. })));
    }

    #[test]
    fn arc_law_holds() {
        let f = thas_somma(3, 2, 1, None).unwrap();
        assert_eq!(f.n(), 9);
        crate::covers::validate_cover(&f).unwrap();
    }
}
