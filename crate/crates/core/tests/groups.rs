use drackn::algebra::{rat, CycNum, Matrix};
use drackn::constructions::{dcff, thas_somma};
use drackn::covers::ArcMatrix;
use drackn::groups::{char_apply, characters_of, regular_expand};

/// The expanded adjacency matrix `A` is block-diagonalized by the character
/// table: with `P[(u,g),(v,k)] = [u=v] χ_k(g)` and `D` the block matrix of
/// the `char_apply` images, `A P = P D`.
fn check_similarity(f: &ArcMatrix) {
    let g = f.group();
    let elements = g.elements();
    let chars = characters_of(g);
    let (n, r) = (f.n(), g.order());
    let order = chars[1].value_order().unwrap();
    let zero = CycNum::zero(order);
    let adjacency = regular_expand(f).to_adjacency();
    let a = Matrix::from_fn(n * r, n * r, |x, y| CycNum::from_rational(order, rat(adjacency[x][y] as i64)));
    let p = Matrix::from_fn(n * r, n * r, |x, y| {
        let (u, gi) = (x / r, x % r);
        let (v, k) = (y / r, y % r);
        if u == v {
            // The trivial character lives in Q; lift it into Q(ζ).
            let value = chars[k].value(&elements[gi]).unwrap();
            if value.order() == order { value } else { CycNum::from_rational(order, value.as_rational().unwrap().clone()) }
        } else {
            zero.clone()
        }
    });
    let blocks: Vec<Matrix<CycNum>> = chars
        .iter()
        .map(|chi| {
            char_apply(f, chi)
                .unwrap()
                .map(|x| if x.order() == order { x.clone() } else { CycNum::from_rational(order, x.as_rational().unwrap().clone()) })
        })
        .collect();
    let d = Matrix::from_fn(n * r, n * r, |x, y| {
        let (u, k) = (x / r, x % r);
        let (v, l) = (y / r, y % r);
        if k == l { blocks[k].get(u, v).clone() } else { zero.clone() }
    });
    assert_eq!(a.mul(&p).unwrap(), p.mul(&d).unwrap());
    // P is invertible, so the spectra agree.
    assert_eq!(p.rank(), n * r);
}

#[test]
fn characters_diagonalize_covers() {
    check_similarity(&thas_somma(3, 2, 1, None).unwrap());
    check_similarity(&dcff(1, 1, None, None).unwrap());
}
