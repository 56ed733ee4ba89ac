use crate::algebra::FiniteField;
use crate::covers::ArcMatrix;
use crate::groups::AbelianGroup;

use super::ConstructionError;

/// Largest `|V|` for which supplied tables are checked exhaustively.
const EXHAUSTIVE_LIMIT: usize = 1 << 10;

/// `GF(2^k)` with elements as bit masks (bit `i` is the coefficient of `x^i`).
#[derive(Debug, Clone)]
struct BinaryField {
    k: u32,
    modulus: u32,
}

impl BinaryField {
    fn new(k: u32) -> Result<Self, ConstructionError> {
        let field = FiniteField::binary(k)?;
        let modulus = field.modulus().iter().rev().fold(0u32, |acc, &c| acc << 1 | c);
        Ok(BinaryField { k, modulus })
    }

    fn size(&self) -> u32 {
        1 << self.k
    }

    fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let mut acc = 0;
        let top = 1 << self.k;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u32) -> u32 {
        self.pow(a, self.size() as u64 - 2)
    }
}

/// A skew product on `V = GF(2^{td})`, viewed as a `d`-dimensional space
/// over its subfield `GF(2^t)`.
#[derive(Debug, Clone)]
pub struct SkewProduct {
    t: u32,
    d: u32,
    field: BinaryField,
    table: Option<Vec<u32>>,
}

impl SkewProduct {
    /// `x * y = x · y^{2^t}`. Bilinear over `GF(2^t)`; `x * x = x^{2^t+1}` is
    /// a bijection and `x * y = y * x` exactly for dependent pairs when `d`
    /// is odd.
    pub fn default_for(t: u32, d: u32) -> Result<Self, ConstructionError> {
        check_dimensions(t, d)?;
        let product = SkewProduct { t, d, field: BinaryField::new(t * d)?, table: None };
        product.validate()?;
        Ok(product)
    }

    /// A product given by its table: `table[x·|V| + y] = x * y`, elements of
    /// `V` written as bit masks over the pinned modulus.
    pub fn from_table(t: u32, d: u32, table: Vec<u32>) -> Result<Self, ConstructionError> {
        check_dimensions(t, d)?;
        let field = BinaryField::new(t * d)?;
        let size = field.size() as usize;
        if size > EXHAUSTIVE_LIMIT {
            return Err(ConstructionError::InvalidSkew(format!(
                "tables are only accepted for |V| <= {EXHAUSTIVE_LIMIT}"
            )));
        }
        if table.len() != size * size || table.iter().any(|&x| x as usize >= size) {
            return Err(ConstructionError::InvalidSkew(format!("expected {size}x{size} entries below {size}")));
        }
        let product = SkewProduct { t, d, field, table: Some(table) };
        product.validate()?;
        Ok(product)
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `|V|`.
    pub fn size(&self) -> usize {
        self.field.size() as usize
    }

    pub fn apply(&self, x: u32, y: u32) -> u32 {
        match &self.table {
            Some(table) => table[x as usize * self.size() + y as usize],
            None => self.field.mul(x, self.field.pow(y, 1 << self.t)),
        }
    }

    /// The subfield `GF(2^t)` inside `V`, sorted.
    fn subfield(&self) -> Vec<u32> {
        let q = 1u64 << self.t;
        (0..self.field.size()).filter(|&x| self.field.pow(x, q) == x).collect()
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let size = self.field.size();
        let bad = |msg: &str| Err(ConstructionError::InvalidSkew(msg.to_string()));
        let mut squares = vec![false; size as usize];
        for x in 0..size {
            let sq = self.apply(x, x) as usize;
            if std::mem::replace(&mut squares[sq], true) {
                return bad("x -> x*x is not a bijection");
            }
        }
        if size as usize > EXHAUSTIVE_LIMIT {
            // The default rule is proved bilinear and skew; only the
            // bijectivity above depends on d.
            return Ok(());
        }
        let basis: Vec<u32> = (0..self.field.k).map(|i| 1 << i).collect();
        for x in 0..size {
            for y in 0..size {
                let xy = self.apply(x, y);
                for &b in &basis {
                    if self.apply(x ^ b, y) != xy ^ self.apply(b, y) || self.apply(x, y ^ b) != xy ^ self.apply(x, b) {
                        return bad("not additive");
                    }
                }
            }
        }
        let subfield = self.subfield();
        // A primitive element of the subfield generates it as a ring.
        let q = subfield.len() as u64;
        let lambda = subfield
            .iter()
            .copied()
            .find(|&g| g != 0 && (1..q - 1).all(|e| self.field.pow(g, e) != 1))
            .unwrap_or(1);
        let mut in_subfield = vec![false; size as usize];
        for &s in &subfield {
            in_subfield[s as usize] = true;
        }
        for x in 0..size {
            let x_inv = if x == 0 { 0 } else { self.field.inv(x) };
            for y in 0..size {
                let xy = self.apply(x, y);
                let scaled = self.field.mul(lambda, xy);
                if self.apply(self.field.mul(lambda, x), y) != scaled || self.apply(x, self.field.mul(lambda, y)) != scaled {
                    return bad("not linear over the subfield");
                }
                let dependent = x == 0 || in_subfield[self.field.mul(y, x_inv) as usize];
                if (xy == self.apply(y, x)) != dependent {
                    return bad("x*y = y*x does not characterise dependent pairs");
                }
            }
        }
        Ok(())
    }
}

fn check_dimensions(t: u32, d: u32) -> Result<(), ConstructionError> {
    if t == 0 || d == 0 {
        return Err(ConstructionError::Dimensions(format!("need t, d >= 1, got t={t}, d={d}")));
    }
    if d.is_multiple_of(2) {
        return Err(ConstructionError::EvenDimension(d));
    }
    if t * d > 24 {
        return Err(ConstructionError::Dimensions(format!("t*d = {} is too large", t * d)));
    }
    Ok(())
}

/// Symmetric latin square of order `2^t`; entry `k` names the `k`-th element
/// of the subfield `GF(2^t)` of `V` in increasing bit-mask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    t: u32,
    entries: Vec<Vec<u32>>,
}

impl LatinSquare {
    pub fn new(t: u32, entries: Vec<Vec<u32>>) -> Result<Self, ConstructionError> {
        let q = 1usize << t;
        let bad = |msg: String| Err(ConstructionError::InvalidLatin(msg));
        if entries.len() != q || entries.iter().any(|row| row.len() != q) {
            return bad(format!("expected {q}x{q} entries"));
        }
        for (i, row) in entries.iter().enumerate() {
            let mut seen = vec![false; q];
            for (j, &x) in row.iter().enumerate() {
                if x as usize >= q || std::mem::replace(&mut seen[x as usize], true) {
                    return bad(format!("row {} is not a permutation", i + 1));
                }
                if entries[j][i] != x {
                    return bad(format!("not symmetric at ({},{})", i + 1, j + 1));
                }
            }
        }
        Ok(LatinSquare { t, entries })
    }

    /// Addition table of `GF(2^t)`. Any subfield of `V` is closed under XOR
    /// of bit masks, so this is computed on the subfield listing.
    fn addition(t: u32, subfield: &[u32]) -> Self {
        let entries = subfield
            .iter()
            .map(|&a| {
                subfield
                    .iter()
                    .map(|&b| subfield.iter().position(|&s| s == a ^ b).expect("subfield is additive") as u32)
                    .collect()
            })
            .collect();
        LatinSquare { t, entries }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }
}

/// Cover on the fibres `V x GF(2^t)` (fibre `(a, i)` has index `a·2^t + i`)
/// over `V ≅ (Z/2)^{td}` with
/// `f((a,i),(b,j)) = a*b + b*a + s_ij (a*a + b*b)`.
pub fn dcff(
    t: u32,
    d: u32,
    skew: Option<&SkewProduct>,
    latin: Option<&LatinSquare>,
) -> Result<ArcMatrix, ConstructionError> {
    check_dimensions(t, d)?;
    let default;
    let skew = match skew {
        Some(s) if (s.t, s.d) == (t, d) => s,
        Some(s) => {
            return Err(ConstructionError::InvalidSkew(format!("product is for t={}, d={}", s.t, s.d)));
        }
        None => {
            default = SkewProduct::default_for(t, d)?;
            &default
        }
    };
    let subfield = skew.subfield();
    let default_latin;
    let latin = match latin {
        Some(l) if l.t == t => l,
        Some(l) => return Err(ConstructionError::InvalidLatin(format!("square is for t={}", l.t))),
        None => {
            default_latin = LatinSquare::addition(t, &subfield);
            &default_latin
        }
    };
    let q = 1usize << t;
    let k = (t * d) as usize;
    let group = AbelianGroup::elementary(2, k)?;
    let field = &skew.field;
    Ok(ArcMatrix::from_fn(skew.size() * q, &group, |u, v| {
        let (a, i) = ((u / q) as u32, u % q);
        let (b, j) = ((v / q) as u32, v % q);
        let s = subfield[latin.entries[i][j] as usize];
        let value = skew.apply(a, b) ^ skew.apply(b, a) ^ field.mul(s, skew.apply(a, a) ^ skew.apply(b, b));
        (0..k).map(|bit| value >> bit & 1).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_field_matches_table_modulus() {
        let f = BinaryField::new(3).unwrap();
        assert_eq!(f.modulus, 0b1011);
        // α · α² = α³ = α + 1
        assert_eq!(f.mul(0b010, 0b100), 0b011);
        for a in 1..8 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn default_products_validate() {
        for (t, d) in [(1, 1), (1, 3), (1, 5), (2, 3), (3, 1)] {
            let s = SkewProduct::default_for(t, d).unwrap();
            assert_eq!(s.subfield().len(), 1 << t);
        }
        assert_eq!(SkewProduct::default_for(1, 2).unwrap_err(), ConstructionError::EvenDimension(2));
    }

    #[test]
    fn symmetric_product_rejected() {
        // x*y = xy commutes everywhere.
        let f = BinaryField::new(3).unwrap();
        let table = (0..64).map(|i| f.mul(i / 8, i % 8)).collect();
        assert!(SkewProduct::from_table(1, 3, table).is_err());
    }

    #[test]
    fn latin_square_checks() {
        assert!(LatinSquare::new(1, vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(LatinSquare::new(1, vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(LatinSquare::new(2, vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![2, 3, 0, 1], vec![3, 0, 1, 2]]).is_ok());
        assert!(LatinSquare::new(2, vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 1, 0], vec![3, 2, 0, 1]]).is_ok());
    }

    #[test]
    fn dcff_shapes() {
        let f = dcff(1, 3, None, None).unwrap();
        assert_eq!((f.n(), f.r()), (16, 8));
        crate::covers::validate_cover(&f).unwrap();
        assert!(matches!(dcff(1, 2, None, None), Err(ConstructionError::EvenDimension(2))));
    }
}
