//! Weights of `GL_2` and of `GL_2 x GL_2 x GL_2`.
//!
//! A [`Weight2`] `(a, b)` indexes the Schur functor `S_(a,b)` when `a >= b`.
//! Arithmetic is plain `i64`; the workspace builds with overflow checks in
//! every profile so an out-of-range shift panics instead of wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Weyl vector of `GL_2` used by Bott normalization.
const RHO: (i64, i64) = (1, 0);

/// Entries of `det(V)` on each factor: `V = A (x) B (x) C` has `det(V) = S_(4,4)` on each.
pub const DET_V_SHIFT: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Weight2 {
    pub a: i64,
    pub b: i64,
}

impl Weight2 {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// `(k, k)`, the `k`-th power of the determinant.
    pub const fn det_power(k: i64) -> Self {
        Self { a: k, b: k }
    }

    pub fn is_dominant(self) -> bool {
        self.a >= self.b
    }

    /// `|w| = a + b`.
    pub fn size(self) -> i64 {
        self.a + self.b
    }

    /// The weight of the dual representation: `S_w(W*) = S_dual(w)(W)`.
    pub fn dual(self) -> Self {
        Self::new(-self.b, -self.a)
    }

    /// `w* + (4, 4)`.
    pub fn fourier(self) -> Self {
        Self::new(DET_V_SHIFT - self.b, DET_V_SHIFT - self.a)
    }

    /// Tensor with `det^k`.
    pub fn twist(self, k: i64) -> Self {
        Self::new(self.a + k, self.b + k)
    }

    pub fn shift(self, da: i64, db: i64) -> Self {
        Self::new(self.a + da, self.b + db)
    }

    /// True when the weight is a partition with at most two rows, i.e. `a >= b >= 0`.
    pub fn is_two_row_partition(self) -> bool {
        self.is_dominant() && self.b >= 0
    }

    pub fn bott_normalize(self) -> BottResult {
        let (p1, p2) = (self.a + RHO.0, self.b + RHO.1);
        if p1 > p2 {
            BottResult { sign: 1, normalized: self }
        } else if p1 == p2 {
            BottResult { sign: 0, normalized: self }
        } else {
            BottResult {
                sign: -1,
                normalized: Self::new(p2 - RHO.0, p1 - RHO.1),
            }
        }
    }

    pub fn max_abs(self) -> i64 {
        self.a.abs().max(self.b.abs())
    }
}

impl From<[i64; 2]> for Weight2 {
    fn from([a, b]: [i64; 2]) -> Self {
        Self::new(a, b)
    }
}

impl From<Weight2> for [i64; 2] {
    fn from(w: Weight2) -> Self {
        [w.a, w.b]
    }
}

impl fmt::Display for Weight2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Result of pushing a possibly non-dominant weight through Bott's rule.
///
/// `sign == 0` means the class vanishes and `normalized` carries no meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BottResult {
    pub sign: i8,
    pub normalized: Weight2,
}

/// The index `(lam, mu, nu)` of `S_lam A (x) S_mu B (x) S_nu C`.
///
/// Ordering is lexicographic on the six entries `(lam1, lam2, mu1, mu2, nu1, nu2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Weight2; 3]", into = "[Weight2; 3]")]
pub struct TripleWeight {
    pub lam: Weight2,
    pub mu: Weight2,
    pub nu: Weight2,
}

impl TripleWeight {
    pub const fn new(lam: Weight2, mu: Weight2, nu: Weight2) -> Self {
        Self { lam, mu, nu }
    }

    /// `(a, b)^3`.
    pub const fn uniform(a: i64, b: i64) -> Self {
        let w = Weight2::new(a, b);
        Self::new(w, w, w)
    }

    pub fn from_pairs(pairs: [(i64, i64); 3]) -> Self {
        let [l, m, n] = pairs;
        Self::new(l.into_weight(), m.into_weight(), n.into_weight())
    }

    pub fn factors(&self) -> [Weight2; 3] {
        [self.lam, self.mu, self.nu]
    }

    pub fn map(&self, f: impl Fn(Weight2) -> Weight2) -> Self {
        Self::new(f(self.lam), f(self.mu), f(self.nu))
    }

    pub fn is_dominant(&self) -> bool {
        self.factors().iter().all(|w| w.is_dominant())
    }

    pub fn dual(&self) -> Self {
        self.map(Weight2::dual)
    }

    pub fn fourier(&self) -> Self {
        self.map(Weight2::fourier)
    }

    pub fn twist(&self, k: i64) -> Self {
        self.map(|w| w.twist(k))
    }

    /// Rotate the factors `A -> B -> C -> A`: `(lam, mu, nu) -> (nu, lam, mu)`.
    pub fn rotate(&self) -> Self {
        Self::new(self.nu, self.lam, self.mu)
    }

    pub fn max_abs(&self) -> i64 {
        self.factors().iter().map(|w| w.max_abs()).max().unwrap_or(0)
    }

    pub fn to_six(&self) -> [i64; 6] {
        [self.lam.a, self.lam.b, self.mu.a, self.mu.b, self.nu.a, self.nu.b]
    }

    /// Parse the JSON form `[[a,b],[c,d],[e,f]]`.
    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("weight {text:?}: {e}")))
    }
}

trait IntoWeight {
    fn into_weight(self) -> Weight2;
}

impl IntoWeight for (i64, i64) {
    fn into_weight(self) -> Weight2 {
        Weight2::new(self.0, self.1)
    }
}

impl From<[Weight2; 3]> for TripleWeight {
    fn from([lam, mu, nu]: [Weight2; 3]) -> Self {
        Self::new(lam, mu, nu)
    }
}

impl From<TripleWeight> for [Weight2; 3] {
    fn from(t: TripleWeight) -> Self {
        t.factors()
    }
}

impl fmt::Display for TripleWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.lam, self.mu, self.nu)
    }
}

/// All dominant weights `(a, b)` with `lo <= b <= a <= hi`.
pub fn dominant_in_range(lo: i64, hi: i64) -> impl Iterator<Item = Weight2> + Clone {
    (lo..=hi).flat_map(move |a| (lo..=a).map(move |b| Weight2::new(a, b)))
}

/// All componentwise dominant triples whose six entries lie in `[lo, hi]`,
/// in lexicographic order.
pub fn dominant_triples_in_range(lo: i64, hi: i64) -> Vec<TripleWeight> {
    let singles: Vec<Weight2> = dominant_in_range(lo, hi).collect();
    let mut out = Vec::with_capacity(singles.len().pow(3));
    for &lam in &singles {
        for &mu in &singles {
            for &nu in &singles {
                out.push(TripleWeight::new(lam, mu, nu));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dominance() {
        assert!(Weight2::new(0, 0).is_dominant());
        assert!(Weight2::new(3, 1).is_dominant());
        assert!(!Weight2::new(1, 2).is_dominant());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(Weight2::new(0, 0).dual(), Weight2::new(0, 0));
        assert_eq!(Weight2::new(3, 1).dual(), Weight2::new(-1, -3));
        assert_eq!(Weight2::new(5, -2).dual().dual(), Weight2::new(5, -2));
    }

    #[test]
    fn bott_examples() {
        let r = Weight2::new(4, 0).bott_normalize();
        assert_eq!((r.sign, r.normalized), (1, Weight2::new(4, 0)));
        assert_eq!(Weight2::new(0, 1).bott_normalize().sign, 0);
        let r = Weight2::new(0, 2).bott_normalize();
        assert_eq!((r.sign, r.normalized), (-1, Weight2::new(1, 1)));
    }

    #[test]
    fn fourier_examples() {
        assert_eq!(Weight2::new(0, 0).fourier(), Weight2::new(4, 4));
        assert_eq!(Weight2::new(3, 3).fourier(), Weight2::new(1, 1));
        assert_eq!(Weight2::new(2, 2).fourier(), Weight2::new(2, 2));
        assert_eq!(Weight2::new(3, 1).fourier(), Weight2::new(3, 1));
    }

    #[test]
    fn triple_json_round_trip() {
        let t = TripleWeight::parse_json("[[3,1],[2,2],[2,2]]").unwrap();
        assert_eq!(t, TripleWeight::from_pairs([(3, 1), (2, 2), (2, 2)]));
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[3,1],[2,2],[2,2]]");
        assert!(TripleWeight::parse_json("[[3,1],[2,2]]").is_err());
    }

    #[test]
    fn ordering_is_lexicographic_on_six_entries() {
        let mut v = [
            TripleWeight::from_pairs([(1, 0), (0, 0), (0, 0)]),
            TripleWeight::from_pairs([(0, 0), (1, 1), (0, 0)]),
            TripleWeight::from_pairs([(0, 0), (1, 0), (5, 5)]),
        ];
        v.sort();
        let six: Vec<_> = v.iter().map(|t| t.to_six()).collect();
        let mut sorted = six.clone();
        sorted.sort();
        assert_eq!(six, sorted);
    }

    #[test]
    fn range_enumeration() {
        assert_eq!(dominant_in_range(-2, 6).count(), 45);
        assert_eq!(dominant_triples_in_range(0, 1).len(), 27);
    }

    proptest! {
        #[test]
        fn involutions(a in -1000i64..1000, b in -1000i64..1000) {
            let w = Weight2::new(a, b);
            prop_assert_eq!(w.dual().dual(), w);
            prop_assert_eq!(w.fourier().fourier(), w);
            prop_assert_eq!(w.fourier(), w.dual().twist(4));
        }

        #[test]
        fn bott_sign_zero_only_on_the_wall(a in -1000i64..1000, b in -1000i64..1000) {
            let r = Weight2::new(a, b).bott_normalize();
            prop_assert_eq!(r.sign == 0, b == a + 1);
            if r.sign != 0 {
                prop_assert!(r.normalized.is_dominant());
            }
        }
    }
}
