//! 2x2x2 hypermatrices over the rationals: the group action, the
//! hyperdeterminant, flattening ranks and the seven orbits.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::localcoh::OrbitId;

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn parse_rational(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A rational entry in JSON: a `"p/q"` string or an integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Int(i64),
    Text(String),
}

impl RawEntry {
    fn into_rational(self) -> Result<Q> {
        match self {
            RawEntry::Int(n) => Ok(q(n)),
            RawEntry::Text(s) => parse_rational(&s),
        }
    }
}

/// `x[i][j][k]` is the coefficient of `a_i (x) b_j (x) c_k` (indices from 0 here).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor222 {
    pub x: [[[Q; 2]; 2]; 2],
}

impl Tensor222 {
    pub fn zero() -> Self {
        Self { x: std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()))) }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> Q) -> Self {
        Self { x: std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| f(i, j, k)))) }
    }

    pub fn from_integers(x: [[[i64; 2]; 2]; 2]) -> Self {
        Self::from_fn(|i, j, k| q(x[i][j][k]))
    }

    /// Sum of basis tensors `e_ijk`, with 1-based indices.
    pub fn basis_sum(terms: &[(usize, usize, usize)]) -> Self {
        let mut t = Self::zero();
        for &(i, j, k) in terms {
            t.x[i - 1][j - 1][k - 1] += Q::one();
        }
        t
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.x[i][j][k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|x| x.is_zero())
    }

    /// Entries in the order `x111, x112, x121, x122, x211, ...`.
    pub fn entries(&self) -> Vec<Q> {
        self.x.iter().flatten().flatten().cloned().collect()
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The three 2x4 flattenings along A, B and C.
    pub fn flattenings(&self) -> [Vec<Vec<Q>>; 3] {
        let idx = [0, 1];
        let along = |axis: usize| -> Vec<Vec<Q>> {
            idx.iter()
                .map(|&p| {
                    let mut row = Vec::with_capacity(4);
                    for &u in &idx {
                        for &v in &idx {
                            let (i, j, k) = match axis {
                                0 => (p, u, v),
                                1 => (u, p, v),
                                _ => (u, v, p),
                            };
                            row.push(self.x[i][j][k].clone());
                        }
                    }
                    row
                })
                .collect()
        };
        [along(0), along(1), along(2)]
    }
}

impl Serialize for Tensor222 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let nested: Vec<Vec<Vec<String>>> = self
            .x
            .iter()
            .map(|a| a.iter().map(|b| b.iter().map(format_rational).collect()).collect())
            .collect();
        nested.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tensor222 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: [[[RawEntry; 2]; 2]; 2] = Deserialize::deserialize(deserializer)?;
        let mut t = Tensor222::zero();
        for (i, a) in raw.into_iter().enumerate() {
            for (j, b) in a.into_iter().enumerate() {
                for (k, c) in b.into_iter().enumerate() {
                    t.x[i][j][k] = c.into_rational().map_err(serde::de::Error::custom)?;
                }
            }
        }
        Ok(t)
    }
}

impl fmt::Display for Tensor222 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&s)
    }
}

pub type Mat2 = [[Q; 2]; 2];

pub fn mat2(m: [[i64; 2]; 2]) -> Mat2 {
    std::array::from_fn(|r| std::array::from_fn(|c| q(m[r][c])))
}

pub fn det2(m: &Mat2) -> Q {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn identity2() -> Mat2 {
    mat2([[1, 0], [0, 1]])
}

/// `(X, Y, Z)` in `GL(A) x GL(B) x GL(C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub x: Mat2,
    pub y: Mat2,
    pub z: Mat2,
}

impl GroupElement {
    pub fn new(x: Mat2, y: Mat2, z: Mat2) -> Result<Self> {
        for (name, m) in [("X", &x), ("Y", &y), ("Z", &z)] {
            if det2(m).is_zero() {
                return Err(Error::SingularMatrix(name));
            }
        }
        Ok(Self { x, y, z })
    }

    pub fn identity() -> Self {
        Self { x: identity2(), y: identity2(), z: identity2() }
    }

    /// `det X * det Y * det Z`.
    pub fn det_product(&self) -> Q {
        det2(&self.x) * det2(&self.y) * det2(&self.z)
    }

    /// `t'_ijk = sum X_ii' Y_jj' Z_kk' t_i'j'k'`, one factor at a time.
    pub fn act(&self, t: &Tensor222) -> Tensor222 {
        let a = apply_on_axis(&self.x, t, 0);
        let b = apply_on_axis(&self.y, &a, 1);
        apply_on_axis(&self.z, &b, 2)
    }

    /// The same action through the 8x8 matrix `X (x) Y (x) Z`.
    pub fn act_kronecker(&self, t: &Tensor222) -> Tensor222 {
        let v = t.entries();
        Tensor222::from_fn(|i, j, k| {
            let mut sum = Q::zero();
            for (col, entry) in v.iter().enumerate() {
                let (ip, jp, kp) = (col >> 2, (col >> 1) & 1, col & 1);
                sum += &self.x[i][ip] * &self.y[j][jp] * &self.z[k][kp] * entry;
            }
            sum
        })
    }
}

#[allow(clippy::needless_range_loop)]
fn apply_on_axis(m: &Mat2, t: &Tensor222, axis: usize) -> Tensor222 {
    Tensor222::from_fn(|i, j, k| {
        let mut sum = Q::zero();
        for p in 0..2 {
            let (coeff, entry) = match axis {
                0 => (&m[i][p], t.get(p, j, k)),
                1 => (&m[j][p], t.get(i, p, k)),
                _ => (&m[k][p], t.get(i, j, p)),
            };
            sum += coeff * entry;
        }
        sum
    })
}

/// Cayley's hyperdeterminant, term by term.
pub fn hyperdet(t: &Tensor222) -> Q {
    let x = |i: usize, j: usize, k: usize| t.get(i - 1, j - 1, k - 1).clone();
    let sq = |a: Q| &a * &a;
    let four = |a: Q, b: Q, c: Q, d: Q| a * b * c * d;
    sq(x(1, 1, 1)) * sq(x(2, 2, 2))
        + sq(x(1, 1, 2)) * sq(x(2, 2, 1))
        + sq(x(1, 2, 1)) * sq(x(2, 1, 2))
        + sq(x(2, 1, 1)) * sq(x(1, 2, 2))
        - q(2) * four(x(1, 1, 1), x(1, 1, 2), x(2, 2, 1), x(2, 2, 2))
        - q(2) * four(x(1, 1, 1), x(1, 2, 1), x(2, 1, 2), x(2, 2, 2))
        - q(2) * four(x(1, 1, 1), x(1, 2, 2), x(2, 1, 1), x(2, 2, 2))
        - q(2) * four(x(1, 1, 2), x(1, 2, 1), x(2, 1, 2), x(2, 2, 1))
        - q(2) * four(x(1, 1, 2), x(1, 2, 2), x(2, 2, 1), x(2, 1, 1))
        - q(2) * four(x(1, 2, 1), x(1, 2, 2), x(2, 1, 2), x(2, 1, 1))
        + q(4) * four(x(1, 1, 1), x(1, 2, 2), x(2, 1, 2), x(2, 2, 1))
        + q(4) * four(x(1, 1, 2), x(1, 2, 1), x(2, 1, 1), x(2, 2, 2))
}

pub fn flattening_ranks(t: &Tensor222) -> (usize, usize, usize) {
    let [a, b, c] = t.flattenings();
    (rank(&a), rank(&b), rank(&c))
}

pub fn classify_orbit(t: &Tensor222) -> Result<OrbitId> {
    if t.is_zero() {
        return Ok(OrbitId::O0);
    }
    let ranks = flattening_ranks(t);
    match ranks {
        (1, 1, 1) => Ok(OrbitId::O1),
        (1, 2, 2) => Ok(OrbitId::O122),
        (2, 1, 2) => Ok(OrbitId::O212),
        (2, 2, 1) => Ok(OrbitId::O221),
        (2, 2, 2) if hyperdet(t).is_zero() => Ok(OrbitId::O5),
        (2, 2, 2) => Ok(OrbitId::O6),
        other => Err(Error::Internal(format!("flattening ranks {other:?} of a nonzero tensor {t}"))),
    }
}

/// Rank of the 12x8 matrix of the infinitesimal action of `gl2 x gl2 x gl2` at `t`.
pub fn orbit_dim(t: &Tensor222) -> usize {
    let mut rows = Vec::with_capacity(12);
    for axis in 0..3 {
        for p in 0..2 {
            for r in 0..2 {
                let mut e = mat2([[0, 0], [0, 0]]);
                e[p][r] = Q::one();
                rows.push(apply_on_axis(&e, t, axis).entries());
            }
        }
    }
    rank(&rows)
}

/// The listed representative of each orbit.
pub fn representative(o: OrbitId) -> Tensor222 {
    let terms: &[(usize, usize, usize)] = match o {
        OrbitId::O0 => &[],
        OrbitId::O1 => &[(1, 1, 1)],
        OrbitId::O122 => &[(1, 1, 1), (1, 2, 2)],
        OrbitId::O212 => &[(1, 1, 1), (2, 1, 2)],
        OrbitId::O221 => &[(1, 1, 1), (2, 2, 1)],
        OrbitId::O5 => &[(1, 1, 1), (1, 2, 2), (2, 1, 2)],
        OrbitId::O6 => &[(1, 1, 1), (2, 2, 2)],
    };
    Tensor222::basis_sum(terms)
}

fn random_int_tensor(rng: &mut ChaCha8Rng) -> Tensor222 {
    Tensor222::from_fn(|_, _, _| q(rng.gen_range(-3..=3)))
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let m = mat2([[rng.gen_range(-3..=3), rng.gen_range(-3..=3)], [rng.gen_range(-3..=3), rng.gen_range(-3..=3)]]);
        if !det2(&m).is_zero() {
            return m;
        }
    }
}

pub fn random_group_element(rng: &mut ChaCha8Rng) -> GroupElement {
    GroupElement { x: random_invertible(rng), y: random_invertible(rng), z: random_invertible(rng) }
}

/// A nonzero rational `p/q` with small numerator and denominator.
fn random_unit(rng: &mut ChaCha8Rng) -> Q {
    let num = loop {
        let n: i64 = rng.gen_range(-5..=5);
        if n != 0 {
            break n;
        }
    };
    Q::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=4)))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    Q::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4)))
}

/// Sample tensors spread over every orbit: random integer tensors
/// alternate with random translates of the representatives.
fn random_tensor(rng: &mut ChaCha8Rng, n: usize) -> Tensor222 {
    if n.is_multiple_of(2) {
        random_int_tensor(rng)
    } else {
        let o = OrbitId::ALL[rng.gen_range(0..OrbitId::ALL.len())];
        random_group_element(rng).act(&representative(o))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledCheck {
    pub name: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub failures: usize,
}

impl SampledCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.samples > 0
    }
}

/// `h(g.t) = (det X det Y det Z)^2 h(t)`.
pub fn check_equivariance(seed: u64, samples: usize) -> SampledCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for n in 0..samples {
        let g = random_group_element(&mut rng);
        let t = random_tensor(&mut rng, n);
        let d = g.det_product();
        if hyperdet(&g.act(&t)) != &d * &d * hyperdet(&t) {
            failures += 1;
        }
    }
    SampledCheck { name: "hyperdeterminant equivariance", seed, samples, failures }
}

/// `classify_orbit(g.t) = classify_orbit(t)` and the same for `orbit_dim`.
pub fn check_orbit_constancy(seed: u64, samples: usize) -> SampledCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for n in 0..samples {
        let g = random_group_element(&mut rng);
        let t = random_tensor(&mut rng, n);
        let moved = g.act(&t);
        let same = match (classify_orbit(&t), classify_orbit(&moved)) {
            (Ok(a), Ok(b)) => a == b && orbit_dim(&t) == orbit_dim(&moved),
            _ => false,
        };
        if !same {
            failures += 1;
        }
    }
    SampledCheck { name: "orbit constancy", seed, samples, failures }
}

/// The four equations cutting out the isotropy of `e111 + e122 + e212`
/// once `x21 = y21 = z12 = 0`.
pub fn o5_isotropy_equations(g: &GroupElement) -> [Q; 4] {
    let (x, y, z) = (&g.x, &g.y, &g.z);
    let one = Q::one();
    [
        &x[0][0] * &y[0][0] * &z[0][0] - &one,
        &x[0][0] * &y[1][1] * &z[1][1] - &one,
        &x[1][1] * &y[0][0] * &z[1][1] - &one,
        &x[0][0] * &y[0][0] * &z[1][0] + &x[0][0] * &y[0][1] * &z[1][1] + &x[0][1] * &y[0][0] * &z[1][1],
    ]
}

/// A point of the O5 isotropy group, from free `x11, y11, z22` (nonzero) and `x12, y12`.
pub fn o5_isotropy_point(x11: Q, y11: Q, z22: Q, x12: Q, y12: Q) -> GroupElement {
    let z11 = (&x11 * &y11).recip();
    let y22 = (&x11 * &z22).recip();
    let x22 = (&y11 * &z22).recip();
    let z21 = -(&x11 * &y12 * &z22 + &x12 * &y11 * &z22) / (&x11 * &y11);
    GroupElement {
        x: [[x11, x12], [Q::zero(), x22]],
        y: [[y11, y12], [Q::zero(), y22]],
        z: [[z11, Q::zero()], [z21, z22]],
    }
}

fn diagonal_element(x11: Q, y11: Q, x22: Q, y22: Q) -> GroupElement {
    let z11 = (&x11 * &y11).recip();
    let z22 = (&x22 * &y22).recip();
    GroupElement {
        x: [[x11, Q::zero()], [Q::zero(), x22]],
        y: [[y11, Q::zero()], [Q::zero(), y22]],
        z: [[z11, Q::zero()], [Q::zero(), z22]],
    }
}

fn antidiagonal_element(x12: Q, y12: Q, x21: Q, y21: Q) -> GroupElement {
    let z12 = (&x12 * &y12).recip();
    let z21 = (&x21 * &y21).recip();
    GroupElement {
        x: [[Q::zero(), x12], [x21, Q::zero()]],
        y: [[Q::zero(), y12], [y21, Q::zero()]],
        z: [[Q::zero(), z12], [z21, Q::zero()]],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub seed: u64,
    pub checks: Vec<SampledCheck>,
}

impl IsotropyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SampledCheck::passed)
    }
}

/// Sampled membership checks for the isotropy groups of the O6 and O5 representatives,
/// plus agreement of the two implementations of the action.
pub fn isotropy_spot_checks(seed: u64, samples: usize) -> IsotropyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v6 = representative(OrbitId::O6);
    let v5 = representative(OrbitId::O5);
    let mut checks = Vec::new();
    let record = |name, results: Vec<bool>| SampledCheck {
        name,
        seed,
        samples: results.len(),
        failures: results.iter().filter(|ok| !**ok).count(),
    };

    let mut diag = vec![diagonal_element(q(2), q(3), q(1), q(1))];
    let mut anti = Vec::new();
    for _ in 0..samples {
        diag.push(diagonal_element(random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng)));
        anti.push(antidiagonal_element(random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng)));
    }
    checks.push(record("O6 isotropy, diagonal component", diag.iter().map(|g| g.act(&v6) == v6).collect()));
    checks.push(record("O6 isotropy, antidiagonal component", anti.iter().map(|g| g.act(&v6) == v6).collect()));

    let mut o5 = vec![GroupElement::identity()];
    for _ in 0..samples {
        o5.push(o5_isotropy_point(
            random_unit(&mut rng),
            random_unit(&mut rng),
            random_unit(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        ));
    }
    checks.push(record(
        "O5 isotropy equations",
        o5.iter().map(|g| o5_isotropy_equations(g).iter().all(Zero::is_zero) && g.act(&v5) == v5).collect(),
    ));

    let mut agree = Vec::new();
    for n in 0..samples {
        let g = random_group_element(&mut rng);
        let t = random_tensor(&mut rng, n);
        agree.push(g.act(&t) == g.act_kronecker(&t) && GroupElement::identity().act(&t) == t);
    }
    checks.push(record("action computed two ways", agree));

    IsotropyReport { seed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperdet_examples() {
        assert_eq!(hyperdet(&representative(OrbitId::O6)), q(1));
        assert_eq!(hyperdet(&representative(OrbitId::O5)), q(0));
        assert_eq!(hyperdet(&Tensor222::zero()), q(0));
    }

    #[test]
    fn flattening_examples() {
        assert_eq!(flattening_ranks(&representative(OrbitId::O1)), (1, 1, 1));
        assert_eq!(flattening_ranks(&representative(OrbitId::O122)), (1, 2, 2));
        assert_eq!(flattening_ranks(&representative(OrbitId::O6)), (2, 2, 2));
    }

    #[test]
    fn representatives_classify_and_have_the_right_dimension() {
        for o in OrbitId::ALL {
            let t = representative(o);
            assert_eq!(classify_orbit(&t).unwrap(), o);
            assert_eq!(orbit_dim(&t) as u32, o.dim(), "{o}");
        }
    }

    #[test]
    fn generic_integer_tensor_is_in_the_open_orbit() {
        let t = Tensor222::from_integers([[[1, 2], [3, 5]], [[7, 11], [13, 17]]]);
        assert_ne!(hyperdet(&t), q(0));
        assert_eq!(classify_orbit(&t).unwrap(), OrbitId::O6);
    }

    #[test]
    fn sampled_invariants() {
        assert!(check_equivariance(7, 100).passed());
        assert!(check_orbit_constancy(7, 100).passed());
        let report = isotropy_spot_checks(7, 20);
        assert!(report.passed(), "{report:?}");
        assert!(report.checks.iter().all(|c| c.samples >= 20));
    }

    #[test]
    fn spot_check_examples() {
        let v6 = representative(OrbitId::O6);
        let g = GroupElement::new(mat2([[2, 0], [0, 1]]), mat2([[3, 0], [0, 1]]), [[Q::new(1.into(), 6.into()), q(0)], [q(0), q(1)]]).unwrap();
        assert_eq!(g.act(&v6), v6);
        let t = Tensor222::from_integers([[[1, -2], [0, 3]], [[4, 0], [-1, 2]]]);
        assert_eq!(GroupElement::identity().act(&t), t);
    }

    #[test]
    fn json_round_trip() {
        let t = Tensor222::parse_json(r#"[[["1/2", "0"], [3, "-4"]], [["0", "0"], ["7/3", 1]]]"#).unwrap();
        assert_eq!(t.get(0, 0, 0), &Q::new(1.into(), 2.into()));
        assert_eq!(t.get(1, 1, 0), &Q::new(7.into(), 3.into()));
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, r#"[[["1/2","0"],["3","-4"]],[["0","0"],["7/3","1"]]]"#);
        assert_eq!(Tensor222::parse_json(&text).unwrap(), t);
        assert!(Tensor222::parse_json(r#"[[["1/0","0"],["0","0"]],[["0","0"],["0","0"]]]"#).is_err());
        assert!(Tensor222::parse_json("[1, 2]").is_err());
    }

    #[test]
    fn singular_elements_are_rejected() {
        assert!(GroupElement::new(mat2([[1, 2], [2, 4]]), identity2(), identity2()).is_err());
    }
}
