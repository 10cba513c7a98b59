//! Symmetric-group characters over exact integers.
//!
//! Character values come from the Murnaghan-Nakayama rule, implemented on
//! beta-sets (abacus positions) so that removing a border strip of length `k`
//! is "slide one bead down by `k` into an empty slot". Values are memoized per
//! `(shape, cycle type)` in a [`CharacterTable`]; the table is lock-protected
//! and may be shared between threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::Weight2;

pub const DEFAULT_MAX_DEGREE: usize = 16;

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Self(parts))
        } else {
            Err(Error::InvalidPartition(parts.into_iter().map(i64::from).collect()))
        }
    }

    /// Build from a weakly decreasing sequence that may end in zeros.
    pub fn from_padded(parts: &[i64]) -> Result<Self> {
        let trimmed: Vec<i64> = parts.iter().copied().filter(|&p| p != 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) || trimmed.iter().any(|&p| p < 0) {
            return Err(Error::InvalidPartition(parts.to_vec()));
        }
        let parts = trimmed
            .into_iter()
            .map(|p| u32::try_from(p).map_err(|_| Error::InvalidPartition(parts.to_vec())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(parts))
    }

    /// The partition `(a, b)` of a two-row weight with `a >= b >= 0`.
    pub fn from_weight(w: Weight2) -> Result<Self> {
        if !w.is_two_row_partition() {
            return Err(Error::InvalidPartition(vec![w.a, w.b]));
        }
        Self::from_padded(&[w.a, w.b])
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Self {
        let first = self.0.first().copied().unwrap_or(0);
        Self(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// `z_mu = prod_i i^{m_i} m_i!`, the centralizer order of the class of cycle type `self`.
    pub fn centralizer_order(&self) -> BigUint {
        let mut counts: HashMap<u32, u32> = HashMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_default() += 1;
        }
        counts.into_iter().fold(BigUint::one(), |acc, (part, m)| {
            acc * BigUint::from(part).pow(m) * factorial(m as usize)
        })
    }

    fn beta_set(&self) -> Vec<u32> {
        let n = self.0.len() as u32;
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| p + (n - 1 - i as u32))
            .collect()
    }

    fn from_beta_set(mut beta: Vec<u32>) -> Self {
        beta.sort_unstable_by(|x, y| y.cmp(x));
        let n = beta.len() as u32;
        Self(
            beta.iter()
                .enumerate()
                .map(|(i, &b)| b - (n - 1 - i as u32))
                .filter(|&p| p > 0)
                .collect(),
        )
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Self::from_padded(&parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A conjugacy class of `Sigma_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub cycle_type: Partition,
    pub class_size: BigUint,
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All partitions of `d` in ascending lexicographic order.
pub fn partitions(d: usize) -> Vec<Partition> {
    fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in 1..=max_part.min(remaining) {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d as u32, d as u32, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter().map(Partition).collect()
}

pub fn conjugacy_classes(d: usize) -> Vec<ConjClass> {
    let d_fact = factorial(d);
    partitions(d)
        .into_iter()
        .map(|cycle_type| {
            let class_size = &d_fact / cycle_type.centralizer_order();
            ConjClass { cycle_type, class_size }
        })
        .collect()
}

/// Memoized irreducible characters of symmetric groups up to a degree cap.
#[derive(Debug)]
pub struct CharacterTable {
    max_degree: usize,
    memo: RwLock<HashMap<(Partition, Partition), i64>>,
}

impl Default for CharacterTable {
    fn default() -> Self {
        Self::with_max_degree(DEFAULT_MAX_DEGREE)
    }
}

impl CharacterTable {
    pub fn with_max_degree(max_degree: usize) -> Self {
        Self { max_degree, memo: RwLock::new(HashMap::new()) }
    }

    /// Process-wide table with the default cap.
    pub fn global() -> &'static CharacterTable {
        static TABLE: OnceLock<CharacterTable> = OnceLock::new();
        TABLE.get_or_init(CharacterTable::default)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            Err(Error::DegreeCapExceeded { degree: d, cap: self.max_degree })
        } else {
            Ok(())
        }
    }

    /// `chi_lam` evaluated on the class of cycle type `cls`.
    pub fn character_value(&self, lam: &Partition, cls: &Partition) -> Result<i64> {
        if lam.size() != cls.size() {
            return Err(Error::PartitionSizeMismatch);
        }
        self.check_degree(lam.size())?;
        Ok(self.mn(lam, cls))
    }

    fn mn(&self, lam: &Partition, cls: &Partition) -> i64 {
        if cls.is_empty() {
            return 1;
        }
        let key = (lam.clone(), cls.clone());
        if let Some(&v) = self.memo.read().expect("character memo poisoned").get(&key) {
            return v;
        }

        // Strip a border strip of length cls[0]; the rest of the cycle type recurses.
        let k = cls.0[0];
        let rest = Partition(cls.0[1..].to_vec());
        let beta = lam.beta_set();
        let mut value = 0i64;
        for (idx, &x) in beta.iter().enumerate() {
            if x < k || beta.contains(&(x - k)) {
                continue;
            }
            let target = x - k;
            let crossed = beta.iter().filter(|&&y| y > target && y < x).count();
            let mut moved = beta.clone();
            moved[idx] = target;
            let sign = if crossed % 2 == 0 { 1 } else { -1 };
            value += sign * self.mn(&Partition::from_beta_set(moved), &rest);
        }

        self.memo.write().expect("character memo poisoned").insert(key, value);
        value
    }

    /// `dim ([lam] (x) [mu] (x) [nu])^{Sigma_d}`, averaged over conjugacy classes.
    pub fn kron_invariant_dim(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        let d = lam.size();
        if mu.size() != d || nu.size() != d {
            return Err(Error::PartitionSizeMismatch);
        }
        self.check_degree(d)?;
        let mut total = BigInt::zero();
        for class in conjugacy_classes(d) {
            // Products of three characters of Sigma_16 can exceed 2^63; widen first.
            let chi = BigInt::from(self.mn(lam, &class.cycle_type))
                * BigInt::from(self.mn(mu, &class.cycle_type))
                * BigInt::from(self.mn(nu, &class.cycle_type));
            total += BigInt::from(class.class_size) * chi;
        }
        let (quotient, remainder) = total.div_rem(&BigInt::from(factorial(d)));
        if !remainder.is_zero() {
            return Err(Error::Internal(format!(
                "class sum for {lam},{mu},{nu} is not divisible by {d}!"
            )));
        }
        quotient.to_u64().ok_or_else(|| {
            Error::Internal(format!("invariant dimension for {lam},{mu},{nu} is negative"))
        })
    }
}

pub fn character_value(lam: &Partition, cls: &Partition) -> Result<i64> {
    CharacterTable::global().character_value(lam, cls)
}

pub fn kron_invariant_dim(lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    CharacterTable::global().kron_invariant_dim(lam, mu, nu)
}

/// Weyl dimension of `S_w` for `GL_2`: `a - b + 1`.
pub fn schur_dim_gl2(w: Weight2) -> Result<u64> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(w));
    }
    Ok((w.a - w.b + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Hook length formula, independent of the recursion.
    fn hook_dim(lam: &Partition) -> BigUint {
        let conj = lam.conjugate();
        let mut hooks = BigUint::one();
        for (i, &row) in lam.parts().iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts()[j] as usize - i - 1;
                hooks *= BigUint::from(arm + leg + 1);
            }
        }
        factorial(lam.size()) / hooks
    }

    #[test]
    fn trivial_and_sign_values() {
        for cls in partitions(5) {
            assert_eq!(character_value(&p(&[5]), &cls).unwrap(), 1);
        }
        assert_eq!(character_value(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(character_value(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
    }

    #[test]
    fn identity_values_match_hook_lengths() {
        for d in 0..=10 {
            let id = Partition::new(vec![1; d]).unwrap();
            for lam in partitions(d) {
                let chi = character_value(&lam, &id).unwrap();
                assert_eq!(BigUint::from(chi as u64), hook_dim(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert_eq!(
            character_value(&p(&[2]), &p(&[1, 1, 1])),
            Err(Error::PartitionSizeMismatch)
        );
        assert_eq!(
            kron_invariant_dim(&p(&[2]), &p(&[2]), &p(&[3])),
            Err(Error::PartitionSizeMismatch)
        );
    }

    #[test]
    fn degree_cap_is_enforced() {
        let table = CharacterTable::with_max_degree(3);
        assert!(matches!(
            table.character_value(&p(&[4]), &p(&[4])),
            Err(Error::DegreeCapExceeded { degree: 4, cap: 3 })
        ));
    }

    #[test]
    fn orthogonality_relations() {
        for d in 1..=8 {
            let classes = conjugacy_classes(d);
            let lambdas = partitions(d);
            let order = BigInt::from(factorial(d));
            for (i, lam) in lambdas.iter().enumerate() {
                for mu in &lambdas[i..] {
                    let s: BigInt = classes
                        .iter()
                        .map(|c| {
                            BigInt::from(c.class_size.clone())
                                * character_value(lam, &c.cycle_type).unwrap()
                                * character_value(mu, &c.cycle_type).unwrap()
                        })
                        .sum();
                    let expected = if lam == mu { order.clone() } else { BigInt::zero() };
                    assert_eq!(s, expected, "row orthogonality {lam} {mu}");
                }
            }
            // Column orthogonality: sum_lam chi_lam(c)^2 = z_c.
            for c in &classes {
                let s: i64 = lambdas
                    .iter()
                    .map(|lam| character_value(lam, &c.cycle_type).unwrap().pow(2))
                    .sum();
                assert_eq!(BigUint::from(s as u64), c.cycle_type.centralizer_order());
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for d in 0..=9 {
            let total: BigUint = conjugacy_classes(d).into_iter().map(|c| c.class_size).sum();
            assert_eq!(total, factorial(d));
        }
    }

    #[test]
    fn partitions_are_lexicographic() {
        let ps = partitions(4);
        let expected = [
            vec![1, 1, 1, 1],
            vec![2, 1, 1],
            vec![2, 2],
            vec![3, 1],
            vec![4],
        ];
        assert_eq!(ps.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(), expected);
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(12).len(), 77);
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron_invariant_dim(&p(&[2]), &p(&[2]), &p(&[2])).unwrap(), 1);
        assert_eq!(kron_invariant_dim(&p(&[1, 1]), &p(&[1, 1]), &p(&[2])).unwrap(), 1);
        assert_eq!(kron_invariant_dim(&p(&[1, 1]), &p(&[1, 1]), &p(&[1, 1])).unwrap(), 0);
    }

    #[test]
    fn kron_2_2_cubed_from_the_sigma4_table() {
        // Rows of the Sigma_4 character table on classes
        // 1^4, 2 1^2, 2^2, 3 1, 4 with sizes 1, 6, 3, 8, 6.
        let sizes = [1i64, 6, 3, 8, 6];
        let chi_22 = [2i64, 0, 2, -1, 0];
        let sum: i64 = (0..5).map(|i| sizes[i] * chi_22[i].pow(3)).sum();
        assert_eq!(sum % 24, 0);
        let expected = (sum / 24) as u64;
        assert_eq!(expected, 1);
        let lam = p(&[2, 2]);
        assert_eq!(kron_invariant_dim(&lam, &lam, &lam).unwrap(), expected);
    }

    #[test]
    fn kron_with_trivial_is_delta() {
        for d in 0..=8 {
            let triv = if d == 0 { Partition::empty() } else { p(&[d as u32]) };
            let ps = partitions(d);
            for lam in &ps {
                for mu in &ps {
                    let k = kron_invariant_dim(lam, mu, &triv).unwrap();
                    assert_eq!(k, u64::from(lam == mu));
                }
            }
        }
    }

    #[test]
    fn kron_is_symmetric() {
        let ps = partitions(6);
        for a in ps.iter().step_by(2) {
            for b in ps.iter().step_by(3) {
                for c in &ps {
                    let base = kron_invariant_dim(a, b, c).unwrap();
                    for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                        assert_eq!(kron_invariant_dim(x, y, z).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn schur_dims() {
        assert_eq!(schur_dim_gl2(Weight2::new(0, 0)).unwrap(), 1);
        assert_eq!(schur_dim_gl2(Weight2::new(2, 0)).unwrap(), 3);
        assert_eq!(schur_dim_gl2(Weight2::new(4, 4)).unwrap(), 1);
        assert!(schur_dim_gl2(Weight2::new(0, 1)).is_err());
    }

    #[test]
    fn partition_validation_and_json() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_padded(&[3, 1, 0, 0]).unwrap(), p(&[3, 1]));
        let q: Partition = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(q, p(&[3, 1, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
        assert_eq!(serde_json::to_string(&q).unwrap(), "[3,1,1]");
    }
}
