//! The eight simple equivariant D-modules and the composite modules built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::characters::{mult_e, mult_s, mult_sh, mult_sh_sqrt};
use crate::error::{Error, Result};
use crate::euler::euler_mult;
use crate::symchar::{CharacterTable, Partition};
use crate::weights::{TripleWeight, Weight2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleId {
    E,
    D1,
    D122,
    D212,
    D221,
    D5,
    S,
    G6,
}

impl SimpleId {
    pub const ALL: [SimpleId; 8] = [
        Self::E,
        Self::D1,
        Self::D122,
        Self::D212,
        Self::D221,
        Self::D5,
        Self::S,
        Self::G6,
    ];

    pub const DIJK: [SimpleId; 3] = [Self::D122, Self::D212, Self::D221];

    pub fn name(self) -> &'static str {
        match self {
            Self::E => "E",
            Self::D1 => "D1",
            Self::D122 => "D122",
            Self::D212 => "D212",
            Self::D221 => "D221",
            Self::D5 => "D5",
            Self::S => "S",
            Self::G6 => "G6",
        }
    }

    /// Which factor carries the `(3,1)` in the witness weight of a `D_ijk`.
    fn dijk_factor(self) -> Option<usize> {
        match self {
            Self::D122 => Some(0),
            Self::D212 => Some(1),
            Self::D221 => Some(2),
            _ => None,
        }
    }

    /// `A -> B -> C -> A` applied to the labels `122 -> 212 -> 221 -> 122`.
    pub fn rotate(self) -> Self {
        match self {
            Self::D122 => Self::D212,
            Self::D212 => Self::D221,
            Self::D221 => Self::D122,
            other => other,
        }
    }
}

impl fmt::Display for SimpleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimpleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "D0" {
            return Ok(Self::E);
        }
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unknown { kind: "simple module", name: s.to_string() })
    }
}

impl Serialize for SimpleId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Simples plus the composite modules that local cohomology produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleId {
    Simple(SimpleId),
    /// The localization `S_h`.
    Sh,
    /// `S_h * sqrt(h)`.
    ShSqrt,
    /// The D-submodule of `S_h` generated by `1/h`.
    HInv1,
    /// The extension of `D122 + D212 + D221` by `G6`.
    FMod,
    ShModS,
    ShsModG6,
    Zero,
}

impl ModuleId {
    pub const COMPOSITES: [ModuleId; 6] =
        [Self::Sh, Self::ShSqrt, Self::HInv1, Self::FMod, Self::ShModS, Self::ShsModG6];

    pub fn name(self) -> &'static str {
        match self {
            Self::Simple(s) => s.name(),
            Self::Sh => "S_h",
            Self::ShSqrt => "S_h_sqrt",
            Self::HInv1 => "h_inv1",
            Self::FMod => "F_mod",
            Self::ShModS => "Sh_mod_S",
            Self::ShsModG6 => "Shs_mod_G6",
            Self::Zero => "Zero",
        }
    }

    pub fn all() -> impl Iterator<Item = ModuleId> {
        SimpleId::ALL
            .into_iter()
            .map(ModuleId::Simple)
            .chain(Self::COMPOSITES)
            .chain([Self::Zero])
    }
}

impl From<SimpleId> for ModuleId {
    fn from(s: SimpleId) -> Self {
        Self::Simple(s)
    }
}

impl fmt::Display for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(simple) = s.parse::<SimpleId>() {
            return Ok(Self::Simple(simple));
        }
        Self::all()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unknown { kind: "module", name: s.to_string() })
    }
}

impl Serialize for ModuleId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A multiplicity, or `Unknown` where the character is not determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Known(u64),
    Unknown,
}

impl Multiplicity {
    pub fn known(self) -> Option<u64> {
        match self {
            Self::Known(n) => Some(n),
            Self::Unknown => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Known(n) => write!(f, "{n}"),
            Self::Unknown => f.write_str("unknown"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Known(n) => serializer.serialize_u64(*n),
            Self::Unknown => serializer.serialize_str("unknown"),
        }
    }
}

pub fn witness_weight(s: SimpleId) -> TripleWeight {
    let d = TripleWeight::from_pairs([(3, 1), (2, 2), (2, 2)]);
    match s {
        SimpleId::S => TripleWeight::uniform(0, 0),
        SimpleId::G6 => TripleWeight::uniform(1, 1),
        SimpleId::D5 => TripleWeight::uniform(2, 2),
        SimpleId::D1 => TripleWeight::uniform(3, 3),
        SimpleId::E => TripleWeight::uniform(4, 4),
        SimpleId::D122 => d,
        SimpleId::D212 => d.rotate(),
        SimpleId::D221 => d.rotate().rotate(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRow {
    pub simple: SimpleId,
    pub weight: TripleWeight,
}

pub fn witness_table() -> Vec<WitnessRow> {
    SimpleId::ALL
        .into_iter()
        .map(|simple| WitnessRow { simple, weight: witness_weight(simple) })
        .collect()
}

pub fn fourier_on_simples(s: SimpleId) -> SimpleId {
    match s {
        SimpleId::S => SimpleId::E,
        SimpleId::E => SimpleId::S,
        SimpleId::G6 => SimpleId::D1,
        SimpleId::D1 => SimpleId::G6,
        other => other,
    }
}

/// Holonomic duality fixes every simple.
pub fn duality_on_simples(s: SimpleId) -> SimpleId {
    s
}

/// Is `lam` in the index set `{lam1 >= 3, lam2 <= 1}` of the `D_ijk` decomposition?
pub fn in_dijk_index_set(lam: Weight2) -> bool {
    lam.is_dominant() && lam.a >= 3 && lam.b <= 1
}

/// Multiplicity in `D_ijk`, where `special` is the factor playing the role of `A`.
///
/// As a `GL(A) x GL(B (x) C)` representation, `D_122 = sum_{lam} S_lam A (x) S_{lam(1)}(B (x) C)`
/// with `lam(1) = (lam1 - 2, 1, 1, lam2)`. A negative last entry is absorbed by
/// twisting with `det(B (x) C) = S_(2,2) B (x) S_(2,2) C`, which leaves a
/// genuine partition `pi`; the `B, C` multiplicities are then Kronecker
/// coefficients `g(pi, mu, nu)`.
fn mult_dijk(table: &CharacterTable, special: usize, w: &TripleWeight) -> Result<u64> {
    let factors = w.factors();
    let lam = factors[special];
    if !in_dijk_index_set(lam) {
        return Ok(0);
    }
    let others: Vec<Weight2> = (0..3).filter(|&i| i != special).map(|i| factors[i]).collect();
    let shift = lam.b.min(0);
    let pi = Partition::from_padded(&[lam.a - 2 - shift, 1 - shift, 1 - shift, lam.b - shift])?;
    let (mu, nu) = (others[0].twist(-2 * shift), others[1].twist(-2 * shift));
    let size = pi.size() as i64;
    if !mu.is_two_row_partition() || !nu.is_two_row_partition() || mu.size() != size || nu.size() != size {
        return Ok(0);
    }
    table.kron_invariant_dim(&pi, &Partition::from_weight(mu)?, &Partition::from_weight(nu)?)
}

fn mult_d1(w: &TripleWeight) -> Result<Multiplicity> {
    if mult_e(w) != 0 {
        return Ok(Multiplicity::Unknown);
    }
    let v = euler_mult(w)?;
    u64::try_from(v)
        .map(Multiplicity::Known)
        .map_err(|_| Error::Internal(format!("negative D1 multiplicity {v} at {w}")))
}

pub fn mult_simple(s: SimpleId, w: &TripleWeight) -> Result<Multiplicity> {
    mult_simple_with(CharacterTable::global(), s, w)
}

pub fn mult_simple_with(table: &CharacterTable, s: SimpleId, w: &TripleWeight) -> Result<Multiplicity> {
    if let Some(bad) = w.factors().into_iter().find(|x| !x.is_dominant()) {
        return Err(Error::NotDominant(bad));
    }
    let known = Multiplicity::Known;
    match s {
        SimpleId::S => Ok(known(mult_s(w))),
        SimpleId::E => Ok(known(mult_e(w))),
        SimpleId::D122 | SimpleId::D212 | SimpleId::D221 => {
            let special = s.dijk_factor().expect("D_ijk has a special factor");
            Ok(known(mult_dijk(table, special, w)?))
        }
        SimpleId::D5 => {
            let v = mult_sh(w)? as i64 - mult_s(w) as i64 - mult_e(w) as i64;
            u64::try_from(v)
                .map(known)
                .map_err(|_| Error::Internal(format!("negative D5 multiplicity {v} at {w}")))
        }
        SimpleId::D1 => mult_d1(w),
        SimpleId::G6 => mult_d1(&w.fourier()),
    }
}

/// Character of a composite module, where it is a plain sum of known characters.
pub fn mult_composite(m: ModuleId, w: &TripleWeight) -> Result<Multiplicity> {
    match m {
        ModuleId::Simple(s) => mult_simple(s, w),
        ModuleId::Sh => Ok(Multiplicity::Known(mult_sh(w)?)),
        ModuleId::ShSqrt => Ok(Multiplicity::Known(mult_sh_sqrt(w)?)),
        ModuleId::Zero => Ok(Multiplicity::Known(0)),
        other => {
            let mut total = 0;
            for (s, n) in composition_factors(other) {
                match mult_simple(s, w)? {
                    Multiplicity::Known(k) => total += k * n as u64,
                    Multiplicity::Unknown => return Ok(Multiplicity::Unknown),
                }
            }
            Ok(Multiplicity::Known(total))
        }
    }
}

/// A filtration listed from the socle outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionSeries {
    pub module: ModuleId,
    pub layers: Vec<Vec<SimpleId>>,
}

impl CompositionSeries {
    pub fn flatten(&self) -> BTreeMap<SimpleId, usize> {
        let mut out = BTreeMap::new();
        for s in self.layers.iter().flatten() {
            *out.entry(*s).or_insert(0) += 1;
        }
        out
    }
}

pub fn composition_series(m: ModuleId) -> Result<CompositionSeries> {
    use SimpleId::*;
    let layers: Vec<Vec<SimpleId>> = match m {
        ModuleId::Sh => vec![vec![S], vec![D5], vec![E]],
        ModuleId::HInv1 => vec![vec![S], vec![D5]],
        ModuleId::ShModS => vec![vec![D5], vec![E]],
        ModuleId::ShSqrt => vec![vec![G6], SimpleId::DIJK.to_vec(), vec![D1]],
        ModuleId::FMod => vec![vec![G6], SimpleId::DIJK.to_vec()],
        ModuleId::ShsModG6 => vec![SimpleId::DIJK.to_vec(), vec![D1]],
        ModuleId::Simple(_) | ModuleId::Zero => return Err(Error::NotComposite(m.to_string())),
    };
    Ok(CompositionSeries { module: m, layers })
}

/// Composition factors with multiplicity, defined for every module id.
pub fn composition_factors(m: ModuleId) -> BTreeMap<SimpleId, usize> {
    match m {
        ModuleId::Simple(s) => BTreeMap::from([(s, 1)]),
        ModuleId::Zero => BTreeMap::new(),
        other => composition_series(other).expect("composite").flatten(),
    }
}

/// The Bernstein-Sato polynomial of the hyperdeterminant, kept as data:
/// `(s + 1)(s + 3/2)^2(s + 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFunction {
    pub roots: Vec<(Ratio<i64>, u32)>,
}

impl BFunction {
    pub fn hyperdeterminant() -> Self {
        Self {
            roots: vec![
                (Ratio::from_integer(-1), 1),
                (Ratio::new(-3, 2), 2),
                (Ratio::from_integer(-2), 1),
            ],
        }
    }

    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    pub fn evaluate(&self, s: Ratio<i64>) -> Ratio<i64> {
        self.roots
            .iter()
            .fold(Ratio::from_integer(1), |acc, &(root, m)| acc * (s - root).pow(m as i32))
    }

    /// `<h^r>/<h^{r+1}>` is nonzero exactly at roots; count the distinct roots
    /// with the given fractional part (`0` or `1/2`).
    pub fn filtration_steps(&self, half_integral: bool) -> usize {
        self.roots
            .iter()
            .filter(|(r, _)| (r.denom() == &2) == half_integral)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn known(n: u64) -> Multiplicity {
        Multiplicity::Known(n)
    }

    #[test]
    fn witness_examples() {
        assert_eq!(witness_weight(SimpleId::S), TripleWeight::uniform(0, 0));
        assert_eq!(witness_weight(SimpleId::G6), TripleWeight::uniform(1, 1));
        assert_eq!(
            witness_weight(SimpleId::D221),
            TripleWeight::from_pairs([(2, 2), (2, 2), (3, 1)])
        );
        let mut weights: Vec<_> = witness_table().into_iter().map(|r| r.weight).collect();
        weights.sort();
        weights.dedup();
        assert_eq!(weights.len(), 8);
    }

    #[test]
    fn simple_multiplicity_examples() {
        let d = witness_weight(SimpleId::D122);
        assert_eq!(mult_simple(SimpleId::D122, &d).unwrap(), known(1));
        for a in 0..=5 {
            assert_eq!(mult_simple(SimpleId::D122, &TripleWeight::uniform(a, a)).unwrap(), known(0));
        }
        assert_eq!(mult_simple(SimpleId::D5, &TripleWeight::uniform(2, 2)).unwrap(), known(1));
        assert_eq!(mult_simple(SimpleId::D1, &TripleWeight::uniform(3, 3)).unwrap(), known(1));
        assert_eq!(mult_simple(SimpleId::G6, &TripleWeight::uniform(1, 1)).unwrap(), known(1));
        assert_eq!(
            mult_simple(SimpleId::D1, &TripleWeight::uniform(4, 4)).unwrap(),
            Multiplicity::Unknown
        );
    }

    #[test]
    fn dijk_index_set_gates_the_multiplicity() {
        for w in crate::weights::dominant_triples_in_range(-1, 4).into_iter().step_by(5) {
            if w.lam.a <= 2 || w.lam.b >= 2 {
                assert_eq!(mult_simple(SimpleId::D122, &w).unwrap(), known(0), "{w}");
            }
        }
    }

    #[test]
    fn dijk_are_rotations_of_each_other() {
        for w in crate::weights::dominant_triples_in_range(-1, 5).into_iter().step_by(3) {
            let a = mult_simple(SimpleId::D122, &w).unwrap();
            assert_eq!(mult_simple(SimpleId::D212, &w.rotate()).unwrap(), a);
            assert_eq!(mult_simple(SimpleId::D221, &w.rotate().rotate()).unwrap(), a);
        }
    }

    #[test]
    fn non_dominant_weight_is_rejected() {
        let w = TripleWeight::from_pairs([(0, 1), (0, 0), (0, 0)]);
        assert!(mult_simple(SimpleId::S, &w).is_err());
    }

    #[test]
    fn series() {
        let sh = composition_series(ModuleId::Sh).unwrap();
        assert_eq!(sh.layers, vec![vec![SimpleId::S], vec![SimpleId::D5], vec![SimpleId::E]]);
        let shs = composition_series(ModuleId::ShSqrt).unwrap();
        assert_eq!(shs.layers.len(), 3);
        assert_eq!(shs.layers[1], SimpleId::DIJK.to_vec());
        assert_eq!(shs.layers[2], vec![SimpleId::D1]);
        let h = composition_series(ModuleId::HInv1).unwrap();
        assert_eq!(h.layers, vec![vec![SimpleId::S], vec![SimpleId::D5]]);
        assert!(composition_series(ModuleId::Simple(SimpleId::S)).is_err());
        assert!(composition_series(ModuleId::Zero).is_err());
    }

    #[test]
    fn functors_on_simples() {
        assert_eq!(fourier_on_simples(SimpleId::S), SimpleId::E);
        assert_eq!(fourier_on_simples(SimpleId::D5), SimpleId::D5);
        assert_eq!(duality_on_simples(SimpleId::G6), SimpleId::G6);
        for s in SimpleId::ALL {
            assert_eq!(fourier_on_simples(fourier_on_simples(s)), s);
            assert_eq!(duality_on_simples(duality_on_simples(s)), s);
            assert_eq!(witness_weight(s).fourier(), witness_weight(fourier_on_simples(s)));
        }
    }

    #[test]
    fn b_function_data() {
        let b = BFunction::hyperdeterminant();
        assert_eq!(b.degree(), 4);
        for (root, _) in &b.roots {
            assert_eq!(b.evaluate(*root), Ratio::from_integer(0));
        }
        assert_eq!(b.evaluate(Ratio::from_integer(0)), Ratio::new(9, 2));
        // S < <1/h> < <1/h^2> = S_h and <h^{-1/2}> < <h^{-3/2}>.
        assert_eq!(b.filtration_steps(false) + 1, composition_series(ModuleId::Sh).unwrap().layers.len());
        assert_eq!(b.filtration_steps(true), 1);
    }

    #[test]
    fn names_parse() {
        for m in ModuleId::all() {
            assert_eq!(m.name().parse::<ModuleId>().unwrap(), m);
        }
        assert_eq!("D0".parse::<SimpleId>().unwrap(), SimpleId::E);
        assert!("D7".parse::<SimpleId>().is_err());
    }
}
