//! Local cohomology with support in orbit closures.
//!
//! The values are a fixed table of known results, extended by two rules:
//! a module supported inside `Z` is its own `H^0_Z` with nothing above, and the
//! quotients `S_h/S` and `(S_h sqrt(h))/G6` inherit the cohomology of `S` and
//! `G6` shifted down by one degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simples::{composition_factors, ModuleId, SimpleId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitId {
    O0,
    O1,
    O122,
    O212,
    O221,
    O5,
    O6,
}

impl OrbitId {
    pub const ALL: [OrbitId; 7] =
        [Self::O0, Self::O1, Self::O122, Self::O212, Self::O221, Self::O5, Self::O6];

    /// Orbits with a proper closure.
    pub const PROPER: [OrbitId; 6] = [Self::O0, Self::O1, Self::O122, Self::O212, Self::O221, Self::O5];

    pub const OIJK: [OrbitId; 3] = [Self::O122, Self::O212, Self::O221];

    pub fn name(self) -> &'static str {
        match self {
            Self::O0 => "O0",
            Self::O1 => "O1",
            Self::O122 => "O122",
            Self::O212 => "O212",
            Self::O221 => "O221",
            Self::O5 => "O5",
            Self::O6 => "O6",
        }
    }

    pub fn dim(self) -> u32 {
        match self {
            Self::O0 => 0,
            Self::O1 => 4,
            Self::O122 | Self::O212 | Self::O221 => 5,
            Self::O5 => 7,
            Self::O6 => 8,
        }
    }

    pub fn codim(self) -> u32 {
        8 - self.dim()
    }

    /// Whether `other` lies in the closure of `self`.
    pub fn closure_contains(self, other: OrbitId) -> bool {
        self == other || (self.dim() > other.dim() && !(self.is_oijk() && other.is_oijk()))
    }

    fn is_oijk(self) -> bool {
        Self::OIJK.contains(&self)
    }

    /// The `D_ijk` whose support is the closure of this orbit.
    fn dijk(self) -> Option<SimpleId> {
        match self {
            Self::O122 => Some(SimpleId::D122),
            Self::O212 => Some(SimpleId::D212),
            Self::O221 => Some(SimpleId::D221),
            _ => None,
        }
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrbitId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Unknown { kind: "orbit", name: s.to_string() })
    }
}

impl Serialize for OrbitId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// The orbit whose closure is the support of a simple module.
pub fn support_orbit(s: SimpleId) -> OrbitId {
    match s {
        SimpleId::E => OrbitId::O0,
        SimpleId::D1 => OrbitId::O1,
        SimpleId::D122 => OrbitId::O122,
        SimpleId::D212 => OrbitId::O212,
        SimpleId::D221 => OrbitId::O221,
        SimpleId::D5 => OrbitId::O5,
        SimpleId::S | SimpleId::G6 => OrbitId::O6,
    }
}

/// Whether the support of `m` lies in the closure of `z`.
pub fn supported_in(m: ModuleId, z: OrbitId) -> bool {
    composition_factors(m).keys().all(|&s| z.closure_contains(support_orbit(s)))
}

/// A multiset of modules, as counts.
pub type Multiset = BTreeMap<ModuleId, usize>;

/// Degree `j` to `H^j`, omitting zero degrees.
pub type DegreeMap = BTreeMap<u32, Multiset>;

fn row(entries: &[(u32, &[(ModuleId, usize)])]) -> DegreeMap {
    entries
        .iter()
        .map(|(j, ms)| (*j, ms.iter().copied().collect::<Multiset>()))
        .collect()
}

fn simple(s: SimpleId) -> ModuleId {
    ModuleId::Simple(s)
}

/// The stated results, for pairs not settled by the support rule.
fn table(m: ModuleId, z: OrbitId) -> Option<DegreeMap> {
    use OrbitId::*;
    use SimpleId::*;
    let e = simple(E);
    let d1 = simple(D1);
    Some(match (m, z) {
        (_, O6) => return None,
        (ModuleId::Simple(S), O0) => row(&[(8, &[(e, 1)])]),
        (ModuleId::Simple(S), O1) => row(&[(4, &[(d1, 1)])]),
        (ModuleId::Simple(S), O5) => row(&[(1, &[(ModuleId::ShModS, 1)])]),
        (ModuleId::Simple(S), z) => row(&[(3, &[(simple(z.dijk()?), 1)]), (5, &[(e, 1)])]),

        (ModuleId::Simple(D1), O0) => row(&[(4, &[(e, 1)])]),

        (ModuleId::HInv1, _) => row(&[(1, &[(e, 1)])]),

        (ModuleId::Simple(D5), O0) => row(&[(1, &[(e, 1)]), (7, &[(e, 1)])]),
        (ModuleId::Simple(D5), O1) => row(&[(1, &[(e, 1)]), (3, &[(d1, 1)])]),
        (ModuleId::Simple(D5), z) => {
            row(&[(1, &[(e, 1)]), (2, &[(simple(z.dijk()?), 1)]), (4, &[(e, 1)])])
        }

        (ModuleId::Simple(D122 | D212 | D221), O0) => row(&[(3, &[(e, 1)]), (5, &[(e, 1)])]),
        (ModuleId::Simple(D122 | D212 | D221), O1 | O122 | O212 | O221) => {
            row(&[(1, &[(d1, 1)]), (3, &[(e, 1)])])
        }

        (ModuleId::Simple(G6), O0) => row(&[(4, &[(e, 3)]), (6, &[(e, 2)])]),
        (ModuleId::Simple(G6), O5) => row(&[(1, &[(ModuleId::ShsModG6, 1)])]),
        (ModuleId::Simple(G6), _) => row(&[(2, &[(d1, 2)]), (4, &[(e, 3)])]),

        (ModuleId::FMod, O0) => row(&[(5, &[(e, 1)])]),
        (ModuleId::FMod, _) => row(&[(1, &[(d1, 1)])]),

        (ModuleId::Sh | ModuleId::ShSqrt, _) => DegreeMap::new(),

        _ => return None,
    })
}

fn shifted_down(map: DegreeMap) -> DegreeMap {
    map.into_iter().filter(|(j, _)| *j >= 1).map(|(j, ms)| (j - 1, ms)).collect()
}

/// How a value of [`lc`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Support,
    Table,
    Shift,
}

/// `H^*_Z(m)` for `Z` the closure of `z`, with the rule that produced it.
pub fn lc_with_rule(m: ModuleId, z: OrbitId) -> Result<(DegreeMap, Rule)> {
    if supported_in(m, z) {
        let out = if m == ModuleId::Zero { DegreeMap::new() } else { row(&[(0, &[(m, 1)])]) };
        return Ok((out, Rule::Support));
    }
    if let Some(t) = table(m, z) {
        return Ok((t, Rule::Table));
    }
    let parent = match m {
        ModuleId::ShModS => Some(ModuleId::Simple(SimpleId::S)),
        ModuleId::ShsModG6 => Some(ModuleId::Simple(SimpleId::G6)),
        _ => None,
    };
    if let (Some(p), true) = (parent, z != OrbitId::O6) {
        return Ok((shifted_down(lc(p, z)?), Rule::Shift));
    }
    Err(Error::NotDerivable { module: m.to_string(), orbit: z.to_string() })
}

pub fn lc(m: ModuleId, z: OrbitId) -> Result<DegreeMap> {
    lc_with_rule(m, z).map(|(map, _)| map)
}

/// Multi-degree (in application order) to multiset.
pub type IteratedMap = BTreeMap<Vec<u32>, Multiset>;

/// `H^{j_t}_{Z_t}( ... H^{j_1}_{Z_1}(m) ... )`, where `supports[0] = Z_1` is applied first.
pub fn iterated_lc(m: ModuleId, supports: &[OrbitId]) -> Result<IteratedMap> {
    let mut current: IteratedMap = BTreeMap::from([(Vec::new(), Multiset::from([(m, 1)]))]);
    for &z in supports {
        let mut next = IteratedMap::new();
        for (degrees, ms) in &current {
            for (&module, &count) in ms {
                for (j, out) in lc(module, z)? {
                    let mut key = degrees.clone();
                    key.push(j);
                    let slot = next.entry(key).or_default();
                    for (n, c) in out {
                        *slot.entry(n).or_insert(0) += c * count;
                    }
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// JSON form of an iterated table: `{"[4,4]": ["E"]}`, multiplicities by repetition.
pub fn iterated_to_json(map: &IteratedMap) -> serde_json::Value {
    let obj = map
        .iter()
        .map(|(k, ms)| {
            let key = serde_json::to_string(k).expect("degree list");
            let list: Vec<serde_json::Value> = ms
                .iter()
                .flat_map(|(m, &c)| std::iter::repeat_n(serde_json::Value::from(m.name()), c))
                .collect();
            (key, serde_json::Value::Array(list))
        })
        .collect();
    serde_json::Value::Object(obj)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodimCheck {
    pub orbit: OrbitId,
    pub codim: u32,
    pub first_nonzero: Option<u32>,
    pub passed: bool,
}

/// `H^j_Z(S)` vanishes below the codimension of `Z` and not at it.
pub fn check_codim_vanishing() -> Result<Vec<CodimCheck>> {
    OrbitId::PROPER
        .iter()
        .map(|&z| {
            let map = lc(ModuleId::Simple(SimpleId::S), z)?;
            let first_nonzero = map.iter().find(|(_, ms)| !ms.is_empty()).map(|(j, _)| *j);
            Ok(CodimCheck { orbit: z, codim: z.codim(), first_nonzero, passed: first_nonzero == Some(z.codim()) })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub sequences_checked: usize,
    pub failures: Vec<String>,
}

/// Iterate from every simple along every support sequence of length at most `max_len`.
pub fn check_closure(max_len: usize) -> ClosureReport {
    let mut sequences = vec![Vec::new()];
    let mut frontier: Vec<Vec<OrbitId>> = vec![Vec::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|s| OrbitId::ALL.iter().map(move |&z| [s.as_slice(), &[z]].concat()))
            .collect();
        sequences.extend(frontier.iter().cloned());
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for s in SimpleId::ALL {
        for seq in &sequences {
            checked += 1;
            if let Err(e) = iterated_lc(ModuleId::Simple(s), seq) {
                failures.push(format!("{s} along {seq:?}: {e}"));
            }
        }
    }
    ClosureReport { sequences_checked: checked, failures }
}

/// Composition factors of a degree map, degree by degree.
fn flatten(map: &DegreeMap) -> BTreeMap<u32, BTreeMap<SimpleId, usize>> {
    map.iter()
        .map(|(j, ms)| {
            let mut out = BTreeMap::new();
            for (m, c) in ms {
                for (s, k) in composition_factors(*m) {
                    *out.entry(s).or_insert(0) += k * c;
                }
            }
            (*j, out)
        })
        .filter(|(_, ms)| !ms.is_empty())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    pub module: ModuleId,
    pub orbit: OrbitId,
    pub passed: bool,
}

/// `H^j_Z(S_h/S)` and `H^{j+1}_Z(S)` have the same composition factors, and
/// likewise for `(S_h sqrt(h))/G6` against `G6`.
pub fn check_shift_conservation() -> Result<Vec<ShiftCheck>> {
    let mut out = Vec::new();
    for (quotient, sub) in [(ModuleId::ShModS, SimpleId::S), (ModuleId::ShsModG6, SimpleId::G6)] {
        for z in OrbitId::PROPER {
            let lhs = flatten(&lc(quotient, z)?);
            let rhs = flatten(&shifted_down(lc(ModuleId::Simple(sub), z)?));
            out.push(ShiftCheck { module: quotient, orbit: z, passed: lhs == rhs });
        }
    }
    Ok(out)
}

/// Alternating sum `sum_j (-1)^j [H^j_Z(m)]` over simples.
pub fn euler_class(m: ModuleId, z: OrbitId) -> Result<BTreeMap<SimpleId, i64>> {
    let mut out = BTreeMap::new();
    for (j, ms) in flatten(&lc(m, z)?) {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        for (s, c) in ms {
            *out.entry(s).or_insert(0) += sign * c as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

fn add_classes(a: &mut BTreeMap<SimpleId, i64>, b: &BTreeMap<SimpleId, i64>) {
    for (s, v) in b {
        *a.entry(*s).or_insert(0) += v;
    }
    a.retain(|_, v| *v != 0);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerIdentityCheck {
    pub orbit: OrbitId,
    /// `chi(F_mod)`.
    pub extension: BTreeMap<SimpleId, i64>,
    /// `chi(G6) + chi(D122) + chi(D212) + chi(D221)`.
    pub sub_plus_quotient: BTreeMap<SimpleId, i64>,
    pub passed: bool,
}

/// Additivity of Euler characteristics along `0 -> G6 -> F -> D122 + D212 + D221 -> 0`.
pub fn check_extension_euler_identity(z: OrbitId) -> Result<EulerIdentityCheck> {
    let extension = euler_class(ModuleId::FMod, z)?;
    let mut sum = euler_class(ModuleId::Simple(SimpleId::G6), z)?;
    for d in SimpleId::DIJK {
        add_classes(&mut sum, &euler_class(ModuleId::Simple(d), z)?);
    }
    Ok(EulerIdentityCheck { orbit: z, passed: extension == sum, extension, sub_plus_quotient: sum })
}
