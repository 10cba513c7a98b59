//! Path algebras of quivers modulo homogeneous relations, and the quiver of
//! the category of equivariant D-modules on 2x2x2 hypermatrices.
//!
//! Paths are written right to left: `alpha delta` means "first `delta`, then
//! `alpha`". Internally a path is a list of arrow indices in traversal order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::simples::{composition_factors, fourier_on_simples, duality_on_simples, ModuleId, SimpleId};

pub const DEFAULT_LENGTH_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut quiver = Self { vertices, arrows: Vec::with_capacity(arrows.len()) };
        for &(name, source, target) in arrows {
            if quiver.arrows.iter().any(|a| a.name == name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            let arrow = Arrow {
                name: name.to_string(),
                source: quiver.vertex(source)?,
                target: quiver.vertex(target)?,
            };
            quiver.arrows.push(arrow);
        }
        Ok(quiver)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Unknown { kind: "vertex", name: name.to_string() })
    }

    fn arrow(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Unknown { kind: "arrow", name: name.to_string() })
    }

    pub fn arrow_count(&self, from: usize, to: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == from && a.target == to).count()
    }

    /// All paths of length `len` from `from` to `to`, in traversal order, sorted.
    fn paths(&self, from: usize, to: usize, len: usize) -> Vec<Vec<usize>> {
        let mut frontier: Vec<(usize, Vec<usize>)> = vec![(from, Vec::new())];
        for _ in 0..len {
            frontier = frontier
                .into_iter()
                .flat_map(|(at, path)| {
                    self.arrows.iter().enumerate().filter(move |(_, a)| a.source == at).map(
                        move |(i, a)| {
                            let mut next = path.clone();
                            next.push(i);
                            (a.target, next)
                        },
                    )
                })
                .collect();
        }
        let mut out: Vec<Vec<usize>> =
            frontier.into_iter().filter(|(at, _)| *at == to).map(|(_, p)| p).collect();
        out.sort();
        out
    }

    /// Right-to-left notation for a path; `e_v` for the trivial path at `v`.
    pub fn write_path(&self, start: usize, path: &[usize]) -> String {
        if path.is_empty() {
            return format!("e_{}", self.vertices[start]);
        }
        path.iter().rev().map(|&i| self.arrows[i].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut label: Vec<usize> = (0..n).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for a in &self.arrows {
                let m = label[a.source].min(label[a.target]);
                for v in [a.source, a.target] {
                    if label[v] != m {
                        label[v] = m;
                        changed = true;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, l) in label.into_iter().enumerate() {
            groups.entry(l).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

/// A homogeneous linear combination of parallel paths of length at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(i64, Vec<usize>)>,
    source: usize,
    target: usize,
    length: usize,
}

impl Relation {
    /// `terms` lists `(coefficient, arrows)` with arrows in written (right-to-left) order.
    pub fn new(quiver: &Quiver, terms: &[(i64, &[&str])]) -> Result<Self> {
        let mut resolved = Vec::with_capacity(terms.len());
        let mut ends: Option<(usize, usize, usize)> = None;
        for &(coeff, written) in terms {
            if written.len() < 2 {
                return Err(Error::InvalidQuiver(format!("relation term {written:?} has length < 2")));
            }
            let mut path = written.iter().rev().map(|name| quiver.arrow(name)).collect::<Result<Vec<_>>>()?;
            for pair in path.windows(2) {
                if quiver.arrows[pair[0]].target != quiver.arrows[pair[1]].source {
                    return Err(Error::InvalidQuiver(format!("relation term {written:?} is not composable")));
                }
            }
            let shape = (
                quiver.arrows[path[0]].source,
                quiver.arrows[*path.last().expect("nonempty")].target,
                path.len(),
            );
            match ends {
                None => ends = Some(shape),
                Some(e) if e != shape => {
                    return Err(Error::InvalidQuiver(format!(
                        "relation terms differ in endpoints or length: {written:?}"
                    )))
                }
                Some(_) => {}
            }
            path.shrink_to_fit();
            resolved.push((coeff, path));
        }
        let (source, target, length) =
            ends.ok_or_else(|| Error::InvalidQuiver("empty relation".to_string()))?;
        Ok(Self { terms: resolved, source, target, length })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn write(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (i, (c, path)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            let coeff = if mag == 1 { String::new() } else { format!("{mag}*") };
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{sign}{coeff}{}", quiver.write_path(self.source, path)));
        }
        out
    }
}

/// The residue classes of paths between two vertices, graded by length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSpaceBasis {
    pub from: String,
    pub to: String,
    pub length_cap: usize,
    /// `dims[l]` is the dimension of the length-`l` part of the quotient.
    pub dims: Vec<usize>,
    /// Representative paths for a basis, grouped by length.
    pub representatives: Vec<Vec<String>>,
}

impl PathSpaceBasis {
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn max_nonzero_length(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d > 0)
    }
}

/// A quiver together with its relations.
#[derive(Debug, Clone)]
pub struct BoundQuiver {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl BoundQuiver {
    /// Quotient of the length-`len` paths `from -> to` by the ideal: its
    /// dimension and representative paths.
    fn quotient_block(&self, from: usize, to: usize, len: usize) -> (usize, Vec<Vec<usize>>) {
        let paths = self.quiver.paths(from, to, len);
        if paths.is_empty() {
            return (0, Vec::new());
        }
        let index: HashMap<&[usize], usize> =
            paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for rel in self.relations.iter().filter(|r| r.length <= len) {
            for before in 0..=len - rel.length {
                let after = len - rel.length - before;
                let prefixes = self.quiver.paths(from, rel.source, before);
                let suffixes = self.quiver.paths(rel.target, to, after);
                for p in &prefixes {
                    for s in &suffixes {
                        let mut row = vec![BigRational::zero(); paths.len()];
                        for (c, term) in &rel.terms {
                            let full: Vec<usize> = p.iter().chain(term).chain(s).copied().collect();
                            row[index[full.as_slice()]] += BigRational::from_integer(BigInt::from(*c));
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let pivots = rref(&mut rows);
        let reps: Vec<Vec<usize>> = paths
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, p)| p)
            .collect();
        (reps.len(), reps)
    }

    /// Basis of the paths `from -> to` modulo the relations, up to `length_cap`.
    ///
    /// The space counts as stable when the last two lengths contribute nothing.
    pub fn path_basis(&self, from: &str, to: &str, length_cap: usize) -> Result<PathSpaceBasis> {
        let (v, w) = (self.quiver.vertex(from)?, self.quiver.vertex(to)?);
        let mut dims = Vec::with_capacity(length_cap + 1);
        let mut representatives = Vec::with_capacity(length_cap + 1);
        // Every class of length n + 1 is a class of length n followed by an arrow,
        // so once no nonzero class of length n leaves `v` the longer blocks vanish.
        let mut alive = true;
        for len in 0..=length_cap {
            if !alive {
                dims.push(0);
                representatives.push(Vec::new());
                continue;
            }
            let (dim, reps) = self.quotient_block(v, w, len);
            dims.push(dim);
            representatives.push(reps.iter().map(|p| self.quiver.write_path(v, p)).collect());
            alive = dim > 0
                || (0..self.quiver.vertices().len()).any(|u| u != w && self.quotient_block(v, u, len).0 > 0);
        }
        let tail = &dims[length_cap.saturating_sub(1)..];
        if length_cap == 0 || tail.iter().any(|&d| d > 0) {
            return Err(Error::DidNotStabilize { from: from.to_string(), to: to.to_string(), cap: length_cap });
        }
        Ok(PathSpaceBasis { from: from.to_string(), to: to.to_string(), length_cap, dims, representatives })
    }
}

const DIJK_LABELS: [&str; 3] = ["122", "212", "221"];

/// The bound quiver whose representations model the equivariant D-modules on
/// `A (x) B (x) C` with `dim A = dim B = dim C = 2`.
///
/// Two components: `s <-> d5 <-> e` with all two-cycles zero, and the star
/// `d1 -> d_ijk -> g6 -> d_ijk -> d1` in which the three two-step paths
/// `d1 -> g6` agree, the three paths `g6 -> d1` agree, and every other
/// composite of length two vanishes.
pub fn hypermatrix_quiver() -> BoundQuiver {
    let d = |l: &str| format!("d{l}");
    let mut vertices = vec!["s".to_string(), "d5".to_string(), "e".to_string(), "g6".to_string()];
    vertices.extend(DIJK_LABELS.iter().map(|l| d(l)));
    vertices.push("d1".to_string());
    let mut arrows: Vec<(String, String, String)> = vec![
        ("phi0".into(), "s".into(), "d5".into()),
        ("psi0".into(), "d5".into(), "s".into()),
        ("phi1".into(), "d5".into(), "e".into()),
        ("psi1".into(), "e".into(), "d5".into()),
    ];
    for l in DIJK_LABELS {
        arrows.push((format!("alpha_{l}"), d(l), "g6".into()));
        arrows.push((format!("beta_{l}"), "g6".into(), d(l)));
        arrows.push((format!("gamma_{l}"), d(l), "d1".into()));
        arrows.push((format!("delta_{l}"), "d1".into(), d(l)));
    }
    let vertex_refs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let arrow_refs: Vec<(&str, &str, &str)> =
        arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    let quiver = Quiver::new(&vertex_refs, &arrow_refs).expect("well-formed quiver");

    let mut written: Vec<Vec<(i64, Vec<String>)>> = Vec::new();
    let mono = |x: &str, y: &str| vec![(1, vec![x.to_string(), y.to_string()])];
    for (x, y) in [("phi0", "psi0"), ("psi0", "phi0"), ("phi1", "psi1"), ("psi1", "phi1")] {
        written.push(mono(x, y));
    }
    let name = |arrow: &str, l: &str| format!("{arrow}_{l}");
    for (i, l) in DIJK_LABELS.iter().enumerate() {
        for m in &DIJK_LABELS[i + 1..] {
            written.push(vec![
                (1, vec![name("alpha", l), name("delta", l)]),
                (-1, vec![name("alpha", m), name("delta", m)]),
            ]);
        }
    }
    for (i, l) in DIJK_LABELS.iter().enumerate() {
        for m in &DIJK_LABELS[i + 1..] {
            written.push(vec![
                (1, vec![name("gamma", l), name("beta", l)]),
                (-1, vec![name("gamma", m), name("beta", m)]),
            ]);
        }
    }
    for l in DIJK_LABELS {
        for m in DIJK_LABELS {
            written.push(mono(&name("beta", m), &name("alpha", l)));
        }
    }
    for l in DIJK_LABELS {
        for m in DIJK_LABELS {
            written.push(mono(&name("delta", m), &name("gamma", l)));
        }
    }
    for l in DIJK_LABELS {
        written.push(mono(&name("alpha", l), &name("beta", l)));
    }
    for l in DIJK_LABELS {
        written.push(mono(&name("gamma", l), &name("delta", l)));
    }

    let relations = written
        .iter()
        .map(|terms| {
            let refs: Vec<Vec<&str>> =
                terms.iter().map(|(_, p)| p.iter().map(String::as_str).collect()).collect();
            let pairs: Vec<(i64, &[&str])> =
                terms.iter().zip(&refs).map(|((c, _), p)| (*c, p.as_slice())).collect();
            Relation::new(&quiver, &pairs).expect("well-formed relation")
        })
        .collect();
    BoundQuiver { quiver, relations }
}

pub fn vertex_name(s: SimpleId) -> &'static str {
    match s {
        SimpleId::S => "s",
        SimpleId::D5 => "d5",
        SimpleId::E => "e",
        SimpleId::G6 => "g6",
        SimpleId::D122 => "d122",
        SimpleId::D212 => "d212",
        SimpleId::D221 => "d221",
        SimpleId::D1 => "d1",
    }
}

pub fn simple_at_vertex(name: &str) -> Result<SimpleId> {
    SimpleId::ALL
        .into_iter()
        .find(|&s| vertex_name(s) == name)
        .ok_or_else(|| Error::Unknown { kind: "vertex", name: name.to_string() })
}

/// Number of arrows `m -> n`.
pub fn ext1_dim(m: SimpleId, n: SimpleId) -> usize {
    let bq = hypermatrix_quiver();
    let q = &bq.quiver;
    q.arrow_count(
        q.vertex(vertex_name(m)).expect("vertex"),
        q.vertex(vertex_name(n)).expect("vertex"),
    )
}

/// Composition factors of the injective hull of `m`: the multiplicity of `n`
/// is the number of independent paths `n -> m`.
pub fn injective_hull_factors(m: SimpleId) -> Result<BTreeMap<SimpleId, usize>> {
    injective_hull_factors_in(&hypermatrix_quiver(), m)
}

pub fn injective_hull_factors_in(bq: &BoundQuiver, m: SimpleId) -> Result<BTreeMap<SimpleId, usize>> {
    let mut out = BTreeMap::new();
    for n in SimpleId::ALL {
        let dim = bq.path_basis(vertex_name(n), vertex_name(m), DEFAULT_LENGTH_CAP)?.dim();
        if dim > 0 {
            out.insert(n, dim);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rotate_vertex(name: &str) -> String {
    match name {
        "d122" => "d212".to_string(),
        "d212" => "d221".to_string(),
        "d221" => "d122".to_string(),
        other => other.to_string(),
    }
}

/// Every structural property of the bound quiver that can be checked by counting.
pub fn check_all() -> Result<Vec<QuiverCheck>> {
    let bq = hypermatrix_quiver();
    let q = &bq.quiver;
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(QuiverCheck { name, passed, detail });

    let counts = (q.vertices().len(), q.arrows().len(), bq.relations.len());
    push("counts", counts == (8, 16, 34), format!("vertices, arrows, relations = {counts:?}"));

    let mut table: BTreeMap<(String, String), PathSpaceBasis> = BTreeMap::new();
    for v in q.vertices() {
        for w in q.vertices() {
            table.insert((v.clone(), w.clone()), bq.path_basis(v, w, DEFAULT_LENGTH_CAP)?);
        }
    }
    push("stabilization", true, format!("all {} path spaces stable below length {DEFAULT_LENGTH_CAP}", table.len()));

    let mut lengths = Vec::new();
    for component in q.components() {
        let names: Vec<&String> = component.iter().map(|&i| &q.vertices()[i]).collect();
        let max = names
            .iter()
            .flat_map(|v| names.iter().map(move |w| (v, w)))
            .filter_map(|(v, w)| table[&((*v).clone(), (*w).clone())].max_nonzero_length())
            .max()
            .unwrap_or(0);
        lengths.push(max);
    }
    push(
        "max path length",
        lengths.len() == 2 && lengths.iter().all(|&l| l == 2),
        format!("longest nonzero path per component: {lengths:?}"),
    );

    for (simple, hull) in [(SimpleId::S, ModuleId::Sh), (SimpleId::G6, ModuleId::ShSqrt)] {
        let factors = injective_hull_factors_in(&bq, simple)?;
        let expected = composition_factors(hull);
        push(
            "injective hull",
            factors == expected,
            format!("hull of {simple}: {factors:?}, composition factors of {hull}: {expected:?}"),
        );
    }

    let pairs_ok = table.iter().all(|((v, w), basis)| {
        basis.dims == table[&(rotate_vertex(v), rotate_vertex(w))].dims
    });
    let arrows_ok = SimpleId::ALL.iter().all(|&m| {
        SimpleId::ALL.iter().all(|&n| {
            let rm = simple_at_vertex(&rotate_vertex(vertex_name(m))).expect("vertex");
            let rn = simple_at_vertex(&rotate_vertex(vertex_name(n))).expect("vertex");
            ext1_arrows(q, m, n) == ext1_arrows(q, rm, rn)
        })
    });
    push("label rotation", pairs_ok && arrows_ok, "dimensions invariant under 122 -> 212 -> 221".to_string());

    let fourier_ok = SimpleId::ALL.iter().all(|&m| {
        SimpleId::ALL
            .iter()
            .all(|&n| ext1_arrows(q, m, n) == ext1_arrows(q, fourier_on_simples(m), fourier_on_simples(n)))
    });
    push("fourier compatibility", fourier_ok, "arrows m -> n match F(m) -> F(n)".to_string());

    let duality_ok = SimpleId::ALL.iter().all(|&m| {
        SimpleId::ALL
            .iter()
            .all(|&n| ext1_arrows(q, m, n) == ext1_arrows(q, duality_on_simples(n), duality_on_simples(m)))
    });
    push("duality compatibility", duality_ok, "arrows m -> n match D(n) -> D(m)".to_string());

    let separated = SimpleId::DIJK.iter().all(|&a| {
        SimpleId::DIJK.iter().all(|&b| {
            let dim = table[&(vertex_name(a).to_string(), vertex_name(b).to_string())].dim();
            dim == usize::from(a == b)
        })
    });
    push("no paths between d_ijk", separated, "only trivial paths among d122, d212, d221".to_string());

    Ok(checks)
}

fn ext1_arrows(q: &Quiver, m: SimpleId, n: SimpleId) -> usize {
    q.arrow_count(q.vertex(vertex_name(m)).expect("vertex"), q.vertex(vertex_name(n)).expect("vertex"))
}
