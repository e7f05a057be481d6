//! Classical root systems with a compact/noncompact splitting.
//!
//! Roots live in the standard `e_i` coordinate model: A_n in dimension n+1
//! (differences `e_i - e_j`), B/C/D_n in dimension n. A causal datum carries
//! per-root multiplicities and the half-sums `rho`, `rho_k`, `rho_n`. The
//! split into compact and noncompact roots is driven by a central element
//! `z0`: a root is compact when it pairs to zero with `z0`, and all positive
//! noncompact roots must pair to one common positive value.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat, rat_i, Rat, RatMatrix, RationalVector};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::UnsupportedSystem(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootKind {
    Compact,
    Noncompact,
}

/// A root together with its kind and multiplicity data.
#[derive(Clone, Debug)]
pub struct Root {
    pub vector: RationalVector,
    pub kind: RootKind,
    /// Root-space dimension m_alpha.
    pub mult: u32,
    /// Multiplicity of 2*alpha, zero when 2*alpha is not a root.
    pub mult_double: u32,
}

/// A root system with causal splitting, positive system and half-sums.
#[derive(Clone, Debug)]
pub struct CausalRootDatum {
    pub ambient_dim: usize,
    /// All roots, positive ones first (the first `positive_count` entries).
    roots: Vec<Root>,
    positive_count: usize,
    pub rho: RationalVector,
    pub rho_k: RationalVector,
    pub rho_n: RationalVector,
    pub label: String,
    /// True for data produced by `group_double` (every m_alpha = 2).
    pub group_type: bool,
}

impl CausalRootDatum {
    pub fn all_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive(&self) -> &[Root] {
        &self.roots[..self.positive_count]
    }

    pub fn noncompact_positive(&self) -> impl Iterator<Item = &Root> {
        self.positive().iter().filter(|r| r.kind == RootKind::Noncompact)
    }

    pub fn compact_positive(&self) -> impl Iterator<Item = &Root> {
        self.positive().iter().filter(|r| r.kind == RootKind::Compact)
    }

    pub fn contains_root(&self, v: &RationalVector) -> bool {
        self.roots.iter().any(|r| &r.vector == v)
    }

    pub fn root(&self, v: &RationalVector) -> Option<&Root> {
        self.roots.iter().find(|r| &r.vector == v)
    }

    /// Rank of the system: dimension of the span of the roots.
    pub fn rank(&self) -> usize {
        let vectors: Vec<RationalVector> = self.roots.iter().map(|r| r.vector.clone()).collect();
        self.ambient_dim - crate::rat::nullspace(&vectors, self.ambient_dim).len()
    }

    /// A root is indivisible when its half is not a root.
    pub fn is_indivisible(&self, v: &RationalVector) -> bool {
        !self.contains_root(&v.scaled(&rat(1, 2)))
    }

    /// Simple roots: indecomposable elements of the positive system.
    pub fn simple_roots(&self) -> Vec<RationalVector> {
        let pos: Vec<&Root> = self.positive().iter().collect();
        let set: HashSet<&RationalVector> = pos.iter().map(|r| &r.vector).collect();
        pos.iter()
            .filter(|r| {
                !pos.iter().any(|b| {
                    let diff = r.vector.sub(&b.vector);
                    !diff.is_zero() && set.contains(&diff)
                })
            })
            .map(|r| r.vector.clone())
            .collect()
    }
}

/// Full root set and standard positive system for a classical family.
pub fn build_classical(
    family: Family,
    rank: usize,
) -> Result<(Vec<RationalVector>, Vec<RationalVector>)> {
    if rank == 0 || rank > 8 {
        return Err(Error::UnsupportedSystem(format!("rank {rank} outside 1..=8")));
    }
    if family == Family::D && rank < 2 {
        return Err(Error::UnsupportedSystem("family D needs rank >= 2".into()));
    }
    let mut positive = Vec::new();
    match family {
        Family::A => {
            let dim = rank + 1;
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let mut v = RationalVector::zero(dim);
                    let mut c = v.coords().to_vec();
                    c[i] = rat_i(1);
                    c[j] = rat_i(-1);
                    v = RationalVector::new(c);
                    positive.push(v);
                }
            }
        }
        Family::B | Family::C | Family::D => {
            let dim = rank;
            for i in 0..dim {
                for j in (i + 1)..dim {
                    for sign in [1i64, -1] {
                        let mut c = vec![Rat::zero(); dim];
                        c[i] = rat_i(1);
                        c[j] = rat_i(sign);
                        positive.push(RationalVector::new(c));
                    }
                }
            }
            if family == Family::B {
                for i in 0..dim {
                    let mut c = vec![Rat::zero(); dim];
                    c[i] = rat_i(1);
                    positive.push(RationalVector::new(c));
                }
            }
            if family == Family::C {
                for i in 0..dim {
                    let mut c = vec![Rat::zero(); dim];
                    c[i] = rat_i(2);
                    positive.push(RationalVector::new(c));
                }
            }
        }
    }
    let mut all = positive.clone();
    all.extend(positive.iter().map(|v| v.neg()));
    Ok((all, positive))
}

/// Assemble a causal datum from a root set, a positive system, the central
/// functional `z0` and per-root multiplicities.
pub fn make_causal(
    roots: &[RationalVector],
    positive: &[RationalVector],
    z0: &RationalVector,
    mults: impl Fn(&RationalVector) -> Option<(u32, u32)>,
    label: &str,
) -> Result<CausalRootDatum> {
    let dim = z0.dim();
    for v in roots {
        if v.dim() != dim {
            return Err(Error::DimMismatch { expected: dim, got: v.dim() });
        }
    }
    // Pairings on the positive system must be 0 or one common nonzero value.
    let pairings: Vec<Rat> = positive.iter().map(|v| v.dot(z0)).collect();
    let mut common: Option<Rat> = None;
    for p in &pairings {
        if p.is_zero() {
            continue;
        }
        match &common {
            None => common = Some(p.abs()),
            Some(c) => {
                if &p.abs() != c {
                    return Err(Error::InvalidDatum(format!(
                        "root pairing {p} with z0 not in {{0, +-{c}}}"
                    )));
                }
            }
        }
    }
    let c0 = common.ok_or_else(|| {
        Error::InvalidDatum("z0 pairs to zero with every root; no noncompact roots".into())
    })?;
    if pairings.iter().any(|p| p.is_negative()) {
        return Err(Error::InconsistentPositiveSystem(
            "some positive root pairs negatively with z0".into(),
        ));
    }

    let root_set: HashSet<&RationalVector> = roots.iter().collect();
    let mut out = Vec::with_capacity(roots.len());
    let mut rho = RationalVector::zero(dim);
    let mut rho_k = RationalVector::zero(dim);
    let mut rho_n = RationalVector::zero(dim);
    let mut ordered: Vec<&RationalVector> = positive.iter().collect();
    ordered.extend(roots.iter().filter(|v| !positive.contains(v)));
    for v in ordered {
        let (m, m2) = mults(v).ok_or_else(|| {
            Error::InvalidDatum(format!("no multiplicity supplied for root {v}"))
        })?;
        if m == 0 {
            return Err(Error::InvalidDatum(format!("multiplicity 0 for root {v}")));
        }
        let double = v.scaled(&rat_i(2));
        if m2 > 0 && !root_set.contains(&double) {
            return Err(Error::InvalidDatum(format!(
                "m_2a = {m2} supplied but {double} is not a root"
            )));
        }
        let kind =
            if v.dot(z0).is_zero() { RootKind::Compact } else { RootKind::Noncompact };
        if positive.contains(v) {
            let half = v.scaled(&rat(m as i64, 2));
            rho = rho.add(&half);
            match kind {
                RootKind::Compact => rho_k = rho_k.add(&half),
                RootKind::Noncompact => rho_n = rho_n.add(&half),
            }
        }
        out.push(Root { vector: v.clone(), kind, mult: m, mult_double: m2 });
    }
    // kind(-a) = kind(a) holds by construction since z0 pairings negate.
    // Check +-c0 consistency over the whole set.
    for r in &out {
        let p = r.vector.dot(z0);
        if !p.is_zero() && p.abs() != c0 {
            return Err(Error::InvalidDatum(format!(
                "root pairing {p} with z0 not in {{0, +-{c0}}}"
            )));
        }
    }
    Ok(CausalRootDatum {
        ambient_dim: dim,
        roots: out,
        positive_count: positive.len(),
        rho,
        rho_k,
        rho_n,
        label: label.to_string(),
        group_type: false,
    })
}

/// Causal datum modeling the group case of a hermitian simple algebra: the
/// root system of the algebra relative to its compact Cartan subalgebra, with
/// every multiplicity doubled to 2 (complexified root spaces).
///
/// `split` selects `p` for the A family (su(p, q) with p + q = rank + 1); it
/// defaults to the balanced choice and is ignored for B, C, D.
pub fn group_double(family: Family, rank: usize, split: Option<usize>) -> Result<CausalRootDatum> {
    let (all, positive) = build_classical(family, rank)?;
    let dim = all[0].dim();
    let (z0, name) = match family {
        Family::A => {
            let p = split.unwrap_or((rank + 2) / 2);
            let q = rank + 1 - p;
            if p == 0 || q == 0 {
                return Err(Error::UnsupportedSystem(format!(
                    "su({p},{q}) split is not hermitian"
                )));
            }
            let mut c = vec![Rat::zero(); dim];
            for (i, ci) in c.iter_mut().enumerate() {
                *ci = if i < p { rat_i(q as i64) } else { rat_i(-(p as i64)) };
            }
            (RationalVector::new(c), format!("group:su({p},{q})"))
        }
        Family::B => {
            if rank < 2 {
                return Err(Error::UnsupportedSystem(
                    "family B group case needs rank >= 2".into(),
                ));
            }
            (RationalVector::basis(dim, 0), format!("group:so(2,{})", 2 * rank - 1))
        }
        Family::C => {
            let mut c = vec![Rat::zero(); dim];
            for ci in c.iter_mut() {
                *ci = rat_i(1);
            }
            let name = if rank == 1 {
                "group:su(1,1)".to_string()
            } else {
                format!("group:sp({},R)", 2 * rank)
            };
            (RationalVector::new(c), name)
        }
        Family::D => {
            if rank < 3 {
                return Err(Error::UnsupportedSystem(
                    "family D group case needs rank >= 3".into(),
                ));
            }
            let mut c = vec![Rat::zero(); dim];
            for ci in c.iter_mut() {
                *ci = rat_i(1);
            }
            (RationalVector::new(c), format!("group:so*({})", 2 * rank))
        }
    };
    let mut datum = make_causal(&all, &positive, &z0, |_| Some((2, 0)), &name)?;
    datum.group_type = true;
    Ok(datum)
}

/// Coroot `2a / <a,a>`, so that `<a, coroot(a)> = 2` exactly.
pub fn coroot(alpha: &RationalVector) -> Result<RationalVector> {
    if alpha.is_zero() {
        return Err(Error::InvalidDatum("coroot of the zero vector".into()));
    }
    Ok(alpha.scaled(&(rat_i(2) / alpha.norm_sq())))
}

/// Reflection of `x` in the hyperplane orthogonal to the root `alpha`.
pub fn reflect(x: &RationalVector, alpha: &RationalVector) -> RationalVector {
    let cr = coroot(alpha).expect("nonzero root");
    x.sub(&alpha.scaled(&x.dot(&cr)))
}

/// Weyl group of the datum as the closure of the root reflections.
///
/// Capped at rank 4 so the enumeration stays at desk scale.
pub fn weyl_group(datum: &CausalRootDatum) -> Result<Vec<RatMatrix>> {
    let rank = datum.rank();
    if rank > 4 {
        return Err(Error::WeylCap(rank));
    }
    let gens: Vec<RatMatrix> =
        datum.positive().iter().map(|r| RatMatrix::reflection(&r.vector)).collect();
    let mut seen: HashSet<RatMatrix> = HashSet::new();
    let mut queue: VecDeque<RatMatrix> = VecDeque::new();
    queue.push_back(RatMatrix::identity(datum.ambient_dim));
    while let Some(m) = queue.pop_front() {
        if seen.contains(&m) {
            continue;
        }
        for g in &gens {
            queue.push_back(m.mul(g));
        }
        seen.insert(m);
    }
    Ok(seen.into_iter().collect())
}

/// Exact reflection-closure check: `s_a(b)` is a root for all roots a, b.
pub fn is_reflection_closed(datum: &CausalRootDatum) -> bool {
    datum.all_roots().iter().all(|a| {
        datum
            .all_roots()
            .iter()
            .all(|b| datum.contains_root(&reflect(&b.vector, &a.vector)))
    })
}
