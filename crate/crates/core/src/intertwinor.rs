//! Torus modes on `S^1 x S^1` and the intertwining relation.
//!
//! A mode `phi_{j,f} = e^{i f t} e^{i j rho}` is indexed by two signed
//! frequencies. The conformal vector field `T` acts through
//!
//! ```text
//! U_{-r}(T) phi_{j,f} = 1/4 { (f+j+r) phi_{j+1,f+1} + (f-j+r) phi_{j-1,f+1}
//!                           + (-f+j+r) phi_{j+1,f-1} + (-f-j+r) phi_{j-1,f-1} }
//! ```
//!
//! and `G_{2m}(J, F)` acts diagonally. The operator `G_{2m}` intertwines
//! `U_{m-1}` (`r = 1-m`) with `U_{-m-1}` (`r = m+1`).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fmt_exact, int, Assignment, MultiPoly, Var};
use crate::operators::build_g2m;
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Mode {
    pub j: i64,
    pub f: i64,
}

impl Mode {
    pub fn new(j: i64, f: i64) -> Self {
        Mode { j, f }
    }

    /// `(j + f) mod 2`, preserved by two steps of the action.
    pub fn parity(self) -> usize {
        (self.j + self.f).rem_euclid(2) as usize
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi({}, {})", self.j, self.f)
    }
}

/// Finite linear combination of modes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModeVector {
    terms: BTreeMap<Mode, BigRational>,
}

#[derive(Serialize)]
struct ModeCoef {
    j: i64,
    f: i64,
    coef: String,
}

impl ModeVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(mode: Mode) -> Self {
        let mut v = Self::zero();
        v.add_term(mode, BigRational::one());
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mode, BigRational)>) -> Self {
        let mut v = Self::zero();
        for (mode, c) in terms {
            v.add_term(mode, c);
        }
        v
    }

    pub fn add_term(&mut self, mode: Mode, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mode).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mode);
        }
    }

    pub fn coeff(&self, mode: Mode) -> BigRational {
        self.terms
            .get(&mode)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mode, &BigRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Mode> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x * c)))
    }

    /// Multiplies each coefficient by a function of its mode.
    pub fn map_diagonal(&self, mut eigen: impl FnMut(Mode) -> BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x * eigen(*m))))
    }

    /// Sorted list of `{"j", "f", "coef": "num/den"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<ModeCoef> = self
            .terms
            .iter()
            .map(|(m, c)| ModeCoef {
                j: m.j,
                f: m.f,
                coef: fmt_exact(c),
            })
            .collect();
        serde_json::to_value(list).expect("mode vector serializes")
    }
}

impl Add for &ModeVector {
    type Output = ModeVector;
    fn add(self, rhs: &ModeVector) -> ModeVector {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

/// `P(eps, delta): phi_{j,f} -> phi_{j+eps, f+delta}`.
pub fn shift(eps: i64, delta: i64, v: &ModeVector) -> ModeVector {
    ModeVector::from_terms(
        v.iter()
            .map(|(m, c)| (Mode::new(m.j + eps, m.f + delta), c.clone())),
    )
}

/// `J: phi_{j,f} -> j phi_{j,f}`.
pub fn apply_j(v: &ModeVector) -> ModeVector {
    v.map_diagonal(|m| int(m.j))
}

/// `F: phi_{j,f} -> f phi_{j,f}`.
pub fn apply_f(v: &ModeVector) -> ModeVector {
    v.map_diagonal(|m| int(m.f))
}

/// The four terms of the action, as `(sign of j, sign of f)`; term `i` sends
/// `phi_{j,f}` to `phi_{j + sj, f + sf}` with coefficient `sf f + sj j + r`.
pub const U_TERMS: [(i64, i64); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

/// Which summand of a term coefficient a perturbation negates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignSlot {
    F,
    J,
    R,
    /// The sign of the whole term.
    Term,
}

/// One sign flipped in the action, for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignFlip {
    pub term: usize,
    pub slot: SignSlot,
}

fn u_coefficient(term: usize, mode: Mode, r: i64, flip: Option<SignFlip>) -> i64 {
    let (sj, sf) = U_TERMS[term];
    let (mut cf, mut cj, mut cr, mut overall) = (sf, sj, 1, 1);
    if let Some(flip) = flip.filter(|fl| fl.term == term) {
        match flip.slot {
            SignSlot::F => cf = -cf,
            SignSlot::J => cj = -cj,
            SignSlot::R => cr = -cr,
            SignSlot::Term => overall = -overall,
        }
    }
    overall * (cf * mode.f + cj * mode.j + cr * r)
}

/// `U_{-r}(T)` applied to `v`.
pub fn apply_u(r: i64, v: &ModeVector) -> ModeVector {
    apply_u_with(r, v, None)
}

pub fn apply_u_with(r: i64, v: &ModeVector, flip: Option<SignFlip>) -> ModeVector {
    let quarter = BigRational::new(1.into(), 4.into());
    let mut out = ModeVector::zero();
    for (mode, c) in v.iter() {
        let cq = c * &quarter;
        for (term, (sj, sf)) in U_TERMS.iter().enumerate() {
            let k = u_coefficient(term, *mode, r, flip);
            out.add_term(Mode::new(mode.j + sj, mode.f + sf), &cq * int(k));
        }
    }
    out
}

/// Value of `G_{2m}(J, F)` on one mode.
fn g_value(g: &MultiPoly, mode: Mode) -> BigRational {
    let at = Assignment::from([(Var::C, int(mode.j)), (Var::B, int(mode.f))]);
    g.eval(&at).expect("G has variables C and B")
}

/// `G_{2m}(j, f)` tabulated on `|j|, |f| <= radius`, evaluated on demand
/// outside it.
struct GTable<'a> {
    g: &'a MultiPoly,
    radius: i64,
    values: Vec<BigRational>,
}

impl<'a> GTable<'a> {
    fn new(g: &'a MultiPoly, radius: i64) -> Self {
        let values = grid(radius).map(|mode| g_value(g, mode)).collect();
        GTable { g, radius, values }
    }

    fn get(&self, mode: Mode) -> BigRational {
        let r = self.radius;
        if mode.j.abs() <= r && mode.f.abs() <= r {
            let side = (2 * r + 1) as usize;
            self.values[(mode.j + r) as usize * side + (mode.f + r) as usize].clone()
        } else {
            g_value(self.g, mode)
        }
    }
}

/// `G_{2m}(J, F)` applied to `v`.
pub fn apply_g(m: usize, v: &ModeVector) -> Result<ModeVector> {
    let g = build_g2m(m)?;
    Ok(v.map_diagonal(|mode| g_value(&g, mode)))
}

/// Both sides of the intertwining relation on one mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwiningTrace {
    pub m: usize,
    pub mode: Mode,
    /// `U_{m-1} phi`.
    pub u_phi: ModeVector,
    /// `G U_{m-1} phi`.
    pub lhs: ModeVector,
    /// `G phi`.
    pub g_phi: ModeVector,
    /// `U_{-m-1} G phi`.
    pub rhs: ModeVector,
}

impl IntertwiningTrace {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "mode": {"j": self.mode.j, "f": self.mode.f},
            "u_phi": self.u_phi.to_json(),
            "lhs": self.lhs.to_json(),
            "g_phi": self.g_phi.to_json(),
            "rhs": self.rhs.to_json(),
        })
    }
}

fn trace_with(g: &GTable, m: usize, mode: Mode, flip: Option<SignFlip>) -> IntertwiningTrace {
    let m_i = m as i64;
    let phi = ModeVector::basis(mode);
    let u_phi = apply_u_with(1 - m_i, &phi, flip);
    let lhs = u_phi.map_diagonal(|t| g.get(t));
    let g_phi = phi.map_diagonal(|t| g.get(t));
    let rhs = apply_u_with(m_i + 1, &g_phi, flip);
    IntertwiningTrace {
        m,
        mode,
        u_phi,
        lhs,
        g_phi,
        rhs,
    }
}

pub fn trace_intertwining(m: usize, mode: Mode) -> Result<IntertwiningTrace> {
    let g = build_g2m(m)?;
    Ok(trace_with(&GTable::new(&g, 0), m, mode, None))
}

fn grid(radius: i64) -> impl Iterator<Item = Mode> {
    (-radius..=radius).flat_map(move |j| (-radius..=radius).map(move |f| Mode::new(j, f)))
}

/// `G U_{m-1} phi = U_{-m-1} G phi` for every `|j|, |f| <= radius`.
pub fn verify_intertwining(m: usize, radius: i64) -> Result<VerificationReport> {
    verify_intertwining_with(m, radius, None)
}

pub fn verify_intertwining_with(
    m: usize,
    radius: i64,
    flip: Option<SignFlip>,
) -> Result<VerificationReport> {
    let g = build_g2m(m)?;
    if radius < m as i64 + 2 {
        return Err(Error::InvalidParameter(format!(
            "grid radius {radius} must be at least m + 2 = {}",
            m + 2
        )));
    }
    let mut params = vec![("m", m.to_string()), ("N", radius.to_string())];
    if let Some(fl) = flip {
        params.push(("flipped", format!("term {} {:?}", fl.term, fl.slot)));
    }
    VerificationReport::run("intertwining", params, || {
        let g = GTable::new(&g, radius + 1);
        for mode in grid(radius) {
            let t = trace_with(&g, m, mode, flip);
            if t.lhs != t.rhs {
                let target = t
                    .lhs
                    .support()
                    .chain(t.rhs.support())
                    .find(|&x| t.lhs.coeff(x) != t.rhs.coeff(x))
                    .expect("vectors differ");
                return Ok(Some(format!(
                    "{mode}: coefficient of {target} is {} vs {}",
                    fmt_exact(&t.lhs.coeff(target)),
                    fmt_exact(&t.rhs.coeff(target))
                )));
            }
        }
        Ok(None)
    })
}

/// Eigenvalues of a diagonal intertwinor propagated from one normalized mode
/// per parity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub m: usize,
    pub radius: i64,
    pub values: BTreeMap<Mode, BigRational>,
    pub unreachable: BTreeSet<Mode>,
    /// Indexed by parity class; `None` if the class has no mode with nonzero
    /// `G_{2m}` value in the grid.
    pub base_modes: [Option<Mode>; 2],
}

impl ReconstructionResult {
    /// The constant `values / G_{2m}` for each parity class, taken at its base.
    pub fn class_ratios(&self) -> Result<[Option<BigRational>; 2]> {
        let g = build_g2m(self.m)?;
        Ok(self
            .base_modes
            .map(|b| b.map(|mode| &self.values[&mode] / g_value(&g, mode))))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: Vec<serde_json::Value> = self
            .values
            .iter()
            .map(|(mode, v)| serde_json::json!({"j": mode.j, "f": mode.f, "value": fmt_exact(v)}))
            .collect();
        let unreachable: Vec<serde_json::Value> = self
            .unreachable
            .iter()
            .map(|mode| serde_json::json!({"j": mode.j, "f": mode.f}))
            .collect();
        let bases: Vec<serde_json::Value> = self
            .base_modes
            .iter()
            .map(|b| match b {
                Some(mode) => serde_json::json!({"j": mode.j, "f": mode.f}),
                None => serde_json::Value::Null,
            })
            .collect();
        serde_json::json!({
            "m": self.m,
            "N": self.radius,
            "base_modes": bases,
            "values": values,
            "unreachable": unreachable,
        })
    }
}

/// Propagates `mu_t (s_i + 1 - m) = (s_i + 1 + m) mu_s` across the lattice,
/// where `s_i = sf f + sj j` for the step `(sj, sf)` from `s` to `t`. Steps
/// whose left coefficient vanishes are not traversed.
pub fn reconstruct_eigenvalues(m: usize, radius: i64) -> Result<ReconstructionResult> {
    let g = build_g2m(m)?;
    if radius < 0 {
        return Err(Error::InvalidParameter(
            "grid radius must be non-negative".into(),
        ));
    }
    let m_i = m as i64;
    let in_grid = |mode: Mode| mode.j.abs() <= radius && mode.f.abs() <= radius;

    let mut base_modes = [None, None];
    for preferred in [Mode::new(m_i, 0), Mode::new(m_i + 1, 0)] {
        let class = preferred.parity();
        base_modes[class] = if in_grid(preferred) && !g_value(&g, preferred).is_zero() {
            Some(preferred)
        } else {
            grid(radius).find(|&x| x.parity() == class && !g_value(&g, x).is_zero())
        };
    }

    let mut values: BTreeMap<Mode, BigRational> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for base in base_modes.iter().flatten() {
        values.insert(*base, g_value(&g, *base));
        queue.push_back(*base);
    }

    while let Some(s) = queue.pop_front() {
        let mu_s = values[&s].clone();
        for (sj, sf) in U_TERMS {
            let sigma = sf * s.f + sj * s.j;
            let lhs = sigma + 1 - m_i;
            let rhs = sigma + 1 + m_i;
            if lhs == 0 {
                if rhs != 0 && !mu_s.is_zero() {
                    return Err(Error::InconsistentPropagation {
                        j: s.j,
                        f: s.f,
                        existing: fmt_exact(&mu_s),
                        proposed: "0/1".into(),
                    });
                }
                continue;
            }
            let t = Mode::new(s.j + sj, s.f + sf);
            if !in_grid(t) {
                continue;
            }
            let proposed = int(rhs) * &mu_s / int(lhs);
            match values.get(&t) {
                Some(existing) if *existing != proposed => {
                    return Err(Error::InconsistentPropagation {
                        j: t.j,
                        f: t.f,
                        existing: fmt_exact(existing),
                        proposed: fmt_exact(&proposed),
                    });
                }
                Some(_) => {}
                None => {
                    values.insert(t, proposed);
                    queue.push_back(t);
                }
            }
        }
    }

    let unreachable = grid(radius).filter(|x| !values.contains_key(x)).collect();
    Ok(ReconstructionResult {
        m,
        radius,
        values,
        unreachable,
        base_modes,
    })
}

/// On every reached mode, the reconstructed value equals the class ratio
/// times `G_{2m}(j, f)`.
pub fn verify_reconstruction(m: usize, radius: i64) -> Result<VerificationReport> {
    let g = build_g2m(m)?;
    VerificationReport::run("reconstruction", [("m", m as i64), ("N", radius)], || {
        let result = reconstruct_eigenvalues(m, radius)?;
        let ratios = result.class_ratios()?;
        for (mode, value) in &result.values {
            let ratio = ratios[mode.parity()]
                .as_ref()
                .expect("reached modes belong to a class with a base");
            let expected = ratio * g_value(&g, *mode);
            if *value != expected {
                return Ok(Some(format!(
                    "{mode}: reconstructed {} vs {} * G = {}",
                    fmt_exact(value),
                    fmt_exact(ratio),
                    fmt_exact(&expected)
                )));
            }
        }
        Ok(None)
    })
}
