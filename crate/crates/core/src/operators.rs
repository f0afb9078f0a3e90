//! The operator families on `S^p x S^q` as polynomials, and the identities
//! relating them.
//!
//! `A_{2m}(C, B, Q)` is the binomial sum obtained by restricting the `m`-th
//! power of the ambient d'Alembertian; `G_{2m}(C, B)` is the product of two
//! chains of `m` linear factors. Every check here compares two polynomials
//! exactly, with `Q` left symbolic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_row, falling_chain, half, int, ChainStep, MultiPoly, Var};
use crate::report::VerificationReport;

/// Half-order `m` of an operator of order `2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperatorSpec {
    m: usize,
}

impl OperatorSpec {
    pub fn new(m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidOrder(m));
        }
        Ok(OperatorSpec { m: m as usize })
    }

    pub fn m(self) -> usize {
        self.m
    }
}

fn order(m: usize) -> Result<usize> {
    OperatorSpec::new(m as i64).map(OperatorSpec::m)
}

/// Signature data of `S^p x S^q` (`p` negative directions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurvatureContext {
    pub p: u32,
    pub q: u32,
}

impl CurvatureContext {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be positive".into()));
        }
        Ok(CurvatureContext { p, q })
    }

    pub fn n(&self) -> i64 {
        (self.p + self.q) as i64
    }

    /// `(n-1)(q-p)`.
    pub fn scal(&self) -> BigRational {
        int((self.n() - 1) * (self.q as i64 - self.p as i64))
    }

    /// `q(q-1) - p(p-1)`, the sum of the factor curvatures.
    pub fn scal_from_factors(&self) -> BigRational {
        let (p, q) = (self.p as i64, self.q as i64);
        int(q * (q - 1) - p * (p - 1))
    }

    fn require_curvature(&self) -> Result<()> {
        if self.n() < 2 {
            return Err(Error::DimensionTooSmall(self.n()));
        }
        Ok(())
    }

    /// `(n-2)/(4(n-1))`, the Yamabe curvature coefficient.
    pub fn kappa(&self) -> Result<BigRational> {
        self.require_curvature()?;
        let n = self.n();
        Ok(BigRational::new((n - 2).into(), (4 * (n - 1)).into()))
    }

    /// `Scal / (2(n-1))`.
    pub fn curvature_j(&self) -> Result<BigRational> {
        self.require_curvature()?;
        Ok(self.scal() / int(2 * (self.n() - 1)))
    }
}

/// A deliberate error injected into a construction, for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A2mPerturbation {
    /// Adds `delta` to `binom(m, ell)` in the sum.
    Binomial { ell: usize, delta: i64 },
}

/// Replacement for the recursion multiplier `(C+m-B)(C+m+B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecursionPerturbation {
    /// Uses `(C+m-B)^2`.
    RepeatedFactor,
}

fn c() -> MultiPoly {
    MultiPoly::var(Var::C)
}
fn b() -> MultiPoly {
    MultiPoly::var(Var::B)
}
fn q() -> MultiPoly {
    MultiPoly::var(Var::Q)
}

/// First nonzero monomial of `diff`, if any.
fn witness_of(diff: &MultiPoly) -> Option<String> {
    diff.leading_term_string()
}

pub fn build_a2m(m: usize) -> Result<MultiPoly> {
    build_a2m_with(m, None)
}

/// `A_{2m}` with an optional injected error.
pub fn build_a2m_with(m: usize, perturbation: Option<A2mPerturbation>) -> Result<MultiPoly> {
    let m = order(m)?;
    let vars = [Var::C, Var::B, Var::Q];
    // Weight condition P + Q = m - 1.
    let p_sym = (-&q()).add_constant(&int(m as i64 - 1));
    let c_plus = &c() + &q();
    let c_minus = &c() - &q();
    let b_plus = &b() + &p_sym;
    let b_minus = &b() - &p_sym;
    let zero = BigRational::zero();

    let mut binoms: Vec<BigInt> = binomial_row(m);
    if let Some(A2mPerturbation::Binomial { ell, delta }) = perturbation {
        if ell > m {
            return Err(Error::InvalidParameter(format!(
                "ell = {ell} exceeds m = {m}"
            )));
        }
        binoms[ell] += delta;
    }

    let mut sum = MultiPoly::zero(&vars);
    for (ell, binom) in binoms.iter().enumerate() {
        let k = m - ell;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let coef = BigRational::from_integer(binom * sign);
        let term = falling_chain(&c_plus, &zero, ChainStep::Down, ell)
            * falling_chain(&c_minus, &zero, ChainStep::Up, ell)
            * falling_chain(&b_plus, &zero, ChainStep::Down, k)
            * falling_chain(&b_minus, &zero, ChainStep::Up, k);
        sum = sum + term.scale(&coef);
    }
    Ok(sum)
}

/// `(C+B+m-1)(C+B+m-3)...(C+B-m+1) * (C-B+m-1)...(C-B-m+1)`.
pub fn build_g2m(m: usize) -> Result<MultiPoly> {
    let m = order(m)?;
    let top = int(m as i64 - 1);
    let sum = &c() + &b();
    let diff = &c() - &b();
    Ok(falling_chain(&sum, &top, ChainStep::Down, m)
        * falling_chain(&diff, &top, ChainStep::Down, m))
}

/// `C^4 - 2(B^2 + s^2) C^2 + (B^2 - s^2)^2`, the product of the four factors
/// `C +- (B +- s)`.
fn quartic_block(s: i64) -> MultiPoly {
    let c2 = &c() * &c();
    let b2 = &b() * &b();
    let s2 = int(s * s);
    let c4 = &c2 * &c2;
    let mid = (&c2 * &b2.add_constant(&s2)).scale(&int(-2));
    let tail = b2.add_constant(&-s2).pow(2);
    c4 + mid + tail
}

/// `G_{2m}` written through even powers of `C` and `B` only.
pub fn build_g2m_paired(m: usize) -> Result<MultiPoly> {
    let m = order(m)?;
    let vars = [Var::C, Var::B];
    let mut acc = MultiPoly::one(&vars);
    if m % 2 == 1 {
        acc = &c() * &c() - &b() * &b();
        for l in 1..=((m - 1) / 2) as i64 {
            acc = acc * quartic_block(2 * l);
        }
    } else {
        for l in 1..=(m / 2) as i64 {
            acc = acc * quartic_block(2 * l - 1);
        }
    }
    Ok(acc)
}

/// `A_{2m} - G_{2m}` is the zero polynomial in `C, B, Q`.
pub fn verify_factorization(m: usize) -> Result<VerificationReport> {
    verify_factorization_with(m, None)
}

pub fn verify_factorization_with(
    m: usize,
    perturbation: Option<A2mPerturbation>,
) -> Result<VerificationReport> {
    let m = order(m)?;
    let mut params = vec![("m", m.to_string())];
    if let Some(A2mPerturbation::Binomial { ell, delta }) = perturbation {
        params.push(("perturbed_ell", ell.to_string()));
        params.push(("perturbed_delta", delta.to_string()));
    }
    VerificationReport::run("factorization", params, || {
        let a = build_a2m_with(m, perturbation)?;
        let g = build_g2m(m)?;
        Ok(witness_of(&(a - g)))
    })
}

pub fn verify_paired_form(m: usize) -> Result<VerificationReport> {
    let m = order(m)?;
    VerificationReport::run("paired_form", [("m", m)], || {
        let paired = build_g2m_paired(m)?;
        let g = build_g2m(m)?;
        Ok(witness_of(&(paired - g)))
    })
}

/// `A_{2(m+1)}(C,B,Q) = A_{2m}(C-1,B,Q-1) (C+m-B)(C+m+B)`.
pub fn verify_appendix_recursion(m: usize) -> Result<VerificationReport> {
    verify_appendix_recursion_with(m, None)
}

pub fn verify_appendix_recursion_with(
    m: usize,
    perturbation: Option<RecursionPerturbation>,
) -> Result<VerificationReport> {
    let m = order(m)?;
    let mut params = vec![("m", m.to_string())];
    if perturbation.is_some() {
        params.push(("perturbed", "repeated_factor".to_string()));
    }
    VerificationReport::run("appendix_recursion", params, || {
        let next = build_a2m(m + 1)?;
        let shifted = build_a2m(m)?
            .substitute_shift(Var::C, &int(-1))?
            .substitute_shift(Var::Q, &int(-1))?;
        let cm = c().add_constant(&int(m as i64));
        let multiplier = match perturbation {
            None => (&cm - &b()) * (&cm + &b()),
            Some(RecursionPerturbation::RepeatedFactor) => (&cm - &b()).pow(2),
        };
        Ok(witness_of(&(next - shifted * multiplier)))
    })
}

/// `G_{2m}(C, 1/2)` as a polynomial in `Delta`, via `C^2 = Delta + ((n-1)/2)^2`.
pub fn sphere_specialize(m: usize, n: i64) -> Result<MultiPoly> {
    let m = order(m)?;
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let in_c = build_g2m(m)?.substitute(Var::B, &MultiPoly::constant(&[], half(1)))?;
    let shift = half(n - 1) * half(n - 1);
    let c_squared = MultiPoly::var(Var::Delta).add_constant(&shift);
    let mut out = MultiPoly::zero(&[Var::Delta]);
    for (e, coef) in in_c.sorted_terms() {
        let power = e[0];
        if power % 2 == 1 {
            return Err(Error::OddPower { var: Var::C, power });
        }
        out = out + c_squared.pow(power / 2).scale(coef);
    }
    Ok(out)
}

/// `c_l = (n+2l-2)(n-2l) / (4n(n-1))`.
pub fn gover_coefficient(l: i64, n: i64) -> BigRational {
    BigRational::new(
        ((n + 2 * l - 2) * (n - 2 * l)).into(),
        (4 * n * (n - 1)).into(),
    )
}

/// `prod_{l=1}^m (Delta + c_l n(n-1))`.
pub fn gover_product(m: usize, n: i64) -> Result<MultiPoly> {
    let m = order(m)?;
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let sc = int(n * (n - 1));
    let delta = MultiPoly::var(Var::Delta);
    Ok(
        (1..=m as i64).fold(MultiPoly::one(&[Var::Delta]), |acc, l| {
            acc * delta.add_constant(&(gover_coefficient(l, n) * &sc))
        }),
    )
}

pub fn verify_gover_form(m: usize, n: i64) -> Result<VerificationReport> {
    let m = order(m)?;
    VerificationReport::run("gover_form", [("m", m as i64), ("n", n)], || {
        Ok(witness_of(
            &(sphere_specialize(m, n)? - gover_product(m, n)?),
        ))
    })
}

fn lambda() -> MultiPoly {
    MultiPoly::var(Var::Lambda)
}
fn mu() -> MultiPoly {
    MultiPoly::var(Var::Mu)
}

/// Yamabe operator `lambda - mu + (n-2) Scal / (4(n-1))`, with `lambda` the
/// `S^q` Laplacian eigenvalue and `mu` the `S^p` one.
pub fn yamabe_poly(ctx: &CurvatureContext) -> Result<MultiPoly> {
    let k = ctx.kappa()? * ctx.scal();
    Ok((lambda() - mu()).add_constant(&k))
}

/// The restricted square of the ambient d'Alembertian, term by term.
pub fn paneitz_poly_explicit(ctx: &CurvatureContext) -> Result<MultiPoly> {
    let ks = ctx.kappa()? * ctx.scal();
    let n = ctx.n();
    let pq = int(ctx.p as i64 * ctx.q as i64);
    let one = BigRational::one();
    let d = lambda() - mu();
    let lam_coef = int(-2) * (&one - &ks);
    let mu_coef = int(2) * (-&one - &ks);
    let constant = &ks * &ks + int(n) - BigRational::new((n * n).into(), 2.into()) + pq;
    Ok(d.pow(2) + lambda().scale(&lam_coef) + mu().scale(&mu_coef))
        .map(|p| p.add_constant(&constant))
}

/// `Delta^2 + delta T d + (n-4) Q / 2`, assembled from the curvature data
/// `J = Scal/(2(n-1))` and `|V|^2 = n/4` on the product of spheres.
pub fn paneitz_poly_curvature(ctx: &CurvatureContext) -> Result<MultiPoly> {
    let j = ctx.curvature_j()?;
    let n = ctx.n();
    let v_norm_sq = BigRational::new(n.into(), 4.into());
    let d = lambda() - mu();
    // delta T d with T = (n-2)J - 4V acting on one-forms.
    let delta_t_d = d.scale(&(int(n - 2) * &j)) - (lambda() + mu()).scale(&int(2));
    // Q = (n/2) J^2 - 2|V|^2 + Delta J, and J is constant.
    let q_curv = BigRational::new(n.into(), 2.into()) * &j * &j - int(2) * v_norm_sq;
    let q_term = BigRational::new((n - 4).into(), 2.into()) * q_curv;
    Ok((d.pow(2) + delta_t_d).add_constant(&q_term))
}

pub fn verify_paneitz_claim(ctx: &CurvatureContext) -> Result<VerificationReport> {
    VerificationReport::run("paneitz_claim", [("p", ctx.p), ("q", ctx.q)], || {
        Ok(witness_of(
            &(paneitz_poly_explicit(ctx)? - paneitz_poly_curvature(ctx)?),
        ))
    })
}

/// `G_{2m}` is invariant under `C -> -C` and under `B -> -B`.
pub fn verify_g_symmetries(m: usize) -> Result<VerificationReport> {
    let m = order(m)?;
    VerificationReport::run("g_symmetries", [("m", m)], || {
        let g = build_g2m(m)?;
        for v in [Var::C, Var::B] {
            let diff = g.negate_var(v)? - &g;
            if let Some(w) = witness_of(&diff) {
                return Ok(Some(format!("{v} -> -{v}: {w}")));
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Assignment};

    fn poly(s: &str, vars: &[Var]) -> MultiPoly {
        MultiPoly::parse(s, vars).unwrap()
    }
    const CB: [Var; 2] = [Var::C, Var::B];
    const CBQ: [Var; 3] = [Var::C, Var::B, Var::Q];
    const LM: [Var; 2] = [Var::Lambda, Var::Mu];

    /// The defining sum of `A_{2m}` evaluated directly on numbers.
    fn a2m_numeric(m: i64, cv: &BigRational, bv: &BigRational, qv: &BigRational) -> BigRational {
        let pv = int(m - 1) - qv;
        let chain = |x: &BigRational, step: i64, len: i64| {
            (0..len).fold(BigRational::one(), |acc, i| acc * (x + int(step * i)))
        };
        let mut binom = BigRational::one();
        let mut total = BigRational::zero();
        for ell in 0..=m {
            let k = m - ell;
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            total += sign
                * &binom
                * chain(&(cv + qv), -2, ell)
                * chain(&(cv - qv), 2, ell)
                * chain(&(bv + &pv), -2, k)
                * chain(&(bv - &pv), 2, k);
            binom = binom * int(m - ell) / int(ell + 1);
        }
        total
    }

    fn g2m_numeric(m: i64, cv: &BigRational, bv: &BigRational) -> BigRational {
        (0..m).fold(BigRational::one(), |acc, i| {
            let off = int(m - 1 - 2 * i);
            acc * (cv + bv + &off) * (cv - bv + &off)
        })
    }

    #[test]
    fn numeric_oracle_agrees_with_product_form() {
        // Independent route: the defining sum on rational sample points.
        let samples = [int(0), int(3), rat(1, 2).unwrap(), rat(-7, 3).unwrap()];
        for m in 1..=6 {
            for cv in &samples {
                for bv in &samples {
                    for qv in &samples {
                        assert_eq!(a2m_numeric(m, cv, bv, qv), g2m_numeric(m, cv, bv));
                    }
                }
            }
        }
    }

    #[test]
    fn a2m_matches_numeric_sum() {
        let pts = [int(2), rat(5, 2).unwrap(), int(-1)];
        for m in 1..=5 {
            let a = build_a2m(m).unwrap();
            for cv in &pts {
                for qv in &pts {
                    let at = Assignment::from([
                        (Var::C, cv.clone()),
                        (Var::B, rat(1, 3).unwrap()),
                        (Var::Q, qv.clone()),
                    ]);
                    assert_eq!(
                        a.eval(&at).unwrap(),
                        a2m_numeric(m as i64, cv, &rat(1, 3).unwrap(), qv)
                    );
                }
            }
        }
    }

    #[test]
    fn a2m_small_orders() {
        assert_eq!(build_a2m(1).unwrap(), poly("C^2 - B^2", &CBQ));
        let m2 = poly("C^4 - 2 C^2 B^2 + B^4 - 2 C^2 - 2 B^2 + 1", &CBQ);
        assert_eq!(build_a2m(2).unwrap(), m2);
        assert_eq!(build_a2m(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn a2m_top_degree_is_power_of_c2_minus_b2() {
        let base = poly("C^2 - B^2", &CBQ);
        for m in 1..=6 {
            let a = build_a2m(m).unwrap();
            let d = 2 * m as u32;
            assert_eq!(a.total_degree(), Some(d));
            assert_eq!(a.homogeneous_part(d), base.pow(m as u32));
        }
    }

    #[test]
    fn g2m_small_orders() {
        assert_eq!(build_g2m(1).unwrap(), poly("C^2 - B^2", &CB));
        assert_eq!(
            build_g2m(2).unwrap(),
            poly("C^4 - 2 C^2 B^2 + B^4 - 2 C^2 - 2 B^2 + 1", &CB)
        );
        assert!(build_g2m(0).is_err());
    }

    #[test]
    fn g2m_vanishes_on_diagonal_for_odd_m() {
        for m in [1usize, 3, 5] {
            let g = build_g2m(m).unwrap();
            for x in [int(0), int(4), rat(3, 2).unwrap()] {
                let at = Assignment::from([(Var::C, x.clone()), (Var::B, x)]);
                assert!(g.eval(&at).unwrap().is_zero(), "m = {m}");
            }
        }
        // m = 2 at C = B = 3: (6+1)(6-1)(0+1)(0-1) = -35.
        let at = Assignment::from([(Var::C, int(3)), (Var::B, int(3))]);
        assert_eq!(build_g2m(2).unwrap().eval(&at).unwrap(), int(-35));
    }

    #[test]
    fn g2m_degree_and_parity() {
        let base = poly("C^2 - B^2", &CB);
        for m in 1..=8 {
            let g = build_g2m(m).unwrap();
            assert_eq!(g.total_degree(), Some(2 * m as u32));
            assert_eq!(g.homogeneous_part(2 * m as u32), base.pow(m as u32));
            for (e, _) in g.sorted_terms() {
                assert!(e[0] % 2 == 0 && e[1] % 2 == 0, "odd power in m = {m}");
            }
        }
    }

    #[test]
    fn paired_form_examples() {
        assert_eq!(build_g2m_paired(1).unwrap(), poly("C^2 - B^2", &CB));
        assert_eq!(
            build_g2m_paired(2).unwrap(),
            poly("C^4 - 2 B^2 C^2 - 2 C^2 + B^4 - 2 B^2 + 1", &CB)
        );
        let m3 = poly("C^2 - B^2", &CB) * poly("C^4 - 2 B^2 C^2 - 8 C^2 + B^4 - 8 B^2 + 16", &CB);
        assert_eq!(build_g2m_paired(3).unwrap(), m3);
        for m in [1, 2, 5] {
            assert!(verify_paired_form(m).unwrap().passed());
        }
    }

    #[test]
    fn factorization_small_orders_and_negative_control() {
        assert!(verify_factorization(1).unwrap().passed());
        assert!(verify_factorization(2).unwrap().passed());
        let bad =
            verify_factorization_with(3, Some(A2mPerturbation::Binomial { ell: 1, delta: 1 }))
                .unwrap();
        assert!(!bad.passed());
        assert!(bad.witness.is_some());
        assert!(build_a2m_with(2, Some(A2mPerturbation::Binomial { ell: 3, delta: 1 })).is_err());
    }

    #[test]
    fn recursion_small_orders_and_negative_control() {
        assert!(verify_appendix_recursion(1).unwrap().passed());
        assert!(verify_appendix_recursion(2).unwrap().passed());
        let bad =
            verify_appendix_recursion_with(1, Some(RecursionPerturbation::RepeatedFactor)).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn recursion_m1_by_hand() {
        // ((C-1)^2 - B^2)((C+1)^2 - B^2) = G_4.
        let lhs = poly("C^2 - 2 C + 1 - B^2", &CB) * poly("C^2 + 2 C + 1 - B^2", &CB);
        assert_eq!(lhs, build_g2m(2).unwrap());
    }

    #[test]
    fn sphere_specialize_examples() {
        let d = [Var::Delta];
        assert_eq!(sphere_specialize(1, 4).unwrap(), poly("Delta + 2", &d));
        assert_eq!(sphere_specialize(1, 2).unwrap(), poly("Delta", &d));
        assert_eq!(
            sphere_specialize(2, 4).unwrap(),
            poly("Delta^2 + 2 Delta", &d)
        );
        assert_eq!(gover_coefficient(1, 4), rat(1, 6).unwrap());
        assert_eq!(gover_coefficient(2, 4), int(0));
        assert!(sphere_specialize(1, 1).is_err());
        for (m, n) in [(1, 4), (3, 3), (1, 2)] {
            assert!(verify_gover_form(m, n).unwrap().passed());
        }
    }

    #[test]
    fn yamabe_examples() {
        let y = |p, q| yamabe_poly(&CurvatureContext::new(p, q).unwrap()).unwrap();
        assert_eq!(y(3, 3), poly("lambda - mu", &LM));
        assert_eq!(y(1, 3), poly("lambda - mu + 1", &LM));
        assert_eq!(y(2, 2), poly("lambda - mu", &LM));
        let low = CurvatureContext::new(0, 1).unwrap();
        assert_eq!(yamabe_poly(&low), Err(Error::DimensionTooSmall(1)));
        assert!(CurvatureContext::new(1, 0).is_err());
    }

    #[test]
    fn scalar_curvature_two_ways() {
        for p in 0..8 {
            for q in 1..8 {
                let ctx = CurvatureContext::new(p, q).unwrap();
                assert_eq!(ctx.scal(), ctx.scal_from_factors());
            }
        }
    }

    #[test]
    fn paneitz_examples() {
        let ctx11 = CurvatureContext::new(1, 1).unwrap();
        let ctx13 = CurvatureContext::new(1, 3).unwrap();
        let want11 = poly("lambda^2 - 2 lambda mu + mu^2 - 2 lambda - 2 mu + 1", &LM);
        let want13 = poly("lambda^2 - 2 lambda mu + mu^2 - 4 mu", &LM);
        assert_eq!(paneitz_poly_explicit(&ctx11).unwrap(), want11);
        assert_eq!(paneitz_poly_explicit(&ctx13).unwrap(), want13);
        assert_eq!(paneitz_poly_curvature(&ctx11).unwrap(), want11);
        assert_eq!(paneitz_poly_curvature(&ctx13).unwrap(), want13);
        let at = Assignment::from([(Var::Lambda, int(0)), (Var::Mu, int(0))]);
        assert_eq!(
            paneitz_poly_explicit(&ctx13).unwrap().eval(&at).unwrap(),
            int(0)
        );
        assert!(paneitz_poly_explicit(&CurvatureContext::new(0, 1).unwrap()).is_err());
        assert!(verify_paneitz_claim(&ctx13).unwrap().passed());
    }

    #[test]
    fn symmetries() {
        for m in [1, 2, 7] {
            assert!(verify_g_symmetries(m).unwrap().passed());
        }
    }
}
