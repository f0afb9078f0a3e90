//! Eigenvalues and multiplicities on sphere factors and on `S^p x S^q`.
//!
//! On `S^q` the Laplacian has eigenvalues `j(q-1+j)` on spherical harmonics
//! of degree `j`, so `C` takes the value `j + (q-1)/2`; likewise `B` takes
//! `k + (p-1)/2` on `S^p`. Operators built from `C` and `B` become diagonal
//! with eigenvalues obtained by substitution.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, fmt_exact, half, int, Assignment, MultiPoly, Var};
use crate::operators::{
    build_a2m, build_g2m, paneitz_poly_explicit, yamabe_poly, CurvatureContext,
};
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereModeRow {
    pub j: u32,
    pub laplacian_eigenvalue: BigRational,
    pub c_value: BigRational,
    pub multiplicity: BigInt,
}

/// Dimension of the degree-`j` spherical harmonics on `S^q`:
/// `binom(j+q, q) - binom(j+q-2, q)`.
pub fn harmonic_multiplicity(j: u32, q: u32) -> BigInt {
    let (j, q) = (j as i64, q as i64);
    binomial(j + q, q) - binomial(j + q - 2, q)
}

pub fn sphere_modes(q: u32, jmax: u32) -> Result<Vec<SphereModeRow>> {
    if q == 0 {
        return Err(Error::ZeroSphere);
    }
    let shift = half(q as i64 - 1);
    Ok((0..=jmax)
        .map(|j| SphereModeRow {
            j,
            laplacian_eigenvalue: int(j as i64 * (q as i64 - 1 + j as i64)),
            c_value: int(j as i64) + &shift,
            multiplicity: harmonic_multiplicity(j, q),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumRow {
    pub j: u32,
    pub k: u32,
    pub c: BigRational,
    pub b: BigRational,
    pub eigenvalue: BigRational,
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub p: u32,
    pub q: u32,
    pub m: usize,
    pub rows: Vec<SpectrumRow>,
}

/// Serialized row: every number is an exact string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub j: u32,
    pub k: u32,
    pub c: String,
    pub b: String,
    pub eigenvalue: String,
    pub multiplicity: String,
}

impl From<&SpectrumRow> for SpectrumRecord {
    fn from(r: &SpectrumRow) -> Self {
        SpectrumRecord {
            j: r.j,
            k: r.k,
            c: fmt_exact(&r.c),
            b: fmt_exact(&r.b),
            eigenvalue: fmt_exact(&r.eigenvalue),
            multiplicity: r.multiplicity.to_string(),
        }
    }
}

impl SpectrumTable {
    pub fn records(&self) -> Vec<SpectrumRecord> {
        self.rows.iter().map(SpectrumRecord::from).collect()
    }

    /// JSON array of `{j, k, c, b, eigenvalue, multiplicity}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.records()).expect("records serialize")
    }

    /// CSV with header `j,k,c,b,eigenvalue,multiplicity`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for rec in self.records() {
            w.serialize(rec).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn row(&self, j: u32, k: u32) -> Option<&SpectrumRow> {
        self.rows.iter().find(|r| r.j == j && r.k == k)
    }
}

fn cb_assignment(c: &BigRational, b: &BigRational) -> Assignment {
    Assignment::from([(Var::C, c.clone()), (Var::B, b.clone())])
}

fn check_factors(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::ZeroSphere);
    }
    Ok(())
}

/// Values of an operator polynomial in `C, B` on all modes `j <= jmax`,
/// `k <= kmax`, with `j` indexing `S^q` and `k` indexing `S^p`.
fn tabulate(
    poly: &MultiPoly,
    p: u32,
    q: u32,
    m: usize,
    jmax: u32,
    kmax: u32,
) -> Result<SpectrumTable> {
    check_factors(p, q)?;
    let cs = sphere_modes(q, jmax)?;
    let bs = sphere_modes(p, kmax)?;
    let mut rows = Vec::with_capacity(cs.len() * bs.len());
    for cj in &cs {
        for bk in &bs {
            rows.push(SpectrumRow {
                j: cj.j,
                k: bk.j,
                c: cj.c_value.clone(),
                b: bk.c_value.clone(),
                eigenvalue: poly.eval(&cb_assignment(&cj.c_value, &bk.c_value))?,
                multiplicity: &cj.multiplicity * &bk.multiplicity,
            });
        }
    }
    Ok(SpectrumTable { p, q, m, rows })
}

/// Eigenvalues of `G_{2m}` on `S^p x S^q`.
pub fn product_spectrum(p: u32, q: u32, m: usize, jmax: u32, kmax: u32) -> Result<SpectrumTable> {
    check_factors(p, q)?;
    tabulate(&build_g2m(m)?, p, q, m, jmax, kmax)
}

/// Compares the `G_{2m}` spectrum against a polynomial in `lambda, mu`
/// evaluated at the factor Laplacian eigenvalues.
fn crosscheck_against(
    claim: &str,
    m: usize,
    reference: impl Fn(&CurvatureContext) -> Result<MultiPoly>,
    p: u32,
    q: u32,
    jmax: u32,
    kmax: u32,
) -> Result<VerificationReport> {
    check_factors(p, q)?;
    let ctx = CurvatureContext::new(p, q)?;
    let params = [("p", p), ("q", q), ("jmax", jmax), ("kmax", kmax)];
    VerificationReport::run(claim, params, || {
        let reference = reference(&ctx)?;
        let table = product_spectrum(p, q, m, jmax, kmax)?;
        let lams = sphere_modes(q, jmax)?;
        let mus = sphere_modes(p, kmax)?;
        for row in &table.rows {
            let lam = &lams[row.j as usize].laplacian_eigenvalue;
            let mu = &mus[row.k as usize].laplacian_eigenvalue;
            let at = Assignment::from([(Var::Lambda, lam.clone()), (Var::Mu, mu.clone())]);
            let expected = reference.eval(&at)?;
            if expected != row.eigenvalue {
                return Ok(Some(format!(
                    "mode (j={}, k={}): spectral {} vs operator {}",
                    row.j,
                    row.k,
                    fmt_exact(&row.eigenvalue),
                    fmt_exact(&expected)
                )));
            }
        }
        Ok(None)
    })
}

/// `G_2` spectrum against the Yamabe operator.
pub fn crosscheck_yamabe(p: u32, q: u32, jmax: u32, kmax: u32) -> Result<VerificationReport> {
    crosscheck_against("crosscheck_yamabe", 1, yamabe_poly, p, q, jmax, kmax)
}

/// `G_4` spectrum against the explicit Paneitz operator.
pub fn crosscheck_paneitz(p: u32, q: u32, jmax: u32, kmax: u32) -> Result<VerificationReport> {
    crosscheck_against(
        "crosscheck_paneitz",
        2,
        paneitz_poly_explicit,
        p,
        q,
        jmax,
        kmax,
    )
}

/// `A_{2m}` evaluated at `(c_j, b_k, Q = q_sample)` against the `G_{2m}`
/// spectrum, mode by mode.
pub fn crosscheck_a_numeric(
    p: u32,
    q: u32,
    m: usize,
    q_sample: &BigRational,
    jmax: u32,
    kmax: u32,
) -> Result<VerificationReport> {
    check_factors(p, q)?;
    let params = [
        ("p", p.to_string()),
        ("q", q.to_string()),
        ("m", m.to_string()),
        ("Qsample", fmt_exact(q_sample)),
        ("jmax", jmax.to_string()),
        ("kmax", kmax.to_string()),
    ];
    VerificationReport::run("crosscheck_a_numeric", params, || {
        let a = build_a2m(m)?;
        let table = product_spectrum(p, q, m, jmax, kmax)?;
        for row in &table.rows {
            let mut at = cb_assignment(&row.c, &row.b);
            at.insert(Var::Q, q_sample.clone());
            let value = a.eval(&at)?;
            if value != row.eigenvalue {
                return Ok(Some(format!(
                    "mode (j={}, k={}): A = {} vs G = {}",
                    row.j,
                    row.k,
                    fmt_exact(&value),
                    fmt_exact(&row.eigenvalue)
                )));
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::{Signed, Zero};

    /// Harmonic dimension by enumeration: monomials of degree `j` in `q+1`
    /// variables minus those of degree `j-2`.
    fn count_monomials(deg: i64, nvars: u32) -> u64 {
        if deg < 0 {
            return 0;
        }
        if nvars == 1 {
            return 1;
        }
        (0..=deg)
            .map(|first| count_monomials(deg - first, nvars - 1))
            .sum()
    }

    fn mult_oracle(j: u32, q: u32) -> u64 {
        count_monomials(j as i64, q + 1) - count_monomials(j as i64 - 2, q + 1)
    }

    #[test]
    fn multiplicity_formula_matches_enumeration() {
        for q in 1..=6 {
            for j in 0..=10 {
                assert_eq!(harmonic_multiplicity(j, q), BigInt::from(mult_oracle(j, q)));
            }
        }
    }

    #[test]
    fn circle_and_sphere_examples() {
        let s1 = sphere_modes(1, 4).unwrap();
        let m: Vec<String> = s1.iter().map(|r| r.multiplicity.to_string()).collect();
        assert_eq!(m, ["1", "2", "2", "2", "2"]);
        for r in &s1 {
            assert_eq!(r.laplacian_eigenvalue, int((r.j * r.j) as i64));
        }
        for r in sphere_modes(2, 8).unwrap() {
            assert_eq!(r.multiplicity, BigInt::from(2 * r.j + 1));
        }
        let s3 = &sphere_modes(3, 1).unwrap()[1];
        assert_eq!(s3.laplacian_eigenvalue, int(3));
        assert_eq!(s3.c_value, int(2));
        assert_eq!(s3.multiplicity, BigInt::from(4));
        assert_eq!(sphere_modes(0, 3), Err(Error::ZeroSphere));
    }

    #[test]
    fn mode_row_invariants() {
        for q in 1..=6u32 {
            let rows = sphere_modes(q, 12).unwrap();
            let shift = half(q as i64 - 1);
            for w in rows.windows(2) {
                assert!(w[1].c_value > w[0].c_value);
            }
            for r in &rows {
                assert!(!r.c_value.is_negative());
                assert_eq!(
                    &r.c_value * &r.c_value,
                    &r.laplacian_eigenvalue + &shift * &shift
                );
                assert!(r.multiplicity >= BigInt::from(1));
                // Integral for odd q, properly half-integral for even q.
                assert_eq!(r.c_value.is_integer(), q % 2 == 1);
            }
        }
    }

    #[test]
    fn multiplicity_branching_recursion() {
        for q in 2..=6 {
            for j in 1..=10 {
                assert_eq!(
                    harmonic_multiplicity(j, q),
                    harmonic_multiplicity(j, q - 1) + harmonic_multiplicity(j - 1, q)
                );
            }
        }
    }

    #[test]
    fn product_spectrum_examples() {
        let t = product_spectrum(1, 1, 1, 4, 4).unwrap();
        for r in &t.rows {
            assert_eq!(r.eigenvalue, int((r.j * r.j) as i64 - (r.k * r.k) as i64));
        }
        let t = product_spectrum(1, 3, 1, 4, 4).unwrap();
        for r in &t.rows {
            let j1 = r.j as i64 + 1;
            assert_eq!(r.eigenvalue, int(j1 * j1 - (r.k * r.k) as i64));
            assert_eq!(
                r.multiplicity,
                harmonic_multiplicity(r.j, 3) * harmonic_multiplicity(r.k, 1)
            );
        }
        assert_eq!(t.row(0, 0).unwrap().eigenvalue, int(1));
        assert_eq!(t.rows.len(), 25);
        let keys: Vec<(u32, u32)> = t.rows.iter().map(|r| (r.j, r.k)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(product_spectrum(0, 3, 1, 2, 2), Err(Error::ZeroSphere));
        assert!(product_spectrum(1, 3, 0, 2, 2).is_err());
    }

    #[test]
    fn half_integral_json() {
        let t = product_spectrum(2, 2, 1, 1, 1).unwrap();
        let v = t.to_json();
        assert_eq!(v[0]["c"], "1/2");
        assert_eq!(v[0]["eigenvalue"], "0/1");
        assert_eq!(v[0]["multiplicity"], "1");
        // (3/2)^2 - (1/2)^2 = 2 at (j, k) = (1, 0), multiplicity 3.
        assert_eq!(v[2]["eigenvalue"], "2/1");
        assert_eq!(v[2]["multiplicity"], "3");
    }

    #[test]
    fn csv_columns_and_determinism() {
        let t = product_spectrum(1, 3, 1, 2, 2).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("j,k,c,b,eigenvalue,multiplicity"));
        assert_eq!(lines.next(), Some("0,0,1/1,0/1,1/1,1"));
        assert_eq!(csv.lines().count(), 10);
        assert_eq!(csv, product_spectrum(1, 3, 1, 2, 2).unwrap().to_csv());
    }

    #[test]
    fn crosscheck_examples() {
        for (p, q) in [(1, 1), (1, 3), (2, 2)] {
            assert!(crosscheck_yamabe(p, q, 6, 6).unwrap().passed());
            assert!(crosscheck_paneitz(p, q, 6, 6).unwrap().passed());
        }
        let t = product_spectrum(1, 3, 2, 0, 0).unwrap();
        assert!(t.rows[0].eigenvalue.is_zero());
    }

    #[test]
    fn a_numeric_samples() {
        for m in 1..=3usize {
            for sample in [int(0), rat(m as i64 - 1, 2).unwrap(), rat(7, 3).unwrap()] {
                assert!(crosscheck_a_numeric(2, 3, m, &sample, 4, 4)
                    .unwrap()
                    .passed());
            }
        }
    }
}
