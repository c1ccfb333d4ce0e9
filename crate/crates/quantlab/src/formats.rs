//! JSON and CSV file formats.

use std::fs;
use std::path::Path;

use quantlab_core::algebra::{AlgebraElement, LatticeElement};
use quantlab_core::dolbeault::KernelBasis;
use quantlab_core::poly::Poly2;
use quantlab_core::sections::{GaussianSection, GaussianTerm};
use quantlab_core::symplectic::PolynomialOneForm;
use quantlab_core::trig::TrigPolynomial;
use quantlab_core::C64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One coefficient of an algebra element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRecord {
    pub n: i64,
    pub m: i64,
    pub re: f64,
    pub im: f64,
}

/// Records in lexicographic `(n, m)` order.
pub fn algebra_to_records(a: &AlgebraElement) -> Vec<CoefficientRecord> {
    let mut out: Vec<CoefficientRecord> =
        a.iter().map(|(g, z)| CoefficientRecord { n: g.n, m: g.m, re: z.re, im: z.im }).collect();
    out.sort_by_key(|r| (r.n, r.m));
    out
}

pub fn algebra_from_records(records: &[CoefficientRecord]) -> AlgebraElement {
    AlgebraElement::from_terms(records.iter().map(|r| (LatticeElement::new(r.n, r.m), C64::new(r.re, r.im))))
}

/// `A = P dx + Q dy` with `P[i][j]` the coefficient of `xⁱ yʲ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialRecord {
    #[serde(rename = "P")]
    pub p: Vec<Vec<f64>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<f64>>,
}

impl PotentialRecord {
    pub fn to_form(&self) -> Result<PolynomialOneForm, CliError> {
        Ok(PolynomialOneForm::new(Poly2::from_coeffs(self.p.clone()), Poly2::from_coeffs(self.q.clone()))?)
    }

    pub fn from_form(a: &PolynomialOneForm) -> Self {
        Self { p: a.p.coeffs().to_vec(), q: a.q.coeffs().to_vec() }
    }
}

/// `coeff·exp(−(πs/2)|r − center|² + i wave·r)` with `coeff = re + i·im`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianTermRecord {
    pub re: f64,
    pub im: f64,
    pub center: [f64; 2],
    pub wave: [f64; 2],
    pub s: f64,
}

impl From<&GaussianTerm> for GaussianTermRecord {
    fn from(t: &GaussianTerm) -> Self {
        Self { re: t.coeff.re, im: t.coeff.im, center: t.center, wave: t.wave, s: t.s }
    }
}

impl From<&GaussianTermRecord> for GaussianTerm {
    fn from(r: &GaussianTermRecord) -> Self {
        Self { coeff: C64::new(r.re, r.im), center: r.center, wave: r.wave, s: r.s }
    }
}

/// A section file holds either one section or a list of them.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SectionsFile {
    Many(Vec<Vec<GaussianTermRecord>>),
    One(Vec<GaussianTermRecord>),
}

impl SectionsFile {
    pub fn into_sections(self) -> Result<Vec<GaussianSection>, CliError> {
        let lists = match self {
            Self::Many(v) => v,
            Self::One(v) => vec![v],
        };
        if lists.is_empty() {
            return Err(CliError::usage("section file lists no sections"));
        }
        lists.iter().map(|terms| Ok(GaussianSection::new(terms.iter().map(GaussianTerm::from).collect())?)).collect()
    }
}

pub fn section_to_records(psi: &GaussianSection) -> Vec<GaussianTermRecord> {
    psi.terms().iter().map(GaussianTermRecord::from).collect()
}

/// One Fourier coefficient of a symbol `Σ c(j,k) e^{2πi(jx+ky)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierRecord {
    pub j: i64,
    pub k: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

pub fn symbol_from_table(table: &[FourierRecord]) -> TrigPolynomial {
    TrigPolynomial::from_terms(table.iter().map(|r| ((r.j, r.k), C64::new(r.re, r.im))))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("malformed JSON in {}: {e}", path.display())))
}

/// Serializes rows with a header line.
pub fn to_csv<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Kernel basis on the grid in row-major site order, with `re_k, im_k` columns per basis vector.
pub fn kernel_basis_csv(kb: &KernelBasis) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["i".to_string(), "j".to_string()];
    for k in 0..kb.dim() {
        header.push(format!("re_{k}"));
        header.push(format!("im_{k}"));
    }
    let io = |e: csv::Error| CliError::Io(e.into());
    w.write_record(&header).map_err(io)?;
    for site in 0..kb.m * kb.m {
        let mut row = vec![(site / kb.m).to_string(), (site % kb.m).to_string()];
        for k in 0..kb.dim() {
            let z = kb.vectors[(site, k)];
            row.push(z.re.to_string());
            row.push(z.im.to_string());
        }
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Parses `a..b` (inclusive), `a..b:step`, `a,b,c` or a single integer.
pub fn parse_int_list(spec: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::usage(format!("cannot parse integer list {spec:?}"));
    let spec = spec.trim();
    if let Some((lo, rest)) = spec.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (hi, step.trim().parse::<i64>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let (lo, hi) = (lo.trim().parse::<i64>().map_err(|_| bad())?, hi.trim().parse::<i64>().map_err(|_| bad())?);
        if step <= 0 || hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).step_by(step as usize).collect());
    }
    spec.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| bad())).collect()
}

/// Parses `a,b,c` or `lo..hi/count` (evenly spaced, both ends included).
pub fn parse_float_list(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::usage(format!("cannot parse number list {spec:?}"));
    let spec = spec.trim();
    if let Some((lo, rest)) = spec.split_once("..") {
        let (hi, count) = rest.split_once('/').ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        return match count {
            0 => Err(bad()),
            1 => Ok(vec![lo]),
            _ => Ok((0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()),
        };
    }
    let out: Vec<f64> = spec.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    if out.iter().any(|x| !x.is_finite()) {
        return Err(bad());
    }
    Ok(out)
}

/// Parses `n,m`.
pub fn parse_lattice(spec: &str) -> Result<LatticeElement, CliError> {
    let v = parse_int_list(spec)?;
    match v[..] {
        [n, m] => Ok(LatticeElement::new(n, m)),
        _ => Err(CliError::usage(format!("expected a lattice element n,m, got {spec:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("4..32:4").unwrap(), vec![4, 8, 12, 16, 20, 24, 28, 32]);
        assert_eq!(parse_int_list("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_int_list("1, 3").unwrap(), vec![1, 3]);
        assert!(parse_int_list("5..2").is_err());
        assert!(parse_int_list("x").is_err());
    }

    #[test]
    fn float_lists() {
        assert_eq!(parse_float_list("0..1/3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_float_list("1,1.7").unwrap(), vec![1.0, 1.7]);
        assert!(parse_float_list("0..1").is_err());
        assert!(parse_float_list("nan").is_err());
    }

    #[test]
    fn algebra_round_trip() {
        let a = AlgebraElement::harper();
        let recs = algebra_to_records(&a);
        assert!(recs.windows(2).all(|w| (w[0].n, w[0].m) < (w[1].n, w[1].m)));
        assert_eq!(algebra_from_records(&recs), a);
    }

    #[test]
    fn sections_file_shapes() {
        let one: SectionsFile = serde_json::from_str(r#"[{"re":1,"im":0,"center":[0,0],"wave":[0,0],"s":2}]"#).unwrap();
        assert_eq!(one.into_sections().unwrap().len(), 1);
        let many: SectionsFile =
            serde_json::from_str(r#"[[{"re":1,"im":0,"center":[0,0],"wave":[0,0],"s":2}],[{"re":0,"im":1,"center":[1,0],"wave":[0,0],"s":2}]]"#)
                .unwrap();
        assert_eq!(many.into_sections().unwrap().len(), 2);
    }

    #[test]
    fn potential_round_trip() {
        let a = PolynomialOneForm::torus_symmetric();
        assert_eq!(PotentialRecord::from_form(&a).to_form().unwrap(), a);
    }
}
