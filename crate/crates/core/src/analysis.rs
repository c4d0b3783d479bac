//! Everything computed about one code, bundled for reports and checks.

use serde::Serialize;

use crate::code::{CodeProfile, LinearCode};
use crate::erasure::{
    amds_closed_form, bounds_report, han_spectra, mds_closed_form, q_vector, AmdsInputs, BoundsReport, ErrorKind,
    ErrorPolynomial, PartialSpectra,
};
use crate::error::Result;
use crate::ghw::{spectra_matrix, support_matrix, SpectraMatrix, SupportMatrix, WeightHierarchy};
use crate::rational::{frac, Rational};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub code: LinearCode,
    pub support: SupportMatrix,
    pub spectra: SpectraMatrix,
    pub hierarchy: WeightHierarchy,
    pub profile: CodeProfile,
    pub amb: ErrorPolynomial,
    pub dec: ErrorPolynomial,
}

impl Analysis {
    pub fn new(code: &LinearCode) -> Result<Self> {
        let support = support_matrix(code)?;
        let spectra = spectra_matrix(code)?;
        let hierarchy = spectra.hierarchy();
        let profile = code.classify(&hierarchy)?;
        let q = code.q();
        Ok(Analysis {
            amb: q_vector(&support, q, ErrorKind::Amb),
            dec: q_vector(&support, q, ErrorKind::Dec),
            code: code.clone(),
            support,
            spectra,
            hierarchy,
            profile,
        })
    }

    pub fn poly(&self, kind: ErrorKind) -> &ErrorPolynomial {
        match kind {
            ErrorKind::Amb => &self.amb,
            ErrorKind::Dec => &self.dec,
        }
    }

    pub fn bounds(&self) -> Result<BoundsReport> {
        bounds_report(&self.code, &self.support, &self.spectra, &self.hierarchy, &self.profile)
    }

    /// The MDS or AMDS closed form, when the code is in one of those classes.
    pub fn closed_form(&self, kind: ErrorKind) -> Option<Result<ErrorPolynomial>> {
        let (n, k, q) = (self.code.n(), self.code.k(), self.code.q());
        if self.profile.is_mds() {
            Some(Ok(mds_closed_form(n, k, q, kind)))
        } else if self.profile.is_amds() {
            Some(
                AmdsInputs::from_spectra(&self.spectra, &self.profile)
                    .and_then(|inputs| amds_closed_form(n, k, q, &inputs, kind)),
            )
        } else {
            None
        }
    }

    /// Spectra rows predicted from the first zero Singleton defect, if any.
    pub fn han_rows(&self) -> Option<Result<PartialSpectra>> {
        let s = self.profile.proper_mds_index?;
        Some(han_spectra(self.code.n(), self.code.k(), self.code.q(), s))
    }

    pub fn report(&self) -> Result<AnalysisReport> {
        let agrees = |kind| self.closed_form(kind).transpose().map(|cf| cf.map(|p| p.coeffs == self.poly(kind).coeffs));
        let han_agrees = self.han_rows().transpose()?.map(|rows| {
            rows.rows.iter().enumerate().all(|(off, row)| {
                let i = rows.first_row + off;
                row.iter().enumerate().all(|(j, &v)| v == self.spectra.get(i, j))
            })
        });
        let grid: Vec<Rational> = (0..=20).map(|t| frac(t, 20)).collect();
        Ok(AnalysisReport {
            n: self.code.n(),
            k: self.code.k(),
            q: self.code.q(),
            hierarchy: self.hierarchy.clone(),
            profile: self.profile.clone(),
            amb: self.amb.clone(),
            dec: self.dec.clone(),
            closed_form_agrees: ClosedFormAgreement { amb: agrees(ErrorKind::Amb)?, dec: agrees(ErrorKind::Dec)? },
            han_agrees,
            nondecreasing_on_grid: Monotonicity {
                amb: nondecreasing_on(&self.amb, &grid)?,
                dec: nondecreasing_on(&self.dec, &grid)?,
            },
            bounds: self.bounds()?,
        })
    }
}

/// Whether `P(p)` never decreases along the given increasing grid.
pub fn nondecreasing_on(poly: &ErrorPolynomial, grid: &[Rational]) -> Result<bool> {
    let values = grid.iter().map(|p| poly.evaluate(p)).collect::<Result<Vec<_>>>()?;
    Ok(values.windows(2).all(|w| w[0] <= w[1]))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormAgreement {
    pub amb: Option<bool>,
    pub dec: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Monotonicity {
    pub amb: bool,
    pub dec: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub hierarchy: WeightHierarchy,
    pub profile: CodeProfile,
    pub amb: ErrorPolynomial,
    pub dec: ErrorPolynomial,
    pub closed_form_agrees: ClosedFormAgreement,
    pub han_agrees: Option<bool>,
    /// Observed on `p = 0, 1/20, ..., 1`; reported, not guaranteed.
    pub nondecreasing_on_grid: Monotonicity,
    pub bounds: BoundsReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn report_for_small_codes() {
        let e = &catalog::lookup("amds-3-2").unwrap()[0];
        let a = Analysis::new(&e.code).unwrap();
        let r = a.report().unwrap();
        assert_eq!(r.closed_form_agrees.amb, Some(true));
        assert_eq!(r.closed_form_agrees.dec, Some(true));
        assert_eq!(r.han_agrees, Some(true));
        assert!(r.nondecreasing_on_grid.amb);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["amb"]["Q"], serde_json::json!(["0", "1", "3", "1"]));
        assert_eq!(v["dec"]["Q"], serde_json::json!(["0", "1/2", "3/2", "3/4"]));
        assert_eq!(v["profile"]["class"]["class"], "AMDS");
    }

    #[test]
    fn no_closed_form_for_other_codes() {
        let f = crate::gf::make_field(2).unwrap();
        // d_1 = 1 with n - k = 3: Singleton defect 3
        let c = LinearCode::from_generator(&f, &[[1u32, 0, 0, 0, 0], [0, 1, 1, 1, 1]]).unwrap();
        let a = Analysis::new(&c).unwrap();
        assert!(a.closed_form(ErrorKind::Amb).is_none());
    }
}
