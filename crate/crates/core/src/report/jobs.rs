use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use super::expected::q;
use super::{
    assemble_five_term, h2_sl_name, Comparison, ExpectedTable, ExternalConstant, ExternalRegistry, JobId,
    SplitReason, Value, VerificationReport, DEFAULT_GENUS_CAP, H1_UR, H2_M31_BOUND, H2_SP6, H3_SL3, PSI_SPLITTING,
};
use crate::coinvariants::{coinvariant_witness, coinvariants, wedge2_s2l_module};
use crate::error::{Error, Result};
use crate::fgab::{FgAbelianGroup, Order};
use crate::homology::{chain_boundaries, elementary_chain, homology_h1, ChainComplex};
use crate::johnson::{BElement, TorelliModel};
use crate::linalg::SparseVec;
use crate::presentation::{sl_generator_pairs, GroupPresentation, IntRepresentation};
use crate::symplectic::{lagrangian_generation_check, pair_rank, s2l_index, s2l_representation, ActingSet};

/// Largest genus the Torelli model's monomial encoding supports.
const TORELLI_MAX_GENUS: usize = 16;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub genus_cap: usize,
    pub registry: ExternalRegistry,
    pub expected: ExpectedTable,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self::with_genus_cap(DEFAULT_GENUS_CAP)
    }
}

impl VerifyOptions {
    pub fn with_genus_cap(genus_cap: usize) -> Self {
        VerifyOptions {
            genus_cap,
            registry: ExternalRegistry::standard(),
            expected: ExpectedTable::standard(genus_cap),
        }
    }
}

struct Builder<'a> {
    job: JobId,
    g: usize,
    opts: &'a VerifyOptions,
    comparisons: Vec<Comparison>,
    externals: Vec<ExternalConstant>,
    notes: Vec<String>,
    failed: bool,
}

impl<'a> Builder<'a> {
    fn new(job: JobId, g: usize, opts: &'a VerifyOptions) -> Self {
        Builder { job, g, opts, comparisons: vec![], externals: vec![], notes: vec![], failed: false }
    }

    fn compare(&mut self, quantity: &str, computed: Value) {
        let expected = self.opts.expected.get(self.job, self.g, quantity).cloned();
        let pass = expected.as_ref().is_some_and(|e| computed.matches(&e.value));
        if expected.is_none() {
            self.notes.push(format!("no expected entry for `{quantity}`"));
        }
        self.comparisons.push(Comparison { quantity: quantity.into(), computed, expected, pass });
    }

    fn group(&mut self, quantity: &str, computed: &FgAbelianGroup) {
        self.compare(quantity, Value::Group(computed.clone()));
    }

    fn external(&mut self, name: &str) -> Result<FgAbelianGroup> {
        let c = self.opts.registry.get(name)?.clone();
        let v = c.value.clone();
        if !self.externals.iter().any(|e| e.name == c.name) {
            self.externals.push(c);
        }
        Ok(v)
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn fail(&mut self, s: impl Into<String>) {
        self.failed = true;
        self.notes.push(s.into());
    }

    fn finish(self, start: Instant) -> VerificationReport {
        let pass = !self.failed && !self.comparisons.is_empty() && self.comparisons.iter().all(|c| c.pass);
        VerificationReport {
            job: self.job,
            genus: self.g,
            comparisons: self.comparisons,
            externals: self.externals,
            notes: self.notes,
            pass,
            wall_time: start.elapsed(),
        }
    }
}

fn s2l_complex(g: usize) -> Result<ChainComplex> {
    let rep = s2l_representation(g)?;
    chain_boundaries(rep.presentation(), &rep)
}

/// `<e12> ⊗ X3^2` in `C_1`.
fn h1_witness(g: usize) -> SparseVec {
    let e12 = sl_generator_pairs(g).iter().position(|&p| p == (1, 2)).expect("e12 is a generator");
    elementary_chain(e12, s2l_index(g, 2, 2), g * (g + 1) / 2)
}

/// `X3^2 ∧ X2^2 = -(X2^2 ∧ X3^2)` in `∧2(S2 L)`.
fn wedge2_witness(g: usize) -> SparseVec {
    let r = g * (g + 1) / 2;
    SparseVec::unit(pair_rank(r, s2l_index(g, 1, 1), s2l_index(g, 2, 2)), -BigInt::one())
}

fn torelli_coinvariants(g: usize, acting: ActingSet) -> Result<(FgAbelianGroup, crate::coinvariants::ActionModule)> {
    if g > TORELLI_MAX_GENUS {
        return Err(Error::UnsupportedGenus { genus: g, min: 3, max: TORELLI_MAX_GENUS });
    }
    let m = TorelliModel::new(g).action_module(&acting.elements(g))?;
    Ok((coinvariants(&m)?, m))
}

fn check_genus(g: usize, opts: &VerifyOptions) -> Result<()> {
    if g < 3 || g > opts.genus_cap {
        return Err(Error::UnsupportedGenus { genus: g, min: 3, max: opts.genus_cap });
    }
    Ok(())
}

/// Runs one job at genus `g` and compares against `opts.expected`.
///
/// ```
/// use mclag::report::{verify, JobId, VerifyOptions};
///
/// let r = verify(JobId::H1SlS2l, 3, &VerifyOptions::default()).unwrap();
/// assert!(r.pass);
/// assert_eq!(r.comparisons[0].computed.to_string(), "Z/2");
/// ```
pub fn verify(job: JobId, g: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    check_genus(g, opts)?;
    let start = Instant::now();
    let mut b = Builder::new(job, g, opts);
    match job {
        JobId::LagrangianGeneration => {
            let r = lagrangian_generation_check(g)?;
            b.compare(q::TWISTS_GENERATE, Value::Flag(r.generates_s2l));
            b.compare(q::WEDGE_RANK, Value::Count(r.wedge_rank as u64));
            b.compare(q::WEDGES_GENERATE, Value::Flag(r.wedges_generate));
            b.note("target generation verified; geometric realization of the commuting twists per the source argument");
        }
        JobId::TorelliCoinvS2l => {
            let (c, _) = torelli_coinvariants(g, ActingSet::S2l)?;
            b.group(q::TORELLI_S2L, &c);
        }
        JobId::H1Ilgb => {
            let (c, _) = torelli_coinvariants(g, ActingSet::S2l)?;
            b.group(q::TORELLI_S2L, &c);
            let r = lagrangian_generation_check(g)?;
            b.compare(q::WEDGES_GENERATE, Value::Flag(r.wedges_generate));
            b.note("H2(IL_{g,1}) -> H2(S2L) onto: target generation verified; geometric realization per the source argument");
            let s2l = FgAbelianGroup::free(g * (g + 1) / 2);
            let h1 = assemble_five_term(&c, &s2l, SplitReason::FreeQuotient)?;
            b.note(format!("five-term sequence: H1(I)_{{S2L}} = {c} injects, quotient S2L = {s2l} is free, so it splits"));
            b.group(q::H1_ILGB, &h1);
        }
        JobId::H0SlS2l => {
            let cx = s2l_complex(g)?;
            b.group(q::H0_SL_S2L, &cx.h0());
        }
        JobId::H1SlS2l => {
            let cx = s2l_complex(g)?;
            let (d2, d1, d0) = cx.dims();
            b.note(format!("chain complex Z^{d2} -> Z^{d1} -> Z^{d0}"));
            b.group(q::H1_SL_S2L, &cx.h1()?);
            if g == 3 {
                let w = cx.cycle_class_order(&h1_witness(g))?;
                b.compare(q::H1_WITNESS_ORDER, Value::Order(w.order));
                b.compare(q::H1_WITNESS_GENERATES, Value::Flag(w.generates_h1));
            }
        }
        JobId::CoinvWedge2S2l => {
            let m = wedge2_s2l_module(g, ActingSet::Sl)?;
            b.group(q::WEDGE2, &coinvariants(&m)?);
            if g == 3 {
                let w = coinvariant_witness(&m, &wedge2_witness(g))?;
                b.compare(q::WEDGE2_WITNESS_ORDER, Value::Order(w.order));
                b.compare(q::WEDGE2_WITNESS_GENERATES, Value::Flag(w.is_generator));
            }
        }
        JobId::PropUrspH2 => return report_prop_ursp_h2(g, opts),
        JobId::TorelliCoinvUrsp => {
            let (c, m) = torelli_coinvariants(g, ActingSet::Ursp)?;
            b.group(q::TORELLI_URSP, &c);
            if g == 3 {
                let model = TorelliModel::new(g);
                let (y1, y2, y3) = (g, g + 1, g + 2);
                let mask = (1 << y1) | (1 << y2) | (1 << y3);
                let t = model.class(&[(1, [y1, y2, y3])], &BElement::monomial(g, mask))?;
                let w = coinvariant_witness(&m, &model.coordinates(&t))?;
                b.compare(q::URSP_WITNESS_ORDER, Value::Order(w.order));
                b.compare(q::URSP_WITNESS_GENERATES, Value::Flag(w.is_generator));
            }
        }
        JobId::TorelliCoinvSp => {
            let (c, _) = torelli_coinvariants(g, ActingSet::UrspPlusRemark)?;
            b.note("acting set: generators of urSp(2g) and the matrix x_g -> x_g + y_g, which together generate Sp(2g,Z)");
            b.group(q::TORELLI_SP, &c);
        }
        JobId::H1Lgb => {
            let (c, _) = torelli_coinvariants(g, ActingSet::Ursp)?;
            b.group(q::TORELLI_URSP, &c);
            let h1_ur = b.external(H1_UR)?;
            let split = if g == 3 {
                b.external(PSI_SPLITTING)?;
                SplitReason::ExternalFact(opts.registry.get(PSI_SPLITTING)?.citation.clone())
            } else {
                SplitReason::ExternalFact(opts.registry.get(H1_UR)?.citation.clone())
            };
            let h1 = assemble_five_term(&c, &h1_ur, split)?;
            b.group(q::H1_LGB, &h1);
        }
        JobId::SlPerfect => {
            let p = GroupPresentation::sl(g)?;
            b.group(q::SL_ABELIANIZATION, &p.abelianized_h1());
            let rep = IntRepresentation::trivial(p.clone(), 1);
            b.group(q::SL_H1_TRIVIAL, &homology_h1(&p, &rep)?);
        }
    }
    Ok(b.finish(start))
}

/// The spectral-sequence argument for `H_1` and `H_2` of `urSp+(2g)`:
/// computed `E^2` entries combined with the external `H_2(SL(g, Z))`.
pub fn report_prop_ursp_h2(g: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    check_genus(g, opts)?;
    let start = Instant::now();
    let mut b = Builder::new(JobId::PropUrspH2, g, opts);

    let cx = s2l_complex(g)?;
    let e01 = cx.h0();
    let e11 = cx.h1()?;
    let p = GroupPresentation::sl(g)?;
    let e10 = homology_h1(&p, &IntRepresentation::trivial(p.clone(), 1))?;
    let w2 = wedge2_s2l_module(g, ActingSet::Sl)?;
    let e02 = coinvariants(&w2)?;
    b.group(q::E01, &e01);
    b.group(q::E10, &e10);
    b.group(q::E11, &e11);
    b.group(q::E02, &e02);

    if e10.is_trivial() && e01.is_trivial() {
        b.note("E2_{1,0} = E2_{0,1} = 0, so H1(urSp+(2g)) = 0");
        b.group(q::H1_URSP_PLUS, &FgAbelianGroup::trivial());
    } else {
        b.fail("E2_{1,0} or E2_{0,1} is nonzero; H1(urSp+(2g)) is not determined by this argument");
    }

    let h2_sl = b.external(&h2_sl_name(g))?;
    let h2 = if e11.is_trivial() && e02.is_trivial() {
        b.note("E2_{1,1} = E2_{0,2} = 0, so H2(urSp+(2g)) = E2_{2,0} = H2(SL(g,Z))");
        Some(h2_sl.clone())
    } else if g == 3 && e11 == FgAbelianGroup::cyclic(2) && e02 == FgAbelianGroup::cyclic(2) {
        let w = coinvariant_witness(&w2, &wedge2_witness(g))?;
        let stein = b.external(H2_SP6)?;
        b.external(H3_SL3)?;
        b.note("the splitting of urSp+(6) -> SL(3,Z) kills the differentials out of H3(SL(3,Z)) and gives H2 = F0 ⊕ H2(SL(3,Z))");
        b.note("F0 is an extension of E2_{1,1} = Z2 by E2_{0,2} = Z2");
        // "Suppose F0 ≅ Z4": the E02 generator would then be divisible by 2,
        // but it maps to a Z2 summand of H2(Sp(6,Z)), which is not.
        let stein_has_z2_summand = stein.invariant_factors().first().is_some_and(|d| *d == BigInt::from(2));
        if w.is_generator && w.order == Order::Finite(2.into()) && stein_has_z2_summand {
            b.note("F0 = Z4 is excluded: X3^2∧X2^2 generates E2_{0,2} and attains the Z2 summand of H2(Sp(6,Z)); so F0 = Z2 ⊕ Z2");
            Some(e11.direct_sum(&e02).direct_sum(&h2_sl))
        } else {
            b.fail("the extension F0 could not be resolved");
            None
        }
    } else {
        b.fail(format!("E2_{{1,1}} = {e11} and E2_{{0,2}} = {e02}: no argument available to assemble H2"));
        None
    };
    if let Some(h2) = h2 {
        b.group(q::H2_URSP_PLUS, &h2);
        b.note("H1(ur(2g)) = Z2 and the Z2 action on H2(urSp+(2g)) is trivial, so H2(ur(2g)) = H2(urSp+(2g))");
        b.external(H1_UR)?;
        b.group(q::H2_UR, &h2);
    }

    if g == 3 {
        let (sp, _) = torelli_coinvariants(g, ActingSet::UrspPlusRemark)?;
        let stein = b.external(H2_SP6)?;
        let bound = b.external(H2_M31_BOUND)?;
        if sp.is_trivial() && bound.iso_equal(&stein) {
            b.note("corollary: H1(I_{3,1})_{Sp(6,Z)} = 0 is computed, so H2(M_{3,1}) -> H2(Sp(6,Z)) is onto; with the external bound it is an isomorphism");
            b.group(q::H2_M31, &stein);
        } else {
            b.fail(format!("corollary not reached: H1(I_{{3,1}})_{{Sp}} = {sp}"));
        }
    }
    Ok(b.finish(start))
}

/// Runs every job at genus `g`, concurrently, in [`JobId::ALL`] order.
pub fn verify_all(g: usize, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    check_genus(g, opts)?;
    std::thread::scope(|s| {
        let handles: Vec<_> = JobId::ALL.iter().map(|&j| s.spawn(move || verify(j, g, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("verification job panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_range() {
        let o = VerifyOptions::default();
        assert_eq!(verify(JobId::SlPerfect, 2, &o), Err(Error::UnsupportedGenus { genus: 2, min: 3, max: 6 }));
        assert_eq!(verify(JobId::SlPerfect, 7, &o), Err(Error::UnsupportedGenus { genus: 7, min: 3, max: 6 }));
        assert!(verify(JobId::SlPerfect, 7, &VerifyOptions::with_genus_cap(7)).unwrap().pass);
    }

    #[test]
    fn missing_entry_fails() {
        let mut o = VerifyOptions::default();
        o.expected.remove(JobId::H0SlS2l, 3, q::H0_SL_S2L);
        let r = verify(JobId::H0SlS2l, 3, &o).unwrap();
        assert!(!r.pass);
        assert!(r.comparisons[0].expected.is_none());
    }

    #[test]
    fn missing_external_is_an_error() {
        let o = VerifyOptions { registry: ExternalRegistry::empty(), ..VerifyOptions::default() };
        assert_eq!(verify(JobId::H1Lgb, 4, &o), Err(Error::MissingExternal(H1_UR.into())));
        assert!(verify(JobId::H1SlS2l, 3, &o).unwrap().pass);
    }

    #[test]
    fn genus_three_prop() {
        let r = report_prop_ursp_h2(3, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{}", r.to_markdown());
        let names: Vec<&str> = r.externals.iter().map(|e| e.name.as_str()).collect();
        assert!(names.contains(&"H2(SL(3,Z))") && names.contains(&H2_SP6));
    }
}
