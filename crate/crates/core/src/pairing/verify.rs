//! Theorem verifiers. Each one evaluates both sides of an identity from the
//! definitions and reports them with the intermediate scalars.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::Serialize;

use crate::detline::residue_m;
use crate::error::{Error, Result};
use crate::euler::EulerStructure;
use crate::flat::FlatRep;
use crate::scalar::{fmt_q, minus_one_pow, q, Q};
use crate::torsion::{cohomological_torsion, HomologyOrientation, Twisted};

use super::{
    block_ratio, canonical_homology_orientation, det_char, semichar, semichar_trivial, sw_pairing, z_residue,
    CohomologicalPr, Manifold, PrContext,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theorem {
    #[serde(rename = "6.2")]
    PrEven,
    #[serde(rename = "6.4")]
    PrOdd,
    #[serde(rename = "7.1")]
    Multiplicativity,
    #[serde(rename = "7.2")]
    Duality,
    #[serde(rename = "9.4")]
    CohomologicalPr,
    #[serde(rename = "4.4")]
    Definiteness,
    #[serde(rename = "11.2")]
    Semichar,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::PrEven,
        Theorem::PrOdd,
        Theorem::Multiplicativity,
        Theorem::Duality,
        Theorem::CohomologicalPr,
        Theorem::Definiteness,
        Theorem::Semichar,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::PrEven => "6.2",
            Theorem::PrOdd => "6.4",
            Theorem::Multiplicativity => "7.1",
            Theorem::Duality => "7.2",
            Theorem::CohomologicalPr => "9.4",
            Theorem::Definiteness => "4.4",
            Theorem::Semichar => "11.2",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem {s:?}; expected one of 6.2, 6.4, 7.1, 7.2, 9.4, 4.4, 11.2")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub theorem: Theorem,
    pub hypotheses: Vec<String>,
    pub values: BTreeMap<String, String>,
    pub identities: Vec<Identity>,
    pub pass: bool,
}

impl Report {
    fn new(theorem: Theorem) -> Report {
        Report { theorem, hypotheses: Vec::new(), values: BTreeMap::new(), identities: Vec::new(), pass: true }
    }

    fn value(&mut self, name: &str, x: &Q) {
        self.values.insert(name.into(), fmt_q(x));
    }

    fn value_str(&mut self, name: &str, x: impl ToString) {
        self.values.insert(name.into(), x.to_string());
    }

    fn check(&mut self, name: &str, lhs: &Q, rhs: &Q) {
        self.check_str(name, fmt_q(lhs), fmt_q(rhs), lhs == rhs);
    }

    fn check_str(&mut self, name: &str, lhs: String, rhs: String, holds: bool) {
        self.pass &= holds;
        self.identities.push(Identity { name: name.into(), lhs, rhs, holds });
    }
}

/// Inputs of a verification run.
pub struct Setup<'a> {
    pub mf: &'a Manifold<'a>,
    pub f: &'a FlatRep,
    pub xi: &'a EulerStructure,
    pub eta: Option<HomologyOrientation>,
    /// Second summand for 7.1; `F^*` when absent.
    pub other: Option<&'a FlatRep>,
}

impl Setup<'_> {
    fn eta(&self) -> Result<HomologyOrientation> {
        match self.eta {
            Some(e) => Ok(e),
            None => canonical_homology_orientation(self.mf, None),
        }
    }

    fn m(&self) -> usize {
        self.mf.dim()
    }

    fn z(&self) -> u8 {
        z_residue(self.m(), self.f.rank(), semichar_trivial(self.mf.k))
    }
}

fn hypothesis(r: &mut Report, ok: bool, text: &str) -> Result<()> {
    if ok {
        r.hypotheses.push(text.into());
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("theorem {} needs: {text}", r.theorem)))
    }
}

pub fn verify(theorem: Theorem, s: &Setup) -> Result<Report> {
    let mut r = Report::new(theorem);
    hypothesis(&mut r, true, &format!("closed oriented manifold of odd dimension {}", s.m()))?;
    s.xi.validate(s.mf.k)?;
    match theorem {
        Theorem::PrEven | Theorem::PrOdd => pr_identity(&mut r, s)?,
        Theorem::Multiplicativity => multiplicativity(&mut r, s)?,
        Theorem::Duality => duality(&mut r, s)?,
        Theorem::CohomologicalPr => cohomological(&mut r, s)?,
        Theorem::Definiteness => definiteness(&mut r, s)?,
        Theorem::Semichar => semichar_identity(&mut r, s)?,
    }
    Ok(r)
}

fn sign_factor(z: u8) -> Q {
    minus_one_pow(z as u64)
}

fn pr_identity(r: &mut Report, s: &Setup) -> Result<()> {
    let k = s.mf.k;
    let even = s.f.rank() % 2 == 0;
    if r.theorem == Theorem::PrEven {
        hypothesis(r, even, "even-dimensional bundle")?;
    } else {
        hypothesis(r, !even, "odd-dimensional bundle")?;
    }
    let ctx = PrContext::new(s.mf, s.f)?;
    let eta = if even { None } else { Some(s.eta()?) };
    let tau = ctx.tw.euler_or_refined(s.xi, eta)?;
    let star = s.xi.involution(k)?;
    let tau_star = ctx.tw.euler_or_refined(&star, eta)?;
    let dc = det_char(k, s.f, s.xi)?;
    let z = if even { 0 } else { s.z() };
    r.value("tau", tau.coeff());
    r.value("tau(xi*)", tau_star.coeff());
    r.value("D", &ctx.duality.d);
    r.value("tau(F+F*)", &ctx.tau_sum);
    r.value("det_F(c(xi))", &dc);
    r.value_str("s(F)", ctx.duality.s);
    r.value_str("z", z);
    let lhs = ctx.pr(tau.coeff(), tau.coeff());
    r.check("<tau,tau>_PR = (-1)^z det_F(c(xi))", &lhs, &(sign_factor(z) * &dc));
    let lhs2 = ctx.pr(tau.coeff(), tau_star.coeff());
    r.check("<tau(xi),tau(xi*)>_PR = (-1)^z", &lhs2, &sign_factor(z));
    Ok(())
}

fn multiplicativity(r: &mut Report, s: &Setup) -> Result<()> {
    let k = s.mf.k;
    let dual = s.f.dual();
    let g = s.other.unwrap_or(&dual);
    let even = s.f.rank() % 2 == 0;
    hypothesis(r, s.f.rank() % 2 == g.rank() % 2, "summands of equal rank parity")?;
    let tf = Twisted::new(k, s.f.clone());
    let tg = Twisted::new(k, g.clone());
    let sum = Twisted::new(k, s.f.sum(g)?);
    let eta = if even { None } else { Some(s.eta()?) };
    let a = tf.euler_or_refined(s.xi, eta)?;
    let b = tg.euler_or_refined(s.xi, eta)?;
    let t = sum.euler(s.xi)?;
    let ratio = block_ratio(&sum, &tf, &tg)?;
    let lhs = t.coeff() / &ratio;
    let m = residue_m(tf.hdims(), tg.hdims())?;
    let rhs = minus_one_pow(m as u64) * a.coeff() * b.coeff();
    r.value("tau(F)", a.coeff());
    r.value("tau(F')", b.coeff());
    r.value("tau(F+F') in sum frame", t.coeff());
    r.value("block frame ratio", &ratio);
    r.value_str("M(H(F),H(F'))", m);
    r.check("tau(F+F') = mu(tau(F) x tau(F'))", &lhs, &rhs);
    Ok(())
}

fn duality(r: &mut Report, s: &Setup) -> Result<()> {
    let k = s.mf.k;
    let even = s.f.rank() % 2 == 0;
    let ctx = PrContext::new(s.mf, s.f)?;
    let eta = if even { None } else { Some(s.eta()?) };
    let star = s.xi.involution(k)?;
    let tau = ctx.tw.euler_or_refined(s.xi, eta)?;
    let tau_star = ctx.tw_star.euler_or_refined(&star, eta)?;
    let z = if even { 0 } else { s.z() };
    r.value("tau(xi;F)", tau.coeff());
    r.value("D", &ctx.duality.d);
    r.value("tau(xi*;F*)", tau_star.coeff());
    r.value_str("z", z);
    r.check("D(tau(xi;F)) = (-1)^z tau(xi*;F*)", &ctx.apply_d(tau.coeff()), &(sign_factor(z) * tau_star.coeff()));
    Ok(())
}

fn cohomological(r: &mut Report, s: &Setup) -> Result<()> {
    let k = s.mf.k;
    let even = s.f.rank() % 2 == 0;
    let eta = if even { None } else { Some(s.eta()?) };
    let cpr = CohomologicalPr::new(s.mf, s.f)?;
    let tb = cohomological_torsion(&cpr.coh, &cpr.star.tw, s.xi, eta)?;
    let dc = det_char(k, s.f, s.xi)?;
    let z = if even { 0 } else { s.z() };
    let t = &tb.value.coeff;
    r.value("tau_coh", t);
    r.value("det_F(c(xi))", &dc);
    r.value_str("z", z);
    let lhs = cpr.product(t, t);
    r.check("<tau_coh,tau_coh> = (-1)^z det_F(c(xi))", &lhs, &(sign_factor(z) * &dc));
    let a = cpr.star.tw.euler(s.xi)?.value.coeff;
    let alt = cpr.product_with(t, t, &a, &q(2));
    r.check("independent of the auxiliary elements", &alt, &lhs);
    Ok(())
}

fn definiteness(r: &mut Report, s: &Setup) -> Result<()> {
    let k = s.mf.k;
    let ctx = PrContext::new(s.mf, s.f)?;
    let tau = ctx.tw.euler(s.xi)?;
    let v = ctx.pr(tau.coeff(), tau.coeff());
    let positive = v.is_positive();
    let m = s.m();
    let expected = if m % 4 == 3 {
        true
    } else {
        let sw = sw_pairing(k, s.f, s.xi)? as usize;
        let schi = semichar_trivial(k);
        r.value_str("<w1(F) w_{m-1}(X),[X]>", sw);
        r.value_str("s chi(X)", schi);
        sw % 2 == (schi * s.f.rank()) % 2
    };
    r.value("<tau,tau>_PR", &v);
    r.check_str(
        "positive definite iff the criterion holds",
        if positive { "positive" } else { "negative" }.into(),
        if expected { "positive" } else { "negative" }.into(),
        positive == expected,
    );
    Ok(())
}

fn semichar_identity(r: &mut Report, s: &Setup) -> Result<()> {
    let k = s.mf.k;
    hypothesis(r, s.m() % 4 == 1, "dimension 1 mod 4")?;
    hypothesis(r, s.f.is_orthogonal(), "orthogonal monodromy")?;
    let tw = Twisted::new(k, s.f.clone());
    let lhs = semichar(&tw.homology);
    let sw = sw_pairing(k, s.f, s.xi)? as usize;
    let schi = semichar_trivial(k);
    r.value_str("s chi_F(X)", lhs);
    r.value_str("<w1(F) w_{m-1}(X),[X]>", sw);
    r.value_str("s chi(X)", schi);
    let rhs = sw + schi * s.f.rank();
    r.check_str("s chi_F = w + s chi dim F (mod 2)", (lhs % 2).to_string(), (rhs % 2).to_string(), lhs % 2 == rhs % 2);
    Ok(())
}

/// `(τ•)^2/|det_F c(ξ)|` for several Euler structures; all entries agree.
pub fn rs_independence(k: &crate::cw::SimplicialComplex, f: &FlatRep, xis: &[EulerStructure]) -> Result<Vec<Q>> {
    let eta = if f.rank() % 2 == 1 { Some(HomologyOrientation::new(1)?) } else { None };
    xis.iter().map(|xi| super::rs_companion(k, f, xi, eta)).collect()
}
