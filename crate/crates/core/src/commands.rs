//! Named computations over an input document, each producing a JSON report.
//! Shared by the command-line tool and the browser demo.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde_json::{json, Value};

use crate::chaincx::ChainComplex;
use crate::cw::{barycentric, IntegralH1, SimplicialComplex};
use crate::detline::DetElement;
use crate::document::{InputDocument, Resolved, SimplicialInput};
use crate::error::{Error, Result};
use crate::euler::EulerStructure;
use crate::fixtures;
use crate::flat::{cw_complex, FlatRep};
use crate::pairing::verify::{verify, Setup, Theorem};
use crate::pairing::{
    canonical_homology_orientation, det_char, rs_companion, rs_rhs, semichar, semichar_trivial, sw_pairing,
    z_residue, CohomologicalPr, Manifold, PrContext,
};
use crate::scalar::fmt_q;
use crate::selftest;
use crate::torsion::{
    cohomological_torsion, cw_torsion_euler, homology_transfer, transfer_ratio, Cohomology, HomologyOrientation,
    TorsionValue, Twisted,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Homology,
    Torsion,
    TorsionRefined,
    CohomologicalTorsion,
    CharClass,
    Involution,
    Pr,
    PrCohomological,
    Semichar,
    SwPairing,
    RsRhs,
    Subdivide,
    Verify(Theorem),
    Selftest,
}

const NAMES: [(&str, Command); 13] = [
    ("homology", Command::Homology),
    ("torsion", Command::Torsion),
    ("torsion-refined", Command::TorsionRefined),
    ("cohomological-torsion", Command::CohomologicalTorsion),
    ("char-class", Command::CharClass),
    ("involution", Command::Involution),
    ("pr", Command::Pr),
    ("pr-cohomological", Command::PrCohomological),
    ("semichar", Command::Semichar),
    ("sw-pairing", Command::SwPairing),
    ("rs-rhs", Command::RsRhs),
    ("subdivide", Command::Subdivide),
    ("selftest", Command::Selftest),
];

impl Command {
    /// Parses a command name; `verify` takes the theorem id as `theorem`.
    pub fn parse(name: &str, theorem: Option<&str>) -> Result<Command> {
        if name == "verify" {
            let id = theorem.ok_or_else(|| Error::Parse("verify needs a theorem id".into()))?;
            return Ok(Command::Verify(id.parse()?));
        }
        if theorem.is_some() {
            return Err(Error::Parse(format!("{name} takes no theorem id")));
        }
        name.parse()
    }

    pub fn names() -> Vec<&'static str> {
        let mut v: Vec<&str> = NAMES.iter().map(|(n, _)| *n).collect();
        v.push("verify");
        v
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, c)| *c)
            .ok_or_else(|| Error::Parse(format!("unknown command {s:?}; expected one of {}", Command::names().join(", "))))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Verify(t) => write!(f, "verify {t}"),
            c => f.write_str(NAMES.iter().find(|(_, x)| x == c).map(|(n, _)| *n).unwrap_or("?")),
        }
    }
}

/// A report, plus the verdict for commands that check something.
pub struct Outcome {
    pub report: Value,
    pub pass: Option<bool>,
}

impl Outcome {
    fn plain(report: Value) -> Outcome {
        Outcome { report, pass: None }
    }
}

pub fn run(cmd: Command, doc: &InputDocument, offset: Option<i64>) -> Result<Outcome> {
    if cmd == Command::Selftest {
        return selftest_report(&selftest::Config::default());
    }
    let mut out = match doc.resolve(offset)? {
        Resolved::Cw(c) => {
            let cx = cw_complex(&c.cw, &c.rep, None)?;
            match cmd {
                Command::Homology => Outcome::plain(homology_json(&cx)),
                Command::Torsion => {
                    let t = cw_torsion_euler(&c.cw, &c.rep, &c.word)?;
                    Outcome::plain(json!({ "torsion": t, "offset_word": c.word }))
                }
                other => return Err(Error::Unsupported(format!("{other} needs a simplicial complex"))),
            }
        }
        Resolved::Simplicial(s) => simplicial(cmd, &s)?,
    };
    if let Value::Object(m) = &mut out.report {
        m.insert("command".into(), json!(cmd.to_string()));
    }
    Ok(out)
}

fn homology_json(c: &ChainComplex) -> Value {
    let h = c.homology();
    let reps: Vec<Vec<Vec<String>>> = (0..=c.top_degree())
        .map(|q| h.representatives(q).iter().map(|z| z.iter().map(fmt_q).collect()).collect())
        .collect();
    json!({
        "chain_dims": c.dims(),
        "homology_dims": h.hdims,
        "frame": crate::torsion::HOMOLOGY_FRAME,
        "representatives": reps,
    })
}

fn manifold(k: &SimplicialComplex) -> Result<Manifold<'_>> {
    Manifold::new(k).map_err(|e| Error::Hypothesis(format!("needs a closed oriented odd-dimensional manifold: {e}")))
}

/// The document orientation, else the canonical one on odd manifolds,
/// else `+1`.
fn orientation(s: &SimplicialInput) -> (HomologyOrientation, &'static str) {
    if let Some(o) = s.orientation {
        return (o, "document");
    }
    if let Ok(mf) = Manifold::new(&s.k) {
        if let Ok(o) = canonical_homology_orientation(&mf, None) {
            return (o, "canonical");
        }
    }
    (HomologyOrientation { sign: 1 }, "default +1")
}

fn chain_json(k: &SimplicialComplex, z: &crate::cw::EdgeChain) -> Value {
    let terms: Vec<Value> = z
        .sparse()
        .into_iter()
        .map(|(e, c)| {
            let s = &k.simplices(1)[e];
            json!({ "edge": [s[0], s[1]], "coeff": c })
        })
        .collect();
    Value::Array(terms)
}

fn simplicial(cmd: Command, s: &SimplicialInput) -> Result<Outcome> {
    let k = &s.k;
    let xi = || -> Result<EulerStructure> { s.euler() };
    let base = json!({
        "f_vector": k.f_vector(),
        "rank": s.f.rank(),
        "euler": { "basepoint": s.basepoint, "offset": chain_json(k, &s.offset) },
    });
    let mut report = match cmd {
        Command::Homology => homology_json(&crate::flat::reference_complex(k, &s.f)),
        Command::Torsion => {
            let tw = Twisted::new(k, s.f.clone());
            let xi = xi()?;
            let t = tw.euler(&xi)?;
            let direct = tw.euler_direct(&xi)?;
            json!({ "torsion": t, "via_spider_bases": fmt_q(&direct.value.coeff), "routes_agree": t == direct })
        }
        Command::TorsionRefined => {
            let tw = Twisted::new(k, s.f.clone());
            let (eta, source) = orientation(s);
            json!({ "torsion": tw.refined(&xi()?, eta)?, "orientation": eta.sign, "orientation_source": source })
        }
        Command::CohomologicalTorsion => {
            let (eta, source) = orientation(s);
            let coh = Cohomology::new(k, &s.f);
            let dual = Twisted::new(k, s.f.dual());
            let t = cohomological_torsion(&coh, &dual, &xi()?, Some(eta))?;
            json!({
                "torsion": t.value,
                "sign_ambiguous": t.sign_ambiguous,
                "orientation": eta.sign,
                "orientation_source": source,
            })
        }
        Command::CharClass => {
            let h1 = IntegralH1::new(k)?;
            let (z, c) = xi()?.char_class(k, &h1)?;
            json!({
                "cycle": chain_json(k, &z),
                "class": c,
                "h1_presentation": h1.presentation(),
                "det_F": fmt_q(&det_char(k, &s.f, &xi()?)?),
            })
        }
        Command::Involution => {
            let h1 = IntegralH1::new(k)?;
            let x = xi()?;
            let star = x.involution(k)?;
            let back = star.involution(k)?;
            json!({
                "class_of_xi*_minus_xi": star.diff_class(k, &h1, &x)?,
                "char_class": x.char_class(k, &h1)?.1,
                "involutive": back.diff_class(k, &h1, &x)?.is_zero(),
            })
        }
        Command::Pr => {
            let mf = manifold(k)?;
            let ctx = PrContext::new(&mf, &s.f)?;
            let even = s.f.rank() % 2 == 0;
            let eta = if even { None } else { Some(orientation(s).0) };
            let x = xi()?;
            let tau = ctx.tw.euler_or_refined(&x, eta)?;
            let tau_star = ctx.tw.euler_or_refined(&x.involution(k)?, eta)?;
            json!({
                "tau": tau.value,
                "pr_tau_tau": fmt_q(&ctx.pr(tau.coeff(), tau.coeff())),
                "pr_tau_tau_star": fmt_q(&ctx.pr(tau.coeff(), tau_star.coeff())),
                "duality": ctx.duality,
                "tau_sum": fmt_q(&ctx.tau_sum),
                "M": ctx.m_residue,
                "det_F(c(xi))": fmt_q(&det_char(k, &s.f, &x)?),
            })
        }
        Command::PrCohomological => {
            let mf = manifold(k)?;
            let cpr = CohomologicalPr::new(&mf, &s.f)?;
            let eta = if s.f.rank() % 2 == 0 { None } else { Some(orientation(s).0) };
            let x = xi()?;
            let t = cohomological_torsion(&cpr.coh, &cpr.star.tw, &x, eta)?;
            json!({
                "tau_coh": t.value,
                "product": fmt_q(&cpr.product(&t.value.coeff, &t.value.coeff)),
                "det_F(c(xi))": fmt_q(&det_char(k, &s.f, &x)?),
            })
        }
        Command::Semichar => {
            let tw = Twisted::new(k, s.f.clone());
            let schi = semichar_trivial(k);
            json!({
                "s_chi_F": semichar(&tw.homology),
                "s_chi": schi,
                "homology_dims": tw.hdims(),
                "z": z_residue(k.dim(), s.f.rank(), schi),
            })
        }
        Command::SwPairing => json!({ "sw_pairing": sw_pairing(k, &s.f, &xi()?)? }),
        Command::RsRhs => {
            let x = xi()?;
            let eta = if s.f.rank() % 2 == 1 { Some(orientation(s).0) } else { None };
            json!({ "rhs": rs_rhs(k, &s.f, &x)?, "tau_coh_squared_over_abs_det": fmt_q(&rs_companion(k, &s.f, &x, eta)?) })
        }
        Command::Subdivide => return subdivide(s),
        Command::Verify(t) => {
            let mf = manifold(k)?;
            let x = xi()?;
            let setup = Setup { mf: &mf, f: &s.f, xi: &x, eta: s.orientation, other: s.other.as_ref() };
            let r = verify(t, &setup)?;
            let pass = r.pass;
            let mut v = serde_json::to_value(r).expect("serializable");
            merge(&mut v, base);
            return Ok(Outcome { report: v, pass: Some(pass) });
        }
        Command::Selftest => unreachable!("handled by run"),
    };
    merge(&mut report, base);
    Ok(Outcome::plain(report))
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        for (key, v) in b {
            a.entry(key).or_insert(v);
        }
    }
}

fn subdivide(s: &SimplicialInput) -> Result<Outcome> {
    let k = &s.k;
    let sub = barycentric(k)?;
    let fp = s.f.pullback_to_subdivision(k, &sub);
    let tw = Twisted::new(k, s.f.clone());
    let twp = Twisted::new(&sub.complex, fp);
    let xi = s.euler()?;
    let xip = xi.subdivide(&sub);
    let t = tw.euler(&xi)?;
    let tp = twp.euler(&xip)?;
    let r = transfer_ratio(&homology_transfer(k, &s.f, &sub, &tw.homology, &twp.homology))?;
    let transported = t.coeff() * &r;
    let moved = TorsionValue { value: DetElement { coeff: transported.clone(), ..tp.value.clone() }, sign_ambiguous: t.sign_ambiguous };
    let mut pass = moved.agrees_with(&tp);
    let mut refined = Value::Null;
    if s.f.rank() % 2 == 1 {
        // sd_* η measured against the frame of K' differs by the sign of the
        // untwisted transfer ratio
        let triv = FlatRep::trivial(k, 1);
        let tt = Twisted::new(k, triv.clone());
        let ttp = Twisted::new(&sub.complex, triv.pullback_to_subdivision(k, &sub));
        let rt = transfer_ratio(&homology_transfer(k, &triv, &sub, &tt.homology, &ttp.homology))?;
        let eta = s.orientation.unwrap_or_else(|| HomologyOrientation::new(1).expect("±1"));
        let etap = if rt.is_positive() { eta } else { eta.flipped() };
        let a = tw.refined(&xi, eta)?;
        let b = twp.refined(&xip, etap)?;
        let ok = a.coeff() * &r == *b.coeff();
        pass &= ok;
        refined = json!({
            "orientation": eta.sign,
            "orientation_subdivided": etap.sign,
            "torsion": a.value,
            "torsion_subdivided": b.value,
            "invariant": ok,
        });
    }
    Ok(Outcome {
        report: json!({
            "command": "subdivide",
            "f_vector": k.f_vector(),
            "subdivision_f_vector": sub.complex.f_vector(),
            "torsion": t.value,
            "torsion_subdivided": tp.value,
            "transfer_ratio": fmt_q(&r),
            "transported": fmt_q(&transported),
            "sign_ambiguous": t.sign_ambiguous,
            "refined": refined,
            "invariant": pass,
        }),
        pass: Some(pass),
    })
}

/// Fixtures swept by `selftest`: every applicable theorem on each.
pub const SWEEP: [&str; 8] = [
    "circle3-t3",
    "circle4-t-2",
    "circle5-t3",
    "circle3-trivial",
    "circle3-diag23",
    "circle3-reflection",
    "circle3-rotation",
    "torus3-diag23",
];

pub fn sweep() -> Result<(Vec<Value>, bool)> {
    let mut rows = Vec::new();
    let mut all = true;
    for name in SWEEP {
        let doc = fixtures::fixture(name)?;
        for t in Theorem::ALL {
            match run(Command::Verify(t), &doc, None) {
                Ok(o) => {
                    let pass = o.pass.unwrap_or(false);
                    all &= pass;
                    rows.push(json!({ "fixture": name, "theorem": t.id(), "pass": pass }));
                }
                Err(Error::Hypothesis(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok((rows, all))
}

pub fn selftest_report(cfg: &selftest::Config) -> Result<Outcome> {
    let suites = selftest::run(cfg)?;
    let (rows, sweep_pass) = sweep()?;
    let pass = suites.pass && sweep_pass;
    Ok(Outcome {
        report: json!({
            "command": "selftest",
            "seed": cfg.seed,
            "suites": suites,
            "fixture_sweep": rows,
            "pass": pass,
        }),
        pass: Some(pass),
    })
}
