//! Browser bindings. Each entry point takes plain numbers or strings and
//! returns a JSON report; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rtorsion::commands::{self, Command};
use rtorsion::cw::circle;
use rtorsion::fixtures::{self, rotation, simplicial_document};
use rtorsion::flat::FlatRep;
use rtorsion::matrix::Matrix;
use rtorsion::pairing::verify::Theorem;
use rtorsion::scalar::{parse_q, qf};
use rtorsion::Result;

fn reply(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn pick(v: &Value, keys: &[&str]) -> Value {
    Value::Object(keys.iter().filter_map(|k| v.get(*k).map(|x| ((*k).to_owned(), x.clone()))).collect())
}

/// Torsion, its refinement and the PR product on `circle(n)` with scalar
/// monodromy `t`, at Euler offset `k` times the generator loop.
#[wasm_bindgen]
pub fn circle_torsion(n: usize, t: &str, k: i64) -> String {
    reply((|| {
        let doc = fixtures::fixture(&format!("circle:{n}:{t}"))?;
        let tau = commands::run(Command::Torsion, &doc, Some(k))?.report;
        let refined = commands::run(Command::TorsionRefined, &doc, Some(k))?.report;
        let pr = commands::run(Command::Pr, &doc, Some(k))?.report;
        let odd = commands::run(Command::Verify(Theorem::PrOdd), &doc, Some(k))?;
        Ok(json!({
            "n": n,
            "t": t,
            "offset": k,
            "torsion": tau["torsion"]["value"]["coeff"],
            "refined": pick(&refined, &["torsion", "orientation", "orientation_source"]),
            "pr": pick(&pr, &["pr_tau_tau", "pr_tau_tau_star", "det_F(c(xi))", "M"]),
            "identity_holds": odd.pass,
            "check": odd.report["identities"],
        }))
    })())
}

/// The semi-characteristic congruence on `circle(3)` with orthogonal
/// monodromy: `spec` is a comma-separated list of ±1 for a diagonal matrix,
/// or `rot:c,s` for a rotation with rational cosine and sine.
#[wasm_bindgen]
pub fn semichar_check(spec: &str) -> String {
    reply((|| {
        let a = if let Some(cs) = spec.trim().strip_prefix("rot:") {
            let (c, s) = cs.split_once(',').ok_or_else(|| rtorsion::Error::Parse("rotation needs `rot:c,s`".into()))?;
            rotation(parse_q(c.trim())?, parse_q(s.trim())?)?
        } else {
            let entries = spec.split(',').map(|e| parse_q(e.trim())).collect::<Result<Vec<_>>>()?;
            Matrix::diag(&entries)
        };
        let k = circle(3)?;
        let f = FlatRep::circle_monodromy(&k, &a)?;
        let doc = simplicial_document(&k, &f, Some(vec![0, 1, 2, 0]));
        let out = commands::run(Command::Verify(Theorem::Semichar), &doc, None)?;
        Ok(pick(&out.report, &["pass", "rank", "values", "identities", "hypotheses"]))
    })())
}

/// `rs_rhs` on `circle(n)` with scalar monodromy `t`, evaluated at every
/// Euler offset in `-range..=range`.
#[wasm_bindgen]
pub fn rs_rhs_sweep(n: usize, t: &str, range: i64) -> String {
    reply((|| {
        let doc = fixtures::fixture(&format!("circle:{n}:{t}"))?;
        let mut rows = Vec::new();
        for k in -range..=range {
            let r = commands::run(Command::RsRhs, &doc, Some(k))?.report;
            rows.push(json!({ "offset": k, "rhs": r["rhs"], "companion": r["tau_coh_squared_over_abs_det"] }));
        }
        let first = &rows[0]["companion"];
        let independent = rows.iter().all(|r| &r["companion"] == first);
        Ok(json!({ "n": n, "t": t, "rows": rows, "independent": independent }))
    })())
}

/// Sample rotation `(3/5, 4/5)` used by the page as a default.
#[wasm_bindgen]
pub fn sample_rotation() -> String {
    format!("rot:{},{}", rtorsion::scalar::fmt_q(&qf(3, 5)), rtorsion::scalar::fmt_q(&qf(4, 5)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn circle_report() {
        let v = parse(&circle_torsion(3, "3", 0));
        assert_eq!(v["torsion"], "1/2");
        assert_eq!(v["identity_holds"], true);
        let v = parse(&circle_torsion(4, "-2", -1));
        assert_eq!(v["identity_holds"], true);
    }

    #[test]
    fn semichar_reports() {
        assert_eq!(parse(&semichar_check("1,-1"))["pass"], true);
        assert_eq!(parse(&semichar_check("-1, -1, 1"))["pass"], true);
        assert_eq!(parse(&semichar_check(&sample_rotation()))["pass"], true);
        assert!(parse(&semichar_check("2"))["error"].is_string());
        assert!(parse(&semichar_check("rot:1,1"))["error"].is_string());
    }

    #[test]
    fn rs_rhs_is_independent() {
        let v = parse(&rs_rhs_sweep(5, "3", 2));
        assert_eq!(v["rows"].as_array().unwrap().len(), 5);
        assert_eq!(v["independent"], true);
    }

    #[test]
    fn bad_input_is_an_error_report() {
        assert!(parse(&circle_torsion(2, "3", 0))["error"].is_string());
        assert!(parse(&circle_torsion(3, "x", 0))["error"].is_string());
    }
}
