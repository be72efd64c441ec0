//! Randomized checks of the determinant-line identities.
//!
//! Every instance is a deterministic function of `(dims, seed)`, so a failing
//! instance can be shrunk by retrying smaller dims and printed in full.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chaincx::{ChainComplex, PivotRule};
use crate::detline::{frame_change, residue_m, residue_s, GradedDims, GradedFrame};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::{alt_pow, fmt_q, minus_one_pow, q, Q};
use crate::torsion::dot;

/// A deliberate sign error, for checking that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Drop the `(-1)^M` factor of fusion.
    FusionSign,
    /// Drop the `(-1)^s` factor of the duality operator.
    DualitySign,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub instances: usize,
    pub fault: Option<Fault>,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, instances: 1000, fault: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `φ` commutes with fusion.
    FusionTorsion,
    /// `φ` commutes with the duality operators.
    DualityTorsion,
    /// Fusion versus swapping the summands.
    FusionSwap,
    /// Fusion versus duality.
    FusionDuality,
    /// Associativity of fusion.
    FusionAssoc,
    /// `[c:h]` does not depend on the lifts.
    LiftIndependence,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::FusionTorsion,
        Suite::DualityTorsion,
        Suite::FusionSwap,
        Suite::FusionDuality,
        Suite::FusionAssoc,
        Suite::LiftIndependence,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::FusionTorsion => "fusion-torsion",
            Suite::DualityTorsion => "duality-torsion",
            Suite::FusionSwap => "fusion-swap",
            Suite::FusionDuality => "fusion-duality",
            Suite::FusionAssoc => "fusion-assoc",
            Suite::LiftIndependence => "lift-independence",
        }
    }

    /// Number of graded spaces in one instance.
    fn arity(self) -> usize {
        match self {
            Suite::FusionTorsion | Suite::FusionSwap | Suite::FusionDuality => 2,
            Suite::FusionAssoc => 3,
            Suite::DualityTorsion | Suite::LiftIndependence => 1,
        }
    }

    fn needs_odd_top(self) -> bool {
        matches!(self, Suite::DualityTorsion | Suite::FusionDuality)
    }

    fn admissible(self, dims: &[Vec<usize>]) -> bool {
        let m = dims[0].len() - 1;
        if self.needs_odd_top() && m % 2 == 0 {
            return false;
        }
        let total_even = |d: &Vec<usize>| d.iter().sum::<usize>() % 2 == 0;
        match self {
            Suite::DualityTorsion => euler_even(&dims[0]),
            Suite::FusionSwap | Suite::FusionDuality => dims.iter().all(total_even),
            _ => true,
        }
    }
}

fn euler_even(d: &[usize]) -> bool {
    d.iter().sum::<usize>() % 2 == 0
}

/// One failing instance, with everything needed to reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub dims: Vec<Vec<usize>>,
    pub seed: u64,
    /// Boundary maps `d_1..d_m` per complex, or frame matrices per degree.
    pub data: Vec<Vec<Vec<Vec<String>>>>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub instances: usize,
    pub passed: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub fault: Option<Fault>,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

struct Outcome {
    lhs: Q,
    rhs: Q,
    data: Vec<Vec<Vec<Vec<String>>>>,
}

impl Outcome {
    fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn run(cfg: &Config) -> Result<Report> {
    let mut suites = Vec::new();
    for (i, suite) in Suite::ALL.into_iter().enumerate() {
        suites.push(run_suite(suite, cfg, cfg.seed.wrapping_add(i as u64 * 0x9E37_79B9))?);
    }
    let pass = suites.iter().all(|s| s.passed == s.instances);
    Ok(Report { seed: cfg.seed, fault: cfg.fault, suites, pass })
}

pub fn run_suite(suite: Suite, cfg: &Config, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut counterexample = None;
    for _ in 0..cfg.instances {
        let dims = random_dims(suite, &mut rng);
        let inst_seed: u64 = rng.gen();
        let out = evaluate(suite, &dims, inst_seed, cfg.fault)?;
        if out.holds() {
            passed += 1;
        } else if counterexample.is_none() {
            counterexample = Some(shrink(suite, dims, inst_seed, cfg.fault)?);
        }
    }
    Ok(SuiteReport { suite, instances: cfg.instances, passed, counterexample })
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn random_dims(suite: Suite, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    loop {
        let m = if suite.needs_odd_top() { 2 * rng.gen_range(0..4) + 1 } else { rng.gen_range(1..=7) };
        let dims: Vec<Vec<usize>> = (0..suite.arity()).map(|_| (0..=m).map(|_| rng.gen_range(0..=5)).collect()).collect();
        if suite.admissible(&dims) {
            return dims;
        }
    }
}

/// Greedy shrink: lower one entry or drop the top degree while the failure
/// persists for some seed in a small window.
fn shrink(suite: Suite, mut dims: Vec<Vec<usize>>, mut seed: u64, fault: Option<Fault>) -> Result<Counterexample> {
    let mut best = evaluate(suite, &dims, seed, fault)?;
    let step = if suite.needs_odd_top() { 2 } else { 1 };
    loop {
        let mut candidates = Vec::new();
        let m = dims[0].len() - 1;
        if m > step {
            for qd in 0..=m + 1 - step {
                candidates.push(dims.iter().map(|d| [&d[..qd], &d[qd + step..]].concat()).collect::<Vec<_>>());
            }
        }
        for i in 0..dims.len() {
            for a in 0..=m {
                for b in a..=m {
                    let mut c = dims.clone();
                    if c[i][a] == 0 {
                        continue;
                    }
                    c[i][a] -= 1;
                    if b > a || c[i][a] > 0 {
                        if c[i][b] == 0 {
                            continue;
                        }
                        c[i][b] -= 1;
                    }
                    candidates.push(c);
                }
            }
        }
        let mut improved = false;
        'outer: for c in candidates.into_iter().filter(|c| suite.admissible(c)) {
            for s in 0..16u64 {
                let out = evaluate(suite, &c, s, fault)?;
                if !out.holds() {
                    dims = c;
                    seed = s;
                    best = out;
                    improved = true;
                    break 'outer;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok(Counterexample { dims, seed, data: best.data, lhs: fmt_q(&best.lhs), rhs: fmt_q(&best.rhs) })
}

fn evaluate(suite: Suite, dims: &[Vec<usize>], seed: u64, fault: Option<Fault>) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m_sign = |m: u8| if fault == Some(Fault::FusionSign) { Q::one() } else { minus_one_pow(m as u64) };
    let s_sign = |s: u8| if fault == Some(Fault::DualitySign) { Q::one() } else { minus_one_pow(s as u64) };
    let gd = |d: &Vec<usize>| GradedDims::new(d.clone());
    match suite {
        Suite::FusionTorsion => {
            let c = random_complex(&dims[0], &mut rng);
            let cp = random_complex(&dims[1], &mut rng);
            let sum = c.direct_sum(&cp)?;
            let (h, hp) = (c.homology(), cp.homology());
            let hs = sum.homology_with(PivotRule::Lexicographic);
            let a = c.torsion_iso(&Q::one(), &h).coeff;
            let ap = cp.torsion_iso(&Q::one(), &hp).coeff;
            let b = sum.torsion_iso(&Q::one(), &hs).coeff;
            // generator of the concatenated frame hh' in the frame of hs
            let concat: Vec<Vec<Vec<Q>>> = (0..=c.top_degree())
                .map(|qd| {
                    let (n, np) = (c.dims().dim(qd), cp.dims().dim(qd));
                    let left = h.representatives(qd).into_iter().map(|mut x| {
                        x.resize(n + np, Q::zero());
                        x
                    });
                    let right = hp.representatives(qd).into_iter().map(|x| {
                        let mut y = vec![Q::zero(); n];
                        y.extend(x);
                        y
                    });
                    left.chain(right).collect()
                })
                .collect();
            let rho = hs.generator_ratio(&concat)?;
            let lhs = m_sign(residue_m(&h.hdims, &hp.hdims)?) * a * ap * rho;
            let rhs = m_sign(residue_m(c.dims(), cp.dims())?) * b;
            Ok(Outcome { lhs, rhs, data: vec![complex_data(&c), complex_data(&cp)] })
        }
        Suite::DualityTorsion => {
            let c = random_complex(&dims[0], &mut rng);
            let m = c.top_degree();
            let cd = c.dual_complex();
            let h = c.homology();
            let hd = cd.homology_with(PivotRule::Lexicographic);
            let a = c.torsion_iso(&Q::one(), &h).coeff;
            let ad = cd.torsion_iso(&Q::one(), &hd).coeff;
            // dual frame of h inside H(C'): generator ratio from the
            // evaluation pairing of representatives
            let mut rho = Q::one();
            for qd in 0..=m {
                let left = hd.representatives(qd);
                let right = h.representatives(m - qd);
                if left.is_empty() {
                    continue;
                }
                let p = Matrix::from_rows(left.iter().map(|x| right.iter().map(|y| dot(x, y)).collect()).collect())?;
                let det = p.det();
                rho *= alt_pow(&det, qd).recip();
            }
            let lhs = s_sign(residue_s(c.dims())?) * ad;
            let rhs = s_sign(residue_s(&h.hdims)?) * a * rho;
            Ok(Outcome { lhs, rhs, data: vec![complex_data(&c)] })
        }
        Suite::FusionSwap => {
            let (v, w) = (gd(&dims[0])?, gd(&dims[1])?);
            let fv = random_frame("v", &v, &mut rng);
            let fw = random_frame("w", &w, &mut rng);
            let vw = fv.concat(&fw)?;
            let wv = fw.concat(&fv)?;
            let swapped = GradedFrame {
                label: "s(vw)".into(),
                basis: vw
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(qd, vs)| vs.iter().map(|x| swap_blocks(x, v.dim(qd))).collect())
                    .collect(),
            };
            let fc = frame_change(&wv, &swapped)?;
            let lhs = m_sign(residue_m(&v, &w)?) * fc;
            let rhs = m_sign(residue_m(&w, &v)?);
            Ok(Outcome { lhs, rhs, data: vec![frame_data(&fv), frame_data(&fw)] })
        }
        Suite::FusionDuality => {
            let (v, w) = (gd(&dims[0])?, gd(&dims[1])?);
            let fv = random_frame("v", &v, &mut rng);
            let fw = random_frame("w", &w, &mut rng);
            let (x, y) = (random_unit(&mut rng), random_unit(&mut rng));
            let vs = v.sum(&w)?;
            let top = s_sign(residue_s(&v)?)
                * s_sign(residue_s(&w)?)
                * m_sign(residue_m(&v.dual(), &w.dual())?)
                * &x
                * &y;
            let bottom = m_sign(residue_m(&v, &w)?) * s_sign(residue_s(&vs)?) * &x * &y;
            let fc = frame_change(&fv.dual()?.concat(&fw.dual()?)?, &fv.concat(&fw)?.dual()?)?;
            Ok(Outcome { lhs: top, rhs: bottom * fc, data: vec![frame_data(&fv), frame_data(&fw)] })
        }
        Suite::FusionAssoc => {
            let (u, v, w) = (gd(&dims[0])?, gd(&dims[1])?, gd(&dims[2])?);
            let fu = random_frame("u", &u, &mut rng);
            let fv = random_frame("v", &v, &mut rng);
            let fw = random_frame("w", &w, &mut rng);
            let (x, y, z) = (random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng));
            let uv = u.sum(&v)?;
            let vw = v.sum(&w)?;
            let left = m_sign(residue_m(&u, &v)?) * m_sign(residue_m(&uv, &w)?) * &x * &y * &z;
            let right = m_sign(residue_m(&v, &w)?) * m_sign(residue_m(&u, &vw)?) * &x * &y * &z;
            let fc = frame_change(&fu.concat(&fv)?.concat(&fw)?, &fu.concat(&fv.concat(&fw)?)?)?;
            Ok(Outcome { lhs: left, rhs: right * fc, data: vec![frame_data(&fu), frame_data(&fv), frame_data(&fw)] })
        }
        Suite::LiftIndependence => {
            let c = random_complex(&dims[0], &mut rng);
            let ha = c.homology_with(PivotRule::Sparse);
            let hb = c.homology_with(PivotRule::Lexicographic);
            let a = c.torsion_iso(&Q::one(), &ha).coeff;
            let b = c.torsion_iso(&Q::one(), &hb).coeff;
            // hb's generator expressed in ha's frame
            let rho = ha.generator_ratio(&hb.frame("hb").basis)?;
            Ok(Outcome { lhs: a, rhs: b * rho, data: vec![complex_data(&c)] })
        }
    }
}

fn swap_blocks(x: &[Q], first: usize) -> Vec<Q> {
    let mut out = x[first..].to_vec();
    out.extend_from_slice(&x[..first]);
    out
}

fn random_unit(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d: i64 = rng.gen_range(1..=5);
    Q::new(n.into(), d.into())
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let mut a = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let x: i64 = if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-3..=3) };
                a.set(r, c, q(x));
            }
        }
        if n == 0 || !a.det().is_zero() {
            return a;
        }
    }
}

fn random_frame(label: &str, dims: &GradedDims, rng: &mut ChaCha8Rng) -> GradedFrame {
    let basis = dims
        .as_slice()
        .iter()
        .map(|&n| {
            let a = random_invertible(n, rng);
            (0..n).map(|j| a.column(j)).collect()
        })
        .collect();
    GradedFrame { label: label.into(), basis }
}

/// A complex with the given dims and randomly chosen ranks, conjugated by
/// random changes of basis in each degree.
pub fn random_complex(dims: &[usize], rng: &mut ChaCha8Rng) -> ChainComplex {
    let m = dims.len() - 1;
    // ranks[q] = rank of d_q; ranks[q] + ranks[q+1] <= dims[q]
    let mut ranks = vec![0usize; m + 2];
    for qd in 1..=m {
        let room = dims[qd - 1] - ranks[qd - 1].min(dims[qd - 1]);
        let bound = room.min(dims[qd]);
        ranks[qd] = rng.gen_range(0..=bound);
    }
    let change: Vec<Matrix> = dims.iter().map(|&n| random_invertible(n, rng)).collect();
    let inverse: Vec<Matrix> = change.iter().map(|a| a.inverse().unwrap_or_else(|| Matrix::zeros(0, 0))).collect();
    let maps: Vec<Matrix> = (1..=m)
        .map(|qd| {
            // split form: the last ranks[q] basis vectors of C_q map onto the
            // first ranks[q] basis vectors of C_{q-1}
            let mut s = Matrix::zeros(dims[qd - 1], dims[qd]);
            for i in 0..ranks[qd] {
                s.set(i, dims[qd] - ranks[qd] + i, Q::one());
            }
            change[qd - 1].mul(&s).mul(&inverse[qd])
        })
        .collect();
    ChainComplex::from_dense(dims.to_vec(), &maps).expect("split form squares to zero")
}

fn complex_data(c: &ChainComplex) -> Vec<Vec<Vec<String>>> {
    (1..=c.top_degree()).map(|qd| c.boundary(qd).to_dense().to_strings()).collect()
}

fn frame_data(f: &GradedFrame) -> Vec<Vec<Vec<String>>> {
    f.basis
        .iter()
        .map(|vs| {
            let n = vs.first().map_or(0, Vec::len);
            Matrix::from_columns(n, vs).to_strings()
        })
        .collect()
}

/// `D_{V'} ∘ D_V` on generators, for odd `m`: the sign `(-1)^{s(V) + s(V')}`
/// times the frame change between the double dual frame and the original.
pub fn double_dual_sign(dims: &GradedDims) -> Result<Q> {
    let f = GradedFrame::standard("e", dims);
    let back = f.dual()?.dual()?;
    let s = residue_s(dims)? ^ residue_s(&dims.dual())?;
    Ok(minus_one_pow(s as u64) * frame_change(&f, &back)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(instances: usize) -> Config {
        Config { seed: 7, instances, fault: None }
    }

    #[test]
    fn suites_pass() {
        let r = run(&small(60)).unwrap();
        for s in &r.suites {
            assert_eq!(s.passed, s.instances, "{}", serde_json::to_string(s).unwrap());
        }
    }

    #[test]
    fn random_complex_has_requested_dims() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_complex(&[2, 3, 1], &mut rng);
        assert_eq!(c.dims().as_slice(), &[2, 3, 1]);
    }

    #[test]
    fn fault_is_caught_and_shrunk() {
        let cfg = Config { fault: Some(Fault::FusionSign), ..small(200) };
        let r = run_suite(Suite::FusionSwap, &cfg, 1).unwrap();
        let cx = r.counterexample.expect("fault must be detected");
        let total: usize = cx.dims.iter().flatten().sum();
        assert!(total <= 6, "{:?}", cx.dims);
    }

    #[test]
    fn double_dual_is_recorded() {
        for d in [vec![1, 1], vec![2, 2], vec![1, 0, 0, 1], vec![1, 2, 2, 1]] {
            let v = double_dual_sign(&GradedDims::new(d).unwrap()).unwrap();
            assert!(v == q(1) || v == q(-1));
        }
    }
}
