//! Exhaustive small-case sweeps of the surjection and kernel inequalities and
//! of the extension dimension formula.
//!
//! Candidate sets are the hypothesis sets of the inequalities (checkable slope
//! conditions), a superset of the geometric sub/quotient sets. A single
//! violation means an implementation bug.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::bundle::Bundle;
use crate::enumerate::{bundles_of_rank, bundles_with_slopes};
use crate::error::{Error, Result};
use crate::extensions::enumerate_extensions;
use crate::io::int_to_json;
use crate::moduli::{dim_ext_stratum, quotient_necessary};
use crate::polygon::{deg_hom_nonneg, twice_area_between, Polygon};
use crate::slope::Slope;
use crate::strata::down_set;

/// One checked instance that failed (or hit equality in) an inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub check: String,
    pub inputs: Vec<(String, Bundle)>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|(name, b)| (name.clone(), Value::String(b.to_string())))
            .collect();
        json!({
            "check": self.check,
            "inputs": inputs,
            "lhs": int_to_json(&self.lhs),
            "rhs": int_to_json(&self.rhs),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub instances_checked: u64,
    pub violations: Vec<Counterexample>,
    pub equality_cases: Vec<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `{passed, instances_checked, violations, equality_cases}`; each record
    /// is `{check, inputs: {name: bundle text}, lhs, rhs}`.
    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "instances_checked": self.instances_checked,
            "violations": self.violations.iter().map(Counterexample::to_json).collect::<Vec<_>>(),
            "equality_cases": self.equality_cases.iter().map(Counterexample::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn merge(&mut self, other: SweepReport) {
        self.instances_checked += other.instances_checked;
        self.violations.extend(other.violations);
        self.equality_cases.extend(other.equality_cases);
    }

    /// Records `lhs < rhs`; equality counts as a violation of strictness.
    fn strict(&mut self, check: &str, inputs: &[(&str, &Bundle)], lhs: BigInt, rhs: BigInt) {
        self.instances_checked += 1;
        if lhs < rhs {
            return;
        }
        let record = Counterexample {
            check: check.to_string(),
            inputs: inputs
                .iter()
                .map(|(n, b)| (n.to_string(), (*b).clone()))
                .collect(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        };
        if lhs == rhs {
            self.equality_cases.push(record.clone());
        }
        self.violations.push(record);
    }

    fn equal(&mut self, check: &str, inputs: &[(&str, &Bundle)], lhs: BigInt, rhs: BigInt) {
        self.instances_checked += 1;
        if lhs != rhs {
            self.violations.push(Counterexample {
                check: check.to_string(),
                inputs: inputs
                    .iter()
                    .map(|(n, b)| (n.to_string(), (*b).clone()))
                    .collect(),
                lhs,
                rhs,
            });
        }
    }
}

fn step1_hypotheses(e: &Bundle, f: &Bundle) -> Result<Slope> {
    f.require_semistable()?;
    let mu_f = f.mu()?;
    if e.rank() <= f.rank() {
        return Err(Error::Precondition(format!(
            "need rank {e} > rank {f}"
        )));
    }
    match e.mu_max() {
        Some(m) if *m < mu_f => Ok(mu_f),
        _ => Err(Error::Precondition(format!(
            "need μ_max({e}) < μ({f}) = {mu_f}"
        ))),
    }
}

/// Every `Q ≠ F` with `rank Q ≤ rank F`, `μ_max(Q) ≤ μ(F)` and passing the
/// strip-slope quotient test against `E`.
///
/// Each strip slope of `Q` lies between the matching strip slope of `E` and
/// `μ(F)`, so all slopes of `Q` lie in `[μ_min(E), μ(F)]`.
pub fn candidates_step1(e: &Bundle, f: &Bundle) -> Result<Vec<Bundle>> {
    let mu_f = step1_hypotheses(e, f)?;
    let lo = e.mu_min().expect("rank E > 0").clone();
    let max_rank = small_rank(&f.rank())?;
    let mut out = Vec::new();
    for r in 1..=max_rank {
        for q in bundles_of_rank(r, &lo, &mu_f) {
            if &q != f && quotient_necessary(e, &q)? {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// Checks `deg(E^∨⊗Q)^{≥0} + deg(Q^∨⊗F)^{≥0} < deg(E^∨⊗F)^{≥0} + deg(Q^∨⊗Q)^{≥0}`
/// for every step-one candidate `Q`.
pub fn verify_step1(e: &Bundle, f: &Bundle) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    let total = deg_hom_nonneg(e, f);
    for q in candidates_step1(e, f)? {
        let lhs = deg_hom_nonneg(e, &q) + deg_hom_nonneg(&q, f);
        let rhs = &total + deg_hom_nonneg(&q, &q);
        report.strict("surjection", &[("E", e), ("F", f), ("Q", &q)], lhs, rhs);
    }
    Ok(report)
}

fn step2_hypotheses(d: &Bundle, f: &Bundle, e: &Bundle) -> Result<Slope> {
    d.require_semistable()?;
    f.require_semistable()?;
    let (mu_d, mu_f) = (d.mu()?, f.mu()?);
    if mu_d > mu_f {
        return Err(Error::SlopeOrder(format!("need μ(D) ≤ μ(F), got {mu_d} > {mu_f}")));
    }
    if !Polygon::of(e).leq(&Polygon::of(&d.direct_sum(f))) {
        return Err(Error::Precondition(format!(
            "HN({e}) is not below HN({})",
            d.direct_sum(f)
        )));
    }
    match e.mu_max() {
        Some(m) if *m < mu_f => Ok(m.clone()),
        _ => Err(Error::Precondition(format!("need μ_max({e}) < μ({f})"))),
    }
}

/// Every non-semistable `K` with the rank and degree of `D` and
/// `μ_max(K) ≤ μ_max(E)`.
pub fn candidates_step2(d: &Bundle, f: &Bundle, e: &Bundle) -> Result<Vec<Bundle>> {
    let top = step2_hypotheses(d, f, e)?;
    let rank = small_rank(&d.rank())?;
    let degree = d.degree();
    // a vertex (x, y) of HN(K) has y ≤ top·x, which bounds the last slope
    let rank_q = BigInt::from(rank);
    let lo = (0..rank)
        .map(|x| {
            let x = BigInt::from(x);
            let y = top.as_ratio() * num_rational::BigRational::from_integer(x.clone());
            (num_rational::BigRational::from_integer(degree.clone()) - y)
                / num_rational::BigRational::from_integer(&rank_q - x)
        })
        .min()
        .expect("rank D > 0");
    let lo = Slope::from_ratio(lo.floor());
    Ok(bundles_of_rank(rank, &lo, &top)
        .into_iter()
        .filter(|k| k.degree() == degree && !k.is_semistable().unwrap_or(true))
        .collect())
}

/// Checks `deg(K^∨⊗E)^{≥0} < deg(K^∨⊗K)^{≥0} + deg(E^∨⊗F)^{≥0}` for every
/// kernel candidate `K`.
pub fn verify_step2(d: &Bundle, f: &Bundle, e: &Bundle) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    let ef = deg_hom_nonneg(e, f);
    for k in candidates_step2(d, f, e)? {
        let lhs = deg_hom_nonneg(&k, e);
        let rhs = deg_hom_nonneg(&k, &k) + &ef;
        report.strict("kernel", &[("D", d), ("F", f), ("E", e), ("K", &k)], lhs, rhs);
    }
    Ok(report)
}

/// For every extension `E` of `F₂` by `F₁`: the dimension formula equals
/// twice the enclosed area, is antitone in `HN(E)`, and vanishes exactly at
/// the split bundle.
pub fn cross_check_dimensions(f1: &Bundle, f2: &Bundle) -> Result<SweepReport> {
    let exts = enumerate_extensions(f1, f2)?;
    let split = f1.direct_sum(f2);
    let upper = Polygon::of(&split);
    let mut report = SweepReport::default();
    let mut values = Vec::with_capacity(exts.len());
    for e in &exts {
        let value = dim_ext_stratum(f1, f2, e)?.value;
        let area = twice_area_between(&Polygon::of(e), &upper)?;
        let inputs = [("F1", f1), ("F2", f2), ("E", e)];
        report.equal("dimension = twice area", &inputs, value.clone(), area);
        report.instances_checked += 1;
        let zero_ok = if e == &split {
            value.is_zero()
        } else {
            value.is_positive()
        };
        if !zero_ok {
            report.violations.push(Counterexample {
                check: "dimension vanishes exactly at the split bundle".into(),
                inputs: inputs.iter().map(|(n, b)| (n.to_string(), (*b).clone())).collect(),
                lhs: value.clone(),
                rhs: BigInt::zero(),
            });
        }
        values.push(value);
    }
    // With common endpoints, `≤` is a componentwise comparison of heights at
    // integer abscissae; scale them to integers once instead of per pair.
    let n = small_rank(&split.rank())?;
    let scale = (1..=n).fold(BigInt::from(1), |l, k| l.lcm(&BigInt::from(k)));
    let heights: Vec<Vec<BigInt>> = exts
        .iter()
        .map(|e| {
            Polygon::of(e)
                .height_profile()
                .into_iter()
                .map(|h| (h * &scale).to_integer())
                .collect()
        })
        .collect();
    let leq = |i: usize, j: usize| heights[i].iter().zip(&heights[j]).all(|(a, b)| a <= b);
    for i in 0..exts.len() {
        for j in 0..exts.len() {
            if i != j && leq(i, j) {
                report.instances_checked += 1;
                if values[i] < values[j] {
                    report.violations.push(Counterexample {
                        check: "dimension antitone in HN(E)".into(),
                        inputs: vec![
                            ("F1".into(), f1.clone()),
                            ("F2".into(), f2.clone()),
                            ("E".into(), exts[i].clone()),
                            ("E'".into(), exts[j].clone()),
                        ],
                        lhs: values[i].clone(),
                        rhs: values[j].clone(),
                    });
                }
            }
        }
    }
    Ok(report)
}

fn small_rank(r: &BigInt) -> Result<u32> {
    u32::try_from(r).map_err(|_| Error::Precondition(format!("rank {r} too large to enumerate")))
}

/// Slopes `a/h` with `1 ≤ h ≤ max_den` and `|a| ≤ max_num`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlopeWindow {
    pub max_den: u32,
    pub max_num: u32,
}

impl Default for SlopeWindow {
    fn default() -> Self {
        SlopeWindow {
            max_den: 3,
            max_num: 3,
        }
    }
}

impl SlopeWindow {
    pub fn slopes(&self) -> Vec<Slope> {
        let mut out = Vec::new();
        let n = i64::from(self.max_num);
        for h in 1..=i64::from(self.max_den) {
            for a in -n..=n {
                if a.gcd(&h) == 1 {
                    out.push(Slope::new(a, h).expect("h ≥ 1"));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Semistable bundles `O(λ)^m` with `λ` in the window and rank ≤ `max_rank`.
    pub fn semistables(&self, max_rank: u32) -> Vec<Bundle> {
        let mut out = Vec::new();
        for s in self.slopes() {
            let h = u32::try_from(s.den()).expect("small denominator");
            let mut m = 1;
            while h * m <= max_rank {
                out.push(Bundle::semistable(s.clone(), m).expect("positive"));
                m += 1;
            }
        }
        out
    }
}

/// Bounds for the surjection-inequality sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step1Sweep {
    pub max_rank_e: u32,
    pub max_rank_f: u32,
    pub window: SlopeWindow,
}

impl Default for Step1Sweep {
    fn default() -> Self {
        Step1Sweep {
            max_rank_e: 5,
            max_rank_f: 3,
            window: SlopeWindow::default(),
        }
    }
}

impl Step1Sweep {
    /// All `(E, F)` with `F` semistable, `rank E > rank F` and
    /// `μ_max(E) < μ(F)`, slopes of both from the window.
    pub fn instances(&self) -> Vec<(Bundle, Bundle)> {
        let es = bundles_with_slopes(&self.window.slopes(), self.max_rank_e);
        let mut out = Vec::new();
        for f in self.window.semistables(self.max_rank_f) {
            let mu_f = f.mu().expect("nonzero");
            for e in &es {
                if e.rank() > f.rank() && e.mu_max().is_some_and(|m| *m < mu_f) {
                    out.push((e.clone(), f.clone()));
                }
            }
        }
        out
    }

    pub fn run(&self) -> Result<SweepReport> {
        let reports: Vec<Result<SweepReport>> = self
            .instances()
            .par_iter()
            .map(|(e, f)| verify_step1(e, f))
            .collect();
        collect_reports(reports)
    }
}

/// Bounds for the kernel-inequality sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step2Sweep {
    pub max_total_rank: u32,
    pub window: SlopeWindow,
}

impl Default for Step2Sweep {
    fn default() -> Self {
        Step2Sweep {
            max_total_rank: 5,
            window: SlopeWindow::default(),
        }
    }
}

impl Step2Sweep {
    /// All `(D, F, E)` with `D, F` semistable from the window, `μ(D) ≤ μ(F)`,
    /// `HN(E) ≤ HN(D ⊕ F)` and `μ_max(E) < μ(F)`.
    pub fn instances(&self) -> Vec<(Bundle, Bundle, Bundle)> {
        let ss = self.window.semistables(self.max_total_rank);
        let mut out = Vec::new();
        for d in &ss {
            for f in &ss {
                let (mu_d, mu_f) = (d.mu().expect("nonzero"), f.mu().expect("nonzero"));
                if mu_d > mu_f || d.rank() + f.rank() > BigInt::from(self.max_total_rank) {
                    continue;
                }
                for p in down_set(&Polygon::of(&d.direct_sum(f))) {
                    let e = p.to_bundle();
                    if e.mu_max().is_some_and(|m| *m < mu_f) {
                        out.push((d.clone(), f.clone(), e));
                    }
                }
            }
        }
        out
    }

    pub fn run(&self) -> Result<SweepReport> {
        let reports: Vec<Result<SweepReport>> = self
            .instances()
            .par_iter()
            .map(|(d, f, e)| verify_step2(d, f, e))
            .collect();
        collect_reports(reports)
    }
}

/// Bounds for the extension-dimension cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionSweep {
    pub max_rank: u32,
    pub window: SlopeWindow,
}

impl Default for DimensionSweep {
    fn default() -> Self {
        DimensionSweep {
            max_rank: 4,
            window: SlopeWindow::default(),
        }
    }
}

impl DimensionSweep {
    /// Semistable pairs `(F₁, F₂)` with `μ(F₁) < μ(F₂)`.
    pub fn instances(&self) -> Vec<(Bundle, Bundle)> {
        let ss = self.window.semistables(self.max_rank);
        let mut out = Vec::new();
        for f1 in &ss {
            for f2 in &ss {
                if f1.mu().expect("nonzero") < f2.mu().expect("nonzero") {
                    out.push((f1.clone(), f2.clone()));
                }
            }
        }
        out
    }

    pub fn run(&self) -> Result<SweepReport> {
        let reports: Vec<Result<SweepReport>> = self
            .instances()
            .par_iter()
            .map(|(f1, f2)| cross_check_dimensions(f1, f2))
            .collect();
        collect_reports(reports)
    }
}

fn collect_reports(reports: Vec<Result<SweepReport>>) -> Result<SweepReport> {
    let mut total = SweepReport::default();
    for r in reports {
        total.merge(r?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(raw: &[(i64, i64, i64)]) -> Bundle {
        Bundle::from_raw(raw.iter().copied()).unwrap()
    }

    #[test]
    fn step1_candidates_examples() {
        assert_eq!(
            candidates_step1(&b(&[(0, 1, 2)]), &Bundle::line(1)).unwrap(),
            [Bundle::line(0)]
        );
        assert_eq!(
            candidates_step1(&b(&[(0, 1, 3)]), &Bundle::line(1)).unwrap(),
            [Bundle::line(0)]
        );
        assert!(candidates_step1(&b(&[(1, 1, 1), (0, 1, 1)]), &Bundle::line(1)).is_err());
        assert!(candidates_step1(&Bundle::line(0), &Bundle::line(1)).is_err());
    }

    #[test]
    fn step1_single_instances() {
        let r = verify_step1(&b(&[(0, 1, 2)]), &Bundle::line(1)).unwrap();
        assert_eq!(r.instances_checked, 1);
        assert!(r.passed() && r.equality_cases.is_empty());

        let e = b(&[(1, 3, 1), (6, 5, 1)]);
        let r = verify_step1(&e, &b(&[(9, 4, 1)])).unwrap();
        assert!(r.instances_checked > 0);
        assert!(r.passed() && r.equality_cases.is_empty());
    }

    #[test]
    fn step2_candidates_examples() {
        let d = b(&[(0, 1, 2)]);
        let ks = candidates_step2(&d, &Bundle::line(2), &b(&[(1, 1, 1), (1, 2, 1)])).unwrap();
        assert!(ks.contains(&b(&[(1, 1, 1), (-1, 1, 1)])));
        assert!(ks.iter().all(|k| !k.is_semistable().unwrap()));

        let ks = candidates_step2(&d, &Bundle::line(1), &b(&[(1, 2, 1), (0, 1, 1)])).unwrap();
        assert!(ks.is_empty());
        let r = verify_step2(&d, &Bundle::line(1), &b(&[(1, 2, 1), (0, 1, 1)])).unwrap();
        assert!(r.passed() && r.instances_checked == 0);
    }

    #[test]
    fn step2_single_instance() {
        let d = b(&[(0, 1, 2)]);
        let f = Bundle::line(2);
        let e = b(&[(1, 1, 1), (1, 2, 1)]);
        let k = b(&[(1, 1, 1), (-1, 1, 1)]);
        assert_eq!(deg_hom_nonneg(&k, &e), 5.into());
        assert_eq!(deg_hom_nonneg(&k, &k) + deg_hom_nonneg(&e, &f), 6.into());
        assert!(verify_step2(&d, &f, &e).unwrap().passed());
        assert!(verify_step2(&d, &f, &b(&[(3, 1, 1), (-1, 1, 2)])).is_err());
    }

    #[test]
    fn dimension_cross_check_examples() {
        let r = cross_check_dimensions(&b(&[(-1, 2, 2)]), &b(&[(9, 4, 1)])).unwrap();
        assert!(r.passed());
        let r = cross_check_dimensions(&Bundle::line(0), &Bundle::line(1)).unwrap();
        assert!(r.passed());
        let vals: Vec<BigInt> = enumerate_extensions(&Bundle::line(0), &Bundle::line(1))
            .unwrap()
            .iter()
            .map(|e| dim_ext_stratum(&Bundle::line(0), &Bundle::line(1), e).unwrap().value)
            .collect();
        assert_eq!(vals, [0.into(), 1.into()]);
    }

    #[test]
    fn report_json_shape() {
        let mut r = SweepReport::default();
        r.strict("demo", &[("E", &Bundle::line(0))], 2.into(), 2.into());
        assert_eq!(
            r.to_json().to_string(),
            r#"{"equality_cases":[{"check":"demo","inputs":{"E":"O(0)"},"lhs":2,"rhs":2}],"instances_checked":1,"passed":false,"violations":[{"check":"demo","inputs":{"E":"O(0)"},"lhs":2,"rhs":2}]}"#
        );
    }

    #[test]
    fn window_slopes() {
        let w = SlopeWindow::default();
        assert_eq!(w.slopes().len(), 15);
        assert!(w.semistables(3).contains(&b(&[(1, 3, 1)])));
    }

    #[test]
    fn small_default_sweeps_pass() {
        let s1 = Step1Sweep {
            max_rank_e: 3,
            max_rank_f: 2,
            window: SlopeWindow { max_den: 2, max_num: 2 },
        };
        assert!(s1.run().unwrap().passed());
        let s2 = Step2Sweep {
            max_total_rank: 4,
            window: SlopeWindow { max_den: 2, max_num: 2 },
        };
        assert!(s2.run().unwrap().passed());
    }
}
