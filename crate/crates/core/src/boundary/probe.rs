//! Approaches to the edges and corners of the unit square.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use super::{correction, extrapolate_to_zero, real_power, reject_integer_s, renorm_l};
use crate::error::{Error, Result};
use crate::lerch::{l_star, turn, zeta_star, LerchPoint, Param};
use crate::numerics::{tate_ball, Ball, ComplexValue, EvalResult, PrecisionContext, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    /// a = 0, 0 < c < 1
    A0,
    /// a = 1, 0 < c < 1
    A1,
    /// c = 0, 0 < a < 1
    C0,
    /// c = 1, 0 < a < 1
    C1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    A0C0,
    A0C1,
    A1C0,
    A1C1,
}

impl Corner {
    pub fn coordinates(self) -> (i64, i64) {
        match self {
            Corner::A0C0 => (0, 0),
            Corner::A0C1 => (0, 1),
            Corner::A1C0 => (1, 0),
            Corner::A1C1 => (1, 1),
        }
    }

    pub fn from_coordinates(a: i64, c: i64) -> Option<Corner> {
        match (a, c) {
            (0, 0) => Some(Corner::A0C0),
            (0, 1) => Some(Corner::A0C1),
            (1, 0) => Some(Corner::A1C0),
            (1, 1) => Some(Corner::A1C1),
            _ => None,
        }
    }
}

/// An edge (open segment) or a corner of the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryPart {
    Edge(Edge),
    Corner(Corner),
}

impl BoundaryPart {
    pub const ALL_EDGES: [BoundaryPart; 4] =
        [BoundaryPart::Edge(Edge::A0), BoundaryPart::Edge(Edge::A1), BoundaryPart::Edge(Edge::C0), BoundaryPart::Edge(Edge::C1)];
    pub const ALL_CORNERS: [BoundaryPart; 4] = [
        BoundaryPart::Corner(Corner::A0C0),
        BoundaryPart::Corner(Corner::A0C1),
        BoundaryPart::Corner(Corner::A1C0),
        BoundaryPart::Corner(Corner::A1C1),
    ];

    /// Integer a' if the part lies on a = 0 or a = 1.
    fn a_side(self) -> Option<i64> {
        match self {
            BoundaryPart::Edge(Edge::A0) => Some(0),
            BoundaryPart::Edge(Edge::A1) => Some(1),
            BoundaryPart::Corner(k) => Some(k.coordinates().0),
            _ => None,
        }
    }

    /// Integer c' if the part lies on c = 0 or c = 1.
    fn c_side(self) -> Option<i64> {
        match self {
            BoundaryPart::Edge(Edge::C0) => Some(0),
            BoundaryPart::Edge(Edge::C1) => Some(1),
            BoundaryPart::Corner(k) => Some(k.coordinates().1),
            _ => None,
        }
    }
}

impl fmt::Display for BoundaryPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPart::Edge(Edge::A0) => f.write_str("a=0"),
            BoundaryPart::Edge(Edge::A1) => f.write_str("a=1"),
            BoundaryPart::Edge(Edge::C0) => f.write_str("c=0"),
            BoundaryPart::Edge(Edge::C1) => f.write_str("c=1"),
            BoundaryPart::Corner(k) => {
                let (a, c) = k.coordinates();
                write!(f, "corner({a},{c})")
            }
        }
    }
}

impl FromStr for BoundaryPart {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let part = match t.as_str() {
            "a=0" => BoundaryPart::Edge(Edge::A0),
            "a=1" => BoundaryPart::Edge(Edge::A1),
            "c=0" => BoundaryPart::Edge(Edge::C0),
            "c=1" => BoundaryPart::Edge(Edge::C1),
            _ => {
                let inner = t
                    .strip_prefix("corner(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::DomainError(format!("unknown boundary part '{text}'")))?;
                let mut it = inner.split(',').map(str::parse::<i64>);
                let (a, c) = match (it.next(), it.next(), it.next()) {
                    (Some(Ok(a)), Some(Ok(c)), None) => (a, c),
                    _ => return Err(Error::DomainError(format!("unknown boundary part '{text}'"))),
                };
                BoundaryPart::Corner(
                    Corner::from_coordinates(a, c).ok_or_else(|| Error::DomainError(format!("corner ({a},{c}) is not in {{0,1}}²")))?,
                )
            }
        };
        Ok(part)
    }
}

/// A boundary point and a sequence of interior points approaching it at rate 2^{-k}.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTarget {
    part: BoundaryPart,
    /// Coordinate along an edge; unused for corners.
    position: Option<Param>,
}

impl BoundaryTarget {
    /// The point of `edge` at coordinate `position` ∈ (0, 1) along it.
    pub fn edge(edge: Edge, position: Param) -> Result<Self> {
        if !position.in_open_unit_interval() {
            return Err(Error::DomainError(format!("edge position must lie in (0, 1), got {position}")));
        }
        Ok(BoundaryTarget { part: BoundaryPart::Edge(edge), position: Some(position) })
    }

    pub fn corner(corner: Corner) -> Self {
        BoundaryTarget { part: BoundaryPart::Corner(corner), position: None }
    }

    pub fn part(&self) -> BoundaryPart {
        self.part
    }

    pub fn position(&self) -> Option<&Param> {
        self.position.as_ref()
    }

    /// The limit point (a', c').
    pub fn limit_point(&self) -> (Param, Param) {
        match (self.part, &self.position) {
            (BoundaryPart::Edge(Edge::A0 | Edge::A1), Some(x)) => (Param::int(self.part.a_side().unwrap_or(0)), x.clone()),
            (BoundaryPart::Edge(_), Some(x)) => (x.clone(), Param::int(self.part.c_side().unwrap_or(0))),
            (BoundaryPart::Corner(k), _) => {
                let (a, c) = k.coordinates();
                (Param::int(a), Param::int(c))
            }
            (BoundaryPart::Edge(_), None) => unreachable!("edge targets carry a position"),
        }
    }

    /// Interior point at distance of order ε = 2^{-k}.
    ///
    /// Edge approaches move ε off the edge and ε/4 of the way towards the
    /// centre line along it; corner approaches use offsets ε and 3ε/4. All
    /// points stay in the open square for k ≥ 1.
    pub fn point(&self, k: u32) -> (Param, Param) {
        let eps = Param::from(rug::Rational::from((1, rug::Integer::from(1) << k)));
        let toward = |x: &Param| x.add(&Param::ratio(1, 2).sub(x).mul(&eps).mul(&Param::ratio(1, 4)));
        let near = |side: i64, d: &Param| if side == 0 { d.clone() } else { d.one_minus() };
        let (a0, c0) = self.limit_point();
        match self.part {
            BoundaryPart::Edge(Edge::A0 | Edge::A1) => (near(self.part.a_side().unwrap_or(0), &eps), toward(&c0)),
            BoundaryPart::Edge(_) => (toward(&a0), near(self.part.c_side().unwrap_or(0), &eps)),
            BoundaryPart::Corner(k) => {
                let (a, c) = k.coordinates();
                (near(a, &eps), near(c, &eps.mul(&Param::ratio(3, 4))))
            }
        }
    }
}

/// Controls of the ε-sweep ε = 2^{-k}, k_min ≤ k ≤ k_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub k_min: u32,
    pub k_max: u32,
    /// Gap below which the limit counts as attained.
    pub tol: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { k_min: 3, k_max: 12, tol: 2f64.powi(-40) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbeVerdict {
    /// The extrapolated gaps fall below the tolerance and stay there.
    Converged,
    /// The raw gaps decay like ε^exponent but extrapolation cannot remove the
    /// leading term (non-integer power or logarithm).
    Converging { exponent: f64 },
    /// The gaps stay bounded away from zero or grow.
    NonConvergent { min_gap: f64 },
}

impl ProbeVerdict {
    pub fn is_convergent(&self) -> bool {
        !matches!(self, ProbeVerdict::NonConvergent { .. })
    }
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub part: BoundaryPart,
    pub subtracted: bool,
    pub eps: Vec<f64>,
    /// Sequence values, with the subtraction term removed when `subtracted`.
    pub values: Vec<ComplexValue>,
    /// Boundary value from the Lerch evaluator.
    pub target: EvalResult,
    /// |values_k - target|
    pub gaps: Vec<f64>,
    /// Limit extrapolated from the whole sequence.
    pub limit: ComplexValue,
    /// |extrapolated limit from the first j points - target|
    pub extrapolated_gaps: Vec<f64>,
    /// Fitted decay exponent of the raw gaps over the last five points.
    pub decay_exponent: f64,
    pub verdict: ProbeVerdict,
}

fn cot_half_pi(s: &ComplexValue, prec: u32) -> ComplexValue {
    let pi = ComplexValue::pi(prec);
    let z = s.scale(&pi).scale_f64(0.5);
    &z.cos() * &z.sin().recip()
}

/// ½ γ⁺(1-s)(1 ± i cot(πs/2)), the weight of the a-power removed near a = 0 (+) or a = 1 (-).
fn a_edge_weight(s: &ComplexValue, near_zero: bool, prec: u32) -> Result<Ball> {
    let g = tate_ball(Sign::Plus, &(-s).add_f64(1.0), prec)?;
    let icot = cot_half_pi(s, prec).mul_i();
    let f = if near_zero { icot.add_f64(1.0) } else { (-&icot).add_f64(1.0) };
    let rad = f.abs_f64() * (s.abs_f64() + 2.0) * 2f64.powi(-(prec as i32) + 4);
    Ok(g.mul(&Ball::new(f, rad)).scale(&Float::with_val(prec, 0.5)))
}

fn case_name(part: BoundaryPart) -> String {
    match part {
        BoundaryPart::Edge(Edge::A0) => "a -> 0+".into(),
        BoundaryPart::Edge(Edge::A1) => "a -> 1-".into(),
        BoundaryPart::Edge(Edge::C0) => "c -> 0+".into(),
        BoundaryPart::Edge(Edge::C1) => "c -> 1-".into(),
        BoundaryPart::Corner(k) => {
            let (a, c) = k.coordinates();
            format!("(a, c) -> ({a}, {c})")
        }
    }
}

/// Integer s at which the subtracted limit formula is claimed, or an error.
fn check_case(s: &ComplexValue, part: BoundaryPart) -> Result<()> {
    let Some(n) = s.as_exact_integer() else { return Ok(()) };
    let ok = match part {
        // beyond the integers s ≤ 0 covered by the limit theorem, Re s > 1 gives
        // absolute convergence of the subtracted series, so only s = 1 is left out
        BoundaryPart::Edge(Edge::C0 | Edge::C1) => n != 1,
        // s = 1 is a pole of the boundary value ζ*(1, a', c) for integer a'
        BoundaryPart::Edge(Edge::A0 | Edge::A1) => n >= 2,
        BoundaryPart::Corner(_) => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::CaseOutOfRange { case: case_name(part), s: s.to_string() })
    }
}

/// The divergent part removed from ζ*(s, a, c) near `part`.
fn subtraction(s: &ComplexValue, part: BoundaryPart, a: &Param, c: &Param, prec: u32) -> Result<Ball> {
    let s = s.with_prec(prec);
    let mut total = Ball::zero(prec);
    if part.c_side() == Some(0) {
        total = total.add(&real_power(&c.to_float(prec), &(-&s), prec));
    }
    // at integer s ≥ 2 the a-power tends to 0 and its weight has a pole, so it is left in
    if s.as_exact_integer().is_some() {
        return Ok(total);
    }
    let s_m1 = s.add_f64(-1.0);
    match part.a_side() {
        Some(0) => {
            let w = a_edge_weight(&s, true, prec)?;
            let ph = turn(&a.mul(c).neg(), prec);
            total = total.add(&w.mul_value(&ph).mul(&real_power(&a.to_float(prec), &s_m1, prec)));
        }
        Some(_) => {
            let w = a_edge_weight(&s, false, prec)?;
            let ph = turn(&a.one_minus().mul(c), prec);
            total = total.add(&w.mul_value(&ph).mul(&real_power(&a.one_minus().to_float(prec), &s_m1, prec)));
        }
        None => {}
    }
    Ok(total)
}

fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn run_probe(s: &ComplexValue, target: &BoundaryTarget, subtract: bool, config: ProbeConfig, ctx: &PrecisionContext) -> Result<ProbeReport> {
    if config.k_min < 1 || config.k_max < config.k_min + 4 {
        return Err(Error::DomainError("probe needs k_min ≥ 1 and at least five ε values".into()));
    }
    let part = target.part();
    let (a_lim, c_lim) = target.limit_point();
    let tv = zeta_star(&LerchPoint::new(s.clone(), a_lim, c_lim), ctx)?;
    if tv.pole.is_some() {
        return Err(Error::PoleEncountered(format!("boundary value at {part}")));
    }
    let prec = ctx.internal_bits();
    let mut eps = Vec::new();
    let mut values = Vec::new();
    let mut gaps = Vec::new();
    for k in config.k_min..=config.k_max {
        let (a, c) = target.point(k);
        let z = zeta_star(&LerchPoint::new(s.clone(), a.clone(), c.clone()), ctx)?;
        let mut v = z.value.with_prec(prec);
        if subtract {
            v = &v - &subtraction(s, part, &a, &c, prec)?.mid;
        }
        gaps.push((&v - &tv.value).abs_f64());
        eps.push(2f64.powi(-(k as i32)));
        values.push(v);
    }
    let extrapolated_gaps: Vec<f64> =
        (1..=values.len()).map(|j| (&extrapolate_to_zero(&eps[..j], &values[..j]) - &tv.value).abs_f64()).collect();
    let limit = extrapolate_to_zero(&eps, &values);

    let tail = gaps.len() - 5;
    let lx: Vec<f64> = eps[tail..].iter().map(|e| e.ln()).collect();
    let ly: Vec<f64> = gaps[tail..].iter().map(|g| g.max(f64::MIN_POSITIVE).ln()).collect();
    let decay_exponent = fit_slope(&lx, &ly);
    let last_two_small = extrapolated_gaps[extrapolated_gaps.len() - 2..].iter().all(|&g| g <= config.tol);
    let raw_small = gaps.last().is_some_and(|&g| g <= config.tol);
    let monotone = gaps[tail..].windows(2).all(|w| w[1] < w[0]);
    let verdict = if last_two_small || raw_small {
        ProbeVerdict::Converged
    } else if decay_exponent > 0.1 && monotone {
        ProbeVerdict::Converging { exponent: decay_exponent }
    } else {
        ProbeVerdict::NonConvergent { min_gap: gaps.iter().cloned().fold(f64::INFINITY, f64::min) }
    };
    Ok(ProbeReport { part, subtracted: subtract, eps, values, target: tv, gaps, limit, extrapolated_gaps, decay_exponent, verdict })
}

/// Follows ζ*(s, a_k, c_k) minus the divergent terms of the approach towards
/// `target` and compares with the boundary value ζ*(s, a', c').
///
/// Integer s is accepted on c-edges except s = 1, and on a-edges for s ≥ 2;
/// corners need s ∉ Z.
pub fn boundary_limit_probe(s: &ComplexValue, target: &BoundaryTarget, config: ProbeConfig, ctx: &PrecisionContext) -> Result<ProbeReport> {
    check_case(s, target.part())?;
    run_probe(s, target, true, config, ctx)
}

/// Like `boundary_limit_probe` but without subtracting anything: tests
/// whether ζ(s, a, c) itself extends continuously to the target.
pub fn continuity_probe(s: &ComplexValue, target: &BoundaryTarget, config: ProbeConfig, ctx: &PrecisionContext) -> Result<ProbeReport> {
    run_probe(s, target, false, config, ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    Continuous,
    Discontinuous,
}

/// Whether ζ(s, a, c) on the open square extends continuously to `part`.
///
/// a-edges need Re s > 1, the c = 0 edge Re s < 0, the c = 1 edge always
/// extends; corners (0,1) and (1,1) need Re s > 1 and (0,0), (1,0) never extend.
pub fn continuity_classifier(s: &ComplexValue, part: BoundaryPart) -> Continuity {
    let sigma = s.re.to_f64();
    let yes = match part {
        BoundaryPart::Edge(Edge::A0 | Edge::A1) => sigma > 1.0,
        BoundaryPart::Edge(Edge::C0) => sigma < 0.0,
        BoundaryPart::Edge(Edge::C1) => true,
        BoundaryPart::Corner(Corner::A0C1 | Corner::A1C1) => sigma > 1.0,
        BoundaryPart::Corner(Corner::A0C0 | Corner::A1C0) => false,
    };
    if yes {
        Continuity::Continuous
    } else {
        Continuity::Discontinuous
    }
}

/// Jump of L^{R,±} across an edge or at a corner.
#[derive(Debug, Clone)]
pub struct JumpReport {
    /// L^{R,±} at the boundary point from the renormalized lattice sums.
    pub boundary_value: EvalResult,
    /// Limit of L± - S± from inside, extrapolated from ε = 2^{-k_min..-k_max}.
    pub interior_limit: ComplexValue,
    /// |interior_limit - boundary_value|
    pub jump: f64,
    /// max_k |(L± - S±)(a_k, c_k) - boundary_value|
    pub max_raw_gap: f64,
}

/// Compares L^{R,±} on the boundary with the limit of L± - S± computed at
/// interior points approaching it perpendicularly at distance 2^{-k}.
pub fn edge_jump(sign: Sign, s: &ComplexValue, target: &BoundaryTarget, k_min: u32, k_max: u32, ctx: &PrecisionContext) -> Result<JumpReport> {
    reject_integer_s(s)?;
    if k_min < 2 || k_max < k_min {
        return Err(Error::DomainError("edge_jump needs 2 ≤ k_min ≤ k_max".into()));
    }
    let (a0, c0) = target.limit_point();
    let boundary_value = renorm_l(sign, s, &a0, &c0, ctx)?;
    let prec = ctx.internal_bits();
    let mut eps = Vec::new();
    let mut vals = Vec::new();
    let mut max_raw_gap: f64 = 0.0;
    for k in k_min..=k_max {
        let d = Param::from(rug::Rational::from((1, rug::Integer::from(1) << k)));
        let step = |side: Option<i64>, x: &Param| match side {
            Some(0) => d.clone(),
            Some(_) => d.one_minus(),
            None => x.clone(),
        };
        let a = step(target.part().a_side(), &a0);
        let c = step(target.part().c_side(), &c0);
        let l = l_star(sign, &LerchPoint::new(s.clone(), a.clone(), c.clone()), ctx)?;
        let corr = correction(sign, s, &a, &c, ctx)?;
        let v = &l.value.with_prec(prec) - &corr.value.with_prec(prec);
        max_raw_gap = max_raw_gap.max((&v - &boundary_value.value).abs_f64());
        eps.push(2f64.powi(-(k as i32)));
        vals.push(v);
    }
    let interior_limit = extrapolate_to_zero(&eps, &vals);
    let jump = (&interior_limit - &boundary_value.value).abs_f64();
    Ok(JumpReport { boundary_value, interior_limit, jump, max_raw_gap })
}
