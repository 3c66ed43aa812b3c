//! The invariant record of a plane curve germ and its identity checks.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finitealg::{multiplication_kernel_dim, principal_ideal_dim, quotient_algebra};
use crate::localstd::{colength, standard_basis, IdealBasis, StandardBasis};
use crate::omega::omega_codim;
use crate::polyring::{jacobian_minors, LocalOrder, Polynomial, VariableSet};
use crate::puiseux::{delta_oracle, puiseux_branches};

const ORD: LocalOrder = LocalOrder::NegDegRevLex;

fn require_plane_germ(f: &Polynomial) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch(format!("expected 2 variables, got {}", f.nvars())));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("the zero polynomial defines no curve germ"));
    }
    if !num_traits::Zero::is_zero(&f.constant_term()) {
        return Err(Error::NotAGerm("f(0,0) != 0".into()));
    }
    Ok(())
}

fn finite_basis(gens: Vec<Polynomial>) -> Result<(StandardBasis, u64)> {
    let sb = standard_basis(&IdealBasis::new(gens)?, ORD)?;
    let n = colength(&sb).finite().ok_or(Error::NonIsolated)?;
    Ok((sb, n))
}

/// Standard basis of the Jacobian ideal `<f_x, f_y>`.
pub fn milnor_basis(f: &Polynomial) -> Result<StandardBasis> {
    require_plane_germ(f)?;
    Ok(finite_basis(vec![f.partial_derivative(0), f.partial_derivative(1)])?.0)
}

/// Standard basis of the Tjurina ideal `<f, f_x, f_y>`.
pub fn tjurina_basis(f: &Polynomial) -> Result<StandardBasis> {
    require_plane_germ(f)?;
    Ok(finite_basis(vec![f.clone(), f.partial_derivative(0), f.partial_derivative(1)])?.0)
}

/// Milnor number: colength of `<f_x, f_y>`.
pub fn milnor(f: &Polynomial) -> Result<u64> {
    require_plane_germ(f)?;
    Ok(finite_basis(vec![f.partial_derivative(0), f.partial_derivative(1)])?.1)
}

/// Tjurina number: colength of `<f, f_x, f_y>`.
pub fn tjurina(f: &Polynomial) -> Result<u64> {
    require_plane_germ(f)?;
    Ok(finite_basis(vec![f.clone(), f.partial_derivative(0), f.partial_derivative(1)])?.1)
}

/// Colength of `I + (maximal minors of the Jacobian matrix)` for a complete
/// intersection curve `I = <gens>` in `len(vars)` variables.
pub fn tjurina_prime(gens: &[Polynomial], vars: &Arc<VariableSet>) -> Result<u64> {
    if gens.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroPolynomial("zero equation in a complete intersection"));
    }
    if gens.iter().any(|g| !num_traits::Zero::is_zero(&g.constant_term())) {
        return Err(Error::NotAGerm("an equation does not vanish at the origin".into()));
    }
    let mut ideal = gens.to_vec();
    ideal.extend(jacobian_minors(gens, vars)?);
    Ok(finite_basis(ideal)?.1)
}

/// Exact nonnegative ratio `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = num_integer::gcd(num, den);
        Self { num: num / g, den: den / g }
    }

    /// `self < other`, exactly.
    pub fn lt(&self, other: &Ratio) -> bool {
        (self.num as u128) * (other.den as u128) < (other.num as u128) * (self.den as u128)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: String) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self { name: name.into(), status, detail }
    }

    fn skipped(name: &str, why: &str) -> Self {
        Self { name: name.into(), status: CheckStatus::NotApplicable, detail: why.into() }
    }
}

/// Names of the checks in every record, in order.
pub const CHECK_NAMES: [&str; 8] = [
    "milnor_formula",
    "tjurina_lower_bound",
    "tjurina_range",
    "ratio_bounds",
    "omega_codim",
    "omega_equality",
    "multiplication_kernel",
    "lambda_chain",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub input: String,
    pub mu: u64,
    pub tau: u64,
    pub tau_prime: Option<u64>,
    pub m: u64,
    pub r: u64,
    pub delta: u64,
    pub lambda: u64,
    /// `mu / tau`; absent for a smooth germ.
    pub rho: Option<Ratio>,
    /// Present for irreducible germs.
    pub omega_codim: Option<u64>,
    pub quasihomogeneous: bool,
    pub checks: Vec<Check>,
}

impl InvariantRecord {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Computes every invariant of the plane germ `f = 0` and runs the checks.
pub fn full_record(f: &Polynomial) -> Result<InvariantRecord> {
    require_plane_germ(f)?;
    let (jsb, mu) = finite_basis(vec![f.partial_derivative(0), f.partial_derivative(1)])?;
    let tau = tjurina(f)?;
    let tau_prime = tjurina_prime(std::slice::from_ref(f), f.vars())?;
    let m = u64::from(f.order_of()?);

    let mut bs = puiseux_branches(f, 0)?;
    let r = bs.branch_count() as u64;
    if !(mu + r - 1).is_multiple_of(2) {
        return Err(Error::Internal(format!("mu + r - 1 is odd (mu = {mu}, r = {r})")));
    }
    let delta = (mu + r - 1) / 2;
    let delta_oracle = delta_oracle(&mut bs)?;

    let rho = (mu > 0).then(|| Ratio::new(mu, tau));
    let omega = if r == 1 { Some(omega_codim(&mut bs.branches_mut()[0])?) } else { None };

    let milnor_alg = quotient_algebra(&jsb)?;
    let kernel = multiplication_kernel_dim(f, &milnor_alg) as u64;
    let image = principal_ideal_dim(f, &milnor_alg) as u64;

    let (mu_i, tau_i, m_i, r_i, d_i) = (mu as i64, tau as i64, m as i64, r as i64, delta as i64);
    let lower = d_i + m_i - r_i;
    let mut checks = vec![
        Check::new(
            CHECK_NAMES[0],
            mu_i == 2 * delta_oracle as i64 - r_i + 1,
            format!("mu = {mu}, 2*delta - r + 1 = {} (delta = {delta_oracle} from branches)", 2 * delta_oracle as i64 - r_i + 1),
        ),
        Check::new(CHECK_NAMES[1], tau_i >= lower, format!("tau = {tau}, delta + m - r = {lower}")),
    ];
    if mu == 0 {
        checks.push(Check::skipped(CHECK_NAMES[2], "smooth germ"));
        checks.push(Check::skipped(CHECK_NAMES[3], "smooth germ"));
    } else {
        checks.push(Check::new(CHECK_NAMES[2], mu < 2 * tau && tau <= mu, format!("mu/2 = {mu}/2, tau = {tau}, mu = {mu}")));
        let rho = rho.expect("mu > 0");
        let ok = !rho.lt(&Ratio::new(1, 1)) && rho.lt(&Ratio::new(2, 1));
        checks.push(Check::new(CHECK_NAMES[3], ok, format!("rho = {rho}")));
    }
    match omega {
        Some(w) => {
            checks.push(Check::new(
                CHECK_NAMES[4],
                w as i64 == tau_i - d_i,
                format!("omega codim = {w}, tau - delta = {}", tau_i - d_i),
            ));
            let eq = w as i64 == d_i - r_i + 1;
            checks.push(Check::new(
                CHECK_NAMES[5],
                eq == (mu == tau),
                format!("omega codim = delta - r + 1: {eq}; mu = tau: {}", mu == tau),
            ));
        }
        None => {
            checks.push(Check::skipped(CHECK_NAMES[4], "reducible germ"));
            checks.push(Check::skipped(CHECK_NAMES[5], "reducible germ"));
        }
    }
    checks.push(Check::new(
        CHECK_NAMES[6],
        kernel == tau && image as i64 == mu_i - tau_i,
        format!("dim ker = {kernel} (tau = {tau}), dim <f> = {image} (mu - tau = {})", mu_i - tau_i),
    ));
    checks.push(Check::new(
        CHECK_NAMES[7],
        mu_i >= tau_i && tau_i >= lower,
        format!("mu = {mu} >= lambda = {tau} >= delta + m - r = {lower}"),
    ));

    Ok(InvariantRecord {
        input: f.render(),
        mu,
        tau,
        tau_prime: Some(tau_prime),
        m,
        r,
        delta,
        lambda: tau,
        rho,
        omega_codim: omega,
        quasihomogeneous: mu == tau,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &VariableSet::xy()).unwrap()
    }

    #[test]
    fn milnor_and_tjurina() {
        assert_eq!(milnor(&p("x^3 - y^2")).unwrap(), 2);
        assert_eq!(milnor(&p("x^5 + x^2*y^3 + y^4")).unwrap(), 12);
        assert_eq!(milnor(&p("x^5 + y^5 + x^3*y^3")).unwrap(), 16);
        assert_eq!(tjurina(&p("x^3 - y^2")).unwrap(), 2);
        assert_eq!(tjurina(&p("x^7 + x^3*y^4 + y^6")).unwrap(), 27);
        assert_eq!(tjurina(&p("x^5 + y^5 + x^3*y^3")).unwrap(), 15);
        assert_eq!(milnor(&p("x^2")), Err(Error::NonIsolated));
        assert!(matches!(milnor(&p("x + 1")), Err(Error::NotAGerm(_))));
    }

    #[test]
    fn tjurina_prime_cases() {
        let xy = VariableSet::xy();
        assert_eq!(tjurina_prime(&[p("x^3 - y^2")], &xy).unwrap(), 2);
        assert_eq!(tjurina_prime(&[p("x^5 + y^5 + x^3*y^3")], &xy).unwrap(), 15);
        let xyz = VariableSet::xyz();
        let g: Vec<Polynomial> =
            ["z^2 - x^3", "y^2 - x*z"].iter().map(|s| parse_polynomial(s, &xyz).unwrap()).collect();
        assert_eq!(tjurina_prime(&g, &xyz).unwrap(), 8);
        assert!(matches!(tjurina_prime(&g[..1], &xyz), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn cusp_record() {
        let rec = full_record(&p("x^3 - y^2")).unwrap();
        assert_eq!((rec.mu, rec.tau, rec.m, rec.r, rec.delta), (2, 2, 2, 1, 1));
        assert_eq!(rec.rho, Some(Ratio::new(1, 1)));
        assert_eq!(rec.omega_codim, Some(1));
        assert!(rec.quasihomogeneous);
        assert!(rec.all_pass(), "{rec:?}");
        let names: Vec<&str> = rec.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, CHECK_NAMES);
    }

    #[test]
    fn family_record() {
        let rec = full_record(&p("x^7 + x^3*y^4 + y^6")).unwrap();
        assert_eq!((rec.mu, rec.tau), (30, 27));
        assert_eq!(rec.rho, Some(Ratio::new(10, 9)));
        assert!(!rec.quasihomogeneous);
        assert!(rec.all_pass(), "{rec:?}");
    }

    #[test]
    fn node_and_smooth() {
        let rec = full_record(&p("x^2 + y^2")).unwrap();
        assert_eq!((rec.mu, rec.tau, rec.m, rec.r, rec.delta), (1, 1, 2, 2, 1));
        assert_eq!(rec.omega_codim, None);
        assert_eq!(rec.check("omega_codim").unwrap().status, CheckStatus::NotApplicable);
        assert!(rec.all_pass());
        let rec = full_record(&p("y - x^2")).unwrap();
        assert_eq!((rec.mu, rec.tau, rec.m, rec.r, rec.delta), (0, 0, 1, 1, 0));
        assert_eq!(rec.rho, None);
        assert_eq!(rec.omega_codim, Some(0));
        assert!(rec.all_pass());
    }

    #[test]
    fn record_json_shape() {
        let rec = full_record(&p("x^3 - y^2")).unwrap();
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["rho"], serde_json::json!({"num": 1, "den": 1}));
        assert_eq!(v["checks"][0]["status"], "pass");
        let back: InvariantRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, rec);
    }
}
