//! Closed-form constructors for the free-divisor families and the example
//! catalog, with the expected results attached to each fixture.

mod claims;
mod matrices;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, subsets, GradedMatrix, Polynomial, Rational, Ring, RingDescriptor};

pub use claims::{check_fixture, Check, Claim, ClaimOutcome};
pub use matrices::{family3_rees_candidate, phi_r, reference_matrices, MatrixRole, ReferenceMatrix};

/// Version of the fixture manifest layout.
pub const MANIFEST_VERSION: u32 = 1;

/// Default parameter caps (family1/2: n ≤ 6; family3/3g: αβ ≤ 12).
pub const MAX_N: usize = 6;
pub const MAX_ALPHA_BETA: u32 = 12;

/// Which family and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Family1 { n: usize },
    Family2 { n: usize },
    Family3 { alpha: u32, beta: u32 },
    Family3g { alpha: u32, beta: u32 },
    /// a₁..a₉ with L₁ = a₁x+a₂y+a₃z, L₂ = a₄x+a₅y+a₆z, L₃ = a₇x+a₈y+a₉z.
    Family4 { a: [i64; 9] },
    NormalCrossing { n: usize },
    Example { name: String },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Family1 { n } => write!(f, "family1:n={n}"),
            FamilySpec::Family2 { n } => write!(f, "family2:n={n}"),
            FamilySpec::Family3 { alpha, beta } => write!(f, "family3:alpha={alpha},beta={beta}"),
            FamilySpec::Family3g { alpha, beta } => write!(f, "family3g:alpha={alpha},beta={beta}"),
            FamilySpec::Family4 { a } => {
                let s: Vec<String> = a.iter().map(i64::to_string).collect();
                write!(f, "family4:a={}", s.join(","))
            }
            FamilySpec::NormalCrossing { n } => write!(f, "normal_crossing:n={n}"),
            FamilySpec::Example { name } => write!(f, "example:{name}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `family1:n=5`, `family3:alpha=3,beta=2`, `family4:a=0,1,0,1,0,0,1,0,0`, `example:sextic`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("family spec `{s}`: {m}"));
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let kv = |key: &str| -> Result<i64> {
            rest.split(',')
                .find_map(|p| p.trim().strip_prefix(key).and_then(|v| v.strip_prefix('=')))
                .ok_or_else(|| bad(&format!("missing `{key}`")))?
                .trim()
                .parse::<i64>()
                .map_err(|_| bad(&format!("`{key}` is not an integer")))
        };
        let uint = |key: &str| -> Result<u32> { u32::try_from(kv(key)?).map_err(|_| bad("negative parameter")) };
        Ok(match kind.trim() {
            "family1" => FamilySpec::Family1 { n: uint("n")? as usize },
            "family2" => FamilySpec::Family2 { n: uint("n")? as usize },
            "family3" => FamilySpec::Family3 { alpha: uint("alpha")?, beta: uint("beta")? },
            "family3g" => FamilySpec::Family3g { alpha: uint("alpha")?, beta: uint("beta")? },
            "normal_crossing" => FamilySpec::NormalCrossing { n: uint("n")? as usize },
            "family4" => {
                let list = rest.trim().strip_prefix("a=").ok_or_else(|| bad("missing `a=`"))?;
                let v: Vec<i64> = list
                    .split(',')
                    .map(|t| t.trim().parse::<i64>().map_err(|_| bad("coefficients must be integers")))
                    .collect::<Result<_>>()?;
                let a: [i64; 9] = v.try_into().map_err(|_| bad("exactly nine coefficients are required"))?;
                FamilySpec::Family4 { a }
            }
            "example" => FamilySpec::Example { name: rest.trim().to_string() },
            other => return Err(bad(&format!("unknown family `{other}`"))),
        })
    }
}

/// A polynomial with the results expected of it.
#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: String,
    pub spec: FamilySpec,
    pub polynomial: Polynomial,
    /// Set when the construction is legal but yields no valid input (zero or non-reduced).
    pub rejected: Option<String>,
    pub slow: bool,
    pub m_max: u32,
    pub claims: Vec<Claim>,
}

fn ring(names: &[String]) -> Ring {
    RingDescriptor::grevlex(names)
}

fn named(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// f = 2w^{n−1}u + Σ x_i w^{i−1} u^{n−i} in k[x₁..x_{n−2}, w, u].
pub fn family1(n: usize) -> Result<Polynomial> {
    if n < 4 {
        return Err(Error::InvalidArgument("family1 needs n ≥ 4".into()));
    }
    let mut names = named("x", n - 2);
    names.extend(["w".to_string(), "u".to_string()]);
    let r = ring(&names);
    let (w, u) = (Polynomial::var(&r, n - 2), Polynomial::var(&r, n - 1));
    let mut f = (&w.pow(n as u32 - 1) * &u).scale(&Rational::from_int(2));
    for i in 1..=n - 2 {
        f = &f + &(&(&Polynomial::var(&r, i - 1) * &w.pow(i as u32 - 1)) * &u.pow((n - i) as u32));
    }
    Ok(f)
}

/// f = wu·Π(x_{2i−1}u − x_{2i}w) in k[x₁..x_{2n−2}, w, u].
pub fn family2(n: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::InvalidArgument("family2 needs 2n ≥ 4".into()));
    }
    let mut names = named("x", 2 * n - 2);
    names.extend(["w".to_string(), "u".to_string()]);
    let r = ring(&names);
    let (w, u) = (Polynomial::var(&r, 2 * n - 2), Polynomial::var(&r, 2 * n - 1));
    let mut f = &w * &u;
    for i in 0..n - 1 {
        f = &f * &family2_factor(&r, i);
    }
    Ok(f)
}

/// x_{2i+1}u − x_{2i+2}w (0-based i).
pub(crate) fn family2_factor(r: &Ring, i: usize) -> Polynomial {
    let m = r.arity();
    let (w, u) = (Polynomial::var(r, m - 2), Polynomial::var(r, m - 1));
    &(&Polynomial::var(r, 2 * i) * &u) - &(&Polynomial::var(r, 2 * i + 1) * &w)
}

fn xyz() -> Ring {
    ring(&["x".to_string(), "y".to_string(), "z".to_string()])
}

/// (x^α − y^{α−1}z)^β + y^{αβ}.
pub fn family3(alpha: u32, beta: u32) -> Result<Polynomial> {
    if alpha < 2 || beta < 2 {
        return Err(Error::InvalidArgument("family3 needs α, β ≥ 2".into()));
    }
    let r = xyz();
    let (x, y, z) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
    let a = &x.pow(alpha) - &(&y.pow(alpha - 1) * &z);
    Ok(&a.pow(beta) + &y.pow(alpha * beta))
}

/// B = x^α − y^{α−1}z + y^α.
pub fn family3_b(alpha: u32) -> Polynomial {
    let r = xyz();
    let (x, y, z) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
    &(&x.pow(alpha) - &(&y.pow(alpha - 1) * &z)) + &y.pow(alpha)
}

/// g = Σ_{j<β} (−1)^j C(β,j) B^{β−j−1} y^{αj}, the cofactor of B in f for odd β.
pub fn family3g(alpha: u32, beta: u32) -> Result<Polynomial> {
    if alpha < 2 || beta < 3 || beta % 2 == 0 {
        return Err(Error::InvalidArgument("family3g needs α ≥ 2 and odd β ≥ 3".into()));
    }
    let b = family3_b(alpha);
    let y = Polynomial::var(b.ring(), 1);
    let mut g = Polynomial::zero(b.ring());
    for j in 0..beta {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = Rational::from_int(sign * binomial(beta, j));
        g = &g + &(&b.pow(beta - j - 1) * &y.pow(alpha * j)).scale(&c);
    }
    Ok(g)
}

/// The linear forms L₁, L₂, L₃ of a family-4 coefficient vector.
pub fn family4_forms(a: &[i64; 9]) -> [Polynomial; 3] {
    let r = xyz();
    let v: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
    let form = |k: usize| {
        let mut p = Polynomial::zero(&r);
        for i in 0..3 {
            p = &p + &v[i].scale(&Rational::from_int(a[3 * k + i]));
        }
        p
    };
    [form(0), form(1), form(2)]
}

/// Q₁ = xL₂ − yL₁, Q₂ = xL₃ − zL₁, Q₃ = yL₃ − zL₂.
pub fn family4_quadrics(a: &[i64; 9]) -> [Polynomial; 3] {
    let [l1, l2, l3] = family4_forms(a);
    let r = l1.ring().clone();
    let (x, y, z) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
    [&(&x * &l2) - &(&y * &l1), &(&x * &l3) - &(&z * &l1), &(&y * &l3) - &(&z * &l2)]
}

/// f = det of the Jacobian matrix of (Q₁, Q₂, Q₃).
pub fn family4(a: &[i64; 9]) -> Result<Polynomial> {
    let q = family4_quadrics(a);
    let r = q[0].ring().clone();
    let rows: Vec<Vec<Polynomial>> = (0..3).map(|i| q.iter().map(|qj| qj.partial_derivative(i)).collect()).collect();
    GradedMatrix::new(&r, rows, vec![0; 3], vec![1; 3])?.determinant()
}

/// x₁⋯x_n.
pub fn normal_crossing(n: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::InvalidArgument("normal crossing needs n ≥ 2".into()));
    }
    let r = ring(&named("x", n));
    Ok((0..n).fold(Polynomial::one(&r), |acc, i| &acc * &Polynomial::var(&r, i)))
}

/// Named polynomials of the example catalog: (name, variables, expression).
pub const EXAMPLES: &[(&str, &[&str], &str)] = &[
    ("xyz-plus-cube", &["x", "y", "z", "w"], "x*y*z + w^3"),
    ("gordan-noether", &["x", "y", "z", "w", "t"], "x*w^2 + y*t*w + z*t^2"),
    ("quintic", &["x", "y", "z", "w", "u"], "2*w^4*u + x*u^4 + y*w*u^3 + z*w^2*u^2"),
    ("sextic", &["x", "y", "z"], "x^6 - 2*x^3*y^2*z + y^4*z^2 + y^6"),
    ("quartic", &["x", "y", "z", "w"], "x^4 - x*y*z^2 + z^3*w"),
    ("hyperplane-quadric", &["x", "y", "z", "w", "t", "u"], "x*w*(y*z + z*t + t*u)"),
    ("irreducible-cubic", &["x", "y", "z", "w", "t"], "x*t^2 + y*z*t + z^3 + w^2*t"),
    ("few-linear-syzygies", &["x", "y", "z", "w"], "x*w^2 + y*z*w + z^3"),
    (
        "circulant",
        &["x", "y", "z", "w"],
        "det [x w z y; y x w z; w z y x; z y x w]",
    ),
    ("catalecticant", &["x", "y", "z", "w", "t", "u", "v"], "det [x y z; z w t; t u v]"),
];

/// Determinant of a bracketed matrix literal `det [a b; c d]`.
fn det_literal(text: &str, r: &Ring) -> Result<Polynomial> {
    let body = text.trim().strip_prefix("det [").and_then(|s| s.strip_suffix(']')).ok_or_else(|| {
        Error::InvalidArgument(format!("bad matrix literal `{text}`"))
    })?;
    let rows: Vec<Vec<Polynomial>> = body
        .split(';')
        .map(|row| row.split_whitespace().map(|e| Ok(parse_polynomial(e, r)?)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let k = rows.len();
    GradedMatrix::new(r, rows, vec![0; k], vec![1; k])?.determinant()
}

/// The catalog polynomial with the given name.
pub fn example(name: &str) -> Result<Polynomial> {
    let (_, vars, text) = EXAMPLES
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown example `{name}`")))?;
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let r = ring(&names);
    if text.starts_with("det [") {
        det_literal(text, &r)
    } else {
        Ok(parse_polynomial(text, &r)?)
    }
}

fn check_caps(spec: &FamilySpec, allow_large: bool) -> Result<()> {
    let over = match spec {
        FamilySpec::Family1 { n } | FamilySpec::Family2 { n } => *n > MAX_N,
        FamilySpec::Family3 { alpha, beta } | FamilySpec::Family3g { alpha, beta } => alpha * beta > MAX_ALPHA_BETA,
        _ => false,
    };
    if over && !allow_large {
        return Err(Error::InvalidArgument(format!("{spec} exceeds the default parameter cap")));
    }
    Ok(())
}

/// The polynomial of a spec.
pub fn polynomial(spec: &FamilySpec) -> Result<Polynomial> {
    match spec {
        FamilySpec::Family1 { n } => family1(*n),
        FamilySpec::Family2 { n } => family2(*n),
        FamilySpec::Family3 { alpha, beta } => family3(*alpha, *beta),
        FamilySpec::Family3g { alpha, beta } => family3g(*alpha, *beta),
        FamilySpec::Family4 { a } => family4(a),
        FamilySpec::NormalCrossing { n } => normal_crossing(*n),
        FamilySpec::Example { name } => example(name),
    }
}

/// Build a fixture; parameters above the caps need `allow_large`.
pub fn build(spec: &FamilySpec, allow_large: bool) -> Result<Fixture> {
    check_caps(spec, allow_large)?;
    let f = polynomial(spec)?;
    let rejected = match spec {
        FamilySpec::Family4 { .. } => family4_rejection(&f)?,
        _ => None,
    };
    let n = f.ring().arity();
    let mut fx = Fixture {
        name: fixture_name(spec),
        spec: spec.clone(),
        polynomial: f,
        rejected,
        slow: matches!(spec, FamilySpec::Family1 { n: 6 }),
        m_max: n as u32,
        claims: Vec::new(),
    };
    fx.claims = claims::expected_claims(&fx)?;
    Ok(fx)
}

fn family4_rejection(f: &Polynomial) -> Result<Option<String>> {
    if f.is_zero() {
        return Ok(Some("determinant vanishes".into()));
    }
    let red = crate::poly::squarefree_part(f, crate::Deadline::none())?;
    if red.degree() != f.degree() {
        return Ok(Some(format!("non-reduced cubic {f}")));
    }
    Ok(None)
}

fn fixture_name(spec: &FamilySpec) -> String {
    match spec {
        FamilySpec::Family1 { n } => format!("family1-n{n}"),
        FamilySpec::Family2 { n } => format!("family2-n{n}"),
        FamilySpec::Family3 { alpha, beta } => format!("family3-a{alpha}-b{beta}"),
        FamilySpec::Family3g { alpha, beta } => format!("family3g-a{alpha}-b{beta}"),
        FamilySpec::Family4 { a } => {
            let s: Vec<String> = a.iter().map(i64::to_string).collect();
            format!("family4-{}", s.join("_"))
        }
        FamilySpec::NormalCrossing { n } => format!("normal-crossing-n{n}"),
        FamilySpec::Example { name } => name.clone(),
    }
}

/// Family-4 coefficient sets of the regression corpus (the first two, then
/// three further samples, then two degenerate ones).
pub const FAMILY4_SAMPLES: &[[i64; 9]] = &[
    [0, 1, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 1, 1],
    [1, 1, 0, 0, 1, 1, 1, 0, 2],
    [2, 0, 1, 1, 3, 0, 0, 1, 1],
    [1, 2, 3, 0, 1, 4, 2, 0, 1],
    [1, -1, 0, 1, 1, 1, 0, 1, 1],
    [0, 1, 0, 1, 0, 0, 0, 0, 1],
];

/// Every spec of the regression corpus.
pub fn corpus_specs() -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for n in 4..=6 {
        v.push(FamilySpec::Family1 { n });
    }
    for n in 2..=3 {
        v.push(FamilySpec::Family2 { n });
    }
    for alpha in 2..=6u32 {
        for beta in 2..=6u32 {
            if alpha * beta <= MAX_ALPHA_BETA {
                v.push(FamilySpec::Family3 { alpha, beta });
            }
        }
    }
    for (alpha, beta) in [(2, 3), (3, 3), (2, 5)] {
        v.push(FamilySpec::Family3g { alpha, beta });
    }
    for a in FAMILY4_SAMPLES {
        v.push(FamilySpec::Family4 { a: *a });
    }
    for n in 3..=5 {
        v.push(FamilySpec::NormalCrossing { n });
    }
    for (name, _, _) in EXAMPLES {
        v.push(FamilySpec::Example { name: name.to_string() });
    }
    v
}

/// All fixtures of the regression corpus.
pub fn example_catalog() -> Result<Vec<Fixture>> {
    corpus_specs().iter().map(|s| build(s, false)).collect()
}

#[derive(Serialize, Deserialize)]
struct ManifestHeader {
    manifest_version: u32,
    fixtures: usize,
}

#[derive(Serialize, Deserialize)]
struct ManifestEntry {
    name: String,
    spec: String,
    polynomial: String,
    rejected: Option<String>,
    slow: bool,
    claims: Vec<Claim>,
}

/// Versioned, line-oriented JSON manifest: a header line, then one fixture per line.
pub fn manifest_text(fixtures: &[Fixture]) -> String {
    let header = ManifestHeader { manifest_version: MANIFEST_VERSION, fixtures: fixtures.len() };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for fx in fixtures {
        let e = ManifestEntry {
            name: fx.name.clone(),
            spec: fx.spec.to_string(),
            polynomial: fx.polynomial.to_string(),
            rejected: fx.rejected.clone(),
            slow: fx.slow,
            claims: fx.claims.clone(),
        };
        out.push_str(&serde_json::to_string(&e).expect("manifest entry serializes"));
        out.push('\n');
    }
    out
}

/// Read a manifest back. Each polynomial is rebuilt from its spec and must
/// match the recorded one; the claims are taken from the manifest as written.
pub fn parse_manifest(text: &str) -> Result<Vec<Fixture>> {
    let bad = |line: usize, m: String| Error::InvalidArgument(format!("manifest line {line}: {m}"));
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| bad(1, "empty manifest".into()))?;
    let header: ManifestHeader = serde_json::from_str(first).map_err(|e| bad(1, e.to_string()))?;
    if header.manifest_version != MANIFEST_VERSION {
        return Err(bad(1, format!("unsupported manifest version {}", header.manifest_version)));
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let e: ManifestEntry = serde_json::from_str(line).map_err(|err| bad(i + 1, err.to_string()))?;
        let spec: FamilySpec = e.spec.parse()?;
        let f = polynomial(&spec)?;
        let recorded = parse_polynomial(&e.polynomial, f.ring()).map_err(|err| bad(i + 1, err.to_string()))?;
        if recorded != f {
            return Err(bad(i + 1, format!("polynomial of `{}` does not match its spec", e.name)));
        }
        let m_max = f.ring().arity() as u32;
        out.push(Fixture {
            name: e.name,
            spec,
            polynomial: f,
            rejected: e.rejected,
            slow: e.slow,
            m_max,
            claims: e.claims,
        });
    }
    if out.len() != header.fixtures {
        return Err(bad(1, format!("header announces {} fixtures, found {}", header.fixtures, out.len())));
    }
    Ok(out)
}

/// Hankel ideal I₂[[v₀ … v_{k−1}], [v₁ … v_k]] of consecutive variables.
pub fn hankel_minors(vars: &[Polynomial]) -> Vec<Polynomial> {
    let k = vars.len().saturating_sub(1);
    two_by_two_minors(&vars[..k], &vars[1..])
}

/// 2 × 2 minors of the 2 × k matrix with the given rows.
pub fn two_by_two_minors(top: &[Polynomial], bottom: &[Polynomial]) -> Vec<Polynomial> {
    subsets(top.len(), 2)
        .into_iter()
        .map(|s| &(&top[s[0]] * &bottom[s[1]]) - &(&top[s[1]] * &bottom[s[0]]))
        .collect()
}

#[cfg(test)]
mod tests;
