use serde::Serialize;

use super::{family4_forms, FamilySpec};
use crate::blowup::BlowupContext;
use crate::error::Result;
use crate::poly::{GradedMatrix, Polynomial, Rational, Ring, RingDescriptor};

/// How a reference matrix is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixRole {
    /// A full syzygy matrix of `generators`: row·M = 0 and the columns span all syzygies.
    Syzygies,
    /// Some syzygies of `generators`: row·M = 0 only.
    PartialSyzygies,
    /// Columns are logarithmic derivations of the polynomial (a Saito basis candidate).
    Derivations,
}

/// A closed-form matrix attached to a family member.
#[derive(Clone, Debug)]
pub struct ReferenceMatrix {
    pub name: String,
    pub role: MatrixRole,
    /// The row annihilated by the columns (the gradient unless stated otherwise).
    pub generators: Vec<Polynomial>,
    pub matrix: GradedMatrix,
}

fn from_entries(r: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<GradedMatrix> {
    let twists = vec![0; rows.len()];
    GradedMatrix::from_rows(r, rows, twists)
}

fn gradient(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.ring().arity()).map(|i| f.partial_derivative(i)).collect()
}

/// The (r+1) × r matrix with −w on the diagonal and u below it; its columns are
/// the syzygies of u^r, u^{r−1}w, …, w^r in k[w, u].
pub fn phi_r(r: usize) -> Result<ReferenceMatrix> {
    let ring = RingDescriptor::grevlex(&["w".to_string(), "u".to_string()]);
    let (w, u) = (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1));
    let m = phi_r_block(&ring, r, &w, &u)?;
    let generators = (0..=r).map(|i| &u.pow((r - i) as u32) * &w.pow(i as u32)).collect();
    Ok(ReferenceMatrix { name: format!("phi_{r}"), role: MatrixRole::Syzygies, generators, matrix: m })
}

fn phi_r_rows(ring: &Ring, r: usize, w: &Polynomial, u: &Polynomial) -> Vec<Vec<Polynomial>> {
    let mut rows = vec![vec![Polynomial::zero(ring); r]; r + 1];
    for j in 0..r {
        rows[j][j] = -w;
        rows[j + 1][j] = u.clone();
    }
    rows
}

fn phi_r_block(ring: &Ring, r: usize, w: &Polynomial, u: &Polynomial) -> Result<GradedMatrix> {
    from_entries(ring, phi_r_rows(ring, r, w, u))
}

/// ψ = [η | δ₁ | δ₂] for the first family.
fn family1_psi(f: &Polynomial) -> Result<ReferenceMatrix> {
    let r = f.ring().clone();
    let n = r.arity();
    let x = |i: usize| Polynomial::var(&r, i - 1);
    let (w, u) = (Polynomial::var(&r, n - 2), Polynomial::var(&r, n - 1));
    let mut rows = vec![vec![Polynomial::zero(&r); n - 1]; n];
    for (i, row) in phi_r_rows(&r, n - 3, &w, &u).into_iter().enumerate() {
        rows[i][..n - 3].clone_from_slice(&row);
    }
    let (d1, d2) = (n - 3, n - 2);
    for i in 2..=n - 2 {
        rows[i - 2][d1] = x(i).scale(&Rational::from_int(i as i64 - 1));
    }
    rows[n - 3][d1] = w.scale(&Rational::from_int(2 * (n as i64 - 1)));
    rows[n - 2][d1] = -&u;
    for i in 1..=n - 2 {
        let beta = (n * (n - i - 1) + 1) as i64;
        rows[i - 1][d2] = x(i).scale(&Rational::from_int(beta));
    }
    rows[n - 2][d2] = w.clone();
    rows[n - 1][d2] = u.scale(&Rational::from_int(-(n as i64 - 1)));
    Ok(ReferenceMatrix {
        name: "psi".into(),
        role: MatrixRole::Syzygies,
        generators: gradient(f),
        matrix: from_entries(&r, rows)?,
    })
}

/// ψ_n and 𝓜 for the second family.
fn family2_matrices(f: &Polynomial) -> Result<Vec<ReferenceMatrix>> {
    let r = f.ring().clone();
    let m = r.arity();
    let n = m / 2;
    let np1 = Rational::from_int(n as i64 + 1);
    let x = |i: usize| Polynomial::var(&r, i);
    let (w, u) = (Polynomial::var(&r, m - 2), Polynomial::var(&r, m - 1));
    let zero = || vec![vec![Polynomial::zero(&r); m - 1]; m];
    let mut psi = zero();
    for i in 0..n - 1 {
        psi[2 * i][2 * i] = w.clone();
        psi[2 * i + 1][2 * i] = u.clone();
        psi[2 * i][2 * i + 1] = x(2 * i).scale(&np1);
        psi[2 * i + 1][2 * i + 1] = x(2 * i + 1).scale(&np1);
        psi[m - 2][2 * i + 1] = -&w;
        psi[m - 1][2 * i + 1] = -&u;
        psi[2 * i + 1][m - 2] = x(2 * i + 1).scale(&np1);
    }
    psi[m - 2][m - 2] = w.scale(&Rational::from_int(-(n as i64)));
    psi[m - 1][m - 2] = u.clone();

    let mut big = vec![vec![Polynomial::zero(&r); m]; m];
    for i in 0..m {
        big[i][..m - 1].clone_from_slice(&psi[i]);
        big[i][m - 1] = Polynomial::var(&r, i);
    }
    for i in 0..n - 1 {
        big[2 * i][2 * i + 1] = x(2 * i);
        big[2 * i + 1][2 * i + 1] = x(2 * i + 1);
        big[m - 2][2 * i + 1] = Polynomial::zero(&r);
        big[m - 1][2 * i + 1] = Polynomial::zero(&r);
    }
    Ok(vec![
        ReferenceMatrix { name: "psi".into(), role: MatrixRole::Syzygies, generators: gradient(f), matrix: from_entries(&r, psi)? },
        ReferenceMatrix { name: "M".into(), role: MatrixRole::Derivations, generators: gradient(f), matrix: from_entries(&r, big)? },
    ])
}

/// Syzygy matrix of the third family for β = 2.
fn family3_phi(f: &Polynomial, alpha: u32) -> Result<ReferenceMatrix> {
    let r = f.ring().clone();
    let (x, y, z) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
    let a = alpha as i64;
    let k = |c: i64| Rational::from_int(c);
    let rows = vec![
        vec![y.pow(alpha - 1), (&(&x * &y.pow(alpha - 2)) * &z).scale(&k(a - 1))],
        vec![Polynomial::zero(&r), (&x.pow(alpha) - &(&y.pow(alpha - 1) * &z)).scale(&k(a))],
        vec![
            x.pow(alpha - 1).scale(&k(a)),
            &y.pow(alpha).scale(&k(a * a)) + &(&y.pow(alpha - 2) * &z.pow(2)).scale(&k(a * (a - 1))),
        ],
    ];
    Ok(ReferenceMatrix { name: "phi".into(), role: MatrixRole::Syzygies, generators: gradient(f), matrix: from_entries(&r, rows)? })
}

/// The three generators sy^{α−1}+αux^{α−1}, y^{α−2}H+αx^αt, xyst−uH of the
/// Rees ideal of the third family with β = 2, written in T₁ = s, T₂ = t, T₃ = u.
pub fn family3_rees_candidate(ctx: &BlowupContext, alpha: u32) -> Vec<Polynomial> {
    let e = ctx.extended_ring();
    let v = |i: usize| Polynomial::var(e, i);
    let (x, y, z, s, t, u) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let a = alpha as i64;
    let k = |c: i64| Rational::from_int(c);
    let h = &(&(&(&x * &z) * &s).scale(&k(a - 1))
        + &(&(&y.pow(2).scale(&k(a * a)) + &z.pow(2).scale(&k(a * (a - 1)))) * &u))
        - &(&(&y * &z) * &t).scale(&k(a));
    vec![
        &(&s * &y.pow(alpha - 1)) + &(&u * &x.pow(alpha - 1)).scale(&k(a)),
        &(&y.pow(alpha - 2) * &h) + &(&x.pow(alpha) * &t).scale(&k(a)),
        &(&(&(&x * &y) * &s) * &t) - &(&u * &h),
    ]
}

/// φ and Φ (with the Euler column) for the fourth family.
fn family4_matrices(f: &Polynomial, a: &[i64; 9]) -> Result<Vec<ReferenceMatrix>> {
    let [l1, l2, l3] = family4_forms(a);
    let r = l1.ring().clone();
    let ls = [l1, l2, l3];
    let v: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
    let k = |c: i64| Rational::from_int(c);
    let comb = |row: usize| {
        let mut p = Polynomial::zero(&r);
        for (j, l) in ls.iter().enumerate() {
            p = &p + &l.scale(&k(a[3 * row + j]));
        }
        p
    };
    let big_a = a[0] + a[4] + a[8];
    let big_b = -4 * a[5] * a[7] - (a[4] - a[8]).pow(2) - 4 * a[2] * a[6] - 4 * a[1] * a[3] + 3 * a[0] * (a[4] + a[8]);
    let big_c = 2 * a[0] + a[4] + a[8];
    let mut phi = Vec::new();
    let mut cap_phi = Vec::new();
    for i in 0..3 {
        phi.push(vec![
            &comb(i).scale(&k(6)) + &v[i].scale(&k(big_b - big_a * big_c)),
            &ls[i].scale(&k(3)) - &v[i].scale(&k(big_a)),
        ]);
        cap_phi.push(vec![comb(i), ls[i].clone(), v[i].clone()]);
    }
    let mut out = vec![
        ReferenceMatrix { name: "phi".into(), role: MatrixRole::Syzygies, generators: gradient(f), matrix: from_entries(&r, phi)? },
        ReferenceMatrix { name: "Phi".into(), role: MatrixRole::Derivations, generators: gradient(f), matrix: from_entries(&r, cap_phi)? },
    ];
    if *a == super::FAMILY4_SAMPLES[0] {
        let (x, y, z) = (v[0].clone(), v[1].clone(), v[2].clone());
        let simple = vec![
            vec![y.clone(), x.clone()],
            vec![x.clone(), y.clone()],
            vec![x.clone(), &y.scale(&k(3)) - &z.scale(&k(2))],
        ];
        out.push(ReferenceMatrix {
            name: "phi_simple".into(),
            role: MatrixRole::Syzygies,
            generators: gradient(f),
            matrix: from_entries(&r, simple)?,
        });
    }
    Ok(out)
}

/// Diagonal x₁..x_{n−1} over a last row of −x_n.
fn normal_crossing_phi(f: &Polynomial) -> Result<ReferenceMatrix> {
    let r = f.ring().clone();
    let n = r.arity();
    let mut rows = vec![vec![Polynomial::zero(&r); n - 1]; n];
    for j in 0..n - 1 {
        rows[j][j] = Polynomial::var(&r, j);
        rows[n - 1][j] = -&Polynomial::var(&r, n - 1);
    }
    Ok(ReferenceMatrix { name: "phi".into(), role: MatrixRole::Syzygies, generators: gradient(f), matrix: from_entries(&r, rows)? })
}

/// Every explicit matrix known for a family member.
pub fn reference_matrices(spec: &FamilySpec, f: &Polynomial) -> Result<Vec<ReferenceMatrix>> {
    Ok(match spec {
        FamilySpec::Family1 { n } => {
            let mut eta = phi_r(n - 3)?;
            eta.name = format!("phi_{}", n - 3);
            let psi = family1_psi(f)?;
            let mut eta_block = psi.clone();
            let rows: Vec<usize> = (0..*n).collect();
            let cols: Vec<usize> = (0..n - 3).collect();
            eta_block.name = "eta".into();
            eta_block.role = MatrixRole::PartialSyzygies;
            eta_block.matrix = psi.matrix.submatrix(&rows, &cols);
            vec![eta, eta_block, psi]
        }
        FamilySpec::Family2 { .. } => family2_matrices(f)?,
        FamilySpec::Family3 { alpha, beta: 2 } => vec![family3_phi(f, *alpha)?],
        FamilySpec::Family4 { a } if !f.is_zero() => family4_matrices(f, a)?,
        FamilySpec::NormalCrossing { .. } => vec![normal_crossing_phi(f)?],
        _ => Vec::new(),
    })
}
