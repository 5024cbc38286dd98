//! The coefficient polynomials `a, b, c` and the 4×4 linear system in
//! `(A, B, C, G)`, where `G = ⟨∂|η|², η̄⟩`.
//!
//! Matrix entries are built from their defining combinations of `a, b, c`
//! and `s³`. [`coefficient_identities`] re-derives every entry from the
//! second-derivative coefficients it was assembled from, so a transcription
//! error in either place shows up as a nonzero difference polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::check::Check;
use crate::poly::RationalPoly;
use crate::scalar::{format_rational, Ring};

/// Deliberate sign flips used to confirm that the checks can fail.
///
/// Flips act on the stated side only: closed-form lemma right-hand sides and
/// matrix entries. Substitution rules for derivatives keep the genuine
/// coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tamper {
    pub flip_a: bool,
    pub flip_b: bool,
    pub flip_c: bool,
    /// `(row, column)`, zero-based.
    pub flip_entry: Option<(usize, usize)>,
}

impl Tamper {
    pub const NONE: Tamper = Tamper { flip_a: false, flip_b: false, flip_c: false, flip_entry: None };

    pub fn is_none(&self) -> bool {
        *self == Self::NONE
    }

    /// Parses `a`, `b`, `c` or `entry:R,C` (one-based).
    pub fn parse(text: &str) -> Option<Tamper> {
        let mut t = Tamper::default();
        match text.trim() {
            "a" => t.flip_a = true,
            "b" => t.flip_b = true,
            "c" => t.flip_c = true,
            other => {
                let rest = other.strip_prefix("entry:")?;
                let (r, c) = rest.split_once(',')?;
                let r: usize = r.trim().parse().ok()?;
                let c: usize = c.trim().parse().ok()?;
                if !(1..=4).contains(&r) || !(1..=4).contains(&c) {
                    return None;
                }
                t.flip_entry = Some((r - 1, c - 1));
            }
        }
        Some(t)
    }
}

/// `a, b, c` and powers of `s` in some ring containing `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeffs<R> {
    pub s: R,
    pub s3: R,
    pub s6: R,
    pub a: R,
    pub b: R,
    pub c: R,
}

impl<R: Ring> Coeffs<R> {
    /// `a = -4s(s-1)²`, `b = -s(5s²-10s+4)`, `c = 4(s-1)(2s-1)`.
    pub fn new(s: R) -> Self {
        let k = R::from_i64;
        let one = R::one();
        let s2 = s.clone() * s.clone();
        let s3 = s2.clone() * s.clone();
        let sm1 = s.clone() - one.clone();
        let a = k(-4) * s.clone() * sm1.clone() * sm1.clone();
        let b = -(s.clone() * (k(5) * s2 - k(10) * s.clone() + k(4)));
        let c = k(4) * sm1 * (k(2) * s.clone() - one);
        Coeffs { s6: s3.clone() * s3.clone(), s3, a, b, c, s }
    }

    pub fn tampered(s: R, tamper: &Tamper) -> Self {
        let mut k = Self::new(s);
        if tamper.flip_a {
            k.a = -k.a;
        }
        if tamper.flip_b {
            k.b = -k.b;
        }
        if tamper.flip_c {
            k.c = -k.c;
        }
        k
    }
}

/// Rows of the system in column order `(A, B, C, G)`.
pub fn entries<R: Ring>(k: &Coeffs<R>, flip: Option<(usize, usize)>) -> [[R; 4]; 4] {
    let (s, s3, s6, a, b, c) = (&k.s, &k.s3, &k.s6, &k.a, &k.b, &k.c);
    let r = |x: &R| x.clone();
    let i = R::from_i64;
    let one = R::one();
    let two = i(2);
    let amb = r(a) - r(b);
    let x1 = -((amb.clone() + two.clone() * r(s3)) * (r(a) + r(b) + r(c) * r(s) + r(s3)));
    let x2 = two.clone() * r(b) * r(c) * (one.clone() - r(s)) - amb.clone() * r(s3) - r(b) * r(b);
    let x3 = r(b) * (amb.clone() + r(s3)) + r(s3) * (r(a) + r(s3) - two.clone() * r(c) * (one.clone() - r(s)));
    let y1 = -((amb.clone() + two.clone() * r(s3)) * (r(a) - two.clone() * r(c) * (r(s) - one.clone())));
    let y2 = r(s3) * (two.clone() * r(b) - r(a) - r(c) * r(s)) + r(c) * r(c) * r(s) * (r(s) - two.clone());
    let y3 = r(a) * r(c) * r(s) - r(b) * r(b) - r(b) * r(s3) - r(s6);
    let apt = r(a) + r(s3);
    let z1 = -(apt.clone() * (apt + r(c) * r(s)) + r(s3) * (amb.clone() + two.clone() * r(s3)));
    let z2 = r(s3) * (amb.clone() + r(s3));
    let z3 = r(s6);
    let grad = -(r(c) * (r(b) - r(s3)));
    let mut m = [
        [R::zero(), r(c) * (r(s) - two), r(b) - r(a), r(c)],
        [x1, x2, x3, grad.clone()],
        [y1, y2, y3, grad],
        [z1, z2, z3, R::zero()],
    ];
    if let Some((row, col)) = flip {
        m[row][col] = -m[row][col].clone();
    }
    m
}

/// 4×4 matrix of polynomials in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: [[RationalPoly; 4]; 4],
}

impl PolyMatrix {
    pub fn get(&self, row: usize, col: usize) -> &RationalPoly {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[[RationalPoly; 4]; 4] {
        &self.rows
    }

    pub fn eval(&self, s0: &BigRational) -> [[BigRational; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.rows[i][j].eval(s0)))
    }

    pub fn determinant_cofactor(&self) -> RationalPoly {
        let m: Vec<Vec<RationalPoly>> = self.rows.iter().map(|r| r.to_vec()).collect();
        cofactor_determinant(&m)
    }

    pub fn determinant_bareiss(&self) -> RationalPoly {
        let m: Vec<Vec<RationalPoly>> = self.rows.iter().map(|r| r.to_vec()).collect();
        bareiss_determinant(m, |num, den| num.exact_div(den).expect("Bareiss division is exact"))
    }
}

pub fn abc() -> (RationalPoly, RationalPoly, RationalPoly) {
    let k = Coeffs::new(RationalPoly::var());
    (k.a, k.b, k.c)
}

pub fn system_matrix() -> PolyMatrix {
    system_matrix_with(&Tamper::NONE)
}

pub fn system_matrix_with(tamper: &Tamper) -> PolyMatrix {
    let k = Coeffs::tampered(RationalPoly::var(), tamper);
    PolyMatrix { rows: entries(&k, tamper.flip_entry) }
}

/// Laplace expansion along the first row.
pub fn cofactor_determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let size = m.len();
    if size == 0 {
        return R::one();
    }
    if size == 1 {
        return m[0][0].clone();
    }
    let mut acc = R::zero();
    for (col, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect()).collect();
        let term = pivot.clone() * cofactor_determinant(&minor);
        acc = if col % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Fraction-free elimination with row pivoting; `exact_div` must divide exactly.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>, exact_div: impl Fn(&R, &R) -> R) -> R {
    let size = m.len();
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !m[r][k].is_zero()) else {
            return R::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in (k + 1)..size {
            for j in (k + 1)..size {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = exact_div(&num, &prev);
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// `64 s⁸ (s-2)³ (s-1)³ (2s-1)³ (3s-2)² (5s-4)`.
pub fn factored_determinant() -> RationalPoly {
    let lin = |c0: i64, c1: i64| RationalPoly::from_i64(&[c0, c1]);
    RationalPoly::from_i64(&[64])
        * RationalPoly::var().pow(8)
        * lin(-2, 1).pow(3)
        * lin(-1, 1).pow(3)
        * lin(-1, 2).pow(3)
        * lin(-2, 3).pow(2)
        * lin(-4, 5)
}

pub fn determinant() -> RationalPoly {
    system_matrix().determinant_bareiss()
}

/// Rational roots with multiplicities (by candidate testing) and the
/// remaining factor, which is constant when every root is rational.
pub fn rational_roots(p: &RationalPoly) -> (Vec<(BigRational, usize)>, RationalPoly) {
    let mut roots = Vec::new();
    let zero_mult = p.low_order();
    let mut rest = p.shift_down(zero_mult);
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let ints = integer_coefficients(&rest);
    let lead = ints.last().expect("nonzero").abs();
    let constant = ints[0].abs();
    let mut candidates = Vec::new();
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            let q = BigRational::new(num.clone(), den);
            candidates.push(q.clone());
            candidates.push(-q);
        }
    }
    candidates.sort();
    candidates.dedup();
    for q in candidates {
        let lin = RationalPoly::new(vec![-q.clone(), BigRational::one()]);
        let mut mult = 0;
        while let Some(quot) = rest.exact_div(&lin) {
            rest = quot;
            mult += 1;
        }
        if mult > 0 {
            roots.push((q, mult));
        }
    }
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    (roots, rest)
}

fn integer_coefficients(p: &RationalPoly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n: u64 = n.try_into().expect("coefficients fit in u64");
    let mut out: Vec<BigInt> = (1..=n).filter(|d| n.is_multiple_of(*d)).map(BigInt::from).collect();
    if out.is_empty() {
        out.push(BigInt::one());
    }
    out
}

/// Roots of the determinant with multiplicities; errors if a factor without
/// rational roots is left over.
pub fn singular_set() -> Result<Vec<(BigRational, usize)>, RationalPoly> {
    singular_set_of(&determinant())
}

pub fn singular_set_of(det: &RationalPoly) -> Result<Vec<(BigRational, usize)>, RationalPoly> {
    let (roots, rest) = rational_roots(det);
    if rest.degree() == Some(0) {
        Ok(roots)
    } else {
        Err(rest)
    }
}

/// Rank of the system with the gradient column dropped, at `s = s0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedRank {
    pub s: BigRational,
    pub rank: usize,
    /// Each row scaled so its first nonzero entry is 1; zero rows stay zero.
    pub rows: Vec<[BigRational; 3]>,
}

pub fn reduced_rank(s0: &BigRational) -> ReducedRank {
    reduced_rank_of(&system_matrix(), s0)
}

pub fn reduced_rank_of(matrix: &PolyMatrix, s0: &BigRational) -> ReducedRank {
    let full = matrix.eval(s0);
    let rows: Vec<[BigRational; 3]> = full
        .iter()
        .map(|r| {
            let row = [r[0].clone(), r[1].clone(), r[2].clone()];
            match row.iter().find(|x| !x.is_zero()).cloned() {
                Some(lead) => row.map(|x| x / lead.clone()),
                None => row,
            }
        })
        .collect();
    let rank = rank(full.iter().map(|r| r[..3].to_vec()).collect());
    ReducedRank { s: s0.clone(), rank, rows }
}

/// Exact rank by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(p, r);
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone() / m[r][col].clone();
                for j in col..cols {
                    let v = m[r][j].clone() * f.clone();
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether the system at `s0` forces `A = B = C = G = 0`.
pub fn conclude_c_zero(s0: &BigRational) -> bool {
    !determinant().eval(s0).is_zero()
}

/// Entries re-assembled from the proof's ingredients, in the same layout as [`entries`].
pub fn assembled_entries<R: Ring>(k: &Coeffs<R>) -> [[R; 4]; 4] {
    let (s, s3, a, b, c) = (&k.s, &k.s3, &k.a, &k.b, &k.c);
    let r = |x: &R| x.clone();
    let i = R::from_i64;
    let one = R::one();
    let two = i(2);
    let amb = r(a) - r(b);
    let sm2 = r(s) - two.clone();
    let oms = one.clone() - r(s);
    let es = eta_second_coefficients(k);
    // first-order pieces of rows 2 and 3
    let row2_first = [
        two.clone() * r(c) * oms.clone() * (amb.clone() + two.clone() * r(s3)),
        two.clone() * r(b) * r(c) * oms.clone(),
        -(two.clone() * r(c) * r(s3) * oms.clone()),
    ];
    let row3_first = [
        r(c) * r(s) * (amb.clone() + two.clone() * r(s3)),
        r(c) * r(s) * (r(c) * sm2.clone() - r(s3)),
        r(a) * r(c) * r(s),
    ];
    // c²η_{j,j̄l}η̄_l without its gradient term
    let item2_a = two.clone() * (amb.clone() + r(s3)) * (amb.clone() - r(c) * sm2.clone());
    let grad = -(r(c) * (r(b) - r(s3)));
    // first-order piece of row 4: c(s-1) T^l_ij conj(cT^k_{ij,l̄} η_k)
    let row4_first = -(two.clone() * r(a) * r(c) * (r(s) - one.clone())) - two.clone() * r(c) * r(s3) * (r(s) - one.clone());
    let x = [es[2][0].clone() - item2_a.clone() + row2_first[0].clone(), es[2][1].clone() + row2_first[1].clone(), es[2][2].clone() + row2_first[2].clone()];
    let y = [es[0][0].clone() - item2_a + row3_first[0].clone(), es[0][1].clone() + row3_first[1].clone(), es[0][2].clone() + row3_first[2].clone()];
    let z = [es[3][0].clone() + row4_first, es[3][1].clone(), es[3][2].clone()];
    [
        [R::zero(), r(c) * sm2, -amb, r(c)],
        [x[0].clone(), x[1].clone(), x[2].clone(), grad.clone()],
        [y[0].clone(), y[1].clone(), y[2].clone(), grad],
        [z[0].clone(), z[1].clone(), z[2].clone(), R::zero()],
    ]
}

/// `(A, B, C)` coefficients of the four second-derivative contractions:
/// `c²η_{j,l̄l}η̄_j`, `c²η_{j,j̄l}η̄_l` (its `A` part; the rest is the gradient
/// term), `c²conj(η_{j,l̄j̄}η_l)` and `c²conj(T^k_{ij,īj̄}η_k)`.
pub fn eta_second_coefficients<R: Ring>(k: &Coeffs<R>) -> [[R; 3]; 4] {
    let (s, s3, s6, a, b, c) = (&k.s, &k.s3, &k.s6, &k.a, &k.b, &k.c);
    let r = |x: &R| x.clone();
    let two = R::from_i64(2);
    let three = R::from_i64(3);
    let amb = r(a) - r(b);
    let sm2 = r(s) - two.clone();
    let apt = r(a) + r(s3);
    [
        [
            amb.clone() * (-(r(c) * sm2.clone()) + r(a) - two.clone() * r(b) + two.clone() * r(s3)) - two.clone() * r(a) * r(s3),
            (two.clone() * r(b) - r(a)) * r(s3),
            -(r(b) * r(b) + r(b) * r(s3) + r(s6)),
        ],
        [two.clone() * (amb.clone() + r(s3)) * (amb.clone() - r(c) * sm2.clone()), R::zero(), R::zero()],
        [
            amb.clone() * (r(a) - three * r(b) + r(s3) - r(c) * sm2.clone()) - two.clone() * r(s3) * (r(a) + r(b) + r(s3)),
            -(amb.clone() * r(s3) + r(b) * r(b)),
            r(b) * (amb.clone() + r(s3)) + r(s3) * apt.clone(),
        ],
        [
            apt.clone() * (-apt.clone() + r(c) * sm2) - r(s3) * (amb.clone() + two * r(s3)),
            r(s3) * (amb + r(s3)),
            r(s6),
        ],
    ]
}

fn poly_check(name: &str, lhs: &RationalPoly, rhs: &RationalPoly) -> Check {
    let diff = lhs - rhs;
    if diff.is_zero() {
        Check::pass(name, "difference ≡ 0")
    } else {
        Check::fail(name, format!("difference = {diff}"))
    }
}

/// Transcription guards for the coefficient polynomials and matrix entries.
pub fn coefficient_identities(tamper: &Tamper) -> Vec<Check> {
    let genuine = Coeffs::new(RationalPoly::var());
    let stated = Coeffs::tampered(RationalPoly::var(), tamper);
    let s = RationalPoly::var();
    let k = |c: i64| RationalPoly::from_i64(&[c]);
    let mut out = Vec::new();
    // 2(a - b - c(s-2)) = -2(s-2)(7s²-12s+4)
    let lhs = k(2) * (stated.a.clone() - stated.b.clone() - stated.c.clone() * (s.clone() - k(2)));
    let rhs = k(-2) * (s.clone() - k(2)) * RationalPoly::from_i64(&[4, -12, 7]);
    out.push(poly_check("norm-derivative coefficient 7s²-12s+4", &lhs, &rhs));
    let stored = entries(&stated, tamper.flip_entry);
    let assembled = assembled_entries(&genuine);
    const NAMES: [[&str; 4]; 4] = [
        ["(1,1)", "(1,2) c(s-2)", "(1,3) b-a", "(1,4) c"],
        ["x1", "x2", "x3", "(2,4) -c(b-s³)"],
        ["y1", "y2", "y3", "(3,4) -c(b-s³)"],
        ["z1", "z2", "z3", "(4,4)"],
    ];
    for i in 0..4 {
        for j in 0..4 {
            out.push(poly_check(&format!("entry {}", NAMES[i][j]), &stored[i][j], &assembled[i][j]));
        }
    }
    out
}

/// The five system checks: coefficient identities, determinant, singular
/// set, and the reduced ranks at `2/3` and `4/5`.
pub fn verify_system(tamper: &Tamper) -> Vec<Check> {
    let mut out = Vec::new();
    let ids = coefficient_identities(tamper);
    let failed: Vec<String> = ids.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    out.push(if failed.is_empty() {
        Check::pass("coefficient identities", format!("{} identities exact", ids.len()))
    } else {
        Check::fail("coefficient identities", failed.join("; "))
    });

    let matrix = system_matrix_with(tamper);
    let det = matrix.determinant_bareiss();
    let cof = matrix.determinant_cofactor();
    let target = factored_determinant();
    let deg = det.degree().map_or("-∞".to_string(), |d| d.to_string());
    out.push(if det != cof {
        Check::fail("determinant factorization", "cofactor and Bareiss determinants disagree")
    } else if det == target {
        Check::pass("determinant factorization", format!("degree {deg}, equals 64 s^8 (s-2)^3 (s-1)^3 (2s-1)^3 (3s-2)^2 (5s-4)"))
    } else {
        Check::fail("determinant factorization", format!("degree {deg}, difference = {}", &det - &target))
    });

    let expected = expected_singular_set();
    out.push(match singular_set_of(&det) {
        Ok(roots) if roots == expected => Check::pass("singular set", format_roots(&roots)),
        Ok(roots) => Check::fail("singular set", format!("got {}", format_roots(&roots))),
        Err(rest) => Check::fail("singular set", format!("irrational factor left: {rest}")),
    });

    let r23 = reduced_rank_of(&matrix, &crate::scalar::rational(2, 3));
    let plus = [BigRational::zero(), BigRational::one(), BigRational::one()];
    let minus = [BigRational::zero(), BigRational::one(), -BigRational::one()];
    let ok23 = r23.rank == 2 && r23.rows[0] == plus && r23.rows[2] == minus && r23.rows[3] == minus;
    out.push(Check::new(
        "reduced rank at s=2/3",
        ok23,
        format!("rank {}, rows 1,3,4 ∝ {}, {}, {}", r23.rank, fmt_row(&r23.rows[0]), fmt_row(&r23.rows[2]), fmt_row(&r23.rows[3])),
    ));
    let r45 = reduced_rank_of(&matrix, &crate::scalar::rational(4, 5));
    out.push(Check::new("reduced rank at s=4/5", r45.rank == 3, format!("rank {}", r45.rank)));
    out
}

pub fn expected_singular_set() -> Vec<(BigRational, usize)> {
    use crate::scalar::rational;
    vec![(rational(0, 1), 8), (rational(1, 2), 3), (rational(2, 3), 2), (rational(4, 5), 1), (rational(1, 1), 3), (rational(2, 1), 3)]
}

pub fn format_roots(roots: &[(BigRational, usize)]) -> String {
    let parts: Vec<String> = roots.iter().map(|(q, m)| format!("{}:{m}", format_rational(q))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_row(row: &[BigRational; 3]) -> String {
    let parts: Vec<String> = row.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn q(p: i64, d: i64) -> BigRational {
        rational(p, d)
    }

    #[test]
    fn abc_values() {
        let (a, b, c) = abc();
        assert_eq!((a.eval(&q(2, 1)), b.eval(&q(2, 1)), c.eval(&q(2, 1))), (q(-8, 1), q(-8, 1), q(12, 1)));
        assert_eq!(c.eval(&q(1, 2)), q(0, 1));
        assert_eq!(c.eval(&q(1, 1)), q(0, 1));
        assert_eq!((a.eval(&q(0, 1)), b.eval(&q(0, 1)), c.eval(&q(0, 1))), (q(0, 1), q(0, 1), q(4, 1)));
        assert_eq!((a.degree(), b.degree(), c.degree()), (Some(3), Some(3), Some(2)));
    }

    #[test]
    fn matrix_layout() {
        let m = system_matrix();
        assert_eq!(m.get(0, 3).degree(), Some(2));
        assert!(m.get(3, 3).is_zero());
        let row: Vec<BigRational> = (0..4).map(|j| m.get(0, j).eval(&q(2, 3))).collect();
        assert_eq!(row, vec![q(0, 1), q(16, 27), q(16, 27), q(-4, 9)]);
        assert_eq!(m.get(3, 0).eval(&q(2, 3)), q(0, 1));
        assert_eq!(*m.get(3, 1), RationalPoly::from_i64(&[0, 0, 0, 0, 0, -2, 2]));
    }

    #[test]
    fn determinant_matches_factorization() {
        let m = system_matrix();
        let det = m.determinant_bareiss();
        assert_eq!(det, m.determinant_cofactor());
        assert_eq!(det, factored_determinant());
        assert_eq!(det.degree(), Some(20));
        assert!(det.eval(&q(0, 1)).is_zero());
        let expected = BigRational::from_integer(BigInt::from(64i64 * 3i64.pow(8) * 8 * 125 * 49 * 11));
        assert_eq!(det.eval(&q(3, 1)), expected);
        let cubic = RationalPoly::from_i64(&[-1, 1]).pow(3);
        assert!(det.shift_down(8).exact_div(&cubic).is_some());
    }

    #[test]
    fn singular_set_is_exact() {
        assert_eq!(singular_set().unwrap(), expected_singular_set());
    }

    #[test]
    fn leftover_factor_is_reported() {
        let p = RationalPoly::from_i64(&[2, 0, 1]) * RationalPoly::from_i64(&[-1, 1]);
        assert_eq!(singular_set_of(&p).unwrap_err(), RationalPoly::from_i64(&[2, 0, 1]));
    }

    #[test]
    fn reduced_ranks() {
        let r = reduced_rank(&q(2, 3));
        assert_eq!(r.rank, 2);
        assert_eq!(r.rows[0], [q(0, 1), q(1, 1), q(1, 1)]);
        assert_eq!(r.rows[2], [q(0, 1), q(1, 1), q(-1, 1)]);
        assert_eq!(r.rows[3], [q(0, 1), q(1, 1), q(-1, 1)]);
        assert_eq!(reduced_rank(&q(4, 5)).rank, 3);
        assert_eq!(reduced_rank(&q(3, 1)).rank, 3);
    }

    #[test]
    fn conclusion_set() {
        assert!(conclude_c_zero(&q(3, 1)));
        assert!(!conclude_c_zero(&q(2, 3)));
        assert!(!conclude_c_zero(&q(0, 1)));
    }

    #[test]
    fn generic_points_have_full_rank() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let m = system_matrix();
        let singular: Vec<BigRational> = expected_singular_set().into_iter().map(|(r, _)| r).collect();
        let mut seen = 0;
        while seen < 20 {
            let s0 = q(rng.gen_range(-50..50), rng.gen_range(1..12));
            if singular.contains(&s0) {
                continue;
            }
            let full: Vec<Vec<BigRational>> = m.eval(&s0).iter().map(|r| r.to_vec()).collect();
            assert_eq!(rank(full), 4, "s = {s0}");
            seen += 1;
        }
    }

    #[test]
    fn identities_hold_and_catch_tampering() {
        assert!(coefficient_identities(&Tamper::NONE).iter().all(|c| c.passed));
        assert!(verify_system(&Tamper::NONE).iter().all(|c| c.passed));
        for t in ["a", "b", "c"] {
            let t = Tamper::parse(t).unwrap();
            assert!(verify_system(&t).iter().any(|c| !c.passed));
        }
    }

    #[test]
    fn tamper_parsing() {
        assert_eq!(Tamper::parse("entry:2,3").unwrap().flip_entry, Some((1, 2)));
        assert!(Tamper::parse("entry:5,1").is_none());
        assert!(Tamper::parse("d").is_none());
    }
}
