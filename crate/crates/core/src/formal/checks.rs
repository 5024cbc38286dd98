//! Lemma items as `lhs - rhs` residual arrays.
//!
//! Left sides are product-rule expansions over a [`DerivativeTable`]; right
//! sides are closed forms with the stated coefficients, which may be
//! tampered. Every scalar that carries a barred derivative is compared after
//! multiplying through by the power of `c` that keeps it polynomial.

use crate::scalar::Ring;
use crate::system::{entries, eta_second_coefficients, Coeffs};

use super::contractions::ContractionValues;
use super::point::{FormalPoint, Ix};
use super::rules::anti_rule;
use super::table::DerivativeTable;

/// Residuals of one lemma item, laid out row-major over `shape`.
#[derive(Clone, Debug, PartialEq)]
pub struct Item<R> {
    pub name: String,
    pub shape: Vec<usize>,
    pub diff: Vec<R>,
}

/// First component whose residual is not negligible.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub index: Vec<usize>,
    pub magnitude: f64,
}

impl<R: Ring> Item<R> {
    fn new(name: impl Into<String>, shape: Vec<usize>, diff: Vec<R>) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), diff.len());
        Item { name: name.into(), shape, diff }
    }

    pub fn first_violation(&self, tol: f64) -> Option<Violation> {
        let pos = self.diff.iter().position(|x| !x.is_negligible(tol))?;
        let mut index = vec![0; self.shape.len()];
        let mut rest = pos;
        for (slot, &dim) in index.iter_mut().zip(&self.shape).rev() {
            *slot = rest % dim;
            rest /= dim;
        }
        Some(Violation { index, magnitude: self.diff[pos].magnitude() })
    }

    pub fn max_magnitude(&self) -> f64 {
        self.diff.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }
}

fn sum<R: Ring>(it: impl Iterator<Item = R>) -> R {
    it.fold(R::zero(), |acc, x| acc + x)
}

/// Everything an item needs: torsion, contractions, derivative table and the stated coefficients.
pub struct Context<'a, R> {
    pub n: usize,
    ix: Ix,
    t: &'a [R],
    tc: Vec<R>,
    pub cv: ContractionValues<R>,
    tab: &'a DerivativeTable<R>,
    k: Coeffs<R>,
    flip_entry: Option<(usize, usize)>,
    c_grad: R,
}

impl<'a, R: Ring> Context<'a, R> {
    pub fn new(p: &'a FormalPoint<R>, tab: &'a DerivativeTable<R>, stated: Coeffs<R>, flip_entry: Option<(usize, usize)>) -> Self {
        let n = p.n();
        let t = p.torsion();
        let cv = ContractionValues::compute(n, t);
        let mut ctx = Context {
            n,
            ix: p.ix(),
            t,
            tc: t.iter().map(Ring::conj).collect(),
            cv,
            tab,
            k: stated,
            flip_entry,
            c_grad: R::zero(),
        };
        ctx.c_grad = ctx.c_eta_gradient();
        ctx
    }

    fn t(&self, k: usize, i: usize, j: usize) -> R {
        self.t[self.ix.i3(k, i, j)].clone()
    }
    fn tb(&self, k: usize, i: usize, j: usize) -> R {
        self.tc[self.ix.i3(k, i, j)].clone()
    }
    fn e(&self, j: usize) -> R {
        self.cv.eta[j].clone()
    }
    fn eb(&self, j: usize) -> R {
        self.cv.eta[j].conj()
    }
    fn u(&self, i: usize, j: usize) -> R {
        self.cv.u[self.ix.i2(i, j)].clone()
    }
    fn v(&self, i: usize, j: usize) -> R {
        self.cv.v[self.ix.i2(i, j)].clone()
    }
    fn w(&self, i: usize, j: usize) -> R {
        self.cv.w[self.ix.i2(i, j)].clone()
    }
    fn x(&self, i: usize, p: usize, l: usize) -> R {
        self.cv.x[self.ix.i3(i, p, l)].clone()
    }
    fn y(&self, i: usize, p: usize, l: usize) -> R {
        self.cv.y[self.ix.i3(i, p, l)].clone()
    }
    fn z(&self, i: usize, p: usize, l: usize) -> R {
        self.cv.z[self.ix.i3(i, p, l)].clone()
    }
    fn th(&self, k: usize, i: usize, j: usize, l: usize) -> R {
        self.tab.t_hol(k, i, j, l).clone()
    }
    fn ta(&self, k: usize, i: usize, j: usize, l: usize) -> R {
        self.tab.t_anti(k, i, j, l).clone()
    }
    fn eh(&self, j: usize, l: usize) -> R {
        self.tab.eta_hol(j, l).clone()
    }
    fn ea(&self, j: usize, l: usize) -> R {
        self.tab.eta_anti(j, l).clone()
    }
    fn e2(&self, j: usize, a: usize, b: usize) -> R {
        self.tab.eta_second(j, a, b).clone()
    }
    fn int(v: i64) -> R {
        R::from_i64(v)
    }
    fn sm2(&self) -> R {
        self.k.s.clone() - Self::int(2)
    }
    fn amb(&self) -> R {
        self.k.a.clone() - self.k.b.clone()
    }

    fn grid2(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
    }
    fn grid3(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
    }
    fn grid4(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> {
        let n = self.n;
        self.grid3().flat_map(move |(i, j, k)| (0..n).map(move |l| (i, j, k, l)))
    }

    /// `c⟨∂|η|², η̄⟩ = Σ (c η_{i,j} η̄_i + η_i conj(c η_{i,j̄})) η̄_j`.
    fn c_eta_gradient(&self) -> R {
        let c = self.k.c.clone();
        sum(self.grid2().map(|(i, j)| (c.clone() * self.eh(i, j) * self.eb(i) + self.e(i) * self.ea(i, j).conj()) * self.eb(j)))
    }

    /// `c⟨∂|T|², η̄⟩` by the product rule.
    fn c_torsion_gradient(&self) -> R {
        let c = self.k.c.clone();
        sum(self.grid4().map(|(k, i, j, l)| (c.clone() * self.th(k, i, j, l) * self.tb(k, i, j) + self.t(k, i, j) * self.ta(k, i, j, l).conj()) * self.eb(l)))
    }

    fn abc(&self) -> [R; 3] {
        [self.cv.scalar_a.clone(), self.cv.scalar_b.clone(), self.cv.scalar_c.clone()]
    }

    fn dot3(coef: &[R], v: &[R; 3]) -> R {
        coef[0].clone() * v[0].clone() + coef[1].clone() * v[1].clone() + coef[2].clone() * v[2].clone()
    }

    // ---- torsion identities ----

    /// `T^k_{ij,l} = -(s-2) T^r_ij T^k_rl`, the cyclic identity, and the `c T^k_{ij,l̄}` rule.
    pub fn torsion_identity_items(&self) -> Vec<Item<R>> {
        let n = self.n;
        let sm2 = self.sm2();
        let one = self.grid4().map(|(k, i, j, l)| self.th(k, i, j, l) + sm2.clone() * sum((0..n).map(|r| self.t(r, i, j) * self.t(k, r, l)))).collect();
        let sm1 = self.k.s.clone() - R::one();
        let two = self
            .grid4()
            .map(|(i, j, k, l)| {
                sm1.clone() * sum((0..n).map(|r| self.t(r, j, k) * self.t(l, i, r) + self.t(r, k, i) * self.t(l, j, r) + self.t(r, i, j) * self.t(l, k, r)))
            })
            .collect();
        let rule = anti_rule(n, self.t, &self.k);
        let three = self.tab.t_anti.iter().zip(rule).map(|(x, y)| x.clone() - y).collect();
        vec![
            Item::new("torsion identity 1", vec![n; 4], one),
            Item::new("torsion identity 2", vec![n; 4], two),
            Item::new("torsion identity 3", vec![n; 4], three),
        ]
    }

    // ---- η corollary ----

    pub fn eta_corollary_items(&self) -> Vec<Item<R>> {
        let n = self.n;
        let (b, c, s, s3) = (&self.k.b, &self.k.c, &self.k.s, &self.k.s3);
        let amb = self.amb();
        let sm2 = self.sm2();
        let one = self.grid2().map(|(k, l)| self.eh(k, l) + sm2.clone() * sum(self.grid2().map(|(i, r)| self.t(r, i, k) * self.t(i, r, l)))).collect();
        let sm1 = s.clone() - R::one();
        let two = self.grid2().map(|(j, k)| sm1.clone() * sum((0..n).map(|i| self.t(i, j, k) * self.e(i)))).collect();
        let mut three = Vec::with_capacity(2 * n * n);
        for (j, l) in self.grid2() {
            let rhs = amb.clone() * sum(self.grid2().map(|(p, k)| self.t(p, k, j) * self.tb(p, k, l)))
                + b.clone() * sum((0..n).map(|p| self.e(p) * self.tb(j, l, p)))
                + s3.clone() * sum((0..n).map(|p| sum((0..n).map(|k| self.t(l, k, p) * self.tb(j, k, p))) - self.t(l, j, p) * self.eb(p)));
            three.push(self.ea(j, l) - rhs);
        }
        for (j, l) in self.grid2() {
            let rhs = amb.clone() * self.v(j, l) + b.clone() * self.u(j, l).conj() + s3.clone() * (self.w(l, j) - self.u(l, j));
            three.push(self.ea(j, l) - rhs);
        }
        let s2 = s.clone() * s.clone();
        let four = Self::int(2) * (Self::int(2) * s.clone() - R::one()) * sum((0..n).map(|r| self.ea(r, r)))
            - c.clone() * (s2 * self.cv.norm_t.clone() + s.clone() * (Self::int(2) - Self::int(3) * s.clone()) * self.cv.norm_eta.clone());
        let five = (0..n)
            .map(|l| {
                let lhs = sum((0..n).map(|j| self.ea(j, l) * self.eb(j)));
                let rhs = amb.clone() * sum(self.grid3().map(|(p, k, j)| self.t(p, k, j) * self.tb(p, k, l) * self.eb(j)));
                lhs - rhs
            })
            .collect();
        vec![
            Item::new("eta corollary 1", vec![n, n], one),
            Item::new("eta corollary 2", vec![n, n], two),
            Item::new("eta corollary 3", vec![2, n, n], three),
            Item::new("eta corollary 4", vec![1], vec![four]),
            Item::new("eta corollary 5", vec![n], five),
        ]
    }

    // ---- norm derivatives ----

    pub fn norm_derivative_items(&self) -> Vec<Item<R>> {
        let (a_, b_, c_) = (&self.cv.scalar_a, &self.cv.scalar_b, &self.cv.scalar_c);
        let one = self.cv.scalar_a_tilde.clone() - Self::int(2) * a_.clone();
        let grad_t = self.c_torsion_gradient();
        let stated = Self::int(2) * (self.amb() - self.k.c.clone() * self.sm2()) * a_.clone();
        // 7s² - 12s + 4
        let s = self.k.s.clone();
        let quad = Self::int(7) * s.clone() * s.clone() - Self::int(12) * s + Self::int(4);
        let factored = -(Self::int(2) * self.sm2() * quad * a_.clone());
        let two = vec![grad_t.clone() - stated, grad_t - factored];
        let three = self.c_grad.clone() - (-(self.k.c.clone() * self.sm2() * b_.clone()) + self.amb() * c_.clone());
        vec![
            Item::new("norm-derivative 1", vec![1], vec![one]),
            Item::new("norm-derivative 2", vec![2], two),
            Item::new("norm-derivative 3", vec![1], vec![three]),
        ]
    }

    // ---- X/Y/Z traces ----

    pub fn xyz_item(&self) -> Item<R> {
        let a = self.cv.scalar_a.clone();
        let expected = [a.clone(), Self::int(2) * a.clone(), self.cv.scalar_b.clone(), R::zero(), a, R::zero()];
        let diff = self.cv.xyz_traces().into_iter().zip(expected).map(|(x, y)| x - y).collect();
        Item::new("X/Y/Z traces", vec![6], diff)
    }

    // ---- U/V/W derivatives ----

    pub fn uvw_items(&self) -> Vec<Item<R>> {
        let n = self.n;
        let (a, b, c, s3) = (&self.k.a, &self.k.b, &self.k.c, &self.k.s3);
        let amb = self.amb();
        let csm2 = c.clone() * self.sm2();

        let one = self
            .grid3()
            .map(|(p, q, l)| {
                let lhs = sum((0..n).map(|k| c.clone() * self.th(p, q, k, l) * self.eb(k) + self.t(p, q, k) * self.ea(k, l).conj()));
                let rhs = -(csm2.clone() * sum((0..n).map(|r| self.t(p, r, l) * self.u(r, q))))
                    + sum((0..n).map(|r| {
                        self.t(p, q, r)
                            * (amb.clone() * self.v(l, r) + b.clone() * self.u(r, l) + s3.clone() * self.w(r, l) - s3.clone() * self.u(l, r).conj())
                    }));
                lhs - rhs
            })
            .collect();

        let two = self
            .grid3()
            .map(|(k, i, l)| {
                let lhs = sum((0..n).map(|j| self.ta(k, i, j, l) * self.eb(j) + self.t(k, i, j) * c.clone() * self.eh(j, l).conj()));
                let rhs = sum((0..n).map(|r| {
                    a.clone() * self.u(r, i) * self.tb(r, k, l) - b.clone() * self.u(k, r) * self.tb(i, r, l) - s3.clone() * self.u(l, r) * self.tb(i, r, k)
                })) - csm2.clone() * self.y(i, l, k).conj();
                lhs - rhs
            })
            .collect();

        let mut three = Vec::with_capacity(2 * n * n * n);
        let mut four = Vec::with_capacity(2 * n * n * n);
        let mut three_alt = Vec::with_capacity(n * n * n);
        let mut four_alt = Vec::with_capacity(n * n * n);
        for (p, i, l) in self.grid3() {
            let lhs = sum(self.grid2().map(|(r, k)| c.clone() * self.th(r, p, k, l) * self.tb(r, i, k) + self.t(r, p, k) * self.ta(r, i, k, l).conj()));
            let lhs_bar = sum(self.grid2().map(|(r, k)| self.ta(r, i, k, l) * self.tb(r, p, k) + self.t(r, i, k) * (c.clone() * self.th(r, p, k, l)).conj())).conj();
            let rhs = (a.clone() - csm2.clone()) * self.x(i, p, l) - b.clone() * self.x(i, l, p) - b.clone() * sum((0..n).map(|r| self.v(p, r) * self.t(i, r, l)))
                - s3.clone() * self.y(i, p, l)
                + s3.clone() * self.z(i, p, l);
            three.push(lhs - rhs.clone());
            three_alt.push(lhs_bar - rhs);
        }
        three.extend(three_alt);
        for (p, k, l) in self.grid3() {
            let lhs = sum(self.grid2().map(|(i, j)| c.clone() * self.th(p, i, j, l) * self.tb(k, i, j) + self.t(p, i, j) * self.ta(k, i, j, l).conj()));
            let lhs_bar = sum(self.grid2().map(|(i, j)| self.ta(k, i, j, l) * self.tb(p, i, j) + self.t(k, i, j) * (c.clone() * self.th(p, i, j, l)).conj())).conj();
            let rhs = a.clone() * sum((0..n).map(|r| self.w(p, r) * self.t(r, k, l)))
                - Self::int(2) * b.clone() * self.z(p, l, k)
                - Self::int(2) * s3.clone() * self.z(p, k, l)
                - csm2.clone() * sum((0..n).map(|r| self.w(r, k) * self.t(p, r, l)));
            four.push(lhs - rhs.clone());
            four_alt.push(lhs_bar - rhs);
        }
        four.extend(four_alt);
        vec![
            Item::new("U/V/W derivative 1", vec![n; 3], one),
            Item::new("U/V/W derivative 2", vec![n; 3], two),
            Item::new("U/V/W derivative 3", vec![2, n, n, n], three),
            Item::new("U/V/W derivative 4", vec![2, n, n, n], four),
        ]
    }

    // ---- η second derivatives ----

    /// The four contractions `c²η_{j,l̄l}η̄_j`, `c²η_{j,j̄l}η̄_l`, `c²conj(η_{j,l̄j̄}η_l)`, `c²conj(T^k_{ij,īj̄}η_k)`.
    pub fn eta_second_values(&self) -> [R; 4] {
        let n = self.n;
        let one = sum(self.grid2().map(|(j, l)| self.e2(j, n + l, l) * self.eb(j)));
        let two = sum(self.grid2().map(|(j, l)| self.e2(j, n + j, l) * self.eb(l)));
        let three = sum(self.grid2().map(|(j, l)| (self.e2(j, n + l, n + j) * self.e(l)).conj()));
        let four = sum(self.grid2().map(|(k, j)| (self.tab.divergence_second(k, j, n + j).clone() * self.e(k)).conj()));
        [one, two, three, four]
    }

    pub fn eta_second_items(&self) -> Vec<Item<R>> {
        let n = self.n;
        let es = eta_second_coefficients(&self.k);
        let abc = self.abc();
        let vals = self.eta_second_values();
        let grad_term = (self.k.b.clone() - self.k.s3.clone()) * self.c_grad.clone();
        let two_rhs = Self::dot3(&es[1], &abc) + grad_term;
        let two_bar = sum(self.grid2().map(|(j, l)| (self.e2(j, n + j, n + l) * self.e(l)).conj()));
        vec![
            Item::new("eta second derivative 1", vec![1], vec![vals[0].clone() - Self::dot3(&es[0], &abc)]),
            Item::new("eta second derivative 2", vec![2], vec![vals[1].clone() - two_rhs.clone(), two_bar - two_rhs]),
            Item::new("eta second derivative 3", vec![1], vec![vals[2].clone() - Self::dot3(&es[2], &abc)]),
            Item::new("eta second derivative 4", vec![1], vec![vals[3].clone() - Self::dot3(&es[3], &abc)]),
        ]
    }

    // ---- linear-system rows ----

    /// `c ×` the assembled second-order expressions behind rows 2, 3 and 4.
    pub fn assembled_rows(&self) -> [R; 3] {
        let n = self.n;
        let (c, s) = (&self.k.c, &self.k.s);
        let one = R::one();
        let row2 = sum(self.grid2().map(|(j, l)| (self.e2(j, n + l, n + j).conj() - self.e2(j, n + j, n + l).conj()) * self.eb(l)))
            + Self::int(2) * (one.clone() - s.clone()) * c.clone() * sum(self.grid3().map(|(j, l, k)| self.t(k, j, l) * self.ea(j, k).conj() * self.eb(l)));
        let row3 = sum(self.grid2().map(|(j, l)| (self.e2(j, n + l, l) - self.e2(l, n + l, j)) * self.eb(j)))
            + s.clone()
                * c.clone()
                * sum(self.grid2().map(|(j, k)| {
                    (self.e(k) * self.ea(j, k) - c.clone() * self.eb(k) * self.eh(j, k) - sum((0..n).map(|l| self.t(l, j, k) * self.ea(l, k)))) * self.eb(j)
                }));
        let row4 = sum(self.grid2().map(|(k, j)| self.tab.divergence_second(k, j, n + j).conj() * self.eb(k)))
            + (s.clone() - one) * c.clone() * sum(self.grid4().map(|(i, j, l, k)| self.t(l, i, j) * self.ta(k, i, j, l).conj() * self.eb(k)));
        [c.clone() * row2, c.clone() * row3, c.clone() * row4]
    }

    /// `c × (M_row · (A, B, C, G))` for each row, using `cG` for the last column.
    pub fn row_forms(&self) -> [R; 4] {
        let m = entries(&self.k, self.flip_entry);
        let abc = self.abc();
        let c = self.k.c.clone();
        std::array::from_fn(|row| c.clone() * Self::dot3(&m[row][..3], &abc) + m[row][3].clone() * self.c_grad.clone())
    }

    pub fn row_items(&self) -> Vec<Item<R>> {
        let lhs = self.assembled_rows();
        let forms = self.row_forms();
        (0..3).map(|i| Item::new(format!("system row {}", i + 2), vec![1], vec![lhs[i].clone() - forms[i + 1].clone()])).collect()
    }

    /// Row values themselves, which vanish only under the Kähler-like hypothesis.
    pub fn row_vanishing_item(&self) -> Item<R> {
        let lhs = self.assembled_rows();
        let forms = self.row_forms();
        let mut diff = forms.to_vec();
        diff.extend(lhs);
        Item::new("system rows vanish", vec![7], diff)
    }

    /// Cyclic identity, `T^i_jk η_i = 0` and `Ã = 2A` on the sample itself.
    pub fn family_item(&self) -> Item<R> {
        let n = self.n;
        let mut diff: Vec<R> = self
            .grid4()
            .map(|(i, j, k, l)| sum((0..n).map(|r| self.t(r, j, k) * self.t(l, i, r) + self.t(r, k, i) * self.t(l, j, r) + self.t(r, i, j) * self.t(l, k, r))))
            .collect();
        diff.extend(self.grid2().map(|(j, k)| sum((0..n).map(|i| self.t(i, j, k) * self.e(i)))));
        let len = diff.len();
        Item::new("torsion family constraints", vec![len], diff)
    }
}
