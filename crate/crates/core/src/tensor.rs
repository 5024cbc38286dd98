//! Dense multi-index tensors over a unitary (1,0)-frame.
//!
//! Every slot carries its kind (holomorphic or antiholomorphic, upper or
//! lower). Contractions are only allowed between slot pairs the unitary
//! metric pairs with identity components; anything else is an error rather
//! than a silent metric insertion.
//!
//! The Hermitian pairing is `<X, Y> = g(X, conj Y)`: complex linear in the
//! first slot and antilinear in the second. Frame formulas elsewhere in the
//! crate use the complex-bilinear extension `g(e_i, conj e_j) = δ_ij`.

use std::fmt;

use thiserror::Error;

use crate::scalar::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    HolUp,
    HolDown,
    AntiUp,
    AntiDown,
}

impl Slot {
    pub fn conjugate(self) -> Slot {
        match self {
            Slot::HolUp => Slot::AntiUp,
            Slot::HolDown => Slot::AntiDown,
            Slot::AntiUp => Slot::HolUp,
            Slot::AntiDown => Slot::HolDown,
        }
    }

    pub fn is_hol(self) -> bool {
        matches!(self, Slot::HolUp | Slot::HolDown)
    }

    pub fn is_upper(self) -> bool {
        matches!(self, Slot::HolUp | Slot::AntiUp)
    }

    /// Whether the unitary metric pairs these slot kinds with identity components.
    pub fn pairs_with(self, other: Slot) -> bool {
        use Slot::*;
        matches!(
            (self, other),
            (HolUp, HolDown)
                | (HolDown, HolUp)
                | (AntiUp, AntiDown)
                | (AntiDown, AntiUp)
                | (HolUp, AntiUp)
                | (AntiUp, HolUp)
                | (HolDown, AntiDown)
                | (AntiDown, HolDown)
        )
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Slot::HolUp => "hol-up",
            Slot::HolDown => "hol-down",
            Slot::AntiUp => "anti-up",
            Slot::AntiDown => "anti-down",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("slot {slot} out of range for a rank-{rank} tensor")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("cannot contract a slot with itself (slot {0})")]
    SameSlot(usize),
    #[error("slots {a} ({kind_a}) and {b} ({kind_b}) are not paired by the unitary metric")]
    IncompatibleSlots { a: usize, b: usize, kind_a: Slot, kind_b: Slot },
    #[error("expected {expected} components, got {got}")]
    DataLength { expected: usize, got: usize },
    #[error("frame change is not unitary (|u^H u - I| = {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
}

/// Square matrix with row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<S> {
    size: usize,
    data: Vec<S>,
}

impl<S: Ring> SquareMatrix<S> {
    pub fn zeros(size: usize) -> Self {
        SquareMatrix { size, data: vec![S::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let data = (0..size * size).map(|k| f(k / size, k % size)).collect();
        SquareMatrix { size, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, TensorError> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(TensorError::Dimension(row.len(), size));
            }
            data.extend(row);
        }
        Ok(SquareMatrix { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.size + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> SquareMatrix<T> {
        SquareMatrix { size: self.size, data: self.data.iter().map(f).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(j, i).clone())
    }

    pub fn conjugate(&self) -> Self {
        self.map(Ring::conj)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.size;
        Self::from_fn(n, |i, j| {
            (0..n).fold(S::zero(), |acc, k| acc + self.get(i, k).clone() * other.get(k, j).clone())
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(i, j).clone() + other.get(i, j).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(i, j).clone() - other.get(i, j).clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        (0..self.size)
            .map(|i| (0..self.size).fold(S::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone()))
            .collect()
    }

    pub fn trace(&self) -> S {
        (0..self.size).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }

    /// `|u^H u - I|` in max norm.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().matmul(self).sub(&Self::identity(self.size)).max_abs()
    }
}

/// Frame components of a tensor, one index range `0..n` per slot.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameTensor<S> {
    n: usize,
    slots: Vec<Slot>,
    data: Vec<S>,
}

impl<S: Ring> FrameTensor<S> {
    pub fn zeros(n: usize, slots: &[Slot]) -> Self {
        assert!(n > 0, "frame dimension must be positive");
        let len = n.pow(slots.len() as u32);
        FrameTensor { n, slots: slots.to_vec(), data: vec![S::zero(); len] }
    }

    pub fn scalar(value: S) -> Self {
        FrameTensor { n: 1, slots: Vec::new(), data: vec![value] }
    }

    pub fn from_fn(n: usize, slots: &[Slot], f: impl Fn(&[usize]) -> S) -> Self {
        let mut t = Self::zeros(n, slots);
        let mut idx = vec![0; slots.len()];
        for flat in 0..t.data.len() {
            t.unflatten(flat, &mut idx);
            t.data[flat] = f(&idx);
        }
        t
    }

    pub fn from_data(n: usize, slots: &[Slot], data: Vec<S>) -> Result<Self, TensorError> {
        let expected = n.pow(slots.len() as u32);
        if data.len() != expected {
            return Err(TensorError::DataLength { expected, got: data.len() });
        }
        Ok(FrameTensor { n, slots: slots.to_vec(), data })
    }

    /// Kronecker delta with slots `[HolUp, HolDown]`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, &[Slot::HolUp, Slot::HolDown], |ix| if ix[0] == ix[1] { S::one() } else { S::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.slots.len());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.n);
            acc * self.n + i
        })
    }

    fn unflatten(&self, mut flat: usize, idx: &mut [usize]) {
        for slot in (0..idx.len()).rev() {
            idx[slot] = flat % self.n;
            flat /= self.n;
        }
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: S) {
        let k = self.flatten(idx);
        self.data[k] = value;
    }

    /// Value of a rank-0 tensor.
    pub fn value(&self) -> &S {
        assert!(self.slots.is_empty(), "value() on a rank-{} tensor", self.rank());
        &self.data[0]
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        FrameTensor { n: self.n, slots: self.slots.clone(), data: self.data.iter().map(f).collect() }
    }

    /// Componentwise combination of two tensors of identical shape.
    pub fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self, TensorError> {
        if self.n != other.n || self.slots != other.slots {
            return Err(TensorError::Dimension(self.data.len(), other.data.len()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(FrameTensor { n: self.n, slots: self.slots.clone(), data })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }

    /// `Σ |t|²` over all components.
    pub fn norm_sqr(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, x| acc + x.clone() * x.conj())
    }

    /// Sums over a metric-paired slot pair, removing both slots.
    pub fn contract(&self, a: usize, b: usize) -> Result<Self, TensorError> {
        let rank = self.rank();
        for slot in [a, b] {
            if slot >= rank {
                return Err(TensorError::SlotOutOfRange { slot, rank });
            }
        }
        if a == b {
            return Err(TensorError::SameSlot(a));
        }
        let (ka, kb) = (self.slots[a], self.slots[b]);
        if !ka.pairs_with(kb) {
            return Err(TensorError::IncompatibleSlots { a, b, kind_a: ka, kind_b: kb });
        }
        let kept: Vec<usize> = (0..rank).filter(|&k| k != a && k != b).collect();
        let out_slots: Vec<Slot> = kept.iter().map(|&k| self.slots[k]).collect();
        let n = self.n;
        let out = Self::from_fn(n, &out_slots, |ix| {
            let mut probe = vec![0; rank];
            for (pos, &k) in kept.iter().enumerate() {
                probe[k] = ix[pos];
            }
            let mut acc = S::zero();
            for r in 0..n {
                probe[a] = r;
                probe[b] = r;
                acc = acc + self.get(&probe).clone();
            }
            acc
        });
        Ok(out)
    }

    /// Complex-conjugates every component and flips every slot's bar type.
    pub fn conjugate(&self) -> Self {
        FrameTensor {
            n: self.n,
            slots: self.slots.iter().map(|s| s.conjugate()).collect(),
            data: self.data.iter().map(Ring::conj).collect(),
        }
    }

    /// Tensor product, slots of `self` first.
    pub fn outer(&self, other: &Self) -> Result<Self, TensorError> {
        if self.n != other.n && self.rank() > 0 && other.rank() > 0 {
            return Err(TensorError::Dimension(self.n, other.n));
        }
        let n = if self.rank() > 0 { self.n } else { other.n };
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let split = self.rank();
        Ok(Self::from_fn(n, &slots, |ix| self.get(&ix[..split]).clone() * other.get(&ix[split..]).clone()))
    }

    /// `(t - t∘swap(a,b)) / 2`.
    pub fn antisymmetrize(&self, a: usize, b: usize) -> Result<Self, TensorError> {
        self.check_swappable(a, b)?;
        let half = S::from_rational(&crate::scalar::rational(1, 2));
        Ok(Self::from_fn(self.n, &self.slots, |ix| {
            let mut sw = ix.to_vec();
            sw.swap(a, b);
            (self.get(ix).clone() - self.get(&sw).clone()) * half.clone()
        }))
    }

    /// Largest `|t(..i..j..) + t(..j..i..)|`.
    pub fn antisymmetry_defect(&self, a: usize, b: usize) -> Result<f64, TensorError> {
        self.check_swappable(a, b)?;
        let mut idx = vec![0; self.rank()];
        let mut worst: f64 = 0.0;
        for flat in 0..self.data.len() {
            self.unflatten(flat, &mut idx);
            let mut sw = idx.clone();
            sw.swap(a, b);
            let d = self.data[flat].clone() + self.get(&sw).clone();
            worst = worst.max(d.magnitude());
        }
        Ok(worst)
    }

    fn check_swappable(&self, a: usize, b: usize) -> Result<(), TensorError> {
        let rank = self.rank();
        for slot in [a, b] {
            if slot >= rank {
                return Err(TensorError::SlotOutOfRange { slot, rank });
            }
        }
        if self.slots[a] != self.slots[b] {
            return Err(TensorError::IncompatibleSlots {
                a,
                b,
                kind_a: self.slots[a],
                kind_b: self.slots[b],
            });
        }
        Ok(())
    }

    /// Re-expresses the components in the frame `e'_a = Σ_b u[b][a] e_b`.
    ///
    /// Lower holomorphic slots transform with `u`, upper ones with `u^H`;
    /// antiholomorphic slots use the conjugate matrices.
    pub fn change_frame(&self, u: &SquareMatrix<S>) -> Result<Self, TensorError> {
        if u.size() != self.n {
            return Err(TensorError::Dimension(u.size(), self.n));
        }
        let residual = u.unitarity_defect();
        let unitary = if S::EXACT { residual == 0.0 && u.adjoint().matmul(u) == SquareMatrix::identity(self.n) } else { residual <= 1e-12 };
        if !unitary {
            return Err(TensorError::NotUnitary { residual });
        }
        let mut current = self.clone();
        for slot in 0..self.rank() {
            // factor[new][old]
            let factor = |new: usize, old: usize| -> S {
                match current.slots[slot] {
                    Slot::HolDown | Slot::AntiUp => u.get(old, new).clone(),
                    Slot::HolUp | Slot::AntiDown => u.get(old, new).conj(),
                }
            };
            let src = &current;
            let next = Self::from_fn(self.n, &src.slots, |ix| {
                let mut probe = ix.to_vec();
                let mut acc = S::zero();
                for old in 0..self.n {
                    probe[slot] = old;
                    acc = acc + factor(ix[slot], old) * src.get(&probe).clone();
                }
                acc
            });
            current = next;
        }
        Ok(current)
    }
}
