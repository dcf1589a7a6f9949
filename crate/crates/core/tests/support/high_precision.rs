//! 256-bit complex dense linear algebra used as an independent oracle by
//! the integration and acceptance tests. Nothing here touches the crate's own
//! decompositions; the only input conversion is from a stored
//! eigendecomposition to an exactly evaluated matrix.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use meanforge_core::{ComplexMatrix, PositiveDefiniteMatrix, C64};

pub const PREC: usize = 256;
pub const RM: RoundingMode = RoundingMode::ToEven;

pub fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

pub fn to_f64(x: &BigFloat) -> f64 {
    let s = format!("{x}");
    s.parse().unwrap_or_else(|_| panic!("unparsable big float {s}"))
}

/// Complex number with 256-bit parts.
#[derive(Clone)]
pub struct Bc {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Bc {
    pub fn from(z: C64) -> Self {
        Bc { re: big(z.re), im: big(z.im) }
    }
    pub fn zero() -> Self {
        Bc::from(C64::new(0.0, 0.0))
    }
    pub fn add(&self, o: &Bc) -> Self {
        Bc { re: self.re.add(&o.re, PREC, RM), im: self.im.add(&o.im, PREC, RM) }
    }
    pub fn sub(&self, o: &Bc) -> Self {
        Bc { re: self.re.sub(&o.re, PREC, RM), im: self.im.sub(&o.im, PREC, RM) }
    }
    pub fn mul(&self, o: &Bc) -> Self {
        let re = self.re.mul(&o.re, PREC, RM).sub(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.re.mul(&o.im, PREC, RM).add(&self.im.mul(&o.re, PREC, RM), PREC, RM);
        Bc { re, im }
    }
    pub fn conj(&self) -> Self {
        Bc { re: self.re.clone(), im: self.im.neg() }
    }
    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re, PREC, RM).add(&self.im.mul(&self.im, PREC, RM), PREC, RM)
    }
    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Bc { re: self.re.div(&d, PREC, RM), im: self.im.neg().div(&d, PREC, RM) }
    }
    pub fn scale(&self, s: &BigFloat) -> Self {
        Bc { re: self.re.mul(s, PREC, RM), im: self.im.mul(s, PREC, RM) }
    }
    pub fn to_c64(&self) -> C64 {
        C64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// Dense square matrix in 256-bit complex arithmetic, row-major.
#[derive(Clone)]
pub struct BigMat {
    pub n: usize,
    pub a: Vec<Bc>,
}

impl BigMat {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Bc) -> Self {
        BigMat { n, a: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }
    pub fn at(&self, i: usize, j: usize) -> &Bc {
        &self.a[i * self.n + j]
    }
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| Bc::from(C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)))
    }
    pub fn mul(&self, o: &BigMat) -> Self {
        Self::from_fn(self.n, |i, j| (0..self.n).fold(Bc::zero(), |acc, k| acc.add(&self.at(i, k).mul(o.at(k, j)))))
    }
    pub fn average(&self, o: &BigMat) -> Self {
        let half = big(0.5);
        Self::from_fn(self.n, |i, j| self.at(i, j).add(o.at(i, j)).scale(&half))
    }
    /// Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Self {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .max_by(|&x, &y| to_f64(&m.at(x, c).norm_sqr()).partial_cmp(&to_f64(&m.at(y, c).norm_sqr())).unwrap())
                .unwrap();
            for j in 0..n {
                m.a.swap(c * n + j, p * n + j);
                inv.a.swap(c * n + j, p * n + j);
            }
            let d = m.at(c, c).recip();
            for j in 0..n {
                m.a[c * n + j] = m.at(c, j).mul(&d);
                inv.a[c * n + j] = inv.at(c, j).mul(&d);
            }
            for i in (0..n).filter(|&i| i != c) {
                let f = m.at(i, c).clone();
                for j in 0..n {
                    m.a[i * n + j] = m.at(i, j).sub(&f.mul(m.at(c, j)));
                    inv.a[i * n + j] = inv.at(i, j).sub(&f.mul(inv.at(c, j)));
                }
            }
        }
        inv
    }
    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| self.at(i, j).to_c64())
    }
}

/// `Q diag(lambda) Q*` evaluated exactly (to 256 bits) from a stored
/// eigendecomposition.
pub fn big_from_eigen(a: &PositiveDefiniteMatrix) -> BigMat {
    let n = a.dim();
    let q = BigMat::from_fn(n, |i, j| Bc::from(a.eigen().basis()[(i, j)]));
    let l: Vec<BigFloat> = a.eigenvalues().iter().map(|&x| big(x)).collect();
    BigMat::from_fn(n, |i, j| {
        (0..n).fold(Bc::zero(), |acc, k| acc.add(&q.at(i, k).mul(&q.at(j, k).conj()).scale(&l[k])))
    })
}

/// `A # B = A (A^{-1} B)^{1/2}`, with the square root from the Denman-Beavers
/// iteration run to convergence in 256-bit arithmetic.
pub fn big_geometric_mean(a: &BigMat, b: &BigMat) -> BigMat {
    let mut y = a.inverse().mul(b);
    let mut z = BigMat::identity(a.n);
    for _ in 0..100 {
        let next_y = y.average(&z.inverse());
        let next_z = z.average(&y.inverse());
        let change = next_y.a.iter().zip(&y.a).map(|(u, v)| to_f64(&u.sub(v).norm_sqr())).sum::<f64>();
        let size = next_y.a.iter().map(|u| to_f64(&u.norm_sqr())).sum::<f64>();
        y = next_y;
        z = next_z;
        if change <= 1e-70 * size {
            return a.mul(&y);
        }
    }
    panic!("Denman-Beavers iteration did not converge");
}

impl BigMat {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self::from_fn(m.dim(), |i, j| Bc::from(m[(i, j)]))
    }
    pub fn add(&self, o: &BigMat) -> Self {
        Self::from_fn(self.n, |i, j| self.at(i, j).add(o.at(i, j)))
    }
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.at(j, i).conj())
    }
    fn off_diagonal_sqr(&self) -> f64 {
        let n = self.n;
        (0..n * n).filter(|k| k / n != k % n).map(|k| to_f64(&self.a[k].norm_sqr())).sum()
    }
}

/// Eigenvalues (unsorted) and eigenvectors of a Hermitian matrix by cyclic
/// complex Jacobi rotations.
pub fn hermitian_eigen(h: &BigMat) -> (Vec<BigFloat>, BigMat) {
    let n = h.n;
    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    let half = big(0.5);
    let mut a = BigMat::from_fn(n, |i, j| h.at(i, j).add(&h.at(j, i).conj()).scale(&half));
    let mut v = BigMat::identity(n);
    let total: f64 = a.a.iter().map(|z| to_f64(&z.norm_sqr())).sum();
    let one = big(1.0);
    for _ in 0..40 {
        if a.off_diagonal_sqr() <= 1e-140 * total {
            let values = (0..n).map(|i| a.at(i, i).re.clone()).collect();
            return (values, v);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.at(p, q).clone();
                let mag2 = apq.norm_sqr();
                if mag2.is_zero() {
                    continue;
                }
                let mag = mag2.sqrt(PREC, RM);
                // Phase e with a_pq = |a_pq| e.
                let e = Bc { re: apq.re.div(&mag, PREC, RM), im: apq.im.div(&mag, PREC, RM) };
                let two_mag = mag.add(&mag, PREC, RM);
                let tau = a.at(q, q).re.sub(&a.at(p, p).re, PREC, RM).div(&two_mag, PREC, RM);
                let root = one.add(&tau.mul(&tau, PREC, RM), PREC, RM).sqrt(PREC, RM);
                let mut t = one.div(&tau.abs().add(&root, PREC, RM), PREC, RM);
                if tau.is_negative() {
                    t = t.neg();
                }
                let c = one.div(&one.add(&t.mul(&t, PREC, RM), PREC, RM).sqrt(PREC, RM), PREC, RM);
                let s = t.mul(&c, PREC, RM);
                let zero = big(0.0);
                let ec = e.conj();
                // U = [[c, s], [-s conj(e), c conj(e)]] in the (p, q) plane.
                let u00 = Bc { re: c.clone(), im: zero.clone() };
                let u01 = Bc { re: s.clone(), im: zero };
                let u10 = ec.scale(&s.neg());
                let u11 = ec.scale(&c);
                for k in 0..n {
                    let (x, y) = (a.at(k, p).clone(), a.at(k, q).clone());
                    a.a[k * n + p] = x.mul(&u00).add(&y.mul(&u10));
                    a.a[k * n + q] = x.mul(&u01).add(&y.mul(&u11));
                    let (x, y) = (v.at(k, p).clone(), v.at(k, q).clone());
                    v.a[k * n + p] = x.mul(&u00).add(&y.mul(&u10));
                    v.a[k * n + q] = x.mul(&u01).add(&y.mul(&u11));
                }
                for k in 0..n {
                    let (x, y) = (a.at(p, k).clone(), a.at(q, k).clone());
                    a.a[p * n + k] = u00.conj().mul(&x).add(&u10.conj().mul(&y));
                    a.a[q * n + k] = u01.conj().mul(&x).add(&u11.conj().mul(&y));
                }
            }
        }
    }
    panic!("high-precision Jacobi did not converge");
}

/// `H^alpha` for Hermitian positive definite `H`.
pub fn power(h: &BigMat, alpha: f64) -> BigMat {
    let mut consts = Consts::new().expect("constants cache");
    let (values, v) = hermitian_eigen(h);
    let exponent = big(alpha);
    let powered: Vec<BigFloat> = values
        .iter()
        .map(|x| {
            assert!(x.is_positive(), "power of a matrix that is not positive definite");
            x.pow(&exponent, PREC, RM, &mut consts)
        })
        .collect();
    let n = h.n;
    BigMat::from_fn(n, |i, j| {
        (0..n).fold(Bc::zero(), |acc, k| acc.add(&v.at(i, k).mul(&v.at(j, k).conj()).scale(&powered[k])))
    })
}

/// Decreasing Ky Fan sums of a Hermitian positive semidefinite matrix.
pub fn ky_fan_sums(h: &BigMat) -> Vec<f64> {
    let (values, _) = hermitian_eigen(h);
    let mut values: Vec<BigFloat> = values.into_iter().map(|x| x.abs()).collect();
    values.sort_by(|x, y| y.partial_cmp(x).expect("comparable"));
    let mut acc = big(0.0);
    values
        .iter()
        .map(|x| {
            acc = acc.add(x, PREC, RM);
            to_f64(&acc)
        })
        .collect()
}
