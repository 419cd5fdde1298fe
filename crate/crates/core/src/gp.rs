//! Gaussian-process belief over the scalar field: squared-exponential
//! kernel, exact conditioning via Cholesky factorization, posterior
//! prediction, and cheap hypothetical updates for planning.
//!
//! A model is immutable once built; every update returns a new value. The
//! factor is extended row-by-row (block Cholesky) instead of refactorizing,
//! which keeps repeated planning-time updates at `O(n^2 m)` while agreeing
//! with a from-scratch recondition to rounding.

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Loc;
use crate::scalar::{fr, Scalar};

/// Jitter escalation schedule for an indefinite Gram matrix.
const JITTERS: [f64; 5] = [1e-8, 1e-7, 1e-6, 1e-5, 1e-4];

/// Squared-exponential kernel hyperparameters plus the prior mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GpHyperparams<T> {
    /// Kernel lengthscale, in measurable-lattice cells.
    pub lengthscale: T,
    pub signal_variance: T,
    pub noise_variance: T,
    pub prior_mean: T,
}

impl<T: Scalar> GpHyperparams<T> {
    pub fn new(lengthscale: T, signal_variance: T, noise_variance: T, prior_mean: T) -> Result<Self> {
        if !(lengthscale > T::zero()) {
            return Err(Error::InvalidGrid("lengthscale must be > 0".into()));
        }
        if !(signal_variance > T::zero()) {
            return Err(Error::InvalidGrid("signal_variance must be > 0".into()));
        }
        if !(noise_variance >= T::zero()) {
            return Err(Error::InvalidGrid("noise_variance must be >= 0".into()));
        }
        Ok(GpHyperparams {
            lengthscale,
            signal_variance,
            noise_variance,
            prior_mean,
        })
    }

    /// Defaults for normalized data: lengthscale 3 cells, unit signal,
    /// small noise, zero mean.
    pub fn default_normalized() -> Self {
        GpHyperparams {
            lengthscale: fr(3.0),
            signal_variance: T::one(),
            noise_variance: fr(1e-4),
            prior_mean: T::zero(),
        }
    }
}

/// Squared-exponential covariance between two locations.
#[inline]
pub fn kernel<T: Scalar>(a: &Loc<T>, b: &Loc<T>, hyper: &GpHyperparams<T>) -> T {
    let two = fr::<T>(2.0);
    hyper.signal_variance * (-a.dist2(b) / (two * hyper.lengthscale * hyper.lengthscale)).exp()
}

/// GP conditioned on a set of location/value pairs.
#[derive(Debug, Clone)]
pub struct GpModel<T: Scalar> {
    hyper: GpHyperparams<T>,
    train_x: Vec<Loc<T>>,
    train_y: Vec<T>,
    /// Lower Cholesky factor of `K + (noise + jitter) I`.
    chol: DMatrix<T>,
    /// Forward-solved residuals `L^-1 (y - prior_mean)`.
    fwd: DVector<T>,
    /// Dual weights `K^-1 (y - prior_mean)`.
    alpha: DVector<T>,
    /// Largest diagonal jitter the factorization needed (0 when clean).
    jitter: f64,
}

/// Condition a GP on locations and values. An empty training set yields the
/// prior.
pub fn condition<T: Scalar>(
    xs: &[Loc<T>],
    ys: &[T],
    hyper: &GpHyperparams<T>,
) -> Result<GpModel<T>> {
    if xs.len() != ys.len() {
        return Err(Error::TrainingMismatch(xs.len(), ys.len()));
    }
    if ys.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("training values".into()));
    }
    let n = xs.len();
    if n == 0 {
        return Ok(GpModel {
            hyper: *hyper,
            train_x: Vec::new(),
            train_y: Vec::new(),
            chol: DMatrix::zeros(0, 0),
            fwd: DVector::zeros(0),
            alpha: DVector::zeros(0),
            jitter: 0.0,
        });
    }

    let base = DMatrix::from_fn(n, n, |i, j| {
        let mut k = kernel(&xs[i], &xs[j], hyper);
        if i == j {
            k += hyper.noise_variance;
        }
        k
    });
    let mut jitter = 0.0f64;
    let chol = 'factor: {
        if let Some(c) = Cholesky::new(base.clone()) {
            break 'factor c;
        }
        for j in JITTERS {
            let mut k = base.clone();
            for i in 0..n {
                k[(i, i)] += fr::<T>(j);
            }
            if let Some(c) = Cholesky::new(k) {
                jitter = j;
                break 'factor c;
            }
        }
        return Err(Error::SingularGram {
            max_jitter: JITTERS[JITTERS.len() - 1],
        });
    };
    let l = chol.unpack();

    let mut fwd = DVector::from_fn(n, |i, _| ys[i] - hyper.prior_mean);
    if !l.solve_lower_triangular_mut(&mut fwd) {
        return Err(Error::SingularGram { max_jitter: jitter });
    }
    let mut alpha = fwd.clone();
    if !l.tr_solve_lower_triangular_mut(&mut alpha) {
        return Err(Error::SingularGram { max_jitter: jitter });
    }

    Ok(GpModel {
        hyper: *hyper,
        train_x: xs.to_vec(),
        train_y: ys.to_vec(),
        chol: l,
        fwd,
        alpha,
        jitter,
    })
}

impl<T: Scalar> GpModel<T> {
    /// The GP prior: no conditioning data.
    pub fn prior(hyper: &GpHyperparams<T>) -> Self {
        condition(&[], &[], hyper).expect("empty conditioning cannot fail")
    }

    pub fn hyperparams(&self) -> &GpHyperparams<T> {
        &self.hyper
    }

    pub fn train_len(&self) -> usize {
        self.train_x.len()
    }

    pub fn train_locations(&self) -> &[Loc<T>] {
        &self.train_x
    }

    pub fn train_values(&self) -> &[T] {
        &self.train_y
    }

    /// Jitter the factorization required, if any.
    pub fn jitter_used(&self) -> f64 {
        self.jitter
    }

    pub(crate) fn factor(&self) -> &DMatrix<T> {
        &self.chol
    }

    /// Posterior mean at one location.
    pub fn predict_mean_one(&self, x: &Loc<T>) -> T {
        let mut acc = self.hyper.prior_mean;
        for (j, tx) in self.train_x.iter().enumerate() {
            acc += self.alpha[j] * kernel(tx, x, &self.hyper);
        }
        acc
    }

    /// Posterior mean and latent variance at one location.
    pub fn predict_one(&self, x: &Loc<T>) -> (T, T) {
        let n = self.train_len();
        let mut mean = self.hyper.prior_mean;
        let mut kv = DVector::zeros(n);
        for (j, tx) in self.train_x.iter().enumerate() {
            let k = kernel(tx, x, &self.hyper);
            kv[j] = k;
            mean += self.alpha[j] * k;
        }
        if n > 0 {
            self.chol.solve_lower_triangular_mut(&mut kv);
        }
        let var = self.hyper.signal_variance - kv.norm_squared();
        (mean, var.max(T::zero()))
    }

    /// Posterior means at many locations.
    pub fn predict_mean(&self, xs: &[Loc<T>]) -> Vec<T> {
        xs.iter().map(|x| self.predict_mean_one(x)).collect()
    }

    /// Posterior means and latent variances at many locations.
    pub fn predict(&self, xs: &[Loc<T>]) -> (Vec<T>, Vec<T>) {
        let mut means = Vec::with_capacity(xs.len());
        let mut vars = Vec::with_capacity(xs.len());
        for x in xs {
            let (m, v) = self.predict_one(x);
            means.push(m);
            vars.push(v);
        }
        (means, vars)
    }

    /// Extend the conditioning set with observed values. The factor grows in
    /// place of a refactorization; results agree with [`condition`] on the
    /// concatenated data to rounding.
    pub fn extend_observed(&self, xs: &[Loc<T>], ys: &[T]) -> Result<GpModel<T>> {
        if xs.len() != ys.len() {
            return Err(Error::TrainingMismatch(xs.len(), ys.len()));
        }
        if ys.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("training values".into()));
        }
        if self.train_len() == 0 {
            return condition(xs, ys, &self.hyper);
        }
        let mut next = self.extend_factor(xs)?;
        next.train_y.extend_from_slice(ys);
        // Forward-substitute the new residual components, then re-run the
        // backward solve for the dual weights.
        let n0 = self.train_len();
        for (i, &y) in ys.iter().enumerate() {
            let row = n0 + i;
            let mut s = y - self.hyper.prior_mean;
            for j in 0..row {
                s -= next.chol[(row, j)] * next.fwd[j];
            }
            next.fwd[row] = s / next.chol[(row, row)];
        }
        let mut alpha = next.fwd.clone();
        if !next.chol.tr_solve_lower_triangular_mut(&mut alpha) {
            return Err(Error::SingularGram { max_jitter: next.jitter });
        }
        next.alpha = alpha;
        Ok(next)
    }

    /// Hypothetical update used during planning: condition on `xs` with the
    /// values this model already predicts there. The posterior mean function
    /// is unchanged by construction (the appended residuals are identically
    /// zero), while the posterior variance contracts.
    pub fn hypothetical_update(&self, xs: &[Loc<T>]) -> Result<GpModel<T>> {
        if xs.is_empty() {
            return Err(Error::EmptyProposal);
        }
        let predicted = self.predict_mean(xs);
        if self.train_len() == 0 {
            return condition(xs, &predicted, &self.hyper);
        }
        let mut next = self.extend_factor(xs)?;
        next.train_y.extend_from_slice(&predicted);
        let n0 = self.train_len();
        let total = n0 + xs.len();
        // Zero residuals: the forward solve and dual weights keep their old
        // components and gain exact zeros.
        let mut fwd = DVector::zeros(total);
        let mut alpha = DVector::zeros(total);
        fwd.rows_mut(0, n0).copy_from(&self.fwd);
        alpha.rows_mut(0, n0).copy_from(&self.alpha);
        next.fwd = fwd;
        next.alpha = alpha;
        Ok(next)
    }

    /// Grow the Cholesky factor by one row per new location. Training values,
    /// `fwd`, and `alpha` are left for the caller to fill.
    fn extend_factor(&self, xs: &[Loc<T>]) -> Result<GpModel<T>> {
        let n0 = self.train_len();
        let m = xs.len();
        let total = n0 + m;
        let mut l = DMatrix::zeros(total, total);
        l.view_mut((0, 0), (n0, n0)).copy_from(&self.chol);

        let mut train_x = self.train_x.clone();
        let mut jitter = self.jitter;
        let floor = fr::<T>(1e-12) * (self.hyper.signal_variance + self.hyper.noise_variance);

        for (i, x) in xs.iter().enumerate() {
            let row = n0 + i;
            // Cross-covariances against everything already in the factor.
            let mut b: Vec<T> = train_x.iter().map(|tx| kernel(tx, x, &self.hyper)).collect();
            // Forward solve b := L^-1 b against the active factor block.
            for r in 0..row {
                let mut s = b[r];
                for c in 0..r {
                    s -= l[(r, c)] * b[c];
                }
                b[r] = s / l[(r, r)];
            }
            let mut d2 = kernel(x, x, &self.hyper) + self.hyper.noise_variance;
            for v in &b {
                d2 -= *v * *v;
            }
            if !(d2 > floor) {
                let mut fixed = false;
                for j in JITTERS {
                    if j < self.jitter {
                        continue;
                    }
                    let cand = d2 + fr::<T>(j);
                    if cand > floor {
                        d2 = cand;
                        jitter = jitter.max(j);
                        fixed = true;
                        break;
                    }
                }
                if !fixed {
                    return Err(Error::SingularGram {
                        max_jitter: JITTERS[JITTERS.len() - 1],
                    });
                }
            }
            for (c, v) in b.iter().enumerate() {
                l[(row, c)] = *v;
            }
            l[(row, row)] = d2.sqrt();
            train_x.push(*x);
        }

        Ok(GpModel {
            hyper: self.hyper,
            train_x,
            train_y: self.train_y.clone(),
            chol: l,
            fwd: DVector::zeros(0),
            alpha: DVector::zeros(0),
            jitter,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn hyper(ls: f64, sv: f64, nv: f64, mean: f64) -> GpHyperparams<f64> {
        GpHyperparams::new(ls, sv, nv, mean).unwrap()
    }

    fn random_points(rng: &mut ChaCha8Rng, n: usize, dim: usize, extent: f64) -> Vec<Loc<f64>> {
        (0..n)
            .map(|_| {
                let mut c = [0.0; 3];
                for a in c.iter_mut().take(dim) {
                    *a = rng.gen_range(0.0..extent);
                }
                Loc(c)
            })
            .collect()
    }

    /// Dense direct-solve oracle: LU on the full Gram matrix.
    fn dense_oracle(
        xs: &[Loc<f64>],
        ys: &[f64],
        h: &GpHyperparams<f64>,
        queries: &[Loc<f64>],
    ) -> (Vec<f64>, Vec<f64>) {
        let n = xs.len();
        let k = DMatrix::from_fn(n, n, |i, j| {
            kernel(&xs[i], &xs[j], h) + if i == j { h.noise_variance } else { 0.0 }
        });
        let lu = k.clone().lu();
        let resid = DVector::from_fn(n, |i, _| ys[i] - h.prior_mean);
        let alpha = lu.solve(&resid).expect("oracle solve");
        let mut means = Vec::new();
        let mut vars = Vec::new();
        for q in queries {
            let kv = DVector::from_fn(n, |i, _| kernel(&xs[i], q, h));
            let mean = h.prior_mean + kv.dot(&alpha);
            let kinv_kv = lu.solve(&kv).expect("oracle solve");
            let var = h.signal_variance - kv.dot(&kinv_kv);
            means.push(mean);
            vars.push(var.max(0.0));
        }
        (means, vars)
    }

    #[test]
    fn kernel_values() {
        let h = hyper(2.0, 1.0, 0.0, 0.0);
        let a = Loc::xy(1.0, 1.0);
        assert_eq!(kernel(&a, &a, &h), 1.0);
        // Distance exactly one lengthscale.
        let b = Loc::xy(3.0, 1.0);
        assert_relative_eq!(kernel(&a, &b, &h), (-0.5f64).exp(), max_relative = 1e-15);
        assert_eq!(kernel(&a, &b, &h), kernel(&b, &a, &h));
        let far = Loc::xy(1e6, 1.0);
        assert!(kernel(&a, &far, &h) < 1e-300);
    }

    #[test]
    fn empty_conditioning_gives_prior() {
        let h = hyper(2.0, 1.7, 1e-4, 0.3);
        let gp = GpModel::prior(&h);
        let (m, v) = gp.predict_one(&Loc::xy(5.0, 5.0));
        assert_eq!(m, 0.3);
        assert_eq!(v, 1.7);
    }

    #[test]
    fn zero_noise_interpolates_training_points() {
        let h = hyper(2.0, 1.0, 0.0, 0.0);
        let xs = vec![Loc::xy(0.0, 0.0), Loc::xy(4.0, 0.0), Loc::xy(0.0, 4.0)];
        let ys = vec![1.0, -2.0, 0.5];
        let gp = condition(&xs, &ys, &h).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            let (m, v) = gp.predict_one(x);
            assert_relative_eq!(m, *y, epsilon = 1e-9);
            assert!(v < 1e-9, "variance at training point: {v}");
        }
    }

    #[test]
    fn matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = hyper(3.0, 1.0, 1e-4, 0.1);
        let xs = random_points(&mut rng, 30, 2, 20.0);
        let ys: Vec<f64> = (0..30).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let queries = random_points(&mut rng, 40, 2, 20.0);
        let gp = condition(&xs, &ys, &h).unwrap();
        let (m_o, v_o) = dense_oracle(&xs, &ys, &h, &queries);
        let (m, v) = gp.predict(&queries);
        for i in 0..queries.len() {
            assert!((m[i] - m_o[i]).abs() < 1e-8, "mean {} vs {}", m[i], m_o[i]);
            assert!((v[i] - v_o[i]).abs() < 1e-8, "var {} vs {}", v[i], v_o[i]);
        }
    }

    #[test]
    fn reverts_to_prior_far_from_data() {
        let h = hyper(2.0, 1.5, 1e-4, 0.7);
        let gp = condition(&[Loc::xy(0.0, 0.0)], &[3.0], &h).unwrap();
        let (m, v) = gp.predict_one(&Loc::xy(500.0, 500.0));
        assert_relative_eq!(m, 0.7, epsilon = 1e-12);
        assert_relative_eq!(v, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn duplicate_queries_identical() {
        let h = hyper(2.0, 1.0, 1e-4, 0.0);
        let gp = condition(&[Loc::xy(1.0, 2.0)], &[1.0], &h).unwrap();
        let q = Loc::xy(3.3, 4.4);
        let (m, v) = gp.predict(&[q, q]);
        assert_eq!(m[0], m[1]);
        assert_eq!(v[0], v[1]);
    }

    #[test]
    fn posterior_variance_never_exceeds_prior() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = hyper(3.0, 1.2, 1e-4, 0.0);
        let xs = random_points(&mut rng, 25, 2, 15.0);
        let ys: Vec<f64> = (0..25).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let gp = condition(&xs, &ys, &h).unwrap();
        for q in random_points(&mut rng, 50, 2, 15.0) {
            let (_, v) = gp.predict_one(&q);
            assert!(v <= 1.2 + 1e-10);
        }
    }

    #[test]
    fn hypothetical_update_preserves_mean_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let h = hyper(3.0, 1.0, 1e-4, 0.0);
        let xs = random_points(&mut rng, 20, 2, 10.0);
        let ys: Vec<f64> = (0..20).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let gp = condition(&xs, &ys, &h).unwrap();
        let new = random_points(&mut rng, 7, 2, 10.0);
        let gp2 = gp.hypothetical_update(&new).unwrap();
        for q in random_points(&mut rng, 30, 2, 10.0) {
            assert_eq!(gp.predict_mean_one(&q), gp2.predict_mean_one(&q));
        }
    }

    #[test]
    fn hypothetical_update_at_training_points_zero_noise_changes_nothing() {
        let h = hyper(2.0, 1.0, 0.0, 0.0);
        let xs = vec![Loc::xy(0.0, 0.0), Loc::xy(5.0, 0.0)];
        let ys = vec![1.0, -1.0];
        let gp = condition(&xs, &ys, &h).unwrap();
        let gp2 = gp.hypothetical_update(&xs).unwrap();
        for q in [Loc::xy(1.0, 1.0), Loc::xy(2.5, 0.0), Loc::xy(4.0, 3.0)] {
            let (m1, v1) = gp.predict_one(&q);
            let (m2, v2) = gp2.predict_one(&q);
            assert_eq!(m1, m2);
            assert!((v1 - v2).abs() < 1e-8);
        }
    }

    #[test]
    fn hypothetical_update_shrinks_variance_at_novel_points() {
        let h = hyper(3.0, 1.0, 1e-4, 0.0);
        let gp = condition(&[Loc::xy(0.0, 0.0)], &[1.0], &h).unwrap();
        let novel = Loc::xy(6.0, 6.0);
        let before = gp.predict_one(&novel).1;
        let after = gp.hypothetical_update(&[novel]).unwrap().predict_one(&novel).1;
        assert!(after < before, "{after} !< {before}");
    }

    #[test]
    fn hypothetical_update_idempotent_on_mean() {
        let h = hyper(3.0, 1.0, 1e-4, 0.0);
        let grid: Vec<Loc<f64>> = (0..25)
            .map(|i| Loc::xy((i % 5) as f64, (i / 5) as f64))
            .collect();
        let gp = condition(&[Loc::xy(1.0, 1.0), Loc::xy(3.0, 2.0)], &[0.5, -0.5], &h).unwrap();
        let once = gp.hypothetical_update(&[Loc::xy(2.0, 2.0)]).unwrap();
        let twice = once.hypothetical_update(&[Loc::xy(2.0, 2.0)]).unwrap();
        for q in &grid {
            assert_eq!(once.predict_mean_one(q), twice.predict_mean_one(q));
        }
    }

    #[test]
    fn hypothetical_update_matches_full_recondition() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let h = hyper(3.0, 1.0, 1e-4, 0.2);
        let xs = random_points(&mut rng, 15, 3, 8.0);
        let ys: Vec<f64> = (0..15).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let gp = condition(&xs, &ys, &h).unwrap();
        let new = random_points(&mut rng, 5, 3, 8.0);
        let fast = gp.hypothetical_update(&new).unwrap();

        let mut full_x = xs.clone();
        full_x.extend_from_slice(&new);
        let mut full_y = ys.clone();
        full_y.extend(gp.predict_mean(&new));
        let full = condition(&full_x, &full_y, &h).unwrap();

        for q in random_points(&mut rng, 30, 3, 8.0) {
            let (mf, vf) = fast.predict_one(&q);
            let (mr, vr) = full.predict_one(&q);
            assert!((mf - mr).abs() < 1e-8);
            assert!((vf - vr).abs() < 1e-8);
        }
    }

    #[test]
    fn extend_observed_matches_from_scratch() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let h = hyper(2.5, 1.0, 1e-4, -0.1);
        let xs = random_points(&mut rng, 12, 2, 10.0);
        let ys: Vec<f64> = (0..12).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let new_x = random_points(&mut rng, 6, 2, 10.0);
        let new_y: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();

        let grown = condition(&xs, &ys, &h).unwrap().extend_observed(&new_x, &new_y).unwrap();
        let mut full_x = xs.clone();
        full_x.extend_from_slice(&new_x);
        let mut full_y = ys.clone();
        full_y.extend_from_slice(&new_y);
        let scratch = condition(&full_x, &full_y, &h).unwrap();

        for q in random_points(&mut rng, 25, 2, 10.0) {
            let (mg, vg) = grown.predict_one(&q);
            let (ms, vs) = scratch.predict_one(&q);
            assert!((mg - ms).abs() < 1e-8);
            assert!((vg - vs).abs() < 1e-8);
        }
    }

    #[test]
    fn adding_data_never_raises_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let h = hyper(3.0, 1.0, 1e-4, 0.0);
        let xs = random_points(&mut rng, 20, 2, 12.0);
        let ys: Vec<f64> = (0..20).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let gp = condition(&xs, &ys, &h).unwrap();
        let more = random_points(&mut rng, 5, 2, 12.0);
        let vals: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let gp2 = gp.extend_observed(&more, &vals).unwrap();
        for q in random_points(&mut rng, 60, 2, 12.0) {
            let v1 = gp.predict_one(&q).1;
            let v2 = gp2.predict_one(&q).1;
            assert!(v2 <= v1 + 1e-10, "{v2} > {v1}");
        }
    }

    #[test]
    fn conditioning_order_does_not_matter() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let h = hyper(2.0, 1.0, 1e-4, 0.0);
        let xs = random_points(&mut rng, 14, 2, 9.0);
        let ys: Vec<f64> = (0..14).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let gp1 = condition(&xs, &ys, &h).unwrap();

        let mut idx: Vec<usize> = (0..xs.len()).collect();
        idx.shuffle(&mut rng);
        let xs2: Vec<Loc<f64>> = idx.iter().map(|&i| xs[i]).collect();
        let ys2: Vec<f64> = idx.iter().map(|&i| ys[i]).collect();
        let gp2 = condition(&xs2, &ys2, &h).unwrap();

        for q in random_points(&mut rng, 30, 2, 9.0) {
            let (m1, v1) = gp1.predict_one(&q);
            let (m2, v2) = gp2.predict_one(&q);
            assert!((m1 - m2).abs() < 1e-10);
            assert!((v1 - v2).abs() < 1e-10);
        }
    }

    #[test]
    fn duplicate_points_with_zero_noise_need_jitter_but_factor() {
        let h = hyper(2.0, 1.0, 0.0, 0.0);
        let x = Loc::xy(1.0, 1.0);
        let gp = condition(&[x, x], &[0.5, 0.5], &h).unwrap();
        assert!(gp.jitter_used() > 0.0);
        let (m, _) = gp.predict_one(&x);
        assert_relative_eq!(m, 0.5, epsilon = 1e-6);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let h = hyper(2.0, 1.0, 1e-4, 0.0);
        assert!(condition(&[Loc::xy(0.0, 0.0)], &[1.0, 2.0], &h).is_err());
        let gp = GpModel::prior(&h);
        assert!(gp.hypothetical_update(&[]).is_err());
    }
}
