//! Reproducible target generation for tests and the benchmark driver.

use crate::group::{givens_embed, GivensFactor, GivensKind, Signature};
use crate::mat::Mat;
use num_rational::Ratio;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All factor planes admissible for a signature, hyperbolic ones included.
pub fn admissible_planes(sig: Signature) -> Vec<(GivensKind, usize, usize)> {
    let (p, n) = (sig.p, sig.n());
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if j <= p || i > p {
                out.push((GivensKind::Standard, i, j));
            } else {
                out.push((GivensKind::Hyperbolic, i, j));
            }
        }
    }
    out
}

/// A random member of SO+(p,q): the ordered product of `count` random
/// Givens factors with angles in (-pi, pi] and rapidities in [-1.5, 1.5].
pub fn random_so_plus(sig: Signature, count: usize, rng: &mut ChaCha8Rng) -> Mat<f64> {
    let planes = admissible_planes(sig);
    let mut x = Mat::identity(sig.n());
    for _ in 0..count {
        let (kind, i, j) = planes[rng.gen_range(0..planes.len())];
        let f = match kind {
            GivensKind::Standard => {
                GivensFactor::standard(i, j, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            }
            GivensKind::Hyperbolic => GivensFactor::hyperbolic(i, j, rng.gen_range(-1.5..1.5)),
        };
        x = x.mul(&givens_embed(&f, sig).expect("admissible plane"));
    }
    x
}

/// A random positive definite member of SO+(n,1): the exponential of a
/// random symmetric element of so(n,1).
pub fn random_posdef_n1(sig: Signature, rng: &mut ChaCha8Rng) -> Mat<f64> {
    assert_eq!(sig.q, 1);
    let n = sig.p;
    let mut q = Mat::zeros(n + 1, n + 1);
    for k in 0..n {
        let v = rng.gen_range(-1.0..1.0);
        q[(k, n)] = v;
        q[(n, k)] = v;
    }
    q.expm()
}

/// A random positive definite member of SO+(2,1) through the covering map
/// of a random symmetric positive definite element of SL(2,R).
pub fn random_posdef_21(rng: &mut ChaCha8Rng) -> Mat<f64> {
    random_posdef_n1(Signature::new(2, 1), rng)
}

/// Rational points on the circle and hyperbola for exact-arithmetic targets:
/// `c = (1-t^2)/(1+t^2), s = 2t/(1+t^2)` and `a = (1+t^2)/(1-t^2),
/// b = 2t/(1-t^2)`.
pub fn rational_factor(
    kind: GivensKind,
    i: usize,
    j: usize,
    t: Ratio<i128>,
    sig: Signature,
) -> Mat<Ratio<i128>> {
    let one = Ratio::from_integer(1i128);
    let two = Ratio::from_integer(2i128);
    let t2 = t * t;
    let (d00, d01, d10, d11) = match kind {
        GivensKind::Standard => {
            let c = (one - t2) / (one + t2);
            let s = two * t / (one + t2);
            (c, -s, s, c)
        }
        GivensKind::Hyperbolic => {
            assert!(t2 != one, "rational boost parameter must avoid |t| = 1");
            let a = (one + t2) / (one - t2);
            let b = two * t / (one - t2);
            (a, b, b, a)
        }
    };
    let n = sig.n();
    let mut m = Mat::from_fn(n, n, |r, c| {
        if r == c {
            one
        } else {
            Ratio::from_integer(0)
        }
    });
    m[(i - 1, i - 1)] = d00;
    m[(i - 1, j - 1)] = d01;
    m[(j - 1, i - 1)] = d10;
    m[(j - 1, j - 1)] = d11;
    m
}

/// Exact product of rational Givens factors, e.g. for the scalar-purity
/// checks of the minor formula.
pub fn rational_so_plus(
    sig: Signature,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Mat<Ratio<i128>> {
    let planes = admissible_planes(sig);
    let n = sig.n();
    let mut x = Mat::from_fn(n, n, |r, c| {
        Ratio::from_integer(if r == c { 1i128 } else { 0 })
    });
    for _ in 0..count {
        let (kind, i, j) = planes[rng.gen_range(0..planes.len())];
        // small numerators keep the exact arithmetic inside i128
        let num = rng.gen_range(-3i128..=3);
        let den = rng.gen_range(4i128..=7);
        let t = Ratio::new(num, den);
        x = x.mul(&rational_factor(kind, i, j, t, sig));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_in_so_plus;

    #[test]
    fn random_targets_are_members() {
        let mut rng = rng_from_seed(7);
        for (p, q) in [(2, 1), (2, 2), (3, 2), (4, 1), (3, 3)] {
            let sig = Signature::new(p, q);
            let x = random_so_plus(sig, sig.n() * (sig.n() - 1) / 2, &mut rng);
            assert!(is_in_so_plus(&x, sig, 1e-8), "({p},{q})");
        }
    }

    #[test]
    fn rational_targets_satisfy_the_metric_exactly() {
        let mut rng = rng_from_seed(11);
        let sig = Signature::new(2, 2);
        let x = rational_so_plus(sig, 4, &mut rng);
        // X^T I X = I exactly over the rationals
        let g = Mat::from_fn(4, 4, |i, j| {
            Ratio::from_integer(if i != j {
                0i128
            } else if i < 2 {
                1
            } else {
                -1
            })
        });
        assert_eq!(x.transpose().mul(&g).mul(&x), g);
    }
}
