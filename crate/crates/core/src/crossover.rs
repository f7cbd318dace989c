// SPDX-License-Identifier: Apache-2.0

//! Mask-based crossovers on fixed-length sequences. Both are geometric
//! under Hamming distance.

use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BaseCrossover {
    /// Fair coin per locus.
    #[default]
    Uniform,
    /// Single cut point drawn uniformly in `0..=len`.
    OnePoint,
}

impl BaseCrossover {
    pub fn apply<T: Clone>(self, a: &[T], b: &[T], rng: &mut dyn RngCore) -> Result<Vec<T>> {
        match self {
            BaseCrossover::Uniform => uniform(a, b, rng),
            BaseCrossover::OnePoint => one_point(a, b, rng),
        }
    }
}

pub fn uniform<T: Clone>(a: &[T], b: &[T], rng: &mut dyn RngCore) -> Result<Vec<T>> {
    Error::check_dims("uniform crossover", a.len(), b.len())?;
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| if rng.gen_bool(0.5) { x.clone() } else { y.clone() })
        .collect())
}

pub fn one_point<T: Clone>(a: &[T], b: &[T], rng: &mut dyn RngCore) -> Result<Vec<T>> {
    Error::check_dims("one-point crossover", a.len(), b.len())?;
    let cut = rng.gen_range(0..=a.len());
    Ok(a[..cut].iter().chain(&b[cut..]).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use alloc::vec;

    #[test]
    fn offspring_take_each_locus_from_a_parent() {
        let a = vec![0u8; 16];
        let b = vec![1u8; 16];
        for s in 0..20 {
            let mut rng = stream_rng(s, 0);
            for op in [BaseCrossover::Uniform, BaseCrossover::OnePoint] {
                let c = op.apply(&a, &b, &mut rng).unwrap();
                assert_eq!(c.len(), 16);
            }
            let c = one_point(&a, &b, &mut rng).unwrap();
            let cut = c.iter().position(|&x| x == 1).unwrap_or(16);
            assert!(c[cut..].iter().all(|&x| x == 1));
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let mut rng = stream_rng(0, 0);
        assert!(uniform(&[1, 2], &[1], &mut rng).is_err());
        assert!(one_point(&[1, 2], &[1], &mut rng).is_err());
    }
}
