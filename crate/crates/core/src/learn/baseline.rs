use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `n` i.i.d. Bernoulli(`p`) predictions drawn from a seeded ChaCha8 stream.
pub fn random_baseline(n: usize, p: f64, seed: u64) -> Result<Vec<u8>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!("baseline probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| u8::from(rng.random_bool(p))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes_and_reproducibility() {
        assert!(random_baseline(100, 0.0, 1).unwrap().iter().all(|&v| v == 0));
        assert!(random_baseline(100, 1.0, 1).unwrap().iter().all(|&v| v == 1));
        assert_eq!(random_baseline(50, 0.3, 9).unwrap(), random_baseline(50, 0.3, 9).unwrap());
        assert!(random_baseline(1, 1.5, 0).is_err());
    }

    #[test]
    fn rate_close_to_p() {
        let preds = random_baseline(10_000, 0.15, 42).unwrap();
        let rate = preds.iter().map(|&v| f64::from(v)).sum::<f64>() / 10_000.0;
        assert!((rate - 0.15).abs() < 0.015);
    }
}
