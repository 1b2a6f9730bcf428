use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime together with representatives of the nonzero residues mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetReps {
    p: u32,
    reps: Vec<i64>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl CosetReps {
    pub fn new(p: u32, reps: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if reps.len() != (p - 1) as usize {
            return Err(Error::InvalidArgument(format!(
                "need {} representatives for p = {p}, got {}",
                p - 1,
                reps.len()
            )));
        }
        let pi = p as i64;
        let mut seen = vec![false; p as usize];
        for &r in &reps {
            let c = r.rem_euclid(pi) as usize;
            if c == 0 {
                return Err(Error::InvalidArgument(format!("representative {r} is 0 mod {p}")));
            }
            if seen[c] {
                return Err(Error::InvalidArgument(format!(
                    "representatives repeat the residue {c} mod {p}"
                )));
            }
            seen[c] = true;
        }
        Ok(CosetReps { p, reps })
    }

    /// Least positive residues 1, ..., p-1.
    pub fn canonical(p: u32) -> Result<Self> {
        Self::new(p, (1..p as i64).collect())
    }

    /// {-1} for p = 2, and 1, -1, 2, -2, ... otherwise.
    pub fn symmetric(p: u32) -> Result<Self> {
        if p == 2 {
            return Self::new(2, vec![-1]);
        }
        let half = (p as i64 - 1) / 2;
        Self::new(p, (1..=half).flat_map(|i| [i, -i]).collect())
    }

    /// Each residue class r gets a random representative r + k p, k in [-2, 2].
    pub fn random(p: u32, rng: &mut impl Rng) -> Result<Self> {
        let pi = p as i64;
        let reps = (1..pi)
            .map(|r| {
                let k = rng.gen_range(-2..=2);
                let v = r + k * pi;
                if v == 0 {
                    r
                } else {
                    v
                }
            })
            .collect();
        Self::new(p, reps)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reps(&self) -> &[i64] {
        &self.reps
    }

    /// The product of the representatives.
    pub fn product(&self) -> i64 {
        self.reps.iter().product()
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn validation() {
        assert!(CosetReps::new(3, vec![1, 2]).is_ok());
        assert!(CosetReps::new(3, vec![1, 4]).is_err());
        assert!(CosetReps::new(3, vec![1, 3]).is_err());
        assert!(CosetReps::new(4, vec![1, 2, 3]).is_err());
        assert!(CosetReps::new(5, vec![1, 2]).is_err());
    }

    #[test]
    fn standard_choices() {
        assert_eq!(CosetReps::symmetric(2).unwrap().reps(), &[-1]);
        assert_eq!(CosetReps::symmetric(5).unwrap().reps(), &[1, -1, 2, -2]);
        assert_eq!(CosetReps::symmetric(3).unwrap().product(), -1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3, 5, 7] {
            assert!(CosetReps::random(p, &mut rng).is_ok());
        }
    }
}
