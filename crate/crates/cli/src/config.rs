use serde::Serialize;
use thetaring::is_prime;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("e must be at least 1")]
    ZeroExponent,
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("empty grid")]
    EmptyGrid,
}

/// Everything a run depends on. Reports are a function of this value.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    /// (p, e) cells for `verify`, sorted and deduplicated.
    pub cells: Vec<(u64, u32)>,
    /// Nilpotence is also checked at m = e + 1 + extra_precision.
    pub extra_precision: u32,
    pub trials: usize,
    pub seed: u64,
    pub span_limit: u64,
    pub degree_cap: u64,
    #[serde(skip)]
    pub timings: bool,
}

pub const DEFAULT_PRIMES: [u64; 3] = [2, 3, 5];
pub const DEFAULT_EXPONENTS: [u32; 2] = [1, 2];

impl Default for RunConfig {
    fn default() -> Self {
        let mut cells: Vec<(u64, u32)> = DEFAULT_PRIMES
            .iter()
            .flat_map(|&p| DEFAULT_EXPONENTS.iter().map(move |&e| (p, e)))
            .collect();
        cells.push((2, 3));
        cells.sort_unstable();
        RunConfig {
            primes: DEFAULT_PRIMES.to_vec(),
            cells,
            extra_precision: 1,
            trials: 200,
            seed: 0,
            span_limit: 4096,
            degree_cap: 1024,
            timings: false,
        }
    }
}

impl RunConfig {
    /// Grid from explicit prime and exponent lists. With neither given the
    /// default grid is kept; with one given the other takes its default.
    pub fn with_grid(mut self, primes: &[u64], exponents: &[u32]) -> Self {
        if primes.is_empty() && exponents.is_empty() {
            return self;
        }
        let primes = if primes.is_empty() {
            &DEFAULT_PRIMES[..]
        } else {
            primes
        };
        let exponents = if exponents.is_empty() {
            &DEFAULT_EXPONENTS[..]
        } else {
            exponents
        };
        self.primes = primes.to_vec();
        self.primes.sort_unstable();
        self.primes.dedup();
        self.cells = self
            .primes
            .iter()
            .flat_map(|&p| exponents.iter().map(move |&e| (p, e)))
            .collect();
        self.cells.sort_unstable();
        self.cells.dedup();
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.primes.is_empty() || self.cells.is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        let all_primes = self.primes.iter().chain(self.cells.iter().map(|(p, _)| p));
        if let Some(&p) = all_primes.clone().find(|&&p| !is_prime(p)) {
            return Err(ConfigError::NotPrime(p));
        }
        if self.cells.iter().any(|&(_, e)| e == 0) {
            return Err(ConfigError::ZeroExponent);
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let cfg = RunConfig::default();
        assert_eq!(
            cfg.cells,
            [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)]
        );
        assert_eq!(cfg.validate(), Ok(()));
    }

    #[test]
    fn explicit_grid() {
        let cfg = RunConfig::default().with_grid(&[3, 2, 3], &[]);
        assert_eq!(cfg.cells, [(2, 1), (2, 2), (3, 1), (3, 2)]);
        let cfg = RunConfig::default().with_grid(&[], &[4]);
        assert_eq!(cfg.cells, [(2, 4), (3, 4), (5, 4)]);
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = RunConfig::default().with_grid(&[4], &[1]);
        assert_eq!(cfg.validate(), Err(ConfigError::NotPrime(4)));
        let cfg = RunConfig::default().with_grid(&[2], &[0]);
        assert_eq!(cfg.validate(), Err(ConfigError::ZeroExponent));
        let cfg = RunConfig {
            trials: 0,
            ..RunConfig::default()
        };
        assert_eq!(cfg.validate(), Err(ConfigError::NoTrials));
    }
}
