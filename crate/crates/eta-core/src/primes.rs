//! Prime sieve and the von Mangoldt table.
//!
//! `LambdaTable` holds every prime power n = p^k <= y together with
//! Lambda(n) = log p and log n, sorted by n. It is built once and shared
//! read-only by all the sum kernels.

use crate::error::{EtaError, Result};

/// Primes up to `limit` by a plain sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 10 { n / (n.ilog2() as usize) } else { 8 });
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// One prime-power entry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaEntry {
    /// The prime power n = p^k.
    pub n: u64,
    /// The prime base p.
    pub p: u64,
    /// The exponent k.
    pub k: u32,
    /// Lambda(n) = log p.
    pub lambda: f64,
    /// log n = k log p.
    pub log_n: f64,
}

/// All prime powers up to a limit, sorted by n.
#[derive(Clone, Debug)]
pub struct LambdaTable {
    limit: u64,
    entries: Vec<LambdaEntry>,
}

impl LambdaTable {
    pub fn build(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(EtaError::Domain(format!(
                "lambda table limit must be at least 2, got {limit}"
            )));
        }
        let primes = sieve_primes(limit);
        let mut entries = Vec::with_capacity(primes.len() + primes.len() / 4);
        for &p in &primes {
            let log_p = (p as f64).ln();
            let mut n = p;
            let mut k = 1u32;
            loop {
                entries.push(LambdaEntry {
                    n,
                    p,
                    k,
                    lambda: log_p,
                    log_n: k as f64 * log_p,
                });
                match n.checked_mul(p) {
                    Some(next) if next <= limit => {
                        n = next;
                        k += 1;
                    }
                    _ => break,
                }
            }
        }
        entries.sort_by_key(|e| e.n);
        Ok(LambdaTable { limit, entries })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[LambdaEntry] {
        &self.entries
    }

    /// Entries with n <= y.
    pub fn entries_up_to(&self, y: u64) -> &[LambdaEntry] {
        let cut = self.entries.partition_point(|e| e.n <= y);
        &self.entries[..cut]
    }

    /// Chebyshev psi(y) = sum of Lambda(n) over n <= y.
    pub fn psi(&self, y: u64) -> f64 {
        self.entries_up_to(y).iter().map(|e| e.lambda).sum()
    }

    /// The primes in the table (k = 1 entries).
    pub fn primes(&self) -> impl Iterator<Item = &LambdaEntry> {
        self.entries.iter().filter(|e| e.k == 1)
    }
}
