//! Physical constants of the atom–mirror system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default upper bound on `gamma0 * tau` accepted as "Markovian".
pub const DEFAULT_MARKOV_LIMIT: f64 = 0.1;

/// Atom–mirror constants in units where `gamma0` sets the inverse time scale.
///
/// The round trip time `tau` is always commensurate with the optical period,
/// `omega_a * tau = 2 pi m` with `m >= 1`, so a mirror at its rest position
/// puts the atom on a node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemoryConfig<T> {
    pub gamma0: T,
    pub gamma_prime: T,
    pub gamma_p: T,
    pub omega_a: T,
    pub tau: T,
    pub cap: T,
    /// Round trip phase order `m` in `omega_a * tau = 2 pi m`.
    pub node_order: u64,
    /// Requested minus commensurate `tau`.
    pub tau_adjustment: T,
}

impl<T: Real> MemoryConfig<T> {
    /// Builds a configuration, rounding `tau` to the nearest node-commensurate value.
    pub fn new(gamma0: T, gamma_prime: T, omega_a: T, tau: T) -> Result<Self> {
        Self::with_markov_limit(gamma0, gamma_prime, omega_a, tau, T::lit(DEFAULT_MARKOV_LIMIT))
    }

    pub fn with_markov_limit(
        gamma0: T,
        gamma_prime: T,
        omega_a: T,
        tau: T,
        markov_limit: T,
    ) -> Result<Self> {
        let bad = |field, reason: String| Err(Error::InvalidConfig { field, reason });
        if !(gamma0.is_finite() && gamma0 > T::zero()) {
            return bad("gamma0", format!("must be positive, got {gamma0}"));
        }
        if !(gamma_prime >= T::zero() && gamma_prime < gamma0) {
            return bad(
                "gamma_prime",
                format!("must lie in [0, gamma0) so that gamma_p > 0, got {gamma_prime}"),
            );
        }
        if !(omega_a.is_finite() && omega_a > T::zero()) {
            return bad("omega_a", format!("must be positive, got {omega_a}"));
        }
        if !(tau.is_finite() && tau > T::zero()) {
            return bad("tau", format!("must be positive, got {tau}"));
        }
        let two_pi = T::TAU();
        let order = (omega_a * tau / two_pi).round().max(T::one());
        let node_order = order.to_u64().unwrap_or(1);
        let tau_node = two_pi * order / omega_a;
        if gamma0 * tau_node > markov_limit {
            return bad(
                "tau",
                format!(
                    "gamma0 * tau = {} exceeds the Markov limit {markov_limit}",
                    gamma0 * tau_node
                ),
            );
        }
        Ok(MemoryConfig {
            gamma0,
            gamma_prime,
            gamma_p: gamma0 - gamma_prime,
            omega_a,
            tau: tau_node,
            cap: T::lit(2.0) * gamma0,
            node_order,
            tau_adjustment: tau - tau_node,
        })
    }

    /// Lowers the decay-rate ceiling below the physical `2 gamma0` maximum.
    pub fn with_cap(mut self, cap: T) -> Result<Self> {
        let max = self.gamma_prime + T::lit(2.0) * self.gamma_p;
        if !(cap > T::zero() && cap <= max) {
            return Err(Error::InvalidConfig {
                field: "cap",
                reason: format!("must lie in (0, {max}], got {cap}"),
            });
        }
        self.cap = cap;
        Ok(self)
    }

    /// Memory-mode constants: `gamma0 = 1`, `gamma' = 0`, `omega_a = 500`.
    pub fn memory_default() -> Self {
        Self::new(T::one(), T::zero(), T::lit(500.0), T::lit(0.01)).expect("valid defaults")
    }

    /// Largest decay rate reachable by moving the mirror (antinode).
    pub fn max_rate(&self) -> T {
        self.gamma_prime + T::lit(2.0) * self.gamma_p
    }

    pub(crate) fn require_lossless(&self, what: &'static str) -> Result<()> {
        if self.gamma_prime > T::zero() {
            Err(Error::Unsupported(what))
        } else {
            Ok(())
        }
    }
}

impl<T: Real> Default for MemoryConfig<T> {
    fn default() -> Self {
        Self::memory_default()
    }
}
