//! Guardrails for runaway computations.
//!
//! The active [`Budget`] is thread-scoped: [`scoped`] installs one for the
//! duration of a closure, and the Gröbner engine polls [`check`] while it
//! works. Outside any scope the default limits apply and there is no
//! deadline.

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest total degree any intermediate polynomial may reach.
    pub max_degree: u64,
    /// Largest number of terms in any intermediate polynomial.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 80,
            max_terms: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub limits: Limits,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn with_timeout(timeout: Duration) -> Self {
        Budget {
            limits: Limits::default(),
            deadline: Some(Instant::now() + timeout),
        }
    }
}

thread_local! {
    static ACTIVE: Cell<Budget> = Cell::new(Budget::default());
}

/// Runs `f` with `budget` installed on the current thread.
pub fn scoped<R>(budget: Budget, f: impl FnOnce() -> R) -> R {
    struct Restore(Budget);
    impl Drop for Restore {
        fn drop(&mut self) {
            ACTIVE.with(|a| a.set(self.0));
        }
    }
    let previous = ACTIVE.with(|a| a.replace(budget));
    let _restore = Restore(previous);
    f()
}

pub fn current() -> Budget {
    ACTIVE.with(|a| a.get())
}

pub(crate) fn check_deadline() -> Result<()> {
    match current().deadline {
        Some(d) if Instant::now() >= d => Err(Error::Timeout),
        _ => Ok(()),
    }
}

pub(crate) fn check_size(degree: u64, terms: usize) -> Result<()> {
    let limits = current().limits;
    if degree > limits.max_degree {
        return Err(Error::ResourceLimit(format!(
            "total degree {degree} exceeds {}",
            limits.max_degree
        )));
    }
    if terms > limits.max_terms {
        return Err(Error::ResourceLimit(format!(
            "{terms} terms exceed {}",
            limits.max_terms
        )));
    }
    Ok(())
}
