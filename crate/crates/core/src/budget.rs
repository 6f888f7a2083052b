use std::time::{Duration, Instant};

use crate::error::{Error, Resource, Result};

/// Caps on enumerated states and wall-clock time for one solver call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_states: usize,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 5_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

impl Budget {
    pub fn new(max_states: usize, max_time: Duration) -> Self {
        Budget {
            max_states,
            max_time,
        }
    }

    pub fn states(max_states: usize) -> Self {
        Budget {
            max_states,
            ..Budget::default()
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            budget: *self,
            start: Instant::now(),
            states: 0,
            ticks: 0,
        }
    }
}

/// Running account against a [`Budget`].
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    states: usize,
    ticks: u32,
}

impl Meter {
    /// Count `n` new states.
    pub fn charge(&mut self, n: usize) -> Result<()> {
        self.states = self.states.saturating_add(n);
        if self.states > self.budget.max_states {
            return Err(Error::Budget(Resource::States(self.budget.max_states)));
        }
        self.tick()
    }

    /// Instant at which the time budget runs out.
    pub fn deadline(&self) -> Instant {
        self.start + self.budget.max_time
    }

    /// Error for an exhausted clock.
    pub fn time_error(&self) -> Error {
        Error::Budget(Resource::Time(self.budget.max_time))
    }

    /// Cheap periodic clock check for inner loops.
    pub fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 1024 == 0 && self.start.elapsed() > self.budget.max_time {
            return Err(self.time_error());
        }
        Ok(())
    }
}
