use std::time::{Duration, Instant};

use crate::error::ResourceError;

/// Resource guards shared by mintermisation and the simulation algorithms.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest number of minterms a mintermisation may produce.
    pub minterm_cap: usize,
    /// Wall-clock point after which long-running loops give up.
    pub deadline: Option<Instant>,
    /// Largest counter table (entries) INY/LocalSim may allocate.
    pub max_counter_cells: usize,
    started: Instant,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            minterm_cap: 1 << 20,
            deadline: None,
            max_counter_cells: 1 << 28,
            started: Instant::now(),
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            minterm_cap: usize::MAX,
            max_counter_cells: usize::MAX,
            ..Limits::default()
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.minterm_cap = cap;
        self
    }

    /// Sets a deadline `timeout` from now.
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.started = Instant::now();
        self.deadline = Some(self.started + timeout);
        self
    }

    pub fn check_deadline(&self) -> Result<(), ResourceError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(ResourceError::Timeout(self.started.elapsed())),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_minterms(&self, count: usize) -> Result<(), ResourceError> {
        if count > self.minterm_cap {
            Err(ResourceError::MintermBlowup { cap: self.minterm_cap })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_cells(&self, cells: usize) -> Result<(), ResourceError> {
        if cells > self.max_counter_cells {
            Err(ResourceError::MemoryGuard {
                cells,
                limit: self.max_counter_cells,
            })
        } else {
            Ok(())
        }
    }
}
