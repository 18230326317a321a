use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Optional wall-clock deadline shared by the long-running stages.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn with_timeout(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn check(&self, stage: &str) -> Result<()> {
        if self.expired() {
            Err(Error::Timeout {
                stage: stage.to_string(),
            })
        } else {
            Ok(())
        }
    }
}
