use crate::error::{Error, Result};
use crate::quiver::DEFAULT_MAX_PATH_LENGTH;

/// Search bounds shared by the decomposition pipeline and the front end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Longest path any enumeration may visit before giving up.
    pub max_path_length: usize,
    /// Iterations allowed when exponentiating; `None` picks one more than
    /// the longest finite maximal path.
    pub nilpotency_cap: Option<usize>,
    /// Largest entry degree accepted for a conjugating matrix.
    pub conjugation_degree_cap: usize,
    pub verbosity: u8,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_path_length: DEFAULT_MAX_PATH_LENGTH,
            nilpotency_cap: None,
            conjugation_degree_cap: 32,
            verbosity: 0,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.max_path_length == 0 || self.conjugation_degree_cap == 0 || self.nilpotency_cap == Some(0) {
            return Err(Error::InvalidPresentation("all caps must be positive".into()));
        }
        Ok(())
    }
}
