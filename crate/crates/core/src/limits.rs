use crate::error::{Error, Result};

/// Default ceiling on the X register width.
pub const DEFAULT_MAX_BITS: u32 = 16;

/// Widths above this are refused even when configured: the dense vector would
/// not be addressable on a 32-bit host.
pub const HARD_MAX_BITS: u32 = 30;

/// Environment variable that overrides [`DEFAULT_MAX_BITS`].
pub const MAX_BITS_ENV: &str = "QSUB_MAX_BITS";

/// Resource ceilings applied when registers are allocated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_bits: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_bits: DEFAULT_MAX_BITS }
    }
}

impl Limits {
    pub fn new(max_bits: u32) -> Result<Self> {
        if max_bits == 0 || max_bits > HARD_MAX_BITS {
            return Err(Error::Config(format!(
                "maximum register width must lie in 1..={HARD_MAX_BITS}, got {max_bits}"
            )));
        }
        Ok(Self { max_bits })
    }

    /// Reads `QSUB_MAX_BITS`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_BITS_ENV) {
            Ok(raw) => {
                let bits = raw.trim().parse::<u32>().map_err(|_| {
                    Error::Config(format!("{MAX_BITS_ENV}={raw:?} is not a non-negative integer"))
                })?;
                Self::new(bits)
            }
            Err(std::env::VarError::NotPresent) => Ok(Self::default()),
            Err(e) => Err(Error::Config(format!("{MAX_BITS_ENV}: {e}"))),
        }
    }

    pub fn check(&self, bits: u32) -> Result<()> {
        if bits > self.max_bits {
            Err(Error::LayoutTooLarge { requested: bits, max: self.max_bits })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ceiling_is_sixteen() {
        assert_eq!(Limits::default().max_bits, 16);
        assert!(Limits::default().check(16).is_ok());
        assert!(matches!(
            Limits::default().check(17),
            Err(Error::LayoutTooLarge { requested: 17, max: 16 })
        ));
    }

    #[test]
    fn rejects_out_of_range_ceilings() {
        assert!(Limits::new(0).is_err());
        assert!(Limits::new(HARD_MAX_BITS + 1).is_err());
        assert_eq!(Limits::new(20).unwrap().max_bits, 20);
    }
}
