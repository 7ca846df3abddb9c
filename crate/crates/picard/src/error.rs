use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested dimension exceeds the configured cap.
    #[error("dimension {g} exceeds the configured cap {cap}")]
    CapExceeded { g: u64, cap: u64 },

    /// The brute-force oracle refuses dimensions past its hard limit.
    #[error("oracle enumeration is limited to dimension {limit}, got {g}")]
    OracleLimit { g: u64, limit: u64 },

    /// An operation that is only defined from some minimum dimension.
    #[error("dimension {g} is below the minimum {min} for this operation")]
    DimensionTooSmall { g: u64, min: u64 },

    /// Distribution verification asked for a translate index past the
    /// provable threshold.
    #[error("translate index {ell} exceeds the large-value threshold {max} for this dimension")]
    ThresholdExceeded { ell: u64, max: u64 },
}
