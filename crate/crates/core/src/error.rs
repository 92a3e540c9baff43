use core::fmt;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex set contained an out-of-range or repeated vertex.
    BadSubset { vertex: usize },
    /// Fewer than `2^(k-1)` vertices were supplied to the transitive finder.
    TooFewVertices { needed: usize, got: usize },
    /// The input exceeds the size cap of a brute-force routine.
    TooLarge { limit: usize, got: usize },
    /// The pattern catalog could not bind names uniquely.
    CalibrationAmbiguous(&'static str),
    /// A solved count was negative, fractional or failed a cross-check.
    InternalInconsistency(&'static str),
    /// The pattern has neither a unique source nor a unique sink.
    NoSourceOrSink,
    /// A labeled total was not divisible by the automorphism order.
    DivisionCheck,
    /// The partition does not have one part per pattern vertex, or is not a partition.
    PartitionMismatch,
    /// The vertex set is not a signature of the pattern.
    NotASignature,
    /// A pattern of this order is not supported by the routine.
    UnsupportedOrder(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadSubset { vertex } => write!(f, "bad vertex subset (vertex {vertex})"),
            Error::TooFewVertices { needed, got } => {
                write!(f, "need at least {needed} vertices, got {got}")
            }
            Error::TooLarge { limit, got } => write!(f, "input too large ({got} > {limit})"),
            Error::CalibrationAmbiguous(why) => write!(f, "catalog calibration ambiguous: {why}"),
            Error::InternalInconsistency(why) => write!(f, "internal inconsistency: {why}"),
            Error::NoSourceOrSink => f.write_str("pattern has no unique source or sink"),
            Error::DivisionCheck => {
                f.write_str("labeled total not divisible by automorphism order")
            }
            Error::PartitionMismatch => f.write_str("partition does not match the pattern"),
            Error::NotASignature => f.write_str("vertex set is not a signature of the pattern"),
            Error::UnsupportedOrder(k) => write!(f, "patterns on {k} vertices are not supported"),
        }
    }
}

#[cfg(feature = "parallel")]
impl std::error::Error for Error {}
