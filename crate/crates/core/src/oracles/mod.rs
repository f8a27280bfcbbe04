//! Verification oracles (placeholder while the kernel is built).
