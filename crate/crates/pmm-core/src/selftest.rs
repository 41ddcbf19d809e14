//! Self-test suites (placeholder).
