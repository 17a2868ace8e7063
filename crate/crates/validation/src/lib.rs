//! Holds the `acceptance` test target: one timed PASS/FAIL line per
//! criterion. Run it with `cargo test -p qdom-validation --test acceptance`.
