mod common;

use common::{engine_fingerprint, oracle, oracle_degrees, oracle_test_set};

#[test]
fn bar_complex_matches_exhaustive_enumeration() {
    for (name, m) in oracle_test_set() {
        for n in oracle_degrees(&m) {
            assert_eq!(engine_fingerprint(&m, n), oracle(&m, n), "{name}, degree {n}");
        }
    }
}
