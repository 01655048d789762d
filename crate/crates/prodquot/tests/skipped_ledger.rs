//! The skipped-case ledger must include every order-heavy case of the
//! classification (orders above the cap or on the skip list), for each K^2
//! that has one.

use std::sync::Arc;

use prodquot::groups::Catalogue;
use prodquot::pipeline::{list_admissible_triples, RunConfig, SkippedCase};

fn has(skipped: &[SkippedCase], basket: &[&str], pair: (&str, &str), order: u64) -> bool {
    skipped.iter().any(|s| {
        s.order == order
            && s.basket == basket
            && ((s.t1 == pair.0 && s.t2 == pair.1) || (s.t1 == pair.1 && s.t2 == pair.0))
    })
}

#[test]
fn ledger_includes_every_order_heavy_case() {
    let cat = Arc::new(Catalogue::builtin().unwrap());
    #[rustfmt::skip]
    let rows: &[(i64, &[&str], (&str, &str), u64)] = &[
        (6, &["1/2", "1/2"], ("2, 3, 7", "2, 4, 5"), 2520),
        (5, &["1/3", "2/3"], ("2, 3, 8", "2, 4, 6"), 768),
        (5, &["1/3", "2/3"], ("2, 3, 8", "2, 3, 7"), 2688),
        (5, &["1/3", "2/3"], ("2, 3, 8", "2, 3, 8"), 1536),
        (5, &["1/3", "2/3"], ("2, 3, 8", "2, 3, 9"), 1152),
        (4, &["1/4", "1/4", "1/2"], ("2, 3, 7", "2, 4, 5"), 2520),
        (4, &["1/2", "1/2", "1/2", "1/2"], ("2, 3, 8", "2, 3, 8"), 1152),
        (2, &["1/4", "1/4", "1/4", "1/4"], ("2, 4, 5", "2, 3, 7"), 2520),
        (2, &["1/4", "1/4", "1/2", "1/2", "1/2"], ("2, 3, 8", "2, 3, 8"), 1152),
        (2, &["1/3", "1/3", "2/3", "2/3"], ("2, 3, 8", "2, 3, 8"), 768),
        (1, &["1/5", "1/4", "11/20"], ("2, 3, 8", "2, 3, 8"), 2016),
        (1, &["1/7", "2/7", "2/7"], ("2, 3, 7", "2, 3, 7"), 6048),
        (1, &["3/20", "1/4", "2/5"], ("2, 3, 8", "2, 3, 8"), 2016),
        (1, &["1/8", "1/4", "5/8"], ("2, 3, 8", "2, 3, 8"), 2016),
    ];
    for k2 in [1, 2, 4, 5, 6] {
        let cfg = RunConfig::new(k2, cat.clone());
        let (_, skipped) = list_admissible_triples(&cfg);
        for (rk2, basket, pair, order) in rows.iter().filter(|r| r.0 == k2) {
            assert!(
                has(&skipped, basket, *pair, *order),
                "K^2={rk2}: missing skipped case {basket:?} {pair:?} order {order}"
            );
        }
    }
}
