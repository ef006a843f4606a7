use sepprob_core::formula::{special_values_table, REQUIRED_DIGITS};

#[test]
fn every_row_agrees() {
    let rows = special_values_table(256).unwrap();
    assert_eq!(rows.len(), 12);
    for row in &rows {
        assert!(row.agreement, "alpha = {}: {} digits", row.alpha, row.agreeing_digits);
        if !row.limit_evaluated {
            assert!(row.agreeing_digits >= REQUIRED_DIGITS);
        }
    }
    let limit_rows: Vec<String> = rows.iter().filter(|r| r.limit_evaluated).map(|r| r.alpha.to_string()).collect();
    assert_eq!(limit_rows, ["-1", "-3/2"]);
}
