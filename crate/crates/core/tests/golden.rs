use hurwitz_testkit::golden;

#[test]
fn complete_intersection_values() {
    golden::criterion_1().unwrap();
    golden::criterion_2().unwrap();
    golden::criterion_3().unwrap();
}

#[test]
fn toric_values() {
    golden::criterion_4().unwrap();
    golden::criterion_5().unwrap();
}

#[test]
fn game_values() {
    golden::criterion_6().unwrap();
}

#[test]
fn graph_values() {
    golden::criterion_7().unwrap();
}
