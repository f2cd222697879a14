//! Small hand-built scenarios used by tests, docs and the CLI.

use crate::model::{Area, Radio, Scenario, Vehicle};

const AREA: Area = Area {
    width: 1000.0,
    height: 1000.0,
};

/// Three vehicles with two radios each, laid out on a line.
///
/// A carries R1 (f1) and R2 (f2), B carries R3 (f3) and R4 (f4), C carries
/// R5 (f3) and R6 (f2). A and B share no channel and sit 300 m apart, so
/// traffic from A to B must relay through C: R2 -> R6, internal hand-off,
/// R5 -> R3.
///
/// Ids: A = 1, B = 2, C = 3.
pub fn figure_one() -> Scenario {
    Scenario::new(
        AREA,
        200.0,
        vec![
            Vehicle::new(1, 0.0, 0.0, vec![Radio::new(1, 1, 4.0), Radio::new(2, 2, 4.0)]).named("A"),
            Vehicle::new(2, 300.0, 0.0, vec![Radio::new(3, 3, 4.0), Radio::new(4, 4, 4.0)])
                .named("B"),
            Vehicle::new(3, 150.0, 0.0, vec![Radio::new(5, 3, 4.0), Radio::new(6, 2, 4.0)])
                .named("C"),
        ],
    )
}

/// Four single-channel vehicles where the shortest route and the best
/// distance/bandwidth route disagree.
///
/// S(0,0), M1(150,0) at 2 kbit/s, M2(150,50) at 10 kbit/s, T(300,0) at
/// 10 kbit/s, range 200 m. Ids: S = 1, M1 = 2, M2 = 3, T = 4.
pub fn diamond() -> Scenario {
    Scenario::new(
        AREA,
        200.0,
        vec![
            Vehicle::new(1, 0.0, 0.0, vec![Radio::new(1, 1, 5.0)]).named("S"),
            Vehicle::new(2, 150.0, 0.0, vec![Radio::new(1, 1, 2.0)]).named("M1"),
            Vehicle::new(3, 150.0, 50.0, vec![Radio::new(1, 1, 10.0)]).named("M2"),
            Vehicle::new(4, 300.0, 0.0, vec![Radio::new(1, 1, 10.0)]).named("T"),
        ],
    )
}

/// Four single-channel vehicles on the corners of a 100 m square, so every
/// pair is linked.
pub fn complete_four() -> Scenario {
    let corners = [(0.0, 0.0), (100.0, 0.0), (0.0, 100.0), (100.0, 100.0)];
    Scenario::new(
        AREA,
        200.0,
        corners
            .iter()
            .zip(1..)
            .map(|(&(x, y), id)| Vehicle::new(id, x, y, vec![Radio::new(1, 1, 5.0)]))
            .collect(),
    )
}
