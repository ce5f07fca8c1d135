//! Built-in rules and schedules, used when no file is given.

use crate::decimation::{build_schedule, AdfaidConfig, RuleSchedule, ScheduleSpec, Triple};
use crate::rule::{LutRule, ThresholdRule, VariableRule};

#[rustfmt::skip]
const FAID_TABLE: [i8; 49] = [
    -3, -3, -2, -1, -1, -1,  1,
    -3, -1, -1,  0,  1,  1,  3,
    -2, -1,  0,  0,  1,  2,  3,
    -1,  0,  0,  1,  2,  3,  3,
    -1,  1,  1,  2,  2,  3,  3,
    -1,  1,  2,  3,  3,  3,  3,
     1,  3,  3,  3,  3,  3,  3,
];

/// The 7-level FAID look-up table for `y = +C`.
pub fn faid_table() -> LutRule {
    LutRule::from_indices(&FAID_TABLE).expect("built-in table is well formed")
}

pub fn faid_rule() -> VariableRule {
    VariableRule::Lut(faid_table())
}

/// Threshold rule with `L = (1.1, 2.3, 6.6)`, `T = (0.8, 2.8, 4)`, `C = 1.5`.
pub fn decimation_rule() -> VariableRule {
    VariableRule::Threshold(
        ThresholdRule::new([1.1, 2.3, 6.6], [0.8, 2.8, 4.0], 1.5)
            .expect("built-in threshold rule is well formed"),
    )
}

fn triples(list: &[[i8; 3]]) -> Vec<Triple> {
    list.iter()
        .map(|&[a, b, c]| Triple::from_indices(a, b, c).expect("built-in triple"))
        .collect()
}

/// Schedule for the (155,64) Tanner code.
pub fn tanner_schedule() -> RuleSchedule {
    build_schedule(&ScheduleSpec {
        name: "tanner-155-64".into(),
        xi1: triples(&[[3, 0, 0], [2, 2, 1]]),
        gamma: triples(&[
            [2, 2, 2],
            [2, 2, 1],
            [2, 2, 0],
            [2, 1, 1],
            [2, 1, 0],
            [2, 2, -1],
            [2, 1, -1],
            [2, 0, 0],
        ]),
        sizes: vec![23, 25, 26, 27, 29],
    })
    .expect("built-in schedule is valid")
}

/// Schedule for the (732,551) latin-squares code.
pub fn code732_schedule() -> RuleSchedule {
    build_schedule(&ScheduleSpec {
        name: "code-732-551".into(),
        xi1: triples(&[[3, 1, -3], [3, -1, -1], [2, 1, 1]]),
        gamma: triples(&[
            [2, 2, 2],
            [2, 2, 1],
            [2, 1, 1],
            [2, 2, 0],
            [2, 2, -1],
            [2, 1, 0],
            [1, 1, 1],
            [2, 0, 0],
            [2, 1, -1],
            [1, 1, 0],
            [2, 2, -2],
            [2, 0, -1],
            [1, 1, -1],
            [1, 0, 0],
        ]),
        sizes: (24..=35).collect(),
    })
    .expect("built-in schedule is valid")
}

/// Threshold decimation map, FAID residual map and the Tanner schedule.
pub fn tanner_adfaid() -> AdfaidConfig {
    AdfaidConfig::new(decimation_rule(), faid_rule(), tanner_schedule())
}
