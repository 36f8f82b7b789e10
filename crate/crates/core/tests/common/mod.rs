#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

pub mod k3;
pub mod structure;

use multisum::oracle::SequenceSpec;
use multisum::poly::{p, MultiPoly};
use multisum::scalar::CycloNumber;

/// Rows of the all-ones recurrence table, N = 2..10, coefficients of a(n), a(n-1), ...
/// The N = 10 rows are printed without a leading sign on the a(n-2) and a(n-4) lines.
pub const TABLE1: &[&[&str]] = &[
    &["n", "-2*(2*n - 1)"],
    &["n^2", "-(10*n^2 - 10*n + 3)", "9*(n - 1)^2"],
    &["n^3", "-2*(2*n - 1)*(5*n^2 - 5*n + 2)", "64*(n - 1)^3"],
    &[
        "n^4",
        "-(35*n^4 - 70*n^3 + 63*n^2 - 28*n + 5)",
        "(n - 1)^2*(259*(n - 1)^2 + 26)",
        "-(3*5)^2*(n - 1)^2*(n - 2)^2",
    ],
    &[
        "n^5",
        "-2*(2*n - 1)*(14*n^4 - 28*n^3 + 28*n^2 - 14*n + 3)",
        "4*(n - 1)^3*(196*(n - 1)^2 + 59)",
        "-(2*4*6)^2*(n - 1)^2*(n - 2)^2*(n - 1/2)^2",
    ],
    &[
        "n^6",
        "-(84*(n*(n - 1))^3 + 126*(n*(n - 1))^2 + 54*n*(n - 1) + 7)",
        "3*(n - 1)^2*(658*(n - 1)^4 + 396*(n - 1)^2 + 17)",
        "-2*(n - 1)^2*(n - 2)^2*(6458*n^2 - 19374*n + 15505)",
        "(3*5*7)^2*(n - 1)^2*(n - 2)^2*(n - 3)^2",
    ],
    &[
        "n^7",
        "-2*(2*n - 1)*(30*(n*(n - 1))^3 + 54*(n*(n - 1))^2 + 27*n*(n - 1) + 4)",
        "12*(n - 1)^3*(364*(n - 1)^4 + 365*(n - 1)^2 + 47)",
        "-2^7*(n - 1)^2*(n - 2)^2*(2*n - 3)*(205*n^2 - 615*n + 554)",
        "(2*4*6*8)^2*(n - 1)^2*(n - 2)^3*(n - 3)^2",
    ],
    &[
        "n^8",
        "-(165*n^8 - 660*n^7 + 1386*n^6 - 1848*n^5 + 1650*n^4 - 990*n^3 + 385*n^2 - 88*n + 9)",
        "3*(n - 1)^2*(2926*n^6 - 17556*n^5 + 48290*n^4 - 76120*n^3 + 71423*n^2 - 37422*n + 8487)",
        "-(n - 2)^2*(n - 1)^2*(172810*n^4 - 1036860*n^3 + 2489234*n^2 - 2801832*n + 1237167)",
        "9*(n - 3)^2*(n - 2)^2*(n - 1)^2*(117469*n^2 - 469876*n + 493542)",
        "-(3*5*7*9)^2*(n - 4)^2*(n - 3)^2*(n - 2)^2*(n - 1)^2",
    ],
    &[
        "n^9",
        "-2*(2*n - 1)*(55*n^8 - 220*n^7 + 484*n^6 - 682*n^5 + 649*n^4 - 418*n^3 + 176*n^2 - 44*n + 5)",
        "4*(n - 1)^3*(4092*n^6 - 24552*n^5 + 69993*n^4 - 116292*n^3 + 116754*n^2 - 66396*n + 16675)",
        "-8*(n - 2)^2*(n - 1)^2*(2*n - 3)*(30580*n^4 - 183480*n^3 + 458909*n^2 - 551067*n + 267900)",
        "256*(n - 3)^2*(n - 2)^3*(n - 1)^2*(21076*n^2 - 84304*n + 97035)",
        "-(2*4*6*8*10)^2*(n - 4)^2*(n - 3)^2*(n - 2)^2*(n - 1)^2*(n - 5/2)",
    ],
];

pub fn table1_row(big_n: usize) -> Vec<MultiPoly> {
    TABLE1[big_n - 2].iter().map(|s| p(s)).collect()
}

/// Θ-operators F_2..F_7 in t, listed from Θ^0 upward.
pub const TABLE2: &[&[&str]] = &[
    &["2*t", "4*t - 1"],
    &["3*t*(3*t - 1)", "2*t*(9*t - 5)", "(9*t - 1)*(t - 1)"],
    &["4*t*(16*t - 1)", "6*t*(32*t^2 - 3)", "6*t*(32*t - 5)", "(16*t - 1)*(4*t - 1)"],
    &[
        "5*t*(180*t^2 - 57*t + 1)",
        "t*(2700*t^2 - 1088*t + 28)",
        "t*(2925*t^2 - 1580*t + 63)",
        "t*(1350*t^2 - 1036*t + 70)",
        "(25*t - 1)*(9*t - 1)*(t - 1)",
    ],
    &[
        "6*t*(2304*t^2 - 170*t + 1)",
        "50688*t^3 - 4628*t^2 + 40*t",
        "72576*t^3 - 8548*t^2 + 112*t",
        "50688*t^3 - 8076*t^2 + 168*t",
        "17280*t^3 - 3920*t^2 + 140*t",
        "(4*t - 1)*(16*t - 1)*(36*t - 1)",
    ],
    &[
        "7*t*(56700*t^3 - 17720*t^2 + 459*t - 1)",
        "1455300*t^4 - 527112*t^3 + 16698*t^2 - 54*t",
        "2127825*t^4 - 919770*t^3 + 36789*t^2 - 180*t",
        "1587600*t^4 - 844776*t^3 + 44232*t^2 - 336*t",
        "639450*t^4 - 431406*t^3 + 30798*t^2 - 378*t",
        "132300*t^4 - 116244*t^3 + 11844*t^2 - 252*t",
        "(49*t - 1)*(25*t - 1)*(9*t - 1)*(t - 1)",
    ],
];

pub fn table2_row(big_n: usize) -> Vec<MultiPoly> {
    TABLE2[big_n - 2].iter().map(|s| p(s)).collect()
}

pub fn ints(xs: &[i64]) -> Vec<CycloNumber> {
    xs.iter().map(|&x| CycloNumber::from_int(x)).collect()
}

pub fn unit_spec(big_n: usize) -> SequenceSpec {
    SequenceSpec::unit(big_n).unwrap()
}

/// Printed N = 4 examples: weights, sequence prefix, recurrence coefficients (zeros as "0").
pub struct N4Example {
    pub weights: Vec<CycloNumber>,
    pub prefix: Vec<i64>,
    pub coeffs: Vec<&'static str>,
}

pub fn n4_examples() -> Vec<N4Example> {
    let i = CycloNumber::i();
    vec![
        N4Example {
            weights: ints(&[1, 1, 1, 9]),
            prefix: vec![1, 12, 204, 4224, 99324, 2546352, 69359424, 1973611008, 58005903708],
            coeffs: vec![
                "(n - 1)*n^3*(10*n^2 - 35*n + 31)",
                "-4*(n - 1)*(140*n^5 - 700*n^4 + 1289*n^3 - 1104*n^2 + 477*n - 84)",
                "4*(1960*n^6 - 14700*n^5 + 44986*n^4 - 71829*n^3 + 63127*n^2 - 29022*n + 5496)",
                "-1152*(n - 2)^3*(2*n - 3)*(10*n^2 - 15*n + 6)",
            ],
        },
        N4Example {
            weights: ints(&[1, 1, 1, -3]),
            prefix: vec![1, 0, -12, -96, -180, 5760, 70080, 161280, -5144580, -68974080],
            coeffs: vec![
                "(n - 1)*n^3*(14*n^3 - 84*n^2 + 165*n - 107)",
                "-4*(n - 1)^3*(2*n - 5)*(14*n^3 - 42*n^2 + 39*n - 12)",
                "4*(14*n^3 - 84*n^2 + 165*n - 107)*(28*n^4 - 112*n^3 + 163*n^2 - 102*n + 24)",
                "192*(n - 2)^2*(28*n^5 - 210*n^4 + 582*n^3 - 737*n^2 + 426*n - 93)",
                "2304*(n - 3)^2*(n - 2)^2*(14*n^3 - 42*n^2 + 39*n - 12)",
            ],
        },
        N4Example {
            weights: ints(&[1, 1, -1, -1]),
            prefix: vec![1, 0, -4, 0, 156, 0, -5440, 0, 239260, 0, -11151504, 0, 551724096],
            coeffs: vec![
                "(n - 1)*n^3*(10*n^2 - 55*n + 76)",
                "0",
                "4*(120*n^6 - 1140*n^5 + 4282*n^4 - 8107*n^3 + 8170*n^2 - 4176*n + 864)",
                "0",
                "-1024*(n - 3)^3*(n - 2)*(10*n^2 - 15*n + 6)",
            ],
        },
        N4Example {
            weights: vec![CycloNumber::from_int(1), i.clone(), CycloNumber::from_int(-1), -&i],
            prefix: vec![1, 0, 0, 0, -132, 0, 0, 0, 113820, 0, 0, 0, -140078400, 0, 0, 0, 201740158620],
            coeffs: vec![
                "(n - 3)*(n - 2)*(n - 1)*n^3*(48*n^4 - 1032*n^3 + 8276*n^2 - 29347*n + 38840)",
                "0",
                "0",
                "0",
                "16*(6528*n^10 - 218688*n^9 + 3180512*n^8 - 26345016*n^7 + 137020240*n^6 - 465036692*n^5 + 1036364052*n^4 - 1486439881*n^3 + 1303139340*n^2 - 627480000*n + 127008000)",
                "0",
                "0",
                "0",
                "2^12*(n - 7)^2*(n - 6)*(n - 5)^2*(n - 4)*(48*n^4 - 264*n^3 + 500*n^2 - 387*n + 108)",
            ],
        },
    ]
}
