#![allow(dead_code)]

use num_rational::Rational64;
use vanishing::complexes::GradedComplex;
use vanishing::flinalg::FpMatrix;
use vanishing::lines::LineSpec;
use vanishing::towers::{FilteredComplex, Generator, Tower};

/// a (deg 1, filt 0), b (deg 0, filt 1), d(a) = b over F_2.
pub fn t1() -> Tower {
    let generators = vec![
        Generator {
            name: "a".into(),
            degree: 1,
            filtration: 0,
        },
        Generator {
            name: "b".into(),
            degree: 0,
            filtration: 1,
        },
    ];
    let d = FpMatrix::from_entries(2, 2, 2, &[0, 0, 1, 0]).unwrap();
    FilteredComplex::new(2, generators, d).unwrap().to_tower()
}

pub fn sphere_tower(p: u32) -> Tower {
    Tower::constant(&GradedComplex::sphere(p, 0))
}

pub fn q(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

pub fn spec(m: Rational64, b: Rational64, r: i32) -> LineSpec {
    LineSpec::new(m, b, r).unwrap()
}
