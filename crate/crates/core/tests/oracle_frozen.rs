//! Expected values fixed in advance, independently of the implementation.

use num_bigint::{BigInt, BigUint};

use dioph::kbase::{DegreeBound, KnowledgeBase, Problem, Status, VarBound};
use dioph::linsolve::{frobenius_descriptor, frobenius_number};
use dioph::oracle::{box_search, BoxQuery, Domain};
use dioph::poly::{parse_polynomial, Assignment};
use dioph::quadsolve::pell_fundamental;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn box_search_examples() {
    let p = parse_polynomial("x^2 + y^2 - 2").unwrap();
    let r = box_search(&BoxQuery::new(p, 2, Domain::Integers)).unwrap();
    assert!(r.exhausted);
    let expected: Vec<Assignment> = [[-1, -1], [-1, 1], [1, -1], [1, 1]]
        .iter()
        .map(|v| Assignment::from_i64s(v))
        .collect();
    assert_eq!(r.witnesses, expected);

    let p = parse_polynomial("x - 5").unwrap();
    let r = box_search(&BoxQuery::new(p, 3, Domain::Naturals)).unwrap();
    assert!(r.exhausted && r.witnesses.is_empty());

    let p = parse_polynomial("x^3 + y^3 + z^3 - 29").unwrap();
    let r = box_search(&BoxQuery::new(p, 4, Domain::Integers)).unwrap();
    for perm in [[1, 1, 3], [1, 3, 1], [3, 1, 1]] {
        assert!(r.witnesses.contains(&Assignment::from_i64s(&perm)));
    }
}

#[test]
fn pell_fundamental_table() {
    let table: [(i64, i64, i64); 25] = [
        (2, 3, 2), (3, 2, 1), (5, 9, 4), (6, 5, 2), (7, 8, 3), (8, 3, 1), (10, 19, 6),
        (11, 10, 3), (12, 7, 2), (13, 649, 180), (14, 15, 4), (15, 4, 1), (17, 33, 8),
        (18, 17, 4), (19, 170, 39), (20, 9, 2), (21, 55, 12), (22, 197, 42), (23, 24, 5),
        (24, 5, 1), (26, 51, 10), (27, 26, 5), (28, 127, 24), (29, 9801, 1820), (30, 11, 2),
    ];
    for (d, x, y) in table {
        assert_eq!(pell_fundamental(&b(d)).unwrap(), (b(x), b(y)), "D={d}");
    }
    assert_eq!(pell_fundamental(&b(61)).unwrap(), (b(1766319049), b(226153980)));
    assert_eq!(
        pell_fundamental(&b(109)).unwrap(),
        (b(158070671986249), b(15140424455100))
    );
}

#[test]
fn frobenius_values() {
    assert_eq!(frobenius_number(3, 5).unwrap(), b(7));
    assert_eq!(frobenius_number(4, 7).unwrap(), b(17));
    assert_eq!(frobenius_descriptor(&[6, 9, 20]).unwrap().reduced_frobenius_number(), 43);
    assert_eq!(frobenius_descriptor(&[6, 10, 15]).unwrap().reduced_frobenius_number(), 29);
    let d = frobenius_descriptor(&[4, 6]).unwrap();
    assert_eq!((d.gcd(), d.reduced_frobenius_number()), (2, 1));
}

/// The seventeen printed consequences for the integer problem.
fn printed_integer_pairs() -> Vec<(BigUint, u64)> {
    let e = |m: u64, k: u32| BigUint::from(m) * BigUint::from(10u32).pow(k);
    vec![
        (BigUint::from(8u32), 174),
        (BigUint::from(16u32), 114),
        (BigUint::from(24u32), 96),
        (BigUint::from(32u32), 87),
        (BigUint::from(40u32), 84),
        (BigUint::from(48u32), 78),
        (BigUint::from(56u32), 75),
        (BigUint::from(72u32), 72),
        (BigUint::from(192u32), 63),
        (BigUint::from(5336u32), 57),
        (BigUint::from(400000u32), 42),
        (BigUint::from(31u32 << 14), 30),
        (e(132, 42), 28),
        (e(26, 43), 36),
        (e(92, 43), 24),
        (e(172, 43), 22),
        (e(32, 44), 20),
    ]
}

#[test]
fn printed_grid_is_derived() {
    let kb = KnowledgeBase::builtin();
    let derived: Vec<(BigUint, u64)> = kb
        .derived_facts()
        .iter()
        .filter(|f| f.fact.problem == Problem::OverZ)
        .filter_map(|f| match (&f.fact.degree, f.fact.vars) {
            (DegreeBound::Exact(d), VarBound::Exact(n)) => Some((d.clone(), n)),
            _ => None,
        })
        .collect();
    for (d, n) in printed_integer_pairs() {
        assert!(derived.contains(&(d.clone(), n)), "HZ({d},{n}) missing");
        assert_eq!(kb.status(Problem::OverZ, &d, n).status, Status::Undecidable);
    }
}

#[test]
fn grid_landmarks() {
    let kb = KnowledgeBase::builtin();
    let u = |p, d: u32, n| kb.status(p, &BigUint::from(d), n).status;
    assert_eq!(u(Problem::OverZ, 2, 2), Status::Decidable);
    assert_eq!(u(Problem::OverZ, 2, 500), Status::Decidable);
    assert_eq!(u(Problem::OverZ, 100, 1), Status::Decidable);
    assert_eq!(u(Problem::OverN, 1, 40), Status::Decidable);
    assert_eq!(u(Problem::OverN, 4, 58), Status::Undecidable);
    assert_eq!(u(Problem::OverN, 4, 57), Status::Open);
    assert_eq!(u(Problem::OverZ, 3, 2), Status::Open);
    assert_eq!(u(Problem::OverQ, 2, 2), Status::Open);
}
