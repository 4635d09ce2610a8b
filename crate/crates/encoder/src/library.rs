//! Small example circuits.

use crate::circuit::{Circuit, Gate, Wire};

/// Accepts even `x < 2^r`: the output is `¬x_1`.
pub fn even_detector(r: usize) -> Circuit {
    Circuit::new(r, 0, vec![Gate::Not(Wire::X(1))], 1).expect("valid circuit")
}

/// Accepts nothing: `x_1 ∧ ¬x_1`.
pub fn constant_false(r: usize) -> Circuit {
    Circuit::new(r, 0, vec![Gate::Not(Wire::X(1)), Gate::And(Wire::X(1), Wire::G(1))], 2).expect("valid circuit")
}

/// Perfect squares below 8, i.e. `{0, 1, 4}`: `¬((x_3 ∧ x_1) ∨ x_2)`.
pub fn squares_tester_3() -> Circuit {
    Circuit::new(
        3,
        0,
        vec![Gate::And(Wire::X(3), Wire::X(1)), Gate::Or(Wire::G(1), Wire::X(2)), Gate::Not(Wire::G(2))],
        3,
    )
    .expect("valid circuit")
}

/// Perfect squares below `2^r`, as an OR over equality comparators `x = k²`.
pub fn squares_tester(r: usize) -> Circuit {
    let mut gates = vec![];
    // g_i = ¬x_i for i = 1..r
    for i in 1..=r {
        gates.push(Gate::Not(Wire::X(i)));
    }
    let mut matches = Vec::new();
    let mut k = 0u64;
    while k * k < 1 << r {
        let v = k * k;
        let lit = |i: usize| if (v >> (i - 1)) & 1 == 1 { Wire::X(i) } else { Wire::G(i) };
        let mut acc = lit(1);
        for i in 2..=r {
            gates.push(Gate::And(acc, lit(i)));
            acc = Wire::G(gates.len());
        }
        matches.push(acc);
        k += 1;
    }
    let mut acc = matches[0];
    for &m in &matches[1..] {
        gates.push(Gate::Or(acc, m));
        acc = Wire::G(gates.len());
    }
    if let Wire::X(_) = acc {
        gates.push(Gate::Buf(acc));
        acc = Wire::G(gates.len());
    }
    let Wire::G(out) = acc else { unreachable!() };
    Circuit::new(r, 0, gates, out).expect("valid circuit")
}

/// `x_1 ∧ c_1 ∨ x_2 ∧ ¬c_1`-style selector: accepts `x` iff some certificate bit `c` picks a set bit.
pub fn bit_selector() -> Circuit {
    // g1 = x1 ∧ c1, g2 = ¬c1, g3 = x2 ∧ g2, g4 = g1 ∨ g3
    Circuit::new(
        2,
        1,
        vec![
            Gate::And(Wire::X(1), Wire::C(1)),
            Gate::Not(Wire::C(1)),
            Gate::And(Wire::X(2), Wire::G(2)),
            Gate::Or(Wire::G(1), Wire::G(3)),
        ],
        4,
    )
    .expect("valid circuit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_tables() {
        assert_eq!(even_detector(3).accepted(), vec![0, 2, 4, 6]);
        assert!(constant_false(2).accepted().is_empty());
        assert_eq!(squares_tester_3().accepted(), vec![0, 1, 4]);
        for r in 1..=6 {
            let want: Vec<u64> = (0..1u64 << r).filter(|&x| (0..=x).any(|k| k * k == x)).collect();
            assert_eq!(squares_tester(r).accepted(), want, "r={r}");
        }
        assert_eq!(bit_selector().accepted(), vec![1, 2, 3]);
    }
}
