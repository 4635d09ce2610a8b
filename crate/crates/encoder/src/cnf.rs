use crate::circuit::{bit, Circuit, Gate, Wire};
use num_bigint::BigInt;
use shortgf_core::presburger::{Formula, LinearAtom, Quantifier};
use std::collections::BTreeMap;
use std::fmt;

/// A Boolean variable: input bit `x_i` or bit `y_j` of the packed witness `y` (both 1-indexed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    Y(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lit {
    pub var: Var,
    pub pos: bool,
}

impl Lit {
    pub fn pos(var: Var) -> Lit {
        Lit { var, pos: true }
    }

    pub fn neg(var: Var) -> Lit {
        Lit { var, pos: false }
    }

    pub fn negate(self) -> Lit {
        Lit { var: self.var, pos: !self.pos }
    }

    pub fn eval(&self, x: u64, y: u64) -> bool {
        let v = match self.var {
            Var::X(i) => bit(x, i),
            Var::Y(j) => bit(y, j),
        };
        v == self.pos
    }
}

/// Conjunction of clauses with exactly three literals over `x_1..x_r` and `y_1..y_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf3 {
    pub r: usize,
    pub p: usize,
    pub clauses: Vec<[Lit; 3]>,
}

impl Cnf3 {
    pub fn eval(&self, x: u64, y: u64) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(x, y)))
    }

    /// `{x : ∃y F(x, y)}` by enumeration.
    pub fn accepted(&self) -> Vec<u64> {
        (0..1u64 << self.r).filter(|&x| (0..1u64 << self.p).any(|y| self.eval(x, y))).collect()
    }
}

fn pad(lits: &[Lit]) -> [Lit; 3] {
    match *lits {
        [a] => [a, a, a],
        [a, b] => [a, b, b],
        [a, b, c] => [a, b, c],
        _ => unreachable!("gate clauses have one to three literals"),
    }
}

/// Tseitin transformation. Certificate bit `c_i` becomes `y_i`, gate `g_k` becomes `y_{s+k}`;
/// the final unit clause asserts the output gate.
pub fn circuit_to_3cnf(c: &Circuit) -> Cnf3 {
    let var = |w: Wire| match w {
        Wire::X(i) => Var::X(i),
        Wire::C(i) => Var::Y(i),
        Wire::G(k) => Var::Y(c.s + k),
    };
    let mut clauses = Vec::new();
    for (k, g) in c.gates.iter().enumerate() {
        let y = Var::Y(c.s + k + 1);
        let (py, ny) = (Lit::pos(y), Lit::neg(y));
        let cl: Vec<Vec<Lit>> = match *g {
            Gate::Not(a) => {
                let a = var(a);
                vec![vec![py, Lit::pos(a)], vec![ny, Lit::neg(a)]]
            }
            Gate::Buf(a) => {
                let a = var(a);
                vec![vec![ny, Lit::pos(a)], vec![py, Lit::neg(a)]]
            }
            Gate::And(a, b) => {
                let (a, b) = (var(a), var(b));
                vec![vec![ny, Lit::pos(a)], vec![ny, Lit::pos(b)], vec![py, Lit::neg(a), Lit::neg(b)]]
            }
            Gate::Or(a, b) => {
                let (a, b) = (var(a), var(b));
                vec![vec![py, Lit::neg(a)], vec![py, Lit::neg(b)], vec![ny, Lit::pos(a), Lit::pos(b)]]
            }
        };
        clauses.extend(cl.iter().map(|l| pad(l)));
    }
    clauses.push(pad(&[Lit::pos(Var::Y(c.s + c.out))]));
    Cnf3 { r: c.r, p: c.s + c.p(), clauses }
}

fn var_name(v: Var) -> &'static str {
    match v {
        Var::X(_) => "x",
        Var::Y(_) => "y",
    }
}

fn atom(terms: &[(&str, BigInt)], rhs: BigInt) -> LinearAtom {
    let mut coeffs = BTreeMap::new();
    for (v, c) in terms {
        *coeffs.entry(v.to_string()).or_insert_with(|| BigInt::from(0)) += c;
    }
    LinearAtom::new(coeffs, rhs)
}

/// The two integer inequalities saying that `z = ⌊v / 2^i⌋` and bit `i` of `v` equals `pos`:
/// `2^{i−1}(2z + [pos]) ≤ v ≤ 2^{i−1}(2z + [pos] + 1) − 1`.
pub fn bit_system(i: usize, pos: bool, var: &str, z: &str) -> [LinearAtom; 2] {
    let h = BigInt::from(1) << (i - 1);
    let two_h: BigInt = &h * 2;
    let b = if pos { h.clone() } else { BigInt::from(0) };
    // v − 2^i z ≤ b + 2^{i−1} − 1
    let upper = atom(&[(var, BigInt::from(1)), (z, -two_h.clone())], &b + &h - 1);
    // 2^i z − v ≤ −b
    let lower = atom(&[(z, two_h), (var, BigInt::from(-1))], -b);
    [upper, lower]
}

/// `∃z ∈ [0, 2^q)` applied to [`bit_system`]: true iff bit `i` of `var` equals `pos`.
pub fn bit_atom(i: usize, pos: bool, var: &str, z: &str, q: usize) -> Formula {
    let [u, l] = bit_system(i, pos, var, z);
    Formula::Quant {
        q: Quantifier::Exists,
        vars: vec![z.to_string()],
        lo: BigInt::from(0),
        hi: BigInt::from(1) << q,
        body: Box::new(Formula::And(vec![Formula::Atom(u), Formula::Atom(l)])),
    }
}

/// Variables of the encoding, in GF order.
pub const PA_VARS: [&str; 5] = ["x", "y", "z1", "z2", "z3"];

/// The formula `∃y ∈ [0,2^p) ∀z ∈ [0,2^q)^3 Φ(x, y, z)` of a 3-CNF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaEncoding {
    pub r: usize,
    pub p: usize,
    pub q: usize,
    /// `Φ = ⋀_k Ψ_k`, each `Ψ_k` a disjunction of six inequalities.
    pub phi: Formula,
    /// `¬Φ = ⋁_k Φ_k`, each `Φ_k` a conjunction of six inequalities.
    pub not_phi: Formula,
    /// The sentence with `x` free.
    pub sentence: Formula,
}

impl PaEncoding {
    pub fn vars(&self) -> Vec<String> {
        PA_VARS.iter().map(|s| s.to_string()).collect()
    }
}

/// Clause `k` is violated iff every literal is false; the negated literal `j` is encoded with
/// the bit system on `z_j`, giving `Φ_k`. Then `Ψ_k = ¬Φ_k` and `Φ = ⋀ Ψ_k`.
pub fn cnf_to_pa(f: &Cnf3) -> PaEncoding {
    let q = f.r.max(f.p).max(1);
    let mut phis = Vec::with_capacity(f.clauses.len());
    let mut psis = Vec::with_capacity(f.clauses.len());
    for clause in &f.clauses {
        let mut conj = Vec::with_capacity(6);
        for (j, lit) in clause.iter().enumerate() {
            let l = lit.negate();
            let i = match l.var {
                Var::X(i) | Var::Y(i) => i,
            };
            let z = PA_VARS[2 + j];
            conj.extend(bit_system(i, l.pos, var_name(l.var), z));
        }
        psis.push(Formula::Or(conj.iter().map(|a| Formula::Atom(a.negate())).collect()));
        phis.push(Formula::And(conj.into_iter().map(Formula::Atom).collect()));
    }
    let phi = Formula::And(psis);
    let sentence = Formula::Quant {
        q: Quantifier::Exists,
        vars: vec!["y".into()],
        lo: BigInt::from(0),
        hi: BigInt::from(1) << f.p,
        body: Box::new(Formula::Quant {
            q: Quantifier::Forall,
            vars: vec!["z1".into(), "z2".into(), "z3".into()],
            lo: BigInt::from(0),
            hi: BigInt::from(1) << q,
            body: Box::new(phi.clone()),
        }),
    };
    PaEncoding { r: f.r, p: f.p, q, phi, not_phi: Formula::Or(phis), sentence }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, i) = match self.var {
            Var::X(i) => ("x", i),
            Var::Y(i) => ("y", i),
        };
        write!(f, "{}{n}{i}", if self.pos { "" } else { "¬" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use shortgf_core::presburger::eval_formula;

    fn assign(x: u64, z: u64) -> Vec<BigInt> {
        vec![BigInt::from(x), BigInt::from(z)]
    }

    #[test]
    fn bit_atom_examples() {
        let names = vec!["x".to_string()];
        let x5 = [BigInt::from(5)];
        assert!(!eval_formula(&bit_atom(2, true, "x", "z", 4), &names, &x5).unwrap());
        assert!(eval_formula(&bit_atom(2, false, "x", "z", 4), &names, &x5).unwrap());
        assert!(eval_formula(&bit_atom(1, true, "x", "z", 4), &names, &x5).unwrap());
        // the witness for ¬x_2 at x = 5 is z = 1
        let sys = Formula::And(bit_system(2, false, "x", "z").into_iter().map(Formula::Atom).collect());
        let xz = vec!["x".to_string(), "z".to_string()];
        let wit: Vec<u64> = (0..16).filter(|&z| eval_formula(&sys, &xz, &assign(5, z)).unwrap()).collect();
        assert_eq!(wit, vec![1]);
    }

    #[test]
    fn bit_atom_exhaustive() {
        let names = vec!["x".to_string()];
        for i in 1..=4 {
            for x in 0..16u64 {
                for pos in [true, false] {
                    let got = eval_formula(&bit_atom(i, pos, "x", "z", 4), &names, &[BigInt::from(x)]).unwrap();
                    assert_eq!(got, bit(x, i) == pos, "i={i} x={x} pos={pos}");
                }
            }
        }
    }

    #[test]
    fn not_gate_clauses() {
        let c = parse_circuit("circuit r=1\ng1 = NOT x1\nout g1").unwrap();
        let f = circuit_to_3cnf(&c);
        assert_eq!(f.clauses.len(), 3);
        let sat: Vec<(u64, u64)> =
            (0..2).flat_map(|x| (0..2).map(move |y| (x, y))).filter(|&(x, y)| f.eval(x, y)).collect();
        assert_eq!(sat, vec![(0, 1)]);
        let gates_only = Cnf3 { clauses: f.clauses[..2].to_vec(), ..f.clone() };
        let sat: Vec<(u64, u64)> =
            (0..2).flat_map(|x| (0..2).map(move |y| (x, y))).filter(|&(x, y)| gates_only.eval(x, y)).collect();
        assert_eq!(sat, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn and_gate_accepts_only_11() {
        let c = parse_circuit("circuit r=2\ng1 = AND x1 x2\nout g1").unwrap();
        assert_eq!(circuit_to_3cnf(&c).accepted(), vec![3]);
    }

    #[test]
    fn parity_of_three_bits() {
        // x1 ⊕ x2 ⊕ x3 from AND/OR/NOT
        let text = "circuit r=3
g1 = OR x1 x2
g2 = AND x1 x2
g3 = NOT g2
g4 = AND g1 g3
g5 = OR g4 x3
g6 = AND g4 x3
g7 = NOT g6
g8 = AND g5 g7
out g8";
        let c = parse_circuit(text).unwrap();
        let want: Vec<u64> = (0..8).filter(|x: &u64| x.count_ones() % 2 == 1).collect();
        assert_eq!(c.accepted(), want);
        assert_eq!(circuit_to_3cnf(&c).accepted(), want);
    }

    #[test]
    fn gate_values_are_the_unique_witness() {
        let c = parse_circuit("circuit r=3\ng1 = AND x3 x1\ng2 = OR g1 x2\ng3 = NOT g2\nout g3").unwrap();
        let f = circuit_to_3cnf(&c);
        for x in 0..8 {
            let ys: Vec<u64> = (0..8).filter(|&y| f.eval(x, y)).collect();
            if c.eval(x, 0) {
                let packed = c.gate_values(x, 0).iter().enumerate().map(|(k, &v)| (v as u64) << k).sum::<u64>();
                assert_eq!(ys, vec![packed]);
            } else {
                assert!(ys.is_empty());
            }
        }
    }

    #[test]
    fn empty_cnf_is_true() {
        let f = Cnf3 { r: 2, p: 1, clauses: vec![] };
        let enc = cnf_to_pa(&f);
        let x = vec!["x".to_string()];
        for v in 0..4 {
            assert!(eval_formula(&enc.sentence, &x, &[BigInt::from(v)]).unwrap());
        }
    }

    #[test]
    fn not_gate_formula_matches_circuit() {
        let c = parse_circuit("circuit r=2\ng1 = NOT x1\nout g1").unwrap();
        let enc = cnf_to_pa(&circuit_to_3cnf(&c));
        let x = vec!["x".to_string()];
        let got: Vec<u64> =
            (0..4).filter(|&v| eval_formula(&enc.sentence, &x, &[BigInt::from(v)]).unwrap()).collect();
        assert_eq!(got, c.accepted());
    }

    #[test]
    fn length_is_linear_in_clauses() {
        let lens: Vec<u64> = (1..=4)
            .map(|k| {
                let clauses = vec![[Lit::pos(Var::X(1)), Lit::neg(Var::X(2)), Lit::pos(Var::Y(1))]; k];
                cnf_to_pa(&Cnf3 { r: 2, p: 1, clauses }).phi.length()
            })
            .collect();
        let step = lens[1] - lens[0];
        assert!(lens.windows(2).all(|w| w[1] - w[0] == step), "{lens:?}");
    }
}
