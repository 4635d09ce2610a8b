use shortgf_core::{Error, Result};
use std::fmt;

/// A gate input: primary input bit `x<i>`, certificate bit `c<i>` or earlier gate `g<k>` (1-indexed).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wire {
    X(usize),
    C(usize),
    G(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    And(Wire, Wire),
    Or(Wire, Wire),
    Not(Wire),
    /// Single-input AND/OR: the identity.
    Buf(Wire),
}

/// Fan-in ≤ 2 circuit over `r` input bits and `s` certificate bits, gates in topological order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub r: usize,
    pub s: usize,
    pub gates: Vec<Gate>,
    /// 1-indexed output gate.
    pub out: usize,
}

/// Bit `i` (1-indexed from the least significant end) of `v`.
pub fn bit(v: u64, i: usize) -> bool {
    i <= 64 && (v >> (i - 1)) & 1 == 1
}

impl Gate {
    pub fn inputs(&self) -> Vec<Wire> {
        match *self {
            Gate::And(a, b) | Gate::Or(a, b) => vec![a, b],
            Gate::Not(a) | Gate::Buf(a) => vec![a],
        }
    }
}

impl Circuit {
    pub fn new(r: usize, s: usize, gates: Vec<Gate>, out: usize) -> Result<Self> {
        let c = Circuit { r, s, gates, out };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if self.r == 0 || self.r > 62 || self.s > 62 {
            return Err(Error::Invalid("need 1 ≤ r ≤ 62 and s ≤ 62".into()));
        }
        for (k, g) in self.gates.iter().enumerate() {
            for w in g.inputs() {
                let ok = match w {
                    Wire::X(i) => (1..=self.r).contains(&i),
                    Wire::C(i) => (1..=self.s).contains(&i),
                    Wire::G(j) => (1..=k).contains(&j),
                };
                if !ok {
                    return Err(Error::Invalid(format!("gate g{} has an invalid input {}", k + 1, WireFmt(w))));
                }
            }
        }
        if !(1..=self.gates.len()).contains(&self.out) {
            return Err(Error::Invalid(format!("output g{} is not a gate", self.out)));
        }
        Ok(())
    }

    /// Number of non-input gates.
    pub fn p(&self) -> usize {
        self.gates.len()
    }

    /// All gate values for input `x` and certificate `c`.
    pub fn gate_values(&self, x: u64, c: u64) -> Vec<bool> {
        let mut vals: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let get = |w: Wire, vals: &[bool]| match w {
                Wire::X(i) => bit(x, i),
                Wire::C(i) => bit(c, i),
                Wire::G(j) => vals[j - 1],
            };
            let v = match *g {
                Gate::And(a, b) => get(a, &vals) && get(b, &vals),
                Gate::Or(a, b) => get(a, &vals) || get(b, &vals),
                Gate::Not(a) => !get(a, &vals),
                Gate::Buf(a) => get(a, &vals),
            };
            vals.push(v);
        }
        vals
    }

    pub fn eval(&self, x: u64, c: u64) -> bool {
        self.gate_values(x, c)[self.out - 1]
    }

    /// `{x < 2^r : ∃c C(x, c)}`.
    pub fn accepted(&self) -> Vec<u64> {
        (0..1u64 << self.r).filter(|&x| (0..1u64 << self.s).any(|c| self.eval(x, c))).collect()
    }

    /// The same circuit with a NOT appended at the output.
    pub fn negated(&self) -> Circuit {
        let mut gates = self.gates.clone();
        gates.push(Gate::Not(Wire::G(self.out)));
        let out = gates.len();
        Circuit { r: self.r, s: self.s, gates, out }
    }
}

struct WireFmt(Wire);

impl fmt::Display for WireFmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Wire::X(i) => write!(f, "x{i}"),
            Wire::C(i) => write!(f, "c{i}"),
            Wire::G(j) => write!(f, "g{j}"),
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s > 0 {
            writeln!(f, "circuit r={} s={}", self.r, self.s)?;
        } else {
            writeln!(f, "circuit r={}", self.r)?;
        }
        for (k, g) in self.gates.iter().enumerate() {
            let body = match *g {
                Gate::And(a, b) => format!("AND {} {}", WireFmt(a), WireFmt(b)),
                Gate::Or(a, b) => format!("OR {} {}", WireFmt(a), WireFmt(b)),
                Gate::Not(a) => format!("NOT {}", WireFmt(a)),
                Gate::Buf(a) => format!("AND {}", WireFmt(a)),
            };
            writeln!(f, "g{} = {body}", k + 1)?;
        }
        writeln!(f, "out g{}", self.out)
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return Err(err(line, format!("bad index `{s}`")));
    }
    s.parse().map_err(|_| err(line, format!("index `{s}` out of range")))
}

fn parse_wire(s: &str, line: usize) -> Result<Wire> {
    let (kind, rest) = s.split_at(s.chars().next().map_or(0, |c| c.len_utf8()));
    let i = parse_index(rest, line)?;
    if i == 0 {
        return Err(err(line, "wire indices start at 1"));
    }
    match kind {
        "x" => Ok(Wire::X(i)),
        "c" => Ok(Wire::C(i)),
        "g" => Ok(Wire::G(i)),
        _ => Err(err(line, format!("bad wire `{s}`"))),
    }
}

/// Parses `circuit r=<r> [s=<s>]`, then `g<k> = AND|OR|NOT <wire> [<wire>]` lines with `k`
/// counting up from 1, then `out g<k>`. Blank lines and `#` comments are ignored.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("circuit") {
        return Err(err(hl, "expected `circuit r=<r>` header"));
    }
    let mut r = None;
    let mut s = 0;
    for t in toks {
        match t.split_once('=') {
            Some(("r", v)) if r.is_none() => r = Some(parse_index(v, hl)?),
            Some(("s", v)) => s = parse_index(v, hl)?,
            _ => return Err(err(hl, format!("unexpected header token `{t}`"))),
        }
    }
    let r = r.ok_or_else(|| err(hl, "missing r="))?;
    let mut gates = Vec::new();
    let mut out = None;
    for (ln, l) in lines {
        if out.is_some() {
            return Err(err(ln, "content after `out` line"));
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.first() == Some(&"out") {
            if toks.len() != 2 {
                return Err(err(ln, "expected `out g<k>`"));
            }
            match parse_wire(toks[1], ln)? {
                Wire::G(k) => out = Some((ln, k)),
                _ => return Err(err(ln, "output must be a gate")),
            }
            continue;
        }
        if toks.len() < 4 || toks.len() > 5 || toks[1] != "=" {
            return Err(err(ln, "expected `g<k> = OP <wire> [<wire>]`"));
        }
        match parse_wire(toks[0], ln)? {
            Wire::G(k) if k == gates.len() + 1 => {}
            _ => return Err(err(ln, format!("expected gate name g{}", gates.len() + 1))),
        }
        let a = parse_wire(toks[3], ln)?;
        let b = toks.get(4).map(|w| parse_wire(w, ln)).transpose()?;
        let g = match (toks[2], b) {
            ("AND", Some(b)) => Gate::And(a, b),
            ("OR", Some(b)) => Gate::Or(a, b),
            ("AND" | "OR", None) => Gate::Buf(a),
            ("NOT", None) => Gate::Not(a),
            ("NOT", Some(_)) => return Err(err(ln, "NOT takes one input")),
            (op, _) => return Err(err(ln, format!("unknown gate type `{op}`"))),
        };
        gates.push(g);
    }
    let (ol, out) = out.ok_or_else(|| err(hl, "missing `out` line"))?;
    Circuit::new(r, s, gates, out).map_err(|e| match e {
        Error::Invalid(m) => err(ol, m),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARES3: &str = "circuit r=3\ng1 = AND x3 x1\ng2 = OR g1 x2\ng3 = NOT g2\nout g3\n";

    #[test]
    fn parse_and_eval() {
        let c = parse_circuit(SQUARES3).unwrap();
        assert_eq!(c.p(), 3);
        assert_eq!(c.accepted(), vec![0, 1, 4]);
        assert_eq!(c.to_string(), SQUARES3);
    }

    #[test]
    fn certificates() {
        let c = parse_circuit("circuit r=2 s=2\ng1 = AND x1 c2\nout g1").unwrap();
        assert_eq!(c.accepted(), vec![1, 3]);
        assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "",
            "circuit\ng1 = NOT x1\nout g1",
            "circuit r=2\ng1 = NOT x3\nout g1",
            "circuit r=2\ng2 = NOT x1\nout g2",
            "circuit r=2\ng1 = NOT g1\nout g1",
            "circuit r=2\ng1 = XOR x1 x2\nout g1",
            "circuit r=2\ng1 = NOT x1 x2\nout g1",
            "circuit r=2\ng1 = NOT x1",
            "circuit r=2\ng1 = NOT x1\nout x1",
            "circuit r=2\ng1 = NOT x1\nout g1\ng2 = NOT x2",
            "circuit r=2\ng1 = AND x01 x2\nout g1",
        ] {
            assert!(parse_circuit(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn bits_are_one_indexed_from_lsb() {
        assert!(bit(5, 1) && !bit(5, 2) && bit(5, 3));
    }
}
