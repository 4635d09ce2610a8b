use super::{Formula, LinearAtom, Quantifier};
use crate::error::{Error, Result};
use crate::num::Int;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(Int),
    Sym(&'static str),
}

struct Lexed {
    toks: Vec<Tok>,
    pos: Vec<(usize, usize)>,
}

const SYMBOLS: [&str; 16] = ["<=", ">=", "<", ">", "=", "+", "-", "*", "(", ")", "[", "]", ",", ":", "&", "|"];

fn lex(text: &str) -> Result<Lexed> {
    let mut toks = Vec::new();
    let mut pos = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let bytes = line.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let at = (ln + 1, i + 1);
            if c.is_ascii_digit() {
                let s = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push(Tok::Num(line[s..i].parse().expect("digits")));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let s = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push(Tok::Ident(line[s..i].to_string()));
            } else if c == '!' {
                toks.push(Tok::Sym("!"));
                i += 1;
            } else if let Some(sym) = SYMBOLS.iter().find(|s| line[i..].starts_with(**s)) {
                toks.push(Tok::Sym(sym));
                i += sym.len();
            } else {
                return Err(Error::Parse { line: at.0, msg: format!("column {}: unexpected character {c:?}", at.1) });
            }
            pos.push(at);
        }
    }
    Ok(Lexed { toks, pos })
}

/// Nesting limit for parentheses, negations and quantifier blocks.
const MAX_DEPTH: usize = 256;

struct Parser {
    lx: Lexed,
    i: usize,
    depth: usize,
}

/// `Σ c_v v + k`.
#[derive(Default)]
struct LinExpr {
    coeffs: BTreeMap<String, Int>,
    constant: Int,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.i)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.lx.toks.get(self.i + k)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.lx.pos.get(self.i).copied().unwrap_or_else(|| {
            self.lx.pos.last().map_or((1, 1), |&(l, c)| (l, c + 1))
        });
        let near = match self.peek() {
            Some(Tok::Ident(s)) => format!(" near {s:?}"),
            Some(Tok::Num(n)) => format!(" near {n}"),
            Some(Tok::Sym(s)) => format!(" near {s:?}"),
            None => " at end of input".to_string(),
        };
        Err(Error::Parse { line, msg: format!("column {col}: {}{near}", msg.into()) })
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.err(format!("expected {sym:?}"))
        }
    }

    fn int(&mut self) -> Result<Int> {
        let neg = self.eat("-");
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(if neg { -n } else { n })
            }
            _ => self.err("expected integer"),
        }
    }

    fn quantifier(&self) -> Option<Quantifier> {
        let q = match self.peek() {
            Some(Tok::Ident(s)) if s == "E" => Quantifier::Exists,
            Some(Tok::Ident(s)) if s == "A" => Quantifier::Forall,
            _ => return None,
        };
        matches!(self.peek_at(1), Some(Tok::Ident(_))).then_some(q)
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        if self.depth >= MAX_DEPTH {
            return self.err(format!("nesting deeper than {MAX_DEPTH}"));
        }
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    fn form(&mut self) -> Result<Formula> {
        if let Some(q) = self.quantifier() {
            self.i += 1;
            let mut vars = Vec::new();
            loop {
                match self.peek().cloned() {
                    Some(Tok::Ident(v)) if v != "E" && v != "A" => {
                        self.i += 1;
                        if vars.contains(&v) {
                            return self.err(format!("variable {v} repeated in block"));
                        }
                        vars.push(v);
                    }
                    _ => return self.err("expected variable name"),
                }
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("[")?;
            let lo = self.int()?;
            self.expect(",")?;
            let hi = self.int()?;
            self.expect(")")?;
            self.expect(":")?;
            let body = self.nested(Self::form)?;
            return Ok(Formula::Quant { q, vars, lo, hi, body: Box::new(body) });
        }
        self.disj()
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conj()?];
        while self.eat("|") {
            parts.push(self.conj()?);
        }
        Ok(Formula::or(parts))
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.lit()?];
        while self.eat("&") {
            parts.push(self.lit()?);
        }
        Ok(Formula::and(parts))
    }

    fn lit(&mut self) -> Result<Formula> {
        if self.eat("!") {
            return Ok(Formula::Not(Box::new(self.nested(Self::lit)?)));
        }
        if self.eat("(") {
            let f = self.nested(Self::form)?;
            self.expect(")")?;
            return Ok(f);
        }
        if self.quantifier().is_some() {
            return self.form();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let lhs = self.linexpr()?;
        let rel = match self.peek() {
            Some(Tok::Sym(s)) if ["<=", ">=", "<", ">", "="].contains(s) => *s,
            _ => return self.err("expected relation"),
        };
        self.i += 1;
        let rhs = self.linexpr()?;
        // lhs − rhs (rel) 0
        let mut diff = lhs.coeffs;
        for (v, c) in rhs.coeffs {
            *diff.entry(v).or_insert_with(Int::zero) -= c;
        }
        let k = lhs.constant - rhs.constant;
        let le = |coeffs: BTreeMap<String, Int>, b: Int| Formula::Atom(LinearAtom::new(coeffs, b));
        let neg = |m: &BTreeMap<String, Int>| m.iter().map(|(v, c)| (v.clone(), -c)).collect::<BTreeMap<_, _>>();
        Ok(match rel {
            "<=" => le(diff, -k),
            "<" => le(diff, -k - 1),
            ">=" => le(neg(&diff), k),
            ">" => le(neg(&diff), k - 1),
            _ => Formula::And(vec![le(neg(&diff), k.clone()), le(diff, -k)]),
        })
    }

    fn linexpr(&mut self) -> Result<LinExpr> {
        let mut e = LinExpr::default();
        let mut sign = if self.eat("-") { -1 } else { 1 };
        loop {
            self.term(&mut e, sign)?;
            if self.eat("+") {
                sign = 1;
            } else if self.eat("-") {
                sign = -1;
            } else {
                return Ok(e);
            }
            if self.eat("-") {
                sign = -sign;
            }
        }
    }

    fn term(&mut self, e: &mut LinExpr, sign: i64) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                let n = n * sign;
                if self.eat("*") {
                    match self.peek().cloned() {
                        Some(Tok::Ident(v)) => {
                            self.i += 1;
                            *e.coeffs.entry(v).or_insert_with(Int::zero) += n;
                        }
                        _ => return self.err("expected variable after '*'"),
                    }
                } else {
                    e.constant += n;
                }
                Ok(())
            }
            Some(Tok::Ident(v)) if v != "E" && v != "A" => {
                self.i += 1;
                *e.coeffs.entry(v).or_insert_with(Int::zero) += sign;
                Ok(())
            }
            _ => self.err("expected term"),
        }
    }
}

/// Parses a formula: `form := quant* disj`, `quant := (E|A) vars [lo,hi) :`,
/// `disj := conj ('|' conj)*`, `conj := lit ('&' lit)*`, `lit := '!' lit | '(' form ')' | atom`,
/// `atom := linexpr (<=|>=|<|>|=) linexpr`. `#` starts a comment.
pub fn parse_pa(text: &str) -> Result<Formula> {
    let lx = lex(text)?;
    let mut p = Parser { lx, i: 0, depth: 0 };
    if p.peek().is_none() {
        return p.err("empty formula");
    }
    let f = p.form()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}
