//! Piecewise-polynomial scalar functions ℝ → ℂ and their text grammar.
//!
//! A symbol is a list of pieces `(S_k, p_k)` with pairwise disjoint Borel
//! sets `S_k`; the function equals `p_k` on `S_k` and 0 elsewhere.
//!
//! Grammar:
//! ```text
//! symbol    := expr | '{' clause (';' clause)* '}'
//! clause    := borel-set ':' expr
//! expr      := ['-'] term (('+' | '-') term)*
//! term      := factor (['*'] factor)*
//! factor    := atom ['^' integer]
//! atom      := number | 'i' | 'x' | '(' expr ')'
//! ```

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::l2::VectorFunction;
use crate::linalg::{C64, ONE, ZERO};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseScalarFn {
    pieces: Vec<(BorelSet, Poly)>,
}

impl PiecewiseScalarFn {
    /// Validates that the piece domains are pairwise disjoint.
    pub fn new(pieces: Vec<(BorelSet, Poly)>) -> Result<Self> {
        for (i, (a, p)) in pieces.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidFunction("non-finite coefficient".into()));
            }
            for (b, _) in &pieces[i + 1..] {
                let overlap = a.intersect(b);
                if !overlap.is_empty() {
                    return Err(Error::InvalidFunction(format!("symbol pieces overlap on {overlap}")));
                }
            }
        }
        let pieces = pieces.into_iter().filter(|(s, _)| !s.is_empty()).collect();
        Ok(Self { pieces })
    }

    pub fn polynomial(p: Poly) -> Self {
        Self {
            pieces: vec![(BorelSet::real_line(), p)],
        }
    }

    /// `F(t) = t`
    pub fn identity() -> Self {
        Self::polynomial(Poly::monomial(1))
    }

    pub fn constant(c: C64) -> Self {
        Self::polynomial(Poly::constant(c))
    }

    pub fn affine(slope: f64, intercept: f64) -> Self {
        Self::polynomial(Poly::affine(slope, intercept))
    }

    /// `χ_S`
    pub fn indicator(s: BorelSet) -> Self {
        Self {
            pieces: vec![(s, Poly::constant(ONE))],
        }
    }

    pub fn pieces(&self) -> &[(BorelSet, Poly)] {
        &self.pieces
    }

    pub fn eval(&self, t: f64) -> C64 {
        self.pieces
            .iter()
            .find(|(s, _)| s.contains(t))
            .map_or(ZERO, |(_, p)| p.eval(t))
    }

    /// `F̄`
    pub fn conj(&self) -> Self {
        Self {
            pieces: self.pieces.iter().map(|(s, p)| (s.clone(), p.conj())).collect(),
        }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut pieces = Vec::new();
        for (a, p) in &self.pieces {
            for (b, q) in &other.pieces {
                let s = a.intersect(b);
                if !s.is_empty() {
                    pieces.push((s, p * q));
                }
            }
        }
        Self { pieces }
    }

    /// `F − c` everywhere, including outside the pieces.
    pub fn sub_constant(&self, c: C64) -> Self {
        let mut covered = BorelSet::empty();
        let mut pieces: Vec<(BorelSet, Poly)> = self
            .pieces
            .iter()
            .map(|(s, p)| {
                covered = covered.union(s);
                (s.clone(), p - &Poly::constant(c))
            })
            .collect();
        let rest = covered.complement();
        if !rest.is_empty() {
            pieces.push((rest, Poly::constant(-c)));
        }
        Self { pieces }
    }

    /// Pointwise product with a vector function: `(F·f)(t) = F(t) f(t)`.
    pub fn mul_function(&self, f: &VectorFunction) -> Result<VectorFunction> {
        let parts = self
            .pieces
            .iter()
            .map(|(s, p)| f.restrict_to(s).mul_poly(p))
            .collect::<Result<Vec<_>>>()?;
        VectorFunction::disjoint_sum(f.dim(), parts)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = s.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
            if body.contains(':') {
                let mut pieces = Vec::new();
                let mut offset = 1;
                for clause in body.split(';').filter(|c| !c.is_empty()) {
                    let (set, expr) = clause.split_once(':').ok_or_else(|| Error::Parse {
                        position: offset,
                        message: format!("clause `{clause}` lacks ':'"),
                    })?;
                    let set = BorelSet::parse(set).map_err(|e| shift(e, offset))?;
                    let poly = parse_poly(expr).map_err(|e| shift(e, offset + set_len(clause)))?;
                    pieces.push((set, poly));
                    offset += clause.len() + 1;
                }
                return Self::new(pieces);
            }
        }
        Ok(Self::polynomial(parse_poly(&s)?))
    }
}

fn set_len(clause: &str) -> usize {
    clause.find(':').map_or(0, |i| i + 1)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

/// Parses a polynomial in `x` with complex coefficients.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = PolyParser { chars, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    p.check_degree()?;
    Ok(p)
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = self.peek() == Some('-');
        if negate || self.peek() == Some('+') {
            self.pos += 1;
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // implicit multiplication: `2x`, `3i`, `2(x+1)`
                Some(c) if c == 'x' || c == 'i' || c == '(' || c.is_ascii_digit() || c == '.' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let n: u32 = digits.parse().map_err(|_| self.error("expected integer exponent"))?;
            if n as usize > crate::poly::DEGREE_CAP {
                return Err(Error::DegreeOverflow {
                    degree: n as usize,
                    cap: crate::poly::DEGREE_CAP,
                });
            }
            let p = base.pow(n);
            p.check_degree()?;
            return Ok(p);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Poly::monomial(1))
            }
            Some('i') => {
                self.pos += 1;
                Ok(Poly::constant(C64::new(0.0, 1.0)))
            }
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                // exponent part, e.g. 1e-3
                if self.peek() == Some('e') {
                    let save = self.pos;
                    self.pos += 1;
                    if matches!(self.peek(), Some('+' | '-')) {
                        self.pos += 1;
                    }
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            self.pos += 1;
                        }
                    } else {
                        self.pos = save;
                    }
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                let v: f64 = lit.parse().map_err(|_| self.error("bad number"))?;
                Ok(Poly::constant(C64::new(v, 0.0)))
            }
            _ => Err(self.error("expected a number, 'x', 'i' or '('")),
        }
    }
}
