//! Text syntax for ideals, inverse-system submodules and operation specs.
//!
//! ```text
//! ideal   := '(' poly (',' poly)* ')' | 'm' ('^' int)? | 'R' | '0'
//! poly    := ('-')? term (('+' | '-') term)*
//! term    := int? ('*'? var ('^' '-'? int)?)*
//! inverse := '[' term (',' term)* ']' | '(0:_E' ideal ')'
//! op      := name (':' ideal)?
//! ```
//! Every error carries the line and column of the offending character.

use crate::error::{Error, Result};
use crate::inverse_system::InverseMonomialModule;
use crate::linalg::Subspace;
use crate::monomial2::MonomialIdeal;
use crate::pair_ops::{PairOperation, Ring};
use crate::semigroup_ring::TruncatedSemigroupAlgebra;

/// `c · Π var^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub powers: Vec<(char, i64)>,
}

impl Term {
    fn exponent(&self, v: char) -> i64 {
        self.powers.iter().filter(|(w, _)| *w == v).map(|(_, e)| e).sum()
    }

    fn vars(&self) -> impl Iterator<Item = char> + '_ {
        self.powers.iter().map(|(v, _)| *v)
    }
}

pub type Poly = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum IdealExpr {
    Unit,
    #[default]
    Zero,
    MaximalPower(u32),
    Generators(Vec<Poly>),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.text[..pos.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, column, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let message = match self.peek() {
                Some(d) => format!("expected '{c}', found '{d}'"),
                None => format!("expected '{c}', found end of input"),
            };
            Err(self.error(message))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<Option<i64>> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        self.text[start..self.pos]
            .parse()
            .map(Some)
            .map_err(|_| self.error_at(start, "integer is too large"))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }
}

fn parse_term(cur: &mut Cursor, sign: i64) -> Result<Term> {
    let start = cur.pos;
    let coeff = cur.int()?;
    let mut powers = Vec::new();
    loop {
        let save = cur.pos;
        let star = cur.eat('*');
        match cur.peek() {
            Some(v) if v.is_ascii_lowercase() && v != 'm' => {
                cur.pos += 1;
                let e = if cur.eat('^') {
                    let neg = cur.eat('-');
                    let e = cur.int()?.ok_or_else(|| cur.error("expected an exponent"))?;
                    if neg {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                };
                powers.push((v, e));
            }
            _ => {
                if star {
                    return Err(cur.error("expected a variable after '*'"));
                }
                cur.pos = save;
                break;
            }
        }
    }
    if coeff.is_none() && powers.is_empty() {
        return Err(cur.error_at(start, "expected a term"));
    }
    Ok(Term { coeff: sign * coeff.unwrap_or(1), powers })
}

fn parse_poly(cur: &mut Cursor) -> Result<Poly> {
    let mut sign = if cur.eat('-') { -1 } else { 1 };
    let mut terms = Vec::new();
    loop {
        terms.push(parse_term(cur, sign)?);
        if cur.eat('+') {
            sign = 1;
        } else if cur.eat('-') {
            sign = -1;
        } else {
            return Ok(terms);
        }
    }
}

fn parse_ideal_at(cur: &mut Cursor) -> Result<IdealExpr> {
    match cur.peek() {
        Some('R') => {
            cur.pos += 1;
            Ok(IdealExpr::Unit)
        }
        Some('0') => {
            cur.pos += 1;
            Ok(IdealExpr::Zero)
        }
        Some('m') => {
            cur.pos += 1;
            if cur.eat('^') {
                let start = cur.pos;
                let k = cur.int()?.ok_or_else(|| cur.error("expected an exponent"))?;
                if k < 1 {
                    return Err(cur.error_at(start, "power of m must be at least 1"));
                }
                Ok(IdealExpr::MaximalPower(k as u32))
            } else {
                Ok(IdealExpr::MaximalPower(1))
            }
        }
        Some('(') => {
            cur.pos += 1;
            let mut gens = vec![parse_poly(cur)?];
            while cur.eat(',') {
                gens.push(parse_poly(cur)?);
            }
            cur.expect(')')?;
            Ok(IdealExpr::Generators(gens))
        }
        Some(c) => Err(cur.error(format!("expected an ideal, found '{c}'"))),
        None => Err(cur.error("expected an ideal, found end of input")),
    }
}

pub fn parse_ideal(text: &str) -> Result<IdealExpr> {
    let mut cur = Cursor::new(text);
    let e = parse_ideal_at(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn check_vars(text: &str, gens: &[Poly], allowed: &[char]) -> Result<()> {
    for t in gens.iter().flatten() {
        if let Some(v) = t.vars().find(|v| !allowed.contains(v)) {
            let at = text.find(v).unwrap_or(0);
            return Err(Cursor::new(text).error_at(at, format!("unknown variable '{v}'")));
        }
    }
    Ok(())
}

impl IdealExpr {
    /// The ideal of `A_N` (variable `t`); coefficients are reduced mod p.
    pub fn in_semigroup(&self, alg: &TruncatedSemigroupAlgebra) -> Result<Subspace> {
        Ok(match self {
            IdealExpr::Unit => alg.unit_ideal(),
            IdealExpr::Zero => alg.zero_ideal(),
            IdealExpr::MaximalPower(k) => alg.algebra().power(&alg.maximal_ideal(), *k),
            IdealExpr::Generators(gens) => {
                let mut elems = Vec::new();
                for g in gens {
                    let mut terms = Vec::new();
                    for t in g {
                        if let Some(v) = t.vars().find(|&v| v != 't') {
                            return Err(Error::InvalidParam(format!("unknown variable '{v}' in a semigroup ring")));
                        }
                        let e = t.exponent('t');
                        if e < 0 {
                            return Err(Error::InvalidParam("negative exponent in an ideal".into()));
                        }
                        terms.push((t.coeff, e as u32));
                    }
                    elems.push(alg.element_from_terms(&terms)?);
                }
                alg.ideal(elems)
            }
        })
    }

    /// The monomial ideal of `k[[x,y]]`; every generator must be one monomial.
    pub fn in_monomial(&self) -> Result<MonomialIdeal> {
        Ok(match self {
            IdealExpr::Unit => MonomialIdeal::unit(),
            IdealExpr::Zero => MonomialIdeal::zero(),
            IdealExpr::MaximalPower(k) => MonomialIdeal::m_power(*k),
            IdealExpr::Generators(gens) => {
                let mut pts = Vec::new();
                for g in gens {
                    let live: Vec<&Term> = g.iter().filter(|t| t.coeff != 0).collect();
                    if live.len() != 1 {
                        return Err(Error::InvalidParam("monomial ideals take single-monomial generators".into()));
                    }
                    let t = live[0];
                    if let Some(v) = t.vars().find(|&v| v != 'x' && v != 'y') {
                        return Err(Error::InvalidParam(format!("unknown variable '{v}' in k[[x,y]]")));
                    }
                    let (a, b) = (t.exponent('x'), t.exponent('y'));
                    if a < 0 || b < 0 {
                        return Err(Error::InvalidParam("negative exponent in an ideal".into()));
                    }
                    pts.push((a as u32, b as u32));
                }
                MonomialIdeal::new(pts)
            }
        })
    }
}

/// Parses an ideal and checks its variables against `allowed`, so that
/// unknown variables are reported with a position.
pub fn parse_ideal_in(text: &str, allowed: &[char]) -> Result<IdealExpr> {
    let e = parse_ideal(text)?;
    if let IdealExpr::Generators(g) = &e {
        check_vars(text, g, allowed)?;
    }
    Ok(e)
}

/// `[x^-a*y^-b, ...]` (closed under the action) or `(0:_E I)`.
pub fn parse_inverse(text: &str) -> Result<InverseMonomialModule> {
    let mut cur = Cursor::new(text);
    if cur.eat_str("(0:_E") || cur.eat_str("(0 :_E") {
        let i = parse_ideal_at(&mut cur)?.in_monomial()?;
        cur.expect(')')?;
        cur.finish()?;
        return InverseMonomialModule::ann_e(&i);
    }
    cur.expect('[')?;
    let mut monos = Vec::new();
    if !cur.eat(']') {
        loop {
            let start = cur.pos;
            let t = parse_term(&mut cur, 1)?;
            if let Some(v) = t.vars().find(|&v| v != 'x' && v != 'y') {
                return Err(cur.error_at(start, format!("unknown variable '{v}'")));
            }
            let (a, b) = (-t.exponent('x'), -t.exponent('y'));
            if a < 1 || b < 1 || t.coeff != 1 {
                return Err(cur.error_at(start, "expected x^-a*y^-b with a, b >= 1"));
            }
            monos.push((a as u32, b as u32));
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    cur.finish()?;
    Ok(InverseMonomialModule::closure_of(monos)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpName {
    Identity,
    Jbf,
    Jbe,
    Integral,
    IntegralInterior,
    RatliffRush,
    RrCap,
}

/// A builtin operation such as `jbf:m^2` or `jbe:(t^3,t^4)`, before it is
/// bound to a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSpec {
    pub name: OpName,
    /// Source text and parse of `J`.
    pub ideal: Option<(String, IdealExpr)>,
}

impl OpSpec {
    pub fn parse(text: &str) -> Result<OpSpec> {
        let (head, tail) = match text.find(':') {
            Some(i) => (&text[..i], Some(&text[i + 1..])),
            None => (text, None),
        };
        let name = match head.trim() {
            "identity" => OpName::Identity,
            "jbf" => OpName::Jbf,
            "jbe" => OpName::Jbe,
            "integral" => OpName::Integral,
            "integral_interior" => OpName::IntegralInterior,
            "rr" => OpName::RatliffRush,
            "rr_cap" => OpName::RrCap,
            other => {
                return Err(Error::Parse { line: 1, column: 1, message: format!("unknown operation '{other}'") })
            }
        };
        let needs_ideal = matches!(name, OpName::Jbf | OpName::Jbe);
        let ideal = match (needs_ideal, tail) {
            (true, Some(t)) => Some((t.trim().to_string(), parse_ideal(t).map_err(|e| shift(e, head.len() + 1))?)),
            (true, None) => {
                return Err(Error::Parse {
                    line: 1,
                    column: text.len() + 1,
                    message: format!("'{head}' needs an ideal, as in '{head}:m'"),
                })
            }
            (false, Some(_)) => {
                return Err(Error::Parse {
                    line: 1,
                    column: head.len() + 1,
                    message: format!("'{head}' takes no ideal"),
                })
            }
            (false, None) => None,
        };
        Ok(OpSpec { name, ideal })
    }

    pub fn label(&self) -> String {
        match (&self.name, &self.ideal) {
            (OpName::Jbf, Some((t, _))) => format!("jbf({t})"),
            (OpName::Jbe, Some((t, _))) => format!("jbe({t})"),
            (OpName::Identity, _) => "identity".into(),
            (OpName::Integral, _) => "integral".into(),
            (OpName::IntegralInterior, _) => "integral_interior".into(),
            (OpName::RatliffRush, _) => "rr".into(),
            (OpName::RrCap, _) => "rr_cap".into(),
            _ => "?".into(),
        }
    }

    fn j(&self) -> &IdealExpr {
        &self.ideal.as_ref().expect("checked at parse time").1
    }

    /// The pair operation on a semigroup algebra.
    pub fn for_semigroup(&self, alg: &TruncatedSemigroupAlgebra) -> Result<PairOperation> {
        self.bind(|| self.j().in_semigroup(alg))
    }

    /// The pair operation on a monomial box ring.
    pub fn for_box(&self, ring: &Ring) -> Result<PairOperation> {
        self.bind(|| Ok(self.j().in_monomial()?.to_box(ring.algebra())))
    }

    fn bind<F: Fn() -> Result<Subspace>>(&self, j: F) -> Result<PairOperation> {
        let (t, _) = self.ideal.clone().unwrap_or_default();
        Ok(match self.name {
            OpName::Identity => PairOperation::identity(),
            OpName::Jbf => PairOperation::jbf(&t, j()?),
            OpName::Jbe => PairOperation::jbe(&t, j()?),
            OpName::Integral => PairOperation::integral_closure(),
            OpName::IntegralInterior => PairOperation::integral_interior(),
            OpName::RrCap => PairOperation::rr_cap(),
            OpName::RatliffRush => {
                return Err(Error::InvalidParam("rr acts on single ideals of k[[x,y]] only".into()))
            }
        })
    }

    /// Applies the operation to the pair `(I, R)` of monomial ideals exactly.
    pub fn apply_monomial(&self, i: &MonomialIdeal) -> Result<MonomialIdeal> {
        Ok(match self.name {
            OpName::Identity => i.clone(),
            OpName::Jbf => {
                let j = self.j().in_monomial()?;
                j.product(i).colon(&j)
            }
            OpName::Jbe => {
                let j = self.j().in_monomial()?;
                j.product(&i.colon(&j))
            }
            OpName::Integral => i.integral_closure(),
            OpName::RatliffRush => i.ratliff_rush(crate::monomial2::RR_MAX)?,
            OpName::IntegralInterior | OpName::RrCap => {
                return Err(Error::InvalidParam(format!("{} does not act on a single ideal", self.label())))
            }
        })
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { line: 1, column, message } => Error::Parse { line: 1, column: column + by, message },
        other => other,
    }
}
