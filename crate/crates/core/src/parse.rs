//! Definition files for rings, modules and ideals.
//!
//! ```text
//! ring R { field = GF(32003); vars = [x:3, y:4, z:5]; relations = ["y^2 - x*z"] }
//! module M over R { generators = [g0:0, g1:2]; relations = ["x*g0 - g1", "y^2*g1"] }
//! ideal a over R { generators = ["x^2", "y^2"] }
//! ```
//!
//! Positions in errors are byte offsets into the file.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{eval_poly, Expr, ExprParser, MonomialOrder, Poly, PolyRing};
use crate::ring::{QRing, QuotientRing};
use crate::module::FPModule;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl Lexer {
    fn new(src: &str) -> Result<Lexer> {
        let b = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < b.len() {
            let c = b[i];
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c == b'#' || (c == b'/' && b.get(i + 1) == Some(&b'/')) {
                while i < b.len() && b[i] != b'\n' {
                    i += 1;
                }
            } else if c.is_ascii_alphabetic() || c == b'_' {
                let s = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(src[s..i].to_string()), s));
            } else if c.is_ascii_digit() || (c == b'-' && b.get(i + 1).is_some_and(u8::is_ascii_digit)) {
                let s = i;
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[s..i].parse().map_err(|_| perr(s, "integer out of range"))?;
                toks.push((Tok::Int(n), s));
            } else if c == b'"' {
                let s = i;
                i += 1;
                while i < b.len() && b[i] != b'"' {
                    i += 1;
                }
                if i == b.len() {
                    return Err(perr(s, "unterminated string"));
                }
                toks.push((Tok::Str(src[s + 1..i].to_string()), s + 1));
                i += 1;
            } else if b"{}[]();=:,".contains(&c) {
                toks.push((Tok::Punct(c as char), i));
                i += 1;
            } else {
                return Err(perr(i, format!("unexpected character `{}`", c as char)));
            }
        }
        Ok(Lexer { toks, at: 0, end: src.len() })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn punct(&mut self, c: char) -> Result<()> {
        let pos = self.pos();
        match self.next() {
            Some((Tok::Punct(p), _)) if p == c => Ok(()),
            _ => Err(perr(pos, format!("expected `{c}`"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        let pos = self.pos();
        match self.next() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            _ => Err(perr(pos, "expected an identifier")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let (s, p) = self.ident()?;
        if s == kw {
            Ok(())
        } else {
            Err(perr(p, format!("expected `{kw}`")))
        }
    }
}

#[derive(Debug)]
enum Item {
    Name(String, Option<i64>, usize),
    Str(String, usize),
}

#[derive(Debug)]
enum Value {
    Word(String, usize),
    Call(String, i64),
    List(Vec<Item>),
}

struct Block {
    kind: String,
    name: String,
    over: Option<(String, usize)>,
    entries: Vec<(String, Value, usize)>,
}

impl Block {
    fn take(&mut self, key: &str) -> Option<(Value, usize)> {
        let i = self.entries.iter().position(|e| e.0 == key)?;
        let (_, v, p) = self.entries.remove(i);
        Some((v, p))
    }

    fn finish(&self) -> Result<()> {
        match self.entries.first() {
            Some((k, _, p)) => Err(perr(*p, format!("unknown key `{k}` in {} block", self.kind))),
            None => Ok(()),
        }
    }
}

fn value(lx: &mut Lexer) -> Result<Value> {
    if lx.eat('[') {
        let mut items = Vec::new();
        if lx.eat(']') {
            return Ok(Value::List(items));
        }
        loop {
            let p = lx.pos();
            match lx.next() {
                Some((Tok::Str(s), sp)) => items.push(Item::Str(s, sp)),
                Some((Tok::Ident(n), np)) => {
                    let w = if lx.eat(':') {
                        let wp = lx.pos();
                        match lx.next() {
                            Some((Tok::Int(k), _)) => Some(k),
                            _ => return Err(perr(wp, "expected an integer degree")),
                        }
                    } else {
                        None
                    };
                    items.push(Item::Name(n, w, np));
                }
                _ => return Err(perr(p, "expected a list item")),
            }
            if lx.eat(']') {
                return Ok(Value::List(items));
            }
            lx.punct(',')?;
        }
    }
    let (w, wp) = lx.ident()?;
    if lx.eat('(') {
        let p = lx.pos();
        let Some((Tok::Int(n), _)) = lx.next() else {
            return Err(perr(p, "expected an integer"));
        };
        lx.punct(')')?;
        return Ok(Value::Call(w, n));
    }
    Ok(Value::Word(w, wp))
}

fn block(lx: &mut Lexer) -> Result<Block> {
    let (kind, kp) = lx.ident()?;
    if !matches!(kind.as_str(), "ring" | "module" | "ideal") {
        return Err(perr(kp, format!("unknown block kind `{kind}`")));
    }
    let (name, _) = lx.ident()?;
    let over = if kind == "ring" {
        None
    } else {
        lx.keyword("over")?;
        Some(lx.ident()?)
    };
    lx.punct('{')?;
    let mut entries = Vec::new();
    while !lx.eat('}') {
        let (key, p) = lx.ident()?;
        lx.punct('=')?;
        let v = value(lx)?;
        if entries.iter().any(|e: &(String, Value, usize)| e.0 == key) {
            return Err(perr(p, format!("duplicate key `{key}`")));
        }
        entries.push((key, v, p));
        if !lx.eat(';') {
            lx.punct('}')?;
            break;
        }
    }
    Ok(Block { kind, name, over, entries })
}

fn blocks(src: &str) -> Result<Vec<Block>> {
    let mut lx = Lexer::new(src)?;
    let mut out = Vec::new();
    while lx.peek().is_some() {
        out.push(block(&mut lx)?);
    }
    Ok(out)
}

fn single(src: &str, kind: &str) -> Result<Block> {
    let mut bs = blocks(src)?;
    match bs.len() {
        1 if bs[0].kind == kind => Ok(bs.remove(0)),
        1 => Err(Error::Definition(format!("expected a {kind} block, found {}", bs[0].kind))),
        n => Err(Error::Definition(format!("expected one {kind} block, found {n} blocks"))),
    }
}

fn strings(v: Value, p: usize, key: &str) -> Result<Vec<(String, usize)>> {
    match v {
        Value::List(items) => items
            .into_iter()
            .map(|it| match it {
                Item::Str(s, sp) => Ok((s, sp)),
                Item::Name(_, _, np) => Err(perr(np, format!("`{key}` entries must be quoted"))),
            })
            .collect(),
        _ => Err(perr(p, format!("`{key}` must be a list"))),
    }
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + base, msg },
        e => e,
    }
}

fn poly_at(text: &str, at: usize, ring: &PolyRing) -> Result<Poly> {
    let e = ExprParser::parse(text).map_err(|e| shift(e, at))?;
    eval_poly(&e, ring).map_err(|err| match err {
        Error::UnknownVariable(v) => perr(at + atom_pos(&e, &v), format!("unknown variable `{v}`")),
        err => err,
    })
}

fn atom_pos(e: &Expr, name: &str) -> usize {
    fn find(e: &Expr, name: &str) -> Option<usize> {
        match e {
            Expr::Atom(n, p) if n == name => Some(*p),
            Expr::Num(..) | Expr::Atom(..) => None,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => find(a, name).or_else(|| find(b, name)),
            Expr::Neg(a) | Expr::Pow(a, _) => find(a, name),
        }
    }
    find(e, name).unwrap_or(0)
}

/// Parses a `ring` block.
pub fn parse_ring(src: &str) -> Result<QRing> {
    let mut b = single(src, "ring")?;
    let field = match b.take("field") {
        Some((Value::Word(w, _), _)) if w == "QQ" => Field::Rationals,
        Some((Value::Call(w, p), _)) if w == "GF" => Field::prime(u32::try_from(p).map_err(|_| Error::InvalidField(format!("GF({p})")))?)?,
        Some((v, p)) => return Err(perr(p, format!("unsupported field {v:?}"))),
        None => return Err(Error::Definition("ring block lacks `field`".into())),
    };
    let vars = match b.take("vars") {
        Some((Value::List(items), _)) => items
            .into_iter()
            .map(|it| match it {
                Item::Name(n, w, np) => {
                    let w = w.unwrap_or(1);
                    if w < 1 || w > u16::MAX as i64 {
                        return Err(perr(np, format!("weight of `{n}` must be positive")));
                    }
                    Ok((n, w as u32))
                }
                Item::Str(_, sp) => Err(perr(sp, "variables are bare names")),
            })
            .collect::<Result<Vec<_>>>()?,
        Some((_, p)) => return Err(perr(p, "`vars` must be a list")),
        None => return Err(Error::Definition("ring block lacks `vars`".into())),
    };
    let order = match b.take("order") {
        None => MonomialOrder::GrevLex,
        Some((Value::Word(w, p), _)) => match w.as_str() {
            "grevlex" | "GrevLex" => MonomialOrder::GrevLex,
            "lex" | "Lex" => MonomialOrder::Lex,
            _ => return Err(perr(p, format!("unknown order `{w}`"))),
        },
        Some((_, p)) => return Err(perr(p, "`order` must be a name")),
    };
    let rels = match b.take("relations") {
        Some((v, p)) => strings(v, p, "relations")?,
        None => Vec::new(),
    };
    b.finish()?;
    let s = std::sync::Arc::new(PolyRing::new(field, vars, order)?);
    let rels = rels.iter().map(|(t, at)| poly_at(t, *at, &s)).collect::<Result<Vec<_>>>()?;
    QuotientRing::new(&b.name, s, rels)
}

fn check_over(b: &Block, ring: &QRing) -> Result<()> {
    let (over, p) = b.over.as_ref().expect("module and ideal blocks name a ring");
    if over != ring.name() {
        return Err(perr(*p, format!("block is over `{over}` but the ring is `{}`", ring.name())));
    }
    Ok(())
}

/// Parses an `ideal` block, returning its name and generators in the ambient ring.
pub fn parse_ideal(src: &str, ring: &QRing) -> Result<(String, Vec<Poly>)> {
    let mut b = single(src, "ideal")?;
    check_over(&b, ring)?;
    let gens = match b.take("generators") {
        Some((v, p)) => strings(v, p, "generators")?,
        None => Vec::new(),
    };
    b.finish()?;
    let gens = gens
        .iter()
        .map(|(t, at)| {
            let f = poly_at(t, *at, ring.ambient())?;
            if f.is_homogeneous() {
                Ok(f)
            } else {
                Err(Error::NotHomogeneous(t.clone()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((b.name, gens))
}

enum Lin {
    Scalar(Poly),
    Vec(Vector),
}

fn eval_lin(e: &Expr, ring: &PolyRing, gens: &[String], base: usize) -> Result<Lin> {
    let ord = ring.order();
    let as_vec = |l: Lin| match l {
        Lin::Vec(v) => Ok(v),
        Lin::Scalar(p) if p.is_zero() => Ok(Vector::zero()),
        Lin::Scalar(_) => Err(perr(base, "relation has a term without a generator")),
    };
    Ok(match e {
        Expr::Atom(name, p) => match gens.iter().position(|g| g == name) {
            Some(i) => Lin::Vec(Vector::unit(i, ring)),
            None => match ring.var_index(name) {
                Some(i) => Lin::Scalar(Poly::var(ring, i)),
                None => return Err(perr(base + p, format!("unknown generator or variable `{name}`"))),
            },
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (x, y) = (eval_lin(a, ring, gens, base)?, eval_lin(b, ring, gens, base)?);
            let sub = matches!(e, Expr::Sub(..));
            match (x, y) {
                (Lin::Scalar(x), Lin::Scalar(y)) => Lin::Scalar(if sub { x.sub(&y, ring) } else { x.add(&y, ring) }),
                (x, y) => {
                    let (x, y) = (as_vec(x)?, as_vec(y)?);
                    Lin::Vec(if sub { x.sub(&y, ord) } else { x.add(&y, ord) })
                }
            }
        }
        Expr::Mul(a, b) => match (eval_lin(a, ring, gens, base)?, eval_lin(b, ring, gens, base)?) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Lin::Scalar(x.mul(&y, ring)),
            (Lin::Scalar(x), Lin::Vec(v)) | (Lin::Vec(v), Lin::Scalar(x)) => Lin::Vec(v.mul_poly(&x, ord)),
            (Lin::Vec(_), Lin::Vec(_)) => return Err(perr(base, "product of two generators")),
        },
        Expr::Neg(a) => match eval_lin(a, ring, gens, base)? {
            Lin::Scalar(x) => Lin::Scalar(x.neg()),
            Lin::Vec(v) => Lin::Vec(v.neg()),
        },
        Expr::Num(..) | Expr::Pow(..) => match eval_poly(e, ring) {
            Ok(p) => Lin::Scalar(p),
            Err(Error::UnknownVariable(v)) => {
                return Err(perr(base + atom_pos(e, &v), format!("generator `{v}` raised to a power")))
            }
            Err(err) => return Err(err),
        },
    })
}

/// Parses a `module` block over `ring`, returning its name and the module.
pub fn parse_module(src: &str, ring: &QRing) -> Result<(String, FPModule)> {
    let mut b = single(src, "module")?;
    check_over(&b, ring)?;
    let (names, twists): (Vec<String>, Vec<i32>) = match b.take("generators") {
        Some((Value::List(items), _)) => items
            .into_iter()
            .map(|it| match it {
                Item::Name(n, d, np) => {
                    if ring.poly_ring().var_index(&n).is_some() {
                        return Err(perr(np, format!("generator `{n}` shadows a variable")));
                    }
                    let d = d.unwrap_or(0);
                    i32::try_from(d).map(|d| (n, d)).map_err(|_| perr(np, "degree out of range"))
                }
                Item::Str(_, sp) => Err(perr(sp, "generators are bare names")),
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip(),
        Some((_, p)) => return Err(perr(p, "`generators` must be a list")),
        None => return Err(Error::Definition("module block lacks `generators`".into())),
    };
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::Definition(format!("duplicate generator `{n}`")));
        }
    }
    let rels = match b.take("relations") {
        Some((v, p)) => strings(v, p, "relations")?,
        None => Vec::new(),
    };
    b.finish()?;
    let pr = ring.poly_ring();
    let mut vecs = Vec::new();
    for (t, at) in &rels {
        let e = ExprParser::parse(t).map_err(|e| shift(e, *at))?;
        let v = match eval_lin(&e, pr, &names, *at)? {
            Lin::Vec(v) => v,
            Lin::Scalar(p) if p.is_zero() => Vector::zero(),
            Lin::Scalar(_) => return Err(perr(*at, "relation has no generator")),
        };
        if !v.is_homogeneous(&twists) {
            return Err(Error::NotHomogeneous(t.clone()));
        }
        vecs.push(v);
    }
    Ok((b.name, FPModule::new(ring.clone(), twists, vecs)?))
}

/// Renders `ring` as a definition block.
pub fn ring_definition(ring: &QRing) -> String {
    let pr = ring.poly_ring();
    let vars: Vec<String> = pr.names().iter().zip(pr.weights()).map(|(n, w)| format!("{n}:{w}")).collect();
    let rels: Vec<String> = ring.ideal().gens().iter().map(|g| format!("\"{}\"", g.display(pr))).collect();
    format!("ring {} {{ field = {}; vars = [{}]; relations = [{}] }}", ring.name(), pr.field(), vars.join(", "), rels.join(", "))
}

/// Renders `m` as a definition block named `name`.
pub fn module_definition(name: &str, m: &FPModule) -> String {
    format!("module {name} over {} {{ {} }}", m.ring().name(), m.display())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONE: &str = r#"
        # twisted cubic cone
        ring R { field = GF(32003); vars = [a, b, c, d]; relations = ["b^2 - a*c", "b*c - a*d", "c^2 - b*d"] }
    "#;

    #[test]
    fn ring_blocks() {
        let r = parse_ring(CONE).unwrap();
        assert_eq!((r.nvars(), r.dim(), r.name()), (4, 2, "R"));
        let w = parse_ring("ring T { field = GF(32003); vars = [x:3, y:4, z:5]; relations = [\"y^2 - x*z\"] }").unwrap();
        assert_eq!(w.weights(), &[3, 4, 5]);
        let round = parse_ring(&ring_definition(&r)).unwrap();
        assert_eq!(round.hilbert_series(), r.hilbert_series());
    }

    #[test]
    fn module_blocks() {
        let r = parse_ring("ring R { field = QQ; vars = [x, y]; relations = [] }").unwrap();
        let (name, m) =
            parse_module("module M over R { generators = [g0:0, g1:2]; relations = [\"x^2*g0 - g1\", \"y^2*g1\"] }", &r)
                .unwrap();
        assert_eq!(name, "M");
        assert_eq!(m.gens(), &[0, 2]);
        let (_, again) = parse_module(&module_definition("M", &m), &r).unwrap();
        assert_eq!(again.hilbert_series(), m.hilbert_series());
        let (_, a) = parse_ideal("ideal a over R { generators = [\"x^2\", \"x*y\"] }", &r).unwrap();
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let r = parse_ring("ring R { field = QQ; vars = [x, y] }").unwrap();
        let src = "module M over R { generators = [g:0]; relations = [\"x*g + w*g\"] }";
        match parse_module(src, &r) {
            Err(Error::Parse { pos, .. }) => assert_eq!(&src[pos..pos + 1], "w"),
            other => panic!("{other:?}"),
        }
        let src = "module M over R { generators = [g:0]; relations = [\"x*g - y\"] }";
        assert!(matches!(parse_module(src, &r), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_module("module M over R { generators = [g:0]; relations = [\"x*g - y^2*g\"] }", &r),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(matches!(parse_ring("ring R { field = GF(12); vars = [x] }"), Err(Error::InvalidField(_))));
        assert!(matches!(parse_ring("ring R { field = QQ; vars = [x]; relations = [\"1\"] }"), Err(Error::ImproperIdeal)));
        assert!(parse_module("module M over S { generators = [g:0] }", &r).is_err());
        assert!(matches!(parse_ring("ring R { field = QQ; vars = [x], }"), Err(Error::Parse { .. })));
    }
}
