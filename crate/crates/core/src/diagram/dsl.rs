//! Text format for diagrams.
//!
//! ```text
//! file      := block*
//! block     := "diagram" NAME "{" stmt* "}"
//! stmt      := "vertex" NAME ";"
//!            | "edge" NAME VERTEX VERTEX ["bead" STRING] ";"
//!            | "leg" NAME VERTEX ";"
//!            | "strut" NAME ";"
//!            | "loops" INT ";"
//!            | "coeff" STRING ";"
//!            | "cyclic" VERTEX "(" ITEM ITEM ITEM ")" ";"
//! ```
//!
//! Edges run from the first vertex to the second. `cyclic` lists the edges
//! and legs at a vertex in counterclockwise order; a self-loop appears twice
//! and its first listed end is the tail. Without a `cyclic` statement the
//! order is the order in which incidences were declared. `#` and `//` start
//! comments. A file with several blocks denotes the sum of the diagrams,
//! each weighted by its `coeff` (default 1). A file without blocks denotes
//! the empty diagram.

use std::collections::HashMap;
use std::fmt::Write;

use num_traits::One;

use super::{BeadDiagram, BeadEdge, Diagram, DiagramCombo, LegDiagram};
use crate::algebra::{parse_rational, RationalBead, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Word(String),
    Str(String),
    Punct(char),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let mut chars = raw.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c == '#' || raw[i..].starts_with("//") {
                break;
            } else if "{}();".contains(c) {
                out.push((Token::Punct(c), line));
                chars.next();
            } else if c == '"' {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, ch)) => s.push(ch),
                        None => return Err(Error::Parse(format!("line {line}: unterminated string"))),
                    }
                }
                out.push((Token::Str(s), line));
            } else {
                let mut s = String::new();
                while let Some(&(_, ch)) = chars.peek() {
                    if ch.is_whitespace() || "{}();\"#".contains(ch) {
                        break;
                    }
                    s.push(ch);
                    chars.next();
                }
                out.push((Token::Word(s), line));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Default)]
struct Block {
    name: String,
    coeff: Option<Rational>,
    vertices: Vec<String>,
    /// (name, tail vertex, head vertex, bead text)
    edges: Vec<(String, usize, usize, Option<String>)>,
    /// (name, vertex)
    legs: Vec<(String, usize)>,
    struts: Vec<String>,
    loops: usize,
    cyclic: HashMap<usize, Vec<String>>,
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map_or(0, |t| t.1)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("line {}: {msg}", self.line()))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn word(&mut self, what: &str) -> Result<String> {
        match self.next() {
            Some(Token::Word(w)) => Ok(w),
            _ => {
                self.pos -= 1;
                Err(self.err(&format!("expected {what}")))
            }
        }
    }

    fn string(&mut self, what: &str) -> Result<String> {
        match self.next() {
            Some(Token::Str(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                Err(self.err(&format!("expected quoted {what}")))
            }
        }
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Token::Punct(p)) if p == c => Ok(()),
            _ => {
                self.pos -= 1;
                Err(self.err(&format!("expected `{c}`")))
            }
        }
    }

    fn vertex(&mut self, block: &Block) -> Result<usize> {
        let name = self.word("vertex name")?;
        block
            .vertices
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| self.err(&format!("unknown vertex `{name}`")))
    }

    fn block(&mut self) -> Result<Block> {
        let kw = self.word("`diagram`")?;
        if kw != "diagram" {
            self.pos -= 1;
            return Err(self.err("expected `diagram`"));
        }
        let mut block = Block {
            name: self.word("diagram name")?,
            ..Block::default()
        };
        self.punct('{')?;
        let mut names: Vec<String> = Vec::new();
        let mut fresh = |p: &Parser, name: &str| -> Result<()> {
            if names.iter().any(|n| n == name) {
                return Err(p.err(&format!("duplicate name `{name}`")));
            }
            names.push(name.to_string());
            Ok(())
        };
        loop {
            if self.peek() == Some(&Token::Punct('}')) {
                self.pos += 1;
                return Ok(block);
            }
            let kw = self.word("statement")?;
            match kw.as_str() {
                "vertex" => {
                    let name = self.word("vertex name")?;
                    fresh(self, &name)?;
                    block.vertices.push(name);
                }
                "edge" => {
                    let name = self.word("edge name")?;
                    fresh(self, &name)?;
                    let tail = self.vertex(&block)?;
                    let head = self.vertex(&block)?;
                    let bead = if self.peek() == Some(&Token::Word("bead".into())) {
                        self.pos += 1;
                        Some(self.string("bead")?)
                    } else {
                        None
                    };
                    block.edges.push((name, tail, head, bead));
                }
                "leg" => {
                    let name = self.word("leg name")?;
                    fresh(self, &name)?;
                    let v = self.vertex(&block)?;
                    block.legs.push((name, v));
                }
                "strut" => {
                    let name = self.word("strut name")?;
                    fresh(self, &name)?;
                    block.struts.push(name);
                }
                "loops" => {
                    let n = self.word("loop count")?;
                    block.loops = n.parse().map_err(|_| self.err("loop count must be a non-negative integer"))?;
                }
                "coeff" => {
                    let c = self.string("coefficient")?;
                    block.coeff = Some(parse_rational(&c).map_err(|_| self.err("invalid coefficient"))?);
                }
                "cyclic" => {
                    let v = self.vertex(&block)?;
                    self.punct('(')?;
                    let mut items = Vec::new();
                    for _ in 0..3 {
                        items.push(self.word("edge or leg name")?);
                    }
                    self.punct(')')?;
                    if block.cyclic.insert(v, items).is_some() {
                        return Err(self.err("cyclic order given twice"));
                    }
                }
                other => {
                    self.pos -= 1;
                    return Err(self.err(&format!("unknown statement `{other}`")));
                }
            }
            self.punct(';')?;
        }
    }
}

fn parse_blocks(text: &str) -> Result<Vec<Block>> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let mut blocks = Vec::new();
    while p.peek().is_some() {
        blocks.push(p.block()?);
    }
    Ok(blocks)
}

/// Incidence at a vertex: an edge end (edge index, is tail) or a leg.
#[derive(Clone, Copy, PartialEq)]
enum End {
    Edge(usize, bool),
    Leg(usize),
}

/// Resolves slot assignments: for every vertex, the ends in cyclic order.
fn slots(block: &Block) -> Result<Vec<[End; 3]>> {
    let n = block.vertices.len();
    let mut incident: Vec<Vec<End>> = vec![Vec::new(); n];
    for (i, (_, t, h, _)) in block.edges.iter().enumerate() {
        incident[*t].push(End::Edge(i, true));
        incident[*h].push(End::Edge(i, false));
    }
    for (i, (_, v)) in block.legs.iter().enumerate() {
        incident[*v].push(End::Leg(i));
    }
    let bad = |msg: String| Error::InvalidDiagram(format!("diagram `{}`: {msg}", block.name));
    let mut out = Vec::with_capacity(n);
    for (v, ends) in incident.into_iter().enumerate() {
        let vname = &block.vertices[v];
        if ends.len() != 3 {
            return Err(bad(format!("vertex `{vname}` has valence {}", ends.len())));
        }
        let order: Vec<End> = match block.cyclic.get(&v) {
            None => ends,
            Some(items) => {
                let mut remaining = ends;
                let mut order = Vec::new();
                for item in items {
                    let pos = remaining.iter().position(|e| match *e {
                        End::Edge(i, _) => block.edges[i].0 == *item,
                        End::Leg(i) => block.legs[i].0 == *item,
                    });
                    let Some(pos) = pos else {
                        return Err(bad(format!("`{item}` is not incident to `{vname}` here")));
                    };
                    order.push(remaining.remove(pos));
                }
                order
            }
        };
        out.push([order[0], order[1], order[2]]);
    }
    Ok(out)
}

/// Dart of each end: `edge_darts[i] = [tail, head]`, `leg_darts[i]`.
fn darts(block: &Block, slots: &[[End; 3]]) -> (Vec<[usize; 2]>, Vec<usize>) {
    let mut edge_darts = vec![[0; 2]; block.edges.len()];
    let mut leg_darts = vec![0; block.legs.len()];
    for (v, ends) in slots.iter().enumerate() {
        for (k, end) in ends.iter().enumerate() {
            match *end {
                End::Edge(i, tail) => edge_darts[i][usize::from(!tail)] = 3 * v + k,
                End::Leg(i) => leg_darts[i] = 3 * v + k,
            }
        }
    }
    (edge_darts, leg_darts)
}

fn block_to_leg(block: &Block) -> Result<LegDiagram> {
    for (name, _, _, bead) in &block.edges {
        if let Some(b) = bead {
            if !b.parse::<RationalBead>()?.is_one() {
                return Err(Error::InvalidDiagram(format!("edge `{name}` carries a bead in a leg diagram")));
            }
        }
    }
    let slots = slots(block)?;
    let (edge_darts, leg_darts) = darts(block, &slots);
    let t = block.vertices.len();
    let leg_count = block.legs.len() + 2 * block.struts.len();
    let mut edges: Vec<[usize; 2]> = edge_darts;
    for (i, &d) in leg_darts.iter().enumerate() {
        edges.push([d, 3 * t + i]);
    }
    for s in 0..block.struts.len() {
        let base = 3 * t + block.legs.len() + 2 * s;
        edges.push([base, base + 1]);
    }
    LegDiagram::new(t, leg_count, edges, block.loops)
}

fn block_to_bead(block: &Block) -> Result<BeadDiagram> {
    if !block.legs.is_empty() || !block.struts.is_empty() {
        return Err(Error::InvalidDiagram(format!(
            "diagram `{}`: legs are not allowed in a beaded diagram",
            block.name
        )));
    }
    let slots = slots(block)?;
    let (edge_darts, _) = darts(block, &slots);
    let mut edges = Vec::with_capacity(block.edges.len());
    for ((_, _, _, bead), [tail, head]) in block.edges.iter().zip(edge_darts) {
        let bead = match bead {
            Some(b) => b.parse()?,
            None => RationalBead::one(),
        };
        edges.push(BeadEdge::new(tail, head, bead));
    }
    BeadDiagram::new(block.vertices.len(), edges, block.loops)
}

fn to_combo<D: Diagram>(blocks: Vec<Block>, convert: fn(&Block) -> Result<D>) -> Result<DiagramCombo<D>> {
    if blocks.is_empty() {
        return Ok(DiagramCombo::one(None));
    }
    let mut combo = DiagramCombo::zero(None);
    for b in &blocks {
        combo.add_term(b.coeff.clone().unwrap_or_else(Rational::one), convert(b)?);
    }
    Ok(combo)
}

pub fn parse_leg_combo(text: &str) -> Result<DiagramCombo<LegDiagram>> {
    to_combo(parse_blocks(text)?, block_to_leg)
}

pub fn parse_bead_combo(text: &str) -> Result<DiagramCombo<BeadDiagram>> {
    to_combo(parse_blocks(text)?, block_to_bead)
}

fn single<D>(text: &str, convert: fn(&Block) -> Result<D>) -> Result<D> {
    let blocks = parse_blocks(text)?;
    match blocks.as_slice() {
        [b] => convert(b),
        _ => Err(Error::Parse(format!("expected one diagram block, found {}", blocks.len()))),
    }
}

pub fn parse_leg(text: &str) -> Result<LegDiagram> {
    single(text, block_to_leg)
}

pub fn parse_bead(text: &str) -> Result<BeadDiagram> {
    single(text, block_to_bead)
}

fn header(out: &mut String, name: &str, coeff: Option<&Rational>) {
    writeln!(out, "diagram {name} {{").unwrap();
    if let Some(c) = coeff {
        writeln!(out, "  coeff \"{c}\";").unwrap();
    }
}

/// Writes `cyclic` lines; `names[d]` labels the item at dart `d` and
/// `tails[d]` marks darts that must come first in their list.
fn cyclic_lines(out: &mut String, vertices: usize, names: &[String], tails: &[bool]) {
    for v in 0..vertices {
        let at = |k: usize| &names[3 * v + k % 3];
        let start = (0..3)
            .find(|&k| tails[3 * v + k] && (at(k + 1) == at(k) || at(k + 2) == at(k)))
            .unwrap_or(0);
        let items: Vec<&str> = (0..3).map(|k| names[3 * v + (start + k) % 3].as_str()).collect();
        writeln!(out, "  cyclic v{} ({});", v + 1, items.join(" ")).unwrap();
    }
}

pub fn print_leg(name: &str, d: &LegDiagram, coeff: Option<&Rational>) -> String {
    let mut out = String::new();
    header(&mut out, name, coeff);
    let t = d.trivalent_count();
    for v in 0..t {
        writeln!(out, "  vertex v{};", v + 1).unwrap();
    }
    let mut names = vec![String::new(); 3 * t];
    let mut tails = vec![false; 3 * t];
    let (mut ne, mut nl, mut ns) = (0, 0, 0);
    for &[x, y] in d.edges() {
        match (d.is_leg_dart(x), d.is_leg_dart(y)) {
            (false, false) => {
                ne += 1;
                writeln!(out, "  edge e{ne} v{} v{};", x / 3 + 1, y / 3 + 1).unwrap();
                names[x] = format!("e{ne}");
                names[y] = format!("e{ne}");
                tails[x] = true;
            }
            (true, true) => {
                ns += 1;
                writeln!(out, "  strut s{ns};").unwrap();
            }
            (leg_x, _) => {
                let vd = if leg_x { y } else { x };
                nl += 1;
                writeln!(out, "  leg l{nl} v{};", vd / 3 + 1).unwrap();
                names[vd] = format!("l{nl}");
            }
        }
    }
    if d.loops() > 0 {
        writeln!(out, "  loops {};", d.loops()).unwrap();
    }
    cyclic_lines(&mut out, t, &names, &tails);
    out.push_str("}\n");
    out
}

pub fn print_bead(name: &str, d: &BeadDiagram, coeff: Option<&Rational>) -> String {
    let mut out = String::new();
    header(&mut out, name, coeff);
    let t = d.vertices();
    for v in 0..t {
        writeln!(out, "  vertex v{};", v + 1).unwrap();
    }
    let mut names = vec![String::new(); 3 * t];
    let mut tails = vec![false; 3 * t];
    for (i, e) in d.edges().iter().enumerate() {
        let label = format!("e{}", i + 1);
        write!(out, "  edge {label} v{} v{}", e.tail / 3 + 1, e.head / 3 + 1).unwrap();
        if !e.bead.is_one() {
            write!(out, " bead \"{}\"", e.bead).unwrap();
        }
        out.push_str(";\n");
        names[e.tail] = label.clone();
        names[e.head] = label;
        tails[e.tail] = true;
    }
    if d.loops() > 0 {
        writeln!(out, "  loops {};", d.loops()).unwrap();
    }
    cyclic_lines(&mut out, t, &names, &tails);
    out.push_str("}\n");
    out
}

pub fn print_leg_combo(c: &DiagramCombo<LegDiagram>) -> String {
    c.terms()
        .enumerate()
        .map(|(i, (d, x))| print_leg(&format!("d{}", i + 1), d, Some(x)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn print_bead_combo(c: &DiagramCombo<BeadDiagram>) -> String {
    c.terms()
        .enumerate()
        .map(|(i, (d, x))| print_bead(&format!("d{}", i + 1), d, Some(x)))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::make_wheel;

    const THETA: &str = r#"
        # theta with one bead
        diagram theta {
          vertex v1; vertex v2;
          edge e1 v1 v2 bead "t";
          edge e2 v1 v2;
          edge e3 v1 v2;
          cyclic v1 (e1 e2 e3);
          cyclic v2 (e1 e3 e2);
        }
    "#;

    #[test]
    fn parses_theta() {
        let d = parse_bead(THETA).unwrap();
        let expected = BeadDiagram::theta([RationalBead::t(), RationalBead::one(), RationalBead::one()]);
        assert_eq!(d.canonical(), expected.canonical());
        assert!(parse_leg(THETA).is_err());
    }

    #[test]
    fn wheel_round_trip() {
        for n in 1..=4 {
            let w = make_wheel(n);
            let text = print_leg("w", &w, None);
            assert_eq!(parse_leg(&text).unwrap().canonical(), w.canonical(), "{text}");
        }
        let w1 = "diagram w1 { vertex v; edge e v v; leg l v; cyclic v (e e l); }";
        assert_eq!(parse_leg(w1).unwrap().canonical(), make_wheel(1).canonical());
    }

    #[test]
    fn bead_round_trip_with_self_loops() {
        let text = "diagram d { vertex a; vertex b; edge x a a bead \"t\"; edge y a b bead \"(1)/(2 - t)\"; edge z b b bead \"t^2\"; cyclic a (y x x); }";
        let d = parse_bead(text).unwrap();
        let back = parse_bead(&print_bead("d", &d, None)).unwrap();
        assert_eq!(back.canonical(), d.canonical());
    }

    #[test]
    fn combos_and_defaults() {
        let text = "diagram a { coeff \"1/2\"; strut s; } diagram b { coeff \"-2\"; loops 1; }";
        let c = parse_leg_combo(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coeff(&LegDiagram::strut()), Rational::new(1.into(), 2.into()));
        let back = parse_leg_combo(&print_leg_combo(&c)).unwrap();
        assert_eq!(back, c);
        assert_eq!(parse_leg_combo("").unwrap(), DiagramCombo::one(None));
        assert_eq!(parse_leg_combo("diagram e { }").unwrap(), DiagramCombo::one(None));
    }

    #[test]
    fn errors() {
        for bad in [
            "diagram",
            "diagram d { vertex v }",
            "diagram d { vertex v; edge e v w; }",
            "diagram d { vertex v; vertex v; }",
            "diagram d { bogus; }",
            "diagram d { coeff \"x\"; }",
            "diagram d { vertex v; vertex w; edge e v w bead \"t t\"; edge f v w; edge g v w; }",
        ] {
            let err = parse_bead_combo(bad).unwrap_err();
            assert!(err.is_parse(), "{bad}: {err}");
        }
        let valence = parse_leg("diagram d { vertex v; leg l v; }").unwrap_err();
        assert!(matches!(valence, Error::InvalidDiagram(_)));
    }
}
