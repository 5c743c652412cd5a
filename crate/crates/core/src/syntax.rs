//! Property syntax: formula trees, the textual grammar, and normalization.
//!
//! Grammar, tightest binding first:
//!
//! ```text
//! unary    !  pre  once[a:b]  historically[a:b]
//! binary   since[a:b]         left-associative
//!          &&                 left-associative
//!          ||                 left-associative
//!          ->                 right-associative
//! ```
//!
//! Bounds are written `[a:b]`, `[:b]` (lower 0) or `[a:]` (no upper bound).
//! An operator without a bracket is untimed. `true` parses to `!false`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A point on the integer timeline.
pub type Time = u64;

/// Inclusive lower and upper distance of a metric operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TimeBound {
    pub lower: Time,
    /// `None` is unbounded.
    pub upper: Option<Time>,
}

impl TimeBound {
    pub const UNTIMED: TimeBound = TimeBound {
        lower: 0,
        upper: None,
    };

    pub fn new(lower: Time, upper: Option<Time>) -> Result<Self, BoundError> {
        match upper {
            Some(u) if lower > u => Err(BoundError::Inverted { lower, upper: u }),
            Some(Time::MAX) => Err(BoundError::Reserved),
            _ => Ok(TimeBound { lower, upper }),
        }
    }

    pub fn bounded(lower: Time, upper: Time) -> Self {
        Self::new(lower, Some(upper)).expect("lower <= upper")
    }

    pub fn from_lower(lower: Time) -> Self {
        TimeBound { lower, upper: None }
    }

    pub fn is_untimed(&self) -> bool {
        *self == Self::UNTIMED
    }

    /// Upper bound with the unbounded case mapped to `Time::MAX`.
    pub fn upper_or_max(&self) -> Time {
        self.upper.unwrap_or(Time::MAX)
    }
}

impl fmt::Display for TimeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) => write!(f, "[{}:{}]", self.lower, u),
            None => write!(f, "[{}:]", self.lower),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    Inverted { lower: Time, upper: Time },
    #[error("upper bound value is reserved for the unbounded case")]
    Reserved,
}

/// Operator tags of normalized formulas and of compiled nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    False,
    Atom,
    Not,
    And,
    Or,
    Previous,
    Since,
    Once,
    Historically,
}

impl Kind {
    pub fn arity(self) -> usize {
        match self {
            Kind::False | Kind::Atom => 0,
            Kind::Not | Kind::Previous | Kind::Once | Kind::Historically => 1,
            Kind::And | Kind::Or | Kind::Since => 2,
        }
    }

    pub fn is_temporal(self) -> bool {
        matches!(
            self,
            Kind::Previous | Kind::Since | Kind::Once | Kind::Historically
        )
    }

    pub fn has_bound(self) -> bool {
        matches!(self, Kind::Since | Kind::Once | Kind::Historically)
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, Kind::And | Kind::Or)
    }

    pub fn tag(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::False => "false",
            Kind::Atom => "atom",
            Kind::Not => "not",
            Kind::And => "and",
            Kind::Or => "or",
            Kind::Previous => "pre",
            Kind::Since => "since",
            Kind::Once => "once",
            Kind::Historically => "historically",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A past-time temporal formula.
///
/// `Implies` only appears in freshly parsed trees; [`normalize`] removes it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Previous(Box<Formula>),
    Since(Box<Formula>, Box<Formula>, TimeBound),
    Once(Box<Formula>, TimeBound),
    Historically(Box<Formula>, TimeBound),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn truth() -> Self {
        Formula::Not(Box::new(Formula::False))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn previous(f: Formula) -> Self {
        Formula::Previous(Box::new(f))
    }

    pub fn since(l: Formula, r: Formula, bound: TimeBound) -> Self {
        Formula::Since(Box::new(l), Box::new(r), bound)
    }

    pub fn once(f: Formula, bound: TimeBound) -> Self {
        Formula::Once(Box::new(f), bound)
    }

    pub fn historically(f: Formula, bound: TimeBound) -> Self {
        Formula::Historically(Box::new(f), bound)
    }

    /// Operator tag, or `None` for `Implies`.
    pub fn kind(&self) -> Option<Kind> {
        Some(match self {
            Formula::False => Kind::False,
            Formula::Atom(_) => Kind::Atom,
            Formula::Not(_) => Kind::Not,
            Formula::And(..) => Kind::And,
            Formula::Or(..) => Kind::Or,
            Formula::Implies(..) => return None,
            Formula::Previous(_) => Kind::Previous,
            Formula::Since(..) => Kind::Since,
            Formula::Once(..) => Kind::Once,
            Formula::Historically(..) => Kind::Historically,
        })
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::False | Formula::Atom(_) => vec![],
            Formula::Not(x) | Formula::Previous(x) | Formula::Once(x, _) | Formula::Historically(x, _) => {
                vec![x]
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Since(l, r, _) => {
                vec![l, r]
            }
        }
    }

    /// Number of nodes in the syntax tree, counting repeats.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    /// Atom names in first-occurrence order, each listed once.
    pub fn atoms(&self) -> Vec<&str> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            if let Formula::Atom(name) = f {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn is_normalized(&self) -> bool {
        !matches!(self, Formula::Implies(..)) && self.children().into_iter().all(Formula::is_normalized)
    }
}

/// Rewrites `x -> y` into `!x || y`; every other node is kept as is.
pub fn normalize(f: Formula) -> Formula {
    let n = |b: Box<Formula>| Box::new(normalize(*b));
    match f {
        Formula::False | Formula::Atom(_) => f,
        Formula::Not(x) => Formula::Not(n(x)),
        Formula::And(l, r) => Formula::And(n(l), n(r)),
        Formula::Or(l, r) => Formula::Or(n(l), n(r)),
        Formula::Implies(l, r) => Formula::Or(Box::new(Formula::Not(n(l))), n(r)),
        Formula::Previous(x) => Formula::Previous(n(x)),
        Formula::Since(l, r, b) => Formula::Since(n(l), n(r), b),
        Formula::Once(x, b) => Formula::Once(n(x), b),
        Formula::Historically(x, b) => Formula::Historically(n(x), b),
    }
}

/// Prints in the input grammar, fully parenthesizing binary operators so
/// the output re-parses to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn bound(b: &TimeBound) -> String {
            if b.is_untimed() {
                String::new()
            } else {
                b.to_string()
            }
        }
        match self {
            Formula::False => f.write_str("false"),
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(x) => write!(f, "!{x}"),
            Formula::And(l, r) => write!(f, "({l} && {r})"),
            Formula::Or(l, r) => write!(f, "({l} || {r})"),
            Formula::Implies(l, r) => write!(f, "({l} -> {r})"),
            Formula::Previous(x) => write!(f, "pre {x}"),
            Formula::Since(l, r, b) => write!(f, "({l} since{} {r})", bound(b)),
            Formula::Once(x, b) => write!(f, "once{} {x}", bound(b)),
            Formula::Historically(x, b) => write!(f, "historically{} {x}", bound(b)),
        }
    }
}

/// Distinct predicate names in registration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PredicateTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PredicateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = Self::new();
        for name in names {
            table.register(name);
        }
        table
    }

    /// Returns the position of `name`, appending it if unseen.
    pub fn register(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        i
    }

    pub fn register_formula(&mut self, f: &Formula) {
        for a in f.atoms() {
            self.register(a);
        }
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unexpected character `{0}`")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("malformed bound: {0}")]
    Bound(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Bang,
    AndAnd,
    OrOr,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Pre,
    Since,
    Once,
    Historically,
    True,
    False,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Bang => "`!`".into(),
            Tok::AndAnd => "`&&`".into(),
            Tok::OrOr => "`||`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Pre => "`pre`".into(),
            Tok::Since => "`since`".into(),
            Tok::Once => "`once`".into(),
            Tok::Historically => "`historically`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&(i, c)) = chars.peek() {
        let (tl, tc) = (line, column);
        let err = |kind| ParseError {
            line: tl,
            column: tc,
            kind,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let two = |second: char, tok: Tok, chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            chars.next();
            match chars.peek() {
                Some(&(_, n)) if n == second => {
                    chars.next();
                    Ok(tok)
                }
                _ => Err(err(ParseErrorKind::BadChar(c))),
            }
        };
        let tok = match c {
            '!' => {
                chars.next();
                Tok::Bang
            }
            '&' => two('&', Tok::AndAnd, &mut chars)?,
            '|' => two('|', Tok::OrOr, &mut chars)?,
            '-' => two('>', Tok::Arrow, &mut chars)?,
            '(' | ')' | '[' | ']' | ':' => {
                chars.next();
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    _ => Tok::Colon,
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_alphanumeric() && d != '_' {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                Tok::Number(text[start..end].to_string())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_alphanumeric() && d != '_' {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                match &text[start..end] {
                    "pre" => Tok::Pre,
                    "since" => Tok::Since,
                    "once" => Tok::Once,
                    "historically" => Tok::Historically,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    word => Tok::Ident(word.to_string()),
                }
            }
            other => return Err(err(ParseErrorKind::BadChar(other))),
        };
        let consumed = chars.peek().map_or(text.len(), |&(j, _)| j) - i;
        column += text[i..i + consumed].chars().count();
        out.push(Spanned {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.error_here(ParseErrorKind::Unexpected {
            expected,
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::OrOr {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.since()?;
        while *self.peek() == Tok::AndAnd {
            self.bump();
            lhs = Formula::and(lhs, self.since()?);
        }
        Ok(lhs)
    }

    fn since(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Since {
            self.bump();
            let bound = self.opt_bound()?;
            lhs = Formula::since(lhs, self.unary()?, bound);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Pre => {
                self.bump();
                Ok(Formula::previous(self.unary()?))
            }
            Tok::Once => {
                self.bump();
                let b = self.opt_bound()?;
                Ok(Formula::once(self.unary()?, b))
            }
            Tok::Historically => {
                self.bump();
                let b = self.opt_bound()?;
                Ok(Formula::historically(self.unary()?, b))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::truth())
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implies()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn number(&mut self) -> Result<Option<Time>, ParseError> {
        match self.peek().clone() {
            Tok::Number(text) => {
                let here = self.error_here(ParseErrorKind::Empty);
                self.bump();
                text.parse::<Time>().map(Some).map_err(|_| ParseError {
                    kind: ParseErrorKind::Bound(format!("`{text}` is not a time value")),
                    ..here
                })
            }
            Tok::Ident(text) => Err(self.error_here(ParseErrorKind::Bound(format!(
                "`{text}` is not a time value"
            )))),
            _ => Ok(None),
        }
    }

    fn opt_bound(&mut self) -> Result<TimeBound, ParseError> {
        if *self.peek() != Tok::LBracket {
            return Ok(TimeBound::UNTIMED);
        }
        let open = self.error_here(ParseErrorKind::Empty);
        self.bump();
        let lower = self.number()?.unwrap_or(0);
        self.expect(Tok::Colon, "`:` inside a bound")?;
        let upper = self.number()?;
        self.expect(Tok::RBracket, "`]`")?;
        TimeBound::new(lower, upper).map_err(|e| ParseError {
            kind: ParseErrorKind::Bound(e.to_string()),
            ..open
        })
    }
}

/// Parses one property and returns its normalized tree.
pub fn parse_spec(text: &str) -> Result<Formula, ParseError> {
    parse_raw(text).map(normalize)
}

/// Parses one property keeping `->` nodes.
pub fn parse_raw(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::Eof {
        return Err(p.error_here(ParseErrorKind::Empty));
    }
    let f = p.implies()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses and registers its atoms in `table`.
pub fn parse_spec_into(text: &str, table: &mut PredicateTable) -> Result<Formula, ParseError> {
    let f = parse_spec(text)?;
    table.register_formula(&f);
    Ok(f)
}

/// One property read from a specification file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecEntry {
    /// 1-based line in the file.
    pub line: usize,
    pub text: String,
    pub formula: Formula,
}

/// Parses a specification file: one property per line, `#` starts a comment.
/// Error positions refer to the file, not the line.
pub fn parse_spec_file(text: &str) -> Result<Vec<SpecEntry>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let formula = parse_spec(body).map_err(|e| ParseError { line: i + 1, ..e })?;
        out.push(SpecEntry {
            line: i + 1,
            text: body.trim().to_string(),
            formula,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn once_over_conjunction() {
        let f = parse_spec("once[0:10] (p && q)").unwrap();
        assert_eq!(
            f,
            Formula::once(Formula::and(atom("p"), atom("q")), TimeBound::bounded(0, 10))
        );
    }

    #[test]
    fn single_atom() {
        assert_eq!(parse_spec("p").unwrap(), atom("p"));
    }

    #[test]
    fn seven_subformula_example() {
        let f = parse_spec("historically[2:4](pre(r) && (p since[1:3] q))").unwrap();
        assert_eq!(f.size(), 7);
        let expected = Formula::historically(
            Formula::and(
                Formula::previous(atom("r")),
                Formula::since(atom("p"), atom("q"), TimeBound::bounded(1, 3)),
            ),
            TimeBound::bounded(2, 4),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn dangling_since_is_an_error() {
        let e = parse_spec("p since").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { .. }));
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_spec("   ").unwrap_err().kind, ParseErrorKind::Empty);
    }

    #[test]
    fn malformed_bounds() {
        let e = parse_spec("once[5:2] p").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Bound(_)));
        assert_eq!(e.column, 5);
        assert!(matches!(
            parse_spec("once[a:2] p").unwrap_err().kind,
            ParseErrorKind::Bound(_)
        ));
        assert!(matches!(
            parse_spec("once[1:99999999999999999999] p").unwrap_err().kind,
            ParseErrorKind::Bound(_)
        ));
    }

    #[test]
    fn bound_shorthands() {
        assert_eq!(
            parse_spec("once[:4] p").unwrap(),
            Formula::once(atom("p"), TimeBound::bounded(0, 4))
        );
        assert_eq!(
            parse_spec("once[3:] p").unwrap(),
            Formula::once(atom("p"), TimeBound::from_lower(3))
        );
        assert_eq!(
            parse_spec("once p").unwrap(),
            Formula::once(atom("p"), TimeBound::UNTIMED)
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // -> is right-associative and loosest
        assert_eq!(
            parse_raw("a -> b -> c").unwrap(),
            Formula::implies(atom("a"), Formula::implies(atom("b"), atom("c")))
        );
        // && binds tighter than ||
        assert_eq!(
            parse_raw("a || b && c").unwrap(),
            Formula::or(atom("a"), Formula::and(atom("b"), atom("c")))
        );
        // since binds tighter than &&, unary tighter than since
        assert_eq!(
            parse_raw("!p since r && q").unwrap(),
            Formula::and(
                Formula::since(Formula::not(atom("p")), atom("r"), TimeBound::UNTIMED),
                atom("q")
            )
        );
        assert_eq!(
            parse_raw("a || b || c").unwrap(),
            Formula::or(Formula::or(atom("a"), atom("b")), atom("c"))
        );
    }

    #[test]
    fn true_is_not_false() {
        assert_eq!(parse_spec("true").unwrap(), Formula::not(Formula::False));
    }

    #[test]
    fn implication_is_desugared() {
        let f = normalize(Formula::implies(atom("a"), atom("b")));
        assert_eq!(f, Formula::or(Formula::not(atom("a")), atom("b")));
        assert_eq!(normalize(atom("p")), atom("p"));
        let nested = Formula::implies(Formula::implies(atom("p"), atom("q")), atom("r"));
        assert_eq!(
            normalize(nested),
            Formula::or(
                Formula::not(Formula::or(Formula::not(atom("p")), atom("q"))),
                atom("r")
            )
        );
    }

    #[test]
    fn predicate_table_dedups() {
        let mut t = PredicateTable::new();
        parse_spec_into("p && q || p since p", &mut t).unwrap();
        parse_spec_into("r -> q", &mut t).unwrap();
        assert_eq!(t.names(), ["p", "q", "r"]);
        assert_eq!(t.position("r"), Some(2));
    }

    #[test]
    fn spec_file_lines_and_comments() {
        let text = "# header\n\np && q\n  # indented comment\nonce[0:3] r # trailing\n";
        let entries = parse_spec_file(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].line, 3);
        assert_eq!(entries[1].text, "once[0:3] r");
        let bad = parse_spec_file("p\nq\np &&\n").unwrap_err();
        assert_eq!(bad.line, 3);
    }

    #[test]
    fn lexer_rejects_stray_characters() {
        assert!(matches!(
            parse_spec("p & q").unwrap_err().kind,
            ParseErrorKind::BadChar('&')
        ));
        assert!(matches!(
            parse_spec("p $ q").unwrap_err().kind,
            ParseErrorKind::BadChar('$')
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn bound() -> impl Strategy<Value = TimeBound> {
            prop_oneof![
                Just(TimeBound::UNTIMED),
                (0u64..6, 0u64..6).prop_map(|(a, d)| TimeBound::bounded(a, a + d)),
                (1u64..6).prop_map(TimeBound::from_lower),
            ]
        }

        pub(super) fn formula() -> impl Strategy<Value = Formula> {
            let leaf = prop_oneof![
                Just(Formula::False),
                prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::atom),
            ];
            leaf.prop_recursive(5, 48, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(Formula::not),
                    inner.clone().prop_map(Formula::previous),
                    (inner.clone(), bound()).prop_map(|(f, b)| Formula::once(f, b)),
                    (inner.clone(), bound()).prop_map(|(f, b)| Formula::historically(f, b)),
                    (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                    (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                    (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
                    (inner.clone(), inner, bound()).prop_map(|(l, r, b)| Formula::since(l, r, b)),
                ]
            })
        }

        proptest! {
            #[test]
            fn print_then_parse_round_trips(f in formula()) {
                let n = normalize(f);
                let text = n.to_string();
                prop_assert_eq!(parse_spec(&text).unwrap(), n);
            }

            #[test]
            fn raw_round_trip_keeps_implication(f in formula()) {
                prop_assert_eq!(parse_raw(&f.to_string()).unwrap(), f);
            }

            #[test]
            fn normalize_is_idempotent(f in formula()) {
                let once = normalize(f);
                prop_assert!(once.is_normalized());
                prop_assert_eq!(normalize(once.clone()), once);
            }

            #[test]
            fn table_lists_each_atom_once(f in formula()) {
                let mut t = PredicateTable::new();
                t.register_formula(&f);
                let mut names = t.names().to_vec();
                let total = names.len();
                names.sort();
                names.dedup();
                prop_assert_eq!(names.len(), total);
                prop_assert_eq!(total, f.atoms().len());
            }
        }
    }
}
