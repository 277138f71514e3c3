//! Text form of rule programs.
//!
//! ```text
//! program   := { statement }
//! statement := fact | rule
//! fact      := head "=" interval "."
//! rule      := head "<-" "[" weight "]" body "."
//! head      := [ "~" ] atom                  (* "~" negates the head *)
//! body      := conjunct { "," conjunct }
//! conjunct  := atom | "not" atom | "neg" conjunct | guard
//! guard     := "(" atom cmp ( atom | interval ) ")"
//! cmp       := ("<=" | ">=") ("tp" | "kp" | "t" | "k")
//! atom      := ident [ "(" ident { "," ident } ")" ]
//! interval  := "[" number "," number "]" | number
//! weight    := interval
//! ```
//!
//! `%` comments run to end of line; whitespace is insignificant. A bare
//! number is the degenerate interval. Parsing is total: every input
//! yields a program or at least one positioned diagnostic, never a
//! silent partial result.

use crate::engine::{Atom, BodyExpr, Guard, GuardRelation, GuardRhs, Program, Rule};
use crate::interval::{Interval, OrderingKind};
use std::fmt;

/// A parse problem at a 1-based line/column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Ident(String),
    Number(f64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Period,
    Tilde,
    Equals,
    Arrow,
    Cmp(OrderingKind, GuardRelation),
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::Ident(s) => format!("identifier `{s}`"),
            TokKind::Number(n) => format!("number `{n}`"),
            TokKind::LBracket => "`[`".into(),
            TokKind::RBracket => "`]`".into(),
            TokKind::LParen => "`(`".into(),
            TokKind::RParen => "`)`".into(),
            TokKind::Comma => "`,`".into(),
            TokKind::Period => "`.`".into(),
            TokKind::Tilde => "`~`".into(),
            TokKind::Equals => "`=`".into(),
            TokKind::Arrow => "`<-`".into(),
            TokKind::Cmp(ord, rel) => format!("`{}{}`", rel.token(), ord.token()),
        }
    }
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.chars.next()?;
        if ch == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(ch)
    }

    fn run(mut self) -> (Vec<Tok>, Vec<Diagnostic>) {
        let mut toks = Vec::new();
        let mut diags = Vec::new();
        while let Some(&ch) = self.chars.peek() {
            let (line, col) = (self.line, self.col);
            if ch.is_whitespace() {
                self.bump();
                continue;
            }
            if ch == '%' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
                continue;
            }
            let tok = |kind| Tok { kind, line, col };
            match ch {
                '[' => {
                    self.bump();
                    toks.push(tok(TokKind::LBracket));
                }
                ']' => {
                    self.bump();
                    toks.push(tok(TokKind::RBracket));
                }
                '(' => {
                    self.bump();
                    toks.push(tok(TokKind::LParen));
                }
                ')' => {
                    self.bump();
                    toks.push(tok(TokKind::RParen));
                }
                ',' => {
                    self.bump();
                    toks.push(tok(TokKind::Comma));
                }
                '.' => {
                    self.bump();
                    toks.push(tok(TokKind::Period));
                }
                '~' => {
                    self.bump();
                    toks.push(tok(TokKind::Tilde));
                }
                '=' => {
                    self.bump();
                    toks.push(tok(TokKind::Equals));
                }
                '<' | '>' => {
                    self.bump();
                    if self.chars.peek() == Some(&'=') {
                        self.bump();
                        match self.comparator_suffix() {
                            Some(ord) => {
                                let rel = if ch == '<' {
                                    GuardRelation::Leq
                                } else {
                                    GuardRelation::Geq
                                };
                                toks.push(tok(TokKind::Cmp(ord, rel)));
                            }
                            None => diags.push(Diagnostic {
                                line,
                                col,
                                message: format!(
                                    "unknown comparator after `{ch}=` (expected tp, kp, t or k)"
                                ),
                            }),
                        }
                    } else if ch == '<' && self.chars.peek() == Some(&'-') {
                        self.bump();
                        toks.push(tok(TokKind::Arrow));
                    } else {
                        diags.push(Diagnostic {
                            line,
                            col,
                            message: format!("unexpected character `{ch}`"),
                        });
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut text = String::new();
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_digit()) {
                        text.push(self.bump().unwrap());
                    }
                    // A '.' is part of the number only when digits follow;
                    // otherwise it terminates the statement.
                    let mut lookahead = self.chars.clone();
                    if lookahead.next() == Some('.')
                        && matches!(lookahead.next(), Some(d) if d.is_ascii_digit())
                    {
                        text.push(self.bump().unwrap());
                        while matches!(self.chars.peek(), Some(d) if d.is_ascii_digit()) {
                            text.push(self.bump().unwrap());
                        }
                    }
                    match text.parse::<f64>() {
                        Ok(n) => toks.push(tok(TokKind::Number(n))),
                        Err(_) => diags.push(Diagnostic {
                            line,
                            col,
                            message: format!("malformed number `{text}`"),
                        }),
                    }
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut text = String::new();
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_alphanumeric() || *d == '_')
                    {
                        text.push(self.bump().unwrap());
                    }
                    toks.push(tok(TokKind::Ident(text)));
                }
                other => {
                    self.bump();
                    diags.push(Diagnostic {
                        line,
                        col,
                        message: format!("unexpected character `{other}`"),
                    });
                }
            }
        }
        (toks, diags)
    }

    fn comparator_suffix(&mut self) -> Option<OrderingKind> {
        let mut suffix = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_alphabetic()) {
            suffix.push(self.bump().unwrap());
        }
        suffix.parse::<OrderingKind>().ok()
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self
                .toks
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn error(&mut self, message: String) {
        let (line, col) = self.here();
        self.diags.push(Diagnostic { line, col, message });
    }

    fn expect(&mut self, kind: &TokKind, what: &str) -> Result<(), ()> {
        match self.peek() {
            Some(t) if t.kind == *kind => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let found = t.kind.describe();
                self.error(format!("expected {what}, found {found}"));
                Err(())
            }
            None => {
                self.error(format!("expected {what}, found end of input"));
                Err(())
            }
        }
    }

    /// Skip to just past the next statement terminator.
    fn synchronize(&mut self) {
        while let Some(tok) = self.next() {
            if tok.kind == TokKind::Period {
                break;
            }
        }
    }

    fn statement(&mut self) -> Result<Rule, ()> {
        let head_negated = if matches!(self.peek(), Some(t) if t.kind == TokKind::Tilde) {
            self.pos += 1;
            true
        } else {
            false
        };
        let head = self.atom()?;
        match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::Equals) => {
                self.pos += 1;
                let weight = self.interval()?;
                self.expect(&TokKind::Period, "`.`")?;
                Ok(Rule {
                    head,
                    head_negated,
                    body: BodyExpr::Conj(Vec::new()),
                    weight,
                })
            }
            Some(TokKind::Arrow) => {
                self.pos += 1;
                self.expect(&TokKind::LBracket, "`[` before the rule weight")?;
                let weight = self.interval()?;
                self.expect(&TokKind::RBracket, "`]` after the rule weight")?;
                let body = self.body()?;
                self.expect(&TokKind::Period, "`.`")?;
                Ok(Rule {
                    head,
                    head_negated,
                    body,
                    weight,
                })
            }
            _ => {
                self.error("expected `=` or `<-` after the head".into());
                Err(())
            }
        }
    }

    fn body(&mut self) -> Result<BodyExpr, ()> {
        let mut items = vec![self.conjunct()?];
        while matches!(self.peek(), Some(t) if t.kind == TokKind::Comma) {
            self.pos += 1;
            items.push(self.conjunct()?);
        }
        Ok(BodyExpr::Conj(items))
    }

    fn conjunct(&mut self) -> Result<BodyExpr, ()> {
        match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::Ident(word)) if word == "not" => {
                self.pos += 1;
                Ok(BodyExpr::Naf(self.atom()?))
            }
            Some(TokKind::Ident(word)) if word == "neg" => {
                self.pos += 1;
                Ok(BodyExpr::Neg(Box::new(self.conjunct()?)))
            }
            Some(TokKind::Ident(_)) => Ok(BodyExpr::Atom(self.atom()?)),
            Some(TokKind::LParen) => {
                self.pos += 1;
                let left = self.atom()?;
                let (ordering, relation) = match self.next() {
                    Some(Tok {
                        kind: TokKind::Cmp(ord, rel),
                        ..
                    }) => (ord, rel),
                    found => {
                        let found = found
                            .map(|t| t.kind.describe())
                            .unwrap_or_else(|| "end of input".into());
                        self.pos = self.pos.saturating_sub(1);
                        self.error(format!("expected a comparator in guard, found {found}"));
                        return Err(());
                    }
                };
                let right = match self.peek().map(|t| t.kind.clone()) {
                    Some(TokKind::LBracket) | Some(TokKind::Number(_)) => {
                        GuardRhs::Value(self.interval()?)
                    }
                    _ => GuardRhs::Atom(self.atom()?),
                };
                self.expect(&TokKind::RParen, "`)` closing the guard")?;
                Ok(BodyExpr::Guard(Guard {
                    ordering,
                    relation,
                    left,
                    right,
                }))
            }
            _ => {
                self.error("expected an atom, `not`, `neg` or a guard".into());
                Err(())
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ()> {
        let name = match self.next() {
            Some(Tok {
                kind: TokKind::Ident(name),
                ..
            }) => name,
            found => {
                let found = found
                    .map(|t| t.kind.describe())
                    .unwrap_or_else(|| "end of input".into());
                self.pos = self.pos.saturating_sub(1);
                self.error(format!("expected an atom, found {found}"));
                return Err(());
            }
        };
        let mut args = Vec::new();
        if matches!(self.peek(), Some(t) if t.kind == TokKind::LParen) {
            self.pos += 1;
            loop {
                match self.next() {
                    Some(Tok {
                        kind: TokKind::Ident(arg),
                        ..
                    }) => args.push(arg),
                    found => {
                        let found = found
                            .map(|t| t.kind.describe())
                            .unwrap_or_else(|| "end of input".into());
                        self.pos = self.pos.saturating_sub(1);
                        self.error(format!("expected a constant argument, found {found}"));
                        return Err(());
                    }
                }
                match self.peek().map(|t| t.kind.clone()) {
                    Some(TokKind::Comma) => {
                        self.pos += 1;
                    }
                    Some(TokKind::RParen) => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        self.error("expected `,` or `)` in the argument list".into());
                        return Err(());
                    }
                }
            }
        }
        Ok(Atom { name, args })
    }

    fn interval(&mut self) -> Result<Interval, ()> {
        let (line, col) = self.here();
        match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::LBracket) => {
                self.pos += 1;
                let lo = self.number()?;
                self.expect(&TokKind::Comma, "`,` between interval endpoints")?;
                let hi = self.number()?;
                self.expect(&TokKind::RBracket, "`]` closing the interval")?;
                Interval::new(lo, hi).map_err(|err| {
                    self.diags.push(Diagnostic {
                        line,
                        col,
                        message: err.to_string(),
                    });
                })
            }
            Some(TokKind::Number(v)) => {
                self.pos += 1;
                Interval::exact(v).map_err(|err| {
                    self.diags.push(Diagnostic {
                        line,
                        col,
                        message: err.to_string(),
                    });
                })
            }
            _ => {
                self.error("expected an interval".into());
                Err(())
            }
        }
    }

    fn number(&mut self) -> Result<f64, ()> {
        match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::Number(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => {
                self.error("expected a number".into());
                Err(())
            }
        }
    }
}

/// Parses a program, collecting a diagnostic per malformed statement.
pub fn parse_program(text: &str) -> Result<Program, Vec<Diagnostic>> {
    let (toks, mut diags) = Lexer::new(text).run();
    let mut parser = Parser {
        toks,
        pos: 0,
        diags: Vec::new(),
    };
    let mut rules = Vec::new();
    while parser.peek().is_some() {
        match parser.statement() {
            Ok(rule) => rules.push(rule),
            Err(()) => parser.synchronize(),
        }
    }
    diags.extend(parser.diags);
    if diags.is_empty() {
        Ok(Program::new(rules))
    } else {
        Err(diags)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.head_negated { "~" } else { "" };
        match &self.body {
            BodyExpr::Conj(items) if items.is_empty() => {
                write!(f, "{tilde}{} = {}.", self.head, self.weight)
            }
            body => write!(f, "{tilde}{} <- [{}] {body}.", self.head, self.weight),
        }
    }
}

impl fmt::Display for BodyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyExpr::Atom(atom) => write!(f, "{atom}"),
            BodyExpr::Conj(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{item}")?;
                }
                Ok(())
            }
            BodyExpr::Neg(inner) => write!(f, "neg {inner}"),
            BodyExpr::Guard(guard) => write!(f, "{guard}"),
            BodyExpr::Naf(atom) => write!(f, "not {atom}"),
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {}{} ",
            self.left,
            self.relation.token(),
            self.ordering.token()
        )?;
        match &self.right {
            GuardRhs::Atom(atom) => write!(f, "{atom})"),
            GuardRhs::Value(value) => write!(f, "{value})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{GuardRelation, GuardRhs};

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn parses_weighted_rule() {
        let program = parse_program("equal(a,b) <- [[0.5,1]] appear_similar(a,b).").unwrap();
        assert_eq!(program.rules.len(), 1);
        let rule = &program.rules[0];
        assert_eq!(rule.head, Atom::with_args("equal", &["a", "b"]));
        assert!(!rule.head_negated);
        assert_eq!(rule.weight, iv(0.5, 1.0));
        assert_eq!(
            rule.body,
            BodyExpr::Conj(vec![BodyExpr::Atom(Atom::with_args(
                "appear_similar",
                &["a", "b"]
            ))])
        );
    }

    #[test]
    fn parses_guard_rule() {
        let program = parse_program("dr1 <- [[1,1]] (di2 <=tp di1).").unwrap();
        let rule = &program.rules[0];
        match &rule.body {
            BodyExpr::Conj(items) => match &items[0] {
                BodyExpr::Guard(g) => {
                    assert_eq!(g.ordering, OrderingKind::TruthPre);
                    assert_eq!(g.relation, GuardRelation::Leq);
                    assert_eq!(g.left, Atom::named("di2"));
                    assert_eq!(g.right, GuardRhs::Atom(Atom::named("di1")));
                }
                other => panic!("expected guard, got {other:?}"),
            },
            other => panic!("expected conjunction, got {other:?}"),
        }
    }

    #[test]
    fn parses_guard_against_interval_with_geq() {
        let program = parse_program("snow <- [[0.8,1]] (cold >=t [0.5,0.5]), wet.").unwrap();
        let rule = &program.rules[0];
        match &rule.body {
            BodyExpr::Conj(items) => {
                assert_eq!(items.len(), 2);
                match &items[0] {
                    BodyExpr::Guard(g) => {
                        assert_eq!(g.ordering, OrderingKind::TruthBilattice);
                        assert_eq!(g.relation, GuardRelation::Geq);
                        assert_eq!(g.right, GuardRhs::Value(iv(0.5, 0.5)));
                    }
                    other => panic!("expected guard, got {other:?}"),
                }
            }
            other => panic!("expected conjunction, got {other:?}"),
        }
    }

    #[test]
    fn parses_fact_and_negated_head() {
        let program = parse_program("cold = [0.6,0.6].\n~fly <- [[1,1]] penguin.").unwrap();
        assert_eq!(
            program.rules[0],
            Rule::fact(Atom::named("cold"), iv(0.6, 0.6))
        );
        assert!(program.rules[1].head_negated);
    }

    #[test]
    fn bare_numbers_desugar_to_points() {
        let program = parse_program("p = 0.4.\nq <- [0.7] p.").unwrap();
        assert_eq!(program.rules[0].weight, iv(0.4, 0.4));
        assert_eq!(program.rules[1].weight, iv(0.7, 0.7));
    }

    #[test]
    fn parses_naf_neg_and_comments() {
        let text = "% drug exclusivity\ndr1 <- [[1,1]] di1, not dr2, neg miss.\n";
        let program = parse_program(text).unwrap();
        match &program.rules[0].body {
            BodyExpr::Conj(items) => {
                assert_eq!(items.len(), 3);
                assert_eq!(items[1], BodyExpr::Naf(Atom::named("dr2")));
                assert_eq!(items[2], BodyExpr::Neg(Box::new(BodyExpr::atom("miss"))));
            }
            other => panic!("expected conjunction, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_an_empty_program() {
        assert_eq!(parse_program("").unwrap(), Program::default());
        assert_eq!(
            parse_program("  % only a comment\n").unwrap(),
            Program::default()
        );
    }

    #[test]
    fn missing_period_is_positioned() {
        let text = "cold = [0.6,0.6].\nwet = [0.4,0.4]\nsnow = [0.1,0.2].";
        let diags = parse_program(text).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!((diags[0].line, diags[0].col), (3, 1));
        assert!(diags[0].message.contains("expected `.`"), "{}", diags[0]);
    }

    #[test]
    fn unknown_comparator_is_reported() {
        let diags = parse_program("dr1 <- [[1,1]] (di2 <=x di1).").unwrap_err();
        assert!(diags
            .iter()
            .any(|d| d.message.contains("unknown comparator") && d.line == 1 && d.col == 21));
    }

    #[test]
    fn inverted_interval_is_reported_at_the_bracket() {
        let diags = parse_program("p = [0.8,0.4].").unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!((diags[0].line, diags[0].col), (1, 5));
        assert!(diags[0].message.contains("inverted"));
    }

    #[test]
    fn recovery_collects_multiple_diagnostics() {
        let text = "p = [0.8,0.4].\nq = oops.\nr = [0.1,0.2].";
        let diags = parse_program(text).unwrap_err();
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].line, 1);
        assert_eq!(diags[1].line, 2);
    }

    #[test]
    fn serialisation_round_trips() {
        let text = "\
cold = [0.6,0.6].
~equal(a,b) <- [[0.9,1]] distinct(a,b).
snow <- [[0.8,1]] (cold >=t [0.5,0.5]), wet.
dr1 <- [[1,1]] di1, not dr2, neg (di1 <=kp di2).
";
        let program = parse_program(text).unwrap();
        let printed = program.to_string();
        let reparsed = parse_program(&printed).unwrap();
        assert_eq!(program, reparsed);
    }
}
