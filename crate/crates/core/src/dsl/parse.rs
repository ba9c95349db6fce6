//! Recursive-descent parsers for model files and query statements.
//!
//! Models are parsed line by line; names are resolved eagerly so an unknown
//! or duplicate name is reported at its use site. Structural validation that
//! needs the whole space (novelty, atom resolution, coverage) happens later,
//! in [`super::elaborate`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::{
    CauseDecl, CondLiteral, ConditionAst, EventDecl, ExprAst, LitAst, ModelAst, Pos, QueryAst,
};
use super::lex::{Tok, Token, lex};
use super::{ErrorClass, SourceError};
use crate::rational::{Rational, parse_decimal};

struct Parser<'a> {
    tokens: &'a [Token],
    index: usize,
    /// Position just past the final token, for end-of-input diagnostics.
    end: Pos,
}

fn token_width(tok: &Tok) -> usize {
    match tok {
        Tok::Ident(s) | Tok::Number(s) => s.chars().count(),
        _ => 1,
    }
}

fn past_last(tokens: &[Token], fallback: Pos) -> Pos {
    match tokens.last() {
        Some(t) => Pos {
            line: t.pos.line,
            col: t.pos.col + token_width(&t.tok),
        },
        None => fallback,
    }
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token], end: Pos) -> Self {
        Parser {
            tokens,
            index: 0,
            end,
        }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.index)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let token = self.tokens.get(self.index);
        if token.is_some() {
            self.index += 1;
        }
        token
    }

    fn here(&self) -> Pos {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn parse_error(&self, message: impl Into<String>) -> SourceError {
        SourceError::new(ErrorClass::Parse, self.here(), message)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => t.tok.describe(),
            None => "end of input".into(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.index += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Pos, SourceError> {
        if let Some(t) = self.peek()
            && t.tok == tok
        {
            self.index += 1;
            return Ok(t.pos);
        }
        Err(self.parse_error(format!("expected {what}, found {}", self.found())))
    }

    fn expect_ident(&mut self, what: &str) -> Result<(&'a str, Pos), SourceError> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(name),
                pos,
            }) => {
                self.index += 1;
                Ok((name, *pos))
            }
            _ => Err(self.parse_error(format!("expected {what}, found {}", self.found()))),
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<Pos, SourceError> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(name),
                pos,
            }) if name == keyword => {
                self.index += 1;
                Ok(*pos)
            }
            _ => Err(self.parse_error(format!("expected `{keyword}`, found {}", self.found()))),
        }
    }

    fn expect_number(&mut self, what: &str) -> Result<(&'a str, Pos), SourceError> {
        match self.peek() {
            Some(Token {
                tok: Tok::Number(text),
                pos,
            }) => {
                self.index += 1;
                Ok((text, *pos))
            }
            _ => Err(self.parse_error(format!("expected {what}, found {}", self.found()))),
        }
    }

    fn expect_usize(&mut self, what: &str) -> Result<(usize, Pos), SourceError> {
        let (text, pos) = self.expect_number(what)?;
        if text.contains('.') {
            return Err(SourceError::new(
                ErrorClass::Parse,
                pos,
                format!("expected an integer, found `{text}`"),
            ));
        }
        let value = text.parse().map_err(|_| {
            SourceError::new(
                ErrorClass::Parse,
                pos,
                format!("integer `{text}` is too large"),
            )
        })?;
        Ok((value, pos))
    }

    /// `<int>/<int>` or a decimal literal, parsed exactly.
    fn rational_value(&mut self) -> Result<Rational, SourceError> {
        let (text, pos) = self.expect_number("a probability")?;
        if self.eat(&Tok::Slash) {
            let (denom_text, denom_pos) = self.expect_number("a denominator")?;
            if text.contains('.') || denom_text.contains('.') {
                return Err(SourceError::new(
                    ErrorClass::Parse,
                    pos,
                    "fraction parts must be integers",
                ));
            }
            let numer: BigInt = text.parse().expect("digit run");
            let denom: BigInt = denom_text.parse().expect("digit run");
            if denom.is_zero() {
                return Err(SourceError::new(
                    ErrorClass::Validate,
                    denom_pos,
                    "denominator must be non-zero",
                ));
            }
            Ok(Rational::new(numer, denom))
        } else {
            parse_decimal(text).ok_or_else(|| {
                SourceError::new(ErrorClass::Parse, pos, format!("malformed number `{text}`"))
            })
        }
    }

    fn expect_end(&self) -> Result<(), SourceError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(SourceError::new(
                ErrorClass::Parse,
                t.pos,
                format!("unexpected {} after a complete statement", t.tok.describe()),
            )),
        }
    }

    /// `[~] NAME`.
    fn literal(&mut self) -> Result<LitAst, SourceError> {
        let start = self.here();
        let negated = self.eat(&Tok::Tilde);
        let (name, pos) = self.expect_ident("an event name")?;
        Ok(LitAst {
            negated,
            name: name.to_owned(),
            pos: if negated { start } else { pos },
        })
    }

    /// Top-level expression: `&`-conjunctions of unary terms. A bare `|`
    /// would be ambiguous with the conditioning bar, so unions are only
    /// admitted inside parentheses.
    fn expr(&mut self) -> Result<ExprAst, SourceError> {
        let mut left = self.unary()?;
        while self.eat(&Tok::Amp) {
            let right = self.unary()?;
            left = ExprAst::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn or_expr(&mut self) -> Result<ExprAst, SourceError> {
        let mut left = self.expr()?;
        while self.eat(&Tok::Pipe) {
            let right = self.expr()?;
            left = ExprAst::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ExprAst, SourceError> {
        if self.eat(&Tok::Tilde) {
            Ok(ExprAst::Not(Box::new(self.unary()?)))
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<ExprAst, SourceError> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(name),
                pos,
            }) => {
                self.index += 1;
                Ok(ExprAst::Name {
                    name: name.clone(),
                    pos: *pos,
                })
            }
            Some(Token {
                tok: Tok::LBrace,
                pos,
            }) => {
                let pos = *pos;
                self.index += 1;
                let mut members = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        let (member, _) = self.expect_usize("an outcome index")?;
                        members.push(member);
                        if self.eat(&Tok::Comma) {
                            continue;
                        }
                        self.expect(Tok::RBrace, "`}`")?;
                        break;
                    }
                }
                members.sort_unstable();
                members.dedup();
                Ok(ExprAst::Set { members, pos })
            }
            Some(Token {
                tok: Tok::LParen, ..
            }) => {
                self.index += 1;
                let inner = self.or_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.parse_error(format!(
                "expected an event name, `{{`, `(`, or `~`, found {}",
                self.found()
            ))),
        }
    }

    /// True iff the next tokens are `do (` — the interventional form.
    fn at_do_call(&self) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(name), .. }) if name == "do")
            && matches!(
                self.tokens.get(self.index + 1),
                Some(Token {
                    tok: Tok::LParen,
                    ..
                })
            )
    }
}

/// Parses a model file into its syntax tree. Outcome indices are range
/// checked against the declared size, names are resolved (events must be
/// declared before use), and set members are canonicalized, so a returned
/// tree is self-consistent even though the causal structure is not yet
/// validated.
pub fn parse_model(text: &str) -> Result<ModelAst, SourceError> {
    let (tokens, _) = lex(text)?;
    let mut outcomes: Option<(usize, Pos)> = None;
    let mut events: Vec<EventDecl> = Vec::new();
    let mut causes: Vec<CauseDecl> = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();

    for line in tokens.chunk_by(|a, b| a.pos.line == b.pos.line) {
        let mut p = Parser::new(line, past_last(line, Pos { line: 1, col: 1 }));
        let (keyword, pos) = p.expect_ident("a statement keyword")?;
        match keyword {
            "outcomes" => {
                if outcomes.is_some() {
                    return Err(SourceError::new(
                        ErrorClass::Parse,
                        pos,
                        "duplicate `outcomes` declaration",
                    ));
                }
                let (size, _) = p.expect_usize("the number of outcomes")?;
                outcomes = Some((size, pos));
            }
            "event" => {
                let Some((size, _)) = outcomes else {
                    return Err(SourceError::new(
                        ErrorClass::Parse,
                        pos,
                        "`event` must follow the `outcomes` declaration",
                    ));
                };
                let (name, name_pos) = p.expect_ident("an event name")?;
                if names.contains_key(name) {
                    return Err(SourceError::new(
                        ErrorClass::Resolve,
                        name_pos,
                        format!("duplicate event name `{name}`"),
                    ));
                }
                p.expect(Tok::Eq, "`=`")?;
                p.expect(Tok::LBrace, "`{`")?;
                let mut members = Vec::new();
                if !p.eat(&Tok::RBrace) {
                    loop {
                        let (member, member_pos) = p.expect_usize("an outcome index")?;
                        if member >= size {
                            return Err(SourceError::new(
                                ErrorClass::Validate,
                                member_pos,
                                format!("outcome {member} out of range for {size} outcomes"),
                            ));
                        }
                        members.push(member);
                        if p.eat(&Tok::Comma) {
                            continue;
                        }
                        p.expect(Tok::RBrace, "`}`")?;
                        break;
                    }
                }
                members.sort_unstable();
                members.dedup();
                names.insert(name.to_owned(), events.len() + 1);
                events.push(EventDecl {
                    name: name.to_owned(),
                    members,
                    pos,
                });
            }
            "cause" => {
                p.expect_keyword("P")?;
                p.expect(Tok::LParen, "`(`")?;
                let (target, target_pos) = p.expect_ident("an event name")?;
                if !names.contains_key(target) {
                    return Err(SourceError::new(
                        ErrorClass::Resolve,
                        target_pos,
                        format!("unknown event name `{target}`"),
                    ));
                }
                p.expect(Tok::Pipe, "`|`")?;
                let condition = if p.eat(&Tok::Star) {
                    ConditionAst::Star
                } else {
                    let mut literals = Vec::new();
                    loop {
                        let negated = p.eat(&Tok::Tilde);
                        let (name, name_pos) = p.expect_ident("an event name")?;
                        if !names.contains_key(name) {
                            return Err(SourceError::new(
                                ErrorClass::Resolve,
                                name_pos,
                                format!("unknown event name `{name}`"),
                            ));
                        }
                        literals.push(CondLiteral {
                            negated,
                            name: name.to_owned(),
                        });
                        if !p.eat(&Tok::Amp) {
                            break;
                        }
                    }
                    ConditionAst::All(literals)
                };
                p.expect(Tok::RParen, "`)`")?;
                p.expect(Tok::Eq, "`=`")?;
                let value = p.rational_value()?;
                causes.push(CauseDecl {
                    target: target.to_owned(),
                    condition,
                    value,
                    pos,
                });
            }
            other => {
                return Err(SourceError::new(
                    ErrorClass::Parse,
                    pos,
                    format!("expected `outcomes`, `event`, or `cause`, found `{other}`"),
                ));
            }
        }
        p.expect_end()?;
    }

    let (outcomes, outcomes_pos) = outcomes.ok_or_else(|| {
        SourceError::new(
            ErrorClass::Parse,
            Pos { line: 1, col: 1 },
            "missing `outcomes` declaration",
        )
    })?;
    Ok(ModelAst {
        outcomes,
        outcomes_pos,
        events,
        causes,
    })
}

/// Parses one query statement.
pub fn parse_query(text: &str) -> Result<QueryAst, SourceError> {
    let (tokens, end) = lex(text)?;
    let mut p = Parser::new(&tokens, end);
    let (keyword, keyword_pos) = p.expect_ident("a query keyword")?;
    let query = match keyword {
        "truth" => {
            let target = p.expr()?;
            p.expect(Tok::Pipe, "`|`")?;
            let condition = p.expr()?;
            QueryAst::Truth { target, condition }
        }
        "belief" => {
            let target = p.expr()?;
            if p.eat(&Tok::Pipe) {
                if p.at_do_call() {
                    p.advance();
                    p.expect(Tok::LParen, "`(`")?;
                    let mut interventions = Vec::new();
                    loop {
                        interventions.push(p.literal()?);
                        if !p.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    p.expect(Tok::RParen, "`)`")?;
                    let given = if p.eat(&Tok::Comma) {
                        Some(p.expr()?)
                    } else {
                        None
                    };
                    QueryAst::BeliefDo {
                        target,
                        interventions,
                        given,
                    }
                } else {
                    QueryAst::Belief {
                        target,
                        condition: Some(p.expr()?),
                    }
                }
            } else {
                QueryAst::Belief {
                    target,
                    condition: None,
                }
            }
        }
        "bayes" => {
            let mut hypotheses = vec![p.literal()?];
            while p.eat(&Tok::Comma) {
                hypotheses.push(p.literal()?);
            }
            p.expect_keyword("given")?;
            let mut data = vec![p.expr()?];
            while p.eat(&Tok::Semi) {
                data.push(p.expr()?);
            }
            QueryAst::Bayes { hypotheses, data }
        }
        other => {
            return Err(SourceError::new(
                ErrorClass::Parse,
                keyword_pos,
                format!("unknown query form `{other}` (expected `truth`, `belief`, or `bayes`)"),
            ));
        }
    };
    p.expect_end()?;
    Ok(query)
}
