use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error;
use crate::preference::{
    approval_ballot, AltSet, Alternative, BallotKind, PartialOrder, Profile, Universe, VoterId,
};

/// A ballot file failed to parse. Positions are 1-based; columns count
/// characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}, column {column}: unknown alternative `{label}`")]
    UnknownLabel {
        line: usize,
        column: usize,
        label: String,
    },

    #[error("line {line}, column {column}: preference of voter {voter} is cyclic")]
    Cycle {
        line: usize,
        column: usize,
        voter: VoterId,
    },

    #[error("line {line}, column {column}: voter {voter} already appeared on line {first_line}")]
    DuplicateVoter {
        line: usize,
        column: usize,
        voter: VoterId,
        first_line: usize,
    },

    #[error("line {line}, column {column}: voter {voter} must approve a nonempty proper subset of the alternatives")]
    DegenerateApproval {
        line: usize,
        column: usize,
        voter: VoterId,
    },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownLabel { line, .. }
            | ParseError::Cycle { line, .. }
            | ParseError::DuplicateVoter { line, .. }
            | ParseError::DegenerateApproval { line, .. } => *line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. }
            | ParseError::UnknownLabel { column, .. }
            | ParseError::Cycle { column, .. }
            | ParseError::DuplicateVoter { column, .. }
            | ParseError::DegenerateApproval { column, .. } => *column,
        }
    }
}

/// Where a voter's line sits in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    /// Column of the ballot's first character, or just past the colon when empty.
    pub column: usize,
}

/// A parsed ballot file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallotDocument {
    pub universe: Universe,
    pub profile: Profile,
    /// One span per voter, in profile order.
    pub spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    Comma,
    Gt,
    Open,
    Close,
}

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let mut out = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some((i, c)) = chars.next() {
        let column = i + 1;
        let tok = match c {
            '#' => break,
            c if c.is_whitespace() => continue,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '>' => Tok::Gt,
            '{' => Tok::Open,
            '}' => Tok::Close,
            _ => {
                let mut word = c.to_string();
                while let Some(&(_, next)) = chars.peek() {
                    if next.is_whitespace() || ":,>{}#".contains(next) {
                        break;
                    }
                    word.push(next);
                    chars.next();
                }
                Tok::Word(word)
            }
        };
        out.push((tok, column));
    }
    out
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Word(w), c)) => {
                self.pos += 1;
                Ok((w.clone(), *c))
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }
}

fn resolve(
    universe: &Universe,
    label: &str,
    line: usize,
    column: usize,
) -> Result<usize, ParseError> {
    universe
        .find(label)
        .map(|a| a.index())
        .ok_or_else(|| ParseError::UnknownLabel {
            line,
            column,
            label: label.to_string(),
        })
}

fn parse_ballot(
    cur: &mut Cursor<'_>,
    universe: &Universe,
    voter: VoterId,
) -> Result<PartialOrder, ParseError> {
    let m = universe.m();
    let line = cur.line;
    let start = cur.column();
    let keyword = match (cur.toks.get(cur.pos), cur.toks.get(cur.pos + 1)) {
        (Some((Tok::Word(w), _)), Some((Tok::Open, _))) if w == "approve" => Some("approve"),
        (Some((Tok::Word(w), _)), Some((Tok::Word(_), _))) if w == "linear" => Some("linear"),
        _ => None,
    };
    let cycle = |_: Error| ParseError::Cycle {
        line,
        column: start,
        voter,
    };

    match keyword {
        Some("approve") => {
            cur.pos += 2;
            let mut approved = AltSet::EMPTY;
            if cur.peek() != Some(&Tok::Close) {
                loop {
                    let (label, column) = cur.word("an alternative")?;
                    approved.insert(Alternative(resolve(universe, &label, line, column)? as u8));
                    if cur.peek() == Some(&Tok::Comma) {
                        cur.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            cur.expect(Tok::Close, "`}`")?;
            approval_ballot(approved, m).map_err(|_| ParseError::DegenerateApproval {
                line,
                column: start,
                voter,
            })
        }
        Some(_) => {
            cur.pos += 1;
            let mut chain = Vec::new();
            loop {
                let (label, column) = cur.word("an alternative")?;
                let a = resolve(universe, &label, line, column)?;
                if chain.contains(&a) {
                    return Err(ParseError::Syntax {
                        line,
                        column,
                        message: format!("`{label}` appears twice in a linear ballot"),
                    });
                }
                chain.push(a);
                if cur.peek() == Some(&Tok::Gt) {
                    cur.pos += 1;
                } else {
                    break;
                }
            }
            if chain.len() != m {
                return Err(ParseError::Syntax {
                    line,
                    column: start,
                    message: format!("a linear ballot must rank all {m} alternatives"),
                });
            }
            PartialOrder::from_edges(m, chain.windows(2).map(|w| (w[0], w[1]))).map_err(cycle)
        }
        None => {
            let mut edges = Vec::new();
            if !cur.at_end() {
                loop {
                    let (x, cx) = cur.word("an alternative")?;
                    let x = resolve(universe, &x, line, cx)?;
                    cur.expect(Tok::Gt, "`>`")?;
                    let (y, cy) = cur.word("an alternative")?;
                    let y = resolve(universe, &y, line, cy)?;
                    if x == y {
                        return Err(ParseError::Cycle {
                            line,
                            column: cx,
                            voter,
                        });
                    }
                    edges.push((x, y));
                    if cur.peek() == Some(&Tok::Comma) {
                        cur.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            PartialOrder::from_edges(m, edges).map_err(cycle)
        }
    }
}

/// Parses a ballot file.
///
/// ```text
/// # comment
/// alternatives: a b c
/// voter 1: a > b, b > c
/// voter 2: approve {a, b}
/// voter 3: linear c > a > b
/// ```
pub fn parse_ballots(text: &str) -> Result<BallotDocument, ParseError> {
    let mut universe: Option<Universe> = None;
    let mut voters = Vec::new();
    let mut spans = Vec::new();
    let mut seen: BTreeMap<VoterId, usize> = BTreeMap::new();
    let mut last_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let toks = lex(raw);
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            toks: &toks,
            pos: 0,
            line,
            end_column: raw.chars().count() + 1,
        };
        let (head, head_column) = cur.word("`alternatives:` or `voter`")?;
        match (head.as_str(), &universe) {
            ("alternatives", None) => {
                cur.expect(Tok::Colon, "`:`")?;
                let mut labels = Vec::new();
                while !cur.at_end() {
                    let (label, column) = cur.word("an alternative label")?;
                    if labels.contains(&label) {
                        return Err(ParseError::Syntax {
                            line,
                            column,
                            message: format!("alternative `{label}` is listed twice"),
                        });
                    }
                    labels.push(label);
                }
                if labels.is_empty() {
                    return Err(cur.error("at least one alternative is required"));
                }
                universe = Some(Universe::new(labels).map_err(|e| ParseError::Syntax {
                    line,
                    column: head_column,
                    message: e.to_string(),
                })?);
            }
            ("alternatives", Some(_)) => {
                return Err(ParseError::Syntax {
                    line,
                    column: head_column,
                    message: "the alternatives header appears twice".into(),
                })
            }
            ("voter", Some(u)) => {
                let (id_text, id_column) = cur.word("a voter id")?;
                let id = match id_text.parse::<u32>() {
                    Ok(0) | Err(_) => {
                        return Err(ParseError::Syntax {
                            line,
                            column: id_column,
                            message: format!(
                                "voter id must be a positive integer, found `{id_text}`"
                            ),
                        })
                    }
                    Ok(id) => VoterId(id),
                };
                if let Some(&first_line) = seen.get(&id) {
                    return Err(ParseError::DuplicateVoter {
                        line,
                        column: id_column,
                        voter: id,
                        first_line,
                    });
                }
                seen.insert(id, line);
                cur.expect(Tok::Colon, "`:`")?;
                let column = cur.column();
                let order = parse_ballot(&mut cur, u, id)?;
                if !cur.at_end() {
                    return Err(cur.error("unexpected input after the ballot"));
                }
                voters.push((id, order));
                spans.push(Span { line, column });
            }
            ("voter", None) => {
                return Err(ParseError::Syntax {
                    line,
                    column: head_column,
                    message: "the alternatives header must come before any voter".into(),
                })
            }
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    column: head_column,
                    message: format!("expected `alternatives:` or `voter`, found `{head}`"),
                })
            }
        }
    }

    let at_end = |message: &str| ParseError::Syntax {
        line: last_line.max(1),
        column: 1,
        message: message.into(),
    };
    let universe = universe.ok_or_else(|| at_end("missing `alternatives:` header"))?;
    if voters.is_empty() {
        return Err(at_end("a profile needs at least one voter"));
    }
    let profile = Profile::new(voters).map_err(|e| at_end(&e.to_string()))?;
    Ok(BallotDocument {
        universe,
        profile,
        spans,
    })
}

/// One ballot in file syntax: `linear` for linear orders, `approve` when every
/// top alternative beats every other one, otherwise the edges of the Hasse
/// diagram. An approval ballot whose top does not beat the whole bottom is
/// written as edges, since `approve` would add the missing pairs.
pub fn format_ballot(universe: &Universe, order: &PartialOrder) -> String {
    let label = |i: usize| universe.labels()[i].as_str();
    match order.ballot_kind() {
        BallotKind::Linear => {
            let mut ranked: Vec<usize> = (0..order.m()).collect();
            ranked.sort_by_key(|&a| std::cmp::Reverse(order.below(Alternative(a as u8)).len()));
            format!(
                "linear {}",
                ranked
                    .into_iter()
                    .map(label)
                    .collect::<Vec<_>>()
                    .join(" > ")
            )
        }
        BallotKind::Approval if approval_ballot(order.top(), order.m()).ok() == Some(*order) => {
            format!(
                "approve {{{}}}",
                universe.set_labels(order.top()).join(", ")
            )
        }
        BallotKind::Approval | BallotKind::General => order
            .reduction()
            .into_iter()
            .map(|(x, y)| format!("{} > {}", label(x), label(y)))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

/// Renders a profile as a ballot file that [`parse_ballots`] reads back to
/// the same profile.
pub fn format_ballots(universe: &Universe, profile: &Profile) -> String {
    let mut out = format!("alternatives: {}\n", universe.labels().join(" "));
    for (id, order) in profile.voters() {
        let ballot = format_ballot(universe, order);
        if ballot.is_empty() {
            let _ = writeln!(out, "voter {id}:");
        } else {
            let _ = writeln!(out, "voter {id}: {ballot}");
        }
    }
    out
}
