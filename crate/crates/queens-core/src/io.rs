//! Plain-text composition files.
//!
//! The format is whitespace-delimited ASCII decimal, UTF-8 without a BOM.
//! The first token is the board size `n`; every following token is a row
//! entry in `0..=n` (`0` = empty row). A single-composition file carries
//! exactly `n` entries. A multi-composition file carries any positive
//! multiple of `n` entries, `n` per composition; the writer puts one
//! composition per line for readability, but readers only care about token
//! order, so line layout is free.
//!
//! Entries outside `0..=n` are a parse error here, before validation ever
//! runs: a file that cannot produce a well-formed [`Composition`] is
//! malformed input, which callers treat as a distinct failure class from a
//! composition whose queens attack each other.

use std::fmt;

use crate::composition::Composition;

/// Position-annotated parse failure. `line` and `col` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Input held no tokens at all.
    MissingBoardSize,
    /// A token was not an unsigned decimal integer.
    InvalidToken { token: String },
    /// The declared board size was `0`.
    BoardSizeZero,
    /// A row entry exceeded the board size.
    EntryOutOfRange { row: usize, value: usize, bound: usize },
    /// A single-composition input did not carry exactly `expected` entries.
    WrongEntryCount { expected: usize, found: usize },
    /// A multi-composition input ended mid-composition.
    IncompleteComposition { n: usize, leftover: usize },
    /// A multi-composition input declared a size but carried no entries.
    EmptyBody,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::MissingBoardSize => write!(f, "missing board size"),
            ParseErrorKind::InvalidToken { token } => {
                write!(f, "token {token:?} is not an unsigned integer")
            }
            ParseErrorKind::BoardSizeZero => write!(f, "board size must be at least 1"),
            ParseErrorKind::EntryOutOfRange { row, value, bound } => {
                write!(f, "row {row} entry {value} is outside 0..={bound}")
            }
            ParseErrorKind::WrongEntryCount { expected, found } => {
                write!(f, "expected exactly {expected} row entries, found {found}")
            }
            ParseErrorKind::IncompleteComposition { n, leftover } => {
                write!(
                    f,
                    "entry count is not a multiple of the board size {n} ({leftover} left over)"
                )
            }
            ParseErrorKind::EmptyBody => write!(f, "no row entries after the board size"),
        }
    }
}

impl std::error::Error for ParseError {}

/// A token with the position of its first character.
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

/// Splits on whitespace, tracking 1-based line/column. Returns the token
/// list and the position just past the end of input (for errors that point
/// at "here the input stopped").
fn tokenize(input: &str) -> (Vec<Token<'_>>, (usize, usize)) {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut start: Option<(usize, usize, usize)> = None; // (byte, line, col)
    for (byte, ch) in input.char_indices() {
        if ch.is_whitespace() {
            if let Some((s, tl, tc)) = start.take() {
                tokens.push(Token {
                    text: &input[s..byte],
                    line: tl,
                    col: tc,
                });
            }
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        } else {
            if start.is_none() {
                start = Some((byte, line, col));
            }
            col += 1;
        }
    }
    if let Some((s, tl, tc)) = start {
        tokens.push(Token {
            text: &input[s..],
            line: tl,
            col: tc,
        });
    }
    (tokens, (line, col))
}

fn parse_unsigned(tok: &Token<'_>) -> Result<usize, ParseError> {
    tok.text.parse::<usize>().map_err(|_| ParseError {
        line: tok.line,
        col: tok.col,
        kind: ParseErrorKind::InvalidToken {
            token: tok.text.to_string(),
        },
    })
}

/// Parses the board size and row entries shared by both readers.
fn parse_header_and_entries(
    input: &str,
) -> Result<(usize, Vec<usize>, (usize, usize)), ParseError> {
    let (tokens, end) = tokenize(input);
    let Some(first) = tokens.first() else {
        return Err(ParseError {
            line: end.0,
            col: end.1,
            kind: ParseErrorKind::MissingBoardSize,
        });
    };
    let n = parse_unsigned(first)?;
    if n == 0 {
        return Err(ParseError {
            line: first.line,
            col: first.col,
            kind: ParseErrorKind::BoardSizeZero,
        });
    }
    let mut entries = Vec::with_capacity(tokens.len() - 1);
    for (idx, tok) in tokens[1..].iter().enumerate() {
        let value = parse_unsigned(tok)?;
        if value > n {
            return Err(ParseError {
                line: tok.line,
                col: tok.col,
                kind: ParseErrorKind::EntryOutOfRange {
                    row: idx % n + 1,
                    value,
                    bound: n,
                },
            });
        }
        entries.push(value);
    }
    Ok((n, entries, end))
}

/// Reads a single composition: board size, then exactly `n` entries.
pub fn read_composition(input: &str) -> Result<Composition, ParseError> {
    let (n, entries, end) = parse_header_and_entries(input)?;
    if entries.len() != n {
        return Err(ParseError {
            line: end.0,
            col: end.1,
            kind: ParseErrorKind::WrongEntryCount {
                expected: n,
                found: entries.len(),
            },
        });
    }
    Ok(Composition::new(n, entries).expect("entries were range-checked during parsing"))
}

/// Reads one or more compositions sharing a board size: the size token,
/// then `n` entries per composition.
pub fn read_compositions(input: &str) -> Result<Vec<Composition>, ParseError> {
    let (n, entries, end) = parse_header_and_entries(input)?;
    if entries.is_empty() {
        return Err(ParseError {
            line: end.0,
            col: end.1,
            kind: ParseErrorKind::EmptyBody,
        });
    }
    if entries.len() % n != 0 {
        return Err(ParseError {
            line: end.0,
            col: end.1,
            kind: ParseErrorKind::IncompleteComposition {
                n,
                leftover: entries.len() % n,
            },
        });
    }
    Ok(entries
        .chunks_exact(n)
        .map(|chunk| {
            Composition::new(n, chunk.to_vec()).expect("entries were range-checked during parsing")
        })
        .collect())
}

/// Serializes one composition: `n` on the first line, the row entries
/// space-separated on the second. Output is ASCII, LF-terminated, no BOM.
pub fn write_composition(c: &Composition) -> String {
    let mut out = String::with_capacity(c.n() * 3 + 8);
    out.push_str(&c.n().to_string());
    out.push('\n');
    push_entry_line(&mut out, c);
    out
}

/// Serializes multiple compositions sharing one board size: the size line,
/// then one entry line per composition.
///
/// # Panics
///
/// Panics if `cs` is empty or the compositions disagree on board size.
pub fn write_compositions(cs: &[Composition]) -> String {
    assert!(!cs.is_empty(), "nothing to write");
    let n = cs[0].n();
    assert!(
        cs.iter().all(|c| c.n() == n),
        "compositions in one file must share a board size"
    );
    let mut out = String::with_capacity(cs.len() * (n * 3 + 2) + 8);
    out.push_str(&n.to_string());
    out.push('\n');
    for c in cs {
        push_entry_line(&mut out, c);
    }
    out
}

fn push_entry_line(out: &mut String, c: &Composition) {
    for (idx, entry) in c.entries().iter().enumerate() {
        if idx > 0 {
            out.push(' ');
        }
        out.push_str(&entry.to_string());
    }
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_the_demo_composition() {
        let c = read_composition("10\n0 0 5 0 4 0 0 3 0 0\n").unwrap();
        assert_eq!(c.n(), 10);
        assert_eq!(c.queen_count(), 3);
        assert_eq!(c.col_in_row(3), 5);
        assert_eq!(c.col_in_row(5), 4);
        assert_eq!(c.col_in_row(8), 3);
    }

    #[test]
    fn round_trips_exactly() {
        let text = "10\n0 0 5 0 4 0 0 3 0 0\n";
        let c = read_composition(text).unwrap();
        assert_eq!(write_composition(&c), text);

        let tiny = read_composition("1\n1\n").unwrap();
        assert_eq!(write_composition(&tiny), "1\n1\n");
    }

    #[test]
    fn layout_is_free_on_input() {
        let c = read_composition("4\n0 3\n\t0\r\n 2").unwrap();
        assert_eq!(c.entries(), &[0, 3, 0, 2]);
    }

    #[test]
    fn missing_board_size_is_reported_at_end_of_input() {
        let err = read_composition("").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingBoardSize);
        let err = read_composition("  \n ").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingBoardSize);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn non_integer_tokens_carry_their_position() {
        let err = read_composition("4\n0 x 0 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.col, 3);
        assert_eq!(
            err.kind,
            ParseErrorKind::InvalidToken {
                token: "x".to_string()
            }
        );
    }

    #[test]
    fn entry_count_must_match_exactly() {
        let err = read_composition("4\n0 0 0\n").unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::WrongEntryCount {
                expected: 4,
                found: 3
            }
        );
        let err = read_composition("4\n0 0 0 0 1\n").unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::WrongEntryCount {
                expected: 4,
                found: 5
            }
        );
    }

    #[test]
    fn entries_above_n_are_malformed() {
        let err = read_composition("4\n0 5 0 0\n").unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::EntryOutOfRange {
                row: 2,
                value: 5,
                bound: 4
            }
        );
        assert_eq!(err.line, 2);
        assert_eq!(err.col, 3);
    }

    #[test]
    fn zero_board_size_is_malformed() {
        let err = read_composition("0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BoardSizeZero);
    }

    #[test]
    fn multi_reader_chunks_by_board_size() {
        let cs = read_compositions("4\n1 0 0 0\n0 2 0 0\n0 0 3 0\n").unwrap();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1].col_in_row(2), 2);
    }

    #[test]
    fn multi_reader_rejects_ragged_and_empty_bodies() {
        let err = read_compositions("4\n1 0 0\n").unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::IncompleteComposition { n: 4, leftover: 3 }
        );
        let err = read_compositions("4\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyBody);
    }

    #[test]
    fn multi_writer_emits_one_line_per_composition() {
        let cs = vec![
            Composition::new(3, vec![1, 0, 0]).unwrap(),
            Composition::new(3, vec![0, 0, 2]).unwrap(),
        ];
        let text = write_compositions(&cs);
        assert_eq!(text, "3\n1 0 0\n0 0 2\n");
        assert_eq!(read_compositions(&text).unwrap(), cs);
    }
}
