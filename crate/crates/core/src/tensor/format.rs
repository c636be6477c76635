//! Text form of a word:
//!
//! ```text
//! shape 3 3 3 field 2^2
//! 1 0 0
//! ...
//! ```
//!
//! Entries follow in row-major order as hexadecimal bit-vectors, one row of
//! the last axis per line. Blank lines and lines starting with `#` are
//! ignored.

use std::fmt::Write as _;

use super::word::TensorWord;
use crate::gf_poly::Field;
use crate::{Error, Result};

pub fn header(shape: &[usize], field: &Field) -> String {
    let dims: Vec<String> = shape.iter().map(usize::to_string).collect();
    format!("shape {} field 2^{}", dims.join(" "), field.degree())
}

pub fn write_word(word: &TensorWord, field: &Field) -> String {
    let mut out = header(word.shape(), field);
    out.push('\n');
    let row = *word.shape().last().expect("words have at least one axis");
    for chunk in word.data().chunks(row) {
        let cells: Vec<String> = chunk.iter().map(|x| format!("{:x}", x.bits())).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

fn parse_header(line: &str) -> Result<(Vec<usize>, u32)> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let bad = || Error::Parse(format!("bad header {line:?}; expected `shape n_1 ... n_m field 2^m`"));
    if tokens.len() < 4 || tokens[0] != "shape" || tokens[tokens.len() - 2] != "field" {
        return Err(bad());
    }
    let shape = tokens[1..tokens.len() - 2]
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    let degree = tokens[tokens.len() - 1].strip_prefix("2^").and_then(|d| d.parse::<u32>().ok()).ok_or_else(bad)?;
    Ok((shape, degree))
}

/// Parses a word and its field from the text form.
pub fn parse_word(text: &str) -> Result<(Field, TensorWord)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let head = lines.next().ok_or_else(|| Error::Parse("empty word file".into()))?;
    let (shape, degree) = parse_header(head)?;
    let field = Field::new(degree)?;
    let row = *shape.last().ok_or_else(|| Error::Parse("shape has no axes".into()))?;
    let mut data = Vec::new();
    for (i, line) in lines.enumerate() {
        let before = data.len();
        for tok in line.split_whitespace() {
            data.push(field.parse_element(tok)?);
        }
        if data.len() - before != row {
            return Err(Error::Parse(format!("row {} has {} entries, expected {row}", i + 1, data.len() - before)));
        }
    }
    let word = TensorWord::from_data(&shape, data)?;
    Ok((field, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_poly::Gf;

    #[test]
    fn round_trip() {
        let f = Field::new(4).unwrap();
        let w = TensorWord::from_data(&[2, 3], vec![Gf(0), Gf(15), Gf(10), Gf(1), Gf(2), Gf(3)]).unwrap();
        let text = write_word(&w, &f);
        assert_eq!(text, "shape 2 3 field 2^4\n0 f a\n1 2 3\n");
        let (g, back) = parse_word(&text).unwrap();
        assert_eq!(g, f);
        assert_eq!(back, w);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_word("").is_err());
        assert!(parse_word("shape 2 field 2^2\n1\n").is_err());
        assert!(parse_word("shape 2 field 2^2\n1 4\n").is_err());
        assert!(parse_word("shape 2 2 field 2^2\n1 2\n").is_err());
        assert!(parse_word("shape 2 field 4\n1 2\n").is_err());
        assert!(parse_word("shape 2 field 2^9\n1 2\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let (_, w) = parse_word("# fixture\nshape 2 field 2^1\n\n1 0\n").unwrap();
        assert_eq!(w.data(), &[Gf(1), Gf(0)]);
    }
}
